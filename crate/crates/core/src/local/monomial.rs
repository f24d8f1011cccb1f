use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::chars::{AddChar, MultChar};
use super::epsilon::{epsilon_character, lambda_constant};
use super::field::{Elt, ExtKind, Extensions, LocalField};
use super::LocalError;
use crate::arith::{Cyclotomic, UnitRoot};
use crate::forms::{ConjDual, SelfDual};

/// `Q_p`, its three quadratic extensions, and caches for `η`, `λ` and `ε`.
pub struct LocalSetup {
    pub fields: Extensions,
    etas: HashMap<ExtKind, MultChar>,
    /// `η_{E''/E}` for `E` unramified and `E'' = E(√p)`.
    compositum_eta: MultChar,
    eps_cache: Mutex<HashMap<(String, String), Cyclotomic>>,
}

impl LocalSetup {
    pub fn new(p: i64, m: u32) -> Result<Self, LocalError> {
        let fields = Extensions::new(p, m)?;
        let mut etas = HashMap::new();
        for k in ExtKind::ALL {
            etas.insert(k, MultChar::eta(&fields.base, fields.get(k))?);
        }
        // E(√p)/E is tamely ramified; -p is a norm and -1 a square in the
        // residue field, so the character is 1 at p
        let e = fields.get(ExtKind::Unramified);
        let compositum_eta = MultChar::enumerate(e, 1, &[UnitRoot::ONE])?
            .into_iter()
            .find(|c| c.is_quadratic() && !c.is_trivial())
            .ok_or_else(|| LocalError::Shape("no tame quadratic character".into()))?;
        Ok(LocalSetup { fields, etas, compositum_eta, eps_cache: Mutex::new(HashMap::new()) })
    }

    pub fn base(&self) -> &Arc<LocalField> {
        &self.fields.base
    }

    pub fn ext(&self, k: ExtKind) -> &Arc<LocalField> {
        self.fields.get(k)
    }

    pub fn p(&self) -> i64 {
        self.fields.base.p()
    }

    /// `η_{E/F}`.
    pub fn eta(&self, k: ExtKind) -> &MultChar {
        &self.etas[&k]
    }

    /// `ψ0` on the base field, conductor `0`.
    pub fn psi0(&self) -> AddChar {
        AddChar::standard(self.base(), 0)
    }

    /// `ε(χ, ψ)`, memoized.
    pub fn epsilon(&self, chi: &MultChar, psi: &AddChar) -> Result<Cyclotomic, LocalError> {
        let key = (chi.label(), format!("{psi:?}"));
        if let Some(v) = self.eps_cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = epsilon_character(chi, psi)?;
        self.eps_cache.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub fn lambda(&self, k: ExtKind, psi: &AddChar) -> Result<Cyclotomic, LocalError> {
        let key = (format!("lambda:{}", k.as_str()), format!("{psi:?}"));
        if let Some(v) = self.eps_cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = lambda_constant(self.ext(k), psi)?;
        self.eps_cache.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn kind_of(&self, e: &LocalField) -> ExtKind {
        e.kind().expect("extension field")
    }

    /// Conjugate-duality type of a character of `E^×`: `μ μ^σ = 1` is
    /// required, and then `μ|_F` is `1` or `η_{E/F}`.
    pub fn conj_duality_of_char(&self, mu: &MultChar) -> Result<ConjDual, LocalError> {
        if !mu.mul(&mu.sigma()).is_trivial() {
            return Ok(ConjDual::None);
        }
        let r = mu.restrict(self.base())?;
        let eta = self.eta(self.kind_of(mu.field()));
        Ok(if r.is_trivial() {
            ConjDual::ConjOrthogonal
        } else if &r == eta {
            ConjDual::ConjSymplectic
        } else {
            ConjDual::None
        })
    }
}

/// A summand of a monomial representation of the Weil group of `F`.
#[derive(Clone, PartialEq, Eq)]
pub enum Term {
    /// A character of `F^×`.
    Char(MultChar),
    /// `Ind_{W_E}^{W_F} μ` for a character `μ` of `E^×`.
    Induced(MultChar),
    /// `t ⊕ t^∨`, carrying both a symmetric and an alternating form.
    Pair(Box<Term>),
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Char(c) => write!(f, "{}", c.label()),
            Term::Induced(m) => write!(f, "Ind({})", m.label()),
            Term::Pair(t) => write!(f, "Pair({t:?})"),
        }
    }
}

impl Term {
    pub fn dimension(&self) -> usize {
        match self {
            Term::Char(_) => 1,
            Term::Induced(_) => 2,
            Term::Pair(t) => 2 * t.dimension(),
        }
    }

    pub fn dual(&self) -> Term {
        match self {
            Term::Char(c) => Term::Char(c.inv()),
            Term::Induced(m) => Term::Induced(m.inv()),
            Term::Pair(t) => Term::Pair(t.clone()),
        }
    }
}

/// A finite direct sum of characters, quadratic inductions and hyperbolic
/// pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialRep {
    pub terms: Vec<Term>,
}

impl MonomialRep {
    pub fn new(terms: Vec<Term>) -> Self {
        MonomialRep { terms }
    }

    pub fn dimension(&self) -> usize {
        self.terms.iter().map(Term::dimension).sum()
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|t| format!("{t:?}")).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn concat(&self, other: &MonomialRep) -> MonomialRep {
        MonomialRep { terms: self.terms.iter().chain(&other.terms).cloned().collect() }
    }
}

impl LocalSetup {
    pub fn term_conductor(&self, t: &Term) -> u32 {
        match t {
            Term::Char(c) => c.conductor(),
            Term::Induced(m) => {
                if m.field().is_ramified() {
                    1 + m.conductor()
                } else {
                    2 * m.conductor()
                }
            }
            Term::Pair(t) => 2 * self.term_conductor(t),
        }
    }

    pub fn conductor_monomial(&self, phi: &MonomialRep) -> u32 {
        phi.terms.iter().map(|t| self.term_conductor(t)).sum()
    }

    pub fn term_det(&self, t: &Term) -> Result<MultChar, LocalError> {
        Ok(match t {
            Term::Char(c) => c.clone(),
            Term::Induced(m) => self.eta(self.kind_of(m.field())).mul(&m.restrict(self.base())?),
            Term::Pair(_) => MultChar::trivial(self.base()),
        })
    }

    pub fn det_monomial(&self, phi: &MonomialRep) -> Result<MultChar, LocalError> {
        phi.terms
            .iter()
            .try_fold(MultChar::trivial(self.base()), |acc, t| Ok(acc.mul(&self.term_det(t)?)))
    }

    /// Whether the term carries an orthogonal and a symplectic structure.
    fn term_structures(&self, t: &Term) -> Result<(bool, bool), LocalError> {
        Ok(match t {
            Term::Char(c) => (c.is_quadratic(), false),
            Term::Induced(m) => match self.conj_duality_of_char(m)? {
                ConjDual::ConjOrthogonal => (true, false),
                ConjDual::ConjSymplectic => (m.is_quadratic(), true),
                _ => (m.is_quadratic(), false),
            },
            Term::Pair(_) => (true, true),
        })
    }

    pub fn selfdual_type_monomial(&self, phi: &MonomialRep) -> Result<SelfDual, LocalError> {
        let mut orth = true;
        let mut symp = true;
        for t in &phi.terms {
            let (o, s) = self.term_structures(t)?;
            orth &= o;
            symp &= s;
        }
        Ok(match (orth, symp) {
            (true, true) => SelfDual::Both,
            (true, false) => SelfDual::Orthogonal,
            (false, true) => SelfDual::Symplectic,
            (false, false) => SelfDual::None,
        })
    }

    pub fn term_epsilon(&self, t: &Term, psi: &AddChar) -> Result<Cyclotomic, LocalError> {
        Ok(match t {
            Term::Char(c) => self.epsilon(c, psi)?,
            Term::Induced(m) => {
                let lam = self.lambda(self.kind_of(m.field()), psi)?;
                &lam * &self.epsilon(m, &psi.lift(m.field())?)?
            }
            Term::Pair(t) => &self.term_epsilon(t, psi)? * &self.term_epsilon(&t.dual(), psi)?,
        })
    }

    pub fn epsilon_monomial(&self, phi: &MonomialRep, psi: &AddChar) -> Result<Cyclotomic, LocalError> {
        phi.terms
            .iter()
            .try_fold(Cyclotomic::one(), |acc, t| Ok(&acc * &self.term_epsilon(t, psi)?))
    }

    /// `χ ⊗ φ`, with `χ ⊗ Ind μ = Ind((χ∘N) μ)`.
    pub fn twist(&self, chi: &MultChar, phi: &MonomialRep) -> Result<MonomialRep, LocalError> {
        let mut terms = vec![];
        for t in &phi.terms {
            self.twist_term(chi, t, &mut terms)?;
        }
        Ok(MonomialRep { terms })
    }

    fn twist_term(&self, chi: &MultChar, t: &Term, out: &mut Vec<Term>) -> Result<(), LocalError> {
        match t {
            Term::Char(c) => out.push(Term::Char(chi.mul(c))),
            Term::Induced(m) => out.push(Term::Induced(chi.norm_pullback(m.field())?.mul(m))),
            Term::Pair(inner) if chi.is_quadratic() => {
                let mut v = vec![];
                self.twist_term(chi, inner, &mut v)?;
                out.push(Term::Pair(Box::new(v.pop().unwrap())));
            }
            Term::Pair(inner) => {
                self.twist_term(chi, inner, out)?;
                self.twist_term(chi, &inner.dual(), out)?;
            }
        }
        Ok(())
    }

    /// Restriction to `W_E` for the unramified `E`, as characters of `E^×`.
    /// `None` when a term is induced from a ramified extension, whose
    /// restriction is induced from the biquadratic compositum.
    /// `Res_E φ` for `E/F` unramified, as characters of `E^×` and inductions
    /// from the composita `EE'` of ramified `E'`.
    pub fn restrict_unramified(&self, phi: &MonomialRep) -> Result<Vec<ResPiece>, LocalError> {
        let e = self.ext(ExtKind::Unramified);
        let mut out = vec![];
        for t in &phi.terms {
            out.extend(self.restrict_term(t, e)?);
        }
        Ok(out)
    }

    fn restrict_term(&self, t: &Term, e: &Arc<LocalField>) -> Result<Vec<ResPiece>, LocalError> {
        Ok(match t {
            Term::Char(c) => vec![ResPiece::Char(c.norm_pullback(e)?)],
            Term::Induced(m) if **m.field() == **e => vec![ResPiece::Char(m.clone()), ResPiece::Char(m.sigma())],
            // Mackey: W_F = W_E W_{E'}, so Res_E Ind_{E'} μ = Ind_{EE'}^E (μ ∘ N)
            Term::Induced(m) => vec![ResPiece::Compositum(m.clone())],
            Term::Pair(inner) => {
                let v = self.restrict_term(inner, e)?;
                let duals: Vec<ResPiece> = v.iter().map(ResPiece::dual).collect();
                v.into_iter().chain(duals).collect()
            }
        })
    }

    /// `ε(ρ, ψ_E(a ·))` for a piece `ρ` of `Res_E φ`, `ψ_E = ψ ∘ Tr_{E/F}`.
    ///
    /// For `ρ = Ind_{E''}^E ν`, `ν = μ ∘ N_{E''/E'}`, the λ-factor of `E''/E` is
    /// `ε(η_{E''/E}, ψ_E(a ·))`, the twist moves onto `ν` as `μ(N_{E/F} a)`,
    /// and `ε(ν, ψ_{E''})` comes from inducing through the unramified `E''/E'`:
    /// `ε(μ, ψ_{E'}) ε(μ η_ur, ψ_{E'}) / λ(E''/E', ψ_{E'})`.
    pub fn epsilon_piece(&self, piece: &ResPiece, psi: &AddChar, a: &Elt) -> Result<Cyclotomic, LocalError> {
        let psi_e = psi.lift(self.ext(ExtKind::Unramified))?.twist(a);
        match piece {
            ResPiece::Char(m) => self.epsilon(m, &psi_e),
            ResPiece::Compositum(mu) => {
                let ep = mu.field();
                let psi_ep = psi.lift(ep)?;
                let lam = if psi_ep.conductor().rem_euclid(2) == 0 { Cyclotomic::one() } else { -Cyclotomic::one() };
                let twisted = mu.mul(&MultChar::unramified_sign(ep));
                let inner = &(&self.epsilon(mu, &psi_ep)? * &self.epsilon(&twisted, &psi_ep)?) * &lam;
                let moved = mu.eval(&ep.from_q(a.norm())).to_cyclotomic();
                Ok(&(&self.epsilon(&self.compositum_eta, &psi_e)? * &moved) * &inner)
            }
        }
    }

    /// `det ρ(x)` for a piece of `Res_E φ` and `x ∈ E^×`.
    pub fn det_piece(&self, piece: &ResPiece, x: &Elt) -> UnitRoot {
        match piece {
            ResPiece::Char(m) => m.eval(x),
            ResPiece::Compositum(mu) => self.compositum_eta.eval(x).mul(mu.eval(&mu.field().from_q(x.norm()))),
        }
    }
}

/// A summand of `Res_E φ`, `E/F` unramified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResPiece {
    Char(MultChar),
    /// `Ind_{E''}^{E}(μ ∘ N_{E''/E'})` for `μ` on a ramified `E'`, `E'' = EE'`.
    Compositum(MultChar),
}

impl ResPiece {
    pub fn dimension(&self) -> usize {
        match self {
            ResPiece::Char(_) => 1,
            ResPiece::Compositum(_) => 2,
        }
    }

    fn dual(&self) -> ResPiece {
        match self {
            ResPiece::Char(c) => ResPiece::Char(c.inv()),
            ResPiece::Compositum(m) => ResPiece::Compositum(m.inv()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::UnitRoot;

    #[test]
    fn induced_trivial() {
        let s = LocalSetup::new(5, 2).unwrap();
        for k in ExtKind::ALL {
            let phi = MonomialRep::new(vec![Term::Induced(MultChar::trivial(s.ext(k)))]);
            assert_eq!(&s.det_monomial(&phi).unwrap(), s.eta(k));
            assert_eq!(s.conductor_monomial(&phi), s.eta(k).conductor());
            assert_eq!(s.selfdual_type_monomial(&phi).unwrap(), SelfDual::Orthogonal);
            let split = MonomialRep::new(vec![
                Term::Char(MultChar::trivial(s.base())),
                Term::Char(s.eta(k).clone()),
            ]);
            let psi = s.psi0();
            assert_eq!(s.epsilon_monomial(&phi, &psi).unwrap(), s.epsilon_monomial(&split, &psi).unwrap());
        }
    }

    #[test]
    fn pairs_are_hyperbolic() {
        let s = LocalSetup::new(3, 2).unwrap();
        let chi = MultChar::enumerate(s.base(), 2, &[UnitRoot::new(1, 4)]).unwrap().pop().unwrap();
        let phi = MonomialRep::new(vec![Term::Pair(Box::new(Term::Char(chi.clone())))]);
        assert_eq!(s.selfdual_type_monomial(&phi).unwrap(), SelfDual::Both);
        assert_eq!(s.conductor_monomial(&phi), 2 * chi.conductor());
        assert!(s.det_monomial(&phi).unwrap().is_trivial());
        let eps = s.epsilon_monomial(&phi, &s.psi0()).unwrap();
        assert_eq!(eps, chi.eval_int(-1).to_cyclotomic());
    }

    #[test]
    fn empty_sum() {
        let s = LocalSetup::new(3, 1).unwrap();
        let phi = MonomialRep::default();
        assert_eq!(s.selfdual_type_monomial(&phi).unwrap(), SelfDual::Both);
        assert!(s.epsilon_monomial(&phi, &s.psi0()).unwrap().is_one());
        assert_eq!(s.conductor_monomial(&phi), 0);
    }
}
