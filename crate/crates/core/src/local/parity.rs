use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chars::{AddChar, MultChar};
use super::field::ExtKind;
use super::field::Elt;
use super::monomial::{LocalSetup, MonomialRep, ResPiece, Term};
use super::properties::{pi_values, root, sign, Identity};
use super::LocalError;
use crate::arith::Cyclotomic;
use crate::forms::{ConjDual, SelfDual};

/// Outcome of the orthogonal parity check for one representation.
#[derive(Clone, Debug)]
pub struct SerreReport {
    pub label: String,
    pub conductor: u32,
    pub det_conductor: u32,
    /// `ε(φ, ψ0) ε(η_ur ⊗ φ, ψ0) = (-1)^{a(φ)} det(φ)(-1)`.
    pub identity: Identity,
    /// Intermediate equalities of the argument.
    pub chain: Vec<Identity>,
    /// Whether `Res φ` to the unramified extension has a two-dimensional
    /// piece induced from a biquadratic compositum.
    pub compositum: bool,
}

impl SerreReport {
    pub fn parity_holds(&self) -> bool {
        self.conductor % 2 == self.det_conductor % 2
    }

    pub fn holds(&self) -> bool {
        self.parity_holds() && self.identity.holds() && self.chain.iter().all(Identity::holds)
    }
}

/// Outcome of the symplectic check `ε(φ ⊗ Ind_E 1, ψ0) = (-1)^{a(φ)}`.
#[derive(Clone, Debug)]
pub struct PtbReport {
    pub label: String,
    pub conductor: u32,
    pub identity: Identity,
    pub chain: Vec<Identity>,
}

impl PtbReport {
    pub fn holds(&self) -> bool {
        self.identity.holds() && self.chain.iter().all(Identity::holds)
    }

    /// `±1` when `ε(φ ⊗ Ind_E 1, ψ0)` is a sign.
    pub fn sign(&self) -> Option<i32> {
        self.identity.lhs.as_unit_root().and_then(|r| r.as_sign())
    }
}

#[derive(Clone, Debug)]
pub struct DirectSumReport {
    pub label: String,
    pub signs: Vec<i32>,
    pub conductor: u32,
}

impl DirectSumReport {
    pub fn product(&self) -> i32 {
        self.signs.iter().product()
    }

    pub fn holds(&self) -> bool {
        self.product() == if self.conductor.is_multiple_of(2) { 1 } else { -1 }
    }
}

impl LocalSetup {
    fn epsilon_pieces(&self, pieces: &[ResPiece], psi: &AddChar, a: &Elt) -> Result<Cyclotomic, LocalError> {
        pieces.iter().try_fold(Cyclotomic::one(), |acc, r| Ok(&acc * &self.epsilon_piece(r, psi, a)?))
    }

    /// `ε(φ, ψ0) ε(η_ur ⊗ φ, ψ0)`, and the same quantity computed as
    /// `λ(E/F, ψ0)^{dim φ} ε(Res φ, ψ_E)` when the restriction is available.
    fn unramified_pair_product(&self, phi: &MonomialRep, tag: &str, chain: &mut Vec<Identity>) -> Result<Cyclotomic, LocalError> {
        let psi = self.psi0();
        let eta = MultChar::unramified_sign(self.base());
        let e1 = self.epsilon_monomial(phi, &psi)?;
        let e2 = self.epsilon_monomial(&self.twist(&eta, phi)?, &psi)?;
        let a = self.conductor_monomial(phi);
        chain.push(Identity::new(format!("{tag}.twist"), "unramified-twist", e2.clone(), &sign(a) * &e1));
        let prod = &e1 * &e2;
        let res = self.restrict_unramified(phi)?;
        let one = self.ext(ExtKind::Unramified).one();
        let lam = self.lambda(ExtKind::Unramified, &psi)?.pow(phi.dimension() as i64)?;
        let via_res = &lam * &self.epsilon_pieces(&res, &psi, &one)?;
        chain.push(Identity::new(format!("{tag}.inductive"), "inductivity", prod.clone(), via_res));
        Ok(prod)
    }

    pub fn serre_parity_check(&self, phi: &MonomialRep) -> Result<SerreReport, LocalError> {
        if !matches!(self.selfdual_type_monomial(phi)?, SelfDual::Orthogonal | SelfDual::Both) {
            return Err(LocalError::WrongType(format!("{} is not orthogonal", phi.label())));
        }
        let tag = format!("serre.p{}.{}", self.p(), phi.label());
        let a = self.conductor_monomial(phi);
        let det = self.det_monomial(phi)?;
        let det_minus_one = root(det.eval_int(-1));
        let mut chain = vec![];
        let prod = self.unramified_pair_product(phi, &tag, &mut chain)?;
        let e1 = self.epsilon_monomial(phi, &self.psi0())?;
        chain.push(Identity::new(format!("{tag}.square"), "quadratic-square", &e1 * &e1, det_minus_one.clone()));
        let e = self.ext(ExtKind::Unramified);
        let delta = e.generator();
        let big_delta = self.base().from_q(delta.mul(&delta).a);
        chain.push(Identity::new(
            format!("{tag}.discriminant"),
            "determinant",
            root(det.eval(&big_delta)),
            sign(det.conductor()),
        ));
        let res = self.restrict_unramified(phi)?;
        let anchor = self.epsilon_pieces(&res, &self.psi0(), &delta.neg())?;
        chain.push(Identity::new(format!("{tag}.anchor"), "trace-zero", anchor, Cyclotomic::one()));
        let det_res = res.iter().fold(crate::arith::UnitRoot::ONE, |acc, r| acc.mul(self.det_piece(r, &delta)));
        let direct = self.epsilon_pieces(&res, &self.psi0(), &e.one())?;
        chain.push(Identity::new(format!("{tag}.trace_zero"), "trace-zero", direct, root(det_res)));
        Ok(SerreReport {
            identity: Identity::new(format!("{tag}.identity"), "serre-parity", prod, &sign(a) * &det_minus_one),
            label: phi.label(),
            conductor: a,
            det_conductor: det.conductor(),
            chain,
            compositum: res.iter().any(|r| matches!(r, ResPiece::Compositum(_))),
        })
    }

    pub fn ptb_consistency_check(&self, phi: &MonomialRep) -> Result<PtbReport, LocalError> {
        if !matches!(self.selfdual_type_monomial(phi)?, SelfDual::Symplectic | SelfDual::Both) {
            return Err(LocalError::WrongType(format!("{} is not symplectic", phi.label())));
        }
        let tag = format!("ptb.p{}.{}", self.p(), phi.label());
        let a = self.conductor_monomial(phi);
        let mut chain = vec![];
        let prod = self.unramified_pair_product(phi, &tag, &mut chain)?;
        Ok(PtbReport {
            label: phi.label(),
            conductor: a,
            identity: Identity::new(format!("{tag}.identity"), "ptb", prod, sign(a)),
            chain,
        })
    }

    /// `(-1)^{a(⊕ φ_i)}` against the product of the per-summand signs, with
    /// hyperbolic summands contributing `+1`.
    pub fn direct_sum_parity(&self, summands: &[MonomialRep]) -> Result<DirectSumReport, LocalError> {
        let mut signs = vec![];
        for phi in summands {
            let hyperbolic = phi.terms.iter().all(|t| matches!(t, Term::Pair(_)));
            if hyperbolic {
                signs.push(1);
                continue;
            }
            let r = self.ptb_consistency_check(phi)?;
            signs.push(r.sign().ok_or_else(|| LocalError::WrongType(format!("{} has no sign", phi.label())))?);
        }
        let total = summands.iter().fold(MonomialRep::default(), |acc, s| acc.concat(s));
        Ok(DirectSumReport { label: total.label(), signs, conductor: self.conductor_monomial(&total) })
    }
}

/// Candidate summands at one prime, sorted by the structure they carry.
pub struct TermPools {
    chars: Vec<MultChar>,
    quadratic: Vec<MultChar>,
    conj_orthogonal: Vec<MultChar>,
    conj_symplectic: Vec<MultChar>,
    quadratic_e: Vec<MultChar>,
    e_chars: Vec<MultChar>,
}

impl TermPools {
    pub fn new(s: &LocalSetup) -> Result<Self, LocalError> {
        let chars = MultChar::enumerate(s.base(), 2.min(s.base().level()), &pi_values())?;
        let quadratic = chars.iter().filter(|c| c.is_quadratic()).cloned().collect();
        let mut pools = TermPools {
            chars,
            quadratic,
            conj_orthogonal: vec![],
            conj_symplectic: vec![],
            quadratic_e: vec![],
            e_chars: vec![],
        };
        for k in ExtKind::ALL {
            for mu in MultChar::enumerate(s.ext(k), 2.min(s.ext(k).level()), &pi_values())? {
                match s.conj_duality_of_char(&mu)? {
                    ConjDual::ConjOrthogonal => pools.conj_orthogonal.push(mu.clone()),
                    ConjDual::ConjSymplectic => pools.conj_symplectic.push(mu.clone()),
                    _ => {}
                }
                if mu.is_quadratic() {
                    pools.quadratic_e.push(mu.clone());
                }
                pools.e_chars.push(mu);
            }
        }
        Ok(pools)
    }

    pub fn conj_symplectic(&self) -> &[MultChar] {
        &self.conj_symplectic
    }

    fn pair(&self, rng: &mut ChaCha8Rng) -> Term {
        let inner = if rng.gen_bool(0.5) {
            Term::Char(self.chars.choose(rng).unwrap().clone())
        } else {
            Term::Induced(self.e_chars.choose(rng).unwrap().clone())
        };
        Term::Pair(Box::new(inner))
    }

    pub fn orthogonal_term(&self, rng: &mut ChaCha8Rng) -> Term {
        match rng.gen_range(0..4) {
            0 => Term::Char(self.quadratic.choose(rng).unwrap().clone()),
            1 => Term::Induced(self.conj_orthogonal.choose(rng).unwrap().clone()),
            2 => Term::Induced(self.quadratic_e.choose(rng).unwrap().clone()),
            _ => self.pair(rng),
        }
    }

    pub fn symplectic_term(&self, rng: &mut ChaCha8Rng) -> Term {
        if rng.gen_range(0..4) == 0 {
            self.pair(rng)
        } else {
            Term::Induced(self.conj_symplectic.choose(rng).unwrap().clone())
        }
    }
}

/// Seeded corpora at one prime.
pub struct Corpus {
    pub orthogonal: Vec<MonomialRep>,
    pub symplectic: Vec<MonomialRep>,
    pub sums: Vec<Vec<MonomialRep>>,
}

pub fn generate_corpus(
    pools: &TermPools,
    seed: u64,
    n_orthogonal: usize,
    n_symplectic: usize,
    n_sums: usize,
) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orthogonal = (0..n_orthogonal)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            MonomialRep::new((0..k).map(|_| pools.orthogonal_term(&mut rng)).collect())
        })
        .collect();
    let symplectic = (0..n_symplectic)
        .map(|_| {
            let k = rng.gen_range(1..=2);
            MonomialRep::new((0..k).map(|_| pools.symplectic_term(&mut rng)).collect())
        })
        .collect();
    let sums = (0..n_sums)
        .map(|_| {
            let k = rng.gen_range(2..=4);
            (0..k).map(|_| MonomialRep::new(vec![pools.symplectic_term(&mut rng)])).collect()
        })
        .collect();
    Corpus { orthogonal, symplectic, sums }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus_at_five() {
        let s = LocalSetup::new(5, 2).unwrap();
        let pools = TermPools::new(&s).unwrap();
        let c = generate_corpus(&pools, 7, 20, 20, 10);
        for phi in &c.orthogonal {
            let r = s.serre_parity_check(phi).unwrap();
            assert!(r.holds(), "{r:?}");
        }
        let mut signs = std::collections::HashSet::new();
        for phi in &c.symplectic {
            let r = s.ptb_consistency_check(phi).unwrap();
            assert!(r.holds(), "{r:?}");
            signs.insert(r.sign().unwrap());
        }
        assert_eq!(signs.len(), 2);
        for sum in &c.sums {
            assert!(s.direct_sum_parity(sum).unwrap().holds());
        }
    }

    #[test]
    fn wrong_types_are_rejected() {
        let s = LocalSetup::new(3, 2).unwrap();
        let chi = MultChar::enumerate(s.base(), 2, &[crate::arith::UnitRoot::new(1, 4)]).unwrap().pop().unwrap();
        let phi = MonomialRep::new(vec![Term::Char(chi)]);
        assert!(s.serre_parity_check(&phi).is_err());
        assert!(s.ptb_consistency_check(&phi).is_err());
        assert!(s.direct_sum_parity(&[]).unwrap().holds());
    }
}
