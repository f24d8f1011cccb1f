use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::field::{inv_mod, pow_i, vp, Elt, LocalField, Residue, Q};
use super::LocalError;
use crate::arith::UnitRoot;

/// A finite-order character of `K^×` that is trivial on `1 + P_K^M`, `M` the
/// working level of `K`. It is stored as its value at the uniformizer and
/// exponents on the unit-group generators.
#[derive(Clone)]
pub struct MultChar {
    field: Arc<LocalField>,
    at_pi: UnitRoot,
    exps: Vec<u64>,
}

impl PartialEq for MultChar {
    fn eq(&self, o: &Self) -> bool {
        *self.field == *o.field && self.at_pi == o.at_pi && self.exps == o.exps
    }
}

impl Eq for MultChar {}

impl std::hash::Hash for MultChar {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.field.name().hash(h);
        self.at_pi.hash(h);
        self.exps.hash(h);
    }
}

impl fmt::Debug for MultChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl MultChar {
    pub fn trivial(field: &Arc<LocalField>) -> Self {
        let n = field.units(field.level()).expect("working level").generators().len();
        MultChar { field: field.clone(), at_pi: UnitRoot::ONE, exps: vec![0; n] }
    }

    /// Character with the given value at `ϖ` and exponents on the generators
    /// of the working-level unit group.
    pub fn new(field: &Arc<LocalField>, at_pi: UnitRoot, exps: Vec<u64>) -> Result<Self, LocalError> {
        let u = field.units(field.level())?;
        if exps.len() != u.orders().len() {
            return Err(LocalError::Shape(format!("{} exponents for {} generators", exps.len(), u.orders().len())));
        }
        let exps = exps.iter().zip(u.orders()).map(|(e, o)| e % o).collect();
        Ok(MultChar { field: field.clone(), at_pi, exps })
    }

    /// Builds a character from its value at `ϖ` and a function on unit
    /// residues at the working level, which must be multiplicative.
    pub fn from_unit_fn(
        field: &Arc<LocalField>,
        at_pi: UnitRoot,
        f: impl Fn(&Residue) -> UnitRoot,
    ) -> Result<Self, LocalError> {
        let u = field.units(field.level())?;
        let exps = u
            .generators()
            .iter()
            .zip(u.orders())
            .map(|(g, &o)| f(g).exponent_at(o).ok_or_else(|| LocalError::Shape("value order".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MultChar { field: field.clone(), at_pi, exps })
    }

    pub fn field(&self) -> &Arc<LocalField> {
        &self.field
    }

    pub fn at_pi(&self) -> UnitRoot {
        self.at_pi
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn label(&self) -> String {
        let e: Vec<String> = self.exps.iter().map(u64::to_string).collect();
        format!("{}[{};{}]", self.field.name(), self.at_pi, e.join(","))
    }

    fn unit_log_value(&self, log: &[u64]) -> UnitRoot {
        let u = self.field.units(self.field.level()).unwrap();
        log.iter()
            .zip(&self.exps)
            .zip(u.orders())
            .fold(UnitRoot::ONE, |acc, ((l, e), &o)| acc.mul(UnitRoot::new((l * e % o) as i64, o)))
    }

    /// Value on a unit residue at the working level.
    pub fn unit_value(&self, r: &Residue) -> UnitRoot {
        let u = self.field.units(self.field.level()).unwrap();
        self.unit_log_value(u.dlog(r))
    }

    pub fn eval(&self, x: &Elt) -> UnitRoot {
        let (v, u) = self.field.split(x);
        let r = self.field.reduce(&u, self.field.level());
        self.at_pi.pow(v as i64).mul(self.unit_value(&r))
    }

    pub fn eval_int(&self, n: i64) -> UnitRoot {
        self.eval(&self.field.elt(n, 0))
    }

    pub fn mul(&self, o: &MultChar) -> MultChar {
        assert!(*self.field == *o.field, "characters of different fields");
        let u = self.field.units(self.field.level()).unwrap();
        let exps = self.exps.iter().zip(&o.exps).zip(u.orders()).map(|((a, b), m)| (a + b) % m).collect();
        MultChar { field: self.field.clone(), at_pi: self.at_pi.mul(o.at_pi), exps }
    }

    pub fn inv(&self) -> MultChar {
        let u = self.field.units(self.field.level()).unwrap();
        let exps = self.exps.iter().zip(u.orders()).map(|(a, m)| (m - a) % m).collect();
        MultChar { field: self.field.clone(), at_pi: self.at_pi.inv(), exps }
    }

    pub fn is_trivial(&self) -> bool {
        self.at_pi.is_one() && self.is_unramified()
    }

    pub fn is_unramified(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_quadratic(&self) -> bool {
        self.mul(self).is_trivial()
    }

    /// Artin conductor: `0` when unramified, otherwise the least `a ≥ 1`
    /// with the character trivial on `1 + P^a`.
    pub fn conductor(&self) -> u32 {
        if self.is_unramified() {
            return 0;
        }
        let u = self.field.units(self.field.level()).unwrap();
        (1..=self.field.level())
            .find(|&a| u.principal_generators(a).all(|log| self.unit_log_value(log).is_one()))
            .unwrap_or(self.field.level())
    }

    /// `x ↦ χ(σ x)` on a quadratic extension.
    pub fn sigma(&self) -> MultChar {
        let f = &self.field;
        let pi = f.uniformizer();
        let at_pi = self.eval(&pi.sigma());
        let ring = f.ring(f.level());
        MultChar::from_unit_fn(f, at_pi, |r| self.eval(&ring.to_elt(*r).sigma())).unwrap()
    }

    /// `χ ∘ N_{E/F}` for a character `χ` of the base field.
    pub fn norm_pullback(&self, e: &Arc<LocalField>) -> Result<MultChar, LocalError> {
        check_base(&self.field, e)?;
        let f = &self.field;
        let at_pi = self.eval(&f.from_q(e.uniformizer().norm()));
        let ring = e.ring(e.level());
        MultChar::from_unit_fn(e, at_pi, |r| self.eval(&f.from_q(ring.to_elt(*r).norm())))
    }

    /// Restriction of a character of `E` to `F^×`.
    pub fn restrict(&self, f: &Arc<LocalField>) -> Result<MultChar, LocalError> {
        check_base(f, &self.field)?;
        let e = &self.field;
        let at_pi = self.eval(&e.from_q(Q::from_integer(f.p() as i128)));
        let ring = f.ring(f.level());
        MultChar::from_unit_fn(f, at_pi, |r| self.eval(&e.embed(&ring.to_elt(*r))))
    }

    /// Every character of conductor at most `c` whose value at `ϖ` lies in
    /// `pi_values`.
    pub fn enumerate(field: &Arc<LocalField>, c: u32, pi_values: &[UnitRoot]) -> Result<Vec<MultChar>, LocalError> {
        let top = field.level();
        if c > top {
            return Err(LocalError::Level { needed: c, have: top });
        }
        let low = field.units(c)?;
        let high = field.units(top)?;
        let low_ring = *low.ring();
        let reduce = |r: &Residue| Residue { a: r.a % low_ring.ma, b: r.b % low_ring.mb };
        let high_logs: Vec<Vec<u64>> = high.generators().iter().map(|g| low.dlog(&reduce(g)).to_vec()).collect();
        let orders = low.orders().to_vec();
        let total: u64 = orders.iter().product();
        let mut out = vec![];
        for code in 0..total {
            let mut k = code;
            let exps_low: Vec<u64> = orders
                .iter()
                .map(|&o| {
                    let e = k % o;
                    k /= o;
                    e
                })
                .collect();
            let exps: Vec<u64> = high_logs
                .iter()
                .zip(high.orders())
                .map(|(log, &o)| {
                    let v = log
                        .iter()
                        .zip(&exps_low)
                        .zip(&orders)
                        .fold(UnitRoot::ONE, |acc, ((l, e), &m)| acc.mul(UnitRoot::new((l * e % m) as i64, m)));
                    v.exponent_at(o).expect("lifted value order")
                })
                .collect();
            for &w in pi_values {
                out.push(MultChar { field: field.clone(), at_pi: w, exps: exps.clone() });
            }
        }
        Ok(out)
    }

    /// The unramified character with `ϖ ↦ -1`.
    pub fn unramified_sign(field: &Arc<LocalField>) -> MultChar {
        MultChar { at_pi: UnitRoot::MINUS_ONE, ..MultChar::trivial(field) }
    }

    /// The quadratic character `η_{E/F}` of `F^×` attached to `E`, found as the
    /// unique nontrivial tame quadratic character killing norms from `E`.
    pub fn eta(f: &Arc<LocalField>, e: &Arc<LocalField>) -> Result<MultChar, LocalError> {
        let cands = MultChar::enumerate(f, 1, &[UnitRoot::ONE, UnitRoot::MINUS_ONE])?;
        let mut norms: Vec<Elt> = vec![f.from_q(e.uniformizer().norm())];
        let u = e.units(e.level())?;
        let ring = *u.ring();
        norms.extend(u.generators().iter().map(|g| f.from_q(ring.to_elt(*g).norm())));
        let found: Vec<MultChar> = cands
            .into_iter()
            .filter(|c| c.is_quadratic() && !c.is_trivial())
            .filter(|c| norms.iter().all(|n| c.eval(n).is_one()))
            .collect();
        match found.len() {
            1 => Ok(found.into_iter().next().unwrap()),
            n => Err(LocalError::Shape(format!("{n} candidates for the quadratic character of {}", e.name()))),
        }
    }
}

/// `ψ(x) = ψ0(Tr_{K/Q_p}(c x))`, with `ψ0` the canonical character of `Q_p`
/// (`ψ0(x) = exp(2πi {x}_p)`), so `ψ0` has conductor `0`.
#[derive(Clone)]
pub struct AddChar {
    field: Arc<LocalField>,
    c: Elt,
}

impl fmt::Debug for AddChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "psi[{}; c={:?}]", self.field.name(), self.c)
    }
}

impl AddChar {
    pub fn new(field: &Arc<LocalField>, c: Elt) -> Self {
        assert!(!c.is_zero(), "additive character must be nontrivial");
        AddChar { field: field.clone(), c: field.embed(&c) }
    }

    /// `x ↦ ψ0(p^{-d} x)`, of conductor `d`.
    pub fn standard(field: &Arc<LocalField>, d: i32) -> Self {
        let p = Q::from_integer(field.p() as i128);
        let c = if d >= 0 { Q::one() / pow_q(p, d as u32) } else { pow_q(p, (-d) as u32) };
        AddChar::new(field, field.from_q(c))
    }

    pub fn field(&self) -> &Arc<LocalField> {
        &self.field
    }

    pub fn scalar(&self) -> &Elt {
        &self.c
    }

    pub fn eval(&self, x: &Elt) -> UnitRoot {
        let t = self.c.mul(&self.field.embed(x));
        let tr = if self.field.is_base() { t.a } else { t.trace() };
        psi0(&tr, self.field.p())
    }

    /// `ψ_a(x) = ψ(a x)`.
    pub fn twist(&self, a: &Elt) -> AddChar {
        AddChar::new(&self.field, self.c.mul(&self.field.embed(a)))
    }

    /// `ψ ∘ Tr_{E/F}`.
    pub fn lift(&self, e: &Arc<LocalField>) -> Result<AddChar, LocalError> {
        if !self.field.is_base() || e.p() != self.field.p() {
            return Err(LocalError::FieldMismatch(self.field.name(), e.name()));
        }
        Ok(AddChar::new(e, e.from_q(self.c.a)))
    }

    /// Least `d` with `ψ` trivial on `P^d`, by scanning `d`. `ψ` kills the
    /// lattice `ϖ^d O` exactly when the traces of `c ϖ^d b` are `p`-integral
    /// for a `Z_p`-basis `b` of `O`.
    pub fn conductor(&self) -> i32 {
        let f = &self.field;
        let basis = if f.is_base() { vec![f.one()] } else { vec![f.one(), f.generator()] };
        let pi = f.uniformizer();
        let trivial_on = |d: i32| {
            basis.iter().all(|b| {
                let t = self.c.mul(&pi.pow(d).mul(b));
                let tr = if f.is_base() { t.a } else { t.trace() };
                tr.is_zero() || vp(&tr, f.p()) >= 0
            })
        };
        let mut d = -f.valuation(&self.c) - 4;
        debug_assert!(!trivial_on(d));
        while !trivial_on(d) {
            d += 1;
        }
        d
    }
}

fn check_base(f: &LocalField, e: &LocalField) -> Result<(), LocalError> {
    if !f.is_base() || e.is_base() || e.p() != f.p() || e.base_level() != f.level() {
        return Err(LocalError::FieldMismatch(f.name(), e.name()));
    }
    Ok(())
}

fn pow_q(p: Q, k: u32) -> Q {
    (0..k).fold(Q::one(), |acc, _| acc * p)
}

/// `ψ0(r) = exp(2πi {r}_p)` for rational `r`.
pub fn psi0(r: &Q, p: i64) -> UnitRoot {
    if r.is_zero() {
        return UnitRoot::ONE;
    }
    let mut den = *r.denom();
    let mut j = 0u32;
    while den % p as i128 == 0 {
        den /= p as i128;
        j += 1;
    }
    if j == 0 {
        return UnitRoot::ONE;
    }
    let m = pow_i(p, j);
    let n = r.numer().rem_euclid(m as i128) as i64;
    let w = den.rem_euclid(m as i128) as i64;
    UnitRoot::new((n as i128 * inv_mod(w, m) as i128 % m as i128) as i64, m as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::field::ExtKind;

    #[test]
    fn psi0_values() {
        assert!(psi0(&Q::new(3, 1), 5).is_one());
        assert_eq!(psi0(&Q::new(1, 5), 5), UnitRoot::new(1, 5));
        assert_eq!(psi0(&Q::new(1, 10), 5), UnitRoot::new(3, 5));
        assert_eq!(psi0(&Q::new(-7, 25), 5), UnitRoot::new(18, 25));
    }

    #[test]
    fn additive_conductors() {
        for p in [3, 5, 7] {
            let f = LocalField::base(p, 2).unwrap();
            for d in -1..=2 {
                let psi = AddChar::standard(&f, d);
                assert_eq!(psi.conductor(), d);
                for k in ExtKind::ALL {
                    let e = LocalField::extension(p, k, 2).unwrap();
                    let de = psi.lift(&e).unwrap().conductor();
                    assert_eq!(de, if k.is_ramified() { 2 * d - 1 } else { d });
                }
            }
        }
    }

    #[test]
    fn conductors_and_counts() {
        let f = LocalField::base(5, 2).unwrap();
        let all = MultChar::enumerate(&f, 2, &[UnitRoot::ONE]).unwrap();
        assert_eq!(all.len(), 20);
        let by_cond = |a| all.iter().filter(|c| c.conductor() == a).count();
        assert_eq!((by_cond(0), by_cond(1), by_cond(2)), (1, 3, 16));
        assert_eq!(MultChar::enumerate(&f, 1, &[UnitRoot::ONE]).unwrap().len(), 4);
    }

    #[test]
    fn eta_kills_norms_only() {
        for p in [3, 5, 7] {
            let f = LocalField::base(p, 2).unwrap();
            for k in ExtKind::ALL {
                let e = LocalField::extension(p, k, 2).unwrap();
                let eta = MultChar::eta(&f, &e).unwrap();
                assert!(eta.is_quadratic() && !eta.is_trivial());
                assert_eq!(eta.conductor(), u32::from(k.is_ramified()));
                // exhaustive at the working level: units that are norms of
                // units are exactly the kernel of eta on units
                let ue = e.units(e.level()).unwrap();
                let ring = *ue.ring();
                let norms: std::collections::HashSet<Residue> = ue
                    .elements()
                    .map(|r| f.reduce(&f.from_q(ring.to_elt(*r).norm()), 2))
                    .collect();
                for r in f.units(2).unwrap().elements() {
                    assert_eq!(norms.contains(r), eta.unit_value(r).is_one());
                }
            }
        }
    }

    #[test]
    fn norm_sigma_restrict() {
        let f = LocalField::base(5, 2).unwrap();
        let e = LocalField::extension(5, ExtKind::RamifiedPi, 2).unwrap();
        let chi = MultChar::enumerate(&f, 2, &[UnitRoot::new(1, 4)]).unwrap().pop().unwrap();
        let mu = chi.norm_pullback(&e).unwrap();
        assert_eq!(mu.sigma(), mu);
        assert_eq!(mu.restrict(&f).unwrap(), chi.mul(&chi));
        let x = e.elt(3, 7);
        assert_eq!(mu.eval(&x), chi.eval(&f.from_q(x.norm())));
    }
}
