use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use super::units::UnitGroup;
use super::LocalError;

/// Exact rationals used as `ℚ_p` approximations.
pub type Q = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtKind {
    /// `ℚ_p(√n)` with `n` the least quadratic non-residue.
    Unramified,
    /// `ℚ_p(√p)`.
    RamifiedPi,
    /// `ℚ_p(√(u p))` with `u` the least quadratic non-residue.
    RamifiedUPi,
}

impl ExtKind {
    pub const ALL: [ExtKind; 3] = [ExtKind::Unramified, ExtKind::RamifiedPi, ExtKind::RamifiedUPi];

    pub fn is_ramified(self) -> bool {
        self != ExtKind::Unramified
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ExtKind::Unramified => "unramified",
            ExtKind::RamifiedPi => "ramified_pi",
            ExtKind::RamifiedUPi => "ramified_upi",
        }
    }
}

pub(crate) fn pow_i(p: i64, k: u32) -> i64 {
    p.pow(k)
}

pub(crate) fn inv_mod(a: i64, m: i64) -> i64 {
    let e = a.rem_euclid(m).extended_gcd(&m);
    debug_assert!(e.gcd == 1);
    e.x.rem_euclid(m)
}

/// `p`-adic valuation of a nonzero rational.
pub(crate) fn vp(x: &Q, p: i64) -> i32 {
    let p = p as i128;
    let mut v = 0;
    let (mut n, mut d) = (*x.numer(), *x.denom());
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    while d % p == 0 {
        d /= p;
        v -= 1;
    }
    v
}

/// Reduction of a `p`-integral rational modulo `m` (a power of `p`).
pub(crate) fn reduce_q(x: &Q, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let mm = m as i128;
    let n = x.numer().rem_euclid(mm) as i64;
    let d = x.denom().rem_euclid(mm) as i64;
    (n as i128 * inv_mod(d, m) as i128).rem_euclid(mm) as i64
}

pub(crate) fn least_nonresidue(p: i64) -> i64 {
    (2..p).find(|&n| legendre(n, p) == -1).unwrap()
}

pub(crate) fn legendre(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let mut b = a.rem_euclid(p);
    let mut e = (p - 1) / 2;
    let mut acc = 1i64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if acc == p - 1 {
        r = -1;
    } else if acc == 0 {
        r = 0;
    }
    r
}

/// An element `a + b g` with `g^2 = D`; base-field elements have `b = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Elt {
    pub a: Q,
    pub b: Q,
    d: i64,
}

impl Elt {
    pub fn new(a: Q, b: Q, d: i64) -> Self {
        Elt { a, b, d }
    }

    pub fn int(a: i64, d: i64) -> Self {
        Elt { a: Q::from_integer(a as i128), b: Q::zero(), d }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Elt) -> Elt {
        Elt { a: self.a + o.a, b: self.b + o.b, d: self.d }
    }

    pub fn neg(&self) -> Elt {
        Elt { a: -self.a, b: -self.b, d: self.d }
    }

    pub fn mul(&self, o: &Elt) -> Elt {
        let d = Q::from_integer(self.d as i128);
        Elt {
            a: self.a * o.a + self.b * o.b * d,
            b: self.a * o.b + self.b * o.a,
            d: self.d,
        }
    }

    pub fn sigma(&self) -> Elt {
        Elt { a: self.a, b: -self.b, d: self.d }
    }

    /// `a^2 - D b^2`.
    pub fn norm(&self) -> Q {
        self.a * self.a - self.b * self.b * Q::from_integer(self.d as i128)
    }

    /// `2a`.
    pub fn trace(&self) -> Q {
        self.a + self.a
    }

    pub fn inv(&self) -> Elt {
        let n = self.norm();
        let s = self.sigma();
        Elt { a: s.a / n, b: s.b / n, d: self.d }
    }

    pub fn pow(&self, e: i32) -> Elt {
        let base = if e < 0 { self.inv() } else { *self };
        let mut acc = Elt::int(1, self.d);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn in_base(&self) -> bool {
        self.b.is_zero()
    }
}

impl fmt::Debug for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}g", self.a, self.b)
        }
    }
}

/// A residue class in `O_K/P_K^k`, stored as `(a mod p^ka, b mod p^kb)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    pub a: i64,
    pub b: i64,
}

/// Shape of the level ring `O_K/P_K^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingSpec {
    pub p: i64,
    pub d: i64,
    pub ma: i64,
    pub mb: i64,
    pub ramified: bool,
}

impl RingSpec {
    pub fn one(&self) -> Residue {
        Residue { a: 1 % self.ma, b: 0 }
    }

    pub fn mul(&self, x: Residue, y: Residue) -> Residue {
        let (ma, mb) = (self.ma as i128, self.mb as i128);
        let a = (x.a as i128 * y.a as i128 + x.b as i128 * y.b as i128 * self.d as i128).rem_euclid(ma);
        let b = (x.a as i128 * y.b as i128 + x.b as i128 * y.a as i128).rem_euclid(mb);
        Residue { a: a as i64, b: b as i64 }
    }

    pub fn pow(&self, x: Residue, mut e: u64) -> Residue {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, x: Residue) -> bool {
        if self.ma == 1 {
            return true;
        }
        if self.ramified || self.mb == 1 {
            x.a % self.p != 0
        } else {
            let n = (x.a * x.a - self.d * x.b * x.b).rem_euclid(self.p);
            n != 0
        }
    }

    pub fn units(&self) -> Vec<Residue> {
        let mut out = vec![];
        for a in 0..self.ma {
            for b in 0..self.mb {
                let r = Residue { a, b };
                if self.is_unit(r) {
                    out.push(r);
                }
            }
        }
        out
    }

    pub fn to_elt(&self, r: Residue) -> Elt {
        Elt::new(Q::from_integer(r.a as i128), Q::from_integer(r.b as i128), self.d)
    }
}

/// `ℚ_p` or one of its quadratic extensions, with all unit data truncated at
/// a working level.
pub struct LocalField {
    p: i64,
    kind: Option<ExtKind>,
    d: i64,
    base_level: u32,
    level: u32,
    units: Vec<OnceLock<Arc<UnitGroup>>>,
}

impl fmt::Debug for LocalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl PartialEq for LocalField {
    fn eq(&self, o: &Self) -> bool {
        (self.p, self.kind, self.level) == (o.p, o.kind, o.level)
    }
}

impl Eq for LocalField {}

impl LocalField {
    /// `ℚ_p` at level `m`.
    pub fn base(p: i64, m: u32) -> Result<Arc<Self>, LocalError> {
        check_params(p, m)?;
        Ok(Arc::new(LocalField::make(p, None, 0, m, m)))
    }

    /// A quadratic extension of `ℚ_p`. Its working level is `m` when
    /// unramified and `2m` when ramified, so that norms and restrictions of
    /// characters of conductor at most `m` stay representable.
    pub fn extension(p: i64, kind: ExtKind, m: u32) -> Result<Arc<Self>, LocalError> {
        check_params(p, m)?;
        let (d, level) = match kind {
            ExtKind::Unramified => (least_nonresidue(p), m),
            ExtKind::RamifiedPi => (p, 2 * m),
            ExtKind::RamifiedUPi => (p * least_nonresidue(p), 2 * m),
        };
        Ok(Arc::new(LocalField::make(p, Some(kind), d, m, level)))
    }

    fn make(p: i64, kind: Option<ExtKind>, d: i64, base_level: u32, level: u32) -> Self {
        LocalField {
            p,
            kind,
            d,
            base_level,
            level,
            units: (0..=level).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn name(&self) -> String {
        match self.kind {
            None => format!("Q{}", self.p),
            Some(k) => format!("Q{}({})", self.p, k.as_str()),
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn kind(&self) -> Option<ExtKind> {
        self.kind
    }

    pub fn is_base(&self) -> bool {
        self.kind.is_none()
    }

    pub fn is_ramified(&self) -> bool {
        self.kind.is_some_and(ExtKind::is_ramified)
    }

    /// `g^2`; zero for the base field.
    pub fn disc(&self) -> i64 {
        self.d
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn base_level(&self) -> u32 {
        self.base_level
    }

    /// Residue field size.
    pub fn q(&self) -> i64 {
        if self.kind == Some(ExtKind::Unramified) {
            self.p * self.p
        } else {
            self.p
        }
    }

    /// `(e, f, v(disc))` over `ℚ_p`.
    pub fn ramification(&self) -> (u32, u32, u32) {
        match self.kind {
            None => (1, 1, 0),
            Some(ExtKind::Unramified) => (1, 2, 0),
            Some(_) => (2, 1, 1),
        }
    }

    pub fn elt(&self, a: i64, b: i64) -> Elt {
        Elt::new(Q::from_integer(a as i128), Q::from_integer(b as i128), self.d)
    }

    pub fn from_q(&self, a: Q) -> Elt {
        Elt::new(a, Q::zero(), self.d)
    }

    pub fn generator(&self) -> Elt {
        self.elt(0, 1)
    }

    pub fn uniformizer(&self) -> Elt {
        if self.is_ramified() {
            self.generator()
        } else {
            self.elt(self.p, 0)
        }
    }

    /// Normalized valuation `v_K`.
    pub fn valuation(&self, x: &Elt) -> i32 {
        assert!(!x.is_zero(), "valuation of zero");
        let va = if x.a.is_zero() { i32::MAX / 4 } else { vp(&x.a, self.p) };
        let vb = if x.b.is_zero() { i32::MAX / 4 } else { vp(&x.b, self.p) };
        match self.kind {
            None => va,
            Some(ExtKind::Unramified) => va.min(vb),
            Some(_) => (2 * va).min(2 * vb + 1),
        }
    }

    /// `x = ϖ^v u` with `u` a unit.
    pub fn split(&self, x: &Elt) -> (i32, Elt) {
        let v = self.valuation(x);
        (v, x.mul(&self.uniformizer().pow(-v)))
    }

    pub fn ring(&self, k: u32) -> RingSpec {
        let (ka, kb) = match self.kind {
            None => (k, 0),
            Some(ExtKind::Unramified) => (k, k),
            Some(_) => (k.div_ceil(2), k / 2),
        };
        RingSpec {
            p: self.p,
            d: self.d,
            ma: pow_i(self.p, ka),
            mb: pow_i(self.p, kb),
            ramified: self.is_ramified(),
        }
    }

    /// Image of a unit in `O_K/P_K^k`.
    pub fn reduce(&self, u: &Elt, k: u32) -> Residue {
        let r = self.ring(k);
        Residue { a: reduce_q(&u.a, r.ma), b: reduce_q(&u.b, r.mb) }
    }

    /// Unit group of `O_K/P_K^k`, computed once per level.
    pub fn units(&self, k: u32) -> Result<&Arc<UnitGroup>, LocalError> {
        let slot = self.units.get(k as usize).ok_or(LocalError::Level { needed: k, have: self.level })?;
        Ok(slot.get_or_init(|| Arc::new(UnitGroup::new(self.ring(k), self.principal_reps(k)))))
    }

    /// Representatives `1 + ϖ^j β` generating `1 + P^j` modulo `1 + P^{j+1}`,
    /// for each `1 ≤ j < k`.
    fn principal_reps(&self, k: u32) -> Vec<(u32, Residue)> {
        let mut out = vec![];
        let pi = self.uniformizer();
        for j in 1..k {
            let pj = pi.pow(j as i32);
            let betas: Vec<Elt> = if self.kind == Some(ExtKind::Unramified) {
                vec![self.elt(1, 0), self.generator()]
            } else {
                vec![self.elt(1, 0)]
            };
            for beta in betas {
                let x = self.elt(1, 0).add(&pj.mul(&beta));
                out.push((j, self.reduce(&x, k)));
            }
        }
        out
    }

    /// The canonical image of `ℚ_p` elements.
    pub fn embed(&self, x: &Elt) -> Elt {
        Elt::new(x.a, x.b, self.d)
    }

    pub fn one(&self) -> Elt {
        self.elt(1, 0)
    }
}

fn check_params(p: i64, m: u32) -> Result<(), LocalError> {
    if p < 3 || p % 2 == 0 || !(2..p).take_while(|k| k * k <= p).all(|k| p % k != 0) {
        return Err(LocalError::Prime(p));
    }
    if !(1..=3).contains(&m) {
        return Err(LocalError::Level { needed: m, have: 3 });
    }
    Ok(())
}

/// Caches the quadratic extensions of a base field.
pub struct Extensions {
    pub base: Arc<LocalField>,
    pub exts: HashMap<ExtKind, Arc<LocalField>>,
}

impl Extensions {
    pub fn new(p: i64, m: u32) -> Result<Self, LocalError> {
        let base = LocalField::base(p, m)?;
        let mut exts = HashMap::new();
        for k in ExtKind::ALL {
            exts.insert(k, LocalField::extension(p, k, m)?);
        }
        Ok(Extensions { base, exts })
    }

    pub fn get(&self, k: ExtKind) -> &Arc<LocalField> {
        &self.exts[&k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_and_split() {
        let f = LocalField::extension(3, ExtKind::RamifiedPi, 2).unwrap();
        let x = f.elt(9, 3);
        assert_eq!(f.valuation(&x), 3);
        let (v, u) = f.split(&x);
        assert_eq!(v, 3);
        assert_eq!(f.valuation(&u), 0);
        let e = LocalField::extension(5, ExtKind::Unramified, 2).unwrap();
        assert_eq!(e.disc(), 2);
        assert_eq!(e.valuation(&e.elt(25, 5)), 1);
    }

    #[test]
    fn sigma_and_norm() {
        let e = LocalField::extension(7, ExtKind::Unramified, 2).unwrap();
        let x = e.elt(2, 5);
        assert_eq!(x.sigma().sigma(), x);
        assert!(x.mul(&x.sigma()).in_base());
        assert_eq!(x.mul(&x.sigma()).a, x.norm());
        assert_eq!(e.generator().trace(), Q::zero());
        assert_eq!(e.ramification(), (1, 2, 0));
        let r = LocalField::extension(7, ExtKind::RamifiedUPi, 2).unwrap();
        assert_eq!(r.ramification(), (2, 1, 1));
    }

    #[test]
    fn bad_parameters() {
        assert!(LocalField::base(2, 2).is_err());
        assert!(LocalField::base(9, 2).is_err());
        assert!(LocalField::base(5, 4).is_err());
    }
}
