use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ArithError, Rational, UnitRoot};

/// An exact element of the cyclotomic field `Q(ζ_N)`.
///
/// Stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced by the `N`-th
/// cyclotomic polynomial, with a single positive common denominator. Rational
/// values are always normalised to conductor 1; binary operations work at the
/// least common multiple of the operand conductors. Equality compares at the
/// common conductor, so `ζ_3` at `N = 3` equals `ζ_6^2` at `N = 6`.
#[derive(Clone)]
pub struct Cyclotomic {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

pub fn euler_phi(n: u32) -> usize {
    let mut m = n;
    let mut result = n as usize;
    let mut p = 2u32;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p as usize;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m as usize;
    }
    result
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

type PolyCache = RwLock<HashMap<u32, Arc<Vec<i64>>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of `Φ_n`, lowest degree first; monic of degree `φ(n)`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n > 0);
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let div = cyclotomic_polynomial(d);
        poly = exact_div_monic(&poly, &div);
    }
    let arc = Arc::new(poly);
    poly_cache().write().unwrap().insert(n, arc.clone());
    arc
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Reduce a polynomial (any length) modulo `Φ_n`, in place, to length `φ(n)`.
fn reduce_big(mut coeffs: Vec<BigInt>, n: u32) -> Vec<BigInt> {
    let p = cyclotomic_polynomial(n);
    let d = p.len() - 1;
    if coeffs.len() > d {
        for i in (d..coeffs.len()).rev() {
            if coeffs[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut coeffs[i]);
            for j in 0..d {
                if p[j] != 0 {
                    coeffs[i - d + j] -= &c * p[j];
                }
            }
        }
    }
    coeffs.resize(d, BigInt::zero());
    coeffs
}

fn reduce_small(mut coeffs: Vec<i128>, n: u32) -> Option<Vec<i128>> {
    let p = cyclotomic_polynomial(n);
    let d = p.len() - 1;
    if coeffs.len() > d {
        for i in (d..coeffs.len()).rev() {
            let c = coeffs[i];
            if c == 0 {
                continue;
            }
            coeffs[i] = 0;
            for j in 0..d {
                if p[j] != 0 {
                    let t = c.checked_mul(p[j] as i128)?;
                    coeffs[i - d + j] = coeffs[i - d + j].checked_sub(t)?;
                }
            }
        }
    }
    coeffs.resize(d, 0);
    Some(coeffs)
}

fn to_small(v: &[BigInt]) -> Option<Vec<i128>> {
    const LIMIT: i128 = 1 << 60;
    v.iter()
        .map(|x| x.to_i128().filter(|y| y.abs() < LIMIT))
        .collect()
}

fn convolve(a: &[BigInt], b: &[BigInt], n: u32) -> Vec<BigInt> {
    if let (Some(sa), Some(sb)) = (to_small(a), to_small(b)) {
        if let Some(r) = convolve_small(&sa, &sb, n) {
            return r.into_iter().map(BigInt::from).collect();
        }
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    reduce_big(out, n)
}

fn convolve_small(a: &[i128], b: &[i128], n: u32) -> Option<Vec<i128>> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                out[i + j] = out[i + j].checked_add(x.checked_mul(y)?)?;
            }
        }
    }
    reduce_small(out, n)
}

type RootTable = HashMap<Vec<BigInt>, UnitRoot>;

fn root_tables() -> &'static RwLock<HashMap<u32, Arc<RootTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<RootTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Power-basis vectors of every `±ζ_n^j`, keyed to the root they represent.
fn root_table(n: u32) -> Arc<RootTable> {
    if let Some(t) = root_tables().read().unwrap().get(&n) {
        return t.clone();
    }
    let d = euler_phi(n);
    let mut table = HashMap::new();
    let mut cur = vec![BigInt::zero(); d];
    cur[0] = BigInt::one();
    for j in 0..n as i64 {
        let neg: Vec<BigInt> = cur.iter().map(|c| -c).collect();
        table.insert(cur.clone(), UnitRoot::new(j, n as u64));
        table.insert(neg, UnitRoot::new(2 * j + n as i64, 2 * n as u64));
        let mut next = vec![BigInt::zero(); d + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] = c.clone();
        }
        cur = reduce_big(next, n);
    }
    let arc = Arc::new(table);
    root_tables().write().unwrap().insert(n, arc.clone());
    arc
}

impl Cyclotomic {
    fn from_parts(n: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), euler_phi(n));
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() && !g.is_zero() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den = &den / &g;
            }
        }
        if n > 1 && num[1..].iter().all(|c| c.is_zero()) {
            let c0 = num.swap_remove(0);
            return Cyclotomic::from_parts(1, vec![c0], den);
        }
        if num.iter().all(|c| c.is_zero()) {
            den = BigInt::one();
        }
        Cyclotomic { n, num, den }
    }

    pub fn zero() -> Self {
        Cyclotomic::from_int(0)
    }

    pub fn one() -> Self {
        Cyclotomic::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Cyclotomic {
            n: 1,
            num: vec![BigInt::from(v)],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Cyclotomic::from_parts(1, vec![r.numer().clone()], r.denom().clone())
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Cyclotomic::from_parts(1, vec![BigInt::from(num)], BigInt::from(den))
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        assert!(n > 0);
        let k = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::one();
        let v = reduce_big(v, n);
        Cyclotomic::from_parts(n, v, BigInt::one())
    }

    pub fn zeta(n: u32) -> Self {
        Cyclotomic::zeta_pow(n, 1)
    }

    /// `Σ_k counts[k] · ζ_n^k` for `counts` of length `n`.
    pub fn from_exponent_counts(n: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), n as usize);
        let small: Vec<i128> = counts.iter().map(|&c| c as i128).collect();
        let v = reduce_small(small, n).expect("exponent counts overflow");
        Cyclotomic::from_parts(n, v.into_iter().map(BigInt::from).collect(), BigInt::one())
    }

    /// Sum of roots of unity, each with multiplicity one.
    pub fn sum_of_roots<I: IntoIterator<Item = UnitRoot>>(roots: I) -> Self {
        let roots: Vec<UnitRoot> = roots.into_iter().collect();
        let n = roots.iter().fold(1u64, |acc, r| acc.lcm(&r.order()));
        let mut counts = vec![0i64; n as usize];
        for r in &roots {
            counts[r.exponent_at(n).unwrap() as usize] += 1;
        }
        Cyclotomic::from_exponent_counts(n as u32, &counts)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Rational coefficients in the power basis of `Q(ζ_N)`, `N = conductor()`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.num[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.num[0].is_one() && self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Integer value when this is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// The same element expressed at conductor `m`; `m` must be a multiple of
    /// the current conductor. The result is not re-normalised, so it is only
    /// useful for inspecting coefficients at a chosen level.
    pub fn embed(&self, m: u32) -> Result<Vec<Rational>, ArithError> {
        let v = self.lift_num(m)?;
        Ok(v.into_iter()
            .map(|c| BigRational::new(c, self.den.clone()))
            .collect())
    }

    fn lift_num(&self, m: u32) -> Result<Vec<BigInt>, ArithError> {
        if m == 0 || !m.is_multiple_of(self.n) {
            return Err(ArithError::BadEmbedding { from: self.n, to: m });
        }
        if m == self.n {
            return Ok(self.num.clone());
        }
        let k = (m / self.n) as usize;
        let mut v = vec![BigInt::zero(); (self.num.len() - 1) * k + 1];
        for (i, c) in self.num.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Ok(reduce_big(v, m))
    }

    fn common(&self, other: &Self) -> (u32, Vec<BigInt>, Vec<BigInt>) {
        let m = self.n.lcm(&other.n);
        (m, self.lift_num(m).unwrap(), other.lift_num(m).unwrap())
    }

    /// Image under `ζ ↦ ζ^{-1}` (complex conjugation).
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Image under the automorphism `ζ_N ↦ ζ_N^k`, `gcd(k, N) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        let n = self.n as i64;
        assert_eq!(k.rem_euclid(n).gcd(&n), 1, "not a Galois automorphism");
        let mut v = vec![BigInt::zero(); self.n as usize];
        for (i, c) in self.num.iter().enumerate() {
            let j = (i as i64 * k).rem_euclid(n) as usize;
            v[j] += c;
        }
        Cyclotomic::from_parts(self.n, reduce_big(v, self.n), self.den.clone())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Cyclotomic::from_parts(self.n, num, &self.den * r.denom())
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Cyclotomic::from_parts(1, vec![self.den.clone()], self.num[0].clone()));
        }
        let c = self.conj();
        let nrm = self * &c;
        if let Some(r) = nrm.to_rational() {
            return Ok(c.scale(&(BigRational::one() / r)));
        }
        Ok(self.inv_xgcd())
    }

    fn inv_xgcd(&self) -> Self {
        // Extended Euclid in Q[x]: s·a + t·Φ = 1.
        let p = cyclotomic_polynomial(self.n);
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let mut r0: Vec<BigRational> = p.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let mut r1 = to_q(&self.num);
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let inv_c = BigRational::one() / r1[0].clone();
        let s: Vec<BigRational> = s1.into_iter().map(|c| c * &inv_c).collect();
        let result = from_rational_coeffs(self.n, &s);
        result.scale(&BigRational::from_integer(self.den.clone()))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ArithError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self * &other.inv()?)
    }

    /// The root of unity this element equals, if any.
    pub fn as_unit_root(&self) -> Option<UnitRoot> {
        if !self.den.is_one() {
            return None;
        }
        if self.n == 1 {
            return match self.num[0].to_i64() {
                Some(1) => Some(UnitRoot::ONE),
                Some(-1) => Some(UnitRoot::MINUS_ONE),
                _ => None,
            };
        }
        root_table(self.n).get(&self.num).copied()
    }

    /// A square root of a root of unity: `ζ_n^k ↦ ζ_{2n}^k` with `0 ≤ k < n`.
    pub fn sqrt_of_root_of_unity(&self) -> Result<Self, ArithError> {
        let r = self.as_unit_root().ok_or(ArithError::NotRootOfUnity)?;
        Ok(UnitRoot::new(r.numer() as i64, 2 * r.order()).to_cyclotomic())
    }

    /// `√r` for a non-negative rational `r`, realised with quadratic Gauss sums.
    pub fn sqrt_rational(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Cyclotomic::zero());
        }
        // √(a/b) = √(ab)/b
        let ab = r.numer() * r.denom();
        let ab = ab.to_u64()?;
        let (square, free) = split_square(ab);
        let mut out = Cyclotomic::from_rational(&BigRational::new(square.into(), r.denom().clone()));
        for p in prime_factors(free) {
            out = &out * &sqrt_prime(p);
        }
        Some(out)
    }

    /// Canonical textual form `N:[c0,c1,...]`.
    pub fn to_literal(&self) -> String {
        let parts: Vec<String> = self
            .coeffs()
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                }
            })
            .collect();
        format!("{}:[{}]", self.n, parts.join(","))
    }
}

fn from_rational_coeffs(n: u32, coeffs: &[BigRational]) -> Cyclotomic {
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut num: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    num = reduce_big(num, n);
    Cyclotomic::from_parts(n, num, den)
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if !c.is_zero() {
            for j in 0..=db {
                let t = &c * &b[j];
                r[i + j] -= t;
            }
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

fn split_square(mut m: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    free *= m;
    (square, free)
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut r = 1i64;
    let mut b = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Positive square root of a prime `p`: `ζ_8 + ζ_8^{-1}` for 2, and the
/// quadratic Gauss sum `g = Σ (x/p) ζ_p^x` (times `-i` when `p ≡ 3 mod 4`)
/// otherwise.
pub fn sqrt_prime(p: u64) -> Cyclotomic {
    if p == 2 {
        return &Cyclotomic::zeta_pow(8, 1) + &Cyclotomic::zeta_pow(8, -1);
    }
    let pi = p as i64;
    let counts: Vec<i64> = (0..pi).map(|x| legendre(x, pi)).collect();
    let g = Cyclotomic::from_exponent_counts(p as u32, &counts);
    if p % 4 == 1 {
        g
    } else {
        &g * &Cyclotomic::zeta_pow(4, -1)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.den == other.den && self.num == other.num;
        }
        if self.is_rational() || other.is_rational() {
            // Non-rational values are never stored at conductor 1.
            return false;
        }
        if self.den != other.den {
            return false;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_literal())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        if let Some(z) = self.as_unit_root() {
            return write!(f, "{z}");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})*z{}^{i}", self.n)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Cyclotomic {
    type Err = ArithError;

    /// Parses the `N:[c0,c1,...]` literal produced by [`Cyclotomic::to_literal`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| ArithError::Parse(msg.to_string());
        let (n, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let n: u32 = n.trim().parse().map_err(|_| bad("bad conductor"))?;
        if n == 0 || n > 1 << 16 {
            return Err(bad("conductor out of range"));
        }
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("missing brackets"))?;
        let coeffs: Vec<BigRational> = body
            .split(',')
            .map(|c| parse_rational(c.trim()).ok_or_else(|| bad("bad coefficient")))
            .collect::<Result<_, _>>()?;
        if coeffs.len() != euler_phi(n) {
            return Err(bad("coefficient count does not match conductor"));
        }
        Ok(from_rational_coeffs(n, &coeffs))
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            (!b.is_zero()).then(|| BigRational::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, other: &Cyclotomic) -> Cyclotomic {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (m, a, b) = self.common(other);
        let num = if self.den == other.den {
            a.into_iter().zip(b).map(|(x, y)| x + y).collect()
        } else {
            a.into_iter()
                .zip(b)
                .map(|(x, y)| x * &other.den + y * &self.den)
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Cyclotomic::from_parts(m, num, den)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, other: &Cyclotomic) -> Cyclotomic {
        self + &(-other)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        if self.is_rational() {
            return other.scale(&self.to_rational().unwrap());
        }
        if other.is_rational() {
            return self.scale(&other.to_rational().unwrap());
        }
        let (m, a, b) = self.common(other);
        let num = convolve(&a, &b, m);
        Cyclotomic::from_parts(m, num, &self.den * &other.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, other: Cyclotomic) -> Cyclotomic {
                (&self).$method(&other)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, other: &Cyclotomic) -> Cyclotomic {
                (&self).$method(other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
}

impl From<UnitRoot> for Cyclotomic {
    fn from(r: UnitRoot) -> Self {
        r.to_cyclotomic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::zeta_pow(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_int(-1));
        assert_eq!(&z(3, 1) + &z(3, 2), Cyclotomic::from_int(-1));
        let a = &Cyclotomic::one() + &z(5, 1);
        assert!(a.div(&a).unwrap().is_one());
        assert!(matches!(a.div(&Cyclotomic::zero()), Err(ArithError::DivisionByZero)));
    }

    #[test]
    fn embedding_examples() {
        // ζ_3 = ζ_6^2 = -ζ_6^5
        assert_eq!(z(3, 1), -z(6, 5));
        assert_eq!(z(4, 1), z(12, 3));
        assert_eq!(Cyclotomic::one().embed(7).unwrap()[0], BigRational::one());
        assert!(z(4, 1).embed(6).is_err());
        let lifted = z(4, 1).embed(12).unwrap();
        let back = from_rational_coeffs(12, &lifted);
        assert_eq!(back, z(4, 1));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(z(8, 1).conj(), z(8, 7));
        assert_eq!(Cyclotomic::from_int(-1).conj(), Cyclotomic::from_int(-1));
        let d = &z(3, 1) - &z(3, 2);
        assert_eq!(d.conj(), &z(3, 2) - &z(3, 1));
    }

    #[test]
    fn square_roots_of_roots_of_unity() {
        assert!(Cyclotomic::one().sqrt_of_root_of_unity().unwrap().is_one());
        assert_eq!(Cyclotomic::from_int(-1).sqrt_of_root_of_unity().unwrap(), z(4, 1));
        let b = z(3, 1).sqrt_of_root_of_unity().unwrap();
        assert_eq!(&b * &b, z(3, 1));
        assert!(matches!(
            Cyclotomic::from_int(2).sqrt_of_root_of_unity(),
            Err(ArithError::NotRootOfUnity)
        ));
        for n in 1..=24u32 {
            for k in 0..n as i64 {
                let a = z(n, k);
                let b = a.sqrt_of_root_of_unity().unwrap();
                assert_eq!(&b * &b, a, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rational_square_roots() {
        for m in [2i64, 3, 5, 6, 7, 8, 12, 49, 50] {
            let r = BigRational::from_integer(m.into());
            let s = Cyclotomic::sqrt_rational(&r).unwrap();
            assert_eq!(&s * &s, Cyclotomic::from_int(m), "m={m}");
        }
        let half = BigRational::new(1.into(), 2.into());
        let s = Cyclotomic::sqrt_rational(&half).unwrap();
        assert_eq!(&s * &s, Cyclotomic::from_rational(&half));
    }

    #[test]
    fn inverse_general() {
        let a = &(&Cyclotomic::from_int(2) + &z(7, 1)) + &z(7, 3).scale(&BigRational::new(1.into(), 3.into()));
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn unit_root_detection() {
        assert_eq!(z(12, 5).as_unit_root(), Some(UnitRoot::new(5, 12)));
        assert_eq!((-z(5, 2)).as_unit_root(), Some(UnitRoot::new(9, 10)));
        assert_eq!((&z(5, 1) + &z(5, 2)).as_unit_root(), None);
    }

    #[test]
    fn literal_round_trip() {
        let a = &z(12, 5) + &Cyclotomic::from_frac(3, 7);
        let s = a.to_literal();
        assert_eq!(s.parse::<Cyclotomic>().unwrap(), a);
        assert!("3:[1]".parse::<Cyclotomic>().is_err());
        assert!("x".parse::<Cyclotomic>().is_err());
    }
}
