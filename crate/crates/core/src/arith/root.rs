use std::fmt;

use num_integer::Integer;

use super::Cyclotomic;

/// A root of unity `exp(2πi · num/den)` stored as a reduced fraction of a turn.
///
/// Character values are tracked in this form so that products and inverses are
/// integer arithmetic; conversion to [`Cyclotomic`] happens only when values are
/// summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitRoot {
    num: u64,
    den: u64,
}

impl UnitRoot {
    pub const ONE: UnitRoot = UnitRoot { num: 0, den: 1 };
    pub const MINUS_ONE: UnitRoot = UnitRoot { num: 1, den: 2 };

    /// `ζ_den^num`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "root of unity with zero order");
        let d = den as i64;
        let r = num.rem_euclid(d) as u64;
        let g = r.gcd(&den);
        UnitRoot {
            num: r / g,
            den: den / g,
        }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn mul(self, other: UnitRoot) -> UnitRoot {
        let l = self.den.lcm(&other.den);
        let a = self.num as u128 * (l / self.den) as u128 + other.num as u128 * (l / other.den) as u128;
        UnitRoot::new((a % l as u128) as i64, l)
    }

    pub fn inv(self) -> UnitRoot {
        UnitRoot::new(-(self.num as i64), self.den)
    }

    pub fn pow(self, e: i64) -> UnitRoot {
        let d = self.den as i128;
        let n = (self.num as i128 * e as i128).rem_euclid(d);
        UnitRoot::new(n as i64, self.den)
    }

    /// Exponent of this root at level `n`, i.e. `k` with `self = ζ_n^k`.
    /// Returns `None` when the order does not divide `n`.
    pub fn exponent_at(&self, n: u64) -> Option<u64> {
        if !n.is_multiple_of(self.den) {
            return None;
        }
        Some(self.num * (n / self.den))
    }

    /// `+1 → Some(1)`, `-1 → Some(-1)`, anything else `None`.
    pub fn as_sign(&self) -> Option<i32> {
        match self.den {
            1 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.den as u32, self.num as i64)
    }
}

impl Default for UnitRoot {
    fn default() -> Self {
        UnitRoot::ONE
    }
}

impl fmt::Display for UnitRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den {
            1 => write!(f, "1"),
            2 => write!(f, "-1"),
            _ => write!(f, "z{}^{}", self.den, self.num),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_multiplies() {
        let a = UnitRoot::new(2, 8);
        assert_eq!(a, UnitRoot::new(1, 4));
        assert_eq!(a.mul(a), UnitRoot::MINUS_ONE);
        assert_eq!(a.pow(4), UnitRoot::ONE);
        assert_eq!(a.inv(), UnitRoot::new(3, 4));
        assert_eq!(UnitRoot::new(-1, 3), UnitRoot::new(2, 3));
        assert_eq!(UnitRoot::new(1, 6).mul(UnitRoot::new(1, 10)), UnitRoot::new(8, 30));
    }

    #[test]
    fn exponent_lookup() {
        assert_eq!(UnitRoot::new(1, 4).exponent_at(12), Some(3));
        assert_eq!(UnitRoot::new(1, 8).exponent_at(12), None);
    }
}
