use std::collections::{HashMap, HashSet};

use super::field::{Residue, RingSpec};

/// `(O_K/P_K^k)^×` as a product of cyclic groups of prime-power order, with a
/// full discrete-log table.
#[derive(Debug)]
pub struct UnitGroup {
    ring: RingSpec,
    gens: Vec<Residue>,
    orders: Vec<u64>,
    dlog: HashMap<Residue, Vec<u64>>,
    /// For each `j ≥ 1`, discrete logs of elements generating `1 + P^j`.
    principal: Vec<(u32, Vec<u64>)>,
}

impl UnitGroup {
    pub(crate) fn new(ring: RingSpec, principal_reps: Vec<(u32, Residue)>) -> Self {
        let elems = ring.units();
        let n = elems.len() as u64;
        let mut gens = vec![];
        let mut orders = vec![];
        for (l, _) in factor(n) {
            let sylow: Vec<Residue> = elems
                .iter()
                .copied()
                .filter(|&x| is_power_of(element_order(&ring, x, n), l))
                .collect();
            let (g, o) = sylow_basis(&ring, &sylow, l);
            gens.extend(g);
            orders.extend(o);
        }
        let mut dlog = HashMap::with_capacity(elems.len());
        dlog.insert(ring.one(), vec![0; gens.len()]);
        for (i, (&g, &o)) in gens.iter().zip(&orders).enumerate() {
            let prev: Vec<(Residue, Vec<u64>)> = dlog.drain().collect();
            for (x, v) in prev {
                let mut y = x;
                for k in 0..o {
                    let mut w = v.clone();
                    w[i] = k;
                    dlog.insert(y, w);
                    y = ring.mul(y, g);
                }
            }
        }
        assert_eq!(dlog.len() as u64, n, "unit group decomposition is not a basis");
        let principal = principal_reps.into_iter().map(|(j, r)| (j, dlog[&r].clone())).collect();
        UnitGroup { ring, gens, orders, dlog, principal }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn generators(&self) -> &[Residue] {
        &self.gens
    }

    /// Orders of the generators, grouped by prime and decreasing within a
    /// prime.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn dlog(&self, x: &Residue) -> &[u64] {
        &self.dlog[x]
    }

    pub fn elements(&self) -> impl Iterator<Item = &Residue> {
        self.dlog.keys()
    }

    /// Discrete logs of a generating set of `1 + P^j`, `j ≥ 1`.
    pub fn principal_generators(&self, j: u32) -> impl Iterator<Item = &[u64]> {
        self.principal.iter().filter(move |(i, _)| *i >= j).map(|(_, v)| v.as_slice())
    }
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_power_of(mut x: u64, l: u64) -> bool {
    while x.is_multiple_of(l) {
        x /= l;
    }
    x == 1
}

fn element_order(ring: &RingSpec, x: Residue, n: u64) -> u64 {
    let mut ord = n;
    for (l, _) in factor(n) {
        while ord.is_multiple_of(l) && ring.pow(x, ord / l) == ring.one() {
            ord /= l;
        }
    }
    ord
}

/// Basis of an abelian `l`-group: repeatedly take an element of largest order
/// modulo the span so far and correct it so that its order equals that
/// quotient order.
fn sylow_basis(ring: &RingSpec, sylow: &[Residue], l: u64) -> (Vec<Residue>, Vec<u64>) {
    let mut span: HashSet<Residue> = HashSet::from([ring.one()]);
    let mut gens = vec![];
    let mut orders = vec![];
    while span.len() < sylow.len() {
        let mut best = (0u64, ring.one());
        for &x in sylow {
            let mut k = 1;
            let mut y = x;
            while !span.contains(&y) {
                y = ring.pow(y, l);
                k *= l;
            }
            if k > best.0 {
                best = (k, x);
            }
        }
        let (k, x) = best;
        let target = ring.pow(x, k);
        // scan in the fixed order of `sylow` so the basis is reproducible
        let t = sylow
            .iter()
            .copied()
            .find(|t| span.contains(t) && ring.pow(*t, k) == target)
            .expect("abelian group basis lift");
        let tinv = ring.pow(t, k * sylow.len() as u64 - 1);
        let g = ring.mul(x, tinv);
        let mut next = HashSet::with_capacity(span.len() * k as usize);
        for &s in &span {
            let mut y = s;
            for _ in 0..k {
                next.insert(y);
                y = ring.mul(y, g);
            }
        }
        span = next;
        gens.push(g);
        orders.push(k);
    }
    (gens, orders)
}

#[cfg(test)]
mod tests {
    use super::super::field::{ExtKind, LocalField};

    fn sorted(v: &[u64]) -> Vec<u64> {
        let mut v = v.to_vec();
        v.sort();
        v
    }

    #[test]
    fn structures() {
        let f = LocalField::base(5, 3).unwrap();
        assert_eq!(sorted(f.units(3).unwrap().orders()), vec![4, 25]);
        let f = LocalField::base(7, 2).unwrap();
        assert_eq!(sorted(f.units(2).unwrap().orders()), vec![2, 3, 7]);
        let e = LocalField::extension(3, ExtKind::Unramified, 2).unwrap();
        assert_eq!(sorted(e.units(2).unwrap().orders()), vec![3, 3, 8]);
        let r = LocalField::extension(3, ExtKind::RamifiedPi, 2).unwrap();
        let u = r.units(4).unwrap();
        assert_eq!(u.order(), 2 * 27);
        assert_eq!(r.units(0).unwrap().order(), 1);
    }

    #[test]
    fn dlog_is_a_homomorphism() {
        let e = LocalField::extension(5, ExtKind::RamifiedUPi, 2).unwrap();
        let u = e.units(4).unwrap();
        let ring = *u.ring();
        let xs: Vec<_> = u.elements().copied().take(40).collect();
        for &x in &xs {
            for &y in &xs {
                let z = ring.mul(x, y);
                let want: Vec<u64> = u
                    .dlog(&x)
                    .iter()
                    .zip(u.dlog(&y))
                    .zip(u.orders())
                    .map(|((a, b), o)| (a + b) % o)
                    .collect();
                assert_eq!(u.dlog(&z), want.as_slice());
            }
        }
    }
}
