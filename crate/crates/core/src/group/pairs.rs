use std::sync::Arc;

use super::FiniteGroup;

/// `G` with an index-2 subgroup `H`, a coset representative `s` and the sign
/// character `eta` with kernel `H`.
///
/// `H` is also materialized as a standalone group whose element `i` is
/// `h_elems[i]` in `G`.
#[derive(Clone, Debug)]
pub struct IndexTwoPair {
    g: Arc<FiniteGroup>,
    h: Arc<FiniteGroup>,
    h_elems: Vec<usize>,
    to_h: Vec<Option<usize>>,
    s: usize,
    label: String,
}

impl IndexTwoPair {
    /// Packages `G ⊃ H`; `h_elems` must be a sorted index-2 subgroup.
    /// Returns `None` when it is not.
    pub fn new(g: Arc<FiniteGroup>, h_elems: Vec<usize>, label: &str) -> Option<Self> {
        if 2 * h_elems.len() != g.order() || !g.is_subgroup(&h_elems) {
            return None;
        }
        let mut to_h = vec![None; g.order()];
        for (i, &e) in h_elems.iter().enumerate() {
            to_h[e] = Some(i);
        }
        let s = g.elements().find(|&x| to_h[x].is_none())?;
        let h = Arc::new(g.subgroup(&format!("{label}.H"), &h_elems).ok()?);
        Some(IndexTwoPair { g, h, h_elems, to_h, s, label: label.to_string() })
    }

    /// The same pair with the largest element of `G∖H` as `s`.
    pub fn with_alt_s(&self) -> Self {
        let s = self.g.elements().rev().find(|&x| self.to_h[x].is_none()).unwrap();
        self.with_s(s).unwrap()
    }

    pub fn with_s(&self, s: usize) -> Option<Self> {
        if s >= self.g.order() || self.to_h[s].is_some() {
            return None;
        }
        Some(IndexTwoPair { s, ..self.clone() })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    pub fn h(&self) -> &Arc<FiniteGroup> {
        &self.h
    }

    pub fn h_elems(&self) -> &[usize] {
        &self.h_elems
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn in_h(&self, g: usize) -> bool {
        self.to_h[g].is_some()
    }

    /// Local index in `H` of an element of `G` lying in `H`.
    pub fn to_h(&self, g: usize) -> Option<usize> {
        self.to_h[g]
    }

    pub fn from_h(&self, h: usize) -> usize {
        self.h_elems[h]
    }

    pub fn eta(&self, g: usize) -> i64 {
        if self.in_h(g) {
            1
        } else {
            -1
        }
    }

    /// `s h s^{-1}` in local `H` indices.
    pub fn twist_h(&self, h: usize) -> usize {
        let x = self.g.conj(self.h_elems[h], self.s);
        self.to_h[x].unwrap()
    }

    /// `s^{-1} h s` in local `H` indices.
    pub fn untwist_h(&self, h: usize) -> usize {
        let x = self.g.conj(self.h_elems[h], self.g.inv(self.s));
        self.to_h[x].unwrap()
    }

    /// `s^2` in local `H` indices.
    pub fn s_squared_h(&self) -> usize {
        self.to_h[self.g.mul(self.s, self.s)].unwrap()
    }

    /// Writes `g` as `h` or `h s`; returns `(h, coset)` with `h` local.
    pub fn split(&self, g: usize) -> (usize, bool) {
        match self.to_h[g] {
            Some(h) => (h, false),
            None => {
                let h = self.g.mul(g, self.g.inv(self.s));
                (self.to_h[h].unwrap(), true)
            }
        }
    }
}

/// All index-2 subgroups of `G`, as kernels of the nontrivial homomorphisms
/// `G → {±1}`. Sorted by element set; labels are `G:0`, `G:1`, ...
pub fn index_two_pairs(g: &Arc<FiniteGroup>) -> Vec<IndexTwoPair> {
    if g.order() % 2 == 1 {
        return vec![];
    }
    let gens = g.generators();
    let mut kernels = std::collections::BTreeSet::new();
    for mask in 1u64..(1u64 << gens.len()) {
        if let Some(sign) = extend_sign(g, &gens, mask) {
            let ker: Vec<usize> = g.elements().filter(|&x| !sign[x]).collect();
            kernels.insert(ker);
        }
    }
    kernels
        .into_iter()
        .enumerate()
        .map(|(i, k)| IndexTwoPair::new(g.clone(), k, &format!("{}:{i}", g.name())).unwrap())
        .collect()
}

/// Extends the assignment `gens[i] ↦ bit i of mask` to a homomorphism onto
/// `Z/2` if one exists. `true` means the element maps to the nontrivial value.
fn extend_sign(g: &FiniteGroup, gens: &[usize], mask: u64) -> Option<Vec<bool>> {
    let n = g.order();
    let mut sign: Vec<Option<bool>> = vec![None; n];
    sign[g.identity()] = Some(false);
    let mut queue = std::collections::VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (i, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            let v = sign[x].unwrap() ^ (mask >> i & 1 == 1);
            match sign[y] {
                None => {
                    sign[y] = Some(v);
                    queue.push_back(y);
                }
                Some(w) if w != v => return None,
                _ => {}
            }
        }
    }
    let sign: Vec<bool> = sign.into_iter().map(Option::unwrap).collect();
    for a in 0..n {
        for b in 0..n {
            if sign[g.mul(a, b)] != (sign[a] ^ sign[b]) {
                return None;
            }
        }
    }
    Some(sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{battery, cyclic, dihedral, quaternion8};

    fn count_by_subsets(g: &FiniteGroup) -> usize {
        let n = g.order();
        if n % 2 == 1 {
            return 0;
        }
        let others: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
        let mut count = 0;
        for mask in 0u32..(1u32 << others.len()) {
            if mask.count_ones() as usize != n / 2 - 1 {
                continue;
            }
            let mut set = vec![g.identity()];
            set.extend(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x));
            if g.is_subgroup(&set) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_subset_scan() {
        for g in battery() {
            if g.order() <= 16 {
                assert_eq!(index_two_pairs(&g).len(), count_by_subsets(&g), "{}", g.name());
            }
        }
        assert_eq!(count_by_subsets(&cyclic(6)), 1);
    }

    #[test]
    fn known_counts() {
        assert_eq!(index_two_pairs(&Arc::new(quaternion8())).len(), 3);
        assert_eq!(index_two_pairs(&Arc::new(dihedral(4))).len(), 3);
        assert!(index_two_pairs(&Arc::new(cyclic(3))).is_empty());
        let total: usize = battery().iter().map(|g| index_two_pairs(g).len()).sum();
        assert_eq!(total, 15);
    }

    #[test]
    fn pair_structure() {
        for g in battery() {
            for p in index_two_pairs(&g) {
                for q in [p.clone(), p.with_alt_s()] {
                    assert!(!q.in_h(q.s()));
                    assert!(q.in_h(g.mul(q.s(), q.s())));
                    for a in g.elements() {
                        for b in g.elements() {
                            assert_eq!(q.eta(g.mul(a, b)), q.eta(a) * q.eta(b));
                        }
                    }
                }
                assert_ne!(p.s(), p.with_alt_s().s(), "{}", p.label());
            }
        }
    }
}
