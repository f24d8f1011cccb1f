//! Finite groups given by full multiplication tables.

mod catalog;
mod classfn;
mod pairs;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use catalog::{
    alternating4, battery, cyclic, dihedral, from_permutations, klein_four, metacyclic,
    quaternion8, semidihedral16, symmetric,
};
pub use classfn::{char_inner, ClassFunction};
pub use pairs::{index_two_pairs, IndexTwoPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("no identity element")]
    MissingIdentity,
    #[error("element {element} has no inverse")]
    MissingInverse { element: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },
    #[error("group mismatch")]
    Mismatch,
}

/// A validated finite group on elements `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Checks the group axioms on a square table and precomputes inverses and
    /// conjugacy classes.
    pub fn validate(name: &str, rows: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::RowLength { row: r, len: row.len(), expected: n });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::OutOfRange { row: r, col: c, value: v });
                }
                table.push(v);
            }
        }
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or(GroupError::MissingIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or(GroupError::MissingInverse { element: g })?;
            inverse.push(h);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NonAssociative { a, b, c });
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            name: name.to_string(),
            n,
            table,
            identity,
            inverse,
            class_of: vec![usize::MAX; n],
            classes: vec![],
        };
        g.compute_classes();
        Ok(g)
    }

    fn compute_classes(&mut self) {
        for x in 0..self.n {
            if self.class_of[x] != usize::MAX {
                continue;
            }
            let set: BTreeSet<usize> = (0..self.n).map(|y| self.conj(x, y)).collect();
            let id = self.classes.len();
            for &e in &set {
                self.class_of[e] = id;
            }
            self.classes.push(set.into_iter().collect());
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `y x y^{-1}`.
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(y, x), self.inv(y))
    }

    pub fn pow(&self, g: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(g) } else { g };
        let mut acc = self.identity;
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        use num_integer::Integer;
        self.elements().fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// Sorted closure of `gens` under multiplication.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&i| seen[i]).collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &x in set {
            member[x] = true;
        }
        member[self.identity]
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = vec![];
        let mut span = vec![self.identity];
        for g in self.elements() {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.closure(&gens);
            }
            if span.len() == self.n {
                break;
            }
        }
        gens
    }

    /// Every subgroup generated by at most two elements, sorted and deduplicated.
    pub fn two_generated_subgroups(&self) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        for a in self.elements() {
            for b in a..self.n {
                out.insert(self.closure(&[a, b]));
            }
        }
        out.into_iter().collect()
    }

    /// The subgroup on `elems` as a standalone group, with local index `i`
    /// corresponding to `elems[i]`.
    pub fn subgroup(&self, name: &str, elems: &[usize]) -> Result<FiniteGroup, GroupError> {
        let mut local = vec![usize::MAX; self.n];
        for (i, &e) in elems.iter().enumerate() {
            local[e] = i;
        }
        let rows: Vec<Vec<usize>> = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| local[self.mul(a, b)]).collect())
            .collect();
        if rows.iter().flatten().any(|&v| v == usize::MAX) {
            return Err(GroupError::Mismatch);
        }
        FiniteGroup::validate(name, &rows)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// The group-table file form: `order n` then one row per line.
    pub fn to_table_text(&self) -> String {
        let mut s = format!("# {}\norder {}\n", self.name, self.n);
        for row in self.table.chunks(self.n) {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&r.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.n)
    }
}

pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a.table == b.table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_is_valid() {
        let g = FiniteGroup::validate("C2", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn corrupted_cell_gives_associativity_witness() {
        let mut rows = quaternion8().table_rows();
        rows[1][4] = 7;
        match FiniteGroup::validate("bad", &rows) {
            Err(GroupError::NonAssociative { a, b, c }) => {
                let at = |x: usize, y: usize| rows[x][y];
                assert_ne!(at(at(a, b), c), at(a, at(b, c)));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        assert_eq!(FiniteGroup::validate("e", &[]), Err(GroupError::Empty));
        assert!(matches!(
            FiniteGroup::validate("r", &[vec![0, 1], vec![1]]),
            Err(GroupError::RowLength { row: 1, .. })
        ));
        assert_eq!(
            FiniteGroup::validate("i", &[vec![1, 1], vec![1, 1]]),
            Err(GroupError::MissingIdentity)
        );
        assert_eq!(
            FiniteGroup::validate("v", &[vec![0, 1], vec![1, 1]]),
            Err(GroupError::MissingInverse { element: 1 })
        );
    }

    #[test]
    fn class_equation() {
        for g in battery() {
            let total: usize = g.conjugacy_classes().iter().map(Vec::len).sum();
            assert_eq!(total, g.order());
            assert_eq!(g.conjugacy_classes()[g.class_of(g.identity())].len(), 1);
        }
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = cyclic(6);
        assert!(g.conjugacy_classes().iter().all(|c| c.len() == 1));
    }
}
