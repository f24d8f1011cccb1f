//! Invariant and `s`-twisted bilinear forms on representations.
//!
//! A plain form satisfies `φ(g)^T B φ(g) = B`. A twisted form on a
//! representation of `H` satisfies `φ(w)^T B φ(s w s^{-1}) = B`, and its sign
//! `ε` is read off from `B φ(s^2) = ε B^T`.

mod prop_main;
mod transport;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{solve_linear_space, CycMatrix, Cyclotomic, Rational};
use crate::group::{same_group, ClassFunction, IndexTwoPair};
use crate::rep::{RepError, Representation};

pub use prop_main::{verify_prop_main, Finding, HRecord, GRecord, PropMainReport};
pub use transport::{induce_form, restrict_form};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("Gram matrix is degenerate")]
    Degenerate,
    #[error("form is not invariant at element {0}")]
    NotInvariant(usize),
    #[error("form has no definite sign")]
    NoSign,
    #[error("Gram matrix has the wrong size")]
    Shape,
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SelfDual {
    Orthogonal,
    Symplectic,
    Both,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConjDual {
    ConjOrthogonal,
    ConjSymplectic,
    Both,
    None,
}

fn admits(plus: bool, minus: bool, eps: i8) -> bool {
    if eps > 0 {
        plus
    } else {
        minus
    }
}

impl SelfDual {
    fn from_flags(plus: bool, minus: bool) -> Self {
        match (plus, minus) {
            (true, true) => SelfDual::Both,
            (true, false) => SelfDual::Orthogonal,
            (false, true) => SelfDual::Symplectic,
            (false, false) => SelfDual::None,
        }
    }

    /// Whether a nondegenerate invariant form of sign `eps` exists.
    pub fn admits(self, eps: i8) -> bool {
        admits(
            matches!(self, SelfDual::Orthogonal | SelfDual::Both),
            matches!(self, SelfDual::Symplectic | SelfDual::Both),
            eps,
        )
    }

    /// The sign when exactly one exists.
    pub fn sign(self) -> Option<i8> {
        match self {
            SelfDual::Orthogonal => Some(1),
            SelfDual::Symplectic => Some(-1),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SelfDual::Orthogonal => "orthogonal",
            SelfDual::Symplectic => "symplectic",
            SelfDual::Both => "both",
            SelfDual::None => "none",
        }
    }
}

impl ConjDual {
    fn from_flags(plus: bool, minus: bool) -> Self {
        match (plus, minus) {
            (true, true) => ConjDual::Both,
            (true, false) => ConjDual::ConjOrthogonal,
            (false, true) => ConjDual::ConjSymplectic,
            (false, false) => ConjDual::None,
        }
    }

    pub fn admits(self, eps: i8) -> bool {
        admits(
            matches!(self, ConjDual::ConjOrthogonal | ConjDual::Both),
            matches!(self, ConjDual::ConjSymplectic | ConjDual::Both),
            eps,
        )
    }

    pub fn sign(self) -> Option<i8> {
        match self {
            ConjDual::ConjOrthogonal => Some(1),
            ConjDual::ConjSymplectic => Some(-1),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ConjDual::ConjOrthogonal => "conj_orthogonal",
            ConjDual::ConjSymplectic => "conj_symplectic",
            ConjDual::Both => "both",
            ConjDual::None => "none",
        }
    }
}

impl fmt::Display for SelfDual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for ConjDual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualityType {
    pub self_dual: SelfDual,
    pub conj_dual: ConjDual,
}

#[derive(Debug, Clone)]
pub enum FormKind {
    Plain,
    Twisted(IndexTwoPair),
}

/// A nondegenerate form whose invariance has been checked on every element.
#[derive(Debug, Clone)]
pub struct BilinearForm {
    rep: Representation,
    gram: CycMatrix,
    kind: FormKind,
    sign: Option<i8>,
}

impl BilinearForm {
    pub fn plain(rep: &Representation, gram: CycMatrix) -> Result<Self, FormError> {
        check_gram(rep, &gram)?;
        for g in rep.group().elements() {
            let m = rep.matrix(g);
            if &(&m.transpose() * &gram) * m != gram {
                return Err(FormError::NotInvariant(g));
            }
        }
        let sign = if gram.transpose() == gram {
            Some(1)
        } else if gram.transpose() == -&gram {
            Some(-1)
        } else {
            None
        };
        Ok(BilinearForm { rep: rep.clone(), gram, kind: FormKind::Plain, sign })
    }

    pub fn twisted(rep: &Representation, gram: CycMatrix, pair: &IndexTwoPair) -> Result<Self, FormError> {
        check_gram(rep, &gram)?;
        if !same_group(rep.group(), pair.h()) {
            return Err(RepError::WrongGroup.into());
        }
        for w in pair.h().elements() {
            let lhs = &(&rep.matrix(w).transpose() * &gram) * rep.matrix(pair.twist_h(w));
            if lhs != gram {
                return Err(FormError::NotInvariant(pair.from_h(w)));
            }
        }
        let bs = &gram * rep.matrix(pair.s_squared_h());
        let sign = if bs == gram.transpose() {
            Some(1)
        } else if bs == -&gram.transpose() {
            Some(-1)
        } else {
            None
        };
        Ok(BilinearForm { rep: rep.clone(), gram, kind: FormKind::Twisted(pair.clone()), sign })
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn gram(&self) -> &CycMatrix {
        &self.gram
    }

    pub fn kind(&self) -> &FormKind {
        &self.kind
    }

    pub fn sign(&self) -> Option<i8> {
        self.sign
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self.kind, FormKind::Twisted(_))
    }
}

fn check_gram(rep: &Representation, gram: &CycMatrix) -> Result<(), FormError> {
    if gram.rows() != rep.degree() || gram.cols() != rep.degree() {
        return Err(FormError::Shape);
    }
    if !gram.is_invertible() {
        return Err(FormError::Degenerate);
    }
    Ok(())
}

/// Appends the rows of `M(B) = 0` for a map `B ↦ L^T B R - B` to `rows`.
fn push_invariance_rows(rows: &mut Vec<Vec<Cyclotomic>>, l: &CycMatrix, r: &CycMatrix) {
    let d = l.rows();
    for i in 0..d {
        for j in 0..d {
            let mut row = vec![Cyclotomic::zero(); d * d];
            for k in 0..d {
                if l[(k, i)].is_zero() {
                    continue;
                }
                for m in 0..d {
                    row[k * d + m] = &row[k * d + m] + &(&l[(k, i)] * &r[(m, j)]);
                }
            }
            row[i * d + j] = &row[i * d + j] - &Cyclotomic::one();
            rows.push(row);
        }
    }
}

/// Rows of `B P - eps B^T = 0`.
fn push_sign_rows(rows: &mut Vec<Vec<Cyclotomic>>, p: &CycMatrix, eps: i8) {
    let d = p.rows();
    let e = Cyclotomic::from_int(eps as i64);
    for i in 0..d {
        for j in 0..d {
            let mut row = vec![Cyclotomic::zero(); d * d];
            for k in 0..d {
                row[i * d + k] = p[(k, j)].clone();
            }
            row[j * d + i] = &row[j * d + i] - &e;
            rows.push(row);
        }
    }
}

fn solve_rows(rows: Vec<Vec<Cyclotomic>>, d: usize) -> Vec<CycMatrix> {
    if rows.is_empty() {
        return (0..d * d)
            .map(|k| CycMatrix::from_fn(d, d, |i, j| Cyclotomic::from_int((i * d + j == k) as i64)))
            .collect();
    }
    let m = CycMatrix::new(rows.len(), d * d, rows.into_iter().flatten().collect()).unwrap();
    solve_linear_space(&m)
        .iter()
        .map(|v| CycMatrix::unvectorize(v, d, d))
        .collect()
}

fn plain_rows(phi: &Representation) -> Vec<Vec<Cyclotomic>> {
    let mut rows = vec![];
    for g in phi.group().generators() {
        push_invariance_rows(&mut rows, phi.matrix(g), phi.matrix(g));
    }
    rows
}

fn twisted_rows(phi: &Representation, pair: &IndexTwoPair) -> Vec<Vec<Cyclotomic>> {
    let mut rows = vec![];
    for w in pair.h().generators() {
        push_invariance_rows(&mut rows, phi.matrix(w), phi.matrix(pair.twist_h(w)));
    }
    rows
}

/// Exact basis of `{B : φ(g)^T B φ(g) = B for all g}`. Invariance under a
/// generating set is equivalent.
pub fn invariant_form_space(phi: &Representation) -> Vec<CycMatrix> {
    solve_rows(plain_rows(phi), phi.degree())
}

/// Exact basis of the `s`-twisted invariant forms on a representation of `H`.
pub fn twisted_form_space(phi: &Representation, pair: &IndexTwoPair) -> Result<Vec<CycMatrix>, FormError> {
    if !same_group(phi.group(), pair.h()) {
        return Err(RepError::WrongGroup.into());
    }
    Ok(solve_rows(twisted_rows(phi, pair), phi.degree()))
}

/// Invariant forms with `B^T = eps B`.
pub fn signed_form_space(phi: &Representation, eps: i8) -> Vec<CycMatrix> {
    let mut rows = plain_rows(phi);
    push_sign_rows(&mut rows, &CycMatrix::identity(phi.degree()), eps);
    solve_rows(rows, phi.degree())
}

/// Twisted forms with `B φ(s^2) = eps B^T`.
pub fn signed_twisted_space(
    phi: &Representation,
    pair: &IndexTwoPair,
    eps: i8,
) -> Result<Vec<CycMatrix>, FormError> {
    if !same_group(phi.group(), pair.h()) {
        return Err(RepError::WrongGroup.into());
    }
    let mut rows = twisted_rows(phi, pair);
    push_sign_rows(&mut rows, phi.matrix(pair.s_squared_h()), eps);
    Ok(solve_rows(rows, phi.degree()))
}

/// A nondegenerate member of the span, if one exists.
///
/// Tries each basis element, then integer combinations with coefficients in
/// `1..=d+1`. A nonzero determinant polynomial of degree `d` cannot vanish on
/// that whole grid, so the search is complete whenever the grid is exhausted.
pub fn nondegenerate_member(basis: &[CycMatrix]) -> Option<CycMatrix> {
    if let Some(b) = basis.iter().find(|b| b.is_invertible()) {
        return Some(b.clone());
    }
    let k = basis.len();
    if k < 2 {
        return None;
    }
    let d = basis[0].rows();
    let side = d as u64 + 1;
    let limit = side.checked_pow(k as u32).unwrap_or(u64::MAX).min(20_000);
    for code in 0..limit {
        let mut c = code;
        let mut acc = CycMatrix::zeros(d, d);
        for b in basis {
            let coeff = (c % side) as i64 + 1;
            c /= side;
            acc = &acc + &b.scale(&Cyclotomic::from_int(coeff));
        }
        if acc.is_invertible() {
            return Some(acc);
        }
    }
    None
}

/// A nondegenerate invariant form of sign `eps`, if one exists.
pub fn self_dual_form(phi: &Representation, eps: i8) -> Option<BilinearForm> {
    let gram = nondegenerate_member(&signed_form_space(phi, eps))?;
    BilinearForm::plain(phi, gram).ok()
}

/// A nondegenerate twisted form of sign `eps`, if one exists.
pub fn conj_dual_form(phi: &Representation, pair: &IndexTwoPair, eps: i8) -> Option<BilinearForm> {
    let gram = nondegenerate_member(&signed_twisted_space(phi, pair, eps).ok()?)?;
    BilinearForm::twisted(phi, gram, pair).ok()
}

pub fn classify_self_duality(phi: &Representation) -> SelfDual {
    SelfDual::from_flags(self_dual_form(phi, 1).is_some(), self_dual_form(phi, -1).is_some())
}

pub fn classify_conjugate_duality(phi: &Representation, pair: &IndexTwoPair) -> ConjDual {
    ConjDual::from_flags(
        conj_dual_form(phi, pair, 1).is_some(),
        conj_dual_form(phi, pair, -1).is_some(),
    )
}

pub fn classify(phi: &Representation, pair: &IndexTwoPair) -> DualityType {
    DualityType {
        self_dual: classify_self_duality(phi),
        conj_dual: classify_conjugate_duality(phi, pair),
    }
}

/// `(1/|G|) Σ_g χ(g^2)`.
pub fn fs_indicator(chi: &ClassFunction) -> Cyclotomic {
    let g = chi.group();
    let sum = g
        .elements()
        .fold(Cyclotomic::zero(), |acc, x| &acc + chi.at(g.mul(x, x)));
    sum.scale(&Rational::new(BigInt::from(1), BigInt::from(g.order())))
}

/// `(1/|H|) Σ_{t ∈ G∖H} χ(t^2)` for a class function `χ` of `H`.
pub fn twisted_fs_indicator(chi: &ClassFunction, pair: &IndexTwoPair) -> Result<Cyclotomic, FormError> {
    if !same_group(chi.group(), pair.h()) {
        return Err(RepError::WrongGroup.into());
    }
    let g = pair.g();
    let sum = g
        .elements()
        .filter(|&t| !pair.in_h(t))
        .fold(Cyclotomic::zero(), |acc, t| {
            &acc + chi.at(pair.to_h(g.mul(t, t)).unwrap())
        });
    Ok(sum.scale(&Rational::new(BigInt::from(1), BigInt::from(pair.h().order()))))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{cyclic, dihedral, index_two_pairs, quaternion8};
    use crate::rep::irreducibles;

    fn c4_pair(g: &Arc<crate::group::FiniteGroup>) -> IndexTwoPair {
        index_two_pairs(g).into_iter().find(|p| p.h().exponent() == 4).unwrap()
    }

    fn faithful(pair: &IndexTwoPair) -> Representation {
        irreducibles(pair.h())
            .unwrap()
            .into_iter()
            .find(|r| r.character().values().iter().any(|v| !v.is_rational()))
            .unwrap()
    }

    #[test]
    fn q8_two_dim_is_symplectic() {
        let g = Arc::new(quaternion8());
        let two = irreducibles(&g).unwrap().into_iter().find(|r| r.degree() == 2).unwrap();
        let space = invariant_form_space(&two);
        assert_eq!(space.len(), 1);
        assert_eq!(space[0].transpose(), -&space[0]);
        assert_eq!(classify_self_duality(&two), SelfDual::Symplectic);
        assert_eq!(fs_indicator(&two.character()), Cyclotomic::from_int(-1));
    }

    #[test]
    fn d4_two_dim_is_orthogonal() {
        let g = Arc::new(dihedral(4));
        let two = irreducibles(&g).unwrap().into_iter().find(|r| r.degree() == 2).unwrap();
        assert_eq!(classify_self_duality(&two), SelfDual::Orthogonal);
    }

    #[test]
    fn trivial_squared_has_four_forms() {
        let g = Arc::new(cyclic(3));
        let t = Representation::trivial(g.clone());
        let tt = t.direct_sum(&t).unwrap();
        assert_eq!(invariant_form_space(&tt).len(), 4);
        assert_eq!(classify_self_duality(&tt), SelfDual::Both);
        let chi = irreducibles(&g).unwrap().into_iter().nth(1).unwrap();
        assert!(invariant_form_space(&chi).is_empty());
        assert_eq!(classify_self_duality(&chi), SelfDual::None);
    }

    #[test]
    fn twisted_signs_for_c4_subgroups() {
        let q8 = Arc::new(quaternion8());
        let pq = c4_pair(&q8);
        let chi = faithful(&pq);
        let space = twisted_form_space(&chi, &pq).unwrap();
        assert_eq!(space.len(), 1);
        assert_eq!(classify_conjugate_duality(&chi, &pq), ConjDual::ConjSymplectic);
        assert_eq!(twisted_fs_indicator(&chi.character(), &pq).unwrap(), Cyclotomic::from_int(-1));

        let d4 = Arc::new(dihedral(4));
        let pd = c4_pair(&d4);
        let chi = faithful(&pd);
        assert_eq!(classify_conjugate_duality(&chi, &pd), ConjDual::ConjOrthogonal);
        assert_eq!(twisted_fs_indicator(&chi.character(), &pd).unwrap(), Cyclotomic::from_int(1));

        let triv = Representation::trivial(pd.h().clone());
        assert_eq!(classify_conjugate_duality(&triv, &pd), ConjDual::ConjOrthogonal);
    }
}
