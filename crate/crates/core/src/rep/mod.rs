//! Matrix representations of finite groups and index-2 Clifford theory.

mod clifford;
mod inventory;
mod suite;

use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{ArithError, CycMatrix, Cyclotomic, UnitRoot};
use crate::group::{char_inner, same_group, ClassFunction, FiniteGroup, GroupError, IndexTwoPair};

pub use clifford::{clifford_extend, conjugate_twist, induce_index2, restrict_index2, tensor_with_sign};
pub use inventory::{induce_linear, irreducibles, linear_characters};
pub use suite::{clifford_suite, CliffordFinding, CliffordReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("expected {expected} matrices, got {got}")]
    Count { expected: usize, got: usize },
    #[error("matrix for element {element} is not {degree}x{degree}")]
    Shape { element: usize, degree: usize },
    #[error("not a homomorphism at ({a}, {b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("identity does not act trivially")]
    Identity,
    #[error("representation is on the wrong group")]
    WrongGroup,
    #[error("representation is not irreducible")]
    NotIrreducible,
    #[error("twist by s is not isomorphic to the representation")]
    NotStable,
    #[error("extension scalar {0} is not a rational times a root of unity")]
    Scaling(String),
    #[error("inner product {0} is not a non-negative integer")]
    NonIntegral(String),
    #[error("irreducible inventory of {group} is incomplete: sum of squares {found} != {order}")]
    Incomplete { group: String, found: usize, order: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A homomorphism `G → GL_d`, stored as one matrix per element.
#[derive(Clone)]
pub struct Representation {
    group: Arc<FiniteGroup>,
    degree: usize,
    mats: Vec<CycMatrix>,
    label: String,
}

impl Representation {
    /// Checks shapes, `φ(e) = I` and `φ(ab) = φ(a)φ(b)` for every pair.
    pub fn new(group: Arc<FiniteGroup>, mats: Vec<CycMatrix>) -> Result<Self, RepError> {
        let n = group.order();
        if mats.len() != n {
            return Err(RepError::Count { expected: n, got: mats.len() });
        }
        let degree = mats[0].rows();
        for (element, m) in mats.iter().enumerate() {
            if m.rows() != degree || m.cols() != degree {
                return Err(RepError::Shape { element, degree });
            }
        }
        if !mats[group.identity()].is_identity() {
            return Err(RepError::Identity);
        }
        for a in 0..n {
            for b in 0..n {
                if &mats[a] * &mats[b] != mats[group.mul(a, b)] {
                    return Err(RepError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(Representation { group, degree, mats, label: String::new() })
    }

    /// A one-dimensional representation from its values.
    pub fn linear(group: Arc<FiniteGroup>, values: &[UnitRoot]) -> Result<Self, RepError> {
        let mats = values
            .iter()
            .map(|v| CycMatrix::scalar(1, &v.to_cyclotomic()))
            .collect();
        Representation::new(group, mats)
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let mats = vec![CycMatrix::identity(1); group.order()];
        Representation::derived(group, mats, "1".into())
    }

    /// The sign character `eta` of a pair, on `G`.
    pub fn sign(pair: &IndexTwoPair) -> Self {
        let g = pair.g().clone();
        let mats = g
            .elements()
            .map(|x| CycMatrix::scalar(1, &Cyclotomic::from_int(pair.eta(x))))
            .collect();
        Representation::derived(g, mats, "eta".into())
    }

    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let mats = group
            .elements()
            .map(|g| {
                CycMatrix::from_fn(n, n, |r, c| Cyclotomic::from_int((group.mul(g, c) == r) as i64))
            })
            .collect();
        Representation::derived(group.clone(), mats, "reg".into())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self, g: usize) -> &CycMatrix {
        &self.mats[g]
    }

    pub fn matrices(&self) -> &[CycMatrix] {
        &self.mats
    }

    pub fn character(&self) -> ClassFunction {
        ClassFunction::from_element_fn(self.group.clone(), |g| self.mats[g].trace())
    }

    pub fn is_irreducible(&self) -> bool {
        let chi = self.character();
        char_inner(&chi, &chi).map(|v| v.is_one()).unwrap_or(false)
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Self, RepError> {
        self.check_group(other)?;
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Representation::derived(
            self.group.clone(),
            mats,
            format!("({}+{})", self.label, other.label),
        ))
    }

    pub fn tensor(&self, other: &Representation) -> Result<Self, RepError> {
        self.check_group(other)?;
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.kron(b)).collect();
        Ok(Representation::derived(
            self.group.clone(),
            mats,
            format!("({}*{})", self.label, other.label),
        ))
    }

    /// `g ↦ φ(g^{-1})^T`.
    pub fn dual(&self) -> Self {
        let mats = self
            .group
            .elements()
            .map(|g| self.mats[self.group.inv(g)].transpose())
            .collect();
        Representation::derived(self.group.clone(), mats, format!("{}^v", self.label))
    }

    /// Change of basis `g ↦ P φ(g) P^{-1}`.
    pub fn conjugate_by(&self, p: &CycMatrix) -> Result<Self, RepError> {
        let pi = p.inverse()?;
        let mats = self.mats.iter().map(|m| &(p * m) * &pi).collect();
        Ok(Representation::derived(self.group.clone(), mats, self.label.clone()))
    }

    fn check_group(&self, other: &Representation) -> Result<(), RepError> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(RepError::WrongGroup)
        }
    }

    /// Construction from matrices that form a representation by construction.
    /// The homomorphism check still runs; failure is an internal bug.
    pub(crate) fn derived(group: Arc<FiniteGroup>, mats: Vec<CycMatrix>, label: String) -> Self {
        Representation::new(group, mats)
            .expect("derived matrices must form a representation")
            .with_label(label)
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Representation({} of {}, degree {})",
            self.label,
            self.group.name(),
            self.degree
        )
    }
}

/// Character equality.
pub fn are_isomorphic(a: &Representation, b: &Representation) -> bool {
    same_group(&a.group, &b.group) && a.degree == b.degree && a.character() == b.character()
}

/// An invertible `A` with `A φ(g) = ψ(g) A` for all `g`, or `None` when the
/// representations are not isomorphic.
///
/// `A` is the average of `ψ(g) X φ(g)^{-1}` for a seeded pseudo-random integer
/// matrix `X`; a singular average is retried with the next seed.
pub fn intertwiner(phi: &Representation, psi: &Representation, seed: u64) -> Option<CycMatrix> {
    if !are_isomorphic(phi, psi) {
        return None;
    }
    let d = phi.degree;
    let g = &phi.group;
    for attempt in 0..64u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let x = CycMatrix::from_fn(d, d, |_, _| Cyclotomic::from_int(rng.gen_range(-3..=3)));
        let mut a = CycMatrix::zeros(d, d);
        for e in g.elements() {
            a = &a + &(&(psi.matrix(e) * &x) * phi.matrix(g.inv(e)));
        }
        if a.is_invertible() {
            return Some(a);
        }
    }
    None
}

/// Multiplicities of each listed irreducible in `phi`.
pub fn decompose(phi: &Representation, irreps: &[Representation]) -> Result<Vec<u64>, RepError> {
    let chi = phi.character();
    irreps
        .iter()
        .map(|r| {
            let ip = char_inner(&chi, &r.character())?;
            match ip.to_integer() {
                Some(k) if !k.is_negative() => Ok(u64::try_from(k).unwrap()),
                _ => Err(RepError::NonIntegral(ip.to_string())),
            }
        })
        .collect()
}

/// `sum d_i^2` over the list, compared with `|G|`.
pub fn check_complete(group: &FiniteGroup, irreps: &[Representation]) -> Result<(), RepError> {
    let found: usize = irreps.iter().map(|r| r.degree * r.degree).sum();
    if found == group.order() {
        Ok(())
    } else {
        Err(RepError::Incomplete { group: group.name().into(), found, order: group.order() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, index_two_pairs, quaternion8, symmetric};

    #[test]
    fn regular_of_c2() {
        let g = Arc::new(cyclic(2));
        let r = Representation::regular(g);
        let chi = r.character();
        assert_eq!(chi.values(), &[Cyclotomic::from_int(2), Cyclotomic::zero()]);
        assert!(!r.is_irreducible());
        Representation::new(r.group().clone(), r.matrices().to_vec()).unwrap();
    }

    #[test]
    fn rejects_non_homomorphism() {
        let g = Arc::new(cyclic(3));
        let m = CycMatrix::scalar(1, &Cyclotomic::from_int(-1));
        let mats = vec![CycMatrix::identity(1), m.clone(), m];
        assert!(matches!(Representation::new(g, mats), Err(RepError::NotHomomorphism { .. })));
    }

    #[test]
    fn q8_two_dim_is_self_dual_with_intertwiner() {
        let g = Arc::new(quaternion8());
        let irr = irreducibles(&g).unwrap();
        let two = irr.iter().find(|r| r.degree() == 2).unwrap();
        assert!(two.is_irreducible());
        let dual = two.dual();
        let a = intertwiner(two, &dual, 7).unwrap();
        for e in g.elements() {
            assert_eq!(&a * two.matrix(e), dual.matrix(e) * &a);
        }
    }

    #[test]
    fn regular_decomposition_of_s3() {
        let g = Arc::new(symmetric(3));
        let irr = irreducibles(&g).unwrap();
        let mut mult = decompose(&Representation::regular(g), &irr).unwrap();
        mult.sort();
        assert_eq!(mult, vec![1, 1, 2]);
    }

    #[test]
    fn one_plus_eta() {
        let g = Arc::new(cyclic(4));
        let pair = &index_two_pairs(&g)[0];
        let rep = Representation::trivial(g.clone()).direct_sum(&Representation::sign(pair)).unwrap();
        assert!(!rep.is_irreducible());
        let irr = vec![Representation::trivial(g), Representation::sign(pair)];
        assert_eq!(decompose(&rep, &irr).unwrap(), vec![1, 1]);
    }
}
