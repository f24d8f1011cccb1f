use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{same_group, FiniteGroup, GroupError};
use crate::arith::{Cyclotomic, Rational};

/// A function on `G` that is constant on conjugacy classes.
#[derive(Clone, PartialEq, Eq)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    /// One value per conjugacy class, in the order of `conjugacy_classes()`.
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self, GroupError> {
        if values.len() != group.conjugacy_classes().len() {
            return Err(GroupError::Mismatch);
        }
        Ok(ClassFunction { group, values })
    }

    /// Builds from a per-element function, reading it at each class representative.
    pub fn from_element_fn(group: Arc<FiniteGroup>, f: impl Fn(usize) -> Cyclotomic) -> Self {
        let values = group.conjugacy_classes().iter().map(|c| f(c[0])).collect();
        ClassFunction { group, values }
    }

    pub fn constant(group: Arc<FiniteGroup>, v: i64) -> Self {
        let k = group.conjugacy_classes().len();
        ClassFunction { group, values: vec![Cyclotomic::from_int(v); k] }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn at(&self, g: usize) -> &Cyclotomic {
        &self.values[self.group.class_of(g)]
    }

    pub fn degree(&self) -> &Cyclotomic {
        self.at(self.group.identity())
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<Self, GroupError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &ClassFunction) -> Result<Self, GroupError> {
        self.zip(other, |a, b| a * b)
    }

    fn zip(
        &self,
        other: &ClassFunction,
        f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Result<Self, GroupError> {
        if !same_group(&self.group, &other.group) {
            return Err(GroupError::Mismatch);
        }
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "ClassFunction[{}]({})", self.group.name(), vals.join(", "))
    }
}

/// `(1/|G|) sum_g f(g) conj(h(g))`.
pub fn char_inner(f: &ClassFunction, h: &ClassFunction) -> Result<Cyclotomic, GroupError> {
    if !same_group(&f.group, &h.group) {
        return Err(GroupError::Mismatch);
    }
    let g = &f.group;
    let mut acc = Cyclotomic::zero();
    for (i, class) in g.conjugacy_classes().iter().enumerate() {
        let term = &f.values[i] * &h.values[i].conj();
        acc = acc + term.scale(&Rational::from_integer(BigInt::from(class.len())));
    }
    Ok(acc.scale(&Rational::new(BigInt::from(1), BigInt::from(g.order()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    #[test]
    fn trivial_and_sign_on_c2() {
        let g = Arc::new(cyclic(2));
        let triv = ClassFunction::constant(g.clone(), 1);
        let sign = ClassFunction::from_element_fn(g.clone(), |x| {
            Cyclotomic::from_int(if x == 0 { 1 } else { -1 })
        });
        assert!(char_inner(&triv, &triv).unwrap().is_one());
        assert!(char_inner(&triv, &sign).unwrap().is_zero());
    }

    #[test]
    fn mismatched_groups() {
        let a = ClassFunction::constant(Arc::new(cyclic(2)), 1);
        let b = ClassFunction::constant(Arc::new(cyclic(3)), 1);
        assert_eq!(char_inner(&a, &b), Err(GroupError::Mismatch));
        assert!(ClassFunction::new(Arc::new(cyclic(3)), vec![Cyclotomic::one()]).is_err());
    }
}
