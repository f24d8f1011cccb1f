use super::{are_isomorphic, intertwiner, RepError, Representation};
use crate::arith::{CycMatrix, Cyclotomic, Rational};
use crate::group::{same_group, IndexTwoPair};

fn check_on_h(phi: &Representation, pair: &IndexTwoPair) -> Result<(), RepError> {
    if same_group(phi.group(), pair.h()) {
        Ok(())
    } else {
        Err(RepError::WrongGroup)
    }
}

fn check_on_g(phi: &Representation, pair: &IndexTwoPair) -> Result<(), RepError> {
    if same_group(phi.group(), pair.g()) {
        Ok(())
    } else {
        Err(RepError::WrongGroup)
    }
}

/// `φ^s : h ↦ φ(s h s^{-1})`.
pub fn conjugate_twist(phi: &Representation, pair: &IndexTwoPair) -> Result<Representation, RepError> {
    check_on_h(phi, pair)?;
    let mats = pair.h().elements().map(|h| phi.matrix(pair.twist_h(h)).clone()).collect();
    Ok(Representation::derived(pair.h().clone(), mats, format!("{}^s", phi.label())))
}

/// Induction in the block model on `V ⊕ s^{-1}V`: `h` acts by
/// `diag(φ(h), φ(shs^{-1}))` and `s` by `(x, y) ↦ (y, φ(s^2) x)`.
pub fn induce_index2(phi: &Representation, pair: &IndexTwoPair) -> Result<Representation, RepError> {
    check_on_h(phi, pair)?;
    let d = phi.degree();
    let zero = CycMatrix::zeros(d, d);
    let s2 = pair.s_squared_h();
    let g = pair.g();
    let mats = g
        .elements()
        .map(|x| {
            let (h, coset) = pair.split(x);
            if coset {
                // h s acts as [[0, φ(h)], [φ(s h s), 0]]
                let shs = pair.h().mul(pair.twist_h(h), s2);
                CycMatrix::from_blocks(&zero, phi.matrix(h), phi.matrix(shs), &zero)
            } else {
                phi.matrix(h).direct_sum(phi.matrix(pair.twist_h(h)))
            }
        })
        .collect();
    Ok(Representation::derived(g.clone(), mats, format!("Ind({})", phi.label())))
}

pub fn restrict_index2(phi: &Representation, pair: &IndexTwoPair) -> Result<Representation, RepError> {
    check_on_g(phi, pair)?;
    let mats = pair.h_elems().iter().map(|&x| phi.matrix(x).clone()).collect();
    Ok(Representation::derived(pair.h().clone(), mats, format!("Res({})", phi.label())))
}

/// `g ↦ η(g) Φ(g)`.
pub fn tensor_with_sign(phi: &Representation, pair: &IndexTwoPair) -> Result<Representation, RepError> {
    check_on_g(phi, pair)?;
    let mats = pair
        .g()
        .elements()
        .map(|x| phi.matrix(x).scale(&Cyclotomic::from_int(pair.eta(x))))
        .collect();
    Ok(Representation::derived(pair.g().clone(), mats, format!("eta*{}", phi.label())))
}

/// The two extensions `(Φ, η⊗Φ)` of an `s`-stable irreducible `φ` of `H`.
///
/// `Φ(s)` is a scaled intertwiner `A` from `φ` to `φ^s`. By Schur,
/// `A^2 φ(s^2)^{-1}` is a scalar `c`, and `Φ(s) = A/√c`. Each matrix unit seeds
/// one averaging candidate for `A`; the first whose `c` is a rational times a
/// root of unity is used.
pub fn clifford_extend(
    phi: &Representation,
    pair: &IndexTwoPair,
) -> Result<(Representation, Representation), RepError> {
    check_on_h(phi, pair)?;
    if !phi.is_irreducible() {
        return Err(RepError::NotIrreducible);
    }
    let twisted = conjugate_twist(phi, pair)?;
    if !are_isomorphic(phi, &twisted) {
        return Err(RepError::NotStable);
    }
    let d = phi.degree();
    let h = pair.h();
    let s2_inv = phi.matrix(pair.s_squared_h()).inverse()?;
    let mut last = String::new();
    let candidates = (0..d * d)
        .map(|k| {
            let mut e = CycMatrix::zeros(d, d);
            e[(k / d, k % d)] = Cyclotomic::one();
            average(phi, &twisted, &e, h.order())
        })
        .chain(intertwiner(phi, &twisted, 0x5eed));
    for a in candidates {
        if a.is_zero() {
            continue;
        }
        let c_mat = &(&a * &a) * &s2_inv;
        let c = c_mat[(0, 0)].clone();
        if c_mat != CycMatrix::scalar(d, &c) || c.is_zero() {
            continue;
        }
        let Some(root) = sqrt_scalar(&c) else {
            last = c.to_string();
            continue;
        };
        let phi_s = a.scale(&root.inv()?);
        let g = pair.g();
        let mats = g
            .elements()
            .map(|x| {
                let (hx, coset) = pair.split(x);
                if coset {
                    phi.matrix(hx) * &phi_s
                } else {
                    phi.matrix(hx).clone()
                }
            })
            .collect();
        let ext = Representation::new(g.clone(), mats)?.with_label(format!("Ext({})", phi.label()));
        let other = tensor_with_sign(&ext, pair)?;
        return Ok((ext, other));
    }
    Err(RepError::Scaling(last))
}

/// `Σ_h φ^s(h) X φ(h)^{-1}`, an intertwiner from `φ` to `φ^s`.
fn average(phi: &Representation, twisted: &Representation, x: &CycMatrix, n: usize) -> CycMatrix {
    let h = phi.group();
    let mut acc = CycMatrix::zeros(phi.degree(), phi.degree());
    for e in 0..n {
        acc = &acc + &(&(twisted.matrix(e) * x) * phi.matrix(h.inv(e)));
    }
    acc
}

/// A square root of `r ζ` with `r` rational and `ζ` a root of unity.
fn sqrt_scalar(c: &Cyclotomic) -> Option<Cyclotomic> {
    if let Some(r) = c.to_rational() {
        if let Some(root) = Cyclotomic::sqrt_rational(&r) {
            return Some(root);
        }
    }
    // c = r ζ with r = |c| rational: try c/c̄ = ζ^2 and |c|^2 = c c̄.
    let norm = (c * &c.conj()).to_rational()?;
    let r = sqrt_rational_exact(&norm)?;
    let zeta = c.scale(&r.recip());
    zeta.as_unit_root()?;
    let root_zeta = zeta.sqrt_of_root_of_unity().ok()?;
    let root_r = Cyclotomic::sqrt_rational(&r)?;
    Some(&root_r * &root_zeta)
}

fn sqrt_rational_exact(q: &Rational) -> Option<Rational> {
    use num_traits::Signed;
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{battery, cyclic, dihedral, index_two_pairs, quaternion8};
    use crate::rep::{decompose, irreducibles};

    fn faithful_c4(pair: &IndexTwoPair) -> Representation {
        irreducibles(pair.h())
            .unwrap()
            .into_iter()
            .find(|r| r.degree() == 1 && r.character().values().iter().any(|v| !v.is_rational()))
            .unwrap()
    }

    fn c4_pair(g: &Arc<crate::group::FiniteGroup>) -> IndexTwoPair {
        index_two_pairs(g).into_iter().find(|p| p.h().exponent() == 4).unwrap()
    }

    #[test]
    fn q8_twist_inverts_faithful_character() {
        let g = Arc::new(quaternion8());
        let pair = c4_pair(&g);
        let chi = faithful_c4(&pair);
        let tw = conjugate_twist(&chi, &pair).unwrap();
        assert!(are_isomorphic(&tw, &chi.dual()));
        assert!(!are_isomorphic(&tw, &chi));
        let ind = induce_index2(&chi, &pair).unwrap();
        assert!(ind.is_irreducible());
        let two = Cyclotomic::from_int(2);
        assert_eq!(ind.character().at(g.identity()), &two);
        assert_eq!(ind.character().at(2), &-two);
    }

    #[test]
    fn induce_trivial_is_one_plus_eta() {
        let g = Arc::new(dihedral(4));
        for pair in index_two_pairs(&g) {
            let ind = induce_index2(&Representation::trivial(pair.h().clone()), &pair).unwrap();
            let irr = vec![Representation::trivial(g.clone()), Representation::sign(&pair)];
            assert_eq!(decompose(&ind, &irr).unwrap(), vec![1, 1]);
            let (a, b) = clifford_extend(&Representation::trivial(pair.h().clone()), &pair).unwrap();
            assert!(are_isomorphic(&a, &irr[0]));
            assert!(are_isomorphic(&b, &irr[1]));
        }
    }

    #[test]
    fn extensions_exist_for_every_stable_irreducible() {
        for g in battery() {
            for pair in index_two_pairs(&g) {
                for phi in irreducibles(pair.h()).unwrap() {
                    let tw = conjugate_twist(&phi, &pair).unwrap();
                    if !are_isomorphic(&phi, &tw) {
                        assert!(matches!(clifford_extend(&phi, &pair), Err(RepError::NotStable)));
                        continue;
                    }
                    let (a, b) = clifford_extend(&phi, &pair).unwrap();
                    assert!(a.is_irreducible() && !are_isomorphic(&a, &b));
                    let res = restrict_index2(&a, &pair).unwrap();
                    assert_eq!(res.matrices(), phi.matrices());
                    let ind = induce_index2(&phi, &pair).unwrap();
                    assert!(are_isomorphic(&ind, &a.direct_sum(&b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn wrong_group_is_rejected() {
        let g = Arc::new(cyclic(4));
        let pair = &index_two_pairs(&g)[0];
        let on_g = Representation::trivial(g.clone());
        assert_eq!(conjugate_twist(&on_g, pair).unwrap_err(), RepError::WrongGroup);
    }
}
