use std::collections::VecDeque;
use std::sync::Arc;

use super::{check_complete, RepError, Representation};
use crate::arith::{CycMatrix, Cyclotomic, UnitRoot};
use crate::group::{ClassFunction, FiniteGroup};

/// Every homomorphism `G → C^×`, as a value per element. The trivial
/// character comes first.
pub fn linear_characters(g: &FiniteGroup) -> Vec<Vec<UnitRoot>> {
    let gens = g.generators();
    let e = g.exponent() as u64;
    let mut out = vec![];
    let total = (e as usize).pow(gens.len() as u32);
    for code in 0..total {
        let mut c = code;
        let exps: Vec<u64> = gens
            .iter()
            .map(|_| {
                let k = (c % e as usize) as u64;
                c /= e as usize;
                k
            })
            .collect();
        if let Some(vals) = extend_linear(g, &gens, &exps, e) {
            out.push(vals.into_iter().map(|k| UnitRoot::new(k as i64, e)).collect());
        }
    }
    out
}

/// Extends `gens[i] ↦ exps[i]` in `Z/e` to a homomorphism if possible.
fn extend_linear(g: &FiniteGroup, gens: &[usize], exps: &[u64], e: u64) -> Option<Vec<u64>> {
    let n = g.order();
    let mut val: Vec<Option<u64>> = vec![None; n];
    val[g.identity()] = Some(0);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&gen, &k) in gens.iter().zip(exps) {
            let y = g.mul(x, gen);
            let v = (val[x].unwrap() + k) % e;
            match val[y] {
                None => {
                    val[y] = Some(v);
                    queue.push_back(y);
                }
                Some(w) if w != v => return None,
                _ => {}
            }
        }
    }
    let val: Vec<u64> = val.into_iter().map(Option::unwrap).collect();
    for a in 0..n {
        for b in 0..n {
            if val[g.mul(a, b)] != (val[a] + val[b]) % e {
                return None;
            }
        }
    }
    Some(val)
}

/// Character of the representation induced from the linear character `lambda`
/// of the subgroup `k_elems` (values indexed like `k_elems`).
fn induced_character(g: &Arc<FiniteGroup>, k_elems: &[usize], lambda: &[UnitRoot]) -> ClassFunction {
    let mut local = vec![None; g.order()];
    for (i, &x) in k_elems.iter().enumerate() {
        local[x] = Some(i);
    }
    let scale = crate::arith::Rational::new(1.into(), (k_elems.len() as i64).into());
    ClassFunction::from_element_fn(g.clone(), |x| {
        let roots = g
            .elements()
            .filter_map(|y| local[g.conj(x, g.inv(y))].map(|i| lambda[i]));
        Cyclotomic::sum_of_roots(roots).scale(&scale)
    })
}

/// Monomial representation induced from a linear character of a subgroup.
///
/// With left transversal `t_i`, the `(i, j)` entry of `g` is
/// `λ(t_i^{-1} g t_j)` when that lies in the subgroup and `0` otherwise.
pub fn induce_linear(
    g: &Arc<FiniteGroup>,
    k_elems: &[usize],
    lambda: &[UnitRoot],
) -> Result<Representation, RepError> {
    let mut local = vec![None; g.order()];
    for (i, &x) in k_elems.iter().enumerate() {
        local[x] = Some(i);
    }
    let mut covered = vec![false; g.order()];
    let mut transversal = vec![];
    for t in g.elements() {
        if !covered[t] {
            transversal.push(t);
            for &k in k_elems {
                covered[g.mul(t, k)] = true;
            }
        }
    }
    let m = transversal.len();
    let mats = g
        .elements()
        .map(|x| {
            CycMatrix::from_fn(m, m, |i, j| {
                let y = g.mul(g.mul(g.inv(transversal[i]), x), transversal[j]);
                match local[y] {
                    Some(idx) => lambda[idx].to_cyclotomic(),
                    None => Cyclotomic::zero(),
                }
            })
        })
        .collect();
    Representation::new(g.clone(), mats)
}

/// A complete list of pairwise non-isomorphic irreducible representations,
/// built as monomial representations induced from linear characters of
/// two-generated subgroups (largest subgroups first), sorted by degree.
///
/// Fails with [`RepError::Incomplete`] for groups that are not monomial in
/// this sense.
pub fn irreducibles(g: &Arc<FiniteGroup>) -> Result<Vec<Representation>, RepError> {
    let n = g.order();
    let mut subgroups = g.two_generated_subgroups();
    subgroups.push(g.elements().collect());
    subgroups.sort_by_key(|k| std::cmp::Reverse(k.len()));
    subgroups.dedup();
    let mut found: Vec<(ClassFunction, Representation)> = vec![];
    let mut total = 0;
    'outer: for k_elems in &subgroups {
        let k = g.subgroup("K", k_elems)?;
        for lambda in linear_characters(&k) {
            let chi = induced_character(g, k_elems, &lambda);
            let d = n / k_elems.len();
            if total + d * d > n || found.iter().any(|(c, _)| c == &chi) {
                continue;
            }
            let norm = crate::group::char_inner(&chi, &chi)?;
            if !norm.is_one() {
                continue;
            }
            let rep = induce_linear(g, k_elems, &lambda)?;
            total += d * d;
            found.push((chi, rep));
            if total == n {
                break 'outer;
            }
        }
    }
    let mut reps: Vec<Representation> = found.into_iter().map(|(_, r)| r).collect();
    reps.sort_by_key(Representation::degree);
    let reps: Vec<Representation> = reps
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let label = format!("{}.{}", g.name(), i);
            r.with_label(label)
        })
        .collect();
    check_complete(g, &reps)?;
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating4, battery, cyclic, index_two_pairs, quaternion8};

    #[test]
    fn linear_character_counts() {
        assert_eq!(linear_characters(&cyclic(6)).len(), 6);
        assert_eq!(linear_characters(&quaternion8()).len(), 4);
        assert_eq!(linear_characters(&alternating4()).len(), 3);
        assert!(linear_characters(&cyclic(5))[0].iter().all(UnitRoot::is_one));
    }

    #[test]
    fn inventories_are_complete() {
        let mut count = 0;
        for g in battery() {
            let irr = irreducibles(&g).unwrap();
            assert!(irr.iter().all(Representation::is_irreducible));
            count += irr.len();
            for p in index_two_pairs(&g) {
                let h = irreducibles(p.h()).unwrap();
                assert!(h.iter().all(Representation::is_irreducible));
            }
        }
        assert!(count >= 20);
    }

    #[test]
    fn q8_two_dim_character() {
        let g = Arc::new(quaternion8());
        let irr = irreducibles(&g).unwrap();
        let two = irr.iter().find(|r| r.degree() == 2).unwrap();
        let chi = two.character();
        let expect = [2, -2, 0, 0, 0];
        // classes of 1, -1, and the three pairs ±i, ±j, ±k
        for (x, want) in [0usize, 2, 1, 4, 5].into_iter().zip(expect) {
            assert_eq!(chi.at(x), &Cyclotomic::from_int(want));
        }
    }
}
