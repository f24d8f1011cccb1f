use super::{
    are_isomorphic, check_complete, clifford_extend, conjugate_twist, decompose, induce_index2, restrict_index2,
    tensor_with_sign, RepError, Representation,
};
use crate::group::IndexTwoPair;

/// A failed dichotomy check. The certificate holds the characters involved,
/// one row of literals per representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordFinding {
    pub check: &'static str,
    pub subject: String,
    pub detail: String,
    pub certificate: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct CliffordReport {
    pub pair: String,
    pub s: usize,
    pub h_irreducibles: usize,
    pub g_irreducibles: usize,
    pub checks: usize,
    pub extensions: usize,
    pub violations: Vec<CliffordFinding>,
}

fn character_row(phi: &Representation) -> Vec<String> {
    phi.character().values().iter().map(|v| v.to_literal()).collect()
}

struct Ctx {
    checks: usize,
    violations: Vec<CliffordFinding>,
}

impl Ctx {
    fn check(&mut self, ok: bool, check: &'static str, subject: &str, detail: &str, reps: &[&Representation]) {
        self.checks += 1;
        if !ok {
            self.violations.push(CliffordFinding {
                check,
                subject: subject.to_string(),
                detail: detail.to_string(),
                certificate: reps.iter().map(|r| character_row(r)).collect(),
            });
        }
    }
}

/// The index-2 dichotomies on every irreducible of `H` and `G`:
/// `Ind φ` is irreducible iff `φ^s ≇ φ`, `Res Ind φ ≅ φ ⊕ φ^s`, a stable `φ`
/// extends in two ways `Φ ≇ η⊗Φ` with `Ind φ ≅ Φ ⊕ η⊗Φ`, and `Res Φ` splits
/// iff `Φ ≅ η⊗Φ`.
pub fn clifford_suite(
    pair: &IndexTwoPair,
    irr_h: &[Representation],
    irr_g: &[Representation],
) -> Result<CliffordReport, RepError> {
    check_complete(pair.h(), irr_h)?;
    check_complete(pair.g(), irr_g)?;
    let mut ctx = Ctx { checks: 0, violations: vec![] };
    let mut extensions = 0;
    for phi in irr_h {
        let label = phi.label();
        let twisted = conjugate_twist(phi, pair)?;
        let stable = are_isomorphic(phi, &twisted);
        let ind = induce_index2(phi, pair)?;
        ctx.check(ind.is_irreducible() != stable, "induction", label, "Ind irreducible iff not stable", &[phi, &twisted, &ind]);

        let mackey = phi.direct_sum(&twisted)?;
        let res_ind = restrict_index2(&ind, pair)?;
        ctx.check(are_isomorphic(&res_ind, &mackey), "mackey", label, "Res Ind = phi + phi^s", &[&res_ind, &mackey]);

        let mult = decompose(&ind, irr_g)?;
        let shape: Vec<u64> = mult.iter().copied().filter(|&m| m > 0).collect();
        let want: &[u64] = if stable { &[1, 1] } else { &[1] };
        ctx.check(shape == want, "decomposition", label, "multiplicities of Ind", &[&ind]);

        if stable {
            extensions += 1;
            let (ext, other) = clifford_extend(phi, pair)?;
            let sum = ext.direct_sum(&other)?;
            ctx.check(ext.is_irreducible(), "extension", label, "extension irreducible", &[&ext]);
            ctx.check(are_isomorphic(&restrict_index2(&ext, pair)?, phi), "extension", label, "Res Ext = phi", &[&ext, phi]);
            ctx.check(!are_isomorphic(&ext, &other), "extension", label, "Ext not eta-stable", &[&ext, &other]);
            ctx.check(are_isomorphic(&ind, &sum), "extension", label, "Ind = Ext + eta Ext", &[&ind, &sum]);
        }
    }
    for big in irr_g {
        let label = big.label();
        let res = restrict_index2(big, pair)?;
        let twisted = tensor_with_sign(big, pair)?;
        let splits = !res.is_irreducible();
        ctx.check(splits == are_isomorphic(big, &twisted), "restriction", label, "Res splits iff Phi = eta Phi", &[big, &res]);
    }
    Ok(CliffordReport {
        pair: pair.label().to_string(),
        s: pair.s(),
        h_irreducibles: irr_h.len(),
        g_irreducibles: irr_g.len(),
        checks: ctx.checks,
        extensions,
        violations: ctx.violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{battery, index_two_pairs};
    use crate::rep::irreducibles;

    #[test]
    fn battery_is_clean() {
        let mut pairs = 0;
        for g in battery() {
            let irr_g = irreducibles(&g).unwrap();
            for pair in index_two_pairs(&g) {
                let irr_h = irreducibles(pair.h()).unwrap();
                let r = clifford_suite(&pair, &irr_h, &irr_g).unwrap();
                assert!(r.violations.is_empty(), "{}: {:?}", r.pair, r.violations);
                pairs += 1;
            }
        }
        assert_eq!(pairs, 15);
    }
}
