use super::{
    classify_conjugate_duality, classify_self_duality, conj_dual_form, fs_indicator, induce_form,
    restrict_form, self_dual_form, twisted_fs_indicator, BilinearForm, ConjDual, FormError, SelfDual,
};
use crate::arith::Cyclotomic;
use crate::group::IndexTwoPair;
use crate::rep::{are_isomorphic, check_complete, conjugate_twist, induce_index2, restrict_index2, Representation};

/// Classification data for an irreducible `φ_E` of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRecord {
    pub label: String,
    pub degree: usize,
    pub stable: bool,
    pub self_dual: SelfDual,
    pub conj_dual: ConjDual,
    pub ind_irreducible: bool,
    pub ind_self_dual: SelfDual,
}

/// Classification data for an irreducible `Φ` of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GRecord {
    pub label: String,
    pub degree: usize,
    pub self_dual: SelfDual,
    pub res_irreducible: bool,
    pub res_self_dual: SelfDual,
    pub res_conj_dual: ConjDual,
}

/// A failed check, with the Gram matrices involved as literal rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub part: &'static str,
    pub subject: String,
    pub detail: String,
    pub certificate: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone)]
pub struct PropMainReport {
    pub pair: String,
    pub s: usize,
    pub h_records: Vec<HRecord>,
    pub g_records: Vec<GRecord>,
    pub violations: Vec<Finding>,
    /// Reducible `Ind(φ_E) ≅ Φ ⊕ Φ^∨` carries forms of both signs, so the
    /// single-sign conclusion for `φ_E` cannot hold for both. These cases are
    /// listed here rather than as violations; the sign-free conclusion (self-dual
    /// and conjugate-dual) is still enforced.
    pub hyperbolic: Vec<Finding>,
    pub checks: usize,
}

struct Ctx {
    violations: Vec<Finding>,
    hyperbolic: Vec<Finding>,
    checks: usize,
}

impl Ctx {
    fn check(&mut self, ok: bool, part: &'static str, subject: &str, detail: impl FnOnce() -> String, forms: &[&BilinearForm]) {
        self.checks += 1;
        if !ok {
            self.violations.push(finding(part, subject, detail(), forms));
        }
    }
}

fn finding(part: &'static str, subject: &str, detail: String, forms: &[&BilinearForm]) -> Finding {
    Finding {
        part,
        subject: subject.to_string(),
        detail,
        certificate: forms.iter().map(|f| f.gram().to_literal_rows()).collect(),
    }
}

fn indicator_value(v: &Cyclotomic) -> Option<i64> {
    v.to_integer().and_then(|k| i64::try_from(k).ok())
}

fn self_dual_matches(ind: Option<i64>, sd: SelfDual) -> bool {
    matches!(
        (ind, sd),
        (Some(1), SelfDual::Orthogonal) | (Some(-1), SelfDual::Symplectic) | (Some(0), SelfDual::None)
    )
}

fn conj_dual_matches(ind: Option<i64>, cd: ConjDual) -> bool {
    matches!(
        (ind, cd),
        (Some(1), ConjDual::ConjOrthogonal) | (Some(-1), ConjDual::ConjSymplectic) | (Some(0), ConjDual::None)
    )
}

/// Part 1: every form of sign `ε` on `rep` (plain or twisted) induces a plain
/// form of sign `ε`, and `Ind(rep)` is then `ε`-self-dual.
fn part1(ctx: &mut Ctx, rep: &Representation, pair: &IndexTwoPair, ind_sd: SelfDual) {
    for eps in [1i8, -1] {
        let forms = [self_dual_form(rep, eps), conj_dual_form(rep, pair, eps)];
        for form in forms.iter().flatten() {
            let kind = if form.is_twisted() { "twisted" } else { "plain" };
            match induce_form(form, pair) {
                Ok(out) => ctx.check(
                    out.sign() == Some(eps) && ind_sd.admits(eps),
                    "1",
                    rep.label(),
                    || format!("{kind} form of sign {eps} does not induce a form of sign {eps}"),
                    &[form, &out],
                ),
                Err(e) => ctx.check(false, "1", rep.label(), || format!("{kind} form of sign {eps}: {e}"), &[form]),
            }
        }
    }
}

/// Part 3: a plain form of sign `ε` on `rep` restricts to plain and twisted
/// forms of sign `ε`.
fn part3(ctx: &mut Ctx, rep: &Representation, pair: &IndexTwoPair, sd: SelfDual) {
    for eps in [1i8, -1] {
        if !sd.admits(eps) {
            continue;
        }
        let Some(form) = self_dual_form(rep, eps) else {
            ctx.check(false, "3", rep.label(), || format!("no form of sign {eps} found"), &[]);
            continue;
        };
        match restrict_form(&form, pair) {
            Ok((p, t)) => ctx.check(
                p.sign() == Some(eps) && t.sign() == Some(eps),
                "3",
                rep.label(),
                || format!("restricted forms have signs {:?}, {:?}, expected {eps}", p.sign(), t.sign()),
                &[&form, &p, &t],
            ),
            Err(e) => ctx.check(false, "3", rep.label(), || e.to_string(), &[&form]),
        }
    }
}

/// Runs all four parts of the main proposition on one pair, with complete
/// irreducible inventories of `H` and `G`.
pub fn verify_prop_main(
    pair: &IndexTwoPair,
    irr_h: &[Representation],
    irr_g: &[Representation],
) -> Result<PropMainReport, FormError> {
    check_complete(pair.h(), irr_h)?;
    check_complete(pair.g(), irr_g)?;
    let mut ctx = Ctx { violations: vec![], hyperbolic: vec![], checks: 0 };
    let mut h_records = vec![];
    for phi in irr_h {
        let label = phi.label();
        let stable = are_isomorphic(phi, &conjugate_twist(phi, pair)?);
        let sd = classify_self_duality(phi);
        let cd = classify_conjugate_duality(phi, pair);
        let chi = phi.character();
        let fs = indicator_value(&fs_indicator(&chi));
        let tfs = indicator_value(&twisted_fs_indicator(&chi, pair)?);
        ctx.check(self_dual_matches(fs, sd), "indicator", label, || format!("fs {fs:?} vs {sd}"), &[]);
        ctx.check(conj_dual_matches(tfs, cd), "indicator", label, || format!("twisted fs {tfs:?} vs {cd}"), &[]);

        let ind = induce_index2(phi, pair)?;
        let ind_irreducible = ind.is_irreducible();
        ctx.check(ind_irreducible != stable, "clifford", label, || "Ind irreducible iff not stable".into(), &[]);
        let ind_sd = classify_self_duality(&ind);
        part1(&mut ctx, phi, pair, ind_sd);
        if sd == SelfDual::None {
            let hyper = phi.direct_sum(&phi.dual())?.with_label(format!("{label}+dual"));
            let hyper_ind_sd = classify_self_duality(&induce_index2(&hyper, pair)?);
            part1(&mut ctx, &hyper, pair, hyper_ind_sd);
        }

        for eps in [1i8, -1] {
            if !ind_sd.admits(eps) {
                continue;
            }
            let (a, b) = (sd.admits(eps), cd.admits(eps));
            if ind_irreducible {
                ctx.check(a != b, "2a", label, || {
                    format!("Ind is {ind_sd}; self-dual {sd}, conjugate-dual {cd}: need exactly one of sign {eps}")
                }, &[]);
            } else if ind_sd != SelfDual::Both {
                ctx.check(a && b, "2b", label, || {
                    format!("Ind is {ind_sd}; self-dual {sd}, conjugate-dual {cd}: need both of sign {eps}")
                }, &[]);
            } else {
                ctx.check(sd != SelfDual::None && cd != ConjDual::None, "2b", label, || {
                    format!("Ind is hyperbolic; self-dual {sd}, conjugate-dual {cd}")
                }, &[]);
                if !(a && b) {
                    let forms: Vec<BilinearForm> = [self_dual_form(phi, 1), self_dual_form(phi, -1)]
                        .into_iter()
                        .chain([conj_dual_form(phi, pair, 1), conj_dual_form(phi, pair, -1)])
                        .flatten()
                        .collect();
                    let refs: Vec<&BilinearForm> = forms.iter().collect();
                    ctx.hyperbolic.push(finding(
                        "2b",
                        label,
                        format!("Ind has forms of both signs; for sign {eps}: self-dual {sd}, conjugate-dual {cd}"),
                        &refs,
                    ));
                }
            }
        }
        h_records.push(HRecord {
            label: label.to_string(),
            degree: phi.degree(),
            stable,
            self_dual: sd,
            conj_dual: cd,
            ind_irreducible,
            ind_self_dual: ind_sd,
        });
    }

    let mut g_records = vec![];
    for big in irr_g {
        let label = big.label();
        let sd = classify_self_duality(big);
        let fs = indicator_value(&fs_indicator(&big.character()));
        ctx.check(self_dual_matches(fs, sd), "indicator", label, || format!("fs {fs:?} vs {sd}"), &[]);
        let res = restrict_index2(big, pair)?;
        let res_irreducible = res.is_irreducible();
        let res_sd = classify_self_duality(&res);
        let res_cd = classify_conjugate_duality(&res, pair);
        part3(&mut ctx, big, pair, sd);
        if sd == SelfDual::None {
            let hyper = big.direct_sum(&big.dual())?.with_label(format!("{label}+dual"));
            part3(&mut ctx, &hyper, pair, SelfDual::Both);
        }
        for eps in [1i8, -1] {
            if sd.admits(eps) {
                ctx.check(res_sd.admits(eps) && res_cd.admits(eps), "3", label, || {
                    format!("Res is {res_sd} / {res_cd}, expected sign {eps} for both")
                }, &[]);
            }
            if res_sd.admits(eps) && res_cd.admits(eps) {
                ctx.check(sd.admits(eps), "4", label, || {
                    format!("Res is {res_sd} / {res_cd} but the representation is {sd}")
                }, &[]);
            }
        }
        g_records.push(GRecord {
            label: label.to_string(),
            degree: big.degree(),
            self_dual: sd,
            res_irreducible,
            res_self_dual: res_sd,
            res_conj_dual: res_cd,
        });
    }

    Ok(PropMainReport {
        pair: pair.label().to_string(),
        s: pair.s(),
        h_records,
        g_records,
        violations: ctx.violations,
        hyperbolic: ctx.hyperbolic,
        checks: ctx.checks,
    })
}
