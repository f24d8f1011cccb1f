use super::{BilinearForm, FormError, FormKind};
use crate::arith::{CycMatrix, Cyclotomic};
use crate::group::IndexTwoPair;
use crate::rep::{induce_index2, restrict_index2};

/// Transports a form of sign `ε` on `φ_E` to a plain form on `Ind(φ_E)`, in
/// the coordinates `x + s^{-1}.y` of the induction block model.
///
/// A twisted `B` gives `B_F(v, v') = B(x, y') + ε B(x', y)`, Gram
/// `[[0, B], [ε B^T, 0]]`; a plain `B` gives `B(x, x') + B(y, y')`.
pub fn induce_form(form: &BilinearForm, pair: &IndexTwoPair) -> Result<BilinearForm, FormError> {
    let eps = form.sign().ok_or(FormError::NoSign)?;
    let ind = induce_index2(form.rep(), pair)?;
    let b = form.gram();
    let gram = match form.kind() {
        FormKind::Twisted(_) => {
            let z = CycMatrix::zeros(b.rows(), b.cols());
            let bt = b.transpose().scale(&Cyclotomic::from_int(eps as i64));
            CycMatrix::from_blocks(&z, b, &bt, &z)
        }
        FormKind::Plain => b.direct_sum(b),
    };
    let out = BilinearForm::plain(&ind, gram)?;
    if out.sign() != Some(eps) {
        return Err(FormError::NoSign);
    }
    Ok(out)
}

/// Restricts a plain form of sign `ε` on `Φ` to `H`, both as a plain form and
/// as the twisted form `B_E(x, y) = B_F(x, s^{-1}.y)` with Gram `B_F Φ(s^{-1})`.
pub fn restrict_form(
    form: &BilinearForm,
    pair: &IndexTwoPair,
) -> Result<(BilinearForm, BilinearForm), FormError> {
    if form.is_twisted() {
        return Err(FormError::NoSign);
    }
    form.sign().ok_or(FormError::NoSign)?;
    let res = restrict_index2(form.rep(), pair)?;
    let plain = BilinearForm::plain(&res, form.gram().clone())?;
    let s_inv = pair.g().inv(pair.s());
    let twisted_gram = form.gram() * form.rep().matrix(s_inv);
    let twisted = BilinearForm::twisted(&res, twisted_gram, pair)?;
    Ok((plain, twisted))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::forms::{conj_dual_form, self_dual_form};
    use crate::group::{battery, dihedral, index_two_pairs, quaternion8};
    use crate::rep::{irreducibles, Representation};

    #[test]
    fn induced_forms_keep_sign() {
        for g in battery() {
            for pair in index_two_pairs(&g) {
                for phi in irreducibles(pair.h()).unwrap() {
                    for eps in [1i8, -1] {
                        if let Some(b) = self_dual_form(&phi, eps) {
                            assert_eq!(induce_form(&b, &pair).unwrap().sign(), Some(eps));
                        }
                        if let Some(b) = conj_dual_form(&phi, &pair, eps) {
                            assert_eq!(induce_form(&b, &pair).unwrap().sign(), Some(eps));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn restricted_forms_keep_sign() {
        for (g, eps) in [(Arc::new(quaternion8()), -1i8), (Arc::new(dihedral(4)), 1)] {
            let two = irreducibles(&g).unwrap().into_iter().find(|r| r.degree() == 2).unwrap();
            let b = self_dual_form(&two, eps).unwrap();
            for pair in index_two_pairs(&g) {
                let (p, t) = restrict_form(&b, &pair).unwrap();
                assert_eq!(p.sign(), Some(eps));
                assert_eq!(t.sign(), Some(eps));
            }
        }
        let g = Arc::new(dihedral(4));
        let pair = &index_two_pairs(&g)[0];
        let b = self_dual_form(&Representation::trivial(g.clone()), 1).unwrap();
        let (p, t) = restrict_form(&b, pair).unwrap();
        assert_eq!((p.sign(), t.sign()), (Some(1), Some(1)));
    }
}
