use std::sync::Arc;

use num_bigint::BigInt;

use super::chars::{AddChar, MultChar};
use super::field::LocalField;
use super::LocalError;
use crate::arith::{sqrt_prime, Cyclotomic, Rational};

/// `q^{-a/2}` for the residue field size `q` of `K`.
pub(crate) fn q_power(field: &LocalField, a: u32) -> Cyclotomic {
    let p = field.p();
    let inv_p = |k: u32| Cyclotomic::from_rational(&Rational::new(BigInt::from(1), BigInt::from(p).pow(k)));
    if field.q() == p * p {
        inv_p(a)
    } else if a.is_multiple_of(2) {
        inv_p(a / 2)
    } else {
        &inv_p(a.div_ceil(2)) * &sqrt_prime(p as u64)
    }
}

/// Root number `ε(χ, ψ)` at `s = 1/2`, normalized with the self-dual measure.
///
/// Unramified `χ`: `χ(ϖ)^{-d(ψ)}`. Ramified `χ` of conductor `a`:
/// `q^{-a/2} Σ_{u ∈ (O/P^a)^×} χ^{-1}(uγ) ψ(uγ)` with `γ = ϖ^{d(ψ)-a}`.
pub fn epsilon_character(chi: &MultChar, psi: &AddChar) -> Result<Cyclotomic, LocalError> {
    let field = chi.field();
    if **field != **psi.field() {
        return Err(LocalError::FieldMismatch(field.name(), psi.field().name()));
    }
    let d = psi.conductor();
    let a = chi.conductor();
    if a == 0 {
        return Ok(chi.at_pi().pow(-(d as i64)).to_cyclotomic());
    }
    let gamma = field.uniformizer().pow(d - a as i32);
    let chi_gamma = chi.at_pi().pow((d - a as i32) as i64).inv();
    let ring = field.ring(a);
    let top = field.level();
    let roots = ring.units().into_iter().map(|r| {
        let u = ring.to_elt(r);
        let cu = chi.unit_value(&field.reduce(&u, top)).inv();
        cu.mul(chi_gamma).mul(psi.eval(&u.mul(&gamma)))
    });
    let sum = Cyclotomic::sum_of_roots(roots);
    Ok(&sum * &q_power(field, a))
}

/// Langlands constant `λ(E/F, ψ) = ε(Ind_E 1, ψ) / ε(1_E, ψ_E)`, with
/// `Ind_E 1 = 1 ⊕ η_{E/F}`.
pub fn lambda_constant(e: &Arc<LocalField>, psi: &AddChar) -> Result<Cyclotomic, LocalError> {
    let f = psi.field();
    let eta = MultChar::eta(f, e)?;
    let num = &epsilon_character(&MultChar::trivial(f), psi)? * &epsilon_character(&eta, psi)?;
    let den = epsilon_character(&MultChar::trivial(e), &psi.lift(e)?)?;
    Ok(num.div(&den)?)
}
