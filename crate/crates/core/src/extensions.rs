//! One-dimensional central extensions by scalar 2-cocycles.
//!
//! The extension of `A` by `ω` is `A ⊕ K c` with
//! `[x_1, ..., x_n]_c = [x_1, ..., x_n] + ω(x_1, ..., x_n) c` and `c` central.
//! It is trivial when `c` spans a direct summand ideal, which happens exactly
//! when `ω` is a coboundary; that is how triviality is decided here.

use crate::algebra::NLieAlgebra;
use crate::cohomology::{coboundary_space, d2_scalar, induce_cochain2_scalar, Coefficients};
use crate::error::{Error, Result};
use crate::induction::{induce, TraceMap};
use crate::linalg::{Rational, Vector};
use crate::wedge::SkewMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtension {
    pub base: NLieAlgebra,
    pub omega: SkewMap<Rational>,
    pub total: NLieAlgebra,
    /// Always the last basis index.
    pub central_index: usize,
}

/// The bracket of `A ⊕ K c` twisted by `ω`, without checking the
/// fundamental identity.
pub fn extension_algebra(a: &NLieAlgebra, omega: &SkewMap<Rational>) -> Result<NLieAlgebra> {
    if omega.arity() != a.arity() || omega.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: omega.dim(),
        });
    }
    let d = a.dim();
    let mut total = NLieAlgebra::abelian(a.arity(), d + 1)?;
    let keys: std::collections::BTreeSet<_> = a
        .table()
        .iter()
        .map(|(k, _)| k.clone())
        .chain(omega.iter().map(|(k, _)| k.clone()))
        .collect();
    for key in keys {
        let mut v: Vector = a.basis_bracket(&key);
        v.push(omega.eval_basis(&key));
        total.set_bracket(&key, v)?;
    }
    Ok(total)
}

/// The central extension by a scalar 2-cocycle; fails at the first grid
/// point where `d²ω` does not vanish.
pub fn central_extend(a: &NLieAlgebra, omega: &SkewMap<Rational>) -> Result<CentralExtension> {
    let total = extension_algebra(a, omega)?;
    if let Some(at) = d2_scalar(a, omega)?.first_violation() {
        return Err(Error::NotACocycle(at));
    }
    if !total.is_nlie() {
        return Err(Error::CrossCheck(
            "extension by a cocycle violates the fundamental identity".into(),
        ));
    }
    Ok(CentralExtension {
        base: a.clone(),
        omega: omega.clone(),
        central_index: a.dim(),
        total,
    })
}

fn require_cocycle(a: &NLieAlgebra, omega: &SkewMap<Rational>) -> Result<()> {
    match d2_scalar(a, omega)?.first_violation() {
        None => Ok(()),
        Some(at) => Err(Error::NotACocycle(at)),
    }
}

/// `ω ∈ B²`.
pub fn is_trivial_extension(a: &NLieAlgebra, omega: &SkewMap<Rational>) -> Result<bool> {
    require_cocycle(a, omega)?;
    coboundary_space(a, 2, Coefficients::Scalar)?.contains(&omega.to_coords())
}

/// Extensions by `ω₁` and `ω₂` are equivalent iff `ω₂ - ω₁ ∈ B²`.
pub fn extensions_equivalent(
    a: &NLieAlgebra,
    first: &SkewMap<Rational>,
    second: &SkewMap<Rational>,
) -> Result<bool> {
    require_cocycle(a, first)?;
    require_cocycle(a, second)?;
    coboundary_space(a, 2, Coefficients::Scalar)?.contains(&second.difference(first).to_coords())
}

/// The extension of `A_τ` by `ω_τ`, checked to coincide with inducing the
/// extension of `A` by `ω` with `τ(c) = 0`.
pub fn induce_extension(
    a: &NLieAlgebra,
    tau: &TraceMap,
    omega: &SkewMap<Rational>,
) -> Result<CentralExtension> {
    let ext = central_extend(a, omega)?;
    let induced = induce(a, tau)?;
    let omega_tau = omega.omission_sum(tau.coeffs());
    let out = central_extend(&induced, &omega_tau)?;
    let other_way = induce(&ext.total, &tau.extended_by_zero())?;
    if other_way != out.total {
        return Err(Error::CrossCheck(
            "inducing the extension differs from extending the induced algebra".into(),
        ));
    }
    Ok(out)
}

/// Like [`induce_extension`], additionally requiring the side condition of
/// the scalar transfer.
pub fn induce_extension_checked(
    a: &NLieAlgebra,
    tau: &TraceMap,
    omega: &SkewMap<Rational>,
) -> Result<CentralExtension> {
    induce_cochain2_scalar(a, tau, omega)?;
    induce_extension(a, tau, omega)
}
