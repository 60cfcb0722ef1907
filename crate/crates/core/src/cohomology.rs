//! Degree 1 and 2 cochain complexes with adjoint and scalar coefficients.
//!
//! Cochain coordinates, used for every matrix built here:
//!
//! * adjoint 1-cochain `f`: index `j * d + i` holds the `e_i` coefficient of
//!   `f(e_j)`;
//! * scalar 1-cochain: the covector itself;
//! * 2-cochains: skew `n`-linear maps, ordered as in
//!   [`SkewMap::to_coords`] (lexicographic keys, then output coordinate);
//! * 3-cochain values: `(X, Y, z)` with `X`, `Y` running over canonical
//!   `(n-1)`-tuples and `z` over the basis, lexicographically, then output
//!   coordinate.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::NLieAlgebra;
use crate::error::{Error, Result};
use crate::induction::{induce, TraceMap};
use crate::linalg::{axpy, is_zero_vec, unit_vec, zero_vec, Matrix, Rational, Subspace, Vector};
use crate::wedge::{combinations, MultiIndex, SkewMap, SkewValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Adjoint,
    Scalar,
}

pub fn cochain1_to_coords(f: &Matrix) -> Vector {
    let d = f.rows();
    let mut out = zero_vec(d * d);
    for j in 0..d {
        for i in 0..d {
            out[j * d + i] = f[(i, j)].clone();
        }
    }
    out
}

pub fn cochain1_from_coords(d: usize, coords: &[Rational]) -> Matrix {
    let mut f = Matrix::zeros(d, d);
    for j in 0..d {
        for i in 0..d {
            f[(i, j)] = coords[j * d + i].clone();
        }
    }
    f
}

fn check_square(a: &NLieAlgebra, f: &Matrix) -> Result<()> {
    if f.rows() != a.dim() || f.cols() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: if f.rows() != a.dim() { f.rows() } else { f.cols() },
        });
    }
    Ok(())
}

/// `d¹f(x_1, ..., x_n) = Σ_i [x_1, ..., f(x_i), ..., x_n] - f([x_1, ..., x_n])`.
pub fn d1_adjoint(a: &NLieAlgebra, f: &Matrix) -> Result<SkewMap<Vector>> {
    check_square(a, f)?;
    let d = a.dim();
    let n = a.arity();
    let cols: Vec<Vector> = (0..d).map(|j| f.column(j)).collect();
    let mut out = SkewMap::zero(n, d);
    for key in combinations(d, n) {
        let mut v = f.mul_vec(&a.basis_bracket(&key))?.negated();
        let mut args = key.to_vec();
        for i in 0..n {
            for (j, c) in support(&cols[key[i]]) {
                args[i] = j;
                axpy(&mut v, c, &a.basis_bracket(&args));
            }
            args[i] = key[i];
        }
        out.set(&key, v)?;
    }
    Ok(out)
}

/// Errors with the first basis tuple where `f` fails the derivation rule.
pub(crate) fn check_derivation(a: &NLieAlgebra, f: &Matrix) -> Result<()> {
    match d1_adjoint(a, f)?.iter().next() {
        None => Ok(()),
        Some((key, _)) => Err(Error::NotADerivation(key.to_vec())),
    }
}

pub fn is_derivation(a: &NLieAlgebra, f: &Matrix) -> Result<bool> {
    Ok(d1_adjoint(a, f)?.is_zero())
}

/// `d¹α(x_1, ..., x_n) = -α([x_1, ..., x_n])`.
pub fn d1_scalar(a: &NLieAlgebra, alpha: &[Rational]) -> Result<SkewMap<Rational>> {
    if alpha.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: alpha.len(),
        });
    }
    let values = a
        .table()
        .iter()
        .map(|(k, v)| (k.clone(), -crate::linalg::dot(alpha, v)));
    SkewMap::from_values(a.arity(), a.dim(), values)
}

/// Values of a 3-cochain on the grid `(X, Y, z)`; zeros are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain3<V> {
    values: BTreeMap<(MultiIndex, MultiIndex, usize), V>,
}

impl<V: SkewValue> Cochain3<V> {
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex, usize), &V)> {
        self.values.iter()
    }

    /// First nonzero grid point, rendered 1-based.
    pub fn first_violation(&self) -> Option<String> {
        self.values
            .keys()
            .next()
            .map(|(x, y, z)| format!("X={}, Y={}, z=e{}", x.one_based(), y.one_based(), z + 1))
    }
}

struct Grid {
    fos: Vec<MultiIndex>,
    dim: usize,
}

impl Grid {
    fn new(a: &NLieAlgebra) -> Self {
        Grid {
            fos: combinations(a.dim(), a.arity() - 1),
            dim: a.dim(),
        }
    }

    fn points(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, usize)> {
        self.fos.iter().flat_map(move |x| {
            self.fos
                .iter()
                .flat_map(move |y| (0..self.dim).map(move |z| (x, y, z)))
        })
    }

    fn len(&self) -> usize {
        self.fos.len() * self.fos.len() * self.dim
    }

    fn index(&self, x: usize, y: usize, z: usize) -> usize {
        (x * self.fos.len() + y) * self.dim + z
    }
}

fn support(v: &[Rational]) -> impl Iterator<Item = (usize, &Rational)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero())
}

fn with_last(prefix: &[usize], last: usize) -> Vec<usize> {
    let mut v = prefix.to_vec();
    v.push(last);
    v
}

/// `-ψ(X·Y, z) - ψ(Y, X·z) + ψ(X, Y·z)`.
fn d2_shared<V: SkewValue>(a: &NLieAlgebra, psi: &SkewMap<V>, x: &[usize], y: &[usize], z: usize) -> V {
    let mut out = V::zero_of(a.dim());
    let minus = -Rational::one();
    for i in 0..y.len() {
        let moved = a.basis_bracket(&with_last(x, y[i]));
        let mut args = with_last(y, z);
        for (j, c) in support(&moved) {
            args[i] = j;
            out.add_scaled(&-c, &psi.eval_basis(&args));
        }
    }
    for (j, c) in support(&a.basis_bracket(&with_last(x, z))) {
        out.add_scaled(&(&minus * c), &psi.eval_basis(&with_last(y, j)));
    }
    for (j, c) in support(&a.basis_bracket(&with_last(y, z))) {
        out.add_scaled(c, &psi.eval_basis(&with_last(x, j)));
    }
    out
}

fn d2_adjoint_at(a: &NLieAlgebra, psi: &SkewMap<Vector>, x: &[usize], y: &[usize], z: usize) -> Vector {
    let mut out = d2_shared(a, psi, x, y, z);
    // -(ψ(X,·)·Y)·z
    for i in 0..y.len() {
        let w = psi.eval_basis(&with_last(x, y[i]));
        let mut args = with_last(y, z);
        for (j, c) in support(&w) {
            args[i] = j;
            axpy(&mut out, &-c, &a.basis_bracket(&args));
        }
    }
    // -Y·ψ(X,z) + X·ψ(Y,z)
    for (j, c) in support(&psi.eval_basis(&with_last(x, z))) {
        axpy(&mut out, &-c, &a.basis_bracket(&with_last(y, j)));
    }
    for (j, c) in support(&psi.eval_basis(&with_last(y, z))) {
        axpy(&mut out, c, &a.basis_bracket(&with_last(x, j)));
    }
    out
}

fn check_cochain2<V: SkewValue>(a: &NLieAlgebra, psi: &SkewMap<V>) -> Result<()> {
    if psi.arity() != a.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            found: psi.arity(),
        });
    }
    if psi.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: psi.dim(),
        });
    }
    Ok(())
}

fn collect_grid<V: SkewValue>(a: &NLieAlgebra, f: impl Fn(&[usize], &[usize], usize) -> V) -> Cochain3<V> {
    let grid = Grid::new(a);
    let values = grid
        .points()
        .filter_map(|(x, y, z)| {
            let v = f(x, y, z);
            (!v.is_zero_value()).then(|| ((x.clone(), y.clone(), z), v))
        })
        .collect();
    Cochain3 { values }
}

/// The adjoint coboundary of a 2-cochain,
/// `d²ψ(X,Y,z) = -ψ(X·Y,z) - ψ(Y,X·z) + ψ(X,Y·z) - (ψ(X,·)·Y)·z - Y·ψ(X,z) + X·ψ(Y,z)`.
pub fn d2_adjoint(a: &NLieAlgebra, psi: &SkewMap<Vector>) -> Result<Cochain3<Vector>> {
    check_cochain2(a, psi)?;
    Ok(collect_grid(a, |x, y, z| d2_adjoint_at(a, psi, x, y, z)))
}

/// `d²ω(X,Y,z) = -ω(X·Y,z) - ω(Y,X·z) + ω(X,Y·z)`.
pub fn d2_scalar(a: &NLieAlgebra, omega: &SkewMap<Rational>) -> Result<Cochain3<Rational>> {
    check_cochain2(a, omega)?;
    Ok(collect_grid(a, |x, y, z| d2_shared(a, omega, x, y, z)))
}

fn d2_adjoint_dense(a: &NLieAlgebra, grid: &Grid, psi: &SkewMap<Vector>) -> Vector {
    let d = a.dim();
    let mut out = zero_vec(grid.len() * d);
    for (xi, x) in grid.fos.iter().enumerate() {
        for (yi, y) in grid.fos.iter().enumerate() {
            for z in 0..d {
                let v = d2_adjoint_at(a, psi, x, y, z);
                let p = grid.index(xi, yi, z) * d;
                out[p..p + d].clone_from_slice(&v);
            }
        }
    }
    out
}

fn d2_scalar_dense(a: &NLieAlgebra, grid: &Grid, omega: &SkewMap<Rational>) -> Vector {
    let mut out = zero_vec(grid.len());
    for (xi, x) in grid.fos.iter().enumerate() {
        for (yi, y) in grid.fos.iter().enumerate() {
            for z in 0..a.dim() {
                out[grid.index(xi, yi, z)] = d2_shared(a, omega, x, y, z);
            }
        }
    }
    out
}

fn check_degree(degree: usize) -> Result<()> {
    match degree {
        1 | 2 => Ok(()),
        _ => Err(Error::UnsupportedDegree(degree)),
    }
}

/// Number of coordinates of a `degree`-cochain.
pub fn cochain_len(a: &NLieAlgebra, degree: usize, coeff: Coefficients) -> Result<usize> {
    check_degree(degree)?;
    let d = a.dim();
    let base = if degree == 1 {
        d
    } else {
        combinations(d, a.arity()).len()
    };
    Ok(match coeff {
        Coefficients::Adjoint => base * d,
        Coefficients::Scalar => base,
    })
}

/// The matrix of `d^degree` in the documented coordinates, built column by
/// column from unit cochains.
pub fn coboundary_matrix(a: &NLieAlgebra, degree: usize, coeff: Coefficients) -> Result<Matrix> {
    let len = cochain_len(a, degree, coeff)?;
    let d = a.dim();
    let n = a.arity();
    let columns: Vec<Vector> = (0..len)
        .into_par_iter()
        .map(|u| -> Result<Vector> {
            let unit = unit_vec(len, u);
            Ok(match (degree, coeff) {
                (1, Coefficients::Adjoint) => d1_adjoint(a, &cochain1_from_coords(d, &unit))?.to_coords(),
                (1, Coefficients::Scalar) => d1_scalar(a, &unit)?.to_coords(),
                (2, Coefficients::Adjoint) => {
                    let psi = SkewMap::<Vector>::from_coords(n, d, &unit)?;
                    d2_adjoint_dense(a, &Grid::new(a), &psi)
                }
                _ => {
                    let omega = SkewMap::<Rational>::from_coords(n, d, &unit)?;
                    d2_scalar_dense(a, &Grid::new(a), &omega)
                }
            })
        })
        .collect::<Result<_>>()?;
    let rows = columns.first().map_or(0, Vec::len);
    Matrix::from_columns(rows, &columns)
}

/// Kernel of a matrix given by its columns, ignoring identically zero rows.
fn kernel(m: &Matrix) -> Subspace {
    let rows: Vec<Vector> = (0..m.rows())
        .map(|i| m.row(i))
        .filter(|r| !is_zero_vec(r))
        .map(<[Rational]>::to_vec)
        .collect();
    if rows.is_empty() {
        return Subspace::full(m.cols());
    }
    Matrix::from_rows(m.cols(), &rows)
        .expect("row lengths agree")
        .nullspace()
}

/// `Z^p`: kernel of `d^p`.
pub fn cocycle_space(a: &NLieAlgebra, degree: usize, coeff: Coefficients) -> Result<Subspace> {
    Ok(kernel(&coboundary_matrix(a, degree, coeff)?))
}

/// `B^p`: image of `d^{p-1}`. In degree 1 this is the span of the inner
/// derivations `ad_X` (adjoint) or zero (scalar).
pub fn coboundary_space(a: &NLieAlgebra, degree: usize, coeff: Coefficients) -> Result<Subspace> {
    check_degree(degree)?;
    let len = cochain_len(a, degree, coeff)?;
    match (degree, coeff) {
        (1, Coefficients::Adjoint) => Ok(inner_derivation_space(a)),
        (1, Coefficients::Scalar) => Ok(Subspace::zero(len)),
        _ => {
            let m = coboundary_matrix(a, 1, coeff)?;
            let cols: Vec<Vector> = (0..m.cols()).map(|j| m.column(j)).collect();
            Subspace::span(len, &cols)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyDims {
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

pub fn cohomology_dims(a: &NLieAlgebra, degree: usize, coeff: Coefficients) -> Result<CohomologyDims> {
    let z = cocycle_space(a, degree, coeff)?;
    let b = coboundary_space(a, degree, coeff)?;
    if !b.is_subspace_of(&z)? {
        return Err(Error::CrossCheck(format!(
            "B^{degree} is not contained in Z^{degree}"
        )));
    }
    Ok(CohomologyDims {
        cocycles: z.dim(),
        coboundaries: b.dim(),
        cohomology: z.dim() - b.dim(),
    })
}

pub fn cohomology_dim(a: &NLieAlgebra, degree: usize, coeff: Coefficients) -> Result<usize> {
    Ok(cohomology_dims(a, degree, coeff)?.cohomology)
}

/// `Z¹(A, A)`, in adjoint 1-cochain coordinates.
pub fn derivation_space(a: &NLieAlgebra) -> Subspace {
    cocycle_space(a, 1, Coefficients::Adjoint).expect("degree 1 is supported")
}

/// Span of `ad_X` over basis fundamental objects.
pub fn inner_derivation_space(a: &NLieAlgebra) -> Subspace {
    let d = a.dim();
    let gens: Vec<Vector> = combinations(d, a.arity() - 1)
        .iter()
        .map(|x| cochain1_to_coords(&a.ad_basis(x)))
        .collect();
    Subspace::span(d * d, &gens).expect("coordinates of length d²")
}

pub fn h1_adjoint_dim(a: &NLieAlgebra) -> usize {
    cohomology_dim(a, 1, Coefficients::Adjoint).expect("degree 1 is supported")
}

/// Scalar 1-cocycles; these coincide with the traces.
pub fn scalar_1cocycles(a: &NLieAlgebra) -> Subspace {
    cocycle_space(a, 1, Coefficients::Scalar).expect("degree 1 is supported")
}

/// Whether a derivation `f` of `A` is also a derivation of `A_τ`, decided
/// by the vanishing of the bracket induced by `τ∘f` and cross-checked
/// against the derivation rule on `A_τ`.
pub fn is_derivation_of_induced(a: &NLieAlgebra, tau: &TraceMap, f: &Matrix) -> Result<bool> {
    let composed = crate::induction::compose_trace_derivation(a, tau, f)?;
    let criterion = induce(a, &composed)?.is_abelian();
    let direct = is_derivation(&induce(a, tau)?, f)?;
    if criterion != direct {
        return Err(Error::CrossCheck(format!(
            "τ∘f criterion gives {criterion}, derivation rule on the induced algebra gives {direct}"
        )));
    }
    Ok(criterion)
}

/// Evaluates the sum
/// `Σ_i Σ_{k≠i} (-1)^(k+n-1) τ(y_i) τ(y_k) F(y_1, ..., ŷ_k, ..., W@i, ..., y_n, z)`
/// on basis tuples `y` and `z`, where `W@i` means `y_i` replaced by `W`,
/// and reports the first point where it does not vanish.
fn transfer_sum<V: SkewValue>(
    a: &NLieAlgebra,
    tau: &TraceMap,
    ws: &[Vector],
    eval: impl Fn(&[usize]) -> V,
) -> Option<String> {
    let d = a.dim();
    let n = a.arity();
    let t = tau.coeffs();
    let support_tau: Vec<usize> = (0..d).filter(|&i| !t[i].is_zero()).collect();
    if support_tau.is_empty() || ws.is_empty() {
        return None;
    }
    // y-tuples with a zero τ-factor contribute nothing; only tuples with
    // at least two entries in the support of τ matter.
    for y in (0..n).map(|_| 0..d).multi_cartesian_product() {
        for (wi, w) in ws.iter().enumerate() {
            for z in 0..d {
                let mut acc = V::zero_of(d);
                for i in 0..n {
                    for k in (0..n).filter(|&k| k != i) {
                        let coef = &t[y[i]] * &t[y[k]];
                        if coef.is_zero() {
                            continue;
                        }
                        // 1-based k+1: sign (-1)^(k+n)
                        let coef = if (k + n).is_multiple_of(2) { coef } else { -coef };
                        for (j, c) in support(w) {
                            let mut args = y.clone();
                            args[i] = j;
                            args.remove(k);
                            args.push(z);
                            acc.add_scaled(&(&coef * c), &eval(&args));
                        }
                    }
                }
                if !acc.is_zero_value() {
                    let ys: Vec<String> = y.iter().map(|i| format!("e{}", i + 1)).collect();
                    return Some(format!("y=({}), W#{}, z=e{}", ys.join(","), wi + 1, z + 1));
                }
            }
        }
    }
    None
}

/// Which of the three hypotheses of the adjoint transfer hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointTransferConditions {
    /// The `φ(..., [x_1, ..., x_n], ..., z)` sum vanishes.
    pub cochain_term: Option<String>,
    /// The `[..., φ(x_1, ..., x_n), ..., z]` sum vanishes.
    pub bracket_term: Option<String>,
    /// `τ∘φ = 0`.
    pub trace_term: Option<String>,
}

impl AdjointTransferConditions {
    pub fn all_hold(&self) -> bool {
        self.cochain_term.is_none() && self.bracket_term.is_none() && self.trace_term.is_none()
    }
}

fn check_trace_of(a: &NLieAlgebra, tau: &TraceMap) -> Result<()> {
    if !crate::induction::is_trace(a, tau)? {
        return Err(Error::Precondition("τ is not a trace".into()));
    }
    Ok(())
}

/// Evaluates the three hypotheses under which `φ_τ` is an adjoint
/// 2-cocycle of `A_τ`; each is required to vanish identically.
pub fn check_z2ad_conditions(
    a: &NLieAlgebra,
    tau: &TraceMap,
    phi: &SkewMap<Vector>,
) -> Result<AdjointTransferConditions> {
    check_cochain2(a, phi)?;
    check_trace_of(a, tau)?;
    let brackets = a.bracket_images();
    let cochain_term = transfer_sum(a, tau, &brackets, |args| phi.eval_basis(args));
    let values: Vec<Vector> = phi.iter().map(|(_, v)| v.clone()).collect();
    let bracket_term = transfer_sum(a, tau, &values, |args| a.basis_bracket(args));
    let trace_term = phi
        .iter()
        .find(|(_, v)| !tau.apply(v).is_zero())
        .map(|(k, _)| format!("τ(φ{}) ≠ 0", k.one_based()));
    Ok(AdjointTransferConditions {
        cochain_term,
        bracket_term,
        trace_term,
    })
}

fn require_cocycle(c: Cochain3<impl SkewValue>, what: &str) -> Result<()> {
    match c.first_violation() {
        None => Ok(()),
        Some(at) => Err(Error::NotACocycle(format!("{what}: {at}"))),
    }
}

/// `φ_τ(x_1, ..., x_n, z)`, the omission sum of `φ`, after checking the
/// hypotheses; the result is verified to be a 2-cocycle of `A_τ`.
pub fn induce_cochain2_adjoint(
    a: &NLieAlgebra,
    tau: &TraceMap,
    phi: &SkewMap<Vector>,
) -> Result<SkewMap<Vector>> {
    require_cocycle(d2_adjoint(a, phi)?, "φ")?;
    let conds = check_z2ad_conditions(a, tau, phi)?;
    let named = [
        ("condition 1", &conds.cochain_term),
        ("condition 2", &conds.bracket_term),
        ("condition 3", &conds.trace_term),
    ];
    if let Some((name, Some(at))) = named.iter().find(|(_, c)| c.is_some()) {
        return Err(Error::Precondition(format!("{name} fails at {at}")));
    }
    let induced = induce(a, tau)?;
    let out = phi.omission_sum(tau.coeffs());
    if let Some(at) = d2_adjoint(&induced, &out)?.first_violation() {
        return Err(Error::CrossCheck(format!("φ_τ is not a cocycle of A_τ at {at}")));
    }
    Ok(out)
}

/// The single hypothesis of the scalar transfer; `None` when it holds.
pub fn scalar_side_condition(
    a: &NLieAlgebra,
    tau: &TraceMap,
    alpha: &SkewMap<Rational>,
) -> Result<Option<String>> {
    check_cochain2(a, alpha)?;
    check_trace_of(a, tau)?;
    Ok(transfer_sum(a, tau, &a.bracket_images(), |args| {
        alpha.eval_basis(args)
    }))
}

/// `α_τ`, after checking the side condition; the result is verified to be
/// a scalar 2-cocycle of `A_τ`.
pub fn induce_cochain2_scalar(
    a: &NLieAlgebra,
    tau: &TraceMap,
    alpha: &SkewMap<Rational>,
) -> Result<SkewMap<Rational>> {
    require_cocycle(d2_scalar(a, alpha)?, "α")?;
    if let Some(at) = scalar_side_condition(a, tau, alpha)? {
        return Err(Error::Precondition(format!("side condition fails at {at}")));
    }
    let out = alpha.omission_sum(tau.coeffs());
    let induced = induce(a, tau)?;
    if let Some(at) = d2_scalar(&induced, &out)?.first_violation() {
        return Err(Error::CrossCheck(format!("α_τ is not a cocycle of A_τ at {at}")));
    }
    Ok(out)
}

/// `d¹_τ α = Σ_i (-1)^(i-1) τ(x_i) d¹α(x_1, ..., x̂_i, ..., x_{n+1})`.
pub fn d1_tau_compatibility(a: &NLieAlgebra, tau: &TraceMap, alpha: &[Rational]) -> Result<bool> {
    let induced = induce(a, tau)?;
    let lhs = d1_scalar(&induced, alpha)?;
    let rhs = d1_scalar(a, alpha)?.omission_sum(tau.coeffs());
    Ok(lhs == rhs)
}

/// Whether two cocycles, in cochain coordinates, differ by a coboundary.
pub fn same_cohomology_class(
    a: &NLieAlgebra,
    first: &[Rational],
    second: &[Rational],
    degree: usize,
    coeff: Coefficients,
) -> Result<bool> {
    let z = cocycle_space(a, degree, coeff)?;
    for (name, c) in [("first", first), ("second", second)] {
        if !z.contains(c)? {
            return Err(Error::NotACocycle(format!("{name} argument")));
        }
    }
    coboundary_space(a, degree, coeff)?.contains(&crate::linalg::sub_vec(second, first))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gl2, lie4};
    use crate::linalg::{int_vec, rat};

    fn tau(d: usize, idx: &[usize]) -> TraceMap {
        let mut v = zero_vec(d);
        for &i in idx {
            v[i - 1] = rat(1);
        }
        TraceMap::new(v)
    }

    fn form(d: usize, n: usize, entries: &[(&[usize], i64)]) -> SkewMap<Rational> {
        let mut w = SkewMap::zero(n, d);
        for (args, c) in entries {
            let idx: Vec<usize> = args.iter().map(|i| i - 1).collect();
            w.set(&idx, rat(*c)).unwrap();
        }
        w
    }

    /// `[e2,e4]=e3, [e3,e4]=e3`.
    fn example() -> NLieAlgebra {
        lie4("M4")
    }

    /// Derivation rule evaluated on arbitrary arguments.
    fn derivation_defect(a: &NLieAlgebra, f: &Matrix, args: &[Vector]) -> Vector {
        let mut out = f.mul_vec(&a.bracket_owned(args).unwrap()).unwrap().negated();
        for i in 0..args.len() {
            let mut moved = args.to_vec();
            moved[i] = f.mul_vec(&args[i]).unwrap();
            axpy(&mut out, &rat(1), &a.bracket_owned(&moved).unwrap());
        }
        out
    }

    #[test]
    fn d1_adjoint_examples() {
        let ab = NLieAlgebra::abelian(2, 3).unwrap();
        assert!(d1_adjoint(&ab, &Matrix::identity(3)).unwrap().is_zero());
        // The gl2 family: f(e1) = -2a1 e2 - 2a2 e3, f(e2) = a2 e1 + a3 e2,
        // f(e3) = a1 e1 - a3 e3, f(e4) = a4 e4.
        let (a1, a2, a3, a4) = (1, -2, 3, 5);
        let f = Matrix::from_i64(&[
            &[0, a2, a1, 0],
            &[-2 * a1, a3, 0, 0],
            &[-2 * a2, 0, -a3, 0],
            &[0, 0, 0, a4],
        ]);
        assert!(is_derivation(&gl2(), &f).unwrap());
        let g = Matrix::from_i64(&[&[1, 2, 0, 0], &[0, 1, 0, 1], &[3, 0, 0, 0], &[0, 0, 1, 1]]);
        let d = d1_adjoint(&gl2(), &g).unwrap();
        for key in combinations(4, 2) {
            let args: Vec<Vector> = key.iter().map(|&i| unit_vec(4, i)).collect();
            assert_eq!(d.eval_basis(&key), derivation_defect(&gl2(), &g, &args));
        }
        assert!(!d.is_zero());
    }

    #[test]
    fn gl2_cohomology() {
        let g = gl2();
        assert_eq!(derivation_space(&g).dim(), 4);
        assert_eq!(h1_adjoint_dim(&g), 1);
        let gt = induce(&g, &tau(4, &[4])).unwrap();
        assert_eq!(derivation_space(&gt).dim(), 7);
        assert_eq!(h1_adjoint_dim(&gt), 1);
        // derivations of the induced algebra; the e4 coefficient of g(e4) is -a1
        let (a1, a2, a3, a4, a5, a6, a7) = (2, -1, 3, 1, 4, -2, 5);
        let g7 = Matrix::from_i64(&[
            &[a1, a3, a2, a5],
            &[-2 * a2, a4, 0, a6],
            &[-2 * a3, 0, 2 * a1 - a4, a7],
            &[0, 0, 0, -a1],
        ]);
        assert!(is_derivation(&gt, &g7).unwrap());
        let ab = NLieAlgebra::abelian(2, 3).unwrap();
        assert_eq!(derivation_space(&ab).dim(), 9);
        assert_eq!(h1_adjoint_dim(&ab), 9);
    }

    #[test]
    fn d2_examples() {
        let a = example();
        assert!(d2_adjoint(&a, &SkewMap::zero(2, 4)).unwrap().is_zero());
        let f = Matrix::from_i64(&[&[1, 0, 2, 0], &[0, 1, 0, -1], &[1, 1, 0, 0], &[0, 2, 0, 1]]);
        assert!(d2_adjoint(&a, &d1_adjoint(&a, &f).unwrap()).unwrap().is_zero());
        // λ = ω13 is not a cocycle here
        let w = form(4, 2, &[(&[1, 3], 1)]);
        assert!(!d2_scalar(&a, &w).unwrap().is_zero());
        let psi =
            SkewMap::<Vector>::from_values(2, 4, [(MultiIndex::new(vec![0, 2]).unwrap(), unit_vec(4, 0))])
                .unwrap();
        assert!(!d2_adjoint(&a, &psi).unwrap().is_zero());
    }

    #[test]
    fn scalar_d1_on_example() {
        let a = example();
        let alpha = int_vec(&[2, 3, 5, 7]);
        let d = d1_scalar(&a, &alpha).unwrap();
        // equals α3 up to the global sign convention
        assert_eq!(d.eval_basis(&[1, 3]), rat(-5));
        assert_eq!(d.eval_basis(&[2, 3]), rat(-5));
        assert_eq!(d.len(), 2);
        assert!(d1_scalar(&NLieAlgebra::abelian(2, 4).unwrap(), &alpha)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn example_scalar_cocycles() {
        let a = example();
        let z = cocycle_space(&a, 2, Coefficients::Scalar).unwrap();
        assert_eq!(z.dim(), 4);
        // ω13 and ω23 are forced to vanish: positions 1 and 3 in (12,13,14,23,24,34)
        let annihilated = Subspace::span(6, &[unit_vec(6, 1), unit_vec(6, 3)]).unwrap();
        assert!(z.intersect(&annihilated).unwrap().is_zero());
        assert_eq!(z.dim() + annihilated.dim(), 6);
        let b = coboundary_space(&a, 2, Coefficients::Scalar).unwrap();
        assert_eq!(b, Subspace::span(6, &[int_vec(&[0, 0, 0, 0, 1, 1])]).unwrap());
        let ab = NLieAlgebra::abelian(3, 4).unwrap();
        assert!(coboundary_space(&ab, 2, Coefficients::Scalar).unwrap().is_zero());
    }

    #[test]
    fn m5_dims() {
        let m5 = lie4("M5");
        assert_eq!(h1_adjoint_dim(&m5), 8);
        assert_eq!(h1_adjoint_dim(&induce(&m5, &tau(4, &[1])).unwrap()), 9);
    }

    #[test]
    fn unsupported_degree() {
        assert_eq!(
            cocycle_space(&gl2(), 3, Coefficients::Adjoint),
            Err(Error::UnsupportedDegree(3))
        );
        assert_eq!(
            cohomology_dim(&gl2(), 0, Coefficients::Scalar),
            Err(Error::UnsupportedDegree(0))
        );
    }

    #[test]
    fn scalar_1cocycles_are_traces() {
        for a in [gl2(), lie4("M8"), NLieAlgebra::abelian(2, 3).unwrap()] {
            assert_eq!(scalar_1cocycles(&a), crate::induction::trace_space(&a));
        }
    }

    #[test]
    fn derivations_of_induced() {
        let g = gl2();
        let t = tau(4, &[4]);
        assert!(is_derivation_of_induced(&g, &t, &Matrix::zeros(4, 4)).unwrap());
        let mut f1 = Matrix::zeros(4, 4);
        f1[(3, 3)] = rat(1);
        assert!(!is_derivation_of_induced(&g, &t, &f1).unwrap());
        // g1 = diag(1, 0, 2, -1) is a derivation of the induced algebra only
        let g1 = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, -1]]);
        assert!(is_derivation(&induce(&g, &t).unwrap(), &g1).unwrap());
        assert!(matches!(
            is_derivation_of_induced(&g, &t, &g1),
            Err(Error::NotADerivation(_))
        ));
        // inner derivations of gl2 kill e4, so τ∘ad_X = 0
        let ad = g.ad_basis(&[1]);
        assert!(is_derivation_of_induced(&g, &t, &ad).unwrap());
    }

    #[test]
    fn induced_scalar_cochains() {
        let a = example();
        let t = tau(4, &[1]);
        let zero = SkewMap::zero(2, 4);
        assert!(induce_cochain2_scalar(&a, &t, &zero).unwrap().is_zero());
        let mu = form(4, 2, &[(&[2, 4], 1), (&[3, 4], -1)]);
        let mu_t = induce_cochain2_scalar(&a, &t, &mu).unwrap();
        assert_eq!(mu_t, form(4, 3, &[(&[1, 2, 4], 1), (&[1, 3, 4], -1)]));
        let lambda = form(4, 2, &[(&[1, 2], 1)]);
        assert!(induce_cochain2_scalar(&a, &t, &lambda).unwrap().is_zero());
        let bad = form(4, 2, &[(&[1, 3], 1)]);
        assert!(matches!(
            induce_cochain2_scalar(&a, &t, &bad),
            Err(Error::NotACocycle(_))
        ));
    }

    #[test]
    fn induced_adjoint_cochains() {
        let a = lie4("M5");
        let t = tau(4, &[1]);
        assert!(induce_cochain2_adjoint(&a, &t, &SkewMap::zero(2, 4))
            .unwrap()
            .is_zero());
        let induced = induce(&a, &t).unwrap();
        // Every Z² basis element satisfying the hypotheses transfers.
        let z = cocycle_space(&a, 2, Coefficients::Adjoint).unwrap();
        let mut transferred = 0;
        for b in z.basis() {
            let phi = SkewMap::<Vector>::from_coords(2, 4, b).unwrap();
            if check_z2ad_conditions(&a, &t, &phi).unwrap().all_hold() {
                let out = induce_cochain2_adjoint(&a, &t, &phi).unwrap();
                assert!(d2_adjoint(&induced, &out).unwrap().is_zero());
                transferred += 1;
            }
        }
        assert!(transferred > 0);
    }

    #[test]
    fn d1_tau_is_compatible() {
        let a = example();
        assert!(d1_tau_compatibility(&a, &tau(4, &[1]), &zero_vec(4)).unwrap());
        assert!(d1_tau_compatibility(&a, &tau(4, &[1]), &int_vec(&[1, -2, 3, 1])).unwrap());
        assert!(d1_tau_compatibility(&gl2(), &tau(4, &[4]), &int_vec(&[2, 0, -1, 4])).unwrap());
    }

    #[test]
    fn cohomology_classes() {
        let a = example();
        let lambda = form(4, 2, &[(&[1, 2], 1)]).to_coords();
        let mu = form(4, 2, &[(&[2, 4], 1), (&[3, 4], -1)]).to_coords();
        let shift = d1_scalar(&a, &int_vec(&[0, 4, 1, -3])).unwrap().to_coords();
        let s = Coefficients::Scalar;
        assert!(same_cohomology_class(&a, &lambda, &lambda, 2, s).unwrap());
        let moved = crate::linalg::add_vec(&lambda, &shift);
        assert!(same_cohomology_class(&a, &lambda, &moved, 2, s).unwrap());
        assert!(!same_cohomology_class(&a, &lambda, &mu, 2, s).unwrap());
        let bad = form(4, 2, &[(&[1, 3], 1)]).to_coords();
        assert!(same_cohomology_class(&a, &lambda, &bad, 2, s).is_err());
    }

    mod props {
        use super::*;
        use crate::catalog;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn complex_property(coeffs in proptest::collection::vec(-2i64..=2, 16), which in 0usize..3) {
                let a = match which { 0 => gl2(), 1 => lie4("M8"), _ => catalog::filippov_simple(3) };
                let f = cochain1_from_coords(4, &int_vec(&coeffs));
                prop_assert!(d2_adjoint(&a, &d1_adjoint(&a, &f).unwrap()).unwrap().is_zero());
                let alpha = int_vec(&coeffs[..4]);
                prop_assert!(d2_scalar(&a, &d1_scalar(&a, &alpha).unwrap()).unwrap().is_zero());
            }

            #[test]
            fn derivation_criterion_matches_definition(coeffs in proptest::collection::vec(-1i64..=1, 16)) {
                let a = lie4("M4");
                let f = cochain1_from_coords(4, &int_vec(&coeffs));
                let zero_defect = combinations(4, 2).iter().all(|k| {
                    let args: Vec<Vector> = k.iter().map(|&i| unit_vec(4, i)).collect();
                    is_zero_vec(&derivation_defect(&a, &f, &args))
                });
                prop_assert_eq!(is_derivation(&a, &f).unwrap(), zero_defect);
            }
        }
    }
}
