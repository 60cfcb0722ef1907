//! Traces and the induced `(n+1)`-ary bracket.

use num_traits::Zero;

use crate::algebra::NLieAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{dot, is_zero_vec, zero_vec, Matrix, Rational, Subspace, Vector};

/// A linear form `τ(x) = Σ coeffs_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceMap {
    coeffs: Vector,
}

impl TraceMap {
    /// An unchecked covector. Use [`TraceMap::for_algebra`] to validate.
    pub fn new(coeffs: Vector) -> Self {
        TraceMap { coeffs }
    }

    /// The covector, validated as a trace of `a`.
    pub fn for_algebra(a: &NLieAlgebra, coeffs: Vector) -> Result<Self> {
        let t = TraceMap { coeffs };
        check_trace(a, &t)?;
        Ok(t)
    }

    pub fn zero(dim: usize) -> Self {
        TraceMap {
            coeffs: zero_vec(dim),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn apply(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }

    /// `τ` on `A ⊕ K c`, with `τ(c) = 0`.
    pub fn extended_by_zero(&self) -> TraceMap {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(Rational::zero());
        TraceMap { coeffs }
    }
}

/// All linear forms vanishing on the image of the bracket.
pub fn trace_space(a: &NLieAlgebra) -> Subspace {
    let images = a.bracket_images();
    if images.is_empty() {
        return Subspace::full(a.dim());
    }
    Matrix::from_rows(a.dim(), &images)
        .expect("bracket values have length dim")
        .nullspace()
}

fn check_trace(a: &NLieAlgebra, tau: &TraceMap) -> Result<()> {
    if tau.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: tau.dim(),
        });
    }
    for (key, v) in a.table().iter() {
        if !tau.apply(v).is_zero() {
            return Err(Error::NotATrace(key.to_vec()));
        }
    }
    Ok(())
}

pub fn is_trace(a: &NLieAlgebra, tau: &TraceMap) -> Result<bool> {
    match check_trace(a, tau) {
        Ok(()) => Ok(true),
        Err(Error::NotATrace(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The induced bracket
/// `[x_1, ..., x_{n+1}]_τ = Σ_k (-1)^(k-1) τ(x_k) [x_1, ..., x̂_k, ..., x_{n+1}]`.
pub fn induce(a: &NLieAlgebra, tau: &TraceMap) -> Result<NLieAlgebra> {
    check_trace(a, tau)?;
    NLieAlgebra::from_table(a.table().omission_sum(tau.coeffs()))
}

/// `τ ∘ f` for a derivation `f` (column `j` of `f` is `f(e_j)`).
pub fn compose_trace_derivation(a: &NLieAlgebra, tau: &TraceMap, f: &Matrix) -> Result<TraceMap> {
    check_trace(a, tau)?;
    crate::cohomology::check_derivation(a, f)?;
    let composed = f.transpose().mul_vec(tau.coeffs())?;
    let t = TraceMap::new(composed);
    if !is_trace(a, &t)? {
        return Err(Error::CrossCheck("τ∘f is not a trace".into()));
    }
    Ok(t)
}

/// An element `u` with `[u, x_1, ..., x_n]_τ = [x_1, ..., x_n]` for all `x`,
/// if one exists. Free coordinates of the solution are set to zero.
pub fn find_unit(a: &NLieAlgebra, tau: &TraceMap) -> Result<Option<Vector>> {
    let induced = induce(a, tau)?;
    let d = a.dim();
    let n = a.arity();
    // Unknown u: [u, e_K]_τ = Σ_j u_j [e_j, e_K]_τ; one block of d rows per key K.
    let keys = crate::wedge::combinations(d, n);
    let mut rows = Vec::with_capacity(keys.len() * d);
    let mut rhs = Vec::with_capacity(keys.len() * d);
    for key in &keys {
        let cols: Vec<Vector> = (0..d)
            .map(|j| {
                let mut args = vec![j];
                args.extend_from_slice(key);
                induced.basis_bracket(&args)
            })
            .collect();
        let target = a.basis_bracket(key);
        for r in 0..d {
            rows.push(cols.iter().map(|c| c[r].clone()).collect::<Vector>());
            rhs.push(target[r].clone());
        }
    }
    if rows.is_empty() {
        return Ok(Some(zero_vec(d)));
    }
    Matrix::from_rows(d, &rows)?.solve(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gl2, lie4};
    use crate::linalg::{int_vec, rat, scaled, unit_vec};

    fn x(d: usize, idx: &[usize]) -> TraceMap {
        let mut v = zero_vec(d);
        for &i in idx {
            v[i - 1] = rat(1);
        }
        TraceMap::new(v)
    }

    #[test]
    fn trace_space_examples() {
        assert!(trace_space(&NLieAlgebra::abelian(2, 3).unwrap()).is_full());
        assert!(trace_space(&gl2()).contains(x(4, &[4]).coeffs()).unwrap());
        let m5 = lie4("M5");
        let ts = trace_space(&m5);
        assert_eq!(ts.dim(), 3);
        assert_eq!(
            ts,
            Subspace::span(4, &[unit_vec(4, 0), unit_vec(4, 1), unit_vec(4, 3)]).unwrap()
        );
        assert!(is_trace(&m5, &TraceMap::zero(4)).unwrap());
        assert!(!is_trace(&m5, &x(4, &[3])).unwrap());
        assert!(is_trace(&m5, &TraceMap::zero(3)).is_err());
    }

    #[test]
    fn induce_gl2() {
        let g = induce(&gl2(), &x(4, &[4])).unwrap();
        let expect = NLieAlgebra::from_brackets(
            3,
            4,
            [
                (vec![0, 1, 3], int_vec(&[0, 2, 0, 0])),
                (vec![0, 2, 3], int_vec(&[0, 0, -2, 0])),
                (vec![1, 2, 3], int_vec(&[1, 0, 0, 0])),
            ],
        )
        .unwrap();
        assert_eq!(g, expect);
        assert!(g.is_nlie());
        assert!(is_trace(&g, &x(4, &[4])).unwrap());
    }

    #[test]
    fn induce_zero_and_m5() {
        assert!(induce(&gl2(), &TraceMap::zero(4)).unwrap().is_abelian());
        let m5 = induce(&lie4("M5"), &x(4, &[1])).unwrap();
        let expect = NLieAlgebra::from_brackets(3, 4, [(vec![0, 1, 3], unit_vec(4, 2))]).unwrap();
        assert_eq!(m5, expect);
        assert_eq!(
            induce(&lie4("M5"), &x(4, &[3])),
            Err(Error::NotATrace(vec![1, 3]))
        );
    }

    #[test]
    fn compose_with_derivations() {
        let g = gl2();
        let tau = x(4, &[4]);
        let zero = Matrix::zeros(4, 4);
        assert!(compose_trace_derivation(&g, &tau, &zero).unwrap().is_zero());
        let mut f1 = Matrix::zeros(4, 4);
        f1[(3, 3)] = rat(1);
        assert_eq!(compose_trace_derivation(&g, &tau, &f1).unwrap(), tau);
        let mut bad = Matrix::zeros(4, 4);
        bad[(0, 1)] = rat(1);
        assert!(matches!(
            compose_trace_derivation(&g, &tau, &bad),
            Err(Error::NotADerivation(_))
        ));
        let m5 = lie4("M5");
        let ders = crate::cohomology::derivation_space(&m5);
        let t = x(4, &[1, 2, 4]);
        for b in ders.basis() {
            let f = crate::cohomology::cochain1_from_coords(4, b);
            let c = compose_trace_derivation(&m5, &t, &f).unwrap();
            assert!(is_trace(&m5, &c).unwrap());
        }
    }

    #[test]
    fn find_unit_cases() {
        let ab = NLieAlgebra::abelian(2, 3).unwrap();
        assert_eq!(find_unit(&ab, &TraceMap::zero(3)).unwrap(), Some(zero_vec(3)));
        let g = gl2();
        let tau = x(4, &[4]);
        let u = find_unit(&g, &tau).unwrap().expect("gl2 has a unit for x4");
        assert_eq!(tau.apply(&u), rat(1));
        let induced = induce(&g, &tau).unwrap();
        for key in crate::wedge::combinations(4, 2) {
            let args = [u.clone(), unit_vec(4, key[0]), unit_vec(4, key[1])];
            assert_eq!(induced.bracket_owned(&args).unwrap(), g.basis_bracket(&key));
        }
        // M8 with x1+x3: decided by the solver; recheck whatever comes back.
        let m8 = lie4("M8");
        let tau = x(4, &[1, 3]);
        if let Some(u) = find_unit(&m8, &tau).unwrap() {
            let induced = induce(&m8, &tau).unwrap();
            for key in crate::wedge::combinations(4, 2) {
                let args = [u.clone(), unit_vec(4, key[0]), unit_vec(4, key[1])];
                assert_eq!(induced.bracket_owned(&args).unwrap(), m8.basis_bracket(&key));
            }
        }
    }

    #[test]
    fn induce_is_linear_in_tau() {
        let g = gl2();
        let t = x(4, &[4]);
        let t3 = TraceMap::new(scaled(t.coeffs(), &rat(-3)));
        let a = induce(&g, &t).unwrap();
        let b = induce(&g, &t3).unwrap();
        assert_eq!(b.table(), &a.table().scaled(&rat(-3)));
    }
}
