//! n-Lie (Filippov) algebras given by structure constants.

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, sub_vec, unit_vec, zero_vec, Matrix, Rational, Vector};
use crate::wedge::{combinations, MultiIndex, SkewMap};

/// An element of an algebra, as a coordinate vector.
pub type Element = Vector;

/// An `n`-ary skew-symmetric bracket on `Q^dim`.
///
/// Whether the bracket satisfies the fundamental identity is not enforced
/// here; see [`NLieAlgebra::check_fundamental_identity`].
#[derive(Clone, PartialEq, Eq)]
pub struct NLieAlgebra {
    table: SkewMap<Vector>,
}

/// A tuple `(x, y)` of basis indices on which the fundamental identity
/// fails, with `residual = LHS - RHS`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiViolation {
    pub x: MultiIndex,
    pub y: MultiIndex,
    pub residual: Vector,
}

impl NLieAlgebra {
    /// The abelian algebra.
    pub fn abelian(arity: usize, dim: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::UnsupportedArity(arity));
        }
        Ok(NLieAlgebra {
            table: SkewMap::zero(arity, dim),
        })
    }

    pub fn from_table(table: SkewMap<Vector>) -> Result<Self> {
        if table.arity() < 2 {
            return Err(Error::UnsupportedArity(table.arity()));
        }
        Ok(NLieAlgebra { table })
    }

    /// Builds an algebra from `(args, value)` pairs with 0-based indices in
    /// any order.
    pub fn from_brackets(
        arity: usize,
        dim: usize,
        brackets: impl IntoIterator<Item = (Vec<usize>, Vector)>,
    ) -> Result<Self> {
        let mut a = Self::abelian(arity, dim)?;
        for (args, value) in brackets {
            a.set_bracket(&args, value)?;
        }
        Ok(a)
    }

    pub fn arity(&self) -> usize {
        self.table.arity()
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn table(&self) -> &SkewMap<Vector> {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_zero()
    }

    /// Sets `[e_{i_1}, ..., e_{i_n}] = value`.
    pub fn set_bracket(&mut self, args: &[usize], value: Vector) -> Result<()> {
        if value.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: value.len(),
            });
        }
        self.table.set(args, value)
    }

    /// Stored structure constants on a canonical key.
    pub fn structure_constant(&self, key: &MultiIndex) -> Option<&Vector> {
        self.table.get(key)
    }

    /// Bracket of basis vectors in any order.
    pub fn basis_bracket(&self, args: &[usize]) -> Vector {
        self.table.eval_basis(args)
    }

    pub fn bracket(&self, args: &[&[Rational]]) -> Result<Element> {
        self.table.eval(args)
    }

    pub(crate) fn bracket_unchecked(&self, args: &[&[Rational]]) -> Element {
        self.table.eval_unchecked(args)
    }

    pub fn bracket_owned(&self, args: &[Element]) -> Result<Element> {
        let refs: Vec<&[Rational]> = args.iter().map(|a| a.as_slice()).collect();
        self.bracket(&refs)
    }

    pub fn basis(&self, i: usize) -> Element {
        unit_vec(self.dim(), i)
    }

    /// Evaluates the fundamental identity on every pair of basis tuples
    /// `x_1 < ... < x_{n-1}`, `y_1 < ... < y_n`. By multilinearity and
    /// skew-symmetry this is a complete test.
    pub fn check_fundamental_identity(&self) -> Vec<FiViolation> {
        let n = self.arity();
        let d = self.dim();
        if self.is_abelian() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let ys = combinations(d, n);
        for x in combinations(d, n - 1) {
            let ad = self.ad_basis(&x);
            if ad.is_zero() {
                continue;
            }
            for y in &ys {
                let inner = self.basis_bracket(y);
                let lhs = ad.mul_vec(&inner).expect("square");
                let mut rhs = zero_vec(d);
                for i in 0..n {
                    let moved = ad.column(y[i]);
                    if is_zero_vec(&moved) {
                        continue;
                    }
                    let mut args: Vec<Vector> = y.iter().map(|&j| unit_vec(d, j)).collect();
                    args[i] = moved;
                    let refs: Vec<&[Rational]> = args.iter().map(|a| a.as_slice()).collect();
                    axpy(&mut rhs, &Rational::one(), &self.bracket_unchecked(&refs));
                }
                let residual = sub_vec(&lhs, &rhs);
                if !is_zero_vec(&residual) {
                    out.push(FiViolation {
                        x: x.clone(),
                        y: y.clone(),
                        residual,
                    });
                }
            }
        }
        out
    }

    pub fn is_nlie(&self) -> bool {
        self.check_fundamental_identity().is_empty()
    }

    /// Matrix of `ad_X` for `X = (e_{k_1}, ..., e_{k_{n-1}})`; column `j`
    /// is `[e_{k_1}, ..., e_{k_{n-1}}, e_j]`.
    pub fn ad_basis(&self, x: &[usize]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        let mut args = x.to_vec();
        args.push(0);
        for j in 0..d {
            *args.last_mut().expect("nonempty") = j;
            let v = self.basis_bracket(&args);
            for (i, c) in v.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Matrix of `ad_X` for a general fundamental object.
    pub fn ad(&self, x: &FundamentalObject) -> Result<Matrix> {
        let d = self.dim();
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            cols.push(self.fo_action(x, &unit_vec(d, j))?);
        }
        Matrix::from_columns(d, &cols)
    }

    fn check_fo(&self, x: &FundamentalObject) -> Result<()> {
        if x.len() != self.arity() - 1 {
            return Err(Error::ArityMismatch {
                expected: self.arity() - 1,
                found: x.len(),
            });
        }
        if let Some(f) = x.factors().iter().find(|f| f.len() != self.dim()) {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: f.len(),
            });
        }
        Ok(())
    }

    /// `X · z = [x_1, ..., x_{n-1}, z]`.
    pub fn fo_action(&self, x: &FundamentalObject, z: &[Rational]) -> Result<Element> {
        self.check_fo(x)?;
        let mut args: Vec<&[Rational]> = x.factors().iter().map(|f| f.as_slice()).collect();
        args.push(z);
        self.bracket(&args)
    }

    /// `X · Y = Σ_i (y_1, ..., X·y_i, ..., y_{n-1})` as a formal sum.
    pub fn fo_product(&self, x: &FundamentalObject, y: &FundamentalObject) -> Result<FoSum> {
        self.check_fo(x)?;
        self.check_fo(y)?;
        let mut sum = FoSum::default();
        for i in 0..y.len() {
            let moved = self.fo_action(x, &y.factors()[i])?;
            let mut factors = y.factors().to_vec();
            factors[i] = moved;
            sum.push(Rational::one(), FundamentalObject(factors));
        }
        Ok(sum)
    }

    /// Action of a formal sum of fundamental objects, extended linearly.
    pub fn fo_sum_action(&self, s: &FoSum, z: &[Rational]) -> Result<Element> {
        let mut out = zero_vec(self.dim());
        for (c, x) in s.terms() {
            axpy(&mut out, c, &self.fo_action(x, z)?);
        }
        Ok(out)
    }

    /// The `(n-1)`-ary bracket `[a, x_1, ..., x_{n-1}]`.
    pub fn fix_element(&self, a: &[Rational]) -> Result<NLieAlgebra> {
        let n = self.arity();
        if n < 3 {
            return Err(Error::UnsupportedArity(n));
        }
        if a.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.len(),
            });
        }
        let d = self.dim();
        let mut table = SkewMap::zero(n - 1, d);
        for key in combinations(d, n - 1) {
            let mut args: Vec<Vector> = vec![a.to_vec()];
            args.extend(key.iter().map(|&j| unit_vec(d, j)));
            let refs: Vec<&[Rational]> = args.iter().map(|v| v.as_slice()).collect();
            table.set(&key, self.bracket_unchecked(&refs))?;
        }
        NLieAlgebra::from_table(table)
    }

    /// Nonzero bracket values on canonical keys.
    pub fn bracket_images(&self) -> Vec<Vector> {
        self.table.iter().map(|(_, v)| v.clone()).collect()
    }

    /// Structure constants in the basis formed by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<NLieAlgebra> {
        let d = self.dim();
        if p.rows() != d || p.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.rows(),
            });
        }
        if p.rank() != d {
            return Err(Error::Precondition("basis change matrix is singular".into()));
        }
        let cols: Vec<Vector> = (0..d).map(|j| p.column(j)).collect();
        let mut out = NLieAlgebra::abelian(self.arity(), d)?;
        for key in combinations(d, self.arity()) {
            let args: Vec<&[Rational]> = key.iter().map(|&j| cols[j].as_slice()).collect();
            let v = self.bracket_unchecked(&args);
            let coords = p.solve(&v)?.expect("p is invertible");
            out.set_bracket(&key, coords)?;
        }
        Ok(out)
    }
}

impl fmt::Debug for NLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// 1-based rendering: `[e1,e2]=2e2; [e1,e3]=-2e3`.
impl fmt::Display for NLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_abelian() {
            return write!(f, "abelian({}-ary, dim {})", self.arity(), self.dim());
        }
        let parts = self.table.iter().map(|(k, v)| {
            let args = k.iter().map(|i| format!("e{}", i + 1)).join(",");
            format!("[{}]={}", args, format_element(v))
        });
        write!(f, "{}", parts.format("; "))
    }
}

/// Renders a vector as a combination of `e1, e2, ...`.
pub fn format_element(v: &[Rational]) -> String {
    let mut s = String::new();
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let neg = c < &Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { "-" } else { "+" });
        }
        if !abs.is_one() {
            s.push_str(&abs.to_string());
        }
        s.push_str(&format!("e{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// `n - 1` elements acting on the algebra by `ad_X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalObject(Vec<Element>);

impl FundamentalObject {
    pub fn new(factors: Vec<Element>) -> Self {
        FundamentalObject(factors)
    }

    pub fn from_basis(dim: usize, indices: &[usize]) -> Self {
        FundamentalObject(indices.iter().map(|&i| unit_vec(dim, i)).collect())
    }

    pub fn factors(&self) -> &[Element] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Formal linear combination of fundamental objects.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FoSum {
    terms: Vec<(Rational, FundamentalObject)>,
}

impl FoSum {
    /// Adds a term; terms with a zero coefficient or a zero factor vanish
    /// and are dropped.
    pub fn push(&mut self, c: Rational, x: FundamentalObject) {
        if c.is_zero() || x.factors().iter().any(|f| is_zero_vec(f)) {
            return;
        }
        self.terms.push((c, x));
    }

    pub fn terms(&self) -> &[(Rational, FundamentalObject)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::gl2;
    use crate::linalg::{int_vec, rat};

    fn e(i: usize) -> Element {
        unit_vec(4, i - 1)
    }

    #[test]
    fn gl2_brackets() {
        let g = gl2();
        assert_eq!(g.bracket_owned(&[e(1), e(2)]).unwrap(), int_vec(&[0, 2, 0, 0]));
        assert!(is_zero_vec(&g.bracket_owned(&[e(3), e(3)]).unwrap()));
        // [e2+e3, e1] = -[e1,e2] - [e1,e3] = -2e2 + 2e3
        let x = add(&e(2), &e(3));
        assert_eq!(g.bracket_owned(&[x, e(1)]).unwrap(), int_vec(&[0, -2, 2, 0]));
    }

    fn add(a: &[Rational], b: &[Rational]) -> Vector {
        crate::linalg::add_vec(a, b)
    }

    #[test]
    fn bracket_shape_errors() {
        let g = gl2();
        assert_eq!(
            g.bracket_owned(&[e(1)]),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
        assert!(g.bracket_owned(&[e(1), unit_vec(3, 0)]).is_err());
    }

    #[test]
    fn fundamental_identity_checks() {
        assert!(NLieAlgebra::abelian(3, 5).unwrap().is_nlie());
        assert!(gl2().is_nlie());
        let mut broken = gl2();
        broken.set_bracket(&[0, 1], int_vec(&[1, 2, 0, 0])).unwrap();
        assert!(!broken.check_fundamental_identity().is_empty());
    }

    #[test]
    fn broken_jacobi_residual_matches_direct_evaluation() {
        let mut broken = gl2();
        broken.set_bracket(&[0, 1], int_vec(&[1, 2, 0, 0])).unwrap();
        for v in broken.check_fundamental_identity() {
            // n = 2: [x,[y1,y2]] - [[x,y1],y2] - [y1,[x,y2]]
            let x = unit_vec(4, v.x[0]);
            let y1 = unit_vec(4, v.y[0]);
            let y2 = unit_vec(4, v.y[1]);
            let inner = broken.bracket_owned(&[y1.clone(), y2.clone()]).unwrap();
            let lhs = broken.bracket_owned(&[x.clone(), inner]).unwrap();
            let a = broken.bracket_owned(&[x.clone(), y1.clone()]).unwrap();
            let b = broken.bracket_owned(&[x, y2.clone()]).unwrap();
            let r1 = broken.bracket_owned(&[a, y2]).unwrap();
            let r2 = broken.bracket_owned(&[y1, b]).unwrap();
            let expect = sub_vec(&sub_vec(&lhs, &r1), &r2);
            assert_eq!(v.residual, expect);
        }
    }

    #[test]
    fn fundamental_object_action_and_product() {
        let g = gl2();
        let abelian = NLieAlgebra::abelian(2, 4).unwrap();
        let x = FundamentalObject::new(vec![e(1)]);
        assert!(is_zero_vec(&abelian.fo_action(&x, &e(2)).unwrap()));
        assert_eq!(g.fo_action(&x, &e(2)).unwrap(), int_vec(&[0, 2, 0, 0]));
        let x23 = FundamentalObject::new(vec![add(&e(2), &e(3))]);
        assert_eq!(g.fo_action(&x23, &e(1)).unwrap(), int_vec(&[0, -2, 2, 0]));

        assert!(abelian
            .fo_product(&x, &FundamentalObject::new(vec![e(2)]))
            .unwrap()
            .is_empty());
        let p = g.fo_product(&x, &FundamentalObject::new(vec![e(2)])).unwrap();
        assert_eq!(
            p.terms(),
            &[(rat(1), FundamentalObject::new(vec![int_vec(&[0, 2, 0, 0])]))]
        );

        // (e2)·(e3) = ([e2,e3]) = (e1), and ad of it equals [ad_e2, ad_e3].
        let y2 = FundamentalObject::new(vec![e(2)]);
        let y3 = FundamentalObject::new(vec![e(3)]);
        let p = g.fo_product(&y2, &y3).unwrap();
        assert_eq!(p.terms()[0].1, FundamentalObject::new(vec![e(1)]));
        let lhs = g.ad(&p.terms()[0].1).unwrap();
        let a2 = g.ad(&y2).unwrap();
        let a3 = g.ad(&y3).unwrap();
        let rhs = a2.mul(&a3).unwrap().sub(&a3.mul(&a2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fix_element_examples() {
        let gt = crate::induction::induce(&gl2(), &crate::induction::TraceMap::new(int_vec(&[0, 0, 0, 1])))
            .unwrap();
        assert!(gt.fix_element(&zero_vec(4)).unwrap().is_abelian());
        // [e4, x, y] recovers the gl2 bracket (e4 sits in front: even shift).
        let fixed = gt.fix_element(&e(4)).unwrap();
        assert_eq!(fixed, gl2());
        assert_eq!(gl2().fix_element(&e(1)), Err(Error::UnsupportedArity(2)));
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(gl2().to_string(), "[e1,e2]=2e2; [e1,e3]=-2e3; [e2,e3]=e1");
    }

    mod props {
        use super::*;
        use crate::catalog;
        use proptest::prelude::*;

        fn elem(dim: usize) -> impl Strategy<Value = Element> {
            proptest::collection::vec(-2i64..=2, dim).prop_map(|v| int_vec(&v))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            // X·(Y·z) = (X·Y)·z + Y·(X·z) on a 3-Lie algebra.
            #[test]
            fn leibniz_rule(x1 in elem(4), x2 in elem(4), y1 in elem(4), y2 in elem(4), z in 0usize..4) {
                let a = catalog::filippov_simple(3);
                let x = FundamentalObject::new(vec![x1, x2]);
                let y = FundamentalObject::new(vec![y1, y2]);
                let z = unit_vec(4, z);
                let lhs = a.fo_action(&x, &a.fo_action(&y, &z).unwrap()).unwrap();
                let xy = a.fo_product(&x, &y).unwrap();
                let mut rhs = a.fo_sum_action(&xy, &z).unwrap();
                axpy(&mut rhs, &rat(1), &a.fo_action(&y, &a.fo_action(&x, &z).unwrap()).unwrap());
                prop_assert_eq!(lhs, rhs);
            }

            // ad_{X·Y} = ad_X ∘ ad_Y - ad_Y ∘ ad_X
            #[test]
            fn ad_of_product_is_commutator(x1 in elem(4), x2 in elem(4), y1 in elem(4), y2 in elem(4)) {
                let a = catalog::filippov_simple(3);
                let x = FundamentalObject::new(vec![x1, x2]);
                let y = FundamentalObject::new(vec![y1, y2]);
                let xy = a.fo_product(&x, &y).unwrap();
                let mut lhs = Matrix::zeros(4, 4);
                for (c, t) in xy.terms() {
                    let m = a.ad(t).unwrap();
                    for i in 0..4 { for j in 0..4 { lhs[(i, j)] += c * &m[(i, j)]; } }
                }
                let ax = a.ad(&x).unwrap();
                let ay = a.ad(&y).unwrap();
                let rhs = ax.mul(&ay).unwrap().sub(&ay.mul(&ax).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn bracket_is_skew(perm in Just(vec![0usize, 1, 2]).prop_shuffle(), a in elem(4), b in elem(4), c in elem(4)) {
                let alg = catalog::filippov_simple(3);
                let args = [a, b, c];
                let permuted: Vec<Element> = perm.iter().map(|&i| args[i].clone()).collect();
                let (_, sign) = crate::wedge::normalize_args(&perm);
                let lhs = alg.bracket_owned(&permuted).unwrap();
                let rhs = crate::linalg::scaled(&alg.bracket_owned(&args).unwrap(), &rat(sign as i64));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn fix_element_preserves_fi(a in elem(5), which in 0usize..3) {
                let alg = match which {
                    0 => catalog::filippov_simple(4),
                    1 => catalog::bai_instance(4, "3d"),
                    _ => catalog::bai_instance(4, "4a"),
                };
                let alg = if alg.dim() == 5 { alg } else { return Ok(()); };
                prop_assert!(alg.is_nlie());
                prop_assert!(alg.fix_element(&a).unwrap().is_nlie());
            }
        }
    }
}
