//! Exact linear algebra over the rationals.
//!
//! Everything here works on [`Rational`] entries, so ranks, kernels and
//! subspace comparisons are exact. Subspaces are kept in reduced row echelon
//! form, which makes two subspaces equal exactly when their stored bases are
//! equal.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = BigRational;

/// Coordinate vector with exact entries.
pub type Vector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(dim: usize) -> Vector {
    vec![Rational::zero(); dim]
}

pub fn unit_vec(dim: usize, i: usize) -> Vector {
    let mut v = zero_vec(dim);
    v[i] = Rational::one();
    v
}

pub fn int_vec(values: &[i64]) -> Vector {
    values.iter().map(|&x| rat(x)).collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    debug_assert_eq!(y.len(), x.len());
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn scaled(v: &[Rational], a: &Rational) -> Vector {
    v.iter().map(|x| x * a).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows. `cols` is needed to express a matrix with
    /// no rows.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> = rows.iter().map(|r| int_vec(r)).collect();
        Self::from_rows(cols, &rows).expect("ragged integer matrix")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        Ok(Self::from_rows(rows, columns)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = sub_vec(&self.data, &other.data);
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form and its pivot columns.
    ///
    /// Pivots are chosen as the first nonzero entry at or below the current
    /// row, so the result is deterministic.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] *= &inv;
                }
            }
            let pivot_row: Vector = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if !pivot_row[j].is_zero() {
                        let delta = &factor * &pivot_row[j];
                        m[(i, j)] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The kernel `{v : self * v = 0}` in canonical form.
    pub fn nullspace(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut generators = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = zero_vec(self.cols);
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)].clone();
            }
            generators.push(v);
        }
        Subspace::span(self.cols, &generators).expect("nullspace vectors have matching length")
    }

    /// Span of the columns.
    pub fn column_space(&self) -> Subspace {
        let cols: Vec<Vector> = (0..self.cols).map(|j| self.column(j)).collect();
        Subspace::span(self.rows, &cols).expect("columns have matching length")
    }

    /// One solution of `self * x = b`, or `None` if the system is
    /// inconsistent. Free variables are set to zero, which picks the
    /// solution read directly off the reduced echelon form.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vec(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Ok(Some(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of `Q^ambient`, stored as a reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vec(ambient, i)).collect(),
        }
    }

    /// Canonical subspace spanned by the given vectors.
    pub fn span(ambient: usize, generators: &[Vector]) -> Result<Self> {
        if generators.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let m = Matrix::from_rows(ambient, generators)?;
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Pivot column of each basis vector.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| {
                v.iter()
                    .position(|x| !x.is_zero())
                    .expect("basis vectors are nonzero")
            })
            .collect()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: len,
            });
        }
        Ok(())
    }

    /// Reduces `v` against the echelon basis; the remainder is zero iff
    /// `v` lies in the subspace.
    fn residue(&self, v: &[Rational]) -> Vector {
        let mut r = v.to_vec();
        for (b, p) in self.basis.iter().zip(self.pivots()) {
            if !r[p].is_zero() {
                let c = r[p].clone();
                for (ri, bi) in r.iter_mut().zip(b) {
                    if !bi.is_zero() {
                        *ri -= &c * bi;
                    }
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        self.check_len(v.len())?;
        Ok(is_zero_vec(&self.residue(v)))
    }

    /// Coordinates of `v` with respect to the echelon basis, if contained.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vector>> {
        self.check_len(v.len())?;
        if !is_zero_vec(&self.residue(v)) {
            return Ok(None);
        }
        Ok(Some(self.pivots().into_iter().map(|p| v[p].clone()).collect()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        other.check_len(self.ambient)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Linear forms vanishing on the subspace, as a subspace of the dual.
    pub fn annihilator(&self) -> Subspace {
        Matrix::from_rows(self.ambient, &self.basis)
            .expect("basis rows have ambient length")
            .nullspace()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        other.check_len(self.ambient)?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &gens)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        other.check_len(self.ambient)?;
        let mut constraints = self.annihilator().basis;
        constraints.extend(other.annihilator().basis);
        Ok(Matrix::from_rows(self.ambient, &constraints)?.nullspace())
    }

    /// Same as `==`; exists to mirror the other set operations.
    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        other.check_len(self.ambient)?;
        Ok(self == other)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(
            f,
            "Subspace(dim {} in {}: [{}])",
            self.dim(),
            self.ambient,
            rows.join(" ")
        )
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `true` if `q` is the square of a rational.
pub fn is_rational_square(q: &Rational) -> bool {
    if q.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    is_sq(q.numer()) && is_sq(q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(3);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);

        let z = Matrix::zeros(2, 3);
        let (r, p) = z.rref();
        assert_eq!(r, z);
        assert!(p.is_empty());
    }

    #[test]
    fn rref_rank_one_example() {
        // R2 <- R2 - R1/2, then R1 /= 2.
        let (r, p) = Matrix::from_i64(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(Matrix::zeros(3, 5).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 1], &[1, 1]]).rank(), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(Matrix::zeros(2, 3).nullspace().is_full());
        assert!(Matrix::identity(3).nullspace().is_zero());
        let n = Matrix::from_i64(&[&[1, 1, 0]]).nullspace();
        assert_eq!(n.dim(), 2);
        assert!(n.contains(&int_vec(&[1, -1, 0])).unwrap());
        assert!(n.contains(&int_vec(&[0, 0, 1])).unwrap());
        assert!(!n.contains(&int_vec(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn subspace_operations() {
        let full = Subspace::full(3);
        assert!(full.contains(&int_vec(&[5, -2, 7])).unwrap());

        let s = Subspace::span(3, &[int_vec(&[1, 1, 0])]).unwrap();
        assert!(s.intersect(&Subspace::zero(3)).unwrap().is_zero());

        let x = Subspace::span(3, &[unit_vec(3, 0)]).unwrap();
        let y = Subspace::span(3, &[unit_vec(3, 1)]).unwrap();
        let xy = x.sum(&y).unwrap();
        assert_eq!(xy.dim(), 2);
        assert!(xy.contains(&int_vec(&[3, -1, 0])).unwrap());
        assert!(x.intersect(&y).unwrap().is_zero());
        assert_eq!(xy.intersect(&s).unwrap(), s);

        assert_eq!(
            x.contains(&[rat(1)]),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 1
            })
        );
        assert!(x.sum(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn subspace_equality_ignores_generators() {
        let a = Subspace::span(3, &[int_vec(&[1, 2, 3]), int_vec(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(
            3,
            &[int_vec(&[1, 3, 4]), int_vec(&[2, 4, 6]), int_vec(&[1, 1, 2])],
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(a.equals(&b).unwrap());
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(m.solve(&int_vec(&[3, 6])).unwrap(), Some(int_vec(&[3, 0])));
        assert_eq!(m.solve(&int_vec(&[3, 5])).unwrap(), None);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("4"), Some(rat(4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert!(is_rational_square(&ratio(9, 4)));
        assert!(!is_rational_square(&rat(5)));
        assert!(!is_rational_square(&rat(-1)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Matrix> {
            (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-3i64..=3, r * c)
                    .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(rat).collect()).unwrap())
            })
        }

        proptest! {
            #[test]
            fn rank_nullity(m in small_matrix()) {
                prop_assert_eq!(m.rank() + m.nullspace().dim(), m.cols());
            }

            #[test]
            fn rref_idempotent(m in small_matrix()) {
                let (r, _) = m.rref();
                prop_assert_eq!(r.rref().0, r);
            }

            #[test]
            fn nullspace_is_annihilated(m in small_matrix()) {
                for v in m.nullspace().basis() {
                    prop_assert!(is_zero_vec(&m.mul_vec(v).unwrap()));
                }
            }

            #[test]
            fn span_is_generator_independent(m in small_matrix(), k in -2i64..=2) {
                // Add k times row 0 to every other row: same row space.
                let rows: Vec<Vector> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
                let mut shuffled = rows.clone();
                for r in shuffled.iter_mut().skip(1) {
                    axpy(r, &rat(k), &rows[0]);
                }
                shuffled.reverse();
                let a = Subspace::span(m.cols(), &rows).unwrap();
                let b = Subspace::span(m.cols(), &shuffled).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }
}
