//! Skew-symmetric multilinear maps stored on wedge-basis monomials.
//!
//! A skew `k`-linear map on a `d`-dimensional space is determined by its
//! values on strictly increasing index tuples `i_1 < ... < i_k`. Any other
//! argument order is resolved by the sign of the sorting permutation, and a
//! repeated index gives zero.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vec, zero_vec, Rational, Vector};

/// Strictly increasing list of 0-based basis indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotCanonical(indices));
        }
        Ok(MultiIndex(indices))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// The tuple with position `pos` removed; still canonical.
    pub fn omit(&self, pos: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v.remove(pos);
        MultiIndex(v)
    }

    /// 1-based rendering, e.g. `(1,2,4)`.
    pub fn one_based(&self) -> String {
        format!("({})", self.0.iter().map(|i| (i + 1).to_string()).join(","))
    }
}

impl Deref for MultiIndex {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sorts `indices`, returning the sorted list and the sign of the sorting
/// permutation; the sign is 0 when an index repeats.
pub fn normalize_args(indices: &[usize]) -> (Vec<usize>, i8) {
    let mut inversions = 0usize;
    for i in 0..indices.len() {
        for j in i + 1..indices.len() {
            match indices[i].cmp(&indices[j]) {
                std::cmp::Ordering::Equal => return (sorted(indices), 0),
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    (sorted(indices), sign)
}

fn sorted(indices: &[usize]) -> Vec<usize> {
    let mut v = indices.to_vec();
    v.sort_unstable();
    v
}

/// Canonical key and sign, or `None` on a repeated index.
pub fn canonical(indices: &[usize]) -> Option<(MultiIndex, i8)> {
    match normalize_args(indices) {
        (_, 0) => None,
        (v, s) => Some((MultiIndex(v), s)),
    }
}

/// All strictly increasing `k`-tuples from `0..d`, in lexicographic order.
pub fn combinations(d: usize, k: usize) -> Vec<MultiIndex> {
    (0..d).combinations(k).map(MultiIndex).collect()
}

/// Lexicographic position of each canonical `k`-tuple.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    keys: Vec<MultiIndex>,
    position: BTreeMap<MultiIndex, usize>,
}

impl WedgeBasis {
    pub fn new(dim: usize, degree: usize) -> Self {
        let keys = combinations(dim, degree);
        let position = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        WedgeBasis { keys, position }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[MultiIndex] {
        &self.keys
    }

    pub fn position(&self, key: &MultiIndex) -> usize {
        self.position[key]
    }
}

/// Coordinates of `x_1 ∧ ... ∧ x_k` in the wedge basis: for every canonical
/// key, the signed sum of coefficient products over all index assignments.
pub fn wedge_coords(args: &[&[Rational]]) -> BTreeMap<MultiIndex, Rational> {
    let supports: Vec<Vec<(usize, &Rational)>> = args
        .iter()
        .map(|a| a.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    let mut out: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
    if supports.iter().any(Vec::is_empty) {
        return out;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(args.len());
    let mut coef: Vec<Rational> = vec![Rational::one()];
    expand(&supports, &mut chosen, &mut coef, &mut out);
    out.retain(|_, v| !v.is_zero());
    out
}

fn expand(
    supports: &[Vec<(usize, &Rational)>],
    chosen: &mut Vec<usize>,
    coef: &mut Vec<Rational>,
    out: &mut BTreeMap<MultiIndex, Rational>,
) {
    let depth = chosen.len();
    if depth == supports.len() {
        let (key, sign) = canonical(chosen).expect("distinct indices");
        let c = coef.last().expect("coefficient stack");
        let entry = out.entry(key).or_insert_with(Rational::zero);
        if sign > 0 {
            *entry += c;
        } else {
            *entry -= c;
        }
        return;
    }
    for &(i, x) in &supports[depth] {
        if chosen.contains(&i) {
            continue;
        }
        let next = coef.last().expect("coefficient stack") * x;
        chosen.push(i);
        coef.push(next);
        expand(supports, chosen, coef, out);
        coef.pop();
        chosen.pop();
    }
}

/// Values a skew map can take: vectors (A-valued) or scalars.
pub trait SkewValue: Clone + PartialEq + fmt::Debug {
    fn zero_of(codim: usize) -> Self;
    fn is_zero_value(&self) -> bool;
    fn add_scaled(&mut self, c: &Rational, other: &Self);
    fn negated(&self) -> Self;
}

impl SkewValue for Vector {
    fn zero_of(codim: usize) -> Self {
        zero_vec(codim)
    }

    fn is_zero_value(&self) -> bool {
        is_zero_vec(self)
    }

    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        axpy(self, c, other);
    }

    fn negated(&self) -> Self {
        self.iter().map(|x| -x).collect()
    }
}

impl SkewValue for Rational {
    fn zero_of(_codim: usize) -> Self {
        Rational::zero()
    }

    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }

    fn add_scaled(&mut self, c: &Rational, other: &Self) {
        *self += c * other;
    }

    fn negated(&self) -> Self {
        -self
    }
}

/// A skew-symmetric `arity`-linear map on a `dim`-dimensional space, valued
/// in vectors of length `dim` or in scalars.
///
/// Only nonzero values on canonical keys are stored, so two maps are equal
/// exactly when they agree as multilinear maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewMap<V> {
    arity: usize,
    dim: usize,
    values: BTreeMap<MultiIndex, V>,
}

impl<V: SkewValue> SkewMap<V> {
    pub fn zero(arity: usize, dim: usize) -> Self {
        SkewMap {
            arity,
            dim,
            values: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero values on canonical keys, in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &V)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        if indices.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: indices.len(),
            });
        }
        if let Some(&index) = indices.iter().find(|&&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange { index, dim: self.dim });
        }
        Ok(())
    }

    /// Assigns the value on the given argument order; the stored canonical
    /// value absorbs the permutation sign.
    pub fn set(&mut self, indices: &[usize], value: V) -> Result<()> {
        self.check_indices(indices)?;
        match canonical(indices) {
            None if value.is_zero_value() => Ok(()),
            None => Err(Error::SkewViolation(indices.to_vec())),
            Some((key, sign)) => {
                let v = if sign < 0 { value.negated() } else { value };
                if v.is_zero_value() {
                    self.values.remove(&key);
                } else {
                    self.values.insert(key, v);
                }
                Ok(())
            }
        }
    }

    /// Stored value on a canonical key.
    pub fn get(&self, key: &MultiIndex) -> Option<&V> {
        self.values.get(key)
    }

    fn codim(&self) -> usize {
        self.dim
    }

    /// Value on basis vectors in the given (arbitrary) order.
    pub fn eval_basis(&self, indices: &[usize]) -> V {
        debug_assert_eq!(indices.len(), self.arity);
        match canonical(indices) {
            None => V::zero_of(self.codim()),
            Some((key, sign)) => match self.values.get(&key) {
                None => V::zero_of(self.codim()),
                Some(v) if sign > 0 => v.clone(),
                Some(v) => v.negated(),
            },
        }
    }

    /// Value on arbitrary vectors, by multilinear expansion.
    pub fn eval(&self, args: &[&[Rational]]) -> Result<V> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        if let Some(a) = args.iter().find(|a| a.len() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: a.len(),
            });
        }
        Ok(self.eval_unchecked(args))
    }

    pub(crate) fn eval_unchecked(&self, args: &[&[Rational]]) -> V {
        let mut out = V::zero_of(self.codim());
        if self.values.is_empty() {
            return out;
        }
        for (key, c) in wedge_coords(args) {
            if let Some(v) = self.values.get(&key) {
                out.add_scaled(&c, v);
            }
        }
        out
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &SkewMap<V>) {
        debug_assert_eq!((self.arity, self.dim), (other.arity, other.dim));
        for (k, v) in &other.values {
            let entry = self
                .values
                .entry(k.clone())
                .or_insert_with(|| V::zero_of(self.dim));
            entry.add_scaled(c, v);
        }
        self.values.retain(|_, v| !v.is_zero_value());
    }

    pub fn scaled(&self, c: &Rational) -> SkewMap<V> {
        let mut out = SkewMap::zero(self.arity, self.dim);
        out.add_scaled(c, self);
        out
    }

    pub fn difference(&self, other: &SkewMap<V>) -> SkewMap<V> {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), other);
        out
    }

    /// Builds a map from canonical-key values, dropping zeros.
    pub fn from_values(
        arity: usize,
        dim: usize,
        values: impl IntoIterator<Item = (MultiIndex, V)>,
    ) -> Result<Self> {
        let mut m = SkewMap::zero(arity, dim);
        for (k, v) in values {
            m.set(&k, v)?;
        }
        Ok(m)
    }

    /// The omission sum
    /// `Σ_k (-1)^(k-1) τ(x_k) m(x_1, ..., x̂_k, ..., x_{p+1})`,
    /// a skew `(p+1)`-linear map.
    pub fn omission_sum(&self, tau: &[Rational]) -> SkewMap<V> {
        debug_assert_eq!(tau.len(), self.dim);
        let mut out = SkewMap::zero(self.arity + 1, self.dim);
        if tau.iter().all(Zero::is_zero) {
            return out;
        }
        for key in combinations(self.dim, self.arity + 1) {
            let mut acc = V::zero_of(self.dim);
            for pos in 0..key.len() {
                let t = &tau[key[pos]];
                if t.is_zero() {
                    continue;
                }
                if let Some(v) = self.values.get(&key.omit(pos)) {
                    let c = if pos % 2 == 0 { t.clone() } else { -t.clone() };
                    acc.add_scaled(&c, v);
                }
            }
            if !acc.is_zero_value() {
                out.values.insert(key, acc);
            }
        }
        out
    }
}

impl SkewMap<Vector> {
    /// Coordinates in the order (key position, output coordinate).
    pub fn to_coords(&self) -> Vector {
        let basis = WedgeBasis::new(self.dim, self.arity);
        let mut out = zero_vec(basis.len() * self.dim);
        for (k, v) in &self.values {
            let p = basis.position(k);
            out[p * self.dim..(p + 1) * self.dim].clone_from_slice(v);
        }
        out
    }

    pub fn from_coords(arity: usize, dim: usize, coords: &[Rational]) -> Result<Self> {
        let basis = WedgeBasis::new(dim, arity);
        if coords.len() != basis.len() * dim {
            return Err(Error::DimensionMismatch {
                expected: basis.len() * dim,
                found: coords.len(),
            });
        }
        let values = basis
            .keys()
            .iter()
            .enumerate()
            .map(|(p, k)| (k.clone(), coords[p * dim..(p + 1) * dim].to_vec()));
        Self::from_values(arity, dim, values)
    }
}

impl SkewMap<Rational> {
    /// Coordinates in lexicographic key order.
    pub fn to_coords(&self) -> Vector {
        let basis = WedgeBasis::new(self.dim, self.arity);
        let mut out = zero_vec(basis.len());
        for (k, v) in &self.values {
            out[basis.position(k)] = v.clone();
        }
        out
    }

    pub fn from_coords(arity: usize, dim: usize, coords: &[Rational]) -> Result<Self> {
        let basis = WedgeBasis::new(dim, arity);
        if coords.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: coords.len(),
            });
        }
        let values = basis.keys().iter().cloned().zip(coords.iter().cloned());
        Self::from_values(arity, dim, values)
    }
}
