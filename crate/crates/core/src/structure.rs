//! Subalgebras, ideals, derived and central series, and the center.

use crate::algebra::NLieAlgebra;
use crate::error::{Error, Result};
use crate::induction::{induce, TraceMap};
use crate::linalg::{Matrix, Subspace, Vector};

/// The subspace spanned by all brackets `[s_1, ..., s_n]` with `s_i ∈ S_i`.
pub fn product_subspace(a: &NLieAlgebra, factors: &[&Subspace]) -> Result<Subspace> {
    if factors.len() != a.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            found: factors.len(),
        });
    }
    if let Some(s) = factors.iter().find(|s| s.ambient_dim() != a.dim()) {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: s.ambient_dim(),
        });
    }
    let d = a.dim();
    if a.is_abelian() || factors.iter().any(|s| s.is_zero()) {
        return Ok(Subspace::zero(d));
    }
    let mut images: Vec<Vector> = Vec::new();
    let mut choice = vec![0usize; factors.len()];
    loop {
        let args: Vec<&[crate::linalg::Rational]> = choice
            .iter()
            .zip(factors)
            .map(|(&c, s)| s.basis()[c].as_slice())
            .collect();
        images.push(a.bracket_unchecked(&args));
        // odometer over basis choices
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Subspace::span(d, &images);
            }
            choice[pos] += 1;
            if choice[pos] < factors[pos].dim() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// `[S, ..., S] ⊆ S`.
pub fn is_subalgebra(a: &NLieAlgebra, s: &Subspace) -> Result<bool> {
    let factors = vec![s; a.arity()];
    product_subspace(a, &factors)?.is_subspace_of(s)
}

/// `[S, A, ..., A] ⊆ S`.
pub fn is_ideal(a: &NLieAlgebra, s: &Subspace) -> Result<bool> {
    let full = Subspace::full(a.dim());
    let mut factors = vec![&full; a.arity()];
    factors[0] = s;
    product_subspace(a, &factors)?.is_subspace_of(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    Central,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    /// `terms[0]` is the starting ideal.
    pub terms: Vec<Subspace>,
    pub stabilized: bool,
    /// First index whose term is zero.
    pub class: Option<usize>,
}

impl SeriesReport {
    /// The `p`-th term, extending a stabilized series by its last term.
    pub fn term(&self, p: usize) -> &Subspace {
        self.terms
            .get(p)
            .unwrap_or_else(|| self.terms.last().expect("nonempty"))
    }
}

fn series(a: &NLieAlgebra, start: &Subspace, max_p: Option<usize>, kind: SeriesKind) -> Result<SeriesReport> {
    if !is_ideal(a, start)? {
        return Err(Error::NotAnIdeal);
    }
    let max_p = max_p.unwrap_or(a.dim() + 1);
    let full = Subspace::full(a.dim());
    let mut terms = vec![start.clone()];
    let mut stabilized = false;
    let mut class = start.is_zero().then_some(0);
    while class.is_none() && terms.len() <= max_p {
        let last = terms.last().expect("nonempty");
        let next = match kind {
            SeriesKind::Derived => product_subspace(a, &vec![last; a.arity()])?,
            SeriesKind::Central => {
                let mut f = vec![&full; a.arity()];
                f[0] = last;
                product_subspace(a, &f)?
            }
        };
        if &next == last {
            stabilized = true;
            break;
        }
        if next.is_zero() {
            class = Some(terms.len());
        }
        terms.push(next);
    }
    if class.is_some() {
        stabilized = true;
    }
    Ok(SeriesReport {
        kind,
        terms,
        stabilized,
        class,
    })
}

/// `D^0 = I`, `D^{p+1} = [D^p, ..., D^p]`.
pub fn derived_series(a: &NLieAlgebra, ideal: &Subspace, max_p: Option<usize>) -> Result<SeriesReport> {
    series(a, ideal, max_p, SeriesKind::Derived)
}

/// `C^0 = I`, `C^{p+1} = [C^p, A, ..., A]`.
pub fn central_series(a: &NLieAlgebra, ideal: &Subspace, max_p: Option<usize>) -> Result<SeriesReport> {
    series(a, ideal, max_p, SeriesKind::Central)
}

/// `D^1(A) = [A, ..., A]`.
pub fn derived_algebra(a: &NLieAlgebra) -> Subspace {
    let full = Subspace::full(a.dim());
    product_subspace(a, &vec![&full; a.arity()]).expect("shapes agree")
}

/// Elements `z` with `[z, x_1, ..., x_{n-1}] = 0` for all `x`.
pub fn center(a: &NLieAlgebra) -> Subspace {
    let d = a.dim();
    if a.is_abelian() {
        return Subspace::full(d);
    }
    let mut rows: Vec<Vector> = Vec::new();
    for x in crate::wedge::combinations(d, a.arity() - 1) {
        let m = a.ad_basis(&x);
        for i in 0..d {
            rows.push(m.row(i).to_vec());
        }
    }
    Matrix::from_rows(d, &rows)
        .expect("rows of length dim")
        .nullspace()
}

pub fn solvability_class(a: &NLieAlgebra) -> Option<usize> {
    derived_series(a, &Subspace::full(a.dim()), None)
        .expect("A is an ideal of itself")
        .class
}

pub fn nilpotency_class(a: &NLieAlgebra) -> Option<usize> {
    central_series(a, &Subspace::full(a.dim()), None)
        .expect("A is an ideal of itself")
        .class
}

/// Whether the ideal `J` of `A` stays an ideal of `A_τ`, decided by
/// `D^1(A) ⊆ J` or `J ⊆ ker τ` and cross-checked by direct closure.
pub fn ideal_in_induced(a: &NLieAlgebra, tau: &TraceMap, j: &Subspace) -> Result<bool> {
    if !is_ideal(a, j)? {
        return Err(Error::NotAnIdeal);
    }
    let induced = induce(a, tau)?;
    let in_kernel = j.basis().iter().all(|v| num_traits::Zero::is_zero(&tau.apply(v)));
    let criterion = in_kernel || derived_algebra(a).is_subspace_of(j)?;
    let direct = is_ideal(&induced, j)?;
    if criterion != direct {
        return Err(Error::CrossCheck(format!(
            "ideal criterion gives {criterion}, closure check gives {direct}"
        )));
    }
    Ok(criterion)
}

/// `D^2(A) = [D^1(A), ..., D^1(A)]`.
pub fn second_derived(a: &NLieAlgebra) -> Subspace {
    let d1 = derived_algebra(a);
    product_subspace(a, &vec![&d1; a.arity()]).expect("shapes agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gl2, lie4};
    use crate::linalg::{rat, unit_vec, zero_vec};

    fn span(d: usize, idx: &[usize]) -> Subspace {
        let gens: Vec<Vector> = idx.iter().map(|&i| unit_vec(d, i - 1)).collect();
        Subspace::span(d, &gens).unwrap()
    }

    fn tau(d: usize, idx: &[usize]) -> TraceMap {
        let mut v = zero_vec(d);
        for &i in idx {
            v[i - 1] = rat(1);
        }
        TraceMap::new(v)
    }

    #[test]
    fn products() {
        let g = gl2();
        let full = Subspace::full(4);
        let zero = Subspace::zero(4);
        assert!(product_subspace(&g, &[&zero, &full]).unwrap().is_zero());
        assert_eq!(derived_algebra(&g), span(4, &[1, 2, 3]));
        assert_eq!(derived_algebra(&lie4("M5")), span(4, &[3]));
    }

    #[test]
    fn ideals_and_subalgebras() {
        let g = gl2();
        for s in [Subspace::zero(4), Subspace::full(4)] {
            assert!(is_ideal(&g, &s).unwrap());
            assert!(is_subalgebra(&g, &s).unwrap());
        }
        assert!(is_ideal(&lie4("M5"), &span(4, &[3])).unwrap());
        assert!(is_subalgebra(&g, &span(4, &[1])).unwrap());
        assert!(!is_ideal(&g, &span(4, &[1])).unwrap());
    }

    #[test]
    fn series_examples() {
        let ab = NLieAlgebra::abelian(3, 4).unwrap();
        assert_eq!(solvability_class(&ab), Some(1));
        assert_eq!(nilpotency_class(&ab), Some(1));
        let gt = induce(&gl2(), &tau(4, &[4])).unwrap();
        let ds = derived_series(&gt, &Subspace::full(4), None).unwrap();
        assert_eq!(ds.class, Some(2));
        let cs = central_series(&lie4("M5"), &Subspace::full(4), None).unwrap();
        assert_eq!(cs.terms[1], span(4, &[3]));
        assert!(cs.terms[2].is_zero());
        assert_eq!(cs.class, Some(2));
        let gs = derived_series(&gl2(), &Subspace::full(4), None).unwrap();
        assert_eq!(gs.class, None);
        assert!(gs.stabilized);
        assert_eq!(gs.terms[1], span(4, &[1, 2, 3]));
        assert_eq!(
            derived_series(&gl2(), &span(4, &[1]), None),
            Err(Error::NotAnIdeal)
        );
    }

    #[test]
    fn centers() {
        assert!(center(&NLieAlgebra::abelian(2, 3).unwrap()).is_full());
        assert_eq!(center(&gl2()), span(4, &[4]));
        let m4 = lie4("M4");
        let z = center(&m4);
        assert_eq!(z.dim(), 2);
        let central = crate::linalg::int_vec(&[0, 1, -1, 0]);
        for j in 0..4 {
            assert!(m4
                .bracket(&[&central, &unit_vec(4, j)])
                .unwrap()
                .iter()
                .all(|c| *c == rat(0)));
        }
        assert!(z.contains(&central).unwrap());
        assert!(z.contains(&unit_vec(4, 0)).unwrap());
    }

    #[test]
    fn ideals_in_induced() {
        let m5 = lie4("M5");
        assert!(ideal_in_induced(&m5, &tau(4, &[1]), &Subspace::full(4)).unwrap());
        assert!(ideal_in_induced(&m5, &tau(4, &[1]), &span(4, &[3])).unwrap());
        let m4 = lie4("M4");
        // M4 has trace space spanned by x1, x2, x4; x1 does not vanish on e1.
        let verdict = ideal_in_induced(&m4, &tau(4, &[1]), &span(4, &[1])).unwrap();
        let direct = is_ideal(&induce(&m4, &tau(4, &[1])).unwrap(), &span(4, &[1])).unwrap();
        assert_eq!(verdict, direct);
    }
}
