//! Classification tables of low-dimensional Lie and n-Lie algebras, the
//! recognition criterion for induced algebras, and invariant signatures.
//!
//! Indices in entry definitions are 1-based.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::NLieAlgebra;
use crate::cohomology::{cohomology_dims, Coefficients};
use crate::error::{Error, Result};
use crate::induction::{induce, trace_space, TraceMap};
use crate::linalg::{is_rational_square, rat, ratio, unit_vec, zero_vec, Matrix, Rational, Vector};
use crate::structure::{center, derived_algebra, nilpotency_class, second_derived, solvability_class};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// n-Lie algebras of dimension at most n+1.
    Filippov,
    /// n-Lie algebras of dimension n+2.
    Bai,
    /// 3-dimensional Lie algebras.
    Lie3,
    /// 4-dimensional Lie algebras: the solvable list plus gl2.
    Lie4,
}

impl Family {
    pub fn key(self) -> &'static str {
        match self {
            Family::Filippov => "filippov",
            Family::Bai => "bai",
            Family::Lie3 => "lie3",
            Family::Lie4 => "lie4",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        [Family::Filippov, Family::Bai, Family::Lie3, Family::Lie4]
            .into_iter()
            .find(|f| f.key() == s)
    }
}

type Builder = Arc<dyn Fn(&[Rational]) -> Result<NLieAlgebra> + Send + Sync>;
type Predicate = Arc<dyn Fn(&[Rational]) -> bool + Send + Sync>;

/// A named, parameterized bracket table.
#[derive(Clone)]
pub struct CatalogEntry {
    pub family: Family,
    pub name: String,
    pub arity: usize,
    pub dim: usize,
    pub params: Vec<String>,
    /// Human-readable admissibility rule.
    pub constraint: String,
    /// Parameter values used whenever an entry must be instantiated without
    /// caller input; all admissible.
    pub samples: Vec<Vec<Rational>>,
    pub provenance: String,
    pub note: Option<String>,
    admissible: Predicate,
    builder: Builder,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("family", &self.family)
            .field("name", &self.name)
            .field("arity", &self.arity)
            .field("dim", &self.dim)
            .field("params", &self.params)
            .finish()
    }
}

impl CatalogEntry {
    fn new(
        family: Family,
        name: impl Into<String>,
        arity: usize,
        dim: usize,
        provenance: impl Into<String>,
    ) -> Self {
        CatalogEntry {
            family,
            name: name.into(),
            arity,
            dim,
            params: Vec::new(),
            constraint: String::new(),
            samples: vec![Vec::new()],
            provenance: provenance.into(),
            note: None,
            admissible: Arc::new(|_| true),
            builder: Arc::new(move |_| NLieAlgebra::abelian(arity, dim)),
        }
    }

    fn brackets(mut self, table: impl Fn(&[Rational]) -> Vec<Bracket> + Send + Sync + 'static) -> Self {
        let (n, d) = (self.arity, self.dim);
        self.builder = Arc::new(move |p| build(n, d, table(p)));
        self
    }

    fn params(
        mut self,
        names: &[&str],
        constraint: &str,
        admissible: impl Fn(&[Rational]) -> bool + Send + Sync + 'static,
        samples: Vec<Vec<Rational>>,
    ) -> Self {
        self.params = names.iter().map(|s| s.to_string()).collect();
        self.constraint = constraint.into();
        self.admissible = Arc::new(admissible);
        self.samples = samples;
        self
    }

    fn note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_admissible(&self, params: &[Rational]) -> bool {
        params.len() == self.params.len() && (self.admissible)(params)
    }

    pub fn instantiate(&self, params: &[Rational]) -> Result<NLieAlgebra> {
        if params.len() != self.params.len() {
            return Err(Error::Catalog(format!(
                "{} expects {} parameters, got {}",
                self.name,
                self.params.len(),
                params.len()
            )));
        }
        if !(self.admissible)(params) {
            return Err(Error::Inadmissible(self.describe(params)));
        }
        (self.builder)(params)
    }

    /// Instantiation at the first sample.
    pub fn instance(&self) -> NLieAlgebra {
        self.instantiate(&self.samples[0])
            .expect("samples are admissible")
    }

    pub fn sample_instances(&self) -> Vec<(Vec<Rational>, NLieAlgebra)> {
        self.samples
            .iter()
            .map(|p| (p.clone(), self.instantiate(p).expect("samples are admissible")))
            .collect()
    }

    /// `M6(a=0, b=1)`-style label.
    pub fn describe(&self, params: &[Rational]) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let parts: Vec<String> = self
            .params
            .iter()
            .zip(params)
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        format!("{}({})", self.name, parts.join(", "))
    }

    /// Selector understood by [`find`], without parameters.
    pub fn selector(&self) -> String {
        match self.family {
            Family::Filippov => format!("filippov/n={}/dim={}/{}", self.arity, self.dim, self.name),
            Family::Bai => format!("bai/n={}/{}", self.arity, self.name),
            Family::Lie3 | Family::Lie4 => format!("{}/{}", self.family.key(), self.name),
        }
    }
}

/// `(args, value)` with 1-based indices; value as sparse `(index, coeff)`.
type Bracket = (Vec<usize>, Vec<(usize, Rational)>);

fn build(n: usize, d: usize, table: Vec<Bracket>) -> Result<NLieAlgebra> {
    let mut a = NLieAlgebra::abelian(n, d)?;
    for (args, value) in table {
        let idx: Vec<usize> = args.iter().map(|i| i - 1).collect();
        let mut v = zero_vec(d);
        for (i, c) in value {
            v[i - 1] += c;
        }
        a.set_bracket(&idx, v)?;
    }
    Ok(a)
}

/// `e_from, ..., e_to`, 1-based inclusive; empty when `from > to`.
fn seq(from: usize, to: usize) -> Vec<usize> {
    (from..=to).collect()
}

fn join(parts: &[&[usize]]) -> Vec<usize> {
    parts.concat()
}

fn e(i: usize) -> Vec<(usize, Rational)> {
    vec![(i, Rational::one())]
}

fn c(i: usize, coeff: Rational) -> (usize, Rational) {
    (i, coeff)
}

fn one() -> Rational {
    Rational::one()
}

fn nonzero(p: &[Rational]) -> bool {
    p.iter().all(|x| !x.is_zero())
}

fn samples(rows: &[&[Rational]]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

/// `[e_1, ..., ê_i, ..., e_{m}] = a_i e_i` for `i ≤ r`.
fn diagonal_table(m: usize, r: usize, a: &[Rational]) -> Vec<Bracket> {
    (1..=r)
        .map(|i| {
            let args: Vec<usize> = (1..=m).filter(|&j| j != i).collect();
            (args, vec![c(i, a[i - 1].clone())])
        })
        .collect()
}

fn filippov_provenance(case: &str) -> String {
    format!("Filippov classification of n-Lie algebras of dimension at most n+1, case {case}")
}

/// n-Lie algebras of dimension at most `n+1`.
pub fn list_filippov(n: usize, dim: usize) -> Result<Vec<CatalogEntry>> {
    if n < 2 {
        return Err(Error::UnsupportedArity(n));
    }
    if dim > n + 1 {
        return Err(Error::Catalog(format!(
            "the dimension-at-most-n+1 list covers dim ≤ {}, got {dim}",
            n + 1
        )));
    }
    let f = Family::Filippov;
    if dim < n {
        return Ok(vec![CatalogEntry::new(f, "1", n, dim, filippov_provenance("1"))]);
    }
    if dim == n {
        return Ok(vec![
            CatalogEntry::new(f, "2a", n, dim, filippov_provenance("2(a)")),
            CatalogEntry::new(f, "2b", n, dim, filippov_provenance("2(b)"))
                .brackets(move |_| vec![(seq(1, n), e(1))]),
        ]);
    }
    let mut out = vec![
        CatalogEntry::new(f, "3a", n, dim, filippov_provenance("3(a)")),
        CatalogEntry::new(f, "3b", n, dim, filippov_provenance("3(b)"))
            .brackets(move |_| vec![(seq(2, n + 1), e(1))]),
        CatalogEntry::new(f, "3c", n, dim, filippov_provenance("3(c)"))
            .brackets(move |_| vec![(seq(1, n), e(1))]),
        CatalogEntry::new(f, "3d", n, dim, filippov_provenance("3(d)"))
            .params(
                &["a", "b", "c", "d"],
                "ad - bc ≠ 0",
                |p| &p[0] * &p[3] != &p[1] * &p[2],
                samples(&[
                    &[one(), rat(0), rat(0), one()],
                    &[rat(0), one(), rat(-1), rat(0)],
                    &[one(), one(), rat(0), one()],
                    &[rat(2), one(), one(), one()],
                ]),
            )
            .brackets(move |p| {
                vec![
                    (
                        join(&[&seq(1, n - 1), &[n + 1]]),
                        vec![c(n, p[0].clone()), c(n + 1, p[1].clone())],
                    ),
                    (seq(1, n), vec![c(n, p[2].clone()), c(n + 1, p[3].clone())]),
                ]
            })
            .note("C₂ = α B C₁ B⁻¹ (α ≠ 0, B invertible) gives isomorphic algebras"),
    ];
    for r in 3..=n {
        let names: Vec<String> = (1..=r).map(|i| format!("a{i}")).collect();
        let ones = vec![one(); r];
        let mixed: Vec<Rational> = (1..=r)
            .map(|i| if i % 2 == 0 { rat(-2) } else { rat(i as i64) })
            .collect();
        let mut entry = CatalogEntry::new(f, format!("3e-r{r}"), n, dim, filippov_provenance("3(e)"))
            .params(&[], &format!("a_i ≠ 0, dim D¹ = {r}"), nonzero, vec![ones, mixed])
            .brackets(move |p| diagonal_table(n + 1, r, p))
            .note("brackets omit e_i among all n+1 generators");
        entry.params = names;
        out.push(entry);
    }
    let names: Vec<String> = (1..=n + 1).map(|i| format!("a{i}")).collect();
    let ones = vec![one(); n + 1];
    let signs: Vec<Rational> = (1..=n + 1)
        .map(|i| if i % 2 == 0 { rat(-1) } else { rat(1) })
        .collect();
    let mut simple = CatalogEntry::new(f, "3f", n, dim, filippov_provenance("3(f)"))
        .params(&[], "a_i ≠ 0", nonzero, vec![ones, signs])
        .brackets(move |p| diagonal_table(n + 1, n + 1, p))
        .note("simple");
    simple.params = names;
    out.push(simple);
    Ok(out)
}

fn bai_provenance(case: &str) -> String {
    format!("Bai classification of (n+2)-dimensional n-Lie algebras, case {case}")
}

/// n-Lie algebras of dimension `n+2`.
pub fn list_bai(n: usize) -> Result<Vec<CatalogEntry>> {
    if n < 2 {
        return Err(Error::UnsupportedArity(n));
    }
    let d = n + 2;
    let f = Family::Bai;
    let entry = |label: &str, case: &str| CatalogEntry::new(f, label, n, d, bai_provenance(case));
    // recurring brackets
    let b_2_n1 = move || seq(2, n + 1); // e2..e_{n+1}
    let b_3_n2 = move || seq(3, n + 2); // e3..e_{n+2}
    let b_13_n1 = move || join(&[&[1], &seq(3, n + 1)]); // e1,e3..e_{n+1}
    let b_24_n2 = move || join(&[&[2], &seq(4, n + 2)]); // e2,e4..e_{n+2}
    let b_14_n2 = move || join(&[&[1], &seq(4, n + 2)]); // e1,e4..e_{n+2}
    let alpha = |p: &[Rational]| !p[0].is_zero();
    let alpha_samples = samples(&[&[one()], &[rat(-2)]]);

    let mut out = vec![
        entry("1", "1"),
        entry("2a", "2(a)").brackets(move |_| vec![(b_2_n1(), e(1))]),
        entry("2b", "2(b)").brackets(move |_| vec![(seq(1, n), e(1))]),
        entry("3a", "3(a)").brackets(move |_| vec![(b_2_n1(), e(1)), (b_3_n2(), e(2))]),
        entry("3b", "3(b)").brackets(move |_| vec![(b_2_n1(), e(1)), (b_24_n2(), e(2)), (b_14_n2(), e(1))]),
        entry("3c", "3(c)").brackets(move |_| vec![(b_2_n1(), e(1)), (b_13_n1(), e(2))]),
        entry("3d", "3(d)").brackets(move |_| {
            vec![
                (b_2_n1(), e(1)),
                (b_13_n1(), e(2)),
                (b_24_n2(), e(2)),
                (b_14_n2(), e(1)),
            ]
        }),
        entry("3e", "3(e)")
            .params(&["alpha"], "alpha ≠ 0", alpha, alpha_samples.clone())
            .brackets(move |p| {
                vec![
                    (b_2_n1(), vec![c(1, p[0].clone()), c(2, one())]),
                    (b_13_n1(), e(2)),
                ]
            }),
        entry("3f", "3(f)")
            .params(&["alpha"], "alpha ≠ 0", alpha, alpha_samples)
            .brackets(move |p| {
                vec![
                    (b_2_n1(), vec![c(1, p[0].clone()), c(2, one())]),
                    (b_13_n1(), e(2)),
                    (b_24_n2(), e(2)),
                    (b_14_n2(), e(1)),
                ]
            }),
        entry("3g", "3(g)").brackets(move |_| vec![(b_13_n1(), e(1)), (seq(2, n + 1), e(2))]),
        entry("4a", "4(a)").brackets(move |_| {
            vec![
                (b_2_n1(), e(1)),
                (b_24_n2(), vec![c(2, rat(-1))]),
                (b_3_n2(), e(3)),
            ]
        }),
        entry("4b", "4(b)")
            .params(
                &["alpha"],
                "none stated",
                |_| true,
                samples(&[&[rat(0)], &[one()]]),
            )
            .brackets(move |p| {
                vec![
                    (b_2_n1(), e(1)),
                    (b_3_n2(), vec![c(3, one()), c(2, p[0].clone())]),
                    (b_24_n2(), e(3)),
                    (b_14_n2(), e(1)),
                ]
            })
            .note("no admissibility condition is given for alpha"),
        entry("4c", "4(c)").brackets(move |_| {
            vec![
                (b_2_n1(), e(1)),
                (b_3_n2(), e(3)),
                (b_24_n2(), e(2)),
                (b_14_n2(), vec![c(1, rat(2))]),
            ]
        }),
        entry("4d", "4(d)").brackets(move |_| {
            vec![
                (b_2_n1(), e(1)),
                (b_13_n1(), e(2)),
                (join(&[&[1, 2], &seq(4, n + 1)]), e(3)),
            ]
        }),
        entry("4e", "4(e)")
            .params(
                &["beta"],
                "beta ∉ {0, 1}",
                |p| !p[0].is_zero() && !p[0].is_one(),
                samples(&[&[rat(2)], &[rat(-1)]]),
            )
            .brackets(move |p| {
                vec![
                    (b_14_n2(), e(1)),
                    (b_24_n2(), e(3)),
                    (b_3_n2(), vec![c(2, p[0].clone()), c(3, one() + &p[0])]),
                ]
            }),
        entry("4f", "4(f)").brackets(move |_| vec![(b_14_n2(), e(1)), (b_24_n2(), e(2)), (b_3_n2(), e(3))]),
        entry("4g", "4(g)")
            .params(
                &["s", "t", "u"],
                "none; (s,t,u) ~ (r³s, r²t, ru) for r ≠ 0",
                |_| true,
                samples(&[
                    &[rat(0), rat(0), rat(0)],
                    &[one(), rat(2), rat(3)],
                    &[one(), rat(0), rat(-1)],
                ]),
            )
            .brackets(move |p| {
                vec![
                    (b_14_n2(), e(2)),
                    (b_24_n2(), e(3)),
                    (
                        b_3_n2(),
                        vec![c(1, p[0].clone()), c(2, p[1].clone()), c(3, p[2].clone())],
                    ),
                ]
            }),
    ];
    for r in 4..=n + 1 {
        // over e2..e_{n+2}: omitting e_{n+2} gives e1, omitting e_i gives e_i
        out.push(entry(&format!("5a-r{r}"), "5(a)").brackets(move |_| {
            let gens = seq(2, n + 2);
            let omit = |k: usize| gens.iter().copied().filter(|&j| j != k).collect::<Vec<_>>();
            let mut t = vec![(omit(n + 2), e(1))];
            t.extend((2..=r).map(|i| (omit(i), e(i))));
            t
        }));
        out.push(
            entry(&format!("5b-r{r}"), "5(b)").brackets(move |_| diagonal_table(n + 1, r, &vec![one(); r])),
        );
    }
    Ok(out)
}

fn lie(family: Family, name: &str, dim: usize, provenance: &str) -> CatalogEntry {
    CatalogEntry::new(family, name, 2, dim, provenance)
}

/// 3-dimensional real Lie algebras.
pub fn list_lie3() -> Vec<CatalogEntry> {
    let p = "3-dimensional Lie algebras (Patera et al. list)";
    let f = Family::Lie3;
    vec![
        lie(f, "abelian", 3, p),
        lie(f, "L(3,-1)", 3, p).brackets(|_| vec![(vec![1, 2], e(1))]),
        lie(f, "L(3,1)", 3, p).brackets(|_| vec![(vec![1, 2], e(3))]),
        lie(f, "L(3,2)", 3, p)
            .params(
                &["a"],
                "0 < |a| ≤ 1",
                |q| !q[0].is_zero() && q[0].abs() <= one(),
                samples(&[&[one()], &[rat(-1)], &[ratio(1, 2)]]),
            )
            .brackets(|q| vec![(vec![1, 3], e(1)), (vec![2, 3], vec![c(2, q[0].clone())])]),
        lie(f, "L(3,3)", 3, p)
            .brackets(|_| vec![(vec![1, 3], e(1)), (vec![2, 3], vec![c(1, one()), c(2, one())])]),
        lie(f, "L(3,4)", 3, p)
            .params(
                &["a"],
                "a ≥ 0",
                |q| !q[0].is_negative(),
                samples(&[&[rat(0)], &[one()]]),
            )
            .brackets(|q| {
                vec![
                    (vec![1, 3], vec![c(1, q[0].clone()), c(2, rat(-1))]),
                    (vec![2, 3], vec![c(1, one()), c(2, q[0].clone())]),
                ]
            }),
        lie(f, "L(3,5)", 3, p).brackets(|_| {
            vec![
                (vec![1, 2], e(1)),
                (vec![1, 3], vec![c(2, rat(-2))]),
                (vec![2, 3], e(3)),
            ]
        }),
        lie(f, "L(3,6)", 3, p)
            .brackets(|_| {
                vec![
                    (vec![1, 2], e(3)),
                    (vec![1, 3], vec![c(2, rat(-1))]),
                    (vec![2, 3], e(1)),
                ]
            })
            .note("over ℂ: L(3,5) ≅ L(3,6) and L(3,2,(x−i)/(x+i)) ≅ L(3,4,x)"),
    ]
}

/// Solvable 4-dimensional Lie algebras M¹ to M¹⁴, without M¹⁰.
pub fn list_lie4_solvable() -> Vec<CatalogEntry> {
    let p = "solvable 4-dimensional Lie algebras (de Graaf list)";
    let f = Family::Lie4;
    vec![
        lie(f, "abelian", 4, p).note("M¹"),
        lie(f, "M2", 4, p).brackets(|_| vec![(vec![1, 4], e(1)), (vec![2, 4], e(2)), (vec![3, 4], e(3))]),
        lie(f, "M3", 4, p)
            .params(
                &["a"],
                "none stated",
                |_| true,
                samples(&[&[rat(0)], &[rat(2)], &[rat(-1)]]),
            )
            .brackets(|q| {
                vec![
                    (vec![1, 4], e(1)),
                    (vec![2, 4], e(3)),
                    (vec![3, 4], vec![c(2, -q[0].clone()), c(3, &q[0] + one())]),
                ]
            }),
        lie(f, "M4", 4, p).brackets(|_| vec![(vec![2, 4], e(3)), (vec![3, 4], e(3))]),
        lie(f, "M5", 4, p).brackets(|_| vec![(vec![2, 4], e(3))]),
        lie(f, "M6", 4, p)
            .params(
                &["a", "b"],
                "none stated",
                |_| true,
                samples(&[&[rat(0), one()], &[one(), one()], &[rat(2), rat(-1)]]),
            )
            .brackets(|q| {
                vec![
                    (vec![1, 4], e(2)),
                    (vec![2, 4], e(3)),
                    (
                        vec![3, 4],
                        vec![c(1, q[0].clone()), c(2, q[1].clone()), c(3, one())],
                    ),
                ]
            }),
        lie(f, "M7", 4, p)
            .params(
                &["a", "b"],
                "a = b ≠ 0, or a = 0, or b = 0",
                |q| q[0].is_zero() || q[1].is_zero() || q[0] == q[1],
                samples(&[&[rat(0), one()], &[one(), one()], &[one(), rat(0)]]),
            )
            .brackets(|q| {
                vec![
                    (vec![1, 4], e(2)),
                    (vec![2, 4], e(3)),
                    (vec![3, 4], vec![c(1, q[0].clone()), c(2, q[1].clone())]),
                ]
            }),
        lie(f, "M8", 4, p).brackets(|_| vec![(vec![1, 2], e(2)), (vec![3, 4], e(4))]),
        lie(f, "M9", 4, p)
            .params(
                &["a"],
                "X² − X − a has no rational root",
                |q| !is_rational_square(&(rat(1) + rat(4) * &q[0])),
                samples(&[&[one()], &[rat(-1)]]),
            )
            .brackets(|q| {
                vec![
                    (vec![1, 4], vec![c(1, one()), c(2, q[0].clone())]),
                    (vec![2, 4], e(1)),
                    (vec![1, 3], e(1)),
                    (vec![2, 3], e(2)),
                ]
            }),
        lie(f, "M11", 4, p)
            .brackets(|_| vec![(vec![1, 4], e(1)), (vec![2, 4], e(2)), (vec![1, 3], e(2))])
            .note("the variant with [e3,e4] = e3 in place of [e2,e4] = e2 violates the Jacobi identity"),
        lie(f, "M12", 4, p)
            .brackets(|_| {
                vec![
                    (vec![1, 4], e(1)),
                    (vec![2, 4], vec![c(2, rat(2))]),
                    (vec![3, 4], e(3)),
                    (vec![1, 3], e(2)),
                ]
            })
            .note("the variant with [e2,e4] = e2 violates the Jacobi identity"),
        lie(f, "M13", 4, p)
            .params(&["a"], "none stated", |_| true, samples(&[&[rat(0)], &[one()]]))
            .brackets(|q| {
                vec![
                    (vec![1, 4], vec![c(1, one()), c(3, q[0].clone())]),
                    (vec![2, 4], e(2)),
                    (vec![3, 4], e(1)),
                    (vec![1, 3], e(2)),
                ]
            }),
        lie(f, "M14", 4, p)
            .params(
                &["a"],
                "none; a ~ α²a for α ≠ 0",
                |_| true,
                samples(&[&[rat(0)], &[one()], &[rat(-1)]]),
            )
            .brackets(|q| {
                vec![
                    (vec![1, 4], vec![c(3, q[0].clone())]),
                    (vec![3, 4], e(1)),
                    (vec![1, 3], e(2)),
                ]
            }),
    ]
}

fn gl2_entry() -> CatalogEntry {
    lie(
        Family::Lie4,
        "gl2",
        4,
        "gl2(K), the 4-dimensional reductive Lie algebra",
    )
    .brackets(|_| {
        vec![
            (vec![1, 2], vec![c(2, rat(2))]),
            (vec![1, 3], vec![c(3, rat(-2))]),
            (vec![2, 3], e(1)),
        ]
    })
    .note("not solvable; e4 spans the center")
}

/// `[e1,e2] = 2e2, [e1,e3] = -2e3, [e2,e3] = e1` on `K⁴`.
pub fn gl2() -> NLieAlgebra {
    gl2_entry().instance()
}

/// Every entry of a family; Filippov lists all dimensions up to `n+1`.
pub fn family_entries(family: Family, n: usize) -> Result<Vec<CatalogEntry>> {
    Ok(match family {
        Family::Filippov => {
            let mut out = Vec::new();
            for dim in 1..=n + 1 {
                out.extend(list_filippov(n, dim)?);
            }
            out
        }
        Family::Bai => list_bai(n)?,
        Family::Lie3 => list_lie3(),
        Family::Lie4 => {
            let mut v = list_lie4_solvable();
            v.push(gl2_entry());
            v
        }
    })
}

/// Looks up an entry by label; `dim` disambiguates Filippov case 1.
pub fn find(family: Family, n: Option<usize>, dim: Option<usize>, label: &str) -> Result<CatalogEntry> {
    let n = match family {
        Family::Lie3 | Family::Lie4 => 2,
        _ => n.ok_or_else(|| Error::Catalog(format!("{} needs n=", family.key())))?,
    };
    let entries = match (family, dim) {
        (Family::Filippov, Some(dim)) => list_filippov(n, dim)?,
        (Family::Filippov, None) if label == "1" => list_filippov(n, n.saturating_sub(1))?,
        _ => family_entries(family, n)?,
    };
    entries
        .into_iter()
        .find(|e| e.name == label && dim.is_none_or(|d| d == e.dim))
        .ok_or_else(|| Error::Catalog(format!("no entry {label} in {}", family.key())))
}

/// First-sample instance of a 4-dimensional Lie entry.
pub fn lie4(name: &str) -> NLieAlgebra {
    find(Family::Lie4, None, None, name)
        .expect("known entry")
        .instance()
}

/// The simple `(n+1)`-dimensional n-Lie algebra with all `a_i = 1`.
pub fn filippov_simple(n: usize) -> NLieAlgebra {
    find(Family::Filippov, Some(n), Some(n + 1), "3f")
        .expect("known entry")
        .instance()
}

/// First-sample instance of a Bai entry.
pub fn bai_instance(n: usize, label: &str) -> NLieAlgebra {
    find(Family::Bai, Some(n), None, label)
        .expect("known entry")
        .instance()
}

/// The test corpus: Lie algebras of dimension 3 and 4 and the n-Lie lists
/// for `n = 3`, at every sample.
pub fn corpus() -> Vec<(String, NLieAlgebra)> {
    let mut entries = list_lie3();
    entries.extend(family_entries(Family::Lie4, 2).expect("lie4"));
    entries.extend(family_entries(Family::Filippov, 3).expect("n = 3"));
    entries.extend(list_bai(3).expect("n = 3"));
    entries
        .iter()
        .flat_map(|e| {
            e.sample_instances()
                .into_iter()
                .map(move |(p, a)| (format!("{}/{}", e.family.key(), e.describe(&p)), a))
        })
        .collect()
}

/// Output of the recognition criterion: `A = induce(reduced, trace)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionResult {
    pub pivot: usize,
    pub reduced: NLieAlgebra,
    pub trace: TraceMap,
}

/// Looks, in the given basis, for a basis vector `e_p` lying in every
/// nonzero bracket key and absent from every bracket value. Then `A` is
/// induced by `[e_p, ·, ..., ·]` with the trace `x ↦ x_p`.
///
/// `None` means only that this criterion fails in this basis.
pub fn recognize_induced(a: &NLieAlgebra) -> Result<Option<RecognitionResult>> {
    if a.arity() < 3 {
        return Err(Error::UnsupportedArity(a.arity()));
    }
    let violations = a.check_fundamental_identity().len();
    if violations > 0 {
        return Err(Error::NotNLie(violations));
    }
    for pivot in 0..a.dim() {
        let in_keys = a.table().iter().all(|(k, _)| k.contains(&pivot));
        let off_values = a.table().iter().all(|(_, v)| v[pivot].is_zero());
        if !(in_keys && off_values) {
            continue;
        }
        let reduced = a.fix_element(&unit_vec(a.dim(), pivot))?;
        let trace = TraceMap::new(unit_vec(a.dim(), pivot));
        if induce(&reduced, &trace)? == *a {
            return Ok(Some(RecognitionResult {
                pivot,
                reduced,
                trace,
            }));
        }
        return Err(Error::CrossCheck(format!(
            "pivot e{} passes the criterion but the round trip fails",
            pivot + 1
        )));
    }
    Ok(None)
}

/// True when `D²(A) ≠ 0`, which rules out `A` being induced.
pub fn can_be_induced_obstruction(a: &NLieAlgebra) -> bool {
    !second_derived(a).is_zero()
}

/// Isomorphism invariants used for necessary-condition matching.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantSignature {
    pub dim: usize,
    pub arity: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub solvability_class: Option<usize>,
    pub nilpotency_class: Option<usize>,
    pub derivations_dim: usize,
    pub h1_dim: usize,
}

pub fn invariant_signature(a: &NLieAlgebra) -> InvariantSignature {
    let h1 = cohomology_dims(a, 1, Coefficients::Adjoint).expect("degree 1 is supported");
    InvariantSignature {
        dim: a.dim(),
        arity: a.arity(),
        derived_dim: derived_algebra(a).dim(),
        center_dim: center(a).dim(),
        solvability_class: solvability_class(a),
        nilpotency_class: nilpotency_class(a),
        derivations_dim: h1.cocycles,
        h1_dim: h1.cohomology,
    }
}

/// Entries with a sample whose signature equals that of `a`. A match is
/// necessary for isomorphism, not sufficient.
pub fn signature_match<'a>(
    a: &NLieAlgebra,
    entries: &'a [CatalogEntry],
) -> Vec<(&'a CatalogEntry, Vec<Rational>)> {
    let target = invariant_signature(a);
    let mut out = Vec::new();
    for entry in entries
        .iter()
        .filter(|e| e.arity == a.arity() && e.dim == a.dim())
    {
        for (p, inst) in entry.sample_instances() {
            if invariant_signature(&inst) == target {
                out.push((entry, p));
                break;
            }
        }
    }
    out
}

/// The case of the dimension-at-most-n+1 classification an algebra must
/// belong to, read off from `dim`, `dim D¹` and whether `D¹` is central.
pub fn filippov_case(a: &NLieAlgebra) -> Result<&'static str> {
    let n = a.arity();
    let d = a.dim();
    if d > n + 1 {
        return Err(Error::Catalog(format!("dimension {d} exceeds n+1 = {}", n + 1)));
    }
    if !a.is_nlie() {
        return Err(Error::NotNLie(a.check_fundamental_identity().len()));
    }
    if d < n {
        return Ok("1");
    }
    let derived = derived_algebra(a);
    if d == n {
        return Ok(if derived.is_zero() { "2a" } else { "2b" });
    }
    Ok(match derived.dim() {
        0 => "3a",
        1 if derived.is_subspace_of(&center(a))? => "3b",
        1 => "3c",
        2 => "3d",
        k if k == n + 1 => "3f",
        _ => "3e",
    })
}

/// How a table row was confirmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessStatus {
    /// `induce(L, τ)` equals the row's algebra structure constant for
    /// structure constant.
    Exact,
    /// Equal after the recorded change of basis (columns are the new basis).
    BasisChange(Matrix),
    /// Same classification case by invariants; not an isomorphism proof.
    Invariants,
    /// No trace tried produces the row's case.
    Unmatched,
}

impl WitnessStatus {
    pub fn verified(&self) -> bool {
        !matches!(self, WitnessStatus::Unmatched)
    }

    pub fn label(&self) -> &'static str {
        match self {
            WitnessStatus::Exact => "exact",
            WitnessStatus::BasisChange(_) => "basis change",
            WitnessStatus::Invariants => "invariants",
            WitnessStatus::Unmatched => "unverified",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RowSource {
    pub lie: String,
    pub algebra: NLieAlgebra,
    pub witness: Option<TraceMap>,
    /// The trace was given alongside the example rather than searched.
    pub supplied: bool,
    pub status: WitnessStatus,
    /// Case reached by the witness, or the cases reached by all candidates.
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct InducedByRow {
    /// Case label in the dimension-at-most-n+1 list for n = 3.
    pub case: String,
    pub target: NLieAlgebra,
    pub sources: Vec<RowSource>,
}

/// Trace candidates in search order: basis vectors of the trace space,
/// their sum, then pairwise sums.
pub fn witness_candidates(a: &NLieAlgebra) -> Vec<TraceMap> {
    let basis = trace_space(a).basis().to_vec();
    let mut out: Vec<Vector> = basis.clone();
    if basis.len() > 1 {
        let mut sum = zero_vec(a.dim());
        for b in &basis {
            crate::linalg::axpy(&mut sum, &one(), b);
        }
        out.push(sum);
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                out.push(crate::linalg::add_vec(&basis[i], &basis[j]));
            }
        }
    }
    let mut seen = Vec::new();
    for v in out {
        if !seen.contains(&v) {
            seen.push(v);
        }
    }
    seen.into_iter().map(TraceMap::new).collect()
}

fn confirm(
    lie: String,
    algebra: NLieAlgebra,
    case: &str,
    target: &NLieAlgebra,
    supplied: Option<TraceMap>,
) -> RowSource {
    if let Some(t) = supplied {
        let induced = induce(&algebra, &t).expect("supplied witness is a trace");
        let status = if &induced == target {
            WitnessStatus::Exact
        } else if filippov_case(&induced).ok() == Some(case) {
            WitnessStatus::Invariants
        } else {
            WitnessStatus::Unmatched
        };
        let detail = format!("case {}", filippov_case(&induced).unwrap_or("?"));
        return RowSource {
            lie,
            algebra,
            witness: Some(t),
            supplied: true,
            status,
            detail,
        };
    }
    let candidates = witness_candidates(&algebra);
    let induced: Vec<(TraceMap, NLieAlgebra)> = candidates
        .into_iter()
        .map(|t| {
            let i = induce(&algebra, &t).expect("candidates are traces");
            (t, i)
        })
        .collect();
    if let Some((t, _)) = induced.iter().find(|(_, i)| i == target) {
        return RowSource {
            lie,
            algebra,
            witness: Some(t.clone()),
            supplied: false,
            status: WitnessStatus::Exact,
            detail: format!("case {case}"),
        };
    }
    if let Some((t, _)) = induced.iter().find(|(_, i)| filippov_case(i).ok() == Some(case)) {
        return RowSource {
            lie,
            algebra,
            witness: Some(t.clone()),
            supplied: false,
            status: WitnessStatus::Invariants,
            detail: format!("case {case}"),
        };
    }
    let mut reached: Vec<&str> = induced
        .iter()
        .map(|(_, i)| filippov_case(i).unwrap_or("?"))
        .collect();
    reached.sort_unstable();
    reached.dedup();
    RowSource {
        lie,
        algebra,
        witness: None,
        supplied: false,
        status: WitnessStatus::Unmatched,
        detail: format!("candidates reach cases {}", reached.join(", ")),
    }
}

fn trace_from(d: usize, idx: &[usize]) -> TraceMap {
    let mut v = zero_vec(d);
    for &i in idx {
        v[i - 1] = one();
    }
    TraceMap::new(v)
}

/// The basis `(e1, e2+e3, e2−e3, e4)` carrying `induce(gl2, x4)` to case
/// 3(e) with `a = (−2, 2, 2)`.
pub fn gl2_basis_change() -> Matrix {
    Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 1, 0], &[0, 1, -1, 0], &[0, 0, 0, 1]])
}

/// The 3-Lie algebras of dimension 3 and 4 that are induced by Lie
/// algebras, each with Lie algebras inducing it and a witness trace.
pub fn induced_by_table() -> Vec<InducedByRow> {
    let lie4_at = |name: &str, p: &[Rational]| -> (String, NLieAlgebra) {
        let entry = find(Family::Lie4, None, None, name).expect("known entry");
        (entry.describe(p), entry.instantiate(p).expect("admissible"))
    };
    let filippov =
        |dim: usize, label: &str| find(Family::Filippov, Some(3), Some(dim), label).expect("known entry");
    let src = |(name, a): (String, NLieAlgebra),
               case: &str,
               target: &NLieAlgebra,
               supplied: Option<TraceMap>| { confirm(name, a, case, target, supplied) };

    let mut rows = Vec::new();

    let t = filippov(3, "2b").instance();
    let l31 = find(Family::Lie3, None, None, "L(3,-1)").expect("known entry");
    rows.push(InducedByRow {
        case: "2b".into(),
        sources: vec![src((l31.name.clone(), l31.instance()), "2b", &t, None)],
        target: t,
    });

    let t = filippov(4, "3c").instance();
    let sources = vec![
        src(lie4_at("M3", &[rat(0)]), "3c", &t, None),
        src(lie4_at("M3", &[rat(2)]), "3c", &t, None),
        src(lie4_at("M4", &[]), "3c", &t, Some(trace_from(4, &[1, 2, 4]))),
    ];
    rows.push(InducedByRow {
        case: "3c".into(),
        target: t,
        sources,
    });

    let t = filippov(4, "3b").instance();
    let sources = vec![
        src(lie4_at("M5", &[]), "3b", &t, Some(trace_from(4, &[1]))),
        src(lie4_at("M12", &[]), "3b", &t, None),
        src(lie4_at("M13", &[one()]), "3b", &t, None),
        src(lie4_at("M14", &[one()]), "3b", &t, None),
        src(lie4_at("M14", &[rat(0)]), "3b", &t, None),
    ];
    rows.push(InducedByRow {
        case: "3b".into(),
        target: t,
        sources,
    });

    let t = filippov(4, "3d").instance();
    let sources = vec![
        src(lie4_at("M6", &[rat(0), one()]), "3d", &t, None),
        src(lie4_at("M7", &[rat(0), one()]), "3d", &t, None),
        src(lie4_at("M8", &[]), "3d", &t, Some(trace_from(4, &[1, 3]))),
        src(lie4_at("M9", &[one()]), "3d", &t, None),
        src(lie4_at("M11", &[]), "3d", &t, None),
        src(lie4_at("M13", &[rat(0)]), "3d", &t, None),
    ];
    rows.push(InducedByRow {
        case: "3d".into(),
        target: t,
        sources,
    });

    let entry = filippov(4, "3e-r3");
    let t = entry.instantiate(&[rat(-2), rat(2), rat(2)]).expect("admissible");
    let g = gl2();
    let tau = trace_from(4, &[4]);
    let induced = induce(&g, &tau).expect("x4 is a trace of gl2");
    let p = gl2_basis_change();
    let status = if induced.change_basis(&p).ok().as_ref() == Some(&t) {
        WitnessStatus::BasisChange(p)
    } else if filippov_case(&induced).ok() == Some("3e") {
        WitnessStatus::Invariants
    } else {
        WitnessStatus::Unmatched
    };
    rows.push(InducedByRow {
        case: "3e".into(),
        sources: vec![RowSource {
            lie: "gl2".into(),
            algebra: g,
            witness: Some(tau),
            supplied: true,
            status,
            detail: "case 3e".into(),
        }],
        target: t,
    });
    rows
}
