use std::fs;
use std::path::{Path, PathBuf};

use nlie::catalog::{self, can_be_induced_obstruction, invariant_signature, recognize_induced};
use nlie::cohomology::{
    coboundary_space, cochain1_from_coords, cocycle_space, cohomology_dims, Coefficients,
};
use nlie::extensions::{central_extend, induce_extension, is_trivial_extension};
use nlie::induction::trace_space;
use nlie::reproduce;
use nlie::structure::{
    center, central_series, derived_algebra, derived_series, second_derived, SeriesReport,
};
use nlie::{induce, MultiIndex, NLieAlgebra, Rational, SkewMap, Subspace, TraceMap, Vector};
use num_traits::Zero;
use serde_json::json;

use crate::file::{default_names, format_vector, AlgebraFile, Loaded};
use crate::report::Report;
use crate::syntax::{parse_form, parse_selector, parse_trace, resolve_selector};
use crate::CliError;

pub struct Input {
    pub bytes: Vec<u8>,
    pub loaded: Loaded,
}

pub fn read_input(path: &Path) -> Result<Input, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Parse(format!("{}: not UTF-8", path.display())))?;
    let loaded = AlgebraFile::load(&text).map_err(|e| match e {
        CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        other => other,
    })?;
    Ok(Input { bytes, loaded })
}

fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn basis_strings(s: &Subspace, names: &[String]) -> Vec<String> {
    s.basis().iter().map(|v| format_vector(v, names)).collect()
}

fn fi_check(report: &mut Report, a: &NLieAlgebra, label: &str) {
    let violations = a.check_fundamental_identity();
    let detail = violations
        .first()
        .map(|v| {
            format!(
                "{} violations, first at x = {:?}, y = {:?}",
                violations.len(),
                v.x.iter().map(|i| i + 1).collect::<Vec<_>>(),
                v.y.iter().map(|i| i + 1).collect::<Vec<_>>()
            )
        })
        .unwrap_or_default();
    report.check(label, violations.is_empty(), detail);
}

fn require_nlie(a: &NLieAlgebra) -> Result<(), CliError> {
    let violations = a.check_fundamental_identity();
    match violations.first() {
        None => Ok(()),
        Some(v) => Err(CliError::Compute(nlie::Error::Precondition(format!(
            "input violates the fundamental identity ({} violations, first at x = {:?}, y = {:?})",
            violations.len(),
            v.x.iter().map(|i| i + 1).collect::<Vec<_>>(),
            v.y.iter().map(|i| i + 1).collect::<Vec<_>>()
        )))),
    }
}

fn algebra_json(a: &NLieAlgebra, names: &[String]) -> serde_json::Value {
    let custom = names != default_names(a.dim()).as_slice();
    serde_json::to_value(AlgebraFile::from_algebra(a, custom.then_some(names))).expect("serializable")
}

/// `[e1,e2]=2e2; ...` with the file's basis names.
fn bracket_line(a: &NLieAlgebra, names: &[String]) -> String {
    if a.is_abelian() {
        return a.to_string();
    }
    a.table()
        .iter()
        .map(|(k, v)| {
            let args: Vec<&str> = k.iter().map(|&i| names[i].as_str()).collect();
            format!("[{}]={}", args.join(","), format_vector(v, names))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn emit_algebra(
    report: &mut Report,
    a: &NLieAlgebra,
    names: &[String],
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let custom = names != default_names(a.dim()).as_slice();
    let file = AlgebraFile::from_algebra(a, custom.then_some(names));
    report.set("brackets", bracket_line(a, names));
    match out {
        Some(path) => {
            write_output(path, &file.to_json())?;
            report.set("written", path.display().to_string());
        }
        None => report.set("algebra", algebra_json(a, names)),
    }
    Ok(())
}

pub fn check(path: &Path, canonical: Option<&PathBuf>) -> Result<Report, CliError> {
    let input = read_input(path)?;
    let a = &input.loaded.algebra;
    let mut r = Report::new("check", Some(&input.bytes));
    if let Some(out) = canonical {
        let custom = input.loaded.names != default_names(a.dim());
        write_output(
            out,
            &AlgebraFile::from_algebra(a, custom.then_some(&input.loaded.names[..])).to_json(),
        )?;
    }
    r.set("arity", a.arity());
    r.set("dim", a.dim());
    r.set("nonzero_brackets", a.table().len());
    r.set("brackets", bracket_line(a, &input.loaded.names));
    fi_check(&mut r, a, "fundamental identity");
    r.check(
        "arguments in increasing order",
        input.loaded.reordered.is_empty(),
        input.loaded.reordered.join("; "),
    );
    Ok(r)
}

pub fn traces(path: &Path) -> Result<Report, CliError> {
    let input = read_input(path)?;
    let a = &input.loaded.algebra;
    let mut r = Report::new("traces", Some(&input.bytes));
    let space = trace_space(a);
    let xs = default_names(a.dim())
        .iter()
        .map(|n| n.replacen('e', "x", 1))
        .collect::<Vec<_>>();
    r.set("dim", space.dim());
    r.set("basis", basis_strings(&space, &xs));
    Ok(r)
}

pub fn induce_cmd(path: &Path, expr: &str, out: Option<&PathBuf>) -> Result<Report, CliError> {
    let input = read_input(path)?;
    let a = &input.loaded.algebra;
    require_nlie(a)?;
    let tau = TraceMap::for_algebra(a, parse_trace(expr, a.dim())?)?;
    let induced = induce(a, &tau)?;
    let mut r = Report::new(format!("induce --trace {expr}"), Some(&input.bytes));
    r.set("arity", induced.arity());
    emit_algebra(&mut r, &induced, &input.loaded.names, out)?;
    fi_check(
        &mut r,
        &induced,
        "induced algebra satisfies the fundamental identity",
    );
    r.check(
        "second derived algebra vanishes",
        second_derived(&induced).is_zero(),
        "",
    );
    Ok(r)
}

fn series_json(s: &SeriesReport) -> serde_json::Value {
    json!({
        "dims": s.terms.iter().map(Subspace::dim).collect::<Vec<_>>(),
        "stabilized": s.stabilized,
        "class": s.class,
    })
}

pub fn structure(path: &Path) -> Result<Report, CliError> {
    let input = read_input(path)?;
    let a = &input.loaded.algebra;
    let names = &input.loaded.names;
    require_nlie(a)?;
    let mut r = Report::new("structure", Some(&input.bytes));
    let full = Subspace::full(a.dim());
    let d1 = derived_algebra(a);
    r.set("derived_algebra", basis_strings(&d1, names));
    r.set("derived_series", series_json(&derived_series(a, &full, None)?));
    r.set("central_series", series_json(&central_series(a, &full, None)?));
    r.set("center", basis_strings(&center(a), names));
    let sig = invariant_signature(a);
    r.set(
        "signature",
        json!({
            "dim": sig.dim,
            "arity": sig.arity,
            "derived_dim": sig.derived_dim,
            "center_dim": sig.center_dim,
            "solvability_class": sig.solvability_class,
            "nilpotency_class": sig.nilpotency_class,
            "derivations_dim": sig.derivations_dim,
            "h1_dim": sig.h1_dim,
        }),
    );
    r.check(
        "derived algebra is an ideal",
        nlie::structure::is_ideal(a, &d1)?,
        "",
    );
    Ok(r)
}

/// Scalar 2-cochains come out in the `--cocycle` syntax.
fn render_cochain(
    a: &NLieAlgebra,
    names: &[String],
    degree: usize,
    coeff: Coefficients,
    coords: &[Rational],
) -> Result<String, CliError> {
    let (n, d) = (a.arity(), a.dim());
    let args = |k: &MultiIndex| k.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(",");
    let parts: Vec<String> = match (degree, coeff) {
        (1, Coefficients::Scalar) => {
            let xs: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
            vec![format_vector(coords, &xs)]
        }
        (1, Coefficients::Adjoint) => {
            let f = cochain1_from_coords(d, coords);
            (0..d)
                .map(|j| (j, f.column(j)))
                .filter(|(_, c)| c.iter().any(|x| !x.is_zero()))
                .map(|(j, c)| format!("{} -> {}", names[j], format_vector(&c, names)))
                .collect()
        }
        (_, Coefficients::Scalar) => SkewMap::<Rational>::from_coords(n, d, coords)?
            .iter()
            .map(|(k, v)| {
                let idx: Vec<String> = k.iter().map(|i| (i + 1).to_string()).collect();
                format!("[{}]={v}", idx.join(","))
            })
            .collect(),
        (_, Coefficients::Adjoint) => SkewMap::<Vector>::from_coords(n, d, coords)?
            .iter()
            .map(|(k, v)| format!("[{}] -> {}", args(k), format_vector(v, names)))
            .collect(),
    };
    Ok(if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    })
}

pub fn cohomology(path: &Path, degree: usize, coeff: Coefficients, basis: bool) -> Result<Report, CliError> {
    let input = read_input(path)?;
    let a = &input.loaded.algebra;
    require_nlie(a)?;
    let label = match coeff {
        Coefficients::Adjoint => "adjoint",
        Coefficients::Scalar => "scalar",
    };
    let mut r = Report::new(
        format!("cohomology --degree {degree} --coefficients {label}"),
        Some(&input.bytes),
    );
    let dims = cohomology_dims(a, degree, coeff)?;
    r.set("cocycles", dims.cocycles);
    r.set("coboundaries", dims.coboundaries);
    r.set("cohomology", dims.cohomology);
    if basis {
        let names = &input.loaded.names;
        let render = |s: Subspace| -> Result<Vec<String>, CliError> {
            s.basis()
                .iter()
                .map(|v| render_cochain(a, names, degree, coeff, v))
                .collect()
        };
        r.set("cocycle_basis", render(cocycle_space(a, degree, coeff)?)?);
        r.set("coboundary_basis", render(coboundary_space(a, degree, coeff)?)?);
    }
    r.check(
        "coboundaries lie in the cocycles",
        dims.coboundaries <= dims.cocycles,
        "",
    );
    Ok(r)
}

pub fn extend(
    path: &Path,
    expr: &str,
    trace: Option<&str>,
    out: Option<&PathBuf>,
) -> Result<Report, CliError> {
    let input = read_input(path)?;
    let a = &input.loaded.algebra;
    require_nlie(a)?;
    let omega = parse_form(expr, a.arity(), a.dim())?;
    let mut command = format!("extend --cocycle {expr}");
    let mut names = input.loaded.names.clone();
    names.push(if names.iter().any(|n| n == "c") {
        format!("e{}", a.dim() + 1)
    } else {
        "c".into()
    });
    let ext = match trace {
        None => central_extend(a, &omega)?,
        Some(t) => {
            command.push_str(&format!(" --trace {t}"));
            let tau = TraceMap::for_algebra(a, parse_trace(t, a.dim())?)?;
            induce_extension(a, &tau, &omega)?
        }
    };
    let mut r = Report::new(command, Some(&input.bytes));
    r.set("central_element", names[ext.central_index].clone());
    let trivial = is_trivial_extension(&ext.base, &ext.omega)?;
    r.set("trivial", trivial);
    emit_algebra(&mut r, &ext.total, &names, out)?;
    fi_check(&mut r, &ext.total, "extension satisfies the fundamental identity");
    if trace.is_some() {
        r.check(
            "inducing commutes with extending",
            true,
            "verified bracket by bracket",
        );
    }
    Ok(r)
}

pub fn recognize(path: &Path) -> Result<Report, CliError> {
    let input = read_input(path)?;
    let a = &input.loaded.algebra;
    require_nlie(a)?;
    let mut r = Report::new("recognize", Some(&input.bytes));
    let obstruction = can_be_induced_obstruction(a);
    r.set("obstruction", obstruction);
    match recognize_induced(a)? {
        Some(res) => {
            let names = &input.loaded.names;
            r.set("recognized", true);
            r.set("pivot", names[res.pivot].clone());
            let xs: Vec<String> = (1..=names.len()).map(|i| format!("x{i}")).collect();
            r.set("trace", format_vector(res.trace.coeffs(), &xs));
            r.set("reduced", bracket_line(&res.reduced, names));
            r.set("reduced_algebra", algebra_json(&res.reduced, names));
            let round_trip = induce(&res.reduced, &res.trace)? == *a;
            r.check("round trip reproduces the input", round_trip, "");
        }
        None => {
            r.set("recognized", false);
            r.set(
                "verdict",
                if obstruction {
                    "not induced: the derived algebra is not abelian"
                } else {
                    "criterion fails in this basis; undecided"
                },
            );
        }
    }
    Ok(r)
}

fn file_stem(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect::<String>()
        .trim_matches('_')
        .to_string()
}

pub fn catalog_cmd(selector: &str, out_dir: Option<&PathBuf>) -> Result<Report, CliError> {
    let sel = parse_selector(selector)?;
    let resolved = resolve_selector(&sel)?;
    let mut r = Report::new(format!("catalog {selector}"), Some(selector.as_bytes()));
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    let mut entries = Vec::new();
    for (entry, param_sets) in resolved {
        for params in param_sets {
            let a = entry.instantiate(&params)?;
            let label = entry.describe(&params);
            let fi = a.is_nlie();
            r.check(format!("{label} satisfies the fundamental identity"), fi, "");
            let file = AlgebraFile::from_algebra(&a, None);
            let mut item = json!({
                "entry": label,
                "selector": entry.selector(),
                "arity": entry.arity,
                "dim": entry.dim,
                "params": entry.params.iter().zip(&params).map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>(),
                "constraint": entry.constraint,
                "provenance": entry.provenance,
                "note": entry.note,
                "brackets": a.to_string(),
            });
            match out_dir {
                Some(dir) => {
                    let name = format!(
                        "{}_n{}_{}.json",
                        entry.family.key(),
                        entry.arity,
                        file_stem(&label)
                    );
                    let path = dir.join(name);
                    write_output(&path, &file.to_json())?;
                    item["written"] = json!(path.display().to_string());
                }
                None => item["algebra"] = serde_json::to_value(&file).expect("serializable"),
            }
            entries.push(item);
        }
    }
    r.set("count", entries.len());
    r.set("entries", entries);
    Ok(r)
}

pub fn reproduce_cmd(only: &[usize]) -> Result<Report, CliError> {
    let ids: Vec<usize> = if only.is_empty() {
        (1..=reproduce::CRITERIA.len()).collect()
    } else {
        only.to_vec()
    };
    let command = if only.is_empty() {
        "reproduce".to_string()
    } else {
        format!(
            "reproduce --only {}",
            ids.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        )
    };
    let mut r = Report::new(command, None);
    let results: Vec<_> = ids
        .iter()
        .map(|&id| reproduce::run(id).ok_or_else(|| CliError::Usage(format!("no criterion {id}"))))
        .collect::<Result<_, _>>()?;
    if only.is_empty() || ids.contains(&1) || ids.contains(&2) || ids.contains(&11) {
        r.set("reference_values", reference_table()?);
    }
    if ids.contains(&11) {
        let rows = reproduce::conjecture_table()?;
        r.set(
            "dimension_comparison",
            rows.iter()
                .map(|row| {
                    json!({
                        "algebra": row.algebra,
                        "trace": row.trace,
                        "z1": [row.z1, row.z1_induced],
                        "h1": [row.h1, row.h1_induced],
                        "inequalities_hold": row.holds(),
                    })
                })
                .collect::<Vec<_>>(),
        );
    }
    if ids.contains(&10) {
        let rows: Vec<serde_json::Value> = catalog::induced_by_table()
            .iter()
            .flat_map(|row| {
                row.sources.iter().map(move |src| {
                    json!({
                        "case": row.case,
                        "lie": src.lie,
                        "witness": src.witness.as_ref().map(reproduce::fmt_trace),
                        "supplied": src.supplied,
                        "status": src.status.label(),
                        "detail": src.detail,
                    })
                })
            })
            .collect();
        r.set("induced_by", rows);
    }
    for res in results {
        r.check(format!("{:>2}. {}", res.id, res.name), res.passed, res.detail);
    }
    Ok(r)
}

/// Computed values next to the reference values.
fn reference_table() -> Result<serde_json::Value, CliError> {
    let rows: [(&str, &str, &str, usize, bool); 12] = [
        ("gl2", "x4", "dim Z1", 4, false),
        ("gl2", "x4", "dim Z1 induced", 7, true),
        ("gl2", "x4", "dim H1", 1, false),
        ("gl2", "x4", "dim H1 induced", 1, true),
        ("M4", "x1+x2+x4", "dim H1", 6, false),
        ("M4", "x1+x2+x4", "dim H1 induced", 6, true),
        ("M5", "x1", "dim H1", 8, false),
        ("M5", "x1", "dim H1 induced", 9, true),
        ("M8", "x1+x3", "dim H1", 0, false),
        ("M8", "x1+x3", "dim H1 induced", 4, true),
        ("M4", "x1", "dim Z2 scalar", 4, false),
        ("M4", "x1", "extension by mu trivial", 0, true),
    ];
    let mut out = Vec::new();
    for (name, t, quantity, expected, induced) in rows {
        let a = catalog::lie4(name);
        let tau = TraceMap::for_algebra(&a, parse_trace(t, 4)?)?;
        let target = if induced { induce(&a, &tau)? } else { a.clone() };
        let computed = match quantity {
            "dim Z2 scalar" => cohomology_dims(&target, 2, Coefficients::Scalar)?.cocycles,
            "extension by mu trivial" => {
                let mu = parse_form("[2,4]=1; [3,4]=-1", 2, 4)?;
                let ext = induce_extension(&a, &tau, &mu)?;
                is_trivial_extension(&ext.base, &ext.omega)? as usize
            }
            q if q.starts_with("dim Z1") => cohomology_dims(&target, 1, Coefficients::Adjoint)?.cocycles,
            _ => cohomology_dims(&target, 1, Coefficients::Adjoint)?.cohomology,
        };
        out.push(json!({
            "algebra": name,
            "trace": t,
            "quantity": quantity,
            "expected": expected,
            "computed": computed,
            "agree": expected == computed,
        }));
    }
    Ok(serde_json::Value::Array(out))
}
