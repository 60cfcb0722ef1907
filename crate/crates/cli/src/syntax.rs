//! Parsers for command-line mini languages: linear forms, skew forms and
//! catalog selectors.

use nlie::catalog::{self, CatalogEntry, Family};
use nlie::linalg::{parse_rational, zero_vec};
use nlie::{Rational, SkewMap, Vector};
use num_traits::{One, Zero};

use crate::CliError;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Traces attached to the worked examples, keyed by algebra label.
pub const TRACE_PRESETS: [(&str, &str); 4] =
    [("gl2", "x4"), ("M4", "x1+x2+x4"), ("M5", "x1"), ("M8", "x1+x3")];

/// Parses `1,0,1,0`, `x1+x3`, `2x1-1/2x4` or a preset such as `M5:x1`.
pub fn parse_trace(expr: &str, dim: usize) -> Result<Vector, CliError> {
    let expr = expr.trim();
    if let Some((label, expr)) = expr.split_once(':') {
        let preset = TRACE_PRESETS
            .iter()
            .find(|(l, _)| *l == label)
            .ok_or_else(|| usage(format!("unknown trace preset {label:?}")))?;
        if preset.1 != expr {
            return Err(usage(format!("preset {label} is {label}:{}", preset.1)));
        }
        return parse_trace(expr, dim);
    }
    if expr.contains('x') {
        return parse_linear_form(expr, dim);
    }
    let coeffs: Vec<Rational> = expr
        .split(',')
        .map(|c| parse_rational(c).ok_or_else(|| usage(format!("{c:?} is not a rational"))))
        .collect::<Result<_, _>>()?;
    if coeffs.len() != dim {
        return Err(usage(format!(
            "trace has {} coefficients for dim {dim}",
            coeffs.len()
        )));
    }
    Ok(coeffs)
}

fn parse_linear_form(expr: &str, dim: usize) -> Result<Vector, CliError> {
    let mut out = zero_vec(dim);
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > start {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-Rational::one(), rest),
            None => (Rational::one(), term.strip_prefix('+').unwrap_or(term)),
        };
        let (coeff, index) = body
            .split_once('x')
            .ok_or_else(|| usage(format!("term {term:?} has no variable")))?;
        let coeff = if coeff.is_empty() {
            Rational::one()
        } else {
            parse_rational(coeff.trim_end_matches('*'))
                .ok_or_else(|| usage(format!("bad coefficient in {term:?}")))?
        };
        let i: usize = index
            .parse()
            .ok()
            .filter(|i| (1..=dim).contains(i))
            .ok_or_else(|| usage(format!("variable in {term:?} outside x1..x{dim}")))?;
        out[i - 1] += sign * coeff;
    }
    Ok(out)
}

/// Parses `[1,2]=1; [2,4]=-1/2` into a skew form with 1-based arguments.
pub fn parse_form(expr: &str, arity: usize, dim: usize) -> Result<SkewMap<Rational>, CliError> {
    let mut omega = SkewMap::zero(arity, dim);
    for entry in expr.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (args, value) = entry
            .split_once('=')
            .ok_or_else(|| usage(format!("{entry:?} should look like [1,2]=1")))?;
        let args = args.trim();
        let inner = args
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| usage(format!("{args:?} should be bracketed")))?;
        let idx: Vec<usize> = inner
            .split(',')
            .map(|s| s.trim().parse::<usize>().ok().filter(|i| (1..=dim).contains(i)))
            .collect::<Option<_>>()
            .ok_or_else(|| usage(format!("bad arguments {args}")))?;
        if idx.len() != arity {
            return Err(usage(format!(
                "{args} has {} arguments, expected {arity}",
                idx.len()
            )));
        }
        let value = parse_rational(value).ok_or_else(|| usage(format!("{value:?} is not a rational")))?;
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        let (sorted, sign) = nlie::wedge::normalize_args(&zero_based);
        if sign == 0 {
            if value.is_zero() {
                continue;
            }
            return Err(usage(format!("{args} repeats an argument")));
        }
        let signed = if sign < 0 { -value } else { value };
        let current = omega.eval_basis(&sorted);
        omega.set(&sorted, current + signed).map_err(CliError::Compute)?;
    }
    Ok(omega)
}

/// `family[/n=N][/dim=D][/label][?p=v&...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selector {
    pub family: Family,
    pub n: Option<usize>,
    pub dim: Option<usize>,
    pub label: Option<String>,
    pub params: Vec<(String, Rational)>,
}

pub fn parse_selector(s: &str) -> Result<Selector, CliError> {
    let (path, query) = match s.split_once('?') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let mut parts = path.split('/').filter(|p| !p.is_empty());
    let family_name = parts.next().ok_or_else(|| usage("empty selector"))?;
    let family = Family::parse(family_name).ok_or_else(|| {
        usage(format!(
            "unknown family {family_name:?}; use filippov, bai, lie3 or lie4"
        ))
    })?;
    let mut sel = Selector {
        family,
        n: None,
        dim: None,
        label: None,
        params: Vec::new(),
    };
    for part in parts {
        let number = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| usage(format!("bad number in {part:?}")))
        };
        if let Some(v) = part.strip_prefix("n=") {
            sel.n = Some(number(v)?);
        } else if let Some(v) = part.strip_prefix("dim=") {
            sel.dim = Some(number(v)?);
        } else if sel.label.is_none() {
            sel.label = Some(part.to_string());
        } else {
            return Err(usage(format!("unexpected selector segment {part:?}")));
        }
    }
    if let Some(q) = query {
        if sel.label.is_none() {
            return Err(usage("parameters need an entry label"));
        }
        for kv in q.split('&').filter(|p| !p.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| usage(format!("{kv:?} should be name=value")))?;
            let v = parse_rational(v).ok_or_else(|| usage(format!("{v:?} is not a rational")))?;
            sel.params.push((k.to_string(), v));
        }
    }
    if matches!(family, Family::Filippov | Family::Bai) && sel.n.is_none() {
        return Err(usage(format!("{family_name} selectors need n=")));
    }
    Ok(sel)
}

/// An entry and the parameter tuples to instantiate it at.
pub type Resolved = (CatalogEntry, Vec<Vec<Rational>>);

pub fn resolve_selector(sel: &Selector) -> Result<Vec<Resolved>, CliError> {
    let n = sel.n.unwrap_or(2);
    let entries = match (&sel.label, sel.family, sel.dim) {
        (Some(label), _, _) => {
            vec![catalog::find(sel.family, sel.n, sel.dim, label).map_err(|e| usage(e.to_string()))?]
        }
        (None, Family::Filippov, Some(dim)) => {
            catalog::list_filippov(n, dim).map_err(|e| usage(e.to_string()))?
        }
        (None, family, _) => catalog::family_entries(family, n).map_err(|e| usage(e.to_string()))?,
    };
    if sel.params.is_empty() {
        return Ok(entries
            .into_iter()
            .map(|e| {
                let s = e.samples.clone();
                (e, s)
            })
            .collect());
    }
    let entry = entries.into_iter().next().expect("a label was given");
    for (k, _) in &sel.params {
        if !entry.params.contains(k) {
            return Err(usage(format!(
                "{} has no parameter {k:?} (parameters: {})",
                entry.name,
                if entry.params.is_empty() {
                    "none".to_string()
                } else {
                    entry.params.join(", ")
                }
            )));
        }
    }
    let values = entry
        .params
        .iter()
        .map(|p| {
            sel.params
                .iter()
                .find(|(k, _)| k == p)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| usage(format!("missing parameter {p}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(vec![(entry, vec![values])])
}
