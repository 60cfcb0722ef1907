//! The JSON algebra file: 1-based indices, rationals as strings.

use std::collections::BTreeSet;

use indexmap::IndexMap;
use nlie::linalg::{parse_rational, zero_vec};
use nlie::wedge::{normalize_args, MultiIndex};
use nlie::{NLieAlgebra, Rational, Vector};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub arity: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    pub brackets: Vec<BracketRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub args: Vec<usize>,
    pub value: IndexMap<String, String>,
}

/// A parsed file together with what was normalized while reading it.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub algebra: NLieAlgebra,
    pub names: Vec<String>,
    /// Brackets whose arguments were reordered, with the sign applied.
    pub reordered: Vec<String>,
}

pub fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn load(text: &str) -> Result<Loaded, CliError> {
        Self::parse(text)?.to_algebra()
    }

    fn names(&self) -> Result<Vec<String>, CliError> {
        let names = match &self.basis_names {
            None => return Ok(default_names(self.dim)),
            Some(n) => n.clone(),
        };
        if names.len() != self.dim {
            return Err(invalid(format!(
                "basis_names has {} entries for dim {}",
                names.len(),
                self.dim
            )));
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != names.len() {
            return Err(invalid("basis_names contains duplicates"));
        }
        Ok(names)
    }

    fn resolve(&self, names: &[String], key: &str) -> Result<usize, CliError> {
        if let Some(i) = names.iter().position(|n| n == key) {
            return Ok(i);
        }
        match key.parse::<usize>() {
            Ok(i) if (1..=self.dim).contains(&i) => Ok(i - 1),
            _ => Err(invalid(format!("unknown basis element {key:?}"))),
        }
    }

    pub fn to_algebra(&self) -> Result<Loaded, CliError> {
        if self.arity < 2 {
            return Err(invalid(format!("arity must be at least 2, got {}", self.arity)));
        }
        if self.dim == 0 {
            return Err(invalid("dim must be positive"));
        }
        let names = self.names()?;
        let mut algebra = NLieAlgebra::abelian(self.arity, self.dim).map_err(CliError::Compute)?;
        let mut seen = BTreeSet::new();
        let mut reordered = Vec::new();
        for (b, rec) in self.brackets.iter().enumerate() {
            let at = |msg: String| invalid(format!("bracket {}: {msg}", b + 1));
            if rec.args.len() != self.arity {
                return Err(at(format!(
                    "{} arguments for arity {}",
                    rec.args.len(),
                    self.arity
                )));
            }
            if let Some(&i) = rec.args.iter().find(|&&i| i == 0 || i > self.dim) {
                return Err(at(format!("argument {i} outside 1..={}", self.dim)));
            }
            let mut value: Vector = zero_vec(self.dim);
            for (k, v) in &rec.value {
                let idx = self.resolve(&names, k).map_err(|e| at(e.to_string()))?;
                let q = parse_rational(v).ok_or_else(|| at(format!("{v:?} is not a rational")))?;
                if !value[idx].is_zero() {
                    return Err(at(format!("{k:?} appears twice")));
                }
                value[idx] = q;
            }
            let zero_based: Vec<usize> = rec.args.iter().map(|i| i - 1).collect();
            let (sorted, sign) = normalize_args(&zero_based);
            if sign == 0 {
                if value.iter().any(|c| !c.is_zero()) {
                    return Err(at(format!(
                        "repeated argument in {:?} with nonzero value",
                        rec.args
                    )));
                }
                continue;
            }
            let key = MultiIndex::new(sorted.clone()).map_err(CliError::Compute)?;
            if !seen.insert(key) {
                return Err(at(format!(
                    "second definition of {:?}",
                    sorted.iter().map(|i| i + 1).collect::<Vec<_>>()
                )));
            }
            if sorted != zero_based {
                reordered.push(format!(
                    "{:?} read as {}{:?}",
                    rec.args,
                    if sign < 0 { "-" } else { "" },
                    sorted.iter().map(|i| i + 1).collect::<Vec<_>>()
                ));
            }
            if sign < 0 {
                value.iter_mut().for_each(|c| *c = -c.clone());
            }
            algebra.set_bracket(&sorted, value).map_err(CliError::Compute)?;
        }
        Ok(Loaded {
            algebra,
            names,
            reordered,
        })
    }

    /// Canonical form: brackets in lexicographic key order, coefficients in
    /// basis order, zeros dropped.
    pub fn from_algebra(a: &NLieAlgebra, names: Option<&[String]>) -> AlgebraFile {
        let key_name = |i: usize| match names {
            Some(n) => n[i].clone(),
            None => (i + 1).to_string(),
        };
        let brackets = a
            .table()
            .iter()
            .map(|(k, v)| BracketRecord {
                args: k.iter().map(|i| i + 1).collect(),
                value: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (key_name(i), c.to_string()))
                    .collect(),
            })
            .collect();
        AlgebraFile {
            arity: a.arity(),
            dim: a.dim(),
            basis_names: names.map(|n| n.to_vec()),
            brackets,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// `2e1-1/2e3`-style rendering with the given basis names.
pub fn format_vector(v: &[Rational], names: &[String]) -> String {
    let mut s = String::new();
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let neg = c < &Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if neg {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if abs != Rational::from_integer(1.into()) {
            s.push_str(&abs.to_string());
        }
        s.push_str(&names[i]);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const GL2: &str = r#"{
  "arity": 2,
  "dim": 4,
  "brackets": [
    {
      "args": [
        1,
        2
      ],
      "value": {
        "2": "2"
      }
    },
    {
      "args": [
        1,
        3
      ],
      "value": {
        "3": "-2"
      }
    },
    {
      "args": [
        2,
        3
      ],
      "value": {
        "1": "1"
      }
    }
  ]
}
"#;

    #[test]
    fn canonical_round_trip() {
        let loaded = AlgebraFile::load(GL2).unwrap();
        assert_eq!(loaded.algebra, nlie::catalog::gl2());
        assert_eq!(AlgebraFile::from_algebra(&loaded.algebra, None).to_json(), GL2);
    }

    #[test]
    fn reordering_flips_sign() {
        let text = r#"{"arity":2,"dim":2,"brackets":[{"args":[2,1],"value":{"e1":"1/2"}}]}"#;
        let loaded = AlgebraFile::load(text).unwrap();
        assert_eq!(loaded.reordered.len(), 1);
        assert_eq!(
            loaded.algebra.basis_bracket(&[0, 1])[0],
            nlie::linalg::ratio(-1, 2)
        );
    }

    #[test]
    fn rejects_bad_input() {
        let unknown = r#"{"arity":2,"dim":2,"brackets":[],"extra":1}"#;
        assert!(matches!(AlgebraFile::load(unknown), Err(CliError::Parse(_))));
        let syntax = "{\n  \"arity\": 2,\n  \"dim\": }";
        let err = AlgebraFile::load(syntax).unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        let float = r#"{"arity":2,"dim":2,"brackets":[{"args":[1,2],"value":{"1":"0.5"}}]}"#;
        assert!(AlgebraFile::load(float).is_err());
        let repeated = r#"{"arity":2,"dim":2,"brackets":[{"args":[1,1],"value":{"1":"1"}}]}"#;
        assert!(AlgebraFile::load(repeated).is_err());
        let twice = r#"{"arity":2,"dim":2,"brackets":[{"args":[1,2],"value":{}},{"args":[2,1],"value":{}}]}"#;
        assert!(AlgebraFile::load(twice).is_err());
    }

    #[test]
    fn named_basis() {
        let text =
            r#"{"arity":2,"dim":2,"basis_names":["h","x"],"brackets":[{"args":[1,2],"value":{"x":"2"}}]}"#;
        let loaded = AlgebraFile::load(text).unwrap();
        let back = AlgebraFile::from_algebra(&loaded.algebra, Some(&loaded.names));
        assert_eq!(back.brackets[0].value.get("x").map(String::as_str), Some("2"));
        assert_eq!(
            format_vector(&loaded.algebra.basis_bracket(&[0, 1]), &loaded.names),
            "2x"
        );
    }
}
