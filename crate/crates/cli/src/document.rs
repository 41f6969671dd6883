//! JSON documents for systems, Gram matrices and characters.
//!
//! Complex numbers are `[re, im]` pairs. Documents are written canonically:
//! keys sorted, two-space indentation, every float with 17 significant
//! digits, so saving a loaded canonical document reproduces it byte for byte.

use std::fmt::Write as _;

use serde::Deserialize;

use orthoscalar_core::{c64, ComplexMatrix, GramMatrix, SubspaceSystem, ToleranceConfig, WeightVector};

use crate::error::CliError;

pub type Complex = [f64; 2];

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterDoc {
    pub head: f64,
    pub tail: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub ambient_dim: usize,
    /// One list of basis vectors per subspace.
    pub subspaces: Vec<Vec<Vec<Complex>>>,
    #[serde(default)]
    pub gram: Option<Vec<Vec<Complex>>>,
    #[serde(default)]
    pub character: Option<CharacterDoc>,
    #[serde(default)]
    pub residual: Option<f64>,
}

fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<Complex>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn basis_vectors(b: &ComplexMatrix) -> Vec<Vec<Complex>> {
    (0..b.ncols())
        .map(|j| (0..b.nrows()).map(|i| [b[(i, j)].re, b[(i, j)].im]).collect())
        .collect()
}

fn check_finite(values: impl IntoIterator<Item = f64>, what: &str) -> Result<(), CliError> {
    if values.into_iter().all(f64::is_finite) {
        Ok(())
    } else {
        Err(CliError::invariant(format!("non-finite entry in {what}")))
    }
}

impl SystemDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::parse(format!("malformed document: {e}")))
    }

    pub fn from_system(l: &SubspaceSystem, character: Option<&WeightVector<f64>>, residual: Option<f64>) -> Self {
        Self {
            ambient_dim: l.ambient_dim(),
            subspaces: l.subspaces().iter().map(basis_vectors).collect(),
            gram: l.gram().map(|g| matrix_rows(g.matrix())),
            character: character.map(|c| CharacterDoc {
                head: c.head,
                tail: c.tail.clone(),
            }),
            residual,
        }
    }

    /// The subspace system, with the Gram matrix attached when present.
    pub fn to_system(&self, tol: &ToleranceConfig) -> Result<SubspaceSystem, CliError> {
        let n = self.ambient_dim;
        let mut bases = Vec::with_capacity(self.subspaces.len());
        for (i, vectors) in self.subspaces.iter().enumerate() {
            if let Some(bad) = vectors.iter().find(|v| v.len() != n) {
                return Err(CliError::invariant(format!(
                    "subspace {} has a vector of length {}, expected {n}",
                    i + 1,
                    bad.len()
                )));
            }
            check_finite(vectors.iter().flatten().flatten().copied(), "subspace basis")?;
            bases.push(ComplexMatrix::from_fn(n, vectors.len(), |r, c| {
                c64(vectors[c][r][0], vectors[c][r][1])
            }));
        }
        let l = SubspaceSystem::new(n, bases, tol)?;
        match &self.gram {
            None => Ok(l),
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(CliError::invariant(format!("gram must be {n}x{n}")));
                }
                check_finite(rows.iter().flatten().flatten().copied(), "gram")?;
                let g = ComplexMatrix::from_fn(n, n, |r, c| c64(rows[r][c][0], rows[r][c][1]));
                Ok(l.with_gram(GramMatrix::new(g, tol)?)?)
            }
        }
    }

    pub fn character(&self) -> Result<Option<WeightVector<f64>>, CliError> {
        let Some(c) = &self.character else { return Ok(None) };
        check_finite(std::iter::once(c.head).chain(c.tail.iter().copied()), "character")?;
        Ok(Some(WeightVector::new(c.head, c.tail.clone())?))
    }

    pub fn to_canonical_string(&self) -> String {
        let mut out = String::from("{\n");
        let mut entries = vec![format!("  \"ambient_dim\": {}", self.ambient_dim)];
        if let Some(c) = &self.character {
            entries.push(format!(
                "  \"character\": {{\n    \"head\": {},\n    \"tail\": {}\n  }}",
                float(c.head),
                float_list(&c.tail)
            ));
        }
        if let Some(rows) = &self.gram {
            entries.push(format!(
                "  \"gram\": {}",
                indent_tail(&nested(rows.iter().map(|r| complex_list(r))), 2)
            ));
        }
        if let Some(r) = self.residual {
            entries.push(format!("  \"residual\": {}", float(r)));
        }
        let subspaces = self
            .subspaces
            .iter()
            .map(|vectors| nested(vectors.iter().map(|v| complex_list(v))));
        entries.push(format!("  \"subspaces\": {}", indent_tail(&nested(subspaces), 2)));
        out.push_str(&entries.join(",\n"));
        out.push_str("\n}\n");
        out
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn float_list(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|&x| float(x)).collect();
    format!("[{}]", items.join(", "))
}

fn complex_list(zs: &[Complex]) -> String {
    let items: Vec<String> = zs
        .iter()
        .map(|z| format!("[{}, {}]", float(z[0]), float(z[1])))
        .collect();
    format!("[{}]", items.join(", "))
}

/// A JSON array with one item per line; continuation lines are indented
/// relative to the opening bracket.
fn nested(items: impl Iterator<Item = String>) -> String {
    let items: Vec<String> = items.map(|item| indent_tail(&format!("  {item}"), 2)).collect();
    if items.is_empty() {
        return "[]".into();
    }
    format!("[\n{}\n]", items.join(",\n"))
}

fn indent_tail(s: &str, by: usize) -> String {
    let pad = " ".repeat(by);
    let mut out = String::new();
    for (j, line) in s.lines().enumerate() {
        if j > 0 {
            let _ = write!(out, "\n{pad}");
        }
        out.push_str(line);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple() -> SubspaceSystem {
        SubspaceSystem::from_real(2, &[&[&[1.0, 0.0]], &[&[0.0, 1.0]], &[&[1.0, 1.0]]]).unwrap()
    }

    #[test]
    fn canonical_round_trip_is_byte_identical() {
        let g = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c64(0.75, 0.0), c64(-0.25, 0.1), c64(-0.25, -0.1), c64(0.75, 0.0)],
        );
        let l = triple()
            .with_gram(GramMatrix::new(g, &ToleranceConfig::default()).unwrap())
            .unwrap();
        let chi = WeightVector::new(1.0, vec![0.75, 0.75, 1.0 / 3.0]).unwrap();
        let doc = SystemDocument::from_system(&l, Some(&chi), Some(1.5e-16));
        let text = doc.to_canonical_string();
        let back = SystemDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_canonical_string(), text);
        assert!(text.find("\"ambient_dim\"").unwrap() < text.find("\"subspaces\"").unwrap());
    }

    #[test]
    fn zero_subspace_round_trips() {
        let l = SubspaceSystem::from_real(1, &[&[], &[&[1.0]]]).unwrap();
        let doc = SystemDocument::from_system(&l, None, None);
        let text = doc.to_canonical_string();
        let back = SystemDocument::parse(&text).unwrap();
        assert_eq!(back.to_system(&ToleranceConfig::default()).unwrap(), l);
        assert_eq!(back.to_canonical_string(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        let tol = ToleranceConfig::default();
        assert_eq!(SystemDocument::parse("{").unwrap_err().code, 2);
        assert_eq!(
            SystemDocument::parse(r#"{"ambient_dim": 2, "subspaces": [], "extra": 1}"#)
                .unwrap_err()
                .code,
            2
        );
        let ragged = SystemDocument::parse(r#"{"ambient_dim": 2, "subspaces": [[[[1, 0]]]]}"#).unwrap();
        assert_eq!(ragged.to_system(&tol).unwrap_err().code, 3);
        let empty = SystemDocument::parse(r#"{"ambient_dim": 2, "subspaces": []}"#).unwrap();
        assert_eq!(empty.to_system(&tol).unwrap_err().code, 3);
        let bad_gram =
            SystemDocument::parse(r#"{"ambient_dim": 1, "subspaces": [[[[1, 0]]]], "gram": [[[-1, 0]]]}"#).unwrap();
        assert_eq!(bad_gram.to_system(&tol).unwrap_err().code, 3);
    }
}
