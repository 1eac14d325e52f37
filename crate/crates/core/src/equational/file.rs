use serde::{Deserialize, Serialize};

use super::{Equation, EquationalError, FunctionSymbol, Language, Term, Theory};

/// Theory file: symbols with arities and equations between term strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTheory {
    pub symbols: Vec<FunctionSymbol>,
    #[serde(default)]
    pub equations: Vec<RawEquation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEquation {
    pub lhs: String,
    pub rhs: String,
}

impl RawTheory {
    pub fn from_theory(e: &Theory) -> Self {
        RawTheory {
            symbols: e.language().symbols().to_vec(),
            equations: e
                .equations()
                .iter()
                .map(|q| RawEquation {
                    lhs: q.lhs.to_string(),
                    rhs: q.rhs.to_string(),
                })
                .collect(),
        }
    }
}

fn line_of(src: &str, needle: &str, from_line: usize) -> usize {
    src.lines()
        .enumerate()
        .skip(from_line.saturating_sub(1))
        .find(|(_, l)| l.contains(needle))
        .map_or(from_line.max(1), |(i, _)| i + 1)
}

/// Parses a JSON theory file; errors carry the 1-based line they were
/// found on.
pub fn parse_theory(src: &str) -> Result<Theory, EquationalError> {
    let raw: RawTheory = serde_json::from_str(src).map_err(|e| EquationalError::File {
        line: e.line(),
        message: e.to_string(),
    })?;
    let at = |needle: &str, err: EquationalError| EquationalError::File {
        line: line_of(src, needle, 1),
        message: err.to_string(),
    };
    let language = Language::new(raw.symbols.clone()).map_err(|e| match &e {
        EquationalError::DuplicateSymbol(name) => {
            let first = line_of(src, &format!("\"{name}\""), 1);
            EquationalError::File {
                line: line_of(src, &format!("\"{name}\""), first + 1),
                message: e.to_string(),
            }
        }
        _ => at("symbols", e),
    })?;
    let mut equations = Vec::new();
    for q in &raw.equations {
        let lhs = Term::parse(&q.lhs).map_err(|e| at(&q.lhs, e))?;
        let rhs = Term::parse(&q.rhs).map_err(|e| at(&q.rhs, e))?;
        equations.push(Equation { lhs, rhs });
    }
    Theory::new(language, equations).map_err(|e| {
        let needle = match &e {
            EquationalError::EquationArity { index, .. } => raw.equations[*index].lhs.clone(),
            EquationalError::UnknownSymbol(name) => format!("sym {name}"),
            _ => "equations".into(),
        };
        at(&needle, e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equational::theories;

    #[test]
    fn round_trip() {
        let e = theories::involution();
        let src = serde_json::to_string_pretty(&RawTheory::from_theory(&e)).unwrap();
        assert_eq!(parse_theory(&src).unwrap(), e);
    }

    #[test]
    fn diagnostics_carry_lines() {
        let src = r#"{
  "symbols": [{"name": "f", "in": 1, "out": 1}],
  "equations": [
    {"lhs": "(sym f)", "rhs": "(map [0] from 1 to 1)"},
    {"lhs": "(sym g)", "rhs": "(sym f)"}
  ]
}"#;
        match parse_theory(src) {
            Err(EquationalError::File { line, message }) => {
                assert_eq!(line, 5);
                assert!(message.contains('g'));
            }
            other => panic!("{other:?}"),
        }
        let bad = "{\n \"symbols\": [\n  {\"name\": \"f\", \"in\": 1}\n ]\n}";
        assert!(matches!(parse_theory(bad), Err(EquationalError::File { line: 3, .. })));
    }
}
