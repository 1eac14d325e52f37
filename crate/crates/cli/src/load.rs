use std::path::Path;
use std::sync::Arc;

use flatlab_core::equational::{parse_theory, Language, MonadTable, RawMonadTable, Structure, Theory};
use flatlab_core::fincat::{FinCategory, RawCategory};
use flatlab_core::presheaf::{RawSetFunctor, SetFunctor};
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::corpus;
use crate::report::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    /// `file` or `bundled:<name>`.
    pub source: String,
    pub sha256: String,
}

pub struct Input {
    pub path: String,
    pub text: String,
    pub digest: InputDigest,
}

pub fn read(path: &str) -> Result<Input, CliError> {
    let (text, source) = if Path::new(path).exists() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::input(path, None, e.to_string()))?;
        (text, "file".to_string())
    } else if let Some((name, text)) = corpus::lookup(path) {
        (text.to_string(), format!("bundled:{name}"))
    } else {
        return Err(CliError::input(path, None, "no such file".into()));
    };
    let sha256 = hex::encode(Sha256::digest(text.as_bytes()));
    Ok(Input {
        path: path.to_string(),
        digest: InputDigest {
            path: path.to_string(),
            source,
            sha256,
        },
        text,
    })
}

/// 1-based line of the first occurrence of the first backquoted name in
/// `message`, as a JSON string.
fn line_of_name(text: &str, message: &str) -> Option<usize> {
    let name = message.split('`').nth(1)?;
    let quoted = format!("\"{name}\"");
    text.lines().position(|l| l.contains(&quoted)).map(|i| i + 1)
}

fn parse_json<T: DeserializeOwned>(input: &Input) -> Result<T, CliError> {
    serde_json::from_str(&input.text).map_err(|e| CliError::input(&input.path, Some(e.line()), e.to_string()))
}

fn semantic(input: &Input, message: String) -> CliError {
    CliError::input(&input.path, line_of_name(&input.text, &message), message)
}

pub fn category(input: &Input) -> Result<Arc<FinCategory>, CliError> {
    let raw: RawCategory = parse_json(input)?;
    raw.validate().map(Arc::new).map_err(|e| semantic(input, e.to_string()))
}

pub fn functor(input: &Input, base: &Arc<FinCategory>) -> Result<SetFunctor, CliError> {
    let raw: RawSetFunctor = parse_json(input)?;
    raw.validate(base.clone()).map_err(|e| semantic(input, e.to_string()))
}

pub fn theory(input: &Input) -> Result<Theory, CliError> {
    parse_theory(&input.text).map_err(|e| match e {
        flatlab_core::equational::EquationalError::File { line, message } => {
            CliError::input(&input.path, Some(line), message)
        }
        other => CliError::input(&input.path, None, other.to_string()),
    })
}

pub fn structure(input: &Input, lang: &Language) -> Result<Structure, CliError> {
    let s: Structure = parse_json(input)?;
    s.validate(lang).map_err(|e| semantic(input, e.to_string()))?;
    Ok(s)
}

pub fn monad(input: &Input) -> Result<MonadTable, CliError> {
    let raw: RawMonadTable = parse_json(input)?;
    raw.validate().map_err(|e| CliError::input(&input.path, None, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostics_name_the_line() {
        let text = "{\n  \"objects\": [\"a\"],\n  \"morphisms\": [{\"name\": \"f\", \"src\": \"a\", \"tgt\": \"zz\"}],\n  \"identities\": {}\n}";
        let input = Input {
            path: "x.cat".into(),
            text: text.into(),
            digest: InputDigest {
                path: "x.cat".into(),
                source: "file".into(),
                sha256: String::new(),
            },
        };
        match category(&input) {
            Err(CliError::Input { line, message, .. }) => {
                assert_eq!(line, Some(3), "{message}");
            }
            _ => panic!("expected an input error"),
        }
    }
}
