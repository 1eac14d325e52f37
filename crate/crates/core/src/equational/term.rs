use std::fmt;

use serde::{Deserialize, Serialize};

use super::EquationalError;

/// `f: (X, Y)` with `X = {0..input}` and `Y = {0..output}`; interpreted
/// as `A^X → A^Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionSymbol {
    pub name: String,
    #[serde(rename = "in")]
    pub input: usize,
    #[serde(rename = "out")]
    pub output: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Language {
    symbols: Vec<FunctionSymbol>,
}

impl Language {
    pub fn new(symbols: Vec<FunctionSymbol>) -> Result<Self, EquationalError> {
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(EquationalError::DuplicateSymbol(s.name.clone()));
            }
        }
        Ok(Language { symbols })
    }

    pub fn symbols(&self) -> &[FunctionSymbol] {
        &self.symbols
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }
}

/// Terms of the finitary calculus. Finite sets are `{0..n}`; products
/// `Z × X` are encoded `z·|X| + x` and sums `ΣX_j` by consecutive blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Term {
    /// A function `g: Y → X` given by its images, an `(X, Y)`-ary term.
    Map { images: Vec<usize>, input: usize },
    Sym(String),
    Pow(Box<Term>, usize),
    Comp(Box<Term>, Vec<Term>),
}

impl From<Term> for String {
    fn from(t: Term) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for Term {
    type Error = EquationalError;

    fn try_from(s: String) -> Result<Term, EquationalError> {
        Term::parse(&s)
    }
}

impl Term {
    pub fn sym(name: &str) -> Term {
        Term::Sym(name.to_string())
    }

    pub fn identity(n: usize) -> Term {
        Term::Map {
            images: (0..n).collect(),
            input: n,
        }
    }

    pub fn comp(s: Term, ts: Vec<Term>) -> Term {
        Term::Comp(Box::new(s), ts)
    }

    pub fn pow(t: Term, z: usize) -> Term {
        Term::Pow(Box::new(t), z)
    }

    pub fn parse(src: &str) -> Result<Term, EquationalError> {
        let mut p = Parser { src, pos: 0 };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Map { images, input } => {
                let imgs: Vec<String> = images.iter().map(|i| i.to_string()).collect();
                write!(f, "(map [{}] from {} to {})", imgs.join(" "), images.len(), input)
            }
            Term::Sym(name) => write!(f, "(sym {name})"),
            Term::Pow(t, z) => write!(f, "(pow {t} {z})"),
            Term::Comp(s, ts) => {
                write!(f, "(comp {s} [")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "])")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> EquationalError {
        EquationalError::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace() || c == ',') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), EquationalError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{tok}`")))
        }
    }

    fn word(&mut self) -> Result<&str, EquationalError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || "()[],".contains(c))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a word"));
        }
        self.pos += len;
        Ok(&self.src[start..start + len])
    }

    fn number(&mut self) -> Result<usize, EquationalError> {
        let at = self.pos;
        let w = self.word()?;
        w.parse().map_err(|_| EquationalError::Parse {
            offset: at,
            message: format!("expected a number, found `{w}`"),
        })
    }

    fn term(&mut self) -> Result<Term, EquationalError> {
        self.expect("(")?;
        let at = self.pos;
        let head = self.word()?.to_string();
        let t = match head.as_str() {
            "sym" => Term::Sym(self.word()?.to_string()),
            "map" => {
                self.expect("[")?;
                let mut images = Vec::new();
                while !self.eat("]") {
                    images.push(self.number()?);
                }
                self.expect("from")?;
                let out = self.number()?;
                self.expect("to")?;
                let input = self.number()?;
                if out != images.len() {
                    return Err(self.error(&format!("map lists {} images but is from {out}", images.len())));
                }
                if let Some(&bad) = images.iter().find(|&&i| i >= input) {
                    return Err(self.error(&format!("image {bad} is outside {input}")));
                }
                Term::Map { images, input }
            }
            "pow" => {
                let t = self.term()?;
                let z = self.number()?;
                Term::pow(t, z)
            }
            "comp" => {
                let s = self.term()?;
                self.expect("[")?;
                let mut ts = Vec::new();
                while !self.eat("]") {
                    ts.push(self.term()?);
                }
                Term::comp(s, ts)
            }
            other => {
                return Err(EquationalError::Parse {
                    offset: at,
                    message: format!("unknown form `{other}`"),
                })
            }
        };
        self.expect(")")?;
        Ok(t)
    }
}

/// A term with resolved symbols and inferred arities.
#[derive(Clone, Debug)]
pub(crate) struct Typed {
    pub(crate) input: usize,
    pub(crate) output: usize,
    pub(crate) node: Node,
}

#[derive(Clone, Debug)]
pub(crate) enum Node {
    Map(Vec<usize>),
    Sym(usize),
    Pow(Box<Typed>, usize),
    Comp(Box<Typed>, Vec<Typed>),
}

pub(crate) fn typecheck(lang: &Language, t: &Term) -> Result<Typed, EquationalError> {
    Ok(match t {
        Term::Map { images, input } => {
            if let Some(&bad) = images.iter().find(|&&i| i >= *input) {
                return Err(EquationalError::ArityMismatch(format!("map image {bad} outside {input}")));
            }
            Typed {
                input: *input,
                output: images.len(),
                node: Node::Map(images.clone()),
            }
        }
        Term::Sym(name) => {
            let i = lang.index(name).ok_or_else(|| EquationalError::UnknownSymbol(name.clone()))?;
            let s = &lang.symbols()[i];
            Typed {
                input: s.input,
                output: s.output,
                node: Node::Sym(i),
            }
        }
        Term::Pow(t, z) => {
            let t = typecheck(lang, t)?;
            Typed {
                input: z * t.input,
                output: z * t.output,
                node: Node::Pow(Box::new(t), *z),
            }
        }
        Term::Comp(s, ts) => {
            let s = typecheck(lang, s)?;
            let ts: Vec<Typed> = ts.iter().map(|t| typecheck(lang, t)).collect::<Result<_, _>>()?;
            let mid: usize = ts.iter().map(|t| t.output).sum();
            if mid != s.input {
                return Err(EquationalError::ArityMismatch(format!(
                    "outer term has input arity {} but the family outputs {mid}",
                    s.input
                )));
            }
            Typed {
                input: ts.iter().map(|t| t.input).sum(),
                output: s.output,
                node: Node::Comp(Box::new(s), ts),
            }
        }
    })
}

/// `(X, Y)` as sizes.
pub fn arity_of_term(lang: &Language, t: &Term) -> Result<(usize, usize), EquationalError> {
    let t = typecheck(lang, t)?;
    Ok((t.input, t.output))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang() -> Language {
        Language::new(vec![
            FunctionSymbol { name: "f".into(), input: 1, output: 1 },
            FunctionSymbol { name: "m".into(), input: 2, output: 1 },
            FunctionSymbol { name: "d".into(), input: 1, output: 2 },
        ])
        .unwrap()
    }

    #[test]
    fn arity_rules() {
        let l = lang();
        assert_eq!(arity_of_term(&l, &Term::sym("m")).unwrap(), (2, 1));
        assert_eq!(arity_of_term(&l, &Term::pow(Term::sym("f"), 2)).unwrap(), (2, 2));
        // m(d(x), f(y)) is not well typed: d gives 2, f gives 1
        let bad = Term::comp(Term::sym("m"), vec![Term::sym("d"), Term::sym("f")]);
        assert!(matches!(arity_of_term(&l, &bad), Err(EquationalError::ArityMismatch(_))));
        let ok = Term::comp(Term::sym("m"), vec![Term::sym("f"), Term::sym("f")]);
        assert_eq!(arity_of_term(&l, &ok).unwrap(), (2, 1));
        let dm = Term::comp(Term::sym("m"), vec![Term::sym("d")]);
        assert_eq!(arity_of_term(&l, &dm).unwrap(), (1, 1));
        assert!(matches!(arity_of_term(&l, &Term::sym("g")), Err(EquationalError::UnknownSymbol(_))));
    }

    #[test]
    fn parse_round_trip() {
        for src in [
            "(sym f)",
            "(map [0 0 1] from 3 to 2)",
            "(pow (sym f) 3)",
            "(comp (sym m) [(sym f) (map [0] from 1 to 1)])",
            "(map [] from 0 to 0)",
        ] {
            let t = Term::parse(src).unwrap();
            assert_eq!(t.to_string(), src);
        }
        assert!(Term::parse("(map [2] from 1 to 2)").is_err());
        assert!(Term::parse("(sym f) x").is_err());
        assert!(Term::parse("(frob f)").is_err());
    }
}
