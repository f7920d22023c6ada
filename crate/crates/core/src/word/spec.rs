use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::correspondence::word_from_psi;
use super::generate::{generate_fibonacci, generate_sturmian_periodic};
use super::psi::PsiFunction;
use super::Word;
use crate::error::{Error, Result};

/// A recipe for an infinite (or literal finite) word.
///
/// Textual forms: `fibonacci`, `sturmian:3,3,3`, `sturmian:2,(1,3)` (periodic
/// tail in parentheses), `psi:<path to JSON>`, `literal:abaaba`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordSpec {
    Fibonacci,
    Sturmian { head: Vec<u64>, period: Vec<u64> },
    Psi(PathBuf),
    Literal(Word),
}

impl WordSpec {
    /// The first `length` symbols, or the whole literal if it is shorter.
    pub fn materialize(&self, length: usize) -> Result<Word> {
        if length == 0 {
            return Err(Error::Domain("length must be positive".into()));
        }
        match self {
            WordSpec::Fibonacci => Ok(generate_fibonacci(length)),
            WordSpec::Sturmian { head, period } => generate_sturmian_periodic(head, period, length),
            WordSpec::Psi(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
                let psi = PsiFunction::from_json(&text)?;
                Ok(word_from_psi(&psi, None, length)?.word.prefix(length))
            }
            WordSpec::Literal(w) => Ok(w.prefix(length)),
        }
    }

    /// Whether the recipe describes an infinite word.
    pub fn is_infinite(&self) -> bool {
        !matches!(self, WordSpec::Literal(_))
    }
}

impl FromStr for WordSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "fibonacci" {
            return Ok(WordSpec::Fibonacci);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(|| Error::parse(0, format!("unknown word spec {s:?}")))?;
        let at = kind.len() + 1;
        match kind {
            "sturmian" => {
                let (head, period) = match arg.find('(') {
                    Some(open) => {
                        if !arg.ends_with(')') {
                            return Err(Error::parse(at + arg.len(), "unclosed period"));
                        }
                        let head = parse_quotients(arg[..open].trim_end_matches(','), at)?;
                        let period = parse_quotients(&arg[open + 1..arg.len() - 1], at + open + 1)?;
                        if period.is_empty() {
                            return Err(Error::parse(at + open, "empty period"));
                        }
                        (head, period)
                    }
                    None => (parse_quotients(arg, at)?, vec![]),
                };
                if head.is_empty() && period.is_empty() {
                    return Err(Error::parse(at, "no partial quotients"));
                }
                Ok(WordSpec::Sturmian { head, period })
            }
            "psi" if !arg.is_empty() => Ok(WordSpec::Psi(PathBuf::from(arg))),
            "literal" if !arg.is_empty() => Word::from_letters(arg).map(WordSpec::Literal).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::parse(at + pos, msg),
                other => other,
            }),
            _ => Err(Error::parse(0, format!("unknown word spec {s:?}"))),
        }
    }
}

fn parse_quotients(s: &str, at: usize) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut pos = at;
    for part in s.split(',') {
        match part.trim().parse::<u64>() {
            Ok(v) if v > 0 => out.push(v),
            _ => return Err(Error::parse(pos, format!("bad partial quotient {part:?}"))),
        }
        pos += part.len() + 1;
    }
    Ok(out)
}

impl fmt::Display for WordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            WordSpec::Fibonacci => write!(f, "fibonacci"),
            WordSpec::Sturmian { head, period } if period.is_empty() => write!(f, "sturmian:{}", join(head)),
            WordSpec::Sturmian { head, period } if head.is_empty() => write!(f, "sturmian:({})", join(period)),
            WordSpec::Sturmian { head, period } => write!(f, "sturmian:{},({})", join(head), join(period)),
            WordSpec::Psi(p) => write!(f, "psi:{}", p.display()),
            WordSpec::Literal(w) => write!(f, "literal:{w}"),
        }
    }
}
