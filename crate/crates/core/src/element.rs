//! Elements of any family, and the line-oriented bulk format
//! `family:encoding`.

use std::fmt;
use std::str::FromStr;

use crate::bileveled::BiLeveledTree;
use crate::error::{parse_err, Error, Result};
use crate::linear::Family;
use crate::perm::Permutation;
use crate::trees::PlanarTree;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    S(Permutation),
    M(BiLeveledTree),
    Y(PlanarTree),
}

impl Element {
    pub fn family(&self) -> Family {
        match self {
            Element::S(_) => Family::S,
            Element::M(_) => Family::M,
            Element::Y(_) => Family::Y,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Element::S(w) => w.len(),
            Element::M(b) => b.nodes(),
            Element::Y(t) => t.nodes(),
        }
    }

    /// Parses a bare encoding as an element of `family`.
    pub fn parse_in(family: Family, text: &str) -> Result<Self> {
        Ok(match family {
            Family::S => Element::S(text.parse()?),
            Family::M => Element::M(text.parse()?),
            Family::Y => Element::Y(text.parse()?),
        })
    }

    /// Parses either `family:encoding` (checking the family) or a bare
    /// encoding.
    pub fn parse_expecting(family: Family, text: &str) -> Result<Self> {
        match split_prefix(text) {
            Some((f, rest)) if f == family => Element::parse_in(family, rest),
            Some((f, _)) => Err(parse_err(0, format!("expected a {family} element, found {f}"))),
            None => Element::parse_in(family, text),
        }
    }
}

fn split_prefix(text: &str) -> Option<(Family, &str)> {
    let (head, rest) = text.trim().split_once(':')?;
    let family = match head {
        "S" => Family::S,
        "M" => Family::M,
        "Y" => Family::Y,
        _ => return None,
    };
    Some((family, rest))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::S(w) => write!(f, "S:{w}"),
            Element::M(b) => write!(f, "M:{b}"),
            Element::Y(t) => write!(f, "Y:{t}"),
        }
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, rest) = split_prefix(s).ok_or_else(|| parse_err(0, "expected `S:`, `M:` or `Y:`"))?;
        Element::parse_in(family, rest)
    }
}

/// Parses one element per line, skipping blank lines and `#` comments.
/// Errors report the byte offset within the whole text.
pub fn parse_bulk(text: &str) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.trim();
        if !body.is_empty() && !body.starts_with('#') {
            let e = body.parse().map_err(|e| match e {
                Error::Parse { offset: o, message } => parse_err(offset + o, message),
                other => other,
            })?;
            out.push(e);
        }
        offset += line.len();
    }
    Ok(out)
}

/// Formats elements one per line.
pub fn format_bulk(elements: &[Element]) -> String {
    elements.iter().map(|e| format!("{e}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bulk_round_trip() {
        let text = "S:3,4,2,1\n# comment\n\nY:((..).)\nM:((..)(..));{1,2}\nS:()\n";
        let elements = parse_bulk(text).unwrap();
        assert_eq!(elements.len(), 4);
        assert_eq!(elements[0].family(), Family::S);
        assert_eq!(parse_bulk(&format_bulk(&elements)).unwrap(), elements);
    }

    #[test]
    fn prefixes_are_checked() {
        assert!(Element::parse_expecting(Family::S, "Y:(..)").is_err());
        assert_eq!(
            Element::parse_expecting(Family::Y, "(..)").unwrap(),
            Element::Y("(..)".parse().unwrap())
        );
        assert!("X:12".parse::<Element>().is_err());
        assert!(parse_bulk("S:12\nS:1x\n").is_err());
    }
}
