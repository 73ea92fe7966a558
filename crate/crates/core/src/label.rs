use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A vertex name.
///
/// Integers order numerically and before names; names order lexicographically;
/// pairs (vertices of a Cartesian product) order lexicographically by component
/// and come last. In JSON an integer label is a number, a name is a string and
/// a pair is a two-element array.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexLabel {
    Int(u64),
    Name(String),
    Pair(Box<VertexLabel>, Box<VertexLabel>),
}

impl VertexLabel {
    pub fn pair(a: VertexLabel, b: VertexLabel) -> Self {
        VertexLabel::Pair(Box::new(a), Box::new(b))
    }

    /// The label with `suffix` appended, used for fresh copies of vertices.
    pub fn suffixed(&self, suffix: &str) -> Self {
        VertexLabel::Name(format!("{self}{suffix}"))
    }
}

impl From<u64> for VertexLabel {
    fn from(v: u64) -> Self {
        VertexLabel::Int(v)
    }
}

impl From<usize> for VertexLabel {
    fn from(v: usize) -> Self {
        VertexLabel::Int(v as u64)
    }
}

impl From<&str> for VertexLabel {
    fn from(s: &str) -> Self {
        s.parse().unwrap_or_else(|_| VertexLabel::Name(s.to_owned()))
    }
}

impl From<String> for VertexLabel {
    fn from(s: String) -> Self {
        VertexLabel::from(s.as_str())
    }
}

impl FromStr for VertexLabel {
    type Err = std::convert::Infallible;

    /// Decimal digits parse as an integer label, `(a,b)` as a pair, anything
    /// else as a name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            if let Ok(v) = s.parse::<u64>() {
                return Ok(VertexLabel::Int(v));
            }
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            if let Some(split) = top_level_comma(inner) {
                let a = inner[..split].parse()?;
                let b = inner[split + 1..].parse()?;
                return Ok(VertexLabel::pair(a, b));
            }
        }
        Ok(VertexLabel::Name(s.to_owned()))
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Int(v) => write!(f, "{v}"),
            VertexLabel::Name(s) => f.write_str(s),
            VertexLabel::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}
