//! Line-oriented text format for families.
//!
//! ```text
//! # optional comments
//! n=5
//! 1,3
//! 2,4
//! -
//! ```
//!
//! The header `n=<integer>` comes first (comments and blank lines may precede
//! it). Each further nonempty line is one member as strictly ascending
//! comma-separated elements, with `-` for the empty set. Lines starting with
//! `#` are comments. A repeated member is an error.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::set::{ElementSet, MAX_GROUND};

pub fn parse_family(text: &str) -> Result<SetFamily> {
    let mut n: Option<usize> = None;
    let mut members: Vec<(usize, ElementSet)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };

        let Some(ground) = n else {
            let value = line
                .strip_prefix("n=")
                .ok_or_else(|| err(format!("expected header `n=<integer>`, found `{line}`")))?;
            let parsed: usize = value
                .trim()
                .parse()
                .map_err(|_| err(format!("bad ground set size `{value}`")))?;
            if parsed == 0 || parsed > MAX_GROUND {
                return Err(err(format!("ground set size must be in 1..={MAX_GROUND}")));
            }
            n = Some(parsed);
            continue;
        };

        let set = if line == "-" {
            ElementSet::from_bits_unchecked(ground, 0)
        } else {
            let mut elems = Vec::new();
            for tok in line.split(',') {
                let tok = tok.trim();
                let e: usize = tok
                    .parse()
                    .map_err(|_| err(format!("bad element `{tok}` in `{line}`")))?;
                if e == 0 || e > ground {
                    return Err(err(format!("element {e} is outside 1..={ground}")));
                }
                if elems.last().is_some_and(|&prev| prev >= e) {
                    return Err(err(format!("elements must be strictly ascending in `{line}`")));
                }
                elems.push(e);
            }
            ElementSet::new(ground, elems).map_err(|e| err(e.to_string()))?
        };
        if let Some((first, _)) = members.iter().find(|(_, s)| *s == set) {
            return Err(err(format!("duplicate member {set} (first on line {first})")));
        }
        members.push((line_no, set));
    }

    let n = n.ok_or(Error::Parse { line: 0, message: "missing header `n=<integer>`".into() })?;
    SetFamily::new(n, members.into_iter().map(|(_, s)| s))
}

/// Serializes in canonical member order, `\n` line endings.
pub fn write_family(family: &SetFamily) -> String {
    let mut out = format!("n={}\n", family.ground());
    for m in family.iter() {
        out.push_str(&member_line(m));
        out.push('\n');
    }
    out
}

pub fn member_line(set: &ElementSet) -> String {
    if set.is_empty() {
        return "-".to_string();
    }
    let mut s = String::new();
    for (idx, e) in set.elements().enumerate() {
        if idx > 0 {
            s.push(',');
        }
        let _ = write!(s, "{e}");
    }
    s
}
