//! Text forms for patterns and constraints, shared by the CLI, count-table
//! serialization, and rule files:
//!
//! * compact digit string for length <= 9: `132`
//! * comma form beyond that: `10,3,1,2`
//! * family shorthands: `id:4`, `tl:4,2`, `layered:4,2,1`, `lp:4`
//! * quantified constraints: `avoid:132`, `exactly:2:123`, `atleast:1:tl:3,1`,
//!   joined into sets with `;` (a bare pattern means `avoid:`).

use crate::perm::{ConstraintSet, PatternSpec, Permutation, Quantifier};
use crate::{Error, Result};

/// Family parameters accepted from text; keeps parsed shapes reasonable.
pub const MAX_FAMILY_PARAM: usize = 64;

/// A parsed pattern literal: either one pattern or the whole `L_p` family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedPattern {
    Single(PatternSpec),
    /// `lp:p` — the family of all length-`p` patterns `π₁1π₂2π₃` with `π₂`
    /// nonempty; only meaningful under `avoid:`.
    LpFamily(usize),
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("expected a number for {what}, got {s:?}")))
}

fn parse_param(s: &str, what: &str) -> Result<usize> {
    let v = parse_usize(s, what)?;
    if v == 0 || v > MAX_FAMILY_PARAM {
        return Err(Error::Parse(format!(
            "{what} must be in 1..={MAX_FAMILY_PARAM}, got {v}"
        )));
    }
    Ok(v)
}

/// Parses a pattern literal in any of the supported forms.
pub fn parse_pattern(text: &str) -> Result<ParsedPattern> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty pattern literal".into()));
    }
    if let Some(rest) = prefix(s, "id:") {
        return Ok(ParsedPattern::Single(PatternSpec::Identity(parse_param(
            rest, "identity length",
        )?)));
    }
    if let Some(rest) = prefix(s, "tl:") {
        let (k, m) = pair(rest, "tl:k,m")?;
        return Ok(ParsedPattern::Single(PatternSpec::TwoLayered(k, m)));
    }
    if let Some(rest) = prefix(s, "layered:") {
        let tops = rest
            .split(',')
            .map(|p| parse_param(p, "layer top"))
            .collect::<Result<Vec<_>>>()?;
        return Ok(ParsedPattern::Single(PatternSpec::Layered(tops)));
    }
    if let Some(rest) = prefix(s, "lp:") {
        return Ok(ParsedPattern::LpFamily(parse_param(rest, "family length")?));
    }
    if s.contains(':') {
        return Err(Error::Parse(format!(
            "unknown pattern form {s:?}; expected digits, comma form, id:, tl:, layered:, or lp:"
        )));
    }
    if s.contains(',') {
        let vals = s
            .split(',')
            .map(|p| {
                let v = parse_usize(p, "pattern entry")?;
                u8::try_from(v)
                    .map_err(|_| Error::Parse(format!("pattern entry {v} out of range")))
            })
            .collect::<Result<Vec<u8>>>()?;
        return Ok(ParsedPattern::Single(PatternSpec::Explicit(
            Permutation::new(vals)?,
        )));
    }
    if s.bytes().all(|b| (b'1'..=b'9').contains(&b)) {
        let vals: Vec<u8> = s.bytes().map(|b| b - b'0').collect();
        return Ok(ParsedPattern::Single(PatternSpec::Explicit(
            Permutation::new(vals)?,
        )));
    }
    Err(Error::Parse(format!(
        "cannot read pattern {s:?}; digits 1-9 only in compact form (use commas for longer patterns)"
    )))
}

/// Parses a pattern literal that must denote a single pattern.
pub fn parse_single_pattern(text: &str) -> Result<PatternSpec> {
    match parse_pattern(text)? {
        ParsedPattern::Single(spec) => Ok(spec),
        ParsedPattern::LpFamily(p) => Err(Error::Parse(format!(
            "lp:{p} names a whole family; a single pattern is required here"
        ))),
    }
}

fn prefix<'a>(s: &'a str, tag: &str) -> Option<&'a str> {
    let head = s.get(..tag.len())?;
    head.eq_ignore_ascii_case(tag).then(|| &s[tag.len()..])
}

fn pair(s: &str, form: &str) -> Result<(usize, usize)> {
    let mut it = s.split(',');
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((parse_param(a, form)?, parse_param(b, form)?)),
        _ => Err(Error::Parse(format!("expected {form}, got {s:?}"))),
    }
}

/// Parses one quantified constraint (`avoid:…`, `exactly:r:…`, `atleast:r:…`,
/// or a bare pattern meaning `avoid:`) into `(pattern, quantifier)` items.
/// An `lp:p` family expands to one avoid-item per member and is rejected
/// under any other quantifier.
pub fn parse_constraint(text: &str) -> Result<Vec<(PatternSpec, Quantifier)>> {
    let s = text.trim();
    let (quant, rest) = if let Some(rest) = prefix(s, "avoid:") {
        (Quantifier::Exactly(0), rest)
    } else if let Some(rest) = prefix(s, "exactly:") {
        let (r, pat) = count_then_pattern(rest, "exactly:<r>:<pattern>")?;
        (Quantifier::Exactly(r), pat)
    } else if let Some(rest) = prefix(s, "atleast:") {
        let (r, pat) = count_then_pattern(rest, "atleast:<r>:<pattern>")?;
        if r == 0 {
            return Err(Error::Parse("atleast needs a count >= 1".into()));
        }
        (Quantifier::AtLeast(r), pat)
    } else {
        (Quantifier::Exactly(0), s)
    };
    match parse_pattern(rest)? {
        ParsedPattern::Single(spec) => Ok(vec![(spec, quant)]),
        ParsedPattern::LpFamily(p) => {
            if quant != Quantifier::Exactly(0) {
                return Err(Error::Parse(format!(
                    "lp:{p} can only be avoided, not counted"
                )));
            }
            Ok(crate::perm::lp_set(p)?
                .into_iter()
                .map(|perm| (PatternSpec::Explicit(perm), quant))
                .collect())
        }
    }
}

fn count_then_pattern<'a>(s: &'a str, form: &str) -> Result<(u64, &'a str)> {
    let (r, pat) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected {form}")))?;
    let r = r
        .trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("expected a count in {form}, got {r:?}")))?;
    Ok((r, pat))
}

/// Parses a `;`-joined list of constraints into a `ConstraintSet`.
pub fn parse_constraint_set(text: &str) -> Result<ConstraintSet> {
    let mut items = Vec::new();
    for part in text.split(';') {
        if part.trim().is_empty() {
            return Err(Error::Parse("empty constraint in list".into()));
        }
        items.extend(parse_constraint(part)?);
    }
    ConstraintSet::new(items)
}
