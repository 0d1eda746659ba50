//! Integer sequences attached to a pattern, special deck sizes, and b-file
//! text.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::{Letter, Pattern};
use crate::recursion;

/// Default deck-size bound for the first/last-freed searches.
pub const DEFAULT_SEARCH_LIMIT: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Letters used to deal `N` cards.
    Moves,
    /// Dealing triangle read by rows.
    TriangleFlat,
    /// Josephus triangle read by rows.
    JosephusFlat,
    /// Position of the last card dealt.
    Freed,
    /// Rank at which the top card is dealt.
    ElimFirst,
    /// Deck sizes where the top card is dealt last.
    FirstFreed,
    /// Deck sizes where the bottom card is dealt last.
    LastFreed,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Moves,
        Family::TriangleFlat,
        Family::JosephusFlat,
        Family::Freed,
        Family::ElimFirst,
        Family::FirstFreed,
        Family::LastFreed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Moves => "moves",
            Family::TriangleFlat => "T",
            Family::JosephusFlat => "J",
            Family::Freed => "freed",
            Family::ElimFirst => "elim-first",
            Family::FirstFreed => "first-freed",
            Family::LastFreed => "last-freed",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown sequence family `{s}`")))
    }
}

/// What to generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub pattern: Pattern,
    pub family: Family,
    pub count: usize,
    /// Largest deck size tried by the first/last-freed searches.
    pub search_limit: usize,
}

impl SequenceSpec {
    pub fn new(pattern: Pattern, family: Family, count: usize) -> SequenceSpec {
        SequenceSpec {
            pattern,
            family,
            count,
            search_limit: DEFAULT_SEARCH_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceResult {
    pub terms: Vec<u64>,
    /// Index of the first term.
    pub offset: u64,
    /// False when a search hit its limit before finding `count` terms.
    pub complete: bool,
}

impl SequenceResult {
    pub fn new(terms: Vec<u64>) -> SequenceResult {
        SequenceResult {
            terms,
            offset: 1,
            complete: true,
        }
    }
}

fn to_u64(v: usize) -> u64 {
    v as u64
}

/// Deck sizes `N ≤ limit` where `F(N) = 1`, at most `count` of them.
pub fn first_freed(pattern: &Pattern, count: usize, limit: usize) -> Result<Vec<usize>> {
    search(pattern, count, limit, |_, f| f == 1)
}

/// Deck sizes `N ≤ limit` where `F(N) = N`, at most `count` of them.
pub fn last_freed(pattern: &Pattern, count: usize, limit: usize) -> Result<Vec<usize>> {
    search(pattern, count, limit, |n, f| f == n)
}

fn search(
    pattern: &Pattern,
    count: usize,
    limit: usize,
    hit: impl Fn(usize, usize) -> bool,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for n in 1..=limit {
        if out.len() == count {
            break;
        }
        if hit(n, recursion::freed(pattern, n)?) {
            out.push(n);
        }
    }
    Ok(out)
}

/// Computes the first `count` terms of a family.
pub fn generate(spec: &SequenceSpec) -> Result<SequenceResult> {
    if spec.count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let p = &spec.pattern;
    let per_deck = |f: &dyn Fn(usize) -> Result<usize>| -> Result<Vec<u64>> {
        (1..=spec.count).map(|n| f(n).map(to_u64)).collect()
    };
    let flat = |row: &dyn Fn(usize) -> Result<Vec<usize>>| -> Result<Vec<u64>> {
        let mut terms = Vec::with_capacity(spec.count);
        let mut n = 1;
        while terms.len() < spec.count {
            terms.extend(row(n)?.into_iter().map(to_u64));
            n += 1;
        }
        terms.truncate(spec.count);
        Ok(terms)
    };
    let terms = match spec.family {
        Family::Moves => per_deck(&|n| recursion::moves(p, n))?,
        Family::Freed => per_deck(&|n| recursion::freed(p, n))?,
        Family::ElimFirst => per_deck(&|n| recursion::elim_first(p, n))?,
        Family::TriangleFlat => flat(&|n| recursion::dealing_row_by_rounds(p, n))?,
        Family::JosephusFlat => flat(&|n| recursion::josephus_row_by_rounds(p, n))?,
        Family::FirstFreed | Family::LastFreed => {
            let found = if spec.family == Family::FirstFreed {
                first_freed(p, spec.count, spec.search_limit)?
            } else {
                last_freed(p, spec.count, spec.search_limit)?
            };
            let complete = found.len() == spec.count;
            return Ok(SequenceResult {
                terms: found.into_iter().map(to_u64).collect(),
                offset: 1,
                complete,
            });
        }
    };
    Ok(SequenceResult::new(terms))
}

/// Named closed forms for first/last-freed deck sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialSize {
    /// `S^UD(m) = 2^(m-1)`
    SUd,
    /// `S^UDD(2m+1) = 3^m`, `S^UDD(2m) = 2·3^(m-1)`
    SUdd,
    /// `L^UD(m) = 2^m - 1`
    LUd,
    /// `L^DU(m) = 2^(m-1)`
    LDu,
    /// Same values as `S^UDD`.
    LDdu,
    /// `L^DUD(2m+1) = 2·3^m - 1`, `L^DUD(2m) = 3^m - 1`
    LDud,
    /// `L^UDD(2m+1) = 3^(m+1) - 2`, `L^UDD(2m) = 2·3^m - 2`
    LUdd,
    /// Next term after an odd term `t` of `L^UUD`: `(3t + 1) / 2`.
    LUudStep,
}

impl SpecialSize {
    pub const ALL: [SpecialSize; 8] = [
        SpecialSize::SUd,
        SpecialSize::SUdd,
        SpecialSize::LUd,
        SpecialSize::LDu,
        SpecialSize::LDdu,
        SpecialSize::LDud,
        SpecialSize::LUdd,
        SpecialSize::LUudStep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialSize::SUd => "S-UD",
            SpecialSize::SUdd => "S-UDD",
            SpecialSize::LUd => "L-UD",
            SpecialSize::LDu => "L-DU",
            SpecialSize::LDdu => "L-DDU",
            SpecialSize::LDud => "L-DUD",
            SpecialSize::LUdd => "L-UDD",
            SpecialSize::LUudStep => "L-UUD-step",
        }
    }

    /// The pattern and family the closed form describes.
    pub fn source(self) -> (Pattern, Family) {
        let (word, family) = match self {
            SpecialSize::SUd => ("UD", Family::FirstFreed),
            SpecialSize::SUdd => ("UDD", Family::FirstFreed),
            SpecialSize::LUd => ("UD", Family::LastFreed),
            SpecialSize::LDu => ("DU", Family::LastFreed),
            SpecialSize::LDdu => ("DDU", Family::LastFreed),
            SpecialSize::LDud => ("DUD", Family::LastFreed),
            SpecialSize::LUdd => ("UDD", Family::LastFreed),
            SpecialSize::LUudStep => ("UUD", Family::LastFreed),
        };
        (Pattern::from_word(word).expect("valid word"), family)
    }
}

impl fmt::Display for SpecialSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpecialSize {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpecialSize> {
        SpecialSize::ALL
            .into_iter()
            .find(|n| n.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

fn pow(base: u32, exp: u64) -> BigUint {
    let mut out = BigUint::from(1u32);
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// Term `m` (1-based) of a named special-size sequence. For
/// [`SpecialSize::LUudStep`], `m` is the current term and the result is the
/// next one.
pub fn special_size_closed_form(name: SpecialSize, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::InvalidArgument("terms are numbered from 1".into()));
    }
    let one = BigUint::from(1u32);
    let two = BigUint::from(2u32);
    let half = m / 2;
    Ok(match name {
        SpecialSize::SUd | SpecialSize::LDu => pow(2, m - 1),
        SpecialSize::LUd => pow(2, m) - one,
        SpecialSize::SUdd | SpecialSize::LDdu => {
            if m % 2 == 1 {
                pow(3, half)
            } else {
                two * pow(3, half - 1)
            }
        }
        SpecialSize::LDud => {
            if m % 2 == 1 {
                two * pow(3, half) - one
            } else {
                pow(3, half) - one
            }
        }
        SpecialSize::LUdd => {
            if m % 2 == 1 {
                pow(3, half + 1) - two
            } else {
                two.clone() * pow(3, half) - two
            }
        }
        SpecialSize::LUudStep => {
            if m.is_multiple_of(2) {
                return Err(Error::EvenTerm(m));
            }
            (BigUint::from(m) * 3u32 + one) / two
        }
    })
}

/// Checks, for deck sizes up to `3 * m_max`:
/// the one-round membership rules for first/last-freed sizes,
/// `L^p = S^{Up}`, and `L^{Dp} = {1} ∪ (L^p + 1)`.
pub fn prepend_relations_check(pattern: &Pattern, m_max: usize) -> Result<bool> {
    let limit = 3 * m_max.max(1);
    let starts_under = !pattern.starts_with_down()?;
    for n in 2..=limit {
        let stats = pattern.prefix_counts(n)?;
        let rest = pattern.drop_front(n);
        let f = recursion::freed(pattern, n)?;
        if starts_under {
            let in_rest = recursion::freed(&rest, stats.unders)? == 1;
            if (f == 1) != in_rest {
                return Ok(false);
            }
        }
        let want_last = stats.unders == 0
            || (pattern.letter_at(n)? == Letter::Under
                && recursion::freed(&rest, stats.unders)? == stats.unders);
        if (f == n) != want_last {
            return Ok(false);
        }
    }
    let l = last_freed(pattern, usize::MAX, limit)?;
    let s_up = first_freed(&pattern.prepend(Letter::Under), usize::MAX, limit)?;
    if l != s_up {
        return Ok(false);
    }
    let l_dp = last_freed(&pattern.prepend(Letter::Down), usize::MAX, limit)?;
    let shifted: Vec<usize> = std::iter::once(1)
        .chain(l.iter().map(|v| v + 1).filter(|&v| v <= limit))
        .collect();
    Ok(l_dp == shifted)
}

/// `index value` lines starting at the result's offset.
pub fn bfile_export(result: &SequenceResult) -> String {
    let mut out = String::new();
    for (i, t) in result.terms.iter().enumerate() {
        out.push_str(&format!("{} {}\n", result.offset + i as u64, t));
    }
    out
}

/// Reads b-file text back; `#` lines and blank lines are skipped. Indices must
/// be consecutive.
pub fn parse_bfile(text: &str) -> Result<SequenceResult> {
    let mut terms = Vec::new();
    let mut offset = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::InvalidArgument(format!("b-file line {}: `{line}`", lineno + 1));
        let mut parts = line.split_whitespace();
        let (Some(i), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let i: u64 = i.parse().map_err(|_| bad())?;
        let v: u64 = v.parse().map_err(|_| bad())?;
        let start = *offset.get_or_insert(i);
        if i != start + terms.len() as u64 {
            return Err(bad());
        }
        terms.push(v);
    }
    Ok(SequenceResult {
        terms,
        offset: offset.unwrap_or(1),
        complete: true,
    })
}
