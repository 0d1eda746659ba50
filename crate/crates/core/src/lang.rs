//! Text syntax for patterns.
//!
//! ```text
//! expr   := atom* base?
//! atom   := letter count? | "(" item+ ")" count?
//! base   := "(" item+ ")" "*" | name ("+" count)?
//! item   := letter count?
//! letter := "U" | "D"
//! name   := "AP" | "SUD" | "DSU" | "SCARD"
//! ```
//!
//! Without an explicit base the whole expression is one repeating word, so
//! `UD`, `U D` and `(UD)2` all mean under-down dealing and `U2D` means
//! `UUD`. Use `(...)*` to put a finite prefix in front of a repeating word,
//! e.g. `UU (UD)*`. `name+n` drops the first `n` letters of a named
//! generator. Whitespace between atoms is ignored and everything is
//! case-insensitive.
//!
//! [`format`] writes a canonical form: prefix letters spelled out without
//! counts, a space, then the base (`UUD`, `D SUD`, `UU (UD)*`, `SUD+5`).

use std::fmt;

use thiserror::Error;

use crate::pattern::{Base, Letter, Pattern};

/// Repetition counts above this are rejected.
pub const MAX_COUNT: usize = 1_000_000;

/// A syntax or semantic error, with the 1-based column where it was found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Name {
    ArithmeticSkip,
    SpellNumber,
    DownSpellNumber,
    SpellCard,
}

impl Name {
    fn lookup(word: &str) -> Option<Name> {
        match word.to_ascii_uppercase().as_str() {
            "AP" => Some(Name::ArithmeticSkip),
            "SUD" => Some(Name::SpellNumber),
            "DSU" => Some(Name::DownSpellNumber),
            "SCARD" => Some(Name::SpellCard),
            _ => None,
        }
    }

    fn pattern(self) -> Pattern {
        match self {
            Name::ArithmeticSkip => Pattern::arithmetic_skip(),
            Name::SpellNumber => Pattern::spell_number(),
            Name::DownSpellNumber => Pattern::down_spell_number(),
            Name::SpellCard => Pattern::spell_card(),
        }
    }
}

enum BaseExpr {
    Cycle(Vec<Letter>),
    Named(Name, usize),
}

/// Runs like `UDSU` split into single letters until the rest of the run is
/// a name: `U`, then `DSU`.
struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error<T>(&self, at: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: at + 1,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn count(&mut self) -> Result<Option<usize>, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        match digits.parse::<usize>() {
            Ok(0) => self.error(start, "repetition count must be at least 1"),
            Ok(n) if n <= MAX_COUNT => Ok(Some(n)),
            _ => self.error(start, format!("repetition count exceeds {MAX_COUNT}")),
        }
    }

    /// The name spanning the rest of the alphabetic run at the cursor.
    fn keyword_here(&self) -> Option<(Name, usize)> {
        let len = self.chars[self.pos..]
            .iter()
            .take_while(|c| c.is_ascii_alphabetic())
            .count();
        let word: String = self.chars[self.pos..self.pos + len].iter().collect();
        Name::lookup(&word).map(|name| (name, len))
    }

    fn letters_with_counts(&mut self, out: &mut Vec<Letter>) -> Result<(), ParseError> {
        let Some(letter) = self.peek().and_then(Letter::from_char) else {
            return self.error(self.pos, "expected U or D");
        };
        self.pos += 1;
        let n = self.count()?.unwrap_or(1);
        out.extend(std::iter::repeat_n(letter, n));
        Ok(())
    }

    fn parse(mut self) -> Result<Pattern, ParseError> {
        let mut prefix: Vec<Letter> = Vec::new();
        let mut base: Option<(BaseExpr, usize)> = None;
        self.skip_ws();
        if self.peek().is_none() {
            return self.error(0, "empty pattern expression");
        }
        while let Some(c) = self.peek() {
            let start = self.pos;
            if base.is_some() {
                return self.error(start, "the repeating part must come last");
            }
            if c == '(' {
                self.pos += 1;
                let mut group = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(')') => break,
                        None => return self.error(self.pos, "unclosed group"),
                        Some(_) => self.letters_with_counts(&mut group)?,
                    }
                }
                if group.is_empty() {
                    return self.error(start, "empty group");
                }
                self.pos += 1;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    base = Some((BaseExpr::Cycle(group), start));
                } else {
                    let n = self.count()?.unwrap_or(1);
                    for _ in 0..n {
                        prefix.extend_from_slice(&group);
                    }
                }
            } else if let Some((name, len)) = self.keyword_here() {
                self.pos += len;
                let mut skip = 0;
                if self.peek() == Some('+') {
                    self.pos += 1;
                    skip = match self.count()? {
                        Some(n) => n,
                        None => return self.error(self.pos, "expected a count after `+`"),
                    };
                }
                base = Some((BaseExpr::Named(name, skip), start));
            } else if Letter::from_char(c).is_some() {
                self.letters_with_counts(&mut prefix)?;
            } else if c.is_ascii_alphabetic() {
                let len = self.chars[start..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphabetic())
                    .count();
                let word: String = self.chars[start..start + len].iter().collect();
                return self.error(start, format!("unknown pattern name `{word}`"));
            } else {
                return self.error(start, format!("unexpected character `{c}`"));
            }
            self.skip_ws();
        }
        match base {
            None => Pattern::periodic(&prefix).or_else(|e| self.error(0, e.to_string())),
            Some((BaseExpr::Cycle(word), at)) => {
                let mut pattern =
                    Pattern::periodic(&word).or_else(|e| self.error(at, e.to_string()))?;
                for &l in prefix.iter().rev() {
                    pattern = pattern.prepend(l);
                }
                Ok(pattern)
            }
            Some((BaseExpr::Named(name, skip), _)) => {
                let mut pattern = name.pattern().drop_front(skip);
                for &l in prefix.iter().rev() {
                    pattern = pattern.prepend(l);
                }
                Ok(pattern)
            }
        }
    }
}

/// Parses a pattern expression.
pub fn parse(text: &str) -> Result<Pattern, ParseError> {
    Parser::new(text).parse()
}

/// Writes the canonical expression for `pattern`.
pub fn format(pattern: &Pattern) -> String {
    let prefix: String = pattern.prefix().iter().map(|l| l.as_char()).collect();
    let base = match pattern.base() {
        Base::Periodic(word) => {
            let word: String = word.iter().map(|l| l.as_char()).collect();
            if prefix.is_empty() {
                return word;
            }
            format!("({word})*")
        }
        Base::AllDown => {
            if prefix.is_empty() {
                return "D".to_string();
            }
            "(D)*".to_string()
        }
        named => {
            let name = match named {
                Base::ArithmeticSkip => "AP",
                Base::SpellNumber => "SUD",
                _ => "SCARD",
            };
            match pattern.base_skip() {
                0 => name.to_string(),
                n => format!("{name}+{n}"),
            }
        }
    };
    if prefix.is_empty() {
        base
    } else {
        format!("{prefix} {base}")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

impl std::str::FromStr for Pattern {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Reads a fixture file: one expression per line, `#` starts a comment.
pub fn parse_lines(text: &str) -> Result<Vec<Pattern>, (usize, ParseError)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| parse(line).map_err(|e| (i + 1, e)))
        })
        .collect()
}
