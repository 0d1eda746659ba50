//! Infinite under/down dealing patterns and positional queries on them.
//!
//! A [`Pattern`] is a finite prefix followed by a base generator, from which
//! some leading letters may have been skipped. All positions are 1-based.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::spelling;

/// Queries give up after scanning this many letters.
pub const DEFAULT_SCAN_HORIZON: usize = 10_000_000;

/// One move of a dealing pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Move the top card to the bottom of the deck.
    Under,
    /// Deal the top card onto the table.
    Down,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::Under => 'U',
            Letter::Down => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c.to_ascii_uppercase() {
            'U' => Some(Letter::Under),
            'D' => Some(Letter::Down),
            _ => None,
        }
    }

    pub fn is_down(self) -> bool {
        self == Letter::Down
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// The infinite generator at the end of a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    /// Repetitions of a primitive word holding at least one of each letter.
    Periodic(Vec<Letter>),
    /// `DDD...`: every card is dealt as soon as it reaches the top.
    AllDown,
    /// Skip one card and deal, skip two and deal, skip three and deal, ...
    ArithmeticSkip,
    /// Spell one, two, three, ... putting a card under per letter, then deal.
    SpellNumber,
    /// Spell ace, two, ..., king the same way. Defined for 13 cards only.
    SpellCard,
}

impl Base {
    fn blocks(&self) -> Option<Blocks> {
        match self {
            Base::ArithmeticSkip => Some(Blocks::Arithmetic),
            Base::SpellNumber => Some(Blocks::Number),
            Base::SpellCard => Some(Blocks::Card),
            _ => None,
        }
    }

    fn letter(&self, i: usize) -> Result<Letter> {
        match self {
            Base::Periodic(word) => Ok(word[(i - 1) % word.len()]),
            Base::AllDown => Ok(Letter::Down),
            other => other.blocks().unwrap().letter(i),
        }
    }

    /// Downs among the first `m` base letters.
    fn downs(&self, m: usize) -> Result<usize> {
        match self {
            Base::Periodic(word) => {
                let per = word.iter().filter(|l| l.is_down()).count();
                let rest = word[..m % word.len()]
                    .iter()
                    .filter(|l| l.is_down())
                    .count();
                Ok(m / word.len() * per + rest)
            }
            Base::AllDown => Ok(m),
            other => other.blocks().unwrap().downs_upto(m),
        }
    }

    fn d_index(&self, j: usize) -> Result<usize> {
        match self {
            Base::Periodic(word) => Ok(nth_in_word(word, Letter::Down, j)),
            Base::AllDown => Ok(j),
            other => other.blocks().unwrap().end(j),
        }
    }

    fn u_index(&self, j: usize) -> Result<Option<usize>> {
        match self {
            Base::Periodic(word) => Ok(Some(nth_in_word(word, Letter::Under, j))),
            Base::AllDown => Ok(None),
            other => other.blocks().unwrap().u_index(j).map(Some),
        }
    }
}

fn nth_in_word(word: &[Letter], letter: Letter, j: usize) -> usize {
    let positions: Vec<usize> = word
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == letter)
        .map(|(i, _)| i + 1)
        .collect();
    let per = positions.len();
    (j - 1) / per * word.len() + positions[(j - 1) % per]
}

/// Generators built from blocks `U^s D`, where block `j` has `s_j` unders.
#[derive(Clone, Copy, Debug)]
enum Blocks {
    Arithmetic,
    Number,
    Card,
}

const CARD_BLOCKS: usize = 13;

fn number_ends() -> &'static RwLock<Vec<usize>> {
    static ENDS: OnceLock<RwLock<Vec<usize>>> = OnceLock::new();
    ENDS.get_or_init(|| RwLock::new(vec![0]))
}

impl Blocks {
    fn size(self, j: usize) -> Result<usize> {
        match self {
            Blocks::Arithmetic => Ok(j),
            Blocks::Number => Ok(spelling::number_letters(j as u64)),
            Blocks::Card => spelling::card_letters(j).ok_or(Error::SpellCardExhausted { block: j }),
        }
    }

    /// Index of the `j`-th down; `end(0) = 0`.
    fn end(self, j: usize) -> Result<usize> {
        match self {
            Blocks::Arithmetic => j
                .checked_add(3)
                .and_then(|s| s.checked_mul(j))
                .map(|v| v / 2)
                .ok_or(Error::Overflow("arithmetic-skip block end")),
            Blocks::Number => {
                {
                    let ends = number_ends().read().unwrap();
                    if let Some(&e) = ends.get(j) {
                        return Ok(e);
                    }
                }
                let mut ends = number_ends().write().unwrap();
                while ends.len() <= j {
                    let n = ends.len();
                    let next = ends[n - 1] + spelling::number_letters(n as u64) + 1;
                    ends.push(next);
                }
                Ok(ends[j])
            }
            Blocks::Card => {
                if j > CARD_BLOCKS {
                    return Err(Error::SpellCardExhausted { block: j });
                }
                (1..=j).map(|b| self.size(b).map(|s| s + 1)).sum()
            }
        }
    }

    /// Largest `j` with `key(j) <= target`, where `key` is increasing and `key(0) = 0`.
    fn search(self, target: usize, key: impl Fn(usize) -> Result<usize>) -> Result<usize> {
        if let Blocks::Card = self {
            let mut j = 0;
            while j < CARD_BLOCKS && key(j + 1)? <= target {
                j += 1;
            }
            return Ok(j);
        }
        let mut hi = 1;
        while key(hi)? <= target {
            hi *= 2;
        }
        let mut lo = hi / 2;
        // key(lo) <= target < key(hi)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if key(mid)? <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    fn downs_upto(self, m: usize) -> Result<usize> {
        if let Blocks::Card = self {
            if m > self.end(CARD_BLOCKS)? {
                return Err(Error::SpellCardExhausted {
                    block: CARD_BLOCKS + 1,
                });
            }
        }
        self.search(m, |j| self.end(j))
    }

    fn letter(self, i: usize) -> Result<Letter> {
        let block = self.downs_upto(i - 1)? + 1;
        Ok(if self.end(block)? == i {
            Letter::Down
        } else {
            Letter::Under
        })
    }

    fn u_index(self, k: usize) -> Result<usize> {
        let unders_through = |j: usize| self.end(j).map(|e| e - j);
        if let Blocks::Card = self {
            if k > unders_through(CARD_BLOCKS)? {
                return Err(Error::SpellCardExhausted {
                    block: CARD_BLOCKS + 1,
                });
            }
        }
        // Blocks before the one holding the k-th under.
        let full = self.search(k - 1, unders_through)?;
        Ok(self.end(full)? + (k - unders_through(full)?))
    }
}

/// Letter counts of a pattern prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PrefixStats {
    pub len: usize,
    pub downs: usize,
    pub unders: usize,
}

/// An infinite dealing pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    prefix: Vec<Letter>,
    base: Base,
    skip: usize,
}

impl Pattern {
    /// The pattern repeating `word`. Rejects words with no down letter.
    pub fn periodic(word: &[Letter]) -> Result<Pattern> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !word.iter().any(|l| l.is_down()) {
            return Err(Error::NoDown);
        }
        let root = primitive_root(word);
        let base = if root == [Letter::Down] {
            Base::AllDown
        } else {
            Base::Periodic(root.to_vec())
        };
        Ok(Pattern {
            prefix: Vec::new(),
            base,
            skip: 0,
        })
    }

    /// Parses a word of `U`/`D` characters as a periodic pattern.
    pub fn from_word(word: &str) -> Result<Pattern> {
        let letters: Option<Vec<Letter>> = word.chars().map(Letter::from_char).collect();
        match letters {
            Some(letters) => Pattern::periodic(&letters),
            None => Err(Error::InvalidArgument(format!(
                "`{word}` is not a U/D word"
            ))),
        }
    }

    fn from_base(base: Base) -> Pattern {
        Pattern {
            prefix: Vec::new(),
            base,
            skip: 0,
        }
    }

    pub fn all_down() -> Pattern {
        Pattern::from_base(Base::AllDown)
    }

    /// `UDUUDUUUD...`
    pub fn arithmetic_skip() -> Pattern {
        Pattern::from_base(Base::ArithmeticSkip)
    }

    /// `UUUD UUUD UUUUUD ...` from spelling one, two, three, ...
    pub fn spell_number() -> Pattern {
        Pattern::from_base(Base::SpellNumber)
    }

    /// A down followed by [`Pattern::spell_number`].
    pub fn down_spell_number() -> Pattern {
        Pattern::spell_number().prepend(Letter::Down)
    }

    /// Spelling ace, two, ..., king.
    pub fn spell_card() -> Pattern {
        Pattern::from_base(Base::SpellCard)
    }

    /// `U^(x-1) D`: deal every `x`-th card.
    pub fn every_xth(x: usize) -> Result<Pattern> {
        if x == 0 {
            return Err(Error::InvalidArgument(
                "skip parameter must be at least 1".into(),
            ));
        }
        let mut word = vec![Letter::Under; x - 1];
        word.push(Letter::Down);
        Pattern::periodic(&word)
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    /// Base letters skipped before the base starts; always 0 for periodic bases.
    pub fn base_skip(&self) -> usize {
        self.skip
    }

    /// The repeating word when the pattern is purely periodic.
    pub fn as_periodic(&self) -> Option<&[Letter]> {
        if !self.prefix.is_empty() {
            return None;
        }
        match &self.base {
            Base::Periodic(word) => Some(word),
            Base::AllDown => Some(&[Letter::Down]),
            _ => None,
        }
    }

    /// `l` followed by this pattern.
    pub fn prepend(&self, l: Letter) -> Pattern {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(l);
        prefix.extend_from_slice(&self.prefix);
        Pattern {
            prefix,
            base: self.base.clone(),
            skip: self.skip,
        }
        .normalized()
    }

    /// This pattern with its first `n` letters removed.
    pub fn drop_front(&self, n: usize) -> Pattern {
        let from_prefix = n.min(self.prefix.len());
        let rest = n - from_prefix;
        let prefix = self.prefix[from_prefix..].to_vec();
        let (base, skip) = match &self.base {
            Base::Periodic(word) => {
                let shift = rest % word.len();
                let mut word = word.clone();
                word.rotate_left(shift);
                (Base::Periodic(word), 0)
            }
            Base::AllDown => (Base::AllDown, 0),
            other => (other.clone(), self.skip + rest),
        };
        Pattern { prefix, base, skip }
    }

    /// Folds trailing prefix letters into a periodic base when they match it.
    fn normalized(mut self) -> Pattern {
        match &mut self.base {
            Base::Periodic(word) => {
                while let Some(&last) = self.prefix.last() {
                    if Some(&last) != word.last() {
                        break;
                    }
                    self.prefix.pop();
                    word.rotate_right(1);
                }
            }
            Base::AllDown => {
                while self.prefix.last() == Some(&Letter::Down) {
                    self.prefix.pop();
                }
            }
            _ => {}
        }
        self
    }

    /// The `i`-th letter (1-based).
    pub fn letter_at(&self, i: usize) -> Result<Letter> {
        if i == 0 {
            return Err(Error::InvalidArgument("positions start at 1".into()));
        }
        match self.prefix.get(i - 1) {
            Some(&l) => Ok(l),
            None => self.base.letter(self.skip + i - self.prefix.len()),
        }
    }

    pub fn starts_with_down(&self) -> Result<bool> {
        self.letter_at(1).map(Letter::is_down)
    }

    /// Counts of each letter among the first `m` letters.
    pub fn prefix_counts(&self, m: usize) -> Result<PrefixStats> {
        let head = m.min(self.prefix.len());
        let mut downs = self.prefix[..head].iter().filter(|l| l.is_down()).count();
        let tail = m - head;
        if tail > 0 {
            downs += self.base.downs(self.skip + tail)? - self.base.downs(self.skip)?;
        }
        Ok(PrefixStats {
            len: m,
            downs,
            unders: m - downs,
        })
    }

    /// Index of the `k`-th down, scanning at most [`DEFAULT_SCAN_HORIZON`] letters.
    pub fn d_index(&self, k: usize) -> Result<usize> {
        self.d_index_within(k, DEFAULT_SCAN_HORIZON)
    }

    pub fn d_index_within(&self, k: usize, horizon: usize) -> Result<usize> {
        self.nth_index(Letter::Down, k, horizon)
    }

    /// Index of the `k`-th under, scanning at most [`DEFAULT_SCAN_HORIZON`] letters.
    pub fn u_index(&self, k: usize) -> Result<usize> {
        self.u_index_within(k, DEFAULT_SCAN_HORIZON)
    }

    pub fn u_index_within(&self, k: usize, horizon: usize) -> Result<usize> {
        self.nth_index(Letter::Under, k, horizon)
    }

    fn nth_index(&self, letter: Letter, k: usize, horizon: usize) -> Result<usize> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "occurrence counts start at 1".into(),
            ));
        }
        if k > horizon {
            return Err(Error::HorizonExceeded { horizon });
        }
        let in_prefix: Vec<usize> = self
            .prefix
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == letter)
            .map(|(i, _)| i + 1)
            .collect();
        if let Some(&i) = in_prefix.get(k - 1) {
            return Ok(i);
        }
        let wanted = k - in_prefix.len();
        let base_index = match letter {
            Letter::Down => {
                let before = self.base.downs(self.skip)?;
                self.base.d_index(wanted + before)?
            }
            Letter::Under => {
                let before = self.skip - self.base.downs(self.skip)?;
                match self.base.u_index(wanted + before)? {
                    Some(i) => i,
                    None => {
                        return Err(Error::FiniteUnders {
                            requested: k,
                            available: in_prefix.len(),
                        })
                    }
                }
            }
        };
        let index = self.prefix.len() + base_index - self.skip;
        if index > horizon {
            return Err(Error::HorizonExceeded { horizon });
        }
        Ok(index)
    }

    /// The first `m` letters.
    pub fn first_letters(&self, m: usize) -> Result<Vec<Letter>> {
        self.letters().take(m).collect()
    }

    /// Streams the letters from index 1 on.
    pub fn letters(&self) -> Letters<'_> {
        self.letters_within(DEFAULT_SCAN_HORIZON)
    }

    pub fn letters_within(&self, horizon: usize) -> Letters<'_> {
        Letters {
            pattern: self,
            pos: 0,
            horizon,
            cursor: None,
            failed: false,
        }
    }
}

fn primitive_root(word: &[Letter]) -> &[Letter] {
    let n = word.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| (d..n).all(|i| word[i] == word[i - d]))
        .map(|d| &word[..d])
        .unwrap_or(word)
}

enum Cursor {
    Periodic(usize),
    AllDown,
    Blocks {
        kind: Blocks,
        block: usize,
        unders_left: Option<usize>,
    },
}

/// Sequential reader over a pattern's letters; constant work per letter.
pub struct Letters<'a> {
    pattern: &'a Pattern,
    pos: usize,
    horizon: usize,
    cursor: Option<Cursor>,
    failed: bool,
}

impl Letters<'_> {
    /// Letters consumed so far.
    pub fn position(&self) -> usize {
        self.pos
    }

    fn base_cursor(&self) -> Result<Cursor> {
        let skip = self.pattern.skip;
        Ok(match &self.pattern.base {
            Base::Periodic(_) => Cursor::Periodic(skip),
            Base::AllDown => Cursor::AllDown,
            other => {
                let kind = other.blocks().unwrap();
                let done = kind.downs_upto(skip)?;
                let block = done + 1;
                let used = skip - kind.end(done)?;
                Cursor::Blocks {
                    kind,
                    block,
                    unders_left: Some(kind.size(block)? - used),
                }
            }
        })
    }

    fn next_letter(&mut self) -> Result<Letter> {
        if self.pos >= self.horizon {
            return Err(Error::HorizonExceeded {
                horizon: self.horizon,
            });
        }
        if let Some(&l) = self.pattern.prefix.get(self.pos) {
            self.pos += 1;
            return Ok(l);
        }
        if self.cursor.is_none() {
            self.cursor = Some(self.base_cursor()?);
        }
        let letter = match self.cursor.as_mut().unwrap() {
            Cursor::Periodic(i) => {
                let Base::Periodic(word) = &self.pattern.base else {
                    unreachable!()
                };
                let l = word[*i % word.len()];
                *i += 1;
                l
            }
            Cursor::AllDown => Letter::Down,
            Cursor::Blocks {
                kind,
                block,
                unders_left,
            } => {
                let left = match *unders_left {
                    Some(left) => left,
                    None => kind.size(*block)?,
                };
                if left > 0 {
                    *unders_left = Some(left - 1);
                    Letter::Under
                } else {
                    *block += 1;
                    *unders_left = None;
                    Letter::Down
                }
            }
        };
        self.pos += 1;
        Ok(letter)
    }
}

impl Iterator for Letters<'_> {
    type Item = Result<Letter>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let item = self.next_letter();
        self.failed = item.is_err();
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::{Down as D, Under as U};

    fn word(p: &Pattern, n: usize) -> String {
        p.first_letters(n)
            .unwrap()
            .into_iter()
            .map(Letter::as_char)
            .collect()
    }

    #[test]
    fn named_generators_start_correctly() {
        assert_eq!(word(&Pattern::arithmetic_skip(), 14), "UDUUDUUUDUUUUD");
        assert_eq!(word(&Pattern::spell_number(), 14), "UUUDUUUDUUUUUD");
        assert_eq!(word(&Pattern::down_spell_number(), 5), "DUUUD");
        assert_eq!(word(&Pattern::spell_card(), 8), "UUUDUUUD");
    }

    #[test]
    fn letter_at_examples() {
        let ud = Pattern::from_word("UD").unwrap();
        assert_eq!(ud.letter_at(1).unwrap(), U);
        assert_eq!(Pattern::spell_number().letter_at(4).unwrap(), D);
        assert_eq!(Pattern::all_down().letter_at(7).unwrap(), D);
        assert!(ud.letter_at(0).is_err());
    }

    #[test]
    fn index_examples() {
        let ud = Pattern::from_word("UD").unwrap();
        let du = Pattern::from_word("DU").unwrap();
        let uud = Pattern::from_word("UUD").unwrap();
        assert_eq!(ud.d_index(3).unwrap(), 6);
        assert_eq!(Pattern::spell_number().d_index(3).unwrap(), 14);
        assert_eq!(Pattern::all_down().d_index(5).unwrap(), 5);
        assert_eq!(ud.u_index(1).unwrap(), 1);
        assert_eq!(du.u_index(1).unwrap(), 2);
        assert_eq!(uud.u_index(4).unwrap(), 5);
    }

    #[test]
    fn prefix_count_examples() {
        let ud = Pattern::from_word("UD").unwrap();
        assert_eq!(ud.prefix_counts(0).unwrap(), PrefixStats::default());
        let s = ud.prefix_counts(7).unwrap();
        assert_eq!((s.downs, s.unders), (3, 4));
        let s = Pattern::spell_number().prefix_counts(14).unwrap();
        assert_eq!((s.downs, s.unders), (3, 11));
    }

    #[test]
    fn prepend_and_drop_examples() {
        let ud = Pattern::from_word("UD").unwrap();
        let du = Pattern::from_word("DU").unwrap();
        assert_eq!(word(&du.prepend(U), 4), "UDUD");
        // folds back into the periodic base
        assert_eq!(du.prepend(U), ud);
        assert_eq!(ud.prepend(D).d_index(1).unwrap(), 1);
        assert_eq!(ud.drop_front(2), ud);
        assert_eq!(ud.drop_front(1), du);
        assert_eq!(ud.drop_front(0), ud);
        assert_eq!(
            Pattern::spell_number().prepend(D),
            Pattern::down_spell_number()
        );
    }

    #[test]
    fn periodic_words_are_reduced() {
        assert_eq!(
            Pattern::from_word("UDUD").unwrap(),
            Pattern::from_word("UD").unwrap()
        );
        assert_eq!(Pattern::from_word("DDD").unwrap(), Pattern::all_down());
        assert_eq!(Pattern::from_word("UUU"), Err(Error::NoDown));
        assert_eq!(Pattern::periodic(&[]), Err(Error::EmptyWord));
    }

    #[test]
    fn all_down_has_no_unders() {
        let p = Pattern::all_down();
        assert_eq!(
            p.u_index(1),
            Err(Error::FiniteUnders {
                requested: 1,
                available: 0
            })
        );
        assert_eq!(p.prepend(U).u_index(1).unwrap(), 1);
        assert!(p.prepend(U).u_index(2).is_err());
    }

    #[test]
    fn spell_card_stops_after_king() {
        let p = Pattern::spell_card();
        assert_eq!(p.d_index(13).unwrap(), 65);
        assert_eq!(p.letter_at(65).unwrap(), D);
        assert!(matches!(
            p.d_index(14),
            Err(Error::SpellCardExhausted { .. })
        ));
        assert!(matches!(
            p.letter_at(66),
            Err(Error::SpellCardExhausted { .. })
        ));
        assert_eq!(p.u_index(52).unwrap(), 64);
        assert!(p.u_index(53).is_err());
        let letters: Vec<_> = p.letters().collect();
        assert_eq!(letters.len(), 66);
        assert!(letters[65].is_err());
    }

    #[test]
    fn horizon_is_enforced() {
        let ap = Pattern::arithmetic_skip();
        assert_eq!(ap.d_index_within(4, 14).unwrap(), 14);
        assert_eq!(
            ap.d_index_within(5, 14),
            Err(Error::HorizonExceeded { horizon: 14 })
        );
        let mut it = ap.letters_within(3);
        assert!(it.by_ref().take(3).all(|l| l.is_ok()));
        assert!(it.next().unwrap().is_err());
        assert!(it.next().is_none());
    }

    #[test]
    fn dropped_block_patterns_keep_their_letters() {
        let sud = Pattern::spell_number();
        let all = word(&sud, 200);
        for n in [1, 3, 4, 9, 57] {
            let dropped = sud.drop_front(n);
            assert_eq!(word(&dropped, 100), all[n..n + 100]);
            for i in 1..=100 {
                assert_eq!(
                    dropped.letter_at(i).unwrap().as_char(),
                    all.as_bytes()[n + i - 1] as char
                );
            }
        }
    }
}
