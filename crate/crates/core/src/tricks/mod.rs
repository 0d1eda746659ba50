//! Card tricks built on dealing patterns, simulated card by card.
//!
//! A deck is a `Vec` of card labels, top card first. Every trick returns a
//! [`TrickReport`] whose verdict comes from the simulation alone; the
//! recursions are only used where the performer would use them to set up.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::deal;
use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::recursion;

pub mod crt;
mod kth_time;
mod love_ritual;
mod power;

pub use crt::{crt_solve, Congruence, CrtSolution};
pub use kth_time::{deal_and_flip, kth_time_verify, permutation_order};
pub use love_ritual::{
    love_ritual, love_ritual_congruences, love_ritual_feasible, love_ritual_solve,
    love_ritual_verify, LoveRitual,
};
pub use power::{power_of_b, stripes};

/// Seed used when a trick shuffles and the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x00c0_ffee;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Infeasible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Infeasible => "infeasible",
        })
    }
}

/// Result of simulating a trick.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrickReport {
    pub trick: String,
    pub params: BTreeMap<String, String>,
    pub verdict: Verdict,
    /// Values the performer had to work out, such as the love-ritual shift.
    pub solved: BTreeMap<String, String>,
    pub trace: Vec<String>,
}

impl TrickReport {
    fn new(trick: &str) -> TrickReport {
        TrickReport {
            trick: trick.to_string(),
            params: BTreeMap::new(),
            verdict: Verdict::Pass,
            solved: BTreeMap::new(),
            trace: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: impl fmt::Display) -> TrickReport {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn step(&mut self, line: impl Into<String>) {
        self.trace.push(line.into());
    }

    fn finish(mut self, ok: bool) -> TrickReport {
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for TrickReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trick: {}", self.trick)?;
        for (k, v) in &self.params {
            writeln!(f, "  {k} = {v}")?;
        }
        for (k, v) in &self.solved {
            writeln!(f, "{k} = {v}")?;
        }
        for line in &self.trace {
            writeln!(f, "- {line}")?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

/// Deals the whole deck with `pattern` and returns the cards in deal order.
pub fn deal_cards(pattern: &Pattern, deck: &[usize]) -> Result<Vec<usize>> {
    let order = deal::simulate_deal(pattern, deck.len())?.deal_order;
    Ok(order.into_iter().map(|pos| deck[pos - 1]).collect())
}

/// Deals into a face-down pile: the new deck is the deal order reversed.
pub fn deal_to_pile(pattern: &Pattern, deck: &[usize]) -> Result<Vec<usize>> {
    let mut dealt = deal_cards(pattern, deck)?;
    dealt.reverse();
    Ok(dealt)
}

fn cut(deck: &mut [usize], offset: usize) {
    if !deck.is_empty() {
        deck.rotate_left(offset % deck.len());
    }
}

fn need_deck(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument(
            "deck size must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// The audience remembers the card at position `i`; the performer cuts
/// `n - F(n)` cards to the bottom, the audience cuts `i` more, and the deal
/// ends on the remembered card.
pub fn know_freed(pattern: &Pattern, n: usize, i: usize) -> Result<TrickReport> {
    need_deck(n)?;
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!(
            "index {i} is outside a deck of {n}"
        )));
    }
    let mut report = TrickReport::new("know-freed")
        .param("pattern", pattern)
        .param("n", n)
        .param("i", i);
    let mut deck: Vec<usize> = (1..=n).collect();
    let f = recursion::freed(pattern, n)?;
    report.solved.insert("freed".into(), f.to_string());
    cut(&mut deck, n - f);
    report.step(format!("performer moves {} cards to the bottom", n - f));
    cut(&mut deck, i);
    report.step(format!("audience moves {i} cards to the bottom"));
    let last = *deal_cards(pattern, &deck)?.last().unwrap();
    report.step(format!("last card dealt: {last}, remembered: {i}"));
    Ok(report.finish(last == i))
}

/// [`spelling_bee_seeded`] with [`DEFAULT_SEED`].
pub fn spelling_bee(pattern: &Pattern, n: usize) -> Result<TrickReport> {
    spelling_bee_seeded(pattern, n, DEFAULT_SEED)
}

/// The chosen card goes on top, the rest are shuffled under it, and the deal
/// must end on the chosen card.
pub fn spelling_bee_seeded(pattern: &Pattern, n: usize, seed: u64) -> Result<TrickReport> {
    need_deck(n)?;
    let mut report = TrickReport::new("spelling-bee")
        .param("pattern", pattern)
        .param("n", n)
        .param("seed", seed);
    let mut deck: Vec<usize> = (1..=n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    deck[1..].shuffle(&mut rng);
    report.step("chosen card 1 on top, the rest shuffled");
    let f = recursion::freed(pattern, n)?;
    let last = *deal_cards(pattern, &deck)?.last().unwrap();
    report.step(format!("freed position {f}, last card dealt: {last}"));
    Ok(report.finish(f == 1 && last == 1))
}

/// Audience move in the double-dealing trick: the top `count` cards go in
/// below the next `depth` cards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Insertion {
    pub count: usize,
    pub depth: usize,
}

impl Insertion {
    /// The block must land strictly between the top and the bottom card.
    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidScript {
                size: n,
                reason: format!("insert {} at depth {}: {reason}", self.count, self.depth),
            })
        };
        if self.count == 0 || self.count >= n {
            return bad("block must leave cards behind");
        }
        if self.depth == 0 {
            return bad("block must go below at least one card");
        }
        if self.count + self.depth >= n {
            return bad("block would reach the bottom card");
        }
        Ok(())
    }

    pub fn apply(&self, deck: &mut Vec<usize>) {
        let block: Vec<usize> = deck.drain(..self.count).collect();
        let at = self.depth;
        deck.splice(at..at, block);
    }
}

/// The chosen card goes to the bottom, the deck is dealt into a pile, the top
/// card is cycled under, the audience inserts blocks, and the second deal must
/// end on the chosen card.
pub fn double_dealing(pattern: &Pattern, n: usize, script: &[Insertion]) -> Result<TrickReport> {
    need_deck(n)?;
    for ins in script {
        ins.validate(n)?;
    }
    let mut report = TrickReport::new("double-dealing")
        .param("pattern", pattern)
        .param("n", n)
        .param("insertions", script.len());
    let deck: Vec<usize> = (1..=n).collect();
    let chosen = n;
    let mut deck = deal_to_pile(pattern, &deck)?;
    report.step(format!("after the first deal the top card is {}", deck[0]));
    cut(&mut deck, 1);
    for ins in script {
        ins.apply(&mut deck);
    }
    report.step(format!(
        "bottom card before the second deal: {}",
        deck[n - 1]
    ));
    let last = *deal_cards(pattern, &deck)?.last().unwrap();
    report.step(format!("last card dealt: {last}, chosen: {chosen}"));
    Ok(report.finish(last == chosen))
}

/// Four aces (cards 1-4) and then the chosen card 5 on top of `deck_size`
/// cards; the top five are dealt face down, the rest discarded, and `UUUD`
/// deals the aces, leaving the chosen card.
pub fn ace_quartet(deck_size: usize) -> Result<TrickReport> {
    if deck_size < 5 {
        return Err(Error::InvalidArgument(
            "ace quartet needs at least 5 cards".into(),
        ));
    }
    let mut report = TrickReport::new("ace-quartet").param("deck_size", deck_size);
    let deck: Vec<usize> = (1..=deck_size).collect();
    let mut small: Vec<usize> = deck[..5].to_vec();
    small.reverse();
    report.step(format!("five cards dealt face down: {small:?}"));
    let uuud = Pattern::from_word("UUUD")?;
    let dealt = deal_cards(&uuud, &small)?;
    report.step(format!("dealt {:?}", &dealt[..4]));
    let aces_first = dealt[..4].iter().all(|&c| c <= 4);
    Ok(report.finish(aces_first && dealt[4] == 5))
}

/// The same trick without the five-card deal: the target sits at
/// `target` in a deck of `n`, and must be the last card dealt.
pub fn ace_quartet_direct(pattern: &Pattern, n: usize, target: usize) -> Result<TrickReport> {
    need_deck(n)?;
    let mut report = TrickReport::new("ace-quartet")
        .param("pattern", pattern)
        .param("n", n)
        .param("target", target);
    let deck: Vec<usize> = (1..=n).collect();
    let last = *deal_cards(pattern, &deck)?.last().unwrap();
    report.step(format!("last card dealt: {last}"));
    Ok(report.finish(last == target))
}
