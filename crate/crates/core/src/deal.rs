//! Card-by-card simulation of pattern dealing.
//!
//! The deck is a queue of labels read top to bottom. Everything else in the
//! crate is checked against these functions.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::Result;
use crate::pattern::{Letter, Pattern};

/// Everything observable from dealing `1..=n` with a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DealOutcome {
    /// Labels in the order they were dealt (row `n` of the Josephus triangle).
    pub deal_order: Vec<usize>,
    /// Letters consumed.
    pub moves: usize,
    /// Last label dealt; 0 for an empty deck.
    pub freed: usize,
    /// Rank at which label 1 was dealt; 0 for an empty deck.
    pub first_card_order: usize,
}

/// Which of the two triangles a [`Triangle`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Flavor {
    /// Row `n` maps a position to the rank at which it is dealt.
    Dealing,
    /// Row `n` lists positions in the order they are dealt.
    Josephus,
}

/// Rows `1..=n` of a dealing or Josephus triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangle {
    pub flavor: Flavor,
    pub rows: Vec<Vec<usize>>,
}

impl Triangle {
    /// Row `n` (1-based).
    pub fn row(&self, n: usize) -> &[usize] {
        &self.rows[n - 1]
    }

    /// Entry `(n, k)`, both 1-based.
    pub fn get(&self, n: usize, k: usize) -> usize {
        self.rows[n - 1][k - 1]
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The other triangle of the same pattern, row by row.
    pub fn inverted(&self) -> Triangle {
        Triangle {
            flavor: match self.flavor {
                Flavor::Dealing => Flavor::Josephus,
                Flavor::Josephus => Flavor::Dealing,
            },
            rows: self.rows.iter().map(|r| invert(r)).collect(),
        }
    }

    /// Entries in reading order: row 1, then row 2, ...
    pub fn flatten(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }
}

/// Inverse of a permutation of `1..=n` given in one-line notation.
pub fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &v) in perm.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    inv
}

/// Deals labels `1..=n` (top to bottom) with `pattern` until the deck is empty.
pub fn simulate_deal(pattern: &Pattern, n: usize) -> Result<DealOutcome> {
    let mut deck: VecDeque<usize> = (1..=n).collect();
    let mut letters = pattern.letters();
    let mut deal_order = Vec::with_capacity(n);
    while !deck.is_empty() {
        match letters.next().expect("letter stream never ends")? {
            Letter::Under => deck.rotate_left(1),
            Letter::Down => deal_order.push(deck.pop_front().unwrap()),
        }
    }
    let freed = deal_order.last().copied().unwrap_or(0);
    let first_card_order = deal_order.iter().position(|&c| c == 1).map_or(0, |i| i + 1);
    Ok(DealOutcome {
        deal_order,
        moves: letters.position(),
        freed,
        first_card_order,
    })
}

/// Row `n` of the dealing triangle: where each position's card is dealt.
pub fn dealing_row(pattern: &Pattern, n: usize) -> Result<Vec<usize>> {
    Ok(invert(&simulate_deal(pattern, n)?.deal_order))
}

/// Row `n` of the Josephus triangle.
pub fn josephus_row(pattern: &Pattern, n: usize) -> Result<Vec<usize>> {
    Ok(simulate_deal(pattern, n)?.deal_order)
}

/// Builds the deck that deals out `1..=n` in order by running the pattern
/// backwards: a down puts the highest unused card on top, an under moves the
/// bottom card to the top.
pub fn prepare_deck(pattern: &Pattern, n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let moves = pattern.d_index(n)?;
    let letters = pattern.first_letters(moves)?;
    let mut deck = VecDeque::with_capacity(n);
    let mut next = n;
    for letter in letters.iter().rev() {
        match letter {
            Letter::Down => {
                deck.push_front(next);
                next -= 1;
            }
            Letter::Under => {
                if let Some(card) = deck.pop_back() {
                    deck.push_front(card);
                }
            }
        }
    }
    Ok(deck.into())
}

/// The cards dealt and left over after the first `n` letters on a deck of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub dealt: Vec<usize>,
    /// Remaining labels, top first: the first card put under is on top.
    pub remaining: Vec<usize>,
}

/// Applies exactly the first `n` letters to labels `1..=n`.
pub fn deal_one_round(pattern: &Pattern, n: usize) -> Result<Round> {
    let mut deck: VecDeque<usize> = (1..=n).collect();
    let mut dealt = Vec::new();
    for letter in pattern.letters().take(n) {
        match letter? {
            Letter::Under => deck.rotate_left(1),
            Letter::Down => dealt.push(deck.pop_front().unwrap()),
        }
    }
    Ok(Round {
        dealt,
        remaining: deck.into(),
    })
}

/// Deals `1..=n` and checks the result comes out as `1, 2, ..., n` when the
/// deck is first arranged by `arrangement` (labels top to bottom).
pub fn deals_in_order(pattern: &Pattern, arrangement: &[usize]) -> Result<bool> {
    let order = simulate_deal(pattern, arrangement.len())?.deal_order;
    Ok(order
        .iter()
        .enumerate()
        .all(|(rank, &pos)| arrangement[pos - 1] == rank + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(w: &str) -> Pattern {
        Pattern::from_word(w).unwrap()
    }

    #[test]
    fn simulate_examples() {
        let out = simulate_deal(&pat("UD"), 8).unwrap();
        assert_eq!(out.deal_order, vec![2, 4, 6, 8, 3, 7, 5, 1]);
        assert_eq!(out.moves, 16);
        assert_eq!(out.freed, 1);
        assert_eq!(out.first_card_order, 8);

        let out = simulate_deal(&pat("DU"), 5).unwrap();
        assert_eq!(out.deal_order, vec![1, 3, 5, 4, 2]);
        assert_eq!(out.moves, 9);

        let out = simulate_deal(&pat("UD"), 0).unwrap();
        assert!(out.deal_order.is_empty());
        assert_eq!(out.moves, 0);
    }

    #[test]
    fn dealing_row_examples() {
        assert_eq!(
            dealing_row(&pat("UD"), 10).unwrap(),
            vec![8, 1, 6, 2, 10, 3, 7, 4, 9, 5]
        );
        assert_eq!(
            dealing_row(&pat("DU"), 10).unwrap(),
            vec![1, 6, 2, 10, 3, 7, 4, 9, 5, 8]
        );
        assert_eq!(
            dealing_row(&Pattern::all_down(), 6).unwrap(),
            vec![1, 2, 3, 4, 5, 6]
        );
    }

    #[test]
    fn prepare_deck_examples() {
        assert_eq!(prepare_deck(&pat("UD"), 4).unwrap(), vec![4, 1, 3, 2]);
        assert_eq!(prepare_deck(&pat("UD"), 1).unwrap(), vec![1]);
        assert_eq!(
            prepare_deck(&Pattern::spell_card(), 13).unwrap(),
            vec![3, 8, 7, 1, 12, 6, 4, 2, 11, 13, 10, 9, 5]
        );
        assert!(prepare_deck(&Pattern::spell_card(), 14).is_err());
    }

    #[test]
    fn one_round_examples() {
        // UDUDUDU on 1..7
        let r = deal_one_round(&pat("UD"), 7).unwrap();
        assert_eq!(r.dealt, vec![2, 4, 6]);
        assert_eq!(r.remaining, vec![1, 3, 5, 7]);

        let r = deal_one_round(&pat("DU"), 4).unwrap();
        assert_eq!(r.dealt, vec![1, 3]);
        assert_eq!(r.remaining, vec![2, 4]);

        let r = deal_one_round(&Pattern::all_down(), 3).unwrap();
        assert_eq!(r.dealt, vec![1, 2, 3]);
        assert!(r.remaining.is_empty());
    }

    #[test]
    fn prepared_decks_deal_in_order() {
        for w in ["UD", "DU", "UUD", "UDD", "DDU"] {
            for n in 1..=30 {
                let deck = prepare_deck(&pat(w), n).unwrap();
                assert!(deals_in_order(&pat(w), &deck).unwrap(), "{w} {n}");
            }
        }
    }
}
