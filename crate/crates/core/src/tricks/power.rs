//! Tricks that track a face-up card through cuts and pile splits.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{cut, deal_to_pile, TrickReport, Verdict};
use crate::deal;
use crate::error::{Error, Result};
use crate::pattern::Pattern;

/// Deals `b^a` cards into a face-down pile, flips its top card, applies the
/// cuts, then keeps splitting into `b` piles, keeping the flipped card's pile,
/// until `b` cards remain. The bottom card of the original deck must then be
/// found next to the flipped card.
///
/// Piles keep the deck's order: pile `r` holds the cards at positions
/// `r, r + b, r + 2b, ...` from the top. With two piles, the card that is not
/// face up is the answer. With more, it is the bottom card when the flipped
/// card is on top, and otherwise the card right above the flipped card.
pub fn power_of_b(pattern: &Pattern, b: usize, a: u32, cuts: &[usize]) -> Result<TrickReport> {
    if b < 2 || a == 0 {
        return Err(Error::InvalidArgument("need b ≥ 2 and a ≥ 1".into()));
    }
    let n = b
        .checked_pow(a)
        .filter(|&n| n <= 1 << 20)
        .ok_or(Error::Overflow("deck size b^a"))?;
    let mut report = TrickReport::new("power-of-b")
        .param("pattern", pattern)
        .param("b", b)
        .param("a", a)
        .param("cuts", format!("{cuts:?}"));
    let column = n / b;
    let j = deal::josephus_row(pattern, n)?[column - 1];
    if j != n {
        report.step(format!("J({n},{column}) = {j}, not {n}"));
        report.verdict = Verdict::Infeasible;
        return Ok(report);
    }
    let target = n;
    let fresh: Vec<usize> = (1..=n).collect();
    let mut deck = deal_to_pile(pattern, &fresh)?;
    let flipped = deck[0];
    report.step(format!("flipped card {flipped}"));
    for &c in cuts {
        cut(&mut deck, c);
    }
    while deck.len() > b {
        let at = deck.iter().position(|&c| c == flipped).unwrap();
        deck = deck.iter().skip(at % b).step_by(b).copied().collect();
        report.step(format!("kept a pile of {}", deck.len()));
    }
    let at = deck.iter().position(|&c| c == flipped).unwrap();
    let answer = if b == 2 {
        deck[1 - at]
    } else if at == 0 {
        deck[b - 1]
    } else {
        deck[at - 1]
    };
    report.step(format!(
        "final pile {deck:?}, revealed {answer}, target {target}"
    ));
    Ok(report.finish(answer == target))
}

/// `2n` cards alternating in colour, cut, dealt under-down into a pile, split
/// into halves that are each shuffled, riffled back with the top half's first
/// card on top, and cut again. The colours must still alternate.
pub fn stripes(n: usize, before: &[usize], after: &[usize], seed: u64) -> Result<TrickReport> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "half-deck size must be at least 1".into(),
        ));
    }
    let mut report = TrickReport::new("stripes")
        .param("n", n)
        .param("cuts_before", format!("{before:?}"))
        .param("cuts_after", format!("{after:?}"))
        .param("seed", seed);
    let mut deck: Vec<usize> = (0..2 * n).collect();
    for &c in before {
        cut(&mut deck, c);
    }
    let ud = Pattern::from_word("UD")?;
    let deck = deal_to_pile(&ud, &deck)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut top, mut bottom) = (deck[..n].to_vec(), deck[n..].to_vec());
    top.shuffle(&mut rng);
    bottom.shuffle(&mut rng);
    let mut deck: Vec<usize> = top
        .iter()
        .zip(&bottom)
        .flat_map(|(&t, &b)| [t, b])
        .collect();
    for &c in after {
        cut(&mut deck, c);
    }
    let colours: String = deck
        .iter()
        .map(|c| if c % 2 == 0 { 'R' } else { 'B' })
        .collect();
    report.step(format!("colours {colours}"));
    let alternating = deck.windows(2).all(|w| w[0] % 2 != w[1] % 2);
    Ok(report.finish(alternating))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(w: &str) -> Pattern {
        Pattern::from_word(w).unwrap()
    }

    #[test]
    fn powers() {
        for cuts in [vec![], vec![3], vec![5, 11, 2], vec![15]] {
            assert!(power_of_b(&pat("UD"), 2, 4, &cuts).unwrap().passed());
            assert!(power_of_b(&pat("UUD"), 3, 2, &cuts).unwrap().passed());
        }
        assert!(power_of_b(&pat("UD"), 2, 1, &[]).unwrap().passed());
        assert_eq!(
            power_of_b(&pat("DU"), 2, 3, &[]).unwrap().verdict,
            Verdict::Infeasible
        );
    }

    #[test]
    fn stripes_examples() {
        assert!(stripes(26, &[7, 30], &[11], 1).unwrap().passed());
        assert!(stripes(1, &[], &[], 0).unwrap().passed());
        for off in 0..16 {
            assert!(stripes(8, &[off], &[off], 2).unwrap().passed());
        }
    }
}
