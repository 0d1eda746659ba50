//! Repeating a deal until the cards come out in order.

use num_bigint::BigUint;

use super::{deal_cards, TrickReport};
use crate::deal;
use crate::error::{Error, Result};
use crate::pattern::Pattern;

/// Rounds [`kth_time_verify`] will simulate before giving up.
pub const MAX_ROUNDS: u64 = 100_000;

/// Deals face up onto a pile and turns the pile over. The result lists the
/// cards in the order they were dealt.
pub fn deal_and_flip(pattern: &Pattern, deck: &[usize]) -> Result<Vec<usize>> {
    let mut pile = Vec::with_capacity(deck.len());
    for card in deal_cards(pattern, deck)? {
        pile.insert(0, card);
    }
    pile.reverse();
    Ok(pile)
}

fn lcm(a: BigUint, b: usize) -> BigUint {
    let b = BigUint::from(b);
    let g = num_gcd(a.clone(), b.clone());
    a / g * b
}

fn num_gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    while b != BigUint::ZERO {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Order of row `n` of the Josephus triangle as a permutation: the lcm of
/// its cycle lengths.
pub fn permutation_order(pattern: &Pattern, n: usize) -> Result<BigUint> {
    let row = deal::josephus_row(pattern, n)?;
    let mut seen = vec![false; n];
    let mut order = BigUint::from(1u32);
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = row[i] - 1;
            len += 1;
        }
        order = lcm(order, len);
    }
    Ok(order)
}

/// Deals and flips `k - 1` times, where `k` is the order of row `n`, and
/// checks that only the `k`-th deal comes out as `1, 2, ..., n`.
pub fn kth_time_verify(pattern: &Pattern, n: usize) -> Result<TrickReport> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "deck size must be at least 1".into(),
        ));
    }
    let order = permutation_order(pattern, n)?;
    let k = u64::try_from(&order)
        .ok()
        .filter(|&k| k <= MAX_ROUNDS)
        .ok_or_else(|| Error::InvalidArgument(format!("order {order} is too large to deal out")))?;
    let mut report = TrickReport::new("kth-time")
        .param("pattern", pattern)
        .param("n", n);
    report.solved.insert("k".into(), k.to_string());
    let sorted: Vec<usize> = (1..=n).collect();
    let mut deck = sorted.clone();
    let mut ok = true;
    for round in 1..k {
        let dealt = deal_cards(pattern, &deck)?;
        if round <= 3 {
            report.step(format!("deal {round}: {dealt:?}"));
        }
        ok &= dealt != sorted;
        deck = deal_and_flip(pattern, &deck)?;
    }
    let last = deal_cards(pattern, &deck)?;
    report.step(format!("deal {k}: {last:?}"));
    Ok(report.finish(ok && last == sorted))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_time() {
        let sud = Pattern::spell_number();
        assert_eq!(deal::josephus_row(&sud, 6).unwrap(), vec![4, 2, 5, 1, 3, 6]);
        assert_eq!(permutation_order(&sud, 6).unwrap(), BigUint::from(2u32));
        let r = kth_time_verify(&sud, 6).unwrap();
        assert!(r.passed());
        assert_eq!(r.solved["k"], "2");
    }

    #[test]
    fn trivial_and_ud() {
        let d = Pattern::all_down();
        assert_eq!(permutation_order(&d, 7).unwrap(), BigUint::from(1u32));
        assert!(kth_time_verify(&d, 5).unwrap().passed());
        let ud = Pattern::from_word("UD").unwrap();
        // 2 4 6 8 3 7 5 1 is the cycle (1 2 4 8)(3 6 7 5)
        assert_eq!(permutation_order(&ud, 8).unwrap(), BigUint::from(4u32));
        assert!(kth_time_verify(&ud, 6).unwrap().passed());
    }
}
