//! The love ritual generalized to any pattern.
//!
//! `2n` cards where card `i` and card `i + n` match. After the audience's
//! cuts and insertions the top and bottom cards match; the top one is set
//! aside, up to `k` cards are discarded, `ℓ` cards are cut from top to bottom,
//! and the deal must end on the bottom card.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::crt::{crt_solve, gcd, Congruence, CrtSolution};
use super::{deal_cards, TrickReport, Verdict, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::recursion;

/// Outcome of [`love_ritual_solve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LoveRitual {
    /// `ell` is the least positive shift; any `ell + t * modulus` also works.
    Feasible {
        ell: u64,
        modulus: u64,
    },
    Infeasible,
}

fn check_params(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "half-deck size must be at least 2".into(),
        ));
    }
    if k >= 2 * n - 1 {
        return Err(Error::InvalidArgument(format!(
            "at most {} discards with {} cards",
            2 * n - 2,
            2 * n - 1
        )));
    }
    Ok(())
}

/// `ℓ ≡ -F(2n - 1 - i) (mod 2n - 1 - i)` for `i = 0..=k`.
pub fn love_ritual_congruences(pattern: &Pattern, n: usize, k: usize) -> Result<Vec<Congruence>> {
    check_params(n, k)?;
    (0..=k)
        .map(|i| {
            let m = 2 * n - 1 - i;
            let f = recursion::freed(pattern, m)?;
            Congruence::new(-(f as i128), m as u64)
        })
        .collect()
}

/// Least positive shift that works for every discard count up to `k`.
pub fn love_ritual_solve(pattern: &Pattern, n: usize, k: usize) -> Result<LoveRitual> {
    let cs = love_ritual_congruences(pattern, n, k)?;
    Ok(match crt_solve(&cs)? {
        CrtSolution::Solved { residue, modulus } => LoveRitual::Feasible {
            ell: if residue == 0 { modulus } else { residue },
            modulus,
        },
        CrtSolution::Infeasible => LoveRitual::Infeasible,
    })
}

/// `F(i) ≡ F(j) (mod gcd(i, j))` for all deck sizes `i, j` in
/// `2n-1-k ..= 2n-1`.
pub fn love_ritual_feasible(pattern: &Pattern, n: usize, k: usize) -> Result<bool> {
    check_params(n, k)?;
    let sizes: Vec<usize> = (2 * n - 1 - k..=2 * n - 1).collect();
    let freed: Vec<usize> = sizes
        .iter()
        .map(|&m| recursion::freed(pattern, m))
        .collect::<Result<_>>()?;
    for a in 0..sizes.len() {
        for b in a + 1..sizes.len() {
            let g = gcd(sizes[a] as u64, sizes[b] as u64) as usize;
            if freed[a] % g != freed[b] % g {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Runs the ritual for every discard count `0..=k`, every cut offset, and
/// every insertion depth, with seeded shuffles of the inserted block and of
/// the cards above the bottom one.
pub fn love_ritual_verify(pattern: &Pattern, n: usize, k: usize, ell: u64) -> Result<TrickReport> {
    check_params(n, k)?;
    let mut report = TrickReport::new("love-ritual")
        .param("pattern", pattern)
        .param("half_deck", n)
        .param("max_discards", k)
        .param("seed", DEFAULT_SEED);
    report.solved.insert("ℓ".into(), ell.to_string());
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut failures = Vec::new();
    let mut branches = 0usize;
    for offset in 0..2 * n {
        for depth in 1..=n {
            for x in 0..=k {
                branches += 1;
                let mut deck: Vec<usize> = (1..=n).chain(1..=n).collect();
                deck.rotate_left(offset);
                let mut block: Vec<usize> = deck.drain(..n - 1).collect();
                block.shuffle(&mut rng);
                deck.splice(depth..depth, block);
                let safe = deck.remove(0);
                let last = deck.len() - 1;
                deck[..last].shuffle(&mut rng);
                deck.drain(..x);
                let size = deck.len();
                deck.rotate_left((ell % size as u64) as usize);
                let revealed = *deal_cards(pattern, &deck)?.last().unwrap();
                if revealed != safe {
                    failures.push((offset, depth, x));
                }
            }
        }
    }
    report.step(format!("{branches} branches simulated"));
    let mut bad_x: Vec<usize> = failures.iter().map(|f| f.2).collect();
    bad_x.sort_unstable();
    bad_x.dedup();
    if let Some(&(offset, depth, x)) = failures.first() {
        report.step(format!(
            "{} branches failed, first at cut {offset}, depth {depth}, discards {x}",
            failures.len()
        ));
        report.step(format!("discard counts that fail: {bad_x:?}"));
    }
    Ok(report.finish(failures.is_empty()))
}

/// Solves for the shift and then simulates it. An unsolvable system gives an
/// [`Verdict::Infeasible`] report naming the first conflicting pair.
pub fn love_ritual(pattern: &Pattern, n: usize, k: usize) -> Result<TrickReport> {
    match love_ritual_solve(pattern, n, k)? {
        LoveRitual::Feasible { ell, modulus } => {
            let mut report = love_ritual_verify(pattern, n, k, ell)?;
            report.solved.insert("modulus".into(), modulus.to_string());
            Ok(report)
        }
        LoveRitual::Infeasible => {
            let mut report = TrickReport::new("love-ritual")
                .param("pattern", pattern)
                .param("half_deck", n)
                .param("max_discards", k);
            let cs = love_ritual_congruences(pattern, n, k)?;
            'pairs: for (i, a) in cs.iter().enumerate() {
                for b in &cs[i + 1..] {
                    let g = gcd(a.modulus, b.modulus);
                    if a.residue % g != b.residue % g {
                        report.step(format!(
                            "ℓ ≡ {} (mod {}) and ℓ ≡ {} (mod {}) disagree mod {g}",
                            a.residue, a.modulus, b.residue, b.modulus
                        ));
                        break 'pairs;
                    }
                }
            }
            report.verdict = Verdict::Infeasible;
            Ok(report)
        }
    }
}
