//! Recursions and closed forms for moves, triangles, the freed card and the
//! first card's elimination order.
//!
//! Each function computes its answer from a recursion or formula and never
//! calls the simulator for the value it returns. The `*_check` functions
//! compare a family of identities against simulated triangles.

use crate::deal::{self, Flavor, Triangle};
use crate::error::{Error, Result};
use crate::pattern::{Letter, Pattern, DEFAULT_SCAN_HORIZON};

/// Upper bound on dealing rounds followed by a single recursion.
pub const MAX_ROUNDS: usize = DEFAULT_SCAN_HORIZON;

/// One dealing round: the first `n` letters of `pattern`.
struct Round {
    letters: Vec<Letter>,
    downs: usize,
}

impl Round {
    fn unders(&self) -> usize {
        self.letters.len() - self.downs
    }
}

/// Rounds of dealing `n` cards, outermost first. The last round deals every
/// remaining card.
fn rounds(pattern: &Pattern, n: usize) -> Result<Vec<Round>> {
    let mut out = Vec::new();
    let mut cur = pattern.clone();
    let mut size = n;
    while size > 0 {
        if out.len() == MAX_ROUNDS {
            return Err(Error::DepthExceeded { limit: MAX_ROUNDS });
        }
        let letters = cur.first_letters(size)?;
        let downs = letters.iter().filter(|l| l.is_down()).count();
        cur = cur.drop_front(size);
        out.push(Round { letters, downs });
        size -= downs;
    }
    Ok(out)
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

fn periodic_word(pattern: &Pattern) -> Result<&[Letter]> {
    pattern
        .as_periodic()
        .ok_or_else(|| Error::NotPeriodic(pattern.to_string()))
}

// ---------------------------------------------------------------- moves

/// Letters used to deal `n` cards. Periodic patterns use the period formula,
/// everything else the index of the `n`-th down.
pub fn moves(pattern: &Pattern, n: usize) -> Result<usize> {
    if pattern.as_periodic().is_some() {
        moves_periodic(pattern, n)
    } else if n == 0 {
        Ok(0)
    } else {
        pattern.d_index(n)
    }
}

/// `M(n) = M'(n - downs) + n`, where `'` drops the first round.
pub fn moves_by_rounds(pattern: &Pattern, n: usize) -> Result<usize> {
    Ok(rounds(pattern, n)?.iter().map(|r| r.letters.len()).sum())
}

/// `p * floor((n - 1) / q) + d_r` with `p` the period, `q` its downs and
/// `r = ((n - 1) mod q) + 1`. Counting whole periods from `n - 1` keeps the
/// trailing unders of the last period out of the total.
pub fn moves_periodic(pattern: &Pattern, n: usize) -> Result<usize> {
    let word = periodic_word(pattern)?;
    if n == 0 {
        return Ok(0);
    }
    let period = word.len();
    let q = word.iter().filter(|l| l.is_down()).count();
    let full = (n - 1) / q;
    Ok(period * full + pattern.d_index(n - full * q)?)
}

// ---------------------------------------------------------------- triangles

/// Row `n` of the dealing triangle from the one-round recursion.
pub fn dealing_row_by_rounds(pattern: &Pattern, n: usize) -> Result<Vec<usize>> {
    let mut row: Vec<usize> = Vec::new();
    for round in rounds(pattern, n)?.iter().rev() {
        let mut next = Vec::with_capacity(round.letters.len());
        let (mut dk, mut uk) = (0, 0);
        for letter in &round.letters {
            if letter.is_down() {
                dk += 1;
                next.push(dk);
            } else {
                next.push(row[uk] + round.downs);
                uk += 1;
            }
        }
        row = next;
    }
    Ok(row)
}

/// Row `n` of the Josephus triangle from the one-round recursion.
pub fn josephus_row_by_rounds(pattern: &Pattern, n: usize) -> Result<Vec<usize>> {
    let mut row: Vec<usize> = Vec::new();
    for round in rounds(pattern, n)?.iter().rev() {
        let mut ds = Vec::with_capacity(round.downs);
        let mut us = Vec::with_capacity(round.unders());
        for (i, letter) in round.letters.iter().enumerate() {
            if letter.is_down() {
                ds.push(i + 1);
            } else {
                us.push(i + 1);
            }
        }
        ds.extend(row.iter().map(|&j| us[j - 1]));
        row = ds;
    }
    Ok(row)
}

/// Rows `1..=n` of the dealing triangle.
pub fn triangle_t(pattern: &Pattern, n: usize) -> Result<Triangle> {
    need_deck(n)?;
    let rows = (1..=n)
        .map(|m| dealing_row_by_rounds(pattern, m))
        .collect::<Result<_>>()?;
    Ok(Triangle {
        flavor: Flavor::Dealing,
        rows,
    })
}

/// Rows `1..=n` of the Josephus triangle.
pub fn triangle_j(pattern: &Pattern, n: usize) -> Result<Triangle> {
    need_deck(n)?;
    let rows = (1..=n)
        .map(|m| josephus_row_by_rounds(pattern, m))
        .collect::<Result<_>>()?;
    Ok(Triangle {
        flavor: Flavor::Josephus,
        rows,
    })
}

/// Checks the dealing triangles of `D·p` and `U·p` against that of `p`:
/// `T^D(N,1) = 1`, `T^D(N,k) = T(N-1,k-1) + 1`, `T^U(N,1) = T(N,N)`,
/// `T^U(N,k) = T(N,k-1)`.
pub fn triangle_t_prepend_check(pattern: &Pattern, n: usize) -> Result<bool> {
    need_deck(n)?;
    let t = triangle_t(pattern, n)?;
    let td = triangle_t(&pattern.prepend(Letter::Down), n)?;
    let tu = triangle_t(&pattern.prepend(Letter::Under), n)?;
    for big_n in 1..=n {
        for k in 1..=big_n {
            let down = if k == 1 {
                1
            } else {
                t.get(big_n - 1, k - 1) + 1
            };
            let under = if k == 1 {
                t.get(big_n, big_n)
            } else {
                t.get(big_n, k - 1)
            };
            if td.get(big_n, k) != down || tu.get(big_n, k) != under {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks the Josephus triangles of `D·p` and `U·p` against that of `p`:
/// `J^D(N,1) = 1`, `J^D(N,k) = J(N-1,k-1) + 1`, and `J^U(N,k)` is
/// `J(N,k) + 1` wrapped to 1 past `N`.
pub fn josephus_prepend_check(pattern: &Pattern, n: usize) -> Result<bool> {
    need_deck(n)?;
    let j = triangle_j(pattern, n)?;
    let jd = triangle_j(&pattern.prepend(Letter::Down), n)?;
    let ju = triangle_j(&pattern.prepend(Letter::Under), n)?;
    for big_n in 1..=n {
        for k in 1..=big_n {
            let down = if k == 1 {
                1
            } else {
                j.get(big_n - 1, k - 1) + 1
            };
            let plain = j.get(big_n, k);
            let under = if plain == big_n { 1 } else { plain + 1 };
            if jd.get(big_n, k) != down || ju.get(big_n, k) != under {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks the identities linking the under-down and down-under triangles,
/// against simulated rows up to `n`.
pub fn ud_pair_recursions_check(n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two rows".into()));
    }
    let ud = Pattern::from_word("UD")?;
    let du = Pattern::from_word("DU")?;
    let rows = |p: &Pattern| -> Result<Vec<Vec<usize>>> {
        (1..=n).map(|m| deal::dealing_row(p, m)).collect()
    };
    let t_rows = rows(&ud)?;
    let tp_rows = rows(&du)?;
    let t = |a: usize, b: usize| t_rows[a - 1][b - 1];
    let tp = |a: usize, b: usize| tp_rows[a - 1][b - 1];
    let j_rows: Vec<Vec<usize>> = t_rows.iter().map(|r| deal::invert(r)).collect();
    let jp_rows: Vec<Vec<usize>> = tp_rows.iter().map(|r| deal::invert(r)).collect();
    let j = |a: usize, b: usize| j_rows[a - 1][b - 1];
    let jp = |a: usize, b: usize| jp_rows[a - 1][b - 1];

    let mut ok = t(1, 1) == 1 && tp(1, 1) == 1;
    for big_n in 2..=n {
        // building rows from the previous row
        ok &= t(big_n, 1) == t(big_n - 1, big_n - 1) + 1;
        ok &= t(big_n, 2) == 1;
        ok &= tp(big_n, 1) == 1;
        ok &= tp(big_n, 2) == tp(big_n - 1, big_n - 1) + 1;
        for k in 3..=big_n {
            ok &= t(big_n, k) == t(big_n - 1, k - 2) + 1;
            ok &= tp(big_n, k) == tp(big_n - 1, k - 2) + 1;
        }
    }
    for big_n in 1..=n {
        // everything from the first two columns
        for k in 1..=big_n / 2 {
            ok &= t(big_n, 2 * k) == k;
            ok &= tp(big_n, 2 * k) == tp(big_n - k + 1, 2) + k - 1;
        }
        for k in 1..=(big_n - 1) / 2 {
            ok &= t(big_n, 2 * k + 1) == t(big_n - k, 1) + k;
            ok &= tp(big_n, 2 * k + 1) == tp(big_n - k, 1) + k;
            ok &= tp(big_n, 2 * k + 1) == k + 1;
        }
    }
    for m in 1..=n / 2 {
        // one round of dealing
        for k in 0..m {
            ok &= t(2 * m, 2 * k + 1) == t(m, k + 1) + m;
        }
        for k in 1..=m {
            ok &= tp(2 * m, 2 * k) == tp(m, k) + m;
        }
        if 2 * m < n {
            for k in 0..=m {
                ok &= t(2 * m + 1, 2 * k + 1) == tp(m + 1, k + 1) + m;
            }
            for k in 1..=m {
                ok &= tp(2 * m + 1, 2 * k) == t(m, k) + m + 1;
            }
        }
    }
    for big_n in 1..=n {
        // Josephus rows by halves
        for k in 1..=big_n / 2 {
            ok &= j(big_n, k) == 2 * k;
        }
        for k in 1..=big_n.div_ceil(2) {
            ok &= jp(big_n, k) == 2 * k - 1;
        }
    }
    for m in 1..=n / 2 {
        for k in m + 1..=2 * m {
            ok &= j(2 * m, k) == 2 * j(m, k - m) - 1;
            ok &= jp(2 * m, k) == 2 * jp(m, k - m);
        }
        for k in 1..=m {
            ok &= j(2 * m, m + k) == 2 * j(m, k) - 1;
            ok &= jp(2 * m, m + k) == 2 * jp(m, k);
        }
        if 2 * m < n {
            let odd = 2 * m + 1;
            ok &= j(odd, m + 1) == 1;
            ok &= jp(odd, m + 1) == odd;
            for k in m + 2..=odd {
                ok &= j(odd, k) == 2 * j(m, k - m - 1) + 1;
                ok &= jp(odd, k) == 2 * (jp(m, k - m - 1) % m) + 2;
            }
            for k in 1..=m + 1 {
                ok &= j(odd, m + k) == 2 * jp(m + 1, k) - 1;
            }
            for k in 1..=m {
                ok &= jp(odd, m + 1 + k) == 2 * j(m, k);
            }
        }
    }
    for big_n in 1..=n {
        // Josephus rows from the previous row
        ok &= j(big_n, 1) == (1 % big_n) + 1;
        ok &= jp(big_n, 1) == 1;
        for k in 2..=big_n {
            ok &= j(big_n, k) == (j(big_n - 1, k - 1) + 1) % big_n + 1;
            ok &= jp(big_n, k) == jp(big_n - 1, k - 1) % (big_n - 1) + 2;
        }
    }
    Ok(ok)
}

// ---------------------------------------------------------------- freed and first card

/// Position of the last card dealt: `N` if the first `N` letters are all
/// downs, otherwise `u_{F'(unders)}`.
pub fn freed(pattern: &Pattern, n: usize) -> Result<usize> {
    need_deck(n)?;
    let mut stack = Vec::new();
    let mut cur = pattern.clone();
    let mut size = n;
    let mut value = loop {
        let stats = cur.prefix_counts(size)?;
        if stats.downs == size {
            break size;
        }
        if stack.len() == MAX_ROUNDS {
            return Err(Error::DepthExceeded { limit: MAX_ROUNDS });
        }
        let next = cur.drop_front(size);
        stack.push(cur);
        cur = next;
        size = stats.unders;
    };
    for p in stack.iter().rev() {
        value = p.u_index(value)?;
    }
    Ok(value)
}

/// Rank at which the top card is dealt: 1 if the pattern starts with a down,
/// otherwise `E'(unders) + downs`.
pub fn elim_first(pattern: &Pattern, n: usize) -> Result<usize> {
    need_deck(n)?;
    let mut acc = 0;
    let mut cur = pattern.clone();
    let mut size = n;
    for _ in 0..MAX_ROUNDS {
        if cur.starts_with_down()? {
            return Ok(acc + 1);
        }
        let stats = cur.prefix_counts(size)?;
        acc += stats.downs;
        cur = cur.drop_front(size);
        size = stats.unders;
    }
    Err(Error::DepthExceeded { limit: MAX_ROUNDS })
}

/// `F^{Dp}(N) = F^p(N-1) + 1` and `F^{Up}(N) ≡ F^p(N) + 1 (mod N)`, for all
/// `N ≤ n`.
pub fn freed_prepend_check(pattern: &Pattern, n: usize) -> Result<bool> {
    let dp = pattern.prepend(Letter::Down);
    let up = pattern.prepend(Letter::Under);
    for big_n in 1..=n {
        let want_d = if big_n == 1 {
            1
        } else {
            freed(pattern, big_n - 1)? + 1
        };
        if freed(&dp, big_n)? != want_d {
            return Ok(false);
        }
        if freed(&up, big_n)? % big_n != (freed(pattern, big_n)? + 1) % big_n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `E^{Dp}(N) = 1` and `E^{Up}(N) = T^p(N,N)`, for all `N ≤ n`.
pub fn elim_first_prepend_check(pattern: &Pattern, n: usize) -> Result<bool> {
    let dp = pattern.prepend(Letter::Down);
    let up = pattern.prepend(Letter::Under);
    for big_n in 1..=n {
        if elim_first(&dp, big_n)? != 1 {
            return Ok(false);
        }
        let diagonal = dealing_row_by_rounds(pattern, big_n)?[big_n - 1];
        if elim_first(&up, big_n)? != diagonal {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------- periodic patterns

struct Period<'a> {
    word: &'a [Letter],
    downs: usize,
}

impl<'a> Period<'a> {
    fn of(pattern: &'a Pattern) -> Result<Period<'a>> {
        let word = periodic_word(pattern)?;
        let downs = word.iter().filter(|l| l.is_down()).count();
        Ok(Period { word, downs })
    }

    fn len(&self) -> usize {
        self.word.len()
    }

    /// Downs and unders among the first `k` letters, `k ≤ len`.
    fn counts(&self, k: usize) -> (usize, usize) {
        let d = self.word[..k].iter().filter(|l| l.is_down()).count();
        (d, k - d)
    }
}

fn check_position(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        Err(Error::InvalidArgument(format!(
            "position {k} is outside a deck of {n}"
        )))
    } else {
        Ok(())
    }
}

/// Entry `(n, k)` of the dealing triangle of a periodic pattern, by peeling
/// off one period at a time. Rows shorter than the period come from the
/// simulator.
pub fn periodic_triangle_entry(pattern: &Pattern, n: usize, k: usize) -> Result<usize> {
    let period = Period::of(pattern)?;
    check_position(n, k)?;
    let p = period.len();
    let (mut size, mut col, mut acc) = (n, k, 0);
    loop {
        if size < p {
            return Ok(acc + deal::dealing_row(pattern, size)?[col - 1]);
        }
        if col > p {
            col -= p;
        } else {
            let (d, u) = period.counts(col);
            if period.word[col - 1].is_down() {
                return Ok(acc + d);
            }
            col = size - p + u;
        }
        size -= period.downs;
        acc += period.downs;
    }
}

/// Entry `(n, k)` of the Josephus triangle of a periodic pattern, by peeling
/// off one period at a time.
pub fn periodic_josephus_entry(pattern: &Pattern, n: usize, k: usize) -> Result<usize> {
    let period = Period::of(pattern)?;
    check_position(n, k)?;
    let p = period.len();
    let mut sizes = Vec::new();
    let (mut size, mut rank) = (n, k);
    let mut value = loop {
        if size < p {
            break deal::josephus_row(pattern, size)?[rank - 1];
        }
        if rank <= period.downs {
            break pattern.d_index(rank)?;
        }
        sizes.push(size);
        size -= period.downs;
        rank -= period.downs;
    };
    for &size in sizes.iter().rev() {
        value = if value <= size - p {
            value + p
        } else {
            pattern.u_index(p + value - size)?
        };
    }
    Ok(value)
}

/// Stable value of column `k` of the Josephus triangle: `d_k`.
pub fn infinity_row(pattern: &Pattern, k: usize) -> Result<usize> {
    pattern.d_index(k)
}

/// Whether the entry just above the stable part of column `k` equals `u_1`.
/// Vacuous when the first `k` letters are all downs, since row `d_k - 1` then
/// has no column `k`.
pub fn pre_stabilization_holds(pattern: &Pattern, k: usize) -> Result<bool> {
    let dk = pattern.d_index(k)?;
    if dk <= k {
        return Ok(true);
    }
    let row = deal::josephus_row(pattern, dk - 1)?;
    Ok(row[k - 1] == pattern.u_index(1)?)
}

/// For every `N` from `u_1` to `n_max` and every down index `i` in the first
/// period, `F(N) mod p ≠ i mod p`.
pub fn periodic_freed_modularity_check(pattern: &Pattern, n_max: usize) -> Result<bool> {
    let period = Period::of(pattern)?;
    let p = period.len();
    let u1 = match pattern.u_index(1) {
        Ok(u) => u,
        Err(Error::FiniteUnders { .. }) => return Ok(true),
        Err(e) => return Err(e),
    };
    let downs: Vec<usize> = (1..=p).filter(|&i| period.word[i - 1].is_down()).collect();
    for big_n in u1..=n_max {
        let f = freed(pattern, big_n)? % p;
        if downs.iter().any(|&i| i % p == f) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a periodic pattern starting with an under:
/// `E(jp + d_i - 1) = j q + i` for `i ≤ q`, and `E(Np) = E(N r) + N q`,
/// where `q` and `r` count the downs and unders of one period.
pub fn periodic_elim_first_checks(pattern: &Pattern, n_max: usize) -> Result<bool> {
    let period = Period::of(pattern)?;
    if pattern.starts_with_down()? {
        return Err(Error::StartsWithDown(pattern.to_string()));
    }
    let p = period.len();
    let q = period.downs;
    let r = p - q;
    for i in 1..=q {
        let di = pattern.d_index(i)?;
        let mut j = 0;
        while j * p + di - 1 <= n_max {
            let big_n = j * p + di - 1;
            if big_n >= 1 && elim_first(pattern, big_n)? != j * q + i {
                return Ok(false);
            }
            j += 1;
        }
    }
    for big_n in 1..=n_max / p {
        if elim_first(pattern, big_n * p)? != elim_first(pattern, big_n * r)? + big_n * q {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------- every x-th card

/// `F(1) = 1`, `F(N) = ((F(N-1) + x - 1) mod N) + 1`.
pub fn skipx_freed(x: usize, n: usize) -> Result<usize> {
    if x == 0 {
        return Err(Error::InvalidArgument(
            "skip parameter must be at least 1".into(),
        ));
    }
    need_deck(n)?;
    let mut f = 1;
    for m in 2..=n {
        f = (f + x - 1) % m + 1;
    }
    Ok(f)
}

/// `u_k = ceil(xk / (x-1)) - 1` for `U^(x-1) D`.
pub fn skipx_u_index(x: usize, k: usize) -> usize {
    (x * k).div_ceil(x - 1) - 1
}

/// Checks the every-`x`-th identities against simulated triangles up to row
/// `n`: the dealing-triangle shift, the Josephus recursion, `E(xj - 1) = j`,
/// `E(Nx) = E(N(x-1)) + N`, and building row `xk` from row `(x-1)k`.
pub fn skipx_checks(x: usize, n: usize) -> Result<bool> {
    if x < 2 || n < x {
        return Err(Error::InvalidArgument(format!(
            "need x ≥ 2 and n ≥ x, got x = {x}, n = {n}"
        )));
    }
    let pattern = Pattern::every_xth(x)?;
    let t_rows: Vec<Vec<usize>> = (1..=n)
        .map(|m| deal::dealing_row(&pattern, m))
        .collect::<Result<_>>()?;
    let j_rows: Vec<Vec<usize>> = t_rows.iter().map(|r| deal::invert(r)).collect();
    let t = |a: usize, b: usize| t_rows[a - 1][b - 1];
    let j = |a: usize, b: usize| j_rows[a - 1][b - 1];

    for big_n in 1..=n {
        for k in x..=big_n {
            let want = if k == x { 1 } else { t(big_n - 1, k - x) + 1 };
            if t(big_n, k) != want {
                return Ok(false);
            }
        }
    }
    for big_n in x..=n {
        for k in 1..=big_n {
            let want = if k == 1 {
                x
            } else {
                let prev = j(big_n - 1, k - 1);
                if prev <= big_n - x {
                    prev + x
                } else {
                    skipx_u_index(x, x + prev - big_n)
                }
            };
            if j(big_n, k) != want {
                return Ok(false);
            }
        }
    }
    for jj in 1..=(n + 1) / x {
        if t(x * jj - 1, 1) != jj {
            return Ok(false);
        }
    }
    for big_n in 1..=n / x {
        if t(big_n * x, 1) != t(big_n * (x - 1), 1) + big_n {
            return Ok(false);
        }
    }
    for k in 1..=n / x {
        let short = &t_rows[(x - 1) * k - 1];
        let mut built = Vec::with_capacity(x * k);
        for (chunk, inserted) in short.chunks(x - 1).zip(1..) {
            built.extend(chunk.iter().map(|v| v + k));
            built.push(inserted);
        }
        if built != t_rows[x * k - 1] {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------- under-down closed forms

/// `T(N,1) = N - floor(N / 2^(v+1))`, `v` the 2-adic valuation of `N`.
pub fn ud_first_col_closed(n: u64) -> u64 {
    assert!(n >= 1, "deck size must be at least 1");
    n - (n >> (n.trailing_zeros() + 1))
}

/// The first column read off the binary digits of `N`: drop the trailing
/// zeros and the last one, then subtract what is left from `N`.
pub fn ud_first_col_binary(n: u64) -> u64 {
    assert!(n >= 1, "deck size must be at least 1");
    let digits = format!("{n:b}");
    let trimmed = digits.trim_end_matches('0');
    let head = &trimmed[..trimmed.len() - 1];
    let cut = if head.is_empty() {
        0
    } else {
        u64::from_str_radix(head, 2).expect("binary digits")
    };
    n - cut
}

/// Entry `(n, k)` of the under-down dealing triangle in closed form.
pub fn ud_triangle_closed(n: u64, k: u64) -> u64 {
    assert!(1 <= k && k <= n, "position out of range");
    if k.is_multiple_of(2) {
        k / 2
    } else {
        let j = (k - 1) / 2;
        j + ud_first_col_closed(n - j)
    }
}

/// `F(N) = 2(N - 2^floor(log2 N)) + 1` for under-down dealing.
pub fn ud_freed_closed(n: u64) -> u64 {
    assert!(n >= 1, "deck size must be at least 1");
    let top = 1u64 << (63 - n.leading_zeros());
    2 * (n - top) + 1
}

/// `T(N,k) = T(N+1,k-2)` for odd `k > 2` when `N` is odd and `k ≡ 1 (mod 4)`
/// or `N` is even and `k ≡ 3 (mod 4)`, for all `N ≤ n`. Also confirms the
/// parity conditions matter: `T(9,7) = 8` while `T(10,5) = 10`.
pub fn ud_antidiagonal_check(n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::InvalidArgument("need at least three rows".into()));
    }
    let ud = Pattern::from_word("UD")?;
    let rows: Vec<Vec<usize>> = (1..=n.max(9) + 1)
        .map(|m| deal::dealing_row(&ud, m))
        .collect::<Result<_>>()?;
    let t = |a: usize, b: usize| rows[a - 1][b - 1];
    for big_n in 1..=n {
        for k in (3..=big_n).step_by(2) {
            let applies = (big_n % 2 == 1 && k % 4 == 1) || (big_n % 2 == 0 && k % 4 == 3);
            if applies && t(big_n, k) != t(big_n + 1, k - 2) {
                return Ok(false);
            }
        }
    }
    Ok(t(9, 7) == 8 && t(10, 5) == 10)
}
