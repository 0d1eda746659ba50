//! Invariant suites for `card-dealing check`. Each returns named pass/fail
//! results; the closed forms and recursions are compared with the simulator.

use card_dealing::deal;
use card_dealing::recursion;
use card_dealing::sequence::{self, Family, SpecialSize};
use card_dealing::{Error, Pattern};
use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Round recursions against the simulator
    Oracle,
    /// T and J rows are inverse permutations
    Inverse,
    /// Prepending U or D
    Prepend,
    /// Periodic-pattern theorems
    Periodic,
    /// Identities linking UD and DU
    UdPair,
    /// UD closed forms
    UdClosed,
    /// Every-x-th-card identities
    SkipX,
    /// First/last-freed closed forms against search
    SpecialSizes,
}

pub struct Params {
    pub rows: usize,
    pub x: usize,
    pub limit: usize,
}

type Results = Vec<(String, bool)>;

fn all(
    range: std::ops::RangeInclusive<usize>,
    mut f: impl FnMut(usize) -> Result<bool, Error>,
) -> Result<bool, Error> {
    for n in range {
        if !f(n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn run_suite(suite: Suite, pattern: &Pattern, p: &Params) -> Result<Results, Error> {
    if p.rows == 0 {
        return Err(Error::InvalidArgument("--rows must be at least 1".into()));
    }
    let n = p.rows;
    match suite {
        Suite::Oracle => oracle(pattern, n),
        Suite::Inverse => inverse(pattern, n),
        Suite::Prepend => Ok(vec![
            (
                format!("T prepend rule, rows 1..={n}"),
                recursion::triangle_t_prepend_check(pattern, n)?,
            ),
            (
                format!("J prepend rule, rows 1..={n}"),
                recursion::josephus_prepend_check(pattern, n)?,
            ),
            (
                format!("freed prepend rule, N ≤ {n}"),
                recursion::freed_prepend_check(pattern, n)?,
            ),
            (
                format!("elim-first prepend rule, N ≤ {n}"),
                recursion::elim_first_prepend_check(pattern, n)?,
            ),
        ]),
        Suite::Periodic => periodic(pattern, n),
        Suite::UdPair => Ok(vec![(
            format!("UD/DU identities, rows 1..={n}"),
            recursion::ud_pair_recursions_check(n.max(2))?,
        )]),
        Suite::UdClosed => ud_closed(n),
        Suite::SkipX => skip_x(p.x, n),
        Suite::SpecialSizes => special_sizes(p.limit),
    }
}

fn oracle(pattern: &Pattern, n: usize) -> Result<Results, Error> {
    let mut t = true;
    let mut j = true;
    let mut f = true;
    let mut e = true;
    let mut m = true;
    for size in 1..=n {
        let sim = deal::simulate_deal(pattern, size)?;
        j &= recursion::josephus_row_by_rounds(pattern, size)? == sim.deal_order;
        t &= recursion::dealing_row_by_rounds(pattern, size)? == deal::invert(&sim.deal_order);
        f &= recursion::freed(pattern, size)? == sim.freed;
        e &= recursion::elim_first(pattern, size)? == sim.first_card_order;
        m &= recursion::moves(pattern, size)? == sim.moves
            && recursion::moves_by_rounds(pattern, size)? == sim.moves;
    }
    Ok(vec![
        (format!("T rows 1..={n}"), t),
        (format!("J rows 1..={n}"), j),
        (format!("freed, N ≤ {n}"), f),
        (format!("elim-first, N ≤ {n}"), e),
        (format!("moves, N ≤ {n}"), m),
    ])
}

fn inverse(pattern: &Pattern, n: usize) -> Result<Results, Error> {
    let mut inverse = true;
    let mut in_order = true;
    let mut prepared = true;
    for size in 1..=n {
        let t = deal::dealing_row(pattern, size)?;
        let j = deal::josephus_row(pattern, size)?;
        inverse &= deal::invert(&t) == j && deal::invert(&j) == t;
        in_order &= deal::deals_in_order(pattern, &t)?;
        prepared &= deal::prepare_deck(pattern, size)? == t;
    }
    Ok(vec![
        (format!("T and J inverse, rows 1..={n}"), inverse),
        (format!("T rows deal in order, rows 1..={n}"), in_order),
        (format!("backward build equals T, rows 1..={n}"), prepared),
    ])
}

fn periodic(pattern: &Pattern, n: usize) -> Result<Results, Error> {
    if pattern.as_periodic().is_none() {
        return Err(Error::NotPeriodic(pattern.to_string()));
    }
    let entries = all(1..=n, |size| {
        let t = deal::dealing_row(pattern, size)?;
        let j = deal::invert(&t);
        for k in 1..=size {
            if recursion::periodic_triangle_entry(pattern, size, k)? != t[k - 1]
                || recursion::periodic_josephus_entry(pattern, size, k)? != j[k - 1]
            {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    let k_max = n.min(20);
    let stable = all(1..=k_max, |k| {
        let dk = recursion::infinity_row(pattern, k)?;
        all(dk..=dk + 20, |size| {
            Ok(deal::josephus_row(pattern, size)?[k - 1] == dk)
        })
    })?;
    let before = all(1..=k_max, |k| {
        recursion::pre_stabilization_holds(pattern, k)
    })?;
    let mut out = vec![
        (format!("periodic T and J entries, rows 1..={n}"), entries),
        (
            format!("freed avoids down positions mod p, N ≤ {n}"),
            recursion::periodic_freed_modularity_check(pattern, n)?,
        ),
        (format!("columns 1..={k_max} settle at d_k"), stable),
        (
            format!("entry above the settled part is u_1, k ≤ {k_max}"),
            before,
        ),
    ];
    if !pattern.starts_with_down()? {
        out.push((
            format!("elim-first at jp + d_i - 1 and Np, N ≤ {n}"),
            recursion::periodic_elim_first_checks(pattern, n)?,
        ));
    }
    Ok(out)
}

fn ud_closed(n: usize) -> Result<Results, Error> {
    let ud = Pattern::from_word("UD")?;
    let mut triangle = true;
    let mut freed = true;
    let mut first = true;
    for size in 1..=n {
        let row = deal::dealing_row(&ud, size)?;
        let s = size as u64;
        triangle &= (1..)
            .zip(&row)
            .all(|(k, &v)| recursion::ud_triangle_closed(s, k) == v as u64);
        freed &= recursion::ud_freed_closed(s) == deal::simulate_deal(&ud, size)?.freed as u64;
        first &= recursion::ud_first_col_closed(s) == row[0] as u64
            && recursion::ud_first_col_binary(s) == row[0] as u64;
    }
    Ok(vec![
        (format!("T closed form, rows 1..={n}"), triangle),
        (format!("freed closed form, N ≤ {n}"), freed),
        (format!("first column closed forms, N ≤ {n}"), first),
        (
            format!("anti-diagonal rule, N ≤ {n}"),
            recursion::ud_antidiagonal_check(n)?,
        ),
    ])
}

fn skip_x(x: usize, n: usize) -> Result<Results, Error> {
    let pattern = Pattern::every_xth(x)?;
    let freed = all(1..=n, |size| {
        Ok(recursion::skipx_freed(x, size)? == deal::simulate_deal(&pattern, size)?.freed)
    })?;
    let unders = all(1..=n, |k| {
        Ok(recursion::skipx_u_index(x, k) == pattern.u_index(k)?)
    })?;
    Ok(vec![
        (
            format!("every-{x}th identities, rows 1..={n}"),
            recursion::skipx_checks(x, n.max(x))?,
        ),
        (format!("freed recurrence, N ≤ {n}"), freed),
        (format!("under positions, k ≤ {n}"), unders),
    ])
}

fn special_sizes(limit: usize) -> Result<Results, Error> {
    let mut out = Vec::new();
    for name in SpecialSize::ALL {
        let (pattern, family) = name.source();
        let found = if family == Family::FirstFreed {
            sequence::first_freed(&pattern, usize::MAX, limit)?
        } else {
            sequence::last_freed(&pattern, usize::MAX, limit)?
        };
        let ok = if name == SpecialSize::LUudStep {
            found.windows(2).filter(|w| w[0] % 2 == 1).all(|w| {
                sequence::special_size_closed_form(name, w[0] as u64)
                    .is_ok_and(|next| next == w[1].into())
            })
        } else {
            let mut closed = Vec::new();
            for m in 1.. {
                let t = sequence::special_size_closed_form(name, m)?;
                if t > limit.into() {
                    break;
                }
                closed.push(usize::try_from(t).map_err(|_| Error::Overflow("special size"))?);
            }
            closed == found
        };
        out.push((format!("{name}, terms ≤ {limit}"), ok));
    }
    Ok(out)
}
