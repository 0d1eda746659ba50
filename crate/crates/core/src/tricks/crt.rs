//! Chinese remainder solving for moduli that need not be coprime.

use serde::Serialize;

use crate::error::{Error, Result};

/// `x ≡ residue (mod modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub residue: u64,
    pub modulus: u64,
}

impl Congruence {
    /// Reduces `residue` into `0..modulus`. Rejects a zero modulus.
    pub fn new(residue: i128, modulus: u64) -> Result<Congruence> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let residue = residue.rem_euclid(modulus as i128) as u64;
        Ok(Congruence { residue, modulus })
    }

    pub fn holds(&self, x: u64) -> bool {
        x % self.modulus == self.residue
    }
}

/// Outcome of [`crt_solve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CrtSolution {
    /// Every solution is `residue + t * modulus`.
    Solved { residue: u64, modulus: u64 },
    /// Some pair disagrees modulo the gcd of its moduli.
    Infeasible,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(g, s, t)` with `a s + b t = g = gcd(a, b)`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

/// Merges the congruences one at a time. The only error is the combined
/// modulus outgrowing `u64`.
pub fn crt_solve(cs: &[Congruence]) -> Result<CrtSolution> {
    let mut r: i128 = 0;
    let mut m: i128 = 1;
    for c in cs {
        if c.modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let (m2, r2) = (c.modulus as i128, c.residue as i128 % c.modulus as i128);
        let (g, s, _) = ext_gcd(m, m2);
        let diff = r2 - r;
        if diff % g != 0 {
            return Ok(CrtSolution::Infeasible);
        }
        let step = m2 / g;
        let t = ((diff / g) % step)
            .checked_mul(s % step)
            .ok_or(Error::Overflow("crt step"))?
            .rem_euclid(step);
        let lcm = m.checked_mul(step).ok_or(Error::Overflow("crt modulus"))?;
        if lcm > u64::MAX as i128 {
            return Err(Error::Overflow("crt modulus"));
        }
        r = (r + m * t).rem_euclid(lcm);
        m = lcm;
    }
    Ok(CrtSolution::Solved {
        residue: r as u64,
        modulus: m as u64,
    })
}
