//! Exponent obstruction: J_{1,m}(4M) = 0 when r²(M/m) + s²t ≡ 0 mod 4M has
//! no solution with 0 < r < m and t | M.

use serde::Serialize;
use thiserror::Error;

use crate::arith::divisors;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VanishingError {
    #[error("m = {m} does not divide M = {big_m}")]
    NotDivisible { m: u64, big_m: u64 },
    #[error("({m}, {big_m}) is inconclusive, witness {witness:?}")]
    Inconclusive { m: u64, big_m: u64, witness: ExponentWitness },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentWitness {
    pub r: u64,
    pub s: u64,
    pub t: u64,
}

impl ExponentWitness {
    pub fn is_valid(&self, m: u64, big_m: u64) -> bool {
        let q = 4 * big_m as u128;
        0 < self.r
            && self.r < m
            && big_m.is_multiple_of(self.t)
            && ((self.r as u128).pow(2) * (big_m / m) as u128 + (self.s as u128).pow(2) * self.t as u128).is_multiple_of(q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Criterion {
    Vanishes,
    Inconclusive { witness: ExponentWitness },
}

impl Criterion {
    pub fn vanishes(&self) -> bool {
        matches!(self, Criterion::Vanishes)
    }
}

/// Scans r, then s in [0, 4M), then t | M, returning the first solution.
pub fn exponent_criterion(m: u64, big_m: u64) -> Result<Criterion, VanishingError> {
    if m == 0 || !big_m.is_multiple_of(m) {
        return Err(VanishingError::NotDivisible { m, big_m });
    }
    let q = 4 * big_m;
    let m1 = big_m / m;
    let ts = divisors(big_m);
    for r in 1..m {
        let a = (r * r % q) * m1 % q;
        for s in 0..q {
            let s2 = s * s % q;
            for &t in &ts {
                if (a + s2 * t).is_multiple_of(q) {
                    return Ok(Criterion::Inconclusive { witness: ExponentWitness { r, s, t } });
                }
            }
        }
    }
    Ok(Criterion::Vanishes)
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteRow {
    pub m: u64,
    pub big_m: u64,
    pub level: u64,
    pub result: Criterion,
}

/// (2, 2^a), (3, 3^a), (4, 2^a) for a ≤ a_max; every row must vanish.
pub fn expsapp_suite(a_max: u32) -> Result<Vec<SuiteRow>, VanishingError> {
    let mut rows = Vec::new();
    for a in 0..=a_max {
        for (m, base) in [(2u64, 2u64), (3, 3), (4, 2)] {
            // M must be a multiple of m; a = 0 gives M = m
            let big_m = base.pow(a).max(m);
            let big_m = if big_m % m == 0 { big_m } else { big_m * m };
            let result = exponent_criterion(m, big_m)?;
            if let Criterion::Inconclusive { witness } = result {
                return Err(VanishingError::Inconclusive { m, big_m, witness });
            }
            rows.push(SuiteRow { m, big_m, level: 4 * big_m, result });
        }
    }
    Ok(rows)
}
