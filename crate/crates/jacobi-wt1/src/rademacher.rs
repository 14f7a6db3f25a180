//! Truncated weight-½ vector-valued Rademacher sums.
//!
//! A multiplier maps γ ∈ Γ0(n) to the row ν(γ)ᵀ𝔢₁. The default one is the
//! Θ_m representation itself, taken on the lift (γ, +√(cτ+d)).

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{gcd_i64, modinv};
use crate::cyclotomic::{CycError, Precision};
use crate::sl2::{word_decompose, IntMat};
use crate::weil::{QuadSpace, WeilError, WeilRep};

#[derive(Debug, Error)]
pub enum RademacherError {
    #[error("need n, m, K and depth positive")]
    BadParams,
    #[error("Im τ must be positive, got {0}")]
    NotUpperHalfPlane(Complex64),
    #[error("multiplier has ν₁₁(T) = {got}, expected e(1/4m) = {want}")]
    BadMultiplier { got: Complex64, want: Complex64 },
    #[error("multiplier failed: {0}")]
    Multiplier(String),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error("csv output: {0}")]
    Csv(String),
}

type Result<T> = std::result::Result<T, RademacherError>;

pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

/// Evaluates the 𝔢₁ row of a multiplier system on Γ0(n).
pub trait Multiplier {
    fn dim(&self) -> usize;
    /// Position of 𝔢₁ in the basis.
    fn first(&self) -> usize;
    fn row(&self, g: &IntMat) -> Result<Vec<Complex64>>;
}

/// Row r = 1 of ρ_{D_m}(γ̃) with γ̃ the principal-branch lift. Entries are
/// computed exactly, so structural zeros stay exactly zero.
pub struct ThetaMultiplier {
    pub m: u64,
    rep: WeilRep,
}

impl ThetaMultiplier {
    pub fn new(m: u64) -> Result<Self> {
        Ok(ThetaMultiplier { m, rep: WeilRep::new(QuadSpace::d(m, 1)?)? })
    }

    /// The exact row with its zero pattern.
    pub fn exact_row(&self, g: &IntMat) -> Result<Vec<crate::cyclotomic::CycNumber>> {
        let w = word_decompose(g);
        let (row, s) = self.rep.exact_row(&w, 1)?;
        let mut c = self.rep.scalar_pow(s);
        if w.metaplectic_sign() < 0 {
            c = -&c;
        }
        Ok(row.iter().map(|z| &z.to_cyc() * &c).collect())
    }
}

impl Multiplier for ThetaMultiplier {
    fn dim(&self) -> usize {
        self.rep.dim()
    }

    fn first(&self) -> usize {
        1
    }

    fn row(&self, g: &IntMat) -> Result<Vec<Complex64>> {
        let w = word_decompose(g);
        let (row, s) = self.rep.exact_row(&w, 1)?;
        let c = self.rep.scalar_pow(s).to_complex(Precision::Compensated) * w.metaplectic_sign() as f64;
        let mut out = Vec::with_capacity(row.len());
        for z in row {
            let z = z.reduce()?;
            out.push(if z.is_trivially_zero() { Complex64::new(0.0, 0.0) } else { z.to_complex() * c });
        }
        Ok(out)
    }
}

pub struct RademacherParams {
    pub n: u64,
    pub m: u64,
    pub k: u64,
    pub depth: usize,
    multiplier: Box<dyn Multiplier>,
}

impl RademacherParams {
    /// Checks ν₁₁(T) = e(1/4m) on construction.
    pub fn new(n: u64, m: u64, k: u64, depth: usize, multiplier: Box<dyn Multiplier>) -> Result<Self> {
        if n == 0 || m == 0 || k == 0 || depth == 0 {
            return Err(RademacherError::BadParams);
        }
        let got = multiplier.row(&[1, 1, 0, 1])?[multiplier.first()];
        let want = e(1.0 / (4 * m) as f64);
        if (got - want).norm() > 1e-12 {
            return Err(RademacherError::BadMultiplier { got, want });
        }
        Ok(RademacherParams { n, m, k, depth, multiplier })
    }

    pub fn with_theta(n: u64, m: u64, k: u64, depth: usize) -> Result<Self> {
        Self::new(n, m, k, depth, Box::new(ThetaMultiplier::new(m)?))
    }

    pub fn multiplier(&self) -> &dyn Multiplier {
        self.multiplier.as_ref()
    }
}

fn gamma_half(k: usize) -> f64 {
    // Γ(k + 3/2)
    let mut g = PI.sqrt() / 2.0;
    for j in 0..k {
        g *= j as f64 + 1.5;
    }
    g
}

/// The convergence kernel r^{[α]}_{1/2}(γ, τ), truncated at `depth` terms.
pub fn kernel_r(alpha: f64, g: &IntMat, tau: Complex64, depth: usize) -> Complex64 {
    let [_, _, c, d] = *g;
    if c == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let w = (c as f64) * (Complex64::new(c as f64, 0.0) * tau + d as f64);
    let z = Complex64::new(0.0, -2.0 * PI * alpha) / w;
    let mut zk = z.sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..depth {
        acc += zk / gamma_half(k);
        zk *= z;
    }
    (Complex64::new(0.0, 2.0 * PI * alpha) / w).exp() * acc
}

/// Γ∞-coset representatives of Γ0(n) with 0 ≤ c < K and |d| < K².
pub fn coset_reps(n: u64, k: u64) -> Vec<IntMat> {
    let mut out = vec![[1, 0, 0, 1]];
    let (n, k) = (n as i64, k as i64);
    let dmax = k * k;
    for c in (1..k).filter(|c| c % n == 0) {
        for d in (1 - dmax)..dmax {
            if gcd_i64(c, d) != 1 {
                continue;
            }
            let a = if c == 1 { 0 } else { modinv(d, c).expect("coprime") };
            let b = (a * d - 1) / c;
            out.push([a, b, c, d]);
        }
    }
    out
}

/// Least K for which a representative enters the truncation.
fn entry_k(g: &IntMat) -> u64 {
    if g[2] == 0 {
        return 1;
    }
    let (c, d) = (g[2].unsigned_abs(), g[3].unsigned_abs());
    let mut k = c + 1;
    while k * k <= d {
        k += 1;
    }
    k
}

/// One summand ν(γ)ᵀ𝔢₁·e(−(aτ+b)/(4m(cτ+d)))·(cτ+d)^{−1/2}·r(γ, τ).
pub fn summand(p: &RademacherParams, g: &IntMat, tau: Complex64) -> Result<Vec<Complex64>> {
    let [a, b, c, d] = *g;
    let row = p.multiplier.row(g)?;
    let j = Complex64::new(c as f64, 0.0) * tau + d as f64;
    let alpha = -1.0 / (4 * p.m) as f64;
    let x = (Complex64::new(a as f64, 0.0) * tau + b as f64) / j * alpha;
    let scal = (Complex64::new(0.0, 2.0 * PI) * x).exp() / j.sqrt() * kernel_r(alpha, g, tau, p.depth);
    Ok(row.into_iter().map(|v| if v == Complex64::new(0.0, 0.0) { v } else { v * scal }).collect())
}

/// Pairwise sum in a fixed order.
fn pairwise(v: &[Complex64]) -> Complex64 {
    match v.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => v[0],
        n => pairwise(&v[..n / 2]) + pairwise(&v[n / 2..]),
    }
}

/// Partial sums S_1, …, S_K, each a vector over the multiplier basis.
pub fn truncated_sums(p: &RademacherParams, tau: Complex64) -> Result<Vec<Vec<Complex64>>> {
    if tau.im <= 0.0 {
        return Err(RademacherError::NotUpperHalfPlane(tau));
    }
    let dim = p.multiplier.dim();
    // per K, per component, the new summands
    let mut fresh: Vec<Vec<Vec<Complex64>>> = vec![vec![Vec::new(); dim]; p.k as usize];
    for g in coset_reps(p.n, p.k) {
        let kk = entry_k(&g) as usize;
        let s = summand(p, &g, tau)?;
        for (i, v) in s.into_iter().enumerate() {
            fresh[kk - 1][i].push(v);
        }
    }
    let mut out = Vec::new();
    let mut acc = vec![Complex64::new(0.0, 0.0); dim];
    for f in fresh {
        for (i, terms) in f.iter().enumerate() {
            acc[i] += pairwise(terms);
        }
        out.push(acc.clone());
    }
    Ok(out)
}

pub fn truncated_sum(p: &RademacherParams, tau: Complex64) -> Result<Vec<Complex64>> {
    Ok(truncated_sums(p, tau)?.pop().expect("K >= 1"))
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnosticRow {
    #[serde(rename = "K")]
    pub k: u64,
    pub component: usize,
    pub real: f64,
    pub imag: f64,
    pub cauchy_delta: f64,
}

/// One row per (K, component) with |S_K − S_{K−1}|.
pub fn diagnostics(sums: &[Vec<Complex64>]) -> Vec<DiagnosticRow> {
    let mut rows = Vec::new();
    for (k, s) in sums.iter().enumerate() {
        for (i, v) in s.iter().enumerate() {
            let delta = if k == 0 { 0.0 } else { (v - sums[k - 1][i]).norm() };
            rows.push(DiagnosticRow { k: k as u64 + 1, component: i, real: v.re, imag: v.im, cauchy_delta: delta });
        }
    }
    rows
}

pub fn write_diagnostics<W: Write>(rows: &[DiagnosticRow], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r).map_err(|e| RademacherError::Csv(e.to_string()))?;
    }
    wr.flush().map_err(|e| RademacherError::Csv(e.to_string()))
}

/// For the Θ₉ multiplier on Γ0(3): every summand's row has exact zeros at
/// the residues divisible by 3. Returns the number of representatives checked.
pub fn termwise_block_check(k: u64) -> Result<Option<usize>> {
    let mult = ThetaMultiplier::new(9)?;
    let reps = coset_reps(3, k);
    for g in &reps {
        let row = mult.row(g)?;
        if row.iter().enumerate().any(|(x, v)| x % 3 == 0 && *v != Complex64::new(0.0, 0.0)) {
            return Ok(None);
        }
    }
    Ok(Some(reps.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reps_small() {
        assert_eq!(coset_reps(1, 1), vec![[1, 0, 0, 1]]);
        let r = coset_reps(1, 2);
        assert_eq!(r.len(), 8);
        assert!(r.iter().all(|g| g[0] * g[3] - g[1] * g[2] == 1));
    }

    #[test]
    fn kernel_identity_and_zero() {
        let tau = Complex64::new(0.1, 0.9);
        assert_eq!(kernel_r(-0.1, &[1, 5, 0, 1], tau, 10), Complex64::new(1.0, 0.0));
        assert_eq!(kernel_r(0.0, &[0, -1, 1, 0], tau, 10), Complex64::new(0.0, 0.0));
    }
}
