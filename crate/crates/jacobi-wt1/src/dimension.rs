//! dim J_{1,m}(N) as a sum of multiplicities ⟨ϑ_m⁻ ϑ_{m'}⁺, 1̂_N⟩ over the
//! divisors m' of M with M/m' squarefree, each computed as an average over
//! the image of Γ0(N) in SL2(Z/4M).

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{divisors, factorize, gcd_u64, is_squarefree, lcm_u64, p_part};
use crate::cyclotomic::{snap_integer, CycError, CycNumber};
use crate::sl2::{canonical_word, full_group, gamma0_image, gamma0_index, group_order, perm_character, Sl2Error, Sl2Mod};
use crate::umbral::UmbralDataSet;
use crate::vanishing::{exponent_criterion, Criterion};
use crate::weil::{local_split, CharacterContext, CharacterHandle, QuadSpace, WeilError};

pub const SNAP_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum DimError {
    #[error("need m | M and N | 4M, got m = {m}, N = {n}, M = {big_m}")]
    BadModulus { m: u64, n: u64, big_m: u64 },
    #[error("accumulated value {0} is not a nonnegative integer")]
    Integrality(String),
    #[error("estimated cost {estimated} exceeds budget {budget}")]
    Budget { estimated: u64, budget: u64 },
    #[error("characters of different genus do not give a function on SL2")]
    MixedGenus,
    #[error("conductor {cond} or level {n} does not divide Q = {q}")]
    BadConductor { cond: u64, n: u64, q: u64 },
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

type Result<T> = std::result::Result<T, DimError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Exact,
    Float,
    CrtFloat,
}

impl std::str::FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            "crt-float" => Ok(Backend::CrtFloat),
            other => Err(format!("unknown backend {other}")),
        }
    }
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
            Backend::CrtFloat => "crt-float",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimQuery {
    pub m: u64,
    pub n: u64,
    pub big_m: u64,
    pub backend: Backend,
}

impl DimQuery {
    /// Query with the least admissible M.
    pub fn new(m: u64, n: u64, backend: Backend) -> Self {
        DimQuery { m, n, big_m: default_modulus(m, n), backend }
    }

    pub fn with_modulus(m: u64, n: u64, big_m: u64, backend: Backend) -> Self {
        DimQuery { m, n, big_m, backend }
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 || !self.big_m.is_multiple_of(self.m) || !(4 * self.big_m).is_multiple_of(self.n) {
            return Err(DimError::BadModulus { m: self.m, n: self.n, big_m: self.big_m });
        }
        Ok(())
    }
}

/// Least M with m | M and N | 4M.
pub fn default_modulus(m: u64, n: u64) -> u64 {
    lcm_u64(m, n / gcd_u64(n, 4))
}

/// Divisors m' of M with M/m' squarefree.
pub fn admissible_indices(big_m: u64) -> Vec<u64> {
    divisors(big_m).into_iter().filter(|&d| is_squarefree(big_m / d)).collect()
}

/// Per-m' multiplicity ⟨ϑ_m⁻ ϑ_{m'}⁺, 1̂_N⟩.
#[derive(Debug, Clone, Serialize)]
pub struct Term {
    pub m_prime: u64,
    pub value: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimResult {
    pub value: i64,
    pub terms: Vec<Term>,
    pub elements: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimReport {
    pub m: u64,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    pub method: String,
    pub value_or_bound: i64,
    pub backend: String,
    pub terms: Vec<Term>,
    /// Wall-clock seconds; left out unless requested so output is reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<f64>,
}

/// Estimated number of element evaluations for a query.
pub fn estimate_cost(q: &DimQuery) -> u64 {
    let k = admissible_indices(q.big_m).len() as u64;
    let local: u64 = local_moduli(q.big_m, q.n).iter().map(|&(_, qp, np)| group_order(qp) / gamma0_index(np)).sum();
    let global = group_order(4 * q.big_m) / gamma0_index(q.n);
    match q.backend {
        Backend::Exact => local * (k + 1),
        Backend::Float => global * k,
        Backend::CrtFloat => global * k + local * (k + 1),
    }
}

/// (p, local modulus, local level) for each prime of 4M.
fn local_moduli(big_m: u64, n: u64) -> Vec<(u64, u64, u64)> {
    factorize(4 * big_m).into_iter().map(|(p, _)| (p, p_part(4 * big_m, p), p_part(n, p))).collect()
}

/// The local quadratic space of D_k at p, or None when the factor is trivial.
fn local_space(k: u64, p: u64) -> Result<Option<QuadSpace>> {
    let split = local_split(k);
    if p == 2 {
        return Ok(Some(QuadSpace::d(split.m2, split.a2)?));
    }
    match split.odd.iter().find(|&&(q, _, _)| q == p) {
        Some(&(_, mp, ap)) => Ok(Some(QuadSpace::l(mp, ap)?)),
        None => Ok(None),
    }
}

pub fn dim_j1(q: &DimQuery, budget: Option<u64>) -> Result<DimResult> {
    q.validate()?;
    let est = estimate_cost(q);
    if let Some(b) = budget {
        if est > b {
            return Err(DimError::Budget { estimated: est, budget: b });
        }
    }
    let terms = match q.backend {
        Backend::Exact => exact_terms(q)?,
        Backend::Float => float_terms(q)?,
        Backend::CrtFloat => crt_float_terms(q)?,
    };
    let value = terms.iter().map(|t| t.value).sum();
    Ok(DimResult { value, terms, elements: est })
}

pub fn dim_report(q: &DimQuery, budget: Option<u64>) -> Result<DimReport> {
    let start = Instant::now();
    let r = dim_j1(q, budget)?;
    Ok(DimReport {
        m: q.m,
        n: q.n,
        big_m: q.big_m,
        method: "character-average".into(),
        value_or_bound: r.value,
        backend: q.backend.name().into(),
        terms: r.terms,
        elapsed: Some((start.elapsed().as_secs_f64() * 1e3).round() / 1e3),
    })
}

/// ¼(FF' + FG' − GF' − GG') from (F, G) of both factors.
const SIGNS: [(usize, usize, i64); 4] = [(0, 0, 1), (0, 1, 1), (1, 0, -1), (1, 1, -1)];

fn exact_integer(v: &CycNumber) -> Result<i64> {
    let r = v.to_rational().map_err(|_| DimError::Integrality(format!("{v}")))?;
    if !r.is_integer() || r < BigRational::zero() {
        return Err(DimError::Integrality(format!("{r}")));
    }
    r.to_integer().to_i64().ok_or_else(|| DimError::Integrality(format!("{r}")))
}

fn float_integer(v: Complex64) -> Result<i64> {
    if v.im.abs() > SNAP_TOL {
        return Err(DimError::Integrality(format!("{v}")));
    }
    match snap_integer(v.re, SNAP_TOL) {
        Some(x) if x >= 0 => Ok(x),
        _ => Err(DimError::Integrality(format!("{v}"))),
    }
}

/// Orbit representatives (words) and orbit sizes of a local group.
type LocalTable = (Vec<crate::sl2::Sl2Word>, Vec<u64>, HashMap<QuadSpace, Vec<[CycNumber; 2]>>);

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits the image of Γ0(n) in SL2(Z/q) into orbits under conjugation by a
/// few of its elements. Orbits of a subgroup refine conjugacy classes, so
/// any class function is constant on them.
pub fn conjugation_orbits(n: u64, q: u64) -> Result<Vec<(Sl2Mod, u64)>> {
    let elems: Vec<Sl2Mod> = gamma0_image(n, q)?.collect();
    let index: HashMap<Sl2Mod, usize> = elems.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let qi = q as i64;
    let mut conj = vec![Sl2Mod::new(q, 1, 1, 0, 1)?, Sl2Mod::new(q, 1, 0, n as i64, 1)?];
    if n == 1 {
        conj.push(Sl2Mod::new(q, 0, -1, 1, 0)?);
    }
    for u in [2i64, 3, 5, 7] {
        if gcd_u64(u as u64, q) == 1 {
            let v = crate::arith::modinv(u, qi).expect("unit");
            conj.push(Sl2Mod::new(q, u, 0, 0, v)?);
        }
    }
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    for (i, g) in elems.iter().enumerate() {
        for c in &conj {
            let h = c.mul(g).mul(&c.inverse());
            let j = index[&h];
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut counts: HashMap<usize, u64> = HashMap::new();
    for i in 0..elems.len() {
        let r = find(&mut parent, i);
        *counts.entry(r).or_insert(0) += 1;
    }
    let mut out: Vec<(Sl2Mod, u64)> = counts.into_iter().map(|(r, c)| (elems[r], c)).collect();
    out.sort();
    Ok(out)
}

fn fill_table(ctx: &mut CharacterContext, table: &mut LocalTable, sp: QuadSpace) -> Result<()> {
    let (words, _, t) = table;
    if let std::collections::hash_map::Entry::Vacant(e) = t.entry(sp) {
        let mut vals = Vec::with_capacity(words.len());
        for w in words.iter() {
            let (f, g) = ctx.full_and_signed(sp, w)?;
            vals.push([f, g]);
        }
        e.insert(vals);
    }
    Ok(())
}

/// Exact backend: the average over H = ∏ H_p factorizes into local averages.
fn exact_terms(q: &DimQuery) -> Result<Vec<Term>> {
    let mut ctx = CharacterContext::new();
    let locals = local_moduli(q.big_m, q.n);
    let mprimes = admissible_indices(q.big_m);
    // per prime: element words and the (F, G) table per local space
    let mut tables: Vec<LocalTable> = Vec::new();
    for &(_, qp, np) in &locals {
        let orbits = conjugation_orbits(np, qp)?;
        let words = orbits.iter().map(|(g, _)| canonical_word(g)).collect();
        let weights = orbits.iter().map(|&(_, c)| c).collect();
        tables.push((words, weights, HashMap::new()));
    }
    let mut out = Vec::new();
    for &mp in &mprimes {
        let mut total = CycNumber::zero(1);
        let mut avgs: Vec<[[CycNumber; 2]; 2]> = Vec::new();
        for (i, &(p, _, _)) in locals.iter().enumerate() {
            let s1 = local_space(q.m, p)?;
            let s2 = local_space(mp, p)?;
            for s in [s1, s2].into_iter().flatten() {
                fill_table(&mut ctx, &mut tables[i], s)?;
            }
            let (_, weights, t) = &tables[i];
            let n: u64 = weights.iter().sum();
            let get = |s: Option<QuadSpace>, j: usize, x: usize| -> CycNumber {
                match s {
                    Some(sp) => t[&sp][j][x].clone(),
                    None => CycNumber::one(1),
                }
            };
            let z = || CycNumber::zero(1);
            let mut a: [[CycNumber; 2]; 2] = [[z(), z()], [z(), z()]];
            for (x, row) in a.iter_mut().enumerate() {
                for (y, slot) in row.iter_mut().enumerate() {
                    let mut acc = CycNumber::zero(1);
                    for (j, &wt) in weights.iter().enumerate() {
                        let v = &get(s1, j, x) * &get(s2, j, y);
                        acc = &acc + &v.scale(&BigRational::from_integer(BigInt::from(wt)));
                    }
                    *slot = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
                }
            }
            avgs.push(a);
        }
        for &(x, y, sgn) in &SIGNS {
            let mut prod = CycNumber::from_int(1, sgn);
            for a in &avgs {
                prod = &prod * &a[x][y];
            }
            total = &total + &prod;
        }
        let total = total.scale(&BigRational::new(BigInt::one(), BigInt::from(4)));
        out.push(Term { m_prime: mp, value: exact_integer(&total)? });
    }
    Ok(out)
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: Complex64) {
        let step = |s: &mut f64, c: &mut f64, v: f64| {
            let t = *s + v;
            if s.abs() >= v.abs() {
                *c += (*s - t) + v;
            } else {
                *c += (v - t) + *s;
            }
            *s = t;
        };
        step(&mut self.sum.re, &mut self.comp.re, x.re);
        step(&mut self.sum.im, &mut self.comp.im, x.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// Float backend: every element of H in SL2(Z/4M), with both factors
/// evaluated on the canonical word of its residue mod lcm(4m, 4m').
fn float_terms(q: &DimQuery) -> Result<Vec<Term>> {
    let mut ctx = CharacterContext::new();
    let h: Vec<Sl2Mod> = gamma0_image(q.n, 4 * q.big_m)?.collect();
    let s1 = QuadSpace::d(q.m, 1)?;
    let mut out = Vec::new();
    for mp in admissible_indices(q.big_m) {
        let s2 = QuadSpace::d(mp, 1)?;
        let l = lcm_u64(4 * q.m, 4 * mp);
        let mut counts: HashMap<Sl2Mod, u64> = HashMap::new();
        for g in &h {
            *counts.entry(g.reduce(l)).or_insert(0) += 1;
        }
        let mut keys: Vec<_> = counts.into_iter().collect();
        keys.sort();
        let mut acc = CompensatedSum::default();
        for (g, cnt) in keys {
            let w = canonical_word(&g);
            let a = ctx.full_and_signed_float(s1, &w)?;
            let b = ctx.full_and_signed_float(s2, &w)?;
            let (fa, ga) = a;
            let (fb, gb) = b;
            let v = (fa - ga) * (fb + gb) * 0.25;
            acc.add(v * cnt as f64);
        }
        out.push(Term { m_prime: mp, value: float_integer(acc.value() / h.len() as f64)? });
    }
    Ok(out)
}

/// CRT fast path: local f64 tables per prime, then a sweep over H looking up
/// each element's local components.
fn crt_float_terms(q: &DimQuery) -> Result<Vec<Term>> {
    let mut ctx = CharacterContext::new();
    let locals = local_moduli(q.big_m, q.n);
    let four_m = 4 * q.big_m;
    let mprimes = admissible_indices(q.big_m);
    let mut index: Vec<HashMap<Sl2Mod, usize>> = Vec::new();
    let mut words = Vec::new();
    for &(_, qp, np) in &locals {
        let elems: Vec<Sl2Mod> = gamma0_image(np, qp)?.collect();
        index.push(elems.iter().enumerate().map(|(i, g)| (*g, i)).collect());
        words.push(elems.iter().map(canonical_word).collect::<Vec<_>>());
    }
    let table = |ctx: &mut CharacterContext, i: usize, s: Option<QuadSpace>| -> Result<Vec<[Complex64; 2]>> {
        let n = words[i].len();
        match s {
            None => Ok(vec![[Complex64::new(1.0, 0.0); 2]; n]),
            Some(sp) => words[i]
                .iter()
                .map(|w| ctx.full_and_signed_float(sp, w).map(|(f, g)| [f, g]).map_err(DimError::from))
                .collect(),
        }
    };
    // tables[i] = (m-factor, [m'-factor per admissible index])
    let mut tables = Vec::new();
    for (i, &(p, _, _)) in locals.iter().enumerate() {
        let t1 = table(&mut ctx, i, local_space(q.m, p)?)?;
        let mut t2 = Vec::new();
        for &mp in &mprimes {
            t2.push(table(&mut ctx, i, local_space(mp, p)?)?);
        }
        tables.push((t1, t2));
    }
    let mut accs = vec![CompensatedSum::default(); mprimes.len()];
    let mut count = 0u64;
    let mut idx = vec![0usize; locals.len()];
    for g in gamma0_image(q.n, four_m)? {
        for (i, &(_, qp, _)) in locals.iter().enumerate() {
            idx[i] = index[i][&g.reduce(qp)];
        }
        for (k, acc) in accs.iter_mut().enumerate() {
            let mut v = Complex64::zero();
            for &(x, y, sgn) in &SIGNS {
                let mut prod = Complex64::new(sgn as f64, 0.0);
                for (i, (t1, t2)) in tables.iter().enumerate() {
                    prod *= t1[idx[i]][x] * t2[k][idx[i]][y];
                }
                v += prod;
            }
            acc.add(v * 0.25);
        }
        count += 1;
    }
    mprimes
        .iter()
        .zip(accs)
        .map(|(&mp, acc)| Ok(Term { m_prime: mp, value: float_integer(acc.value() / count as f64)? }))
        .collect()
}

fn check_pair(h1: &CharacterHandle, h2: &CharacterHandle, n: u64, q: u64) -> Result<u64> {
    if h1.is_genuine() != h2.is_genuine() {
        return Err(DimError::MixedGenus);
    }
    let l = lcm_u64(h1.conductor(), h2.conductor());
    if !q.is_multiple_of(l) || !q.is_multiple_of(n) {
        return Err(DimError::BadConductor { cond: l, n, q });
    }
    Ok(l)
}

/// Residues of H = Γ0(N) mod Q reduced mod L, with multiplicities.
fn residue_counts(n: u64, q: u64, l: u64) -> Result<(Vec<(Sl2Mod, u64)>, u64)> {
    let mut counts: HashMap<Sl2Mod, u64> = HashMap::new();
    let mut total = 0;
    for g in gamma0_image(n, q)? {
        *counts.entry(g.reduce(l)).or_insert(0) += 1;
        total += 1;
    }
    let mut v: Vec<_> = counts.into_iter().collect();
    v.sort();
    Ok((v, total))
}

/// ⟨h₁h₂, 1̂_N⟩ as the exact average of h₁h₂ over Γ0(N) mod Q.
pub fn inner_product(h1: &CharacterHandle, h2: &CharacterHandle, n: u64, q: u64) -> Result<BigRational> {
    let l = check_pair(h1, h2, n, q)?;
    let mut ctx = CharacterContext::new();
    let (res, total) = residue_counts(n, q, l)?;
    let mut acc = CycNumber::zero(1);
    for (g, cnt) in res {
        let w = canonical_word(&g);
        let v = &ctx.evaluate(h1, &w)? * &ctx.evaluate(h2, &w)?;
        acc = &acc + &v.scale(&BigRational::from_integer(BigInt::from(cnt)));
    }
    let r = acc.to_rational().map_err(|_| DimError::Integrality(format!("{acc}")))?;
    Ok(r / BigRational::from_integer(BigInt::from(total)))
}

/// The same inner product from the full-group definition
/// (1/|G|) Σ_G h₁h₂(g)·1̂_N(g).
pub fn inner_product_direct(h1: &CharacterHandle, h2: &CharacterHandle, n: u64, q: u64) -> Result<BigRational> {
    let l = check_pair(h1, h2, n, q)?;
    let mut ctx = CharacterContext::new();
    let mut memo: HashMap<Sl2Mod, CycNumber> = HashMap::new();
    let mut acc = CycNumber::zero(1);
    let mut total = 0u64;
    for g in full_group(q) {
        total += 1;
        let weight = perm_character(n, &g)?;
        if weight == 0 {
            continue;
        }
        let r = g.reduce(l);
        if let std::collections::hash_map::Entry::Vacant(e) = memo.entry(r) {
            let w = canonical_word(&r);
            let v = &ctx.evaluate(h1, &w)? * &ctx.evaluate(h2, &w)?;
            e.insert(v);
        }
        acc = &acc + &memo[&r].scale(&BigRational::from_integer(BigInt::from(weight)));
    }
    let r = acc.to_rational().map_err(|_| DimError::Integrality(format!("{acc}")))?;
    Ok(r / BigRational::from_integer(BigInt::from(total)))
}

/// Double-precision ⟨h₁h₂, 1̂_N⟩.
pub fn inner_product_float(h1: &CharacterHandle, h2: &CharacterHandle, n: u64, q: u64) -> Result<Complex64> {
    let l = check_pair(h1, h2, n, q)?;
    let mut ctx = CharacterContext::new();
    let (res, total) = residue_counts(n, q, l)?;
    let mut acc = CompensatedSum::default();
    for (g, cnt) in res {
        let w = canonical_word(&g);
        let v = ctx.evaluate_float(h1, &w)? * ctx.evaluate_float(h2, &w)?;
        acc.add(v * cnt as f64);
    }
    Ok(acc.value() / total as f64)
}

fn cube_of_3mod4_prime_divides(x: u64) -> bool {
    factorize(x).iter().any(|&(p, e)| p % 4 == 3 && e >= 3)
}

/// The syntactic hypotheses of the general vanishing lemma.
pub fn lemma_hypotheses(m: u64, n: u64) -> bool {
    if cube_of_3mod4_prime_divides(m) || cube_of_3mod4_prime_divides(n) || cube_of_3mod4_prime_divides(m * n) {
        return false;
    }
    (m % 2 == 1 && !n.is_multiple_of(64)) || (m % 8 == 4 && !n.is_multiple_of(64)) || (!m.is_multiple_of(32) && !n.is_multiple_of(32))
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub root_system: String,
    pub class: String,
    pub m: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub exceptional: bool,
    pub settled_by: String,
    pub dimension: Option<i64>,
    pub estimated_cost: u64,
}

/// Runs the cheapest settling method for each class row.
pub fn umbral_sweep(data: &UmbralDataSet, budget: Option<u64>) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for rec in &data.levels {
        let (m, n) = (rec.coxeter, rec.level);
        let q = DimQuery::new(m, n, Backend::Exact);
        let cost = estimate_cost(&q);
        let mut row = SweepRow {
            root_system: rec.root_system.clone(),
            class: rec.class.clone(),
            m,
            n,
            exceptional: rec.exceptional,
            settled_by: String::new(),
            dimension: None,
            estimated_cost: cost,
        };
        if lemma_hypotheses(m, n) {
            row.settled_by = "lemma".into();
            row.dimension = Some(0);
        } else if matches!(exponent_criterion(m, q.big_m), Ok(Criterion::Vanishes)) {
            row.settled_by = "exponent".into();
            row.dimension = Some(0);
        } else {
            match dim_j1(&q, budget) {
                Ok(r) => {
                    row.settled_by = "dimension".into();
                    row.dimension = Some(r.value);
                }
                Err(DimError::Budget { .. }) => row.settled_by = "skipped".into(),
                Err(e) => return Err(e),
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_modulus_is_least() {
        assert_eq!(default_modulus(3, 144), 36);
        assert_eq!(default_modulus(6, 36), 18);
        assert_eq!(default_modulus(8, 32), 8);
        assert_eq!(default_modulus(1, 1), 1);
        assert_eq!(default_modulus(30, 36), 90);
    }

    #[test]
    fn admissible() {
        assert_eq!(admissible_indices(8), vec![4, 8]);
        assert_eq!(admissible_indices(36), vec![6, 12, 18, 36]);
    }

    #[test]
    fn lemma_examples() {
        assert!(lemma_hypotheses(2, 4));
        assert!(!lemma_hypotheses(9, 9));
        assert!(!lemma_hypotheses(3, 144));
    }

    #[test]
    fn level_one_m1() {
        let r = dim_j1(&DimQuery::new(1, 1, Backend::Exact), None).unwrap();
        assert_eq!(r.value, 0);
    }
}
