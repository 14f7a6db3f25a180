//! Weil representations of cyclic finite quadratic spaces and the characters
//! built from them.
//!
//! Matrices act on row vectors indexed by the group elements: the theta
//! space Θ_m carries the right action `θ_r · γ = Σ_b ρ(γ)_{rb} θ_b` where
//! `ρ = ρ_{D_m}` is given on generators by
//! `ρ(T̃) = diag(e(Q(x)))` and `ρ(S̃)_{xy} = σ |A|^{-1/2} e(-B(x, y))`.
//! With this convention `ϑ_m(γ) = tr ρ_{D_m}(γ)`.
//!
//! The exact engine stores `ρ(w) = c^s P` with `c = G/|A|`, where `G` is the
//! Gauss sum `Σ e(-Q(x))` and `s` the number of S̃ letters, so that `P` has
//! coefficients in `Z[e(1/c)]`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{factorize, gcd_i64, lcm_u64, modinv, modp, p_part};
use crate::cyclotomic::{embed_root, gauss_sigma, CycError, CycNumber, ZCyc};
use crate::linalg::{self, IntFracMat, RatMat};
use crate::sl2::{crt_local_lift, word_decompose, Gen, Sl2Mod, Sl2Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeilError {
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error("invalid quadratic space: {0}")]
    InvalidSpace(String),
    #[error("invalid character parameters: {0}")]
    InvalidCharacter(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    /// Z/2mZ with Q(x) = a x^2 / 4m.
    D,
    /// Z/mZ (m odd) with Q(x) = a x^2 / m.
    L,
}

/// A cyclic finite quadratic space D_m(a) or L_m(a).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadSpace {
    pub kind: SpaceKind,
    pub m: u64,
    pub a: i64,
}

impl QuadSpace {
    pub fn d(m: u64, a: i64) -> Result<Self, WeilError> {
        if m == 0 || gcd_i64(a, 2 * m as i64) != 1 {
            return Err(WeilError::InvalidSpace(format!("D_{m}({a}) needs m >= 1 and a coprime to 2m")));
        }
        Ok(QuadSpace { kind: SpaceKind::D, m, a: modp(a, 4 * m as i64) })
    }

    pub fn l(m: u64, a: i64) -> Result<Self, WeilError> {
        if m == 0 || m.is_multiple_of(2) || gcd_i64(a, m as i64) != 1 {
            return Err(WeilError::InvalidSpace(format!("L_{m}({a}) needs m odd and a coprime to m")));
        }
        Ok(QuadSpace { kind: SpaceKind::L, m, a: modp(a, m as i64) })
    }

    /// |A|.
    pub fn size(&self) -> usize {
        match self.kind {
            SpaceKind::D => 2 * self.m as usize,
            SpaceKind::L => self.m as usize,
        }
    }

    /// Denominator c of Q(x) = a x^2 / c.
    pub fn denom(&self) -> u64 {
        match self.kind {
            SpaceKind::D => 4 * self.m,
            SpaceKind::L => self.m,
        }
    }

    /// Ambient cyclotomic order lcm(8, 4|A|).
    pub fn ambient_order(&self) -> u64 {
        lcm_u64(8, 4 * self.size() as u64)
    }

    /// Numerator of Q(x) over `denom()`, reduced.
    pub fn q_num(&self, x: i64) -> i64 {
        modp(self.a * x % self.denom() as i64 * x, self.denom() as i64)
    }

    /// Numerator of B(x, y) over `denom()`, reduced.
    pub fn b_num(&self, x: i64, y: i64) -> i64 {
        let c = self.denom() as i64;
        modp(2 * self.a * x % c * y, c)
    }

    pub fn neg_index(&self, x: usize) -> usize {
        let n = self.size();
        (n - x) % n
    }
}

/// Exact Weil representation data for one quadratic space.
#[derive(Debug, Clone)]
pub struct WeilRep {
    space: QuadSpace,
    n: usize,
    c: usize,
    sigma_j: i64,
    gauss: ZCyc,
    t_exp: Vec<usize>,
    b_exp: Vec<usize>,
}

/// `ρ(w) = c^s · p` for the exact engine.
#[derive(Debug, Clone)]
pub struct WeilValue {
    pub p: Vec<ZCyc>,
    pub s: u32,
}

impl WeilRep {
    pub fn new(space: QuadSpace) -> Result<Self, WeilError> {
        let sigma_j = gauss_sigma(&space)?;
        let n = space.size();
        let c = space.denom() as usize;
        let mut gauss = ZCyc::zero(c);
        for x in 0..n as i64 {
            gauss.add_rotated(&ZCyc::root(c, 0), modp(-space.q_num(x), c as i64) as usize)?;
        }
        let t_exp = (0..n as i64).map(|x| space.q_num(x) as usize).collect();
        let mut b_exp = Vec::with_capacity(n * n);
        for x in 0..n as i64 {
            for y in 0..n as i64 {
                b_exp.push(modp(-space.b_num(x, y), c as i64) as usize);
            }
        }
        Ok(WeilRep { space, n, c, sigma_j, gauss, t_exp, b_exp })
    }

    pub fn space(&self) -> &QuadSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Order of the coefficient ring Z[e(1/c)] used by the exact engine.
    pub fn coeff_order(&self) -> usize {
        self.c
    }

    pub fn sigma_j(&self) -> i64 {
        self.sigma_j
    }

    /// The Gauss sum Σ e(-Q(x)) as an exact number.
    pub fn gauss_sum(&self) -> CycNumber {
        self.gauss.to_cyc()
    }

    /// c^s with c = σ |A|^{-1/2} = G / |A|.
    pub fn scalar_pow(&self, s: u32) -> CycNumber {
        let half = (s / 2) as i64;
        let mut out = embed_root(4, self.sigma_j * half);
        if s % 2 == 1 {
            out = &out * &self.gauss_sum();
        }
        let den = BigInt::from(self.n as u64).pow(s.div_ceil(2));
        out.scale(&BigRational::new(BigInt::one(), den))
    }

    fn apply_gen(&self, p: &mut Vec<ZCyc>, rows: usize, g: &Gen) -> Result<(), CycError> {
        let n = self.n;
        match *g {
            Gen::T(k) => {
                for y in 0..n {
                    let shift = modp(k * self.t_exp[y] as i64, self.c as i64) as usize;
                    if shift == 0 {
                        continue;
                    }
                    for r in 0..rows {
                        let e = &p[r * n + y];
                        let mut z = ZCyc::zero(self.c);
                        z.add_rotated(e, shift)?;
                        p[r * n + y] = z;
                    }
                }
            }
            Gen::S => {
                let mut out = vec![ZCyc::zero(self.c); rows * n];
                for r in 0..rows {
                    for x in 0..n {
                        let e = &p[r * n + x];
                        if e.is_trivially_zero() {
                            continue;
                        }
                        for y in 0..n {
                            out[r * n + y].add_rotated(e, self.b_exp[x * n + y])?;
                        }
                    }
                }
                *p = out;
            }
        }
        Ok(())
    }

    /// Exact ρ(w) as `c^s · P`.
    pub fn exact_word(&self, w: &Sl2Word) -> Result<WeilValue, CycError> {
        let n = self.n;
        let mut p = vec![ZCyc::zero(self.c); n * n];
        for i in 0..n {
            p[i * n + i] = ZCyc::from_int(self.c, 1);
        }
        let mut s = 0;
        for g in w.gens() {
            self.apply_gen(&mut p, n, g)?;
            if matches!(g, Gen::S) {
                s += 1;
            }
        }
        Ok(WeilValue { p, s })
    }

    /// Row `r` of ρ(w), as `c^s · row`.
    pub fn exact_row(&self, w: &Sl2Word, r: usize) -> Result<(Vec<ZCyc>, u32), CycError> {
        let mut p = vec![ZCyc::zero(self.c); self.n];
        p[r] = ZCyc::from_int(self.c, 1);
        let mut s = 0;
        for g in w.gens() {
            self.apply_gen(&mut p, 1, g)?;
            if matches!(g, Gen::S) {
                s += 1;
            }
        }
        Ok((p, s))
    }

    /// Fully normalized exact matrix, row-major.
    pub fn exact_matrix(&self, w: &Sl2Word) -> Result<Vec<CycNumber>, CycError> {
        let v = self.exact_word(w)?;
        let scal = self.scalar_pow(v.s);
        Ok(v.p.iter().map(|z| &z.to_cyc() * &scal).collect())
    }

    /// Exact equality of two values `c^{s1} P1 = c^{s2} P2`.
    pub fn values_equal(&self, v1: &WeilValue, v2: &WeilValue) -> Result<bool, CycError> {
        let (lo, hi) = if v1.s <= v2.s { (v1, v2) } else { (v2, v1) };
        let d = hi.s - lo.s;
        // n^{ceil(d/2)} lo = σ^{2 floor(d/2)} G^{d mod 2} hi, with σ^2 = e(j/4)
        let e = modp(self.sigma_j * (d / 2) as i64, 4);
        let mut factor = if self.c.is_multiple_of(4) {
            ZCyc::root(self.c, e * (self.c / 4) as i64)
        } else {
            match e {
                0 => ZCyc::from_int(self.c, 1),
                2 => ZCyc::from_int(self.c, -1),
                _ => return Err(CycError::NotRational),
            }
        };
        if d % 2 == 1 {
            factor = factor.mul(&self.gauss)?;
        }
        let scale = (self.n as i128).pow(d.div_ceil(2));
        for (a, b) in lo.p.iter().zip(hi.p.iter()) {
            let left = a.scale_int(scale)?.reduce()?;
            let right = b.mul(&factor)?.reduce()?;
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Check P * conj(P)^T = |A|^s I exactly.
    pub fn is_unitary(&self, v: &WeilValue) -> Result<bool, CycError> {
        let n = self.n;
        let c = self.c;
        let conj: Vec<ZCyc> = v.p.iter().map(ZCyc::conj).collect();
        let target = (n as i128).pow(v.s);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZCyc::zero(c);
                for k in 0..n {
                    acc.add_assign(&v.p[i * n + k].mul(&conj[j * n + k])?)?;
                }
                acc.sub_assign(&ZCyc::from_int(c, if i == j { target } else { 0 }))?;
                if !acc.reduce()?.is_trivially_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn float(&self) -> FloatWeil {
        FloatWeil::new(self)
    }
}

/// Double-precision Weil matrices, normalized.
#[derive(Debug, Clone)]
pub struct FloatWeil {
    n: usize,
    t: Vec<(i64, i64)>,
    s: Vec<Complex64>,
}

fn e_frac(num: i64, den: i64) -> Complex64 {
    let r = modp(num, den) as f64 / den as f64;
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r)
}

impl FloatWeil {
    fn new(rep: &WeilRep) -> Self {
        let n = rep.n;
        let c = rep.c as i64;
        let scale = e_frac(rep.sigma_j, 8) / (n as f64).sqrt();
        let s = rep.b_exp.iter().map(|&b| scale * e_frac(b as i64, c)).collect();
        let t = rep.t_exp.iter().map(|&q| (q as i64, c)).collect();
        FloatWeil { n, t, s }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, p: &mut Vec<Complex64>, rows: usize, g: &Gen) {
        let n = self.n;
        match *g {
            Gen::T(k) => {
                for y in 0..n {
                    let (q, c) = self.t[y];
                    let f = e_frac(modp(k, c) * q, c);
                    for r in 0..rows {
                        p[r * n + y] *= f;
                    }
                }
            }
            Gen::S => {
                let mut out = vec![Complex64::new(0.0, 0.0); rows * n];
                for r in 0..rows {
                    for x in 0..n {
                        let e = p[r * n + x];
                        if e == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for y in 0..n {
                            out[r * n + y] += e * self.s[x * n + y];
                        }
                    }
                }
                *p = out;
            }
        }
    }

    pub fn matrix(&self, w: &Sl2Word) -> Vec<Complex64> {
        let n = self.n;
        let mut p = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            p[i * n + i] = Complex64::new(1.0, 0.0);
        }
        for g in w.gens() {
            self.apply(&mut p, n, g);
        }
        p
    }
}

/// Kinds of characters of Mp2(Z) built from Weil representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharKind {
    ThetaFull { m: u64 },
    ThetaPlus { m: u64 },
    ThetaMinus { m: u64 },
    /// New part of Θ_m cut out by α, with α given by its values α(p) on the
    /// primes of m (2 included only when m is even).
    NuNew { m: u64, alpha: Vec<(u64, i8)> },
    LambdaNew { p: u64, k: u32, sign: i8 },
}

/// A character together with a Galois twist `a`, evaluated on the twisted
/// space D_m(a) (resp. L_{p^k}(a)).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterHandle {
    pub kind: CharKind,
    pub twist: i64,
}

impl CharacterHandle {
    pub fn theta_full(m: u64) -> Self {
        CharacterHandle { kind: CharKind::ThetaFull { m }, twist: 1 }
    }

    pub fn theta_plus(m: u64) -> Self {
        CharacterHandle { kind: CharKind::ThetaPlus { m }, twist: 1 }
    }

    pub fn theta_minus(m: u64) -> Self {
        CharacterHandle { kind: CharKind::ThetaMinus { m }, twist: 1 }
    }

    pub fn theta_sign(m: u64, sign: i8) -> Self {
        if sign > 0 {
            Self::theta_plus(m)
        } else {
            Self::theta_minus(m)
        }
    }

    pub fn twisted(mut self, a: i64) -> Self {
        self.twist = a;
        self
    }

    /// The quadratic space whose Weil representation carries this character.
    pub fn space(&self) -> Result<QuadSpace, WeilError> {
        match &self.kind {
            CharKind::ThetaFull { m }
            | CharKind::ThetaPlus { m }
            | CharKind::ThetaMinus { m }
            | CharKind::NuNew { m, .. } => QuadSpace::d(*m, self.twist),
            CharKind::LambdaNew { p, k, .. } => QuadSpace::l(p.pow(*k), self.twist),
        }
    }

    /// The character factors through Mp2(Z/cond Z) (or SL2 for λ kinds).
    pub fn conductor(&self) -> u64 {
        match &self.kind {
            CharKind::ThetaFull { m }
            | CharKind::ThetaPlus { m }
            | CharKind::ThetaMinus { m }
            | CharKind::NuNew { m, .. } => 4 * m,
            CharKind::LambdaNew { p, k, .. } => p.pow(*k),
        }
    }

    /// Whether the central element S̃^4 acts by -1.
    pub fn is_genuine(&self) -> bool {
        !matches!(self.kind, CharKind::LambdaNew { .. })
    }
}

/// A linear functional `P ↦ tr(P Π)` used to restrict traces to subspaces.
#[derive(Debug, Clone)]
enum TraceForm {
    /// (id·tr P + iota·tr(P ι)) / den.
    Linear { id: i128, iota: i128, den: i128 },
    Matrix(IntFracMat),
}

/// Caller-owned memo tables for representations and projectors.
#[derive(Debug, Default)]
pub struct CharacterContext {
    reps: HashMap<QuadSpace, WeilRep>,
    floats: HashMap<QuadSpace, FloatWeil>,
    forms: HashMap<CharKind, TraceForm>,
}

impl CharacterContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rep(&mut self, space: QuadSpace) -> Result<&WeilRep, WeilError> {
        if let std::collections::hash_map::Entry::Vacant(e) = self.reps.entry(space) {
            e.insert(WeilRep::new(space)?);
        }
        Ok(&self.reps[&space])
    }

    fn float_rep(&mut self, space: QuadSpace) -> Result<&FloatWeil, WeilError> {
        if !self.floats.contains_key(&space) {
            let f = self.rep(space)?.float();
            self.floats.insert(space, f);
        }
        Ok(&self.floats[&space])
    }

    fn form(&mut self, kind: &CharKind) -> Result<&TraceForm, WeilError> {
        if !self.forms.contains_key(kind) {
            let f = build_form(kind)?;
            self.forms.insert(kind.clone(), f);
        }
        Ok(&self.forms[kind])
    }

    /// Exact character value on a word.
    pub fn evaluate(&mut self, h: &CharacterHandle, w: &Sl2Word) -> Result<CycNumber, WeilError> {
        let space = h.space()?;
        let form = self.form(&h.kind)?.clone();
        let rep = self.rep(space)?;
        let v = rep.exact_word(w)?;
        let n = rep.dim();
        let c = rep.coeff_order();
        let (tr, den) = match &form {
            TraceForm::Linear { id, iota, den } => {
                let mut acc = ZCyc::zero(c);
                for x in 0..n {
                    if *id != 0 {
                        acc.add_assign(&v.p[x * n + x].scale_int(*id)?)?;
                    }
                    if *iota != 0 {
                        let y = space.neg_index(x);
                        acc.add_assign(&v.p[x * n + y].scale_int(*iota)?)?;
                    }
                }
                (acc, *den)
            }
            TraceForm::Matrix(pi) => {
                let mut acc = ZCyc::zero(c);
                for x in 0..n {
                    for y in 0..n {
                        let k = pi.get(y, x);
                        if k != 0 && !v.p[x * n + y].is_trivially_zero() {
                            acc.add_assign(&v.p[x * n + y].scale_int(k)?)?;
                        }
                    }
                }
                (acc, pi.den)
            }
        };
        let scal = rep.scalar_pow(v.s);
        let t = tr.to_cyc().scale(&BigRational::new(BigInt::one(), BigInt::from(den)));
        Ok(&t * &scal)
    }

    /// Double-precision character value on a word.
    pub fn evaluate_float(&mut self, h: &CharacterHandle, w: &Sl2Word) -> Result<Complex64, WeilError> {
        let space = h.space()?;
        let form = self.form(&h.kind)?.clone();
        let fw = self.float_rep(space)?;
        let m = fw.matrix(w);
        Ok(float_trace(&m, fw.dim(), &space, &form))
    }

    /// Both the full trace and the trace against ι, from one matrix product.
    pub fn full_and_signed_float(&mut self, space: QuadSpace, w: &Sl2Word) -> Result<(Complex64, Complex64), WeilError> {
        let fw = self.float_rep(space)?;
        let n = fw.dim();
        let m = fw.matrix(w);
        let full = (0..n).map(|x| m[x * n + x]).sum();
        let signed = (0..n).map(|x| m[x * n + space.neg_index(x)]).sum();
        Ok((full, signed))
    }

    /// Exact full trace and trace against ι.
    pub fn full_and_signed(&mut self, space: QuadSpace, w: &Sl2Word) -> Result<(CycNumber, CycNumber), WeilError> {
        let rep = self.rep(space)?;
        let v = rep.exact_word(w)?;
        let n = rep.dim();
        let c = rep.coeff_order();
        let (mut f, mut g) = (ZCyc::zero(c), ZCyc::zero(c));
        for x in 0..n {
            f.add_assign(&v.p[x * n + x])?;
            g.add_assign(&v.p[x * n + space.neg_index(x)])?;
        }
        let scal = rep.scalar_pow(v.s);
        Ok((&f.to_cyc() * &scal, &g.to_cyc() * &scal))
    }

    /// Evaluate the untwisted character and apply the Galois automorphism.
    pub fn evaluate_via_galois(&mut self, h: &CharacterHandle, w: &Sl2Word) -> Result<CycNumber, WeilError> {
        let base = CharacterHandle { kind: h.kind.clone(), twist: 1 };
        let v = self.evaluate(&base, w)?;
        let a = galois_lift(h.twist, h.conductor(), v.order());
        Ok(v.galois_apply(a)?)
    }
}

/// An exponent a' ≡ a mod `cond` that is a unit modulo `order`.
pub fn galois_lift(a: i64, cond: u64, order: u64) -> i64 {
    let l = lcm_u64(cond, order) as i64;
    let c = cond as i64;
    let mut x = modp(a, c);
    while gcd_i64(x, l) != 1 {
        x += c;
    }
    x
}

fn float_trace(m: &[Complex64], n: usize, space: &QuadSpace, form: &TraceForm) -> Complex64 {
    match form {
        TraceForm::Linear { id, iota, den } => {
            let mut acc = Complex64::new(0.0, 0.0);
            for x in 0..n {
                acc += m[x * n + x] * (*id as f64) + m[x * n + space.neg_index(x)] * (*iota as f64);
            }
            acc / *den as f64
        }
        TraceForm::Matrix(pi) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for x in 0..n {
                for y in 0..n {
                    let k = pi.get(y, x);
                    if k != 0 {
                        acc += m[x * n + y] * k as f64;
                    }
                }
            }
            acc / pi.den as f64
        }
    }
}

fn build_form(kind: &CharKind) -> Result<TraceForm, WeilError> {
    Ok(match kind {
        CharKind::ThetaFull { .. } => TraceForm::Linear { id: 1, iota: 0, den: 1 },
        CharKind::ThetaPlus { .. } => TraceForm::Linear { id: 1, iota: 1, den: 2 },
        CharKind::ThetaMinus { .. } => TraceForm::Linear { id: 1, iota: -1, den: 2 },
        CharKind::NuNew { m, alpha } => {
            validate_alpha(*m, alpha)?;
            let p = linalg::mul(&new_projector(*m), &alpha_projector(*m, alpha));
            TraceForm::Matrix(IntFracMat::from_rat(&p))
        }
        CharKind::LambdaNew { p, k, sign } => {
            TraceForm::Matrix(IntFracMat::from_rat(&lambda_projector(*p, *k, *sign)?))
        }
    })
}

/// Convenience wrapper with a throwaway context.
pub fn evaluate_character(h: &CharacterHandle, w: &Sl2Word) -> Result<CycNumber, WeilError> {
    CharacterContext::new().evaluate(h, w)
}

/// Exact generator matrices ρ(T̃), ρ(S̃), row-major.
pub fn weil_generators(space: QuadSpace) -> Result<(Vec<CycNumber>, Vec<CycNumber>), WeilError> {
    let rep = WeilRep::new(space)?;
    let t = rep.exact_matrix(&Sl2Word::from_gens(vec![Gen::T(1)]))?;
    let s = rep.exact_matrix(&Sl2Word::s_pow(1))?;
    Ok((t, s))
}

/// O_m = {a mod 2m : a^2 = 1 mod 4m}.
pub fn orthogonal_group(m: u64) -> Vec<i64> {
    let (n, q) = (2 * m as i64, 4 * m as i64);
    (0..n).filter(|&a| modp(a * a, q) == 1 % q).collect()
}

/// Permutation matrix of θ_r ↦ θ_{ra}: entry (r, ra) = 1.
pub fn om_action(m: u64, a: i64) -> Vec<Vec<i64>> {
    let n = 2 * m as usize;
    let mut out = vec![vec![0; n]; n];
    for r in 0..n {
        out[r][modp(r as i64 * a, n as i64) as usize] = 1;
    }
    out
}

/// Matrix of U_d: Θ_{m'} → Θ_{m'd^2}; row r has ones at r' ≡ d r mod 2m'd.
pub fn u_d_map(m1: u64, d: u64) -> Vec<Vec<i64>> {
    let n1 = 2 * m1 as usize;
    let n = (2 * m1 * d * d) as usize;
    let modulus = (2 * m1 * d) as i64;
    (0..n1)
        .map(|r| {
            (0..n)
                .map(|r2| i64::from(modp(r2 as i64 - d as i64 * r as i64, modulus) == 0))
                .collect()
        })
        .collect()
}

/// Primes on which α must be specified: odd primes of m, and 2 if m is even.
pub fn alpha_primes(m: u64) -> Vec<u64> {
    factorize(m).into_iter().map(|(p, _)| p).collect()
}

fn validate_alpha(m: u64, alpha: &[(u64, i8)]) -> Result<(), WeilError> {
    let mut keys: Vec<u64> = alpha.iter().map(|&(p, _)| p).collect();
    keys.sort_unstable();
    if keys != alpha_primes(m) || alpha.iter().any(|&(_, s)| s != 1 && s != -1) {
        return Err(WeilError::InvalidCharacter(format!(
            "alpha must give a sign for each prime of {m}, got {alpha:?}"
        )));
    }
    Ok(())
}

/// The element of O_m that is -1 modulo 2m_p and 1 modulo 2m/m_p.
pub fn om_prime_element(m: u64, p: u64) -> i64 {
    let mp = p_part(m, p) as i64;
    let n = 2 * m as i64;
    (0..n)
        .find(|&a| modp(a + 1, 2 * mp) == 0 && modp(a - 1, n / mp) == 0)
        .expect("CRT solution exists")
}

/// α(a) for a in O_m.
pub fn alpha_value(m: u64, alpha: &[(u64, i8)], a: i64) -> i8 {
    alpha
        .iter()
        .filter(|&&(p, _)| {
            let mp = p_part(m, p) as i64;
            modp(a + 1, 2 * mp) == 0
        })
        .map(|&(_, s)| s)
        .product()
}

/// Build α from its values on all of O_m, checking it is a homomorphism.
pub fn alpha_from_values(m: u64, values: &[(i64, i8)]) -> Result<Vec<(u64, i8)>, WeilError> {
    let og = orthogonal_group(m);
    let n = 2 * m as i64;
    let look = |a: i64| values.iter().find(|&&(x, _)| modp(x, n) == modp(a, n)).map(|&(_, s)| s);
    for &a in &og {
        for &b in &og {
            let (Some(x), Some(y), Some(z)) = (look(a), look(b), look(a * b)) else {
                return Err(WeilError::InvalidCharacter("alpha not defined on all of O_m".into()));
            };
            if x * y != z {
                return Err(WeilError::InvalidCharacter(format!("alpha is not multiplicative at ({a}, {b})")));
            }
        }
    }
    Ok(alpha_primes(m).into_iter().map(|p| (p, look(om_prime_element(m, p)).unwrap())).collect())
}

/// Every α for a given m.
pub fn all_alphas(m: u64) -> Vec<Vec<(u64, i8)>> {
    let primes = alpha_primes(m);
    (0..1u32 << primes.len())
        .map(|mask| {
            primes
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, if mask >> i & 1 == 1 { -1 } else { 1 }))
                .collect()
        })
        .collect()
}

/// α(-1).
pub fn alpha_parity(alpha: &[(u64, i8)]) -> i8 {
    alpha.iter().map(|&(_, s)| s).product()
}

/// Orthogonal projector onto Θ_m^new.
pub fn new_projector(m: u64) -> RatMat {
    let n = 2 * m as usize;
    let mut rows = Vec::new();
    for d in 2..=m {
        if m.is_multiple_of(d * d) {
            rows.extend(linalg::from_int(&u_d_map(m / (d * d), d)));
        }
    }
    linalg::complement_projector(&rows, n)
}

/// (1/|O_m|) Σ α(a) Perm(a).
pub fn alpha_projector(m: u64, alpha: &[(u64, i8)]) -> RatMat {
    let n = 2 * m as usize;
    let og = orthogonal_group(m);
    let mut acc = vec![vec![BigRational::zero(); n]; n];
    let w = BigRational::new(BigInt::one(), BigInt::from(og.len()));
    for &a in &og {
        let s = alpha_value(m, alpha, a);
        let perm = om_action(m, a);
        for r in 0..n {
            for c in 0..n {
                if perm[r][c] != 0 {
                    acc[r][c] += &w * linalg::rat(s as i64);
                }
            }
        }
    }
    acc
}

/// Embedding ℂL_{p^{k-2}} → ℂL_{p^k}, e^x ↦ Σ_{h ∈ p^{k-1}Z/p^kZ} e^{px+h}.
pub fn lambda_embedding(p: u64, k: u32) -> Vec<Vec<i64>> {
    assert!(k >= 2);
    let small = p.pow(k - 2) as i64;
    let big = p.pow(k) as i64;
    let step = p.pow(k - 1) as i64;
    (0..small)
        .map(|x| {
            let mut row = vec![0; big as usize];
            for t in 0..p as i64 {
                row[modp(p as i64 * x + t * step, big) as usize] += 1;
            }
            row
        })
        .collect()
}

fn check_odd_prime(p: u64) -> Result<(), WeilError> {
    if p < 3 || factorize(p) != vec![(p, 1)] {
        return Err(WeilError::NotOddPrime(p));
    }
    Ok(())
}

/// Projector onto ℂL_{p^k}^{new,±}.
pub fn lambda_projector(p: u64, k: u32, sign: i8) -> Result<RatMat, WeilError> {
    check_odd_prime(p)?;
    if k == 0 || (sign != 1 && sign != -1) {
        return Err(WeilError::InvalidCharacter(format!("lambda needs k >= 1 and sign ±1 (p={p}, k={k})")));
    }
    let n = p.pow(k) as usize;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut pm = vec![vec![BigRational::zero(); n]; n];
    for x in 0..n {
        pm[x][x] += &half;
        pm[x][(n - x) % n] += &half * linalg::rat(sign as i64);
    }
    if k >= 2 {
        let rows = linalg::from_int(&lambda_embedding(p, k));
        let newp = linalg::complement_projector(&rows, n);
        pm = linalg::mul(&pm, &newp);
    }
    Ok(pm)
}

pub fn lambda_character(p: u64, k: u32, sign: i8, a: i64) -> Result<CharacterHandle, WeilError> {
    check_odd_prime(p)?;
    if gcd_i64(a, p as i64) != 1 {
        return Err(WeilError::InvalidCharacter(format!("twist {a} not coprime to {p}")));
    }
    Ok(CharacterHandle { kind: CharKind::LambdaNew { p, k, sign }, twist: a })
}

pub fn new_alpha_character(m: u64, alpha: Vec<(u64, i8)>) -> Result<CharacterHandle, WeilError> {
    validate_alpha(m, &alpha)?;
    Ok(CharacterHandle { kind: CharKind::NuNew { m, alpha }, twist: 1 })
}

/// Local data for splitting D_m(t) into its 2-part and odd prime parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSplit {
    pub m2: u64,
    pub a2: i64,
    /// (p, m_p, a_p) for odd p dividing m.
    pub odd: Vec<(u64, u64, i64)>,
}

/// a₂ = (m/m₂)^{-1} mod 4m₂ and a_p = (4m/m_p)^{-1} mod m_p.
pub fn local_split(m: u64) -> LocalSplit {
    let m2 = p_part(m, 2);
    let a2 = modinv((m / m2) as i64, 4 * m2 as i64).expect("odd part is a unit mod 4m2");
    let odd = factorize(m)
        .into_iter()
        .filter(|&(p, _)| p != 2)
        .map(|(p, _)| {
            let mp = p_part(m, p);
            (p, mp, modinv((4 * m / mp) as i64, mp as i64).expect("unit mod m_p"))
        })
        .collect();
    LocalSplit { m2, a2, odd }
}

/// Local factors of a twisted ν_m^α: the 2-part σ(ν_{m₂}^{α(2)}) and the odd
/// parts σ(λ_{m_p}^{α(p)}). Returned as (prime, handle).
pub fn p_part_decomposition(h: &CharacterHandle) -> Result<Vec<(u64, CharacterHandle)>, WeilError> {
    let CharKind::NuNew { m, alpha } = &h.kind else {
        return Err(WeilError::InvalidCharacter("p-parts are defined for new-alpha characters".into()));
    };
    validate_alpha(*m, alpha)?;
    let split = local_split(*m);
    let sign_at = |p: u64| alpha.iter().find(|&&(q, _)| q == p).map(|&(_, s)| s).unwrap_or(1);
    let mut out = Vec::new();
    let alpha2 = if split.m2 > 1 { vec![(2, sign_at(2))] } else { Vec::new() };
    out.push((
        2,
        CharacterHandle {
            kind: CharKind::NuNew { m: split.m2, alpha: alpha2 },
            twist: modp(split.a2 * h.twist, 4 * split.m2 as i64),
        },
    ));
    for &(p, mp, ap) in &split.odd {
        let k = factorize(mp)[0].1;
        out.push((
            p,
            CharacterHandle {
                kind: CharKind::LambdaNew { p, k, sign: sign_at(p) },
                twist: modp(ap * h.twist, mp as i64),
            },
        ));
    }
    Ok(out)
}

/// Product of the local factors: the 2-part on the word itself, odd parts on
/// the canonical word of the CRT-local lift of its matrix.
pub fn evaluate_by_p_parts(ctx: &mut CharacterContext, h: &CharacterHandle, w: &Sl2Word) -> Result<CycNumber, WeilError> {
    let parts = p_part_decomposition(h)?;
    let CharKind::NuNew { m, .. } = h.kind else { unreachable!() };
    let g = Sl2Mod::from_int(4 * m, &w.matrix());
    let mut acc = CycNumber::one(1);
    for (p, local) in parts {
        let v = if p == 2 {
            ctx.evaluate(&local, w)?
        } else {
            let lw = word_decompose(&crt_local_lift(&g, p).expect("p divides 4m"));
            ctx.evaluate(&local, &lw)?
        };
        acc = &acc * &v;
    }
    Ok(acc)
}

/// The closed form for ϑ_m^±(S̃^k) in terms of ζ = e(1/8).
pub fn gauss_trace_formula(m: u64, sign: i8, k: u32) -> CycNumber {
    let s = sign as i64;
    let k_i = k as i64;
    let root = embed_root(8, -2 * k_i + s * k_i);
    if k.is_multiple_of(2) {
        root.scale(&linalg::rat(m as i64 + s))
    } else if m.is_multiple_of(2) {
        root
    } else {
        CycNumber::zero(8)
    }
}

/// Dimensions of the i^a eigenspaces (a = 0..3) of S on Θ_m^± ⊗ Θ_{m'}^±.
pub fn s_eigenspace_dims(m: u64, m2: u64, sign: i8, sign2: i8) -> Result<[i64; 4], WeilError> {
    let mut ctx = CharacterContext::new();
    let h1 = CharacterHandle::theta_sign(m, sign);
    let h2 = CharacterHandle::theta_sign(m2, sign2);
    let mut prods = Vec::new();
    for k in 0..4 {
        let w = Sl2Word::s_pow(k);
        prods.push(&ctx.evaluate(&h1, &w)? * &ctx.evaluate(&h2, &w)?);
    }
    let mut out = [0i64; 4];
    for (a, slot) in out.iter_mut().enumerate() {
        let mut acc = CycNumber::zero(4);
        for (k, pr) in prods.iter().enumerate() {
            acc = &acc + &(&embed_root(4, -((a * k) as i64)) * pr);
        }
        let v = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(4))).to_integer()?;
        *slot = i64::try_from(v).map_err(|_| CycError::Overflow)?;
    }
    Ok(out)
}

/// Dimension of Θ_m^±.
pub fn theta_dim(m: u64, sign: i8) -> i64 {
    if sign > 0 {
        m as i64 + 1
    } else {
        m as i64 - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_values() {
        for m in 1..=9 {
            assert_eq!(gauss_sigma(&QuadSpace::d(m, 1).unwrap()).unwrap(), 7);
        }
        assert_eq!(gauss_sigma(&QuadSpace::l(5, 1).unwrap()).unwrap(), 0);
        assert_eq!(gauss_sigma(&QuadSpace::l(1, 1).unwrap()).unwrap(), 0);
    }

    #[test]
    fn d1_generators() {
        let (t, s) = weil_generators(QuadSpace::d(1, 1).unwrap()).unwrap();
        assert_eq!(t[0], CycNumber::one(1));
        assert_eq!(t[3], embed_root(4, 1));
        assert!(t[1].is_zero() && t[2].is_zero());
        let base = &embed_root(8, -1) * &crate::cyclotomic::sqrt_int(2);
        let half = base.scale(&BigRational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(s[0], half);
        assert_eq!(s[1], half);
        assert_eq!(s[3], -&half);
    }

    #[test]
    fn orthogonal_groups() {
        assert_eq!(orthogonal_group(1), vec![1]);
        assert_eq!(orthogonal_group(9), vec![1, 17]);
        assert_eq!(orthogonal_group(6), vec![1, 5, 7, 11]);
    }

    #[test]
    fn u_d_examples() {
        let u = u_d_map(1, 2);
        assert_eq!(u[0], vec![1, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(u[1], vec![0, 0, 1, 0, 0, 0, 1, 0]);
        let id = u_d_map(3, 1);
        for (i, row) in id.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, i64::from(i == j));
            }
        }
    }

    #[test]
    fn p_part_arithmetic() {
        let h = new_alpha_character(6, vec![(2, 1), (3, -1)]).unwrap();
        let parts = p_part_decomposition(&h).unwrap();
        assert_eq!(parts[0].1.twist, 3);
        assert_eq!(parts[0].1.kind, CharKind::NuNew { m: 2, alpha: vec![(2, 1)] });
        assert_eq!(parts[1].1.twist, 2);
        assert_eq!(parts[1].1.kind, CharKind::LambdaNew { p: 3, k: 1, sign: -1 });
    }

    #[test]
    fn simple_character_values() {
        let mut ctx = CharacterContext::new();
        let e = Sl2Word::empty();
        for m in 1..6 {
            assert_eq!(ctx.evaluate(&CharacterHandle::theta_plus(m), &e).unwrap(), CycNumber::from_int(1, m as i64 + 1));
            assert_eq!(ctx.evaluate(&CharacterHandle::theta_minus(m), &e).unwrap(), CycNumber::from_int(1, m as i64 - 1));
        }
        let s = Sl2Word::s_pow(1);
        assert!(ctx.evaluate(&CharacterHandle::theta_minus(3), &s).unwrap().is_zero());
        let v = ctx.evaluate(&CharacterHandle::theta_plus(2), &s).unwrap();
        assert_eq!(v, &embed_root(4, -1) * &embed_root(8, 1));
    }
}
