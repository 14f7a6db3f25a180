//! Exact truncated Fourier-Jacobi expansions in q = e(τ) and y = e(z).
//!
//! A term is keyed by `(n, l2)`: the q-exponent is `n / den` and the
//! y-exponent is `l2 / 2`. Every stored exponent lies strictly below the
//! truncation order; coefficients past the order are unknown.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("leading term is not a single invertible monomial")]
    NotInvertible,
    #[error("half-integral y-exponent where an integral one is required")]
    HalfIntegralY,
    #[error("y-rescaling by {0} does not give integral exponents")]
    BadRescale(Rational64),
    #[error("not an index-{m} Jacobi expansion: {detail}")]
    InconsistentIndex { m: u64, detail: String },
    #[error("truncation order {have} too small, need {need}")]
    TruncationTooSmall { have: Rational64, need: Rational64 },
    #[error("verifiable window is empty")]
    EmptyWindow,
    #[error("unknown explicit form {0}")]
    UnknownForm(String),
    #[error("order must be positive")]
    BadOrder,
    #[error("malformed series json: {0}")]
    Json(String),
}

type Result<T> = std::result::Result<T, QSeriesError>;

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ceil_units(order: Rational64, den: i64) -> i64 {
    let x = order * den;
    x.ceil().to_integer()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierJacobiSeries {
    index: Option<u64>,
    den: i64,
    order: Rational64,
    terms: BTreeMap<(i64, i64), BigRational>,
}

impl FourierJacobiSeries {
    pub fn zero(den: i64, order: Rational64) -> Self {
        FourierJacobiSeries { index: None, den, order, terms: BTreeMap::new() }
    }

    /// The constant 1 known to `order`.
    pub fn one(order: Rational64) -> Self {
        let mut s = Self::zero(1, order);
        if order > Rational64::zero() {
            s.terms.insert((0, 0), BigRational::one());
        }
        s
    }

    /// Builds a series from `(q-exponent, y-exponent, coefficient)`,
    /// dropping terms at or past `order`.
    pub fn from_terms<I>(den: i64, order: Rational64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, BigRational)>,
    {
        let mut s = Self::zero(den, order);
        let cut = ceil_units(order, den);
        for (n, l2, c) in terms {
            if n < cut {
                s.add_term(n, l2, c);
            }
        }
        s
    }

    fn add_term(&mut self, n: i64, l2: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((n, l2)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(n, l2));
        }
    }

    pub fn index(&self) -> Option<u64> {
        self.index
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn order(&self) -> Rational64 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (Rational64, Rational64, &BigRational)> {
        let den = self.den;
        self.terms.iter().map(move |(&(n, l2), c)| (Rational64::new(n, den), Rational64::new(l2, 2), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of q^e y^l; errors when e is at or past the order.
    pub fn coeff(&self, e: Rational64, l: Rational64) -> Result<BigRational> {
        if e >= self.order {
            return Err(QSeriesError::TruncationTooSmall { have: self.order, need: e });
        }
        let n = e * self.den;
        let l2 = l * 2;
        if !n.is_integer() || !l2.is_integer() {
            return Ok(BigRational::zero());
        }
        Ok(self.terms.get(&(n.to_integer(), l2.to_integer())).cloned().unwrap_or_else(BigRational::zero))
    }

    /// Lowest q-exponent with a nonzero term, or the order when none is known.
    pub fn valuation(&self) -> Rational64 {
        self.terms.keys().map(|&(n, _)| Rational64::new(n, self.den)).min().unwrap_or(self.order).min(self.order)
    }

    /// All terms at the lowest q-exponent as `(l, c)`.
    pub fn leading(&self) -> (Rational64, Vec<(Rational64, BigRational)>) {
        let v = self.valuation();
        let lead = self
            .terms
            .iter()
            .filter(|(&(n, _), _)| Rational64::new(n, self.den) == v)
            .map(|(&(_, l2), c)| (Rational64::new(l2, 2), c.clone()))
            .collect();
        (v, lead)
    }

    /// Tags the series with an integral index; all y-exponents must be integers.
    pub fn with_index(mut self, m: u64) -> Result<Self> {
        if self.terms.keys().any(|&(_, l2)| l2 % 2 != 0) {
            return Err(QSeriesError::HalfIntegralY);
        }
        self.index = Some(m);
        Ok(self)
    }

    pub fn untagged(mut self) -> Self {
        self.index = None;
        self
    }

    fn with_den(&self, den: i64) -> Self {
        assert!(den % self.den == 0);
        let f = den / self.den;
        FourierJacobiSeries {
            index: self.index,
            den,
            order: self.order,
            terms: self.terms.iter().map(|(&(n, l2), c)| ((n * f, l2), c.clone())).collect(),
        }
    }

    fn normalized(mut self) -> Self {
        let mut g = self.den;
        for &(n, _) in self.terms.keys() {
            g = g.gcd(&n);
        }
        let g = g.gcd(self.order.denom()).max(1);
        // keep den a multiple of the order's denominator
        let g = if (self.den / g) % self.order.denom() == 0 { g } else { 1 };
        if g > 1 {
            self.terms = self.terms.into_iter().map(|((n, l2), c)| ((n / g, l2), c)).collect();
            self.den /= g;
        }
        self
    }

    /// Drops terms at or past `order`; errors if that would extend the window.
    pub fn truncate(&self, order: Rational64) -> Result<Self> {
        if order > self.order {
            return Err(QSeriesError::TruncationTooSmall { have: self.order, need: order });
        }
        let cut = ceil_units(order, self.den);
        let mut s = self.clone();
        s.order = order;
        s.terms.retain(|&(n, _), _| n < cut);
        Ok(s)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let d = self.den.lcm(&other.den);
        (self.with_den(d), other.with_den(d))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let order = a.order.min(b.order);
        let mut out = Self::zero(a.den, order);
        let cut = ceil_units(order, a.den);
        for (&(n, l2), c) in a.terms.iter().chain(b.terms.iter()) {
            if n < cut {
                out.add_term(n, l2, c.clone());
            }
        }
        out.index = if self.index == other.index { self.index } else { None };
        out.normalized()
    }

    pub fn neg(&self) -> Self {
        self.scale(&big(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut s = self.clone();
        if c.is_zero() {
            s.terms.clear();
        } else {
            for v in s.terms.values_mut() {
                *v *= c;
            }
        }
        s
    }

    /// Product; the window is the largest one both factors determine.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let order = (a.order + b.valuation()).min(b.order + a.valuation());
        let mut out = Self::zero(a.den, order);
        let cut = ceil_units(order, a.den);
        for (&(n1, l1), c1) in &a.terms {
            for (&(n2, l2), c2) in &b.terms {
                if n1 + n2 < cut {
                    out.add_term(n1 + n2, l1 + l2, c1 * c2);
                }
            }
        }
        out.index = match (self.index, other.index) {
            (Some(x), Some(y)) => Some(x + y),
            (Some(x), None) | (None, Some(x)) => Some(x),
            _ => None,
        };
        out.normalized()
    }

    /// Multiplicative inverse; requires a single monomial at the lowest q-exponent.
    pub fn invert(&self) -> Result<Self> {
        let (v, lead) = self.leading();
        if lead.len() != 1 || v >= self.order {
            return Err(QSeriesError::NotInvertible);
        }
        let (l0, c0) = lead[0].clone();
        let d = self.den;
        let v_n = (v * d).to_integer();
        let l0_2 = (l0 * 2).to_integer();
        // s = c0 q^v y^l0 (1 + u), u known below order - v
        let rel_order = self.order - v;
        let cut = ceil_units(rel_order, d);
        let inv_c0 = BigRational::one() / &c0;
        let mut u: BTreeMap<(i64, i64), BigRational> = BTreeMap::new();
        for (&(n, l2), c) in &self.terms {
            if (n, l2) != (v_n, l0_2) {
                u.insert((n - v_n, l2 - l0_2), c * &inv_c0);
            }
        }
        // w = 1/(1+u) computed degree by degree in n
        let mut w: BTreeMap<(i64, i64), BigRational> = BTreeMap::new();
        w.insert((0, 0), BigRational::one());
        for n in 1..cut {
            let mut level: BTreeMap<i64, BigRational> = BTreeMap::new();
            for (&(un, ul), uc) in &u {
                if un > n {
                    continue;
                }
                for (&(wn, wl), wc) in w.range((n - un, i64::MIN)..=(n - un, i64::MAX)) {
                    let _ = wn;
                    let e = level.entry(ul + wl).or_insert_with(BigRational::zero);
                    *e -= uc * wc;
                }
            }
            for (l, c) in level {
                if !c.is_zero() {
                    w.insert((n, l), c);
                }
            }
        }
        let mut out = Self::zero(d, rel_order - v);
        for ((n, l2), c) in w {
            out.add_term(n - v_n, l2 - l0_2, c * &inv_c0);
        }
        Ok(out.normalized())
    }

    /// τ ↦ hτ.
    pub fn rescale_tau(&self, h: i64) -> Self {
        assert!(h > 0);
        let mut s = self.clone();
        s.terms = self.terms.iter().map(|(&(n, l2), c)| ((n * h, l2), c.clone())).collect();
        s.order = self.order * h;
        s.index = self.index.map(|m| m * h as u64);
        s.normalized()
    }

    /// z ↦ hz for a positive rational h.
    pub fn rescale_z(&self, h: Rational64) -> Result<Self> {
        let mut s = self.clone();
        let mut terms = BTreeMap::new();
        for (&(n, l2), c) in &self.terms {
            let x = h * l2;
            if !x.is_integer() {
                return Err(QSeriesError::BadRescale(h));
            }
            terms.insert((n, x.to_integer()), c.clone());
        }
        s.terms = terms;
        s.index = match self.index {
            Some(m) => {
                let x = h * h * m as i64;
                if x.is_integer() { Some(x.to_integer() as u64) } else { None }
            }
            None => None,
        };
        Ok(s)
    }

    /// Both variables rescaled by h.
    pub fn rescale(&self, h: i64) -> Result<Self> {
        self.rescale_tau(h).rescale_z(Rational64::from_integer(h)).map(|mut s| {
            s.index = self.index.map(|m| m * h as u64);
            s
        })
    }

    /// y ↦ 1.
    pub fn specialize_y1(&self) -> Self {
        let mut out = Self::zero(self.den, self.order);
        for (&(n, _), c) in &self.terms {
            out.add_term(n, 0, c.clone());
        }
        out.normalized()
    }

    /// Equality on the common window.
    pub fn eq_on_window(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        match (self.truncate(order), other.truncate(order)) {
            (Ok(a), Ok(b)) => {
                let (a, b) = a.common(&b);
                a.terms == b.terms
            }
            _ => false,
        }
    }

    /// Returns c with self = c·other on the common window, if one exists.
    pub fn proportionality(&self, other: &Self) -> Option<BigRational> {
        let order = self.order.min(other.order);
        let a = self.truncate(order).ok()?;
        let b = other.truncate(order).ok()?;
        let (a, b) = a.common(&b);
        let (&key, bc) = b.terms.iter().next()?;
        let c = a.terms.get(&key)? / bc;
        if a.terms == b.scale(&c).terms { Some(c) } else { None }
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            denominator: self.den,
            order: format!("{}/{}", self.order.numer(), self.order.denom()),
            terms: self.terms.iter().map(|(&(n, l2), c)| (n, l2, rat_string(c))).collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self> {
        let bad = |s: &str| QSeriesError::Json(s.to_string());
        let (p, q) = j.order.split_once('/').ok_or_else(|| bad("order must be p/q"))?;
        let p: i64 = p.trim().parse().map_err(|_| bad("order numerator"))?;
        let q: i64 = q.trim().parse().map_err(|_| bad("order denominator"))?;
        if q <= 0 || j.denominator <= 0 {
            return Err(bad("nonpositive denominator"));
        }
        let mut s = Self::zero(j.denominator, Rational64::new(p, q));
        for (n, l2, c) in &j.terms {
            let c: BigRational = c.parse().map_err(|_| bad("coefficient"))?;
            s.add_term(*n, *l2, c);
        }
        Ok(s)
    }
}

fn rat_string(c: &BigRational) -> String {
    if c.is_integer() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Golden-file layout: terms are `[n, l_num, "c"]` sorted by (n, l), with
/// q-exponent n/denominator and y-exponent l_num/2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub denominator: i64,
    pub order: String,
    pub terms: Vec<(i64, i64, String)>,
}

impl fmt::Display for FourierJacobiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "O(q^{})", self.order);
        }
        let mut first = true;
        for (e, l, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono_empty = e.is_zero() && l.is_zero();
            if !a.is_one() || mono_empty {
                write!(f, "{a}")?;
            }
            if !e.is_zero() {
                write!(f, "q^{e}")?;
            }
            if !l.is_zero() {
                write!(f, "y^{l}")?;
            }
        }
        write!(f, " + O(q^{})", self.order)
    }
}

/// θ_{m,r}(τ,z) = Σ_k q^{(2km+r)²/4m} y^{2km+r}.
pub fn theta_expansion(m: u64, r: i64, order: Rational64) -> Result<FourierJacobiSeries> {
    if order <= Rational64::zero() || m == 0 {
        return Err(QSeriesError::BadOrder);
    }
    let mi = m as i64;
    let den = 4 * mi;
    let cut = ceil_units(order, den);
    let r0 = r.rem_euclid(2 * mi);
    let mut s = FourierJacobiSeries::zero(den, order);
    // l runs over r0 + 2m·k in both directions until l² passes the cutoff
    let mut l = r0;
    while l * l < cut {
        s.add_term(l * l, 2 * l, BigRational::one());
        l += 2 * mi;
    }
    let mut l = r0 - 2 * mi;
    while l * l < cut {
        s.add_term(l * l, 2 * l, BigRational::one());
        l -= 2 * mi;
    }
    s.index = Some(m);
    Ok(s.normalized())
}

/// θ^±_{m,r} = θ_{m,−r} ± θ_{m,r}.
pub fn theta_pm(m: u64, r: i64, sign: i8, order: Rational64) -> Result<FourierJacobiSeries> {
    let a = theta_expansion(m, -r, order)?;
    let b = theta_expansion(m, r, order)?;
    let out = if sign >= 0 { a.add(&b) } else { a.sub(&b) };
    out.with_index(m)
}

/// η(τ) = q^{1/24} ∏ (1 − q^n), expanded by the pentagonal number theorem.
pub fn eta_expansion(order: Rational64) -> Result<FourierJacobiSeries> {
    if order <= Rational64::zero() {
        return Err(QSeriesError::BadOrder);
    }
    let cut = ceil_units(order, 24);
    let mut s = FourierJacobiSeries::zero(24, order);
    for start in [1i64, -5] {
        // (6k+1)² for k ≥ 0 and k < 0
        let mut j = 0;
        loop {
            let x = start + 6 * j * start.signum();
            let e = x * x;
            if e >= cut {
                break;
            }
            let k = (x - 1) / 6;
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            s.add_term(e, 0, big(sign));
            j += 1;
        }
    }
    Ok(s)
}

/// η(τ) from the product definition; an independent route for tests.
pub fn eta_by_product(order: Rational64) -> Result<FourierJacobiSeries> {
    if order <= Rational64::zero() {
        return Err(QSeriesError::BadOrder);
    }
    let cut = ceil_units(order, 24);
    let max_n = (cut + 23) / 24 + 1;
    let mut coeffs = vec![BigRational::zero(); max_n as usize + 1];
    coeffs[0] = BigRational::one();
    for n in 1..=max_n as usize {
        for k in (n..coeffs.len()).rev() {
            let t = coeffs[k - n].clone();
            coeffs[k] -= t;
        }
    }
    Ok(FourierJacobiSeries::from_terms(
        24,
        order,
        coeffs.into_iter().enumerate().map(|(k, c)| (1 + 24 * k as i64, 0, c)),
    ))
}

pub fn series_mul(s: &FourierJacobiSeries, t: &FourierJacobiSeries) -> FourierJacobiSeries {
    s.mul(t)
}

pub fn series_invert(s: &FourierJacobiSeries) -> Result<FourierJacobiSeries> {
    s.invert()
}

/// Q_{a,b} = η⁻¹ θ⁻_{2,1}(τ, az/2) θ⁻_{2,1}(τ, bz/2) θ⁻_{2,1}(τ, (a+b)z/2).
pub fn theta_quark(a: u64, b: u64, order: Rational64) -> Result<FourierJacobiSeries> {
    if a == 0 || b == 0 || order <= Rational64::zero() {
        return Err(QSeriesError::BadOrder);
    }
    let work = order + 1;
    let eta_inv = eta_expansion(work + 1)?.invert()?;
    let mut acc = eta_inv;
    for c in [a, b, a + b] {
        let f = theta_pm(2, 1, -1, work)?.rescale_z(Rational64::new(c as i64, 2))?.untagged();
        acc = acc.mul(&f);
    }
    if acc.order() < order {
        return Err(QSeriesError::TruncationTooSmall { have: acc.order(), need: order });
    }
    acc.truncate(order)?.with_index(a * a + a * b + b * b)
}

/// S_{m,r}(τ) = Σ_k (2km+r) q^{(2km+r)²/4m}.
pub fn unary_theta(m: u64, r: i64, order: Rational64) -> Result<FourierJacobiSeries> {
    let th = theta_expansion(m, r, order)?;
    let mut s = FourierJacobiSeries::zero(th.den, order);
    for &(n, l2) in th.terms.keys() {
        s.add_term(n, 0, big(l2 / 2));
    }
    Ok(s.normalized())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExplicitForm {
    Xi1_12,
    Xi1_8,
    Xi9_3A,
    Xi9_6A,
    SUnary { m: u64, r: i64 },
    SE8Component(u8),
}

impl std::str::FromStr for ExplicitForm {
    type Err = QSeriesError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xi_1_12" => Ok(ExplicitForm::Xi1_12),
            "xi_1_8" => Ok(ExplicitForm::Xi1_8),
            "xi9_3A" => Ok(ExplicitForm::Xi9_3A),
            "xi9_6A" => Ok(ExplicitForm::Xi9_6A),
            "S_E8_1" => Ok(ExplicitForm::SE8Component(1)),
            "S_E8_2" => Ok(ExplicitForm::SE8Component(2)),
            other => Err(QSeriesError::UnknownForm(other.to_string())),
        }
    }
}

pub fn explicit_form(form: &ExplicitForm, order: Rational64) -> Result<FourierJacobiSeries> {
    if order <= Rational64::zero() {
        return Err(QSeriesError::BadOrder);
    }
    let one = Rational64::one();
    match form {
        ExplicitForm::Xi1_12 => {
            // η(6τ)·θ⁻_{2,1}(6τ, 6z)
            let eta6 = eta_expansion(order / 6 + one)?.rescale_tau(6);
            let th = theta_pm(2, 1, -1, order / 6 + one)?.rescale(6)?;
            eta6.mul(&th).truncate(order)?.with_index(12)
        }
        ExplicitForm::Xi1_8 => {
            let a = theta_expansion(8, 4, order + one)?.specialize_y1();
            let b = theta_pm(8, 4, -1, order + one)?;
            a.mul(&b).truncate(order)?.with_index(8)
        }
        ExplicitForm::Xi9_3A | ExplicitForm::Xi9_6A => {
            let sign = if *form == ExplicitForm::Xi9_3A { -1 } else { 1 };
            let w = order + one;
            let a = theta_expansion(3, 3, w)?.specialize_y1().mul(&theta_pm(9, 3, -1, w)?);
            let b = theta_expansion(3, 0, w)?.specialize_y1().mul(&theta_pm(9, 6, -1, w)?);
            let out = if sign < 0 { a.sub(&b) } else { a.add(&b) };
            out.truncate(order)?.with_index(9)
        }
        ExplicitForm::SUnary { m, r } => unary_theta(*m, *r, order),
        ExplicitForm::SE8Component(i) => {
            let rs: [i64; 4] = match i {
                1 => [1, 11, 19, 29],
                2 => [7, 13, 17, 23],
                _ => return Err(QSeriesError::UnknownForm(format!("S_E8_{i}"))),
            };
            let mut acc = FourierJacobiSeries::zero(1, order);
            for r in rs {
                acc = acc.add(&unary_theta(30, r, order)?);
            }
            Ok(acc)
        }
    }
}

/// Components h_r indexed by r mod 2m, each a series in q alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSeries {
    pub modulus: u64,
    pub components: BTreeMap<i64, FourierJacobiSeries>,
}

impl VectorSeries {
    pub fn component(&self, r: i64) -> Option<&FourierJacobiSeries> {
        self.components.get(&r.rem_euclid(self.modulus as i64))
    }

    /// h_r = −h_{−r} on every component.
    pub fn is_odd(&self) -> bool {
        self.components.iter().all(|(&r, h)| match self.component(-r) {
            Some(g) => h.eq_on_window(&g.neg()),
            None => h.is_zero(),
        })
    }
}

/// Theta decomposition of an index-m expansion.
pub fn theta_decompose(s: &FourierJacobiSeries, m: u64) -> Result<VectorSeries> {
    if s.terms.keys().any(|&(_, l2)| l2 % 2 != 0) {
        return Err(QSeriesError::HalfIntegralY);
    }
    let mi = m as i64;
    let den = s.den.lcm(&(4 * mi));
    let f = den / s.den;
    let scale = den / (4 * mi);
    let mut comps: BTreeMap<i64, FourierJacobiSeries> = BTreeMap::new();
    for r in 0..2 * mi {
        // h_r is known below order − r_min²/4m, where r_min is the least |l| with l ≡ r
        let rmin = r.min(2 * mi - r);
        let order = s.order - Rational64::new(rmin * rmin, 4 * mi);
        comps.insert(r, FourierJacobiSeries::zero(den, order));
    }
    for (&(n, l2), c) in &s.terms {
        let l = l2 / 2;
        let r = l.rem_euclid(2 * mi);
        let e = n * f - l * l * scale;
        let h = comps.get_mut(&r).expect("component exists");
        if Rational64::new(e, den) >= h.order {
            continue;
        }
        match h.terms.get(&(e, 0)) {
            Some(prev) if prev != c => {
                return Err(QSeriesError::InconsistentIndex {
                    m,
                    detail: format!("coefficients at q^{} y^{} and an earlier term with equal discriminant differ", Rational64::new(n, s.den), l),
                })
            }
            Some(_) => {}
            None => {
                h.terms.insert((e, 0), c.clone());
            }
        }
    }
    let v = VectorSeries {
        modulus: 2 * m,
        components: comps.into_iter().filter(|(_, h)| h.order > Rational64::zero()).map(|(r, h)| (r, h.normalized())).collect(),
    };
    let back = theta_recompose(&v, m, s.order)?;
    if !back.eq_on_window(s) {
        return Err(QSeriesError::InconsistentIndex { m, detail: "terms missing for some l in a residue class".into() });
    }
    Ok(v)
}

/// Σ_r h_r θ_{m,r}, truncated at `order`.
pub fn theta_recompose(v: &VectorSeries, m: u64, order: Rational64) -> Result<FourierJacobiSeries> {
    let mut acc = FourierJacobiSeries::zero(1, order);
    for (&r, h) in &v.components {
        if h.is_zero() {
            continue;
        }
        let th = theta_expansion(m, r, order - h.valuation())?;
        let prod = h.mul(&th);
        let prod = if prod.order >= order { prod.truncate(order)? } else { prod };
        acc = acc.add(&prod);
    }
    // components with unknown windows shrink the result
    let cut = v
        .components
        .iter()
        .map(|(&r, h)| {
            let rmin = r.min(2 * m as i64 - r);
            h.order + Rational64::new(rmin * rmin, 4 * m as i64)
        })
        .fold(order, |a, b| a.min(b));
    let mut acc = acc.truncate(cut.min(acc.order))?;
    acc.index = Some(m);
    Ok(acc)
}

/// Checks ξ(τ, z+λτ) e(mλ²τ + 2mλz) = ξ(τ, z) on the verifiable window.
pub fn elliptic_transform_check(s: &FourierJacobiSeries, m: u64, lambda: i64) -> Result<bool> {
    if lambda == 0 {
        return Ok(true);
    }
    let mi = m as i64;
    let d = s.den;
    if s.terms.keys().any(|&(_, l2)| l2 % 2 != 0) {
        return Err(QSeriesError::HalfIntegralY);
    }
    // q^{n/d} y^l ↦ q^{n/d + λl + mλ²} y^{l + 2mλ}
    let map = |n: i64, l2: i64, lam: i64| -> (i64, i64) { (n + d * (lam * l2 / 2 + mi * lam * lam), l2 + 4 * mi * lam) };
    let cut = ceil_units(s.order, d);
    let mut checked = 0usize;
    for (&(n, l2), c) in &s.terms {
        for lam in [lambda, -lambda] {
            let (n2, l22) = map(n, l2, lam);
            if n2 < cut {
                checked += 1;
                match s.terms.get(&(n2, l22)) {
                    Some(c2) if c2 == c => {}
                    _ => return Ok(false),
                }
            }
        }
    }
    if checked == 0 {
        return Err(QSeriesError::EmptyWindow);
    }
    Ok(true)
}

/// Rational order helper.
pub fn order(p: i64, q: i64) -> Rational64 {
    Rational64::new(p, q)
}

pub fn to_i64(c: &BigRational) -> Option<i64> {
    if c.is_integer() { c.numer().to_i64() } else { None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn theta_basics() {
        let t = theta_expansion(1, 0, o(2)).unwrap();
        assert_eq!(t.coeff(o(0), o(0)).unwrap(), big(1));
        assert_eq!(t.coeff(o(1), o(2)).unwrap(), big(1));
        assert_eq!(t.coeff(o(1), o(-2)).unwrap(), big(1));
        assert_eq!(t.num_terms(), 3);
        let t = theta_expansion(9, 6, o(2)).unwrap();
        assert_eq!(t.valuation(), o(1));
        assert_eq!(t.leading().1, vec![(o(6), big(1))]);
        assert_eq!(theta_expansion(5, 3, o(4)).unwrap(), theta_expansion(5, 13, o(4)).unwrap());
    }

    #[test]
    fn eta_routes_agree() {
        let a = eta_expansion(o(12)).unwrap();
        let b = eta_by_product(o(12)).unwrap();
        assert!(a.eq_on_window(&b));
        let inv = a.invert().unwrap();
        let one = a.mul(&inv);
        assert!(one.eq_on_window(&FourierJacobiSeries::one(one.order())));
    }

    #[test]
    fn json_roundtrip() {
        let q = theta_quark(1, 1, o(2)).unwrap();
        let j = q.to_json();
        let back = FourierJacobiSeries::from_json(&j).unwrap();
        assert!(back.eq_on_window(&q));
        assert!(j.terms.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
    }
}
