//! Exact arithmetic in cyclotomic fields Q(e(1/L)).
//!
//! [`CycNumber`] stores rational coefficients in the power basis
//! `1, z, ..., z^(L-1)` with `z = e(1/L)`. The basis is redundant; values are
//! compared after reduction modulo the cyclotomic polynomial. [`ZCyc`] is the
//! integer-coefficient variant used in matrix engines.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{factorize, gcd_i64, lcm_u64, mobius, modp};
use crate::weil::QuadSpace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("galois exponent {a} is not coprime to order {order}")]
    NotCoprime { a: i64, order: u64 },
    #[error("gauss sum check failed: G*conj(G) != |A| = {size}")]
    BadGaussSum { size: u64 },
    #[error("integer overflow in cyclotomic arithmetic")]
    Overflow,
    #[error("value is not a rational number")]
    NotRational,
    #[error("inexact division by {0}")]
    InexactDivision(i128),
}

/// Evaluation precision for [`CycNumber::to_complex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    /// Plain double-precision summation.
    #[default]
    Double,
    /// Double precision with Neumaier compensated summation.
    Compensated,
}

/// Coefficients of the L-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(l: u64) -> Vec<i64> {
    assert!(l >= 1);
    let mut num: Vec<i64> = vec![1];
    let mut dens = Vec::new();
    for d in 1..=l {
        if !l.is_multiple_of(d) {
            continue;
        }
        match mobius(l / d) {
            1 => {
                let d = d as usize;
                let mut next = vec![0i64; num.len() + d];
                for (i, &c) in num.iter().enumerate() {
                    next[i + d] += c;
                    next[i] -= c;
                }
                num = next;
            }
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        // divide by x^d - 1: p[i] = q[i-d] - q[i]
        let deg = num.len() - 1 - d;
        let mut q = vec![0i64; deg + 1];
        for i in 0..=deg {
            let prev = if i >= d { q[i - d] } else { 0 };
            q[i] = prev - num[i];
        }
        num = q;
    }
    num
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact element of Q(e(1/L)).
#[derive(Clone, Debug)]
pub struct CycNumber {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        CycNumber { order, coeffs: vec![BigRational::zero(); order as usize] }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_int(order: u64, n: i64) -> Self {
        Self::from_rational(order, rat(n))
    }

    pub fn from_rational(order: u64, q: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    /// Build from raw power-basis coefficients (length must equal the order).
    pub fn from_coeffs(order: u64, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len() as u64, order);
        CycNumber { order, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Lift to the order `l2`, which must be a multiple of the current order.
    pub fn coerce(&self, l2: u64) -> Self {
        assert!(l2.is_multiple_of(self.order), "order {} does not divide {}", self.order, l2);
        if l2 == self.order {
            return self.clone();
        }
        let f = (l2 / self.order) as usize;
        let mut out = Self::zero(l2);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs[j * f] = c.clone();
            }
        }
        out
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let l = lcm_u64(self.order, other.order);
        (self.coerce(l), other.coerce(l))
    }

    /// Coefficients modulo the cyclotomic polynomial; length φ(L).
    pub fn reduced(&self) -> Vec<BigRational> {
        let phi = cyclotomic_poly(self.order);
        let deg = phi.len() - 1;
        let mut c = self.coeffs.clone();
        for top in (deg..c.len()).rev() {
            if c[top].is_zero() {
                continue;
            }
            let lead = c[top].clone();
            let shift = top - deg;
            for (i, &p) in phi.iter().enumerate() {
                if p != 0 {
                    c[shift + i] -= &lead * rat(p);
                }
            }
        }
        c.truncate(deg);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|c| c.is_zero())
    }

    /// The rational value if this number lies in Q.
    pub fn to_rational(&self) -> Result<BigRational, CycError> {
        let r = self.reduced();
        if r.iter().skip(1).all(|c| c.is_zero()) {
            Ok(r.into_iter().next().unwrap_or_else(BigRational::zero))
        } else {
            Err(CycError::NotRational)
        }
    }

    /// The integer value if this number lies in Z.
    pub fn to_integer(&self) -> Result<BigInt, CycError> {
        let q = self.to_rational()?;
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(CycError::NotRational)
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Complex conjugation, the Galois automorphism z -> z^{-1}.
    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is always a unit")
    }

    /// The automorphism e(j/L) -> e(aj/L).
    pub fn galois_apply(&self, a: i64) -> Result<Self, CycError> {
        let l = self.order;
        if gcd_i64(a, l as i64) != 1 {
            return Err(CycError::NotCoprime { a, order: l });
        }
        let mut out = Self::zero(l);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let k = modp(a * j as i64, l as i64) as usize;
                out.coeffs[k] += c;
            }
        }
        Ok(out)
    }

    pub fn to_complex(&self, precision: Precision) -> Complex64 {
        let l = self.order as f64;
        let terms = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * j as f64 / l;
            (v * t.cos(), v * t.sin())
        });
        match precision {
            Precision::Double => {
                let (mut re, mut im) = (0.0, 0.0);
                for (a, b) in terms {
                    re += a;
                    im += b;
                }
                Complex64::new(re, im)
            }
            Precision::Compensated => {
                let (mut re, mut cre, mut im, mut cim) = (0.0, 0.0, 0.0, 0.0);
                for (a, b) in terms {
                    neumaier(&mut re, &mut cre, a);
                    neumaier(&mut im, &mut cim, b);
                }
                Complex64::new(re + cre, im + cim)
            }
        }
    }
}

fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

/// e(j/L).
pub fn embed_root(l: u64, j: i64) -> CycNumber {
    let mut z = CycNumber::zero(l);
    z.coeffs[modp(j, l as i64) as usize] = BigRational::one();
    z
}

/// Smallest order in which `sqrt_int(n)` is expressed.
pub fn sqrt_order(n: u64) -> u64 {
    let mut l = 1;
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            let f = if p == 2 {
                8
            } else if p % 4 == 1 {
                p
            } else {
                4 * p
            };
            l = lcm_u64(l, f);
        }
    }
    l
}

/// The positive square root of `n` as a cyclotomic number, built from
/// quadratic Gauss sums.
pub fn sqrt_int(n: u64) -> CycNumber {
    assert!(n >= 1);
    let l = sqrt_order(n);
    let mut acc = CycNumber::one(l);
    let mut square_part: i64 = 1;
    for (p, e) in factorize(n) {
        square_part *= (p as i64).pow(e / 2);
        if e % 2 == 0 {
            continue;
        }
        let root = if p == 2 {
            &embed_root(8, 1) + &embed_root(8, -1)
        } else {
            let mut g = CycNumber::zero(p);
            for x in 0..p {
                g = &g + &embed_root(p, ((x * x) % p) as i64);
            }
            if p % 4 == 1 {
                g
            } else {
                // g = i sqrt(p)
                &embed_root(4, -1) * &g
            }
        };
        acc = &acc * &root;
    }
    acc.scale(&rat(square_part)).coerce(l)
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        let (a, b) = self.common(rhs);
        let l = a.order as usize;
        let mut out = CycNumber::zero(a.order);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out.coeffs[(i + j) % l] += x * y;
                }
            }
        }
        out
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        let mut first = true;
        for (j, c) in r.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "({})*z{}^{}", c, self.order, j)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Integer-coefficient cyclotomic number with checked 128-bit arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZCyc {
    order: usize,
    c: Vec<i128>,
}

impl ZCyc {
    pub fn zero(order: usize) -> Self {
        ZCyc { order, c: vec![0; order] }
    }

    pub fn root(order: usize, j: i64) -> Self {
        let mut z = Self::zero(order);
        z.c[modp(j, order as i64) as usize] = 1;
        z
    }

    pub fn from_int(order: usize, n: i128) -> Self {
        let mut z = Self::zero(order);
        z.c[0] = n;
        z
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.c
    }

    pub fn is_trivially_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// self += other * e(shift/L).
    pub fn add_rotated(&mut self, other: &ZCyc, shift: usize) -> Result<(), CycError> {
        debug_assert_eq!(self.order, other.order);
        let l = self.order;
        let shift = shift % l;
        for (j, &x) in other.c.iter().enumerate() {
            if x != 0 {
                let k = if j + shift >= l { j + shift - l } else { j + shift };
                self.c[k] = self.c[k].checked_add(x).ok_or(CycError::Overflow)?;
            }
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &ZCyc) -> Result<(), CycError> {
        self.add_rotated(other, 0)
    }

    pub fn sub_assign(&mut self, other: &ZCyc) -> Result<(), CycError> {
        for (x, &y) in self.c.iter_mut().zip(other.c.iter()) {
            *x = x.checked_sub(y).ok_or(CycError::Overflow)?;
        }
        Ok(())
    }

    pub fn mul(&self, other: &ZCyc) -> Result<ZCyc, CycError> {
        let l = self.order;
        let mut out = ZCyc::zero(l);
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.c.iter().enumerate() {
                if y != 0 {
                    let k = (i + j) % l;
                    let p = x.checked_mul(y).ok_or(CycError::Overflow)?;
                    out.c[k] = out.c[k].checked_add(p).ok_or(CycError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    pub fn conj(&self) -> ZCyc {
        let l = self.order;
        let mut out = ZCyc::zero(l);
        for (j, &x) in self.c.iter().enumerate() {
            out.c[(l - j) % l] = x;
        }
        out
    }

    pub fn scale_int(&self, k: i128) -> Result<ZCyc, CycError> {
        let c = self
            .c
            .iter()
            .map(|&x| x.checked_mul(k).ok_or(CycError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ZCyc { order: self.order, c })
    }

    /// Reduce modulo the cyclotomic polynomial, keeping length L (upper part zeroed).
    pub fn reduce(&self) -> Result<ZCyc, CycError> {
        let phi = cyclotomic_poly(self.order as u64);
        let deg = phi.len() - 1;
        let mut c = self.c.clone();
        for top in (deg..c.len()).rev() {
            let lead = c[top];
            if lead == 0 {
                continue;
            }
            let shift = top - deg;
            for (i, &p) in phi.iter().enumerate() {
                if p != 0 {
                    let t = lead.checked_mul(p as i128).ok_or(CycError::Overflow)?;
                    c[shift + i] = c[shift + i].checked_sub(t).ok_or(CycError::Overflow)?;
                }
            }
        }
        Ok(ZCyc { order: self.order, c })
    }

    /// Exact division by an integer after reduction.
    pub fn div_exact(&self, k: i128) -> Result<ZCyc, CycError> {
        let r = self.reduce()?;
        let mut c = r.c;
        for x in c.iter_mut() {
            if *x % k != 0 {
                return Err(CycError::InexactDivision(k));
            }
            *x /= k;
        }
        Ok(ZCyc { order: self.order, c })
    }

    pub fn to_cyc(&self) -> CycNumber {
        CycNumber::from_coeffs(
            self.order as u64,
            self.c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect(),
        )
    }

    pub fn to_complex(&self) -> Complex64 {
        let l = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &x) in self.c.iter().enumerate() {
            if x != 0 {
                acc += Complex64::from_polar(x as f64, 2.0 * std::f64::consts::PI * j as f64 / l);
            }
        }
        acc
    }
}

/// The eighth root of unity σ_A = e(j/8) attached to a quadratic space:
/// G = Σ e(-Q(a)) satisfies G = |A|^{1/2} e(j/8). Returns j in [0, 8).
pub fn gauss_sigma(space: &QuadSpace) -> Result<i64, CycError> {
    let n = space.size() as u64;
    let c = space.denom();
    let l = lcm_u64(lcm_u64(c, 8), sqrt_order(n));
    let mut g = CycNumber::zero(l);
    for x in 0..n as i64 {
        g = &g + &embed_root(c, -space.q_num(x));
    }
    if &g * &g.conj() != CycNumber::from_int(1, n as i64) {
        return Err(CycError::BadGaussSum { size: n });
    }
    let root = sqrt_int(n);
    (0..8)
        .find(|&j| g == &root * &embed_root(8, j))
        .ok_or(CycError::BadGaussSum { size: n })
}

/// Check whether a rational is a non-negative integer and return it.
pub fn as_nonneg_integer(q: &BigRational) -> Option<i64> {
    if q.is_integer() && !q.is_negative() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Round an f64 to the nearest integer if it lies within `tol`.
pub fn snap_integer(x: f64, tol: f64) -> Option<i64> {
    let r = x.round();
    if (x - r).abs() <= tol {
        Some(r as i64)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        for l in 1..200u64 {
            assert_eq!(cyclotomic_poly(l).len() as u64 - 1, totient(l));
        }
    }

    #[test]
    fn roots() {
        assert_eq!(embed_root(1, 0), CycNumber::one(1));
        let i = embed_root(4, 1);
        assert_eq!(&i * &i, embed_root(2, 1));
        assert_eq!(&i * &i, CycNumber::from_int(1, -1));
        assert_eq!(embed_root(8, 1).pow(4), CycNumber::from_int(8, -1));
        assert_eq!(embed_root(12, 13), embed_root(12, 1));
    }

    #[test]
    fn galois() {
        let z = embed_root(8, 1);
        assert_eq!(z.galois_apply(-1).unwrap(), embed_root(8, 7));
        let w = embed_root(36, 1);
        assert_eq!(w.galois_apply(17).unwrap(), embed_root(36, 17));
        assert!(w.galois_apply(3).is_err());
        assert_eq!(w.galois_apply(1).unwrap(), w);
    }

    #[test]
    fn square_roots() {
        for n in 1..60u64 {
            let s = sqrt_int(n);
            assert_eq!(&s * &s, CycNumber::from_int(1, n as i64), "n={n}");
            let v = s.to_complex(Precision::Double);
            assert!((v.re - (n as f64).sqrt()).abs() < 1e-9 && v.im.abs() < 1e-9, "n={n}");
        }
    }

    #[test]
    fn complex_values() {
        let v = embed_root(4, 1).to_complex(Precision::Double);
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let s = &embed_root(8, 1) + &embed_root(8, -1);
        let v = s.to_complex(Precision::Compensated);
        assert!((v.re - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn zcyc_reduce_matches() {
        let mut z = ZCyc::zero(12);
        for j in [0, 4, 8] {
            z.add_rotated(&ZCyc::root(12, 0), j).unwrap();
        }
        assert!(z.reduce().unwrap().is_trivially_zero());
        assert!(z.to_cyc().is_zero());
    }
}
