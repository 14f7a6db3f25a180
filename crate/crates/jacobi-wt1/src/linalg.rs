//! Dense rational matrices, just enough for orthogonal projectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type RatMat = Vec<Vec<BigRational>>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn identity(n: usize) -> RatMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

pub fn from_int(m: &[Vec<i64>]) -> RatMat {
    m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

pub fn mul(a: &RatMat, b: &RatMat) -> RatMat {
    let k = b.len();
    let cols = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = BigRational::zero();
                    for t in 0..k {
                        if !row[t].is_zero() && !b[t][j].is_zero() {
                            acc += &row[t] * &b[t][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &RatMat) -> RatMat {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn sub(a: &RatMat, b: &RatMat) -> RatMat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

/// Reduced row echelon form; returns the nonzero rows.
pub fn row_basis(rows: &[Vec<BigRational>]) -> RatMat {
    let mut m: RatMat = rows.to_vec();
    if m.is_empty() {
        return m;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    m
}

pub fn inverse(a: &RatMat) -> Option<RatMat> {
    let n = a.len();
    let mut aug: RatMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, piv);
        let inv = BigRational::one() / &aug[c][c];
        for x in aug[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &aug[c][j];
                    aug[i][j] -= t;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Orthogonal projector (standard inner product) onto the complement of the
/// span of `rows` in Q^n.
pub fn complement_projector(rows: &[Vec<BigRational>], n: usize) -> RatMat {
    let b = row_basis(rows);
    if b.is_empty() {
        return identity(n);
    }
    let bt = transpose(&b);
    let gram = mul(&b, &bt);
    let ginv = inverse(&gram).expect("rows of a basis have invertible Gram matrix");
    let proj = mul(&mul(&bt, &ginv), &b);
    sub(&identity(n), &proj)
}

/// Integer matrix with a common denominator: value = num / den.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntFracMat {
    pub n: usize,
    pub num: Vec<i128>,
    pub den: i128,
}

impl IntFracMat {
    pub fn from_rat(m: &RatMat) -> Self {
        let n = m.len();
        let mut den = BigInt::one();
        for row in m {
            for x in row {
                den = den.lcm(x.denom());
            }
        }
        let mut num = Vec::with_capacity(n * n);
        for row in m {
            for x in row {
                let v = x * BigRational::from_integer(den.clone());
                num.push(v.to_integer().to_i128().expect("projector entry fits i128"));
            }
        }
        IntFracMat { n, num, den: den.to_i128().expect("denominator fits i128") }
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.num[i * self.n + j]
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.num.iter().map(|&x| x as f64 / self.den as f64).collect()
    }

    pub fn trace(&self) -> BigRational {
        let t: i128 = (0..self.n).map(|i| self.get(i, i)).sum();
        BigRational::new(BigInt::from(t), BigInt::from(self.den))
    }
}

pub fn is_zero_mat(a: &RatMat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

pub fn max_abs(a: &RatMat) -> BigRational {
    let mut m = BigRational::zero();
    for r in a {
        for x in r {
            if x.abs() > m {
                m = x.abs();
            }
        }
    }
    m
}
