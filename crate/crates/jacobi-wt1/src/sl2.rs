//! SL2 over Z and Z/QZ: integer lifts, words in S and T, congruence images,
//! permutation characters and CRT components.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::arith::{egcd, factorize, gcd_i64, modp, p_part};

/// Integer 2x2 matrix stored as `[a, b, c, d]`.
pub type IntMat = [i64; 4];

pub const IDENTITY: IntMat = [1, 0, 0, 1];
pub const MAT_S: IntMat = [0, -1, 1, 0];
pub const MAT_T: IntMat = [1, 1, 0, 1];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sl2Error {
    #[error("determinant of {0:?} is not 1 mod {1}")]
    BadDeterminant([i64; 4], u64),
    #[error("level {n} does not divide modulus {q}")]
    LevelNotDivisor { n: u64, q: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime {p} does not divide modulus {q}")]
    PrimeNotDivisor { p: u64, q: u64 },
    #[error("integer overflow multiplying matrices")]
    Overflow,
}

pub fn mat_mul(x: &IntMat, y: &IntMat) -> IntMat {
    try_mat_mul(x, y).expect("matrix product overflowed i64")
}

pub fn try_mat_mul(x: &IntMat, y: &IntMat) -> Result<IntMat, Sl2Error> {
    let f = |p: i64, q: i64, r: i64, s: i64| -> Result<i64, Sl2Error> {
        p.checked_mul(q)
            .and_then(|u| r.checked_mul(s).and_then(|v| u.checked_add(v)))
            .ok_or(Sl2Error::Overflow)
    };
    Ok([
        f(x[0], y[0], x[1], y[2])?,
        f(x[0], y[1], x[1], y[3])?,
        f(x[2], y[0], x[3], y[2])?,
        f(x[2], y[1], x[3], y[3])?,
    ])
}

pub fn det(x: &IntMat) -> i64 {
    x[0] * x[3] - x[1] * x[2]
}

pub fn t_pow(k: i64) -> IntMat {
    [1, k, 0, 1]
}

/// Element of SL2(Z/QZ) with entries stored as residues in [0, Q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Mod {
    pub q: u64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2Mod {
    pub fn new(q: u64, a: i64, b: i64, c: i64, d: i64) -> Result<Self, Sl2Error> {
        let m = q as i64;
        let g = Sl2Mod { q, a: modp(a, m), b: modp(b, m), c: modp(c, m), d: modp(d, m) };
        if modp(g.a * g.d - g.b * g.c, m) != modp(1, m) {
            return Err(Sl2Error::BadDeterminant([a, b, c, d], q));
        }
        Ok(g)
    }

    pub fn identity(q: u64) -> Self {
        Sl2Mod::new(q, 1, 0, 0, 1).unwrap()
    }

    pub fn from_int(q: u64, g: &IntMat) -> Self {
        Sl2Mod::new(q, g[0], g[1], g[2], g[3]).expect("integer matrix with det 1")
    }

    pub fn reduce(&self, q2: u64) -> Self {
        assert!(self.q.is_multiple_of(q2));
        Sl2Mod::new(q2, self.a, self.b, self.c, self.d).unwrap()
    }

    pub fn mul(&self, o: &Sl2Mod) -> Self {
        assert_eq!(self.q, o.q);
        let m = self.q as i64;
        Sl2Mod {
            q: self.q,
            a: modp(self.a * o.a + self.b * o.c, m),
            b: modp(self.a * o.b + self.b * o.d, m),
            c: modp(self.c * o.a + self.d * o.c, m),
            d: modp(self.c * o.b + self.d * o.d, m),
        }
    }

    pub fn inverse(&self) -> Self {
        Sl2Mod::new(self.q, self.d, -self.b, -self.c, self.a).unwrap()
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// Canonical integer lift of `g`. Entries are bounded by roughly `(t + 2) Q^2`
/// where `t` is the small search offset making the bottom row coprime.
pub fn lift_to_integers(g: &Sl2Mod) -> IntMat {
    let q = g.q as i64;
    if q == 1 {
        return IDENTITY;
    }
    if g.c == 0 {
        if g.a == 1 && g.d == 1 {
            return [1, g.b, 0, 1];
        }
        if g.a == q - 1 && g.d == q - 1 {
            return [-1, g.b, 0, -1];
        }
    }
    let c1 = if g.c == 0 { q } else { g.c };
    let mut d1 = g.d;
    while gcd_i64(c1, d1) != 1 {
        d1 += q;
    }
    let (_, x, y) = egcd(d1, c1);
    let (a0, b0) = (x, -y);
    let (_, u, v) = egcd(c1, d1);
    let k = modp(
        modp(u, q) * modp(g.a - a0, q) % q + modp(v, q) * modp(g.b - b0, q) % q,
        q,
    );
    [a0 + k * c1, b0 + k * d1, c1, d1]
}

/// A generator of the metaplectic group: `T(k)` is T̃^k, `S` is S̃.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gen {
    T(i64),
    S,
}

/// A word in T̃ and S̃ fixing a metaplectic lift of its matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sl2Word {
    gens: Vec<Gen>,
    matrix: IntMat,
}

impl Sl2Word {
    pub fn empty() -> Self {
        Sl2Word { gens: Vec::new(), matrix: IDENTITY }
    }

    pub fn from_gens(gens: Vec<Gen>) -> Self {
        let mut w = Sl2Word::empty();
        for g in gens {
            w.push(g);
        }
        w
    }

    pub fn s_pow(k: usize) -> Self {
        Sl2Word::from_gens(vec![Gen::S; k])
    }

    pub fn push(&mut self, g: Gen) {
        match g {
            Gen::T(0) => return,
            Gen::T(k) => {
                self.matrix = mat_mul(&self.matrix, &t_pow(k));
                if let Some(Gen::T(prev)) = self.gens.last_mut() {
                    *prev += k;
                    if *prev == 0 {
                        self.gens.pop();
                    }
                    return;
                }
            }
            Gen::S => self.matrix = mat_mul(&self.matrix, &MAT_S),
        }
        self.gens.push(g);
    }

    pub fn concat(&self, other: &Sl2Word) -> Sl2Word {
        let mut w = self.clone();
        for &g in &other.gens {
            w.push(g);
        }
        w
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn matrix(&self) -> IntMat {
        self.matrix
    }

    /// Re-evaluate the matrix from the generators.
    pub fn evaluate(&self) -> IntMat {
        self.gens.iter().fold(IDENTITY, |acc, g| match g {
            Gen::T(k) => mat_mul(&acc, &t_pow(*k)),
            Gen::S => mat_mul(&acc, &MAT_S),
        })
    }

    pub fn s_count(&self) -> usize {
        self.gens.iter().filter(|g| matches!(g, Gen::S)).count()
    }

    /// The sign e such that the lift carried by this word is (γ, e·sqrt(cτ+d))
    /// with the principal square root.
    pub fn metaplectic_sign(&self) -> i32 {
        let tau0 = Complex64::new(0.31, 1.07);
        let mut tau = tau0;
        let mut ups = Complex64::new(1.0, 0.0);
        for g in self.gens.iter().rev() {
            match g {
                Gen::T(k) => tau += *k as f64,
                Gen::S => {
                    ups *= tau.sqrt();
                    tau = -1.0 / tau;
                }
            }
        }
        let m = self.matrix;
        let principal = (Complex64::new(m[2] as f64, 0.0) * tau0 + m[3] as f64).sqrt();
        let r = ups / principal;
        debug_assert!((r.re.abs() - 1.0).abs() < 1e-6 && r.im.abs() < 1e-6, "ratio {r}");
        if r.re > 0.0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Sl2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|g| match g {
                Gen::T(k) => format!("T^{k}"),
                Gen::S => "S".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Continued-fraction decomposition into a word in T and S with exactly the
/// given matrix. Only positive powers of S occur; -I appears as S^2.
pub fn word_decompose(g: &IntMat) -> Sl2Word {
    assert_eq!(det(g), 1, "matrix {g:?} does not have determinant 1");
    let mut gens = Vec::new();
    let [mut a, mut b, mut c, mut d] = *g;
    while c != 0 {
        let q = a.div_euclid(c);
        gens.push(Gen::T(q));
        gens.push(Gen::S);
        let (na, nb, nc, nd) = (c, d, -(a - q * c), -(b - q * d));
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    if a == 1 {
        gens.push(Gen::T(b));
    } else {
        gens.push(Gen::S);
        gens.push(Gen::S);
        gens.push(Gen::T(-b));
    }
    let w = Sl2Word::from_gens(gens);
    debug_assert_eq!(w.matrix, *g);
    w
}

/// Canonical word of the canonical lift of a residue matrix.
pub fn canonical_word(g: &Sl2Mod) -> Sl2Word {
    word_decompose(&lift_to_integers(g))
}

/// |SL2(Z/QZ)|.
pub fn group_order(q: u64) -> u64 {
    factorize(q).iter().fold(q * q * q, |acc, &(p, _)| acc / (p * p) * (p * p - 1))
}

/// Index of Γ0(N) in SL2(Z).
pub fn gamma0_index(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p + 1))
}

/// One (a, b) with a d - b c = 1 mod Q, assuming gcd(c, d, Q) = 1.
fn complete_row(c: i64, d: i64, q: i64) -> (i64, i64) {
    let c1 = if c == 0 { q } else { c };
    let mut d1 = d;
    while gcd_i64(c1, d1) != 1 {
        d1 += q;
    }
    let (_, x, y) = egcd(d1, c1);
    (modp(x, q), modp(-y, q))
}

/// Stream of the image of Γ0(N) in SL2(Z/QZ), that is every g with c = 0 mod N.
pub fn gamma0_image(n: u64, q: u64) -> Result<impl Iterator<Item = Sl2Mod> + Clone, Sl2Error> {
    if !q.is_multiple_of(n) {
        return Err(Sl2Error::LevelNotDivisor { n, q });
    }
    let qi = q as i64;
    Ok((0..qi).step_by(n as usize).flat_map(move |c| {
        (0..qi).filter(move |&d| gcd_i64(gcd_i64(c, d), qi) == 1).flat_map(move |d| {
            let (a0, b0) = complete_row(c, d, qi);
            (0..qi).map(move |k| Sl2Mod {
                q,
                a: modp(a0 + k * c, qi),
                b: modp(b0 + k * d, qi),
                c,
                d,
            })
        })
    }))
}

/// All of SL2(Z/QZ).
pub fn full_group(q: u64) -> impl Iterator<Item = Sl2Mod> + Clone {
    gamma0_image(1, q).expect("1 divides everything")
}

/// Points of the projective line over Z/NZ, one canonical pair per class.
pub fn projective_line(n: u64) -> Vec<(i64, i64)> {
    let ni = n as i64;
    let units: Vec<i64> = (1..=ni).filter(|&u| gcd_i64(u, ni) == 1).collect();
    let mut seen = std::collections::BTreeSet::new();
    for x in 0..ni {
        for y in 0..ni {
            if gcd_i64(gcd_i64(x, y), ni) != 1 {
                continue;
            }
            seen.insert(projective_key(x, y, ni, &units));
        }
    }
    seen.into_iter().collect()
}

fn projective_key(x: i64, y: i64, n: i64, units: &[i64]) -> (i64, i64) {
    units.iter().map(|&u| (modp(u * x, n), modp(u * y, n))).min().unwrap_or((0, 0))
}

/// Number of cosets Γ0(N)γ fixed by right translation by g, i.e. the value of
/// the permutation character induced from Γ0(N).
pub fn perm_character(n: u64, g: &Sl2Mod) -> Result<u64, Sl2Error> {
    if !g.q.is_multiple_of(n) {
        return Err(Sl2Error::LevelNotDivisor { n, q: g.q });
    }
    let ni = n as i64;
    let h = g.reduce(n);
    let count = projective_line(n)
        .into_iter()
        .filter(|&(x, y)| {
            let (x2, y2) = (x * h.a + y * h.c, x * h.b + y * h.d);
            modp(x2 * y - x * y2, ni) == 0
        })
        .count();
    Ok(count as u64)
}

/// Permutation-character table as a lookup keyed by the residue mod N.
pub fn perm_character_table(n: u64) -> HashMap<Sl2Mod, u64> {
    full_group(n).map(|g| (g, perm_character(n, &g).unwrap())).collect()
}

fn check_odd_prime(p: u64) -> Result<(), Sl2Error> {
    if p < 3 || factorize(p) != vec![(p, 1)] {
        return Err(Sl2Error::NotOddPrime(p));
    }
    Ok(())
}

/// p^2 + p, the number of cosets of Γ0(p^2).
pub fn coset_space_size(p: u64) -> Result<u64, Sl2Error> {
    check_odd_prime(p)?;
    Ok(projective_line(p * p).len() as u64)
}

/// Number of double cosets B\G/B for B the image of Γ0(p^2) in SL2(Z/p^2Z),
/// counted as orbits of B on the projective line.
pub fn double_coset_count(p: u64) -> Result<u64, Sl2Error> {
    check_odd_prime(p)?;
    let n = p * p;
    let ni = n as i64;
    let points = projective_line(n);
    let units: Vec<i64> = (1..=ni).filter(|&u| gcd_i64(u, ni) == 1).collect();
    let index: HashMap<(i64, i64), usize> =
        points.iter().enumerate().map(|(i, &pt)| (pt, i)).collect();
    let borel: Vec<Sl2Mod> = gamma0_image(n, n)?.collect();
    let mut orbit_id = vec![usize::MAX; points.len()];
    let mut orbits = 0;
    for start in 0..points.len() {
        if orbit_id[start] != usize::MAX {
            continue;
        }
        let (x, y) = points[start];
        for h in &borel {
            let key = projective_key(x * h.a + y * h.c, x * h.b + y * h.d, ni, &units);
            orbit_id[index[&key]] = orbits;
        }
        orbits += 1;
    }
    Ok(orbits as u64)
}

/// Norm of the permutation character of Γ0(p^2): (1/|G|) Σ_G 1̂(g)^2.
pub fn perm_character_norm(n: u64) -> f64 {
    let table = perm_character_table(n);
    let total: u64 = table.values().map(|v| v * v).sum();
    total as f64 / group_order(n) as f64
}

/// Integer matrix congruent to g modulo the p-part of Q and to the identity
/// modulo the complementary factor.
pub fn crt_local_lift(g: &Sl2Mod, p: u64) -> Result<IntMat, Sl2Error> {
    let q = g.q;
    let qp = p_part(q, p);
    if qp == 1 {
        return Err(Sl2Error::PrimeNotDivisor { p, q });
    }
    let rest = q / qp;
    let local = crt_local_residue(g, qp, rest);
    Ok(lift_to_integers(&local))
}

/// The residue mod Q = qp * rest congruent to g mod qp and to I mod rest.
pub fn crt_local_residue(g: &Sl2Mod, qp: u64, rest: u64) -> Sl2Mod {
    let q = (qp * rest) as i64;
    let (qp, rest) = (qp as i64, rest as i64);
    let (_, u, v) = egcd(qp, rest);
    // x = g mod qp, x = e mod rest
    let comb = |x: i64, e: i64| modp(x * v % q * rest + e * u % q * qp, q);
    Sl2Mod::new(q as u64, comb(g.a, 1), comb(g.b, 0), comb(g.c, 0), comb(g.d, 1))
        .expect("CRT combination preserves determinant")
}
