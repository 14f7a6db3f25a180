//! Small integer helpers shared across modules.

/// Prime factorization as (p, e) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).filter(|k| n.is_multiple_of(*k)).collect();
    d.sort_unstable();
    d
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd_i64(a as i64, b as i64) as u64
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

/// Non-negative residue of `a` modulo `m > 0`.
pub fn modp(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Extended gcd: returns (g, x, y) with a x + b y = g >= 0.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        let q = a.div_euclid(b);
        (g, y, x - q * y)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn modinv(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = egcd(modp(a, m), m);
    (g == 1).then(|| modp(x, m))
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(modinv(3, 8), Some(3));
        assert_eq!(modinv(8, 3), Some(2));
        assert_eq!(modinv(2, 4), None);
        assert_eq!(p_part(48, 2), 16);
        for a in -20..20 {
            for b in -20..20 {
                let (g, x, y) = egcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g, gcd_i64(a, b));
            }
        }
    }
}
