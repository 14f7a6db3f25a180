#![allow(dead_code)]

use jacobi_wt1::cyclotomic::CycNumber;
use jacobi_wt1::linalg;
use jacobi_wt1::sl2::{Gen, Sl2Word};
use jacobi_wt1::weil::{all_alphas, alpha_parity, new_alpha_character, CharacterContext, CharacterHandle, WeilRep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random word alternating T-powers and S, with `len` S letters.
pub fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Sl2Word {
    let mut gens = Vec::new();
    for _ in 0..len {
        gens.push(Gen::T(rng.gen_range(-6..=6)));
        gens.push(Gen::S);
    }
    gens.push(Gen::T(rng.gen_range(-6..=6)));
    Sl2Word::from_gens(gens)
}

/// A commutes with ρ(w), for an integer matrix A.
pub fn int_commutes(a: &[Vec<i64>], rep: &WeilRep, w: &Sl2Word) -> bool {
    let v = rep.exact_matrix(w).unwrap();
    let n = rep.dim();
    for i in 0..n {
        for j in 0..n {
            let mut l = CycNumber::zero(1);
            let mut r = CycNumber::zero(1);
            for k in 0..n {
                if a[i][k] != 0 {
                    l = &l + &v[k * n + j].scale(&linalg::rat(a[i][k]));
                }
                if a[k][j] != 0 {
                    r = &r + &v[i * n + k].scale(&linalg::rat(a[k][j]));
                }
            }
            if l != r {
                return false;
            }
        }
    }
    true
}

/// ϑ_m^±(w) = Σ_{d^2 | m} Σ_{α(-1) = ±1} ν_{m/d^2}^α(w).
pub fn reconstruction_holds(ctx: &mut CharacterContext, m: u64, w: &Sl2Word) -> bool {
    for sign in [1i8, -1] {
        let lhs = ctx.evaluate(&CharacterHandle::theta_sign(m, sign), w).unwrap();
        let mut rhs = CycNumber::zero(1);
        for d in 1..=m {
            if !m.is_multiple_of(d * d) {
                continue;
            }
            let m1 = m / (d * d);
            for alpha in all_alphas(m1) {
                if alpha_parity(&alpha) == sign {
                    rhs = &rhs + &ctx.evaluate(&new_alpha_character(m1, alpha).unwrap(), w).unwrap();
                }
            }
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}
