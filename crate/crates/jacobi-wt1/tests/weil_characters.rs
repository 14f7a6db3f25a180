mod common;

use jacobi_wt1::cyclotomic::CycNumber;
use jacobi_wt1::linalg;
use jacobi_wt1::sl2::{self, full_group, Gen, Sl2Word};
use jacobi_wt1::weil::*;
use num_complex::Complex64;

fn word(gens: Vec<Gen>) -> Sl2Word {
    Sl2Word::from_gens(gens)
}

#[test]
fn gauss_trace_law() {
    let mut ctx = CharacterContext::new();
    for m in 1..=12u64 {
        for k in 0..8u32 {
            let w = Sl2Word::s_pow(k as usize);
            for sign in [1i8, -1] {
                let v = ctx.evaluate(&CharacterHandle::theta_sign(m, sign), &w).unwrap();
                assert_eq!(v, gauss_trace_formula(m, sign, k), "m={m} k={k} sign={sign}");
            }
        }
    }
}

#[test]
fn defining_relations_and_unitarity() {
    let s2 = Sl2Word::s_pow(2);
    let st3 = word(vec![Gen::S, Gen::T(1), Gen::S, Gen::T(1), Gen::S, Gen::T(1)]);
    let s8 = Sl2Word::s_pow(8);
    let mut spaces: Vec<QuadSpace> = (1..=12).map(|m| QuadSpace::d(m, 1).unwrap()).collect();
    spaces.extend([QuadSpace::l(3, 1).unwrap(), QuadSpace::l(9, 2).unwrap(), QuadSpace::d(4, 3).unwrap()]);
    for sp in spaces {
        let rep = WeilRep::new(sp).unwrap();
        let a = rep.exact_word(&s2).unwrap();
        let b = rep.exact_word(&st3).unwrap();
        assert!(rep.values_equal(&a, &b).unwrap(), "{sp:?}");
        let e = rep.exact_word(&Sl2Word::empty()).unwrap();
        assert!(rep.values_equal(&rep.exact_word(&s8).unwrap(), &e).unwrap(), "{sp:?}");
    }
    let mut r = common::rng(7);
    for m in [1u64, 2, 3, 5, 8, 12] {
        let rep = WeilRep::new(QuadSpace::d(m, 1).unwrap()).unwrap();
        for len in 0..=6 {
            let w = common::random_word(&mut r, len);
            assert!(rep.is_unitary(&rep.exact_word(&w).unwrap()).unwrap(), "m={m} w={w}");
        }
    }
}

#[test]
fn s_squared_is_minus_quarter_turn_times_iota() {
    for m in 1..=9u64 {
        let rep = WeilRep::new(QuadSpace::d(m, 1).unwrap()).unwrap();
        let mat = rep.exact_matrix(&Sl2Word::s_pow(2)).unwrap();
        let n = 2 * m as usize;
        let q = jacobi_wt1::cyclotomic::embed_root(4, -1);
        for x in 0..n {
            for y in 0..n {
                let want = if y == (n - x) % n { q.clone() } else { CycNumber::zero(1) };
                assert_eq!(mat[x * n + y], want);
            }
        }
    }
}

#[test]
fn om_equivariance() {
    for m in 1..=12u64 {
        let rep = WeilRep::new(QuadSpace::d(m, 1).unwrap()).unwrap();
        for a in orthogonal_group(m) {
            let p = om_action(m, a);
            for g in [word(vec![Gen::T(1)]), Sl2Word::s_pow(1)] {
                assert!(common::int_commutes(&p, &rep, &g), "m={m} a={a}");
            }
        }
    }
}

fn intertwines(u: &[Vec<i64>], small: &WeilRep, big: &WeilRep, w: &Sl2Word) -> bool {
    // small(w) U = U big(w)
    let a = small.exact_matrix(w).unwrap();
    let b = big.exact_matrix(w).unwrap();
    let (n1, n2) = (small.dim(), big.dim());
    for i in 0..n1 {
        for j in 0..n2 {
            let mut l = CycNumber::zero(1);
            for k in 0..n1 {
                if u[k][j] != 0 {
                    l = &l + &a[i * n1 + k];
                }
            }
            let mut r = CycNumber::zero(1);
            for k in 0..n2 {
                if u[i][k] != 0 {
                    r = &r + &b[k * n2 + j];
                }
            }
            if l != r {
                return false;
            }
        }
    }
    true
}

#[test]
fn u_d_intertwines_and_composes() {
    let gens = [word(vec![Gen::T(1)]), Sl2Word::s_pow(1)];
    for (m1, d) in [(1u64, 2u64), (1, 3), (2, 2), (1, 4)] {
        let small = WeilRep::new(QuadSpace::d(m1, 1).unwrap()).unwrap();
        let big = WeilRep::new(QuadSpace::d(m1 * d * d, 1).unwrap()).unwrap();
        let u = u_d_map(m1, d);
        for g in &gens {
            assert!(intertwines(&u, &small, &big, g), "m'={m1} d={d}");
        }
    }
    for d in 1..=3u64 {
        for e in 1..=3u64 {
            let ud = linalg::from_int(&u_d_map(1, d));
            let ue = linalg::from_int(&u_d_map(d * d, e));
            let ude = linalg::from_int(&u_d_map(1, d * e));
            assert_eq!(linalg::mul(&ud, &ue), ude, "d={d} e={e}");
        }
    }
}

#[test]
fn lambda_embedding_intertwines() {
    let gens = [word(vec![Gen::T(1)]), Sl2Word::s_pow(1)];
    for (p, k, a) in [(3u64, 2u32, 1i64), (3, 3, 2), (5, 2, 2)] {
        let small = WeilRep::new(QuadSpace::l(p.pow(k - 2), a).unwrap()).unwrap();
        let big = WeilRep::new(QuadSpace::l(p.pow(k), a).unwrap()).unwrap();
        let u = lambda_embedding(p, k);
        for g in &gens {
            assert!(intertwines(&u, &small, &big, g), "p={p} k={k}");
        }
    }
}

#[test]
fn projectors_commute() {
    for m in [4u64, 8, 9, 12, 18] {
        let pn = new_projector(m);
        for alpha in all_alphas(m) {
            let pa = alpha_projector(m, &alpha);
            assert_eq!(linalg::mul(&pn, &pa), linalg::mul(&pa, &pn), "m={m}");
        }
    }
}

#[test]
fn nu_squarefree_sums_to_theta() {
    let mut ctx = CharacterContext::new();
    let mut r = common::rng(11);
    for m in [1u64, 2, 6, 10] {
        for _ in 0..5 {
            let w = common::random_word(&mut r, 3);
            let mut acc = CycNumber::zero(1);
            for alpha in all_alphas(m) {
                acc = &acc + &ctx.evaluate(&new_alpha_character(m, alpha).unwrap(), &w).unwrap();
            }
            assert_eq!(acc, ctx.evaluate(&CharacterHandle::theta_full(m), &w).unwrap());
        }
    }
    let nu1 = new_alpha_character(1, vec![]).unwrap();
    assert_eq!(ctx.evaluate(&nu1, &Sl2Word::empty()).unwrap(), CycNumber::from_int(1, 2));
}

#[test]
fn new_part_reconstruction() {
    let mut ctx = CharacterContext::new();
    let mut r = common::rng(4);
    for m in [4u64, 8, 9, 12, 16, 18] {
        for _ in 0..30 {
            let len = (r.next_u32() % 5) as usize;
            let w = common::random_word(&mut r, len);
            assert!(common::reconstruction_holds(&mut ctx, m, &w), "m={m} w={w}");
        }
    }
}

use rand::RngCore;

#[test]
fn p_parts_match_global() {
    let mut ctx = CharacterContext::new();
    let mut r = common::rng(99);
    for m in [6u64, 9, 12, 30] {
        for alpha in all_alphas(m) {
            let h = new_alpha_character(m, alpha.clone()).unwrap();
            for _ in 0..50 / all_alphas(m).len() + 1 {
                let len = (r.next_u32() % 4) as usize;
                let w = common::random_word(&mut r, len);
                let g = ctx.evaluate(&h, &w).unwrap();
                let l = evaluate_by_p_parts(&mut ctx, &h, &w).unwrap();
                assert_eq!(g, l, "m={m} alpha={alpha:?} w={w}");
            }
        }
    }
}

#[test]
fn galois_twist_matches_twisted_space() {
    let mut ctx = CharacterContext::new();
    let mut r = common::rng(5);
    let cases = [
        CharacterHandle::theta_plus(4).twisted(3),
        CharacterHandle::theta_minus(8).twisted(5),
        CharacterHandle::theta_full(3).twisted(5),
        CharacterHandle::theta_minus(2).twisted(7),
        lambda_character(3, 2, 1, 2).unwrap(),
        lambda_character(5, 1, -1, 2).unwrap(),
    ];
    for h in cases {
        for _ in 0..4 {
            let w = common::random_word(&mut r, 3);
            assert_eq!(ctx.evaluate(&h, &w).unwrap(), ctx.evaluate_via_galois(&h, &w).unwrap(), "{h:?}");
        }
    }
}

#[test]
fn lambda_values() {
    let mut ctx = CharacterContext::new();
    for p in [3u64, 5, 7] {
        let v = ctx.evaluate(&lambda_character(p, 1, -1, 1).unwrap(), &Sl2Word::empty()).unwrap();
        assert_eq!(v, CycNumber::from_int(1, (p as i64 - 1) / 2));
    }
    // norms over SL2(Z/3Z)
    for sign in [1i8, -1] {
        let h = lambda_character(3, 1, sign, 1).unwrap();
        let mut acc = CycNumber::zero(1);
        for g in full_group(3) {
            let v = ctx.evaluate(&h, &sl2::canonical_word(&g)).unwrap();
            acc = &acc + &(&v * &v.conj());
        }
        let norm = acc.to_rational().unwrap() / linalg::rat(24);
        assert_eq!(norm, linalg::rat(1), "sign {sign}");
    }
    let h = lambda_character(3, 1, -1, 1).unwrap();
    let t = ctx.evaluate(&h, &word(vec![Gen::T(1)])).unwrap();
    assert_ne!(t, CycNumber::one(1));
}

#[test]
fn lambda_new_dimensions() {
    let mut ctx = CharacterContext::new();
    for (p, k) in [(3u64, 2u32), (3, 3), (5, 2)] {
        for sign in [1i8, -1] {
            let h = lambda_character(p, k, sign, 1).unwrap();
            let d = ctx.evaluate(&h, &Sl2Word::empty()).unwrap().to_integer().unwrap();
            let full = |kk: u32| -> i64 {
                let n = p.pow(kk) as i64;
                if sign > 0 { (n + 1) / 2 } else { (n - 1) / 2 }
            };
            assert_eq!(d, (full(k) - full(k - 2)).into(), "p={p} k={k} sign={sign}");
        }
    }
}

#[test]
fn lift_pair_cancellation() {
    let mut ctx = CharacterContext::new();
    let mut r = common::rng(3);
    for (m, m2) in [(1u64, 1u64), (2, 4), (3, 6), (5, 2)] {
        let h1 = CharacterHandle::theta_minus(m);
        let h2 = CharacterHandle::theta_plus(m2);
        for _ in 0..5 {
            let w = common::random_word(&mut r, 3);
            let w4 = w.concat(&Sl2Word::s_pow(4));
            let a = &ctx.evaluate(&h1, &w).unwrap() * &ctx.evaluate(&h2, &w).unwrap();
            let b = &ctx.evaluate(&h1, &w4).unwrap() * &ctx.evaluate(&h2, &w4).unwrap();
            assert_eq!(a, b);
            let single = ctx.evaluate(&h2, &w4).unwrap();
            assert_eq!(single, -&ctx.evaluate(&h2, &w).unwrap());
        }
    }
}

#[test]
fn relation_equivalent_words_agree() {
    let mut ctx = CharacterContext::new();
    let h = CharacterHandle::theta_plus(6);
    let base = word(vec![Gen::T(2), Gen::S, Gen::T(-1)]);
    let st3 = word(vec![Gen::S, Gen::T(1), Gen::S, Gen::T(1), Gen::S, Gen::T(1)]);
    let w1 = base.concat(&Sl2Word::s_pow(2));
    let w2 = base.concat(&st3);
    assert_eq!(ctx.evaluate(&h, &w1).unwrap(), ctx.evaluate(&h, &w2).unwrap());
    let w3 = base.concat(&Sl2Word::s_pow(8));
    assert_eq!(ctx.evaluate(&h, &w3).unwrap(), ctx.evaluate(&h, &base).unwrap());
}

#[test]
fn negated_matrix_words_agree_as_lifts() {
    let mut r = common::rng(21);
    let rep = WeilRep::new(QuadSpace::d(3, 1).unwrap()).unwrap();
    for _ in 0..10 {
        let w = common::random_word(&mut r, 3);
        let g = w.matrix();
        let neg = [-g[0], -g[1], -g[2], -g[3]];
        let wn = sl2::word_decompose(&neg);
        let mut wg = sl2::word_decompose(&g).concat(&Sl2Word::s_pow(2));
        // same matrix, lifts agree up to S^4
        if wn.metaplectic_sign() != wg.metaplectic_sign() {
            wg = wg.concat(&Sl2Word::s_pow(4));
        }
        let a = rep.exact_word(&wn).unwrap();
        let b = rep.exact_word(&wg).unwrap();
        assert!(rep.values_equal(&a, &b).unwrap());
    }
}

fn nullity(m: &[Complex64], n: usize) -> usize {
    let mut a = m.to_vec();
    let mut rank = 0;
    for c in 0..n {
        let piv = (rank..n).max_by(|&i, &j| a[i * n + c].norm().partial_cmp(&a[j * n + c].norm()).unwrap());
        let Some(piv) = piv else { break };
        if a[piv * n + c].norm() < 1e-9 {
            continue;
        }
        for j in 0..n {
            a.swap(rank * n + j, piv * n + j);
        }
        for i in 0..n {
            if i != rank {
                let f = a[i * n + c] / a[rank * n + c];
                for j in 0..n {
                    let t = a[rank * n + j];
                    a[i * n + j] -= f * t;
                }
            }
        }
        rank += 1;
    }
    n - rank
}

#[test]
fn s_eigenspaces() {
    let d = s_eigenspace_dims(1, 1, -1, 1).unwrap();
    assert_eq!((d[1], d[3]), (0, 0));
    let d = s_eigenspace_dims(1, 1, 1, 1).unwrap();
    assert_eq!((d[0], d[2]), (0, 0));
    for (m, m2, s1, s2) in [(2u64, 3u64, -1i8, 1i8), (4, 4, 1, 1), (3, 5, -1, -1)] {
        let d = s_eigenspace_dims(m, m2, s1, s2).unwrap();
        assert!(d.iter().all(|&x| x >= 0));
        assert_eq!(d.iter().sum::<i64>(), theta_dim(m, s1) * theta_dim(m2, s2));
    }
    // brute force for (2, 2, +, +): restrict S to Θ_2^+ and diagonalize the tensor square
    let rep = WeilRep::new(QuadSpace::d(2, 1).unwrap()).unwrap();
    let fw = rep.float();
    let s = fw.matrix(&Sl2Word::s_pow(1));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let basis: [[f64; 4]; 3] = [[1.0, 0.0, 0.0, 0.0], [0.0, h, 0.0, h], [0.0, 0.0, 1.0, 0.0]];
    let mut r3 = [Complex64::new(0.0, 0.0); 9];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Complex64::new(0.0, 0.0);
            for x in 0..4 {
                for y in 0..4 {
                    acc += basis[i][x] * s[x * 4 + y] * basis[j][y];
                }
            }
            r3[i * 3 + j] = acc;
        }
    }
    let mut t = vec![Complex64::new(0.0, 0.0); 81];
    for i in 0..9 {
        for j in 0..9 {
            t[i * 9 + j] = r3[(i / 3) * 3 + j / 3] * r3[(i % 3) * 3 + j % 3];
        }
    }
    let want = s_eigenspace_dims(2, 2, 1, 1).unwrap();
    for a in 0..4 {
        let lam = Complex64::new(0.0, 1.0).powu(a as u32);
        let mut shifted = t.clone();
        for i in 0..9 {
            shifted[i * 9 + i] -= lam;
        }
        assert_eq!(nullity(&shifted, 9) as i64, want[a], "a={a}");
    }
}
