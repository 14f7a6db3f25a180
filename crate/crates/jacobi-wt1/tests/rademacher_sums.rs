use jacobi_wt1::rademacher::*;
use jacobi_wt1::sl2::{mat_mul, t_pow, IntMat};
use num_complex::Complex64;

fn tau() -> Complex64 {
    Complex64::new(0.13, 0.87)
}

#[test]
fn first_partial_sum_is_the_polar_term() {
    let p = RademacherParams::with_theta(1, 9, 1, 20).unwrap();
    let s = truncated_sum(&p, tau()).unwrap();
    let want = e(-1.0 / 36.0 * tau().re) * (2.0 * std::f64::consts::PI * tau().im / 36.0).exp();
    assert!((s[1] - want).norm() < 1e-14, "{} vs {want}", s[1]);
    assert!(s.iter().enumerate().all(|(i, z)| i == 1 || *z == Complex64::new(0.0, 0.0)));
}

#[test]
fn coset_representatives() {
    for (n, k) in [(1, 4), (3, 7), (4, 5)] {
        let reps = coset_reps(n, k);
        assert_eq!(reps[0], [1, 0, 0, 1]);
        let kk = k as i64;
        for g in &reps[1..] {
            let [a, b, c, d] = *g;
            assert_eq!(a * d - b * c, 1);
            assert!(c > 0 && c < kk && c % n as i64 == 0);
            assert!(d.abs() < kk * kk);
            assert!((0..c.max(1)).contains(&a) || c == 1);
        }
        // no two representatives share a bottom row
        let mut rows: Vec<_> = reps.iter().map(|g| (g[2], g[3])).collect();
        rows.sort();
        rows.dedup();
        assert_eq!(rows.len(), reps.len());
    }
}

#[test]
fn kernel_converges_in_depth() {
    let g: IntMat = [2, 1, 3, 2];
    let a = kernel_r(-1.0 / 36.0, &g, tau(), 20);
    let b = kernel_r(-1.0 / 36.0, &g, tau(), 40);
    assert!((a - b).norm() < 1e-15);
    assert_eq!(kernel_r(0.0, &g, tau(), 20), Complex64::new(0.0, 0.0));
}

#[test]
fn summand_depends_only_on_the_coset() {
    // left multiplication by T^j changes the representative but not the term
    let p = RademacherParams::with_theta(3, 9, 4, 20).unwrap();
    for g in coset_reps(3, 4).into_iter().skip(1).take(25) {
        let a = summand(&p, &g, tau()).unwrap();
        for j in [-2, 1, 5] {
            let b = summand(&p, &mat_mul(&t_pow(j), &g), tau()).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).norm() < 1e-10, "{g:?} j={j}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn multiples_of_three_stay_zero() {
    let p = RademacherParams::with_theta(3, 9, 20, 20).unwrap();
    let sums = truncated_sums(&p, tau()).unwrap();
    assert_eq!(sums.len(), 20);
    for s in &sums {
        for r in [0, 3, 6, 9, 12, 15] {
            assert_eq!(s[r], Complex64::new(0.0, 0.0));
        }
    }
    assert!(sums[19][2].norm() > 0.0);
    assert!(termwise_block_check(12).unwrap().is_some());
}

#[test]
fn level_one_fills_every_component() {
    let p = RademacherParams::with_theta(1, 9, 6, 20).unwrap();
    let s = truncated_sum(&p, tau()).unwrap();
    assert!(s[3].norm() > 0.0);
}

#[test]
fn diagnostics_csv() {
    let p = RademacherParams::with_theta(3, 9, 5, 20).unwrap();
    let rows = diagnostics(&truncated_sums(&p, tau()).unwrap());
    assert_eq!(rows.len(), 5 * 18);
    assert!(rows.iter().filter(|r| r.k == 1).all(|r| r.cauchy_delta == 0.0));
    let mut buf = Vec::new();
    write_diagnostics(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next(), Some("K,component,real,imag,cauchy_delta"));
    assert_eq!(text.lines().count(), rows.len() + 1);
}

struct Constant(Complex64);

impl Multiplier for Constant {
    fn dim(&self) -> usize {
        1
    }
    fn first(&self) -> usize {
        0
    }
    fn row(&self, _: &IntMat) -> Result<Vec<Complex64>, RademacherError> {
        Ok(vec![self.0])
    }
}

#[test]
fn rejects_wrong_multiplier_and_bad_input() {
    let r = RademacherParams::new(1, 9, 3, 20, Box::new(Constant(Complex64::new(1.0, 0.0))));
    assert!(matches!(r, Err(RademacherError::BadMultiplier { .. })));
    assert!(RademacherParams::new(1, 9, 3, 20, Box::new(Constant(e(1.0 / 36.0)))).is_ok());
    assert!(matches!(RademacherParams::with_theta(1, 9, 0, 20), Err(RademacherError::BadParams)));
    let p = RademacherParams::with_theta(1, 2, 2, 20).unwrap();
    assert!(matches!(truncated_sum(&p, Complex64::new(0.0, -1.0)), Err(RademacherError::NotUpperHalfPlane(_))));
}
