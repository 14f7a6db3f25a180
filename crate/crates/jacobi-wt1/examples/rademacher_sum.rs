//! Partial Rademacher sums for the Θ₉ multiplier on Γ0(3).

use jacobi_wt1::rademacher::{diagnostics, truncated_sums, RademacherError, RademacherParams};
use num_complex::Complex64;

fn main() -> Result<(), RademacherError> {
    let p = RademacherParams::with_theta(3, 9, 12, 20)?;
    let tau = Complex64::new(0.0, 1.0);
    let sums = truncated_sums(&p, tau)?;
    for row in diagnostics(&sums).iter().filter(|r| r.component == 1 || r.component == 3) {
        println!("K={:>2} r={} {:+.6e} {:+.6e}i  delta {:.2e}", row.k, row.component, row.real, row.imag, row.cauchy_delta);
    }
    Ok(())
}
