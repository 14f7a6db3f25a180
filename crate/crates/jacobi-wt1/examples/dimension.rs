//! Dimensions of J_{1,m}(N) on the three backends.

use jacobi_wt1::dimension::{dim_report, Backend, DimError, DimQuery};

fn main() -> Result<(), DimError> {
    let cases = [(2u64, 8u64), (3, 144), (6, 36), (8, 32), (9, 9), (9, 36)];
    for (m, n) in cases {
        for backend in [Backend::Exact, Backend::CrtFloat] {
            let r = dim_report(&DimQuery::new(m, n, backend), None)?;
            let terms: Vec<String> = r.terms.iter().filter(|t| t.value != 0).map(|t| format!("m'={}: {}", t.m_prime, t.value)).collect();
            println!(
                "J_1,{m}({n})  M={:<3} {:<9} dim {}  [{}] {:.3}s",
                r.big_m,
                backend.name(),
                r.value_or_bound,
                terms.join(", "),
                r.elapsed.unwrap_or(0.0)
            );
        }
    }
    Ok(())
}
