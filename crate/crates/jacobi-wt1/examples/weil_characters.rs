//! Traces of the Weil representation of D_m on powers of S.

use jacobi_wt1::cyclotomic::Precision;
use jacobi_wt1::sl2::Sl2Word;
use jacobi_wt1::weil::{gauss_trace_formula, CharacterContext, CharacterHandle, WeilError};

fn main() -> Result<(), WeilError> {
    let mut ctx = CharacterContext::new();
    println!("{:>3} {:>2} {:>24} {:>24}", "m", "k", "plus", "minus");
    for m in [1u64, 2, 3, 4, 6, 9] {
        for k in 0..4u32 {
            let w = Sl2Word::s_pow(k as usize);
            let mut vals = Vec::new();
            for sign in [1i8, -1] {
                let v = ctx.evaluate(&CharacterHandle::theta_sign(m, sign), &w)?;
                assert_eq!(v, gauss_trace_formula(m, sign, k));
                let z = v.to_complex(Precision::Compensated);
                vals.push(format!("{:.4}{:+.4}i", z.re, z.im));
            }
            println!("{m:>3} {k:>2} {:>24} {:>24}", vals[0], vals[1]);
        }
    }
    Ok(())
}
