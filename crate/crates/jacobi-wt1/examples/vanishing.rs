//! Runs the exponent criterion over a small grid.

use jacobi_wt1::vanishing::{exponent_criterion, Criterion, VanishingError};

fn main() -> Result<(), VanishingError> {
    for big_m in [2u64, 4, 8, 9, 12, 16, 27, 36] {
        for m in (1..=big_m).filter(|m| big_m % m == 0 && *m <= 9) {
            match exponent_criterion(m, big_m)? {
                Criterion::Vanishes => println!("J_1,{m}({}) = 0", 4 * big_m),
                Criterion::Inconclusive { witness } => println!("J_1,{m}({}): inconclusive, witness {witness:?}", 4 * big_m),
            }
        }
    }
    Ok(())
}
