//! Loads the bundled umbral tables, checks them and decomposes a few rows.
//! Set JACOBI_WT1_DATA to point at another copy of the data.

use jacobi_wt1::umbral::{self, UmbralError};

fn main() -> Result<(), UmbralError> {
    let ds = umbral::load_default()?;
    println!("{} classes, {} coefficient rows", ds.levels.len(), ds.coefficients.rows.len());
    for c in ds.classes_of("A_8^3") {
        println!("  {} {}  N_g = {}{}", c.root_system, c.symbol(), c.level, if c.exceptional { "  (exceptional)" } else { "" });
    }
    println!("class sizes {:?}", ds.characters.class_sizes()?);
    for (r, d) in [(1, -1), (1, 71), (2, 32), (2, 68)] {
        println!("r={r} D={d}: multiplicities {:?}", umbral::decompose_multiplicities(&ds, r, d)?);
    }
    let rep = umbral::verify_decompositions(&ds)?;
    println!("decompositions: {} rows, passed {}", rep.rows_checked, rep.passed());
    println!("parity audit passed {}", umbral::coefficient_parity_audit(&ds).passed());
    let gens = umbral::gamma0_3_generators();
    println!(
        "Gamma0(3) mod 36 has order {}, block structure {}",
        umbral::generated_order(&gens, 36),
        umbral::block_structure_check(&gens)?
    );
    Ok(())
}
