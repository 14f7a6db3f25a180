//! Weight-one Jacobi forms: exact q-series, Weil representation characters,
//! dimension formulas, vanishing criteria and umbral moonshine table checks.

pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod dimension;
pub mod linalg;
pub mod qseries;
pub mod rademacher;
pub mod sl2;
pub mod umbral;
pub mod vanishing;
pub mod weil;
