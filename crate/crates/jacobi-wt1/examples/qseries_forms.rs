//! Expands a few weight-one forms and checks a theta/eta identity.

use jacobi_wt1::qseries::*;
use num_rational::Rational64;

fn main() -> Result<(), QSeriesError> {
    let order = Rational64::from_integer(6);

    let xi = explicit_form(&ExplicitForm::Xi1_8, order)?;
    let (v, lead) = xi.leading();
    println!("xi_1_8: index {:?}, leading q^{v}:", xi.index());
    for (l, c) in &lead {
        println!("  {c} y^{l}");
    }

    // θ_{8,4}(τ, 0) against η(8τ)²/η(4τ)
    let lhs = theta_expansion(8, 4, order)?.specialize_y1();
    let e8 = eta_expansion(Rational64::from_integer(2))?.rescale_tau(8);
    let e4 = eta_expansion(Rational64::from_integer(3))?.rescale_tau(4);
    let rhs = e8.mul(&e8).mul(&e4.invert()?).truncate(order)?;
    println!("theta_8,4(tau, 0) = eta(8tau)^2/eta(4tau) to q^6: {}", lhs.eq_on_window(&rhs));

    let q = theta_quark(1, 2, Rational64::from_integer(2))?;
    println!("Q_1,2 has index {:?} and {} terms below q^2", q.index(), q.num_terms());
    println!("{}", serde_json::to_string(&q.to_json()).expect("json"));
    Ok(())
}
