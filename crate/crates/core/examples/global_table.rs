//! Computes the classes of the Hilbert schemes of points of affine 3-space
//! from the punctual ones: Euler-factorize the punctual series and raise it
//! to the power L^3 through the power structure.
//!
//! Run with: cargo run --release --example global_table

use hilbert_strata::config::CountingConfig;
use hilbert_strata::motivic::{euler_factorization, pow_euler, MotivicPoly, MotivicSeries};
use hilbert_strata::stratum::punctual_class;

fn main() {
    let order = 5u32;
    let cfg = CountingConfig::default();

    let mut coeffs = vec![MotivicPoly::one()];
    for n in 1..=order {
        let class = punctual_class(2, n, &cfg)
            .expect("within budget")
            .total
            .expect("all strata polynomial");
        coeffs.push(class);
    }
    let punctual = MotivicSeries::new(order as usize, coeffs);

    let factors = euler_factorization(&punctual).expect("constant term 1");
    println!("Euler exponents of the punctual series:");
    for i in 1..=order as usize {
        println!("  a_{} = {}", i, factors.exponent(i).render());
    }

    let global = pow_euler(&factors, &MotivicPoly::l_power(3), order as usize);
    println!("\nn  [Hilb^n(A^3)]");
    for n in 1..=order as usize {
        println!("{}  {}", n, global.coeff(n).render());
    }
}
