//! Tour of the series toolkit: arithmetic in Z[L], truncated series,
//! Euler factorization, power-structure exponentiation, and the point-count
//! specialization L -> q.
//!
//! Run with: cargo run --example series_power_structure

use hilbert_strata::motivic::{
    euler_factorization, expand_euler_factors, pow_euler, pow_euler_specialized, MotivicPoly,
    MotivicSeries,
};

fn main() {
    // polynomial arithmetic in Z[L]
    let p = MotivicPoly::from_coeffs(vec![1, 1, 1]); // L^2 + L + 1
    let q = MotivicPoly::from_coeffs(vec![-1, 1]); // L - 1
    println!("({}) * ({}) = {}", p.render(), q.render(), (&p * &q).render());
    println!("({}) at L = 2: {}", p.render(), p.eval_u64(2));

    // a truncated series with constant term 1 and its unique factorization
    // as prod (1 - T^i)^{-a_i}
    let series = MotivicSeries::new(
        4,
        vec![
            MotivicPoly::one(),
            MotivicPoly::one(),
            MotivicPoly::from_coeffs(vec![1, 1, 1]),
        ],
    );
    let factors = euler_factorization(&series).unwrap();
    for i in 1..=4 {
        println!("a_{} = {}", i, factors.exponent(i).render());
    }
    assert_eq!(expand_euler_factors(&factors), series);

    // exponentiation by a class: (1 - T)^{-L^2} has coefficients L^{2n},
    // the symmetric powers of the affine plane
    let powered = pow_euler(&factors, &MotivicPoly::l_power(2), 4);
    println!("\nseries^(L^2):");
    for n in 0..=4 {
        println!("  T^{}: {}", n, powered.coeff(n).render());
    }

    // specializing L -> 3 coefficientwise agrees with running the whole
    // expansion over Z with the factor bases evaluated at 3
    let direct = pow_euler_specialized(&factors, &MotivicPoly::l_power(2), 3, 4);
    assert_eq!(powered.specialize(3), direct);
    println!("\npoint counts over F_3: {:?}",
        direct
            .coeffs()
            .iter()
            .map(|c| c.coeff(0).to_string())
            .collect::<Vec<_>>());
}
