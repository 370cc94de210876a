//! Tabulates the coefficient of L^k in the punctual classes across n: for
//! fixed k the coefficient settles once n is large enough, visible already
//! at n <= 5.
//!
//! Run with: cargo run --release --example coefficient_stability

use hilbert_strata::config::CountingConfig;
use hilbert_strata::stratum::punctual_class;

fn main() {
    let n_max = 5u32;
    let cfg = CountingConfig::default();
    let classes: Vec<_> = (1..=n_max)
        .map(|n| {
            punctual_class(2, n, &cfg)
                .expect("within budget")
                .total
                .expect("all strata polynomial")
        })
        .collect();
    let max_degree = classes.iter().filter_map(|p| p.degree()).max().unwrap_or(0);

    print!("{:>8}", "coeff");
    for n in 1..=n_max {
        print!("{:>6}", format!("n={}", n));
    }
    println!();
    for k in 0..=max_degree {
        print!("{:>8}", format!("L^{}", k));
        let values: Vec<String> = classes.iter().map(|p| p.coeff(k).to_string()).collect();
        for v in &values {
            print!("{:>6}", v);
        }
        let stable = values.len() >= 2 && values[values.len() - 1] == values[values.len() - 2];
        println!("{}", if stable { "   <- stable" } else { "" });
    }
}
