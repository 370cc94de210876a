//! Reproduces the table of punctual Hilbert scheme classes of affine 3-space:
//! for each n, the sum over plane partitions of n of the stratum classes.
//!
//! Run with: cargo run --release --example punctual_table

use hilbert_strata::config::CountingConfig;
use hilbert_strata::stratum::punctual_class;

fn main() {
    let cfg = CountingConfig::default();
    println!("n  [Hilb^n_0(A^3)]");
    for n in 1..=5u32 {
        let result = punctual_class(2, n, &cfg).expect("within budget");
        let non_affine = result
            .per_stratum
            .iter()
            .filter(|s| !s.is_affine())
            .count();
        let class = result
            .total
            .map(|p| p.render())
            .unwrap_or_else(|| "contains non-polynomial strata".to_string());
        println!(
            "{}  {}   ({} strata, {} non-affine)",
            n,
            class,
            result.per_stratum.len(),
            non_affine
        );
    }
}
