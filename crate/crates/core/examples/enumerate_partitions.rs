//! Enumerates m-dimensional partitions: counts for small weights in
//! dimensions 1..3, and the six plane partitions of 3 in canonical order
//! with their order ideals and borders.
//!
//! Run with: cargo run --example enumerate_partitions

use hilbert_strata::partitions::{border, enumerate_partitions, order_ideal};

fn main() {
    println!("partition counts P_m(n):");
    println!("{:>4} {:>8} {:>8} {:>8}", "n", "m=1", "m=2", "m=3");
    for n in 0..=6u32 {
        let counts: Vec<usize> = (1..=3)
            .map(|m| enumerate_partitions(m, n).len())
            .collect();
        println!("{:>4} {:>8} {:>8} {:>8}", n, counts[0], counts[1], counts[2]);
    }

    println!("\nplane partitions of 3, canonical order:");
    for lambda in enumerate_partitions(2, 3) {
        let ideal = order_ideal(&lambda);
        let bd = border(&lambda);
        let basis: Vec<String> = ideal.monomials().iter().map(|t| t.render()).collect();
        println!(
            "{}  basis {{{}}}  border size {}",
            serde_json::to_string(&lambda).unwrap(),
            basis.join(", "),
            bd.len()
        );
    }
}
