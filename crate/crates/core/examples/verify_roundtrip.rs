//! The numerical oracle in action: for every plane partition of 4, sample
//! stratum points over F_2 and F_3, instantiate the multiplication matrices,
//! check they commute, and recover the partition from the subquotient chain.
//!
//! Run with: cargo run --example verify_roundtrip

use hilbert_strata::partitions::enumerate_partitions;
use hilbert_strata::quotient::verify_stratum;
use hilbert_strata::relations::StratumSystem;
use hilbert_strata::stratum::eliminate;

fn main() {
    let mut all_ok = true;
    for lambda in enumerate_partitions(2, 4) {
        let system = StratumSystem::new(&lambda);
        let residual = eliminate(&system.commutator_relations());
        for q in [2u64, 3] {
            let report = verify_stratum(&system, &residual, q, 50, 1 << 20, 0).unwrap();
            println!("{}", serde_json::to_string(&report).unwrap());
            all_ok &= report.passed();
        }
    }
    println!(
        "\nround trip {}",
        if all_ok { "passed for every stratum" } else { "FAILED" }
    );
}
