//! Walks one stratum through the whole pipeline: coefficient variables,
//! border generators, commutation relations, elimination, and the class.
//!
//! The partition here (heights 2,1 in the x-row and 1 in the y-row, weight 4)
//! is the smallest stratum that is not an affine space: a single quadric
//! survives elimination and the class comes out as 2L^3 - L^2 by point
//! counting and interpolation.
//!
//! Run with: cargo run --example stratum_pipeline

use hilbert_strata::config::CountingConfig;
use hilbert_strata::partitions::MdPartition;
use hilbert_strata::quotient::ideal_generators_symbolic;
use hilbert_strata::relations::StratumSystem;
use hilbert_strata::stratum::{eliminate, stratum_class_of_system, ClassOutcome};

fn main() {
    let lambda = MdPartition::new(
        2,
        vec![(vec![0, 0], 2), (vec![1, 0], 1), (vec![0, 1], 1)],
    )
    .unwrap();
    println!("partition: {}", serde_json::to_string(&lambda).unwrap());

    let system = StratumSystem::new(&lambda);
    let basis: Vec<String> = system
        .ideal()
        .monomials()
        .iter()
        .map(|t| t.render())
        .collect();
    println!("basis of the quotient: {{{}}}", basis.join(", "));

    println!("\nideal generators (one per border monomial):");
    for generator in ideal_generators_symbolic(&system) {
        println!("  {}", generator);
    }

    let relations = system.commutator_relations();
    println!(
        "\n{} coefficient variables, {} commutation relations:",
        relations.variables.len(),
        relations.relations.len()
    );
    for rel in &relations.relations {
        println!("  {} = 0", rel.render(&relations.variables));
    }

    let residual = eliminate(&relations);
    println!(
        "\nafter elimination: {} substitutions, {} residual relation(s), free rank {}",
        residual.eliminated_count(),
        residual.residual_relations.len(),
        residual.free_rank()
    );
    for rel in &residual.residual_relations {
        println!("  residual: {} = 0", rel.render(&relations.variables));
    }

    let cfg = CountingConfig::default();
    let result = stratum_class_of_system(&lambda, &relations, &cfg).unwrap();
    for (q, count) in &result.counts {
        println!("  |V(F_{})| = {}", q, count);
    }
    match &result.outcome {
        ClassOutcome::Polynomial(p) => println!("\nclass: {}", p.render()),
        ClassOutcome::NotPolynomial(e) => println!("\nnot polynomial: {}", e.reason),
    }
}
