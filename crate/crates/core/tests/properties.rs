//! Property tests for the algebraic building blocks.

use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;

use hilbert_strata::motivic::{euler_factorization, expand_euler_factors, MotivicPoly, MotivicSeries};
use hilbert_strata::partitions::{border, enumerate_partitions, order_ideal, MdPartition, Monomial};
use hilbert_strata::relations::RelPoly;
use hilbert_strata::stratum::{count_points, ResidualSystem};

fn arb_relpoly(num_vars: u32, max_terms: usize) -> impl Strategy<Value = RelPoly> {
    vec(
        ((-4i64..=4), vec(0..num_vars, 0..=2)),
        0..=max_terms,
    )
    .prop_map(RelPoly::from_terms)
}

fn arb_motivic_poly(max_degree: usize) -> impl Strategy<Value = MotivicPoly> {
    vec(-3i64..=3, 0..=max_degree + 1).prop_map(MotivicPoly::from_coeffs)
}

fn arb_unit_series(order: usize) -> impl Strategy<Value = MotivicSeries> {
    vec(arb_motivic_poly(2), order).prop_map(move |tail| {
        let mut coeffs = vec![MotivicPoly::one()];
        coeffs.extend(tail);
        MotivicSeries::new(order, coeffs)
    })
}

proptest! {
    /// Substitution is evaluation-compatible: plugging expr into v commutes
    /// with evaluating everything.
    #[test]
    fn substitute_matches_eval(
        p in arb_relpoly(5, 6),
        expr in arb_relpoly(5, 3),
        assignment in vec(0u64..7, 5),
        v in 0u32..5,
        q in prop::sample::select(vec![2u64, 3, 5, 7]),
    ) {
        let assignment: Vec<u64> = assignment.into_iter().map(|x| x % q).collect();
        let substituted = p.substitute(v, &expr);
        let mut patched = assignment.clone();
        patched[v as usize] = expr.eval_mod(&assignment, q);
        prop_assert_eq!(substituted.eval_mod(&assignment, q), p.eval_mod(&patched, q));
    }

    /// Canonicalization is idempotent and sign-stable under negation.
    #[test]
    fn canonicalize_idempotent(p in arb_relpoly(6, 8)) {
        let once = p.clone().canonicalized();
        let twice = once.clone().canonicalized();
        prop_assert_eq!(&once, &twice);
        let negated = p.scale(-1).canonicalized();
        prop_assert_eq!(once, negated);
    }

    /// Specializing L -> q is a ring homomorphism on truncated series.
    #[test]
    fn specialization_commutes_with_series_ops(
        a in arb_unit_series(5),
        b in arb_unit_series(5),
        q in prop::sample::select(vec![2u64, 3, 5]),
    ) {
        let prod = a.mul(&b).unwrap();
        prop_assert_eq!(prod.specialize(q), a.specialize(q).mul(&b.specialize(q)).unwrap());
        let inv = a.inverse().unwrap();
        prop_assert_eq!(inv.specialize(q), a.specialize(q).inverse().unwrap());
    }

    /// Euler factorization inverts expansion at every truncation order.
    #[test]
    fn euler_round_trip(a in arb_unit_series(6)) {
        let factors = euler_factorization(&a).unwrap();
        prop_assert_eq!(expand_euler_factors(&factors), a);
    }

    /// The component/cover/linear-algebra counting path agrees with a naive
    /// enumeration of every assignment.
    #[test]
    fn hybrid_count_matches_naive_enumeration(
        relations in vec(arb_relpoly(4, 4), 0..=4),
        q in prop::sample::select(vec![2u64, 3, 5]),
    ) {
        let relations: Vec<RelPoly> = relations
            .into_iter()
            .map(|r| r.canonicalized())
            .filter(|r| !r.is_zero() && r.nonzero_constant().is_none())
            .collect();
        let occurring: std::collections::BTreeSet<u32> =
            relations.iter().flat_map(|r| r.variables()).collect();
        let residual = ResidualSystem {
            residual_vars: occurring.iter().copied().collect(),
            residual_relations: relations.clone(),
            eliminated: vec![],
            pure_free: vec![],
            empty: false,
        };

        let mut naive = 0u64;
        let mut assignment = vec![0u64; 4];
        'outer: loop {
            if relations.iter().all(|r| r.eval_mod(&assignment, q) == 0) {
                naive += 1;
            }
            let mut pos = 0;
            loop {
                if pos == 4 {
                    break 'outer;
                }
                assignment[pos] += 1;
                if assignment[pos] < q {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
        }
        // naive ranges over all 4 variables; the counter multiplies the
        // non-occurring ones in only when listed, so scale down
        let silent = 4 - occurring.len() as u32;
        let expected = BigInt::from(naive);
        let counted = count_points(&residual, q, 1 << 20).unwrap()
            * BigInt::from(q).pow(silent);
        prop_assert_eq!(counted, expected);
    }

    /// Order ideals are division-closed with exactly n monomials; borders are
    /// disjoint one-step extensions.
    #[test]
    fn order_ideal_and_border_shape(seed in 0u32..24, n in 1u32..=5) {
        let lambdas = enumerate_partitions(2, n);
        let lambda: &MdPartition = &lambdas[(seed as usize) % lambdas.len()];
        let ideal = order_ideal(lambda);
        prop_assert_eq!(ideal.len() as u32, n);
        for mono in ideal.monomials() {
            for i in 0..=lambda.dim() {
                if mono.exp(i) > 0 {
                    let mut exps = mono.exps().to_vec();
                    exps[i] -= 1;
                    prop_assert!(ideal.position(&Monomial::new(exps)).is_some());
                }
            }
        }
        let bd = border(lambda);
        for mono in bd.monomials() {
            prop_assert!(ideal.position(mono).is_none());
        }
    }
}
