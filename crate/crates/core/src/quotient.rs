//! Numerical oracle over F_q: sample stratum points, instantiate the
//! multiplication matrices, verify commutation, and read the partition back
//! off the matrices.
//!
//! The recovery follows the colon construction. Writing A = F_q^n for the
//! quotient with basis O_lambda and T_1,...,T_m for the instantiated
//! matrices, the subquotient pair (V, W) = (T_1^{r_1} A + 0, T_1^{r_1+1} A + 0)
//! plays the role of the ideal (I : x_1^{r_1})/(x_1); iterating through the
//! variables x_1,...,x_m in that order shrinks the pair until, at the leaf,
//! dim V - dim W is exactly lambda_{r_1,...,r_m}. A full round trip
//! (sample -> instantiate -> commute -> recover == lambda) exercises every
//! layer of the construction at once.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::gf::{FpMatrix, Subspace};
use crate::partitions::MdPartition;
use crate::relations::{StratumSystem, SymCol};
use crate::stratum::ResidualSystem;

/// A point of the stratum over F_q: one value per coefficient variable,
/// satisfying every relation of the original system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumPoint {
    pub q: u64,
    pub assignment: Vec<u64>,
}

/// Assignment spaces at most this large are enumerated exhaustively;
/// larger ones are sampled with rejection.
const EXHAUSTIVE_LIMIT: u128 = 1 << 16;

/// Draws up to `count` distinct points of the stratum over F_q: surviving
/// variables are assigned (exhaustively in odometer order for small spaces,
/// uniformly at random otherwise), eliminated variables are back-substituted,
/// and every point is re-verified against the original relation system.
pub fn sample_points(
    system: &StratumSystem,
    residual: &ResidualSystem,
    q: u64,
    count: usize,
    budget: u64,
    seed: u64,
) -> Result<Vec<StratumPoint>, Error> {
    if residual.empty {
        return Err(Error::NoPoints { q });
    }
    let relations = system.commutator_relations();
    let width = system.variables().len();
    let surviving: Vec<u32> = residual
        .residual_vars
        .iter()
        .chain(residual.pure_free.iter())
        .copied()
        .collect();
    let mut space: u128 = 1;
    for _ in &surviving {
        space = space.saturating_mul(q as u128);
    }

    let mut points = Vec::new();
    let push_if_valid = |assignment: &mut Vec<u64>, points: &mut Vec<StratumPoint>| {
        if !residual
            .residual_relations
            .iter()
            .all(|r| r.eval_mod(assignment, q) == 0)
        {
            return;
        }
        residual.back_substitute(assignment, q);
        let ok = relations
            .relations
            .iter()
            .all(|r| r.eval_mod(assignment, q) == 0);
        assert!(
            ok,
            "back-substituted point violates the original system for {}",
            system.lambda()
        );
        points.push(StratumPoint {
            q,
            assignment: assignment.clone(),
        });
    };

    if space <= EXHAUSTIVE_LIMIT {
        let mut values = vec![0u64; surviving.len()];
        loop {
            let mut assignment = vec![0u64; width];
            for (pos, &v) in surviving.iter().enumerate() {
                assignment[v as usize] = values[pos];
            }
            push_if_valid(&mut assignment, &mut points);
            if points.len() == count {
                break;
            }
            let mut pos = 0;
            loop {
                if pos == surviving.len() {
                    if points.is_empty() {
                        return Err(Error::NoPoints { q });
                    }
                    return Ok(points);
                }
                values[pos] += 1;
                if values[pos] < q {
                    break;
                }
                values[pos] = 0;
                pos += 1;
            }
            if surviving.is_empty() {
                break;
            }
        }
    } else {
        let mut rng = point_rng(system.lambda(), q, seed);
        let mut seen = std::collections::HashSet::new();
        let mut attempts: u64 = 0;
        while points.len() < count && attempts < budget {
            attempts += 1;
            let mut assignment = vec![0u64; width];
            for &v in &surviving {
                assignment[v as usize] = rng.gen_range(0..q);
            }
            let key: Vec<u64> = surviving
                .iter()
                .map(|&v| assignment[v as usize])
                .collect();
            if !seen.insert(key) {
                continue;
            }
            push_if_valid(&mut assignment, &mut points);
        }
        if points.is_empty() {
            return Err(Error::NoPoints { q });
        }
    }
    Ok(points)
}

fn point_rng(lambda: &MdPartition, q: u64, seed: u64) -> ChaCha8Rng {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(lambda.canonical_string().as_bytes());
    hasher.update(q.to_le_bytes());
    let digest = hasher.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

/// Substitutes a point into the symbolic matrices.
pub fn instantiate_matrices(system: &StratumSystem, point: &StratumPoint) -> Vec<FpMatrix> {
    let n = system.ideal().len();
    system
        .matrices()
        .iter()
        .map(|sym| {
            let mut mat = FpMatrix::zeros(point.q, n, n);
            for l in 0..n {
                match sym.col(l) {
                    SymCol::Basis(i) => mat.set(*i, l, 1),
                    SymCol::Border(entries) => {
                        for (row, var) in entries {
                            mat.set(*row, l, point.assignment[*var as usize]);
                        }
                    }
                }
            }
            mat
        })
        .collect()
}

/// True iff the matrices commute pairwise.
pub fn check_commuting(matrices: &[FpMatrix]) -> bool {
    first_noncommuting(matrices).is_none()
}

fn first_noncommuting(matrices: &[FpMatrix]) -> Option<(usize, usize)> {
    for r in 0..matrices.len() {
        for s in (r + 1)..matrices.len() {
            if matrices[r].mul(&matrices[s]) != matrices[s].mul(&matrices[r]) {
                return Some((r, s));
            }
        }
    }
    None
}

/// Recovers the partition from commuting multiplication matrices via the
/// subquotient chain: at level t, the children of (V, W) are
/// (T_t^r V + W, T_t^{r+1} V + W) for r = 0, 1, ... until the subquotient
/// dies; after level m the leaf dimension is the partition entry.
pub fn partition_from_matrices(
    matrices: &[FpMatrix],
    m: usize,
    n: usize,
) -> Result<MdPartition, Error> {
    if let Some((r, s)) = first_noncommuting(matrices) {
        return Err(Error::NotCommuting { r, s });
    }
    assert_eq!(matrices.len(), m + 1);
    let p = matrices[0].modulus();
    let mut entries: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    let full = Subspace::full(p, n);
    let zero = Subspace::zero(p, n);
    recover(matrices, m, 1, &full, &zero, &mut Vec::new(), &mut entries);
    MdPartition::new(m, entries)
}

fn recover(
    matrices: &[FpMatrix],
    m: usize,
    level: usize,
    space: &Subspace,
    sub: &Subspace,
    prefix: &mut Vec<u32>,
    entries: &mut BTreeMap<Vec<u32>, u32>,
) {
    debug_assert!(space.contains(sub));
    debug_assert!(matrices.iter().all(|t| {
        space.contains(&space.image_under(t)) && sub.contains(&sub.image_under(t))
    }));
    if level > m {
        let value = (space.dim() - sub.dim()) as u32;
        if value > 0 {
            entries.insert(prefix.clone(), value);
        }
        return;
    }
    let step = &matrices[level];
    let mut image = space.clone();
    let mut r: u32 = 0;
    let mut remaining = space.dim() - sub.dim();
    loop {
        let next = image.image_under(step);
        let child_space = image.sum(sub);
        let child_sub = next.sum(sub);
        let child_dim = child_space.dim() - child_sub.dim();
        if child_dim == 0 {
            break;
        }
        remaining -= child_dim;
        prefix.push(r);
        recover(matrices, m, level + 1, &child_space, &child_sub, prefix, entries);
        prefix.pop();
        image = next;
        r += 1;
    }
    // telescoping: the children exhaust the parent subquotient
    debug_assert_eq!(remaining, 0);
}

/// Checks that every border generator annihilates the cyclic vector: for
/// F = b - sum_i alpha_i t_i, applying the monomial operator b(T) to the
/// class of 1 must give exactly the coefficient vector (alpha_i)_i. Holds
/// whenever the matrices commute and represent the quotient multiplication.
pub fn border_generators_annihilate(
    system: &StratumSystem,
    point: &StratumPoint,
    matrices: &[FpMatrix],
) -> bool {
    let n = system.ideal().len();
    if n == 0 {
        return true;
    }
    let q = point.q;
    // position of the monomial 1 in the basis
    let one = crate::partitions::Monomial::one(system.lambda().dim() + 1);
    let Some(one_pos) = system.ideal().position(&one) else {
        return false;
    };
    for (j, border_mono) in system.border().monomials().iter().enumerate() {
        let mut vector = vec![0u64; n];
        vector[one_pos] = 1;
        for (axis, &e) in border_mono.exps().iter().enumerate() {
            for _ in 0..e {
                vector = matrices[axis].mul_vec(&vector);
            }
        }
        let expected: Vec<u64> = (0..n)
            .map(|i| {
                system
                    .var_id(j, i)
                    .map_or(0, |v| point.assignment[v as usize] % q)
            })
            .collect();
        if vector != expected {
            return false;
        }
    }
    true
}

/// Rendered border generators of the stratum with symbolic coefficients,
/// e.g. `z - a[1 0 0][0 1 0]*x - a[1 0 0][0 0 1]*y`.
pub fn ideal_generators_symbolic(system: &StratumSystem) -> Vec<String> {
    render_generators(system, |var| Some(system.variables()[var as usize].name.clone()))
}

/// Rendered border generators at a concrete point: coefficients substituted,
/// zero terms dropped.
pub fn ideal_generators(system: &StratumSystem, point: &StratumPoint) -> Vec<String> {
    render_generators(system, |var| {
        let value = point.assignment[var as usize];
        if value == 0 {
            None
        } else {
            Some(value.to_string())
        }
    })
}

fn render_generators(
    system: &StratumSystem,
    coeff: impl Fn(u32) -> Option<String>,
) -> Vec<String> {
    let mut out = Vec::with_capacity(system.border().len());
    for (j, border_mono) in system.border().monomials().iter().enumerate() {
        let mut text = border_mono.render();
        for (i, target) in system.ideal().monomials().iter().enumerate() {
            let Some(var) = system.var_id(j, i) else { continue };
            let Some(c) = coeff(var) else { continue };
            let monomial = target.render();
            if c == "1" && monomial != "1" {
                text.push_str(&format!(" - {}", monomial));
            } else if monomial == "1" {
                text.push_str(&format!(" - {}", c));
            } else {
                text.push_str(&format!(" - {}*{}", c, monomial));
            }
        }
        out.push(text);
    }
    out
}

/// One row of the verification report: did every sampled point of the
/// stratum yield commuting matrices, and did the recovery return lambda?
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub lambda: MdPartition,
    pub q: u64,
    pub points_tested: usize,
    pub commute_ok: bool,
    pub roundtrip_ok: bool,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.commute_ok && self.roundtrip_ok
    }
}

/// Samples points and runs the full round trip for one stratum over one
/// prime.
pub fn verify_stratum(
    system: &StratumSystem,
    residual: &ResidualSystem,
    q: u64,
    samples: usize,
    budget: u64,
    seed: u64,
) -> Result<RoundTripReport, Error> {
    let lambda = system.lambda().clone();
    let m = lambda.dim();
    let n = lambda.weight() as usize;
    let points = sample_points(system, residual, q, samples, budget, seed)?;
    let mut commute_ok = true;
    let mut roundtrip_ok = true;
    for (k, point) in points.iter().enumerate() {
        let matrices = instantiate_matrices(system, point);
        if !check_commuting(&matrices) {
            commute_ok = false;
            roundtrip_ok = false;
            break;
        }
        // structural sanity once per stratum: the border generators must
        // annihilate the class of 1
        if k == 0 && !border_generators_annihilate(system, point, &matrices) {
            roundtrip_ok = false;
            break;
        }
        match partition_from_matrices(&matrices, m, n) {
            Ok(recovered) if recovered == lambda => {}
            _ => {
                roundtrip_ok = false;
                break;
            }
        }
    }
    Ok(RoundTripReport {
        lambda,
        q,
        points_tested: points.len(),
        commute_ok,
        roundtrip_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;
    use crate::stratum::eliminate;

    fn part(m: usize, raw: &[(&[u32], u32)]) -> MdPartition {
        MdPartition::new(m, raw.iter().map(|(k, v)| (k.to_vec(), *v))).unwrap()
    }

    fn setup(lambda: &MdPartition) -> (StratumSystem, ResidualSystem) {
        let system = StratumSystem::new(lambda);
        let residual = eliminate(&system.commutator_relations());
        (system, residual)
    }

    #[test]
    fn single_box_has_exactly_one_point_and_zero_matrices() {
        let lambda = part(2, &[(&[0, 0], 1)]);
        let (system, residual) = setup(&lambda);
        let points = sample_points(&system, &residual, 2, 10, 1000, 0).unwrap();
        assert_eq!(points.len(), 1);
        let matrices = instantiate_matrices(&system, &points[0]);
        assert!(matrices.iter().all(|t| t.is_zero()));
        assert!(check_commuting(&matrices));
        let recovered = partition_from_matrices(&matrices, 2, 1).unwrap();
        assert_eq!(recovered, lambda);
    }

    #[test]
    fn ell_shape_has_32_points_over_f2() {
        // affine space A^5 over F_2
        let lambda = part(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[2, 0], 1), (&[0, 1], 1)]);
        let (system, residual) = setup(&lambda);
        let points = sample_points(&system, &residual, 2, usize::MAX, 1 << 20, 0).unwrap();
        assert_eq!(points.len(), 32);
        // the first enumerated point is all-zero: every product falls onto
        // the border, so multiplication by z acts as the zero matrix
        assert!(points[0].assignment.iter().all(|&x| x == 0));
        let matrices = instantiate_matrices(&system, &points[0]);
        assert!(matrices[0].is_zero());
        assert!(border_generators_annihilate(&system, &points[0], &matrices));
    }

    #[test]
    fn minimal_example_point_count_over_f2() {
        // residual {a*b = 0} with two free variables: 3 * 4 = 12 points
        let lambda = part(2, &[(&[0, 0], 2), (&[1, 0], 1), (&[0, 1], 1)]);
        let (system, residual) = setup(&lambda);
        let points = sample_points(&system, &residual, 2, usize::MAX, 1 << 20, 0).unwrap();
        assert_eq!(points.len(), 12);
    }

    #[test]
    fn structural_columns_are_basis_vectors() {
        let lambda = part(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[2, 0], 1), (&[0, 1], 1)]);
        let (system, residual) = setup(&lambda);
        let point = &sample_points(&system, &residual, 3, 1, 1000, 0).unwrap()[0];
        let matrices = instantiate_matrices(&system, point);
        for (r, sym) in system.matrices().iter().enumerate() {
            for l in 0..system.ideal().len() {
                if let SymCol::Basis(i) = sym.col(l) {
                    for k in 0..system.ideal().len() {
                        assert_eq!(matrices[r].get(k, l), u64::from(k == *i));
                    }
                }
            }
        }
    }

    #[test]
    fn mutated_point_breaks_commutation() {
        // setting a[1 0 1][0 1 0] = 1 violates the relation a[1 0 1][0 1 0] = 0
        let lambda = part(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[2, 0], 1), (&[0, 1], 1)]);
        let system = StratumSystem::new(&lambda);
        let idx = system
            .variables()
            .iter()
            .position(|v| v.name == "a[1 0 1][0 1 0]")
            .unwrap();
        let mut assignment = vec![0u64; system.variables().len()];
        assignment[idx] = 1;
        let matrices = instantiate_matrices(&system, &StratumPoint { q: 2, assignment });
        assert!(!check_commuting(&matrices));
        assert!(matches!(
            partition_from_matrices(&matrices, 2, 4),
            Err(Error::NotCommuting { .. })
        ));
    }

    #[test]
    fn staircase_round_trip_and_leaf_dims() {
        let lambda = part(
            1,
            &[(&[0], 3), (&[1], 2), (&[2], 1), (&[3], 1), (&[4], 1)],
        );
        let (system, residual) = setup(&lambda);
        let report = verify_stratum(&system, &residual, 3, 25, 1 << 20, 1).unwrap();
        assert!(report.passed());
        assert!(report.points_tested > 0);
    }

    #[test]
    fn round_trip_all_strata_small_weights() {
        for (m, n_max) in [(1usize, 4u32), (2, 3)] {
            for n in 1..=n_max {
                for lambda in enumerate_partitions(m, n) {
                    let (system, residual) = setup(&lambda);
                    for q in [2u64, 3] {
                        let report =
                            verify_stratum(&system, &residual, q, 20, 1 << 20, 0).unwrap();
                        assert!(
                            report.passed(),
                            "round trip failed for {} over F_{}",
                            lambda,
                            q
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rejection_sampling_on_large_assignment_spaces() {
        // a row of six boxes has free rank 10, so 5^10 assignments over F_5:
        // far past the exhaustive limit, forcing the rejection sampler
        let lambda = part(
            2,
            &[
                (&[0, 0], 1),
                (&[1, 0], 1),
                (&[2, 0], 1),
                (&[3, 0], 1),
                (&[4, 0], 1),
                (&[5, 0], 1),
            ],
        );
        let (system, residual) = setup(&lambda);
        assert_eq!(residual.free_rank(), 10);
        let points = sample_points(&system, &residual, 5, 25, 1 << 20, 42).unwrap();
        assert_eq!(points.len(), 25);
        let distinct: std::collections::HashSet<_> =
            points.iter().map(|p| p.assignment.clone()).collect();
        assert_eq!(distinct.len(), 25);
        // deterministic for a fixed seed
        let again = sample_points(&system, &residual, 5, 25, 1 << 20, 42).unwrap();
        assert_eq!(points, again);
        for point in &points {
            let matrices = instantiate_matrices(&system, point);
            assert!(check_commuting(&matrices));
            assert_eq!(partition_from_matrices(&matrices, 2, 6).unwrap(), lambda);
        }
    }

    #[test]
    fn generators_render_in_zxy_names() {
        let single = part(2, &[(&[0, 0], 1)]);
        let system = StratumSystem::new(&single);
        assert_eq!(ideal_generators_symbolic(&system), vec!["z", "y", "x"]);

        let ell = part(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[2, 0], 1), (&[0, 1], 1)]);
        let system = StratumSystem::new(&ell);
        let gens = ideal_generators_symbolic(&system);
        assert_eq!(gens.len(), 8);
        assert_eq!(
            gens[0],
            "z - a[1 0 0][0 0 1]*y - a[1 0 0][0 1 0]*x - a[1 0 0][0 2 0]*x^2"
        );
        assert!(gens.contains(&"z*x^2".to_string()));
        assert!(gens.contains(&"x^2*y".to_string()));

        // m=1, lambda=(2), zero point: the three bare border monomials
        let column = part(1, &[(&[0], 2)]);
        let system = StratumSystem::new(&column);
        let residual = eliminate(&system.commutator_relations());
        let point = &sample_points(&system, &residual, 2, 1, 100, 0).unwrap()[0];
        assert_eq!(
            ideal_generators(&system, point),
            vec!["z^2", "x", "z*x"]
        );
    }
}
