//! Stratum classes: linear elimination, finite-field point counts, and
//! exact interpolation of the class in `Z[L]`.
//!
//! The relation systems produced by the commutators reduce dramatically under
//! one deterministic rule: a variable v occurring in a relation P as a bare
//! +-v term and nowhere else in P is substituted away (v := -+rest). Such a
//! substitution is a graph projection, an isomorphism of varieties valid over
//! Z and hence over every prime field at once. Repeating to a fixpoint leaves
//! a residual system; if nothing survives, the stratum is an affine space and
//! its class is L^(number of free coordinates).
//!
//! Otherwise the class is recovered from exact point counts: over F_q the
//! stratum has S(q) * q^(unconstrained coordinates) points, where S counts
//! solutions over the variables the residual relations mention. S is the
//! counting function of a subvariety of A^k with k = #occurring variables,
//! so if it is a polynomial its degree is at most k and counts at k+1 primes
//! pin it down; further holdout primes validate the interpolation, and the
//! residual system splits into independent components whose counts multiply.
//! Failure of the integrality or validation checks is reported as evidence
//! against polynomiality, not as an error.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::CountingConfig;
use crate::error::Error;
use crate::motivic::MotivicPoly;
use crate::partitions::{enumerate_partitions, MdPartition};
use crate::relations::{RelPoly, RelationSystem, StratumSystem};

/// What elimination leaves behind.
///
/// `residual_vars` are the surviving variables that appeared in some relation
/// at some point; `pure_free` never appeared in any relation at all. Both are
/// free exactly when `residual_relations` is empty. `eliminated` records the
/// substitutions in order; an expression may reference variables eliminated
/// later, so back-substitution runs in reverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualSystem {
    pub residual_vars: Vec<u32>,
    pub residual_relations: Vec<RelPoly>,
    pub eliminated: Vec<(u32, RelPoly)>,
    pub pure_free: Vec<u32>,
    /// A nonzero constant relation was derived: no points over any field.
    pub empty: bool,
}

impl ResidualSystem {
    pub fn eliminated_count(&self) -> usize {
        self.eliminated.len()
    }

    pub fn total_vars(&self) -> usize {
        self.residual_vars.len() + self.eliminated.len() + self.pure_free.len()
    }

    /// Number of unconstrained coordinates once the residual relations (if
    /// any) are accounted separately.
    pub fn free_rank(&self) -> usize {
        self.residual_vars.len() + self.pure_free.len()
    }

    pub fn is_affine(&self) -> bool {
        !self.empty && self.residual_relations.is_empty()
    }

    /// Fills in the eliminated variables of a partial assignment (surviving
    /// variables already set), newest substitution first.
    pub fn back_substitute(&self, assignment: &mut [u64], p: u64) {
        for (v, expr) in self.eliminated.iter().rev() {
            assignment[*v as usize] = expr.eval_mod(assignment, p);
        }
    }
}

/// Repeats the unit-coefficient substitution rule to a fixpoint.
/// Deterministic: the lowest-id eliminable variable goes first, ties broken
/// by relation order.
pub fn eliminate(system: &RelationSystem) -> ResidualSystem {
    let mut relations: BTreeSet<RelPoly> = system.relations.iter().cloned().collect();
    let appeared: BTreeSet<u32> = relations.iter().flat_map(|r| r.variables()).collect();
    let mut eliminated: Vec<(u32, RelPoly)> = Vec::new();
    let mut empty = false;

    'outer: loop {
        for rel in &relations {
            if rel.nonzero_constant().is_some() {
                empty = true;
                break 'outer;
            }
        }
        // candidate: P = c*v + rest with c = +-1 and v not in rest
        let mut best: Option<(u32, RelPoly, i64)> = None;
        for rel in &relations {
            for (coeff, mono) in rel.terms() {
                if mono.len() != 1 || coeff.abs() != 1 {
                    continue;
                }
                let v = mono[0];
                let occurrences: usize = rel
                    .terms()
                    .iter()
                    .map(|(_, m)| m.iter().filter(|&&x| x == v).count())
                    .sum();
                if occurrences != 1 {
                    continue;
                }
                if best.as_ref().is_none_or(|(bv, _, _)| v < *bv) {
                    best = Some((v, rel.clone(), *coeff));
                }
            }
        }
        let Some((v, pivot, coeff)) = best else { break };
        relations.remove(&pivot);
        // v := -coeff * (pivot without the v term)
        let rest = RelPoly::from_terms(
            pivot
                .terms()
                .iter()
                .filter(|(_, m)| m.as_slice() != [v])
                .map(|(c, m)| (*c, m.clone()))
                .collect(),
        );
        let expr = rest.scale(-coeff);
        let substituted: BTreeSet<RelPoly> = relations
            .iter()
            .map(|rel| rel.substitute(v, &expr).canonicalized())
            .filter(|rel| !rel.is_zero())
            .collect();
        relations = substituted;
        eliminated.push((v, expr));
    }

    let eliminated_ids: BTreeSet<u32> = eliminated.iter().map(|(v, _)| *v).collect();
    let residual_vars: Vec<u32> = appeared.difference(&eliminated_ids).copied().collect();
    let pure_free: Vec<u32> = (0..system.variables.len() as u32)
        .filter(|v| !appeared.contains(v))
        .collect();
    let residual = ResidualSystem {
        residual_vars,
        residual_relations: relations.into_iter().collect(),
        eliminated,
        pure_free,
        empty,
    };
    debug_assert_eq!(residual.total_vars(), system.variables.len());
    residual
}

/// Variables that occur in some residual relation, ascending.
fn occurring_vars(residual: &ResidualSystem) -> Vec<u32> {
    residual
        .residual_relations
        .iter()
        .flat_map(|r| r.variables())
        .collect::<BTreeSet<u32>>()
        .into_iter()
        .collect()
}

/// Connected components of the variable graph (variables joined when they
/// share a relation), each with its relations. Components constrain disjoint
/// coordinates, so solution counts multiply.
fn components(residual: &ResidualSystem) -> Vec<(Vec<u32>, Vec<&RelPoly>)> {
    let occurring = occurring_vars(residual);
    let index: BTreeMap<u32, usize> = occurring
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut parent: Vec<usize> = (0..occurring.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for rel in &residual.residual_relations {
        let vars: Vec<usize> = rel.variables().iter().map(|v| index[v]).collect();
        for w in vars.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut by_root: BTreeMap<usize, (Vec<u32>, Vec<&RelPoly>)> = BTreeMap::new();
    for (i, &v) in occurring.iter().enumerate() {
        let root = find(&mut parent, i);
        by_root.entry(root).or_default().0.push(v);
    }
    for rel in &residual.residual_relations {
        let first = *rel.variables().iter().next().expect("nonconstant residual");
        let root = find(&mut parent, index[&first]);
        by_root.get_mut(&root).expect("component exists").1.push(rel);
    }
    by_root.into_values().collect()
}

/// Variables to enumerate so that, once they are fixed, every relation is
/// linear in the rest: each monomial may keep at most one unfixed slot
/// (counting multiplicity, so v^2 forces v in). The cover size is the
/// enumeration exponent, so a minimum cover is found exactly by iterative
/// deepening; the variable sets involved are tiny. Deterministic: monomials
/// scanned in sorted order, branch variables ascending.
fn nonlinear_cover(relations: &[&RelPoly]) -> Vec<u32> {
    let monomials: BTreeSet<Vec<u32>> = relations
        .iter()
        .flat_map(|rel| rel.terms().iter().map(|(_, m)| m.clone()))
        .filter(|m| m.len() >= 2)
        .collect();
    if monomials.is_empty() {
        return Vec::new();
    }
    let monomials: Vec<Vec<u32>> = monomials.into_iter().collect();
    let all_vars: BTreeSet<u32> = monomials.iter().flatten().copied().collect();

    fn unfixed_slots(mono: &[u32], fixed: &[u32]) -> usize {
        mono.iter().filter(|v| !fixed.contains(v)).count()
    }

    fn search(monomials: &[Vec<u32>], budget: usize, fixed: &mut Vec<u32>) -> Option<Vec<u32>> {
        let Some(open) = monomials
            .iter()
            .find(|m| unfixed_slots(m, fixed) >= 2)
        else {
            let mut cover = fixed.clone();
            cover.sort_unstable();
            return Some(cover);
        };
        if budget == 0 {
            return None;
        }
        let mut candidates: Vec<u32> = open
            .iter()
            .copied()
            .filter(|v| !fixed.contains(v))
            .collect();
        candidates.dedup();
        for v in candidates {
            fixed.push(v);
            if let Some(cover) = search(monomials, budget - 1, fixed) {
                fixed.pop();
                return Some(cover);
            }
            fixed.pop();
        }
        None
    }

    for size in 1..=all_vars.len() {
        if let Some(cover) = search(&monomials, size, &mut Vec::new()) {
            return cover;
        }
    }
    unreachable!("fixing every variable always linearizes")
}

/// Solutions of a linear system over F_q given as augmented rows
/// [a_1,...,a_u | c] meaning sum a_i x_i + c = 0: None if inconsistent,
/// otherwise q^(u - rank).
fn count_linear_solutions(mut rows: Vec<Vec<u64>>, unknowns: usize, q: u64) -> Option<u32> {
    let mut rank = 0usize;
    for col in 0..unknowns {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = {
            // Fermat inverse
            let mut base = rows[rank][col] % q;
            let mut exp = q - 2;
            let mut acc = 1u64;
            while exp > 0 {
                if exp & 1 == 1 {
                    acc = acc * base % q;
                }
                base = base * base % q;
                exp >>= 1;
            }
            acc
        };
        for x in rows[rank].iter_mut() {
            *x = *x * inv % q;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in col..=unknowns {
                    let sub = factor * rows[rank][c] % q;
                    rows[r][c] = (rows[r][c] + q - sub) % q;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    for row in &rows[rank..] {
        if row[unknowns] != 0 {
            return None;
        }
    }
    Some((unknowns - rank) as u32)
}

/// Exact number of assignments of one component's variables satisfying its
/// relations over F_q: enumerate the nonlinear cover with early pruning on
/// the relations it fully determines, then count the affine solution space
/// of the remaining linear system by rank.
fn count_component(vars: &[u32], relations: &[&RelPoly], q: u64) -> BigInt {
    let cover = nonlinear_cover(relations);
    let cover_set: BTreeSet<u32> = cover.iter().copied().collect();
    let free: Vec<u32> = vars.iter().copied().filter(|v| !cover_set.contains(v)).collect();
    let width = vars.iter().max().map_or(0, |&v| v as usize + 1);
    let free_position: BTreeMap<u32, usize> =
        free.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let cover_position: BTreeMap<u32, usize> =
        cover.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    // relations entirely inside the cover prune the enumeration as soon as
    // their last cover variable is assigned; the rest feed the linear system
    let mut prune_at: Vec<Vec<&RelPoly>> = vec![Vec::new(); cover.len().max(1)];
    let mut linear_rels: Vec<&RelPoly> = Vec::new();
    for rel in relations {
        let positions: Vec<Option<usize>> = rel
            .variables()
            .iter()
            .map(|v| cover_position.get(v).copied())
            .collect();
        if positions.iter().all(|p| p.is_some()) && !cover.is_empty() {
            let last = positions.into_iter().map(Option::unwrap).max().unwrap();
            prune_at[last].push(rel);
        } else {
            linear_rels.push(rel);
        }
    }

    // terms split once into (normalized coefficient, fixed factors, target
    // column), so the leaf only multiplies and accumulates
    struct CompiledTerm {
        coeff: u64,
        fixed: Vec<u32>,
        column: usize, // free position, or free.len() for the constant
    }
    let compiled: Vec<Vec<CompiledTerm>> = linear_rels
        .iter()
        .map(|rel| {
            rel.terms()
                .iter()
                .map(|(coeff, mono)| {
                    let mut fixed = Vec::with_capacity(mono.len());
                    let mut column = free.len();
                    for &v in mono {
                        match free_position.get(&v) {
                            Some(&pos) => column = pos,
                            None => fixed.push(v),
                        }
                    }
                    CompiledTerm {
                        coeff: coeff.rem_euclid(q as i64) as u64,
                        fixed,
                        column,
                    }
                })
                .collect()
        })
        .collect();

    // count solutions of the residual linear system for one cover assignment
    let linear_count = |assignment: &[u64]| -> BigInt {
        let mut rows = Vec::with_capacity(compiled.len());
        for terms in &compiled {
            let mut row = vec![0u64; free.len() + 1];
            for term in terms {
                let mut value = term.coeff;
                for &v in &term.fixed {
                    value = value * assignment[v as usize] % q;
                }
                row[term.column] = (row[term.column] + value) % q;
            }
            rows.push(row);
        }
        match count_linear_solutions(rows, free.len(), q) {
            Some(dim) => BigInt::from(q).pow(dim),
            None => BigInt::zero(),
        }
    };

    fn enumerate_cover(
        cover: &[u32],
        prune_at: &[Vec<&RelPoly>],
        assignment: &mut [u64],
        level: usize,
        q: u64,
        leaf: &impl Fn(&[u64]) -> BigInt,
        total: &mut BigInt,
    ) {
        if level == cover.len() {
            *total += leaf(assignment);
            return;
        }
        for value in 0..q {
            assignment[cover[level] as usize] = value;
            if prune_at[level]
                .iter()
                .all(|rel| rel.eval_mod(assignment, q) == 0)
            {
                enumerate_cover(cover, prune_at, assignment, level + 1, q, leaf, total);
            }
        }
    }

    let enumeration = (q as u128).saturating_pow(cover.len() as u32);
    if cover.len() >= 3 && enumeration > 1 << 12 {
        // split the first two cover variables across threads
        (0..q * q)
            .into_par_iter()
            .map(|pair| {
                let mut assignment = vec![0u64; width];
                assignment[cover[0] as usize] = pair / q;
                assignment[cover[1] as usize] = pair % q;
                let ok = prune_at[0]
                    .iter()
                    .all(|rel| rel.eval_mod(&assignment, q) == 0)
                    && prune_at[1]
                        .iter()
                        .all(|rel| rel.eval_mod(&assignment, q) == 0);
                let mut sub = BigInt::zero();
                if ok {
                    enumerate_cover(
                        cover.as_slice(),
                        &prune_at,
                        &mut assignment,
                        2,
                        q,
                        &linear_count,
                        &mut sub,
                    );
                }
                sub
            })
            .sum()
    } else {
        let mut assignment = vec![0u64; width];
        let mut total = BigInt::zero();
        enumerate_cover(
            &cover,
            &prune_at,
            &mut assignment,
            0,
            q,
            &linear_count,
            &mut total,
        );
        total
    }
}

/// Assignments `count_solutions` would enumerate over F_q: the sum over
/// components of q to the size of the nonlinear cover.
pub fn required_enumeration(residual: &ResidualSystem, q: u64) -> u128 {
    let mut required: u128 = 0;
    for (_, relations) in &components(residual) {
        let cover = nonlinear_cover(relations);
        required = required.saturating_add((q as u128).saturating_pow(cover.len() as u32));
    }
    required
}

/// Number of F_q solutions of the residual relations over the occurring
/// variables only (no free factors): the product over independent components.
pub fn count_solutions(residual: &ResidualSystem, q: u64, budget: u64) -> Result<BigInt, Error> {
    if residual.empty {
        return Ok(BigInt::zero());
    }
    let required = required_enumeration(residual, q);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded {
            required,
            budget: budget as u128,
        });
    }
    let mut total = BigInt::one();
    for (vars, relations) in &components(residual) {
        total *= count_component(vars, relations, q);
    }
    Ok(total)
}

/// Exact number of F_q points of the residual variety, times q to the number
/// of free coordinates: `count_solutions` for the constrained variables and a
/// factor q per variable no relation mentions.
pub fn count_points(residual: &ResidualSystem, q: u64, budget: u64) -> Result<BigInt, Error> {
    let mut count = count_solutions(residual, q, budget)?;
    let silent = residual.free_rank() - occurring_vars(residual).len();
    let q_big = BigInt::from(q);
    for _ in 0..silent {
        count *= &q_big;
    }
    Ok(count)
}

/// Exact Lagrange interpolation through (x_i, y_i); Some only when every
/// coefficient is an integer.
fn interpolate_integer_poly(points: &[(u64, BigInt)]) -> Option<MotivicPoly> {
    let k = points.len();
    let mut acc = vec![BigRational::zero(); k];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // numer = prod_{j != i} (x - x_j), coefficients ascending
        let mut numer = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj_rat = BigRational::from(BigInt::from(*xj));
            numer.push(BigRational::zero());
            for t in (0..numer.len()).rev() {
                let lower = if t > 0 {
                    numer[t - 1].clone()
                } else {
                    BigRational::zero()
                };
                numer[t] = lower - &xj_rat * &numer[t];
            }
            denom *= BigInt::from(*xi) - BigInt::from(*xj);
        }
        let scale = BigRational::from(yi.clone()) / BigRational::from(denom);
        for (t, c) in numer.iter().enumerate() {
            acc[t] = &acc[t] + &(c * &scale);
        }
    }
    let mut coeffs = Vec::with_capacity(k);
    for c in acc {
        if !c.is_integer() {
            return None;
        }
        coeffs.push(c.to_integer());
    }
    Some(MotivicPoly::from_big_coeffs(coeffs))
}

/// The class of a stratum, or the evidence against it being a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassOutcome {
    Polynomial(MotivicPoly),
    NotPolynomial(NotPolynomialEvidence),
}

/// Counts that failed integral interpolation or holdout validation. This is
/// conjecture-falsification evidence, not an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotPolynomialEvidence {
    pub reason: String,
    pub counts: Vec<(u64, String)>,
}

/// Everything computed for one stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumResult {
    pub lambda: MdPartition,
    pub residual: ResidualSystem,
    /// Exact counts per prime (empty for affine strata: no counting needed).
    pub counts: BTreeMap<u64, BigInt>,
    pub outcome: ClassOutcome,
}

impl StratumResult {
    pub fn is_affine(&self) -> bool {
        self.residual.is_affine()
    }

    pub fn class(&self) -> Option<&MotivicPoly> {
        match &self.outcome {
            ClassOutcome::Polynomial(p) => Some(p),
            ClassOutcome::NotPolynomial(_) => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct StratumResultWire {
    lambda: MdPartition,
    affine: bool,
    free_rank: usize,
    residual: ResidualSystem,
    counts: Vec<(u64, serde_json::Number)>,
    class: Option<MotivicPoly>,
    not_polynomial: Option<NotPolynomialEvidence>,
}

impl Serialize for StratumResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (class, not_polynomial) = match &self.outcome {
            ClassOutcome::Polynomial(p) => (Some(p.clone()), None),
            ClassOutcome::NotPolynomial(e) => (None, Some(e.clone())),
        };
        StratumResultWire {
            lambda: self.lambda.clone(),
            affine: self.is_affine(),
            free_rank: self.residual.free_rank(),
            residual: self.residual.clone(),
            counts: self
                .counts
                .iter()
                .map(|(q, c)| (*q, crate::motivic::bigint_to_json_number(c)))
                .collect(),
            class,
            not_polynomial,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StratumResult {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = StratumResultWire::deserialize(deserializer)?;
        let mut counts = BTreeMap::new();
        for (q, n) in &wire.counts {
            let value = crate::motivic::bigint_from_json_number(n)
                .ok_or_else(|| D::Error::custom(format!("non-integer count {}", n)))?;
            counts.insert(*q, value);
        }
        let outcome = match (wire.class, wire.not_polynomial) {
            (Some(p), None) => ClassOutcome::Polynomial(p),
            (None, Some(e)) => ClassOutcome::NotPolynomial(e),
            _ => {
                return Err(D::Error::custom(
                    "expected exactly one of class / not_polynomial",
                ))
            }
        };
        Ok(StratumResult {
            lambda: wire.lambda,
            residual: wire.residual,
            counts,
            outcome,
        })
    }
}

/// Computes the class of one stratum. Affine strata (empty residual) need no
/// counting: the class is L^free_rank. Otherwise counts at D+1 primes pin a
/// candidate polynomial of degree <= D = free_rank + (residual variables are
/// included in free_rank already), and `holdout_count` further primes must
/// agree exactly.
pub fn stratum_class(lambda: &MdPartition, cfg: &CountingConfig) -> Result<StratumResult, Error> {
    let system = StratumSystem::new(lambda).commutator_relations();
    stratum_class_of_system(lambda, &system, cfg)
}

/// Same, for a prebuilt relation system (lets callers reuse the symbolic work).
pub fn stratum_class_of_system(
    lambda: &MdPartition,
    system: &RelationSystem,
    cfg: &CountingConfig,
) -> Result<StratumResult, Error> {
    let residual = eliminate(system);
    if residual.empty {
        return Ok(StratumResult {
            lambda: lambda.clone(),
            residual,
            counts: BTreeMap::new(),
            outcome: ClassOutcome::Polynomial(MotivicPoly::zero()),
        });
    }
    if residual.residual_relations.is_empty() {
        let class = MotivicPoly::l_power(residual.free_rank() as u32);
        return Ok(StratumResult {
            lambda: lambda.clone(),
            residual,
            counts: BTreeMap::new(),
            outcome: ClassOutcome::Polynomial(class),
        });
    }

    // The full count factors as S(q) * q^silent with S the solution count
    // over the variables relations actually mention, a subvariety of
    // A^|occurring|. Interpolating S instead of the full count needs only
    // |occurring| + 1 primes instead of free_rank + 1, which is what makes
    // weights beyond the small tables reachable.
    let occurring = occurring_vars(&residual).len();
    let silent = (residual.free_rank() - occurring) as u32;
    let primes = cfg.primes_for(occurring + 1 + cfg.holdout_count);

    let mut solution_counts = Vec::with_capacity(primes.len());
    let mut counts = BTreeMap::new();
    for &q in &primes {
        let solutions = count_solutions(&residual, q, cfg.budget)?;
        let full = &solutions * BigInt::from(q).pow(silent);
        solution_counts.push((q, solutions));
        counts.insert(q, full);
    }

    let sample = &solution_counts[..occurring + 1];
    let holdouts = &primes[occurring + 1..];

    let outcome = match interpolate_integer_poly(sample) {
        Some(candidate) => {
            let candidate = &candidate * &MotivicPoly::l_power(silent);
            let holdouts_match = holdouts
                .iter()
                .all(|&q| candidate.eval_u64(q) == counts[&q]);
            if holdouts_match {
                ClassOutcome::Polynomial(candidate)
            } else {
                ClassOutcome::NotPolynomial(evidence(
                    "interpolated polynomial fails holdout validation",
                    &counts,
                ))
            }
        }
        None => ClassOutcome::NotPolynomial(evidence(
            "interpolation has non-integer coefficients",
            &counts,
        )),
    };
    Ok(StratumResult {
        lambda: lambda.clone(),
        residual,
        counts,
        outcome,
    })
}

fn evidence(reason: &str, counts: &BTreeMap<u64, BigInt>) -> NotPolynomialEvidence {
    NotPolynomialEvidence {
        reason: reason.to_string(),
        counts: counts.iter().map(|(q, c)| (*q, c.to_string())).collect(),
    }
}

/// Per-stratum breakdown and (when every stratum is polynomial) the sum.
#[derive(Debug, Clone)]
pub struct PunctualResult {
    pub per_stratum: Vec<StratumResult>,
    pub total: Option<MotivicPoly>,
}

/// Sum of all stratum classes of weight n in dimension m+1. Strata are
/// independent and processed in parallel; results are merged in canonical
/// partition order.
pub fn punctual_class(m: usize, n: u32, cfg: &CountingConfig) -> Result<PunctualResult, Error> {
    let lambdas = enumerate_partitions(m, n);
    let results: Result<Vec<StratumResult>, Error> = lambdas
        .par_iter()
        .map(|lambda| stratum_class(lambda, cfg))
        .collect();
    let per_stratum = results?;
    Ok(assemble_punctual(per_stratum))
}

/// Sums the polynomial outcomes; None total if any stratum is flagged.
pub fn assemble_punctual(per_stratum: Vec<StratumResult>) -> PunctualResult {
    let mut total = MotivicPoly::zero();
    let mut all_polynomial = true;
    for result in &per_stratum {
        match &result.outcome {
            ClassOutcome::Polynomial(p) => total += p,
            ClassOutcome::NotPolynomial(_) => all_polynomial = false,
        }
    }
    PunctualResult {
        per_stratum,
        total: all_polynomial.then_some(total),
    }
}
