//! Symbolic multiplication matrices and the relation system of a stratum.
//!
//! For a partition lambda with basis O_lambda = {t_1,...,t_n} and border
//! {b_1,...,b_nu}, the ideals of type lambda are generated by border prebases
//!
//!   F_j = b_j - sum_i alpha_i^j t_i,
//!
//! where the coefficient alpha_i^j is allowed to be nonzero only when the
//! tail exponents of t_i are lexicographically greater (x_1 most significant)
//! than the tail of b_j. That restricted support is exactly what pins the
//! partition type; each admissible pair (j, i) is one affine coordinate of
//! the stratum.
//!
//! The r-th formal multiplication matrix T_r records multiplication by x_r
//! on span(O_lambda): structural unit columns where x_r t_l stays in the
//! basis, alpha-columns where it falls onto the border. The stratum is cut
//! out by the entries of T_r T_s - T_s T_r for all pairs r < s
//! (`commutator_relations`, the authoritative system). The explicit equation
//! families (1)-(3) written in terms of the step map rho are transcribed
//! independently in `hardrel_relations` and kept only as a cross-check.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::partitions::{border, order_ideal, Border, MdPartition, Monomial, OrderIdeal};

/// One affine coordinate of a stratum: the coefficient of basis monomial
/// `target_index` in the border prebasis element of `border_index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffVar {
    pub border_index: usize,
    pub target_index: usize,
    /// Rendered as `a[r0 r1 ...][t s1 ...]`: border exponents, then target
    /// exponents (height first), matching the superscript/subscript naming
    /// of the coefficients a^M_{t,s}.
    pub name: String,
}

fn coeff_var_name(border_mono: &Monomial, target_mono: &Monomial) -> String {
    let sup: Vec<String> = border_mono.exps().iter().map(|e| e.to_string()).collect();
    let sub: Vec<String> = target_mono.exps().iter().map(|e| e.to_string()).collect();
    format!("a[{}][{}]", sup.join(" "), sub.join(" "))
}

/// Admissibility: the target tail must be lex-greater than the border tail,
/// first coordinate most significant.
fn admissible(border_mono: &Monomial, target_mono: &Monomial) -> bool {
    target_mono.tail() > border_mono.tail()
}

/// A sparse polynomial with integer coefficients in the coordinate variables.
/// Monomials are sorted multisets of variable ids; terms are sorted by
/// monomial and the leading coefficient is normalized positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelPoly {
    terms: Vec<(i64, Vec<u32>)>,
}

impl RelPoly {
    pub fn zero() -> Self {
        RelPoly { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<(i64, Vec<u32>)>) -> Self {
        let mut p = RelPoly { terms };
        p.combine();
        p
    }

    pub fn terms(&self) -> &[(i64, Vec<u32>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) when the polynomial is the nonzero constant c.
    pub fn nonzero_constant(&self) -> Option<i64> {
        match self.terms.as_slice() {
            [(c, mono)] if mono.is_empty() => Some(*c),
            _ => None,
        }
    }

    pub fn add_term(&mut self, coeff: i64, mut vars: Vec<u32>) {
        vars.sort_unstable();
        self.terms.push((coeff, vars));
    }

    /// Sorts monomials, combines duplicates, drops zeros. Keeps the sign:
    /// arithmetic (sub/mul/substitute) must not flip intermediate values.
    pub fn combine(&mut self) {
        for (_, mono) in &mut self.terms {
            mono.sort_unstable();
        }
        self.terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(i64, Vec<u32>)> = Vec::with_capacity(self.terms.len());
        for (coeff, mono) in self.terms.drain(..) {
            match merged.last_mut() {
                Some((c, m)) if *m == mono => *c += coeff,
                _ => merged.push((coeff, mono)),
            }
        }
        merged.retain(|(c, _)| *c != 0);
        self.terms = merged;
    }

    /// Relation normal form: combined terms with the lex-first monomial's
    /// coefficient normalized positive (for deduplication and stable output).
    pub fn canonicalize(&mut self) {
        self.combine();
        if self.terms.first().is_some_and(|(c, _)| *c < 0) {
            for (c, _) in &mut self.terms {
                *c = -*c;
            }
        }
    }

    pub fn canonicalized(mut self) -> RelPoly {
        self.canonicalize();
        self
    }

    pub fn max_degree(&self) -> usize {
        self.terms.iter().map(|(_, m)| m.len()).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.terms
            .iter()
            .flat_map(|(_, m)| m.iter().copied())
            .collect()
    }

    /// The difference self - rhs, normalized.
    pub fn sub(&self, rhs: &RelPoly) -> RelPoly {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().map(|(c, m)| (-c, m.clone())));
        RelPoly::from_terms(terms)
    }

    pub fn mul(&self, rhs: &RelPoly) -> RelPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ca, ma) in &self.terms {
            for (cb, mb) in &rhs.terms {
                let mut mono = ma.clone();
                mono.extend_from_slice(mb);
                terms.push((ca * cb, mono));
            }
        }
        RelPoly::from_terms(terms)
    }

    pub fn scale(&self, k: i64) -> RelPoly {
        RelPoly::from_terms(self.terms.iter().map(|(c, m)| (c * k, m.clone())).collect())
    }

    /// Replaces every occurrence of variable `v` (to any power) by `expr`.
    pub fn substitute(&self, v: u32, expr: &RelPoly) -> RelPoly {
        let mut terms = Vec::new();
        for (coeff, mono) in &self.terms {
            let k = mono.iter().filter(|&&x| x == v).count();
            let rest: Vec<u32> = mono.iter().copied().filter(|&x| x != v).collect();
            if k == 0 {
                terms.push((*coeff, rest));
                continue;
            }
            let mut piece = RelPoly::from_terms(vec![(*coeff, rest)]);
            for _ in 0..k {
                piece = piece.mul(expr);
            }
            terms.extend(piece.terms);
        }
        RelPoly::from_terms(terms)
    }

    /// Value modulo p under a full assignment of variable ids to F_p values.
    pub fn eval_mod(&self, assignment: &[u64], p: u64) -> u64 {
        let mut acc: u64 = 0;
        for (coeff, mono) in &self.terms {
            let mut term = coeff.rem_euclid(p as i64) as u64;
            for &v in mono {
                term = term * assignment[v as usize] % p;
            }
            acc = (acc + term) % p;
        }
        acc
    }

    /// Renders with variable display names, e.g. `a[..][..]*a[..][..] - a[..][..]`.
    pub fn render(&self, vars: &[CoeffVar]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (coeff, mono) in &self.terms {
            let mag = coeff.abs();
            if out.is_empty() {
                if *coeff < 0 {
                    out.push('-');
                }
            } else if *coeff < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut parts: Vec<String> = Vec::new();
            if mag != 1 || mono.is_empty() {
                parts.push(mag.to_string());
            }
            for &v in mono {
                parts.push(vars[v as usize].name.clone());
            }
            out.push_str(&parts.join("*"));
        }
        out
    }
}

/// The declared variables and the normalized, deduplicated relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationSystem {
    pub variables: Vec<CoeffVar>,
    pub relations: Vec<RelPoly>,
}

impl RelationSystem {
    /// All F_p solutions by exhaustive enumeration (small systems only).
    pub fn solutions_mod(&self, p: u64) -> BTreeSet<Vec<u64>> {
        let num = self.variables.len();
        let mut out = BTreeSet::new();
        let mut assignment = vec![0u64; num];
        loop {
            if self
                .relations
                .iter()
                .all(|rel| rel.eval_mod(&assignment, p) == 0)
            {
                out.insert(assignment.clone());
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == num {
                    return out;
                }
                assignment[pos] += 1;
                if assignment[pos] < p {
                    break;
                }
                assignment[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// Matrix entry alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymEntry {
    Zero,
    One,
    Var(u32),
}

/// One column of a formal multiplication matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymCol {
    /// x_r t_l = t_i: the standard basis column e_i.
    Basis(usize),
    /// x_r t_l = b_j: the admissible coefficients of b_j, as (row, var id).
    Border(Vec<(usize, u32)>),
}

/// The n-by-n matrix of multiplication by one variable on span(O_lambda).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    n: usize,
    cols: Vec<SymCol>,
}

impl SymbolicMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn col(&self, l: usize) -> &SymCol {
        &self.cols[l]
    }

    pub fn entry(&self, k: usize, l: usize) -> SymEntry {
        match &self.cols[l] {
            SymCol::Basis(i) => {
                if k == *i {
                    SymEntry::One
                } else {
                    SymEntry::Zero
                }
            }
            SymCol::Border(entries) => entries
                .iter()
                .find(|(row, _)| *row == k)
                .map(|(_, v)| SymEntry::Var(*v))
                .unwrap_or(SymEntry::Zero),
        }
    }
}

/// Where multiplication by x_r sends a basis monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Basis(usize),
    Border(usize),
}

/// Everything derived from one partition that the relation builders share:
/// basis, border, admissible variables, and the step maps rho_r.
#[derive(Debug, Clone)]
pub struct StratumSystem {
    lambda: MdPartition,
    ideal: OrderIdeal,
    border: Border,
    variables: Vec<CoeffVar>,
    var_of_pair: HashMap<(usize, usize), u32>,
    /// steps[r][l] = destination of x_r * t_l.
    steps: Vec<Vec<Step>>,
}

impl StratumSystem {
    pub fn new(lambda: &MdPartition) -> Self {
        let ideal = order_ideal(lambda);
        let bd = border(lambda);
        let mut variables = Vec::new();
        let mut var_of_pair = HashMap::new();
        for (j, border_mono) in bd.monomials().iter().enumerate() {
            for (i, target_mono) in ideal.monomials().iter().enumerate() {
                if admissible(border_mono, target_mono) {
                    let id = variables.len() as u32;
                    variables.push(CoeffVar {
                        border_index: j,
                        target_index: i,
                        name: coeff_var_name(border_mono, target_mono),
                    });
                    var_of_pair.insert((j, i), id);
                }
            }
        }
        let num_vars = lambda.dim() + 1;
        let mut steps = Vec::with_capacity(num_vars);
        for r in 0..num_vars {
            let mut row = Vec::with_capacity(ideal.len());
            for t in ideal.monomials() {
                let product = t.times_var(r);
                let step = match ideal.position(&product) {
                    Some(i) => Step::Basis(i),
                    None => Step::Border(
                        bd.position(&product)
                            .expect("x_r * t leaves O_lambda only into the border"),
                    ),
                };
                row.push(step);
            }
            steps.push(row);
        }
        StratumSystem {
            lambda: lambda.clone(),
            ideal,
            border: bd,
            variables,
            var_of_pair,
            steps,
        }
    }

    pub fn lambda(&self) -> &MdPartition {
        &self.lambda
    }

    pub fn ideal(&self) -> &OrderIdeal {
        &self.ideal
    }

    pub fn border(&self) -> &Border {
        &self.border
    }

    pub fn variables(&self) -> &[CoeffVar] {
        &self.variables
    }

    /// Variable id of the admissible pair (border j, target i), if any.
    pub fn var_id(&self, border_index: usize, target_index: usize) -> Option<u32> {
        self.var_of_pair.get(&(border_index, target_index)).copied()
    }

    pub fn step(&self, r: usize, l: usize) -> Step {
        self.steps[r][l]
    }

    /// The formal multiplication matrices T_0,...,T_m.
    pub fn matrices(&self) -> Vec<SymbolicMatrix> {
        let n = self.ideal.len();
        (0..=self.lambda.dim())
            .map(|r| {
                let cols = (0..n)
                    .map(|l| match self.steps[r][l] {
                        Step::Basis(i) => SymCol::Basis(i),
                        Step::Border(j) => {
                            let entries = (0..n)
                                .filter_map(|k| self.var_id(j, k).map(|v| (k, v)))
                                .collect();
                            SymCol::Border(entries)
                        }
                    })
                    .collect();
                SymbolicMatrix { n, cols }
            })
            .collect()
    }

    /// Column `l` of T_r with polynomial entries, indexed by row.
    fn column_polys(&self, r: usize, l: usize) -> Vec<(usize, RelPoly)> {
        match self.steps[r][l] {
            Step::Basis(i) => vec![(i, RelPoly::from_terms(vec![(1, vec![])]))],
            Step::Border(j) => (0..self.ideal.len())
                .filter_map(|k| {
                    self.var_id(j, k)
                        .map(|v| (k, RelPoly::from_terms(vec![(1, vec![v])])))
                })
                .collect(),
        }
    }

    /// Column `l` of the product T_r T_s, as row-indexed polynomials.
    fn product_column(&self, r: usize, s: usize, l: usize) -> Vec<RelPoly> {
        let n = self.ideal.len();
        let mut rows = vec![RelPoly::zero(); n];
        match self.steps[s][l] {
            Step::Basis(d) => {
                for (row, poly) in self.column_polys(r, d) {
                    rows[row] = poly;
                }
            }
            Step::Border(j) => {
                for d in 0..n {
                    let Some(v) = self.var_id(j, d) else { continue };
                    match self.steps[r][d] {
                        Step::Basis(p) => rows[p].add_term(1, vec![v]),
                        Step::Border(j2) => {
                            for p in 0..n {
                                if let Some(v2) = self.var_id(j2, p) {
                                    rows[p].add_term(1, vec![v, v2]);
                                }
                            }
                        }
                    }
                }
                for poly in &mut rows {
                    poly.combine();
                }
            }
        }
        rows
    }

    /// Entries of T_r T_s - T_s T_r for all 0 <= r < s <= m: the defining
    /// equations of the stratum. Zero entries dropped, the rest normalized,
    /// deduplicated and sorted.
    pub fn commutator_relations(&self) -> RelationSystem {
        let n = self.ideal.len();
        let m = self.lambda.dim();
        let mut relations = BTreeSet::new();
        for r in 0..m {
            for s in (r + 1)..=m {
                for l in 0..n {
                    let rs = self.product_column(r, s, l);
                    let sr = self.product_column(s, r, l);
                    for (a, b) in rs.iter().zip(sr.iter()) {
                        let diff = a.sub(b);
                        if !diff.is_zero() {
                            relations.insert(diff.canonicalized());
                        }
                    }
                }
            }
        }
        RelationSystem {
            variables: self.variables.clone(),
            relations: relations.into_iter().collect(),
        }
    }

    /// alpha^j_i as a polynomial: the variable when (j, i) is admissible,
    /// zero otherwise.
    fn alpha(&self, border_index: usize, target_index: usize) -> RelPoly {
        match self.var_id(border_index, target_index) {
            Some(v) => RelPoly::from_terms(vec![(1, vec![v])]),
            None => RelPoly::zero(),
        }
    }

    /// One side of the explicit commuting criterion:
    /// sum over d with x_r t_d in O of delta_{p, rho_r(d)} alpha^k_d
    /// plus sum over d with x_r t_d in the border of alpha^{rho_r(d)}_p alpha^k_d.
    fn hardrel_side(&self, r: usize, k: usize, p: usize) -> RelPoly {
        let n = self.ideal.len();
        let mut acc = RelPoly::zero();
        for d in 0..n {
            match self.steps[r][d] {
                Step::Basis(j) => {
                    if j == p {
                        for (c, m) in self.alpha(k, d).terms() {
                            acc.add_term(*c, m.clone());
                        }
                    }
                }
                Step::Border(kd) => {
                    let product = self.alpha(kd, p).mul(&self.alpha(k, d));
                    for (c, m) in product.terms() {
                        acc.add_term(*c, m.clone());
                    }
                }
            }
        }
        acc.combine();
        acc
    }

    /// The explicit equation families (1), (2), (3) of the commuting
    /// criterion, written through the step map rho with inadmissible
    /// coefficients fixed to zero. Cross-check only; `commutator_relations`
    /// is authoritative.
    pub fn hardrel_relations(&self) -> RelationSystem {
        let n = self.ideal.len();
        let m = self.lambda.dim();
        let mut relations = BTreeSet::new();
        for r in 0..m {
            for s in (r + 1)..=m {
                for i in 0..n {
                    match (self.steps[r][i], self.steps[s][i]) {
                        // (1): x_r t_i in O, x_s t_i = b_k, x_r b_k = b_l
                        (Step::Basis(_), Step::Border(k)) => {
                            let l = self
                                .border
                                .position(&self.border.get(k).times_var(r))
                                .expect("x_r b_k stays in the border here");
                            for p in 0..n {
                                let eq = self.hardrel_side(r, k, p).sub(&self.alpha(l, p));
                                if !eq.is_zero() {
                                    relations.insert(eq.canonicalized());
                                }
                            }
                        }
                        // (2): x_s t_i in O, x_r t_i = b_k, x_s b_k = b_l
                        (Step::Border(k), Step::Basis(_)) => {
                            let l = self
                                .border
                                .position(&self.border.get(k).times_var(s))
                                .expect("x_s b_k stays in the border here");
                            for p in 0..n {
                                let eq = self.hardrel_side(s, k, p).sub(&self.alpha(l, p));
                                if !eq.is_zero() {
                                    relations.insert(eq.canonicalized());
                                }
                            }
                        }
                        // (3): x_r t_i = b_j, x_s t_i = b_k
                        (Step::Border(j), Step::Border(k)) => {
                            for p in 0..n {
                                let eq =
                                    self.hardrel_side(r, k, p).sub(&self.hardrel_side(s, j, p));
                                if !eq.is_zero() {
                                    relations.insert(eq.canonicalized());
                                }
                            }
                        }
                        (Step::Basis(_), Step::Basis(_)) => {}
                    }
                }
            }
        }
        RelationSystem {
            variables: self.variables.clone(),
            relations: relations.into_iter().collect(),
        }
    }
}

/// The admissible coefficient variables of a stratum, in deterministic order
/// (border canonical order, then basis canonical order).
pub fn coefficient_variables(lambda: &MdPartition) -> Vec<CoeffVar> {
    StratumSystem::new(lambda).variables().to_vec()
}

/// The formal multiplication matrices T_0,...,T_m of a stratum.
pub fn formal_multiplication_matrices(lambda: &MdPartition) -> Vec<SymbolicMatrix> {
    StratumSystem::new(lambda).matrices()
}

/// The commutation relation system defining the stratum.
pub fn commutator_relations(lambda: &MdPartition) -> RelationSystem {
    StratumSystem::new(lambda).commutator_relations()
}

/// The transcribed equation families (1)-(3); cross-check for the commutators.
pub fn hardrel_relations(lambda: &MdPartition) -> RelationSystem {
    StratumSystem::new(lambda).hardrel_relations()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;

    fn part(m: usize, raw: &[(&[u32], u32)]) -> MdPartition {
        MdPartition::new(m, raw.iter().map(|(k, v)| (k.to_vec(), *v))).unwrap()
    }

    fn names(vars: &[CoeffVar]) -> Vec<&str> {
        vars.iter().map(|v| v.name.as_str()).collect()
    }

    fn id(sys: &StratumSystem, name: &str) -> u32 {
        sys.variables()
            .iter()
            .position(|v| v.name == name)
            .unwrap_or_else(|| panic!("no variable named {}", name)) as u32
    }

    #[test]
    fn single_box_has_no_variables_and_no_relations() {
        let single = part(2, &[(&[0, 0], 1)]);
        assert!(coefficient_variables(&single).is_empty());
        let mats = formal_multiplication_matrices(&single);
        assert_eq!(mats.len(), 3);
        for t in &mats {
            assert_eq!(t.size(), 1);
            assert_eq!(t.entry(0, 0), SymEntry::Zero);
        }
        assert!(commutator_relations(&single).relations.is_empty());
        assert!(hardrel_relations(&single).relations.is_empty());
    }

    #[test]
    fn m1_height_two_column_matrices() {
        // lambda = (2): basis {1, z}; T_0 is the nilpotent shift, T_1 = 0.
        let lambda = part(1, &[(&[0], 2)]);
        assert!(coefficient_variables(&lambda).is_empty());
        let mats = formal_multiplication_matrices(&lambda);
        assert_eq!(mats[0].entry(1, 0), SymEntry::One);
        assert_eq!(mats[0].entry(0, 0), SymEntry::Zero);
        assert_eq!(mats[0].entry(0, 1), SymEntry::Zero);
        assert_eq!(mats[0].entry(1, 1), SymEntry::Zero);
        for k in 0..2 {
            for l in 0..2 {
                assert_eq!(mats[1].entry(k, l), SymEntry::Zero);
            }
        }
    }

    #[test]
    fn staircase_variables_match_expected_ideal() {
        // m=1, lambda=(3,2,1,1,1): exactly 11 admissible coefficients; the
        // border element z*x^4 admits none (no tail is lex-greater than 4).
        let lambda = part(
            1,
            &[(&[0], 3), (&[1], 2), (&[2], 1), (&[3], 1), (&[4], 1)],
        );
        let vars = coefficient_variables(&lambda);
        assert_eq!(
            names(&vars),
            vec![
                "a[3 0][0 1]",
                "a[3 0][1 1]",
                "a[3 0][0 2]",
                "a[3 0][0 3]",
                "a[3 0][0 4]",
                "a[2 1][0 2]",
                "a[2 1][0 3]",
                "a[2 1][0 4]",
                "a[1 2][0 3]",
                "a[1 2][0 4]",
                "a[1 3][0 4]",
            ]
        );
    }

    #[test]
    fn ell_shape_variables_and_matrix_entries() {
        // lambda_{0,0} = lambda_{1,0} = lambda_{2,0} = lambda_{0,1} = 1
        let lambda = part(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[2, 0], 1), (&[0, 1], 1)]);
        let sys = StratumSystem::new(&lambda);
        assert_eq!(
            names(sys.variables()),
            vec![
                "a[1 0 0][0 0 1]",
                "a[1 0 0][0 1 0]",
                "a[1 0 0][0 2 0]",
                "a[1 0 1][0 1 0]",
                "a[1 0 1][0 2 0]",
                "a[0 0 2][0 1 0]",
                "a[0 0 2][0 2 0]",
                "a[1 1 0][0 2 0]",
                "a[0 1 1][0 2 0]",
            ]
        );
        // T_2 (multiplication by y) sends t_2 = y onto the border element y^2,
        // whose coefficient at row t_3 = x is a[0 0 2][0 1 0].
        let mats = sys.matrices();
        assert_eq!(
            mats[2].entry(2, 1),
            SymEntry::Var(id(&sys, "a[0 0 2][0 1 0]"))
        );
    }

    #[test]
    fn ell_shape_commutators_match_hand_derivation() {
        let lambda = part(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[2, 0], 1), (&[0, 1], 1)]);
        let sys = StratumSystem::new(&lambda);
        let a001 = id(&sys, "a[1 0 0][0 0 1]");
        let a010 = id(&sys, "a[1 0 0][0 1 0]");
        let a020 = id(&sys, "a[1 0 0][0 2 0]");
        let b010 = id(&sys, "a[1 0 1][0 1 0]");
        let b020 = id(&sys, "a[1 0 1][0 2 0]");
        let c010 = id(&sys, "a[0 0 2][0 1 0]");
        let c020 = id(&sys, "a[0 0 2][0 2 0]");
        let d020 = id(&sys, "a[1 1 0][0 2 0]");
        let e020 = id(&sys, "a[0 1 1][0 2 0]");
        let _ = a020;

        let expect: BTreeSet<RelPoly> = [
            // a[1 0 1][0 1 0] = 0
            RelPoly::from_terms(vec![(1, vec![b010])]),
            // a[1 0 0][0 1 0] + a[1 0 0][0 0 1]*a[0 1 1][0 2 0] = a[1 1 0][0 2 0]
            RelPoly::from_terms(vec![(1, vec![a010]), (1, vec![a001, e020]), (-1, vec![d020])]),
            // a[1 0 1][0 1 0]*a[0 1 1][0 2 0] = a[1 1 0][0 2 0]*a[0 0 2][0 1 0]
            RelPoly::from_terms(vec![(1, vec![b010, e020]), (-1, vec![d020, c010])]),
            // a[1 0 0][0 0 1]*a[0 0 2][0 2 0] + a[1 0 0][0 1 0]*a[0 1 1][0 2 0] = a[1 0 1][0 2 0]
            RelPoly::from_terms(vec![
                (1, vec![a001, c020]),
                (1, vec![a010, e020]),
                (-1, vec![b020]),
            ]),
            // a[1 0 0][0 0 1]*a[0 0 2][0 1 0] = a[1 0 1][0 1 0]
            RelPoly::from_terms(vec![(1, vec![a001, c010]), (-1, vec![b010])]),
            // a[0 0 2][0 1 0] = 0
            RelPoly::from_terms(vec![(1, vec![c010])]),
        ]
        .into_iter()
        .collect();

        let got: BTreeSet<RelPoly> = sys.commutator_relations().relations.into_iter().collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn relations_are_at_most_quadratic_with_unit_structure() {
        for n in 1..=4u32 {
            for lambda in enumerate_partitions(2, n) {
                let sys = StratumSystem::new(&lambda);
                for rel in &sys.commutator_relations().relations {
                    assert!(rel.max_degree() <= 2, "degree > 2 for {}", lambda);
                }
                // each basis column has exactly one structural 1
                for t in sys.matrices() {
                    for l in 0..t.size() {
                        let ones = (0..t.size())
                            .filter(|&k| t.entry(k, l) == SymEntry::One)
                            .count();
                        match t.col(l) {
                            SymCol::Basis(_) => assert_eq!(ones, 1),
                            SymCol::Border(_) => assert_eq!(ones, 0),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hardrel_and_commutators_have_equal_solutions_mod_2() {
        for n in 1..=3u32 {
            for lambda in enumerate_partitions(2, n) {
                let sys = StratumSystem::new(&lambda);
                let com = sys.commutator_relations();
                let hard = sys.hardrel_relations();
                assert_eq!(
                    com.solutions_mod(2),
                    hard.solutions_mod(2),
                    "solution sets differ for {}",
                    lambda
                );
            }
        }
    }

    #[test]
    fn relation_system_json_shape() {
        let lambda = part(2, &[(&[0, 0], 2), (&[1, 0], 1), (&[0, 1], 1)]);
        let sys = StratumSystem::new(&lambda);
        let value = serde_json::to_value(sys.commutator_relations()).unwrap();
        let vars = value["variables"].as_array().unwrap();
        assert_eq!(vars.len(), 4);
        assert!(vars[0]["name"].as_str().unwrap().starts_with("a["));
        let rels = value["relations"].as_array().unwrap();
        assert_eq!(rels.len(), 1);
        // [[coeff, [varid, ...]], ...]
        assert_eq!(rels[0][0][0].as_i64().unwrap(), 1);
        assert_eq!(rels[0][0][1].as_array().unwrap().len(), 2);
    }

    #[test]
    fn substitution_and_eval() {
        // p = v0*v1 - v2; substitute v2 := v3 + v4
        let p = RelPoly::from_terms(vec![(1, vec![0, 1]), (-1, vec![2])]);
        let expr = RelPoly::from_terms(vec![(1, vec![3]), (1, vec![4])]);
        let q = p.substitute(2, &expr);
        assert_eq!(
            q,
            RelPoly::from_terms(vec![(1, vec![0, 1]), (-1, vec![3]), (-1, vec![4])])
        );
        assert_eq!(q.eval_mod(&[1, 1, 0, 1, 0], 2), 0);
        assert_eq!(q.eval_mod(&[1, 1, 0, 1, 1], 2), 1);
    }
}
