//! m-dimensional partitions and their monomial attachments.
//!
//! An m-dimensional partition of n is a finitely supported array
//! `lambda: N^m -> N` with `sum lambda_r = n` that is monotone decreasing:
//! `r <= s` coordinatewise implies `lambda_r >= lambda_s`. For m = 1 these
//! are ordinary partitions, for m = 2 plane partitions.
//!
//! Each partition corresponds to a division-closed set of monomials in the
//! m+1 variables x_0,...,x_m (x_0 is the "height" direction):
//!
//!   O_lambda = { x_0^j x_1^{i_1}...x_m^{i_m} | lambda_{i_1..i_m} != 0,
//!                0 <= j <= lambda_{i_1..i_m} - 1 }
//!
//! together with its border, the monomials one multiplication step outside:
//!
//!   dO_lambda = (union_i x_i * O_lambda) \ O_lambda.
//!
//! The canonical monomial order used everywhere is lexicographic on the tail
//! exponents (e_1,...,e_m) with x_1 most significant, ties broken by e_0
//! ascending. The canonical order on partitions is lexicographic on the
//! flattened height sequence (heights read at index tuples in lex order,
//! absent entries read as 0).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::motivic::MotivicPoly;

/// A monotone, finitely supported array on `N^m` with positive entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MdPartition {
    dim: usize,
    entries: BTreeMap<Vec<u32>, u32>,
    weight: u32,
}

impl MdPartition {
    /// Validates a raw support map and normalizes it into a partition.
    /// Rejects non-positive entries, duplicate or wrong-arity index tuples,
    /// and monotonicity violations (naming the violating pair).
    pub fn new<I>(dim: usize, raw: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vec<u32>, u32)>,
    {
        assert!(dim >= 1, "partition dimension must be >= 1");
        let mut entries: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        for (index, value) in raw {
            if index.len() != dim {
                return Err(Error::IndexArity {
                    expected: dim,
                    got: index.len(),
                });
            }
            if value == 0 {
                return Err(Error::NonPositiveEntry { index });
            }
            if entries.insert(index.clone(), value).is_some() {
                return Err(Error::DuplicateIndex { index });
            }
        }
        // Monotonicity along unit steps implies monotonicity for <= by chaining.
        for (index, &value) in &entries {
            for axis in 0..dim {
                if index[axis] == 0 {
                    continue;
                }
                let mut below = index.clone();
                below[axis] -= 1;
                let below_value = entries.get(&below).copied().unwrap_or(0);
                if below_value < value {
                    return Err(Error::NonMonotone {
                        lower: below,
                        upper: index.clone(),
                        lower_value: below_value,
                        upper_value: value,
                    });
                }
            }
        }
        let weight = entries.values().map(|&v| v as u64).sum::<u64>();
        let weight = u32::try_from(weight).expect("partition weight overflow");
        Ok(MdPartition {
            dim,
            entries,
            weight,
        })
    }

    /// The empty partition of weight 0.
    pub fn empty(dim: usize) -> Self {
        assert!(dim >= 1);
        MdPartition {
            dim,
            entries: BTreeMap::new(),
            weight: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Height at an index tuple; absent entries are 0.
    pub fn value(&self, index: &[u32]) -> u32 {
        self.entries.get(index).copied().unwrap_or(0)
    }

    /// Height at the origin. For m = 1 the stratum dimension is n - lambda_0.
    pub fn origin_value(&self) -> u32 {
        self.value(&vec![0; self.dim])
    }

    /// Support entries in lex order of index tuples.
    pub fn support(&self) -> impl Iterator<Item = (&Vec<u32>, u32)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    /// Number of support tuples.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Compact canonical text form, usable as a cache key.
    pub fn canonical_string(&self) -> String {
        let mut s = format!("m={};", self.dim);
        for (index, value) in &self.entries {
            let idx: Vec<String> = index.iter().map(|c| c.to_string()).collect();
            s.push_str(&format!("({}):{};", idx.join(","), value));
        }
        s
    }
}

impl fmt::Display for MdPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

/// Lex comparison of the flattened height sequences (absent entries are 0).
/// Supports of valid partitions are downsets, and both maps iterate in tuple
/// lex order, so a single merge pass finds the first differing height.
impl Ord for MdPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.entries.iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((ka, va)), Some((kb, vb))) => match ka.cmp(kb) {
                    Ordering::Less => return Ordering::Greater, // other reads 0 here
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match va.cmp(vb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for MdPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionWire {
    m: usize,
    entries: Vec<(Vec<u32>, u32)>,
}

impl Serialize for MdPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PartitionWire {
            m: self.dim,
            entries: self.entries.iter().map(|(k, &v)| (k.clone(), v)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MdPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = PartitionWire::deserialize(deserializer)?;
        MdPartition::new(wire.m, wire.entries).map_err(D::Error::custom)
    }
}

/// Pointwise minimum of two monotone arrays (entries where both are positive).
fn min_entries(
    a: &BTreeMap<Vec<u32>, u32>,
    b: &BTreeMap<Vec<u32>, u32>,
) -> BTreeMap<Vec<u32>, u32> {
    let mut out = BTreeMap::new();
    for (k, &va) in a {
        if let Some(&vb) = b.get(k) {
            out.insert(k.clone(), va.min(vb));
        }
    }
    out
}

/// Slice of a d-dimensional array at first coordinate `i`, with that
/// coordinate dropped.
fn slice_entries(cap: &BTreeMap<Vec<u32>, u32>, i: u32) -> BTreeMap<Vec<u32>, u32> {
    cap.iter()
        .filter(|(k, _)| k[0] == i)
        .map(|(k, &v)| (k[1..].to_vec(), v))
        .collect()
}

/// All monotone arrays of dimension `d` with exact weight `w`, pointwise
/// dominated by `cap` when given. Recurses on slices along the first
/// coordinate: successive slices must decrease pointwise.
fn enumerate_dominated(
    d: usize,
    w: u32,
    cap: Option<&BTreeMap<Vec<u32>, u32>>,
) -> Vec<BTreeMap<Vec<u32>, u32>> {
    if w == 0 {
        return vec![BTreeMap::new()];
    }
    if d == 0 {
        // A 0-dimensional array is a single height at the empty tuple.
        let allowed = cap.is_none_or(|c| c.get(&vec![]).copied().unwrap_or(0) >= w);
        if allowed {
            return vec![BTreeMap::from([(vec![], w)])];
        }
        return vec![];
    }
    let mut out = Vec::new();
    let first_cap = cap.map(|c| slice_entries(c, 0));
    for first_weight in 1..=w {
        for first in enumerate_dominated(d - 1, first_weight, first_cap.as_ref()) {
            // The tail sees the shifted cap meet the slice just placed.
            let shifted: Option<BTreeMap<Vec<u32>, u32>> = cap.map(|c| {
                let mut s = BTreeMap::new();
                for (k, &v) in c {
                    if k[0] >= 1 {
                        let mut kk = k.clone();
                        kk[0] -= 1;
                        s.insert(kk, v);
                    }
                }
                s
            });
            let tail_cap = match &shifted {
                Some(s) => {
                    let mut lifted = BTreeMap::new();
                    for (k, &v) in &first {
                        let mut kk = vec![0u32];
                        kk.extend_from_slice(k);
                        lifted.insert(kk, v);
                    }
                    // extend `first` constantly along the first coordinate
                    let bound = w; // slices beyond weight w are impossible anyway
                    for i in 1..=bound {
                        for (k, &v) in &first {
                            let mut kk = vec![i];
                            kk.extend_from_slice(k);
                            lifted.insert(kk, v);
                        }
                    }
                    min_entries(&lifted, s)
                }
                None => {
                    let mut lifted = BTreeMap::new();
                    for i in 0..=w {
                        for (k, &v) in &first {
                            let mut kk = vec![i];
                            kk.extend_from_slice(k);
                            lifted.insert(kk, v);
                        }
                    }
                    lifted
                }
            };
            for tail in enumerate_dominated(d, w - first_weight, Some(&tail_cap)) {
                let mut entries = BTreeMap::new();
                for (k, &v) in &first {
                    let mut kk = vec![0u32];
                    kk.extend_from_slice(k);
                    entries.insert(kk, v);
                }
                for (k, &v) in &tail {
                    let mut kk = vec![k[0] + 1];
                    kk.extend_from_slice(&k[1..]);
                    entries.insert(kk, v);
                }
                out.push(entries);
            }
        }
    }
    out
}

/// Enumerates every m-dimensional partition of n exactly once, sorted in the
/// canonical order (lex on flattened height sequences). Two runs produce
/// identical sequences. `n = 0` yields the single empty partition.
pub fn enumerate_partitions(m: usize, n: u32) -> Vec<MdPartition> {
    assert!(m >= 1, "dimension must be >= 1");
    let mut out: Vec<MdPartition> = enumerate_dominated(m, n, None)
        .into_iter()
        .map(|entries| {
            let weight = entries.values().map(|&v| v as u64).sum::<u64>() as u32;
            debug_assert_eq!(weight, n);
            MdPartition {
                dim: m,
                entries,
                weight,
            }
        })
        .collect();
    out.sort();
    out
}

/// A monomial in the m+1 variables x_0,...,x_m, stored as its exponent tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(!exps.is_empty());
        Monomial { exps }
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: vec![0; num_vars],
        }
    }

    /// Exponent of x_i.
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Exponents of x_1,...,x_m (dropping the height variable x_0).
    pub fn tail(&self) -> &[u32] {
        &self.exps[1..]
    }

    /// The product x_i * self.
    pub fn times_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Monomial { exps }
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Renders with the variable names used throughout: z, x, y for up to
    /// three variables, x0, x1, ... beyond that.
    pub fn render(&self) -> String {
        let names = variable_names(self.exps.len());
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Names x_0 "z", x_1 "x", x_2 "y" when there are at most three variables.
pub fn variable_names(num_vars: usize) -> Vec<String> {
    if num_vars <= 3 {
        ["z", "x", "y"][..num_vars]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (0..num_vars).map(|i| format!("x{}", i)).collect()
    }
}

/// Canonical order: lex on the tail (x_1 most significant), then e_0.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.tail(), self.exp(0)).cmp(&(other.tail(), other.exp(0)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// The basis monomials t_1,...,t_n of O_lambda in canonical order, with a
/// reverse index for membership tests.
#[derive(Debug, Clone)]
pub struct OrderIdeal {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl OrderIdeal {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    /// Position of a monomial in the basis, if it lies in O_lambda.
    pub fn position(&self, mono: &Monomial) -> Option<usize> {
        self.index.get(mono).copied()
    }
}

/// The border monomials b_1,...,b_nu in canonical order.
#[derive(Debug, Clone)]
pub struct Border {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Border {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, j: usize) -> &Monomial {
        &self.monomials[j]
    }

    pub fn position(&self, mono: &Monomial) -> Option<usize> {
        self.index.get(mono).copied()
    }
}

fn index_monomials(monomials: Vec<Monomial>) -> (Vec<Monomial>, HashMap<Monomial, usize>) {
    let index = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    (monomials, index)
}

/// O_lambda in canonical order; always has exactly `weight` elements.
pub fn order_ideal(lambda: &MdPartition) -> OrderIdeal {
    let mut monomials = Vec::with_capacity(lambda.weight() as usize);
    for (tuple, height) in lambda.support() {
        for j in 0..height {
            let mut exps = Vec::with_capacity(lambda.dim() + 1);
            exps.push(j);
            exps.extend_from_slice(tuple);
            monomials.push(Monomial::new(exps));
        }
    }
    monomials.sort();
    let (monomials, index) = index_monomials(monomials);
    OrderIdeal { monomials, index }
}

/// The full border (union_i x_i*O_lambda) \ O_lambda, in canonical order.
/// Empty for the weight-0 partition.
pub fn border(lambda: &MdPartition) -> Border {
    let ideal = order_ideal(lambda);
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    for mono in ideal.monomials() {
        for i in 0..=lambda.dim() {
            let candidate = mono.times_var(i);
            if ideal.position(&candidate).is_none() {
                seen.insert(candidate);
            }
        }
    }
    let (monomials, index) = index_monomials(seen.into_iter().collect());
    Border { monomials, index }
}

/// Corner indices: tuples where lambda strictly drops in every decrementable
/// coordinate. Tuples with lambda = 0 count when the drop condition holds
/// (x_1^5 in an example with lambda = (3,2,1,1,1) is such a generator).
/// The empty partition has no corners.
pub fn corner_indices(lambda: &MdPartition) -> BTreeSet<Vec<u32>> {
    let m = lambda.dim();
    let n = lambda.weight();
    let mut corners = BTreeSet::new();
    if n == 0 {
        return corners;
    }
    // Corners need lambda(r - e_i) > 0 wherever r_i > 0, so coordinates stay <= n.
    let mut stack = vec![Vec::with_capacity(m)];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == m {
            let is_corner = (0..m).all(|axis| {
                if prefix[axis] == 0 {
                    return true;
                }
                let mut below = prefix.clone();
                below[axis] -= 1;
                lambda.value(&below) > lambda.value(&prefix)
            });
            if is_corner {
                corners.insert(prefix);
            }
            continue;
        }
        for c in (0..=n).rev() {
            let mut next = prefix.clone();
            next.push(c);
            stack.push(next);
        }
    }
    corners
}

/// Closed form for the punctual Hilbert scheme of the plane:
/// sum over partitions beta of n of L^(n - #parts(beta)).
/// Used as an oracle against the m = 1 stratification pipeline.
pub fn closed_form_punctual_a2(n: u32) -> MotivicPoly {
    let mut total = MotivicPoly::zero();
    for beta in enumerate_partitions(1, n) {
        let parts = beta.support_len() as u32;
        total += &MotivicPoly::l_power(n - parts);
    }
    total
}
