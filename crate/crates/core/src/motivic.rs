//! Exact arithmetic in `Z[L]` and truncated power series over it.
//!
//! L stands for the class of the affine line; a polynomial class evaluated at
//! a prime power q is the number of F_q-points of the corresponding variety.
//! Coefficients are arbitrary-precision integers since series expansion makes
//! them grow.
//!
//! The series side provides the Euler-product machinery: any series with
//! constant term 1 factors uniquely as
//!
//!   A(T) = prod_{i>=1} (1 - T^i)^{-a_i},   a_i in `Z[L]`,
//!
//! and exponentiation by a class p in `Z[L]` is defined through that
//! factorization, factor by factor:
//!
//!   (1 - T^i)^{-p} = prod_k (1 - L^k T^i)^{-c_k}   for p = sum_k c_k L^k,
//!
//! which encodes that the n-th symmetric power of A^k is A^{nk}. Negative c_k
//! use the positive binomial power (1 - L^k T^i)^{|c_k|}. There is no
//! binomial-series shortcut in the exponent p itself: point counting is a ring
//! homomorphism but not a morphism of power structures, so the L-grading of
//! the exponent must be kept (see `pow_euler_specialized`).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An element of `Z[L]`; `coeffs[k]` is the coefficient of L^k, with no trailing
/// zeros stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MotivicPoly {
    coeffs: Vec<BigInt>,
}

impl MotivicPoly {
    pub fn zero() -> Self {
        MotivicPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        MotivicPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// L^k.
    pub fn l_power(k: u32) -> Self {
        let mut coeffs = vec![BigInt::zero(); k as usize + 1];
        coeffs[k as usize] = BigInt::one();
        MotivicPoly { coeffs }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MotivicPoly::from_big_coeffs(vec![c.into()])
    }

    /// Convenience constructor from ascending i64 coefficients.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        MotivicPoly::from_big_coeffs(coeffs.into_iter().map(BigInt::from).collect())
    }

    pub fn from_big_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        MotivicPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree in L, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The point-count specialization L -> x.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_u64(&self, q: u64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    /// Renders like `2*L^3 - L^2` or `L^2 + L + 1`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if k > 0 {
                if show_coeff {
                    out.push('*');
                }
                if k == 1 {
                    out.push('L');
                } else {
                    out.push_str(&format!("L^{}", k));
                }
            }
        }
        out
    }
}

impl fmt::Display for MotivicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl AddAssign<&MotivicPoly> for MotivicPoly {
    fn add_assign(&mut self, rhs: &MotivicPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            self.coeffs[i] += c;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl Add for &MotivicPoly {
    type Output = MotivicPoly;
    fn add(self, rhs: &MotivicPoly) -> MotivicPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &MotivicPoly {
    type Output = MotivicPoly;
    fn neg(self) -> MotivicPoly {
        MotivicPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &MotivicPoly {
    type Output = MotivicPoly;
    fn sub(self, rhs: &MotivicPoly) -> MotivicPoly {
        self + &(-rhs)
    }
}

impl Mul for &MotivicPoly {
    type Output = MotivicPoly;
    fn mul(self, rhs: &MotivicPoly) -> MotivicPoly {
        if self.is_zero() || rhs.is_zero() {
            return MotivicPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        MotivicPoly::from_big_coeffs(coeffs)
    }
}

/// A BigInt as an exact JSON number (arbitrary precision).
pub fn bigint_to_json_number(value: &BigInt) -> serde_json::Number {
    serde_json::Number::from_string_unchecked(value.to_string())
}

/// Exact parse of a JSON number into a BigInt; None for non-integers.
pub fn bigint_from_json_number(value: &serde_json::Number) -> Option<BigInt> {
    value.to_string().parse::<BigInt>().ok()
}

fn serialize_bigint_seq<S: Serializer>(coeffs: &[BigInt], serializer: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = serializer.serialize_seq(Some(coeffs.len()))?;
    for c in coeffs {
        seq.serialize_element(&bigint_to_json_number(c))?;
    }
    seq.end()
}

fn bigint_from_number<E: serde::de::Error>(n: &serde_json::Number) -> Result<BigInt, E> {
    n.to_string()
        .parse::<BigInt>()
        .map_err(|_| E::custom(format!("expected an integer coefficient, got {}", n)))
}

impl Serialize for MotivicPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_bigint_seq(&self.coeffs, serializer)
    }
}

impl<'de> Deserialize<'de> for MotivicPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let numbers = Vec::<serde_json::Number>::deserialize(deserializer)?;
        let coeffs = numbers
            .iter()
            .map(bigint_from_number::<D::Error>)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MotivicPoly::from_big_coeffs(coeffs))
    }
}

/// A power series over `Z[L]` truncated at order N: coefficients of T^0..T^N.
/// Operations require equal truncation orders; nothing re-truncates silently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotivicSeries {
    order: usize,
    coeffs: Vec<MotivicPoly>,
}

impl MotivicSeries {
    pub fn new(order: usize, mut coeffs: Vec<MotivicPoly>) -> Self {
        assert!(
            coeffs.len() <= order + 1,
            "got {} coefficients for truncation order {}",
            coeffs.len(),
            order
        );
        coeffs.resize(order + 1, MotivicPoly::zero());
        MotivicSeries { order, coeffs }
    }

    pub fn one(order: usize) -> Self {
        MotivicSeries::new(order, vec![MotivicPoly::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &MotivicPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MotivicPoly] {
        &self.coeffs
    }

    /// Coefficientwise specialization L -> q; the result is a series over Z
    /// (degree-0 polynomials).
    pub fn specialize(&self, q: u64) -> MotivicSeries {
        MotivicSeries::new(
            self.order,
            self.coeffs
                .iter()
                .map(|c| MotivicPoly::from_big_coeffs(vec![c.eval_u64(q)]))
                .collect(),
        )
    }

    /// Cauchy product, truncated at the common order.
    pub fn mul(&self, rhs: &MotivicSeries) -> Result<MotivicSeries, Error> {
        if self.order != rhs.order {
            return Err(Error::TruncationMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        let mut coeffs = vec![MotivicPoly::zero(); self.order + 1];
        for i in 0..=self.order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=self.order - i {
                if rhs.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &(&self.coeffs[i] * &rhs.coeffs[j]);
            }
        }
        Ok(MotivicSeries::new(self.order, coeffs))
    }

    /// Multiplicative inverse; requires constant term 1.
    pub fn inverse(&self) -> Result<MotivicSeries, Error> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        let mut inv = vec![MotivicPoly::zero(); self.order + 1];
        inv[0] = MotivicPoly::one();
        for n in 1..=self.order {
            // coefficient of T^n in self * inv must vanish
            let mut acc = MotivicPoly::zero();
            for k in 0..n {
                acc += &(&self.coeffs[n - k] * &inv[k]);
            }
            inv[n] = -&acc;
        }
        Ok(MotivicSeries::new(self.order, inv))
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    #[serde(rename = "N")]
    order: usize,
    coeffs: Vec<MotivicPoly>,
}

impl Serialize for MotivicSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesWire {
            order: self.order,
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MotivicSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = SeriesWire::deserialize(deserializer)?;
        if wire.coeffs.len() > wire.order + 1 {
            return Err(D::Error::custom(format!(
                "{} coefficients exceed truncation order {}",
                wire.coeffs.len(),
                wire.order
            )));
        }
        Ok(MotivicSeries::new(wire.order, wire.coeffs))
    }
}

/// Exponents a_1..a_N of the unique factorization prod (1 - T^i)^{-a_i}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerFactors {
    order: usize,
    exponents: Vec<MotivicPoly>,
}

impl EulerFactors {
    pub fn order(&self) -> usize {
        self.order
    }

    /// a_i for 1 <= i <= N.
    pub fn exponent(&self, i: usize) -> &MotivicPoly {
        &self.exponents[i - 1]
    }

    pub fn exponents(&self) -> &[MotivicPoly] {
        &self.exponents
    }
}

/// Exact binomial coefficient C(top, j) for nonnegative `top`.
fn big_binomial(top: &BigInt, j: usize) -> BigInt {
    let mut acc = BigInt::one();
    for t in 1..=j {
        acc = acc * (top - BigInt::from(j - t)) / BigInt::from(t);
    }
    acc
}

/// Expansion of (1 - base * T^i)^(-c) to the given order, for integer c.
/// Positive c gives the binomial series sum_j C(c+j-1, j) base^j T^{ij};
/// negative c gives the finite product expansion of (1 - base*T^i)^{|c|}.
fn geometric_factor(base: &MotivicPoly, i: usize, c: &BigInt, order: usize) -> MotivicSeries {
    let mut coeffs = vec![MotivicPoly::zero(); order + 1];
    coeffs[0] = MotivicPoly::one();
    if c.is_zero() {
        return MotivicSeries::new(order, coeffs);
    }
    let mut base_pow = MotivicPoly::one();
    if c.is_positive() {
        for j in 1..=order / i {
            base_pow = &base_pow * base;
            let top = c + BigInt::from(j - 1);
            let binom = big_binomial(&top, j);
            coeffs[i * j] = &base_pow * &MotivicPoly::from_big_coeffs(vec![binom]);
        }
    } else {
        let mag = (-c).to_biguint().expect("negated negative is positive");
        let mag: BigInt = mag.into();
        let j_max = match usize::try_from(&mag) {
            Ok(v) => v.min(order / i),
            Err(_) => order / i,
        };
        for j in 1..=j_max {
            base_pow = &base_pow * base;
            let mut binom = big_binomial(&mag, j);
            if j % 2 == 1 {
                binom = -binom;
            }
            coeffs[i * j] = &base_pow * &MotivicPoly::from_big_coeffs(vec![binom]);
        }
    }
    MotivicSeries::new(order, coeffs)
}

/// Expansion of (1 - T^i)^(-p) for p in `Z[L]`, via the symmetric-power rule:
/// each monomial c_k L^k of p contributes (1 - L^k T^i)^(-c_k).
fn power_factor(i: usize, p: &MotivicPoly, order: usize) -> MotivicSeries {
    let mut out = MotivicSeries::one(order);
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let base = MotivicPoly::l_power(k as u32);
        out = out
            .mul(&geometric_factor(&base, i, c, order))
            .expect("orders match");
    }
    out
}

/// Same expansion with the factor bases specialized at L = q, so the whole
/// computation happens over Z. The per-monomial integer exponents c_k are
/// kept; collapsing p to the integer p(q) would compute something else.
fn power_factor_specialized(i: usize, p: &MotivicPoly, q: u64, order: usize) -> MotivicSeries {
    let mut out = MotivicSeries::one(order);
    let q = BigInt::from(q);
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let base = MotivicPoly::from_big_coeffs(vec![q.pow(k as u32)]);
        out = out
            .mul(&geometric_factor(&base, i, c, order))
            .expect("orders match");
    }
    out
}

/// Unique factorization A(T) = prod_{i=1}^{N} (1 - T^i)^{-a_i}: peel off one
/// factor per step; the running quotient starts 1 + a_i T^i + ... at step i.
pub fn euler_factorization(series: &MotivicSeries) -> Result<EulerFactors, Error> {
    if !series.coeff(0).is_one() {
        return Err(Error::NonUnitConstantTerm);
    }
    let order = series.order();
    let mut running = series.clone();
    let mut exponents = Vec::with_capacity(order);
    for i in 1..=order {
        let a_i = running.coeff(i).clone();
        if !a_i.is_zero() {
            // divide by (1 - T^i)^{-a_i}
            running = running.mul(&power_factor(i, &(-&a_i), order))?;
        }
        exponents.push(a_i);
    }
    Ok(EulerFactors { order, exponents })
}

/// Power-structure exponentiation through the Euler factorization:
/// (prod (1 - T^i)^{-a_i})^p = prod (1 - T^i)^{-a_i p}.
pub fn pow_euler(factors: &EulerFactors, exponent: &MotivicPoly, order: usize) -> MotivicSeries {
    assert!(order <= factors.order(), "not enough factors for the requested order");
    let mut out = MotivicSeries::one(order);
    for i in 1..=order {
        let p = factors.exponent(i) * exponent;
        if p.is_zero() {
            continue;
        }
        out = out.mul(&power_factor(i, &p, order)).expect("orders match");
    }
    out
}

/// The same product computed over Z with every factor base evaluated at
/// L = q. Point counting commutes with the expansion factor by factor, so
/// this must agree with `pow_euler(..).specialize(q)`.
pub fn pow_euler_specialized(
    factors: &EulerFactors,
    exponent: &MotivicPoly,
    q: u64,
    order: usize,
) -> MotivicSeries {
    assert!(order <= factors.order());
    let mut out = MotivicSeries::one(order);
    for i in 1..=order {
        let p = factors.exponent(i) * exponent;
        if p.is_zero() {
            continue;
        }
        out = out
            .mul(&power_factor_specialized(i, &p, q, order))
            .expect("orders match");
    }
    out
}

/// Expands the factorization back into a series (the round-trip direction).
pub fn expand_euler_factors(factors: &EulerFactors) -> MotivicSeries {
    pow_euler(factors, &MotivicPoly::one(), factors.order())
}

/// Classes of the Hilbert schemes of points of affine d-space from the
/// punctual ones: H_{A^d}(T) = (H_{A^d,0}(T))^{L^d}.
pub fn global_hilbert_series(d: u32, punctual: &MotivicSeries) -> Result<MotivicSeries, Error> {
    let factors = euler_factorization(punctual)?;
    Ok(pow_euler(&factors, &MotivicPoly::l_power(d), punctual.order()))
}
