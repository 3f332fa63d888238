//! Graphical Stirling numbers `S(G, k)` of forests and cycles.
//!
//! A forest's chromatic polynomial `x^c (x-1)^(n-c)` depends only on its
//! vertex count `n` and component count `c`, hence so do its Stirling
//! numbers: with a star on `n-c+1` vertices plus `c-1` isolated vertices,
//!
//! ```text
//! S(F(n,c), k) = sum_{i=0}^{c-1} C(c-1, i) S(n-1-i, k-1)
//! ```
//!
//! For the cycle, splitting partitions of the path by whether its end
//! vertices share a class gives `S(C_n, k) = S(n-1, k-1) - S(C_{n-1}, k)`,
//! which unrolls to the alternating sum
//!
//! ```text
//! S(C_n, k) = sum_{i=0}^{n-2} (-1)^i S(n-1-i, k-1)
//! ```
//!
//! with `C_2` read as a single edge. The sum stops at `i = n-2`: an
//! `i = n-1` term would add `S(0, k-1)` and a spurious partition into one
//! class.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::asymptotics;
use crate::combinatorics::{binomial, binomial_row, factorial, BellSequence, StirlingRows, StirlingTriangle};
use crate::error::{Error, Result};
use crate::numeric::rational_to_f64;
use crate::polynomial::IntPolynomial;

/// A forest (known up to vertex and component counts) or a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    Forest { n: usize, c: usize },
    Cycle { n: usize },
}

impl GraphFamily {
    pub fn forest(n: usize, c: usize) -> Result<Self> {
        if c == 0 || c > n {
            return Err(Error::InvalidForest { n, c });
        }
        Ok(Self::Forest { n, c })
    }

    /// `C_n` for `n >= 2`; `C_2` is a single edge.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidCycle(n));
        }
        Ok(Self::Cycle { n })
    }

    /// Edgeless graph `E_n`.
    pub fn empty(n: usize) -> Result<Self> {
        Self::forest(n, n)
    }

    /// Path `P_n`.
    pub fn path(n: usize) -> Result<Self> {
        Self::forest(n, 1)
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Self::Forest { n, .. } | Self::Cycle { n } => n,
        }
    }

    /// Chromatic number.
    pub fn chi(&self) -> usize {
        match *self {
            Self::Forest { n, c } if n == c => n.min(1),
            Self::Forest { .. } => 2,
            Self::Cycle { n } if n % 2 == 0 => 2,
            Self::Cycle { .. } => 3,
        }
    }

    /// Components of a forest; 1 for a cycle.
    pub fn components(&self) -> usize {
        match *self {
            Self::Forest { c, .. } => c,
            Self::Cycle { .. } => 1,
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Forest { n, c } => write!(f, "forest(n={n}, c={c})"),
            Self::Cycle { n } => write!(f, "cycle(n={n})"),
        }
    }
}

/// The sequence `(S(G, k))_{k=0..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCountVector {
    pub graph: GraphFamily,
    pub counts: Vec<BigUint>,
}

impl PartitionCountVector {
    /// Total number of partitions into independent sets (the graph's Bell
    /// number).
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn get(&self, k: usize) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_default()
    }
}

/// Weight of Stirling row `m` in the sum for `S(G, .)`, shifted by one class.
fn row_weight(graph: &GraphFamily, m: usize) -> Option<BigInt> {
    match *graph {
        GraphFamily::Forest { n, c } => {
            // i = n-1-m ranges over 0..c
            if m + c < n || m >= n {
                return None;
            }
            Some(BigInt::from(binomial((c - 1) as i64, (n - 1 - m) as i64)))
        }
        GraphFamily::Cycle { n } => {
            // i = n-1-m ranges over 0..=n-2, i.e. m in 1..n
            if m == 0 || m >= n {
                return None;
            }
            let i = n - 1 - m;
            Some(if i.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() })
        }
    }
}

fn accumulate<R: AsRef<[BigUint]>>(graph: GraphFamily, rows: impl Iterator<Item = (usize, R)>) -> PartitionCountVector {
    let n = graph.vertex_count();
    let mut acc = vec![BigInt::zero(); n + 1];
    for (m, row) in rows {
        let Some(w) = row_weight(&graph, m) else {
            continue;
        };
        for (j, s) in row.as_ref().iter().enumerate() {
            if !s.is_zero() {
                acc[j + 1] += &w * BigInt::from(s.clone());
            }
        }
    }
    let counts = acc
        .into_iter()
        .map(|v| v.to_biguint().expect("graphical Stirling numbers are non-negative"))
        .collect();
    PartitionCountVector { graph, counts }
}

/// `(S(G, k))_k`, streaming Stirling rows without caching them.
pub fn stirling_vector(graph: GraphFamily) -> PartitionCountVector {
    let n = graph.vertex_count();
    accumulate(graph, StirlingRows::new().take(n).enumerate())
}

/// Same as [`stirling_vector`] but reads rows from a shared triangle cache.
pub fn stirling_vector_cached(graph: GraphFamily, triangle: &mut StirlingTriangle) -> PartitionCountVector {
    let n = graph.vertex_count();
    if n > 0 {
        triangle.extend_to(n - 1);
    }
    let rows = (0..n).map(|m| (m, triangle.cached_row(m).expect("extended above")));
    accumulate(graph, rows)
}

/// Stirling polynomial `sigma(G, x) = sum_k S(G, k) x^k`.
pub fn stirling_poly(graph: GraphFamily) -> IntPolynomial {
    IntPolynomial::from_unsigned(&stirling_vector(graph).counts)
}

/// `x (x + xD) (p / x)`.
fn shifted_operator(p: &IntPolynomial) -> IntPolynomial {
    p.divide_by_x_power(1)
        .expect("Stirling polynomials vanish at 0")
        .apply_x_plus_xd()
        .shift_up(1)
}

/// `sigma(G, x)` built by iterating the operator recurrences instead of the
/// closed sums: forests start from `sigma(E_c) = S_c(x)` and apply
/// `x (x + xD)(. / x)` once per added vertex; cycles start from
/// `sigma(C_2) = x^2` and add `(-1)^n x^2` at each step.
pub fn stirling_poly_via_operator(graph: GraphFamily) -> IntPolynomial {
    match graph {
        GraphFamily::Forest { n, c } => {
            let mut sigma = IntPolynomial::x();
            for _ in 1..c {
                sigma = sigma.apply_x_plus_xd();
            }
            for _ in c..n {
                sigma = shifted_operator(&sigma);
            }
            sigma
        }
        GraphFamily::Cycle { n } => {
            let mut sigma = IntPolynomial::monomial(2);
            for m in 3..=n {
                let correction = if m % 2 == 0 {
                    IntPolynomial::monomial(2)
                } else {
                    -&IntPolynomial::monomial(2)
                };
                sigma = &shifted_operator(&sigma) + &correction;
            }
            sigma
        }
    }
}

/// Chromatic polynomial: `x^c (x-1)^(n-c)` for forests and
/// `(x-1)^n + (-1)^n (x-1)` for cycles.
pub fn chromatic_poly(graph: GraphFamily) -> IntPolynomial {
    let x_minus_one = IntPolynomial::from_i64(&[-1, 1]);
    let power = |base: &IntPolynomial, e: usize| (0..e).fold(IntPolynomial::one(), |acc, _| &acc * base);
    match graph {
        GraphFamily::Forest { n, c } => power(&x_minus_one, n - c).shift_up(c),
        GraphFamily::Cycle { n } => {
            let tail = if n % 2 == 0 { x_minus_one.clone() } else { -&x_minus_one };
            &power(&x_minus_one, n) + &tail
        }
    }
}

/// `chi_G(x) = sum_k S(G, k) x_(k)`.
pub fn chromatic_from_sigma(graph: GraphFamily) -> IntPolynomial {
    let weights: Vec<BigInt> = stirling_vector(graph)
        .counts
        .into_iter()
        .map(BigInt::from)
        .collect();
    IntPolynomial::falling_factorial_combination(&weights)
}

/// `S(G, k)` by inclusion-exclusion over the chromatic polynomial:
/// `(1/k!) sum_i (-1)^i C(k, i) chi_G(k - i)`.
pub fn stirling_via_chromatic(graph: GraphFamily, k: usize) -> Result<BigUint> {
    if k > graph.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "k={k} exceeds the vertex count of {graph}"
        )));
    }
    let chi = chromatic_poly(graph);
    let binomials = binomial_row(k);
    let mut sum = BigInt::zero();
    for (i, c) in binomials.iter().enumerate() {
        let term = BigInt::from(c.clone()) * chi.eval_at_integer(&BigInt::from(k - i));
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(factorial(k)));
    if !r.is_zero() || q.is_negative() {
        return Err(Error::InexactFactorialDivision { k });
    }
    Ok(q.to_biguint().expect("checked non-negative"))
}

/// Checks `sigma(F(n+1, c+1)) = sigma(F(n+1, c)) + sigma(F(n, c))`.
pub fn pascal_identity_check(n: usize, c: usize) -> Result<bool> {
    let big = stirling_poly(GraphFamily::forest(n + 1, c + 1)?);
    let left = stirling_poly(GraphFamily::forest(n + 1, c)?);
    let right = stirling_poly(GraphFamily::forest(n, c)?);
    Ok(big == &left + &right)
}

/// Signed or binomially weighted Bell sum behind the graph's Bell number
/// and moments: `sum_i w_i B_{m-i}` with the same weights as the Stirling
/// sums (`C(c-1, i)` for forests, `(-1)^i` with `i <= n-2` for cycles).
pub fn bell_weighted_sum(graph: GraphFamily, m: usize, bells: &mut BellSequence) -> BigInt {
    bells.extend_to(m);
    let terms = match graph {
        GraphFamily::Forest { c, .. } => c,
        GraphFamily::Cycle { n } => n - 1,
    };
    let mut sum = BigInt::zero();
    for i in 0..terms {
        let b = BigInt::from(bells.at(m as i64 - i as i64));
        match graph {
            GraphFamily::Forest { c, .. } => sum += BigInt::from(binomial((c - 1) as i64, i as i64)) * b,
            GraphFamily::Cycle { .. } if i % 2 == 0 => sum += b,
            GraphFamily::Cycle { .. } => sum -= b,
        }
    }
    sum
}

/// Bell number of the graph: the total number of partitions into non-empty
/// independent sets.
pub fn graph_bell(graph: GraphFamily, bells: &mut BellSequence) -> BigUint {
    let n = graph.vertex_count();
    bell_weighted_sum(graph, n - 1, bells)
        .to_biguint()
        .expect("graph Bell numbers are non-negative")
}

fn pow_big(base: u32, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

fn sign_one(n: usize) -> BigInt {
    if n.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn exact_div(num: BigInt, den: u32) -> BigUint {
    let (q, r) = num.div_rem(&BigInt::from(den));
    debug_assert!(r.is_zero(), "closed form is not integral");
    q.to_biguint().expect("closed forms are non-negative for n >= 3")
}

/// `S(C_n, 3) = (2^n - (-1)^n - 3) / 6`.
pub fn cycle_closed_form_k3(n: usize) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::InvalidCycle(n));
    }
    Ok(exact_div(pow_big(2, n) - sign_one(n) - 3, 6))
}

/// `S(C_n, 4) = (3^n - 4 * 2^n + (-1)^n + 6) / 24`.
pub fn cycle_closed_form_k4(n: usize) -> Result<BigUint> {
    if n < 3 {
        return Err(Error::InvalidCycle(n));
    }
    Ok(exact_div(pow_big(3, n) - pow_big(2, n) * 4 + sign_one(n) + 6, 24))
}

/// Exact mean and variance of the number of classes in a uniformly chosen
/// partition, computed both from the count vector and from the Bell-number
/// closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub graph: GraphFamily,
    pub mean_exact: BigRational,
    pub variance_exact: BigRational,
    pub mean_formula: BigRational,
    pub variance_formula: BigRational,
    pub mean_float: f64,
    pub variance_float: f64,
    /// `n / W(n)`.
    pub mean_estimate: f64,
    /// `n / (W(n) (W(n) + 1))`.
    pub variance_estimate: f64,
}

impl MomentReport {
    pub fn formulas_agree(&self) -> bool {
        self.mean_exact == self.mean_formula && self.variance_exact == self.variance_formula
    }
}

fn ratio(num: BigInt, den: &BigInt) -> BigRational {
    BigRational::new(num, den.clone())
}

/// Mean and variance from an explicit count vector.
pub fn vector_moments(counts: &[BigUint]) -> Result<(BigRational, BigRational)> {
    let mut total = BigInt::zero();
    let mut first = BigInt::zero();
    let mut second = BigInt::zero();
    for (k, a) in counts.iter().enumerate() {
        let a = BigInt::from(a.clone());
        let k = BigInt::from(k);
        first += &k * &a;
        second += &k * &k * &a;
        total += a;
    }
    if total.is_zero() {
        return Err(Error::ZeroTotal);
    }
    let mean = ratio(first, &total);
    let variance = ratio(second, &total) - &mean * &mean;
    Ok((mean, variance))
}

pub fn moments(graph: GraphFamily, bells: &mut BellSequence) -> Result<MomentReport> {
    let vector = stirling_vector(graph);
    moments_from_vector(&vector, bells)
}

/// Like [`moments`], reusing an already computed count vector.
pub fn moments_from_vector(vector: &PartitionCountVector, bells: &mut BellSequence) -> Result<MomentReport> {
    let graph = vector.graph;
    let (mean_exact, variance_exact) = vector_moments(&vector.counts)?;

    let n = graph.vertex_count();
    let denominator = bell_weighted_sum(graph, n - 1, bells);
    if denominator.sign() != Sign::Plus {
        return Err(Error::ZeroTotal);
    }
    let mean_formula = ratio(bell_weighted_sum(graph, n, bells), &denominator);
    let variance_formula = ratio(bell_weighted_sum(graph, n + 1, bells), &denominator)
        - &mean_formula * &mean_formula
        - BigRational::one();

    let w = asymptotics::lambert_w(n as f64).expect("n >= 1");
    Ok(MomentReport {
        graph,
        mean_float: rational_to_f64(&mean_exact),
        variance_float: rational_to_f64(&variance_exact),
        mean_exact,
        variance_exact,
        mean_formula,
        variance_formula,
        mean_estimate: n as f64 / w,
        variance_estimate: n as f64 / (w * (w + 1.0)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forest(n: usize, c: usize) -> GraphFamily {
        GraphFamily::forest(n, c).unwrap()
    }

    fn cycle(n: usize) -> GraphFamily {
        GraphFamily::cycle(n).unwrap()
    }

    fn counts(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn family_validation() {
        assert!(GraphFamily::forest(3, 0).is_err());
        assert!(GraphFamily::forest(3, 4).is_err());
        assert!(GraphFamily::cycle(1).is_err());
        assert_eq!(GraphFamily::empty(4).unwrap(), forest(4, 4));
        assert_eq!(GraphFamily::path(4).unwrap(), forest(4, 1));
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(cycle(5).chi(), 3);
        assert_eq!(cycle(4).chi(), 2);
        assert_eq!(cycle(2).chi(), 2);
        assert_eq!(forest(4, 4).chi(), 1);
        assert_eq!(forest(5, 2).chi(), 2);
    }

    #[test]
    fn chromatic_poly_examples() {
        assert_eq!(chromatic_poly(forest(1, 1)), IntPolynomial::x());
        assert_eq!(chromatic_poly(forest(3, 1)), IntPolynomial::from_i64(&[0, 1, -2, 1]));
        assert_eq!(chromatic_poly(cycle(3)), IntPolynomial::from_i64(&[0, 2, -3, 1]));
        // C_2 is a single edge
        assert_eq!(chromatic_poly(cycle(2)), IntPolynomial::from_i64(&[0, -1, 1]));
    }

    #[test]
    fn stirling_vector_examples() {
        assert_eq!(stirling_vector(cycle(3)).counts, counts(&[0, 0, 0, 1]));
        assert_eq!(stirling_vector(forest(5, 1)).get(3), BigUint::from(7u8));
        assert_eq!(stirling_vector(cycle(4)).counts, counts(&[0, 0, 1, 2, 1]));
        assert_eq!(stirling_vector(forest(3, 2)).get(2), BigUint::from(2u8));
        assert_eq!(stirling_vector(cycle(2)).counts, counts(&[0, 0, 1]));
        assert_eq!(stirling_vector(forest(1, 1)).counts, counts(&[0, 1]));
    }

    #[test]
    fn cached_and_streamed_vectors_agree() {
        let mut triangle = StirlingTriangle::new();
        for n in 2..30 {
            assert_eq!(stirling_vector_cached(cycle(n), &mut triangle), stirling_vector(cycle(n)));
            for c in 1..=n {
                assert_eq!(stirling_vector_cached(forest(n, c), &mut triangle), stirling_vector(forest(n, c)));
            }
        }
    }

    #[test]
    fn stirling_poly_examples() {
        assert_eq!(stirling_poly(cycle(3)), IntPolynomial::monomial(3));
        assert_eq!(stirling_poly(cycle(2)), IntPolynomial::monomial(2));
        assert_eq!(stirling_poly(forest(3, 3)), IntPolynomial::from_i64(&[0, 1, 3, 1]));
        for c in 1..12 {
            let row = crate::combinatorics::stirling_row(c);
            assert_eq!(stirling_poly(forest(c, c)), IntPolynomial::from_unsigned(&row));
        }
    }

    #[test]
    fn operator_route_examples() {
        assert_eq!(stirling_poly_via_operator(cycle(3)), IntPolynomial::monomial(3));
        assert_eq!(stirling_poly_via_operator(cycle(4)), IntPolynomial::from_i64(&[0, 0, 1, 2, 1]));
        assert_eq!(stirling_poly_via_operator(forest(4, 2)), stirling_poly(forest(4, 2)));
    }

    #[test]
    fn operator_route_matches_sums() {
        for n in 1..=40 {
            for c in 1..=n {
                assert_eq!(stirling_poly_via_operator(forest(n, c)), stirling_poly(forest(n, c)), "F({n},{c})");
            }
        }
        for n in 2..=60 {
            assert_eq!(stirling_poly_via_operator(cycle(n)), stirling_poly(cycle(n)), "C_{n}");
        }
    }

    #[test]
    fn pascal_examples() {
        assert!(pascal_identity_check(2, 1).unwrap());
        assert!(pascal_identity_check(5, 3).unwrap());
        for c in 1..8 {
            assert!(pascal_identity_check(c, c).unwrap());
        }
        assert!(pascal_identity_check(2, 3).is_err());
    }

    #[test]
    fn inclusion_exclusion_examples() {
        assert_eq!(stirling_via_chromatic(cycle(3), 3).unwrap(), BigUint::from(1u8));
        assert_eq!(stirling_via_chromatic(forest(4, 1), 2).unwrap(), BigUint::from(1u8));
        assert_eq!(stirling_via_chromatic(forest(4, 1), 3).unwrap(), BigUint::from(3u8));
        for g in [forest(5, 2), cycle(6), forest(3, 3)] {
            assert_eq!(stirling_via_chromatic(g, 0).unwrap(), BigUint::zero());
        }
        assert!(stirling_via_chromatic(cycle(3), 4).is_err());
    }

    #[test]
    fn chromatic_from_sigma_examples() {
        assert_eq!(chromatic_from_sigma(forest(3, 1)), IntPolynomial::from_i64(&[0, 1, -2, 1]));
        // (x-1)^4 + (x-1)
        assert_eq!(chromatic_from_sigma(cycle(4)), IntPolynomial::from_i64(&[0, -3, 6, -4, 1]));
        assert_eq!(chromatic_from_sigma(forest(1, 1)), IntPolynomial::x());
    }

    #[test]
    fn graph_bell_examples() {
        let mut bells = BellSequence::new();
        assert_eq!(graph_bell(forest(3, 3), &mut bells), BigUint::from(5u8));
        assert_eq!(graph_bell(cycle(4), &mut bells), BigUint::from(4u8));
        assert_eq!(graph_bell(forest(3, 2), &mut bells), BigUint::from(3u8));
        assert_eq!(graph_bell(cycle(2), &mut bells), BigUint::from(1u8));
        for n in 2..40 {
            assert_eq!(graph_bell(cycle(n), &mut bells), stirling_vector(cycle(n)).total());
            for c in 1..=n {
                assert_eq!(graph_bell(forest(n, c), &mut bells), stirling_vector(forest(n, c)).total());
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(cycle_closed_form_k3(4).unwrap(), BigUint::from(2u8));
        assert_eq!(cycle_closed_form_k3(3).unwrap(), BigUint::from(1u8));
        assert_eq!(cycle_closed_form_k4(5).unwrap(), BigUint::from(5u8));
        assert!(cycle_closed_form_k3(2).is_err());
    }

    #[test]
    fn moment_examples() {
        let mut bells = BellSequence::new();
        let e3 = moments(forest(3, 3), &mut bells).unwrap();
        assert_eq!(e3.mean_exact, q(2, 1));
        assert_eq!(e3.variance_exact, q(2, 5));
        assert!(e3.formulas_agree());

        let c4 = moments(cycle(4), &mut bells).unwrap();
        assert_eq!(c4.mean_exact, q(3, 1));
        assert_eq!(c4.variance_exact, q(1, 2));
        assert!(c4.formulas_agree());

        // P_3: partitions {1|2|3} and {13|2}
        let p3 = moments(forest(3, 1), &mut bells).unwrap();
        assert_eq!(p3.mean_exact, q(5, 2));
        assert_eq!(p3.variance_exact, q(1, 4));
        assert!(p3.formulas_agree());
        assert!((p3.mean_float - 2.5).abs() < 1e-15);
    }

    #[test]
    fn positive_variance_from_three_vertices() {
        let mut bells = BellSequence::new();
        // C_3 only splits into three singletons
        assert!(moments(cycle(3), &mut bells).unwrap().variance_exact.is_zero());
        for n in 3..25 {
            if n > 3 {
                assert!(moments(cycle(n), &mut bells).unwrap().variance_exact.is_positive());
            }
            for c in 1..=n {
                assert!(moments(forest(n, c), &mut bells).unwrap().variance_exact.is_positive());
            }
        }
    }
}
