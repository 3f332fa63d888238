//! Exact real-root analysis of integer polynomials.
//!
//! Everything here runs on integer coefficients: Sturm chains are primitive
//! pseudo-remainder sequences, and bisection points are dyadic rationals
//! whose signs are read off with [`IntPolynomial::sign_at`]. Roots at zero
//! are always split off by inspecting coefficients before any Sturm chain
//! is built.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::combinatorics::binomial_row;
use crate::error::{Error, Result};
use crate::graph_stirling::{stirling_poly, GraphFamily};
use crate::numeric::ratio_to_f64;
use crate::polynomial::{IntPolynomial, RationalPoint};

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPolynomial) -> Result<IntPolynomial> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    Ok(p
        .primitive_part()
        .exact_div(&g)
        .expect("gcd divides its argument")
        .primitive_part())
}

/// Signed remainder sequence of a squarefree polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<IntPolynomial>,
}

fn sign_variations(signs: impl Iterator<Item = Sign>) -> usize {
    let mut last = Sign::NoSign;
    let mut changes = 0;
    for s in signs.filter(|s| *s != Sign::NoSign) {
        if last != Sign::NoSign && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// `p, p', -prem(p, p'), ...` with sign-corrected pseudo-remainders divided
/// by their positive content. For a non-squarefree `p` the last element is
/// `gcd(p, p')` up to a positive constant.
fn signed_remainder_chain(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut polys = vec![p.clone()];
    let d = p.derivative().remove_positive_content();
    if d.is_zero() {
        return polys;
    }
    polys.push(d);
    loop {
        let len = polys.len();
        let (a, b) = (&polys[len - 2], &polys[len - 1]);
        if b.is_constant() {
            break;
        }
        let (r, exponent) = a.pseudo_remainder(b);
        let multiplier_negative = b.leading_coeff().is_some_and(Signed::is_negative) && exponent % 2 == 1;
        let next = if multiplier_negative { r } else { -&r };
        if next.is_zero() {
            break;
        }
        polys.push(next.remove_positive_content());
    }
    polys
}

impl SturmChain {
    /// Builds the chain `s, s', -rem(s, s'), ...` over the squarefree part `s`
    /// of `p`. Each pseudo-remainder is corrected for the sign of the
    /// multiplier `lc^e` and divided by its positive content, so the signs
    /// match the classical chain at every point.
    pub fn new(p: &IntPolynomial) -> Result<Self> {
        Ok(Self {
            polys: signed_remainder_chain(&squarefree_part(p)?),
        })
    }

    pub fn polys(&self) -> &[IntPolynomial] {
        &self.polys
    }

    /// The squarefree polynomial the chain was built over.
    pub fn base(&self) -> &IntPolynomial {
        &self.polys[0]
    }

    pub fn variations_at(&self, r: &RationalPoint) -> usize {
        sign_variations(self.polys.iter().map(|p| p.sign_at(r)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        sign_variations(self.polys.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Distinct roots in the open interval `(a, b)`.
    ///
    /// For a squarefree base, `V(a) - V(b)` counts roots in `(a, b]` even
    /// when `a` or `b` is itself a root (zeros dropped from the sign
    /// sequence), so a root at `b` is subtracted explicitly.
    pub fn count_open(&self, a: &RationalPoint, b: &RationalPoint) -> usize {
        let raw = self.variations_at(a) - self.variations_at(b);
        if self.base().sign_at(b) == Sign::NoSign {
            raw - 1
        } else {
            raw
        }
    }

    /// Distinct roots in `(-inf, b)` or `(a, +inf)`.
    fn count_below(&self, b: &RationalPoint) -> usize {
        let raw = self.variations_at_infinity(false) - self.variations_at(b);
        if self.base().sign_at(b) == Sign::NoSign {
            raw - 1
        } else {
            raw
        }
    }

    fn count_above(&self, a: &RationalPoint) -> usize {
        self.variations_at(a) - self.variations_at_infinity(true)
    }
}

pub fn sturm_chain(p: &IntPolynomial) -> Result<SturmChain> {
    SturmChain::new(p)
}

/// Number of distinct real roots.
pub fn count_distinct_real_roots(p: &IntPolynomial) -> Result<usize> {
    Ok(SturmChain::new(p)?.count_all())
}

/// Real roots counted with multiplicity; equals the degree exactly when `p`
/// is real-rooted.
///
/// A root of multiplicity `m` is a root of each of `p, gcd(p, p'), ...` up to
/// the `m`-th repeated gcd, so summing distinct counts over that tower
/// recovers multiplicities.
pub fn count_real_roots(p: &IntPolynomial) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // the root at 0 is counted directly, which keeps the Sturm chains short
    let m = p.zero_multiplicity();
    let mut total = m;
    let mut current = p.divide_by_x_power(m)?.primitive_part();
    while !current.is_constant() {
        // every element of the raw chain carries the factor gcd(p, p'), which
        // has constant sign near infinity, so the variations still count
        // distinct roots; the last element is that gcd
        let chain = signed_remainder_chain(&current);
        let at = |positive| sign_variations(chain.iter().map(|q| q.sign_at_infinity(positive)));
        total += at(false) - at(true);
        current = chain.last().expect("chain is never empty").primitive_part();
    }
    Ok(total)
}

/// Distinct real roots in the open interval `(a, b)`.
pub fn count_roots_in(p: &IntPolynomial, a: &RationalPoint, b: &RationalPoint) -> Result<usize> {
    if a >= b {
        return Err(Error::InvalidArgument(format!("empty interval ({a}, {b})")));
    }
    Ok(SturmChain::new(p)?.count_open(a, b))
}

/// Open interval `(lower, upper)` holding exactly one root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lower: RationalPoint,
    pub upper: RationalPoint,
}

impl RootInterval {
    pub fn width(&self) -> RationalPoint {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> RationalPoint {
        self.lower.midpoint(&self.upper)
    }

    fn overlaps(&self, other: &Self) -> bool {
        self.lower < other.upper && other.lower < self.upper
    }

    /// Halves the interval around the single root of the squarefree `s`.
    fn refine(&mut self, s: &IntPolynomial) {
        let mid = self.midpoint();
        match s.sign_at(&mid) {
            Sign::NoSign => {
                // the root is the dyadic midpoint itself
                let quarter = RationalPoint::from(self.width().into_ratio() / BigInt::from(4));
                self.lower = &mid - &quarter;
                self.upper = &mid + &quarter;
            }
            sign if sign == s.sign_at(&self.lower) => self.lower = mid,
            _ => self.upper = mid,
        }
    }
}

/// Negative roots isolated in disjoint intervals, plus the remaining root
/// bookkeeping of the polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootIsolation {
    pub degree: usize,
    /// Multiplicity of the root at 0.
    pub zero_multiplicity: usize,
    /// One interval per distinct negative root, in decreasing order.
    pub intervals: Vec<RootInterval>,
    /// Distinct positive roots.
    pub positive_root_count: usize,
    /// Distinct negative roots of multiplicity above one.
    pub repeated_negative_roots: usize,
    /// Real roots with multiplicity.
    pub real_root_count: usize,
    /// Squarefree part of `p / x^zero_multiplicity`, over which the
    /// intervals were computed.
    pub squarefree: IntPolynomial,
}

impl RootIsolation {
    pub fn negative_root_count(&self) -> usize {
        self.intervals.len()
    }

    /// Refines every interval until its width is below `width`.
    pub fn refine_to(&mut self, width: &RationalPoint) {
        for iv in &mut self.intervals {
            while &iv.width() >= width {
                iv.refine(&self.squarefree);
            }
        }
    }

    /// Refines every interval until its width is below
    /// `tolerance * min(1, |upper|)`, so small roots are located to relative
    /// rather than absolute precision.
    pub fn refine_relative(&mut self, tolerance: &RationalPoint) {
        let one = BigRational::one();
        for iv in &mut self.intervals {
            loop {
                let distance = -iv.upper.as_ratio().clone();
                let scale = if distance < one { distance } else { one.clone() };
                if iv.width().as_ratio() < &(tolerance.as_ratio() * scale) {
                    break;
                }
                iv.refine(&self.squarefree);
            }
        }
    }
}

/// Cauchy bound `1 + max |c_i| / |lead|`, rounded up to a power of two.
fn dyadic_root_bound(p: &IntPolynomial) -> BigInt {
    let lead = p.leading_coeff().expect("nonzero").abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = max / lead + 2u32;
    let mut pow = BigInt::from(1u32);
    while pow < bound {
        pow <<= 1;
    }
    pow
}

/// Bisection over `(lo, hi)`, both non-roots of `s`.
fn bisect(chain: &SturmChain, lo: RationalPoint, hi: RationalPoint, out: &mut Vec<RootInterval>) {
    let s = chain.base();
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let count = chain.count_open(&a, &b);
        match count {
            0 => {}
            1 => out.push(RootInterval { lower: a, upper: b }),
            _ => {
                let width = &b - &a;
                let mut mid = a.midpoint(&b);
                let mut step = RationalPoint::from(width.into_ratio() / BigInt::from(4));
                // nudge toward the interior until the split point is not a root
                while s.sign_at(&mid) == Sign::NoSign {
                    mid = &mid + &step;
                    step = RationalPoint::from(step.into_ratio() / BigInt::from(2));
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
}

pub fn isolate_negative_roots(p: &IntPolynomial) -> Result<RootIsolation> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let degree = p.degree().expect("nonzero");
    let zero_multiplicity = p.zero_multiplicity();
    let q = p.divide_by_x_power(zero_multiplicity)?;
    let chain = SturmChain::new(&q)?;
    let s = chain.base().clone();
    let zero = RationalPoint::zero();

    let mut intervals = Vec::new();
    if !s.is_constant() {
        let bound = RationalPoint::integer(-dyadic_root_bound(&s));
        bisect(&chain, bound, zero.clone(), &mut intervals);
    }
    intervals.sort_by(|a, b| b.upper.cmp(&a.upper));

    let positive_root_count = if s.is_constant() { 0 } else { chain.count_above(&zero) };
    let repeated = q.gcd(&q.derivative());
    let repeated_negative_roots = if repeated.is_constant() {
        0
    } else {
        SturmChain::new(&repeated)?.count_below(&zero)
    };
    let real_root_count = zero_multiplicity + count_real_roots(&q)?;
    Ok(RootIsolation {
        degree,
        zero_multiplicity,
        intervals,
        positive_root_count,
        repeated_negative_roots,
        real_root_count,
        squarefree: s,
    })
}

/// Why `f ≺ g` failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrecedesFailure {
    PositiveRoot,
    NotRealRooted,
    MultipleNegativeRoot,
    CountMismatch,
    OrderViolation,
}

impl PrecedesFailure {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::PositiveRoot => "positive_root",
            Self::NotRealRooted => "not_real_rooted",
            Self::MultipleNegativeRoot => "multiple_negative_root",
            Self::CountMismatch => "count_mismatch",
            Self::OrderViolation => "order_violation",
        }
    }
}

/// Outcome of checking `f ≺ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecedesVerdict {
    pub holds: bool,
    pub f_roots: RootIsolation,
    pub g_roots: RootIsolation,
    pub failure_reason: Option<PrecedesFailure>,
}

fn root_shape_failure(iso: &RootIsolation) -> Option<PrecedesFailure> {
    if iso.positive_root_count > 0 {
        Some(PrecedesFailure::PositiveRoot)
    } else if iso.real_root_count < iso.degree {
        Some(PrecedesFailure::NotRealRooted)
    } else if iso.repeated_negative_roots > 0 {
        Some(PrecedesFailure::MultipleNegativeRoot)
    } else {
        None
    }
}

/// Certifies or refutes `f ≺ g`: both polynomials have only real,
/// non-positive roots with simple negative roots; `g` has as many negative
/// roots as `f` or one more; and the negative roots alternate as
/// `x_1 > y_1 > x_2 > y_2 > ...` with `x_i` the roots of `g`, `y_i` those of
/// `f`, both in decreasing order.
pub fn verify_precedes(f: &IntPolynomial, g: &IntPolynomial) -> Result<PrecedesVerdict> {
    let mut f_roots = isolate_negative_roots(f)?;
    let mut g_roots = isolate_negative_roots(g)?;
    let failure = root_shape_failure(&f_roots)
        .or_else(|| root_shape_failure(&g_roots))
        .or_else(|| {
            let (nf, ng) = (f_roots.negative_root_count(), g_roots.negative_root_count());
            (ng != nf && ng != nf + 1).then_some(PrecedesFailure::CountMismatch)
        })
        .or_else(|| alternation_failure(&mut f_roots, &mut g_roots));
    Ok(PrecedesVerdict {
        holds: failure.is_none(),
        f_roots,
        g_roots,
        failure_reason: failure,
    })
}

/// Separates the isolating intervals of `f` and `g` and checks that, read
/// from zero downwards, they alternate starting with a root of `g`.
fn alternation_failure(f: &mut RootIsolation, g: &mut RootIsolation) -> Option<PrecedesFailure> {
    // a shared negative root can never be separated
    let common = f.squarefree.gcd(&g.squarefree);
    if !common.is_constant() {
        let shared = SturmChain::new(&common).expect("nonzero").count_below(&RationalPoint::zero());
        if shared > 0 {
            return Some(PrecedesFailure::OrderViolation);
        }
    }
    loop {
        let mut overlapping = false;
        for i in 0..f.intervals.len() {
            for j in 0..g.intervals.len() {
                if f.intervals[i].overlaps(&g.intervals[j]) {
                    overlapping = true;
                    f.intervals[i].refine(&f.squarefree);
                    g.intervals[j].refine(&g.squarefree);
                }
            }
        }
        if !overlapping {
            break;
        }
    }
    // merge in decreasing order; `true` marks a root of g
    let mut merged: Vec<(&RationalPoint, bool)> = f
        .intervals
        .iter()
        .map(|iv| (&iv.upper, false))
        .chain(g.intervals.iter().map(|iv| (&iv.upper, true)))
        .collect();
    merged.sort_by(|a, b| b.0.cmp(a.0));
    let alternates = merged
        .iter()
        .enumerate()
        .all(|(i, &(_, from_g))| from_g == (i % 2 == 0));
    (!alternates).then_some(PrecedesFailure::OrderViolation)
}

/// One relation of the forest interlacing pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacingCheck {
    /// 1-based relation number.
    pub relation: usize,
    /// `(n, c)` of the left- and right-hand forests in `left ≺ right`.
    pub left: (usize, usize),
    pub right: (usize, usize),
    /// `None` when the relation does not apply to the given `(c, n)`.
    pub verdict: Option<PrecedesVerdict>,
}

impl InterlacingCheck {
    pub fn applicable(&self) -> bool {
        self.verdict.is_some()
    }

    pub fn holds(&self) -> Option<bool> {
        self.verdict.as_ref().map(|v| v.holds)
    }
}

/// The five relations between Stirling polynomials of forests, for fixed
/// `c >= 1` and `n >= c`:
///
/// 1. `F(c+1, c) ≺ F(c, c)`
/// 2. `F(n, c) ≺ F(n+1, c)` for `n >= c+1`
/// 3. `F(n, c) ≺ F(n+1, c+1)`
/// 4. `F(c+1, c) ≺ F(c+1, c+1)`
/// 5. `F(n+1, c+1) ≺ F(n+1, c)` for `n >= c+1`
///
/// where `F(n, c)` stands for `sigma` of a forest with `n` vertices and `c`
/// components.
pub fn verify_interlacing_relations(c: usize, n: usize) -> Result<Vec<InterlacingCheck>> {
    if c == 0 || n < c {
        return Err(Error::InvalidForest { n, c });
    }
    let pairs = [
        (1, (c + 1, c), (c, c), true),
        (2, (n, c), (n + 1, c), n > c),
        (3, (n, c), (n + 1, c + 1), true),
        (4, (c + 1, c), (c + 1, c + 1), true),
        (5, (n + 1, c + 1), (n + 1, c), n > c),
    ];
    let sigma = |(n, c): (usize, usize)| -> Result<IntPolynomial> { Ok(stirling_poly(GraphFamily::forest(n, c)?)) };
    pairs
        .into_iter()
        .map(|(relation, left, right, applies)| {
            let verdict = if applies {
                Some(verify_precedes(&sigma(left)?, &sigma(right)?)?)
            } else {
                None
            };
            Ok(InterlacingCheck {
                relation,
                left,
                right,
                verdict,
            })
        })
        .collect()
}

/// Result of an ultra log-concavity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UlcReport {
    pub sequence_length: usize,
    pub holds: bool,
    pub strict_from: usize,
    pub first_violation: Option<usize>,
}

/// Checks `(a_k / C(n,k))^2 >= (a_{k-1} / C(n,k-1)) (a_{k+1} / C(n,k+1))`
/// for `1 <= k <= n-1`, strictly once `k >= strict_from`, as the integer
/// inequality `a_k^2 C(n,k-1) C(n,k+1) >= a_{k-1} a_{k+1} C(n,k)^2`.
pub fn ultra_log_concave(counts: &[BigUint], strict_from: usize) -> UlcReport {
    let len = counts.len();
    let mut first_violation = None;
    if len >= 3 {
        let n = len - 1;
        let binom = binomial_row(n);
        for k in 1..n {
            let lhs = &counts[k] * &counts[k] * &binom[k - 1] * &binom[k + 1];
            let rhs = &counts[k - 1] * &counts[k + 1] * &binom[k] * &binom[k];
            let ok = if k >= strict_from { lhs > rhs } else { lhs >= rhs };
            if !ok {
                first_violation = Some(k);
                break;
            }
        }
    }
    UlcReport {
        sequence_length: len,
        holds: first_violation.is_none(),
        strict_from,
        first_violation,
    }
}

/// Factorisation of `p(x) / p(1)` as `prod_i (lambda_i + x) / (1 + lambda_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliDecomposition {
    /// One entry per root with multiplicity; roots at zero give `lambda = 0`.
    pub lambdas: Vec<f64>,
    /// How many of the lambdas come from the root at zero.
    pub zero_count: usize,
    /// Largest relative deviation of the reconstructed coefficients from
    /// those of `p(x) / p(1)`.
    pub reconstruction_error: f64,
}

impl BernoulliDecomposition {
    /// Mean of the distribution, `sum_i 1 / (1 + lambda_i)`.
    pub fn mean(&self) -> f64 {
        self.lambdas.iter().map(|l| 1.0 / (1.0 + l)).sum()
    }
}

pub fn bernoulli_decomposition(p: &IntPolynomial, tolerance: f64) -> Result<BernoulliDecomposition> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let Some(i) = p.coeffs().iter().position(Signed::is_negative) {
        return Err(Error::NegativeCoefficient(i));
    }
    if !(tolerance > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tolerance}")));
    }
    let mut iso = isolate_negative_roots(p)?;
    if iso.real_root_count != iso.degree {
        return Err(Error::NotRealRooted {
            real: iso.real_root_count,
            degree: iso.degree,
        });
    }
    // absolute width alone leaves roots near zero with large relative error,
    // which the small coefficients of p / p(1) amplify
    iso.refine_relative(&dyadic_below(tolerance));

    // multiplicities from the repeated-gcd tower of p / x^m
    let q = p.divide_by_x_power(iso.zero_multiplicity)?;
    let mut tower = Vec::new();
    let mut current = q.primitive_part();
    while !current.is_constant() {
        tower.push(SturmChain::new(&current)?);
        current = current.gcd(&current.derivative());
    }

    let mut lambdas = vec![0.0; iso.zero_multiplicity];
    for iv in &iso.intervals {
        let multiplicity = tower.iter().filter(|c| c.count_open(&iv.lower, &iv.upper) == 1).count();
        let lambda = -iv.midpoint().to_f64();
        lambdas.extend(std::iter::repeat_n(lambda, multiplicity));
    }

    let mut recon = vec![1.0f64];
    for &l in &lambdas {
        let mut next = vec![0.0; recon.len() + 1];
        for (i, c) in recon.iter().enumerate() {
            next[i] += c * l / (1.0 + l);
            next[i + 1] += c / (1.0 + l);
        }
        recon = next;
    }
    let total: BigInt = p.coeffs().iter().sum();
    let mut error: f64 = 0.0;
    for (k, r) in recon.iter().enumerate() {
        let target = ratio_to_f64(&p.coeff(k), &total);
        let dev = if target > 0.0 { (r - target).abs() / target } else { r.abs() };
        error = error.max(dev);
    }
    Ok(BernoulliDecomposition {
        lambdas,
        zero_count: iso.zero_multiplicity,
        reconstruction_error: error,
    })
}

/// Largest power of two not exceeding `x > 0`, as an exact rational.
fn dyadic_below(x: f64) -> RationalPoint {
    let e = x.log2().floor() as i64;
    if e >= 0 {
        RationalPoint::integer(BigInt::from(1u8) << e as u64)
    } else {
        RationalPoint::new(1, BigInt::from(1u8) << (-e) as u64)
    }
}
