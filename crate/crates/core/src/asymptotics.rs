//! Lambert W, Bell-number ratio estimates and normal-approximation
//! diagnostics for the class-count distribution.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combinatorics::BellSequence;
use crate::error::{Error, Result};
use crate::graph_stirling::{moments, stirling_vector, vector_moments, GraphFamily};
use crate::numeric::{rational_to_f64, unsigned_ratio_to_f64};

const W_TOLERANCE: f64 = 1e-12;

/// Principal branch of the Lambert W function on the positive axis: the
/// unique `w > 0` with `w e^w = x`.
///
/// Halley iteration, started from `ln x - ln ln x` (at least 0.5) when
/// `x >= e`, and otherwise from a bisection bracket on `[0, 1]`.
pub fn lambert_w(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "lambert_w needs a finite positive argument, got {x}"
        )));
    }
    let residual = |w: f64| w * w.exp() - x;
    let mut w = if x >= std::f64::consts::E {
        let l = x.ln();
        (l - l.ln()).max(0.5)
    } else {
        // W is increasing and W(e) = 1, so the root lies in [0, 1)
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..20 {
            let mid = 0.5 * (lo + hi);
            if residual(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        if (f / x).abs() < W_TOLERANCE * 1e-3 {
            break;
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs() {
            break;
        }
    }
    debug_assert!((residual(w) / x).abs() < W_TOLERANCE);
    Ok(w)
}

/// Exact moments of a family set against the Lambert-W estimates
/// `n / W(n)` and `n / (W(n) (W(n) + 1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub graph: GraphFamily,
    pub n: usize,
    pub w: f64,
    pub mean_estimate: f64,
    pub var_estimate: f64,
    pub mean_exact_float: f64,
    pub var_exact_float: f64,
    /// `|mean - n/W(n)| log n`.
    pub mean_abs_error_times_logn: f64,
    /// `|var - n/(W(n)(W(n)+1))| log n / c^2`, with `c = 1` for cycles.
    pub var_abs_error_times_logn_over_c2: f64,
}

pub fn estimate_report(graph: GraphFamily, bells: &mut BellSequence) -> Result<EstimateReport> {
    let n = graph.vertex_count();
    if n < 3 {
        return Err(Error::InvalidArgument(format!("estimates need n >= 3, got {graph}")));
    }
    let report = moments(graph, bells)?;
    let w = lambert_w(n as f64)?;
    let log_n = (n as f64).ln();
    let c = graph.components() as f64;
    Ok(EstimateReport {
        graph,
        n,
        w,
        mean_estimate: report.mean_estimate,
        var_estimate: report.variance_estimate,
        mean_exact_float: report.mean_float,
        var_exact_float: report.variance_float,
        mean_abs_error_times_logn: (report.mean_float - report.mean_estimate).abs() * log_n,
        var_abs_error_times_logn_over_c2: (report.variance_float - report.variance_estimate).abs() * log_n / (c * c),
    })
}

/// `(B_{n-1}/B_n - W(n)/n) n^2 / log n`, which stays bounded as `n` grows.
pub fn bell_ratio_deviation(n: usize, bells: &mut BellSequence) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("bell_ratio_deviation needs n >= 2, got {n}")));
    }
    bells.extend_to(n);
    let ratio = unsigned_ratio_to_f64(&bells.values()[n - 1], &bells.values()[n]);
    let nf = n as f64;
    let w = lambert_w(nf)?;
    Ok((ratio - w / nf) * nf * nf / nf.ln())
}

/// `(B_{n+1}/B_{n-1} - (B_n/B_{n-1})^2 - n/(W(n)(W(n)+1))) log^2 n`, bounded
/// as `n` grows.
pub fn harper_variance_deviation(n: usize, bells: &mut BellSequence) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("harper_variance_deviation needs n >= 3, got {n}")));
    }
    bells.extend_to(n + 1);
    let prev = BigInt::from(bells.values()[n - 1].clone());
    let cur = BigInt::from(bells.values()[n].clone());
    let next = BigInt::from(bells.values()[n + 1].clone());
    // B_{n+1}/B_{n-1} - (B_n/B_{n-1})^2 = (B_{n+1} B_{n-1} - B_n^2) / B_{n-1}^2
    let exact = BigRational::new(&next * &prev - &cur * &cur, &prev * &prev);
    let nf = n as f64;
    let w = lambert_w(nf)?;
    let log_n = nf.ln();
    Ok((rational_to_f64(&exact) - nf / (w * (w + 1.0))) * log_n * log_n)
}

/// Standard normal distribution function.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Distance of the exact class-count distribution from the normal law.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalityReport {
    pub graph: GraphFamily,
    pub mean: f64,
    pub std_dev: f64,
    /// `sup_z |P((X - E X)/sd <= z) - Phi(z)|`.
    pub kolmogorov_distance: f64,
    /// `sup_k |sd P(X = k) - phi((k - E X)/sd)|` over the support.
    pub local_limit_sup: f64,
    /// `kolmogorov_distance * std_dev`.
    pub berry_esseen_product: f64,
}

pub fn normality_report(graph: GraphFamily) -> Result<NormalityReport> {
    let n = graph.vertex_count();
    if n < 3 {
        return Err(Error::InvalidArgument(format!("normality diagnostics need n >= 3, got {graph}")));
    }
    let vector = stirling_vector(graph);
    let (mean_q, var_q) = vector_moments(&vector.counts)?;
    let mean = rational_to_f64(&mean_q);
    let std_dev = rational_to_f64(&var_q).sqrt();
    let total = vector.total();

    let mut kolmogorov: f64 = 0.0;
    let mut local: f64 = 0.0;
    let mut cumulative = num_bigint::BigUint::default();
    for (k, a) in vector.counts.iter().enumerate() {
        if a == &num_bigint::BigUint::default() {
            continue;
        }
        let before = unsigned_ratio_to_f64(&cumulative, &total);
        cumulative += a;
        let after = unsigned_ratio_to_f64(&cumulative, &total);
        let z = (k as f64 - mean) / std_dev;
        let phi = normal_cdf(z);
        kolmogorov = kolmogorov.max((after - phi).abs()).max((before - phi).abs());
        let pk = unsigned_ratio_to_f64(a, &total);
        local = local.max((std_dev * pk - normal_pdf(z)).abs());
    }
    Ok(NormalityReport {
        graph,
        mean,
        std_dev,
        kolmogorov_distance: kolmogorov,
        local_limit_sup: local,
        berry_esseen_product: kolmogorov * std_dev,
    })
}
