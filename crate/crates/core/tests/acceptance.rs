//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the report is always
//! printed.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use stirling_core::asymptotics::{bell_ratio_deviation, estimate_report, harper_variance_deviation, normality_report};
use stirling_core::combinatorics::{BellSequence, StirlingTriangle};
use stirling_core::graph_stirling::{
    chromatic_from_sigma, chromatic_poly, cycle_closed_form_k3, cycle_closed_form_k4, graph_bell, moments,
    pascal_identity_check, stirling_poly, stirling_poly_via_operator, stirling_vector, stirling_vector_cached,
    stirling_via_chromatic, GraphFamily,
};
use stirling_core::oracle::{
    build_cycle, build_random_forest, build_star_forest, enumerate_partition_counts, singleton_free_count,
};
use stirling_core::polynomial::IntPolynomial;
use stirling_core::realroots::{bernoulli_decomposition, count_real_roots, ultra_log_concave, verify_interlacing_relations};

/// Seeds for the random forests compared against enumeration.
const ORACLE_SEEDS: [u64; 3] = [1, 2, 3];
/// "No doubling": every later value of a trend series stays within this
/// factor of its first value.
const TREND_GROWTH_LIMIT: f64 = 2.0;
/// Values below this are treated as already negligible in a trend series.
const TREND_FLOOR: f64 = 1e-3;
const BERRY_ESSEEN_LIMIT: f64 = 1.0;
const BERNOULLI_TOLERANCE: f64 = 1e-12;
const RECONSTRUCTION_LIMIT: f64 = 1e-9;

const ESTIMATE_SIZES: [usize; 3] = [100, 300, 1000];
const DEVIATION_SIZES: [usize; 5] = [10, 30, 100, 300, 1000];
const NORMALITY_SIZES: [usize; 4] = [50, 100, 200, 400];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(condition: bool, failure: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(failure())
    }
}

fn family(build: fn(usize) -> stirling_core::Result<GraphFamily>, n: usize) -> GraphFamily {
    build(n).expect("valid family size")
}

fn trend_families(n: usize) -> [GraphFamily; 3] {
    [
        family(GraphFamily::path, n),
        family(GraphFamily::cycle, n),
        family(GraphFamily::empty, n),
    ]
}

fn oracle_equivalence() -> Outcome {
    let mut compared = 0;
    for n in 1..=9 {
        for c in 1..=n {
            let expected = stirling_vector(GraphFamily::forest(n, c).unwrap()).counts;
            let mut graphs = vec![("star", build_star_forest(n, c).unwrap())];
            for seed in ORACLE_SEEDS {
                graphs.push(("random", build_random_forest(n, c, seed).unwrap()));
            }
            for (shape, g) in graphs {
                ensure(enumerate_partition_counts(&g).unwrap() == expected, || {
                    format!("{shape} forest n={n} c={c} differs from enumeration")
                })?;
                compared += 1;
            }
        }
    }
    for n in 3..=10 {
        let expected = stirling_vector(GraphFamily::cycle(n).unwrap()).counts;
        ensure(enumerate_partition_counts(&build_cycle(n).unwrap()).unwrap() == expected, || {
            format!("cycle n={n} differs from enumeration")
        })?;
        compared += 1;
    }
    Ok(format!("{compared} graphs match enumeration"))
}

fn formula_cross_checks() -> Outcome {
    let mut graphs: Vec<GraphFamily> = (1..=15)
        .flat_map(|n| (1..=n).map(move |c| GraphFamily::forest(n, c).unwrap()))
        .collect();
    graphs.extend((2..=15).map(|n| GraphFamily::cycle(n).unwrap()));
    for &g in &graphs {
        let vector = stirling_vector(g);
        let sigma = IntPolynomial::from_unsigned(&vector.counts);
        for k in 0..=g.vertex_count() {
            ensure(stirling_via_chromatic(g, k).unwrap() == vector.get(k), || {
                format!("{g}: inclusion-exclusion differs at k={k}")
            })?;
        }
        ensure(chromatic_from_sigma(g) == chromatic_poly(g), || {
            format!("{g}: falling-factorial expansion differs from chromatic polynomial")
        })?;
        ensure(stirling_poly_via_operator(g) == sigma, || format!("{g}: operator recurrence differs"))?;
    }
    for n in 1..=15 {
        for c in 1..=n {
            ensure(pascal_identity_check(n, c).unwrap(), || format!("Pascal identity fails at n={n} c={c}"))?;
        }
    }
    Ok(format!("{} graphs, Pascal identity for 1 <= c <= n <= 15", graphs.len()))
}

fn closed_forms() -> Outcome {
    let mut triangle = StirlingTriangle::new();
    for n in 3..=200 {
        let vector = stirling_vector_cached(GraphFamily::cycle(n).unwrap(), &mut triangle);
        ensure(cycle_closed_form_k3(n).unwrap() == vector.get(3), || format!("k=3 differs at n={n}"))?;
        ensure(cycle_closed_form_k4(n).unwrap() == vector.get(4), || format!("k=4 differs at n={n}"))?;
    }
    Ok("k=3 and k=4 for 3 <= n <= 200".into())
}

fn real_rootedness() -> Outcome {
    for n in 3..=60 {
        let count = count_real_roots(&stirling_poly(GraphFamily::cycle(n).unwrap())).unwrap();
        ensure(count == n, || format!("cycle n={n}: {count} real roots"))?;
    }
    for n in 1..=40 {
        for c in 1..=n {
            let count = count_real_roots(&stirling_poly(GraphFamily::forest(n, c).unwrap())).unwrap();
            ensure(count == n, || format!("forest n={n} c={c}: {count} real roots"))?;
        }
    }
    Ok("cycles 3..=60, forests n <= 40 all real-rooted".into())
}

fn interlacing() -> Outcome {
    let mut certified = 0;
    for c in 1..=8 {
        for n in c..=24 {
            for check in verify_interlacing_relations(c, n).unwrap() {
                if let Some(verdict) = &check.verdict {
                    ensure(verdict.holds, || {
                        format!(
                            "relation {} fails for c={c} n={n}: {}",
                            check.relation,
                            verdict.failure_reason.map_or("unknown", |r| r.as_str())
                        )
                    })?;
                    certified += 1;
                }
            }
        }
    }
    Ok(format!("{certified} applicable relations certified"))
}

fn ultra_log_concavity() -> Outcome {
    let mut triangle = StirlingTriangle::new();
    for n in 3..=300 {
        let g = GraphFamily::cycle(n).unwrap();
        let report = ultra_log_concave(&stirling_vector_cached(g, &mut triangle).counts, g.chi());
        ensure(report.holds, || format!("cycle n={n} fails at k={:?}", report.first_violation))?;
    }
    Ok("cycles 3..=300, strict from the chromatic number".into())
}

fn moment_identities() -> Outcome {
    let mut bells = BellSequence::new();
    let mut graphs: Vec<GraphFamily> = (1..=60)
        .flat_map(|n| (1..=n).map(move |c| GraphFamily::forest(n, c).unwrap()))
        .collect();
    graphs.extend((2..=60).map(|n| GraphFamily::cycle(n).unwrap()));
    for &g in &graphs {
        let report = moments(g, &mut bells).unwrap();
        ensure(report.formulas_agree(), || format!("{g}: Bell-sum moments differ from the vector"))?;
    }
    let ratio = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    for (g, mean, variance) in [
        (GraphFamily::forest(3, 3).unwrap(), ratio(2, 1), ratio(2, 5)),
        (GraphFamily::cycle(4).unwrap(), ratio(3, 1), ratio(1, 2)),
    ] {
        let report = moments(g, &mut bells).unwrap();
        ensure(report.mean_exact == mean && report.variance_exact == variance, || {
            format!("{g}: mean {} variance {}", report.mean_exact, report.variance_exact)
        })?;
    }
    Ok(format!("{} graphs, exact rational agreement", graphs.len()))
}

/// Largest value of the series relative to `max(first, floor)`.
fn growth(series: &[f64]) -> f64 {
    let base = series[0].abs().max(TREND_FLOOR);
    series.iter().map(|v| v.abs() / base).fold(0.0, f64::max)
}

fn check_trend(label: &str, series: &[f64], worst: &mut f64) -> Result<(), String> {
    ensure(series.iter().all(|v| v.is_finite()), || format!("{label}: non-finite value {series:?}"))?;
    let g = growth(series);
    *worst = worst.max(g);
    ensure(g <= TREND_GROWTH_LIMIT, || format!("{label}: grows by {g:.3} over {series:?}"))
}

fn asymptotic_estimates() -> Outcome {
    let mut bells = BellSequence::new();
    let mut worst: f64 = 0.0;
    for slot in 0..3 {
        let mut mean_errors = Vec::new();
        let mut var_errors = Vec::new();
        let mut name = String::new();
        for n in ESTIMATE_SIZES {
            let g = trend_families(n)[slot];
            let r = estimate_report(g, &mut bells).unwrap();
            mean_errors.push(r.mean_abs_error_times_logn);
            var_errors.push(r.var_abs_error_times_logn_over_c2);
            name = g.to_string();
        }
        check_trend(&format!("mean error, {name}"), &mean_errors, &mut worst)?;
        check_trend(&format!("variance error, {name}"), &var_errors, &mut worst)?;
    }
    let ratio: Vec<f64> = DEVIATION_SIZES
        .iter()
        .map(|&n| bell_ratio_deviation(n, &mut bells).unwrap())
        .collect();
    let harper: Vec<f64> = DEVIATION_SIZES
        .iter()
        .map(|&n| harper_variance_deviation(n, &mut bells).unwrap())
        .collect();
    check_trend("Bell ratio deviation", &ratio, &mut worst)?;
    check_trend("Harper variance deviation", &harper, &mut worst)?;
    Ok(format!("largest growth factor {worst:.3} (limit {TREND_GROWTH_LIMIT})"))
}

fn normality() -> Outcome {
    let mut worst_be: f64 = 0.0;
    for slot in 0..3 {
        let mut previous: Option<(f64, f64)> = None;
        for n in NORMALITY_SIZES {
            let g = trend_families(n)[slot];
            let r = normality_report(g).unwrap();
            worst_be = worst_be.max(r.berry_esseen_product);
            ensure(r.berry_esseen_product <= BERRY_ESSEEN_LIMIT, || {
                format!("{g}: Berry-Esseen product {}", r.berry_esseen_product)
            })?;
            if let Some((ks, local)) = previous {
                ensure(r.kolmogorov_distance < ks, || {
                    format!("{g}: Kolmogorov distance {} not below {ks}", r.kolmogorov_distance)
                })?;
                ensure(r.local_limit_sup < local, || {
                    format!("{g}: local-limit sup {} not below {local}", r.local_limit_sup)
                })?;
            }
            previous = Some((r.kolmogorov_distance, r.local_limit_sup));
        }
    }
    Ok(format!("strictly decreasing, largest Berry-Esseen product {worst_be:.4}"))
}

fn bell_of_cycle() -> Outcome {
    let mut bells = BellSequence::new();
    for n in 2..=12 {
        let graph_count = graph_bell(GraphFamily::cycle(n).unwrap(), &mut bells);
        let singleton_free = singleton_free_count(n).unwrap();
        ensure(graph_count == singleton_free, || {
            format!("n={n}: graph Bell {graph_count} vs singleton-free {singleton_free}")
        })?;
    }
    Ok("2 <= n <= 12".into())
}

fn bernoulli() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=30 {
        let mut graphs = vec![GraphFamily::empty(n).unwrap(), GraphFamily::path(n).unwrap()];
        if n >= 3 {
            graphs.push(GraphFamily::cycle(n).unwrap());
        }
        for g in graphs {
            let d = bernoulli_decomposition(&stirling_poly(g), BERNOULLI_TOLERANCE).unwrap();
            worst = worst.max(d.reconstruction_error);
            ensure(d.reconstruction_error < RECONSTRUCTION_LIMIT, || {
                format!("{g}: reconstruction error {:e}", d.reconstruction_error)
            })?;
        }
    }
    Ok(format!("largest reconstruction error {worst:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("oracle equivalence", oracle_equivalence),
        ("formula cross-checks", formula_cross_checks),
        ("cycle closed forms", closed_forms),
        ("real-rootedness", real_rootedness),
        ("interlacing relations", interlacing),
        ("ultra log-concavity", ultra_log_concavity),
        ("moment identities", moment_identities),
        ("asymptotic estimates", asymptotic_estimates),
        ("normality diagnostics", normality),
        ("bell of cycle", bell_of_cycle),
        ("bernoulli decomposition", bernoulli),
    ];
    let mut failures = 0;
    for (index, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2}s]", index + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail} [{elapsed:.2}s]", index + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
