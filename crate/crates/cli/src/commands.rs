//! One function per subcommand: core computation in, [`OutputRecord`] out.

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};
use stirling_core::asymptotics::{bell_ratio_deviation, estimate_report, harper_variance_deviation, normality_report};
use stirling_core::combinatorics::BellSequence;
use stirling_core::graph_stirling::{
    chromatic_poly, graph_bell, moments, stirling_poly, stirling_poly_via_operator, stirling_vector, GraphFamily,
};
use stirling_core::oracle::{
    build_cycle, build_random_forest, build_star_forest, enumerate_partition_counts, singleton_free_count,
};
use stirling_core::polynomial::RationalPoint;
use stirling_core::realroots::{count_real_roots, isolate_negative_roots, ultra_log_concave, verify_interlacing_relations};

use crate::output::{exact, OutputRecord};

/// A finished command: the record, a one-line human summary, and the
/// reason a certified property failed, if one did.
pub struct Outcome {
    pub record: OutputRecord,
    pub summary: String,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(record: OutputRecord, summary: String) -> Self {
        Self {
            record,
            summary,
            failure: None,
        }
    }

    fn checked(record: OutputRecord, summary: String, passed: bool, failure: impl FnOnce() -> String) -> Self {
        Self {
            record,
            summary,
            failure: (!passed).then(failure),
        }
    }
}

fn graph_record(command: &str, graph: GraphFamily) -> OutputRecord {
    let record = OutputRecord::new(command);
    match graph {
        GraphFamily::Forest { n, c } => record.param("family", "forest").param("n", n).param("c", c),
        GraphFamily::Cycle { n } => record.param("family", "cycle").param("n", n),
    }
}

pub fn table(graph: GraphFamily) -> Outcome {
    let vector = stirling_vector(graph);
    let mut record = graph_record("table", graph);
    let rows: Vec<Value> = vector
        .counts
        .iter()
        .enumerate()
        .filter(|(_, count)| **count != BigUint::default())
        .map(|(k, count)| json!({"k": k, "count": exact(count)}))
        .collect();
    let summary = format!("{graph}: {} nonzero classes, total {}", rows.len(), vector.total());
    record.rows(rows);
    Outcome::ok(record, summary)
}

pub fn poly(graph: GraphFamily) -> Outcome {
    let sigma = stirling_poly(graph);
    let operator_agrees = stirling_poly_via_operator(graph) == sigma;
    let mut record = graph_record("poly", graph);
    record.field("polynomial", sigma.to_string());
    record.field("chromatic_polynomial", chromatic_poly(graph).to_string());
    record.field("operator_agrees", operator_agrees);
    let rows = sigma
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != BigInt::default())
        .map(|(power, c)| json!({"power": power, "coefficient": exact(c)}))
        .collect();
    record.rows(rows);
    let summary = format!("sigma({graph}) = {sigma}");
    Outcome::checked(record, summary, operator_agrees, || {
        format!("operator recurrence disagrees with the closed sum for {graph}")
    })
}

pub fn roots(graph: GraphFamily, precision_bits: u32) -> stirling_core::Result<Outcome> {
    let sigma = stirling_poly(graph);
    let total = count_real_roots(&sigma)?;
    let mut iso = isolate_negative_roots(&sigma)?;
    iso.refine_to(&RationalPoint::new(1, BigInt::from(1u8) << precision_bits));
    let degree = iso.degree;
    let real_rooted = total == degree;

    let mut record = graph_record("roots", graph).param("precision_bits", precision_bits);
    record.field("degree", degree);
    record.field("real_root_count", total);
    record.field("real_rooted", real_rooted);
    record.field("zero_multiplicity", iso.zero_multiplicity);
    record.field("negative_root_count", iso.negative_root_count());
    record.field("positive_root_count", iso.positive_root_count);
    record.field("repeated_negative_roots", iso.repeated_negative_roots);
    let rows = iso
        .intervals
        .iter()
        .enumerate()
        .map(|(i, iv)| {
            json!({
                "index": i + 1,
                "lower": exact(&iv.lower),
                "upper": exact(&iv.upper),
                "midpoint": iv.midpoint().to_f64(),
            })
        })
        .collect();
    record.rows(rows);
    let summary = format!(
        "{graph}: {total} of {degree} roots real, {} at zero, {} negative",
        iso.zero_multiplicity,
        iso.negative_root_count()
    );
    Ok(Outcome::checked(record, summary, real_rooted, || {
        format!("sigma({graph}) has only {total} real roots out of {degree}")
    }))
}

pub fn interlace(c: usize, n: usize) -> stirling_core::Result<Outcome> {
    let checks = verify_interlacing_relations(c, n)?;
    let mut record = OutputRecord::new("interlace").param("c", c).param("n", n);
    let forest = |(n, c): (usize, usize)| format!("F(n={n}, c={c})");
    let mut failed = Vec::new();
    let rows = checks
        .iter()
        .map(|check| {
            let verdict = check.verdict.as_ref();
            if check.holds() == Some(false) {
                failed.push(check.relation);
            }
            json!({
                "relation": check.relation,
                "left": forest(check.left),
                "right": forest(check.right),
                "applicable": check.applicable(),
                "holds": check.holds(),
                "failure_reason": verdict.and_then(|v| v.failure_reason).map(|r| r.as_str()),
            })
        })
        .collect();
    record.rows(rows);
    let applicable = checks.iter().filter(|c| c.applicable()).count();
    let summary = format!(
        "c={c} n={n}: {} of {applicable} applicable relations hold",
        applicable - failed.len()
    );
    Ok(Outcome::checked(record, summary, failed.is_empty(), || {
        format!("interlacing relations {failed:?} fail for c={c} n={n}")
    }))
}

pub fn ulc(graph: GraphFamily, strict_from: Option<usize>) -> Outcome {
    let strict_from = strict_from.unwrap_or_else(|| graph.chi());
    let report = ultra_log_concave(&stirling_vector(graph).counts, strict_from);
    let mut record = graph_record("ulc", graph).param("strict_from", strict_from);
    record.field("holds", report.holds);
    record.field("strict_from", report.strict_from);
    record.field("sequence_length", report.sequence_length);
    record.field("first_violation", report.first_violation);
    let summary = match report.first_violation {
        None => format!("{graph}: ultra log-concave, strict from k={strict_from}"),
        Some(k) => format!("{graph}: ultra log-concavity fails at k={k}"),
    };
    Outcome::checked(record, summary, report.holds, || {
        format!("ultra log-concavity fails for {graph} at k={:?}", report.first_violation)
    })
}

pub fn moments_cmd(graph: GraphFamily, bells: &mut BellSequence) -> stirling_core::Result<Outcome> {
    let report = moments(graph, bells)?;
    let agree = report.formulas_agree();
    let mut record = graph_record("moments", graph);
    record.field("mean_exact", exact(&report.mean_exact));
    record.field("variance_exact", exact(&report.variance_exact));
    record.field("mean_formula", exact(&report.mean_formula));
    record.field("variance_formula", exact(&report.variance_formula));
    record.field("formulas_agree", agree);
    record.field("mean", report.mean_float);
    record.field("variance", report.variance_float);
    record.field("mean_estimate", report.mean_estimate);
    record.field("variance_estimate", report.variance_estimate);
    let summary = format!(
        "{graph}: mean {} variance {} (~{:.6}, ~{:.6})",
        report.mean_exact, report.variance_exact, report.mean_float, report.variance_float
    );
    Ok(Outcome::checked(record, summary, agree, || {
        format!("Bell-sum moments disagree with the count vector for {graph}")
    }))
}

pub fn normality(graph: GraphFamily) -> stirling_core::Result<Outcome> {
    let r = normality_report(graph)?;
    let mut record = graph_record("normality", graph);
    record.field("mean", r.mean);
    record.field("std_dev", r.std_dev);
    record.field("kolmogorov_distance", r.kolmogorov_distance);
    record.field("local_limit_sup", r.local_limit_sup);
    record.field("berry_esseen_product", r.berry_esseen_product);
    let summary = format!(
        "{graph}: Kolmogorov {:.6}, local {:.6}, Berry-Esseen {:.6}",
        r.kolmogorov_distance, r.local_limit_sup, r.berry_esseen_product
    );
    Ok(Outcome::ok(record, summary))
}

pub fn estimates(graph: GraphFamily, bells: &mut BellSequence) -> stirling_core::Result<Outcome> {
    let r = estimate_report(graph, bells)?;
    let ratio = bell_ratio_deviation(r.n, bells)?;
    let harper = harper_variance_deviation(r.n, bells)?;
    let mut record = graph_record("estimates", graph);
    record.field("lambert_w", r.w);
    record.field("mean", r.mean_exact_float);
    record.field("mean_estimate", r.mean_estimate);
    record.field("variance", r.var_exact_float);
    record.field("variance_estimate", r.var_estimate);
    record.field("mean_abs_error_times_logn", r.mean_abs_error_times_logn);
    record.field("var_abs_error_times_logn_over_c2", r.var_abs_error_times_logn_over_c2);
    record.field("bell_ratio_deviation", ratio);
    record.field("harper_variance_deviation", harper);
    let summary = format!(
        "{graph}: mean {:.6} vs {:.6}, variance {:.6} vs {:.6}",
        r.mean_exact_float, r.mean_estimate, r.var_exact_float, r.var_estimate
    );
    Ok(Outcome::ok(record, summary))
}

pub fn oracle_check(max_n: usize, seeds: u64, max_cycle: usize, bells: &mut BellSequence) -> stirling_core::Result<Outcome> {
    let mut rows = Vec::new();
    let mut mismatches = 0usize;
    let mut push = |rows: &mut Vec<Value>, graph: String, shape: &str, seed: Option<u64>, expected: &[BigUint], got: &[BigUint]| {
        let matches = expected == got;
        if !matches {
            mismatches += 1;
        }
        rows.push(json!({
            "graph": graph,
            "shape": shape,
            "seed": seed,
            "total": exact(got.iter().sum::<BigUint>()),
            "matches": matches,
        }));
    };

    for n in 1..=max_n {
        for c in 1..=n {
            let graph = GraphFamily::forest(n, c)?;
            let expected = stirling_vector(graph).counts;
            let star = enumerate_partition_counts(&build_star_forest(n, c)?)?;
            push(&mut rows, graph.to_string(), "star", None, &expected, &star);
            for seed in 1..=seeds {
                let random = enumerate_partition_counts(&build_random_forest(n, c, seed)?)?;
                push(&mut rows, graph.to_string(), "random", Some(seed), &expected, &random);
            }
        }
    }
    for n in 3..=max_cycle {
        let graph = GraphFamily::cycle(n)?;
        let expected = stirling_vector(graph).counts;
        let got = enumerate_partition_counts(&build_cycle(n)?)?;
        push(&mut rows, graph.to_string(), "cycle", None, &expected, &got);
    }
    // graph Bell number of a cycle against singleton-free partitions
    for n in 2..=max_cycle {
        let graph = GraphFamily::cycle(n)?;
        let expected = [graph_bell(graph, bells)];
        let got = [singleton_free_count(n)?];
        push(&mut rows, graph.to_string(), "singleton_free", None, &expected, &got);
    }

    let comparisons = rows.len();
    let mut record = OutputRecord::new("oracle-check")
        .param("max_n", max_n)
        .param("seeds", seeds)
        .param("max_cycle", max_cycle);
    record.field("comparisons", comparisons);
    record.field("mismatches", mismatches);
    record.rows(rows);
    let summary = format!("{comparisons} comparisons, {mismatches} mismatches");
    Ok(Outcome::checked(record, summary, mismatches == 0, || {
        format!("{mismatches} of {comparisons} oracle comparisons failed")
    }))
}

pub fn bell_numbers(upto: usize, bells: &mut BellSequence) -> Outcome {
    bells.extend_to(upto);
    let rows = bells.values()[..=upto]
        .iter()
        .enumerate()
        .map(|(m, b)| json!({"m": m, "bell": exact(b)}))
        .collect();
    let mut record = OutputRecord::new("bell").param("upto", upto);
    record.rows(rows);
    let summary = format!("B_0..B_{upto}, B_{upto} has {} digits", bells.values()[upto].to_string().len());
    Outcome::ok(record, summary)
}

pub fn graph_bell_cmd(graph: GraphFamily, bells: &mut BellSequence) -> Outcome {
    let value = graph_bell(graph, bells);
    let mut record = graph_record("bell", graph);
    record.field("graph_bell", exact(&value));
    let summary = format!("Bell number of {graph}: {value}");
    Outcome::ok(record, summary)
}
