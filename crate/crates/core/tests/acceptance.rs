//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the lines always print.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{candidate_genera_oracle, rectangle, syt_aitken, syt_hook, syt_lattice_words};
use mgslope_core::appendix::Appendix;
use mgslope_core::divisor_class::{assemble_class_per_unit_n, ClosedForm, Threshold};
use mgslope_core::enumeration::{
    admissible_triple_list, candidate_genera, candidate_genus_set, counting_table, Grid,
};
use mgslope_core::equivariant::{
    corank_locus_degree, determinant_weight_quot, determinant_weight_sub, discriminant_weights,
};
use mgslope_core::verifier::{brute_force_scan, verify_all, Claim};
use mgslope_core::{castelnuovo_n, make_params, slope_s0, Point, Rational, Slope};
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:.1?}, limit {limit:?}"))
}

fn appendix() -> Appendix {
    Appendix::embedded()
}

fn closed() -> ClosedForm {
    ClosedForm::new(&appendix()).expect("closed form")
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let p = make_params(3, 3, 2).map_err(|e| e.to_string())?;
    let slope = slope_s0(&p).map_err(|e| e.to_string())?;
    ensure(slope == Slope::Finite(Rational::new(22, 3)), || format!("slope {slope}"))?;
    let g12 = closed()
        .gap_function(Threshold::Twelve)
        .eval(&Point::mrs(3, 3, 2))
        .map_err(|e| e.to_string())?;
    ensure(g12.is_zero(), || format!("G12(3,3,2) = {g12}"))?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("slope(3,3,2) = {slope}, G12(3,3,2) = {g12}"))
}

fn grid_2_3() -> Vec<(u32, u32, u32)> {
    admissible_triple_list(&Grid::new(6, 50))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let triples = grid_2_3();
    for &(m, r, s) in &triples {
        let p = make_params(m, r, s).map_err(|e| e.to_string())?;
        let class = assemble_class_per_unit_n(&p).map_err(|e| e.to_string())?;
        ensure(class.c.is_zero(), || format!("c = {} at ({m},{r},{s})", class.c))?;
    }
    within(t.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "psi-coefficient 0 at all {} admissible triples, m<=6, r<=50, s<=50",
        triples.len()
    ))
}

fn criterion_3() -> Outcome {
    let cf = closed();
    let triples = grid_2_3();
    for &(m, r, s) in &triples {
        let p = make_params(m, r, s).map_err(|e| e.to_string())?;
        let assembled = Slope::of_class(&assemble_class_per_unit_n(&p).map_err(|e| e.to_string())?);
        let closed_slope = cf.slope_at(m, r, s).map_err(|e| e.to_string())?;
        ensure(assembled == closed_slope, || {
            format!("({m},{r},{s}): assembly {assembled}, closed form {closed_slope}")
        })?;
    }
    let p = make_params(2, 4, 2).map_err(|e| e.to_string())?;
    let a = slope_s0(&p).map_err(|e| e.to_string())?;
    let b = cf.slope_at(2, 4, 2).map_err(|e| e.to_string())?;
    ensure(a == b && a == Slope::Finite(Rational::from(7)), || format!("{a} vs {b}"))?;
    let q = a.finite().expect("finite");
    ensure(
        q > &Threshold::Eight.at_genus(10) && q < &Threshold::Twelve.at_genus(10),
        || format!("{q} outside (6+8/11, 6+12/11)"),
    )?;
    Ok(format!(
        "{} triples agree; slope(2,4,2) = {a} both ways, inside (74/11, 78/11)",
        triples.len()
    ))
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let certs = verify_all(&appendix()).map_err(|e| e.to_string())?;
    let mut identities = 0;
    for c in &certs {
        ensure(c.is_verified(), || format!("part {} verdict {:?}", c.part, c.verdict))?;
        identities += c.steps.iter().filter(|s| s.claim.kind() == "identity").count();
    }
    let steps: Vec<_> = certs.iter().flat_map(|c| &c.steps).collect();
    let segment = steps
        .iter()
        .find(|s| matches!(s.claim, Claim::Segment { .. }))
        .ok_or("no extremal step")?;
    ensure(segment.transcription.as_deref() == Some("extremal_m3"), || {
        "extremal step does not use the extremal transcription".into()
    })?;
    let value_of = |label: &str| -> Result<Rational, String> {
        let step = steps
            .iter()
            .find(|s| s.label.starts_with(label))
            .ok_or(format!("no step {label}"))?;
        match &step.claim {
            Claim::FactorSign { value, .. } | Claim::PointEval { value, .. } => Ok(value.clone()),
            _ => Err(format!("{label} is not a point check")),
        }
    };
    let v41 = value_of("G12(4,3,1)")?;
    let v42 = value_of("G12(4,3,2)")?;
    let v231 = value_of("G12(2,3,1)")?;
    ensure(v41.is_positive() && v42.is_positive(), || format!("G12(4,3,1..2) = {v41}, {v42}"))?;
    ensure(v231 == Rational::new(1, 10), || format!("G12(2,3,1) = {v231}"))?;
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "3 certificates verified, {} steps, {identities} identities; G12(4,3,1)={v41}, G12(4,3,2)={v42}, G12(2,3,1)={v231}",
        steps.len()
    ))
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let report = brute_force_scan(&Grid::new(8, 100), &appendix()).map_err(|e| e.to_string())?;
    ensure(report.violations.is_empty(), || {
        format!("{} violations, first: {}", report.violations.len(), report.violations[0])
    })?;
    ensure(report.equality_witnesses == vec![(3, 3, 2)], || {
        format!("equality witnesses {:?}", report.equality_witnesses)
    })?;
    within(t.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "{} triples (m<=8, r<=100, s<=100), 0 violations, equality only at (3,3,2), {:.1?}",
        report.triples_checked,
        t.elapsed()
    ))
}

fn criterion_6() -> Outcome {
    let cf = closed();
    let recs = candidate_genera(30, &cf).map_err(|e| e.to_string())?;
    let gs: Vec<u64> = recs.iter().map(|r| r.g).collect();
    ensure(gs == vec![10, 12, 21, 24, 27], || format!("genera {gs:?}"))?;
    let ws: Vec<(u32, u32)> = recs
        .iter()
        .flat_map(|r| r.witnesses.iter().map(|w| (w.r, w.s)))
        .collect();
    ensure(ws == vec![(4, 2), (5, 2), (6, 3), (7, 3), (8, 3)], || format!("witnesses {ws:?}"))?;
    let gs50: Vec<u64> = candidate_genera(50, &cf)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|r| r.g)
        .collect();
    ensure(gs50 == candidate_genera_oracle(50), || format!("g<=50 {gs50:?}"))?;
    for g in [36, 40, 44, 48] {
        ensure(gs50.contains(&g), || format!("{g} missing"))?;
    }
    Ok(format!("g<=30: {gs:?}; g<=50: {gs50:?}"))
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let cases = [((4u64, 1u64, 3u64), 2u32, (1usize, 2usize)), ((10, 4, 12), 42, (4, 2)), ((12, 5, 15), 132, (5, 2))];
    for ((g, r, d), expected, (rr, s)) in cases {
        let n = castelnuovo_n(g, r, d).map_err(|e| e.to_string())?;
        let shape = rectangle(rr, s);
        let oracles = [syt_hook(&shape), syt_aitken(&shape), syt_lattice_words(&shape)];
        ensure(n == BigUint::from(expected), || format!("N({g},{r},{d}) = {n}"))?;
        ensure(oracles.iter().all(|o| o == &n), || format!("oracles {oracles:?} for N = {n}"))?;
    }
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok("N = 2, 42, 132, matching hook length, Aitken and lattice-word counts".into())
}

fn criterion_8() -> Outcome {
    let d = corank_locus_degree(9, 3).map_err(|e| e.to_string())?;
    ensure(d == Rational::from(1386), || format!("(9,3) -> {d}"))?;
    for n in 1..=12u32 {
        let d = corank_locus_degree(n, 1).map_err(|e| e.to_string())?;
        ensure(d == Rational::from(n), || format!("({n},1) -> {d}"))?;
        for c in 1..=n {
            corank_locus_degree(n, c).map_err(|e| e.to_string())?;
        }
    }
    let d = corank_locus_degree(3, 2).map_err(|e| e.to_string())?;
    ensure(d == Rational::from(4), || format!("(3,2) -> {d}"))?;
    Ok("(9,3) = 1386, (n,1) = n for n<=12, (3,2) = 4, integral for all 1<=c<=n<=12".into())
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for n in 1..=4u32 {
        for m in 1..=3u32 {
            let q = determinant_weight_quot(n, m).map_err(|e| e.to_string())?;
            let s = determinant_weight_sub(n, m).map_err(|e| e.to_string())?;
            ensure(q.factor == Rational::new(1, n), || format!("quot ({n},{m}) factor {}", q.factor))?;
            ensure(s.factor == Rational::new(1, n), || format!("sub ({n},{m}) factor {}", s.factor))?;
            checked += 2;
        }
    }
    let terms = discriminant_weights();
    ensure(terms[0].weight == terms[1].weight, || "discriminant monomials differ".into())?;
    Ok(format!(
        "{checked} determinant weights proportional; b^2 and ac both weigh {}",
        terms[0].weight
    ))
}

fn criterion_10() -> Outcome {
    let t = Instant::now();
    let g_max = 1_000_000;
    let ours = candidate_genus_set(g_max);
    let oracle = candidate_genera_oracle(g_max);
    ensure(ours == oracle, || format!("{} vs {} genera", ours.len(), oracle.len()))?;
    let table = counting_table(g_max, 100).map_err(|e| e.to_string())?;
    ensure(table.rows.windows(2).all(|w| w[0].count <= w[1].count), || {
        "counts decrease".into()
    })?;
    let ln2 = std::f64::consts::LN_2;
    let delta = format!("{:.6}", 1.0 - (1.0 + ln2.ln()) / ln2);
    ensure(table.delta == "0.086071" && delta == table.delta, || {
        format!("delta {} vs {delta}", table.delta)
    })?;
    within(t.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{} candidate genera up to 10^6 match the oracle, table nondecreasing, delta = {}",
        ours.len(),
        table.delta
    ))
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("equality case", criterion_1),
        ("psi-vanishing", criterion_2),
        ("dual-path agreement", criterion_3),
        ("certificate replay", criterion_4),
        ("brute-force inequality scan", criterion_5),
        ("enumeration", criterion_6),
        ("Castelnuovo counts", criterion_7),
        ("corank degree", criterion_8),
        ("equivariant weights", criterion_9),
        ("counting function and membership", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name} ({elapsed:.2?}): {detail}", i + 1)
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
