use std::path::PathBuf;

use mgslope_core::appendix::{Appendix, Source};
use mgslope_core::divisor_class::{assemble_class, ClassRecord, ClosedForm, Threshold};
use mgslope_core::enumeration::{
    candidate_genera, classify_divisor_existence, counting_table, Grid,
};
use mgslope_core::equivariant::{corank_locus_degree, determinant_weight_quot, determinant_weight_sub};
use mgslope_core::verifier::{brute_force_scan, verify_part1, verify_part2, verify_part3, Claim};
use mgslope_core::{make_params, nh_holds, slope_s0, Error, Result};
use serde_json::{json, Value};

use crate::args::{Command, Mode, Side, Triple};
use crate::output::Table;

pub const APPENDIX_DIR_VAR: &str = "MGSLOPE_APPENDIX_DIR";

pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub table: Table,
    /// False for a failed verification.
    pub ok: bool,
}

fn to_value(x: impl serde::Serialize) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn load_appendix() -> Result<Appendix> {
    match std::env::var_os(APPENDIX_DIR_VAR) {
        Some(dir) => Appendix::load(&Source::Directory(PathBuf::from(dir))),
        None => Ok(Appendix::embedded()),
    }
}

pub fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::Slope(t) => slope(t),
        Command::Class(t) => class(t),
        Command::Verify {
            part,
            mode,
            m_max,
            r_max,
            s_max,
        } => {
            let grid = Grid::new(*m_max, *r_max).with_s_max(s_max.unwrap_or(*r_max));
            verify(part.numbers(), *mode, grid, json!({"part": part, "mode": mode, "grid": grid}))
        }
        Command::Enumerate { g_max } => enumerate(*g_max),
        Command::Density { g_max, buckets } => density(*g_max, *buckets),
        Command::Exists(t) => exists(t),
        Command::Weights { side, rank, m } => weights(*side, *rank, *m),
        Command::Corank { n, c } => corank(*n, *c),
        Command::Params(t) => params(t),
    }
}

fn slope(t: &Triple) -> Result<Report> {
    let p = make_params(t.m, t.r, t.s)?;
    let slope = slope_s0(&p)?;
    let gap12 = slope.gap(&Threshold::Twelve.at_genus(p.g));
    let gap8 = slope.gap(&Threshold::Eight.at_genus(p.g));
    let mut table = Table::new(
        &["m", "r", "s", "g", "slope", "gap12", "gap8"],
        &["slope", "gap12", "gap8"],
    );
    table.push(vec![
        p.m.to_string(),
        p.r.to_string(),
        p.s.to_string(),
        p.g.to_string(),
        slope.to_string(),
        gap12.to_string(),
        gap8.to_string(),
    ]);
    Ok(Report {
        command: "slope",
        inputs: to_value(t),
        results: json!({"g": p.g, "slope": slope, "gap12": gap12, "gap8": gap8}),
        table,
        ok: true,
    })
}

fn class(t: &Triple) -> Result<Report> {
    let p = make_params(t.m, t.r, t.s)?;
    let closed = ClosedForm::new(&load_appendix()?)?;
    let assembly = ClassRecord::new(&p, &assemble_class(&p)?);
    let closed_form = ClassRecord::new(&p, &closed.class_at(&p)?);
    let agree = assembly.a == closed_form.a
        && assembly.b0 == closed_form.b0
        && assembly.c == closed_form.c;
    let mut table = Table::new(&["path", "a", "b0", "c", "slope"], &["a", "b0", "c", "slope"]);
    for (path, rec) in [("assembly", &assembly), ("closed_form", &closed_form)] {
        table.push(vec![
            path.into(),
            rec.a.to_string(),
            rec.b0.to_string(),
            rec.c.to_string(),
            rec.slope.to_string(),
        ]);
    }
    Ok(Report {
        command: "class",
        inputs: to_value(t),
        results: json!({"assembly": assembly, "closed_form": closed_form, "agree": agree}),
        table,
        ok: agree,
    })
}

fn verify(parts: &[u8], mode: Mode, grid: Grid, inputs: Value) -> Result<Report> {
    let appendix = load_appendix()?;
    let mut table = Table::new(
        &["check", "part", "step", "kind", "label", "digest", "verdict"],
        &[],
    );
    let mut ok = true;
    let mut results = serde_json::Map::new();

    if mode != Mode::Bruteforce {
        let mut certificates = Vec::new();
        for &part in parts {
            let cert = match part {
                1 => verify_part1(&appendix)?,
                2 => verify_part2(&appendix)?,
                _ => verify_part3(&appendix)?,
            };
            ok &= cert.is_verified();
            for (log, step) in cert.log().iter().zip(&cert.steps) {
                let verdict = match &step.verdict {
                    mgslope_core::verifier::StepVerdict::Verified => "verified".to_string(),
                    mgslope_core::verifier::StepVerdict::Failed(why) => format!("failed: {why}"),
                };
                table.push(vec![
                    "certificate".into(),
                    part.to_string(),
                    log.index.to_string(),
                    log.kind.into(),
                    log.label.clone(),
                    log.digest[..16].to_string(),
                    verdict,
                ]);
            }
            let equality = cert
                .steps
                .iter()
                .any(|s| matches!(&s.claim, Claim::PointEval { value, .. } if value.is_zero()));
            certificates.push(json!({
                "part": part,
                "verdict": cert.verdict,
                "log": cert.log(),
                "certificate": cert,
                "records_equality_case": equality,
            }));
        }
        results.insert("certificates".into(), Value::Array(certificates));
    }

    if mode != Mode::Certificate {
        let report = brute_force_scan(&grid, &appendix)?;
        let mut scans = Vec::new();
        let dual: Vec<_> = report.violations_in(0).cloned().collect();
        ok &= dual.is_empty();
        table.push(vec![
            "bruteforce".into(),
            "0".into(),
            String::new(),
            "dual_path".into(),
            format!("{} triples, {} disagreements", report.triples_checked, dual.len()),
            String::new(),
            verdict_word(dual.is_empty()).into(),
        ]);
        for &part in parts {
            let violations: Vec<_> = report.violations_in(part).cloned().collect();
            ok &= violations.is_empty();
            table.push(vec![
                "bruteforce".into(),
                part.to_string(),
                String::new(),
                "scan".into(),
                format!("{} triples, {} violations", report.triples_checked, violations.len()),
                String::new(),
                verdict_word(violations.is_empty()).into(),
            ]);
            scans.push(json!({
                "part": part,
                "violations": violations,
                "verdict": verdict_word(violations.is_empty()),
            }));
        }
        results.insert(
            "bruteforce".into(),
            json!({
                "grid": report.grid,
                "triples_checked": report.triples_checked,
                "dual_path_disagreements": dual,
                "equality_witnesses": report.equality_witnesses,
                "infinite_slopes": report.infinite_slopes,
                "below_twelve": report.below_twelve,
                "parts": scans,
            }),
        );
    }
    results.insert("verdict".into(), verdict_word(ok).into());
    Ok(Report {
        command: "verify",
        inputs,
        results: Value::Object(results),
        table,
        ok,
    })
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "verified"
    } else {
        "failed"
    }
}

fn enumerate(g_max: u64) -> Result<Report> {
    let closed = ClosedForm::new(&load_appendix()?)?;
    let records = candidate_genera(g_max, &closed)?;
    let mut table = Table::new(&["g", "r", "s", "d", "slope", "gap12"], &["slope", "gap12"]);
    for rec in &records {
        for w in &rec.witnesses {
            table.push(vec![
                rec.g.to_string(),
                w.r.to_string(),
                w.s.to_string(),
                w.d.to_string(),
                w.slope.to_string(),
                w.gap12.to_string(),
            ]);
        }
    }
    Ok(Report {
        command: "enumerate",
        inputs: json!({"g_max": g_max}),
        results: json!({"count": records.len(), "records": records}),
        table,
        ok: true,
    })
}

fn density(g_max: u64, buckets: u64) -> Result<Report> {
    let counts = counting_table(g_max, buckets)?;
    let mut table = Table::new(&["g_upper", "count"], &[]);
    for row in &counts.rows {
        table.push(vec![row.g_upper.to_string(), row.count.to_string()]);
    }
    Ok(Report {
        command: "density",
        inputs: json!({"g_max": g_max, "buckets": buckets}),
        results: to_value(&counts),
        table,
        ok: true,
    })
}

fn exists(t: &Triple) -> Result<Report> {
    let p = make_params(t.m, t.r, t.s)?;
    let ex = classify_divisor_existence(&p)?;
    let results = to_value(&ex);
    let mut table = Table::new(&["case", "forms", "e", "containing", "hom_dim", "group_dim"], &[]);
    table.push(vec![
        results["case"].as_str().unwrap_or_default().to_string(),
        ex.forms.to_string(),
        ex.e.to_string(),
        ex.containing.to_string(),
        ex.hom_dim.to_string(),
        ex.group_dim.to_string(),
    ]);
    Ok(Report {
        command: "exists",
        inputs: to_value(t),
        results,
        table,
        ok: true,
    })
}

fn weights(side: Side, rank: u32, m: u32) -> Result<Report> {
    let inputs = json!({"side": side, "e_or_f": rank, "m": m});
    let outcome = match side {
        Side::Quot => determinant_weight_quot(rank, m),
        Side::Sub => determinant_weight_sub(rank, m),
    };
    let mut table = Table::new(&["e", "f", "m", "weight", "expected", "factor", "verdict"], &["factor"]);
    match outcome {
        Ok(w) => {
            table.push(vec![
                w.e.to_string(),
                w.f.to_string(),
                w.m.to_string(),
                w.weight.to_string(),
                w.expected.to_string(),
                w.factor.to_string(),
                "proportional".into(),
            ]);
            Ok(Report {
                command: "weights",
                inputs,
                results: json!({
                    "weight": w.weight,
                    "weight_text": w.weight.to_string(),
                    "expected": w.expected,
                    "expected_text": w.expected.to_string(),
                    "factor": w.factor,
                    "e": w.e,
                    "f": w.f,
                    "verdict": "proportional",
                }),
                table,
                ok: true,
            })
        }
        Err(Error::ProportionalityFailed(why)) => {
            table.columns = vec!["verdict", "detail"];
            table.exact.clear();
            table.push(vec!["not_proportional".into(), why.clone()]);
            Ok(Report {
                command: "weights",
                inputs,
                results: json!({"verdict": "not_proportional", "detail": why}),
                table,
                ok: false,
            })
        }
        Err(e) => Err(e),
    }
}

fn corank(n: u32, c: u32) -> Result<Report> {
    let degree = corank_locus_degree(n, c)?;
    let mut table = Table::new(&["n", "c", "degree"], &["degree"]);
    table.push(vec![n.to_string(), c.to_string(), degree.to_string()]);
    Ok(Report {
        command: "corank",
        inputs: json!({"n": n, "c": c}),
        results: json!({"degree": degree, "integral": degree.is_integer()}),
        table,
        ok: true,
    })
}

fn params(t: &Triple) -> Result<Report> {
    let p = make_params(t.m, t.r, t.s)?;
    let n = p.castelnuovo().to_string();
    let forms = p.hypersurface_dim().to_string();
    let mut table = Table::new(&["m", "r", "s", "g", "d", "e", "forms", "N", "xi"], &["xi"]);
    table.push(vec![
        p.m.to_string(),
        p.r.to_string(),
        p.s.to_string(),
        p.g.to_string(),
        p.d.to_string(),
        p.e.to_string(),
        forms.clone(),
        n.clone(),
        p.xi.to_string(),
    ]);
    let mut results = to_value(&p);
    results["N"] = n.into();
    results["forms"] = forms.into();
    results["nh"] = nh_holds(p.m, p.r, p.s).into();
    Ok(Report {
        command: "params",
        inputs: to_value(t),
        results,
        table,
        ok: true,
    })
}
