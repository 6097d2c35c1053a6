//! Machine checks of the three slope inequalities.
//!
//! * Certificate replay: every transcribed expression is matched against
//!   the symbolic gap function, then its sign is read off factor by factor.
//! * Brute force: every admissible triple in a bounded grid is evaluated
//!   exactly, by both computation paths.
//!
//! The three statements, with `T_k = 6 + k/(g+1)`:
//!
//! 1. for m >= 3, slope >= T_12, with equality only at (3, 3, 2);
//! 2. for every admissible triple, slope > T_8;
//! 3. for m = 2, slope < T_12 iff `(r^2+1)/(3r-1) < s <= r/2`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::appendix::{Appendix, Target, Transcription};
use crate::brill_noether::make_params;
use crate::divisor_class::{
    assemble_class_per_unit_n, symbolic_class, ClosedForm, Slope, Threshold,
};
use crate::enumeration::{admissible_triple_list, is_candidate, Grid};
use crate::error::{Error, Result};
use crate::exactalg::{
    factor_sign_eval, substitute, FactorList, MultiPoly, Point, RatFunc, Rational, Shift, Sign,
    Var,
};

/// A re-checkable claim. Local coordinates are always `>= 0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// Two rational functions agree by cross-multiplication.
    Identity { lhs: RatFunc, rhs: RatFunc },
    /// Every factor outside `exempt` has nonnegative coefficients and a
    /// positive constant term, so it is positive on the orthant.
    Positivity {
        factors: FactorList,
        exempt: Vec<usize>,
    },
    /// Sign of a product of factors at one point.
    FactorSign {
        factors: FactorList,
        point: [i64; 3],
        sign: Sign,
        value: Rational,
        negative_factors: usize,
    },
    /// `poly` is linear in `var` with `-coeff(var)` positive on the
    /// shifted orthant, and vanishes at `var = bound`. Hence `poly >= 0` iff
    /// `var <= bound`. When the bound is a constant, `integer_max` is its floor.
    Bound {
        poly: MultiPoly,
        var: Var,
        bound: RatFunc,
        domain: Shift,
        integer_max: Option<i64>,
    },
    /// `poly` is linear in `var`; at `var = 0` it has nonnegative
    /// coefficients with positive constant term, and at `var = upper` it
    /// equals `at_upper`, whose factors have nonnegative coefficients.
    /// So `poly >= 0` on `0 <= var <= upper`, vanishing only where a factor
    /// of `at_upper` without constant term does.
    Segment {
        poly: MultiPoly,
        var: Var,
        upper: RatFunc,
        at_upper: FactorList,
    },
    /// Exact value of a rational function at a point.
    PointEval {
        function: RatFunc,
        point: [i64; 3],
        value: Rational,
    },
}

impl Claim {
    pub fn kind(&self) -> &'static str {
        match self {
            Claim::Identity { .. } => "identity",
            Claim::Positivity { .. } => "positivity",
            Claim::FactorSign { .. } | Claim::Segment { .. } => "factor_sign",
            Claim::Bound { .. } => "bound",
            Claim::PointEval { .. } => "point_eval",
        }
    }

    /// Re-run the claim from its payload.
    pub fn check(&self) -> std::result::Result<(), String> {
        match self {
            Claim::Identity { lhs, rhs } => {
                if lhs.equivalent(rhs) {
                    Ok(())
                } else {
                    Err("cross-multiplication differs".into())
                }
            }
            Claim::Positivity { factors, exempt } => {
                for (i, f) in factors.factors.iter().enumerate() {
                    if exempt.contains(&i) {
                        continue;
                    }
                    if !strictly_positive_on_orthant(&f.poly) {
                        return Err(format!("factor {i} ({}) is not coefficientwise positive", f.poly));
                    }
                }
                Ok(())
            }
            Claim::FactorSign {
                factors,
                point,
                sign,
                value,
                negative_factors,
            } => {
                let pt = to_point(*point);
                let got = factor_sign_eval(factors, &pt).map_err(|e| e.to_string())?;
                if got != *sign {
                    return Err(format!("sign {got}, expected {sign}"));
                }
                let v = factors.eval(&pt).map_err(|e| e.to_string())?;
                if &v != value {
                    return Err(format!("value {v}, expected {value}"));
                }
                let neg = factors
                    .factor_signs(&pt)
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .filter(|s| *s == Sign::Negative)
                    .count();
                if neg != *negative_factors {
                    return Err(format!("{neg} negative factors, expected {negative_factors}"));
                }
                Ok(())
            }
            Claim::Bound {
                poly,
                var,
                bound,
                domain,
                integer_max,
            } => {
                if poly.degree_in(*var) != 1 {
                    return Err(format!("not linear in {var}"));
                }
                let slope_coeff = -poly.coefficient_of(*var, 1);
                if !strictly_positive_on_orthant(&slope_coeff.shift(domain)) {
                    return Err(format!("coefficient of {var} is not negative on the domain"));
                }
                if !substitute(poly, *var, bound).is_zero() {
                    return Err("bound is not the root".into());
                }
                match (integer_max, bound.num().as_constant(), bound.den().as_constant()) {
                    (None, _, _) => Ok(()),
                    (Some(k), Some(n), Some(d)) => {
                        let floor = (n / d).floor();
                        if floor == (*k).into() {
                            Ok(())
                        } else {
                            Err(format!("floor of bound is {floor}, expected {k}"))
                        }
                    }
                    (Some(_), _, _) => Err("integer_max needs a constant bound".into()),
                }
            }
            Claim::Segment {
                poly,
                var,
                upper,
                at_upper,
            } => {
                if poly.degree_in(*var) != 1 {
                    return Err(format!("not linear in {var}"));
                }
                let at_zero = poly.coefficient_of(*var, 0);
                if !strictly_positive_on_orthant(&at_zero) {
                    return Err("value at the lower endpoint is not coefficientwise positive".into());
                }
                let expanded = at_upper.expand().map_err(|e| e.to_string())?;
                if !substitute(poly, *var, upper).equivalent(&expanded) {
                    return Err("value at the upper endpoint differs".into());
                }
                for f in &at_upper.factors {
                    if !f.poly.coeffs_all_nonnegative() || f.poly.is_zero() {
                        return Err(format!("endpoint factor {} has a negative coefficient", f.poly));
                    }
                    if f.is_denominator() && !f.poly.constant_term().is_positive() {
                        return Err(format!("endpoint denominator {} may vanish", f.poly));
                    }
                }
                Ok(())
            }
            Claim::PointEval {
                function,
                point,
                value,
            } => {
                let v = function.eval(&to_point(*point)).map_err(|e| e.to_string())?;
                if &v == value {
                    Ok(())
                } else {
                    Err(format!("value {v}, expected {value}"))
                }
            }
        }
    }
}

fn strictly_positive_on_orthant(p: &MultiPoly) -> bool {
    p.coeffs_all_nonnegative() && p.constant_term().is_positive()
}

fn to_point(p: [i64; 3]) -> Point {
    Point::mrs(p[0], p[1], p[2])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepVerdict {
    Verified,
    Failed(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertStep {
    pub label: String,
    /// Transcription this step consumes, if any.
    pub transcription: Option<String>,
    pub claim: Claim,
    pub verdict: StepVerdict,
}

impl CertStep {
    fn run(label: impl Into<String>, transcription: Option<&str>, claim: Claim) -> CertStep {
        let verdict = match claim.check() {
            Ok(()) => StepVerdict::Verified,
            Err(e) => StepVerdict::Failed(e),
        };
        CertStep {
            label: label.into(),
            transcription: transcription.map(str::to_string),
            claim,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == StepVerdict::Verified
    }

    /// Recheck the payload; true when it reproduces the recorded verdict.
    pub fn replay(&self) -> bool {
        self.claim.check().is_ok() == self.passed()
    }

    pub fn payload_json(&self) -> String {
        serde_json::to_string(&self.claim).expect("claims serialize")
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.payload_json().as_bytes()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Failed(usize),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub part: u8,
    pub steps: Vec<CertStep>,
    pub verdict: Verdict,
}

impl Certificate {
    fn new(part: u8, steps: Vec<CertStep>) -> Certificate {
        let verdict = match steps.iter().position(|s| !s.passed()) {
            Some(i) => Verdict::Failed(i),
            None => Verdict::Verified,
        };
        Certificate {
            part,
            steps,
            verdict,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    /// Transcriptions used by the steps, in step order.
    pub fn transcriptions(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().filter_map(|s| s.transcription.as_deref())
    }

    /// One record per step: kind, label, payload digest, verdict.
    pub fn log(&self) -> Vec<StepLog> {
        self.steps
            .iter()
            .enumerate()
            .map(|(index, s)| StepLog {
                index,
                kind: s.claim.kind(),
                label: s.label.clone(),
                transcription: s.transcription.clone(),
                digest: s.digest(),
                verdict: s.verdict.clone(),
            })
            .collect()
    }

    /// An identity step on a transcription that fails is reported as a
    /// mis-transcription.
    fn check_transcriptions(self) -> Result<Certificate> {
        for s in &self.steps {
            if let (Claim::Identity { .. }, Some(name), false) = (&s.claim, &s.transcription, s.passed()) {
                return Err(Error::TranscriptionMismatch { name: name.clone() });
            }
        }
        Ok(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepLog {
    pub index: usize,
    pub kind: &'static str,
    pub label: String,
    pub transcription: Option<String>,
    pub digest: String,
    pub verdict: StepVerdict,
}

/// Helper holding the symbolic gap functions.
struct Context<'a> {
    appendix: &'a Appendix,
    closed: ClosedForm,
    g12: RatFunc,
    g8: RatFunc,
}

impl<'a> Context<'a> {
    fn new(appendix: &'a Appendix) -> Result<Context<'a>> {
        let closed = ClosedForm::new(appendix)?;
        Ok(Context {
            appendix,
            g12: closed.gap_function(Threshold::Twelve),
            g8: closed.gap_function(Threshold::Eight),
            closed,
        })
    }

    fn get(&self, name: &str) -> Result<&'a Transcription> {
        self.appendix.get(name)
    }

    fn expect_target(&self, t: &Transcription, target: Target) -> Result<()> {
        if t.target == target {
            Ok(())
        } else {
            Err(Error::Transcription {
                name: t.name.clone(),
                reason: format!("expected target {target:?}, found {:?}", t.target),
            })
        }
    }

    /// The symbolic function a gap or constraint transcription stands for,
    /// in its local coordinates.
    fn symbolic_for(&self, t: &Transcription) -> Result<RatFunc> {
        let f = match t.target {
            Target::Gap12 => self.g12.clone(),
            Target::Gap8 => self.g8.clone(),
            Target::Constraint => {
                let m = match t.binding.m {
                    crate::appendix::VarBinding::Fixed(m) if m >= 1 => m as u32,
                    _ => {
                        return Err(Error::Transcription {
                            name: t.name.clone(),
                            reason: "constraint needs a fixed m".into(),
                        })
                    }
                };
                RatFunc::from_poly(constraint_poly(m))
            }
            other => {
                return Err(Error::Transcription {
                    name: t.name.clone(),
                    reason: format!("{other:?} has no symbolic counterpart"),
                })
            }
        };
        t.binding.apply(&f)
    }

    fn identity_step(&self, name: &str) -> Result<CertStep> {
        let t = self.get(name)?;
        let symbolic = self.symbolic_for(t)?;
        Ok(CertStep::run(
            format!("{} matches the symbolic expression", t.label()),
            Some(name),
            Claim::Identity {
                lhs: t.expanded(),
                rhs: symbolic,
            },
        ))
    }

    fn positivity_step(&self, name: &str, exempt: Vec<usize>) -> Result<CertStep> {
        let t = self.get(name)?;
        let label = if exempt.is_empty() {
            format!("every factor of {} is positive", t.label())
        } else {
            format!("factors of {} other than {exempt:?} are positive", t.label())
        };
        Ok(CertStep::run(
            label,
            None,
            Claim::Positivity {
                factors: t.factors.clone(),
                exempt,
            },
        ))
    }

    fn point_eval_step(&self, f: &RatFunc, label: &str, point: [i64; 3]) -> Result<CertStep> {
        let value = f.eval(&to_point(point))?;
        let sign = value.sign();
        Ok(CertStep::run(
            format!("{label}{} is {value} ({sign})", fmt_triple(point)),
            None,
            Claim::PointEval {
                function: f.clone(),
                point,
                value,
            },
        ))
    }
}

fn fmt_triple(p: [i64; 3]) -> String {
    format!("({},{},{})", p[0], p[1], p[2])
}

/// `C(r+m, m) - (m r (s+1) - (r+1) s + 1)` for fixed m.
pub fn constraint_poly(m: u32) -> MultiPoly {
    let r = MultiPoly::var(Var::R);
    let s = MultiPoly::var(Var::S);
    let one = MultiPoly::one();
    let mut forms = MultiPoly::one();
    let mut fact = Rational::one();
    for i in 1..=m {
        forms = &forms * &(&r + &MultiPoly::constant(i));
        fact *= &Rational::from(i);
    }
    let forms = forms.scale(&fact.recip().expect("nonzero"));
    let md = (&r * &(&s + &one)).scale(&Rational::from(m));
    let e = &(&md - &(&(&r + &one) * &s)) + &one;
    &forms - &e
}

fn ratio(num: &str, den: &str) -> RatFunc {
    RatFunc::new(num.parse().expect("valid literal"), den.parse().expect("valid literal"))
        .expect("nonzero")
}

fn bound_step(
    label: String,
    transcription: Option<&str>,
    poly: MultiPoly,
    bound: RatFunc,
    domain: Shift,
    integer_max: Option<i64>,
) -> CertStep {
    CertStep::run(
        label,
        transcription,
        Claim::Bound {
            poly,
            var: Var::S,
            bound,
            domain,
            integer_max,
        },
    )
}

fn factor_sign_step(label: String, factors: &FactorList, point: [i64; 3]) -> Result<CertStep> {
    let pt = to_point(point);
    let sign = factor_sign_eval(factors, &pt)?;
    let value = factors.eval(&pt)?;
    let negative_factors = factors
        .factor_signs(&pt)?
        .into_iter()
        .filter(|s| *s == Sign::Negative)
        .count();
    Ok(CertStep::run(
        format!("{label}: value {value}, {negative_factors} negative factors"),
        None,
        Claim::FactorSign {
            factors: factors.clone(),
            point,
            sign,
            value,
            negative_factors,
        },
    ))
}

fn require_sign(step: CertStep, want: Sign) -> CertStep {
    let got = match &step.claim {
        Claim::FactorSign { sign, .. } => *sign,
        Claim::PointEval { value, .. } => value.sign(),
        _ => return step,
    };
    if got == want || !step.passed() {
        return step;
    }
    CertStep {
        verdict: StepVerdict::Failed(format!("sign {got}, the argument needs {want}")),
        ..step
    }
}

/// Slope >= 6 + 12/(g+1) for m >= 3, equality only at (3, 3, 2).
pub fn verify_part1(appendix: &Appendix) -> Result<Certificate> {
    let cx = Context::new(appendix)?;
    let mut steps = Vec::new();

    // The closed forms against the pushforward assembly.
    let class = symbolic_class();
    steps.push(CertStep::run(
        "a/N matches the assembled lambda-coefficient",
        Some("a"),
        Claim::Identity {
            lhs: cx.closed.a(),
            rhs: class.a.clone(),
        },
    ));
    steps.push(CertStep::run(
        "b0/N matches the assembled delta_0-coefficient",
        Some("b0"),
        Claim::Identity {
            lhs: cx.closed.b0(),
            rhs: class.b0.clone(),
        },
    ));
    steps.push(CertStep::run(
        "the assembled psi-coefficient vanishes",
        None,
        Claim::Identity {
            lhs: class.c.clone(),
            rhs: RatFunc::zero(),
        },
    ));

    // m >= 4, r >= 4.
    steps.push(cx.identity_step("G12_m4_r4_s1")?);
    steps.push(cx.positivity_step("G12_m4_r4_s1", vec![])?);

    // m = 3, r >= 3: one factor can be negative, and it is linear in s.
    let cubic = cx.get("G12_3_r3_s1")?;
    cx.expect_target(cubic, Target::Gap12)?;
    let linear_index = 4;
    steps.push(cx.identity_step("G12_3_r3_s1")?);
    steps.push(cx.positivity_step("G12_3_r3_s1", vec![linear_index])?);
    steps.push(cx.identity_step("constraint_m3")?);
    let constraint = cx.get("constraint_m3")?;
    let bound = cx.get("bound_m3")?;
    cx.expect_target(bound, Target::Bound)?;
    steps.push(bound_step(
        format!("for cubics, the constraint holds iff s <= {}", bound.factors),
        Some("bound_m3"),
        constraint.factors.expand()?.num().clone(),
        bound.expanded(),
        Shift::new(0, 3, 0),
        None,
    ));
    let extremal = cx.get("extremal_m3")?;
    cx.expect_target(extremal, Target::Extremal)?;
    let linear = cubic
        .factors
        .factors
        .get(linear_index)
        .ok_or_else(|| Error::Transcription {
            name: cubic.name.clone(),
            reason: "missing linear factor".into(),
        })?
        .poly
        .clone();
    // local s = s - 1 ranges over [0, bound(r+3) - 1]
    let upper = &bound.expanded().shift(&Shift::new(0, 3, 0)) - &RatFunc::constant(1);
    steps.push(CertStep::run(
        format!(
            "{linear} is nonnegative for 0 <= s <= bound(r+3)-1, zero only at r=0 on the upper end"
        ),
        Some("extremal_m3"),
        Claim::Segment {
            poly: linear,
            var: Var::S,
            upper,
            at_upper: extremal.factors.clone(),
        },
    ));

    // r = 3, m >= 5.
    steps.push(cx.identity_step("G12_m5_3_s1")?);
    steps.push(cx.positivity_step("G12_m5_3_s1", vec![])?);

    // m = 4, r = 3: s <= 2, two point checks.
    steps.push(cx.identity_step("constraint_m4_r3")?);
    let c43 = cx.get("constraint_m4_r3")?;
    steps.push(bound_step(
        "for (m,r)=(4,3), the constraint holds iff s <= 11/4".into(),
        None,
        c43.factors.expand()?.num().clone(),
        ratio("11", "4"),
        Shift::new(0, 0, 0),
        Some(2),
    ));
    steps.push(cx.identity_step("G12_4_3_s")?);
    let g43 = cx.get("G12_4_3_s")?;
    for s in [1, 2] {
        let step = factor_sign_step(format!("G12(4,3,{s})"), &g43.factors, [0, 0, s])?;
        steps.push(require_sign(step, Sign::Positive));
    }

    // m = 3, r = 3: s <= 2 by the cubic bound at r = 3.
    steps.push(require_sign(
        cx.point_eval_step(&cx.g12, "G12", [3, 3, 1])?,
        Sign::Positive,
    ));
    steps.push(require_sign(
        cx.point_eval_step(&cx.g12, "G12", [3, 3, 2])?,
        Sign::Zero,
    ));

    Certificate::new(1, steps).check_transcriptions()
}

/// Slope > 6 + 8/(g+1) for every admissible triple.
pub fn verify_part2(appendix: &Appendix) -> Result<Certificate> {
    let cx = Context::new(appendix)?;
    let mut steps = Vec::new();
    for name in ["G8_m2_r5_s1", "G8_m2_4_s2", "G8_m2_4_1", "G8_m3_3_s1"] {
        cx.expect_target(cx.get(name)?, Target::Gap8)?;
        steps.push(cx.identity_step(name)?);
        steps.push(cx.positivity_step(name, vec![])?);
    }
    // m = 2, r = 3: s = 1 only.
    steps.push(cx.identity_step("constraint_m2_r3")?);
    let c23 = cx.get("constraint_m2_r3")?;
    steps.push(bound_step(
        "for (m,r)=(2,3), the constraint holds iff s <= 3/2".into(),
        None,
        c23.factors.expand()?.num().clone(),
        ratio("3", "2"),
        Shift::new(0, 0, 0),
        Some(1),
    ));
    steps.push(require_sign(
        cx.point_eval_step(&cx.g8, "G8", [2, 3, 1])?,
        Sign::Positive,
    ));
    Certificate::new(2, steps).check_transcriptions()
}

/// For m = 2: slope < 6 + 12/(g+1) iff (r^2+1)/(3r-1) < s <= r/2.
pub fn verify_part3(appendix: &Appendix) -> Result<Certificate> {
    let cx = Context::new(appendix)?;
    let mut steps = Vec::new();

    let quadric = constraint_poly(2);
    steps.push(CertStep::run(
        "for quadrics the constraint is (r-1)(r-2s)/2",
        None,
        Claim::Identity {
            lhs: RatFunc::from_poly(quadric.clone()),
            rhs: ratio("r^2-2*r*s-r+2*s", "2"),
        },
    ));
    steps.push(bound_step(
        "for quadrics, the constraint holds iff s <= r/2".into(),
        None,
        quadric.clone(),
        ratio("r", "2"),
        Shift::new(0, 3, 0),
        None,
    ));

    steps.push(cx.identity_step("G12_2_r_s")?);
    let g2 = cx.get("G12_2_r_s")?;
    steps.push(cx.identity_step("G12_2_r4_s1")?);
    let decisive_index = 2;
    steps.push(cx.positivity_step("G12_2_r4_s1", vec![decisive_index])?);
    let shifted = cx.get("G12_2_r4_s1")?;
    let decisive = &g2.factors.factors[decisive_index].poly;
    steps.push(CertStep::run(
        format!("the sign of G12(2,r+4,s+1) is that of the shifted {decisive}"),
        None,
        Claim::Identity {
            lhs: RatFunc::from_poly(shifted.factors.factors[decisive_index].poly.clone()),
            rhs: RatFunc::from_poly(decisive.shift(&Shift::new(0, 4, 1))),
        },
    ));
    let bound = cx.get("bound_part3")?;
    cx.expect_target(bound, Target::Bound)?;
    steps.push(bound_step(
        format!("{decisive} < 0 iff s > {}", bound.factors),
        Some("bound_part3"),
        decisive.clone(),
        bound.expanded(),
        Shift::new(0, 3, 0),
        None,
    ));

    // r = 3: s = 1 and the gap is positive despite two negative factors.
    steps.push(bound_step(
        "for (m,r)=(2,3), s <= 3/2".into(),
        None,
        quadric.specialize(&Point::new().with(Var::R, 3)),
        ratio("3", "2"),
        Shift::new(0, 0, 0),
        Some(1),
    ));
    steps.push(cx.identity_step("G12_2_3_s1")?);
    let g231 = cx.get("G12_2_3_s1")?;
    let step = factor_sign_step("G12(2,3,1)".into(), &g231.factors, [0, 0, 0])?;
    steps.push(require_sign(step, Sign::Positive));
    // (2,3,1) lies outside the candidate region.
    steps.push(require_sign(
        cx.point_eval_step(&RatFunc::from_poly(decisive.clone()), &format!("{decisive} at "), [2, 3, 1])?,
        Sign::Positive,
    ));
    Certificate::new(3, steps).check_transcriptions()
}

pub fn verify_all(appendix: &Appendix) -> Result<[Certificate; 3]> {
    Ok([
        verify_part1(appendix)?,
        verify_part2(appendix)?,
        verify_part3(appendix)?,
    ])
}

/// Which of the three statements a violation contradicts; `0` means the
/// two computation paths disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub part: u8,
    pub m: u32,
    pub r: u32,
    pub s: u32,
    pub slope: Slope,
    pub threshold: Rational,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "part {} at (m,r,s)=({},{},{}): slope {} vs {}: {}",
            self.part, self.m, self.r, self.s, self.slope, self.threshold, self.detail
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub grid: Grid,
    pub triples_checked: usize,
    pub violations: Vec<Violation>,
    /// Triples with slope exactly 6 + 12/(g+1).
    pub equality_witnesses: Vec<(u32, u32, u32)>,
    pub infinite_slopes: Vec<(u32, u32, u32)>,
    /// m = 2 triples with slope below 6 + 12/(g+1).
    pub below_twelve: Vec<(u32, u32, u32)>,
}

impl ScanReport {
    pub fn violations_in(&self, part: u8) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.part == part)
    }
}

struct TripleOutcome {
    triple: (u32, u32, u32),
    violations: Vec<Violation>,
    equality: bool,
    infinite: bool,
    below12: bool,
}

fn check_triple(closed: &ClosedForm, (m, r, s): (u32, u32, u32)) -> Result<TripleOutcome> {
    let p = make_params(m, r, s)?;
    let assembled = Slope::of_class(&assemble_class_per_unit_n(&p)?);
    let slope = closed.slope_at(m, r, s)?;
    let t12 = Threshold::Twelve.at_genus(p.g);
    let t8 = Threshold::Eight.at_genus(p.g);
    let mut violations = Vec::new();
    let mut violation = |part: u8, threshold: &Rational, detail: String| {
        violations.push(Violation {
            part,
            m,
            r,
            s,
            slope: slope.clone(),
            threshold: threshold.clone(),
            detail,
        })
    };
    if assembled != slope {
        violation(0, &t12, format!("assembly gives {assembled}"));
    }
    let mut out = TripleOutcome {
        triple: (m, r, s),
        violations: Vec::new(),
        equality: false,
        infinite: false,
        below12: false,
    };
    match slope.finite() {
        None => {
            out.infinite = true;
            violation(2, &t8, "slope is infinite".into());
        }
        Some(q) => {
            if q <= &t8 {
                violation(2, &t8, "not above 6 + 8/(g+1)".into());
            }
            out.equality = q == &t12;
            if m >= 3 {
                if q < &t12 {
                    violation(1, &t12, "below 6 + 12/(g+1)".into());
                }
                if out.equality && (m, r, s) != (3, 3, 2) {
                    violation(1, &t12, "unexpected equality".into());
                }
            } else {
                out.below12 = q < &t12;
                let candidate = is_candidate(r as u64, s as u64);
                if out.below12 != candidate {
                    violation(
                        3,
                        &t12,
                        format!("below threshold: {}, candidate: {candidate}", out.below12),
                    );
                }
                if out.equality {
                    violation(3, &t12, "unexpected equality".into());
                }
            }
        }
    }
    out.violations = violations;
    Ok(out)
}

/// Evaluate every admissible triple in the grid.
pub fn brute_force_scan(grid: &Grid, appendix: &Appendix) -> Result<ScanReport> {
    if grid.m_max < 2 || grid.r_max < 3 {
        return Err(Error::Domain("need m_max >= 2 and r_max >= 3".into()));
    }
    let closed = ClosedForm::new(appendix)?;
    let triples = admissible_triple_list(grid);
    let outcomes: Vec<TripleOutcome> = triples
        .par_iter()
        .map(|&t| check_triple(&closed, t))
        .collect::<Result<_>>()?;
    let mut report = ScanReport {
        grid: *grid,
        triples_checked: outcomes.len(),
        violations: Vec::new(),
        equality_witnesses: Vec::new(),
        infinite_slopes: Vec::new(),
        below_twelve: Vec::new(),
    };
    for o in outcomes {
        report.violations.extend(o.violations);
        if o.equality {
            report.equality_witnesses.push(o.triple);
        }
        if o.infinite {
            report.infinite_slopes.push(o.triple);
        }
        if o.below12 {
            report.below_twelve.push(o.triple);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_polys() {
        assert_eq!(constraint_poly(4).specialize(&Point::new().with(Var::R, 3)), "22-8*s".parse().unwrap());
        assert_eq!(
            constraint_poly(3),
            "1/6*r^3+r^2-2*r*s-7/6*r+s".parse().unwrap()
        );
    }

    #[test]
    fn bound_claim_rejects_wrong_root() {
        let claim = Claim::Bound {
            poly: "3-2*s".parse().unwrap(),
            var: Var::S,
            bound: RatFunc::constant(2),
            domain: Shift::new(0, 0, 0),
            integer_max: None,
        };
        assert!(claim.check().is_err());
    }

    #[test]
    fn small_scan() {
        let report = brute_force_scan(&Grid::new(4, 12), &Appendix::embedded()).unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        assert_eq!(report.equality_witnesses, vec![(3, 3, 2)]);
        let expected: Vec<_> = admissible_triple_list(&Grid::new(2, 12))
            .into_iter()
            .filter(|&(_, r, s)| is_candidate(r as u64, s as u64))
            .collect();
        assert_eq!(report.below_twelve, expected);
        assert!(expected.contains(&(2, 4, 2)));
    }

    #[test]
    fn quadric_r3_scan() {
        let report = brute_force_scan(&Grid::new(2, 3), &Appendix::embedded()).unwrap();
        assert_eq!(report.triples_checked, 1);
    }
}
