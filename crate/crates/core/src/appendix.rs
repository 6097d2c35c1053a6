//! Transcribed closed-form expressions.
//!
//! Each expression lives in its own text file under `appendix_formulas/`.
//! The files are compiled into the crate; a directory on disk can be used
//! instead so a transcription can be fixed without rebuilding.
//!
//! File format, one directive per line (`#` starts a comment):
//!
//! ```text
//! target: G12                    # a | b0 | G12 | G8 | constraint | bound | extremal
//! bind: m=m+4 r=r+4 s=s+1        # per variable: x=x, x=x+k or x=<integer>
//! scalar: N                      # optional, documents an omitted positive factor
//! num: 6+r+s                     # numerator factor
//! den: 4+m                       # denominator factor
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Factor, FactorList, MultiPoly, Point, RatFunc, Shift, Var};

const EMBEDDED: &[(&str, &str)] = &[
    ("a", include_str!("../appendix_formulas/a.txt")),
    ("b0", include_str!("../appendix_formulas/b0.txt")),
    ("G12_m4_r4_s1", include_str!("../appendix_formulas/G12_m4_r4_s1.txt")),
    ("G12_3_r3_s1", include_str!("../appendix_formulas/G12_3_r3_s1.txt")),
    ("constraint_m3", include_str!("../appendix_formulas/constraint_m3.txt")),
    ("bound_m3", include_str!("../appendix_formulas/bound_m3.txt")),
    ("extremal_m3", include_str!("../appendix_formulas/extremal_m3.txt")),
    ("G12_m5_3_s1", include_str!("../appendix_formulas/G12_m5_3_s1.txt")),
    ("constraint_m4_r3", include_str!("../appendix_formulas/constraint_m4_r3.txt")),
    ("G12_4_3_s", include_str!("../appendix_formulas/G12_4_3_s.txt")),
    ("G8_m2_r5_s1", include_str!("../appendix_formulas/G8_m2_r5_s1.txt")),
    ("G8_m2_4_s2", include_str!("../appendix_formulas/G8_m2_4_s2.txt")),
    ("G8_m2_4_1", include_str!("../appendix_formulas/G8_m2_4_1.txt")),
    ("G8_m3_3_s1", include_str!("../appendix_formulas/G8_m3_3_s1.txt")),
    ("constraint_m2_r3", include_str!("../appendix_formulas/constraint_m2_r3.txt")),
    ("G12_2_r_s", include_str!("../appendix_formulas/G12_2_r_s.txt")),
    ("G12_2_3_s1", include_str!("../appendix_formulas/G12_2_3_s1.txt")),
    ("G12_2_r4_s1", include_str!("../appendix_formulas/G12_2_r4_s1.txt")),
    ("bound_part3", include_str!("../appendix_formulas/bound_part3.txt")),
];

/// How one variable of a transcription relates to the original variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VarBinding {
    /// original = local + k
    Shift(u32),
    /// original = fixed integer; the local variable does not occur
    Fixed(i64),
}

/// Substitution taking an expression in (m, r, s) to the local
/// coordinates a transcription is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binding {
    pub m: VarBinding,
    pub r: VarBinding,
    pub s: VarBinding,
}

impl Binding {
    pub fn identity() -> Binding {
        Binding {
            m: VarBinding::Shift(0),
            r: VarBinding::Shift(0),
            s: VarBinding::Shift(0),
        }
    }

    pub fn get(&self, v: Var) -> VarBinding {
        match v {
            Var::M => self.m,
            Var::R => self.r,
            Var::S => self.s,
        }
    }

    fn fixed_point(&self) -> Point {
        Var::ALL.iter().fold(Point::new(), |p, &v| match self.get(v) {
            VarBinding::Fixed(x) => p.with(v, x),
            VarBinding::Shift(_) => p,
        })
    }

    fn shift(&self) -> Shift {
        let by = |v| match self.get(v) {
            VarBinding::Shift(k) => k,
            VarBinding::Fixed(_) => 0,
        };
        Shift::new(by(Var::M), by(Var::R), by(Var::S))
    }

    /// Fix the pinned variables, then shift the rest.
    pub fn apply(&self, f: &RatFunc) -> Result<RatFunc> {
        Ok(f.specialize(&self.fixed_point())?.shift(&self.shift()))
    }

    pub fn apply_poly(&self, p: &MultiPoly) -> MultiPoly {
        p.specialize(&self.fixed_point()).shift(&self.shift())
    }

    /// Map a point in local coordinates to the original triple.
    pub fn to_original(&self, local: [i64; 3]) -> [i64; 3] {
        let mut out = [0; 3];
        for v in Var::ALL {
            out[v.index()] = match self.get(v) {
                VarBinding::Shift(k) => local[v.index()] + k as i64,
                VarBinding::Fixed(x) => x,
            };
        }
        out
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Var::ALL
            .iter()
            .map(|&v| match self.get(v) {
                VarBinding::Shift(0) => v.name().to_string(),
                VarBinding::Shift(k) => format!("{v}+{k}"),
                VarBinding::Fixed(x) => x.to_string(),
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Binding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Binding> {
        let mut b = Binding::identity();
        for part in s.split_whitespace() {
            let bad = || Error::Parse(format!("bad binding {part:?}"));
            let (lhs, rhs) = part.split_once('=').ok_or_else(bad)?;
            let v = match lhs {
                "m" => Var::M,
                "r" => Var::R,
                "s" => Var::S,
                _ => return Err(bad()),
            };
            let value = if rhs == lhs {
                VarBinding::Shift(0)
            } else if let Some(k) = rhs.strip_prefix(lhs).and_then(|t| t.strip_prefix('+')) {
                VarBinding::Shift(k.parse().map_err(|_| bad())?)
            } else {
                VarBinding::Fixed(rhs.parse().map_err(|_| bad())?)
            };
            match v {
                Var::M => b.m = value,
                Var::R => b.r = value,
                Var::S => b.s = value,
            }
        }
        Ok(b)
    }
}

/// What a transcribed expression claims to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    /// lambda-coefficient divided by N
    A,
    /// delta_0-coefficient divided by N
    B0,
    /// slope minus 6 + 12/(g+1)
    Gap12,
    /// slope minus 6 + 8/(g+1)
    Gap8,
    /// C(r+m, m) - (md - g + 1)
    Constraint,
    /// an upper bound on s solving a linear constraint
    Bound,
    /// a factor evaluated at an extremal value of s
    Extremal,
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Target> {
        Ok(match s {
            "a" => Target::A,
            "b0" => Target::B0,
            "G12" => Target::Gap12,
            "G8" => Target::Gap8,
            "constraint" => Target::Constraint,
            "bound" => Target::Bound,
            "extremal" => Target::Extremal,
            _ => return Err(Error::Parse(format!("unknown target {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Transcription {
    pub name: String,
    pub target: Target,
    pub binding: Binding,
    pub factors: FactorList,
}

impl Transcription {
    pub fn parse(name: &str, text: &str) -> Result<Transcription> {
        let err = |reason: String| Error::Transcription {
            name: name.to_string(),
            reason,
        };
        let mut target = None;
        let mut binding = Binding::identity();
        let mut factors = FactorList::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| err(format!("line {}: expected `key: value`", lineno + 1)))?;
            let value = value.trim();
            let located = |e: Error| err(format!("line {}: {e}", lineno + 1));
            match key.trim() {
                "target" => target = Some(value.parse().map_err(located)?),
                "bind" => binding = value.parse().map_err(located)?,
                "scalar" => {}
                "num" => factors.push(Factor::num(value.parse().map_err(located)?)),
                "den" => {
                    let poly: MultiPoly = value.parse().map_err(located)?;
                    if poly.is_zero() {
                        return Err(err(format!("line {}: zero denominator", lineno + 1)));
                    }
                    factors.push(Factor::den(poly))
                }
                other => return Err(err(format!("line {}: unknown key {other:?}", lineno + 1))),
            }
        }
        let target = target.ok_or_else(|| err("missing `target:`".into()))?;
        if factors.factors.is_empty() {
            return Err(err("no factors".into()));
        }
        Ok(Transcription {
            name: name.to_string(),
            target,
            binding,
            factors,
        })
    }

    pub fn expanded(&self) -> RatFunc {
        self.factors
            .expand()
            .expect("denominator factors are nonzero by construction")
    }

    /// Human-readable label such as `G12(m+4,r+4,s+1)`.
    pub fn label(&self) -> String {
        let head = match self.target {
            Target::A => "a/N",
            Target::B0 => "b0/N",
            Target::Gap12 => "G12",
            Target::Gap8 => "G8",
            Target::Constraint => "constraint",
            Target::Bound => "bound",
            Target::Extremal => "extremal",
        };
        format!("{head}{}", self.binding)
    }
}

/// Where to read transcriptions from.
#[derive(Clone, Debug, Default)]
pub enum Source {
    #[default]
    Embedded,
    Directory(PathBuf),
}

/// The full set of transcriptions, keyed by file stem.
#[derive(Clone, Debug)]
pub struct Appendix {
    entries: BTreeMap<String, Transcription>,
}

impl Appendix {
    pub fn embedded() -> Appendix {
        Appendix::load(&Source::Embedded).expect("embedded transcriptions parse")
    }

    pub fn load(source: &Source) -> Result<Appendix> {
        let mut entries = BTreeMap::new();
        match source {
            Source::Embedded => {
                for (name, text) in EMBEDDED {
                    entries.insert(name.to_string(), Transcription::parse(name, text)?);
                }
            }
            Source::Directory(dir) => {
                for (name, path) in list_dir(dir)? {
                    let text = std::fs::read_to_string(&path)?;
                    entries.insert(name.clone(), Transcription::parse(&name, &text)?);
                }
            }
        }
        Ok(Appendix { entries })
    }

    pub fn get(&self, name: &str) -> Result<&Transcription> {
        self.entries.get(name).ok_or_else(|| Error::Transcription {
            name: name.to_string(),
            reason: "not found".into(),
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn list_dir(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "txt") {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                out.push((stem.to_string(), path.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Raw text of the embedded transcription files, keyed by name.
pub fn embedded_files() -> impl Iterator<Item = (&'static str, &'static str)> {
    EMBEDDED.iter().copied()
}

/// Names of the embedded transcription files, in display order.
pub fn embedded_names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}
