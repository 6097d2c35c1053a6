//! Admissible triples, candidate genera for slope below `6 + 12/(g+1)`,
//! their counting function, and which invariant divisor exists for a triple.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::brill_noether::{make_params, nh_holds, BNParams};
use crate::divisor_class::{ClosedForm, Slope, Threshold};
use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// `1 - (1 + log(log 2))/log 2`, to six places.
pub const DENSITY_DELTA: f64 = 0.086071;

/// Bounds of a scan. Only m and r are bounded by the theory; for m >= 3
/// the admissible s-range grows polynomially in r, so it is capped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub m_max: u32,
    pub r_max: u32,
    pub s_max: u32,
}

impl Grid {
    /// `s_max` defaults to `r_max`, which covers every m = 2 triple.
    pub fn new(m_max: u32, r_max: u32) -> Grid {
        Grid {
            m_max,
            r_max,
            s_max: r_max,
        }
    }

    pub fn with_s_max(mut self, s_max: u32) -> Grid {
        self.s_max = s_max;
        self
    }
}

fn triples_for(m: u32, r: u32, s_max: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    // e = mr + 1 + s(mr - r - 1) grows with s, so admissibility fails from
    // the first bad s onwards.
    (1..=s_max)
        .take_while(move |&s| nh_holds(m, r, s))
        .map(move |s| (m, r, s))
}

/// Admissible triples in the grid, in lexicographic (m, r, s) order.
pub fn admissible_triple_list(grid: &Grid) -> Vec<(u32, u32, u32)> {
    (2..=grid.m_max)
        .flat_map(|m| (3..=grid.r_max).flat_map(move |r| triples_for(m, r, grid.s_max)))
        .collect()
}

/// Same as [`admissible_triple_list`], as validated parameters.
pub fn admissible_triples(grid: &Grid) -> impl Iterator<Item = BNParams> {
    admissible_triple_list(grid)
        .into_iter()
        .map(|(m, r, s)| make_params(m, r, s).expect("admissible by construction"))
}

/// `(r^2+1)/(3r-1) < s <= r/2`, compared in integers.
pub fn is_candidate(r: u64, s: u64) -> bool {
    r >= 1 && r * r + 1 < s * (3 * r - 1) && 2 * s <= r
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub r: u32,
    pub s: u32,
    pub d: u64,
    pub slope: Slope,
    /// slope - (6 + 12/(g+1)), negative for every witness
    pub gap12: Slope,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateRecord {
    pub g: u64,
    pub witnesses: Vec<Witness>,
    /// Minimum slope over the witnesses (all at m = 2).
    pub slope: Slope,
}

fn candidate_pairs(g_max: u64) -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    let mut r = 3u64;
    // s > (r^2+1)/(3r-1) > r/3, so the smallest genus for r exceeds r(r+1)/3.
    while r * (r + 1) / 3 <= g_max {
        let s_lo = (r * r + 1) / (3 * r - 1) + 1;
        for s in s_lo..=r / 2 {
            if (r + 1) * s > g_max {
                break;
            }
            if is_candidate(r, s) {
                pairs.push((r, s));
            }
        }
        r += 1;
    }
    pairs
}

/// Genera g <= g_max admitting an m = 2 divisor with slope below
/// `6 + 12/(g+1)`, sorted by g, witnesses sorted by r.
pub fn candidate_genera(g_max: u64, closed: &ClosedForm) -> Result<Vec<CandidateRecord>> {
    let pairs = candidate_pairs(g_max);
    let witnesses: Vec<(u64, Witness)> = pairs
        .par_iter()
        .map(|&(r, s)| {
            let (r32, s32) = (narrow(r)?, narrow(s)?);
            let g = (r + 1) * s;
            let slope = closed.slope_at(2, r32, s32)?;
            Ok((
                g,
                Witness {
                    r: r32,
                    s: s32,
                    d: r * (s + 1),
                    gap12: slope.gap(&Threshold::Twelve.at_genus(g)),
                    slope,
                },
            ))
        })
        .collect::<Result<_>>()?;
    let mut by_genus: BTreeMap<u64, Vec<Witness>> = BTreeMap::new();
    for (g, w) in witnesses {
        by_genus.entry(g).or_default().push(w);
    }
    Ok(by_genus
        .into_iter()
        .map(|(g, mut witnesses)| {
            witnesses.sort_by_key(|w| w.r);
            let slope = witnesses
                .iter()
                .map(|w| w.slope.clone())
                .min_by(|a, b| match (a, b) {
                    (Slope::Finite(x), Slope::Finite(y)) => x.cmp(y),
                    (Slope::Finite(_), Slope::Infinite) => std::cmp::Ordering::Less,
                    (Slope::Infinite, Slope::Finite(_)) => std::cmp::Ordering::Greater,
                    (Slope::Infinite, Slope::Infinite) => std::cmp::Ordering::Equal,
                })
                .expect("nonempty");
            CandidateRecord {
                g,
                witnesses,
                slope,
            }
        })
        .collect())
}

/// Candidate genera only, without slopes.
pub fn candidate_genus_set(g_max: u64) -> Vec<u64> {
    let mut gs: Vec<u64> = candidate_pairs(g_max)
        .into_iter()
        .map(|(r, s)| (r + 1) * s)
        .collect();
    gs.sort_unstable();
    gs.dedup();
    gs
}

fn narrow(x: u64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::Domain(format!("{x} does not fit in 32 bits")))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountRow {
    pub g_upper: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountingTable {
    pub g_max: u64,
    pub buckets: u64,
    pub delta: String,
    pub rows: Vec<CountRow>,
}

/// Cumulative number of candidate genera up to evenly spaced bounds.
pub fn counting_table(g_max: u64, buckets: u64) -> Result<CountingTable> {
    if g_max == 0 || buckets == 0 {
        return Err(Error::Domain("g_max and buckets must be positive".into()));
    }
    let buckets = buckets.min(g_max);
    let genera = candidate_genus_set(g_max);
    let rows = (1..=buckets)
        .map(|i| {
            let g_upper = (g_max * i).div_ceil(buckets);
            let count = genera.partition_point(|&g| g <= g_upper) as u64;
            CountRow { g_upper, count }
        })
        .collect();
    Ok(CountingTable {
        g_max,
        buckets,
        delta: format!("{DENSITY_DELTA:.6}"),
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExistenceCase {
    /// C(r+m,m) = e: maps not of full rank
    RankDrop,
    /// C(r+m,m) = e + 1: the discriminant-type hypersurface
    Discriminant,
    /// C(r+m,m) >= e + 2: closure of a family of orbits
    OrbitCodim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorExistence {
    pub case: ExistenceCase,
    /// C(r+m, m)
    #[serde(serialize_with = "decimal")]
    pub forms: BigUint,
    pub e: u64,
    /// forms - e: hypersurfaces of degree m containing the curve
    #[serde(serialize_with = "decimal")]
    pub containing: BigUint,
    /// dim Hom(Sym^m C^{r+1}, C^e)
    #[serde(serialize_with = "decimal")]
    pub hom_dim: BigUint,
    /// dim GL_{r+1} x GL_e
    #[serde(serialize_with = "decimal")]
    pub group_dim: BigUint,
}

fn decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn classify_divisor_existence(p: &BNParams) -> Result<DivisorExistence> {
    let forms = p.hypersurface_dim();
    let e = BigUint::from(p.e);
    let r1 = BigUint::from(p.r as u64 + 1);
    let hom_dim = &forms * &e;
    let group_dim = &r1 * &r1 + &e * &e;
    let case = if forms == e {
        ExistenceCase::RankDrop
    } else if forms == &e + 1u32 {
        ExistenceCase::Discriminant
    } else {
        if hom_dim < group_dim {
            return Err(Error::DimensionCheckFailed {
                hom: hom_dim.to_string(),
                groups: group_dim.to_string(),
            });
        }
        ExistenceCase::OrbitCodim
    };
    Ok(DivisorExistence {
        case,
        containing: &forms - &e,
        forms,
        e: p.e,
        hom_dim,
        group_dim,
    })
}

/// Delta to six places, as a rational.
pub fn density_delta() -> Rational {
    Rational::new(86071, 1_000_000u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::appendix::Appendix;

    #[test]
    fn quadric_s_range() {
        let grid = Grid::new(2, 6);
        let s: Vec<u32> = admissible_triple_list(&grid)
            .into_iter()
            .filter(|t| t.1 == 6)
            .map(|t| t.2)
            .collect();
        assert_eq!(s, vec![1, 2, 3]);
    }

    #[test]
    fn cubic_r3_range() {
        let grid = Grid::new(3, 3);
        let s: Vec<u32> = admissible_triple_list(&grid)
            .into_iter()
            .filter(|t| t.0 == 3)
            .map(|t| t.2)
            .collect();
        assert_eq!(s, vec![1, 2]);
    }

    #[test]
    fn excluded_quartic() {
        let grid = Grid::new(4, 3).with_s_max(10);
        assert!(!admissible_triple_list(&grid).contains(&(4, 3, 3)));
        assert!(admissible_triple_list(&grid).contains(&(4, 3, 2)));
    }

    #[test]
    fn lexicographic_order() {
        let list = admissible_triple_list(&Grid::new(4, 12));
        let mut sorted = list.clone();
        sorted.sort();
        assert_eq!(list, sorted);
    }

    #[test]
    fn genera_up_to_30() {
        let cf = ClosedForm::new(&Appendix::embedded()).unwrap();
        let recs = candidate_genera(30, &cf).unwrap();
        let gs: Vec<u64> = recs.iter().map(|c| c.g).collect();
        assert_eq!(gs, vec![10, 12, 21, 24, 27]);
        let w: Vec<(u32, u32)> = recs.iter().map(|c| (c.witnesses[0].r, c.witnesses[0].s)).collect();
        assert_eq!(w, vec![(4, 2), (5, 2), (6, 3), (7, 3), (8, 3)]);
        assert_eq!(recs[0].slope, Slope::Finite(Rational::from(7)));
    }

    #[test]
    fn boundary_strictness() {
        // s = r/2 is included, s = (r^2+1)/(3r-1) is not: r = 7 gives 50/20.
        assert!(is_candidate(4, 2));
        assert!(!is_candidate(3, 1));
        assert!(!is_candidate(6, 2));
    }

    #[test]
    fn counting() {
        let t = counting_table(30, 3).unwrap();
        assert_eq!(t.rows.last().unwrap().count, 5);
        assert_eq!(t.delta, "0.086071");
        assert_eq!(
            t.rows.iter().map(|r| r.g_upper).collect::<Vec<_>>(),
            vec![10, 20, 30]
        );
    }

    #[test]
    fn existence_cases() {
        let c = |m, r, s| classify_divisor_existence(&make_params(m, r, s).unwrap()).unwrap();
        assert_eq!(c(2, 4, 2).case, ExistenceCase::RankDrop);
        let e = c(2, 8, 3);
        assert_eq!(e.case, ExistenceCase::OrbitCodim);
        assert_eq!(e.containing, BigUint::from(7u32));
        let e = c(2, 5, 2);
        assert_eq!(e.case, ExistenceCase::OrbitCodim);
        assert_eq!(e.hom_dim, BigUint::from(399u32));
        assert_eq!(e.group_dim, BigUint::from(397u32));
        assert_eq!(c(2, 3, 1).case, ExistenceCase::Discriminant);
    }
}
