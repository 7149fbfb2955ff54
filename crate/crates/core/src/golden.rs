//! Published orbit tables bundled as CSV: census rows, the fibral counts of
//! `W_1`, the `W_4` table for p ≡ 1 (mod 8), and reductions of the
//! characteristic-zero families.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::P1Elem;
use crate::orbits::{parse_shorthand, CensusRow};

const ORBIT_SIZES: &str = include_str!("../data/orbit_sizes.csv");
const FIBRAL_W1: &str = include_str!("../data/fibral_w1.csv");
const W4_TABLE: &str = include_str!("../data/w4_one_mod_eight.csv");
const REDUCTIONS: &str = include_str!("../data/reductions.csv");

#[derive(Debug, Error)]
pub enum GoldenError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad size list '{0}'")]
    Sizes(String),
    #[error("bad base value '{0}'")]
    Base(String),
}

fn records<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>, GoldenError> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(GoldenError::from))
        .collect()
}

fn sizes(s: &str) -> Result<Vec<usize>, GoldenError> {
    parse_shorthand(s).ok_or_else(|| GoldenError::Sizes(s.to_string()))
}

#[derive(Deserialize)]
struct RawRow {
    p: u64,
    k: u64,
    sizes: String,
}

/// Nontrivial orbit sizes per (p, k), one class representative k per row.
pub fn orbit_sizes() -> Result<Vec<CensusRow>, GoldenError> {
    records::<RawRow>(ORBIT_SIZES)?
        .into_iter()
        .map(|r| {
            Ok(CensusRow {
                p: r.p,
                k: r.k,
                sizes: sizes(&r.sizes)?,
            })
        })
        .collect()
}

/// Golden rows for one prime, in file order.
pub fn orbit_sizes_for(p: u64) -> Result<Vec<CensusRow>, GoldenError> {
    Ok(orbit_sizes()?.into_iter().filter(|r| r.p == p).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibralCell {
    pub t: P1Elem<u64>,
    pub p: u64,
    pub count: usize,
}

#[derive(Deserialize)]
struct RawCell {
    t: String,
    p: u64,
    count: usize,
}

/// Fibral orbit counts on the fibers of `W_1(F_p)`.
pub fn fibral_w1() -> Result<Vec<FibralCell>, GoldenError> {
    records::<RawCell>(FIBRAL_W1)?
        .into_iter()
        .map(|c| {
            let t = match c.t.as_str() {
                "inf" => P1Elem::Infinity,
                s => P1Elem::Finite(s.parse().map_err(|_| GoldenError::Base(s.to_string()))?),
            };
            Ok(FibralCell {
                t,
                p: c.p,
                count: c.count,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct W4Row {
    pub p: u64,
    /// Nontrivial sizes other than the two largest.
    pub small: Vec<usize>,
    pub largest: Vec<usize>,
}

#[derive(Deserialize)]
struct RawW4 {
    p: u64,
    small: String,
    largest: String,
}

pub fn w4_table() -> Result<Vec<W4Row>, GoldenError> {
    records::<RawW4>(W4_TABLE)?
        .into_iter()
        .map(|r| {
            Ok(W4Row {
                p: r.p,
                small: sizes(&r.small)?,
                largest: sizes(&r.largest)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRow {
    pub family: String,
    pub p: u64,
    pub k: u64,
    pub alpha: Option<i64>,
    pub beta: Option<i64>,
    pub gamma: Option<i64>,
    pub size: usize,
    pub exception: Option<String>,
}

pub fn reductions() -> Result<Vec<ReductionRow>, GoldenError> {
    records(REDUCTIONS)
}

/// A golden row whose sizes differ from the computed ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub p: u64,
    pub k: u64,
    pub expected: Vec<usize>,
    pub found: Option<Vec<usize>>,
}

/// Compares computed rows against golden rows for the same primes. Golden
/// rows for primes not computed are skipped, as are computed k absent from
/// the golden data.
pub fn diff(computed: &[CensusRow], golden: &[CensusRow]) -> Vec<Mismatch> {
    golden
        .iter()
        .filter(|g| computed.iter().any(|c| c.p == g.p))
        .filter_map(|g| {
            let found = computed.iter().find(|c| c.p == g.p && c.k == g.k);
            match found {
                Some(c) if c.sizes == g.sizes => None,
                _ => Some(Mismatch {
                    p: g.p,
                    k: g.k,
                    expected: g.sizes.clone(),
                    found: found.map(|c| c.sizes.clone()),
                }),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        let rows = orbit_sizes().unwrap();
        let r = rows.iter().find(|r| r.p == 53 && r.k == 1).unwrap();
        assert_eq!(r.sizes, vec![24, 24, 48, 3456]);
        assert_eq!(orbit_sizes_for(113).unwrap().len(), 28);
        assert!(fibral_w1().unwrap().iter().any(|c| c.p == 5 && c.t == P1Elem::Finite(0) && c.count == 3));
        let w4 = w4_table().unwrap();
        assert_eq!(w4.last().unwrap().largest, vec![6656, 7488]);
        assert_eq!(reductions().unwrap().len(), 26);
    }

    #[test]
    fn golden_sizes_are_sorted() {
        for r in orbit_sizes().unwrap() {
            assert!(r.sizes.windows(2).all(|w| w[0] <= w[1]), "p={} k={}", r.p, r.k);
        }
    }

    #[test]
    fn diff_reports_missing_and_wrong() {
        let golden = vec![
            CensusRow { p: 7, k: 1, sizes: vec![64] },
            CensusRow { p: 7, k: 2, sizes: vec![4, 48] },
            CensusRow { p: 11, k: 1, sizes: vec![1] },
        ];
        let computed = vec![CensusRow { p: 7, k: 1, sizes: vec![64] }, CensusRow { p: 7, k: 3, sizes: vec![] }];
        let d = diff(&computed, &golden);
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].k, d[0].found.clone()), (2, None));
    }
}
