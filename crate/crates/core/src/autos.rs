//! Automorphism generators: the sheet swaps σ₁, σ₂, σ₃, the 24 signed
//! permutations of the group 𝒢°, and the optional δ-inversions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::Field;
use crate::geometry::{P1Elem, P1Triple, Surface};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutoError {
    #[error("coordinate quadratic vanishes identically at {0}")]
    DegenerateFiber(String),
    #[error("point {0} is not on the surface")]
    NotOnSurface(String),
    #[error("twist factor is not a fourth root of unity")]
    BadTwist,
    #[error("bad generator '{0}'")]
    Parse(String),
}

/// One generator. `Circ` sends `(P₁,P₂,P₃)` to `(s₁P_{perm[0]}, s₂P_{perm[1]}, s₃P_{perm[2]})`
/// (0-based `perm`); `Delta` inverts the coordinates whose pattern entry is −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Sigma(usize),
    Circ { perm: [usize; 3], signs: [i8; 3] },
    Delta([i8; 3]),
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];
const SIGNS: [[i8; 3]; 4] = [[1, 1, 1], [-1, -1, 1], [-1, 1, -1], [1, -1, -1]];

fn pair_pattern(i: usize, j: usize) -> [i8; 3] {
    std::array::from_fn(|c| if c + 1 == i || c + 1 == j { -1 } else { 1 })
}

impl Generator {
    pub const IDENTITY: Generator = Generator::Circ {
        perm: [0, 1, 2],
        signs: [1, 1, 1],
    };

    /// Transposition τ_ij of axes `i, j` ∈ {1,2,3}.
    pub fn tau(i: usize, j: usize) -> Generator {
        let mut perm = [0, 1, 2];
        perm.swap(i - 1, j - 1);
        Generator::Circ {
            perm,
            signs: [1, 1, 1],
        }
    }

    /// Sign change ε_ij negating axes `i, j`.
    pub fn eps(i: usize, j: usize) -> Generator {
        Generator::Circ {
            perm: [0, 1, 2],
            signs: pair_pattern(i, j),
        }
    }

    /// δ_ij inverting axes `i, j`.
    pub fn delta(i: usize, j: usize) -> Generator {
        Generator::Delta(pair_pattern(i, j))
    }

    /// Composite `self` then `other`, when both are `Circ`.
    pub fn then(&self, other: &Generator) -> Option<Generator> {
        match (self, other) {
            (
                Generator::Circ { perm: p1, signs: s1 },
                Generator::Circ { perm: p2, signs: s2 },
            ) => Some(Generator::Circ {
                perm: std::array::from_fn(|j| p1[p2[j]]),
                signs: std::array::from_fn(|j| s2[j] * s1[p2[j]]),
            }),
            _ => None,
        }
    }

    pub fn apply<F: Field>(
        &self,
        w: &Surface<F>,
        p: &P1Triple<F::Elem>,
    ) -> Result<P1Triple<F::Elem>, AutoError> {
        match self {
            Generator::Sigma(axis) => apply_sigma(w, p, *axis),
            _ => Ok(self.apply_linear(w.field(), p)),
        }
    }

    /// Applies a `Circ` or `Delta` generator, which need no surface.
    ///
    /// # Panics
    /// On `Sigma`.
    pub fn apply_linear<F: Field>(&self, f: &F, p: &P1Triple<F::Elem>) -> P1Triple<F::Elem> {
        match self {
            Generator::Circ { perm, signs } => apply_circ(f, *perm, *signs, p),
            Generator::Delta(pattern) => apply_delta(f, *pattern, p),
            Generator::Sigma(_) => panic!("sigma needs a surface"),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pair = |pat: &[i8; 3]| {
            let idx: Vec<String> = (0..3)
                .filter(|&c| pat[c] < 0)
                .map(|c| (c + 1).to_string())
                .collect();
            idx.concat()
        };
        match self {
            Generator::Sigma(a) => write!(f, "s{a}"),
            Generator::Circ { perm, signs } => {
                if *signs == [1, 1, 1] && *perm == [0, 1, 2] {
                    return write!(f, "id");
                }
                if *signs == [1, 1, 1] {
                    let moved: Vec<usize> = (0..3).filter(|&c| perm[c] != c).collect();
                    if moved.len() == 2 {
                        return write!(f, "t{}{}", moved[0] + 1, moved[1] + 1);
                    }
                }
                if *perm == [0, 1, 2] {
                    return write!(f, "e{}", pair(signs));
                }
                let s: String = signs.iter().map(|&v| if v < 0 { '-' } else { '+' }).collect();
                write!(f, "c{}{}{}{s}", perm[0] + 1, perm[1] + 1, perm[2] + 1)
            }
            Generator::Delta(pat) => {
                if *pat == [1, 1, 1] {
                    write!(f, "id")
                } else {
                    write!(f, "d{}", pair(pat))
                }
            }
        }
    }
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let b = s.as_bytes();
    if b.len() != 2 {
        return None;
    }
    let (i, j) = ((b[0] as char).to_digit(10)?, (b[1] as char).to_digit(10)?);
    let (i, j) = (i as usize, j as usize);
    (i < j && (1..=3).contains(&i) && (1..=3).contains(&j)).then_some((i, j))
}

impl FromStr for Generator {
    type Err = AutoError;

    /// `s1 s2 s3`, `t12 t13 t23`, `e12 e13 e23`, `d12 d13 d23`, `id`, and
    /// `c<perm><signs>` such as `c231+--` for a general signed permutation.
    fn from_str(s: &str) -> Result<Self, AutoError> {
        let bad = || AutoError::Parse(s.to_string());
        if s == "id" {
            return Ok(Generator::IDENTITY);
        }
        let (head, rest) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        match head {
            "s" => match rest {
                "1" | "2" | "3" => Ok(Generator::Sigma(rest.parse().expect("digit"))),
                _ => Err(bad()),
            },
            "t" => parse_pair(rest).map(|(i, j)| Generator::tau(i, j)).ok_or_else(bad),
            "e" => parse_pair(rest).map(|(i, j)| Generator::eps(i, j)).ok_or_else(bad),
            "d" => parse_pair(rest).map(|(i, j)| Generator::delta(i, j)).ok_or_else(bad),
            "c" if rest.len() == 6 => {
                let b = rest.as_bytes();
                let perm: Vec<usize> = b[..3]
                    .iter()
                    .filter_map(|&c| (c as char).to_digit(10))
                    .map(|d| d as usize)
                    .filter(|d| (1..=3).contains(d))
                    .map(|d| d - 1)
                    .collect();
                let signs: Vec<i8> = b[3..]
                    .iter()
                    .filter_map(|&c| match c {
                        b'+' => Some(1),
                        b'-' => Some(-1),
                        _ => None,
                    })
                    .collect();
                if perm.len() != 3 || signs.len() != 3 {
                    return Err(bad());
                }
                let perm = [perm[0], perm[1], perm[2]];
                let signs = [signs[0], signs[1], signs[2]];
                let mut sorted = perm;
                sorted.sort();
                if sorted != [0, 1, 2] || signs.iter().product::<i8>() != 1 {
                    return Err(bad());
                }
                Ok(Generator::Circ { perm, signs })
            }
            _ => Err(bad()),
        }
    }
}

/// A word in the generators, applied left to right; empty is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupWord(pub Vec<Generator>);

impl GroupWord {
    pub fn apply<F: Field>(
        &self,
        w: &Surface<F>,
        p: &P1Triple<F::Elem>,
    ) -> Result<P1Triple<F::Elem>, AutoError> {
        self.0.iter().try_fold(p.clone(), |q, g| g.apply(w, &q))
    }

    /// Every intermediate point, starting with `p`.
    pub fn trace<F: Field>(
        &self,
        w: &Surface<F>,
        p: &P1Triple<F::Elem>,
    ) -> Result<Vec<P1Triple<F::Elem>>, AutoError> {
        let mut out = vec![p.clone()];
        for g in &self.0 {
            let next = g.apply(w, out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }
}

impl FromStr for GroupWord {
    type Err = AutoError;

    fn from_str(s: &str) -> Result<Self, AutoError> {
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(GroupWord)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The sheet swap along `axis`: the other root of the coordinate quadratic.
pub fn apply_sigma<F: Field>(
    w: &Surface<F>,
    p: &P1Triple<F::Elem>,
    axis: usize,
) -> Result<P1Triple<F::Elem>, AutoError> {
    let f = w.field();
    if !w.contains(p) {
        return Err(AutoError::NotOnSurface(p.format(f)));
    }
    let q = w.form().coord_quadratic(f, p, axis);
    if q.is_identically_zero(f) {
        return Err(AutoError::DegenerateFiber(p.format(f)));
    }
    let new = if !f.is_zero(&q.q20) {
        let v = p
            .coord(axis)
            .finite()
            .expect("infinity is a root only when q20 = 0");
        let s = f.div(&q.q11, &q.q20).expect("q20 != 0");
        P1Elem::Finite(f.sub(&f.neg(&s), v))
    } else if !f.is_zero(&q.q11) {
        match p.coord(axis) {
            P1Elem::Infinity => {
                P1Elem::Finite(f.neg(&f.div(&q.q02, &q.q11).expect("q11 != 0")))
            }
            P1Elem::Finite(_) => P1Elem::Infinity,
        }
    } else {
        P1Elem::Infinity
    };
    Ok(p.with_coord(axis, new))
}

pub fn apply_circ<F: Field>(
    f: &F,
    perm: [usize; 3],
    signs: [i8; 3],
    p: &P1Triple<F::Elem>,
) -> P1Triple<F::Elem> {
    P1Triple(std::array::from_fn(|j| {
        let c = &p.0[perm[j]];
        if signs[j] < 0 {
            c.neg(f)
        } else {
            c.clone()
        }
    }))
}

pub fn apply_delta<F: Field>(f: &F, pattern: [i8; 3], p: &P1Triple<F::Elem>) -> P1Triple<F::Elem> {
    P1Triple(std::array::from_fn(|j| {
        if pattern[j] < 0 {
            p.0[j].inv(f)
        } else {
            p.0[j].clone()
        }
    }))
}

/// All 24 elements of 𝒢°.
pub fn circ_elements() -> Vec<Generator> {
    PERMS
        .iter()
        .flat_map(|&perm| SIGNS.iter().map(move |&signs| Generator::Circ { perm, signs }))
        .collect()
}

/// The four δ patterns, the identity pattern first.
pub fn delta_elements() -> Vec<Generator> {
    SIGNS.iter().map(|&s| Generator::Delta(s)).collect()
}

/// σ₁, σ₂, σ₃ and the 24 elements of 𝒢°, plus the δ-inversions if asked.
pub fn default_generators(with_deltas: bool) -> Vec<Generator> {
    let mut g: Vec<Generator> = (1..=3).map(Generator::Sigma).collect();
    g.extend(circ_elements());
    if with_deltas {
        g.extend(delta_elements());
    }
    g
}

/// A small generating set for the same group as [`default_generators`]:
/// the σ's with τ₁₂, τ₂₃, ε₁₂, ε₁₃ (and δ₁₂, δ₁₃).
pub fn compact_generators(with_deltas: bool) -> Vec<Generator> {
    let mut g = vec![
        Generator::Sigma(1),
        Generator::Sigma(2),
        Generator::Sigma(3),
        Generator::tau(1, 2),
        Generator::tau(2, 3),
        Generator::eps(1, 2),
        Generator::eps(1, 3),
    ];
    if with_deltas {
        g.push(Generator::delta(1, 2));
        g.push(Generator::delta(1, 3));
    }
    g
}

/// Generators of the group preserving the fibers over `axis`.
pub fn fibral_generators(axis: usize) -> Vec<Generator> {
    let (j, k) = match axis {
        1 => (2, 3),
        2 => (1, 3),
        _ => (1, 2),
    };
    vec![
        Generator::Sigma(j),
        Generator::Sigma(k),
        Generator::tau(j, k),
        Generator::eps(j, k),
    ]
}

/// `(x,y,z) ↦ (ζx, ζy, ζz)`, carrying `W_k` to `W_{ζ³k}`.
pub fn wk_twist<F: Field>(
    f: &F,
    p: &P1Triple<F::Elem>,
    zeta: &F::Elem,
) -> Result<P1Triple<F::Elem>, AutoError> {
    if !f.is_one(&f.pow(zeta, 4)) {
        return Err(AutoError::BadTwist);
    }
    Ok(P1Triple(std::array::from_fn(|j| p.0[j].scale(f, zeta))))
}
