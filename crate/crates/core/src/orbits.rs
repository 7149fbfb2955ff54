//! Orbits of the automorphism group: closures from seeds over any field,
//! full and fibral decompositions of `W(F_p)`, and census rows.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autos::{apply_sigma, compact_generators, fibral_generators, AutoError, Generator};
use crate::fields::{Field, FieldError, PrimeField};
use crate::geometry::{enumerate_points, GeometryError, P1Elem, P1Triple, Surface, WkSurface};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("orbit exceeded the cap of {0} points")]
    OrbitCapExceeded(usize),
    #[error(transparent)]
    Auto(#[from] AutoError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("thread pool: {0}")]
    Pool(String),
}

/// Least generator-closed set containing `seeds`, sorted. Breadth-first with
/// an explicit queue; fails once more than `cap` points have been found.
pub fn orbit_closure<F: Field>(
    w: &Surface<F>,
    seeds: &[P1Triple<F::Elem>],
    generators: &[Generator],
    cap: usize,
) -> Result<Vec<P1Triple<F::Elem>>, OrbitError> {
    let mut seen: HashSet<P1Triple<F::Elem>> = HashSet::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if !w.contains(s) {
            return Err(AutoError::NotOnSurface(s.format(w.field())).into());
        }
        if seen.insert(s.clone()) {
            queue.push_back(s.clone());
        }
    }
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = g.apply(w, &p)?;
            if !seen.contains(&q) {
                if seen.len() >= cap {
                    return Err(OrbitError::OrbitCapExceeded(cap));
                }
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    /// Least member in enumeration order.
    pub representative: P1Triple<u64>,
    pub size: usize,
    /// Ascending indices into [`OrbitDecomposition::points`].
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    pub points: Vec<P1Triple<u64>>,
    /// Sorted by representative.
    pub orbits: Vec<Orbit>,
}

impl OrbitDecomposition {
    pub fn total(&self) -> usize {
        self.points.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits.iter().map(|o| o.size).collect();
        s.sort_unstable();
        s
    }

    pub fn orbit_of(&self, p: &P1Triple<u64>) -> Option<&Orbit> {
        let idx = self.points.binary_search(p).ok()?;
        self.orbits.iter().find(|o| o.members.binary_search(&idx).is_ok())
    }

    /// The member sets, for partition comparisons.
    pub fn partition(&self) -> Vec<Vec<P1Triple<u64>>> {
        self.orbits
            .iter()
            .map(|o| o.members.iter().map(|&i| self.points[i].clone()).collect())
            .collect()
    }
}

/// Sizes of all orbits except the two trivial ones: `{(0,0,0)}` and the
/// orbit of `(0,∞,∞)`. Ascending.
pub fn nontrivial_sizes(d: &OrbitDecomposition) -> Vec<usize> {
    let origin = P1Triple::finite(0, 0, 0);
    let corner = P1Triple([P1Elem::Finite(0), P1Elem::Infinity, P1Elem::Infinity]);
    let trivial: Vec<&P1Triple<u64>> = [&origin, &corner]
        .into_iter()
        .filter_map(|p| d.orbit_of(p).map(|o| &o.representative))
        .collect();
    let mut s: Vec<usize> = d
        .orbits
        .iter()
        .filter(|o| !trivial.contains(&&o.representative))
        .map(|o| o.size)
        .collect();
    s.sort_unstable();
    s
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut a: u32) -> u32 {
        while self.0[a as usize] != a {
            let up = self.0[self.0[a as usize] as usize];
            self.0[a as usize] = up;
            a = up;
        }
        a
    }

    /// Keeps the smaller index as root so roots are orbit minima.
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi as usize] = lo;
        }
    }
}

/// The points of `W(F_p)` with a lookup index and cached σ images, shared
/// by full and fibral decompositions.
pub struct FpOrbitEngine {
    field: PrimeField,
    points: Vec<P1Triple<u64>>,
    /// Offsets into `points` per `(x, y)` cell, row-major over P¹ × P¹.
    cells: Vec<u32>,
    sigma: Vec<[u32; 3]>,
}

fn coord_code(p: u64, c: &P1Elem<u64>) -> usize {
    match c {
        P1Elem::Finite(v) => *v as usize,
        P1Elem::Infinity => p as usize,
    }
}

impl FpOrbitEngine {
    pub fn new(w: &Surface<PrimeField>) -> Result<Self, OrbitError> {
        let field = w.field().clone();
        let points = enumerate_points(w);
        let side = field.p() as usize + 1;
        let mut cells = vec![0u32; side * side + 1];
        for q in &points {
            let c = coord_code(field.p(), q.x()) * side + coord_code(field.p(), q.y());
            cells[c + 1] += 1;
        }
        for i in 0..side * side {
            cells[i + 1] += cells[i];
        }
        let mut engine = FpOrbitEngine {
            field,
            points,
            cells,
            sigma: Vec::new(),
        };
        let mut sigma = Vec::with_capacity(engine.points.len());
        for q in &engine.points {
            let mut img = [0u32; 3];
            for (a, slot) in img.iter_mut().enumerate() {
                let s = apply_sigma(w, q, a + 1)?;
                *slot = engine.index_of(&s).expect("σ preserves the surface");
            }
            sigma.push(img);
        }
        engine.sigma = sigma;
        Ok(engine)
    }

    pub fn for_wk(f: &PrimeField, k: i64) -> Result<Self, OrbitError> {
        let w = WkSurface::over_fp(f, k)?;
        Self::new(&w)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn points(&self) -> &[P1Triple<u64>] {
        &self.points
    }

    pub fn index_of(&self, q: &P1Triple<u64>) -> Option<u32> {
        let p = self.field.p();
        let side = p as usize + 1;
        let c = coord_code(p, q.x()) * side + coord_code(p, q.y());
        let (lo, hi) = (self.cells[c] as usize, self.cells[c + 1] as usize);
        (lo..hi)
            .find(|&i| self.points[i].z() == q.z())
            .map(|i| i as u32)
    }

    /// Index of `g` applied to point `i`.
    pub fn image(&self, g: &Generator, i: u32) -> u32 {
        match g {
            Generator::Sigma(a) => self.sigma[i as usize][a - 1],
            _ => {
                let q = g.apply_linear(&self.field, &self.points[i as usize]);
                self.index_of(&q).expect("generator preserves the surface")
            }
        }
    }

    fn build(&self, subset: &[u32], generators: &[Generator]) -> OrbitDecomposition {
        // subset is ascending, so local order = enumeration order
        let local = |g: u32| subset.binary_search(&g).ok();
        let mut uf = UnionFind::new(subset.len());
        for (li, &gi) in subset.iter().enumerate() {
            for g in generators {
                let img = self.image(g, gi);
                let lj = local(img).expect("generator leaves the point set");
                uf.union(li as u32, lj as u32);
            }
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); subset.len()];
        for li in 0..subset.len() {
            let r = uf.find(li as u32) as usize;
            groups[r].push(li);
        }
        let points: Vec<P1Triple<u64>> =
            subset.iter().map(|&i| self.points[i as usize].clone()).collect();
        let orbits = groups
            .into_iter()
            .filter(|m| !m.is_empty())
            .map(|members| Orbit {
                representative: points[members[0]].clone(),
                size: members.len(),
                members,
            })
            .collect();
        OrbitDecomposition { points, orbits }
    }

    pub fn decompose(&self, generators: &[Generator]) -> OrbitDecomposition {
        let all: Vec<u32> = (0..self.points.len() as u32).collect();
        self.build(&all, generators)
    }

    pub fn fiber_indices(&self, axis: usize, t: &P1Elem<u64>) -> Vec<u32> {
        (0..self.points.len() as u32)
            .filter(|&i| self.points[i as usize].coord(axis) == t)
            .collect()
    }

    pub fn decompose_fiber(&self, axis: usize, t: &P1Elem<u64>) -> OrbitDecomposition {
        self.build(&self.fiber_indices(axis, t), &fibral_generators(axis))
    }
}

/// Orbits of `W(F_p)` under `generators` (union-find over cached images).
pub fn orbit_decomposition(
    w: &Surface<PrimeField>,
    generators: &[Generator],
) -> Result<OrbitDecomposition, OrbitError> {
    Ok(FpOrbitEngine::new(w)?.decompose(generators))
}

/// Orbits of the fiber over `t` on `axis` under the fibral generators.
pub fn fibral_orbit_decomposition(
    w: &Surface<PrimeField>,
    axis: usize,
    t: &P1Elem<u64>,
) -> Result<OrbitDecomposition, OrbitError> {
    Ok(FpOrbitEngine::new(w)?.decompose_fiber(axis, t))
}

/// Least member of the class of `k` under `k ~ ζ³k`, `ζ⁴ = 1`.
pub fn k_class_of(f: &PrimeField, k: u64) -> u64 {
    f.fourth_roots_of_unity()
        .iter()
        .map(|z| f.mul(&f.pow(z, 3), &k))
        .min()
        .expect("1 is a fourth root")
}

/// One `k` per class of `F_p^*` under `k ~ ζ³k`, `ζ⁴ = 1`; the least member.
pub fn k_class_representatives(f: &PrimeField) -> Vec<u64> {
    let mut reps: Vec<u64> = (1..f.p()).map(|k| k_class_of(f, k)).collect();
    reps.sort_unstable();
    reps.dedup();
    reps
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub p: u64,
    pub k: u64,
    /// Nontrivial orbit sizes, ascending.
    pub sizes: Vec<usize>,
}

impl CensusRow {
    /// `p,k,"s1,s2,..."` with every size spelled out.
    pub fn to_csv(&self) -> String {
        let s: Vec<String> = self.sizes.iter().map(ToString::to_string).collect();
        format!("{},{},\"{}\"", self.p, self.k, s.join(","))
    }

    pub fn shorthand(&self) -> String {
        format_shorthand(&self.sizes)
    }
}

impl fmt::Display for CensusRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} k={}: {}", self.p, self.k, self.shorthand())
    }
}

/// Ascending sizes with repeated entries folded as `size^count`.
pub fn format_shorthand(sizes: &[usize]) -> String {
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let run = sorted[i..].iter().take_while(|&&s| s == sorted[i]).count();
        parts.push(if run == 1 {
            sorted[i].to_string()
        } else {
            format!("{}^{}", sorted[i], run)
        });
        i += run;
    }
    parts.join(",")
}

/// Inverse of [`format_shorthand`]; plain lists parse too.
pub fn parse_shorthand(s: &str) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match part.split_once('^') {
            Some((v, n)) => {
                let (v, n): (usize, usize) = (v.parse().ok()?, n.parse().ok()?);
                out.extend(std::iter::repeat_n(v, n));
            }
            None => out.push(part.parse().ok()?),
        }
    }
    out.sort_unstable();
    Some(out)
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    /// Every `k ∈ F_p^*` instead of one per twist class.
    pub all_k: bool,
    pub with_deltas: bool,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            all_k: false,
            with_deltas: false,
            jobs: 0,
        }
    }
}

pub fn census_row(f: &PrimeField, k: u64, with_deltas: bool) -> Result<CensusRow, OrbitError> {
    let engine = FpOrbitEngine::for_wk(f, k as i64)?;
    let d = engine.decompose(&compact_generators(with_deltas));
    Ok(CensusRow {
        p: f.p(),
        k,
        sizes: nontrivial_sizes(&d),
    })
}

/// Rows for every prime and every representative `k`, ordered by `(p, k)`.
pub fn census(primes: &[u64], opts: &CensusOptions) -> Result<Vec<CensusRow>, OrbitError> {
    let mut tasks = Vec::new();
    for &p in primes {
        let f = PrimeField::new(p)?;
        let ks = if opts.all_k {
            (1..p).collect()
        } else {
            k_class_representatives(&f)
        };
        tasks.extend(ks.into_iter().map(|k| (f.clone(), k)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| OrbitError::Pool(e.to_string()))?;
    pool.install(|| {
        tasks
            .par_iter()
            .map(|(f, k)| census_row(f, *k, opts.with_deltas))
            .collect()
    })
}
