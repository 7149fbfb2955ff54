//! Fibers of the three projections, connected fibers and the cage, linking
//! sets and the curves `C⁽ⁱ⁾`, genus-bound counts and fiber jumping.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fields::{poly, Field, FieldError, PrimeField};
use crate::geometry::{p1_points, P1Elem, P1Triple, Surface, WkSurface};
use crate::orbits::FpOrbitEngine;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("discriminant form vanishes identically for C({variant}) at the given bases")]
    DegenerateDiscriminant { variant: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn ser_p1<S: Serializer>(v: &P1Elem<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p1_label(v))
}

fn p1_label(v: &P1Elem<u64>) -> String {
    match v {
        P1Elem::Finite(x) => x.to_string(),
        P1Elem::Infinity => "inf".into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FiberId {
    pub axis: usize,
    #[serde(serialize_with = "ser_p1")]
    pub base: P1Elem<u64>,
}

pub fn fiber_points(engine: &FpOrbitEngine, f: &FiberId) -> Vec<P1Triple<u64>> {
    engine
        .points()
        .iter()
        .filter(|q| q.coord(f.axis) == &f.base)
        .cloned()
        .collect()
}

/// Nonempty and a single orbit under the fibral generators.
pub fn is_connected_fiber(engine: &FpOrbitEngine, f: &FiberId) -> bool {
    engine.decompose_fiber(f.axis, &f.base).orbits.len() == 1
}

/// Bases of the connected fibers along `axis`, in P¹ order.
pub fn connected_bases(engine: &FpOrbitEngine, axis: usize) -> Vec<P1Elem<u64>> {
    p1_points(engine.field())
        .filter(|t| {
            is_connected_fiber(
                engine,
                &FiberId {
                    axis,
                    base: t.clone(),
                },
            )
        })
        .collect()
}

/// πConnFib, computed on the first axis.
pub fn pi_connfib(engine: &FpOrbitEngine) -> Vec<P1Elem<u64>> {
    connected_bases(engine, 1)
}

/// Every coordinate value of every point.
pub fn flatten<'a, E: Clone + Ord + 'a>(
    pts: impl IntoIterator<Item = &'a P1Triple<E>>,
) -> BTreeSet<P1Elem<E>> {
    pts.into_iter().flat_map(|q| q.0.iter().cloned()).collect()
}

/// Coordinate values of the points, leaving out coordinate `axis`.
pub fn flatten_off_axis<'a, E: Clone + Ord + 'a>(
    pts: impl IntoIterator<Item = &'a P1Triple<E>>,
    axis: usize,
) -> BTreeSet<P1Elem<E>> {
    pts.into_iter()
        .flat_map(|q| {
            (1..=3)
                .filter(move |&a| a != axis)
                .map(move |a| q.coord(a).clone())
        })
        .collect()
}

/// Points lying on at least one connected fiber.
pub fn cage_points(engine: &FpOrbitEngine) -> Vec<P1Triple<u64>> {
    let conn: Vec<BTreeSet<P1Elem<u64>>> = (1..=3)
        .map(|a| connected_bases(engine, a).into_iter().collect())
        .collect();
    engine
        .points()
        .iter()
        .filter(|q| (1..=3).any(|a| conn[a - 1].contains(q.coord(a))))
        .cloned()
        .collect()
}

/// Connected-fiber bases joined when one appears among the off-axis
/// coordinates of the other's fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CageGraph {
    #[serde(serialize_with = "ser_p1_vec")]
    pub vertices: Vec<P1Elem<u64>>,
    /// Vertex index pairs `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Vertex indices per component, ordered by least member.
    pub components: Vec<Vec<usize>>,
}

fn ser_p1_vec<S: Serializer>(v: &[P1Elem<u64>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(p1_label))
}

impl CageGraph {
    pub fn component_values(&self) -> Vec<Vec<P1Elem<u64>>> {
        self.components
            .iter()
            .map(|c| c.iter().map(|&i| self.vertices[i].clone()).collect())
            .collect()
    }

    /// Vertices labelled by signed residues in `(-p/2, p/2]`.
    pub fn to_dot(&self, f: &PrimeField) -> String {
        let label = |v: &P1Elem<u64>| match v {
            P1Elem::Finite(x) => f.signed(*x).to_string(),
            P1Elem::Infinity => "inf".into(),
        };
        let mut out = String::from("graph cage {\n");
        for (c, comp) in self.components.iter().enumerate() {
            out.push_str(&format!("  subgraph cluster_{c} {{\n"));
            for &v in comp {
                out.push_str(&format!("    \"{}\";\n", label(&self.vertices[v])));
            }
            out.push_str("  }\n");
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\";\n",
                label(&self.vertices[a]),
                label(&self.vertices[b])
            ));
        }
        out.push_str("}\n");
        out
    }
}

pub fn cage_graph(engine: &FpOrbitEngine) -> CageGraph {
    let vertices = pi_connfib(engine);
    let vset: BTreeSet<&P1Elem<u64>> = vertices.iter().collect();
    let mut edges = BTreeSet::new();
    for (i, t) in vertices.iter().enumerate() {
        let pts = fiber_points(
            engine,
            &FiberId {
                axis: 1,
                base: t.clone(),
            },
        );
        for s in flatten_off_axis(&pts, 1) {
            if vset.contains(&s) {
                let j = vertices.binary_search(&s).expect("vertex");
                if i != j {
                    edges.insert((i.min(j), i.max(j)));
                }
            }
        }
    }
    let mut label: Vec<usize> = (0..vertices.len()).collect();
    fn root(l: &mut [usize], mut a: usize) -> usize {
        while l[a] != a {
            l[a] = l[l[a]];
            a = l[a];
        }
        a
    }
    for &(a, b) in &edges {
        let (ra, rb) = (root(&mut label, a), root(&mut label, b));
        label[ra.max(rb)] = ra.min(rb);
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; vertices.len()];
    for v in 0..vertices.len() {
        let r = root(&mut label, v);
        if slot[r] == usize::MAX {
            slot[r] = components.len();
            components.push(Vec::new());
        }
        components[slot[r]].push(v);
    }
    CageGraph {
        vertices,
        edges: edges.into_iter().collect(),
        components,
    }
}

/// The two non-projection axes of `variant`, ascending.
fn other_axes(variant: usize) -> (usize, usize) {
    match variant {
        1 => (2, 3),
        2 => (1, 3),
        _ => (1, 2),
    }
}

fn triple_with(pairs: [(usize, P1Elem<u64>); 3]) -> P1Triple<u64> {
    let mut c = [P1Elem::Infinity, P1Elem::Infinity, P1Elem::Infinity];
    for (axis, v) in pairs {
        c[axis - 1] = v;
    }
    P1Triple(c)
}

/// Whether `W` has a point with coordinate `a1 = v1`, `a2 = v2`: the
/// quadratic in the remaining coordinate has a root in P¹(F_p).
fn meets(w: &Surface<PrimeField>, a1: usize, v1: &P1Elem<u64>, a2: usize, v2: &P1Elem<u64>) -> bool {
    let f = w.field();
    let free = 6 - a1 - a2;
    let probe = triple_with([(a1, v1.clone()), (a2, v2.clone()), (free, P1Elem::Infinity)]);
    let q = w.form().coord_quadratic(f, &probe, free);
    if q.is_identically_zero(f) || f.is_zero(&q.q20) {
        return true;
    }
    f.legendre(q.discriminant(f)) >= 0
}

/// The linking set `L⁽ᵛ⁾`: values `s` of coordinate `variant` whose fiber
/// meets both the fiber `{a = ta}` and the fiber `{b = tb}`, where `a < b`
/// are the other two axes.
pub fn linking_set(
    w: &Surface<PrimeField>,
    variant: usize,
    ta: &P1Elem<u64>,
    tb: &P1Elem<u64>,
) -> Vec<P1Elem<u64>> {
    let (a, b) = other_axes(variant);
    p1_points(w.field())
        .filter(|s| meets(w, a, ta, variant, s) && meets(w, b, tb, variant, s))
        .collect()
}

/// Points of `C⁽ᵛ⁾`: for each value `s` of coordinate `variant`, coordinate
/// `b` runs over roots of `F` with `a = ta`, and coordinate `a` over roots
/// of `F` with `b = tb`.
pub fn c_curve_points(
    w: &Surface<PrimeField>,
    variant: usize,
    ta: &P1Elem<u64>,
    tb: &P1Elem<u64>,
) -> Vec<P1Triple<u64>> {
    let f = w.field();
    let (a, b) = other_axes(variant);
    let roots = |fixed_axis: usize, fixed: &P1Elem<u64>, s: &P1Elem<u64>, free: usize| {
        let probe = triple_with([
            (variant, s.clone()),
            (fixed_axis, fixed.clone()),
            (free, P1Elem::Infinity),
        ]);
        w.form()
            .coord_quadratic(f, &probe, free)
            .roots(f)
            .unwrap_or_else(|| p1_points(f).collect())
    };
    let mut out = Vec::new();
    for s in p1_points(f) {
        let bs = roots(a, ta, &s, b);
        let as_ = roots(b, tb, &s, a);
        for va in &as_ {
            for vb in &bs {
                out.push(triple_with([(variant, s.clone()), (a, va.clone()), (b, vb.clone())]));
            }
        }
    }
    out.sort();
    out
}

/// Counts behind the genus estimate for a component of `C⁽ᵛ⁾`: over the
/// algebraic closure, `a` values of the projection coordinate where exactly
/// one of the two discriminant quartics vanishes and `b` where both do.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenusBound {
    pub a: usize,
    pub b: usize,
    /// `−3 + a + 3b/2`.
    pub bound: f64,
}

/// Discriminant in coordinate `free` of `F` with `fixed_axis = t`, as a
/// polynomial in the `variant` coordinate of formal degree 4.
fn discriminant_quartic<F: Field>(
    w: &Surface<F>,
    variant: usize,
    fixed_axis: usize,
    t: &P1Elem<F::Elem>,
    free: usize,
) -> Vec<F::Elem> {
    let f = w.field();
    // q[m] is the coefficient of Z1^m Z2^(2-m) in the free coordinate,
    // itself a polynomial in the variant coordinate of degree <= 2
    let mut q: [Vec<F::Elem>; 3] = std::array::from_fn(|_| vec![f.zero(); 3]);
    let (t1, t2) = t.homogeneous(f);
    let tp = [f.square(&t2), f.mul(&t1, &t2), f.square(&t1)];
    for (e, c) in w.form().terms() {
        let m = f.mul(c, &tp[e[fixed_axis - 1]]);
        let slot = &mut q[e[free - 1]][e[variant - 1]];
        *slot = f.add(slot, &m);
    }
    let [q0, q1, q2] = q;
    let d = poly::sub(
        f,
        &poly::mul(f, &q1, &q1),
        &poly::scale(f, &poly::mul(f, &q2, &q0), &f.from_i64(4)),
    );
    poly::trim(f, d)
}

fn squarefree<F: Field>(f: &F, a: &[F::Elem]) -> Result<Vec<F::Elem>, FieldError> {
    if f.characteristic() > 0 {
        return poly::radical_fp(f, a);
    }
    let g = poly::gcd(f, a, &poly::derivative(f, a))?;
    poly::monic(f, &poly::div_exact(f, a, &g)?)
}

pub fn genus_bound_data<F: Field>(
    w: &Surface<F>,
    variant: usize,
    ta: &P1Elem<F::Elem>,
    tb: &P1Elem<F::Elem>,
) -> Result<GenusBound, FiberError> {
    let f = w.field();
    let (a, b) = other_axes(variant);
    let d1 = discriminant_quartic(w, variant, a, ta, b);
    let d2 = discriminant_quartic(w, variant, b, tb, a);
    if d1.is_empty() || d2.is_empty() {
        return Err(FiberError::DegenerateDiscriminant { variant });
    }
    let r1 = squarefree(f, &d1)?;
    let r2 = squarefree(f, &d2)?;
    let common = poly::gcd(f, &r1, &r2)?;
    let finite = |r: &Vec<F::Elem>| r.len() - 1;
    let inf1 = d1.len() < 5;
    let inf2 = d2.len() < 5;
    let both = finite(&common) + usize::from(inf1 && inf2);
    let n1 = finite(&r1) + usize::from(inf1);
    let n2 = finite(&r2) + usize::from(inf2);
    let one = n1 + n2 - 2 * both;
    Ok(GenusBound {
        a: one,
        b: both,
        bound: -3.0 + one as f64 + 1.5 * both as f64,
    })
}

/// True when the base pair meets one of the conditions under which `C⁽¹⁾`
/// can be singular: a base in `{0, ∞}`, `y₀² = z₀²`, `y₀²z₀² = 1`, or a base
/// equal to `(±k ± √(k² ± 16))/4` for a square root present in the field.
pub fn c1_singular_flag<F: Field>(w: &WkSurface<F>, y0: &P1Elem<F::Elem>, z0: &P1Elem<F::Elem>) -> bool {
    let f = w.field();
    let (y, z) = match (y0, z0) {
        (P1Elem::Finite(y), P1Elem::Finite(z)) if !f.is_zero(y) && !f.is_zero(z) => (y, z),
        _ => return true,
    };
    let (y2, z2) = (f.square(y), f.square(z));
    if y2 == z2 || f.is_one(&f.mul(&y2, &z2)) {
        return true;
    }
    let k = w.k();
    let k2 = f.square(k);
    let sixteen = f.from_i64(16);
    let quarter = f.inv(&f.from_i64(4)).expect("char != 2");
    let mut special = Vec::new();
    for disc in [f.add(&k2, &sixteen), f.sub(&k2, &sixteen)] {
        if let Some(r) = f.sqrt(&disc) {
            for sk in [k.clone(), f.neg(k)] {
                for sr in [r.clone(), f.neg(&r)] {
                    special.push(f.mul(&f.add(&sk, &sr), &quarter));
                }
            }
        }
    }
    special.iter().any(|s| s == y || s == z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpMode {
    Exhaustive,
    Sampled { pairs: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FiberPair {
    pub f1: FiberId,
    pub f2: FiberId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JumpReport {
    /// Pairs of fibers on distinct axes.
    pub pairs_tested: usize,
    /// Pairs with no fiber on the third axis meeting both.
    pub failures: Vec<FiberPair>,
    /// Pairs of distinct connected fibers.
    pub restricted_pairs_tested: usize,
    /// Connected pairs with no connected fiber meeting both.
    pub restricted_failures: Vec<FiberPair>,
}

/// Incidence tables `meet[(i, j)][s][t]`: some point has coordinate `i` equal
/// to `s` and coordinate `j` equal to `t` (bases coded `0..p`, `p` = ∞).
struct Incidence {
    side: usize,
    table: [Vec<bool>; 9],
    nonempty: [Vec<bool>; 3],
}

fn code(p: u64, v: &P1Elem<u64>) -> usize {
    match v {
        P1Elem::Finite(x) => *x as usize,
        P1Elem::Infinity => p as usize,
    }
}

impl Incidence {
    fn new(engine: &FpOrbitEngine) -> Self {
        let p = engine.field().p();
        let side = p as usize + 1;
        let mut table: [Vec<bool>; 9] = std::array::from_fn(|_| vec![false; side * side]);
        let mut nonempty: [Vec<bool>; 3] = std::array::from_fn(|_| vec![false; side]);
        for q in engine.points() {
            let c: Vec<usize> = q.0.iter().map(|v| code(p, v)).collect();
            for i in 0..3 {
                nonempty[i][c[i]] = true;
                for j in 0..3 {
                    table[i * 3 + j][c[i] * side + c[j]] = true;
                }
            }
        }
        Incidence {
            side,
            table,
            nonempty,
        }
    }

    fn meets(&self, (i, s): (usize, usize), (j, t): (usize, usize)) -> bool {
        if i == j {
            return s == t && self.nonempty[i][s];
        }
        self.table[i * 3 + j][s * self.side + t]
    }
}

fn sample<T: Clone>(all: Vec<T>, mode: JumpMode, salt: u64) -> Vec<T> {
    match mode {
        JumpMode::Exhaustive => all,
        JumpMode::Sampled { pairs, seed } => {
            if all.is_empty() {
                return all;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
            (0..pairs).map(|_| all[rng.gen_range(0..all.len())].clone()).collect()
        }
    }
}

/// Fiber jumping in two forms. Unrestricted: every pair of fibers on
/// distinct axes meets a common fiber on the third axis. Restricted: every
/// pair of connected fibers meets a common connected fiber.
pub fn verify_fiber_jumping(engine: &FpOrbitEngine, mode: JumpMode) -> JumpReport {
    let p = engine.field().p();
    let side = p as usize + 1;
    let inc = Incidence::new(engine);
    let connected: Vec<(usize, usize)> = (1..=3)
        .flat_map(|a| {
            connected_bases(engine, a)
                .into_iter()
                .map(move |t| (a - 1, code(p, &t)))
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        for s in 0..side {
            for t in 0..side {
                pairs.push(((i, s), (j, t)));
            }
        }
    }
    let pairs = sample(pairs, mode, 0);
    let mut conn_pairs = Vec::new();
    for (n, &a) in connected.iter().enumerate() {
        for &b in &connected[n + 1..] {
            conn_pairs.push((a, b));
        }
    }
    let conn_pairs = sample(conn_pairs, mode, 1);
    let decode = |(axis, c): (usize, usize)| FiberId {
        axis: axis + 1,
        base: if c == p as usize {
            P1Elem::Infinity
        } else {
            P1Elem::Finite(c as u64)
        },
    };
    let pair = |(f1, f2)| FiberPair {
        f1: decode(f1),
        f2: decode(f2),
    };
    let failures: Vec<FiberPair> = pairs
        .par_iter()
        .filter(|&&(f1, f2)| {
            let k = 3 - f1.0 - f2.0;
            !(0..side).any(|u| inc.meets(f1, (k, u)) && inc.meets(f2, (k, u)))
        })
        .map(|&fp| pair(fp))
        .collect();
    let restricted_failures: Vec<FiberPair> = conn_pairs
        .par_iter()
        .filter(|&&(f1, f2)| {
            !connected
                .iter()
                .any(|&f3| inc.meets(f1, f3) && inc.meets(f2, f3))
        })
        .map(|&fp| pair(fp))
        .collect();
    JumpReport {
        pairs_tested: pairs.len(),
        failures,
        restricted_pairs_tested: conn_pairs.len(),
        restricted_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::default_generators;
    use crate::fields::ExactField;
    use crate::orbits::orbit_closure;
    use std::collections::HashSet;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn primes_upto(n: u64) -> Vec<u64> {
        (3..=n).filter(|&m| (2..m).all(|d| m % d != 0)).collect()
    }

    fn signed_set(f: &PrimeField, vals: &[i64]) -> Vec<P1Elem<u64>> {
        let mut out: Vec<P1Elem<u64>> = vals
            .iter()
            .flat_map(|&v| [f.reduce(v), f.reduce(-v)])
            .map(P1Elem::Finite)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn fin(v: u64) -> P1Elem<u64> {
        P1Elem::Finite(v)
    }

    #[test]
    fn fiber_point_examples() {
        let f = fp(5);
        let e = FpOrbitEngine::for_wk(&f, 1).unwrap();
        let pts = fiber_points(&e, &FiberId { axis: 1, base: fin(0) });
        // y² + z² = 0 with 2² = −1
        let mut expected = vec![
            P1Triple::finite(0, 0, 0),
            P1Triple([fin(0), P1Elem::Infinity, P1Elem::Infinity]),
        ];
        for y in 1..5u64 {
            expected.push(P1Triple::finite(0, y, 2 * y % 5));
            expected.push(P1Triple::finite(0, y, 3 * y % 5));
        }
        expected.sort();
        assert_eq!(pts, expected);
        let e19 = FpOrbitEngine::for_wk(&fp(19), 1).unwrap();
        assert!(fiber_points(&e19, &FiberId { axis: 1, base: fin(3) }).is_empty());
        assert!(!is_connected_fiber(&e19, &FiberId { axis: 1, base: fin(3) }));
        for p in [5u64, 7, 11] {
            for k in 1..p as i64 {
                let e = FpOrbitEngine::for_wk(&fp(p), k).unwrap();
                for axis in 1..=3 {
                    assert!(!fiber_points(&e, &FiberId { axis, base: P1Elem::Infinity }).is_empty());
                }
            }
        }
    }

    #[test]
    fn connfib_w1_f53() {
        let f = fp(53);
        let e = FpOrbitEngine::for_wk(&f, 1).unwrap();
        assert!(is_connected_fiber(&e, &FiberId { axis: 1, base: fin(2) }));
        assert!(!is_connected_fiber(&e, &FiberId { axis: 1, base: fin(1) }));
        let conn = pi_connfib(&e);
        assert_eq!(conn, signed_set(&f, &[2, 4, 6, 13, 20, 24, 26]));
        assert_eq!(connected_bases(&e, 2), conn);
        assert_eq!(connected_bases(&e, 3), conn);
        let cset: BTreeSet<_> = conn.iter().cloned().collect();
        let row = |t: u64| -> Vec<P1Elem<u64>> {
            let pts = fiber_points(&e, &FiberId { axis: 1, base: fin(t) });
            flatten_off_axis(&pts, 1).intersection(&cset).cloned().collect()
        };
        assert_eq!(row(2), signed_set(&f, &[6, 20]));
        assert_eq!(row(4), signed_set(&f, &[24]));
        assert_eq!(row(20), signed_set(&f, &[2, 6, 20, 26]));
        assert_eq!(row(24), signed_set(&f, &[4, 13, 24]));
        let g = cage_graph(&e);
        assert_eq!(
            g.component_values(),
            vec![signed_set(&f, &[2, 6, 20, 26]), signed_set(&f, &[4, 13, 24])]
        );
        let dot = g.to_dot(&f);
        assert!(dot.starts_with("graph cage {") && dot.contains("\"2\" -- \"6\""));
        let json = serde_json::to_value(&g).unwrap();
        assert_eq!(json["components"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn flatten_examples() {
        let pts = vec![P1Triple([fin(0), P1Elem::Infinity, P1Elem::Infinity])];
        assert_eq!(flatten(&pts), [fin(0), P1Elem::Infinity].into_iter().collect());
    }

    #[test]
    fn cage_edges_symmetric_and_connfib_symmetric() {
        for p in primes_upto(53) {
            let f = fp(p);
            let k = 1 + (p as i64 % 5);
            let e = FpOrbitEngine::for_wk(&f, k).unwrap();
            let conn: BTreeSet<_> = pi_connfib(&e).into_iter().collect();
            for t in &conn {
                assert!(conn.contains(&t.neg(&f)));
            }
            let vertices: Vec<_> = conn.iter().cloned().collect();
            for (i, t) in vertices.iter().enumerate() {
                let pts = fiber_points(&e, &FiberId { axis: 1, base: t.clone() });
                let row = flatten_off_axis(&pts, 1);
                for (j, s) in vertices.iter().enumerate() {
                    let back = fiber_points(&e, &FiberId { axis: 1, base: s.clone() });
                    assert_eq!(row.contains(s), flatten_off_axis(&back, 1).contains(t), "{i} {j}");
                }
            }
        }
    }

    /// Inversion carries fibers to fibers but does not normalise the fibral
    /// group, so connectivity need not survive t ↦ 1/t.
    #[test]
    fn connfib_not_inversion_invariant() {
        let f = fp(13);
        let e = FpOrbitEngine::for_wk(&f, 1).unwrap();
        let w = WkSurface::over_fp(&f, 1).unwrap();
        assert!(is_connected_fiber(&e, &FiberId { axis: 1, base: fin(6) }));
        let inv = fiber_points(&e, &FiberId { axis: 1, base: fin(11) });
        assert_eq!(f.mul(&6, &11), 1);
        assert_eq!(inv.len(), 12);
        let orb = orbit_closure(&w, &inv[..1], &crate::autos::fibral_generators(1), usize::MAX).unwrap();
        assert_eq!(orb.len(), 6);
        assert!(!is_connected_fiber(&e, &FiberId { axis: 1, base: fin(11) }));
    }

    #[test]
    fn empty_connfib_gives_empty_graph() {
        // W_1(F_3): every fiber is either a single orbit or not; the graph
        // is whatever the data says, but an empty vertex set has no parts
        let g = CageGraph { vertices: vec![], edges: vec![], components: vec![] };
        assert!(g.component_values().is_empty());
    }

    #[test]
    fn connected_fiber_inside_one_orbit() {
        let f = fp(37);
        let e = FpOrbitEngine::for_wk(&f, 3).unwrap();
        let w = WkSurface::over_fp(&f, 3).unwrap();
        for t in pi_connfib(&e) {
            let pts = fiber_points(&e, &FiberId { axis: 1, base: t });
            let orb: HashSet<_> = orbit_closure(&w, &pts[..1], &default_generators(false), usize::MAX)
                .unwrap()
                .into_iter()
                .collect();
            assert!(pts.iter().all(|q| orb.contains(q)));
        }
    }

    #[test]
    fn linking_is_projection_of_c_curve() {
        for p in primes_upto(31) {
            let f = fp(p);
            let w = WkSurface::over_fp(&f, 2).unwrap();
            for variant in 1..=3 {
                for ta in p1_points(&f) {
                    for tb in p1_points(&f) {
                        let link = linking_set(&w, variant, &ta, &tb);
                        let curve = c_curve_points(&w, variant, &ta, &tb);
                        let proj: BTreeSet<_> = curve.iter().map(|q| q.coord(variant).clone()).collect();
                        assert_eq!(proj.into_iter().collect::<Vec<_>>(), link);
                    }
                }
            }
        }
    }

    #[test]
    fn linking_set_definition() {
        // z is in L3(x0, y0) iff fibers x = x0 and y = y0 both meet z = z1
        let f = fp(23);
        let w = WkSurface::over_fp(&f, 5).unwrap();
        let pts = w.points();
        for (x0, y0) in [(fin(1), fin(2)), (fin(0), P1Elem::Infinity), (fin(7), fin(7))] {
            let expect: Vec<_> = p1_points(&f)
                .filter(|z| {
                    pts.iter().any(|q| q.x() == &x0 && q.z() == z)
                        && pts.iter().any(|q| q.y() == &y0 && q.z() == z)
                })
                .collect();
            assert_eq!(linking_set(&w, 3, &x0, &y0), expect);
        }
    }

    #[test]
    fn c_curve_symmetric_base_contains_diagonal() {
        let f = fp(29);
        let w = WkSurface::over_fp(&f, 3).unwrap();
        let xi = fin(5);
        let curve: HashSet<_> = c_curve_points(&w, 1, &xi, &xi).into_iter().collect();
        // for x with F(x, ξ, z) = 0, the point (x, z, z) satisfies both equations
        for q in w.points() {
            if q.y() == &xi {
                assert!(curve.contains(&P1Triple([q.x().clone(), q.z().clone(), q.z().clone()])));
            }
        }
    }

    #[test]
    fn genus_bound_examples() {
        for p in primes_upto(53) {
            let f = fp(p);
            for k in 1..p as i64 {
                let w = WkSurface::over_fp(&f, k).unwrap();
                for ta in p1_points(&f) {
                    for tb in p1_points(&f) {
                        let g = genus_bound_data(&w, 1, &ta, &tb).unwrap();
                        assert!(g.a + 2 * g.b <= 8);
                        assert!(g.bound <= 5.0, "p={p} k={k} {ta:?} {tb:?} {g:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn genus_counts_match_fiber_sizes() {
        // over F_p, fiber sizes of C1 above rational x agree with the discriminant table
        let f = fp(41);
        let w = WkSurface::over_fp(&f, 6).unwrap();
        let (y0, z0) = (fin(3), fin(10));
        let curve = c_curve_points(&w, 1, &y0, &z0);
        for x in p1_points(&f) {
            let n = curve.iter().filter(|q| q.x() == &x).count();
            let dz = w.form().coord_quadratic(&f, &P1Triple([x.clone(), y0.clone(), fin(0)]), 3);
            let dy = w.form().coord_quadratic(&f, &P1Triple([x.clone(), fin(0), z0.clone()]), 2);
            let count = |q: &crate::geometry::BinaryQuadratic<u64>| q.roots(&f).unwrap().len();
            assert_eq!(n, count(&dz) * count(&dy));
        }
        let g = genus_bound_data(&w, 1, &y0, &z0).unwrap();
        assert!(g.a + 2 * g.b <= 8);
    }

    #[test]
    fn genus_over_q() {
        let q = ExactField::rationals();
        let w = WkSurface::new(q.clone(), q.from_i64(3)).unwrap();
        for (y0, z0) in [(2, 5), (1, 1), (0, 3), (2, -2), (3, 7)] {
            let g = genus_bound_data(
                &w,
                1,
                &P1Elem::Finite(q.from_i64(y0)),
                &P1Elem::Finite(q.from_i64(z0)),
            )
            .unwrap();
            assert!(g.bound <= 5.0);
            // closure counts agree with a large prime of good reduction
            let f = fp(10007);
            let wp = WkSurface::over_fp(&f, 3).unwrap();
            let gp = genus_bound_data(&wp, 1, &fin(f.reduce(y0)), &fin(f.reduce(z0))).unwrap();
            assert_eq!((g.a, g.b), (gp.a, gp.b), "({y0},{z0})");
        }
    }

    #[test]
    fn c1_flag_examples() {
        let f = fp(31);
        let w = WkSurface::over_fp(&f, 7).unwrap();
        assert!(c1_singular_flag(&w, &fin(0), &fin(5)));
        assert!(c1_singular_flag(&w, &fin(3), &P1Elem::Infinity));
        assert!(c1_singular_flag(&w, &fin(4), &fin(4)));
        assert!(c1_singular_flag(&w, &fin(4), &fin(27)));
        assert!(c1_singular_flag(&w, &fin(2), &fin(f.inv(&2).unwrap())));
        // k² + 16 = 65 = 3 (mod 31), not a square; k² − 16 = 33 = 2 = 8² (mod 31)
        assert_eq!(f.legendre(3), -1);
        let special = f.mul(&f.add(&7, &8), &f.inv(&4).unwrap());
        assert!(c1_singular_flag(&w, &fin(special), &fin(9)));
    }

    #[test]
    fn singular_curve_count_bound() {
        for p in primes_upto(31) {
            let f = fp(p);
            for k in 1..p as i64 {
                let w = WkSurface::over_fp(&f, k).unwrap();
                let n = w
                    .points()
                    .iter()
                    .filter(|q| {
                        c1_singular_flag(&w, q.y(), q.z())
                            || c1_singular_flag(&w, q.x(), q.z())
                            || c1_singular_flag(&w, q.x(), q.y())
                    })
                    .count();
                assert!(n as u64 <= 144 * p, "p={p} k={k} n={n}");
            }
        }
    }

    #[test]
    fn jumping_w1_f101_and_f53() {
        let e = FpOrbitEngine::for_wk(&fp(101), 1).unwrap();
        let r = verify_fiber_jumping(&e, JumpMode::Exhaustive);
        assert_eq!(r.pairs_tested, 3 * 102 * 102);
        assert!(r.failures.is_empty());
        let e = FpOrbitEngine::for_wk(&fp(53), 1).unwrap();
        let r = verify_fiber_jumping(&e, JumpMode::Exhaustive);
        assert!(!r.restricted_failures.is_empty());
        // 14 connected bases on each of three axes
        assert_eq!(r.restricted_pairs_tested, 42 * 41 / 2);
        let s1 = verify_fiber_jumping(&e, JumpMode::Sampled { pairs: 200, seed: 7 });
        let s2 = verify_fiber_jumping(&e, JumpMode::Sampled { pairs: 200, seed: 7 });
        assert_eq!(s1, s2);
        assert_eq!(s1.pairs_tested, 200);
    }

    #[test]
    fn restricted_jumping_puts_cage_in_one_orbit() {
        let mut checked = 0;
        for p in primes_upto(47) {
            let f = fp(p);
            let reps = crate::orbits::k_class_representatives(&f);
            for k in reps {
                let e = FpOrbitEngine::for_wk(&f, k as i64).unwrap();
                let r = verify_fiber_jumping(&e, JumpMode::Exhaustive);
                if !r.restricted_failures.is_empty() {
                    continue;
                }
                let cage = cage_points(&e);
                if cage.is_empty() {
                    continue;
                }
                let d = e.decompose(&crate::autos::compact_generators(false));
                let host = d.orbit_of(&cage[0]).unwrap();
                assert!(cage.iter().all(|q| d.orbit_of(q).unwrap() == host), "p={p} k={k}");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}
