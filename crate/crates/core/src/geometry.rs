//! Points of (P¹)³, (2,2,2)-forms, the symmetric MK3 family and W_k.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::{parse_elem_with, Field, FieldError, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("coordinate quadratic vanishes identically at {0}")]
    IdenticallyZero(String),
    #[error("point {0} is not on the surface")]
    NotOnSurface(String),
    #[error("W_k requires k != 0")]
    ZeroK,
    #[error("the form is identically zero")]
    ZeroForm,
    #[error("bad point syntax: {0}")]
    BadPoint(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point of P¹: `Finite(v)` is `[v : 1]`, `Infinity` is `[1 : 0]`.
/// The derived order puts every finite value before infinity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum P1Elem<E> {
    Finite(E),
    Infinity,
}

impl<E> P1Elem<E> {
    pub fn finite(&self) -> Option<&E> {
        match self {
            P1Elem::Finite(v) => Some(v),
            P1Elem::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, P1Elem::Infinity)
    }
}

impl<E: Clone> P1Elem<E> {
    /// Homogeneous coordinates `(X₁, X₂)`.
    pub fn homogeneous<F: Field<Elem = E>>(&self, f: &F) -> (E, E) {
        match self {
            P1Elem::Finite(v) => (v.clone(), f.one()),
            P1Elem::Infinity => (f.one(), f.zero()),
        }
    }

    /// `−∞ = ∞`.
    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self {
            P1Elem::Finite(v) => P1Elem::Finite(f.neg(v)),
            P1Elem::Infinity => P1Elem::Infinity,
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        match self {
            P1Elem::Finite(v) => P1Elem::Finite(f.mul(v, c)),
            P1Elem::Infinity => P1Elem::Infinity,
        }
    }

    /// Inversion with `0⁻¹ = ∞` and `∞⁻¹ = 0`.
    pub fn inv<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self {
            P1Elem::Infinity => P1Elem::Finite(f.zero()),
            P1Elem::Finite(v) => match f.inv(v) {
                Ok(i) => P1Elem::Finite(i),
                Err(_) => P1Elem::Infinity,
            },
        }
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        match self {
            P1Elem::Finite(v) => f.format(v),
            P1Elem::Infinity => "inf".to_string(),
        }
    }
}

/// A point of (P¹)³; coordinate `i` is the `i+1`-st axis.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct P1Triple<E>(pub [P1Elem<E>; 3]);

impl<E: Clone> P1Triple<E> {
    pub fn new(x: P1Elem<E>, y: P1Elem<E>, z: P1Elem<E>) -> Self {
        P1Triple([x, y, z])
    }

    pub fn finite(x: E, y: E, z: E) -> Self {
        P1Triple([P1Elem::Finite(x), P1Elem::Finite(y), P1Elem::Finite(z)])
    }

    pub fn x(&self) -> &P1Elem<E> {
        &self.0[0]
    }

    pub fn y(&self) -> &P1Elem<E> {
        &self.0[1]
    }

    pub fn z(&self) -> &P1Elem<E> {
        &self.0[2]
    }

    /// Coordinate along `axis` ∈ {1,2,3}.
    pub fn coord(&self, axis: usize) -> &P1Elem<E> {
        &self.0[axis - 1]
    }

    pub fn with_coord(&self, axis: usize, v: P1Elem<E>) -> Self {
        let mut c = self.0.clone();
        c[axis - 1] = v;
        P1Triple(c)
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        format!(
            "({},{},{})",
            self.0[0].format(f),
            self.0[1].format(f),
            self.0[2].format(f)
        )
    }
}

impl fmt::Display for P1Triple<u64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |e: &P1Elem<u64>| match e {
            P1Elem::Finite(v) => v.to_string(),
            P1Elem::Infinity => "inf".into(),
        };
        write!(f, "({},{},{})", c(&self.0[0]), c(&self.0[1]), c(&self.0[2]))
    }
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(String::new());
                continue;
            }
            _ => {}
        }
        out.last_mut().expect("nonempty").push(ch);
    }
    out
}

pub fn parse_p1<F: Field>(
    f: &F,
    names: &[(String, F::Elem)],
    s: &str,
) -> Result<P1Elem<F::Elem>, GeometryError> {
    let t = s.trim();
    if t == "inf" || t == "∞" {
        return Ok(P1Elem::Infinity);
    }
    Ok(P1Elem::Finite(parse_elem_with(f, names, t)?))
}

/// Parses `(x,y,z)` with `inf` for ∞ and field-element syntax per coordinate.
pub fn parse_triple<F: Field>(
    f: &F,
    names: &[(String, F::Elem)],
    s: &str,
) -> Result<P1Triple<F::Elem>, GeometryError> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| GeometryError::BadPoint(s.to_string()))?;
    let parts = split_top_level(inner);
    if parts.len() != 3 {
        return Err(GeometryError::BadPoint(s.to_string()));
    }
    Ok(P1Triple([
        parse_p1(f, names, &parts[0])?,
        parse_p1(f, names, &parts[1])?,
        parse_p1(f, names, &parts[2])?,
    ]))
}

/// A (2,2,2)-form: `c[i][j][k]` multiplies `X₁^i X₂^(2−i) Y₁^j Y₂^(2−j) Z₁^k Z₂^(2−k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Form222<E> {
    coeffs: Vec<E>,
    terms: Vec<([usize; 3], E)>,
}

impl<E: Clone> Form222<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, coeffs: [[[E; 3]; 3]; 3]) -> Result<Self, GeometryError> {
        let flat: Vec<E> = coeffs
            .into_iter()
            .flat_map(|a| a.into_iter().flat_map(|b| b.into_iter()))
            .collect();
        let mut terms = Vec::new();
        for (n, c) in flat.iter().enumerate() {
            if !f.is_zero(c) {
                terms.push(([n / 9, (n / 3) % 3, n % 3], c.clone()));
            }
        }
        if terms.is_empty() {
            return Err(GeometryError::ZeroForm);
        }
        Ok(Form222 {
            coeffs: flat,
            terms,
        })
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &E {
        &self.coeffs[i * 9 + j * 3 + k]
    }

    /// Nonzero monomials as `([i, j, k], coefficient)`.
    pub fn terms(&self) -> &[([usize; 3], E)] {
        &self.terms
    }
}

/// `[X₂², X₁X₂, X₁²]`, indexed by the degree of `X₁`.
fn degree_powers<F: Field>(f: &F, p: &P1Elem<F::Elem>) -> [F::Elem; 3] {
    match p {
        P1Elem::Finite(v) => [f.one(), v.clone(), f.square(v)],
        P1Elem::Infinity => [f.zero(), f.zero(), f.one()],
    }
}

impl<E: Clone> Form222<E> {
    pub fn eval<F: Field<Elem = E>>(&self, f: &F, p: &P1Triple<E>) -> E {
        let pw = [
            degree_powers(f, &p.0[0]),
            degree_powers(f, &p.0[1]),
            degree_powers(f, &p.0[2]),
        ];
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let m = f.mul(&f.mul(&pw[0][e[0]], &pw[1][e[1]]), &pw[2][e[2]]);
            acc = f.add(&acc, &f.mul(c, &m));
        }
        acc
    }

    /// Partial derivatives of the form with respect to the local affine
    /// parameter of each coordinate: `∂/∂X₁` at `[v:1]`, `∂/∂X₂` at `[1:0]`.
    pub fn local_gradient<F: Field<Elem = E>>(&self, f: &F, p: &P1Triple<E>) -> [E; 3] {
        let pw = [
            degree_powers(f, &p.0[0]),
            degree_powers(f, &p.0[1]),
            degree_powers(f, &p.0[2]),
        ];
        // derivative of X1^i X2^(2-i) in the local parameter
        let dpw = |c: &P1Elem<E>| -> [E; 3] {
            match c {
                // d/dX1 at (v,1): [0, 1, 2v]
                P1Elem::Finite(v) => [f.zero(), f.one(), f.mul(&f.from_i64(2), v)],
                // d/dX2 at (1,0): [2X2, X1, 0] = [0, 1, 0]
                P1Elem::Infinity => [f.zero(), f.one(), f.zero()],
            }
        };
        let d = [dpw(&p.0[0]), dpw(&p.0[1]), dpw(&p.0[2])];
        let mut out = [f.zero(), f.zero(), f.zero()];
        for (e, c) in &self.terms {
            for (a, slot) in out.iter_mut().enumerate() {
                let mut m = c.clone();
                for b in 0..3 {
                    let factor = if a == b { &d[b][e[b]] } else { &pw[b][e[b]] };
                    m = f.mul(&m, factor);
                }
                *slot = f.add(slot, &m);
            }
        }
        out
    }

    /// The binary quadratic in the `axis` coordinate after substituting the
    /// other two coordinates of `p` (the axis coordinate of `p` is ignored).
    pub fn coord_quadratic<F: Field<Elem = E>>(
        &self,
        f: &F,
        p: &P1Triple<E>,
        axis: usize,
    ) -> BinaryQuadratic<E> {
        let a = axis - 1;
        let pw = [
            degree_powers(f, &p.0[0]),
            degree_powers(f, &p.0[1]),
            degree_powers(f, &p.0[2]),
        ];
        let mut q = [f.zero(), f.zero(), f.zero()];
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for b in (0..3).filter(|&b| b != a) {
                m = f.mul(&m, &pw[b][e[b]]);
            }
            q[e[a]] = f.add(&q[e[a]], &m);
        }
        let [q02, q11, q20] = q;
        BinaryQuadratic { q20, q11, q02 }
    }
}

/// `q20·Z₁² + q11·Z₁Z₂ + q02·Z₂²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryQuadratic<E> {
    pub q20: E,
    pub q11: E,
    pub q02: E,
}

impl<E: Clone> BinaryQuadratic<E> {
    pub fn is_identically_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        f.is_zero(&self.q20) && f.is_zero(&self.q11) && f.is_zero(&self.q02)
    }

    pub fn discriminant<F: Field<Elem = E>>(&self, f: &F) -> E {
        f.sub(
            &f.square(&self.q11),
            &f.mul(&f.from_i64(4), &f.mul(&self.q20, &self.q02)),
        )
    }

    /// Distinct roots in P¹ that lie in the field, ascending with ∞ last.
    /// `None` if the quadratic vanishes identically.
    pub fn roots<F: Field<Elem = E>>(&self, f: &F) -> Option<Vec<P1Elem<E>>>
    where
        E: Ord,
    {
        if self.is_identically_zero(f) {
            return None;
        }
        let mut out = Vec::with_capacity(2);
        if f.is_zero(&self.q20) {
            if !f.is_zero(&self.q11) {
                let r = f.neg(&f.div(&self.q02, &self.q11).expect("nonzero"));
                out.push(P1Elem::Finite(r));
            }
            out.push(P1Elem::Infinity);
            return Some(out);
        }
        let disc = self.discriminant(f);
        if let Some(s) = f.sqrt(&disc) {
            let two_a_inv = f.inv(&f.mul(&f.from_i64(2), &self.q20)).expect("char != 2");
            let r1 = f.mul(&f.sub(&s, &self.q11), &two_a_inv);
            let r2 = f.mul(&f.sub(&f.neg(&s), &self.q11), &two_a_inv);
            out.push(P1Elem::Finite(r1.clone()));
            if r2 != r1 {
                out.push(P1Elem::Finite(r2));
            }
            out.sort();
        }
        Some(out)
    }
}

/// Coefficients of `a x²y²z² + b(x²y²+x²z²+y²z²) + c xyz + d(x²+y²+z²) + e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mk3Surface<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
    pub e: E,
}

impl<E: Clone + Eq> Mk3Surface<E> {
    pub fn to_form<F: Field<Elem = E>>(&self, f: &F) -> Result<Form222<E>, GeometryError> {
        let z = f.zero();
        let mut c: [[[E; 3]; 3]; 3] = std::array::from_fn(|_| {
            std::array::from_fn(|_| std::array::from_fn(|_| z.clone()))
        });
        c[2][2][2] = self.a.clone();
        c[2][2][0] = self.b.clone();
        c[2][0][2] = self.b.clone();
        c[0][2][2] = self.b.clone();
        c[1][1][1] = self.c.clone();
        c[2][0][0] = self.d.clone();
        c[0][2][0] = self.d.clone();
        c[0][0][2] = self.d.clone();
        c[0][0][0] = self.e.clone();
        Form222::new(f, c)
    }

    /// `be ≠ d²` and `ad ≠ b²`.
    pub fn nondegenerate<F: Field<Elem = E>>(&self, f: &F) -> bool {
        f.mul(&self.b, &self.e) != f.square(&self.d) && f.mul(&self.a, &self.d) != f.square(&self.b)
    }
}

/// A surface in (P¹)³ over a field, given by its (2,2,2)-form.
#[derive(Clone, Debug)]
pub struct Surface<F: Field> {
    field: F,
    form: Form222<F::Elem>,
}

impl<F: Field> Surface<F> {
    pub fn from_form(field: F, form: Form222<F::Elem>) -> Self {
        Surface { field, form }
    }

    pub fn mk3(field: F, s: &Mk3Surface<F::Elem>) -> Result<Self, GeometryError> {
        let form = s.to_form(&field)?;
        Ok(Surface { field, form })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn form(&self) -> &Form222<F::Elem> {
        &self.form
    }

    pub fn contains(&self, p: &P1Triple<F::Elem>) -> bool {
        self.field.is_zero(&self.form.eval(&self.field, p))
    }

    pub fn coord_quadratic(
        &self,
        p: &P1Triple<F::Elem>,
        axis: usize,
    ) -> Result<BinaryQuadratic<F::Elem>, GeometryError> {
        let q = self.form.coord_quadratic(&self.field, p, axis);
        if q.is_identically_zero(&self.field) {
            return Err(GeometryError::IdenticallyZero(p.format(&self.field)));
        }
        Ok(q)
    }

    /// True when the form and its three local partials vanish at `p`.
    pub fn is_singular_at(&self, p: &P1Triple<F::Elem>) -> bool {
        self.contains(p)
            && self
                .form
                .local_gradient(&self.field, p)
                .iter()
                .all(|g| self.field.is_zero(g))
    }
}

/// `W_k : x² + y² + z² + x²y²z² + kxyz = 0`, the MK3 surface `(1, 0, k, 1, 0)`.
#[derive(Clone, Debug)]
pub struct WkSurface<F: Field> {
    surface: Surface<F>,
    k: F::Elem,
}

impl<F: Field> WkSurface<F> {
    pub fn new(field: F, k: F::Elem) -> Result<Self, GeometryError> {
        if field.is_zero(&k) {
            return Err(GeometryError::ZeroK);
        }
        let coeffs = Self::coefficients(&field, &k);
        let surface = Surface::mk3(field, &coeffs)?;
        Ok(WkSurface { surface, k })
    }

    pub fn coefficients(f: &F, k: &F::Elem) -> Mk3Surface<F::Elem> {
        Mk3Surface {
            a: f.one(),
            b: f.zero(),
            c: k.clone(),
            d: f.one(),
            e: f.zero(),
        }
    }

    pub fn k(&self) -> &F::Elem {
        &self.k
    }

    pub fn surface(&self) -> &Surface<F> {
        &self.surface
    }

    /// The four singular points present for every k.
    pub fn base_singular_points(&self) -> Vec<P1Triple<F::Elem>> {
        let f = self.field();
        let z = || P1Elem::Finite(f.zero());
        let i = || P1Elem::Infinity;
        vec![
            P1Triple([z(), z(), z()]),
            P1Triple([z(), i(), i()]),
            P1Triple([i(), z(), i()]),
            P1Triple([i(), i(), z()]),
        ]
    }

    /// Closed-form singular locus: the four base points, plus
    /// `ζ·{(1,1,−1),(1,−1,1),(−1,1,1),(−1,−1,−1)}` with `ζ = 4/k` when `k⁴ = 256`.
    pub fn singular_points_closed_form(&self) -> Vec<P1Triple<F::Elem>> {
        let f = self.field();
        let mut out = self.base_singular_points();
        let zeta = f.div(&f.from_i64(4), &self.k).expect("k != 0");
        if f.is_one(&f.pow(&zeta, 4)) {
            let (one, m1) = (zeta.clone(), f.neg(&zeta));
            for s in [
                [&one, &one, &m1],
                [&one, &m1, &one],
                [&m1, &one, &one],
                [&m1, &m1, &m1],
            ] {
                out.push(P1Triple::finite(s[0].clone(), s[1].clone(), s[2].clone()));
            }
        }
        out.sort();
        out
    }

    /// Singular points of the fiber over `xi` on `axis`, or `None` if smooth.
    ///
    /// Over `ξ = 0` and `ξ = ∞` the fiber is always singular. Otherwise the
    /// fiber is singular exactly when `k = 2u(ξ + v²ξ⁻¹)` with `u = ±1`,
    /// `v⁴ = 1`, with singular points `(ξ, v, −uv³)` and `(ξ, −v, uv³)`.
    /// Only values of `v` present in the field are reported.
    pub fn singular_fibers(
        &self,
        axis: usize,
        xi: &P1Elem<F::Elem>,
    ) -> Option<Vec<P1Triple<F::Elem>>> {
        let f = self.field();
        let place = |others: [P1Elem<F::Elem>; 2]| {
            let [a, b] = others;
            let mut c = [xi.clone(), a, b];
            // keep the remaining axes in increasing order
            match axis {
                1 => {}
                2 => c.swap(0, 1),
                _ => {
                    c.swap(0, 1);
                    c.swap(1, 2);
                }
            }
            P1Triple(c)
        };
        let zero = || P1Elem::Finite(f.zero());
        let mut out = match xi {
            P1Elem::Infinity => vec![
                place([P1Elem::Infinity, zero()]),
                place([zero(), P1Elem::Infinity]),
            ],
            P1Elem::Finite(x) if f.is_zero(x) => vec![
                place([zero(), zero()]),
                place([P1Elem::Infinity, P1Elem::Infinity]),
            ],
            P1Elem::Finite(x) => {
                let xinv = f.inv(x).expect("nonzero");
                let mut pts = Vec::new();
                for u in [f.one(), f.neg(&f.one())] {
                    for v in f.fourth_roots_of_unity() {
                        let v2 = f.square(&v);
                        let kk = f.mul(
                            &f.mul(&f.from_i64(2), &u),
                            &f.add(x, &f.mul(&v2, &xinv)),
                        );
                        if kk != self.k {
                            continue;
                        }
                        let w = f.neg(&f.mul(&u, &f.mul(&v2, &v)));
                        pts.push(place([P1Elem::Finite(v.clone()), P1Elem::Finite(w.clone())]));
                        pts.push(place([P1Elem::Finite(f.neg(&v)), P1Elem::Finite(f.neg(&w))]));
                    }
                }
                pts
            }
        };
        out.sort();
        out.dedup();
        (!out.is_empty()).then_some(out)
    }
}

impl<F: Field> Deref for WkSurface<F> {
    type Target = Surface<F>;

    fn deref(&self) -> &Surface<F> {
        &self.surface
    }
}

/// All finite-or-infinite values of P¹(F_p), finite ones ascending, ∞ last.
pub fn p1_points(ctx: &PrimeField) -> impl Iterator<Item = P1Elem<u64>> {
    ctx.elements()
        .map(P1Elem::Finite)
        .chain(std::iter::once(P1Elem::Infinity))
}

/// Every point of `W(F_p)` exactly once, lexicographic in `(x, y, z)` with
/// ∞ after the finite values; a double root contributes one point.
pub fn enumerate_points(w: &Surface<PrimeField>) -> Vec<P1Triple<u64>> {
    let f = w.field();
    let mut out = Vec::new();
    for x in p1_points(f) {
        for y in p1_points(f) {
            let base = P1Triple([x.clone(), y.clone(), P1Elem::Infinity]);
            let q = w.form().coord_quadratic(f, &base, 3);
            match q.roots(f) {
                Some(roots) => {
                    for z in roots {
                        out.push(P1Triple([x.clone(), y.clone(), z]));
                    }
                }
                None => {
                    for z in p1_points(f) {
                        out.push(P1Triple([x.clone(), y.clone(), z]));
                    }
                }
            }
        }
    }
    out
}

impl WkSurface<PrimeField> {
    pub fn over_fp(ctx: &PrimeField, k: i64) -> Result<Self, GeometryError> {
        WkSurface::new(ctx.clone(), ctx.reduce(k))
    }

    pub fn points(&self) -> Vec<P1Triple<u64>> {
        enumerate_points(self)
    }

    /// Singular points over `F_p`: every point of `W_k(F_p)` is moved into
    /// the affine chart by a δ-inversion and tested there with the affine
    /// partials `F_x = 2x + 2xy²z² + kyz` (and cyclic).
    pub fn singular_points_fp(&self) -> Vec<P1Triple<u64>> {
        let f = self.field();
        let k = *self.k();
        let mut out = Vec::new();
        for p in self.points() {
            let inf: Vec<usize> = (0..3).filter(|&i| p.0[i].is_infinite()).collect();
            let invert: [bool; 3] = match inf.as_slice() {
                [] => [false; 3],
                [a, b] => std::array::from_fn(|i| i == *a || i == *b),
                [a] => {
                    // pair the infinite coordinate with a nonzero finite one
                    let other = (0..3)
                        .find(|&i| i != *a && p.0[i] != P1Elem::Finite(0))
                        .expect("(inf,0,0) is not on W_k");
                    std::array::from_fn(|i| i == *a || i == other)
                }
                _ => continue,
            };
            let q: Vec<u64> = (0..3)
                .map(|i| {
                    let c = if invert[i] { p.0[i].inv(f) } else { p.0[i].clone() };
                    *c.finite().expect("affine after inversion")
                })
                .collect();
            let (x, y, z) = (q[0], q[1], q[2]);
            let two = 2;
            let grad = |a: u64, b: u64, c: u64| {
                // 2a + 2ab²c² + kbc
                let t = f.mul(&f.mul(&a, &f.square(&b)), &f.square(&c));
                f.add(&f.add(&f.mul(&two, &a), &f.mul(&two, &t)), &f.mul(&k, &f.mul(&b, &c)))
            };
            if grad(x, y, z) == 0 && grad(y, x, z) == 0 && grad(z, x, y) == 0 {
                out.push(p);
            }
        }
        out.sort();
        out
    }
}
