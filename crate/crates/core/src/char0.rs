//! Finite orbits in characteristic zero: the known families over exact
//! fields, their reductions mod p, specializations of the 288 family over
//! F_p, and consistency checks on orbits that do not lift.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::autos::{circ_elements, default_generators, delta_elements, Generator};
use crate::fields::{parse_elem_with, parse_field, poly_resultant_i64, ExactField, Field, FieldError, PrimeField};
use crate::geometry::{parse_triple, GeometryError, P1Elem, P1Triple, WkSurface};
use crate::orbits::{orbit_closure, FpOrbitEngine, OrbitError, DEFAULT_ORBIT_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Char0Error {
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("orbit has {found} points, expected {expected}")]
    SizeMismatch { found: usize, expected: usize },
    #[error("suborbit sizes {found:?}, expected {expected:?}")]
    SuborbitMismatch { found: Vec<usize>, expected: Vec<usize> },
    #[error("relation {0} fails")]
    RelationFailure(String),
    #[error("no root mod {p}: {relation} does not vanish at the given values")]
    NoRootModP { p: u64, relation: String },
    #[error("refused specialization: {0} vanishes")]
    Degenerate(String),
    #[error("family '{0}' depends on k and cannot take another value")]
    FixedK(String),
    #[error("check failed: {0}")]
    CheckFailure(String),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Static description of a family: every quantity is an expression in the
/// field's generators and in derived names, so the same text can be
/// evaluated exactly or over F_p at chosen parameter values.
struct Template {
    name: &'static str,
    field: &'static str,
    /// Names defined in terms of generators, in order.
    derived: &'static [(&'static str, &'static str)],
    k: &'static str,
    seeds: &'static [&'static str],
    /// Expressions that vanish identically.
    relations: &'static [&'static str],
    /// Expressions that must not vanish at a specialization.
    nonvanishing: &'static [&'static str],
    size: usize,
    /// 𝒢°-orbit size of each seed, when known.
    suborbits: &'static [usize],
    k_free: bool,
}

const TEMPLATES: &[Template] = &[
    Template {
        name: "size1",
        field: "Q",
        derived: &[],
        k: "1",
        seeds: &["(0,0,0)"],
        relations: &[],
        nonvanishing: &[],
        size: 1,
        suborbits: &[1],
        k_free: true,
    },
    Template {
        name: "size3",
        field: "Q",
        derived: &[],
        k: "1",
        seeds: &["(0,inf,inf)"],
        relations: &[],
        nonvanishing: &[],
        size: 3,
        suborbits: &[3],
        k_free: true,
    },
    Template {
        name: "size4",
        field: "Q",
        derived: &[],
        k: "4",
        seeds: &["(-1,-1,-1)"],
        relations: &[],
        nonvanishing: &[],
        size: 4,
        suborbits: &[4],
        k_free: false,
    },
    Template {
        name: "size24",
        field: "Q(t)",
        derived: &[],
        k: "-2*(t+t^-1)",
        seeds: &["(t,1,1)", "(t^-1,1,1)"],
        relations: &[],
        nonvanishing: &["t^4-1"],
        size: 24,
        suborbits: &[],
        k_free: false,
    },
    Template {
        name: "size48",
        field: "Q[i]/(i^2+1)",
        derived: &[],
        k: "1",
        seeds: &["(1,i,0)", "(1,i,inf)"],
        relations: &["i^2+1"],
        nonvanishing: &[],
        size: 48,
        suborbits: &[],
        k_free: true,
    },
    Template {
        name: "size64",
        field: "Q[b]/(b^3+b^2+b-1)",
        derived: &[],
        k: "-(b+b^-1)^2",
        seeds: &["(b,b,b)", "(b,b^-1,b^-1)", "(b,b,1)", "(b^-1,b^-1,1)", "(b,b^-1,1)"],
        relations: &["b^3+b^2+b-1"],
        nonvanishing: &[],
        size: 64,
        suborbits: &[4, 12, 12, 12, 24],
        k_free: false,
    },
    Template {
        name: "size96",
        field: "Q[e]/(e^4+1)",
        derived: &[],
        k: "-2*e^2",
        seeds: &["(e,e^3,0)", "(e,e^3,e^6)", "(e,e^2,e^5)", "(e,e,inf)"],
        relations: &["e^4+1"],
        nonvanishing: &[],
        size: 96,
        suborbits: &[],
        k_free: false,
    },
    Template {
        name: "size144",
        field: "Q[b]/(b^4+2*b^3-2*b^2+2*b+1)",
        derived: &[("a", "(b+b^-1+4)*(b-b^-1)/4")],
        k: "4*a^-1",
        seeds: &[
            "(a,b,1)",
            "(a^-1,b,1)",
            "(a,b^-1,1)",
            "(a^-1,b^-1,1)",
            "(a,b,-b)",
            "(a^-1,b^-1,-b)",
        ],
        relations: &["a^4+4*a^2-1", "b^2+(a^2+3)*b+1", "b^4+2*b^3-2*b^2+2*b+1"],
        nonvanishing: &[],
        size: 144,
        suborbits: &[],
        k_free: false,
    },
    Template {
        name: "size160",
        field: "Q[b]/(b^8+2*b^4-4*b^3-4*b^2-4*b+1)",
        derived: &[("g", "2*b/(b^4+1)")],
        k: "-(3+b^4)/b",
        seeds: &[
            "(b,b,b)",
            "(b^-1,b^-1,b)",
            "(b,b,g)",
            "(b^-1,b^-1,g)",
            "(b,b^-1,g^-1)",
            "(1,b,g)",
            "(1,b^-1,g)",
            "(1,b,g^-1)",
            "(1,b^-1,g^-1)",
        ],
        relations: &["b^8+2*b^4-4*b^3-4*b^2-4*b+1", "g*(b^4+1)-2*b"],
        nonvanishing: &[],
        size: 160,
        suborbits: &[4, 12, 12, 12, 24, 24, 24, 24, 24],
        k_free: false,
    },
    Template {
        name: "size192",
        field: "Q[i]/(i^2+1)(t)",
        derived: &[],
        k: "i*(t^2-t^-2)",
        seeds: &[
            "(t,i*t,0)",
            "(t,-i*t,1)",
            "(t,i*t^-1,1)",
            "(t,i*t^-1,inf)",
            "(t^-1,-i*t,1)",
            "(t^-1,i*t,inf)",
            "(t^-1,i*t^-1,0)",
            "(t^-1,i*t^-1,1)",
        ],
        relations: &["i^2+1"],
        nonvanishing: &["t^8-1"],
        size: 192,
        suborbits: &[],
        k_free: false,
    },
];

pub const FAMILY_NAMES: [&str; 10] = [
    "size1", "size3", "size4", "size24", "size48", "size64", "size96", "size144", "size160",
    "size192",
];

fn template(name: &str) -> Result<&'static Template, Char0Error> {
    TEMPLATES
        .iter()
        .find(|t| t.name == name)
        .ok_or_else(|| Char0Error::UnknownFamily(name.to_string()))
}

/// A family materialized over its exact field.
#[derive(Debug, Clone)]
pub struct FiniteOrbitFamily {
    pub name: String,
    pub surface: WkSurface<ExactField>,
    pub seeds: Vec<P1Triple<<ExactField as Field>::Elem>>,
    pub expected_size: usize,
    /// Expected 𝒢°-orbit size per seed; empty when not tabulated.
    pub expected_suborbits: Vec<usize>,
    /// Names in scope for the family's expressions.
    pub names: Vec<(String, <ExactField as Field>::Elem)>,
    relations: Vec<String>,
}

impl FiniteOrbitFamily {
    pub fn field(&self) -> &ExactField {
        self.surface.field()
    }
}

fn scope<F: Field>(
    f: &F,
    mut names: Vec<(String, F::Elem)>,
    derived: &[(&str, &str)],
) -> Result<Vec<(String, F::Elem)>, FieldError> {
    for (n, e) in derived {
        let v = parse_elem_with(f, &names, e)?;
        names.push((n.to_string(), v));
    }
    Ok(names)
}

pub fn build_family(name: &str) -> Result<FiniteOrbitFamily, Char0Error> {
    let t = template(name)?;
    build(t, t.k)
}

/// A k-independent family at another value of k, e.g. `"3/7"`.
pub fn build_family_with_k(name: &str, k: &str) -> Result<FiniteOrbitFamily, Char0Error> {
    let t = template(name)?;
    if !t.k_free {
        return Err(Char0Error::FixedK(name.to_string()));
    }
    build(t, k)
}

fn build(t: &Template, k: &str) -> Result<FiniteOrbitFamily, Char0Error> {
    let field = parse_field(t.field)?;
    let names = scope(&field, field.generators(), t.derived)?;
    let k = parse_elem_with(&field, &names, k)?;
    let seeds = t
        .seeds
        .iter()
        .map(|s| parse_triple(&field, &names, s))
        .collect::<Result<Vec<_>, _>>()?;
    let surface = WkSurface::new(field, k)?;
    for s in &seeds {
        if !surface.contains(s) {
            return Err(GeometryError::NotOnSurface(s.format(surface.field())).into());
        }
    }
    Ok(FiniteOrbitFamily {
        name: t.name.to_string(),
        surface,
        seeds,
        expected_size: t.size,
        expected_suborbits: t.suborbits.to_vec(),
        names,
        relations: t.relations.iter().map(|r| r.to_string()).collect(),
    })
}

fn circ_orbit<F: Field>(f: &F, p: &P1Triple<F::Elem>) -> BTreeSet<P1Triple<F::Elem>> {
    circ_elements().iter().map(|g| g.apply_linear(f, p)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub name: String,
    pub field: String,
    pub k: String,
    pub size: usize,
    pub expected: usize,
    /// 𝒢°-orbit size of each seed.
    pub seed_suborbits: Vec<usize>,
    /// Points of the closure lying in some seed's 𝒢°-orbit.
    pub covered_by_seeds: usize,
    /// Sizes of all 𝒢°-orbits in the closure, ascending.
    pub suborbit_sizes: Vec<usize>,
}

/// Closes the seeds under the full group, checks the size, checks that the
/// seeds' 𝒢°-orbits partition the closure, and checks tabulated suborbit sizes.
pub fn verify_family(fam: &FiniteOrbitFamily) -> Result<FamilyReport, Char0Error> {
    let f = fam.field();
    for r in &fam.relations {
        if !f.is_zero(&parse_elem_with(f, &fam.names, r)?) {
            return Err(Char0Error::RelationFailure(r.clone()));
        }
    }
    let orbit = orbit_closure(&fam.surface, &fam.seeds, &default_generators(false), DEFAULT_ORBIT_CAP)?;
    if orbit.len() != fam.expected_size {
        return Err(Char0Error::SizeMismatch {
            found: orbit.len(),
            expected: fam.expected_size,
        });
    }
    let seed_suborbits: Vec<usize> = fam.seeds.iter().map(|s| circ_orbit(f, s).len()).collect();
    let covered: BTreeSet<_> = fam.seeds.iter().flat_map(|s| circ_orbit(f, s)).collect();
    if !fam.expected_suborbits.is_empty() && seed_suborbits != fam.expected_suborbits {
        return Err(Char0Error::SuborbitMismatch {
            found: seed_suborbits,
            expected: fam.expected_suborbits.clone(),
        });
    }
    let size = orbit.len();
    let mut left: BTreeSet<_> = orbit.into_iter().collect();
    let mut suborbit_sizes = Vec::new();
    while let Some(q) = left.iter().next().cloned() {
        let o = circ_orbit(f, &q);
        for r in &o {
            left.remove(r);
        }
        suborbit_sizes.push(o.len());
    }
    suborbit_sizes.sort_unstable();
    Ok(FamilyReport {
        name: fam.name.clone(),
        field: f.to_string(),
        k: f.format(fam.surface.k()),
        size,
        expected: fam.expected_size,
        seed_suborbits,
        covered_by_seeds: covered.len(),
        suborbit_sizes,
    })
}

/// Builds and verifies every family, in parallel, in [`FAMILY_NAMES`] order.
pub fn verify_all_families() -> Vec<Result<FamilyReport, Char0Error>> {
    FAMILY_NAMES
        .par_iter()
        .map(|n| build_family(n).and_then(|f| verify_family(&f)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub family: String,
    pub p: u64,
    pub k: u64,
    pub size: usize,
    pub expected: usize,
    /// The closure is a full orbit of the F_p decomposition.
    pub full_orbit: bool,
}

fn fp_scope(
    f: &PrimeField,
    t: &Template,
    assignments: &[(&str, i64)],
) -> Result<Vec<(String, u64)>, Char0Error> {
    let mut names: Vec<(String, u64)> = assignments
        .iter()
        .map(|(n, v)| (n.to_string(), f.reduce(*v)))
        .collect();
    if t.field.contains("[i]") && !names.iter().any(|(n, _)| n == "i") {
        let i = f
            .sqrt(&f.neg(&1))
            .ok_or(Char0Error::NoRootModP {
                p: f.p(),
                relation: "i^2+1".into(),
            })?;
        names.push(("i".into(), i));
    }
    for (n, e) in t.derived {
        if !names.iter().any(|(m, _)| m == n) {
            let v = parse_elem_with(f, &names, e)?;
            names.push((n.to_string(), v));
        }
    }
    for r in t.relations {
        if !f.is_zero(&parse_elem_with(f, &names, r)?) {
            return Err(Char0Error::NoRootModP {
                p: f.p(),
                relation: r.to_string(),
            });
        }
    }
    for e in t.nonvanishing {
        if f.is_zero(&parse_elem_with(f, &names, e)?) {
            return Err(Char0Error::Degenerate(e.to_string()));
        }
    }
    Ok(names)
}

/// Evaluates a family at parameter values in F_p (names as in the family's
/// expressions) and re-verifies the orbit size inside `W_k(F_p)`.
pub fn reduce_family_mod_p(
    name: &str,
    p: u64,
    assignments: &[(&str, i64)],
) -> Result<ReductionReport, Char0Error> {
    let t = template(name)?;
    let f = PrimeField::new(p)?;
    let names = fp_scope(&f, t, assignments)?;
    let k = parse_elem_with(&f, &names, t.k)?;
    let seeds = t
        .seeds
        .iter()
        .map(|s| parse_triple(&f, &names, s))
        .collect::<Result<Vec<_>, _>>()?;
    let w = WkSurface::new(f.clone(), k)?;
    let orbit = orbit_closure(&w, &seeds, &default_generators(false), DEFAULT_ORBIT_CAP)?;
    let engine = FpOrbitEngine::new(&w)?;
    let d = engine.decompose(&crate::autos::compact_generators(false));
    let full_orbit = d.orbit_of(&orbit[0]).map(|o| o.size) == Some(orbit.len());
    if orbit.len() != t.size {
        return Err(Char0Error::SizeMismatch {
            found: orbit.len(),
            expected: t.size,
        });
    }
    Ok(ReductionReport {
        family: t.name.to_string(),
        p,
        k,
        size: orbit.len(),
        expected: t.size,
        full_orbit,
    })
}

/// The twelve points of a 𝒢^σ half-orbit of the 288 family, in terms of
/// `a, b, g, d` for α, β, γ, δ.
const P288: [&str; 12] = [
    "(a,b,g)",
    "(d^-1,b,g)",
    "(d^-1,-a^-1,g)",
    "(-b^-1,-a^-1,g)",
    "(a,-d,g)",
    "(-b^-1,-d,g)",
    "(a,b,d)",
    "(g^-1,b,d)",
    "(g^-1,-a^-1,d)",
    "(-b^-1,-a^-1,d)",
    "(d^-1,b,a^-1)",
    "(g^-1,b,a^-1)",
];

/// σ₁, σ₂, σ₃ images of each point: `(index, through λ)`, 1-based.
const SIGMA288: [[(usize, bool); 3]; 12] = [
    [(2, false), (5, false), (7, false)],
    [(1, false), (3, false), (11, false)],
    [(4, false), (2, false), (11, true)],
    [(3, false), (6, false), (10, false)],
    [(6, false), (1, false), (7, true)],
    [(5, false), (4, false), (10, true)],
    [(8, false), (5, true), (1, false)],
    [(7, false), (9, false), (12, false)],
    [(10, false), (8, false), (12, true)],
    [(9, false), (6, true), (4, false)],
    [(12, false), (3, true), (2, false)],
    [(11, false), (9, true), (8, false)],
];

const C_RELATIONS: [&str; 3] = [
    "a^2*b-a^2*g+a*b^2*g^2-a+b^2*g-b*g^2",
    "a^2*g^2-a*b^2*g^3+a*b+b*g^3",
    "b^3*g^3-b^2+b*g-g^2",
];

/// λ(x,y,z) = (x,−z,−y).
pub const LAMBDA: Generator = Generator::Circ {
    perm: [0, 2, 1],
    signs: [1, -1, -1],
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Specialization288Report {
    pub p: u64,
    pub k: u64,
    pub alpha: u64,
    pub beta: u64,
    pub gamma: u64,
    pub delta: u64,
    /// Which collapse condition holds, if any.
    pub exception: Option<String>,
    pub size: usize,
    pub expected: usize,
    pub sigma_suborbit: usize,
    /// Elements of 𝒢° preserving the 𝒢^σ-orbit.
    pub stabilizer: Vec<String>,
}

pub fn verify_288_specialization(
    p: u64,
    k: i64,
    alpha: i64,
    beta: i64,
    gamma: i64,
) -> Result<Specialization288Report, Char0Error> {
    let f = PrimeField::new(p)?;
    let mut names: Vec<(String, u64)> = vec![
        ("a".into(), f.reduce(alpha)),
        ("b".into(), f.reduce(beta)),
        ("g".into(), f.reduce(gamma)),
    ];
    for r in C_RELATIONS {
        if !f.is_zero(&parse_elem_with(&f, &names, r)?) {
            return Err(Char0Error::RelationFailure(r.to_string()));
        }
    }
    let delta = parse_elem_with(&f, &names, "(a^2+b^2)/(g*(a^2*b^2+1))")?;
    let k_formula = parse_elem_with(&f, &names, "-(a^2+b^2+g^2+a^2*b^2*g^2)/(a*b*g)")?;
    if k_formula != f.reduce(k) {
        return Err(Char0Error::RelationFailure(format!(
            "k = {} from the parameters, given {}",
            k_formula,
            f.reduce(k)
        )));
    }
    names.push(("d".into(), delta));
    let w = WkSurface::new(f.clone(), k_formula)?;
    let pts = P288
        .iter()
        .map(|s| parse_triple(&f, &names, s))
        .collect::<Result<Vec<_>, _>>()?;
    for (j, row) in SIGMA288.iter().enumerate() {
        for (axis, &(m, through)) in row.iter().enumerate() {
            let img = Generator::Sigma(axis + 1)
                .apply(&w, &pts[j])
                .map_err(OrbitError::from)?;
            let want = if through {
                LAMBDA.apply_linear(&f, &pts[m - 1])
            } else {
                pts[m - 1].clone()
            };
            if img != want {
                return Err(Char0Error::RelationFailure(format!(
                    "sigma{}(P{}) = {}, expected {}",
                    axis + 1,
                    j + 1,
                    img,
                    want
                )));
            }
        }
    }
    let exception = [("3a^4=-1", "3*a^4+1"), ("b^4=-3", "b^4+3"), ("g^4=-3", "g^4+3")]
        .into_iter()
        .find(|(_, e)| matches!(parse_elem_with(&f, &names, e), Ok(v) if v == 0))
        .map(|(label, _)| label.to_string());
    let expected = if exception.is_some() { 144 } else { 288 };
    let sigmas: Vec<Generator> = (1..=3).map(Generator::Sigma).collect();
    let sub: BTreeSet<_> = orbit_closure(&w, &pts[..1], &sigmas, DEFAULT_ORBIT_CAP)?
        .into_iter()
        .collect();
    let stabilizer: Vec<String> = circ_elements()
        .into_iter()
        .filter(|g| sub.iter().all(|q| sub.contains(&g.apply_linear(&f, q))))
        .map(|g| g.to_string())
        .collect();
    let size = orbit_closure(&w, &pts[..1], &default_generators(false), DEFAULT_ORBIT_CAP)?.len();
    if size != expected {
        return Err(Char0Error::SizeMismatch {
            found: size,
            expected,
        });
    }
    Ok(Specialization288Report {
        p,
        k: f.reduce(k),
        alpha: f.reduce(alpha),
        beta: f.reduce(beta),
        gamma: f.reduce(gamma),
        delta,
        exception,
        size,
        expected,
        sigma_suborbit: sub.len(),
        stabilizer,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub found: String,
    pub expected: String,
    pub ok: bool,
}

fn outcome(name: &str, found: impl ToString, expected: impl ToString) -> CheckOutcome {
    let (found, expected) = (found.to_string(), expected.to_string());
    CheckOutcome {
        name: name.to_string(),
        ok: found == expected,
        found,
        expected,
    }
}

/// Coefficients, low degree first, of the two conditions on α for a
/// σ₃-fixed point in the orbit of `(α,−α,1)`.
pub const CAUTION_DEG18: [i64; 19] = [
    1, 0, 9, 0, -8, 0, 44, 0, -38, 0, 62, 0, -16, 0, 12, 0, -3, 0, 1,
];
pub const CAUTION_DEG12: [i64; 13] = [1, 0, 2, 0, 15, 0, 12, 0, 15, 0, 2, 0, 1];

fn fp_orbit_size(p: u64, k: i64, seed: [i64; 3], gens: &[Generator]) -> Result<usize, Char0Error> {
    let f = PrimeField::new(p)?;
    let w = WkSurface::over_fp(&f, k)?;
    let s = P1Triple(seed.map(|c| P1Elem::Finite(f.reduce(c))));
    Ok(orbit_closure(&w, &[s], gens, DEFAULT_ORBIT_CAP)?.len())
}

/// Every consistency check, pass or fail.
pub fn cautionary_report() -> Result<Vec<CheckOutcome>, Char0Error> {
    let mut out = Vec::new();
    let expected = BigInt::from(2).pow(80) * BigInt::from(53 * 53);
    out.push(outcome(
        "resultant",
        poly_resultant_i64(&CAUTION_DEG18, &CAUTION_DEG12),
        expected,
    ));
    let full = default_generators(false);
    out.push(outcome("W_8(F_53) orbit of (16,16,16)", fp_orbit_size(53, 8, [16, 16, 16], &full)?, 256));
    out.push(outcome("W_2(F_23) orbit of (6,11,18)", fp_orbit_size(23, 2, [6, 11, 18], &full)?, 256));

    let f = PrimeField::new(71)?;
    let w = WkSurface::over_fp(&f, 13)?;
    let seed = P1Triple::finite(22, 22, f.reduce(-23));
    let orbit = orbit_closure(&w, &[seed], &full, DEFAULT_ORBIT_CAP)?;
    out.push(outcome("W_13(F_71) orbit of (22,22,-23)", orbit.len(), 384));
    let mut hat: Vec<Generator> = circ_elements();
    hat.extend(delta_elements());
    let set: BTreeSet<_> = orbit.iter().cloned().collect();
    let invariant = set
        .iter()
        .all(|q| hat.iter().all(|g| set.contains(&g.apply_linear(&f, q))));
    out.push(outcome("invariant under the 96-element group", invariant, true));
    let mut left = set.clone();
    let mut sizes = Vec::new();
    while let Some(q) = left.iter().next().cloned() {
        let o = orbit_closure(&w, &[q], &hat, DEFAULT_ORBIT_CAP)?;
        for r in &o {
            left.remove(r);
        }
        sizes.push(o.len());
    }
    sizes.sort_unstable();
    out.push(outcome("suborbits under the 96-element group", format!("{sizes:?}"), "[48, 48, 48, 48, 96, 96]"));
    let names: Vec<(String, u64)> = [("a", 22), ("b", 23), ("g", 9), ("d", 44)]
        .iter()
        .map(|(n, v)| (n.to_string(), *v))
        .collect();
    let reps = ["(a,a,-b)", "(a,a,-g)", "(b,b,g)", "(b,b,d)", "(a,-b,g^-1)", "(b,-d,1)"];
    let mut rep_sizes = Vec::new();
    for r in reps {
        let q = parse_triple(&f, &names, r)?;
        if !set.contains(&q) {
            rep_sizes.push(0);
            continue;
        }
        rep_sizes.push(orbit_closure(&w, &[q], &hat, DEFAULT_ORBIT_CAP)?.len());
    }
    out.push(outcome("representative suborbits", format!("{rep_sizes:?}"), "[48, 48, 48, 48, 96, 96]"));
    Ok(out)
}

/// Fails with the first check that does not hold.
pub fn cautionary_checks() -> Result<Vec<CheckOutcome>, Char0Error> {
    let report = cautionary_report()?;
    if let Some(bad) = report.iter().find(|c| !c.ok) {
        return Err(Char0Error::CheckFailure(format!(
            "{}: found {}, expected {}",
            bad.name, bad.found, bad.expected
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_family() {
        assert!(matches!(build_family("size5"), Err(Char0Error::UnknownFamily(_))));
        assert!(matches!(build_family_with_k("size64", "2"), Err(Char0Error::FixedK(_))));
    }

    #[test]
    fn small_families() {
        for (n, size) in [("size1", 1), ("size3", 3), ("size4", 4)] {
            let r = verify_family(&build_family(n).unwrap()).unwrap();
            assert_eq!(r.size, size);
        }
    }

    #[test]
    fn size24_over_function_field() {
        let r = verify_family(&build_family("size24").unwrap()).unwrap();
        assert_eq!(r.size, 24);
        assert_eq!(r.seed_suborbits, vec![12, 12]);
    }

    #[test]
    fn size64_suborbits() {
        let r = verify_family(&build_family("size64").unwrap()).unwrap();
        assert_eq!(r.size, 64);
        assert_eq!(r.suborbit_sizes, vec![4, 12, 12, 12, 24]);
    }

    #[test]
    fn size144_parameters_lie_in_one_quartic_field() {
        let fam = build_family("size144").unwrap();
        assert_eq!(fam.field().degree_over_q(), Some(4));
        let r = verify_family(&fam).unwrap();
        assert_eq!(r.size, 144);
        // the six tabulated generators miss the suborbit of (b^-1, b^-1, -a)
        assert_eq!(r.covered_by_seeds, 132);
        assert_eq!(r.suborbit_sizes, vec![12, 12, 24, 24, 24, 24, 24]);
    }

    #[test]
    fn size96_seed_at_infinity() {
        let fam = build_family("size96").unwrap();
        let printed = parse_triple(fam.field(), &fam.names, "(e,e^2,inf)").unwrap();
        assert!(!fam.surface.contains(&printed));
        let r = verify_family(&fam).unwrap();
        assert_eq!(r.size, 96);
        assert_eq!(r.suborbit_sizes, vec![12, 12, 12, 12, 24, 24]);
    }

    #[test]
    fn size48_at_other_k() {
        for k in ["2", "-3/5", "7/2"] {
            let r = verify_family(&build_family_with_k("size48", k).unwrap()).unwrap();
            assert_eq!(r.size, 48);
        }
    }

    #[test]
    fn wrong_expected_size_is_reported() {
        let mut fam = build_family("size4").unwrap();
        fam.expected_size = 5;
        assert_eq!(
            verify_family(&fam),
            Err(Char0Error::SizeMismatch { found: 4, expected: 5 })
        );
    }

    #[test]
    fn reductions_of_table_rows() {
        let r = reduce_family_mod_p("size144", 11, &[("a", 4), ("b", 5)]).unwrap();
        assert_eq!((r.k, r.size, r.full_orbit), (1, 144, true));
        let r = reduce_family_mod_p("size160", 19, &[("b", 6), ("g", 10)]).unwrap();
        assert_eq!((r.k, r.size, r.full_orbit), (2, 160, true));
        // printed with k = 1; the parameters give 9 = 1·i in F_41
        let r = reduce_family_mod_p("size160", 41, &[("b", 25), ("g", 35)]).unwrap();
        assert_eq!(r.k, 9);
        let f = PrimeField::new(41).unwrap();
        assert_eq!(crate::orbits::k_class_of(&f, 9), crate::orbits::k_class_of(&f, 1));
    }

    #[test]
    fn reduction_refuses_bad_parameters() {
        assert!(matches!(
            reduce_family_mod_p("size144", 11, &[("a", 3), ("b", 5)]),
            Err(Char0Error::NoRootModP { p: 11, .. })
        ));
        // t = 2 has t^4 = 1 in F_5
        assert!(matches!(
            reduce_family_mod_p("size24", 5, &[("t", 2)]),
            Err(Char0Error::Degenerate(_))
        ));
        let r = reduce_family_mod_p("size24", 13, &[("t", 2)]).unwrap();
        assert_eq!(r.size, 24);
    }

    #[test]
    fn specialization_288() {
        let r = verify_288_specialization(47, 11, 3, 6, 11).unwrap();
        assert_eq!((r.delta, r.size, r.sigma_suborbit), (15, 288, 24));
        assert_eq!(r.stabilizer, vec![Generator::IDENTITY.to_string(), LAMBDA.to_string()]);
        let r = verify_288_specialization(19, 9, 7, 2, 3).unwrap();
        assert_eq!((r.size, r.exception.as_deref()), (144, Some("b^4=-3")));
    }

    #[test]
    fn specialization_rejects_off_curve_values() {
        assert!(matches!(
            verify_288_specialization(47, 11, 3, 6, 12),
            Err(Char0Error::RelationFailure(_))
        ));
        assert!(matches!(
            verify_288_specialization(47, 12, 3, 6, 11),
            Err(Char0Error::RelationFailure(_))
        ));
    }
}
