use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly;
use super::{Field, FieldError};

/// How an exact field is built.
#[derive(Debug)]
pub enum FieldDescriptor {
    Rationals,
    /// `base[generator]/(modulus)`, modulus monic of degree ≥ 2.
    QuotientExtension {
        base: ExactField,
        modulus: Vec<ExactElem>,
        generator: String,
    },
    /// `base(variable)`.
    RationalFunctions { base: ExactField, variable: String },
}

/// An element of an [`ExactField`]. The variant always matches the field's
/// descriptor; the stored form is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ExactElem {
    Rational(BigRational),
    /// Coefficients over the base field, low degree first, degree < deg(modulus).
    Poly(Vec<ExactElem>),
    /// Numerator and monic denominator over the base field, coprime.
    Fraction(Vec<ExactElem>, Vec<ExactElem>),
}

/// An exact characteristic-zero field given by a tower of descriptors.
/// Cheap to clone and safe to share between threads.
#[derive(Clone)]
pub struct ExactField {
    desc: Arc<FieldDescriptor>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactField {
    pub fn rationals() -> Self {
        ExactField {
            desc: Arc::new(FieldDescriptor::Rationals),
        }
    }

    /// `base[name]/(modulus)`. The modulus is normalized to be monic. Over ℚ a
    /// rational-root test is run up front; otherwise irreducibility is only
    /// checked lazily when an inversion meets a zero divisor.
    pub fn quotient(
        base: &ExactField,
        modulus: Vec<ExactElem>,
        name: &str,
    ) -> Result<Self, FieldError> {
        let modulus = poly::trim(base, modulus);
        if modulus.len() < 3 {
            return Err(FieldError::Parse(format!(
                "modulus for {name} must have degree at least 2"
            )));
        }
        let modulus = poly::monic(base, &modulus)?;
        if let FieldDescriptor::Rationals = *base.desc {
            let coeffs: Vec<BigRational> = modulus
                .iter()
                .map(|c| match c {
                    ExactElem::Rational(r) => r.clone(),
                    _ => unreachable!("rational field element expected"),
                })
                .collect();
            if let Some(r) = rational_root(&coeffs) {
                return Err(FieldError::ReducibleModulus(format!("{name} - ({r})")));
            }
        }
        Ok(ExactField {
            desc: Arc::new(FieldDescriptor::QuotientExtension {
                base: base.clone(),
                modulus,
                generator: name.to_string(),
            }),
        })
    }

    pub fn rational_functions(base: &ExactField, name: &str) -> Self {
        ExactField {
            desc: Arc::new(FieldDescriptor::RationalFunctions {
                base: base.clone(),
                variable: name.to_string(),
            }),
        }
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn base(&self) -> Option<&ExactField> {
        match &*self.desc {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::QuotientExtension { base, .. }
            | FieldDescriptor::RationalFunctions { base, .. } => Some(base),
        }
    }

    /// Degree over ℚ, or `None` when the tower contains a function field.
    pub fn degree_over_q(&self) -> Option<usize> {
        match &*self.desc {
            FieldDescriptor::Rationals => Some(1),
            FieldDescriptor::QuotientExtension { base, modulus, .. } => {
                base.degree_over_q().map(|d| d * (modulus.len() - 1))
            }
            FieldDescriptor::RationalFunctions { .. } => None,
        }
    }

    /// Embeds an element of the immediate base field.
    pub fn embed(&self, b: ExactElem) -> ExactElem {
        match &*self.desc {
            FieldDescriptor::Rationals => b,
            FieldDescriptor::QuotientExtension { base, .. } => {
                ExactElem::Poly(poly::constant(base, b))
            }
            FieldDescriptor::RationalFunctions { base, .. } => {
                ExactElem::Fraction(poly::constant(base, b), vec![base.one()])
            }
        }
    }

    pub fn rational(&self, r: BigRational) -> ExactElem {
        match self.base() {
            None => ExactElem::Rational(r),
            Some(b) => self.embed(b.rational(r)),
        }
    }

    pub fn from_ratio(&self, n: i64, d: i64) -> ExactElem {
        self.rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The adjoined generator or variable of the top level of the tower.
    pub fn generator(&self) -> Option<ExactElem> {
        match &*self.desc {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::QuotientExtension { base, .. } => {
                Some(ExactElem::Poly(vec![base.zero(), base.one()]))
            }
            FieldDescriptor::RationalFunctions { base, .. } => Some(ExactElem::Fraction(
                vec![base.zero(), base.one()],
                vec![base.one()],
            )),
        }
    }

    /// Every generator name in the tower, each lifted to this field.
    pub fn generators(&self) -> Vec<(String, ExactElem)> {
        match &*self.desc {
            FieldDescriptor::Rationals => Vec::new(),
            FieldDescriptor::QuotientExtension {
                base, generator, ..
            }
            | FieldDescriptor::RationalFunctions {
                base,
                variable: generator,
            } => {
                let mut out: Vec<(String, ExactElem)> = base
                    .generators()
                    .into_iter()
                    .map(|(n, e)| (n, self.embed(e)))
                    .collect();
                out.push((generator.clone(), self.generator().expect("has generator")));
                out
            }
        }
    }

    /// Coordinates over ℚ in the power basis of the tower.
    pub fn flatten(&self, a: &ExactElem) -> Result<Vec<BigRational>, FieldError> {
        match (&*self.desc, a) {
            (FieldDescriptor::Rationals, ExactElem::Rational(r)) => Ok(vec![r.clone()]),
            (FieldDescriptor::QuotientExtension { base, modulus, .. }, ExactElem::Poly(c)) => {
                let bd = base.degree_over_q().ok_or(FieldError::NotAlgebraic)?;
                let mut out = Vec::with_capacity(bd * (modulus.len() - 1));
                for i in 0..modulus.len() - 1 {
                    match c.get(i) {
                        Some(x) => out.extend(base.flatten(x)?),
                        None => out.extend(std::iter::repeat(BigRational::zero()).take(bd)),
                    }
                }
                Ok(out)
            }
            (FieldDescriptor::RationalFunctions { .. }, _) => Err(FieldError::NotAlgebraic),
            _ => unreachable!("element does not belong to this field"),
        }
    }

    fn reduce_mod(&self, base: &ExactField, modulus: &[ExactElem], mut a: Vec<ExactElem>) -> Vec<ExactElem> {
        let d = modulus.len() - 1;
        while a.len() > d {
            let top = a.pop().expect("nonempty");
            let shift = a.len() - d;
            for (i, m) in modulus[..d].iter().enumerate() {
                a[shift + i] = base.sub(&a[shift + i], &base.mul(&top, m));
            }
        }
        poly::trim(base, a)
    }

    fn normalize_fraction(
        base: &ExactField,
        num: Vec<ExactElem>,
        den: Vec<ExactElem>,
    ) -> Result<ExactElem, FieldError> {
        if den.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_empty() {
            return Ok(ExactElem::Fraction(Vec::new(), vec![base.one()]));
        }
        let (num, den) = if den.len() == 1 {
            (num, den)
        } else {
            let g = poly::gcd(base, &num, &den)?;
            if g.len() > 1 {
                (poly::div_exact(base, &num, &g)?, poly::div_exact(base, &den, &g)?)
            } else {
                (num, den)
            }
        };
        let lc_inv = base.inv(den.last().expect("nonzero denominator"))?;
        Ok(ExactElem::Fraction(
            poly::scale(base, &num, &lc_inv),
            poly::scale(base, &den, &lc_inv),
        ))
    }

    fn wrap_if_compound(&self, s: String) -> String {
        let body = s.strip_prefix('-').unwrap_or(&s);
        if body.contains(['+', '-', ' ', '*', '^', '/']) {
            format!("({s})")
        } else {
            s
        }
    }

    fn format_poly(&self, base: &ExactField, c: &[ExactElem], name: &str) -> String {
        if c.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, coeff) in c.iter().enumerate().rev() {
            if base.is_zero(coeff) {
                continue;
            }
            let mut cs = base.format(coeff);
            let mut negative = false;
            if matches!(*base.desc, FieldDescriptor::Rationals) {
                if let Some(rest) = cs.strip_prefix('-') {
                    negative = true;
                    cs = rest.to_string();
                }
            } else {
                cs = self.wrap_if_compound(cs);
                // a single negated term, e.g. -i
                if let Some(rest) = cs.strip_prefix('-') {
                    negative = true;
                    cs = rest.to_string();
                }
            }
            let mono = match i {
                0 => String::new(),
                1 => name.to_string(),
                _ => format!("{name}^{i}"),
            };
            let term = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else {
                format!("{cs}*{mono}")
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

/// Rational root of an integer-clearable polynomial, by the rational root
/// theorem. Skipped (returns `None`) when the extreme coefficients are too
/// large to enumerate divisors.
fn rational_root(c: &[BigRational]) -> Option<BigRational> {
    let lcm = c
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = c.iter().map(|r| (r * &lcm).to_integer()).collect();
    if ints[0].is_zero() {
        return Some(BigRational::zero());
    }
    let limit = BigInt::from(1_000_000_000_000i64);
    let a0 = ints[0].abs();
    let an = ints.last().expect("nonempty").abs();
    if a0 > limit || an > limit {
        return None;
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut out = Vec::new();
        let r = n.sqrt();
        let mut d = BigInt::one();
        while d <= r {
            if (n % &d).is_zero() {
                out.push(d.clone());
                out.push(n / &d);
            }
            d += 1;
        }
        out
    };
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for sign in [1, -1] {
                let x = BigRational::new(&num * sign, den.clone());
                let v = ints
                    .iter()
                    .rev()
                    .fold(BigRational::zero(), |acc, ci| acc * &x + BigRational::from_integer(ci.clone()));
                if v.is_zero() {
                    return Some(x);
                }
            }
        }
    }
    None
}

fn as_rat(a: &ExactElem) -> &BigRational {
    match a {
        ExactElem::Rational(r) => r,
        _ => unreachable!("element does not belong to this field"),
    }
}

fn as_poly(a: &ExactElem) -> &[ExactElem] {
    match a {
        ExactElem::Poly(c) => c,
        _ => unreachable!("element does not belong to this field"),
    }
}

fn as_frac(a: &ExactElem) -> (&[ExactElem], &[ExactElem]) {
    match a {
        ExactElem::Fraction(n, d) => (n, d),
        _ => unreachable!("element does not belong to this field"),
    }
}

const BASE_FAILURE: &str = "base field inversion failed: reducible modulus in the tower";

impl Field for ExactField {
    type Elem = ExactElem;

    fn zero(&self) -> ExactElem {
        match &*self.desc {
            FieldDescriptor::Rationals => ExactElem::Rational(BigRational::zero()),
            FieldDescriptor::QuotientExtension { .. } => ExactElem::Poly(Vec::new()),
            FieldDescriptor::RationalFunctions { base, .. } => {
                ExactElem::Fraction(Vec::new(), vec![base.one()])
            }
        }
    }

    fn one(&self) -> ExactElem {
        self.from_i64(1)
    }

    fn from_i64(&self, n: i64) -> ExactElem {
        self.rational(rat(n))
    }

    fn add(&self, a: &ExactElem, b: &ExactElem) -> ExactElem {
        match &*self.desc {
            FieldDescriptor::Rationals => ExactElem::Rational(as_rat(a) + as_rat(b)),
            FieldDescriptor::QuotientExtension { base, .. } => {
                ExactElem::Poly(poly::add(base, as_poly(a), as_poly(b)))
            }
            FieldDescriptor::RationalFunctions { base, .. } => {
                let (an, ad) = as_frac(a);
                let (bn, bd) = as_frac(b);
                let (num, den) = if ad == bd {
                    (poly::add(base, an, bn), ad.to_vec())
                } else {
                    (
                        poly::add(base, &poly::mul(base, an, bd), &poly::mul(base, bn, ad)),
                        poly::mul(base, ad, bd),
                    )
                };
                Self::normalize_fraction(base, num, den).expect(BASE_FAILURE)
            }
        }
    }

    fn neg(&self, a: &ExactElem) -> ExactElem {
        match &*self.desc {
            FieldDescriptor::Rationals => ExactElem::Rational(-as_rat(a)),
            FieldDescriptor::QuotientExtension { base, .. } => {
                ExactElem::Poly(poly::neg(base, as_poly(a)))
            }
            FieldDescriptor::RationalFunctions { base, .. } => {
                let (n, d) = as_frac(a);
                ExactElem::Fraction(poly::neg(base, n), d.to_vec())
            }
        }
    }

    fn mul(&self, a: &ExactElem, b: &ExactElem) -> ExactElem {
        match &*self.desc {
            FieldDescriptor::Rationals => ExactElem::Rational(as_rat(a) * as_rat(b)),
            FieldDescriptor::QuotientExtension { base, modulus, .. } => {
                let prod = poly::mul(base, as_poly(a), as_poly(b));
                ExactElem::Poly(self.reduce_mod(base, modulus, prod))
            }
            FieldDescriptor::RationalFunctions { base, .. } => {
                let (an, ad) = as_frac(a);
                let (bn, bd) = as_frac(b);
                if an.is_empty() || bn.is_empty() {
                    return self.zero();
                }
                Self::normalize_fraction(base, poly::mul(base, an, bn), poly::mul(base, ad, bd))
                    .expect(BASE_FAILURE)
            }
        }
    }

    fn inv(&self, a: &ExactElem) -> Result<ExactElem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        match &*self.desc {
            FieldDescriptor::Rationals => Ok(ExactElem::Rational(as_rat(a).recip())),
            FieldDescriptor::QuotientExtension {
                base,
                modulus,
                generator,
            } => {
                let (g, s) = poly::gcdext_mod(base, as_poly(a), modulus)?;
                if g.len() > 1 {
                    return Err(FieldError::ReducibleModulus(
                        self.format_poly(base, &g, generator),
                    ));
                }
                Ok(ExactElem::Poly(self.reduce_mod(base, modulus, s)))
            }
            FieldDescriptor::RationalFunctions { base, .. } => {
                let (n, d) = as_frac(a);
                Self::normalize_fraction(base, d.to_vec(), n.to_vec())
            }
        }
    }

    fn is_zero(&self, a: &ExactElem) -> bool {
        match a {
            ExactElem::Rational(r) => r.is_zero(),
            ExactElem::Poly(c) => c.is_empty(),
            ExactElem::Fraction(n, _) => n.is_empty(),
        }
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn format(&self, a: &ExactElem) -> String {
        match &*self.desc {
            FieldDescriptor::Rationals => as_rat(a).to_string(),
            FieldDescriptor::QuotientExtension {
                base, generator, ..
            } => self.format_poly(base, as_poly(a), generator),
            FieldDescriptor::RationalFunctions { base, variable } => {
                let (n, d) = as_frac(a);
                let ns = self.format_poly(base, n, variable);
                if d.len() == 1 {
                    ns
                } else {
                    let ds = self.format_poly(base, d, variable);
                    format!("{}/{}", self.wrap_if_compound(ns), self.wrap_if_compound(ds))
                }
            }
        }
    }

    /// Exact over ℚ. In extensions, finds roots of the form `r·g^j` with `r`
    /// in the base field and `g` the generator; returns `None` otherwise.
    fn sqrt(&self, a: &ExactElem) -> Option<ExactElem> {
        match &*self.desc {
            FieldDescriptor::Rationals => {
                let r = as_rat(a);
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                (&n * &n == *r.numer() && &d * &d == *r.denom())
                    .then(|| ExactElem::Rational(BigRational::new(n, d)))
            }
            FieldDescriptor::QuotientExtension { base, modulus, .. } => {
                let g = self.generator().expect("has generator");
                let mut gj = self.one();
                for _ in 0..modulus.len() - 1 {
                    let b = self.div(a, &self.square(&gj)).ok()?;
                    let c = as_poly(&b);
                    if c.len() <= 1 {
                        let c0 = c.first().cloned().unwrap_or_else(|| base.zero());
                        if let Some(r) = base.sqrt(&c0) {
                            return Some(self.mul(&self.embed(r), &gj));
                        }
                    }
                    gj = self.mul(&gj, &g);
                }
                None
            }
            FieldDescriptor::RationalFunctions { base, .. } => {
                let (n, d) = as_frac(a);
                if n.len() <= 1 && d.len() == 1 {
                    let c0 = n.first().cloned().unwrap_or_else(|| base.zero());
                    base.sqrt(&c0).map(|r| self.embed(r))
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for ExactField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.desc {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::QuotientExtension {
                base,
                modulus,
                generator,
            } => write!(
                f,
                "{base}[{generator}]/({})",
                base_poly_string(self, base, modulus, generator)
            ),
            FieldDescriptor::RationalFunctions { base, variable } => {
                write!(f, "{base}({variable})")
            }
        }
    }
}

fn base_poly_string(top: &ExactField, base: &ExactField, c: &[ExactElem], name: &str) -> String {
    top.format_poly(base, c, name)
}

impl fmt::Debug for ExactField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactField({self})")
    }
}

impl PartialEq for ExactField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.desc, &other.desc) || self.to_string() == other.to_string()
    }
}

/// Monic minimal polynomial over ℚ (coefficients low degree first) of an
/// element of a finite tower, found as the first linear dependence among its
/// powers in the flattened ℚ-basis.
pub fn minimal_polynomial(
    field: &ExactField,
    a: &ExactElem,
) -> Result<Vec<BigRational>, FieldError> {
    let dim = field.degree_over_q().ok_or(FieldError::NotAlgebraic)?;
    // rows: (reduced vector, pivot, combination of powers)
    let mut rows: Vec<(Vec<BigRational>, usize, Vec<BigRational>)> = Vec::new();
    let mut power = field.one();
    for n in 0..=dim {
        let mut v = field.flatten(&power)?;
        let mut combo = vec![BigRational::zero(); n + 1];
        combo[n] = BigRational::one();
        for (row, piv, rc) in &rows {
            if v[*piv].is_zero() {
                continue;
            }
            let factor = &v[*piv] / &row[*piv];
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &factor * y;
            }
            for (x, y) in combo.iter_mut().zip(rc) {
                *x -= &factor * y;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(piv) => rows.push((v, piv, combo)),
            None => return Ok(combo),
        }
        power = field.mul(&power, a);
    }
    unreachable!("dim + 1 powers are always dependent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse_elem;
    use crate::fields::parse_field;

    fn q(n: i64) -> BigRational {
        rat(n)
    }

    #[test]
    fn gaussian_norm() {
        let k = parse_field("Q[i]/(i^2+1)").unwrap();
        let a = parse_elem(&k, "1+i").unwrap();
        let b = parse_elem(&k, "1-i").unwrap();
        assert_eq!(k.mul(&a, &b), k.from_i64(2));
    }

    #[test]
    fn cubic_inverse() {
        let k = parse_field("Q[b]/(b^3+b^2+b-1)").unwrap();
        let b = k.generator().unwrap();
        let inv = k.inv(&b).unwrap();
        assert_eq!(inv, parse_elem(&k, "b^2+b+1").unwrap());
        assert_eq!(k.mul(&b, &inv), k.one());
    }

    #[test]
    fn function_field_normalizes() {
        let k = parse_field("Q(t)").unwrap();
        let a = parse_elem(&k, "(t^2-1)/(t-1)").unwrap();
        assert_eq!(a, parse_elem(&k, "t+1").unwrap());
        let b = parse_elem(&k, "(2*t+2)/(4*t^2-4)").unwrap();
        // 1/(2t - 2): monic denominator t - 1 with numerator 1/2
        assert_eq!(k.format(&b), "(1/2)/(t - 1)");
        assert_eq!(b, k.inv(&parse_elem(&k, "2*t-2").unwrap()).unwrap());
    }

    #[test]
    fn reducible_modulus_detected() {
        assert!(matches!(
            parse_field("Q[x]/(x^2-4)"),
            Err(FieldError::ReducibleModulus(_))
        ));
        // no rational root but reducible: (x^2+1)(x^2+2)
        let k = parse_field("Q[x]/(x^4+3*x^2+2)").unwrap();
        let a = parse_elem(&k, "x^2+1").unwrap();
        assert!(matches!(k.inv(&a), Err(FieldError::ReducibleModulus(_))));
        assert_eq!(k.inv(&k.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn minimal_polynomials() {
        let k = parse_field("Q[i]/(i^2+1)").unwrap();
        let i = k.generator().unwrap();
        assert_eq!(minimal_polynomial(&k, &i).unwrap(), vec![q(1), q(0), q(1)]);
        assert_eq!(
            minimal_polynomial(&k, &k.from_ratio(3, 4)).unwrap(),
            vec![BigRational::new((-3).into(), 4.into()), q(1)]
        );
        let c = parse_field("Q[b]/(b^3+b^2+b-1)").unwrap();
        let s = parse_elem(&c, "b + 1/b").unwrap();
        let m = minimal_polynomial(&c, &s).unwrap();
        assert_eq!(m.len(), 4);
        // independent check: evaluate the polynomial at s in the field
        let val = m.iter().rev().fold(c.zero(), |acc, coeff| {
            c.add(&c.mul(&acc, &s), &c.rational(coeff.clone()))
        });
        assert!(c.is_zero(&val));
        let tower = parse_field("Q[i]/(i^2+1)[r]/(r^2-2)").unwrap();
        let e = parse_elem(&tower, "i + r").unwrap();
        // (i + sqrt2) has minimal polynomial x^4 - 2x^2 + 9
        assert_eq!(
            minimal_polynomial(&tower, &e).unwrap(),
            vec![q(9), q(0), q(-2), q(0), q(1)]
        );
        let ff = parse_field("Q(t)").unwrap();
        assert_eq!(
            minimal_polynomial(&ff, &ff.one()),
            Err(FieldError::NotAlgebraic)
        );
    }

    #[test]
    fn square_roots() {
        let k = ExactField::rationals();
        assert_eq!(k.sqrt(&k.from_ratio(9, 4)), Some(k.from_ratio(3, 2)));
        assert_eq!(k.sqrt(&k.from_i64(2)), None);
        let g = parse_field("Q[i]/(i^2+1)").unwrap();
        let r = g.sqrt(&g.from_i64(-1)).unwrap();
        assert_eq!(g.square(&r), g.from_i64(-1));
        let e = parse_field("Q[e]/(e^4+1)").unwrap();
        let r = e.sqrt(&e.from_i64(-1)).unwrap();
        assert_eq!(e.square(&r), e.from_i64(-1));
        assert_eq!(e.fourth_roots_of_unity().len(), 4);
        assert_eq!(k.fourth_roots_of_unity().len(), 2);
    }

    #[test]
    fn format_round_trips() {
        for (fs, es) in [
            ("Q[b]/(b^3+b^2+b-1)", "3/4*b^2 - b + 5"),
            ("Q[i]/(i^2+1)(t)", "(i*t^2 + 1)/(t - i)"),
            ("Q[b]/(b^4+2*b^3-2*b^2+2*b+1)[a]/(a^2 + (b^2+3*b+1)/b)", "(b + 1)*a - 2*b^3"),
        ] {
            let k = parse_field(fs).unwrap();
            let e = parse_elem(&k, es).unwrap();
            let back = parse_elem(&k, &k.format(&e)).unwrap();
            assert_eq!(e, back, "{fs}: {}", k.format(&e));
            assert_eq!(parse_field(&k.to_string()).unwrap(), k);
        }
        let k = parse_field("Q[i]/(i^2+1)(t)").unwrap();
        assert_eq!(k.format(&parse_elem(&k, "t - i").unwrap()), "t - i");
        assert_eq!(k.format(&parse_elem(&k, "-t^2 - i*t").unwrap()), "-t^2 - i*t");
    }
}
