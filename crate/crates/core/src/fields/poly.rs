//! Dense univariate polynomials over any [`Field`], stored low degree first
//! with no trailing zeros (the zero polynomial is the empty vector).

use super::{Field, FieldError};

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, with `None` for the zero polynomial.
pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn constant<F: Field>(f: &F, c: F::Elem) -> Poly<F::Elem> {
    trim(f, vec![c])
}

pub fn monomial<F: Field>(f: &F, c: F::Elem, deg: usize) -> Poly<F::Elem> {
    if f.is_zero(&c) {
        return Vec::new();
    }
    let mut out = vec![f.zero(); deg];
    out.push(c);
    out
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(f, out)
}

pub fn neg<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    add(f, a, &neg(f, b))
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Poly<F::Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn pow<F: Field>(f: &F, a: &[F::Elem], n: u32) -> Poly<F::Elem> {
    let mut acc = vec![f.one()];
    for _ in 0..n {
        acc = mul(f, &acc, a);
    }
    acc
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
        .collect();
    trim(f, out)
}

/// Quotient and remainder; errors only if the leading coefficient of `b`
/// is not invertible (zero divisor in a quotient ring) or `b` is zero.
pub fn divrem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<(Poly<F::Elem>, Poly<F::Elem>), FieldError> {
    let db = degree(b).ok_or(FieldError::DivisionByZero)?;
    let lc_inv = f.inv(&b[db])?;
    let mut r: Poly<F::Elem> = a.to_vec();
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lc_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, bc));
        }
        q[shift] = c;
        // the leading term cancels exactly
        r.pop();
        r = trim(f, r);
    }
    Ok((trim(f, q), r))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Poly<F::Elem>, FieldError> {
    Ok(divrem(f, a, b)?.1)
}

/// Exact division; the caller guarantees `b | a`.
pub fn div_exact<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<Poly<F::Elem>, FieldError> {
    Ok(divrem(f, a, b)?.0)
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Result<Poly<F::Elem>, FieldError> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(lc) => {
            let inv = f.inv(lc)?;
            Ok(scale(f, a, &inv))
        }
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Poly<F::Elem>, FieldError> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(f, &x, &y)?;
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Extended Euclid: returns `(g, s)` with `g = gcd(a, m)` monic and
/// `s·a ≡ g (mod m)`.
pub fn gcdext_mod<F: Field>(
    f: &F,
    a: &[F::Elem],
    m: &[F::Elem],
) -> Result<(Poly<F::Elem>, Poly<F::Elem>), FieldError> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Poly<F::Elem>, Poly<F::Elem>) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1)?;
        let s = sub(f, &s0, &mul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    let lc = r0.last().cloned().ok_or(FieldError::DivisionByZero)?;
    let inv = f.inv(&lc)?;
    Ok((scale(f, &r0, &inv), scale(f, &s0, &inv)))
}

/// Product of the distinct irreducible factors of a nonzero polynomial over
/// `F_p` (monic). Handles inseparable parts by taking p-th roots, which over
/// a prime field act on coefficients as the identity.
pub fn radical_fp<F: Field>(f: &F, a: &[F::Elem]) -> Result<Poly<F::Elem>, FieldError> {
    let a = monic(f, a)?;
    if degree(&a).unwrap_or(0) == 0 {
        return Ok(vec![f.one()]);
    }
    let d = derivative(f, &a);
    if d.is_empty() {
        let p = f.characteristic() as usize;
        let root: Poly<F::Elem> = a.iter().step_by(p).cloned().collect();
        return radical_fp(f, &root);
    }
    let c = gcd(f, &a, &d)?;
    let w = div_exact(f, &a, &c)?;
    if degree(&c) == Some(0) {
        return Ok(w);
    }
    let rc = radical_fp(f, &c)?;
    let g = gcd(f, &w, &rc)?;
    monic(f, &div_exact(f, &mul(f, &w, &rc), &g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::PrimeField;

    fn p(c: &[u64]) -> Vec<u64> {
        c.to_vec()
    }

    #[test]
    fn divrem_reconstructs() {
        let f = PrimeField::new(13).unwrap();
        let a = p(&[3, 0, 5, 7, 1, 2]);
        let b = p(&[1, 4, 9]);
        let (q, r) = divrem(&f, &a, &b).unwrap();
        assert!(r.len() < b.len());
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
    }

    #[test]
    fn gcd_and_ext() {
        let f = PrimeField::new(7).unwrap();
        // (x-1)(x-2) and (x-1)(x-3)
        let a = mul(&f, &p(&[6, 1]), &p(&[5, 1]));
        let b = mul(&f, &p(&[6, 1]), &p(&[4, 1]));
        assert_eq!(gcd(&f, &a, &b).unwrap(), p(&[6, 1]));
        let m = p(&[1, 0, 1]); // x^2+1 irreducible mod 7
        let (g, s) = gcdext_mod(&f, &p(&[2, 3]), &m).unwrap();
        assert_eq!(g, p(&[1]));
        assert_eq!(rem(&f, &mul(&f, &s, &p(&[2, 3])), &m).unwrap(), p(&[1]));
    }

    #[test]
    fn radical_char_p() {
        let f = PrimeField::new(3).unwrap();
        // x^3 - 2 = (x - 2)^3 over F_3
        assert_eq!(radical_fp(&f, &p(&[1, 0, 0, 1])).unwrap(), p(&[1, 1]));
        // (x^3 + 2)(x + 1)^2 x
        let a = mul(&f, &p(&[2, 0, 0, 1]), &mul(&f, &p(&[1, 1]), &p(&[0, 1, 1])));
        let r = radical_fp(&f, &a).unwrap();
        assert_eq!(r, p(&[0, 2, 0, 1])); // x(x+1)(x-1) = x^3 - x
        let g = PrimeField::new(11).unwrap();
        let sq = mul(&g, &p(&[3, 1]), &p(&[3, 1]));
        assert_eq!(radical_fp(&g, &mul(&g, &sq, &p(&[5, 1]))).unwrap().len(), 3);
    }
}
