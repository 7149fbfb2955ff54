use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Resultant of integer polynomials (coefficients low degree first) with the
/// convention `Res(f, g) = lc(f)^deg g · ∏ g(αᵢ)` over the roots αᵢ of `f`,
/// which is the determinant of the Sylvester matrix. Computed by
/// fraction-free Bareiss elimination.
pub fn poly_resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let f = strip(f);
    let g = strip(g);
    if f.is_empty() || g.is_empty() {
        return BigInt::zero();
    }
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut a = vec![vec![BigInt::zero(); size]; size];
    // high degree first along each row
    for r in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            a[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            a[n + r][r + j] = c.clone();
        }
    }
    bareiss_det(a)
}

pub fn poly_resultant_i64(f: &[i64], g: &[i64]) -> BigInt {
    let f: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
    let g: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
    poly_resultant(&f, &g)
}

fn strip(a: &[BigInt]) -> Vec<BigInt> {
    let mut v = a.to_vec();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Signed;
    use proptest::prelude::*;

    /// Independent oracle: Euclid over ℚ using Res(f,g) = lc(f)^(n - deg r) Res(f, r)
    /// with g ≡ r mod f, and Res(f, r) = (−1)^(m deg r) Res(r, f).
    fn euclid_resultant(f: &[BigRational], g: &[BigRational]) -> BigRational {
        let trim = |mut v: Vec<BigRational>| {
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
            v
        };
        let f = trim(f.to_vec());
        let g = trim(g.to_vec());
        if f.is_empty() || g.is_empty() {
            return BigRational::zero();
        }
        let m = f.len() - 1;
        let n = g.len() - 1;
        if m == 0 {
            return num_traits::pow(f[0].clone(), n);
        }
        let mut r = g.clone();
        while r.len() > m {
            let c = r.last().unwrap() / f.last().unwrap();
            let shift = r.len() - f.len();
            for (i, fc) in f.iter().enumerate() {
                r[shift + i] -= &c * fc;
            }
            r.pop();
            r = trim(r);
        }
        if r.is_empty() {
            return BigRational::zero();
        }
        let dr = r.len() - 1;
        let lc = f.last().unwrap().clone();
        let factor = num_traits::pow(lc, n - dr);
        let sign = if (m * dr) % 2 == 1 { -1 } else { 1 };
        factor * euclid_resultant(&r, &f) * BigRational::from_integer(sign.into())
    }

    fn to_q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn linear_factors_follow_convention() {
        // Res(x - a, x - b) = g(a) = a - b
        for (a, b) in [(3i64, 7i64), (-2, 5), (4, 4)] {
            assert_eq!(poly_resultant_i64(&[-a, 1], &[-b, 1]), BigInt::from(a - b));
        }
        assert_eq!(poly_resultant_i64(&[1, 0, 1], &[1, 0, 1]), BigInt::zero());
        assert_eq!(poly_resultant_i64(&[5], &[1, 2, 3]), BigInt::from(25));
    }

    #[test]
    fn cautionary_resultant() {
        let f18 = [1, 0, 9, 0, -8, 0, 44, 0, -38, 0, 62, 0, -16, 0, 12, 0, -3, 0, 1];
        let f12 = [1, 0, 2, 0, 15, 0, 12, 0, 15, 0, 2, 0, 1];
        let expected = num_traits::pow(BigInt::from(2), 80) * BigInt::from(53 * 53);
        assert_eq!(poly_resultant_i64(&f18, &f12), expected);
        let oracle = euclid_resultant(&to_q(&f18), &to_q(&f12));
        assert_eq!(oracle, BigRational::from_integer(expected));
    }

    proptest! {
        #[test]
        fn matches_euclid_and_antisymmetry(
            f in prop::collection::vec(-9i64..10, 1..7),
            g in prop::collection::vec(-9i64..10, 1..7),
        ) {
            let r = poly_resultant_i64(&f, &g);
            let oracle = euclid_resultant(&to_q(&f), &to_q(&g));
            prop_assert_eq!(BigRational::from_integer(r.clone()), oracle);
            let deg = |v: &[i64]| v.iter().rposition(|&c| c != 0).unwrap_or(0);
            let swapped = poly_resultant_i64(&g, &f);
            if (deg(&f) * deg(&g)) % 2 == 1 {
                prop_assert_eq!(r.abs(), swapped.abs());
                prop_assert_eq!(r, -swapped);
            } else {
                prop_assert_eq!(r, swapped);
            }
        }
    }
}
