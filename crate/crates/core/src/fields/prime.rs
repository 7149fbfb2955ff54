use std::sync::Arc;

use super::{Field, FieldError};

const INVERSE_TABLE_LIMIT: u64 = 1 << 16;

/// The prime field `F_p` for an odd prime `p < 2³²`. Elements are canonical
/// residues in `0..p`.
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: u64,
    // p - 1 = 2^s * q with q odd
    s: u32,
    q: u64,
    nonresidue: u64,
    inverses: Option<Arc<Vec<u32>>>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if p > u32::MAX as u64 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut f = PrimeField {
            p,
            s,
            q,
            nonresidue: 0,
            inverses: None,
        };
        f.nonresidue = (2..p).find(|&a| f.legendre(a) == -1).unwrap_or(0);
        if p <= INVERSE_TABLE_LIMIT {
            let mut inv = vec![0u32; p as usize];
            inv[1] = 1;
            for i in 2..p {
                // inv(i) = -(p / i) * inv(p mod i)
                let r = inv[(p % i) as usize] as u64;
                inv[i as usize] = ((p - (p / i) * r % p) % p) as u32;
            }
            f.inverses = Some(Arc::new(inv));
        }
        Ok(f)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Representative in `(-p/2, p/2]`, for display of signed values.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn powmod(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        acc
    }

    /// Legendre symbol: 0, 1 or −1.
    pub fn legendre(&self, a: u64) -> i32 {
        let a = a % self.p;
        if a == 0 {
            return 0;
        }
        if self.powmod(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// Tonelli–Shanks. Returns the root `r` with `r <= p - r`.
    pub fn sqrt_residue(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let mut m = self.s;
        let mut c = self.powmod(self.nonresidue, self.q);
        let mut t = self.powmod(a, self.q);
        let mut r = self.powmod(a, (self.q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = t2 * t2 % p;
                i += 1;
            }
            let b = self.powmod(c, 1 << (m - i - 1));
            m = i;
            c = b * b % p;
            t = t * c % p;
            r = r * b % p;
        }
        Some(r.min(p - r))
    }

    #[inline]
    pub fn inv_residue(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        match &self.inverses {
            Some(t) => Some(t[a as usize] as u64),
            None => Some(self.powmod(a, self.p - 2)),
        }
    }

    /// All residues, in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n)
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        self.inv_residue(*a).ok_or(FieldError::DivisionByZero)
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn sqrt(&self, a: &u64) -> Option<u64> {
        self.sqrt_residue(*a)
    }

    fn pow(&self, a: &u64, n: u64) -> u64 {
        self.powmod(*a, n)
    }
}
