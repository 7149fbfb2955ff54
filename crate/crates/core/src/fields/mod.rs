//! Field arithmetic behind a single trait: prime fields `F_p` and exact
//! characteristic-zero towers (ℚ, quotient extensions, rational function fields).

mod exact;
mod parse;
pub mod poly;
mod prime;
mod resultant;

use std::fmt;
use std::hash::Hash;

use thiserror::Error;

pub use exact::{minimal_polynomial, ExactElem, ExactField, FieldDescriptor};
pub use parse::{parse_elem, parse_elem_with, parse_field};
pub use prime::PrimeField;
pub use resultant::{poly_resultant, poly_resultant_i64};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("modulus {0} does not fit in 32 bits")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus is reducible: found factor {0}")]
    ReducibleModulus(String),
    #[error("element does not lie in a finite extension of Q")]
    NotAlgebraic,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Field operations shared by every module.
///
/// Elements are stored in canonical form, so `==` on [`Field::Elem`] is field
/// equality and hashing is consistent with it.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for the exact fields.
    fn characteristic(&self) -> u64;

    /// Human-readable form, parseable back by [`parse_elem`].
    fn format(&self, a: &Self::Elem) -> String;

    /// A square root when one is found in the field. Exact fields only
    /// search a limited set of candidates (see [`ExactField`]).
    fn sqrt(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// The fourth roots of unity present in the field, starting with 1, −1.
    fn fourth_roots_of_unity(&self) -> Vec<Self::Elem> {
        let one = self.one();
        let mut out = vec![one.clone(), self.neg(&one)];
        if let Some(i) = self.sqrt(&self.neg(&one)) {
            out.push(self.neg(&i));
            out.push(i);
        }
        out
    }
}
