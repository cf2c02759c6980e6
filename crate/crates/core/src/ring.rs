//! The coefficient-ring abstraction shared by every structure in the crate.
//!
//! Rings here are runtime values (a finite ring is built from a spec), so the
//! element type is separate from the ring object, in the style of a "ring
//! context". All operations are infallible on elements the ring produced.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Literal form of a coefficient, used by the polynomial printer and parser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    /// Image of an integer under the canonical map from the integers.
    Int(BigInt),
    /// Raw canonical encoding, written `{c0,c1,...}`.
    Encoded(Vec<u64>),
}

/// A commutative unital ring given as a context object.
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + PartialEq + Debug {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// The canonical ring map from the integers.
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    /// Whether `a` is a canonical element of this ring.
    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn literal(&self, a: &Self::Elem) -> Literal;

    fn from_literal(&self, lit: &Literal) -> Option<Self::Elem> {
        match lit {
            Literal::Int(n) => Some(self.from_int(n)),
            Literal::Encoded(_) => None,
        }
    }

    /// Short human-readable label.
    fn label(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }
}

/// A ring with an enumerable finite carrier.
pub trait FiniteCarrier: Ring {
    fn size(&self) -> usize;

    /// The carrier in canonical order.
    fn elements(&self) -> Vec<Self::Elem>;

    fn idempotents(&self) -> Vec<Self::Elem> {
        self.elements()
            .into_iter()
            .filter(|e| self.mul(e, e) == *e)
            .collect()
    }
}

/// The integers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn literal(&self, a: &BigInt) -> Literal {
        Literal::Int(a.clone())
    }

    fn label(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// True when the literal is a negative integer; the printer writes these as
/// subtraction.
pub(crate) fn literal_is_negative(lit: &Literal) -> bool {
    matches!(lit, Literal::Int(n) if n.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_pow_and_sum() {
        let z = Integers;
        assert_eq!(z.pow(&BigInt::from(3), 5), BigInt::from(243));
        assert_eq!(z.pow(&BigInt::from(7), 0), BigInt::one());
        let xs = [BigInt::from(2), BigInt::from(-5), BigInt::from(10)];
        assert_eq!(z.sum(&xs), BigInt::from(7));
    }

    #[test]
    fn integers_are_unbounded() {
        let z = Integers;
        let big = z.pow(&BigInt::from(2), 200);
        assert_eq!(big.bits(), 201);
        assert_eq!(z.sub(&big, &big), BigInt::zero());
    }
}
