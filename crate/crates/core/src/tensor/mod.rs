//! Graded multilinear algebra with Koszul signs.

mod carrier;
mod element;
mod lazy;
mod map;
mod perm;

pub use carrier::{Basis, Coefficients, GradedCarrier, Mono, Sym, MAX_VARS};
pub use element::Element;
pub use lazy::LazyMap;
pub use map::{
    hom_differential, insertion_bracket, pre_lie, MultiMap, OpTerm, RuleBuilder, SymWord,
};
pub use perm::{koszul_sign, Permutation};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rational = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d` as a rational.
pub fn qf(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^e` for a (possibly negative) exponent.
pub fn parity(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

pub(crate) fn signed(neg: bool, c: Rational) -> Rational {
    if neg {
        -c
    } else {
        c
    }
}

#[cfg(test)]
mod tests;
