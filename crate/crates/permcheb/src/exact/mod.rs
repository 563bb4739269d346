//! Exact scalar and polynomial arithmetic.
//!
//! Everything downstream (Chebyshev expressions, closed forms, continued
//! fractions, transfer matrices) reduces to the types here:
//!
//! * [`Rat`] — arbitrary-precision rationals,
//! * [`Poly`] — dense univariate polynomials over `Rat`,
//! * [`RatFun`] — canonical rational functions,
//! * [`Series`], [`BiSeries`], [`TriSeries`] — truncated power series in
//!   one, two, and three variables.

mod poly;
mod ratfun;
mod series;

pub use poly::Poly;
pub use ratfun::RatFun;
pub use series::{BiSeries, Series, TriSeries, YzPoly};
pub(crate) use series::{yz_add, yz_mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient with the conventions the counting formulas rely on:
/// `binomial(n, 0) = 1` for every `n` (including negative), and the result
/// is `0` whenever `k < 0` or `0 <= n < k`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if k == 0 {
        return BigInt::one();
    }
    if n < k {
        // Covers every negative n with k > 0 as well: those cases never
        // carry combinatorial weight in the sums that use this function.
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// n-th Catalan number.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n as i64, n as i64) / BigInt::from(n + 1)
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
