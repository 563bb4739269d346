//! Chebyshev polynomials of the second kind evaluated at `t = 1/(2*sqrt(x))`.
//!
//! Counting formulas in this crate are stated in terms of `U_r(t)` with
//! `t^2 = 1/(4x)`. Such expressions live in the quadratic field extension
//! `Q(x)[t] / (t^2 - 1/(4x))`, represented here by [`TExpr`]: a pair of
//! rational functions `even + odd*t`. Every final counting formula must
//! collapse back to a plain rational function in `x` (`odd = 0`); failure to
//! collapse signals a mis-transcribed formula and surfaces as an error.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::{Poly, RatFun};
use crate::{Error, Result};

/// An element `even(x) + odd(x) * t` of `Q(x)[t] / (t^2 - 1/(4x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TExpr {
    even: RatFun,
    odd: RatFun,
}

/// `1/(4x)`, the square of `t`.
fn t_squared() -> RatFun {
    RatFun::new(Poly::one(), Poly::monomial(crate::exact::rat(4), 1)).expect("4x is nonzero")
}

impl TExpr {
    pub fn new(even: RatFun, odd: RatFun) -> Self {
        TExpr { even, odd }
    }

    pub fn zero() -> Self {
        TExpr::new(RatFun::zero(), RatFun::zero())
    }

    pub fn one() -> Self {
        TExpr::new(RatFun::one(), RatFun::zero())
    }

    pub fn from_ratfun(f: RatFun) -> Self {
        TExpr::new(f, RatFun::zero())
    }

    pub fn from_int(n: i64) -> Self {
        TExpr::from_ratfun(RatFun::from_int(n))
    }

    /// The element `2t`.
    pub fn two_t() -> Self {
        TExpr::new(RatFun::zero(), RatFun::from_int(2))
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// True when the element is a plain rational function in `x`.
    pub fn is_rational(&self) -> bool {
        self.odd.is_zero()
    }

    pub fn even_part(&self) -> &RatFun {
        &self.even
    }

    pub fn odd_part(&self) -> &RatFun {
        &self.odd
    }

    /// Collapse to a rational function; errors if a `t` component survives.
    pub fn into_ratfun(self) -> Result<RatFun> {
        if self.odd.is_zero() {
            Ok(self.even)
        } else {
            Err(Error::Irreducible(format!(
                "residual odd component {}",
                self.odd
            )))
        }
    }

    pub fn recip(&self) -> Result<TExpr> {
        // (a + bt)^(-1) = (a - bt) / (a^2 - b^2/(4x)); the norm vanishes only
        // for the zero element because 1/(4x) is not a square in Q(x).
        let norm = &(&self.even * &self.even) - &(&(&self.odd * &self.odd) * &t_squared());
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = norm.recip()?;
        Ok(TExpr::new(&self.even * &inv, &(-&self.odd) * &inv))
    }

    pub fn div(&self, rhs: &TExpr) -> Result<TExpr> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<TExpr> {
        let mut base = if e < 0 { self.recip()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = TExpr::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        Ok(acc)
    }
}

impl Add for &TExpr {
    type Output = TExpr;
    fn add(self, rhs: &TExpr) -> TExpr {
        TExpr::new(&self.even + &rhs.even, &self.odd + &rhs.odd)
    }
}

impl Sub for &TExpr {
    type Output = TExpr;
    fn sub(self, rhs: &TExpr) -> TExpr {
        TExpr::new(&self.even - &rhs.even, &self.odd - &rhs.odd)
    }
}

impl Neg for &TExpr {
    type Output = TExpr;
    fn neg(self) -> TExpr {
        TExpr::new(-&self.even, -&self.odd)
    }
}

impl Mul for &TExpr {
    type Output = TExpr;
    fn mul(self, rhs: &TExpr) -> TExpr {
        let even = &(&self.even * &rhs.even) + &(&(&self.odd * &rhs.odd) * &t_squared());
        let odd = &(&self.even * &rhs.odd) + &(&self.odd * &rhs.even);
        TExpr::new(even, odd)
    }
}

impl fmt::Display for TExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.odd.is_zero() {
            write!(f, "{}", self.even)
        } else if self.even.is_zero() {
            write!(f, "[{}]*t", self.odd)
        } else {
            write!(f, "{} + [{}]*t", self.even, self.odd)
        }
    }
}

/// `U_r(t)` as a [`TExpr`], for `r >= -1`, via `U_-1 = 0`, `U_0 = 1`,
/// `U_r = 2t*U_(r-1) - U_(r-2)`. Components have pure parity: `U_r` is a
/// rational function of `x` alone for even `r` and `t` times one for odd `r`.
pub fn chebyshev_u(r: i64) -> Result<TExpr> {
    if r < -1 {
        return Err(Error::OutOfStatedRange(format!(
            "chebyshev_u index {r} < -1"
        )));
    }
    let mut prev = TExpr::zero(); // U_-1
    let mut cur = TExpr::one(); // U_0
    if r == -1 {
        return Ok(prev);
    }
    let two_t = TExpr::two_t();
    for _ in 0..r {
        let next = &(&two_t * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The `k`-th approximant `R_k = 2t * U_(k-1)(t) / U_k(t)` of the continued
/// fraction for the Catalan generating function: `R_0 = 0`, `R_1 = 1`, and
/// `R_k = 1/(1 - x*R_(k-1))`. Its series counts permutations avoiding `132`
/// together with the increasing pattern of length `k`.
pub fn catalan_approximant(k: usize) -> Result<RatFun> {
    let num = &TExpr::two_t() * &chebyshev_u(k as i64 - 1)?;
    num.div(&chebyshev_u(k as i64)?)?.into_ratfun()
}
