//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rat, Rat};
use crate::{Error, Result};

/// A polynomial in one variable `x`, stored densely, lowest degree first,
/// with no trailing zero coefficients (the zero polynomial is an empty
/// coefficient list).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    /// Build from coefficients (lowest degree first); trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(rat(1))
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![rat(0), rat(1)])
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(c: Rat, d: usize) -> Self {
        let mut coeffs = vec![rat(0); d];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Lowest nonzero coefficient together with its degree.
    pub fn lowest_nonzero(&self) -> Option<(usize, &Rat)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^d`.
    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![rat(0); d];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn eval(&self, v: &Rat) -> Rat {
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    }

    /// Exact division with remainder: `self = q * div + r`, `deg r < deg div`.
    pub fn divmod(&self, div: &Poly) -> Result<(Poly, Poly)> {
        if div.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = div.coeffs.len() - 1;
        let lead = div.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), Poly::new(rem)));
        }
        let mut quot = vec![rat(0); rem.len() - dd];
        while rem.len() > dd && !rem.is_empty() {
            let r_lead = rem.last().unwrap();
            if r_lead.is_zero() {
                rem.pop();
                continue;
            }
            let q = r_lead / lead;
            let shift = rem.len() - 1 - dd;
            for i in 0..dd {
                let t = &q * &div.coeffs[i];
                rem[shift + i] -= t;
            }
            rem.pop();
            quot[shift] = q;
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, div: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(div)?;
        if !r.is_zero() {
            return Err(Error::Truncation(format!(
                "inexact polynomial division: ({self}) / ({div})"
            )));
        }
        Ok(q)
    }

    /// Rescales to the primitive integer polynomial with the same roots:
    /// clears denominators, then divides out the integer content. The sign
    /// of the leading coefficient is preserved.
    fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
        self.scale(&Rat::new(den_lcm, num_gcd))
    }

    /// Monic greatest common divisor (Euclid); `gcd(0, 0) = 0`. Remainders
    /// are rescaled to primitive integer form between steps — a plain
    /// rational remainder sequence roughly squares its coefficient sizes
    /// per step, which turns moderate-degree inputs into multi-minute
    /// computations.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        match a.leading() {
            Some(l) if !l.is_one() => {
                let inv = l.recip();
                a.scale(&inv)
            }
            _ => a,
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![rat(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Renders like `1 - 2*x + x^2`, ascending degree.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (d, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{d}")?,
                (_, false) => write!(f, "{mag}*x^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_ints(cs)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
        assert_eq!(p(&[0, 0, 3]).degree(), Some(2));
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 1]); // 1 + x
        let b = p(&[1, -1]); // 1 - x
        assert_eq!(&a * &b, p(&[1, 0, -1]));
        assert_eq!(&a + &b, p(&[2]));
        assert_eq!(&a - &b, p(&[0, 2]));
        assert_eq!(-&a, p(&[-1, -1]));
    }

    #[test]
    fn divmod_exact_and_remainder() {
        let a = p(&[1, 0, -1]); // (1-x)(1+x)
        let (q, r) = a.divmod(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[1, -1]));
        assert!(r.is_zero());

        let (q, r) = p(&[1, 1, 1]).divmod(&p(&[0, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert_eq!(r, p(&[1]));

        assert!(p(&[1]).divmod(&Poly::zero()).is_err());
    }

    #[test]
    fn gcd_is_monic() {
        let a = &p(&[1, 1]) * &p(&[2, 2, 2]); // (1+x) * 2(1+x+x^2)
        let b = &p(&[1, 1]) * &p(&[0, 4]); // (1+x) * 4x
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(Poly::zero().gcd(&Poly::zero()), Poly::zero());
        assert_eq!(Poly::zero().gcd(&p(&[0, 3])), p(&[0, 1]));
    }

    #[test]
    fn display_format() {
        assert_eq!(p(&[1, -2]).to_string(), "1 - 2*x");
        assert_eq!(p(&[0, 0, 1]).to_string(), "x^2");
        assert_eq!(p(&[-1, 1]).to_string(), "-1 + x");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(
            Poly::new(vec![rat(0), super::super::rat_frac(1, 2)]).to_string(),
            "1/2*x"
        );
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-6i64..=6, 0..6).prop_map(|cs| Poly::from_ints(&cs))
    }

    proptest! {
        #[test]
        fn divmod_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            if !r.is_zero() {
                prop_assert!(r.degree().unwrap() < b.degree().unwrap());
            }
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            let g = a.gcd(&b);
            if !g.is_zero() {
                prop_assert!(a.divmod(&g).unwrap().1.is_zero());
                prop_assert!(b.divmod(&g).unwrap().1.is_zero());
            }
        }

        #[test]
        fn mul_commutes(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
