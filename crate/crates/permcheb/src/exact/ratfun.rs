//! Canonical rational functions over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat, Poly, Rat, Series};
use crate::{Error, Result};

/// A quotient of two polynomials in canonical form: the fraction is fully
/// reduced (monic gcd divided out) and scaled so the denominator's constant
/// term is 1 when nonzero, otherwise its lowest nonzero coefficient is 1.
/// Canonical form makes structural equality semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let c0 = den.coeff(0);
        let scale = if !c0.is_zero() {
            c0
        } else {
            den.lowest_nonzero().expect("nonzero denominator").1.clone()
        };
        if !scale.is_one() {
            let inv = scale.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFun { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn x() -> Self {
        RatFun::from_poly(Poly::x())
    }

    pub fn constant(c: Rat) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFun::constant(rat(n))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = RatFun::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Power-series expansion around the origin through `x^order`.
    pub fn series(&self, order: usize) -> Result<Series> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.num.coeff(n);
            for j in 1..=n {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    acc -= &dj * &coeffs[n - j];
                }
            }
            coeffs.push(acc / &d0);
        }
        Ok(Series::new(coeffs))
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFun::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Renders like `(1 - x)/(1 - 2*x)`; a polynomial prints without the quotient.
impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        // Parenthesize a side only when it has several terms.
        let wrap = |p: &Poly| {
            let s = p.to_string();
            if s.contains(' ') || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    #[test]
    fn canonical_form() {
        // (2 - 2x) / (2 - 4x) reduces and rescales to (1 - x)/(1 - 2x).
        assert_eq!(rf(&[2, -2], &[2, -4]), rf(&[1, -1], &[1, -2]));
        // Common factor is cancelled.
        assert_eq!(rf(&[0, 1, 1], &[0, 0, 1]), rf(&[1, 1], &[0, 1]));
        // Zero normalizes to 0/1.
        assert_eq!(rf(&[0], &[5, 3]), RatFun::zero());
        assert!(RatFun::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn canonical_scaling_when_constant_term_vanishes() {
        // 1 / (4x): denominator scaled to lowest coefficient 1.
        let f = rf(&[1], &[0, 4]);
        assert_eq!(f.denominator(), &Poly::x());
        assert_eq!(f.numerator(), &Poly::constant(super::super::rat_frac(1, 4)));
    }

    #[test]
    fn series_expansion() {
        let f = rf(&[1, -1], &[1, -2]); // (1-x)/(1-2x)
        let s = f.series(6).unwrap();
        let expect = [1i64, 1, 2, 4, 8, 16, 32];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(n), rat(e));
        }
        assert!(rf(&[1], &[0, 1]).series(3).is_err());
    }

    #[test]
    fn pow_and_recip() {
        let f = rf(&[1], &[1, -1]);
        assert_eq!(f.pow(2).unwrap(), rf(&[1], &[1, -2, 1]));
        assert_eq!(f.pow(-1).unwrap(), rf(&[1, -1], &[1]));
        assert_eq!(f.pow(0).unwrap(), RatFun::one());
        assert!(RatFun::zero().recip().is_err());
    }

    #[test]
    fn display_canonical_text() {
        assert_eq!(rf(&[1, -1], &[1, -2]).to_string(), "(1 - x)/(1 - 2*x)");
        assert_eq!(rf(&[0, 1], &[1]).to_string(), "x");
        assert_eq!(RatFun::zero().to_string(), "0");
        assert_eq!(rf(&[1], &[1, -1]).to_string(), "1/(1 - x)");
        assert_eq!(rf(&[1], &[0, 4]).to_string(), "(1/4)/x");
    }

    fn arb_ratfun() -> impl Strategy<Value = RatFun> {
        (
            prop::collection::vec(-5i64..=5, 0..5),
            prop::collection::vec(-5i64..=5, 1..5),
        )
            .prop_filter_map("nonzero denominator", |(n, d)| {
                let den = Poly::from_ints(&d);
                if den.is_zero() {
                    None
                } else {
                    Some(RatFun::new(Poly::from_ints(&n), den).unwrap())
                }
            })
    }

    proptest! {
        #[test]
        fn field_identities(a in arb_ratfun(), b in arb_ratfun()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(&a * &b, &b * &a);
            if !b.is_zero() {
                prop_assert_eq!(&a.div(&b).unwrap() * &b, a);
            }
        }

        #[test]
        fn series_of_product_is_convolution(a in arb_ratfun(), b in arb_ratfun()) {
            let ok_a = a.series(8);
            let ok_b = b.series(8);
            prop_assume!(ok_a.is_ok() && ok_b.is_ok());
            let sa = ok_a.unwrap();
            let sb = ok_b.unwrap();
            let sp = (&a * &b).series(8).unwrap();
            prop_assert_eq!(sa.mul_truncated(&sb), sp);
        }
    }
}
