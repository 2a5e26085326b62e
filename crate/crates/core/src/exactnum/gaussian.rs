use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// A complex number `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Division by conjugate multiplication. `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let n = rhs.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let p = self * &rhs.conj();
        Some(Self::new(p.re / &n, p.im / n))
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}i", self.re, sign, self.im.abs())
    }
}
