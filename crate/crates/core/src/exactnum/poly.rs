use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{is_unit, ExactError, GaussianRational, Rational};

/// Dense polynomial with rational coefficients, lowest power first.
///
/// The coefficient vector is empty for the zero polynomial and otherwise has
/// a nonzero last entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate (`D` for operators, `k` for characteristic
    /// polynomials).
    pub fn var() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `var - root`.
    pub fn linear_factor(root: Rational) -> Self {
        Self::from_coeffs(vec![-root, Rational::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Number of vanishing low-order coefficients (`a_0 = … = a_{t-1} = 0`).
    pub fn low_order_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `var^t`; the low `t` coefficients must already be zero.
    pub fn shift_down(&self, t: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(t).all(Zero::is_zero));
        Self::from_coeffs(self.coeffs.iter().skip(t).cloned().collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation at a Gaussian rational.
    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| {
                let mut v = &acc * z;
                v.re += c;
                v
            })
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Smallest `k` with `p^{(k)}(z) != 0`; a non-root has multiplicity 0.
    pub fn root_multiplicity(&self, z: &GaussianRational) -> Result<usize, ExactError> {
        if self.is_zero() {
            return Err(ExactError::UndefinedMultiplicity);
        }
        let mut p = self.clone();
        let mut k = 0;
        while p.eval(z).is_zero() {
            p = p.derivative();
            k += 1;
        }
        Ok(k)
    }

    /// Renders with the given variable name, highest power first, in a form
    /// the operator parser accepts.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let monomial = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if monomial.is_empty() {
                out.push_str(&mag.to_string());
            } else if is_unit(&mag) {
                out.push_str(&monomial);
            } else {
                out.push_str(&format!("{mag}*{monomial}"));
            }
        }
        out
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("D"))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: Self) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: Self) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: Self) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: Self) -> RatPoly {
        &self + &rhs
    }
}

impl Sub for RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: Self) -> RatPoly {
        &self - &rhs
    }
}

impl Mul for RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: Self) -> RatPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(int(re), int(im))
    }

    /// (k-2)^2 (k+4)^2, expanded by hand-free repeated multiplication.
    fn ex6() -> RatPoly {
        RatPoly::from_i64(&[-2, 1]).pow(2) * RatPoly::from_i64(&[4, 1]).pow(2)
    }

    #[test]
    fn eval_examples() {
        let p = RatPoly::from_i64(&[13, -4, 1]);
        assert!(p.eval(&gi(2, 3)).is_zero());
        let q = RatPoly::from_i64(&[1, 0, 1]);
        assert!(q.eval(&gi(0, 1)).is_zero());
        let r = RatPoly::from_i64(&[4, 1]);
        assert_eq!(r.eval(&GaussianRational::zero()), gi(4, 0));
    }

    #[test]
    fn derivative_examples() {
        let p = RatPoly::from_i64(&[13, -4, 1]);
        assert_eq!(p.derivative(), RatPoly::from_i64(&[-4, 2]));
        assert!(RatPoly::from_i64(&[5]).derivative().is_zero());
    }

    #[test]
    fn derivative_matches_exact_difference_quotients() {
        // p is quartic, so the symmetric quotient (p(x+h) - p(x-h)) / 2h equals
        // p'(x) + p'''(x) h^2 / 6 exactly; Richardson on h and 2h cancels the
        // h^2 term and leaves p'(x) exactly for polynomials up to degree 4.
        let p = ex6();
        assert_eq!(p, RatPoly::from_i64(&[64, -32, -12, 4, 1]));
        let dp = p.derivative();
        let h = rat(1, 10);
        let two_h = rat(2, 10);
        for x in [0, 1, 2] {
            let x = int(x);
            let central = |h: &Rational| {
                (p.eval_rational(&(&x + h)) - p.eval_rational(&(&x - h))) / (h * int(2))
            };
            let richardson = (central(&h) * int(4) - central(&two_h)) / int(3);
            assert_eq!(richardson, dp.eval_rational(&x));
        }
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(ex6().root_multiplicity(&gi(2, 0)), Ok(2));
        let p7 = RatPoly::from_i64(&[13, -4, 1]);
        assert_eq!(p7.root_multiplicity(&gi(2, 3)), Ok(1));
        let p4 = RatPoly::from_i64(&[-4, 3, 1]);
        assert_eq!(p4.root_multiplicity(&gi(2, 0)), Ok(0));
        let p5 = RatPoly::from_i64(&[1, 0, 1]).pow(2);
        assert_eq!(p5, RatPoly::from_i64(&[1, 0, 2, 0, 1]));
        assert_eq!(p5.root_multiplicity(&gi(0, 1)), Ok(2));
        assert_eq!(
            RatPoly::zero().root_multiplicity(&gi(0, 0)),
            Err(ExactError::UndefinedMultiplicity)
        );
    }

    #[test]
    fn display_round_trips_shape() {
        let p = RatPoly::from_coeffs(vec![int(13), int(-4), int(1)]);
        assert_eq!(p.to_string(), "D^2 - 4*D + 13");
        let q = RatPoly::from_coeffs(vec![rat(-1, 2), int(0), int(0), int(-1)]);
        assert_eq!(q.to_string(), "-D^3 - 1/2");
        assert_eq!(RatPoly::zero().to_string(), "0");
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    fn small_poly() -> impl Strategy<Value = RatPoly> {
        prop::collection::vec(small_rat(), 0..5).prop_map(RatPoly::from_coeffs)
    }

    fn small_gauss() -> impl Strategy<Value = GaussianRational> {
        (small_rat(), small_rat()).prop_map(|(a, b)| GaussianRational::new(a, b))
    }

    proptest! {
        #[test]
        fn eval_is_multiplicative(p in small_poly(), q in small_poly(), z in small_gauss()) {
            prop_assert_eq!((&p * &q).eval(&z), &p.eval(&z) * &q.eval(&z));
        }

        #[test]
        fn rational_field_laws(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            let renormalized = Rational::new(a.numer().clone(), a.denom().clone());
            prop_assert_eq!(renormalized, a);
        }

        #[test]
        fn multiplicity_is_first_nonvanishing_derivative(
            p in small_poly(),
            root in small_gauss(),
            k in 0u32..3,
        ) {
            prop_assume!(!p.is_zero());
            // Force at least k-fold vanishing at a real root.
            let r = root.re.clone();
            let shaped = &p * &RatPoly::linear_factor(r.clone()).pow(k);
            let z = GaussianRational::real(r);
            let m = shaped.root_multiplicity(&z).unwrap();
            prop_assert!(m >= k as usize);
            let mut d = shaped.clone();
            for _ in 0..m {
                prop_assert!(d.eval(&z).is_zero());
                d = d.derivative();
            }
            prop_assert!(!d.eval(&z).is_zero());
        }
    }
}
