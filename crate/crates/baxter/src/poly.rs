//! Dense univariate polynomials over exact rationals.
//!
//! Counting polynomials carry coefficients like 361/907200, so everything
//! here is `BigRational`; there is no floating point anywhere.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial with exact rational coefficients, stored in ascending degree
/// with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial { coeffs: vec![c] }.normalized()
    }

    /// Builds a polynomial from ascending-degree coefficients.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        Polynomial { coeffs }.normalized()
    }

    /// Parses ascending-degree coefficients given as `num` or `num/den` strings.
    pub fn from_coeff_strs(coeffs: &[&str]) -> Result<Self, num_rational::ParseRatioError> {
        let parsed: Result<Vec<BigRational>, _> = coeffs.iter().map(|s| s.parse()).collect();
        Ok(Polynomial::from_coeffs(parsed?))
    }

    /// `c * x^degree`
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial { coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_at_integer(&self, k: u64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
        .normalized()
    }

    /// Coefficients rendered as canonical `num/den` strings, ascending degree.
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }

    /// Lagrange interpolation through points with pairwise distinct abscissas.
    pub fn lagrange(points: &[(BigRational, BigRational)]) -> Self {
        let mut total = Polynomial::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Polynomial::one();
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                // basis *= (x - xj)
                basis = &basis * &Polynomial::from_coeffs(vec![-xj.clone(), BigRational::one()]);
                denom *= xi - xj;
            }
            assert!(!denom.is_zero(), "interpolation abscissas must be distinct");
            total = &total + &basis.scale(&(yi / denom));
        }
        total
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Polynomial { coeffs }.normalized()
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Polynomial { coeffs }.normalized()
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial { coeffs }.normalized()
    }
}

/// Renders in the conventional descending form, e.g. `k^2 + 3k - 4` or
/// `(1/3)k^4 + 3k^3 - (16/3)k^2 + 2k + 3`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            let mag = c.abs();
            let show_coeff = deg == 0 || !mag.is_one();
            if show_coeff {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({}/{})", mag.numer(), mag.denom())?;
                }
            }
            match deg {
                0 => {}
                1 => write!(f, "k")?,
                _ => write!(f, "k^{deg}")?,
            }
        }
        Ok(())
    }
}
