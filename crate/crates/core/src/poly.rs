//! Dense univariate polynomials over the integers and the rationals.
//!
//! Coefficients are stored lowest degree first and the highest stored
//! coefficient is always nonzero; the zero polynomial has no coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(degree: usize, coeff: impl Into<BigInt>) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = coeff.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.normalize();
        p
    }

    /// `(1 + c z)^e` style helper: `(a + b z)^e`.
    pub fn binomial_power(a: i64, b: i64, e: usize) -> Self {
        Self::from_coeffs([a, b]).pow(e)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Adds `c z^i` in place.
    pub fn add_term(&mut self, i: usize, c: &BigInt) {
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, BigInt::zero());
        }
        self.coeffs[i] += c;
        self.normalize();
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c))
    }

    pub fn shift(&self, by: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); by];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term of degree above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(max_degree + 1).cloned())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sum of all coefficients, i.e. the value at 1.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::from_coeffs(self.coeffs.iter().cloned().map(BigRational::from_integer))
    }

    /// Decimal strings, lowest degree first.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)))
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)))
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> Self {
        Self::from_coeffs(self.coeffs.into_iter().map(|c| -c))
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

fn write_terms<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    var: &str,
    terms: impl Iterator<Item = (usize, T, bool)>,
) -> fmt::Result {
    let mut first = true;
    for (i, c, negative) in terms {
        if !first {
            f.write_str(if negative { " - " } else { " + " })?;
        } else if negative {
            f.write_str("-")?;
        }
        first = false;
        match i {
            0 => write!(f, "{c}")?,
            1 => write!(f, "{c}{var}")?,
            _ => write!(f, "{c}{var}^{i}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            "z",
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.abs(), c.is_negative())),
        )
    }
}

/// Polynomial in `t` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs([c])
    }

    /// `slope * t + offset`.
    pub fn linear(slope: BigRational, offset: BigRational) -> Self {
        Self::from_coeffs([offset, slope])
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut coeffs: Vec<BigRational> = coeffs.into_iter().collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    /// Evaluates at an integer and returns the value only if it is integral.
    pub fn eval_integer(&self, t: i64) -> Option<BigInt> {
        let v = self.eval(&BigRational::from_integer(t.into()));
        v.is_integer().then(|| v.to_integer())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// The unique polynomial of degree below `points.len()` through `points`.
    ///
    /// Abscissae must be pairwise distinct.
    pub fn interpolate(points: &[(BigInt, BigInt)]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Self::one();
            let mut denom = BigInt::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = &basis
                    * &Self::linear(BigRational::one(), BigRational::from_integer(-xj.clone()));
                denom *= xi - xj;
            }
            acc = &acc + &basis.scale(&BigRational::new(yi.clone(), denom));
        }
        acc
    }

    /// `(numerator, denominator)` decimal pairs in lowest terms, positive denominator.
    pub fn to_fraction_strings(&self) -> Vec<(String, String)> {
        self.coeffs
            .iter()
            .map(|c| (c.numer().to_string(), c.denom().to_string()))
            .collect()
    }

    /// Converts to an integer polynomial if every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::from_coeffs)
    }
}

impl<'a> Add<&'a RatPolynomial> for &'a RatPolynomial {
    type Output = RatPolynomial;

    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)))
    }
}

impl<'a> Sub<&'a RatPolynomial> for &'a RatPolynomial {
    type Output = RatPolynomial;

    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)))
    }
}

impl<'a> Mul<&'a RatPolynomial> for &'a RatPolynomial {
    type Output = RatPolynomial;

    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPolynomial::from_coeffs(out)
    }
}

impl std::iter::Sum for RatPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            "t",
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    let a = c.abs();
                    let shown = if a.is_integer() {
                        a.to_integer().to_string()
                    } else {
                        format!("({a})")
                    };
                    (i, shown, c.is_negative())
                }),
        )
    }
}

/// `m (m-1) ... (m-k+1) / k!` for any integer `m`; negative tops are allowed.
pub fn binomial_polynomial(m: &BigInt, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= m - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Counting binomial: zero whenever `m < 0` or `k > m`.
pub fn binomial_counting(m: &BigInt, k: usize) -> BigInt {
    if m.is_negative() || m.to_usize().is_some_and(|m| m < k) {
        BigInt::zero()
    } else {
        binomial_polynomial(m, k)
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binomial_polynomial(&BigInt::from(n), k)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalizes_trailing_zeros() {
        let p = IntPolynomial::from_coeffs([1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(IntPolynomial::from_coeffs([0, 0]).is_zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn int_arithmetic() {
        let a = IntPolynomial::from_coeffs([1, 1]);
        assert_eq!(a.pow(3), IntPolynomial::from_coeffs([1, 3, 3, 1]));
        assert_eq!(&a - &a, IntPolynomial::zero());
        assert_eq!(a.shift(2), IntPolynomial::from_coeffs([0, 0, 1, 1]));
        assert_eq!(a.pow(3).eval(&BigInt::from(2)), BigInt::from(27));
        assert_eq!(
            IntPolynomial::from_coeffs([1, 4, 1]).to_string(),
            "1 + 4z + 1z^2"
        );
        assert_eq!(IntPolynomial::from_coeffs([0, -1]).to_string(), "-1z");
    }

    #[test]
    fn interpolation_recovers_triangular_numbers() {
        let pts: Vec<_> = (1..=3)
            .map(|t: i64| (BigInt::from(t), BigInt::from(t * (t + 1) / 2)))
            .collect();
        let p = RatPolynomial::interpolate(&pts);
        assert_eq!(p, RatPolynomial::from_coeffs([q(0, 1), q(1, 2), q(1, 2)]));
        assert_eq!(p.eval_integer(10), Some(BigInt::from(55)));
        assert_eq!(p.common_denominator(), BigInt::from(2));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_polynomial(&BigInt::from(-1), 0), BigInt::one());
        assert_eq!(binomial_polynomial(&BigInt::from(-1), 1), BigInt::from(-1));
        assert_eq!(binomial_polynomial(&BigInt::from(-2), 2), BigInt::from(3));
        assert_eq!(binomial_polynomial(&BigInt::from(1), 2), BigInt::zero());
        assert_eq!(binomial_counting(&BigInt::from(-2), 2), BigInt::zero());
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
