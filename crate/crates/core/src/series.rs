//! Exact truncated power series and rational generating functions.
//!
//! Coefficients are arbitrary-precision integers. Every series carries its
//! truncation order `N` explicitly (coefficients `c_0..=c_N`), and binary
//! operations truncate to the smaller of the two orders.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn parse_coefficients(s: &str) -> Result<Vec<BigInt>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("`{t}` is not an integer coefficient")))
        })
        .collect()
}

fn write_coefficients(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt]) -> fmt::Result {
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

/// Dense integer polynomial, lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
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
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        write_coefficients(f, &self.coeffs)
    }
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_coefficients(s).map(Polynomial::new)
    }
}

/// A power series known exactly through `x^order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    /// Builds a series from `c_0..=c_N`; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(|i| p.coeff(i)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^n`. Panics when `n` exceeds the order.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    /// Drops coefficients above `order` (no-op if already shorter).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        TruncatedSeries {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Multiply by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![BigInt::zero(); (n + 1).min(k)];
        coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `(1 - f)^{-1}` for `f` with zero constant term.
    ///
    /// Coefficient `n` of the result counts the weight-`n` words of a free
    /// monoid whose primes are counted by `f`.
    pub fn geometric_inverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm(self.coeffs[0].clone()));
        }
        let n = self.order();
        let mut g = Vec::with_capacity(n + 1);
        g.push(BigInt::one());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &g[k - i];
                }
            }
            g.push(acc);
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// The series `Σ c_{mn+i} x^n`, of order `floor((N - i) / m)`.
    pub fn multisect(&self, m: usize, i: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        if i >= m {
            return Err(Error::ResidueOutOfRange {
                modulus: m,
                residue: i,
            });
        }
        if i > self.order() {
            return Err(Error::InvalidParameter(format!(
                "residue {i} exceeds the series order {}",
                self.order()
            )));
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().skip(i).step_by(m).cloned().collect(),
        })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        TruncatedSeries { coeffs }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_coefficients(f, &self.coeffs)
    }
}

impl FromStr for TruncatedSeries {
    type Err = Error;
    /// The order is the number of listed coefficients minus one.
    fn from_str(s: &str) -> Result<Self> {
        parse_coefficients(s).map(TruncatedSeries::new)
    }
}

/// `numerator / denominator` with an invertible-at-zero denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalGF {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalGF {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.constant_term().is_zero() {
            return Err(Error::ZeroDenominatorConstant);
        }
        Ok(RationalGF {
            numerator,
            denominator,
        })
    }

    pub fn polynomial(p: Polynomial) -> Self {
        RationalGF {
            numerator: p,
            denominator: Polynomial::one(),
        }
    }

    pub fn from_i64(numerator: &[i64], denominator: &[i64]) -> Result<Self> {
        Self::new(
            Polynomial::from_i64(numerator),
            Polynomial::from_i64(denominator),
        )
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    /// Exact coefficients through `x^order`, from the recurrence
    /// `c_n = (a_n - Σ_{i≥1} d_i c_{n-i}) / d_0`.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries> {
        let den = self.denominator.coeffs();
        let d0 = &den[0];
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.numerator.coeff(n);
            for (i, d) in den.iter().enumerate().skip(1).take(n) {
                if !d.is_zero() {
                    acc -= d * &out[n - i];
                }
            }
            if d0.is_one() {
                out.push(acc);
            } else if (-d0).is_one() {
                out.push(-acc);
            } else {
                let (q, r) = acc.div_rem(d0);
                if !r.is_zero() {
                    return Err(Error::InexactDivision {
                        index: n,
                        value: acc,
                        divisor: d0.clone(),
                    });
                }
                out.push(q);
            }
        }
        Ok(TruncatedSeries::new(out))
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        RationalGF {
            numerator: self.numerator.shift(k),
            denominator: self.denominator.clone(),
        }
    }

    /// `(1 - self)^{-1} = d / (d - n)`; requires a zero constant term.
    pub fn geometric_inverse(&self) -> Result<Self> {
        if !self.numerator.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm(self.numerator.constant_term()));
        }
        RationalGF::new(
            self.denominator.clone(),
            &self.denominator - &self.numerator,
        )
    }

    pub fn add(&self, rhs: &RationalGF) -> RationalGF {
        if self.denominator == rhs.denominator {
            return RationalGF {
                numerator: &self.numerator + &rhs.numerator,
                denominator: self.denominator.clone(),
            };
        }
        RationalGF {
            numerator: &(&self.numerator * &rhs.denominator)
                + &(&rhs.numerator * &self.denominator),
            denominator: &self.denominator * &rhs.denominator,
        }
    }

    pub fn sub(&self, rhs: &RationalGF) -> RationalGF {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RationalGF {
        RationalGF {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    pub fn mul(&self, rhs: &RationalGF) -> RationalGF {
        RationalGF {
            numerator: &self.numerator * &rhs.numerator,
            denominator: &self.denominator * &rhs.denominator,
        }
    }

    /// `1 + self`
    pub fn one_plus(&self) -> RationalGF {
        RationalGF::polynomial(Polynomial::one()).add(self)
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.numerator, self.denominator)
    }
}

impl FromStr for RationalGF {
    type Err = Error;
    /// `"num"` or `"num / den"`, each a coefficient list.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((n, d)) => RationalGF::new(n.parse()?, d.parse()?),
            None => Ok(RationalGF::polynomial(s.parse()?)),
        }
    }
}

pub fn series_mul(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    f * g
}

pub fn geometric_inverse(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    f.geometric_inverse()
}

pub fn rational_to_series(r: &RationalGF, order: usize) -> Result<TruncatedSeries> {
    r.expand(order)
}

pub fn multisect(f: &TruncatedSeries, m: usize, i: usize) -> Result<TruncatedSeries> {
    f.multisect(m, i)
}

/// `(F_n, L_n)`, each by its own recurrence.
pub fn fib_lucas(n: usize) -> (BigInt, BigInt) {
    let (mut f0, mut f1) = (BigInt::zero(), BigInt::one());
    let (mut l0, mut l1) = (BigInt::from(2), BigInt::one());
    for _ in 0..n {
        let f2 = &f0 + &f1;
        f0 = std::mem::replace(&mut f1, f2);
        let l2 = &l0 + &l1;
        l0 = std::mem::replace(&mut l1, l2);
    }
    (f0, l0)
}

pub fn fibonacci(n: usize) -> BigInt {
    fib_lucas(n).0
}

pub fn lucas(n: usize) -> BigInt {
    fib_lucas(n).1
}

/// Generating function of `F_{mn+j}`:
/// `(F_j + (-1)^j F_{m-j} x) / (1 - L_m x + (-1)^m x^2)`.
pub fn fib_multisection_gf(m: usize, j: usize) -> Result<RationalGF> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if j > m {
        return Err(Error::InvalidParameter(format!(
            "residue {j} must not exceed modulus {m}"
        )));
    }
    let sign = |e: usize| {
        if e.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    };
    let numerator = Polynomial::new(vec![fibonacci(j), sign(j) * fibonacci(m - j)]);
    let denominator = Polynomial::new(vec![BigInt::one(), -lucas(m), sign(m)]);
    RationalGF::new(numerator, denominator)
}

/// Coefficients of `x/(1-x-x^2)` through `x^order`, i.e. `F_0..=F_order`.
pub fn fibonacci_series(order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..=order {
        let next = &a + &b;
        coeffs.push(std::mem::replace(&mut a, std::mem::replace(&mut b, next)));
    }
    TruncatedSeries::new(coeffs)
}

/// Used in diagnostics: first index where two series differ, up to the
/// shorter order.
pub fn first_difference(a: &TruncatedSeries, b: &TruncatedSeries) -> Option<usize> {
    a.coeffs().iter().zip(b.coeffs()).position(|(x, y)| x != y)
}
