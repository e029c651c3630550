//! Exact arithmetic for phases.
//!
//! A [`PhaseQ`] is an element of Q/Z, standing for the root of unity
//! `exp(2 pi i num/den)`. A [`PhaseSum`] is a Z-linear combination of `N`-th
//! roots of unity; [`PhaseSum::exact_rational_value`] decides whether such a
//! combination is a rational number by reducing modulo the cyclotomic
//! polynomial `Phi_N`.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhaseError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse phase {0:?}; expected \"num/den\"")]
    Parse(String),
    #[error("denominator {den} does not divide the accumulator modulus {modulus}")]
    DenominatorMismatch { den: i64, modulus: usize },
    #[error("accumulator modulus must be positive")]
    ZeroModulus,
    #[error("cannot merge sums with moduli {0} and {1}")]
    ModulusMismatch(usize, usize),
    #[error(
        "sum of roots of unity is not rational: residue mod Phi_{modulus} has degree {degree}"
    )]
    NotRational { modulus: usize, degree: usize },
}

/// An element of Q/Z, kept reduced with `0 <= num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseQ {
    num: i64,
    den: i64,
}

impl PhaseQ {
    pub const ZERO: PhaseQ = PhaseQ { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self, PhaseError> {
        if den == 0 {
            return Err(PhaseError::ZeroDenominator);
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.rem_euclid(den);
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// `m * self`.
    pub fn scale(self, m: i64) -> Self {
        let num = ((self.num as i128 * m as i128).rem_euclid(self.den as i128)) as i64;
        Self::new(num, self.den).expect("nonzero den")
    }
}

impl Default for PhaseQ {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for PhaseQ {
    type Output = PhaseQ;

    fn add(self, rhs: PhaseQ) -> PhaseQ {
        let l = self.den.lcm(&rhs.den);
        let num = self.num * (l / self.den) + rhs.num * (l / rhs.den);
        PhaseQ::new(num, l).expect("nonzero den")
    }
}

impl AddAssign for PhaseQ {
    fn add_assign(&mut self, rhs: PhaseQ) {
        *self = *self + rhs;
    }
}

impl Neg for PhaseQ {
    type Output = PhaseQ;

    fn neg(self) -> PhaseQ {
        if self.num == 0 {
            self
        } else {
            PhaseQ {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }
}

impl Sub for PhaseQ {
    type Output = PhaseQ;

    fn sub(self, rhs: PhaseQ) -> PhaseQ {
        self + (-rhs)
    }
}

impl std::iter::Sum for PhaseQ {
    fn sum<I: Iterator<Item = PhaseQ>>(iter: I) -> PhaseQ {
        iter.fold(PhaseQ::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for PhaseQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for PhaseQ {
    type Err = PhaseError;

    fn from_str(s: &str) -> Result<Self, PhaseError> {
        let bad = || PhaseError::Parse(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                PhaseQ::new(n, d)
            }
            None => {
                let n: i64 = t.parse().map_err(|_| bad())?;
                PhaseQ::new(n, 1)
            }
        }
    }
}

/// Least common multiple of the denominators of `phases`; 1 for an empty input.
pub fn common_modulus<'a>(phases: impl IntoIterator<Item = &'a PhaseQ>) -> usize {
    phases.into_iter().fold(1i64, |acc, p| acc.lcm(&p.den)) as usize
}

/// `sum_k coeffs[k] * zeta_N^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseSum {
    modulus: usize,
    coeffs: Vec<i64>,
}

impl PhaseSum {
    pub fn new(modulus: usize) -> Result<Self, PhaseError> {
        if modulus == 0 {
            return Err(PhaseError::ZeroModulus);
        }
        Ok(Self {
            modulus,
            coeffs: vec![0; modulus],
        })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Adds `coeff * exp(2 pi i p)`.
    pub fn insert(&mut self, p: PhaseQ, coeff: i64) -> Result<(), PhaseError> {
        let n = self.modulus as i64;
        if n % p.den != 0 {
            return Err(PhaseError::DenominatorMismatch {
                den: p.den,
                modulus: self.modulus,
            });
        }
        self.coeffs[(p.num * (n / p.den)) as usize] += coeff;
        Ok(())
    }

    pub fn merge(&mut self, other: &PhaseSum) -> Result<(), PhaseError> {
        if self.modulus != other.modulus {
            return Err(PhaseError::ModulusMismatch(self.modulus, other.modulus));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        Ok(())
    }

    /// Non-zero terms as `(k, coeff)` pairs.
    pub fn terms(&self) -> Vec<(usize, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, c))
            .collect()
    }

    /// Reduces the sum modulo `Phi_N` and returns the constant it equals, if any.
    pub fn exact_rational_value(&self) -> Result<BigRational, PhaseError> {
        let phi = cyclotomic_polynomial(self.modulus);
        let poly: Vec<BigInt> = self.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let rem = poly_rem_monic(poly, &phi);
        match rem.iter().rposition(|c| !c.is_zero()) {
            None => Ok(BigRational::zero()),
            Some(0) => Ok(BigRational::from_integer(rem[0].clone())),
            Some(degree) => Err(PhaseError::NotRational {
                modulus: self.modulus,
                degree,
            }),
        }
    }

    /// Floating-point evaluation; diagnostic only.
    pub fn numeric_value(&self) -> Complex64 {
        let n = self.modulus as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / n)
            })
            .sum()
    }
}

impl fmt::Display for PhaseSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .terms()
            .iter()
            .map(|(k, c)| format!("({k}, {c})"))
            .collect();
        write!(f, "N={} [{}]", self.modulus, body.join(", "))
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = -BigInt::one();
    poly[n] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            poly = poly_div_monic_exact(poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Long division by a monic divisor; returns `(quotient, remainder)`.
fn poly_divmod_monic(p: Vec<BigInt>, divisor: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = divisor.len() - 1;
    debug_assert!(divisor[dd].is_one());
    let mut rem = trim(p);
    if rem.len() <= dd {
        return (vec![BigInt::zero()], rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = rem[top].clone();
        if c.is_zero() {
            continue;
        }
        let shift = top - dd;
        for (i, d) in divisor.iter().enumerate() {
            rem[shift + i] -= &c * d;
        }
        quot[shift] = c;
    }
    rem.truncate(dd.max(1));
    (trim(quot), trim(rem))
}

fn poly_div_monic_exact(p: Vec<BigInt>, divisor: &[BigInt]) -> Vec<BigInt> {
    let (q, r) = poly_divmod_monic(p, divisor);
    debug_assert!(r.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    q
}

fn poly_rem_monic(p: Vec<BigInt>, divisor: &[BigInt]) -> Vec<BigInt> {
    poly_divmod_monic(p, divisor).1
}
