//! Closed-form torus invariants and their independent cross-checks.
//!
//! The closed form sums `exp(2 pi i <theta, T^n>)` over commuting `n`-tuples.
//! The pairing is the signed sum over the `n!` shuffle simplices, the same
//! convention [`torus_complex`] uses, so the closed form and the state sum
//! agree exactly while walking different code.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cochain::{Cochain, MAX_DEGREE};
use crate::group::{permutations, Elem};
use crate::phase::{PhaseError, PhaseQ, PhaseSum};
use crate::simplicial::{torus_complex, SimplicialError};
use crate::transgression::{transgress, twisted_irrep_count, TransgressionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("tuple {0:?} is not pairwise commuting")]
    NotCommuting(Vec<Elem>),
    #[error("tuple has {got} entries, cocycle has degree {degree}")]
    Arity { got: usize, degree: usize },
    #[error("torus invariants need degree between 2 and {max}, got {got}")]
    DegreeOutOfRange { got: usize, max: usize },
    #[error("expected a degree-{expected} cocycle, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("count {0} is negative")]
    NegativeCount(String),
    #[error("count {0} is not an integer")]
    NonIntegral(String),
    #[error("{channel} gives {got}, {primary} gives {expected}")]
    CrossCheckMismatch {
        primary: Channel,
        channel: Channel,
        expected: String,
        got: String,
    },
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Transgression(#[from] TransgressionError),
}

/// Which computation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    /// Commuting-tuple closed form.
    TorusFormula,
    /// State sum over flat fields on the shuffle triangulation.
    StateSum,
    /// Twisted irreducible count on `G//G` after transgression.
    Transgression,
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::TorusFormula => "torus_formula",
            Channel::StateSum => "state_sum",
            Channel::Transgression => "transgression",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub channel: Channel,
    pub value: BigRational,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub value: BigRational,
    pub channel: Channel,
    pub cross_checks: Vec<CrossCheck>,
}

impl InvariantReport {
    pub fn count(&self) -> u64 {
        self.value.to_integer().to_u64().expect("certified count")
    }
}

/// `sum_p sgn(p) theta(g_p(0), .., g_p(n-1))` over all permutations `p`.
pub fn torus_holonomy(tuple: &[Elem], theta: &Cochain) -> Result<PhaseQ, InvariantError> {
    let group = theta.group();
    if tuple.len() != theta.degree() {
        return Err(InvariantError::Arity {
            got: tuple.len(),
            degree: theta.degree(),
        });
    }
    for (i, &a) in tuple.iter().enumerate() {
        if a >= group.order()
            || tuple[i + 1..]
                .iter()
                .any(|&b| b >= group.order() || !group.commutes(a, b))
        {
            return Err(InvariantError::NotCommuting(tuple.to_vec()));
        }
    }
    Ok(shuffle_sum(&permutations(tuple.len()), tuple, theta))
}

fn shuffle_sum(perms: &[(Vec<usize>, i64)], tuple: &[Elem], theta: &Cochain) -> PhaseQ {
    let mut args = [0; MAX_DEGREE];
    let args = &mut args[..tuple.len()];
    perms.iter().fold(PhaseQ::ZERO, |acc, (p, sign)| {
        for (slot, &i) in args.iter_mut().zip(p) {
            *slot = tuple[i];
        }
        acc + theta.get(args).scale(*sign)
    })
}

fn certify(value: &BigRational) -> Result<(), InvariantError> {
    if !value.is_integer() {
        return Err(InvariantError::NonIntegral(value.to_string()));
    }
    if value.is_negative() {
        return Err(InvariantError::NegativeCount(value.to_string()));
    }
    Ok(())
}

/// `(1/|G|) sum_(commuting n-tuples) exp(2 pi i torus_holonomy)`, exact and
/// certified to be a non-negative integer.
pub fn torus_invariant_value(theta: &Cochain) -> Result<BigRational, InvariantError> {
    let n = theta.degree();
    if !(2..=MAX_DEGREE).contains(&n) {
        return Err(InvariantError::DegreeOutOfRange {
            got: n,
            max: MAX_DEGREE,
        });
    }
    let group = theta.group();
    let modulus = theta.denominator_lcm();
    let perms = permutations(n);
    let phases = group
        .elements()
        .into_par_iter()
        .map(|first| {
            let mut sum = PhaseSum::new(modulus)?;
            for tuple in group.commuting_tuples_from(first, n) {
                sum.insert(shuffle_sum(&perms, &tuple, theta), 1)?;
            }
            Ok(sum)
        })
        .try_reduce(
            || PhaseSum::new(modulus).expect("positive modulus"),
            |mut a, b| {
                a.merge(&b)?;
                Ok::<_, PhaseError>(a)
            },
        )?;
    let value =
        phases.exact_rational_value()? / BigRational::from_integer(BigInt::from(group.order()));
    certify(&value)?;
    Ok(value)
}

pub fn torus_invariant(theta: &Cochain) -> Result<u64, InvariantError> {
    Ok(torus_invariant_value(theta)?
        .to_integer()
        .to_u64()
        .expect("fits in u64"))
}

/// Number of irreducible `theta`-projective representations, `theta` of degree 2.
pub fn twisted_rep_count(theta: &Cochain) -> Result<u64, InvariantError> {
    if theta.degree() != 2 {
        return Err(InvariantError::WrongDegree {
            expected: 2,
            got: theta.degree(),
        });
    }
    torus_invariant(theta)
}

/// Closed form, plus (with `check_all`) the state sum on `T^n` for `n <= 3`
/// and the transgression count for `n = 3`. Any disagreement is an error.
pub fn torus_report(theta: &Cochain, check_all: bool) -> Result<InvariantReport, InvariantError> {
    let n = theta.degree();
    let value = torus_invariant_value(theta)?;
    let mut cross_checks = Vec::new();
    if check_all {
        if n <= 3 {
            let state_sum = torus_complex(n)?.state_sum(theta)?.value;
            cross_checks.push(CrossCheck {
                channel: Channel::StateSum,
                equal: state_sum == value,
                value: state_sum,
            });
        }
        if n == 3 {
            let count = twisted_irrep_count(&transgress(theta)?)?;
            let count = BigRational::from_integer(BigInt::from(count));
            cross_checks.push(CrossCheck {
                channel: Channel::Transgression,
                equal: count == value,
                value: count,
            });
        }
    }
    if let Some(bad) = cross_checks.iter().find(|c| !c.equal) {
        return Err(InvariantError::CrossCheckMismatch {
            primary: Channel::TorusFormula,
            channel: bad.channel,
            expected: value.to_string(),
            got: bad.value.to_string(),
        });
    }
    Ok(InvariantReport {
        value,
        channel: Channel::TorusFormula,
        cross_checks,
    })
}

/// Simple-object count of the twisted Drinfeld double, checked on all three channels.
pub fn drinfeld_double_simples(theta: &Cochain) -> Result<InvariantReport, InvariantError> {
    if theta.degree() != 3 {
        return Err(InvariantError::WrongDegree {
            expected: 3,
            got: theta.degree(),
        });
    }
    torus_report(theta, true)
}
