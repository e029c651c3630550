//! Normalized bar-complex cochains `G^n -> Q/Z` with trivial coefficients.
//!
//! A degree-`n` cochain on `G` evaluates a singular cochain of `BG` on the
//! nerve simplex `[g_1 | ... | g_n]`. Tables are dense and indexed by the
//! mixed-radix key `g_1 |G|^(n-1) + ... + g_n`, so iteration order is
//! lexicographic in the arguments.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::group::{Elem, FiniteGroup, GroupHom};
use crate::phase::{common_modulus, PhaseQ};

/// Highest degree stored as a dense table.
pub const MAX_DEGREE: usize = 4;

pub const DEFAULT_MEMORY_BUDGET: usize = 16 << 20;

static MEMORY_BUDGET: AtomicUsize = AtomicUsize::new(DEFAULT_MEMORY_BUDGET);

/// Caps the byte size of any dense cochain table built afterwards.
pub fn set_memory_budget(bytes: usize) {
    MEMORY_BUDGET.store(bytes, Ordering::Relaxed);
}

pub fn memory_budget() -> usize {
    MEMORY_BUDGET.load(Ordering::Relaxed)
}

/// Checks that a table of `entries` phases fits the configured budget.
pub(crate) fn check_budget(entries: usize) -> Result<(), CochainError> {
    let bytes = entries.saturating_mul(std::mem::size_of::<PhaseQ>());
    let budget = memory_budget();
    if bytes > budget {
        return Err(CochainError::TooLarge {
            entries,
            bytes,
            budget,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    DegreeTooHigh(usize),
    #[error(
        "table of {entries} entries ({bytes} bytes) exceeds the memory budget of {budget} bytes"
    )]
    TooLarge {
        entries: usize,
        bytes: usize,
        budget: usize,
    },
    #[error("cochains live on different groups")]
    GroupMismatch,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("argument {0} is not an element of the group")]
    ElementOutOfRange(Elem),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    group: Arc<FiniteGroup>,
    degree: usize,
    table: Vec<PhaseQ>,
}

/// Outcome of an exhaustive cocycle check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleReport {
    pub normalized: bool,
    /// First argument tuple (lexicographically) with a non-identity entry, if any.
    pub normalization_violation: Option<Vec<Elem>>,
    /// First `(n+1)`-tuple where the coboundary is non-zero, with its value.
    pub violation: Option<(Vec<Elem>, PhaseQ)>,
}

impl CocycleReport {
    pub fn is_cocycle(&self) -> bool {
        self.violation.is_none()
    }
}

/// Decodes a mixed-radix key into `len` digits base `order`.
pub(crate) fn decode(mut key: usize, order: usize, out: &mut [Elem]) {
    for slot in out.iter_mut().rev() {
        *slot = key % order;
        key /= order;
    }
}

pub(crate) fn encode(args: &[Elem], order: usize) -> usize {
    args.iter().fold(0, |acc, &g| acc * order + g)
}

impl Cochain {
    pub fn zero(group: Arc<FiniteGroup>, degree: usize) -> Result<Self, CochainError> {
        Self::from_fn(group, degree, |_| PhaseQ::ZERO)
    }

    /// Tabulates `f` on every argument tuple.
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        degree: usize,
        mut f: impl FnMut(&[Elem]) -> PhaseQ,
    ) -> Result<Self, CochainError> {
        if degree > MAX_DEGREE {
            return Err(CochainError::DegreeTooHigh(degree));
        }
        let n = group.order();
        let size = n.checked_pow(degree as u32).ok_or(CochainError::TooLarge {
            entries: usize::MAX,
            bytes: usize::MAX,
            budget: memory_budget(),
        })?;
        check_budget(size)?;
        let mut args = vec![0; degree];
        let table = (0..size)
            .map(|key| {
                decode(key, n, &mut args);
                f(&args)
            })
            .collect();
        Ok(Self {
            group,
            degree,
            table,
        })
    }

    /// Builds a cochain from a full table in key order.
    pub fn from_table(
        group: Arc<FiniteGroup>,
        degree: usize,
        table: Vec<PhaseQ>,
    ) -> Result<Self, CochainError> {
        if degree > MAX_DEGREE {
            return Err(CochainError::DegreeTooHigh(degree));
        }
        let expected = group.order().pow(degree as u32);
        if table.len() != expected {
            return Err(CochainError::Arity {
                expected,
                got: table.len(),
            });
        }
        Ok(Self {
            group,
            degree,
            table,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn table(&self) -> &[PhaseQ] {
        &self.table
    }

    #[inline]
    pub fn get(&self, args: &[Elem]) -> PhaseQ {
        debug_assert_eq!(args.len(), self.degree);
        self.table[encode(args, self.group.order())]
    }

    pub fn try_get(&self, args: &[Elem]) -> Result<PhaseQ, CochainError> {
        if args.len() != self.degree {
            return Err(CochainError::Arity {
                expected: self.degree,
                got: args.len(),
            });
        }
        if let Some(&g) = args.iter().find(|&&g| g >= self.group.order()) {
            return Err(CochainError::ElementOutOfRange(g));
        }
        Ok(self.get(args))
    }

    /// Sets one entry; used when assembling cochains from sparse input.
    pub fn set(&mut self, args: &[Elem], value: PhaseQ) -> Result<(), CochainError> {
        self.try_get(args)?;
        let key = encode(args, self.group.order());
        self.table[key] = value;
        Ok(())
    }

    /// `(arguments, value)` for every entry, in key order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<Elem>, PhaseQ)> + '_ {
        let n = self.group.order();
        self.table.iter().enumerate().map(move |(key, &v)| {
            let mut args = vec![0; self.degree];
            decode(key, n, &mut args);
            (args, v)
        })
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> usize {
        common_modulus(&self.table)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CochainError> {
        if self.group != other.group {
            return Err(CochainError::GroupMismatch);
        }
        if self.degree != other.degree {
            return Err(CochainError::DegreeMismatch(self.degree, other.degree));
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Cochain {
            group: self.group.clone(),
            degree: self.degree,
            table,
        })
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            group: self.group.clone(),
            degree: self.degree,
            table: self.table.iter().map(|&a| -a).collect(),
        }
    }

    /// `(delta c)(g_1..g_{n+1})` evaluated without materializing `delta c`.
    pub fn coboundary_at(&self, args: &[Elem]) -> PhaseQ {
        let n = self.degree;
        debug_assert_eq!(args.len(), n + 1);
        let g = &*self.group;
        let mut buf = Vec::with_capacity(n);
        buf.extend_from_slice(&args[1..]);
        let mut acc = self.get(&buf);
        for i in 1..=n {
            buf.clear();
            buf.extend_from_slice(&args[..i - 1]);
            buf.push(g.mul(args[i - 1], args[i]));
            buf.extend_from_slice(&args[i + 1..]);
            let term = self.get(&buf);
            acc += if i % 2 == 0 { term } else { -term };
        }
        let last = self.get(&args[..n]);
        acc += if (n + 1).is_multiple_of(2) { last } else { -last };
        acc
    }

    pub fn coboundary(&self) -> Result<Cochain, CochainError> {
        Cochain::from_fn(self.group.clone(), self.degree + 1, |args| {
            self.coboundary_at(args)
        })
    }

    /// Lexicographically first `(n+1)`-tuple where the coboundary does not vanish.
    pub fn cocycle_violation(&self) -> Option<(Vec<Elem>, PhaseQ)> {
        let order = self.group.order();
        let width = self.degree + 1;
        let block = order.pow(self.degree as u32);
        // one parallel task per value of the first argument; the minimum over
        // tasks is the global lexicographic minimum
        (0..order)
            .into_par_iter()
            .filter_map(|first| {
                let mut args = vec![0; width];
                (0..block).find_map(|rest| {
                    args[0] = first;
                    decode(rest, order, &mut args[1..]);
                    let v = self.coboundary_at(&args);
                    (!v.is_zero()).then(|| (args.clone(), v))
                })
            })
            .min_by(|a, b| a.0.cmp(&b.0))
    }

    pub fn is_cocycle(&self) -> bool {
        self.cocycle_violation().is_none()
    }

    pub fn normalization_violation(&self) -> Option<Vec<Elem>> {
        let e = self.group.identity();
        self.entries()
            .find(|(args, v)| !v.is_zero() && args.contains(&e))
            .map(|(args, _)| args)
    }

    pub fn is_normalized(&self) -> bool {
        self.normalization_violation().is_none()
    }

    pub fn verify(&self) -> CocycleReport {
        let normalization_violation = self.normalization_violation();
        CocycleReport {
            normalized: normalization_violation.is_none(),
            normalization_violation,
            violation: self.cocycle_violation(),
        }
    }

    /// `(lambda^* c)(h_1..h_n) = c(lambda h_1, .., lambda h_n)`.
    pub fn pullback(&self, hom: &GroupHom) -> Result<Cochain, CochainError> {
        if **hom.target() != *self.group {
            return Err(CochainError::GroupMismatch);
        }
        let mut mapped = vec![0; self.degree];
        Cochain::from_fn(hom.source().clone(), self.degree, |args| {
            for (m, &h) in mapped.iter_mut().zip(args) {
                *m = hom.apply(h);
            }
            self.get(&mapped)
        })
    }

    /// The standard generator family of `H^3(Z_k; U(1))`:
    /// `w_p(a, b, c) = p a floor((b + c) / k) / k`.
    pub fn cyclic_3cocycle(k: usize, p: usize) -> Result<Cochain, CochainError> {
        if k == 0 || p >= k {
            return Err(CochainError::BadParameter(format!(
                "need 0 <= p < k, got k={k}, p={p}"
            )));
        }
        let group = Arc::new(FiniteGroup::cyclic(k).expect("k >= 1"));
        Cochain::from_fn(group, 3, |args| {
            let (a, b, c) = (args[0], args[1], args[2]);
            let carry = (b + c) / k;
            PhaseQ::new((p * a * carry) as i64, k as i64).expect("k > 0")
        })
    }

    /// Seeded random normalized cochain with entries in `(1/max_den) Z / Z`.
    pub fn random(
        group: Arc<FiniteGroup>,
        degree: usize,
        seed: u64,
        max_denominator: u64,
    ) -> Result<Cochain, CochainError> {
        if max_denominator == 0 {
            return Err(CochainError::BadParameter(
                "max_denominator must be at least 1".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = group.identity();
        let den = max_denominator as i64;
        let mut c = Cochain::zero(group, degree)?;
        let order = c.group.order();
        let mut args = vec![0; degree];
        for key in 0..c.table.len() {
            decode(key, order, &mut args);
            // draw unconditionally so the stream does not depend on where the identity sits
            let num = rng.gen_range(0..den);
            if !args.contains(&e) {
                c.table[key] = PhaseQ::new(num, den).expect("den > 0");
            }
        }
        Ok(c)
    }
}
