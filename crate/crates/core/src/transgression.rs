//! Loop groupoids, groupoid cochains and transgression.
//!
//! Every groupoid here is the translation groupoid of a right action of a
//! finite group `K` on a finite object set: a morphism `x -> x.k` for each
//! object `x` and each `k` in `K`, composed by multiplying in `K`. The loop
//! groupoid `G//G` (conjugation action), homotopy fibers of `H//H -> J//J`
//! and kernel sectors `lambda^-1(j)//ker lambda` all have this shape.
//!
//! A degree-`d` groupoid cochain assigns a phase to each composable string
//! `x --k_1--> x.k_1 --k_2--> ... --k_d-->`, recorded as `(x; k_1, .., k_d)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::cochain::{check_budget, decode, encode, Cochain, CochainError};
use crate::group::{Elem, FiniteGroup, GroupHom};
use crate::phase::{common_modulus, PhaseError, PhaseQ, PhaseSum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransgressionError {
    #[error("action is not unital at object {0}")]
    ActionNotUnital(usize),
    #[error("action is not associative at object {0} with ({1}, {2})")]
    ActionNotAssociative(usize, Elem, Elem),
    #[error("action table has {got} entries, expected {expected}")]
    ActionSize { got: usize, expected: usize },
    #[error("transgression needs input degree between 1 and 4, got {0}")]
    DegreeOutOfRange(usize),
    #[error("expected a degree-{expected} groupoid cochain, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("groupoid cochain lives on a different groupoid")]
    GroupoidMismatch,
    #[error("object map and homomorphism do not form a functor at object {0}, morphism {1}")]
    NotAFunctor(usize, Elem),
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("cocycle lives on {0}, expected the source of the homomorphism")]
    GroupMismatch(&'static str),
    #[error("twisted count {0} is not a non-negative integer")]
    NotACount(String),
    #[error("sector {sector}: homotopy fiber gives {fiber}, kernel sector gives {kernel}")]
    CrossCheckMismatch {
        sector: Elem,
        fiber: u64,
        kernel: u64,
    },
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Phase(#[from] PhaseError),
}

/// Translation groupoid of a right action `x.k` of `acting` on labelled objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionGroupoid {
    objects: Vec<String>,
    acting: Arc<FiniteGroup>,
    action: Vec<usize>,
}

/// General finite groupoids are handled in their action-groupoid presentation.
pub type FiniteGroupoid = ActionGroupoid;

impl ActionGroupoid {
    pub fn new(
        objects: Vec<String>,
        acting: Arc<FiniteGroup>,
        action: impl Fn(usize, Elem) -> usize,
    ) -> Result<Self, TransgressionError> {
        let k = acting.order();
        let table: Vec<usize> = (0..objects.len())
            .flat_map(|x| (0..k).map(move |g| (x, g)))
            .map(|(x, g)| action(x, g))
            .collect();
        Self::from_table(objects, acting, table)
    }

    pub fn from_table(
        objects: Vec<String>,
        acting: Arc<FiniteGroup>,
        action: Vec<usize>,
    ) -> Result<Self, TransgressionError> {
        let k = acting.order();
        if action.len() != objects.len() * k || action.iter().any(|&y| y >= objects.len()) {
            return Err(TransgressionError::ActionSize {
                got: action.len(),
                expected: objects.len() * k,
            });
        }
        let g = Self {
            objects,
            acting,
            action,
        };
        for x in 0..g.object_count() {
            if g.act(x, g.acting.identity()) != x {
                return Err(TransgressionError::ActionNotUnital(x));
            }
            for a in g.acting.elements() {
                for b in g.acting.elements() {
                    if g.act(g.act(x, a), b) != g.act(x, g.acting.mul(a, b)) {
                        return Err(TransgressionError::ActionNotAssociative(x, a, b));
                    }
                }
            }
        }
        Ok(g)
    }

    /// `G` acting on itself by conjugation, `x.k = k^-1 x k`.
    pub fn loop_groupoid(group: Arc<FiniteGroup>) -> Self {
        let objects = group.labels().to_vec();
        let action = group
            .elements()
            .flat_map(|x| group.elements().map(move |k| (x, k)))
            .map(|(x, k)| group.conjugate(x, k))
            .collect();
        Self {
            objects,
            acting: group,
            action,
        }
    }

    /// `G` as a groupoid with one object.
    pub fn one_object(group: Arc<FiniteGroup>) -> Self {
        let action = vec![0; group.order()];
        Self {
            objects: vec!["*".into()],
            acting: group,
            action,
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn acting(&self) -> &Arc<FiniteGroup> {
        &self.acting
    }

    pub fn morphism_count(&self) -> usize {
        self.objects.len() * self.acting.order()
    }

    /// Target of the morphism `k` out of `x`.
    #[inline]
    pub fn act(&self, x: usize, k: Elem) -> usize {
        self.action[x * self.acting.order() + k]
    }

    /// Connected components, each sorted, ordered by smallest object.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.object_count()];
        let mut out = Vec::new();
        for x in 0..self.object_count() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = self.acting.elements().map(|k| self.act(x, k)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Automorphism group of `x`, as elements of the acting group.
    pub fn automorphisms(&self, x: usize) -> Vec<Elem> {
        self.acting
            .elements()
            .filter(|&k| self.act(x, k) == x)
            .collect()
    }

    /// Sorted automorphism-group orders, one per component. Equivalent
    /// groupoids have equal signatures.
    pub fn component_signature(&self) -> Vec<usize> {
        let mut sig: Vec<usize> = self
            .components()
            .iter()
            .map(|c| self.automorphisms(c[0]).len())
            .collect();
        sig.sort_unstable();
        sig
    }
}

/// A functor between action groupoids given by an object map and a
/// homomorphism of acting groups.
#[derive(Debug, Clone)]
pub struct GroupoidFunctor {
    pub source: Arc<ActionGroupoid>,
    pub target: Arc<ActionGroupoid>,
    pub object_map: Vec<usize>,
    pub hom: GroupHom,
}

impl GroupoidFunctor {
    pub fn new(
        source: Arc<ActionGroupoid>,
        target: Arc<ActionGroupoid>,
        object_map: Vec<usize>,
        hom: GroupHom,
    ) -> Result<Self, TransgressionError> {
        if **hom.source() != *source.acting || **hom.target() != *target.acting {
            return Err(TransgressionError::GroupMismatch("another group"));
        }
        for x in 0..source.object_count() {
            for k in source.acting.elements() {
                if object_map[source.act(x, k)] != target.act(object_map[x], hom.apply(k)) {
                    return Err(TransgressionError::NotAFunctor(x, k));
                }
            }
        }
        Ok(Self {
            source,
            target,
            object_map,
            hom,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidCochain {
    groupoid: Arc<ActionGroupoid>,
    degree: usize,
    table: Vec<PhaseQ>,
}

impl GroupoidCochain {
    pub fn from_fn(
        groupoid: Arc<ActionGroupoid>,
        degree: usize,
        mut f: impl FnMut(usize, &[Elem]) -> PhaseQ,
    ) -> Result<Self, TransgressionError> {
        let k = groupoid.acting.order();
        let block = k
            .checked_pow(degree as u32)
            .ok_or(CochainError::DegreeTooHigh(degree))?;
        let size = block.saturating_mul(groupoid.object_count());
        check_budget(size)?;
        let mut ks = vec![0; degree];
        let mut table = Vec::with_capacity(size);
        for x in 0..groupoid.object_count() {
            for key in 0..block {
                decode(key, k, &mut ks);
                table.push(f(x, &ks));
            }
        }
        Ok(Self {
            groupoid,
            degree,
            table,
        })
    }

    pub fn zero(groupoid: Arc<ActionGroupoid>, degree: usize) -> Result<Self, TransgressionError> {
        Self::from_fn(groupoid, degree, |_, _| PhaseQ::ZERO)
    }

    pub fn groupoid(&self) -> &Arc<ActionGroupoid> {
        &self.groupoid
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn get(&self, x: usize, ks: &[Elem]) -> PhaseQ {
        let k = self.groupoid.acting.order();
        self.table[x * k.pow(self.degree as u32) + encode(ks, k)]
    }

    /// `((x; k_1..k_d), value)` for every composable string.
    pub fn entries(&self) -> impl Iterator<Item = (usize, Vec<Elem>, PhaseQ)> + '_ {
        let k = self.groupoid.acting.order();
        let block = k.pow(self.degree as u32);
        self.table.iter().enumerate().map(move |(i, &v)| {
            let mut ks = vec![0; self.degree];
            decode(i % block, k, &mut ks);
            (i / block, ks, v)
        })
    }

    pub fn denominator_lcm(&self) -> usize {
        common_modulus(&self.table)
    }

    pub fn add(&self, other: &GroupoidCochain) -> Result<GroupoidCochain, TransgressionError> {
        if self.groupoid != other.groupoid {
            return Err(TransgressionError::GroupoidMismatch);
        }
        if self.degree != other.degree {
            return Err(TransgressionError::WrongDegree {
                expected: self.degree,
                got: other.degree,
            });
        }
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Self {
            groupoid: self.groupoid.clone(),
            degree: self.degree,
            table,
        })
    }

    /// Simplicial differential on the nerve:
    /// `c(x.k_1; k_2..) + sum_i (-1)^i c(x; .., k_i k_(i+1), ..) + (-1)^(d+1) c(x; k_1..k_d)`.
    pub fn coboundary_at(&self, x: usize, ks: &[Elem]) -> PhaseQ {
        let d = self.degree;
        debug_assert_eq!(ks.len(), d + 1);
        let g = &*self.groupoid.acting;
        let mut acc = self.get(self.groupoid.act(x, ks[0]), &ks[1..]);
        let mut buf = Vec::with_capacity(d);
        for i in 1..=d {
            buf.clear();
            buf.extend_from_slice(&ks[..i - 1]);
            buf.push(g.mul(ks[i - 1], ks[i]));
            buf.extend_from_slice(&ks[i + 1..]);
            let t = self.get(x, &buf);
            acc += if i % 2 == 0 { t } else { -t };
        }
        let last = self.get(x, &ks[..d]);
        acc += if (d + 1).is_multiple_of(2) { last } else { -last };
        acc
    }

    pub fn coboundary(&self) -> Result<GroupoidCochain, TransgressionError> {
        GroupoidCochain::from_fn(self.groupoid.clone(), self.degree + 1, |x, ks| {
            self.coboundary_at(x, ks)
        })
    }

    /// First composable string (by object, then morphisms) where the coboundary is non-zero.
    pub fn cocycle_violation(&self) -> Option<(usize, Vec<Elem>, PhaseQ)> {
        let k = self.groupoid.acting.order();
        let block = k.pow(self.degree as u32 + 1);
        (0..self.groupoid.object_count())
            .into_par_iter()
            .filter_map(|x| {
                let mut ks = vec![0; self.degree + 1];
                (0..block).find_map(|key| {
                    decode(key, k, &mut ks);
                    let v = self.coboundary_at(x, &ks);
                    (!v.is_zero()).then(|| (x, ks.clone(), v))
                })
            })
            .min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)))
    }

    pub fn is_groupoid_cocycle(&self) -> bool {
        self.cocycle_violation().is_none()
    }

    pub fn is_normalized(&self) -> bool {
        let e = self.groupoid.acting.identity();
        self.entries()
            .all(|(_, ks, v)| v.is_zero() || !ks.contains(&e))
    }

    /// Restriction along a functor into this cochain's groupoid.
    pub fn pullback(
        &self,
        functor: &GroupoidFunctor,
    ) -> Result<GroupoidCochain, TransgressionError> {
        if *functor.target != *self.groupoid {
            return Err(TransgressionError::GroupoidMismatch);
        }
        let mut mapped = vec![0; self.degree];
        GroupoidCochain::from_fn(functor.source.clone(), self.degree, |x, ks| {
            for (m, &k) in mapped.iter_mut().zip(ks) {
                *m = functor.hom.apply(k);
            }
            self.get(functor.object_map[x], &mapped)
        })
    }
}

/// Transgression of a group `n`-cocycle to a degree-`(n-1)` cochain on `G//G`,
/// read off the shuffle decomposition of the prism `S^1 x Delta^(n-1)`:
///
/// `(tau theta)(g; h_1..h_(n-1)) = sum_i (-1)^i theta(h_1..h_i, g^(i), h_(i+1)..h_(n-1))`
///
/// where `g^(i) = (h_1..h_i)^-1 g (h_1..h_i)` is the object reached after `i` steps.
pub fn transgress(theta: &Cochain) -> Result<GroupoidCochain, TransgressionError> {
    let n = theta.degree();
    if !(1..=4).contains(&n) {
        return Err(TransgressionError::DegreeOutOfRange(n));
    }
    let group = theta.group().clone();
    let loops = Arc::new(ActionGroupoid::loop_groupoid(group.clone()));
    let mut args = vec![0; n];
    GroupoidCochain::from_fn(loops, n - 1, |g, hs| {
        let mut acc = PhaseQ::ZERO;
        let mut prefix = group.identity();
        for i in 0..n {
            if i > 0 {
                prefix = group.mul(prefix, hs[i - 1]);
            }
            args[..i].copy_from_slice(&hs[..i]);
            args[i] = group.conjugate(g, prefix);
            args[i + 1..].copy_from_slice(&hs[i..]);
            let v = theta.get(&args);
            acc += if i % 2 == 0 { v } else { -v };
        }
        acc
    })
}

/// Per-component contribution to a twisted count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCount {
    pub representative: usize,
    pub automorphisms: usize,
    pub count: u64,
}

fn certify_count(value: BigRational) -> Result<u64, TransgressionError> {
    if !value.is_integer() || value.is_negative() {
        return Err(TransgressionError::NotACount(value.to_string()));
    }
    value
        .to_integer()
        .to_u64()
        .ok_or_else(|| TransgressionError::NotACount(value.to_string()))
}

/// Number of isomorphism classes of irreducible `alpha`-projective functors,
/// broken down by component: `(1/|Aut x|) sum_(ab = ba) exp(2 pi i (alpha(x;a,b) - alpha(x;b,a)))`.
pub fn twisted_irrep_breakdown(
    alpha: &GroupoidCochain,
) -> Result<Vec<ComponentCount>, TransgressionError> {
    if alpha.degree() != 2 {
        return Err(TransgressionError::WrongDegree {
            expected: 2,
            got: alpha.degree(),
        });
    }
    let groupoid = alpha.groupoid();
    let group = &**groupoid.acting();
    let modulus = alpha.denominator_lcm();
    groupoid
        .components()
        .par_iter()
        .map(|component| {
            let x = component[0];
            let aut = groupoid.automorphisms(x);
            let mut sum = PhaseSum::new(modulus)?;
            for &a in &aut {
                for &b in &aut {
                    if group.commutes(a, b) {
                        sum.insert(alpha.get(x, &[a, b]) - alpha.get(x, &[b, a]), 1)?;
                    }
                }
            }
            let value =
                sum.exact_rational_value()? / BigRational::from_integer(BigInt::from(aut.len()));
            Ok(ComponentCount {
                representative: x,
                automorphisms: aut.len(),
                count: certify_count(value)?,
            })
        })
        .collect()
}

pub fn twisted_irrep_count(alpha: &GroupoidCochain) -> Result<u64, TransgressionError> {
    Ok(twisted_irrep_breakdown(alpha)?
        .iter()
        .map(|c| c.count)
        .sum())
}

/// One sector `j` of an equivariant theory, with its projection to `H//H`.
#[derive(Debug, Clone)]
pub struct Sector {
    pub j: Elem,
    pub groupoid: Arc<ActionGroupoid>,
    pub projection: GroupoidFunctor,
}

/// Homotopy fiber of `lambda_*: H//H -> J//J` over `j`.
///
/// Objects are pairs `(h, t)` with `t^-1 lambda(h) t = j`, in lexicographic
/// order; `k` in `H` maps `(h, t)` to `(k^-1 h k, lambda(k)^-1 t)`.
pub fn homotopy_fiber(hom: &GroupHom, j: Elem) -> Result<Sector, TransgressionError> {
    let (h_group, j_group) = (hom.source().clone(), hom.target().clone());
    let pairs: Vec<(Elem, Elem)> = h_group
        .elements()
        .flat_map(|h| j_group.elements().map(move |t| (h, t)))
        .filter(|&(h, t)| j_group.conjugate(hom.apply(h), t) == j)
        .collect();
    let labels = pairs
        .iter()
        .map(|&(h, t)| format!("({},{})", h_group.label(h), j_group.label(t)))
        .collect();
    let index = |p: (Elem, Elem)| {
        pairs
            .binary_search(&p)
            .expect("fiber is closed under the action")
    };
    let fiber = ActionGroupoid::new(labels, h_group.clone(), |x, k| {
        let (h, t) = pairs[x];
        index((
            h_group.conjugate(h, k),
            j_group.mul(j_group.inv(hom.apply(k)), t),
        ))
    })?;
    let fiber = Arc::new(fiber);
    let loops = Arc::new(ActionGroupoid::loop_groupoid(h_group.clone()));
    let object_map = pairs.iter().map(|&(h, _)| h).collect();
    let projection = GroupoidFunctor::new(
        fiber.clone(),
        loops,
        object_map,
        GroupHom::identity(h_group),
    )?;
    Ok(Sector {
        j,
        groupoid: fiber,
        projection,
    })
}

/// `lambda^-1(j) // ker lambda` for surjective `lambda`, with the kernel acting by conjugation.
pub fn kernel_sector(hom: &GroupHom, j: Elem) -> Result<Sector, TransgressionError> {
    if !hom.is_surjective() {
        return Err(TransgressionError::NotSurjective);
    }
    let h_group = hom.source().clone();
    let kernel = hom.kernel();
    let objects = hom.preimage(j);
    let labels = objects
        .iter()
        .map(|&h| h_group.label(h).to_string())
        .collect();
    let sector = ActionGroupoid::new(labels, kernel.group.clone(), |x, k| {
        let y = h_group.conjugate(objects[x], kernel.inclusion[k]);
        objects
            .binary_search(&y)
            .expect("preimage is closed under kernel conjugation")
    })?;
    let sector = Arc::new(sector);
    let loops = Arc::new(ActionGroupoid::loop_groupoid(h_group.clone()));
    let projection = GroupoidFunctor::new(
        sector.clone(),
        loops,
        objects,
        kernel.inclusion_hom(h_group),
    )?;
    Ok(Sector {
        j,
        groupoid: sector,
        projection,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorCounts {
    /// `(j, count)` for every `j` in the target group, in element order.
    pub sectors: Vec<(Elem, u64)>,
    pub total: u64,
    /// Whether the kernel-sector path was also evaluated and agreed.
    pub kernel_path_checked: bool,
}

/// Simple counts per sector of the pushforward of `theta` along `hom`.
///
/// For surjective `hom` every sector is also computed on
/// `lambda^-1(j)//ker lambda`; any disagreement is an error.
pub fn equivariant_sector_counts(
    hom: &GroupHom,
    theta: &Cochain,
) -> Result<SectorCounts, TransgressionError> {
    if theta.degree() != 3 {
        return Err(TransgressionError::WrongDegree {
            expected: 3,
            got: theta.degree(),
        });
    }
    if **theta.group() != **hom.source() {
        return Err(TransgressionError::GroupMismatch("another group"));
    }
    let tau = transgress(theta)?;
    let surjective = hom.is_surjective();
    let sectors = hom
        .target()
        .elements()
        .map(|j| {
            let fiber = homotopy_fiber(hom, j)?;
            let count = twisted_irrep_count(&tau.pullback(&fiber.projection)?)?;
            if surjective {
                let ks = kernel_sector(hom, j)?;
                let kernel = twisted_irrep_count(&tau.pullback(&ks.projection)?)?;
                if kernel != count {
                    return Err(TransgressionError::CrossCheckMismatch {
                        sector: j,
                        fiber: count,
                        kernel,
                    });
                }
            }
            Ok((j, count))
        })
        .collect::<Result<Vec<_>, TransgressionError>>()?;
    let total = sectors.iter().map(|(_, c)| c).sum();
    Ok(SectorCounts {
        sectors,
        total,
        kernel_path_checked: surjective,
    })
}

/// Number of simple objects as a rational, for callers that want to compare
/// before certification.
pub fn twisted_irrep_value(alpha: &GroupoidCochain) -> Result<BigRational, TransgressionError> {
    let mut total = BigRational::zero();
    for c in twisted_irrep_breakdown(alpha)? {
        total += BigRational::from_integer(c.count.into());
    }
    Ok(total)
}
