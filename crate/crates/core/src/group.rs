//! Finite groups presented by multiplication tables.
//!
//! Elements are dense indices `0..order`. Every constructor in this module
//! places the identity at index 0; tables supplied through [`FiniteGroup::from_table`]
//! may put it anywhere.
//!
//! Canonical orderings of the built-in families:
//!
//! * `cyclic(k)`: element `i` is the residue `i mod k`.
//! * `symmetric(k)`: permutations of `{0,..,k-1}` in lexicographic order of
//!   their one-line notation, composed right to left, `(st)(i) = s(t(i))`.
//! * `dihedral(k)`: element `i + k*j` is `r^i s^j` with `s r s = r^-1`.
//! * `direct_product(g, h)`: element `a * |h| + b` is the pair `(a, b)`.

use std::sync::Arc;

use thiserror::Error;

/// Index of a group element.
pub type Elem = usize;

/// Default bound on the order accepted by exhaustive validation.
pub const DEFAULT_VALIDATION_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group must have at least one element")]
    Empty,
    #[error("parameter {0} out of range for this family")]
    BadParameter(usize),
    #[error("multiplication table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("table entry at ({row}, {col}) is {value}, outside [0, {order})")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("no two-sided identity element")]
    MissingIdentity,
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(Elem),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(Elem, Elem, Elem),
    #[error("order {order} exceeds the exhaustive validation cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("{0} labels supplied for a group of order {1}")]
    LabelCount(usize, usize),
    #[error("image table has {0} entries, expected {1}")]
    ImageLength(usize, usize),
    #[error("image entry for {0} is outside the target group")]
    ImageOutOfRange(Elem),
    #[error("not a homomorphism: image of {0}*{1} differs from the product of images")]
    NotHomomorphism(Elem, Elem),
    #[error("tuple {0:?} is not pairwise commuting")]
    NotCommuting(Vec<Elem>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
    identity: Elem,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from a raw multiplication table, checking every axiom.
    pub fn from_table(
        table: Vec<Vec<Elem>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        Self::from_table_with_cap(table, labels, DEFAULT_VALIDATION_CAP)
    }

    pub fn from_table_with_cap(
        table: Vec<Vec<Elem>>,
        labels: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if order > cap {
            return Err(GroupError::TooLarge { order, cap });
        }
        let mut mul = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare {
                    row,
                    len: entries.len(),
                    order,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::EntryOutOfRange {
                        row,
                        col,
                        value,
                        order,
                    });
                }
                mul.push(value);
            }
        }
        let at = |a: usize, b: usize| mul[a * order + b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or(GroupError::MissingIdentity)?;
        let mut inv = Vec::with_capacity(order);
        for g in 0..order {
            let h = (0..order)
                .find(|&h| at(g, h) == identity && at(h, g) == identity)
                .ok_or(GroupError::MissingInverse(g))?;
            inv.push(h);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NonAssociative(a, b, c));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() != order => return Err(GroupError::LabelCount(l.len(), order)),
            Some(l) => l,
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(Self {
            order,
            mul,
            inv,
            identity,
            labels,
        })
    }

    /// Assembles a group from a table already known to satisfy the axioms.
    fn from_trusted(
        order: usize,
        identity: Elem,
        op: impl Fn(Elem, Elem) -> Elem,
        labels: Vec<String>,
    ) -> Self {
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                mul.push(op(a, b));
            }
        }
        let inv = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| mul[g * order + h] == identity)
                    .expect("inverse")
            })
            .collect();
        Self {
            order,
            mul,
            inv,
            identity,
            labels,
        }
    }

    pub fn cyclic(k: usize) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::BadParameter(0));
        }
        Ok(Self::from_trusted(
            k,
            0,
            |a, b| (a + b) % k,
            (0..k).map(|i| i.to_string()).collect(),
        ))
    }

    pub fn symmetric(k: usize) -> Result<Self, GroupError> {
        if k == 0 || k > 5 {
            return Err(GroupError::BadParameter(k));
        }
        let perms: Vec<Vec<usize>> = permutations(k).into_iter().map(|(p, _)| p).collect();
        let index_of = |p: &[usize]| {
            perms
                .binary_search_by(|q| q.as_slice().cmp(p))
                .expect("perm")
        };
        let labels = perms
            .iter()
            .map(|p| {
                format!(
                    "[{}]",
                    p.iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        let order = perms.len();
        Ok(Self::from_trusted(
            order,
            0,
            |a, b| {
                let composed: Vec<usize> = (0..k).map(|i| perms[a][perms[b][i]]).collect();
                index_of(&composed)
            },
            labels,
        ))
    }

    /// Dihedral group of order `2k`.
    pub fn dihedral(k: usize) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::BadParameter(0));
        }
        let labels = (0..2 * k)
            .map(|g| {
                if g < k {
                    format!("r^{g}")
                } else {
                    format!("r^{} s", g - k)
                }
            })
            .collect();
        Ok(Self::from_trusted(
            2 * k,
            0,
            |a, b| {
                let (i, s) = (a % k, a / k);
                let (j, t) = (b % k, b / k);
                // r^i s^s r^j s^t = r^(i +- j) s^(s+t)
                let rot = if s == 0 { (i + j) % k } else { (i + k - j) % k };
                rot + k * ((s + t) % 2)
            },
            labels,
        ))
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let m = h.order;
        let labels = (0..g.order * m)
            .map(|x| format!("({},{})", g.labels[x / m], h.labels[x % m]))
            .collect();
        Self::from_trusted(
            g.order * m,
            g.identity * m + h.identity,
            |x, y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m),
            labels,
        )
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// `h^-1 g h`.
    #[inline]
    pub fn conjugate(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.inv(h), self.mul(g, h))
    }

    #[inline]
    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.commutes(a, b)))
    }

    /// Product of a sequence, left to right.
    pub fn product(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems
            .into_iter()
            .fold(self.identity, |acc, g| self.mul(acc, g))
    }

    /// Multiplication table as nested rows.
    pub fn table(&self) -> Vec<Vec<Elem>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Exhaustive check of the group axioms on the stored tables.
    pub fn verify_axioms(&self) -> Result<(), GroupError> {
        let e = self.identity;
        for g in self.elements() {
            if self.mul(e, g) != g || self.mul(g, e) != g {
                return Err(GroupError::MissingIdentity);
            }
            if self.mul(g, self.inv(g)) != e || self.mul(self.inv(g), g) != e {
                return Err(GroupError::MissingInverse(g));
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn centralizer(&self, g: Elem) -> Vec<Elem> {
        self.elements().filter(|&h| self.commutes(g, h)).collect()
    }

    /// Conjugacy classes, each sorted, ordered by their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            let mut class: Vec<Elem> = self.elements().map(|h| self.conjugate(g, h)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Pairwise commuting `n`-tuples in lexicographic order.
    pub fn commuting_tuples(&self, n: usize) -> CommutingTuples<'_> {
        CommutingTuples::new(self, n, self.elements().collect())
    }

    /// Pairwise commuting `n`-tuples whose first entry is `first`.
    pub fn commuting_tuples_from(&self, first: Elem, n: usize) -> CommutingTuples<'_> {
        assert!(n >= 1);
        CommutingTuples::new(self, n, vec![first])
    }

    pub fn count_commuting_tuples(&self, n: usize) -> u64 {
        fn count(g: &FiniteGroup, depth: usize, candidates: &[Elem]) -> u64 {
            if depth == 1 {
                return candidates.len() as u64;
            }
            candidates
                .iter()
                .map(|&x| {
                    let next: Vec<Elem> = candidates
                        .iter()
                        .copied()
                        .filter(|&y| g.commutes(x, y))
                        .collect();
                    count(g, depth - 1, &next)
                })
                .sum()
        }
        if n == 0 {
            return 1;
        }
        count(self, n, &self.elements().collect::<Vec<_>>())
    }
}

/// Backtracking enumeration of pairwise commuting tuples. Level `i + 1`
/// draws from the intersection of the centralizers of the first `i + 1` entries.
pub struct CommutingTuples<'a> {
    group: &'a FiniteGroup,
    n: usize,
    candidates: Vec<Vec<Elem>>,
    cursor: Vec<usize>,
    current: Vec<Elem>,
    done: bool,
}

impl<'a> CommutingTuples<'a> {
    fn new(group: &'a FiniteGroup, n: usize, first_level: Vec<Elem>) -> Self {
        let mut it = Self {
            group,
            n,
            candidates: vec![first_level],
            cursor: vec![0],
            current: Vec::with_capacity(n),
            done: n == 0,
        };
        if !it.done {
            it.descend();
        }
        it
    }

    /// Extends the current prefix with first candidates down to full length.
    fn descend(&mut self) {
        loop {
            let level = self.current.len();
            let pos = self.cursor[level];
            if pos >= self.candidates[level].len() {
                // exhausted at this level: backtrack
                if level == 0 {
                    self.done = true;
                    return;
                }
                self.candidates.pop();
                self.cursor.pop();
                self.current.pop();
                self.cursor[level - 1] += 1;
                continue;
            }
            let x = self.candidates[level][pos];
            if level + 1 == self.n {
                return;
            }
            // level 0 may be restricted to a single first entry; deeper levels
            // always hold the full joint centralizer of the prefix
            let next: Vec<Elem> = if level == 0 {
                self.group
                    .elements()
                    .filter(|&y| self.group.commutes(x, y))
                    .collect()
            } else {
                self.candidates[level]
                    .iter()
                    .copied()
                    .filter(|&y| self.group.commutes(x, y))
                    .collect()
            };
            self.current.push(x);
            self.candidates.push(next);
            self.cursor.push(0);
        }
    }
}

impl Iterator for CommutingTuples<'_> {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        if self.done {
            return None;
        }
        let level = self.n - 1;
        let mut tuple = self.current.clone();
        tuple.push(self.candidates[level][self.cursor[level]]);
        self.cursor[level] += 1;
        self.descend();
        Some(tuple)
    }
}

/// Permutations of `0..k` in lexicographic order, paired with their sign.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        let k = used.len();
        if prefix.len() == k {
            out.push((prefix.clone(), sign(prefix)));
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<Elem>,
}

/// A subgroup together with its inclusion into the ambient group.
#[derive(Debug, Clone)]
pub struct Subgroup {
    pub group: Arc<FiniteGroup>,
    /// `inclusion[i]` is the ambient element represented by subgroup element `i`.
    pub inclusion: Vec<Elem>,
}

impl Subgroup {
    /// Builds the induced group on a subset closed under multiplication.
    /// The subset is sorted; the ambient identity becomes index 0.
    pub fn from_closed_subset(ambient: &FiniteGroup, subset: &[Elem]) -> Self {
        let mut elems: Vec<Elem> = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let e = ambient.identity();
        let pos = elems
            .iter()
            .position(|&x| x == e)
            .expect("subgroup contains identity");
        elems.remove(pos);
        elems.insert(0, e);
        let mut index = vec![usize::MAX; ambient.order()];
        for (i, &x) in elems.iter().enumerate() {
            index[x] = i;
        }
        let labels = elems
            .iter()
            .map(|&x| ambient.label(x).to_string())
            .collect();
        let group = FiniteGroup::from_trusted(
            elems.len(),
            0,
            |a, b| index[ambient.mul(elems[a], elems[b])],
            labels,
        );
        Self {
            group: Arc::new(group),
            inclusion: elems,
        }
    }

    pub fn inclusion_hom(&self, ambient: Arc<FiniteGroup>) -> GroupHom {
        GroupHom {
            source: self.group.clone(),
            target: ambient,
            image: self.inclusion.clone(),
        }
    }
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        image: Vec<Elem>,
    ) -> Result<Self, GroupError> {
        if image.len() != source.order() {
            return Err(GroupError::ImageLength(image.len(), source.order()));
        }
        if let Some(g) = image.iter().position(|&x| x >= target.order()) {
            return Err(GroupError::ImageOutOfRange(g));
        }
        for a in source.elements() {
            for b in source.elements() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(GroupError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(Self {
            source,
            target,
            image,
        })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let image = group.elements().collect();
        Self {
            source: group.clone(),
            target: group,
            image,
        }
    }

    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let image = vec![target.identity(); source.order()];
        Self {
            source,
            target,
            image,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, g: Elem) -> Elem {
        self.image[g]
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    pub fn preimage(&self, j: Elem) -> Vec<Elem> {
        self.source
            .elements()
            .filter(|&h| self.image[h] == j)
            .collect()
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_closed_subset(&self.source, &self.preimage(self.target.identity()))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &j in &self.image {
            hit[j] = true;
        }
        hit.into_iter().all(|x| x)
    }
}
