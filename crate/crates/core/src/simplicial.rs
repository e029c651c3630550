//! Ordered delta complexes, flat gauge fields, holonomy and state sums.
//!
//! A complex is a signed list of top simplices with ordered vertices. Each
//! pair of positions `i < j` in a simplex names an edge. By default the edge
//! is named after its endpoints, `"(u,v)"`; complexes with several edges
//! between the same vertices (the one-vertex torus) give explicit names.
//! Default-named edges with `u == v` are degenerate and carry the identity.
//!
//! A flat gauge field labels every edge by a group element so that every
//! 2-face `(i, j, k)` satisfies `g_ij g_jk = g_ik`; this is the simplicial
//! model of a map to `BG`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::cochain::Cochain;
use crate::group::{permutations, Elem, FiniteGroup};
use crate::phase::{PhaseError, PhaseQ, PhaseSum};

pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("simplex {index} has {got} vertices, expected {expected}")]
    SimplexArity {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("simplex {index} has sign {sign}; signs must be +1 or -1")]
    BadSign { index: usize, sign: i64 },
    #[error("simplex {index} uses vertex {vertex} but the complex has {count} vertices")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        count: usize,
    },
    #[error("simplex {index} names {got} edges, expected {expected}")]
    EdgeCount {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("edge {name:?} is used with endpoints ({a0},{a1}) and ({b0},{b1})")]
    EdgeConflict {
        name: String,
        a0: usize,
        a1: usize,
        b0: usize,
        b1: usize,
    },
    #[error("signed boundary does not vanish: face {face} has coefficient {coefficient}")]
    NotAFundamentalCycle { face: String, coefficient: i64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("unsupported torus dimension {0}; expected 1, 2 or 3")]
    TorusDimension(usize),
    #[error("field has {got} labels, complex has {expected} edges")]
    FieldLength { got: usize, expected: usize },
    #[error("field does not label edge {0:?}")]
    MissingEdge(String),
    #[error("field labels unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("label {0} is not a group element")]
    LabelOutOfRange(Elem),
    #[error("field is not flat on the face with edges {0:?}")]
    NotFlat([String; 3]),
    #[error("degenerate edge {0:?} must carry the identity")]
    DegenerateLabel(String),
    #[error("gauge transformation has {got} entries, complex has {expected} vertices")]
    GaugeLength { got: usize, expected: usize },
    #[error("tuple {0:?} is not pairwise commuting")]
    NotCommuting(Vec<Elem>),
    #[error("cocycle lives on a different group")]
    GroupMismatch,
    #[error(transparent)]
    Phase(#[from] PhaseError),
}

/// Input description of one top simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexSpec {
    pub vertices: Vec<usize>,
    /// Edge names for position pairs `(i, j)`, `i < j`, in lexicographic order.
    pub edges: Option<Vec<String>>,
    pub sign: i64,
}

impl SimplexSpec {
    pub fn new(vertices: Vec<usize>, sign: i64) -> Self {
        Self {
            vertices,
            edges: None,
            sign,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    vertices: Vec<usize>,
    edges: Vec<EdgeId>,
    sign: i64,
}

impl Simplex {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    /// Edge between positions `i < j`.
    pub fn edge(&self, i: usize, j: usize) -> EdgeId {
        self.edges[pair_index(self.vertices.len(), i, j)]
    }
}

fn pair_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

fn default_edge_name(u: usize, v: usize) -> String {
    format!("({u},{v})")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaComplex {
    dimension: usize,
    vertex_count: usize,
    simplices: Vec<Simplex>,
    /// Edges in order of first appearance.
    edges: Vec<Edge>,
    /// Distinct 2-faces as edge triples `(a, b, c)` with `g_a g_b = g_c`.
    triangles: Vec<[EdgeId; 3]>,
}

impl DeltaComplex {
    pub fn new(
        dimension: usize,
        vertex_count: usize,
        specs: Vec<SimplexSpec>,
    ) -> Result<Self, SimplicialError> {
        let m = dimension + 1;
        let mut edges: Vec<Edge> = Vec::new();
        let mut by_name: HashMap<String, EdgeId> = HashMap::new();
        let mut simplices = Vec::with_capacity(specs.len());
        for (index, spec) in specs.into_iter().enumerate() {
            if spec.vertices.len() != m {
                return Err(SimplicialError::SimplexArity {
                    index,
                    got: spec.vertices.len(),
                    expected: m,
                });
            }
            if spec.sign != 1 && spec.sign != -1 {
                return Err(SimplicialError::BadSign {
                    index,
                    sign: spec.sign,
                });
            }
            if let Some(&vertex) = spec.vertices.iter().find(|&&v| v >= vertex_count) {
                return Err(SimplicialError::VertexOutOfRange {
                    index,
                    vertex,
                    count: vertex_count,
                });
            }
            let pairs = m * (m - 1) / 2;
            if let Some(names) = &spec.edges {
                if names.len() != pairs {
                    return Err(SimplicialError::EdgeCount {
                        index,
                        got: names.len(),
                        expected: pairs,
                    });
                }
            }
            let mut ids = Vec::with_capacity(pairs);
            let mut k = 0;
            for i in 0..m {
                for j in i + 1..m {
                    let (u, v) = (spec.vertices[i], spec.vertices[j]);
                    let name = match &spec.edges {
                        Some(names) => names[k].clone(),
                        None => default_edge_name(u, v),
                    };
                    let degenerate = u == v && name == default_edge_name(u, v);
                    k += 1;
                    let id = match by_name.get(&name) {
                        Some(&id) => {
                            let e = &edges[id];
                            if (e.source, e.target) != (u, v) {
                                return Err(SimplicialError::EdgeConflict {
                                    name,
                                    a0: e.source,
                                    a1: e.target,
                                    b0: u,
                                    b1: v,
                                });
                            }
                            id
                        }
                        None => {
                            edges.push(Edge {
                                name: name.clone(),
                                source: u,
                                target: v,
                                degenerate,
                            });
                            by_name.insert(name, edges.len() - 1);
                            edges.len() - 1
                        }
                    };
                    ids.push(id);
                }
            }
            simplices.push(Simplex {
                vertices: spec.vertices,
                edges: ids,
                sign: spec.sign,
            });
        }
        let mut triangles = Vec::new();
        for s in &simplices {
            for i in 0..m {
                for j in i + 1..m {
                    for k in j + 1..m {
                        triangles.push([s.edge(i, j), s.edge(j, k), s.edge(i, k)]);
                    }
                }
            }
        }
        triangles.sort_unstable();
        triangles.dedup();
        Ok(Self {
            dimension,
            vertex_count,
            simplices,
            edges,
            triangles,
        })
    }

    /// The complex with no simplices.
    pub fn empty(dimension: usize) -> Self {
        Self::new(dimension, 0, Vec::new()).expect("empty complex")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Codimension-one faces whose signed coefficients do not cancel.
    ///
    /// A face is identified by its vertex tuple together with the edges
    /// among those vertices, so faces glued through named edges match.
    pub fn uncancelled_faces(&self) -> Vec<(String, i64)> {
        if self.dimension == 0 {
            return Vec::new();
        }
        let m = self.dimension + 1;
        let mut boundary: BTreeMap<(Vec<usize>, Vec<EdgeId>), i64> = BTreeMap::new();
        for s in &self.simplices {
            for drop in 0..m {
                let keep: Vec<usize> = (0..m).filter(|&i| i != drop).collect();
                let verts: Vec<usize> = keep.iter().map(|&i| s.vertices[i]).collect();
                let mut face_edges = Vec::new();
                for a in 0..keep.len() {
                    for b in a + 1..keep.len() {
                        face_edges.push(s.edge(keep[a], keep[b]));
                    }
                }
                let sign = if drop % 2 == 0 { s.sign } else { -s.sign };
                *boundary.entry((verts, face_edges)).or_insert(0) += sign;
            }
        }
        boundary
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|((verts, face_edges), c)| {
                let names: Vec<&str> = face_edges
                    .iter()
                    .map(|&e| self.edges[e].name.as_str())
                    .collect();
                (format!("{verts:?} edges {names:?}"), c)
            })
            .collect()
    }

    /// Checks that the signed simplices form a cycle.
    pub fn validate(&self) -> Result<(), SimplicialError> {
        match self.uncancelled_faces().into_iter().next() {
            None => Ok(()),
            Some((face, coefficient)) => {
                Err(SimplicialError::NotAFundamentalCycle { face, coefficient })
            }
        }
    }

    fn face_names(&self, t: &[EdgeId; 3]) -> [String; 3] {
        t.map(|e| self.edges[e].name.clone())
    }

    pub fn check_flat(&self, group: &FiniteGroup, labels: &[Elem]) -> Result<(), SimplicialError> {
        if labels.len() != self.edges.len() {
            return Err(SimplicialError::FieldLength {
                got: labels.len(),
                expected: self.edges.len(),
            });
        }
        if let Some(&g) = labels.iter().find(|&&g| g >= group.order()) {
            return Err(SimplicialError::LabelOutOfRange(g));
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.degenerate && labels[e] != group.identity() {
                return Err(SimplicialError::DegenerateLabel(edge.name.clone()));
            }
        }
        for t in &self.triangles {
            if group.mul(labels[t[0]], labels[t[1]]) != labels[t[2]] {
                return Err(SimplicialError::NotFlat(self.face_names(t)));
            }
        }
        Ok(())
    }

    /// Builds a field from edge-name keyed labels, checking flatness.
    pub fn field_from_map(
        &self,
        group: &FiniteGroup,
        map: &BTreeMap<String, Elem>,
    ) -> Result<FlatGaugeField, SimplicialError> {
        if let Some(name) = map.keys().find(|k| self.edge_id(k).is_none()) {
            return Err(SimplicialError::UnknownEdge(name.clone()));
        }
        let labels = self
            .edges
            .iter()
            .map(|e| match map.get(&e.name) {
                Some(&g) => Ok(g),
                None if e.degenerate => Ok(group.identity()),
                None => Err(SimplicialError::MissingEdge(e.name.clone())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        FlatGaugeField::new(self, group, labels)
    }

    fn search_plan(&self) -> Vec<EdgeStep> {
        let mut plan: Vec<EdgeStep> = (0..self.edges.len())
            .map(|e| EdgeStep {
                forced: self.edges[e].degenerate.then_some(Forced::Identity),
                checks: Vec::new(),
            })
            .collect();
        for t in &self.triangles {
            let top = *t.iter().max().expect("three edges");
            plan[top].checks.push(*t);
            let uses = t.iter().filter(|&&x| x == top).count();
            if uses == 1 && plan[top].forced.is_none() {
                let [a, b, c] = *t;
                plan[top].forced = Some(if c == top {
                    Forced::Product(a, b)
                } else if b == top {
                    Forced::LeftQuotient(a, c)
                } else {
                    Forced::RightQuotient(c, b)
                });
            }
        }
        plan
    }

    /// Calls `visit` on every flat field, in lexicographic order of the
    /// labels listed by edge id.
    pub fn for_each_flat_field(&self, group: &FiniteGroup, mut visit: impl FnMut(&[Elem])) {
        let plan = self.search_plan();
        let mut labels = vec![group.identity(); self.edges.len()];
        search(group, &plan, 0, &mut labels, &mut visit);
    }

    /// Like [`Self::for_each_flat_field`], restricted to fields whose first
    /// edge carries `first`.
    fn for_each_flat_field_from(
        &self,
        group: &FiniteGroup,
        first: Elem,
        mut visit: impl FnMut(&[Elem]),
    ) {
        let plan = self.search_plan();
        let mut labels = vec![group.identity(); self.edges.len()];
        labels[0] = first;
        if step_ok(group, &plan[0], 0, &mut labels, Some(first)) {
            search(group, &plan, 1, &mut labels, &mut visit);
        }
    }

    pub fn flat_fields(&self, group: &FiniteGroup) -> Vec<FlatGaugeField> {
        let mut out = Vec::new();
        self.for_each_flat_field(group, |labels| {
            out.push(FlatGaugeField {
                labels: labels.to_vec(),
            })
        });
        out
    }

    pub fn count_flat_fields(&self, group: &FiniteGroup) -> u64 {
        let mut n = 0;
        self.for_each_flat_field(group, |_| n += 1);
        n
    }

    /// Signed sum of `theta` over the top simplices, read along each
    /// simplex's spine `v0 -> v1 -> ... -> vn`.
    pub fn holonomy(
        &self,
        field: &FlatGaugeField,
        theta: &Cochain,
    ) -> Result<PhaseQ, SimplicialError> {
        if theta.degree() != self.dimension {
            return Err(SimplicialError::DimensionMismatch(
                theta.degree(),
                self.dimension,
            ));
        }
        if field.labels.len() != self.edges.len() {
            return Err(SimplicialError::FieldLength {
                got: field.labels.len(),
                expected: self.edges.len(),
            });
        }
        Ok(self.holonomy_of_labels(&field.labels, theta))
    }

    fn holonomy_of_labels(&self, labels: &[Elem], theta: &Cochain) -> PhaseQ {
        let mut args = vec![0; self.dimension];
        let mut acc = PhaseQ::ZERO;
        for s in &self.simplices {
            for (i, a) in args.iter_mut().enumerate() {
                *a = labels[s.edge(i, i + 1)];
            }
            let v = theta.get(&args);
            acc += if s.sign > 0 { v } else { -v };
        }
        acc
    }

    /// `g'_uv = h(u)^-1 g_uv h(v)`.
    pub fn gauge_transform(
        &self,
        group: &FiniteGroup,
        field: &FlatGaugeField,
        gauge: &[Elem],
    ) -> Result<FlatGaugeField, SimplicialError> {
        if gauge.len() != self.vertex_count {
            return Err(SimplicialError::GaugeLength {
                got: gauge.len(),
                expected: self.vertex_count,
            });
        }
        let labels = self
            .edges
            .iter()
            .zip(&field.labels)
            .map(|(e, &g)| group.mul(group.inv(gauge[e.source]), group.mul(g, gauge[e.target])))
            .collect();
        Ok(FlatGaugeField { labels })
    }

    /// `|G|^-V sum_fields exp(2 pi i holonomy)`, exact.
    pub fn state_sum(&self, theta: &Cochain) -> Result<StateSum, SimplicialError> {
        if theta.degree() != self.dimension {
            return Err(SimplicialError::DimensionMismatch(
                theta.degree(),
                self.dimension,
            ));
        }
        let group = theta.group().as_ref();
        let modulus = theta.denominator_lcm();
        let accumulate = |sum: &mut PhaseSum, count: &mut u64, labels: &[Elem]| {
            sum.insert(self.holonomy_of_labels(labels, theta), 1)
                .expect("modulus covers all denominators");
            *count += 1;
        };
        let (phases, field_count) = if self.edges.is_empty() || self.edges[0].degenerate {
            let mut sum = PhaseSum::new(modulus)?;
            let mut count = 0;
            self.for_each_flat_field(group, |l| accumulate(&mut sum, &mut count, l));
            (sum, count)
        } else {
            // split on the label of the first edge; merging exact sums is order independent
            group
                .elements()
                .into_par_iter()
                .map(|first| {
                    let mut sum = PhaseSum::new(modulus).expect("positive modulus");
                    let mut count = 0;
                    self.for_each_flat_field_from(group, first, |l| {
                        accumulate(&mut sum, &mut count, l)
                    });
                    (sum, count)
                })
                .reduce(
                    || (PhaseSum::new(modulus).expect("positive modulus"), 0),
                    |(mut a, n), (b, m)| {
                        a.merge(&b).expect("equal moduli");
                        (a, n + m)
                    },
                )
        };
        let total = phases.exact_rational_value()?;
        let norm = BigInt::from(group.order()).pow(self.vertex_count as u32);
        Ok(StateSum {
            value: total / BigRational::from_integer(norm),
            phases,
            field_count,
        })
    }

    /// Disjoint union; vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &DeltaComplex) -> Result<DeltaComplex, SimplicialError> {
        if self.dimension != other.dimension {
            return Err(SimplicialError::DimensionMismatch(
                self.dimension,
                other.dimension,
            ));
        }
        let shift = self.vertex_count;
        let taken: std::collections::HashSet<&str> =
            self.edges.iter().map(|e| e.name.as_str()).collect();
        let mut rename: HashMap<EdgeId, String> = HashMap::new();
        for (id, e) in other.edges.iter().enumerate() {
            let name = if e.name == default_edge_name(e.source, e.target) {
                default_edge_name(e.source + shift, e.target + shift)
            } else {
                let mut name = e.name.clone();
                while taken.contains(name.as_str()) {
                    name.push('\'');
                }
                name
            };
            rename.insert(id, name);
        }
        let mut specs = self.specs();
        for s in &other.simplices {
            specs.push(SimplexSpec {
                vertices: s.vertices.iter().map(|v| v + shift).collect(),
                edges: Some(s.edges.iter().map(|e| rename[e].clone()).collect()),
                sign: s.sign,
            });
        }
        DeltaComplex::new(
            self.dimension,
            self.vertex_count + other.vertex_count,
            specs,
        )
    }

    /// Simplex descriptions that rebuild this complex.
    pub fn specs(&self) -> Vec<SimplexSpec> {
        self.simplices
            .iter()
            .map(|s| {
                let m = s.vertices.len();
                let mut named = false;
                let mut names = Vec::new();
                for i in 0..m {
                    for j in i + 1..m {
                        let e = &self.edges[s.edge(i, j)];
                        named |= e.name != default_edge_name(s.vertices[i], s.vertices[j]);
                        names.push(e.name.clone());
                    }
                }
                SimplexSpec {
                    vertices: s.vertices.clone(),
                    edges: named.then_some(names),
                    sign: s.sign,
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
enum Forced {
    Identity,
    /// `g_top = g_a g_b`
    Product(EdgeId, EdgeId),
    /// `g_a g_top = g_c`
    LeftQuotient(EdgeId, EdgeId),
    /// `g_top g_b = g_c`
    RightQuotient(EdgeId, EdgeId),
}

struct EdgeStep {
    forced: Option<Forced>,
    /// Faces whose largest edge is this one.
    checks: Vec<[EdgeId; 3]>,
}

fn forced_value(group: &FiniteGroup, f: Forced, labels: &[Elem]) -> Elem {
    match f {
        Forced::Identity => group.identity(),
        Forced::Product(a, b) => group.mul(labels[a], labels[b]),
        Forced::LeftQuotient(a, c) => group.mul(group.inv(labels[a]), labels[c]),
        Forced::RightQuotient(c, b) => group.mul(labels[c], group.inv(labels[b])),
    }
}

/// Assigns edge `e` (to `value` if given, else its forced value) and runs its face checks.
fn step_ok(
    group: &FiniteGroup,
    step: &EdgeStep,
    e: EdgeId,
    labels: &mut [Elem],
    value: Option<Elem>,
) -> bool {
    if let Some(f) = step.forced {
        let v = forced_value(group, f, labels);
        if value.is_some_and(|x| x != v) {
            return false;
        }
        labels[e] = v;
    } else if let Some(v) = value {
        labels[e] = v;
    }
    step.checks
        .iter()
        .all(|t| group.mul(labels[t[0]], labels[t[1]]) == labels[t[2]])
}

fn search(
    group: &FiniteGroup,
    plan: &[EdgeStep],
    e: EdgeId,
    labels: &mut Vec<Elem>,
    visit: &mut impl FnMut(&[Elem]),
) {
    if e == plan.len() {
        visit(labels);
        return;
    }
    if plan[e].forced.is_some() {
        if step_ok(group, &plan[e], e, labels, None) {
            search(group, plan, e + 1, labels, visit);
        }
        return;
    }
    for g in group.elements() {
        if step_ok(group, &plan[e], e, labels, Some(g)) {
            search(group, plan, e + 1, labels, visit);
        }
    }
}

/// Edge labels indexed by [`EdgeId`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlatGaugeField {
    labels: Vec<Elem>,
}

impl FlatGaugeField {
    pub fn new(
        complex: &DeltaComplex,
        group: &FiniteGroup,
        labels: Vec<Elem>,
    ) -> Result<Self, SimplicialError> {
        complex.check_flat(group, &labels)?;
        Ok(Self { labels })
    }

    pub fn labels(&self) -> &[Elem] {
        &self.labels
    }

    pub fn to_map(&self, complex: &DeltaComplex) -> BTreeMap<String, Elem> {
        complex
            .edges
            .iter()
            .zip(&self.labels)
            .map(|(e, &g)| (e.name.clone(), g))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct StateSum {
    pub value: BigRational,
    /// Unnormalized phase accumulator.
    pub phases: PhaseSum,
    pub field_count: u64,
}

fn axis_set_name(axes: &[usize]) -> String {
    let parts: Vec<String> = axes.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// One-vertex cubical torus `T^n` cut into `n!` simplices.
///
/// The simplex of the permutation `p` walks the cube diagonal through
/// `{} < {p0} < {p0,p1} < ...` and carries the sign of `p`. The edge between
/// chain steps `i < j` is named by the axis set `{p_i, .., p_(j-1)}`.
pub fn torus_complex(n: usize) -> Result<DeltaComplex, SimplicialError> {
    if !(1..=3).contains(&n) {
        return Err(SimplicialError::TorusDimension(n));
    }
    let specs = permutations(n)
        .into_iter()
        .map(|(p, sign)| {
            let mut names = Vec::new();
            for i in 0..=n {
                for j in i + 1..=n {
                    let mut axes = p[i..j].to_vec();
                    axes.sort_unstable();
                    names.push(axis_set_name(&axes));
                }
            }
            SimplexSpec {
                vertices: vec![0; n + 1],
                edges: Some(names),
                sign,
            }
        })
        .collect();
    DeltaComplex::new(n, 1, specs)
}

/// The field on [`torus_complex`] with holonomies `tuple` around the axes.
pub fn torus_field(
    torus: &DeltaComplex,
    group: &FiniteGroup,
    tuple: &[Elem],
) -> Result<FlatGaugeField, SimplicialError> {
    let n = torus.dimension();
    if tuple.len() != n {
        return Err(SimplicialError::DimensionMismatch(tuple.len(), n));
    }
    if let Some(&g) = tuple.iter().find(|&&g| g >= group.order()) {
        return Err(SimplicialError::LabelOutOfRange(g));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !group.commutes(tuple[i], tuple[j]) {
                return Err(SimplicialError::NotCommuting(tuple.to_vec()));
            }
        }
    }
    let mut map = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        let axes: Vec<usize> = (0..n).filter(|&a| mask & (1 << a) != 0).collect();
        let label = group.product(axes.iter().map(|&a| tuple[a]));
        map.insert(axis_set_name(&axes), label);
    }
    torus.field_from_map(group, &map)
}

/// Boundary of the standard `(n+1)`-simplex, an `n`-sphere.
pub fn sphere_complex(n: usize) -> DeltaComplex {
    let specs = (0..n + 2)
        .map(|skip| {
            let vertices = (0..n + 2).filter(|&v| v != skip).collect();
            SimplexSpec::new(vertices, if skip % 2 == 0 { 1 } else { -1 })
        })
        .collect();
    DeltaComplex::new(n, n + 2, specs).expect("sphere complex")
}

impl fmt::Display for FlatGaugeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.labels)
    }
}
