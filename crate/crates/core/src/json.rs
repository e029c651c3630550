//! JSON formats and built-in fixtures.
//!
//! Every input argument is either a fixture URI or a path to a JSON file.
//!
//! Groups: `{"kind":"table","table":[[..]],"labels":[..]}`,
//! `{"kind":"cyclic","k":3}`, `{"kind":"symmetric","k":3}`,
//! `{"kind":"dihedral","k":4}` or `{"kind":"product","factors":[g, h]}`.
//! URIs: `cyclic:k`, `symmetric:k`, `dihedral:k`, `product:A,B,..`.
//!
//! Cocycles: `{"group":g?,"degree":n,"entries":{"(a,b,c)":"p/q"},"default":"0"}`
//! with arguments given as element indices. URIs: `builtin:cyclic3:k:p`
//! (carries `Z_k`) and `builtin:zero:n` (takes the group from context).
//!
//! Complexes: `{"dimension":n,"vertex_count":v,"simplices":[{"vertices":[..],"sign":1,"edges":[..]?}]}`.
//! URIs: `torus:n`, `sphere:n`.
//!
//! Homomorphisms: `{"source":g,"target":h,"image":[..]}`. URIs: `reduce:m:k`
//! (`Z_m -> Z_k`), `sign:k` (`S_k -> Z_2`), `identity:G`, `trivial:G`.
//!
//! Fields: `{"edges":{"name":element}}`.

use std::collections::BTreeMap;
use std::fs;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cochain::Cochain;
use crate::group::{permutations, Elem, FiniteGroup, GroupError, GroupHom};
use crate::phase::{PhaseError, PhaseQ};
use crate::simplicial::{
    sphere_complex, torus_complex, DeltaComplex, FlatGaugeField, SimplexSpec, SimplicialError,
};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("malformed JSON in {source_name}: {reason}")]
    Json { source_name: String, reason: String },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("bad argument key {0:?}; expected \"(a,b,..)\" with element indices")]
    BadKey(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error(transparent)]
    Cochain(#[from] crate::cochain::CochainError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Table {
        table: Vec<Vec<Elem>>,
        labels: Option<Vec<String>>,
    },
    Cyclic {
        k: usize,
    },
    Symmetric {
        k: usize,
    },
    Dihedral {
        k: usize,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, InputError> {
        Ok(match self {
            GroupSpec::Table { table, labels } => {
                FiniteGroup::from_table(table.clone(), labels.clone())?
            }
            GroupSpec::Cyclic { k } => FiniteGroup::cyclic(*k)?,
            GroupSpec::Symmetric { k } => FiniteGroup::symmetric(*k)?,
            GroupSpec::Dihedral { k } => FiniteGroup::dihedral(*k)?,
            GroupSpec::Product { factors } => {
                let mut it = factors.iter();
                let first = it.next().ok_or_else(|| {
                    InputError::Invalid("product needs at least one factor".into())
                })?;
                it.try_fold(first.build()?, |acc, f| {
                    Ok::<_, InputError>(FiniteGroup::direct_product(&acc, &f.build()?))
                })?
            }
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
struct CocycleDoc {
    group: Option<GroupSpec>,
    degree: usize,
    #[serde(default)]
    entries: BTreeMap<String, String>,
    #[serde(default)]
    default: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
struct HomDoc {
    source: GroupSpec,
    target: GroupSpec,
    image: Vec<Elem>,
}

#[derive(Debug, Clone, Deserialize)]
struct SimplexDoc {
    vertices: Vec<usize>,
    sign: i64,
    edges: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
struct ComplexDoc {
    dimension: usize,
    vertex_count: usize,
    simplices: Vec<SimplexDoc>,
}

#[derive(Debug, Clone, Deserialize)]
struct FieldDoc {
    edges: BTreeMap<String, Elem>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &str) -> Result<T, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.into(),
        reason: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| InputError::Json {
        source_name: path.into(),
        reason: e.to_string(),
    })
}

fn parse_num(s: &str, uri: &str) -> Result<usize, InputError> {
    s.parse()
        .map_err(|_| InputError::UnknownFixture(uri.into()))
}

fn group_fixture(uri: &str) -> Option<Result<GroupSpec, InputError>> {
    let (scheme, rest) = uri.split_once(':')?;
    let spec = match scheme {
        "cyclic" => parse_num(rest, uri).map(|k| GroupSpec::Cyclic { k }),
        "symmetric" => parse_num(rest, uri).map(|k| GroupSpec::Symmetric { k }),
        "dihedral" => parse_num(rest, uri).map(|k| GroupSpec::Dihedral { k }),
        "product" => rest
            .split(',')
            .map(|f| group_fixture(f).unwrap_or_else(|| Err(InputError::UnknownFixture(f.into()))))
            .collect::<Result<Vec<_>, _>>()
            .map(|factors| GroupSpec::Product { factors }),
        _ => return None,
    };
    Some(spec)
}

pub fn load_group_spec(arg: &str) -> Result<GroupSpec, InputError> {
    match group_fixture(arg) {
        Some(spec) => spec,
        None => read_json(arg),
    }
}

pub fn load_group(arg: &str) -> Result<Arc<FiniteGroup>, InputError> {
    Ok(Arc::new(load_group_spec(arg)?.build()?))
}

/// Parses `"(a,b,c)"` into element indices.
pub fn parse_key(key: &str) -> Result<Vec<Elem>, InputError> {
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|k| k.strip_suffix(')'))
        .ok_or_else(|| InputError::BadKey(key.into()))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| InputError::BadKey(key.into())))
        .collect()
}

pub fn format_key(args: &[Elem]) -> String {
    let parts: Vec<String> = args.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Loads a cochain. The group comes from the document or the fixture when it
/// carries one; otherwise from `context`. Both present must agree.
pub fn load_cocycle(arg: &str, context: Option<&Arc<FiniteGroup>>) -> Result<Cochain, InputError> {
    let pick = |own: Option<Arc<FiniteGroup>>| -> Result<Arc<FiniteGroup>, InputError> {
        match (own, context) {
            (Some(g), Some(c)) if *g != **c => Err(InputError::Invalid(format!(
                "cocycle {arg} lives on a different group than the one supplied"
            ))),
            (Some(g), _) => Ok(g),
            (None, Some(c)) => Ok(c.clone()),
            (None, None) => Err(InputError::Invalid(format!("cocycle {arg} needs a group"))),
        }
    };
    if let Some(rest) = arg.strip_prefix("builtin:") {
        let parts: Vec<&str> = rest.split(':').collect();
        return match parts.as_slice() {
            ["cyclic3", k, p] => {
                let theta = Cochain::cyclic_3cocycle(parse_num(k, arg)?, parse_num(p, arg)?)?;
                let group = pick(Some(theta.group().clone()))?;
                Ok(Cochain::from_table(group, 3, theta.table().to_vec())?)
            }
            ["zero", n] => Ok(Cochain::zero(pick(None)?, parse_num(n, arg)?)?),
            _ => Err(InputError::UnknownFixture(arg.into())),
        };
    }
    let doc: CocycleDoc = read_json(arg)?;
    let own = doc
        .group
        .as_ref()
        .map(|g| g.build().map(Arc::new))
        .transpose()?;
    let group = pick(own)?;
    let default: PhaseQ = doc.default.as_deref().unwrap_or("0").parse()?;
    let mut theta = Cochain::from_fn(group, doc.degree, |_| default)?;
    for (key, value) in &doc.entries {
        theta.set(&parse_key(key)?, value.parse()?)?;
    }
    Ok(theta)
}

pub fn load_complex(arg: &str) -> Result<DeltaComplex, InputError> {
    if let Some((scheme, n)) = arg.split_once(':') {
        match scheme {
            "torus" => return Ok(torus_complex(parse_num(n, arg)?)?),
            "sphere" => {
                let n = parse_num(n, arg)?;
                if !(1..=4).contains(&n) {
                    return Err(InputError::Invalid(format!(
                        "sphere dimension {n} outside 1..=4"
                    )));
                }
                return Ok(sphere_complex(n));
            }
            _ => {}
        }
    }
    let doc: ComplexDoc = read_json(arg)?;
    let specs = doc
        .simplices
        .into_iter()
        .map(|s| SimplexSpec {
            vertices: s.vertices,
            edges: s.edges,
            sign: s.sign,
        })
        .collect();
    Ok(DeltaComplex::new(doc.dimension, doc.vertex_count, specs)?)
}

pub fn load_hom(arg: &str) -> Result<GroupHom, InputError> {
    let fixture =
        |g: &str| group_fixture(g).unwrap_or_else(|| Err(InputError::UnknownFixture(arg.into())));
    if let Some((scheme, rest)) = arg.split_once(':') {
        match scheme {
            "reduce" => {
                let (m, k) = rest
                    .split_once(':')
                    .ok_or_else(|| InputError::UnknownFixture(arg.into()))?;
                let (m, k) = (parse_num(m, arg)?, parse_num(k, arg)?);
                if k == 0 || m % k != 0 {
                    return Err(InputError::Invalid(format!(
                        "reduction Z_{m} -> Z_{k} needs k to divide m"
                    )));
                }
                let source = Arc::new(FiniteGroup::cyclic(m)?);
                let target = Arc::new(FiniteGroup::cyclic(k)?);
                return Ok(GroupHom::new(
                    source,
                    target,
                    (0..m).map(|a| a % k).collect(),
                )?);
            }
            "sign" => {
                let k = parse_num(rest, arg)?;
                let source = Arc::new(FiniteGroup::symmetric(k)?);
                let target = Arc::new(FiniteGroup::cyclic(2)?);
                let image = permutations(k)
                    .into_iter()
                    .map(|(_, s)| usize::from(s < 0))
                    .collect();
                return Ok(GroupHom::new(source, target, image)?);
            }
            "identity" => return Ok(GroupHom::identity(Arc::new(fixture(rest)?.build()?))),
            "trivial" => {
                let source = Arc::new(fixture(rest)?.build()?);
                return Ok(GroupHom::trivial(source, Arc::new(FiniteGroup::cyclic(1)?)));
            }
            _ => {}
        }
    }
    let doc: HomDoc = read_json(arg)?;
    Ok(GroupHom::new(
        Arc::new(doc.source.build()?),
        Arc::new(doc.target.build()?),
        doc.image,
    )?)
}

pub fn load_field(
    arg: &str,
    complex: &DeltaComplex,
    group: &FiniteGroup,
) -> Result<FlatGaugeField, InputError> {
    let doc: FieldDoc = read_json(arg)?;
    Ok(complex.field_from_map(group, &doc.edges)?)
}

/// A group as a self-contained table document plus summary data; re-parses as a group.
pub fn group_to_json(group: &FiniteGroup) -> Value {
    json!({
        "kind": "table",
        "order": group.order().to_string(),
        "identity": group.identity(),
        "labels": group.labels(),
        "table": group.table(),
        "abelian": group.is_abelian(),
        "conjugacy_classes": group.conjugacy_classes(),
    })
}

fn group_table_json(group: &FiniteGroup) -> Value {
    json!({ "kind": "table", "labels": group.labels(), "table": group.table() })
}

/// Sparse cocycle document carrying its group.
pub fn cocycle_to_json(theta: &Cochain) -> Value {
    let entries: BTreeMap<String, String> = theta
        .entries()
        .filter(|(_, v)| !v.is_zero())
        .map(|(args, v)| (format_key(&args), v.to_string()))
        .collect();
    json!({
        "group": group_table_json(theta.group()),
        "degree": theta.degree(),
        "entries": entries,
        "default": "0",
    })
}
