//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or exceeds its time bound.
//!
//! Expected values come from brute-force oracles in this file (plain
//! integer residues and floating-point sums of roots of unity) rather than
//! from the library's exact cyclotomic arithmetic.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dwkit::cochain::Cochain;
use dwkit::group::{Elem, FiniteGroup, GroupHom};
use dwkit::invariants::{
    drinfeld_double_simples, torus_holonomy, torus_invariant, twisted_rep_count,
};
use dwkit::json::{load_group, load_hom};
use dwkit::phase::PhaseQ;
use dwkit::simplicial::{sphere_complex, torus_complex, torus_field, DeltaComplex};
use dwkit::transgression::{
    equivariant_sector_counts, homotopy_fiber, kernel_sector, transgress, twisted_irrep_count,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, time bound in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn group(uri: &str) -> Arc<FiniteGroup> {
    load_group(uri).unwrap_or_else(|e| panic!("{uri}: {e}"))
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// All tuples of length `len` over `0..order`, first entry most significant.
fn tuples(order: usize, len: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = order.pow(len as u32);
    (0..total).map(move |mut key| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = key % order;
            key /= order;
        }
        t
    })
}

fn residue(p: PhaseQ, modulus: i64) -> i64 {
    assert_eq!(modulus % p.den(), 0);
    (p.num() * (modulus / p.den())).rem_euclid(modulus)
}

/// Bar coboundary on integer residues modulo `modulus`.
fn oracle_coboundary(c: &Cochain, args: &[Elem], modulus: i64) -> i64 {
    let g = c.group();
    let n = c.degree();
    let mut total = residue(c.get(&args[1..]), modulus);
    for i in 1..=n {
        let mut merged = args[..i - 1].to_vec();
        merged.push(g.mul(args[i - 1], args[i]));
        merged.extend_from_slice(&args[i + 1..]);
        let v = residue(c.get(&merged), modulus);
        total += if i % 2 == 0 { v } else { -v };
    }
    let v = residue(c.get(&args[..n]), modulus);
    total += if (n + 1).is_multiple_of(2) { v } else { -v };
    total.rem_euclid(modulus)
}

fn turns(p: PhaseQ) -> f64 {
    p.num() as f64 / p.den() as f64
}

/// Rounds a floating-point count after checking it is close to an integer.
fn round_count(re: f64, im: f64) -> Result<u64, String> {
    let r = re.round();
    ensure!(
        (re - r).abs() < 1e-6 && im.abs() < 1e-6 && r >= 0.0,
        "oracle sum {re}+{im}i is not a count"
    );
    Ok(r as u64)
}

fn oracle_class_count(g: &FiniteGroup, subgroup: &[Elem]) -> usize {
    let mut seen = vec![false; g.order()];
    let mut classes = 0;
    for &x in subgroup {
        if seen[x] {
            continue;
        }
        classes += 1;
        for &k in subgroup {
            seen[g.mul(g.inv(k), g.mul(x, k))] = true;
        }
    }
    classes
}

fn oracle_centralizer(g: &FiniteGroup, x: Elem) -> Vec<Elem> {
    (0..g.order())
        .filter(|&k| g.mul(x, k) == g.mul(k, x))
        .collect()
}

fn permutation_signs(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    for t in tuples(n, n) {
        let mut sorted = t.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != n {
            continue;
        }
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| t[i] > t[j])
            .count();
        out.push((t, if inversions % 2 == 0 { 1 } else { -1 }));
    }
    out
}

fn commuting(g: &FiniteGroup, t: &[Elem]) -> bool {
    t.iter()
        .all(|&a| t.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// `(1/|G|) sum_(commuting tuples) exp(2 pi i sum_p sgn(p) theta(t_p))` in floating point.
fn oracle_torus_count(theta: &Cochain) -> Result<u64, String> {
    let g = theta.group();
    let n = theta.degree();
    let perms = permutation_signs(n);
    let (mut re, mut im) = (0.0, 0.0);
    for t in tuples(g.order(), n).filter(|t| commuting(g, t)) {
        let phase: f64 = perms
            .iter()
            .map(|(p, s)| {
                *s as f64 * turns(theta.get(&p.iter().map(|&i| t[i]).collect::<Vec<_>>()))
            })
            .sum();
        re += (TAU * phase).cos();
        im += (TAU * phase).sin();
    }
    round_count(re / g.order() as f64, im / g.order() as f64)
}

/// Cyclic 3-cocycle written out directly: `p a floor((b+c)/k) / k`.
fn oracle_cyclic_cocycle(k: usize, p: usize) -> Cochain {
    let z = Arc::new(FiniteGroup::cyclic(k).unwrap());
    Cochain::from_fn(z, 3, |x| {
        PhaseQ::new((p * x[0] * ((x[1] + x[2]) / k)) as i64, k as i64).unwrap()
    })
    .unwrap()
}

/// Twisted count on `preimage(j) // ker` from the degree-3 transgression
/// formula, evaluated in floating point.
fn oracle_kernel_sector_count(hom: &GroupHom, theta: &Cochain, j: Elem) -> Result<u64, String> {
    let h = hom.source();
    let e_j = hom.target().identity();
    let objects: Vec<Elem> = (0..h.order()).filter(|&x| hom.apply(x) == j).collect();
    let kernel: Vec<Elem> = (0..h.order()).filter(|&k| hom.apply(k) == e_j).collect();
    let conj = |x: Elem, k: Elem| h.mul(h.inv(k), h.mul(x, k));
    let tau = |g: Elem, a: Elem, b: Elem| {
        turns(theta.get(&[g, a, b])) - turns(theta.get(&[a, conj(g, a), b]))
            + turns(theta.get(&[a, b, conj(g, h.mul(a, b))]))
    };
    let mut seen = vec![false; h.order()];
    let (mut re, mut im) = (0.0, 0.0);
    for &x in &objects {
        if seen[x] {
            continue;
        }
        for &k in &kernel {
            seen[conj(x, k)] = true;
        }
        let stab: Vec<Elem> = kernel
            .iter()
            .copied()
            .filter(|&k| conj(x, k) == x)
            .collect();
        for &a in &stab {
            for &b in &stab {
                if h.mul(a, b) == h.mul(b, a) {
                    let phase = tau(x, a, b) - tau(x, b, a);
                    re += (TAU * phase).cos() / stab.len() as f64;
                    im += (TAU * phase).sin() / stab.len() as f64;
                }
            }
        }
    }
    round_count(re, im)
}

fn random_cocycle(group: &Arc<FiniteGroup>, degree: usize, seed: u64) -> Cochain {
    Cochain::random(group.clone(), degree - 1, seed, 12)
        .unwrap()
        .coboundary()
        .unwrap()
}

fn klein_cocycle() -> Cochain {
    let v = group("product:cyclic:2,cyclic:2");
    Cochain::from_fn(v, 2, |x| {
        PhaseQ::new(((x[0] / 2) * (x[1] % 2)) as i64, 2).unwrap()
    })
    .unwrap()
}

fn criterion_1() -> Outcome {
    let groups = [
        "cyclic:2",
        "cyclic:4",
        "product:cyclic:2,cyclic:2",
        "symmetric:3",
        "dihedral:4",
    ]
    .map(group);
    let mut checked = 0u64;
    for i in 0..50u64 {
        let g = &groups[i as usize % groups.len()];
        let degree = 1 + (i as usize / groups.len()) % 3;
        let c = Cochain::random(g.clone(), degree, 100 + i, 12).map_err(|e| e.to_string())?;
        ensure!(
            c.is_normalized(),
            "seed {i}: random cochain is not normalized"
        );
        let modulus = c.denominator_lcm() as i64;
        let dc = c.coboundary().map_err(|e| e.to_string())?;
        for args in tuples(g.order(), degree + 1) {
            ensure!(
                residue(dc.get(&args), modulus) == oracle_coboundary(&c, &args, modulus),
                "seed {i}: coboundary differs from the oracle at {args:?}"
            );
        }
        for args in tuples(g.order(), degree + 2) {
            ensure!(
                oracle_coboundary(&dc, &args, modulus) == 0,
                "seed {i}: dd != 0 at {args:?}"
            );
            checked += 1;
        }
        ensure!(dc.is_cocycle(), "seed {i}: library reports dd != 0");
    }
    Ok(format!("50 cochains, {checked} entries of dd checked"))
}

fn builtin_groups_up_to_24() -> Vec<String> {
    let mut uris: Vec<String> = (1..=24).map(|k| format!("cyclic:{k}")).collect();
    uris.extend((1..=4).map(|k| format!("symmetric:{k}")));
    uris.extend((1..=12).map(|k| format!("dihedral:{k}")));
    for p in [
        "cyclic:2,cyclic:2",
        "cyclic:2,cyclic:4",
        "cyclic:2,cyclic:6",
        "cyclic:3,cyclic:3",
        "cyclic:2,cyclic:2,cyclic:2",
        "cyclic:2,cyclic:2,cyclic:2,cyclic:2",
        "cyclic:2,symmetric:3",
        "cyclic:3,symmetric:3",
        "cyclic:4,symmetric:3",
        "cyclic:2,dihedral:4",
        "cyclic:2,dihedral:6",
        "cyclic:2,cyclic:2,symmetric:3",
        "cyclic:3,dihedral:4",
    ] {
        uris.push(format!("product:{p}"));
    }
    uris
}

fn criterion_2() -> Outcome {
    let uris = builtin_groups_up_to_24();
    for uri in &uris {
        let g = group(uri);
        let all: Vec<Elem> = (0..g.order()).collect();
        let classes = oracle_class_count(&g, &all) as u64;
        let n2 =
            torus_invariant(&Cochain::zero(g.clone(), 2).unwrap()).map_err(|e| e.to_string())?;
        ensure!(
            n2 == classes,
            "{uri}: n=2 gives {n2}, Burnside gives {classes}"
        );
        // pairs (class, class of its centralizer)
        let mut seen = vec![false; g.order()];
        let mut pairs = 0u64;
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            for k in 0..g.order() {
                seen[g.mul(g.inv(k), g.mul(x, k))] = true;
            }
            pairs += oracle_class_count(&g, &oracle_centralizer(&g, x)) as u64;
        }
        let n3 =
            torus_invariant(&Cochain::zero(g.clone(), 3).unwrap()).map_err(|e| e.to_string())?;
        ensure!(n3 == pairs, "{uri}: n=3 gives {n3}, oracle gives {pairs}");
        if uri == "symmetric:3" {
            ensure!(n2 == 3 && n3 == 8, "S3 gives ({n2}, {n3}), expected (3, 8)");
        }
    }
    Ok(format!("{} groups of order <= 24", uris.len()))
}

fn criterion_3() -> Outcome {
    let mut cases = 0;
    for k in [2, 3, 4, 6] {
        for p in 0..k {
            let theta = Cochain::cyclic_3cocycle(k, p).map_err(|e| e.to_string())?;
            ensure!(
                theta == oracle_cyclic_cocycle(k, p),
                "Z{k}, p={p}: cocycle table differs from the oracle"
            );
            let closed = torus_invariant(&theta).map_err(|e| e.to_string())?;
            let state_sum = torus_complex(3)
                .unwrap()
                .state_sum(&theta)
                .map_err(|e| e.to_string())?
                .value;
            let groupoid = twisted_irrep_count(&transgress(&theta).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let oracle = oracle_torus_count(&theta)?;
            ensure!(
                int(closed) == state_sum && closed == groupoid && closed == oracle,
                "Z{k}, p={p}: closed {closed}, state sum {state_sum}, transgression {groupoid}, oracle {oracle}"
            );
            if k == 2 && p == 1 {
                ensure!(closed == 4, "Z2, p=1 gives {closed}, expected 4");
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (group, p) cases on three channels"))
}

struct Fixture {
    name: &'static str,
    theta: Cochain,
    hom: Option<GroupHom>,
}

fn fixtures() -> Vec<Fixture> {
    let s3 = group("symmetric:3");
    let d4 = group("dihedral:4");
    vec![
        Fixture {
            name: "Z2 cyclic p=1",
            theta: Cochain::cyclic_3cocycle(2, 1).unwrap(),
            hom: None,
        },
        Fixture {
            name: "Z3 cyclic p=1",
            theta: Cochain::cyclic_3cocycle(3, 1).unwrap(),
            hom: None,
        },
        Fixture {
            name: "Z4 cyclic p=3",
            theta: Cochain::cyclic_3cocycle(4, 3).unwrap(),
            hom: Some(load_hom("reduce:4:2").unwrap()),
        },
        Fixture {
            name: "S3 zero",
            theta: Cochain::zero(s3.clone(), 3).unwrap(),
            hom: Some(load_hom("sign:3").unwrap()),
        },
        Fixture {
            name: "D4 zero",
            theta: Cochain::zero(d4, 3).unwrap(),
            hom: None,
        },
        Fixture {
            name: "Klein alternating",
            theta: klein_cocycle(),
            hom: None,
        },
        Fixture {
            name: "S3 zero (n=2)",
            theta: Cochain::zero(s3, 2).unwrap(),
            hom: None,
        },
    ]
}

fn torus_holonomies(theta: &Cochain) -> Result<Vec<PhaseQ>, String> {
    let g = theta.group();
    let n = theta.degree();
    let torus = torus_complex(n).unwrap();
    let mut out = Vec::new();
    for t in g.commuting_tuples(n) {
        let closed = torus_holonomy(&t, theta).map_err(|e| e.to_string())?;
        let field = torus_field(&torus, g, &t).map_err(|e| e.to_string())?;
        let simplicial = torus.holonomy(&field, theta).map_err(|e| e.to_string())?;
        ensure!(
            closed == simplicial,
            "closed-form and simplicial holonomy differ at {t:?}"
        );
        out.push(closed);
    }
    Ok(out)
}

fn counts(f: &Fixture, theta: &Cochain) -> Result<Vec<String>, String> {
    let n = theta.degree();
    let mut out = vec![torus_invariant(theta)
        .map_err(|e| e.to_string())?
        .to_string()];
    out.push(
        torus_complex(n)
            .unwrap()
            .state_sum(theta)
            .map_err(|e| e.to_string())?
            .value
            .to_string(),
    );
    if n == 2 {
        out.push(
            twisted_rep_count(theta)
                .map_err(|e| e.to_string())?
                .to_string(),
        );
    } else {
        out.push(
            twisted_irrep_count(&transgress(theta).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?
                .to_string(),
        );
        if let Some(hom) = &f.hom {
            let sectors = equivariant_sector_counts(hom, theta).map_err(|e| e.to_string())?;
            out.extend(sectors.sectors.iter().map(|s| s.1.to_string()));
        }
    }
    Ok(out)
}

fn criterion_4() -> Outcome {
    let fixtures = fixtures();
    let mut nontrivial = 0;
    for i in 0..25u64 {
        let f = &fixtures[i as usize % fixtures.len()];
        let n = f.theta.degree();
        let beta = Cochain::random(f.theta.group().clone(), n - 1, 500 + i, 12)
            .map_err(|e| e.to_string())?;
        let shifted = f
            .theta
            .add(&beta.coboundary().unwrap())
            .map_err(|e| e.to_string())?;
        ensure!(
            shifted.is_cocycle(),
            "{}: theta + d beta is not a cocycle",
            f.name
        );
        if shifted != f.theta {
            nontrivial += 1;
        }
        ensure!(
            torus_holonomies(&f.theta)? == torus_holonomies(&shifted)?,
            "{} seed {i}: holonomy changed",
            f.name
        );
        let (before, after) = (counts(f, &f.theta)?, counts(f, &shifted)?);
        ensure!(
            before == after,
            "{} seed {i}: counts {before:?} became {after:?}",
            f.name
        );
    }
    Ok(format!(
        "25 random coboundary shifts over 7 fixtures, {nontrivial} changed the cocycle"
    ))
}

fn criterion_5() -> Outcome {
    let s3 = group("symmetric:3");
    let d4 = group("dihedral:4");
    let cases: Vec<Cochain> = vec![
        random_cocycle(&s3, 2, 1),
        random_cocycle(&d4, 2, 2),
        klein_cocycle(),
        random_cocycle(&s3, 3, 3),
        random_cocycle(&d4, 3, 4),
        Cochain::cyclic_3cocycle(4, 1).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut moved = 0;
    for n in [2, 3] {
        let torus = torus_complex(n).unwrap();
        let pool: Vec<&Cochain> = cases.iter().filter(|c| c.degree() == n).collect();
        for _ in 0..100 {
            let theta = *pool.choose(&mut rng).unwrap();
            let g = theta.group();
            let tuples: Vec<Vec<Elem>> = g.commuting_tuples(n).collect();
            let t = tuples.choose(&mut rng).unwrap();
            let field = torus_field(&torus, g, t).unwrap();
            let gauge = [rng.gen_range(0..g.order())];
            let moved_field = torus
                .gauge_transform(g, &field, &gauge)
                .map_err(|e| e.to_string())?;
            torus
                .check_flat(g, moved_field.labels())
                .map_err(|e| e.to_string())?;
            if moved_field != field {
                moved += 1;
            }
            let (a, b) = (
                torus.holonomy(&field, theta).unwrap(),
                torus.holonomy(&moved_field, theta).unwrap(),
            );
            ensure!(
                a == b,
                "T{n}: holonomy {a} became {b} under gauge {gauge:?} at {t:?}"
            );
        }
    }
    Ok(format!(
        "200 gauge transformations, {moved} changed the field"
    ))
}

fn criterion_6() -> Outcome {
    let uris = [
        "cyclic:1",
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "cyclic:5",
        "cyclic:6",
        "dihedral:1",
        "dihedral:2",
        "dihedral:3",
        "symmetric:3",
        "product:cyclic:2,cyclic:2",
        "product:cyclic:2,cyclic:3",
    ];
    let mut fields_checked = 0u64;
    for uri in uris {
        let g = group(uri);
        // S^1 has no 2-faces, so flatness does not constrain it
        for n in 2..=4 {
            let sphere = sphere_complex(n);
            let mut cocycles: Vec<Cochain> = vec![Cochain::zero(g.clone(), n).unwrap()];
            cocycles.extend((0..3).map(|s| random_cocycle(&g, n, 40 + s)));
            if uri.starts_with("cyclic:") {
                let k = g.order();
                for p in 0..k {
                    if n == 3 {
                        cocycles.push(Cochain::cyclic_3cocycle(k, p).unwrap());
                    }
                }
            }
            if uri == "product:cyclic:2,cyclic:2" && n == 2 {
                cocycles.push(klein_cocycle());
            }
            for theta in &cocycles {
                ensure!(theta.is_cocycle(), "{uri}: S^{n} fixture is not a cocycle");
            }
            // a non-cocycle picks up exactly its coboundary
            let raw = Cochain::random(g.clone(), n, 77, 6).unwrap();
            let modulus = raw.denominator_lcm() as i64;
            for field in sphere.flat_fields(&g) {
                let map: BTreeMap<String, Elem> = field.to_map(&sphere);
                let path: Vec<Elem> = (0..=n)
                    .map(|v| map[&format!("({},{})", v, v + 1)])
                    .collect();
                for theta in &cocycles {
                    let h = sphere.holonomy(&field, theta).map_err(|e| e.to_string())?;
                    ensure!(h.is_zero(), "{uri}: S^{n} holonomy {h} along {path:?}");
                }
                let h = sphere.holonomy(&field, &raw).unwrap();
                ensure!(
                    residue(h, modulus) == oracle_coboundary(&raw, &path, modulus),
                    "{uri}: S^{n} holonomy is not d theta"
                );
                fields_checked += 1;
            }
        }
    }
    Ok(format!("{fields_checked} flat fields on S^2, S^3, S^4"))
}

fn criterion_7() -> Outcome {
    let reduce = load_hom("reduce:4:2").unwrap();
    let sign = load_hom("sign:3").unwrap();
    let z2_cocycle = Cochain::cyclic_3cocycle(2, 1).unwrap();
    let mut cases: Vec<(&str, GroupHom, Cochain)> = (0..4)
        .map(|p| {
            (
                "Z4 -> Z2",
                reduce.clone(),
                Cochain::cyclic_3cocycle(4, p).unwrap(),
            )
        })
        .collect();
    cases.push((
        "Z4 -> Z2",
        reduce.clone(),
        z2_cocycle.pullback(&reduce).unwrap(),
    ));
    cases.push((
        "S3 -> Z2",
        sign.clone(),
        Cochain::zero(sign.source().clone(), 3).unwrap(),
    ));
    cases.push((
        "S3 -> Z2",
        sign.clone(),
        z2_cocycle.pullback(&sign).unwrap(),
    ));
    for (name, hom, theta) in &cases {
        ensure!(theta.is_cocycle(), "{name}: fixture is not a cocycle");
        let tau = transgress(theta).map_err(|e| e.to_string())?;
        for j in hom.target().elements() {
            let fiber = homotopy_fiber(hom, j).map_err(|e| e.to_string())?;
            let kernel = kernel_sector(hom, j).map_err(|e| e.to_string())?;
            ensure!(
                fiber.groupoid.component_signature() == kernel.groupoid.component_signature(),
                "{name}, j={j}: fiber and kernel sector are not equivalent"
            );
            let via_fiber = twisted_irrep_count(&tau.pullback(&fiber.projection).unwrap())
                .map_err(|e| e.to_string())?;
            let via_kernel = twisted_irrep_count(&tau.pullback(&kernel.projection).unwrap())
                .map_err(|e| e.to_string())?;
            let oracle = oracle_kernel_sector_count(hom, theta, j)?;
            ensure!(
                via_fiber == via_kernel && via_kernel == oracle,
                "{name}, j={j}: fiber {via_fiber}, kernel {via_kernel}, oracle {oracle}"
            );
        }
        equivariant_sector_counts(hom, theta).map_err(|e| e.to_string())?;
    }
    let mut trivial_cases = 0;
    for theta in [
        Cochain::zero(group("symmetric:3"), 3).unwrap(),
        Cochain::cyclic_3cocycle(2, 1).unwrap(),
        Cochain::cyclic_3cocycle(4, 3).unwrap(),
        z2_cocycle.pullback(&sign).unwrap(),
    ] {
        let to_point = GroupHom::trivial(
            theta.group().clone(),
            Arc::new(FiniteGroup::cyclic(1).unwrap()),
        );
        let sectors = equivariant_sector_counts(&to_point, &theta).map_err(|e| e.to_string())?;
        let simples = drinfeld_double_simples(&theta).map_err(|e| e.to_string())?;
        ensure!(
            sectors.sectors.len() == 1 && int(sectors.total) == simples.value,
            "J trivial: {} vs {}",
            sectors.total,
            simples.value
        );
        trivial_cases += 1;
    }
    Ok(format!(
        "{} surjections checked per sector, {trivial_cases} trivial-target cases",
        cases.len()
    ))
}

fn criterion_8() -> Outcome {
    let s3 = group("symmetric:3");
    let cases: Vec<(Cochain, DeltaComplex, DeltaComplex)> = vec![
        (
            Cochain::zero(s3.clone(), 2).unwrap(),
            torus_complex(2).unwrap(),
            torus_complex(2).unwrap(),
        ),
        (
            Cochain::cyclic_3cocycle(2, 1).unwrap(),
            torus_complex(3).unwrap(),
            torus_complex(3).unwrap(),
        ),
        (
            random_cocycle(&s3, 2, 9),
            torus_complex(2).unwrap(),
            sphere_complex(2),
        ),
        (
            Cochain::cyclic_3cocycle(3, 2).unwrap(),
            torus_complex(3).unwrap(),
            sphere_complex(3),
        ),
    ];
    let mut s3_value = None;
    for (i, (theta, a, b)) in cases.iter().enumerate() {
        let union = a.disjoint_union(b).map_err(|e| e.to_string())?;
        union.validate().map_err(|e| e.to_string())?;
        let za = a.state_sum(theta).unwrap().value;
        let zb = b.state_sum(theta).unwrap().value;
        let zu = union.state_sum(theta).map_err(|e| e.to_string())?.value;
        ensure!(zu == &za * &zb, "case {i}: {zu} != {za} * {zb}");
        if i == 0 {
            s3_value = Some(zu);
        }
    }
    let s3_value = s3_value.unwrap();
    ensure!(
        s3_value == int(9),
        "S3 T2 + T2 gives {s3_value}, expected 9"
    );
    Ok(format!("{} unions, S3 T2 + T2 = {s3_value}", cases.len()))
}

fn criterion_9() -> Outcome {
    let dir = env!("CARGO_TARGET_TMPDIR");
    let open = format!("{dir}/open_triangle.json");
    std::fs::write(
        &open,
        r#"{"dimension":2,"vertex_count":3,"simplices":[{"vertices":[0,1,2],"sign":1}]}"#,
    )
    .unwrap();
    let commands: Vec<(String, i32)> = [
        ("simples --group cyclic:2 --cocycle builtin:cyclic3:2:1 --check-all", 0),
        ("cocycle verify --group symmetric:3 --cocycle builtin:zero:3", 0),
        ("torus --group symmetric:3 --cocycle builtin:zero:2 --n 2 --check-all", 0),
        ("torus --cocycle builtin:cyclic3:6:5 --n 3 --check-all --numeric", 0),
        ("statesum --group symmetric:3 --cocycle builtin:zero:2 --complex torus:2 --complex torus:2 --numeric", 0),
        ("statesum --cocycle builtin:cyclic3:4:1 --complex torus:3", 0),
        ("equivariant --hom reduce:4:2 --cocycle builtin:cyclic3:4:3", 0),
        ("equivariant --hom sign:3 --cocycle builtin:zero:3", 0),
        ("transgress --cocycle builtin:cyclic3:4:1", 0),
        ("holonomy --cocycle builtin:cyclic3:3:1 --complex torus:3 --tuple 1,2,1", 0),
        ("group show --group dihedral:4", 0),
        ("cocycle random --group symmetric:3 --degree 3 --seed 7", 0),
        ("simples --group dihedral:4 --cocycle builtin:zero:3 --check-all", 0),
        (&*format!("statesum --group cyclic:2 --cocycle builtin:zero:2 --complex {open}"), 1),
    ]
    .iter()
    .map(|(c, code)| (c.to_string(), *code))
    .collect();
    for (cmd, expected_code) in &commands {
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            for _ in 0..3 {
                let out = Command::new(env!("CARGO_BIN_EXE_dwkit"))
                    .args(["--threads", threads])
                    .args(cmd.split_whitespace())
                    .output()
                    .map_err(|e| e.to_string())?;
                ensure!(
                    out.status.code() == Some(*expected_code),
                    "`{cmd}` exited with {:?}",
                    out.status.code()
                );
                outputs.push(out.stdout);
            }
        }
        ensure!(
            outputs.windows(2).all(|w| w[0] == w[1]),
            "`{cmd}` output differs between runs"
        );
        let doc: serde_json::Value =
            serde_json::from_slice(&outputs[0]).map_err(|e| format!("`{cmd}`: {e}"))?;
        if *expected_code == 1 {
            ensure!(
                doc["error"]["kind"] == "NotAFundamentalCycle",
                "`{cmd}`: unexpected error {doc}"
            );
        }
        if cmd.starts_with("simples --group cyclic:2") {
            ensure!(doc["value"] == "4", "`{cmd}`: value {}", doc["value"]);
        }
    }
    Ok(format!(
        "{} commands x 3 runs x threads {{1, 4}}",
        commands.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("simplicial identity dd = 0", 10, criterion_1),
        ("Burnside anchor", 30, criterion_2),
        ("triple-channel oracle", 60, criterion_3),
        ("cohomology-class invariance", 60, criterion_4),
        ("gauge invariance", 10, criterion_5),
        ("sphere triviality", 30, criterion_6),
        ("sector path independence", 60, criterion_7),
        ("monoidality", 30, criterion_8),
        ("CLI determinism", 120, criterion_9),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("took {elapsed:.2?}, bound {limit} s"))
            }
            other => other,
        };
        match outcome {
            Ok(summary) => println!(
                "PASS  criterion {}  {name}: {summary} ({elapsed:.2?})",
                i + 1
            ),
            Err(reason) => {
                failures += 1;
                println!(
                    "FAIL  criterion {}  {name}: {reason} ({elapsed:.2?})",
                    i + 1
                );
            }
        }
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
