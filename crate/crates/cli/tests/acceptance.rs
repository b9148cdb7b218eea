//! The acceptance suite. Every criterion prints one PASS/FAIL line with its
//! runtime against the limit; the test fails if any criterion does.
//!
//! Run with `cargo test -p mcfix-cli --test acceptance`.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mcfix_cli::commands::{check_reports, invariant_rows, pi_report, ReportFormat, RetractionArgs};
use mcfix_cli::examples;
use mcfix_cli::presets::preset;
use mcfix_core::cdga::{ce_cochains, check_cdga, sphere_cohomology, tensor_model, CDGAModel};
use mcfix_core::liealg::{
    as_shifted, check_equivariance, desuspend, check_jacobi, check_symmetry, free_lie, Convention, GSLInfinityAlgebra, SLInfinityAlgebra,
};
use mcfix_core::mc::{bch, homotopy_fixed_pi};
use mcfix_core::qlinalg::{
    induced_on_homology, invariant_homology_check, q, FiniteGroup, GradedModule, GroupRepresentation, Matrix, Scalar,
    SparseVec,
};
use mcfix_core::simpl::sign_character;
use mcfix_core::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn err(e: Error) -> String {
    e.to_string()
}

fn pi_dims(spec: &str, max_degree: i32) -> Result<Vec<(i32, usize)>, String> {
    let p = preset(spec).and_then(|d| d.build()).map_err(err)?;
    Ok(pi_report(&p, max_degree).map_err(err)?.groups.iter().map(|g| (g.degree, g.dim)).collect())
}

fn wedge_table() -> Outcome {
    let out = examples::run("wedge-s2", false).map_err(err)?;
    ensure!(out.code == 0, "fixture mismatch\n{}", out.output);
    let p = preset("wedge-s2").and_then(|d| d.build()).map_err(err)?;
    let rows = invariant_rows(&p, 3).map_err(err)?;
    let ambient: Vec<usize> = rows.iter().map(|r| r.ambient_dim).collect();
    let inv: Vec<usize> = rows.iter().map(|r| r.invariant_dim).collect();
    ensure!(ambient == [2, 3, 2], "ambient dims {ambient:?}");
    ensure!(inv == [1, 2, 1], "invariant dims {inv:?}");
    let basis: Vec<&str> = rows.iter().flat_map(|r| r.basis.iter().map(String::as_str)).collect();
    let expected = ["u1 + u2", "[u1,u2]", "[u1,u1] + [u2,u2]", "[u1,[u1,u2]] + [u2,[u1,u2]]"];
    ensure!(basis == expected, "basis {basis:?}");
    Ok("ambient (2,3,2), invariant (1,2,1), basis as listed".into())
}

fn map_table() -> Outcome {
    let out = examples::run("map-s2-s3wedge", false).map_err(err)?;
    ensure!(out.code == 0, "fixture mismatch\n{}", out.output);
    let p = preset("map-s2-s3wedge").and_then(|d| d.build()).map_err(err)?;
    let inv: Vec<usize> = invariant_rows(&p, 7).map_err(err)?.iter().map(|r| r.invariant_dim).collect();
    ensure!(inv == [1, 0, 2, 0, 1, 0, 3], "invariant dims {inv:?}");
    Ok(format!("invariant dims {inv:?}"))
}

fn cp_n_sweep() -> Outcome {
    let mut cases = 0;
    for n in 1..=3i64 {
        for a in [-2i64, -1, 1, 2] {
            let good = a.pow(n as u32 + 1);
            for b in [good, -good, 2 * good, 3 * good] {
                let spec = format!("cp-n:n={n},a={a},b={b}");
                let p = preset(&spec).and_then(|d| d.build()).map_err(err)?;
                let eq = check_reports(&p).iter().find(|r| r.check.starts_with("equivariance")).map(|r| r.passed());
                ensure!(eq == Some(b == good), "{spec}: equivariance {eq:?}");
                cases += 1;
                if b != good {
                    continue;
                }
                let pi = homotopy_fixed_pi(&p.algebra, 2 * n as i32 + 2).map_err(err)?;
                let got: Vec<(i32, usize)> = pi.groups.iter().map(|g| (g.degree, g.dim)).collect();
                let expected = match a {
                    1 => vec![(2, 1), (2 * n as i32 + 1, 1)],
                    -1 if n % 2 == 1 => vec![(2 * n as i32 + 1, 1)],
                    _ => vec![],
                };
                ensure!(got == expected, "{spec}: π {got:?}, expected {expected:?}");
            }
        }
    }
    Ok(format!("{cases} (n, a, b) cases"))
}

fn spheres() -> Outcome {
    for n in 1..=6i32 {
        let got = pi_dims(&format!("sphere-antipodal:n={n}"), 2 * n)?;
        let expected = if n % 2 == 1 { vec![(n, 1)] } else { vec![(2 * n - 1, 1)] };
        ensure!(got == expected, "n = {n}: {got:?}");
    }
    Ok("n = 1..6".into())
}

/// Permutation matrices of `group` acting on the left cosets of the subgroup
/// generated by `h`.
fn coset_action(group: &FiniteGroup, h: usize) -> Vec<Matrix> {
    let mut sub = vec![group.identity()];
    let mut x = h;
    while x != group.identity() {
        sub.push(x);
        x = group.mul(x, h);
    }
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for g in group.elements() {
        let mut c: Vec<usize> = sub.iter().map(|&s| group.mul(g, s)).collect();
        c.sort_unstable();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let k = cosets.len();
    group
        .elements()
        .map(|g| {
            let mut m = Matrix::zeros(k, k);
            for (j, c) in cosets.iter().enumerate() {
                let mut img: Vec<usize> = c.iter().map(|&x| group.mul(g, x)).collect();
                img.sort_unstable();
                let i = cosets.iter().position(|d| *d == img).unwrap();
                m.set(i, j, q(1));
            }
            m
        })
        .collect()
}

/// Small representations to draw summands from: coset actions of cyclic
/// subgroups with at most 5 cosets, and the sign character when there is one.
fn building_blocks(group: &FiniteGroup) -> Vec<Vec<Matrix>> {
    let mut blocks: Vec<Vec<Matrix>> = Vec::new();
    for h in group.elements() {
        let b = coset_action(group, h);
        if b[0].rows() <= 5 && !blocks.contains(&b) {
            blocks.push(b);
        }
    }
    if let Ok(chi) = sign_character(group) {
        if chi.iter().any(|&s| s != 1) {
            blocks.push(chi.iter().map(|&s| Matrix::identity(1).scale(&q(s as i64))).collect());
        }
    }
    blocks
}

fn small(rng: &mut ChaCha8Rng) -> Scalar {
    q(rng.gen_range(-2i64..=2))
}

/// A random `ℚ[G]`-module with a random equivariant differential of degree
/// −1, in degrees `1..=6` with at most 5 dimensions per degree.
fn random_equivariant_complex(group: &FiniteGroup, rng: &mut ChaCha8Rng) -> Result<GSLInfinityAlgebra, String> {
    let blocks = building_blocks(group);
    let order = group.order();
    let mut reps: Vec<Vec<Matrix>> = Vec::new();
    for _ in 1..=6 {
        let mut dim = 0;
        let mut mats: Vec<Matrix> = vec![Matrix::zeros(0, 0); order];
        for _ in 0..rng.gen_range(0..=3) {
            let b = &blocks[rng.gen_range(0..blocks.len())];
            if dim + b[0].rows() > 5 {
                continue;
            }
            let k = b[0].rows();
            for g in 0..order {
                let mut m = Matrix::zeros(dim + k, dim + k);
                for i in 0..dim {
                    for j in 0..dim {
                        m.set(i, j, mats[g].get(i, j).clone());
                    }
                }
                for i in 0..k {
                    for j in 0..k {
                        m.set(dim + i, dim + j, b[g].get(i, j).clone());
                    }
                }
                mats[g] = m;
            }
            dim += k;
        }
        // Hide the block structure behind a random unipotent change of basis.
        let mut p = Matrix::identity(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                p.set(i, j, small(rng));
            }
        }
        let pinv = p.inverse().expect("unipotent");
        reps.push(mats.iter().map(|m| p.mul(m).mul(&pinv)).collect());
    }
    let dims: Vec<usize> = reps.iter().map(|r| r[0].rows()).collect();
    // Blocks d_n : V_n → V_{n-1} with image in ker d_{n-1}, then averaged.
    let mut d: Vec<Matrix> = vec![Matrix::zeros(0, dims[0])];
    for n in 1..6 {
        let (src, tgt) = (dims[n], dims[n - 1]);
        let kernel = if n == 1 { Matrix::identity(tgt).columns() } else { d[n - 1].kernel() };
        let mut f = Matrix::zeros(tgt, src);
        for j in 0..src {
            if rng.gen_bool(0.3) {
                continue;
            }
            let mut col = SparseVec::new();
            for k in &kernel {
                col.add_scaled(k, &small(rng));
            }
            for (i, c) in col.iter() {
                f.set(i, j, c.clone());
            }
        }
        let mut avg = Matrix::zeros(tgt, src);
        for g in group.elements() {
            avg = avg.add(&reps[n - 1][g].mul(&f).mul(&reps[n][group.inverse(g)]));
        }
        d.push(avg.scale(&q(order as i64).recip()));
    }
    let offsets: Vec<usize> = dims.iter().scan(0, |acc, &k| { let o = *acc; *acc += k; Some(o) }).collect();
    let total: usize = dims.iter().sum();
    let mut labels = Vec::new();
    for (n, &k) in dims.iter().enumerate() {
        for i in 0..k {
            labels.push((format!("v{}_{i}", n + 1), n as i32 + 1));
        }
    }
    let carrier = GradedModule::new(labels).map_err(err)?;
    let mut entries = Vec::new();
    for n in 1..6 {
        for j in 0..dims[n] {
            let col: SparseVec = d[n].column(j).iter().map(|(i, c)| (offsets[n - 1] + i, c.clone())).collect();
            if !col.is_zero() {
                entries.push((vec![offsets[n] + j], col));
            }
        }
    }
    let l = SLInfinityAlgebra::new(carrier.clone(), vec![1; total], Convention::Shifted, entries, 1).map_err(err)?;
    let mats = (0..order)
        .map(|g| {
            let mut m = Matrix::zeros(total, total);
            for n in 0..6 {
                for i in 0..dims[n] {
                    for j in 0..dims[n] {
                        m.set(offsets[n] + i, offsets[n] + j, reps[n][g].get(i, j).clone());
                    }
                }
            }
            m
        })
        .collect();
    let rep = GroupRepresentation::new(group.clone(), carrier, mats).map_err(err)?;
    GSLInfinityAlgebra::new(l, rep).map_err(err)
}

/// `dim H_n(L^G)` against `dim (H_n L)^G`, the latter both as a kernel and
/// through the character `(1/|G|) Σ tr(g | H_n)`.
fn invariant_homology() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let groups = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3), FiniteGroup::cyclic(6)];
    let (mut samples, mut nonzero) = (0, 0);
    for round in 0..60 {
        let group = &groups[round % groups.len()];
        let gl = random_equivariant_complex(group, &mut rng)?;
        ensure!(check_equivariance(&gl).passed(), "sample {round}: not equivariant");
        let cx = gl.algebra.chain_complex().map_err(err)?;
        let report = invariant_homology_check(&cx, &gl.action, 1..=6).map_err(err)?;
        for row in &report.rows {
            let mut trace = Scalar::from_integer(0.into());
            for g in group.elements() {
                let m = induced_on_homology(&cx, &gl.action, g, row.degree).map_err(err)?;
                for i in 0..m.rows() {
                    trace += m.get(i, i);
                }
            }
            let by_character = trace / q(group.order() as i64);
            ensure!(
                row.homology_of_invariants == row.invariants_of_homology
                    && by_character == q(row.homology_of_invariants as i64),
                "sample {round}, degree {}: H(L^G) = {}, (HL)^G = {}, character gives {by_character}",
                row.degree,
                row.homology_of_invariants,
                row.invariants_of_homology
            );
            nonzero += usize::from(row.homology_of_invariants > 0);
        }
        samples += 1;
    }
    Ok(format!("{samples} algebras, {nonzero} nonzero invariant homology groups"))
}

fn retraction() -> Outcome {
    let runs = [("Z2", "1,1:swap"), ("Z2", "2"), ("Z3", "1,2"), ("S3", "1,1:sign")];
    for (group, target) in runs {
        let args = RetractionArgs { group: group.into(), target: target.into(), dim_cap: 3, ..Default::default() };
        let out = mcfix_cli::commands::verify(&args, ReportFormat::Text).map_err(err)?;
        ensure!(out.code == 0, "{group} {target}:\n{}", out.output);
    }
    let args = RetractionArgs { target: "1,1:swap".into(), inject_fault: true, ..Default::default() };
    let out = mcfix_cli::commands::verify(&args, ReportFormat::Json).map_err(err)?;
    ensure!(out.code != 0, "injected fault went unnoticed");
    let v: serde_json::Value = serde_json::from_str(&out.output).map_err(|e| e.to_string())?;
    let failed = v["report"]["checks"].as_array().and_then(|c| c.iter().find(|c| c["status"] == "fail")).cloned();
    let witnesses = failed.as_ref().and_then(|f| f["witnesses"].as_array()).map_or(0, Vec::len);
    ensure!(witnesses > 0, "the failing check has no witness");
    Ok(format!("{} targets pass at m = 3; fault caught by {:?}", runs.len(), failed.unwrap()["check"].as_str().unwrap()))
}

fn free_lie_family() -> Vec<(Vec<i32>, Convention)> {
    let degrees: [&[i32]; 7] = [&[1], &[2], &[1, 1], &[1, 2], &[2, 2], &[1, 1, 1], &[1, 2, 2]];
    degrees
        .iter()
        .flat_map(|d| [(d.to_vec(), Convention::Shifted), (d.iter().map(|x| x + 1).collect(), Convention::DgLie)])
        .collect()
}

fn build(degrees: &[i32], conv: Convention, weight: u32) -> Result<SLInfinityAlgebra, String> {
    let gens: Vec<(String, i32)> = degrees.iter().enumerate().map(|(i, &d)| (format!("g{i}"), d)).collect();
    free_lie(&gens, weight, conv).map_err(err)
}

/// Adds a random multiple of a basis element of matching degree and weight
/// to one binary bracket whose value has weight at least 3.
fn inject_fault(l: &SLInfinityAlgebra, rng: &mut ChaCha8Rng) -> Option<(SLInfinityAlgebra, String)> {
    let keys: Vec<Vec<usize>> = l
        .entries()
        .filter(|(k, v)| k.len() == 2 && v.support().next().is_some_and(|i| l.weight(i) >= 3))
        .map(|(k, _)| k.clone())
        .collect();
    if keys.is_empty() {
        return None;
    }
    let key = keys[rng.gen_range(0..keys.len())].clone();
    let value = l.bracket(&key);
    let i = value.support().next().unwrap();
    let same: Vec<usize> = (0..l.dim()).filter(|&j| l.degree(j) == l.degree(i) && l.weight(j) == l.weight(i)).collect();
    let j = same[rng.gen_range(0..same.len())];
    let c = q([-2, -1, 1, 2][rng.gen_range(0..4)]);
    let mut bad = l.clone();
    let mut v = value;
    v.add_term(j, c.clone());
    let what = format!("{} += {c} {}", l.tuple_labels(&key).join(","), l.label(j));
    bad.set_entry(key, v).unwrap();
    Some((bad, what))
}

/// Graded Jacobi `[x,[y,z]] = [[x,y],z] + (−1)^{|x||y|} [y,[x,z]]` on all
/// basis triples, evaluated on the dg Lie form of the algebra.
fn jacobi_oracle(l: &SLInfinityAlgebra) -> Result<bool, String> {
    let l = match l.convention() {
        Convention::DgLie => l.clone(),
        Convention::Shifted => desuspend(l).map_err(err)?,
    };
    let e = SparseVec::unit;
    let br = |a: &SparseVec, b: &SparseVec| l.eval(&[a, b]);
    for x in 0..l.dim() {
        for y in 0..l.dim() {
            for z in 0..l.dim() {
                let lhs = br(&e(x), &br(&e(y), &e(z)));
                let mut rhs = br(&br(&e(x), &e(y)), &e(z));
                let s = if (l.degree(x) * l.degree(y)) % 2 == 0 { q(1) } else { q(-1) };
                rhs.add_scaled(&br(&e(y), &br(&e(x), &e(z))), &s);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn structure_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let family = free_lie_family();
    let mut algebras = Vec::new();
    for (degrees, conv) in &family {
        let l = build(degrees, *conv, 5)?;
        ensure!(check_symmetry(&l).passed(), "{degrees:?}: symmetry");
        let r = check_jacobi(&l, 3);
        ensure!(r.passed(), "{degrees:?} {conv:?}: {r}");
        algebras.push(l);
    }
    // Single-entry perturbations on the members with at most two generators,
    // where the cochain algebra stays small. Some perturbations are cocycles
    // and still give Lie algebras, so each one is classified by the oracle
    // and both checks must agree with it.
    let (mut faults, mut benign, mut candidates) = (0, 0, 0);
    while faults < 10 {
        ensure!(candidates < 200, "only {faults} genuine faults among {candidates} perturbations");
        let (degrees, conv) = &family[rng.gen_range(0..family.len())];
        if degrees.len() > 2 {
            continue;
        }
        let l = build(degrees, *conv, 4)?;
        let Some((bad, what)) = inject_fault(&l, &mut rng) else { continue };
        candidates += 1;
        let lie = jacobi_oracle(&bad)?;
        let r = check_jacobi(&bad, 3);
        ensure!(r.passed() == lie, "{what} on {degrees:?} {conv:?}: oracle says Lie = {lie}, checker says {r}");
        // Every cubic word in the cochain generators must lie under the cap.
        let top = as_shifted(&l).map_err(err)?.carrier().degrees().iter().copied().max().unwrap();
        let cap = 3 * top + 1;
        ensure!(ce_cochains(&l, None, 3, cap).is_ok(), "{degrees:?}: d² ≠ 0 on a Lie algebra");
        let ce = ce_cochains(&bad, None, 3, cap);
        ensure!(ce.is_ok() == lie, "{what} on {degrees:?} {conv:?}: oracle says Lie = {lie}, cochains give {ce:?}");
        if lie {
            benign += 1;
        } else {
            faults += 1;
        }
    }
    let cdgas = [CDGAModel::unit_algebra(), sphere_cohomology(1, "x"), sphere_cohomology(2, "x"), sphere_cohomology(3, "x")];
    let mut pairs = 0;
    for k in 0..20 {
        let a = &cdgas[k % cdgas.len()];
        let (degrees, conv) = &family[rng.gen_range(0..family.len())];
        let shift = if *conv == Convention::Shifted { 1 } else { 0 };
        let degrees: Vec<i32> = degrees.iter().map(|d| d + shift + 1).collect();
        let l = build(&degrees, *conv, 3)?;
        ensure!(check_cdga(a).passed() && check_jacobi(&l, 3).passed(), "pair {k}: inputs fail");
        let t = tensor_model(a, &l, 10).map_err(err)?;
        let r = check_jacobi(&t.algebra, 3);
        ensure!(r.passed(), "pair {k}: {r}");
        pairs += 1;
    }
    Ok(format!(
        "{} free Lie algebras, {faults} faults caught ({benign} cocycle perturbations passed), {pairs} tensor pairs",
        algebras.len()
    ))
}

fn bch_laws() -> Outcome {
    let l = free_lie(&[("u1".into(), 1), ("u2".into(), 1)], 4, Convention::Shifted).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut random = || -> SparseVec { (0..l.dim()).map(|i| (i, q(rng.gen_range(-3i64..=3)))).collect() };
    let b = |x: &SparseVec, y: &SparseVec| bch(&l, x, y, 4).map_err(err);
    let zero = SparseVec::new();
    let triples = 25;
    for _ in 0..triples {
        let (x, y, z) = (random(), random(), random());
        ensure!(b(&b(&x, &y)?, &z)? == b(&x, &b(&y, &z)?)?, "associativity fails at {x:?}, {y:?}, {z:?}");
        ensure!(b(&x, &zero)? == x && b(&zero, &x)? == x, "identity fails at {x:?}");
        ensure!(b(&x, &x.neg())?.is_zero() && b(&x.neg(), &x)?.is_zero(), "inverse fails at {x:?}");
    }
    let (u1, u2) = (SparseVec::unit(0), SparseVec::unit(1));
    ensure!(matches!(bch(&l, &u1, &u2, 3), Err(Error::Capacity(_))), "class 3 was accepted on a class 4 algebra");
    Ok(format!("{triples} random triples in dimension {}", l.dim()))
}

/// Writes straight to stdout so the lines show up without `--nocapture`.
fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").and_then(|_| out.flush()).expect("stdout");
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("wedge table", wedge_table, 1),
        ("mapping-space table", map_table, 10),
        ("CP^n classification", cp_n_sweep, 5),
        ("sphere presets", spheres, 1),
        ("invariant homology cross-check", invariant_homology, 60),
        ("retraction verification", retraction, 30),
        ("structure suites", structure_suites, 60),
        ("BCH group laws", bch_laws, 5),
    ];
    report("");
    let mut failed = Vec::new();
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(*limit);
        let (status, detail) = match (&result, within) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over the time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        let line = format!("{status} {} {name} ({:.2} s, limit {limit} s): {detail}", k + 1, elapsed.as_secs_f64());
        report(&line);
        if status == "FAIL" {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "criteria {failed:?} failed");
}
