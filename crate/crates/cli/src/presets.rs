//! Built-in documents for the worked examples, addressed as `name` or
//! `name:key=value,...` (for instance `cp-n:n=2,a=-1`).

use std::collections::BTreeMap;

use mcfix_core::qlinalg::FiniteGroup;
use mcfix_core::{Error, Result};

use crate::doc::{ActionEntry, AlgebraSection, Bracket, Caps, CdgaSection, Generator, GroupSection, ProblemDocument};

pub const PRESETS: [&str; 5] = ["sphere-antipodal", "cp-n", "em-product", "wedge-s2", "map-s2-s3wedge"];

fn generator(name: &str, degree: i32, weight: Option<u32>) -> Generator {
    Generator { name: name.into(), degree, weight }
}

fn preset_group(name: &str) -> GroupSection {
    GroupSection { preset: Some(name.into()), elements: None, table: None }
}

fn images(element: &str, images: &[&str]) -> ActionEntry {
    ActionEntry { element: element.into(), images: Some(images.iter().map(|s| s.to_string()).collect()), matrix: None }
}

fn algebra(convention: &str, generators: Vec<Generator>, free_lie_weight: Option<u32>, brackets: Vec<Bracket>) -> AlgebraSection {
    AlgebraSection { convention: convention.into(), generators, free_lie_weight, brackets }
}

fn params(spec: &str) -> Result<(&str, BTreeMap<String, i64>)> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut map = BTreeMap::new();
    for kv in rest.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("preset parameter {kv:?} is not key=value")))?;
        let v: i64 = v.trim().parse().map_err(|_| Error::Input(format!("preset parameter {kv:?} is not an integer")))?;
        map.insert(k.trim().to_string(), v);
    }
    Ok((name, map))
}

fn take(map: &mut BTreeMap<String, i64>, key: &str, default: i64) -> i64 {
    map.remove(key).unwrap_or(default)
}

/// The document for a preset spec.
pub fn preset(spec: &str) -> Result<ProblemDocument> {
    let (name, mut p) = params(spec)?;
    let doc = match name {
        "sphere-antipodal" => sphere_antipodal(take(&mut p, "n", 2))?,
        "cp-n" => {
            let n = take(&mut p, "n", 1);
            let a = take(&mut p, "a", -1);
            let b = match p.remove("b") {
                Some(b) => b,
                None => power(a, n + 1)?,
            };
            cp_n(n, a, b)?
        }
        "em-product" => em_product(take(&mut p, "m", 2), take(&mut p, "n", 1))?,
        "wedge-s2" => wedge_s2(),
        "map-s2-s3wedge" => map_s2_s3wedge(),
        other => {
            return Err(Error::Input(format!("unknown preset {other:?}; known: {}", PRESETS.join(", "))));
        }
    };
    if let Some(k) = p.keys().next() {
        return Err(Error::Input(format!("preset {name} has no parameter {k:?}")));
    }
    Ok(doc)
}

fn power(a: i64, e: i64) -> Result<i64> {
    u32::try_from(e)
        .ok()
        .and_then(|e| a.checked_pow(e))
        .ok_or_else(|| Error::Capacity(format!("{a}^{e} does not fit")))
}

/// `S^n` with the antipodal action.
pub fn sphere_antipodal(n: i64) -> Result<ProblemDocument> {
    if !(1..=64).contains(&n) {
        return Err(Error::Input("sphere-antipodal needs 1 ≤ n ≤ 64".into()));
    }
    let n = n as i32;
    let (alg, action) = if n % 2 == 1 {
        (algebra("shifted", vec![generator("x", n, None)], None, Vec::new()), images("g", &["x"]))
    } else {
        let gens = vec![generator("x", n, Some(1)), generator("[x,x]", 2 * n - 1, Some(2))];
        let br = vec![Bracket { args: vec!["x".into(), "x".into()], value: "[x,x]".into() }];
        (algebra("shifted", gens, None, br), images("g", &["-x", "[x,x]"]))
    };
    Ok(ProblemDocument {
        name: Some(format!("sphere-antipodal:n={n}")),
        group: preset_group("Z2"),
        algebra: alg,
        action: vec![action],
        cdga: None,
        caps: Caps { max_degree: Some(2 * n), arity: None },
    })
}

/// CP^n with `x ↦ ax`, `y ↦ by`.
pub fn cp_n(n: i64, a: i64, b: i64) -> Result<ProblemDocument> {
    if !(1..=6).contains(&n) {
        return Err(Error::Input("cp-n needs 1 ≤ n ≤ 6".into()));
    }
    if a == 0 || b == 0 {
        return Err(Error::Input("cp-n needs nonzero a and b".into()));
    }
    let factorial: i64 = (1..=n + 1).product();
    let gens = vec![generator("x", 2, Some(1)), generator("y", 2 * n as i32 + 1, Some(n as u32 + 1))];
    let br = vec![Bracket { args: vec!["x".into(); n as usize + 1], value: format!("1/{factorial} y") }];
    Ok(ProblemDocument {
        name: Some(format!("cp-n:n={n},a={a},b={b}")),
        group: preset_group("Z2"),
        algebra: algebra("shifted", gens, None, br),
        action: vec![images("g", &[&scaled(a, "x"), &scaled(b, "y")])],
        cdga: None,
        caps: Caps { max_degree: Some(2 * n as i32 + 2), arity: None },
    })
}

fn scaled(c: i64, label: &str) -> String {
    match c {
        1 => label.to_string(),
        -1 => format!("-{label}"),
        _ => format!("{c} {label}"),
    }
}

/// `m` generators of degree `n` permuted by `S_m`.
pub fn em_product(m: i64, n: i64) -> Result<ProblemDocument> {
    if !(1..=4).contains(&m) || !(1..=32).contains(&n) {
        return Err(Error::Input("em-product needs 1 ≤ m ≤ 4 and 1 ≤ n ≤ 32".into()));
    }
    let group = FiniteGroup::symmetric(m as usize);
    let names: Vec<String> = (1..=m).map(|i| format!("u{i}")).collect();
    let action = group
        .generators()
        .into_iter()
        .map(|g| {
            let perm = group.permutation(g).expect("symmetric group");
            let imgs: Vec<&str> = perm.iter().map(|&j| names[j].as_str()).collect();
            images(group.name(g), &imgs)
        })
        .collect();
    Ok(ProblemDocument {
        name: Some(format!("em-product:m={m},n={n}")),
        group: preset_group(&format!("S{m}")),
        algebra: algebra("shifted", names.iter().map(|u| generator(u, n as i32, None)).collect(), None, Vec::new()),
        action,
        cdga: None,
        caps: Caps { max_degree: Some(n as i32 + 1), arity: None },
    })
}

/// The free dg Lie algebra on two degree-1 generators swapped by ℤ₂.
pub fn wedge_s2() -> ProblemDocument {
    ProblemDocument {
        name: Some("wedge-s2".into()),
        group: preset_group("Z2"),
        algebra: algebra("dglie", vec![generator("u1", 1, None), generator("u2", 1, None)], Some(3), Vec::new()),
        action: vec![images("g", &["u2", "u1"])],
        cdga: None,
        caps: Caps { max_degree: Some(3), arity: None },
    }
}

/// `H*(S²)` with the antipodal action, against the suspended free Lie
/// algebra on two degree-2 generators swapped by ℤ₂.
pub fn map_s2_s3wedge() -> ProblemDocument {
    ProblemDocument {
        name: Some("map-s2-s3wedge".into()),
        group: preset_group("Z2"),
        algebra: algebra("shifted", vec![generator("a", 3, None), generator("b", 3, None)], Some(4), Vec::new()),
        action: vec![images("g", &["b", "a"])],
        cdga: Some(CdgaSection {
            basis: vec![generator("1", 0, None), generator("x", 2, None)],
            unit: "1".into(),
            products: Vec::new(),
            differential: Vec::new(),
            action: vec![images("g", &["1", "-x"])],
        }),
        caps: Caps { max_degree: Some(7), arity: None },
    }
}
