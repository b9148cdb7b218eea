//! `mcfix example NAME`: regenerate the tables of a worked example and
//! compare them with the stored fixture.

use std::fmt::Write as _;

use mcfix_core::{Error, Result};

use crate::commands::{check_reports, invariant_rows, invariants_markdown, pi_report, Outcome, EXIT_FAIL, EXIT_OK};
use crate::presets::preset;

pub const EXAMPLES: [&str; 5] = ["sphere-antipodal", "cp-n", "em-product", "wedge-s2", "map-s2-s3wedge"];

pub fn fixture(name: &str) -> Option<&'static str> {
    Some(match name {
        "sphere-antipodal" => include_str!("../fixtures/sphere-antipodal.md"),
        "cp-n" => include_str!("../fixtures/cp-n.md"),
        "em-product" => include_str!("../fixtures/em-product.md"),
        "wedge-s2" => include_str!("../fixtures/wedge-s2.md"),
        "map-s2-s3wedge" => include_str!("../fixtures/map-s2-s3wedge.md"),
        _ => return None,
    })
}

/// One-line summary of the nonzero groups, e.g. `π_3: 1, π_5: 2`.
fn pi_summary(spec: &str, max_degree: Option<i32>) -> Result<String> {
    let p = preset(spec)?.build()?;
    let n = max_degree.or(p.caps.max_degree).unwrap_or(8);
    let r = pi_report(&p, n)?;
    if r.groups.is_empty() {
        return Ok(format!("trivial through degree {n}"));
    }
    Ok(r.groups.iter().map(|g| format!("π_{}: {}", g.degree, g.dim)).collect::<Vec<_>>().join(", "))
}

pub fn regenerate(name: &str) -> Result<String> {
    let mut s = String::new();
    match name {
        "sphere-antipodal" => {
            s.push_str("# S^n with the antipodal action\n\n| n | homotopy fixed points |\n|---|---|\n");
            for n in 1..=6 {
                writeln!(s, "| {n} | {} |", pi_summary(&format!("sphere-antipodal:n={n}"), Some(2 * n))?).unwrap();
            }
        }
        "cp-n" => {
            s.push_str("# CP^n with σ(x) = a·x, σ(y) = b·y\n\n");
            s.push_str("| n | a | b | equivariant | group law | homotopy fixed points |\n|---|---|---|---|---|---|\n");
            for n in 1..=3i64 {
                for a in [-2i64, -1, 1, 2] {
                    let good = a.pow(n as u32 + 1);
                    for b in [good, -good] {
                        let p = preset(&format!("cp-n:n={n},a={a},b={b}"))?.build()?;
                        let reports = check_reports(&p);
                        let find = |prefix: &str| reports.iter().find(|r| r.check.starts_with(prefix)).map(|r| r.passed());
                        let equivariant = find("equivariance").unwrap_or(false);
                        let law = find("group law").unwrap_or(false);
                        let pi = if equivariant {
                            pi_summary(&format!("cp-n:n={n},a={a},b={b}"), Some(2 * n as i32 + 2))?
                        } else {
                            "-".into()
                        };
                        writeln!(s, "| {n} | {a} | {b} | {} | {} | {pi} |", yes(equivariant), yes(law)).unwrap();
                    }
                }
            }
        }
        "em-product" => {
            s.push_str("# m generators of degree n permuted by S_m\n\n| m | n | homotopy fixed points |\n|---|---|---|\n");
            for m in 1..=3 {
                for n in 1..=3 {
                    writeln!(s, "| {m} | {n} | {} |", pi_summary(&format!("em-product:m={m},n={n}"), Some(n + 2))?)
                        .unwrap();
                }
            }
        }
        "wedge-s2" => {
            let p = preset("wedge-s2")?.build()?;
            s.push_str("# Invariants of the free Lie algebra on u1, u2 under the swap\n\n");
            s.push_str(&invariants_markdown(&invariant_rows(&p, 3)?));
        }
        "map-s2-s3wedge" => {
            let p = preset("map-s2-s3wedge")?.build()?;
            s.push_str("# Invariants of H*(S^2) ⊗ L under the diagonal action\n\n");
            s.push_str(&invariants_markdown(&invariant_rows(&p, 7)?));
            s.push_str("\n## Homotopy groups of the fixed points\n\n");
            let r = pi_report(&p, 7)?;
            s.push_str("| degree | dim |\n|---|---|\n");
            for n in 1..=7 {
                writeln!(s, "| {n} | {} |", r.dim(n)).unwrap();
            }
        }
        other => return Err(Error::Input(format!("unknown example {other:?}; known: {}", EXAMPLES.join(", ")))),
    }
    Ok(s)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Line diff of two texts, `-` for expected and `+` for regenerated lines.
pub fn diff(expected: &str, actual: &str) -> String {
    let (e, a): (Vec<&str>, Vec<&str>) = (expected.lines().collect(), actual.lines().collect());
    let mut out = String::new();
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i), a.get(i));
        if x != y {
            if let Some(x) = x {
                writeln!(out, "{:>4} - {x}", i + 1).unwrap();
            }
            if let Some(y) = y {
                writeln!(out, "{:>4} + {y}", i + 1).unwrap();
            }
        }
    }
    out
}

pub fn run(name: &str, print: bool) -> Result<Outcome> {
    let actual = regenerate(name)?;
    if print {
        return Ok(Outcome { output: actual, code: EXIT_OK });
    }
    let expected = fixture(name).expect("every example has a fixture");
    if expected == actual {
        Ok(Outcome { output: format!("{actual}\n{name}: matches the stored tables\n"), code: EXIT_OK })
    } else {
        Ok(Outcome { output: format!("{name}: differs from the stored tables\n{}", diff(expected, &actual)), code: EXIT_FAIL })
    }
}
