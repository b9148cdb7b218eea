//! Small abelian targets for the retraction checks, written like `1,2` or
//! `1,1:swap`.

use crate::error::{Error, Result};
use crate::liealg::{Convention, GSLInfinityAlgebra, SLInfinityAlgebra};
use crate::qlinalg::{q, FiniteGroup, GradedModule, GroupRepresentation, Matrix};

/// The homomorphism `G → {±1}` killing the subgroup generated by squares,
/// when that subgroup has index 1 or 2.
pub fn sign_character(group: &FiniteGroup) -> Result<Vec<i32>> {
    let mut sub: Vec<bool> = vec![false; group.order()];
    let mut frontier: Vec<usize> = group.elements().map(|g| group.mul(g, g)).collect();
    while let Some(h) = frontier.pop() {
        if sub[h] {
            continue;
        }
        sub[h] = true;
        for k in group.elements().filter(|&k| sub[k]) {
            frontier.push(group.mul(h, k));
            frontier.push(group.mul(k, h));
        }
    }
    let size = sub.iter().filter(|&&b| b).count();
    match group.order() / size {
        1 | 2 => Ok(sub.iter().map(|&b| if b { 1 } else { -1 }).collect()),
        _ => Err(Error::Hypothesis("the group has no sign character of this kind".into())),
    }
}

/// Parses `degrees[:action]` with action `trivial` (default), `sign` (each
/// generator by the sign character) or `swap` (two generators of equal
/// degree exchanged by elements of sign −1).
pub fn abelian_target(spec: &str, group: &FiniteGroup) -> Result<GSLInfinityAlgebra> {
    let (degs, action) = spec.split_once(':').unwrap_or((spec, "trivial"));
    let degrees: Vec<i32> = degs
        .split(',')
        .map(|d| d.trim().parse::<i32>().map_err(|_| Error::Input(format!("bad degree {d:?} in target {spec:?}"))))
        .collect::<Result<_>>()?;
    if degrees.is_empty() || degrees.iter().any(|&d| d < 1) {
        return Err(Error::Hypothesis("target degrees must be positive".into()));
    }
    let names = ["a", "b", "c", "d", "e", "f"];
    if degrees.len() > names.len() {
        return Err(Error::Capacity("at most six target generators".into()));
    }
    let carrier = GradedModule::new(degrees.iter().enumerate().map(|(i, &d)| (names[i].to_string(), d)).collect())?;
    let algebra = SLInfinityAlgebra::abelian(carrier.clone(), Convention::Shifted);
    let n = degrees.len();
    let rep = match action.trim() {
        "trivial" => GroupRepresentation::trivial(group.clone(), carrier),
        "sign" | "swap" => {
            let chi = sign_character(group)?;
            let swap = action.trim() == "swap";
            if swap && (n != 2 || degrees[0] != degrees[1]) {
                return Err(Error::Hypothesis("swap needs two generators of equal degree".into()));
            }
            let mats = group
                .elements()
                .map(|g| {
                    let mut m = Matrix::zeros(n, n);
                    for i in 0..n {
                        if swap {
                            let j = if chi[g] < 0 { 1 - i } else { i };
                            m.set(j, i, q(1));
                        } else {
                            m.set(i, i, q(chi[g] as i64));
                        }
                    }
                    m
                })
                .collect();
            GroupRepresentation::new(group.clone(), carrier, mats)?
        }
        other => return Err(Error::Input(format!("unknown target action {other:?}"))),
    };
    GSLInfinityAlgebra::new(algebra, rep)
}
