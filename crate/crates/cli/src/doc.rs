//! The TOML problem document and its translation into core objects.

use serde::{Deserialize, Serialize};

use mcfix_core::cdga::CDGAModel;
use mcfix_core::liealg::{split_terms, Convention, FreeLie, GSLInfinityAlgebra, SLInfinityAlgebra};
use mcfix_core::qlinalg::{parse_scalar, FiniteGroup, GradedModule, GroupRepresentation, Matrix, SparseVec};
use mcfix_core::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupSection,
    pub algebra: AlgebraSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub action: Vec<ActionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cdga: Option<CdgaSection>,
    #[serde(default, skip_serializing_if = "Caps::is_empty")]
    pub caps: Caps,
}

/// Either `preset = "Z2"` or an explicit multiplication table whose row and
/// column `0` belong to the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
}

/// `ℓ_n(args) = value`, the value a linear combination of labels such as
/// `1/2 y` or `u1 - [a,b]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bracket {
    pub args: Vec<String>,
    pub value: String,
}

/// With `free_lie_weight` the generators span a free Lie algebra truncated
/// at that weight; otherwise they are the whole basis and `brackets` lists
/// the nonzero structure constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSection {
    #[serde(default = "shifted", skip_serializing_if = "is_shifted")]
    pub convention: String,
    pub generators: Vec<Generator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_lie_weight: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<Bracket>,
}

fn shifted() -> String {
    "shifted".into()
}

fn is_shifted(s: &String) -> bool {
    s == "shifted"
}

/// The action of one group element: images of the generators (free Lie) or
/// basis elements (otherwise), or a full matrix given by rows.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub element: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Differential {
    pub of: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CdgaSection {
    pub basis: Vec<Generator>,
    pub unit: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<Bracket>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<Differential>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub action: Vec<ActionEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<i32>,
    /// Largest arity for which the Jacobi identities are checked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity: Option<usize>,
}

impl Caps {
    fn is_empty(&self) -> bool {
        *self == Caps::default()
    }
}

/// A parsed and validated document.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: Option<String>,
    pub algebra: GSLInfinityAlgebra,
    pub free: Option<FreeLie>,
    pub cdga: Option<CDGAModel>,
    pub caps: Caps,
}

impl ProblemDocument {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Input(format!("document: {}", e.to_string().trim_end())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("documents serialize")
    }

    pub fn build(&self) -> Result<Problem> {
        let group = self.group.build()?;
        let (algebra, free) = self.algebra.build()?;
        let carrier = algebra.carrier().clone();
        let action = build_action(&group, &carrier, &self.action, "action", |expr| match &free {
            Some(fl) => fl.parse_element(expr),
            None => parse_combination(&carrier, expr),
        }, free.as_ref())?;
        let algebra = GSLInfinityAlgebra::new(algebra, action)?;
        let cdga = self.cdga.as_ref().map(|c| c.build(&group)).transpose()?;
        if let Some(m) = self.caps.max_degree {
            if m < 1 {
                return Err(Error::Input("caps.max_degree must be positive".into()));
            }
        }
        if self.caps.arity == Some(0) {
            return Err(Error::Input("caps.arity must be positive".into()));
        }
        Ok(Problem { name: self.name.clone(), algebra, free, cdga, caps: self.caps.clone() })
    }
}

impl GroupSection {
    pub fn build(&self) -> Result<FiniteGroup> {
        match (&self.preset, &self.table) {
            (Some(p), None) => FiniteGroup::preset(p),
            (None, Some(t)) => {
                let names = match &self.elements {
                    Some(n) => n.clone(),
                    None => (0..t.len()).map(|i| if i == 0 { "e".into() } else { format!("g{i}") }).collect(),
                };
                FiniteGroup::new(t.clone(), names)
            }
            _ => Err(Error::Input("group: give exactly one of `preset` or `table`".into())),
        }
    }
}

fn generator_list(section: &str, gens: &[Generator]) -> Result<GradedModule> {
    if gens.is_empty() {
        return Err(Error::Input(format!("{section}: no generators")));
    }
    GradedModule::new(gens.iter().map(|g| (g.name.clone(), g.degree)).collect())
        .map_err(|e| Error::Input(format!("{section}: {e}")))
}

impl AlgebraSection {
    fn convention(&self) -> Result<Convention> {
        match self.convention.as_str() {
            "shifted" => Ok(Convention::Shifted),
            "dglie" => Ok(Convention::DgLie),
            other => Err(Error::Input(format!("algebra.convention: unknown value {other:?}"))),
        }
    }

    pub fn build(&self) -> Result<(SLInfinityAlgebra, Option<FreeLie>)> {
        let convention = self.convention()?;
        let carrier = generator_list("algebra.generators", &self.generators)?;
        if let Some(w) = self.free_lie_weight {
            if !self.brackets.is_empty() {
                return Err(Error::Input("algebra: brackets are not allowed with free_lie_weight".into()));
            }
            let gens: Vec<(String, i32)> = self.generators.iter().map(|g| (g.name.clone(), g.degree)).collect();
            let fl = FreeLie::build(&gens, w, convention)?;
            return Ok((fl.algebra.clone(), Some(fl)));
        }
        let weights = self.generators.iter().map(|g| g.weight.unwrap_or(1)).collect();
        let mut entries = Vec::new();
        let mut arity = 1;
        for (k, b) in self.brackets.iter().enumerate() {
            let args = b
                .args
                .iter()
                .map(|a| carrier.find(a).ok_or_else(|| Error::Input(format!("algebra.brackets[{k}]: unknown label {a:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let value = parse_combination(&carrier, &b.value)
                .map_err(|e| Error::Input(format!("algebra.brackets[{k}]: {e}")))?;
            arity = arity.max(args.len());
            entries.push((args, value));
        }
        let l = SLInfinityAlgebra::new(carrier, weights, convention, entries, arity)?;
        Ok((l, None))
    }
}

impl CdgaSection {
    pub fn build(&self, group: &FiniteGroup) -> Result<CDGAModel> {
        let carrier = generator_list("cdga.basis", &self.basis)?;
        let label = |s: &str, at: &str| carrier.find(s).ok_or_else(|| Error::Input(format!("{at}: unknown label {s:?}")));
        let unit = label(&self.unit, "cdga.unit")?;
        let mut products = Vec::new();
        for (k, p) in self.products.iter().enumerate() {
            let at = format!("cdga.products[{k}]");
            if p.args.len() != 2 {
                return Err(Error::Input(format!("{at}: a product takes two arguments")));
            }
            let key = (label(&p.args[0], &at)?, label(&p.args[1], &at)?);
            products.push((key, parse_combination(&carrier, &p.value).map_err(|e| Error::Input(format!("{at}: {e}")))?));
        }
        let mut differential = vec![SparseVec::new(); carrier.dim()];
        for (k, d) in self.differential.iter().enumerate() {
            let at = format!("cdga.differential[{k}]");
            differential[label(&d.of, &at)?] =
                parse_combination(&carrier, &d.value).map_err(|e| Error::Input(format!("{at}: {e}")))?;
        }
        let action = if self.action.is_empty() {
            None
        } else {
            Some(build_action(group, &carrier, &self.action, "cdga.action", |e| parse_combination(&carrier, e), None)?)
        };
        CDGAModel::new(carrier.clone(), unit, products, differential, action)
    }
}

/// A linear combination of carrier labels; `0` is the zero vector.
pub fn parse_combination(carrier: &GradedModule, expr: &str) -> Result<SparseVec> {
    if expr.trim() == "0" {
        return Ok(SparseVec::new());
    }
    let mut out = SparseVec::new();
    for (c, term) in split_terms(expr)? {
        let term = term.trim();
        let i = carrier.find(term).ok_or_else(|| Error::Input(format!("unknown label {term:?} in {expr:?}")))?;
        out.add_term(i, c);
    }
    Ok(out)
}

/// Builds the representation. Elements not listed are generated from the
/// listed ones; when every non-identity element is listed the matrices are
/// taken as given, so that a broken group law is reported by the checks
/// instead of refused here.
fn build_action(
    group: &FiniteGroup,
    carrier: &GradedModule,
    entries: &[ActionEntry],
    section: &str,
    parse: impl Fn(&str) -> Result<SparseVec>,
    free: Option<&FreeLie>,
) -> Result<GroupRepresentation> {
    if entries.is_empty() {
        return Ok(GroupRepresentation::trivial(group.clone(), carrier.clone()));
    }
    let n = carrier.dim();
    let mut pairs = Vec::new();
    for (k, e) in entries.iter().enumerate() {
        let at = format!("{section}[{k}]");
        let g = group
            .find(&e.element)
            .ok_or_else(|| Error::Input(format!("{at}: unknown group element {:?}", e.element)))?;
        let m = match (&e.images, &e.matrix) {
            (Some(images), None) => {
                let expected = free.map_or(n, |fl| fl.generators().len());
                if images.len() != expected {
                    return Err(Error::Input(format!("{at}: {} images for {expected} generators", images.len())));
                }
                let vs = images
                    .iter()
                    .map(|s| parse(s).map_err(|err| Error::Input(format!("{at}: {err}"))))
                    .collect::<Result<Vec<_>>>()?;
                match free {
                    Some(fl) => fl.extend_linear(&vs)?,
                    None => Matrix::from_columns(n, &vs),
                }
            }
            (None, Some(rows)) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::Input(format!("{at}: the matrix must be {n}×{n}")));
                }
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(|err| Error::Input(format!("{at}: {err}")))?;
                Matrix::from_rows(rows)
            }
            _ => return Err(Error::Input(format!("{at}: give exactly one of `images` or `matrix`"))),
        };
        if pairs.iter().any(|(h, _)| *h == g) {
            return Err(Error::Input(format!("{at}: element {} listed twice", e.element)));
        }
        pairs.push((g, m));
    }
    let identity = group.identity();
    let complete = group.elements().filter(|&g| g != identity).all(|g| pairs.iter().any(|(h, _)| *h == g));
    if complete {
        let mut mats = vec![Matrix::identity(n); group.order()];
        for (g, m) in pairs {
            mats[g] = m;
        }
        GroupRepresentation::new_unchecked(group.clone(), carrier.clone(), mats)
    } else {
        GroupRepresentation::from_generators(group.clone(), carrier.clone(), &pairs)
    }
}
