//! Problem files: a JSON document describing a fan, an optional subtorus,
//! optional symmetries, named selections and section families.
//!
//! ```json
//! {
//!   "version": 1,
//!   "rank": 2,
//!   "rays": [[1, 0], [0, 1], [-1, -1]],
//!   "max_cones": [[0, 1], [1, 2], [2, 0]],
//!   "subtorus": [[1, 1]],
//!   "symmetries": [[[0, 1], [1, 0]]],
//!   "selections": { "chart": [[0, 1]], "torus": [[]] },
//!   "sections": { "coordinates": [{ "monomial": [1, 0, 0] }] }
//! }
//! ```
//!
//! A selection lists cones of the fan by ray indices and stands for the
//! open subset made of those cones and all their faces. `"all"` names the
//! whole fan unless the file defines it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use gquot::{
    Fan, GroupActionData, IntMatrix, PolynomialSection, RaySet, Section, SubfanSelection, SubtorusAction,
    SymmetryError, SymmetryGroup,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

pub const SUPPORTED_VERSION: u32 = 1;

/// Input problem, with a location when one is known.
#[derive(Debug)]
pub struct InputError {
    pub field: Option<String>,
    pub line: Option<(usize, usize)>,
    pub message: String,
}

impl InputError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            field: Some(field.into()),
            line: None,
            message: message.into(),
        }
    }

    pub fn plain(message: impl Into<String>) -> Self {
        InputError {
            field: None,
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((l, c)) = self.line {
            write!(f, "line {l}, column {c}: ")?;
        }
        if let Some(field) = &self.field {
            write!(f, "field `{field}`: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    version: u32,
    #[serde(default)]
    name: Option<String>,
    rank: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
    #[serde(default)]
    subtorus: Vec<Vec<i64>>,
    #[serde(default)]
    symmetries: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    selections: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default)]
    sections: BTreeMap<String, Vec<RawSection>>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum RawSection {
    Monomial(Vec<i64>),
    Polynomial(RawPolynomial),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolynomial {
    terms: Vec<RawTerm>,
    #[serde(default)]
    weight: Option<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    coefficient: Coefficient,
    exponents: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Integer(i64),
    Text(String),
}

/// A validated problem.
#[derive(Debug)]
pub struct Problem {
    pub name: Option<String>,
    pub fan: Fan,
    pub action: SubtorusAction,
    pub symmetry_generators: Vec<IntMatrix>,
    pub group: GroupActionData,
    pub selections: BTreeMap<String, SubfanSelection>,
    /// Raw exponent data; turned into sections once the Cox presentation exists.
    sections: BTreeMap<String, Vec<RawSection>>,
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn parse(text: &str) -> Result<Problem, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawProblem = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        InputError {
            field: (path != ".").then_some(path),
            line: Some((inner.line(), inner.column())),
            message: inner.to_string(),
        }
    })?;
    validate(raw)
}

fn validate(raw: RawProblem) -> Result<Problem, InputError> {
    if raw.version != SUPPORTED_VERSION {
        return Err(InputError::field(
            "version",
            format!("unsupported version {}, expected {SUPPORTED_VERSION}", raw.version),
        ));
    }
    for (i, r) in raw.rays.iter().enumerate() {
        if r.len() != raw.rank {
            return Err(InputError::field(
                format!("rays[{i}]"),
                format!("has {} entries, rank is {}", r.len(), raw.rank),
            ));
        }
        if r.iter().all(|&x| x == 0) {
            return Err(InputError::field(format!("rays[{i}]"), "zero ray"));
        }
    }
    for (c, cone) in raw.max_cones.iter().enumerate() {
        if let Some((k, &r)) = cone.iter().enumerate().find(|(_, &r)| r >= raw.rays.len()) {
            return Err(InputError::field(
                format!("max_cones[{c}][{k}]"),
                format!("ray index {r} out of range ({} rays)", raw.rays.len()),
            ));
        }
    }
    let rays: Vec<Vec<BigInt>> = raw.rays.iter().map(|r| big(r)).collect();
    let fan = Fan::new(raw.rank, rays, &raw.max_cones).map_err(|e| InputError::field("max_cones", e.to_string()))?;
    let report = fan.validate();
    if let Some(v) = report.violation {
        return Err(InputError::field("max_cones", format!("not a fan: {v}")));
    }

    for (i, g) in raw.subtorus.iter().enumerate() {
        if g.len() != raw.rank {
            return Err(InputError::field(
                format!("subtorus[{i}]"),
                format!("has {} entries, rank is {}", g.len(), raw.rank),
            ));
        }
    }
    let gens: Vec<Vec<BigInt>> = raw.subtorus.iter().map(|g| big(g)).collect();
    let action = SubtorusAction::normalize(raw.rank, &gens);

    let mut symmetry_generators = vec![];
    for (i, m) in raw.symmetries.iter().enumerate() {
        let field = format!("symmetries[{i}]");
        if m.len() != raw.rank || m.iter().any(|row| row.len() != raw.rank) {
            return Err(InputError::field(field, format!("must be a {0}x{0} matrix", raw.rank)));
        }
        let rows: Vec<Vec<BigInt>> = m.iter().map(|r| big(r)).collect();
        let mat = IntMatrix::from_rows(raw.rank, &rows);
        let single = SymmetryGroup::generated(&fan, std::slice::from_ref(&mat))
            .map_err(|e| InputError::field(field.clone(), e.to_string()))?;
        match GroupActionData::new(action.clone(), single) {
            Err(SymmetryError::Incompatible(_)) => {
                return Err(InputError::field(field, "does not map the subtorus lattice into itself"));
            }
            Err(e) => return Err(InputError::field(field, e.to_string())),
            Ok(_) => {}
        }
        symmetry_generators.push(mat);
    }
    let sym = SymmetryGroup::generated(&fan, &symmetry_generators)
        .map_err(|e| InputError::field("symmetries", e.to_string()))?;
    let group = GroupActionData::new(action.clone(), sym).map_err(|e| InputError::field("symmetries", e.to_string()))?;

    let mut selections = BTreeMap::new();
    for (name, cones) in &raw.selections {
        let mut sets = vec![];
        for (k, c) in cones.iter().enumerate() {
            let field = format!("selections.{name}[{k}]");
            if let Some(&r) = c.iter().find(|&&r| r >= raw.rays.len()) {
                return Err(InputError::field(field, format!("ray index {r} out of range")));
            }
            let rs = RaySet::from_indices(c.iter().copied());
            if !fan.contains_cone(rs) {
                return Err(InputError::field(field, format!("{rs} is not a cone of the fan")));
            }
            sets.push(rs);
        }
        let s = fan.face_closure(sets).map_err(|e| InputError::field(format!("selections.{name}"), e.to_string()))?;
        selections.insert(name.clone(), s);
    }
    selections.entry("all".into()).or_insert_with(|| fan.all_cones());

    for (name, family) in &raw.sections {
        for (k, s) in family.iter().enumerate() {
            check_section(&format!("sections.{name}[{k}]"), s, raw.rays.len())?;
        }
    }

    Ok(Problem {
        name: raw.name,
        fan,
        action,
        symmetry_generators,
        group,
        selections,
        sections: raw.sections,
    })
}

fn check_exponents(field: &str, e: &[i64], n: usize) -> Result<(), InputError> {
    if e.len() != n {
        return Err(InputError::field(field, format!("has {} exponents, the fan has {n} rays", e.len())));
    }
    if e.iter().any(|&x| x < 0) {
        return Err(InputError::field(field, "negative exponent"));
    }
    Ok(())
}

fn check_section(field: &str, s: &RawSection, n: usize) -> Result<(), InputError> {
    match s {
        RawSection::Monomial(e) => check_exponents(&format!("{field}.monomial"), e, n),
        RawSection::Polynomial(p) => {
            if p.terms.is_empty() {
                return Err(InputError::field(format!("{field}.polynomial.terms"), "no terms"));
            }
            for (t, term) in p.terms.iter().enumerate() {
                let f = format!("{field}.polynomial.terms[{t}]");
                check_exponents(&format!("{f}.exponents"), &term.exponents, n)?;
                term.coefficient
                    .value()
                    .map_err(|m| InputError::field(format!("{f}.coefficient"), m))?;
            }
            Ok(())
        }
    }
}

impl Coefficient {
    fn value(&self) -> Result<BigRational, String> {
        match self {
            Coefficient::Integer(i) => Ok(BigRational::from_integer(BigInt::from(*i))),
            Coefficient::Text(s) => BigRational::from_str(s.trim()).map_err(|_| format!("`{s}` is not a rational number")),
        }
    }
}

impl Problem {
    pub fn selection(&self, name: &str) -> Result<&SubfanSelection, InputError> {
        self.selections.get(name).ok_or_else(|| {
            let known: Vec<&str> = self.selections.keys().map(String::as_str).collect();
            InputError::field(
                format!("selections.{name}"),
                format!("no such selection; known: {}", known.join(", ")),
            )
        })
    }

    pub fn family_names(&self) -> impl Iterator<Item = &str> {
        self.sections.keys().map(String::as_str)
    }

    /// Sections of a family. Monomials get their class from `degree`.
    pub fn family(
        &self,
        name: &str,
        monomial: impl Fn(&[BigInt]) -> Section,
    ) -> Result<Vec<Section>, InputError> {
        let raw = self
            .sections
            .get(name)
            .ok_or_else(|| InputError::field(format!("sections.{name}"), "no such section family"))?;
        Ok(raw
            .iter()
            .map(|s| match s {
                RawSection::Monomial(e) => monomial(&big(e)),
                RawSection::Polynomial(p) => Section::Polynomial(PolynomialSection {
                    terms: p
                        .terms
                        .iter()
                        .map(|t| (t.coefficient.value().expect("checked"), big(&t.exponents)))
                        .collect(),
                    declared_weight: p.weight.as_ref().map(|w| big(w)),
                }),
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: &str = r#"{
        "version": 1,
        "rank": 2,
        "rays": [[1, 0], [0, 1], [-1, -1]],
        "max_cones": [[0, 1], [1, 2], [2, 0]],
        "selections": { "chart": [[0, 1]] }
    }"#;

    #[test]
    fn parses_a_plane() {
        let p = parse(P2).unwrap();
        assert!(p.fan.is_complete());
        assert_eq!(p.selection("chart").unwrap().len(), 4);
        assert_eq!(p.selection("all").unwrap().len(), 7);
        assert!(p.selection("nope").is_err());
    }

    #[test]
    fn reports_locations() {
        let e = parse(&P2.replace("[-1, -1]", "[-1, \"x\"]")).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("rays[2][1]"));
        assert_eq!(e.line.map(|l| l.0), Some(4));
        let e = parse(&P2.replace("[2, 0]]", "[2, 7]]")).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("max_cones[2][1]"));
        let e = parse(&P2.replace("\"rank\": 2", "\"rank\": 3")).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("rays[0]"));
        let e = parse(&P2.replace("[[0, 1]] }", "[[0, 1, 2]] }")).unwrap_err();
        assert!(e.to_string().contains("selections.chart[0]"), "{e}");
        let e = parse(&P2.replace("\"version\": 1", "\"version\": 9")).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("version"));
    }

    #[test]
    fn rejects_incompatible_symmetries() {
        let text = r#"{"version": 1, "rank": 2, "rays": [[1,0],[0,1],[-1,0],[0,-1]],
            "max_cones": [[0,1],[1,2],[2,3],[3,0]], "subtorus": [[1,0]],
            "symmetries": [[[-1,0],[0,1]], [[0,1],[1,0]]]}"#;
        let e = parse(text).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("symmetries[1]"));
    }
}
