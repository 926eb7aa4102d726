//! JSON instance files.
//!
//! Every file is `{"kind": …, "payload": {…}, "version": 1}`. Keys are
//! sorted on output, sets use the comma-joined element text and values use
//! the canonical tract text, so a canonical file survives parse and
//! serialize byte for byte.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use lagmat_core::rgp::FVector;
use lagmat_core::{ESubset, Element, FCircuitSet, Field, FieldMatrix, RGPFunction, Scalar, Tract, TractElement};
use serde_json::{json, Map, Value as Json};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Bases,
    Circuits,
    Rgp,
    Fcircuits,
    Matrix,
    Matroid,
    Symmetric,
    Gaussoid,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::Bases,
        Kind::Circuits,
        Kind::Rgp,
        Kind::Fcircuits,
        Kind::Matrix,
        Kind::Matroid,
        Kind::Symmetric,
        Kind::Gaussoid,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Bases => "bases",
            Kind::Circuits => "circuits",
            Kind::Rgp => "rgp",
            Kind::Fcircuits => "fcircuits",
            Kind::Matrix => "matrix",
            Kind::Matroid => "matroid",
            Kind::Symmetric => "symmetric",
            Kind::Gaussoid => "gaussoid",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| CliError::Schema(format!("unknown kind `{s}`")))
    }
}

/// Raw contents of an instance file, kept in file order where order is free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Bases { n: usize, sets: Vec<ESubset> },
    Circuits { n: usize, sets: Vec<ESubset> },
    /// Listed coordinates; the rest are zero.
    Rgp { n: usize, tract: Tract, values: Vec<(ESubset, TractElement)> },
    Fcircuits { n: usize, tract: Tract, vectors: Vec<Vec<(Element, TractElement)>> },
    Matrix { field: Field, n: usize, rows: Vec<Vec<Scalar>> },
    /// Bases of an ordinary matroid on `[n]`, bit `i−1` for `i`.
    Matroid { n: usize, bases: Vec<u32> },
    Symmetric { n: usize, sets: Vec<ESubset> },
    Gaussoid { n: usize, sets: Vec<ESubset> },
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

fn mask_text(mask: u32) -> String {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| (b + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn parse_mask(n: usize, text: &str) -> CliResult<u32> {
    let mut mask = 0u32;
    for part in text.split(',').filter(|p| !p.is_empty()) {
        let i: usize = part.parse().map_err(|_| schema(format!("bad element `{part}` in `{text}`")))?;
        if i == 0 || i > n || mask >> (i - 1) & 1 == 1 {
            return Err(schema(format!("bad element `{part}` in `{text}`")));
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

fn sets_json(sets: &[ESubset]) -> Json {
    Json::Array(sets.iter().map(|s| Json::String(s.to_text())).collect())
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::Bases { .. } => Kind::Bases,
            Instance::Circuits { .. } => Kind::Circuits,
            Instance::Rgp { .. } => Kind::Rgp,
            Instance::Fcircuits { .. } => Kind::Fcircuits,
            Instance::Matrix { .. } => Kind::Matrix,
            Instance::Matroid { .. } => Kind::Matroid,
            Instance::Symmetric { .. } => Kind::Symmetric,
            Instance::Gaussoid { .. } => Kind::Gaussoid,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Instance::Bases { n, .. }
            | Instance::Circuits { n, .. }
            | Instance::Rgp { n, .. }
            | Instance::Fcircuits { n, .. }
            | Instance::Matrix { n, .. }
            | Instance::Matroid { n, .. }
            | Instance::Symmetric { n, .. }
            | Instance::Gaussoid { n, .. } => *n,
        }
    }

    /// Lists every coordinate, zeros included.
    pub fn from_rgp(phi: &RGPFunction) -> Self {
        let mut values: Vec<(ESubset, TractElement)> = phi.entries().map(|(b, v)| (b, v.clone())).collect();
        values.sort_by_key(|(b, _)| b.to_text());
        Instance::Rgp { n: phi.n(), tract: phi.tract(), values }
    }

    pub fn from_fcircuits(c: &FCircuitSet) -> Self {
        let n = c.n();
        let vectors = c
            .vectors()
            .iter()
            .map(|v| {
                let mut entries: Vec<(Element, TractElement)> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(bit, x)| (Element::from_bit(n, bit), x.clone()))
                    .collect();
                entries.sort_by_key(|(e, _)| e.to_string());
                entries
            })
            .collect();
        Instance::Fcircuits { n, tract: c.tract(), vectors }
    }

    pub fn from_matrix(m: &FieldMatrix) -> Self {
        Instance::Matrix { field: m.field(), n: m.rows(), rows: m.to_rows() }
    }

    pub fn to_rgp(&self) -> CliResult<RGPFunction> {
        match self {
            Instance::Rgp { n, tract, values } => {
                let mut seen = std::collections::BTreeSet::new();
                for (b, _) in values {
                    if !seen.insert(*b) {
                        return Err(schema(format!("duplicate coordinate {b}")));
                    }
                    if b.is_transversal() || b.is_almost_transversal() {
                        continue;
                    }
                    return Err(schema(format!("{b} is neither a transversal nor an almost-transversal")));
                }
                Ok(RGPFunction::from_entries(*n, *tract, values.iter().cloned())?)
            }
            other => Err(schema(format!("expected rgp, found {}", other.kind()))),
        }
    }

    pub fn to_fcircuits(&self) -> CliResult<FCircuitSet> {
        match self {
            Instance::Fcircuits { n, tract, vectors } => {
                let dense: Vec<FVector> = vectors
                    .iter()
                    .map(|v| {
                        let mut out = vec![tract.zero(); 2 * n];
                        for (e, x) in v {
                            out[e.bit(*n)] = x.clone();
                        }
                        out
                    })
                    .collect();
                Ok(FCircuitSet::new(*n, *tract, dense)?)
            }
            other => Err(schema(format!("expected fcircuits, found {}", other.kind()))),
        }
    }

    pub fn to_matrix(&self) -> CliResult<FieldMatrix> {
        match self {
            Instance::Matrix { field, rows, .. } => Ok(FieldMatrix::from_rows(*field, rows.clone())?),
            other => Err(schema(format!("expected matrix, found {}", other.kind()))),
        }
    }

    fn payload(&self) -> Json {
        match self {
            Instance::Bases { n, sets } | Instance::Symmetric { n, sets } => json!({"n": n, "bases": sets_json(sets)}),
            Instance::Circuits { n, sets } => json!({"n": n, "circuits": sets_json(sets)}),
            Instance::Gaussoid { n, sets } => json!({"n": n, "members": sets_json(sets)}),
            Instance::Rgp { n, tract, values } => {
                let map: Map<String, Json> = values.iter().map(|(b, v)| (b.to_text(), Json::String(v.to_text()))).collect();
                json!({"n": n, "tract": tract.to_string(), "values": map})
            }
            Instance::Fcircuits { n, tract, vectors } => {
                let list: Vec<Json> = vectors
                    .iter()
                    .map(|v| Json::Object(v.iter().map(|(e, x)| (e.to_string(), Json::String(x.to_text()))).collect()))
                    .collect();
                json!({"n": n, "tract": tract.to_string(), "vectors": list})
            }
            Instance::Matrix { field, n, rows } => {
                let rows: Vec<Json> =
                    rows.iter().map(|r| Json::Array(r.iter().map(|x| Json::String(field.format(x))).collect())).collect();
                json!({"field": field.to_string(), "n": n, "rows": rows})
            }
            Instance::Matroid { n, bases } => {
                json!({"n": n, "bases": bases.iter().map(|b| Json::String(mask_text(*b))).collect::<Vec<_>>()})
            }
        }
    }

    pub fn to_json(&self) -> Json {
        json!({"kind": self.kind().as_str(), "payload": self.payload(), "version": SCHEMA_VERSION})
    }

    /// Canonical text: pretty-printed, sorted keys, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        to_canonical(&self.to_json())
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let doc: Json = serde_json::from_str(text)?;
        Instance::from_json(&doc)
    }

    pub fn from_json(doc: &Json) -> CliResult<Self> {
        let top = object(doc, "instance", &["kind", "payload", "version"])?;
        let version = top.get("version").and_then(Json::as_u64).ok_or_else(|| schema("missing version"))?;
        if version != SCHEMA_VERSION {
            return Err(schema(format!("unsupported version {version}")));
        }
        let kind: Kind = top.get("kind").and_then(Json::as_str).ok_or_else(|| schema("missing kind"))?.parse()?;
        let payload = top.get("payload").ok_or_else(|| schema("missing payload"))?;
        parse_payload(kind, payload)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Instance::parse(&text)
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        std::fs::write(path, self.to_canonical_string()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

pub fn to_canonical(doc: &Json) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

fn object<'a>(doc: &'a Json, what: &str, allowed: &[&str]) -> CliResult<&'a Map<String, Json>> {
    let map = doc.as_object().ok_or_else(|| schema(format!("{what} must be an object")))?;
    if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(schema(format!("unexpected key `{k}` in {what}")));
    }
    Ok(map)
}

fn field_n(map: &Map<String, Json>) -> CliResult<usize> {
    let n = map.get("n").and_then(Json::as_u64).ok_or_else(|| schema("missing or non-integer n"))?;
    usize::try_from(n).ok().filter(|n| *n <= 32).ok_or_else(|| schema(format!("n = {n} out of range")))
}

fn strings<'a>(map: &'a Map<String, Json>, key: &str) -> CliResult<Vec<&'a str>> {
    map.get(key)
        .and_then(Json::as_array)
        .ok_or_else(|| schema(format!("missing array `{key}`")))?
        .iter()
        .map(|v| v.as_str().ok_or_else(|| schema(format!("`{key}` entries must be strings"))))
        .collect()
}

fn set_list(n: usize, map: &Map<String, Json>, key: &str) -> CliResult<Vec<ESubset>> {
    strings(map, key)?.into_iter().map(|s| Ok(ESubset::parse(n, s)?)).collect()
}

fn tract_of(map: &Map<String, Json>) -> CliResult<Tract> {
    Ok(map.get("tract").and_then(Json::as_str).ok_or_else(|| schema("missing tract"))?.parse()?)
}

fn scalar_text(v: &Json) -> CliResult<String> {
    match v {
        Json::String(s) => Ok(s.clone()),
        Json::Number(x) if x.is_i64() => Ok(x.to_string()),
        _ => Err(schema("values must be strings or integers")),
    }
}

fn parse_payload(kind: Kind, payload: &Json) -> CliResult<Instance> {
    Ok(match kind {
        Kind::Bases | Kind::Symmetric => {
            let map = object(payload, "payload", &["n", "bases"])?;
            let n = field_n(map)?;
            let sets = set_list(n, map, "bases")?;
            if kind == Kind::Bases {
                Instance::Bases { n, sets }
            } else {
                Instance::Symmetric { n, sets }
            }
        }
        Kind::Circuits => {
            let map = object(payload, "payload", &["n", "circuits"])?;
            let n = field_n(map)?;
            Instance::Circuits { n, sets: set_list(n, map, "circuits")? }
        }
        Kind::Gaussoid => {
            let map = object(payload, "payload", &["n", "members"])?;
            let n = field_n(map)?;
            Instance::Gaussoid { n, sets: set_list(n, map, "members")? }
        }
        Kind::Matroid => {
            let map = object(payload, "payload", &["n", "bases"])?;
            let n = field_n(map)?;
            let bases = strings(map, "bases")?.into_iter().map(|s| parse_mask(n, s)).collect::<CliResult<_>>()?;
            Instance::Matroid { n, bases }
        }
        Kind::Rgp => {
            let map = object(payload, "payload", &["n", "tract", "values"])?;
            let n = field_n(map)?;
            let tract = tract_of(map)?;
            let raw = map.get("values").and_then(Json::as_object).ok_or_else(|| schema("missing object `values`"))?;
            let values = raw
                .iter()
                .map(|(k, v)| Ok((ESubset::parse(n, k)?, tract.parse_value(&scalar_text(v)?)?)))
                .collect::<CliResult<_>>()?;
            Instance::Rgp { n, tract, values }
        }
        Kind::Fcircuits => {
            let map = object(payload, "payload", &["n", "tract", "vectors"])?;
            let n = field_n(map)?;
            let tract = tract_of(map)?;
            let raw = map.get("vectors").and_then(Json::as_array).ok_or_else(|| schema("missing array `vectors`"))?;
            let vectors = raw
                .iter()
                .map(|v| {
                    let obj = v.as_object().ok_or_else(|| schema("vectors must be objects"))?;
                    obj.iter()
                        .map(|(k, x)| {
                            let e: Element = k.parse()?;
                            if e.index() == 0 || e.index() > n {
                                return Err(schema(format!("element {k} outside ±[{n}]")));
                            }
                            Ok((e, tract.parse_value(&scalar_text(x)?)?))
                        })
                        .collect::<CliResult<Vec<_>>>()
                })
                .collect::<CliResult<_>>()?;
            Instance::Fcircuits { n, tract, vectors }
        }
        Kind::Matrix => {
            let map = object(payload, "payload", &["field", "n", "rows"])?;
            let n = field_n(map)?;
            let tag = map.get("field").and_then(Json::as_str).ok_or_else(|| schema("missing field"))?;
            let field = Field::from_tract(tag.parse()?)?;
            let raw = map.get("rows").and_then(Json::as_array).ok_or_else(|| schema("missing array `rows`"))?;
            if raw.len() != n {
                return Err(schema(format!("expected {n} rows, found {}", raw.len())));
            }
            let rows = raw
                .iter()
                .map(|r| {
                    let r = r.as_array().ok_or_else(|| schema("rows must be arrays"))?;
                    if r.len() != 2 * n {
                        return Err(schema(format!("expected {} entries per row, found {}", 2 * n, r.len())));
                    }
                    r.iter().map(|x| Ok(field.parse(&scalar_text(x)?)?)).collect::<CliResult<Vec<_>>>()
                })
                .collect::<CliResult<_>>()?;
            Instance::Matrix { field, n, rows }
        }
    })
}

/// Values keyed by canonical set text, for reports.
pub fn value_map(phi: &RGPFunction) -> BTreeMap<String, String> {
    phi.entries().filter(|(_, v)| !v.is_zero()).map(|(b, v)| (b.to_text(), v.to_text())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, s: &str) -> ESubset {
        ESubset::parse(n, s).unwrap()
    }

    #[test]
    fn bases_roundtrip_is_byte_identical() {
        let inst = Instance::Bases { n: 2, sets: vec![set(2, "1,2"), set(2, "1,1*")] };
        let text = inst.to_canonical_string();
        assert_eq!(Instance::parse(&text).unwrap(), inst);
        assert_eq!(Instance::parse(&text).unwrap().to_canonical_string(), text);
        assert!(text.starts_with("{\n  \"kind\": \"bases\""));
    }

    #[test]
    fn rgp_values_are_sorted_and_canonical() {
        let text = r#"{"version":1,"kind":"rgp","payload":{"n":1,"tract":"Q","values":{"1*":"3/2","1":2}}}"#;
        let inst = Instance::parse(text).unwrap();
        let phi = inst.to_rgp().unwrap();
        assert_eq!(phi.get(set(1, "1")).to_text(), "2/1");
        let canonical = inst.to_canonical_string();
        assert!(canonical.contains("\"1\": \"2/1\""));
        assert_eq!(Instance::parse(&canonical).unwrap().to_canonical_string(), canonical);
    }

    #[test]
    fn schema_errors() {
        for bad in [
            "{",
            r#"{"version":2,"kind":"bases","payload":{"n":1,"bases":[]}}"#,
            r#"{"version":1,"kind":"nope","payload":{}}"#,
            r#"{"version":1,"kind":"bases","payload":{"n":1,"bases":["2"]}}"#,
            r#"{"version":1,"kind":"bases","payload":{"n":1,"bases":[],"extra":0}}"#,
            r#"{"version":1,"kind":"matrix","payload":{"field":"GF(4)","n":1,"rows":[["1","0"]]}}"#,
            r#"{"version":1,"kind":"matrix","payload":{"field":"Q","n":1,"rows":[["1"]]}}"#,
            r#"{"version":1,"kind":"matroid","payload":{"n":2,"bases":["1,1"]}}"#,
        ] {
            assert!(Instance::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn matroid_masks() {
        let text = r#"{"version":1,"kind":"matroid","payload":{"n":3,"bases":["1,2","","3"]}}"#;
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst, Instance::Matroid { n: 3, bases: vec![0b011, 0, 0b100] });
    }

    #[test]
    fn every_kind_roundtrips() {
        let q = Tract::Rationals;
        let samples = vec![
            Instance::Bases { n: 1, sets: vec![set(1, "1")] },
            Instance::Circuits { n: 1, sets: vec![set(1, "1*")] },
            Instance::Rgp { n: 1, tract: q, values: vec![(set(1, "1"), q.one())] },
            Instance::Fcircuits { n: 1, tract: q, vectors: vec![vec![(Element::plain(1), q.one())]] },
            Instance::from_matrix(&FieldMatrix::from_i64(Field::Prime(3), &[&[1, 2]])),
            Instance::Matroid { n: 2, bases: vec![1] },
            Instance::Symmetric { n: 1, sets: vec![set(1, "1*")] },
            Instance::Gaussoid { n: 2, sets: vec![] },
        ];
        for inst in samples {
            let text = inst.to_canonical_string();
            let back = Instance::parse(&text).unwrap();
            assert_eq!(back, inst);
            assert_eq!(back.to_canonical_string(), text);
        }
    }
}
