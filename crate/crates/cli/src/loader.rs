//! JSON input documents: group descriptions (explicit generator grids of
//! cyclotomic expressions, or a cyclic preset) and normal-crossing pair
//! data with motivic-weight strings.

use crate::error::CliError;
use omk_core::exactnum::{parse_cyclotomic, parse_rational, Cyclotomic};
use omk_core::invariants::{Component, NcPairData, Stratum};
use omk_core::matgroup::{close_group, CycMatrix, FiniteMatrixGroup};
use omk_core::MotivicWeight;
use serde::Deserialize;
use sha2::{Digest, Sha256};
use std::path::Path;

pub const SCHEMA: &str = "omk/1";

/// Sanity bound on declared cyclotomic orders. Desk-scale inputs sit far
/// below this; anything larger is almost certainly a typo and would
/// otherwise allocate enormous reduction polynomials before any group cap
/// could apply.
pub const MAX_CYCLOTOMIC_ORDER: u64 = 100_000;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpecFile {
    #[serde(default)]
    schema: Option<String>,
    degree: usize,
    #[serde(default)]
    cyclotomic_order: Option<u64>,
    #[serde(default)]
    generators: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default)]
    preset: Option<PresetSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetSpec {
    kind: String,
    r: u64,
    weights: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFile {
    #[serde(default)]
    schema: Option<String>,
    ambient_class: String,
    components: Vec<ComponentSpec>,
    strata: Vec<StratumSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentSpec {
    id: String,
    coefficient: String,
    #[serde(default = "default_true")]
    meets_w: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StratumSpec {
    subset: Vec<String>,
    class: String,
}

/// A closed group together with the digest of the document it came from.
#[derive(Debug, Clone)]
pub struct LoadedGroup {
    pub group: FiniteMatrixGroup,
    pub inputs_digest: String,
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn check_schema(schema: &Option<String>) -> Result<(), CliError> {
    match schema {
        None => Ok(()),
        Some(s) if s == SCHEMA => Ok(()),
        Some(s) => Err(CliError::invalid_spec(format!(
            "unsupported schema {s:?}; this tool reads {SCHEMA:?}"
        ))),
    }
}

/// Load and close a group description.
pub fn load_group_file(path: &Path, cap: usize) -> Result<LoadedGroup, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(&e, path))?;
    let group = group_from_bytes(&bytes, cap)?;
    Ok(LoadedGroup {
        group,
        inputs_digest: digest(&bytes),
    })
}

fn group_from_bytes(bytes: &[u8], cap: usize) -> Result<FiniteMatrixGroup, CliError> {
    let spec: GroupSpecFile =
        serde_json::from_slice(bytes).map_err(|e| CliError::invalid_json(&e))?;
    check_schema(&spec.schema)?;
    match (&spec.generators, &spec.preset) {
        (Some(_), Some(_)) => Err(CliError::invalid_spec(
            "give either explicit generators or a preset, not both",
        )),
        (None, None) => Err(CliError::invalid_spec(
            "one of \"generators\" or \"preset\" is required",
        )),
        (Some(grids), None) => explicit_group(&spec, grids, cap),
        (None, Some(preset)) => preset_group(&spec, preset, cap),
    }
}

fn explicit_group(
    spec: &GroupSpecFile,
    grids: &[Vec<Vec<String>>],
    cap: usize,
) -> Result<FiniteMatrixGroup, CliError> {
    let order = spec.cyclotomic_order.ok_or_else(|| {
        CliError::invalid_spec("\"cyclotomic_order\" is required with explicit generators")
    })?;
    if order == 0 || order > MAX_CYCLOTOMIC_ORDER {
        return Err(CliError::invalid_spec(format!(
            "cyclotomic_order must lie in 1..={MAX_CYCLOTOMIC_ORDER}"
        )));
    }
    if grids.is_empty() {
        return Err(CliError::invalid_spec("generator list is empty"));
    }
    let mut generators = Vec::with_capacity(grids.len());
    for (gi, grid) in grids.iter().enumerate() {
        if grid.len() != spec.degree || grid.iter().any(|row| row.len() != spec.degree) {
            return Err(CliError::invalid_spec(format!(
                "generator {gi} is not a {d}x{d} grid",
                d = spec.degree
            )));
        }
        let mut rows = Vec::with_capacity(spec.degree);
        for (ri, row) in grid.iter().enumerate() {
            let mut parsed: Vec<Cyclotomic> = Vec::with_capacity(spec.degree);
            for (ci, text) in row.iter().enumerate() {
                let value = parse_cyclotomic(text, order).map_err(|e| {
                    CliError::parse(&format!("generator {gi}, row {ri}, column {ci}"), &e)
                })?;
                parsed.push(value);
            }
            rows.push(parsed);
        }
        generators.push(CycMatrix::from_rows(rows)?);
    }
    Ok(close_group(&generators, cap)?)
}

fn preset_group(
    spec: &GroupSpecFile,
    preset: &PresetSpec,
    cap: usize,
) -> Result<FiniteMatrixGroup, CliError> {
    if preset.kind != "cyclic" {
        return Err(CliError::invalid_spec(format!(
            "unknown preset kind {:?}; only \"cyclic\" is supported",
            preset.kind
        )));
    }
    if preset.r == 0 || preset.r > MAX_CYCLOTOMIC_ORDER {
        return Err(CliError::invalid_spec(format!(
            "preset r must lie in 1..={MAX_CYCLOTOMIC_ORDER}"
        )));
    }
    if preset.weights.len() != spec.degree {
        return Err(CliError::invalid_spec(format!(
            "preset weights have length {}, but the degree is {}",
            preset.weights.len(),
            spec.degree
        )));
    }
    if let Some(order) = spec.cyclotomic_order {
        if order != preset.r {
            return Err(CliError::invalid_spec(
                "cyclotomic_order of a cyclic preset must be omitted or equal to r",
            ));
        }
    }
    let diag: Vec<Cyclotomic> = preset
        .weights
        .iter()
        .map(|&a| Cyclotomic::zeta_pow(preset.r, a.rem_euclid(preset.r as i64)))
        .collect();
    let group = close_group(&[CycMatrix::diagonal(&diag)], cap)?;
    if group.order() as u64 != preset.r {
        return Err(CliError::input(
            "non_faithful_preset",
            format!(
                "cyclic preset of order {} generates a group of order {}; \
                 reduce r or adjust the weights",
                preset.r,
                group.order()
            ),
        ));
    }
    Ok(group)
}

/// Load normal-crossing pair data and validate its structural invariants.
pub fn load_pair_file(path: &Path) -> Result<(NcPairData, String), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(&e, path))?;
    let pair = pair_from_bytes(&bytes)?;
    Ok((pair, digest(&bytes)))
}

fn pair_from_bytes(bytes: &[u8]) -> Result<NcPairData, CliError> {
    let file: PairFile = serde_json::from_slice(bytes).map_err(|e| CliError::invalid_json(&e))?;
    check_schema(&file.schema)?;
    let ambient_class: MotivicWeight = file
        .ambient_class
        .parse()
        .map_err(|e: omk_core::MotivicError| CliError::parse("ambient_class", &e))?;
    let mut components = Vec::with_capacity(file.components.len());
    for c in &file.components {
        components.push(Component {
            id: c.id.clone(),
            coefficient: parse_rational(&c.coefficient)
                .map_err(|e| CliError::parse(&format!("coefficient of {:?}", c.id), &e))?,
            meets_w: c.meets_w,
        });
    }
    let mut strata = Vec::with_capacity(file.strata.len());
    for (i, s) in file.strata.iter().enumerate() {
        strata.push(Stratum {
            subset: s.subset.clone(),
            class: s.class.parse().map_err(|e: omk_core::MotivicError| {
                CliError::parse(&format!("class of stratum {i}"), &e)
            })?,
        });
    }
    let pair = NcPairData {
        ambient_class,
        components,
        strata,
    };
    pair.validate()?;
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_and_explicit_generators_agree() {
        let preset = group_from_bytes(
            br#"{"degree": 2, "preset": {"kind": "cyclic", "r": 3, "weights": [1, 2]}}"#,
            1000,
        )
        .unwrap();
        let explicit = group_from_bytes(
            br#"{"degree": 2, "cyclotomic_order": 3,
                 "generators": [[["z", "0"], ["0", "z^2"]]]}"#,
            1000,
        )
        .unwrap();
        assert_eq!(preset.order(), explicit.order());
        assert_eq!(preset.elements(), explicit.elements());
    }

    #[test]
    fn non_faithful_preset_is_rejected() {
        let err = group_from_bytes(
            br#"{"degree": 2, "preset": {"kind": "cyclic", "r": 4, "weights": [2, 2]}}"#,
            1000,
        )
        .unwrap_err();
        assert_eq!(err.code, "non_faithful_preset");
    }

    #[test]
    fn structural_errors() {
        assert_eq!(group_from_bytes(b"{", 10).unwrap_err().code, "invalid_json");
        assert_eq!(
            group_from_bytes(br#"{"degree": 2}"#, 10).unwrap_err().code,
            "invalid_spec"
        );
        let err = group_from_bytes(
            br#"{"degree": 1, "cyclotomic_order": 9999999999, "generators": [[["1"]]]}"#,
            10,
        )
        .unwrap_err();
        assert_eq!(err.code, "invalid_spec");
        let err = group_from_bytes(
            br#"{"degree": 2, "cyclotomic_order": 4,
                 "generators": [[["z", "oops"], ["0", "z"]]]}"#,
            10,
        )
        .unwrap_err();
        assert_eq!(err.code, "parse_error");
        assert!(err.message.contains("row 0, column 1"));
        let err = group_from_bytes(
            br#"{"schema": "omk/2", "degree": 1, "preset": {"kind": "cyclic", "r": 2, "weights": [1]}}"#,
            10,
        )
        .unwrap_err();
        assert_eq!(err.code, "invalid_spec");
    }

    #[test]
    fn pair_validation_is_enforced() {
        let good = br#"{
            "ambient_class": "L^2 + L",
            "components": [{"id": "E", "coefficient": "0"}],
            "strata": [
                {"subset": [], "class": "L^2 - 1"},
                {"subset": ["E"], "class": "L + 1"}
            ]
        }"#;
        let pair = pair_from_bytes(good).unwrap();
        assert_eq!(pair.components.len(), 1);
        assert!(pair.components[0].meets_w);

        let bad = br#"{
            "ambient_class": "L^2",
            "components": [{"id": "E", "coefficient": "0"}],
            "strata": [
                {"subset": [], "class": "L^2 - 1"},
                {"subset": ["E"], "class": "L + 1"}
            ]
        }"#;
        assert_eq!(
            pair_from_bytes(bad).unwrap_err().code,
            "strata_not_partition"
        );
    }
}
