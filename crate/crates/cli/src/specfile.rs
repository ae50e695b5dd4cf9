//! JSON spec files: a versioned, tagged group description plus options and
//! provenance notes.

use std::collections::BTreeMap;

use kbg_core::assemble::GroupSpec;
use kbg_core::cohom::{CentralizerRecord, CrystalSpec, DirectDataSpec, FuchsianSpec, OneRelatorSpec, RingHypotheses};
use kbg_core::permgroup::{Perm, PermGroup};
use serde::Deserialize;

use crate::error::CliError;

pub const SUPPORTED_VERSION: u64 = 1;

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Depth of the ideal-power chain certified alongside a finite group.
    #[serde(default)]
    pub depth: Option<usize>,
    /// Search bound for the chain exponents.
    #[serde(default)]
    pub bound: Option<usize>,
    /// Restricts the reported `p`-adic factors to these primes.
    #[serde(default)]
    pub primes: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FinitePermFields {
    degree: usize,
    generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DirectFields {
    betti: Vec<u64>,
    #[serde(default)]
    centralizers: BTreeMap<u64, Vec<CentralizerRecord>>,
    #[serde(default)]
    ring_hypotheses: Option<RingHypotheses>,
    #[serde(default)]
    notes: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
enum RawSpec {
    FinitePerm(FinitePermFields),
    Crystallographic(CrystalSpec),
    Fuchsian(FuchsianSpec),
    OneRelator(OneRelatorSpec),
    Direct(DirectFields),
}

pub const SPEC_TYPES: [&str; 5] = ["finite_perm", "crystallographic", "fuchsian", "one_relator", "direct"];

fn fields<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = format!("/spec{}", pointer(&e.path().to_string()));
        CliError::parse(&path, e.inner().to_string())
    })
}

/// Dispatches on the `type` tag, then decodes the remaining fields so that
/// diagnostics keep their full path.
fn raw_spec(mut value: serde_json::Value) -> Result<RawSpec, CliError> {
    let obj = value
        .as_object_mut()
        .ok_or_else(|| CliError::parse("/spec", "expected an object".into()))?;
    let tag = match obj.remove("type") {
        Some(serde_json::Value::String(t)) => t,
        Some(_) => return Err(CliError::parse("/spec/type", "expected a string".into())),
        None => return Err(CliError::parse("/spec/type", "missing variant tag".into())),
    };
    Ok(match tag.as_str() {
        "finite_perm" => RawSpec::FinitePerm(fields(value)?),
        "crystallographic" => RawSpec::Crystallographic(fields(value)?),
        "fuchsian" => RawSpec::Fuchsian(fields(value)?),
        "one_relator" => RawSpec::OneRelator(fields(value)?),
        "direct" => RawSpec::Direct(fields(value)?),
        other => {
            return Err(CliError::parse(
                "/spec/type",
                format!("unknown type {other:?}, expected one of {SPEC_TYPES:?}"),
            ))
        }
    })
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    version: u64,
    spec: serde_json::Value,
    #[serde(default)]
    options: Options,
    #[serde(default)]
    notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SpecFile {
    pub version: u64,
    pub spec: GroupSpec,
    pub options: Options,
    /// File-level notes followed by those attached to a direct spec.
    pub notes: Vec<String>,
}

/// Parses and validates a spec file; diagnostics carry the JSON pointer of
/// the offending field.
pub fn parse_spec(text: &[u8]) -> Result<SpecFile, CliError> {
    let text = std::str::from_utf8(text).map_err(|e| CliError::parse("", format!("input is not UTF-8: {e}")))?;
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = pointer(&e.path().to_string());
        CliError::parse(&path, e.inner().to_string())
    })?;
    if raw.version != SUPPORTED_VERSION {
        return Err(CliError::parse(
            "/version",
            format!("unsupported version {}, expected {SUPPORTED_VERSION}", raw.version),
        ));
    }
    let mut notes = raw.notes;
    let spec = match raw_spec(raw.spec)? {
        RawSpec::FinitePerm(FinitePermFields { degree, generators }) => {
            let mut perms = Vec::with_capacity(generators.len());
            for (i, images) in generators.into_iter().enumerate() {
                if images.len() != degree {
                    return Err(CliError::parse(
                        &format!("/spec/generators/{i}"),
                        format!("has {} entries, expected degree {degree}", images.len()),
                    ));
                }
                let p =
                    Perm::new(images).map_err(|e| CliError::parse(&format!("/spec/generators/{i}"), e.to_string()))?;
                perms.push(p);
            }
            let mut g =
                PermGroup::new(degree, perms).map_err(|e| CliError::parse("/spec/generators", e.to_string()))?;
            if let Some(cap) = enumeration_cap() {
                g = g.with_cap(cap);
            }
            GroupSpec::FinitePerm(g)
        }
        RawSpec::Crystallographic(CrystalSpec { p, sigma }) => {
            let c = CrystalSpec::new(p, sigma).map_err(|e| CliError::parse("/spec/sigma", e.to_string()))?;
            GroupSpec::Crystallographic(c)
        }
        RawSpec::Fuchsian(f) => {
            f.validate()
                .map_err(|e| CliError::parse("/spec/periods", e.to_string()))?;
            GroupSpec::Fuchsian(f)
        }
        RawSpec::OneRelator(o) => GroupSpec::OneRelator(o),
        RawSpec::Direct(DirectFields {
            betti,
            centralizers,
            ring_hypotheses,
            notes: spec_notes,
        }) => {
            let spec_notes = spec_notes.unwrap_or_default();
            if spec_notes.iter().all(|n| n.trim().is_empty()) {
                return Err(CliError::parse(
                    "/spec/notes",
                    "direct data needs a nonempty provenance note".to_string(),
                ));
            }
            notes.extend(spec_notes);
            let d = DirectDataSpec {
                betti,
                centralizers,
                ring_hypotheses,
            };
            d.validate().map_err(|e| CliError::parse("/spec", e.to_string()))?;
            GroupSpec::Direct(d)
        }
    };
    Ok(SpecFile {
        version: raw.version,
        spec,
        options: raw.options,
        notes,
    })
}

/// `serde_path_to_error` paths look like `spec.generators[0]`.
fn pointer(path: &str) -> String {
    if path == "." || path.is_empty() {
        return String::new();
    }
    let mut out = String::new();
    for seg in path.split('.') {
        let mut rest = seg;
        if let Some(i) = rest.find('[') {
            if i > 0 {
                out.push('/');
                out.push_str(&rest[..i]);
            }
            rest = &rest[i..];
            while let Some(end) = rest.find(']') {
                out.push('/');
                out.push_str(&rest[1..end]);
                rest = &rest[end + 1..];
            }
        } else {
            out.push('/');
            out.push_str(rest);
        }
    }
    out
}

pub const CAP_ENV: &str = "KBG_MAX_ENUM";

/// Enumeration cap from the `KBG_MAX_ENUM` environment variable, if set.
pub fn enumeration_cap() -> Option<u64> {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_perm_spec() {
        let s = parse_spec(br#"{"version":1,"spec":{"type":"finite_perm","degree":3,"generators":[[1,0,2],[1,2,0]]}}"#)
            .unwrap();
        match s.spec {
            GroupSpec::FinitePerm(g) => assert_eq!(g.order(), 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fuchsian_spec() {
        let s = parse_spec(br#"{"version":1,"spec":{"type":"fuchsian","genus":2,"periods":[3,4]}}"#).unwrap();
        assert!(matches!(s.spec, GroupSpec::Fuchsian(_)));
        let e = parse_spec(br#"{"version":1,"spec":{"type":"fuchsian","genus":0,"periods":[2,2]}}"#).unwrap_err();
        assert_eq!(e.path(), Some("/spec/periods"));
    }

    #[test]
    fn diagnostics_carry_paths() {
        let e = parse_spec(br#"{"version":1,"spec":{"type":"direct","betti":[1]}}"#).unwrap_err();
        assert_eq!(e.path(), Some("/spec/notes"));
        let e = parse_spec(br#"{"version":1,"spec":{"type":"direct","betti":[1],"notes":[""]}}"#).unwrap_err();
        assert_eq!(e.path(), Some("/spec/notes"));
        let e = parse_spec(br#"{"version":1,"spec":{"type":"lattice"}}"#).unwrap_err();
        assert_eq!(e.path(), Some("/spec/type"));
        let e = parse_spec(br#"{"version":1,"spec":{"type":"finite_perm","degree":3,"generators":[[1,0,2],[1,1,0]]}}"#)
            .unwrap_err();
        assert_eq!(e.path(), Some("/spec/generators/1"));
        let e = parse_spec(br#"{"version":1,"spec":{"type":"crystallographic","p":3,"sigma":[[0,-1],["x",-1]]}}"#)
            .unwrap_err();
        assert_eq!(e.path(), Some("/spec/sigma/1/0"));
        let e = parse_spec(br#"{"version":2,"spec":{"type":"fuchsian","genus":2}}"#).unwrap_err();
        assert_eq!(e.path(), Some("/version"));
    }

    #[test]
    fn pointer_conversion() {
        assert_eq!(pointer("spec.sigma[1][0]"), "/spec/sigma/1/0");
        assert_eq!(pointer("spec"), "/spec");
        assert_eq!(pointer("."), "");
    }
}
