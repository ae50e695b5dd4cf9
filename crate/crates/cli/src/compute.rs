//! The `compute` report: both parities of `K^*(BG) ⊗ Q`, the ring
//! structure when certified, and structured notes.

use std::collections::BTreeMap;

use kbg_core::assemble::{self, GroupSpec, KRationalResult, Note, ParityPart, RingDescriptor};
use kbg_core::promod::verify_ideal_chain;
use kbg_core::repring::{rep_ring_of, RingStructure};
use num_bigint::BigInt;
use serde::Serialize;

use crate::error::CliError;
use crate::specfile::SpecFile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenPart {
    pub rational_rank: u64,
    pub even_betti: Vec<u64>,
    /// Prime → number of `Q_p^` factors; keys serialize as decimal strings.
    pub p_adic: BTreeMap<u64, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddPart {
    pub rational_rank: u64,
    pub odd_betti: Vec<u64>,
    pub p_adic: BTreeMap<u64, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeRing {
    /// Basis of `I_p(G)` in coordinates of the irreducibles of the Sylow subgroup.
    pub basis: Vec<Vec<Integer>>,
    /// `b_i b_j = Σ_k constants[i][j][k] b_k`.
    pub constants: Vec<Vec<Vec<Integer>>>,
}

/// Exact integer: a JSON number when it fits in `i64`, otherwise a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Integer {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Integer {
    fn from(v: &BigInt) -> Integer {
        i64::try_from(v)
            .map(Integer::Small)
            .unwrap_or_else(|_| Integer::Big(v.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingReport {
    FiniteGroup {
        law: String,
        per_prime: BTreeMap<u64, PrimeRing>,
    },
    RationalProduct {
        law: String,
        p_adic: BTreeMap<u64, u64>,
    },
    Absent {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComputeReport {
    pub k0: EvenPart,
    pub k1: OddPart,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingReport>,
    pub has_torsion: bool,
    pub notes: Vec<Note>,
}

fn prime_ring(r: &RingStructure) -> PrimeRing {
    let d = r.constants.dim;
    let basis = r.basis.iter().map(|v| v.iter().map(Integer::from).collect()).collect();
    let constants = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    (0..d)
                        .map(|k| Integer::from(&r.constants.c[(i * d + j) * d + k]))
                        .collect()
                })
                .collect()
        })
        .collect();
    PrimeRing { basis, constants }
}

fn keep(primes: &Option<Vec<u64>>, p: u64) -> bool {
    primes.as_ref().is_none_or(|ps| ps.contains(&p))
}

fn filter_primes<V: Clone>(m: &BTreeMap<u64, V>, primes: &Option<Vec<u64>>) -> BTreeMap<u64, V> {
    m.iter()
        .filter(|(p, _)| keep(primes, **p))
        .map(|(p, v)| (*p, v.clone()))
        .collect()
}

fn ring_report(d: RingDescriptor, primes: &Option<Vec<u64>>) -> RingReport {
    match d {
        RingDescriptor::FiniteGroup { per_prime, law } => RingReport::FiniteGroup {
            law: law.to_string(),
            per_prime: per_prime
                .iter()
                .filter(|(p, _)| keep(primes, **p))
                .map(|(p, r)| (*p, prime_ring(r)))
                .collect(),
        },
        RingDescriptor::RationalProduct { p_adic, law } => RingReport::RationalProduct {
            law: law.to_string(),
            p_adic: filter_primes(&p_adic, primes),
        },
        RingDescriptor::Absent { reason } => RingReport::Absent { reason },
    }
}

fn parts(r: &KRationalResult, primes: &Option<Vec<u64>>) -> (EvenPart, OddPart) {
    let ParityPart {
        rational_rank,
        betti,
        p_adic,
    } = &r.k0;
    let k0 = EvenPart {
        rational_rank: *rational_rank,
        even_betti: betti.clone(),
        p_adic: filter_primes(p_adic, primes),
    };
    let ParityPart {
        rational_rank,
        betti,
        p_adic,
    } = &r.k1;
    let k1 = OddPart {
        rational_rank: *rational_rank,
        odd_betti: betti.clone(),
        p_adic: filter_primes(p_adic, primes),
    };
    (k0, k1)
}

pub fn compute(file: &SpecFile) -> Result<ComputeReport, CliError> {
    let result = assemble::k_rational(&file.spec)?;
    let primes = &file.options.primes;
    let (k0, k1) = parts(&result, primes);
    let ring = ring_report(assemble::ring_structure(&file.spec)?, primes);
    let mut notes: Vec<Note> = file.notes.iter().map(|n| Note::new("provenance", n.clone())).collect();
    notes.extend(result.notes.iter().cloned());
    if let (GroupSpec::FinitePerm(g), Some(depth)) = (&file.spec, file.options.depth) {
        let r = rep_ring_of(g)?;
        let rep = verify_ideal_chain(&r, depth, file.options.bound.unwrap_or(12))?;
        let status = serde_json::to_value(rep.status()).expect("status serializes");
        notes.push(Note::new(
            "ideal_chain",
            format!(
                "pro-isomorphism chain to depth {depth}: {}",
                status.as_str().unwrap_or("?")
            ),
        ));
    }
    Ok(ComputeReport {
        has_torsion: assemble::torsion_criterion(&result),
        k0,
        k1,
        ring: Some(ring),
        notes,
    })
}

/// Pretty JSON with a trailing newline; byte-identical for identical input.
pub fn render(report: &ComputeReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfile::parse_spec;

    #[test]
    fn s3_report() {
        let f = parse_spec(br#"{"version":1,"spec":{"type":"finite_perm","degree":3,"generators":[[1,0,2],[1,2,0]]}}"#)
            .unwrap();
        let r = compute(&f).unwrap();
        let v: serde_json::Value = serde_json::from_str(&render(&r)).unwrap();
        assert_eq!(v["k0"]["rational_rank"], 1);
        assert_eq!(v["k0"]["p_adic"], serde_json::json!({"2": 1, "3": 1}));
        assert_eq!(v["k1"]["rational_rank"], 0);
        assert_eq!(v["ring"]["kind"], "finite_group");
        assert_eq!(v["ring"]["per_prime"]["2"]["constants"], serde_json::json!([[[-2]]]));
        assert_eq!(render(&r), render(&compute(&f).unwrap()));
    }

    #[test]
    fn prime_filter() {
        let f = parse_spec(
            br#"{"version":1,"spec":{"type":"fuchsian","genus":2,"periods":[3,4]},"options":{"primes":[3]}}"#,
        )
        .unwrap();
        let r = compute(&f).unwrap();
        assert_eq!(r.k0.p_adic, BTreeMap::from([(3, 2)]));
        assert!(matches!(r.ring, Some(RingReport::Absent { .. })));
    }

    #[test]
    fn big_integers_stay_exact() {
        let big = BigInt::from(1u8) << 80;
        assert_eq!(Integer::from(&big), Integer::Big("1208925819614629174706176".into()));
        assert_eq!(Integer::from(&BigInt::from(-3)), Integer::Small(-3));
    }
}
