//! Assembly of `K^n(BG) ⊗ Q` from family data: the rational part from the
//! Betti numbers of `BG`, and one `p`-adic factor per class of elements of
//! order `p^d` carrying the cohomology of its centralizer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith;
use crate::cohom::{
    betti_crystallographic, betti_fuchsian, con_count_crystallographic, exterior_betti, h1_and_fixed,
    one_relator_analyze, Betti, CrystalSpec, DirectDataSpec, FuchsianSpec, OneRelatorSpec,
};
use crate::cyclotomic::cyclotomic_polynomial;
use crate::error::{consistency, validation, Result};
use crate::permgroup::PermGroup;
use crate::repring::{r_p, rep_ring_of, ring_structure_i_p, RingStructure};

#[derive(Clone, Debug)]
pub enum GroupSpec {
    FinitePerm(PermGroup),
    Crystallographic(CrystalSpec),
    Fuchsian(FuchsianSpec),
    OneRelator(OneRelatorSpec),
    Direct(DirectDataSpec),
}

/// One parity of `K^*(BG) ⊗ Q`: `Q^{rational_rank} × ∏_p (Q_p^)^{p_adic[p]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParityPart {
    pub rational_rank: u64,
    /// Betti numbers of `BG` in the degrees of this parity, lowest first.
    pub betti: Betti,
    pub p_adic: BTreeMap<u64, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Note {
    pub kind: String,
    pub message: String,
}

impl Note {
    pub fn new(kind: &str, message: impl Into<String>) -> Note {
        Note {
            kind: kind.into(),
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KRationalResult {
    pub k0: ParityPart,
    pub k1: ParityPart,
    pub notes: Vec<Note>,
}

impl KRationalResult {
    /// `K^n` depends only on the parity of `n`.
    pub fn k(&self, n: i64) -> &ParityPart {
        if n.rem_euclid(2) == 0 {
            &self.k0
        } else {
            &self.k1
        }
    }
}

fn split_parity(betti: &[u64]) -> (Betti, Betti) {
    let even = betti.iter().step_by(2).copied().collect();
    let odd = betti.iter().skip(1).step_by(2).copied().collect();
    (even, odd)
}

fn part(betti: Betti, p_adic: BTreeMap<u64, u64>) -> ParityPart {
    ParityPart {
        rational_rank: betti.iter().sum(),
        betti,
        p_adic: p_adic.into_iter().filter(|&(_, r)| r > 0).collect(),
    }
}

/// Distributes `copies` centralizers with the given Betti numbers into the
/// two parities at prime `p`.
fn add_centralizers(even: &mut BTreeMap<u64, u64>, odd: &mut BTreeMap<u64, u64>, p: u64, copies: u64, betti: &[u64]) {
    let (e, o) = split_parity(betti);
    *even.entry(p).or_insert(0) += copies * e.iter().sum::<u64>();
    *odd.entry(p).or_insert(0) += copies * o.iter().sum::<u64>();
}

pub fn k_rational(spec: &GroupSpec) -> Result<KRationalResult> {
    let mut notes = Vec::new();
    let mut even_p = BTreeMap::new();
    let mut odd_p = BTreeMap::new();
    let betti: Betti = match spec {
        GroupSpec::FinitePerm(g) => {
            let r = rep_ring_of(g)?;
            for p in arith::prime_divisors(g.order()) {
                even_p.insert(p, r_p(&r, p)? as u64);
            }
            vec![1]
        }
        GroupSpec::Crystallographic(c) => {
            let betti = betti_crystallographic(c)?;
            let inv = h1_and_fixed(c)?;
            let copies = con_count_crystallographic(c)?;
            add_centralizers(&mut even_p, &mut odd_p, c.p, copies, &exterior_betti(inv.fixed_rank));
            let (even, _) = split_parity(&betti);
            let rank: u64 = even.iter().sum();
            if inv.fixed_rank == 0 && inv.h1_order == c.p && rank != 1 {
                notes.push(Note::new(
                    "discrepancy",
                    format!(
                        "the closed form Q × (Q_{p}^)^(p^2-p) has a single rational factor, but \
                         H^even(BA;Q)^(Z/{p}) has total rank {rank} for this action \
                         (Betti numbers {betti:?}); the reported value follows the invariant cohomology",
                        p = c.p
                    ),
                ));
            }
            betti
        }
        GroupSpec::Fuchsian(f) => {
            let data = betti_fuchsian(f)?;
            for (p, n) in data.counts {
                add_centralizers(&mut even_p, &mut odd_p, p, n, &[1]);
            }
            data.betti
        }
        GroupSpec::OneRelator(o) => {
            let data = one_relator_analyze(o)?;
            notes.push(Note::new(
                "root",
                format!("relator is ({})^{}", data.root, data.multiplicity),
            ));
            for (p, n) in data.counts {
                add_centralizers(&mut even_p, &mut odd_p, p, n, &[1]);
            }
            data.betti
        }
        GroupSpec::Direct(d) => {
            d.validate()?;
            for (&p, records) in &d.centralizers {
                for rec in records {
                    add_centralizers(&mut even_p, &mut odd_p, p, 1, &rec.betti_qp);
                }
            }
            d.betti.clone()
        }
    };
    let (even, odd) = split_parity(&betti);
    Ok(KRationalResult {
        k0: part(even, even_p),
        k1: part(odd, odd_p),
        notes,
    })
}

pub const FINITE_GROUP_LAW: &str = "(m, u)·(n, v) = (mn, m v + n u + u v) on Z × ∏_p I_p(G)^";
pub const RATIONAL_PRODUCT_LAW: &str =
    "(a, u)·(b, v) = (a ∪ b, a_0 v + b_0 u + u v), with a_0, b_0 the degree-0 components";

/// Multiplicative structure of the result, when its hypotheses hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDescriptor {
    /// Structure constants of each `I_p(G)` and the law combining them.
    FiniteGroup {
        per_prime: BTreeMap<u64, RingStructure>,
        law: &'static str,
    },
    /// The rational product law over the given `p`-adic factors.
    RationalProduct {
        p_adic: BTreeMap<u64, u64>,
        law: &'static str,
    },
    Absent {
        reason: String,
    },
}

pub fn ring_structure(spec: &GroupSpec) -> Result<RingDescriptor> {
    let absent = |reason: &str| {
        Ok(RingDescriptor::Absent {
            reason: reason.to_string(),
        })
    };
    match spec {
        GroupSpec::FinitePerm(g) => {
            let r = rep_ring_of(g)?;
            let per_prime = arith::prime_divisors(g.order())
                .into_iter()
                .map(|p| Ok((p, ring_structure_i_p(&r, p)?)))
                .collect::<Result<_>>()?;
            Ok(RingDescriptor::FiniteGroup {
                per_prime,
                law: FINITE_GROUP_LAW,
            })
        }
        GroupSpec::Direct(d) => match d.ring_hypotheses {
            Some(h) if h.centralizer_cohomology_trivial && h.weyl_groups_full => Ok(RingDescriptor::RationalProduct {
                p_adic: k_rational(spec)?.k0.p_adic,
                law: RATIONAL_PRODUCT_LAW,
            }),
            Some(h) if !h.centralizer_cohomology_trivial => {
                absent("trivial reduced cohomology of the centralizers not certified")
            }
            _ => absent("W_GC = aut(C) not certified"),
        },
        GroupSpec::Crystallographic(c) => {
            let inv = h1_and_fixed(c)?;
            if inv.fixed_rank > 0 {
                absent("centralizers A^(Z/p) × C have nontrivial rational cohomology")
            } else if c.p != 2 {
                absent("W_GC is trivial (N_G C = C_G C) while aut(C) has order p - 1, so W_GC = aut(C) fails")
            } else {
                Ok(RingDescriptor::RationalProduct {
                    p_adic: k_rational(spec)?.k0.p_adic,
                    law: RATIONAL_PRODUCT_LAW,
                })
            }
        }
        GroupSpec::Fuchsian(f) => {
            f.validate()?;
            if f.periods.iter().all(|&m| m == 2) {
                Ok(RingDescriptor::RationalProduct {
                    p_adic: k_rational(spec)?.k0.p_adic,
                    law: RATIONAL_PRODUCT_LAW,
                })
            } else {
                absent("W_GC = aut(C) fails: finite cyclic subgroups are self-normalizing and some has order > 2")
            }
        }
        GroupSpec::OneRelator(_) => absent("W_GC = aut(C) not certified"),
    }
}

/// True when some `p`-adic factor is present, which for the supported
/// families happens exactly when the group has torsion.
pub fn torsion_criterion(result: &KRationalResult) -> bool {
    result
        .k0
        .p_adic
        .values()
        .chain(result.k1.p_adic.values())
        .any(|&r| r > 0)
}

const PADIC_SEARCH_LIMIT: u64 = 1 << 24;

fn eval_mod(coeffs: &[BigInt], x: u64, modulus: u64) -> u64 {
    let m = BigInt::from(modulus);
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = (acc * BigInt::from(x) + c) % &m;
    }
    if acc < BigInt::zero() {
        acc += &m;
    }
    acc.to_u64().expect("reduced modulo a u64")
}

/// Whether `Z_p^` contains a primitive `l`-th root of unity: an exhaustive
/// search for roots of `Φ_l` modulo `p^precision`, where a root that is
/// simple modulo `p` lifts by Hensel's lemma. For `l` prime to `p` the
/// answer is cross-checked against `l | p - 1`.
pub fn padic_root_check(l: u64, p: u64, precision: u32) -> Result<bool> {
    if l == 0 || precision == 0 || !arith::is_prime(p) {
        return Err(validation("need l >= 1, a prime p and precision >= 1"));
    }
    let modulus = p
        .checked_pow(precision)
        .filter(|&m| m <= PADIC_SEARCH_LIMIT)
        .ok_or_else(|| validation(format!("{p}^{precision} residues exceed the search limit")))?;
    let phi = cyclotomic_polynomial(l);
    let deriv: Vec<BigInt> = phi
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let roots: Vec<u64> = (0..modulus).filter(|&x| eval_mod(&phi, x, modulus) == 0).collect();
    let answer = if roots.is_empty() {
        false
    } else if roots.iter().any(|&x| eval_mod(&deriv, x % p, p) != 0) {
        true
    } else {
        return Err(validation(format!(
            "roots of Φ_{l} modulo {modulus} are all multiple modulo {p}; precision {precision} does not decide"
        )));
    };
    if arith::gcd(l, p) == 1 && answer != (p - 1).is_multiple_of(l) {
        return Err(consistency(format!(
            "root search for l = {l}, p = {p} contradicts l | p - 1"
        )));
    }
    Ok(answer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohom::{CentralizerRecord, RingHypotheses};
    use crate::groups;

    fn sl3z() -> DirectDataSpec {
        let rec = || CentralizerRecord {
            label: None,
            betti_qp: vec![1],
        };
        DirectDataSpec {
            betti: vec![1],
            centralizers: BTreeMap::from([(2, vec![rec(), rec(), rec(), rec()]), (3, vec![rec(), rec()])]),
            ring_hypotheses: Some(RingHypotheses {
                centralizer_cohomology_trivial: true,
                weyl_groups_full: true,
            }),
        }
    }

    fn zeta3() -> CrystalSpec {
        CrystalSpec::new(3, vec![vec![0, -1], vec![1, -1]]).unwrap()
    }

    #[test]
    fn direct_data() {
        let spec = GroupSpec::Direct(sl3z());
        let r = k_rational(&spec).unwrap();
        assert_eq!(r.k0.rational_rank, 1);
        assert_eq!(r.k0.p_adic, BTreeMap::from([(2, 4), (3, 2)]));
        assert_eq!(r.k1, ParityPart::default());
        assert!(matches!(
            ring_structure(&spec).unwrap(),
            RingDescriptor::RationalProduct { .. }
        ));
        let mut no_flags = sl3z();
        no_flags.ring_hypotheses = None;
        assert!(matches!(
            ring_structure(&GroupSpec::Direct(no_flags)).unwrap(),
            RingDescriptor::Absent { .. }
        ));
    }

    #[test]
    fn finite_group() {
        let spec = GroupSpec::FinitePerm(groups::symmetric(3));
        let r = k_rational(&spec).unwrap();
        assert_eq!((r.k0.rational_rank, r.k0.betti.clone()), (1, vec![1]));
        assert_eq!(r.k0.p_adic, BTreeMap::from([(2, 1), (3, 1)]));
        assert_eq!(r.k1, ParityPart::default());
        assert!(torsion_criterion(&r));
        match ring_structure(&spec).unwrap() {
            RingDescriptor::FiniteGroup { per_prime, .. } => {
                assert_eq!(per_prime[&2].constants.c, vec![BigInt::from(-2)]);
                assert_eq!(per_prime[&3].constants.c, vec![BigInt::from(-3)]);
            }
            other => panic!("{other:?}"),
        }
        let trivial = k_rational(&GroupSpec::FinitePerm(groups::cyclic(1))).unwrap();
        assert!(!torsion_criterion(&trivial));
    }

    #[test]
    fn crystallographic() {
        let r = k_rational(&GroupSpec::Crystallographic(zeta3())).unwrap();
        assert_eq!(r.k0.p_adic, BTreeMap::from([(3, 6)]));
        assert_eq!(r.k0.betti, vec![1, 1]);
        assert_eq!(r.k1.rational_rank, 0);
        assert!(r.k1.p_adic.is_empty());
        assert!(r.notes.iter().any(|n| n.kind == "discrepancy"));
        assert!(matches!(
            ring_structure(&GroupSpec::Crystallographic(zeta3())).unwrap(),
            RingDescriptor::Absent { .. }
        ));
        // a fixed line gives the centralizer A^(Z/p) × C = Z × Z/2
        let refl = CrystalSpec::new(2, vec![vec![1, 0], vec![0, -1]]).unwrap();
        let r = k_rational(&GroupSpec::Crystallographic(refl)).unwrap();
        assert_eq!(r.k0.p_adic, BTreeMap::from([(2, 2)]));
        assert_eq!(r.k1.p_adic, BTreeMap::from([(2, 2)]));
        assert!(r.notes.is_empty());
    }

    #[test]
    fn fuchsian_and_one_relator() {
        let f = GroupSpec::Fuchsian(FuchsianSpec {
            genus: 2,
            periods: vec![3, 4],
        });
        let r = k_rational(&f).unwrap();
        assert_eq!((r.k0.rational_rank, r.k1.rational_rank), (2, 4));
        assert_eq!(r.k0.p_adic, BTreeMap::from([(2, 3), (3, 2)]));
        assert!(torsion_criterion(&r));
        assert!(matches!(ring_structure(&f).unwrap(), RingDescriptor::Absent { .. }));
        let surface = k_rational(&GroupSpec::Fuchsian(FuchsianSpec {
            genus: 2,
            periods: vec![],
        }))
        .unwrap();
        assert_eq!(surface.k0.rational_rank, 2);
        assert!(!torsion_criterion(&surface));

        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let o = GroupSpec::OneRelator(OneRelatorSpec {
            generators: names(&["a", "b"]),
            relator: "(ab)^2".into(),
        });
        let r = k_rational(&o).unwrap();
        assert_eq!((r.k0.rational_rank, r.k1.rational_rank), (1, 1));
        assert_eq!(r.k0.p_adic, BTreeMap::from([(2, 1)]));
        match ring_structure(&o).unwrap() {
            RingDescriptor::Absent { reason } => assert_eq!(reason, "W_GC = aut(C) not certified"),
            other => panic!("{other:?}"),
        }
        let torus = GroupSpec::OneRelator(OneRelatorSpec {
            generators: names(&["a", "b"]),
            relator: "a b a^-1 b^-1".into(),
        });
        let r = k_rational(&torus).unwrap();
        assert!(r.k0.p_adic.is_empty() && !torsion_criterion(&r));
    }

    #[test]
    fn parity() {
        let r = k_rational(&GroupSpec::Fuchsian(FuchsianSpec {
            genus: 1,
            periods: vec![2],
        }))
        .unwrap();
        for n in -2..=3 {
            assert_eq!(r.k(n), r.k(n + 2));
        }
        assert_eq!(r.k(-1), &r.k1);
    }

    #[test]
    fn padic_roots() {
        assert!(!padic_root_check(3, 3, 2).unwrap());
        assert!(padic_root_check(4, 5, 1).unwrap());
        assert!(padic_root_check(4, 5, 3).unwrap());
        assert!(padic_root_check(1, 7, 1).unwrap());
        assert!(padic_root_check(2, 2, 3).unwrap());
        assert!(!padic_root_check(4, 2, 2).unwrap());
        for p in [2u64, 3, 5, 7, 11, 13] {
            for l in 1..=12u64 {
                if arith::gcd(l, p) == 1 {
                    assert_eq!(padic_root_check(l, p, 2).unwrap(), (p - 1) % l == 0, "l = {l}, p = {p}");
                }
            }
        }
        assert!(padic_root_check(3, 3, 1).is_err());
        assert!(padic_root_check(0, 3, 1).is_err());
    }
}
