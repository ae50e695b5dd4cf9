//! End-to-end assembly across the supported families.

use std::collections::BTreeMap;

use kbg_core::assemble::{k_rational, ring_structure, torsion_criterion, GroupSpec, RingDescriptor};
use kbg_core::chartab::character_table_with_seed;
use kbg_core::cohom::{CentralizerRecord, DirectDataSpec, FuchsianSpec, OneRelatorSpec};
use kbg_core::groups;
use kbg_core::promod::completed_k0;
use kbg_core::repring::rep_ring;
use proptest::prelude::*;

fn p_part(m: u64, p: u64) -> u64 {
    let mut q = 1;
    let mut m = m;
    while m.is_multiple_of(p) {
        m /= p;
        q *= p;
    }
    q
}

#[test]
fn finite_groups_agree_with_completed_k0() {
    for (name, g) in groups::corpus(24) {
        let r = k_rational(&GroupSpec::FinitePerm(g.clone())).unwrap();
        let k0 = completed_k0(&g).unwrap();
        let ranks: BTreeMap<u64, u64> = k0.p_adic_ranks.iter().map(|(&p, &n)| (p, n as u64)).collect();
        assert_eq!(r.k0.p_adic, ranks, "{name}");
        assert_eq!(r.k0.rational_rank, 1, "{name}");
        assert_eq!(r.k1.rational_rank, 0, "{name}");
        // every class of p-power elements contributes one factor
        let total: u64 = r.k0.p_adic.values().sum();
        let classes = g.conjugacy_classes().unwrap();
        let prime_power = classes
            .iter()
            .filter(|c| c.element_order > 1 && kbg_core::arith::prime_power_base(c.element_order).is_some())
            .count() as u64;
        assert_eq!(total, prime_power, "{name}");
    }
}

#[test]
fn direct_data_round_trip() {
    let record = |b: Vec<u64>| CentralizerRecord {
        label: None,
        betti_qp: b,
    };
    let d = DirectDataSpec {
        betti: vec![1, 2, 3],
        centralizers: BTreeMap::from([
            (2, vec![record(vec![1, 1]), record(vec![1])]),
            (5, vec![record(vec![1, 0, 2])]),
        ]),
        ring_hypotheses: None,
    };
    let r = k_rational(&GroupSpec::Direct(d)).unwrap();
    assert_eq!((r.k0.betti.clone(), r.k1.betti.clone()), (vec![1, 3], vec![2]));
    assert_eq!(r.k0.p_adic, BTreeMap::from([(2, 2), (5, 3)]));
    assert_eq!(r.k1.p_adic, BTreeMap::from([(2, 1)]));
    assert!(matches!(
        ring_structure(&GroupSpec::Direct(DirectDataSpec {
            betti: vec![1],
            centralizers: BTreeMap::new(),
            ring_hypotheses: None,
        }))
        .unwrap(),
        RingDescriptor::Absent { .. }
    ));
}

#[test]
fn character_tables_do_not_depend_on_the_seed() {
    for name in ["S3", "D4", "Q8", "A4"] {
        let g = groups::by_name(name).unwrap();
        let a = rep_ring(&character_table_with_seed(&g, 1).unwrap()).unwrap();
        let b = rep_ring(&character_table_with_seed(&g, 99).unwrap()).unwrap();
        assert_eq!(a.constants(), b.constants(), "{name}");
    }
}

#[test]
fn one_relator_torsion_follows_multiplicity() {
    let gens = vec!["x".to_string(), "y".to_string()];
    for (relator, torsion) in [
        ("x^4", true),
        ("(x y^2)^3", true),
        ("x y x^-1 y^-1", false),
        ("x^2 y^3", false),
    ] {
        let spec = OneRelatorSpec {
            generators: gens.clone(),
            relator: relator.into(),
        };
        let r = k_rational(&GroupSpec::OneRelator(spec)).unwrap();
        assert_eq!(torsion_criterion(&r), torsion, "{relator}");
    }
}

proptest! {
    #[test]
    fn fuchsian_p_adic_ranks(genus in 0u64..4, periods in proptest::collection::vec(2u64..30, 0..5)) {
        let spec = FuchsianSpec { genus, periods: periods.clone() };
        prop_assume!(spec.validate().is_ok());
        let r = k_rational(&GroupSpec::Fuchsian(spec)).unwrap();
        prop_assert_eq!(r.k1.rational_rank, 2 * genus);
        prop_assert_eq!(r.k0.rational_rank, 2);
        for (&p, &n) in &r.k0.p_adic {
            let expected: u64 = periods.iter().map(|&m| p_part(m, p) - 1).sum();
            prop_assert_eq!(n, expected);
        }
        prop_assert_eq!(torsion_criterion(&r), !periods.is_empty());
    }

    #[test]
    fn parity_only_matters(n in -40i64..40) {
        let spec = FuchsianSpec { genus: 3, periods: vec![2, 9] };
        let r = k_rational(&GroupSpec::Fuchsian(spec)).unwrap();
        prop_assert_eq!(r.k(n), r.k(n + 2));
        prop_assert_eq!(r.k(n), if n % 2 == 0 { &r.k0 } else { &r.k1 });
    }
}
