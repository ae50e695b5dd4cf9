//! The verifier corpus: every named check over the catalog groups, run in
//! parallel and reported in a fixed order.

use kbg_core::arith;
use kbg_core::assemble::padic_root_check;
use kbg_core::chartab::{character_table_with_seed, verify_orthogonality};
use kbg_core::groups;
use kbg_core::permgroup::{two_generated_subgroups, PermGroup};
use kbg_core::promod::{
    find_exponents_for_p_group, limits, six_term_check, verify_augmentation_sequence, verify_ideal_chain,
    ShortSequence, StrictMap, Subquotient, Tower,
};
use kbg_core::report::{Report, Status};
use kbg_core::repring::{
    r_p, rep_ring, t_rank, verify_double_coset, verify_localized_images, verify_sylow_double_cosets,
    verify_sylow_product, verify_theta, verify_theta_module, CyclicData, RepRing,
};
use kbg_core::zlattice::IntMatrix;
use kbg_core::Result;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::exit;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfcheckOptions {
    pub max_order: u64,
    /// Levels certified for the ideal-power chain and the six-term towers.
    pub depth: usize,
    /// Power `m` up to which the Sylow-product kernel is tested against `I^m`.
    pub kernel_power: usize,
    /// Seed for the random choices of the character-table algorithm.
    pub seed: u64,
    /// Largest group order on which subgroup-pair double cosets are checked.
    pub double_coset_max_order: u64,
    pub fault: Option<Fault>,
}

impl Default for SelfcheckOptions {
    fn default() -> SelfcheckOptions {
        SelfcheckOptions {
            max_order: 24,
            depth: 6,
            kernel_power: 8,
            seed: 0,
            double_coset_max_order: 12,
            fault: None,
        }
    }
}

/// Deliberate corruptions used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to a structure constant of `R(S3)` before it is verified.
    StructureConstant,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub failures: Vec<String>,
    pub inconclusive: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfcheckReport {
    pub status: Status,
    pub checks: Vec<CheckResult>,
}

impl SelfcheckReport {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => exit::PASS,
            Status::Fail => exit::FAIL,
            Status::Inconclusive => exit::INCONCLUSIVE,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

type Job = Box<dyn Fn() -> Result<Report> + Send + Sync>;

fn ring_of(g: &PermGroup, seed: u64) -> Result<RepRing> {
    rep_ring(&character_table_with_seed(g, seed)?)
}

/// Nontrivial cyclic `p`-group test.
fn is_cyclic_p_group(h: &PermGroup) -> Result<bool> {
    Ok(h.order() > 1 && arith::prime_power_base(h.order()).is_some() && h.is_cyclic()?)
}

fn group_jobs(name: &str, g: &PermGroup, opts: &SelfcheckOptions) -> Vec<(String, Job)> {
    let mut jobs: Vec<(String, Job)> = Vec::new();
    let seed = opts.seed;
    let mut add = |check: &str, f: Job| jobs.push((format!("{check}/{name}"), f));

    let h = g.clone();
    add(
        "orthogonality",
        Box::new(move || Ok(verify_orthogonality(&character_table_with_seed(&h, seed)?))),
    );

    let h = g.clone();
    let fault = opts.fault;
    let corrupt = name == "S3";
    add(
        "rep_ring",
        Box::new(move || {
            let mut r = ring_of(&h, seed)?;
            if corrupt && fault == Some(Fault::StructureConstant) {
                let v = r.constants().c[(r.dim() + 1) * r.dim() + 1].clone();
                r.set_constant(1, 1, 1, v + 1);
            }
            Ok(r.verify())
        }),
    );

    let h = g.clone();
    add(
        "r_p",
        Box::new(move || {
            let r = ring_of(&h, seed)?;
            let mut rep = Report::new("r_p by class count and by restriction image");
            for p in arith::prime_divisors(h.order()) {
                let classes = h.con_p(p)?.len();
                match r_p(&r, p) {
                    Ok(rank) => rep.check(rank == classes, || format!("p = {p}: rank {rank}, {classes} classes")),
                    Err(e) => rep.fail(format!("p = {p}: {e}")),
                }
            }
            Ok(rep)
        }),
    );

    let h = g.clone();
    add(
        "localized_images",
        Box::new(move || {
            let r = ring_of(&h, seed)?;
            let mut rep = Report::new("images of I_G and I_{G_p} after restriction");
            for p in arith::prime_divisors(h.order()) {
                rep.absorb(verify_localized_images(&r, p)?);
            }
            Ok(rep)
        }),
    );

    let h = g.clone();
    add(
        "sylow_double_cosets",
        Box::new(move || {
            let t = character_table_with_seed(&h, seed)?;
            let mut primes = arith::prime_divisors(h.order());
            let spare = (2..)
                .find(|&q| arith::is_prime(q) && !h.order().is_multiple_of(q))
                .expect("primes are infinite");
            primes.push(spare);
            let mut rep = Report::new("Sylow double cosets");
            for &p in &primes {
                for &q in &primes {
                    if p != q {
                        rep.absorb(verify_sylow_double_cosets(&t, p, q)?);
                    }
                }
            }
            Ok(rep)
        }),
    );

    let h = g.clone();
    let power = opts.kernel_power;
    add(
        "sylow_product",
        Box::new(move || verify_sylow_product(&ring_of(&h, seed)?, power)),
    );

    let h = g.clone();
    add(
        "t_rank",
        Box::new(move || {
            let mut rep = Report::new("T_H on subgroup classes");
            for sub in two_generated_subgroups(&h)? {
                // the trivial subgroup contributes the constants
                let expected = if sub.order() == 1 {
                    1
                } else if is_cyclic_p_group(&sub)? {
                    arith::euler_phi(sub.order()) as usize
                } else {
                    0
                };
                let got = t_rank(&sub)?.rank;
                rep.check(got == expected, || {
                    format!("subgroup of order {}: rank {got}, expected {expected}", sub.order())
                });
            }
            Ok(rep)
        }),
    );

    if g.order() <= opts.double_coset_max_order {
        let h = g.clone();
        add(
            "double_coset",
            Box::new(move || {
                let subs = two_generated_subgroups(&h)?;
                let mut rep = Report::new("double coset formula on subgroup pairs");
                for a in &subs {
                    for b in &subs {
                        rep.absorb(verify_double_coset(&h, a, b)?);
                    }
                }
                Ok(rep)
            }),
        );
    }

    let h = g.clone();
    let depth = opts.depth;
    add(
        "ideal_chain",
        Box::new(move || verify_ideal_chain(&ring_of(&h, seed)?, depth, 12)),
    );

    let h = g.clone();
    add(
        "augmentation_sequence",
        Box::new(move || verify_augmentation_sequence(&ring_of(&h, seed)?, depth)),
    );

    if g.order() > 1 && arith::prime_power_base(g.order()).is_some() && g.is_cyclic().unwrap_or(false) {
        let h = g.clone();
        add(
            "theta",
            Box::new(move || {
                let c = CyclicData::new(h.clone())?;
                let mut rep = verify_theta(&c)?;
                rep.absorb(verify_theta_module(&c)?);
                Ok(rep)
            }),
        );
        let h = g.clone();
        add(
            "exponents",
            Box::new(move || {
                // b is the nilpotency index of y in F_p[y]/(y^|C|), so b = |C|
                let order = h.order() as usize;
                let e = find_exponents_for_p_group(&h, order.max(12))?;
                let mut rep = Report::new("exponents a, b, c");
                rep.note(format!("a = {:?}, b = {:?}, c = {:?}", e.a, e.b, e.c));
                rep.check(e.all_found(), || format!("some exponent exceeds {}", order.max(12)));
                rep.check(e.b == Some(order), || format!("b = {:?}, expected {order}", e.b));
                Ok(rep)
            }),
        );
    }
    jobs
}

fn constant_tower(n: u64, map: i64, depth: usize) -> Result<Tower> {
    Tower::constant(
        Subquotient::abelian_group(&[n]),
        IntMatrix::from_i64(1, &[&[map]]),
        depth,
    )
}

/// The three finite-tower examples for the lim/lim¹ six-term sequence.
pub fn six_term_examples(depth: usize) -> Result<Report> {
    let mut rep = Report::new("lim/lim¹ six-term sequence");
    let seq = ShortSequence {
        left: constant_tower(2, 1, depth)?,
        middle: constant_tower(4, 1, depth)?,
        right: constant_tower(2, 1, depth)?,
        f: StrictMap::levelwise(IntMatrix::from_i64(1, &[&[2]]), depth),
        g: StrictMap::levelwise(IntMatrix::from_i64(1, &[&[1]]), depth),
    };
    rep.absorb(six_term_check(&seq)?);

    match limits(&constant_tower(2, 0, depth)?)? {
        Ok(l) => rep.check(l.lim.is_zero() && l.lim1_is_zero, || {
            "zero-map tower has nonzero limits".into()
        }),
        Err(e) => rep.inconclusive(format!("zero-map tower: {e:?}")),
    }
    let z = Tower::constant(Subquotient::free(1), IntMatrix::identity(1), depth)?;
    match limits(&z)? {
        Ok(l) => rep.check(
            l.lim.invariants() == (1, Vec::<BigInt>::new()) && l.lim1_is_zero,
            || "constant Z tower does not have lim = Z, lim¹ = 0".into(),
        ),
        Err(e) => rep.inconclusive(format!("constant Z tower: {e:?}")),
    }
    Ok(rep)
}

/// Primitive roots of unity in `Z_p^` against the Teichmüller criterion.
pub fn padic_battery() -> Result<Report> {
    let mut rep = Report::new("p-adic roots of unity");
    rep.check(!padic_root_check(3, 3, 2)?, || {
        "found a primitive cube root of unity modulo 9".into()
    });
    rep.check(padic_root_check(4, 5, 2)?, || "no square root of -1 in Z_5^".into());
    for p in [2u64, 3, 5, 7, 11, 13] {
        rep.check(padic_root_check(1, p, 1)?, || {
            format!("1 is not a root of unity at p = {p}")
        });
        for l in 2..=12u64 {
            if arith::gcd(l, p) == 1 {
                let got = padic_root_check(l, p, 2)?;
                rep.check(got == ((p - 1) % l == 0), || format!("l = {l}, p = {p}: got {got}"));
            }
        }
    }
    Ok(rep)
}

pub fn selfcheck(opts: &SelfcheckOptions) -> SelfcheckReport {
    let mut jobs: Vec<(String, Job)> = Vec::new();
    for (name, g) in groups::corpus(opts.max_order) {
        jobs.extend(group_jobs(&name, &g, opts));
    }
    let depth = opts.depth;
    jobs.push(("six_term".into(), Box::new(move || six_term_examples(depth))));
    jobs.push(("padic_roots".into(), Box::new(padic_battery)));

    let checks: Vec<CheckResult> = jobs
        .par_iter()
        .map(|(name, job)| {
            let rep = job().unwrap_or_else(|e| {
                let mut r = Report::new(name.clone());
                r.fail(e.to_string());
                r
            });
            CheckResult {
                name: name.clone(),
                status: rep.status(),
                failures: rep.failures,
                inconclusive: rep.inconclusive,
            }
        })
        .collect();
    let status = if checks.iter().any(|c| c.status == Status::Fail) {
        Status::Fail
    } else if checks.iter().any(|c| c.status == Status::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    SelfcheckReport { status, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_corpus_passes() {
        let opts = SelfcheckOptions {
            max_order: 6,
            depth: 3,
            kernel_power: 4,
            ..SelfcheckOptions::default()
        };
        let rep = selfcheck(&opts);
        let bad: Vec<_> = rep.checks.iter().filter(|c| c.status != Status::Pass).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert_eq!(rep.exit_code(), exit::PASS);
        assert!(rep.check("theta/C4").is_some());
        assert!(rep.check("six_term").is_some());
    }

    #[test]
    fn injected_fault_is_named() {
        let opts = SelfcheckOptions {
            max_order: 6,
            depth: 2,
            kernel_power: 2,
            fault: Some(Fault::StructureConstant),
            ..SelfcheckOptions::default()
        };
        let rep = selfcheck(&opts);
        assert_eq!(rep.status, Status::Fail);
        assert_eq!(rep.exit_code(), exit::FAIL);
        let failed: Vec<&str> = rep
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failed, vec!["rep_ring/S3"]);
    }
}
