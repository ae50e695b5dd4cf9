//! Truncated inverse systems of finitely generated abelian groups.
//!
//! A term is a subquotient `L / L'` of some `Z^d`, and transition maps and
//! levelwise maps are integer matrices acting on row vectors. Every
//! statement about an inverse system is certified on a finite prefix and
//! reported with explicit witnesses, or as undecided at the given depth.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith;
use crate::error::{validation, Result};
use crate::permgroup::PermGroup;
use crate::report::Report;
use crate::repring::{self, ring_structure_from, sylow_data, RepRing, RingStructure, SylowData};
use crate::zlattice::{product_lattice, snf, IntLattice, IntMatrix};

fn pad(v: &[BigInt], before: usize, after: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); before];
    out.extend_from_slice(v);
    out.extend(std::iter::repeat_n(BigInt::zero(), after));
    out
}

fn lattice_direct_sum(a: &IntLattice, b: &IntLattice) -> IntLattice {
    let (da, db) = (a.ambient(), b.ambient());
    let mut gens: Vec<Vec<BigInt>> = a.basis().iter().map(|r| pad(r, 0, db)).collect();
    gens.extend(b.basis().iter().map(|r| pad(r, da, 0)));
    IntLattice::from_generators(da + db, gens).expect("padded rows have the full width")
}

/// `top / bottom` with `bottom ⊆ top ⊆ Z^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    top: IntLattice,
    bottom: IntLattice,
}

impl Subquotient {
    pub fn new(top: IntLattice, bottom: IntLattice) -> Result<Subquotient> {
        if top.ambient() != bottom.ambient() || !top.contains_lattice(&bottom) {
            return Err(validation("bottom lattice is not contained in the top lattice"));
        }
        Ok(Subquotient { top, bottom })
    }

    pub fn zero(ambient: usize) -> Subquotient {
        Subquotient {
            top: IntLattice::zero(ambient),
            bottom: IntLattice::zero(ambient),
        }
    }

    pub fn free(rank: usize) -> Subquotient {
        Subquotient {
            top: IntLattice::full(rank),
            bottom: IntLattice::zero(rank),
        }
    }

    /// `Z/n_1 ⊕ ... ⊕ Z/n_k` on `Z^k`; an entry 0 gives a copy of `Z`.
    pub fn abelian_group(invariants: &[u64]) -> Subquotient {
        let k = invariants.len();
        let gens = invariants
            .iter()
            .enumerate()
            .map(|(i, &n)| {
                let mut row = vec![BigInt::zero(); k];
                row[i] = BigInt::from(n);
                row
            })
            .collect();
        Subquotient {
            top: IntLattice::full(k),
            bottom: IntLattice::from_generators(k, gens).expect("square"),
        }
    }

    pub fn ambient(&self) -> usize {
        self.top.ambient()
    }

    pub fn top(&self) -> &IntLattice {
        &self.top
    }

    pub fn bottom(&self) -> &IntLattice {
        &self.bottom
    }

    pub fn is_zero(&self) -> bool {
        self.top == self.bottom
    }

    /// Free rank and the torsion invariants different from 1.
    pub fn invariants(&self) -> (usize, Vec<BigInt>) {
        let coords: Vec<Vec<BigInt>> = self
            .bottom
            .basis()
            .iter()
            .map(|r| self.top.coordinates(r).expect("bottom lies in top"))
            .collect();
        let m = IntMatrix::new(self.top.rank(), coords).expect("coordinate rows");
        let s = snf(&m);
        let torsion = s.invariants.iter().filter(|d| !d.is_one()).cloned().collect();
        (self.top.rank() - s.rank, torsion)
    }

    /// Order of the group, `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        let (free, torsion) = self.invariants();
        (free == 0).then(|| torsion.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    pub fn direct_sum(&self, other: &Subquotient) -> Subquotient {
        Subquotient {
            top: lattice_direct_sum(&self.top, &other.top),
            bottom: lattice_direct_sum(&self.bottom, &other.bottom),
        }
    }
}

/// `M_0 <- M_1 <- ... <- M_N`; `maps[n - 1]` is `α_n: M_n -> M_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    terms: Vec<Subquotient>,
    maps: Vec<IntMatrix>,
}

impl Tower {
    pub fn new(terms: Vec<Subquotient>, maps: Vec<IntMatrix>) -> Result<Tower> {
        if terms.is_empty() || maps.len() + 1 != terms.len() {
            return Err(validation("a tower of depth N needs N + 1 terms and N maps"));
        }
        for (i, a) in maps.iter().enumerate() {
            let (src, dst) = (&terms[i + 1], &terms[i]);
            if a.nrows() != src.ambient() || a.ncols() != dst.ambient() {
                return Err(validation(format!("map {} has the wrong shape", i + 1)));
            }
            if !dst.top.contains_lattice(&src.top.image(a)?) || !dst.bottom.contains_lattice(&src.bottom.image(a)?) {
                return Err(validation(format!("map {} is not defined on the quotients", i + 1)));
            }
        }
        Ok(Tower { terms, maps })
    }

    pub fn constant(term: Subquotient, map: IntMatrix, depth: usize) -> Result<Tower> {
        Tower::new(vec![term; depth + 1], vec![map; depth])
    }

    pub fn depth(&self) -> usize {
        self.maps.len()
    }

    pub fn term(&self, n: usize) -> &Subquotient {
        &self.terms[n]
    }

    pub fn terms(&self) -> &[Subquotient] {
        &self.terms
    }

    /// `α_n` for `n >= 1`.
    pub fn transition(&self, n: usize) -> &IntMatrix {
        &self.maps[n - 1]
    }

    /// `α_n^m = α_{m+1} ∘ ... ∘ α_n: M_n -> M_m` for `n >= m`.
    pub fn composite(&self, n: usize, m: usize) -> IntMatrix {
        assert!(m <= n && n <= self.depth(), "composite needs m <= n <= depth");
        let mut acc = IntMatrix::identity(self.terms[n].ambient());
        for k in (m + 1..=n).rev() {
            acc = acc.mul(&self.maps[k - 1]).expect("shapes checked at construction");
        }
        acc
    }

    /// Top lattice of `im(α_n^m) ⊆ M_m`, including the bottom of `M_m`.
    pub fn image_of_composite(&self, n: usize, m: usize) -> Result<IntLattice> {
        self.terms[n]
            .top
            .image(&self.composite(n, m))?
            .sum(&self.terms[m].bottom)
    }

    pub fn direct_sum(&self, other: &Tower) -> Result<Tower> {
        if self.depth() != other.depth() {
            return Err(validation("towers have different depths"));
        }
        let terms = self
            .terms
            .iter()
            .zip(&other.terms)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Tower::new(terms, maps)
    }
}

fn sum_of_towers(towers: &[Tower]) -> Result<Tower> {
    let (first, rest) = towers.split_first().ok_or_else(|| validation("no towers to add"))?;
    rest.iter().try_fold(first.clone(), |acc, t| acc.direct_sum(t))
}

/// Levelwise maps `f_n: M_n -> N_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictMap {
    maps: Vec<IntMatrix>,
}

impl StrictMap {
    pub fn new(maps: Vec<IntMatrix>) -> StrictMap {
        StrictMap { maps }
    }

    pub fn levelwise(m: IntMatrix, depth: usize) -> StrictMap {
        StrictMap {
            maps: vec![m; depth + 1],
        }
    }

    pub fn identity(t: &Tower) -> StrictMap {
        StrictMap {
            maps: t.terms.iter().map(|s| IntMatrix::identity(s.ambient())).collect(),
        }
    }

    pub fn level(&self, n: usize) -> &IntMatrix {
        &self.maps[n]
    }

    pub fn direct_sum(&self, other: &StrictMap) -> StrictMap {
        StrictMap {
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
        }
    }

    pub fn then(&self, other: &StrictMap) -> Result<StrictMap> {
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.mul(b))
            .collect::<Result<_>>()?;
        Ok(StrictMap { maps })
    }

    /// Shapes, well-definedness on quotients and `β_n f_n = f_{n-1} α_n`.
    pub fn validate(&self, source: &Tower, target: &Tower) -> Result<()> {
        if source.depth() != target.depth() || self.maps.len() != source.depth() + 1 {
            return Err(validation("strict map, source and target have different depths"));
        }
        for (n, f) in self.maps.iter().enumerate() {
            let (s, t) = (&source.terms[n], &target.terms[n]);
            if f.nrows() != s.ambient() || f.ncols() != t.ambient() {
                return Err(validation(format!("level {n} has the wrong shape")));
            }
            if !t.top.contains_lattice(&s.top.image(f)?) || !t.bottom.contains_lattice(&s.bottom.image(f)?) {
                return Err(validation(format!("level {n} is not defined on the quotients")));
            }
            if n > 0 {
                let lhs = f.mul(target.transition(n))?;
                let rhs = source.transition(n).mul(&self.maps[n - 1])?;
                let diff = s.top.image(&lhs.sub(&rhs)?)?;
                if !target.terms[n - 1].bottom.contains_lattice(&diff) {
                    return Err(validation(format!(
                        "map does not commute with the transitions at level {n}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Witness pairs `(m, n)` found by a truncated search, and the first level
/// without a witness inside the available depth.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub pairs: Vec<(usize, usize)>,
    pub undecided: Option<usize>,
}

impl Witnesses {
    pub fn certified(&self) -> bool {
        self.undecided.is_none()
    }

    pub fn witness(&self, m: usize) -> Option<usize> {
        self.pairs.iter().find(|(a, _)| *a == m).map(|&(_, n)| n)
    }
}

fn search(levels: usize, depth: usize, mut holds: impl FnMut(usize, usize) -> Result<bool>) -> Result<Witnesses> {
    let mut w = Witnesses::default();
    for m in 0..=levels.min(depth) {
        let mut found = None;
        for n in m..=depth {
            if holds(m, n)? {
                found = Some(n);
                break;
            }
        }
        match found {
            Some(n) => w.pairs.push((m, n)),
            None => {
                w.undecided = Some(m);
                break;
            }
        }
    }
    Ok(w)
}

/// Pro-triviality on levels `m < depth`: some `n >= m` with `α_n^m = 0`.
pub fn is_pro_trivial(t: &Tower) -> Result<Witnesses> {
    is_pro_trivial_to(t, t.depth().saturating_sub(1))
}

pub fn is_pro_trivial_to(t: &Tower, levels: usize) -> Result<Witnesses> {
    if t.depth() == 0 {
        return Ok(Witnesses::default());
    }
    search(levels, t.depth(), |m, n| {
        Ok(t.terms[m]
            .bottom
            .contains_lattice(&t.terms[n].top.image(&t.composite(n, m))?))
    })
}

/// The two conditions for a strict map to be a pro-isomorphism.
pub struct ProIsoCheck<'a> {
    f: &'a StrictMap,
    source: &'a Tower,
    target: &'a Tower,
}

impl<'a> ProIsoCheck<'a> {
    pub fn new(f: &'a StrictMap, source: &'a Tower, target: &'a Tower) -> Result<ProIsoCheck<'a>> {
        f.validate(source, target)?;
        Ok(ProIsoCheck { f, source, target })
    }

    /// `im(β_n^m) ⊆ im(f_m)` and `ker(f_n) ⊆ ker(α_n^m)`.
    pub fn holds(&self, m: usize, n: usize) -> Result<bool> {
        let t_m = &self.target.terms[m];
        let image_f = self.source.terms[m].top.image(&self.f.maps[m])?.sum(&t_m.bottom)?;
        if !image_f.contains_lattice(&self.target.image_of_composite(n, m)?) {
            return Ok(false);
        }
        let s_n = &self.source.terms[n];
        let kernel = s_n.top.preimage(&self.f.maps[n], &self.target.terms[n].bottom)?;
        let pushed = kernel.image(&self.source.composite(n, m))?;
        Ok(self.source.terms[m].bottom.contains_lattice(&pushed))
    }

    pub fn run(&self, levels: usize) -> Result<Witnesses> {
        search(levels, self.source.depth(), |m, n| self.holds(m, n))
    }
}

pub fn pro_iso_check(f: &StrictMap, source: &Tower, target: &Tower, levels: usize) -> Result<Witnesses> {
    ProIsoCheck::new(f, source, target)?.run(levels)
}

/// Levels at which `f_n` fails to be an isomorphism of subquotients.
pub fn levelwise_non_isomorphisms(f: &StrictMap, source: &Tower, target: &Tower) -> Result<Vec<usize>> {
    f.validate(source, target)?;
    let mut bad = Vec::new();
    for n in 0..=source.depth() {
        let (s, t) = (&source.terms[n], &target.terms[n]);
        let onto = s.top.image(&f.maps[n])?.sum(&t.bottom)? == t.top;
        let kernel = s.top.preimage(&f.maps[n], &t.bottom)?;
        if !onto || !s.bottom.contains_lattice(&kernel) {
            bad.push(n);
        }
    }
    Ok(bad)
}

/// `{I_G / I_G^{n+1}}` for `n = 0..=depth` with the canonical projections.
pub fn tower_of_ideal_powers(r: &RepRing, depth: usize) -> Result<Tower> {
    let i = r.augmentation_ideal();
    let mut terms = Vec::with_capacity(depth + 1);
    let mut power = i.clone();
    for _ in 0..=depth {
        terms.push(Subquotient::new(i.clone(), power.clone())?);
        power = product_lattice(&power, &i, r.constants())?;
    }
    Tower::new(terms, vec![IntMatrix::identity(r.dim()); depth])
}

/// Smallest exponents (within a bound) for the four inclusions relating
/// `I_G`, `J = I_{G_p}` and `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exponents {
    pub prime: u64,
    /// `p^a J ⊆ J^2`.
    pub a: Option<usize>,
    /// `J^b ⊆ p J`.
    pub b: Option<usize>,
    /// `J^c ⊆ I_G J`.
    pub c: Option<usize>,
    /// `I_G J ⊆ J^2`.
    pub product_inclusion: bool,
}

impl Exponents {
    pub fn all_found(&self) -> bool {
        self.a.is_some() && self.b.is_some() && self.c.is_some() && self.product_inclusion
    }
}

pub fn find_exponents(r: &RepRing, p: u64, bound: usize) -> Result<Exponents> {
    if !r.group().order().is_multiple_of(p) || !arith::is_prime(p) {
        return Err(validation(format!("{p} is not a prime divisor of the group order")));
    }
    exponents_from(&sylow_data(r, p)?, bound)
}

/// Exponents for a `p`-group, where `I_G = J`.
pub fn find_exponents_for_p_group(g: &PermGroup, bound: usize) -> Result<Exponents> {
    let p = arith::prime_power_base(g.order()).ok_or_else(|| validation("the group order is not a prime power"))?;
    find_exponents(&repring::rep_ring_of(g)?, p, bound)
}

fn exponents_from(data: &SylowData, bound: usize) -> Result<Exponents> {
    if bound < 2 {
        return Err(validation("the exponent bound must be at least 2"));
    }
    let p = BigInt::from(data.prime);
    let mult = data.ring.constants();
    let j = data.ring.augmentation_ideal();
    let mut powers = vec![j.clone()];
    for _ in 1..=bound {
        let next = product_lattice(powers.last().expect("nonempty"), &j, mult)?;
        powers.push(next);
    }
    // powers[k] = J^{k+1}
    let j2 = &powers[1];
    let a = (1..=bound).find(|&a| j2.contains_lattice(&j.scale(&p.pow(a as u32))));
    let pj = j.scale(&p);
    let b = (1..=bound).find(|&b| pj.contains_lattice(&powers[b - 1]));
    let lj = product_lattice(&data.image, &j, mult)?;
    let c = (1..=bound).find(|&c| lj.contains_lattice(&powers[c - 1]));
    let product_inclusion = j2.contains_lattice(&lj);
    Ok(Exponents {
        prime: data.prime,
        a,
        b,
        c,
        product_inclusion,
    })
}

/// The five towers relating `{I_G / I_G^{n+1}}` to `∏_p {L_p / p^n L_p}`,
/// where `L_p = res(I_G) ⊆ R(G_p)` and `J = I_{G_p}`:
///
/// `{I/I^{n+1}} -> ∏ {L/res(I^n) L} -> ∏ {L/(J^n L ∩ L)} <- ∏ {L/(J^{bn} L ∩ L)} -> ∏ {L/p^n L}`.
#[derive(Clone, Debug)]
pub struct IdealChain {
    pub depth: usize,
    pub exponents: Vec<Exponents>,
    pub towers: [Tower; 5],
    /// Maps in the order shown above; the third one starts at `towers[3]`.
    pub maps: [StrictMap; 4],
}

/// Builds the chain to the given depth; `None` when some exponent `b` is not
/// found within `bound`.
pub fn ideal_chain(r: &RepRing, depth: usize, bound: usize) -> Result<Option<IdealChain>> {
    let primes = arith::prime_divisors(r.group().order());
    if primes.is_empty() {
        return Err(validation("the trivial group has no primes to localize at"));
    }
    let t1 = tower_of_ideal_powers(r, depth)?;
    let ideal = r.augmentation_ideal();
    let mut exps = Vec::new();
    let mut per_prime: Vec<[Tower; 4]> = Vec::new();
    let mut res_blocks = IntMatrix::zero(r.dim(), 0);
    for &p in &primes {
        let data = sylow_data(r, p)?;
        let e = exponents_from(&data, bound)?;
        let Some(b) = e.b else {
            exps.push(e);
            return Ok(None);
        };
        exps.push(e);
        let mult = data.ring.constants();
        let l = data.image.clone();
        let j = data.ring.augmentation_ideal();
        let d = data.ring.dim();
        res_blocks = res_blocks.hconcat(&data.restriction.matrix)?;

        // J^k L for k = 0..=b * depth
        let mut jl = vec![l.clone()];
        for _ in 0..b * depth {
            let next = product_lattice(jl.last().expect("nonempty"), &j, mult)?;
            jl.push(next);
        }
        let mut t2 = Vec::new();
        let mut t3 = Vec::new();
        let mut t4 = Vec::new();
        let mut t5 = Vec::new();
        let mut ipow = ideal.clone();
        for n in 0..=depth {
            t2.push(Subquotient::new(l.clone(), ipow.image(&data.restriction.matrix)?)?);
            ipow = product_lattice(&ipow, &ideal, r.constants())?;
            t3.push(Subquotient::new(l.clone(), jl[n].intersection(&l)?)?);
            t4.push(Subquotient::new(l.clone(), jl[b * n].intersection(&l)?)?);
            t5.push(Subquotient::new(l.clone(), l.scale(&BigInt::from(p).pow(n as u32)))?);
        }
        let id = vec![IntMatrix::identity(d); depth];
        per_prime.push([
            Tower::new(t2, id.clone())?,
            Tower::new(t3, id.clone())?,
            Tower::new(t4, id.clone())?,
            Tower::new(t5, id)?,
        ]);
    }
    let gather = |k: usize| -> Result<Tower> {
        let ts: Vec<Tower> = per_prime.iter().map(|a| a[k].clone()).collect();
        sum_of_towers(&ts)
    };
    let towers = [t1, gather(0)?, gather(1)?, gather(2)?, gather(3)?];
    let id = StrictMap::identity(&towers[1]);
    let maps = [StrictMap::levelwise(res_blocks, depth), id.clone(), id.clone(), id];
    Ok(Some(IdealChain {
        depth,
        exponents: exps,
        towers,
        maps,
    }))
}

const CHAIN_PAIRS: [(usize, usize); 4] = [(0, 1), (1, 2), (3, 2), (3, 4)];

const CHAIN_LABELS: [&str; 4] = [
    "I/I^(n+1) -> L/res(I^n)L",
    "L/res(I^n)L -> L/J^n L",
    "L/J^(bn) L -> L/J^n L",
    "L/J^(bn) L -> L/p^n L",
];

/// Search depth used so that witnesses for levels up to `levels` fit.
fn chain_depth(levels: usize, exps: &[Exponents]) -> usize {
    let k = exps
        .iter()
        .map(|e| {
            let (a, b, c) = (e.a.unwrap_or(1), e.b.unwrap_or(1), e.c.unwrap_or(1));
            (a * b).max(b).max(c)
        })
        .max()
        .unwrap_or(1)
        + 1;
    k * (levels + 1) + 1
}

/// Certifies each map of the ideal chain as a pro-isomorphism on levels
/// `0..=levels`, and the splitting `{Z} ⊕ {I/I^n} ≅ {R/I^n}` levelwise.
pub fn verify_ideal_chain(r: &RepRing, levels: usize, bound: usize) -> Result<Report> {
    let mut report = Report::new(format!("ideal power chain (|G| = {})", r.group().order()));
    if levels < 2 {
        return Err(validation("the chain needs at least two levels"));
    }
    if r.group().order() == 1 {
        report.note("trivial group: every tower is zero");
        report.absorb(verify_unit_splitting(r, levels)?);
        return Ok(report);
    }
    let primes = arith::prime_divisors(r.group().order());
    let exps: Vec<Exponents> = primes
        .iter()
        .map(|&p| find_exponents(r, p, bound))
        .collect::<Result<_>>()?;
    for e in &exps {
        report.note(format!("p = {}: a = {:?}, b = {:?}, c = {:?}", e.prime, e.a, e.b, e.c));
    }
    // deepen geometrically; only the full slack depth can report inconclusive
    let max_depth = chain_depth(levels, &exps);
    let mut depth = (levels + 2).min(max_depth);
    loop {
        let Some(chain) = ideal_chain(r, depth, bound)? else {
            report.inconclusive(format!("exponent b not found within bound {bound}"));
            return Ok(report);
        };
        let mut notes = Vec::new();
        let mut open = Vec::new();
        let mut failed = Vec::new();
        for (k, &(s, t)) in CHAIN_PAIRS.iter().enumerate() {
            let w = match pro_iso_check(&chain.maps[k], &chain.towers[s], &chain.towers[t], levels) {
                Ok(w) => w,
                Err(e) => {
                    failed.push(format!("{}: {e}", CHAIN_LABELS[k]));
                    continue;
                }
            };
            match w.undecided {
                None => {
                    let ns: Vec<usize> = w.pairs.iter().map(|p| p.1).collect();
                    notes.push(format!("{}: witnesses {ns:?}", CHAIN_LABELS[k]));
                }
                Some(level) => open.push(format!(
                    "{}: no witness for level {level} within depth {depth}",
                    CHAIN_LABELS[k]
                )),
            }
        }
        if open.is_empty() || !failed.is_empty() || depth == max_depth {
            notes.into_iter().for_each(|n| report.note(n));
            failed.into_iter().for_each(|n| report.fail(n));
            open.into_iter().for_each(|n| report.inconclusive(n));
            report.note(format!("search depth {depth}"));
            break;
        }
        depth = (2 * depth).min(max_depth);
    }
    report.absorb(verify_unit_splitting(r, levels)?);
    Ok(report)
}

/// `(m, x) -> m·1 + x` from `Z ⊕ I/I^n` to `R/I^n` for `n = 1..=levels + 1`.
pub fn verify_unit_splitting(r: &RepRing, levels: usize) -> Result<Report> {
    let mut report = Report::new("unit splitting");
    let k = r.dim();
    let i = r.augmentation_ideal();
    let mut src = Vec::new();
    let mut dst = Vec::new();
    let mut power = i.clone();
    for _ in 0..=levels {
        let z = Subquotient::free(1);
        src.push(z.direct_sum(&Subquotient::new(i.clone(), power.clone())?));
        dst.push(Subquotient::new(IntLattice::full(k), power.clone())?);
        power = product_lattice(&power, &i, r.constants())?;
    }
    let source = Tower::new(src, vec![IntMatrix::identity(k + 1); levels])?;
    let target = Tower::new(dst, vec![IntMatrix::identity(k); levels])?;
    let mut rows = vec![r.one()];
    rows.extend(IntMatrix::identity(k).into_rows());
    let f = StrictMap::levelwise(IntMatrix::new(k, rows)?, levels);
    match levelwise_non_isomorphisms(&f, &source, &target) {
        Ok(bad) => report.check(bad.is_empty(), || format!("not an isomorphism at levels {bad:?}")),
        Err(e) => report.fail(e.to_string()),
    }
    Ok(report)
}

/// `lim` and `lim^1` of a truncated tower whose stable images are reached
/// and whose restricted transitions are eventually isomorphisms.
///
/// On such a prefix the shift map `(x_n) -> (x_n - α_{n+1} x_{n+1})` on the
/// stable images is onto and its kernel projects isomorphically to the
/// stable image at `level`, so `lim^1 = 0` and `lim` is that image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub level: usize,
    pub lim: Subquotient,
    pub lim1_is_zero: bool,
}

/// Why the limits of a truncated tower could not be read off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitsUndecided {
    /// The images `im(α_n^m)` are still shrinking at the top of the prefix.
    NotStable { level: usize },
    /// The stable images never become isomorphic to each other.
    NotConstant,
}

pub fn limits(t: &Tower) -> Result<std::result::Result<Limits, LimitsUndecided>> {
    let n = t.depth();
    if n < 2 {
        return Err(validation("limits need a tower of depth at least 2"));
    }
    let mut stable = Vec::with_capacity(n - 1);
    for m in 0..n - 1 {
        let at_top = t.image_of_composite(n, m)?;
        if t.image_of_composite(n - 1, m)? != at_top {
            return Ok(Err(LimitsUndecided::NotStable { level: m }));
        }
        stable.push(Subquotient::new(at_top, t.terms[m].bottom.clone())?);
    }
    // smallest level from which every restricted transition is injective
    let mut level = stable.len() - 1;
    while level > 0 {
        let src = &stable[level];
        let kernel = src.top.preimage(t.transition(level), &stable[level - 1].bottom)?;
        if !src.bottom.contains_lattice(&kernel) {
            break;
        }
        level -= 1;
    }
    if level + 1 >= stable.len() && stable.len() > 1 {
        return Ok(Err(LimitsUndecided::NotConstant));
    }
    Ok(Ok(Limits {
        level,
        lim: stable[level].clone(),
        lim1_is_zero: true,
    }))
}

/// `0 -> M' -f-> M -g-> M'' -> 0`.
#[derive(Clone, Debug)]
pub struct ShortSequence {
    pub left: Tower,
    pub middle: Tower,
    pub right: Tower,
    pub f: StrictMap,
    pub g: StrictMap,
}

impl ShortSequence {
    pub fn kernel_of_f(&self) -> Result<Tower> {
        let terms = (0..=self.left.depth())
            .map(|n| {
                let s = self.left.term(n);
                let k = s.top.preimage(self.f.level(n), &self.middle.term(n).bottom)?;
                Subquotient::new(k, s.bottom.clone())
            })
            .collect::<Result<_>>()?;
        Tower::new(terms, self.left.maps.clone())
    }

    pub fn homology(&self) -> Result<Tower> {
        let terms = (0..=self.middle.depth())
            .map(|n| {
                let s = self.middle.term(n);
                let k = s.top.preimage(self.g.level(n), &self.right.term(n).bottom)?;
                let im = self.left.term(n).top.image(self.f.level(n))?.sum(&s.bottom)?;
                Subquotient::new(k, im)
            })
            .collect::<Result<_>>()?;
        Tower::new(terms, self.middle.maps.clone())
    }

    pub fn cokernel_of_g(&self) -> Result<Tower> {
        let terms = (0..=self.right.depth())
            .map(|n| {
                let t = self.right.term(n);
                let im = self.middle.term(n).top.image(self.g.level(n))?.sum(&t.bottom)?;
                Subquotient::new(t.top.clone(), im)
            })
            .collect::<Result<_>>()?;
        Tower::new(terms, self.right.maps.clone())
    }
}

fn describe(s: &Subquotient) -> String {
    let (free, torsion) = s.invariants();
    let mut parts: Vec<String> = std::iter::repeat_n("Z".to_string(), free).collect();
    parts.extend(torsion.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Pro-exactness of a short sequence, then the six-term `lim`/`lim^1`
/// sequence checked map by map on the stable images.
pub fn six_term_check(seq: &ShortSequence) -> Result<Report> {
    let mut report = Report::new("six-term lim sequence");
    seq.f.validate(&seq.left, &seq.middle)?;
    seq.g.validate(&seq.middle, &seq.right)?;
    let depth = seq.middle.depth();
    for n in 0..=depth {
        let fg = seq.f.level(n).mul(seq.g.level(n))?;
        let img = seq.left.term(n).top.image(&fg)?;
        report.check(seq.right.term(n).bottom.contains_lattice(&img), || {
            format!("g f is not zero at level {n}")
        });
    }
    for (label, tower) in [
        ("ker f", seq.kernel_of_f()?),
        ("ker g / im f", seq.homology()?),
        ("coker g", seq.cokernel_of_g()?),
    ] {
        let w = is_pro_trivial(&tower)?;
        if !w.certified() {
            report.inconclusive(format!("{label} not certified pro-trivial at depth {depth}"));
        }
    }
    if !report.passed() {
        return Ok(report);
    }
    let mut lims = Vec::new();
    for (label, tower) in [("M'", &seq.left), ("M", &seq.middle), ("M''", &seq.right)] {
        match limits(tower)? {
            Ok(l) => {
                report.note(format!("lim {label} = {}, lim^1 {label} = 0", describe(&l.lim)));
                lims.push(l);
            }
            Err(reason) => {
                report.inconclusive(format!("{label}: limits undecided at depth {depth} ({reason:?})"));
                return Ok(report);
            }
        }
    }
    let level = lims.iter().map(|l| l.level).max().expect("three towers");
    // stable images at a common level
    let at = |t: &Tower| -> Result<Subquotient> {
        Subquotient::new(t.image_of_composite(t.depth(), level)?, t.term(level).bottom.clone())
    };
    let (a, b, c) = (at(&seq.left)?, at(&seq.middle)?, at(&seq.right)?);
    let (f, g) = (seq.f.level(level), seq.g.level(level));
    let f_img = a.top.image(f)?.sum(&b.bottom)?;
    report.check(b.top.contains_lattice(&f_img), || "lim f leaves lim M".into());
    let f_ker = a.top.preimage(f, &b.bottom)?;
    report.check(a.bottom.contains_lattice(&f_ker), || {
        "lim M' -> lim M is not injective".into()
    });
    let g_ker = b.top.preimage(g, &c.bottom)?;
    report.check(g_ker == f_img, || "sequence of limits is not exact at lim M".into());
    let g_img = b.top.image(g)?.sum(&c.bottom)?;
    report.check(g_img == c.top, || {
        "lim M -> lim M'' is not onto, so lim^1 M' would be nonzero".into()
    });
    if let (Some(x), Some(y), Some(z)) = (a.order(), b.order(), c.order()) {
        report.check(&x * &z == y, || "orders of the limits are not multiplicative".into());
    }
    Ok(report)
}

/// `0 -> I -> R(G) -> Z -> 0` gives the pro-exact sequence
/// `{I/I^n I} -> {R/I^n R} -> {Z/I^n Z}` for `n >= 1`.
pub fn verify_augmentation_sequence(r: &RepRing, depth: usize) -> Result<Report> {
    let mut report = Report::new("augmentation sequence of ideal-adic towers");
    let k = r.dim();
    let i = r.augmentation_ideal();
    let mut left = Vec::new();
    let mut middle = Vec::new();
    let mut power = i.clone();
    for _ in 0..=depth {
        let next = product_lattice(&power, &i, r.constants())?;
        left.push(Subquotient::new(i.clone(), next.clone())?);
        middle.push(Subquotient::new(IntLattice::full(k), power.clone())?);
        power = next;
    }
    let seq = ShortSequence {
        left: Tower::new(left, vec![IntMatrix::identity(k); depth])?,
        middle: Tower::new(middle, vec![IntMatrix::identity(k); depth])?,
        right: Tower::constant(Subquotient::free(1), IntMatrix::identity(1), depth)?,
        f: StrictMap::levelwise(IntMatrix::identity(k), depth),
        g: StrictMap::levelwise(
            IntMatrix::new(1, r.augmentation().iter().map(|d| vec![d.clone()]).collect())?,
            depth,
        ),
    };
    seq.f.validate(&seq.left, &seq.middle)?;
    seq.g.validate(&seq.middle, &seq.right)?;
    for (label, tower) in [
        ("ker", seq.kernel_of_f()?),
        ("middle homology", seq.homology()?),
        ("coker", seq.cokernel_of_g()?),
    ] {
        let w = is_pro_trivial(&tower)?;
        report.check(w.certified(), || {
            format!("{label} is not pro-trivial within depth {depth}")
        });
    }
    Ok(report)
}

/// `K^0(BG) ≅ Z × ∏_p (Z_p^)^{r(p)}` with the ring structure on each `I_p(G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KZeroDescriptor {
    pub free_rank_z: usize,
    pub p_adic_ranks: BTreeMap<u64, usize>,
    pub ring: BTreeMap<u64, RingStructure>,
    pub k1_is_zero: bool,
}

pub fn completed_k0(g: &PermGroup) -> Result<KZeroDescriptor> {
    let r = repring::rep_ring_of(g)?;
    let mut p_adic_ranks = BTreeMap::new();
    let mut ring = BTreeMap::new();
    for p in arith::prime_divisors(g.order()) {
        let data = sylow_data(&r, p)?;
        let by_classes = r.table().classes().con_p(p)?.len();
        if data.image.rank() != by_classes {
            return Err(crate::error::consistency(format!(
                "prime {p}: {by_classes} classes but restriction image of rank {}",
                data.image.rank()
            )));
        }
        p_adic_ranks.insert(p, by_classes);
        ring.insert(p, ring_structure_from(&data)?);
    }
    Ok(KZeroDescriptor {
        free_rank_z: 1,
        p_adic_ranks,
        ring,
        k1_is_zero: true,
    })
}
