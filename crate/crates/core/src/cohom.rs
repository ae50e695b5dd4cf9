//! Rational cohomology inputs for the infinite group families: split
//! crystallographic groups `Z^n ⋊ Z/p`, cocompact Fuchsian groups,
//! one-relator groups, and groups supplied directly as Betti data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{consistency, validation, Result};
use crate::groups;
use crate::promod::Subquotient;
use crate::zlattice::{determinant, hnf, kernel_lattice, IntMatrix};

/// Betti numbers `b_0, b_1, ...` with finite support.
pub type Betti = Vec<u64>;

/// `A = Z^n` with a generator of `Z/p` acting by `sigma` on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrystalSpec {
    pub p: u64,
    pub sigma: Vec<Vec<i64>>,
}

impl CrystalSpec {
    pub fn new(p: u64, sigma: Vec<Vec<i64>>) -> Result<CrystalSpec> {
        let spec = CrystalSpec { p, sigma };
        spec.validate()?;
        Ok(spec)
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn matrix(&self) -> Result<IntMatrix> {
        let n = self.rank();
        let rows = self
            .sigma
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::new(n, rows)
    }

    /// Square, `sigma^p = 1` and `sigma != 1`; the rank-0 lattice is allowed.
    pub fn validate(&self) -> Result<()> {
        if !arith::is_prime(self.p) {
            return Err(validation(format!("p = {} is not prime", self.p)));
        }
        let n = self.rank();
        if let Some(i) = self.sigma.iter().position(|r| r.len() != n) {
            return Err(validation(format!(
                "sigma row {i} has length {} instead of {n}",
                self.sigma[i].len()
            )));
        }
        if n == 0 {
            return Ok(());
        }
        let m = self.matrix()?;
        let id = IntMatrix::identity(n);
        if m == id {
            return Err(validation("sigma is the identity"));
        }
        if m.pow(self.p as u32)? != id {
            return Err(validation(format!("sigma^{} is not the identity", self.p)));
        }
        Ok(())
    }
}

/// Elementary symmetric functions of the eigenvalues of `m` from the traces
/// of its powers (Newton's identities); `e_k = trace(Λ^k m)`.
pub fn exterior_traces(m: &IntMatrix) -> Result<Vec<BigInt>> {
    let n = m.nrows();
    let mut power_sums = Vec::with_capacity(n);
    let mut pw = IntMatrix::identity(n);
    for _ in 0..n {
        pw = pw.mul(m)?;
        power_sums.push((0..n).map(|i| pw.get(i, i).clone()).sum::<BigInt>());
    }
    let mut e = vec![BigInt::one()];
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &power_sums[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (q, r) = (&acc / BigInt::from(k), &acc % BigInt::from(k));
        if !r.is_zero() {
            return Err(consistency("Newton identity produced a non-integer"));
        }
        e.push(q);
    }
    Ok(e)
}

/// `b_k = dim (Λ^k V*)^{Z/p}` by averaging exterior traces over `σ^j`.
pub fn betti_crystallographic(spec: &CrystalSpec) -> Result<Betti> {
    spec.validate()?;
    let n = spec.rank();
    let m = spec.matrix()?;
    let mut sums = vec![BigInt::zero(); n + 1];
    let mut pw = IntMatrix::identity(n);
    for _ in 0..spec.p {
        for (s, t) in sums.iter_mut().zip(exterior_traces(&pw)?) {
            *s += t;
        }
        pw = pw.mul(&m)?;
    }
    let p = BigInt::from(spec.p);
    sums.iter()
        .enumerate()
        .map(|(k, s)| {
            if !(s % &p).is_zero() || s.is_negative() {
                return Err(consistency(format!("averaged trace in degree {k} is {s}/{p}")));
            }
            (s / &p)
                .to_u64()
                .ok_or_else(|| consistency("Betti number overflows u64"))
        })
        .collect()
}

/// `Σ (-1)^k b_k` against `(1/p) Σ_j det(1 - σ^j)`.
pub fn crystallographic_euler_check(spec: &CrystalSpec) -> Result<bool> {
    let betti = betti_crystallographic(spec)?;
    let euler: BigInt = betti
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { BigInt::from(b) } else { -BigInt::from(b) })
        .sum();
    let n = spec.rank();
    let m = spec.matrix()?;
    let id = IntMatrix::identity(n);
    let mut total = BigInt::zero();
    let mut pw = IntMatrix::identity(n);
    for _ in 0..spec.p {
        total += determinant(&id.sub(&pw)?)?;
        pw = pw.mul(&m)?;
    }
    Ok(BigRational::new(total, BigInt::from(spec.p)) == BigRational::from_integer(euler))
}

/// `|H^1(Z/p; A)|` and the rank of `A^{Z/p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrystalInvariants {
    pub h1_order: u64,
    pub fixed_rank: usize,
}

pub fn h1_and_fixed(spec: &CrystalSpec) -> Result<CrystalInvariants> {
    spec.validate()?;
    let n = spec.rank();
    if n == 0 {
        return Ok(CrystalInvariants {
            h1_order: 1,
            fixed_rank: 0,
        });
    }
    let m = spec.matrix()?;
    let id = IntMatrix::identity(n);
    let mut norm = IntMatrix::zero(n, n);
    let mut pw = IntMatrix::identity(n);
    for _ in 0..spec.p {
        norm = norm.add(&pw)?;
        pw = pw.mul(&m)?;
    }
    let s_minus_1 = m.sub(&id)?;
    let ker_n = kernel_lattice(&norm);
    let im = hnf(&s_minus_1.transpose());
    let h1 =
        Subquotient::new(ker_n, im).map_err(|_| consistency("image of σ - 1 is not inside the kernel of the norm"))?;
    let order = h1
        .order()
        .ok_or_else(|| consistency("H^1(Z/p; A) is infinite"))?
        .to_u64()
        .ok_or_else(|| consistency("H^1(Z/p; A) is too large"))?;
    if !arith::is_power_of(order, spec.p) {
        return Err(consistency(format!("|H^1| = {order} is not a power of {}", spec.p)));
    }
    Ok(CrystalInvariants {
        h1_order: order,
        fixed_rank: kernel_lattice(&s_minus_1).rank(),
    })
}

/// Number of conjugacy classes of elements of order `p`: `(p - 1)|H^1|`.
pub fn con_count_crystallographic(spec: &CrystalSpec) -> Result<u64> {
    Ok((spec.p - 1) * h1_and_fixed(spec)?.h1_order)
}

/// `(binomial(d, k))_k`: the cohomology of `BZ^d`.
pub fn exterior_betti(d: usize) -> Betti {
    (0..=d as u64).map(|k| arith::binomial(d as u64, k)).collect()
}

/// Signature `(g; m_1, ..., m_r)` of a cocompact Fuchsian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuchsianSpec {
    pub genus: u64,
    #[serde(default)]
    pub periods: Vec<u64>,
}

impl FuchsianSpec {
    /// Periods at least 2 and `2g - 2 + Σ (1 - 1/m_i) > 0`.
    pub fn validate(&self) -> Result<()> {
        if let Some(m) = self.periods.iter().find(|&&m| m < 2) {
            return Err(validation(format!("period {m} is smaller than 2")));
        }
        let mut chi = BigRational::from_integer(BigInt::from(2 * self.genus as i64 - 2));
        for &m in &self.periods {
            chi += BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(m));
        }
        if !chi.is_positive() {
            return Err(validation(format!(
                "signature is not hyperbolic: 2g - 2 + Σ(1 - 1/m_i) = {chi}"
            )));
        }
        Ok(())
    }
}

/// Betti numbers of a closed quotient together with per-prime counts of
/// conjugacy classes of nontrivial `p`-power order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCohomology {
    pub betti: Betti,
    pub counts: BTreeMap<u64, u64>,
}

/// Nontrivial `p`-power classes of `Z/m`, checked against a class count on
/// an explicit cyclic permutation group.
pub fn cyclic_counts(m: u64) -> Result<BTreeMap<u64, u64>> {
    let mut out = BTreeMap::new();
    if m <= 1 {
        return Ok(out);
    }
    let explicit = groups::cyclic(m as usize).conjugacy_classes()?;
    for p in arith::prime_divisors(m) {
        let count = arith::p_part(m, p) - 1;
        let by_classes = explicit.con_p(p)?.len() as u64;
        if by_classes != count {
            return Err(consistency(format!(
                "Z/{m} at {p}: {count} by formula, {by_classes} by classes"
            )));
        }
        out.insert(p, count);
    }
    Ok(out)
}

fn add_counts(into: &mut BTreeMap<u64, u64>, from: BTreeMap<u64, u64>) {
    for (p, c) in from {
        *into.entry(p).or_insert(0) += c;
    }
}

pub fn betti_fuchsian(spec: &FuchsianSpec) -> Result<FamilyCohomology> {
    spec.validate()?;
    let mut counts = BTreeMap::new();
    for &m in &spec.periods {
        add_counts(&mut counts, cyclic_counts(m)?);
    }
    Ok(FamilyCohomology {
        betti: vec![1, 2 * spec.genus, 1],
        counts,
    })
}

/// `⟨generators | relator⟩`; the relator is a word such as `a b a^-1 b^-1`
/// or `(ab)^2`, where names are the declared generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OneRelatorSpec {
    pub generators: Vec<String>,
    pub relator: String,
}

/// Letters are `±(i + 1)` for generator `i`.
pub type Word = Vec<i64>;

struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl WordParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn word(&mut self, nested: bool) -> Result<Word> {
        let mut out = Word::new();
        loop {
            self.skip_ws();
            let Some(&c) = self.chars.get(self.pos) else {
                if nested {
                    return Err(validation("unbalanced parenthesis in relator"));
                }
                return Ok(out);
            };
            let atom = if c == '(' {
                self.pos += 1;
                self.word(true)?
            } else if c == ')' {
                if !nested {
                    return Err(validation(format!("unexpected ')' at position {}", self.pos)));
                }
                self.pos += 1;
                return Ok(out);
            } else {
                vec![self.name()?]
            };
            let e = self.exponent()?;
            let base = if e < 0 { invert(&atom) } else { atom };
            for _ in 0..e.unsigned_abs() {
                out.extend_from_slice(&base);
            }
        }
    }

    fn name(&mut self) -> Result<i64> {
        let rest: String = self.chars[self.pos..].iter().collect();
        let best = self
            .names
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.is_empty() && rest.starts_with(n.as_str()))
            .max_by_key(|(_, n)| n.len());
        match best {
            Some((i, n)) => {
                self.pos += n.chars().count();
                Ok(i as i64 + 1)
            }
            None => Err(validation(format!(
                "unknown generator at position {} of the relator",
                self.pos
            ))),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        if self.chars.get(self.pos) != Some(&'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<i64>()
            .map_err(|_| validation(format!("bad exponent '{text}' in relator")))
    }
}

fn invert(w: &[i64]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

pub fn parse_word(text: &str, generators: &[String]) -> Result<Word> {
    let mut parser = WordParser {
        chars: text.chars().collect(),
        pos: 0,
        names: generators,
    };
    parser.word(false)
}

pub fn free_reduce(w: &[i64]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn cyclically_reduce(w: &[i64]) -> Word {
    let mut v = free_reduce(w);
    while v.len() >= 2 && v[0] == -v[v.len() - 1] {
        v.pop();
        v.remove(0);
    }
    v
}

/// `(s, m)` with `w = s^m` and `m` maximal.
pub fn root_and_multiplicity(w: &[i64]) -> (Word, u64) {
    let n = w.len();
    for d in arith::divisors(n as u64) {
        let d = d as usize;
        if (d..n).all(|i| w[i] == w[i - d]) {
            return (w[..d].to_vec(), (n / d) as u64);
        }
    }
    (w.to_vec(), 1)
}

pub fn format_word(w: &[i64], generators: &[String]) -> String {
    w.iter()
        .map(|&x| {
            let name = &generators[(x.unsigned_abs() - 1) as usize];
            if x < 0 {
                format!("{name}^-1")
            } else {
                name.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneRelatorAnalysis {
    pub root: String,
    pub multiplicity: u64,
    pub betti: Betti,
    pub counts: BTreeMap<u64, u64>,
}

pub fn one_relator_analyze(spec: &OneRelatorSpec) -> Result<OneRelatorAnalysis> {
    if spec.generators.is_empty() {
        return Err(validation("no generators"));
    }
    let mut names = spec.generators.clone();
    names.sort();
    if names.windows(2).any(|w| w[0] == w[1]) {
        return Err(validation("generator names repeat"));
    }
    let k = spec.generators.len();
    let word = cyclically_reduce(&parse_word(&spec.relator, &spec.generators)?);
    if word.is_empty() {
        return Err(validation("relator reduces to the empty word"));
    }
    let (root, m) = root_and_multiplicity(&word);
    let mut sums = vec![0i64; k];
    for &x in &word {
        sums[(x.unsigned_abs() - 1) as usize] += x.signum();
    }
    let rank = u64::from(sums.iter().any(|&s| s != 0));
    Ok(OneRelatorAnalysis {
        root: format_word(&root, &spec.generators),
        multiplicity: m,
        betti: vec![1, k as u64 - rank, 1 - rank],
        counts: cyclic_counts(m)?,
    })
}

/// Centralizer of a representative `g` of a class in `con_p(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralizerRecord {
    #[serde(default)]
    pub label: Option<String>,
    /// Betti numbers of `BC_G⟨g⟩` with `p`-adic coefficients.
    pub betti_qp: Betti,
}

/// Hypotheses under which the rational product formula is multiplicative:
/// trivial reduced rational cohomology of the centralizers and full Weyl
/// groups `W_G C = aut(C)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingHypotheses {
    #[serde(default)]
    pub centralizer_cohomology_trivial: bool,
    #[serde(default)]
    pub weyl_groups_full: bool,
}

/// A group given by the rational cohomology of `BG` and of its centralizers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectDataSpec {
    pub betti: Betti,
    #[serde(default)]
    pub centralizers: BTreeMap<u64, Vec<CentralizerRecord>>,
    #[serde(default)]
    pub ring_hypotheses: Option<RingHypotheses>,
}

impl DirectDataSpec {
    pub fn validate(&self) -> Result<()> {
        for (&p, records) in &self.centralizers {
            if !arith::is_prime(p) {
                return Err(validation(format!("centralizer key {p} is not prime")));
            }
            if records.is_empty() {
                return Err(validation(format!("prime {p} lists no centralizers")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta3() -> CrystalSpec {
        CrystalSpec::new(3, vec![vec![0, -1], vec![1, -1]]).unwrap()
    }

    fn regular(p: usize) -> CrystalSpec {
        let sigma = (0..p)
            .map(|i| (0..p).map(|j| i64::from(j == (i + 1) % p)).collect())
            .collect();
        CrystalSpec::new(p as u64, sigma).unwrap()
    }

    #[test]
    fn crystallographic_betti() {
        assert_eq!(betti_crystallographic(&zeta3()).unwrap(), vec![1, 0, 1]);
        let neg = CrystalSpec::new(2, vec![vec![-1, 0], vec![0, -1]]).unwrap();
        assert_eq!(betti_crystallographic(&neg).unwrap(), vec![1, 0, 1]);
        let empty = CrystalSpec::new(5, vec![]).unwrap();
        assert_eq!(betti_crystallographic(&empty).unwrap(), vec![1]);
        assert!(CrystalSpec::new(2, vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(CrystalSpec::new(3, vec![vec![-1, 0], vec![0, -1]]).is_err());
        assert!(CrystalSpec::new(4, vec![vec![0, -1], vec![1, 0]]).is_err());
        // regular representation: invariants of Λ^k of a permutation module
        assert_eq!(betti_crystallographic(&regular(3)).unwrap(), vec![1, 1, 1, 1]);
        for s in [zeta3(), neg, regular(2), regular(3), regular(5)] {
            assert!(crystallographic_euler_check(&s).unwrap());
        }
    }

    #[test]
    fn h1_examples() {
        assert_eq!(
            h1_and_fixed(&zeta3()).unwrap(),
            CrystalInvariants {
                h1_order: 3,
                fixed_rank: 0
            }
        );
        for p in [2, 3, 5] {
            assert_eq!(
                h1_and_fixed(&regular(p)).unwrap(),
                CrystalInvariants {
                    h1_order: 1,
                    fixed_rank: 1
                }
            );
            assert_eq!(con_count_crystallographic(&regular(p)).unwrap(), p as u64 - 1);
        }
        let neg = CrystalSpec::new(2, vec![vec![-1, 0], vec![0, -1]]).unwrap();
        assert_eq!(h1_and_fixed(&neg).unwrap().h1_order, 4);
        assert_eq!(con_count_crystallographic(&neg).unwrap(), 4);
        assert_eq!(con_count_crystallographic(&zeta3()).unwrap(), 6);
    }

    #[test]
    fn exterior() {
        assert_eq!(exterior_betti(0), vec![1]);
        assert_eq!(exterior_betti(2), vec![1, 2, 1]);
        assert_eq!(exterior_betti(3), vec![1, 3, 3, 1]);
    }

    #[test]
    fn fuchsian() {
        let f = betti_fuchsian(&FuchsianSpec {
            genus: 2,
            periods: vec![3, 4],
        })
        .unwrap();
        assert_eq!(f.betti, vec![1, 4, 1]);
        assert_eq!(f.counts, BTreeMap::from([(2, 3), (3, 2)]));
        assert!(betti_fuchsian(&FuchsianSpec {
            genus: 1,
            periods: vec![]
        })
        .is_err());
        assert!(betti_fuchsian(&FuchsianSpec {
            genus: 0,
            periods: vec![2, 3, 6]
        })
        .is_err());
        assert!(betti_fuchsian(&FuchsianSpec {
            genus: 2,
            periods: vec![1]
        })
        .is_err());
        let f = betti_fuchsian(&FuchsianSpec {
            genus: 0,
            periods: vec![2, 2, 2, 2, 2],
        })
        .unwrap();
        assert_eq!(f.counts, BTreeMap::from([(2, 5)]));
        let f = betti_fuchsian(&FuchsianSpec {
            genus: 3,
            periods: vec![],
        })
        .unwrap();
        assert_eq!(f.betti, vec![1, 6, 1]);
        assert!(f.counts.is_empty());
    }

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn one_relator_examples() {
        let r = one_relator_analyze(&OneRelatorSpec {
            generators: names(&["a", "b"]),
            relator: "(ab)^2".into(),
        })
        .unwrap();
        assert_eq!((r.root.as_str(), r.multiplicity), ("a b", 2));
        assert_eq!(r.betti, vec![1, 1, 0]);
        assert_eq!(r.counts, BTreeMap::from([(2, 1)]));
        let r = one_relator_analyze(&OneRelatorSpec {
            generators: names(&["a"]),
            relator: "a^3".into(),
        })
        .unwrap();
        assert_eq!((r.multiplicity, r.betti.clone()), (3, vec![1, 0, 0]));
        assert_eq!(r.counts, BTreeMap::from([(3, 2)]));
        let r = one_relator_analyze(&OneRelatorSpec {
            generators: names(&["a", "b"]),
            relator: "a b a^-1 b^-1".into(),
        })
        .unwrap();
        assert_eq!((r.multiplicity, r.betti.clone()), (1, vec![1, 2, 1]));
        assert!(r.counts.is_empty());
        // cyclic reduction exposes the root
        let r = one_relator_analyze(&OneRelatorSpec {
            generators: names(&["x", "y"]),
            relator: "y^-1 x y x y x y y".into(),
        })
        .unwrap();
        assert_eq!((r.root.as_str(), r.multiplicity), ("x y", 3));
        for bad in ["a a^-1", "", "a c", "(a b", "a)"] {
            assert!(one_relator_analyze(&OneRelatorSpec {
                generators: names(&["a", "b"]),
                relator: bad.into()
            })
            .is_err());
        }
    }

    #[test]
    fn direct_validation() {
        let mut d = DirectDataSpec {
            betti: vec![1],
            centralizers: BTreeMap::new(),
            ring_hypotheses: None,
        };
        assert!(d.validate().is_ok());
        d.centralizers.insert(
            4,
            vec![CentralizerRecord {
                label: None,
                betti_qp: vec![1],
            }],
        );
        assert!(d.validate().is_err());
    }

    fn letters() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(2), Just(-2), Just(3)], 1..8)
    }

    proptest! {
        #[test]
        fn root_is_not_a_power(w in letters(), m in 1u64..4) {
            let base = cyclically_reduce(&w);
            prop_assume!(!base.is_empty());
            let word: Vec<i64> = (0..m).flat_map(|_| base.clone()).collect();
            let reduced = cyclically_reduce(&word);
            let (s, k) = root_and_multiplicity(&reduced);
            prop_assert_eq!(reduced.len() as u64, k * s.len() as u64);
            prop_assert_eq!(root_and_multiplicity(&s).1, 1);
            prop_assert_eq!(k % m, 0);
        }

        #[test]
        fn diagonal_sign_actions(signs in prop::collection::vec(prop::bool::ANY, 1..5)) {
            prop_assume!(signs.iter().any(|&s| s));
            let n = signs.len();
            let sigma = (0..n)
                .map(|i| (0..n).map(|j| if i == j { if signs[i] { -1 } else { 1 } } else { 0 }).collect())
                .collect();
            let spec = CrystalSpec::new(2, sigma).unwrap();
            let flips = signs.iter().filter(|&&s| s).count() as u32;
            prop_assert!(crystallographic_euler_check(&spec).unwrap());
            let inv = h1_and_fixed(&spec).unwrap();
            prop_assert_eq!(inv.h1_order, 2u64.pow(flips));
            prop_assert_eq!(inv.fixed_rank, n - flips as usize);
        }
    }
}
