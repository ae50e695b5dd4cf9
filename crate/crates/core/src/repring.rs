//! Representation rings as explicit based rings: structure constants,
//! augmentation ideals, Sylow restriction images, the idempotents `θ_C`,
//! the ranks of `T_H`, and exact verifiers for the induction/restriction
//! identities the main computation relies on.
//!
//! Elements of `R(G)` are coordinate vectors over the irreducible characters
//! in the table's row order. Maps are written on row vectors (`x -> x M`).

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::chartab::{self, character_table, CharacterTable};
use crate::cyclotomic::Cyc;
use crate::error::{consistency, validation, Error, Result};
use crate::permgroup::{class_fusion, double_coset_representatives, two_generated_subgroups, Perm, PermGroup};
use crate::qlinalg::{self, QVec};
use crate::report::Report;
use crate::zlattice::{
    hnf, kernel_lattice, lattice_index, left_kernel, product_lattice, IntLattice, IntMatrix, LatticeIndex,
    StructureConstants,
};

/// `R(G)` with its multiplication table and augmentation.
#[derive(Clone, Debug)]
pub struct RepRing {
    table: CharacterTable,
    mult: StructureConstants,
    augmentation: Vec<BigInt>,
}

pub fn rep_ring(table: &CharacterTable) -> Result<RepRing> {
    let k = table.len();
    let mut c = vec![BigInt::zero(); k * k * k];
    for i in 0..k {
        for j in i..k {
            let prod = CharacterTable::product(table.row(i), table.row(j));
            let coords = table.decompose(&prod)?;
            for (kk, v) in coords.into_iter().enumerate() {
                if v < BigInt::zero() {
                    return Err(consistency(format!(
                        "negative structure constant for rows {i}, {j}, {kk}"
                    )));
                }
                c[(i * k + j) * k + kk] = v.clone();
                c[(j * k + i) * k + kk] = v;
            }
        }
    }
    let augmentation = table.degrees().iter().map(|&d| BigInt::from(d)).collect();
    Ok(RepRing {
        table: table.clone(),
        mult: StructureConstants::new(k, c)?,
        augmentation,
    })
}

/// Builds the character table and representation ring of `g`.
pub fn rep_ring_of(g: &PermGroup) -> Result<RepRing> {
    rep_ring(&character_table(g)?)
}

impl RepRing {
    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn group(&self) -> &PermGroup {
        self.table.group()
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.mult
    }

    /// Overwrites one structure constant; negative-control hook for the verifiers.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, v: BigInt) {
        let d = self.mult.dim;
        self.mult.c[(i * d + j) * d + k] = v;
    }

    pub fn dim(&self) -> usize {
        self.mult.dim
    }

    pub fn augmentation(&self) -> &[BigInt] {
        &self.augmentation
    }

    pub fn one(&self) -> Vec<BigInt> {
        self.table.basis_vector(0)
    }

    pub fn multiply(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        self.mult.multiply(x, y)
    }

    pub fn multiply_rational(&self, x: &[BigRational], y: &[BigRational]) -> QVec {
        let d = self.dim();
        let mut out = vec![BigRational::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                for (kk, o) in out.iter_mut().enumerate() {
                    let c = self.mult.get(i, j, kk);
                    if !c.is_zero() {
                        *o += &w * BigRational::from_integer(c.clone());
                    }
                }
            }
        }
        out
    }

    pub fn augment(&self, x: &[BigInt]) -> BigInt {
        x.iter().zip(&self.augmentation).map(|(a, b)| a * b).sum()
    }

    pub fn augmentation_ideal(&self) -> IntLattice {
        let m = IntMatrix::new(self.dim(), vec![self.augmentation.clone()]).expect("one row");
        kernel_lattice(&m)
    }

    /// `I^n` for `n >= 1`, and `R(G)` for `n = 0`.
    pub fn ideal_power(&self, n: usize) -> Result<IntLattice> {
        let i = self.augmentation_ideal();
        if n == 0 {
            return Ok(IntLattice::full(self.dim()));
        }
        let mut acc = i.clone();
        for _ in 1..n {
            acc = product_lattice(&acc, &i, &self.mult)?;
        }
        Ok(acc)
    }

    /// Checks the ring axioms the rest of the crate depends on.
    pub fn verify(&self) -> Report {
        let mut r = Report::new("representation ring");
        let k = self.dim();
        for i in 0..k {
            for j in 0..k {
                for kk in 0..k {
                    let c = self.mult.get(i, j, kk);
                    r.check(*c >= BigInt::zero(), || format!("c[{i}][{j}][{kk}] = {c} is negative"));
                    r.check(c == self.mult.get(j, i, kk), || {
                        format!("c[{i}][{j}][{kk}] is not symmetric")
                    });
                    r.check(*self.mult.get(0, j, kk) == BigInt::from(u8::from(j == kk)), || {
                        format!("trivial character is not a unit at ({j}, {kk})")
                    });
                }
                let ei = self.table.basis_vector(i);
                let ej = self.table.basis_vector(j);
                let lhs = self.augment(&self.multiply(&ei, &ej));
                let rhs = &self.augmentation[i] * &self.augmentation[j];
                r.check(lhs == rhs, || {
                    format!("augmentation is not multiplicative on ({i}, {j})")
                });
            }
        }
        // value-level check of every product
        for i in 0..k {
            for j in 0..k {
                let prod = CharacterTable::product(self.table.row(i), self.table.row(j));
                let coords = self.multiply(&self.table.basis_vector(i), &self.table.basis_vector(j));
                match self.table.values_of(&coords) {
                    Ok(v) => r.check(v == prod, || {
                        format!("product of rows {i} and {j} disagrees with values")
                    }),
                    Err(e) => r.fail(format!("({i}, {j}): {e}")),
                }
            }
        }
        r
    }
}

pub fn augmentation_ideal(r: &RepRing) -> IntLattice {
    r.augmentation_ideal()
}

/// Restriction from `G` to a subgroup, as a matrix on irreducible coordinates.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub sub_table: CharacterTable,
    pub fusion: Vec<usize>,
    /// Row `i` is `res χ_i`.
    pub matrix: IntMatrix,
}

pub fn restriction_to(t_g: &CharacterTable, h: &PermGroup) -> Result<Restriction> {
    let t_h = character_table(h)?;
    restriction_between(t_g, &t_h)
}

pub fn restriction_between(t_g: &CharacterTable, t_h: &CharacterTable) -> Result<Restriction> {
    let fusion = class_fusion(t_h.group(), t_h.classes(), t_g.group(), t_g.classes())?;
    let rows = chartab::restriction_matrix(t_g, t_h, &fusion)?;
    Ok(Restriction {
        sub_table: t_h.clone(),
        matrix: IntMatrix::new(t_h.len(), rows)?,
        fusion,
    })
}

/// Induction from a subgroup to `G`; row `j` is `ind ψ_j`.
pub fn induction_matrix(t_h: &CharacterTable, t_g: &CharacterTable) -> Result<IntMatrix> {
    let fusion = class_fusion(t_h.group(), t_h.classes(), t_g.group(), t_g.classes())?;
    IntMatrix::new(t_g.len(), chartab::induction_matrix(t_h, t_g, &fusion)?)
}

fn degrees_as_ideal(t: &CharacterTable) -> IntLattice {
    let m = IntMatrix::new(t.len(), vec![t.degrees().iter().map(|&d| BigInt::from(d)).collect()]).expect("one row");
    kernel_lattice(&m)
}

/// Image of `I_G` under restriction to `h`, in `R(h)` coordinates.
pub fn restriction_image(r: &RepRing, h: &PermGroup) -> Result<IntLattice> {
    let res = restriction_to(r.table(), h)?;
    image_checked(r, &res)
}

fn image_checked(r: &RepRing, res: &Restriction) -> Result<IntLattice> {
    let img = r.augmentation_ideal().image(&res.matrix)?;
    if !degrees_as_ideal(&res.sub_table).contains_lattice(&img) {
        return Err(consistency("restriction image escapes the augmentation ideal"));
    }
    Ok(img)
}

/// Per-prime data: a Sylow subgroup, its representation ring, the restriction
/// map and the image `I_p(G) = res(I_G)`.
#[derive(Clone, Debug)]
pub struct SylowData {
    pub prime: u64,
    pub sylow: PermGroup,
    pub ring: RepRing,
    pub restriction: Restriction,
    pub image: IntLattice,
}

pub fn sylow_data(r: &RepRing, p: u64) -> Result<SylowData> {
    let sylow = r.group().sylow(p)?;
    let ring = rep_ring_of(&sylow)?;
    let restriction = restriction_between(r.table(), ring.table())?;
    let image = image_checked(r, &restriction)?;
    Ok(SylowData {
        prime: p,
        sylow,
        ring,
        restriction,
        image,
    })
}

/// Number of classes of elements of order `p^d` (`d >= 1`), computed both by
/// counting classes and as the rank of `res(I_G)` in `R(G_p)`.
pub fn r_p(r: &RepRing, p: u64) -> Result<usize> {
    let by_classes = r.table().classes().con_p(p)?.len();
    let by_lattice = sylow_data(r, p)?.image.rank();
    if by_classes != by_lattice {
        return Err(consistency(format!(
            "prime {p}: {by_classes} classes of p-power order but restriction image of rank {by_lattice}"
        )));
    }
    Ok(by_classes)
}

/// Basis of `I_p(G) = res(I_G) ⊆ R(G_p)` with its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingStructure {
    pub prime: u64,
    /// Basis vectors in `R(G_p)` coordinates.
    pub basis: Vec<Vec<BigInt>>,
    /// `b_i b_j = Σ_k c[(i r + j) r + k] b_k`.
    pub constants: StructureConstants,
}

/// Flips each row so that its last nonzero entry is positive.
fn sign_normalized(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let last = r.iter().rev().find(|x| !x.is_zero());
            match last {
                Some(x) if *x < BigInt::zero() => r.iter().map(|y| -y).collect(),
                _ => r.clone(),
            }
        })
        .collect()
}

pub fn ring_structure_from(data: &SylowData) -> Result<RingStructure> {
    let basis = sign_normalized(data.image.basis());
    let r = basis.len();
    let span = IntMatrix::new(data.ring.dim(), basis.clone())?;
    let mut c = vec![BigInt::zero(); r * r * r];
    for i in 0..r {
        for j in 0..r {
            let prod = data.ring.multiply(&basis[i], &basis[j]);
            let coords = coordinates_in_rows(&span, &prod).ok_or_else(|| {
                consistency(format!(
                    "prime {}: product of basis elements {i} and {j} leaves the restriction image",
                    data.prime
                ))
            })?;
            for (k, v) in coords.into_iter().enumerate() {
                c[(i * r + j) * r + k] = v;
            }
        }
    }
    Ok(RingStructure {
        prime: data.prime,
        basis,
        constants: StructureConstants::new(r, c)?,
    })
}

/// Integer coordinates of `v` in the (independent) rows of `m`.
fn coordinates_in_rows(m: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows: Vec<QVec> = m.rows().iter().map(|r| qlinalg::to_q(r)).collect();
    let x = qlinalg::solve_in_span(&rows, &qlinalg::to_q(v))?;
    x.into_iter()
        .map(|q| if q.is_integer() { Some(q.to_integer()) } else { None })
        .collect()
}

pub fn ring_structure_i_p(r: &RepRing, p: u64) -> Result<RingStructure> {
    if !r.group().order().is_multiple_of(p) {
        return Err(validation(format!("{p} does not divide the group order")));
    }
    ring_structure_from(&sylow_data(r, p)?)
}

/// A nontrivial cyclic group with its generators and, for prime-power order,
/// the subgroup of index `p`.
#[derive(Clone, Debug)]
pub struct CyclicData {
    pub group: PermGroup,
    pub order: u64,
    pub generator: Perm,
    pub generators: Vec<Perm>,
    pub prime: Option<u64>,
    pub index_p_subgroup: Option<PermGroup>,
    pub ring: RepRing,
}

impl CyclicData {
    pub fn new(group: PermGroup) -> Result<CyclicData> {
        let n = group.order();
        if n == 1 {
            return Err(validation("the cyclic group must be nontrivial"));
        }
        let elements = group.elements()?;
        let generators: Vec<Perm> = elements.iter().filter(|x| x.order() == n).cloned().collect();
        let generator = generators
            .first()
            .cloned()
            .ok_or_else(|| validation("group is not cyclic"))?;
        let prime = arith::prime_power_base(n);
        let index_p_subgroup = match prime {
            Some(p) => Some(group.subgroup(vec![generator.pow(p as i64)])?),
            None => None,
        };
        let ring = rep_ring_of(&group)?;
        Ok(CyclicData {
            group,
            order: n,
            generator,
            generators,
            prime,
            index_p_subgroup,
            ring,
        })
    }

    pub fn table(&self) -> &CharacterTable {
        self.ring.table()
    }
}

/// `θ_C` in rational irreducible coordinates: the class function that is 1 on
/// generators and 0 elsewhere.
pub fn theta(c: &CyclicData) -> Result<QVec> {
    let t = c.table();
    let values: Vec<Cyc> = t
        .classes()
        .iter()
        .map(|cl| Cyc::from_int(1, i64::from(cl.element_order == c.order)))
        .collect();
    t.decompose_rational(&values)
}

/// For a unit `k` modulo the exponent, the permutation of irreducibles
/// `χ -> χ(·^k)`.
pub fn twist_permutation(t: &CharacterTable, k: i64) -> Result<Vec<usize>> {
    let e = t.exponent() as i64;
    if arith::gcd(k.rem_euclid(e) as u64, e as u64) != 1 {
        return Err(validation(format!("{k} is not a unit modulo {e}")));
    }
    let classes = t.classes();
    let mut perm = Vec::with_capacity(t.len());
    for i in 0..t.len() {
        let twisted: Vec<Cyc> = (0..classes.len())
            .map(|c| t.value(i, classes[c].power(k)).clone())
            .collect();
        let j = (0..t.len())
            .find(|&j| t.row(j) == twisted.as_slice())
            .ok_or_else(|| consistency("twisted character is not irreducible"))?;
        perm.push(j);
    }
    Ok(perm)
}

pub fn apply_twist(perm: &[usize], x: &[BigRational]) -> QVec {
    let mut out = vec![BigRational::zero(); x.len()];
    for (i, v) in x.iter().enumerate() {
        out[perm[i]] += v;
    }
    out
}

/// Rank of `T_H` applied to the rationalized `K^0(BH)`, split into the
/// constant part and one part per prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TRank {
    pub rank: usize,
    pub constant_part: usize,
    pub per_prime: BTreeMap<u64, usize>,
    /// Per prime, the lattice in `R(H_p)` whose rank is counted.
    pub witnesses: BTreeMap<u64, IntLattice>,
}

/// Restriction of elements of `I_H` to the Sylow subgroups of all proper
/// subgroups; the part of `res(I_H) ⊆ R(H_p)` killed by all of them has rank
/// `φ(|H|)` for cyclic p-groups and 0 otherwise.
pub fn t_rank(h: &PermGroup) -> Result<TRank> {
    let ring = rep_ring_of(h)?;
    let order = h.order();
    let constant_part = usize::from(order == 1);
    let mut per_prime = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    if order == 1 {
        return Ok(TRank {
            rank: 1,
            constant_part,
            per_prime,
            witnesses,
        });
    }
    let proper: Vec<PermGroup> = two_generated_subgroups(h)?
        .into_iter()
        .filter(|k| k.order() < order)
        .collect();
    let i_h = ring.augmentation_ideal();
    for p in arith::prime_divisors(order) {
        let mut blocks: Vec<IntMatrix> = Vec::new();
        let mut seen: HashMap<u64, Vec<Vec<Perm>>> = HashMap::new();
        for k in &proper {
            let kp = k.sylow(p)?;
            if kp.order() == 1 {
                continue;
            }
            let mut key = kp.elements()?;
            key.sort();
            let bucket = seen.entry(kp.order()).or_default();
            if bucket.contains(&key) {
                continue;
            }
            bucket.push(key);
            blocks.push(restriction_to(ring.table(), &kp)?.matrix);
        }
        let mut stacked = IntMatrix::zero(ring.dim(), 0);
        for b in &blocks {
            stacked = stacked.hconcat(b)?;
        }
        let killed = if stacked.ncols() == 0 {
            i_h.clone()
        } else {
            i_h.intersection(&left_kernel(&stacked))?
        };
        let hp = h.sylow(p)?;
        let witness = if hp.order() == order {
            killed
        } else {
            killed.image(&restriction_to(ring.table(), &hp)?.matrix)?
        };
        per_prime.insert(p, witness.rank());
        witnesses.insert(p, witness);
    }
    let rank = constant_part + per_prime.values().sum::<usize>();
    Ok(TRank {
        rank,
        constant_part,
        per_prime,
        witnesses,
    })
}

/// `ker(res: R(C) -> R(C'))` for a cyclic p-group `C`.
pub fn kernel_of_index_p_restriction(c: &CyclicData) -> Result<IntLattice> {
    let sub = c
        .index_p_subgroup
        .as_ref()
        .ok_or_else(|| validation("the cyclic group does not have prime-power order"))?;
    let res = restriction_to(c.table(), sub)?;
    Ok(left_kernel(&res.matrix))
}

fn value_on(t: &CharacterTable, coords: &[BigInt], x: &Perm) -> Result<Cyc> {
    let c = t
        .classes()
        .class_of(x)
        .ok_or_else(|| Error::Membership(format!("{x} is not in the group")))?;
    let mut acc = Cyc::zero(t.exponent());
    for (i, a) in coords.iter().enumerate() {
        if !a.is_zero() {
            acc = &acc + &t.value(i, c).scale(&BigRational::from_integer(a.clone()));
        }
    }
    Ok(acc)
}

/// Checks `res_G^K ind_H^G = Σ_{KgH} ind_{c(g)} res_{H ∩ g^-1 K g}` on every
/// irreducible of `H`; the right side is evaluated element by element.
pub fn verify_double_coset(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<Report> {
    let mut report = Report::new(format!(
        "double coset formula (|G|={}, |H|={}, |K|={})",
        g.order(),
        h.order(),
        k.order()
    ));
    let t_g = character_table(g)?;
    let t_h = character_table(h)?;
    let t_k = character_table(k)?;
    let ind = induction_matrix(&t_h, &t_g)?;
    let res = restriction_between(&t_g, &t_k)?.matrix;
    let lhs = ind.mul(&res)?;
    let g_elements = t_g.classes().elements().to_vec();
    let h_elements = t_h.classes().elements().to_vec();
    let k_elements = t_k.classes().elements().to_vec();
    let reps = double_coset_representatives(&g_elements, k, h)?;
    let e = arith::lcm(t_k.exponent(), t_h.exponent());
    for j in 0..t_h.len() {
        let chi = t_h.basis_vector(j);
        let mut values: Vec<Cyc> = vec![Cyc::zero(e); t_k.len()];
        for gr in &reps {
            let gi = gr.inverse();
            // L = H ∩ g^-1 K g, mapped into K by x -> g x g^-1
            let inter: Vec<&Perm> = h_elements.iter().filter(|x| k.contains(&x.conjugate_by(&gi))).collect();
            let l_order = inter.len() as u64;
            // ψ'(y) = χ(g^-1 y g) for y in g L g^-1
            let mut image_vals: HashMap<Perm, Cyc> = HashMap::new();
            for x in &inter {
                image_vals.insert(x.conjugate_by(&gi), value_on(&t_h, &chi, x)?);
            }
            for (c, cl) in t_k.classes().iter().enumerate() {
                let kc = &cl.representative;
                let mut acc = Cyc::zero(e);
                for y in &k_elements {
                    let conj = kc.conjugate_by(y);
                    if let Some(v) = image_vals.get(&conj) {
                        acc = &acc + v;
                    }
                }
                let scaled = acc.scale(&BigRational::new(BigInt::one(), l_order.into()));
                values[c] = &values[c] + &scaled;
            }
        }
        let rhs = t_k.decompose(&values)?;
        report.check(lhs.row(j) == rhs.as_slice(), || {
            format!("irreducible {j} of H: left side {:?}, right side {:?}", lhs.row(j), rhs)
        });
    }
    Ok(report)
}

/// `res(R(G))` and `res(ind(R(G_p)))` in `R(G_p)`: containment, equal rank and
/// index prime to `p`.
pub fn verify_localized_images(r: &RepRing, p: u64) -> Result<Report> {
    let mut report = Report::new(format!("restriction images agree after localization at {p}"));
    if !r.group().order().is_multiple_of(p) {
        return Err(validation(format!("{p} does not divide the group order")));
    }
    let data = sylow_data(r, p)?;
    let l1 = hnf(&data.restriction.matrix);
    let ind = induction_matrix(data.ring.table(), r.table())?;
    let l2 = hnf(&ind.mul(&data.restriction.matrix)?);
    if !l1.contains_lattice(&l2) {
        report.fail("res∘ind image is not contained in the restriction image");
        return Ok(report);
    }
    report.check(l1.rank() == l2.rank(), || {
        format!("ranks differ: {} and {}", l1.rank(), l2.rank())
    });
    match lattice_index(&l1, &l2)? {
        LatticeIndex::Finite(n) => {
            report.note(format!("index {n}"));
            report.check(n.gcd(&BigInt::from(p)).is_one(), || {
                format!("index {n} is divisible by {p}")
            });
        }
        LatticeIndex::Infinite => report.fail("index is infinite"),
    }
    Ok(report)
}

/// `res_G^{G_q} ind_{G_p}^G = |G_q\G/G_p| · ind_1^{G_q} res_{G_p}^1`.
pub fn verify_sylow_double_cosets(t_g: &CharacterTable, p: u64, q: u64) -> Result<Report> {
    if p == q || !arith::is_prime(p) || !arith::is_prime(q) {
        return Err(validation("need two distinct primes"));
    }
    let mut report = Report::new(format!("res∘ind between Sylow {p} and Sylow {q}"));
    let g = t_g.group();
    let gp = g.sylow(p)?;
    let gq = g.sylow(q)?;
    let t_p = character_table(&gp)?;
    let t_q = character_table(&gq)?;
    let ind = induction_matrix(&t_p, t_g)?;
    let res = restriction_between(t_g, &t_q)?.matrix;
    let lhs = ind.mul(&res)?;
    let count = double_coset_representatives(t_g.classes().elements(), &gq, &gp)?.len() as u64;
    report.note(format!("{count} double cosets"));
    for (j, dj) in t_p.degrees().iter().enumerate() {
        for (i, di) in t_q.degrees().iter().enumerate() {
            let expected = BigInt::from(count * dj * di);
            let got = lhs.get(j, i);
            report.check(*got == expected, || {
                format!("entry ({j}, {i}) is {got}, expected {expected}")
            });
        }
    }
    Ok(report)
}

/// Map `I_G -> ⊕_p res(I_G)` in coordinates of the lattice bases, with the
/// kernel expressed in `R(G)` coordinates.
pub struct SylowProduct {
    pub primes: Vec<u64>,
    pub data: Vec<SylowData>,
    /// Row `i`: coordinates of the image of the `i`-th basis vector of `I_G`.
    pub coordinate_matrix: IntMatrix,
    pub kernel: IntLattice,
}

pub fn sylow_product(r: &RepRing) -> Result<SylowProduct> {
    let primes = arith::prime_divisors(r.group().order());
    let data: Vec<SylowData> = primes.iter().map(|&p| sylow_data(r, p)).collect::<Result<_>>()?;
    let ideal = r.augmentation_ideal();
    let width: usize = data.iter().map(|d| d.image.rank()).sum();
    let mut rows = Vec::with_capacity(ideal.rank());
    for b in ideal.basis() {
        let mut row = Vec::with_capacity(width);
        for d in &data {
            let img = crate::zlattice::vec_mat(b, &d.restriction.matrix);
            let coords = d
                .image
                .coordinates(&img)
                .ok_or_else(|| consistency("restriction of a basis vector leaves the image"))?;
            row.extend(coords);
        }
        rows.push(row);
    }
    let coordinate_matrix = IntMatrix::new(width, rows)?;
    let kernel_coords = left_kernel(&coordinate_matrix);
    let kernel = kernel_coords.image(&ideal.basis_matrix())?;
    Ok(SylowProduct {
        primes,
        data,
        coordinate_matrix,
        kernel,
    })
}

/// Surjectivity of `I_G -> ⊕_p res(I_G)` and containment of its kernel in
/// `I^m` for `m <= depth`.
pub fn verify_sylow_product(r: &RepRing, depth: usize) -> Result<Report> {
    if depth == 0 {
        return Err(validation("depth must be at least 1"));
    }
    let mut report = Report::new("I_G maps onto the product of Sylow restriction images");
    let sp = sylow_product(r)?;
    let width = sp.coordinate_matrix.ncols();
    let image = hnf(&sp.coordinate_matrix);
    report.check(image == IntLattice::full(width), || {
        let s = crate::zlattice::snf(&sp.coordinate_matrix);
        format!("not surjective: invariants {:?} for target rank {width}", s.invariants)
    });
    report.note(format!("kernel rank {}", sp.kernel.rank()));
    let ideal = r.augmentation_ideal();
    let mut power = ideal.clone();
    for m in 1..=depth {
        if m > 1 {
            power = product_lattice(&power, &ideal, r.constants())?;
        }
        report.check(power.contains_lattice(&sp.kernel), || {
            format!("kernel is not contained in I^{m}")
        });
    }
    Ok(report)
}

/// Nonsingularity of the evaluation matrix of a basis of `θ_C R(C) ⊗ Q` at the
/// generators, and traces of the `aut(C)` action.
pub fn verify_theta_module(c: &CyclicData) -> Result<Report> {
    let mut report = Report::new(format!("θ R(C) for |C| = {}", c.order));
    let t = c.table();
    let th = theta(c)?;
    let k = t.len();
    let mut basis: Vec<QVec> = Vec::new();
    for i in 0..k {
        let v = c.ring.multiply_rational(&th, &qlinalg::to_q(&t.basis_vector(i)));
        let mut trial = basis.clone();
        trial.push(v.clone());
        if qlinalg::rank(&trial, k) == trial.len() {
            basis.push(v);
        }
    }
    let phi = arith::euler_phi(c.order) as usize;
    report.check(basis.len() == phi, || {
        format!("dimension {} instead of {phi}", basis.len())
    });
    let gen_classes: Vec<usize> = c
        .generators
        .iter()
        .map(|x| t.classes().class_of(x).expect("generator in group"))
        .collect();
    let e = t.exponent();
    let eval: Vec<Vec<Cyc>> = basis
        .iter()
        .map(|b| {
            let vals = t.values_of_rational(b).expect("length matches");
            gen_classes.iter().map(|&cl| vals[cl].clone()).collect()
        })
        .collect();
    if eval.len() == gen_classes.len() {
        let det = qlinalg::cyc_determinant(&eval, e);
        report.check(!det.is_zero(), || "evaluation matrix is singular".to_string());
    }
    for unit in arith::units_mod(c.order) {
        let perm = twist_permutation(t, unit as i64)?;
        let mut trace = BigRational::zero();
        for (idx, b) in basis.iter().enumerate() {
            let tw = apply_twist(&perm, b);
            match qlinalg::solve_in_span(&basis, &tw) {
                Some(coords) => trace += &coords[idx],
                None => report.fail(format!("twist by {unit} leaves θ R(C)")),
            }
        }
        let expected = if unit % c.order == 1 % c.order { phi as i64 } else { 0 };
        report.check(trace == BigRational::from_integer(expected.into()), || {
            format!("trace of {unit} is {trace}, expected {expected}")
        });
    }
    Ok(report)
}

/// `θ² = θ`, invariance under every twist, vanishing on `C'`, and agreement
/// of the `T_C` witness with `ker(res_C^{C'})`.
pub fn verify_theta(c: &CyclicData) -> Result<Report> {
    let mut report = Report::new(format!("θ_C for |C| = {}", c.order));
    let th = theta(c)?;
    let sq = c.ring.multiply_rational(&th, &th);
    report.check(sq == th, || "θ is not idempotent".into());
    let t = c.table();
    for unit in arith::units_mod(t.exponent()) {
        let perm = twist_permutation(t, unit as i64)?;
        report.check(apply_twist(&perm, &th) == th, || format!("θ is not fixed by {unit}"));
        let vals = t.values_of_rational(&th)?;
        for v in &vals {
            report.check(v.galois_apply(unit as i64)? == *v, || {
                format!("θ values not fixed by ζ -> ζ^{unit}")
            });
        }
    }
    if let Some(sub) = &c.index_p_subgroup {
        let res = restriction_to(t, sub)?;
        let vals = t.values_of_rational(&th)?;
        let pulled = chartab::restrict_values(&res.fusion, &vals);
        report.check(pulled.iter().all(Cyc::is_zero), || "θ does not vanish on C'".into());
        let tr = t_rank(&c.group)?;
        let p = c.prime.expect("prime-power order");
        let witness = tr
            .witnesses
            .get(&p)
            .cloned()
            .unwrap_or_else(|| IntLattice::zero(t.len()));
        let ker = kernel_of_index_p_restriction(c)?;
        report.check(witness == ker, || "T_C witness differs from ker(res to C')".into());
        report.check(tr.rank == arith::euler_phi(c.order) as usize, || {
            format!("t_rank {} differs from φ(|C|)", tr.rank)
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(v: &[(i64, i64)]) -> QVec {
        v.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect()
    }

    #[test]
    fn structure_constants() {
        let r2 = rep_ring_of(&groups::cyclic(2)).unwrap();
        assert_eq!(r2.multiply(&ints(&[0, 1]), &ints(&[0, 1])), ints(&[1, 0]));
        let s3 = rep_ring_of(&groups::symmetric(3)).unwrap();
        assert_eq!(s3.multiply(&ints(&[0, 0, 1]), &ints(&[0, 0, 1])), ints(&[1, 1, 1]));
        let r3 = rep_ring_of(&groups::cyclic(3)).unwrap();
        assert_eq!(r3.multiply(&ints(&[0, 1, 0]), &ints(&[0, 1, 0])), ints(&[0, 0, 1]));
        for g in [groups::symmetric(4), groups::quaternion(), groups::dihedral(4)] {
            assert!(rep_ring_of(&g).unwrap().verify().passed());
        }
    }

    #[test]
    fn corrupted_constant_is_reported() {
        let mut r = rep_ring_of(&groups::symmetric(3)).unwrap();
        r.set_constant(2, 2, 2, BigInt::from(2));
        assert!(!r.verify().passed());
    }

    #[test]
    fn augmentation_ideals() {
        let r2 = rep_ring_of(&groups::cyclic(2)).unwrap();
        let i = r2.augmentation_ideal();
        assert_eq!(i.rank(), 1);
        assert!(i.contains(&ints(&[-1, 1])));
        let s3 = rep_ring_of(&groups::symmetric(3)).unwrap();
        let i = s3.augmentation_ideal();
        assert_eq!(
            i,
            IntLattice::from_generators(3, vec![ints(&[-1, 1, 0]), ints(&[-2, 0, 1])]).unwrap()
        );
        assert_eq!(rep_ring_of(&groups::cyclic(1)).unwrap().augmentation_ideal().rank(), 0);
    }

    #[test]
    fn restriction_images_in_s3() {
        let s3 = groups::symmetric(3);
        let r = rep_ring_of(&s3).unwrap();
        let p3 = sylow_data(&r, 3).unwrap();
        assert_eq!(
            p3.image,
            IntLattice::from_generators(3, vec![ints(&[-2, 1, 1])]).unwrap()
        );
        let p2 = sylow_data(&r, 2).unwrap();
        assert_eq!(p2.image, IntLattice::from_generators(2, vec![ints(&[-1, 1])]).unwrap());
        assert_eq!(restriction_image(&r, &s3).unwrap(), r.augmentation_ideal());
    }

    #[test]
    fn r_p_two_routes() {
        let r = rep_ring_of(&groups::symmetric(3)).unwrap();
        assert_eq!(r_p(&r, 2).unwrap(), 1);
        assert_eq!(r_p(&r, 3).unwrap(), 1);
        for p in [2u64, 3, 5, 7] {
            let r = rep_ring_of(&groups::cyclic(p as usize)).unwrap();
            assert_eq!(r_p(&r, p).unwrap(), p as usize - 1);
        }
        let r = rep_ring_of(&groups::cyclic(4)).unwrap();
        assert_eq!(r_p(&r, 2).unwrap(), 3);
    }

    #[test]
    fn theta_examples() {
        let c2 = CyclicData::new(groups::cyclic(2)).unwrap();
        assert_eq!(theta(&c2).unwrap(), q(&[(1, 2), (-1, 2)]));
        let c3 = CyclicData::new(groups::cyclic(3)).unwrap();
        assert_eq!(theta(&c3).unwrap(), q(&[(2, 3), (-1, 3), (-1, 3)]));
        for n in [2usize, 3, 4, 5, 8, 9] {
            let c = CyclicData::new(groups::cyclic(n)).unwrap();
            let rep = verify_theta(&c).unwrap();
            assert!(rep.passed(), "{n}: {:?}", rep.failures);
        }
        assert!(CyclicData::new(groups::cyclic(1)).is_err());
    }

    #[test]
    fn t_rank_examples() {
        assert_eq!(t_rank(&groups::symmetric(3)).unwrap().rank, 0);
        assert_eq!(t_rank(&groups::cyclic(4)).unwrap().rank, 2);
        assert_eq!(t_rank(&groups::cyclic(1)).unwrap().rank, 1);
        assert_eq!(t_rank(&groups::cyclic(6)).unwrap().rank, 0);
        assert_eq!(t_rank(&groups::klein_four()).unwrap().rank, 0);
    }

    #[test]
    fn ring_structures() {
        let r2 = rep_ring_of(&groups::cyclic(2)).unwrap();
        let rs = ring_structure_i_p(&r2, 2).unwrap();
        assert_eq!(rs.basis, vec![ints(&[-1, 1])]);
        assert_eq!(rs.constants.c, ints(&[-2]));
        let s3 = rep_ring_of(&groups::symmetric(3)).unwrap();
        let rs3 = ring_structure_i_p(&s3, 3).unwrap();
        assert_eq!(rs3.basis, vec![ints(&[-2, 1, 1])]);
        assert_eq!(rs3.constants.c, ints(&[-3]));
        let rs2 = ring_structure_i_p(&s3, 2).unwrap();
        assert_eq!(rs2.constants.c, ints(&[-2]));
        assert!(ring_structure_i_p(&s3, 5).is_err());
    }

    #[test]
    fn verifiers_on_small_groups() {
        let s3 = groups::symmetric(3);
        let r = rep_ring_of(&s3).unwrap();
        assert!(verify_localized_images(&r, 2).unwrap().passed());
        assert!(verify_localized_images(&r, 3).unwrap().passed());
        let rep = verify_sylow_double_cosets(r.table(), 2, 3).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.details.iter().any(|d| d.contains("1 double cosets")));
        assert!(verify_sylow_double_cosets(r.table(), 5, 3).unwrap().passed());
        assert!(verify_sylow_product(&r, 4).unwrap().passed());
        assert_eq!(sylow_product(&r).unwrap().kernel.rank(), 0);
        let z6 = rep_ring_of(&groups::cyclic(6)).unwrap();
        // one kernel dimension per class of elements whose order is not a prime power
        let mixed = z6
            .table()
            .classes()
            .iter()
            .filter(|c| c.element_order > 1 && arith::prime_power_base(c.element_order).is_none())
            .count();
        assert_eq!(mixed, 2);
        assert_eq!(sylow_product(&z6).unwrap().kernel.rank(), mixed);
        assert!(verify_sylow_product(&z6, 6).unwrap().passed());
        for n in [2usize, 3, 8] {
            let c = CyclicData::new(groups::cyclic(n)).unwrap();
            let rep = verify_theta_module(&c).unwrap();
            assert!(rep.passed(), "{n}: {:?}", rep.failures);
        }
    }

    #[test]
    fn double_coset_in_s3_and_a4() {
        let s3 = groups::symmetric(3);
        let t = s3.subgroup(vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        let rep = verify_double_coset(&s3, &t, &t).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(verify_double_coset(&s3, &s3, &t).unwrap().passed());
        let a4 = groups::alternating(4);
        let v4 = a4.subgroup(groups::klein_four().generators().to_vec()).unwrap();
        let c3 = a4.subgroup(vec![Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap()]).unwrap();
        let rep = verify_double_coset(&a4, &v4, &c3).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }
}
