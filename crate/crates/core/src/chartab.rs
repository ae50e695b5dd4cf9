//! Exact character tables by Dixon's method, with inner products, restriction
//! and induction of virtual characters.
//!
//! Virtual characters are integer coordinate vectors over the irreducible
//! characters in the table's row order; class functions are value vectors
//! indexed by the table's class order.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::cyclotomic::Cyc;
use crate::error::{consistency, validation, Result};
use crate::permgroup::{Classes, PermGroup};
use crate::report::Report;

/// Values of a class function, indexed by class.
pub type ClassFunction = Vec<Cyc>;

/// Seed used for splitting eigenspaces when none is given.
pub const DEFAULT_SEED: u64 = 0x6b62_675f_6469_786f;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: PermGroup,
    classes: Classes,
    exponent: u64,
    values: Vec<Vec<Cyc>>,
    degrees: Vec<u64>,
    modulus: u64,
    root: u64,
    modular: Vec<Vec<u64>>,
}

mod gf {
    //! Dense linear algebra over a prime field `GF(q)` with `q < 2^32`.

    pub fn add(a: u64, b: u64, q: u64) -> u64 {
        (a + b) % q
    }

    pub fn sub(a: u64, b: u64, q: u64) -> u64 {
        (a + q - b) % q
    }

    pub fn mul(a: u64, b: u64, q: u64) -> u64 {
        a * b % q
    }

    pub fn inv(a: u64, q: u64) -> u64 {
        crate::arith::mod_inv(a, q)
    }

    /// Basis of `{x : m x = 0}` where `m` has `ncols` columns.
    pub fn nullspace(m: &[Vec<u64>], ncols: usize, q: u64) -> Vec<Vec<u64>> {
        let mut a: Vec<Vec<u64>> = m.to_vec();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..ncols {
            let Some(p) = (row..a.len()).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(row, p);
            let iv = inv(a[row][col], q);
            for x in a[row].iter_mut() {
                *x = mul(*x, iv, q);
            }
            for r in 0..a.len() {
                if r != row && a[r][col] != 0 {
                    let f = a[r][col];
                    for c in 0..ncols {
                        let t = mul(f, a[row][c], q);
                        a[r][c] = sub(a[r][c], t, q);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == a.len() {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = sub(0, a[r][free], q);
            }
            basis.push(v);
        }
        basis
    }

    pub fn smallest_primitive_root(q: u64) -> u64 {
        let factors = crate::arith::prime_divisors(q - 1);
        (2..q)
            .find(|&g| factors.iter().all(|&r| crate::arith::mod_pow(g, (q - 1) / r, q) != 1))
            .unwrap_or(1)
    }
}

/// Least prime `q ≡ 1 (mod e)` with `q > 2 sqrt(order)`.
pub fn dixon_prime(e: u64, order: u64) -> u64 {
    let mut q = e + 1;
    loop {
        if arith::is_prime(q) && q * q > 4 * order {
            return q;
        }
        q += e;
    }
}

/// `a[i][j][k]`: number of pairs `(x, y)` in `C_i x C_j` with `x y = g_k`.
pub fn class_constants(classes: &Classes) -> Vec<Vec<Vec<u64>>> {
    let k = classes.len();
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (kk, target) in classes.iter().enumerate() {
        let g = &target.representative;
        for x in classes.elements() {
            let i = classes.class_of(x).unwrap();
            let y = x.inverse().compose(g);
            let j = classes.class_of(&y).unwrap();
            a[i][j][kk] += 1;
        }
    }
    a
}

/// Splits `GF(q)^k` into the common eigenspaces of the class matrices and
/// returns one eigenvector per space.
fn common_eigenvectors(mats: &[Vec<Vec<u64>>], q: u64, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<u64>>> {
    let k = mats.len();
    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut pending = vec![identity];
    let mut done = Vec::new();
    let random_tries = 3;
    while let Some(space) = pending.pop() {
        if space.len() == 1 {
            done.push(space.into_iter().next().unwrap());
            continue;
        }
        let mut split = None;
        let candidates = random_tries + k;
        for attempt in 0..candidates {
            let m: Vec<Vec<u64>> = if attempt < random_tries {
                let coeffs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..q)).collect();
                let mut acc = vec![vec![0u64; k]; k];
                for (c, mat) in coeffs.iter().zip(mats) {
                    for r in 0..k {
                        for s in 0..k {
                            acc[r][s] = gf::add(acc[r][s], gf::mul(*c, mat[r][s], q), q);
                        }
                    }
                }
                acc
            } else {
                mats[attempt - random_tries].clone()
            };
            let parts = eigenspaces_on(&m, &space, q);
            let total: usize = parts.iter().map(Vec::len).sum();
            if total != space.len() {
                return Err(consistency(format!(
                    "class matrix is not diagonalizable over GF({q}) on a {}-dimensional space",
                    space.len()
                )));
            }
            if parts.len() > 1 {
                split = Some(parts);
                break;
            }
        }
        match split {
            Some(parts) => pending.extend(parts),
            None => {
                return Err(consistency(format!(
                    "could not split a {}-dimensional common eigenspace",
                    space.len()
                )))
            }
        }
    }
    Ok(done)
}

/// Eigenspaces of `m` (acting on columns) restricted to the invariant
/// subspace spanned by the rows of `basis`.
fn eigenspaces_on(m: &[Vec<u64>], basis: &[Vec<u64>], q: u64) -> Vec<Vec<Vec<u64>>> {
    let k = m.len();
    let d = basis.len();
    // image[r] = m * basis[r]
    let image: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|row| (0..k).fold(0, |acc, c| gf::add(acc, gf::mul(m[row][c], b[c], q), q)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..q {
        // columns r: image[r] - lambda * basis[r]
        let x: Vec<Vec<u64>> = (0..k)
            .map(|row| {
                (0..d)
                    .map(|r| gf::sub(image[r][row], gf::mul(lambda, basis[r][row], q), q))
                    .collect()
            })
            .collect();
        let null = gf::nullspace(&x, d, q);
        if null.is_empty() {
            continue;
        }
        let vecs: Vec<Vec<u64>> = null
            .iter()
            .map(|c| {
                (0..k)
                    .map(|j| (0..d).fold(0, |acc, r| gf::add(acc, gf::mul(c[r], basis[r][j], q), q)))
                    .collect()
            })
            .collect();
        found += vecs.len();
        out.push(vecs);
        if found == d {
            break;
        }
    }
    out
}

fn cmp_rational_vec(a: &[BigRational], b: &[BigRational]) -> Ordering {
    a.cmp(b)
}

/// Orders rows by degree, then the trivial row, then by values with larger
/// coefficient vectors first.
fn row_order(a: &(u64, bool, Vec<Cyc>), b: &(u64, bool, Vec<Cyc>)) -> Ordering {
    a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then_with(|| {
        for (x, y) in a.2.iter().zip(&b.2) {
            let o = cmp_rational_vec(y.coeffs(), x.coeffs());
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

pub fn character_table(group: &PermGroup) -> Result<CharacterTable> {
    character_table_with_seed(group, DEFAULT_SEED)
}

/// Dixon's method. The seed only drives the order in which eigenspaces are
/// split; the resulting table is the same for every seed.
pub fn character_table_with_seed(group: &PermGroup, seed: u64) -> Result<CharacterTable> {
    let classes = group.conjugacy_classes()?;
    let order = group.order();
    let k = classes.len();
    let e = classes.exponent();
    let q = dixon_prime(e, order);
    let z = arith::mod_pow(gf::smallest_primitive_root(q), (q - 1) / e, q);
    let a = class_constants(&classes);
    // (M_i)[j][k] = a_ijk; central characters are right eigenvectors
    let mats: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|i| (0..k).map(|j| (0..k).map(|kk| a[i][j][kk] % q).collect()).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eigvecs = common_eigenvectors(&mats, q, &mut rng)?;
    if eigvecs.len() != k {
        return Err(consistency("wrong number of central characters"));
    }
    let inv_class: Vec<usize> = (0..k).map(|c| classes.inverse_class(c)).collect();
    let mut rows: Vec<(u64, bool, Vec<Cyc>)> = Vec::with_capacity(k);
    let mut modular_rows: Vec<Vec<u64>> = Vec::with_capacity(k);
    let max_degree = (order as f64).sqrt() as u64 + 1;
    for v in eigvecs {
        if v[0] == 0 {
            return Err(consistency("central character vanishes at the identity"));
        }
        let s0 = gf::inv(v[0], q);
        let omega: Vec<u64> = v.iter().map(|&x| gf::mul(x, s0, q)).collect();
        let mut s = 0u64;
        for c in 0..k {
            let term = gf::mul(omega[c], omega[inv_class[c]], q);
            s = gf::add(s, gf::mul(term, gf::inv(classes[c].size % q, q), q), q);
        }
        let d2 = gf::mul(order % q, gf::inv(s, q), q);
        let degree = (1..=max_degree)
            .find(|&d| d * d <= order && (d * d) % q == d2)
            .ok_or_else(|| consistency("no admissible character degree"))?;
        let chi_mod: Vec<u64> = (0..k)
            .map(|c| gf::mul(gf::mul(degree % q, omega[c], q), gf::inv(classes[c].size % q, q), q))
            .collect();
        let mut vals = Vec::with_capacity(k);
        let inv_e = gf::inv(e % q, q);
        for c in 0..k {
            let mut mult = vec![BigRational::zero(); e as usize];
            for (kk, slot) in mult.iter_mut().enumerate() {
                let mut acc = 0u64;
                for l in 0..e {
                    let val = chi_mod[classes[c].power(l as i64)];
                    let zpow = arith::mod_pow(z, (e - (kk as u64 * l) % e) % e, q);
                    acc = gf::add(acc, gf::mul(val, zpow, q), q);
                }
                let m = gf::mul(acc, inv_e, q);
                if m > degree {
                    return Err(consistency(format!(
                        "eigenvalue multiplicity {m} exceeds the degree {degree}"
                    )));
                }
                *slot = BigRational::from_integer(m.into());
            }
            vals.push(Cyc::from_powers(e, &mult));
        }
        let trivial = vals.iter().all(|x| *x == Cyc::one(e));
        rows.push((degree, !trivial, vals));
        modular_rows.push(chi_mod);
    }
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by(|&x, &y| row_order(&rows[x], &rows[y]));
    let degrees = idx.iter().map(|&i| rows[i].0).collect();
    let modular = idx.iter().map(|&i| modular_rows[i].clone()).collect();
    let values = idx.iter().map(|&i| rows[i].2.clone()).collect();
    let table = CharacterTable {
        group: group.clone(),
        classes,
        exponent: e,
        values,
        degrees,
        modulus: q,
        root: z,
        modular,
    };
    let report = verify_orthogonality(&table);
    if !report.passed() {
        return Err(consistency(format!(
            "character table failed orthogonality: {}",
            report.failures.join("; ")
        )));
    }
    Ok(table)
}

impl CharacterTable {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &Classes {
        &self.classes
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.classes.group_order()
    }

    /// Number of irreducible characters (= number of classes).
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn row(&self, i: usize) -> &[Cyc] {
        &self.values[i]
    }

    pub fn rows(&self) -> &[Vec<Cyc>] {
        &self.values
    }

    pub fn value(&self, row: usize, class: usize) -> &Cyc {
        &self.values[row][class]
    }

    /// Prime and root of unity used by the modular computation.
    pub fn dixon_parameters(&self) -> (u64, u64) {
        (self.modulus, self.root)
    }

    /// The table computed over `GF(q)` before lifting.
    pub fn modular_table(&self) -> &[Vec<u64>] {
        &self.modular
    }

    /// Overwrites a single entry; used for negative controls of the verifiers.
    pub fn set_value(&mut self, row: usize, class: usize, value: Cyc) {
        self.values[row][class] = value;
    }

    /// Replaces the `i`-th degree and returns the old one; negative-control hook.
    pub fn set_degree(&mut self, row: usize, degree: u64) -> u64 {
        std::mem::replace(&mut self.degrees[row], degree)
    }

    pub fn inner_product(&self, f: &[Cyc], h: &[Cyc]) -> Result<Cyc> {
        let k = self.classes.len();
        if f.len() != k || h.len() != k {
            return Err(validation(format!(
                "class functions of lengths {} and {} for a table with {k} classes",
                f.len(),
                h.len()
            )));
        }
        let mut acc = Cyc::zero(self.exponent);
        for c in 0..k {
            let term = (&f[c] * &h[c].conj()).scale(&BigRational::from_integer(self.classes[c].size.into()));
            acc = &acc + &term;
        }
        Ok(acc.scale(&BigRational::new(BigInt::one(), self.order().into())))
    }

    /// Coordinates of a class function in the basis of irreducibles, which
    /// must all be rational.
    pub fn decompose_rational(&self, f: &[Cyc]) -> Result<Vec<BigRational>> {
        (0..self.len())
            .map(|i| {
                self.inner_product(f, &self.values[i])?
                    .to_rational()
                    .ok_or_else(|| consistency(format!("coordinate {i} is not rational")))
            })
            .collect()
    }

    /// Integer coordinates of a virtual character given by its values.
    pub fn decompose(&self, f: &[Cyc]) -> Result<Vec<BigInt>> {
        self.decompose_rational(f)?
            .into_iter()
            .enumerate()
            .map(|(i, q)| {
                if q.is_integer() {
                    Ok(q.to_integer())
                } else {
                    Err(consistency(format!("coordinate {i} is {q}, not an integer")))
                }
            })
            .collect()
    }

    /// Values of `Σ coords[i] χ_i`.
    pub fn values_of(&self, coords: &[BigInt]) -> Result<ClassFunction> {
        let q: Vec<BigRational> = coords.iter().cloned().map(BigRational::from_integer).collect();
        self.values_of_rational(&q)
    }

    pub fn values_of_rational(&self, coords: &[BigRational]) -> Result<ClassFunction> {
        if coords.len() != self.len() {
            return Err(validation(format!(
                "{} coordinates for {} irreducibles",
                coords.len(),
                self.len()
            )));
        }
        let k = self.classes.len();
        let mut out = vec![Cyc::zero(self.exponent); k];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, v) in out.iter_mut().zip(&self.values[i]) {
                *slot = &*slot + &v.scale(c);
            }
        }
        Ok(out)
    }

    /// Unit vector of the `i`-th irreducible.
    pub fn basis_vector(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.len()];
        v[i] = BigInt::one();
        v
    }

    /// Value-wise product of two class functions.
    pub fn product(f: &[Cyc], h: &[Cyc]) -> ClassFunction {
        f.iter().zip(h).map(|(a, b)| a * b).collect()
    }
}

pub fn inner_product(t: &CharacterTable, f: &[Cyc], h: &[Cyc]) -> Result<Cyc> {
    t.inner_product(f, h)
}

fn check_fusion(t_g: &CharacterTable, t_h: &CharacterTable, fusion: &[usize]) -> Result<()> {
    if fusion.len() != t_h.classes.len() || fusion.iter().any(|&c| c >= t_g.classes.len()) {
        return Err(validation("fusion map does not match the two tables"));
    }
    Ok(())
}

/// Pulls a class function of `G` back to `H` along the class fusion.
pub fn restrict_values(fusion: &[usize], f: &[Cyc]) -> ClassFunction {
    fusion.iter().map(|&c| f[c].clone()).collect()
}

/// Induces a class function from `H` to `G`.
pub fn induce_values(t_h: &CharacterTable, t_g: &CharacterTable, fusion: &[usize], f: &[Cyc]) -> Result<ClassFunction> {
    check_fusion(t_g, t_h, fusion)?;
    let e = arith::lcm(t_g.exponent, t_h.exponent);
    let mut out = Vec::with_capacity(t_g.classes.len());
    for (c, data) in t_g.classes.iter().enumerate() {
        let mut acc = Cyc::zero(e);
        for (d, &fc) in fusion.iter().enumerate() {
            if fc == c {
                let w = BigRational::new(data.centralizer_order.into(), t_h.classes[d].centralizer_order.into());
                acc = &acc + &f[d].scale(&w);
            }
        }
        out.push(acc.embed(e)?);
    }
    Ok(out)
}

/// `res^G_H` on virtual characters in irreducible coordinates.
pub fn restrict_character(
    t_g: &CharacterTable,
    t_h: &CharacterTable,
    fusion: &[usize],
    chi: &[BigInt],
) -> Result<Vec<BigInt>> {
    check_fusion(t_g, t_h, fusion)?;
    let vals = t_g.values_of(chi)?;
    t_h.decompose(&restrict_values(fusion, &vals))
}

/// `ind_H^G` on virtual characters in irreducible coordinates.
pub fn induce_character(
    t_h: &CharacterTable,
    t_g: &CharacterTable,
    fusion: &[usize],
    chi: &[BigInt],
) -> Result<Vec<BigInt>> {
    let vals = t_h.values_of(chi)?;
    let induced = induce_values(t_h, t_g, fusion, &vals)?;
    for (c, v) in induced.iter().enumerate() {
        if !v.is_integral() {
            return Err(consistency(format!("induced value at class {c} is not integral: {v}")));
        }
    }
    t_g.decompose(&induced)
}

/// Row `i` holds `res χ_i` for the irreducibles `χ_i` of `G`.
pub fn restriction_matrix(t_g: &CharacterTable, t_h: &CharacterTable, fusion: &[usize]) -> Result<Vec<Vec<BigInt>>> {
    (0..t_g.len())
        .map(|i| restrict_character(t_g, t_h, fusion, &t_g.basis_vector(i)))
        .collect()
}

/// Row `j` holds `ind ψ_j` for the irreducibles `ψ_j` of `H`.
pub fn induction_matrix(t_h: &CharacterTable, t_g: &CharacterTable, fusion: &[usize]) -> Result<Vec<Vec<BigInt>>> {
    (0..t_h.len())
        .map(|j| induce_character(t_h, t_g, fusion, &t_h.basis_vector(j)))
        .collect()
}

/// Exact row and column orthogonality.
pub fn verify_orthogonality(t: &CharacterTable) -> Report {
    let mut report = Report::new("orthogonality");
    let k = t.len();
    for i in 0..k {
        for j in i..k {
            match t.inner_product(&t.values[i], &t.values[j]) {
                Ok(v) => {
                    let expected = Cyc::from_int(1, i64::from(i == j));
                    report.check(v == expected, || {
                        format!("rows {i} and {j}: inner product {v}, expected {expected}")
                    });
                }
                Err(err) => report.fail(format!("rows {i} and {j}: {err}")),
            }
        }
    }
    for c in 0..k {
        for d in c..k {
            let mut acc = Cyc::zero(t.exponent);
            for i in 0..k {
                acc = &acc + &(&t.values[i][c] * &t.values[i][d].conj());
            }
            let expected = if c == d {
                Cyc::from_int(1, t.classes[c].centralizer_order as i64)
            } else {
                Cyc::zero(1)
            };
            report.check(acc == expected, || {
                format!("columns {c} and {d}: sum {acc}, expected {expected}")
            });
        }
    }
    let sq: u64 = t.degrees.iter().map(|d| d * d).sum();
    report.check(sq == t.order(), || {
        format!("sum of squared degrees {sq} differs from the group order {}", t.order())
    });
    for (i, d) in t.degrees.iter().enumerate() {
        report.check(t.values[i][0] == Cyc::from_int(1, *d as i64), || {
            format!("row {i}: value at the identity differs from its degree {d}")
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;
    use crate::permgroup::{class_fusion, Perm};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn row_ints(t: &CharacterTable, i: usize) -> Vec<i64> {
        t.row(i)
            .iter()
            .map(|v| i64::try_from(v.to_integer().expect("rational")).unwrap())
            .collect()
    }

    #[test]
    fn z2_table() {
        let t = character_table(&groups::cyclic(2)).unwrap();
        assert_eq!(row_ints(&t, 0), vec![1, 1]);
        assert_eq!(row_ints(&t, 1), vec![1, -1]);
    }

    #[test]
    fn s3_table() {
        let t = character_table(&groups::symmetric(3)).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        assert_eq!(row_ints(&t, 2), vec![2, 0, -1]);
        assert_eq!(row_ints(&t, 1), vec![1, -1, 1]);
        assert!(verify_orthogonality(&t).passed());
    }

    #[test]
    fn z3_table() {
        let t = character_table(&groups::cyclic(3)).unwrap();
        let z = Cyc::zeta_pow(3, 1);
        let z2 = Cyc::zeta_pow(3, 2);
        let one = Cyc::one(3);
        assert_eq!(t.row(0), &[one.clone(), one.clone(), one.clone()]);
        // the two faithful rows are complex conjugates
        let r1 = t.row(1);
        let r2 = t.row(2);
        assert!(r1 == [one.clone(), z.clone(), z2.clone()] || r1 == [one.clone(), z2.clone(), z.clone()]);
        assert_eq!(r2.iter().map(Cyc::conj).collect::<Vec<_>>(), r1.to_vec());
    }

    #[test]
    fn inner_product_examples() {
        let s3 = groups::symmetric(3);
        let t = character_table(&s3).unwrap();
        let triv = t.row(0).to_vec();
        assert_eq!(t.inner_product(&triv, &triv).unwrap(), Cyc::one(1));
        assert_eq!(t.inner_product(t.row(2), t.row(2)).unwrap(), Cyc::one(1));
        // permutation character on three points: number of fixed points
        let perm: Vec<Cyc> = t
            .classes()
            .iter()
            .map(|c| {
                let fixed = (0..3).filter(|&x| c.representative.apply(x) == x).count();
                Cyc::from_int(1, fixed as i64)
            })
            .collect();
        assert_eq!(t.inner_product(&perm, &triv).unwrap(), Cyc::one(1));
        assert!(t.inner_product(&perm[..2], &triv).is_err());
    }

    #[test]
    fn restriction_and_induction_in_s3() {
        let s3 = groups::symmetric(3);
        let tg = character_table(&s3).unwrap();
        let gc = tg.classes().clone();
        let c3 = s3.subgroup(vec![Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
        let th = character_table(&c3).unwrap();
        let fus = class_fusion(&c3, th.classes(), &s3, &gc).unwrap();
        assert_eq!(
            restrict_character(&tg, &th, &fus, &ints(&[0, 0, 1])).unwrap(),
            ints(&[0, 1, 1])
        );
        assert_eq!(
            restrict_character(&tg, &th, &fus, &ints(&[1, 0, 0])).unwrap(),
            ints(&[1, 0, 0])
        );
        assert_eq!(
            restrict_character(&tg, &th, &fus, &ints(&[0, 1, 0])).unwrap(),
            ints(&[1, 0, 0])
        );
        assert_eq!(
            induce_character(&th, &tg, &fus, &ints(&[0, 1, 0])).unwrap(),
            ints(&[0, 0, 1])
        );

        let c2 = s3.subgroup(vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
        let t2 = character_table(&c2).unwrap();
        let fus2 = class_fusion(&c2, t2.classes(), &s3, &gc).unwrap();
        let ind = induce_character(&t2, &tg, &fus2, &ints(&[1, 0])).unwrap();
        assert_eq!(ind, ints(&[1, 0, 1]));
        let vals = tg.values_of(&ind).unwrap();
        let ints_vals: Vec<BigInt> = vals.iter().map(|v| v.to_integer().unwrap()).collect();
        assert_eq!(ints_vals, ints(&[3, 1, 0]));

        let fus_id = class_fusion(&s3, &gc, &s3, &gc).unwrap();
        assert_eq!(
            induce_character(&tg, &tg, &fus_id, &ints(&[1, 0, 0])).unwrap(),
            ints(&[1, 0, 0])
        );
    }

    #[test]
    fn corrupted_table_is_reported() {
        let mut t = character_table(&groups::symmetric(3)).unwrap();
        t.set_value(2, 2, Cyc::from_int(1, 1));
        let r = verify_orthogonality(&t);
        assert!(!r.passed());
        assert!(
            r.failures.iter().any(|m| m.contains("rows 0 and 2")),
            "{:?}",
            r.failures
        );
    }

    #[test]
    fn lift_reduces_to_modular_table() {
        for g in [
            groups::cyclic(8),
            groups::quaternion(),
            groups::alternating(4),
            groups::dihedral(5),
        ] {
            let t = character_table(&g).unwrap();
            let (q, z) = t.dixon_parameters();
            for (i, row) in t.rows().iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    let zz = crate::arith::mod_pow(z, t.exponent() / v.conductor(), q);
                    assert_eq!(v.reduce_mod(q, zz), Some(t.modular_table()[i][c]));
                }
            }
        }
    }

    #[test]
    fn seed_does_not_change_the_table() {
        let g = groups::symmetric(4);
        let a = character_table_with_seed(&g, 1).unwrap();
        let b = character_table_with_seed(&g, 99).unwrap();
        assert_eq!(a.rows(), b.rows());
        assert_eq!(a.degrees(), &[1, 1, 2, 3, 3]);
    }

    #[test]
    fn trivial_group_table() {
        let t = character_table(&groups::cyclic(1)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.degrees(), &[1]);
    }
}
