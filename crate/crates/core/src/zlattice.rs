//! Exact integer linear algebra: Hermite and Smith normal forms, kernels,
//! cokernels, and arithmetic of lattices (finitely generated subgroups of
//! `Z^k`) stored as row-style Hermite normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{validation, Result};

/// A dense integer matrix with an explicit column count, so that matrices
/// with no rows still know their width.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.nrows(), self.cols)?;
        for (i, r) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", s.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(cols: usize, data: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
        if let Some((i, r)) = data.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(validation(format!("row {i} has {} entries, expected {cols}", r.len())));
        }
        Ok(IntMatrix { cols, data })
    }

    /// Panics on ragged input; for literals in code and tests.
    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::new(cols, data).expect("rectangular literal")
    }

    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// `c` times the identity.
    pub fn scalar(n: usize, c: &BigInt) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i][i] = c.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.data.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn transpose(&self) -> IntMatrix {
        let data = (0..self.cols)
            .map(|j| self.data.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntMatrix {
            cols: self.nrows(),
            data,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.nrows() {
            return Err(validation(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        let data = self.data.iter().map(|r| vec_mat(r, other)).collect();
        Ok(IntMatrix { cols: other.cols, data })
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &IntMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<IntMatrix> {
        if self.nrows() != other.nrows() || self.cols != other.cols {
            return Err(validation("matrix shapes differ"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            .collect();
        Ok(IntMatrix { cols: self.cols, data })
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix {
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(validation("cannot stack matrices of different widths"));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix { cols: self.cols, data })
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn hconcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.nrows() != other.nrows() {
            return Err(validation("cannot concatenate matrices of different heights"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(IntMatrix {
            cols: self.cols + other.cols,
            data,
        })
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut data = Vec::with_capacity(self.nrows() + other.nrows());
        for r in &self.data {
            let mut row = r.clone();
            row.extend(std::iter::repeat_n(BigInt::zero(), other.cols));
            data.push(row);
        }
        for r in &other.data {
            let mut row = vec![BigInt::zero(); self.cols];
            row.extend(r.iter().cloned());
            data.push(row);
        }
        IntMatrix {
            cols: self.cols + other.cols,
            data,
        }
    }

    pub fn pow(&self, k: u32) -> Result<IntMatrix> {
        if self.nrows() != self.cols {
            return Err(validation("power of a non-square matrix"));
        }
        let mut acc = IntMatrix::identity(self.cols);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        hnf_with_transform(self).rank
    }
}

/// Row vector times matrix.
pub fn vec_mat(v: &[BigInt], m: &IntMatrix) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); m.cols];
    for (x, row) in v.iter().zip(&m.data) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            *o += x * y;
        }
    }
    out
}

/// Matrix times column vector.
pub fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    m.data
        .iter()
        .map(|r| r.iter().zip(v).fold(BigInt::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    let n = m.nrows();
    if n != m.cols {
        return Err(validation("determinant of a non-square matrix"));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.data.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Row Hermite normal form `H = U M` with `U` unimodular.
#[derive(Clone, Debug)]
pub struct HnfResult {
    /// All rows of `U M`; the first `rank` rows are the nonzero HNF rows.
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn row_combine(a: &mut [Vec<BigInt>], i: usize, j: usize, s: &BigInt, t: &BigInt, x: &BigInt, y: &BigInt) {
    // (row_i, row_j) <- (s row_i + t row_j, x row_i + y row_j)
    let ri = a[i].clone();
    let rj = a[j].clone();
    a[i] = ri.iter().zip(&rj).map(|(p, q)| s * p + t * q).collect();
    a[j] = ri.iter().zip(&rj).map(|(p, q)| x * p + y * q).collect();
}

pub fn hnf_with_transform(m: &IntMatrix) -> HnfResult {
    let n = m.nrows();
    let cols = m.cols;
    let mut a = m.data.clone();
    let mut u = IntMatrix::identity(n).data;
    let mut r = 0usize;
    let mut pivots = Vec::new();
    for col in 0..cols {
        if r == n {
            break;
        }
        for i in r + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let p = a[r][col].clone();
            let q = a[i][col].clone();
            let eg = p.extended_gcd(&q);
            let g = eg.gcd;
            let (x, y) = (-(&q / &g), &p / &g);
            row_combine(&mut a, r, i, &eg.x, &eg.y, &x, &y);
            row_combine(&mut u, r, i, &eg.x, &eg.y, &x, &y);
        }
        if a[r][col].is_zero() {
            continue;
        }
        if a[r][col].is_negative() {
            for v in a[r].iter_mut().chain(u[r].iter_mut()) {
                *v = -&*v;
            }
        }
        let piv = a[r][col].clone();
        for i in 0..r {
            let q = a[i][col].div_floor(&piv);
            if !q.is_zero() {
                let (pr, ur) = (a[r].clone(), u[r].clone());
                for (v, w) in a[i].iter_mut().zip(&pr) {
                    *v -= &q * w;
                }
                for (v, w) in u[i].iter_mut().zip(&ur) {
                    *v -= &q * w;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    HnfResult {
        h: IntMatrix { cols, data: a },
        u: IntMatrix { cols: n, data: u },
        rank: r,
        pivots,
    }
}

/// A finitely generated subgroup of `Z^k`, stored as its row HNF basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntLattice {
    ambient: usize,
    #[serde(serialize_with = "ser_rows")]
    basis: Vec<Vec<BigInt>>,
}

fn ser_rows<S: serde::Serializer>(rows: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    serde::Serialize::serialize(&strs, s)
}

impl fmt::Debug for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntLattice(Z^{}; ", self.ambient)?;
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| {
                let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("({})", s.join(","))
            })
            .collect();
        write!(f, "{})", rows.join(" "))
    }
}

/// Index of a sublattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            LatticeIndex::Finite(n) => Some(n),
            LatticeIndex::Infinite => None,
        }
    }
}

/// Lattice spanned by the rows of `rows`.
pub fn hnf(rows: &IntMatrix) -> IntLattice {
    let res = hnf_with_transform(rows);
    IntLattice {
        ambient: rows.cols,
        basis: res.h.data.into_iter().take(res.rank).collect(),
    }
}

impl IntLattice {
    pub fn from_generators(ambient: usize, gens: Vec<Vec<BigInt>>) -> Result<IntLattice> {
        Ok(hnf(&IntMatrix::new(ambient, gens)?))
    }

    pub fn zero(ambient: usize) -> IntLattice {
        IntLattice {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> IntLattice {
        IntLattice {
            ambient,
            basis: IntMatrix::identity(ambient).data,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix {
            cols: self.ambient,
            data: self.basis.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn pivot_cols(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero HNF row"))
            .collect()
    }

    /// Integer coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, pc) in self.basis.iter().zip(self.pivot_cols()) {
            // entries left of this pivot must already be cleared
            if rest[..pc].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, y) in rest.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
            coords.push(q);
        }
        if rest.iter().all(Zero::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &IntLattice) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &IntLattice) -> Result<IntLattice> {
        lattice_sum(self, other)
    }

    pub fn intersection(&self, other: &IntLattice) -> Result<IntLattice> {
        lattice_intersection(self, other)
    }

    pub fn scale(&self, c: &BigInt) -> IntLattice {
        hnf(&self.basis_matrix().scale(c))
    }

    /// Image under `x -> x m`.
    pub fn image(&self, m: &IntMatrix) -> Result<IntLattice> {
        if m.nrows() != self.ambient {
            return Err(validation("map does not start in the lattice's ambient space"));
        }
        Ok(hnf(&self.basis_matrix().mul(m)?))
    }

    /// `{x in self : x m in target}`.
    pub fn preimage(&self, m: &IntMatrix, target: &IntLattice) -> Result<IntLattice> {
        if m.nrows() != self.ambient || m.ncols() != target.ambient {
            return Err(validation("map shape does not match the lattices"));
        }
        // coefficients c with (c B) m = t T for some t
        let bm = self.basis_matrix().mul(m)?;
        let stacked = bm.vstack(&target.basis_matrix())?;
        let kernel = left_kernel(&stacked);
        let r = self.rank();
        let coeffs: Vec<Vec<BigInt>> = kernel.basis.iter().map(|row| row[..r].to_vec()).collect();
        let c = IntMatrix { cols: r, data: coeffs };
        Ok(hnf(&c.mul(&self.basis_matrix())?))
    }
}

pub fn lattice_sum(a: &IntLattice, b: &IntLattice) -> Result<IntLattice> {
    if a.ambient != b.ambient {
        return Err(validation("lattices live in different ambient spaces"));
    }
    Ok(hnf(&a.basis_matrix().vstack(&b.basis_matrix())?))
}

pub fn lattice_intersection(a: &IntLattice, b: &IntLattice) -> Result<IntLattice> {
    if a.ambient != b.ambient {
        return Err(validation("lattices live in different ambient spaces"));
    }
    let stacked = a.basis_matrix().vstack(&b.basis_matrix())?;
    let kernel = left_kernel(&stacked);
    let r = a.rank();
    let coeffs: Vec<Vec<BigInt>> = kernel.basis.iter().map(|row| row[..r].to_vec()).collect();
    let c = IntMatrix { cols: r, data: coeffs };
    Ok(hnf(&c.mul(&a.basis_matrix())?))
}

/// `[outer : inner]`, or the infinite marker when the ranks differ.
pub fn lattice_index(outer: &IntLattice, inner: &IntLattice) -> Result<LatticeIndex> {
    if !outer.contains_lattice(inner) {
        return Err(validation("sublattice is not contained in the lattice"));
    }
    if outer.rank() != inner.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    let coords: Vec<Vec<BigInt>> = inner
        .basis
        .iter()
        .map(|r| outer.coordinates(r).expect("containment checked"))
        .collect();
    let m = IntMatrix {
        cols: outer.rank(),
        data: coords,
    };
    let inv = snf(&m).invariants;
    Ok(LatticeIndex::Finite(inv.iter().fold(BigInt::one(), |acc, d| acc * d)))
}

/// `{x : x m = 0}`, saturated.
pub fn left_kernel(m: &IntMatrix) -> IntLattice {
    let res = hnf_with_transform(m);
    let rows: Vec<Vec<BigInt>> = res.u.data[res.rank..].to_vec();
    hnf(&IntMatrix {
        cols: m.nrows(),
        data: rows,
    })
}

/// `{x : m x = 0}` for `m` acting on column vectors, saturated.
pub fn kernel_lattice(m: &IntMatrix) -> IntLattice {
    left_kernel(&m.transpose())
}

/// Free rank and nontrivial torsion invariants of the cokernel of `m`
/// acting on column vectors (`Z^cols -> Z^rows`).
pub fn cokernel_invariants(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let s = snf(m);
    let torsion = s.invariants.iter().filter(|d| !d.is_one()).cloned().collect();
    (m.nrows() - s.rank, torsion)
}

/// Smith normal form `P M Q = D` with unimodular witnesses and their inverses.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub invariants: Vec<BigInt>,
    pub rank: usize,
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
    pub d: IntMatrix,
}

struct SnfState {
    a: Vec<Vec<BigInt>>,
    p: Vec<Vec<BigInt>>,
    p_inv: Vec<Vec<BigInt>>,
    q: Vec<Vec<BigInt>>,
    q_inv: Vec<Vec<BigInt>>,
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.p.swap(i, j);
        for r in self.p_inv.iter_mut() {
            r.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in self.a.iter_mut().chain(self.q.iter_mut()) {
            r.swap(i, j);
        }
        self.q_inv.swap(i, j);
    }

    /// row_i += c row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.p] {
            let rj = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&rj) {
                *x += c * y;
            }
        }
        for r in self.p_inv.iter_mut() {
            let v = c * &r[i];
            r[j] -= v;
        }
    }

    /// col_i += c col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for r in self.a.iter_mut().chain(self.q.iter_mut()) {
            let v = c * &r[j];
            r[i] += v;
        }
        let ri = self.q_inv[i].clone();
        for (x, y) in self.q_inv[j].iter_mut().zip(&ri) {
            *x -= c * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.p[i].iter_mut()) {
            *x = -&*x;
        }
        for r in self.p_inv.iter_mut() {
            r[i] = -&r[i];
        }
    }
}

pub fn snf(m: &IntMatrix) -> SnfResult {
    let n = m.nrows();
    let k = m.cols;
    let mut s = SnfState {
        a: m.data.clone(),
        p: IntMatrix::identity(n).data,
        p_inv: IntMatrix::identity(n).data,
        q: IntMatrix::identity(k).data,
        q_inv: IntMatrix::identity(k).data,
    };
    let mut t = 0;
    while t < n.min(k) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..n {
            for j in t..k {
                if !s.a[i][j].is_zero() && best.is_none_or(|(bi, bj)| s.a[i][j].abs() < s.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap_rows(t, bi);
        s.swap_cols(t, bj);
        loop {
            let piv = s.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                if s.a[i][t].is_zero() {
                    continue;
                }
                let q = s.a[i][t].div_floor(&piv);
                s.add_row(i, t, &-q);
                if !s.a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..k {
                if s.a[t][j].is_zero() {
                    continue;
                }
                let q = s.a[t][j].div_floor(&piv);
                s.add_col(j, t, &-q);
                if !s.a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility: pivot must divide the rest of the block
                let bad = (t + 1..n)
                    .flat_map(|i| (t + 1..k).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&s.a[i][j] % &piv).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        s.add_row(t, i, &BigInt::one());
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..n {
                if !s.a[i][t].is_zero() && s.a[i][t].abs() < s.a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..k {
                if !s.a[t][j].is_zero() && s.a[t][j].abs() < s.a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            s.swap_rows(t, best.0);
            s.swap_cols(t, best.1);
        }
        if s.a[t][t].is_negative() {
            s.negate_row(t);
        }
        t += 1;
    }
    let invariants: Vec<BigInt> = (0..t).map(|i| s.a[i][i].clone()).collect();
    SnfResult {
        rank: invariants.len(),
        invariants,
        p: IntMatrix { cols: n, data: s.p },
        p_inv: IntMatrix { cols: n, data: s.p_inv },
        q: IntMatrix { cols: k, data: s.q },
        q_inv: IntMatrix { cols: k, data: s.q_inv },
        d: IntMatrix { cols: k, data: s.a },
    }
}

/// Bilinear multiplication on `Z^dim`: `e_i * e_j = Σ_k c[(i dim + j) dim + k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub dim: usize,
    pub c: Vec<BigInt>,
}

impl StructureConstants {
    pub fn new(dim: usize, c: Vec<BigInt>) -> Result<StructureConstants> {
        if c.len() != dim * dim * dim {
            return Err(validation(format!(
                "{} structure constants for dimension {dim}",
                c.len()
            )));
        }
        Ok(StructureConstants { dim, c })
    }

    pub fn zero(dim: usize) -> StructureConstants {
        StructureConstants {
            dim,
            c: vec![BigInt::zero(); dim * dim * dim],
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn multiply(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let d = self.dim;
        let mut out = vec![BigInt::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                let base = (i * d + j) * d;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[base + k];
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }
}

/// Span of all products of basis vectors of `a` and `b`.
pub fn product_lattice(a: &IntLattice, b: &IntLattice, mult: &StructureConstants) -> Result<IntLattice> {
    if a.ambient != mult.dim || b.ambient != mult.dim {
        return Err(validation("structure constants do not match the lattices"));
    }
    let mut rows = Vec::with_capacity(a.rank() * b.rank());
    for x in &a.basis {
        for y in &b.basis {
            rows.push(mult.multiply(x, y));
        }
    }
    Ok(hnf(&IntMatrix {
        cols: mult.dim,
        data: rows,
    }))
}
