//! Small dense linear algebra over `Q` and over cyclotomic fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyc;

pub type QVec = Vec<BigRational>;

pub fn to_q(v: &[BigInt]) -> QVec {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[QVec], ncols: usize) -> (Vec<QVec>, Vec<usize>) {
    let mut a: Vec<QVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = BigRational::one() / &a[r][col];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pr = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[QVec], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Coordinates of `v` in terms of the rows of `basis` (assumed independent).
pub fn solve_in_span(basis: &[QVec], v: &[BigRational]) -> Option<QVec> {
    let n = v.len();
    let k = basis.len();
    // columns are basis vectors: augmented system (k unknowns, n equations)
    let rows: Vec<QVec> = (0..n)
        .map(|i| {
            let mut r: QVec = basis.iter().map(|b| b[i].clone()).collect();
            r.push(v[i].clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (row, &pc) in red.iter().zip(&pivots) {
        x[pc] = row[k].clone();
    }
    Some(x)
}

/// Basis of `{x : x · rows^T = 0}`, i.e. the vectors orthogonal to every row
/// under the standard pairing; equivalently the right kernel of `rows`.
pub fn kernel(rows: &[QVec], ncols: usize) -> Vec<QVec> {
    let (red, pivots) = rref(rows, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &pc) in red.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Clears denominators so that the vector becomes a primitive integer vector.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Determinant of a square matrix over a cyclotomic field.
pub fn cyc_determinant(m: &[Vec<Cyc>], conductor: u64) -> Cyc {
    let n = m.len();
    let mut a: Vec<Vec<Cyc>> = m.to_vec();
    let mut det = Cyc::one(conductor);
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Cyc::zero(conductor);
        };
        if p != col {
            a.swap(p, col);
            det = -&det;
        }
        let piv = a[col][col].clone();
        det = &det * &piv;
        let inv = piv.inverse().expect("nonzero pivot");
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] * &inv;
            for j in col..n {
                let t = &f * &a[col][j];
                a[i][j] = &a[i][j] - &t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> QVec {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn rref_solve_kernel() {
        let rows = vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[0, 1, 1])];
        assert_eq!(rank(&rows, 3), 2);
        let basis = vec![q(&[1, 2, 3]), q(&[0, 1, 1])];
        assert_eq!(solve_in_span(&basis, &q(&[2, 5, 7])), Some(q(&[2, 1])));
        assert_eq!(solve_in_span(&basis, &q(&[0, 0, 1])), None);
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(
            primitive_integer(&k[0]),
            vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]
        );
    }

    #[test]
    fn cyclotomic_vandermonde() {
        let z = Cyc::zeta_pow(3, 1);
        let z2 = Cyc::zeta_pow(3, 2);
        let m = vec![vec![z.clone(), z2.clone()], vec![z2.clone(), z.clone()]];
        let d = cyc_determinant(&m, 3);
        // ζ² - ζ⁴ = ζ² - ζ
        assert_eq!(d, &z2 - &z);
        assert!(!d.is_zero());
    }
}
