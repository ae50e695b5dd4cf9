//! Exact arithmetic in the cyclotomic fields `Q(ζ_e)`, stored in the power
//! basis `1, ζ, .., ζ^(φ(e)-1)` reduced modulo the cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{validation, Result};

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of `Φ_e`, constant term first.
pub fn cyclotomic_polynomial(e: u64) -> Arc<Vec<BigInt>> {
    assert!(e >= 1);
    if let Some(p) = phi_cache().lock().unwrap().get(&e) {
        return p.clone();
    }
    // x^e - 1 divided by Φ_d for every proper divisor d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); e as usize + 1];
    num[0] = BigInt::from(-1);
    num[e as usize] = BigInt::one();
    for d in arith::divisors(e) {
        if d == e {
            continue;
        }
        let div = cyclotomic_polynomial(d);
        num = poly_div_exact(&num, &div);
    }
    let poly = Arc::new(num);
    phi_cache().lock().unwrap().insert(e, poly.clone());
    poly
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        // den is monic
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quot
}

/// An element of `Q(ζ_e)`.
#[derive(Clone, Debug)]
pub struct Cyc {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

fn reduce_in_place(e: u64, raw: &mut Vec<BigRational>) {
    let phi = cyclotomic_polynomial(e);
    let deg = phi.len() - 1;
    while raw.len() > deg {
        let top = raw.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = raw.len() - deg;
        for (j, pj) in phi.iter().enumerate().take(deg) {
            if !pj.is_zero() {
                raw[shift + j] -= &top * BigRational::from_integer(pj.clone());
            }
        }
    }
    raw.resize(deg, BigRational::zero());
}

/// Canonical form of `Σ raw[k] ζ_e^k`.
pub fn cyc_normalize(e: i64, raw: &[BigInt]) -> Result<Cyc> {
    if e <= 0 {
        return Err(validation(format!("conductor must be positive, got {e}")));
    }
    let raw: Vec<BigRational> = raw.iter().cloned().map(BigRational::from_integer).collect();
    Ok(Cyc::from_powers(e as u64, &raw))
}

impl Cyc {
    /// `Σ raw[k] ζ_e^k` with `k` taken modulo `e`.
    pub fn from_powers(e: u64, raw: &[BigRational]) -> Cyc {
        assert!(e >= 1);
        let mut folded = vec![BigRational::zero(); e as usize];
        for (k, c) in raw.iter().enumerate() {
            folded[k % e as usize] += c;
        }
        reduce_in_place(e, &mut folded);
        Cyc {
            conductor: e,
            coeffs: folded,
        }
    }

    pub fn zero(e: u64) -> Cyc {
        Cyc {
            conductor: e,
            coeffs: vec![BigRational::zero(); arith::euler_phi(e) as usize],
        }
    }

    pub fn from_rational(e: u64, q: BigRational) -> Cyc {
        let mut c = Cyc::zero(e);
        c.coeffs[0] = q;
        c
    }

    pub fn from_int(e: u64, n: i64) -> Cyc {
        Cyc::from_rational(e, BigRational::from_integer(n.into()))
    }

    pub fn one(e: u64) -> Cyc {
        Cyc::from_int(e, 1)
    }

    /// `ζ_e^k`.
    pub fn zeta_pow(e: u64, k: i64) -> Cyc {
        let k = k.rem_euclid(e as i64) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = BigRational::one();
        Cyc::from_powers(e, &raw)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Lies in `Z[ζ_e]` (the power basis is an integral basis).
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Image under `Q(ζ_e) -> Q(ζ_f)` for `e | f`.
    pub fn embed(&self, f: u64) -> Result<Cyc> {
        if f == 0 || !f.is_multiple_of(self.conductor) {
            return Err(validation(format!(
                "cannot embed conductor {} into {f}",
                self.conductor
            )));
        }
        if f == self.conductor {
            return Ok(self.clone());
        }
        let step = (f / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[k * step] = c.clone();
        }
        Ok(Cyc::from_powers(f, &raw))
    }

    fn aligned(a: &Cyc, b: &Cyc) -> (Cyc, Cyc) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let l = arith::lcm(a.conductor, b.conductor);
        (a.embed(l).unwrap(), b.embed(l).unwrap())
    }

    /// The automorphism `ζ -> ζ^k`.
    pub fn galois_apply(&self, k: i64) -> Result<Cyc> {
        let e = self.conductor;
        let km = k.rem_euclid(e as i64) as u64;
        if arith::gcd(km, e) != 1 && e > 1 {
            return Err(validation(format!("{k} is not a unit modulo {e}")));
        }
        if e <= 2 {
            return Ok(self.clone());
        }
        let mut raw = vec![BigRational::zero(); e as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(j as u64 * km % e) as usize] += c;
            }
        }
        Ok(Cyc::from_powers(e, &raw))
    }

    pub fn conj(&self) -> Cyc {
        if self.conductor <= 2 {
            self.clone()
        } else {
            self.galois_apply(self.conductor as i64 - 1).unwrap()
        }
    }

    /// Sum of all Galois conjugates.
    pub fn trace(&self) -> BigRational {
        let e = self.conductor;
        let mut acc = Cyc::zero(e);
        for k in arith::units_mod(e) {
            acc = &acc + &self.galois_apply(k as i64).unwrap();
        }
        acc.to_rational().expect("Galois trace is rational")
    }

    /// Product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let e = self.conductor;
        let mut acc = Cyc::one(e);
        for k in arith::units_mod(e) {
            acc = &acc * &self.galois_apply(k as i64).unwrap();
        }
        acc.to_rational().expect("Galois norm is rational")
    }

    pub fn inverse(&self) -> Option<Cyc> {
        if self.is_zero() {
            return None;
        }
        let e = self.conductor;
        let mut others = Cyc::one(e);
        for k in arith::units_mod(e) {
            if k % e != 1 % e {
                others = &others * &self.galois_apply(k as i64).unwrap();
            }
        }
        let n = (&others * self).to_rational().expect("norm is rational");
        Some(others.scale(&(BigRational::one() / n)))
    }

    pub fn scale(&self, q: &BigRational) -> Cyc {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Image in `GF(q)` under `ζ_e -> z`, where `z` has multiplicative order `e`.
    /// `None` if a denominator is divisible by `q`.
    pub fn reduce_mod(&self, q: u64, z: u64) -> Option<u64> {
        let qb = BigInt::from(q);
        let mut acc = 0u64;
        let mut zp = 1u64;
        for c in &self.coeffs {
            let den = c.denom().mod_floor(&qb).to_u64().unwrap();
            if den == 0 {
                return None;
            }
            let num = c.numer().mod_floor(&qb).to_u64().unwrap();
            let v = (num as u128 * arith::mod_inv(den, q) as u128 % q as u128) as u64;
            acc = ((acc as u128 + v as u128 * zp as u128) % q as u128) as u64;
            zp = (zp as u128 * z as u128 % q as u128) as u64;
        }
        Some(acc)
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Cyc) -> bool {
        if self.conductor == other.conductor {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Cyc::aligned(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyc {}

impl Add for &Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        if self.conductor != rhs.conductor {
            let (a, b) = Cyc::aligned(self, rhs);
            return &a + &b;
        }
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self + &(-rhs)
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        if self.conductor != rhs.conductor {
            let (a, b) = Cyc::aligned(self, rhs);
            return &a * &b;
        }
        let n = self.coeffs.len();
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        reduce_in_place(self.conductor, &mut raw);
        Cyc {
            conductor: self.conductor,
            coeffs: raw,
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if wrote {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let base = match k {
                0 => String::new(),
                1 => format!("z{}", self.conductor),
                _ => format!("z{}^{}", self.conductor, k),
            };
            if k == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{base}")?;
            } else {
                write!(f, "{abs}*{base}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(cyc_normalize(1, &ints(&[5])).unwrap(), Cyc::from_int(1, 5));
        assert_eq!(cyc_normalize(3, &ints(&[0, 1, 1])).unwrap(), Cyc::from_int(3, -1));
        assert_eq!(cyc_normalize(4, &ints(&[0, 0, 1])).unwrap(), Cyc::from_int(4, -1));
        assert!(cyc_normalize(0, &ints(&[1])).is_err());
        assert!(cyc_normalize(-3, &ints(&[1])).is_err());
    }

    #[test]
    fn cyclotomic_polynomials() {
        let p = |e| -> Vec<i64> { cyclotomic_polynomial(e).iter().map(|c| c.to_i64().unwrap()).collect() };
        assert_eq!(p(1), vec![-1, 1]);
        assert_eq!(p(2), vec![1, 1]);
        assert_eq!(p(3), vec![1, 1, 1]);
        assert_eq!(p(4), vec![1, 0, 1]);
        assert_eq!(p(6), vec![1, -1, 1]);
        assert_eq!(p(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn galois_examples() {
        let z3 = Cyc::zeta_pow(3, 1);
        let expected = &Cyc::from_int(3, -1) - &z3;
        assert_eq!(z3.galois_apply(2).unwrap(), expected);
        let z4 = Cyc::zeta_pow(4, 1);
        assert_eq!(z4.galois_apply(3).unwrap(), -&z4);
        assert_eq!(z4.galois_apply(1).unwrap(), z4);
        assert!(z4.galois_apply(2).is_err());
        assert_eq!(z3.conj(), Cyc::zeta_pow(3, 2));
        assert_eq!(Cyc::from_int(1, 7).conj(), Cyc::from_int(1, 7));
        assert_eq!(z4.conj(), -&z4);
    }

    #[test]
    fn cyclotomic_relation_holds_up_to_sixty() {
        for e in 1..=60u64 {
            let phi = cyclotomic_polynomial(e);
            let value = cyc_normalize(e as i64, &phi).unwrap();
            assert!(value.is_zero(), "Φ_{e}(ζ_{e}) != 0");
            // and ζ^e = 1 without folding
            let mut acc = Cyc::one(e);
            let z = Cyc::zeta_pow(e, 1);
            for _ in 0..e {
                acc = &acc * &z;
            }
            assert_eq!(acc, Cyc::one(e));
        }
    }

    #[test]
    fn cross_conductor_equality() {
        assert_eq!(Cyc::zeta_pow(4, 2), Cyc::from_int(2, -1));
        assert_eq!(Cyc::zeta_pow(6, 2), Cyc::zeta_pow(3, 1));
        let sum = &Cyc::zeta_pow(3, 1) + &Cyc::zeta_pow(4, 1);
        assert_eq!(sum.conductor(), 12);
    }

    #[test]
    fn inverse_and_reduction() {
        let x = &Cyc::from_int(5, 2) + &Cyc::zeta_pow(5, 1);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, Cyc::one(5));
        assert!(Cyc::zero(5).inverse().is_none());
        // ζ_4 -> 2 in GF(5)
        assert_eq!(Cyc::zeta_pow(4, 1).reduce_mod(5, 2), Some(2));
        assert_eq!(
            Cyc::from_rational(1, BigRational::new(1.into(), 5.into())).reduce_mod(5, 1),
            None
        );
    }

    fn small_cyc(e: u64) -> impl Strategy<Value = Cyc> {
        proptest::collection::vec(-4i64..=4, e as usize).prop_map(move |v| {
            let raw: Vec<BigRational> = v.into_iter().map(|x| BigRational::from_integer(x.into())).collect();
            Cyc::from_powers(e, &raw)
        })
    }

    fn conductor_and_pair() -> impl Strategy<Value = (Cyc, Cyc, Cyc)> {
        prop_oneof![Just(3u64), Just(4), Just(5), Just(8), Just(9), Just(12)]
            .prop_flat_map(|e| (small_cyc(e), small_cyc(e), small_cyc(e)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in conductor_and_pair()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn galois_is_a_ring_map((a, b, _c) in conductor_and_pair(), k in 1i64..40) {
            let e = a.conductor() as i64;
            prop_assume!(arith::gcd(k as u64, e as u64) == 1);
            let g = |x: &Cyc| x.galois_apply(k).unwrap();
            prop_assert_eq!(g(&(&a * &b)), &g(&a) * &g(&b));
            prop_assert_eq!(g(&(&a + &b)), &g(&a) + &g(&b));
            prop_assert_eq!(a.conj().conj(), a.clone());
            for l in 1..e {
                if arith::gcd(l as u64, e as u64) == 1 {
                    prop_assert_eq!(g(&a).galois_apply(l).unwrap(), a.galois_apply(k * l % e).unwrap());
                }
            }
        }

        #[test]
        fn norm_positivity((a, _b, _c) in conductor_and_pair()) {
            let t = (&a * &a.conj()).trace();
            prop_assert!(!t.is_negative());
            prop_assert_eq!(t.is_zero(), a.is_zero());
        }

        #[test]
        fn embedding_is_a_ring_map(
            pair in prop_oneof![Just((1u64, 3u64)), Just((2, 4)), Just((3, 6)), Just((4, 12))],
            seed in proptest::collection::vec(-3i64..=3, 8),
        ) {
            let (d, e) = pair;
            let mk = |off: usize| {
                let raw: Vec<BigRational> = (0..d as usize)
                    .map(|i| BigRational::from_integer(seed[(i + off) % seed.len()].into()))
                    .collect();
                Cyc::from_powers(d, &raw)
            };
            let (x, y) = (mk(0), mk(3));
            let emb = |v: &Cyc| v.embed(e).unwrap();
            prop_assert_eq!(emb(&(&x + &y)), &emb(&x) + &emb(&y));
            prop_assert_eq!(emb(&(&x * &y)), &emb(&x) * &emb(&y));
            prop_assert_eq!(emb(&x), x.clone());
        }
    }
}
