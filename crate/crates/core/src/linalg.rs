//! Dense exact linear algebra: Gaussian elimination over a field and the
//! diagonal of the Smith normal form over the integers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) trait Field {
    type Elem: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn to_rational(&self, a: &Self::Elem) -> BigRational;
    fn from_rational(&self, a: &BigRational) -> Self::Elem;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    fn reduce(&self, v: u128) -> u64 {
        (v % self.p as u128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(*a as u128 + *b as u128)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(*a as u128 + (self.p - b) as u128)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(*a as u128 * *b as u128)
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (*a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
    fn from_rational(&self, a: &BigRational) -> u64 {
        let p = BigInt::from(self.p);
        let residue = |v: &BigInt| -> u64 { u64::try_from(v.mod_floor(&p)).expect("residue below p") };
        self.mul(&residue(a.numer()), &self.inv(&residue(a.denom())))
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn from_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Mat<E> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Mat { rows, cols, data: vec![v; rows * cols] }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<E>], zero: E) -> Self {
        let mut m = Mat::filled(rows, columns.len(), zero);
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

pub(crate) fn convert<F: Field>(field: &F, m: &Mat<i64>) -> Mat<F::Elem> {
    Mat { rows: m.rows, cols: m.cols, data: m.data.iter().map(|&v| field.from_i64(v)).collect() }
}

pub(crate) fn mul<F: Field>(field: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
    let mut out = Mat::filled(a.rows, b.cols, field.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if field.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let v = field.add(out.get(i, j), &field.mul(aik, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub(crate) fn mat_vec<F: Field>(field: &F, a: &Mat<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    (0..a.rows)
        .map(|i| {
            (0..a.cols).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(a.get(i, k), &v[k])))
        })
        .collect()
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns. Only the first `limit` columns are used for pivoting; the rest are
/// carried along (an augmented block).
pub(crate) fn rref<F: Field>(field: &F, m: &mut Mat<F::Elem>, limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..limit.min(m.cols) {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !field.is_zero(m.get(r, col))) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = field.inv(m.get(row, col));
        for c in 0..m.cols {
            let v = field.mul(m.get(row, c), &inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let factor = m.get(r, col).clone();
            if field.is_zero(&factor) {
                continue;
            }
            for c in 0..m.cols {
                let v = field.sub(m.get(r, c), &field.mul(&factor, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub(crate) fn rank<F: Field>(field: &F, m: &Mat<F::Elem>) -> usize {
    let mut work = m.clone();
    rref(field, &mut work, m.cols).len()
}

/// A basis of the kernel of `m`, as column vectors.
pub(crate) fn nullspace<F: Field>(field: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut work = m.clone();
    let pivots = rref(field, &mut work, m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); m.cols];
            v[free] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = field.sub(&field.zero(), work.get(r, free));
            }
            v
        })
        .collect()
}

/// Integer-like ring operations for the Smith normal form, with overflow
/// reported as `None`.
trait SnfRing: Clone + PartialEq + Debug {
    fn is_zero(&self) -> bool;
    fn abs_cmp_key(&self) -> BigInt;
    fn checked_sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn div_floor(&self, b: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl SnfRing for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_cmp_key(&self) -> BigInt {
        BigInt::from(self.unsigned_abs())
    }
    fn checked_sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn div_floor(&self, b: &Self) -> Self {
        Integer::div_floor(self, b)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfRing for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp_key(&self) -> BigInt {
        self.abs()
    }
    fn checked_sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn div_floor(&self, b: &Self) -> Self {
        Integer::div_floor(self, b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix.
pub(crate) fn invariant_factors(m: &Mat<i64>) -> Vec<BigInt> {
    let diag = match snf_diagonal(m.clone()) {
        Some(d) => d,
        None => {
            let big = Mat { rows: m.rows, cols: m.cols, data: m.data.iter().map(|&v| BigInt::from(v)).collect() };
            snf_diagonal(big).expect("big integers do not overflow")
        }
    };
    normalize_divisibility(diag)
}

/// Diagonalizes by unimodular row and column operations and returns the
/// absolute values of the nonzero diagonal entries, not yet in divisibility
/// order.
fn snf_diagonal<T: SnfRing>(mut m: Mat<T>) -> Option<Vec<BigInt>> {
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.rows.min(m.cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize, BigInt)> = None;
        for r in t..m.rows {
            for c in t..m.cols {
                let v = m.get(r, c);
                if !v.is_zero() {
                    let key = v.abs_cmp_key();
                    if best.as_ref().is_none_or(|b| key < b.2) {
                        best = Some((r, c, key));
                    }
                }
            }
        }
        let Some((r, c, _)) = best else { break };
        m.swap_rows(t, r);
        swap_cols(&mut m, t, c);
        loop {
            let mut dirty = false;
            for r in t + 1..m.rows {
                if m.get(r, t).is_zero() {
                    continue;
                }
                let q = m.get(r, t).div_floor(m.get(t, t));
                for c in t..m.cols {
                    let v = m.get(r, c).checked_sub_mul(&q, m.get(t, c))?;
                    m.set(r, c, v);
                }
                if !m.get(r, t).is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..m.cols {
                if m.get(t, c).is_zero() {
                    continue;
                }
                let q = m.get(t, c).div_floor(m.get(t, t));
                for r in t..m.rows {
                    let v = m.get(r, c).checked_sub_mul(&q, m.get(r, t))?;
                    m.set(r, c, v);
                }
                if !m.get(t, c).is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // a remainder survived: move the smallest entry of row/column t to the pivot
            let mut best = (t, t, m.get(t, t).abs_cmp_key());
            for r in t + 1..m.rows {
                let v = m.get(r, t);
                if !v.is_zero() && v.abs_cmp_key() < best.2 {
                    best = (r, t, v.abs_cmp_key());
                }
            }
            for c in t + 1..m.cols {
                let v = m.get(t, c);
                if !v.is_zero() && v.abs_cmp_key() < best.2 {
                    best = (t, c, v.abs_cmp_key());
                }
            }
            m.swap_rows(t, best.0);
            swap_cols(&mut m, t, best.1);
        }
        diag.push(m.get(t, t).to_big().abs());
        t += 1;
    }
    Some(diag)
}

fn swap_cols<T: Clone>(m: &mut Mat<T>, a: usize, b: usize) {
    if a != b {
        for r in 0..m.rows {
            m.data.swap(r * m.cols + a, r * m.cols + b);
        }
    }
}

/// Turns any diagonal into the invariant-factor chain by repeatedly replacing
/// pairs with their gcd and lcm.
fn normalize_divisibility(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: usize, cols: usize, v: &[i64]) -> Mat<i64> {
        Mat { rows, cols, data: v.to_vec() }
    }

    #[test]
    fn smith_of_small_matrices() {
        // diag(2, 3) ~ diag(1, 6)
        let m = ints(2, 2, &[2, 0, 0, 3]);
        assert_eq!(invariant_factors(&m), vec![BigInt::from(1), BigInt::from(6)]);
        let m = ints(2, 3, &[2, 4, 4, -6, 6, 12]);
        // gcd of entries 2, gcd of 2x2 minors (36, 48, 24) is 12 -> factors 2, 6
        assert_eq!(invariant_factors(&m), vec![BigInt::from(2), BigInt::from(6)]);
        assert!(invariant_factors(&ints(2, 2, &[0, 0, 0, 0])).is_empty());
    }

    #[test]
    fn smith_falls_back_on_overflow() {
        let big = i64::MAX / 2;
        let m = ints(2, 2, &[big, big - 1, big - 1, big - 2]);
        // determinant is -1 so the factors are 1, 1
        assert_eq!(invariant_factors(&m), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn field_ranks_and_kernels() {
        let m = ints(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(rank(&Rationals, &convert(&Rationals, &m)), 1);
        let ker = nullspace(&Rationals, &convert(&Rationals, &m));
        assert_eq!(ker.len(), 2);
        let mq = convert(&Rationals, &m);
        for v in &ker {
            assert!(mat_vec(&Rationals, &mq, v).iter().all(|x| x.is_zero()));
        }
        let f2 = PrimeField { p: 2 };
        assert_eq!(rank(&f2, &convert(&f2, &ints(2, 2, &[2, 1, 0, 2]))), 1);
        let f7 = PrimeField { p: 7 };
        assert_eq!(f7.mul(&f7.inv(&3), &3), 1);
    }
}
