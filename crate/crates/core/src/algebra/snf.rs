//! Smith normal form over a Euclidean domain.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub trait EuclideanRing {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Compares Euclidean norms of nonzero elements.
    fn norm_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
    /// `a = q b + r` with `r = 0` or `norm(r) < norm(b)`.
    fn divrem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// `(a * u, u)` with `u` a unit and `a * u` canonical.
    fn unit_normal(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);
    fn is_unit(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// The integers with nonnegative canonical representatives.
#[derive(Clone, Debug, Default)]
pub struct Integers;

impl EuclideanRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn norm_cmp(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.abs().cmp(&b.abs())
    }
    fn divrem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        a.div_mod_floor(b)
    }
    fn unit_normal(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.is_negative() {
            (-a, -BigInt::one())
        } else {
            (a.clone(), BigInt::one())
        }
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
}

/// Row-major dense matrix.
pub type Matrix<E> = Vec<Vec<E>>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SnfResult<E> {
    /// Nonzero invariant factors in divisibility order, unit-normalised.
    pub factors: Vec<E>,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    /// `left * A * right = D` when requested.
    #[serde(skip)]
    pub left: Option<Matrix<E>>,
    #[serde(skip)]
    pub right: Option<Matrix<E>>,
}

pub fn identity<R: EuclideanRing>(ring: &R, n: usize) -> Matrix<R::Elem> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul<R: EuclideanRing>(
    ring: &R,
    a: &Matrix<R::Elem>,
    b: &Matrix<R::Elem>,
    inner: usize,
) -> Matrix<R::Elem> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(ring.zero(), |acc, k| {
                        if ring.is_zero(&row[k]) || ring.is_zero(&b[k][j]) {
                            acc
                        } else {
                            ring.add(&acc, &ring.mul(&row[k], &b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// `(g, s, u)` with `s a + u b = g`, `g` unit-normal. Remainders are
/// normalised at every step to limit coefficient growth.
pub fn gcdext<R: EuclideanRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> (R::Elem, R::Elem, R::Elem) {
    let (mut r0, mut s0, mut u0) = (a.clone(), ring.one(), ring.zero());
    let (mut r1, mut s1, mut u1) = (b.clone(), ring.zero(), ring.one());
    while !ring.is_zero(&r1) {
        let (q, r) = ring.divrem(&r0, &r1);
        let s = ring.sub(&s0, &ring.mul(&q, &s1));
        let u = ring.sub(&u0, &ring.mul(&q, &u1));
        let (r, unit) = ring.unit_normal(&r);
        let (s, u) = (ring.mul(&s, &unit), ring.mul(&u, &unit));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        u0 = std::mem::replace(&mut u1, u);
    }
    let (g, unit) = ring.unit_normal(&r0);
    (g, ring.mul(&s0, &unit), ring.mul(&u0, &unit))
}

fn exact_div<R: EuclideanRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> R::Elem {
    let (q, r) = ring.divrem(a, b);
    debug_assert!(ring.is_zero(&r), "inexact division");
    q
}

struct Work<'a, R: EuclideanRing> {
    ring: &'a R,
    a: Matrix<R::Elem>,
    left: Option<Matrix<R::Elem>>,
    right: Option<Matrix<R::Elem>>,
}

/// `(x, y) -> (c00 x + c01 y, c10 x + c11 y)`.
type Mix<E> = [E; 4];

fn mix_pair<R: EuclideanRing>(
    ring: &R,
    x: &R::Elem,
    y: &R::Elem,
    c: &Mix<R::Elem>,
) -> (R::Elem, R::Elem) {
    let lin = |p: &R::Elem, q: &R::Elem| {
        let mut acc = ring.zero();
        if !ring.is_zero(p) && !ring.is_zero(x) {
            acc = ring.mul(p, x);
        }
        if !ring.is_zero(q) && !ring.is_zero(y) {
            acc = ring.add(&acc, &ring.mul(q, y));
        }
        acc
    };
    (lin(&c[0], &c[1]), lin(&c[2], &c[3]))
}

impl<R: EuclideanRing> Work<'_, R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(l) = &mut self.left {
            l.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(r) = &mut self.right {
            for row in r.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// Unimodular mix of rows `i` and `j`.
    fn mix_rows(&mut self, i: usize, j: usize, c: &Mix<R::Elem>) {
        let ring = self.ring;
        let apply = |m: &mut Matrix<R::Elem>| {
            for k in 0..m[i].len() {
                let (x, y) = mix_pair(ring, &m[i][k], &m[j][k], c);
                m[i][k] = x;
                m[j][k] = y;
            }
        };
        apply(&mut self.a);
        if let Some(l) = &mut self.left {
            apply(l);
        }
    }

    /// Unimodular mix of columns `i` and `j`.
    fn mix_cols(&mut self, i: usize, j: usize, c: &Mix<R::Elem>) {
        let ring = self.ring;
        let apply = |m: &mut Matrix<R::Elem>| {
            for row in m.iter_mut() {
                let (x, y) = mix_pair(ring, &row[i], &row[j], c);
                row[i] = x;
                row[j] = y;
            }
        };
        apply(&mut self.a);
        if let Some(r) = &mut self.right {
            apply(r);
        }
    }

    /// Coefficients clearing `b` against the pivot `p`: the first output
    /// becomes `gcd(p, b)` and the second `0`.
    fn clearing(&self, p: &R::Elem, b: &R::Elem) -> Mix<R::Elem> {
        let ring = self.ring;
        let (q, r) = ring.divrem(b, p);
        if ring.is_zero(&r) {
            return [ring.one(), ring.zero(), ring.neg(&q), ring.one()];
        }
        let (g, s, u) = gcdext(ring, p, b);
        let pg = exact_div(ring, p, &g);
        let bg = exact_div(ring, b, &g);
        [s, u, ring.neg(&bg), pg]
    }

    fn scale_row(&mut self, i: usize, u: &R::Elem) {
        let ring = self.ring;
        for x in self.a[i].iter_mut() {
            *x = ring.mul(x, u);
        }
        if let Some(l) = &mut self.left {
            for x in l[i].iter_mut() {
                *x = ring.mul(x, u);
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in self.a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if self.ring.is_zero(x) {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.ring.norm_cmp(x, &self.a[bi][bj]) != Ordering::Less => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

/// Smith normal form. Transforms are tracked only when requested.
///
/// Off-pivot entries are cleared with Bezout mixes, so the pivot only ever
/// shrinks to a gcd and quotients stay exact.
pub fn smith_normal_form<R: EuclideanRing>(
    ring: &R,
    matrix: &Matrix<R::Elem>,
    with_transforms: bool,
) -> SnfResult<R::Elem> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    assert!(matrix.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut w = Work {
        ring,
        a: matrix.clone(),
        left: with_transforms.then(|| identity(ring, rows)),
        right: with_transforms.then(|| identity(ring, cols)),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.min_entry(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            for i in t + 1..rows {
                if !ring.is_zero(&w.a[i][t]) {
                    let c = w.clearing(&w.a[t][t], &w.a[i][t]);
                    w.mix_rows(t, i, &c);
                }
            }
            let mut col_dirty = false;
            for j in t + 1..cols {
                if !ring.is_zero(&w.a[t][j]) {
                    let c = w.clearing(&w.a[t][t], &w.a[t][j]);
                    w.mix_cols(t, j, &c);
                    col_dirty = true;
                }
            }
            if col_dirty && (t + 1..rows).any(|i| !ring.is_zero(&w.a[i][t])) {
                continue;
            }
            // Pivot must divide the whole remaining block.
            let bad_row = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !ring.is_zero(&ring.divrem(&w.a[i][j], &w.a[t][t]).1))
            });
            match bad_row {
                Some(i) => {
                    let one = ring.one();
                    w.mix_rows(t, i, &[one.clone(), one.clone(), ring.zero(), one]);
                }
                None => break,
            }
        }
        let (_, u) = ring.unit_normal(&w.a[t][t]);
        w.scale_row(t, &u);
        t += 1;
    }
    let factors: Vec<R::Elem> = (0..t).map(|i| w.a[i][i].clone()).collect();
    SnfResult {
        rank: factors.len(),
        factors,
        rows,
        cols,
        left: w.left,
        right: w.right,
    }
}

pub fn integer_snf(matrix: &Matrix<BigInt>) -> SnfResult<BigInt> {
    smith_normal_form(&Integers, matrix, false)
}

pub fn integer_matrix(rows: &[Vec<i64>]) -> Matrix<BigInt> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Rank of a matrix over a Euclidean domain.
pub fn rank<R: EuclideanRing>(ring: &R, matrix: &Matrix<R::Elem>) -> usize {
    smith_normal_form(ring, matrix, false).rank
}
