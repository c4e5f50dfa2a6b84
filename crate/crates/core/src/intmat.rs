//! Integer matrices with Smith and Hermite normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl ZMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ZMat { rows, cols, data }
    }

    pub fn mul(&self, other: &ZMat) -> ZMat {
        assert_eq!(self.cols, other.rows);
        let mut out = ZMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = f * &self[(src, j)];
            self[(dst, j)] += t;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = f * &self[(i, src)];
            self[(i, dst)] += t;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for ZMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ZMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form `left * a * right = diag`, with `left`, `right` unimodular.
/// The inverses of both transforms are tracked alongside.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Nonzero diagonal entries, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub left: ZMat,
    pub left_inv: ZMat,
    pub right: ZMat,
    pub right_inv: ZMat,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

pub fn smith_normal_form(a: &ZMat) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = ZMat::identity(m);
    let mut left_inv = ZMat::identity(m);
    let mut right = ZMat::identity(n);
    let mut right_inv = ZMat::identity(n);

    // Row op on d by E is mirrored as left := E*left and left_inv := left_inv*E^{-1}.
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            left.swap_rows($a, $b);
            left_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! row_add {
        ($dst:expr, $src:expr, $f:expr) => {{
            let f: &BigInt = $f;
            d.add_row($dst, $src, f);
            left.add_row($dst, $src, f);
            left_inv.add_col($src, $dst, &(-f));
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            right.swap_cols($a, $b);
            right_inv.swap_rows($a, $b);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $f:expr) => {{
            let f: &BigInt = $f;
            d.add_col($dst, $src, f);
            right.add_col($dst, $src, f);
            right_inv.add_row($src, $dst, &(-f));
        }};
    }

    let mut t = 0;
    while t < m.min(n) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        row_swap!(t, pi);
        col_swap!(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_add!(i, t, &(-q));
                if !d[(i, t)].is_zero() {
                    row_swap!(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_add!(j, t, &(-q));
                if !d[(t, j)].is_zero() {
                    col_swap!(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility of the trailing block by the pivot.
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    row_add!(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
            left_inv.negate_col(t);
        }
        t += 1;
    }
    let diagonal = (0..t).map(|i| d[(i, i)].clone()).collect();
    Smith {
        diagonal,
        left,
        left_inv,
        right,
        right_inv,
    }
}

/// Row-style Hermite normal form of the row span of `a`: returns the nonzero rows,
/// pivots positive, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(a: &ZMat) -> Vec<Vec<BigInt>> {
    let mut h = a.clone();
    let (m, n) = (h.rows, h.cols);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r.
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !h[(i, c)].is_zero() && best.is_none_or(|b| h[(i, c)].abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row(i, r, &(-q));
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row(i, r, &(-q));
        }
        r += 1;
    }
    (0..r)
        .map(|i| (0..n).map(|j| h[(i, j)].clone()).collect())
        .collect()
}
