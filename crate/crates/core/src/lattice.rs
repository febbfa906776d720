//! Exact integer and rational matrices.
//!
//! Everything here works over [`BigInt`] / [`BigRational`]; there is no
//! floating point anywhere in the crate. Ranks and determinants use
//! fraction-free (Bareiss) elimination, Hermite and Smith forms are computed
//! with explicit unimodular transforms.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count must equal rows * cols"
        );
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of anything convertible to [`BigInt`].
    ///
    /// `cols` is needed so that an empty row list still has a shape.
    pub fn from_rows<R, T>(cols: usize, rows: R) -> Self
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut data = Vec::new();
        let mut count = 0;
        for row in rows {
            let before = data.len();
            data.extend(row.into_iter().map(Into::into));
            assert_eq!(data.len() - before, cols, "ragged row {count}");
            count += 1;
        }
        IntMatrix::new(count, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = &self.data[source * self.cols + j] * factor;
            self.data[target * self.cols + j] += delta;
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = &self.data[i * self.cols + source] * factor;
            self.data[i * self.cols + target] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let e = &mut self.data[i * self.cols + j];
            *e = -std::mem::take(e);
        }
    }

    /// Replaces rows (a, b) by (s*a + t*b, p*a + q*b).
    fn combine_rows(&mut self, a: usize, b: usize, [s, t, p, q]: [&BigInt; 4]) {
        for j in 0..self.cols {
            let x = self.data[a * self.cols + j].clone();
            let y = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = s * &x + t * &y;
            self.data[b * self.cols + j] = p * &x + q * &y;
        }
    }

    /// Exact determinant by Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        bareiss_rank(self.clone())
    }

    /// Row-style Hermite normal form: returns `(h, u)` with `u * self = h`,
    /// `u` unimodular, pivots positive and entries above each pivot reduced
    /// into `[0, pivot)`.
    pub fn hermite_normal_form(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !h[(i, c)].is_zero()) else {
                continue;
            };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            for i in r + 1..self.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let a = h[(r, c)].clone();
                let b = h[(i, c)].clone();
                let eg = a.extended_gcd(&b);
                let p = -(&b / &eg.gcd);
                let q = &a / &eg.gcd;
                let coeffs = [&eg.x, &eg.y, &p, &q];
                h.combine_rows(r, i, coeffs);
                u.combine_rows(r, i, coeffs);
            }
            if h[(r, c)].is_negative() {
                h.negate_row(r);
                u.negate_row(r);
            }
            let pivot = h[(r, c)].clone();
            for k in 0..r {
                let q = h[(k, c)].div_floor(&pivot);
                let neg = -q;
                h.add_row_multiple(k, r, &neg);
                u.add_row_multiple(k, r, &neg);
            }
            r += 1;
        }
        debug_assert!(is_unimodular(&u), "HNF transform must be unimodular");
        (h, u)
    }

    /// Smith normal form: returns `(d, u, v)` with `u * self * v = d`,
    /// `d` diagonal, nonnegative, each diagonal entry dividing the next
    /// (zeros last), `u` and `v` unimodular.
    pub fn smith_normal_form(&self) -> SmithForm {
        let (rows, cols) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = IntMatrix::identity(rows);
        let mut v = IntMatrix::identity(cols);
        for t in 0..rows.min(cols) {
            while let Some((pi, pj)) = d.min_abs_nonzero(t) {
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);

                let pivot = d[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..rows {
                    let q = -(&d[(i, t)] / &pivot);
                    d.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    clean &= d[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    let q = -(&d[(t, j)] / &pivot);
                    d.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                    clean &= d[(t, j)].is_zero();
                }
                if !clean {
                    continue;
                }
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        d.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                    }
                    None => break,
                }
            }
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
        }
        debug_assert!(
            is_unimodular(&u) && is_unimodular(&v),
            "SNF transforms must be unimodular"
        );
        SmithForm { d, u, v }
    }

    fn min_abs_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let e = &self[(i, j)];
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| e.abs() < self[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of [`IntMatrix::smith_normal_form`].
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `d`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

fn is_unimodular(m: &IntMatrix) -> bool {
    m.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
}

fn bareiss_rank(mut a: IntMatrix) -> usize {
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[(i, j)] * &a[(rank, c)] - &a[(i, c)] * &a[(rank, j)]) / &prev;
                a[(i, j)] = v;
            }
            a[(i, c)] = BigInt::zero();
        }
        prev = a[(rank, c)].clone();
        rank += 1;
    }
    rank
}

/// Dense row-major matrix of rationals, always in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count must equal rows * cols"
        );
        // BigRational::new reduces on construction; this re-normalizes values
        // built with new_raw elsewhere.
        let data = data
            .into_iter()
            .map(|q| BigRational::new(q.numer().clone(), q.denom().clone()))
            .collect();
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        let n = rows.len();
        let data: Vec<BigRational> = rows.into_iter().flatten().collect();
        RatMatrix::new(n, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Clears denominators row by row. Row scaling does not change the rank.
    fn integer_rows(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            data.extend(row.iter().map(|q| q.numer() * (&l / q.denom())));
        }
        IntMatrix::new(self.rows, self.cols, data)
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(self.integer_rows())
    }

    /// Reduced row echelon form; returns the matrix and its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            for j in 0..a.cols {
                a.data.swap(r * a.cols + j, p * a.cols + j);
            }
            let inv = a[(r, c)].recip();
            for j in 0..a.cols {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..a.cols {
                    let delta = &f * &a[(r, j)];
                    a[(i, j)] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.cols];
                x[f] = BigRational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = -r[(row, f)].clone();
                }
                x
            })
            .collect()
    }

    /// Unique solution of `self * x = rhs`, or `None` when the system is
    /// inconsistent or underdetermined.
    pub fn solve(&self, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, b) in rhs.iter().enumerate() {
            aug.extend(self.row(i).iter().cloned());
            aug.push(b.clone());
        }
        let aug = RatMatrix {
            rows: self.rows,
            cols: self.cols + 1,
            data: aug,
        };
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) || pivots.len() != self.cols {
            return None;
        }
        Some((0..self.cols).map(|i| r[(i, self.cols)].clone()).collect())
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank of a rational matrix.
pub fn rational_rank(m: &RatMatrix) -> usize {
    m.rank()
}

/// Exact determinant; rejects non-square input.
pub fn integer_determinant(m: &IntMatrix) -> Result<BigInt> {
    m.determinant()
}

/// Nonnegative gcd of a list; zero for an empty or all-zero list.
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(cols, rows.iter().map(|r| r.iter().copied()))
    }

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn hnf_identity_and_diagonal() {
        let id = IntMatrix::identity(3);
        assert_eq!(id.hermite_normal_form(), (id.clone(), id.clone()));
        let d = m(&[&[2, 0], &[0, 2]]);
        assert_eq!(d.hermite_normal_form(), (d.clone(), IntMatrix::identity(2)));
    }

    #[test]
    fn hnf_preserves_abs_determinant() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let (h, u) = a.hermite_normal_form();
        assert_eq!(&u * &a, h);
        // det [[1,2],[3,4]] = -2
        assert_eq!(h.determinant().unwrap().abs(), int(2));
        assert!(h[(1, 0)].is_zero());
        assert!(h[(0, 0)].is_positive() && h[(1, 1)].is_positive());
        assert!(!h[(0, 1)].is_negative() && h[(0, 1)] < h[(1, 1)]);
    }

    #[test]
    fn hnf_of_rank_deficient_matrix() {
        let a = m(&[&[2, 4, 6], &[1, 2, 3], &[0, 0, 5]]);
        let (h, u) = a.hermite_normal_form();
        assert_eq!(&u * &a, h);
        assert_eq!(h.row(2).iter().filter(|x| !x.is_zero()).count(), 0);
    }

    #[test]
    fn snf_of_diag_2_3() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let s = a.smith_normal_form();
        assert_eq!(&(&s.u * &a) * &s.v, s.d);
        assert_eq!(s.invariant_factors(), vec![int(1), int(6)]);
        let id = IntMatrix::identity(4);
        assert_eq!(id.smith_normal_form().d, id);
    }

    #[test]
    fn snf_of_p11222_chart_has_z2() {
        // rays v1, v2, v4, v5 of P(1,1,2,2,2)
        let a = m(&[
            &[-1, -2, -2, -2],
            &[1, 0, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        let s = a.smith_normal_form();
        assert_eq!(&(&s.u * &a) * &s.v, s.d);
        let f = s.invariant_factors();
        assert_eq!(f.iter().product::<BigInt>(), int(2));
        assert_eq!(f, vec![int(1), int(1), int(1), int(2)]);
    }

    #[test]
    fn snf_non_square() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12]]);
        let s = a.smith_normal_form();
        assert_eq!(&(&s.u * &a) * &s.v, s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.invariant_factors(), vec![int(2), int(6)]);
    }

    #[test]
    fn determinants_of_p11222_charts() {
        let rays: [&[i64]; 5] = [
            &[-1, -2, -2, -2],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ];
        let chart = |drop: usize| {
            m(&rays
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, r)| *r)
                .collect::<Vec<_>>())
        };
        assert_eq!(chart(0).determinant().unwrap().abs(), int(1));
        assert_eq!(chart(1).determinant().unwrap().abs(), int(1));
        assert_eq!(chart(2).determinant().unwrap().abs(), int(2));
        assert_eq!(IntMatrix::identity(5).determinant().unwrap(), int(1));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let a = m(&[&[1, 2, 3]]);
        assert!(matches!(
            a.determinant(),
            Err(Error::NonSquare { rows: 1, cols: 3 })
        ));
    }

    #[test]
    fn rank_basics() {
        assert_eq!(IntMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(IntMatrix::identity(6).rank(), 6);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(rational_rank(&IntMatrix::identity(3).to_rational()), 3);
    }

    #[test]
    fn null_space_and_solve() {
        let a = m(&[&[1, 1, 1], &[1, 2, 3]]).to_rational();
        let ns = a.null_space();
        assert_eq!(ns.len(), 1);
        for i in 0..2 {
            let s: BigRational = a.row(i).iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(s.is_zero());
        }
        let sq = m(&[&[2, 1], &[1, 3]]).to_rational();
        let rhs = [
            BigRational::from_integer(int(3)),
            BigRational::from_integer(int(4)),
        ];
        assert_eq!(
            sq.solve(&rhs).unwrap(),
            vec![
                BigRational::from_integer(int(1)),
                BigRational::from_integer(int(1))
            ]
        );
        // inconsistent
        let over = m(&[&[1], &[1]]).to_rational();
        assert!(over.solve(&rhs).is_none());
    }
}
