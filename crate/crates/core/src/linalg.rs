//! Integer and rational linear algebra on big integers.
//!
//! Matrices are dense and row-major. Everything here is exact; nothing
//! overflows because every entry is a [`BigInt`] or [`BigRational`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZVec = Vec<BigInt>;
pub type QVec = Vec<BigRational>;

pub fn zvec(values: &[i64]) -> ZVec {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

pub fn qvec(values: &[i64]) -> QVec {
    values
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)))
        .collect()
}

pub fn to_rational(v: &[BigInt]) -> QVec {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn qdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// gcd of the absolute values of the entries; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the content. The zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> ZVec {
    let g = content(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Primitive vector whose first nonzero entry is positive: a key for lines.
pub fn line_key(v: &[BigInt]) -> ZVec {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => p.iter().map(|x| -x).collect(),
        _ => p,
    }
}

/// Positive integer multiple of a rational vector (lcm of denominators).
pub fn clear_denominators(q: &[BigRational]) -> ZVec {
    let l = q.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    q.iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &BigInt, a: &[BigInt]) -> ZVec {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[BigInt]) -> ZVec {
    a.iter().map(|x| -x).collect()
}

pub fn fmt_vec<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ZVec>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Builds from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<ZVec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| zvec(r)).collect(), cols)
    }

    pub fn from_columns(columns: &[ZVec], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn rows(&self) -> &[ZVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<ZVec> {
        self.data
    }

    pub fn column(&self, j: usize) -> ZVec {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<ZVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_rows(self.columns(), self.rows)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += a * &other.data[k][j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> ZVec {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        self.data.iter().map(|r| dot(r, v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| is_zero_vec(r))
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let rows = self
            .data
            .iter()
            .map(|r| idx.iter().map(|&j| r[j].clone()).collect())
            .collect();
        Self::from_rows(rows, idx.len())
    }

    pub fn push_column(&mut self, c: &[BigInt]) {
        assert_eq!(c.len(), self.rows);
        for (r, x) in self.data.iter_mut().zip(c) {
            r.push(x.clone());
        }
        self.cols += 1;
    }

    pub fn remove_column(&mut self, j: usize) {
        for r in &mut self.data {
            r.remove(j);
        }
        self.cols -= 1;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[dst] += c * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let s = self.data[src].clone();
        for (x, y) in self.data[dst].iter_mut().zip(&s) {
            *x += c * y;
        }
    }

    /// col[dst] += c * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for r in &mut self.data {
            let v = c * &r[src];
            r[dst] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -&*x;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in &mut self.data {
            r[j] = -&r[j];
        }
    }

    /// Replaces rows (a, b) by (p*a + q*b, r*a + s*b).
    fn combine_rows(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for k in 0..self.cols {
            let x = self.data[a][k].clone();
            let y = self.data[b][k].clone();
            self.data[a][k] = p * &x + q * &y;
            self.data[b][k] = r * &x + s * &y;
        }
    }

    pub fn rank(&self) -> usize {
        rational_rank(&self.data, self.cols)
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
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
        sign * &a[n - 1][n - 1]
    }
}

/// Row-style Hermite normal form with transform: returns `(H, U)` such that
/// `U * M = H`, `U` unimodular, `H` in row echelon form with positive pivots
/// and entries above each pivot reduced into `[0, pivot)`. Zero rows are last.
pub fn row_hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.nrows());
    let mut pivot_row = 0;
    for col in 0..h.ncols() {
        if pivot_row == h.nrows() {
            break;
        }
        for i in pivot_row + 1..h.nrows() {
            if h.get(i, col).is_zero() {
                continue;
            }
            let a = h.get(pivot_row, col).clone();
            let b = h.get(i, col).clone();
            if a.is_zero() {
                h.swap_rows(pivot_row, i);
                u.swap_rows(pivot_row, i);
                continue;
            }
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let p = &a / &g;
            let q = &b / &g;
            // [x y; -q p] has determinant x*p + y*q = 1
            let mq = -q;
            h.combine_rows(pivot_row, i, &x, &y, &mq, &p);
            u.combine_rows(pivot_row, i, &x, &y, &mq, &p);
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let piv = h.get(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = h.get(i, col).div_floor(&piv);
            if !q.is_zero() {
                let mq = -q;
                h.add_row_multiple(i, pivot_row, &mq);
                u.add_row_multiple(i, pivot_row, &mq);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Nonzero rows of the row-style Hermite normal form: a canonical basis of
/// the row lattice.
pub fn row_lattice_basis(rows: &[ZVec], cols: usize) -> Vec<ZVec> {
    let (h, _) = row_hnf(&IntMatrix::from_rows(rows.to_vec(), cols));
    h.into_rows().into_iter().filter(|r| !is_zero_vec(r)).collect()
}

/// A basis of the integer kernel `{x in Z^n : M x = 0}`, returned as rows.
pub fn integer_kernel(m: &IntMatrix) -> Vec<ZVec> {
    let (h, u) = row_hnf(&m.transpose());
    (0..h.nrows())
        .filter(|&i| is_zero_vec(h.row(i)))
        .map(|i| u.row(i).to_vec())
        .collect()
}

/// Canonical basis of the integer kernel (row HNF of [`integer_kernel`]).
pub fn canonical_kernel(m: &IntMatrix) -> Vec<ZVec> {
    let k = integer_kernel(m);
    row_lattice_basis(&k, m.ncols())
}

/// Integer solution `x` of `B x = v` where `B` is given by its columns,
/// if one exists.
pub fn solve_integer(columns: &[ZVec], v: &[BigInt]) -> Option<ZVec> {
    let n = v.len();
    if columns.is_empty() {
        return if is_zero_vec(v) { Some(Vec::new()) } else { None };
    }
    // Row-reduce [B^T | I] on the lattice spanned by the columns.
    let bt = IntMatrix::from_rows(columns.to_vec(), n);
    let (h, u) = row_hnf(&bt);
    // Express v in the echelon basis h.
    let mut rest = v.to_vec();
    let mut coeffs = vec![BigInt::zero(); h.nrows()];
    for (i, c) in coeffs.iter_mut().enumerate() {
        let row = h.row(i);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            break;
        };
        let (q, r) = rest[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in rest.iter_mut().zip(row) {
            *x -= &q * y;
        }
        *c = q;
    }
    if !is_zero_vec(&rest) {
        return None;
    }
    // v = coeffs * H = coeffs * U * B^T
    let mut x = vec![BigInt::zero(); columns.len()];
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (xj, uij) in x.iter_mut().zip(u.row(i)) {
            *xj += c * uij;
        }
    }
    Some(x)
}

/// Rank over the rationals of the given rows.
pub fn rational_rank(rows: &[ZVec], cols: usize) -> usize {
    let q: Vec<QVec> = rows.iter().map(|r| to_rational(r)).collect();
    rref(q, cols).1.len()
}

/// Reduced row echelon form over Q; returns the nonzero rows and pivot columns.
pub fn rref(mut a: Vec<QVec>, cols: usize) -> (Vec<QVec>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// A rational solution of `A x = b` (`A` given by rows), if any.
pub fn solve_rational(a: &[QVec], b: &[BigRational], cols: usize) -> Option<QVec> {
    let aug: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// Canonical integer basis of a rational subspace spanned by `rows`:
/// the RREF rows scaled to primitive integer vectors.
pub fn subspace_basis(rows: &[ZVec], cols: usize) -> Vec<ZVec> {
    let q: Vec<QVec> = rows.iter().map(|r| to_rational(r)).collect();
    let (red, _) = rref(q, cols);
    red.iter().map(|r| primitive(&clear_denominators(r))).collect()
}

/// Integer basis of the orthogonal complement of the span of `rows` in Q^cols.
pub fn orthogonal_complement(rows: &[ZVec], cols: usize) -> Vec<ZVec> {
    if rows.is_empty() {
        return (0..cols)
            .map(|i| {
                let mut e = vec![BigInt::zero(); cols];
                e[i] = BigInt::one();
                e
            })
            .collect();
    }
    let m = IntMatrix::from_rows(rows.to_vec(), cols);
    let k = integer_kernel(&m);
    subspace_basis(&k, cols)
}

/// Orthogonal projection of `v` onto the orthogonal complement of `span(basis)`,
/// scaled to a primitive integer vector (positive multiple).
pub fn project_away(v: &[BigInt], basis: &[ZVec]) -> ZVec {
    if basis.is_empty() {
        return primitive(v);
    }
    let n = v.len();
    // Solve the Gram system G c = B v, then v - B^T c.
    let bq: Vec<QVec> = basis.iter().map(|b| to_rational(b)).collect();
    let vq = to_rational(v);
    let gram: Vec<QVec> = bq.iter().map(|bi| bq.iter().map(|bj| qdot(bi, bj)).collect()).collect();
    let rhs: QVec = bq.iter().map(|bi| qdot(bi, &vq)).collect();
    let c = solve_rational(&gram, &rhs, basis.len()).expect("basis vectors are independent");
    let mut out = vq;
    for (ci, bi) in c.iter().zip(&bq) {
        for k in 0..n {
            out[k] -= ci * &bi[k];
        }
    }
    primitive(&clear_denominators(&out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_transform_reconstructs() {
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (h, u) = row_hnf(&m);
        assert_eq!(u.mul(&m), h);
        assert_eq!(u.determinant().abs(), BigInt::one());
    }

    #[test]
    fn kernel_of_delpezzo_grading() {
        let q = IntMatrix::from_i64(&[&[1, -1, 0, -1, 1], &[1, 1, 1, 0, 2]]);
        let k = integer_kernel(&q);
        assert_eq!(k.len(), 3);
        for v in &k {
            assert!(is_zero_vec(&q.mul_vec(v)));
        }
    }

    #[test]
    fn integer_solve_detects_nonmembership() {
        let cols = vec![zvec(&[-1, 1]), zvec(&[1, 2])];
        assert!(solve_integer(&cols, &zvec(&[0, 1])).is_none());
        let x = solve_integer(&cols, &zvec(&[0, 3])).unwrap();
        assert_eq!(x, zvec(&[1, 1]));
    }

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_i64(&[&[-1, 1], &[1, 2]]);
        assert_eq!(m.determinant(), BigInt::from(-3));
        let z = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(z.determinant().is_zero());
    }

    #[test]
    fn projection_removes_lineality() {
        let p = project_away(&zvec(&[1, 1]), &[zvec(&[0, 1])]);
        assert_eq!(p, zvec(&[1, 0]));
    }
}
