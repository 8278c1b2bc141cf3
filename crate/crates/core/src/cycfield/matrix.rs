use std::fmt;

use num_integer::Integer;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::CycNum;
use crate::error::{Error, Result};

/// Dense matrix over a cyclotomic field; all entries share one field order.
#[derive(Clone)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    data: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix { rows, cols, order: 1, data: vec![CycNum::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = CycNum::one();
        }
        m
    }

    /// Builds a matrix from row-major entries of arbitrary orders.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<CycNum>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        let order = data.iter().fold(1u32, |acc, x| acc.lcm(&x.order()));
        let data = data.into_iter().map(|x| x.lift(order)).collect();
        CycMatrix { rows, cols, order, data }
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn diagonal(entries: &[CycNum]) -> Self {
        let n = entries.len();
        let mut data = vec![CycNum::zero(); n * n];
        for (i, e) in entries.iter().enumerate() {
            data[i * n + i] = e.clone();
        }
        Self::from_vec(n, n, data)
    }

    /// Permutation matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = CycNum::one();
        }
        m
    }

    /// Column vector.
    pub fn column(entries: Vec<CycNum>) -> Self {
        let n = entries.len();
        Self::from_vec(n, 1, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        if !self.order.is_multiple_of(v.order()) {
            let m = self.order.lcm(&v.order());
            self.lift_in_place(m);
        }
        self.data[i * self.cols + j] = v.lift(self.order);
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn lift(&self, m: u32) -> Self {
        let mut out = self.clone();
        out.lift_in_place(m);
        out
    }

    fn lift_in_place(&mut self, m: u32) {
        if m != self.order {
            for x in &mut self.data {
                *x = x.lift(m);
            }
            self.order = m;
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.order.lcm(&b.order);
        (a.lift(m), b.lift(m))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        CycMatrix { rows: self.cols, cols: self.rows, order: self.order, data }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let (a, b) = if self.order == rhs.order { (self.clone(), rhs.clone()) } else { Self::aligned(self, rhs) };
        let mut data = vec![CycNum::zero().lift(a.order); a.rows * b.cols];
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..b.cols {
                    let y = b.get(k, j);
                    if !y.is_zero() {
                        data[i * b.cols + j] += &(x * y);
                    }
                }
            }
        }
        Ok(CycMatrix { rows: a.rows, cols: b.cols, order: a.order, data })
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let (a, b) = Self::aligned(self, rhs);
        let data = a.data.iter().zip(&b.data).map(|(x, y)| f(x, y)).collect();
        Ok(CycMatrix { rows: a.rows, cols: a.cols, order: a.order, data })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |x, y| x + y)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |x, y| x - y)
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::from_vec(self.rows, self.cols, self.data.iter().map(|x| x * c).collect())
    }

    /// Nonnegative matrix power.
    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> CycNum {
        (0..self.rows.min(self.cols)).fold(CycNum::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Index of the first column holding a nonzero entry.
    pub fn first_nonzero_column(&self) -> Option<usize> {
        (0..self.cols).find(|&j| (0..self.rows).any(|i| !self.get(i, j).is_zero()))
    }

    /// Entries in column-major order.
    pub fn vectorize(&self) -> Vec<CycNum> {
        let mut out = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }

    pub fn block_diagonal(blocks: &[CycMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    let x = b.get(i, j);
                    if !x.is_zero() {
                        out.set(r0 + i, c0 + j, x.clone());
                    }
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form; returns the reduced matrix and pivot columns.
    ///
    /// Pivots are chosen among the candidate rows by smallest coefficient
    /// support, which keeps intermediate entries short.
    pub fn rref(&self) -> (CycMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let best = (row..m.rows).filter(|&i| !m.get(i, col).is_zero()).min_by_key(|&i| m.get(i, col).support());
            let Some(p) = best else { continue };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.data[row * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let f = m.get(i, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let t = m.get(row, j);
                    if t.is_zero() {
                        continue;
                    }
                    let v = &f * t;
                    m.data[i * m.cols + j] -= &v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace, one column vector per basis element.
    pub fn nullspace(&self) -> Vec<CycMatrix> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CycNum::zero(); self.cols];
                v[f] = CycNum::one();
                for (prow, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(prow, f);
                }
                CycMatrix::column(v)
            })
            .collect()
    }

    /// Solves `self * X = b` exactly; returns one solution.
    pub fn solve(&self, b: &CycMatrix) -> Result<CycMatrix> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "system with {} rows, right-hand side with {}",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        let mut aug = CycMatrix::zeros(self.rows, n + b.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..b.cols {
                aug.set(i, n + j, b.get(i, j).clone());
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Err(Error::NoSolution);
        }
        let mut x = CycMatrix::zeros(n, b.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(prow, n + j).clone());
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<CycMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        self.solve(&CycMatrix::identity(self.rows)).map_err(|_| Error::NonInvertible("singular matrix".into()))
    }
}

/// Basis of `{X : X·a_g = b_g·X for all g}`, with `X` of shape
/// `dim(b) × dim(a)`.
pub fn intertwiner_space(a: &[CycMatrix], b: &[CycMatrix]) -> Result<Vec<CycMatrix>> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::DimensionMismatch("generator lists differ in length".into()));
    }
    let (da, db) = (a[0].rows(), b[0].rows());
    // unknown X[i][j] sits at column j*db + i
    let unknowns = da * db;
    let mut system = Vec::new();
    for (ag, bg) in a.iter().zip(b) {
        for i in 0..db {
            for j in 0..da {
                let mut row = vec![CycNum::zero(); unknowns];
                for k in 0..da {
                    let x = ag.get(k, j);
                    if !x.is_zero() {
                        row[k * db + i] += x;
                    }
                }
                for k in 0..db {
                    let y = bg.get(i, k);
                    if !y.is_zero() {
                        row[j * db + k] -= y;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    system.push(row);
                }
            }
        }
    }
    if system.is_empty() {
        system.push(vec![CycNum::zero(); unknowns]);
    }
    let m = CycMatrix::from_rows(system);
    Ok(m.nullspace()
        .into_iter()
        .map(|v| {
            let e = v.entries();
            let mut x = CycMatrix::zeros(db, da);
            for j in 0..da {
                for i in 0..db {
                    x.set(i, j, e[j * db + i].clone());
                }
            }
            x
        })
        .collect())
}

/// Dimension of the commutant of a family of square matrices.
pub fn commutant_dim(gens: &[CycMatrix]) -> Result<usize> {
    Ok(intertwiner_space(gens, gens)?.len())
}

impl PartialEq for CycMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for CycMatrix {}

macro_rules! matrix_op {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl std::ops::$tr<&CycMatrix> for &CycMatrix {
            type Output = CycMatrix;
            fn $m(self, rhs: &CycMatrix) -> CycMatrix {
                self.$imp(rhs).expect("matrix dimensions")
            }
        }
        impl std::ops::$tr<CycMatrix> for CycMatrix {
            type Output = CycMatrix;
            fn $m(self, rhs: CycMatrix) -> CycMatrix {
                (&self).$imp(&rhs).expect("matrix dimensions")
            }
        }
    };
}

matrix_op!(Mul, mul, try_mul);
matrix_op!(Add, add, try_add);
matrix_op!(Sub, sub, try_sub);

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMatrix {}x{} over Q(z{}):", self.rows, self.cols, self.order)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized as an array of rows of `CycNum`.
impl Serialize for CycMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

/// Incrementally maintained echelon basis of a row space.
///
/// Each stored row has a unit pivot and zeros in the pivot columns of the
/// rows stored before it, so sequential reduction decides membership.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vec<CycNum>)>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[CycNum]) -> bool {
        self.reduce(v).iter().all(CycNum::is_zero)
    }

    /// Adds `v`; returns `true` when it was independent of the stored rows.
    pub fn insert(&mut self, v: &[CycNum]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        let row = r.iter().map(|x| x * &inv).collect();
        self.rows.push((p, row));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> CycNum {
        CycNum::root_of_unity(4, 1)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(CycMatrix::identity(5).rank(), 5);
        let m = CycMatrix::from_rows(vec![vec![CycNum::one(), z4()], vec![z4(), CycNum::from_int(-1)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullspace().len(), 1);
        let v = &m.nullspace()[0];
        assert!((&m * v).is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let a = CycMatrix::from_rows(vec![vec![CycNum::from_int(2), z4()], vec![CycNum::one(), CycNum::from_int(3)]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        let b = CycMatrix::column(vec![CycNum::one(), CycNum::zero()]);
        let x = a.solve(&b).unwrap();
        assert_eq!(&a * &x, b);
        let singular =
            CycMatrix::from_rows(vec![vec![CycNum::one(), CycNum::one()], vec![CycNum::one(), CycNum::one()]]);
        assert_eq!(singular.solve(&CycMatrix::column(vec![CycNum::one(), CycNum::zero()])), Err(Error::NoSolution));
    }

    #[test]
    fn dimension_mismatch() {
        let a = CycMatrix::zeros(2, 3);
        assert!(matches!(a.try_mul(&a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn commutant_of_diagonal() {
        let d = CycMatrix::diagonal(&[CycNum::one(), CycNum::one(), CycNum::from_int(2)]);
        assert_eq!(commutant_dim(&[d]).unwrap(), 5);
        let sw = CycMatrix::permutation(&[1, 0]);
        let basis = intertwiner_space(std::slice::from_ref(&sw), std::slice::from_ref(&sw)).unwrap();
        assert_eq!(basis.len(), 2);
        for x in basis {
            assert_eq!(&x * &sw, &sw * &x);
        }
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[CycNum::one(), z4(), CycNum::zero()]));
        assert!(!e.insert(&[z4(), CycNum::from_int(-1), CycNum::zero()]));
        assert!(e.insert(&[CycNum::zero(), CycNum::zero(), CycNum::one()]));
        assert!(e.contains(&[CycNum::from_int(2), z4() * CycNum::from_int(2), CycNum::from_int(7)]));
        assert_eq!(e.rank(), 2);
    }
}
