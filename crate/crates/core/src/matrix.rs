//! Dense matrices over `F_p` and exact Gaussian elimination.

use std::fmt;

use crate::field::{Fp, PrimeField};

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFp {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of [`MatrixFp::row_reduce`].
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub reduced: MatrixFp,
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Basis of the right kernel, one vector per free column.
    pub kernel: Vec<Vec<Fp>>,
}

impl MatrixFp {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixFp {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixFp::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fp::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fp>], cols: usize) -> Self {
        let mut m = MatrixFp::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = v.0;
            }
        }
        m
    }

    pub fn from_columns(columns: &[Vec<Fp>], rows: usize) -> Self {
        let mut m = MatrixFp::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = v.0;
            }
        }
        m
    }

    pub fn from_i64(field: &PrimeField, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rs: Vec<Vec<Fp>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.elem(v)).collect())
            .collect();
        MatrixFp::from_rows(&rs, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fp {
        Fp(self.data[i * self.cols + j])
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fp) {
        self.data[i * self.cols + j] = v.0;
    }

    pub fn row(&self, i: usize) -> Vec<Fp> {
        self.data[i * self.cols..(i + 1) * self.cols]
            .iter()
            .map(|&v| Fp(v))
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Fp> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> MatrixFp {
        let mut t = MatrixFp::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, field: &PrimeField, other: &MatrixFp) -> MatrixFp {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let p = field.modulus() as u64;
        let mut out = MatrixFp::zeros(self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = v as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, field: &PrimeField, v: &[Fp]) -> Vec<Fp> {
        assert_eq!(self.cols, v.len());
        let p = field.modulus() as u64;
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let mut s = 0u64;
                for (a, b) in row.iter().zip(v) {
                    s = (s + *a as u64 * b.0 as u64) % p;
                }
                Fp(s as u32)
            })
            .collect()
    }

    pub fn add(&self, field: &PrimeField, other: &MatrixFp) -> MatrixFp {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = field.add(Fp(*a), Fp(*b)).0;
        }
        out
    }

    pub fn scale(&self, field: &PrimeField, c: Fp) -> MatrixFp {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = field.mul(Fp(*a), c).0;
        }
        out
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &MatrixFp) -> MatrixFp {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatrixFp {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Place `self` left of `other`.
    pub fn hstack(&self, other: &MatrixFp) -> MatrixFp {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = MatrixFp::zeros(self.rows, cols);
        for i in 0..self.rows {
            out.data[i * cols..i * cols + self.cols]
                .copy_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            out.data[i * cols + self.cols..(i + 1) * cols]
                .copy_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self, field: &PrimeField) -> Vec<usize> {
        let p = field.modulus() as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = field
                .inv(Fp(self.data[r * cols + c]))
                .expect("pivot is nonzero")
                .0 as u64;
            for j in c..cols {
                let v = self.data[r * cols + j] as u64;
                self.data[r * cols + j] = (v * inv % p) as u32;
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let f = row[c] as u64;
                if f == 0 {
                    return;
                }
                let nf = p - f;
                for j in c..cols {
                    let pv = pivot_row[j];
                    if pv != 0 {
                        row[j] = ((row[j] as u64 + nf * pv as u64) % p) as u32;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn row_reduce(&self, field: &PrimeField) -> RowReduction {
        let mut reduced = self.clone();
        let pivots = reduced.rref_in_place(field);
        let rank = pivots.len();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut kernel = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Fp::ZERO; self.cols];
            v[free] = Fp::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(reduced.get(r, free));
            }
            kernel.push(v);
        }
        RowReduction {
            reduced,
            rank,
            pivots,
            kernel,
        }
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        let mut m = self.clone();
        m.rref_in_place(field).len()
    }

    pub fn kernel(&self, field: &PrimeField) -> Vec<Vec<Fp>> {
        self.row_reduce(field).kernel
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, field: &PrimeField, b: &[Fp]) -> Option<Vec<Fp>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&MatrixFp::from_columns(&[b.to_vec()], self.rows));
        let red = aug.row_reduce(field);
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fp::ZERO; self.cols];
        for (r, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.reduced.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self, field: &PrimeField) -> Option<MatrixFp> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&MatrixFp::identity(n));
        let red = aug.row_reduce(field);
        if red.rank < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = MatrixFp::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.reduced.get(i, n + j));
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFp {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

/// Incrementally maintained echelon basis of a subspace of `F_p^n`.
///
/// Vectors are reduced against the stored pivots on insertion, so membership
/// and independence tests are cheap.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vec<Fp>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Fp>] {
        &self.rows
    }

    pub fn reduce(&self, field: &PrimeField, v: &[Fp]) -> Vec<Fp> {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            if !f.is_zero() {
                let nf = field.neg(f);
                for (a, &b) in w.iter_mut().zip(row.iter()).skip(pc) {
                    if !b.is_zero() {
                        *a = field.add(*a, field.mul(nf, b));
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, field: &PrimeField, v: &[Fp]) -> bool {
        self.reduce(field, v).iter().all(|c| c.is_zero())
    }

    /// Insert `v`; returns `true` if it was independent of the stored span.
    pub fn insert(&mut self, field: &PrimeField, v: &[Fp]) -> bool {
        let w = self.reduce(field, v);
        let Some(pc) = w.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = field.inv(w[pc]).expect("nonzero");
        let w: Vec<Fp> = w.iter().map(|&c| field.mul(c, inv)).collect();
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

/// A subspace of `F_p^n` kept in reduced row echelon form, so coordinates of
/// members can be read off at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Fp>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![Fp::ZERO; ambient];
                v[i] = Fp::ONE;
                v
            })
            .collect();
        Subspace {
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: &PrimeField, ambient: usize, vectors: &[Vec<Fp>]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let mut m = MatrixFp::from_rows(vectors, ambient);
        let pivots = m.rref_in_place(field);
        let rows = (0..pivots.len()).map(|i| m.row(i)).collect();
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Fp>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that carry no pivot: unit vectors there span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Clear the pivot entries of `v`; zero iff `v` lies in the subspace.
    pub fn reduce(&self, field: &PrimeField, v: &[Fp]) -> Vec<Fp> {
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc];
            if !f.is_zero() {
                let nf = field.neg(f);
                for (a, &b) in w.iter_mut().zip(row.iter()).skip(pc) {
                    if !b.is_zero() {
                        *a = field.add(*a, field.mul(nf, b));
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, field: &PrimeField, v: &[Fp]) -> bool {
        self.reduce(field, v).iter().all(|c| c.is_zero())
    }

    /// Coordinates in the stored basis, `None` for non-members.
    pub fn coords(&self, field: &PrimeField, v: &[Fp]) -> Option<Vec<Fp>> {
        if !self.contains(field, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    pub fn contains_subspace(&self, field: &PrimeField, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(field, r))
    }

    pub fn sum(&self, field: &PrimeField, other: &Subspace) -> Subspace {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Subspace::span(field, self.ambient, &all)
    }

    pub fn intersection_dim(&self, field: &PrimeField, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(field, other).dim()
    }
}

/// Repeated solving of `M x = b` for a fixed `M`.
#[derive(Clone, Debug)]
pub struct Preimage {
    cols: usize,
    pivots: Vec<usize>,
    ops: MatrixFp,
}

impl Preimage {
    pub fn new(field: &PrimeField, m: &MatrixFp) -> Self {
        let aug = m.hstack(&MatrixFp::identity(m.rows()));
        let red = aug.row_reduce(field);
        let pivots: Vec<usize> = red
            .pivots
            .iter()
            .copied()
            .filter(|&p| p < m.cols())
            .collect();
        let mut ops = MatrixFp::zeros(m.rows(), m.rows());
        for i in 0..m.rows() {
            for j in 0..m.rows() {
                ops.set(i, j, red.reduced.get(i, m.cols() + j));
            }
        }
        Preimage {
            cols: m.cols(),
            pivots,
            ops,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, field: &PrimeField, b: &[Fp]) -> Option<Vec<Fp>> {
        let eb = self.ops.mul_vec(field, b);
        if eb[self.pivots.len()..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut x = vec![Fp::ZERO; self.cols];
        for (r, &pc) in self.pivots.iter().enumerate() {
            x[pc] = eb[r];
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        let r = MatrixFp::identity(3).row_reduce(&f());
        assert_eq!(r.rank, 3);
        assert!(r.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_kernel() {
        let r = MatrixFp::zeros(2, 4).row_reduce(&f());
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel.len(), 4);
    }

    #[test]
    fn rank_one_example() {
        let field = f();
        let m = MatrixFp::from_i64(&field, &[&[1, 2], &[2, 4]]);
        let r = m.row_reduce(&field);
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel.len(), 1);
        // kernel spanned by (2, -1) up to scale
        let k = &r.kernel[0];
        assert_eq!(
            field.mul(k[0], field.elem(-1)),
            field.mul(k[1], field.elem(2))
        );
        assert!(m.mul_vec(&field, k).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn inverse_and_solve() {
        let field = f();
        let m = MatrixFp::from_i64(&field, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse(&field).unwrap();
        assert_eq!(m.mul(&field, &inv), MatrixFp::identity(2));
        let x = m.solve(&field, &[field.elem(3), field.elem(2)]).unwrap();
        assert_eq!(x, vec![Fp(1), Fp(1)]);
        let singular = MatrixFp::from_i64(&field, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse(&field).is_none());
        assert!(singular.solve(&field, &[Fp(1), Fp(0)]).is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = MatrixFp> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0u32..101, r * c).prop_map(move |vals| {
                let rows: Vec<Vec<Fp>> = vals
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&v| Fp(v)).collect())
                    .collect();
                MatrixFp::from_rows(&rows, c)
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(m in arb_matrix()) {
            let field = f();
            let red = m.row_reduce(&field);
            prop_assert_eq!(red.rank + red.kernel.len(), m.cols());
            for v in &red.kernel {
                prop_assert!(m.mul_vec(&field, v).iter().all(|c| c.is_zero()));
            }
            prop_assert_eq!(m.rank(&field), m.transpose().rank(&field));
            prop_assert!(red.rank <= m.rows().min(m.cols()));
        }
    }

    #[test]
    fn subspace_coordinates() {
        let field = f();
        let v1 = vec![Fp(1), Fp(2), Fp(0)];
        let v2 = vec![Fp(0), Fp(1), Fp(1)];
        let s = Subspace::span(&field, 3, &[v1.clone(), v2.clone()]);
        assert_eq!(s.dim(), 2);
        let w: Vec<Fp> = (0..3)
            .map(|i| field.add(field.mul(Fp(3), v1[i]), field.mul(Fp(5), v2[i])))
            .collect();
        let c = s.coords(&field, &w).unwrap();
        let back: Vec<Fp> = (0..3)
            .map(|j| {
                s.basis()
                    .iter()
                    .zip(&c)
                    .fold(Fp::ZERO, |acc, (r, &k)| field.add(acc, field.mul(k, r[j])))
            })
            .collect();
        assert_eq!(back, w);
        assert!(s.coords(&field, &[Fp(0), Fp(0), Fp(1)]).is_none());
        assert_eq!(s.free_columns().len(), 1);
    }

    #[test]
    fn preimages() {
        let field = f();
        let m = MatrixFp::from_i64(&field, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let p = Preimage::new(&field, &m);
        assert_eq!(p.rank(), 2);
        let b = m.mul_vec(&field, &[Fp(4), Fp(7), Fp(9)]);
        let x = p.solve(&field, &b).unwrap();
        assert_eq!(m.mul_vec(&field, &x), b);
        assert!(p.solve(&field, &[Fp(1), Fp(0), Fp(0)]).is_none());
    }
}
