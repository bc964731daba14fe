//! Exact dense linear algebra and the subspace lattice.
//!
//! Matrices of size `n×n` are vectorized row-major: entry `(i, j)` sits at
//! coordinate `i*n + j`. Every module that turns a matrix into a vector goes
//! through [`Matrix::to_flat`] / [`Matrix::from_flat`], so this convention is
//! fixed in one place.
//!
//! A [`Subspace`] stores its basis in reduced row echelon form with pivots in
//! increasing column order. That basis is unique, so two subspaces are equal
//! exactly when their stored bases are equal.

use std::fmt;

use crate::field::Field;
use crate::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    /// The matrix unit `E_ij` of size `n×n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[i * n + j] = F::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Ragged);
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(v)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<F>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// A square matrix from its row-major vectorization.
    pub fn square_from_flat(data: Vec<F>) -> Result<Self, Error> {
        let n = (data.len() as f64).sqrt().round() as usize;
        Self::from_flat(n, n, data)
    }

    pub fn diag(entries: &[F]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn block_diag(blocks: &[Matrix<F>]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(r0 + i) * c + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Assemble a matrix from a grid of equally shaped blocks.
    pub fn from_blocks(grid: &[Vec<Matrix<F>>]) -> Result<Self, Error> {
        let br = grid.first().and_then(|r| r.first()).map_or(0, |b| b.rows);
        let bc = grid.first().and_then(|r| r.first()).map_or(0, |b| b.cols);
        let gc = grid.first().map_or(0, Vec::len);
        if grid
            .iter()
            .any(|row| row.len() != gc || row.iter().any(|b| b.rows != br || b.cols != bc))
        {
            return Err(Error::Ragged);
        }
        let mut m = Self::zeros(grid.len() * br, gc * bc);
        for (gi, row) in grid.iter().enumerate() {
            for (gj, b) in row.iter().enumerate() {
                for i in 0..br {
                    for j in 0..bc {
                        m.set(gi * br + i, gj * bc + j, b.get(i, j).clone());
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_flat(&self) -> Vec<F> {
        self.data.clone()
    }

    pub fn into_flat(self) -> Vec<F> {
        self.data
    }

    pub fn as_flat(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mul_ref(c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, Error> {
        self.same_shape(rhs)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, Error> {
        self.same_shape(rhs)?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        Ok(out)
    }

    fn same_shape(&self, rhs: &Self) -> Result<(), Error> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        Ok(())
    }

    /// Matrix product; skips zero entries, which dominate every matrix this
    /// crate builds.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, Error> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &a.mul_ref(b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `XY - YX`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self, Error> {
        if !self.is_square() || !rhs.is_square() || self.rows != rhs.rows {
            return Err(Error::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        self.checked_mul(rhs)?.checked_sub(&rhs.checked_mul(self)?)
    }

    /// Kronecker product: block `(i, j)` of the result is `self[i][j] * rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (r, c) = (self.rows * rhs.rows, self.cols * rhs.cols);
        let mut out = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a.mul_ref(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Matrix-vector product `self · v`.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += &a.mul_ref(x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).mul_ref(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let pivot_entry = m.data[r * m.cols + j].clone();
                    m.data[i * m.cols + j].sub_mul(&f, &pivot_entry);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Self {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solution space of `self · x = 0`.
    pub fn kernel(&self) -> Subspace<F> {
        let (r, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Subspace::zero(self.cols);
        for f in (0..self.cols).filter(|&f| !is_pivot[f]) {
            let mut x = vec![F::zero(); self.cols];
            x[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -r.get(i, f).clone();
            }
            out.insert(x);
        }
        out
    }

    /// Row space as a subspace.
    pub fn row_space(&self) -> Subspace<F> {
        let mut s = Subspace::zero(self.cols);
        for i in 0..self.rows {
            s.insert(self.row(i).to_vec());
        }
        s
    }
}

/// `dst -= c * src`, touching only the listed nonzero positions of `src`.
fn axpy_neg<F: Field>(dst: &mut [F], c: &F, src: &[F], nz: &[usize]) {
    for &k in nz {
        dst[k].sub_mul(c, &src[k]);
    }
}

fn nonzeros<F: Field>(v: &[F]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, _)| k)
        .collect()
}

/// A linear subspace of `F^ambient`, stored as its canonical RREF basis.
#[derive(Clone)]
pub struct Subspace<F> {
    ambient: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
    // nonzero positions of each row, kept in sync with `rows`
    support: Vec<Vec<usize>>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows == other.rows
    }
}

impl<F: Field> Eq for Subspace<F> {}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient", &self.ambient)
            .field("basis", &self.rows)
            .finish()
    }
}

/// Lattice relation between two subspaces of the same ambient space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// The left operand is a proper subspace of the right one.
    LeftInRight,
    /// The right operand is a proper subspace of the left one.
    RightInLeft,
    Incomparable,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
            support: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for k in 0..ambient {
            let mut v = vec![F::zero(); ambient];
            v[k] = F::one();
            s.rows.push(v);
            s.pivots.push(k);
            s.support.push(vec![k]);
        }
        s
    }

    /// Span of `vectors` inside `F^ambient`.
    pub fn span<I>(ambient: usize, vectors: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = Vec<F>>,
    {
        let mut s = Self::zero(ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::Ragged);
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Span of a list of equally long vectors; the ambient dimension is taken
    /// from the first one (an empty list spans the zero space of `F^0`).
    pub fn span_of(vectors: &[Vec<F>]) -> Result<Self, Error> {
        let ambient = vectors.first().map_or(0, Vec::len);
        Self::span(ambient, vectors.iter().cloned())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The canonical basis, one RREF row per basis vector.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo the subspace; the result is zero iff `v` is a member.
    /// Reduction is linear in `v`, and the remainder vanishes on every pivot
    /// column.
    pub fn reduce(&self, v: &mut [F]) {
        for ((row, &p), nz) in self.rows.iter().zip(&self.pivots).zip(&self.support) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            axpy_neg(v, &c, row, nz);
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(F::is_zero)
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Add `v` to the spanning set. Returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length must match ambient");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let nz = nonzeros(&v);
        for (row, sup) in self.rows.iter_mut().zip(self.support.iter_mut()) {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            axpy_neg(row, &c, &v, &nz);
            *sup = nonzeros(row);
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        self.support.insert(at, nz);
        true
    }

    fn check_ambient(&self, other: &Self) -> Result<(), Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, Error> {
        self.check_ambient(other)?;
        let (mut big, small) = if self.dim() >= other.dim() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for v in &small.rows {
            big.insert(v.clone());
        }
        Ok(big)
    }

    /// Sum of any number of subspaces of `F^ambient`.
    pub fn sum_all<'a, I>(ambient: usize, parts: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = &'a Self>,
        F: 'a,
    {
        let mut out = Self::zero(ambient);
        for p in parts {
            out.check_ambient(p)?;
            for v in &p.rows {
                out.insert(v.clone());
            }
        }
        Ok(out)
    }

    /// Intersection via the kernel of the stacked system `x·A - y·B = 0`.
    pub fn intersect(&self, other: &Self) -> Result<Self, Error> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        let (r, s) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(self.ambient, r + s);
        for (i, v) in self.rows.iter().enumerate() {
            for (k, x) in v.iter().enumerate() {
                m.set(k, i, x.clone());
            }
        }
        for (j, v) in other.rows.iter().enumerate() {
            for (k, x) in v.iter().enumerate() {
                m.set(k, r + j, -x.clone());
            }
        }
        let ker = m.kernel();
        let mut out = Self::zero(self.ambient);
        for coeffs in ker.basis() {
            let mut v = vec![F::zero(); self.ambient];
            for (c, (row, nz)) in coeffs[..r].iter().zip(self.rows.iter().zip(&self.support)) {
                if c.is_zero() {
                    continue;
                }
                for &k in nz {
                    v[k] += &c.mul_ref(&row[k]);
                }
            }
            out.insert(v);
        }
        Ok(out)
    }

    /// Whether every basis vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim() <= other.dim()
            && self.rows.iter().all(|v| other.contains(v))
    }

    pub fn compare(&self, other: &Self) -> Result<Relation, Error> {
        self.check_ambient(other)?;
        let a_in_b = self.is_subspace_of(other);
        let b_in_a = other.is_subspace_of(self);
        Ok(match (a_in_b, b_in_a) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::LeftInRight,
            (false, true) => Relation::RightInLeft,
            (false, false) => Relation::Incomparable,
        })
    }

    /// True iff `whole` is the internal direct sum of `parts`.
    pub fn is_direct_sum(parts: &[&Self], whole: &Self) -> bool {
        if parts.iter().any(|p| p.ambient != whole.ambient) {
            return false;
        }
        let total: usize = parts.iter().map(|p| p.dim()).sum();
        if total != whole.dim() {
            return false;
        }
        match Self::sum_all(whole.ambient, parts.iter().copied()) {
            Ok(s) => s == *whole,
            Err(_) => false,
        }
    }

    /// Image of the subspace under a linear map given on vectors.
    pub fn map<G>(&self, target_ambient: usize, f: G) -> Result<Self, Error>
    where
        G: Fn(&[F]) -> Vec<F>,
    {
        Self::span(target_ambient, self.rows.iter().map(|v| f(v)))
    }
}

/// A homogeneous linear system assembled one equation at a time.
pub struct LinearSystem<F> {
    rows: Subspace<F>,
}

impl<F: Field> LinearSystem<F> {
    pub fn new(unknowns: usize) -> Self {
        Self {
            rows: Subspace::zero(unknowns),
        }
    }

    pub fn add(&mut self, row: Vec<F>) {
        if row.iter().any(|c| !c.is_zero()) {
            self.rows.insert(row);
        }
    }

    /// True once only the zero solution remains.
    pub fn is_saturated(&self) -> bool {
        self.rows.dim() == self.rows.ambient_dim()
    }

    pub fn solutions(&self) -> Subspace<F> {
        let n = self.rows.ambient_dim();
        if self.rows.is_zero() {
            return Subspace::full(n);
        }
        Matrix::from_rows(self.rows.basis().to_vec())
            .expect("rows share the ambient length")
            .kernel()
    }
}

/// `Σ coeffs[k] · basis[k]` in `F^ambient`.
pub fn combination<F: Field>(basis: &[Vec<F>], coeffs: &[F], ambient: usize) -> Vec<F> {
    let mut v = vec![F::zero(); ambient];
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            if !y.is_zero() {
                *x += &c.mul_ref(y);
            }
        }
    }
    v
}

/// Coordinates with respect to a basis assembled from independent subspaces,
/// used to split a vector along a direct sum decomposition.
pub struct Decomposer<F> {
    basis: Vec<Vec<F>>,
    part_ranges: Vec<std::ops::Range<usize>>,
    pivots: Vec<usize>,
    inverse: Matrix<F>,
}

impl<F: Field> Decomposer<F> {
    pub fn new(parts: &[&Subspace<F>]) -> Result<Self, Error> {
        let ambient = parts.first().map_or(0, |p| p.ambient_dim());
        let mut basis = Vec::new();
        let mut part_ranges = Vec::new();
        for p in parts {
            if p.ambient_dim() != ambient {
                return Err(Error::AmbientMismatch {
                    left: ambient,
                    right: p.ambient_dim(),
                });
            }
            let start = basis.len();
            basis.extend(p.basis().iter().cloned());
            part_ranges.push(start..basis.len());
        }
        let n = basis.len();
        let mut stacked = Matrix::zeros(n, ambient);
        for (i, v) in basis.iter().enumerate() {
            for (k, x) in v.iter().enumerate() {
                stacked.set(i, k, x.clone());
            }
        }
        let (_, pivots) = stacked.rref_with_pivots();
        if pivots.len() != n {
            return Err(Error::NotDirect);
        }
        let mut square = Matrix::zeros(n, n);
        for i in 0..n {
            for (j, &p) in pivots.iter().enumerate() {
                square.set(i, j, basis[i][p].clone());
            }
        }
        let inverse = square.inverse().ok_or(Error::NotDirect)?;
        Ok(Self {
            basis,
            part_ranges,
            pivots,
            inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn part_range(&self, part: usize) -> std::ops::Range<usize> {
        self.part_ranges[part].clone()
    }

    /// Coordinates of `v` in the assembled basis. Only meaningful when `v`
    /// lies in the span; callers that cannot guarantee this should check
    /// with [`Decomposer::reconstruct`].
    pub fn coordinates(&self, v: &[F]) -> Vec<F> {
        let n = self.basis.len();
        let mut c = vec![F::zero(); n];
        for (i, &p) in self.pivots.iter().enumerate() {
            let x = &v[p];
            if x.is_zero() {
                continue;
            }
            for (j, cj) in c.iter_mut().enumerate() {
                let y = self.inverse.get(i, j);
                if !y.is_zero() {
                    *cj += &x.mul_ref(y);
                }
            }
        }
        c
    }

    pub fn reconstruct(&self, coords: &[F]) -> Vec<F> {
        let ambient = self.basis.first().map_or(0, Vec::len);
        let mut v = vec![F::zero(); ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x += &c.mul_ref(y);
                }
            }
        }
        v
    }

    /// Component of `v` in the given part.
    pub fn project(&self, v: &[F], part: usize) -> Vec<F> {
        let mut c = self.coordinates(v);
        let keep = self.part_range(part);
        for (k, x) in c.iter_mut().enumerate() {
            if !keep.contains(&k) {
                *x = F::zero();
            }
        }
        self.reconstruct(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussianRational as Q;
    use num_traits::{One, Zero};

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_i64(rows)
    }

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from_integer(x)).collect()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(m(&[&[2, 0], &[0, 2]]).rref(), m(&[&[1, 0], &[0, 1]]));
        assert_eq!(m(&[&[1, 1], &[1, 1]]).rref(), m(&[&[1, 1], &[0, 0]]));
        let mut x = Matrix::<Q>::zeros(2, 2);
        x.set(0, 1, Q::i());
        assert_eq!(x.rref(), m(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::<Q>::identity(3).kernel().is_zero());
        assert_eq!(Matrix::<Q>::zeros(2, 3).kernel(), Subspace::full(3));
        let k = m(&[&[1, 1]]).kernel();
        assert_eq!(k, Subspace::span(2, [v(&[1, -1])]).unwrap());
    }

    #[test]
    fn span_examples() {
        let full = Subspace::span(2, [v(&[1, 0]), v(&[1, 1])]).unwrap();
        assert_eq!(full, Subspace::full(2));
        assert!(Subspace::<Q>::span(2, []).unwrap().is_zero());
        let s = Subspace::span(2, [v(&[2, 4])]).unwrap();
        assert_eq!(s.basis(), &[v(&[1, 2])]);
        assert!(matches!(
            Subspace::span_of(&[v(&[1, 0]), v(&[1])]),
            Err(Error::Ragged)
        ));
    }

    #[test]
    fn sum_and_intersection_examples() {
        let e = |k: usize| {
            let mut x = vec![Q::zero(); 3];
            x[k] = Q::one();
            x
        };
        let s1 = Subspace::span(3, [e(0)]).unwrap();
        let s2 = Subspace::span(3, [e(1)]).unwrap();
        let s12 = Subspace::span(3, [e(0), e(1)]).unwrap();
        let s23 = Subspace::span(3, [e(1), e(2)]).unwrap();
        assert_eq!(s1.sum(&s2).unwrap(), s12);
        assert_eq!(s12.sum(&s12).unwrap(), s12);
        assert_eq!(s12.sum(&Subspace::zero(3)).unwrap(), s12);
        assert_eq!(s12.intersect(&s23).unwrap(), s2);
        assert!(s12.intersect(&Subspace::zero(3)).unwrap().is_zero());
        assert!(matches!(
            s1.sum(&Subspace::zero(2)),
            Err(Error::AmbientMismatch { .. })
        ));
        assert!(s1.intersect(&Subspace::zero(4)).is_err());
    }

    #[test]
    fn diagonal_meets_traceless() {
        // oracle: diag(x, y) with x + y = 0 is the line through (1, 0, 0, -1)
        let diag = Subspace::span(4, [v(&[1, 0, 0, 0]), v(&[0, 0, 0, 1])]).unwrap();
        let traceless = m(&[&[1, 0, 0, 1]]).kernel();
        let both = diag.intersect(&traceless).unwrap();
        assert_eq!(both, Subspace::span(4, [v(&[1, 0, 0, -1])]).unwrap());
    }

    #[test]
    fn compare_examples() {
        let a = Subspace::span(2, [v(&[1, 0])]).unwrap();
        let b = Subspace::span(2, [v(&[0, 1])]).unwrap();
        assert_eq!(a.compare(&a).unwrap(), Relation::Equal);
        assert_eq!(
            Subspace::zero(2).compare(&a).unwrap(),
            Relation::LeftInRight
        );
        assert_eq!(a.compare(&b).unwrap(), Relation::Incomparable);
        assert_eq!(Subspace::full(2).compare(&a).unwrap(), Relation::RightInLeft);
    }

    #[test]
    fn direct_sum_examples() {
        let a = Subspace::span(2, [v(&[1, 0])]).unwrap();
        let b = Subspace::span(2, [v(&[0, 1])]).unwrap();
        assert!(Subspace::is_direct_sum(&[&a, &b], &Subspace::full(2)));
        assert!(!Subspace::is_direct_sum(&[&a, &a], &a));
    }

    #[test]
    fn inverse_and_decomposer() {
        let x = m(&[&[1, 2], &[3, 4]]);
        let inv = x.inverse().unwrap();
        assert_eq!(x.checked_mul(&inv).unwrap(), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());

        let a = Subspace::span(3, [v(&[1, 1, 0])]).unwrap();
        let b = Subspace::span(3, [v(&[0, 1, 1]), v(&[0, 0, 1])]).unwrap();
        let d = Decomposer::new(&[&a, &b]).unwrap();
        let w = v(&[2, 5, 7]);
        let pa = d.project(&w, 0);
        let pb = d.project(&w, 1);
        assert_eq!(pa, v(&[2, 2, 0]));
        assert!(b.contains(&pb));
        assert!(matches!(Decomposer::new(&[&a, &a]), Err(Error::NotDirect)));
    }

    #[test]
    fn works_over_plain_rationals() {
        use num_rational::BigRational;
        let r = Matrix::<BigRational>::from_i64(&[&[2, 4], &[1, 2]]);
        assert_eq!(r.rank(), 1);
        assert_eq!(r.kernel().dim(), 1);
    }

    #[test]
    fn kron_shape() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let k = Matrix::identity(2).kron(&a);
        assert_eq!(k, Matrix::block_diag(&[a.clone(), a]));
    }
}
