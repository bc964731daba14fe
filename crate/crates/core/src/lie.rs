//! Lie algebras given either as bracket-closed subspaces of `M_n` or by
//! structure constants, with the structural invariants used to identify
//! isotropy subalgebras.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::linalg::{combination, LinearSystem};
use crate::{Error, Mat, Scalar, Subspace, Vector};

/// Operations shared by matrix and structure-constant algebras. Elements are
/// vectors in an ambient coordinate space; the algebra is [`LieAlgebra::space`].
pub trait LieAlgebra: Sync {
    fn ambient_dim(&self) -> usize;

    fn space(&self) -> &Subspace;

    fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vector;

    fn dim(&self) -> usize {
        self.space().dim()
    }

    fn basis(&self) -> &[Vector] {
        self.space().basis()
    }
}

/// `[X, Y]` for square matrices of equal size.
pub fn bracket(x: &Mat, y: &Mat) -> Result<Mat, Error> {
    x.commutator(y)
}

fn row_nonzeros(n: usize, x: &[Scalar]) -> Vec<Vec<(usize, &Scalar)>> {
    let mut rows = vec![Vec::new(); n];
    for (idx, v) in x.iter().enumerate() {
        if !v.is_zero() {
            rows[idx / n].push((idx % n, v));
        }
    }
    rows
}

/// Commutator of two row-major flattened `n×n` matrices.
pub fn flat_commutator(n: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
    let mut out = vec![Scalar::zero(); n * n];
    let xr = row_nonzeros(n, x);
    let yr = row_nonzeros(n, y);
    for i in 0..n {
        for &(k, a) in &xr[i] {
            for &(j, b) in &yr[k] {
                out[i * n + j] += &a.mul_ref(b);
            }
        }
        for &(k, a) in &yr[i] {
            for &(j, b) in &xr[k] {
                out[i * n + j] -= &a.mul_ref(b);
            }
        }
    }
    out
}

/// Product of two row-major flattened `n×n` matrices.
pub fn flat_product(n: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
    let mut out = vec![Scalar::zero(); n * n];
    let yr = row_nonzeros(n, y);
    for (idx, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let (i, k) = (idx / n, idx % n);
        for &(j, b) in &yr[k] {
            out[i * n + j] += &a.mul_ref(b);
        }
    }
    out
}

/// A Lie subalgebra of `gl(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatLie {
    n: usize,
    space: Subspace,
}

impl MatLie {
    /// Checks that `space` is a subspace of `M_n` closed under the bracket.
    pub fn new(n: usize, space: Subspace) -> Result<Self, Error> {
        let g = Self::new_unchecked(n, space)?;
        if !g.is_closed() {
            return Err(Error::NotClosed);
        }
        Ok(g)
    }

    /// Skips the closure check; for subspaces closed by construction.
    pub fn new_unchecked(n: usize, space: Subspace) -> Result<Self, Error> {
        if space.ambient_dim() != n * n {
            return Err(Error::AmbientMismatch {
                left: n * n,
                right: space.ambient_dim(),
            });
        }
        Ok(Self { n, space })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_closed(&self) -> bool {
        let b = self.space.basis();
        (0..b.len()).all(|i| {
            (i + 1..b.len()).all(|j| self.space.contains(&flat_commutator(self.n, &b[i], &b[j])))
        })
    }

    pub fn basis_matrices(&self) -> Vec<Mat> {
        self.space
            .basis()
            .iter()
            .map(|v| Mat::from_flat(self.n, self.n, v.clone()).expect("n*n entries"))
            .collect()
    }

    /// The subalgebra spanned by `sub`, which must lie inside `self`.
    pub fn subalgebra(&self, sub: Subspace) -> Result<Self, Error> {
        if !sub.is_subspace_of(&self.space) {
            return Err(Error::NotSubalgebra);
        }
        Self::new(self.n, sub)
    }
}

impl LieAlgebra for MatLie {
    fn ambient_dim(&self) -> usize {
        self.n * self.n
    }

    fn space(&self) -> &Subspace {
        &self.space
    }

    fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        flat_commutator(self.n, x, y)
    }
}

/// A Lie algebra given by structure constants in a fixed basis `x_0..x_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScLie {
    dim: usize,
    // table[i][j] = coordinates of [x_i, x_j]
    table: Vec<Vec<Vector>>,
    space: Subspace,
}

/// Serialized form: 1-based `[i, j, k, "value"]` entries meaning the
/// coefficient of `x_k` in `[x_i, x_j]`; entries for `j < i` follow by
/// antisymmetry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScLieJson {
    pub dim: usize,
    pub brackets: Vec<(usize, usize, usize, Scalar)>,
}

const N7_3: &str = include_str!("../data/n7_3.json");

impl ScLie {
    /// Build from 0-based `(i, j, k, c)` entries. Pairs given in only one
    /// order are completed by antisymmetry; pairs given in both orders must
    /// agree.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Scalar)]) -> Result<Self, Error> {
        let mut table = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        let mut given = vec![vec![false; dim]; dim];
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::InvalidSize(format!("index out of range in ({i}, {j}, {k})")));
            }
            table[*i][*j][*k] += c;
            given[*i][*j] = true;
        }
        for i in 0..dim {
            for j in 0..dim {
                if given[i][j] && !given[j][i] {
                    table[j][i] = table[i][j].iter().map(|c| -c.clone()).collect();
                }
            }
        }
        let sc = Self {
            dim,
            table,
            space: Subspace::full(dim),
        };
        if !sc.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        Ok(sc)
    }

    fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            self.table[i][i].iter().all(Zero::is_zero)
                && (0..self.dim).all(|j| {
                    self.table[i][j]
                        .iter()
                        .zip(&self.table[j][i])
                        .all(|(a, b)| (a.clone() + b.clone()).is_zero())
                })
        })
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let raw: ScLieJson = serde_json::from_str(text)?;
        let entries: Vec<_> = raw
            .brackets
            .into_iter()
            .map(|(i, j, k, c)| {
                if i == 0 || j == 0 || k == 0 {
                    return Err(Error::InvalidSize("basis indices are 1-based".into()));
                }
                Ok((i - 1, j - 1, k - 1, c))
            })
            .collect::<Result<_, _>>()?;
        Self::from_entries(raw.dim, &entries)
    }

    pub fn to_json(&self) -> ScLieJson {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        brackets.push((i + 1, j + 1, k + 1, c.clone()));
                    }
                }
            }
        }
        ScLieJson {
            dim: self.dim,
            brackets,
        }
    }

    /// The seven-dimensional characteristically nilpotent algebra shipped
    /// with the crate.
    pub fn n7_3() -> Self {
        Self::from_json(N7_3).expect("bundled fixture is valid")
    }

    /// Overwrite `[x_i, x_j]` (and `[x_j, x_i]` by antisymmetry).
    pub fn with_bracket(&self, i: usize, j: usize, value: Vector) -> Self {
        let mut out = self.clone();
        out.table[j][i] = value.iter().map(|c| -c.clone()).collect();
        out.table[i][j] = value;
        out
    }

    pub fn structure(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    /// True iff the Jacobi identity holds on every basis triple.
    pub fn jacobi_check(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    /// The first basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        let unit = |k: usize| {
            let mut v = vec![Scalar::zero(); d];
            v[k] = Scalar::one();
            v
        };
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let mut s = self.bracket_vec(&x, &self.bracket_vec(&y, &z));
                    for (a, b) in s.iter_mut().zip(self.bracket_vec(&y, &self.bracket_vec(&z, &x))) {
                        *a += &b;
                    }
                    for (a, b) in s.iter_mut().zip(self.bracket_vec(&z, &self.bracket_vec(&x, &y))) {
                        *a += &b;
                    }
                    if s.iter().any(|c| !c.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}

impl LieAlgebra for ScLie {
    fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn space(&self) -> &Subspace {
        &self.space
    }

    fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul_ref(b);
                for (o, c) in out.iter_mut().zip(&self.table[i][j]) {
                    if !c.is_zero() {
                        *o += &ab.mul_ref(c);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Skew,
}

/// The involution `X ↦ Φ⁻¹XᵗΦ` of `M_n` for a symmetric or skew `Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    name: String,
    phi: Mat,
    phi_inv: Mat,
    symmetry: Symmetry,
}

impl Involution {
    pub fn new(name: impl Into<String>, phi: Mat) -> Result<Self, Error> {
        if !phi.is_square() {
            return Err(Error::ShapeMismatch {
                left: (phi.rows(), phi.cols()),
                right: (phi.cols(), phi.rows()),
            });
        }
        let t = phi.transpose();
        let symmetry = if t == phi {
            Symmetry::Symmetric
        } else if t == phi.neg() {
            Symmetry::Skew
        } else {
            return Err(Error::NotSymmetricOrSkew);
        };
        let phi_inv = phi.inverse().ok_or(Error::Singular)?;
        Ok(Self {
            name: name.into(),
            phi,
            phi_inv,
            symmetry,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn phi(&self) -> &Mat {
        &self.phi
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn n(&self) -> usize {
        self.phi.rows()
    }

    pub fn star(&self, x: &Mat) -> Mat {
        let t = x.transpose();
        self.phi_inv
            .checked_mul(&t)
            .and_then(|m| m.checked_mul(&self.phi))
            .expect("sizes agree")
    }

    /// `X*` on a flattened matrix, exploiting sparsity of `X`.
    pub fn star_flat(&self, x: &[Scalar]) -> Vector {
        let n = self.n();
        let mut out = vec![Scalar::zero(); n * n];
        for (idx, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            // (E_ij)* = Φ⁻¹ E_ji Φ = (column j of Φ⁻¹)(row i of Φ)
            let (i, j) = (idx / n, idx % n);
            for r in 0..n {
                let a = self.phi_inv.get(r, j);
                if a.is_zero() {
                    continue;
                }
                let av = a.mul_ref(v);
                for s in 0..n {
                    let b = self.phi.get(i, s);
                    if !b.is_zero() {
                        out[r * n + s] += &av.mul_ref(b);
                    }
                }
            }
        }
        out
    }

    /// `(X - X*)/2` if `skew`, else `(X + X*)/2`.
    fn half_part(&self, x: &[Scalar], skew: bool) -> Vector {
        let half = Scalar::from_ratio(1, 2);
        let s = self.star_flat(x);
        x.iter()
            .zip(s)
            .map(|(a, b)| {
                let c = if skew { a.clone() - b } else { a.clone() + b };
                c.mul_ref(&half)
            })
            .collect()
    }

    pub fn is_stable(&self, space: &Subspace) -> bool {
        space.basis().iter().all(|v| space.contains(&self.star_flat(v)))
    }

    /// Skew elements of a `*`-stable subspace.
    pub fn skew_part(&self, space: &Subspace) -> Subspace {
        Subspace::span(space.ambient_dim(), space.basis().iter().map(|v| self.half_part(v, true)))
            .expect("lengths agree")
    }

    /// Symmetric elements of a `*`-stable subspace.
    pub fn sym_part(&self, space: &Subspace) -> Subspace {
        Subspace::span(space.ambient_dim(), space.basis().iter().map(|v| self.half_part(v, false)))
            .expect("lengths agree")
    }
}

/// `sl(n)`.
pub fn build_sl(n: usize) -> Result<MatLie, Error> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("sl({n}) needs n >= 2")));
    }
    Ok(MatLie::new_unchecked(n, traceless(n)).expect("n*n ambient"))
}

/// The trace-zero hyperplane of `M_n`.
pub fn traceless(n: usize) -> Subspace {
    let mut trace_row = Mat::zeros(1, n * n);
    for i in 0..n {
        trace_row.set(0, i * n + i, Scalar::one());
    }
    trace_row.kernel()
}

/// `K(M_n, Φ) = {X : X* = -X}`, a classical Lie algebra.
pub fn build_k(inv: &Involution) -> MatLie {
    let n = inv.n();
    MatLie::new_unchecked(n, inv.skew_part(&Subspace::full(n * n))).expect("n*n ambient")
}

/// `H(M_n, Φ) = {X : X* = X}`.
pub fn build_h(inv: &Involution) -> Subspace {
    let n = inv.n();
    inv.sym_part(&Subspace::full(n * n))
}

/// Add the rows `(vs[k][t])_k`, one per ambient coordinate `t`.
fn add_transposed(c: &mut LinearSystem<Scalar>, vs: &[Vector]) {
    let len = vs.first().map_or(0, Vec::len);
    for t in 0..len {
        c.add(vs.iter().map(|v| v[t].clone()).collect());
    }
}

/// `[g, g]`.
pub fn derived<L: LieAlgebra + ?Sized>(g: &L) -> Subspace {
    let b = g.basis();
    let mut out = Subspace::zero(g.ambient_dim());
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            out.insert(g.bracket_vec(&b[i], &b[j]));
        }
    }
    out
}

/// `{x ∈ g : [x, g] = 0}`.
pub fn center<L: LieAlgebra + ?Sized>(g: &L) -> Subspace {
    let b = g.basis();
    let mut c = LinearSystem::new(b.len());
    for y in b {
        if c.is_saturated() {
            break;
        }
        let images: Vec<Vector> = b.iter().map(|x| g.bracket_vec(x, y)).collect();
        add_transposed(&mut c, &images);
    }
    let sol = c.solutions();
    Subspace::span(
        g.ambient_dim(),
        sol.basis().iter().map(|k| combination(b, k, g.ambient_dim())),
    )
    .expect("lengths agree")
}

/// The largest ideal of `g` contained in `h`.
pub fn largest_ideal_in<L: LieAlgebra + ?Sized>(g: &L, h: &Subspace) -> Result<Subspace, Error> {
    if !h.is_subspace_of(g.space()) {
        return Err(Error::NotSubalgebra);
    }
    let mut current = h.clone();
    loop {
        if current.is_zero() {
            return Ok(current);
        }
        let u = current.basis().to_vec();
        let mut c = LinearSystem::new(u.len());
        for y in g.basis() {
            if c.is_saturated() {
                break;
            }
            let residues: Vec<Vector> = u
                .iter()
                .map(|x| {
                    let mut r = g.bracket_vec(y, x);
                    current.reduce(&mut r);
                    r
                })
                .collect();
            add_transposed(&mut c, &residues);
        }
        let sol = c.solutions();
        if sol.dim() == current.dim() {
            return Ok(current);
        }
        current = Subspace::span(
            g.ambient_dim(),
            sol.basis().iter().map(|k| combination(&u, k, g.ambient_dim())),
        )
        .expect("lengths agree");
    }
}

/// Matrices of `ad x_i` in the canonical basis of `g`.
fn ad_matrices<L: LieAlgebra + ?Sized>(g: &L) -> Vec<Mat> {
    let b = g.basis();
    let piv = g.space().pivots();
    let d = b.len();
    let mut ads = vec![Mat::zeros(d, d); d];
    for i in 0..d {
        for j in i + 1..d {
            let br = g.bracket_vec(&b[i], &b[j]);
            for (k, &p) in piv.iter().enumerate() {
                if !br[p].is_zero() {
                    ads[i].set(k, j, br[p].clone());
                    ads[j].set(k, i, -br[p].clone());
                }
            }
        }
    }
    ads
}

/// Rank of the Killing form `tr(ad x ∘ ad y)`.
pub fn killing_rank<L: LieAlgebra + ?Sized>(g: &L) -> usize {
    let ads = ad_matrices(g);
    let d = ads.len();
    let entries: Vec<Vec<(usize, usize, Scalar)>> = ads
        .iter()
        .map(|m| {
            let mut e = Vec::new();
            for r in 0..d {
                for s in 0..d {
                    if !m.get(r, s).is_zero() {
                        e.push((r, s, m.get(r, s).clone()));
                    }
                }
            }
            e
        })
        .collect();
    let mut gram = Mat::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let mut t = Scalar::zero();
            for (r, s, v) in &entries[i] {
                let w = ads[j].get(*s, *r);
                if !w.is_zero() {
                    t += &v.mul_ref(w);
                }
            }
            gram.set(i, j, t.clone());
            gram.set(j, i, t);
        }
    }
    gram.rank()
}

/// Sum of the column spaces of the basis matrices of `g`, a subspace of `ℂ^n`.
pub fn column_support(g: &MatLie) -> Subspace {
    let n = g.n();
    let mut out = Subspace::zero(n);
    for v in g.basis() {
        for j in 0..n {
            let col: Vector = (0..n).map(|i| v[i * n + j].clone()).collect();
            if col.iter().any(|c| !c.is_zero()) {
                out.insert(col);
            }
        }
    }
    out
}

/// Dimensions of the symmetric and skew bilinear forms `B` on `support` with
/// `B(Xu, v) + B(u, Xv) = 0` for all `X ∈ g`.
pub fn invariant_forms(g: &MatLie, support: &Subspace) -> Result<(usize, usize), Error> {
    let n = g.n();
    if support.ambient_dim() != n {
        return Err(Error::AmbientMismatch {
            left: n,
            right: support.ambient_dim(),
        });
    }
    let s = support.dim();
    let piv = support.pivots();
    // action of each basis matrix on support coordinates
    let mut actions = Vec::new();
    for x in g.basis() {
        let mut a = Mat::zeros(s, s);
        for (k, c) in support.basis().iter().enumerate() {
            let img: Vector = (0..n)
                .map(|i| {
                    let mut acc = Scalar::zero();
                    for (j, cj) in c.iter().enumerate() {
                        let xij = &x[i * n + j];
                        if !xij.is_zero() && !cj.is_zero() {
                            acc += &xij.mul_ref(cj);
                        }
                    }
                    acc
                })
                .collect();
            if !support.contains(&img) {
                return Err(Error::NotInvariant);
            }
            for (r, &p) in piv.iter().enumerate() {
                a.set(r, k, img[p].clone());
            }
        }
        actions.push(a);
    }
    let count = |skew: bool| -> usize {
        // unknowns B[r][c] for r <= c (symmetric) or r < c (skew)
        let mut index = vec![vec![None; s]; s];
        let mut u = 0;
        for r in 0..s {
            for c in r..s {
                if skew && r == c {
                    continue;
                }
                index[r][c] = Some((u, 1i64));
                index[c][r] = Some((u, if skew { -1 } else { 1 }));
                u += 1;
            }
        }
        if u == 0 {
            return 0;
        }
        let mut cons = LinearSystem::new(u);
        for a in &actions {
            if cons.is_saturated() {
                break;
            }
            // (AᵗB + BA)[r][c] = Σ_l A[l][r] B[l][c] + Σ_l B[r][l] A[l][c]
            for r in 0..s {
                for c in 0..s {
                    let mut row = vec![Scalar::zero(); u];
                    for l in 0..s {
                        let x = a.get(l, r);
                        if !x.is_zero() {
                            if let Some((k, sg)) = index[l][c] {
                                row[k] += &x.mul_ref(&Scalar::from(sg));
                            }
                        }
                        let y = a.get(l, c);
                        if !y.is_zero() {
                            if let Some((k, sg)) = index[r][l] {
                                row[k] += &y.mul_ref(&Scalar::from(sg));
                            }
                        }
                    }
                    cons.add(row);
                }
            }
        }
        cons.solutions().dim()
    };
    Ok((count(false), count(true)))
}

/// Invariants used to cross-identify subalgebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSignature {
    pub dim: usize,
    pub center: usize,
    pub derived: usize,
    pub killing_rank: usize,
    /// Symmetric and skew invariant forms on the column support; matrix
    /// algebras only.
    pub forms: Option<(usize, usize)>,
}

pub fn signature<L: LieAlgebra + ?Sized>(g: &L) -> StructureSignature {
    StructureSignature {
        dim: g.dim(),
        center: center(g).dim(),
        derived: derived(g).dim(),
        killing_rank: killing_rank(g),
        forms: None,
    }
}

/// [`signature`] plus the invariant-form pair on the column support.
pub fn matrix_signature(g: &MatLie) -> StructureSignature {
    let mut sig = signature(g);
    sig.forms = invariant_forms(g, &column_support(g)).ok();
    sig
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{pauli, skew};

    fn unit(n: usize, i: usize, j: usize) -> Mat {
        Mat::unit(n, i, j)
    }

    #[test]
    fn bracket_examples() {
        let h = bracket(&unit(2, 0, 1), &unit(2, 1, 0)).unwrap();
        assert_eq!(h, Mat::diag(&[Scalar::from(1), Scalar::from(-1)]));
        let x = pauli(2);
        assert!(bracket(&x, &x).unwrap().is_zero());
        // X_a X_b = X_c and X_b X_a = -X_c
        assert_eq!(bracket(&pauli(1), &pauli(2)).unwrap(), pauli(3).scale(&Scalar::from(2)));
        assert!(bracket(&Mat::identity(2), &Mat::identity(3)).is_err());
        let f = flat_commutator(2, pauli(1).as_flat(), pauli(2).as_flat());
        assert_eq!(f, pauli(3).scale(&Scalar::from(2)).into_flat());
    }

    #[test]
    fn classical_dimensions() {
        assert_eq!(build_sl(2).unwrap().dim(), 3);
        assert_eq!(build_sl(4).unwrap().dim(), 15);
        assert!(build_sl(1).is_err());
        let i4 = Involution::new("I", Mat::identity(4)).unwrap();
        assert_eq!(build_k(&i4).dim(), 6);
        let s4 = Involution::new("S", skew(4).unwrap()).unwrap();
        assert_eq!(build_k(&s4).dim(), 10);
        assert_eq!(build_k(&Involution::new("I", Mat::identity(5)).unwrap()).dim(), 10);
        assert_eq!(build_h(&Involution::new("I", Mat::identity(2)).unwrap()).dim(), 3);
        assert_eq!(build_h(&Involution::new("S", skew(2).unwrap()).unwrap()).dim(), 1);
        assert!(matches!(Involution::new("0", Mat::zeros(2, 2)), Err(Error::Singular)));
        assert!(matches!(
            Involution::new("x", Mat::from_i64(&[&[1, 2], &[3, 4]])),
            Err(Error::NotSymmetricOrSkew)
        ));
    }

    #[test]
    fn classical_algebras_close() {
        let s4 = Involution::new("S", skew(4).unwrap()).unwrap();
        assert!(build_k(&s4).is_closed());
        assert!(build_sl(3).unwrap().is_closed());
        let k = build_k(&s4);
        let h = build_h(&s4);
        assert!(Subspace::is_direct_sum(&[k.space(), &h], &Subspace::full(16)));
    }

    #[test]
    fn n7_3_fixture() {
        let g = ScLie::n7_3();
        assert!(g.jacobi_check());
        let mut x3 = vec![Scalar::zero(); 7];
        x3[2] = Scalar::one();
        let bad = g.with_bracket(1, 3, x3);
        assert!(!bad.jacobi_check());
        let c = center(&g);
        assert_eq!(c.dim(), 1);
        assert!(!c.basis()[0][6].is_zero());
        assert_eq!(killing_rank(&g), 0);
    }

    #[test]
    fn heisenberg_is_lie() {
        let h = ScLie::from_entries(3, &[(0, 1, 2, Scalar::one())]).unwrap();
        assert!(h.jacobi_check());
        assert_eq!(center(&h).dim(), 1);
        assert_eq!(derived(&h).dim(), 1);
    }

    #[test]
    fn sl2_invariants() {
        let g = build_sl(2).unwrap();
        assert_eq!(derived(&g), *g.space());
        assert!(center(&g).is_zero());
        assert_eq!(killing_rank(&g), 3);
        let h = Subspace::span(4, [vec![1, 0, 0, -1].into_iter().map(Scalar::from).collect()]).unwrap();
        assert!(largest_ideal_in(&g, &h).unwrap().is_zero());
        assert_eq!(largest_ideal_in(&g, g.space()).unwrap(), *g.space());
    }
}
