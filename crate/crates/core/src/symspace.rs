//! The local symmetric space of a graded Lie algebra: isotropy `h = g_e`,
//! complement `m` (the other components), and the torsion and curvature of
//! the canonical connections at the base point.
//!
//! Tensors are coefficient arrays in the canonical basis of `m`:
//! `torsion[i][j][k]` is the `k`-th coordinate of `T(m_i, m_j)`, and
//! `curvature[i][j][k][l]` the `(k, l)` entry of `R(m_i, m_j)` acting on
//! `m`-coordinates.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::gradings::{character_actions, joint_eigenspace, Grading};
use crate::io::SparseTensor;
use crate::lie::{largest_ideal_in, LieAlgebra};
use crate::linalg::Decomposer;
use crate::{Error, Mat, Scalar, Subspace, Vector};

/// Joint fixed space of all character actions.
pub fn fixed_subalgebra(g: &Grading) -> Result<Subspace, Error> {
    let actions = character_actions(g)?;
    Ok(joint_eigenspace(g.carrier().space(), &actions, |_| Scalar::from(1)))
}

pub struct LocalSymSpace {
    grading: Grading,
    h: Subspace,
    m: Subspace,
    split: Decomposer<Scalar>,
    effective: bool,
}

impl std::fmt::Debug for LocalSymSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LocalSymSpace")
            .field("h", &self.h.dim())
            .field("m", &self.m.dim())
            .field("effective", &self.effective)
            .finish()
    }
}

/// Assemble `h ⊕ m` from a grading of a Lie algebra and verify `[h, m] ⊆ m`.
pub fn build_space(g: &Grading) -> Result<LocalSymSpace, Error> {
    let lie = g.carrier().as_lie().ok_or(Error::NotLieCarrier)?;
    let h = g.identity_component().clone();
    let m = g.complement();
    if !Subspace::is_direct_sum(&[&h, &m], lie.space()) {
        return Err(Error::InvalidGrading("h and m do not split the algebra".into()));
    }
    for x in h.basis() {
        for y in m.basis() {
            if !m.contains(&lie.bracket_vec(x, y)) {
                return Err(Error::NotReductive);
            }
        }
    }
    let split = Decomposer::new(&[&h, &m])?;
    let effective = largest_ideal_in(lie, &h)?.is_zero();
    Ok(LocalSymSpace {
        grading: g.clone(),
        h,
        m,
        split,
        effective,
    })
}

impl LocalSymSpace {
    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    pub fn m(&self) -> &Subspace {
        &self.m
    }

    /// No nonzero ideal of the algebra lies in `h`.
    pub fn is_effective(&self) -> bool {
        self.effective
    }

    fn lie(&self) -> &dyn LieAlgebra {
        self.grading.carrier().as_lie().expect("checked at construction")
    }

    fn project_h(&self, v: &[Scalar]) -> Vector {
        self.split.project(v, 0)
    }

    fn project_m(&self, v: &[Scalar]) -> Vector {
        self.split.project(v, 1)
    }

    fn m_coords(&self, v: &[Scalar]) -> Vector {
        self.m.pivots().iter().map(|&p| v[p].clone()).collect()
    }

    /// `T(x, y) = -[x, y]_m`.
    pub fn torsion(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, Error> {
        if !self.m.contains(x) || !self.m.contains(y) {
            return Err(Error::OutsideComplement);
        }
        Ok(self
            .project_m(&self.lie().bracket_vec(x, y))
            .into_iter()
            .map(|c| -c)
            .collect())
    }

    /// `R(x, y) = -ad([x, y]_h)` restricted to `m`, in `m`-coordinates.
    pub fn curvature(&self, x: &[Scalar], y: &[Scalar]) -> Result<Mat, Error> {
        if !self.m.contains(x) || !self.m.contains(y) {
            return Err(Error::OutsideComplement);
        }
        let hx = self.project_h(&self.lie().bracket_vec(x, y));
        let d = self.m.dim();
        let mut r = Mat::zeros(d, d);
        if hx.iter().all(Zero::is_zero) {
            return Ok(r);
        }
        for (l, z) in self.m.basis().iter().enumerate() {
            let img = self.lie().bracket_vec(&hx, z);
            for (k, c) in self.m_coords(&img).into_iter().enumerate() {
                r.set(k, l, -c);
            }
        }
        Ok(r)
    }

    /// Coordinates of `[m_i, m_j]` for `i < j`, split into the `h` and `m`
    /// parts.
    fn pair_brackets(&self) -> Vec<(usize, usize, Vector, Vector)> {
        let b = self.m.basis();
        let (hr, mr) = (self.split.part_range(0), self.split.part_range(1));
        let mut out = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let c = self.split.coordinates(&self.lie().bracket_vec(&b[i], &b[j]));
                out.push((i, j, c[hr.clone()].to_vec(), c[mr.clone()].to_vec()));
            }
        }
        out
    }

    pub fn torsion_tensor(&self) -> SparseTensor {
        let d = self.m.dim();
        let mut t = SparseTensor::new(vec![d, d, d]);
        let mut entries = Vec::new();
        for (i, j, _, mc) in self.pair_brackets() {
            for (k, c) in mc.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push(((i, j, k), -c.clone()));
                    entries.push(((j, i, k), c));
                }
            }
        }
        entries.sort_by_key(|a| a.0);
        for ((i, j, k), c) in entries {
            t.push(vec![i, j, k], c);
        }
        t
    }

    pub fn curvature_tensor(&self) -> SparseTensor {
        let d = self.m.dim();
        // nonzero entries of ad(h_k) on m, in m-coordinates
        let ads: Vec<Vec<(usize, usize, Scalar)>> = self
            .h
            .basis()
            .iter()
            .map(|hk| {
                let mut a = Vec::new();
                for (l, z) in self.m.basis().iter().enumerate() {
                    for (r, c) in self.m_coords(&self.lie().bracket_vec(hk, z)).into_iter().enumerate() {
                        if !c.is_zero() {
                            a.push((r, l, c));
                        }
                    }
                }
                a
            })
            .collect();
        let mut entries = Vec::new();
        for (i, j, hc, _) in self.pair_brackets() {
            let mut r: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (c, a) in hc.iter().zip(&ads) {
                if c.is_zero() {
                    continue;
                }
                for (k, l, v) in a {
                    *r.entry((*k, *l)).or_insert_with(Scalar::zero) -= &c.mul_ref(v);
                }
            }
            for ((k, l), v) in r {
                if !v.is_zero() {
                    entries.push(((j, i, k, l), -v.clone()));
                    entries.push(((i, j, k, l), v));
                }
            }
        }
        entries.sort_by_key(|a| a.0);
        let mut t = SparseTensor::new(vec![d, d, d, d]);
        for ((i, j, k, l), c) in entries {
            t.push(vec![i, j, k, l], c);
        }
        t
    }

    /// `[m, m] ⊆ h`.
    pub fn is_symmetric(&self) -> bool {
        let b = self.m.basis();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| self.h.contains(&self.lie().bracket_vec(&b[i], &b[j]))))
    }
}

/// Torsion of the torsion-free modification `∇_X Y - t·T(X, Y)` of the
/// first canonical connection, computed from the torsion array: it equals
/// `T(x, y) - t·T(x, y) + t·T(y, x)`, which vanishes for `t = 1/2`.
pub fn second_connection_torsion(s: &LocalSymSpace) -> SparseTensor {
    modified_torsion(&s.torsion_tensor(), &Scalar::from_ratio(1, 2))
}

/// Torsion of `∇_X Y - t·T(X, Y)` given the torsion array `T` of `∇`.
pub fn modified_torsion(torsion: &SparseTensor, t: &Scalar) -> SparseTensor {
    let d = torsion.shape.first().copied().unwrap_or(0);
    let mut dense = vec![Scalar::zero(); d * d * d];
    let at = |i: usize, j: usize, k: usize| (i * d + j) * d + k;
    let one_minus_t = Scalar::from(1) - t.clone();
    for e in &torsion.entries {
        let (i, j, k) = (e.index[0], e.index[1], e.index[2]);
        dense[at(i, j, k)] += &e.value.mul_ref(&one_minus_t);
        dense[at(j, i, k)] += &e.value.mul_ref(t);
    }
    let mut out = SparseTensor::new(torsion.shape.clone());
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                out.push(vec![i, j, k], dense[at(i, j, k)].clone());
            }
        }
    }
    out
}

/// Connection data in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionData {
    pub h_dim: usize,
    pub m_dim: usize,
    pub symmetric: bool,
    pub effective: bool,
    pub torsion: SparseTensor,
    pub curvature: SparseTensor,
    pub second_torsion: SparseTensor,
}

pub fn connection_data(s: &LocalSymSpace) -> ConnectionData {
    let torsion = s.torsion_tensor();
    let second_torsion = modified_torsion(&torsion, &Scalar::from_ratio(1, 2));
    ConnectionData {
        h_dim: s.h.dim(),
        m_dim: s.m.dim(),
        symmetric: s.is_symmetric(),
        effective: s.effective,
        curvature: s.curvature_tensor(),
        torsion,
        second_torsion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::{product_grading, ClassicalFamily};
    use crate::gradings::{class2_sl, elementary, restrict_k, trivial, Carrier};
    use crate::groups::AbGroup;
    use crate::lie::{build_sl, Involution};

    fn fine_sl2() -> Grading {
        class2_sl(&[0, 1], &Involution::new("I", Mat::identity(2)).unwrap()).unwrap()
    }

    fn nu1_so4() -> Grading {
        let inv = Involution::new("I", Mat::identity(4)).unwrap();
        restrict_k(&elementary(&[0, 0, 1, 1]).unwrap(), &inv).unwrap()
    }

    #[test]
    fn fixed_points() {
        assert!(fixed_subalgebra(&fine_sl2()).unwrap().is_zero());
        assert_eq!(fixed_subalgebra(&nu1_so4()).unwrap().dim(), 2);
        let t = trivial(&AbGroup::klein(), Carrier::Lie(build_sl(2).unwrap()));
        assert_eq!(fixed_subalgebra(&t).unwrap(), *t.carrier().space());
    }

    #[test]
    fn space_dimensions() {
        let s = build_space(&product_grading(ClassicalFamily::SoEven, 1, 2).unwrap()).unwrap();
        assert_eq!((s.h().dim(), s.m().dim()), (1, 5));
        assert!(s.is_effective());
        let f = build_space(&fine_sl2()).unwrap();
        assert_eq!((f.h().dim(), f.m().dim()), (0, 3));
        assert!(f.is_effective());
        let e = build_space(&nu1_so4()).unwrap();
        assert_eq!((e.h().dim(), e.m().dim()), (2, 4));
    }

    #[test]
    fn torsion_examples() {
        let sym = build_space(&nu1_so4()).unwrap();
        assert!(sym.is_symmetric());
        assert!(sym.torsion_tensor().is_zero());
        assert!(!sym.curvature_tensor().is_zero());

        let f = build_space(&fine_sl2()).unwrap();
        let g = f.grading();
        let (x, y) = (&g.component(1).basis()[0], &g.component(2).basis()[0]);
        let t = f.torsion(x, y).unwrap();
        let br = crate::lie::flat_commutator(2, x, y);
        assert_eq!(t, br.into_iter().map(|c| -c).collect::<Vec<_>>());
        assert!(f.torsion(x, x).unwrap().iter().all(Zero::is_zero));
        assert!(f.curvature_tensor().is_zero());
        assert!(f.torsion(&[Scalar::from(1), Scalar::zero(), Scalar::zero(), Scalar::zero()], y).is_err());
    }

    #[test]
    fn tensors_agree_with_pointwise_maps() {
        for g in [nu1_so4(), fine_sl2(), product_grading(ClassicalFamily::SoEven, 1, 2).unwrap()] {
            let s = build_space(&g).unwrap();
            let b = s.m().basis().to_vec();
            let d = b.len();
            let mut t = SparseTensor::new(vec![d, d, d]);
            let mut r = SparseTensor::new(vec![d, d, d, d]);
            for i in 0..d {
                for j in 0..d {
                    for (k, c) in s.m_coords(&s.torsion(&b[i], &b[j]).unwrap()).into_iter().enumerate() {
                        t.push(vec![i, j, k], c);
                    }
                    let m = s.curvature(&b[i], &b[j]).unwrap();
                    for k in 0..d {
                        for l in 0..d {
                            r.push(vec![i, j, k, l], m.get(k, l).clone());
                        }
                    }
                }
            }
            assert_eq!(s.torsion_tensor(), t);
            assert_eq!(s.curvature_tensor(), r);
        }
    }

    #[test]
    fn second_connection_is_torsion_free() {
        let s = build_space(&product_grading(ClassicalFamily::SoEven, 1, 2).unwrap()).unwrap();
        assert!(!s.is_symmetric());
        assert!(!s.torsion_tensor().is_zero());
        assert!(second_connection_torsion(&s).is_zero());
        // subtracting the full torsion flips its sign instead of removing it
        let full = modified_torsion(&s.torsion_tensor(), &Scalar::from(1));
        assert!(!full.is_zero());
    }
}
