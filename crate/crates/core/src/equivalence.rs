//! Weak-equivalence witnesses: a conjugation of the matrix algebra paired
//! with an automorphism of the grading group.
//!
//! A witness `(M, ω)` sends a grading `g` to `g'` with `g'_p = π(g_{ω(p)})`
//! where `π(X) = M⁻¹XM`. The carrier is transported along: the gradings
//! compared here live on different realizations `K(M_n, Φ)` of the same
//! classical algebra, and `π` maps one realization onto the other.

use crate::gradings::{pauli_tensor, restrict_k, Carrier, Grading};
use crate::groups::{AbGroup, GroupAut};
use crate::lie::{matrix_signature, Involution, LieAlgebra, MatLie, StructureSignature};
use crate::matrices::{pauli, skew, tensor};
use crate::{Error, Mat, Scalar, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    conjugator: Mat,
    conjugator_inv: Mat,
    omega: GroupAut,
}

impl Witness {
    pub fn new(conjugator: Mat, omega: GroupAut) -> Result<Self, Error> {
        let conjugator_inv = conjugator.inverse().ok_or(Error::Singular)?;
        Ok(Self {
            conjugator,
            conjugator_inv,
            omega,
        })
    }

    pub fn identity(group: &AbGroup, n: usize) -> Self {
        Self::new(Mat::identity(n), GroupAut::identity(group)).expect("identity is invertible")
    }

    pub fn conjugator(&self) -> &Mat {
        &self.conjugator
    }

    pub fn omega(&self) -> &GroupAut {
        &self.omega
    }

    /// `(M⁻¹, ω⁻¹)`.
    pub fn inverse(&self, group: &AbGroup) -> Self {
        Self {
            conjugator: self.conjugator_inv.clone(),
            conjugator_inv: self.conjugator.clone(),
            omega: self.omega.inverse(group),
        }
    }

    /// `π(X) = M⁻¹XM` on a flattened matrix.
    pub fn conjugate_flat(&self, x: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        let n = self.conjugator.rows();
        let m = Mat::from_flat(n, n, x.to_vec())?;
        Ok(self
            .conjugator_inv
            .checked_mul(&m)?
            .checked_mul(&self.conjugator)?
            .into_flat())
    }

    fn conjugate_space(&self, s: &Subspace) -> Result<Subspace, Error> {
        let images = s
            .basis()
            .iter()
            .map(|v| self.conjugate_flat(v))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span(s.ambient_dim(), images)
    }
}

fn transport(w: &Witness, g: &Grading, strict: bool) -> Result<Grading, Error> {
    let Some(n) = g.carrier().matrix_size() else {
        return Err(Error::InvalidGrading("conjugation needs a matrix carrier".into()));
    };
    if w.conjugator.rows() != n {
        return Err(Error::InvalidSize(format!(
            "conjugator of size {} for matrices of size {n}",
            w.conjugator.rows()
        )));
    }
    let carrier = match g.carrier() {
        Carrier::Assoc { .. } => g.carrier().clone(),
        Carrier::Lie(l) => {
            let image = w.conjugate_space(l.space())?;
            if strict && image != *l.space() {
                return Err(Error::CarrierNotPreserved);
            }
            Carrier::Lie(MatLie::new_unchecked(n, image)?)
        }
        Carrier::Structure(_) => unreachable!("matrix size checked above"),
    };
    let grp = g.group();
    let comps = (0..grp.order())
        .map(|p| w.conjugate_space(g.component(w.omega.apply_idx(grp, p))))
        .collect::<Result<Vec<_>, _>>()?;
    Grading::new(grp.clone(), carrier, comps)
}

/// `g'_p = π(g_{ω(p)})`, carrying the carrier along to its image.
pub fn apply(w: &Witness, g: &Grading) -> Result<Grading, Error> {
    transport(w, g, false)
}

/// As [`apply`], but the conjugation must map the carrier onto itself.
pub fn apply_strict(w: &Witness, g: &Grading) -> Result<Grading, Error> {
    transport(w, g, true)
}

/// True iff `w` maps `g1` onto `g2` componentwise (carriers included).
pub fn verify_equiv(g1: &Grading, g2: &Grading, w: &Witness) -> bool {
    if g1.group() != g2.group() {
        return false;
    }
    match apply(w, g1) {
        Ok(image) => image.carrier().space() == g2.carrier().space() && image.components() == g2.components(),
        Err(_) => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalFamily {
    /// `so(2m)`: symmetric involutions.
    SoEven,
    /// `sp(2m)`: skew involutions.
    Sp,
}

/// The involution matrix of the `index`-th (1..=4) product grading of
/// `M_m ⊗ M_2`. For `SoEven` the first three pair `I_m` with `X_e, X_a, X_b`
/// and the fourth pairs `S_m` with `X_c`; for `Sp` the roles of `I_m` and
/// `S_m` are exchanged.
pub fn product_phi(family: ClassicalFamily, index: usize, m: usize) -> Result<Mat, Error> {
    if !(1..=4).contains(&index) {
        return Err(Error::InvalidSize(format!("product involution index {index}")));
    }
    let skew_first = matches!(family, ClassicalFamily::Sp) != (index == 4);
    let a = if skew_first { skew(m)? } else { Mat::identity(m) };
    let b = if index == 4 { pauli(3) } else { pauli(index - 1) };
    Ok(tensor(&a, &b))
}

/// The grading of `K(M_{2m}, Φ)` induced by `M_m ⊗ M_2` for the `index`-th
/// product involution.
pub fn product_grading(family: ClassicalFamily, index: usize, m: usize) -> Result<Grading, Error> {
    let inv = Involution::new(format!("product-{index}"), product_phi(family, index, m)?)?;
    restrict_k(&pauli_tensor(m), &inv)
}

/// A witness together with the product gradings it relates.
#[derive(Clone, Debug)]
pub struct CanonicalWitness {
    pub witness: Witness,
    pub source: usize,
    pub target: usize,
}

/// The two conjugations relating the first product grading to the second
/// and third. `m` is the size of the first tensor factor; it must be even
/// for `Sp`.
pub fn canonical_witnesses(family: ClassicalFamily, m: usize) -> Result<Vec<CanonicalWitness>, Error> {
    if m == 0 {
        return Err(Error::InvalidSize("m must be positive".into()));
    }
    if family == ClassicalFamily::Sp && !m.is_multiple_of(2) {
        return Err(Error::OddSkewBlock(m));
    }
    let klein = AbGroup::klein();
    let i = Scalar::i();
    let d2 = Mat::diag(&[i.clone(), Scalar::from(1)]);
    let d3 = Mat::from_rows(vec![
        vec![Scalar::from(1), Scalar::from(1)],
        vec![i.clone(), -i],
    ])?;
    // swap b and c; and a -> c, c -> b, b -> a
    let swap_bc = GroupAut::from_permutation(&klein, &[0, 1, 3, 2])?;
    let cycle = GroupAut::from_permutation(&klein, &[0, 3, 1, 2])?;
    Ok(vec![
        CanonicalWitness {
            witness: Witness::new(tensor(&Mat::identity(m), &d2), swap_bc)?,
            source: 1,
            target: 2,
        },
        CanonicalWitness {
            witness: Witness::new(tensor(&Mat::identity(m), &d3), cycle)?,
            source: 1,
            target: 3,
        },
    ])
}

/// Signatures of the identity components, returned when they differ: a
/// certificate that no witness can relate the two gradings.
pub fn inequivalence_certificate(
    g1: &Grading,
    g2: &Grading,
) -> Result<Option<(StructureSignature, StructureSignature)>, Error> {
    let sig = |g: &Grading| -> Result<StructureSignature, Error> {
        let n = g
            .carrier()
            .matrix_size()
            .ok_or_else(|| Error::InvalidGrading("matrix carrier expected".into()))?;
        Ok(matrix_signature(&MatLie::new_unchecked(n, g.identity_component().clone())?))
    };
    let (s1, s2) = (sig(g1)?, sig(g2)?);
    Ok((s1 != s2).then_some((s1, s2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradings::{check_grading, elementary};

    #[test]
    fn identity_witness_is_neutral() {
        let g = product_grading(ClassicalFamily::SoEven, 1, 2).unwrap();
        let w = Witness::identity(g.group(), 4);
        assert!(verify_equiv(&g, &g, &w));
        assert_eq!(apply_strict(&w, &g).unwrap(), g);
    }

    #[test]
    fn permutation_reorders_tuple() {
        // conjugating by the transposition of 1 and 2 turns (e, a, e) into (e, e, a)
        let perm = Mat::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        let w = Witness::new(perm, GroupAut::identity(&AbGroup::klein())).unwrap();
        let g = elementary(&[0, 1, 0]).unwrap();
        assert!(verify_equiv(&g, &elementary(&[0, 0, 1]).unwrap(), &w));
    }

    #[test]
    fn relabeling_swaps_components() {
        let g = elementary(&[0, 1, 2]).unwrap();
        let swap = GroupAut::from_permutation(g.group(), &[0, 1, 3, 2]).unwrap();
        let h = apply(&Witness::new(Mat::identity(3), swap).unwrap(), &g).unwrap();
        assert_eq!(h.component(2), g.component(3));
        assert_eq!(h.component(3), g.component(2));
    }

    #[test]
    fn so4_and_sp4_witnesses() {
        for (family, m) in [(ClassicalFamily::SoEven, 2), (ClassicalFamily::Sp, 2)] {
            let ws = canonical_witnesses(family, m).unwrap();
            assert_eq!(ws.len(), 2);
            let src = product_grading(family, 1, m).unwrap();
            for cw in ws {
                let dst = product_grading(family, cw.target, m).unwrap();
                assert!(verify_equiv(&src, &dst, &cw.witness));
                let back = cw.witness.inverse(src.group());
                assert!(verify_equiv(&dst, &src, &back));
                assert!(check_grading(&apply(&cw.witness, &src).unwrap()).passed());
            }
        }
    }

    #[test]
    fn strict_apply_rejects_moved_carrier() {
        let src = product_grading(ClassicalFamily::SoEven, 1, 2).unwrap();
        let w = canonical_witnesses(ClassicalFamily::SoEven, 2).unwrap().remove(0).witness;
        assert!(matches!(apply_strict(&w, &src), Err(Error::CarrierNotPreserved)));
    }

    #[test]
    fn fourth_grading_has_other_isotropy() {
        let g1 = product_grading(ClassicalFamily::SoEven, 1, 2).unwrap();
        let g4 = product_grading(ClassicalFamily::SoEven, 4, 2).unwrap();
        assert!(inequivalence_certificate(&g1, &g4).unwrap().is_some());
        for cw in canonical_witnesses(ClassicalFamily::SoEven, 2).unwrap() {
            assert!(!verify_equiv(&g1, &g4, &cw.witness));
        }
    }
}
