//! Group gradings of matrix algebras and Lie algebras: constructors for the
//! elementary, fine and tensor gradings, restriction to involution-skew
//! elements, the two grading classes on `sl(n)`, and verification.

use indexmap::IndexMap;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::field::Field;
use crate::groups::{AbGroup, Character};
use crate::lie::{build_k, build_sl, flat_commutator, flat_product, traceless, Involution, LieAlgebra, MatLie, ScLie};
use crate::linalg::{combination, Decomposer, LinearSystem};
use crate::matrices::{pauli, tensor as tensor_matrix};
use crate::{Error, Mat, Scalar, Subspace, Vector};

/// What a grading decomposes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    /// The full associative algebra `M_n`.
    Assoc { n: usize, space: Subspace },
    Lie(MatLie),
    Structure(ScLie),
}

impl Carrier {
    pub fn matrix_algebra(n: usize) -> Self {
        Carrier::Assoc {
            n,
            space: Subspace::full(n * n),
        }
    }

    pub fn space(&self) -> &Subspace {
        match self {
            Carrier::Assoc { space, .. } => space,
            Carrier::Lie(g) => g.space(),
            Carrier::Structure(g) => g.space(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.space().ambient_dim()
    }

    /// Size of the matrices, for matrix carriers.
    pub fn matrix_size(&self) -> Option<usize> {
        match self {
            Carrier::Assoc { n, .. } => Some(*n),
            Carrier::Lie(g) => Some(g.n()),
            Carrier::Structure(_) => None,
        }
    }

    /// The multiplication the grading must respect: the matrix product for
    /// `M_n`, the bracket otherwise.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        match self {
            Carrier::Assoc { n, .. } => flat_product(*n, x, y),
            Carrier::Lie(g) => flat_commutator(g.n(), x, y),
            Carrier::Structure(g) => g.bracket_vec(x, y),
        }
    }

    pub fn is_lie(&self) -> bool {
        !matches!(self, Carrier::Assoc { .. })
    }

    pub fn as_lie(&self) -> Option<&dyn LieAlgebra> {
        match self {
            Carrier::Assoc { .. } => None,
            Carrier::Lie(g) => Some(g),
            Carrier::Structure(g) => Some(g),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Carrier::Assoc { n, .. } => format!("M_{n}"),
            Carrier::Lie(g) => format!("lie subalgebra of gl({}) of dim {}", g.n(), g.dim()),
            Carrier::Structure(g) => format!("structure constants, dim {}", g.dim()),
        }
    }
}

/// A decomposition of a carrier into components indexed by group elements.
/// Every element has a component; zero components are stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    group: AbGroup,
    carrier: Carrier,
    components: Vec<Subspace>,
}

/// Result of checking one pair `(p, q)`: is `g_p · g_q ⊆ g_{pq}`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub p: String,
    pub q: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub direct_sum: bool,
    pub pairs: Vec<PairCheck>,
    pub compatible: bool,
    pub dims: IndexMap<String, usize>,
    pub support: Vec<String>,
    pub support_generates: bool,
}

impl VerificationReport {
    /// Direct sum and every pair compatible. Generation of the group by the
    /// support is reported but not required.
    pub fn passed(&self) -> bool {
        self.direct_sum && self.compatible
    }
}

impl Grading {
    pub fn new(group: AbGroup, carrier: Carrier, components: Vec<Subspace>) -> Result<Self, Error> {
        if components.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: components.len(),
            });
        }
        let ambient = carrier.ambient_dim();
        if let Some(c) = components.iter().find(|c| c.ambient_dim() != ambient) {
            return Err(Error::AmbientMismatch {
                left: ambient,
                right: c.ambient_dim(),
            });
        }
        Ok(Self {
            group,
            carrier,
            components,
        })
    }

    /// Components spanned by basis vectors of the carrier, `labels[k]` being
    /// the degree of the `k`-th unit vector. Meant for structure-constant
    /// algebras whose grading is given on the basis.
    pub fn from_basis_labels(group: AbGroup, carrier: Carrier, labels: &[usize]) -> Result<Self, Error> {
        let d = carrier.ambient_dim();
        if labels.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: labels.len(),
            });
        }
        let mut comps = vec![Subspace::zero(d); group.order()];
        for (k, &p) in labels.iter().enumerate() {
            let mut v = vec![Scalar::zero(); d];
            v[k] = Scalar::one();
            comps
                .get_mut(p)
                .ok_or_else(|| Error::UnknownElement(p.to_string()))?
                .insert(v);
        }
        Self::new(group, carrier, comps)
    }

    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn component(&self, p: usize) -> &Subspace {
        &self.components[p]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }

    pub fn dims_named(&self) -> IndexMap<String, usize> {
        self.components
            .iter()
            .enumerate()
            .map(|(p, c)| (self.group.name(p), c.dim()))
            .collect()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&p| !self.components[p].is_zero())
            .collect()
    }

    pub fn support_generates(&self) -> bool {
        self.group.subgroup_generated_idx(&self.support()).len() == self.group.order()
    }

    /// The identity component.
    pub fn identity_component(&self) -> &Subspace {
        &self.components[0]
    }

    /// Sum of the non-identity components.
    pub fn complement(&self) -> Subspace {
        Subspace::sum_all(self.carrier.ambient_dim(), self.components[1..].iter()).expect("ambients agree")
    }

    pub fn into_parts(self) -> (AbGroup, Carrier, Vec<Subspace>) {
        (self.group, self.carrier, self.components)
    }
}

/// Checks the direct sum decomposition and `g_p · g_q ⊆ g_{pq}` for all pairs.
pub fn check_grading(g: &Grading) -> VerificationReport {
    let grp = g.group();
    let parts: Vec<&Subspace> = g.components.iter().collect();
    let direct_sum = Subspace::is_direct_sum(&parts, g.carrier.space());
    let order = grp.order();
    // a bracket is antisymmetric, so (q, p) repeats (p, q)
    let symmetric = g.carrier.is_lie();
    let mut ok = vec![vec![true; order]; order];
    for p in 0..order {
        for q in 0..order {
            if symmetric && q < p {
                ok[p][q] = ok[q][p];
                continue;
            }
            let target = g.component(grp.mul_idx(p, q));
            ok[p][q] = g.component(p).basis().iter().all(|x| {
                g.component(q)
                    .basis()
                    .iter()
                    .all(|y| target.contains(&g.carrier.product(x, y)))
            });
        }
    }
    let mut pairs = Vec::new();
    for (p, row) in ok.iter().enumerate() {
        for (q, &v) in row.iter().enumerate() {
            pairs.push(PairCheck {
                p: grp.name(p),
                q: grp.name(q),
                ok: v,
            });
        }
    }
    VerificationReport {
        direct_sum,
        compatible: pairs.iter().all(|c| c.ok),
        pairs,
        dims: g.dims_named(),
        support: g.support().into_iter().map(|p| grp.name(p)).collect(),
        support_generates: g.support_generates(),
    }
}

/// The elementary grading of `M_n`: `E_ij` has degree `p_i⁻¹ p_j`.
pub fn elementary_in(group: &AbGroup, tuple: &[usize]) -> Result<Grading, Error> {
    let n = tuple.len();
    if let Some(&bad) = tuple.iter().find(|&&p| p >= group.order()) {
        return Err(Error::UnknownElement(bad.to_string()));
    }
    let mut comps = vec![Subspace::zero(n * n); group.order()];
    for i in 0..n {
        for j in 0..n {
            let p = group.mul_idx(group.inv_idx(tuple[i]), tuple[j]);
            comps[p].insert(Mat::unit(n, i, j).into_flat());
        }
    }
    Grading::new(group.clone(), Carrier::matrix_algebra(n), comps)
}

/// [`elementary_in`] for the Klein group.
pub fn elementary(tuple: &[usize]) -> Result<Grading, Error> {
    elementary_in(&AbGroup::klein(), tuple)
}

/// Expand block sizes into a tuple: `k[0]` copies of `e`, then `k[1]` of `a`
/// and so on.
pub fn block_tuple(ks: &[usize]) -> Vec<usize> {
    ks.iter()
        .enumerate()
        .flat_map(|(p, &k)| std::iter::repeat_n(p, k))
        .collect()
}

/// The fine grading of `M_2` by the four Pauli-type matrices.
pub fn pauli_grading() -> Grading {
    let comps = (0..4)
        .map(|p| Subspace::span(4, [pauli(p).into_flat()]).expect("length 4"))
        .collect();
    Grading::new(AbGroup::klein(), Carrier::matrix_algebra(2), comps).expect("four components")
}

/// Everything in the identity component.
pub fn trivial(group: &AbGroup, carrier: Carrier) -> Grading {
    let d = carrier.ambient_dim();
    let mut comps = vec![Subspace::zero(d); group.order()];
    comps[0] = carrier.space().clone();
    Grading::new(group.clone(), carrier, comps).expect("consistent shapes")
}

/// Grading of `M_{mk}` induced on `A ⊗ B` from gradings of `A = M_m` and
/// `B = M_k` whose supports meet only in the identity.
pub fn tensor(ga: &Grading, gb: &Grading) -> Result<Grading, Error> {
    let (Some(m), Some(k)) = (ga.carrier.matrix_size(), gb.carrier.matrix_size()) else {
        return Err(Error::InvalidGrading("tensor factors must be matrix algebras".into()));
    };
    if ga.group != gb.group {
        return Err(Error::InvalidGrading("tensor factors graded by different groups".into()));
    }
    let grp = &ga.group;
    let sa = ga.support();
    if gb.support().iter().any(|p| *p != 0 && sa.contains(p)) {
        return Err(Error::SupportOverlap);
    }
    let n = m * k;
    let mut comps = vec![Subspace::zero(n * n); grp.order()];
    for q in 0..grp.order() {
        for r in 0..grp.order() {
            let p = grp.mul_idx(q, r);
            for x in ga.component(q).basis() {
                let a = Mat::from_flat(m, m, x.clone())?;
                for y in gb.component(r).basis() {
                    let b = Mat::from_flat(k, k, y.clone())?;
                    comps[p].insert(tensor_matrix(&a, &b).into_flat());
                }
            }
        }
    }
    Grading::new(grp.clone(), Carrier::matrix_algebra(n), comps)
}

/// The grading of `M_{2m}` by `M_m ⊗ M_2` with `M_m` trivially graded and
/// `M_2` carrying the Pauli grading.
pub fn pauli_tensor(m: usize) -> Grading {
    let klein = AbGroup::klein();
    tensor(&trivial(&klein, Carrier::matrix_algebra(m)), &pauli_grading()).expect("supports meet in e")
}

fn check_graded(gr: &Grading, inv: &Involution) -> Result<(), Error> {
    for (p, c) in gr.components.iter().enumerate() {
        if !inv.is_stable(c) {
            return Err(Error::NotGraded(gr.group.name(p)));
        }
    }
    Ok(())
}

/// Restrict a grading of `M_n` to `K(M_n, Φ)`; the involution must preserve
/// every component.
pub fn restrict_k(gr: &Grading, inv: &Involution) -> Result<Grading, Error> {
    let Carrier::Assoc { n, .. } = gr.carrier else {
        return Err(Error::InvalidGrading("restriction needs a grading of M_n".into()));
    };
    if inv.n() != n {
        return Err(Error::InvalidSize(format!("involution of size {} on M_{n}", inv.n())));
    }
    check_graded(gr, inv)?;
    let comps = gr.components.iter().map(|c| inv.skew_part(c)).collect();
    Grading::new(gr.group.clone(), Carrier::Lie(build_k(inv)), comps)
}

/// Class I: cut the identity component of a grading of `M_n` down to trace
/// zero and keep the others.
pub fn class1_sl(gr: &Grading) -> Result<Grading, Error> {
    let Carrier::Assoc { n, .. } = gr.carrier else {
        return Err(Error::InvalidGrading("class I needs a grading of M_n".into()));
    };
    let sl = build_sl(n)?;
    let mut comps = gr.components.clone();
    comps[0] = comps[0].intersect(sl.space())?;
    Grading::new(gr.group.clone(), Carrier::Lie(sl), comps)
}

/// Class II: from a two-block tuple over `Z_2` (entries 0 or 1) and an
/// involution graded for it, the Klein grading
/// `g_e = K(R_e), g_a = K(R_a), g_b = H(R_e) ∩ sl, g_c = H(R_a)`.
pub fn class2_sl(tuple: &[usize], inv: &Involution) -> Result<Grading, Error> {
    let n = tuple.len();
    if inv.n() != n {
        return Err(Error::InvalidSize(format!("involution of size {} for a tuple of length {n}", inv.n())));
    }
    let z2 = elementary_in(&AbGroup::cyclic(2), tuple)?;
    check_graded(&z2, inv)?;
    let re = z2.component(0);
    let ra = z2.component(1);
    let sl = build_sl(n)?;
    let comps = vec![
        inv.skew_part(re),
        inv.skew_part(ra),
        inv.sym_part(re).intersect(&traceless(n))?,
        inv.sym_part(ra),
    ];
    Grading::new(AbGroup::klein(), Carrier::Lie(sl), comps)
}

/// Matrices of the character action `X ↦ γ(p)X` (`X ∈ g_p`) in the canonical
/// basis of the carrier, one per character.
pub fn character_actions(g: &Grading) -> Result<Vec<(Character, Mat)>, Error> {
    let chars = g.group.characters()?;
    let parts: Vec<&Subspace> = g.components.iter().collect();
    let dec = Decomposer::new(&parts).map_err(|_| Error::InvalidGrading("components are not independent".into()))?;
    let space = g.carrier.space();
    let d = space.dim();
    let piv = space.pivots();
    // split each carrier basis vector into its homogeneous pieces
    let pieces: Vec<Vec<Vector>> = space
        .basis()
        .iter()
        .map(|v| (0..parts.len()).map(|p| dec.project(v, p)).collect())
        .collect();
    let elts = g.group.elements();
    Ok(chars
        .into_iter()
        .map(|ch| {
            let values: Vec<Scalar> = elts.iter().map(|x| ch.value(x)).collect();
            let mut a = Mat::zeros(d, d);
            for (j, split) in pieces.iter().enumerate() {
                let mut img = vec![Scalar::zero(); g.carrier.ambient_dim()];
                for (piece, val) in split.iter().zip(&values) {
                    for (o, x) in img.iter_mut().zip(piece) {
                        if !x.is_zero() {
                            *o += &x.mul_ref(val);
                        }
                    }
                }
                for (k, &p) in piv.iter().enumerate() {
                    a.set(k, j, img[p].clone());
                }
            }
            (ch, a)
        })
        .collect())
}

/// Joint eigenspace `{X : A_γ X = λ_γ X for all γ}` for prescribed
/// eigenvalues, returned in ambient coordinates.
pub fn joint_eigenspace(space: &Subspace, actions: &[(Character, Mat)], eigen: impl Fn(&Character) -> Scalar) -> Subspace {
    let d = space.dim();
    let mut system = LinearSystem::new(d);
    for (ch, a) in actions {
        if system.is_saturated() {
            break;
        }
        let lambda = eigen(ch);
        for r in 0..d {
            let mut row = a.row(r).to_vec();
            row[r] -= &lambda;
            system.add(row);
        }
    }
    let sol = system.solutions();
    Subspace::span(
        space.ambient_dim(),
        sol.basis()
            .iter()
            .map(|c| combination(space.basis(), c, space.ambient_dim())),
    )
    .expect("lengths agree")
}

/// Recompute every component as a joint eigenspace of the dual-group action.
pub fn dual_eigenspaces(g: &Grading) -> Result<Grading, Error> {
    let actions = character_actions(g)?;
    let space = g.carrier.space();
    let comps = g
        .group
        .elements()
        .iter()
        .map(|x| joint_eigenspace(space, &actions, |ch| ch.value(x)))
        .collect();
    Grading::new(g.group.clone(), g.carrier.clone(), comps)
}

/// The Z_2 grading of the seven-dimensional nilpotent fixture: `x_2, x_4,
/// x_6` even, the rest odd.
pub fn n7_3_grading(algebra: ScLie) -> Result<Grading, Error> {
    Grading::from_basis_labels(AbGroup::cyclic(2), Carrier::Structure(algebra), &[1, 0, 1, 0, 1, 0, 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::skew;

    fn klein_names(g: &Grading) -> Vec<usize> {
        g.dims()
    }

    #[test]
    fn pauli_grading_passes() {
        let g = pauli_grading();
        let r = check_grading(&g);
        assert!(r.passed());
        assert_eq!(r.support, ["e", "a", "b", "c"]);
        assert!(r.support_generates);
        assert_eq!(g.component(1).basis(), &[pauli(1).scale(&Scalar::from(-1)).into_flat()]);
    }

    #[test]
    fn elementary_dims() {
        assert_eq!(klein_names(&elementary(&[0, 1]).unwrap()), [2, 2, 0, 0]);
        assert_eq!(klein_names(&elementary(&[0, 0, 1, 1]).unwrap()), [8, 8, 0, 0]);
        assert_eq!(klein_names(&elementary(&[0, 1, 2, 3]).unwrap()), [4, 4, 4, 4]);
        for t in [vec![0, 1], vec![0, 1, 2], vec![0, 0, 1, 3]] {
            assert!(check_grading(&elementary(&t).unwrap()).passed());
        }
    }

    #[test]
    fn trivial_tuple_is_degenerate() {
        let g = elementary(&[0, 0]).unwrap();
        let r = check_grading(&g);
        assert!(r.passed());
        assert_eq!(r.support, ["e"]);
        assert!(!r.support_generates);
    }

    #[test]
    fn tensor_dims() {
        for m in 1..4 {
            let g = pauli_tensor(m);
            assert_eq!(g.dims(), vec![m * m; 4]);
            assert!(check_grading(&g).passed());
        }
        assert_eq!(pauli_tensor(1), pauli_grading());
        assert!(matches!(
            tensor(&pauli_grading(), &pauli_grading()),
            Err(Error::SupportOverlap)
        ));
    }

    #[test]
    fn restricted_dims() {
        let i4 = Involution::new("I", Mat::identity(4)).unwrap();
        let g = restrict_k(&elementary(&[0, 0, 1, 1]).unwrap(), &i4).unwrap();
        assert_eq!(g.dims(), [2, 4, 0, 0]);
        assert!(check_grading(&g).passed());

        let t = pauli_tensor(2);
        let psi1 = Involution::new("psi1", Mat::identity(4)).unwrap();
        assert_eq!(restrict_k(&t, &psi1).unwrap().dims(), [1, 1, 1, 3]);
        let psi4 = Involution::new("psi4", tensor_matrix(&skew(2).unwrap(), &pauli(3))).unwrap();
        let g4 = restrict_k(&t, &psi4).unwrap();
        assert_eq!(g4.dims(), [3, 1, 1, 1]);
        assert!(check_grading(&g4).passed());

        let s4 = Involution::new("S", skew(4).unwrap()).unwrap();
        assert!(matches!(
            restrict_k(&elementary(&[0, 0, 1, 2]).unwrap(), &s4),
            Err(Error::NotGraded(_))
        ));
    }

    #[test]
    fn class1_examples() {
        let g = class1_sl(&elementary(&[0, 1]).unwrap()).unwrap();
        assert_eq!(g.dims(), [1, 2, 0, 0]);
        let g3 = class1_sl(&elementary(&[0, 1, 2]).unwrap()).unwrap();
        assert_eq!(g3.dims()[0], 2);
        assert!(check_grading(&g3).passed());
    }

    #[test]
    fn class2_fine_sl2() {
        let inv = Involution::new("I", Mat::identity(2)).unwrap();
        let g = class2_sl(&[0, 1], &inv).unwrap();
        assert_eq!(g.dims(), [0, 1, 1, 1]);
        assert!(check_grading(&g).passed());
    }

    #[test]
    fn dual_round_trip() {
        let g = pauli_grading();
        assert_eq!(dual_eigenspaces(&g).unwrap(), g);
        let t = trivial(&AbGroup::klein(), Carrier::Lie(build_sl(2).unwrap()));
        assert_eq!(dual_eigenspaces(&t).unwrap(), t);
    }

    #[test]
    fn nilpotent_fixture_grading() {
        let g = n7_3_grading(ScLie::n7_3()).unwrap();
        assert!(check_grading(&g).passed());
        let mut x3 = vec![Scalar::zero(); 7];
        x3[2] = Scalar::one();
        let bad = n7_3_grading(ScLie::n7_3().with_bracket(1, 3, x3)).unwrap();
        assert!(!check_grading(&bad).passed());
    }
}
