//! Enumeration and verification of every classified case up to a size
//! bound. Each case builds its grading, runs the verifier and the dual-action
//! round trip, assembles the symmetric space, and compares the isotropy
//! algebra with an independently built block embedding.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gradings::{block_tuple, check_grading, class1_sl, class2_sl, dual_eigenspaces, elementary, pauli_tensor, restrict_k, Grading};
use crate::lie::{signature, Involution, MatLie, StructureSignature};
use crate::matrices::{identity_blocks, paired_swaps, pauli, skew, skew_blocks, swap_block, tensor};
use crate::symspace::{build_space, connection_data, fixed_subalgebra, ConnectionData};
use crate::{Error, Mat, Subspace};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "A_classI_elem")]
    AClassIElem,
    #[serde(rename = "A_classI_fine")]
    AClassIFine,
    #[serde(rename = "A_classII")]
    AClassII,
    #[serde(rename = "BCD_elem")]
    BcdElem,
    #[serde(rename = "BCD_fine")]
    BcdFine,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::AClassIElem,
        Family::AClassIFine,
        Family::AClassII,
        Family::BcdElem,
        Family::BcdFine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::AClassIElem => "A_classI_elem",
            Family::AClassIFine => "A_classI_fine",
            Family::AClassII => "A_classII",
            Family::BcdElem => "BCD_elem",
            Family::BcdFine => "BCD_fine",
        }
    }

    /// Which of the four classification tables the family fills.
    pub fn table(self) -> u8 {
        match self {
            Family::BcdElem => 1,
            Family::BcdFine => 2,
            Family::AClassIElem | Family::AClassIFine => 3,
            Family::AClassII => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::BadCaseId(s.to_string()))
    }
}

/// The involution or tuple shape defining a case. Primed choices pair
/// blocks by a swap; barred choices are the skew (symplectic) versions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PhiChoice {
    Phi1,
    Phi1Prime,
    Phi2,
    Phi3,
    Phi3Prime,
    Phi1Bar,
    Phi1BarPrime,
    Phi2Bar,
    Phi3Bar,
    Phi3BarPrime,
    Psi1,
    Psi4,
    Psi1Bar,
    Psi4Bar,
    /// Class I elementary tuples with 2, 3 or 4 blocks.
    Nu1,
    Nu2,
    Nu3,
    /// Class I fine grading.
    Pauli,
}

const PHI_NAMES: [(PhiChoice, &str); 18] = [
    (PhiChoice::Phi1, "Phi1"),
    (PhiChoice::Phi1Prime, "Phi1'"),
    (PhiChoice::Phi2, "Phi2"),
    (PhiChoice::Phi3, "Phi3"),
    (PhiChoice::Phi3Prime, "Phi3'"),
    (PhiChoice::Phi1Bar, "Phi1bar"),
    (PhiChoice::Phi1BarPrime, "Phi1bar'"),
    (PhiChoice::Phi2Bar, "Phi2bar"),
    (PhiChoice::Phi3Bar, "Phi3bar"),
    (PhiChoice::Phi3BarPrime, "Phi3bar'"),
    (PhiChoice::Psi1, "Psi1"),
    (PhiChoice::Psi4, "Psi4"),
    (PhiChoice::Psi1Bar, "Psi1bar"),
    (PhiChoice::Psi4Bar, "Psi4bar"),
    (PhiChoice::Nu1, "nu1"),
    (PhiChoice::Nu2, "nu2"),
    (PhiChoice::Nu3, "nu3"),
    (PhiChoice::Pauli, "pauli"),
];

impl PhiChoice {
    pub fn name(self) -> &'static str {
        PHI_NAMES.iter().find(|(p, _)| *p == self).expect("named").1
    }

    fn parse(s: &str) -> Option<Self> {
        PHI_NAMES.iter().find(|(_, n)| *n == s).map(|(p, _)| *p)
    }
}

/// The classical algebra a case grades.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlgebraKind {
    Sl,
    So,
    Sp,
}

/// One table row instance: family, defining shape and block sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseSpec {
    pub family: Family,
    pub phi: PhiChoice,
    pub params: Vec<usize>,
}

impl CaseSpec {
    pub fn new(family: Family, phi: PhiChoice, params: Vec<usize>) -> Self {
        Self { family, phi, params }
    }

    /// `family/shape/k1,k2,...`, e.g. `BCD_elem/Phi1/2,2`.
    pub fn id(&self) -> String {
        let ps: Vec<String> = self.params.iter().map(usize::to_string).collect();
        format!("{}/{}/{}", self.family, self.phi.name(), ps.join(","))
    }

    pub fn parse(id: &str) -> Result<Self, Error> {
        let bad = || Error::BadCaseId(id.to_string());
        let mut parts = id.split('/');
        let (Some(f), Some(p), Some(k), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let family: Family = f.parse().map_err(|_| bad())?;
        let phi = PhiChoice::parse(p).ok_or_else(bad)?;
        let params = k
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        let spec = Self { family, phi, params };
        spec.validate().map_err(|_| bad())?;
        Ok(spec)
    }

    fn arity(&self) -> usize {
        use PhiChoice::*;
        match self.phi {
            Phi1 | Phi1Bar | Nu1 | Phi3Prime | Phi3BarPrime => 2,
            Phi2 | Phi2Bar | Nu2 => 3,
            Phi3 | Phi3Bar | Nu3 => 4,
            Phi1Prime | Phi1BarPrime | Psi1 | Psi4 | Psi1Bar | Psi4Bar | Pauli => 1,
        }
    }

    fn family_allows(&self) -> bool {
        use PhiChoice::*;
        match self.family {
            Family::BcdElem => matches!(
                self.phi,
                Phi1 | Phi1Prime | Phi2 | Phi3 | Phi3Prime | Phi1Bar | Phi1BarPrime | Phi2Bar | Phi3Bar | Phi3BarPrime
            ),
            Family::BcdFine => matches!(self.phi, Psi1 | Psi4 | Psi1Bar | Psi4Bar),
            Family::AClassIElem => matches!(self.phi, Nu1 | Nu2 | Nu3),
            Family::AClassIFine => self.phi == Pauli,
            Family::AClassII => matches!(self.phi, Phi1 | Phi1Prime | Phi1Bar | Phi1BarPrime),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        use PhiChoice::*;
        let bad = |why: &str| Err(Error::InvalidSize(format!("{}: {why}", self.id())));
        if !self.family_allows() {
            return bad("shape not used by this family");
        }
        if self.params.len() != self.arity() {
            return bad("wrong number of parameters");
        }
        // Class II allows an empty second block; everything else needs
        // positive sizes
        let zero_ok = self.family == Family::AClassII && self.params.len() == 2;
        for (i, &k) in self.params.iter().enumerate() {
            if k == 0 && !(zero_ok && i == 1) {
                return bad("block sizes must be positive");
            }
        }
        let needs_even = matches!(self.phi, Phi1Bar | Phi2Bar | Phi3Bar | Psi4 | Psi1Bar);
        if needs_even && self.params.iter().any(|k| k % 2 != 0) {
            return bad("skew blocks need even sizes");
        }
        if self.n() < 2 {
            return bad("matrix size below 2");
        }
        // sp(2) is all of sl(2), so this shape grades trivially
        if self.family == Family::AClassII && self.phi == Phi1Bar && self.params == [2, 0] {
            return bad("trivial grading");
        }
        Ok(())
    }

    /// Matrix size.
    pub fn n(&self) -> usize {
        use PhiChoice::*;
        let s: usize = self.params.iter().sum();
        match self.phi {
            Phi1Prime | Phi1BarPrime | Phi3Prime | Phi3BarPrime | Psi1 | Psi4 | Psi1Bar | Psi4Bar | Pauli => 2 * s,
            _ => s,
        }
    }

    pub fn algebra(&self) -> AlgebraKind {
        use PhiChoice::*;
        match (self.family, self.phi) {
            (Family::AClassIElem | Family::AClassIFine | Family::AClassII, _) => AlgebraKind::Sl,
            (_, Phi1 | Phi1Prime | Phi2 | Phi3 | Phi3Prime | Psi1 | Psi4) => AlgebraKind::So,
            _ => AlgebraKind::Sp,
        }
    }

    pub fn algebra_name(&self) -> String {
        let n = self.n();
        match self.algebra() {
            AlgebraKind::Sl => format!("sl({n})"),
            AlgebraKind::So => format!("so({n})"),
            AlgebraKind::Sp => format!("sp({n})"),
        }
    }

    /// Cartan letter of the algebra: A for sl, B/D for odd/even so, C for sp.
    pub fn letter(&self) -> char {
        match self.algebra() {
            AlgebraKind::Sl => 'A',
            AlgebraKind::So if self.n() % 2 == 1 => 'B',
            AlgebraKind::So => 'D',
            AlgebraKind::Sp => 'C',
        }
    }

    pub fn is_simple(&self) -> bool {
        let n = self.n();
        match self.algebra() {
            AlgebraKind::Sl | AlgebraKind::Sp => n >= 2,
            AlgebraKind::So => n == 3 || n >= 5,
        }
    }

    /// The abstract isotropy type the tables claim.
    pub fn isotropy_blocks(&self) -> Vec<Block> {
        use PhiChoice::*;
        let p = &self.params;
        let nonzero = |f: fn(usize) -> Block| p.iter().filter(|&&k| k > 0).map(|&k| f(k)).collect::<Vec<_>>();
        match self.phi {
            Phi1 | Phi2 | Phi3 => nonzero(Block::So),
            Phi1Bar | Phi2Bar | Phi3Bar => nonzero(Block::Sp),
            Phi1Prime | Phi1BarPrime | Phi3Prime | Phi3BarPrime => nonzero(Block::Gl),
            Psi1 | Psi4Bar => vec![Block::So(p[0])],
            Psi4 | Psi1Bar => vec![Block::Sp(p[0])],
            Nu1 | Nu2 | Nu3 => {
                let mut b = nonzero(Block::Sl);
                b.push(Block::Abelian(p.len() - 1));
                b
            }
            Pauli => vec![Block::Sl(p[0])],
        }
    }

    pub fn isotropy_name(&self) -> String {
        let parts: Vec<String> = self
            .isotropy_blocks()
            .iter()
            .filter(|b| b.dim() > 0 || matches!(b, Block::So(_) | Block::Sl(_)))
            .map(Block::to_string)
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// A summand of a reductive isotropy algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Block {
    So(usize),
    /// Indexed by matrix size, which is even.
    Sp(usize),
    Sl(usize),
    Gl(usize),
    Abelian(usize),
}

impl Block {
    pub fn dim(self) -> usize {
        match self {
            Block::So(k) => k * k.saturating_sub(1) / 2,
            Block::Sp(k) => k * (k + 1) / 2,
            Block::Sl(k) => (k * k).saturating_sub(1),
            Block::Gl(k) => k * k,
            Block::Abelian(r) => r,
        }
    }

    pub fn center(self) -> usize {
        match self {
            Block::So(2) | Block::Gl(_) => 1,
            Block::Abelian(r) => r,
            _ => 0,
        }
    }

    pub fn derived(self) -> usize {
        match self {
            Block::So(k) if k <= 2 => 0,
            Block::Gl(k) => k * k - 1,
            Block::Abelian(_) => 0,
            other => other.dim(),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::So(k) => write!(f, "so({k})"),
            Block::Sp(k) => write!(f, "sp({k})"),
            Block::Sl(k) => write!(f, "sl({k})"),
            Block::Gl(k) => write!(f, "gl({k})"),
            Block::Abelian(1) => write!(f, "C"),
            Block::Abelian(r) => write!(f, "C^{r}"),
        }
    }
}

/// Dimension, center, derived algebra and Killing rank predicted from the
/// block decomposition. For a reductive algebra the Killing rank equals the
/// dimension of the derived algebra.
pub fn predicted_signature(blocks: &[Block]) -> StructureSignature {
    let derived: usize = blocks.iter().map(|b| b.derived()).sum();
    StructureSignature {
        dim: blocks.iter().map(|b| b.dim()).sum(),
        center: blocks.iter().map(|b| b.center()).sum(),
        derived,
        killing_rank: derived,
        forms: None,
    }
}

/// Which algebras a census run includes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    Letter(char),
    All,
}

impl FromStr for Selection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "all" => Ok(Selection::All),
            "A" | "B" | "C" | "D" => Ok(Selection::Letter(s.chars().next().expect("one char"))),
            _ => Err(Error::BadCaseId(s.to_string())),
        }
    }
}

impl Selection {
    pub fn admits(self, spec: &CaseSpec) -> bool {
        match self {
            Selection::All => true,
            Selection::Letter(c) => spec.letter() == c,
        }
    }
}

/// Non-increasing tuples of `parts` entries, each at least `min` and a
/// multiple of `step`, summing to `total`.
fn partitions(total: usize, parts: usize, min: usize, step: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, parts: usize, cap: usize, min: usize, step: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let mut k = cap.min(rest);
        loop {
            if k < min {
                break;
            }
            if k.is_multiple_of(step) && k * parts >= rest {
                acc.push(k);
                go(rest - k, parts - 1, k, min, step, acc, out);
                acc.pop();
            }
            if k == 0 {
                break;
            }
            k -= 1;
        }
    }
    let mut out = Vec::new();
    go(total, parts, total, min, step, &mut Vec::new(), &mut out);
    out
}

/// All cases of a family with matrix size between 2 and `n_max`, sorted by
/// shape and then parameters. The fine family is bounded by its tensor
/// parameter instead, so `so(4m)` and `sp(4m)` reach `2 * n_max`.
pub fn enumerate(family: Family, n_max: usize) -> Vec<CaseSpec> {
    use PhiChoice::*;
    let mut out = Vec::new();
    let mut push = |phi: PhiChoice, params: Vec<usize>| out.push(CaseSpec::new(family, phi, params));
    for n in 2..=n_max {
        let even = n % 2 == 0;
        match family {
            Family::BcdElem => {
                for p in partitions(n, 2, 1, 1) {
                    push(Phi1, p);
                }
                for p in partitions(n, 3, 1, 1) {
                    push(Phi2, p);
                }
                for p in partitions(n, 4, 1, 1) {
                    push(Phi3, p);
                }
                if even {
                    push(Phi1Prime, vec![n / 2]);
                    push(Phi1BarPrime, vec![n / 2]);
                    for p in partitions(n / 2, 2, 1, 1) {
                        push(Phi3Prime, p.clone());
                        push(Phi3BarPrime, p);
                    }
                    for p in partitions(n, 2, 2, 2) {
                        push(Phi1Bar, p);
                    }
                    for p in partitions(n, 3, 2, 2) {
                        push(Phi2Bar, p);
                    }
                    for p in partitions(n, 4, 2, 2) {
                        push(Phi3Bar, p);
                    }
                }
            }
            // the fine factor doubles the size again for the skew-paired
            // shapes, so the bound applies to m in so(2m), so(4m), sp(4m), sp(2m)
            Family::BcdFine if even => {
                let m = n / 2;
                push(Psi1, vec![m]);
                push(Psi4Bar, vec![m]);
                push(Psi4, vec![2 * m]);
                push(Psi1Bar, vec![2 * m]);
            }
            Family::AClassIElem => {
                for (phi, parts) in [(Nu1, 2), (Nu2, 3), (Nu3, 4)] {
                    for p in partitions(n, parts, 1, 1) {
                        push(phi, p);
                    }
                }
            }
            Family::AClassIFine if even => push(Pauli, vec![n / 2]),
            Family::AClassII => {
                for p in partitions(n, 2, 0, 1) {
                    push(Phi1, p);
                }
                if even {
                    for p in partitions(n, 2, 0, 2) {
                        push(Phi1Bar, p);
                    }
                    push(Phi1Prime, vec![n / 2]);
                    push(Phi1BarPrime, vec![n / 2]);
                }
            }
            _ => {}
        }
    }
    out.retain(|s| s.validate().is_ok());
    out.sort();
    out
}

/// Every case across all families admitted by `selection`.
pub fn enumerate_all(selection: Selection, n_max: usize) -> Vec<CaseSpec> {
    Family::ALL
        .into_iter()
        .flat_map(|f| enumerate(f, n_max))
        .filter(|s| selection.admits(s))
        .collect()
}

fn involution_for(spec: &CaseSpec) -> Result<Involution, Error> {
    use PhiChoice::*;
    let p = &spec.params;
    let phi = match spec.phi {
        Phi1 | Phi2 | Phi3 => identity_blocks(p),
        Phi1Bar | Phi2Bar | Phi3Bar => skew_blocks(p)?,
        Phi1Prime => swap_block(p[0], 1),
        Phi1BarPrime => swap_block(p[0], -1),
        Phi3Prime => paired_swaps(p[0], p[1], 1),
        Phi3BarPrime => paired_swaps(p[0], p[1], -1),
        Psi1 => tensor(&Mat::identity(p[0]), &pauli(0)),
        Psi4 => tensor(&skew(p[0])?, &pauli(3)),
        Psi1Bar => tensor(&skew(p[0])?, &pauli(0)),
        Psi4Bar => tensor(&Mat::identity(p[0]), &pauli(3)),
        Nu1 | Nu2 | Nu3 | Pauli => return Err(Error::InvalidSize("class I cases have no involution".into())),
    };
    Involution::new(spec.phi.name(), phi)
}

/// Degrees of the rows: block sizes laid out as `e, a, b, c`, with swap
/// pairs occupying consecutive blocks.
fn tuple_for(spec: &CaseSpec) -> Vec<usize> {
    use PhiChoice::*;
    let p = &spec.params;
    match spec.phi {
        Phi1Prime | Phi1BarPrime => block_tuple(&[p[0], p[0]]),
        Phi3Prime | Phi3BarPrime => block_tuple(&[p[0], p[0], p[1], p[1]]),
        _ => block_tuple(p),
    }
}

/// Build the grading a case describes.
pub fn build_grading(spec: &CaseSpec) -> Result<Grading, Error> {
    spec.validate()?;
    match spec.family {
        Family::BcdElem => restrict_k(&elementary(&tuple_for(spec))?, &involution_for(spec)?),
        Family::BcdFine => restrict_k(&pauli_tensor(spec.params[0]), &involution_for(spec)?),
        Family::AClassIElem => class1_sl(&elementary(&tuple_for(spec))?),
        Family::AClassIFine => class1_sl(&pauli_tensor(spec.params[0])),
        Family::AClassII => {
            let tuple: Vec<usize> = tuple_for(spec).into_iter().map(|p| p.min(1)).collect();
            let phi = match spec.phi {
                PhiChoice::Phi1 => identity_blocks(&spec.params),
                PhiChoice::Phi1Bar => skew_blocks(&spec.params)?,
                PhiChoice::Phi1Prime => swap_block(spec.params[0], 1),
                PhiChoice::Phi1BarPrime => swap_block(spec.params[0], -1),
                _ => unreachable!("validated"),
            };
            class2_sl(&tuple, &Involution::new(spec.phi.name(), phi)?)
        }
    }
}

/// Explicit bases of the embedded isotropy algebras, written out entry by
/// entry.
mod embed {
    use super::*;

    pub type Basis = Vec<Mat>;

    fn e(n: usize, i: usize, j: usize) -> Mat {
        Mat::unit(n, i, j)
    }

    fn sub(a: Mat, b: Mat) -> Mat {
        a.checked_sub(&b).expect("same shape")
    }

    fn add(a: Mat, b: Mat) -> Mat {
        a.checked_add(&b).expect("same shape")
    }

    /// `E_ij - E_ji` inside the block starting at `off`.
    pub fn so_block(n: usize, off: usize, k: usize) -> Basis {
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                out.push(sub(e(n, off + i, off + j), e(n, off + j, off + i)));
            }
        }
        out
    }

    /// `[[A, B], [C, -Aᵗ]]` with `B, C` symmetric, inside the block at `off`
    /// of size `k = 2l`.
    pub fn sp_block(n: usize, off: usize, k: usize) -> Basis {
        let l = k / 2;
        let mut out = Vec::new();
        for i in 0..l {
            for j in 0..l {
                out.push(sub(e(n, off + i, off + j), e(n, off + l + j, off + l + i)));
            }
        }
        for i in 0..l {
            for j in i..l {
                if i == j {
                    out.push(e(n, off + i, off + l + i));
                    out.push(e(n, off + l + i, off + i));
                } else {
                    out.push(add(e(n, off + i, off + l + j), e(n, off + j, off + l + i)));
                    out.push(add(e(n, off + l + i, off + j), e(n, off + l + j, off + i)));
                }
            }
        }
        out
    }

    /// `diag(U, -Uᵗ)` on two consecutive blocks of size `k` at `off`.
    pub fn gl_block(n: usize, off: usize, k: usize) -> Basis {
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                out.push(sub(e(n, off + i, off + j), e(n, off + k + j, off + k + i)));
            }
        }
        out
    }

    /// Traceless block-diagonal matrices for the given block sizes.
    pub fn sl_blocks(n: usize, ks: &[usize]) -> Basis {
        let mut out = Vec::new();
        let mut off = 0;
        for &k in ks {
            for i in 0..k {
                for j in 0..k {
                    if i != j {
                        out.push(e(n, off + i, off + j));
                    }
                }
            }
            off += k;
        }
        for i in 1..n {
            out.push(sub(e(n, 0, 0), e(n, i, i)));
        }
        out
    }

    /// `diag(X, X)` for `X` in the given basis of size `m`.
    pub fn doubled(inner: Basis) -> Basis {
        inner.iter().map(|x| Mat::block_diag(&[x.clone(), x.clone()])).collect()
    }

    /// `sl(m)` written out directly.
    pub fn sl(m: usize) -> Basis {
        sl_blocks(m, &[m])
    }
}

/// The isotropy algebra the tables claim, embedded explicitly in `M_n`.
pub fn expected_isotropy(spec: &CaseSpec) -> Result<Subspace, Error> {
    use PhiChoice::*;
    spec.validate()?;
    let n = spec.n();
    let p = &spec.params;
    let mut basis: embed::Basis = Vec::new();
    let mut off = 0;
    match spec.phi {
        Phi1 | Phi2 | Phi3 => {
            for &k in p {
                basis.extend(embed::so_block(n, off, k));
                off += k;
            }
        }
        Phi1Bar | Phi2Bar | Phi3Bar => {
            for &k in p {
                if k > 0 {
                    basis.extend(embed::sp_block(n, off, k));
                }
                off += k;
            }
        }
        Phi1Prime | Phi1BarPrime => basis.extend(embed::gl_block(n, 0, p[0])),
        Phi3Prime | Phi3BarPrime => {
            basis.extend(embed::gl_block(n, 0, p[0]));
            basis.extend(embed::gl_block(n, 2 * p[0], p[1]));
        }
        Psi1 | Psi4Bar => basis.extend(embed::doubled(embed::so_block(p[0], 0, p[0]))),
        Psi4 | Psi1Bar => basis.extend(embed::doubled(embed::sp_block(p[0], 0, p[0]))),
        Nu1 | Nu2 | Nu3 => basis.extend(embed::sl_blocks(n, p)),
        Pauli => basis.extend(embed::doubled(embed::sl(p[0]))),
    }
    Subspace::span(n * n, basis.into_iter().map(Mat::into_flat))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub family: Family,
    pub table: u8,
    pub algebra: String,
    pub letter: char,
    pub isotropy: String,
    pub n: usize,
    pub dim: usize,
    pub dims: IndexMap<String, usize>,
    pub grading_valid: bool,
    pub dual_round_trip: bool,
    pub fixed_is_identity: bool,
    pub reductive: bool,
    /// Computed identity component equals the claimed embedding.
    #[serde(rename = "match")]
    pub matched: bool,
    pub signature: Option<StructureSignature>,
    pub predicted_signature: StructureSignature,
    pub signature_agrees: bool,
    pub symmetric: bool,
    pub torsion_nonzero: bool,
    pub curvature_nonzero: bool,
    pub second_torsion_zero: bool,
    pub support: Vec<String>,
    pub support_generates: bool,
    /// Set when the support generates a proper subgroup.
    pub degenerate: Option<String>,
    pub simple: bool,
    pub effective: bool,
    pub caveat: String,
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensors: Option<ConnectionData>,
    pub passed: bool,
}

const CAVEAT: &str = "distinctness from other rows is certified by isotropy signature only";

/// Run the full pipeline on one case. Failures are recorded, never raised.
pub fn run_case(spec: &CaseSpec, keep_tensors: bool) -> CaseReport {
    let mut r = CaseReport {
        id: spec.id(),
        family: spec.family,
        table: spec.family.table(),
        algebra: spec.algebra_name(),
        letter: spec.letter(),
        isotropy: spec.isotropy_name(),
        n: spec.n(),
        dim: 0,
        dims: IndexMap::new(),
        grading_valid: false,
        dual_round_trip: false,
        fixed_is_identity: false,
        reductive: false,
        matched: false,
        signature: None,
        predicted_signature: predicted_signature(&spec.isotropy_blocks()),
        signature_agrees: false,
        symmetric: false,
        torsion_nonzero: false,
        curvature_nonzero: false,
        second_torsion_zero: false,
        support: Vec::new(),
        support_generates: false,
        degenerate: None,
        simple: spec.is_simple(),
        effective: false,
        caveat: CAVEAT.into(),
        error: None,
        tensors: None,
        passed: false,
    };
    if let Err(e) = fill(spec, &mut r, keep_tensors) {
        r.error = Some(e.to_string());
    }
    r.passed = r.error.is_none()
        && r.grading_valid
        && r.dual_round_trip
        && r.fixed_is_identity
        && r.reductive
        && r.matched
        && r.signature_agrees
        && r.second_torsion_zero
        && r.symmetric != r.torsion_nonzero
        && (!r.simple || r.effective);
    r
}

fn fill(spec: &CaseSpec, r: &mut CaseReport, keep_tensors: bool) -> Result<(), Error> {
    let g = build_grading(spec)?;
    r.dim = g.carrier().space().dim();
    r.dims = g.dims_named();
    let check = check_grading(&g);
    r.grading_valid = check.passed();
    r.support = check.support.clone();
    r.support_generates = check.support_generates;
    if !check.support_generates {
        r.degenerate = Some(format!(
            "support {{{}}} generates a proper subgroup; this is a grading by a smaller group",
            check.support.join(",")
        ));
    }
    r.dual_round_trip = dual_eigenspaces(&g)? == g;
    r.fixed_is_identity = fixed_subalgebra(&g)? == *g.identity_component();
    let space = build_space(&g);
    let s = match space {
        Err(Error::NotReductive) => return Ok(()),
        other => other?,
    };
    r.reductive = true;
    r.effective = s.is_effective();
    let expected = expected_isotropy(spec)?;
    r.matched = expected == *g.identity_component();
    let ge = MatLie::new_unchecked(spec.n(), g.identity_component().clone())?;
    let sig = signature(&ge);
    r.signature_agrees = sig == r.predicted_signature;
    r.signature = Some(sig);
    let data = connection_data(&s);
    r.symmetric = data.symmetric;
    r.torsion_nonzero = !data.torsion.is_zero();
    r.curvature_nonzero = !data.curvature.is_zero();
    r.second_torsion_zero = data.second_torsion.is_zero();
    if keep_tensors {
        r.tensors = Some(data);
    }
    Ok(())
}

/// Run cases in parallel; output order follows `specs`.
pub fn run_all(specs: &[CaseSpec], keep_tensors: bool) -> Vec<CaseReport> {
    specs.par_iter().map(|s| run_case(s, keep_tensors)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDocument {
    pub version: String,
    pub cases: Vec<CaseReport>,
}

impl CensusDocument {
    pub fn new(cases: Vec<CaseReport>) -> Self {
        Self {
            version: SCHEMA_VERSION.into(),
            cases,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::BadCaseId(s.to_string())),
        }
    }
}

const TABLE_TITLES: [&str; 4] = [
    "Table 1: orthogonal and symplectic, elementary gradings",
    "Table 2: orthogonal and symplectic, fine factor",
    "Table 3: special linear, class I",
    "Table 4: special linear, class II",
];

fn tick(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

pub fn emit(reports: &[CaseReport], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&CensusDocument::new(reports.to_vec())).expect("serializable"),
        Format::Markdown => {
            let mut s = String::new();
            for (t, title) in TABLE_TITLES.iter().enumerate() {
                s.push_str(&format!("## {title}\n\n"));
                s.push_str("| g | g_e | case | dims (e,a,b,c) | symmetric | match | checks |\n");
                s.push_str("|---|---|---|---|---|---|---|\n");
                for r in reports.iter().filter(|r| r.table as usize == t + 1) {
                    let dims: Vec<String> = r.dims.values().map(usize::to_string).collect();
                    s.push_str(&format!(
                        "| {} | {} | `{}` | ({}) | {} | {} | {} |\n",
                        r.algebra,
                        r.isotropy,
                        r.id,
                        dims.join(","),
                        if r.symmetric { "yes" } else { "no" },
                        tick(r.matched),
                        tick(r.passed),
                    ));
                }
                s.push('\n');
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_eight() {
        let ids: Vec<Vec<usize>> = partitions(8, 2, 1, 1);
        assert_eq!(ids, vec![vec![7, 1], vec![6, 2], vec![5, 3], vec![4, 4]]);
        assert_eq!(partitions(8, 2, 2, 2), vec![vec![6, 2], vec![4, 4]]);
        assert_eq!(partitions(4, 2, 0, 1), vec![vec![4, 0], vec![3, 1], vec![2, 2]]);
    }

    #[test]
    fn enumeration_examples() {
        let fine: Vec<usize> = enumerate(Family::AClassIFine, 8).iter().map(|s| s.params[0]).collect();
        assert_eq!(fine, vec![1, 2, 3, 4]);
        let bcd = enumerate(Family::BcdFine, 8);
        assert!(bcd.contains(&CaseSpec::new(Family::BcdFine, PhiChoice::Psi1, vec![3])));
        assert!(bcd.contains(&CaseSpec::new(Family::BcdFine, PhiChoice::Psi4, vec![8])));
        assert!(!bcd.contains(&CaseSpec::new(Family::BcdFine, PhiChoice::Psi4, vec![3])));
        assert_eq!(bcd.len(), 16);
        assert_eq!(bcd.iter().map(CaseSpec::n).max(), Some(16));
    }

    #[test]
    fn ids_round_trip() {
        for s in enumerate_all(Selection::All, 6) {
            assert_eq!(CaseSpec::parse(&s.id()).unwrap(), s);
        }
        assert!(CaseSpec::parse("BCD_elem/Phi1bar/3,1").is_err());
        assert!(CaseSpec::parse("nonsense").is_err());
    }

    #[test]
    fn small_cases_pass() {
        for id in [
            "BCD_elem/Phi1/2,2",
            "BCD_fine/Psi1/2",
            "A_classII/Phi1/2,0",
            "A_classII/Phi1'/2",
            "A_classI_fine/pauli/2",
            "BCD_elem/Phi3bar'/1,1",
        ] {
            let r = run_case(&CaseSpec::parse(id).unwrap(), false);
            assert!(r.passed, "{id}: {r:?}");
        }
    }

    #[test]
    fn so4_reports() {
        let r = run_case(&CaseSpec::parse("BCD_elem/Phi1/2,2").unwrap(), false);
        assert!(r.matched && r.symmetric);
        let f = run_case(&CaseSpec::parse("BCD_fine/Psi1/2").unwrap(), false);
        assert!(f.matched && !f.symmetric && f.torsion_nonzero);
        let d = run_case(&CaseSpec::parse("A_classII/Phi1/2,0").unwrap(), false);
        assert!(d.degenerate.is_some());
    }

    #[test]
    fn empty_markdown_has_headers() {
        let md = emit(&[], Format::Markdown);
        assert_eq!(md.matches("| g | g_e |").count(), 4);
    }
}
