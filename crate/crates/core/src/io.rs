//! JSON forms of gradings and sparse tensors. Scalars are strings in the
//! canonical `a/b+c/di` form, matrices nested arrays of rows.

use indexmap::IndexMap;
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::gradings::{Carrier, Grading};
use crate::groups::AbGroup;
use crate::lie::{LieAlgebra, MatLie, ScLie};
use crate::{Error, Mat, Scalar, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CarrierJson {
    /// The whole matrix algebra `M_n`.
    Matrix { n: usize },
    /// A Lie subalgebra of `gl(n)` given by a basis.
    Lie { n: usize, basis: Vec<Vec<Vec<Scalar>>> },
    /// Structure constants, 1-based `[i, j, k, "c"]` entries.
    Structure {
        dim: usize,
        brackets: Vec<(usize, usize, usize, Scalar)>,
    },
}

/// One basis element of a component: a matrix for matrix carriers, a
/// coordinate vector otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Matrix(Vec<Vec<Scalar>>),
    Vector(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingJson {
    /// Orders of the cyclic factors of the grading group.
    pub group: Vec<u64>,
    pub carrier: CarrierJson,
    /// Element name to component basis, in group order.
    pub components: IndexMap<String, Vec<ElementJson>>,
}

fn matrix_rows(n: usize, v: &[Scalar]) -> Vec<Vec<Scalar>> {
    v.chunks(n).map(<[Scalar]>::to_vec).collect()
}

fn element_json(n: Option<usize>, v: &[Scalar]) -> ElementJson {
    match n {
        Some(n) => ElementJson::Matrix(matrix_rows(n, v)),
        None => ElementJson::Vector(v.to_vec()),
    }
}

fn element_vector(n: Option<usize>, e: &ElementJson) -> Result<Vector, Error> {
    match (n, e) {
        (Some(n), ElementJson::Matrix(rows)) => {
            let m = Mat::from_rows(rows.clone())?;
            if m.rows() != n || m.cols() != n {
                return Err(Error::ShapeMismatch {
                    left: (n, n),
                    right: (m.rows(), m.cols()),
                });
            }
            Ok(m.into_flat())
        }
        (None, ElementJson::Vector(v)) => Ok(v.clone()),
        _ => Err(Error::Json("component element does not match the carrier kind".into())),
    }
}

pub fn grading_to_json(g: &Grading) -> GradingJson {
    let n = g.carrier().matrix_size();
    let carrier = match g.carrier() {
        Carrier::Assoc { n, .. } => CarrierJson::Matrix { n: *n },
        Carrier::Lie(l) => CarrierJson::Lie {
            n: l.n(),
            basis: l.basis().iter().map(|v| matrix_rows(l.n(), v)).collect(),
        },
        Carrier::Structure(s) => {
            let raw = s.to_json();
            CarrierJson::Structure {
                dim: raw.dim,
                brackets: raw.brackets,
            }
        }
    };
    let components = g
        .components()
        .iter()
        .enumerate()
        .map(|(p, c)| {
            (
                g.group().name(p),
                c.basis().iter().map(|v| element_json(n, v)).collect(),
            )
        })
        .collect();
    GradingJson {
        group: g.group().orders().to_vec(),
        carrier,
        components,
    }
}

pub fn grading_from_json(doc: &GradingJson) -> Result<Grading, Error> {
    let group = AbGroup::new(doc.group.clone())?;
    let carrier = match &doc.carrier {
        CarrierJson::Matrix { n } => Carrier::matrix_algebra(*n),
        CarrierJson::Lie { n, basis } => {
            let vs = basis
                .iter()
                .map(|rows| element_vector(Some(*n), &ElementJson::Matrix(rows.clone())))
                .collect::<Result<Vec<_>, _>>()?;
            Carrier::Lie(MatLie::new(*n, Subspace::span(n * n, vs)?)?)
        }
        CarrierJson::Structure { dim, brackets } => {
            let entries = brackets
                .iter()
                .map(|(i, j, k, c)| {
                    if *i == 0 || *j == 0 || *k == 0 {
                        return Err(Error::InvalidSize("basis indices are 1-based".into()));
                    }
                    Ok((i - 1, j - 1, k - 1, c.clone()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Carrier::Structure(ScLie::from_entries(*dim, &entries)?)
        }
    };
    let n = carrier.matrix_size();
    let ambient = carrier.ambient_dim();
    let mut comps = vec![Subspace::zero(ambient); group.order()];
    for (name, elems) in &doc.components {
        let p = group.parse_name(name)?;
        let vs = elems
            .iter()
            .map(|e| element_vector(n, e))
            .collect::<Result<Vec<_>, _>>()?;
        comps[p] = Subspace::span(ambient, vs)?;
    }
    Grading::new(group, carrier, comps)
}

pub fn grading_to_string(g: &Grading) -> String {
    serde_json::to_string_pretty(&grading_to_json(g)).expect("serializable")
}

pub fn grading_from_str(text: &str) -> Result<Grading, Error> {
    let doc: GradingJson = serde_json::from_str(text)?;
    grading_from_json(&doc)
}

/// A nonzero entry of a multi-index array, serialized as `[i, j, ..., "v"]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseEntry {
    pub index: Vec<usize>,
    pub value: Scalar,
}

impl Serialize for SparseEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.index.len() + 1))?;
        for i in &self.index {
            seq.serialize_element(i)?;
        }
        seq.serialize_element(&self.value)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for SparseEntry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(deserializer)?;
        let (last, head) = raw
            .split_last()
            .ok_or_else(|| D::Error::custom("empty sparse entry"))?;
        let value: Scalar = last
            .as_str()
            .ok_or_else(|| D::Error::custom("entry value must be a string"))?
            .parse()
            .map_err(D::Error::custom)?;
        let index = head
            .iter()
            .map(|v| {
                v.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| D::Error::custom("entry index must be a non-negative integer"))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { index, value })
    }
}

/// A sparse multi-index array of exact scalars; absent entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseTensor {
    pub shape: Vec<usize>,
    pub entries: Vec<SparseEntry>,
}

impl SparseTensor {
    pub fn new(shape: Vec<usize>) -> Self {
        Self {
            shape,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, index: Vec<usize>, value: Scalar) {
        use num_traits::Zero;
        if !value.is_zero() {
            self.entries.push(SparseEntry { index, value });
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradings::{class2_sl, n7_3_grading, pauli_grading};
    use crate::lie::Involution;

    #[test]
    fn grading_round_trips() {
        let inv = Involution::new("I", Mat::identity(3)).unwrap();
        for g in [
            pauli_grading(),
            class2_sl(&[0, 0, 1], &inv).unwrap(),
            n7_3_grading(ScLie::n7_3()).unwrap(),
        ] {
            let text = grading_to_string(&g);
            let back = grading_from_str(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(grading_to_string(&back), text);
        }
    }

    #[test]
    fn sparse_entry_format() {
        let e = SparseEntry {
            index: vec![0, 2, 1],
            value: Scalar::from_parts(-1, 2, 1, 1),
        };
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"[0,2,1,"-1/2+1i"]"#);
        assert_eq!(serde_json::from_str::<SparseEntry>(&s).unwrap(), e);
    }

    #[test]
    fn rejects_mismatched_elements() {
        let mut doc = grading_to_json(&pauli_grading());
        doc.components[0] = vec![ElementJson::Vector(vec![Scalar::from(1)])];
        assert!(grading_from_json(&doc).is_err());
    }
}
