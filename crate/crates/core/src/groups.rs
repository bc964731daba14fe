//! Finite abelian groups as products of cyclic factors, their characters and
//! automorphisms.
//!
//! Elements are addressed by a mixed-radix index with the first factor least
//! significant. For the Klein group this gives `e=0, a=1, b=2, c=3`, with
//! `a = (1,0)`, `b = (0,1)`, `c = (1,1)`.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::{Error, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbGroup {
    orders: Vec<u64>,
}

/// An element given by its residues, one per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElt(pub Vec<u64>);

/// A character, stored by its values on the generators. Every value is a
/// power of `i`, so an exponent in `0..4` is kept alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    // value on generator k is i^(quarter_turns[k])
    quarter_turns: Vec<u32>,
}

/// An automorphism, stored by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAut {
    images: Vec<GroupElt>,
}

const KLEIN_NAMES: [&str; 4] = ["e", "a", "b", "c"];

impl AbGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self, Error> {
        if orders.contains(&0) {
            return Err(Error::InvalidSize("cyclic order must be positive".into()));
        }
        Ok(Self { orders })
    }

    pub fn klein() -> Self {
        Self { orders: vec![2, 2] }
    }

    pub fn cyclic(r: u64) -> Self {
        Self { orders: vec![r] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn is_klein(&self) -> bool {
        self.orders == [2, 2]
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &r| acc.lcm(&r))
    }

    pub fn identity(&self) -> GroupElt {
        GroupElt(vec![0; self.orders.len()])
    }

    pub fn element(&self, index: usize) -> GroupElt {
        let mut rest = index as u64;
        GroupElt(
            self.orders
                .iter()
                .map(|&r| {
                    let c = rest % r;
                    rest /= r;
                    c
                })
                .collect(),
        )
    }

    pub fn elements(&self) -> Vec<GroupElt> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn index(&self, x: &GroupElt) -> Result<usize, Error> {
        self.check(x)?;
        let mut idx = 0u64;
        for (c, r) in x.0.iter().zip(&self.orders).rev() {
            idx = idx * r + c;
        }
        Ok(idx as usize)
    }

    fn check(&self, x: &GroupElt) -> Result<(), Error> {
        if x.0.len() != self.orders.len() {
            return Err(Error::Arity {
                expected: self.orders.len(),
                found: x.0.len(),
            });
        }
        if x.0.iter().zip(&self.orders).any(|(c, r)| c >= r) {
            return Err(Error::UnknownElement(format!("{:?}", x.0)));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &GroupElt, y: &GroupElt) -> Result<GroupElt, Error> {
        self.check(x)?;
        self.check(y)?;
        Ok(GroupElt(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.orders)
                .map(|((a, b), r)| (a + b) % r)
                .collect(),
        ))
    }

    pub fn inverse(&self, x: &GroupElt) -> Result<GroupElt, Error> {
        self.check(x)?;
        Ok(GroupElt(
            x.0.iter()
                .zip(&self.orders)
                .map(|(a, r)| (r - a) % r)
                .collect(),
        ))
    }

    /// Product of elements by index; indices must be in range.
    pub fn mul_idx(&self, x: usize, y: usize) -> usize {
        let p = self
            .multiply(&self.element(x), &self.element(y))
            .expect("indices in range");
        self.index(&p).expect("product in range")
    }

    pub fn inv_idx(&self, x: usize) -> usize {
        let p = self.inverse(&self.element(x)).expect("index in range");
        self.index(&p).expect("inverse in range")
    }

    /// Display name: `e,a,b,c` for the Klein group, residues otherwise.
    pub fn name(&self, index: usize) -> String {
        if self.is_klein() {
            return KLEIN_NAMES[index].to_string();
        }
        let x = self.element(index);
        if x.0.iter().all(|&c| c == 0) {
            return "e".into();
        }
        let parts: Vec<String> = x.0.iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }

    pub fn parse_name(&self, name: &str) -> Result<usize, Error> {
        (0..self.order())
            .find(|&i| self.name(i) == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn characters(&self) -> Result<Vec<Character>, Error> {
        let exp = self.exponent();
        if 4 % exp != 0 {
            return Err(Error::UnsupportedExponent(exp));
        }
        // the character indexed by s sends generator k to xi_k^{s_k}
        Ok(self
            .elements()
            .into_iter()
            .map(|s| Character {
                quarter_turns: s
                    .0
                    .iter()
                    .zip(&self.orders)
                    .map(|(&sk, &r)| ((sk * (4 / r)) % 4) as u32)
                    .collect(),
            })
            .collect())
    }

    /// All automorphisms, by brute force over generator images.
    pub fn automorphisms(&self) -> Vec<GroupAut> {
        let elts = self.elements();
        let gens = self.orders.len();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens];
        loop {
            let images: Vec<GroupElt> = choice.iter().map(|&i| elts[i].clone()).collect();
            let candidate = GroupAut { images };
            if candidate.is_automorphism_of(self) {
                out.push(candidate);
            }
            let mut k = 0;
            loop {
                if k == gens {
                    return out;
                }
                choice[k] += 1;
                if choice[k] < elts.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    pub fn subgroup_generated(&self, elts: &BTreeSet<GroupElt>) -> Result<BTreeSet<GroupElt>, Error> {
        let mut out = BTreeSet::from([self.identity()]);
        loop {
            let mut grew = false;
            let current: Vec<GroupElt> = out.iter().cloned().collect();
            for x in &current {
                for g in elts {
                    let p = self.multiply(x, g)?;
                    grew |= out.insert(p);
                }
            }
            if !grew {
                return Ok(out);
            }
        }
    }

    /// Index form of [`AbGroup::subgroup_generated`].
    pub fn subgroup_generated_idx(&self, elts: &[usize]) -> Vec<usize> {
        let set: BTreeSet<GroupElt> = elts.iter().map(|&i| self.element(i)).collect();
        let sub = self.subgroup_generated(&set).expect("elements of this group");
        let mut idx: Vec<usize> = sub.iter().map(|x| self.index(x).expect("in group")).collect();
        idx.sort_unstable();
        idx
    }
}

impl Character {
    pub fn values_on_generators(&self) -> Vec<Scalar> {
        self.quarter_turns
            .iter()
            .map(|&q| Scalar::i_pow(q as i64))
            .collect()
    }

    /// The value at an element, as a power of `i`.
    pub fn quarter_turns_at(&self, x: &GroupElt) -> u32 {
        self.quarter_turns
            .iter()
            .zip(&x.0)
            .map(|(&q, &c)| (q as u64 * c) % 4)
            .sum::<u64>() as u32
            % 4
    }

    pub fn value(&self, x: &GroupElt) -> Scalar {
        Scalar::i_pow(self.quarter_turns_at(x) as i64)
    }

    pub fn is_trivial(&self) -> bool {
        self.quarter_turns.iter().all(|&q| q == 0)
    }
}

impl GroupAut {
    pub fn identity(g: &AbGroup) -> Self {
        let images = (0..g.orders.len())
            .map(|k| {
                let mut c = vec![0; g.orders.len()];
                c[k] = 1 % g.orders[k];
                GroupElt(c)
            })
            .collect();
        Self { images }
    }

    /// Build from the images of the generators; the result must be bijective
    /// and respect the relations.
    pub fn from_images(g: &AbGroup, images: Vec<GroupElt>) -> Result<Self, Error> {
        let w = Self { images };
        if !w.is_automorphism_of(g) {
            return Err(Error::InvalidSize("generator images do not define an automorphism".into()));
        }
        Ok(w)
    }

    /// Build from a permutation of element indices, e.g. `[0, 1, 3, 2]` for
    /// the swap of `b` and `c` in the Klein group.
    pub fn from_permutation(g: &AbGroup, perm: &[usize]) -> Result<Self, Error> {
        if perm.len() != g.order() {
            return Err(Error::DimensionMismatch {
                expected: g.order(),
                found: perm.len(),
            });
        }
        let images: Vec<GroupElt> = (0..g.orders.len())
            .map(|k| {
                let mut c = vec![0; g.orders.len()];
                c[k] = 1 % g.orders[k];
                g.element(perm[g.index(&GroupElt(c)).expect("generator")])
            })
            .collect();
        let w = Self::from_images(g, images)?;
        if (0..g.order()).any(|i| w.apply_idx(g, i) != perm[i]) {
            return Err(Error::InvalidSize("permutation is not multiplicative".into()));
        }
        Ok(w)
    }

    fn is_automorphism_of(&self, g: &AbGroup) -> bool {
        if self.images.len() != g.orders.len() || self.images.iter().any(|x| g.check(x).is_err()) {
            return false;
        }
        // relations: r_k * image_k = 0
        for (img, &r) in self.images.iter().zip(&g.orders) {
            if img.0.iter().zip(&g.orders).any(|(&c, &s)| (c * r) % s != 0) {
                return false;
            }
        }
        let mut seen = BTreeSet::new();
        g.elements().iter().all(|x| seen.insert(self.apply(g, x)))
    }

    pub fn images(&self) -> &[GroupElt] {
        &self.images
    }

    pub fn apply(&self, g: &AbGroup, x: &GroupElt) -> GroupElt {
        let mut acc = g.identity();
        for (img, &c) in self.images.iter().zip(&x.0) {
            for _ in 0..c {
                acc = g.multiply(&acc, img).expect("image in group");
            }
        }
        acc
    }

    pub fn apply_idx(&self, g: &AbGroup, x: usize) -> usize {
        g.index(&self.apply(g, &g.element(x))).expect("image in group")
    }

    /// `self ∘ other`.
    pub fn compose(&self, g: &AbGroup, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|x| self.apply(g, x)).collect(),
        }
    }

    pub fn inverse(&self, g: &AbGroup) -> Self {
        let order = g.order();
        let mut perm = vec![0; order];
        for i in 0..order {
            perm[self.apply_idx(g, i)] = i;
        }
        Self::from_permutation(g, &perm).expect("inverse of an automorphism")
    }

    pub fn is_identity(&self, g: &AbGroup) -> bool {
        (0..g.order()).all(|i| self.apply_idx(g, i) == i)
    }
}
