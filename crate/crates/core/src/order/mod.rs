//! Finite strict partial orders.
//!
//! [`FinPoset`] is the brute-force substrate: every infinite construction in
//! this crate is checked by restricting it to finitely many points and handing
//! the result to the routines here.

mod export;
mod iso;
mod triple;

use std::collections::HashMap;
use std::fmt::{self, Display};
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use export::PosetJson;
pub use iso::{
    age, automorphisms, canonical_form, combinations, embeddings, embeds, enumerate_posets,
    has_extension_property, is_isomorphic, is_ultrahomogeneous, one_point_extensions,
    partial_isomorphisms, CanonicalForm, Homogeneity, PartialIso,
};
pub use triple::{
    enumerate_triples, is_random_over, is_random_up_to, realizers, triples_over, RandomnessReport,
    Triple,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("relation is not irreflexive at {0}")]
    Reflexive(String),
    #[error("relation is not transitive: {0} < {1} < {2}")]
    NotTransitive(String, String, String),
    #[error("relation is not asymmetric at ({0}, {1})")]
    NotAsymmetric(String, String),
    #[error("relation has a cycle through {0}")]
    Cycle(String),
    #[error("{0} is already in the domain of the partial isomorphism")]
    AlreadyInDomain(String),
    #[error("map is not a finite isomorphism: {0}")]
    NotPartialIso(String),
    #[error("triple is not in C(P): {0}")]
    TripleNotConsistent(String),
    #[error("triple components are not pairwise disjoint")]
    TripleNotDisjoint,
    #[error("canonical forms are only computed up to {max} elements (got {got})")]
    TooLarge { max: usize, got: usize },
    #[error("malformed poset JSON: {0}")]
    Json(String),
}

/// Outcome of comparing two points of a partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderRel {
    Below,
    Above,
    Incomparable,
    Equal,
}

impl OrderRel {
    pub fn flip(self) -> OrderRel {
        match self {
            OrderRel::Below => OrderRel::Above,
            OrderRel::Above => OrderRel::Below,
            other => other,
        }
    }
}

impl Display for OrderRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OrderRel::Below => "below",
            OrderRel::Above => "above",
            OrderRel::Incomparable => "incomparable",
            OrderRel::Equal => "equal",
        };
        f.write_str(s)
    }
}

/// A finite strict partial order over labels.
///
/// Points are addressed by index (`0..len()`) in the order the labels were
/// given; labels are kept for display, JSON and restriction by name.
#[derive(Clone)]
pub struct FinPoset<L = String> {
    labels: Vec<L>,
    index: HashMap<L, usize>,
    // succ[i] contains j iff i < j
    succ: Vec<FixedBitSet>,
}

impl<L: Clone + Eq + Hash + Display> FinPoset<L> {
    /// Build from an explicit relation, which must already be a strict order.
    pub fn new<I>(labels: Vec<L>, lt: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = (L, L)>,
    {
        let mut poset = Self::unchecked(labels)?;
        for (a, b) in lt {
            let i = poset.require(&a)?;
            let j = poset.require(&b)?;
            poset.succ[i].insert(j);
        }
        poset.check_invariants()?;
        Ok(poset)
    }

    /// Build from generating pairs, closing transitively. Cycles are rejected.
    pub fn from_closure<I>(labels: Vec<L>, pairs: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = (L, L)>,
    {
        let mut poset = Self::unchecked(labels)?;
        for (a, b) in pairs {
            let i = poset.require(&a)?;
            let j = poset.require(&b)?;
            poset.succ[i].insert(j);
        }
        poset.close_transitively();
        for i in 0..poset.len() {
            if poset.succ[i].contains(i) {
                return Err(OrderError::Cycle(poset.labels[i].to_string()));
            }
        }
        Ok(poset)
    }

    /// Build from index pairs. Used by constructions that already guarantee
    /// the order axioms; still validated.
    pub fn from_index_pairs(
        labels: Vec<L>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, OrderError> {
        let mut poset = Self::unchecked(labels)?;
        let n = poset.len();
        for (i, j) in pairs {
            assert!(i < n && j < n, "index out of range");
            poset.succ[i].insert(j);
        }
        poset.check_invariants()?;
        Ok(poset)
    }

    fn unchecked(labels: Vec<L>) -> Result<Self, OrderError> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(OrderError::DuplicateLabel(l.to_string()));
            }
        }
        Ok(FinPoset {
            labels,
            index,
            succ: vec![FixedBitSet::with_capacity(n); n],
        })
    }

    fn require(&self, label: &L) -> Result<usize, OrderError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| OrderError::UnknownLabel(label.to_string()))
    }

    fn close_transitively(&mut self) {
        let n = self.len();
        // Warshall over bit rows
        for k in 0..n {
            let row_k = self.succ[k].clone();
            for i in 0..n {
                if self.succ[i].contains(k) {
                    self.succ[i].union_with(&row_k);
                }
            }
        }
    }

    /// Irreflexivity, asymmetry and transitivity, each checked on its own.
    pub fn check_invariants(&self) -> Result<(), OrderError> {
        let n = self.len();
        for i in 0..n {
            if self.succ[i].contains(i) {
                return Err(OrderError::Reflexive(self.labels[i].to_string()));
            }
        }
        for i in 0..n {
            for j in self.succ[i].ones() {
                if self.succ[j].contains(i) {
                    return Err(OrderError::NotAsymmetric(
                        self.labels[i].to_string(),
                        self.labels[j].to_string(),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in self.succ[i].ones() {
                if !self.succ[j].is_subset(&self.succ[i]) {
                    let k = self.succ[j].difference(&self.succ[i]).next().unwrap();
                    return Err(OrderError::NotTransitive(
                        self.labels[i].to_string(),
                        self.labels[j].to_string(),
                        self.labels[k].to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Induced suborder on `subset`, keeping this poset's element order.
    pub fn restrict(&self, subset: &[L]) -> Result<FinPoset<L>, OrderError> {
        let mut keep = Vec::with_capacity(subset.len());
        for l in subset {
            keep.push(self.require(l)?);
        }
        keep.sort_unstable();
        keep.dedup();
        Ok(self.restrict_indices(&keep))
    }
}

impl<L: Clone + Eq + Hash> FinPoset<L> {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.succ[i].contains(j)
    }

    pub fn relation(&self, i: usize, j: usize) -> OrderRel {
        if i == j {
            OrderRel::Equal
        } else if self.lt(i, j) {
            OrderRel::Below
        } else if self.lt(j, i) {
            OrderRel::Above
        } else {
            OrderRel::Incomparable
        }
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j) || self.lt(j, i)
    }

    pub fn successors(&self, i: usize) -> &FixedBitSet {
        &self.succ[i]
    }

    /// All pairs `(i, j)` with `i < j` in the order, lexicographically.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.succ[i].ones() {
                out.push((i, j));
            }
        }
        out
    }

    /// Induced suborder on sorted, distinct indices.
    pub fn restrict_indices(&self, keep: &[usize]) -> FinPoset<L> {
        let labels: Vec<L> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let n = keep.len();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let mut succ = vec![FixedBitSet::with_capacity(n); n];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.lt(i, j) {
                    succ[a].insert(b);
                }
            }
        }
        FinPoset {
            labels,
            index,
            succ,
        }
    }

    /// Covering pairs (transitive reduction).
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.succ[i].ones() {
                let covered = self.succ[i]
                    .ones()
                    .any(|k| k != j && self.succ[k].contains(j));
                if !covered {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Relabel through `f`, keeping the order.
    pub fn map_labels<M, F>(&self, f: F) -> FinPoset<M>
    where
        M: Clone + Eq + Hash,
        F: Fn(&L) -> M,
    {
        let labels: Vec<M> = self.labels.iter().map(f).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        FinPoset {
            labels,
            index,
            succ: self.succ.clone(),
        }
    }
}

impl FinPoset<String> {
    fn named(n: usize) -> Vec<String> {
        (0..n).map(default_label).collect()
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_index_pairs(Self::named(n), std::iter::empty()).expect("antichain")
    }

    pub fn chain(n: usize) -> Self {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Self::from_index_pairs(Self::named(n), pairs).expect("chain")
    }

    /// Disjoint union, relabelled `0..`.
    pub fn disjoint_union(a: &FinPoset<String>, b: &FinPoset<String>) -> Self {
        let n = a.len();
        let pairs = a
            .pairs()
            .into_iter()
            .chain(b.pairs().into_iter().map(|(i, j)| (i + n, j + n)));
        Self::from_index_pairs(Self::named(n + b.len()), pairs).expect("disjoint union")
    }
}

/// `a, b, ..., z, a1, b1, ...`
pub fn default_label(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", i / 26)
    }
}

impl<L: Clone + Eq + Hash + Display> fmt::Debug for FinPoset<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(i, j)| format!("{}<{}", self.labels[i], self.labels[j]))
            .collect();
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "FinPoset{{[{}]; {}}}", labels.join(","), pairs.join(","))
    }
}

impl<L: Clone + Eq + Hash> PartialEq for FinPoset<L> {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.succ == other.succ
    }
}

impl<L: Clone + Eq + Hash> Eq for FinPoset<L> {}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &str) -> String {
        v.to_string()
    }

    #[test]
    fn restrict_chain_keeps_induced_relation() {
        let p = FinPoset::chain(3);
        let r = p.restrict(&[s("a"), s("c")]).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.lt(0, 1));
        assert_eq!(p.restrict(p.labels()).unwrap(), p);
        let a = FinPoset::antichain(2).restrict(&[s("a")]).unwrap();
        assert_eq!(a.len(), 1);
        assert!(a.pairs().is_empty());
    }

    #[test]
    fn restrict_rejects_unknown_label() {
        let p = FinPoset::chain(2);
        assert_eq!(
            p.restrict(&[s("z")]),
            Err(OrderError::UnknownLabel(s("z")))
        );
    }

    #[test]
    fn constructor_checks_each_axiom() {
        let labels = vec![s("a"), s("b"), s("c")];
        assert!(matches!(
            FinPoset::new(labels.clone(), vec![(s("a"), s("a"))]),
            Err(OrderError::Reflexive(_))
        ));
        assert!(matches!(
            FinPoset::new(labels.clone(), vec![(s("a"), s("b")), (s("b"), s("a"))]),
            Err(OrderError::NotAsymmetric(_, _))
        ));
        assert!(matches!(
            FinPoset::new(labels.clone(), vec![(s("a"), s("b")), (s("b"), s("c"))]),
            Err(OrderError::NotTransitive(_, _, _))
        ));
        assert!(matches!(
            FinPoset::from_closure(labels.clone(), vec![(s("a"), s("b")), (s("b"), s("a"))]),
            Err(OrderError::Cycle(_))
        ));
        let closed =
            FinPoset::from_closure(labels, vec![(s("a"), s("b")), (s("b"), s("c"))]).unwrap();
        assert!(closed.lt(0, 2));
    }

    #[test]
    fn hasse_edges_drop_implied_pairs() {
        let p = FinPoset::chain(4);
        assert_eq!(p.hasse_edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(matches!(
            FinPoset::new(vec![s("a"), s("a")], Vec::new()),
            Err(OrderError::DuplicateLabel(_))
        ));
    }
}
