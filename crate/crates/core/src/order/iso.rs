use std::collections::BTreeSet;
use std::fmt;
use std::hash::Hash;

use super::{FinPoset, OrderError};

/// Largest size handled by [`canonical_form`]; the code packs into a `u64`.
pub const CANONICAL_MAX: usize = 8;

/// A finite injective map between element indices, sorted by domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PartialIso {
    pairs: Vec<(usize, usize)>,
}

impl PartialIso {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        PartialIso { pairs }
    }

    pub fn empty() -> Self {
        PartialIso::default()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&x, |p| p.0)
            .ok()
            .map(|i| self.pairs[i].1)
    }

    pub fn in_domain(&self, x: usize) -> bool {
        self.get(x).is_some()
    }

    pub fn in_range(&self, y: usize) -> bool {
        self.pairs.iter().any(|p| p.1 == y)
    }

    pub fn extended(&self, x: usize, y: usize) -> PartialIso {
        let mut pairs = self.pairs.clone();
        pairs.push((x, y));
        PartialIso::new(pairs)
    }

    /// True iff `other` agrees with this map on its whole domain.
    pub fn is_extended_by(&self, other: &PartialIso) -> bool {
        self.pairs.iter().all(|&(x, y)| other.get(x) == Some(y))
    }

    /// Injective, and preserves and reflects the order between `from` and `to`.
    pub fn is_valid<L: Clone + Eq + Hash>(&self, from: &FinPoset<L>, to: &FinPoset<L>) -> bool {
        let mut seen = BTreeSet::new();
        for &(x, y) in &self.pairs {
            if x >= from.len() || y >= to.len() || !seen.insert(y) {
                return false;
            }
        }
        for &(a, b) in &self.pairs {
            for &(c, d) in &self.pairs {
                if from.lt(a, c) != to.lt(b, d) {
                    return false;
                }
            }
        }
        true
    }

    pub fn display<L: Clone + Eq + Hash + fmt::Display>(&self, p: &FinPoset<L>) -> String {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|&(x, y)| format!("{}↦{}", p.label(x), p.label(y)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Every injection of `x` into `y` that preserves and reflects the order,
/// in lexicographic order of the image sequence.
pub fn embeddings<L: Clone + Eq + Hash>(x: &FinPoset<L>, y: &FinPoset<L>) -> Vec<PartialIso> {
    let mut out = Vec::new();
    search_embeddings(x, y, &mut |img| {
        out.push(PartialIso::new(img.iter().copied().enumerate().collect()));
        true
    });
    out
}

pub fn embeds<L: Clone + Eq + Hash>(x: &FinPoset<L>, y: &FinPoset<L>) -> bool {
    let mut found = false;
    search_embeddings(x, y, &mut |_| {
        found = true;
        false
    });
    found
}

pub fn is_isomorphic<L: Clone + Eq + Hash>(x: &FinPoset<L>, y: &FinPoset<L>) -> bool {
    x.len() == y.len() && x.pairs().len() == y.pairs().len() && embeds(x, y)
}

pub fn automorphisms<L: Clone + Eq + Hash>(p: &FinPoset<L>) -> Vec<PartialIso> {
    embeddings(p, p)
}

// Visitor returns false to stop the search.
fn search_embeddings<L: Clone + Eq + Hash>(
    x: &FinPoset<L>,
    y: &FinPoset<L>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    fn go<L: Clone + Eq + Hash>(
        x: &FinPoset<L>,
        y: &FinPoset<L>,
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let i = img.len();
        if i == x.len() {
            return visit(img);
        }
        for cand in 0..y.len() {
            if used[cand] {
                continue;
            }
            let fits = (0..i).all(|j| {
                x.lt(j, i) == y.lt(img[j], cand) && x.lt(i, j) == y.lt(cand, img[j])
            });
            if !fits {
                continue;
            }
            img.push(cand);
            used[cand] = true;
            let more = go(x, y, img, used, visit);
            used[cand] = false;
            img.pop();
            if !more {
                return false;
            }
        }
        true
    }
    if x.len() > y.len() {
        return;
    }
    let mut used = vec![false; y.len()];
    go(x, y, &mut Vec::with_capacity(x.len()), &mut used, visit);
}

/// All `y` such that `phi ∪ {x ↦ y}` is still a finite isomorphism of `p`.
pub fn one_point_extensions<L: Clone + Eq + Hash + fmt::Display>(
    p: &FinPoset<L>,
    phi: &PartialIso,
    x: usize,
) -> Result<Vec<usize>, OrderError> {
    if phi.in_domain(x) {
        return Err(OrderError::AlreadyInDomain(p.label(x).to_string()));
    }
    if !phi.is_valid(p, p) {
        return Err(OrderError::NotPartialIso(phi.display(p)));
    }
    Ok(extensions_unchecked(p, phi, x))
}

fn extensions_unchecked<L: Clone + Eq + Hash>(
    p: &FinPoset<L>,
    phi: &PartialIso,
    x: usize,
) -> Vec<usize> {
    (0..p.len())
        .filter(|&y| !phi.in_range(y))
        .filter(|&y| {
            phi.pairs()
                .iter()
                .all(|&(a, b)| p.lt(x, a) == p.lt(y, b) && p.lt(a, x) == p.lt(b, y))
        })
        .collect()
}

/// Every finite isomorphism of `p`, ordered by size, then domain, then image.
pub fn partial_isomorphisms<L: Clone + Eq + Hash>(p: &FinPoset<L>) -> Vec<PartialIso> {
    let n = p.len();
    let mut out = Vec::new();
    for size in 0..=n {
        for dom in combinations(n, size) {
            let sub = p.restrict_indices(&dom);
            for emb in embeddings(&sub, p) {
                let pairs = emb.pairs().iter().map(|&(i, y)| (dom[i], y)).collect();
                out.push(PartialIso::new(pairs));
            }
        }
    }
    out
}

/// `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Outcome of a homogeneity test, with the first failing finite isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homogeneity {
    pub holds: bool,
    pub witness: Option<PartialIso>,
    /// For the one-point test: the point that could not be added.
    pub stuck_at: Option<usize>,
}

impl Homogeneity {
    fn ok() -> Self {
        Homogeneity {
            holds: true,
            witness: None,
            stuck_at: None,
        }
    }
}

/// Every finite isomorphism extends to an automorphism.
pub fn is_ultrahomogeneous<L: Clone + Eq + Hash>(p: &FinPoset<L>) -> Homogeneity {
    let autos = automorphisms(p);
    for phi in partial_isomorphisms(p) {
        if !autos.iter().any(|a| phi.is_extended_by(a)) {
            return Homogeneity {
                holds: false,
                witness: Some(phi),
                stuck_at: None,
            };
        }
    }
    Homogeneity::ok()
}

/// The one-point criterion: every finite isomorphism extends to any new point.
pub fn has_extension_property<L: Clone + Eq + Hash>(p: &FinPoset<L>) -> Homogeneity {
    for phi in partial_isomorphisms(p) {
        for x in 0..p.len() {
            if phi.in_domain(x) {
                continue;
            }
            if extensions_unchecked(p, &phi, x).is_empty() {
                return Homogeneity {
                    holds: false,
                    witness: Some(phi),
                    stuck_at: Some(x),
                };
            }
        }
    }
    Homogeneity::ok()
}

/// Isomorphism-class key: the minimal adjacency string over all relabellings.
///
/// Bits are read shell by shell (all pairs whose larger index is `k` before
/// any pair with larger index `k + 1`), most significant first, so a partial
/// permutation already fixes a prefix and the search can prune on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: u8,
    pub code: u64,
}

impl CanonicalForm {
    fn bit_count(n: usize) -> usize {
        n * n.saturating_sub(1)
    }

    /// Rebuild a poset on labels `a, b, ...` from the code.
    pub fn to_poset(&self) -> FinPoset<String> {
        let n = self.n as usize;
        let total = Self::bit_count(n);
        let mut pairs = Vec::new();
        let mut pos = 0;
        for k in 1..n {
            for i in 0..k {
                for (a, b) in [(i, k), (k, i)] {
                    let bit = (self.code >> (total - 1 - pos)) & 1;
                    if bit == 1 {
                        pairs.push((a, b));
                    }
                    pos += 1;
                }
            }
        }
        let labels = (0..n).map(super::default_label).collect();
        FinPoset::from_index_pairs(labels, pairs).expect("canonical code encodes a strict order")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let total = Self::bit_count(self.n as usize);
        write!(f, "{}:", self.n)?;
        for pos in 0..total {
            let bit = (self.code >> (total - 1 - pos)) & 1;
            write!(f, "{bit}")?;
        }
        Ok(())
    }
}

pub fn canonical_form<L: Clone + Eq + Hash>(p: &FinPoset<L>) -> Result<CanonicalForm, OrderError> {
    let n = p.len();
    if n > CANONICAL_MAX {
        return Err(OrderError::TooLarge {
            max: CANONICAL_MAX,
            got: n,
        });
    }
    let mut best: Option<u64> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    canon_search(p, &mut perm, &mut used, 0, 0, &mut best);
    Ok(CanonicalForm {
        n: n as u8,
        code: best.unwrap_or(0),
    })
}

// `prefix` holds the bits of shells 1..perm.len(); `bits` is their count.
fn canon_search<L: Clone + Eq + Hash>(
    p: &FinPoset<L>,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    prefix: u64,
    bits: usize,
    best: &mut Option<u64>,
) {
    let n = p.len();
    let total = CanonicalForm::bit_count(n);
    if perm.len() == n {
        if best.is_none_or(|b| prefix < b) {
            *best = Some(prefix);
        }
        return;
    }
    let k = perm.len();
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let mut code = prefix;
        for &pi in perm.iter() {
            code = (code << 1) | p.lt(pi, cand) as u64;
            code = (code << 1) | p.lt(cand, pi) as u64;
        }
        let new_bits = bits + 2 * k;
        if let Some(b) = *best {
            let best_prefix = if total == 0 { 0 } else { b >> (total - new_bits) };
            if code > best_prefix {
                continue;
            }
        }
        perm.push(cand);
        used[cand] = true;
        canon_search(p, perm, used, code, new_bits, best);
        used[cand] = false;
        perm.pop();
    }
}

/// Canonical forms of all substructures with `1..=k` elements.
pub fn age<L: Clone + Eq + Hash>(
    p: &FinPoset<L>,
    k: usize,
) -> Result<BTreeSet<CanonicalForm>, OrderError> {
    let mut out = BTreeSet::new();
    for size in 1..=k.min(p.len()) {
        for subset in combinations(p.len(), size) {
            out.insert(canonical_form(&p.restrict_indices(&subset))?);
        }
    }
    Ok(out)
}

/// One representative per isomorphism type of `n`-element posets, sorted.
///
/// Built by adding a point above a down-closed set and below an up-closed
/// set of every smaller representative.
pub fn enumerate_posets(n: usize) -> Result<Vec<CanonicalForm>, OrderError> {
    if n > CANONICAL_MAX {
        return Err(OrderError::TooLarge {
            max: CANONICAL_MAX,
            got: n,
        });
    }
    let mut layer: BTreeSet<CanonicalForm> = BTreeSet::new();
    layer.insert(canonical_form(&FinPoset::antichain(0))?);
    for size in 1..=n {
        let mut next = BTreeSet::new();
        for form in &layer {
            let base = form.to_poset();
            for poset in one_point_supersets(&base) {
                next.insert(canonical_form(&poset)?);
            }
        }
        layer = next;
        debug_assert!(layer.iter().all(|f| f.n as usize == size));
    }
    Ok(layer.into_iter().collect())
}

fn one_point_supersets(base: &FinPoset<String>) -> Vec<FinPoset<String>> {
    let m = base.len();
    let labels: Vec<String> = (0..=m).map(super::default_label).collect();
    let mut out = Vec::new();
    for down in 0u32..(1 << m) {
        let is_down_closed = (0..m)
            .filter(|&i| down >> i & 1 == 1)
            .all(|i| (0..m).all(|j| !base.lt(j, i) || down >> j & 1 == 1));
        if !is_down_closed {
            continue;
        }
        for up in 0u32..(1 << m) {
            if up & down != 0 {
                continue;
            }
            let is_up_closed = (0..m)
                .filter(|&i| up >> i & 1 == 1)
                .all(|i| (0..m).all(|j| !base.lt(i, j) || up >> j & 1 == 1));
            if !is_up_closed {
                continue;
            }
            let separated = (0..m)
                .filter(|&d| down >> d & 1 == 1)
                .all(|d| (0..m).filter(|&u| up >> u & 1 == 1).all(|u| base.lt(d, u)));
            if !separated {
                continue;
            }
            let mut pairs = base.pairs();
            pairs.extend((0..m).filter(|&d| down >> d & 1 == 1).map(|d| (d, m)));
            pairs.extend((0..m).filter(|&u| up >> u & 1 == 1).map(|u| (m, u)));
            out.push(
                FinPoset::from_index_pairs(labels.clone(), pairs)
                    .expect("one-point extension is a strict order"),
            );
        }
    }
    out
}
