use std::collections::BTreeSet;
use std::fmt::{self, Display};
use std::hash::Hash;

use super::iso::combinations;
use super::{FinPoset, OrderError};

/// A one-point extension type `⟨L, G, U⟩`: points required below, above and
/// incomparable to the new point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Triple<T> {
    pub l: Vec<T>,
    pub g: Vec<T>,
    pub u: Vec<T>,
}

impl<T: Ord + Clone> Triple<T> {
    pub fn new(mut l: Vec<T>, mut g: Vec<T>, mut u: Vec<T>) -> Self {
        l.sort();
        l.dedup();
        g.sort();
        g.dedup();
        u.sort();
        u.dedup();
        Triple { l, g, u }
    }

    pub fn empty() -> Self {
        Triple {
            l: Vec::new(),
            g: Vec::new(),
            u: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.l.len() + self.g.len() + self.u.len()
    }

    pub fn points(&self) -> Vec<T> {
        let mut all: Vec<T> = self
            .l
            .iter()
            .chain(&self.g)
            .chain(&self.u)
            .cloned()
            .collect();
        all.sort();
        all
    }

    /// The maximum of `L ∪ G ∪ U` in the natural order of `T`.
    pub fn m(&self) -> Option<T> {
        self.points().into_iter().max()
    }

    pub fn is_disjoint(&self) -> bool {
        let all = self.points();
        all.windows(2).all(|w| w[0] != w[1])
    }

    pub fn map<S: Ord + Clone>(&self, f: impl Fn(&T) -> S) -> Triple<S> {
        Triple::new(
            self.l.iter().map(&f).collect(),
            self.g.iter().map(&f).collect(),
            self.u.iter().map(&f).collect(),
        )
    }
}

impl Triple<usize> {
    /// `(C1)` `L < G`, `(C2)` no `u < l`, `(C3)` no `g < u`, plus disjointness.
    pub fn check<L: Clone + Eq + Hash>(&self, p: &FinPoset<L>) -> Result<(), OrderError> {
        if !self.is_disjoint() {
            return Err(OrderError::TripleNotDisjoint);
        }
        for &l in &self.l {
            for &g in &self.g {
                if !p.lt(l, g) {
                    return Err(OrderError::TripleNotConsistent(format!(
                        "C1 fails at ({l}, {g})"
                    )));
                }
            }
            for &u in &self.u {
                if p.lt(u, l) {
                    return Err(OrderError::TripleNotConsistent(format!(
                        "C2 fails at ({u}, {l})"
                    )));
                }
            }
        }
        for &g in &self.g {
            for &u in &self.u {
                if p.lt(g, u) {
                    return Err(OrderError::TripleNotConsistent(format!(
                        "C3 fails at ({g}, {u})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_consistent<L: Clone + Eq + Hash>(&self, p: &FinPoset<L>) -> bool {
        self.check(p).is_ok()
    }

    /// `(S1)`–`(S3)` for a single point outside the triple.
    pub fn is_realized_by<L: Clone + Eq + Hash>(&self, p: &FinPoset<L>, x: usize) -> bool {
        !self.l.contains(&x)
            && !self.g.contains(&x)
            && !self.u.contains(&x)
            && self.l.iter().all(|&l| p.lt(l, x))
            && self.g.iter().all(|&g| p.lt(x, g))
            && self.u.iter().all(|&u| !p.comparable(x, u))
    }

    pub fn display<L: Clone + Eq + Hash + Display>(&self, p: &FinPoset<L>) -> String {
        let names = |v: &[usize]| {
            v.iter()
                .map(|&i| p.label(i).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "⟨{{{}}},{{{}}},{{{}}}⟩",
            names(&self.l),
            names(&self.g),
            names(&self.u)
        )
    }
}

impl<T: Display> Display for Triple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[T]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "⟨{{{}}},{{{}}},{{{}}}⟩",
            join(&self.l),
            join(&self.g),
            join(&self.u)
        )
    }
}

/// Every consistent triple over `points` with at most `k` points in total.
///
/// Ordered by size, then by the sorted point set, then by role assignment
/// with `L < G < U` read left to right.
pub fn triples_over<L: Clone + Eq + Hash>(
    p: &FinPoset<L>,
    points: &[usize],
    k: usize,
) -> Vec<Triple<usize>> {
    let mut pts: Vec<usize> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let mut out = Vec::new();
    for size in 0..=k.min(pts.len()) {
        for combo in combinations(pts.len(), size) {
            let chosen: Vec<usize> = combo.iter().map(|&i| pts[i]).collect();
            for roles in 0..3usize.pow(size as u32) {
                let mut t = Triple::empty();
                let mut code = roles;
                let mut digits = vec![0; size];
                for d in digits.iter_mut().rev() {
                    *d = code % 3;
                    code /= 3;
                }
                for (x, role) in chosen.iter().zip(digits) {
                    match role {
                        0 => t.l.push(*x),
                        1 => t.g.push(*x),
                        _ => t.u.push(*x),
                    }
                }
                if t.is_consistent(p) {
                    out.push(t);
                }
            }
        }
    }
    out
}

pub fn enumerate_triples<L: Clone + Eq + Hash>(p: &FinPoset<L>, k: usize) -> Vec<Triple<usize>> {
    let all: Vec<usize> = (0..p.len()).collect();
    triples_over(p, &all, k)
}

/// The set `P_⟨L,G,U⟩`. Ill-formed triples are rejected, not filtered.
pub fn realizers<L: Clone + Eq + Hash>(
    p: &FinPoset<L>,
    t: &Triple<usize>,
) -> Result<BTreeSet<usize>, OrderError> {
    if t.points().iter().any(|&x| x >= p.len()) {
        return Err(OrderError::TripleNotConsistent("index out of range".into()));
    }
    t.check(p)?;
    Ok((0..p.len()).filter(|&x| t.is_realized_by(p, x)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomnessReport {
    pub holds: bool,
    pub checked: usize,
    pub first_failure: Option<Triple<usize>>,
}

/// Every triple of size at most `k` has a realizer.
pub fn is_random_up_to<L: Clone + Eq + Hash>(p: &FinPoset<L>, k: usize) -> RandomnessReport {
    let all: Vec<usize> = (0..p.len()).collect();
    is_random_over(p, &all, k)
}

/// Triples are drawn from `core`; realizers may be any point of `p`.
pub fn is_random_over<L: Clone + Eq + Hash>(
    p: &FinPoset<L>,
    core: &[usize],
    k: usize,
) -> RandomnessReport {
    let triples = triples_over(p, core, k);
    let mut checked = 0;
    for t in triples {
        checked += 1;
        if !(0..p.len()).any(|x| t.is_realized_by(p, x)) {
            return RandomnessReport {
                holds: false,
                checked,
                first_failure: Some(t),
            };
        }
    }
    RandomnessReport {
        holds: true,
        checked,
        first_failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Role assignment by brute force over every disjoint triple, no pruning.
    fn brute_triples(p: &FinPoset, k: usize) -> BTreeSet<Triple<usize>> {
        let n = p.len();
        let mut out = BTreeSet::new();
        for code in 0..4usize.pow(n as u32) {
            let mut t = Triple::empty();
            let mut c = code;
            for x in 0..n {
                match c % 4 {
                    1 => t.l.push(x),
                    2 => t.g.push(x),
                    3 => t.u.push(x),
                    _ => {}
                }
                c /= 4;
            }
            if t.size() > k {
                continue;
            }
            let c1 = t.l.iter().all(|&l| t.g.iter().all(|&g| p.lt(l, g)));
            let c2 = t.u.iter().all(|&u| t.l.iter().all(|&l| !p.lt(u, l)));
            let c3 = t.u.iter().all(|&u| t.g.iter().all(|&g| !p.lt(g, u)));
            if c1 && c2 && c3 {
                out.insert(t);
            }
        }
        out
    }

    #[test]
    fn triples_match_brute_force() {
        for p in [FinPoset::chain(3), FinPoset::antichain(3), FinPoset::chain(2)] {
            for k in 0..=3 {
                let got: BTreeSet<_> = enumerate_triples(&p, k).into_iter().collect();
                assert_eq!(got, brute_triples(&p, k));
            }
        }
    }

    #[test]
    fn chain_triples_respect_c1() {
        let p = FinPoset::chain(2);
        let ts = enumerate_triples(&p, 2);
        assert_eq!(ts[0], Triple::empty());
        assert!(ts.contains(&Triple::new(vec![0], vec![1], vec![])));
        assert!(!ts.contains(&Triple::new(vec![1], vec![0], vec![])));
        let anti = FinPoset::antichain(2);
        assert!(enumerate_triples(&anti, 2).contains(&Triple::new(vec![0], vec![], vec![1])));
    }

    #[test]
    fn realizer_examples() {
        let c3 = FinPoset::chain(3);
        assert_eq!(
            realizers(&c3, &Triple::empty()).unwrap(),
            BTreeSet::from([0, 1, 2])
        );
        assert_eq!(
            realizers(&c3, &Triple::new(vec![0], vec![2], vec![])).unwrap(),
            BTreeSet::from([1])
        );
        let c2 = FinPoset::chain(2);
        assert!(realizers(&c2, &Triple::new(vec![0], vec![1], vec![]))
            .unwrap()
            .is_empty());
        assert!(realizers(&c2, &Triple::new(vec![1], vec![0], vec![])).is_err());
    }

    #[test]
    fn finite_posets_are_not_random() {
        let point = FinPoset::antichain(1);
        let r = is_random_up_to(&point, 1);
        assert!(!r.holds);
        assert_eq!(r.first_failure, Some(Triple::new(vec![0], vec![], vec![])));
        for p in [FinPoset::chain(4), FinPoset::antichain(4)] {
            assert!(!is_random_up_to(&p, 2).holds);
        }
    }

    #[test]
    fn m_is_the_largest_point() {
        let t = Triple::new(vec![3, 1], vec![7], vec![2]);
        assert_eq!(t.m(), Some(7));
        assert_eq!(Triple::<i32>::empty().m(), None);
    }
}
