//! Seeded generators for expressions, product sets, posets and triples.
//!
//! Every generator draws from a ChaCha stream, so a seed fixes the output on
//! every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalogue::{Fiber, ProductSetExpr};
use crate::order::{default_label, FinPoset, Triple};
use crate::qset::{Cut, QSetExpr, QSpace, Surd};
use crate::rational::{rat, Rational};

pub const MAX_DEPTH: usize = 6;

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    space: QSpace,
}

impl Sampler {
    pub fn new(seed: u64, space: QSpace) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            space,
        }
    }

    pub fn space(&self) -> &QSpace {
        &self.space
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `a/b` with `|a| ≤ 24`, `1 ≤ b ≤ 6`.
    pub fn rational(&mut self) -> Rational {
        let a = self.rng.random_range(-24..=24);
        let b = self.rng.random_range(1..=6);
        rat(a, b)
    }

    /// A finite cut, rational two times in three, otherwise `q + √2`.
    pub fn finite_cut(&mut self) -> Cut {
        let q = self.rational();
        if self.rng.random_range(0..3) < 2 {
            Cut::rational(q)
        } else {
            Cut::At(Surd::new(q, Rational::from_integer(1.into())))
        }
    }

    pub fn cut(&mut self) -> Cut {
        match self.rng.random_range(0..8) {
            0 => Cut::NegInf,
            1 => Cut::PosInf,
            _ => self.finite_cut(),
        }
    }

    fn interval(&mut self) -> QSetExpr {
        let a = self.cut();
        let b = self.cut();
        if a <= b {
            QSetExpr::interval(a, b)
        } else {
            QSetExpr::interval(b, a)
        }
    }

    fn finite(&mut self) -> QSetExpr {
        let n = self.rng.random_range(0..4);
        QSetExpr::finite((0..n).map(|_| self.rational()))
    }

    /// A random expression of depth at most `depth` (capped at 6).
    pub fn expr(&mut self, depth: usize) -> QSetExpr {
        let depth = depth.min(MAX_DEPTH);
        if depth <= 1 || self.rng.random_range(0..3) == 0 {
            return match self.rng.random_range(0..5) {
                0 => QSetExpr::class(self.rng.random_range(0..self.space.modulus())),
                1 | 2 => self.interval(),
                3 => self.finite(),
                _ => QSetExpr::Full,
            };
        }
        let a = self.expr(depth - 1);
        let b = self.expr(depth - 1);
        match self.rng.random_range(0..3) {
            0 => a.or(b),
            1 => a.and(b),
            _ => a.minus(b),
        }
    }

    /// Fibres over `0..bound` for finite width, any shape otherwise.
    pub fn fiber(&mut self, width: Option<u64>) -> Fiber {
        let bound = width.unwrap_or(6);
        let pick = |s: &mut Self| {
            let n = s.rng.random_range(0..=bound.min(3));
            (0..n).map(|_| s.rng.random_range(0..bound)).collect::<Vec<_>>()
        };
        match (width, self.rng.random_range(0..4)) {
            (Some(_), 0) => Fiber::below(bound),
            (None, 0) => Fiber::Full,
            (None, 1) => Fiber::OmegaPlus,
            (None, 2) => Fiber::Cofinite(pick(self).into_iter().collect()),
            _ => Fiber::finite(pick(self)),
        }
    }

    /// A product set with one to three components.
    pub fn product(&mut self, width: Option<u64>, depth: usize) -> ProductSetExpr {
        let n = self.rng.random_range(1..=3);
        let mut p = ProductSetExpr::empty();
        for _ in 0..n {
            let e = self.expr(depth);
            let f = self.fiber(width);
            p = p.with(e, f);
        }
        p
    }

    /// A poset on `n` points: each pair `i < j` is related with probability
    /// `density`, then closed transitively.
    pub fn poset(&mut self, n: usize, density: f64) -> FinPoset<String> {
        let labels: Vec<String> = (0..n).map(default_label).collect();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.rng.random_bool(density) {
                    pairs.push((labels[i].clone(), labels[j].clone()));
                }
            }
        }
        FinPoset::from_closure(labels, pairs).expect("index order rules out cycles")
    }

    /// A random subset of `0..n`.
    pub fn subset(&mut self, n: usize) -> Vec<usize> {
        (0..n).filter(|_| self.rng.random_bool(0.6)).collect()
    }

    /// Disjoint `L, G, U` drawn from `points`, at most `max` points in all.
    pub fn triple(&mut self, points: &[usize], max: usize) -> Triple<usize> {
        let (mut l, mut g, mut u) = (Vec::new(), Vec::new(), Vec::new());
        let mut used = 0;
        for &x in points {
            if used == max {
                break;
            }
            match self.rng.random_range(0..4) {
                0 => l.push(x),
                1 => g.push(x),
                2 => u.push(x),
                _ => continue,
            }
            used += 1;
        }
        Triple::new(l, g, u)
    }
}
