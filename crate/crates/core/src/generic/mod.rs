//! The random poset `𝔻` on ℚ, built by a deterministic generic filter.
//!
//! Conditions are finite strict orders on rationals that `<_ℚ` extends. A
//! fixed schedule of dense sets (one per rational, one per triple and `m`)
//! is met one task at a time, and the order `⊲` is read off the current
//! condition.

mod condition;
mod copy;
mod schedule;

use std::sync::Arc;

use parking_lot::RwLock;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use condition::{window, Condition, MeetOutcome};
pub use copy::{check_no_max_copy, is_copy_of_d};
pub use schedule::{stage, stage_len, Schedule, Task};

use crate::order::{triples_over, FinPoset, OrderError, OrderRel, PosetJson, Triple};
use crate::qset::{QSetError, QSetExpr, QSpace, DEFAULT_MODULUS};
use crate::rational::{parse_rational, Rational, RationalEnumeration};

#[derive(Debug, Error)]
pub enum GenericError {
    #[error("malformed triple: {0}")]
    MalformedTriple(String),
    #[error("point {0} is not in the condition")]
    UnknownPoint(String),
    #[error("order invariant violated: {0}")]
    Invariant(String),
    #[error("no witness in {0}")]
    NoWitness(String),
    #[error("replay mismatch: {0}")]
    Replay(String),
    #[error(transparent)]
    QSet(#[from] QSetError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericConfig {
    pub modulus: u32,
    /// Residue class used as `J`.
    pub j_class: u32,
}

impl Default for GenericConfig {
    fn default() -> Self {
        GenericConfig {
            modulus: DEFAULT_MODULUS,
            j_class: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    PointAdded(Rational),
    PointPresent(Rational),
    Meet(MeetOutcome),
}

#[derive(Debug, Clone)]
pub struct StepRecord {
    pub step: u64,
    pub task: Task,
    pub outcome: StepOutcome,
}

/// The generic order: a monotone sequence of conditions `p_0 ≥ p_1 ≥ …`.
#[derive(Debug, Clone)]
pub struct GenericOrder {
    config: GenericConfig,
    space: QSpace,
    j: QSetExpr,
    initial: Condition,
    cond: Condition,
    schedule: Schedule,
    enumeration: RationalEnumeration,
}

impl GenericOrder {
    pub fn new(config: GenericConfig) -> Result<Self, GenericError> {
        Self::from_condition(config, Condition::new())
    }

    /// Start the filter at `p0`.
    pub fn from_condition(config: GenericConfig, p0: Condition) -> Result<Self, GenericError> {
        let space = QSpace::new(config.modulus)?;
        if config.j_class >= config.modulus {
            return Err(QSetError::ClassOutOfRange {
                index: config.j_class,
                modulus: config.modulus,
            }
            .into());
        }
        p0.audit()?;
        Ok(GenericOrder {
            config,
            space,
            j: QSetExpr::DenseClass(config.j_class),
            initial: p0.clone(),
            cond: p0,
            schedule: Schedule::new(),
            enumeration: RationalEnumeration::new(),
        })
    }

    pub fn config(&self) -> GenericConfig {
        self.config
    }

    pub fn space(&self) -> &QSpace {
        &self.space
    }

    pub fn j_set(&self) -> &QSetExpr {
        &self.j
    }

    pub fn condition(&self) -> &Condition {
        &self.cond
    }

    pub fn steps(&self) -> u64 {
        self.schedule.issued()
    }

    /// Meet the next scheduled dense set.
    pub fn advance(&mut self) -> Result<StepRecord, GenericError> {
        let task = self.schedule.next_task();
        let before = if cfg!(debug_assertions) {
            Some(self.cond.clone())
        } else {
            None
        };
        let outcome = match &task {
            Task::Point { index } => {
                let q = self.enumeration.get(*index).clone();
                if self.cond.contains(&q) {
                    StepOutcome::PointPresent(q)
                } else {
                    self.cond.add_point(q.clone());
                    StepOutcome::PointAdded(q)
                }
            }
            Task::Meet { triple, m } => {
                let top = *triple.points().last().expect("nonempty triple");
                self.enumeration.get(top);
                let t = triple.map(|&i| self.enumeration.peek(i).expect("generated").clone());
                StepOutcome::Meet(self.cond.meet_triple(&t, *m, &self.j, &self.space)?)
            }
        };
        if let Some(prev) = before {
            if !self.cond.extends(&prev) {
                return Err(GenericError::Invariant(format!(
                    "step {} is not an extension",
                    self.steps()
                )));
            }
        }
        Ok(StepRecord {
            step: self.steps(),
            task,
            outcome,
        })
    }

    pub fn advance_by(&mut self, n: u64) -> Result<(), GenericError> {
        for _ in 0..n {
            self.advance()?;
        }
        Ok(())
    }

    /// Advance until `q` is decided. Returns the steps taken.
    pub fn introduce(&mut self, q: &Rational) -> Result<u64, GenericError> {
        let start = self.steps();
        while !self.cond.contains(q) {
            self.advance()?;
        }
        Ok(self.steps() - start)
    }

    /// The relation between `a` and `b` in `⊲`.
    pub fn query(&mut self, a: &Rational, b: &Rational) -> Result<OrderRel, GenericError> {
        self.introduce(a)?;
        self.introduce(b)?;
        Ok(self.cond.relation(a, b).expect("both points decided"))
    }

    pub fn to_poset(&self) -> FinPoset<Rational> {
        self.cond.to_poset()
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            config: self.config,
            initial: self.initial.to_json_value(),
            step: self.steps(),
            introduced_points: self.cond.points().iter().map(|q| q.to_string()).collect(),
            condition: self.cond.to_json_value(),
        }
    }

    /// Rebuild from a snapshot by rerunning the schedule, then compare.
    pub fn replay(snapshot: &Snapshot) -> Result<Self, GenericError> {
        let initial = condition_from_json(&snapshot.initial)?;
        let mut g = GenericOrder::from_condition(snapshot.config, initial)?;
        g.advance_by(snapshot.step)?;
        let again = g.snapshot();
        if again.introduced_points != snapshot.introduced_points {
            return Err(GenericError::Replay("introduced points differ".into()));
        }
        if again.condition != snapshot.condition {
            return Err(GenericError::Replay("decided order differs".into()));
        }
        Ok(g)
    }

    pub fn saturate(
        &mut self,
        points: &[Rational],
        k: usize,
        budget: u64,
    ) -> Result<(FinPoset<Rational>, SaturationReport), GenericError> {
        self.saturate_avoiding(points, k, budget, &[])
    }

    /// Advance until every consistent triple over `points` of size at most
    /// `k` has a realizer outside `avoid`, or `budget` steps are spent.
    pub fn saturate_avoiding(
        &mut self,
        points: &[Rational],
        k: usize,
        budget: u64,
        avoid: &[Rational],
    ) -> Result<(FinPoset<Rational>, SaturationReport), GenericError> {
        self.saturate_where(points, k, budget, |q| !avoid.contains(q))
    }

    /// As [`GenericOrder::saturate`], counting only realizers that pass `accept`.
    pub fn saturate_where(
        &mut self,
        points: &[Rational],
        k: usize,
        budget: u64,
        accept: impl Fn(&Rational) -> bool,
    ) -> Result<(FinPoset<Rational>, SaturationReport), GenericError> {
        let start = self.steps();
        let spent = |g: &GenericOrder| g.steps() - start;
        let mut core: Vec<Rational> = points.to_vec();
        core.sort();
        core.dedup();
        while core.iter().any(|q| !self.cond.contains(q)) {
            if spent(self) >= budget {
                return Ok(self.saturation_result(&core, k, start, 0, Vec::new(), false));
            }
            self.advance()?;
        }

        let restricted = self.cond.restrict(&core)?;
        let all: Vec<usize> = (0..core.len()).collect();
        let triples: Vec<Triple<Rational>> = triples_over(&restricted, &all, k)
            .into_iter()
            .map(|t| t.map(|&i| core[i].clone()))
            .collect();
        let total = triples.len();

        let mut pending: Vec<Triple<Rational>> = Vec::new();
        for t in triples {
            if !self.cond.realizers(&t)?.iter().any(&accept) {
                pending.push(t);
            }
        }
        while !pending.is_empty() && spent(self) < budget {
            let seen = self.cond.len();
            self.advance()?;
            if self.cond.len() == seen {
                continue;
            }
            let cond = &self.cond;
            let fresh: Vec<&Rational> = cond.points()[seen..].iter().filter(|q| accept(q)).collect();
            let mut keep = Vec::with_capacity(pending.len());
            for t in pending {
                let mut hit = false;
                for &q in &fresh {
                    if cond.realizes(&t, q)? {
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    keep.push(t);
                }
            }
            pending = keep;
        }
        let complete = pending.is_empty();
        Ok(self.saturation_result(&core, k, start, total, pending, complete))
    }

    fn saturation_result(
        &self,
        core: &[Rational],
        k: usize,
        start: u64,
        total: usize,
        pending: Vec<Triple<Rational>>,
        complete: bool,
    ) -> (FinPoset<Rational>, SaturationReport) {
        let report = SaturationReport {
            core: core.to_vec(),
            k,
            triples: total,
            realized: total - pending.len(),
            pending,
            steps_used: self.steps() - start,
            introduced: self.cond.len(),
            complete,
        };
        (self.to_poset(), report)
    }
}

/// Parse a condition from the order-core JSON form with rational labels.
pub fn condition_from_json(value: &PosetJson) -> Result<Condition, GenericError> {
    let parse = |s: &String| {
        parse_rational(s).ok_or_else(|| GenericError::Json(format!("not a rational: {s}")))
    };
    let points = value.elements.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
    let lt = value
        .lt
        .iter()
        .map(|[a, b]| Ok((parse(a)?, parse(b)?)))
        .collect::<Result<Vec<_>, GenericError>>()?;
    Condition::from_pairs(points, &lt)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationReport {
    pub core: Vec<Rational>,
    pub k: usize,
    /// Consistent triples over the core.
    pub triples: usize,
    pub realized: usize,
    pub pending: Vec<Triple<Rational>>,
    pub steps_used: u64,
    pub introduced: usize,
    /// False when the budget ran out first.
    pub complete: bool,
}

/// Schedule state plus the decided order, enough to replay exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub config: GenericConfig,
    pub initial: PosetJson,
    pub step: u64,
    pub introduced_points: Vec<String>,
    pub condition: PosetJson,
}

impl Snapshot {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("snapshot serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GenericError> {
        serde_json::from_str(text).map_err(|e| GenericError::Json(e.to_string()))
    }
}

/// A generic order shared between threads.
///
/// Reads of already-decided pairs take the read lock; advancing the
/// schedule takes the write lock, so all threads see one monotone sequence.
#[derive(Debug, Clone)]
pub struct SharedGenericOrder {
    inner: Arc<RwLock<GenericOrder>>,
}

impl SharedGenericOrder {
    pub fn new(g: GenericOrder) -> Self {
        SharedGenericOrder {
            inner: Arc::new(RwLock::new(g)),
        }
    }

    pub fn query(&self, a: &Rational, b: &Rational) -> Result<OrderRel, GenericError> {
        if let Some(r) = self.inner.read().condition().relation(a, b) {
            return Ok(r);
        }
        self.inner.write().query(a, b)
    }

    pub fn steps(&self) -> u64 {
        self.inner.read().steps()
    }

    pub fn with<R>(&self, f: impl FnOnce(&GenericOrder) -> R) -> R {
        f(&self.inner.read())
    }

    pub fn with_mut<R>(&self, f: impl FnOnce(&mut GenericOrder) -> R) -> R {
        f(&mut self.inner.write())
    }
}

/// `generic_query` in free-function form.
pub fn generic_query(
    g: &mut GenericOrder,
    a: &Rational,
    b: &Rational,
) -> Result<OrderRel, GenericError> {
    g.query(a, b)
}
