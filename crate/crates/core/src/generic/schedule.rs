use std::fmt;

use serde::Serialize;

use crate::order::{combinations, Triple};

/// One dense set to meet. Points are indices into the height enumeration of ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "task", rename_all = "snake_case")]
pub enum Task {
    Point { index: usize },
    Meet { triple: Triple<usize>, m: u32 },
}

impl Task {
    /// The stage in which the task is scheduled.
    ///
    /// A point task `i` has weight `i + 1`. A triple task whose largest index
    /// is `a − 1`, with `s` points and parameter `m`, has weight
    /// `a + s² − 1 + (m − 1)`. Triples with `G ≠ ∅` are only scheduled with
    /// `m = 1`, since their dense set does not depend on `m`.
    pub fn weight(&self) -> Option<u64> {
        match self {
            Task::Point { index } => Some(*index as u64 + 1),
            Task::Meet { triple, m } => {
                if *m == 0 || triple.size() == 0 || !triple.is_disjoint() {
                    return None;
                }
                if !triple.g.is_empty() && *m != 1 {
                    return None;
                }
                let a = *triple.points().last()? as u64 + 1;
                let s = triple.size() as u64;
                Some(a + s * s - 1 + (*m as u64 - 1))
            }
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Task::Point { index } => write!(f, "point #{index}"),
            Task::Meet { triple, m } => {
                let join = |v: &[usize]| {
                    v.iter()
                        .map(|x| format!("#{x}"))
                        .collect::<Vec<_>>()
                        .join(",")
                };
                write!(
                    f,
                    "meet ⟨{{{}}},{{{}}},{{{}}}⟩ m={m}",
                    join(&triple.l),
                    join(&triple.g),
                    join(&triple.u)
                )
            }
        }
    }
}

/// All tasks of stage `n ≥ 1`: the point task first, then triple tasks by
/// `m`, size, point set (lexicographic) and role assignment.
pub fn stage(n: u64) -> Vec<Task> {
    assert!(n >= 1, "stages start at 1");
    let mut out = vec![Task::Point {
        index: (n - 1) as usize,
    }];
    for m in 1..=n {
        let mut s = 1u64;
        while s * s + m <= n + 1 {
            let a = n + 2 - m - s * s;
            if a >= s {
                push_triples(&mut out, a as usize, s as usize, m as u32);
            }
            s += 1;
        }
    }
    out
}

fn push_triples(out: &mut Vec<Task>, a: usize, s: usize, m: u32) {
    let top = a - 1;
    for combo in combinations(top, s - 1) {
        let mut chosen = combo;
        chosen.push(top);
        for roles in 0..3usize.pow(s as u32) {
            let mut digits = vec![0; s];
            let mut code = roles;
            for d in digits.iter_mut().rev() {
                *d = code % 3;
                code /= 3;
            }
            if m > 1 && digits.contains(&1) {
                continue;
            }
            let mut t = Triple::empty();
            for (&x, role) in chosen.iter().zip(digits) {
                match role {
                    0 => t.l.push(x),
                    1 => t.g.push(x),
                    _ => t.u.push(x),
                }
            }
            out.push(Task::Meet { triple: t, m });
        }
    }
}

/// Number of tasks in stage `n`, without materializing them.
pub fn stage_len(n: u64) -> u128 {
    let mut total = 1u128;
    for m in 1..=n {
        let mut s = 1u64;
        while s * s + m <= n + 1 {
            let a = n + 2 - m - s * s;
            if a >= s {
                let roles = if m == 1 { 3u128 } else { 2u128 }.pow(s as u32);
                total += binomial(a as u128 - 1, s as u128 - 1) * roles;
            }
            s += 1;
        }
    }
    total
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// A cursor over the fixed task stream.
#[derive(Debug, Clone)]
pub struct Schedule {
    stage: u64,
    buffer: Vec<Task>,
    pos: usize,
    issued: u64,
}

impl Default for Schedule {
    fn default() -> Self {
        Self::new()
    }
}

impl Schedule {
    pub fn new() -> Self {
        Schedule {
            stage: 0,
            buffer: Vec::new(),
            pos: 0,
            issued: 0,
        }
    }

    /// Tasks handed out so far.
    pub fn issued(&self) -> u64 {
        self.issued
    }

    pub fn current_stage(&self) -> u64 {
        self.stage
    }

    pub fn next_task(&mut self) -> Task {
        while self.pos >= self.buffer.len() {
            self.stage += 1;
            self.buffer = stage(self.stage);
            self.pos = 0;
        }
        let t = self.buffer[self.pos].clone();
        self.pos += 1;
        self.issued += 1;
        t
    }

    /// The 1-based step at which `task` is issued.
    pub fn step_of(task: &Task) -> Option<u128> {
        let w = task.weight()?;
        let before: u128 = (1..w).map(stage_len).sum();
        let pos = stage(w).iter().position(|t| t == task)?;
        Some(before + pos as u128 + 1)
    }
}

impl Iterator for Schedule {
    type Item = Task;

    fn next(&mut self) -> Option<Task> {
        Some(self.next_task())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn stage_len_matches_materialized_stages() {
        for n in 1..=14 {
            assert_eq!(stage(n).len() as u128, stage_len(n), "stage {n}");
        }
    }

    #[test]
    fn tasks_are_unique_and_weights_match() {
        let mut seen = HashSet::new();
        for n in 1..=12 {
            for t in stage(n) {
                assert_eq!(t.weight(), Some(n), "{t}");
                assert!(seen.insert(t.clone()), "duplicate {t}");
            }
        }
    }

    #[test]
    fn every_small_task_is_scheduled() {
        // brute force: all tasks with indices < 5, size ≤ 2, m ≤ 3
        let mut expected = Vec::new();
        for i in 0..5 {
            expected.push(Task::Point { index: i });
        }
        for size in 1..=2 {
            for combo in combinations(5, size) {
                for roles in 0..3usize.pow(size as u32) {
                    let mut t = Triple::empty();
                    let mut code = roles;
                    for &x in &combo {
                        match code % 3 {
                            0 => t.l.push(x),
                            1 => t.g.push(x),
                            _ => t.u.push(x),
                        }
                        code /= 3;
                    }
                    let t = Triple::new(t.l, t.g, t.u);
                    for m in 1..=3 {
                        if m > 1 && !t.g.is_empty() {
                            continue;
                        }
                        expected.push(Task::Meet {
                            triple: t.clone(),
                            m,
                        });
                    }
                }
            }
        }
        let horizon = expected.iter().filter_map(Task::weight).max().unwrap();
        let issued: HashSet<Task> = (1..=horizon).flat_map(stage).collect();
        for t in &expected {
            assert!(issued.contains(t), "{t} missing");
            let step = Schedule::step_of(t).unwrap();
            let mut s = Schedule::new();
            let got = s.nth(step as usize - 1).unwrap();
            assert_eq!(&got, t);
        }
    }

    #[test]
    fn first_stage() {
        let s: Vec<String> = stage(1).iter().map(|t| t.to_string()).collect();
        assert_eq!(
            s,
            ["point #0", "meet ⟨{#0},{},{}⟩ m=1", "meet ⟨{},{#0},{}⟩ m=1", "meet ⟨{},{},{#0}⟩ m=1"]
        );
    }
}
