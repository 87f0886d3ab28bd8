//! Exhaustive grid sweeps with an order-independent min/count reduction.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::report::{DefectReport, DefectValue, InequalityId, Value};

/// Violations retained per scan unless configured otherwise.
pub const DEFAULT_VIOLATION_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub parallelism: usize,
    pub violation_cap: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            parallelism: 1,
            violation_cap: DEFAULT_VIOLATION_CAP,
        }
    }
}

impl ScanOptions {
    pub fn with_parallelism(parallelism: usize) -> Self {
        ScanOptions {
            parallelism,
            ..Default::default()
        }
    }
}

/// The parameters that define a grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GridSpec {
    pub bound: u64,
    pub base: Option<u32>,
    pub r: Option<usize>,
    pub p: Option<f64>,
    pub sharp: Option<bool>,
    pub dominated: Option<bool>,
    pub x_max: Option<u32>,
    pub pattern: Option<String>,
    pub coefficient: Option<String>,
}

/// Aggregate of one exhaustive sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport<V> {
    pub id: InequalityId,
    pub grid: GridSpec,
    pub instances_checked: u64,
    pub min_defect: Option<V>,
    pub argmin_witness: Option<Vec<V>>,
    pub equality_count: u64,
    pub violation_count: u64,
    /// The lexicographically smallest failing inputs, at most `violation_cap` of them.
    pub violations: Vec<Vec<V>>,
    pub violation_cap: usize,
    /// Input names, in witness order.
    pub witness_names: Vec<String>,
}

impl<V: DefectValue> ScanReport<V> {
    pub fn all_hold(&self) -> bool {
        self.violation_count == 0
    }

    pub fn into_values(self) -> ScanReport<Value> {
        let conv = |w: Vec<V>| {
            w.into_iter()
                .map(DefectValue::into_value)
                .collect::<Vec<_>>()
        };
        ScanReport {
            id: self.id,
            grid: self.grid,
            instances_checked: self.instances_checked,
            min_defect: self.min_defect.map(DefectValue::into_value),
            argmin_witness: self.argmin_witness.map(conv),
            equality_count: self.equality_count,
            violation_count: self.violation_count,
            violations: self.violations.into_iter().map(conv).collect(),
            violation_cap: self.violation_cap,
            witness_names: self.witness_names,
        }
    }
}

fn lex_cmp<V: PartialOrd>(a: &[V], b: &[V]) -> Ordering {
    lex_cmp_iter(a.iter(), b.iter())
}

fn lex_cmp_iter<'v, V: PartialOrd + 'v>(
    mut a: impl Iterator<Item = &'v V>,
    mut b: impl Iterator<Item = &'v V>,
) -> Ordering {
    loop {
        match (a.next(), b.next()) {
            (Some(x), Some(y)) => match x.partial_cmp(y) {
                Some(Ordering::Equal) | None => {}
                Some(o) => return o,
            },
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
        }
    }
}

/// Partial result of a sweep; `merge` is associative and commutative so the
/// final tally does not depend on how the grid was split.
#[derive(Debug, Clone)]
struct Tally<V> {
    instances: u64,
    equalities: u64,
    min: Option<(V, Vec<V>)>,
    violation_count: u64,
    violations: Vec<Vec<V>>,
    cap: usize,
    names: Option<Vec<String>>,
}

impl<V: DefectValue> Tally<V> {
    fn new(cap: usize) -> Self {
        Tally {
            instances: 0,
            equalities: 0,
            min: None,
            violation_count: 0,
            violations: Vec::new(),
            cap,
            names: None,
        }
    }

    fn observe(&mut self, r: DefectReport<V>) {
        self.instances += 1;
        if r.defect.is_zero_defect() {
            self.equalities += 1;
        }
        if self.names.is_none() {
            self.names = Some(r.inputs.iter().map(|(k, _)| k.to_string()).collect());
        }
        let better = match &self.min {
            None => true,
            Some((d, w)) => match r.defect.partial_cmp(d) {
                Some(Ordering::Less) => true,
                Some(Ordering::Equal) => {
                    lex_cmp_iter(r.inputs.iter().map(|(_, v)| v), w.iter()) == Ordering::Less
                }
                _ => false,
            },
        };
        if better {
            self.min = Some((r.defect.clone(), r.witness()));
        }
        if !r.holds {
            self.violation_count += 1;
            self.push_violation(r.witness());
        }
    }

    fn push_violation(&mut self, w: Vec<V>) {
        let pos = self
            .violations
            .partition_point(|v| lex_cmp(v, &w) == Ordering::Less);
        if pos < self.cap {
            self.violations.insert(pos, w);
            self.violations.truncate(self.cap);
        }
    }

    fn merge(mut self, other: Tally<V>) -> Tally<V> {
        self.instances += other.instances;
        self.equalities += other.equalities;
        self.violation_count += other.violation_count;
        self.min = match (self.min.take(), other.min) {
            (None, m) | (m, None) => m,
            (Some(a), Some(b)) => match a.0.partial_cmp(&b.0) {
                Some(Ordering::Less) => Some(a),
                Some(Ordering::Greater) => Some(b),
                _ => {
                    if lex_cmp(&b.1, &a.1) == Ordering::Less {
                        Some(b)
                    } else {
                        Some(a)
                    }
                }
            },
        };
        for w in other.violations {
            self.push_violation(w);
        }
        if self.names.is_none() {
            self.names = other.names;
        }
        self
    }

    fn finish(self, id: InequalityId, grid: GridSpec) -> ScanReport<V> {
        let (min_defect, argmin_witness) = match self.min {
            Some((d, w)) => (Some(d), Some(w)),
            None => (None, None),
        };
        ScanReport {
            id,
            grid,
            instances_checked: self.instances,
            min_defect,
            argmin_witness,
            equality_count: self.equalities,
            violation_count: self.violation_count,
            violations: self.violations,
            violation_cap: self.cap,
            witness_names: self.names.unwrap_or_default(),
        }
    }
}

type BlockFn<'a, V> = dyn Fn(u64, &mut dyn FnMut(DefectReport<V>)) + Send + Sync + 'a;

/// A grid split into independent blocks `0..blocks`; evaluating a block
/// emits the reports of every grid point it owns.
pub struct Sweep<'a, V> {
    pub id: InequalityId,
    pub grid: GridSpec,
    blocks: u64,
    eval: Box<BlockFn<'a, V>>,
}

impl<'a, V: DefectValue> Sweep<'a, V> {
    pub fn new<F>(id: InequalityId, grid: GridSpec, blocks: u64, eval: F) -> Self
    where
        F: Fn(u64, &mut dyn FnMut(DefectReport<V>)) + Send + Sync + 'a,
    {
        Sweep {
            id,
            grid,
            blocks,
            eval: Box::new(eval),
        }
    }

    /// Evaluates every grid point and reduces to a [`ScanReport`].
    pub fn run(&self, opts: &ScanOptions) -> ScanReport<V> {
        let cap = opts.violation_cap;
        let tally = if opts.parallelism <= 1 {
            let mut t = Tally::new(cap);
            for i in 0..self.blocks {
                (self.eval)(i, &mut |r| t.observe(r));
            }
            t
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.parallelism)
                .build()
                .expect("thread pool");
            pool.install(|| {
                (0..self.blocks)
                    .into_par_iter()
                    .fold(
                        || Tally::new(cap),
                        |mut t, i| {
                            (self.eval)(i, &mut |r| t.observe(r));
                            t
                        },
                    )
                    .reduce(|| Tally::new(cap), Tally::merge)
            })
        };
        tally.finish(self.id, self.grid.clone())
    }

    /// Visits every grid point in order.
    pub fn visit(&self, mut f: impl FnMut(DefectReport<V>)) {
        for i in 0..self.blocks {
            (self.eval)(i, &mut f);
        }
    }
}
