//! Best-first branch-and-bound over conjunctive selectors.
//!
//! Nodes are expanded in order of their optimistic bound. A child is
//! discarded when its bound is below `a` times the `k`-th best value found so
//! far, and the search stops once the best remaining bound is at most that
//! threshold. All comparisons are multiplicative, so a zero incumbent is safe.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::Write;
use std::time::{Duration, Instant};

use log::debug;
use serde::{Deserialize, Serialize};

use crate::bounds::{Estimator, EstimatorKind, DEFAULT_GENERAL_CAP};
use crate::dataset::{DataTable, PropositionPool};
use crate::error::{Error, Result};
use crate::lang::{closure, refine_ccj_unchecked, refine_cnj, Conjunction};
use crate::objectives::Objective;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Language {
    /// All conjunctions.
    Cnj,
    /// Closed conjunctions only; one selector per distinct extension.
    Ccj,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Approximation factor `a` in `(0, 1]`.
    pub approximation: f64,
    /// Maximum number of refinement steps from the root.
    pub depth_limit: Option<usize>,
    pub top_k: usize,
    pub language: Language,
    /// `None` picks the tightest estimator for the objective.
    pub estimator: Option<EstimatorKind>,
    /// Stop after this many expansions.
    pub node_budget: Option<usize>,
    pub time_budget: Option<Duration>,
    /// Size limit for [`EstimatorKind::MedianGeneral`].
    pub general_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            approximation: 1.0,
            depth_limit: None,
            top_k: 1,
            language: Language::Ccj,
            estimator: None,
            node_budget: None,
            time_budget: None,
            general_cap: DEFAULT_GENERAL_CAP,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let a = self.approximation;
        if !(a > 0.0 && a <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "approximation factor must lie in (0, 1], got {a}"
            )));
        }
        if self.top_k == 0 {
            return Err(Error::InvalidParameter("top_k must be at least 1".into()));
        }
        if self.depth_limit == Some(0) {
            return Err(Error::InvalidParameter(
                "depth limit must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A scored selector.
#[derive(Debug, Clone)]
pub struct SearchNode {
    pub selector: Conjunction,
    /// Optimistic estimate for the selector and all its refinements.
    pub bound: f64,
    pub value: f64,
    pub depth: usize,
}

impl SearchNode {
    fn queue_cmp(&self, other: &SearchNode) -> Ordering {
        self.bound
            .total_cmp(&other.bound)
            .then_with(|| {
                self.selector
                    .extension()
                    .len()
                    .cmp(&other.selector.extension().len())
            })
            .then_with(|| other.selector.lex_cmp(&self.selector))
    }
}

struct Queued(SearchNode);

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Queued {}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.queue_cmp(&other.0)
    }
}

/// A reported subgroup.
#[derive(Debug, Clone)]
pub struct ResultRecord {
    pub selector: Conjunction,
    pub description: String,
    pub value: f64,
    pub bound: f64,
    pub depth: usize,
    pub size: usize,
}

/// One line of the expansion log.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub nodes_expanded: usize,
    pub incumbent_value: f64,
    /// Bound of the node just expanded, which was the queue top.
    pub queue_top_bound: f64,
    pub depth: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub nodes_expanded: usize,
    pub nodes_enqueued: usize,
    /// Children dropped because their bound fell below the pruning threshold.
    pub nodes_pruned: usize,
    /// `(nodes_expanded, incumbent)` at every improvement of the best value.
    pub best_value_over_time: Vec<(usize, f64)>,
    pub wall_time: Duration,
    pub records: Vec<TraceRecord>,
    /// False when a budget stopped the search early.
    pub complete: bool,
    pub incumbent_value: f64,
    pub queue_top_bound: Option<f64>,
}

impl Trace {
    /// Writes one JSON object per expansion.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

/// Anytime view of a search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Progress {
    pub incumbent_value: f64,
    /// Highest bound still in the queue; `None` once the queue is empty.
    pub queue_top_bound: Option<f64>,
    pub nodes_expanded: usize,
    pub complete: bool,
}

pub fn snapshot(trace: &Trace) -> Progress {
    Progress {
        incumbent_value: trace.incumbent_value,
        queue_top_bound: trace.queue_top_bound,
        nodes_expanded: trace.nodes_expanded,
        complete: trace.complete,
    }
}

/// Incremental branch-and-bound; drive it with [`Search::step`] or [`Search::run`].
pub struct Search<'a> {
    pool: &'a PropositionPool,
    targets: &'a [f64],
    objective: Objective,
    estimator: Estimator,
    config: SearchConfig,
    queue: BinaryHeap<Queued>,
    results: Vec<ResultRecord>,
    trace: Trace,
    started: Instant,
    finished: bool,
}

impl<'a> Search<'a> {
    /// Scores the root and prepares the queue.
    pub fn new(
        pool: &'a PropositionPool,
        targets: &'a [f64],
        objective: &Objective,
        config: SearchConfig,
    ) -> Result<Self> {
        config.validate()?;
        if targets.len() != pool.rows() {
            return Err(Error::Invariant(format!(
                "pool covers {} rows but {} target values were given",
                pool.rows(),
                targets.len()
            )));
        }
        let kind = config
            .estimator
            .unwrap_or_else(|| EstimatorKind::best_for(objective));
        let estimator = Estimator::new(kind, objective, config.general_cap)?;
        let mut search = Search {
            pool,
            targets,
            objective: objective.clone(),
            estimator,
            config,
            queue: BinaryHeap::new(),
            results: Vec::new(),
            trace: Trace::default(),
            started: Instant::now(),
            finished: false,
        };
        let bottom = Conjunction::bottom(pool);
        let root = match search.config.language {
            Language::Cnj => bottom,
            Language::Ccj => closure(&bottom, pool),
        };
        let node = search.score(root, 0)?;
        search.offer(&node);
        search.trace.incumbent_value = node.value;
        search.trace.best_value_over_time.push((0, node.value));
        if search.expandable(&node) {
            search.enqueue(node);
        }
        search.trace.queue_top_bound = search.queue.peek().map(|q| q.0.bound);
        Ok(search)
    }

    fn score(&self, selector: Conjunction, depth: usize) -> Result<SearchNode> {
        let q = selector.extension().sorted_values(self.targets);
        let value = self.objective.evaluate(&q);
        let bound = if q.is_empty() {
            0.0
        } else {
            self.estimator.estimate(&q)?.max(value)
        };
        Ok(SearchNode {
            selector,
            bound,
            value,
            depth,
        })
    }

    fn expandable(&self, node: &SearchNode) -> bool {
        !node.selector.extension().is_empty()
            && self.config.depth_limit.is_none_or(|d| node.depth < d)
    }

    fn enqueue(&mut self, node: SearchNode) {
        self.trace.nodes_enqueued += 1;
        self.queue.push(Queued(node));
    }

    /// `a` times the `k`-th best value, or `None` while fewer than `k` results exist.
    fn threshold(&self) -> Option<f64> {
        if self.results.len() < self.config.top_k {
            None
        } else {
            Some(self.config.approximation * self.results[self.config.top_k - 1].value)
        }
    }

    fn offer(&mut self, node: &SearchNode) {
        let ext = node.selector.extension();
        if let Some(pos) = self
            .results
            .iter()
            .position(|r| r.selector.extension() == ext)
        {
            let existing = &self.results[pos];
            let shorter = (node.selector.len(), node.selector.props())
                < (existing.selector.len(), existing.selector.props());
            if shorter {
                self.results[pos] = self.record(node);
            }
            return;
        }
        let full = self.results.len() >= self.config.top_k;
        if full && node.value <= self.results[self.config.top_k - 1].value {
            return;
        }
        self.results.push(self.record(node));
        self.results.sort_by(|x, y| {
            y.value
                .total_cmp(&x.value)
                .then_with(|| x.selector.len().cmp(&y.selector.len()))
                .then_with(|| x.selector.lex_cmp(&y.selector))
        });
        self.results.truncate(self.config.top_k);
    }

    fn record(&self, node: &SearchNode) -> ResultRecord {
        ResultRecord {
            selector: node.selector.clone(),
            description: node.selector.describe(self.pool),
            value: node.value,
            bound: node.bound,
            depth: node.depth,
            size: node.selector.extension().len(),
        }
    }

    fn budget_exhausted(&self) -> bool {
        self.config
            .node_budget
            .is_some_and(|b| self.trace.nodes_expanded >= b)
            || self
                .config
                .time_budget
                .is_some_and(|t| self.started.elapsed() >= t)
    }

    /// Expands one node. Returns `false` once the search has terminated.
    pub fn step(&mut self) -> Result<bool> {
        if self.finished {
            return Ok(false);
        }
        let stop = match self.queue.peek() {
            None => true,
            Some(top) => self.threshold().is_some_and(|t| top.0.bound <= t),
        };
        if stop {
            self.finish(true);
            return Ok(false);
        }
        if self.budget_exhausted() {
            self.finish(false);
            return Ok(false);
        }
        let Queued(node) = self.queue.pop().expect("queue checked above");
        let children = match self.config.language {
            Language::Cnj => refine_cnj(&node.selector, self.pool),
            Language::Ccj => refine_ccj_unchecked(&node.selector, self.pool),
        };
        self.trace.nodes_expanded += 1;
        for child in children {
            let child = self.score(child, node.depth + 1)?;
            if child.selector.extension().is_empty() {
                continue;
            }
            self.offer(&child);
            if !self.expandable(&child) {
                continue;
            }
            if self.threshold().is_some_and(|t| child.bound < t) {
                self.trace.nodes_pruned += 1;
                continue;
            }
            self.enqueue(child);
        }
        let best = self.results[0].value;
        if best > self.trace.incumbent_value {
            self.trace.incumbent_value = best;
            self.trace
                .best_value_over_time
                .push((self.trace.nodes_expanded, best));
        }
        self.trace.records.push(TraceRecord {
            nodes_expanded: self.trace.nodes_expanded,
            incumbent_value: best,
            queue_top_bound: node.bound,
            depth: node.depth,
        });
        self.trace.queue_top_bound = self.queue.peek().map(|q| q.0.bound);
        Ok(true)
    }

    fn finish(&mut self, complete: bool) {
        self.finished = true;
        self.trace.complete = complete;
        self.trace.wall_time = self.started.elapsed();
        self.trace.queue_top_bound = self.queue.peek().map(|q| q.0.bound);
        debug!(
            "search finished: complete={complete} expanded={} enqueued={} pruned={}",
            self.trace.nodes_expanded, self.trace.nodes_enqueued, self.trace.nodes_pruned
        );
    }

    pub fn snapshot(&self) -> Progress {
        snapshot(&self.trace)
    }

    /// Current top-k, best first.
    pub fn results(&self) -> &[ResultRecord] {
        &self.results
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    /// Runs to termination.
    pub fn run(mut self) -> Result<(Vec<ResultRecord>, Trace)> {
        while self.step()? {}
        Ok((self.results, self.trace))
    }
}

/// Runs a complete search over the target column of `table`.
pub fn run_search(
    table: &DataTable,
    pool: &PropositionPool,
    objective: &Objective,
    config: SearchConfig,
) -> Result<(Vec<ResultRecord>, Trace)> {
    Search::new(pool, table.target(), objective, config)?.run()
}

/// Best value over every selector reachable in `language` within `depth_limit`,
/// by exhaustive enumeration without pruning.
pub fn exhaustive_optimum(
    pool: &PropositionPool,
    targets: &[f64],
    objective: &Objective,
    language: Language,
    depth_limit: Option<usize>,
) -> f64 {
    let bottom = Conjunction::bottom(pool);
    let root = match language {
        Language::Cnj => bottom,
        Language::Ccj => closure(&bottom, pool),
    };
    let mut best = f64::NEG_INFINITY;
    let mut stack = vec![(root, 0usize)];
    while let Some((sel, depth)) = stack.pop() {
        let q = sel.extension().sorted_values(targets);
        best = best.max(objective.evaluate(&q));
        if sel.extension().is_empty() || depth_limit.is_some_and(|d| depth >= d) {
            continue;
        }
        let children = match language {
            Language::Cnj => refine_cnj(&sel, pool),
            Language::Ccj => refine_ccj_unchecked(&sel, pool),
        };
        stack.extend(children.into_iter().map(|c| (c, depth + 1)));
    }
    best
}
