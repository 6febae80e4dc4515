//! The rewrite-basis main loop with its reductant selection and signature
//! scheduling strategies.

pub mod certificate;
pub mod dot;
pub mod trace;
pub mod tree;

use crate::critical::{minimal_by_division, critical_pair_signatures, CriticalQueue, QueueUpdate};
use crate::element::{normal_form, Element, Reducer};
use crate::error::Error;
use crate::monomial::Monomial;
use crate::sig::{find_regular_reducer_in, regular_normal_form_in, SigPair, SigSet, Signature};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use certificate::rewrite_basis_at_in;
use tree::{select_f5_in, select_min_lm_in};

pub use certificate::{faugere_certificate, rewrite_basis_at, Certificate};
pub use dot::export_dot;
pub use trace::{to_json_lines, TraceEvent};
pub use tree::{select_reductant_f5, select_reductant_sigtree, validate_sigtree, Node, Rule, Selection, SigTree, Violation};

/// Reductant selection and batching policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Sigtree descent; with the increasing schedule this processes
    /// signatures in order.
    InOrder,
    /// The reductant with minimal leading monomial.
    MinLm,
    /// The most recent member, zero parts first.
    F5,
    /// F5 selection over a queue without divisible pairs.
    F5Pruned,
    /// Batches of the given size reduced simultaneously.
    F4(usize),
}

impl Strategy {
    pub const ALL_NAMES: [&'static str; 5] = ["in-order", "min-lm", "f5", "f5-pruned", "f4"];

    /// Parses a strategy name; `batch` applies to `f4` only.
    pub fn parse(name: &str, batch: usize) -> crate::Result<Self> {
        match name {
            "in-order" => Ok(Strategy::InOrder),
            "min-lm" => Ok(Strategy::MinLm),
            "f5" => Ok(Strategy::F5),
            "f5-pruned" => Ok(Strategy::F5Pruned),
            "f4" if batch >= 1 => Ok(Strategy::F4(batch)),
            "f4" => Err(Error::InvalidInput("batch size must be positive".into())),
            other => Err(Error::InvalidInput(format!("unknown strategy `{other}`"))),
        }
    }

    fn pruned(self) -> bool {
        self == Strategy::F5Pruned
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.strip_prefix("f4:") {
            Some(k) => {
                let k = k
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad batch size `{k}`")))?;
                Strategy::parse("f4", k)
            }
            None => Strategy::parse(s, 4),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::InOrder => f.write_str("in-order"),
            Strategy::MinLm => f.write_str("min-lm"),
            Strategy::F5 => f.write_str("f5"),
            Strategy::F5Pruned => f.write_str("f5-pruned"),
            Strategy::F4(k) => write!(f, "f4:{k}"),
        }
    }
}

/// Order in which single signatures leave the queue. Batches always take
/// the smallest ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    Increasing,
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Limits {
    pub max_insertions: usize,
    pub max_seconds: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_insertions: 1_000_000,
            max_seconds: 300.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub strategy: Strategy,
    pub limits: Limits,
    pub schedule: Schedule,
    /// Checks the queue invariant at every loop head and the regularity of
    /// every insertion. Costly.
    pub check_invariants: bool,
    pub trace: bool,
}

impl RunConfig {
    pub fn new(strategy: Strategy) -> Self {
        RunConfig {
            strategy,
            limits: Limits::default(),
            schedule: Schedule::Increasing,
            check_invariants: false,
            trace: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub iterations: usize,
    pub insertions: usize,
    pub zero_reductions: usize,
    pub reduction_steps: usize,
    pub peak_queue: usize,
    pub batches: usize,
    /// False when a common-multiple search was cut off (generated monoids).
    pub complete: bool,
}

/// A breach of the queue invariant or of insertion regularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFailure {
    pub iteration: usize,
    pub signature: Signature,
    pub what: &'static str,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub basis: SigSet,
    pub tree: SigTree,
    pub syzygies: Vec<Signature>,
    pub stats: Stats,
    pub trace: Vec<TraceEvent>,
    pub invariant_failures: Vec<InvariantFailure>,
    /// Number of loop heads at which the invariant was checked.
    pub invariant_checks: usize,
}

impl RunResult {
    /// Leading monomials of the nonzero parts.
    pub fn part_lms(&self) -> Vec<Monomial> {
        self.basis
            .members()
            .iter()
            .filter(|m| !m.part.is_zero())
            .map(|m| m.lm())
            .collect()
    }

    pub fn parts(&self) -> Vec<Element> {
        self.basis
            .members()
            .iter()
            .filter(|m| !m.part.is_zero())
            .map(|m| m.part.clone())
            .collect()
    }

    pub fn certificate(&self) -> Certificate {
        faugere_certificate(&self.basis)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ctx = &self.basis.ctx;
        serde_json::json!({
            "basis": self.basis.to_text(),
            "syzygies": self.syzygies.iter().map(|s| s.to_string_with(ctx)).collect::<Vec<_>>(),
            "stats": self.stats,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("limit exceeded: {message}")]
    Limit {
        message: String,
        partial: Box<RunResult>,
    },
    #[error(transparent)]
    Failed(#[from] Error),
}

/// Runs the main loop with default scheduling and no tracing.
pub fn run(input: &SigSet, strategy: Strategy, limits: Limits) -> Result<RunResult, RunError> {
    let mut cfg = RunConfig::new(strategy);
    cfg.limits = limits;
    run_with(input, &cfg)
}

pub fn run_with(input: &SigSet, cfg: &RunConfig) -> Result<RunResult, RunError> {
    if let Strategy::F4(0) = cfg.strategy {
        return Err(Error::InvalidInput("batch size must be positive".into()).into());
    }
    for (k, m) in input.members().iter().enumerate() {
        if m.id != k + 1 {
            return Err(Error::Precondition(format!(
                "input ids must be 1, 2, … in order; found {} at position {}",
                m.id,
                k + 1
            ))
            .into());
        }
    }
    let mut e = Engine::new(input, cfg);
    e.init();
    while !e.queue.is_empty() {
        e.check_limits()?;
        if cfg.check_invariants {
            e.check_invariant();
        }
        match cfg.strategy {
            Strategy::F4(k) => e.batch(k)?,
            _ => e.step()?,
        }
    }
    e.check_limits()?;
    Ok(e.finish())
}

/// Critical pair signatures per member, kept to recheck the invariant.
struct InvariantState {
    pairs: Vec<Vec<Signature>>,
    minimal: Vec<Vec<Signature>>,
    dirty: Vec<bool>,
}

struct Engine<'c> {
    cfg: &'c RunConfig,
    g: SigSet,
    tree: SigTree,
    queue: CriticalQueue,
    stats: Stats,
    trace: Vec<TraceEvent>,
    rng: Option<StdRng>,
    start: Instant,
    inv: InvariantState,
    failures: Vec<InvariantFailure>,
    checks: usize,
}

impl<'c> Engine<'c> {
    fn new(input: &SigSet, cfg: &'c RunConfig) -> Self {
        let g = SigSet::new(input.ctx.clone(), input.sig_order.position, input.sig_order.rank);
        let queue = CriticalQueue::new(input.sig_order, cfg.strategy.pruned());
        let rng = match cfg.schedule {
            Schedule::Random(seed) => Some(StdRng::seed_from_u64(seed)),
            Schedule::Increasing => None,
        };
        let mut e = Engine {
            cfg,
            g,
            tree: SigTree::new(),
            queue,
            stats: Stats {
                complete: true,
                ..Default::default()
            },
            trace: Vec::new(),
            rng,
            start: Instant::now(),
            inv: InvariantState {
                pairs: Vec::new(),
                minimal: Vec::new(),
                dirty: Vec::new(),
            },
            failures: Vec::new(),
            checks: 0,
        };
        for m in input.members() {
            e.g.push_unchecked(m.clone());
        }
        e
    }

    fn sig_text(&self, s: &Signature) -> String {
        s.to_string_with(&self.g.ctx)
    }

    fn mono_text(&self, m: &Monomial) -> String {
        if m.is_zero() {
            "0".into()
        } else {
            m.display(&self.g.ctx.vars).to_string()
        }
    }

    fn init(&mut self) {
        let one = Monomial::one(self.g.ctx.nvars());
        let f4 = matches!(self.cfg.strategy, Strategy::F4(_));
        let members: Vec<SigPair> = self.g.members().to_vec();
        for (i, m) in members.iter().enumerate() {
            let rank = if f4 { 0 } else { i + 1 };
            self.tree.insert(m.clone(), 0, one.clone(), rank);
            let upd = self.queue.update(m, &members[..=i], &self.g.ctx.monoid);
            self.record_update(upd);
        }
    }

    fn record_update(&mut self, upd: QueueUpdate) {
        self.stats.complete &= upd.complete;
        if !self.cfg.trace {
            return;
        }
        for (s, source) in &upd.added {
            let signature = self.sig_text(s);
            self.trace.push(TraceEvent::QueueAdd {
                signature,
                source: *source,
            });
        }
        for s in &upd.pruned {
            let signature = self.sig_text(s);
            self.trace.push(TraceEvent::QueuePrune { signature });
        }
    }

    fn check_limits(&self) -> Result<(), RunError> {
        let lim = &self.cfg.limits;
        let message = if self.stats.insertions > lim.max_insertions {
            format!("more than {} insertions", lim.max_insertions)
        } else if self.start.elapsed().as_secs_f64() > lim.max_seconds {
            format!("more than {} seconds", lim.max_seconds)
        } else {
            return Ok(());
        };
        Err(RunError::Limit {
            message,
            partial: Box::new(self.snapshot()),
        })
    }

    fn pop(&mut self) -> crate::Result<Signature> {
        let s = match self.rng.as_mut() {
            Some(rng) => self.queue.pop_random(rng)?,
            None => self.queue.pop_min()?,
        };
        self.on_pop(&s);
        Ok(s)
    }

    fn on_pop(&mut self, s: &Signature) {
        self.stats.iterations += 1;
        if self.cfg.trace {
            let signature = self.sig_text(s);
            self.trace.push(TraceEvent::Pop { signature });
        }
    }

    fn select(&mut self, sigma: &Signature) -> crate::Result<Selection> {
        let monoid = &self.g.ctx.monoid;
        let sel = match self.cfg.strategy {
            Strategy::InOrder | Strategy::F4(_) => select_reductant_sigtree(sigma, &self.tree, monoid)?,
            Strategy::MinLm | Strategy::F5 | Strategy::F5Pruned => {
                let (m, a) = if self.cfg.strategy == Strategy::MinLm {
                    select_min_lm_in(sigma, self.g.members(), monoid, &self.g.sig_order)?
                } else {
                    select_f5_in(sigma, self.g.members(), monoid)?
                };
                Selection {
                    node: m.id,
                    reductant: m.multiply(&a),
                    multiplier: a,
                }
            }
        };
        if self.cfg.trace {
            let ev = TraceEvent::Select {
                signature: self.sig_text(sigma),
                node: sel.node,
                multiplier: self.mono_text(&sel.multiplier),
                lm: self.mono_text(&sel.reductant.lm()),
            };
            self.trace.push(ev);
        }
        Ok(sel)
    }

    /// Whether the selected reductant is regular-reducible by the basis.
    fn reducible(&mut self, sigma: &Signature, sel: &Selection) -> bool {
        let r = match sel.reductant.part.lm_ref() {
            None => false,
            Some(lm) => find_regular_reducer_in(
                lm,
                sigma,
                self.g.members(),
                &self.g.ctx.monoid,
                &self.g.sig_order,
            )
            .is_some(),
        };
        if !r && self.cfg.trace {
            let ev = TraceEvent::Skip {
                signature: self.sig_text(sigma),
                node: sel.node,
            };
            self.trace.push(ev);
        }
        r
    }

    fn step(&mut self) -> crate::Result<()> {
        let sigma = self.pop()?;
        let sel = self.select(&sigma)?;
        if !self.reducible(&sigma, &sel) {
            return Ok(());
        }
        let (g, steps) = regular_normal_form_in(
            &sel.reductant,
            self.g.members(),
            &self.g.ctx.monoid,
            &self.g.sig_order,
            &self.g.ctx.order,
        );
        let rank = self.tree.next_index();
        let g = self.attach(g, &sel, steps, rank);
        if self.cfg.check_invariants
            && find_regular_reducer_in(&g.lm(), &g.sig, self.g.members(), &self.g.ctx.monoid, &self.g.sig_order)
                .is_some()
        {
            self.failures.push(InvariantFailure {
                iteration: self.stats.iterations,
                signature: g.sig.clone(),
                what: "inserted element is regular-reducible",
            });
        }
        self.g.push_unchecked(g.clone());
        let upd = self.queue.update(&g, self.g.members(), &self.g.ctx.monoid);
        self.record_update(upd);
        Ok(())
    }

    /// Gives `g` the next node index as id and hangs it under the selected
    /// node.
    fn attach(&mut self, mut g: SigPair, sel: &Selection, steps: usize, rank: usize) -> SigPair {
        let id = self.tree.next_index();
        g.id = id;
        self.tree.insert(g.clone(), sel.node, sel.multiplier.clone(), rank);
        self.stats.insertions += 1;
        self.stats.reduction_steps += steps;
        if g.part.is_zero() {
            self.stats.zero_reductions += 1;
        }
        if self.cfg.trace {
            let signature = self.sig_text(&g.sig);
            let lm = self.mono_text(&g.lm());
            self.trace.push(TraceEvent::Reduce {
                signature: signature.clone(),
                lm: lm.clone(),
                steps,
            });
            let multiplier = self.mono_text(&sel.multiplier);
            self.trace.push(TraceEvent::Insert {
                signature,
                node: id,
                parent: sel.node,
                multiplier,
                lm,
                steps,
            });
        }
        g
    }

    fn batch(&mut self, k: usize) -> crate::Result<()> {
        let sigs = self.queue.pop_batch(k)?;
        self.stats.batches += 1;
        let rank = self.stats.batches;
        for s in &sigs {
            self.on_pop(s);
        }
        let mut chosen = Vec::new();
        for s in sigs {
            let sel = self.select(&s)?;
            if self.reducible(&s, &sel) {
                chosen.push((s, sel));
            }
        }
        let mut fresh: Vec<SigPair> = Vec::new();
        for (sigma, sel) in chosen {
            let members = self.g.members();
            let monoid = &self.g.ctx.monoid;
            let order = &self.g.sig_order;
            let one = Monomial::one(self.g.ctx.nvars());
            let (part, steps) = normal_form(sel.reductant.part.clone(), &self.g.ctx.order, |m| {
                if let Some((i, b)) = find_regular_reducer_in(m, &sigma, members, monoid, order) {
                    return Some(Reducer {
                        multiplier: b,
                        element: &members[i].part,
                    });
                }
                fresh
                    .iter()
                    .find(|h| h.part.lm_ref() == Some(m) && order.lt(&h.sig, &sigma))
                    .map(|h| Reducer {
                        multiplier: one.clone(),
                        element: &h.part,
                    })
            });
            let g = SigPair::new(part.monic(), sigma, 0);
            let g = self.attach(g, &sel, steps, rank);
            let monoid = &self.g.ctx.monoid;
            let mut upd = self.queue.update(&g, self.g.members(), monoid);
            for others in [&fresh[..], std::slice::from_ref(&g)] {
                let more = self.queue.update(&g, others, monoid);
                upd.added.extend(more.added);
                upd.pruned.extend(more.pruned);
                upd.complete &= more.complete;
            }
            self.record_update(upd);
            fresh.push(g);
        }
        for g in fresh {
            self.g.push_unchecked(g);
        }
        Ok(())
    }

    /// Invariant (1), or (2) for a pruned queue: every critical signature
    /// is pending (or has a pending divisor) or the basis is a rewrite
    /// basis there.
    fn check_invariant(&mut self) {
        self.checks += 1;
        let members = self.g.members();
        let monoid = &self.g.ctx.monoid;
        let order = &self.g.sig_order;
        let inv = &mut self.inv;
        let old = inv.pairs.len();
        for p in old..members.len() {
            inv.pairs.push(Vec::new());
            inv.minimal.push(Vec::new());
            inv.dirty.push(true);
            for q in 0..=p {
                let s = critical_pair_signatures(&members[p], &members[q], monoid, order);
                inv.pairs[p].extend(s);
                if q != p {
                    let s = critical_pair_signatures(&members[q], &members[p], monoid, order);
                    if !s.is_empty() {
                        inv.pairs[q].extend(s);
                        inv.dirty[q] = true;
                    }
                }
            }
        }
        let mut seen = HashSet::new();
        for f in 0..members.len() {
            if inv.dirty[f] {
                inv.minimal[f] = minimal_by_division(&inv.pairs[f], monoid);
                inv.dirty[f] = false;
            }
            for s in &inv.minimal[f] {
                if !seen.insert(s.clone()) {
                    continue;
                }
                let pending = if self.queue.pruned_mode() {
                    self.queue.has_divisor(s, monoid)
                } else {
                    self.queue.contains(s)
                };
                if !pending && !rewrite_basis_at_in(s, members, monoid, order) {
                    self.failures.push(InvariantFailure {
                        iteration: self.stats.iterations,
                        signature: s.clone(),
                        what: "critical signature neither pending nor rewritten",
                    });
                }
            }
        }
    }

    fn snapshot(&self) -> RunResult {
        let mut stats = self.stats.clone();
        stats.peak_queue = self.queue.peak();
        RunResult {
            basis: self.g.clone(),
            tree: self.tree.clone(),
            syzygies: self.g.syzygy_signatures(),
            stats,
            trace: self.trace.clone(),
            invariant_failures: self.failures.clone(),
            invariant_checks: self.checks,
        }
    }

    fn finish(self) -> RunResult {
        let mut stats = self.stats;
        stats.peak_queue = self.queue.peak();
        RunResult {
            syzygies: self.g.syzygy_signatures(),
            basis: self.g,
            tree: self.tree,
            stats,
            trace: self.trace,
            invariant_failures: self.failures,
            invariant_checks: self.checks,
        }
    }
}
