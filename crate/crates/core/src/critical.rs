//! Critical sets of sigsets and the queue of pending signatures.

use crate::error::{Error, Result};
use crate::monoid::MonoidSpec;
use crate::sig::{sig_divides, SigOrder, SigPair, Signature};
use rand::Rng;
use std::cmp::Ordering;
use std::collections::HashMap;

/// `Σ(f, {g})` together with the completeness flag of the underlying
/// common-multiple search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSignatures {
    pub signatures: Vec<Signature>,
    pub complete: bool,
}

/// The signatures `a·sig f` at which a multiple of `f` first becomes
/// regular-reducible by a multiple of `g`.
pub fn critical_pair_signatures(f: &SigPair, g: &SigPair, monoid: &MonoidSpec, order: &SigOrder) -> Vec<Signature> {
    critical_pair_signatures_checked(f, g, monoid, order).signatures
}

pub fn critical_pair_signatures_checked(
    f: &SigPair,
    g: &SigPair,
    monoid: &MonoidSpec,
    order: &SigOrder,
) -> PairSignatures {
    let (Some(lf), Some(lg)) = (f.part.lm_ref(), g.part.lm_ref()) else {
        return PairSignatures {
            signatures: vec![],
            complete: true,
        };
    };
    let mcm = monoid
        .minimal_common_multiples(lf, lg)
        .expect("nonzero leading monomials");
    let mut out: Vec<Signature> = Vec::new();
    for (a, b) in &mcm.pairs {
        let sa = f.sig.mul(a);
        if order.lt(&g.sig.mul(b), &sa) && !out.contains(&sa) {
            out.push(sa);
        }
    }
    out.sort_by(|x, y| order.cmp(x, y));
    PairSignatures {
        signatures: out,
        complete: mcm.complete,
    }
}

/// Keeps the elements not properly divided by another element.
pub fn minimal_by_division(sigs: &[Signature], monoid: &MonoidSpec) -> Vec<Signature> {
    let mut out: Vec<Signature> = Vec::new();
    for s in sigs {
        if out.contains(s) {
            continue;
        }
        let dominated = sigs
            .iter()
            .any(|t| t != s && sig_divides(monoid, t, s));
        if !dominated {
            out.push(s.clone());
        }
    }
    out
}

/// `Σ(f, G)`: the divisibility-minimal members of `∪_g Σ(f, {g})`.
pub fn critical_set_of(f: &SigPair, members: &[SigPair], monoid: &MonoidSpec, order: &SigOrder) -> Vec<Signature> {
    let mut all = Vec::new();
    for g in members {
        all.extend(critical_pair_signatures(f, g, monoid, order));
    }
    let mut m = minimal_by_division(&all, monoid);
    m.sort_by(|x, y| order.cmp(x, y));
    m
}

/// `Σ(G) = ∪_f Σ(f, G)`, sorted increasingly.
pub fn critical_set(members: &[SigPair], monoid: &MonoidSpec, order: &SigOrder) -> Vec<Signature> {
    let mut out: Vec<Signature> = Vec::new();
    for f in members {
        for s in critical_set_of(f, members, monoid, order) {
            if let Err(k) = out.binary_search_by(|x| order.cmp(x, &s)) {
                out.insert(k, s);
            }
        }
    }
    out
}

/// Effect of a queue update, reported for tracing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueueUpdate {
    pub added: Vec<(Signature, (usize, usize))>,
    pub pruned: Vec<Signature>,
    pub complete: bool,
}

/// Pending signatures, deduplicated and sorted increasingly. In pruned mode
/// no member properly divides another one.
#[derive(Clone, Debug)]
pub struct CriticalQueue {
    pending: Vec<Signature>,
    order: SigOrder,
    pruned_mode: bool,
    sources: HashMap<Signature, (usize, usize)>,
    peak: usize,
}

impl CriticalQueue {
    pub fn new(order: SigOrder, pruned_mode: bool) -> Self {
        CriticalQueue {
            pending: Vec::new(),
            order,
            pruned_mode,
            sources: HashMap::new(),
            peak: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.pending.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }

    pub fn pruned_mode(&self) -> bool {
        self.pruned_mode
    }

    pub fn peak(&self) -> usize {
        self.peak
    }

    pub fn pending(&self) -> &[Signature] {
        &self.pending
    }

    pub fn contains(&self, s: &Signature) -> bool {
        self.find(s).is_ok()
    }

    /// Whether some member divides `s` (`s` itself included).
    pub fn has_divisor(&self, s: &Signature, monoid: &MonoidSpec) -> bool {
        self.pending.iter().any(|t| sig_divides(monoid, t, s))
    }

    /// The pair `(f, g)` ids that first produced `s`.
    pub fn source(&self, s: &Signature) -> Option<(usize, usize)> {
        self.sources.get(s).copied()
    }

    fn find(&self, s: &Signature) -> std::result::Result<usize, usize> {
        self.pending.binary_search_by(|x| self.order.cmp(x, s))
    }

    /// Inserts one signature. Returns whether it was added and the members
    /// it pruned.
    pub fn insert(&mut self, s: Signature, source: (usize, usize), monoid: &MonoidSpec) -> (bool, Vec<Signature>) {
        let k = match self.find(&s) {
            Ok(_) => return (false, vec![]),
            Err(k) => k,
        };
        let mut pruned = Vec::new();
        if self.pruned_mode {
            if self.pending.iter().any(|t| sig_divides(monoid, t, &s)) {
                return (false, vec![s]);
            }
            self.pending.retain(|t| {
                let keep = !sig_divides(monoid, &s, t);
                if !keep {
                    pruned.push(t.clone());
                }
                keep
            });
            for t in &pruned {
                self.sources.remove(t);
            }
            let k = self.find(&s).expect_err("absent");
            self.pending.insert(k, s.clone());
        } else {
            self.pending.insert(k, s.clone());
        }
        self.sources.entry(s).or_insert(source);
        self.peak = self.peak.max(self.pending.len());
        (true, pruned)
    }

    /// Adds `Σ(g, h) ∪ Σ(h, g)` for every `h` in `others`.
    pub fn update(&mut self, g: &SigPair, others: &[SigPair], monoid: &MonoidSpec) -> QueueUpdate {
        let mut upd = QueueUpdate {
            complete: true,
            ..Default::default()
        };
        let order = self.order;
        for h in others {
            for (f, k) in [(g, h), (h, g)] {
                let ps = critical_pair_signatures_checked(f, k, monoid, &order);
                upd.complete &= ps.complete;
                for s in ps.signatures {
                    let src = (f.id, k.id);
                    let (added, pruned) = self.insert(s.clone(), src, monoid);
                    if added {
                        upd.added.push((s, src));
                    }
                    upd.pruned.extend(pruned);
                }
            }
        }
        upd
    }

    fn take(&mut self, k: usize) -> Signature {
        let s = self.pending.remove(k);
        self.sources.remove(&s);
        s
    }

    pub fn pop_min(&mut self) -> Result<Signature> {
        if self.pending.is_empty() {
            return Err(Error::Precondition("pop from an empty queue".into()));
        }
        Ok(self.take(0))
    }

    /// The `k` smallest members in increasing order.
    pub fn pop_batch(&mut self, k: usize) -> Result<Vec<Signature>> {
        if self.pending.is_empty() {
            return Err(Error::Precondition("pop from an empty queue".into()));
        }
        if k == 0 {
            return Err(Error::Precondition("batch size must be positive".into()));
        }
        let n = k.min(self.pending.len());
        let out: Vec<Signature> = self.pending.drain(..n).collect();
        for s in &out {
            self.sources.remove(s);
        }
        Ok(out)
    }

    /// A uniformly random member; used to exercise out-of-order schedules.
    pub fn pop_random<R: Rng>(&mut self, rng: &mut R) -> Result<Signature> {
        if self.pending.is_empty() {
            return Err(Error::Precondition("pop from an empty queue".into()));
        }
        let k = rng.gen_range(0..self.pending.len());
        Ok(self.take(k))
    }

    pub fn cmp(&self, a: &Signature, b: &Signature) -> Ordering {
        self.order.cmp(a, b)
    }
}
