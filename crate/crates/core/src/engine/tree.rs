//! Sigtrees: the provenance forest of a run, reductant selection by descent
//! and the well-formedness conditions T1–T4.

use crate::error::{Error, Result};
use crate::monoid::MonoidSpec;
use crate::monomial::Monomial;
use crate::sig::{find_regular_reducer_in, sig_divide, SigOrder, SigPair, SigSet, Signature};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;

/// One node. The virtual root at index 0 has no label.
#[derive(Clone, Debug)]
pub struct Node {
    pub label: Option<SigPair>,
    pub rank: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// The `a` with `a·sig(parent) = sig(self)`; the identity for roots.
    pub multiplier: Monomial,
}

#[derive(Clone, Debug)]
pub struct SigTree {
    nodes: Vec<Node>,
}

impl SigTree {
    pub fn new() -> Self {
        SigTree {
            nodes: vec![Node {
                label: None,
                rank: 0,
                parent: None,
                children: Vec::new(),
                multiplier: Monomial::zero(),
            }],
        }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, k: usize) -> &Node {
        &self.nodes[k]
    }

    /// Number of labelled nodes.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn label(&self, k: usize) -> Option<&SigPair> {
        self.nodes.get(k).and_then(|n| n.label.as_ref())
    }

    pub fn next_index(&self) -> usize {
        self.nodes.len()
    }

    pub fn roots(&self) -> &[usize] {
        &self.nodes[0].children
    }

    /// Appends a node under `parent` (0 for a root) and returns its index.
    pub fn insert(&mut self, label: SigPair, parent: usize, multiplier: Monomial, rank: usize) -> usize {
        let k = self.nodes.len();
        self.nodes.push(Node {
            label: Some(label),
            rank,
            parent: Some(parent),
            children: Vec::new(),
            multiplier,
        });
        self.nodes[parent].children.push(k);
        k
    }

    /// Labels of the proper ancestors of `k`, virtual root excluded.
    pub fn ancestors(&self, k: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.nodes[k].parent;
        while let Some(p) = cur {
            if p == 0 {
                break;
            }
            out.push(p);
            cur = self.nodes[p].parent;
        }
        out
    }

    /// Randomly permutes every child list; selection must not depend on it.
    pub fn shuffle_children<R: Rng>(&mut self, rng: &mut R) {
        for n in &mut self.nodes {
            n.children.shuffle(rng);
        }
    }

    /// Root signature times the product of the edge multipliers on the path.
    pub fn path_signature(&self, k: usize) -> Option<Signature> {
        let mut prod: Option<Monomial> = None;
        let mut cur = k;
        loop {
            let n = &self.nodes[cur];
            let parent = n.parent?;
            if parent == 0 {
                let root = n.label.as_ref()?.sig.clone();
                return Some(match prod {
                    Some(a) => root.mul(&a),
                    None => root,
                });
            }
            prod = Some(match prod {
                Some(a) => a.mul(&n.multiplier),
                None => n.multiplier.clone(),
            });
            cur = parent;
        }
    }
}

impl Default for SigTree {
    fn default() -> Self {
        SigTree::new()
    }
}

/// A selected reductant `a·L[node]`.
#[derive(Clone, Debug)]
pub struct Selection {
    pub node: usize,
    pub multiplier: Monomial,
    pub reductant: SigPair,
}

/// Descends from the virtual root, moving to the first child whose
/// signature divides `sigma`, until no child does.
pub fn select_reductant_sigtree(sigma: &Signature, tree: &SigTree, monoid: &MonoidSpec) -> Result<Selection> {
    let mut k = 0;
    'descend: loop {
        for &c in &tree.nodes[k].children {
            let l = tree.nodes[c].label.as_ref().expect("labelled child");
            if sig_divide(monoid, &l.sig, sigma).is_some() {
                k = c;
                continue 'descend;
            }
        }
        break;
    }
    if k == 0 {
        return Err(Error::Precondition(format!(
            "no root signature divides {sigma:?}"
        )));
    }
    let label = tree.nodes[k].label.as_ref().expect("labelled node");
    let a = sig_divide(monoid, &label.sig, sigma).expect("descent invariant");
    Ok(Selection {
        node: k,
        reductant: label.multiply(&a),
        multiplier: a,
    })
}

/// F5 selection: the most recent member whose signature divides `sigma`,
/// stopping early at a zero-part member.
pub fn select_reductant_f5<'a>(sigma: &Signature, g: &'a SigSet) -> Result<(&'a SigPair, Monomial)> {
    select_f5_in(sigma, g.members(), g.monoid())
}

pub(crate) fn select_f5_in<'a>(
    sigma: &Signature,
    members: &'a [SigPair],
    monoid: &MonoidSpec,
) -> Result<(&'a SigPair, Monomial)> {
    let mut best: Option<(&SigPair, Monomial)> = None;
    for m in members {
        if let Some(a) = sig_divide(monoid, &m.sig, sigma) {
            let zero = m.part.is_zero();
            best = Some((m, a));
            if zero {
                break;
            }
        }
    }
    best.ok_or_else(|| Error::Precondition(format!("no member signature divides {sigma:?}")))
}

/// Minimal `lm(a·g♮)` over the members with `a·sig g = sigma`, ties to the
/// smallest id.
pub(crate) fn select_min_lm_in<'a>(
    sigma: &Signature,
    members: &'a [SigPair],
    monoid: &MonoidSpec,
    order: &SigOrder,
) -> Result<(&'a SigPair, Monomial)> {
    let mut best: Option<(&SigPair, Monomial, Monomial)> = None;
    for m in members {
        let Some(a) = sig_divide(monoid, &m.sig, sigma) else {
            continue;
        };
        let lm = m.lm().mul(&a);
        let better = match &best {
            None => true,
            Some((b, _, blm)) => match order.term_order.cmp(&lm, blm) {
                Ordering::Less => true,
                Ordering::Equal => m.id < b.id,
                Ordering::Greater => false,
            },
        };
        if better {
            best = Some((m, a, lm));
        }
    }
    best.map(|(m, a, _)| (m, a))
        .ok_or_else(|| Error::Precondition(format!("no member signature divides {sigma:?}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    T1,
    T2,
    T3,
    T4,
    Label,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub node: usize,
    pub rule: Rule,
    pub detail: String,
}

/// Checks T1–T4 on every node and that the labels are the members of `g`
/// with the same ids. T4 is checked as rank growth along edges, which
/// with integer ranks bounds every rank level by the number of insertions.
pub fn validate_sigtree(tree: &SigTree, g: &SigSet) -> Vec<Violation> {
    let monoid = g.monoid();
    let order = &g.sig_order;
    let mut out = Vec::new();
    let mut v = |node, rule, detail: String| out.push(Violation { node, rule, detail });
    for (k, n) in tree.nodes.iter().enumerate().skip(1) {
        let Some(label) = n.label.as_ref() else {
            v(k, Rule::Label, "unlabelled node".into());
            continue;
        };
        if g.get(label.id).map(|m| m != label).unwrap_or(true) || label.id != k {
            v(k, Rule::Label, format!("label id {} does not match the basis", label.id));
        }
        let parent = n.parent.unwrap_or(0);
        if parent != 0 {
            let p = &tree.nodes[parent];
            let pl = p.label.as_ref().expect("labelled parent");
            if pl.sig.mul(&n.multiplier) != label.sig {
                v(k, Rule::T1, "edge multiplier does not carry the parent signature".into());
            } else {
                let alm = pl.lm().mul(&n.multiplier);
                if pl.part.is_zero() || order.term_order.cmp(&label.lm(), &alm) != Ordering::Less {
                    v(k, Rule::T1, "leading monomial did not decrease".into());
                }
            }
            if p.rank >= n.rank {
                v(k, Rule::T4, format!("rank {} not above parent rank {}", n.rank, p.rank));
            }
        }
        let ancestors: Vec<SigPair> = tree
            .ancestors(k)
            .into_iter()
            .filter_map(|a| tree.nodes[a].label.clone())
            .collect();
        if find_regular_reducer_in(&label.lm(), &label.sig, &ancestors, monoid, order).is_some() {
            v(k, Rule::T2, "regular-reducible by an ancestor".into());
        }
    }
    for (k, n) in tree.nodes.iter().enumerate().skip(1) {
        for &p in &n.children {
            for &q in &n.children {
                let (np, nq) = (&tree.nodes[p], &tree.nodes[q]);
                if np.rank < nq.rank {
                    let (lp, lq) = (np.label.as_ref().unwrap(), nq.label.as_ref().unwrap());
                    if sig_divide(monoid, &lp.sig, &lq.sig).is_some() {
                        v(q, Rule::T3, format!("older sibling {p} divides the signature (parent {k})"));
                    }
                }
            }
        }
    }
    out
}
