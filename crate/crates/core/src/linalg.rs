//! Exact echelon forms of finite sets of elements. Rows are sparse elements
//! and the pivot of a row is its leading monomial.

use crate::element::{full_normal_form, Element, Reducer};
use crate::monomial::Monomial;
use crate::order::TermOrder;
use std::collections::HashMap;

/// An incremental row echelon form with pairwise distinct pivots.
#[derive(Clone, Debug)]
pub struct Echelon {
    order: TermOrder,
    rows: HashMap<Monomial, Element>,
}

impl Echelon {
    pub fn new(order: TermOrder) -> Self {
        Echelon {
            order,
            rows: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, m: &Monomial) -> bool {
        self.rows.contains_key(m)
    }

    /// The pivots in decreasing order.
    pub fn pivots(&self) -> Vec<Monomial> {
        let mut p: Vec<Monomial> = self.rows.keys().cloned().collect();
        p.sort_by(|a, b| self.order.cmp(b, a));
        p
    }

    /// The remainder of `f` modulo the span: no term of it is a pivot. It
    /// is linear in `f` and zero exactly on the span.
    pub fn reduce(&self, f: Element) -> Element {
        full_normal_form(f, &self.order, |m| {
            self.rows.get(m).map(|r| Reducer {
                multiplier: Monomial::one(m.width()),
                element: r,
            })
        })
        .0
    }

    /// Adds a row; returns the new pivot when the rank grows.
    pub fn insert(&mut self, f: Element) -> Option<Monomial> {
        let r = self.reduce(f);
        let lm = r.lm_ref()?.clone();
        self.rows.insert(lm.clone(), r.monic());
        Some(lm)
    }

    pub fn contains(&self, f: &Element) -> bool {
        self.reduce(f.clone()).is_zero()
    }
}

/// Leading monomials of the span of `elems`, in decreasing order.
pub fn bounded_span_pivots(elems: &[Element], order: &TermOrder) -> Vec<Monomial> {
    let mut e = Echelon::new(*order);
    for f in elems {
        e.insert(f.clone());
    }
    e.pivots()
}

/// Whether `f` is a linear combination of `elems`.
pub fn membership_bounded(f: &Element, elems: &[Element], order: &TermOrder) -> bool {
    let mut e = Echelon::new(*order);
    for g in elems {
        e.insert(g.clone());
    }
    e.contains(f)
}
