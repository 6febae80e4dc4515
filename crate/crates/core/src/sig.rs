//! Sigpairs, prebases, regular reduction, domination and the classification
//! of signatures.

use crate::context::Context;
use crate::element::{normal_form, Element, Reducer};
use crate::error::{Error, Result};
use crate::monoid::MonoidSpec;
use crate::monomial::Monomial;
use crate::order::{Position, TermOrder};
use std::cmp::Ordering;
use std::fmt;

/// A signature monomial `m ⊗ e_pos` of `S = M^r`, where `m` is a monomial
/// of the part module `M`. The zero signature has a zero term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub term: Monomial,
    pub pos: u32,
}

impl Signature {
    pub fn new(term: Monomial, pos: u32) -> Self {
        assert!(pos >= 1, "signature positions are 1-based");
        Signature { term, pos }
    }

    pub fn is_zero(&self) -> bool {
        self.term.is_zero()
    }

    pub fn mul(&self, a: &Monomial) -> Signature {
        Signature {
            term: self.term.mul(a),
            pos: self.pos,
        }
    }

    pub fn degree(&self) -> u32 {
        self.term.degree()
    }

    /// Renders as `x^2*y^5*e_2`, with a part index written `E_j`.
    pub fn to_string_with(&self, ctx: &Context) -> String {
        if self.term.is_zero() {
            return "0".into();
        }
        let t = self.term.display(&ctx.vars).with_index_prefix("E").to_string();
        if t == "1" {
            format!("e_{}", self.pos)
        } else {
            format!("{t}*e_{}", self.pos)
        }
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}⊗e{}", self.term, self.pos)
    }
}

/// POT or TOP order on `S = M^rank` over the order of `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigOrder {
    pub term_order: TermOrder,
    pub position: Position,
    pub rank: u32,
}

impl SigOrder {
    #[inline]
    pub fn cmp(&self, a: &Signature, b: &Signature) -> Ordering {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        self.position
            .combine(a.pos.cmp(&b.pos), || self.term_order.cmp(&a.term, &b.term))
    }

    #[inline]
    pub fn lt(&self, a: &Signature, b: &Signature) -> bool {
        self.cmp(a, b) == Ordering::Less
    }
}

/// The `a ∈ A` with `a·s = t`, if any.
#[inline]
pub fn sig_divide(monoid: &MonoidSpec, s: &Signature, t: &Signature) -> Option<Monomial> {
    if s.pos != t.pos || s.is_zero() || t.is_zero() {
        return None;
    }
    monoid.divide(&s.term, &t.term)
}

#[inline]
pub fn sig_divides(monoid: &MonoidSpec, s: &Signature, t: &Signature) -> bool {
    s.pos == t.pos && !s.is_zero() && !t.is_zero() && monoid.divides(&s.term, &t.term)
}

#[derive(Clone, PartialEq, Eq)]
pub struct SigPair {
    pub part: Element,
    pub sig: Signature,
    pub id: usize,
}

impl SigPair {
    pub fn new(part: Element, sig: Signature, id: usize) -> Self {
        SigPair { part, sig, id }
    }

    /// `a·f = (a·f♮, a·sig f)`; the id is kept.
    pub fn multiply(&self, a: &Monomial) -> SigPair {
        SigPair {
            part: self.part.mul_monomial(a),
            sig: self.sig.mul(a),
            id: self.id,
        }
    }

    pub fn lm(&self) -> Monomial {
        self.part.lm()
    }

    pub fn is_syzygy(&self) -> bool {
        self.part.is_zero()
    }

    pub fn to_string_with(&self, ctx: &Context) -> String {
        format!(
            "{} @ {}",
            self.part.display(&ctx.vars),
            self.sig.to_string_with(ctx)
        )
    }
}

impl fmt::Debug for SigPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{} ({:?} @ {:?})", self.id, self.part, self.sig)
    }
}

/// A sigset sharing one part context and one signature order.
#[derive(Clone, Debug)]
pub struct SigSet {
    pub ctx: Context,
    pub sig_order: SigOrder,
    members: Vec<SigPair>,
}

impl SigSet {
    pub fn new(ctx: Context, position: Position, rank: u32) -> Self {
        let sig_order = SigOrder {
            term_order: ctx.order,
            position,
            rank,
        };
        SigSet {
            ctx,
            sig_order,
            members: Vec::new(),
        }
    }

    pub fn members(&self) -> &[SigPair] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn monoid(&self) -> &MonoidSpec {
        &self.ctx.monoid
    }

    pub fn get(&self, id: usize) -> Option<&SigPair> {
        self.members.iter().find(|m| m.id == id)
    }

    pub fn next_id(&self) -> usize {
        self.members.iter().map(|m| m.id + 1).max().unwrap_or(1)
    }

    /// Appends a sigpair after checking its context and id.
    pub fn push(&mut self, f: SigPair) -> Result<()> {
        self.validate(&f)?;
        if self.members.iter().any(|m| m.id == f.id) {
            return Err(Error::Structure(format!("duplicate sigpair id {}", f.id)));
        }
        self.members.push(f);
        Ok(())
    }

    pub(crate) fn push_unchecked(&mut self, f: SigPair) {
        self.members.push(f);
    }

    fn validate(&self, f: &SigPair) -> Result<()> {
        if f.sig.is_zero() {
            return Err(Error::Structure("zero signature".into()));
        }
        if f.sig.pos > self.sig_order.rank {
            return Err(Error::Structure(format!(
                "signature position {} exceeds rank {}",
                f.sig.pos, self.sig_order.rank
            )));
        }
        self.ctx.check_monomial(&f.sig.term)?;
        for t in f.part.terms() {
            self.ctx.check_monomial(&t.mono)?;
        }
        f.part.check(&self.ctx.order)
    }

    pub fn syzygy_signatures(&self) -> Vec<Signature> {
        syzygy_signatures(&self.members)
    }

    pub fn to_text(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|m| m.to_string_with(&self.ctx))
            .collect()
    }
}

fn check_generators(gens: &[Element], ctx: &Context) -> Result<()> {
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::InvalidInput(format!("generator {} is zero", i + 1)));
        }
        g.check(&ctx.order)?;
        for t in g.terms() {
            ctx.check_monomial(&t.mono)?;
        }
    }
    Ok(())
}

/// `{(gᵢ, lm gᵢ ⊗ eᵢ)}`: distinct positions make this a prebasis.
pub fn make_prebasis_shifted(ctx: &Context, gens: &[Element], position: Position) -> Result<SigSet> {
    check_generators(gens, ctx)?;
    let mut s = SigSet::new(ctx.clone(), position, gens.len() as u32);
    for (i, g) in gens.iter().enumerate() {
        let sig = Signature::new(g.lm(), i as u32 + 1);
        s.push_unchecked(SigPair::new(g.monic(), sig, i + 1));
    }
    Ok(s)
}

/// `{(gᵢ, 1 ⊗ eᵢ)}`; needs an identity monomial in the part module.
pub fn make_prebasis_unshifted(ctx: &Context, gens: &[Element], position: Position) -> Result<SigSet> {
    if ctx.module_rank().is_some() {
        return Err(Error::Unsupported(
            "unshifted signatures need an identity monomial; the module setting has none".into(),
        ));
    }
    check_generators(gens, ctx)?;
    let mut s = SigSet::new(ctx.clone(), position, gens.len() as u32);
    let one = Monomial::one(ctx.nvars());
    for (i, g) in gens.iter().enumerate() {
        let sig = Signature::new(one.clone(), i as u32 + 1);
        s.push_unchecked(SigPair::new(g.monic(), sig, i + 1));
    }
    Ok(s)
}

/// `{(g, lm g ⊗ e₁)} ∪ {(h, lm h ⊗ e₂)}` for Gröbner bases `G` and `H`.
pub fn make_prebasis_sum(ctx: &Context, g: &[Element], h: &[Element], position: Position) -> Result<SigSet> {
    check_generators(g, ctx)?;
    check_generators(h, ctx)?;
    let mut s = SigSet::new(ctx.clone(), position, 2);
    let mut id = 1;
    for (pos, part) in [(1, g), (2, h)] {
        for e in part {
            s.push_unchecked(SigPair::new(e.monic(), Signature::new(e.lm(), pos), id));
            id += 1;
        }
    }
    Ok(s)
}

/// The regular reducer of `target` at signature `sigma` among `members`:
/// `(index, b)` with `b·lm g♮ = target` and `b·sig g < sigma`, choosing the
/// smallest `b·sig g` and then the smallest id.
pub fn find_regular_reducer_in(
    target: &Monomial,
    sigma: &Signature,
    members: &[SigPair],
    monoid: &MonoidSpec,
    order: &SigOrder,
) -> Option<(usize, Monomial)> {
    if target.is_zero() {
        return None;
    }
    let mut best: Option<(usize, Monomial, Signature)> = None;
    for (k, g) in members.iter().enumerate() {
        let Some(lm) = g.part.lm_ref() else { continue };
        if !lm.divides_raw(target) {
            continue;
        }
        let Some(b) = monoid.divide(lm, target) else {
            continue;
        };
        let s = g.sig.mul(&b);
        if !order.lt(&s, sigma) {
            continue;
        }
        let better = match &best {
            None => true,
            Some((bk, _, bs)) => match order.cmp(&s, bs) {
                Ordering::Less => true,
                Ordering::Equal => g.id < members[*bk].id,
                Ordering::Greater => false,
            },
        };
        if better {
            best = Some((k, b, s));
        }
    }
    best.map(|(k, b, _)| (k, b))
}

pub fn find_regular_reducer<'a>(
    target: &Monomial,
    sigma: &Signature,
    g: &'a SigSet,
) -> Option<(&'a SigPair, Monomial)> {
    find_regular_reducer_in(target, sigma, &g.members, g.monoid(), &g.sig_order)
        .map(|(k, b)| (&g.members[k], b))
}

/// Whether the multiple `a·f` (given by its leading monomial and signature)
/// admits a regular top reduction.
pub fn is_regular_reducible(lm: &Monomial, sigma: &Signature, g: &SigSet) -> bool {
    find_regular_reducer(lm, sigma, g).is_some()
}

/// Regular normal form in the signature of `f`, renormalized monic, with the
/// number of reduction steps.
pub fn regular_normal_form(f: &SigPair, g: &SigSet) -> (SigPair, usize) {
    regular_normal_form_in(f, &g.members, g.monoid(), &g.sig_order, &g.ctx.order)
}

pub(crate) fn regular_normal_form_in(
    f: &SigPair,
    members: &[SigPair],
    monoid: &MonoidSpec,
    order: &SigOrder,
    part_order: &TermOrder,
) -> (SigPair, usize) {
    let (part, steps) = normal_form(f.part.clone(), part_order, |m| {
        find_regular_reducer_in(m, &f.sig, members, monoid, order).map(|(k, b)| Reducer {
            multiplier: b,
            element: &members[k].part,
        })
    });
    (
        SigPair {
            part: part.monic(),
            sig: f.sig.clone(),
            id: f.id,
        },
        steps,
    )
}

/// Domination `g ⊑ f` (either D1 or D2).
pub fn dominates(g: &SigPair, f: &SigPair, monoid: &MonoidSpec, order: &SigOrder) -> bool {
    dominates_d1(g, f, monoid, order) || dominates_d2(g, f, monoid, order)
}

/// D1: `a·sig g = sig f` and `a·lm g ≤ lm f`.
pub fn dominates_d1(g: &SigPair, f: &SigPair, monoid: &MonoidSpec, order: &SigOrder) -> bool {
    let Some(a) = sig_divide(monoid, &g.sig, &f.sig) else {
        return false;
    };
    order.term_order.cmp(&g.lm().mul(&a), &f.lm()) != Ordering::Greater
}

/// D2: `a·sig g < sig f` and `a·lm g = lm f ≠ 0`.
pub fn dominates_d2(g: &SigPair, f: &SigPair, monoid: &MonoidSpec, order: &SigOrder) -> bool {
    let (Some(lg), Some(lf)) = (g.part.lm_ref(), f.part.lm_ref()) else {
        return false;
    };
    match monoid.divide(lg, lf) {
        Some(a) => order.lt(&g.sig.mul(&a), &f.sig),
        None => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SigClass {
    Empty,
    Regular,
    Syzygy,
}

/// Classification of `sigma` relative to a certified rewrite basis: empty
/// when no member signature divides it, syzygy when a zero-part member's
/// does, regular otherwise.
pub fn classify_signature(sigma: &Signature, g: &SigSet) -> SigClass {
    let mut nonempty = false;
    for m in g.members() {
        if sig_divides(g.monoid(), &m.sig, sigma) {
            if m.part.is_zero() {
                return SigClass::Syzygy;
            }
            nonempty = true;
        }
    }
    if nonempty {
        SigClass::Regular
    } else {
        SigClass::Empty
    }
}

pub fn syzygy_signatures(members: &[SigPair]) -> Vec<Signature> {
    members
        .iter()
        .filter(|m| m.part.is_zero())
        .map(|m| m.sig.clone())
        .collect()
}

/// Members strictly dominated by another member (dominated without
/// dominating back). Informational only: the certified path keeps them.
pub fn redundancy_report(g: &SigSet) -> Vec<usize> {
    let ms = g.members();
    ms.iter()
        .filter(|f| {
            ms.iter().any(|h| {
                h.id != f.id
                    && dominates(h, f, g.monoid(), &g.sig_order)
                    && !dominates(f, h, g.monoid(), &g.sig_order)
            })
        })
        .map(|f| f.id)
        .collect()
}
