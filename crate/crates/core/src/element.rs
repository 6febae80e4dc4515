//! Sparse elements of the monomial module and top reduction.

use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::order::TermOrder;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// A finite combination of monomials with nonzero coefficients, sorted
/// strictly descending by the order it was built with.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    terms: Vec<Term>,
}

/// A reducer admitted for a given leading monomial: the multiple
/// `multiplier · element` has exactly that leading monomial.
pub struct Reducer<'a> {
    pub multiplier: Monomial,
    pub element: &'a Element,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: Vec::new() }
    }

    /// Builds an element from arbitrary terms, merging duplicates and
    /// dropping zero coefficients.
    pub fn from_terms(mut terms: Vec<Term>, order: &TermOrder) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if t.mono.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = last.coeff.add(&t.coeff);
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !t.coeff.is_zero() {
                        out.push(t);
                    }
                }
            }
        }
        Element { terms: out }
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        if c.is_zero() || m.is_zero() {
            return Self::zero();
        }
        Element {
            terms: vec![Term { mono: m, coeff: c }],
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial; the zero monomial for the zero element.
    pub fn lm(&self) -> Monomial {
        self.terms
            .first()
            .map(|t| t.mono.clone())
            .unwrap_or_else(Monomial::zero)
    }

    pub fn lm_ref(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn lc(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Largest total degree among the support.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    pub fn field(&self) -> Option<Field> {
        self.lc().map(Coeff::field)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.clone(),
                    coeff: t.coeff.mul(c),
                })
                .collect(),
        }
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    /// Multiplication by an index-free monomial; the order is preserved
    /// because the action is compatible with it.
    pub fn mul_monomial(&self, a: &Monomial) -> Self {
        if a.is_one() {
            return self.clone();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.mul(a),
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Element, order: &TermOrder) -> Self {
        self.merge(other, None, None, order)
    }

    pub fn sub(&self, other: &Element, order: &TermOrder) -> Self {
        let m1 = other.lc().map(|c| c.field().from_i64(-1));
        self.merge(other, m1.as_ref(), None, order)
    }

    /// `self + c · a · g` in one pass.
    pub fn add_scaled_multiple(&self, c: &Coeff, a: &Monomial, g: &Element, order: &TermOrder) -> Self {
        self.merge(g, Some(c), Some(a), order)
    }

    fn merge(&self, g: &Element, c: Option<&Coeff>, a: Option<&Monomial>, order: &TermOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |t: &Term| -> Term {
            Term {
                mono: match a {
                    Some(a) if !a.is_one() => t.mono.mul(a),
                    _ => t.mono.clone(),
                },
                coeff: match c {
                    Some(c) => t.coeff.mul(c),
                    None => t.coeff.clone(),
                },
            }
        };
        let mut pending: Option<Term> = g.terms.first().map(&shifted);
        while i < self.terms.len() || pending.is_some() {
            let ord = match (&pending, self.terms.get(i)) {
                (None, _) => Ordering::Greater,
                (Some(_), None) => Ordering::Less,
                (Some(p), Some(t)) => order.cmp(&t.mono, &p.mono),
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().expect("pending term"));
                    j += 1;
                    pending = g.terms.get(j).map(&shifted);
                }
                Ordering::Equal => {
                    let p = pending.take().expect("pending term");
                    let s = self.terms[i].coeff.add(&p.coeff);
                    if !s.is_zero() {
                        out.push(Term {
                            mono: p.mono,
                            coeff: s,
                        });
                    }
                    i += 1;
                    j += 1;
                    pending = g.terms.get(j).map(&shifted);
                }
            }
        }
        Element { terms: out }
    }

    /// Verifies the sortedness and nonzero-coefficient invariants.
    pub fn check(&self, order: &TermOrder) -> Result<()> {
        for t in &self.terms {
            if t.coeff.is_zero() {
                return Err(Error::Structure("zero coefficient in support".into()));
            }
        }
        for w in self.terms.windows(2) {
            if order.cmp(&w[0].mono, &w[1].mono) != Ordering::Greater {
                return Err(Error::Structure("terms not strictly descending".into()));
            }
        }
        Ok(())
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> ElementDisplay<'a> {
        ElementDisplay {
            element: self,
            vars,
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{:?}*{:?}", t.coeff, t.mono)?;
        }
        Ok(())
    }
}

pub struct ElementDisplay<'a> {
    element: &'a Element,
    vars: &'a [String],
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = &self.element.terms;
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = if neg { t.coeff.neg() } else { t.coeff.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = t
                .mono
                .display(self.vars)
                .to_string();
            if abs.is_one() {
                write!(f, "{mono}")?;
            } else if mono == "1" {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// One top-reduction step `f − λe`, where `λ` cancels the leading terms.
pub fn top_reduce_step(f: &Element, e: &Element, order: &TermOrder) -> Result<Element> {
    let (Some(lf), Some(le)) = (f.terms.first(), e.terms.first()) else {
        return Err(Error::Precondition(
            "top reduction of or by the zero element".into(),
        ));
    };
    if lf.mono != le.mono {
        return Err(Error::Precondition(
            "top reduction requires equal leading monomials".into(),
        ));
    }
    let lambda = lf.coeff.div(&le.coeff);
    let one = Monomial::one(lf.mono.width());
    Ok(f.add_scaled_multiple(&lambda.neg(), &one, e, order))
}

/// Repeated top reduction with the reducers the admission procedure hands
/// out. Returns the normal form and the number of steps taken.
pub fn normal_form<'a, F>(f: Element, order: &TermOrder, mut admit: F) -> (Element, usize)
where
    F: FnMut(&Monomial) -> Option<Reducer<'a>>,
{
    let mut f = f;
    let mut steps = 0;
    loop {
        let Some(lead) = f.terms.first() else {
            return (f, steps);
        };
        let Some(r) = admit(&lead.mono) else {
            return (f, steps);
        };
        let rl = r.element.terms.first().expect("nonzero reducer");
        debug_assert!(rl.mono.mul(&r.multiplier) == lead.mono);
        let lambda = lead.coeff.div(&rl.coeff).neg();
        f = f.add_scaled_multiple(&lambda, &r.multiplier, r.element, order);
        steps += 1;
    }
}

/// Like [`normal_form`], but keeps reducing below irreducible leading
/// terms until no term of the result is admitted.
pub fn full_normal_form<'a, F>(f: Element, order: &TermOrder, mut admit: F) -> (Element, usize)
where
    F: FnMut(&Monomial) -> Option<Reducer<'a>>,
{
    let mut rest = f;
    let mut done: Vec<Term> = Vec::new();
    let mut steps = 0;
    loop {
        let Some(lead) = rest.terms.first() else {
            return (Element { terms: done }, steps);
        };
        match admit(&lead.mono) {
            Some(r) => {
                let rl = r.element.terms.first().expect("nonzero reducer");
                let lambda = lead.coeff.div(&rl.coeff).neg();
                rest = rest.add_scaled_multiple(&lambda, &r.multiplier, r.element, order);
                steps += 1;
            }
            None => done.push(rest.terms.remove(0)),
        }
    }
}
