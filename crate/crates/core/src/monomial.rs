//! Monomials of polynomial rings and free modules.
//!
//! Exponent vectors are stored in declaration order of the variables; the
//! first declared variable is the smallest one for every order in
//! [`crate::order`]. A module monomial additionally carries a 1-based index.

use smallvec::SmallVec;
use std::fmt;

pub type Exponents = SmallVec<[u32; 8]>;

/// A monomial `x^α` or `x^α e_i`, or the distinguished zero monomial.
///
/// The zero monomial is the leading monomial of the zero element and sits
/// strictly below every other monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    index: Option<u32>,
    degree: u32,
    zero: bool,
}

impl Monomial {
    pub fn new(exps: impl Into<Exponents>, index: Option<u32>) -> Self {
        let exps = exps.into();
        assert!(index != Some(0), "module indices are 1-based");
        let degree = exps
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .expect("exponent overflow");
        Monomial {
            exps,
            index,
            degree,
            zero: false,
        }
    }

    pub fn from_slice(exps: &[u32]) -> Self {
        Self::new(Exponents::from_slice(exps), None)
    }

    pub fn one(nvars: usize) -> Self {
        Self::new(Exponents::from_elem(0, nvars), None)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = Exponents::from_elem(0, nvars);
        exps[i] = 1;
        Self::new(exps, None)
    }

    pub fn zero() -> Self {
        Monomial {
            exps: Exponents::new(),
            index: None,
            degree: 0,
            zero: true,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// True for the identity monomial (index-free, all exponents zero).
    pub fn is_one(&self) -> bool {
        !self.zero && self.index.is_none() && self.degree == 0
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn index(&self) -> Option<u32> {
        self.index
    }

    /// Total degree; the module index does not contribute.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn width(&self) -> usize {
        self.exps.len()
    }

    pub fn with_index(&self, index: Option<u32>) -> Self {
        if self.zero {
            return self.clone();
        }
        Monomial::new(self.exps.clone(), index)
    }

    /// Index-free copy.
    pub fn term(&self) -> Self {
        self.with_index(None)
    }

    /// Action of an index-free monomial `a` on `self`. Zero stays zero.
    pub fn mul(&self, a: &Monomial) -> Monomial {
        debug_assert!(a.index.is_none(), "multiplier must be index-free");
        if self.zero || a.zero {
            return Monomial::zero();
        }
        debug_assert_eq!(self.exps.len(), a.exps.len());
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&a.exps)
            .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
            .collect();
        let degree = self
            .degree
            .checked_add(a.degree)
            .expect("exponent overflow");
        Monomial {
            exps,
            index: self.index,
            degree,
            zero: false,
        }
    }

    /// Componentwise divisibility in ℕⁿ with matching indices.
    #[inline]
    pub fn divides_raw(&self, n: &Monomial) -> bool {
        !self.zero
            && !n.zero
            && self.index == n.index
            && self.degree <= n.degree
            && self.exps.iter().zip(&n.exps).all(|(a, b)| a <= b)
    }

    /// The index-free `q` with `q * self = n` in ℕⁿ, ignoring monoid membership.
    pub fn quotient_raw(&self, n: &Monomial) -> Option<Monomial> {
        if !self.divides_raw(n) {
            return None;
        }
        let exps: Exponents = n.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Some(Monomial {
            exps,
            index: None,
            degree: n.degree - self.degree,
            zero: false,
        })
    }

    /// Componentwise maximum; `None` when the indices differ or either is zero.
    pub fn lcm_raw(&self, n: &Monomial) -> Option<Monomial> {
        if self.zero || n.zero || self.index != n.index {
            return None;
        }
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&n.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Some(Monomial::new(exps, self.index))
    }

    /// Renders with the given variable names, largest variable first.
    pub fn display<'a>(&'a self, vars: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay {
            mono: self,
            vars,
            index_prefix: "e",
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        write!(f, "{:?}", self.exps.as_slice())?;
        if let Some(i) = self.index {
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a [String],
    index_prefix: &'a str,
}

impl<'a> MonomialDisplay<'a> {
    pub(crate) fn with_index_prefix(mut self, prefix: &'a str) -> Self {
        self.index_prefix = prefix;
        self
    }
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.mono;
        if m.zero {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &e) in m.exps.iter().enumerate().rev() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = self.vars.get(i).map(String::as_str).unwrap_or("?");
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if let Some(idx) = m.index {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}_{idx}", self.index_prefix)?;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All index-free exponent vectors of total degree `d` in `n` variables, in a
/// fixed deterministic order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur.clone(), None));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut cur = Exponents::from_elem(0, n);
    rec(0, d, &mut cur, &mut out);
    out
}

/// All index-free monomials of total degree at most `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}
