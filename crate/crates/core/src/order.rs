//! Monomial orders.
//!
//! Variables are ranked by declaration order: the first declared variable is
//! the smallest. Degrevlex compares total degree first and breaks ties by the
//! exponent of the smallest variable, a larger exponent there making the
//! monomial smaller.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarOrder {
    Lex,
    DegRevLex,
}

impl ScalarOrder {
    /// Compares index-free exponent vectors of equal width.
    #[inline]
    pub fn cmp_exps(self, a: &Monomial, b: &Monomial) -> Ordering {
        let (x, y) = (a.exps(), b.exps());
        match self {
            ScalarOrder::DegRevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for (p, q) in x.iter().zip(y) {
                    if p != q {
                        return q.cmp(p);
                    }
                }
                Ordering::Equal
            }
            ScalarOrder::Lex => {
                for (p, q) in x.iter().zip(y).rev() {
                    if p != q {
                        return p.cmp(q);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl fmt::Display for ScalarOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarOrder::Lex => "lex",
            ScalarOrder::DegRevLex => "degrevlex",
        })
    }
}

impl FromStr for ScalarOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lex" | "plex" => Ok(ScalarOrder::Lex),
            "degrevlex" | "grevlex" | "drl" => Ok(ScalarOrder::DegRevLex),
            _ => Err(Error::InvalidInput(format!("unknown monomial order `{s}`"))),
        }
    }
}

/// Position-over-term or term-over-position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Pot,
    Top,
}

impl Position {
    /// Combines an index comparison with a term comparison.
    #[inline]
    pub fn combine(self, index: Ordering, term: impl FnOnce() -> Ordering) -> Ordering {
        match self {
            Position::Pot => index.then_with(term),
            Position::Top => term().then(index),
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::Pot => "pot",
            Position::Top => "top",
        })
    }
}

impl FromStr for Position {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pot" => Ok(Position::Pot),
            "top" => Ok(Position::Top),
            _ => Err(Error::InvalidInput(format!("unknown position order `{s}`"))),
        }
    }
}

/// Order on the monomials of the ambient space `M`: a scalar order for a
/// polynomial ring, or a POT/TOP module order of a given rank for `K[x]^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub scalar: ScalarOrder,
    pub module: Option<(Position, u32)>,
}

impl TermOrder {
    pub fn ring(scalar: ScalarOrder) -> Self {
        TermOrder {
            scalar,
            module: None,
        }
    }

    pub fn module(scalar: ScalarOrder, position: Position, rank: u32) -> Self {
        TermOrder {
            scalar,
            module: Some((position, rank)),
        }
    }

    /// Unchecked comparison for hot paths. The zero monomial is minimal.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        match self.module {
            None => self.scalar.cmp_exps(a, b),
            Some((pos, _)) => pos.combine(a.index().cmp(&b.index()), || {
                self.scalar.cmp_exps(a, b)
            }),
        }
    }

    /// Checked comparison: widths must agree and indices must be present
    /// exactly in the module setting, within the declared rank.
    pub fn compare(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Result<Ordering> {
        for m in [a, b] {
            self.check(m, nvars)?;
        }
        Ok(self.cmp(a, b))
    }

    pub fn check(&self, m: &Monomial, nvars: usize) -> Result<()> {
        if m.is_zero() {
            return Ok(());
        }
        if m.width() != nvars {
            return Err(Error::Structure(format!(
                "monomial width {} differs from variable count {nvars}",
                m.width()
            )));
        }
        match (self.module, m.index()) {
            (None, None) => Ok(()),
            (Some((_, rank)), Some(i)) if i >= 1 && i <= rank => Ok(()),
            (Some((_, rank)), Some(i)) => Err(Error::Structure(format!(
                "module index {i} outside 1..={rank}"
            ))),
            (None, Some(_)) => Err(Error::Structure(
                "module index on a ring monomial".into(),
            )),
            (Some(_), None) => Err(Error::Structure(
                "module monomial without an index".into(),
            )),
        }
    }
}
