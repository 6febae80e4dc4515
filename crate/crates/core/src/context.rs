//! The ambient monomial module: variable names, order, coefficient field and
//! acting monoid.

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::monoid::MonoidSpec;
use crate::monomial::Monomial;
use crate::order::{Position, ScalarOrder, TermOrder};
use std::cmp::Ordering;

/// Declarations shared by every element of a computation. Parts of sigpairs
/// live in `K[x]` (ring setting) or `K[x]^R` (module setting); the monoid
/// acting on them is `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    pub vars: Vec<String>,
    pub order: TermOrder,
    pub field: Field,
    pub monoid: MonoidSpec,
}

impl Context {
    pub fn new(vars: Vec<String>, order: TermOrder, field: Field, monoid: MonoidSpec) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::InvalidInput(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable `{v}`")));
            }
        }
        if let Some((_, rank)) = order.module {
            if rank == 0 {
                return Err(Error::InvalidInput("module rank must be positive".into()));
            }
        }
        Ok(Context {
            vars,
            order,
            field,
            monoid,
        })
    }

    /// `K[x]` over the rationals with the full monoid.
    pub fn ring(vars: &[&str], scalar: ScalarOrder) -> Self {
        Self::new(
            vars.iter().map(|s| s.to_string()).collect(),
            TermOrder::ring(scalar),
            Field::Rationals,
            MonoidSpec::Full,
        )
        .expect("valid ring declaration")
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    pub fn with_monoid(mut self, monoid: MonoidSpec) -> Self {
        self.monoid = monoid;
        self
    }

    pub fn with_module(mut self, position: Position, rank: u32) -> Self {
        self.order = TermOrder::module(self.order.scalar, position, rank);
        self
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    /// Rank of the module of parts; `None` for the ring setting.
    pub fn module_rank(&self) -> Option<u32> {
        self.order.module.map(|(_, r)| r)
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<()> {
        self.order.check(m, self.nvars())
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub(crate) fn valid_name(v: &str) -> bool {
    let mut chars = v.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}
