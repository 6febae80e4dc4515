#![allow(dead_code)]

use sigbasis::problem::{builtin, SigInit};
use sigbasis::verify::Fixture;
use sigbasis::{Context, Element, Monomial, Position, SigSet, Strategy};
use std::path::PathBuf;

pub const SYSTEMS: [&str; 4] = ["mora", "katsura4", "katsura5", "katsura6"];
pub const STRATEGIES: [Strategy; 5] = [
    Strategy::InOrder,
    Strategy::MinLm,
    Strategy::F5,
    Strategy::F5Pruned,
    Strategy::F4(4),
];
pub const POSITIONS: [Position; 2] = [Position::Pot, Position::Top];
pub const INITS: [SigInit; 2] = [SigInit::Shifted, SigInit::Unshifted];

pub fn fixture_path(system: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(format!("{system}.json"))
}

/// The oracle's leading monomials for a builtin, checked to belong to the
/// same ring declaration.
pub fn oracle_lms(system: &str, ctx: &Context) -> Vec<Monomial> {
    let fx = Fixture::load(&fixture_path(system)).expect("fixture present");
    assert_eq!(fx.order, format!("{} {}", ctx.order.scalar, ctx.vars.join(" ")));
    assert_eq!(fx.field, ctx.field.to_string());
    fx.lms(ctx).expect("fixture parses")
}

pub fn prebasis(system: &str, position: Position, init: SigInit) -> SigSet {
    builtin(system).unwrap().prebasis(position, init).unwrap()
}

pub fn mora() -> SigSet {
    prebasis("mora", Position::Top, SigInit::Shifted)
}

pub fn mora_gens() -> (Context, Vec<Element>) {
    let spec = builtin("mora").unwrap();
    let ctx = spec.context().unwrap();
    let gens = spec.elements(&ctx).unwrap();
    (ctx, gens)
}

/// Elements of the ring of `ctx` with at most `terms` terms of degree at
/// most `deg` and small integer coefficients; never zero.
pub fn element(ctx: Context, terms: usize, deg: u32) -> impl proptest::strategy::Strategy<Value = Element> {
    use proptest::prelude::*;
    let n = ctx.nvars();
    prop::collection::vec((prop::collection::vec(0..=deg, n), -4i64..=4), 1..=terms)
        .prop_map(move |ts| {
            let terms = ts
                .into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= deg)
                .map(|(e, c)| sigbasis::Term {
                    mono: Monomial::from_slice(&e),
                    coeff: ctx.field.from_i64(c),
                })
                .collect();
            Element::from_terms(terms, &ctx.order)
        })
        .prop_filter("nonzero", |e| !e.is_zero())
}

pub fn xyz() -> Context {
    Context::ring(&["z", "y", "x"], sigbasis::ScalarOrder::DegRevLex)
}
