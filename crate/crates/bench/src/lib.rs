//! Shared workloads for the benchmarks.

use sigbasis::problem::{builtin, SigInit};
use sigbasis::{Context, Element, Position, SigSet};

/// The prebasis of a builtin system.
pub fn prebasis(system: &str, position: Position, init: SigInit) -> SigSet {
    builtin(system)
        .and_then(|spec| spec.prebasis(position, init))
        .unwrap_or_else(|e| panic!("{system}: {e}"))
}

/// The context and generators of a builtin system.
pub fn generators(system: &str) -> (Context, Vec<Element>) {
    let spec = builtin(system).unwrap_or_else(|e| panic!("{system}: {e}"));
    let ctx = spec.context().expect("builtin context");
    let gens = spec.elements(&ctx).expect("builtin generators");
    (ctx, gens)
}
