mod common;

use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use sigbasis::engine::{select_reductant_sigtree, validate_sigtree, RunConfig, Schedule};
use sigbasis::problem::SigInit;
use sigbasis::verify::{
    bounded_signature_basis_check, buchberger, interreduce, lm_ideal_equal, s_pairs_reduce_to_zero,
};
use sigbasis::{
    classify_signature, make_prebasis_shifted, make_prebasis_unshifted, regular_normal_form, run_with, Context, Element,
    Field, Monomial, Position, SigClass, SigSet,
};

fn engines() -> Vec<sigbasis::Strategy> {
    STRATEGIES.iter().copied().chain([sigbasis::Strategy::F4(1)]).collect()
}

fn gf() -> Context {
    xyz().with_field(Field::prime(32003).unwrap())
}

fn system(ctx: Context) -> impl proptest::strategy::Strategy<Value = Vec<Element>> {
    prop::collection::vec(element(ctx, 4, 3), 1..=3)
}

fn prebases(ctx: &Context, gens: &[Element]) -> Vec<(String, SigSet)> {
    let mut out = Vec::new();
    for p in POSITIONS {
        out.push((format!("{p} shifted"), make_prebasis_shifted(ctx, gens, p).unwrap()));
        out.push((format!("{p} unshifted"), make_prebasis_unshifted(ctx, gens, p).unwrap()));
    }
    out
}

fn check_system(ctx: &Context, gens: &[Element]) -> Result<(), TestCaseError> {
    let gb = buchberger(gens, ctx).unwrap();
    for (label, input) in prebases(ctx, gens) {
        for strategy in engines() {
            let mut cfg = RunConfig::new(strategy);
            cfg.check_invariants = true;
            let r = run_with(&input, &cfg).unwrap();
            let label = format!("{label} {strategy}");
            prop_assert!(r.certificate().pass, "{}", label);
            prop_assert!(validate_sigtree(&r.tree, &r.basis).is_empty(), "{}", label);
            prop_assert!(r.invariant_failures.is_empty(), "{}: {:?}", label, r.invariant_failures);
            prop_assert!(lm_ideal_equal(&r.part_lms(), &gb.lms(), &ctx.monoid), "{}", label);
            prop_assert_eq!(interreduce(&r.parts(), ctx), gb.elements.clone(), "{}", label);
            for m in r.basis.members() {
                prop_assert!(m.part.is_zero() || m.part.lc().unwrap().is_one());
                if m.part.is_zero() {
                    prop_assert_eq!(classify_signature(&m.sig, &r.basis), SigClass::Syzygy);
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn strategies_agree_with_the_oracle_mod_p(gens in system(gf())) {
        check_system(&gf(), &gens)?;
    }

    #[test]
    fn strategies_agree_with_the_oracle_over_q(gens in system(xyz())) {
        check_system(&xyz(), &gens)?;
    }

    #[test]
    fn outputs_are_signature_bases_to_degree_six(gens in system(gf())) {
        let ctx = gf();
        let input = make_prebasis_shifted(&ctx, &gens, Position::Top).unwrap();
        let r = run_with(&input, &RunConfig::new(sigbasis::Strategy::F5)).unwrap();
        let report = bounded_signature_basis_check(&r.basis, 6, 200_000).unwrap();
        prop_assert!(report.pass(), "{:?}", report.violations);
    }

    #[test]
    fn random_schedules_reach_the_same_ideal(gens in system(gf()), seed in any::<u64>()) {
        let ctx = gf();
        let gb = buchberger(&gens, &ctx).unwrap();
        let input = make_prebasis_shifted(&ctx, &gens, Position::Pot).unwrap();
        for strategy in STRATEGIES {
            let mut cfg = RunConfig::new(strategy);
            cfg.schedule = Schedule::Random(seed);
            cfg.check_invariants = true;
            let r = run_with(&input, &cfg).unwrap();
            prop_assert!(r.certificate().pass);
            prop_assert!(r.invariant_failures.is_empty());
            prop_assert!(lm_ideal_equal(&r.part_lms(), &gb.lms(), &ctx.monoid));
        }
    }

    #[test]
    fn oracle_is_closed_and_order_independent(gens in system(gf())) {
        let ctx = gf();
        let gb = buchberger(&gens, &ctx).unwrap();
        prop_assert!(s_pairs_reduce_to_zero(&gb.elements, &ctx).unwrap());
        let mut rev = gens.clone();
        rev.reverse();
        prop_assert_eq!(buchberger(&rev, &ctx).unwrap(), gb);
    }

    #[test]
    fn lm_ideal_equality_is_an_equivalence(
        xs in prop::collection::vec(prop::collection::vec(0u32..=3, 3), 1..=5),
        ys in prop::collection::vec(prop::collection::vec(0u32..=3, 3), 1..=5),
        extra in prop::collection::vec(0u32..=2, 3),
    ) {
        let full = sigbasis::MonoidSpec::Full;
        let x: Vec<Monomial> = xs.iter().map(|e| Monomial::from_slice(e)).collect();
        let y: Vec<Monomial> = ys.iter().map(|e| Monomial::from_slice(e)).collect();
        let mut same = x.clone();
        same.push(x[0].mul(&Monomial::from_slice(&extra)));
        same.reverse();
        let mut again = same.clone();
        again.push(x[x.len() - 1].mul(&Monomial::from_slice(&extra)));
        prop_assert!(lm_ideal_equal(&x, &x, &full));
        prop_assert_eq!(lm_ideal_equal(&x, &y, &full), lm_ideal_equal(&y, &x, &full));
        prop_assert!(lm_ideal_equal(&x, &same, &full) && lm_ideal_equal(&same, &again, &full));
        prop_assert!(lm_ideal_equal(&x, &again, &full));
        if lm_ideal_equal(&x, &y, &full) {
            prop_assert!(lm_ideal_equal(&y, &again, &full));
        }
    }
}

/// On a finished rewrite basis, descending a sigtree whose children were
/// visited in any order selects reductants that reduce to the same leading
/// monomial.
#[test]
fn child_order_does_not_change_reduced_leading_monomials() {
    for system in ["mora", "katsura4"] {
        for init in INITS {
            let input = prebasis(system, Position::Top, init);
            let r = run_with(&input, &RunConfig::new(sigbasis::Strategy::InOrder)).unwrap();
            let g = &r.basis;
            let n = g.ctx.nvars();
            let mut targets = Vec::new();
            for m in g.members() {
                for t in sigbasis::monomial::monomials_up_to(n, 2) {
                    targets.push(m.sig.mul(&t));
                }
            }
            let reference: Vec<Monomial> = targets
                .iter()
                .map(|s| {
                    let sel = select_reductant_sigtree(s, &r.tree, g.monoid()).unwrap();
                    regular_normal_form(&sel.reductant, g).0.lm()
                })
                .collect();
            for seed in 0..8 {
                let mut tree = r.tree.clone();
                tree.shuffle_children(&mut StdRng::seed_from_u64(seed));
                for (s, want) in targets.iter().zip(&reference) {
                    let sel = select_reductant_sigtree(s, &tree, g.monoid()).unwrap();
                    assert_eq!(&sel.reductant.sig, s);
                    assert_eq!(&regular_normal_form(&sel.reductant, g).0.lm(), want, "{system} {init} seed {seed}");
                }
            }
        }
    }
}

#[test]
fn sum_initialization_reaches_the_oracle_ideal() {
    for system in ["mora", "katsura4", "katsura5"] {
        let spec = sigbasis::builtin(system).unwrap();
        let ctx = spec.context().unwrap();
        let gb = buchberger(&spec.elements(&ctx).unwrap(), &ctx).unwrap();
        for position in POSITIONS {
            let input = spec.prebasis(position, SigInit::Sum).unwrap();
            for strategy in STRATEGIES {
                let mut cfg = RunConfig::new(strategy);
                cfg.check_invariants = true;
                let r = run_with(&input, &cfg).unwrap();
                assert!(r.certificate().pass, "{system} {position} {strategy}");
                assert!(r.invariant_failures.is_empty(), "{system} {position} {strategy}");
                assert!(lm_ideal_equal(&r.part_lms(), &gb.lms(), &ctx.monoid));
            }
        }
    }
}
