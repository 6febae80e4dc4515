//! Independent ground truth: a plain Buchberger completion, leading-monomial
//! ideal comparison and bounded linear-algebra checks of signature bases,
//! syzygies and prebases.

use crate::context::Context;
use crate::element::{full_normal_form, Element, Reducer};
use crate::engine::RunResult;
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::monoid::MonoidSpec;
use crate::monomial::{monomials_up_to, Monomial};
use crate::parse::{parse_element, parse_monomial};
use crate::sig::{sig_divides, SigOrder, SigPair, SigSet, Signature};
use serde::{Deserialize, Serialize};
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::path::Path;

/// A Gröbner basis: monic elements sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub elements: Vec<Element>,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn lms(&self) -> Vec<Monomial> {
        self.elements.iter().map(Element::lm).collect()
    }
}

/// Full reduction of `f` by the monoid multiples of `basis`, first reducer
/// in list order.
pub fn reduce_by(f: Element, basis: &[Element], ctx: &Context) -> Element {
    full_normal_form(f, &ctx.order, |m| {
        basis.iter().find_map(|g| {
            let a = ctx.monoid.divide(g.lm_ref()?, m)?;
            Some(Reducer {
                multiplier: a,
                element: g,
            })
        })
    })
    .0
}

/// The S-polynomials `a·f − b·g`, one per minimal common multiple.
fn s_polynomials(f: &Element, g: &Element, ctx: &Context) -> Result<Vec<Element>> {
    let (Some(lf), Some(lg)) = (f.lm_ref(), g.lm_ref()) else {
        return Ok(vec![]);
    };
    let mcm = ctx.monoid.minimal_common_multiples(lf, lg)?;
    let (cf, cg) = (f.lc().unwrap(), g.lc().unwrap());
    Ok(mcm
        .pairs
        .iter()
        .map(|(a, b)| {
            f.mul_monomial(a)
                .scale(&cf.inv())
                .add_scaled_multiple(&cg.inv().neg(), b, g, &ctx.order)
        })
        .collect())
}

/// Buchberger completion with the normal selection strategy (smallest
/// common-multiple degree first) and no pair criteria, followed by
/// inter-reduction.
pub fn buchberger(gens: &[Element], ctx: &Context) -> Result<GroebnerBasis> {
    buchberger_capped(gens, ctx, 100_000)
}

pub fn buchberger_capped(gens: &[Element], ctx: &Context, max_elements: usize) -> Result<GroebnerBasis> {
    let mut basis: Vec<Element> = Vec::new();
    let mut pairs: BinaryHeap<Reverse<(u32, usize, usize, usize)>> = BinaryHeap::new();
    let mut seq = 0;
    let mut add = |basis: &mut Vec<Element>, pairs: &mut BinaryHeap<_>, f: Element| -> Result<()> {
        let f = f.monic();
        let lf = f.lm();
        for (i, g) in basis.iter().enumerate() {
            let lcm_deg = lf.lcm_raw(&g.lm()).map(|l| l.degree()).unwrap_or(0);
            pairs.push(Reverse((lcm_deg, seq, i, basis.len())));
            seq += 1;
        }
        basis.push(f);
        if basis.len() > max_elements {
            return Err(Error::Limit(format!("more than {max_elements} basis elements")));
        }
        Ok(())
    };
    for g in gens {
        let r = reduce_by(g.clone(), &basis, ctx);
        if !r.is_zero() {
            add(&mut basis, &mut pairs, r)?;
        }
    }
    while let Some(Reverse((_, _, i, j))) = pairs.pop() {
        for s in s_polynomials(&basis[i], &basis[j], ctx)? {
            let r = reduce_by(s, &basis, ctx);
            if !r.is_zero() {
                add(&mut basis, &mut pairs, r)?;
            }
        }
    }
    Ok(GroebnerBasis {
        elements: interreduce(&basis, ctx),
        reduced: true,
    })
}

/// Drops elements whose leading monomial is a multiple of another one and
/// fully reduces the rest; turns a Gröbner basis into the reduced one.
pub fn interreduce(basis: &[Element], ctx: &Context) -> Vec<Element> {
    let mut keep: Vec<Element> = Vec::new();
    for (i, f) in basis.iter().enumerate() {
        let Some(lf) = f.lm_ref() else { continue };
        let redundant = basis.iter().enumerate().any(|(j, g)| {
            let Some(lg) = g.lm_ref() else { return false };
            j != i && ctx.monoid.divides(lg, lf) && (lg != lf || j < i)
        });
        if !redundant {
            keep.push(f.monic());
        }
    }
    let mut out: Vec<Element> = (0..keep.len())
        .map(|i| {
            let others: Vec<Element> = keep
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let f = &keep[i];
            let lead = Element::monomial(f.lm(), f.lc().unwrap().clone());
            let tail = f.sub(&lead, &ctx.order);
            lead.add(&reduce_by(tail, &others, ctx), &ctx.order).monic()
        })
        .collect();
    out.sort_by(|a, b| ctx.order.cmp(&a.lm(), &b.lm()));
    out
}

/// Whether every S-polynomial of `basis` reduces to zero over it.
pub fn s_pairs_reduce_to_zero(basis: &[Element], ctx: &Context) -> Result<bool> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            for s in s_polynomials(&basis[i], &basis[j], ctx)? {
                if !reduce_by(s, basis, ctx).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether every member of `a` is divisible by a member of `b` and vice
/// versa.
pub fn lm_ideal_equal(a: &[Monomial], b: &[Monomial], monoid: &MonoidSpec) -> bool {
    let covered = |xs: &[Monomial], ys: &[Monomial]| xs.iter().all(|x| ys.iter().any(|y| monoid.divides(y, x)));
    covered(a, b) && covered(b, a)
}

/// All multiples `(t·sig g, t·g)` of nonzero-part members with total
/// degree at most `d`, sorted by signature.
fn multiples(g: &SigSet, d: u32, cap: usize) -> Result<Vec<(Signature, Element)>> {
    let n = g.ctx.nvars();
    let mut out = Vec::new();
    for m in g.members() {
        if m.part.is_zero() || m.part.degree() > d {
            continue;
        }
        for t in monomials_up_to(n, d - m.part.degree()) {
            if !g.monoid().member(&t) {
                continue;
            }
            out.push((m.sig.mul(&t), m.part.mul_monomial(&t)));
            if out.len() > cap {
                return Err(Error::Limit(format!("more than {cap} multiples below degree {d}")));
            }
        }
    }
    let order = g.sig_order;
    out.sort_by(|a, b| order.cmp(&a.0, &b.0));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureBasisReport {
    pub signatures: usize,
    /// Signatures with an echelon pivot that is no admissible leading
    /// monomial, together with that pivot.
    pub violations: Vec<(Signature, Monomial)>,
}

impl SignatureBasisReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, signature by signature up to total degree `d`, that the span of
/// the multiples of signature at most σ has only admissible pivots. Sound
/// for degree-compatible orders.
pub fn bounded_signature_basis_check(g: &SigSet, d: u32, cap: usize) -> Result<SignatureBasisReport> {
    let rows = multiples(g, d, cap)?;
    let mut ech = Echelon::new(g.ctx.order);
    let mut admissible = std::collections::HashSet::new();
    let mut report = SignatureBasisReport {
        signatures: 0,
        violations: vec![],
    };
    let mut k = 0;
    while k < rows.len() {
        let sigma = rows[k].0.clone();
        let mut fresh = Vec::new();
        while k < rows.len() && rows[k].0 == sigma {
            admissible.insert(rows[k].1.lm());
            if let Some(p) = ech.insert(rows[k].1.clone()) {
                fresh.push(p);
            }
            k += 1;
        }
        report.signatures += 1;
        for p in fresh {
            if !admissible.contains(&p) {
                report.violations.push((sigma.clone(), p));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyReport {
    pub kernel_lms: Vec<Signature>,
    pub uncovered: Vec<Signature>,
}

impl SyzygyReport {
    pub fn pass(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Leading signatures of the kernel of `Σ cᵢ·(input part i)` restricted to
/// multiples of total degree at most `d`, each of which must be divisible
/// by a syzygy signature of `result`.
pub fn bounded_syzygy_check(input: &SigSet, result: &RunResult, d: u32, cap: usize) -> Result<SyzygyReport> {
    let mut positions: Vec<u32> = input.members().iter().map(|m| m.sig.pos).collect();
    positions.sort_unstable();
    positions.dedup();
    if positions.len() != input.len() {
        return Err(Error::Unsupported(
            "the syzygy check needs one input element per position".into(),
        ));
    }
    let rows = multiples(input, d, cap)?;
    let mut ech = Echelon::new(input.ctx.order);
    let mut kernel_lms = Vec::new();
    for (sigma, f) in rows {
        if ech.insert(f).is_none() {
            kernel_lms.push(sigma);
        }
    }
    let uncovered = kernel_lms
        .iter()
        .filter(|s| !result.syzygies.iter().any(|z| sig_divides(input.monoid(), z, s)))
        .cloned()
        .collect();
    Ok(SyzygyReport {
        kernel_lms,
        uncovered,
    })
}

/// P2 at one signature: every multiple of signature `sigma` equals a
/// nonzero scalar times the first one, modulo the degree-`d` span of the
/// multiples of smaller signature. Vacuously true below two multiples.
pub fn prebasis_spotcheck_p2(g: &SigSet, sigma: &Signature, d: u32, cap: usize) -> Result<bool> {
    let rows = multiples_all(g, d, cap)?;
    let order: SigOrder = g.sig_order;
    let mut ech = Echelon::new(g.ctx.order);
    let mut at = Vec::new();
    for (s, f) in rows {
        match order.cmp(&s, sigma) {
            Ordering::Less => {
                ech.insert(f);
            }
            Ordering::Equal => at.push(f),
            Ordering::Greater => {}
        }
    }
    if at.len() < 2 {
        return Ok(true);
    }
    let first = ech.reduce(at[0].clone());
    for f in &at[1..] {
        let r = ech.reduce(f.clone());
        let ok = match (first.lc(), r.lc()) {
            (None, None) => true,
            (Some(c0), Some(c1)) => {
                let lambda = c0.div(c1);
                first.sub(&r.scale(&lambda), &g.ctx.order).is_zero()
            }
            _ => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Like [`multiples`] but keeping zero parts, which still realize their
/// signature.
fn multiples_all(g: &SigSet, d: u32, cap: usize) -> Result<Vec<(Signature, Element)>> {
    let n = g.ctx.nvars();
    let mut out = Vec::new();
    for m in g.members() {
        let deg = if m.part.is_zero() { 0 } else { m.part.degree() };
        if deg > d {
            continue;
        }
        for t in monomials_up_to(n, d - deg) {
            if g.monoid().member(&t) {
                out.push((m.sig.mul(&t), m.part.mul_monomial(&t)));
            }
            if out.len() > cap {
                return Err(Error::Limit(format!("more than {cap} multiples below degree {d}")));
            }
        }
    }
    Ok(out)
}

/// Members whose signature equals `sigma` after multiplication, as
/// explicit multiples; used to pick P2 test signatures.
pub fn realizations(g: &SigSet, sigma: &Signature) -> Vec<(SigPair, Monomial)> {
    g.members()
        .iter()
        .filter_map(|m| {
            crate::sig::sig_divide(g.monoid(), &m.sig, sigma).map(|a| (m.clone(), a))
        })
        .collect()
}

/// A frozen oracle result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub system: String,
    pub order: String,
    pub field: String,
    pub reduced_basis: Vec<String>,
    pub lm_set: Vec<String>,
}

impl Fixture {
    pub fn new(system: &str, ctx: &Context, gb: &GroebnerBasis) -> Self {
        Fixture {
            system: system.into(),
            order: format!("{} {}", ctx.order.scalar, ctx.vars.join(" ")),
            field: ctx.field.to_string(),
            reduced_basis: gb
                .elements
                .iter()
                .map(|e| e.display(&ctx.vars).to_string())
                .collect(),
            lm_set: gb
                .elements
                .iter()
                .map(|e| e.lm().display(&ctx.vars).to_string())
                .collect(),
        }
    }

    pub fn basis(&self, ctx: &Context) -> Result<Vec<Element>> {
        self.reduced_basis.iter().map(|s| parse_element(s, ctx)).collect()
    }

    pub fn lms(&self, ctx: &Context) -> Result<Vec<Monomial>> {
        self.lm_set.iter().map(|s| parse_monomial(s, ctx)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixtures serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("fixture: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run, Limits, Strategy};
    use crate::order::{Position, ScalarOrder};
    use crate::parse::parse_signature;
    use crate::sig::make_prebasis_shifted;

    fn mora_ctx() -> Context {
        Context::ring(&["y", "x"], ScalarOrder::DegRevLex)
    }

    fn els(c: &Context, xs: &[&str]) -> Vec<Element> {
        xs.iter().map(|s| parse_element(s, c).unwrap()).collect()
    }

    fn mora_gens() -> Vec<Element> {
        els(&mora_ctx(), &["x^2*y^2 - 1", "y^5 - x^2*y", "x^5 - x*y^2"])
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let c = Context::ring(&["x"], ScalarOrder::DegRevLex);
        let gb = buchberger(&els(&c, &["x - 1"]), &c).unwrap();
        assert_eq!(gb.elements, els(&c, &["x - 1"]));
    }

    #[test]
    fn mora_basis_is_closed_and_order_independent() {
        let c = mora_ctx();
        let g = mora_gens();
        let gb = buchberger(&g, &c).unwrap();
        assert!(s_pairs_reduce_to_zero(&gb.elements, &c).unwrap());
        let mut rev = g.clone();
        rev.reverse();
        assert_eq!(buchberger(&rev, &c).unwrap(), gb);
        for f in &g {
            assert!(reduce_by(f.clone(), &gb.elements, &c).is_zero());
        }
    }

    #[test]
    fn lm_ideal_comparison() {
        let c = mora_ctx();
        let m = |s: &str| parse_monomial(s, &c).unwrap();
        let full = MonoidSpec::Full;
        assert!(lm_ideal_equal(&[m("x^2"), m("x^3")], &[m("x^2")], &full));
        assert!(!lm_ideal_equal(&[m("x^2*y^2")], &[m("x*y")], &full));
    }

    #[test]
    fn engine_output_matches_oracle_on_mora() {
        let c = mora_ctx();
        let gb = buchberger(&mora_gens(), &c).unwrap();
        let g = make_prebasis_shifted(&c, &mora_gens(), Position::Top).unwrap();
        let r = run(&g, Strategy::InOrder, Limits::default()).unwrap();
        assert!(lm_ideal_equal(&r.part_lms(), &gb.lms(), &c.monoid));
        assert_eq!(interreduce(&r.parts(), &c), gb.elements);
    }

    #[test]
    fn example_fifteen_is_a_signature_basis() {
        let c = Context::ring(&["x"], ScalarOrder::DegRevLex);
        let mut g = SigSet::new(c.clone(), Position::Top, 1);
        g.push(SigPair::new(parse_element("x - 1", &c).unwrap(), parse_signature("x*e_1", &c).unwrap(), 1))
            .unwrap();
        let rep = bounded_signature_basis_check(&g, 4, 10_000).unwrap();
        assert!(rep.pass());
        assert_eq!(rep.signatures, 4);
    }

    #[test]
    fn mora_input_violates_and_output_passes() {
        let c = mora_ctx();
        let g = make_prebasis_shifted(&c, &mora_gens(), Position::Top).unwrap();
        let rep = bounded_signature_basis_check(&g, 8, 100_000).unwrap();
        let bound = parse_signature("x^2*y^5*e_2", &c).unwrap();
        assert!(rep.violations.iter().any(|(s, _)| g.sig_order.cmp(s, &bound) != Ordering::Greater));
        let r = run(&g, Strategy::InOrder, Limits::default()).unwrap();
        assert!(bounded_signature_basis_check(&r.basis, 8, 100_000).unwrap().pass());
    }

    #[test]
    fn duplicate_generators_force_a_syzygy() {
        let c = mora_ctx();
        let g = make_prebasis_shifted(&c, &els(&c, &["x*y - 1", "x*y - 1"]), Position::Top).unwrap();
        let r = run(&g, Strategy::F5, Limits::default()).unwrap();
        let rep = bounded_syzygy_check(&g, &r, 4, 10_000).unwrap();
        assert_eq!(rep.kernel_lms.first(), Some(&parse_signature("x*y*e_2", &c).unwrap()));
        assert!(rep.pass());
        let single = make_prebasis_shifted(&c, &els(&c, &["x*y - 1"]), Position::Top).unwrap();
        let r = run(&single, Strategy::F5, Limits::default()).unwrap();
        let rep = bounded_syzygy_check(&single, &r, 6, 10_000).unwrap();
        assert!(rep.kernel_lms.is_empty() && rep.pass());
    }

    #[test]
    fn p2_spotchecks() {
        let c = Context::ring(&["x"], ScalarOrder::DegRevLex);
        let sp = |p: &str, s: &str, id| SigPair::new(parse_element(p, &c).unwrap(), parse_signature(s, &c).unwrap(), id);
        let x2 = parse_signature("x^2*e_1", &c).unwrap();
        let mut same = SigSet::new(c.clone(), Position::Top, 1);
        same.push(sp("x - 1", "x*e_1", 1)).unwrap();
        same.push(sp("x^2 - x", "x^2*e_1", 2)).unwrap();
        assert!(prebasis_spotcheck_p2(&same, &x2, 4, 1000).unwrap());
        let mut bad = SigSet::new(c.clone(), Position::Top, 1);
        bad.push(sp("x - 1", "x*e_1", 1)).unwrap();
        bad.push(sp("x + 1", "x^2*e_1", 2)).unwrap();
        assert!(!prebasis_spotcheck_p2(&bad, &x2, 4, 1000).unwrap());
        let shifted = make_prebasis_shifted(&c, &els(&c, &["x - 1", "x^2 + 1"]), Position::Top).unwrap();
        assert!(prebasis_spotcheck_p2(&shifted, &x2, 4, 1000).unwrap());
    }

    #[test]
    fn fixture_round_trip() {
        let c = mora_ctx();
        let gb = buchberger(&mora_gens(), &c).unwrap();
        let f = Fixture::new("mora", &c, &gb);
        let back = Fixture::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.basis(&c).unwrap(), gb.elements);
        assert_eq!(back.lms(&c).unwrap(), gb.lms());
    }
}
