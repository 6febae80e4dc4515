//! Submonoids of ℕⁿ acting on monomials, with divisibility and minimal
//! common multiples relative to the monoid.
//!
//! Divisibility is always relative to the acting monoid `A`: `m` divides `n`
//! when `a·m = n` for some `a ∈ A`. For a proper submonoid this is strictly
//! finer than componentwise divisibility in ℕⁿ.

use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Exponents, Monomial};
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidSpec {
    /// All of ℕⁿ.
    Full,
    /// The identity plus every monomial of total degree at least
    /// `min_degree`, minus the listed exclusions.
    DegreeTruncated {
        min_degree: u32,
        exclusions: Vec<Monomial>,
    },
    /// The monoid generated by finitely many monomials.
    Generated { generators: Vec<Monomial> },
}

/// Minimal common multiples of two monomials together with a completeness
/// flag. The flag is false only when a bounded search could not certify
/// that no further minimal pair exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonMultiples {
    pub pairs: Vec<(Monomial, Monomial)>,
    pub complete: bool,
}

impl MonoidSpec {
    pub fn degree_truncated(nvars: usize, min_degree: u32, exclusions: Vec<Monomial>) -> Result<Self> {
        for e in &exclusions {
            if e.width() != nvars || e.index().is_some() || e.is_zero() {
                return Err(Error::InvalidInput(
                    "exclusions must be index-free monomials of the ring".into(),
                ));
            }
            if e.is_one() {
                return Err(Error::InvalidInput(
                    "the identity cannot be excluded from a monoid".into(),
                ));
            }
        }
        let spec = MonoidSpec::DegreeTruncated {
            min_degree,
            exclusions,
        };
        // Closure under products: no exclusion may factor inside the monoid.
        if let MonoidSpec::DegreeTruncated { exclusions, .. } = &spec {
            for e in exclusions {
                for a in proper_raw_divisors(e) {
                    let b = a.quotient_raw(e).expect("divisor");
                    if !a.is_one() && !b.is_one() && spec.member(&a) && spec.member(&b) {
                        return Err(Error::InvalidInput(format!(
                            "exclusion {:?} is a product of monoid elements",
                            e
                        )));
                    }
                }
            }
        }
        Ok(spec)
    }

    pub fn generated(nvars: usize, generators: Vec<Monomial>) -> Result<Self> {
        for g in &generators {
            if g.width() != nvars || g.index().is_some() || g.is_zero() {
                return Err(Error::InvalidInput(
                    "generators must be index-free monomials of the ring".into(),
                ));
            }
        }
        let mut generators: Vec<Monomial> =
            generators.into_iter().filter(|g| !g.is_one()).collect();
        generators.dedup();
        Ok(MonoidSpec::Generated { generators })
    }

    pub fn is_full(&self) -> bool {
        matches!(self, MonoidSpec::Full)
    }

    /// Membership of an index-free monomial.
    pub fn member(&self, m: &Monomial) -> bool {
        if m.is_zero() || m.index().is_some() {
            return false;
        }
        if m.is_one() {
            return true;
        }
        match self {
            MonoidSpec::Full => true,
            MonoidSpec::DegreeTruncated {
                min_degree,
                exclusions,
            } => m.degree() >= *min_degree && !exclusions.iter().any(|e| e == m),
            MonoidSpec::Generated { generators } => {
                let mut failed = HashSet::new();
                generated_member(generators, m, &mut failed)
            }
        }
    }

    /// The index-free `a ∈ A` with `a·m = n`, if any.
    pub fn divide(&self, m: &Monomial, n: &Monomial) -> Option<Monomial> {
        let q = m.quotient_raw(n)?;
        if self.member(&q) {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, m: &Monomial, n: &Monomial) -> bool {
        match self {
            MonoidSpec::Full => m.divides_raw(n),
            _ => self.divide(m, n).is_some(),
        }
    }

    /// The ⪯-minimal pairs `(a, b)` of monoid elements with `a·m = b·n`.
    pub fn minimal_common_multiples(&self, m: &Monomial, n: &Monomial) -> Result<CommonMultiples> {
        if m.is_zero() || n.is_zero() {
            return Err(Error::Precondition(
                "common multiples of the zero monomial".into(),
            ));
        }
        let Some(lcm) = m.lcm_raw(n) else {
            return Ok(CommonMultiples {
                pairs: vec![],
                complete: true,
            });
        };
        let a0 = m.quotient_raw(&lcm).expect("lcm is a multiple");
        let b0 = n.quotient_raw(&lcm).expect("lcm is a multiple");
        match self {
            MonoidSpec::Full => Ok(CommonMultiples {
                pairs: vec![(a0, b0)],
                complete: true,
            }),
            MonoidSpec::DegreeTruncated {
                min_degree,
                exclusions,
            } => {
                // Every multiplier is a0·t. Once deg t ≥ 2d', with d' above
                // every exclusion degree, a degree-d' factor of t splits off
                // inside the monoid, so minimal pairs have deg t < 2d'.
                let max_excl = exclusions.iter().map(|e| e.degree() + 1).max().unwrap_or(0);
                let dprime = (*min_degree).max(max_excl).max(1);
                let bound = 2 * dprime - 1;
                let cands = self.candidate_pairs(&a0, &b0, 0, bound);
                Ok(CommonMultiples {
                    pairs: self.minimal_pairs(cands),
                    complete: true,
                })
            }
            MonoidSpec::Generated { generators } => {
                let gmax = generators.iter().map(Monomial::degree).max().unwrap_or(0);
                let bound_a = m.degree() + n.degree() + gmax;
                let bound_t = bound_a.saturating_sub(a0.degree());
                let cands = self.candidate_pairs(&a0, &b0, 0, bound_t);
                let minimal = self.minimal_pairs(cands);
                // Stabilization check: nothing new in the next generator-degree window.
                let window = self.candidate_pairs(&a0, &b0, bound_t + 1, bound_t + gmax.max(1));
                let complete = window
                    .iter()
                    .all(|(a, _)| minimal.iter().any(|(p, _)| self.divides(p, a)));
                Ok(CommonMultiples {
                    pairs: minimal,
                    complete,
                })
            }
        }
    }

    fn candidate_pairs(
        &self,
        a0: &Monomial,
        b0: &Monomial,
        from: u32,
        to: u32,
    ) -> Vec<(Monomial, Monomial)> {
        let n = a0.width();
        let mut out = Vec::new();
        for d in from..=to {
            for t in monomials_of_degree(n, d) {
                let a = a0.mul(&t);
                let b = b0.mul(&t);
                if self.member(&a) && self.member(&b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn minimal_pairs(&self, cands: Vec<(Monomial, Monomial)>) -> Vec<(Monomial, Monomial)> {
        let mut out: Vec<(Monomial, Monomial)> = Vec::new();
        for (i, (a, b)) in cands.iter().enumerate() {
            let dominated = cands
                .iter()
                .enumerate()
                .any(|(j, (p, _))| j != i && p != a && self.divides(p, a));
            if !dominated && !out.iter().any(|(p, _)| p == a) {
                out.push((a.clone(), b.clone()));
            }
        }
        out
    }
}

fn generated_member(gens: &[Monomial], m: &Monomial, failed: &mut HashSet<Exponents>) -> bool {
    if m.is_one() {
        return true;
    }
    if failed.contains(m.exps()) {
        return false;
    }
    for g in gens {
        if let Some(q) = g.quotient_raw(m) {
            if generated_member(gens, &q, failed) {
                return true;
            }
        }
    }
    failed.insert(Exponents::from_slice(m.exps()));
    false
}

fn proper_raw_divisors(m: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(m.width())];
    for (i, &e) in m.exps().iter().enumerate() {
        let mut next = Vec::new();
        for d in &out {
            for k in 0..=e {
                let mut exps = Exponents::from_slice(d.exps());
                exps[i] = k;
                next.push(Monomial::new(exps, None));
            }
        }
        out = next;
    }
    out.retain(|d| d.exps() != m.exps());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(x: u32, y: u32) -> Monomial {
        Monomial::from_slice(&[x, y])
    }

    fn truncated() -> MonoidSpec {
        MonoidSpec::degree_truncated(2, 2, vec![]).unwrap()
    }

    fn even() -> MonoidSpec {
        MonoidSpec::generated(2, vec![m(2, 0), m(1, 1), m(0, 2)]).unwrap()
    }

    #[test]
    fn membership() {
        assert!(MonoidSpec::Full.member(&m(3, 1)));
        let t = truncated();
        assert!(!t.member(&m(1, 0)));
        assert!(t.member(&m(1, 1)));
        assert!(t.member(&m(0, 0)));
        let g = even();
        assert!(g.member(&m(3, 1)));
        assert!(!g.member(&m(3, 0)));
    }

    #[test]
    fn division_full_and_truncated() {
        assert_eq!(MonoidSpec::Full.divide(&m(2, 2), &m(2, 5)), Some(m(0, 3)));
        let t = truncated();
        assert_eq!(t.divide(&m(2, 0), &m(3, 0)), None);
        assert_eq!(t.divide(&m(2, 0), &m(3, 1)), Some(m(1, 1)));
    }

    #[test]
    fn division_requires_equal_index() {
        let a = Monomial::new(Exponents::from_slice(&[1, 0]), Some(1));
        let b = Monomial::new(Exponents::from_slice(&[1, 0]), Some(2));
        assert_eq!(MonoidSpec::Full.divide(&a, &b), None);
    }

    #[test]
    fn mcm_full_is_lcm() {
        // variables [x, y]; x^2 y^2 and y^5
        let r = MonoidSpec::Full
            .minimal_common_multiples(&m(2, 2), &m(0, 5))
            .unwrap();
        assert_eq!(r.pairs, vec![(m(0, 3), m(2, 0))]);
        assert!(r.complete);
    }

    #[test]
    fn mcm_different_indices_empty() {
        let a = Monomial::new(Exponents::from_slice(&[1, 0]), Some(1));
        let b = Monomial::new(Exponents::from_slice(&[0, 1]), Some(2));
        let r = MonoidSpec::Full.minimal_common_multiples(&a, &b).unwrap();
        assert!(r.pairs.is_empty());
    }

    #[test]
    fn mcm_even_degree_monoid() {
        let r = even().minimal_common_multiples(&m(2, 0), &m(1, 1)).unwrap();
        let mut a: Vec<_> = r.pairs.iter().map(|(a, _)| a.clone()).collect();
        a.sort_by_key(|x| x.exps().to_vec());
        assert_eq!(a, vec![m(0, 2), m(1, 1)]);
        assert!(r.complete);
    }

    #[test]
    fn mcm_degree_truncated_has_degree_three_minima() {
        // In {1} ∪ {deg ≥ 2}, x^2·y is not a monoid multiple of x·y
        // (the cofactor x is missing), so it is minimal on its own.
        let r = truncated()
            .minimal_common_multiples(&m(2, 0), &m(1, 1))
            .unwrap();
        let mut a: Vec<_> = r.pairs.iter().map(|(a, _)| a.exps().to_vec()).collect();
        a.sort();
        assert_eq!(
            a,
            vec![vec![0, 2], vec![0, 3], vec![1, 1], vec![1, 2], vec![2, 1]]
        );
        for (a, b) in &r.pairs {
            assert_eq!(a.mul(&m(2, 0)), b.mul(&m(1, 1)));
        }
    }

    #[test]
    fn invalid_exclusions_rejected() {
        // x^2 y^2 = (xy)(xy) cannot be excluded while xy is a member.
        assert!(MonoidSpec::degree_truncated(2, 2, vec![m(2, 2)]).is_err());
        assert!(MonoidSpec::degree_truncated(2, 2, vec![m(1, 1)]).is_ok());
        assert!(MonoidSpec::degree_truncated(2, 2, vec![m(0, 0)]).is_err());
    }

    #[test]
    fn zero_rejected_for_mcm() {
        assert!(MonoidSpec::Full
            .minimal_common_multiples(&Monomial::zero(), &m(1, 0))
            .is_err());
    }
}
