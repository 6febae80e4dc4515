//! The combinatorial rewrite-basis certificate.

use crate::critical::critical_set;
use crate::monoid::MonoidSpec;
use crate::sig::{find_regular_reducer_in, sig_divide, SigOrder, SigPair, SigSet, Signature};

/// Whether some member multiple `a·g` with `a·sig g = sigma` is
/// `→G`-reduced, or no member signature divides `sigma` at all.
pub fn rewrite_basis_at(g: &SigSet, sigma: &Signature) -> bool {
    rewrite_basis_at_in(sigma, g.members(), g.monoid(), &g.sig_order)
}

pub(crate) fn rewrite_basis_at_in(
    sigma: &Signature,
    members: &[SigPair],
    monoid: &MonoidSpec,
    order: &SigOrder,
) -> bool {
    let mut empty = true;
    for m in members {
        let Some(a) = sig_divide(monoid, &m.sig, sigma) else {
            continue;
        };
        empty = false;
        let lm = m.lm().mul(&a);
        if find_regular_reducer_in(&lm, sigma, members, monoid, order).is_none() {
            return true;
        }
    }
    empty
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub pass: bool,
    pub failures: Vec<Signature>,
    /// Size of the critical set that was checked.
    pub checked: usize,
}

/// Faugère's criterion: a prebasis is a rewrite basis iff it is one at every
/// signature of its critical set.
pub fn faugere_certificate(g: &SigSet) -> Certificate {
    let sigma = critical_set(g.members(), g.monoid(), &g.sig_order);
    let failures: Vec<Signature> = sigma
        .iter()
        .filter(|s| !rewrite_basis_at(g, s))
        .cloned()
        .collect();
    Certificate {
        pass: failures.is_empty(),
        failures,
        checked: sigma.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::order::{Position, ScalarOrder};
    use crate::parse::{parse_element, parse_signature};
    use crate::sig::make_prebasis_shifted;

    fn mora() -> SigSet {
        let c = Context::ring(&["y", "x"], ScalarOrder::DegRevLex);
        let gens: Vec<_> = ["x^2*y^2 - 1", "y^5 - x^2*y", "x^5 - x*y^2"]
            .iter()
            .map(|s| parse_element(s, &c).unwrap())
            .collect();
        make_prebasis_shifted(&c, &gens, Position::Top).unwrap()
    }

    #[test]
    fn mora_input_fails_at_the_two_critical_signatures() {
        let g = mora();
        let s = |t: &str| parse_signature(t, &g.ctx).unwrap();
        assert!(!rewrite_basis_at(&g, &s("x^2*y^5*e_2")));
        assert!(rewrite_basis_at(&g, &s("x^2*y^5*e_1")));
        assert!(rewrite_basis_at(&g, &s("x*e_3")));
        let cert = faugere_certificate(&g);
        assert!(!cert.pass);
        assert_eq!(cert.failures, vec![s("x^2*y^5*e_2"), s("x^5*y^2*e_3")]);
    }

    #[test]
    fn empty_sigset_passes() {
        let c = Context::ring(&["x"], ScalarOrder::Lex);
        let g = SigSet::new(c, Position::Pot, 0);
        assert!(faugere_certificate(&g).pass);
    }
}
