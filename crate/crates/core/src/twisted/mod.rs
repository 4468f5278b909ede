//! Twisted multiplications `₍K₎m₍J₎` and the axiom checkers built on them.

mod checks;

use std::sync::Arc;

use dashmap::DashMap;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::functionals::{AssumptionLog, Twist};
use crate::hopf::Presentation;
use crate::poly::{Monomial, Poly};

pub use checks::{
    check_associativity, check_coproduct_homomorphism, check_cotriangular, check_hopf_cocycle,
    check_leading_term, check_primitive_pairing, check_product_equality, Degrees,
};

/// A (possibly noncommutative) product on the underlying space of `O(G)`.
pub trait Product: Sync {
    fn presentation(&self) -> &Arc<Presentation>;

    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Result<(Poly, AssumptionLog)>;

    fn label(&self) -> String;

    /// Whether elements are classes modulo an ideal rather than functions on
    /// the group, so that coalgebra notions do not apply to them.
    fn is_quotient(&self) -> bool {
        false
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Result<(Poly, AssumptionLog)> {
        let mut out = Poly::zero();
        let mut log = AssumptionLog::default();
        for (m, c) in a.terms() {
            for (n, d) in b.terms() {
                let (p, l) = self.mul_monomials(m, n)?;
                out.add_scaled(&p, &(c * d));
                log.merge(&l);
            }
        }
        Ok((out, log))
    }

    /// `[a,b] = a·b - b·a`.
    fn bracket(&self, a: &Poly, b: &Poly) -> Result<(Poly, AssumptionLog)> {
        let (ab, mut log) = self.mul(a, b)?;
        let (ba, l) = self.mul(b, a)?;
        log.merge(&l);
        Ok((&ab - &ba, log))
    }
}

/// `a·b = Σ K^-1(a_1,b_1) a_2b_2 J(a_3,b_3)`; a missing twist is trivial.
pub struct TwistedProduct {
    domain: Arc<Presentation>,
    left: Option<Twist>,
    right: Option<Twist>,
    cache: DashMap<(Monomial, Monomial), (Poly, AssumptionLog)>,
}

impl std::fmt::Debug for TwistedProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TwistedProduct({})", self.label())
    }
}

impl TwistedProduct {
    pub fn new(domain: Arc<Presentation>, left: Option<Twist>, right: Option<Twist>) -> Result<Self> {
        for t in left.iter().chain(right.iter()) {
            if t.domain().as_ref() != domain.as_ref() {
                return Err(Error::Input("twist lives on a different group".into()));
            }
        }
        let nontrivial = |t: Option<Twist>| t.filter(|t| !t.is_trivial());
        Ok(TwistedProduct {
            domain,
            left: nontrivial(left),
            right: nontrivial(right),
            cache: DashMap::new(),
        })
    }

    /// `₍J₎m₍J₎`.
    pub fn two_sided(j: &Twist) -> Self {
        Self::new(j.domain().clone(), Some(j.clone()), Some(j.clone())).unwrap()
    }

    /// `₍K₎m₍J₎`.
    pub fn bi(k: &Twist, j: &Twist) -> Result<Self> {
        Self::new(k.domain().clone(), Some(k.clone()), Some(j.clone()))
    }

    /// `m_J`.
    pub fn right(j: &Twist) -> Self {
        Self::new(j.domain().clone(), None, Some(j.clone())).unwrap()
    }

    /// `₍K₎m`.
    pub fn left(k: &Twist) -> Self {
        Self::new(k.domain().clone(), Some(k.clone()), None).unwrap()
    }

    /// The commutative product of `O(G)`.
    pub fn commutative(domain: Arc<Presentation>) -> Self {
        Self::new(domain, None, None).unwrap()
    }

    pub fn left_twist(&self) -> Option<&Twist> {
        self.left.as_ref()
    }

    pub fn right_twist(&self) -> Option<&Twist> {
        self.right.as_ref()
    }

    fn compute(&self, a: &Monomial, b: &Monomial) -> Result<(Poly, AssumptionLog)> {
        let g = &self.domain;
        let mut out = Poly::zero();
        let mut log = AssumptionLog::default();
        match (&self.left, &self.right) {
            (None, None) => out.add_term(a.mul(b), num_traits::One::one()),
            (None, Some(j)) => {
                let (da, db) = (g.coproduct_monomial(a), g.coproduct_monomial(b));
                for (la, ca) in da.terms() {
                    for (lb, cb) in db.terms() {
                        let (v, l) = j.j().eval_monomials(&la[1], &lb[1])?;
                        if v.is_zero() && l.is_empty() {
                            continue;
                        }
                        log.merge(&l);
                        out.add_term(la[0].mul(&lb[0]), ca * cb * v);
                    }
                }
            }
            (Some(k), None) => {
                let (da, db) = (g.coproduct_monomial(a), g.coproduct_monomial(b));
                for (la, ca) in da.terms() {
                    for (lb, cb) in db.terms() {
                        let (v, l) = k.j_inv().eval_monomials(&la[0], &lb[0])?;
                        if v.is_zero() && l.is_empty() {
                            continue;
                        }
                        log.merge(&l);
                        out.add_term(la[1].mul(&lb[1]), ca * cb * v);
                    }
                }
            }
            (Some(k), Some(j)) => {
                let (da, db) = (g.coproduct2_monomial(a), g.coproduct2_monomial(b));
                for (la, ca) in da.terms() {
                    for (lb, cb) in db.terms() {
                        let (u, lu) = k.j_inv().eval_monomials(&la[0], &lb[0])?;
                        if u.is_zero() && lu.is_empty() {
                            continue;
                        }
                        let (v, lv) = j.j().eval_monomials(&la[2], &lb[2])?;
                        if v.is_zero() && lv.is_empty() {
                            continue;
                        }
                        log.merge(&lu);
                        log.merge(&lv);
                        out.add_term(la[1].mul(&lb[1]), ca * cb * u * v);
                    }
                }
            }
        }
        Ok((out, log))
    }
}

impl Product for TwistedProduct {
    fn presentation(&self) -> &Arc<Presentation> {
        &self.domain
    }

    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Result<(Poly, AssumptionLog)> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(a, b)?;
        self.cache.insert(key, v.clone());
        Ok(v)
    }

    fn label(&self) -> String {
        match (&self.left, &self.right) {
            (None, None) => "m".into(),
            (None, Some(_)) => "m_J".into(),
            (Some(_), None) => "(K)m".into(),
            (Some(k), Some(j)) if k.same_as(j) => "(J)m(J)".into(),
            (Some(_), Some(_)) => "(K)m(J)".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::monomials_up_to;
    use crate::testing::*;

    fn bracket(p: &impl Product, a: &str, b: &str) -> String {
        let g = p.presentation();
        let (v, _) = p.bracket(&g.parse(a).unwrap(), &g.parse(b).unwrap()).unwrap();
        g.format(&v)
    }

    #[test]
    fn dim4_brackets() {
        let p = TwistedProduct::two_sided(&dim4_twist());
        assert_eq!(bracket(&p, "W", "X"), "Y");
        assert_eq!(bracket(&p, "W", "V"), "1/2 Y^2");
        assert_eq!(bracket(&p, "X", "Y"), "0");
    }

    #[test]
    fn minimal_table_product() {
        let p = TwistedProduct::two_sided(&minimal_twist());
        let g = p.presentation();
        let (wv, log) = p.mul(&g.parse("W").unwrap(), &g.parse("V").unwrap()).unwrap();
        assert_eq!(g.format(&wv), "1/2 X + 1/4 Y^2 + V*W");
        assert!(!log.is_empty());
        assert_eq!(bracket(&p, "W", "V"), "X + 1/2 Y^2");
    }

    #[test]
    fn torus_bracket() {
        let p = TwistedProduct::two_sided(&torus_twist());
        assert_eq!(bracket(&p, "V", "F"), "-F*X + F*Y");
    }

    #[test]
    fn trivial_is_commutative() {
        let g = dim4();
        let p = TwistedProduct::commutative(g.clone());
        let a = g.parse("W + X").unwrap();
        let b = g.parse("V*Y - 2").unwrap();
        assert_eq!(p.mul(&a, &b).unwrap().0, &a * &b);
    }

    #[test]
    fn counit_is_multiplicative() {
        let t = torus_twist();
        let g = t.domain().clone();
        let ms = monomials_up_to(g.vars(), 2);
        for p in &[TwistedProduct::two_sided(&t)] {
            for a in &ms {
                for b in &ms {
                    let (ab, _) = p.mul_monomials(a, b).unwrap();
                    assert_eq!(g.counit(&ab), g.counit_monomial(a) * g.counit_monomial(b));
                }
            }
        }
    }

    #[test]
    fn bracket_with_self_vanishes() {
        let p = TwistedProduct::two_sided(&minimal_twist());
        assert_eq!(bracket(&p, "W + V*X", "W + V*X"), "0");
    }
}
