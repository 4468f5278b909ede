use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf::Presentation;
use crate::poly::{Monomial, Poly, Scalar, Substitution};

use super::expr::ExpCore;
use super::log::{AssumptionLog, Side};

pub type Value = (Scalar, AssumptionLog);

pub(crate) enum Node {
    Counit,
    Exp(ExpCore),
    Table {
        side: Side,
        entries: HashMap<(Monomial, Monomial), Scalar>,
        /// Whether unlisted pairs are logged as assumptions.
        logged: bool,
    },
    Flip(Bifunctional),
    Convolve(Bifunctional, Bifunctional),
    /// `f(σa, σb)` for an algebra map `σ` into `f`'s domain.
    Precompose(Bifunctional, Arc<Substitution>),
    Sum(Vec<(Scalar, Bifunctional)>),
}

pub(crate) struct Inner {
    domain: Arc<Presentation>,
    node: Node,
    cache: DashMap<(Monomial, Monomial), Value>,
}

/// A linear form on `A⊗A`, evaluated lazily on monomial pairs and memoized.
#[derive(Clone)]
pub struct Bifunctional(Arc<Inner>);

impl fmt::Debug for Bifunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.0.node {
            Node::Counit => "counit",
            Node::Exp(_) => "exp",
            Node::Table { .. } => "table",
            Node::Flip(_) => "flip",
            Node::Convolve(..) => "convolution",
            Node::Precompose(..) => "precompose",
            Node::Sum(_) => "sum",
        };
        write!(f, "Bifunctional({kind})")
    }
}

impl Bifunctional {
    fn build(domain: Arc<Presentation>, node: Node) -> Self {
        Bifunctional(Arc::new(Inner {
            domain,
            node,
            cache: DashMap::new(),
        }))
    }

    /// `ε⊗ε`.
    pub fn counit(domain: Arc<Presentation>) -> Self {
        Self::build(domain, Node::Counit)
    }

    pub(crate) fn exp(domain: Arc<Presentation>, core: ExpCore) -> Self {
        Self::build(domain, Node::Exp(core))
    }

    /// A bilinear form given by a table on non-unit monomial pairs, counital
    /// by construction; unlisted pairs are zero.
    pub fn table(
        domain: Arc<Presentation>,
        entries: HashMap<(Monomial, Monomial), Scalar>,
        side: Side,
        logged: bool,
    ) -> Self {
        Self::build(
            domain,
            Node::Table {
                side,
                entries,
                logged,
            },
        )
    }

    /// `f_21(a,b) = f(b,a)`.
    pub fn flip(&self) -> Self {
        Self::build(self.0.domain.clone(), Node::Flip(self.clone()))
    }

    /// `(f*g)(a,b) = Σ f(a_1,b_1) g(a_2,b_2)`.
    pub fn convolve(&self, other: &Bifunctional) -> Self {
        Self::build(self.0.domain.clone(), Node::Convolve(self.clone(), other.clone()))
    }

    /// `f∘(σ⊗σ)` with `σ: domain → f.domain`.
    pub fn precompose(&self, domain: Arc<Presentation>, sigma: Arc<Substitution>) -> Result<Self> {
        if sigma.source().as_ref() != domain.vars().as_ref()
            || sigma.target().as_ref() != self.0.domain.vars().as_ref()
        {
            return Err(Error::Input("precomposition map has the wrong variables".into()));
        }
        Ok(Self::build(domain, Node::Precompose(self.clone(), sigma)))
    }

    pub fn linear_combination(domain: Arc<Presentation>, parts: Vec<(Scalar, Bifunctional)>) -> Self {
        Self::build(domain, Node::Sum(parts))
    }

    /// `self - other`.
    pub fn minus(&self, other: &Bifunctional) -> Self {
        Self::linear_combination(
            self.0.domain.clone(),
            vec![(Scalar::one(), self.clone()), (-Scalar::one(), other.clone())],
        )
    }

    pub fn domain(&self) -> &Arc<Presentation> {
        &self.0.domain
    }

    pub fn eval_monomials(&self, a: &Monomial, b: &Monomial) -> Result<Value> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.0.cache.get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(a, b)?;
        self.0.cache.insert(key, v.clone());
        Ok(v)
    }

    /// Bilinear extension to polynomials.
    pub fn eval(&self, a: &Poly, b: &Poly) -> Result<Value> {
        let mut total = Scalar::zero();
        let mut log = AssumptionLog::default();
        for (m, c) in a.terms() {
            for (n, d) in b.terms() {
                let (v, l) = self.eval_monomials(m, n)?;
                if !v.is_zero() {
                    total += c * d * v;
                }
                log.merge(&l);
            }
        }
        Ok((total, log))
    }

    fn compute(&self, a: &Monomial, b: &Monomial) -> Result<Value> {
        let g = &self.0.domain;
        match &self.0.node {
            Node::Counit => Ok((g.counit_monomial(a) * g.counit_monomial(b), AssumptionLog::default())),
            Node::Exp(core) => Ok((core.eval(g, a, b)?, AssumptionLog::default())),
            Node::Table {
                side,
                entries,
                logged,
            } => {
                if a.is_unit() {
                    return Ok((g.counit_monomial(b), AssumptionLog::default()));
                }
                if b.is_unit() {
                    return Ok((g.counit_monomial(a), AssumptionLog::default()));
                }
                match entries.get(&(a.clone(), b.clone())) {
                    Some(v) => Ok((v.clone(), AssumptionLog::default())),
                    None if *logged => Ok((
                        Scalar::zero(),
                        AssumptionLog::single(g.vars(), *side, a.clone(), b.clone()),
                    )),
                    None => Ok((Scalar::zero(), AssumptionLog::default())),
                }
            }
            Node::Flip(f) => f.eval_monomials(b, a),
            Node::Convolve(f, h) => {
                let da = g.coproduct_monomial(a);
                let db = g.coproduct_monomial(b);
                let mut total = Scalar::zero();
                let mut log = AssumptionLog::default();
                for (la, ca) in da.terms() {
                    for (lb, cb) in db.terms() {
                        let (x, lx) = f.eval_monomials(&la[0], &lb[0])?;
                        if x.is_zero() && lx.is_empty() {
                            continue;
                        }
                        let (y, ly) = h.eval_monomials(&la[1], &lb[1])?;
                        if y.is_zero() && ly.is_empty() {
                            continue;
                        }
                        log.merge(&lx);
                        log.merge(&ly);
                        total += ca * cb * x * y;
                    }
                }
                Ok((total, log))
            }
            Node::Precompose(f, sigma) => {
                f.eval(&sigma.apply_monomial(a), &sigma.apply_monomial(b))
            }
            Node::Sum(parts) => {
                let mut total = Scalar::zero();
                let mut log = AssumptionLog::default();
                for (c, f) in parts {
                    let (v, l) = f.eval_monomials(a, b)?;
                    total += c * v;
                    log.merge(&l);
                }
                Ok((total, log))
            }
        }
    }
}
