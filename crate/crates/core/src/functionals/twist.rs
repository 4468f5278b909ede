use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf::{GroupPoint, HopfMap, Presentation, Translation};
use crate::poly::{Monomial, Scalar};

use super::bifunctional::{Bifunctional, Value};
use super::expr::ExpCore;
use super::log::Side;

/// Default bound on the number of `r̂` applications in an exponential series.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// One entry of a twist table: `f(left, right) = value`.
pub type TableEntry = (Monomial, Monomial, Scalar);

#[derive(Debug, Clone)]
pub enum TwistKind {
    Trivial,
    ExpR {
        support: Arc<Presentation>,
        pairs: Vec<(usize, usize, Scalar)>,
        scale: Scalar,
        embedding: HopfMap,
        max_order: usize,
    },
    Table {
        certified_degree: usize,
        j: Vec<TableEntry>,
        j_inv: Vec<TableEntry>,
    },
    Pullback {
        inner: Box<Twist>,
        map: HopfMap,
    },
    Flipped(Box<Twist>),
    Convolution(Box<Twist>, Box<Twist>),
}

/// A Hopf 2-cocycle candidate together with its convolution inverse, which is
/// always constructed rather than computed.
#[derive(Debug, Clone)]
pub struct Twist {
    kind: Arc<TwistKind>,
    domain: Arc<Presentation>,
    forward: Bifunctional,
    inverse: Bifunctional,
}

impl Twist {
    pub fn trivial(domain: Arc<Presentation>) -> Self {
        let e = Bifunctional::counit(domain.clone());
        Twist {
            kind: Arc::new(TwistKind::Trivial),
            domain,
            forward: e.clone(),
            inverse: e,
        }
    }

    /// `J = (ε⊗ε)∘exp(scale·r̂)∘(π⊗π)` for `r = Σ c e_i∧e_j` on an abelian
    /// support, pulled back along the Hopf surjection `π = embedding`.
    pub fn exp_r(
        support: Arc<Presentation>,
        pairs: &[(String, String, Scalar)],
        scale: Scalar,
        embedding: HopfMap,
        max_order: usize,
    ) -> Result<Self> {
        if !support.is_abelian() {
            return Err(Error::Validation(
                "support of an exponential twist must have all generators primitive or grouplike".into(),
            ));
        }
        if embedding.target().as_ref() != support.as_ref() {
            return Err(Error::Input("embedding does not land in the support".into()));
        }
        let vars = support.vars();
        let mut resolved = Vec::with_capacity(pairs.len());
        for (a, b, c) in pairs {
            let i = vars.require(a)?;
            let j = vars.require(b)?;
            if vars.is_laurent(i) && vars.is_laurent(j) {
                return Err(Error::Unsupported(format!(
                    "pair ({a},{b}) joins two grouplike generators; its twist values are not rational"
                )));
            }
            resolved.push((i, j, c.clone()));
        }
        let core = |s: Scalar| {
            Bifunctional::exp(
                support.clone(),
                ExpCore {
                    pairs: resolved.clone(),
                    scale: s,
                    cap: max_order,
                },
            )
        };
        let domain = embedding.source().clone();
        let sigma = embedding.substitution().clone();
        let forward = core(scale.clone()).precompose(domain.clone(), sigma.clone())?;
        let inverse = core(-scale.clone()).precompose(domain.clone(), sigma)?;
        Ok(Twist {
            kind: Arc::new(TwistKind::ExpR {
                support,
                pairs: resolved,
                scale,
                embedding,
                max_order,
            }),
            domain,
            forward,
            inverse,
        })
    }

    /// A twist known through finitely many values of `J` and `J^-1` on
    /// non-unit monomial pairs. Unlisted pairs read as zero and are logged.
    pub fn table(
        domain: Arc<Presentation>,
        j: Vec<TableEntry>,
        j_inv: Vec<TableEntry>,
        certified_degree: usize,
    ) -> Result<Self> {
        let vars = domain.vars();
        let mut maps = Vec::new();
        for (side, entries) in [(Side::J, &j), (Side::JInv, &j_inv)] {
            let mut map = HashMap::new();
            for (a, b, v) in entries {
                for m in [a, b] {
                    if m.nvars() != vars.len() {
                        return Err(Error::Input("table entry is not over the group variables".into()));
                    }
                    vars.check_monomial(m)?;
                }
                if a.is_unit() || b.is_unit() {
                    return Err(Error::Input(format!(
                        "{side}({},{}) is fixed by the counit and cannot be tabulated",
                        vars.format_monomial(a),
                        vars.format_monomial(b)
                    )));
                }
                if map.insert((a.clone(), b.clone()), v.clone()).is_some() {
                    return Err(Error::Input(format!(
                        "duplicate table entry {side}({},{})",
                        vars.format_monomial(a),
                        vars.format_monomial(b)
                    )));
                }
            }
            maps.push(map);
        }
        let primitives: Vec<usize> = vars
            .polynomial_indices()
            .filter(|&i| domain.is_primitive_generator(i))
            .collect();
        for &i in &primitives {
            for &k in &primitives {
                let key = (vars.var(i), vars.var(k));
                let zero = Scalar::zero();
                let sum = maps[0].get(&key).unwrap_or(&zero) + maps[1].get(&key).unwrap_or(&zero);
                if !sum.is_zero() {
                    return Err(Error::Validation(format!(
                        "J({a},{b}) + J^-1({a},{b}) = {} on primitive generators, expected 0",
                        crate::poly::format_scalar(&sum),
                        a = vars.name(i),
                        b = vars.name(k)
                    )));
                }
            }
        }
        let inv_map = maps.pop().unwrap();
        let j_map = maps.pop().unwrap();
        let forward = Bifunctional::table(domain.clone(), j_map, Side::J, true);
        let inverse = Bifunctional::table(domain.clone(), inv_map, Side::JInv, true);
        Ok(Twist {
            kind: Arc::new(TwistKind::Table {
                certified_degree,
                j,
                j_inv,
            }),
            domain,
            forward,
            inverse,
        })
    }

    /// `J'(a,b) = J(π(a), π(b))` along a Hopf map into the twist's domain.
    pub fn pullback(inner: &Twist, map: HopfMap) -> Result<Self> {
        if map.target().as_ref() != inner.domain.as_ref() {
            return Err(Error::Input("pullback map does not land in the twist's group".into()));
        }
        let domain = map.source().clone();
        let sigma = map.substitution().clone();
        let forward = inner.forward.precompose(domain.clone(), sigma.clone())?;
        let inverse = inner.inverse.precompose(domain.clone(), sigma)?;
        Ok(Twist {
            kind: Arc::new(TwistKind::Pullback {
                inner: Box::new(inner.clone()),
                map,
            }),
            domain,
            forward,
            inverse,
        })
    }

    /// `J_21` with inverse `(J^-1)_21`.
    pub fn flipped(&self) -> Self {
        Twist {
            kind: Arc::new(TwistKind::Flipped(Box::new(self.clone()))),
            domain: self.domain.clone(),
            forward: self.forward.flip(),
            inverse: self.inverse.flip(),
        }
    }

    /// `J*K` with inverse `K^-1*J^-1`.
    pub fn convolution(first: &Twist, second: &Twist) -> Result<Self> {
        if first.domain.as_ref() != second.domain.as_ref() {
            return Err(Error::Input("convolved twists live on different groups".into()));
        }
        Ok(Twist {
            kind: Arc::new(TwistKind::Convolution(
                Box::new(first.clone()),
                Box::new(second.clone()),
            )),
            domain: first.domain.clone(),
            forward: first.forward.convolve(&second.forward),
            inverse: second.inverse.convolve(&first.inverse),
        })
    }

    /// The twist on a quotient Hopf algebra this one is pulled back from,
    /// together with the pulling map; `None` unless the twist is an
    /// exponential or a pullback.
    pub fn support(&self) -> Option<(Twist, HopfMap)> {
        match self.kind.as_ref() {
            TwistKind::ExpR {
                support,
                pairs,
                scale,
                embedding,
                max_order,
            } => {
                let vars = support.vars();
                let named: Vec<_> = pairs
                    .iter()
                    .map(|(i, j, c)| (vars.name(*i).to_string(), vars.name(*j).to_string(), c.clone()))
                    .collect();
                let own = HopfMap::identity(support.clone());
                let t = Twist::exp_r(support.clone(), &named, scale.clone(), own, *max_order)
                    .expect("rebuilding an accepted exponential twist");
                Some((t, embedding.clone()))
            }
            TwistKind::Pullback { inner, map } => Some(((**inner).clone(), map.clone())),
            _ => None,
        }
    }

    /// Whether both handles refer to the same constructed twist.
    pub fn same_as(&self, other: &Twist) -> bool {
        Arc::ptr_eq(&self.kind, &other.kind)
    }

    pub fn kind(&self) -> &TwistKind {
        &self.kind
    }

    pub fn domain(&self) -> &Arc<Presentation> {
        &self.domain
    }

    pub fn j(&self) -> &Bifunctional {
        &self.forward
    }

    pub fn j_inv(&self) -> &Bifunctional {
        &self.inverse
    }

    pub fn side(&self, side: Side) -> &Bifunctional {
        match side {
            Side::J => &self.forward,
            Side::JInv => &self.inverse,
        }
    }

    pub fn bieval(&self, a: &crate::poly::Poly, b: &crate::poly::Poly, side: Side) -> Result<Value> {
        self.side(side).eval(a, b)
    }

    pub fn is_trivial(&self) -> bool {
        matches!(*self.kind, TwistKind::Trivial)
    }

    /// Whether evaluations may rest on zero-default table readings.
    pub fn uses_table(&self) -> bool {
        match &*self.kind {
            TwistKind::Trivial | TwistKind::ExpR { .. } => false,
            TwistKind::Table { .. } => true,
            TwistKind::Pullback { inner, .. } | TwistKind::Flipped(inner) => inner.uses_table(),
            TwistKind::Convolution(a, b) => a.uses_table() || b.uses_table(),
        }
    }

    /// Short description for reports.
    pub fn describe(&self) -> String {
        match &*self.kind {
            TwistKind::Trivial => "trivial".into(),
            TwistKind::ExpR {
                support,
                pairs,
                scale,
                max_order,
                ..
            } => {
                let r: Vec<String> = pairs
                    .iter()
                    .map(|(i, j, c)| {
                        let wedge = format!("{}^{}", support.vars().name(*i), support.vars().name(*j));
                        if c.is_one() {
                            wedge
                        } else {
                            format!("{} {wedge}", crate::poly::format_scalar(c))
                        }
                    })
                    .collect();
                format!(
                    "expR r={} scale={} max-order={max_order}",
                    r.join(" + "),
                    crate::poly::format_scalar(scale)
                )
            }
            TwistKind::Table {
                certified_degree,
                j,
                j_inv,
            } => format!(
                "table entries={} certified-degree={certified_degree}",
                j.len() + j_inv.len()
            ),
            TwistKind::Pullback { inner, .. } => format!("pullback of {}", inner.describe()),
            TwistKind::Flipped(inner) => format!("flip of {}", inner.describe()),
            TwistKind::Convolution(a, b) => format!("convolution of {} and {}", a.describe(), b.describe()),
        }
    }

    /// `Q = J - J_21`.
    pub fn q_form(&self) -> Bifunctional {
        self.forward.minus(&self.forward.flip())
    }

    /// `S = J^-1 - (J^-1)_21`.
    pub fn s_form(&self) -> Bifunctional {
        self.inverse.minus(&self.inverse.flip())
    }

    /// `R^J = (J^-1)_21 * J`.
    pub fn rform(&self) -> Bifunctional {
        self.inverse.flip().convolve(&self.forward)
    }

    /// `J^g = J∘(Ad g⊗Ad g)`.
    pub fn conjugate(&self, g: &GroupPoint) -> Bifunctional {
        let ad = Arc::new(self.domain.translation(g, Translation::Ad));
        self.forward
            .precompose(self.domain.clone(), ad)
            .expect("Ad g is an endomorphism of the twist's domain")
    }
}
