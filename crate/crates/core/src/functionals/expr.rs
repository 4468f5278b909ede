use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hopf::Presentation;
use crate::poly::{Monomial, Scalar};

/// `(ε⊗ε)∘exp(scale·r̂)` on an abelian support, where
/// `r̂ = Σ c (D_i⊗D_j - D_j⊗D_i)` and `D` is `∂/∂y` on polynomial generators
/// and `x∂/∂x` on Laurent generators.
#[derive(Debug, Clone)]
pub(crate) struct ExpCore {
    pub pairs: Vec<(usize, usize, Scalar)>,
    pub scale: Scalar,
    pub cap: usize,
}

fn derive(g: &Presentation, i: usize, m: &Monomial) -> Option<(Scalar, Monomial)> {
    let e = m.exponent(i);
    if e == 0 {
        return None;
    }
    if g.vars().is_laurent(i) {
        Some((Scalar::from_integer(e.into()), m.clone()))
    } else {
        Some((Scalar::from_integer(e.into()), m.with_exponent(i, e - 1)))
    }
}

impl ExpCore {
    fn apply(&self, g: &Presentation, t: &BTreeMap<(Monomial, Monomial), Scalar>) -> BTreeMap<(Monomial, Monomial), Scalar> {
        let mut out: BTreeMap<(Monomial, Monomial), Scalar> = BTreeMap::new();
        let mut push = |k: (Monomial, Monomial), v: Scalar| {
            let e = out.entry(k).or_insert_with(Scalar::zero);
            *e += v;
        };
        for ((a, b), c) in t {
            for (i, j, w) in &self.pairs {
                if let (Some((ca, a2)), Some((cb, b2))) = (derive(g, *i, a), derive(g, *j, b)) {
                    push((a2, b2), c * w * ca * cb);
                }
                if let (Some((ca, a2)), Some((cb, b2))) = (derive(g, *j, a), derive(g, *i, b)) {
                    push((a2, b2), -(c * w * ca * cb));
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn eval(&self, g: &Presentation, a: &Monomial, b: &Monomial) -> Result<Scalar> {
        let counit = |t: &BTreeMap<(Monomial, Monomial), Scalar>| {
            let mut s = Scalar::zero();
            for ((x, y), c) in t {
                if !g.counit_monomial(x).is_zero() && !g.counit_monomial(y).is_zero() {
                    s += c;
                }
            }
            s
        };
        let mut t = BTreeMap::from([((a.clone(), b.clone()), Scalar::one())]);
        let mut total = counit(&t);
        let mut factor = Scalar::one();
        let mut k = 0usize;
        loop {
            t = self.apply(g, &t);
            if t.is_empty() {
                return Ok(total);
            }
            k += 1;
            if k > self.cap {
                return Err(Error::IterationCap { cap: self.cap });
            }
            factor = factor * &self.scale / Scalar::from_integer((k as i64).into());
            total += &factor * counit(&t);
        }
    }
}
