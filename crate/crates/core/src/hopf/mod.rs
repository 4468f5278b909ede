//! Coordinate Hopf algebras `O(G)` of unipotent and connected nilpotent groups.
//!
//! `O(G) = C[x_1^±, …, x_k^±][y_1, …, y_m]` with grouplike `x_j` and
//! `Δ(y_i) = y_i⊗1 + 1⊗y_i + q(y_i)`, where the coproduct defect `q(y_i)` only
//! involves generators declared before `y_i`.

mod map;
mod point;
mod validate;

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Scalar, Tensor, VarTable};

pub use map::HopfMap;
pub use point::{GroupPoint, Translation};
pub use validate::validate_presentation;

/// A coordinate Hopf algebra given by generators and coproduct defects.
pub struct Presentation {
    vars: Arc<VarTable>,
    defects: Vec<Tensor>,
    gen_coproduct: Vec<Tensor>,
    gen_coproduct2: Vec<Tensor>,
    gen_antipode: Vec<Poly>,
    weights: Vec<i64>,
    coproduct_cache: DashMap<Monomial, Arc<Tensor>>,
    coproduct2_cache: DashMap<Monomial, Arc<Tensor>>,
    antipode_cache: DashMap<Monomial, Poly>,
}

impl std::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut d = f.debug_struct("Presentation");
        d.field("variables", &self.vars.names());
        for i in self.vars.polynomial_indices() {
            if !self.defects[i].is_zero() {
                d.field(self.vars.name(i), &self.vars.format_tensor(&self.defects[i]));
            }
        }
        d.finish()
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.defects == other.defects
    }
}

impl Presentation {
    /// Builds `O(G)` from its variables and the nonzero coproduct defects.
    ///
    /// Defects may only be attached to polynomial variables and may only
    /// involve variables declared earlier (Laurent variables count as earlier
    /// than every polynomial variable).
    pub fn new(vars: Arc<VarTable>, defects: BTreeMap<String, Tensor>) -> Result<Arc<Self>> {
        let n = vars.len();
        let mut q = vec![Tensor::zero(2); n];
        for (name, t) in defects {
            let i = vars.require(&name)?;
            if vars.is_laurent(i) {
                return Err(Error::Input(format!(
                    "grouplike generator {name} cannot carry a coproduct defect"
                )));
            }
            if t.arity() != 2 {
                return Err(Error::Input(format!("defect of {name} must have two legs")));
            }
            for (legs, _) in t.terms() {
                for m in legs {
                    if m.nvars() != n {
                        return Err(Error::Input(format!(
                            "defect of {name} is not over the presentation variables"
                        )));
                    }
                    vars.check_monomial(m)?;
                    if let Some(j) = m.support().find(|&j| j >= i) {
                        return Err(Error::Validation(format!(
                            "q({name}) uses {} which is not declared before {name}",
                            vars.name(j)
                        )));
                    }
                }
            }
            q[i] = t;
        }

        let unit = Monomial::unit(n);
        let mut gen_coproduct = Vec::with_capacity(n);
        for i in 0..n {
            let v = Monomial::var(n, i, 1);
            let mut t = Tensor::zero(2);
            if vars.is_laurent(i) {
                t.add_term([v.clone(), v].into_iter().collect(), Scalar::one());
            } else {
                t.add_term([v.clone(), unit.clone()].into_iter().collect(), Scalar::one());
                t.add_term([unit.clone(), v].into_iter().collect(), Scalar::one());
                t.add_scaled(&q[i], &Scalar::one());
            }
            gen_coproduct.push(t);
        }

        let mut p = Presentation {
            vars: vars.clone(),
            defects: q,
            gen_coproduct,
            gen_coproduct2: Vec::new(),
            gen_antipode: Vec::new(),
            weights: Vec::new(),
            coproduct_cache: DashMap::new(),
            coproduct2_cache: DashMap::new(),
            antipode_cache: DashMap::new(),
        };
        p.gen_coproduct2 = (0..n)
            .map(|i| p.gen_coproduct[i].expand_leg(0, |m| (*p.coproduct_monomial(m)).clone()))
            .collect();

        // S(y_i) = -y_i - Σ S(Y_i')Y_i'', using generators declared earlier.
        let mut antipode: Vec<Poly> = Vec::with_capacity(n);
        for i in 0..n {
            let v = Monomial::var(n, i, 1);
            let s = if vars.is_laurent(i) {
                Poly::monomial(v.inverse())
            } else {
                let mut s = -&Poly::monomial(v);
                for (legs, c) in p.defects[i].terms() {
                    let left = antipode_with(&antipode, &vars, &legs[0]);
                    s.add_scaled(&left.mul_monomial(&legs[1]), &-c.clone());
                }
                s
            };
            antipode.push(s);
        }
        p.gen_antipode = antipode;

        // w(y_i) = max(1, largest w(Y_i') + w(Y_i'')); grouplikes weigh 0
        let mut weights = vec![0i64; n];
        for i in vars.polynomial_indices() {
            let legs = p.defects[i].terms().map(|(legs, _)| {
                legs.iter()
                    .map(|m| (0..n).map(|k| weights[k] * m.exponent(k).max(0) as i64).sum::<i64>())
                    .sum::<i64>()
            });
            weights[i] = legs.max().unwrap_or(0).max(1);
        }
        p.weights = weights;
        Ok(Arc::new(p))
    }

    /// All generators primitive or grouplike, no defects.
    pub fn abelian(vars: Arc<VarTable>) -> Arc<Self> {
        Self::new(vars, BTreeMap::new()).expect("abelian presentation")
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// `q(v)` for generator index `v`; zero for Laurent and primitive
    /// generators.
    pub fn defect(&self, i: usize) -> &Tensor {
        &self.defects[i]
    }

    pub fn is_abelian(&self) -> bool {
        self.defects.iter().all(Tensor::is_zero)
    }

    pub fn is_primitive_generator(&self, i: usize) -> bool {
        !self.vars.is_laurent(i) && self.defects[i].is_zero()
    }

    pub fn unit(&self) -> Monomial {
        self.vars.unit()
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars())
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        crate::poly::parse_poly(text, &self.vars)
    }

    pub fn format(&self, p: &Poly) -> String {
        self.vars.format_poly(p)
    }

    fn power_of(&self, gens: &[Tensor], i: usize, e: i16) -> Tensor {
        let n = self.nvars();
        let arity = gens[i].arity();
        if e < 0 {
            // grouplike: Δ(x^-k) = x^-k ⊗ … ⊗ x^-k
            let m = Monomial::var(n, i, e);
            let mut t = Tensor::zero(arity);
            t.add_term((0..arity).map(|_| m.clone()).collect(), Scalar::one());
            return t;
        }
        let mut acc = Tensor::one(arity, n);
        for _ in 0..e {
            acc = &acc * &gens[i];
        }
        acc
    }

    /// `Δ(m)` for a monomial, memoized.
    pub fn coproduct_monomial(&self, m: &Monomial) -> Arc<Tensor> {
        if let Some(t) = self.coproduct_cache.get(m) {
            return t.clone();
        }
        let mut acc = Tensor::one(2, self.nvars());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e != 0 {
                acc = &acc * &self.power_of(&self.gen_coproduct, i, e);
            }
        }
        let acc = Arc::new(acc);
        self.coproduct_cache.insert(m.clone(), acc.clone());
        acc
    }

    /// `(Δ⊗id)Δ(m)` for a monomial, memoized.
    pub fn coproduct2_monomial(&self, m: &Monomial) -> Arc<Tensor> {
        if let Some(t) = self.coproduct2_cache.get(m) {
            return t.clone();
        }
        let mut acc = Tensor::one(3, self.nvars());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e != 0 {
                acc = &acc * &self.power_of(&self.gen_coproduct2, i, e);
            }
        }
        let acc = Arc::new(acc);
        self.coproduct2_cache.insert(m.clone(), acc.clone());
        acc
    }

    /// `Δ(p)`.
    pub fn coproduct(&self, p: &Poly) -> Tensor {
        let mut out = Tensor::zero(2);
        for (m, c) in p.terms() {
            out.add_scaled(&self.coproduct_monomial(m), c);
        }
        out
    }

    /// `(Δ⊗id)Δ(p)`.
    pub fn coproduct2(&self, p: &Poly) -> Tensor {
        let mut out = Tensor::zero(3);
        for (m, c) in p.terms() {
            out.add_scaled(&self.coproduct2_monomial(m), c);
        }
        out
    }

    /// `(id⊗Δ)Δ(p)`, computed independently of [`Self::coproduct2`].
    pub fn coproduct2_right(&self, p: &Poly) -> Tensor {
        self.coproduct(p)
            .expand_leg(1, |m| (*self.coproduct_monomial(m)).clone())
    }

    /// Applies Δ to one leg of a tensor.
    pub fn coproduct_on_leg(&self, t: &Tensor, leg: usize) -> Tensor {
        t.expand_leg(leg, |m| (*self.coproduct_monomial(m)).clone())
    }

    pub fn counit_monomial(&self, m: &Monomial) -> Scalar {
        if self.vars.polynomial_indices().all(|i| m.exponent(i) == 0) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    /// `ε(p)`: polynomial variables at 0, Laurent variables at 1.
    pub fn counit(&self, p: &Poly) -> Scalar {
        let mut total = Scalar::zero();
        for (m, c) in p.terms() {
            if self.vars.polynomial_indices().all(|i| m.exponent(i) == 0) {
                total += c;
            }
        }
        total
    }

    pub fn antipode_monomial(&self, m: &Monomial) -> Poly {
        if let Some(p) = self.antipode_cache.get(m) {
            return p.clone();
        }
        let s = antipode_with(&self.gen_antipode, &self.vars, m);
        self.antipode_cache.insert(m.clone(), s.clone());
        s
    }

    pub fn antipode(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.antipode_monomial(m), c);
        }
        out
    }

    /// Whether `Δ(p) = p⊗1 + 1⊗p`.
    pub fn is_primitive(&self, p: &Poly) -> bool {
        let one = self.one();
        let expected = &Tensor::pure(&[p, &one]) + &Tensor::pure(&[&one, p]);
        self.coproduct(p) == expected
    }

    /// Weight of a generator in the filtration compatible with `Δ`:
    /// primitives weigh 1, grouplikes 0, and `q(y)` never exceeds `w(y)`.
    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn weighted_degree_monomial(&self, m: &Monomial) -> i64 {
        m.exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&e, w)| e.max(0) as i64 * w)
            .sum()
    }

    /// Largest weighted degree among the terms; `None` for zero.
    pub fn weighted_degree(&self, p: &Poly) -> Option<i64> {
        p.terms().map(|(m, _)| self.weighted_degree_monomial(m)).max()
    }

    /// Index of the last generator a polynomial depends on.
    pub fn filtration_level(&self, p: &Poly) -> Option<usize> {
        p.variables().into_iter().max()
    }
}

/// `S(m)` from precomputed generator antipodes (indices below `gens.len()`).
fn antipode_with(gens: &[Poly], vars: &VarTable, m: &Monomial) -> Poly {
    let n = vars.len();
    let mut acc = Poly::one(n);
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e < 0 {
            // S(x^-1) = x for grouplike x
            acc = acc.mul_monomial(&Monomial::var(n, i, -e));
            continue;
        }
        for _ in 0..e {
            acc = &acc * &gens[i];
        }
    }
    acc
}
