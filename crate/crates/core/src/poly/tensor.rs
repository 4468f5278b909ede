use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;
use smallvec::SmallVec;

use super::{Monomial, Poly, Scalar};

pub(crate) type Legs = SmallVec<[Monomial; 3]>;

/// Element of `A^{⊗arity}` (arity 2 or 3) in the monomial basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<Legs, Scalar>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1, "tensor arity must be positive");
        Tensor {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ … ⊗ 1`.
    pub fn one(arity: usize, nvars: usize) -> Self {
        let mut t = Self::zero(arity);
        t.add_term(
            (0..arity).map(|_| Monomial::unit(nvars)).collect(),
            Scalar::from_integer(1.into()),
        );
        t
    }

    /// Pure tensor `p_1 ⊗ … ⊗ p_k`.
    pub fn pure(legs: &[&Poly]) -> Self {
        let mut t = Tensor::zero(legs.len());
        fn rec(t: &mut Tensor, legs: &[&Poly], acc: &mut Legs, c: Scalar) {
            if acc.len() == legs.len() {
                t.add_term(acc.clone(), c);
                return;
            }
            for (m, d) in legs[acc.len()].terms() {
                acc.push(m.clone());
                rec(t, legs, acc, &c * d);
                acc.pop();
            }
        }
        rec(
            &mut t,
            legs,
            &mut Legs::new(),
            Scalar::from_integer(1.into()),
        );
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial], &Scalar)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    pub fn add_term(&mut self, legs: Legs, c: Scalar) {
        debug_assert_eq!(legs.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        for (k, d) in &other.terms {
            self.add_term(k.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    /// Applies a linear map to one leg, expanding into the monomial basis.
    pub fn map_leg<F>(&self, leg: usize, mut f: F) -> Tensor
    where
        F: FnMut(&Monomial) -> Poly,
    {
        let mut out = Tensor::zero(self.arity);
        for (k, c) in &self.terms {
            for (m, d) in f(&k[leg]).terms() {
                let mut legs = k.clone();
                legs[leg] = m.clone();
                out.add_term(legs, c * d);
            }
        }
        out
    }

    /// Replaces leg `leg` by a tensor of arity `t.arity()` (e.g. applying Δ to
    /// one leg), raising the arity accordingly.
    pub fn expand_leg<F>(&self, leg: usize, mut f: F) -> Tensor
    where
        F: FnMut(&Monomial) -> Tensor,
    {
        let mut out: Option<Tensor> = None;
        for (k, c) in &self.terms {
            let image = f(&k[leg]);
            let out = out.get_or_insert_with(|| Tensor::zero(self.arity - 1 + image.arity));
            for (inner, d) in &image.terms {
                let mut legs = Legs::new();
                legs.extend(k[..leg].iter().cloned());
                legs.extend(inner.iter().cloned());
                legs.extend(k[leg + 1..].iter().cloned());
                out.add_term(legs, c * d);
            }
        }
        out.unwrap_or_else(|| Tensor::zero(self.arity + 1))
    }

    /// Sum of `c · f(legs)` over the terms.
    pub fn contract<F>(&self, mut f: F) -> Scalar
    where
        F: FnMut(&[Monomial]) -> Scalar,
    {
        let mut total = Scalar::zero();
        for (k, c) in &self.terms {
            let v = f(k);
            if !v.is_zero() {
                total += c * v;
            }
        }
        total
    }

    /// Multiplies the legs together (the commutative product `A^{⊗k} → A`).
    pub fn multiply_legs(&self) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in &self.terms {
            let m = k[1..].iter().fold(k[0].clone(), |acc, x| acc.mul(x));
            out.add_term(m, c.clone());
        }
        out
    }
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_integer(1.into()));
        out
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_integer((-1).into()));
        out
    }
}

/// Componentwise product `(a⊗b)(c⊗d) = ac⊗bd`.
impl Mul for &Tensor {
    type Output = Tensor;
    fn mul(self, rhs: &Tensor) -> Tensor {
        assert_eq!(self.arity, rhs.arity, "tensor arity mismatch");
        let mut out = Tensor::zero(self.arity);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                let legs: Legs = a.iter().zip(b.iter()).map(|(x, y)| x.mul(y)).collect();
                out.add_term(legs, c * d);
            }
        }
        out
    }
}
