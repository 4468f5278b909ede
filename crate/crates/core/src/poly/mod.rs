//! Exact sparse (Laurent-)polynomial arithmetic and its 2- and 3-fold tensor
//! powers.

mod enumerate;
mod format;
mod parse;
mod subst;
mod tensor;
mod vars;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use enumerate::{monomials_up_to, tuples_up_to};
pub use parse::{parse_poly, parse_scalar, parse_tensor, Expr};
pub use subst::Substitution;
pub use tensor::Tensor;
pub use vars::VarTable;

/// Exact rational scalar, always in lowest terms.
pub type Scalar = BigRational;

/// `n/d` as a scalar.
pub fn q(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Dense exponent vector over a [`VarTable`]. The all-zero vector is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(SmallVec<[i16; 8]>);

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, exponent: i16) -> Self {
        let mut m = Self::unit(nvars);
        m.0[i] = exponent;
        m
    }

    pub fn from_exponents(exponents: &[i16]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[i16] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> i16 {
        self.0[i]
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub(crate) fn with_exponent(&self, i: usize, e: i16) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }
}

/// Sparse exact combination of monomials; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar, nvars: usize) -> Self {
        Self::term(Monomial::unit(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(Scalar::one(), nvars)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i, 1))
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_unit())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn add_scaled(&mut self, other: &Poly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32, nvars: usize) -> Poly {
        let mut acc = Poly::one(nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a nonzero scalar multiple of a monomial.
    pub fn invert_monomial_multiple(&self) -> Result<Poly> {
        if self.terms.len() != 1 {
            return Err(Error::Domain(
                "only monomial multiples are invertible".to_string(),
            ));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Ok(Poly::term(m.inverse(), c.recip()))
    }

    /// Largest polynomial degree among the terms; `None` for zero.
    pub fn unipotent_degree(&self, vars: &VarTable) -> Option<i64> {
        self.terms.keys().map(|m| vars.unipotent_degree(m)).max()
    }

    /// Variables with a nonzero exponent in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = Vec::new();
        for m in self.terms.keys() {
            for i in m.support() {
                if !seen.contains(&i) {
                    seen.push(i);
                }
            }
        }
        seen.sort_unstable();
        seen
    }

    /// Evaluates at a point given by per-variable scalar coordinates.
    pub fn evaluate(&self, coords: &[Scalar]) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = &coords[i];
                if e < 0 && x.is_zero() {
                    return Err(Error::Domain("negative power of zero".into()));
                }
                let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
                v *= if e < 0 { p.recip() } else { p };
            }
            total += v;
        }
        Ok(total)
    }

    pub fn max_abs_coefficient(&self) -> Scalar {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Scalar::zero)
    }
}

impl From<BTreeMap<Monomial, Scalar>> for Poly {
    fn from(mut terms: BTreeMap<Monomial, Scalar>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        Poly { terms }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.mul(b), c * d);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> std::sync::Arc<VarTable> {
        VarTable::new(&["F"], &["X", "Y"]).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let v = xy();
        let x = parse_poly("X", &v).unwrap();
        let y = parse_poly("Y", &v).unwrap();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, parse_poly("X^2 - Y^2", &v).unwrap());
    }

    #[test]
    fn laurent_unit() {
        let v = xy();
        let f = parse_poly("F", &v).unwrap();
        let finv = parse_poly("F^-1", &v).unwrap();
        assert_eq!(&f * &finv, Poly::one(v.len()));
        assert_eq!(f.invert_monomial_multiple().unwrap(), finv);
    }

    #[test]
    fn zero_coefficients_vanish() {
        let v = xy();
        let p = parse_poly("X + Y", &v).unwrap();
        let d = &p - &p;
        assert!(d.is_zero());
        assert_eq!(d, Poly::zero());
    }

    #[test]
    fn non_monomial_inverse_rejected() {
        let v = xy();
        let p = parse_poly("1 + X", &v).unwrap();
        assert!(matches!(p.invert_monomial_multiple(), Err(Error::Domain(_))));
    }

    #[test]
    fn evaluate_at_point() {
        let v = xy();
        let p = parse_poly("F^-1*X + 1/2 Y^2", &v).unwrap();
        let val = p.evaluate(&[int(2), int(3), int(4)]).unwrap();
        assert_eq!(val, q(3, 2) + int(8));
    }
}
