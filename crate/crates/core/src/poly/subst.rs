use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use crate::error::{Error, Result};

use super::{Monomial, Poly, Tensor, VarTable};

/// Algebra homomorphism between coordinate algebras, determined by the images
/// of the source variables.
pub struct Substitution {
    source: Arc<VarTable>,
    target: Arc<VarTable>,
    images: Vec<Poly>,
    /// Images of `v^-1` for Laurent source variables.
    inverse_images: Vec<Option<Poly>>,
    cache: DashMap<Monomial, Poly>,
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (i, p) in self.images.iter().enumerate() {
            m.entry(&self.source.name(i), &self.target.format_poly(p));
        }
        m.finish()
    }
}

impl Clone for Substitution {
    fn clone(&self) -> Self {
        Substitution {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.clone(),
            inverse_images: self.inverse_images.clone(),
            cache: DashMap::new(),
        }
    }
}

impl Substitution {
    /// Builds the homomorphism from per-variable images. Every source variable
    /// needs an image; images of Laurent variables must be invertible monomial
    /// multiples in the target.
    pub fn new(
        source: Arc<VarTable>,
        target: Arc<VarTable>,
        images: &BTreeMap<String, Poly>,
    ) -> Result<Self> {
        for name in images.keys() {
            source.require(name)?;
        }
        let mut imgs = Vec::with_capacity(source.len());
        for name in source.names() {
            let p = images
                .get(name)
                .ok_or_else(|| Error::Input(format!("no image given for variable {name}")))?;
            imgs.push(p.clone());
        }
        Self::from_images(source, target, imgs)
    }

    pub fn from_images(source: Arc<VarTable>, target: Arc<VarTable>, images: Vec<Poly>) -> Result<Self> {
        assert_eq!(images.len(), source.len());
        let mut inverse_images = Vec::with_capacity(images.len());
        for (i, p) in images.iter().enumerate() {
            for (m, _) in p.terms() {
                if m.nvars() != target.len() {
                    return Err(Error::Input(format!(
                        "image of {} is not over the target variables",
                        source.name(i)
                    )));
                }
                target.check_monomial(m)?;
            }
            if source.is_laurent(i) {
                let inv = p.invert_monomial_multiple().map_err(|_| {
                    Error::Domain(format!(
                        "image of Laurent variable {} is not invertible",
                        source.name(i)
                    ))
                })?;
                for (m, _) in inv.terms() {
                    target.check_monomial(m)?;
                }
                inverse_images.push(Some(inv));
            } else {
                inverse_images.push(None);
            }
        }
        Ok(Substitution {
            source,
            target,
            images,
            inverse_images,
            cache: DashMap::new(),
        })
    }

    /// The identity on `vars`.
    pub fn identity(vars: Arc<VarTable>) -> Self {
        let images = (0..vars.len()).map(|i| Poly::var(vars.len(), i)).collect();
        Self::from_images(vars.clone(), vars, images).expect("identity substitution")
    }

    pub fn source(&self) -> &Arc<VarTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VarTable> {
        &self.target
    }

    pub fn image_of_var(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Poly {
        if let Some(p) = self.cache.get(m) {
            return p.clone();
        }
        let n = self.target.len();
        let mut acc = Poly::one(n);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = if e > 0 {
                &self.images[i]
            } else {
                // Construction guarantees Laurent source variables have inverses,
                // and monomials over the source never carry negative powers of
                // polynomial variables.
                self.inverse_images[i]
                    .as_ref()
                    .expect("negative power of a polynomial variable")
            };
            for _ in 0..e.unsigned_abs() {
                acc = &acc * base;
            }
        }
        self.cache.insert(m.clone(), acc.clone());
        acc
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.apply_monomial(m), c);
        }
        out
    }

    /// Applies the substitution to every leg.
    pub fn apply_tensor(&self, t: &Tensor) -> Tensor {
        let mut out = t.clone();
        for leg in 0..t.arity() {
            out = out.map_leg(leg, |m| self.apply_monomial(m));
        }
        out
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Substitution) -> Result<Substitution> {
        if self.target.as_ref() != next.source.as_ref() {
            return Err(Error::Input("substitutions do not compose".into()));
        }
        let images = self.images.iter().map(|p| next.apply(p)).collect();
        Self::from_images(self.source.clone(), next.target.clone(), images)
    }

    /// Images keyed by source variable name.
    pub fn image_map(&self) -> BTreeMap<String, Poly> {
        self.source
            .names()
            .iter()
            .cloned()
            .zip(self.images.iter().cloned())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, parse_tensor};

    fn heisen1() -> Arc<VarTable> {
        VarTable::new::<&str>(&[], &["X", "Y", "V", "W"]).unwrap()
    }

    fn map(src: &Arc<VarTable>, dst: &Arc<VarTable>, pairs: &[(&str, &str)]) -> Result<Substitution> {
        let images = pairs
            .iter()
            .map(|(k, v)| Ok((k.to_string(), parse_poly(v, dst)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Substitution::new(src.clone(), dst.clone(), &images)
    }

    #[test]
    fn kill_y_pullback() {
        let g = heisen1();
        let h = VarTable::new::<&str>(&[], &["X", "V"]).unwrap();
        let s = map(&g, &h, &[("X", "X"), ("Y", "0"), ("V", "V"), ("W", "0")]).unwrap();
        let p = parse_poly("V + X*Y", &g).unwrap();
        assert_eq!(s.apply(&p), parse_poly("V", &h).unwrap());
    }

    #[test]
    fn quotient_substitution() {
        let u = VarTable::new::<&str>(&[], &["F23", "F34"]).unwrap();
        let s = map(&u, &u, &[("F23", "F34 - 1"), ("F34", "F34")]).unwrap();
        let p = parse_poly("F23*F34", &u).unwrap();
        assert_eq!(s.apply(&p), parse_poly("(F34 - 1)*F34", &u).unwrap());
    }

    #[test]
    fn support_embedding_on_coproduct_leg() {
        let g = VarTable::new(&["F"], &["X", "Y", "V"]).unwrap();
        let s_vars = VarTable::new(&["F"], &["t"]).unwrap();
        let s = map(
            &g,
            &s_vars,
            &[("F", "F"), ("X", "t"), ("Y", "t"), ("V", "1/2 t^2")],
        )
        .unwrap();
        let q = parse_tensor("X(x)Y", &g).unwrap();
        assert_eq!(s.apply_tensor(&q), parse_tensor("t(x)t", &s_vars).unwrap());
    }

    #[test]
    fn missing_image_is_input_error() {
        let g = heisen1();
        let err = map(&g, &g, &[("X", "X")]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn non_invertible_laurent_image_is_domain_error() {
        let g = VarTable::new(&["F"], &["X"]).unwrap();
        let err = map(&g, &g, &[("F", "F + X"), ("X", "X")]).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }
}
