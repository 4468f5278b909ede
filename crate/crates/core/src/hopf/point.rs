use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Scalar, Substitution, Tensor};

use super::Presentation;

/// A point of `G` in coordinates: polynomial coordinates default to 0,
/// Laurent coordinates to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPoint {
    coords: Vec<Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Translation {
    /// `ρ_g = (id⊗ev_g)Δ`
    Right,
    /// `λ_g = (ev_g∘S⊗id)Δ`
    Left,
    /// `λ_{g^-1} = (ev_g⊗id)Δ`
    LeftInverse,
    /// `Ad g = ρ_g∘λ_g`
    Ad,
}

impl GroupPoint {
    pub fn identity(g: &Presentation) -> Self {
        let vars = g.vars();
        let coords = (0..vars.len())
            .map(|i| {
                if vars.is_laurent(i) {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect();
        GroupPoint { coords }
    }

    pub fn new(g: &Presentation, coords: &BTreeMap<String, Scalar>) -> Result<Self> {
        let mut p = Self::identity(g);
        for (name, c) in coords {
            let i = g.vars().require(name)?;
            if g.vars().is_laurent(i) && c.is_zero() {
                return Err(Error::Input(format!(
                    "Laurent coordinate {name} of a group point must be nonzero"
                )));
            }
            p.coords[i] = c.clone();
        }
        Ok(p)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_identity(&self, g: &Presentation) -> bool {
        *self == Self::identity(g)
    }

    /// `p(g)`.
    pub fn eval(&self, p: &Poly) -> Scalar {
        p.evaluate(&self.coords)
            .expect("Laurent coordinates of a point are nonzero")
    }

    pub fn eval_monomial(&self, m: &Monomial) -> Scalar {
        self.eval(&Poly::monomial(m.clone()))
    }

    /// Renders the nonzero-departure coordinates, e.g. `Y=1`.
    pub fn describe(&self, g: &Presentation) -> String {
        let id = Self::identity(g);
        let parts: Vec<String> = self
            .coords
            .iter()
            .zip(&id.coords)
            .enumerate()
            .filter(|(_, (c, d))| c != d)
            .map(|(i, (c, _))| format!("{}={}", g.vars().name(i), crate::poly::format_scalar(c)))
            .collect();
        if parts.is_empty() {
            "identity".to_string()
        } else {
            parts.join(",")
        }
    }
}

/// `(φ⊗id)t` or `(id⊗φ)t` for a 2-tensor and a scalar-valued `φ`.
fn contract_leg(t: &Tensor, leg: usize, mut phi: impl FnMut(&Monomial) -> Scalar) -> Poly {
    let mut out = Poly::zero();
    for (legs, c) in t.terms() {
        let v = phi(&legs[leg]);
        if !v.is_zero() {
            out.add_term(legs[1 - leg].clone(), c * v);
        }
    }
    out
}

impl Presentation {
    /// Applies a translation directly through the coproduct.
    pub fn translate(&self, p: &Poly, g: &GroupPoint, which: Translation) -> Poly {
        match which {
            Translation::Right => contract_leg(&self.coproduct(p), 1, |m| g.eval_monomial(m)),
            Translation::LeftInverse => contract_leg(&self.coproduct(p), 0, |m| g.eval_monomial(m)),
            Translation::Left => contract_leg(&self.coproduct(p), 0, |m| {
                g.eval(&self.antipode_monomial(m))
            }),
            Translation::Ad => {
                let l = self.translate(p, g, Translation::Left);
                self.translate(&l, g, Translation::Right)
            }
        }
    }

    /// The translation as an algebra endomorphism, determined on generators.
    pub fn translation(self: &Arc<Self>, g: &GroupPoint, which: Translation) -> Substitution {
        let images = (0..self.nvars())
            .map(|i| self.translate(&self.var(i), g, which))
            .collect();
        Substitution::from_images(self.vars().clone(), self.vars().clone(), images)
            .expect("translations of grouplike generators are monomial multiples")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::tests::heisen1;
    use crate::poly::{int, monomials_up_to, q};

    fn at_y(g: &Presentation, y: Scalar) -> GroupPoint {
        GroupPoint::new(g, &BTreeMap::from([("Y".to_string(), y)])).unwrap()
    }

    #[test]
    fn right_translation_of_w() {
        let g = heisen1();
        let pt = at_y(&g, int(3));
        let w = g.parse("W").unwrap();
        let moved = g.translate(&w, &pt, Translation::Right);
        let shifted = &(&moved - &w) - &Poly::constant(pt.eval(&w), g.nvars());
        // y0 V + y0^2/2 X
        assert_eq!(shifted, g.parse("3 V + 9/2 X").unwrap());
    }

    #[test]
    fn ad_of_w_at_unit_y() {
        let g = heisen1();
        let pt = at_y(&g, int(1));
        let w = g.parse("W").unwrap();
        assert_eq!(
            g.translate(&w, &pt, Translation::Ad),
            g.parse("W + V + 1/2 X").unwrap()
        );
    }

    #[test]
    fn identity_point_is_counit_and_identity_maps() {
        let g = heisen1();
        let e = GroupPoint::identity(&g);
        for m in monomials_up_to(g.vars(), 3) {
            let p = Poly::monomial(m);
            assert_eq!(e.eval(&p), g.counit(&p));
            assert_eq!(g.translate(&p, &e, Translation::Right), p);
            assert_eq!(g.translate(&p, &e, Translation::Left), p);
        }
    }

    #[test]
    fn primitive_left_translation() {
        let g = heisen1();
        let pt = GroupPoint::new(&g, &BTreeMap::from([("X".to_string(), q(2, 3))])).unwrap();
        let x = g.parse("X").unwrap();
        assert_eq!(g.translate(&x, &pt, Translation::Left), g.parse("X - 2/3").unwrap());
    }

    #[test]
    fn translations_are_multiplicative() {
        let g = heisen1();
        let pt = GroupPoint::new(
            &g,
            &BTreeMap::from([("X".to_string(), int(2)), ("Y".to_string(), q(-1, 2)), ("V".to_string(), int(1))]),
        )
        .unwrap();
        for which in [Translation::Right, Translation::Left, Translation::Ad] {
            let hom = g.translation(&pt, which);
            for m in monomials_up_to(g.vars(), 3) {
                let p = Poly::monomial(m);
                assert_eq!(hom.apply(&p), g.translate(&p, &pt, which), "{which:?}");
            }
        }
    }

    #[test]
    fn zero_laurent_coordinate_rejected() {
        let vars = crate::poly::VarTable::new(&["F"], &["X"]).unwrap();
        let g = Presentation::abelian(vars);
        let err = GroupPoint::new(&g, &BTreeMap::from([("F".to_string(), Scalar::zero())]));
        assert!(matches!(err, Err(Error::Input(_))));
    }
}
