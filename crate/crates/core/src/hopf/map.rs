use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Substitution;

use super::Presentation;

/// An algebra map `O(G) → O(H)` that was checked to respect Δ and ε on
/// generators, hence a Hopf map.
#[derive(Debug, Clone)]
pub struct HopfMap {
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    subst: Arc<Substitution>,
}

impl HopfMap {
    pub fn new(source: Arc<Presentation>, target: Arc<Presentation>, subst: Substitution) -> Result<Self> {
        if subst.source().as_ref() != source.vars().as_ref()
            || subst.target().as_ref() != target.vars().as_ref()
        {
            return Err(Error::Input("map variables do not match the presentations".into()));
        }
        for i in 0..source.nvars() {
            let v = source.var(i);
            let image = subst.apply(&v);
            let lhs = target.coproduct(&image);
            let rhs = subst.apply_tensor(&source.coproduct(&v));
            if lhs != rhs {
                let diff = &lhs - &rhs;
                return Err(Error::Validation(format!(
                    "map is not a coalgebra map at {}: Δ(π({})) - (π⊗π)Δ({}) = {}",
                    source.vars().name(i),
                    source.vars().name(i),
                    source.vars().name(i),
                    target.vars().format_tensor(&diff)
                )));
            }
            if target.counit(&image) != source.counit(&v) {
                return Err(Error::Validation(format!(
                    "map does not preserve the counit at {}",
                    source.vars().name(i)
                )));
            }
        }
        Ok(HopfMap {
            source,
            target,
            subst: Arc::new(subst),
        })
    }

    pub fn identity(g: Arc<Presentation>) -> Self {
        let subst = Substitution::identity(g.vars().clone());
        HopfMap {
            source: g.clone(),
            target: g,
            subst: Arc::new(subst),
        }
    }

    pub fn source(&self) -> &Arc<Presentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Presentation> {
        &self.target
    }

    pub fn substitution(&self) -> &Arc<Substitution> {
        &self.subst
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::hopf::tests::heisen1;
    use crate::poly::{parse_poly, VarTable};

    fn images(src: &Presentation, dst: &Presentation, pairs: &[(&str, &str)]) -> Substitution {
        let map: BTreeMap<String, _> = pairs
            .iter()
            .map(|(k, v)| (k.to_string(), parse_poly(v, dst.vars()).unwrap()))
            .collect();
        Substitution::new(src.vars().clone(), dst.vars().clone(), &map).unwrap()
    }

    #[test]
    fn kill_y_and_w_is_hopf() {
        let g = heisen1();
        let h = Presentation::abelian(VarTable::new::<&str>(&[], &["X", "V"]).unwrap());
        let s = images(&g, &h, &[("X", "X"), ("Y", "0"), ("V", "V"), ("W", "0")]);
        assert!(HopfMap::new(g, h, s).is_ok());
    }

    #[test]
    fn squaring_is_rejected() {
        let h = Presentation::abelian(VarTable::new::<&str>(&[], &["X"]).unwrap());
        let s = images(&h, &h, &[("X", "X^2")]);
        assert!(matches!(HopfMap::new(h.clone(), h, s), Err(Error::Validation(_))));
    }
}
