//! Bifunctionals on `A⊗A` and twists built from them.

mod bifunctional;
mod expr;
mod log;
mod twist;

pub use bifunctional::{Bifunctional, Value};
pub use log::{AssumedPair, AssumptionLog, Side};
pub use twist::{TableEntry, Twist, TwistKind, DEFAULT_MAX_ORDER};

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::error::Error;
    use crate::hopf::Presentation;
    use crate::poly::{int, monomials_up_to, q, tuples_up_to, Poly};
    use crate::testing::*;

    fn val(t: &Twist, a: &str, b: &str, side: Side) -> crate::poly::Scalar {
        let g = t.domain();
        t.bieval(&g.parse(a).unwrap(), &g.parse(b).unwrap(), side).unwrap().0
    }

    #[test]
    fn exp_twist_generator_values() {
        let t = heisen3_twist();
        assert_eq!(val(&t, "X", "V", Side::J), q(1, 2));
        assert_eq!(val(&t, "V", "X", Side::J), q(-1, 2));
        assert_eq!(val(&t, "X", "V", Side::JInv), q(-1, 2));
        assert_eq!(val(&t, "V", "X", Side::JInv), q(1, 2));
    }

    #[test]
    fn exp_twist_second_order_term() {
        // only (1/2!)(1/2)^2 r̂^2(X^2⊗V^2) = (1/8)·4 survives the counit
        let t = heisen3_twist();
        assert_eq!(val(&t, "X^2", "V^2", Side::J), q(1, 2));
    }

    #[test]
    fn torus_twist_value() {
        let t = torus_twist();
        assert_eq!(val(&t, "F", "X", Side::J), q(1, 2));
        assert_eq!(val(&t, "X", "F", Side::J), q(-1, 2));
    }

    #[test]
    fn torus_torus_pair_is_unsupported() {
        let g = presentation(&["F", "G"], &[], &[]);
        let m = hopf_map(&g, &g, &[("F", "F"), ("G", "G")]);
        let err = Twist::exp_r(g, &[("F".into(), "G".into(), int(1))], q(1, 2), m, 64).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }

    #[test]
    fn iteration_cap_is_an_error() {
        let g = presentation(&[], &["X", "V"], &[]);
        let m = hopf_map(&g, &g, &[("X", "X"), ("V", "V")]);
        let t = Twist::exp_r(g.clone(), &[("X".into(), "V".into(), int(1))], q(1, 2), m, 2).unwrap();
        let x3 = g.parse("X^3").unwrap();
        let v3 = g.parse("V^3").unwrap();
        assert!(matches!(
            t.bieval(&x3, &v3, Side::J),
            Err(Error::IterationCap { cap: 2 })
        ));
        assert!(t.bieval(&g.parse("X^2").unwrap(), &g.parse("V^2").unwrap(), Side::J).is_ok());
    }

    #[test]
    fn table_lookup_and_log() {
        let t = minimal_twist();
        assert_eq!(val(&t, "W", "Y", Side::J), q(1, 2));
        assert_eq!(val(&t, "V", "X", Side::J), q(-1, 2));
        let g = t.domain();
        let y = g.parse("Y").unwrap();
        let (v, log) = t.bieval(&y, &y, Side::J).unwrap();
        assert!(v.is_zero());
        assert_eq!(log.render(), vec!["J(Y,Y)"]);
        // counital values never consult the table
        let (v, log) = t.bieval(&g.parse("W").unwrap(), &g.one(), Side::JInv).unwrap();
        assert!(v.is_zero() && log.is_empty());
    }

    #[test]
    fn table_rejects_primitive_antisymmetry_violation() {
        let g = presentation(&[], &["X", "V"], &[]);
        let e = (mono(&g, "X"), mono(&g, "V"), q(1, 2));
        let err = Twist::table(g, vec![e.clone()], vec![e], 2).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn table_rejects_duplicates_and_unit_entries() {
        let g = dim4();
        let e = (mono(&g, "X"), mono(&g, "V"), q(1, 2));
        let err = Twist::table(g.clone(), vec![e.clone(), e], vec![], 2).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
        let u = (mono(&g, "1"), mono(&g, "V"), q(1, 2));
        assert!(matches!(Twist::table(g, vec![u], vec![], 2), Err(Error::Input(_))));
    }

    fn convolution_is_counit(t: &Twist, degree: usize) {
        let g = t.domain();
        let e = Bifunctional::counit(g.clone());
        let a = t.j().convolve(t.j_inv());
        let b = t.j_inv().convolve(t.j());
        for pair in tuples_up_to(g.vars(), 2, degree) {
            let want = e.eval_monomials(&pair[0], &pair[1]).unwrap().0;
            assert_eq!(a.eval_monomials(&pair[0], &pair[1]).unwrap().0, want);
            assert_eq!(b.eval_monomials(&pair[0], &pair[1]).unwrap().0, want);
        }
    }

    #[test]
    fn exp_twists_are_convolution_invertible() {
        convolution_is_counit(&heisen3_twist(), 4);
        convolution_is_counit(&dim4_twist(), 4);
        convolution_is_counit(&torus_twist(), 4);
    }

    #[test]
    fn flip_and_counit_unit() {
        let t = dim4_twist();
        let g = t.domain().clone();
        let x = g.parse("X").unwrap();
        let v = g.parse("V").unwrap();
        assert_eq!(t.j().flip().eval(&v, &x).unwrap().0, q(1, 2));
        let e = Bifunctional::counit(g.clone());
        let left = e.convolve(t.j());
        for pair in tuples_up_to(g.vars(), 2, 3) {
            assert_eq!(
                left.eval_monomials(&pair[0], &pair[1]).unwrap().0,
                t.j().eval_monomials(&pair[0], &pair[1]).unwrap().0
            );
        }
    }

    #[test]
    fn counital_laws_every_kind() {
        for t in [heisen3_twist(), minimal_twist(), torus_twist(), u4_quotient_twist()] {
            let g = t.domain();
            for m in monomials_up_to(g.vars(), 3) {
                let a = Poly::monomial(m);
                for side in [Side::J, Side::JInv] {
                    assert_eq!(t.bieval(&a, &g.one(), side).unwrap().0, g.counit(&a));
                    assert_eq!(t.bieval(&g.one(), &a, side).unwrap().0, g.counit(&a));
                }
            }
        }
    }

    #[test]
    fn primitive_pairs_are_antisymmetric_for_exp_twists() {
        let t = u4_twist();
        let g: &Presentation = t.domain();
        let prims: Vec<usize> = g.vars().polynomial_indices().filter(|&i| g.is_primitive_generator(i)).collect();
        for &i in &prims {
            for &k in &prims {
                let (a, b) = (g.var(i), g.var(k));
                let j = t.bieval(&a, &b, Side::J).unwrap().0;
                assert_eq!(j, -t.bieval(&b, &a, Side::J).unwrap().0);
                assert_eq!(j, -t.bieval(&a, &b, Side::JInv).unwrap().0);
            }
        }
    }

    #[test]
    fn pullbacks() {
        assert!(val(&dim4_twist(), "W", "X", Side::J).is_zero());
        assert_eq!(val(&u4_twist(), "F12", "F34", Side::J), q(1, 2));
        // the pulled-back table logs pairs in the table's own variables
        let t = u4_quotient_twist();
        let (_, log) = t.bieval(&t.domain().parse("F23").unwrap(), &t.domain().parse("F34").unwrap(), Side::J).unwrap();
        assert_eq!(log.render(), vec!["J(Y,Y)"]);
    }

    #[test]
    fn exp_logs_stay_empty() {
        let t = dim4_twist();
        let g = t.domain();
        for pair in tuples_up_to(g.vars(), 2, 3) {
            assert!(t.j().eval_monomials(&pair[0], &pair[1]).unwrap().1.is_empty());
        }
    }
}
