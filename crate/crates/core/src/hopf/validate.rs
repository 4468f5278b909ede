use crate::poly::{Poly, Tensor};
use crate::report::{CheckReport, Section};

use super::Presentation;

/// Structural checks of a presentation on its generators: coassociativity,
/// defect support, counit and antipode axioms, and the primitivity of the
/// first unipotent generators.
pub fn validate_presentation(g: &Presentation) -> CheckReport {
    let vars = g.vars();
    let mut report = CheckReport::new(Section::Validate, "presentation");
    report.fact(format!(
        "generators={} laurent={} unipotent={}",
        vars.len(),
        vars.laurent_count(),
        vars.len() - vars.laurent_count()
    ));

    for i in 0..vars.len() {
        let name = vars.name(i);
        let v = g.var(i);

        let left = g.coproduct2(&v);
        let right = g.coproduct2_right(&v);
        if left != right {
            report.fail(format!(
                "coassociativity at {name}: (Δ⊗id)Δ - (id⊗Δ)Δ = {}",
                vars.format_tensor(&(&left - &right))
            ));
        }

        for (legs, _) in g.defect(i).terms() {
            if legs.iter().any(|m| m.is_unit()) {
                report.fail(format!(
                    "q({name}) has a leg outside the augmentation ideal: {}",
                    vars.format_tensor(g.defect(i))
                ));
                break;
            }
        }

        let delta = g.coproduct(&v);
        for leg in 0..2 {
            let reduced = counit_on_leg(g, &delta, leg);
            if reduced != v {
                report.fail(format!(
                    "counit axiom on leg {} at {name}: got {}",
                    leg + 1,
                    vars.format_poly(&reduced)
                ));
            }
        }

        let expected = Poly::constant(g.counit(&v), g.nvars());
        let s_left = delta.map_leg(0, |m| g.antipode_monomial(m)).multiply_legs();
        let s_right = delta.map_leg(1, |m| g.antipode_monomial(m)).multiply_legs();
        if s_left != expected || s_right != expected {
            report.fail(format!(
                "antipode axiom at {name}: m(S⊗id)Δ = {}, m(id⊗S)Δ = {}",
                vars.format_poly(&s_left),
                vars.format_poly(&s_right)
            ));
        }
    }

    let unipotent: Vec<usize> = vars.polynomial_indices().collect();
    if let Some(&first) = unipotent.first() {
        if !g.defect(first).is_zero() {
            report.fail(format!(
                "first unipotent generator {} is not primitive",
                vars.name(first)
            ));
        }
    }
    if let Some(&second) = unipotent.get(1) {
        if !g.defect(second).is_zero() {
            report.warn(format!(
                "second unipotent generator {} is not primitive (non-canonical coordinates)",
                vars.name(second)
            ));
        }
    }
    report
}

/// `(ε⊗id)t` for `leg = 0`, `(id⊗ε)t` for `leg = 1`.
fn counit_on_leg(g: &Presentation, t: &Tensor, leg: usize) -> Poly {
    let mut out = Poly::zero();
    for (legs, c) in t.terms() {
        let e = g.counit_monomial(&legs[leg]);
        if !num_traits::Zero::is_zero(&e) {
            out.add_term(legs[1 - leg].clone(), c * e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::hopf::tests::heisen1;
    use crate::poly::{parse_tensor, VarTable};
    use crate::report::Status;

    #[test]
    fn heisen1_passes() {
        let r = validate_presentation(&heisen1());
        assert_eq!(r.status(), Status::Pass, "{}", r.render_text());
    }

    #[test]
    fn all_primitive_passes() {
        let g = Presentation::abelian(VarTable::new(&["F"], &["X", "Y"]).unwrap());
        assert!(validate_presentation(&g).passed());
    }

    #[test]
    fn corrupted_defect_fails_coassociativity() {
        let vars = VarTable::new::<&str>(&[], &["X", "Y", "V", "W"]).unwrap();
        let mut q = BTreeMap::new();
        q.insert("V".to_string(), parse_tensor("X(x)Y", &vars).unwrap());
        q.insert("W".to_string(), parse_tensor("V(x)Y + X(x)Y", &vars).unwrap());
        let g = Presentation::new(vars, q).unwrap();
        let r = validate_presentation(&g);
        assert!(!r.passed());
        assert!(r.findings[0].message.starts_with("coassociativity at W"));
    }

    #[test]
    fn defect_on_second_generator_only_warns() {
        let vars = VarTable::new::<&str>(&[], &["X", "V"]).unwrap();
        let mut q = BTreeMap::new();
        q.insert("V".to_string(), parse_tensor("X(x)X", &vars).unwrap());
        let r = validate_presentation(&Presentation::new(vars, q).unwrap());
        assert_eq!(r.status(), Status::Warn(1));
    }
}
