use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functionals::{AssumptionLog, Bifunctional, Twist};
use crate::poly::{format_scalar, tuples_up_to, Monomial, Poly, Scalar, Tensor, VarTable};
use crate::report::{CheckReport, Section};

use super::{Product, TwistedProduct};

/// Enumeration bounds for exhaustive checks: total degree of monomial pairs
/// and of monomial triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degrees {
    pub pairs: usize,
    pub triples: usize,
}

impl Default for Degrees {
    fn default() -> Self {
        Degrees { pairs: 4, triples: 3 }
    }
}

impl Degrees {
    /// Pair bound `n`, triple bound `n - 1`.
    pub fn from_pair_degree(n: usize) -> Self {
        Degrees {
            pairs: n,
            triples: n.saturating_sub(1).max(1),
        }
    }
}

pub(crate) fn fmt_tuple(vars: &VarTable, ms: &[Monomial]) -> String {
    let parts: Vec<String> = ms.iter().map(|m| vars.format_monomial(m)).collect();
    format!("({})", parts.join(","))
}

/// Result of checking one tuple.
enum Outcome {
    Ok(AssumptionLog),
    Violations(Vec<String>, AssumptionLog),
    Error(String),
}

/// Runs `f` on every tuple in parallel and folds the outcomes in enumeration
/// order. Violations touching a logged table default become warnings when
/// `soft_on_log` is set.
fn sweep<F>(report: &mut CheckReport, vars: &VarTable, tuples: &[Vec<Monomial>], soft_on_log: bool, f: F)
where
    F: Fn(&[Monomial]) -> Result<(Vec<String>, AssumptionLog)> + Sync,
{
    let outcomes: Vec<Outcome> = tuples
        .par_iter()
        .map(|t| match f(t) {
            Ok((v, log)) if v.is_empty() => Outcome::Ok(log),
            Ok((v, log)) => Outcome::Violations(v, log),
            Err(e) => Outcome::Error(e.to_string()),
        })
        .collect();
    for (t, o) in tuples.iter().zip(outcomes) {
        match o {
            Outcome::Ok(log) => report.assumed.merge(&log),
            Outcome::Violations(v, log) => {
                let soft = soft_on_log && !log.is_empty();
                for msg in v {
                    let line = format!("{} at {}", msg, fmt_tuple(vars, t));
                    if soft {
                        report.warn(format!("{line} (rests on assumed zeros)"));
                    } else {
                        report.fail(line);
                    }
                }
                report.assumed.merge(&log);
            }
            Outcome::Error(e) => report.fail(format!("error at {}: {e}", fmt_tuple(vars, t))),
        }
    }
}

/// `f(a,b)·g(c,d)`, skipping structural zeros so that assumption logs only
/// record readings the value depends on.
fn product_of(
    f: &Bifunctional,
    a: &Monomial,
    b: &Monomial,
    g: &Bifunctional,
    c: &Monomial,
    d: &Monomial,
) -> Result<Option<(Scalar, AssumptionLog)>> {
    let (x, lx) = f.eval_monomials(a, b)?;
    if x.is_zero() && lx.is_empty() {
        return Ok(None);
    }
    let (y, ly) = g.eval_monomials(c, d)?;
    if y.is_zero() && ly.is_empty() {
        return Ok(None);
    }
    let mut log = lx;
    log.merge(&ly);
    Ok(Some((x * y, log)))
}

fn mismatch(what: &str, lhs: &Scalar, rhs: &Scalar) -> String {
    format!("{what}: {} != {}", format_scalar(lhs), format_scalar(rhs))
}

fn mismatch_poly(vars: &VarTable, what: &str, lhs: &Poly, rhs: &Poly) -> String {
    format!("{what}: {} != {}", vars.format_poly(lhs), vars.format_poly(rhs))
}

/// Counital normalization and convolution invertibility on pairs, and the
/// 2-cocycle identity `Σ J(a_1b_1,c)J(a_2,b_2) = Σ J(a,b_1c_1)J(b_2,c_2)` on
/// triples.
pub fn check_hopf_cocycle(t: &Twist, degrees: Degrees) -> CheckReport {
    let g = t.domain().clone();
    let vars = g.vars().clone();
    let mut report = CheckReport::new(Section::Cocycle, format!("twist {}", t.describe()));
    let soft = t.uses_table();
    let e = Bifunctional::counit(g.clone());
    let jj = t.j().convolve(t.j_inv());
    let ij = t.j_inv().convolve(t.j());

    let pairs = tuples_up_to(&vars, 2, degrees.pairs);
    sweep(&mut report, &vars, &pairs, soft, |p| {
        let (a, b) = (&p[0], &p[1]);
        let mut bad = Vec::new();
        let mut log = AssumptionLog::default();
        let unit = vars.unit();
        for (name, f) in [("J", t.j()), ("J^-1", t.j_inv())] {
            if b.is_unit() {
                let (v, l) = f.eval_monomials(a, &unit)?;
                log.merge(&l);
                if v != g.counit_monomial(a) {
                    bad.push(mismatch(&format!("{name}(a,1) = counit(a)"), &v, &g.counit_monomial(a)));
                }
            }
            if a.is_unit() {
                let (v, l) = f.eval_monomials(&unit, b)?;
                log.merge(&l);
                if v != g.counit_monomial(b) {
                    bad.push(mismatch(&format!("{name}(1,b) = counit(b)"), &v, &g.counit_monomial(b)));
                }
            }
        }
        let want = e.eval_monomials(a, b)?.0;
        for (name, f) in [("J*J^-1", &jj), ("J^-1*J", &ij)] {
            let (v, l) = f.eval_monomials(a, b)?;
            log.merge(&l);
            if v != want {
                bad.push(mismatch(&format!("inverse axiom {name} = counit"), &v, &want));
            }
        }
        Ok((bad, log))
    });
    let npairs = pairs.len();

    let triples = tuples_up_to(&vars, 3, degrees.triples);
    let j = t.j();
    sweep(&mut report, &vars, &triples, soft, |p| {
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        let mut log = AssumptionLog::default();
        let (da, db, dc) = (
            g.coproduct_monomial(a),
            g.coproduct_monomial(b),
            g.coproduct_monomial(c),
        );
        let mut lhs = Scalar::zero();
        for (la, ca) in da.terms() {
            for (lb, cb) in db.terms() {
                if let Some((v, l)) = product_of(j, &la[0].mul(&lb[0]), c, j, &la[1], &lb[1])? {
                    lhs += ca * cb * v;
                    log.merge(&l);
                }
            }
        }
        let mut rhs = Scalar::zero();
        for (lb, cb) in db.terms() {
            for (lc, cc) in dc.terms() {
                if let Some((v, l)) = product_of(j, a, &lb[0].mul(&lc[0]), j, &lb[1], &lc[1])? {
                    rhs += cb * cc * v;
                    log.merge(&l);
                }
            }
        }
        let bad = if lhs != rhs {
            vec![mismatch("cocycle identity", &lhs, &rhs)]
        } else {
            Vec::new()
        };
        Ok((bad, log))
    });
    report.fact(format!(
        "pairs={npairs} (degree<={}) triples={} (degree<={})",
        degrees.pairs,
        triples.len(),
        degrees.triples
    ));
    report
}

/// The cotriangular axioms for `r`, with every product of the axioms taken in
/// `product`: bimultiplicativity `R(a,bc) = Σ R(a_1,b)R(a_2,c)`,
/// `R(ab,c) = Σ R(b,c_1)R(a,c_2)` on triples; on pairs the commutation
/// identity in the matching slot order, `Σ R(a_1,b_1) a_2·b_2 = Σ b_1·a_1 R(a_2,b_2)`,
/// and `R*R_21 = ε⊗ε = R_21*R`.
pub fn check_cotriangular(
    r: &Bifunctional,
    product: &dyn Product,
    degrees: Degrees,
    soft_on_log: bool,
) -> CheckReport {
    let g = product.presentation().clone();
    let vars = g.vars().clone();
    let mut report = CheckReport::new(Section::Cotriangular, format!("R-form in {}", product.label()));
    let e = Bifunctional::counit(g.clone());
    let rr = r.convolve(&r.flip());
    let rr2 = r.flip().convolve(r);

    let pairs = tuples_up_to(&vars, 2, degrees.pairs);
    sweep(&mut report, &vars, &pairs, soft_on_log, |p| {
        let (a, b) = (&p[0], &p[1]);
        let mut bad = Vec::new();
        let mut log = AssumptionLog::default();
        let want = e.eval_monomials(a, b)?.0;
        for (name, f) in [("R*R_21", &rr), ("R_21*R", &rr2)] {
            let (v, l) = f.eval_monomials(a, b)?;
            log.merge(&l);
            if v != want {
                bad.push(mismatch(&format!("skew-invertibility {name} = counit"), &v, &want));
            }
        }
        let (da, db) = (g.coproduct_monomial(a), g.coproduct_monomial(b));
        let mut lhs = Poly::zero();
        let mut rhs = Poly::zero();
        for (la, ca) in da.terms() {
            for (lb, cb) in db.terms() {
                let c = ca * cb;
                let (x, lx) = r.eval_monomials(&la[0], &lb[0])?;
                log.merge(&lx);
                if !x.is_zero() {
                    let (ab, l) = product.mul_monomials(&la[1], &lb[1])?;
                    log.merge(&l);
                    lhs.add_scaled(&ab, &(&c * x));
                }
                let (y, ly) = r.eval_monomials(&la[1], &lb[1])?;
                log.merge(&ly);
                if !y.is_zero() {
                    let (ba, l) = product.mul_monomials(&lb[0], &la[0])?;
                    log.merge(&l);
                    rhs.add_scaled(&ba, &(&c * y));
                }
            }
        }
        if lhs != rhs {
            bad.push(mismatch_poly(&vars, "commutation identity", &lhs, &rhs));
        }
        Ok((bad, log))
    });
    let npairs = pairs.len();

    let triples = tuples_up_to(&vars, 3, degrees.triples);
    sweep(&mut report, &vars, &triples, soft_on_log, |p| {
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        let mut bad = Vec::new();
        let mut log = AssumptionLog::default();
        let one = |m: &Monomial| Poly::monomial(m.clone());

        // R(a, b·c) = Σ R(a_1,b) R(a_2,c)
        let (bc, l) = product.mul_monomials(b, c)?;
        log.merge(&l);
        let (lhs, l) = r.eval(&one(a), &bc)?;
        log.merge(&l);
        let mut rhs = Scalar::zero();
        for (la, ca) in g.coproduct_monomial(a).terms() {
            if let Some((v, l)) = product_of(r, &la[0], b, r, &la[1], c)? {
                rhs += ca * v;
                log.merge(&l);
            }
        }
        if lhs != rhs {
            bad.push(mismatch("R(a,bc) = R(a_1,b)R(a_2,c)", &lhs, &rhs));
        }

        // R(a·b, c) = Σ R(b,c_1) R(a,c_2)
        let (ab, l) = product.mul_monomials(a, b)?;
        log.merge(&l);
        let (lhs, l) = r.eval(&ab, &one(c))?;
        log.merge(&l);
        let mut rhs = Scalar::zero();
        for (lc, cc) in g.coproduct_monomial(c).terms() {
            if let Some((v, l)) = product_of(r, b, &lc[0], r, a, &lc[1])? {
                rhs += cc * v;
                log.merge(&l);
            }
        }
        if lhs != rhs {
            bad.push(mismatch("R(ab,c) = R(b,c_1)R(a,c_2)", &lhs, &rhs));
        }
        Ok((bad, log))
    });
    report.fact(format!(
        "pairs={npairs} (degree<={}) triples={} (degree<={})",
        degrees.pairs,
        triples.len(),
        degrees.triples
    ));
    report
}

/// For a primitive `p`: `R^J(p,a) = (J - J_21)(p,a) = (J_21^-1 - J^-1)(p,a)`.
pub fn check_primitive_pairing(t: &Twist, p: &Poly, a: &Poly) -> Result<CheckReport> {
    let g = t.domain();
    if !g.is_primitive(p) {
        return Err(Error::Precondition(format!("{} is not primitive", g.format(p))));
    }
    let mut report = CheckReport::new(
        Section::PrimitivePairing,
        format!("({},{})", g.format(p), g.format(a)),
    );
    let (r, l1) = t.rform().eval(p, a)?;
    let (q, l2) = t.q_form().eval(p, a)?;
    let (s, l3) = t.s_form().eval(p, a)?;
    let s = -s;
    for l in [&l1, &l2, &l3] {
        report.assumed.merge(l);
    }
    report.fact(format!(
        "R={} J-J21={} J21^-1-J^-1={}",
        format_scalar(&r),
        format_scalar(&q),
        format_scalar(&s)
    ));
    if r != q || q != s {
        let msg = format!(
            "pairing values differ at ({},{})",
            g.format(p),
            g.format(a)
        );
        if t.uses_table() && !report.assumed.is_empty() {
            report.warn(msg);
        } else {
            report.fail(msg);
        }
    }
    Ok(report)
}

/// `Δ(a ·_{K,J} b) = Σ (a_1 ·_K b_1) ⊗ (a_2 ·_J b_2)` on monomial pairs.
pub fn check_coproduct_homomorphism(k: &Twist, j: &Twist, degree: usize) -> Result<CheckReport> {
    let g = k.domain().clone();
    let vars = g.vars().clone();
    let full = TwistedProduct::bi(k, j)?;
    let left = TwistedProduct::left(k);
    let right = TwistedProduct::right(j);
    let mut report = CheckReport::new(
        Section::CoproductHom,
        format!("Δ: {} -> (K)m ⊗ m_J", full.label()),
    );
    let soft = k.uses_table() || j.uses_table();
    let pairs = tuples_up_to(&vars, 2, degree);
    sweep(&mut report, &vars, &pairs, soft, |p| {
        let (a, b) = (&p[0], &p[1]);
        let mut log = AssumptionLog::default();
        let (ab, l) = full.mul_monomials(a, b)?;
        log.merge(&l);
        let lhs = g.coproduct(&ab);
        let mut rhs = Tensor::zero(2);
        for (la, ca) in g.coproduct_monomial(a).terms() {
            for (lb, cb) in g.coproduct_monomial(b).terms() {
                let (x, l) = left.mul_monomials(&la[0], &lb[0])?;
                log.merge(&l);
                if x.is_zero() {
                    continue;
                }
                let (y, l) = right.mul_monomials(&la[1], &lb[1])?;
                log.merge(&l);
                rhs.add_scaled(&Tensor::pure(&[&x, &y]), &(ca * cb));
            }
        }
        let bad = if lhs != rhs {
            vec![format!(
                "coproduct is not multiplicative: difference {}",
                vars.format_tensor(&(&lhs - &rhs))
            )]
        } else {
            Vec::new()
        };
        Ok((bad, log))
    });
    report.fact(format!("pairs={} (degree<={degree})", pairs.len()));
    Ok(report)
}

/// `(a·b)·c = a·(b·c)` on monomial triples.
pub fn check_associativity(product: &dyn Product, degree: usize, soft_on_log: bool) -> CheckReport {
    let g = product.presentation().clone();
    let vars = g.vars().clone();
    let mut report = CheckReport::new(Section::Associativity, product.label());
    let triples = tuples_up_to(&vars, 3, degree);
    sweep(&mut report, &vars, &triples, soft_on_log, |p| {
        let mut log = AssumptionLog::default();
        let (ab, l) = product.mul_monomials(&p[0], &p[1])?;
        log.merge(&l);
        let (lhs, l) = product.mul(&ab, &Poly::monomial(p[2].clone()))?;
        log.merge(&l);
        let (bc, l) = product.mul_monomials(&p[1], &p[2])?;
        log.merge(&l);
        let (rhs, l) = product.mul(&Poly::monomial(p[0].clone()), &bc)?;
        log.merge(&l);
        let bad = if lhs != rhs {
            vec![mismatch_poly(&vars, "associativity", &lhs, &rhs)]
        } else {
            Vec::new()
        };
        Ok((bad, log))
    });
    report.fact(format!("triples={} (degree<={degree})", triples.len()));
    report
}

/// On monomials without Laurent factors, `a·b - ab` has strictly lower
/// weighted degree than `ab` (see [`crate::hopf::Presentation::weight`]).
pub fn check_leading_term(product: &dyn Product, degree: usize, soft_on_log: bool) -> CheckReport {
    let g = product.presentation().clone();
    let vars = g.vars().clone();
    let mut report = CheckReport::new(Section::LeadingTerm, product.label());
    let pairs: Vec<Vec<Monomial>> = tuples_up_to(&vars, 2, degree)
        .into_iter()
        .filter(|p| p.iter().all(|m| vars.laurent_indices().all(|i| m.exponent(i) == 0)))
        .collect();
    sweep(&mut report, &vars, &pairs, soft_on_log, |p| {
        let (ab, log) = product.mul_monomials(&p[0], &p[1])?;
        let lead = p[0].mul(&p[1]);
        let top = g.weighted_degree_monomial(&lead);
        let mut rest = ab.clone();
        rest.add_term(lead.clone(), -ab.coefficient(&lead));
        let mut bad = Vec::new();
        if ab.coefficient(&lead) != Scalar::from_integer(1.into()) {
            bad.push(format!(
                "leading coefficient of {} is {}",
                vars.format_monomial(&lead),
                format_scalar(&ab.coefficient(&lead))
            ));
        }
        if g.weighted_degree(&rest).is_some_and(|d| d >= top) {
            bad.push(format!("correction {} is not of lower degree", vars.format_poly(&rest)));
        }
        Ok((bad, log))
    });
    report.fact(format!("pairs={} (degree<={degree})", pairs.len()));
    report
}

/// `a·b = ab` on all monomial pairs.
pub fn check_product_equality(product: &dyn Product, degree: usize) -> CheckReport {
    let g = product.presentation().clone();
    let vars = g.vars().clone();
    let mut report = CheckReport::new(Section::Invariance, format!("{} equals m", product.label()));
    let pairs = tuples_up_to(&vars, 2, degree);
    sweep(&mut report, &vars, &pairs, false, |p| {
        let (ab, log) = product.mul_monomials(&p[0], &p[1])?;
        let plain = Poly::monomial(p[0].mul(&p[1]));
        let bad = if ab != plain {
            vec![mismatch_poly(&vars, "twisted product differs", &ab, &plain)]
        } else {
            Vec::new()
        };
        Ok((bad, log))
    });
    report.fact(format!("pairs={} (degree<={degree})", pairs.len()));
    report
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::functionals::Side;
    use crate::poly::q;
    use crate::report::Status;
    use crate::testing::*;

    #[test]
    fn trivial_twist_is_a_cocycle() {
        let t = Twist::trivial(dim4());
        assert_eq!(check_hopf_cocycle(&t, Degrees::default()).status(), Status::Pass);
    }

    #[test]
    fn dim4_exp_twist_is_a_cocycle() {
        let r = check_hopf_cocycle(&dim4_twist(), Degrees::default());
        assert_eq!(r.status(), Status::Pass, "{}", r.render_text());
    }

    #[test]
    fn corrupted_inverse_table_fails_at_xv() {
        let g = dim4();
        let e = |a: &str, b: &str, n: i64| (mono(&g, a), mono(&g, b), q(n, 2));
        let j = vec![e("X", "V", 1), e("V", "X", -1), e("W", "Y", 1), e("Y", "W", -1)];
        let j_inv = vec![e("X", "V", 1), e("V", "X", 1), e("W", "Y", -1), e("Y", "W", 1)];
        let t = Twist::table(g, j, j_inv, 2).unwrap();
        let r = check_hopf_cocycle(&t, Degrees { pairs: 2, triples: 1 });
        assert!(!r.passed());
        assert!(r
            .findings
            .iter()
            .any(|f| f.message == "inverse axiom J*J^-1 = counit: 1 != 0 at (X,V)"));
    }

    #[test]
    fn rform_of_dim4_twist_is_cotriangular() {
        let t = dim4_twist();
        let p = TwistedProduct::two_sided(&t);
        let r = check_cotriangular(&t.rform(), &p, Degrees::default(), false);
        assert_eq!(r.status(), Status::Pass, "{}", r.render_text());
    }

    #[test]
    fn counit_form_is_cotriangular() {
        let g = dim4();
        let p = TwistedProduct::commutative(g.clone());
        let r = check_cotriangular(&Bifunctional::counit(g), &p, Degrees { pairs: 3, triples: 2 }, false);
        assert_eq!(r.status(), Status::Pass);
    }

    #[test]
    fn one_sided_form_fails_skew_invertibility() {
        let g = dim4();
        let entries = HashMap::from([((mono(&g, "X"), mono(&g, "V")), q(1, 1))]);
        let r = Bifunctional::table(g.clone(), entries, Side::J, false);
        let p = TwistedProduct::commutative(g);
        let rep = check_cotriangular(&r, &p, Degrees { pairs: 2, triples: 1 }, false);
        assert!(rep
            .findings
            .iter()
            .any(|f| f.message == "skew-invertibility R*R_21 = counit: 1 != 0 at (X,V)"));
    }

    #[test]
    fn primitive_pairings() {
        let t = dim4_twist();
        let g = t.domain();
        let rep = check_primitive_pairing(&t, &g.parse("X").unwrap(), &g.parse("V").unwrap()).unwrap();
        assert_eq!(rep.facts, vec!["R=1 J-J21=1 J21^-1-J^-1=1"]);

        let t = torus_twist();
        let g = t.domain();
        let rep = check_primitive_pairing(&t, &g.parse("X").unwrap(), &g.parse("F").unwrap()).unwrap();
        assert_eq!(rep.facts, vec!["R=-1 J-J21=-1 J21^-1-J^-1=-1"]);

        let t = Twist::trivial(dim4());
        let g = t.domain();
        let rep = check_primitive_pairing(&t, &g.parse("X").unwrap(), &g.parse("W").unwrap()).unwrap();
        assert_eq!(rep.facts, vec!["R=0 J-J21=0 J21^-1-J^-1=0"]);
        assert!(matches!(
            check_primitive_pairing(&t, &g.parse("V").unwrap(), &g.parse("X").unwrap()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn coproduct_is_multiplicative() {
        let t = dim4_twist();
        let r = check_coproduct_homomorphism(&t, &t, 3).unwrap();
        assert_eq!(r.status(), Status::Pass, "{}", r.render_text());
        let m = minimal_twist();
        let r = check_coproduct_homomorphism(&m, &m, 2).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(!r.assumed.is_empty());
    }

    #[test]
    fn associativity_and_leading_terms() {
        let t = torus_twist();
        for p in [TwistedProduct::two_sided(&t), TwistedProduct::right(&t), TwistedProduct::left(&t)] {
            assert_eq!(check_associativity(&p, 3, false).status(), Status::Pass);
            assert_eq!(check_leading_term(&p, 4, false).status(), Status::Pass);
        }
        // V·W = VW - 1/4 Y^2 has a correction of the same plain degree
        for t in [dim4_twist(), u4_twist(), heisen3_twist()] {
            let p = TwistedProduct::two_sided(&t);
            assert_eq!(check_leading_term(&p, 4, false).status(), Status::Pass);
        }
    }

    #[test]
    fn heisenberg_product_is_untwisted() {
        let p = TwistedProduct::two_sided(&heisen3_twist());
        assert_eq!(check_product_equality(&p, 4).status(), Status::Pass);
        let p = TwistedProduct::two_sided(&dim4_twist());
        assert!(!check_product_equality(&p, 2).passed());
    }
}
