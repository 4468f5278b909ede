use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functionals::{AssumptionLog, Twist};
use crate::hopf::{GroupPoint, HopfMap, Translation};
use crate::poly::{format_scalar, tuples_up_to, Monomial, Poly, Scalar, Tensor};
use crate::report::{CheckReport, Section};
use crate::twisted::{Product, TwistedProduct};

/// `p = x^-1·y·x - y` in `₍J₎A₍J₎` for a unipotent `y` and a grouplike `x`.
pub fn smash_defect(j: &Twist, i: usize, k: usize) -> Result<(Poly, AssumptionLog)> {
    let g = j.domain().clone();
    let vars = g.vars();
    if i >= vars.len() || k >= vars.len() || vars.is_laurent(i) || !vars.is_laurent(k) {
        return Err(Error::Precondition(
            "smash relations pair a unipotent generator with a grouplike one".into(),
        ));
    }
    let product = TwistedProduct::two_sided(j);
    let x_inv = Poly::monomial(Monomial::var(vars.len(), k, -1));
    let (xy, mut log) = product.mul(&x_inv, &g.var(i))?;
    let (conj, l) = product.mul(&xy, &g.var(k))?;
    log.merge(&l);
    Ok((&conj - &g.var(i), log))
}

/// [`smash_defect`] with the checks that `p` lies in the augmentation ideal
/// of the unipotent subalgebra and that `[y,x] = x·p`.
pub fn smash_relation_check(j: &Twist, i: usize, k: usize) -> Result<CheckReport> {
    let (p, log) = smash_defect(j, i, k)?;
    let g = j.domain().clone();
    let vars = g.vars().clone();
    let product = TwistedProduct::two_sided(j);
    let (y, x) = (g.var(i), g.var(k));
    let (yn, xn) = (vars.name(i), vars.name(k));
    let mut report = CheckReport::new(Section::Smash, format!("({yn},{xn}) under {}", product.label()));
    let conj = &p + &y;
    let (br, l3) = product.bracket(&y, &x)?;
    let (xp, l4) = product.mul(&x, &p)?;
    for l in [log, l3, l4] {
        report.assumed.merge(&l);
    }
    let escaping = p
        .terms()
        .any(|(m, _)| vars.laurent_indices().any(|l| m.exponent(l) != 0));
    if escaping {
        report.fail(format!(
            "p({yn},{xn}) = {} leaves the unipotent subalgebra",
            vars.format_poly(&p)
        ));
    } else if !g.counit(&p).is_zero() {
        report.fail(format!(
            "p({yn},{xn}) = {} is not in the augmentation ideal",
            vars.format_poly(&p)
        ));
    }
    if br != xp {
        report.fail(format!(
            "[{yn},{xn}] = {} but {xn}*p = {}",
            vars.format_poly(&br),
            vars.format_poly(&xp)
        ));
    }
    report.fact(format!("{xn}^-1*{yn}*{xn} = {}", vars.format_poly(&conj)));
    report.fact(format!("p({yn},{xn}) = {}", vars.format_poly(&p)));
    Ok(report)
}

/// Smash relations for every unipotent/grouplike generator pair, listing
/// the nontrivial ones.
pub fn smash_table(j: &Twist) -> Result<CheckReport> {
    let g = j.domain().clone();
    let vars = g.vars().clone();
    if vars.laurent_count() == 0 {
        return Err(Error::Precondition("the group has no grouplike generators".into()));
    }
    let mut report = CheckReport::new(Section::Smash, format!("twist {}", j.describe()));
    let mut trivial = 0;
    for i in vars.polynomial_indices() {
        for k in vars.laurent_indices() {
            let r = smash_relation_check(j, i, k)?;
            let zero = r.facts.last().is_some_and(|f| f.ends_with(" = 0"));
            report.assumed.merge(&r.assumed);
            for f in &r.findings {
                report.fail(f.message.clone());
            }
            if zero {
                trivial += 1;
            } else {
                report.fact(r.facts[0].clone());
            }
        }
    }
    report.fact(format!("other pairs commute ({trivial} pairs)"));
    Ok(report)
}

/// `m(a) = Σ ι*(a_1) ⊗ ι*(λ_{g^-1}(a_2))`.
fn coset_map(g_pres: &crate::hopf::Presentation, iota: &HopfMap, g: &GroupPoint, a: &Poly) -> Tensor {
    let sigma = iota.substitution();
    let mut out = Tensor::zero(2);
    for (legs, c) in g_pres.coproduct(a).terms() {
        let left = sigma.apply(&Poly::monomial(legs[0].clone()));
        let right = g_pres.translate(&Poly::monomial(legs[1].clone()), g, Translation::LeftInverse);
        let right = sigma.apply(&right);
        out.add_scaled(&Tensor::pure(&[&left, &right]), c);
    }
    out
}

/// Product in `₍J₎B ⊗ B₍J₎`.
fn tensor_mul(left: &dyn Product, right: &dyn Product, s: &Tensor, t: &Tensor) -> Result<(Tensor, AssumptionLog)> {
    let mut out = Tensor::zero(2);
    let mut log = AssumptionLog::default();
    for (a, c) in s.terms() {
        for (b, d) in t.terms() {
            let (l, l1) = left.mul_monomials(&a[0], &b[0])?;
            let (r, l2) = right.mul_monomials(&a[1], &b[1])?;
            log.merge(&l1);
            log.merge(&l2);
            out.add_scaled(&Tensor::pure(&[&l, &r]), &(c * d));
        }
    }
    Ok((out, log))
}

/// Multiplicativity of the double-coset map `₍J₎A₍J₎ → ₍J₎B ⊗ B₍J₎` on all
/// monomial pairs up to `degree`, where `B` carries the twist's support and
/// `J` on `A` is its pullback; also `(ε⊗ε)m = ev_g`.
pub fn double_coset_map_check(j: &Twist, g: &GroupPoint, degree: usize) -> Result<CheckReport> {
    let pres = j.domain().clone();
    let (h_twist, iota) = j
        .support()
        .unwrap_or_else(|| (j.clone(), HopfMap::identity(pres.clone())));
    let h = h_twist.domain().clone();
    let source = TwistedProduct::two_sided(j);
    let left = TwistedProduct::left(&h_twist);
    let right = TwistedProduct::right(&h_twist);
    let mut report = CheckReport::new(
        Section::DoubleCoset,
        format!("m_g at {} into {} x {}", g.describe(&pres), left.label(), right.label()),
    );
    let vars = pres.vars().clone();
    let pairs = tuples_up_to(&vars, 2, degree);
    let results: Vec<Result<(Option<String>, AssumptionLog)>> = pairs
        .par_iter()
        .map(|ab| {
            let (a, b) = (Poly::monomial(ab[0].clone()), Poly::monomial(ab[1].clone()));
            let (prod, mut log) = source.mul(&a, &b)?;
            let lhs = coset_map(&pres, &iota, g, &prod);
            let (rhs, l) = tensor_mul(
                &left,
                &right,
                &coset_map(&pres, &iota, g, &a),
                &coset_map(&pres, &iota, g, &b),
            )?;
            log.merge(&l);
            let msg = (lhs != rhs).then(|| {
                format!(
                    "m(a*b) != m(a)m(b) at ({},{}): difference {}",
                    vars.format_monomial(&ab[0]),
                    vars.format_monomial(&ab[1]),
                    h.vars().format_tensor(&(&lhs - &rhs))
                )
            });
            Ok((msg, log))
        })
        .collect();
    for r in results {
        let (msg, log) = r?;
        report.assumed.merge(&log);
        if let Some(m) = msg {
            report.fail(m);
        }
    }
    let singles: Vec<&Monomial> = pairs.iter().filter(|p| p[1].is_unit()).map(|p| &p[0]).collect();
    for m in &singles {
        let a = Poly::monomial((*m).clone());
        let t = coset_map(&pres, &iota, g, &a);
        let e = t.contract(|legs| h.counit_monomial(&legs[0]) * h.counit_monomial(&legs[1]));
        if e != g.eval(&a) {
            report.fail(format!(
                "counit of m({}) is {}, expected {}",
                vars.format_monomial(m),
                format_scalar(&e),
                format_scalar(&g.eval(&a))
            ));
        }
    }
    report.fact(format!(
        "multiplicative on {} pairs up to degree {degree}, counit-compatible on {} monomials",
        pairs.len(),
        singles.len()
    ));
    Ok(report)
}

/// A monomial pair where `J^g` and `J` differ.
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceWitness {
    pub a: String,
    pub b: String,
    pub conj: Scalar,
    pub orig: Scalar,
}

pub struct InvarianceOutcome {
    pub witnesses: Vec<InvarianceWitness>,
    pub report: CheckReport,
}

impl InvarianceOutcome {
    pub fn equal(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Compares `J^g = J∘(Ad g⊗Ad g)` with `J` on monomial pairs up to
/// `degree`.
pub fn twist_invariance_check(j: &Twist, g: &GroupPoint, degree: usize) -> Result<InvarianceOutcome> {
    let pres = j.domain().clone();
    let vars = pres.vars().clone();
    let conj = j.conjugate(g);
    let point = g.describe(&pres);
    let mut report = CheckReport::new(Section::Invariance, format!("J^g at {point}, twist {}", j.describe()));
    let pairs = tuples_up_to(&vars, 2, degree);
    let values: Vec<Result<(Scalar, Scalar, AssumptionLog)>> = pairs
        .par_iter()
        .map(|ab| {
            let (x, mut log) = conj.eval_monomials(&ab[0], &ab[1])?;
            let (y, l) = j.j().eval_monomials(&ab[0], &ab[1])?;
            log.merge(&l);
            Ok((x, y, log))
        })
        .collect();
    let mut witnesses = Vec::new();
    for (ab, v) in pairs.iter().zip(values) {
        let (x, y, log) = v?;
        report.assumed.merge(&log);
        if x != y {
            witnesses.push(InvarianceWitness {
                a: vars.format_monomial(&ab[0]),
                b: vars.format_monomial(&ab[1]),
                conj: x,
                orig: y,
            });
        }
    }
    match witnesses.first() {
        Some(w) => report.fail(format!(
            "J^g({},{}) = {} but J({},{}) = {} ({} pairs differ)",
            w.a,
            w.b,
            format_scalar(&w.conj),
            w.a,
            w.b,
            format_scalar(&w.orig),
            witnesses.len()
        )),
        None => report.fact(format!("no violation found up to degree {degree} at {point}")),
    }
    Ok(InvarianceOutcome { witnesses, report })
}
