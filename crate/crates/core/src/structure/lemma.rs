use num_traits::Zero;

use crate::error::{Error, Result};
use crate::functionals::{AssumptionLog, Bifunctional, Twist};
use crate::hopf::Presentation;
use crate::poly::{Monomial, Poly, Scalar};
use crate::report::{CheckReport, Section};
use crate::twisted::{Product, TwistedProduct};

/// Accumulates `coefficient · f(u,v) · g(s,t) · m` while tracking which table
/// readings the sum depends on.
struct Acc<'a> {
    out: Poly,
    log: AssumptionLog,
    j: &'a Bifunctional,
    j_inv: &'a Bifunctional,
}

impl Acc<'_> {
    fn read(&mut self, f: &Bifunctional, u: &Monomial, v: &Monomial) -> Result<Option<Scalar>> {
        let (x, l) = f.eval_monomials(u, v)?;
        if x.is_zero() && l.is_empty() {
            return Ok(None);
        }
        self.log.merge(&l);
        Ok(Some(x))
    }

    /// `Q(u,v) = J(u,v) - J(v,u)`.
    fn q(&mut self, u: &Monomial, v: &Monomial) -> Result<Scalar> {
        let j = self.j;
        let a = self.read(j, u, v)?.unwrap_or_else(Scalar::zero);
        let b = self.read(j, v, u)?.unwrap_or_else(Scalar::zero);
        Ok(a - b)
    }

    /// `S(u,v) = J^-1(u,v) - J^-1(v,u)`.
    fn s(&mut self, u: &Monomial, v: &Monomial) -> Result<Scalar> {
        let ji = self.j_inv;
        let a = self.read(ji, u, v)?.unwrap_or_else(Scalar::zero);
        let b = self.read(ji, v, u)?.unwrap_or_else(Scalar::zero);
        Ok(a - b)
    }

    /// `f(u,v)·f'(s,t)` with structural zeros skipped on either side.
    fn product(
        &mut self,
        f: &Bifunctional,
        (u, v): (&Monomial, &Monomial),
        h: &Bifunctional,
        (s, t): (&Monomial, &Monomial),
    ) -> Result<Scalar> {
        let (x, lx) = f.eval_monomials(u, v)?;
        if x.is_zero() && lx.is_empty() {
            return Ok(Scalar::zero());
        }
        let (y, ly) = h.eval_monomials(s, t)?;
        if y.is_zero() && ly.is_empty() {
            return Ok(Scalar::zero());
        }
        self.log.merge(&lx);
        self.log.merge(&ly);
        Ok(x * y)
    }

    fn add(&mut self, m: Monomial, c: Scalar) {
        if !c.is_zero() {
            self.out.add_term(m, c);
        }
    }
}

fn defect_terms(g: &Presentation, i: usize) -> Result<Vec<(Monomial, Monomial, Scalar)>> {
    let mut out = Vec::new();
    for (legs, c) in g.defect(i).terms() {
        for leg in legs {
            if !g.counit_monomial(leg).is_zero() {
                return Err(Error::Precondition(format!(
                    "coproduct defect of {} has a leg {} with nonzero counit",
                    g.vars().name(i),
                    g.vars().format_monomial(leg)
                )));
            }
        }
        out.push((legs[0].clone(), legs[1].clone(), c.clone()));
    }
    Ok(out)
}

/// `[y_i, y_j]` (unipotent `y_j` earlier than `y_i`) or `[y_i, x_j]`
/// (grouplike `x_j`) in `₍J₎A₍J₎`, evaluated from the coproduct defects and
/// twist values alone. With `Δ(a) = a⊗1 + 1⊗a + ΣA'⊗A''`:
///
/// `[a,b] = (Q+S)(a,b) + ΣB'Q(a,B'') + ΣA'Q(A'',b) + ΣA'B'Q(A'',B'')
///        + ΣB''S(a,B') + ΣA''S(A',b)
///        + Σ(J^-1(A',B')J(A''_2,B''_2) - J^-1(B',A')J(B''_2,A''_2))A''_1B''_1`
///
/// and for grouplike `x`:
///
/// `[a,x] = x((Q+S)(a,x) + ΣQ(A'',x)A'
///        + Σ(J^-1(A',x)J(A''_2,x) - J^-1(x,A')J(x,A''_2))A''_1)`.
pub fn lemma_commutator(j: &Twist, i: usize, k: usize) -> Result<(Poly, AssumptionLog)> {
    let g = j.domain().clone();
    let vars = g.vars();
    let n = vars.len();
    if i >= n || k >= n || vars.is_laurent(i) || (k >= i && !vars.is_laurent(k)) {
        return Err(Error::Precondition(
            "the closed formula needs a unipotent generator and an earlier unipotent or a grouplike one".into(),
        ));
    }
    let mut acc = Acc {
        out: Poly::zero(),
        log: AssumptionLog::default(),
        j: j.j(),
        j_inv: j.j_inv(),
    };
    let unit = Monomial::unit(n);
    let a = vars.var(i);
    let b = vars.var(k);
    let da = defect_terms(&g, i)?;
    let (jf, ji) = (j.j().clone(), j.j_inv().clone());

    if vars.is_laurent(k) {
        let mut inner = Poly::zero();
        let c0 = acc.q(&a, &b)? + acc.s(&a, &b)?;
        inner.add_term(unit.clone(), c0);
        for (a1, a2, c) in &da {
            let qv = acc.q(a2, &b)?;
            inner.add_term(a1.clone(), c * qv);
            for (legs, c2) in g.coproduct_monomial(a2).terms() {
                let x = acc.product(&ji, (a1, &b), &jf, (&legs[1], &b))?;
                let y = acc.product(&ji, (&b, a1), &jf, (&b, &legs[1]))?;
                inner.add_term(legs[0].clone(), c * c2 * (x - y));
            }
        }
        acc.out = inner.mul_monomial(&b);
        return Ok((acc.out, acc.log));
    }

    let db = defect_terms(&g, k)?;
    let c0 = acc.q(&a, &b)? + acc.s(&a, &b)?;
    acc.add(unit.clone(), c0);
    for (b1, b2, d) in &db {
        let v = acc.q(&a, b2)?;
        acc.add(b1.clone(), d * v);
        let v = acc.s(&a, b1)?;
        acc.add(b2.clone(), d * v);
    }
    for (a1, a2, c) in &da {
        let v = acc.q(a2, &b)?;
        acc.add(a1.clone(), c * v);
        let v = acc.s(a1, &b)?;
        acc.add(a2.clone(), c * v);
        for (b1, b2, d) in &db {
            let v = acc.q(a2, b2)?;
            acc.add(a1.mul(b1), c * d * v);
            let da2 = g.coproduct_monomial(a2);
            let db2 = g.coproduct_monomial(b2);
            for (la, ca) in da2.terms() {
                for (lb, cb) in db2.terms() {
                    let x = acc.product(&ji, (a1, b1), &jf, (&la[1], &lb[1]))?;
                    let y = acc.product(&ji, (b1, a1), &jf, (&lb[1], &la[1]))?;
                    acc.add(la[0].mul(&lb[0]), c * d * ca * cb * (x - y));
                }
            }
        }
    }
    Ok((acc.out, acc.log))
}

/// The closed formula, required to agree with the direct commutator.
pub fn commutator_via_lemma_formula(j: &Twist, i: usize, k: usize) -> Result<Poly> {
    let (formula, _) = lemma_commutator(j, i, k)?;
    let g = j.domain();
    let (direct, _) = TwistedProduct::two_sided(j).bracket(&g.var(i), &g.var(k))?;
    if formula != direct {
        return Err(Error::Consistency {
            what: format!("[{},{}]", g.vars().name(i), g.vars().name(k)),
            left: g.format(&formula),
            right: g.format(&direct),
        });
    }
    Ok(formula)
}

/// Compares the closed formula with direct twisted products on every
/// applicable generator pair.
pub fn check_lemma_formula(j: &Twist) -> CheckReport {
    let g = j.domain().clone();
    let vars = g.vars().clone();
    let product = TwistedProduct::two_sided(j);
    let mut report = CheckReport::new(Section::LemmaFormula, format!("twist {}", j.describe()));
    let mut pairs = 0;
    for i in vars.polynomial_indices() {
        for k in 0..i {
            pairs += 1;
            let name = format!("[{},{}]", vars.name(i), vars.name(k));
            let formula = lemma_commutator(j, i, k);
            let direct = product.bracket(&g.var(i), &g.var(k));
            match (formula, direct) {
                (Ok((f, lf)), Ok((d, ld))) => {
                    report.assumed.merge(&lf);
                    report.assumed.merge(&ld);
                    if f != d {
                        let msg = format!("{name}: formula {} != direct {}", g.format(&f), g.format(&d));
                        if j.uses_table() && !(lf.is_empty() && ld.is_empty()) {
                            report.warn(format!("{msg} (rests on assumed zeros)"));
                        } else {
                            report.fail(msg);
                        }
                    } else if !f.is_zero() {
                        report.fact(format!("{name} = {}", g.format(&f)));
                    }
                }
                (Err(e), _) | (_, Err(e)) => report.fail(format!("{name}: {e}")),
            }
        }
    }
    report.fact(format!("pairs={pairs} agree with direct products"));
    report
}
