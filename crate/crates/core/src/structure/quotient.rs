use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functionals::AssumptionLog;
use crate::hopf::Presentation;
use crate::poly::{monomials_up_to, parse_poly, Monomial, Poly, Substitution, VarTable};
use crate::report::{CheckReport, Section};
use crate::twisted::Product;

use super::Element;

/// An ideal presented by eliminating variables: `v ↦ image` with images in
/// the remaining variables.
#[derive(Debug, Clone)]
pub struct QuotientSpec {
    vars: Arc<VarTable>,
    images: BTreeMap<usize, Poly>,
    subst: Arc<Substitution>,
}

impl QuotientSpec {
    pub fn new(vars: &Arc<VarTable>, images: &BTreeMap<String, Poly>) -> Result<Self> {
        let mut resolved = BTreeMap::new();
        for (name, p) in images {
            let i = vars.require(name)?;
            if vars.is_laurent(i) {
                return Err(Error::Input(format!("cannot eliminate the grouplike variable {name}")));
            }
            resolved.insert(i, p.clone());
        }
        for (i, p) in &resolved {
            if let Some(v) = p.variables().into_iter().find(|v| resolved.contains_key(v)) {
                return Err(Error::Input(format!(
                    "substitution is not idempotent: the image of {} uses {}",
                    vars.name(*i),
                    vars.name(v)
                )));
            }
        }
        let full: Vec<Poly> = (0..vars.len())
            .map(|i| resolved.get(&i).cloned().unwrap_or_else(|| Poly::var(vars.len(), i)))
            .collect();
        let subst = Substitution::from_images(vars.clone(), vars.clone(), full)?;
        Ok(QuotientSpec {
            vars: vars.clone(),
            images: resolved,
            subst: Arc::new(subst),
        })
    }

    pub fn parse(vars: &Arc<VarTable>, images: &BTreeMap<String, String>) -> Result<Self> {
        let parsed = images
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse_poly(v, vars)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Self::new(vars, &parsed)
    }

    pub fn eliminated(&self) -> Vec<usize> {
        self.images.keys().copied().collect()
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        self.subst.apply(p)
    }

    /// `v - image(v)` for each eliminated `v`.
    pub fn ideal_generators(&self) -> Vec<Poly> {
        let n = self.vars.len();
        self.images.iter().map(|(i, p)| &Poly::var(n, *i) - p).collect()
    }

    /// E.g. `F23 -> -1 + F34`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .images
            .iter()
            .map(|(i, p)| format!("{} -> {}", self.vars.name(*i), self.vars.format_poly(p)))
            .collect();
        parts.join(", ")
    }
}

/// The product of a twisted algebra passed to a substitution quotient:
/// multiply representatives, then reduce.
pub struct QuotientProduct {
    inner: Arc<dyn Product + Send>,
    spec: QuotientSpec,
}

impl std::fmt::Debug for QuotientProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuotientProduct({})", self.label())
    }
}

impl QuotientProduct {
    pub fn spec(&self) -> &QuotientSpec {
        &self.spec
    }
}

impl Product for QuotientProduct {
    fn presentation(&self) -> &Arc<Presentation> {
        self.inner.presentation()
    }

    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Result<(Poly, AssumptionLog)> {
        let (p, log) = self.inner.mul_monomials(a, b)?;
        Ok((self.spec.reduce(&p), log))
    }

    fn label(&self) -> String {
        format!("{} mod ({})", self.inner.label(), self.spec.describe())
    }

    fn is_quotient(&self) -> bool {
        true
    }
}

/// Outcome of forming a quotient: the two-sidedness report, and the product
/// when the ideal passed.
pub struct QuotientOutcome {
    pub report: CheckReport,
    pub product: Option<QuotientProduct>,
}

/// Checks that the substitution ideal is two-sided for `inner`: generator
/// products `z·f`, `f·z` on each ideal generator `f`, then perturbations
/// `(f·m)·b`, `b·(f·m)` for monomials `m` of degree at most 1 and `b` up to
/// `degree`.
pub fn quotient_algebra(inner: Arc<dyn Product + Send>, spec: QuotientSpec, degree: usize) -> Result<QuotientOutcome> {
    let g = inner.presentation().clone();
    let vars = g.vars().clone();
    let mut report = CheckReport::new(
        Section::Quotient,
        format!("{} mod ({})", inner.label(), spec.describe()),
    );
    let gens = spec.ideal_generators();
    report.fact(format!(
        "ideal generators: {}",
        gens.iter().map(|f| vars.format_poly(f)).collect::<Vec<_>>().join(", ")
    ));
    for f in &gens {
        for z in 0..vars.len() {
            let zp = g.var(z);
            let (zf, l1) = inner.mul(&zp, f)?;
            let (fz, l2) = inner.mul(f, &zp)?;
            report.assumed.merge(&l1);
            report.assumed.merge(&l2);
            let (left, right) = (spec.reduce(&zf), spec.reduce(&fz));
            if left.is_zero() && right.is_zero() {
                continue;
            }
            let br = spec.reduce(&(&zf - &fz));
            if !br.is_zero() {
                report.fail(format!(
                    "ideal is not two-sided: [{},{}] = {} is not in the ideal",
                    vars.name(z),
                    vars.format_poly(f),
                    vars.format_poly(&br)
                ));
            } else {
                report.fail(format!(
                    "ideal is not two-sided: {}*({}) reduces to {}",
                    vars.name(z),
                    vars.format_poly(f),
                    vars.format_poly(&left)
                ));
            }
        }
    }
    if report.passed() {
        let small = monomials_up_to(&vars, 1);
        let bs = monomials_up_to(&vars, degree);
        let samples: Vec<(Poly, Monomial)> = gens
            .iter()
            .flat_map(|f| small.iter().map(move |m| (f.mul_monomial(m), m.clone())))
            .flat_map(|(fm, _)| bs.iter().map(move |b| (fm.clone(), b.clone())))
            .collect();
        let results: Vec<Result<Option<String>>> = samples
            .par_iter()
            .map(|(fm, b)| {
                let bp = Poly::monomial(b.clone());
                let (x, _) = inner.mul(fm, &bp)?;
                let (y, _) = inner.mul(&bp, fm)?;
                let (x, y) = (spec.reduce(&x), spec.reduce(&y));
                Ok(if x.is_zero() && y.is_zero() {
                    None
                } else {
                    Some(format!(
                        "product of {} with {} leaves the ideal",
                        vars.format_poly(fm),
                        vars.format_monomial(b)
                    ))
                })
            })
            .collect();
        for r in results {
            if let Some(msg) = r? {
                report.fail(msg);
            }
        }
        report.fact(format!("perturbations: {} sampled products (degree<={degree})", samples.len()));
    }
    let product = report.passed().then(|| QuotientProduct { inner, spec });
    Ok(QuotientOutcome { report, product })
}

/// `[p,q] = 1`.
pub fn weyl_pair_check(product: &dyn Product, p: &Element, q: &Element, display: &VarTable) -> Result<CheckReport> {
    let mut report = CheckReport::new(Section::Weyl, format!("({},{}) under {}", p.name, q.name, product.label()));
    let (b, log) = product.bracket(&p.value, &q.value)?;
    report.assumed = log;
    let line = format!("[{},{}] = {}", p.name, q.name, display.format_poly(&b));
    let n = display.len();
    if b == Poly::constant(One::one(), n) {
        report.fact(format!("{line}: Weyl pair"));
    } else {
        report.fail(format!("{line}, expected 1"));
    }
    Ok(report)
}

/// `[a,b] = expected` for arbitrary elements.
pub fn bracket_relation_check(
    product: &dyn Product,
    a: &Element,
    b: &Element,
    expected: &Poly,
    display: &VarTable,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(Section::Bracket, format!("[{},{}] under {}", a.name, b.name, product.label()));
    let (v, log) = product.bracket(&a.value, &b.value)?;
    report.assumed = log;
    let line = format!("[{},{}] = {}", a.name, b.name, display.format_poly(&v));
    if &v == expected {
        report.fact(line);
    } else {
        report.fail(format!("{line}, expected {}", display.format_poly(expected)));
    }
    Ok(report)
}
