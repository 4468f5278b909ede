use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functionals::AssumptionLog;
use crate::hopf::{validate_presentation, Presentation};
use crate::lie::{cybe_check, omega_to_r, r_to_omega};
use crate::poly::{parse_scalar, Expr, Poly, VarTable};
use crate::report::{CheckReport, Section, Status};
use crate::structure::{
    aliased_vars, bracket_relation_check, check_lemma_formula, double_coset_map_check, evaluate_in,
    lie_closure_check, ore_tower_report, presentation_table, quotient_algebra, smash_defect, smash_table,
    twist_invariance_check, weyl_pair_check, Correspondence, Element, QuotientSpec,
};
use crate::twisted::{
    check_associativity, check_cotriangular, check_hopf_cocycle, check_leading_term, check_primitive_pairing,
    check_product_equality, Degrees, Product, TwistedProduct,
};

use super::build::{at, Definition};
use super::schema::{Named, ProductKind, Task, Triple};

/// Run-wide settings; a task's own `degree` wins over `degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub degree: usize,
    pub max_order: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            degree: 4,
            max_order: crate::functionals::DEFAULT_MAX_ORDER,
        }
    }
}

/// A task that could not be carried out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskError {
    pub task: usize,
    pub kind: &'static str,
    pub message: String,
    /// The document itself is at fault (exit code 2) rather than a
    /// computation.
    pub input: bool,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub name: String,
    pub reports: Vec<CheckReport>,
    pub errors: Vec<TaskError>,
}

impl RunReport {
    pub fn failures(&self) -> usize {
        self.reports.iter().map(|r| r.failures).sum()
    }

    pub fn warnings(&self) -> usize {
        self.reports.iter().map(|r| r.warnings).sum()
    }

    pub fn assumed(&self) -> AssumptionLog {
        let mut log = AssumptionLog::default();
        for r in &self.reports {
            log.merge(&r.assumed);
        }
        log
    }

    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.failures() == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.errors.iter().any(|e| e.input) {
            2
        } else if self.passed() {
            0
        } else {
            1
        }
    }

    fn result_word(&self) -> &'static str {
        match self.exit_code() {
            0 if self.warnings() > 0 => "PASS (with warnings)",
            0 => "PASS",
            1 => "FAIL",
            _ => "ERROR",
        }
    }

    /// Reports in section order; the sort is stable, so tasks of one section
    /// keep their document order.
    fn ordered(&self) -> Vec<&CheckReport> {
        let mut v: Vec<&CheckReport> = self.reports.iter().collect();
        v.sort_by_key(|r| r.section);
        v
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("definition: {}\n", self.name);
        let mut section = None;
        for r in self.ordered() {
            if section != Some(r.section) {
                section = Some(r.section);
                out.push_str(&format!("\n== {} ==\n", r.section.header()));
            }
            out.push_str(&r.render_text());
        }
        let assumed = self.assumed();
        if !assumed.is_empty() {
            out.push_str("\nASSUMED-ZERO:\n");
            for line in assumed.render() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        if !self.errors.is_empty() {
            out.push('\n');
            for e in &self.errors {
                out.push_str(&format!("error: task {} ({}): {}\n", e.task, e.kind, e.message));
            }
        }
        out.push_str(&format!(
            "\nRESULT: {} failures={} warnings={}\n",
            self.result_word(),
            self.failures(),
            self.warnings()
        ));
        out
    }

    /// One `key=value` per line; indices count from 0 in section order.
    pub fn render_machine(&self) -> String {
        let mut out = format!("name={}\n", self.name);
        for (n, r) in self.ordered().into_iter().enumerate() {
            out.push_str(&format!("section.{n}={}\n", r.section.header()));
            out.push_str(&format!("title.{n}={}\n", r.title));
            for (m, f) in r.facts.iter().enumerate() {
                out.push_str(&format!("fact.{n}.{m}={f}\n"));
            }
            let (mut fi, mut wi) = (0, 0);
            for f in &r.findings {
                match f.severity {
                    crate::report::Severity::Failure => {
                        out.push_str(&format!("failure.{n}.{fi}={}\n", f.message));
                        fi += 1;
                    }
                    crate::report::Severity::Warning => {
                        out.push_str(&format!("warning.{n}.{wi}={}\n", f.message));
                        wi += 1;
                    }
                }
            }
            let status = match r.status() {
                Status::Pass => "pass".to_string(),
                Status::Warn(k) => format!("warn:{k}"),
                Status::Fail(k) => format!("fail:{k}"),
            };
            out.push_str(&format!("status.{n}={status}\n"));
        }
        for (k, line) in self.assumed().render().iter().enumerate() {
            out.push_str(&format!("assumed.{k}={line}\n"));
        }
        for (k, e) in self.errors.iter().enumerate() {
            out.push_str(&format!("error.{k}=task {} ({}): {}\n", e.task, e.kind, e.message));
        }
        out.push_str(&format!("failures={}\n", self.failures()));
        out.push_str(&format!("warnings={}\n", self.warnings()));
        out.push_str(&format!("result={}\n", if self.passed() { "pass" } else { "fail" }));
        out.push_str(&format!("exit={}\n", self.exit_code()));
        out
    }
}

fn is_input(e: &Error) -> bool {
    matches!(e, Error::Input(_) | Error::Parse { .. })
}

/// Runs every task of the definition, in order. A task that errors is
/// recorded and the run moves on.
pub fn run_tasks(def: &Definition, opts: &RunOptions) -> RunReport {
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (n, task) in def.document.tasks.iter().enumerate() {
        match run_task(def, task, opts) {
            Ok(rs) => reports.extend(rs),
            Err(e) => errors.push(TaskError {
                task: n,
                kind: task.kind(),
                input: is_input(&e),
                message: e.to_string(),
            }),
        }
    }
    RunReport {
        name: def.document.name.clone(),
        reports,
        errors,
    }
}

/// Commutative evaluation, resolving names among `named` first.
fn commutative(vars: &VarTable, named: &[Element], text: &str) -> Result<Poly> {
    let n = vars.len();
    Expr::parse(text)?.eval_with(
        n,
        &mut |name| {
            if let Some(e) = named.iter().find(|e| e.name == name) {
                return Ok(e.value.clone());
            }
            Ok(Poly::var(n, vars.require(name)?))
        },
        &mut |a, b| Ok(a * b),
    )
}

fn elements(vars: &VarTable, items: &[Named], loc: &str) -> Result<Vec<Element>> {
    let mut out: Vec<Element> = Vec::new();
    for [name, text] in items {
        let v = at(&format!("{loc}.{name}"), commutative(vars, &out, text))?;
        out.push(Element::new(name.clone(), v));
    }
    Ok(out)
}

fn find<'a>(items: &'a [Element], name: &str) -> Result<&'a Element> {
    items
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Input(format!("unknown element {name}")))
}

fn expected_table(vars: &VarTable, named: &[Element], items: &[Triple]) -> Result<Vec<(String, String, Poly)>> {
    items
        .iter()
        .map(|[a, b, v]| {
            let p = at(&format!("expected [{a},{b}]"), commutative(vars, named, v))?;
            Ok((a.clone(), b.clone(), p))
        })
        .collect()
}

fn product_of(def: &Definition, kind: ProductKind) -> TwistedProduct {
    match kind {
        ProductKind::TwoSided => TwistedProduct::two_sided(&def.twist),
        ProductKind::Left => TwistedProduct::left(&def.twist),
        ProductKind::Right => TwistedProduct::right(&def.twist),
    }
}

/// Turns a report whose failure is the expected outcome into a pass, and a
/// pass into a failure.
fn expect_failure(mut report: CheckReport, what: &str) -> CheckReport {
    let mut out = CheckReport::new(report.section, report.title.clone());
    out.assumed = std::mem::take(&mut report.assumed);
    match report.findings.iter().find(|f| f.severity == crate::report::Severity::Failure) {
        Some(f) => out.fact(format!("{what} as expected: {}", f.message)),
        None => {
            let mut msg = format!("expected {what}, but the check passed");
            if let Some(f) = report.facts.first() {
                msg.push_str(&format!(": {f}"));
            }
            out.fail(msg)
        }
    }
    out
}

fn run_task(def: &Definition, task: &Task, opts: &RunOptions) -> Result<Vec<CheckReport>> {
    let g = &def.group;
    let t = &def.twist;
    let soft = t.uses_table();
    let deg = |d: &Option<usize>| d.unwrap_or(opts.degree);
    Ok(match task {
        Task::Validate => vec![validate_presentation(g)],
        Task::Cocycle { degree } => {
            let d = deg(degree);
            vec![check_hopf_cocycle(t, Degrees { pairs: d, triples: d })]
        }
        Task::Cotriangular { degree } => {
            let d = deg(degree);
            let p = TwistedProduct::two_sided(t);
            vec![check_cotriangular(&t.rform(), &p, Degrees { pairs: d, triples: d }, soft)]
        }
        Task::CoproductHom { degree } => {
            vec![crate::twisted::check_coproduct_homomorphism(t, t, deg(degree))?]
        }
        Task::Associativity { degree, products } => products
            .iter()
            .map(|k| check_associativity(&product_of(def, *k), deg(degree), soft))
            .collect(),
        Task::LeadingTerm { degree } => {
            vec![check_leading_term(&TwistedProduct::two_sided(t), deg(degree), soft)]
        }
        Task::PrimitivePairing => primitive_pairings(def)?,
        Task::LemmaFormula => vec![check_lemma_formula(t)],
        Task::OreTower { degree } => vec![ore_tower_report(t, deg(degree))?],
        Task::Presentation {
            product,
            elements: items,
            expected,
        } => {
            let p = product_of(def, *product);
            let elems = if items.is_empty() {
                Element::generators(g)
            } else {
                elements(g.vars(), items, "elements")?
            };
            let table = presentation_table(&p, &elems, g.vars())?;
            match expected {
                Some(e) => vec![table.compare(&expected_table(g.vars(), &elems, e)?)?],
                None => vec![table.to_report()],
            }
        }
        Task::LieClosure { basis, target, images } => {
            let elems = elements(g.vars(), basis, "basis")?;
            let correspondence = match target {
                Some(label) => Some(Correspondence {
                    target: def.lie.algebra(label)?.clone(),
                    images: images.iter().map(|[a, b]| (a.clone(), b.clone())).collect(),
                }),
                None => None,
            };
            let p = TwistedProduct::two_sided(t);
            vec![lie_closure_check(&p, &elems, g.vars(), correspondence.as_ref())?]
        }
        Task::Quotient { .. } => quotient_task(def, task, opts)?,
        Task::Smash { expected } => smash_task(def, expected)?,
        Task::DoubleCoset { points, degree } => points
            .iter()
            .map(|p| double_coset_map_check(t, def.point(p)?, deg(degree)))
            .collect::<Result<_>>()?,
        Task::Invariance {
            points,
            invariant,
            degree,
            witness,
        } => {
            let mut out = Vec::new();
            for label in points {
                let d = deg(degree);
                let o = twist_invariance_check(t, def.point(label)?, d)?;
                if *invariant {
                    out.push(o.report);
                    continue;
                }
                let mut r = CheckReport::new(Section::Invariance, o.report.title.clone());
                r.assumed = o.report.assumed.clone();
                if o.equal() {
                    r.fail(format!("J^g = J up to degree {d}, expected a difference"));
                } else {
                    r.fact(format!("J^g differs from J ({} pairs up to degree {d})", o.witnesses.len()));
                }
                if let Some([a, b, x, y]) = witness {
                    let (x, y) = (parse_scalar(x)?, parse_scalar(y)?);
                    let found = o.witnesses.iter().any(|w| &w.a == a && &w.b == b && w.conj == x && w.orig == y);
                    let line = format!("J^g({a},{b}) = {} and J({a},{b}) = {}", fmt(&x), fmt(&y));
                    if found {
                        r.fact(format!("witness: {line}"));
                    } else {
                        r.fail(format!("witness {line} not found"));
                    }
                }
                out.push(r);
            }
            out
        }
        Task::ProductEquality { degree } => {
            vec![check_product_equality(&TwistedProduct::two_sided(t), deg(degree))]
        }
        Task::Cybe { r, solution } => {
            let w = def
                .lie
                .r
                .get(r)
                .ok_or_else(|| Error::Input(format!("unknown r-matrix {r}")))?;
            let model = def.lie.algebra(&w.algebra)?;
            let rep = cybe_check(model, &w.value);
            if *solution {
                vec![rep]
            } else {
                vec![expect_failure(rep, "CYBE fails")]
            }
        }
        Task::Duality { r, form } => duality_task(def, r.as_deref(), form.as_deref())?,
    })
}

fn fmt(s: &crate::poly::Scalar) -> String {
    crate::poly::format_scalar(s)
}

/// `(p, a)` for every primitive generator `p` and every other generator `a`.
fn primitive_pairings(def: &Definition) -> Result<Vec<CheckReport>> {
    let g = &def.group;
    let mut report = CheckReport::new(Section::PrimitivePairing, format!("twist {}", def.twist.describe()));
    for i in (0..g.nvars()).filter(|&i| g.is_primitive_generator(i)) {
        for k in (0..g.nvars()).filter(|&k| k != i) {
            let r = check_primitive_pairing(&def.twist, &g.var(i), &g.var(k))?;
            let (pn, an) = (g.vars().name(i), g.vars().name(k));
            let values = r.facts.join("; ");
            report.absorb(CheckReport {
                facts: vec![format!("({pn},{an}): {values}")],
                ..r
            });
        }
    }
    Ok(vec![report])
}

fn smash_task(def: &Definition, expected: &[Triple]) -> Result<Vec<CheckReport>> {
    let t = &def.twist;
    let vars = def.group.vars();
    let mut report = smash_table(t)?;
    for [y, x, p] in expected {
        let (i, k) = (vars.require(y)?, vars.require(x)?);
        let want = at(&format!("smash expected ({y},{x})"), commutative(vars, &[], p))?;
        let (got, log) = smash_defect(t, i, k)?;
        report.assumed.merge(&log);
        if got == want {
            report.fact(format!("p({y},{x}) = {} as expected", vars.format_poly(&got)));
        } else {
            report.fail(format!(
                "p({y},{x}) = {}, expected {}",
                vars.format_poly(&got),
                vars.format_poly(&want)
            ));
        }
    }
    Ok(vec![report])
}

fn quotient_task(def: &Definition, task: &Task, opts: &RunOptions) -> Result<Vec<CheckReport>> {
    let Task::Quotient {
        substitution,
        accept,
        degree,
        aliases,
        expected,
        definitions,
        weyl,
        not_weyl,
        relations,
    } = task
    else {
        unreachable!("quotient_task takes quotient tasks");
    };
    let g: &Arc<Presentation> = &def.group;
    let spec = at("substitution", QuotientSpec::parse(g.vars(), substitution))?;
    let inner: Arc<dyn Product + Send> = Arc::new(TwistedProduct::two_sided(&def.twist));
    let outcome = quotient_algebra(inner, spec, degree.unwrap_or(opts.degree))?;
    if !*accept {
        return Ok(vec![expect_failure(outcome.report, "rejected")]);
    }
    let mut out = vec![outcome.report];
    let Some(q) = outcome.product else {
        return Ok(out);
    };
    let display = at("aliases", aliased_vars(g.vars(), aliases))?;
    let reduce = |p: Poly| q.spec().reduce(&p);
    let gens = Element::surviving_generators(&display, &q.spec().eliminated());
    if let Some(e) = expected {
        let table = presentation_table(&q, &gens, &display)?;
        let want = expected_table(&display, &[], e)?
            .into_iter()
            .map(|(a, b, p)| (a, b, reduce(p)))
            .collect::<Vec<_>>();
        out.push(table.compare(&want)?);
    }
    let mut named = gens.clone();
    for [name, text] in definitions {
        let v = at(&format!("definitions.{name}"), evaluate_in(&q, &display, &named, text))?;
        named.retain(|e| &e.name != name);
        named.push(Element::new(name.clone(), reduce(v)));
    }
    for [p, qn] in weyl {
        out.push(weyl_pair_check(&q, find(&named, p)?, find(&named, qn)?, &display)?);
    }
    for [p, qn] in not_weyl {
        let r = weyl_pair_check(&q, find(&named, p)?, find(&named, qn)?, &display)?;
        out.push(expect_failure(r, "not a Weyl pair"));
    }
    for [a, b, v] in relations {
        let want = reduce(at(&format!("relations [{a},{b}]"), commutative(&display, &named, v))?);
        out.push(bracket_relation_check(&q, find(&named, a)?, find(&named, b)?, &want, &display)?);
    }
    Ok(out)
}

fn duality_task(def: &Definition, r: Option<&str>, form: Option<&str>) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    if let Some(label) = r {
        let w = def
            .lie
            .r
            .get(label)
            .ok_or_else(|| Error::Input(format!("unknown r-matrix {label}")))?;
        let model = def.lie.algebra(&w.algebra)?;
        let mut d = r_to_omega(model, &w.h, &w.value);
        if let Some(omega) = &d.omega {
            let back = omega_to_r(model, &w.h, omega);
            if back.r.as_ref() != Some(&w.value) {
                d.report.fail("round trip r -> w -> r does not return r");
            } else {
                d.report.fact("round trip r -> w -> r is the identity");
            }
        }
        out.push(d.report);
    }
    if let Some(label) = form {
        let w = def
            .lie
            .forms
            .get(label)
            .ok_or_else(|| Error::Input(format!("unknown form {label}")))?;
        let model = def.lie.algebra(&w.algebra)?;
        let mut d = omega_to_r(model, &w.h, &w.value);
        if let Some(rm) = &d.r {
            let back = r_to_omega(model, &w.h, rm);
            if back.omega.as_ref() != Some(&w.value) {
                d.report.fail("round trip w -> r -> w does not return w");
            } else {
                d.report.fact("round trip w -> r -> w is the identity");
            }
        }
        out.push(d.report);
    }
    if out.is_empty() {
        return Err(Error::Input("duality needs r or form".into()));
    }
    Ok(out)
}
