use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functionals::AssumptionLog;
use crate::lie::LieModel;
use crate::linalg;
use crate::poly::{Monomial, Poly, Scalar, VarTable};
use crate::report::{CheckReport, Section};
use crate::twisted::Product;

use super::Element;

/// A Lie algebra together with the images of its basis, written as linear
/// combinations of the candidate basis names (e.g. `b = -W`).
#[derive(Debug, Clone)]
pub struct Correspondence {
    pub target: LieModel,
    pub images: Vec<(String, String)>,
}

/// Coordinates of polynomials in a fixed list of linearly independent ones.
struct Span {
    index: HashMap<Monomial, usize>,
    rows: Vec<Vec<Scalar>>,
}

impl Span {
    fn new(basis: &[Element]) -> Result<Self> {
        let mut index = HashMap::new();
        for e in basis {
            for (m, _) in e.value.terms() {
                let k = index.len();
                index.entry(m.clone()).or_insert(k);
            }
        }
        let width = index.len();
        let rows: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|e| {
                let mut row = vec![Scalar::zero(); width];
                for (m, c) in e.value.terms() {
                    row[index[m]] = c.clone();
                }
                row
            })
            .collect();
        if linalg::rank(&rows) != basis.len() {
            return Err(Error::Precondition("candidate basis is linearly dependent".into()));
        }
        Ok(Span { index, rows })
    }

    fn coordinates(&self, p: &Poly) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.index.len()];
        for (m, c) in p.terms() {
            v[*self.index.get(m)?] = c.clone();
        }
        linalg::solve_in_span(&self.rows, &v)
    }
}

/// Whether the span of `basis` is closed under the commutator of `product`;
/// if so, its structure constants, the Jacobi identity, and optionally an
/// isomorphism onto a given Lie algebra.
pub fn lie_closure_check(
    product: &dyn Product,
    basis: &[Element],
    display: &VarTable,
    correspondence: Option<&Correspondence>,
) -> Result<CheckReport> {
    let names: Vec<&str> = basis.iter().map(|e| e.name.as_str()).collect();
    let mut report = CheckReport::new(Section::LieClosure, format!("span of {} under {}", names.join(", "), product.label()));
    let span = Span::new(basis)?;
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .collect();
    let brackets: Vec<Result<(Poly, AssumptionLog)>> = pairs
        .par_iter()
        .map(|&(i, j)| product.bracket(&basis[i].value, &basis[j].value))
        .collect();
    let mut entries = Vec::new();
    let mut closed = true;
    for (&(i, j), r) in pairs.iter().zip(brackets) {
        let (value, log) = r?;
        report.assumed.merge(&log);
        match span.coordinates(&value) {
            Some(coords) => {
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((names[i].to_string(), names[j].to_string(), names[k].to_string(), c));
                    }
                }
            }
            None => {
                closed = false;
                report.fail(format!(
                    "[{},{}] = {} escapes the span",
                    names[i],
                    names[j],
                    display.format_poly(&value)
                ));
            }
        }
    }
    if !closed {
        return Ok(report);
    }
    let model = LieModel::new(&names, &entries)?;
    let mut nonzero = 0;
    for &(i, j) in &pairs {
        let b = model.bracket(&model.basis(i), &model.basis(j));
        if b.iter().any(|c| !c.is_zero()) {
            nonzero += 1;
            report.fact(format!("[{},{}] = {}", names[i], names[j], model.format_vector(&b)));
        }
    }
    if nonzero == 0 {
        report.fact("closed and abelian");
    }
    let jacobi = model.jacobi_check();
    for f in &jacobi.findings {
        report.fail(f.message.clone());
    }
    if let Some(c) = correspondence {
        check_isomorphism(&model, c, &mut report)?;
    }
    Ok(report)
}

fn check_isomorphism(model: &LieModel, c: &Correspondence, report: &mut CheckReport) -> Result<()> {
    let target = &c.target;
    if target.dim() != model.dim() || c.images.len() != target.dim() {
        report.fail(format!(
            "dimension mismatch: span has {}, target has {}",
            model.dim(),
            target.dim()
        ));
        return Ok(());
    }
    let mut images = vec![Vec::new(); target.dim()];
    for (label, combo) in &c.images {
        images[target.index_of(label)?] = model.parse_vector(combo)?;
    }
    if images.iter().any(Vec::is_empty) {
        return Err(Error::Input("every target basis element needs an image".into()));
    }
    if linalg::rank(&images) != target.dim() {
        report.fail("correspondence images are linearly dependent");
        return Ok(());
    }
    let n = target.dim();
    let labels = target.labels();
    for k in 0..n {
        for l in k + 1..n {
            let lhs = model.bracket(&images[k], &images[l]);
            let mut rhs = vec![Scalar::zero(); n];
            for (m, img) in images.iter().enumerate() {
                let c = target.constant(k, l, m);
                if !c.is_zero() {
                    for (x, y) in rhs.iter_mut().zip(img) {
                        *x += c * y;
                    }
                }
            }
            if lhs != rhs {
                report.fail(format!(
                    "isomorphism fails at [{},{}]: {} != {}",
                    labels[k],
                    labels[l],
                    model.format_vector(&lhs),
                    model.format_vector(&rhs)
                ));
            }
        }
    }
    let map: Vec<String> = c.images.iter().map(|(l, e)| format!("{l} -> {e}")).collect();
    report.fact(format!("structure constants match the target under {}", map.join(", ")));
    Ok(())
}
