use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::functionals::{TableEntry, Twist};
use crate::hopf::{GroupPoint, HopfMap, Presentation};
use crate::lie::{LieModel, RMatrix, SkewForm, Subalgebra};
use crate::poly::{parse_poly, parse_scalar, parse_tensor, Monomial, Scalar, Substitution, VarTable};

use super::schema::{AlgebraSpec, Document, GroupSpec, LieSpec, Triple, TwistSpec, WedgeSpec};

/// Prefixes an error with the document location it came from.
pub(crate) fn at<T>(location: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{location}: {m}")),
        Error::Validation(m) => Error::Validation(format!("{location}: {m}")),
        other => Error::Input(format!("{location}: {other}")),
    })
}

/// A validated document with everything it names constructed.
#[derive(Debug, Clone)]
pub struct Definition {
    pub document: Document,
    pub group: Arc<Presentation>,
    pub twist: Twist,
    pub points: BTreeMap<String, GroupPoint>,
    pub lie: LieData,
}

/// An r-matrix or a form, on a subalgebra of a named Lie algebra.
#[derive(Debug, Clone)]
pub struct Wedge<T> {
    pub algebra: String,
    pub h: Subalgebra,
    pub value: T,
}

#[derive(Debug, Clone, Default)]
pub struct LieData {
    pub algebras: BTreeMap<String, LieModel>,
    pub r: BTreeMap<String, Wedge<RMatrix>>,
    pub forms: BTreeMap<String, Wedge<SkewForm>>,
}

impl LieData {
    pub fn algebra(&self, label: &str) -> Result<&LieModel> {
        self.algebras
            .get(label)
            .ok_or_else(|| Error::Input(format!("unknown Lie algebra {label}")))
    }
}

pub(crate) fn build_group(loc: &str, spec: &GroupSpec) -> Result<Arc<Presentation>> {
    let vars = at(loc, VarTable::new(&spec.laurent, &spec.unipotent))?;
    let mut defects = BTreeMap::new();
    for (name, text) in &spec.coproduct {
        let t = at(&format!("{loc}.coproduct.{name}"), parse_tensor(text, &vars))?;
        defects.insert(name.clone(), t);
    }
    at(loc, Presentation::new(vars, defects))
}

fn build_map(loc: &str, source: &Arc<Presentation>, target: &Arc<Presentation>, images: &BTreeMap<String, String>) -> Result<HopfMap> {
    let mut parsed = BTreeMap::new();
    for (name, text) in images {
        let p = at(&format!("{loc}.{name}"), parse_poly(text, target.vars()))?;
        parsed.insert(name.clone(), p);
    }
    let subst = at(loc, Substitution::new(source.vars().clone(), target.vars().clone(), &parsed))?;
    at(loc, HopfMap::new(source.clone(), target.clone(), subst))
}

fn scalar(loc: &str, text: &str) -> Result<Scalar> {
    at(loc, parse_scalar(text))
}

/// A monomial with coefficient 1, e.g. `Y^2` or `F^-1*X`.
pub(crate) fn monomial(loc: &str, text: &str, vars: &VarTable) -> Result<Monomial> {
    let p = at(loc, parse_poly(text, vars))?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(Error::Input(format!("{loc}: {text} is not a monomial"))),
    }
}

fn table_entries(loc: &str, entries: &[Triple], vars: &VarTable) -> Result<Vec<TableEntry>> {
    entries
        .iter()
        .enumerate()
        .map(|(i, [a, b, c])| {
            let l = format!("{loc}[{i}]");
            Ok((monomial(&l, a, vars)?, monomial(&l, b, vars)?, scalar(&l, c)?))
        })
        .collect()
}

pub(crate) fn build_twist(loc: &str, g: &Arc<Presentation>, spec: &TwistSpec, max_order: usize) -> Result<Twist> {
    match spec {
        TwistSpec::Trivial => Ok(Twist::trivial(g.clone())),
        TwistSpec::ExpR {
            support,
            embedding,
            r,
            scale,
        } => {
            let h = build_group(&format!("{loc}.support"), support)?;
            let map = build_map(&format!("{loc}.embedding"), g, &h, embedding)?;
            let pairs = r
                .iter()
                .enumerate()
                .map(|(i, [a, b, c])| Ok((a.clone(), b.clone(), scalar(&format!("{loc}.r[{i}]"), c)?)))
                .collect::<Result<Vec<_>>>()?;
            let scale = scalar(&format!("{loc}.scale"), scale)?;
            at(loc, Twist::exp_r(h, &pairs, scale, map, max_order))
        }
        TwistSpec::Table {
            j,
            j_inv,
            certified_degree,
        } => {
            let j = table_entries(&format!("{loc}.j"), j, g.vars())?;
            let j_inv = table_entries(&format!("{loc}.j_inv"), j_inv, g.vars())?;
            at(loc, Twist::table(g.clone(), j, j_inv, *certified_degree))
        }
        TwistSpec::Pullback {
            group,
            twist,
            embedding,
        } => {
            let inner_group = build_group(&format!("{loc}.group"), group)?;
            let inner = build_twist(&format!("{loc}.twist"), &inner_group, twist, max_order)?;
            let map = build_map(&format!("{loc}.embedding"), g, &inner_group, embedding)?;
            at(loc, Twist::pullback(&inner, map))
        }
    }
}

fn build_algebra(loc: &str, spec: &AlgebraSpec) -> Result<LieModel> {
    let abelian = at(loc, LieModel::abelian(&spec.basis))?;
    let mut entries = Vec::new();
    for (key, value) in &spec.brackets {
        let l = format!("{loc}.brackets.\"{key}\"");
        let (a, b) = key
            .split_once(',')
            .ok_or_else(|| Error::Input(format!("{l}: expected a key of the form \"x,y\"")))?;
        let v = at(&l, abelian.parse_vector(value))?;
        for (k, c) in v.into_iter().enumerate() {
            if c != Scalar::from_integer(0.into()) {
                entries.push((a.trim().to_string(), b.trim().to_string(), spec.basis[k].clone(), c));
            }
        }
    }
    at(loc, LieModel::new(&spec.basis, &entries))
}

type WedgeEntries = Vec<(String, String, Scalar)>;

fn wedge_parts(
    loc: &str,
    spec: &WedgeSpec,
    algebras: &BTreeMap<String, LieModel>,
) -> Result<(LieModel, Subalgebra, WedgeEntries)> {
    let model = algebras
        .get(&spec.algebra)
        .ok_or_else(|| Error::Input(format!("{loc}: unknown Lie algebra {}", spec.algebra)))?;
    let h = if spec.subalgebra.is_empty() {
        Subalgebra::whole(model)
    } else {
        at(&format!("{loc}.subalgebra"), Subalgebra::parse(model, &spec.subalgebra))?
    };
    let terms = spec
        .terms
        .iter()
        .enumerate()
        .map(|(i, [a, b, c])| Ok((a.clone(), b.clone(), scalar(&format!("{loc}.terms[{i}]"), c)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok((model.clone(), h, terms))
}

fn build_lie(spec: &LieSpec) -> Result<LieData> {
    let mut data = LieData::default();
    for (label, a) in &spec.algebras {
        data.algebras.insert(label.clone(), build_algebra(&format!("lie.algebras.{label}"), a)?);
    }
    for (label, w) in &spec.r {
        let loc = format!("lie.r.{label}");
        let (model, h, terms) = wedge_parts(&loc, w, &data.algebras)?;
        let value = at(&loc, RMatrix::new(&model, &terms))?;
        data.r.insert(label.clone(), Wedge { algebra: w.algebra.clone(), h, value });
    }
    for (label, w) in &spec.forms {
        let loc = format!("lie.forms.{label}");
        let (_, h, terms) = wedge_parts(&loc, w, &data.algebras)?;
        let value = at(&loc, SkewForm::new(&h, &terms))?;
        data.forms.insert(label.clone(), Wedge { algebra: w.algebra.clone(), h, value });
    }
    Ok(data)
}

impl Definition {
    pub fn build(document: Document, max_order: usize) -> Result<Self> {
        let group = build_group("group", &document.group)?;
        let twist = build_twist("twist", &group, &document.twist, max_order)?;
        let mut points = BTreeMap::new();
        for (label, coords) in &document.points {
            let loc = format!("points.{label}");
            let parsed = coords
                .iter()
                .map(|(k, v)| Ok((k.clone(), scalar(&format!("{loc}.{k}"), v)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            points.insert(label.clone(), at(&loc, GroupPoint::new(&group, &parsed))?);
        }
        let lie = match &document.lie {
            Some(spec) => build_lie(spec)?,
            None => LieData::default(),
        };
        Ok(Definition {
            document,
            group,
            twist,
            points,
            lie,
        })
    }

    pub fn point(&self, label: &str) -> Result<&GroupPoint> {
        self.points
            .get(label)
            .ok_or_else(|| Error::Input(format!("unknown point {label}")))
    }
}
