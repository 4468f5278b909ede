//! Small fixture builders shared by unit tests.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::functionals::{Twist, DEFAULT_MAX_ORDER};
use crate::hopf::{HopfMap, Presentation};
use crate::poly::{parse_poly, parse_tensor, q, Monomial, Scalar, Substitution, VarTable};

pub fn presentation(laurent: &[&str], unipotent: &[&str], defects: &[(&str, &str)]) -> Arc<Presentation> {
    let vars = VarTable::new(laurent, unipotent).unwrap();
    let q = defects
        .iter()
        .map(|(k, v)| (k.to_string(), parse_tensor(v, &vars).unwrap()))
        .collect();
    Presentation::new(vars, q).unwrap()
}

pub fn hopf_map(src: &Arc<Presentation>, dst: &Arc<Presentation>, images: &[(&str, &str)]) -> HopfMap {
    let map: BTreeMap<String, _> = images
        .iter()
        .map(|(k, v)| (k.to_string(), parse_poly(v, dst.vars()).unwrap()))
        .collect();
    let s = Substitution::new(src.vars().clone(), dst.vars().clone(), &map).unwrap();
    HopfMap::new(src.clone(), dst.clone(), s).unwrap()
}

pub fn mono(g: &Presentation, text: &str) -> Monomial {
    let p = g.parse(text).unwrap();
    let m = p.terms().next().unwrap().0.clone();
    m
}

pub fn heisen3() -> Arc<Presentation> {
    presentation(&[], &["X", "Y", "V"], &[("V", "X(x)Y")])
}

pub fn dim4() -> Arc<Presentation> {
    presentation(
        &[],
        &["X", "Y", "V", "W"],
        &[("V", "X(x)Y"), ("W", "V(x)Y + 1/2 X(x)Y^2")],
    )
}

fn xv_support() -> Arc<Presentation> {
    presentation(&[], &["X", "V"], &[])
}

fn xv_pairs() -> Vec<(String, String, Scalar)> {
    vec![("X".into(), "V".into(), q(1, 1))]
}

pub fn heisen3_twist() -> Twist {
    let g = heisen3();
    let s = xv_support();
    let m = hopf_map(&g, &s, &[("X", "X"), ("Y", "0"), ("V", "V")]);
    Twist::exp_r(s, &xv_pairs(), q(1, 2), m, DEFAULT_MAX_ORDER).unwrap()
}

pub fn dim4_twist() -> Twist {
    let g = dim4();
    let s = xv_support();
    let m = hopf_map(&g, &s, &[("X", "X"), ("Y", "0"), ("V", "V"), ("W", "0")]);
    Twist::exp_r(s, &xv_pairs(), q(1, 2), m, DEFAULT_MAX_ORDER).unwrap()
}

pub fn minimal_twist() -> Twist {
    let g = dim4();
    let e = |a: &str, b: &str, n: i64| (mono(&g, a), mono(&g, b), q(n, 2));
    let j = vec![e("X", "V", 1), e("V", "X", -1), e("W", "Y", 1), e("Y", "W", -1)];
    let j_inv = vec![e("X", "V", -1), e("V", "X", 1), e("W", "Y", -1), e("Y", "W", 1)];
    Twist::table(g, j, j_inv, 2).unwrap()
}

pub fn torus_group() -> Arc<Presentation> {
    presentation(&["F"], &["X", "Y", "V"], &[("V", "X(x)Y")])
}

pub fn torus_twist() -> Twist {
    let g = torus_group();
    let s = presentation(&["F"], &["t"], &[]);
    let m = hopf_map(&g, &s, &[("F", "F"), ("X", "t"), ("Y", "t"), ("V", "1/2 t^2")]);
    Twist::exp_r(s, &[("F".into(), "t".into(), q(1, 1))], q(1, 2), m, DEFAULT_MAX_ORDER).unwrap()
}

pub fn u4() -> Arc<Presentation> {
    presentation(
        &[],
        &["F12", "F23", "F34", "F13", "F24", "F14"],
        &[
            ("F13", "F12(x)F23"),
            ("F24", "F23(x)F34"),
            ("F14", "F13(x)F34 + F12(x)F24"),
        ],
    )
}

pub fn u4_twist() -> Twist {
    let g = u4();
    let s = presentation(&[], &["X", "U"], &[]);
    let m = hopf_map(
        &g,
        &s,
        &[("F12", "X"), ("F23", "0"), ("F34", "U"), ("F13", "0"), ("F24", "0"), ("F14", "0")],
    );
    Twist::exp_r(s, &[("X".into(), "U".into(), q(1, 1))], q(1, 2), m, DEFAULT_MAX_ORDER).unwrap()
}

pub fn u4_quotient_twist() -> Twist {
    let g = u4();
    let inner = minimal_twist();
    let m = hopf_map(
        &g,
        inner.domain(),
        &[
            ("F12", "X"),
            ("F13", "V"),
            ("F14", "W"),
            ("F23", "Y"),
            ("F34", "Y"),
            ("F24", "1/2 Y^2"),
        ],
    );
    Twist::pullback(&inner, m).unwrap()
}
