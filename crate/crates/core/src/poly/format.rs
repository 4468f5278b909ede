use num_traits::{One, Signed};

use super::{format_scalar, Monomial, Poly, Scalar, Tensor, VarTable};

impl VarTable {
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.name(i).to_string()),
                e => parts.push(format!("{}^{}", self.name(i), e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Canonical rendering: terms in canonical monomial order, e.g.
    /// `X + 1/2 Y^2`; the zero element renders as `0`.
    pub fn format_poly(&self, p: &Poly) -> String {
        let mut terms: Vec<_> = p.terms().collect();
        terms.sort_by(|a, b| self.canonical_cmp(a.0, b.0));
        let rendered = terms
            .into_iter()
            .map(|(m, c)| (c.clone(), self.format_monomial(m), m.is_unit()));
        join_terms(rendered)
    }

    /// Canonical rendering with `(x)` between legs, e.g. `X(x)Y + Y(x)X`.
    pub fn format_tensor(&self, t: &Tensor) -> String {
        let mut terms: Vec<_> = t.terms().collect();
        terms.sort_by(|a, b| self.canonical_cmp_legs(a.0, b.0));
        let rendered = terms.into_iter().map(|(legs, c)| {
            let body = legs
                .iter()
                .map(|m| self.format_monomial(m))
                .collect::<Vec<_>>()
                .join("(x)");
            (c.clone(), body, false)
        });
        join_terms(rendered)
    }
}

fn join_terms(terms: impl Iterator<Item = (Scalar, String, bool)>) -> String {
    let mut out = String::new();
    for (c, body, is_unit) in terms {
        let negative = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if is_unit {
            out.push_str(&format_scalar(&abs));
        } else if abs.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&format_scalar(&abs));
            out.push(' ');
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
