use super::{Monomial, VarTable};

/// All monomials of enumeration degree at most `degree` (polynomial degree
/// plus absolute Laurent exponents), in canonical order.
pub fn monomials_up_to(vars: &VarTable, degree: usize) -> Vec<Monomial> {
    let n = vars.len();
    let mut out = Vec::new();
    let mut exps = vec![0i16; n];
    fn rec(vars: &VarTable, i: usize, budget: usize, exps: &mut Vec<i16>, out: &mut Vec<Monomial>) {
        if i == exps.len() {
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for k in 0..=budget {
            if vars.is_laurent(i) && k > 0 {
                for sign in [1i16, -1] {
                    exps[i] = sign * k as i16;
                    rec(vars, i + 1, budget - k, exps, out);
                }
            } else {
                exps[i] = k as i16;
                rec(vars, i + 1, budget - k, exps, out);
            }
        }
        exps[i] = 0;
    }
    rec(vars, 0, degree, &mut exps, &mut out);
    out.sort_by(|a, b| {
        vars.enumeration_degree(a)
            .cmp(&vars.enumeration_degree(b))
            .then_with(|| vars.canonical_cmp(a, b))
    });
    out
}

/// All `arity`-tuples of monomials whose enumeration degrees sum to at most
/// `degree`.
pub fn tuples_up_to(vars: &VarTable, arity: usize, degree: usize) -> Vec<Vec<Monomial>> {
    let basis = monomials_up_to(vars, degree);
    let degs: Vec<usize> = basis
        .iter()
        .map(|m| vars.enumeration_degree(m) as usize)
        .collect();
    let mut out = Vec::new();
    let mut acc = Vec::with_capacity(arity);
    fn rec(
        basis: &[Monomial],
        degs: &[usize],
        arity: usize,
        budget: usize,
        acc: &mut Vec<Monomial>,
        out: &mut Vec<Vec<Monomial>>,
    ) {
        if acc.len() == arity {
            out.push(acc.clone());
            return;
        }
        for (m, &d) in basis.iter().zip(degs) {
            if d > budget {
                // basis is sorted by degree
                break;
            }
            acc.push(m.clone());
            rec(basis, degs, arity, budget - d, acc, out);
            acc.pop();
        }
    }
    rec(&basis, &degs, arity, degree, &mut acc, &mut out);
    out
}
