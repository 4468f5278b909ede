//! Finite-dimensional Lie algebras by structure constants; CYBE, Jacobi and
//! quasi-Frobenius checks, and the `r = ω^-1` duality.

mod duality;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{format_scalar, parse_poly, Monomial, Poly, Scalar, VarTable};
use crate::report::{CheckReport, Section};

pub use duality::{omega_to_r, r_to_omega, Duality, SkewForm, Subalgebra};

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieModel {
    labels: Arc<VarTable>,
    constants: Vec<Vec<Vec<Scalar>>>,
}

/// One structure constant: `[i, j]` has coefficient `value` on `k`.
pub type BracketEntry = (String, String, String, Scalar);

impl LieModel {
    pub fn new<S: AsRef<str>>(labels: &[S], brackets: &[BracketEntry]) -> Result<Self> {
        let vars = VarTable::new::<&str>(&[], &labels.iter().map(|s| s.as_ref()).collect::<Vec<_>>())?;
        let n = vars.len();
        let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
        let mut seen: HashMap<(usize, usize, usize), Scalar> = HashMap::new();
        for (a, b, k, v) in brackets {
            let (i, j, k) = (vars.require(a)?, vars.require(b)?, vars.require(k)?);
            if i == j {
                if !v.is_zero() {
                    return Err(Error::Input(format!("[{a},{a}] must vanish")));
                }
                continue;
            }
            let (key, val) = if i < j { ((i, j, k), v.clone()) } else { ((j, i, k), -v.clone()) };
            if let Some(prev) = seen.insert(key, val.clone()) {
                if prev != val {
                    return Err(Error::Input(format!("conflicting structure constants for [{a},{b}]")));
                }
            }
            c[key.0][key.1][k] = val.clone();
            c[key.1][key.0][k] = -val;
        }
        Ok(LieModel { labels: vars, constants: c })
    }

    pub fn abelian<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Self::new(labels, &[])
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        self.labels.names()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.require(label)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[i][j][k]
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = num_traits::One::one();
        v
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let w = &x[i] * &y[j];
                for k in 0..n {
                    if !self.constants[i][j][k].is_zero() {
                        out[k] += &w * &self.constants[i][j][k];
                    }
                }
            }
        }
        out
    }

    /// Parses a linear combination of basis labels such as `a + 1/2 c`.
    pub fn parse_vector(&self, text: &str) -> Result<Vec<Scalar>> {
        let p = parse_poly(text, &self.labels)?;
        let mut v = vec![Scalar::zero(); self.dim()];
        for (m, c) in p.terms() {
            let support: Vec<usize> = m.support().collect();
            match support.as_slice() {
                [i] if m.exponent(*i) == 1 => v[*i] = c.clone(),
                _ => {
                    return Err(Error::Input(format!(
                        "{text} is not a linear combination of basis elements"
                    )))
                }
            }
        }
        Ok(v)
    }

    pub fn format_vector(&self, v: &[Scalar]) -> String {
        let n = self.dim();
        let mut p = Poly::zero();
        for (i, c) in v.iter().enumerate() {
            p.add_term(Monomial::var(n, i, 1), c.clone());
        }
        self.labels.format_poly(&p)
    }

    /// Sum over basis triples of `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobi_check(&self) -> CheckReport {
        let n = self.dim();
        let mut report = CheckReport::new(Section::Lie, "Jacobi identity");
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let mut sum = self.bracket(&self.bracket(&a, &b), &c);
                    let t2 = self.bracket(&self.bracket(&b, &c), &a);
                    let t3 = self.bracket(&self.bracket(&c, &a), &b);
                    for idx in 0..n {
                        sum[idx] += &t2[idx] + &t3[idx];
                    }
                    if sum.iter().any(|x| !x.is_zero()) {
                        report.fail(format!(
                            "Jacobi sum at ({},{},{}) is {}",
                            self.labels()[i],
                            self.labels()[j],
                            self.labels()[k],
                            self.format_vector(&sum)
                        ));
                    }
                }
            }
        }
        report.fact(format!("dimension={n}"));
        report
    }
}

/// `r = Σ_{i,j} r[i][j] e_i⊗e_j` with `r` skew, i.e. `Σ_{i<j} r[i][j] e_i∧e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    matrix: Matrix,
}

impl RMatrix {
    /// `Σ value · e_a∧e_b` over the given wedge terms.
    pub fn new(model: &LieModel, wedges: &[(String, String, Scalar)]) -> Result<Self> {
        let mut m = linalg::zeros(model.dim(), model.dim());
        for (a, b, v) in wedges {
            let (i, j) = (model.index_of(a)?, model.index_of(b)?);
            m[i][j] += v;
            m[j][i] -= v;
        }
        Ok(RMatrix { matrix: m })
    }

    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        let n = matrix.len();
        for i in 0..n {
            if matrix[i].len() != n {
                return Err(Error::Input("r-matrix must be square".into()));
            }
            for j in 0..n {
                if matrix[i][j] != -matrix[j][i].clone() {
                    return Err(Error::Input("r-matrix must be skew".into()));
                }
            }
        }
        Ok(RMatrix { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn format(&self, model: &LieModel) -> String {
        let mut parts = Vec::new();
        let n = self.matrix.len();
        for i in 0..n {
            for j in i + 1..n {
                let c = &self.matrix[i][j];
                if c.is_zero() {
                    continue;
                }
                let w = format!("{}^{}", model.labels()[i], model.labels()[j]);
                parts.push(if *c == Scalar::from_integer(1.into()) {
                    w
                } else {
                    format!("{} {w}", format_scalar(c))
                });
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `[r_12,r_13] + [r_12,r_23] + [r_13,r_23]` as a dense tensor in `g⊗g⊗g`.
pub fn cybe_tensor(model: &LieModel, r: &RMatrix) -> Vec<Vec<Vec<Scalar>>> {
    let n = model.dim();
    let m = r.matrix();
    let mut t = vec![vec![vec![Scalar::zero(); n]; n]; n];
    let nz: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !m[i][j].is_zero())
        .collect();
    for &(a, b) in &nz {
        for &(c, d) in &nz {
            let w = &m[a][b] * &m[c][d];
            for k in 0..n {
                // [e_a,e_c] ⊗ e_b ⊗ e_d
                let x = model.constant(a, c, k);
                if !x.is_zero() {
                    t[k][b][d] += &w * x;
                }
                // e_a ⊗ [e_b,e_c] ⊗ e_d
                let y = model.constant(b, c, k);
                if !y.is_zero() {
                    t[a][k][d] += &w * y;
                }
                // e_a ⊗ e_c ⊗ [e_b,e_d]
                let z = model.constant(b, d, k);
                if !z.is_zero() {
                    t[a][c][k] += &w * z;
                }
            }
        }
    }
    t
}

pub fn cybe_check(model: &LieModel, r: &RMatrix) -> CheckReport {
    let mut report = CheckReport::new(Section::Lie, format!("CYBE for r = {}", r.format(model)));
    let t = cybe_tensor(model, r);
    let n = model.dim();
    let l = model.labels();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !t[i][j][k].is_zero() {
                    report.fail(format!(
                        "component {}(x){}(x){} is {}",
                        l[i],
                        l[j],
                        l[k],
                        format_scalar(&t[i][j][k])
                    ));
                }
            }
        }
    }
    report
}
