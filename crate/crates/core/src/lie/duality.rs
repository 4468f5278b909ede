use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{format_scalar, Scalar};
use crate::report::{CheckReport, Section};

use super::{LieModel, RMatrix};

/// A subalgebra `h ⊆ g` spanned by the given vectors, with its own structure
/// constants in that basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subalgebra {
    names: Vec<String>,
    vectors: Matrix,
    constants: Vec<Vec<Vec<Scalar>>>,
}

impl Subalgebra {
    /// Basis elements are given as linear combinations of the labels of `g`,
    /// e.g. `["f", "a + b"]`; the texts double as their names.
    pub fn parse<S: AsRef<str>>(model: &LieModel, basis: &[S]) -> Result<Self> {
        let vectors = basis
            .iter()
            .map(|s| model.parse_vector(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let names = basis.iter().map(|s| s.as_ref().trim().to_string()).collect();
        Self::new(model, names, vectors)
    }

    pub fn new(model: &LieModel, names: Vec<String>, vectors: Matrix) -> Result<Self> {
        if linalg::rank(&vectors) != vectors.len() {
            return Err(Error::Input("subalgebra basis is linearly dependent".into()));
        }
        let m = vectors.len();
        let mut constants = vec![vec![vec![Scalar::zero(); m]; m]; m];
        for p in 0..m {
            for q in 0..m {
                let b = model.bracket(&vectors[p], &vectors[q]);
                let coords = linalg::solve_in_span(&vectors, &b).ok_or_else(|| {
                    Error::Precondition(format!(
                        "span is not a subalgebra: [{},{}] = {} escapes it",
                        names[p],
                        names[q],
                        model.format_vector(&b)
                    ))
                })?;
                constants[p][q] = coords;
            }
        }
        Ok(Subalgebra {
            names,
            vectors,
            constants,
        })
    }

    /// `h = g`.
    pub fn whole(model: &LieModel) -> Self {
        let vectors = (0..model.dim()).map(|i| model.basis(i)).collect();
        Self::new(model, model.labels().to_vec(), vectors).expect("g is a subalgebra of itself")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name.trim())
            .ok_or_else(|| Error::Input(format!("undeclared subalgebra basis element {name}")))
    }

    fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let m = self.dim();
        let mut out = vec![Scalar::zero(); m];
        for p in 0..m {
            for q in 0..m {
                if x[p].is_zero() || y[q].is_zero() {
                    continue;
                }
                let w = &x[p] * &y[q];
                for s in 0..m {
                    out[s] += &w * &self.constants[p][q][s];
                }
            }
        }
        out
    }
}

/// A skew form on a subalgebra, in the subalgebra's basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewForm {
    matrix: Matrix,
}

impl SkewForm {
    /// `ω(a,b) = value` (and `ω(b,a) = -value`) for the given basis names.
    pub fn new(h: &Subalgebra, entries: &[(String, String, Scalar)]) -> Result<Self> {
        let mut m = linalg::zeros(h.dim(), h.dim());
        for (a, b, v) in entries {
            let (i, j) = (h.index_of(a)?, h.index_of(b)?);
            if i == j && !v.is_zero() {
                return Err(Error::Input(format!("skew form cannot pair {a} with itself")));
            }
            m[i][j] += v;
            m[j][i] -= v;
        }
        Ok(SkewForm { matrix: m })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut s = Scalar::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.matrix[i][j].is_zero() {
                    s += xi * yj * &self.matrix[i][j];
                }
            }
        }
        s
    }

    /// Nonzero entries above the diagonal, e.g. `w(a,c)=1 w(b,d)=-1`.
    pub fn format(&self, h: &Subalgebra) -> String {
        let mut parts = Vec::new();
        for i in 0..h.dim() {
            for j in i + 1..h.dim() {
                if !self.matrix[i][j].is_zero() {
                    parts.push(format!(
                        "w({},{})={}",
                        h.names[i],
                        h.names[j],
                        format_scalar(&self.matrix[i][j])
                    ));
                }
            }
        }
        parts.join(" ")
    }
}

/// Outcome of converting between `r ∈ ∧²h` and `ω`: the report plus both
/// objects when the pairing is non-degenerate.
#[derive(Debug, Clone)]
pub struct Duality {
    pub report: CheckReport,
    pub omega: Option<SkewForm>,
    pub r: Option<RMatrix>,
}

fn unit_vector(m: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); m];
    v[i] = num_traits::One::one();
    v
}

/// `ω([x,y],z) + ω([z,x],y) + ω([y,z],x) = 0` on basis triples of `h`.
fn cocycle_check(h: &Subalgebra, omega: &SkewForm, report: &mut CheckReport) {
    let m = h.dim();
    let e = |i| unit_vector(m, i);
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let (x, y, z) = (e(i), e(j), e(k));
                let s = omega.pair(&h.bracket(&x, &y), &z)
                    + omega.pair(&h.bracket(&z, &x), &y)
                    + omega.pair(&h.bracket(&y, &z), &x);
                if !s.is_zero() {
                    report.fail(format!(
                        "quasi-Frobenius cocycle fails at ({},{},{}): {}",
                        h.names[i],
                        h.names[j],
                        h.names[k],
                        format_scalar(&s)
                    ));
                }
            }
        }
    }
}

fn nondegenerate(h: &Subalgebra, m: &Matrix, what: &str, report: &mut CheckReport) -> Option<Matrix> {
    if h.dim() % 2 == 1 {
        report.fail(format!("{what} is degenerate: odd dimension {}", h.dim()));
        return None;
    }
    let inv = linalg::inverse(m);
    if inv.is_none() {
        report.fail(format!("{what} is degenerate: singular matrix"));
    }
    inv
}

fn negate(m: &Matrix) -> Matrix {
    m.iter().map(|row| row.iter().map(|x| -x.clone()).collect()).collect()
}

/// From `r` (in `g` coordinates) to `ω = -R^-1` on `h`, where `R` is `r`
/// written in the basis of `h`. Then `r = Σ e_i∧f_i` pairs with
/// `ω(e_i,f_i) = 1`.
pub fn r_to_omega(model: &LieModel, h: &Subalgebra, r: &RMatrix) -> Duality {
    let mut report = CheckReport::new(
        Section::Lie,
        format!("duality on h=<{}> from r = {}", h.names.join(", "), r.format(model)),
    );
    let hv = &h.vectors;
    let ht = linalg::transpose(hv);
    let gram_inv = linalg::inverse(&linalg::matmul(hv, &ht)).expect("basis is independent");
    // right inverse of H: H·L = I
    let l = linalg::matmul(&ht, &gram_inv);
    let rh = linalg::matmul(&linalg::matmul(&linalg::transpose(&l), r.matrix()), &l);
    let back = linalg::matmul(&linalg::matmul(&ht, &rh), hv);
    if &back != r.matrix() {
        report.fail("r is not an element of h∧h");
        return Duality {
            report,
            omega: None,
            r: None,
        };
    }
    let Some(inv) = nondegenerate(h, &rh, "r", &mut report) else {
        return Duality {
            report,
            omega: None,
            r: Some(r.clone()),
        };
    };
    let omega = SkewForm { matrix: negate(&inv) };
    report.fact(omega.format(h));
    cocycle_check(h, &omega, &mut report);
    Duality {
        report,
        omega: Some(omega),
        r: Some(r.clone()),
    }
}

/// From `ω` on `h` to `r = -Ω^-1`, pushed forward into `g⊗g`.
pub fn omega_to_r(model: &LieModel, h: &Subalgebra, omega: &SkewForm) -> Duality {
    let mut report = CheckReport::new(
        Section::Lie,
        format!("duality on h=<{}> from {}", h.names.join(", "), omega.format(h)),
    );
    cocycle_check(h, omega, &mut report);
    let Some(inv) = nondegenerate(h, &omega.matrix, "w", &mut report) else {
        return Duality {
            report,
            omega: Some(omega.clone()),
            r: None,
        };
    };
    let rh = negate(&inv);
    let hv = &h.vectors;
    let rg = linalg::matmul(&linalg::matmul(&linalg::transpose(hv), &rh), hv);
    let r = RMatrix::from_matrix(rg).expect("inverse of a skew matrix is skew");
    report.fact(format!("r = {}", r.format(model)));
    Duality {
        report,
        omega: Some(omega.clone()),
        r: Some(r),
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::g4;
    use super::*;
    use crate::poly::int;
    use crate::report::Status;

    fn wedge(a: &str, b: &str) -> (String, String, Scalar) {
        (a.into(), b.into(), int(1))
    }

    #[test]
    fn four_dimensional_pairing() {
        let g = g4();
        let h = Subalgebra::whole(&g);
        let r = RMatrix::new(&g, &[wedge("a", "c"), wedge("d", "b")]).unwrap();
        let d = r_to_omega(&g, &h, &r);
        assert_eq!(d.report.status(), Status::Pass, "{}", d.report.render_text());
        let expected = SkewForm::new(&h, &[wedge("a", "c"), wedge("d", "b")]).unwrap();
        assert_eq!(d.omega.as_ref(), Some(&expected));
        let back = omega_to_r(&g, &h, &expected);
        assert_eq!(back.r, Some(r));
    }

    #[test]
    fn abelian_plane_and_odd_dimension() {
        let g = LieModel::abelian(&["u", "v", "w"]).unwrap();
        let h = Subalgebra::parse(&g, &["u", "v"]).unwrap();
        let om = SkewForm::new(&h, &[("u".into(), "v".into(), int(5))]).unwrap();
        assert_eq!(omega_to_r(&g, &h, &om).report.status(), Status::Pass);
        let whole = Subalgebra::whole(&g);
        let r = RMatrix::new(&g, &[wedge("u", "v")]).unwrap();
        let d = r_to_omega(&g, &whole, &r);
        assert!(!d.report.passed());
        assert!(d.omega.is_none());
    }

    #[test]
    fn non_subalgebra_is_a_precondition_error() {
        let g = g4();
        assert!(matches!(Subalgebra::parse(&g, &["a", "b"]), Err(Error::Precondition(_))));
    }

    #[test]
    fn non_coordinate_subalgebra() {
        let g = LieModel::new(
            &["f", "a", "b", "c"],
            &[("a".into(), "b".into(), "c".into(), int(1))],
        )
        .unwrap();
        let h = Subalgebra::parse(&g, &["f", "a + b"]).unwrap();
        let r = RMatrix::new(&g, &[wedge("f", "a"), wedge("f", "b")]).unwrap();
        let d = r_to_omega(&g, &h, &r);
        assert_eq!(d.report.status(), Status::Pass, "{}", d.report.render_text());
        assert_eq!(d.omega.unwrap().format(&h), "w(f,a + b)=1");
    }
}
