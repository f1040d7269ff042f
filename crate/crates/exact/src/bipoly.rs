//! Bivariate polynomials and resultants.

use num_traits::Zero;

use crate::det::bareiss;
use crate::poly::UniPoly;
use crate::{ExactError, Scalar};

/// Σ c[i][j] x^i y^j.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: Vec<Vec<Scalar>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl BiPoly {
    pub fn new(coeffs: Vec<Vec<Scalar>>) -> Self {
        let mut b = BiPoly { coeffs };
        b.trim();
        b
    }

    fn trim(&mut self) {
        for row in &mut self.coeffs {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|r| r.is_empty()) {
            self.coeffs.pop();
        }
    }

    /// Σ_j p_j(x) y^j.
    pub fn from_y_coeffs(ys: &[UniPoly]) -> Self {
        let nx = ys.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let mut coeffs = vec![vec![Scalar::zero(); ys.len()]; nx];
        for (j, p) in ys.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                coeffs[i][j] = c.clone();
            }
        }
        BiPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn degree_in(&self, v: Var) -> usize {
        match v {
            Var::X => self.coeffs.len().saturating_sub(1),
            Var::Y => self
                .coeffs
                .iter()
                .map(|r| r.len().saturating_sub(1))
                .max()
                .unwrap_or(0),
        }
    }

    /// Coefficients with respect to `v`, each a polynomial in the other variable.
    pub fn coeffs_in(&self, v: Var) -> Vec<UniPoly> {
        let d = self.degree_in(v);
        (0..=d)
            .map(|e| {
                let other = self.degree_in(match v {
                    Var::X => Var::Y,
                    Var::Y => Var::X,
                });
                UniPoly::new(
                    (0..=other)
                        .map(|o| match v {
                            Var::X => self.coeff(e, o),
                            Var::Y => self.coeff(o, e),
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

/// Resultant eliminating `v`; a polynomial in the other variable.
pub fn resultant(p: &BiPoly, q: &BiPoly, v: Var) -> Result<UniPoly, ExactError> {
    if p.is_zero() || q.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let pc = p.coeffs_in(v);
    let qc = q.coeffs_in(v);
    let (m, n) = (pc.len() - 1, qc.len() - 1);
    if m == 0 && n == 0 {
        return Err(ExactError::DegenerateElimination);
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![UniPoly::zero(); size];
        for (k, c) in pc.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![UniPoly::zero(); size];
        for (k, c) in qc.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    Ok(bareiss(rows))
}

/// Eliminate x; result in y.
pub fn resultant_x(p: &BiPoly, q: &BiPoly) -> Result<UniPoly, ExactError> {
    resultant(p, q, Var::X)
}

/// Eliminate y; result in x.
pub fn resultant_y(p: &BiPoly, q: &BiPoly) -> Result<UniPoly, ExactError> {
    resultant(p, q, Var::Y)
}

/// Discriminant of p with respect to `v`, up to the sign and leading-coefficient
/// normalization: Res_v(p, ∂p/∂v).
pub fn discriminant(p: &BiPoly, v: Var) -> Result<UniPoly, ExactError> {
    let pc = p.coeffs_in(v);
    let dc: Vec<UniPoly> = pc
        .iter()
        .enumerate()
        .skip(1)
        .map(|(e, c)| c.scale(&Scalar::from_integer((e as i64).into())))
        .collect();
    let d = match v {
        Var::Y => BiPoly::from_y_coeffs(&dc),
        Var::X => transpose(&BiPoly::from_y_coeffs(&dc)),
    };
    resultant(p, &d, v)
}

fn transpose(b: &BiPoly) -> BiPoly {
    let nx = b.degree_in(Var::X) + 1;
    let ny = b.degree_in(Var::Y) + 1;
    let mut c = vec![vec![Scalar::zero(); nx]; ny];
    for (i, row) in b.coeffs.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            c[j][i] = v.clone();
        }
    }
    BiPoly::new(c)
}
