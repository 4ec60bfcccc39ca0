//! The SL(3) flag-cone computation: eight products of left-justified
//! minors, the infinitesimal action on them, and the witness that the
//! five-element restricted set is not stable under the Levi subalgebra.

use crate::linalg::{QMatrix, Rat};
use num::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum Sl3Error {
    #[error("bad row set: {0}")]
    BadRows(String),
    #[error("action is defined for traceless matrices only")]
    NotTraceless,
    #[error("matrix must be 3x3")]
    MatrixShape,
}

type Result<T> = std::result::Result<T, Sl3Error>;

/// Polynomial in the nine matrix entries x_{ij}, 1 <= i,j <= 3, with exact
/// rational coefficients. Exponent vectors are indexed row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPoly {
    terms: BTreeMap<[u8; 9], Rat>,
}

fn var_index(i: u8, j: u8) -> usize {
    (3 * (i - 1) + (j - 1)) as usize
}

impl MatrixPoly {
    pub fn zero() -> Self {
        MatrixPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = MatrixPoly::zero();
        if !c.is_zero() {
            p.terms.insert([0; 9], c);
        }
        p
    }

    /// The coordinate x_{ij} (1-based).
    pub fn var(i: u8, j: u8) -> Self {
        let mut exp = [0u8; 9];
        exp[var_index(i, j)] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, Rat::one());
        MatrixPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &MatrixPoly) -> MatrixPoly {
        let mut out = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = out.entry(*e).or_insert_with(Rat::zero);
            *entry += c;
        }
        out.retain(|_, v| !v.is_zero());
        MatrixPoly { terms: out }
    }

    pub fn sub(&self, rhs: &MatrixPoly) -> MatrixPoly {
        self.add(&rhs.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> MatrixPoly {
        if c.is_zero() {
            return MatrixPoly::zero();
        }
        MatrixPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &MatrixPoly) -> MatrixPoly {
        let mut out: BTreeMap<[u8; 9], Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                let entry = out.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        out.retain(|_, v| !v.is_zero());
        MatrixPoly { terms: out }
    }

    /// Partial derivative with respect to x_{ij}.
    fn diff(&self, i: u8, j: u8) -> MatrixPoly {
        let idx = var_index(i, j);
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[idx] -= 1;
            out.insert(e2, c * Rat::from_integer(e[idx].into()));
        }
        MatrixPoly { terms: out }
    }

    /// Canonical trace-reduced form: substitute x_33 = -x_11 - x_22.
    pub fn trace_reduce(&self) -> MatrixPoly {
        let x33 = var_index(3, 3);
        let replacement = MatrixPoly::var(1, 1)
            .add(&MatrixPoly::var(2, 2))
            .scale(&-Rat::one());
        let mut out = MatrixPoly::zero();
        for (e, c) in &self.terms {
            let mut base = *e;
            let power = base[x33];
            base[x33] = 0;
            let mut term = MatrixPoly {
                terms: BTreeMap::from([(base, c.clone())]),
            };
            for _ in 0..power {
                term = term.mul(&replacement);
            }
            out = out.add(&term);
        }
        out
    }
}

/// Determinant of the submatrix on the given rows (1-based, increasing)
/// and columns 1..=r.
pub fn minor_d(rows: &[u8]) -> Result<MatrixPoly> {
    let r = rows.len();
    if r == 0 || r > 3 {
        return Err(Sl3Error::BadRows(format!("need 1..=3 rows, got {r}")));
    }
    for w in rows.windows(2) {
        if w[0] >= w[1] {
            return Err(Sl3Error::BadRows(format!("rows not increasing: {rows:?}")));
        }
    }
    if rows[0] < 1 || rows[r - 1] > 3 {
        return Err(Sl3Error::BadRows(format!("rows out of range: {rows:?}")));
    }
    // Expand over permutations of the r columns.
    let mut out = MatrixPoly::zero();
    let mut perm: Vec<u8> = (1..=r as u8).collect();
    loop {
        let mut sign = 0usize;
        for i in 0..r {
            for j in i + 1..r {
                if perm[i] > perm[j] {
                    sign += 1;
                }
            }
        }
        let mut term = MatrixPoly::constant(if sign % 2 == 0 {
            Rat::one()
        } else {
            -Rat::one()
        });
        for (row, &col) in rows.iter().zip(&perm) {
            term = term.mul(&MatrixPoly::var(*row, col));
        }
        out = out.add(&term);
        // Next permutation in lexicographic order.
        let Some(i) = (0..r.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            break;
        };
        let j = (i + 1..r).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    Ok(out)
}

/// The eight tableaux of the basis, in the listed order.
pub const P_BASIS_TABLEAUX: [(&[u8], u8); 8] = [
    (&[1, 2], 1),
    (&[1, 2], 2),
    (&[1, 3], 1),
    (&[1, 2], 3),
    (&[2, 3], 1),
    (&[1, 3], 3),
    (&[2, 3], 2),
    (&[2, 3], 3),
];

pub fn p_label(rows: &[u8], col: u8) -> String {
    let rows: String = rows.iter().map(|r| r.to_string()).collect();
    format!("p({rows}|{col})")
}

/// The product p(R1|R2) = d(R1) d(R2).
pub fn p_tableau(rows: &[u8], col: u8) -> Result<MatrixPoly> {
    Ok(minor_d(rows)?.mul(&minor_d(&[col])?))
}

/// The eight basis functions with their labels.
pub fn build_p_basis() -> Vec<(String, MatrixPoly)> {
    P_BASIS_TABLEAUX
        .iter()
        .map(|&(rows, col)| {
            (
                p_label(rows, col),
                p_tableau(rows, col).expect("fixed tableaux are valid"),
            )
        })
        .collect()
}

/// Derivative of `f` along the left-translation vector field M -> -xi M.
/// This is the infinitesimal form of f(M) -> f(exp(-t xi) M), under which
/// spans of fixed-column minors stay stable; the bracket-compatibility
/// test documents the convention.
pub fn lie_action(xi: &QMatrix, f: &MatrixPoly) -> Result<MatrixPoly> {
    if xi.rows != 3 || xi.cols != 3 {
        return Err(Sl3Error::MatrixShape);
    }
    let trace = xi[(0, 0)].clone() + &xi[(1, 1)] + &xi[(2, 2)];
    if !trace.is_zero() {
        return Err(Sl3Error::NotTraceless);
    }
    let mut out = MatrixPoly::zero();
    for i in 1..=3u8 {
        for j in 1..=3u8 {
            let df = f.diff(i, j);
            if df.is_zero() {
                continue;
            }
            // The field sends x_{ij} to -(xi M)_{ij} = -sum_k xi_{ik} x_{kj}.
            let mut rate = MatrixPoly::zero();
            for k in 1..=3u8 {
                let coeff = -xi[(i as usize - 1, k as usize - 1)].clone();
                if !coeff.is_zero() {
                    rate = rate.add(&MatrixPoly::var(k, j).scale(&coeff));
                }
            }
            out = out.add(&df.mul(&rate));
        }
    }
    Ok(out)
}

fn elementary(i: usize, j: usize) -> QMatrix {
    let mut m = QMatrix::zero(3, 3);
    m[(i - 1, j - 1)] = Rat::one();
    m
}

fn diagonal(entries: [i64; 3]) -> QMatrix {
    let mut m = QMatrix::zero(3, 3);
    for (i, &e) in entries.iter().enumerate() {
        m[(i, i)] = Rat::from_integer(e.into());
    }
    m
}

/// Basis of sl3: the six off-diagonal units and two diagonal differences.
pub fn sl3_basis() -> Vec<(String, QMatrix)> {
    let mut out = Vec::new();
    for i in 1..=3 {
        for j in 1..=3 {
            if i != j {
                out.push((format!("E{i}{j}"), elementary(i, j)));
            }
        }
    }
    out.push(("diag(1,-1,0)".to_string(), diagonal([1, -1, 0])));
    out.push(("diag(0,1,-1)".to_string(), diagonal([0, 1, -1])));
    out
}

/// Basis of the Levi subalgebra of block shape (2,1): the gl2 block made
/// traceless against the last coordinate.
pub fn levi_basis() -> Vec<(String, QMatrix)> {
    vec![
        ("E12".to_string(), elementary(1, 2)),
        ("E21".to_string(), elementary(2, 1)),
        ("diag(1,-1,0)".to_string(), diagonal([1, -1, 0])),
        ("diag(1,1,-2)".to_string(), diagonal([1, 1, -2])),
    ]
}

/// The five restricted functions, in the listed order.
pub fn restricted_labels() -> Vec<(Vec<u8>, u8)> {
    vec![
        (vec![1, 2], 1),
        (vec![1, 2], 2),
        (vec![1, 3], 1),
        (vec![2, 3], 1),
        (vec![2, 3], 2),
    ]
}

/// Coefficient matrix of trace-reduced polynomials over their joint
/// monomial support.
fn coefficient_matrix(polys: &[MatrixPoly]) -> QMatrix {
    let reduced: Vec<MatrixPoly> = polys.iter().map(MatrixPoly::trace_reduce).collect();
    let support: BTreeSet<[u8; 9]> = reduced
        .iter()
        .flat_map(|p| p.terms.keys().copied())
        .collect();
    let index: BTreeMap<[u8; 9], usize> =
        support.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut m = QMatrix::zero(reduced.len(), support.len().max(1));
    for (r, p) in reduced.iter().enumerate() {
        for (e, c) in &p.terms {
            m[(r, index[e])] = c.clone();
        }
    }
    m
}

pub fn span_rank(polys: &[MatrixPoly]) -> usize {
    coefficient_matrix(polys).rank()
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Sl3Witness {
    pub xi: String,
    pub f: String,
    pub residual_rank: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Sl3Report {
    pub claim: String,
    pub span_dim: usize,
    pub witnesses: Vec<Sl3Witness>,
    #[serde(skip)]
    pub basis_rank: usize,
    #[serde(skip)]
    pub stable_rank: usize,
}

/// Run the whole computation: the eight functions span an sl3-stable
/// eight-dimensional space, the five restricted ones span five dimensions,
/// and at least one Levi generator pushes one of the five outside that
/// span. An empty witness list is a failing outcome for the caller.
pub fn check_nonstability() -> Result<Sl3Report> {
    let basis = build_p_basis();
    let eight: Vec<MatrixPoly> = basis.iter().map(|(_, p)| p.clone()).collect();
    let basis_rank = span_rank(&eight);

    let mut adjoined = eight.clone();
    for (_, xi) in sl3_basis() {
        for p in &eight {
            adjoined.push(lie_action(&xi, p)?);
        }
    }
    let stable_rank = span_rank(&adjoined);

    let five: Vec<(String, MatrixPoly)> = restricted_labels()
        .into_iter()
        .map(|(rows, col)| {
            (
                p_label(&rows, col),
                p_tableau(&rows, col).expect("fixed tableaux are valid"),
            )
        })
        .collect();
    let five_polys: Vec<MatrixPoly> = five.iter().map(|(_, p)| p.clone()).collect();
    let span_dim = span_rank(&five_polys);

    let mut witnesses = Vec::new();
    for (xi_label, xi) in levi_basis() {
        for (f_label, f) in &five {
            let image = lie_action(&xi, f)?;
            let mut extended = five_polys.clone();
            extended.push(image);
            let residual_rank = span_rank(&extended);
            if residual_rank > span_dim {
                witnesses.push(Sl3Witness {
                    xi: xi_label.clone(),
                    f: f_label.clone(),
                    residual_rank,
                });
            }
        }
    }

    Ok(Sl3Report {
        claim: "remark-nonstability".to_string(),
        span_dim,
        witnesses,
        basis_rank,
        stable_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;

    fn x(i: u8, j: u8) -> MatrixPoly {
        MatrixPoly::var(i, j)
    }

    #[test]
    fn minor_examples() {
        assert_eq!(minor_d(&[1]).unwrap(), x(1, 1));
        assert_eq!(minor_d(&[2]).unwrap(), x(2, 1));
        let d12 = minor_d(&[1, 2]).unwrap();
        assert_eq!(d12, x(1, 1).mul(&x(2, 2)).sub(&x(1, 2).mul(&x(2, 1))));
        // d(123) is the full determinant: six terms, and it vanishes when
        // two rows agree after substitution; spot-check one coefficient.
        let d123 = minor_d(&[1, 2, 3]).unwrap();
        assert_eq!(d123.terms.len(), 6);
        let e = {
            let mut e = [0u8; 9];
            e[var_index(1, 1)] = 1;
            e[var_index(2, 2)] = 1;
            e[var_index(3, 3)] = 1;
            e
        };
        assert_eq!(d123.terms[&e], Rat::one());
        assert!(minor_d(&[1, 1]).is_err());
        assert!(minor_d(&[0, 2]).is_err());
        assert!(minor_d(&[]).is_err());
    }

    #[test]
    fn basis_has_eight_linearly_independent_functions() {
        let basis = build_p_basis();
        assert_eq!(basis.len(), 8);
        assert_eq!(basis[0].0, "p(12|1)");
        let expected = minor_d(&[1, 2]).unwrap().mul(&x(1, 1));
        assert_eq!(basis[0].1, expected);
        let polys: Vec<MatrixPoly> = basis.iter().map(|(_, p)| p.clone()).collect();
        assert_eq!(span_rank(&polys), 8);
    }

    #[test]
    fn trace_reduction_examples() {
        let p = x(3, 3);
        let reduced = p.trace_reduce();
        assert_eq!(reduced, x(1, 1).add(&x(2, 2)).scale(&-Rat::one()));
        // The reduction is idempotent and kills the trace.
        let trace = x(1, 1).add(&x(2, 2)).add(&x(3, 3));
        assert!(trace.trace_reduce().is_zero());
        assert_eq!(reduced.trace_reduce(), reduced);
    }

    #[test]
    fn action_of_zero_and_diagonal() {
        let zero = QMatrix::zero(3, 3);
        for (_, p) in build_p_basis() {
            assert!(lie_action(&zero, &p).unwrap().is_zero());
        }
        // Diagonal elements scale each basis function by an integer.
        for h in [
            diagonal([1, -1, 0]),
            diagonal([0, 1, -1]),
            diagonal([1, 1, -2]),
        ] {
            for (label, p) in build_p_basis() {
                let image = lie_action(&h, &p).unwrap();
                if image.is_zero() {
                    continue;
                }
                // image = c * p for an integer c.
                let (e0, c0) = p.terms.iter().next().unwrap();
                let ratio = image.terms.get(e0).map(|c| c / c0);
                let ratio = ratio.unwrap_or_else(|| panic!("{label} is not a weight vector"));
                assert!(ratio.is_integer(), "{label} scales by {ratio}");
                assert_eq!(image, p.scale(&ratio), "{label}");
            }
        }
    }

    #[test]
    fn action_is_a_derivation() {
        let xi = elementary(1, 2);
        let f = minor_d(&[1, 3]).unwrap();
        let g = x(2, 1).add(&x(3, 2).scale(&rat_int(4)));
        let lhs = lie_action(&xi, &f.mul(&g)).unwrap();
        let rhs = lie_action(&xi, &f)
            .unwrap()
            .mul(&g)
            .add(&f.mul(&lie_action(&xi, &g).unwrap()));
        assert_eq!(lhs, rhs);
        // Linearity.
        let sum = f.add(&g.scale(&rat_int(-3)));
        let lhs = lie_action(&xi, &sum).unwrap();
        let rhs = lie_action(&xi, &f)
            .unwrap()
            .add(&lie_action(&xi, &g).unwrap().scale(&rat_int(-3)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_respects_brackets() {
        let pairs = [
            (elementary(1, 2), elementary(2, 1)),
            (elementary(1, 2), elementary(2, 3)),
            (diagonal([1, -1, 0]), elementary(1, 2)),
            (elementary(3, 1), elementary(1, 2)),
        ];
        for (xi, eta) in pairs {
            // [xi, eta] as matrices.
            let mut bracket = QMatrix::zero(3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    let mut acc = Rat::zero();
                    for k in 0..3 {
                        acc += &xi[(i, k)] * &eta[(k, j)] - &eta[(i, k)] * &xi[(k, j)];
                    }
                    bracket[(i, j)] = acc;
                }
            }
            for (_, p) in build_p_basis() {
                let direct = lie_action(&bracket, &p).unwrap();
                let composed = lie_action(&xi, &lie_action(&eta, &p).unwrap())
                    .unwrap()
                    .sub(&lie_action(&eta, &lie_action(&xi, &p).unwrap()).unwrap());
                assert_eq!(direct, composed);
            }
        }
    }

    #[test]
    fn action_rejects_non_traceless() {
        let m = diagonal([1, 0, 0]);
        assert_eq!(lie_action(&m, &x(1, 1)), Err(Sl3Error::NotTraceless));
    }

    #[test]
    fn frozen_witness_image() {
        // The image of p(13|1) under E12 expands, via the minor syzygy
        // d(12)d(3) - d(13)d(2) + d(23)d(1) = 0, to -2 p(23|1) - p(12|3).
        let image = lie_action(&elementary(1, 2), &p_tableau(&[1, 3], 1).unwrap()).unwrap();
        let expected = p_tableau(&[2, 3], 1)
            .unwrap()
            .scale(&rat_int(-2))
            .sub(&p_tableau(&[1, 2], 3).unwrap());
        assert_eq!(image, expected);
        // And the syzygy itself holds identically.
        let syzygy = minor_d(&[1, 2])
            .unwrap()
            .mul(&x(3, 1))
            .sub(&minor_d(&[1, 3]).unwrap().mul(&x(2, 1)))
            .add(&minor_d(&[2, 3]).unwrap().mul(&x(1, 1)));
        assert!(syzygy.is_zero());
    }

    #[test]
    fn nonstability_report() {
        let report = check_nonstability().unwrap();
        assert_eq!(report.claim, "remark-nonstability");
        assert_eq!(report.basis_rank, 8);
        assert_eq!(report.stable_rank, 8);
        assert_eq!(report.span_dim, 5);
        assert_eq!(report.witnesses.len(), 2);
        assert_eq!(report.witnesses[0].xi, "E12");
        assert_eq!(report.witnesses[0].f, "p(13|1)");
        assert_eq!(report.witnesses[0].residual_rank, 6);
        assert_eq!(report.witnesses[1].xi, "E21");
        assert_eq!(report.witnesses[1].f, "p(23|2)");
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"claim\":\"remark-nonstability\""));
        assert!(json.contains("\"spanDim\":5"));
        assert!(json.contains("\"residualRank\":6"));
        assert!(!json.contains("basis_rank"));
    }
}
