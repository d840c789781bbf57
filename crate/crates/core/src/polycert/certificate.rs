//! Independence certificates for the polynomials `p_{F,L}` of a family.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{is_close_sperner, DistanceSpec, SetFamily};
use crate::polycert::matrix::{coefficient_matrix, rank_rational, Matrix};
use crate::polycert::poly::{
    build_polynomial, monomial_space_dimension, MonomialSpace, MultilinearPoly,
};
use crate::scalar::Scalar;
use crate::subset::Subset;
use crate::{Rational, RationalPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Independent,
    Dependent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateMode {
    /// Exact rank of the coefficient matrix.
    Rank,
    /// Diagonal / below-diagonal evaluation pattern.
    Triangular,
}

/// A failed entry of the triangular pattern. `row` and `column` index the
/// sorted order; `set_row` / `set_column` are the input positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangularViolation {
    pub row: usize,
    pub column: usize,
    pub set_row: usize,
    pub set_column: usize,
    /// `p_{F_row}(v_{F_column})`, expected 0 below the diagonal and nonzero on it.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub mode: CertificateMode,
    /// `p_{F_i}(v_{F_i})` in sorted order (triangular mode only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagonal: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<TriangularViolation>,
    /// Coefficient-matrix columns actually used (monomials occurring in some row).
    pub columns_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub n: usize,
    #[serde(rename = "L")]
    pub distances: Vec<usize>,
    pub m: usize,
    /// Input positions listed by non-increasing set size, ties in input order.
    pub ordering: Vec<usize>,
    /// `dim M_{|L|} = Σ_{h≤|L|} binom(n,h)` (for the with-one mode, `dim M_1`).
    pub basis_dim: u128,
    pub rank: usize,
    pub with_one: bool,
    pub verdict: Verdict,
    pub diagnostics: Diagnostics,
}

impl Certificate {
    /// Rows in the certified list: `m`, plus one for the constant polynomial.
    pub fn row_count(&self) -> usize {
        self.m + usize::from(self.with_one)
    }

    /// Triangular mode: the evaluation pattern holds literally.
    pub fn pattern_holds(&self) -> bool {
        self.diagnostics.first_violation.is_none()
    }

    pub fn is_independent(&self) -> bool {
        self.verdict == Verdict::Independent
    }
}

/// Input positions ordered by non-increasing size; a stable sort.
pub fn non_increasing_order(fam: &SetFamily) -> Vec<usize> {
    let mut order: Vec<usize> = (0..fam.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(fam.sets()[i].len()));
    order
}

fn require_close_sperner(fam: &SetFamily, spec: &DistanceSpec) -> Result<()> {
    if spec.contains_zero() {
        return Err(Error::CertificateUndefined);
    }
    if !is_close_sperner(fam, spec)? {
        let v = fam.first_violation(spec).expect("violation exists");
        return Err(Error::PreconditionViolation {
            i: v.i,
            j: v.j,
            distance: v.distance,
        });
    }
    Ok(())
}

fn polynomials(fam: &SetFamily, spec: &DistanceSpec, order: &[usize]) -> Result<Vec<RationalPoly>> {
    order
        .iter()
        .map(|&i| build_polynomial(&fam.sets()[i], spec, fam.n()))
        .collect()
}

fn rank_of(polys: &[RationalPoly], n: usize, cap: usize) -> Result<(usize, usize)> {
    let space = MonomialSpace::spanned_by(n, cap, polys, &[]);
    let matrix = coefficient_matrix(polys, &space)?;
    Ok((rank_rational(&matrix), space.dimension()))
}

fn verdict_for(rank: usize, rows: usize) -> Verdict {
    if rank == rows {
        Verdict::Independent
    } else {
        Verdict::Dependent
    }
}

const DEPENDENT_NOTE: &str =
    "dependent polynomials on a verified L-close Sperner family contradict the independence theorem: implementation defect";

/// Rank certificate that `p_{F_1,L}, ..., p_{F_m,L}` are linearly
/// independent, which bounds `m` by `Σ_{h≤|L|} binom(n,h)`.
pub fn certify_independent(fam: &SetFamily, spec: &DistanceSpec) -> Result<Certificate> {
    require_close_sperner(fam, spec)?;
    let order = non_increasing_order(fam);
    let polys = polynomials(fam, spec, &order)?;
    let (rank, columns_used) = rank_of(&polys, fam.n(), spec.len())?;
    let verdict = verdict_for(rank, fam.len());
    debug_assert_eq!(verdict, Verdict::Independent, "{DEPENDENT_NOTE}");
    Ok(Certificate {
        n: fam.n(),
        distances: spec.iter().collect(),
        m: fam.len(),
        ordering: order,
        basis_dim: monomial_space_dimension(fam.n(), spec.len()),
        rank,
        with_one: false,
        verdict,
        diagnostics: Diagnostics {
            mode: CertificateMode::Rank,
            diagonal: Vec::new(),
            first_violation: None,
            columns_used,
            note: (verdict == Verdict::Dependent).then(|| DEPENDENT_NOTE.to_string()),
        },
    })
}

/// For `|L| = 1`: `1, p_{F_1,L}, ..., p_{F_m,L}` are independent inside
/// `M_1`, so `m ≤ n`. The family `{∅}` is excluded.
pub fn certify_with_one(fam: &SetFamily, spec: &DistanceSpec) -> Result<Certificate> {
    if spec.len() != 1 {
        return Err(Error::UnsupportedSpec(format!(
            "the with-one certificate needs |L| = 1, got L = {{{spec}}}"
        )));
    }
    require_close_sperner(fam, spec)?;
    if fam.len() == 1 && fam.sets()[0].is_empty() {
        return Err(Error::ExcludedFamily);
    }
    let order = non_increasing_order(fam);
    let mut polys = vec![MultilinearPoly::one(fam.n())];
    polys.extend(polynomials(fam, spec, &order)?);
    let (rank, columns_used) = rank_of(&polys, fam.n(), 1)?;
    let verdict = verdict_for(rank, polys.len());
    debug_assert_eq!(verdict, Verdict::Independent, "{DEPENDENT_NOTE}");
    Ok(Certificate {
        n: fam.n(),
        distances: spec.iter().collect(),
        m: fam.len(),
        ordering: order,
        basis_dim: monomial_space_dimension(fam.n(), 1),
        rank,
        with_one: true,
        verdict,
        diagnostics: Diagnostics {
            mode: CertificateMode::Rank,
            diagonal: Vec::new(),
            first_violation: None,
            columns_used,
            note: (verdict == Verdict::Dependent).then(|| DEPENDENT_NOTE.to_string()),
        },
    })
}

/// Checks the triangular evaluation pattern on the non-increasing order:
/// `p_i(v_i) = Π_{h∈L}(-h) ≠ 0` and `p_i(v_j) = 0` for every `j < i`.
///
/// The L-close Sperner property is not pre-checked; a family lacking it
/// shows up as a `first_violation`. When the pattern holds the rank is `m`
/// by the triangular argument; otherwise the exact rank is computed.
pub fn triangular_certificate(fam: &SetFamily, spec: &DistanceSpec) -> Result<Certificate> {
    if spec.contains_zero() {
        return Err(Error::CertificateUndefined);
    }
    let order = non_increasing_order(fam);
    let polys = polynomials(fam, spec, &order)?;
    let sets: Vec<&Subset> = order.iter().map(|&i| &fam.sets()[i]).collect();
    let expected_diag = spec.iter().fold(Rational::from_int(1), |acc, h| {
        acc * Rational::from_int(-(h as i64))
    });

    let mut diagonal = Vec::with_capacity(polys.len());
    let mut first_violation = None;
    'rows: for (i, p) in polys.iter().enumerate() {
        let d = p.evaluate_at(sets[i]);
        let ok = d == expected_diag && !d.is_zero();
        diagonal.push(d.to_string());
        if !ok {
            first_violation = Some(TriangularViolation {
                row: i,
                column: i,
                set_row: order[i],
                set_column: order[i],
                value: d.to_string(),
            });
            break;
        }
        for j in 0..i {
            let v = p.evaluate_at(sets[j]);
            if !v.is_zero() {
                first_violation = Some(TriangularViolation {
                    row: i,
                    column: j,
                    set_row: order[i],
                    set_column: order[j],
                    value: v.to_string(),
                });
                break 'rows;
            }
        }
    }

    let columns_used = MonomialSpace::spanned_by(fam.n(), spec.len(), &polys, &[]).dimension();
    let rank = if first_violation.is_none() {
        polys.len()
    } else {
        rank_of(&polys, fam.n(), spec.len())?.0
    };
    Ok(Certificate {
        n: fam.n(),
        distances: spec.iter().collect(),
        m: fam.len(),
        ordering: order,
        basis_dim: monomial_space_dimension(fam.n(), spec.len()),
        rank,
        with_one: false,
        verdict: verdict_for(rank, fam.len()),
        diagnostics: Diagnostics {
            mode: CertificateMode::Triangular,
            diagonal,
            first_violation,
            columns_used,
            note: None,
        },
    })
}

/// `dim(⟨p_{F,[k]} : F ∈ fam⟩ ∩ M_{k-1})` for a `[k]`-close Sperner family
/// whose sets all have size in `[k, n-k]`.
///
/// Two independent routes must agree:
/// `dim U + dim W - dim(U + W)` with `W = M_{k-1}` stacked explicitly, and
/// `rank U - rank(U restricted to degree-k columns)`.
pub fn span_intersection_dim(fam: &SetFamily, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidInput("degree k must be at least 1".into()));
    }
    if fam.is_empty() {
        return Ok(0);
    }
    let n = fam.n();
    let spec = DistanceSpec::range(1, k)?;
    require_close_sperner(fam, &spec)?;
    if let Some((i, s)) = fam
        .iter()
        .enumerate()
        .find(|(_, s)| s.len() < k || s.len() + k > n)
    {
        return Err(Error::InvalidInput(format!(
            "set {i} has size {}, outside [{k}, {}]",
            s.len(),
            n.saturating_sub(k)
        )));
    }

    let polys = polynomials(fam, &spec, &(0..fam.len()).collect::<Vec<_>>())?;
    let lower = MonomialSpace::full(n, k - 1);
    let space = MonomialSpace::spanned_by(n, k, &polys, lower.monomials());
    let u = coefficient_matrix(&polys, &space)?;
    let dim_u = rank_rational(&u);

    // Route 1: stack the unit rows of W.
    let mut stacked = u.clone();
    for mono in lower.monomials() {
        let mut row = vec![Rational::from_int(0); space.dimension()];
        row[space.position(mono).expect("lower monomials included")] = Rational::from_int(1);
        stacked.push_row(row)?;
    }
    let dim_w = lower.dimension();
    let via_sum = dim_u + dim_w - rank_rational(&stacked);

    // Route 2: project away W.
    let top: Vec<usize> = space
        .monomials()
        .iter()
        .enumerate()
        .filter(|(_, m)| m.len() >= k)
        .map(|(i, _)| i)
        .collect();
    let projected: Matrix<Rational> = u.select_columns(&top);
    let via_projection = dim_u - rank_rational(&projected);

    if via_sum != via_projection {
        return Err(Error::Internal(format!(
            "span intersection routes disagree: {via_sum} vs {via_projection}"
        )));
    }
    Ok(via_sum)
}
