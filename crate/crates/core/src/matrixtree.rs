//! Directed Laplacian of the cyclic multipartite graph, its principal
//! submatrices, exact symbolic determinants and the closed-form forest weight.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};

use crate::domain::{NChoiceSet, Shape};
use crate::error::{Error, Result};
use crate::polyring::{e1, e_sym, Polynomial, VarId};

/// Largest determinant dimension expanded by default.
pub const DEFAULT_DET_CAP: usize = 12;

/// Square matrix of polynomials with one vertex label per row and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    labels: Vec<VarId>,
    entries: Vec<Vec<Polynomial>>,
}

impl SymMatrix {
    /// Checks squareness and label distinctness.
    pub fn new(labels: Vec<VarId>, entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let d = labels.len();
        if entries.len() != d || entries.iter().any(|row| row.len() != d) {
            return Err(Error::domain(alloc::format!(
                "matrix is not {d}x{d} for {d} labels"
            )));
        }
        for (a, la) in labels.iter().enumerate() {
            if labels[..a].contains(la) {
                return Err(Error::domain(alloc::format!("repeated label {la}")));
            }
        }
        Ok(SymMatrix { labels, entries })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[VarId] {
        &self.labels
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn row_mut(&mut self, row: usize) -> &mut [Polynomial] {
        &mut self.entries[row]
    }
}

/// `L(U)`: the Laplacian restricted to `X \ U`, rows ordered by component
/// then index. A vertex `u` of `X_i` has diagonal entry `e_1(X_{i+1})` and
/// entry `-x_v` in the column of each `v` in `X_{i+1} \ U_{i+1}`. For `k = 1`
/// the self-loop is not a forest edge, so the diagonal drops to
/// `e_1(X_1) - x_u`.
pub fn laplacian_submatrix(shape: &Shape, u: &NChoiceSet) -> SymMatrix {
    let k = shape.k();
    let labels: Vec<VarId> = (0..k)
        .flat_map(|i| {
            u.complement(shape, i)
                .into_iter()
                .map(move |v| VarId::new(i + 1, v + 1))
        })
        .collect();
    let d = labels.len();
    let mut entries = vec![vec![Polynomial::zero(); d]; d];
    for (r, row_label) in labels.iter().enumerate() {
        let i = row_label.component - 1;
        let next = shape.next(i) + 1;
        let mut diagonal = e1(shape, next);
        if k == 1 {
            diagonal -= &Polynomial::var(*row_label);
        }
        entries[r][r] = diagonal;
        for (c, col_label) in labels.iter().enumerate() {
            if col_label.component == next && c != r {
                entries[r][c] = -Polynomial::var(*col_label);
            }
        }
    }
    SymMatrix { labels, entries }
}

/// Exact determinant by row expansion, memoizing the minor on each set of
/// remaining columns. Fails if the dimension exceeds `cap`.
pub fn sym_det(m: &SymMatrix, cap: usize) -> Result<Polynomial> {
    let d = m.dim();
    if d > cap {
        return Err(Error::CapExceeded {
            what: "determinant dimension",
            required: BigUint::from(d),
            cap: BigUint::from(cap),
        });
    }
    if d == 0 {
        return Ok(Polynomial::one());
    }
    // minors[mask] = det of the last popcount(mask) rows on the columns in mask
    let full = (1usize << d) - 1;
    let mut minors: Vec<Option<Polynomial>> = vec![None; full + 1];
    minors[0] = Some(Polynomial::one());
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); d + 1];
    for mask in 1..=full {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for (size, masks) in by_size.iter().enumerate().skip(1) {
        let row = d - size;
        for &mask in masks {
            let mut acc = Polynomial::zero();
            let mut rank = 0;
            for col in 0..d {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let entry = &m.entries[row][col];
                if !entry.is_zero() {
                    let minor = minors[mask & !(1 << col)].as_ref().expect("smaller minors first");
                    if !minor.is_zero() {
                        let term = entry * minor;
                        if rank % 2 == 0 {
                            acc += &term;
                        } else {
                            acc -= &term;
                        }
                    }
                }
                rank += 1;
            }
            minors[mask] = Some(acc);
        }
        if size >= 2 {
            for &mask in &by_size[size - 2] {
                minors[mask] = None;
            }
        }
    }
    Ok(minors[full].take().expect("full minor computed"))
}

/// `w(F_U) = prod_i e_1(X_i)^{n_{i-1}-(N+1)} (prod_j e_1(X_j) - prod_j e_1(X_j \ U_j))`.
///
/// When some `n_{i-1} = N` the exponent would be negative; the weight is
/// then taken from the determinant of `L(U)`, which needs `|X \ U| <= det_cap`.
pub fn forest_weight_closed(shape: &Shape, u: &NChoiceSet, det_cap: usize) -> Result<Polynomial> {
    let k = shape.k();
    let n = u.n();
    if shape.min_size() <= n {
        return sym_det(&laplacian_submatrix(shape, u), det_cap);
    }
    let mut prefactor = Polynomial::one();
    let mut all = Polynomial::one();
    let mut outside = Polynomial::one();
    for i in 0..k {
        let e = e1(shape, i + 1);
        prefactor = &prefactor * &e.pow((shape.size(shape.prev(i)) - n - 1) as u32);
        all = &all * &e;
        let excluded: Vec<usize> = u.part(i).iter().map(|&v| v + 1).collect();
        outside = &outside * &e_sym(shape, i + 1, &excluded, 1)?;
    }
    Ok(&prefactor * &(&all - &outside))
}

/// Unweighted forest count: `forest_weight_closed` at all variables equal to 1.
pub fn forest_count_closed(shape: &Shape, u: &NChoiceSet, det_cap: usize) -> Result<BigUint> {
    let value: BigInt = forest_weight_closed(shape, u, det_cap)?.evaluate_ones();
    value
        .to_biguint()
        .ok_or_else(|| Error::InvariantViolation(alloc::format!("negative forest count {value}")))
}
