//! Abelianization through the Smith normal form of the exponent-sum matrix.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::error::{Error, Result};

/// `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k` with `t₁ | t₂ | … | t_k` and every `tᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.iter().join(" + "))
        }
    }
}

pub fn abelianization(p: &Presentation) -> Result<AbelianInvariants> {
    let cols = p.generators().len();
    let matrix: Vec<Vec<i64>> = p
        .relators()
        .iter()
        .map(|r| {
            let sums = r.exponent_sums();
            p.generators()
                .iter()
                .map(|g| sums.get(g.as_str()).copied().unwrap_or(0))
                .collect()
        })
        .collect();
    let factors = invariant_factors(&matrix, cols)?;
    let rank = factors.len();
    Ok(AbelianInvariants {
        free_rank: cols - rank,
        torsion: factors.into_iter().filter(|&t| t > 1).collect(),
    })
}

/// Nonzero diagonal of the Smith normal form of an integer matrix with
/// `cols` columns, in divisibility order.
pub fn invariant_factors(matrix: &[Vec<i64>], cols: usize) -> Result<Vec<u64>> {
    let mut a: Vec<Vec<i64>> = matrix.to_vec();
    let rows = a.len();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }

        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / a[t][t];
            if q != 0 {
                row_axpy(&mut a, i, t, q)?;
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / a[t][t];
            if q != 0 {
                for row in a.iter_mut() {
                    row[j] = checked_sub_mul(row[j], q, row[t])?;
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            // Remainders left behind are smaller than the pivot; go again.
            continue;
        }
        // Divisibility: fold any offending row into the pivot row.
        let pivot = a[t][t];
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % pivot != 0)) {
            let src = a[i].clone();
            for (dst, v) in a[t][t..cols].iter_mut().zip(&src[t..cols]) {
                *dst = dst.checked_add(*v).ok_or(Error::Overflow)?;
            }
            continue;
        }
        t += 1;
    }
    Ok((0..t).map(|i| a[i][i].unsigned_abs()).collect())
}

fn checked_sub_mul(x: i64, q: i64, y: i64) -> Result<i64> {
    q.checked_mul(y)
        .and_then(|qy| x.checked_sub(qy))
        .ok_or(Error::Overflow)
}

/// `row[i] -= q * row[src]`
fn row_axpy(a: &mut [Vec<i64>], i: usize, src: usize, q: i64) -> Result<()> {
    for j in 0..a[i].len() {
        a[i][j] = checked_sub_mul(a[i][j], q, a[src][j])?;
    }
    Ok(())
}
