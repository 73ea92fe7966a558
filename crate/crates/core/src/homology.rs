//! Reduced Betti numbers over the rationals and the Hodge cross-check.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::chain::{coboundary_matrix, laplacian, LaplacianKind, Weights};
use crate::complex::{Orientation, SimplicialComplex};
use crate::error::{Error, Result};
use crate::spectra::eigenvalues;

/// Eigenvalues below this count as harmonic.
pub const KERNEL_TOL: f64 = 1e-7;

/// `betti[i]` is the reduced Betti number in dimension `i`, `0 <= i <= dim K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub betti: Vec<usize>,
}

/// Exact rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                // exact: Sylvester's identity
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers from exact ranks of the boundary maps, the
/// augmentation `∂_0 : C_0 → C_{-1}` included.
pub fn betti_numbers(k: &SimplicialComplex) -> BettiVector {
    let o = Orientation::canonical();
    let top = k.dim();
    // rank ∂_j = rank D_{j-1}, for j = 0..=top; ∂_{top+1} = 0
    let mut ranks: Vec<usize> = (0..=top)
        .map(|j| bareiss_rank(&coboundary_matrix(k, j - 1, &o).unwrap().to_dense()))
        .collect();
    ranks.push(0);
    let betti = (0..=top)
        .map(|i| {
            let u = i as usize;
            k.count(i) - ranks[u] - ranks[u + 1]
        })
        .collect();
    BettiVector { betti }
}

/// Whether every reduced Betti number vanishes. The complex `{∅}` is not
/// acyclic: its reduced homology lives in dimension -1.
pub fn is_acyclic(k: &SimplicialComplex) -> bool {
    k.num_vertices() > 0 && betti_numbers(k).betti.iter().all(|&b| b == 0)
}

/// Number of eigenvalues of `L_i = L_i^up + L_i^down` below [`KERNEL_TOL`].
/// At the top level `L_i^up` vanishes and only the down part is used.
pub fn harmonic_dimension(k: &SimplicialComplex, i: isize, w: &Weights) -> Result<usize> {
    if i < 0 || i > k.dim() {
        return Err(Error::LevelOutOfRange {
            level: i,
            min: 0,
            max: k.dim(),
        });
    }
    let o = Orientation::canonical();
    let kind = if i < k.dim() {
        LaplacianKind::Full
    } else {
        LaplacianKind::Down
    };
    let m = laplacian(k, i, w, &o, kind)?;
    Ok(eigenvalues(&m)?.count_below(KERNEL_TOL))
}
