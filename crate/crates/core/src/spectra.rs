//! Laplacian spectra, largest eigenvalues and the degree-type upper bounds.

use serde::Serialize;

use crate::chain::{degree, laplacian, LaplacianKind, LaplacianMatrix, Weights};
use crate::complex::{Orientation, SimplicialComplex};
use crate::eigen::jacobi_eigen;
use crate::error::{Error, Result};
use crate::signed_graph::{incidence_signed_graph, is_balanced};

/// Two largest eigenvalues closer than this are treated as equal.
pub const EQUALITY_TOL: f64 = 1e-7;
/// Slack allowed on the inequality chain.
pub const INEQUALITY_TOL: f64 = 1e-8;

/// Eigenvalues in ascending order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Accuracy bound for each value.
    pub tol: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> Option<f64> {
        self.values.last().copied()
    }

    pub fn min(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn count_below(&self, threshold: f64) -> usize {
        self.values.iter().filter(|&&x| x < threshold).count()
    }

    /// Values with magnitude below `tol` replaced by exact zero.
    pub fn cleaned(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|&x| if x.abs() <= self.tol { 0.0 } else { x })
            .collect()
    }
}

/// Spectrum of a Laplacian, computed on the symmetric matrix
/// `W^{1/2} M W^{-1/2}` by cyclic Jacobi.
pub fn eigenvalues(m: &LaplacianMatrix) -> Result<Spectrum> {
    for (idx, x) in m.matrix.iter().enumerate() {
        if !x.is_finite() {
            let n = m.matrix.nrows().max(1);
            return Err(Error::NonFiniteEntry {
                row: idx % n,
                col: idx / n,
            });
        }
    }
    let s = m.symmetrized();
    let eig = jacobi_eigen(&s);
    let n = s.nrows().max(1) as f64;
    Ok(Spectrum {
        values: eig.values,
        tol: n * 1e-12 * s.norm().max(1.0),
    })
}

/// Largest eigenvalue of the Laplacian of the given kind.
pub fn lambda_max(
    k: &SimplicialComplex,
    i: isize,
    w: &Weights,
    o: &Orientation,
    kind: LaplacianKind,
) -> Result<f64> {
    if k.count(i) == 0 {
        return Err(Error::NoFaces { level: i });
    }
    let m = laplacian(k, i, w, o, kind)?;
    Ok(eigenvalues(&m)?.max().expect("nonempty"))
}

/// `r_F = Σ_{E ∈ ∂F} deg E / w(E)` for every `(i+1)`-face `F`, in face order.
pub fn degree_sums(k: &SimplicialComplex, i: isize, w: &Weights) -> Result<Vec<f64>> {
    w.check(k)?;
    let upper = k.faces_of_dim(i + 1);
    if i < -1 || upper.is_empty() {
        return Err(Error::NoFaces { level: i + 1 });
    }
    upper
        .iter()
        .map(|f| {
            f.boundary()
                .map(|(_, e)| Ok(degree(k, &e, w)? / w.of(k, &e).unwrap()))
                .sum()
        })
        .collect()
}

/// `max_F Σ_{E ∈ ∂F} deg E / w(E)` over the `(i+1)`-faces.
pub fn degree_sum_bound(k: &SimplicialComplex, i: isize, w: &Weights) -> Result<f64> {
    Ok(degree_sums(k, i, w)?.into_iter().fold(f64::MIN, f64::max))
}

/// `(i + 2) · max deg E / min w(E)` over the `i`-faces.
pub fn hj_bound(k: &SimplicialComplex, i: isize, w: &Weights) -> Result<f64> {
    w.check(k)?;
    let faces = k.faces_of_dim(i);
    if i < 0 || faces.is_empty() {
        return Err(Error::NoFaces { level: i });
    }
    let mut max_deg = 0.0f64;
    for f in faces {
        max_deg = max_deg.max(degree(k, f, w)?);
    }
    let min_w = w.level(i).iter().copied().fold(f64::INFINITY, f64::min);
    Ok((i + 2) as f64 * max_deg / min_w)
}

/// The number of vertices.
pub fn dr_bound(k: &SimplicialComplex) -> Result<f64> {
    if k.num_vertices() == 0 {
        return Err(Error::NoFaces { level: 0 });
    }
    Ok(k.num_vertices() as f64)
}

/// Largest-eigenvalue comparison at one level together with the bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub level: isize,
    pub lambda_max_up: f64,
    pub lambda_max_signless: f64,
    pub degree_sum_bound: f64,
    pub hj_bound: f64,
    pub dr_bound: f64,
    /// Verdict of the balance check on `B_i(K)`.
    pub balanced: bool,
    /// `|λmax(L) - λmax(Q)| < EQUALITY_TOL`.
    pub equality_holds: bool,
    pub path_connected: bool,
    /// All `r_F` equal (relative 1e-9).
    pub constant_degree_sums: bool,
    /// `|λmax(L) - degree_sum_bound| < EQUALITY_TOL`.
    pub degree_bound_attained: bool,
    pub unit_weights: bool,
}

impl BoundReport {
    /// Every violated statement of the largest-eigenvalue theorems, empty when
    /// the report is consistent. The `⇔` statements are only checked on
    /// path-connected instances, the degree-bound equality clause and the
    /// vertex-count bound only for unit weights.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.lambda_max_up > self.lambda_max_signless + INEQUALITY_TOL {
            out.push(format!(
                "λmax(L_up) = {} exceeds λmax(Q_up) = {}",
                self.lambda_max_up, self.lambda_max_signless
            ));
        }
        if self.lambda_max_signless > self.degree_sum_bound + INEQUALITY_TOL {
            out.push(format!(
                "λmax(Q_up) = {} exceeds the degree-sum bound {}",
                self.lambda_max_signless, self.degree_sum_bound
            ));
        }
        if self.degree_sum_bound > self.hj_bound + 1e-12 * self.hj_bound.max(1.0) {
            out.push(format!(
                "degree-sum bound {} exceeds the (i+2)·max-degree bound {}",
                self.degree_sum_bound, self.hj_bound
            ));
        }
        if self.unit_weights && self.lambda_max_up > self.dr_bound + INEQUALITY_TOL {
            out.push(format!(
                "λmax(L_up) = {} exceeds the vertex count {}",
                self.lambda_max_up, self.dr_bound
            ));
        }
        if self.path_connected && self.equality_holds != self.balanced {
            out.push(format!(
                "λmax equality is {} but B_{}(K) balanced is {}",
                self.equality_holds, self.level, self.balanced
            ));
        }
        if self.path_connected
            && self.unit_weights
            && self.degree_bound_attained != (self.balanced && self.constant_degree_sums)
        {
            out.push(format!(
                "degree-sum bound attained is {} but balanced = {} and constant degree sums = {}",
                self.degree_bound_attained, self.balanced, self.constant_degree_sums
            ));
        }
        out
    }
}

/// Computes every field of [`BoundReport`] at level `i` without requiring
/// path connectivity.
pub fn bound_report(k: &SimplicialComplex, i: isize, w: &Weights, o: &Orientation) -> Result<BoundReport> {
    if i < 0 || i > k.dim() - 1 {
        return Err(Error::LevelOutOfRange {
            level: i,
            min: 0,
            max: k.dim() - 1,
        });
    }
    let lambda_max_up = lambda_max(k, i, w, o, LaplacianKind::Up)?;
    let lambda_max_signless = lambda_max(k, i, w, o, LaplacianKind::SignlessUp)?;
    let sums = degree_sums(k, i, w)?;
    let degree_sum_bound = sums.iter().copied().fold(f64::MIN, f64::max);
    let lo = sums.iter().copied().fold(f64::INFINITY, f64::min);
    let balanced = is_balanced(&incidence_signed_graph(k, i, o)?).verdict();
    Ok(BoundReport {
        level: i,
        lambda_max_up,
        lambda_max_signless,
        degree_sum_bound,
        hj_bound: hj_bound(k, i, w)?,
        dr_bound: dr_bound(k)?,
        balanced,
        equality_holds: (lambda_max_up - lambda_max_signless).abs() < EQUALITY_TOL,
        path_connected: k.is_path_connected(i)?,
        constant_degree_sums: degree_sum_bound - lo <= 1e-9 * degree_sum_bound.abs().max(1.0),
        degree_bound_attained: (lambda_max_up - degree_sum_bound).abs() < EQUALITY_TOL,
        unit_weights: w.is_unit(),
    })
}

/// [`bound_report`] restricted to `(i+1)`-path connected complexes, where the
/// equality characterizations apply.
pub fn equality_report(k: &SimplicialComplex, i: isize, w: &Weights, o: &Orientation) -> Result<BoundReport> {
    if i < 0 || i > k.dim() - 1 {
        return Err(Error::LevelOutOfRange {
            level: i,
            min: 0,
            max: k.dim() - 1,
        });
    }
    if !k.is_path_connected(i)? {
        return Err(Error::NotPathConnected { level: i });
    }
    bound_report(k, i, w, o)
}
