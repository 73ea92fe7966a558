//! Coboundary matrices, face weights and weighted Laplacian assembly.
//!
//! Rows and columns are always indexed by the lexicographic face order of the
//! complex, so assembled matrices are reproducible bit for bit.

use std::collections::HashMap;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::complex::{incidence_sign, Face, Orientation, SimplicialComplex};
use crate::error::{Error, Result};

/// Exact matrix of `δ_i`: rows `S_{i+1}(K)`, columns `S_i(K)`, entries
/// `sgn([F], ∂[F̄]) ∈ {-1, 0, 1}`. Stored by rows; each row lists its
/// `i + 2` nonzeros in increasing column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryMatrix {
    level: isize,
    rows: Vec<Vec<(usize, i8)>>,
    ncols: usize,
}

impl CoboundaryMatrix {
    pub fn level(&self) -> isize {
        self.level
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, r: usize) -> &[(usize, i8)] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<(usize, i8)>] {
        &self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> i8 {
        self.rows[r]
            .iter()
            .find(|(col, _)| *col == c)
            .map_or(0, |(_, s)| *s)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.ncols]; self.rows.len()];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, s) in row {
                out[r][c] = s as i64;
            }
        }
        out
    }

    /// Exact integer product `self · rhs` (i.e. `D_i · D_{i-1}`).
    pub fn compose(&self, rhs: &CoboundaryMatrix) -> Result<Vec<Vec<i64>>> {
        if self.ncols != rhs.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols as isize,
                actual: rhs.nrows() as isize,
            });
        }
        let mut out = vec![vec![0i64; rhs.ncols]; self.rows.len()];
        for (r, row) in self.rows.iter().enumerate() {
            for &(k, a) in row {
                for &(c, b) in rhs.row(k) {
                    out[r][c] += a as i64 * b as i64;
                }
            }
        }
        Ok(out)
    }
}

fn check_level(i: isize, min: isize, max: isize) -> Result<()> {
    if i < min || i > max {
        return Err(Error::LevelOutOfRange { level: i, min, max });
    }
    Ok(())
}

/// `D_i` for `-1 <= i <= dim K - 1`. `D_{-1}` has a single column (the empty
/// face) and entry `flip(v)` in the row of each vertex `v`.
pub fn coboundary_matrix(k: &SimplicialComplex, i: isize, o: &Orientation) -> Result<CoboundaryMatrix> {
    check_level(i, -1, k.dim() - 1)?;
    let rows = k
        .faces_of_dim(i + 1)
        .iter()
        .map(|fbar| {
            fbar.boundary()
                .map(|(_, f)| {
                    let c = k.face_index(&f).expect("complex is downward closed");
                    let s = incidence_sign(&f, fbar, o).expect("dimensions match");
                    (c, s)
                })
                .collect::<Vec<_>>()
        })
        .map(|mut row| {
            row.sort_unstable_by_key(|e| e.0);
            row
        })
        .collect();
    Ok(CoboundaryMatrix {
        level: i,
        rows,
        ncols: k.count(i),
    })
}

/// A positive weight on every face of a complex, the empty face included.
#[derive(Clone, Debug, PartialEq)]
pub struct Weights {
    /// `levels[d + 1][j]` is the weight of the `j`-th `d`-face.
    levels: Vec<Vec<f64>>,
}

impl Weights {
    /// `w ≡ 1` (combinatorial Laplacians).
    pub fn unit(k: &SimplicialComplex) -> Self {
        let levels = (-1..=k.dim()).map(|d| vec![1.0; k.count(d)]).collect();
        Weights { levels }
    }

    /// Facets get weight 1; every other face gets the sum of the weights of its
    /// cofaces, filled in by decreasing dimension. The empty face therefore
    /// gets the total vertex weight.
    pub fn normalized(k: &SimplicialComplex) -> Self {
        let mut levels: Vec<Vec<f64>> = (-1..=k.dim()).map(|d| vec![0.0; k.count(d)]).collect();
        for d in (-1..=k.dim()).rev() {
            for (j, f) in k.faces_of_dim(d).iter().enumerate() {
                let mut sum = 0.0;
                let mut any = false;
                for g in k.cofaces(f) {
                    any = true;
                    sum += levels[(d + 2) as usize][k.face_index(&g).unwrap()];
                }
                levels[(d + 1) as usize][j] = if any { sum } else { 1.0 };
            }
        }
        Weights { levels }
    }

    pub fn from_fn<F: FnMut(&Face) -> f64>(k: &SimplicialComplex, mut w: F) -> Result<Self> {
        let levels = (-1..=k.dim())
            .map(|d| k.faces_of_dim(d).iter().map(&mut w).collect())
            .collect();
        let out = Weights { levels };
        out.check(k)?;
        Ok(out)
    }

    /// Weights given per level, `levels[d + 1]` aligned with `S_d(K)`.
    pub fn from_levels(k: &SimplicialComplex, levels: Vec<Vec<f64>>) -> Result<Self> {
        let out = Weights { levels };
        out.check(k)?;
        Ok(out)
    }

    /// Shape matches `k` and every weight is positive and finite.
    pub fn check(&self, k: &SimplicialComplex) -> Result<()> {
        let expected = (k.dim() + 2) as usize;
        if self.levels.len() != expected
            || (-1..=k.dim()).any(|d| self.levels[(d + 1) as usize].len() != k.count(d))
        {
            return Err(Error::InvalidWeight(
                "weight function does not match the complex".into(),
            ));
        }
        for d in -1..=k.dim() {
            for (j, &x) in self.levels[(d + 1) as usize].iter().enumerate() {
                if !(x.is_finite() && x > 0.0) {
                    return Err(Error::InvalidWeight(format!(
                        "weight {x} on face {} is not positive",
                        k.display_face(&k.faces_of_dim(d)[j])
                    )));
                }
            }
        }
        Ok(())
    }

    /// Weights of `S_i(K)`; empty for levels outside the complex.
    pub fn level(&self, i: isize) -> &[f64] {
        if i < -1 {
            return &[];
        }
        self.levels.get((i + 1) as usize).map_or(&[], |v| v.as_slice())
    }

    pub fn of(&self, k: &SimplicialComplex, f: &Face) -> Option<f64> {
        let j = k.face_index(f)?;
        Some(self.level(f.dim())[j])
    }

    /// Whether every weight is exactly 1.
    pub fn is_unit(&self) -> bool {
        self.levels.iter().flatten().all(|&x| x == 1.0)
    }

    /// Whether the normalizing condition holds (facets 1, other faces the
    /// coface sum) to relative tolerance `tol`.
    pub fn is_normalized(&self, k: &SimplicialComplex, tol: f64) -> bool {
        (-1..=k.dim()).all(|d| {
            k.faces_of_dim(d).iter().enumerate().all(|(j, f)| {
                let w = self.level(d)[j];
                let cof: Vec<Face> = k.cofaces(f).collect();
                let target = if cof.is_empty() {
                    1.0
                } else {
                    cof.iter().map(|g| self.of(k, g).unwrap()).sum()
                };
                (w - target).abs() <= tol * target.abs().max(1.0)
            })
        })
    }
}

/// `deg F`: total weight of the faces one dimension up that contain `F`.
pub fn degree(k: &SimplicialComplex, f: &Face, w: &Weights) -> Result<f64> {
    if !k.contains(f) {
        return Err(Error::FaceNotInComplex(f.to_string()));
    }
    Ok(k.cofaces(f).map(|g| w.of(k, &g).unwrap()).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LaplacianKind {
    Up,
    Down,
    Full,
    SignlessUp,
    SignlessDown,
    SignedUp,
    SignedDown,
}

impl fmt::Display for LaplacianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LaplacianKind::Up => "up",
            LaplacianKind::Down => "down",
            LaplacianKind::Full => "full",
            LaplacianKind::SignlessUp => "signless_up",
            LaplacianKind::SignlessDown => "signless_down",
            LaplacianKind::SignedUp => "signed_up",
            LaplacianKind::SignedDown => "signed_down",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for LaplacianKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "up" => LaplacianKind::Up,
            "down" => LaplacianKind::Down,
            "full" => LaplacianKind::Full,
            "signless_up" => LaplacianKind::SignlessUp,
            "signless_down" => LaplacianKind::SignlessDown,
            "signed_up" => LaplacianKind::SignedUp,
            "signed_down" => LaplacianKind::SignedDown,
            other => return Err(Error::InvalidKind(format!("unknown kind {other:?}"))),
        })
    }
}

/// A weighted Laplacian on `C^i(K)`, indexed by `S_i(K)`.
///
/// The matrix is self-adjoint for the weighted inner product, so
/// `W_i^{1/2} M W_i^{-1/2}` is symmetric positive semidefinite.
#[derive(Clone, Debug)]
pub struct LaplacianMatrix {
    pub kind: LaplacianKind,
    pub level: isize,
    pub matrix: DMatrix<f64>,
    /// Diagonal of `W_i`.
    pub level_weights: Vec<f64>,
    /// Diagonal of `W_{i+1}`, for kinds with an up part.
    pub upper_weights: Option<Vec<f64>>,
    /// Diagonal of `W_{i-1}`, for kinds with a down part.
    pub lower_weights: Option<Vec<f64>>,
}

impl LaplacianMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `W_i^{1/2} M W_i^{-1/2}`, with round-off asymmetry averaged out.
    pub fn symmetrized(&self) -> DMatrix<f64> {
        let n = self.dim();
        let root: Vec<f64> = self.level_weights.iter().map(|w| w.sqrt()).collect();
        let s = DMatrix::from_fn(n, n, |a, b| root[a] * self.matrix[(a, b)] / root[b]);
        (&s + s.transpose()) * 0.5
    }
}

/// `W_i^{-1} D^T W_{i+1} D` for a signed coboundary given by rows.
fn assemble_up(rows: &[Vec<(usize, f64)>], n: usize, w_level: &[f64], w_upper: &[f64]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for (r, row) in rows.iter().enumerate() {
        for &(a, sa) in row {
            for &(b, sb) in row {
                m[(a, b)] += w_upper[r] * sa * sb / w_level[a];
            }
        }
    }
    m
}

/// `D W_{i-1}^{-1} D^T W_i` where `D` (rows `S_i`, columns `S_{i-1}`) is given
/// by rows.
fn assemble_down(rows: &[Vec<(usize, f64)>], n_lower: usize, w_level: &[f64], w_lower: &[f64]) -> DMatrix<f64> {
    let n = rows.len();
    let mut by_col: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n_lower];
    for (r, row) in rows.iter().enumerate() {
        for &(c, s) in row {
            by_col[c].push((r, s));
        }
    }
    let mut m = DMatrix::zeros(n, n);
    for (c, col) in by_col.iter().enumerate() {
        for &(a, sa) in col {
            for &(b, sb) in col {
                m[(a, b)] += sa * sb * w_level[b] / w_lower[c];
            }
        }
    }
    m
}

fn signed_rows(d: &CoboundaryMatrix, value: impl Fn(usize, usize, i8) -> f64) -> Vec<Vec<(usize, f64)>> {
    d.rows()
        .iter()
        .enumerate()
        .map(|(r, row)| row.iter().map(|&(c, s)| (c, value(r, c, s))).collect())
        .collect()
}

fn valid_range(k: &SimplicialComplex, kind: LaplacianKind) -> (isize, isize) {
    match kind {
        LaplacianKind::Up | LaplacianKind::SignlessUp | LaplacianKind::SignedUp => (0, k.dim() - 1),
        LaplacianKind::Down | LaplacianKind::SignlessDown | LaplacianKind::SignedDown => (0, k.dim()),
        LaplacianKind::Full => (0, k.dim() - 1),
    }
}

/// Weighted Laplacian of the given kind at level `i`.
///
/// Signed kinds need an incidence sign function; use [`signed_laplacian`].
pub fn laplacian(
    k: &SimplicialComplex,
    i: isize,
    w: &Weights,
    o: &Orientation,
    kind: LaplacianKind,
) -> Result<LaplacianMatrix> {
    if matches!(kind, LaplacianKind::SignedUp | LaplacianKind::SignedDown) {
        return Err(Error::InvalidKind(
            "signed kinds are built by signed_laplacian".into(),
        ));
    }
    let (lo, hi) = valid_range(k, kind);
    check_level(i, lo, hi)?;
    w.check(k)?;
    let n = k.count(i);
    let wl = w.level(i);
    let up_part = |abs: bool| -> Result<DMatrix<f64>> {
        let d = coboundary_matrix(k, i, o)?;
        let rows = signed_rows(&d, |_, _, s| if abs { s.abs() as f64 } else { s as f64 });
        Ok(assemble_up(&rows, n, wl, w.level(i + 1)))
    };
    let down_part = |abs: bool| -> Result<DMatrix<f64>> {
        let d = coboundary_matrix(k, i - 1, o)?;
        let rows = signed_rows(&d, |_, _, s| if abs { s.abs() as f64 } else { s as f64 });
        Ok(assemble_down(&rows, k.count(i - 1), wl, w.level(i - 1)))
    };
    let (matrix, upper, lower) = match kind {
        LaplacianKind::Up => (up_part(false)?, true, false),
        LaplacianKind::SignlessUp => (up_part(true)?, true, false),
        LaplacianKind::Down => (down_part(false)?, false, true),
        LaplacianKind::SignlessDown => (down_part(true)?, false, true),
        LaplacianKind::Full => (up_part(false)? + down_part(false)?, true, true),
        LaplacianKind::SignedUp | LaplacianKind::SignedDown => unreachable!(),
    };
    Ok(LaplacianMatrix {
        kind,
        level: i,
        matrix,
        level_weights: wl.to_vec(),
        upper_weights: upper.then(|| w.level(i + 1).to_vec()),
        lower_weights: lower.then(|| w.level(i - 1).to_vec()),
    })
}

/// An incidence sign function `ς`: `±1` on every incidence `F ∈ ∂F̄`, zero
/// elsewhere. Incidences without an explicit value take `default`.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceSigns {
    default: i8,
    values: HashMap<(Face, Face), i8>,
}

impl IncidenceSigns {
    /// `ς ≡ 1`.
    pub fn positive() -> Self {
        IncidenceSigns {
            default: 1,
            values: HashMap::new(),
        }
    }

    pub fn with_default(default: i8) -> Self {
        IncidenceSigns {
            default,
            values: HashMap::new(),
        }
    }

    /// `ς(F, F̄) = sgn([F], ∂[F̄])` at levels `i` and `i + 1`, which turns the
    /// signed up Laplacian at level `i` into the signless one.
    pub fn from_orientation(k: &SimplicialComplex, i: isize, o: &Orientation) -> Self {
        let mut s = Self::positive();
        for fbar in k.faces_of_dim(i + 1) {
            for (_, f) in fbar.boundary() {
                let v = incidence_sign(&f, fbar, o).unwrap();
                s.values.insert((f, fbar.clone()), v);
            }
        }
        s
    }

    pub fn set(&mut self, f: Face, fbar: Face, sign: i8) {
        self.values.insert((f, fbar), sign);
    }

    pub fn get(&self, f: &Face, fbar: &Face) -> i8 {
        if let Some(v) = self.values.get(&(f.clone(), fbar.clone())) {
            return *v;
        }
        if fbar.dim() == f.dim() + 1 && f.is_subface_of(fbar) {
            self.default
        } else {
            0
        }
    }

    /// Checks the defining property against the incidences of `k`.
    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        if self.default.abs() != 1 {
            return Err(Error::InvalidIncidenceSign(format!(
                "default sign {} is not ±1",
                self.default
            )));
        }
        for ((f, fbar), &v) in &self.values {
            let incidence = fbar.dim() == f.dim() + 1 && f.is_subface_of(fbar) && k.contains(fbar);
            if incidence && v.abs() != 1 {
                return Err(Error::InvalidIncidenceSign(format!(
                    "ς({}, {}) = {v} on an incidence",
                    k.display_face(f),
                    k.display_face(fbar)
                )));
            }
            if !incidence && v != 0 {
                return Err(Error::InvalidIncidenceSign(format!(
                    "ς({f}, {fbar}) = {v} on a non-incidence"
                )));
            }
        }
        Ok(())
    }
}

/// Signed up or down Laplacian at level `i`, built from `D^ς` with entries
/// `sgn([F], ∂[F̄]) · ς(F, F̄)`.
pub fn signed_laplacian(
    k: &SimplicialComplex,
    i: isize,
    w: &Weights,
    o: &Orientation,
    signs: &IncidenceSigns,
    kind: LaplacianKind,
) -> Result<LaplacianMatrix> {
    let kind = match kind {
        LaplacianKind::Up | LaplacianKind::SignedUp => LaplacianKind::SignedUp,
        LaplacianKind::Down | LaplacianKind::SignedDown => LaplacianKind::SignedDown,
        other => {
            return Err(Error::InvalidKind(format!(
                "signed Laplacian must be up or down, got {other}"
            )))
        }
    };
    let (lo, hi) = valid_range(k, kind);
    check_level(i, lo, hi)?;
    w.check(k)?;
    signs.validate(k)?;
    let n = k.count(i);
    let wl = w.level(i);
    // d: coboundary at `level`, whose rows are (level+1)-faces
    let signed = |level: isize| -> Result<Vec<Vec<(usize, f64)>>> {
        let d = coboundary_matrix(k, level, o)?;
        let rows_faces = k.faces_of_dim(level + 1);
        let cols_faces = k.faces_of_dim(level);
        Ok(signed_rows(&d, |r, c, s| {
            (s * signs.get(&cols_faces[c], &rows_faces[r])) as f64
        }))
    };
    let (matrix, upper, lower) = if kind == LaplacianKind::SignedUp {
        (assemble_up(&signed(i)?, n, wl, w.level(i + 1)), true, false)
    } else {
        (
            assemble_down(&signed(i - 1)?, k.count(i - 1), wl, w.level(i - 1)),
            false,
            true,
        )
    };
    Ok(LaplacianMatrix {
        kind,
        level: i,
        matrix,
        level_weights: wl.to_vec(),
        upper_weights: upper.then(|| w.level(i + 1).to_vec()),
        lower_weights: lower.then(|| w.level(i - 1).to_vec()),
    })
}
