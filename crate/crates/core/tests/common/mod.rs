//! Seeded generators and independent reference computations shared by the
//! integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simplicial::{
    incidence_signed_graph, is_balanced, Face, Orientation, SimplicialComplex, VertexLabel, Weights,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random facets on at most `max_vertices` vertices, each of dimension at most
/// `max_dim`; the vertex set is `0..n` with every vertex used.
pub fn random_complex(r: &mut impl Rng, max_vertices: usize, max_dim: usize) -> SimplicialComplex {
    let n = r.gen_range(2..=max_vertices);
    let m = r.gen_range(1..=6);
    let all: Vec<usize> = (0..n).collect();
    let mut facets: Vec<Vec<usize>> = (0..m)
        .map(|_| {
            let size = r.gen_range(1..=(max_dim + 1).min(n));
            all.choose_multiple(r, size).copied().collect()
        })
        .collect();
    facets.extend(all.iter().map(|&v| vec![v]));
    SimplicialComplex::from_facets(&facets).unwrap()
}

/// Independent positive weights in `[0.5, 3)`.
pub fn random_weights(r: &mut impl Rng, k: &SimplicialComplex) -> Weights {
    Weights::from_fn(k, |_| r.gen_range(0.5..3.0)).unwrap()
}

/// Each nonempty face reversed with probability one half.
pub fn random_orientation(r: &mut impl Rng, k: &SimplicialComplex) -> Orientation {
    let flips: Vec<Face> = k
        .all_faces()
        .filter(|f| !f.is_empty() && r.gen_bool(0.5))
        .cloned()
        .collect();
    Orientation::with_flips(flips).unwrap()
}

/// A random graph complex on `n` vertices; with `connected`, a random
/// spanning tree is included first.
pub fn random_graph(r: &mut impl Rng, n: usize, p: f64, connected: bool) -> SimplicialComplex {
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    if connected {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(r);
        for j in 1..n {
            let a = order[j];
            let b = order[r.gen_range(0..j)];
            edges.insert((a.min(b), a.max(b)));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if r.gen_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    let mut facets: Vec<Vec<usize>> = edges.into_iter().map(|(a, b)| vec![a, b]).collect();
    facets.extend((0..n).map(|v| vec![v]));
    SimplicialComplex::from_facets(&facets).unwrap()
}

/// A random complex whose vertices carry string labels with `prefix`.
pub fn relabel(k: &SimplicialComplex, prefix: &str) -> SimplicialComplex {
    let order: Vec<VertexLabel> = (0..k.num_vertices())
        .map(|v| VertexLabel::Name(format!("{prefix}{v}")))
        .collect();
    let facets: Vec<Vec<VertexLabel>> = k
        .facets()
        .iter()
        .map(|f| f.vertices().iter().map(|&v| order[v].clone()).collect())
        .collect();
    SimplicialComplex::with_vertex_order(order, &facets).unwrap()
}

/// Balance of `B_i(K)`, where a level without `(i+1)`-faces gives an edgeless
/// and hence balanced graph.
pub fn balanced_at(k: &SimplicialComplex, i: isize) -> bool {
    if i > k.dim() - 1 {
        return true;
    }
    is_balanced(&incidence_signed_graph(k, i, &Orientation::canonical()).unwrap()).verdict()
}

/// `(i+1)`-path connectivity straight from the definition: some `(i+1)`-face
/// exists, every `i`-face lies in one, and any two `(i+1)`-faces are joined
/// by a chain of `(i+1)`-faces with consecutive members sharing an `i`-face.
pub fn path_connected_oracle(k: &SimplicialComplex, i: isize) -> bool {
    let upper = k.faces_of_dim(i + 1);
    if upper.is_empty() || k.faces_of_dim(i).is_empty() {
        return false;
    }
    if k.faces_of_dim(i).iter().any(|f| !upper.iter().any(|g| f.is_subface_of(g))) {
        return false;
    }
    let shared = |a: &Face, b: &Face| {
        a.vertices().iter().filter(|v| b.contains_vertex(**v)).count() as isize == i + 1
    };
    let mut seen = vec![false; upper.len()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for y in 0..upper.len() {
            if !seen[y] && shared(&upper[x], &upper[y]) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Bipartiteness of the 1-skeleton by greedy two-colouring.
pub fn is_bipartite(k: &SimplicialComplex) -> bool {
    let n = k.num_vertices();
    let mut adj = vec![Vec::new(); n];
    for e in k.faces_of_dim(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut colour = vec![None; n];
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let c = colour[x].unwrap();
            for &y in &adj[x] {
                match colour[y] {
                    None => {
                        colour[y] = Some(!c);
                        queue.push_back(y);
                    }
                    Some(cy) if cy == c => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// `sgn([F], ∂[F̄])` from the position of the omitted vertex.
fn sign_by_position(f: &Face, fbar: &Face, o: &Orientation) -> f64 {
    let j = fbar
        .vertices()
        .iter()
        .position(|v| !f.contains_vertex(*v))
        .expect("codimension one");
    let base = if j % 2 == 0 { 1.0 } else { -1.0 };
    base * f64::from(o.flip(f)) * f64::from(o.flip(fbar))
}

/// `L_i^up` entry by entry:
/// `(F, F) = Σ_{F̄ ⊃ F} w(F̄)/w(F)` and, for `F ≠ G` spanning `F̄ = F ∪ G ∈ K`,
/// `(F, G) = w(F̄)/w(F) · sgn(F, ∂F̄) sgn(G, ∂F̄)`.
pub fn up_laplacian_oracle(
    k: &SimplicialComplex,
    i: isize,
    w: &Weights,
    o: &Orientation,
    signless: bool,
) -> DMatrix<f64> {
    let faces = k.faces_of_dim(i);
    let n = faces.len();
    DMatrix::from_fn(n, n, |r, c| {
        let (f, g) = (&faces[r], &faces[c]);
        let wf = w.of(k, f).unwrap();
        if r == c {
            return k.cofaces(f).map(|h| w.of(k, &h).unwrap()).sum::<f64>() / wf;
        }
        let union: BTreeSet<usize> = f.vertices().iter().chain(g.vertices()).copied().collect();
        let fbar = Face::new(union.into_iter().collect()).unwrap();
        if fbar.dim() != i + 1 || !k.contains(&fbar) {
            return 0.0;
        }
        let s = sign_by_position(f, &fbar, o) * sign_by_position(g, &fbar, o);
        let v = w.of(k, &fbar).unwrap() / wf * s;
        if signless {
            v.abs()
        } else {
            v
        }
    })
}

/// Rank of a small integer matrix through the singular values.
pub fn float_rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |r, c| rows[r][c] as f64);
    m.rank(1e-9)
}

/// Eigenvalues of a symmetric matrix from nalgebra, ascending.
pub fn reference_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
