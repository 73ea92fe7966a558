//! Wedge sums, joins, Cartesian products, closure/star/link and motif
//! duplication.
//!
//! Every constructor returns a fresh complex whose vertex order is stated
//! explicitly, so orientations of the inputs carry over to the output by
//! renumbering alone.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::chain::Weights;
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::label::VertexLabel;

fn disjoint_labels(k1: &SimplicialComplex, k2: &SimplicialComplex) -> Result<()> {
    let seen: HashSet<&VertexLabel> = k1.labels().iter().collect();
    match k2.labels().iter().find(|l| seen.contains(l)) {
        Some(l) => Err(Error::LabelOverlap(l.clone())),
        None => Ok(()),
    }
}

/// Input of a `k`-wedge sum: `face1[j]` is identified with `phi[j]`.
#[derive(Clone, Debug)]
pub struct WedgeSpec<'a> {
    pub k1: &'a SimplicialComplex,
    pub k2: &'a SimplicialComplex,
    pub face1: Face,
    pub face2: Face,
    /// Vertices of `k2`; `phi[j]` is the image of `face1.vertices()[j]`.
    pub phi: Vec<usize>,
}

impl<'a> WedgeSpec<'a> {
    /// Identifies the `j`-th smallest vertex of `face1` with the `j`-th
    /// smallest vertex of `face2`.
    pub fn aligned(
        k1: &'a SimplicialComplex,
        k2: &'a SimplicialComplex,
        face1: Face,
        face2: Face,
    ) -> Self {
        let phi = face2.vertices().to_vec();
        WedgeSpec {
            k1,
            k2,
            face1,
            face2,
            phi,
        }
    }

    /// The identification given as `(label in k1, label in k2)` pairs.
    pub fn by_labels(
        k1: &'a SimplicialComplex,
        k2: &'a SimplicialComplex,
        pairs: &[(VertexLabel, VertexLabel)],
    ) -> Result<Self> {
        let resolve = |k: &SimplicialComplex, l: &VertexLabel| {
            k.vertex_of(l).ok_or_else(|| Error::UnknownVertex(l.to_string()))
        };
        let mut map = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            map.push((resolve(k1, a)?, resolve(k2, b)?));
        }
        map.sort_unstable();
        let face1 = Face::new(map.iter().map(|p| p.0).collect())
            .map_err(|_| Error::InvalidWedge("a vertex of the first face is mapped twice".into()))?;
        let face2 = Face::new(map.iter().map(|p| p.1).collect())
            .map_err(|_| Error::InvalidWedge("the identification is not injective".into()))?;
        Ok(WedgeSpec {
            k1,
            k2,
            face1,
            face2,
            phi: map.into_iter().map(|p| p.1).collect(),
        })
    }

    fn check(&self) -> Result<()> {
        disjoint_labels(self.k1, self.k2)?;
        if self.face1.dim() != self.face2.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.face1.dim(),
                actual: self.face2.dim(),
            });
        }
        if self.face1.is_empty() {
            return Err(Error::InvalidWedge("cannot glue along the empty face".into()));
        }
        if !self.k1.contains(&self.face1) {
            return Err(Error::FaceNotInComplex(self.k1.display_face(&self.face1)));
        }
        if !self.k2.contains(&self.face2) {
            return Err(Error::FaceNotInComplex(self.k2.display_face(&self.face2)));
        }
        let image: BTreeSet<usize> = self.phi.iter().copied().collect();
        if self.phi.len() != self.face1.len()
            || image.len() != self.phi.len()
            || !image.iter().eq(self.face2.vertices().iter())
        {
            return Err(Error::InvalidWedge(format!(
                "identification is not a bijection from {} onto {}",
                self.k1.display_face(&self.face1),
                self.k2.display_face(&self.face2)
            )));
        }
        Ok(())
    }
}

/// `K1 ∨_k K2`: the union of `K1` and `K2` with each vertex of `face2`
/// replaced by its preimage under `phi`.
///
/// The vertices of `K1` come first in their order, followed by the remaining
/// vertices of `K2` in theirs.
pub fn wedge_sum(spec: &WedgeSpec<'_>) -> Result<SimplicialComplex> {
    spec.check()?;
    let (k1, k2) = (spec.k1, spec.k2);
    let n1 = k1.num_vertices();
    let preimage: HashMap<usize, usize> = spec
        .phi
        .iter()
        .zip(spec.face1.vertices())
        .map(|(&u, &v)| (u, v))
        .collect();
    let mut labels = k1.labels().to_vec();
    let mut renumber = vec![0usize; k2.num_vertices()];
    for (u, slot) in renumber.iter_mut().enumerate() {
        *slot = match preimage.get(&u) {
            Some(&v) => v,
            None => {
                labels.push(k2.label(u).clone());
                labels.len() - 1
            }
        };
    }
    debug_assert!(labels.len() == n1 + k2.num_vertices() - spec.face2.len());
    let mut gens: Vec<Face> = k1.facets().to_vec();
    for f in k2.facets() {
        gens.push(Face::new(f.vertices().iter().map(|&u| renumber[u]).collect())?);
    }
    gens.extend((0..labels.len()).map(|v| Face::new(vec![v]).unwrap()));
    Ok(SimplicialComplex::from_indexed(labels, gens))
}

/// `K1 ∗ K2`: every union `F1 ∪ F2`, the empty face allowed on either side.
/// Vertices of `K1` come first.
pub fn join(k1: &SimplicialComplex, k2: &SimplicialComplex) -> Result<SimplicialComplex> {
    disjoint_labels(k1, k2)?;
    let n1 = k1.num_vertices();
    let mut labels = k1.labels().to_vec();
    labels.extend(k2.labels().iter().cloned());
    let mut gens = Vec::with_capacity(k1.facets().len() * k2.facets().len());
    for f1 in k1.facets() {
        for f2 in k2.facets() {
            let mut vs = f1.vertices().to_vec();
            vs.extend(f2.vertices().iter().map(|&u| u + n1));
            gens.push(Face::new(vs)?);
        }
    }
    Ok(SimplicialComplex::from_indexed(labels, gens))
}

/// `K1 □ K2` with the product weight `w(F × v) = w1(F)`, `w(u × F') = w2(F')`.
///
/// Vertex `(u, v)` has index `u * |V(K2)| + v` and label `(label u, label v)`,
/// so the orientation induced on `F × v` and `u × F'` is the canonical one.
/// All vertex weights of both factors must agree exactly. The empty face gets
/// `w1(∅)`.
pub fn cartesian_product(
    k1: &SimplicialComplex,
    w1: &Weights,
    k2: &SimplicialComplex,
    w2: &Weights,
) -> Result<(SimplicialComplex, Weights)> {
    w1.check(k1)?;
    w2.check(k2)?;
    let (n1, n2) = (k1.num_vertices(), k2.num_vertices());
    for u in 0..n1 {
        for v in 0..n2 {
            let (a, b) = (w1.level(0)[u], w2.level(0)[v]);
            if a != b {
                return Err(Error::WeightIncompatible {
                    u: k1.label(u).clone(),
                    v: k2.label(v).clone(),
                    w1: a,
                    w2: b,
                });
            }
        }
    }
    let mut labels = Vec::with_capacity(n1 * n2);
    for u in 0..n1 {
        for v in 0..n2 {
            labels.push(VertexLabel::pair(k1.label(u).clone(), k2.label(v).clone()));
        }
    }
    let mut gens = Vec::new();
    for f in k1.facets().iter().filter(|f| !f.is_empty()) {
        for v in 0..n2 {
            gens.push(Face::new(f.vertices().iter().map(|&u| u * n2 + v).collect())?);
        }
    }
    for u in 0..n1 {
        for f in k2.facets().iter().filter(|f| !f.is_empty()) {
            gens.push(Face::new(f.vertices().iter().map(|&v| u * n2 + v).collect())?);
        }
    }
    let k = SimplicialComplex::from_indexed(labels, gens);
    let w = Weights::from_fn(&k, |face| {
        let vs = face.vertices();
        if vs.is_empty() {
            return w1.level(-1)[0];
        }
        let (u0, v0) = (vs[0] / n2, vs[0] % n2);
        if vs.iter().all(|&x| x % n2 == v0) {
            let f = Face::new(vs.iter().map(|&x| x / n2).collect()).unwrap();
            w1.of(k1, &f).expect("factor face")
        } else {
            let f = Face::new(vs.iter().map(|&x| x % n2).collect()).unwrap();
            debug_assert!(vs.iter().all(|&x| x / n2 == u0));
            w2.of(k2, &f).expect("factor face")
        }
    })?;
    Ok((k, w))
}

fn check_subset(k: &SimplicialComplex, s: &[Face]) -> Result<()> {
    match s.iter().find(|f| !k.contains(f)) {
        Some(f) => Err(Error::FaceNotInComplex(k.display_face(f))),
        None => Ok(()),
    }
}

/// `cl S`: every subface of a member of `S`.
pub fn closure(k: &SimplicialComplex, s: &[Face]) -> Result<BTreeSet<Face>> {
    check_subset(k, s)?;
    Ok(s.iter().flat_map(|f| f.subfaces().collect::<Vec<_>>()).collect())
}

/// `st S`: every face of `K` containing a nonempty member of `S`. The empty
/// face is skipped, since every face would otherwise qualify.
pub fn star(k: &SimplicialComplex, s: &[Face]) -> Result<BTreeSet<Face>> {
    check_subset(k, s)?;
    let seeds: Vec<&Face> = s.iter().filter(|f| !f.is_empty()).collect();
    Ok(k
        .all_faces()
        .filter(|g| seeds.iter().any(|f| f.is_subface_of(g)))
        .cloned()
        .collect())
}

/// `lk S = cl st S − st cl S`, as a set of faces.
pub fn link(k: &SimplicialComplex, s: &[Face]) -> Result<BTreeSet<Face>> {
    let st: Vec<Face> = star(k, s)?.into_iter().collect();
    let cl_st = closure(k, &st)?;
    let cl: Vec<Face> = closure(k, s)?.into_iter().collect();
    let st_cl = star(k, &cl)?;
    Ok(cl_st.difference(&st_cl).cloned().collect())
}

/// Largest dimension among `faces`; -1 for `{∅}`, -2 for no faces at all.
fn set_dim(faces: &BTreeSet<Face>) -> isize {
    faces.iter().map(Face::dim).max().unwrap_or(-2)
}

/// A vertex-induced subcomplex `Σ` of `K`.
#[derive(Clone, Debug)]
pub struct MotifSpec<'a> {
    k: &'a SimplicialComplex,
    vertices: Vec<usize>,
}

impl<'a> MotifSpec<'a> {
    /// The subcomplex of `K` induced on the given vertices.
    pub fn from_vertices(k: &'a SimplicialComplex, labels: &[VertexLabel]) -> Result<Self> {
        let mut vertices = labels
            .iter()
            .map(|l| k.vertex_of(l).ok_or_else(|| Error::UnknownVertex(l.to_string())))
            .collect::<Result<Vec<_>>>()?;
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::InvalidMotif("a motif needs at least one vertex".into()));
        }
        Ok(MotifSpec { k, vertices })
    }

    /// The subcomplex generated by `faces`, which must contain every face of
    /// `K` spanned by its vertices.
    pub fn from_faces(k: &'a SimplicialComplex, faces: &[Face]) -> Result<Self> {
        let cl = closure(k, faces)?;
        let vertices: BTreeSet<usize> = faces.iter().flat_map(|f| f.vertices().to_vec()).collect();
        if vertices.is_empty() {
            return Err(Error::InvalidMotif("a motif needs at least one vertex".into()));
        }
        let spec = MotifSpec {
            k,
            vertices: vertices.into_iter().collect(),
        };
        if let Some(f) = spec.faces().into_iter().find(|f| !cl.contains(f)) {
            return Err(Error::InvalidMotif(format!(
                "not vertex-induced: {} is spanned by its vertices but missing",
                k.display_face(&f)
            )));
        }
        Ok(spec)
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.k
    }

    /// `V(Σ)` as vertex indices of `K`.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// All faces of `Σ`, the empty face included.
    pub fn faces(&self) -> Vec<Face> {
        self.k
            .all_faces()
            .filter(|f| f.vertices().iter().all(|v| self.vertices.binary_search(v).is_ok()))
            .cloned()
            .collect()
    }

    pub fn link(&self) -> BTreeSet<Face> {
        link(self.k, &self.faces()).expect("faces of K")
    }

    /// Whether any face of `K` containing two distinct nonempty faces of `Σ`
    /// lies in `Σ`. Two distinct nonempty faces always jointly span at least
    /// two vertices, so it suffices that no face outside `Σ` contains two
    /// vertices of `Σ`.
    pub fn absorbs_cofaces(&self) -> bool {
        let inside = |v: &usize| self.vertices.binary_search(v).is_ok();
        self.k.all_faces().all(|f| {
            let hits = f.vertices().iter().filter(|v| inside(v)).count();
            hits < 2 || f.vertices().iter().all(inside)
        })
    }
}

/// Whether `Σ` is an `i`-motif: it absorbs cofaces and `dim lk Σ = i`.
pub fn validate_i_motif(spec: &MotifSpec<'_>, i: isize) -> bool {
    spec.absorbs_cofaces() && set_dim(&spec.link()) == i
}

/// `K^Σ`: `K` together with a copy `Σ'` of `Σ` attached to `lk Σ` exactly as
/// `Σ` is.
///
/// Vertices of `K` keep their indices; the copy `v'` of the `j`-th vertex of
/// `Σ` gets index `|V(K)| + j` and the label of `v` with a prime appended
/// (more primes if that label is taken). The copy of `K` obtained by replacing
/// `Σ` with `Σ'` is checked to be isomorphic to `K` before returning.
pub fn duplicate_motif(spec: &MotifSpec<'_>) -> Result<SimplicialComplex> {
    let k = spec.k;
    if !spec.absorbs_cofaces() {
        return Err(Error::InvalidMotif(
            "some face outside the motif contains two of its faces".into(),
        ));
    }
    let lk = spec.link();
    if set_dim(&lk) < 0 {
        return Err(Error::InvalidMotif("the link of the motif has no vertices".into()));
    }
    let n = k.num_vertices();
    let sigma = spec.vertices();
    let in_sigma = |v: usize| sigma.binary_search(&v).is_ok();
    let lk_vertices: BTreeSet<usize> = lk.iter().flat_map(|f| f.vertices().to_vec()).collect();

    let taken: HashSet<&VertexLabel> = k.labels().iter().collect();
    let mut labels = k.labels().to_vec();
    for &v in sigma {
        let mut suffix = String::from("'");
        while taken.contains(&k.label(v).suffixed(&suffix)) {
            suffix.push('\'');
        }
        labels.push(k.label(v).suffixed(&suffix));
    }
    let prime = |v: usize| n + sigma.binary_search(&v).expect("motif vertex");

    let mut gens: Vec<Face> = k.facets().to_vec();
    for f in k.all_faces() {
        let vs = f.vertices();
        if vs.iter().any(|&v| in_sigma(v))
            && vs.iter().all(|&v| in_sigma(v) || lk_vertices.contains(&v))
        {
            gens.push(Face::new(
                vs.iter()
                    .map(|&v| if in_sigma(v) { prime(v) } else { v })
                    .collect(),
            )?);
        }
    }
    let dup = SimplicialComplex::from_indexed(labels, gens);

    // K_{Σ'} = (K \ st Σ) ∪ st Σ' must be the image of K under v ↦ v'.
    let image: BTreeSet<Face> = k
        .all_faces()
        .map(|f| {
            Face::new(
                f.vertices()
                    .iter()
                    .map(|&v| if in_sigma(v) { prime(v) } else { v })
                    .collect(),
            )
            .unwrap()
        })
        .collect();
    let restricted: BTreeSet<Face> = dup
        .all_faces()
        .filter(|f| !f.vertices().iter().any(|&v| in_sigma(v)))
        .cloned()
        .collect();
    if image != restricted {
        return Err(Error::InvalidMotif(
            "the duplicated complex does not restrict to a copy of K".into(),
        ));
    }
    Ok(dup)
}

/// `K_0 = Δ^{i+1}`, `K_p = K_{p-1} ∨_i Δ^{i+1}`, each new simplex glued along
/// the last `i`-face of the previous one. Copy `j` spans vertices
/// `j..=j + i + 1`.
pub fn wedge_chain(i: usize, p: usize) -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = (0..=p).map(|j| (j..=j + i + 1).collect()).collect();
    SimplicialComplex::from_facets(&facets).expect("distinct vertices")
}
