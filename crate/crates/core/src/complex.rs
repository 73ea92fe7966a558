//! Abstract simplicial complexes over a totally ordered vertex set.
//!
//! Vertices are stored as dense indices `0..n`; index order is the vertex
//! order, and the label of vertex `v` is `labels()[v]`. Every face is a
//! strictly increasing index vector, so the canonical orientation of a face is
//! simply its stored order.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::label::VertexLabel;

/// A face: a strictly increasing sequence of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Face(Vec<usize>);

impl Face {
    /// Sorts `vertices`; a repeated vertex is a malformed face.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedFace(format!(
                "repeated vertex in {vertices:?}"
            )));
        }
        Ok(Face(vertices))
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|vertices| - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// The face with the vertex at position `j` removed.
    pub fn omit(&self, j: usize) -> Face {
        let mut v = self.0.clone();
        v.remove(j);
        Face(v)
    }

    /// The codimension-one faces `(j, F \ v_j)` in omission order.
    pub fn boundary(&self) -> impl Iterator<Item = (usize, Face)> + '_ {
        (0..self.0.len()).map(move |j| (j, self.omit(j)))
    }

    pub fn with_vertex(&self, v: usize) -> Face {
        let mut out = self.0.clone();
        match out.binary_search(&v) {
            Ok(_) => {}
            Err(pos) => out.insert(pos, v),
        }
        Face(out)
    }

    /// Every subset of this face, the empty face and the face itself included.
    pub fn subfaces(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.0.len();
        assert!(n < 64, "face too large to enumerate");
        (0u64..(1u64 << n)).map(move |mask| {
            Face(
                (0..n)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| self.0[b])
                    .collect(),
            )
        })
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A finite abstract simplicial complex; immutable once built.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<VertexLabel>,
    /// `by_dim[d + 1]` is `S_d(K)` in lexicographic order.
    by_dim: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, usize>>,
    facets: Vec<Face>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.by_dim == other.by_dim
    }
}

impl SimplicialComplex {
    /// Downward closure of `facets`, with integer vertex labels taken from the
    /// given vertex numbers. Vertices are re-indexed densely in numeric order,
    /// so inputs over `0..n` keep their numbering.
    pub fn from_facets<F: AsRef<[usize]>>(facets: &[F]) -> Result<Self> {
        let labelled: Vec<Vec<VertexLabel>> = facets
            .iter()
            .map(|f| f.as_ref().iter().map(|&v| VertexLabel::from(v)).collect())
            .collect();
        Self::from_labeled_facets(&labelled)
    }

    /// Downward closure of `facets`; vertices ordered by label.
    pub fn from_labeled_facets(facets: &[Vec<VertexLabel>]) -> Result<Self> {
        let order: BTreeSet<&VertexLabel> = facets.iter().flatten().collect();
        let order: Vec<VertexLabel> = order.into_iter().cloned().collect();
        Self::with_vertex_order(order, facets)
    }

    /// Downward closure of `facets` with the vertex order given explicitly.
    /// Vertices in `order` that appear in no facet become isolated vertices.
    pub fn with_vertex_order(order: Vec<VertexLabel>, facets: &[Vec<VertexLabel>]) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(order.len());
        for (k, l) in order.iter().enumerate() {
            if lookup.insert(l.clone(), k).is_some() {
                return Err(Error::MalformedFace(format!(
                    "vertex {l} listed twice in the vertex order"
                )));
            }
        }
        let mut indexed = Vec::with_capacity(facets.len() + order.len());
        for facet in facets {
            let vs = facet
                .iter()
                .map(|l| {
                    lookup
                        .get(l)
                        .copied()
                        .ok_or_else(|| Error::UnknownVertex(l.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            let face = Face::new(vs).map_err(|_| {
                Error::MalformedFace(format!(
                    "repeated vertex in facet [{}]",
                    facet.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
                ))
            })?;
            indexed.push(face);
        }
        indexed.extend((0..order.len()).map(|v| Face(vec![v])));
        Ok(Self::from_indexed(order, indexed))
    }

    /// Closure of index faces over an already validated label table.
    pub(crate) fn from_indexed(labels: Vec<VertexLabel>, generators: Vec<Face>) -> Self {
        let mut sets: Vec<BTreeSet<Face>> = vec![BTreeSet::new()];
        sets[0].insert(Face::empty());
        let mut seen: HashSet<Face> = HashSet::new();
        for g in generators {
            if !seen.insert(g.clone()) {
                continue;
            }
            for sub in g.subfaces() {
                let slot = sub.len();
                if sets.len() <= slot {
                    sets.resize_with(slot + 1, BTreeSet::new);
                }
                sets[slot].insert(sub);
            }
        }
        let by_dim: Vec<Vec<Face>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = by_dim
            .iter()
            .map(|fs| fs.iter().cloned().enumerate().map(|(k, f)| (f, k)).collect())
            .collect();
        let mut k = SimplicialComplex {
            labels,
            by_dim,
            index,
            facets: Vec::new(),
        };
        k.facets = k.compute_facets();
        k
    }

    fn compute_facets(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self
            .all_faces()
            .filter(|f| self.cofaces(f).next().is_none())
            .cloned()
            .collect();
        out.sort();
        out
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn vertex_of(&self, label: &VertexLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    /// `dim K`; the complex `{∅}` has dimension -1.
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 2
    }

    /// `S_i(K)` in lexicographic order; empty above the dimension.
    pub fn faces_of_dim(&self, i: isize) -> &[Face] {
        if i < -1 {
            return &[];
        }
        self.by_dim.get((i + 1) as usize).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, i: isize) -> usize {
        self.faces_of_dim(i).len()
    }

    pub fn num_faces(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// All faces, by increasing dimension then lexicographically.
    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.by_dim.iter().flatten()
    }

    /// Inclusion-maximal faces, sorted.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.face_index(f).is_some()
    }

    /// Position of `f` within `S_{dim f}(K)`.
    pub fn face_index(&self, f: &Face) -> Option<usize> {
        self.index.get(f.len())?.get(f).copied()
    }

    /// The faces of one dimension higher that contain `f`, in lexicographic order
    /// of the added vertex.
    pub fn cofaces<'a>(&'a self, f: &'a Face) -> impl Iterator<Item = Face> + 'a {
        (0..self.num_vertices())
            .filter(move |v| !f.contains_vertex(*v))
            .map(move |v| f.with_vertex(v))
            .filter(move |g| self.contains(g))
    }

    pub fn face_labels(&self, f: &Face) -> Vec<VertexLabel> {
        f.vertices().iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// Resolves a face given by labels; it must belong to the complex.
    pub fn face_from_labels(&self, labels: &[VertexLabel]) -> Result<Face> {
        let vs = labels
            .iter()
            .map(|l| self.vertex_of(l).ok_or_else(|| Error::UnknownVertex(l.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let f = Face::new(vs)?;
        if !self.contains(&f) {
            return Err(Error::FaceNotInComplex(self.display_face(&f)));
        }
        Ok(f)
    }

    /// A face rendered with vertex labels, e.g. `{a,b}`.
    pub fn display_face(&self, f: &Face) -> String {
        let parts: Vec<String> = f.vertices().iter().map(|&v| self.labels[v].to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// `K^(p)`: all faces of dimension at most `p`. Vertex labels are kept.
    pub fn skeleton(&self, p: isize) -> SimplicialComplex {
        let keep = (p.max(-1) + 2) as usize;
        let gens: Vec<Face> = self.by_dim.iter().take(keep).flatten().cloned().collect();
        Self::from_indexed(self.labels.clone(), gens)
    }

    fn check_level(&self, i: isize, min: isize, max: isize) -> Result<()> {
        if i < min || i > max {
            return Err(Error::LevelOutOfRange { level: i, min, max });
        }
        Ok(())
    }

    /// Whether `K` is `(i+1)`-path connected: the incidence graph on
    /// `S_i ∪ S_{i+1}` is connected and every `i`-face has a coface.
    pub fn is_path_connected(&self, i: isize) -> Result<bool> {
        self.check_level(i, 0, self.dim().max(0))?;
        let lower = self.faces_of_dim(i);
        let upper = self.faces_of_dim(i + 1);
        if lower.is_empty() || upper.is_empty() {
            return Ok(false);
        }
        // Nodes: lower faces 0..nl, upper faces nl..
        let nl = lower.len();
        let mut adj = vec![Vec::new(); nl + upper.len()];
        for (u, fbar) in upper.iter().enumerate() {
            for (_, f) in fbar.boundary() {
                let l = self.face_index(&f).expect("closure");
                adj[l].push(nl + u);
                adj[nl + u].push(l);
            }
        }
        if adj[..nl].iter().any(Vec::is_empty) {
            return Ok(false);
        }
        let mut seen = vec![false; adj.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        Ok(reached == adj.len())
    }
}

/// A ±1 reorientation per face, relative to the canonical (increasing) order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    flipped: BTreeSet<Face>,
}

impl Orientation {
    pub fn canonical() -> Self {
        Self::default()
    }

    /// An orientation with the given faces reversed. The empty face cannot be
    /// reversed.
    pub fn with_flips<I: IntoIterator<Item = Face>>(faces: I) -> Result<Self> {
        let mut o = Self::default();
        for f in faces {
            o = o.reorient(&f)?;
        }
        Ok(o)
    }

    pub fn flip(&self, f: &Face) -> i8 {
        if self.flipped.contains(f) {
            -1
        } else {
            1
        }
    }

    /// Reverses the orientation of `f`.
    pub fn reorient(&self, f: &Face) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::EmptyFaceOrientation);
        }
        let mut flipped = self.flipped.clone();
        if !flipped.remove(f) {
            flipped.insert(f.clone());
        }
        Ok(Orientation { flipped })
    }

    pub fn flipped_faces(&self) -> impl Iterator<Item = &Face> {
        self.flipped.iter()
    }
}

/// `sgn([F], ∂[F̄])` under orientation `o`: zero unless `F ⊂ F̄`, otherwise
/// `(-1)^j` for the omitted position `j`, times both faces' flips.
pub fn incidence_sign(f: &Face, fbar: &Face, o: &Orientation) -> Result<i8> {
    if fbar.dim() != f.dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: f.dim() + 1,
            actual: fbar.dim(),
        });
    }
    if !f.is_subface_of(fbar) {
        return Ok(0);
    }
    let j = fbar
        .vertices()
        .iter()
        .zip(f.vertices().iter().map(Some).chain(std::iter::once(None)))
        .position(|(a, b)| Some(a) != b)
        .expect("fbar has one more vertex");
    let parity = if j % 2 == 0 { 1 } else { -1 };
    Ok(parity * o.flip(f) * o.flip(fbar))
}
