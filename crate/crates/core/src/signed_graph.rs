//! Incidence signed graphs and balance.
//!
//! `B_i(K)` is the bipartite graph on `S_i(K) ∪ S_{i+1}(K)` with an edge
//! `{F, F̄}` for every `F ∈ ∂F̄`, signed by `sgn([F], ∂[F̄])`. A signed graph is
//! balanced when every cycle has positive sign product, equivalently when some
//! switching makes every edge positive.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::chain::coboundary_matrix;
use crate::complex::{Face, Orientation, SimplicialComplex};
use crate::error::{Error, Result};

/// Edge cap for [`brute_force_balance`].
pub const BRUTE_FORCE_EDGE_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    /// An `i`-face, by its index in `S_i(K)`.
    Lower(usize),
    /// An `(i+1)`-face, by its index in `S_{i+1}(K)`.
    Upper(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Lower(j) => write!(f, "L{j}"),
            Node::Upper(j) => write!(f, "U{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedEdge {
    pub lower: usize,
    pub upper: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    level: isize,
    lower: Vec<Face>,
    upper: Vec<Face>,
    edges: Vec<SignedEdge>,
    lookup: HashMap<(usize, usize), usize>,
}

impl SignedGraph {
    /// A bipartite signed graph. Edges must be simple and signed `±1`.
    pub fn new(level: isize, lower: Vec<Face>, upper: Vec<Face>, edges: Vec<SignedEdge>) -> Result<Self> {
        let mut lookup = HashMap::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            if e.lower >= lower.len() {
                return Err(Error::UnknownVertex(Node::Lower(e.lower).to_string()));
            }
            if e.upper >= upper.len() {
                return Err(Error::UnknownVertex(Node::Upper(e.upper).to_string()));
            }
            if e.sign.abs() != 1 {
                return Err(Error::InvalidIncidenceSign(format!("edge sign {}", e.sign)));
            }
            if lookup.insert((e.lower, e.upper), k).is_some() {
                return Err(Error::MalformedFace(format!(
                    "repeated edge {{{}, {}}}",
                    Node::Lower(e.lower),
                    Node::Upper(e.upper)
                )));
            }
        }
        Ok(SignedGraph {
            level,
            lower,
            upper,
            edges,
            lookup,
        })
    }

    pub fn level(&self) -> isize {
        self.level
    }

    pub fn lower_faces(&self) -> &[Face] {
        &self.lower
    }

    pub fn upper_faces(&self) -> &[Face] {
        &self.upper
    }

    pub fn edges(&self) -> &[SignedEdge] {
        &self.edges
    }

    pub fn num_nodes(&self) -> usize {
        self.lower.len() + self.upper.len()
    }

    /// Nodes in traversal order: lower faces, then upper faces, each
    /// lexicographically.
    pub fn nodes(&self) -> impl Iterator<Item = Node> {
        (0..self.lower.len())
            .map(Node::Lower)
            .chain((0..self.upper.len()).map(Node::Upper))
    }

    pub fn face(&self, n: Node) -> &Face {
        match n {
            Node::Lower(j) => &self.lower[j],
            Node::Upper(j) => &self.upper[j],
        }
    }

    fn contains(&self, n: Node) -> bool {
        match n {
            Node::Lower(j) => j < self.lower.len(),
            Node::Upper(j) => j < self.upper.len(),
        }
    }

    fn flat(&self, n: Node) -> usize {
        match n {
            Node::Lower(j) => j,
            Node::Upper(j) => self.lower.len() + j,
        }
    }

    fn unflat(&self, x: usize) -> Node {
        if x < self.lower.len() {
            Node::Lower(x)
        } else {
            Node::Upper(x - self.lower.len())
        }
    }

    /// Sign of the edge between `a` and `b`, if adjacent.
    pub fn edge_sign(&self, a: Node, b: Node) -> Option<i8> {
        let key = match (a, b) {
            (Node::Lower(l), Node::Upper(u)) | (Node::Upper(u), Node::Lower(l)) => (l, u),
            _ => return None,
        };
        self.lookup.get(&key).map(|&k| self.edges[k].sign)
    }

    /// Adjacency as flat indices `(neighbour, edge)`, neighbours ascending.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let nl = self.lower.len();
        let mut adj = vec![Vec::new(); self.num_nodes()];
        for (k, e) in self.edges.iter().enumerate() {
            adj[e.lower].push((nl + e.upper, k));
            adj[nl + e.upper].push((e.lower, k));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_nodes();
        if n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    }
}

/// `B_i(K)` with signs from orientation `o`, for `0 <= i <= dim K - 1`.
pub fn incidence_signed_graph(k: &SimplicialComplex, i: isize, o: &Orientation) -> Result<SignedGraph> {
    if i < 0 || i > k.dim() - 1 {
        return Err(Error::LevelOutOfRange {
            level: i,
            min: 0,
            max: k.dim() - 1,
        });
    }
    let d = coboundary_matrix(k, i, o)?;
    let edges = d
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(u, row)| {
            row.iter().map(move |&(l, sign)| SignedEdge {
                lower: l,
                upper: u,
                sign,
            })
        })
        .collect();
    SignedGraph::new(
        i,
        k.faces_of_dim(i).to_vec(),
        k.faces_of_dim(i + 1).to_vec(),
        edges,
    )
}

/// Outcome of a balance check, with a witness that can be re-verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BalanceCertificate {
    /// `sign(u, v) = θ(u) θ(v)` on every edge.
    Balanced { potential: Vec<(Node, i8)> },
    /// A cycle, listed without repeating the first node, with sign product -1.
    Unbalanced { cycle: Vec<Node> },
}

impl BalanceCertificate {
    pub fn verdict(&self) -> bool {
        matches!(self, BalanceCertificate::Balanced { .. })
    }

    /// Re-checks the witness against `g`.
    pub fn verify(&self, g: &SignedGraph) -> bool {
        match self {
            BalanceCertificate::Balanced { potential } => {
                let theta: HashMap<Node, i8> = potential.iter().copied().collect();
                g.nodes().all(|n| theta.get(&n).is_some_and(|t| t.abs() == 1))
                    && g.edges().iter().all(|e| {
                        e.sign == theta[&Node::Lower(e.lower)] * theta[&Node::Upper(e.upper)]
                    })
            }
            BalanceCertificate::Unbalanced { cycle } => {
                cycle.len() >= 2 && matches!(cycle_sign(g, cycle), Ok(-1))
            }
        }
    }
}

/// Decides balance componentwise by breadth-first potential propagation.
///
/// Each component is rooted at its first node with `θ = +1` and `θ` is pushed
/// along tree edges; the graph is balanced iff every remaining edge satisfies
/// `sign = θ(u) θ(v)`. Otherwise the fundamental cycle of the first violating
/// edge (in edge order) is returned.
pub fn is_balanced(g: &SignedGraph) -> BalanceCertificate {
    let n = g.num_nodes();
    let adj = g.adjacency();
    let mut theta = vec![0i8; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut tree_edge = vec![false; g.edges.len()];

    for root in 0..n {
        if theta[root] != 0 {
            continue;
        }
        theta[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if theta[y] == 0 {
                    theta[y] = g.edges[e].sign * theta[x];
                    parent[y] = Some(x);
                    depth[y] = depth[x] + 1;
                    tree_edge[e] = true;
                    queue.push_back(y);
                }
            }
        }
    }

    let nl = g.lower.len();
    for (k, e) in g.edges.iter().enumerate() {
        if tree_edge[k] {
            continue;
        }
        let (a, b) = (e.lower, nl + e.upper);
        if e.sign != theta[a] * theta[b] {
            let cycle = tree_path_cycle(a, b, &parent, &depth)
                .into_iter()
                .map(|x| g.unflat(x))
                .collect();
            return BalanceCertificate::Unbalanced { cycle };
        }
    }
    BalanceCertificate::Balanced {
        potential: (0..n).map(|x| (g.unflat(x), theta[x])).collect(),
    }
}

/// `a -> ... -> lca -> ... -> b` along tree parents; closing edge `b - a`.
fn tree_path_cycle(a: usize, b: usize, parent: &[Option<usize>], depth: &[usize]) -> Vec<usize> {
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x].expect("non-root");
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y].expect("non-root");
        right.push(y);
    }
    while x != y {
        x = parent[x].expect("same component");
        y = parent[y].expect("same component");
        left.push(x);
        right.push(y);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// Flips every edge with exactly one endpoint in `set`.
pub fn switch(g: &SignedGraph, set: &[Node]) -> Result<SignedGraph> {
    let mut in_set = vec![false; g.num_nodes()];
    for &n in set {
        if !g.contains(n) {
            return Err(Error::UnknownVertex(n.to_string()));
        }
        in_set[g.flat(n)] = true;
    }
    let nl = g.lower.len();
    let mut out = g.clone();
    for e in &mut out.edges {
        if in_set[e.lower] != in_set[nl + e.upper] {
            e.sign = -e.sign;
        }
    }
    Ok(out)
}

/// Product of edge signs around `cycle` (closed implicitly from last to first).
pub fn cycle_sign(g: &SignedGraph, cycle: &[Node]) -> Result<i8> {
    if cycle.len() < 2 {
        return Err(Error::NotAdjacent(
            cycle.first().map_or("-".into(), |n| n.to_string()),
            "-".into(),
        ));
    }
    let mut product = 1i8;
    for k in 0..cycle.len() {
        let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
        for n in [a, b] {
            if !g.contains(n) {
                return Err(Error::UnknownVertex(n.to_string()));
            }
        }
        let s = g
            .edge_sign(a, b)
            .ok_or_else(|| Error::NotAdjacent(a.to_string(), b.to_string()))?;
        product *= s;
    }
    Ok(product)
}

/// Reference balance check for small graphs: builds a depth-first spanning
/// forest, walks every fundamental cycle explicitly and multiplies its edge
/// signs. Independent of [`is_balanced`]'s potential propagation.
pub fn brute_force_balance(g: &SignedGraph) -> Result<bool> {
    if g.edges.len() > BRUTE_FORCE_EDGE_CAP {
        return Err(Error::SizeCapExceeded {
            size: g.edges.len(),
            cap: BRUTE_FORCE_EDGE_CAP,
        });
    }
    let n = g.num_nodes();
    let adj = g.adjacency();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree_edge = vec![false; g.edges.len()];
    for root in (0..n).rev() {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &(y, e) in adj[x].iter().rev() {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some(x);
                    tree_edge[e] = true;
                    stack.push(y);
                }
            }
        }
    }
    let nl = g.lower.len();
    for (k, e) in g.edges.iter().enumerate() {
        if tree_edge[k] {
            continue;
        }
        let cycle: Vec<Node> = tree_path_cycle(e.lower, nl + e.upper, &parent, &depth)
            .into_iter()
            .map(|x| g.unflat(x))
            .collect();
        if cycle_sign(g, &cycle)? != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The cycle of `B_{k-2}(Δ^k)` on the faces `F \ {v_j}` and `F \ {v_j, v_l}`
/// of the full `k`-simplex on vertices `0..=k`: for odd `k` it threads the
/// faces omitting vertices `1..=k`, for even `k` those omitting `0..=k`.
/// Returned as nodes of `incidence_signed_graph(Δ^k, k - 2, canonical)`.
pub fn simplex_witness_cycle(simplex: &SimplicialComplex) -> Result<Vec<Node>> {
    let k = simplex.dim();
    if k < 2 || simplex.facets().len() != 1 {
        return Err(Error::InvalidKind(
            "witness cycle needs a single simplex of dimension at least 2".into(),
        ));
    }
    let top = simplex.facets()[0].clone();
    let first = if k % 2 == 1 { 1 } else { 0 };
    let idx: Vec<usize> = (first..=k as usize).collect();
    let without = |drop: &[usize]| -> Face {
        Face::new(
            top.vertices()
                .iter()
                .enumerate()
                .filter(|(p, _)| !drop.contains(p))
                .map(|(_, &v)| v)
                .collect(),
        )
        .unwrap()
    };
    let upper = |j: usize| Node::Upper(simplex.face_index(&without(&[j])).unwrap());
    let lower = |j: usize, l: usize| Node::Lower(simplex.face_index(&without(&[j, l])).unwrap());
    let mut cycle = Vec::new();
    for w in idx.windows(2) {
        cycle.push(upper(w[0]));
        cycle.push(lower(w[0], w[1]));
    }
    let (a, b) = (idx[0], *idx.last().unwrap());
    cycle.push(upper(b));
    cycle.push(lower(a, b));
    Ok(cycle)
}
