//! Hypergraphs, incidence matrices, the dual map and the structural
//! invariants that are preserved by it.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Default cap on faces enumerated by [`euler_characteristic`].
pub const DEFAULT_FACE_CAP: usize = 1 << 20;

/// Cap on maximal cliques visited by [`Hypergraph::has_helly_property`].
pub const HELLY_CLIQUE_CAP: usize = 1_000_000;

/// A vertex count plus an ordered list of hyperedges. Each hyperedge is a
/// strictly increasing list of vertex indices. Hyperedges are identified by
/// position, so repeated, nested, singleton and empty hyperedges are all
/// allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    #[serde(rename = "vertices")]
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

/// 0/1 matrix with rows indexed by vertices and columns by hyperedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<u8>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "incidence matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(x) = entries.iter().find(|&&x| x > 1) {
            return Err(Error::Domain(format!("incidence entry {x} is not 0 or 1")));
        }
        Ok(IncidenceMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged incidence matrix".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c));
            }
        }
        IncidenceMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}

impl Hypergraph {
    /// Builds a hypergraph, sorting each hyperedge. Fails if a vertex index
    /// is out of range or repeated within one hyperedge.
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(edges.len());
        for (j, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            if let Some(&v) = e.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::Invalid(format!(
                    "hyperedge {j} contains vertex {v}, but there are only {vertex_count} vertices"
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!("hyperedge {j} repeats a vertex")));
            }
            sorted.push(e);
        }
        Ok(Hypergraph {
            vertex_count,
            edges: sorted,
        })
    }

    pub fn empty() -> Self {
        Hypergraph {
            vertex_count: 0,
            edges: Vec::new(),
        }
    }

    /// Re-checks the invariants; used after deserialization.
    pub fn validate(&self) -> Result<()> {
        for (j, e) in self.edges.iter().enumerate() {
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invalid(format!(
                    "hyperedge {j} is not strictly increasing"
                )));
            }
            if e.last().is_some_and(|&v| v >= self.vertex_count) {
                return Err(Error::Invalid(format!("hyperedge {j} is out of range")));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, j: usize) -> &[usize] {
        &self.edges[j]
    }

    /// Appends a hyperedge and returns its index.
    pub fn push_edge(&mut self, mut edge: Vec<usize>) -> Result<usize> {
        edge.sort_unstable();
        if edge.windows(2).any(|w| w[0] == w[1])
            || edge.last().is_some_and(|&v| v >= self.vertex_count)
        {
            return Err(Error::Invalid(format!("bad hyperedge {edge:?}")));
        }
        self.edges.push(edge);
        Ok(self.edges.len() - 1)
    }

    /// Hyperedge indices containing each vertex, in increasing order.
    pub fn incident_edges(&self) -> Vec<Vec<usize>> {
        let mut stars = vec![Vec::new(); self.vertex_count];
        for (j, e) in self.edges.iter().enumerate() {
            for &v in e {
                stars[v].push(j);
            }
        }
        stars
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.binary_search(&v).is_ok())
            .count()
    }

    pub fn from_incidence(m: &IncidenceMatrix) -> Self {
        let edges = (0..m.cols())
            .map(|c| (0..m.rows()).filter(|&r| m.get(r, c) == 1).collect())
            .collect();
        Hypergraph {
            vertex_count: m.rows(),
            edges,
        }
    }

    pub fn to_incidence(&self) -> IncidenceMatrix {
        let cols = self.edges.len();
        let mut entries = vec![0u8; self.vertex_count * cols];
        for (c, e) in self.edges.iter().enumerate() {
            for &r in e {
                entries[r * cols + c] = 1;
            }
        }
        IncidenceMatrix {
            rows: self.vertex_count,
            cols,
            entries,
        }
    }

    /// The hypergraph with transposed incidence matrix: dual vertex `j` is
    /// hyperedge `j`, dual hyperedge `u` is the set of hyperedges containing
    /// vertex `u`.
    pub fn dual(&self) -> Self {
        Hypergraph {
            vertex_count: self.edges.len(),
            edges: self.incident_edges(),
        }
    }

    /// Primal graph: `i ~ j` whenever some hyperedge contains both.
    pub fn two_section(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.vertex_count);
        for e in &self.edges {
            for (i, &a) in e.iter().enumerate() {
                for &b in &e[i + 1..] {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn is_k_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        self.incident_edges().iter().all(|s| s.len() == k)
    }

    pub fn is_at_most_k_regular(&self, k: usize) -> bool {
        self.incident_edges().iter().all(|s| s.len() <= k)
    }

    /// True iff there is no Berge cycle, i.e. the bipartite vertex/hyperedge
    /// incidence graph is a forest. Two equal hyperedges with at least two
    /// vertices form a cycle.
    pub fn is_berge_acyclic(&self) -> bool {
        let d = self.vertex_count;
        let mut uf = UnionFind::new(d + self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            for &v in e {
                if !uf.union(v, d + j) {
                    return false;
                }
            }
        }
        true
    }

    /// Helly property: every family of at least two pairwise-intersecting
    /// hyperedges has a common vertex. Decided on the maximal cliques of the
    /// hyperedge intersection graph.
    pub fn has_helly_property(&self) -> Result<bool> {
        let c = self.edges.len();
        let sets: Vec<BTreeSet<usize>> = self
            .edges
            .iter()
            .map(|e| e.iter().copied().collect())
            .collect();
        let mut adj = vec![BTreeSet::new(); c];
        for a in 0..c {
            for b in a + 1..c {
                if !sets[a].is_disjoint(&sets[b]) {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        let mut visited = 0usize;
        let mut ok = true;
        let mut check = |clique: &[usize]| -> bool {
            visited += 1;
            if clique.len() >= 2 {
                let mut common = sets[clique[0]].clone();
                for &e in &clique[1..] {
                    common.retain(|v| sets[e].contains(v));
                }
                if common.is_empty() {
                    ok = false;
                }
            }
            ok && visited < HELLY_CLIQUE_CAP
        };
        let finished = bron_kerbosch(
            &adj,
            Vec::new(),
            (0..c).collect(),
            BTreeSet::new(),
            &mut check,
        );
        if !finished && ok {
            return Err(Error::size(
                "maximal clique enumeration",
                HELLY_CLIQUE_CAP as u128 + 1,
                HELLY_CLIQUE_CAP as u128,
            ));
        }
        Ok(ok)
    }

    /// Simplicial complex whose maximal faces are the inclusion-maximal
    /// nonempty hyperedges.
    pub fn simplicial_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_faces(self.vertex_count, self.edges.iter().cloned())
    }

    /// Nerve of the cover of the hypergraph by its hyperedges: one vertex per
    /// hyperedge, a simplex for every family with a common vertex. The
    /// maximal faces are the maximal vertex stars.
    pub fn nerve(&self) -> SimplicialComplex {
        let stars = (0..self.vertex_count).map(|u| {
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.contains(&u))
                .map(|(j, _)| j)
                .collect::<Vec<_>>()
        });
        SimplicialComplex::from_faces(self.edges.len(), stars)
    }
}

/// Bron-Kerbosch with pivoting. `report` returns false to stop early; the
/// function returns false if stopped.
fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: Vec<usize>,
    p: BTreeSet<usize>,
    x: BTreeSet<usize>,
    report: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if p.is_empty() && x.is_empty() {
        return report(&r);
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| (p.intersection(&adj[u]).count(), std::cmp::Reverse(u)))
        .expect("p or x is non-empty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.intersection(&adj[v]).copied().collect();
        let x2 = x.intersection(&adj[v]).copied().collect();
        if !bron_kerbosch(adj, r2, p2, x2, report) {
            return false;
        }
        p.remove(&v);
        x.insert(v);
    }
    true
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Returns false if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Abstract simplicial complex given by its maximal faces. The full face set
/// is the downward closure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// Sorted lexicographically, each face strictly increasing and nonempty.
    maximal_faces: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Keeps the inclusion-maximal nonempty faces of `faces`, deduplicated.
    pub fn from_faces(vertex_count: usize, faces: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut faces: Vec<Vec<usize>> = faces
            .into_iter()
            .filter(|f| !f.is_empty())
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        // larger faces first so that subsets are always seen after supersets
        faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        for f in faces {
            if !maximal.iter().any(|m| is_subset(&f, m)) {
                maximal.push(f);
            }
        }
        maximal.sort();
        SimplicialComplex {
            vertex_count,
            maximal_faces: maximal,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn maximal_faces(&self) -> &[Vec<usize>] {
        &self.maximal_faces
    }

    pub fn is_empty(&self) -> bool {
        self.maximal_faces.is_empty()
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

/// Alternating count of nonempty faces, sum of (-1)^dim(F). Fails if the
/// power sets of the maximal faces together hold more than `cap` faces.
pub fn euler_characteristic(k: &SimplicialComplex, cap: usize) -> Result<i64> {
    let mut required: u128 = 0;
    for f in &k.maximal_faces {
        required = required.saturating_add((1u128 << f.len().min(127)) - 1);
    }
    if required > cap as u128 || k.maximal_faces.iter().any(|f| f.len() >= 64) {
        return Err(Error::size("face enumeration", required, cap as u128));
    }
    let mut faces: HashSet<Vec<usize>> = HashSet::new();
    for f in &k.maximal_faces {
        for mask in 1u64..(1u64 << f.len()) {
            let face: Vec<usize> = f
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            faces.insert(face);
        }
    }
    Ok(faces
        .iter()
        .map(|f| if f.len() % 2 == 1 { 1 } else { -1 })
        .sum())
}

/// Number of connected components of the union of the maximal faces.
/// Vertices that lie in no face are not counted.
pub fn connected_components(k: &SimplicialComplex) -> usize {
    let mut uf = UnionFind::new(k.vertex_count);
    let mut used = BTreeSet::new();
    for f in &k.maximal_faces {
        used.extend(f.iter().copied());
        for w in f.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let roots: BTreeSet<usize> = used.into_iter().map(|v| uf.find(v)).collect();
    roots.len()
}
