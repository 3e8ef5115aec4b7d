//! Exact marginalization with the junction tree algorithm.
//!
//! The pipeline is: primal graph of the model's hypergraph, min-fill
//! triangulation, maximal cliques read off the elimination order, a
//! maximum-weight spanning tree over the cliques, potential assignment, and
//! Hugin-style message passing with separator division.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::hypergraph::Hypergraph;
use crate::model::GraphicalModel;
use crate::scalar::Scalar;
use crate::tensor::{product_sum, LabeledTensor};

/// Largest clique table the compiler will allocate.
pub const DEFAULT_CLIQUE_CAP: u128 = 1 << 24;

/// A permutation of the vertices of a graph; position 0 is eliminated first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationOrder(Vec<usize>);

impl EliminationOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            if v >= order.len() || seen[v] {
                return Err(Error::Domain(format!(
                    "elimination order {order:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(EliminationOrder(order))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `positions()[v]` is the step at which `v` is eliminated.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub chordal: SimpleGraph,
    pub order: EliminationOrder,
    /// Edges added during elimination, `(a, b)` with `a < b`, in the order
    /// they were introduced.
    pub fill_edges: Vec<(usize, usize)>,
}

/// Eliminates vertices in `order`, connecting the remaining neighbors of
/// each eliminated vertex.
pub fn triangulate_with_order(
    graph: &SimpleGraph,
    order: &EliminationOrder,
) -> Result<Triangulation> {
    if order.len() != graph.vertex_count() {
        return Err(Error::Domain(format!(
            "elimination order has {} vertices, graph has {}",
            order.len(),
            graph.vertex_count()
        )));
    }
    let mut work = graph.clone();
    let mut chordal = graph.clone();
    let mut eliminated = vec![false; graph.vertex_count()];
    let mut fill_edges = Vec::new();
    for &v in order.as_slice() {
        let nbrs: Vec<usize> = work
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !eliminated[w])
            .collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if work.add_edge(a, b) {
                    chordal.add_edge(a, b);
                    fill_edges.push((a.min(b), a.max(b)));
                }
            }
        }
        eliminated[v] = true;
    }
    Ok(Triangulation {
        chordal,
        order: order.clone(),
        fill_edges,
    })
}

fn fill_in(work: &SimpleGraph, eliminated: &[bool], v: usize) -> usize {
    let nbrs: Vec<usize> = work
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| !eliminated[w])
        .collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !work.has_edge(a, b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Min-fill triangulation: repeatedly eliminates the vertex whose
/// elimination adds the fewest edges, lowest index first on ties.
pub fn triangulate(graph: &SimpleGraph) -> Triangulation {
    let n = graph.vertex_count();
    let mut work = graph.clone();
    let mut eliminated = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !eliminated[v])
            .min_by_key(|&v| (fill_in(&work, &eliminated, v), v))
            .expect("a vertex remains");
        let nbrs: Vec<usize> = work
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !eliminated[w])
            .collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                work.add_edge(a, b);
            }
        }
        eliminated[v] = true;
        order.push(v);
    }
    let order = EliminationOrder(order);
    triangulate_with_order(graph, &order).expect("order covers the graph")
}

/// Later neighbors of each vertex, in elimination-order position.
fn later_neighbors(graph: &SimpleGraph, order: &EliminationOrder) -> Vec<Vec<usize>> {
    let pos = order.positions();
    order
        .as_slice()
        .iter()
        .map(|&v| {
            graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| pos[w] > pos[v])
                .collect()
        })
        .collect()
}

/// True iff, for every vertex, its neighbors eliminated after it are
/// pairwise adjacent.
pub fn is_perfect_elimination_order(graph: &SimpleGraph, order: &EliminationOrder) -> bool {
    order.len() == graph.vertex_count()
        && later_neighbors(graph, order)
            .iter()
            .all(|later| graph.is_clique(later))
}

/// Maximal cliques of a chordal graph: each vertex with its later
/// neighbors, keeping only the inclusion-maximal sets. Cliques are listed in
/// the elimination position of the vertex that produced them.
pub fn maximal_cliques_chordal(
    graph: &SimpleGraph,
    order: &EliminationOrder,
) -> Result<Vec<Vec<usize>>> {
    if order.len() != graph.vertex_count() {
        return Err(Error::Precondition("order does not cover the graph".into()));
    }
    let mut candidates = Vec::with_capacity(order.len());
    for (&v, later) in order.as_slice().iter().zip(later_neighbors(graph, order)) {
        if !graph.is_clique(&later) {
            return Err(Error::Precondition(format!(
                "graph is not chordal under the given order (vertex {v})"
            )));
        }
        let mut clique = later;
        clique.push(v);
        clique.sort_unstable();
        candidates.push(clique);
    }
    let contains =
        |big: &[usize], small: &[usize]| small.iter().all(|x| big.binary_search(x).is_ok());
    Ok(candidates
        .iter()
        .enumerate()
        .filter(|(i, c)| {
            !candidates
                .iter()
                .enumerate()
                .any(|(j, d)| j != *i && d.len() > c.len() && contains(d, c))
        })
        .map(|(_, c)| c.clone())
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct JunctionNode<S> {
    pub clique: Vec<usize>,
    pub potential: LabeledTensor<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JunctionEdge<S> {
    pub a: usize,
    pub b: usize,
    pub separator: Vec<usize>,
    pub potential: LabeledTensor<S>,
}

/// Work done by one message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MessageRecord {
    pub from: usize,
    pub to: usize,
    /// Variables summed out of the sender, `C_from \ S`.
    pub summed: Vec<usize>,
    /// Divisions by the old separator plus multiplications into the target.
    pub mults: u64,
    pub adds: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JunctionTree<S> {
    nodes: Vec<JunctionNode<S>>,
    edges: Vec<JunctionEdge<S>>,
    root: usize,
    /// (neighbor node, edge index) per node, by increasing neighbor.
    adjacency: Vec<Vec<(usize, usize)>>,
    log: Vec<MessageRecord>,
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

fn table_size(clique: &[usize], cardinalities: &[usize]) -> u128 {
    clique.iter().fold(1u128, |acc, &u| {
        acc.saturating_mul(cardinalities[u] as u128)
    })
}

/// Spanning tree of maximum total separator size over `cliques`, ties
/// broken by the lexicographically smallest pair `(i, j)`. Node and
/// separator potentials start at one. An empty clique list yields a single
/// node with the empty clique.
pub fn build_junction_tree<S: Scalar>(
    cliques: Vec<Vec<usize>>,
    cardinalities: &[usize],
) -> Result<JunctionTree<S>> {
    let mut cliques = cliques;
    if cliques.is_empty() {
        cliques.push(Vec::new());
    }
    for c in &mut cliques {
        c.sort_unstable();
        if let Some(&u) = c.iter().find(|&&u| u >= cardinalities.len()) {
            return Err(Error::Precondition(format!(
                "clique mentions unknown variable {u}"
            )));
        }
    }
    let n = cliques.len();
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push((intersect(&cliques[i], &cliques[j]).len(), i, j));
        }
    }
    pairs.sort_by(|x, y| y.0.cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));
    let mut component: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], mut a: usize) -> usize {
        while c[a] != a {
            c[a] = c[c[a]];
            a = c[a];
        }
        a
    }
    let mut tree_pairs = Vec::with_capacity(n.saturating_sub(1));
    for (_, i, j) in pairs {
        let (ri, rj) = (find(&mut component, i), find(&mut component, j));
        if ri != rj {
            component[ri.max(rj)] = ri.min(rj);
            tree_pairs.push((i, j));
        }
    }
    let sizes_of = |c: &[usize]| c.iter().map(|&u| cardinalities[u]).collect::<Vec<_>>();
    let nodes = cliques
        .iter()
        .map(|c| {
            Ok(JunctionNode {
                clique: c.clone(),
                potential: LabeledTensor::ones(c.clone(), sizes_of(c))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = tree_pairs
        .into_iter()
        .map(|(a, b)| {
            let separator = intersect(&cliques[a], &cliques[b]);
            Ok(JunctionEdge {
                a,
                b,
                potential: LabeledTensor::ones(separator.clone(), sizes_of(&separator))?,
                separator,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut adjacency = vec![Vec::new(); n];
    for (k, e) in edges.iter().enumerate() {
        adjacency[e.a].push((e.b, k));
        adjacency[e.b].push((e.a, k));
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    let tree = JunctionTree {
        nodes,
        edges,
        root: 0,
        adjacency,
        log: Vec::new(),
    };
    if !tree.has_running_intersection() {
        return Err(Error::Internal(
            "running intersection property fails; cliques do not come from a chordal graph".into(),
        ));
    }
    Ok(tree)
}

impl<S: Scalar> JunctionTree<S> {
    pub fn nodes(&self) -> &[JunctionNode<S>] {
        &self.nodes
    }

    pub fn edges(&self) -> &[JunctionEdge<S>] {
        &self.edges
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn set_root(&mut self, root: usize) -> Result<()> {
        if root >= self.nodes.len() {
            return Err(Error::Domain(format!("root {root} is not a node")));
        }
        self.root = root;
        Ok(())
    }

    pub fn message_log(&self) -> &[MessageRecord] {
        &self.log
    }

    pub fn cliques(&self) -> Vec<Vec<usize>> {
        self.nodes.iter().map(|n| n.clique.clone()).collect()
    }

    /// Index of the edge joining nodes `a` and `b`, if adjacent.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adjacency
            .get(a)?
            .iter()
            .find(|&&(nbr, _)| nbr == b)
            .map(|&(_, k)| k)
    }

    pub fn is_spanning_tree(&self) -> bool {
        let n = self.nodes.len();
        if self.edges.len() + 1 != n {
            return false;
        }
        self.bfs(0).0.len() == n
    }

    /// For every variable, the nodes whose clique contains it induce a
    /// connected subtree, and every separator is the intersection of its
    /// endpoints.
    pub fn has_running_intersection(&self) -> bool {
        if !self.is_spanning_tree() {
            return false;
        }
        if self
            .edges
            .iter()
            .any(|e| e.separator != intersect(&self.nodes[e.a].clique, &self.nodes[e.b].clique))
        {
            return false;
        }
        let max_var = self
            .nodes
            .iter()
            .flat_map(|n| n.clique.iter().copied())
            .max();
        let Some(max_var) = max_var else { return true };
        let mut holding = vec![0usize; max_var + 1];
        let mut linking = vec![0usize; max_var + 1];
        for n in &self.nodes {
            for &u in &n.clique {
                holding[u] += 1;
            }
        }
        for e in &self.edges {
            for &u in &e.separator {
                linking[u] += 1;
            }
        }
        // a forest on k nodes with k - 1 edges is connected
        holding
            .iter()
            .zip(&linking)
            .all(|(&h, &l)| h == 0 || l + 1 == h)
    }

    /// Breadth-first order from `start` (neighbors by increasing index) and
    /// the parent of each reached node.
    pub fn bfs(&self, start: usize) -> (Vec<usize>, Vec<Option<usize>>) {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut parent = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        (order, parent)
    }

    /// Last node reached by breadth-first search from the root.
    pub fn terminal(&self) -> usize {
        *self.bfs(self.root).0.last().expect("tree has a node")
    }

    /// Messages that gather everything into `sink`: every other node sends
    /// once to its neighbor on the path to `sink`, farthest nodes first.
    pub fn collect_schedule(&self, sink: usize) -> Vec<(usize, usize)> {
        let (order, parent) = self.bfs(sink);
        order
            .iter()
            .rev()
            .filter_map(|&v| parent[v].map(|p| (v, p)))
            .collect()
    }

    /// Messages from `source` outwards, parents before children.
    pub fn distribute_schedule(&self, source: usize) -> Vec<(usize, usize)> {
        let (order, parent) = self.bfs(source);
        order
            .iter()
            .filter_map(|&v| parent[v].map(|p| (p, v)))
            .collect()
    }

    /// Multiplies each hyperedge potential into the lowest-index node whose
    /// clique contains the hyperedge.
    pub fn assign_potentials(&mut self, gm: &GraphicalModel<S>) -> Result<()> {
        for (j, (edge, psi)) in gm
            .hypergraph()
            .edges()
            .iter()
            .zip(gm.potentials())
            .enumerate()
        {
            let node = self
                .nodes
                .iter()
                .position(|n| is_subset(edge, &n.clique))
                .ok_or_else(|| {
                    Error::Invalid(format!(
                        "hyperedge {j} {edge:?} is in no clique of the tree"
                    ))
                })?;
            let target = &mut self.nodes[node].potential;
            *target = product_sum(&[target, psi], &[])?;
        }
        Ok(())
    }

    /// Basic message from `from` to the adjacent node `to`:
    /// the separator becomes the sender summed down to it, and the receiver
    /// is multiplied by new separator / old separator (0/0 taken as 0).
    pub fn pass_message(&mut self, from: usize, to: usize) -> Result<&MessageRecord> {
        let k = self
            .edge_between(from, to)
            .ok_or_else(|| Error::Domain(format!("nodes {from} and {to} are not adjacent")))?;
        let sep = self.edges[k].separator.clone();
        let summed: Vec<usize> = self.nodes[from]
            .clique
            .iter()
            .copied()
            .filter(|u| sep.binary_search(u).is_err())
            .collect();
        let new_sep = self.nodes[from].potential.sum_over(&summed)?;
        let old_sep = &self.edges[k].potential;
        let mut ratio = Vec::with_capacity(new_sep.len());
        for (&num, &den) in new_sep.data().iter().zip(old_sep.data()) {
            if den == S::zero() {
                if num != S::zero() {
                    return Err(Error::Numerical(format!(
                        "message {from} -> {to}: nonzero over zero separator entry"
                    )));
                }
                ratio.push(S::zero());
            } else {
                ratio.push(num / den);
            }
        }
        let ratio = LabeledTensor::new(sep.clone(), new_sep.sizes().to_vec(), ratio)?;
        let target = &self.nodes[to].potential;
        let updated = product_sum(&[target, &ratio], &[])?;
        let record = MessageRecord {
            from,
            to,
            summed,
            mults: (ratio.len() + updated.len()) as u64,
            adds: (self.nodes[from].potential.len() - new_sep.len()) as u64,
        };
        self.nodes[to].potential = updated;
        self.edges[k].potential = new_sep;
        self.log.push(record);
        Ok(self.log.last().expect("just pushed"))
    }

    pub fn run_schedule(&mut self, schedule: &[(usize, usize)]) -> Result<()> {
        for &(from, to) in schedule {
            self.pass_message(from, to)?;
        }
        Ok(())
    }

    /// Gathers all information into `sink`, whose potential then equals the
    /// unnormalized marginal over its clique.
    pub fn collect_to(&mut self, sink: usize) -> Result<()> {
        let schedule = self.collect_schedule(sink);
        self.run_schedule(&schedule)
    }

    /// Two sweeps through the root: inwards, then outwards. Afterwards every
    /// node and separator potential is the unnormalized marginal over its
    /// variables.
    pub fn calibrate(mut self) -> Result<Self> {
        let root = self.root;
        self.collect_to(root)?;
        let schedule = self.distribute_schedule(root);
        self.run_schedule(&schedule)?;
        Ok(self)
    }

    /// Lowest-index node whose clique contains `vars`.
    pub fn node_containing(&self, vars: &[usize]) -> Option<usize> {
        self.nodes.iter().position(|n| is_subset(vars, &n.clique))
    }

    pub fn largest_clique(&self) -> usize {
        self.nodes.iter().map(|n| n.clique.len()).max().unwrap_or(0)
    }
}

/// Knobs for [`compile`]. The defaults are min-fill, root 0, no extra
/// cliques.
#[derive(Debug, Clone, Default)]
pub struct JunctionOptions {
    pub order: Option<EliminationOrder>,
    pub root: Option<usize>,
    /// Variable sets forced to lie inside one clique (added to the primal
    /// graph before triangulation).
    pub extra_cliques: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct CompiledModel<S> {
    pub triangulation: Triangulation,
    pub tree: JunctionTree<S>,
}

/// Builds the junction tree of `gm` with its potentials assigned.
pub fn compile<S: Scalar>(
    gm: &GraphicalModel<S>,
    opts: &JunctionOptions,
) -> Result<CompiledModel<S>> {
    let mut graph = gm.hypergraph().two_section();
    for extra in &opts.extra_cliques {
        gm.check_variables(extra)?;
        for (i, &a) in extra.iter().enumerate() {
            for &b in &extra[i + 1..] {
                graph.add_edge(a, b);
            }
        }
    }
    let triangulation = match &opts.order {
        Some(order) => triangulate_with_order(&graph, order)?,
        None => triangulate(&graph),
    };
    let cliques = maximal_cliques_chordal(&triangulation.chordal, &triangulation.order)?;
    for c in &cliques {
        let size = table_size(c, gm.cardinalities());
        if size > DEFAULT_CLIQUE_CAP {
            return Err(Error::size("clique table", size, DEFAULT_CLIQUE_CAP));
        }
    }
    let mut tree = build_junction_tree(cliques, gm.cardinalities())?;
    if let Some(root) = opts.root {
        tree.set_root(root)?;
    }
    tree.assign_potentials(gm)?;
    Ok(CompiledModel {
        triangulation,
        tree,
    })
}

fn sorted_unique(vars: &[usize]) -> Vec<usize> {
    let mut w = vars.to_vec();
    w.sort_unstable();
    w.dedup();
    w
}

/// Unnormalized marginal over an arbitrary variable set: the set is forced
/// into one clique, information is collected into that clique, and the
/// remaining clique variables are summed out.
pub fn marginal_set_unnormalized<S: Scalar>(
    gm: &GraphicalModel<S>,
    vars: &[usize],
    opts: &JunctionOptions,
) -> Result<LabeledTensor<S>> {
    let w = sorted_unique(vars);
    gm.check_variables(&w)?;
    let mut opts = opts.clone();
    opts.extra_cliques.push(w.clone());
    let mut tree = compile(gm, &opts)?.tree;
    let sink = tree
        .node_containing(&w)
        .ok_or_else(|| Error::Internal("forced clique missing from the tree".into()))?;
    tree.collect_to(sink)?;
    tree.nodes[sink].potential.marginalize_to(&w)
}

/// Normalized marginal over `vars`.
pub fn marginal_set<S: Scalar>(gm: &GraphicalModel<S>, vars: &[usize]) -> Result<LabeledTensor<S>> {
    Ok(
        marginal_set_unnormalized(gm, vars, &JunctionOptions::default())?
            .normalize()?
            .0,
    )
}

/// Unnormalized marginal at every hyperedge, read from a calibrated tree.
pub fn hyperedge_marginals<S: Scalar>(
    gm: &GraphicalModel<S>,
    opts: &JunctionOptions,
) -> Result<Vec<LabeledTensor<S>>> {
    let tree = compile(gm, opts)?.tree.calibrate()?;
    gm.hypergraph()
        .edges()
        .iter()
        .map(|e| {
            let node = tree
                .node_containing(e)
                .ok_or_else(|| Error::Internal("hyperedge missing from the tree".into()))?;
            tree.nodes[node].potential.marginalize_to(e)
        })
        .collect()
}

/// Normalized marginal of hyperedge `edge`.
pub fn marginal<S: Scalar>(gm: &GraphicalModel<S>, edge: usize) -> Result<LabeledTensor<S>> {
    if edge >= gm.hypergraph().edge_count() {
        return Err(Error::Domain(format!("hyperedge {edge} does not exist")));
    }
    let tree = compile(gm, &JunctionOptions::default())?.tree.calibrate()?;
    let vars = gm.hypergraph().edge(edge);
    let node = tree
        .node_containing(vars)
        .ok_or_else(|| Error::Internal("hyperedge missing from the tree".into()))?;
    Ok(tree.nodes[node]
        .potential
        .marginalize_to(vars)?
        .normalize()?
        .0)
}

/// Partition function with a single inward sweep: messages travel from the
/// root towards the terminal node, whose potential is then summed.
pub fn total_sum<S: Scalar>(gm: &GraphicalModel<S>) -> Result<S> {
    total_sum_with(gm, &JunctionOptions::default())
}

pub fn total_sum_with<S: Scalar>(gm: &GraphicalModel<S>, opts: &JunctionOptions) -> Result<S> {
    let mut tree = compile(gm, opts)?.tree;
    let terminal = tree.terminal();
    tree.collect_to(terminal)?;
    Ok(tree.nodes[terminal].potential.total_sum())
}

/// Largest clique of the min-fill triangulation of the primal graph, minus
/// one. An upper bound on the treewidth.
pub fn treewidth_estimate(h: &Hypergraph) -> usize {
    let graph = h.two_section();
    if graph.vertex_count() == 0 {
        return 0;
    }
    let tri = triangulate(&graph);
    let cliques =
        maximal_cliques_chordal(&tri.chordal, &tri.order).expect("min-fill output is chordal");
    cliques.iter().map(Vec::len).max().unwrap_or(1) - 1
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeEdgeReport {
    pub a: usize,
    pub b: usize,
    pub separator: Vec<usize>,
}

/// What the junction tree compiler did, for the plan report.
#[derive(Debug, Clone, Serialize)]
pub struct JunctionDiagnostics {
    pub elimination_order: Vec<usize>,
    pub fill_edges: Vec<(usize, usize)>,
    pub cliques: Vec<Vec<usize>>,
    pub root: usize,
    pub tree_edges: Vec<TreeEdgeReport>,
    pub messages: Vec<MessageRecord>,
}

impl JunctionDiagnostics {
    pub fn new<S: Scalar>(triangulation: &Triangulation, tree: &JunctionTree<S>) -> Self {
        JunctionDiagnostics {
            elimination_order: triangulation.order.as_slice().to_vec(),
            fill_edges: triangulation.fill_edges.clone(),
            cliques: tree.cliques(),
            root: tree.root(),
            tree_edges: tree
                .edges()
                .iter()
                .map(|e| TreeEdgeReport {
                    a: e.a,
                    b: e.b,
                    separator: e.separator.clone(),
                })
                .collect(),
            messages: tree.message_log().to_vec(),
        }
    }
}
