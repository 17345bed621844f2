//! Simple undirected graphs with a canonical edge index, matchings, and the
//! matching-theoretic predicates the rest of the crate is built on:
//! maximum matching (blossom contraction), factor-criticality, 2-connectivity
//! and nice subgraphs.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type EdgeId = usize;

/// Edge guard for exhaustive matching enumeration.
pub const MAX_ENUM_EDGES: usize = 24;

/// A simple undirected graph with dense node ids `0..node_count`.
///
/// Edges are stored sorted by `(min endpoint, max endpoint)`; the position of
/// an edge in that list is its canonical [`EdgeId`], which is stable for a
/// fixed graph and shared by every module in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(NodeId, NodeId)>,
    adj: Vec<Vec<NodeId>>,
}

impl Graph {
    /// Builds a graph from an edge list. Rejects self-loops, duplicate edges
    /// and out-of-range endpoints.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut norm: Vec<(NodeId, NodeId)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            if u >= node_count || v >= node_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {node_count} nodes"
                )));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            let d = norm.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                d.0, d.1
            )));
        }
        let mut adj = vec![Vec::new(); node_count];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            node_count,
            edges: norm,
            adj,
        })
    }

    /// Parses the shared text format: `#` starts a comment, the first
    /// significant line is `n <node_count>`, each following line `e <u> <v>`.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut node_count: Option<usize> = None;
        let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
        let mut edge_lines: Vec<usize> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let mut it = s.split_whitespace();
            let tag = it.next().unwrap();
            match tag {
                "n" => {
                    if node_count.is_some() {
                        return Err(Error::Parse {
                            line,
                            msg: "repeated `n` line".into(),
                        });
                    }
                    let c = it.next().ok_or_else(|| Error::Parse {
                        line,
                        msg: "missing node count".into(),
                    })?;
                    let c: usize = c.parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("bad node count `{c}`"),
                    })?;
                    if it.next().is_some() {
                        return Err(Error::Parse {
                            line,
                            msg: "trailing tokens".into(),
                        });
                    }
                    node_count = Some(c);
                }
                "e" => {
                    if node_count.is_none() {
                        return Err(Error::Parse {
                            line,
                            msg: "edge before `n <node_count>` line".into(),
                        });
                    }
                    let mut num = |what: &str| -> Result<usize> {
                        let t = it.next().ok_or_else(|| Error::Parse {
                            line,
                            msg: format!("missing {what}"),
                        })?;
                        t.parse().map_err(|_| Error::Parse {
                            line,
                            msg: format!("bad {what} `{t}`"),
                        })
                    };
                    let u = num("endpoint")?;
                    let v = num("endpoint")?;
                    if it.next().is_some() {
                        return Err(Error::Parse {
                            line,
                            msg: "trailing tokens".into(),
                        });
                    }
                    edges.push((u, v));
                    edge_lines.push(line);
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unknown directive `{other}`"),
                    })
                }
            }
        }
        let node_count = node_count.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "missing `n` line".into(),
        })?;
        // Re-map construction errors onto the offending line.
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u == v || u >= node_count || v >= node_count {
                return Err(Error::Parse {
                    line: edge_lines[k],
                    msg: format!("bad edge ({u}, {v}) for {node_count} nodes"),
                });
            }
            let prior = &edges[..k];
            if prior
                .iter()
                .any(|&(a, b)| (a.min(b), a.max(b)) == (u.min(v), u.max(v)))
            {
                return Err(Error::Parse {
                    line: edge_lines[k],
                    msg: format!("duplicate edge ({u}, {v})"),
                });
            }
        }
        Graph::from_edges(node_count, edges)
    }

    /// Canonical text rendering: `n` line, then edges in sorted order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.node_count);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "e {u} {v}");
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        0..self.node_count
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (NodeId, NodeId) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn edge_id(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Node-induced subgraph. Returns the subgraph on compacted node ids
    /// together with the map from new ids back to ids in `self`.
    pub fn induced(&self, keep: &BTreeSet<NodeId>) -> Result<(Graph, Vec<NodeId>)> {
        for &v in keep {
            if v >= self.node_count {
                return Err(Error::InvalidInput(format!("node {v} not in graph")));
            }
        }
        let new_to_old: Vec<NodeId> = keep.iter().copied().collect();
        let mut old_to_new = vec![usize::MAX; self.node_count];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (old_to_new[u], old_to_new[v]));
        let g = Graph::from_edges(new_to_old.len(), edges)?;
        Ok((g, new_to_old))
    }

    /// Subgraph on `self`'s node ids minus the given set.
    pub fn without_nodes(&self, drop: &BTreeSet<NodeId>) -> Result<(Graph, Vec<NodeId>)> {
        let keep: BTreeSet<NodeId> = self.nodes().filter(|v| !drop.contains(v)).collect();
        self.induced(&keep)
    }
}

/// A set of pairwise node-disjoint edges, identified by canonical edge ids.
/// Doubles as a 0/1 incidence vector over the owning graph's edge index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matching {
    edge_ids: BTreeSet<EdgeId>,
}

impl Matching {
    pub fn empty() -> Matching {
        Matching {
            edge_ids: BTreeSet::new(),
        }
    }

    /// Validates disjointness against `g`.
    pub fn new<I>(g: &Graph, ids: I) -> Result<Matching>
    where
        I: IntoIterator<Item = EdgeId>,
    {
        let mut seen = vec![false; g.node_count()];
        let mut edge_ids = BTreeSet::new();
        for e in ids {
            if e >= g.edge_count() {
                return Err(Error::InvalidInput(format!("edge id {e} out of range")));
            }
            let (u, v) = g.endpoints(e);
            if seen[u] || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "edges share a node: edge ({u}, {v}) conflicts"
                )));
            }
            seen[u] = true;
            seen[v] = true;
            edge_ids.insert(e);
        }
        Ok(Matching { edge_ids })
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edge_ids.contains(&e)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_ids.iter().copied()
    }

    pub fn edges<'g>(&self, g: &'g Graph) -> Vec<(NodeId, NodeId)> {
        self.edge_ids.iter().map(|&e| g.endpoints(e)).collect()
    }

    /// 0/1 vector of length `|E|`, 1 exactly on the member edges.
    pub fn incidence_vector(&self, g: &Graph) -> Vec<i64> {
        let mut x = vec![0; g.edge_count()];
        for &e in &self.edge_ids {
            x[e] = 1;
        }
        x
    }

    pub fn covered_nodes(&self, g: &Graph) -> BTreeSet<NodeId> {
        let mut out = BTreeSet::new();
        for &e in &self.edge_ids {
            let (u, v) = g.endpoints(e);
            out.insert(u);
            out.insert(v);
        }
        out
    }

    pub fn covers(&self, g: &Graph, v: NodeId) -> bool {
        self.edge_ids.iter().any(|&e| {
            let (a, b) = g.endpoints(e);
            a == v || b == v
        })
    }

    /// Union of disjoint matchings; errors if they collide.
    pub fn union(&self, g: &Graph, other: &Matching) -> Result<Matching> {
        Matching::new(g, self.edge_ids().chain(other.edge_ids()))
    }
}

/// Maximum-cardinality matching via Edmonds' blossom contraction, O(V^3).
///
/// Deterministic for a fixed graph: nodes are scanned in ascending order and
/// adjacency lists are canonical.
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.node_count();
    let mut mate: Vec<Option<NodeId>> = vec![None; n];
    // Greedy seed keeps the number of augmenting searches down.
    for &(u, v) in g.edges() {
        if mate[u].is_none() && mate[v].is_none() {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
    }
    for root in 0..n {
        if mate[root].is_some() {
            continue;
        }
        let mut search = BlossomSearch {
            g,
            mate: &mut mate,
            parent: vec![None; n],
            base: (0..n).collect(),
            used: vec![false; n],
        };
        if let Some(leaf) = search.find_augmenting_path(root) {
            let parent = search.parent;
            // Flip matched/unmatched edges back along the parent chain.
            let mut v = Some(leaf);
            while let Some(cur) = v {
                let pv = parent[cur].expect("leaf chains back to the root");
                let next = mate[pv];
                mate[cur] = Some(pv);
                mate[pv] = Some(cur);
                v = next;
            }
        }
    }
    let mut ids = BTreeSet::new();
    for v in 0..n {
        if let Some(u) = mate[v] {
            if v < u {
                ids.insert(g.edge_id(v, u).expect("mate edge exists"));
            }
        }
    }
    Matching { edge_ids: ids }
}

struct BlossomSearch<'a> {
    g: &'a Graph,
    mate: &'a mut Vec<Option<NodeId>>,
    parent: Vec<Option<NodeId>>,
    base: Vec<NodeId>,
    used: Vec<bool>,
}

impl BlossomSearch<'_> {
    fn find_augmenting_path(&mut self, root: NodeId) -> Option<NodeId> {
        self.used[root] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.g.neighbors(v).len() {
                let to = self.g.neighbors(v)[i];
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_in_tree =
                    self.mate[to].map_or(false, |m| self.parent[m].is_some()) || to == root;
                if to_in_tree {
                    // Odd cycle: contract the blossom down to the common base.
                    let b = self.lca(v, to);
                    let mut blossom = vec![false; self.g.node_count()];
                    self.mark_path(v, b, to, &mut blossom);
                    self.mark_path(to, b, v, &mut blossom);
                    for i in 0..self.g.node_count() {
                        if blossom[self.base[i]] {
                            self.base[i] = b;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            if !self.used[m] {
                                self.used[m] = true;
                                queue.push_back(m);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn lca(&self, a: NodeId, b: NodeId) -> NodeId {
        let mut mark = vec![false; self.g.node_count()];
        let mut v = a;
        loop {
            v = self.base[v];
            mark[v] = true;
            let Some(m) = self.mate[v] else { break };
            let Some(pm) = self.parent[m] else { break };
            v = pm;
        }
        let mut v = b;
        loop {
            v = self.base[v];
            if mark[v] {
                return v;
            }
            let m = self.mate[v].expect("alternating tree invariant");
            v = self.parent[m].expect("alternating tree invariant");
        }
    }

    fn mark_path(&mut self, mut v: NodeId, b: NodeId, mut child: NodeId, blossom: &mut [bool]) {
        while self.base[v] != b {
            blossom[self.base[v]] = true;
            let mv = self.mate[v].expect("inner node is matched");
            blossom[self.base[mv]] = true;
            self.parent[v] = Some(child);
            child = mv;
            v = self.parent[mv].expect("inner node has a parent");
        }
    }
}

/// True iff a maximum matching covers every node. The empty graph counts as
/// perfectly matched.
pub fn has_perfect_matching(g: &Graph) -> bool {
    maximum_matching(g).len() * 2 == g.node_count()
}

/// True iff the node count is odd and deleting any single node leaves a graph
/// with a perfect matching.
pub fn is_factor_critical(g: &Graph) -> bool {
    let n = g.node_count();
    if n % 2 == 0 {
        return false;
    }
    (0..n).all(|v| {
        let drop: BTreeSet<NodeId> = [v].into_iter().collect();
        let (h, _) = g.without_nodes(&drop).expect("node in range");
        has_perfect_matching(&h)
    })
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.node_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// True iff `g` is connected and has no cut node. Rejects graphs with fewer
/// than 3 nodes.
pub fn is_2_connected(g: &Graph) -> Result<bool> {
    let n = g.node_count();
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "2-connectivity requires at least 3 nodes, got {n}"
        )));
    }
    if !is_connected(g) {
        return Ok(false);
    }
    // Articulation search via DFS low-links, iterative to keep stack use flat.
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    // Frames of (node, parent, neighbor cursor).
    let mut stack: Vec<(NodeId, Option<NodeId>, usize)> = vec![(0, None, 0)];
    disc[0] = 0;
    low[0] = 0;
    timer += 1;
    let mut root_children = 0usize;
    while let Some(frame) = stack.last().copied() {
        let (v, parent, cursor) = frame;
        if cursor < g.neighbors(v).len() {
            stack.last_mut().unwrap().2 += 1;
            let w = g.neighbors(v)[cursor];
            if disc[w] == usize::MAX {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, Some(v), 0));
            } else if Some(w) != parent {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, pp, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if pp.is_some() && low[v] >= disc[p] {
                    return Ok(false); // p is a cut node
                }
            }
        }
    }
    Ok(root_children < 2)
}

/// True iff deleting all of `u` leaves a graph with a perfect matching
/// (vacuously true when nothing remains).
pub fn is_nice_subgraph(g: &Graph, u: &BTreeSet<NodeId>) -> Result<bool> {
    for &v in u {
        if v >= g.node_count() {
            return Err(Error::InvalidInput(format!("node {v} not in graph")));
        }
    }
    let (rest, _) = g.without_nodes(u)?;
    Ok(has_perfect_matching(&rest))
}

/// Lexicographically smallest perfect matching under the canonical edge
/// order, or `None` when the graph has none.
pub fn lexmin_perfect_matching(g: &Graph) -> Option<Matching> {
    let n = g.node_count();
    if n % 2 != 0 || !has_perfect_matching(g) {
        return None;
    }
    let mut free = vec![true; n];
    let mut chosen: Vec<EdgeId> = Vec::new();
    for e in 0..g.edge_count() {
        let (a, b) = g.endpoints(e);
        if !free[a] || !free[b] {
            continue;
        }
        // Keep `e` iff the remaining free nodes still pair up using only
        // larger edge ids.
        free[a] = false;
        free[b] = false;
        if completion_exists(g, &free, e) {
            chosen.push(e);
        } else {
            free[a] = true;
            free[b] = true;
        }
    }
    debug_assert!(free.iter().all(|f| !f));
    Some(Matching {
        edge_ids: chosen.into_iter().collect(),
    })
}

fn completion_exists(g: &Graph, free: &[bool], min_excluded: EdgeId) -> bool {
    let keep: Vec<NodeId> = (0..g.node_count()).filter(|&v| free[v]).collect();
    if keep.is_empty() {
        return true;
    }
    let mut old_to_new = vec![usize::MAX; g.node_count()];
    for (new, &old) in keep.iter().enumerate() {
        old_to_new[old] = new;
    }
    let edges = (min_excluded + 1..g.edge_count()).filter_map(|e| {
        let (u, v) = g.endpoints(e);
        (free[u] && free[v]).then(|| (old_to_new[u], old_to_new[v]))
    });
    let h = Graph::from_edges(keep.len(), edges).expect("subgraph of a valid graph");
    has_perfect_matching(&h)
}

/// Lexmin perfect matching of `g` minus the given nodes, reported in `g`'s own
/// edge ids. `None` when no such matching exists. Node deletion preserves the
/// relative canonical edge order, so lexmin carries over.
pub fn lexmin_pm_avoiding(g: &Graph, avoid: &BTreeSet<NodeId>) -> Result<Option<Matching>> {
    let (h, new_to_old) = g.without_nodes(avoid)?;
    let Some(m) = lexmin_perfect_matching(&h) else {
        return Ok(None);
    };
    let ids = m.edge_ids().map(|e| {
        let (a, b) = h.endpoints(e);
        g.edge_id(new_to_old[a], new_to_old[b])
            .expect("edge survives deletion")
    });
    Ok(Some(Matching::new(g, ids)?))
}

/// Perfect matching of `g - v`, lexicographically smallest under the canonical
/// edge order. Errors when `g` is not factor-critical.
pub fn near_pm_excluding(g: &Graph, v: NodeId) -> Result<Matching> {
    if v >= g.node_count() {
        return Err(Error::InvalidInput(format!("node {v} not in graph")));
    }
    if !is_factor_critical(g) {
        return Err(Error::InvalidInput(
            "near-perfect matching requires a factor-critical graph".into(),
        ));
    }
    let drop: BTreeSet<NodeId> = [v].into_iter().collect();
    lexmin_pm_avoiding(g, &drop)?
        .ok_or_else(|| Error::Internal("factor-critical graph lost a near-p.m.".into()))
}

/// All matchings of `g` including the empty one, in canonical order: the
/// sorted edge-id sequences appear in lexicographic order.
pub fn enumerate_matchings(g: &Graph) -> Result<Vec<Matching>> {
    enumerate_matchings_with_limit(g, MAX_ENUM_EDGES)
}

pub fn enumerate_matchings_with_limit(g: &Graph, max_edges: usize) -> Result<Vec<Matching>> {
    // Hard cap independent of the caller's limit: the output is exponential.
    if g.edge_count() > max_edges || g.edge_count() > 28 {
        return Err(Error::GuardExceeded(format!(
            "matching enumeration needs |E| <= {}, got {}",
            max_edges.min(28),
            g.edge_count()
        )));
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.node_count()];
    let mut current: Vec<EdgeId> = Vec::new();
    fn rec(
        g: &Graph,
        next: EdgeId,
        used: &mut Vec<bool>,
        current: &mut Vec<EdgeId>,
        out: &mut Vec<Matching>,
    ) {
        out.push(Matching {
            edge_ids: current.iter().copied().collect(),
        });
        for e in next..g.edge_count() {
            let (u, v) = g.endpoints(e);
            if used[u] || used[v] {
                continue;
            }
            used[u] = true;
            used[v] = true;
            current.push(e);
            rec(g, e + 1, used, current, out);
            current.pop();
            used[u] = false;
            used[v] = false;
        }
    }
    rec(g, 0, &mut used, &mut current, &mut out);
    Ok(out)
}
