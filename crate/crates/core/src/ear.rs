//! Nice odd cycles and odd ear decompositions of factor-critical graphs.
//!
//! A factor-critical graph grows from any of its nice odd cycles by odd ears,
//! and every prefix of that growth is again a nice factor-critical subgraph;
//! when the graph is 2-connected the ears can all be chosen proper and the
//! prefixes stay 2-connected. The constructions here work in the graph with
//! the current prefix contracted to a single node: there the classic
//! symmetric-difference path between two near-perfect matchings yields the
//! next ear with all prefix invariants intact, and a forced final crossing
//! edge gives control over the ear's second endpoint (used by the proper
//! variant and by the witness builder).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{
    has_perfect_matching, is_2_connected, is_connected, is_factor_critical, is_nice_subgraph,
    lexmin_pm_avoiding, near_pm_excluding, EdgeId, Graph, Matching, NodeId,
};

/// A path whose endpoints (and no interior node) lie in the already-built
/// subgraph. Stored as the full node path; a closing ear repeats its endpoint,
/// `path[0] == path[last]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    pub path: Vec<NodeId>,
}

impl Ear {
    pub fn endpoint_a(&self) -> NodeId {
        self.path[0]
    }

    pub fn endpoint_b(&self) -> NodeId {
        *self.path.last().expect("ear path is nonempty")
    }

    /// Distinct endpoints make an ear proper; a cycle ear is not proper.
    pub fn is_proper(&self) -> bool {
        self.endpoint_a() != self.endpoint_b()
    }

    pub fn interior(&self) -> &[NodeId] {
        &self.path[1..self.path.len() - 1]
    }

    pub fn len_edges(&self) -> usize {
        self.path.len() - 1
    }

    fn edge_ids(&self, g: &Graph) -> Result<Vec<EdgeId>> {
        self.path
            .windows(2)
            .map(|w| {
                g.edge_id(w[0], w[1]).ok_or_else(|| {
                    Error::InvalidInput(format!("ear step ({}, {}) is not an edge", w[0], w[1]))
                })
            })
            .collect()
    }
}

/// An initial nice odd cycle plus the ordered ears grown from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarDecomposition {
    pub initial_cycle: Vec<NodeId>,
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    /// Re-checks every structural invariant against `g`: the initial cycle is
    /// a nice odd cycle, every ear is odd with endpoints in (and interior
    /// outside) its prefix, ears contribute only new edges, the union of the
    /// cycle and all ears is exactly `g`, and every prefix is a nice
    /// factor-critical subgraph (2-connected too when `proper` is set, which
    /// also requires every ear to be proper).
    pub fn verify(&self, g: &Graph, proper: bool) -> Result<()> {
        let cycle_ids = cycle_edge_ids(g, &self.initial_cycle)?;
        if self.initial_cycle.len() % 2 == 0 || self.initial_cycle.len() < 3 {
            return Err(Error::InvalidInput("initial cycle must be odd".into()));
        }
        let mut nodes: BTreeSet<NodeId> = self.initial_cycle.iter().copied().collect();
        if nodes.len() != self.initial_cycle.len() {
            return Err(Error::InvalidInput("initial cycle repeats a node".into()));
        }
        let mut edge_ids: BTreeSet<EdgeId> = cycle_ids.into_iter().collect();
        check_prefix(g, &nodes, &edge_ids, proper)?;
        for ear in &self.ears {
            if ear.len_edges() % 2 == 0 {
                return Err(Error::InvalidInput("even ear".into()));
            }
            if proper && !ear.is_proper() {
                return Err(Error::InvalidInput(
                    "closing ear in a proper decomposition".into(),
                ));
            }
            if !nodes.contains(&ear.endpoint_a()) || !nodes.contains(&ear.endpoint_b()) {
                return Err(Error::InvalidInput(
                    "ear endpoint outside the prefix".into(),
                ));
            }
            let interior: Vec<NodeId> = ear.interior().to_vec();
            let distinct: BTreeSet<NodeId> = interior.iter().copied().collect();
            if distinct.len() != interior.len() || interior.iter().any(|v| nodes.contains(v)) {
                return Err(Error::InvalidInput("ear interior revisits a node".into()));
            }
            if interior.len() % 2 != 0 {
                return Err(Error::Internal(
                    "odd ear must add an even number of nodes".into(),
                ));
            }
            for e in ear.edge_ids(g)? {
                if !edge_ids.insert(e) {
                    return Err(Error::InvalidInput("ear reuses a prefix edge".into()));
                }
            }
            nodes.extend(interior);
            check_prefix(g, &nodes, &edge_ids, proper)?;
        }
        if edge_ids.len() != g.edge_count() {
            return Err(Error::InvalidInput(format!(
                "decomposition covers {} of {} edges",
                edge_ids.len(),
                g.edge_count()
            )));
        }
        Ok(())
    }
}

fn check_prefix(
    g: &Graph,
    nodes: &BTreeSet<NodeId>,
    edge_ids: &BTreeSet<EdgeId>,
    proper: bool,
) -> Result<()> {
    if !is_nice_subgraph(g, nodes)? {
        return Err(Error::InvalidInput("prefix is not nice".into()));
    }
    let (sub, _) = subgraph_from(g, nodes, edge_ids);
    if !is_factor_critical(&sub) {
        return Err(Error::InvalidInput("prefix is not factor-critical".into()));
    }
    if proper && !is_2_connected(&sub)? {
        return Err(Error::InvalidInput("prefix is not 2-connected".into()));
    }
    Ok(())
}

/// Subgraph with the given node set and edge ids, on compacted labels.
pub(crate) fn subgraph_from(
    g: &Graph,
    nodes: &BTreeSet<NodeId>,
    edge_ids: &BTreeSet<EdgeId>,
) -> (Graph, Vec<NodeId>) {
    let new_to_old: Vec<NodeId> = nodes.iter().copied().collect();
    let mut old_to_new = vec![usize::MAX; g.node_count()];
    for (new, &old) in new_to_old.iter().enumerate() {
        old_to_new[old] = new;
    }
    let edges = edge_ids.iter().map(|&e| {
        let (u, v) = g.endpoints(e);
        (old_to_new[u], old_to_new[v])
    });
    let sub = Graph::from_edges(new_to_old.len(), edges).expect("subgraph of a valid graph");
    (sub, new_to_old)
}

/// Edge ids of a cycle given as a node sequence (closing edge included).
fn cycle_edge_ids(g: &Graph, cycle: &[NodeId]) -> Result<Vec<EdgeId>> {
    if cycle.len() < 3 {
        return Err(Error::InvalidInput("cycle needs at least 3 nodes".into()));
    }
    let mut ids = Vec::with_capacity(cycle.len());
    for i in 0..cycle.len() {
        let u = cycle[i];
        let v = cycle[(i + 1) % cycle.len()];
        let e = g
            .edge_id(u, v)
            .ok_or_else(|| Error::InvalidInput(format!("cycle step ({u}, {v}) is not an edge")))?;
        ids.push(e);
    }
    Ok(ids)
}

/// The unique alternating path starting at `start` in the symmetric
/// difference of two matchings. `start` must have degree one there.
pub(crate) fn alternating_path(
    g: &Graph,
    a: &Matching,
    b: &Matching,
    start: NodeId,
) -> Result<Vec<NodeId>> {
    let diff: BTreeSet<EdgeId> =
        &a.edge_ids().collect::<BTreeSet<_>>() ^ &b.edge_ids().collect::<BTreeSet<_>>();
    let mut incident: BTreeMap<NodeId, Vec<EdgeId>> = BTreeMap::new();
    for &e in &diff {
        let (u, v) = g.endpoints(e);
        incident.entry(u).or_default().push(e);
        incident.entry(v).or_default().push(e);
    }
    if incident.get(&start).map_or(0, Vec::len) != 1 {
        return Err(Error::Internal(
            "alternating path start must have degree 1".into(),
        ));
    }
    let mut path = vec![start];
    let mut used: BTreeSet<EdgeId> = BTreeSet::new();
    let mut cur = start;
    loop {
        let next_edge = incident
            .get(&cur)
            .and_then(|es| es.iter().copied().find(|e| !used.contains(e)));
        let Some(e) = next_edge else { break };
        used.insert(e);
        let (u, v) = g.endpoints(e);
        cur = if u == cur { v } else { u };
        path.push(cur);
    }
    Ok(path)
}

/// Contraction of the current prefix node set to a single node `s`.
///
/// Outside nodes keep their relative order under compact ids `0..w`; `s = w`.
/// Parallel crossing edges collapse; `s_lift` remembers the smallest original
/// edge id behind each surviving `(s, w)` edge.
struct Contraction {
    graph: Graph,
    s: NodeId,
    new_to_old: Vec<NodeId>,
    old_to_new: Vec<NodeId>,
    s_lift: BTreeMap<NodeId, EdgeId>,
}

impl Contraction {
    fn build(g: &Graph, prefix: &BTreeSet<NodeId>) -> Contraction {
        let new_to_old: Vec<NodeId> = g.nodes().filter(|v| !prefix.contains(v)).collect();
        let s = new_to_old.len();
        let mut old_to_new = vec![usize::MAX; g.node_count()];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut edges: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
        let mut s_lift: BTreeMap<NodeId, EdgeId> = BTreeMap::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            match (prefix.contains(&u), prefix.contains(&v)) {
                (true, true) => {}
                (false, false) => {
                    edges.insert((old_to_new[u], old_to_new[v]));
                }
                (in_u, _) => {
                    let w = old_to_new[if in_u { v } else { u }];
                    edges.insert((w, s));
                    s_lift.entry(w).or_insert(e);
                }
            }
        }
        let graph = Graph::from_edges(s + 1, edges).expect("contraction of a valid graph");
        Contraction {
            graph,
            s,
            new_to_old,
            old_to_new,
            s_lift,
        }
    }
}

/// Greedy ear growth: repeatedly attach the smallest-index candidate edge,
/// extending crossings into odd ears through the contracted prefix.
pub(crate) struct EarEngine<'g> {
    g: &'g Graph,
    pub nodes: BTreeSet<NodeId>,
    pub edge_ids: BTreeSet<EdgeId>,
    proper: bool,
}

impl<'g> EarEngine<'g> {
    pub fn new(
        g: &'g Graph,
        nodes: BTreeSet<NodeId>,
        edge_ids: BTreeSet<EdgeId>,
        proper: bool,
    ) -> EarEngine<'g> {
        EarEngine {
            g,
            nodes,
            edge_ids,
            proper,
        }
    }

    pub fn push(&mut self, ear: &Ear) -> Result<()> {
        for e in ear.edge_ids(self.g)? {
            self.edge_ids.insert(e);
        }
        self.nodes.extend(ear.interior().iter().copied());
        Ok(())
    }

    pub fn done(&self) -> bool {
        self.edge_ids.len() == self.g.edge_count()
    }

    /// Builds (without committing) the next ear, or `None` when the prefix
    /// already spans every edge.
    pub fn next_ear(&self) -> Result<Option<Ear>> {
        if self.done() {
            return Ok(None);
        }
        for e in 0..self.g.edge_count() {
            if self.edge_ids.contains(&e) {
                continue;
            }
            let (u, v) = self.g.endpoints(e);
            match (self.nodes.contains(&u), self.nodes.contains(&v)) {
                (true, true) => return Ok(Some(Ear { path: vec![u, v] })),
                (true, false) => {
                    if let Some(ear) = self.crossing_ear(u, v)? {
                        return Ok(Some(ear));
                    }
                }
                (false, true) => {
                    if let Some(ear) = self.crossing_ear(v, u)? {
                        return Ok(Some(ear));
                    }
                }
                (false, false) => {}
            }
        }
        Err(Error::Internal(
            "no ear candidate found although edges remain; input graph not connected?".into(),
        ))
    }

    /// Odd ear through the crossing edge `(v_s, k)`, `v_s` in the prefix.
    /// In proper mode scans forced end crossings and may report `None`.
    fn crossing_ear(&self, v_s: NodeId, k: NodeId) -> Result<Option<Ear>> {
        if self.proper {
            for e2 in 0..self.g.edge_count() {
                if self.edge_ids.contains(&e2) {
                    continue;
                }
                let (a, b) = self.g.endpoints(e2);
                let (x, u) = match (self.nodes.contains(&a), self.nodes.contains(&b)) {
                    (true, false) => (a, b),
                    (false, true) => (b, a),
                    _ => continue,
                };
                if x == v_s || u == k {
                    continue;
                }
                // The ear exists iff the outside graph minus {k, u} still
                // pairs up perfectly.
                let mut avoid = self.nodes.clone();
                avoid.insert(k);
                avoid.insert(u);
                let (rest, _) = self.g.without_nodes(&avoid)?;
                if !has_perfect_matching(&rest) {
                    continue;
                }
                return Ok(Some(self.alternating_ear(v_s, k, Some((x, u)))?));
            }
            Ok(None)
        } else {
            Ok(Some(self.alternating_ear(v_s, k, None)?))
        }
    }

    /// The contracted-graph construction. With `forced_end = (x, u)`, the
    /// near-p.m. missing `k` is steered to cover the contracted node through
    /// `u`, so the ear ends with the edge `(u, x)`.
    pub fn alternating_ear(
        &self,
        v_s: NodeId,
        k: NodeId,
        forced_end: Option<(NodeId, NodeId)>,
    ) -> Result<Ear> {
        let ct = Contraction::build(self.g, &self.nodes);
        let k_c = ct.old_to_new[k];
        let s_set: BTreeSet<NodeId> = [ct.s].into_iter().collect();
        let outside_pm = lexmin_pm_avoiding(&ct.graph, &s_set)?
            .ok_or_else(|| Error::Internal("ear prefix is not nice".into()))?;
        let miss_k = match forced_end {
            None => {
                let k_set: BTreeSet<NodeId> = [k_c].into_iter().collect();
                lexmin_pm_avoiding(&ct.graph, &k_set)?.ok_or_else(|| {
                    Error::Internal("contracted prefix graph is not factor-critical".into())
                })?
            }
            Some((_, u)) => {
                let u_c = ct.old_to_new[u];
                let avoid: BTreeSet<NodeId> = [ct.s, k_c, u_c].into_iter().collect();
                let rest = lexmin_pm_avoiding(&ct.graph, &avoid)?.ok_or_else(|| {
                    Error::Internal("forced ear end passed feasibility but lost its p.m.".into())
                })?;
                let bridge = ct
                    .graph
                    .edge_id(ct.s, u_c)
                    .ok_or_else(|| Error::Internal("forced end edge lost in contraction".into()))?;
                rest.union(&ct.graph, &Matching::new(&ct.graph, [bridge])?)?
            }
        };
        let path = alternating_path(&ct.graph, &outside_pm, &miss_k, k_c)?;
        if path.last() != Some(&ct.s) {
            return Err(Error::Internal(
                "alternating ear path must end at the prefix".into(),
            ));
        }
        let mut ear_path = vec![v_s];
        ear_path.extend(path[..path.len() - 1].iter().map(|&c| ct.new_to_old[c]));
        let u_last = path[path.len() - 2];
        let end_node = match forced_end {
            Some((x, _)) => x,
            None => {
                let e = ct.s_lift[&u_last];
                let (a, b) = self.g.endpoints(e);
                if self.nodes.contains(&a) {
                    a
                } else {
                    b
                }
            }
        };
        ear_path.push(end_node);
        if ear_path.len() % 2 != 0 {
            return Err(Error::Internal("constructed ear has even length".into()));
        }
        Ok(Ear { path: ear_path })
    }
}

/// A nice odd cycle through `e = (i, j)`: the even alternating `i`-`j` path in
/// the symmetric difference of the two near-perfect matchings missing `i`
/// resp. `j`, closed with `e` itself. The node sequence starts at `min(i, j)`.
pub fn nice_odd_cycle_through_edge(g: &Graph, e: (NodeId, NodeId)) -> Result<Vec<NodeId>> {
    let (i, j) = (e.0.min(e.1), e.0.max(e.1));
    if g.edge_id(i, j).is_none() {
        return Err(Error::InvalidInput(format!("({i}, {j}) is not an edge")));
    }
    if !is_factor_critical(g) {
        return Err(Error::InvalidInput("graph is not factor-critical".into()));
    }
    let m_i = near_pm_excluding(g, i)?;
    let m_j = near_pm_excluding(g, j)?;
    let cycle = alternating_path(g, &m_i, &m_j, i)?;
    if cycle.last() != Some(&j) {
        return Err(Error::Internal(
            "alternating path must join the edge endpoints".into(),
        ));
    }
    if cycle.len() % 2 == 0 || cycle.len() < 3 {
        return Err(Error::Internal(
            "nice odd cycle construction produced an even cycle".into(),
        ));
    }
    let set: BTreeSet<NodeId> = cycle.iter().copied().collect();
    if set.len() != cycle.len() || !is_nice_subgraph(g, &set)? {
        return Err(Error::Internal(
            "constructed cycle is not a nice subgraph".into(),
        ));
    }
    Ok(cycle)
}

/// Odd ear decomposition of `g` starting from the nice odd cycle `c`.
///
/// With `first_ear_edge = (v, k)` (`v` on the cycle, `k` outside) the first
/// ear is the one grown through that edge; afterwards growth is greedy by
/// smallest edge index. Every prefix is a nice factor-critical subgraph.
pub fn odd_ear_decomposition(
    g: &Graph,
    c: &[NodeId],
    first_ear_edge: Option<(NodeId, NodeId)>,
) -> Result<EarDecomposition> {
    if !is_factor_critical(g) || !is_connected(g) {
        return Err(Error::InvalidInput(
            "odd ear decomposition needs a connected factor-critical graph".into(),
        ));
    }
    let cycle_ids = cycle_edge_ids(g, c)?;
    let nodes: BTreeSet<NodeId> = c.iter().copied().collect();
    if nodes.len() != c.len() || c.len() % 2 == 0 {
        return Err(Error::InvalidInput(
            "initial cycle must be a simple odd cycle".into(),
        ));
    }
    if !is_nice_subgraph(g, &nodes)? {
        return Err(Error::InvalidInput("initial cycle is not nice".into()));
    }
    let mut engine = EarEngine::new(g, nodes, cycle_ids.into_iter().collect(), false);
    let mut ears = Vec::new();
    if let Some((v, k)) = first_ear_edge {
        if !engine.nodes.contains(&v) || engine.nodes.contains(&k) {
            return Err(Error::InvalidInput(
                "first ear edge must cross from the cycle to the outside".into(),
            ));
        }
        if g.edge_id(v, k).is_none() {
            return Err(Error::InvalidInput(format!("({v}, {k}) is not an edge")));
        }
        let ear = engine.alternating_ear(v, k, None)?;
        engine.push(&ear)?;
        ears.push(ear);
    }
    while let Some(ear) = engine.next_ear()? {
        engine.push(&ear)?;
        ears.push(ear);
    }
    let out = EarDecomposition {
        initial_cycle: c.to_vec(),
        ears,
    };
    out.verify(g, false)
        .map_err(|e| Error::Internal(format!("ear postcondition: {e}")))?;
    Ok(out)
}

/// Proper odd ear decomposition of a factor-critical 2-connected graph,
/// grown from the nice odd cycle through the smallest edge. Prefixes are
/// nice, factor-critical and 2-connected throughout.
pub fn proper_odd_ear_decomposition(g: &Graph) -> Result<EarDecomposition> {
    if !is_factor_critical(g) {
        return Err(Error::InvalidInput("graph is not factor-critical".into()));
    }
    if !is_2_connected(g)? {
        return Err(Error::InvalidInput("graph is not 2-connected".into()));
    }
    let (u, v) = g.endpoints(0);
    let c = nice_odd_cycle_through_edge(g, (u, v))?;
    let cycle_ids = cycle_edge_ids(g, &c)?;
    let nodes: BTreeSet<NodeId> = c.iter().copied().collect();
    let mut engine = EarEngine::new(g, nodes, cycle_ids.into_iter().collect(), true);
    let mut ears = Vec::new();
    while let Some(ear) = engine.next_ear()? {
        engine.push(&ear)?;
        ears.push(ear);
    }
    let out = EarDecomposition {
        initial_cycle: c,
        ears,
    };
    out.verify(g, true)
        .map_err(|e| Error::Internal(format!("proper ear postcondition: {e}")))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, e).unwrap()
    }

    #[test]
    fn nice_odd_cycle_examples() {
        let c5 = cycle(5);
        let c = nice_odd_cycle_through_edge(&c5, (0, 1)).unwrap();
        assert_eq!(c.len(), 5);

        let k3 = complete(3);
        let c = nice_odd_cycle_through_edge(&k3, (0, 1)).unwrap();
        let set: BTreeSet<_> = c.iter().copied().collect();
        assert_eq!(set, (0..3).collect());

        let k5 = complete(5);
        let c = nice_odd_cycle_through_edge(&k5, (0, 1)).unwrap();
        assert!(c.len() % 2 == 1);
        assert!(c.contains(&0) && c.contains(&1));
        let set: BTreeSet<_> = c.iter().copied().collect();
        assert!(is_nice_subgraph(&k5, &set).unwrap());

        assert!(nice_odd_cycle_through_edge(&cycle(4), (0, 1)).is_err());
        assert!(nice_odd_cycle_through_edge(&c5, (0, 2)).is_err());
    }

    #[test]
    fn odd_decomposition_of_bare_cycle_has_no_ears() {
        let c5 = cycle(5);
        let c: Vec<_> = (0..5).collect();
        let d = odd_ear_decomposition(&c5, &c, None).unwrap();
        assert!(d.ears.is_empty());
        d.verify(&c5, false).unwrap();
    }

    #[test]
    fn odd_decomposition_triangle_plus_ear() {
        // Triangle 0-1-2 with a 3-edge ear 0-3-4-1.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (3, 4), (1, 4)]).unwrap();
        let d = odd_ear_decomposition(&g, &[0, 1, 2], None).unwrap();
        assert_eq!(d.ears.len(), 1);
        assert_eq!(d.ears[0].len_edges(), 3);
        d.verify(&g, false).unwrap();
    }

    #[test]
    fn odd_decomposition_forced_first_ear() {
        let k5 = complete(5);
        let c = nice_odd_cycle_through_edge(&k5, (0, 1)).unwrap();
        let k = (0..5).find(|v| !c.contains(v)).unwrap();
        let d = odd_ear_decomposition(&k5, &c, Some((0, k))).unwrap();
        let first = &d.ears[0];
        assert!(first
            .path
            .windows(2)
            .any(|w| (w[0] == 0 && w[1] == k) || (w[0] == k && w[1] == 0)));
        d.verify(&k5, false).unwrap();
    }

    #[test]
    fn proper_decomposition_examples() {
        let c7 = cycle(7);
        let d = proper_odd_ear_decomposition(&c7).unwrap();
        assert!(d.ears.is_empty());

        let k5 = complete(5);
        let d = proper_odd_ear_decomposition(&k5).unwrap();
        assert!(d.ears.iter().all(Ear::is_proper));
        let covered: usize =
            d.initial_cycle.len() + d.ears.iter().map(Ear::len_edges).sum::<usize>();
        assert_eq!(covered, 10);
        d.verify(&k5, true).unwrap();

        // C5 plus the chord (0, 2): the triangle plus one proper odd ear.
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)]).unwrap();
        let d = proper_odd_ear_decomposition(&g).unwrap();
        assert_eq!(d.initial_cycle.len(), 3);
        assert_eq!(d.ears.len(), 1);
        assert_eq!(d.ears[0].len_edges(), 3);
        d.verify(&g, true).unwrap();
    }

    #[test]
    fn proper_decomposition_rejects_bad_inputs() {
        assert!(proper_odd_ear_decomposition(&cycle(4)).is_err());
        // Factor-critical but not 2-connected: two triangles sharing node 2.
        let bowtie =
            Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert!(is_factor_critical(&bowtie));
        assert!(proper_odd_ear_decomposition(&bowtie).is_err());
        // The odd (non-proper) variant must still handle it.
        let c = nice_odd_cycle_through_edge(&bowtie, (0, 1)).unwrap();
        let d = odd_ear_decomposition(&bowtie, &c, None).unwrap();
        d.verify(&bowtie, false).unwrap();
    }

    #[test]
    fn decomposition_verify_rejects_tampering() {
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (3, 4), (1, 4)]).unwrap();
        let mut d = odd_ear_decomposition(&g, &[0, 1, 2], None).unwrap();
        d.ears.clear();
        assert!(d.verify(&g, false).is_err());
    }

    #[test]
    fn petersen_minus_node_proper_decomposition() {
        let outer = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
        let inner = [(5, 7), (7, 9), (6, 9), (6, 8), (5, 8)];
        let spokes = [(0, 5), (1, 6), (2, 7), (3, 8), (4, 9)];
        let p = Graph::from_edges(10, outer.into_iter().chain(inner).chain(spokes)).unwrap();
        assert!(!is_factor_critical(&p)); // even order
        let (q, _) = p.without_nodes(&[9].into_iter().collect()).unwrap();
        assert!(is_factor_critical(&q));
        let d = proper_odd_ear_decomposition(&q).unwrap();
        d.verify(&q, true).unwrap();
    }
}
