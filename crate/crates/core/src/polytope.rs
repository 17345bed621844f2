//! Facets of the matching polytope and exact face-dimension computations.
//!
//! The polytope is the convex hull of the 0/1 incidence vectors of all
//! matchings, full-dimensional in R^|E|. Its facets come in three families:
//! nonnegativity per edge, degree bounds for qualifying nodes, and blossom
//! (odd-set) bounds for odd node sets inducing factor-critical 2-connected
//! subgraphs. Face dimensions are affine ranks of tight incidence vectors,
//! computed fraction-free over the integers; no floating point anywhere.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{
    enumerate_matchings, is_2_connected, is_factor_critical, EdgeId, Graph, Matching, NodeId,
};
use crate::linalg::affine_dimension;

/// Node guard for the odd-subset scan in facet enumeration.
pub const MAX_FACET_NODES: usize = 16;

/// A facet candidate of the matching polytope, stored in `<=` form:
/// `NonNeg(e)` is `-x_e <= 0`, `Degree(v)` is `x(delta(v)) <= 1`, and
/// `OddSet(U)` is `x(E[U]) <= (|U| - 1) / 2`.
///
/// The derived `Ord` is the canonical facet order: nonnegativity by edge id,
/// then degree by node id, then odd sets by sorted node list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Inequality {
    NonNeg(EdgeId),
    Degree(NodeId),
    OddSet(BTreeSet<NodeId>),
}

impl Inequality {
    /// Odd-set constructor; rejects even or undersized node sets.
    pub fn odd_set<I>(nodes: I) -> Result<Inequality>
    where
        I: IntoIterator<Item = NodeId>,
    {
        let set: BTreeSet<NodeId> = nodes.into_iter().collect();
        if set.len() < 3 || set.len() % 2 == 0 {
            return Err(Error::InvalidInequality(format!(
                "odd set needs odd cardinality >= 3, got {}",
                set.len()
            )));
        }
        Ok(Inequality::OddSet(set))
    }

    /// Checks the inequality refers only to nodes/edges of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        match self {
            Inequality::NonNeg(e) => {
                if *e >= g.edge_count() {
                    return Err(Error::InvalidInequality(format!(
                        "edge id {e} out of range"
                    )));
                }
            }
            Inequality::Degree(v) => {
                if *v >= g.node_count() {
                    return Err(Error::InvalidInequality(format!("node {v} out of range")));
                }
            }
            Inequality::OddSet(u) => {
                if u.len() < 3 || u.len() % 2 == 0 {
                    return Err(Error::InvalidInequality(
                        "odd set has even cardinality".into(),
                    ));
                }
                if let Some(&v) = u.iter().find(|&&v| v >= g.node_count()) {
                    return Err(Error::InvalidInequality(format!("node {v} out of range")));
                }
            }
        }
        Ok(())
    }

    /// Right-hand side in `<=` form.
    pub fn rhs(&self) -> i64 {
        match self {
            Inequality::NonNeg(_) => 0,
            Inequality::Degree(_) => 1,
            Inequality::OddSet(u) => (u.len() as i64 - 1) / 2,
        }
    }

    /// Coefficient vector over the edge index, `<=` form (so NonNeg is -1 on
    /// its edge).
    pub fn coefficients(&self, g: &Graph) -> Vec<i64> {
        let mut c = vec![0i64; g.edge_count()];
        match self {
            Inequality::NonNeg(e) => c[*e] = -1,
            Inequality::Degree(v) => {
                for &w in g.neighbors(*v) {
                    c[g.edge_id(*v, w).expect("adjacency edge")] = 1;
                }
            }
            Inequality::OddSet(u) => {
                for (e, &(a, b)) in g.edges().iter().enumerate() {
                    if u.contains(&a) && u.contains(&b) {
                        c[e] = 1;
                    }
                }
            }
        }
        c
    }

    /// Left-hand side value at a matching.
    pub fn eval(&self, g: &Graph, m: &Matching) -> i64 {
        match self {
            Inequality::NonNeg(e) => {
                if m.contains(*e) {
                    -1
                } else {
                    0
                }
            }
            Inequality::Degree(v) => m
                .edge_ids()
                .filter(|&e| {
                    let (a, b) = g.endpoints(e);
                    a == *v || b == *v
                })
                .count() as i64,
            Inequality::OddSet(u) => m
                .edge_ids()
                .filter(|&e| {
                    let (a, b) = g.endpoints(e);
                    u.contains(&a) && u.contains(&b)
                })
                .count() as i64,
        }
    }

    pub fn is_tight(&self, g: &Graph, m: &Matching) -> bool {
        self.eval(g, m) == self.rhs()
    }

    pub fn is_satisfied(&self, g: &Graph, m: &Matching) -> bool {
        self.eval(g, m) <= self.rhs()
    }
}

/// A face of the polytope described by the inequalities tight on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub tight_set: Vec<Inequality>,
    /// Affine dimension of the tight matchings' hull; -1 for the empty face.
    pub dimension: i64,
    pub tight_matchings: Vec<Matching>,
}

/// Whether `v` qualifies for a degree facet: degree at least 3, or degree
/// exactly 2 with non-adjacent neighbors (not part of a triangle).
pub(crate) fn degree_facet_qualifies(g: &Graph, v: NodeId) -> bool {
    match g.degree(v) {
        d if d >= 3 => true,
        2 => {
            let nb = g.neighbors(v);
            !g.has_edge(nb[0], nb[1])
        }
        _ => false,
    }
}

/// The full facet list of the matching polytope of `g`, in canonical order:
/// every nonnegativity bound, the qualifying degree bounds, and a blossom
/// bound per odd set of at least 3 nodes inducing a factor-critical
/// 2-connected subgraph.
pub fn enumerate_facets(g: &Graph) -> Result<Vec<Inequality>> {
    enumerate_facets_with_limit(g, MAX_FACET_NODES)
}

pub fn enumerate_facets_with_limit(g: &Graph, max_nodes: usize) -> Result<Vec<Inequality>> {
    let n = g.node_count();
    // Hard cap independent of the caller's limit: the subset scan is 2^n.
    if n > max_nodes || n > 24 {
        return Err(Error::GuardExceeded(format!(
            "odd-set facet scan needs |V| <= {}, got {n}",
            max_nodes.min(24)
        )));
    }
    let mut out: Vec<Inequality> = (0..g.edge_count()).map(Inequality::NonNeg).collect();
    out.extend(
        (0..n)
            .filter(|&v| degree_facet_qualifies(g, v))
            .map(Inequality::Degree),
    );
    let mut odd_sets: Vec<Inequality> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size < 3 || size % 2 == 0 {
            continue;
        }
        let u: BTreeSet<NodeId> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let (sub, _) = g.induced(&u)?;
        if is_factor_critical(&sub) && is_2_connected(&sub)? {
            odd_sets.push(Inequality::OddSet(u));
        }
    }
    odd_sets.sort();
    out.extend(odd_sets);
    Ok(out)
}

/// Affine dimension of the full matching polytope; equals `|E|` for every
/// valid graph (the polytope is full-dimensional).
pub fn polytope_dimension(g: &Graph) -> Result<i64> {
    let matchings = enumerate_matchings(g)?;
    let points: Vec<Vec<i64>> = matchings.iter().map(|m| m.incidence_vector(g)).collect();
    Ok(affine_dimension(&points))
}

/// Face dimension over precomputed matchings; shared by the public entry
/// points and the rank hierarchy, which calls it in bulk.
pub(crate) fn face_dimension_in(
    g: &Graph,
    matchings: &[Matching],
    tight: &[Inequality],
) -> FaceDescriptor {
    let tight_matchings: Vec<Matching> = matchings
        .iter()
        .filter(|m| tight.iter().all(|q| q.is_tight(g, m)))
        .cloned()
        .collect();
    let points: Vec<Vec<i64>> = tight_matchings
        .iter()
        .map(|m| m.incidence_vector(g))
        .collect();
    let mut tight_set = tight.to_vec();
    tight_set.sort();
    FaceDescriptor {
        tight_set,
        dimension: affine_dimension(&points),
        tight_matchings,
    }
}

/// Collects all matchings tight on every member of `tight` and returns the
/// exact affine dimension of that face (-1 when no matching is tight).
pub fn face_dimension(g: &Graph, tight: &[Inequality]) -> Result<FaceDescriptor> {
    for q in tight {
        q.validate(g)?;
    }
    let matchings = enumerate_matchings(g)?;
    Ok(face_dimension_in(g, &matchings, tight))
}

/// True iff the face induced by `q` has dimension `|E| - 1`. Errors if some
/// matching violates `q` (then `q` is not valid for the polytope at all).
pub fn is_facet(g: &Graph, q: &Inequality) -> Result<bool> {
    q.validate(g)?;
    let matchings = enumerate_matchings(g)?;
    if let Some(bad) = matchings.iter().find(|m| !q.is_satisfied(g, m)) {
        return Err(Error::InvalidInequality(format!(
            "violated by the matching with edges {:?}",
            bad.edges(g)
        )));
    }
    let face = face_dimension_in(g, &matchings, std::slice::from_ref(q));
    Ok(face.dimension == g.edge_count() as i64 - 1)
}

/// True iff two distinct facets intersect in a ridge, a face of dimension
/// `|E| - 2`. Errors when either input is not a facet.
pub fn is_ridge_pair(g: &Graph, f: &Inequality, h: &Inequality) -> Result<bool> {
    if f == h {
        return Err(Error::InvalidInput(
            "ridge check needs two distinct facets".into(),
        ));
    }
    for q in [f, h] {
        if !is_facet(g, q)? {
            return Err(Error::NotAFacet(format!("{q:?}")));
        }
    }
    let matchings = enumerate_matchings(g)?;
    let face = face_dimension_in(g, &matchings, &[f.clone(), h.clone()]);
    Ok(face.dimension == g.edge_count() as i64 - 2)
}
