//! Minimal formulations, rank-0 facet sets, and the rank hierarchy built on
//! ridge adjacency.
//!
//! A subset F of the facet system is a minimal formulation when the integer
//! points of its relaxation are exactly the matchings (so its integer hull is
//! the whole polytope) and dropping any member admits a new, non-matching
//! integer point. Facets lying in some minimal formulation have rank 0; an
//! unranked facet enters rank r+1 as soon as it meets a facet of rank at most
//! r in a ridge. The verified claim of this crate is that the hierarchy built
//! from the standard minimal formulation stops at rank 1 on every input.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{enumerate_matchings, Graph};
use crate::polytope::{
    degree_facet_qualifies, enumerate_facets, face_dimension_in, FaceDescriptor, Inequality,
};
use crate::witness::choose_anchor;

/// Cap on the facet count for the exhaustive rank-0 scan (2^F subsets).
pub const MAX_EXHAUSTIVE_FACETS: usize = 12;

/// Cap on the integer-point enumeration box.
const MAX_BOX: u128 = 1 << 24;

/// How the rank-0 seed of a hierarchy was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum F0Mode {
    /// The standard minimal formulation: nonnegativity, degree bounds, and
    /// blossom bounds on triangles with a degree-2 node.
    Lemma,
    /// Exact rank-0 membership by scanning all facet subsets.
    Exhaustive,
    /// Caller-provided seed.
    Custom,
}

impl F0Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            F0Mode::Lemma => "lemma",
            F0Mode::Exhaustive => "exhaustive",
            F0Mode::Custom => "custom",
        }
    }
}

/// Ridge certificate for a positive-rank facet.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub partner: Inequality,
    pub ridge: FaceDescriptor,
}

/// Full rank assignment for the facet system of one graph.
#[derive(Clone, Debug)]
pub struct RankReport {
    pub f0_mode: F0Mode,
    pub rank_zero_set: BTreeSet<Inequality>,
    pub rank_of: BTreeMap<Inequality, u32>,
    pub rho: u32,
    pub certificates: BTreeMap<Inequality, Certificate>,
}

impl RankReport {
    /// Independent re-check of hierarchy soundness: every positive-rank facet
    /// carries a certificate whose partner has strictly smaller rank and
    /// whose face is a ridge.
    pub fn recheck(&self, g: &Graph) -> Result<()> {
        let matchings = enumerate_matchings(g)?;
        for (q, &r) in &self.rank_of {
            if r == 0 {
                if !self.rank_zero_set.contains(q) {
                    return Err(Error::Internal(
                        "rank-0 facet missing from the seed set".into(),
                    ));
                }
                continue;
            }
            let cert = self
                .certificates
                .get(q)
                .ok_or_else(|| Error::Internal("positive-rank facet without certificate".into()))?;
            let partner_rank = *self
                .rank_of
                .get(&cert.partner)
                .ok_or_else(|| Error::Internal("certificate partner is not a facet".into()))?;
            if partner_rank >= r {
                return Err(Error::Internal(
                    "certificate partner rank must be smaller".into(),
                ));
            }
            let face = face_dimension_in(g, &matchings, &[q.clone(), cert.partner.clone()]);
            if face.dimension != g.edge_count() as i64 - 2 {
                return Err(Error::Internal("certificate face is not a ridge".into()));
            }
        }
        if self.rank_of.values().max().copied().unwrap_or(0) != self.rho {
            return Err(Error::Internal(
                "rho must be the maximum assigned rank".into(),
            ));
        }
        Ok(())
    }
}

/// The standard minimal formulation: all nonnegativity bounds, all
/// qualifying degree bounds, and the blossom bound of every triangle with a
/// node of degree 2 in the host graph.
pub fn lemma_minimal_formulation(g: &Graph) -> BTreeSet<Inequality> {
    let mut out: BTreeSet<Inequality> = (0..g.edge_count()).map(Inequality::NonNeg).collect();
    out.extend(
        g.nodes()
            .filter(|&v| degree_facet_qualifies(g, v))
            .map(Inequality::Degree),
    );
    let n = g.node_count();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b)
                    && g.has_edge(a, c)
                    && g.has_edge(b, c)
                    && [a, b, c].iter().any(|&w| g.degree(w) == 2)
                {
                    out.insert(Inequality::OddSet([a, b, c].into_iter().collect()));
                }
            }
        }
    }
    out
}

/// Per-variable bounds of the relaxed system per the combinatorial
/// boundedness rule: below by its own nonnegativity member, above by any
/// other member that charges the edge positively.
fn bounds(g: &Graph, members: &[Inequality]) -> Option<Vec<i64>> {
    let m = g.edge_count();
    let mut lower_ok = vec![false; m];
    let mut upper: Vec<Option<i64>> = vec![None; m];
    for q in members {
        match q {
            Inequality::NonNeg(e) => lower_ok[*e] = true,
            _ => {
                let coeffs = q.coefficients(g);
                for e in 0..m {
                    if coeffs[e] > 0 {
                        upper[e] = Some(upper[e].map_or(q.rhs(), |u: i64| u.min(q.rhs())));
                    }
                }
            }
        }
    }
    if lower_ok.iter().all(|&b| b) && upper.iter().all(Option::is_some) {
        Some(upper.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

/// First integer point of the (bounded) relaxed system that is not a matching
/// incidence vector, in lexicographic order; `None` when the integer points
/// are exactly the matchings.
fn find_non_matching_point(
    g: &Graph,
    members: &[Inequality],
    upper: &[i64],
) -> Result<Option<Vec<i64>>> {
    let m = g.edge_count();
    let box_size: u128 = upper.iter().map(|&b| b as u128 + 1).product();
    if box_size > MAX_BOX {
        return Err(Error::GuardExceeded(format!(
            "integer-point box has {box_size} cells (cap {MAX_BOX})"
        )));
    }
    let coeffs: Vec<Vec<i64>> = members.iter().map(|q| q.coefficients(g)).collect();
    let rhs: Vec<i64> = members.iter().map(Inequality::rhs).collect();
    let mut x = vec![0i64; m];
    let mut sums = vec![0i64; members.len()];

    fn is_matching_vector(g: &Graph, x: &[i64]) -> bool {
        if x.iter().any(|&v| v != 0 && v != 1) {
            return false;
        }
        let mut used = vec![false; g.node_count()];
        for (e, &v) in x.iter().enumerate() {
            if v == 1 {
                let (a, b) = g.endpoints(e);
                if used[a] || used[b] {
                    return false;
                }
                used[a] = true;
                used[b] = true;
            }
        }
        true
    }

    fn dfs(
        g: &Graph,
        coeffs: &[Vec<i64>],
        rhs: &[i64],
        upper: &[i64],
        e: usize,
        x: &mut Vec<i64>,
        sums: &mut Vec<i64>,
    ) -> Option<Vec<i64>> {
        if e == x.len() {
            return if is_matching_vector(g, x) {
                None
            } else {
                Some(x.clone())
            };
        }
        for val in 0..=upper[e] {
            x[e] = val;
            let mut ok = true;
            for r in 0..coeffs.len() {
                sums[r] += coeffs[r][e] * val;
                // Coefficients are nonnegative past the NonNeg rows, so an
                // exceeded row can never recover.
                if sums[r] > rhs[r] {
                    ok = false;
                }
            }
            if ok {
                if let Some(found) = dfs(g, coeffs, rhs, upper, e + 1, x, sums) {
                    return Some(found);
                }
            }
            for r in 0..coeffs.len() {
                sums[r] -= coeffs[r][e] * val;
            }
            x[e] = 0;
        }
        None
    }

    Ok(dfs(g, &coeffs, &rhs, upper, 0, &mut x, &mut sums))
}

/// Detailed outcome of the minimal-formulation test.
#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub holds: bool,
    /// Condition (hull): integer points of the system are exactly the
    /// matchings. `false` with `unbounded` set when some coordinate escapes.
    pub hull_ok: bool,
    pub unbounded: bool,
    pub hull_violation: Option<Vec<i64>>,
    /// Members whose removal admits no new integer point (properness fails).
    pub redundant: Vec<Inequality>,
}

/// A member is properly needed iff dropping it admits an integer point that
/// is not a matching. An unbounded reduced system always does.
fn member_needed(g: &Graph, reduced: &[Inequality]) -> Result<bool> {
    match bounds(g, reduced) {
        None => Ok(true),
        Some(upper) => Ok(find_non_matching_point(g, reduced, &upper)?.is_some()),
    }
}

pub fn check_minimal_formulation(
    g: &Graph,
    fmin: &BTreeSet<Inequality>,
) -> Result<MinimalityReport> {
    let facets: BTreeSet<Inequality> = enumerate_facets(g)?.into_iter().collect();
    if !fmin.is_subset(&facets) {
        return Err(Error::InvalidInput(
            "formulation must be a subset of the facet list".into(),
        ));
    }
    check_minimal_formulation_in(g, fmin)
}

/// Internal variant without facet-list validation, for the exhaustive scan.
fn check_minimal_formulation_in(
    g: &Graph,
    fmin: &BTreeSet<Inequality>,
) -> Result<MinimalityReport> {
    let members: Vec<Inequality> = fmin.iter().cloned().collect();
    let (hull_ok, unbounded, hull_violation) = match bounds(g, &members) {
        None => (false, true, None),
        Some(upper) => match find_non_matching_point(g, &members, &upper)? {
            Some(p) => (false, false, Some(p)),
            None => (true, false, None),
        },
    };
    let mut redundant = Vec::new();
    if hull_ok {
        for drop in &members {
            let reduced: Vec<Inequality> = members.iter().filter(|q| *q != drop).cloned().collect();
            if !member_needed(g, &reduced)? {
                redundant.push(drop.clone());
            }
        }
    }
    Ok(MinimalityReport {
        holds: hull_ok && redundant.is_empty(),
        hull_ok,
        unbounded,
        hull_violation,
        redundant,
    })
}

/// Padberg's two-condition test: the integer hull of `fmin` alone is the
/// polytope, and every member is properly needed.
pub fn is_minimal_formulation(g: &Graph, fmin: &BTreeSet<Inequality>) -> Result<bool> {
    Ok(check_minimal_formulation(g, fmin)?.holds)
}

/// Rank-0 facets, either as the certified lemma set or exactly, by scanning
/// every facet subset for minimal formulations.
pub fn rank_zero_facets(g: &Graph, mode: F0Mode) -> Result<BTreeSet<Inequality>> {
    rank_zero_facets_with_limit(g, mode, MAX_EXHAUSTIVE_FACETS)
}

pub fn rank_zero_facets_with_limit(
    g: &Graph,
    mode: F0Mode,
    max_facets: usize,
) -> Result<BTreeSet<Inequality>> {
    match mode {
        F0Mode::Lemma => Ok(lemma_minimal_formulation(g)),
        F0Mode::Custom => Err(Error::InvalidInput(
            "custom mode has no computable seed".into(),
        )),
        F0Mode::Exhaustive => {
            let facets = enumerate_facets(g)?;
            // Hard cap independent of the caller's limit: 2^facets subsets.
            if facets.len() > max_facets || facets.len() > 24 {
                return Err(Error::GuardExceeded(format!(
                    "exhaustive rank-0 scan needs <= {} facets, got {}",
                    max_facets.min(24),
                    facets.len()
                )));
            }
            let mut out: BTreeSet<Inequality> = BTreeSet::new();
            for mask in 1u64..(1u64 << facets.len()) {
                let subset: BTreeSet<Inequality> = facets
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, q)| q.clone())
                    .collect();
                // Skip subsets already covered: only new members matter.
                if subset.is_subset(&out) {
                    continue;
                }
                if check_minimal_formulation_in(g, &subset)?.holds {
                    out.extend(subset);
                }
            }
            Ok(out)
        }
    }
}

/// Builds the rank hierarchy from the given rank-0 seed: round by round,
/// every unranked facet with a ridge to some already-ranked facet receives
/// the next rank. The certificate partner is the smallest ranked facet in
/// canonical order forming a ridge.
pub fn rank_hierarchy(g: &Graph, f0: &BTreeSet<Inequality>) -> Result<RankReport> {
    rank_hierarchy_with_mode(g, f0, F0Mode::Custom)
}

fn rank_hierarchy_with_mode(
    g: &Graph,
    f0: &BTreeSet<Inequality>,
    mode: F0Mode,
) -> Result<RankReport> {
    if f0.is_empty() {
        return Err(Error::InvalidInput("rank-0 seed must be nonempty".into()));
    }
    let facets = enumerate_facets(g)?;
    let facet_set: BTreeSet<Inequality> = facets.iter().cloned().collect();
    if let Some(bad) = f0.iter().find(|q| !facet_set.contains(q)) {
        return Err(Error::NotAFacet(format!("{bad:?}")));
    }
    let matchings = enumerate_matchings(g)?;
    let mut rank_of: BTreeMap<Inequality, u32> = f0.iter().map(|q| (q.clone(), 0)).collect();
    let mut certificates: BTreeMap<Inequality, Certificate> = BTreeMap::new();
    let mut rho = 0u32;
    loop {
        let unranked: Vec<&Inequality> =
            facets.iter().filter(|q| !rank_of.contains_key(q)).collect();
        if unranked.is_empty() {
            break;
        }
        let round = rho + 1;
        let mut added: Vec<(Inequality, Certificate)> = Vec::new();
        for q in unranked {
            // Scan ranked facets in canonical order; the first ridge partner
            // is the certificate.
            let hit = facets
                .iter()
                .filter(|h| rank_of.contains_key(*h))
                .find_map(|h| {
                    let face = face_dimension_in(g, &matchings, &[q.clone(), h.clone()]);
                    (face.dimension == g.edge_count() as i64 - 2).then(|| Certificate {
                        partner: h.clone(),
                        ridge: face,
                    })
                });
            if let Some(cert) = hit {
                added.push((q.clone(), cert));
            }
        }
        if added.is_empty() {
            let unranked_count = facets.len() - rank_of.len();
            return Err(Error::HierarchyIncomplete {
                unranked: unranked_count,
            });
        }
        for (q, cert) in added {
            rank_of.insert(q.clone(), round);
            certificates.insert(q, cert);
        }
        rho = round;
    }
    Ok(RankReport {
        f0_mode: mode,
        rank_zero_set: f0.clone(),
        rank_of,
        rho,
        certificates,
    })
}

/// Hierarchy seeded by the requested rank-0 mode.
pub fn rank_report(g: &Graph, mode: F0Mode, max_exhaustive: usize) -> Result<RankReport> {
    let f0 = rank_zero_facets_with_limit(g, mode, max_exhaustive)?;
    rank_hierarchy_with_mode(g, &f0, mode)
}

/// Runs the hierarchy from the lemma seed and checks the headline claim:
/// every facet is ranked, the maximum rank is at most 1, and every rank-1
/// facet (always a blossom bound) meets the degree facet of its anchor node
/// in a ridge. Certificates of rank-1 facets are rewritten to that anchor
/// pairing.
pub fn verify_rank_at_most_one(g: &Graph) -> Result<RankReport> {
    let f0 = lemma_minimal_formulation(g);
    let mut report = rank_hierarchy_with_mode(g, &f0, F0Mode::Lemma)?;
    if report.rho > 1 {
        return Err(Error::VerificationFailed(format!(
            "rank hierarchy reaches {} (> 1)",
            report.rho
        )));
    }
    let matchings = enumerate_matchings(g)?;
    let rank_one: Vec<Inequality> = report
        .rank_of
        .iter()
        .filter(|(_, &r)| r == 1)
        .map(|(q, _)| q.clone())
        .collect();
    for q in rank_one {
        let Inequality::OddSet(u) = &q else {
            return Err(Error::Internal(
                "only blossom facets can sit outside the lemma formulation".into(),
            ));
        };
        let (anchor, _) = choose_anchor(g, u)?;
        let partner = Inequality::Degree(anchor);
        if report.rank_of.get(&partner) != Some(&0) {
            return Err(Error::Internal(
                "anchor degree facet must have rank 0".into(),
            ));
        }
        let face = face_dimension_in(g, &matchings, &[q.clone(), partner.clone()]);
        if face.dimension != g.edge_count() as i64 - 2 {
            return Err(Error::VerificationFailed(format!(
                "blossom facet {q:?} forms no ridge with its anchor degree facet {partner:?}"
            )));
        }
        report.certificates.insert(
            q,
            Certificate {
                partner,
                ridge: face,
            },
        );
    }
    Ok(report)
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

    fn paw() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn lemma_sets() {
        // C4: all 8 facets.
        assert_eq!(lemma_minimal_formulation(&cycle(4)).len(), 8);
        // C5: 10 facets, the blossom over all nodes excluded.
        let f = lemma_minimal_formulation(&cycle(5));
        assert_eq!(f.len(), 10);
        assert!(!f.contains(&Inequality::odd_set(0..5).unwrap()));
        // Paw: the triangle keeps two degree-2 nodes, so its blossom is in.
        let f = lemma_minimal_formulation(&paw());
        assert!(f.contains(&Inequality::odd_set(0..3).unwrap()));
        assert!(f.contains(&Inequality::Degree(0)));
        assert_eq!(f.len(), 6);
        // K3 standalone: every node has degree 2.
        let f = lemma_minimal_formulation(&complete(3));
        assert!(f.contains(&Inequality::odd_set(0..3).unwrap()));
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn minimality_of_c4() {
        let c4 = cycle(4);
        let all: BTreeSet<Inequality> = enumerate_facets(&c4).unwrap().into_iter().collect();
        assert!(is_minimal_formulation(&c4, &all).unwrap());

        // Dropping any degree bound admits two edges at that node.
        let mut reduced = all.clone();
        reduced.remove(&Inequality::Degree(0));
        let rep = check_minimal_formulation(&c4, &reduced).unwrap();
        assert!(!rep.holds && !rep.hull_ok && !rep.unbounded);
        let p = rep.hull_violation.unwrap();
        // Lexicographically first violation: both edges at node 0 picked.
        assert_eq!(p, vec![1, 1, 0, 0]);

        // Dropping a nonnegativity bound unbinds the box.
        let mut reduced = all.clone();
        reduced.remove(&Inequality::NonNeg(0));
        let rep = check_minimal_formulation(&c4, &reduced).unwrap();
        assert!(!rep.holds && rep.unbounded);
    }

    #[test]
    fn minimality_of_lemma_sets() {
        for g in [complete(3), cycle(4), cycle(5), paw(), complete(4)] {
            let fmin = lemma_minimal_formulation(&g);
            let rep = check_minimal_formulation(&g, &fmin).unwrap();
            assert!(rep.holds, "lemma set must be minimal: {rep:?}");
        }
    }

    #[test]
    fn exhaustive_rank_zero() {
        // C4: every facet is required, so all 8 are rank 0.
        let c4 = cycle(4);
        let f0 = rank_zero_facets(&c4, F0Mode::Exhaustive).unwrap();
        assert_eq!(f0.len(), 8);
        assert_eq!(f0, rank_zero_facets(&c4, F0Mode::Lemma).unwrap());

        // K3: the lemma set is the whole facet list and is exact.
        let k3 = complete(3);
        let f0 = rank_zero_facets(&k3, F0Mode::Exhaustive).unwrap();
        assert_eq!(f0, rank_zero_facets(&k3, F0Mode::Lemma).unwrap());
        assert_eq!(f0.len(), 4);

        // C5: frozen outcome of the exhaustive scan; the blossom over all
        // five nodes joins no minimal formulation, so both modes agree.
        let c5 = cycle(5);
        let f0 = rank_zero_facets(&c5, F0Mode::Exhaustive).unwrap();
        assert_eq!(f0, rank_zero_facets(&c5, F0Mode::Lemma).unwrap());
        assert_eq!(f0.len(), 10);

        // Guard: K5 has 26 facets.
        assert!(matches!(
            rank_zero_facets(&complete(5), F0Mode::Exhaustive),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn hierarchy_on_small_graphs() {
        let c4 = cycle(4);
        let rep = rank_report(&c4, F0Mode::Lemma, MAX_EXHAUSTIVE_FACETS).unwrap();
        assert_eq!(rep.rho, 0);
        rep.recheck(&c4).unwrap();

        let c5 = cycle(5);
        let rep = rank_report(&c5, F0Mode::Lemma, MAX_EXHAUSTIVE_FACETS).unwrap();
        assert_eq!(rep.rho, 1);
        let blossom = Inequality::odd_set(0..5).unwrap();
        assert_eq!(rep.rank_of[&blossom], 1);
        // Smallest canonical ridge partner is the degree bound at node 0.
        assert_eq!(rep.certificates[&blossom].partner, Inequality::Degree(0));
        rep.recheck(&c5).unwrap();

        let k3 = complete(3);
        let rep = rank_report(&k3, F0Mode::Lemma, MAX_EXHAUSTIVE_FACETS).unwrap();
        assert_eq!(rep.rho, 0);
    }

    #[test]
    fn verify_examples() {
        assert_eq!(verify_rank_at_most_one(&cycle(4)).unwrap().rho, 0);

        let c5 = cycle(5);
        let rep = verify_rank_at_most_one(&c5).unwrap();
        assert_eq!(rep.rho, 1);
        assert_eq!(rep.certificates.len(), 1);
        rep.recheck(&c5).unwrap();

        let k5 = complete(5);
        let rep = verify_rank_at_most_one(&k5).unwrap();
        assert_eq!(rep.rho, 1);
        // All 10 triangles and the 5-node blossom sit at rank 1.
        let rank1 = rep.rank_of.values().filter(|&&r| r == 1).count();
        assert_eq!(rank1, 11);
        rep.recheck(&k5).unwrap();
    }

    #[test]
    fn hierarchy_monotone_in_seed() {
        let c5 = cycle(5);
        let lemma = lemma_minimal_formulation(&c5);
        let small = rank_hierarchy(&c5, &lemma).unwrap();
        let mut bigger = lemma.clone();
        bigger.insert(Inequality::odd_set(0..5).unwrap());
        let big = rank_hierarchy(&c5, &bigger).unwrap();
        assert!(big.rho <= small.rho);
        for (q, r) in &big.rank_of {
            assert!(r <= &small.rank_of[q]);
        }
    }

    #[test]
    fn hierarchy_rejects_bad_seed() {
        let c5 = cycle(5);
        assert!(rank_hierarchy(&c5, &BTreeSet::new()).is_err());
        let bad: BTreeSet<Inequality> = [Inequality::Degree(0), Inequality::NonNeg(99)]
            .into_iter()
            .collect();
        assert!(matches!(
            rank_hierarchy(&c5, &bad),
            Err(Error::NotAFacet(_))
        ));
    }
}
