//! Independent decompositions via the coordinate graph.
//!
//! Pick a basis among the reaction vectors (rows of `Nᵀ`), write every other
//! reaction vector in that basis, and join two basis vertices whenever some
//! reaction uses both with nonzero coefficients. A nontrivial independent
//! decomposition exists iff this graph is disconnected; its components, each
//! together with the reactions living in their span, give one.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::analysis::reactions_rank;
use crate::error::{Error, Result};
use crate::graph::undirected_components;
use crate::linalg::{
    coordinates, rank, select_basis_rows, BasisSelection, Rational, RationalMatrix,
};
use crate::model::Network;

/// `Nᵀ`: one row per reaction vector, in reaction order.
pub fn reaction_vector_matrix(net: &Network) -> RationalMatrix {
    net.stoichiometric_matrix().transpose()
}

/// Greedy basis of the reaction vectors, lowest reaction index first.
pub fn greedy_basis(net: &Network) -> BasisSelection {
    select_basis_rows(&reaction_vector_matrix(net))
}

/// Validated basis from reaction names; the names may be given in any
/// order.
pub fn basis_from_names(net: &Network, names: &[&str]) -> Result<BasisSelection> {
    let mut rows = Vec::with_capacity(names.len());
    for name in names {
        let j = net
            .reaction_index(name)
            .ok_or_else(|| Error::InvalidBasis(format!("unknown reaction `{name}`")))?;
        rows.push(j);
    }
    rows.sort_unstable();
    if rows.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidBasis("reaction listed twice".into()));
    }
    BasisSelection::from_rows(&reaction_vector_matrix(net), rows)
}

/// A non-basis reaction vector written in the basis:
/// `R_reaction = Σ_v coefficients[v] · basis[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub reaction: usize,
    pub coefficients: Vec<Rational>,
}

impl Relation {
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(v, _)| v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateGraph {
    /// Reaction index of each vertex, in basis order.
    basis: Vec<usize>,
    vertex_labels: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
    relations: Vec<Relation>,
}

impl CoordinateGraph {
    pub fn vertex_count(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_reactions(&self) -> &[usize] {
        &self.basis
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// One relation per non-basis reaction, in reaction order.
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() <= 1
    }
}

pub fn build_coordinate_graph(net: &Network, basis: &BasisSelection) -> Result<CoordinateGraph> {
    let nt = reaction_vector_matrix(net);
    let rows = basis.basis_rows();
    if rows.iter().any(|&i| i >= nt.rows()) {
        return Err(Error::InvalidBasis(
            "basis does not belong to this network".into(),
        ));
    }
    let basis_vectors: Vec<&[Rational]> = rows.iter().map(|&i| nt.row(i)).collect();
    let mut edges = BTreeSet::new();
    let mut relations = Vec::new();
    for k in (0..nt.rows()).filter(|&k| !basis.contains(k)) {
        let coefficients = coordinates(nt.row(k), &basis_vectors)?;
        let relation = Relation {
            reaction: k,
            coefficients,
        };
        let support: Vec<usize> = relation.support().collect();
        for (a, &i) in support.iter().enumerate() {
            for &j in &support[a + 1..] {
                edges.insert((i, j));
            }
        }
        relations.push(relation);
    }
    Ok(CoordinateGraph {
        basis: rows.to_vec(),
        vertex_labels: rows.iter().map(|&j| net.reaction_name(j)).collect(),
        edges,
        relations,
    })
}

/// Vertex sets of the components, ordered by smallest vertex.
pub fn connected_components(g: &CoordinateGraph) -> Vec<Vec<usize>> {
    undirected_components(g.vertex_count(), g.edges.iter().copied())
}

/// A partition of the reaction indices with the rank of each part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decomposition {
    parts: Vec<Vec<usize>>,
    part_ranks: Vec<usize>,
}

impl Decomposition {
    /// Validates `parts` as a partition of all reactions of `net` and
    /// computes the part ranks.
    pub fn new(net: &Network, parts: Vec<Vec<usize>>) -> Result<Self> {
        let parts = normalize_partition(parts, Some(net.reaction_count()))?;
        let part_ranks = parts.iter().map(|p| reactions_rank(net, p)).collect();
        Ok(Self { parts, part_ranks })
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<Vec<usize>>, part_ranks: Vec<usize>) -> Self {
        Self { parts, part_ranks }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_ranks(&self) -> &[usize] {
        &self.part_ranks
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn labels(&self, net: &Network) -> Vec<Vec<String>> {
        self.parts
            .iter()
            .map(|p| p.iter().map(|&j| net.reaction_name(j)).collect())
            .collect()
    }
}

/// Sorts each part, orders parts by smallest element, and checks for empty
/// parts and overlaps. With `universe = Some(r)` the parts must cover
/// exactly `0..r`.
pub fn normalize_partition(
    parts: Vec<Vec<usize>>,
    universe: Option<usize>,
) -> Result<Vec<Vec<usize>>> {
    let mut parts: Vec<Vec<usize>> = parts
        .into_iter()
        .map(|mut p| {
            p.sort_unstable();
            p
        })
        .collect();
    if parts.is_empty() {
        return Err(Error::Partition("no parts".into()));
    }
    if parts.iter().any(Vec::is_empty) {
        return Err(Error::Partition("empty part".into()));
    }
    let mut seen = BTreeSet::new();
    for p in &parts {
        for &j in p {
            if !seen.insert(j) {
                return Err(Error::Partition(format!(
                    "reaction index {j} appears twice"
                )));
            }
        }
    }
    if let Some(r) = universe {
        if let Some(&j) = seen.iter().find(|&&j| j >= r) {
            return Err(Error::Partition(format!("reaction index {j} out of range")));
        }
        if seen.len() != r {
            let missing = (0..r).find(|j| !seen.contains(j)).unwrap_or(0);
            return Err(Error::Partition(format!(
                "reaction index {missing} is not covered"
            )));
        }
    }
    parts.sort_by_key(|p| p[0]);
    Ok(parts)
}

/// The partition induced by the coordinate graph of `basis`: one part per
/// component. A connected graph yields the single trivial part.
pub fn component_partition(net: &Network, graph: &CoordinateGraph) -> Vec<Vec<usize>> {
    let comps = connected_components(graph);
    let mut comp_of_vertex = vec![0; graph.vertex_count()];
    for (c, vs) in comps.iter().enumerate() {
        for &v in vs {
            comp_of_vertex[v] = c;
        }
    }
    let mut part_of = vec![usize::MAX; net.reaction_count()];
    for (v, &j) in graph.basis.iter().enumerate() {
        part_of[j] = comp_of_vertex[v];
    }
    for rel in &graph.relations {
        // All nonzero coordinates share a component, so the first decides.
        let v = rel
            .support()
            .next()
            .expect("nonzero reaction vector has a nonzero coordinate");
        part_of[rel.reaction] = comp_of_vertex[v];
    }
    let mut parts = vec![Vec::new(); comps.len()];
    for (j, &c) in part_of.iter().enumerate() {
        parts[c].push(j);
    }
    parts.sort_by_key(|p| p[0]);
    parts
}

/// The finest independent decomposition reachable from the greedy basis, or
/// `None` when only the trivial decomposition exists.
pub fn find_independent_decomposition(net: &Network) -> Result<Option<Decomposition>> {
    find_independent_decomposition_with_basis(net, &greedy_basis(net))
}

pub fn find_independent_decomposition_with_basis(
    net: &Network,
    basis: &BasisSelection,
) -> Result<Option<Decomposition>> {
    let graph = build_coordinate_graph(net, basis)?;
    if graph.is_connected() {
        return Ok(None);
    }
    let parts = component_partition(net, &graph);
    let report = verify_decomposition(net, &parts)?;
    if !report.independent {
        return Err(Error::Internal(format!(
            "component partition is not independent: rank {} vs part ranks {:?}",
            report.network_rank, report.part_ranks
        )));
    }
    Ok(Some(Decomposition::from_parts_unchecked(
        parts,
        report.part_ranks,
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub network_rank: usize,
    pub part_ranks: Vec<usize>,
    pub independent: bool,
    pub incidence_network_rank: usize,
    pub incidence_part_ranks: Vec<usize>,
    pub incidence_independent: bool,
}

impl IndependenceReport {
    /// e.g. `4 = 2 + 2` or `2 != 1 + 1 + 1`.
    pub fn rank_equation(&self) -> String {
        equation(self.network_rank, &self.part_ranks)
    }

    pub fn incidence_rank_equation(&self) -> String {
        equation(self.incidence_network_rank, &self.incidence_part_ranks)
    }
}

fn equation(total: usize, parts: &[usize]) -> String {
    let sum: usize = parts.iter().sum();
    let terms: Vec<String> = parts.iter().map(ToString::to_string).collect();
    let op = if sum == total { "=" } else { "!=" };
    format!("{total} {op} {}", terms.join(" + "))
}

/// Rank bookkeeping for a user-supplied partition. Parts are reported in
/// canonical order (by smallest reaction index).
pub fn verify_decomposition(net: &Network, parts: &[Vec<usize>]) -> Result<IndependenceReport> {
    let parts = normalize_partition(parts.to_vec(), Some(net.reaction_count()))?;
    let n = net.stoichiometric_matrix();
    let ia = net.incidence_matrix();
    let network_rank = rank(&n);
    let part_ranks: Vec<usize> = parts.iter().map(|p| rank(&n.select_columns(p))).collect();
    let incidence_network_rank = rank(&ia);
    let incidence_part_ranks = parts
        .iter()
        .map(|p| Ok(rank(&net.subnetwork(p)?.incidence_matrix())))
        .collect::<Result<Vec<_>>>()?;
    Ok(IndependenceReport {
        network_rank,
        independent: part_ranks.iter().sum::<usize>() == network_rank,
        part_ranks,
        incidence_network_rank,
        incidence_independent: incidence_part_ranks.iter().sum::<usize>() == incidence_network_rank,
        incidence_part_ranks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionRelation {
    /// The first partition refines the second.
    Refinement,
    /// The first partition coarsens the second.
    Coarsening,
    Equal,
    Incomparable,
}

pub fn refine_or_coarsen_check(a: &[Vec<usize>], b: &[Vec<usize>]) -> Result<PartitionRelation> {
    let a = normalize_partition(a.to_vec(), None)?;
    let b = normalize_partition(b.to_vec(), None)?;
    let universe = |p: &[Vec<usize>]| p.iter().flatten().copied().collect::<BTreeSet<_>>();
    if universe(&a) != universe(&b) {
        return Err(Error::MismatchedReactionSet);
    }
    let a_refines = refines(&a, &b);
    let b_refines = refines(&b, &a);
    Ok(match (a_refines, b_refines) {
        (true, true) => PartitionRelation::Equal,
        (true, false) => PartitionRelation::Refinement,
        (false, true) => PartitionRelation::Coarsening,
        (false, false) => PartitionRelation::Incomparable,
    })
}

/// Every part of `fine` lies inside a single part of `coarse`.
fn refines(fine: &[Vec<usize>], coarse: &[Vec<usize>]) -> bool {
    let owner: std::collections::HashMap<usize, usize> = coarse
        .iter()
        .enumerate()
        .flat_map(|(k, p)| p.iter().map(move |&j| (j, k)))
        .collect();
    fine.iter()
        .all(|p| p.iter().all(|j| owner[j] == owner[&p[0]]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_network;

    #[test]
    fn independent_vectors_give_edgeless_graph() {
        let net = parse_network("R1: 0 -> A\nR2: A -> B\nR3: B -> C").unwrap();
        let g = build_coordinate_graph(&net, &greedy_basis(&net)).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(g.edges().is_empty());
        assert!(g.relations().is_empty());
        assert_eq!(connected_components(&g), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn reversible_pair_is_trivial_only() {
        let net = parse_network("R1: X1 -> X2\nR2: X2 -> X1").unwrap();
        assert_eq!(find_independent_decomposition(&net).unwrap(), None);
    }

    #[test]
    fn two_independent_reactions_split() {
        let net = parse_network("R1: 2X1 -> X2\nR2: X2 -> X3").unwrap();
        let d = find_independent_decomposition(&net).unwrap().unwrap();
        assert_eq!(d.parts(), &[vec![0], vec![1]]);
        assert_eq!(d.part_ranks(), &[1, 1]);
    }

    #[test]
    fn duplicate_vector_joins_its_basis_vertex() {
        // R3 repeats R1's vector through a catalyst.
        let net = parse_network("R1: A -> B\nR2: C -> 0\nR3: A + D -> B + D").unwrap();
        let d = find_independent_decomposition(&net).unwrap().unwrap();
        assert_eq!(d.parts(), &[vec![0, 2], vec![1]]);
    }

    #[test]
    fn chain_through_zero_is_connected() {
        let net = parse_network("R1: 0 -> A\nR2: A -> B\nR3: B -> 0").unwrap();
        let g = build_coordinate_graph(&net, &greedy_basis(&net)).unwrap();
        assert!(g.is_connected());
        assert_eq!(find_independent_decomposition(&net).unwrap(), None);
    }

    #[test]
    fn verify_rejects_bad_partitions() {
        let net = parse_network("R1: A -> B\nR2: B -> C\nR3: C -> A").unwrap();
        for parts in [
            vec![vec![0, 1], vec![1, 2]],
            vec![vec![0, 1]],
            vec![vec![0, 1, 2], vec![]],
            vec![vec![0, 1, 2, 3]],
            vec![],
        ] {
            assert!(
                matches!(verify_decomposition(&net, &parts), Err(Error::Partition(_))),
                "{parts:?}"
            );
        }
    }

    #[test]
    fn trivial_partition_is_independent() {
        let net = parse_network("R1: A -> B\nR2: B -> C\nR3: C -> A").unwrap();
        let rep = verify_decomposition(&net, &[vec![2, 0, 1]]).unwrap();
        assert!(rep.independent && rep.incidence_independent);
        assert_eq!(rep.rank_equation(), "2 = 2");
    }

    #[test]
    fn dependent_split_of_a_cycle() {
        let net = parse_network("R1: A -> B\nR2: B -> C\nR3: C -> A").unwrap();
        let rep = verify_decomposition(&net, &[vec![0], vec![1, 2]]).unwrap();
        assert!(!rep.independent);
        assert_eq!(rep.rank_equation(), "2 != 1 + 2");
    }

    #[test]
    fn refinement_relations() {
        use PartitionRelation::*;
        let a = vec![vec![0], vec![1], vec![2]];
        let b = vec![vec![0], vec![1, 2]];
        assert_eq!(refine_or_coarsen_check(&a, &b).unwrap(), Refinement);
        assert_eq!(refine_or_coarsen_check(&b, &a).unwrap(), Coarsening);
        assert_eq!(
            refine_or_coarsen_check(&b, &[vec![2, 1], vec![0]]).unwrap(),
            Equal
        );
        assert_eq!(
            refine_or_coarsen_check(&[vec![0, 1], vec![2]], &[vec![0, 2], vec![1]]).unwrap(),
            Incomparable
        );
        assert_eq!(
            refine_or_coarsen_check(&[vec![0, 1]], &[vec![0], vec![2]]),
            Err(Error::MismatchedReactionSet)
        );
        assert!(matches!(
            refine_or_coarsen_check(&[vec![0, 1], vec![1]], &[vec![0, 1]]),
            Err(Error::Partition(_))
        ));
    }

    #[test]
    fn basis_from_names_validates() {
        let net = parse_network("R1: A -> B\nR2: B -> A\nR3: B -> C").unwrap();
        assert_eq!(
            basis_from_names(&net, &["R3", "R1"]).unwrap().basis_rows(),
            &[0, 2]
        );
        assert_eq!(
            basis_from_names(&net, &["R1", "R2", "R3"]),
            Err(Error::DependentBasis)
        );
        assert!(matches!(
            basis_from_names(&net, &["R9"]),
            Err(Error::InvalidBasis(_))
        ));
        assert!(matches!(
            basis_from_names(&net, &["R1", "R1"]),
            Err(Error::InvalidBasis(_))
        ));
    }
}
