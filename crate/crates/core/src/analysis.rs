//! Structural network numbers and the deficiency-theorem checks.

use serde::{Deserialize, Serialize};

use crate::graph::{strongly_connected_components, undirected_components};
use crate::linalg::rank;
use crate::model::Network;

/// Connected components of the undirected reaction graph on complexes.
pub fn linkage_classes(net: &Network) -> Vec<Vec<usize>> {
    undirected_components(
        net.complex_count(),
        net.reactions().iter().map(|r| (r.reactant, r.product)),
    )
}

fn adjacency(net: &Network) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); net.complex_count()];
    for r in net.reactions() {
        adj[r.reactant].push(r.product);
    }
    adj
}

/// Strongly connected components of the directed reaction graph.
pub fn strong_linkage_classes(net: &Network) -> Vec<Vec<usize>> {
    strongly_connected_components(&adjacency(net))
}

/// Strong linkage classes with no reaction leaving them.
pub fn terminal_strong_linkage_classes(net: &Network) -> Vec<Vec<usize>> {
    let sccs = strong_linkage_classes(net);
    let mut comp_of = vec![0; net.complex_count()];
    for (k, c) in sccs.iter().enumerate() {
        for &v in c {
            comp_of[v] = k;
        }
    }
    let mut has_exit = vec![false; sccs.len()];
    for r in net.reactions() {
        if comp_of[r.reactant] != comp_of[r.product] {
            has_exit[comp_of[r.reactant]] = true;
        }
    }
    sccs.into_iter()
        .zip(has_exit)
        .filter_map(|(c, exit)| (!exit).then_some(c))
        .collect()
}

/// Dimension of the stoichiometric subspace.
pub fn network_rank(net: &Network) -> usize {
    rank(&net.stoichiometric_matrix())
}

/// Rank of the span of the given reactions' vectors.
pub fn reactions_rank(net: &Network, reactions: &[usize]) -> usize {
    if reactions.is_empty() {
        return 0;
    }
    rank(&net.stoichiometric_matrix().select_columns(reactions))
}

/// The row set of the network tables plus the graph counts
/// needed for the theorem checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkNumbers {
    pub species: usize,
    pub complexes: usize,
    pub reactions: usize,
    pub irreversible_reactions: usize,
    pub linkage_classes: usize,
    pub strong_linkage_classes: usize,
    pub terminal_strong_linkage_classes: usize,
    #[serde(rename = "rank_of_network")]
    pub rank: usize,
    pub deficiency: usize,
    pub weakly_reversible: bool,
}

impl NetworkNumbers {
    /// `(m, n, r, irreversible, l, s, δ)`, the column order of the tables.
    pub fn table_column(&self) -> [usize; 7] {
        [
            self.species,
            self.complexes,
            self.reactions,
            self.irreversible_reactions,
            self.linkage_classes,
            self.rank,
            self.deficiency,
        ]
    }
}

pub fn network_numbers(net: &Network) -> NetworkNumbers {
    let n = net.complex_count();
    let l = linkage_classes(net).len();
    let sl = strong_linkage_classes(net).len();
    let t = terminal_strong_linkage_classes(net).len();
    let s = network_rank(net);
    // n - l equals rank(I_a) and s <= rank(I_a), so this cannot underflow.
    let deficiency = n - l - s;
    let irreversible = (0..net.reaction_count())
        .filter(|&j| !net.is_reversible(j))
        .count();
    NetworkNumbers {
        species: net.species_count(),
        complexes: n,
        reactions: net.reaction_count(),
        irreversible_reactions: irreversible,
        linkage_classes: l,
        strong_linkage_classes: sl,
        terminal_strong_linkage_classes: t,
        rank: s,
        deficiency,
        weakly_reversible: sl == l,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    DeficiencyZero,
    DeficiencyOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    /// No positive steady state for any kinetics.
    NoPositiveSteadyState,
    /// At most one positive steady state per positive stoichiometric
    /// compatibility class (mass action, any rate constants).
    AtMostOneSteadyStatePerClass,
    /// Exactly one positive steady state per positive compatibility class
    /// (mass action, any rate constants).
    ExactlyOnePerClass,
    NotApplicable,
}

impl Conclusion {
    pub fn describe(self) -> &'static str {
        match self {
            Conclusion::NoPositiveSteadyState => {
                "for arbitrary kinetics: no positive steady state and no cyclic composition trajectory through a positive composition"
            }
            Conclusion::AtMostOneSteadyStatePerClass => {
                "mass action, any rate constants: at most one steady state in each positive stoichiometric compatibility class"
            }
            Conclusion::ExactlyOnePerClass => {
                "mass action, any rate constants: exactly one steady state in each positive stoichiometric compatibility class (asymptotically stable; no nontrivial positive cyclic trajectory, not computed)"
            }
            Conclusion::NotApplicable => "theorem does not apply",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

impl Condition {
    fn new(name: impl Into<String>, holds: bool) -> Self {
        Self {
            name: name.into(),
            holds,
        }
    }
}

/// Outcome of a structural deficiency-theorem check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyVerdict {
    pub theorem: Theorem,
    pub applicable: bool,
    pub conditions: Vec<Condition>,
    pub conclusion: Conclusion,
}

pub fn deficiency_zero_check(net: &Network) -> DeficiencyVerdict {
    let numbers = network_numbers(net);
    let zero = numbers.deficiency == 0;
    let wr = numbers.weakly_reversible;
    let conclusion = match (zero, wr) {
        (false, _) => Conclusion::NotApplicable,
        (true, false) => Conclusion::NoPositiveSteadyState,
        (true, true) => Conclusion::ExactlyOnePerClass,
    };
    DeficiencyVerdict {
        theorem: Theorem::DeficiencyZero,
        applicable: zero,
        conditions: vec![
            Condition::new("deficiency is zero", zero),
            Condition::new("weakly reversible", wr),
        ],
        conclusion,
    }
}

/// Per-linkage-class deficiencies `n_θ - 1 - s_θ`, where `s_θ` is the rank
/// of the reactions whose complexes lie in class θ.
pub fn linkage_class_deficiencies(net: &Network) -> Vec<usize> {
    let classes = linkage_classes(net);
    let mut class_of = vec![0; net.complex_count()];
    for (k, c) in classes.iter().enumerate() {
        for &v in c {
            class_of[v] = k;
        }
    }
    let mut reactions = vec![Vec::new(); classes.len()];
    for (j, r) in net.reactions().iter().enumerate() {
        reactions[class_of[r.reactant]].push(j);
    }
    classes
        .iter()
        .zip(&reactions)
        .map(|(c, rs)| c.len() - 1 - reactions_rank(net, rs))
        .collect()
}

pub fn deficiency_one_check(net: &Network) -> DeficiencyVerdict {
    let numbers = network_numbers(net);
    let classes = linkage_classes(net);
    let terminal = terminal_strong_linkage_classes(net);
    let mut class_of = vec![0; net.complex_count()];
    for (k, c) in classes.iter().enumerate() {
        for &v in c {
            class_of[v] = k;
        }
    }
    let mut terminal_per_class = vec![0usize; classes.len()];
    for t in &terminal {
        terminal_per_class[class_of[t[0]]] += 1;
    }
    let deficiencies = linkage_class_deficiencies(net);

    let one_terminal = terminal_per_class.iter().all(|&k| k == 1);
    let each_at_most_one = deficiencies.iter().all(|&d| d <= 1);
    let sum_matches = deficiencies.iter().sum::<usize>() == numbers.deficiency;
    let applicable = one_terminal && each_at_most_one && sum_matches;
    let conclusion = match (applicable, numbers.weakly_reversible) {
        (false, _) => Conclusion::NotApplicable,
        (true, false) => Conclusion::AtMostOneSteadyStatePerClass,
        (true, true) => Conclusion::ExactlyOnePerClass,
    };
    let listed: Vec<String> = deficiencies.iter().map(ToString::to_string).collect();
    DeficiencyVerdict {
        theorem: Theorem::DeficiencyOne,
        applicable,
        conditions: vec![
            Condition::new(
                "each linkage class has exactly one terminal strong linkage class",
                one_terminal,
            ),
            Condition::new(
                format!(
                    "linkage class deficiencies [{}] are each at most 1",
                    listed.join(", ")
                ),
                each_at_most_one,
            ),
            Condition::new(
                format!(
                    "linkage class deficiencies sum to the network deficiency {}",
                    numbers.deficiency
                ),
                sum_matches,
            ),
            Condition::new("weakly reversible", numbers.weakly_reversible),
        ],
        conclusion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_network;

    const INFLUENZA: &str = "R1: T + V -> I + V\nR2: I -> 0\nR3: I -> I + V\nR4: V -> 0";

    #[test]
    fn strong_classes_small_cases() {
        let rev = parse_network("R1: X1 -> X2\nR2: X2 -> X1").unwrap();
        assert_eq!(strong_linkage_classes(&rev), vec![vec![0, 1]]);
        assert_eq!(terminal_strong_linkage_classes(&rev), vec![vec![0, 1]]);
        let one_way = parse_network("A -> B").unwrap();
        assert_eq!(strong_linkage_classes(&one_way), vec![vec![0], vec![1]]);
        let chain = parse_network("A -> B\nB -> C").unwrap();
        assert_eq!(terminal_strong_linkage_classes(&chain), vec![vec![2]]);
    }

    #[test]
    fn influenza_graph_structure() {
        // Complexes in order: T+V, I+V, I, 0, V. Reachability by hand:
        // T+V -> I+V, I -> 0, I -> I+V, V -> 0; no cycles, sinks I+V and 0.
        let net = parse_network(INFLUENZA).unwrap();
        assert_eq!(linkage_classes(&net).len(), 1);
        assert_eq!(strong_linkage_classes(&net).len(), 5);
        assert_eq!(
            terminal_strong_linkage_classes(&net),
            vec![vec![1], vec![3]]
        );
        let nn = network_numbers(&net);
        assert_eq!(nn.table_column(), [3, 5, 4, 4, 1, 3, 1]);
        assert!(!nn.weakly_reversible);
    }

    #[test]
    fn influenza_deficiency_one_conditions() {
        // One linkage class of 5 complexes with rank 3: δ_θ = 5 - 1 - 3 = 1,
        // which sums to δ = 1, but there are two terminal classes.
        let net = parse_network(INFLUENZA).unwrap();
        assert_eq!(linkage_class_deficiencies(&net), vec![1]);
        let v = deficiency_one_check(&net);
        let holds: Vec<bool> = v.conditions.iter().map(|c| c.holds).collect();
        assert_eq!(holds, [false, true, true, false]);
        assert!(!v.applicable);
        assert_eq!(v.conclusion, Conclusion::NotApplicable);
    }

    #[test]
    fn reversible_pair_is_deficiency_zero_and_one() {
        let net = parse_network("R1: A <-> B").unwrap();
        let nn = network_numbers(&net);
        assert_eq!((nn.deficiency, nn.irreversible_reactions), (0, 0));
        assert!(nn.weakly_reversible);
        let dz = deficiency_zero_check(&net);
        assert!(dz.applicable);
        assert_eq!(dz.conclusion, Conclusion::ExactlyOnePerClass);
        let d1 = deficiency_one_check(&net);
        assert!(d1.applicable);
        assert_eq!(d1.conclusion, Conclusion::ExactlyOnePerClass);
    }

    #[test]
    fn deficiency_one_without_weak_reversibility() {
        // Single class A -> B with deficiency 0: applies, at most one.
        let net = parse_network("A -> B").unwrap();
        let d1 = deficiency_one_check(&net);
        assert!(d1.applicable);
        assert_eq!(d1.conclusion, Conclusion::AtMostOneSteadyStatePerClass);
    }

    #[test]
    fn deficiency_zero_not_applicable() {
        let net = parse_network(INFLUENZA).unwrap();
        let dz = deficiency_zero_check(&net);
        assert!(!dz.applicable);
        assert_eq!(dz.conclusion, Conclusion::NotApplicable);
        assert!(!dz.conditions[0].holds);
    }
}
