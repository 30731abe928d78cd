//! Species, complexes, reactions and the matrices derived from them.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{int, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Species {
    pub name: String,
    pub index: usize,
}

/// A nonnegative integer combination of species. The empty map is the zero
/// complex.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Complex {
    coefficients: BTreeMap<usize, u32>,
}

impl Complex {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a complex from `(species, coefficient)` pairs. Zero
    /// coefficients are dropped and repeated species are summed.
    pub fn from_terms<I: IntoIterator<Item = (usize, u32)>>(terms: I) -> Self {
        let mut coefficients = BTreeMap::new();
        for (species, c) in terms {
            if c > 0 {
                *coefficients.entry(species).or_insert(0) += c;
            }
        }
        Self { coefficients }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, species: usize) -> u32 {
        self.coefficients.get(&species).copied().unwrap_or(0)
    }

    /// Nonzero `(species, coefficient)` pairs in species order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.coefficients.iter().map(|(&s, &c)| (s, c))
    }

    pub fn species(&self) -> impl Iterator<Item = usize> + '_ {
        self.coefficients.keys().copied()
    }

    fn remap(&self, map: &HashMap<usize, usize>) -> Self {
        Self::from_terms(self.terms().map(|(s, c)| (map[&s], c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reaction {
    pub label: Option<String>,
    pub reactant: usize,
    pub product: usize,
}

/// A chemical reaction network. Reaction order is the canonical order used
/// for every matrix column and every partition index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    species: Vec<Species>,
    complexes: Vec<Complex>,
    reactions: Vec<Reaction>,
}

impl Network {
    /// Assembles a network and checks the structural rules: unique species
    /// names, unique complexes, no self-loops, no repeated reactant/product
    /// pairs, unique reaction names, and every complex used by a reaction.
    pub fn new(
        species_names: Vec<String>,
        complexes: Vec<Complex>,
        reactions: Vec<Reaction>,
    ) -> Result<Self> {
        if reactions.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        let mut seen = HashSet::new();
        for name in &species_names {
            if !is_identifier(name) {
                return Err(Error::InvalidNetwork(format!(
                    "`{name}` is not a valid species name"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidNetwork(format!("duplicate species `{name}`")));
            }
        }
        let m = species_names.len();
        let mut seen = HashSet::new();
        for c in &complexes {
            if let Some(s) = c.species().find(|&s| s >= m) {
                return Err(Error::InvalidNetwork(format!(
                    "complex refers to species index {s}, network has {m}"
                )));
            }
            if !seen.insert(c) {
                return Err(Error::InvalidNetwork("duplicate complex".into()));
            }
        }
        let n = complexes.len();
        let mut used = vec![false; n];
        let mut pairs = HashSet::new();
        for (j, rx) in reactions.iter().enumerate() {
            if rx.reactant >= n || rx.product >= n {
                return Err(Error::InvalidNetwork(format!(
                    "reaction {} refers to a missing complex",
                    j + 1
                )));
            }
            if rx.reactant == rx.product {
                return Err(Error::SelfLoop { line: j + 1 });
            }
            if !pairs.insert((rx.reactant, rx.product)) {
                return Err(Error::DuplicateReaction {
                    line: j + 1,
                    reactant: render_complex(&complexes[rx.reactant], &species_names),
                    product: render_complex(&complexes[rx.product], &species_names),
                });
            }
            used[rx.reactant] = true;
            used[rx.product] = true;
        }
        if let Some(c) = used.iter().position(|u| !u) {
            return Err(Error::InvalidNetwork(format!(
                "complex {} does not take part in any reaction",
                render_complex(&complexes[c], &species_names)
            )));
        }
        let species: Vec<Species> = species_names
            .into_iter()
            .enumerate()
            .map(|(index, name)| Species { name, index })
            .collect();
        let net = Self {
            species,
            complexes,
            reactions,
        };
        let mut names = HashSet::new();
        for j in 0..net.reactions.len() {
            let name = net.reaction_name(j);
            if !names.insert(name.clone()) {
                return Err(Error::DuplicateLabel {
                    line: j + 1,
                    label: name,
                });
            }
        }
        Ok(net)
    }

    pub fn species(&self) -> &[Species] {
        &self.species
    }

    pub fn complexes(&self) -> &[Complex] {
        &self.complexes
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn species_count(&self) -> usize {
        self.species.len()
    }

    pub fn complex_count(&self) -> usize {
        self.complexes.len()
    }

    pub fn reaction_count(&self) -> usize {
        self.reactions.len()
    }

    pub fn species_index(&self, name: &str) -> Option<usize> {
        self.species.iter().position(|s| s.name == name)
    }

    /// The reaction's label, or `R<k>` (1-based position) when unlabeled.
    pub fn reaction_name(&self, j: usize) -> String {
        match &self.reactions[j].label {
            Some(l) => l.clone(),
            None => format!("R{}", j + 1),
        }
    }

    pub fn reaction_index(&self, name: &str) -> Option<usize> {
        (0..self.reactions.len()).find(|&j| self.reaction_name(j) == name)
    }

    pub fn complex_name(&self, c: usize) -> String {
        let names: Vec<String> = self.species.iter().map(|s| s.name.clone()).collect();
        render_complex(&self.complexes[c], &names)
    }

    /// Product minus reactant, assembled directly from the complexes.
    pub fn reaction_vector(&self, j: usize) -> Vec<Rational> {
        let rx = &self.reactions[j];
        let mut v = vec![Rational::zero(); self.species.len()];
        for (s, c) in self.complexes[rx.product].terms() {
            v[s] += int(i64::from(c));
        }
        for (s, c) in self.complexes[rx.reactant].terms() {
            v[s] -= int(i64::from(c));
        }
        v
    }

    /// `Y`: species × complexes, entry `(i, j)` is the coefficient of
    /// species `i` in complex `j`.
    pub fn molecularity_matrix(&self) -> RationalMatrix {
        let mut y = RationalMatrix::zeros(self.species.len(), self.complexes.len());
        for (j, c) in self.complexes.iter().enumerate() {
            for (s, coef) in c.terms() {
                y[(s, j)] = int(i64::from(coef));
            }
        }
        y
    }

    /// `I_a`: complexes × reactions, −1 at the reactant and +1 at the product.
    pub fn incidence_matrix(&self) -> RationalMatrix {
        let mut ia = RationalMatrix::zeros(self.complexes.len(), self.reactions.len());
        for (j, rx) in self.reactions.iter().enumerate() {
            ia[(rx.reactant, j)] = int(-1);
            ia[(rx.product, j)] = int(1);
        }
        ia
    }

    /// `N = Y · I_a`; column `j` is the reaction vector of reaction `j`.
    pub fn stoichiometric_matrix(&self) -> RationalMatrix {
        &self.molecularity_matrix() * &self.incidence_matrix()
    }

    /// Whether reaction `j` has its reverse in the network.
    pub fn is_reversible(&self, j: usize) -> bool {
        let rx = &self.reactions[j];
        self.reactions
            .iter()
            .any(|o| o.reactant == rx.product && o.product == rx.reactant)
    }

    /// The subnetwork induced by a set of reactions: those reactions (in
    /// parent order), the complexes they touch and the species occurring in
    /// those complexes, orderings inherited from the parent. Reactions keep
    /// their parent names.
    pub fn subnetwork(&self, reactions: &[usize]) -> Result<Network> {
        let mut idx: Vec<usize> = reactions.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = idx.iter().find(|&&j| j >= self.reactions.len()) {
            return Err(Error::Partition(format!(
                "reaction index {bad} out of range"
            )));
        }
        // Species and complexes are numbered by first appearance, as if the
        // subnetwork's reactions had been parsed on their own.
        let mut species_map: HashMap<usize, usize> = HashMap::new();
        let mut species_names = Vec::new();
        let mut complex_map: HashMap<usize, usize> = HashMap::new();
        let mut used_complexes = Vec::new();
        for &j in &idx {
            for c in [self.reactions[j].reactant, self.reactions[j].product] {
                if complex_map.contains_key(&c) {
                    continue;
                }
                complex_map.insert(c, used_complexes.len());
                used_complexes.push(c);
                for s in self.complexes[c].species() {
                    if let std::collections::hash_map::Entry::Vacant(e) = species_map.entry(s) {
                        e.insert(species_names.len());
                        species_names.push(self.species[s].name.clone());
                    }
                }
            }
        }
        let complexes = used_complexes
            .iter()
            .map(|&c| self.complexes[c].remap(&species_map))
            .collect();
        let rxns = idx
            .iter()
            .map(|&j| Reaction {
                label: Some(self.reaction_name(j)),
                reactant: complex_map[&self.reactions[j].reactant],
                product: complex_map[&self.reactions[j].product],
            })
            .collect();
        Network::new(species_names, complexes, rxns)
    }
}

/// Serializes to the line-oriented reaction format accepted by
/// [`crate::parse::parse_network`].
impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rx in &self.reactions {
            if let Some(label) = &rx.label {
                write!(f, "{label}: ")?;
            }
            writeln!(
                f,
                "{} -> {}",
                self.complex_name(rx.reactant),
                self.complex_name(rx.product)
            )?;
        }
        Ok(())
    }
}

pub(crate) fn render_complex(c: &Complex, species_names: &[String]) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    c.terms()
        .map(|(s, k)| {
            if k == 1 {
                species_names[s].clone()
            } else {
                format!("{k} {}", species_names[s])
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_species() -> Network {
        // R1: 2 X1 -> X2
        Network::new(
            vec!["X1".into(), "X2".into()],
            vec![Complex::from_terms([(0, 2)]), Complex::from_terms([(1, 1)])],
            vec![Reaction {
                label: Some("R1".into()),
                reactant: 0,
                product: 1,
            }],
        )
        .unwrap()
    }

    #[test]
    fn molecularity_reads_coefficients() {
        let net = two_species();
        assert_eq!(
            net.molecularity_matrix(),
            RationalMatrix::from_int_rows(&[[2, 0], [0, 1]])
        );
        assert_eq!(
            net.stoichiometric_matrix(),
            RationalMatrix::from_int_rows(&[[-2], [1]])
        );
    }

    #[test]
    fn complexes_merge_repeated_species() {
        let c = Complex::from_terms([(1, 1), (0, 0), (1, 2)]);
        assert_eq!(c.terms().collect::<Vec<_>>(), vec![(1, 3)]);
        assert!(Complex::from_terms([(0, 0)]).is_zero());
    }

    #[test]
    fn rejects_structural_violations() {
        let names = || vec!["A".to_string(), "B".to_string()];
        let cs = || vec![Complex::from_terms([(0, 1)]), Complex::from_terms([(1, 1)])];
        let rx = |a, b| Reaction {
            label: None,
            reactant: a,
            product: b,
        };
        assert_eq!(
            Network::new(names(), cs(), vec![]),
            Err(Error::EmptyNetwork)
        );
        assert_eq!(
            Network::new(names(), cs(), vec![rx(0, 0), rx(0, 1)]),
            Err(Error::SelfLoop { line: 1 })
        );
        assert!(matches!(
            Network::new(names(), cs(), vec![rx(0, 1), rx(0, 1)]),
            Err(Error::DuplicateReaction { line: 2, .. })
        ));
        let mut three = cs();
        three.push(Complex::zero());
        assert!(matches!(
            Network::new(names(), three, vec![rx(0, 1)]),
            Err(Error::InvalidNetwork(_))
        ));
        assert!(matches!(
            Network::new(vec!["A".into(), "A".into()], cs(), vec![rx(0, 1)]),
            Err(Error::InvalidNetwork(_))
        ));
        let labelled = vec![
            Reaction {
                label: Some("R2".into()),
                reactant: 0,
                product: 1,
            },
            rx(1, 0),
        ];
        assert!(matches!(
            Network::new(names(), cs(), labelled),
            Err(Error::DuplicateLabel { .. })
        ));
    }

    #[test]
    fn reversibility() {
        let names = vec!["A".to_string(), "B".to_string()];
        let cs = vec![Complex::from_terms([(0, 1)]), Complex::from_terms([(1, 1)])];
        let net = Network::new(
            names,
            cs,
            vec![
                Reaction {
                    label: None,
                    reactant: 0,
                    product: 1,
                },
                Reaction {
                    label: None,
                    reactant: 1,
                    product: 0,
                },
            ],
        )
        .unwrap();
        assert!(net.is_reversible(0) && net.is_reversible(1));
        assert!(!two_species().is_reversible(0));
    }

    #[test]
    fn empty_subnetwork_is_rejected() {
        assert_eq!(two_species().subnetwork(&[]), Err(Error::EmptySubset));
    }
}
