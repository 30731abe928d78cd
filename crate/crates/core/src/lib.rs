//! Structural analysis of chemical reaction networks.
//!
//! The centerpiece is [`decomposition`]: given a network, decide whether
//! its reaction set splits into subnetworks whose stoichiometric subspaces
//! form a direct sum, and if so construct the finest such split from the
//! connected components of the coordinate graph. Around it sit an exact
//! rational linear-algebra layer, a small reaction-file parser, the usual
//! network numbers (linkage classes, rank, deficiency) with deficiency
//! zero/one checks, and pointwise kinetics for steady-state verification.
//!
//! ```
//! use crn_core::{parse_network, find_independent_decomposition};
//!
//! let net = parse_network("R1: 0 -> A\nR2: A -> B\nR3: B -> 0\nR4: C -> 0").unwrap();
//! let d = find_independent_decomposition(&net).unwrap().unwrap();
//! assert_eq!(d.labels(&net), vec![vec!["R1", "R2", "R3"], vec!["R4"]]);
//! ```

pub mod analysis;
pub mod brute;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod kinetics;
pub mod linalg;
pub mod model;
mod par;
pub mod parse;

pub use analysis::{
    deficiency_one_check, deficiency_zero_check, linkage_classes, network_numbers,
    strong_linkage_classes, terminal_strong_linkage_classes, Conclusion, DeficiencyVerdict,
    NetworkNumbers, Theorem,
};
pub use brute::{brute_force_decompositions, brute_force_decompositions_with, Execution};
pub use decomposition::{
    build_coordinate_graph, connected_components, find_independent_decomposition,
    find_independent_decomposition_with_basis, greedy_basis, refine_or_coarsen_check,
    verify_decomposition, CoordinateGraph, Decomposition, IndependenceReport, PartitionRelation,
};
pub use error::{Error, Result};
pub use kinetics::{is_steady_state, sfrf, Kinetics, KineticsKind};
pub use linalg::{rank, rref, select_basis_rows, BasisSelection, Rational, RationalMatrix};
pub use model::{Complex, Network, Reaction, Species};
pub use parse::parse_network;
