//! Finite covers of plane curve germs branched over ADE singularities,
//! studied through their monodromy.
//!
//! The pieces, bottom up:
//!
//! - [`perm`]: permutations, orbits, block systems, canonical forms.
//! - [`fpgroup`]: words, finite presentations, homomorphism search into
//!   symmetric groups, abelianization.
//! - [`catalog`]: resolution graphs of the ADE germs and the presentations of
//!   their local fundamental groups.
//! - [`cover`]: covers as monodromy assignments, the central subgroup, and
//!   the map β to Belyi functions.
//! - [`dessin`]: Belyi permutation triples.

pub mod catalog;
pub mod cover;
pub mod dessin;
pub mod error;
pub mod fpgroup;
pub mod perm;

pub use catalog::{
    distinguished_words, graphs_isomorphic, mumford_presentation, resolution_graph,
    simplified_presentation, DistinguishedWords, Family, ResolutionGraph, SingularityType, Vertex,
    VertexKind,
};
pub use cover::{
    beta, center_subgroup, check_cover, construct_d4_from_belyi, enumerate_covers, validate_cover,
    verify_theorem2, BetaDescriptor, CenterData, Check, GermCover, ValidationReport,
};
pub use dessin::{
    classify, enumerate_belyi, equivalent, genus, power_map, BelyiClass, BelyiTriple, DessinClass,
};
pub use error::{Error, Result};
pub use fpgroup::{
    abelianization, check_homomorphism, enumerate_homs, evaluate_word, hom_count,
    AbelianInvariants, Assignment, EnumerationOptions, Presentation, Word,
};
pub use perm::{canonical_tuple, Permutation};
