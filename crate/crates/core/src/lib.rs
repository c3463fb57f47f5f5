//! Classification and invariants of abelian covers of the projective plane
//! whose covering map is the canonical map.
//!
//! * [`groups`]: finite abelian groups, elements, automorphisms of elementary groups.
//! * [`geometry`]: divisor classes on blow-ups of the plane, line arrangements,
//!   exact dimensions of linear systems.
//! * [`cover`]: branch data, the `L_g` classes, cohomology of the cover, surface
//!   invariants and the canonical-map test.
//! * [`solver`]: the integer feasibility system for the canonical pushforward
//!   pattern, exhaustive search, classification sweeps and orbit deduplication.
//! * [`catalog`]: known constructions (the sixteen-sheeted cover, a Campedelli
//!   surface, the low-degree families, odd-degree examples).
//! * [`verify`]: reproducible checks of every numeric claim the crate asserts.
//! * [`cli`]: the command layer behind the `abelcover` binary.

pub mod catalog;
pub mod cli;
pub mod cover;
pub mod geometry;
pub mod groups;
pub mod solver;
pub mod verify;
