//! Kummer and Artin–Schreier covers of `F_q(x)`: splitting of places,
//! ramification, genus and place counts.

pub mod count;
pub mod cover;
pub mod place;
pub mod ramification;

pub use count::{
    count_places, point_count_bruteforce, rational_place_counts, s_from_counts, PlaceCounts,
    WorkCounters,
};
pub use cover::{Cover, CoverSpec, Family};
pub use place::{split_place, RationalPlace, SplittingType};
pub use ramification::{
    genus_via_riemann_hurwitz, ramification_report, RamificationEntry, RamificationReport,
};
