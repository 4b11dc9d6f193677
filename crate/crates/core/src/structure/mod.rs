//! Incidences between cycles of a laminar family and the vertex certificates
//! built from them.

pub mod certificate;
pub mod construct;
pub mod cover;
pub mod incidence;

pub use certificate::{
    brute_min_mstar, certify, chain_patch, check_certificate, check_good, check_structured, extract_mstar,
    required_hits, Certificate,
};
pub use construct::{build_base_mstar, build_good_structured, ordered_replacements, split_side, BaseConstruction};
pub use cover::{check_cover, cover_for_set, Cover};
pub use incidence::{audit_pair_homotopy, compute_incidences, is_crossing, is_sub_incidence, sub_incidences, Incidence};
