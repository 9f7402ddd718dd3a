#![allow(dead_code)]

use polytope_core::products::{cartesian, join};
use polytope_core::PolytopePoset;

pub fn pt() -> PolytopePoset {
    PolytopePoset::point()
}

pub fn edge() -> PolytopePoset {
    PolytopePoset::edge()
}

pub fn triangle() -> PolytopePoset {
    join(&edge(), &pt())
}

pub fn square() -> PolytopePoset {
    cartesian(&edge(), &edge())
}

pub fn cube() -> PolytopePoset {
    cartesian(&square(), &edge())
}

/// Small named polytopes used across the suites.
pub fn corpus() -> Vec<(&'static str, PolytopePoset)> {
    vec![
        ("pt", pt()),
        ("I", edge()),
        ("triangle", triangle()),
        ("square", square()),
        ("tetrahedron", join(&triangle(), &pt())),
        ("square pyramid", join(&square(), &pt())),
        ("triangular prism", cartesian(&triangle(), &edge())),
        ("cube", cube()),
    ]
}

pub type Cover = (String, String);

/// Raw `(elements, covers)` of a poset, by id.
pub fn components(p: &PolytopePoset) -> (Vec<(String, i32)>, Vec<Cover>) {
    let elements = (0..p.len()).map(|i| (p.id(i).to_string(), p.element_rank(i))).collect();
    let covers = p.covers().map(|(a, b)| (p.id(a).to_string(), p.id(b).to_string())).collect();
    (elements, covers)
}
