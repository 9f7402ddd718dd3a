//! Pyramid and prism recognition.
//!
//! In a pyramid `Q * pt` the apex shares an edge with every other vertex, so
//! [`pyramid_apex_candidates`] is a cheap necessary test. The decomposition
//! oracles are exhaustive: they rebuild `candidate * pt` or `candidate × I`
//! and test isomorphism.

use fixedbitset::FixedBitSet;

use crate::config::Config;
use crate::error::Result;
use crate::poset::PolytopePoset;
use crate::products::{cartesian, join};

/// Vertices adjacent (through an edge) to every other vertex.
pub fn pyramid_apex_candidates(p: &PolytopePoset) -> Vec<usize> {
    let vertices = p.faces_of_rank(0);
    let n = p.len();
    let mut neighbours = vec![FixedBitSet::with_capacity(n); n];
    for e in p.faces_of_rank(1) {
        if let [a, b] = *p.lower_covers(e) {
            neighbours[a].insert(b);
            neighbours[b].insert(a);
        }
    }
    vertices
        .iter()
        .copied()
        .filter(|&v| vertices.iter().all(|&w| w == v || neighbours[v].contains(w)))
        .collect()
}

/// Ids of [`pyramid_apex_candidates`].
pub fn pyramid_apex_candidate_ids(p: &PolytopePoset) -> Vec<String> {
    pyramid_apex_candidates(p).into_iter().map(|i| p.id(i).to_string()).collect()
}

/// Some `Q` with `Q * pt ≅ P`, if there is one.
///
/// For each apex candidate `v`, the faces not above `v` form the candidate
/// base.
pub fn pyramid_decompose(p: &PolytopePoset, config: &Config) -> Result<Option<PolytopePoset>> {
    if p.rank() < 1 {
        return Ok(None);
    }
    let point = PolytopePoset::point();
    for v in pyramid_apex_candidates(p) {
        let mut keep = FixedBitSet::with_capacity(p.len());
        keep.insert_range(..);
        keep.difference_with(p.above_set(v));
        if keep.count_ones(..) * 2 != p.len() {
            continue;
        }
        let Ok(base) = p.induced(&keep, 0) else {
            continue;
        };
        if join(&base, &point).is_isomorphic(p, config)?.is_some() {
            return Ok(Some(base));
        }
    }
    Ok(None)
}

/// Some `Q` with `Q × I ≅ P`, if there is one. Every facet section `F/0` is
/// tried as `Q`.
pub fn prism_decompose(p: &PolytopePoset, config: &Config) -> Result<Option<PolytopePoset>> {
    if p.rank() < 1 {
        return Ok(None);
    }
    if p.len() > config.max_elements {
        return Err(crate::Error::SearchBudgetExceeded {
            elements: p.len(),
            cap: config.max_elements,
        });
    }
    let edge = PolytopePoset::edge();
    for facet in p.faces_of_rank(p.rank() - 1) {
        let base = p.section_idx(p.bottom(), facet);
        if (base.len() - 1) * 3 + 1 != p.len() {
            continue;
        }
        if cartesian(&base, &edge).is_isomorphic(p, config)?.is_some() {
            return Ok(Some(base));
        }
    }
    Ok(None)
}
