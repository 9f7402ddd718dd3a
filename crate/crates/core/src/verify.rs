//! Abstract-polytope axiom checks.
//!
//! Boundedness and gradedness are recomputed from the cover relation. The
//! diamond condition is checked on every rank-2 interval. Connectivity is
//! checked on every section of rank difference at least 3 by a search over
//! the covers inside the open interval: two proper faces are comparable
//! exactly when a cover chain joins them inside the interval, so this is the
//! comparability graph's connectivity.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::config::Config;
use crate::error::Result;
use crate::par;
use crate::poset::{Hasse, PolytopePoset, PosetJson};

/// Failures listed per category before truncation.
pub const MAX_LISTED: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Failure {
    Bounded { detail: String },
    Graded { lower: String, upper: String },
    Diamond { lower: String, upper: String, middle: usize },
    Connected { lower: String, upper: String, components: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub is_polytope: bool,
    pub bounded: bool,
    pub graded: bool,
    pub diamond_ok: bool,
    pub connected_ok: bool,
    pub diamond_violations: usize,
    pub connectivity_violations: usize,
    pub failures: Vec<Failure>,
}

pub fn verify_polytope(p: &PolytopePoset, config: &Config) -> ValidityReport {
    check(&p.hasse, config)
}

/// Checks raw components without requiring them to form a bounded graded
/// poset first. Only duplicate ids and dangling covers are hard errors.
pub fn verify_components<S: Into<String>, T: Into<String>, U: Into<String>>(
    elements: impl IntoIterator<Item = (S, i32)>,
    covers: impl IntoIterator<Item = (T, U)>,
    config: &Config,
) -> Result<ValidityReport> {
    let elements = elements.into_iter().map(|(id, r)| (id.into(), r)).collect();
    let covers = covers.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
    Ok(check(&Hasse::build(elements, covers)?, config))
}

pub fn verify_json(json: &PosetJson, config: &Config) -> Result<ValidityReport> {
    Ok(check(&json.to_hasse()?, config))
}

fn check(h: &Hasse, config: &Config) -> ValidityReport {
    let mut failures = Vec::new();

    let bounded = match h.bounds() {
        Ok(_) => true,
        Err(detail) => {
            failures.push(Failure::Bounded { detail });
            false
        }
    };

    let ungraded: Vec<Failure> = (0..h.len())
        .flat_map(|a| h.up[a].iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| h.ranks[b] != h.ranks[a] + 1)
        .map(|(a, b)| Failure::Graded {
            lower: h.ids[a].clone(),
            upper: h.ids[b].clone(),
        })
        .collect();
    let graded = ungraded.is_empty();
    failures.extend(ungraded.into_iter().take(MAX_LISTED));

    let diamonds = par::map_range(h.len(), config.parallel, |f| diamond_failures(h, f));
    let diamond_violations: usize = diamonds.iter().map(Vec::len).sum();
    failures.extend(diamonds.into_iter().flatten().take(MAX_LISTED));

    let sections = par::map_range(h.len(), config.parallel, |f| connectivity_failures(h, f));
    let connectivity_violations: usize = sections.iter().map(Vec::len).sum();
    failures.extend(sections.into_iter().flatten().take(MAX_LISTED));

    let diamond_ok = diamond_violations == 0;
    let connected_ok = connectivity_violations == 0;
    ValidityReport {
        is_polytope: bounded && graded && diamond_ok && connected_ok,
        bounded,
        graded,
        diamond_ok,
        connected_ok,
        diamond_violations,
        connectivity_violations,
        failures,
    }
}

/// Rank-2 intervals above `f` whose open interior does not have exactly two
/// elements.
fn diamond_failures(h: &Hasse, f: usize) -> Vec<Failure> {
    let rank = h.ranks[f];
    let mut out = Vec::new();
    for g in h.above[f].ones() {
        if h.ranks[g] != rank + 2 {
            continue;
        }
        let middle = h.above[f]
            .intersection(&h.below[g])
            .filter(|&m| m != f && m != g)
            .count();
        if middle != 2 {
            out.push(Failure::Diamond {
                lower: h.ids[f].clone(),
                upper: h.ids[g].clone(),
                middle,
            });
        }
    }
    out
}

fn connectivity_failures(h: &Hasse, f: usize) -> Vec<Failure> {
    let rank = h.ranks[f];
    let mut out = Vec::new();
    let mut interior = FixedBitSet::with_capacity(h.len());
    for g in h.above[f].ones() {
        if h.ranks[g] - rank < 3 {
            continue;
        }
        interior.clone_from(&h.above[f]);
        interior.intersect_with(&h.below[g]);
        interior.set(f, false);
        interior.set(g, false);
        let components = components(h, &interior);
        if components != 1 {
            out.push(Failure::Connected {
                lower: h.ids[f].clone(),
                upper: h.ids[g].clone(),
                components,
            });
        }
    }
    out
}

/// Connected components of the cover graph restricted to `members`.
fn components(h: &Hasse, members: &FixedBitSet) -> usize {
    let mut seen = FixedBitSet::with_capacity(h.len());
    let mut stack = Vec::new();
    let mut count = 0;
    for start in members.ones() {
        if seen.put(start) {
            continue;
        }
        count += 1;
        stack.push(start);
        while let Some(x) = stack.pop() {
            for &y in h.up[x].iter().chain(&h.down[x]) {
                if members.contains(y) && !seen.put(y) {
                    stack.push(y);
                }
            }
        }
    }
    count
}
