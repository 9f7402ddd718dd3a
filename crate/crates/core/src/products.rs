//! Join and Cartesian products of face posets.
//!
//! Product elements are pairs of parent faces and get the id `"(p|q)"`. Covers
//! are produced directly: a pair is covered by another when one coordinate is
//! covered and the other is equal. The Cartesian bottom is covered by the
//! vertex pairs.

use crate::error::{Error, Result};
use crate::poset::{Hasse, PolytopePoset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Join,
    Cartesian,
}

pub(crate) fn pair_id(a: &str, b: &str) -> String {
    format!("({a}|{b})")
}

/// `P * Q`: every pair of faces, ranked `rank(F) + rank(G) + 1`.
pub fn join(p: &PolytopePoset, q: &PolytopePoset) -> PolytopePoset {
    let (np, nq) = (p.len(), q.len());
    let idx = |f: usize, g: usize| f * nq + g;
    let mut ids = Vec::with_capacity(np * nq);
    let mut elements = Vec::with_capacity(np * nq);
    let mut provenance = Vec::with_capacity(np * nq);
    for f in 0..np {
        for g in 0..nq {
            let id = pair_id(p.id(f), q.id(g));
            ids.push(id.clone());
            elements.push((id, p.element_rank(f) + q.element_rank(g) + 1));
            provenance.push((p.id(f).to_string(), q.id(g).to_string()));
        }
    }
    let mut covers = Vec::new();
    for f in 0..np {
        for g in 0..nq {
            let from = idx(f, g);
            for &f2 in p.upper_covers(f) {
                covers.push((ids[from].clone(), ids[idx(f2, g)].clone()));
            }
            for &g2 in q.upper_covers(g) {
                covers.push((ids[from].clone(), ids[idx(f, g2)].clone()));
            }
        }
    }
    assemble(elements, covers, provenance)
}

/// `P × Q`: pairs of proper (rank ≥ 0) faces plus a shared bottom, ranked
/// `rank(F) + rank(G)`.
pub fn cartesian(p: &PolytopePoset, q: &PolytopePoset) -> PolytopePoset {
    let (np, nq) = (p.len(), q.len());
    let (pb, qb) = (p.bottom(), q.bottom());
    // Slot 0 is the bottom; proper pairs follow in nested order.
    let mut slot = vec![usize::MAX; np * nq];
    let bottom_id = pair_id(p.id(pb), q.id(qb));
    let mut ids = vec![bottom_id.clone()];
    let mut elements = vec![(bottom_id, -1)];
    let mut provenance = vec![(p.id(pb).to_string(), q.id(qb).to_string())];
    slot[pb * nq + qb] = 0;
    for f in (0..np).filter(|&f| f != pb) {
        for g in (0..nq).filter(|&g| g != qb) {
            slot[f * nq + g] = ids.len();
            let id = pair_id(p.id(f), q.id(g));
            ids.push(id.clone());
            elements.push((id, p.element_rank(f) + q.element_rank(g)));
            provenance.push((p.id(f).to_string(), q.id(g).to_string()));
        }
    }
    let mut covers = Vec::new();
    for &f in p.upper_covers(pb) {
        for &g in q.upper_covers(qb) {
            covers.push((ids[0].clone(), ids[slot[f * nq + g]].clone()));
        }
    }
    for f in (0..np).filter(|&f| f != pb) {
        for g in (0..nq).filter(|&g| g != qb) {
            let from = slot[f * nq + g];
            for &f2 in p.upper_covers(f) {
                covers.push((ids[from].clone(), ids[slot[f2 * nq + g]].clone()));
            }
            for &g2 in q.upper_covers(g) {
                covers.push((ids[from].clone(), ids[slot[f * nq + g2]].clone()));
            }
        }
    }
    assemble(elements, covers, provenance)
}

fn assemble(
    elements: Vec<(String, i32)>,
    covers: Vec<(String, String)>,
    provenance: Vec<(String, String)>,
) -> PolytopePoset {
    let hasse = Hasse::build(elements, covers).expect("product ids are unique and covers internal");
    PolytopePoset::from_hasse(hasse)
        .expect("products of bounded graded posets are bounded and graded")
        .with_provenance(provenance)
}

pub fn product(kind: ProductKind, p: &PolytopePoset, q: &PolytopePoset) -> PolytopePoset {
    match kind {
        ProductKind::Join => join(p, q),
        ProductKind::Cartesian => cartesian(p, q),
    }
}

/// Left-associated `k`-fold product of `p` with itself.
pub fn power(p: &PolytopePoset, kind: ProductKind, k: u32) -> Result<PolytopePoset> {
    if k == 0 {
        return Err(Error::NonPositiveExponent);
    }
    let mut acc = p.clone();
    for _ in 1..k {
        acc = product(kind, &acc, p);
    }
    Ok(acc)
}

/// Element count of a product, without building it.
pub fn product_len(kind: ProductKind, p: u128, q: u128) -> u128 {
    match kind {
        ProductKind::Join => p.saturating_mul(q),
        ProductKind::Cartesian => (p - 1).saturating_mul(q - 1).saturating_add(1),
    }
}
