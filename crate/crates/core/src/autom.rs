//! Automorphisms: brute-force enumeration, group closure, and the explicit
//! generating sets of family members.
//!
//! A family polytope at depth `n` is `(((I □ X₁) □ X₂) … □ Xₙ)` with each
//! `Xⱼ` an edge or a point, so every face is a coordinate tuple
//! `(root face, x₁, …, xₙ)` read off the product provenance. Generators are
//! moves on those tuples:
//!
//! * `σ` flips the two vertices of one edge coordinate,
//! * `sᵢ` swaps two adjacent edge coordinates of a Cartesian run,
//! * `τᵢ` swaps two adjacent point coordinates of a join run.
//!
//! Moves on earlier coordinates lift unchanged through later products.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::family::{FamilyNode, Step};
use crate::poset::{Matcher, PolytopePoset};
use crate::products::ProductKind;

/// A permutation of the elements of one poset, stored as index images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacePermutation {
    images: Vec<u32>,
}

impl FacePermutation {
    pub fn identity(n: usize) -> Self {
        FacePermutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        FacePermutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FacePermutation) -> FacePermutation {
        FacePermutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> FacePermutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        FacePermutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Bijective, rank-preserving, and `a ≤ b ⇔ f(a) ≤ f(b)`.
    pub fn is_automorphism_of(&self, p: &PolytopePoset) -> bool {
        let n = p.len();
        if self.images.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &j in &self.images {
            if j as usize >= n || std::mem::replace(&mut seen[j as usize], true) {
                return false;
            }
        }
        (0..n).all(|i| p.element_rank(i) == p.element_rank(self.apply(i)))
            && (0..n).all(|a| (0..n).all(|b| p.le_idx(a, b) == p.le_idx(self.apply(a), self.apply(b))))
    }

    /// `{id: image-id}` over the poset the permutation acts on.
    pub fn to_id_map(&self, p: &PolytopePoset) -> BTreeMap<String, String> {
        self.images()
            .enumerate()
            .map(|(i, j)| (p.id(i).to_string(), p.id(j).to_string()))
            .collect()
    }
}

/// The full automorphism group, sorted by image vector.
pub fn automorphisms(p: &PolytopePoset, config: &Config) -> Result<Vec<FacePermutation>> {
    let matcher = Matcher::new(p, p, config)?;
    let mut all: Vec<FacePermutation> = matcher
        .all(config.parallel)
        .into_iter()
        .map(FacePermutation::from_images)
        .collect();
    all.sort();
    Ok(all)
}

/// `|Aut(P)|` by counting search leaves.
pub fn aut_order(p: &PolytopePoset, config: &Config) -> Result<u64> {
    Ok(Matcher::new(p, p, config)?.count(config.parallel))
}

/// Order of the group generated by `generators`, by breadth-first products.
/// An empty generator list generates the trivial group.
pub fn closure(generators: &[FacePermutation], cap: usize) -> Result<usize> {
    let Some(first) = generators.first() else {
        return Ok(1);
    };
    let n = first.len();
    if let Some(g) = generators.iter().find(|g| g.len() != n) {
        return Err(Error::SizeMismatch(n, g.len()));
    }
    let identity = FacePermutation::identity(n);
    let mut seen: HashSet<FacePermutation> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.compose(&x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::ClosureBudgetExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len())
}

/// A coordinate move on face tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    /// Swap the two vertices of the edge coordinate at this position.
    Flip(usize),
    /// Swap two coordinates of the same factor type.
    Swap(usize, usize),
    /// Read the root edge as `pt * pt` and swap its second point with the
    /// point coordinate at this position.
    SwapRootPoint(usize),
}

// Face indices of the atoms as built by `PolytopePoset::edge` / `point`.
const EDGE_BOTTOM: u8 = 0;
const EDGE_V: u8 = 1;
const EDGE_W: u8 = 2;
const EDGE_TOP: u8 = 3;
const POINT_BOTTOM: u8 = 0;
const POINT_TOP: u8 = 1;

fn flip_edge(x: u8) -> u8 {
    match x {
        EDGE_V => EDGE_W,
        EDGE_W => EDGE_V,
        other => other,
    }
}

/// The edge as `pt * pt`: `v = (1|0)`, `w = (0|1)`.
fn edge_as_points(x: u8) -> (u8, u8) {
    match x {
        EDGE_BOTTOM => (POINT_BOTTOM, POINT_BOTTOM),
        EDGE_V => (POINT_TOP, POINT_BOTTOM),
        EDGE_W => (POINT_BOTTOM, POINT_TOP),
        _ => (POINT_TOP, POINT_TOP),
    }
}

fn points_as_edge(pair: (u8, u8)) -> u8 {
    match pair {
        (POINT_BOTTOM, POINT_BOTTOM) => EDGE_BOTTOM,
        (POINT_TOP, POINT_BOTTOM) => EDGE_V,
        (POINT_BOTTOM, POINT_TOP) => EDGE_W,
        _ => EDGE_TOP,
    }
}

impl Move {
    fn apply(self, t: &[u8]) -> Vec<u8> {
        let mut out = t.to_vec();
        match self {
            Move::Flip(i) => out[i] = flip_edge(t[i]),
            Move::Swap(i, j) => out.swap(i, j),
            Move::SwapRootPoint(j) => {
                let (first, second) = edge_as_points(t[0]);
                out[0] = points_as_edge((first, t[j]));
                out[j] = second;
            }
        }
        out
    }
}

/// The moves generating `Aut` along `path`, added step by step:
///
/// * prism of a prism: swap the last two edge coordinates,
/// * prism of a pyramid: flip the new edge (swaps the two copies),
/// * pyramid of a pyramid: swap the last two point coordinates,
/// * pyramid of a prism: nothing new.
///
/// The root is the 1-cube with `σ`; its pyramid is `pt^{*3}` with `τ₁`
/// (which is `σ` on the root) and `τ₂`.
fn generator_moves(path: &[Step]) -> Vec<Move> {
    let mut moves = vec![Move::Flip(0)];
    let mut prod = ProductKind::Cartesian;
    for (i, &step) in path.iter().enumerate() {
        let pos = i + 1;
        match (step, prod) {
            (Step::Pyramid, _) if i == 0 => moves.push(Move::SwapRootPoint(pos)),
            (Step::Prism, ProductKind::Cartesian) | (Step::Pyramid, ProductKind::Join) => {
                moves.push(Move::Swap(pos - 1, pos))
            }
            (Step::Prism, ProductKind::Join) => moves.push(Move::Flip(pos)),
            (Step::Pyramid, ProductKind::Cartesian) => {}
        }
        prod = step.kind();
    }
    moves
}

/// Explicit generators of `Aut(node.polytope)` built from the construction
/// history.
pub fn described_generators(node: &FamilyNode) -> Result<Vec<FacePermutation>> {
    let target = node.polytope.as_ref().ok_or(Error::MissingProvenance)?;
    let tuples = face_tuples(target, &node.path)?;
    let lookup: HashMap<&[u8], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    generator_moves(&node.path)
        .into_iter()
        .map(|m| {
            let images = tuples
                .iter()
                .map(|t| lookup.get(m.apply(t).as_slice()).copied().ok_or(Error::MissingProvenance))
                .collect::<Result<Vec<_>>>()?;
            Ok(FacePermutation::from_images(images))
        })
        .collect()
}

/// Coordinate tuple of every face of the family polytope reached by `path`.
fn face_tuples(target: &PolytopePoset, path: &[Step]) -> Result<Vec<Vec<u8>>> {
    let edge = PolytopePoset::edge();
    let point = PolytopePoset::point();
    // Rebuild the chain of intermediate lattices to read provenance level by level.
    let mut chain = vec![edge.clone()];
    for &step in path {
        let last = chain.last().unwrap();
        chain.push(match step {
            Step::Prism => crate::products::cartesian(last, &edge),
            Step::Pyramid => crate::products::join(last, &point),
        });
    }
    let built = chain.last().unwrap();
    if built.ids() != target.ids() {
        return Err(Error::MissingProvenance);
    }
    let mut tuples: Vec<Vec<u8>> = (0..edge.len()).map(|i| vec![i as u8]).collect();
    for (level, &step) in path.iter().enumerate() {
        let (prev, cur) = (&chain[level], &chain[level + 1]);
        let factor = match step {
            Step::Prism => &edge,
            Step::Pyramid => &point,
        };
        let prov = cur.provenance().ok_or(Error::MissingProvenance)?;
        tuples = prov
            .iter()
            .map(|(left, right)| {
                let mut t = tuples[prev.index_of(left)?].clone();
                t.push(factor.index_of(right)? as u8);
                Ok(t)
            })
            .collect::<Result<_>>()?;
    }
    Ok(tuples)
}
