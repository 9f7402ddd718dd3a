//! Ranked face posets.
//!
//! A [`PolytopePoset`] stores its Hasse diagram (the cover relation) together
//! with precomputed up-set and down-set bitsets, so `≤` queries, sections and
//! interval scans are constant-time lookups. Elements keep the order in which
//! they were supplied; products supply them in a fixed nested-loop order, so
//! every derived listing is reproducible.

mod format;
mod iso;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::config::Config;
use crate::error::{Error, Result};

pub use format::{PosetJson, PosetJsonElement};
pub(crate) use iso::Matcher;

/// Hasse diagram of a finite ranked relation, validated only for id
/// uniqueness and cover endpoints.
#[derive(Debug, Clone)]
pub(crate) struct Hasse {
    pub(crate) ids: Vec<String>,
    pub(crate) ranks: Vec<i32>,
    pub(crate) index: HashMap<String, usize>,
    pub(crate) up: Vec<Vec<usize>>,
    pub(crate) down: Vec<Vec<usize>>,
    /// `above[a]` holds every `b` with `a ≤ b`.
    pub(crate) above: Vec<FixedBitSet>,
    /// `below[b]` holds every `a` with `a ≤ b`.
    pub(crate) below: Vec<FixedBitSet>,
}

impl Hasse {
    pub(crate) fn build(elements: Vec<(String, i32)>, covers: Vec<(String, String)>) -> Result<Self> {
        let n = elements.len();
        let mut ids = Vec::with_capacity(n);
        let mut ranks = Vec::with_capacity(n);
        let mut index = HashMap::with_capacity(n);
        for (id, rank) in elements {
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(Error::DuplicateId(id));
            }
            ids.push(id);
            ranks.push(rank);
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (a, b) in covers {
            let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) else {
                return Err(Error::DanglingCover(a, b));
            };
            up[ia].push(ib);
            down[ib].push(ia);
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        let (above, below) = reachability(&ranks, &up, &down);
        Ok(Hasse {
            ids,
            ranks,
            index,
            up,
            down,
            above,
            below,
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.ids.len()
    }

    /// First cover that does not step the rank up by one.
    pub(crate) fn ungraded_cover(&self) -> Option<(usize, usize)> {
        (0..self.len()).find_map(|a| {
            self.up[a]
                .iter()
                .find(|&&b| self.ranks[b] != self.ranks[a] + 1)
                .map(|&b| (a, b))
        })
    }

    /// Returns `(bottom, top)` or a description of why the bounds fail.
    pub(crate) fn bounds(&self) -> std::result::Result<(usize, usize), String> {
        if self.ids.is_empty() {
            return Err("poset is empty".into());
        }
        let bottoms: Vec<usize> = (0..self.len()).filter(|&i| self.ranks[i] == -1).collect();
        let [bottom] = bottoms[..] else {
            return Err(format!("{} elements of rank -1, expected exactly one", bottoms.len()));
        };
        let top_rank = *self.ranks.iter().max().expect("nonempty");
        let tops: Vec<usize> = (0..self.len()).filter(|&i| self.ranks[i] == top_rank).collect();
        let [top] = tops[..] else {
            return Err(format!(
                "{} elements of top rank {top_rank}, expected exactly one",
                tops.len()
            ));
        };
        if self.ranks.iter().any(|&r| r < -1) {
            return Err("element of rank below -1".into());
        }
        if self.above[bottom].count_ones(..) != self.len() {
            let stray = (0..self.len()).find(|&i| !self.above[bottom].contains(i)).unwrap();
            return Err(format!("`{}` is not above the minimal element", self.ids[stray]));
        }
        if self.below[top].count_ones(..) != self.len() {
            let stray = (0..self.len()).find(|&i| !self.below[top].contains(i)).unwrap();
            return Err(format!("`{}` is not below the maximal element", self.ids[stray]));
        }
        Ok((bottom, top))
    }

    #[inline]
    pub(crate) fn le(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }
}

fn reachability(
    ranks: &[i32],
    up: &[Vec<usize>],
    down: &[Vec<usize>],
) -> (Vec<FixedBitSet>, Vec<FixedBitSet>) {
    let n = ranks.len();
    let graded = (0..n).all(|a| up[a].iter().all(|&b| ranks[b] == ranks[a] + 1));
    if graded {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| ranks[i]);
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &a in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(a);
            for &b in &up[a] {
                set.union_with(&above[b]);
            }
            above[a] = set;
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &b in &order {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(b);
            for &a in &down[b] {
                set.union_with(&below[a]);
            }
            below[b] = set;
        }
        (above, below)
    } else {
        let bfs = |adj: &[Vec<usize>], start: usize| {
            let mut seen = FixedBitSet::with_capacity(n);
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen.put(y) {
                        stack.push(y);
                    }
                }
            }
            seen
        };
        let above = (0..n).map(|a| bfs(up, a)).collect();
        let below = (0..n).map(|b| bfs(down, b)).collect();
        (above, below)
    }
}

/// A bounded, graded ranked poset given by its cover relation.
///
/// Immutable after construction. `provenance`, when present, records for
/// every element the pair of parent ids it was built from by a product.
#[derive(Debug, Clone)]
pub struct PolytopePoset {
    pub(crate) hasse: Hasse,
    bottom: usize,
    top: usize,
    provenance: Option<Vec<(String, String)>>,
}

/// The interval `G/F` of a poset, re-ranked so that `F` has rank -1.
#[derive(Debug, Clone)]
pub struct Section {
    pub carrier: PolytopePoset,
}

/// Element-id bijection returned by [`PolytopePoset::is_isomorphic`].
pub type IdMapping = Vec<(String, String)>;

impl PolytopePoset {
    /// Builds a poset from `(id, rank)` pairs and covers `(a, b)` meaning `a ⋖ b`.
    ///
    /// Only the structural invariants are checked here: unique ids, known
    /// cover endpoints, covers stepping the rank by one, and a unique minimal
    /// and maximal element. The polytope axioms live in [`crate::verify`].
    pub fn from_components<S: Into<String>, T: Into<String>, U: Into<String>>(
        elements: impl IntoIterator<Item = (S, i32)>,
        covers: impl IntoIterator<Item = (T, U)>,
    ) -> Result<Self> {
        let elements = elements.into_iter().map(|(id, r)| (id.into(), r)).collect();
        let covers = covers.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        Self::from_hasse(Hasse::build(elements, covers)?)
    }

    pub(crate) fn from_hasse(hasse: Hasse) -> Result<Self> {
        if let Some((a, b)) = hasse.ungraded_cover() {
            return Err(Error::NotGraded {
                lower: hasse.ids[a].clone(),
                upper: hasse.ids[b].clone(),
            });
        }
        let (bottom, top) = hasse.bounds().map_err(Error::NotBounded)?;
        Ok(PolytopePoset {
            hasse,
            bottom,
            top,
            provenance: None,
        })
    }

    pub(crate) fn with_provenance(mut self, provenance: Vec<(String, String)>) -> Self {
        debug_assert_eq!(provenance.len(), self.len());
        self.provenance = Some(provenance);
        self
    }

    /// The point: one vertex, rank 0.
    pub fn point() -> Self {
        Self::from_components([("0", -1), ("1", 0)], [("0", "1")]).expect("point is well formed")
    }

    /// The edge `I`: two vertices, rank 1.
    pub fn edge() -> Self {
        Self::from_components(
            [("0", -1), ("v", 0), ("w", 0), ("1", 1)],
            [("0", "v"), ("0", "w"), ("v", "1"), ("w", "1")],
        )
        .expect("edge is well formed")
    }

    pub fn len(&self) -> usize {
        self.hasse.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rank(&self) -> i32 {
        self.hasse.ranks[self.top]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn ids(&self) -> &[String] {
        &self.hasse.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.hasse.ids[i]
    }

    pub fn element_rank(&self, i: usize) -> i32 {
        self.hasse.ranks[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.hasse
            .index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    /// Elements covering `i`.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.hasse.up[i]
    }

    /// Elements covered by `i`.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.hasse.down[i]
    }

    /// All covers `(a, b)` with `a ⋖ b`, by element index.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |a| self.hasse.up[a].iter().map(move |&b| (a, b)))
    }

    pub fn cover_count(&self) -> usize {
        self.hasse.up.iter().map(Vec::len).sum()
    }

    /// Element indices of the given rank, in element order.
    pub fn faces_of_rank(&self, rank: i32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.hasse.ranks[i] == rank).collect()
    }

    /// Face counts indexed by `rank + 1`.
    pub fn face_vector(&self) -> Vec<usize> {
        let mut counts = vec![0; (self.rank() + 2) as usize];
        for &r in &self.hasse.ranks {
            counts[(r + 1) as usize] += 1;
        }
        counts
    }

    pub fn provenance(&self) -> Option<&[(String, String)]> {
        self.provenance.as_deref()
    }

    #[inline]
    pub fn le_idx(&self, a: usize, b: usize) -> bool {
        self.hasse.le(a, b)
    }

    pub(crate) fn above_set(&self, a: usize) -> &FixedBitSet {
        &self.hasse.above[a]
    }

    pub(crate) fn below_set(&self, b: usize) -> &FixedBitSet {
        &self.hasse.below[b]
    }

    /// `a ≤ b` in the order generated by the covers.
    pub fn less_eq(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.hasse.le(self.index_of(a)?, self.index_of(b)?))
    }

    /// The section `G/F = { H | F ≤ H ≤ G }`, re-ranked so `F` sits at -1.
    pub fn section(&self, f: &str, g: &str) -> Result<Section> {
        let (fi, gi) = (self.index_of(f)?, self.index_of(g)?);
        if !self.hasse.le(fi, gi) {
            return Err(Error::NotComparable(f.to_string(), g.to_string()));
        }
        Ok(Section {
            carrier: self.section_idx(fi, gi),
        })
    }

    pub(crate) fn section_idx(&self, f: usize, g: usize) -> PolytopePoset {
        let mut keep = self.hasse.above[f].clone();
        keep.intersect_with(&self.hasse.below[g]);
        let shift = -(self.hasse.ranks[f] + 1);
        self.induced(&keep, shift)
            .expect("an interval of a bounded graded poset is bounded and graded")
    }

    /// Sub-poset on `keep` with the restricted cover relation and ranks
    /// shifted by `shift`.
    pub(crate) fn induced(&self, keep: &FixedBitSet, shift: i32) -> Result<PolytopePoset> {
        let elements = keep
            .ones()
            .map(|i| (self.hasse.ids[i].clone(), self.hasse.ranks[i] + shift))
            .collect();
        let covers = keep
            .ones()
            .flat_map(|a| {
                self.hasse.up[a]
                    .iter()
                    .filter(|&&b| keep.contains(b))
                    .map(move |&b| (a, b))
            })
            .map(|(a, b)| (self.hasse.ids[a].clone(), self.hasse.ids[b].clone()))
            .collect();
        let mut sub = PolytopePoset::from_hasse(Hasse::build(elements, covers)?)?;
        if let Some(prov) = &self.provenance {
            sub.provenance = Some(keep.ones().map(|i| prov[i].clone()).collect());
        }
        Ok(sub)
    }

    /// Every maximal chain, as id lists from the minimal to the maximal element,
    /// sorted lexicographically.
    pub fn flags(&self) -> Vec<Vec<String>> {
        let mut out = Vec::new();
        let mut chain = vec![self.bottom];
        self.collect_flags(&mut chain, &mut out);
        let mut flags: Vec<Vec<String>> = out
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.hasse.ids[i].clone()).collect())
            .collect();
        flags.sort();
        flags
    }

    fn collect_flags(&self, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *chain.last().unwrap();
        if last == self.top {
            out.push(chain.clone());
            return;
        }
        for &next in &self.hasse.up[last] {
            chain.push(next);
            self.collect_flags(chain, out);
            chain.pop();
        }
    }

    /// Number of flags, by counting chains rather than listing them.
    pub fn flag_count(&self) -> u128 {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.hasse.ranks[i]);
        let mut paths = vec![0u128; self.len()];
        paths[self.bottom] = 1;
        for &a in &order {
            for &b in &self.hasse.up[a] {
                paths[b] += paths[a];
            }
        }
        paths[self.top]
    }

    /// Finds an order isomorphism onto `other`, as `(id in self, id in other)`
    /// pairs in element order.
    pub fn is_isomorphic(&self, other: &PolytopePoset, config: &Config) -> Result<Option<IdMapping>> {
        let found = iso::find_isomorphism(self, other, config)?;
        Ok(found.map(|images| {
            images
                .iter()
                .enumerate()
                .map(|(i, &j)| (self.hasse.ids[i].clone(), other.hasse.ids[j].clone()))
                .collect()
        }))
    }

    /// Same as [`is_isomorphic`](Self::is_isomorphic) but returns index images.
    pub fn isomorphism_indices(&self, other: &PolytopePoset, config: &Config) -> Result<Option<Vec<usize>>> {
        iso::find_isomorphism(self, other, config)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson::from_poset(self)
    }

    pub fn to_dot(&self) -> String {
        format::to_dot(self)
    }
}
