//! Backtracking search for order isomorphisms between ranked posets.
//!
//! Elements of the source poset are placed in a static order chosen so that
//! almost every element has an already-placed cover neighbour; its image is
//! then drawn from the covers of that neighbour's image. Each candidate must
//! match the element's signature and preserve every cover to an already
//! placed neighbour. Signatures agree on cover degrees, so a complete
//! assignment is a Hasse-diagram isomorphism, hence an order isomorphism.

use std::collections::HashMap;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use super::PolytopePoset;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::par;

const UNSET: usize = usize::MAX;

/// Invariant used to prune candidate images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Signature {
    rank: i32,
    down_set: u32,
    up_set: u32,
    down_degree: u32,
    up_degree: u32,
}

fn signatures(p: &PolytopePoset) -> Vec<Signature> {
    (0..p.len())
        .map(|i| Signature {
            rank: p.element_rank(i),
            down_set: p.below_set(i).count_ones(..) as u32,
            up_set: p.above_set(i).count_ones(..) as u32,
            down_degree: p.lower_covers(i).len() as u32,
            up_degree: p.upper_covers(i).len() as u32,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    /// The placed neighbour covers the element.
    Above,
    /// The placed neighbour is covered by the element.
    Below,
}

#[derive(Clone)]
struct State {
    pos: usize,
    map: Vec<usize>,
    used: FixedBitSet,
}

pub(crate) struct Matcher<'a> {
    p: &'a PolytopePoset,
    q: &'a PolytopePoset,
    order: Vec<usize>,
    anchors: Vec<Vec<(usize, Dir)>>,
    sig_p: Vec<Signature>,
    sig_q: Vec<Signature>,
    by_sig_q: HashMap<Signature, Vec<usize>>,
    compatible: bool,
}

impl<'a> Matcher<'a> {
    pub(crate) fn new(p: &'a PolytopePoset, q: &'a PolytopePoset, config: &Config) -> Result<Self> {
        for x in [p, q] {
            if x.len() > config.max_elements {
                return Err(Error::SearchBudgetExceeded {
                    elements: x.len(),
                    cap: config.max_elements,
                });
            }
        }
        let sig_p = signatures(p);
        let sig_q = if std::ptr::eq(p, q) { sig_p.clone() } else { signatures(q) };
        let mut by_sig_p: HashMap<Signature, Vec<usize>> = HashMap::new();
        for (i, s) in sig_p.iter().enumerate() {
            by_sig_p.entry(*s).or_default().push(i);
        }
        let mut by_sig_q: HashMap<Signature, Vec<usize>> = HashMap::new();
        for (i, s) in sig_q.iter().enumerate() {
            by_sig_q.entry(*s).or_default().push(i);
        }
        let compatible = p.len() == q.len()
            && p.rank() == q.rank()
            && by_sig_p.len() == by_sig_q.len()
            && by_sig_p
                .iter()
                .all(|(s, v)| by_sig_q.get(s).is_some_and(|w| w.len() == v.len()));
        let class_size: Vec<usize> = sig_p.iter().map(|s| by_sig_p[s].len()).collect();
        let (order, anchors) = placement_order(p, &class_size);
        Ok(Matcher {
            p,
            q,
            order,
            anchors,
            sig_p,
            sig_q,
            by_sig_q,
            compatible,
        })
    }

    fn initial(&self) -> State {
        State {
            pos: 0,
            map: vec![UNSET; self.p.len()],
            used: FixedBitSet::with_capacity(self.q.len()),
        }
    }

    fn candidates(&self, state: &State) -> Vec<usize> {
        let x = self.order[state.pos];
        let anchors = &self.anchors[state.pos];
        let pool: &[usize] = match anchors.first() {
            Some(&(z, Dir::Above)) => self.q.lower_covers(state.map[z]),
            Some(&(z, Dir::Below)) => self.q.upper_covers(state.map[z]),
            None => self.by_sig_q.get(&self.sig_p[x]).map_or(&[], Vec::as_slice),
        };
        pool.iter()
            .copied()
            .filter(|&y| {
                !state.used.contains(y)
                    && self.sig_q[y] == self.sig_p[x]
                    && anchors.iter().all(|&(z, dir)| {
                        let fz = state.map[z];
                        match dir {
                            Dir::Above => self.q.upper_covers(y).binary_search(&fz).is_ok(),
                            Dir::Below => self.q.lower_covers(y).binary_search(&fz).is_ok(),
                        }
                    })
            })
            .collect()
    }

    fn descend(&self, state: &mut State, sink: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        if state.pos == self.order.len() {
            return sink(&state.map);
        }
        let x = self.order[state.pos];
        for y in self.candidates(state) {
            state.map[x] = y;
            state.used.insert(y);
            state.pos += 1;
            let flow = self.descend(state, sink);
            state.pos -= 1;
            state.used.set(y, false);
            state.map[x] = UNSET;
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Expands partial assignments breadth-first until there are enough
    /// independent branches to hand out, keeping candidate order.
    fn frontier(&self, target: usize) -> Vec<State> {
        let mut states = vec![self.initial()];
        loop {
            if states.len() >= target || states.iter().all(|s| s.pos == self.order.len()) {
                return states;
            }
            let mut next = Vec::with_capacity(states.len() * 2);
            for s in states {
                if s.pos == self.order.len() {
                    next.push(s);
                    continue;
                }
                let x = self.order[s.pos];
                for y in self.candidates(&s) {
                    let mut child = s.clone();
                    child.map[x] = y;
                    child.used.insert(y);
                    child.pos += 1;
                    next.push(child);
                }
            }
            states = next;
        }
    }

    pub(crate) fn first(&self) -> Option<Vec<usize>> {
        if !self.compatible {
            return None;
        }
        let mut found = None;
        let mut state = self.initial();
        let _ = self.descend(&mut state, &mut |m| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    pub(crate) fn all(&self, parallel: bool) -> Vec<Vec<usize>> {
        if !self.compatible {
            return Vec::new();
        }
        let branches = self.frontier(if parallel && par::available() { 64 } else { 1 });
        par::map(&branches, parallel, |s| {
            let mut s = s.clone();
            let mut out = Vec::new();
            let _ = self.descend(&mut s, &mut |m| {
                out.push(m.to_vec());
                ControlFlow::Continue(())
            });
            out
        })
        .into_iter()
        .flatten()
        .collect()
    }

    pub(crate) fn count(&self, parallel: bool) -> u64 {
        if !self.compatible {
            return 0;
        }
        let branches = self.frontier(if parallel && par::available() { 64 } else { 1 });
        par::map(&branches, parallel, |s| {
            let mut s = s.clone();
            let mut n = 0u64;
            let _ = self.descend(&mut s, &mut |_| {
                n += 1;
                ControlFlow::Continue(())
            });
            n
        })
        .into_iter()
        .sum()
    }
}

/// Greedy placement order: repeatedly take the unplaced element whose
/// tightest placed cover neighbour offers the fewest candidate images.
fn placement_order(p: &PolytopePoset, class_size: &[usize]) -> (Vec<usize>, Vec<Vec<(usize, Dir)>>) {
    let n = p.len();
    let mut placed = vec![false; n];
    let mut estimate: Vec<usize> = class_size.to_vec();
    let mut anchor_count = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    let mut anchors = Vec::with_capacity(n);
    for _ in 0..n {
        let x = (0..n)
            .filter(|&i| !placed[i])
            .min_by_key(|&i| (estimate[i], usize::MAX - anchor_count[i], i))
            .expect("unplaced element remains");
        placed[x] = true;
        let mut mine: Vec<(usize, Dir)> = Vec::new();
        for &z in p.upper_covers(x) {
            if placed[z] {
                mine.push((z, Dir::Above));
            }
        }
        for &z in p.lower_covers(x) {
            if placed[z] {
                mine.push((z, Dir::Below));
            }
        }
        // Tightest anchor first: it seeds the candidate pool.
        mine.sort_by_key(|&(z, dir)| match dir {
            Dir::Above => p.lower_covers(z).len(),
            Dir::Below => p.upper_covers(z).len(),
        });
        for &y in p.upper_covers(x) {
            if !placed[y] {
                anchor_count[y] += 1;
                estimate[y] = estimate[y].min(p.upper_covers(x).len());
            }
        }
        for &y in p.lower_covers(x) {
            if !placed[y] {
                anchor_count[y] += 1;
                estimate[y] = estimate[y].min(p.lower_covers(x).len());
            }
        }
        order.push(x);
        anchors.push(mine);
    }
    (order, anchors)
}

pub(crate) fn find_isomorphism(p: &PolytopePoset, q: &PolytopePoset, config: &Config) -> Result<Option<Vec<usize>>> {
    Ok(Matcher::new(p, q, config)?.first())
}
