//! The inductive family: start from the edge `I` and, at every step, take
//! both the prism `P × I` and the pyramid `P * pt`.
//!
//! Each node carries the bookkeeping `(A, k, prod)`: `prod` is the product
//! used last, `k` the length of the current run of that product (counted in
//! factors), and `A` the group saved when the run started. The automorphism
//! group is `A × Hyp(k)` after a Cartesian run and `A × Sym(k)` after a join
//! run.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::config::Config;
use crate::groups::GroupDescriptor;
use crate::par;
use crate::poset::PolytopePoset;
use crate::products::{cartesian, join, product_len, ProductKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    /// `P ↦ P × I`
    #[serde(rename = "xI")]
    Prism,
    /// `P ↦ P * pt`
    #[serde(rename = "*pt")]
    Pyramid,
}

impl Step {
    pub fn kind(self) -> ProductKind {
        match self {
            Step::Prism => ProductKind::Cartesian,
            Step::Pyramid => ProductKind::Join,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::Prism => "xI",
            Step::Pyramid => "*pt",
        })
    }
}

#[derive(Debug, Clone)]
pub struct FamilyNode {
    /// Face lattice, or `None` when it would exceed the element cap.
    pub polytope: Option<Arc<PolytopePoset>>,
    /// Saved group from before the current run, as formed (not normalized).
    pub a: GroupDescriptor,
    pub k: u32,
    pub prod: ProductKind,
    pub path: Vec<Step>,
    /// Element count, known even when the lattice is elided.
    pub elements: u128,
}

impl FamilyNode {
    /// The edge `I` with `A = 1`, `k = 1`, `prod = cartesian`.
    pub fn root() -> Self {
        FamilyNode {
            polytope: Some(Arc::new(PolytopePoset::edge())),
            a: GroupDescriptor::trivial(),
            k: 1,
            prod: ProductKind::Cartesian,
            path: Vec::new(),
            elements: 4,
        }
    }

    /// A root whose lattice is never materialized, for symbolic walks.
    pub fn symbolic_root() -> Self {
        FamilyNode {
            polytope: None,
            ..Self::root()
        }
    }

    pub fn rank(&self) -> usize {
        1 + self.path.len()
    }

    pub fn child(&self, step: Step, config: &Config) -> FamilyNode {
        let mut path = self.path.clone();
        path.push(step);
        let (a, k, prod) = match (step, self.prod) {
            (Step::Prism, ProductKind::Cartesian) => (self.a.clone(), self.k + 1, ProductKind::Cartesian),
            (Step::Prism, ProductKind::Join) => (
                self.a.clone().times(GroupDescriptor::sym(self.k)),
                1,
                ProductKind::Cartesian,
            ),
            // I = pt * pt, so the pyramid over the root starts a join run of
            // three points rather than one.
            (Step::Pyramid, _) if self.path.is_empty() => (GroupDescriptor::trivial(), 3, ProductKind::Join),
            (Step::Pyramid, ProductKind::Cartesian) => (
                self.a.clone().times(GroupDescriptor::hyp(self.k)),
                1,
                ProductKind::Join,
            ),
            (Step::Pyramid, ProductKind::Join) => (self.a.clone(), self.k + 1, ProductKind::Join),
        };
        let (factor, factor_len) = match step {
            Step::Prism => (PolytopePoset::edge as fn() -> PolytopePoset, 4),
            Step::Pyramid => (PolytopePoset::point as fn() -> PolytopePoset, 2),
        };
        let elements = product_len(step.kind(), self.elements, factor_len);
        let polytope = match &self.polytope {
            Some(p) if elements <= config.max_elements as u128 => Some(Arc::new(match step {
                Step::Prism => cartesian(p, &factor()),
                Step::Pyramid => join(p, &factor()),
            })),
            _ => None,
        };
        FamilyNode {
            polytope,
            a,
            k,
            prod,
            path,
            elements,
        }
    }

    /// `(P × I, P * pt)`.
    pub fn children(&self, config: &Config) -> (FamilyNode, FamilyNode) {
        (self.child(Step::Prism, config), self.child(Step::Pyramid, config))
    }

    /// Walks `path` from the root.
    pub fn from_path(path: &[Step], config: &Config) -> FamilyNode {
        path.iter().fold(FamilyNode::root(), |node, &s| node.child(s, config))
    }

    pub fn symbolic_from_path(path: &[Step]) -> FamilyNode {
        let config = Config::default();
        path.iter()
            .fold(FamilyNode::symbolic_root(), |node, &s| node.child(s, &config))
    }

    /// The automorphism group as formed by the recursion, e.g.
    /// `(Sym(3) × ((Z/2Z)^3 ⋊ Sym(3))) × Sym(2)`.
    pub fn aut_structure(&self) -> GroupDescriptor {
        let block = match self.prod {
            ProductKind::Cartesian => GroupDescriptor::hyp(self.k),
            ProductKind::Join => GroupDescriptor::sym(self.k),
        };
        self.a.clone().times(block)
    }

    /// Normalized automorphism group descriptor.
    pub fn aut_descriptor(&self) -> GroupDescriptor {
        self.aut_structure().normalize()
    }

    pub fn aut_order(&self) -> BigUint {
        self.aut_structure().order()
    }

    pub fn path_string(&self) -> String {
        if self.path.is_empty() {
            return "I".to_string();
        }
        let steps: Vec<String> = self.path.iter().map(Step::to_string).collect();
        format!("I {}", steps.join(" "))
    }

    pub fn summary(&self) -> NodeSummary {
        NodeSummary {
            path: self.path.clone(),
            k: self.k,
            prod: match self.prod {
                ProductKind::Cartesian => "cartesian",
                ProductKind::Join => "join",
            },
            a: self.a.clone(),
            aut: self.aut_structure().to_string(),
            order: self.aut_order().to_string(),
            elements: self.elements.to_string(),
        }
    }
}

/// JSON record for one family node.
#[derive(Debug, Clone, Serialize)]
pub struct NodeSummary {
    pub path: Vec<Step>,
    pub k: u32,
    pub prod: &'static str,
    #[serde(rename = "A")]
    pub a: GroupDescriptor,
    pub aut: String,
    pub order: String,
    pub elements: String,
}

/// All `2^steps` nodes at depth `steps`, prism branch before pyramid branch.
///
/// Lattices above `config.max_elements` are elided; the symbolic state is
/// always complete.
pub fn enumerate(steps: usize, config: &Config) -> Vec<FamilyNode> {
    enumerate_from(FamilyNode::root(), steps, config)
}

/// Like [`enumerate`] but never builds lattices.
pub fn enumerate_symbolic(steps: usize) -> Vec<FamilyNode> {
    enumerate_from(FamilyNode::symbolic_root(), steps, &Config::default())
}

fn enumerate_from(root: FamilyNode, steps: usize, config: &Config) -> Vec<FamilyNode> {
    let mut level = vec![root];
    for _ in 0..steps {
        level = par::map(&level, config.parallel, |node| {
            let (x, j) = node.children(config);
            [x, j]
        })
        .into_iter()
        .flatten()
        .collect();
    }
    level
}

/// Every node from depth 0 through `steps`, level by level.
pub fn enumerate_through(steps: usize, config: &Config) -> Vec<FamilyNode> {
    (0..=steps).flat_map(|s| enumerate(s, config)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupDescriptor as G;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn root_state() {
        let r = FamilyNode::root();
        assert_eq!(r.k, 1);
        assert_eq!(r.prod, ProductKind::Cartesian);
        assert_eq!(r.a, G::trivial());
        assert_eq!(r.rank(), 1);
        assert_eq!(r.aut_descriptor(), G::hyp(1));
    }

    #[test]
    fn root_children() {
        let (sq, tri) = FamilyNode::root().children(&cfg());
        assert_eq!((sq.a.clone(), sq.k, sq.prod), (G::trivial(), 2, ProductKind::Cartesian));
        assert_eq!((tri.a.clone(), tri.k, tri.prod), (G::trivial(), 3, ProductKind::Join));
        assert_eq!(sq.polytope.as_ref().unwrap().len(), 10);
        assert_eq!(tri.polytope.as_ref().unwrap().len(), 8);
        assert_eq!(sq.aut_descriptor(), G::hyp(2));
        assert_eq!(sq.aut_order(), BigUint::from(8u32));
    }

    #[test]
    fn triangle_children() {
        let tri = FamilyNode::from_path(&[Step::Pyramid], &cfg());
        let (prism, tet) = tri.children(&cfg());
        assert_eq!((prism.a.clone(), prism.k, prism.prod), (G::sym(3), 1, ProductKind::Cartesian));
        assert_eq!((tet.a.clone(), tet.k, tet.prod), (G::trivial(), 4, ProductKind::Join));
        assert_eq!(tet.aut_descriptor(), G::sym(4));
        assert_eq!(tet.aut_order(), BigUint::from(24u32));
    }

    #[test]
    fn square_pyramid_state() {
        let sq = FamilyNode::from_path(&[Step::Prism], &cfg());
        let (_, pyr) = sq.children(&cfg());
        assert_eq!((pyr.a.clone(), pyr.k, pyr.prod), (G::hyp(2), 1, ProductKind::Join));
    }

    #[test]
    fn worked_example() {
        use Step::*;
        let node = FamilyNode::symbolic_from_path(&[Pyramid, Prism, Prism, Prism, Pyramid, Pyramid]);
        assert_eq!(node.aut_structure().to_string(), "(Sym(3) × ((Z/2Z)^3 ⋊ Sym(3))) × Sym(2)");
        assert_eq!(node.aut_descriptor(), G::product([G::sym(2), G::sym(3), G::hyp(3)]));
        assert_eq!(node.aut_order(), BigUint::from(576u32));
        assert_eq!(node.elements, 760);
    }

    #[test]
    fn enumerate_shapes() {
        let zero = enumerate(0, &cfg());
        assert_eq!(zero.len(), 1);
        let one = enumerate(1, &cfg());
        assert_eq!(one.iter().map(|n| n.path.clone()).collect::<Vec<_>>(), vec![vec![Step::Prism], vec![Step::Pyramid]]);
        let two = enumerate(2, &cfg());
        let sizes: Vec<usize> = two.iter().map(|n| n.polytope.as_ref().unwrap().len()).collect();
        // cube, square pyramid, triangular prism, tetrahedron
        assert_eq!(sizes, vec![28, 20, 22, 16]);
        assert_eq!(enumerate(5, &cfg()).len(), 32);
    }

    #[test]
    fn elided_beyond_cap() {
        let small = Config::default().with_max_elements(30);
        let nodes = enumerate(3, &small);
        assert!(nodes.iter().any(|n| n.polytope.is_none()));
        assert!(nodes.iter().all(|n| n.polytope.as_ref().is_none_or(|p| p.len() <= 30)));
        let sym = enumerate_symbolic(3);
        for (a, b) in nodes.iter().zip(&sym) {
            assert_eq!(a.aut_structure(), b.aut_structure());
            assert_eq!(a.elements, b.elements);
        }
    }

    #[test]
    fn rank_and_prod_track_path() {
        for node in enumerate_through(4, &Config::default().with_max_elements(0)) {
            assert_eq!(node.rank(), 1 + node.path.len());
            let expected = node.path.last().map_or(ProductKind::Cartesian, |s| s.kind());
            assert_eq!(node.prod, expected);
        }
    }

    #[test]
    fn k_is_run_length_of_trailing_steps() {
        for node in enumerate_through(6, &Config::default().with_max_elements(0)) {
            let Some(&last) = node.path.last() else {
                continue;
            };
            let run = node.path.iter().rev().take_while(|&&s| s == last).count() as u32;
            let all_same = run as usize == node.path.len();
            let expected = match (last, all_same) {
                // the root contributes one I factor, or two pt factors as pt * pt
                (Step::Prism, true) => run + 1,
                (Step::Pyramid, true) => run + 2,
                _ => run,
            };
            assert_eq!(node.k, expected, "{:?}", node.path);
        }
    }

    #[test]
    fn summary_json() {
        let node = FamilyNode::symbolic_from_path(&[Step::Pyramid, Step::Prism]);
        let v = serde_json::to_value(node.summary()).unwrap();
        assert_eq!(v["path"], serde_json::json!(["*pt", "xI"]));
        assert_eq!(v["prod"], "cartesian");
        assert_eq!(v["A"], serde_json::json!({"kind": "sym", "k": 3}));
        assert_eq!(v["order"], "12");
    }
}
