//! Checks against independent computations that share no code with the
//! library's search and product routines.

mod common;

use std::collections::{HashMap, HashSet, VecDeque};

use polytope_core::autom::aut_order;
use polytope_core::products::{cartesian, join, power};
use polytope_core::structure::{prism_decompose, pyramid_decompose};
use polytope_core::{Config, PolytopePoset, ProductKind};

use common::*;

/// Vertex sets of every face, as bitmasks over the rank-0 elements.
fn vertex_sets(p: &PolytopePoset) -> (usize, Vec<u64>) {
    let vertices = p.faces_of_rank(0);
    assert!(vertices.len() <= 64);
    let sets = (0..p.len())
        .map(|f| {
            vertices
                .iter()
                .enumerate()
                .filter(|&(_, &v)| reach_up(p, v).contains(&f))
                .fold(0u64, |m, (bit, _)| m | 1 << bit)
        })
        .collect();
    (vertices.len(), sets)
}

/// Elements reachable upward from `start` by BFS over the raw covers.
fn reach_up(p: &PolytopePoset, start: usize) -> HashSet<usize> {
    let mut up: HashMap<usize, Vec<usize>> = HashMap::new();
    for (a, b) in p.covers() {
        up.entry(a).or_default().push(b);
    }
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in up.get(&x).into_iter().flatten() {
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Number of vertex permutations mapping the family of face vertex sets onto
/// itself. Equals the automorphism count when faces are determined by their
/// vertices.
fn vertex_oracle_order(p: &PolytopePoset) -> u64 {
    let (n, sets) = vertex_sets(p);
    let distinct: HashSet<u64> = sets.iter().copied().collect();
    assert_eq!(distinct.len(), p.len(), "faces not determined by vertex sets");
    permutations(n)
        .into_iter()
        .filter(|perm| {
            sets.iter().all(|&s| {
                let image = (0..n).filter(|&b| s >> b & 1 == 1).fold(0u64, |m, b| m | 1 << perm[b]);
                distinct.contains(&image)
            })
        })
        .count() as u64
}

#[test]
fn automorphism_counts_match_vertex_permutations() {
    let cfg = Config::default();
    for (name, p) in corpus().into_iter().filter(|(_, p)| p.faces_of_rank(0).len() <= 8) {
        if p.rank() < 1 {
            continue;
        }
        assert_eq!(aut_order(&p, &cfg).unwrap(), vertex_oracle_order(&p), "{name}");
    }
}

#[test]
fn vertex_oracle_known_values() {
    assert_eq!(vertex_oracle_order(&triangle()), 6);
    assert_eq!(vertex_oracle_order(&square()), 8);
    assert_eq!(vertex_oracle_order(&cube()), 48);
    assert_eq!(vertex_oracle_order(&join(&square(), &pt())), 8);
    assert_eq!(vertex_oracle_order(&cartesian(&triangle(), &edge())), 12);
}

/// Face vector of a product by convolving the factor face vectors.
fn convolved_face_vector(kind: ProductKind, p: &PolytopePoset, q: &PolytopePoset) -> Vec<usize> {
    let (fp, fq) = (p.face_vector(), q.face_vector());
    match kind {
        ProductKind::Join => {
            // Index i of a face vector is rank i - 1; join ranks add plus one.
            let mut out = vec![0; fp.len() + fq.len() - 1];
            for (i, a) in fp.iter().enumerate() {
                for (j, b) in fq.iter().enumerate() {
                    out[i + j] += a * b;
                }
            }
            out
        }
        ProductKind::Cartesian => {
            let mut out = vec![0; fp.len() + fq.len() - 2];
            out[0] = 1;
            for (i, a) in fp.iter().enumerate().skip(1) {
                for (j, b) in fq.iter().enumerate().skip(1) {
                    out[i + j - 1] += a * b;
                }
            }
            out
        }
    }
}

#[test]
fn product_face_vectors_match_convolution() {
    let corpus = corpus();
    for (a, p) in &corpus {
        for (b, q) in &corpus {
            for kind in [ProductKind::Join, ProductKind::Cartesian] {
                let r = match kind {
                    ProductKind::Join => join(p, q),
                    ProductKind::Cartesian => cartesian(p, q),
                };
                assert_eq!(r.face_vector(), convolved_face_vector(kind, p, q), "{a} {kind:?} {b}");
            }
        }
    }
}

#[test]
fn named_face_vectors() {
    assert_eq!(cube().face_vector(), vec![1, 8, 12, 6, 1]);
    let tesseract = power(&edge(), ProductKind::Cartesian, 4).unwrap();
    assert_eq!(tesseract.face_vector(), vec![1, 16, 32, 24, 8, 1]);
    let simplex4 = power(&pt(), ProductKind::Join, 5).unwrap();
    assert_eq!(simplex4.face_vector(), vec![1, 5, 10, 10, 5, 1]);
}

/// Maximal chains counted by dynamic programming over the raw covers.
fn dp_flag_count(p: &PolytopePoset) -> u128 {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| p.element_rank(i));
    let mut chains = vec![0u128; p.len()];
    chains[p.bottom()] = 1;
    let covers: Vec<(usize, usize)> = p.covers().collect();
    for &x in &order {
        for &(a, b) in &covers {
            if b == x {
                chains[x] += chains[a];
            }
        }
    }
    chains[p.top()]
}

#[test]
fn flag_counts_match_dynamic_programming() {
    for (name, p) in corpus() {
        let dp = dp_flag_count(&p);
        assert_eq!(p.flag_count(), dp, "{name}");
        let flags = p.flags();
        assert_eq!(flags.len() as u128, dp, "{name}");
        let unique: HashSet<_> = flags.iter().collect();
        assert_eq!(unique.len(), flags.len(), "{name}: repeated flag");
        for flag in &flags {
            assert_eq!(flag.len() as i32, p.rank() + 2, "{name}");
        }
    }
    assert_eq!(dp_flag_count(&cube()), 48);
    assert_eq!(dp_flag_count(&triangle()), 6);
}

#[test]
fn less_eq_matches_breadth_first_search() {
    for (name, p) in corpus() {
        for a in 0..p.len() {
            let reach = reach_up(&p, a);
            for b in 0..p.len() {
                assert_eq!(p.less_eq(p.id(a), p.id(b)).unwrap(), reach.contains(&b), "{name}: {a} <= {b}");
            }
        }
    }
}

#[test]
fn cube_vertex_figure_is_a_triangle() {
    let cfg = Config::default();
    let c = cube();
    let top = c.id(c.top()).to_string();
    for v in c.faces_of_rank(0) {
        let fig = c.section(c.id(v), &top).unwrap().carrier;
        assert_eq!(fig.len(), 8);
        assert_eq!(fig.face_vector(), vec![1, 3, 3, 1]);
        assert!(fig.is_isomorphic(&triangle(), &cfg).unwrap().is_some());
    }
    for e in c.faces_of_rank(1) {
        let fig = c.section(c.id(e), &top).unwrap().carrier;
        assert!(fig.is_isomorphic(&edge(), &cfg).unwrap().is_some());
    }
}

#[test]
fn decomposition_truth_table() {
    let cfg = Config::default();
    let expected = [
        ("I", true, true),
        ("triangle", true, false),
        ("square", false, true),
        ("tetrahedron", true, false),
        ("square pyramid", true, false),
        ("triangular prism", false, true),
        ("cube", false, true),
    ];
    let corpus: HashMap<_, _> = corpus().into_iter().collect();
    for (name, pyramid, prism) in expected {
        let p = &corpus[name];
        assert_eq!(pyramid_decompose(p, &cfg).unwrap().is_some(), pyramid, "{name} as pyramid");
        assert_eq!(prism_decompose(p, &cfg).unwrap().is_some(), prism, "{name} as prism");
    }
}
