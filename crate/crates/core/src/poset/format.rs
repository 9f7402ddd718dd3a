use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Hasse, PolytopePoset};
use crate::error::Result;

type Cover = (String, String);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJsonElement {
    pub id: String,
    pub rank: i32,
}

/// Serialized face lattice: `{"rank", "elements", "covers"}` with covers in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub rank: i32,
    pub elements: Vec<PosetJsonElement>,
    pub covers: Vec<[String; 2]>,
}

impl PosetJson {
    pub fn from_poset(p: &PolytopePoset) -> Self {
        let elements = (0..p.len())
            .map(|i| PosetJsonElement {
                id: p.id(i).to_string(),
                rank: p.element_rank(i),
            })
            .collect();
        let mut covers: Vec<[String; 2]> = p
            .covers()
            .map(|(a, b)| [p.id(a).to_string(), p.id(b).to_string()])
            .collect();
        covers.sort();
        PosetJson {
            rank: p.rank(),
            elements,
            covers,
        }
    }

    fn parts(&self) -> (Vec<(String, i32)>, Vec<Cover>) {
        let elements = self.elements.iter().map(|e| (e.id.clone(), e.rank)).collect();
        let covers = self.covers.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        (elements, covers)
    }

    pub(crate) fn to_hasse(&self) -> Result<Hasse> {
        let (elements, covers) = self.parts();
        Hasse::build(elements, covers)
    }

    /// Rebuilds the poset. The declared `rank` must match the top element.
    pub fn to_poset(&self) -> Result<PolytopePoset> {
        let p = PolytopePoset::from_hasse(self.to_hasse()?)?;
        if p.rank() != self.rank {
            return Err(crate::Error::NotBounded(format!(
                "declared rank {} but the maximal element has rank {}",
                self.rank,
                p.rank()
            )));
        }
        Ok(p)
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub(super) fn to_dot(p: &PolytopePoset) -> String {
    let mut out = String::from("digraph polytope {\n  rankdir=BT;\n");
    for i in 0..p.len() {
        let label = format!("{}:{}", p.id(i), p.element_rank(i));
        writeln!(out, "  {} [label={}];", quote(p.id(i)), quote(&label)).unwrap();
    }
    for (a, b) in p.covers() {
        writeln!(out, "  {} -> {};", quote(p.id(a)), quote(p.id(b))).unwrap();
    }
    let mut by_rank: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for i in 0..p.len() {
        by_rank.entry(p.element_rank(i)).or_default().push(i);
    }
    for members in by_rank.values() {
        let names: Vec<String> = members.iter().map(|&i| quote(p.id(i))).collect();
        writeln!(out, "  {{ rank=same; {}; }}", names.join("; ")).unwrap();
    }
    out.push_str("}\n");
    out
}
