//! Symbolic descriptors for the automorphism groups of the family.
//!
//! Only three shapes occur: the symmetric group `Sym(k)`, the hyperoctahedral
//! group `Hyp(k) = (Z/2Z)^k ⋊ Sym(k)` and direct products. Equality is
//! structural on normal forms; `Sym(2)` and `Hyp(1)` stay distinct even though
//! they are isomorphic as abstract groups.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupDescriptor {
    Sym { k: u32 },
    Hyp { k: u32 },
    Prod { factors: Vec<GroupDescriptor> },
}

impl GroupDescriptor {
    pub fn sym(k: u32) -> Self {
        GroupDescriptor::Sym { k }
    }

    pub fn hyp(k: u32) -> Self {
        GroupDescriptor::Hyp { k }
    }

    /// The trivial group, as the empty direct product.
    pub fn trivial() -> Self {
        GroupDescriptor::Prod { factors: Vec::new() }
    }

    pub fn product(factors: impl IntoIterator<Item = GroupDescriptor>) -> Self {
        GroupDescriptor::Prod {
            factors: factors.into_iter().collect(),
        }
    }

    /// `self × other`, dropping a trivial operand instead of nesting it.
    /// Non-trivial operands nest, so rendering keeps the grouping in which
    /// the product was formed.
    pub fn times(self, other: GroupDescriptor) -> Self {
        if self.is_trivial() {
            other
        } else if other.is_trivial() {
            self
        } else {
            GroupDescriptor::Prod {
                factors: vec![self, other],
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            GroupDescriptor::Sym { k } => *k <= 1,
            GroupDescriptor::Hyp { k } => *k == 0,
            GroupDescriptor::Prod { factors } => factors.iter().all(Self::is_trivial),
        }
    }

    pub fn order(&self) -> BigUint {
        match self {
            GroupDescriptor::Sym { k } => factorial(*k),
            GroupDescriptor::Hyp { k } => (BigUint::one() << *k as usize) * factorial(*k),
            GroupDescriptor::Prod { factors } => factors.iter().map(Self::order).product(),
        }
    }

    /// Flattened, trivial factors removed, factors sorted; a single factor is
    /// returned bare and no factors gives the empty product.
    pub fn normalize(&self) -> Self {
        let mut flat = Vec::new();
        self.flatten_into(&mut flat);
        flat.sort();
        match flat.len() {
            1 => flat.pop().unwrap(),
            _ => GroupDescriptor::Prod { factors: flat },
        }
    }

    fn flatten_into(&self, out: &mut Vec<GroupDescriptor>) {
        match self {
            GroupDescriptor::Prod { factors } => factors.iter().for_each(|f| f.flatten_into(out)),
            d if d.is_trivial() => {}
            d => out.push(d.clone()),
        }
    }

    /// Structural equality of normal forms.
    pub fn equivalent(&self, other: &GroupDescriptor) -> bool {
        self.normalize() == other.normalize()
    }

    fn needs_parens(&self) -> bool {
        match self {
            GroupDescriptor::Sym { .. } => false,
            GroupDescriptor::Hyp { k } => *k != 1,
            GroupDescriptor::Prod { factors } => factors.len() > 1,
        }
    }
}

fn factorial(k: u32) -> BigUint {
    (1..=k).map(BigUint::from).product()
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Sym { k } => write!(f, "Sym({k})"),
            GroupDescriptor::Hyp { k: 1 } => write!(f, "Z/2Z"),
            GroupDescriptor::Hyp { k } => write!(f, "(Z/2Z)^{k} ⋊ Sym({k})"),
            GroupDescriptor::Prod { factors } if factors.is_empty() => write!(f, "1"),
            GroupDescriptor::Prod { factors } if factors.len() == 1 => write!(f, "{}", factors[0]),
            GroupDescriptor::Prod { factors } => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " × ")?;
                    }
                    if factor.needs_parens() {
                        write!(f, "({factor})")?;
                    } else {
                        write!(f, "{factor}")?;
                    }
                }
                Ok(())
            }
        }
    }
}
