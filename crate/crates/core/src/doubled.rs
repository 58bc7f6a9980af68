//! Symbolic non-Hausdorff gluings: a Hausdorff base with some points
//! doubled.
//!
//! The total space is the base with each twin vertex `v` replaced by two
//! copies `v` and `v'` that share every neighbourhood outside `v` itself. Any
//! neighbourhood of `v` contains a punctured neighbourhood of `v` in the
//! base, and so does any neighbourhood of `v'`; when `v` lies on an edge those
//! punctured neighbourhoods are nonempty and always meet. So the two copies
//! are `R1`-related and cannot be separated, while distinct base points are
//! separated as in the base. `R1` therefore consists of the diagonal and the
//! twin pairs, it is already an equivalence relation, and the Hausdorff
//! reflection collapses each pair back onto the base.
//!
//! For an isolated vertex the punctured neighbourhood is empty, the copies
//! are separated and the space is still Hausdorff; such twins are rejected.
//!
//! Only the reflection side is computed. Invariants of the non-Hausdorff total
//! space itself (its singular homology can differ) are left alone.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::homology::SimplicialComplex;
use crate::{Error, Partition, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledSpace {
    name: String,
    base: SimplicialComplex,
    twins: Vec<usize>,
}

impl DoubledSpace {
    pub fn new(name: impl Into<String>, base: SimplicialComplex, twins: Vec<usize>) -> Result<Self> {
        let d = DoubledSpace { name: name.into(), base, twins };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<()> {
        for (i, &v) in self.twins.iter().enumerate() {
            if v >= self.base.vertex_count() {
                return Err(Error::IndexOutOfRange { index: v, len: self.base.vertex_count() });
            }
            if self.twins[..i].contains(&v) {
                return Err(Error::MapMismatch(format!("vertex {v} doubled twice")));
            }
            if !self.base.simplices(1).iter().any(|e| e.contains(&v)) {
                return Err(Error::IsolatedTwin(v));
            }
        }
        Ok(())
    }

    /// Two concentric circles identified everywhere except at one angle: a
    /// square with one doubled corner.
    pub fn punctured_circle() -> Self {
        Self::new("punctured-circle", SimplicialComplex::polygon(4), alloc::vec![0]).expect("valid")
    }

    /// A segment whose midpoint is doubled.
    pub fn two_origin_line() -> Self {
        Self::new("two-origin-line", SimplicialComplex::path(3), alloc::vec![1]).expect("valid")
    }

    pub fn named(name: &str) -> Option<Self> {
        match name {
            "punctured-circle" => Some(Self::punctured_circle()),
            "two-origin-line" => Some(Self::two_origin_line()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn twins(&self) -> &[usize] {
        &self.twins
    }

    /// Base vertices followed by one extra copy per twin.
    pub fn point_count(&self) -> usize {
        self.base.vertex_count() + self.twins.len()
    }

    /// `v3` for a base vertex, `v3'` for the copy of a twin.
    pub fn point_label(&self, p: usize) -> String {
        let v = self.base.vertex_count();
        if p < v {
            format!("v{p}")
        } else {
            format!("v{}'", self.twins[p - v])
        }
    }

    /// The collapse onto the base: copies go to their original vertex.
    pub fn reflection_map(&self) -> Vec<usize> {
        (0..self.base.vertex_count()).chain(self.twins.iter().copied()).collect()
    }
}

/// `R1`, `R2` and `R3` on the marked points of a doubled space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RClasses {
    pub points: usize,
    /// Off-diagonal `R1` pairs `(v, copy of v)`.
    pub r1_pairs: Vec<(usize, usize)>,
    /// `R2 = R3`: the twin pairs and singletons.
    pub classes: Partition,
}

pub fn r_classes(d: &DoubledSpace) -> Result<RClasses> {
    d.check()?;
    let v = d.base.vertex_count();
    let r1_pairs: Vec<(usize, usize)> = d.twins.iter().enumerate().map(|(i, &t)| (t, v + i)).collect();
    let classes = Partition::from_block_ids(&d.reflection_map());
    Ok(RClasses { points: d.point_count(), r1_pairs, classes })
}

/// The Hausdorff reflection: the base complex with every twin collapsed.
pub fn reflection(d: &DoubledSpace) -> Result<SimplicialComplex> {
    d.check()?;
    Ok(d.base.clone())
}
