//! Towers of finite T0 spaces approximating a circle, an interval and a
//! wedge of two circles.
//!
//! Each model is covered by open pieces whose endpoints are rational
//! multiples of the full length. A cover is encoded exactly as the set of
//! open grid cells each piece covers: an open piece is the interior of the
//! closure of its cells, so two pieces meet iff they share a cell and one lies
//! in another iff its cells do. The nerve of the cover is turned into a finite
//! space by its face poset, and a finer cover maps to a coarser one by sending
//! each piece to the smallest-index coarse piece containing it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::homology::SimplicialComplex;
use crate::{ContinuousMap, Error, FiniteSpace, InverseSequence, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Circle,
    Interval,
    /// Two circles glued at one point.
    Wedge2,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Circle => "circle",
            Model::Interval => "interval",
            Model::Wedge2 => "wedge2",
        }
    }

    pub fn from_name(name: &str) -> Option<Model> {
        match name {
            "circle" => Some(Model::Circle),
            "interval" => Some(Model::Interval),
            "wedge2" => Some(Model::Wedge2),
            _ => None,
        }
    }

    fn min_resolution(self) -> usize {
        match self {
            Model::Circle | Model::Wedge2 => 3,
            Model::Interval => 2,
        }
    }

    /// Betti numbers in degrees 0 and 1.
    pub fn betti(self) -> [usize; 2] {
        match self {
            Model::Circle => [1, 1],
            Model::Interval => [1, 0],
            Model::Wedge2 => [1, 2],
        }
    }
}

/// A cover of a model space.
///
/// * circle, resolution `n`: arcs of width `2/n` turn centred at `j/n`;
/// * interval, resolution `n`: pieces of width `2/(n-1)` centred at
///   `j/(n-1)`, clipped to `[0, 1]`;
/// * wedge2, resolution `n`: `n` such arcs on each circle, where the two arcs
///   around the wedge point form a single piece (`2n - 1` pieces in all).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoverSpec {
    pub model: Model,
    pub resolution: usize,
}

impl CoverSpec {
    pub fn new(model: Model, resolution: usize) -> Result<Self> {
        let minimum = model.min_resolution();
        if resolution < minimum {
            return Err(Error::ResolutionTooSmall { model: model.name(), resolution, minimum });
        }
        Ok(CoverSpec { model, resolution })
    }

    pub fn element_count(&self) -> usize {
        match self.model {
            Model::Circle | Model::Interval => self.resolution,
            Model::Wedge2 => 2 * self.resolution - 1,
        }
    }

    /// Cells of the coarsest grid on which every piece is a union of cells.
    fn base_cells(&self) -> usize {
        match self.model {
            Model::Circle => self.resolution,
            Model::Interval => self.resolution - 1,
            Model::Wedge2 => 2 * self.resolution,
        }
    }

    /// Each piece as a set of cells of the base grid refined `scale` times.
    fn cells(&self, scale: usize) -> Vec<FixedBitSet> {
        let n = self.resolution;
        let grid = self.base_cells() * scale;
        // open cells [(j-1)s, (j+1)s) around centre j, wrapping on a loop of `len` cells
        let arc = |set: &mut FixedBitSet, j: usize, offset: usize| {
            let len = n * scale;
            for c in 0..2 * scale {
                set.insert(offset + ((j + n - 1) * scale + c) % len);
            }
        };
        match self.model {
            Model::Circle => (0..n)
                .map(|j| {
                    let mut s = FixedBitSet::with_capacity(grid);
                    arc(&mut s, j, 0);
                    s
                })
                .collect(),
            Model::Interval => (0..n)
                .map(|j| {
                    let mut s = FixedBitSet::with_capacity(grid);
                    let lo = (j * scale).saturating_sub(scale);
                    let hi = ((j + 1) * scale).min(grid);
                    s.insert_range(lo..hi);
                    s
                })
                .collect(),
            Model::Wedge2 => {
                let mut pieces = Vec::with_capacity(2 * n - 1);
                let mut centre = FixedBitSet::with_capacity(grid);
                arc(&mut centre, 0, 0);
                arc(&mut centre, 0, n * scale);
                pieces.push(centre);
                for offset in [0, n * scale] {
                    for j in 1..n {
                        let mut s = FixedBitSet::with_capacity(grid);
                        arc(&mut s, j, offset);
                        pieces.push(s);
                    }
                }
                pieces
            }
        }
    }
}

/// The nerve: one vertex per piece, one simplex per family of pieces with a
/// common point.
pub fn nerve(cover: &CoverSpec) -> Result<SimplicialComplex> {
    let cover = CoverSpec::new(cover.model, cover.resolution)?;
    let pieces = cover.cells(1);
    let mut simplices = Vec::new();
    let mut stack: Vec<(Vec<usize>, FixedBitSet)> =
        pieces.iter().enumerate().map(|(i, s)| (alloc::vec![i], s.clone())).collect();
    while let Some((simplex, common)) = stack.pop() {
        let last = *simplex.last().expect("nonempty");
        for (j, piece) in pieces.iter().enumerate().skip(last + 1) {
            let meet = &common & piece;
            if !meet.is_clear() {
                let mut bigger = simplex.clone();
                bigger.push(j);
                stack.push((bigger, meet));
            }
        }
        simplices.push(simplex);
    }
    SimplicialComplex::new(pieces.len(), &simplices)
}

/// Simplices ordered by inclusion, as a T0 space. Point `i` is the `i`-th
/// simplex in dimension-then-lexicographic order and is labelled by its
/// vertices joined with `-`.
pub fn face_poset(complex: &SimplicialComplex) -> FiniteSpace {
    let simplices: Vec<&Vec<usize>> = complex.iter().collect();
    let is_face = |a: &[usize], b: &[usize]| a.iter().all(|v| b.binary_search(v).is_ok());
    let space = FiniteSpace::from_relation(simplices.len(), |x, y| is_face(simplices[x], simplices[y]))
        .expect("inclusion is a partial order");
    let labels: Vec<String> = simplices
        .iter()
        .map(|s| s.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join("-"))
        .collect();
    space.with_labels(labels).expect("simplices are distinct")
}

/// A tower of face posets of nerves with its covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub covers: Vec<CoverSpec>,
    pub nerves: Vec<SimplicialComplex>,
    /// Nerve vertex maps `finer -> coarser`, one per bond.
    pub vertex_maps: Vec<Vec<usize>>,
    pub sequence: InverseSequence,
}

/// The coarse piece chosen for each fine piece: the smallest index among
/// the coarse pieces containing it.
fn refinement_map(coarse: &CoverSpec, fine: &CoverSpec) -> Result<Vec<usize>> {
    let grid = coarse.base_cells().lcm(&fine.base_cells());
    let big = coarse.cells(grid / coarse.base_cells());
    let small = fine.cells(grid / fine.base_cells());
    small
        .iter()
        .enumerate()
        .map(|(j, piece)| big.iter().position(|b| piece.is_subset(b)).ok_or(Error::BondNotWellDefined(j)))
        .collect()
}

/// Stages are face posets of nerves at resolutions `base * 2^i` for
/// `i = 0..depth`, coarsest first. Every bond is checked for continuity.
pub fn build_tower(model: Model, base: usize, depth: usize) -> Result<Tower> {
    let covers = (0..depth)
        .map(|i| CoverSpec::new(model, base.saturating_mul(2usize.saturating_pow(i as u32))))
        .collect::<Result<Vec<_>>>()?;
    let nerves = covers.iter().map(nerve).collect::<Result<Vec<_>>>()?;
    let spaces: Vec<FiniteSpace> = nerves.iter().map(face_poset).collect();
    let mut vertex_maps = Vec::new();
    let mut bonds = Vec::new();
    for n in 0..covers.len().saturating_sub(1) {
        let phi = refinement_map(&covers[n], &covers[n + 1])?;
        let (fine, coarse) = (&nerves[n + 1], &nerves[n]);
        let bond = fine
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut image: Vec<usize> = s.iter().map(|&v| phi[v]).collect();
                image.sort_unstable();
                image.dedup();
                coarse.index_of(&image).map(|_| image).ok_or(Error::BondNotWellDefined(i))
            })
            .collect::<Result<Vec<_>>>()?;
        // points of a face poset are numbered in the complex's iteration order
        let coarse_points: Vec<&Vec<usize>> = coarse.iter().collect();
        let map: Vec<usize> = bond
            .iter()
            .map(|img| coarse_points.binary_search_by(|p| (p.len(), p.as_slice()).cmp(&(img.len(), img.as_slice()))).expect("image is a simplex"))
            .collect();
        ContinuousMap::check(&spaces[n + 1], &spaces[n], &map)
            .map_err(|e| Error::BondNotContinuous { stage: n, source: alloc::boxed::Box::new(e) })?;
        vertex_maps.push(phi);
        bonds.push(map);
    }
    let sequence = InverseSequence::new(spaces, bonds)?;
    Ok(Tower { covers, nerves, vertex_maps, sequence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn circle_nerves_are_cycles() {
        let k = nerve(&CoverSpec { model: Model::Circle, resolution: 4 }).unwrap();
        assert_eq!(k, SimplicialComplex::polygon(4));
        let k3 = nerve(&CoverSpec { model: Model::Circle, resolution: 3 }).unwrap();
        assert_eq!(k3, SimplicialComplex::polygon(3));
        assert_eq!(
            nerve(&CoverSpec { model: Model::Circle, resolution: 2 }),
            Err(Error::ResolutionTooSmall { model: "circle", resolution: 2, minimum: 3 })
        );
    }

    #[test]
    fn interval_nerve_is_a_path() {
        let k = nerve(&CoverSpec { model: Model::Interval, resolution: 3 }).unwrap();
        assert_eq!(k, SimplicialComplex::path(3));
    }

    #[test]
    fn wedge_nerve_shares_one_vertex() {
        let k = nerve(&CoverSpec { model: Model::Wedge2, resolution: 4 }).unwrap();
        assert_eq!(k.count(0), 7);
        assert_eq!(k.count(1), 8);
        assert_eq!(k.count(2), 0);
        assert_eq!(k.simplices(1).iter().filter(|e| e[0] == 0).count(), 4);
    }

    #[test]
    fn face_posets() {
        let edge = SimplicialComplex::full_simplex(2);
        let p = face_poset(&edge);
        assert_eq!(p.len(), 3);
        assert!(p.leq(0, 2) && p.leq(1, 2) && !p.leq(0, 1));
        assert_eq!(p.label(2), "0-1");
        assert_eq!(face_poset(&SimplicialComplex::polygon(4)).len(), 8);
        assert!(face_poset(&SimplicialComplex::from_maximal(0, &[]).unwrap()).is_empty());
    }

    #[test]
    fn refinement_prefers_smallest_index() {
        let coarse = CoverSpec { model: Model::Circle, resolution: 4 };
        let fine = CoverSpec { model: Model::Circle, resolution: 8 };
        // odd fine arcs sit in two coarse arcs; the last one wraps to arc 0
        assert_eq!(refinement_map(&coarse, &fine).unwrap(), vec![0, 0, 1, 1, 2, 2, 3, 0]);
    }

    #[test]
    fn tower_sizes() {
        let t = build_tower(Model::Circle, 4, 3).unwrap();
        let sizes: Vec<usize> = t.sequence.spaces().iter().map(FiniteSpace::len).collect();
        assert_eq!(sizes, vec![8, 16, 32]);
        assert!(t.sequence.validate().is_ok());
        assert!(build_tower(Model::Interval, 1, 2).is_err());
        assert!(build_tower(Model::Circle, 4, 0).unwrap().sequence.is_empty());
    }
}
