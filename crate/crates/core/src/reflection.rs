//! The neighbourhood-intersection relation tower and the Hausdorff reflection
//! of finite spaces.
//!
//! * `x R1 y` when every neighbourhood of `x` meets every neighbourhood of `y`.
//!   Every neighbourhood of `x` contains `U_x`, so on a finite space this is
//!   `U_x ∩ U_y ≠ ∅`: the two points have a common lower bound.
//! * `R2` is the chain closure of `R1`.
//! * `x R3 y` when `f(x) = f(y)` for every continuous `f` into a Hausdorff
//!   space. The Hausdorff reflection is `X / R3`.
//!
//! # Why `R3 = R2` on finite spaces
//!
//! An `R1` pair `x, y` shares a point `z <= x, y`, so both lie in the same
//! connected component; conversely any comparable pair `x <= y` is `R1`
//! related through `x` itself. Hence the `R2` classes are the connected
//! components. Components of a finite space are open and closed, so `X / R2`
//! is discrete and in particular Hausdorff, which gives `R3 ⊆ R2`. A
//! continuous map into a Hausdorff space has finite image, the image is a
//! finite Hausdorff space and therefore discrete, and a continuous map into a
//! discrete space is constant on components; that gives `R2 ⊆ R3`.
//!
//! The same argument shows that maps into discrete spaces with at most `n`
//! points already witness `R3`, which is what [`R3Mode::Oracle`] enumerates.
//!
//! On finite spaces T1 already forces discreteness, so the T1 and T2
//! reflections coincide; the T0 reflection is
//! [`FiniteSpace::kolmogorov_quotient`].

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::bits;
use crate::unionfind::UnionFind;
use crate::{ContinuousMap, Error, FiniteSpace, Partition, Result};

/// Exhaustive map enumeration is refused above this many candidates.
pub const MAX_ENUMERATED_MAPS: u128 = 1_000_000;

/// Largest space accepted by [`R3Mode::Oracle`].
pub const ORACLE_MAX_POINTS: usize = 6;

/// A reflexive, symmetric relation on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    rows: Vec<FixedBitSet>,
}

impl RelationMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn row(&self, x: usize) -> &FixedBitSet {
        &self.rows[x]
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|x| self.related(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.len()).all(|x| self.rows[x].ones().all(|y| self.related(y, x)))
    }

    /// Related pairs with `x < y`.
    pub fn off_diagonal_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.rows[x].ones().filter(move |&y| y > x).map(move |y| (x, y)))
            .collect()
    }
}

/// `x R1 y` iff `U_x ∩ U_y ≠ ∅`.
pub fn r1(space: &FiniteSpace) -> RelationMatrix {
    let n = space.len();
    let rows = (0..n)
        .map(|x| {
            let mut row = FixedBitSet::with_capacity(n);
            for y in 0..n {
                if bits::intersects(space.down_set(x), space.down_set(y)) {
                    row.insert(y);
                }
            }
            row
        })
        .collect();
    RelationMatrix { rows }
}

/// The transitive closure of [`r1`] as a partition. Always equal to the
/// connected components; this is asserted.
pub fn r2(space: &FiniteSpace) -> Partition {
    let n = space.len();
    let rel = r1(space);
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        for y in rel.row(x).ones() {
            uf.union(x, y);
        }
    }
    let classes = Partition::from_block_ids(&uf.roots());
    assert_eq!(classes, space.connected_components(), "R2 classes must be the connected components");
    classes
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum R3Mode {
    /// `R3 = R2`, see the module documentation.
    #[default]
    Fast,
    /// Intersect the kernels of every continuous map into the discrete space
    /// with `n` points. Limited to [`ORACLE_MAX_POINTS`] points.
    Oracle,
}

pub fn r3(space: &FiniteSpace, mode: R3Mode) -> Result<Partition> {
    match mode {
        R3Mode::Fast => Ok(r2(space)),
        R3Mode::Oracle => r3_oracle(space),
    }
}

fn r3_oracle(space: &FiniteSpace) -> Result<Partition> {
    let n = space.len();
    if n > ORACLE_MAX_POINTS {
        return Err(Error::OracleTooLarge(n));
    }
    // together[x] holds the points identified with x by every map seen so far.
    let mut together: Vec<FixedBitSet> = (0..n).map(|_| bits::full(n)).collect();
    for_each_map(n, n, |f| {
        if is_continuous_to_discrete(space, f) {
            for x in 0..n {
                for y in 0..n {
                    if f[x] != f[y] {
                        together[x].set(y, false);
                    }
                }
            }
        }
    });
    let ids: Vec<usize> = (0..n).map(|x| together[x].minimum().unwrap_or(x)).collect();
    Ok(Partition::from_block_ids(&ids))
}

/// Calls `visit` with every function `0..n -> 0..target`, in lexicographic
/// order.
fn for_each_map(n: usize, target: usize, mut visit: impl FnMut(&[usize])) {
    if n > 0 && target == 0 {
        return;
    }
    let mut f = vec![0usize; n];
    loop {
        visit(&f);
        let mut i = n;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            f[i] += 1;
            if f[i] < target {
                break;
            }
            f[i] = 0;
        }
    }
}

/// A map into a discrete space is continuous iff comparable points share a
/// value.
fn is_continuous_to_discrete(space: &FiniteSpace, f: &[usize]) -> bool {
    (0..space.len()).all(|y| space.down_set(y).ones().all(|x| f[x] == f[y]))
}

/// The Hausdorff reflection `μ: X -> X_H` together with its classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub classes: Partition,
    pub space: FiniteSpace,
    pub projection: ContinuousMap,
}

/// `X_H = X / R3` with the quotient topology; always discrete.
pub fn hausdorff_reflection(space: &FiniteSpace) -> Result<Reflection> {
    hausdorff_reflection_with(space, R3Mode::Fast)
}

pub fn hausdorff_reflection_with(space: &FiniteSpace, mode: R3Mode) -> Result<Reflection> {
    let classes = r3(space, mode)?;
    let (quotient, projection) = space.quotient(&classes)?;
    debug_assert!(quotient.is_discrete());
    debug_assert!(projection.is_surjective());
    Ok(Reflection { classes, space: quotient, projection })
}

/// The unique `g: X_H -> Z` with `g ∘ μ = f`, for `f` continuous into a
/// discrete `Z`. `g` sends each class to the value of `f` on the class
/// representative.
pub fn factor_through(f: &ContinuousMap, refl: &Reflection) -> Result<ContinuousMap> {
    if !f.dom().same_topology(refl.projection.dom()) {
        return Err(Error::MapMismatch("map and reflection have different domains".into()));
    }
    if !f.cod().is_discrete() {
        return Err(Error::NotDiscrete);
    }
    ContinuousMap::check(f.dom(), f.cod(), f.as_slice())?;
    let g: Vec<usize> = (0..refl.classes.num_blocks()).map(|c| f.apply(refl.classes.rep(c))).collect();
    for x in 0..f.dom().len() {
        let c = refl.projection.apply(x);
        if g[c] != f.apply(x) {
            return Err(Error::NotConstantOnClasses(c));
        }
    }
    ContinuousMap::new(refl.space.clone(), f.cod().clone(), g)
}

/// Outcome of an exhaustive universal-property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalReport {
    pub n: usize,
    pub classes: usize,
    pub max_target: usize,
    /// Point functions examined.
    pub candidate_maps: u128,
    /// Continuous maps found, each of which was factored.
    pub verified_maps: usize,
    /// Continuous maps with no factorization or more than one.
    pub failures: usize,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Enumerates every continuous map from `space` into the discrete space with
/// `max_target` points (maps into smaller discrete spaces are among them, up
/// to the inclusion) and checks that each factors through the reflection in
/// exactly one way.
pub fn verify_universal_property(space: &FiniteSpace, max_target: usize) -> Result<UniversalReport> {
    let n = space.len();
    let candidates = (max_target as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if candidates > MAX_ENUMERATED_MAPS {
        return Err(Error::SearchSpaceTooLarge(candidates));
    }
    let refl = hausdorff_reflection(space)?;
    let k = refl.classes.num_blocks();
    let target = FiniteSpace::discrete(max_target);
    let mut report = UniversalReport {
        n,
        classes: k,
        max_target,
        candidate_maps: candidates,
        verified_maps: 0,
        failures: 0,
    };
    let mut result = Ok(());
    for_each_map(n, max_target, |f| {
        if result.is_err() || !is_continuous_to_discrete(space, f) {
            return;
        }
        report.verified_maps += 1;
        let f = ContinuousMap::unchecked(space.clone(), target.clone(), f.to_vec());
        match factor_through(&f, &refl) {
            Ok(g) => {
                // Any other factorization agrees with g on every class because
                // μ hits every class; count those that would differ.
                let mut others = 0usize;
                for_each_map(k, max_target, |h| {
                    if h != g.as_slice() && (0..n).all(|x| h[refl.projection.apply(x)] == f.apply(x)) {
                        others += 1;
                    }
                });
                if others > 0 {
                    report.failures += 1;
                }
            }
            Err(Error::NotConstantOnClasses(_)) => report.failures += 1,
            Err(e) => result = Err(e),
        }
    });
    result.map(|()| report)
}

/// A homeomorphism `(X × Y)_H -> X_H × Y_H`, if the search finds one.
pub fn product_reflection_witness(x: &FiniteSpace, y: &FiniteSpace) -> Result<Option<Vec<usize>>> {
    let of_product = hausdorff_reflection(&x.product(y))?;
    let product_of = hausdorff_reflection(x)?.space.product(&hausdorff_reflection(y)?.space);
    Ok(of_product.space.is_homeomorphic(&product_of))
}

/// Whether the reflection of `X × Y` is homeomorphic to the product of the
/// reflections. The continuum statement for `X × [0,1]` has this finite
/// analogue with an arbitrary finite second factor.
pub fn reflection_commutes_with_product(x: &FiniteSpace, y: &FiniteSpace) -> Result<bool> {
    Ok(product_reflection_witness(x, y)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_sierpinskis() -> FiniteSpace {
        FiniteSpace::sierpinski().disjoint_union(&FiniteSpace::sierpinski())
    }

    #[test]
    fn r1_examples() {
        let s = r1(&FiniteSpace::sierpinski());
        assert!(s.related(0, 1));
        let d = r1(&FiniteSpace::discrete(2));
        assert!(!d.related(0, 1) && d.is_reflexive());
        let pc = r1(&FiniteSpace::pseudocircle());
        assert!(pc.related(2, 3) && pc.related(0, 2) && pc.related(1, 3));
        assert!(!pc.related(0, 1));
        assert!(pc.is_symmetric());
    }

    #[test]
    fn r2_examples() {
        assert_eq!(r2(&FiniteSpace::pseudocircle()).num_blocks(), 1);
        assert_eq!(r2(&FiniteSpace::discrete(4)), Partition::singletons(4));
        assert_eq!(r2(&two_sierpinskis()).blocks(), &[vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn r3_modes() {
        let s = FiniteSpace::sierpinski();
        assert_eq!(r3(&s, R3Mode::Oracle).unwrap(), Partition::whole(2));
        assert_eq!(r3(&FiniteSpace::discrete(3), R3Mode::Fast).unwrap(), Partition::singletons(3));
        let pc = FiniteSpace::pseudocircle();
        assert_eq!(r3(&pc, R3Mode::Fast).unwrap(), r3(&pc, R3Mode::Oracle).unwrap());
        assert_eq!(r3(&FiniteSpace::discrete(7), R3Mode::Oracle), Err(Error::OracleTooLarge(7)));
        assert_eq!(r3(&FiniteSpace::empty(), R3Mode::Oracle).unwrap().num_blocks(), 0);
    }

    #[test]
    fn reflections() {
        let r = hausdorff_reflection(&FiniteSpace::pseudocircle()).unwrap();
        assert_eq!(r.space.len(), 1);
        let d = hausdorff_reflection(&FiniteSpace::discrete(3)).unwrap();
        assert_eq!(d.projection.as_slice(), &[0, 1, 2]);
        let x = FiniteSpace::sierpinski().disjoint_union(&FiniteSpace::point());
        let r = hausdorff_reflection(&x).unwrap();
        assert!(r.space.same_topology(&FiniteSpace::discrete(2)));
        assert!(hausdorff_reflection(&FiniteSpace::empty()).unwrap().space.is_empty());
    }

    #[test]
    fn factorizations() {
        let s = FiniteSpace::sierpinski();
        let r = hausdorff_reflection(&s).unwrap();
        let f = ContinuousMap::new(s, FiniteSpace::discrete(2), vec![1, 1]).unwrap();
        assert_eq!(factor_through(&f, &r).unwrap().as_slice(), &[1]);

        let d = FiniteSpace::discrete(2);
        let r = hausdorff_reflection(&d).unwrap();
        let id = ContinuousMap::identity(d);
        assert_eq!(factor_through(&id, &r).unwrap().as_slice(), &[0, 1]);

        let pc = FiniteSpace::pseudocircle();
        let two = pc.disjoint_union(&pc);
        let r = hausdorff_reflection(&two).unwrap();
        let indicator = ContinuousMap::new(two, FiniteSpace::discrete(2), vec![1, 1, 1, 1, 0, 0, 0, 0]).unwrap();
        let g = factor_through(&indicator, &r).unwrap();
        assert_eq!(g.as_slice(), &[1, 0]);
        assert!(g.is_injective() && g.is_surjective());

        let not_discrete = ContinuousMap::identity(FiniteSpace::sierpinski());
        let r = hausdorff_reflection(&FiniteSpace::sierpinski()).unwrap();
        assert_eq!(factor_through(&not_discrete, &r), Err(Error::NotDiscrete));
    }

    #[test]
    fn universal_property_counts() {
        let rep = verify_universal_property(&FiniteSpace::sierpinski(), 3).unwrap();
        assert_eq!((rep.verified_maps, rep.failures), (3, 0));
        let rep = verify_universal_property(&FiniteSpace::discrete(2), 2).unwrap();
        assert_eq!((rep.verified_maps, rep.failures), (4, 0));
        let rep = verify_universal_property(&FiniteSpace::pseudocircle(), 2).unwrap();
        assert_eq!((rep.verified_maps, rep.failures), (2, 0));
        assert_eq!(
            verify_universal_property(&FiniteSpace::discrete(13), 3),
            Err(Error::SearchSpaceTooLarge(3u128.pow(13)))
        );
    }

    #[test]
    fn products_commute() {
        let pc = FiniteSpace::pseudocircle();
        assert!(reflection_commutes_with_product(&pc, &FiniteSpace::sierpinski()).unwrap());
        assert!(reflection_commutes_with_product(&FiniteSpace::discrete(2), &FiniteSpace::discrete(3)).unwrap());
        let w = product_reflection_witness(&two_sierpinskis(), &FiniteSpace::discrete(3)).unwrap();
        assert_eq!(w.map(|w| w.len()), Some(6));
    }

    #[test]
    fn map_enumeration_order() {
        let mut seen = Vec::new();
        for_each_map(2, 2, |f| seen.push(f.to_vec()));
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let mut count = 0;
        for_each_map(0, 0, |_| count += 1);
        assert_eq!(count, 1);
    }
}
