//! Inverse sequences of finite T0 spaces and their Čech-style homology.
//!
//! A sequence `X_0 <- X_1 <- ... <- X_m` is a finite prefix of an infinite
//! tower, so every conclusion drawn here holds up to the tested depth only.
//! Limits are taken over a field, where the inverse limit of a tower of
//! finite-dimensional spaces is controlled by the ranks of composite maps.

use alloc::vec::Vec;

use crate::homology::{self, order_complex, FieldCoeff, HomologyBasis, SimplicialComplex};
use crate::linalg::{self, Field, Mat, PrimeField, Rationals};
use crate::reflection::hausdorff_reflection;
use crate::{ContinuousMap, Error, FiniteSpace, Result};

/// Stages `X_0, ..., X_m` with raw bonds `f_n : X_{n+1} -> X_n`, given as
/// point functions. Continuity and T0 are checked by [`InverseSequence::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSequence {
    spaces: Vec<FiniteSpace>,
    bonds: Vec<Vec<usize>>,
}

/// Summary of a successful [`InverseSequence::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub stages: usize,
    pub sizes: Vec<usize>,
}

impl InverseSequence {
    /// `bonds[n]` maps stage `n + 1` to stage `n`, so there is one bond fewer
    /// than stages.
    pub fn new(spaces: Vec<FiniteSpace>, bonds: Vec<Vec<usize>>) -> Result<Self> {
        if bonds.len() + 1 != spaces.len().max(1) {
            return Err(Error::BondMismatch { stage: bonds.len().min(spaces.len()) });
        }
        Ok(InverseSequence { spaces, bonds })
    }

    pub fn empty() -> Self {
        InverseSequence { spaces: Vec::new(), bonds: Vec::new() }
    }

    /// `len` copies of `space` with identity bonds.
    pub fn constant(space: FiniteSpace, len: usize) -> Self {
        let id: Vec<usize> = (0..space.len()).collect();
        InverseSequence { bonds: (1..len).map(|_| id.clone()).collect(), spaces: (0..len).map(|_| space.clone()).collect() }
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn spaces(&self) -> &[FiniteSpace] {
        &self.spaces
    }

    pub fn bonds(&self) -> &[Vec<usize>] {
        &self.bonds
    }

    /// Bond `n` as a checked map `X_{n+1} -> X_n`.
    pub fn bond(&self, n: usize) -> Result<ContinuousMap> {
        ContinuousMap::new(self.spaces[n + 1].clone(), self.spaces[n].clone(), self.bonds[n].clone())
            .map_err(|e| Error::BondNotContinuous { stage: n, source: alloc::boxed::Box::new(e) })
    }

    /// Checks that every stage is T0 and every bond is a continuous map
    /// between the right stages.
    pub fn validate(&self) -> Result<ValidationReport> {
        for (stage, space) in self.spaces.iter().enumerate() {
            if !space.is_t0() {
                return Err(Error::StageNotT0 { stage });
            }
        }
        for n in 0..self.bonds.len() {
            if self.bonds[n].len() != self.spaces[n + 1].len() {
                return Err(Error::BondMismatch { stage: n });
            }
            self.bond(n)?;
        }
        Ok(ValidationReport { stages: self.len(), sizes: self.spaces.iter().map(FiniteSpace::len).collect() })
    }

    /// Relabels stage `n` by the permutation `perms[n]` (point `x` becomes
    /// `perms[n][x]`), adjusting the bonds.
    pub fn permuted(&self, perms: &[Vec<usize>]) -> Result<InverseSequence> {
        if perms.len() != self.len() {
            return Err(Error::MapMismatch("one permutation per stage is required".into()));
        }
        let spaces = self.spaces.iter().zip(perms).map(|(s, p)| s.permuted(p)).collect::<Result<Vec<_>>>()?;
        let bonds = (0..self.bonds.len())
            .map(|n| {
                let mut b = alloc::vec![0; self.bonds[n].len()];
                for (x, &y) in self.bonds[n].iter().enumerate() {
                    b[perms[n + 1][x]] = perms[n][y];
                }
                b
            })
            .collect();
        Ok(InverseSequence { spaces, bonds })
    }
}

/// The Hausdorff reflection of every stage with the induced bonds. Every
/// reflected stage is discrete, with one point per component of the stage.
pub fn stagewise_reflection(seq: &InverseSequence) -> Result<InverseSequence> {
    seq.validate()?;
    let reflections = seq.spaces.iter().map(hausdorff_reflection).collect::<Result<Vec<_>>>()?;
    let bonds = (0..seq.bonds.len())
        .map(|n| {
            let (upper, lower) = (&reflections[n + 1], &reflections[n]);
            (0..upper.classes.num_blocks())
                .map(|c| lower.projection.apply(seq.bonds[n][upper.classes.rep(c)]))
                .collect()
        })
        .collect();
    Ok(InverseSequence { spaces: reflections.into_iter().map(|r| r.space).collect(), bonds })
}

/// Dimension of the inverse limit of a homology tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitDim {
    /// Images stabilized and the stable images form a surjective tower within
    /// the tested window.
    Exact(usize),
    /// Not stabilized within the window; the limit dimension is only
    /// estimated by the smallest deep image and the largest stage.
    Bracket { lower: usize, upper: usize },
}

impl LimitDim {
    pub fn exact(self) -> Option<usize> {
        match self {
            LimitDim::Exact(d) => Some(d),
            LimitDim::Bracket { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechReport {
    pub degree: usize,
    pub coeff: FieldCoeff,
    pub window: usize,
    /// `betti[n]` is `dim H_k(X_n)`.
    pub betti: Vec<usize>,
    /// `image_ranks[n][w - 1]` is the rank of `H_k(X_{n+w}) -> H_k(X_n)`, for
    /// `w = 1..=window` as far as the sequence reaches.
    pub image_ranks: Vec<Vec<usize>>,
    pub stabilized: bool,
    /// The maps between stable images are onto wherever the sequence is deep
    /// enough to tell.
    pub mittag_leffler: bool,
    pub limit_dim: LimitDim,
}

/// Per-stage homology in degree `k` and the ranks of composite bond maps.
pub fn cech_homology(seq: &InverseSequence, degree: usize, coeff: FieldCoeff, window: usize) -> Result<CechReport> {
    let coeff = coeff.validate()?;
    if window == 0 || seq.len() < window + 1 {
        return Err(Error::WindowTooLarge { window, needed: window + 1, len: seq.len() });
    }
    seq.validate()?;
    let complexes = seq.spaces.iter().map(order_complex).collect::<Result<Vec<_>>>()?;
    let ranks = match coeff {
        FieldCoeff::Rationals => composite_ranks(&Rationals, seq, &complexes, degree, window + 1)?,
        FieldCoeff::ModP(p) => composite_ranks(&PrimeField { p }, seq, &complexes, degree, window + 1)?,
    };
    let (betti, deep) = ranks;
    let m = seq.len() - 1;
    // rank at width w, with width 0 the stage itself
    let at = |n: usize, w: usize| if w == 0 { betti[n] } else { deep[n][w - 1] };
    let stabilized = (0..=m).filter(|&n| n + window <= m).all(|n| at(n, window - 1) == at(n, window));
    let mittag_leffler = (0..=m).filter(|&n| n + window < m).all(|n| at(n, window + 1) == at(n, window));
    let limit_dim = if stabilized && mittag_leffler {
        LimitDim::Exact(at(0, window))
    } else {
        let lower = (0..=m).filter(|&n| n < m).map(|n| at(n, window.min(m - n))).min().unwrap_or(0);
        let upper = betti.iter().copied().max().unwrap_or(0);
        LimitDim::Bracket { lower, upper }
    };
    let image_ranks = deep.into_iter().map(|mut r| {
        r.truncate(window);
        r
    });
    Ok(CechReport {
        degree,
        coeff,
        window,
        betti,
        image_ranks: image_ranks.collect(),
        stabilized,
        mittag_leffler,
        limit_dim,
    })
}

type StageRanks = (Vec<usize>, Vec<Vec<usize>>);

fn composite_ranks<F: Field>(
    field: &F,
    seq: &InverseSequence,
    complexes: &[SimplicialComplex],
    degree: usize,
    max_width: usize,
) -> Result<StageRanks> {
    let bases: Vec<HomologyBasis<F::Elem>> =
        complexes.iter().map(|k| homology::homology_basis(field, k, degree)).collect();
    let bonds: Vec<Mat<F::Elem>> = (0..seq.bonds.len())
        .map(|n| {
            homology::induced_matrix(
                field,
                (&complexes[n + 1], &bases[n + 1]),
                (&complexes[n], &bases[n]),
                &seq.bonds[n],
                degree,
            )
        })
        .collect::<Result<_>>()?;
    let betti = bases.iter().map(HomologyBasis::dim).collect();
    let deep = (0..seq.len())
        .map(|n| {
            let mut ranks = Vec::new();
            let mut composite: Option<Mat<F::Elem>> = None;
            for w in 1..=max_width {
                if n + w >= seq.len() {
                    break;
                }
                let next = &bonds[n + w - 1];
                let c = match composite.take() {
                    None => next.clone(),
                    Some(c) => linalg::mul(field, &c, next),
                };
                ranks.push(linalg::rank(field, &c));
                composite = Some(c);
            }
            ranks
        })
        .collect();
    Ok((betti, deep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn point_tower(len: usize) -> InverseSequence {
        InverseSequence::constant(FiniteSpace::point(), len)
    }

    #[test]
    fn validation() {
        assert_eq!(InverseSequence::empty().validate().unwrap().stages, 0);
        let s = FiniteSpace::sierpinski();
        let bad = InverseSequence::new(vec![s.clone(), s.clone(), s], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(bad.validate(), Err(Error::BondNotContinuous { stage: 1, .. })));
        let non_t0 = InverseSequence::constant(FiniteSpace::indiscrete(2), 2);
        assert_eq!(non_t0.validate(), Err(Error::StageNotT0 { stage: 0 }));
        assert!(InverseSequence::new(vec![FiniteSpace::point()], vec![vec![0]]).is_err());
    }

    #[test]
    fn reflection_of_discrete_tower_is_unchanged() {
        let seq = InverseSequence::constant(FiniteSpace::discrete(2), 3);
        let r = stagewise_reflection(&seq).unwrap();
        assert_eq!(r, seq);
    }

    #[test]
    fn reflection_component_counts() {
        let pc = FiniteSpace::pseudocircle();
        let two = pc.disjoint_union(&pc);
        let seq = InverseSequence::new(
            vec![pc.clone(), two.clone(), two],
            vec![vec![0, 1, 2, 3, 0, 1, 2, 3], (0..8).collect()],
        )
        .unwrap();
        let sizes: Vec<usize> = stagewise_reflection(&seq).unwrap().spaces().iter().map(FiniteSpace::len).collect();
        assert_eq!(sizes, vec![1, 2, 2]);
    }

    #[test]
    fn point_tower_limits() {
        let seq = point_tower(3);
        for k in 1..3 {
            let r = cech_homology(&seq, k, FieldCoeff::Rationals, 2).unwrap();
            assert_eq!(r.limit_dim, LimitDim::Exact(0));
        }
        let r = cech_homology(&seq, 0, FieldCoeff::ModP(2), 2).unwrap();
        assert_eq!(r.limit_dim, LimitDim::Exact(1));
        assert_eq!(
            cech_homology(&seq, 0, FieldCoeff::Rationals, 3),
            Err(Error::WindowTooLarge { window: 3, needed: 4, len: 3 })
        );
    }

    #[test]
    fn vanishing_bonds_do_not_stabilize_early() {
        // circles mapped to a point and back: H_1 images die after one step
        let pc = FiniteSpace::pseudocircle();
        let seq = InverseSequence::new(
            vec![pc.clone(), FiniteSpace::point(), pc.clone(), pc],
            vec![vec![0], vec![0; 4], vec![0, 1, 2, 3]],
        )
        .unwrap();
        let r = cech_homology(&seq, 1, FieldCoeff::Rationals, 2).unwrap();
        assert_eq!(r.betti, vec![1, 0, 1, 1]);
        assert_eq!(r.image_ranks[0], vec![0, 0]);
        assert_eq!(r.image_ranks[2], vec![1]);
    }
}
