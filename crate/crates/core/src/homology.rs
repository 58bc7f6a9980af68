//! Order complexes and simplicial homology.
//!
//! The order complex of a finite T0 space has the chains of its partial order
//! as simplices and carries the weak homotopy type of the space. Homology is
//! unreduced, so `H_0` counts connected components. Simplices are stored per
//! dimension in lexicographic order and oriented by ascending vertex index.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::{self, Field, Mat, PrimeField, Rationals};
use crate::unionfind::UnionFind;
use crate::{ContinuousMap, Error, FiniteSpace, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    /// `by_dim[k]` holds the k-simplices, sorted.
    by_dim: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    fn from_sets(vertices: usize, mut by_dim: Vec<Vec<Vec<usize>>>) -> Self {
        while by_dim.last().is_some_and(|d| d.is_empty()) {
            by_dim.pop();
        }
        for d in &mut by_dim {
            d.sort_unstable();
            d.dedup();
        }
        let index = by_dim
            .iter()
            .map(|d| d.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { vertices, by_dim, index }
    }

    fn normalize(vertices: usize, simplex: &[usize]) -> Result<Vec<usize>> {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        if s.is_empty() {
            return Err(Error::NotFaceClosed("empty simplex".into()));
        }
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotFaceClosed(format!("repeated vertex in {simplex:?}")));
        }
        if let Some(&v) = s.iter().find(|&&v| v >= vertices) {
            return Err(Error::IndexOutOfRange { index: v, len: vertices });
        }
        Ok(s)
    }

    /// A complex from its full list of simplices, which must be closed under
    /// taking nonempty faces.
    pub fn new(vertices: usize, simplices: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for s in simplices {
            let s = Self::normalize(vertices, s)?;
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(s);
        }
        let k = Self::from_sets(vertices, by_dim);
        for s in k.iter() {
            if s.len() > 1 {
                for face in facets(s) {
                    if !k.contains(&face) {
                        return Err(Error::NotFaceClosed(format!("{s:?} is missing its face {face:?}")));
                    }
                }
            }
        }
        Ok(k)
    }

    /// The smallest complex containing every listed simplex.
    pub fn from_maximal(vertices: usize, simplices: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for s in simplices {
            let s = Self::normalize(vertices, s)?;
            if s.len() > 24 {
                return Err(Error::NotFaceClosed(format!("simplex of dimension {} is too large to close", s.len() - 1)));
            }
            for mask in 1u32..(1u32 << s.len()) {
                let face: Vec<usize> = (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, Vec::new());
                }
                by_dim[d].push(face);
            }
        }
        Ok(Self::from_sets(vertices, by_dim))
    }

    /// `n` isolated vertices.
    pub fn discrete(n: usize) -> Self {
        Self::from_sets(n, vec![(0..n).map(|v| vec![v]).collect()])
    }

    /// The full simplex on `n` vertices.
    pub fn full_simplex(n: usize) -> Self {
        Self::from_maximal(n, &[(0..n).collect()]).expect("valid simplex")
    }

    /// The boundary of an `n`-gon, `n >= 3`.
    pub fn polygon(n: usize) -> Self {
        let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        Self::from_maximal(n, &edges).expect("valid polygon")
    }

    /// A path through `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut simplices: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        simplices.extend((1..n).map(|i| vec![i - 1, i]));
        Self::from_maximal(n, &simplices).expect("valid path")
    }

    /// Number of vertices (`0..vertices`); vertices need not appear in a
    /// simplex only when the complex was built that way explicitly.
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Highest dimension with a simplex, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.by_dim.get(k).map_or(&[], |d| d.as_slice())
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    /// Total number of simplices.
    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// All simplices, by dimension then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.by_dim.iter().flatten()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex.len().checked_sub(1)?)?.get(simplex).copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(k, d)| if k % 2 == 0 { d.len() as i64 } else { -(d.len() as i64) })
            .sum()
    }

    /// Connected components of the 1-skeleton among vertices that occur.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        for e in self.simplices(1) {
            uf.union(e[0], e[1]);
        }
        let mut roots: Vec<usize> = self.simplices(0).iter().map(|v| uf.find(v[0])).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// `∂_k` as rows indexed by (k-1)-simplices and columns by k-simplices.
    pub fn boundary(&self, k: usize) -> Vec<Vec<i64>> {
        let m = self.boundary_matrix(k);
        (0..m.rows).map(|r| m.data[r * m.cols..(r + 1) * m.cols].to_vec()).collect()
    }

    /// `∂_k : C_k -> C_{k-1}` with rows indexed by (k-1)-simplices. Removing
    /// the vertex at position `i` contributes the sign `(-1)^i`.
    pub(crate) fn boundary_matrix(&self, k: usize) -> Mat<i64> {
        let rows = if k == 0 { 0 } else { self.count(k - 1) };
        let mut m = Mat::filled(rows, self.count(k), 0i64);
        if k == 0 {
            return m;
        }
        for (c, s) in self.simplices(k).iter().enumerate() {
            for (i, face) in facets(s).enumerate() {
                let r = self.index[k - 1][&face];
                m.set(r, c, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }
}

/// Faces obtained by dropping one vertex, in order of the dropped position.
fn facets(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..s.len()).map(move |i| s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect())
}

/// Simplices are the nonempty chains of the partial order; vertex `i` is
/// point `i`.
pub fn order_complex(space: &FiniteSpace) -> Result<SimplicialComplex> {
    if !space.is_t0() {
        return Err(Error::NotT0);
    }
    let n = space.len();
    let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut chain = Vec::new();
    fn extend(space: &FiniteSpace, chain: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        let mut s = chain.clone();
        s.sort_unstable();
        if out.len() < chain.len() {
            out.resize(chain.len(), Vec::new());
        }
        out[chain.len() - 1].push(s);
        let top = *chain.last().expect("nonempty chain");
        for y in space.up_set(top).ones() {
            if y != top {
                chain.push(y);
                extend(space, chain, out);
                chain.pop();
            }
        }
    }
    for x in 0..n {
        chain.push(x);
        extend(space, &mut chain, &mut by_dim);
        chain.pop();
    }
    Ok(SimplicialComplex::from_sets(n, by_dim))
}

/// Coefficients for [`homology`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    ModP(u64),
}

/// Field coefficients, for induced maps and limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldCoeff {
    Rationals,
    ModP(u64),
}

impl From<FieldCoeff> for Coefficients {
    fn from(f: FieldCoeff) -> Self {
        match f {
            FieldCoeff::Rationals => Coefficients::Rationals,
            FieldCoeff::ModP(p) => Coefficients::ModP(p),
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    let prime = p >= 2 && (2..).take_while(|d: &u64| d.saturating_mul(*d) <= p).all(|d| !p.is_multiple_of(d));
    if prime {
        Ok(())
    } else {
        Err(Error::UnsupportedPrime(p))
    }
}

impl FieldCoeff {
    pub fn validate(self) -> Result<Self> {
        if let FieldCoeff::ModP(p) = self {
            check_prime(p)?;
        }
        Ok(self)
    }
}

/// Betti numbers per degree and, over the integers, the torsion
/// coefficients of each group as invariant factors greater than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub coefficients: Coefficients,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    pub fn betti(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion.iter().any(|t| !t.is_empty())
    }
}

/// Unreduced simplicial homology. Integer homology uses the Smith normal
/// form of every boundary matrix; field homology uses ranks.
pub fn homology(complex: &SimplicialComplex, coeff: Coefficients) -> Result<HomologyResult> {
    let top = complex.by_dim.len();
    // ranks[k] = rank of ∂_k, with ∂_0 = 0 and ∂_top = 0
    let mut ranks = vec![0usize; top + 1];
    let mut torsion = vec![Vec::new(); top];
    match coeff {
        Coefficients::Integers => {
            for k in 1..top {
                let factors = linalg::invariant_factors(&complex.boundary_matrix(k));
                ranks[k] = factors.len();
                torsion[k - 1] = factors.into_iter().filter(|d| !d.is_one()).collect();
            }
        }
        Coefficients::Rationals => {
            for k in 1..top {
                ranks[k] = linalg::rank(&Rationals, &linalg::convert(&Rationals, &complex.boundary_matrix(k)));
            }
        }
        Coefficients::ModP(p) => {
            check_prime(p)?;
            let field = PrimeField { p };
            for k in 1..top {
                ranks[k] = linalg::rank(&field, &linalg::convert(&field, &complex.boundary_matrix(k)));
            }
        }
    }
    let betti = (0..top).map(|k| complex.count(k) - ranks[k] - ranks[k + 1]).collect();
    Ok(HomologyResult { coefficients: coeff, betti, torsion })
}

/// A chosen basis of `H_k` over a field: representative cycles plus, for
/// each basis class, a row functional reading off its coordinate from any
/// cycle.
#[derive(Clone, Debug)]
pub(crate) struct HomologyBasis<E> {
    pub reps: Vec<Vec<E>>,
    pub coord: Mat<E>,
}

impl<E> HomologyBasis<E> {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
}

pub(crate) fn homology_basis<F: Field>(field: &F, complex: &SimplicialComplex, k: usize) -> HomologyBasis<F::Elem> {
    let m = complex.count(k);
    let cycles: Vec<Vec<F::Elem>> = if k == 0 {
        (0..m)
            .map(|i| {
                let mut v = vec![field.zero(); m];
                v[i] = field.one();
                v
            })
            .collect()
    } else {
        linalg::nullspace(field, &linalg::convert(field, &complex.boundary_matrix(k)))
    };
    let next = linalg::convert(field, &complex.boundary_matrix(k + 1));
    let mut boundaries: Vec<Vec<F::Elem>> = (0..next.cols).map(|c| next.column(c)).collect();
    if next.rows != m {
        boundaries.clear();
    }
    let b = boundaries.len();
    let mut columns = boundaries;
    columns.extend(cycles.iter().cloned());
    let mut a = Mat::from_columns(m, &columns, field.zero());
    let pivots = linalg::rref(field, &mut a, columns.len());
    let boundary_pivots: Vec<usize> = pivots.iter().copied().filter(|&p| p < b).collect();
    let reps: Vec<Vec<F::Elem>> = pivots.iter().filter(|&&p| p >= b).map(|&p| columns[p].clone()).collect();
    // [P | I] with P the independent boundaries followed by the reps; P has
    // full column rank, so after reduction row i of the right block gives the
    // i-th coordinate.
    let mut basis_cols: Vec<Vec<F::Elem>> = boundary_pivots.iter().map(|&p| columns[p].clone()).collect();
    basis_cols.extend(reps.iter().cloned());
    let r = basis_cols.len();
    let mut aug = Mat::filled(m, r + m, field.zero());
    for (c, col) in basis_cols.iter().enumerate() {
        for (row, v) in col.iter().enumerate() {
            aug.set(row, c, v.clone());
        }
    }
    for i in 0..m {
        aug.set(i, r + i, field.one());
    }
    let piv = linalg::rref(field, &mut aug, r);
    debug_assert_eq!(piv.len(), r);
    let h = reps.len();
    let mut coord = Mat::filled(h, m, field.zero());
    for i in 0..h {
        for j in 0..m {
            coord.set(i, j, aug.get(r - h + i, r + j).clone());
        }
    }
    HomologyBasis { reps, coord }
}

/// The chain map in degree `k` induced by a vertex map that sends simplices
/// to simplices, degenerate images going to zero.
pub(crate) fn chain_map(dom: &SimplicialComplex, cod: &SimplicialComplex, vertex_map: &[usize], k: usize) -> Result<Mat<i64>> {
    let mut m = Mat::filled(cod.count(k), dom.count(k), 0i64);
    for (c, s) in dom.simplices(k).iter().enumerate() {
        let mut image: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
        // sign of the sorting permutation, by counting inversions
        let mut inversions = 0usize;
        for i in 0..image.len() {
            for j in i + 1..image.len() {
                if image[i] > image[j] {
                    inversions += 1;
                }
            }
        }
        image.sort_unstable();
        if image.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let r = cod
            .index_of(&image)
            .ok_or_else(|| Error::MapMismatch(format!("image of {s:?} is not a simplex")))?;
        m.set(r, c, if inversions.is_multiple_of(2) { 1 } else { -1 });
    }
    Ok(m)
}

pub(crate) fn induced_matrix<F: Field>(
    field: &F,
    dom: (&SimplicialComplex, &HomologyBasis<F::Elem>),
    cod: (&SimplicialComplex, &HomologyBasis<F::Elem>),
    vertex_map: &[usize],
    k: usize,
) -> Result<Mat<F::Elem>> {
    let chain = linalg::convert(field, &chain_map(dom.0, cod.0, vertex_map, k)?);
    let mut out = Mat::filled(cod.1.dim(), dom.1.dim(), field.zero());
    for (j, rep) in dom.1.reps.iter().enumerate() {
        let image = linalg::mat_vec(field, &chain, rep);
        let coords = linalg::mat_vec(field, &cod.1.coord, &image);
        for (i, v) in coords.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// A matrix over the coefficient field, entries stored as rationals (the
/// canonical residues `0..p` for prime fields).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BigRational>,
}

impl FieldMatrix {
    fn from_mat<F: Field>(field: &F, m: &Mat<F::Elem>) -> Self {
        FieldMatrix { rows: m.rows, cols: m.cols, entries: m.data.iter().map(|e| field.to_rational(e)).collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| *self.get(r, c) == if r == c { BigRational::one() } else { BigRational::zero() }))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

/// The linear maps `H_k(dom) -> H_k(cod)` for every degree up to the larger
/// of the two dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMapOnHomology {
    pub coeff: FieldCoeff,
    pub degrees: Vec<FieldMatrix>,
}

impl LinearMapOnHomology {
    /// The matrix in degree `k`, if that degree was computed.
    pub fn degree(&self, k: usize) -> Option<&FieldMatrix> {
        self.degrees.get(k)
    }

    /// `g ∘ self` degree by degree, over the shared field.
    pub fn then(&self, g: &LinearMapOnHomology) -> Result<LinearMapOnHomology> {
        if self.coeff != g.coeff {
            return Err(Error::MapMismatch("different coefficient fields".into()));
        }
        let degrees = self.degrees.len().max(g.degrees.len());
        let mut out = Vec::with_capacity(degrees);
        for k in 0..degrees {
            let (a, b) = match (self.degrees.get(k), g.degrees.get(k)) {
                (Some(a), Some(b)) => (a, b),
                (Some(a), None) => {
                    out.push(FieldMatrix { rows: 0, cols: a.cols, entries: Vec::new() });
                    continue;
                }
                (None, Some(b)) => {
                    out.push(FieldMatrix { rows: b.rows, cols: 0, entries: Vec::new() });
                    continue;
                }
                (None, None) => unreachable!(),
            };
            if a.rows != b.cols {
                return Err(Error::MapMismatch(format!("degree {k}: {}x{} after {}x{}", b.rows, b.cols, a.rows, a.cols)));
            }
            out.push(match self.coeff {
                FieldCoeff::Rationals => product_in(&Rationals, b, a),
                FieldCoeff::ModP(p) => product_in(&PrimeField { p }, b, a),
            });
        }
        Ok(LinearMapOnHomology { coeff: self.coeff, degrees: out })
    }

    pub fn rank(&self, k: usize) -> usize {
        self.degree(k).map_or(0, |m| match self.coeff {
            FieldCoeff::Rationals => rank_in(&Rationals, m),
            FieldCoeff::ModP(p) => rank_in(&PrimeField { p }, m),
        })
    }
}

fn product_in<F: Field>(field: &F, b: &FieldMatrix, a: &FieldMatrix) -> FieldMatrix {
    FieldMatrix::from_mat(field, &linalg::mul(field, &to_elems(field, b), &to_elems(field, a)))
}

fn rank_in<F: Field>(field: &F, m: &FieldMatrix) -> usize {
    linalg::rank(field, &to_elems(field, m))
}

fn to_elems<F: Field>(field: &F, m: &FieldMatrix) -> Mat<F::Elem> {
    Mat { rows: m.rows, cols: m.cols, data: m.entries.iter().map(|e| field.from_rational(e)).collect() }
}

/// The maps on field homology induced by a continuous map of T0 spaces,
/// through the simplicial map it induces on order complexes.
pub fn induced_map(f: &ContinuousMap, coeff: FieldCoeff) -> Result<LinearMapOnHomology> {
    let coeff = coeff.validate()?;
    if !f.dom().is_t0() || !f.cod().is_t0() {
        return Err(Error::NotT0);
    }
    ContinuousMap::check(f.dom(), f.cod(), f.as_slice())?;
    let kx = order_complex(f.dom())?;
    let ky = order_complex(f.cod())?;
    match coeff {
        FieldCoeff::Rationals => induced_in(&Rationals, coeff, &kx, &ky, f.as_slice()),
        FieldCoeff::ModP(p) => induced_in(&PrimeField { p }, coeff, &kx, &ky, f.as_slice()),
    }
}

fn induced_in<F: Field>(
    field: &F,
    coeff: FieldCoeff,
    kx: &SimplicialComplex,
    ky: &SimplicialComplex,
    vertex_map: &[usize],
) -> Result<LinearMapOnHomology> {
    let top = kx.by_dim.len().max(ky.by_dim.len());
    let mut degrees = Vec::with_capacity(top);
    for k in 0..top {
        let bx = homology_basis(field, kx, k);
        let by = homology_basis(field, ky, k);
        let m = induced_matrix(field, (kx, &bx), (ky, &by), vertex_map, k)?;
        degrees.push(FieldMatrix::from_mat(field, &m));
    }
    Ok(LinearMapOnHomology { coeff, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: &SimplicialComplex) -> HomologyResult {
        homology(k, Coefficients::Integers).unwrap()
    }

    #[test]
    fn order_complexes() {
        let s = order_complex(&FiniteSpace::sierpinski()).unwrap();
        assert_eq!(s.simplices(1), &[vec![0, 1]]);
        let pc = order_complex(&FiniteSpace::pseudocircle()).unwrap();
        assert_eq!((pc.count(0), pc.count(1), pc.count(2)), (4, 4, 0));
        assert_eq!(pc.simplices(1), &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        let d = order_complex(&FiniteSpace::discrete(3)).unwrap();
        assert_eq!(d, SimplicialComplex::discrete(3));
        assert_eq!(order_complex(&FiniteSpace::indiscrete(2)), Err(Error::NotT0));
        assert!(order_complex(&FiniteSpace::empty()).unwrap().is_empty());
    }

    #[test]
    fn integer_homology() {
        let pc = z(&order_complex(&FiniteSpace::pseudocircle()).unwrap());
        assert_eq!(pc.betti, vec![1, 1]);
        assert!(!pc.has_torsion());
        assert_eq!(z(&SimplicialComplex::discrete(3)).betti, vec![3]);
        assert_eq!(z(&SimplicialComplex::full_simplex(3)).betti, vec![1, 0, 0]);
        assert!(z(&SimplicialComplex::from_maximal(0, &[]).unwrap()).betti.is_empty());
    }

    #[test]
    fn projective_plane_torsion() {
        // 6-vertex triangulation of RP^2
        let faces = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let k = SimplicialComplex::from_maximal(6, &faces.map(|f| f.to_vec())).unwrap();
        let h = z(&k);
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![BigInt::from(2)]);
        assert_eq!(homology(&k, Coefficients::ModP(2)).unwrap().betti, vec![1, 1, 1]);
        assert_eq!(homology(&k, Coefficients::Rationals).unwrap().betti, vec![1, 0, 0]);
        assert_eq!(homology(&k, Coefficients::ModP(4)), Err(Error::UnsupportedPrime(4)));
    }

    #[test]
    fn complex_validation() {
        assert!(SimplicialComplex::new(3, &[vec![0, 1]]).is_err());
        assert!(SimplicialComplex::new(3, &[vec![0], vec![1], vec![1, 0]]).is_ok());
        assert!(SimplicialComplex::new(2, &[vec![0, 0]]).is_err());
        assert!(SimplicialComplex::new(2, &[vec![0, 2]]).is_err());
    }

    #[test]
    fn induced_identity_and_constant() {
        let pc = FiniteSpace::pseudocircle();
        let id = induced_map(&ContinuousMap::identity(pc.clone()), FieldCoeff::Rationals).unwrap();
        assert!(id.degrees.iter().all(FieldMatrix::is_identity));
        let c = ContinuousMap::new(pc, FiniteSpace::point(), vec![0; 4]).unwrap();
        let m = induced_map(&c, FieldCoeff::Rationals).unwrap();
        assert!(m.degree(0).unwrap().is_identity());
        let d1 = m.degree(1).unwrap();
        assert_eq!((d1.rows, d1.cols), (0, 1));
    }

    #[test]
    fn induced_inclusion_into_two_circles() {
        let pc = FiniteSpace::pseudocircle();
        let two = pc.disjoint_union(&pc);
        let incl = ContinuousMap::new(pc, two, vec![0, 1, 2, 3]).unwrap();
        let m = induced_map(&incl, FieldCoeff::ModP(3)).unwrap();
        let d0 = m.degree(0).unwrap();
        assert_eq!((d0.rows, d0.cols), (2, 1));
        assert_eq!(m.rank(0), 1);
        assert_eq!(m.rank(1), 1);
    }

    #[test]
    fn orientation_reversal_is_minus_one() {
        // swap c and d: reverses the orientation of the 4-cycle
        let pc = FiniteSpace::pseudocircle();
        let swap = ContinuousMap::new(pc.clone(), pc, vec![0, 1, 3, 2]).unwrap();
        let m = induced_map(&swap, FieldCoeff::Rationals).unwrap();
        assert_eq!(*m.degree(1).unwrap().get(0, 0), -BigRational::one());
        let m3 = induced_map(&swap, FieldCoeff::ModP(3)).unwrap();
        assert_eq!(*m3.degree(1).unwrap().get(0, 0), BigRational::from_integer(2.into()));
    }
}
