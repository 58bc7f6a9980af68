//! Finite topological spaces stored as specialization preorders.
//!
//! Points are dense indices `0..n`. The relation `x <= y` holds when `x`
//! belongs to the minimal open set `U_y`, so the open sets of the encoded
//! topology are exactly the down-sets of the preorder. Labels are carried as
//! metadata and never influence any computation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::bits;
use crate::unionfind::UnionFind;
use crate::{Error, Result};

/// Quotients with at most this many blocks are additionally checked against
/// an enumeration of every set of blocks.
const QUOTIENT_ENUMERATION_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    /// `down[x]` is the minimal open set `U_x = {y : y <= x}`.
    down: Vec<FixedBitSet>,
    /// `up[x]` is the closure of `{x}`, i.e. `{y : x <= y}`.
    up: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
}

impl FiniteSpace {
    fn from_down_sets(down: Vec<FixedBitSet>) -> Self {
        let n = down.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (y, d) in down.iter().enumerate() {
            for x in d.ones() {
                up[x].insert(y);
            }
        }
        FiniteSpace { down, up, labels: None }
    }

    /// The space whose preorder is the reflexive-transitive closure of `pairs`,
    /// each `(x, y)` meaning `x <= y`.
    pub fn from_preorder(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut down: Vec<FixedBitSet> = (0..n).map(|x| bits::singleton(n, x)).collect();
        for &(x, y) in pairs {
            for index in [x, y] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, len: n });
                }
            }
            down[y].insert(x);
        }
        // Warshall: if k <= y then everything below k is below y.
        for k in 0..n {
            let below_k = down[k].clone();
            for d in down.iter_mut() {
                if d.contains(k) {
                    d.union_with(&below_k);
                }
            }
        }
        Ok(Self::from_down_sets(down))
    }

    /// Builds a space from an explicit relation, rejecting it unless it is
    /// reflexive and transitive.
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for y in 0..n {
            for x in 0..n {
                if leq(x, y) {
                    down[y].insert(x);
                }
            }
        }
        for x in 0..n {
            if !down[x].contains(x) {
                return Err(Error::NotAPreorder(format!("{x} <= {x} fails")));
            }
        }
        for y in 0..n {
            for k in down[y].ones() {
                if !down[k].is_subset(&down[y]) {
                    let x = down[k].difference(&down[y]).next().unwrap_or(k);
                    return Err(Error::NotAPreorder(format!("{x} <= {k} <= {y} but not {x} <= {y}")));
                }
            }
        }
        Ok(Self::from_down_sets(down))
    }

    /// Ingests a topology presented by its open sets. The family must contain
    /// the empty set and the whole space and be closed under pairwise unions
    /// and intersections.
    pub fn from_opens<S: AsRef<str>>(points: &[S], opens: &[Vec<S>]) -> Result<Self> {
        let n = points.len();
        let mut index = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.as_ref(), i).is_some() {
                return Err(Error::DuplicateLabel(p.as_ref().to_string()));
            }
        }
        let mut family: Vec<FixedBitSet> = Vec::with_capacity(opens.len());
        for open in opens {
            let mut set = FixedBitSet::with_capacity(n);
            for name in open {
                let &i = index
                    .get(name.as_ref())
                    .ok_or_else(|| Error::UnknownLabel(name.as_ref().to_string()))?;
                set.insert(i);
            }
            if !family.contains(&set) {
                family.push(set);
            }
        }
        if !family.iter().any(|s| s.is_clear()) {
            return Err(Error::NotATopology("the empty set is not open".into()));
        }
        if !family.iter().any(|s| s.count_ones(..) == n) {
            return Err(Error::NotATopology("the whole space is not open".into()));
        }
        for a in &family {
            for b in &family {
                if !family.contains(&(a | b)) {
                    return Err(Error::NotATopology("opens are not closed under union".into()));
                }
                if !family.contains(&(a & b)) {
                    return Err(Error::NotATopology("opens are not closed under intersection".into()));
                }
            }
        }
        // U_y is the intersection of the opens containing y.
        let down = (0..n)
            .map(|y| {
                let mut u = bits::full(n);
                for s in family.iter().filter(|s| s.contains(y)) {
                    u.intersect_with(s);
                }
                u
            })
            .collect();
        let labels = points.iter().map(|p| p.as_ref().to_string()).collect();
        Ok(FiniteSpace { labels: Some(labels), ..Self::from_down_sets(down) })
    }

    /// Attaches point names. Names must be distinct and one per point.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::MapMismatch(format!(
                "{} labels for {} points",
                labels.len(),
                self.len()
            )));
        }
        let mut seen = BTreeMap::new();
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn empty() -> Self {
        Self::from_down_sets(Vec::new())
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_down_sets((0..n).map(|x| bits::singleton(n, x)).collect())
    }

    pub fn indiscrete(n: usize) -> Self {
        Self::from_down_sets((0..n).map(|_| bits::full(n)).collect())
    }

    /// Two points `a <= b`: `{a}` is open, `{b}` is not.
    pub fn sierpinski() -> Self {
        Self::from_preorder(2, &[(0, 1)])
            .and_then(|s| s.with_labels(vec!["a".into(), "b".into()]))
            .expect("static space")
    }

    /// The four-point space with minimal points `a, b` and maximal points
    /// `c, d`, each minimal point below each maximal one. Its order complex is
    /// a 4-cycle.
    pub fn pseudocircle() -> Self {
        Self::from_preorder(4, &[(0, 2), (0, 3), (1, 2), (1, 3)])
            .and_then(|s| s.with_labels(vec!["a".into(), "b".into(), "c".into(), "d".into()]))
            .expect("static space")
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    /// `U_x` as a bit set.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Closure of `{x}` as a bit set.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// The minimal open set `U_x = {y : y <= x}`, the intersection of every
    /// open set containing `x`.
    pub fn minimal_open(&self, x: usize) -> Result<Vec<usize>> {
        self.check_index(x)?;
        Ok(self.down[x].ones().collect())
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: x, len: self.len() })
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The name of `x`, or its index when the space is unlabeled.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|s| s == label),
            None => label.parse().ok().filter(|&i| i < self.len()),
        }
    }

    /// Same points and same preorder, labels ignored.
    pub fn same_topology(&self, other: &FiniteSpace) -> bool {
        self.down == other.down
    }

    /// Whether `set` is open, i.e. a down-set.
    pub fn is_open(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.down[x].is_subset(set))
    }

    /// Number of pairs `x <= y`, including the diagonal.
    pub fn relation_size(&self) -> usize {
        self.down.iter().map(|d| d.count_ones(..)).sum()
    }

    pub fn is_t0(&self) -> bool {
        (0..self.len()).all(|x| self.down[x].intersection(&self.up[x]).count() == 1)
    }

    /// On a finite space T1 means every point is closed, which forces the
    /// preorder to be equality.
    pub fn is_t1(&self) -> bool {
        self.down.iter().all(|d| d.count_ones(..) == 1)
    }

    /// Finite Hausdorff spaces are discrete and conversely.
    pub fn is_discrete(&self) -> bool {
        self.is_t1()
    }

    /// The same points with the reversed order (closed and open sets swapped).
    pub fn opposite(&self) -> Self {
        FiniteSpace { down: self.up.clone(), up: self.down.clone(), labels: self.labels.clone() }
    }

    /// The same space with point `x` renumbered to `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut inverse = vec![usize::MAX; n];
        if perm.len() != n {
            return Err(Error::MapMismatch(format!("permutation of {} points for {n}", perm.len())));
        }
        for (x, &p) in perm.iter().enumerate() {
            self.check_index(p)?;
            if inverse[p] != usize::MAX {
                return Err(Error::MapMismatch(format!("{p} is hit twice")));
            }
            inverse[p] = x;
        }
        let down = (0..n)
            .map(|p| {
                let mut d = FixedBitSet::with_capacity(n);
                for x in self.down[inverse[p]].ones() {
                    d.insert(perm[x]);
                }
                d
            })
            .collect();
        let mut space = Self::from_down_sets(down);
        if let Some(labels) = &self.labels {
            space.labels = Some((0..n).map(|p| labels[inverse[p]].clone()).collect());
        }
        Ok(space)
    }

    /// A generating set of pairs whose reflexive-transitive closure is the
    /// preorder: strict covers between distinct classes plus every pair inside
    /// a class of mutually comparable points.
    pub fn generators(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let equiv = |a: usize, b: usize| self.leq(a, b) && self.leq(b, a);
        let mut out = Vec::new();
        for y in 0..n {
            for x in self.down[y].ones() {
                if x == y {
                    continue;
                }
                if equiv(x, y) {
                    out.push((x, y));
                    continue;
                }
                let between = self.up[x]
                    .intersection(&self.down[y])
                    .any(|z| !equiv(z, x) && !equiv(z, y));
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Identifies topologically indistinguishable points. The result is T0
    /// and the projection is a continuous surjection.
    pub fn kolmogorov_quotient(&self) -> (FiniteSpace, ContinuousMap) {
        let n = self.len();
        let mut ids = vec![usize::MAX; n];
        for x in 0..n {
            if ids[x] == usize::MAX {
                for y in self.down[x].intersection(&self.up[x]) {
                    ids[y] = x;
                }
            }
        }
        let partition = Partition::from_block_ids(&ids);
        let k = partition.num_blocks();
        let down = (0..k)
            .map(|c| {
                let rep = partition.rep(c);
                let mut d = FixedBitSet::with_capacity(k);
                for x in self.down[rep].ones() {
                    d.insert(partition.block_of(x));
                }
                d
            })
            .collect();
        let quotient = self.label_quotient(FiniteSpace::from_down_sets(down), &partition);
        let projection = ContinuousMap::unchecked(self.clone(), quotient.clone(), partition.block_of.clone());
        (quotient, projection)
    }

    fn label_quotient(&self, mut q: FiniteSpace, partition: &Partition) -> FiniteSpace {
        if self.labels.is_some() {
            let labels: Vec<String> = partition
                .blocks()
                .iter()
                .map(|b| {
                    if b.len() == 1 {
                        self.label(b[0])
                    } else {
                        let names: Vec<String> = b.iter().map(|&x| self.label(x)).collect();
                        format!("[{}]", names.join("|"))
                    }
                })
                .collect();
            q.labels = Some(labels);
        }
        q
    }

    /// The quotient space by `partition` with the quotient topology: a set of
    /// blocks is open iff its union is open in `self`.
    ///
    /// The preorder is computed as the transitive closure of
    /// `[x] <= [y]` whenever some `x' ~ x`, `y' ~ y` satisfy `x' <= y'`, and is
    /// then checked against the openness definition. Block `i` of the partition
    /// becomes point `i` of the quotient.
    pub fn quotient(&self, partition: &Partition) -> Result<(FiniteSpace, ContinuousMap)> {
        let n = self.len();
        if partition.len() != n {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} points, space has {n}",
                partition.len()
            )));
        }
        let k = partition.num_blocks();
        let mut down = vec![FixedBitSet::with_capacity(k); k];
        for y in 0..n {
            let by = partition.block_of(y);
            for x in self.down[y].ones() {
                down[by].insert(partition.block_of(x));
            }
        }
        for m in 0..k {
            let below = down[m].clone();
            for d in down.iter_mut() {
                if d.contains(m) {
                    d.union_with(&below);
                }
            }
        }
        self.verify_quotient(partition, &down)?;
        let quotient = self.label_quotient(FiniteSpace::from_down_sets(down), partition);
        let projection = ContinuousMap::unchecked(self.clone(), quotient.clone(), partition.block_of.clone());
        Ok((quotient, projection))
    }

    /// Checks a candidate quotient preorder against the quotient topology.
    ///
    /// For every block the smallest saturated open set containing it is grown
    /// by alternating down-closure in `self` and saturation by blocks; it must
    /// equal the block's down-set. With few blocks every set of blocks is also
    /// tested for openness directly.
    fn verify_quotient(&self, partition: &Partition, down: &[FixedBitSet]) -> Result<()> {
        let n = self.len();
        let k = partition.num_blocks();
        let union_of = |blocks: &FixedBitSet| {
            let mut pts = FixedBitSet::with_capacity(n);
            for b in blocks.ones() {
                for &x in partition.block(b) {
                    pts.insert(x);
                }
            }
            pts
        };
        for c in 0..k {
            let mut blocks = bits::singleton(k, c);
            loop {
                let pts = union_of(&blocks);
                let mut grown = blocks.clone();
                for x in pts.ones() {
                    for y in self.down[x].ones() {
                        grown.insert(partition.block_of(y));
                    }
                }
                if grown == blocks {
                    break;
                }
                blocks = grown;
            }
            if blocks != down[c] {
                let other = blocks.symmetric_difference(&down[c]).next().unwrap_or(c);
                return Err(Error::QuotientMismatch(other, c));
            }
        }
        if k <= QUOTIENT_ENUMERATION_LIMIT {
            for mask in 0u32..(1u32 << k) {
                let mut blocks = FixedBitSet::with_capacity(k);
                for b in 0..k {
                    if mask >> b & 1 == 1 {
                        blocks.insert(b);
                    }
                }
                let open_upstairs = self.is_open(&union_of(&blocks));
                let open_downstairs = blocks.ones().all(|b| down[b].is_subset(&blocks));
                if open_upstairs != open_downstairs {
                    let b = blocks.ones().next().unwrap_or(0);
                    return Err(Error::QuotientMismatch(b, b));
                }
            }
        }
        Ok(())
    }

    /// Product space on pairs, point `(x, y)` having index `x * other.len() + y`.
    /// For finite spaces the product order encodes the product topology.
    pub fn product(&self, other: &FiniteSpace) -> FiniteSpace {
        let (n, m) = (self.len(), other.len());
        let down = (0..n * m)
            .map(|p| {
                let (x, y) = (p / m, p % m);
                let mut d = FixedBitSet::with_capacity(n * m);
                for x2 in self.down[x].ones() {
                    for y2 in other.down[y].ones() {
                        d.insert(x2 * m + y2);
                    }
                }
                d
            })
            .collect();
        let mut space = FiniteSpace::from_down_sets(down);
        if self.labels.is_some() || other.labels.is_some() {
            let labels = (0..n * m)
                .map(|p| format!("({},{})", self.label(p / m), other.label(p % m)))
                .collect();
            space.labels = Some(labels);
        }
        space
    }

    /// Disjoint union; points of `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &FiniteSpace) -> FiniteSpace {
        let (n, m) = (self.len(), other.len());
        let mut down = Vec::with_capacity(n + m);
        for d in &self.down {
            let mut e = d.clone();
            e.grow(n + m);
            down.push(e);
        }
        for d in &other.down {
            let mut e = FixedBitSet::with_capacity(n + m);
            for x in d.ones() {
                e.insert(n + x);
            }
            down.push(e);
        }
        let space = FiniteSpace::from_down_sets(down);
        match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => {
                let labels = a.iter().chain(b).cloned().collect();
                space.clone().with_labels(labels).unwrap_or(space)
            }
            _ => space,
        }
    }

    /// Connected components: the components of the comparability graph.
    pub fn connected_components(&self) -> Partition {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for y in 0..n {
            for x in self.down[y].ones() {
                uf.union(x, y);
            }
        }
        Partition::from_block_ids(&uf.roots())
    }

    /// An order isomorphism `self -> other`, if any, as `f[x]` for each point
    /// `x` of `self`. Order isomorphisms of finite spaces are exactly the
    /// homeomorphisms. The search is exact backtracking, pruned by the sizes
    /// of each point's down-set and up-set.
    pub fn is_homeomorphic(&self, other: &FiniteSpace) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || self.relation_size() != other.relation_size() {
            return None;
        }
        let sig = |s: &FiniteSpace, x: usize| (s.down[x].count_ones(..), s.up[x].count_ones(..));
        let mut ours: Vec<_> = (0..n).map(|x| sig(self, x)).collect();
        let mut theirs: Vec<_> = (0..n).map(|y| sig(other, y)).collect();
        let mut candidates: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).filter(|&y| theirs[y] == ours[x]).collect())
            .collect();
        ours.sort_unstable();
        theirs.sort_unstable();
        if ours != theirs {
            return None;
        }
        // Assign points in breadth-first order over the comparability graph so
        // each new point is constrained by an already placed neighbour.
        let mut order = Vec::with_capacity(n);
        let mut placed = FixedBitSet::with_capacity(n);
        let mut starts: Vec<usize> = (0..n).collect();
        starts.sort_by_key(|&x| candidates[x].len());
        for s in starts {
            if placed.contains(s) {
                continue;
            }
            placed.insert(s);
            let mut head = order.len();
            order.push(s);
            while head < order.len() {
                let x = order[head];
                head += 1;
                let neighbours = &self.down[x] | &self.up[x];
                for y in neighbours.ones() {
                    if !placed.contains(y) {
                        placed.insert(y);
                        order.push(y);
                    }
                }
            }
        }
        for c in &mut candidates {
            c.shrink_to_fit();
        }
        let mut f = vec![usize::MAX; n];
        let mut used = FixedBitSet::with_capacity(n);
        if self.extend_isomorphism(other, &order, 0, &candidates, &mut f, &mut used) {
            Some(f)
        } else {
            None
        }
    }

    fn extend_isomorphism(
        &self,
        other: &FiniteSpace,
        order: &[usize],
        depth: usize,
        candidates: &[Vec<usize>],
        f: &mut [usize],
        used: &mut FixedBitSet,
    ) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        for &y in &candidates[x] {
            if used.contains(y) {
                continue;
            }
            let consistent = order[..depth].iter().all(|&p| {
                self.leq(x, p) == other.leq(y, f[p]) && self.leq(p, x) == other.leq(f[p], y)
            });
            if !consistent {
                continue;
            }
            f[x] = y;
            used.insert(y);
            if self.extend_isomorphism(other, order, depth + 1, candidates, f, used) {
                return true;
            }
            used.set(y, false);
            f[x] = usize::MAX;
        }
        false
    }
}

/// A point function between finite spaces that is known to be continuous,
/// i.e. order-preserving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousMap {
    dom: FiniteSpace,
    cod: FiniteSpace,
    map: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(dom: FiniteSpace, cod: FiniteSpace, map: Vec<usize>) -> Result<Self> {
        Self::check(&dom, &cod, &map)?;
        Ok(ContinuousMap { dom, cod, map })
    }

    pub(crate) fn unchecked(dom: FiniteSpace, cod: FiniteSpace, map: Vec<usize>) -> Self {
        debug_assert!(Self::check(&dom, &cod, &map).is_ok());
        ContinuousMap { dom, cod, map }
    }

    /// Verifies that `map` is a total, order-preserving function `dom -> cod`.
    pub fn check(dom: &FiniteSpace, cod: &FiniteSpace, map: &[usize]) -> Result<()> {
        if map.len() != dom.len() {
            return Err(Error::MapMismatch(format!(
                "map has {} values for a domain of {} points",
                map.len(),
                dom.len()
            )));
        }
        for &v in map {
            cod.check_index(v)?;
        }
        for y in 0..dom.len() {
            for x in dom.down[y].ones() {
                if !cod.leq(map[x], map[y]) {
                    return Err(Error::NotContinuous { x, y, fx: map[x], fy: map[y] });
                }
            }
        }
        Ok(())
    }

    pub fn identity(space: FiniteSpace) -> Self {
        let map = (0..space.len()).collect();
        ContinuousMap { dom: space.clone(), cod: space, map }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ContinuousMap) -> Result<ContinuousMap> {
        if !self.cod.same_topology(&g.dom) {
            return Err(Error::MapMismatch("codomain and domain differ".into()));
        }
        let map = self.map.iter().map(|&y| g.map[y]).collect();
        Ok(ContinuousMap { dom: self.dom.clone(), cod: g.cod.clone(), map })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn dom(&self) -> &FiniteSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSpace {
        &self.cod
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = FixedBitSet::with_capacity(self.cod.len());
        for &y in &self.map {
            hit.insert(y);
        }
        hit.count_ones(..) == self.cod.len()
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = FixedBitSet::with_capacity(self.cod.len());
        self.map.iter().all(|&y| {
            let fresh = !hit.contains(y);
            hit.insert(y);
            fresh
        })
    }
}

/// An equivalence relation on `0..n` given by its blocks.
///
/// Blocks are sorted ascending internally and ordered by their smallest
/// element, which is also the block's representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Canonical partition from arbitrary per-point block identifiers.
    pub fn from_block_ids<K: Ord + Copy>(ids: &[K]) -> Self {
        let mut numbering = BTreeMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = Vec::with_capacity(ids.len());
        for (x, id) in ids.iter().enumerate() {
            let b = *numbering.entry(*id).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(x);
            block_of.push(b);
        }
        Partition { blocks, block_of }
    }

    /// Validates an explicit family of blocks over `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut ids = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::InvalidPartition(format!("point {x} out of range")));
                }
                if ids[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("point {x} lies in two blocks")));
                }
                ids[x] = b;
            }
        }
        if let Some(x) = ids.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("point {x} is in no block")));
        }
        Ok(Self::from_block_ids(&ids))
    }

    pub fn singletons(n: usize) -> Self {
        Partition { blocks: (0..n).map(|x| vec![x]).collect(), block_of: (0..n).collect() }
    }

    /// A single block holding every point (no blocks when `n == 0`).
    pub fn whole(n: usize) -> Self {
        Self::from_block_ids(&vec![0u8; n])
    }

    /// Number of points partitioned.
    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_of
    }

    /// Smallest point of block `b`.
    pub fn rep(&self, b: usize) -> usize {
        self.blocks[b][0]
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    /// Blocks with more than one point.
    pub fn nontrivial_blocks(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.blocks.iter().filter(|b| b.len() > 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_opens_sierpinski_and_discrete() {
        let s = FiniteSpace::from_opens(&["a", "b"], &[vec![], vec!["a"], vec!["a", "b"]]).unwrap();
        assert!(s.leq(0, 1));
        assert!(!s.leq(1, 0));
        let d = FiniteSpace::from_opens(&["a", "b"], &[vec![], vec!["a"], vec!["b"], vec!["a", "b"]])
            .unwrap();
        assert!(d.is_discrete());
    }

    #[test]
    fn from_opens_rejects_non_topologies() {
        let missing_total = FiniteSpace::from_opens(&["a", "b"], &[vec![], vec!["a"]]);
        assert!(matches!(missing_total, Err(Error::NotATopology(_))));
        let no_union = FiniteSpace::from_opens(
            &["a", "b", "c"],
            &[vec![], vec!["a"], vec!["b"], vec!["a", "b", "c"]],
        );
        assert!(matches!(no_union, Err(Error::NotATopology(_))));
        let dup = FiniteSpace::from_opens(&["a", "a"], &[vec![], vec!["a"]]);
        assert_eq!(dup, Err(Error::DuplicateLabel("a".into())));
        let unknown = FiniteSpace::from_opens(&["a"], &[vec![], vec!["z"]]);
        assert_eq!(unknown, Err(Error::UnknownLabel("z".into())));
    }

    #[test]
    fn from_preorder_cases() {
        let pc = FiniteSpace::pseudocircle();
        assert!(pc.leq(0, 2) && pc.leq(1, 3) && !pc.leq(2, 3) && !pc.leq(0, 1));
        assert!(FiniteSpace::from_preorder(3, &[]).unwrap().is_discrete());
        let ind = FiniteSpace::from_preorder(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(!ind.is_t0());
        assert_eq!(ind, FiniteSpace::indiscrete(2));
        assert_eq!(
            FiniteSpace::from_preorder(2, &[(0, 2)]),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        );
    }

    #[test]
    fn from_relation_rejects_non_preorders() {
        assert!(FiniteSpace::from_relation(2, |x, y| x < y).is_err());
        // 0 <= 1 <= 2 without 0 <= 2
        let r = |x: usize, y: usize| x == y || (x, y) == (0, 1) || (x, y) == (1, 2);
        assert!(matches!(FiniteSpace::from_relation(3, r), Err(Error::NotAPreorder(_))));
    }

    #[test]
    fn minimal_opens() {
        let s = FiniteSpace::sierpinski();
        assert_eq!(s.minimal_open(1).unwrap(), vec![0, 1]);
        assert_eq!(s.minimal_open(0).unwrap(), vec![0]);
        assert_eq!(FiniteSpace::pseudocircle().minimal_open(2).unwrap(), vec![0, 1, 2]);
        assert!(s.minimal_open(2).is_err());
    }

    #[test]
    fn kolmogorov() {
        let (q, p) = FiniteSpace::indiscrete(2).kolmogorov_quotient();
        assert_eq!(q.len(), 1);
        assert!(p.is_surjective());
        let pc = FiniteSpace::pseudocircle();
        let (q, p) = pc.kolmogorov_quotient();
        assert!(q.same_topology(&pc));
        assert!(p.is_injective() && p.is_surjective());
        // 0 ≡ 1 below 2 and 3
        let x = FiniteSpace::from_preorder(4, &[(0, 1), (1, 0), (0, 2), (0, 3)]).unwrap();
        let (q, _) = x.kolmogorov_quotient();
        assert_eq!(q.len(), 3);
        assert!(q.is_t0());
    }

    #[test]
    fn quotient_edge_cases() {
        let pc = FiniteSpace::pseudocircle();
        let (q, p) = pc.quotient(&Partition::singletons(4)).unwrap();
        assert!(q.same_topology(&pc));
        assert!(p.is_injective());
        let (q, _) = pc.quotient(&Partition::whole(4)).unwrap();
        assert_eq!(q.len(), 1);
        let (q, p) = FiniteSpace::sierpinski().quotient(&Partition::whole(2)).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(p.as_slice(), &[0, 0]);
        let (q, _) = FiniteSpace::empty().quotient(&Partition::whole(0)).unwrap();
        assert!(q.is_empty());
        assert!(pc.quotient(&Partition::singletons(3)).is_err());
    }

    #[test]
    fn quotient_needs_transitive_closure() {
        // a <= b, c <= d; gluing b with c makes a <= d in the quotient.
        let x = FiniteSpace::from_preorder(4, &[(0, 1), (2, 3)]).unwrap();
        let part = Partition::from_blocks(4, &[vec![0], vec![1, 2], vec![3]]).unwrap();
        let (q, _) = x.quotient(&part).unwrap();
        assert!(q.leq(0, 2));
        assert!(q.is_t0());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(2, &[vec![0], vec![], vec![1]]).is_err());
        let p = Partition::from_blocks(4, &[vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(p.rep(1), 1);
        assert_eq!(Partition::whole(0).num_blocks(), 0);
    }

    #[test]
    fn products() {
        let d = FiniteSpace::discrete(2);
        assert!(d.product(&d).is_discrete());
        let s = FiniteSpace::sierpinski();
        assert!(s.product(&FiniteSpace::point()).same_topology(&s));
        let ss = s.product(&s);
        assert_eq!(ss.len(), 4);
        assert!((0..4).all(|p| ss.leq(0, p)));
        assert_eq!((0..4).filter(|&p| ss.down_set(p).count_ones(..) == 1).count(), 1);
    }

    #[test]
    fn components() {
        assert_eq!(FiniteSpace::pseudocircle().connected_components().num_blocks(), 1);
        assert_eq!(FiniteSpace::discrete(3).connected_components().num_blocks(), 3);
        let x = FiniteSpace::sierpinski().disjoint_union(&FiniteSpace::point());
        assert_eq!(x.connected_components().blocks(), &[vec![0, 1], vec![2]]);
    }

    #[test]
    fn homeomorphisms() {
        let s = FiniteSpace::sierpinski();
        let swapped = FiniteSpace::from_preorder(2, &[(1, 0)]).unwrap();
        assert_eq!(s.is_homeomorphic(&swapped), Some(vec![1, 0]));
        assert_eq!(s.is_homeomorphic(&FiniteSpace::discrete(2)), None);
        let pc = FiniteSpace::pseudocircle();
        let f = pc.is_homeomorphic(&pc.opposite()).unwrap();
        assert!(ContinuousMap::new(pc.clone(), pc.opposite(), f).is_ok());
        assert_eq!(FiniteSpace::empty().is_homeomorphic(&FiniteSpace::empty()), Some(vec![]));
    }

    #[test]
    fn continuity() {
        let s = FiniteSpace::sierpinski();
        assert!(ContinuousMap::new(s.clone(), s.clone(), vec![1, 0]).is_err());
        assert!(ContinuousMap::new(s.clone(), s.clone(), vec![0, 0]).is_ok());
        assert!(ContinuousMap::new(s.clone(), FiniteSpace::discrete(2), vec![0, 1]).is_err());
        assert!(ContinuousMap::new(FiniteSpace::discrete(2), s, vec![1, 0]).is_ok());
    }

    #[test]
    fn generators_regenerate_preorder() {
        let x = FiniteSpace::from_preorder(5, &[(0, 1), (1, 0), (1, 2), (2, 3), (0, 4)]).unwrap();
        let back = FiniteSpace::from_preorder(5, &x.generators()).unwrap();
        assert!(back.same_topology(&x));
        assert_eq!(FiniteSpace::pseudocircle().generators().len(), 4);
    }
}
