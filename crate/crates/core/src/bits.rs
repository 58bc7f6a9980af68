use fixedbitset::FixedBitSet;

pub(crate) fn singleton(len: usize, i: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(len);
    s.insert(i);
    s
}

pub(crate) fn full(len: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(len);
    s.insert_range(..);
    s
}

pub(crate) fn intersects(a: &FixedBitSet, b: &FixedBitSet) -> bool {
    !a.is_disjoint(b)
}
