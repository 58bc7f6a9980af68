//! Brute-force oracles and corpus generators shared by the test suites.
//!
//! Everything here works from definitions (enumerating open sets, subsets,
//! bijections or minors) and deliberately avoids the library's algorithms,
//! so it can be used to check them.

use finrefl_core::{FiniteSpace, Partition};
use rand::seq::SliceRandom;
use rand::Rng;

pub use rand_chacha::ChaCha8Rng;
pub use rand::SeedableRng;

/// Deterministic generator for a named test.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The relation matrix `m[x][y] = x <= y` of a space.
pub fn leq_matrix(space: &FiniteSpace) -> Vec<Vec<bool>> {
    let n = space.len();
    (0..n).map(|x| (0..n).map(|y| space.leq(x, y)).collect()).collect()
}

/// Reflexive-transitive closure by iterating `R <- R ∪ R∘R` to a fixpoint.
pub fn closure_oracle(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for (x, row) in m.iter_mut().enumerate() {
        row[x] = true;
    }
    for &(x, y) in pairs {
        m[x][y] = true;
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if !m[x][y] && (0..n).any(|z| m[x][z] && m[z][y]) {
                    m[x][y] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return m;
        }
    }
}

/// Every open set of the space as a bit mask (`n <= 20`).
pub fn opens(space: &FiniteSpace) -> Vec<u32> {
    let n = space.len();
    let m = leq_matrix(space);
    (0u32..1 << n)
        .filter(|&s| {
            (0..n).all(|y| s >> y & 1 == 0 || (0..n).all(|x| !m[x][y] || s >> x & 1 == 1))
        })
        .collect()
}

/// The specialization preorder of a topology given by open masks:
/// `x <= y` iff every open containing `y` contains `x`.
pub fn preorder_of_opens(n: usize, opens: &[u32]) -> Vec<Vec<bool>> {
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| opens.iter().all(|&u| u >> y & 1 == 0 || u >> x & 1 == 1))
                .collect()
        })
        .collect()
}

/// `x R1 y` straight from the definition: every open neighbourhood of `x`
/// meets every open neighbourhood of `y`.
pub fn r1_oracle(space: &FiniteSpace) -> Vec<Vec<bool>> {
    let n = space.len();
    let all = opens(space);
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    all.iter().filter(|&&u| u >> x & 1 == 1).all(|&u| {
                        all.iter().filter(|&&v| v >> y & 1 == 1).all(|&v| u & v != 0)
                    })
                })
                .collect()
        })
        .collect()
}

/// Connected components by searching the comparability graph.
pub fn components_oracle(space: &FiniteSpace) -> Vec<Vec<usize>> {
    let n = space.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for y in 0..n {
                if !seen[y] && (space.leq(x, y) || space.leq(y, x)) {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort();
    out
}

/// `R3` from the definition over finite Hausdorff (= discrete) targets:
/// every map into a discrete space with `1..=n` points is enumerated, the
/// continuous ones kept, and `x ~ y` iff all of them agree on `x, y`.
pub fn r3_oracle(space: &FiniteSpace) -> Vec<Vec<bool>> {
    let n = space.len();
    let mut same = vec![vec![true; n]; n];
    let open_sets = opens(space);
    for target in 1..=n {
        let total = (target as u64).pow(n as u32);
        for code in 0..total {
            let mut f = vec![0usize; n];
            let mut c = code;
            for v in f.iter_mut() {
                *v = (c % target as u64) as usize;
                c /= target as u64;
            }
            // continuity into a discrete space: preimages of points are open
            let continuous = (0..target).all(|t| {
                let pre: u32 = (0..n).filter(|&x| f[x] == t).fold(0, |m, x| m | 1 << x);
                open_sets.contains(&pre)
            });
            if continuous {
                for x in 0..n {
                    for y in 0..n {
                        if f[x] != f[y] {
                            same[x][y] = false;
                        }
                    }
                }
            }
        }
    }
    same
}

/// The quotient preorder from the quotient topology: a set of blocks is open
/// iff the union of its blocks is open upstairs.
pub fn quotient_oracle(space: &FiniteSpace, partition: &Partition) -> Vec<Vec<bool>> {
    let k = partition.num_blocks();
    let upstairs = opens(space);
    let quotient_opens: Vec<u32> = (0u32..1 << k)
        .filter(|&s| {
            let union = (0..k)
                .filter(|&b| s >> b & 1 == 1)
                .flat_map(|b| partition.block(b).iter().copied())
                .fold(0u32, |m, x| m | 1 << x);
            upstairs.contains(&union)
        })
        .collect();
    preorder_of_opens(k, &quotient_opens)
}

/// Whether some bijection is an order isomorphism, trying all `n!`.
pub fn homeomorphic_oracle(a: &FiniteSpace, b: &FiniteSpace) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let (ma, mb) = (leq_matrix(a), leq_matrix(b));
    permutations(n).into_iter().any(|p| {
        (0..n).all(|x| (0..n).all(|y| ma[x][y] == mb[p[x]][p[y]]))
    })
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Nonempty chains of a partial order by testing every subset (`n <= 20`).
pub fn chains_oracle(space: &FiniteSpace) -> Vec<Vec<usize>> {
    let n = space.len();
    let mut out: Vec<Vec<usize>> = (1u32..1 << n)
        .map(|s| (0..n).filter(|&x| s >> x & 1 == 1).collect::<Vec<_>>())
        .filter(|c| c.iter().all(|&x| c.iter().all(|&y| space.leq(x, y) || space.leq(y, x))))
        .collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Determinant by cofactor expansion.
fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors from determinantal divisors: `D_k` is the gcd of all
/// `k x k` minors and `d_k = D_k / D_{k-1}`. Only for small matrices.
pub fn invariant_factors_oracle(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut d = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
                d = gcd(d, det(&minor));
            }
        }
        if d == 0 {
            break;
        }
        factors.push(d / prev);
        prev = d;
    }
    factors
}

/// Every preorder on `n` labelled points (`n <= 5`).
pub fn all_preorders(n: usize) -> Vec<FiniteSpace> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let rel = |x: usize, y: usize| {
            x == y || pairs.iter().position(|&p| p == (x, y)).is_some_and(|i| mask >> i & 1 == 1)
        };
        let transitive = (0..n).all(|x| (0..n).all(|y| !rel(x, y) || (0..n).all(|z| !rel(y, z) || rel(x, z))));
        if transitive {
            out.push(FiniteSpace::from_relation(n, rel).expect("checked preorder"));
        }
    }
    out
}

/// One representative per isomorphism class of partial orders on `n`
/// points, deduplicated by a brute-force canonical form.
pub fn posets_up_to_iso(n: usize) -> Vec<FiniteSpace> {
    let perms = permutations(n);
    let canonical = |s: &FiniteSpace| {
        let m = leq_matrix(s);
        perms
            .iter()
            .map(|p| {
                let mut code = 0u64;
                for x in 0..n {
                    for y in 0..n {
                        code = code << 1 | u64::from(m[p[x]][p[y]]);
                    }
                }
                code
            })
            .min()
            .unwrap_or(0)
    };
    let mut seen = std::collections::BTreeSet::new();
    all_preorders(n)
        .into_iter()
        .filter(FiniteSpace::is_t0)
        .filter(|s| seen.insert(canonical(s)))
        .collect()
}

/// A random preorder on `n` points: random generating pairs at a random
/// density, then closed.
pub fn random_space<R: Rng>(rng: &mut R, n: usize) -> FiniteSpace {
    let density: f64 = rng.gen_range(0.0..0.45);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y)
        .filter(|_| rng.gen_bool(density))
        .collect();
    FiniteSpace::from_preorder(n, &pairs).expect("indices in range")
}

/// A random partial order: generating pairs only go up in a random linear
/// order, so the closure is antisymmetric.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> FiniteSpace {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let density: f64 = rng.gen_range(0.1..0.6);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((order[i], order[j]));
            }
        }
    }
    FiniteSpace::from_preorder(n, &pairs).expect("indices in range")
}

pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Partition {
    let k = rng.gen_range(1..=n.max(1));
    let ids: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    Partition::from_block_ids(&ids)
}

/// A uniformly shuffled search for an order-preserving map `dom -> cod`.
/// Constant maps always exist, so this succeeds whenever `cod` is nonempty.
pub fn random_monotone_map<R: Rng>(rng: &mut R, dom: &FiniteSpace, cod: &FiniteSpace) -> Option<Vec<usize>> {
    fn extend<R: Rng>(rng: &mut R, dom: &FiniteSpace, cod: &FiniteSpace, f: &mut Vec<usize>) -> bool {
        let x = f.len();
        if x == dom.len() {
            return true;
        }
        let mut candidates: Vec<usize> = (0..cod.len()).collect();
        candidates.shuffle(rng);
        for y in candidates {
            let ok = (0..x).all(|p| {
                (!dom.leq(p, x) || cod.leq(f[p], y)) && (!dom.leq(x, p) || cod.leq(y, f[p]))
            });
            if ok {
                f.push(y);
                if extend(rng, dom, cod, f) {
                    return true;
                }
                f.pop();
            }
        }
        false
    }
    let mut f = Vec::with_capacity(dom.len());
    extend(rng, dom, cod, &mut f).then_some(f)
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts_match_known_sequence() {
        // unlabeled posets on n points: 1, 1, 2, 5, 16
        let counts: Vec<usize> = (0..=4).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
        // labeled preorders (finite topologies) on n points: 1, 1, 4, 29, 355
        let counts: Vec<usize> = (0..=4).map(|n| all_preorders(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn determinantal_divisors() {
        assert_eq!(invariant_factors_oracle(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(invariant_factors_oracle(&[vec![2, 4, 4], vec![-6, 6, 12]]), vec![2, 6]);
    }
}
