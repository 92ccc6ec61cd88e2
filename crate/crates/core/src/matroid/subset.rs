//! Subsets of a ground set of at most 64 elements, stored as bit masks.

pub type Subset = u64;

pub const MAX_GROUND: usize = 64;

pub fn full(n: usize) -> Subset {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

pub fn from_indices(indices: &[usize]) -> Subset {
    indices.iter().fold(0, |s, &i| s | 1 << i)
}

/// Sorted index list.
pub fn to_indices(s: Subset) -> Vec<usize> {
    let mut out = Vec::with_capacity(s.count_ones() as usize);
    let mut rest = s;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

pub fn contains(s: Subset, i: usize) -> bool {
    s >> i & 1 == 1
}

pub fn is_subset(a: Subset, b: Subset) -> bool {
    a & !b == 0
}

/// Orders subsets of equal size by their sorted index tuples.
pub fn lex_cmp(a: Subset, b: Subset) -> std::cmp::Ordering {
    // The first differing index belongs to the lexicographically smaller set;
    // bit reversal turns "lowest differing bit" into "highest".
    b.reverse_bits().cmp(&a.reverse_bits())
}

/// All `k`-subsets of `{0..n}`, in increasing numeric order.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    KSubsets { next: if k <= n { Some(full(k)) } else { None }, limit: full(n), k }
}

pub struct KSubsets {
    next: Option<Subset>,
    limit: Subset,
    k: usize,
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if self.k == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let nxt = (((r ^ cur) >> 2) / c) | r;
                (nxt & !self.limit == 0).then_some(nxt)
            }
        };
        Some(cur)
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gosper_enumerates_all() {
        for n in 0..10 {
            for k in 0..=n + 1 {
                let v: Vec<_> = k_subsets(n, k).collect();
                assert_eq!(v.len() as u64, binomial(n, k), "n={n} k={k}");
                assert!(v.iter().all(|&s| size(s) == k && is_subset(s, full(n))));
                assert!(v.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(k_subsets(64, 63).count(), 64);
    }

    #[test]
    fn lex_order_matches_tuples() {
        let all: Vec<_> = k_subsets(7, 3).collect();
        for &a in &all {
            for &b in &all {
                assert_eq!(lex_cmp(a, b), to_indices(a).cmp(&to_indices(b)));
            }
        }
    }
}
