//! Permutation actions on the ground set and orbit reduction of set families.

use std::collections::{BTreeMap, HashSet, VecDeque};

use super::subset::{self, Subset};
use crate::error::{Error, Result};

/// Groups larger than this are refused by [`GroundSetAction::elements`].
pub const MAX_GROUP_ORDER: usize = 1 << 20;

/// A group of ground-set permutations, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSetAction {
    n: usize,
    generators: Vec<Vec<usize>>,
}

impl GroundSetAction {
    /// Generators in one-line notation: `g[i]` is the image of `i`.
    pub fn new(n: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        if n > subset::MAX_GROUND {
            return Err(Error::Invalid(format!("ground set of {n} elements exceeds {}", subset::MAX_GROUND)));
        }
        for (k, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(Error::Invalid(format!("generator {k} has length {}, expected {n}", g.len())));
            }
            let mut seen = vec![false; n];
            for &x in g {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Invalid(format!("generator {k} is not a permutation of 0..{n}")));
                }
            }
        }
        Ok(GroundSetAction { n, generators })
    }

    /// Generators from disjoint-cycle lists on 0-based indices.
    pub fn from_cycles(n: usize, generators: &[Vec<Vec<usize>>]) -> Result<Self> {
        let mut perms = Vec::with_capacity(generators.len());
        for (k, cycles) in generators.iter().enumerate() {
            let mut g: Vec<usize> = (0..n).collect();
            let mut moved = vec![false; n];
            for cycle in cycles {
                for (i, &x) in cycle.iter().enumerate() {
                    if x >= n {
                        return Err(Error::Invalid(format!("generator {k}: index {x} out of range")));
                    }
                    if std::mem::replace(&mut moved[x], true) {
                        return Err(Error::Invalid(format!("generator {k}: cycles are not disjoint at {x}")));
                    }
                    g[x] = cycle[(i + 1) % cycle.len()];
                }
            }
            perms.push(g);
        }
        Self::new(n, perms)
    }

    /// Parses one generator written in cycle notation over 1-based indices,
    /// e.g. `(1 2 3)(4 5)`. Commas may separate entries.
    pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(inner) = rest.strip_prefix('(') else {
                return Err(Error::Invalid(format!("expected `(` in cycle notation: {text}")));
            };
            let Some(close) = inner.find(')') else {
                return Err(Error::Invalid(format!("unclosed cycle in {text}")));
            };
            let cycle = inner[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::Invalid(format!("bad cycle entry `{s}` (indices are 1-based)"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = inner[close + 1..].trim_start();
        }
        Ok(cycles)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// All group elements, by breadth-first closure over the generators.
    pub fn elements(&self) -> Result<Group> {
        let id: Vec<usize> = (0..self.n).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id.clone()]);
        let mut elems = vec![id];
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
                if seen.insert(q.clone()) {
                    if elems.len() >= MAX_GROUP_ORDER {
                        return Err(Error::Budget(format!("group order exceeds {MAX_GROUP_ORDER}")));
                    }
                    elems.push(q.clone());
                    queue.push_back(q);
                }
            }
        }
        Ok(Group::new(self.n, elems))
    }
}

/// An enumerated permutation group with byte-wise lookup tables for
/// applying elements to bit-mask subsets.
#[derive(Clone, Debug)]
pub struct Group {
    n: usize,
    perms: Vec<Vec<usize>>,
    tables: Vec<Vec<[Subset; 256]>>,
}

impl Group {
    fn new(n: usize, perms: Vec<Vec<usize>>) -> Self {
        let chunks = n.div_ceil(8);
        let tables = perms
            .iter()
            .map(|p| {
                (0..chunks)
                    .map(|c| {
                        let mut t = [0 as Subset; 256];
                        for (byte, slot) in t.iter_mut().enumerate() {
                            for bit in 0..8 {
                                let i = c * 8 + bit;
                                if byte >> bit & 1 == 1 && i < n {
                                    *slot |= 1 << p[i];
                                }
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        Group { n, perms, tables }
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn permutations(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// Image of `s` under the `k`-th element.
    pub fn apply(&self, k: usize, s: Subset) -> Subset {
        self.tables[k]
            .iter()
            .enumerate()
            .fold(0, |acc, (c, t)| acc | t[(s >> (8 * c) & 0xff) as usize])
    }

    /// Lexicographically least image of `s`.
    pub fn canonical(&self, s: Subset) -> Subset {
        // Among equal-size sets the lex-least tuple has the largest bit reversal.
        (0..self.order()).map(|k| self.apply(k, s)).max_by_key(|t| t.reverse_bits()).unwrap_or(s)
    }

    /// The distinct images of `s`, in numeric order.
    pub fn orbit(&self, s: Subset) -> Vec<Subset> {
        let mut v: Vec<Subset> = (0..self.order()).map(|k| self.apply(k, s)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Whether every element maps the family into itself.
    pub fn stabilizes(&self, family: &[Subset]) -> bool {
        let set: HashSet<Subset> = family.iter().copied().collect();
        family.iter().all(|&s| (0..self.order()).all(|k| set.contains(&self.apply(k, s))))
    }
}

/// One orbit class of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClass {
    pub representative: Subset,
    pub size: usize,
}

/// Splits an invariant family into orbits: canonical representatives with
/// orbit sizes, ordered by size of the sets and then lexicographically.
/// Fails if the family is not closed under the group.
pub fn orbit_reduce(family: &[Subset], group: &Group) -> Result<Vec<OrbitClass>> {
    let mut count: BTreeMap<(usize, std::cmp::Reverse<u64>), (Subset, usize)> = BTreeMap::new();
    for &s in family {
        if s >> group.ground_size() != 0 && group.ground_size() < 64 {
            return Err(Error::Invalid("set outside the ground set".into()));
        }
        let c = group.canonical(s);
        count.entry((subset::size(c), std::cmp::Reverse(c.reverse_bits()))).or_insert((c, 0)).1 += 1;
    }
    let mut out = Vec::with_capacity(count.len());
    for (_, (rep, members)) in count {
        let size = group.orbit(rep).len();
        if size != members {
            return Err(Error::Invalid(format!(
                "family is not invariant: orbit of {:?} has {size} sets, {members} present",
                subset::to_indices(rep)
            )));
        }
        out.push(OrbitClass { representative: rep, size });
    }
    Ok(out)
}

/// Orbit sizes per set cardinality.
pub fn orbit_size_profile(classes: &[OrbitClass]) -> BTreeMap<usize, Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in classes {
        out.entry(subset::size(c.representative)).or_default().push(c.size);
    }
    for v in out.values_mut() {
        v.sort_unstable();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetric(n: usize) -> GroundSetAction {
        let cyc: Vec<usize> = (0..n).collect();
        GroundSetAction::from_cycles(n, &[vec![cyc], vec![vec![0, 1]]]).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..7 {
            let g = symmetric(n).elements().unwrap();
            assert_eq!(g.order(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn orbits_of_k_subsets_under_sn() {
        let g = symmetric(6).elements().unwrap();
        let fam: Vec<Subset> = subset::k_subsets(6, 3).collect();
        let classes = orbit_reduce(&fam, &g).unwrap();
        assert_eq!(classes, vec![OrbitClass { representative: 0b111, size: 20 }]);
    }

    #[test]
    fn cyclic_orbits_partition() {
        let g = GroundSetAction::from_cycles(6, &[vec![vec![0, 1, 2, 3, 4, 5]]]).unwrap().elements().unwrap();
        let fam: Vec<Subset> = subset::k_subsets(6, 2).collect();
        let classes = orbit_reduce(&fam, &g).unwrap();
        // Pairs at distance 1, 2, 3 around a hexagon.
        let sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 15);
        assert_eq!(sizes, vec![6, 6, 3]);
        assert_eq!(subset::to_indices(classes[2].representative), vec![0, 3]);
    }

    #[test]
    fn non_invariant_family_rejected() {
        let g = symmetric(3).elements().unwrap();
        assert!(orbit_reduce(&[0b001], &g).is_err());
        assert!(!g.stabilizes(&[0b001]));
    }

    #[test]
    fn parses_cycle_notation() {
        assert_eq!(GroundSetAction::parse_cycles("(1 2 3)(4,5)").unwrap(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert!(GroundSetAction::parse_cycles("(0 1)").is_err());
        assert!(GroundSetAction::parse_cycles("1 2").is_err());
        assert!(GroundSetAction::from_cycles(3, &[vec![vec![0, 1], vec![1, 2]]]).is_err());
        assert!(GroundSetAction::new(2, vec![vec![0, 0]]).is_err());
    }
}
