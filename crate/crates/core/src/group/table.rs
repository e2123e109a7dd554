use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GroupError;

/// Tables up to this order are checked for associativity exhaustively.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 512;
/// Number of random triples checked above [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`].
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 10_000;

/// A finite group given by its full Cayley table.
///
/// Elements are the indices `0..order`. The table is validated on
/// construction: Latin square, two-sided identity, inverses and
/// associativity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    identity: usize,
    inv: Vec<u32>,
    labels: Vec<String>,
}

/// JSON dump of a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyDump {
    pub order: usize,
    pub mul: Vec<Vec<u32>>,
    #[serde(default)]
    pub labels: Vec<String>,
}

impl GroupTable {
    /// Builds and validates a table from a multiplication closure.
    pub fn from_fn<F>(order: usize, labels: Vec<String>, mut op: F) -> Result<Self, GroupError>
    where
        F: FnMut(usize, usize) -> usize,
    {
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = op(a, b);
                if c >= order {
                    return Err(GroupError::InvalidTable(format!(
                        "product of {a} and {b} is out of range"
                    )));
                }
                mul.push(c as u32);
            }
        }
        Self::from_parts(order, mul, labels)
    }

    fn from_parts(order: usize, mul: Vec<u32>, labels: Vec<String>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidTable("empty group".into()));
        }
        let labels = if labels.len() == order {
            labels
        } else {
            (0..order).map(|i| format!("g{i}")).collect()
        };
        let mut table = Self {
            order,
            mul,
            identity: 0,
            inv: Vec::new(),
            labels,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn from_dump(dump: &CayleyDump) -> Result<Self, GroupError> {
        if dump.mul.len() != dump.order || dump.mul.iter().any(|row| row.len() != dump.order) {
            return Err(GroupError::InvalidTable("table is not square".into()));
        }
        let mul = dump.mul.iter().flatten().copied().collect::<Vec<_>>();
        if mul.iter().any(|&c| c as usize >= dump.order) {
            return Err(GroupError::InvalidTable("entry out of range".into()));
        }
        Self::from_parts(dump.order, mul, dump.labels.clone())
    }

    pub fn to_dump(&self) -> CayleyDump {
        CayleyDump {
            order: self.order,
            mul: self
                .mul
                .chunks(self.order)
                .map(|row| row.to_vec())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    fn validate(&mut self) -> Result<(), GroupError> {
        let n = self.order;
        let mut seen = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] == a {
                    return Err(GroupError::InvalidTable(format!("row {a} repeats {c}")));
                }
                seen[c] = a;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for b in 0..n {
            for a in 0..n {
                let c = self.mul(a, b);
                if seen[c] == b {
                    return Err(GroupError::InvalidTable(format!("column {b} repeats {c}")));
                }
                seen[c] = b;
            }
        }
        self.identity = (0..n)
            .find(|&e| (0..n).all(|g| self.mul(e, g) == g && self.mul(g, e) == g))
            .ok_or_else(|| GroupError::InvalidTable("no identity".into()))?;
        let mut inv = vec![0u32; n];
        for (g, slot) in inv.iter_mut().enumerate() {
            let h = (0..n)
                .find(|&h| self.mul(g, h) == self.identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("{g} has no inverse")))?;
            if self.mul(h, g) != self.identity {
                return Err(GroupError::InvalidTable(format!(
                    "{g} has no two-sided inverse"
                )));
            }
            *slot = h as u32;
        }
        self.inv = inv;
        self.check_associativity()
    }

    fn check_associativity(&self) -> Result<(), GroupError> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| {
            GroupError::InvalidTable(format!("({a}*{b})*{c} != {a}*({b}*{c})"))
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    let row_ab = &self.mul[ab * n..(ab + 1) * n];
                    let row_b = &self.mul[b * n..(b + 1) * n];
                    let row_a = &self.mul[a * n..(a + 1) * n];
                    for c in 0..n {
                        if row_ab[c] != row_a[row_b[c] as usize] {
                            return Err(bad(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ca11);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(bad(a, b, c));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Number of elements of each order.
    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for g in 0..self.order {
            *hist.entry(self.element_order(g)).or_insert(0) += 1;
        }
        hist
    }

    pub fn center(&self) -> Subset {
        Subset::from_predicate(self.order, |z| (0..self.order).all(|g| self.commute(z, g)))
    }

    pub fn centralizer(&self, x: usize) -> Subset {
        Subset::from_predicate(self.order, |g| self.commute(x, g))
    }

    /// Distinct centralizers of non-central elements, sorted by
    /// (size, smallest member).
    pub fn distinct_centralizers(&self) -> Vec<Subset> {
        let center = self.center();
        let mut found: Vec<Subset> = Vec::new();
        let mut known = std::collections::HashSet::new();
        for x in 0..self.order {
            if center.contains(x) {
                continue;
            }
            let c = self.centralizer(x);
            if known.insert(c.words().to_vec()) {
                found.push(c);
            }
        }
        found.sort_by_key(|s| (s.len(), s.first().unwrap_or(usize::MAX)));
        found
    }

    /// True iff every centralizer of a non-central element is abelian.
    pub fn is_ac(&self) -> bool {
        self.distinct_centralizers()
            .iter()
            .all(|c| self.is_abelian_subset(c))
    }

    pub fn is_abelian_subset(&self, s: &Subset) -> bool {
        let members: Vec<usize> = s.iter().collect();
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// The quotient by the center, on smallest-index coset representatives.
    pub fn central_quotient(&self) -> GroupTable {
        let center: Vec<usize> = self.center().iter().collect();
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &z in &center {
                coset_of[self.mul(g, z)] = id;
            }
        }
        let labels = reps
            .iter()
            .map(|&r| format!("{}Z", self.labels[r]))
            .collect();
        GroupTable::from_fn(reps.len(), labels, |a, b| {
            coset_of[self.mul(reps[a], reps[b])]
        })
        .expect("a central quotient of a valid group is a group")
    }
}

/// A subset of a group's elements, stored as a bitmask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    universe: usize,
    bits: Vec<u64>,
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            bits: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn from_predicate(universe: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            if pred(i) {
                s.insert(i);
            }
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        assert!(
            i < self.universe,
            "index {i} outside universe {}",
            self.universe
        );
        self.bits[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn universe(&self) -> usize {
        self.universe
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> GroupTable {
        GroupTable::from_fn(n, Vec::new(), |a, b| (a + b) % n).unwrap()
    }

    #[test]
    fn cyclic_group_is_abelian_with_full_center() {
        let g = cyclic(6);
        assert!(g.is_abelian());
        assert_eq!(g.center().len(), 6);
        assert!(g.distinct_centralizers().is_empty());
        assert!(g.is_ac());
        assert_eq!(g.central_quotient().order(), 1);
    }

    #[test]
    fn rejects_non_latin_table() {
        let err = GroupTable::from_fn(3, Vec::new(), |a, _| a).unwrap_err();
        assert!(matches!(err, GroupError::InvalidTable(_)));
    }

    #[test]
    fn rejects_non_associative_loop() {
        // A Latin square with identity 0 that is not associative.
        let t = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let err = GroupTable::from_fn(5, Vec::new(), |a, b| t[a][b]).unwrap_err();
        assert!(matches!(err, GroupError::InvalidTable(_)));
    }

    #[test]
    fn dump_round_trip() {
        let g = cyclic(5);
        let back = GroupTable::from_dump(&g.to_dump()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn subset_basics() {
        let mut s = Subset::empty(130);
        assert!(s.is_empty());
        s.insert(3);
        s.insert(129);
        assert_eq!(s.len(), 2);
        assert!(s.contains(129));
        assert!(!s.contains(130));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 129]);
    }
}
