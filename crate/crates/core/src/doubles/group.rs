//! Finite groups given by Cayley tables.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use crate::premetric::prime_divisors;

pub const DEFAULT_GROUP_CAP: usize = 64;

/// A finite group on `0..n` with `0` the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FinGroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    names: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct RawFinGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl TryFrom<RawFinGroup> for FinGroup {
    type Error = Error;
    fn try_from(raw: RawFinGroup) -> Result<Self> {
        if raw.table.len() != raw.order {
            return Err(Error::InvalidTable(format!("declared order {} but {} rows", raw.order, raw.table.len())));
        }
        let g = FinGroup::from_table(&raw.table)?;
        match raw.names {
            Some(names) => g.with_names(names),
            None => Ok(g),
        }
    }
}

impl Serialize for FinGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawFinGroup {
            order: self.n,
            table: (0..self.n).map(|i| (0..self.n).map(|j| self.mul(i, j)).collect()).collect(),
            names: self.names.clone(),
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawFinGroup::deserialize(d)?;
        FinGroup::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroup(order {})", self.n)
    }
}

impl FinGroup {
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        Self::from_table_capped(rows, DEFAULT_GROUP_CAP)
    }

    pub fn from_table_capped(rows: &[Vec<usize>], cap: usize) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > cap {
            return Err(Error::CapExceeded { order: n as u64, cap: cap as u64 });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has {} entries", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidTable(format!("entry {bad} out of range")));
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(n, table)
    }

    fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        for i in 0..n {
            if table[i] != i || table[i * n] != i {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                row[table[i * n + j]] = true;
                col[table[j * n + i]] = true;
            }
            if row.iter().chain(&col).any(|&b| !b) {
                return Err(Error::InvalidTable(format!("row or column {i} is not a permutation")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let inv = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("latin square")).collect();
        Ok(FinGroup { n, table, inv, names: None })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::InvalidTable("one name per element required".into()));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_flat(n, (0..n * n).map(|k| (k / n + k % n) % n).collect()).expect("cyclic group")
    }

    /// The dihedral group of order `2r`; element `k + r·e` is `ρ^k σ^e`.
    pub fn dihedral(r: usize) -> Self {
        let n = 2 * r;
        let decode = |x: usize| (x % r, x / r);
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (k1, e1) = decode(a);
                let (k2, e2) = decode(b);
                // ρ^k1 σ^e1 ρ^k2 σ^e2 = ρ^(k1 ± k2) σ^(e1 + e2)
                let k = if e1 == 0 { (k1 + k2) % r } else { (k1 + r - k2) % r };
                table[a * n + b] = k + r * ((e1 + e2) % 2);
            }
        }
        let names = (0..n)
            .map(|x| {
                let (k, e) = decode(x);
                match (k, e) {
                    (0, 0) => "1".to_string(),
                    (k, 0) => format!("r{k}"),
                    (k, _) => format!("r{k}s"),
                }
            })
            .collect();
        Self::from_flat(n, table).expect("dihedral group").with_names(names).expect("names")
    }

    /// The quaternion group; indices `0..8` stand for `1, i, j, k, -1, -i, -j, -k`.
    pub fn quaternion() -> Self {
        // unit multiplication for 1, i, j, k: (sign, unit)
        let unit = |a: usize, b: usize| -> (bool, usize) {
            const T: [[(bool, usize); 4]; 4] = [
                [(false, 0), (false, 1), (false, 2), (false, 3)],
                [(false, 1), (true, 0), (false, 3), (true, 2)],
                [(false, 2), (true, 3), (true, 0), (false, 1)],
                [(false, 3), (false, 2), (true, 1), (true, 0)],
            ];
            T[a][b]
        };
        let mut table = vec![0; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (s, u) = unit(a % 4, b % 4);
                let neg = s ^ (a >= 4) ^ (b >= 4);
                table[a * 8 + b] = u + if neg { 4 } else { 0 };
            }
        }
        let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"].iter().map(|s| s.to_string()).collect();
        Self::from_flat(8, table).expect("quaternion group").with_names(names).expect("names")
    }

    /// The group with the same element indexing as `a`.
    pub fn from_abelian(a: &FinAbGroup) -> Result<Self> {
        let n = a.size();
        if n > DEFAULT_GROUP_CAP {
            return Err(Error::CapExceeded { order: n as u64, cap: DEFAULT_GROUP_CAP as u64 });
        }
        let table = (0..n * n).map(|k| a.add(k / n, k % n)).collect();
        let names = (0..n).map(|x| format!("{:?}", a.element(x))).collect();
        Self::from_flat(n, table)?.with_names(names)
    }

    /// Direct product; element `(a, b)` has index `a + |G|·b`.
    pub fn direct_product(&self, other: &FinGroup) -> Result<Self> {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        if n > DEFAULT_GROUP_CAP {
            return Err(Error::CapExceeded { order: n as u64, cap: DEFAULT_GROUP_CAP as u64 });
        }
        let table = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                self.mul(x % n1, y % n1) + n1 * other.mul(x / n1, y / n1)
            })
            .collect();
        Self::from_flat(n, table)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv[g])
    }

    pub fn elem_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `set`, as a sorted element list.
    pub fn generated(&self, set: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in set {
                let y = self.mul(x, s);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: HashSet<usize> = h.iter().copied().collect();
        set.contains(&0) && h.iter().all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let set: HashSet<usize> = h.iter().copied().collect();
        (0..self.n).all(|g| h.iter().all(|&x| set.contains(&self.conj(g, x))))
    }

    pub fn is_abelian_subset(&self, h: &[usize]) -> bool {
        h.iter().all(|&a| h.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Every subgroup once, sorted by (order, element list).
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let start = vec![0usize];
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(h) = queue.pop_front() {
            for x in 0..self.n {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x);
                let k = self.generated(&gens);
                if seen.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
            out.push(h);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn normal_abelian_subgroups(&self) -> Vec<Vec<usize>> {
        self.subgroups().into_iter().filter(|h| self.is_abelian_subset(h) && self.is_normal(h)).collect()
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n).filter(|&z| (0..self.n).all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    /// The first elements (in index order) that generate the group.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for x in 1..self.n {
            if span.len() == self.n {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// A subgroup as a group in its own right, with its embedding.
    pub fn subgroup_as_group(&self, h: &[usize]) -> Result<(FinGroup, Vec<usize>)> {
        if !self.is_subgroup(h) || h.first() != Some(&0) || h.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("not a sorted subgroup".into()));
        }
        let pos = |x: usize| h.binary_search(&x).expect("closed under multiplication");
        let m = h.len();
        let table = (0..m * m).map(|k| pos(self.mul(h[k / m], h[k % m]))).collect();
        let mut g = Self::from_flat(m, table)?;
        if let Some(names) = &self.names {
            g.names = Some(h.iter().map(|&x| names[x].clone()).collect());
        }
        Ok((g, h.to_vec()))
    }

    /// `G/N` with cosets ordered by their least element, and the projection.
    pub fn quotient(&self, nsub: &[usize]) -> Result<(FinGroup, Vec<usize>)> {
        if !self.is_subgroup(nsub) || !self.is_normal(nsub) {
            return Err(Error::InvalidInput("not a normal subgroup".into()));
        }
        let mut proj = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if proj[x] == usize::MAX {
                for &k in nsub {
                    proj[self.mul(x, k)] = reps.len();
                }
                reps.push(x);
            }
        }
        let m = reps.len();
        let table = (0..m * m).map(|k| proj[self.mul(reps[k / m], reps[k % m])]).collect();
        Ok((Self::from_flat(m, table)?, proj))
    }

    /// A Cayley-table group is nilpotent iff each set of `p`-elements is a subgroup.
    pub fn is_nilpotent(&self) -> bool {
        prime_divisors(self.n as u64).into_iter().all(|p| {
            let pel: Vec<usize> = (0..self.n).filter(|&x| is_power_of(self.elem_order(x) as u64, p)).collect();
            self.is_subgroup(&pel)
        })
    }

    pub fn is_homomorphism(&self, target: &FinGroup, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&y| y < target.n)
            && (0..self.n).all(|a| (0..self.n).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Structure of an abelian subgroup: invariant factors, a basis realizing them,
/// and the coordinates of each member.
#[derive(Clone, Debug)]
pub struct AbelianBasis {
    pub factors: Vec<u64>,
    pub basis: Vec<usize>,
    pub elements: Vec<usize>,
    pub coords: Vec<Vec<u64>>,
}

impl AbelianBasis {
    pub fn coords_of(&self, x: usize) -> &[u64] {
        &self.coords[self.elements.binary_search(&x).expect("element of the subgroup")]
    }
}

fn divisibility_chains(n: u64, min: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for d in (min.max(2)..=n).filter(|d| n.is_multiple_of(*d) && d % min == 0) {
        for mut rest in divisibility_chains(n / d, d) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

pub fn abelian_basis(g: &FinGroup, h: &[usize]) -> Result<AbelianBasis> {
    if !g.is_subgroup(h) || !g.is_abelian_subset(h) {
        return Err(Error::InvalidInput("not an abelian subgroup".into()));
    }
    let mut elements = h.to_vec();
    elements.sort();
    let n = elements.len() as u64;
    let power = |x: usize, k: u64| (0..k).fold(0usize, |acc, _| g.mul(acc, x));
    let killed = |m: u64| elements.iter().filter(|&&x| power(x, m) == 0).count() as u64;
    let factors = divisibility_chains(n, 1)
        .into_iter()
        .find(|c| {
            let a = FinAbGroup::new(c.clone()).expect("chain");
            let exp = a.exponent();
            (1..=exp).filter(|m| exp.is_multiple_of(*m)).all(|m| a.count_killed_by(m) == killed(m))
        })
        .ok_or_else(|| Error::Internal("abelian subgroup with no matching invariant factors".into()))?;
    // backtrack over generator choices with the prescribed orders
    fn rec(g: &FinGroup, elements: &[usize], factors: &[u64], chosen: &mut Vec<usize>, span: Vec<usize>) -> bool {
        let i = chosen.len();
        if i == factors.len() {
            return span.len() == elements.len();
        }
        for &x in elements {
            if g.elem_order(x) as u64 != factors[i] {
                continue;
            }
            let mut gens = chosen.clone();
            gens.push(x);
            let next = g.generated(&gens);
            if next.len() as u64 != span.len() as u64 * factors[i] {
                continue;
            }
            chosen.push(x);
            if rec(g, elements, factors, chosen, next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut basis = Vec::new();
    if !rec(g, &elements, &factors, &mut basis, vec![0]) {
        return Err(Error::Internal("no basis found for abelian subgroup".into()));
    }
    let a = FinAbGroup::new(factors.clone())?;
    let mut coords = vec![vec![]; elements.len()];
    for idx in 0..a.size() {
        let c = a.element(idx);
        let x = c.iter().zip(&basis).fold(0usize, |acc, (&k, &b)| g.mul(acc, power(b, k)));
        coords[elements.binary_search(&x).expect("in subgroup")] = c;
    }
    Ok(AbelianBasis { factors, basis, elements, coords })
}
