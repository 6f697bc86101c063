//! Finite abelian groups in invariant-factor form, their subgroups and homomorphisms.
//!
//! Elements are residue tuples `(x_1, …, x_k)` with `0 ≤ x_i < d_i`. Internally an
//! element is addressed by its mixed-radix index, which orders elements
//! lexicographically by tuple.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, smith, IntMatrix};

/// Default order cap for exhaustive enumerations.
pub const DEFAULT_ORDER_CAP: u64 = 512;

#[derive(Serialize, Deserialize)]
struct RawGroup {
    invariant_factors: Vec<u64>,
}

/// A finite abelian group `Z/d_1 × … × Z/d_k` with `d_1 | d_2 | … | d_k`, `d_i ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct FinAbGroup {
    factors: Vec<u64>,
    strides: Vec<usize>,
}

impl TryFrom<RawGroup> for FinAbGroup {
    type Error = Error;
    fn try_from(raw: RawGroup) -> Result<Self> {
        FinAbGroup::new(raw.invariant_factors)
    }
}

impl From<FinAbGroup> for RawGroup {
    fn from(g: FinAbGroup) -> RawGroup {
        RawGroup { invariant_factors: g.factors }
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup{:?}", self.factors)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl FinAbGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidInput(format!("invariant factor {d} < 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput(format!("{} does not divide {}", w[0], w[1])));
        }
        let order = factors.iter().try_fold(1u64, |a, &d| a.checked_mul(d));
        if order.is_none_or(|o| o > (1u64 << 40)) {
            return Err(Error::InvalidInput("group order too large".into()));
        }
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        Ok(FinAbGroup { factors, strides })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: vec![], strides: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            Self::new(vec![n]).expect("cyclic group")
        }
    }

    /// The group `Z/c_1 × … × Z/c_k` for arbitrary orders, returned in invariant-factor
    /// form together with the isomorphism from the cyclic product.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<(FinAbGroup, CyclicIso)> {
        if orders.contains(&0) {
            return Err(Error::InvalidInput("cyclic order 0".into()));
        }
        let k = orders.len();
        let mut rel = IntMatrix::zeros(k, k);
        for (i, &c) in orders.iter().enumerate() {
            rel[(i, i)] = c as i128;
        }
        let p = Presentation::of(&rel)?;
        Ok((p.group.clone(), CyclicIso { orders: orders.to_vec(), presentation: p }))
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn check_cap(&self, cap: u64) -> Result<()> {
        let order = self.order();
        if order > cap {
            Err(Error::CapExceeded { order, cap })
        } else {
            Ok(())
        }
    }

    pub fn size(&self) -> usize {
        self.order() as usize
    }

    pub fn element(&self, idx: usize) -> Vec<u64> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(&d, &s)| ((idx / s) as u64) % d)
            .collect()
    }

    /// Index of a residue tuple; entries are reduced modulo the factors.
    pub fn index_of(&self, coords: &[i64]) -> Result<usize> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidInput(format!(
                "element {coords:?} has {} coordinates, group has rank {}",
                coords.len(),
                self.factors.len()
            )));
        }
        Ok(self.index_reduced(coords))
    }

    /// Index of an exact residue tuple, rejecting out-of-range coordinates.
    pub fn index_strict(&self, coords: &[u64]) -> Result<usize> {
        if coords.len() != self.factors.len() || coords.iter().zip(&self.factors).any(|(&x, &d)| x >= d) {
            return Err(Error::InvalidInput(format!("element {coords:?} is not in {self}")));
        }
        Ok(coords.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum())
    }

    pub(crate) fn index_reduced(&self, coords: &[i64]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&x, &d), &s)| x.rem_euclid(d as i64) as usize * s)
            .sum()
    }

    pub(crate) fn index_reduced_i128(&self, coords: &[i128]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&x, &d), &s)| x.rem_euclid(d as i128) as usize * s)
            .sum()
    }

    pub fn generator(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let x = (a / s) as u64 % d + (b / s) as u64 % d;
            out += (x % d) as usize * s;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        self.scale(-1, a)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, n: i64, a: usize) -> usize {
        let mut out = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let x = ((a / s) as u64 % d) as i128 * n as i128;
            out += x.rem_euclid(d as i128) as usize * s;
        }
        out
    }

    pub fn elem_order(&self, a: usize) -> u64 {
        self.element(a)
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&x, &d)| crate::qz::lcm(acc, d / crate::qz::gcd(x, d)))
    }

    /// Direct product in the given order of factors, re-presented in invariant-factor form.
    pub fn direct_product(&self, other: &FinAbGroup) -> Result<(FinAbGroup, CyclicIso)> {
        let orders: Vec<u64> = self.factors.iter().chain(&other.factors).copied().collect();
        FinAbGroup::from_cyclic_orders(&orders)
    }

    /// Number of elements `x` with `n·x = 0`.
    pub fn count_killed_by(&self, n: u64) -> u64 {
        self.factors.iter().map(|&d| crate::qz::gcd(n, d)).product()
    }
}

/// Isomorphism from a cyclic product `Z/c_1 × … × Z/c_k` onto an invariant-factor group.
#[derive(Clone, Debug)]
pub struct CyclicIso {
    orders: Vec<u64>,
    presentation: Presentation,
}

impl CyclicIso {
    pub fn target(&self) -> &FinAbGroup {
        &self.presentation.group
    }

    pub fn source_orders(&self) -> &[u64] {
        &self.orders
    }

    /// Image of a source tuple.
    pub fn forward(&self, x: &[i64]) -> usize {
        let v: Vec<i128> = x.iter().map(|&a| a as i128).collect();
        self.presentation.project(&v)
    }

    /// A source tuple mapping onto the `j`-th standard generator of the target.
    pub fn lift_generator(&self, j: usize) -> Vec<i64> {
        self.presentation.lifts[j]
            .iter()
            .zip(&self.orders)
            .map(|(&a, &c)| a.rem_euclid(c as i128) as i64)
            .collect()
    }
}

/// `Z^k / im(R)` in invariant-factor form, with the projection from `Z^k` and
/// lifts of the target generators.
#[derive(Clone, Debug)]
pub(crate) struct Presentation {
    pub group: FinAbGroup,
    /// rows of U whose diagonal entry exceeds 1, with that entry
    proj_rows: Vec<(Vec<i128>, u64)>,
    pub lifts: Vec<Vec<i128>>,
}

impl Presentation {
    pub fn of(relations: &IntMatrix) -> Result<Presentation> {
        let k = relations.rows;
        let s = smith(relations);
        if s.rank() < k {
            return Err(Error::InvalidInput("presentation defines an infinite group".into()));
        }
        let mut factors = Vec::new();
        let mut proj_rows = Vec::new();
        let mut lifts = Vec::new();
        for (i, &d) in s.diag.iter().enumerate() {
            if d > 1 {
                factors.push(d as u64);
                proj_rows.push(((0..k).map(|j| s.u[(i, j)]).collect(), d as u64));
                lifts.push(s.u_inv.column(i));
            }
        }
        Ok(Presentation { group: FinAbGroup::new(factors)?, proj_rows, lifts })
    }

    pub fn project(&self, v: &[i128]) -> usize {
        let coords: Vec<i128> = self
            .proj_rows
            .iter()
            .map(|(row, d)| row.iter().zip(v).map(|(&a, &b)| a * b).sum::<i128>().rem_euclid(*d as i128))
            .collect();
        self.group.index_reduced_i128(&coords)
    }
}

/// Fixed-size bitset over element indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet { words: vec![0; n.div_ceil(64)] }
    }
    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }
    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
    pub fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}

/// A subgroup, identified by its element set.
#[derive(Clone)]
pub struct Subgroup {
    parent: FinAbGroup,
    members: BitSet,
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<Vec<u64>> = self.generators.iter().map(|&g| self.parent.element(g)).collect();
        write!(f, "Subgroup(order {}, gens {:?})", self.order(), gens)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: by order, then lexicographically by element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elements.len().cmp(&other.elements.len()).then_with(|| self.elements.cmp(&other.elements))
    }
}

impl Subgroup {
    pub(crate) fn from_members(parent: &FinAbGroup, members: BitSet) -> Subgroup {
        let elements: Vec<usize> = members.iter().collect();
        let generators = greedy_generators(parent, &elements, &members);
        Subgroup { parent: parent.clone(), members, elements, generators }
    }

    /// Builds a subgroup from an element list, verifying closure.
    pub fn from_elements(parent: &FinAbGroup, elements: &[usize]) -> Result<Subgroup> {
        let mut members = BitSet::new(parent.size());
        for &e in elements {
            if e >= parent.size() {
                return Err(Error::InvalidInput(format!("element index {e} out of range")));
            }
            members.insert(e);
        }
        if !members.contains(0) {
            return Err(Error::InvalidInput("element set lacks the identity".into()));
        }
        let list: Vec<usize> = members.iter().collect();
        for &a in &list {
            for &b in &list {
                if !members.contains(parent.sub(a, b)) {
                    return Err(Error::InvalidInput("element set is not a subgroup".into()));
                }
            }
        }
        Ok(Self::from_members(parent, members))
    }

    pub fn trivial(parent: &FinAbGroup) -> Subgroup {
        let mut m = BitSet::new(parent.size());
        m.insert(0);
        Self::from_members(parent, m)
    }

    pub fn whole(parent: &FinAbGroup) -> Subgroup {
        let mut m = BitSet::new(parent.size());
        for i in 0..parent.size() {
            m.insert(i);
        }
        Self::from_members(parent, m)
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn element_tuples(&self) -> Vec<Vec<u64>> {
        self.elements.iter().map(|&e| self.parent.element(e)).collect()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.size()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_members(&self.parent, self.members.intersect(&other.members))
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        other.generators.iter().fold(self.clone(), |h, &g| h.adjoin(g))
    }

    /// `⟨H, x⟩ = H + ⟨x⟩`.
    pub fn adjoin(&self, x: usize) -> Subgroup {
        if self.contains(x) {
            return self.clone();
        }
        let g = &self.parent;
        let mut members = self.members.clone();
        let mut step = x;
        while !self.members.contains(step) {
            for &h in &self.elements {
                members.insert(g.add(h, step));
            }
            step = g.add(step, x);
        }
        Subgroup::from_members(g, members)
    }
}

fn greedy_generators(g: &FinAbGroup, elements: &[usize], members: &BitSet) -> Vec<usize> {
    let mut by_order: Vec<(u64, usize)> = elements.iter().map(|&e| (g.elem_order(e), e)).collect();
    by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut span = BitSet::new(g.size());
    span.insert(0);
    let mut span_list = vec![0usize];
    let mut gens = Vec::new();
    for (_, e) in by_order {
        if span_list.len() == elements.len() {
            break;
        }
        if span.contains(e) {
            continue;
        }
        gens.push(e);
        let base = span_list.clone();
        let old = span.clone();
        let mut step = e;
        while !old.contains(step) {
            for &b in &base {
                let y = g.add(b, step);
                if span.insert(y) {
                    span_list.push(y);
                }
            }
            step = g.add(step, e);
        }
    }
    debug_assert!(span_list.iter().all(|&x| members.contains(x)));
    gens
}

/// The smallest subgroup containing `set`.
pub fn generated_subgroup(g: &FinAbGroup, set: &[usize]) -> Result<Subgroup> {
    let n = g.size();
    if let Some(&bad) = set.iter().find(|&&x| x >= n) {
        return Err(Error::InvalidInput(format!("element index {bad} out of range")));
    }
    Ok(set.iter().fold(Subgroup::trivial(g), |h, &x| h.adjoin(x)))
}

/// Generated subgroup from residue tuples.
pub fn generated_subgroup_of_tuples(g: &FinAbGroup, set: &[Vec<u64>]) -> Result<Subgroup> {
    let idx: Vec<usize> = set.iter().map(|t| g.index_strict(t)).collect::<Result<_>>()?;
    generated_subgroup(g, &idx)
}

/// Every subgroup exactly once, ordered by (order, element list).
pub fn enumerate_subgroups(g: &FinAbGroup) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_capped(g, DEFAULT_ORDER_CAP)
}

pub fn enumerate_subgroups_capped(g: &FinAbGroup, cap: u64) -> Result<Vec<Subgroup>> {
    g.check_cap(cap)?;
    let start = Subgroup::trivial(g);
    let mut seen: HashSet<BitSet> = HashSet::new();
    seen.insert(start.members.clone());
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(h) = queue.pop_front() {
        for x in 0..g.size() {
            if h.contains(x) {
                continue;
            }
            let k = h.adjoin(x);
            if seen.insert(k.members.clone()) {
                queue.push_back(k);
            }
        }
        out.push(h);
    }
    out.sort();
    Ok(out)
}

/// A homomorphism given by the images of the domain's standard generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupHom {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    images: Vec<usize>,
}

impl GroupHom {
    pub fn new(domain: &FinAbGroup, codomain: &FinAbGroup, images: Vec<usize>) -> Result<GroupHom> {
        if images.len() != domain.rank() {
            return Err(Error::InvalidInput("wrong number of generator images".into()));
        }
        for (i, &y) in images.iter().enumerate() {
            if y >= codomain.size() {
                return Err(Error::InvalidInput(format!("image index {y} out of range")));
            }
            let d = domain.invariant_factors()[i];
            if !d.is_multiple_of(codomain.elem_order(y)) {
                return Err(Error::InvalidInput(format!(
                    "image of generator {i} has order {} not dividing {d}",
                    codomain.elem_order(y)
                )));
            }
        }
        Ok(GroupHom { domain: domain.clone(), codomain: codomain.clone(), images })
    }

    pub fn identity(g: &FinAbGroup) -> GroupHom {
        GroupHom { domain: g.clone(), codomain: g.clone(), images: (0..g.rank()).map(|i| g.generator(i)).collect() }
    }

    pub fn domain(&self) -> &FinAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAbGroup {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.domain
            .element(x)
            .iter()
            .zip(&self.images)
            .fold(0, |acc, (&c, &img)| self.codomain.add(acc, self.codomain.scale(c as i64, img)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom> {
        if other.codomain != self.domain {
            return Err(Error::InvalidInput("composition of incompatible maps".into()));
        }
        let images = other.images.iter().map(|&y| self.apply(y)).collect();
        GroupHom::new(&other.domain, &self.codomain, images)
    }

    pub fn is_bijective(&self) -> bool {
        if self.domain.order() != self.codomain.order() {
            return false;
        }
        let mut hit = BitSet::new(self.codomain.size());
        (0..self.domain.size()).all(|x| hit.insert(self.apply(x)))
    }

    pub fn kernel(&self) -> Subgroup {
        let mut m = BitSet::new(self.domain.size());
        for x in 0..self.domain.size() {
            if self.apply(x) == 0 {
                m.insert(x);
            }
        }
        Subgroup::from_members(&self.domain, m)
    }
}

/// Quotient `A/H` in invariant-factor form with its projection.
pub fn quotient(g: &FinAbGroup, h: &Subgroup) -> Result<(FinAbGroup, GroupHom)> {
    if h.parent() != g {
        return Err(Error::InvalidInput("subgroup belongs to a different group".into()));
    }
    let p = quotient_presentation(g, h)?;
    let images = (0..g.rank())
        .map(|i| {
            let mut e = vec![0i128; g.rank()];
            e[i] = 1;
            p.project(&e)
        })
        .collect();
    let hom = GroupHom::new(g, &p.group, images)?;
    Ok((p.group, hom))
}

pub(crate) fn quotient_presentation(g: &FinAbGroup, h: &Subgroup) -> Result<Presentation> {
    let k = g.rank();
    let gens = h.generators();
    let mut rel = IntMatrix::zeros(k, k + gens.len());
    for (i, &d) in g.invariant_factors().iter().enumerate() {
        rel[(i, i)] = d as i128;
    }
    for (j, &x) in gens.iter().enumerate() {
        for (i, c) in g.element(x).into_iter().enumerate() {
            rel[(i, k + j)] = c as i128;
        }
    }
    Presentation::of(&rel)
}

/// Every subgroup of `s`, ordered like [`enumerate_subgroups`].
pub fn enumerate_subgroups_within(s: &Subgroup) -> Vec<Subgroup> {
    let g = s.parent();
    let start = Subgroup::trivial(g);
    let mut seen: HashSet<BitSet> = HashSet::new();
    seen.insert(start.members.clone());
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(h) = queue.pop_front() {
        for &x in s.elements() {
            if h.contains(x) {
                continue;
            }
            let k = h.adjoin(x);
            if seen.insert(k.members.clone()) {
                queue.push_back(k);
            }
        }
        out.push(h);
    }
    out.sort();
    out
}

/// The subquotient `⟨s_gens⟩ / (⟨s_gens⟩ ∩ H)` given by generators inside `g`.
/// Returns the abstract group and, for each of its standard generators, a
/// representative element of `g`.
pub fn subquotient(g: &FinAbGroup, s_gens: &[usize], h: &Subgroup) -> Result<(FinAbGroup, Vec<usize>)> {
    let t = s_gens.len();
    if t == 0 {
        return Ok((FinAbGroup::trivial(), vec![]));
    }
    let q = quotient_presentation(g, h)?;
    let r = q.group.rank();
    // kernel of Z^t -> A/H
    let mut x = IntMatrix::zeros(r, t + r);
    for (j, &y) in s_gens.iter().enumerate() {
        let coords: Vec<i128> = g.element(y).iter().map(|&c| c as i128).collect();
        let img = q.group.element(q.project(&coords));
        for (i, c) in img.into_iter().enumerate() {
            x[(i, j)] = c as i128;
        }
    }
    for (i, &d) in q.group.invariant_factors().iter().enumerate() {
        x[(i, t + i)] = d as i128;
    }
    let kernel = integer_kernel(&x);
    let mut lattice = IntMatrix::zeros(t, kernel.len());
    for (j, v) in kernel.iter().enumerate() {
        for i in 0..t {
            lattice[(i, j)] = v[i];
        }
    }
    let p = Presentation::of(&lattice)?;
    let reps = p
        .lifts
        .iter()
        .map(|c| {
            c.iter()
                .zip(s_gens)
                .fold(0usize, |acc, (&coef, &y)| g.add(acc, g.scale((coef % (g.exponent() as i128)) as i64, y)))
        })
        .collect();
    Ok((p.group, reps))
}

/// Every automorphism of `g` exactly once.
pub fn automorphisms(g: &FinAbGroup) -> Result<impl Iterator<Item = GroupHom>> {
    automorphisms_capped(g, DEFAULT_ORDER_CAP)
}

pub fn automorphisms_capped(g: &FinAbGroup, cap: u64) -> Result<impl Iterator<Item = GroupHom>> {
    g.check_cap(cap)?;
    let mut out = Vec::new();
    let candidates: Vec<Vec<usize>> = g
        .invariant_factors()
        .iter()
        .map(|&d| (0..g.size()).filter(|&y| g.elem_order(y) == d).collect())
        .collect();
    let mut chosen = Vec::new();
    injective_assignments(g, g, &candidates, &mut chosen, &mut |imgs| {
        out.push(GroupHom { domain: g.clone(), codomain: g.clone(), images: imgs.to_vec() });
        true
    }, &mut |_, _| true);
    Ok(out.into_iter())
}

/// Backtracking over generator images `y_i ∈ candidates[i]` such that the images
/// generate a subgroup of order `d_1 ⋯ d_i` at every prefix (i.e. the partial map is
/// injective). `accept(prefix, y)` prunes further; `emit` returns false to stop.
pub(crate) fn injective_assignments(
    domain: &FinAbGroup,
    codomain: &FinAbGroup,
    candidates: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> bool,
    accept: &mut dyn FnMut(&[usize], usize) -> bool,
) -> bool {
    fn rec(
        domain: &FinAbGroup,
        candidates: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        span: &Subgroup,
        emit: &mut dyn FnMut(&[usize]) -> bool,
        accept: &mut dyn FnMut(&[usize], usize) -> bool,
    ) -> bool {
        let i = chosen.len();
        if i == candidates.len() {
            return emit(chosen);
        }
        let d = domain.invariant_factors()[i];
        for &y in &candidates[i] {
            if span.contains(y) && d > 1 {
                continue;
            }
            if !accept(chosen, y) {
                continue;
            }
            let next = span.adjoin(y);
            if next.order() != span.order() * d {
                continue;
            }
            chosen.push(y);
            let go_on = rec(domain, candidates, chosen, &next, emit, accept);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    let span = Subgroup::trivial(codomain);
    rec(domain, candidates, chosen, &span, emit, accept)
}
