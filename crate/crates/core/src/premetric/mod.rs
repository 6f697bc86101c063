//! Pre-metric groups: finite abelian groups with a quadratic form into Q/Z.
//!
//! The form is stored on the standard generators (`q_gen`) together with the
//! polarization on generator pairs (`b_pairs`); a full value table is cached.

mod catalog;
mod classify;
mod iso;
mod isotropy;
mod spec;

pub use catalog::{blocks, describe, Block, Catalog};
pub use classify::{
    anisotropic_references, AnisotropicLabel, AnisotropicTable, DecompositionType, ReductiveCase, ReductiveReport,
    SplitWitness,
};
pub use spec::{Arg, FormSpec};

use std::fmt;

use crate::abelian::{generated_subgroup, subquotient, FinAbGroup, Subgroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};
use crate::qz::QZ;

#[derive(Clone)]
pub struct PreMetricGroup {
    group: FinAbGroup,
    q_gen: Vec<QZ>,
    /// `b_pairs[i][j] = B(g_i, g_j)` for `j < i`
    b_pairs: Vec<Vec<QZ>>,
    q_table: Vec<QZ>,
    cap: u64,
}

impl PartialEq for PreMetricGroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.q_gen == other.q_gen && self.b_pairs == other.b_pairs
    }
}
impl Eq for PreMetricGroup {}

impl fmt::Debug for PreMetricGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PreMetricGroup({}, q {:?}, b {:?})", self.group, self.q_gen, self.b_pairs)
    }
}

/// Degeneracy of the polarization `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    Nondegenerate,
    /// `ker B = {0, δ}` with `q(δ) = 1/2`.
    SlightlyDegenerate { fermion: usize },
    /// `ker B ≠ 0` and `q` vanishes on it.
    TannakianRadical(Subgroup),
    Other(Subgroup),
}

impl Degeneracy {
    pub fn name(&self) -> &'static str {
        match self {
            Degeneracy::Nondegenerate => "nondegenerate",
            Degeneracy::SlightlyDegenerate { .. } => "slightly_degenerate",
            Degeneracy::TannakianRadical(_) => "tannakian_radical",
            Degeneracy::Other(_) => "other",
        }
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Prime factors in increasing order, without multiplicity.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn prime_power_base(n: u64) -> Option<u64> {
    match prime_divisors(n).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

/// Quadratic value of a coefficient vector on a presentation with symmetric
/// polarization matrix `b` (diagonal ignored).
fn q_of_coords(coords: &[i64], q: &[QZ], b: &[Vec<QZ>]) -> QZ {
    let mut acc = QZ::ZERO;
    for i in 0..coords.len() {
        let c = coords[i];
        if c == 0 {
            continue;
        }
        acc += q[i].times(c * c);
        for j in 0..i {
            if coords[j] != 0 {
                acc += b[i][j].times(c * coords[j]);
            }
        }
    }
    acc
}

impl PreMetricGroup {
    /// Validated constructor from data on the standard generators of an
    /// invariant-factor group. `b_pairs[i]` holds `B(g_i, g_j)` for `j < i`.
    pub fn from_generators(group: FinAbGroup, q_gen: Vec<QZ>, b_pairs: Vec<Vec<QZ>>) -> Result<Self> {
        let k = group.rank();
        if q_gen.len() != k {
            return Err(Error::InvalidInput(format!("{} q values for {} generators", q_gen.len(), k)));
        }
        // external data omits the empty row of the first generator
        let mut b_pairs = b_pairs;
        if k == 0 && b_pairs.iter().all(|r| r.is_empty()) {
            b_pairs.clear();
        } else if b_pairs.len() + 1 == k {
            b_pairs.insert(0, vec![]);
        }
        if b_pairs.len() != k {
            return Err(Error::InvalidInput(format!("b_pairs needs {} rows", k.saturating_sub(1))));
        }
        for (i, row) in b_pairs.iter().enumerate() {
            if row.len() != i {
                return Err(Error::InvalidInput(format!("b_pairs row {i} must have {i} entries")));
            }
        }
        let d = group.invariant_factors();
        for i in 0..k {
            let di = d[i] as i64;
            if !q_gen[i].times(di * di).is_zero() || !q_gen[i].times(2 * di).is_zero() {
                return Err(Error::NotWellDefined(format!(
                    "q(g{i}) = {} is incompatible with generator order {di}",
                    q_gen[i]
                )));
            }
            for j in 0..i {
                let dj = d[j] as i64;
                let bij = b_pairs[i][j];
                if !bij.times(di).is_zero() || !bij.times(dj).is_zero() {
                    return Err(Error::NotWellDefined(format!(
                        "B(g{i}, g{j}) = {bij} is incompatible with generator orders {di}, {dj}"
                    )));
                }
            }
        }
        let q_table = (0..group.size())
            .map(|x| {
                let c: Vec<i64> = group.element(x).iter().map(|&v| v as i64).collect();
                q_of_coords(&c, &q_gen, &b_pairs)
            })
            .collect();
        Ok(PreMetricGroup { group, q_gen, b_pairs, q_table, cap: DEFAULT_ORDER_CAP })
    }

    /// Builds a form on `Z/c_1 × … × Z/c_k` (arbitrary orders) from `q` on the
    /// cyclic generators and the full symmetric polarization matrix, converting to
    /// invariant-factor form when the orders are not already a divisibility chain.
    pub fn from_cyclic_data(orders: &[u64], q: &[QZ], b: &[Vec<QZ>]) -> Result<Self> {
        let k = orders.len();
        if q.len() != k || b.len() != k || b.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidInput("cyclic form data has inconsistent sizes".into()));
        }
        for i in 0..k {
            let ci = orders[i] as i64;
            if !q[i].times(ci * ci).is_zero() || !q[i].times(2 * ci).is_zero() {
                return Err(Error::NotWellDefined(format!("q value {} on Z/{ci}", q[i])));
            }
            for j in 0..k {
                if i != j && (b[i][j] != b[j][i] || !b[i][j].times(ci).is_zero()) {
                    return Err(Error::NotWellDefined(format!("polarization entry ({i}, {j})")));
                }
            }
        }
        let chain = orders.iter().all(|&c| c >= 2) && orders.windows(2).all(|w| w[1] % w[0] == 0);
        if chain {
            let group = FinAbGroup::new(orders.to_vec())?;
            let b_pairs = (0..k).map(|i| (0..i).map(|j| b[i][j]).collect()).collect();
            return Self::from_generators(group, q.to_vec(), b_pairs);
        }
        let (target, iso) = FinAbGroup::from_cyclic_orders(orders)?;
        let lifts: Vec<Vec<i64>> = (0..target.rank()).map(|j| iso.lift_generator(j)).collect();
        let q_src = |c: &[i64]| q_of_coords(c, q, b);
        let q_gen: Vec<QZ> = lifts.iter().map(|l| q_src(l)).collect();
        let b_pairs = (0..target.rank())
            .map(|i| {
                (0..i)
                    .map(|j| {
                        let s: Vec<i64> = lifts[i].iter().zip(&lifts[j]).map(|(a, b)| a + b).collect();
                        q_src(&s) - q_gen[i] - q_gen[j]
                    })
                    .collect()
            })
            .collect();
        Self::from_generators(target, q_gen, b_pairs)
    }

    /// `Z/n` with `q(1) = value`.
    pub fn cyclic(n: u64, value: QZ) -> Result<Self> {
        if n <= 1 {
            return Ok(Self::trivial());
        }
        Self::from_cyclic_data(&[n], &[value], &[vec![QZ::ZERO]])
    }

    pub fn trivial() -> Self {
        Self::from_generators(FinAbGroup::trivial(), vec![], vec![]).expect("trivial form")
    }

    /// `q(x) = a·x²/p^m` on `Z/p^m`, `p` an odd prime.
    pub fn q_odd(p: u64, m: u32, a: i64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidInput(format!("q_odd needs an odd prime, got {p}")));
        }
        let n = p.pow(m);
        Self::cyclic(n, QZ::frac(a, n))
    }

    /// `q(x) = a·x²/2^{m+1}` on `Z/2^m`.
    pub fn q_two(m: u32, a: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("q_two needs m ≥ 1".into()));
        }
        Self::cyclic(1 << m, QZ::frac(a, 1 << (m + 1)))
    }

    /// `q(x, y) = xy/n` on `(Z/n)²`.
    pub fn hyper(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("hyper needs n ≥ 1".into()));
        }
        if n == 1 {
            return Ok(Self::trivial());
        }
        let b = QZ::frac(1, n);
        Self::from_cyclic_data(&[n, n], &[QZ::ZERO, QZ::ZERO], &[vec![QZ::ZERO, b], vec![b, QZ::ZERO]])
    }

    /// `q(x, y) = (x² + xy + y²)/2^m` on `(Z/2^m)²`.
    pub fn f_form(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("f_form needs m ≥ 1".into()));
        }
        let n = 1u64 << m;
        let v = QZ::frac(1, n);
        Self::from_cyclic_data(&[n, n], &[v, v], &[vec![QZ::ZERO, v], vec![v, QZ::ZERO]])
    }

    /// `A ⊕ Â` with `h(a, φ) = φ(a)`, identifying `Â` with `A` through the dual basis.
    pub fn hyper_general(a: &FinAbGroup) -> Result<Self> {
        let d = a.invariant_factors();
        let k = d.len();
        let orders: Vec<u64> = d.iter().chain(d).copied().collect();
        let mut b = vec![vec![QZ::ZERO; 2 * k]; 2 * k];
        for i in 0..k {
            let v = QZ::frac(1, d[i]);
            b[i][k + i] = v;
            b[k + i][i] = v;
        }
        Self::from_cyclic_data(&orders, &vec![QZ::ZERO; 2 * k], &b)
    }

    pub fn orthogonal_sum(&self, other: &PreMetricGroup) -> Result<PreMetricGroup> {
        let (k1, k2) = (self.group.rank(), other.group.rank());
        let orders: Vec<u64> =
            self.group.invariant_factors().iter().chain(other.group.invariant_factors()).copied().collect();
        let q: Vec<QZ> = self.q_gen.iter().chain(&other.q_gen).copied().collect();
        let mut b = vec![vec![QZ::ZERO; k1 + k2]; k1 + k2];
        for i in 0..k1 {
            for j in 0..i {
                b[i][j] = self.b_pairs[i][j];
                b[j][i] = self.b_pairs[i][j];
            }
        }
        for i in 0..k2 {
            for j in 0..i {
                b[k1 + i][k1 + j] = other.b_pairs[i][j];
                b[k1 + j][k1 + i] = other.b_pairs[i][j];
            }
        }
        let mut out = Self::from_cyclic_data(&orders, &q, &b)?;
        out.cap = self.cap.max(other.cap);
        Ok(out)
    }

    /// Overrides the order cap used by exhaustive searches.
    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn q_gens(&self) -> &[QZ] {
        &self.q_gen
    }

    /// Lower-triangular polarization table in the file layout: row `r` lists
    /// `B(g_{r+1}, g_j)` for `j ≤ r`.
    pub fn b_pairs(&self) -> &[Vec<QZ>] {
        &self.b_pairs[self.b_pairs.len().min(1)..]
    }

    /// `q` on an element index.
    pub fn q(&self, x: usize) -> QZ {
        self.q_table[x]
    }

    /// `B(x, y) = q(x + y) − q(x) − q(y)` on element indices.
    pub fn b(&self, x: usize, y: usize) -> QZ {
        self.q_table[self.group.add(x, y)] - self.q_table[x] - self.q_table[y]
    }

    pub fn eval_q(&self, x: &[u64]) -> Result<QZ> {
        Ok(self.q(self.group.index_strict(x)?))
    }

    pub fn eval_b(&self, x: &[u64], y: &[u64]) -> Result<QZ> {
        Ok(self.b(self.group.index_strict(x)?, self.group.index_strict(y)?))
    }

    pub fn q_values(&self) -> &[QZ] {
        &self.q_table
    }

    /// The q-values as a sorted multiset.
    pub fn q_multiset(&self) -> Vec<QZ> {
        let mut v = self.q_table.clone();
        v.sort();
        v
    }

    /// `{x : B(x, ·) = 0}`.
    pub fn kernel_of_b(&self) -> Subgroup {
        let gens: Vec<usize> = (0..self.group.rank()).map(|i| self.group.generator(i)).collect();
        let elems: Vec<usize> =
            (0..self.group.size()).filter(|&x| gens.iter().all(|&g| self.b(x, g).is_zero())).collect();
        Subgroup::from_elements(&self.group, &elems).expect("kernel of a bilinear form is a subgroup")
    }

    /// `{x : B(x, h) = 0 for all h ∈ H}`.
    pub fn orthogonal(&self, h: &Subgroup) -> Subgroup {
        let gens = h.generators();
        let elems: Vec<usize> =
            (0..self.group.size()).filter(|&x| gens.iter().all(|&g| self.b(x, g).is_zero())).collect();
        Subgroup::from_elements(&self.group, &elems).expect("orthogonal complement is a subgroup")
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.kernel_of_b().is_trivial()
    }

    pub fn degeneracy_class(&self) -> Degeneracy {
        let ker = self.kernel_of_b();
        if ker.is_trivial() {
            return Degeneracy::Nondegenerate;
        }
        if ker.order() == 2 {
            let delta = ker.elements()[1];
            if self.q(delta) == QZ::frac(1, 2) {
                return Degeneracy::SlightlyDegenerate { fermion: delta };
            }
        }
        if ker.elements().iter().all(|&x| self.q(x).is_zero()) {
            Degeneracy::TannakianRadical(ker)
        } else {
            Degeneracy::Other(ker)
        }
    }

    /// Restriction of the form to a subgroup, re-presented on its own generators.
    /// Returns the form and the embedding (images of the new generators).
    pub fn restrict(&self, h: &Subgroup) -> Result<(PreMetricGroup, Vec<usize>)> {
        let (g, reps) = subquotient(&self.group, h.generators(), &Subgroup::trivial(&self.group))?;
        let p = self.form_on_representatives(g, &reps)?;
        Ok((p, reps))
    }

    fn form_on_representatives(&self, g: FinAbGroup, reps: &[usize]) -> Result<PreMetricGroup> {
        let q_gen = reps.iter().map(|&r| self.q(r)).collect();
        let b_pairs = (0..reps.len()).map(|i| (0..i).map(|j| self.b(reps[i], reps[j])).collect()).collect();
        Ok(Self::from_generators(g, q_gen, b_pairs)?.with_cap(self.cap))
    }

    /// The p-primary component as a subgroup.
    pub fn primary_component(&self, p: u64) -> Subgroup {
        let mut pe = 1;
        while self.group.exponent().is_multiple_of(pe * p) {
            pe *= p;
        }
        let elems: Vec<usize> =
            (0..self.group.size()).filter(|&x| self.group.scale(pe as i64, x) == 0).collect();
        Subgroup::from_elements(&self.group, &elems).expect("primary component")
    }

    pub fn fermions(&self) -> Vec<usize> {
        let half = QZ::frac(1, 2);
        (1..self.group.size()).filter(|&x| self.group.elem_order(x) == 2 && self.q(x) == half).collect()
    }

    /// Subgroup of `other` generated by elements `y` admitting some `x` in `self`
    /// with `q(x) + q(y) = 0`.
    pub fn complementary_closure(&self, other: &PreMetricGroup) -> Subgroup {
        let values: std::collections::HashSet<QZ> = self.q_table.iter().copied().collect();
        let comp: Vec<usize> = (0..other.group.size()).filter(|&y| values.contains(&(-other.q(y)))).collect();
        generated_subgroup(&other.group, &comp).expect("indices in range")
    }

    /// Exhaustive check that `q` is a quadratic form with polarization `b`.
    pub fn verify_quadratic(&self) -> bool {
        let g = &self.group;
        let n = g.size();
        for x in 0..n {
            for y in 0..n {
                let bxy = self.b(x, y);
                if bxy != self.b(y, x) {
                    return false;
                }
            }
        }
        for x in 0..n {
            for k in 0..=g.exponent() as i64 {
                if self.q(g.scale(k, x)) != self.q(x).times(k * k) {
                    return false;
                }
            }
            for y in 0..n {
                for z in 0..n {
                    if self.b(g.add(x, y), z) != self.b(x, z) + self.b(y, z) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
