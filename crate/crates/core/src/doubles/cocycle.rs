//! Normalized 3-cocycles and 2-cochains with values in Q/Z.

use std::fmt;

use super::group::FinGroup;
use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use crate::qz::{gcd, QZ};

/// A normalized 3-cocycle `ω : G³ → Q/Z`, validated on construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Cocycle3 {
    group: FinGroup,
    values: Vec<QZ>,
}

impl fmt::Debug for Cocycle3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero = self.values.iter().filter(|v| !v.is_zero()).count();
        write!(f, "Cocycle3(order {}, {nonzero} nonzero values)", self.group.order())
    }
}

/// One summand of the standard cocycles on `Z/n_1 × … × Z/n_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbelianTerm {
    /// `p·a_i·(b_i + c_i − [b_i + c_i]) / n_i²`
    I { i: usize, p: i64 },
    /// `p·a_i·(b_j + c_j − [b_j + c_j]) / (n_i n_j)`, `i < j`
    II { i: usize, j: usize, p: i64 },
    /// `p·a_i·b_j·c_k / gcd(n_i, n_j, n_k)`, `i < j < k`
    III { i: usize, j: usize, k: usize, p: i64 },
}

impl Cocycle3 {
    pub fn new(group: FinGroup, values: Vec<QZ>) -> Result<Self> {
        let n = group.order();
        if values.len() != n * n * n {
            return Err(Error::InvalidInput(format!("expected {} values, got {}", n * n * n, values.len())));
        }
        let w = Cocycle3 { group, values };
        for a in 0..n {
            for b in 0..n {
                if !w.at(0, a, b).is_zero() || !w.at(a, 0, b).is_zero() || !w.at(a, b, 0).is_zero() {
                    return Err(Error::NotNormalized);
                }
            }
        }
        if let Some((a, b, c, d)) = w.first_identity_failure() {
            return Err(Error::CocycleIdentity(a, b, c, d));
        }
        Ok(w)
    }

    pub fn zero(group: &FinGroup) -> Self {
        let n = group.order();
        Cocycle3 { group: group.clone(), values: vec![QZ::ZERO; n * n * n] }
    }

    fn first_identity_failure(&self) -> Option<(usize, usize, usize, usize)> {
        let g = &self.group;
        let n = g.order();
        for w in 1..n {
            for x in 1..n {
                let wx = g.mul(w, x);
                for y in 1..n {
                    let xy = g.mul(x, y);
                    let wxy = self.at(w, x, y);
                    for z in 1..n {
                        let d = self.at(x, y, z) - self.at(wx, y, z) + self.at(w, xy, z) - self.at(w, x, g.mul(y, z))
                            + wxy;
                        if !d.is_zero() {
                            return Some((w, x, y, z));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn at(&self, x: usize, y: usize, z: usize) -> QZ {
        let n = self.group.order();
        self.values[(x * n + y) * n + z]
    }

    pub fn values(&self) -> &[QZ] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Cocycle3) -> Result<Cocycle3> {
        if self.group != other.group {
            return Err(Error::InvalidInput("cocycles on different groups".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a + b).collect();
        Ok(Cocycle3 { group: self.group.clone(), values })
    }

    /// Pullback along a surjective homomorphism `proj : G → Q`.
    pub fn inflate(base: &Cocycle3, group: &FinGroup, proj: &[usize]) -> Result<Cocycle3> {
        if !group.is_homomorphism(&base.group, proj) {
            return Err(Error::InvalidInput("quotient map is not a homomorphism".into()));
        }
        let n = group.order();
        let mut values = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    values.push(base.at(proj[x], proj[y], proj[z]));
                }
            }
        }
        Cocycle3::new(group.clone(), values)
    }

    /// Restriction to a subgroup (sorted element list), as a cocycle on that group.
    pub fn restrict(&self, h: &[usize]) -> Result<Cocycle3> {
        let (sub, emb) = self.group.subgroup_as_group(h)?;
        let m = sub.order();
        let mut values = Vec::with_capacity(m * m * m);
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    values.push(self.at(emb[x], emb[y], emb[z]));
                }
            }
        }
        Ok(Cocycle3 { group: sub, values })
    }

    /// Standard cocycles on an abelian group, indexed like `a`.
    pub fn abelian(a: &FinAbGroup, terms: &[AbelianTerm]) -> Result<Cocycle3> {
        let group = FinGroup::from_abelian(a)?;
        let d = a.invariant_factors();
        let k = d.len();
        for t in terms {
            let ok = match *t {
                AbelianTerm::I { i, .. } => i < k,
                AbelianTerm::II { i, j, .. } => i < j && j < k,
                AbelianTerm::III { i, j, k: l, .. } => i < j && j < l && l < k,
            };
            if !ok {
                return Err(Error::InvalidInput(format!("term {t:?} does not fit {k} factors")));
            }
        }
        let n = a.size();
        let coords: Vec<Vec<i64>> = (0..n).map(|x| a.element(x).iter().map(|&c| c as i64).collect()).collect();
        let carry = |m: u64, b: i64, c: i64| if b + c >= m as i64 { m as i64 } else { 0 };
        let mut values = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (a_, b_, c_) = (&coords[x], &coords[y], &coords[z]);
                    let mut v = QZ::ZERO;
                    for t in terms {
                        v += match *t {
                            AbelianTerm::I { i, p } => {
                                QZ::frac(p * a_[i] * carry(d[i], b_[i], c_[i]), d[i] * d[i])
                            }
                            AbelianTerm::II { i, j, p } => {
                                QZ::frac(p * a_[i] * carry(d[j], b_[j], c_[j]), d[i] * d[j])
                            }
                            AbelianTerm::III { i, j, k, p } => {
                                QZ::frac(p * a_[i] * b_[j] * c_[k], gcd(gcd(d[i], d[j]), d[k]))
                            }
                        };
                    }
                    values.push(v);
                }
            }
        }
        Cocycle3::new(group, values)
    }

    /// The cocycle on `(Z/p)³` with alternating part `λ·det` and symmetric part `S`:
    /// `λ·a_1 b_2 c_3 / p` plus type I terms with `p_i = S_ii` and type II terms
    /// with `p_ij = 2 S_ij`.
    pub fn ep3(p: u64, lambda: i64, sym: &[[i64; 3]; 3]) -> Result<Cocycle3> {
        for i in 0..3 {
            for j in 0..3 {
                if (sym[i][j] - sym[j][i]).rem_euclid(p as i64) != 0 {
                    return Err(Error::InvalidInput("matrix is not symmetric".into()));
                }
            }
        }
        let mut terms = vec![AbelianTerm::III { i: 0, j: 1, k: 2, p: lambda }];
        for i in 0..3 {
            terms.push(AbelianTerm::I { i, p: sym[i][i] });
            for j in i + 1..3 {
                terms.push(AbelianTerm::II { i, j, p: 2 * sym[i][j] });
            }
        }
        Cocycle3::abelian(&FinAbGroup::new(vec![p, p, p])?, &terms)
    }

    /// `Σ_{k<n} ω(x, x^k, x)`, the class of the restriction to `⟨x⟩`
    /// (an element of order dividing `n = ord(x)`).
    pub fn cyclic_invariant(&self, x: usize) -> QZ {
        let g = &self.group;
        let n = g.elem_order(x);
        let mut acc = QZ::ZERO;
        let mut xk = 0;
        for _ in 0..n {
            acc += self.at(x, xk, x);
            xk = g.mul(xk, x);
        }
        acc
    }
}

/// A 2-cochain on a subset (usually a subgroup) of `G`, stored densely over `G × G`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain2 {
    n: usize,
    domain: Vec<usize>,
    values: Vec<QZ>,
}

impl fmt::Debug for Cochain2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain2(")?;
        let mut first = true;
        for &x in &self.domain {
            for &y in &self.domain {
                let v = self.at(x, y);
                if !v.is_zero() {
                    if !first {
                        write!(f, ", ")?;
                    }
                    write!(f, "({x},{y})={v}")?;
                    first = false;
                }
            }
        }
        write!(f, ")")
    }
}

impl Cochain2 {
    pub fn zero(n: usize, domain: &[usize]) -> Self {
        Cochain2 { n, domain: domain.to_vec(), values: vec![QZ::ZERO; n * n] }
    }

    pub fn from_fn(n: usize, domain: &[usize], f: impl Fn(usize, usize) -> QZ) -> Self {
        let mut c = Self::zero(n, domain);
        for &x in domain {
            for &y in domain {
                c.set(x, y, f(x, y));
            }
        }
        c
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn at(&self, x: usize, y: usize) -> QZ {
        self.values[x * self.n + y]
    }

    pub fn set(&mut self, x: usize, y: usize, v: QZ) {
        self.values[x * self.n + y] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `c(xy, z) + c(x, y) − c(x, yz) − c(y, z)` on the domain.
    pub fn coboundary_at(&self, g: &FinGroup, x: usize, y: usize, z: usize) -> QZ {
        self.at(g.mul(x, y), z) + self.at(x, y) - self.at(x, g.mul(y, z)) - self.at(y, z)
    }

    pub fn is_cocycle(&self, g: &FinGroup) -> bool {
        let d = &self.domain;
        d.iter().all(|&x| d.iter().all(|&y| d.iter().all(|&z| self.coboundary_at(g, x, y, z).is_zero())))
    }

    /// `Alt(c)(x, y) = c(x, y) − c(y, x)`.
    pub fn alt(&self) -> Cochain2 {
        Cochain2::from_fn(self.n, &self.domain, |x, y| self.at(x, y) - self.at(y, x))
    }

    /// `c^g(x, y) = c(g x g⁻¹, g y g⁻¹)`.
    pub fn conjugated(&self, g: &FinGroup, h: usize) -> Cochain2 {
        Cochain2::from_fn(self.n, &self.domain, |x, y| self.at(g.conj(h, x), g.conj(h, y)))
    }

    pub fn plus(&self, other: &Cochain2) -> Cochain2 {
        Cochain2::from_fn(self.n, &self.domain, |x, y| self.at(x, y) + other.at(x, y))
    }

    pub fn minus(&self, other: &Cochain2) -> Cochain2 {
        Cochain2::from_fn(self.n, &self.domain, |x, y| self.at(x, y) - other.at(x, y))
    }
}
