//! Light cone, isotropic subgroups, radical, coradical and localization.

use std::collections::{HashSet, VecDeque};

use super::{prime_divisors, PreMetricGroup};
use crate::abelian::{generated_subgroup, subquotient, Subgroup};
use crate::error::{Error, Result};
use crate::qz::{gcd, QZ};

fn inverse_mod(u: u64, n: u64) -> u64 {
    (1..n).find(|&v| (u * v) % n == 1).unwrap_or(1)
}

impl PreMetricGroup {
    /// `{x : q(x) = 0}` in index order.
    pub fn light_cone(&self) -> Vec<usize> {
        (0..self.group.size()).filter(|&x| self.q(x).is_zero()).collect()
    }

    pub fn is_anisotropic(&self) -> bool {
        self.light_cone().len() == 1
    }

    pub fn is_isotropic(&self, h: &Subgroup) -> bool {
        h.elements().iter().all(|&x| self.q(x).is_zero())
    }

    /// All isotropic subgroups, in the documented subgroup order.
    pub fn isotropic_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.group.check_cap(self.cap)?;
        let cone = self.light_cone();
        let start = Subgroup::trivial(&self.group);
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(h) = queue.pop_front() {
            for &x in &cone {
                if h.contains(x) || h.generators().iter().any(|&g| !self.b(x, g).is_zero()) {
                    continue;
                }
                let k = h.adjoin(x);
                if !seen.contains(&k) {
                    seen.insert(k.clone());
                    queue.push_back(k);
                }
            }
            out.push(h);
        }
        out.sort();
        Ok(out)
    }

    /// Isotropic subgroups that are maximal under inclusion.
    pub fn maximal_isotropic_subgroups(&self) -> Result<Vec<Subgroup>> {
        let all = self.isotropic_subgroups()?;
        Ok(all
            .iter()
            .filter(|h| !all.iter().any(|k| k.order() > h.order() && h.is_subgroup_of(k)))
            .cloned()
            .collect())
    }

    /// Intersection of the maximal isotropic subgroups.
    pub fn radical_subgroup(&self) -> Result<Subgroup> {
        let max = self.maximal_isotropic_subgroups()?;
        let whole = Subgroup::whole(&self.group);
        Ok(max.iter().fold(whole, |acc, h| acc.intersection(h)))
    }

    /// The subgroup generated by the light cone.
    pub fn coradical_subgroup(&self) -> Subgroup {
        generated_subgroup(&self.group, &self.light_cone()).expect("light cone lies in the group")
    }

    /// `H^⊥ / H` with the induced form.
    pub fn localize(&self, h: &Subgroup) -> Result<PreMetricGroup> {
        if h.parent() != &self.group {
            return Err(Error::InvalidInput("subgroup of a different group".into()));
        }
        if !self.is_isotropic(h) {
            return Err(Error::NotIsotropic);
        }
        let perp = self.orthogonal(h);
        for &x in perp.elements() {
            let qx = self.q(x);
            if h.elements().iter().any(|&y| self.q(self.group.add(x, y)) != qx) {
                return Err(Error::Internal(format!("q is not constant on the coset of element {x}")));
            }
        }
        let (g, reps) = subquotient(&self.group, perp.generators(), h)?;
        self.form_on_representatives(g, &reps)
    }

    pub fn mantle(&self) -> Result<PreMetricGroup> {
        self.localize(&self.radical_subgroup()?)
    }

    /// Localization at the first maximal isotropic subgroup.
    pub fn core(&self) -> Result<PreMetricGroup> {
        let max = self.maximal_isotropic_subgroups()?;
        self.localize(&max[0])
    }

    /// Like [`core`](Self::core), additionally checking that every maximal
    /// isotropic subgroup gives an isomorphic localization.
    pub fn core_verified(&self) -> Result<PreMetricGroup> {
        let max = self.maximal_isotropic_subgroups()?;
        let first = self.localize(&max[0])?;
        for e in &max[1..] {
            let other = self.localize(e)?;
            if first.are_isomorphic(&other)?.is_none() {
                return Err(Error::Internal(format!(
                    "localizations at maximal isotropic subgroups {:?} and {:?} differ",
                    max[0], e
                )));
            }
        }
        Ok(first)
    }

    /// Isotropic generation tested by closure: the light cone generates `A`.
    pub fn is_isotropically_generated(&self) -> bool {
        self.coradical_subgroup().is_whole()
    }

    /// Isotropic generation tested on each primary component of a metric group:
    /// the exponent `n` kills `q` and a hyperbolic `(Z/n)²` is present.
    pub fn is_isotropically_generated_criterion(&self) -> Result<bool> {
        if !self.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        for p in prime_divisors(self.order()) {
            let (part, _) = self.restrict(&self.primary_component(p))?;
            let n = part.group.exponent() as i64;
            if part.q_values().iter().any(|v| !v.times(n).is_zero()) {
                return Ok(false);
            }
            if part.contains_hyperbolic(n as u64).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Isotropic `a, c` of order `n` with `B(a, c) = 1/n`, so that `⟨a, c⟩`
    /// carries the hyperbolic form on `(Z/n)²`.
    pub fn contains_hyperbolic(&self, n: u64) -> Option<(usize, usize)> {
        if n == 1 {
            return Some((0, 0));
        }
        let cands: Vec<usize> =
            self.light_cone().into_iter().filter(|&x| self.group.elem_order(x) == n).collect();
        for &a in &cands {
            for &c in &cands {
                let bac = self.b(a, c);
                if bac.order() != n {
                    continue;
                }
                // bac = u/n with u a unit mod n; rescale c so that B(a, c) = 1/n
                let u = bac.scaled_to(n).expect("order divides n");
                debug_assert_eq!(gcd(u, n), 1);
                let c1 = self.group.scale(inverse_mod(u, n) as i64, c);
                debug_assert_eq!(self.b(a, c1), QZ::frac(1, n));
                return Some((a, c1));
            }
        }
        None
    }
}
