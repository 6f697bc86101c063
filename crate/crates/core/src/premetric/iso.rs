//! Isomorphism of pre-metric groups by generator-image backtracking.

use super::PreMetricGroup;
use crate::abelian::{injective_assignments, GroupHom};
use crate::error::Result;

impl PreMetricGroup {
    /// A group isomorphism `f` with `q₂(f(x)) = q₁(x)`, or `None`.
    pub fn are_isomorphic(&self, other: &PreMetricGroup) -> Result<Option<GroupHom>> {
        let cap = self.cap.max(other.cap);
        self.group.check_cap(cap)?;
        other.group.check_cap(cap)?;
        if self.group.invariant_factors() != other.group.invariant_factors()
            || self.q_multiset() != other.q_multiset()
            || self.light_cone().len() != other.light_cone().len()
        {
            return Ok(None);
        }
        let g1 = &self.group;
        let g2 = &other.group;
        let gens: Vec<usize> = (0..g1.rank()).map(|i| g1.generator(i)).collect();
        let candidates: Vec<Vec<usize>> = g1
            .invariant_factors()
            .iter()
            .zip(&gens)
            .map(|(&d, &g)| {
                (0..g2.size()).filter(|&y| g2.elem_order(y) == d && other.q(y) == self.q(g)).collect()
            })
            .collect();
        let mut found = None;
        let mut chosen = Vec::new();
        injective_assignments(
            g1,
            g2,
            &candidates,
            &mut chosen,
            &mut |imgs| {
                found = Some(imgs.to_vec());
                false
            },
            &mut |prefix, y| {
                let i = prefix.len();
                prefix.iter().enumerate().all(|(j, &yj)| other.b(y, yj) == self.b(gens[i], gens[j]))
            },
        );
        let Some(images) = found else {
            return Ok(None);
        };
        let f = GroupHom::new(g1, g2, images)?;
        debug_assert!(f.is_bijective());
        debug_assert!((0..g1.size()).all(|x| other.q(f.apply(x)) == self.q(x)));
        Ok(Some(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::automorphisms;
    use crate::qz::QZ;

    fn sum(a: &PreMetricGroup, b: &PreMetricGroup) -> PreMetricGroup {
        a.orthogonal_sum(b).unwrap()
    }

    /// Isomorphism by trying every automorphism of the common group.
    fn oracle(a: &PreMetricGroup, b: &PreMetricGroup) -> bool {
        a.group() == b.group()
            && automorphisms(a.group()).unwrap().any(|f| (0..a.group().size()).all(|x| b.q(f.apply(x)) == a.q(x)))
    }

    #[test]
    fn odd_relation() {
        for p in [3, 5] {
            let a = PreMetricGroup::q_odd(p, 1, 1).unwrap();
            // 2 is a non-residue mod 3 and mod 5
            let b = PreMetricGroup::q_odd(p, 1, 2).unwrap();
            let f = sum(&a, &a).are_isomorphic(&sum(&b, &b)).unwrap();
            assert!(f.is_some());
            assert!(a.are_isomorphic(&b).unwrap().is_none());
        }
    }

    #[test]
    fn hyper_and_f_relations() {
        for m in 1..=2u32 {
            let h = PreMetricGroup::hyper(1 << m).unwrap();
            let f = PreMetricGroup::f_form(m).unwrap();
            assert!(sum(&h, &h).are_isomorphic(&sum(&f, &f)).unwrap().is_some());
        }
        let h = PreMetricGroup::hyper(2).unwrap();
        let f = PreMetricGroup::f_form(1).unwrap();
        assert!(h.are_isomorphic(&f).unwrap().is_none());
        let fermion = PreMetricGroup::cyclic(2, QZ::frac(1, 2)).unwrap();
        assert!(sum(&h, &fermion).are_isomorphic(&sum(&f, &fermion)).unwrap().is_some());
    }

    #[test]
    fn hyper_on_odd_cyclic_squares() {
        for (p, m) in [(3u64, 1u32), (5, 1), (3, 2), (7, 1), (13, 1)] {
            let n = p.pow(m);
            let h = PreMetricGroup::hyper(n).unwrap();
            let z = PreMetricGroup::q_odd(p, m, 1).unwrap();
            let nonres = (2..p as i64).find(|&a| (1..p as i64).all(|x| (x * x - a).rem_euclid(p as i64) != 0)).unwrap();
            let zbar = PreMetricGroup::q_odd(p, m, nonres).unwrap();
            let expected = if p % 4 == 1 { sum(&z, &z) } else { sum(&z, &zbar) };
            assert!(h.are_isomorphic(&expected).unwrap().is_some(), "p={p} m={m}");
        }
    }

    #[test]
    fn matches_automorphism_oracle() {
        let forms = [
            PreMetricGroup::q_two(2, 1).unwrap(),
            PreMetricGroup::q_two(2, 3).unwrap(),
            PreMetricGroup::q_two(2, 5).unwrap(),
            PreMetricGroup::q_two(2, 1).unwrap().orthogonal_sum(&PreMetricGroup::cyclic(2, QZ::frac(1, 4)).unwrap()).unwrap(),
            PreMetricGroup::q_two(2, 3).unwrap().orthogonal_sum(&PreMetricGroup::cyclic(2, QZ::frac(3, 4)).unwrap()).unwrap(),
            PreMetricGroup::q_two(2, 5).unwrap().orthogonal_sum(&PreMetricGroup::cyclic(2, QZ::frac(1, 2)).unwrap()).unwrap(),
            PreMetricGroup::q_two(2, 1).unwrap().orthogonal_sum(&PreMetricGroup::cyclic(2, QZ::frac(1, 2)).unwrap()).unwrap(),
            PreMetricGroup::hyper(2).unwrap().orthogonal_sum(&PreMetricGroup::cyclic(2, QZ::frac(1, 4)).unwrap()).unwrap(),
            PreMetricGroup::f_form(1).unwrap().orthogonal_sum(&PreMetricGroup::cyclic(2, QZ::frac(1, 4)).unwrap()).unwrap(),
        ];
        for a in &forms {
            for b in &forms {
                assert_eq!(a.are_isomorphic(b).unwrap().is_some(), oracle(a, b), "{a:?} vs {b:?}");
            }
        }
    }
}
