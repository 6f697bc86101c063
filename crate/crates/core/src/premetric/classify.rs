//! Reductivity, the trichotomy for reductive 2-groups, decomposition types and
//! the reference tables of anisotropic groups.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{prime_power_base, Degeneracy, PreMetricGroup};
use crate::abelian::{enumerate_subgroups, enumerate_subgroups_within, Subgroup};
use crate::error::{Error, Result};
use crate::qz::QZ;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecompositionType {
    I,
    II,
    III,
}

impl fmt::Display for DecompositionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecompositionType::I => "I",
            DecompositionType::II => "II",
            DecompositionType::III => "III",
        })
    }
}

/// An orthogonal splitting `A = C ⊕ K` with `C` metric of exponent 2 and
/// isotropically generated, `K` anisotropic with at most one fermion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    pub metric_part: Subgroup,
    pub anisotropic_part: Subgroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductiveCase {
    IsotropicallyGenerated,
    Anisotropic,
    Split(SplitWitness),
}

impl ReductiveCase {
    pub fn number(&self) -> u8 {
        match self {
            ReductiveCase::IsotropicallyGenerated => 1,
            ReductiveCase::Anisotropic => 2,
            ReductiveCase::Split(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AnisotropicTable {
    Table1,
    Table2,
}

/// A row of the anisotropic reference tables together with the exponents
/// (as elements of Q/Z) of the roots of unity realizing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnisotropicLabel {
    pub table: AnisotropicTable,
    pub row: String,
    pub parameters: Vec<QZ>,
}

impl fmt::Display for AnisotropicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.table {
            AnisotropicTable::Table1 => "Table 1",
            AnisotropicTable::Table2 => "Table 2",
        };
        write!(f, "{t} row {}", self.row)?;
        if !self.parameters.is_empty() {
            let ps: Vec<String> = self.parameters.iter().map(|p| p.to_string()).collect();
            write!(f, " ({})", ps.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ReductiveReport {
    pub reductive: bool,
    pub degeneracy: Degeneracy,
    pub radical: Subgroup,
    pub coradical: Subgroup,
    pub mantle: PreMetricGroup,
    pub case_2group: Option<ReductiveCase>,
    pub decomposition_type: Option<DecompositionType>,
}

fn nonresidue(p: u64) -> i64 {
    (2..p).find(|&a| (1..p).all(|x| (x * x) % p != a)).expect("odd prime has a non-residue") as i64
}

fn label(table: AnisotropicTable, row: &str, parameters: Vec<QZ>) -> AnisotropicLabel {
    AnisotropicLabel { table, row: row.to_string(), parameters }
}

/// The reference groups of the anisotropic tables: for `p = 2` the 18 classes of
/// pre-metric 2-groups, for odd `p` the metric `p`-groups of order `p` and `p²`.
pub fn anisotropic_references(p: u64) -> Result<Vec<(AnisotropicLabel, PreMetricGroup)>> {
    use AnisotropicTable::*;
    let cyc = |n: u64, a: i64, m: u64| PreMetricGroup::cyclic(n, QZ::frac(a, m));
    let mut out = Vec::new();
    if p == 2 {
        let f = PreMetricGroup::f_form(1)?;
        out.push((label(Table2, "1*", vec![]), PreMetricGroup::trivial()));
        for b in [1, 3] {
            out.push((label(Table2, "2*", vec![QZ::frac(b, 4)]), cyc(2, b, 4)?));
        }
        for b in [1, 3] {
            out.push((label(Table2, "3*", vec![QZ::frac(b, 4)]), cyc(2, b, 4)?.orthogonal_sum(&cyc(2, b, 4)?)?));
        }
        for a in [1, 3, 5, 7] {
            out.push((label(Table2, "4*", vec![QZ::frac(a, 8)]), PreMetricGroup::q_two(2, a)?));
        }
        for a in [1, 3, 5, 7] {
            let g = PreMetricGroup::q_two(2, a)?.orthogonal_sum(&cyc(2, 1, 4)?)?;
            out.push((label(Table2, "5*", vec![QZ::frac(a, 8), QZ::frac(1, 4)]), g));
        }
        out.push((label(Table2, "6", vec![]), f.clone()));
        for b in [1, 3] {
            out.push((label(Table2, "7", vec![QZ::frac(b, 4)]), f.orthogonal_sum(&cyc(2, b, 4)?)?));
        }
        out.push((label(Table2, "8*", vec![]), cyc(2, 1, 2)?));
        out.push((label(Table2, "9*", vec![QZ::frac(1, 4)]), cyc(2, 1, 2)?.orthogonal_sum(&cyc(2, 1, 4)?)?));
    } else {
        if prime_power_base(p) != Some(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let n = nonresidue(p);
        let z = PreMetricGroup::q_odd(p, 1, 1)?;
        let zbar = PreMetricGroup::q_odd(p, 1, n)?;
        let (one, bar) = (QZ::frac(1, p), QZ::frac(n, p));
        out.push((label(Table1, "1", vec![one]), z.clone()));
        out.push((label(Table1, "1", vec![bar]), zbar.clone()));
        if p % 4 == 1 {
            out.push((label(Table1, "2", vec![one, bar]), z.orthogonal_sum(&zbar)?));
        } else {
            out.push((label(Table1, "3", vec![one, one]), z.orthogonal_sum(&z)?));
        }
    }
    Ok(out)
}

impl PreMetricGroup {
    /// All subgroups on which `q` vanishes only at 0.
    pub fn anisotropic_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.group.check_cap(self.cap)?;
        let start = Subgroup::trivial(&self.group);
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(h) = queue.pop_front() {
            for x in 1..self.group.size() {
                if h.contains(x) || self.q(x).is_zero() {
                    continue;
                }
                let k = h.adjoin(x);
                if seen.contains(&k) || k.elements()[1..].iter().any(|&y| self.q(y).is_zero()) {
                    continue;
                }
                seen.insert(k.clone());
                queue.push_back(k);
            }
            out.push(h);
        }
        out.sort();
        Ok(out)
    }

    fn fermions_in(&self, h: &Subgroup) -> usize {
        let half = QZ::frac(1, 2);
        h.elements().iter().filter(|&&x| self.group.elem_order(x) == 2 && self.q(x) == half).count()
    }

    /// Searches an orthogonal splitting `A = C ⊕ K` with `C` a nontrivial
    /// isotropically generated metric group of exponent 2 and `K` nontrivial
    /// anisotropic with at most one fermion. First hit in subgroup order.
    pub fn find_case3_splitting(&self) -> Result<Option<SplitWitness>> {
        let order = self.order();
        for k in self.anisotropic_subgroups()? {
            if k.is_trivial() || k.order() == order || self.fermions_in(&k) > 1 {
                continue;
            }
            let perp = self.orthogonal(&k);
            let two_torsion: Vec<usize> =
                perp.elements().iter().copied().filter(|&x| self.group.elem_order(x) <= 2).collect();
            let t = Subgroup::from_elements(&self.group, &two_torsion)?;
            for c in enumerate_subgroups_within(&t) {
                if c.order() * k.order() != order || !c.intersection(&k).is_trivial() {
                    continue;
                }
                let (cf, _) = self.restrict(&c)?;
                if cf.is_nondegenerate() && cf.is_isotropically_generated() {
                    return Ok(Some(SplitWitness { metric_part: c, anisotropic_part: k }));
                }
            }
        }
        Ok(None)
    }

    /// The three defining conditions of the reductive 2-group cases, each
    /// evaluated independently.
    pub fn case_conditions(&self) -> Result<(bool, bool, Option<SplitWitness>)> {
        let c1 = self.is_isotropically_generated();
        let c2 = self.is_anisotropic() && !self.group.is_trivial();
        let c3 = self.find_case3_splitting()?;
        Ok((c1, c2, c3))
    }

    pub fn classify_reductive_2group(&self) -> Result<ReductiveCase> {
        let order = self.order();
        if !order.is_power_of_two() {
            return Err(Error::NotTwoGroup(order));
        }
        if !self.radical_subgroup()?.is_trivial() {
            return Err(Error::NotReductive);
        }
        let (c1, c2, c3) = self.case_conditions()?;
        // the conditions can overlap (case 1 with case 3), so the first that holds wins
        if c1 {
            Ok(ReductiveCase::IsotropicallyGenerated)
        } else if c2 {
            Ok(ReductiveCase::Anisotropic)
        } else if let Some(w) = c3 {
            Ok(ReductiveCase::Split(w))
        } else {
            Err(Error::NoReductiveCase(format!("order {order}, {} isotropic elements", self.light_cone().len())))
        }
    }

    /// Trivial radical, cross-checked against the odd dichotomy on odd metric input.
    pub fn is_reductive(&self) -> Result<bool> {
        let reductive = self.radical_subgroup()?.is_trivial();
        let order = self.order();
        if order % 2 == 1 && self.is_nondegenerate() {
            let dichotomy = self.is_isotropically_generated() || self.is_anisotropic();
            if dichotomy != reductive {
                return Err(Error::Internal(format!(
                    "odd metric group: reductive = {reductive} but generated-or-anisotropic = {dichotomy}"
                )));
            }
        }
        Ok(reductive)
    }

    pub fn decomposition_type(&self) -> Result<DecompositionType> {
        if !self.radical_subgroup()?.is_trivial() {
            return Err(Error::NotReductive);
        }
        let (corad, _) = self.restrict(&self.coradical_subgroup())?;
        let whole = self.degeneracy_class();
        let part = corad.degeneracy_class();
        match (&whole, &part) {
            (_, Degeneracy::Nondegenerate) => Ok(DecompositionType::I),
            (Degeneracy::SlightlyDegenerate { .. }, Degeneracy::SlightlyDegenerate { .. }) => Ok(DecompositionType::II),
            (Degeneracy::Nondegenerate, Degeneracy::SlightlyDegenerate { .. }) => Ok(DecompositionType::III),
            _ => Err(Error::Internal(format!(
                "reductive group with degeneracy {} and coradical degeneracy {}",
                whole.name(),
                part.name()
            ))),
        }
    }

    /// A complement `C` of the fermion line with `C` metric and isotropically
    /// generated, for slightly degenerate input.
    pub fn split_fermion(&self) -> Result<Option<Subgroup>> {
        let Degeneracy::SlightlyDegenerate { fermion } = self.degeneracy_class() else {
            return Err(Error::InvalidInput("form is not slightly degenerate".into()));
        };
        let half = self.order() / 2;
        for c in enumerate_subgroups(&self.group)? {
            if c.order() != half || c.contains(fermion) {
                continue;
            }
            let (cf, _) = self.restrict(&c)?;
            if cf.is_nondegenerate() && cf.is_isotropically_generated() {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    pub fn classify_anisotropic(&self) -> Result<AnisotropicLabel> {
        if !self.is_anisotropic() {
            return Err(Error::NotAnisotropic);
        }
        let order = self.order();
        let p = if order == 1 { 2 } else { prime_power_base(order).ok_or(Error::NotPrimePower(order))? };
        for (label, reference) in anisotropic_references(p)? {
            if reference.order() == order && self.are_isomorphic(&reference)?.is_some() {
                return Ok(label);
            }
        }
        Err(Error::Internal(format!("anisotropic group of order {order} matches no table row")))
    }

    pub fn report(&self) -> Result<ReductiveReport> {
        let radical = self.radical_subgroup()?;
        let reductive = self.is_reductive()?;
        let case_2group = if reductive && self.order().is_power_of_two() {
            self.classify_reductive_2group().ok()
        } else {
            None
        };
        let decomposition_type = if reductive { self.decomposition_type().ok() } else { None };
        Ok(ReductiveReport {
            reductive,
            degeneracy: self.degeneracy_class(),
            radical,
            coradical: self.coradical_subgroup(),
            mantle: self.mantle()?,
            case_2group,
            decomposition_type,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi() -> PreMetricGroup {
        PreMetricGroup::cyclic(2, QZ::frac(1, 4)).unwrap()
    }
    fn fermion() -> PreMetricGroup {
        PreMetricGroup::cyclic(2, QZ::frac(1, 2)).unwrap()
    }

    #[test]
    fn reductive_examples() {
        for p in [3, 5] {
            let s = PreMetricGroup::hyper(p).unwrap().orthogonal_sum(&PreMetricGroup::q_odd(p, 1, 1).unwrap()).unwrap();
            assert!(s.is_isotropically_generated_criterion().unwrap());
            assert!(s.is_reductive().unwrap());
        }
        assert!(!PreMetricGroup::q_odd(3, 2, 1).unwrap().is_reductive().unwrap());
        let s = PreMetricGroup::hyper(2).unwrap().orthogonal_sum(&qi()).unwrap();
        assert!(s.is_reductive().unwrap());
        assert_eq!(s.classify_reductive_2group().unwrap().number(), 3);
    }

    #[test]
    fn trichotomy_examples() {
        assert_eq!(PreMetricGroup::hyper(4).unwrap().classify_reductive_2group().unwrap().number(), 1);
        let row7 = PreMetricGroup::f_form(1).unwrap().orthogonal_sum(&qi()).unwrap();
        assert_eq!(row7.classify_reductive_2group().unwrap().number(), 2);
        let s = PreMetricGroup::hyper(2).unwrap().orthogonal_sum(&qi()).unwrap();
        let ReductiveCase::Split(w) = s.classify_reductive_2group().unwrap() else { panic!() };
        assert_eq!(w.metric_part.order(), 4);
        assert_eq!(w.anisotropic_part.order(), 2);
        // the anisotropic summand is the orthogonal complement of the coradical
        assert_eq!(w.anisotropic_part, s.orthogonal(&s.coradical_subgroup()));
        assert!(matches!(PreMetricGroup::q_odd(3, 1, 1).unwrap().classify_reductive_2group(), Err(Error::NotTwoGroup(3))));
        assert!(matches!(
            PreMetricGroup::cyclic(2, QZ::ZERO).unwrap().classify_reductive_2group(),
            Err(Error::NotReductive)
        ));
    }

    #[test]
    fn trichotomy_gaps() {
        // (Z/2, q = 1/2) + hyper(2) is isotropically generated and also splits
        let fermion_line = PreMetricGroup::cyclic(2, QZ::frac(1, 2)).unwrap();
        let g = fermion_line.orthogonal_sum(&PreMetricGroup::hyper(2).unwrap()).unwrap();
        let (c1, c2, c3) = g.case_conditions().unwrap();
        assert!(c1 && !c2 && c3.is_some());
        assert_eq!(g.classify_reductive_2group().unwrap().number(), 1);
        // (Z/4, q = 1/8) + hyper(4) is reductive and fits none of the cases
        let g = PreMetricGroup::cyclic(4, QZ::frac(1, 8)).unwrap().orthogonal_sum(&PreMetricGroup::hyper(4).unwrap()).unwrap();
        assert!(g.is_reductive().unwrap());
        assert_eq!(g.coradical_subgroup().order(), 32);
        assert!(matches!(g.classify_reductive_2group(), Err(Error::NoReductiveCase(_))));
    }

    #[test]
    fn anisotropic_labels() {
        let s = PreMetricGroup::q_odd(5, 1, 1).unwrap().orthogonal_sum(&PreMetricGroup::q_odd(5, 1, 2).unwrap()).unwrap();
        let l = s.classify_anisotropic().unwrap();
        assert_eq!((l.table, l.row.as_str()), (AnisotropicTable::Table1, "2"));
        let l = PreMetricGroup::f_form(1).unwrap().classify_anisotropic().unwrap();
        assert_eq!((l.table, l.row.as_str()), (AnisotropicTable::Table2, "6"));
        let l = fermion().classify_anisotropic().unwrap();
        assert_eq!((l.table, l.row.as_str()), (AnisotropicTable::Table2, "8*"));
        assert!(matches!(PreMetricGroup::hyper(2).unwrap().classify_anisotropic(), Err(Error::NotAnisotropic)));
    }

    #[test]
    fn reference_tables_are_pairwise_distinct_and_anisotropic() {
        for p in [2, 3, 5, 7] {
            let refs = anisotropic_references(p).unwrap();
            for (i, (li, a)) in refs.iter().enumerate() {
                assert!(a.is_anisotropic(), "{li}");
                for (lj, b) in &refs[..i] {
                    assert!(a.are_isomorphic(b).unwrap().is_none(), "{li} vs {lj}");
                }
            }
        }
        assert_eq!(anisotropic_references(2).unwrap().len(), 18);
    }

    #[test]
    fn decomposition_types() {
        assert_eq!(PreMetricGroup::hyper(2).unwrap().decomposition_type().unwrap(), DecompositionType::I);
        let s = fermion().orthogonal_sum(&PreMetricGroup::f_form(1).unwrap()).unwrap();
        assert!(s.coradical_subgroup().is_whole());
        assert_eq!(s.decomposition_type().unwrap(), DecompositionType::II);
        let t = PreMetricGroup::hyper(2).unwrap().orthogonal_sum(&qi()).unwrap().orthogonal_sum(&qi()).unwrap();
        assert_eq!(t.order(), 16);
        assert_eq!(t.decomposition_type().unwrap(), DecompositionType::III);
        assert!(matches!(PreMetricGroup::cyclic(2, QZ::ZERO).unwrap().decomposition_type(), Err(Error::NotReductive)));
    }

    #[test]
    fn fermion_splits_off() {
        let s = fermion().orthogonal_sum(&PreMetricGroup::f_form(1).unwrap()).unwrap();
        let c = s.split_fermion().unwrap().unwrap();
        assert_eq!(c.order(), 4);
    }
}
