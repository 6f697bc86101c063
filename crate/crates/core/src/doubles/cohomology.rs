//! Cohomology of a cyclic group `Z/m` with coefficients in a finite module or in `k^×`.

use serde::{Deserialize, Serialize};

use crate::abelian::{generated_subgroup, subquotient, FinAbGroup, Subgroup};
use crate::error::{Error, Result};

/// Coefficients: a finite abelian group with the generator of `Z/m` acting by a
/// matrix whose column `j` holds the image of the `j`-th standard generator, or
/// the divisible module `k^×` with trivial action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CyclicModule {
    Finite { group: FinAbGroup, action: Vec<Vec<i64>> },
    UnitCircle,
}

impl CyclicModule {
    pub fn trivial_action(group: FinAbGroup) -> Self {
        let k = group.rank();
        let action = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        CyclicModule::Finite { group, action }
    }

    /// `x ↦ −x`.
    pub fn inversion(group: FinAbGroup) -> Self {
        let k = group.rank();
        let action = (0..k).map(|i| (0..k).map(|j| -i64::from(i == j)).collect()).collect();
        CyclicModule::Finite { group, action }
    }
}

/// The automorphism as a table on element indices, after validating it.
fn action_table(m: u64, group: &FinAbGroup, action: &[Vec<i64>]) -> Result<Vec<usize>> {
    let k = group.rank();
    if action.len() != k || action.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidAction(format!("expected a {k}×{k} matrix")));
    }
    let d = group.invariant_factors();
    let column = |j: usize| -> Vec<i64> { (0..k).map(|i| action[i][j]).collect() };
    for j in 0..k {
        let scaled: Vec<i64> = column(j).iter().map(|&c| c * d[j] as i64).collect();
        if group.index_of(&scaled)? != 0 {
            return Err(Error::InvalidAction(format!("image of generator {j} has order not dividing {}", d[j])));
        }
    }
    let n = group.size();
    let mut table = Vec::with_capacity(n);
    for x in 0..n {
        let c = group.element(x);
        let img: Vec<i64> = (0..k).map(|i| (0..k).map(|j| action[i][j] * c[j] as i64).sum()).collect();
        table.push(group.index_of(&img)?);
    }
    let mut hit = vec![false; n];
    for &y in &table {
        if std::mem::replace(&mut hit[y], true) {
            return Err(Error::InvalidAction("action is not bijective".into()));
        }
    }
    let mut power: Vec<usize> = (0..n).collect();
    for _ in 0..m {
        power = power.iter().map(|&x| table[x]).collect();
    }
    if power.iter().enumerate().any(|(x, &y)| x != y) {
        return Err(Error::InvalidAction(format!("action does not have order dividing {m}")));
    }
    Ok(table)
}

/// `H^degree(Z/m, M)` for `degree ≥ 1`: `M^G / N M` in even degrees and
/// `ker N / (σ − 1) M` in odd degrees. For `k^×`, odd degrees give `Z/m` and
/// even degrees vanish.
pub fn cyclic_cohomology(m: u64, module: &CyclicModule, degree: u32) -> Result<FinAbGroup> {
    if m == 0 {
        return Err(Error::InvalidInput("cyclic group order must be positive".into()));
    }
    if degree == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let (group, action) = match module {
        CyclicModule::UnitCircle => {
            return if degree % 2 == 1 { FinAbGroup::new(vec![m]) } else { Ok(FinAbGroup::trivial()) };
        }
        CyclicModule::Finite { group, action } => (group, action),
    };
    let sigma = action_table(m, group, action)?;
    let n = group.size();
    let norm: Vec<usize> = (0..n)
        .map(|x| {
            let mut acc = 0;
            let mut y = x;
            for _ in 0..m {
                acc = group.add(acc, y);
                y = sigma[y];
            }
            acc
        })
        .collect();
    let (top, bottom): (Subgroup, Subgroup) = if degree.is_multiple_of(2) {
        let fixed: Vec<usize> = (0..n).filter(|&x| sigma[x] == x).collect();
        (Subgroup::from_elements(group, &fixed)?, generated_subgroup(group, &norm)?)
    } else {
        let kernel: Vec<usize> = (0..n).filter(|&x| norm[x] == 0).collect();
        let diff: Vec<usize> = (0..n).map(|x| group.sub(sigma[x], x)).collect();
        (Subgroup::from_elements(group, &kernel)?, generated_subgroup(group, &diff)?)
    };
    if !bottom.is_subgroup_of(&top) {
        return Err(Error::Internal("coboundaries are not cocycles".into()));
    }
    Ok(subquotient(group, top.generators(), &bottom)?.0)
}
