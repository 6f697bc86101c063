//! File formats for groups and 3-cocycles.

use serde::{Deserialize, Serialize};

use super::cocycle::{AbelianTerm, Cocycle3};
use super::ep3::Mat3;
use super::group::FinGroup;
use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use crate::qz::QZ;

/// A group given by a table or by one of the named families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named {
        named: String,
        #[serde(default)]
        args: Vec<u64>,
    },
    Table(FinGroup),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FinGroup> {
        match self {
            GroupSpec::Table(g) => Ok(g.clone()),
            GroupSpec::Named { named, args } => {
                let one = |what: &str| match args.as_slice() {
                    [n] if *n >= 1 => Ok(*n as usize),
                    _ => Err(Error::InvalidInput(format!("{named} takes one positive {what}"))),
                };
                match named.as_str() {
                    "cyclic" => Ok(FinGroup::cyclic(one("order")?)),
                    "dihedral" => Ok(FinGroup::dihedral(one("rotation order")?)),
                    "quaternion" => Ok(FinGroup::quaternion()),
                    "abelian" => FinGroup::from_abelian(&FinAbGroup::new(args.clone())?),
                    other => Err(Error::UnknownConstructor(other.to_string())),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum TermSpec {
    I { i: usize, p: i64 },
    II { i: usize, j: usize, p: i64 },
    III { i: usize, j: usize, k: usize, p: i64 },
}

impl From<&TermSpec> for AbelianTerm {
    fn from(t: &TermSpec) -> Self {
        match *t {
            TermSpec::I { i, p } => AbelianTerm::I { i, p },
            TermSpec::II { i, j, p } => AbelianTerm::II { i, j, p },
            TermSpec::III { i, j, k, p } => AbelianTerm::III { i, j, k, p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflateSpec {
    pub quotient_map: Vec<usize>,
    pub base: Box<CocycleSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ep3Spec {
    pub p: u64,
    pub lambda: i64,
    pub sym: Mat3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianSpec {
    pub factors: Vec<u64>,
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CocycleSpec {
    Zero {},
    ValuesDense(Vec<QZ>),
    Inflate(InflateSpec),
    Ep3(Ep3Spec),
    Abelian(AbelianSpec),
}

/// The quotient group labelled by the values of a surjective map `G → 0..q`.
fn image_group(g: &FinGroup, map: &[usize]) -> Result<FinGroup> {
    if map.len() != g.order() {
        return Err(Error::InvalidInput(format!("quotient map has {} entries for a group of order {}", map.len(), g.order())));
    }
    let q = map.iter().max().map_or(0, |&m| m + 1);
    let mut table = vec![vec![usize::MAX; q]; q];
    for a in 0..g.order() {
        for b in 0..g.order() {
            let c = map[g.mul(a, b)];
            let slot = &mut table[map[a]][map[b]];
            if *slot != usize::MAX && *slot != c {
                return Err(Error::InvalidInput("quotient map is not a homomorphism".into()));
            }
            *slot = c;
        }
    }
    if table.iter().flatten().any(|&c| c == usize::MAX) {
        return Err(Error::InvalidInput("quotient map is not onto 0..q".into()));
    }
    FinGroup::from_table(&table)
}

impl CocycleSpec {
    /// Builds the cocycle on `group`; `ep3` and `abelian` carry their own group
    /// and must agree with `group` when one is given.
    pub fn build(&self, group: Option<&FinGroup>) -> Result<Cocycle3> {
        let need = || group.ok_or_else(|| Error::InvalidInput("this cocycle form needs a group".into()));
        let own = |w: Cocycle3| match group {
            Some(g) if g != w.group() => {
                Err(Error::InvalidInput("cocycle group does not match the supplied group table".into()))
            }
            _ => Ok(w),
        };
        match self {
            CocycleSpec::Zero {} => Ok(Cocycle3::zero(need()?)),
            CocycleSpec::ValuesDense(v) => Cocycle3::new(need()?.clone(), v.clone()),
            CocycleSpec::Inflate(InflateSpec { quotient_map, base }) => {
                let g = need()?;
                let q = image_group(g, quotient_map)?;
                let base = base.build(Some(&q))?;
                Cocycle3::inflate(&base, g, quotient_map)
            }
            CocycleSpec::Ep3(Ep3Spec { p, lambda, sym }) => own(Cocycle3::ep3(*p, *lambda, sym)?),
            CocycleSpec::Abelian(AbelianSpec { factors, terms }) => {
                let terms: Vec<AbelianTerm> = terms.iter().map(AbelianTerm::from).collect();
                own(Cocycle3::abelian(&FinAbGroup::new(factors.clone())?, &terms)?)
            }
        }
    }
}

/// A twisted double: a group and a cocycle (zero when omitted).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleSpec {
    #[serde(default)]
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub cocycle: Option<CocycleSpec>,
}

impl DoubleSpec {
    pub fn build(&self) -> Result<Cocycle3> {
        let group = self.group.as_ref().map(GroupSpec::build).transpose()?;
        match (&self.cocycle, group) {
            (Some(c), g) => c.build(g.as_ref()),
            (None, Some(g)) => Ok(Cocycle3::zero(&g)),
            (None, None) => Err(Error::InvalidInput("a group or a cocycle is required".into())),
        }
    }
}
