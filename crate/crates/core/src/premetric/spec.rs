//! Declarative description of a pre-metric group, as read from files.

use serde::{Deserialize, Serialize};

use super::PreMetricGroup;
use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use crate::qz::QZ;

/// A constructor argument: an integer, a fraction or a list of integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Arg {
    Int(i64),
    List(Vec<u64>),
    Frac(QZ),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormSpec {
    Raw {
        group: FinAbGroup,
        q_gens: Vec<QZ>,
        #[serde(default)]
        b_pairs: Vec<Vec<QZ>>,
    },
    Named {
        named: String,
        #[serde(default)]
        args: Vec<Arg>,
    },
    Sum {
        sum: Vec<FormSpec>,
    },
}

impl Arg {
    fn int(&self, what: &str) -> Result<i64> {
        match self {
            Arg::Int(v) => Ok(*v),
            _ => Err(Error::InvalidInput(format!("{what} must be an integer"))),
        }
    }
}

fn args_n<'a>(name: &str, args: &'a [Arg], n: usize) -> Result<&'a [Arg]> {
    if args.len() != n {
        return Err(Error::InvalidInput(format!("{name} takes {n} arguments, got {}", args.len())));
    }
    Ok(args)
}

fn small(v: i64, what: &str) -> Result<u32> {
    u32::try_from(v).ok().filter(|&m| m <= 16).ok_or_else(|| Error::InvalidInput(format!("{what} out of range")))
}

fn positive(v: i64, what: &str) -> Result<u64> {
    u64::try_from(v).ok().filter(|&n| n >= 1).ok_or_else(|| Error::InvalidInput(format!("{what} must be positive")))
}

impl FormSpec {
    pub fn named(name: &str, args: Vec<Arg>) -> Self {
        FormSpec::Named { named: name.to_string(), args }
    }

    /// The raw generator data of an existing form.
    pub fn raw(p: &PreMetricGroup) -> Self {
        FormSpec::Raw { group: p.group().clone(), q_gens: p.q_gens().to_vec(), b_pairs: p.b_pairs().to_vec() }
    }

    pub fn build(&self) -> Result<PreMetricGroup> {
        match self {
            FormSpec::Raw { group, q_gens, b_pairs } => {
                PreMetricGroup::from_generators(group.clone(), q_gens.clone(), b_pairs.clone())
            }
            FormSpec::Sum { sum } => {
                sum.iter().try_fold(PreMetricGroup::trivial(), |acc, s| acc.orthogonal_sum(&s.build()?))
            }
            FormSpec::Named { named, args } => match named.as_str() {
                "q_odd" => {
                    let a = args_n(named, args, 3)?;
                    let p = positive(a[0].int("p")?, "p")?;
                    PreMetricGroup::q_odd(p, small(a[1].int("m")?, "m")?, a[2].int("a")?)
                }
                "q_two" => {
                    let a = args_n(named, args, 2)?;
                    PreMetricGroup::q_two(small(a[0].int("m")?, "m")?, a[1].int("a")?)
                }
                "hyper" => {
                    let a = args_n(named, args, 1)?;
                    PreMetricGroup::hyper(positive(a[0].int("n")?, "n")?)
                }
                "f_form" => {
                    let a = args_n(named, args, 1)?;
                    PreMetricGroup::f_form(small(a[0].int("m")?, "m")?)
                }
                "hyper_general" => {
                    let factors = match args.as_slice() {
                        [Arg::List(l)] => l.clone(),
                        other => other.iter().map(|a| a.int("factor").and_then(|v| positive(v, "factor"))).collect::<Result<_>>()?,
                    };
                    PreMetricGroup::hyper_general(&FinAbGroup::new(factors)?)
                }
                "cyclic" => match args_n(named, args, 2)? {
                    [n, Arg::Frac(v)] => PreMetricGroup::cyclic(positive(n.int("n")?, "n")?, *v),
                    _ => Err(Error::InvalidInput("cyclic takes an order and a fraction \"a/m\"".into())),
                },
                "trivial" => Ok(PreMetricGroup::trivial()),
                other => Err(Error::UnknownConstructor(other.to_string())),
            },
        }
    }
}
