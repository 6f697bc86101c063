//! Finite families of pre-metric groups built as orthogonal sums of the named
//! cyclic, hyperbolic and `f` blocks.

use std::fmt;

use super::PreMetricGroup;
use crate::error::Result;
use crate::qz::QZ;

/// A summand. Cyclic blocks carry the numerator of `q(1)` over `n` (odd `n`) or
/// `2n` (`n` a power of 2), reduced to the least representative of its square class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    Cyclic { n: u64, a: u64 },
    Hyper(u64),
    F(u32),
}

impl Block {
    pub fn order(&self) -> u64 {
        match *self {
            Block::Cyclic { n, .. } => n,
            Block::Hyper(n) => n * n,
            Block::F(m) => 1 << (2 * m),
        }
    }

    pub fn build(&self) -> Result<PreMetricGroup> {
        match *self {
            Block::Cyclic { n, a } => {
                let den = if n % 2 == 0 { 2 * n } else { n };
                PreMetricGroup::cyclic(n, QZ::frac(a as i64, den))
            }
            Block::Hyper(n) => PreMetricGroup::hyper(n),
            Block::F(m) => PreMetricGroup::f_form(m),
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        match *self {
            Block::Cyclic { n, a } => crate::qz::gcd(a, n) == 1,
            _ => true,
        }
    }

    /// Cyclic blocks of order `n`, one per square class of `q(1)`.
    pub fn cyclic_classes(n: u64) -> Vec<Block> {
        let den = if n.is_multiple_of(2) { 2 * n } else { n };
        let units: Vec<u64> = (1..den).filter(|&u| crate::qz::gcd(u, den) == 1).collect();
        let mut reps: Vec<u64> =
            (0..den).map(|a| units.iter().map(|&u| (a * u * u) % den).min().unwrap_or(a)).collect();
        reps.sort();
        reps.dedup();
        reps.into_iter().map(|a| Block::Cyclic { n, a }).collect()
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Block::Cyclic { n, a } => {
                let den = if n % 2 == 0 { 2 * n } else { n };
                write!(f, "(Z/{n}, q(1)={})", QZ::frac(a as i64, den))
            }
            Block::Hyper(n) => write!(f, "hyper({n})"),
            Block::F(m) => write!(f, "f_form({m})"),
        }
    }
}

pub struct Catalog {
    pub entries: Vec<(Vec<Block>, PreMetricGroup)>,
}

fn prime_powers(p: u64, max: u64) -> impl Iterator<Item = (u32, u64)> {
    (1..).map(move |m| (m, p.pow(m))).take_while(move |&(_, n)| n <= max)
}

/// Blocks of `p`-power order at most `max`.
pub fn blocks(p: u64, max: u64, nondegenerate_only: bool) -> Vec<Block> {
    let mut out = Vec::new();
    for (m, n) in prime_powers(p, max) {
        out.extend(Block::cyclic_classes(n).into_iter().filter(|b| !nondegenerate_only || b.is_nondegenerate()));
        if n * n <= max {
            out.push(Block::Hyper(n));
            if p == 2 {
                out.push(Block::F(m));
            }
        }
    }
    out.sort();
    out
}

fn multisets(blocks: &[Block], max: u64, start: usize, cur: &mut Vec<Block>, order: u64, out: &mut Vec<Vec<Block>>) {
    out.push(cur.clone());
    for i in start..blocks.len() {
        let o = order * blocks[i].order();
        if o <= max {
            cur.push(blocks[i]);
            multisets(blocks, max, i, cur, o, out);
            cur.pop();
        }
    }
}

impl Catalog {
    /// Orthogonal sums (with repetition, including the empty sum) of the given
    /// blocks with total order at most `max`.
    pub fn sums_of(blocks: &[Block], max: u64) -> Result<Catalog> {
        let mut combos = Vec::new();
        multisets(blocks, max, 0, &mut Vec::new(), 1, &mut combos);
        let entries = combos
            .into_iter()
            .map(|c| {
                let p = c.iter().try_fold(PreMetricGroup::trivial(), |acc, b| acc.orthogonal_sum(&b.build()?))?;
                Ok((c, p))
            })
            .collect::<Result<_>>()?;
        Ok(Catalog { entries })
    }

    /// Pre-metric `p`-groups of order at most `max`.
    pub fn p_groups(p: u64, max: u64, nondegenerate_only: bool) -> Result<Catalog> {
        Self::sums_of(&blocks(p, max, nondegenerate_only), max)
    }

    /// Metric groups of order at most `max` mixing the primes in `primes`.
    pub fn metric_groups(primes: &[u64], max: u64) -> Result<Catalog> {
        let all: Vec<Block> = primes.iter().flat_map(|&p| blocks(p, max, true)).collect();
        Self::sums_of(&all, max)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PreMetricGroup> {
        self.entries.iter().map(|(_, p)| p)
    }
}

pub fn describe(blocks: &[Block]) -> String {
    if blocks.is_empty() {
        return "trivial".into();
    }
    blocks.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" + ")
}
