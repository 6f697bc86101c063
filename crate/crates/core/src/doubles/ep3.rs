//! Orbits of `GL_3(F_p)` on cohomology classes of `(Z/p)³` whose twisted double
//! is non-pointed and reductive.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::cocycle::Cocycle3;
use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use crate::premetric::PreMetricGroup;
use crate::qz::QZ;

pub type Mat3 = [[i64; 3]; 3];

pub const MAX_EP3_PRIME: u64 = 7;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .expect("prime modulus has a primitive root")
}

pub fn mat_mul(a: &Mat3, b: &Mat3, p: i64) -> Mat3 {
    let mut c = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<i64>().rem_euclid(p);
        }
    }
    c
}

pub fn det(a: &Mat3, p: i64) -> i64 {
    (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
        .rem_euclid(p)
}

fn transpose(a: &Mat3) -> Mat3 {
    let mut t = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

/// `diag(ζ, 1, 1)` (ζ a primitive root), the cyclic permutation matrix and the
/// transvection `I + E_12`. Their commutators produce every elementary
/// transvection, so together they generate `GL_3(F_p)`.
pub fn gl3_generators(p: u64) -> Vec<Mat3> {
    let z = primitive_root(p) as i64;
    let mut out = vec![[[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[1, 1, 0], [0, 1, 0], [0, 0, 1]]];
    if z != 1 {
        out.insert(0, [[z, 0, 0], [0, 1, 0], [0, 0, 1]]);
    }
    out
}

/// Order of the matrix group generated by `gens`, by closure.
pub fn generated_matrix_group_order(gens: &[Mat3], p: u64) -> usize {
    let id = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut seen: HashSet<Mat3> = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let n = mat_mul(&m, g, p as i64);
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len()
}

/// The form `q_S(x) = xᵗ S x / p` on `(Z/p)³`.
pub fn sym_form(p: u64, s: &Mat3) -> Result<PreMetricGroup> {
    let q_gen = (0..3).map(|i| QZ::frac(s[i][i], p)).collect();
    let b_pairs = (1..3).map(|i| (0..i).map(|j| QZ::frac(2 * s[i][j], p)).collect()).collect();
    PreMetricGroup::from_generators(FinAbGroup::new(vec![p, p, p])?, q_gen, b_pairs)
}

/// The four matrices `A_0, …, A_3`, with `ζ` the least quadratic non-residue.
pub fn congruence_representatives(p: u64) -> [Mat3; 4] {
    let nonres = (2..p as i64).find(|&z| (1..p as i64).all(|x| (x * x - z).rem_euclid(p as i64) != 0)).unwrap_or(0);
    [
        [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
        [[nonres, 0, 0], [0, 0, 1], [0, 1, 0]],
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OrbitRep {
    /// `(λ·det, S)` for odd `p`.
    Odd { lambda: i64, sym: Mat3 },
    /// Support of `ω` on `E_8`, as nonzero vectors of `F_2³` encoded in bits.
    Two { support: Vec<u8> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub p: u64,
    pub count: usize,
    pub representatives: Vec<OrbitRep>,
    pub orbit_sizes: Vec<usize>,
}

/// Number of `GL_3(F_p)`-orbits of classes `ω ∈ H³((Z/p)³)` with non-pointed,
/// reductive twisted double.
pub fn ep3_orbit_count(p: u64) -> Result<usize> {
    Ok(ep3_orbits(p)?.count)
}

pub fn ep3_orbits(p: u64) -> Result<OrbitReport> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if p > MAX_EP3_PRIME {
        return Err(Error::CapExceeded { order: p, cap: MAX_EP3_PRIME });
    }
    if p == 2 {
        two_orbits()
    } else {
        odd_orbits(p)
    }
}

const SYM_SLOTS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

fn encode_sym(s: &Mat3, p: i64) -> usize {
    SYM_SLOTS.iter().rev().fold(0usize, |acc, &(i, j)| acc * p as usize + s[i][j].rem_euclid(p) as usize)
}

fn decode_sym(mut code: usize, p: i64) -> Mat3 {
    let mut s = [[0; 3]; 3];
    for &(i, j) in &SYM_SLOTS {
        let v = (code % p as usize) as i64;
        code /= p as usize;
        s[i][j] = v;
        s[j][i] = v;
    }
    s
}

fn act(a: &Mat3, lambda: i64, s: &Mat3, p: i64) -> (i64, Mat3) {
    ((det(a, p) * lambda).rem_euclid(p), mat_mul(&mat_mul(&transpose(a), s, p), a, p))
}

/// Isotropic generation of `q_S` for every symmetric `S`, indexed by code.
fn sym_filter(p: u64) -> Result<Vec<bool>> {
    let total = (p as usize).pow(6);
    (0..total).map(|c| Ok(sym_form(p, &decode_sym(c, p as i64))?.is_isotropically_generated())).collect()
}

fn odd_orbits(p: u64) -> Result<OrbitReport> {
    let pi = p as i64;
    let gens = gl3_generators(p);
    let nsym = (p as usize).pow(6);
    let keep = sym_filter(p)?;
    let index = |lambda: i64, s: &Mat3| (lambda as usize - 1) * nsym + encode_sym(s, pi);
    let mut seen = vec![false; (p as usize - 1) * nsym];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for lambda in 1..pi {
        for code in 0..nsym {
            if !keep[code] || seen[index(lambda, &decode_sym(code, pi))] {
                continue;
            }
            let s0 = decode_sym(code, pi);
            seen[index(lambda, &s0)] = true;
            let mut queue = VecDeque::from([(lambda, s0)]);
            let mut size = 0;
            while let Some((l, s)) = queue.pop_front() {
                size += 1;
                for a in &gens {
                    let (l2, s2) = act(a, l, &s, pi);
                    let i = index(l2, &s2);
                    if !seen[i] {
                        if !keep[encode_sym(&s2, pi)] {
                            return Err(Error::Internal("isotropic generation is not congruence invariant".into()));
                        }
                        seen[i] = true;
                        queue.push_back((l2, s2));
                    }
                }
            }
            reps.push(OrbitRep::Odd { lambda, sym: s0 });
            sizes.push(size);
        }
    }
    Ok(OrbitReport { p, count: reps.len(), representatives: reps, orbit_sizes: sizes })
}

/// Points of `F_2³ ∖ 0` as bit masks `1..=7`; `A` acts on columns.
fn apply_f2(a: &Mat3, v: u8) -> u8 {
    let mut out = 0u8;
    for i in 0..3 {
        let bit = (0..3).map(|j| a[i][j] * i64::from((v >> j) & 1)).sum::<i64>() & 1;
        out |= (bit as u8) << i;
    }
    out
}

fn span_f2(points: impl Iterator<Item = u8>) -> usize {
    let mut span: HashSet<u8> = HashSet::from([0]);
    for v in points {
        let next: Vec<u8> = span.iter().map(|&x| x ^ v).collect();
        span.extend(next);
    }
    span.len()
}

fn support_points(mask: u8) -> impl Iterator<Item = u8> {
    (1..=7u8).filter(move |&v| mask & (1 << (v - 1)) != 0)
}

/// A support is kept when `ω` is non-pointed (odd weight) and the order-2
/// subgroups outside it generate `E_8`.
pub fn support_is_reductive_nonpointed(mask: u8) -> bool {
    let weight = mask.count_ones();
    weight % 2 == 1 && span_f2(support_points(!mask & 0x7f)) == 8
}

fn two_orbits() -> Result<OrbitReport> {
    let gens = gl3_generators(2);
    let act_mask = |a: &Mat3, mask: u8| support_points(mask).fold(0u8, |acc, v| acc | 1 << (apply_f2(a, v) - 1));
    let mut seen = [false; 128];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for mask in 0u8..128 {
        if seen[mask as usize] || !support_is_reductive_nonpointed(mask) {
            continue;
        }
        seen[mask as usize] = true;
        let mut queue = VecDeque::from([mask]);
        let mut size = 0;
        while let Some(m) = queue.pop_front() {
            size += 1;
            for a in &gens {
                let n = act_mask(a, m);
                if !seen[n as usize] {
                    if !support_is_reductive_nonpointed(n) {
                        return Err(Error::Internal("support filter is not GL_3 invariant".into()));
                    }
                    seen[n as usize] = true;
                    queue.push_back(n);
                }
            }
        }
        reps.push(OrbitRep::Two { support: support_points(mask).collect() });
        sizes.push(size);
    }
    Ok(OrbitReport { p: 2, count: reps.len(), representatives: reps, orbit_sizes: sizes })
}

/// Support of a 3-cocycle on `E_8`: the elements `g ≠ 0` with `ω(g, g, g) ≠ 0`,
/// i.e. the order-2 subgroups on which `ω` restricts nontrivially.
pub fn support_and_weight(w: &Cocycle3) -> Result<(Vec<usize>, usize)> {
    let g = w.group();
    let is_e8 = g.order() == 8 && g.is_abelian() && (1..8).all(|x| g.elem_order(x) == 2);
    if !is_e8 {
        return Err(Error::InvalidInput("support is defined for cocycles on (Z/2)³".into()));
    }
    let support: Vec<usize> = (1..8).filter(|&x| !w.at(x, x, x).is_zero()).collect();
    let weight = support.len();
    Ok((support, weight))
}
