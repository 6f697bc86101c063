//! Lagrangian data of twisted doubles: trivializations of `ω|_N`, the classes
//! `m_{ω,N}`, the alternating-form obstruction and `N^ω(G)`.

use serde::Serialize;

use super::cocycle::{Cochain2, Cocycle3};
use super::group::{abelian_basis, AbelianBasis, FinGroup};
use crate::error::{Error, Result};
use crate::linalg::ModSystem;
use crate::qz::{gcd, lcm, QZ};

pub const DEFAULT_SOLVE_CAP: usize = 32;

fn check_abelian_subgroup(g: &FinGroup, n: &[usize]) -> Result<Vec<usize>> {
    let mut n = n.to_vec();
    n.sort();
    n.dedup();
    if !g.is_subgroup(&n) || !g.is_abelian_subset(&n) {
        return Err(Error::InvalidInput("not an abelian subgroup".into()));
    }
    if n.len() > DEFAULT_SOLVE_CAP {
        return Err(Error::CapExceeded { order: n.len() as u64, cap: DEFAULT_SOLVE_CAP as u64 });
    }
    Ok(n)
}

fn check_normal_abelian(g: &FinGroup, n: &[usize]) -> Result<Vec<usize>> {
    let n = check_abelian_subgroup(g, n)?;
    if !g.is_normal(&n) {
        return Err(Error::InvalidInput("subgroup is not normal".into()));
    }
    Ok(n)
}

/// A normalized `μ` on `N` with `Dμ = ω|_N`, or `None` when the restriction is
/// cohomologically nontrivial.
pub fn cocycle_trivial_on(w: &Cocycle3, n: &[usize]) -> Result<Option<Cochain2>> {
    cocycle_trivial_on_ordered(w, n, None)
}

/// As [`cocycle_trivial_on`], eliminating the unknowns `μ(x, y)` in the given
/// order (a permutation of `0..(|N|-1)²`).
pub fn cocycle_trivial_on_ordered(w: &Cocycle3, n: &[usize], order: Option<&[usize]>) -> Result<Option<Cochain2>> {
    let g = w.group();
    let n = check_abelian_subgroup(g, n)?;
    let size = g.order();
    let nt: Vec<usize> = n[1..].to_vec();
    let k = nt.len();
    let mut l = 1u64;
    for &x in &nt {
        for &y in &nt {
            for &z in &nt {
                l = lcm(l, w.at(x, y, z).denominator());
            }
        }
    }
    // A solution exists iff one exists with values in (1/(L|N|))Z/Z.
    let m = l * n.len() as u64;
    let mut pos = vec![usize::MAX; size];
    for (i, &x) in nt.iter().enumerate() {
        pos[x] = i;
    }
    let var = |x: usize, y: usize| -> Option<usize> { (x != 0 && y != 0).then(|| pos[x] * k + pos[y]) };
    let mut sys = ModSystem::new(m, k * k);
    for &x in &nt {
        for &y in &nt {
            let xy = g.mul(x, y);
            for &z in &nt {
                let yz = g.mul(y, z);
                let mut coeffs = Vec::with_capacity(4);
                for (v, c) in [(var(xy, z), 1), (var(x, y), 1), (var(x, yz), -1), (var(y, z), -1)] {
                    if let Some(v) = v {
                        coeffs.push((v, c));
                    }
                }
                let rhs = w.at(x, y, z).scaled_to(m).expect("modulus is a multiple of every denominator");
                sys.push(&coeffs, rhs as i64);
            }
        }
    }
    let sol = sys.solve_with_order(order);
    let Some(x) = sol.solution else { return Ok(None) };
    if !sys.check(&x) {
        return Err(Error::Internal("modular solver returned a non-solution".into()));
    }
    let mu = Cochain2::from_fn(size, &n, |a, b| match var(a, b) {
        Some(v) => QZ::frac(x[v] as i64, m),
        None => QZ::ZERO,
    });
    for &a in &n {
        for &b in &n {
            for &c in &n {
                if mu.coboundary_at(g, a, b, c) != w.at(a, b, c) {
                    return Err(Error::Internal("trivialization does not bound the cocycle".into()));
                }
            }
        }
    }
    Ok(Some(mu))
}

/// `μ_g(y, z) = ω(gyg⁻¹, gzg⁻¹, g) + ω(g, y, z) − ω(gyg⁻¹, g, z)` on all of `G`.
/// Its coboundary `D μ_g = ω^g − ω` is asserted at every triple.
pub fn mu_g(w: &Cocycle3, h: usize) -> Result<Cochain2> {
    let g = w.group();
    let all: Vec<usize> = (0..g.order()).collect();
    let mu = Cochain2::from_fn(g.order(), &all, |y, z| {
        let (cy, cz) = (g.conj(h, y), g.conj(h, z));
        w.at(cy, cz, h) + w.at(h, y, z) - w.at(cy, h, z)
    });
    for x in 0..g.order() {
        for y in 0..g.order() {
            for z in 0..g.order() {
                let conj = w.at(g.conj(h, x), g.conj(h, y), g.conj(h, z));
                if mu.coboundary_at(g, x, y, z) != conj - w.at(x, y, z) {
                    return Err(Error::Internal(format!("conjugation identity fails at g={h}, ({x},{y},{z})")));
                }
            }
        }
    }
    Ok(mu)
}

/// The 1-cocycle `g ↦ m_{ω,N}(g) = μ_g|_N + ν − ν^g` and the trivialization `ν`.
#[derive(Clone, Debug)]
pub struct MClass {
    pub n: Vec<usize>,
    pub nu: Cochain2,
    pub m: Vec<Cochain2>,
}

fn restrict_to(c: &Cochain2, size: usize, n: &[usize]) -> Cochain2 {
    Cochain2::from_fn(size, n, |x, y| c.at(x, y))
}

pub fn m_class(w: &Cocycle3, n: &[usize]) -> Result<MClass> {
    m_class_ordered(w, n, None)
}

pub fn m_class_ordered(w: &Cocycle3, n: &[usize], order: Option<&[usize]>) -> Result<MClass> {
    let g = w.group();
    let n = check_normal_abelian(g, n)?;
    let nu = cocycle_trivial_on_ordered(w, &n, order)?.ok_or(Error::RestrictionNontrivial)?;
    let size = g.order();
    let mut m = Vec::with_capacity(size);
    for h in 0..size {
        let mu = restrict_to(&mu_g(w, h)?, size, &n);
        let mh = mu.plus(&nu).minus(&nu.conjugated(g, h));
        if !mh.is_cocycle(g) {
            return Err(Error::Internal(format!("m({h}) is not a 2-cocycle on N")));
        }
        m.push(mh);
    }
    let class = MClass { n, nu, m };
    check_one_cocycle(w, &class)?;
    Ok(class)
}

/// `∂m(g, h) = m(gh) − m(g)^h − m(h)` on `N`.
pub fn boundary_of_m(w: &Cocycle3, class: &MClass, a: usize, b: usize) -> Cochain2 {
    let g = w.group();
    class.m[g.mul(a, b)].minus(&class.m[a].conjugated(g, b)).minus(&class.m[b])
}

/// `γ_{g,h}(x) = ω(g, hxh⁻¹, h) − ω(g, h, x) − ω(ghxh⁻¹g⁻¹, g, h)` on `N`.
pub fn gamma(w: &Cocycle3, a: usize, b: usize, x: usize) -> QZ {
    let g = w.group();
    let bx = g.conj(b, x);
    w.at(a, bx, b) - w.at(a, b, x) - w.at(g.conj(a, bx), a, b)
}

/// Asserts `∂m(g, h)(x, y) = γ_{g,h}(xy) − γ_{g,h}(x) − γ_{g,h}(y)` and that the
/// alternation of `∂m(g, h)` vanishes.
fn check_one_cocycle(w: &Cocycle3, class: &MClass) -> Result<()> {
    let g = w.group();
    let n = &class.n;
    for a in 0..g.order() {
        for b in 0..g.order() {
            let dm = boundary_of_m(w, class, a, b);
            if !dm.alt().is_zero() {
                return Err(Error::Internal(format!("Alt(∂m)({a},{b}) ≠ 0")));
            }
            for &x in n {
                for &y in n {
                    let dg = gamma(w, a, b, g.mul(x, y)) - gamma(w, a, b, x) - gamma(w, a, b, y);
                    if dm.at(x, y) != dg {
                        return Err(Error::Internal(format!("∂m({a},{b}) differs from the coboundary of γ")));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Alternating bilinear forms on `N` in coordinates of a basis:
/// `B(x, y) = Σ_{i<j} X_ij (x_i y_j − x_j y_i) / gcd(d_i, d_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AltForm {
    pub basis: Vec<usize>,
    pub factors: Vec<u64>,
    /// `(i, j, X_ij)` for `i < j`, `X_ij` reduced mod `gcd(d_i, d_j)`.
    pub entries: Vec<(usize, usize, u64)>,
}

struct FormSpace {
    basis: AbelianBasis,
    pairs: Vec<(usize, usize, u64)>,
    exp: u64,
}

impl FormSpace {
    fn new(g: &FinGroup, n: &[usize]) -> Result<Self> {
        let basis = abelian_basis(g, n)?;
        let d = &basis.factors;
        let mut pairs = Vec::new();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                pairs.push((i, j, gcd(d[i], d[j])));
            }
        }
        let exp = d.iter().copied().fold(1, lcm);
        Ok(FormSpace { basis, pairs, exp })
    }

    fn eval(&self, xs: &[u64], x: usize, y: usize) -> QZ {
        let (cx, cy) = (self.basis.coords_of(x), self.basis.coords_of(y));
        let mut v = QZ::ZERO;
        for (t, &(i, j, gij)) in self.pairs.iter().enumerate() {
            let wedge = cx[i] as i64 * cy[j] as i64 - cx[j] as i64 * cy[i] as i64;
            v += QZ::frac(xs[t] as i64 * wedge, gij);
        }
        v
    }

    /// Equations `B^h − B = rhs(h)` on basis pairs for each `h` in `gens`, over `Z/exp(N)`.
    fn system(&self, g: &FinGroup, gens: &[usize], rhs: impl Fn(usize, usize, usize) -> QZ) -> Result<ModSystem> {
        let m = self.exp;
        let b = &self.basis;
        let mut sys = ModSystem::new(m, self.pairs.len());
        for &h in gens {
            for a in 0..b.basis.len() {
                for c in a + 1..b.basis.len() {
                    let (ea, ec) = (b.basis[a], b.basis[c]);
                    let (x, y) = (b.coords_of(g.conj(h, ea)), b.coords_of(g.conj(h, ec)));
                    let coeffs: Vec<(usize, i64)> = self
                        .pairs
                        .iter()
                        .enumerate()
                        .map(|(t, &(i, j, gij))| {
                            let mut wedge = x[i] as i64 * y[j] as i64 - x[j] as i64 * y[i] as i64;
                            if (i, j) == (a, c) {
                                wedge -= 1;
                            }
                            (t, (m / gij) as i64 * wedge)
                        })
                        .collect();
                    let r = rhs(h, ea, ec)
                        .scaled_to(m)
                        .ok_or_else(|| Error::Internal("alternating value outside (1/exp N)Z".into()))?;
                    sys.push(&coeffs, r as i64);
                }
            }
        }
        Ok(sys)
    }

    fn redundancy(&self) -> u128 {
        self.pairs.iter().map(|&(_, _, gij)| (self.exp / gij) as u128).product()
    }

    fn form(&self, xs: &[u64]) -> AltForm {
        AltForm {
            basis: self.basis.basis.clone(),
            factors: self.basis.factors.clone(),
            entries: self.pairs.iter().zip(xs).map(|(&(i, j, gij), &x)| (i, j, x % gij)).collect(),
        }
    }
}

/// An alternating form `B` on `N` with `B^g − B + Alt(m(g)) = 0` for all `g`,
/// or `None` when the obstruction does not vanish.
pub fn obstruction_vanishes(w: &Cocycle3, class: &MClass) -> Result<Option<AltForm>> {
    let g = w.group();
    let space = FormSpace::new(g, &class.n)?;
    let gens = g.generating_set();
    let alts: Vec<Cochain2> = class.m.iter().map(|c| c.alt()).collect();
    let sys = space.system(g, &gens, |h, x, y| -alts[h].at(x, y))?;
    let Some(xs) = sys.solve().solution else { return Ok(None) };
    for h in 0..g.order() {
        for &x in &class.n {
            for &y in &class.n {
                let lhs = space.eval(&xs, g.conj(h, x), g.conj(h, y)) - space.eval(&xs, x, y);
                if lhs + alts[h].at(x, y) != QZ::ZERO {
                    return Err(Error::Internal(format!("obstruction witness fails at g={h}")));
                }
            }
        }
    }
    Ok(Some(space.form(&xs)))
}

/// Number of `G`-invariant alternating bilinear forms on the normal abelian `N`.
pub fn invariant_alt_forms(g: &FinGroup, n: &[usize]) -> Result<u128> {
    let n = check_normal_abelian(g, n)?;
    let space = FormSpace::new(g, &n)?;
    let sys = space.system(g, &g.generating_set(), |_, _, _| QZ::ZERO)?;
    let kernel = sys.solve().kernel_size().ok_or_else(|| Error::Internal("kernel size overflow".into()))?;
    let red = space.redundancy();
    if kernel % red != 0 {
        return Err(Error::Internal("kernel size not divisible by coordinate redundancy".into()));
    }
    Ok(kernel / red)
}

/// Brute-force count of invariant alternating forms, enumerating all coordinates.
pub fn invariant_alt_forms_brute(g: &FinGroup, n: &[usize]) -> Result<u128> {
    let n = check_normal_abelian(g, n)?;
    let space = FormSpace::new(g, &n)?;
    let total: u64 = space.pairs.iter().map(|p| p.2).product();
    let mut count = 0u128;
    for mut code in 0..total {
        let xs: Vec<u64> = space
            .pairs
            .iter()
            .map(|&(_, _, gij)| {
                let v = code % gij;
                code /= gij;
                v
            })
            .collect();
        let invariant = (0..g.order()).all(|h| {
            n.iter().all(|&x| n.iter().all(|&y| space.eval(&xs, g.conj(h, x), g.conj(h, y)) == space.eval(&xs, x, y)))
        });
        count += u128::from(invariant);
    }
    Ok(count)
}

/// `ω ∈ Ω(G; N)`: the restriction to `N` is trivial and the obstruction vanishes.
pub fn omega_in_omega(w: &Cocycle3, n: &[usize]) -> Result<bool> {
    match m_class(w, n) {
        Ok(class) => Ok(obstruction_vanishes(w, &class)?.is_some()),
        Err(Error::RestrictionNontrivial) => Ok(false),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub subgroup: Vec<usize>,
    pub obstruction_ok: bool,
    pub torsor_size: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub entries: Vec<CensusEntry>,
    pub total: u128,
}

/// Lagrangian subcategories of the twisted double, grouped by the normal abelian
/// subgroup they are supported on.
pub fn lagrangian_census(w: &Cocycle3) -> Result<Census> {
    let g = w.group();
    let mut entries = Vec::new();
    for n in g.normal_abelian_subgroups() {
        let ok = omega_in_omega(w, &n)?;
        let torsor_size = if ok { invariant_alt_forms(g, &n)? } else { 0 };
        entries.push(CensusEntry { subgroup: n, obstruction_ok: ok, torsor_size });
    }
    let total = entries.iter().map(|e| e.torsor_size).sum();
    Ok(Census { entries, total })
}

/// `N^ω(G)`: generated by the normal abelian `N` with `ω ∈ Ω(G; N)`.
pub fn n_omega(w: &Cocycle3) -> Result<Vec<usize>> {
    let g = w.group();
    let mut gens = Vec::new();
    for n in g.normal_abelian_subgroups() {
        if omega_in_omega(w, &n)? {
            gens.extend(n);
        }
    }
    gens.sort();
    gens.dedup();
    Ok(g.generated(&gens))
}

#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub n_omega: Vec<usize>,
    pub radical_group: FinGroup,
    pub projection: Vec<usize>,
    pub mantle_group: FinGroup,
    pub mantle_cocycle: Cocycle3,
    pub reductive: bool,
}

pub fn radical_and_mantle(w: &Cocycle3) -> Result<RadicalReport> {
    let g = w.group();
    let n = n_omega(w)?;
    if !g.is_normal(&n) {
        return Err(Error::Internal("N^ω(G) is not normal".into()));
    }
    let (radical_group, projection) = g.quotient(&n)?;
    let mantle_cocycle = w.restrict(&n)?;
    let mantle_group = mantle_cocycle.group().clone();
    if !mantle_group.is_nilpotent() {
        return Err(Error::Internal("N^ω(G) is not nilpotent".into()));
    }
    Ok(RadicalReport { reductive: n.len() == g.order(), n_omega: n, radical_group, projection, mantle_group, mantle_cocycle })
}
