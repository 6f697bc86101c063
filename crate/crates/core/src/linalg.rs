//! Integer Smith normal form and linear systems over `Z/M`.

/// Extended gcd on integers: returns `(g, s, t)` with `s·a + t·b = g ≥ 0`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// rows (a, b) <- (p·a + q·b, r·a + s·b)
    fn combine_rows(&mut self, a: usize, b: usize, p: i128, q: i128, r: i128, s: i128) {
        for j in 0..self.cols {
            let x = self[(a, j)];
            let y = self[(b, j)];
            self[(a, j)] = p * x + q * y;
            self[(b, j)] = r * x + s * y;
        }
    }

    /// columns (a, b) <- (p·a + q·b, r·a + s·b)
    fn combine_cols(&mut self, a: usize, b: usize, p: i128, q: i128, r: i128, s: i128) {
        for i in 0..self.rows {
            let x = self[(i, a)];
            let y = self[(i, b)];
            self[(i, a)] = p * x + q * y;
            self[(i, b)] = r * x + s * y;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form `U·A·V = D` with `d_1 | d_2 | … | d_rank`, all `d_i > 0`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let (r, c) = (a.rows, a.cols);
    let mut m = a.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut diag = Vec::new();

    // Row op E applied as m <- E m, u <- E u, u_inv <- u_inv E^{-1}.
    // For E = [[p, q], [rr, s]] with det 1, E^{-1} = [[s, -q], [-rr, p]];
    // right-multiplying u_inv by E^{-1} acts on its columns (a, b).
    let row_op = |m: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, a: usize, b: usize, p: i128, q: i128, rr: i128, s: i128| {
        m.combine_rows(a, b, p, q, rr, s);
        u.combine_rows(a, b, p, q, rr, s);
        u_inv.combine_cols(a, b, s, -rr, -q, p);
    };

    for k in 0..r.min(c) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..r {
            for j in k..c {
                let x = m[(i, j)].abs();
                if x != 0 && best.is_none_or(|(bi, bj)| x < m[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        if pi != k {
            m.swap_rows(pi, k);
            u.swap_rows(pi, k);
            u_inv.swap_cols(pi, k);
        }
        if pj != k {
            m.swap_cols(pj, k);
            v.swap_cols(pj, k);
        }
        loop {
            let mut changed = false;
            for i in k + 1..r {
                let b = m[(i, k)];
                if b == 0 {
                    continue;
                }
                let a0 = m[(k, k)];
                if b % a0 == 0 {
                    let f = b / a0;
                    row_op(&mut m, &mut u, &mut u_inv, k, i, 1, 0, -f, 1);
                } else {
                    let (g, s, t) = ext_gcd(a0, b);
                    row_op(&mut m, &mut u, &mut u_inv, k, i, s, t, -b / g, a0 / g);
                }
                changed = true;
            }
            for j in k + 1..c {
                let b = m[(k, j)];
                if b == 0 {
                    continue;
                }
                let a0 = m[(k, k)];
                if b % a0 == 0 {
                    let f = b / a0;
                    m.combine_cols(k, j, 1, 0, -f, 1);
                    v.combine_cols(k, j, 1, 0, -f, 1);
                } else {
                    let (g, s, t) = ext_gcd(a0, b);
                    m.combine_cols(k, j, s, t, -b / g, a0 / g);
                    v.combine_cols(k, j, s, t, -b / g, a0 / g);
                }
                changed = true;
            }
            if changed {
                continue;
            }
            // divisibility: fold a row carrying a non-multiple into the pivot row
            let a0 = m[(k, k)];
            let mut bad = None;
            'scan: for i in k + 1..r {
                for j in k + 1..c {
                    if m[(i, j)] % a0 != 0 {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => row_op(&mut m, &mut u, &mut u_inv, k, i, 1, 1, 0, 1),
                None => break,
            }
        }
        if m[(k, k)] < 0 {
            for j in 0..c {
                m[(k, j)] = -m[(k, j)];
            }
            for j in 0..r {
                u[(k, j)] = -u[(k, j)];
                u_inv[(j, k)] = -u_inv[(j, k)];
            }
        }
        diag.push(m[(k, k)]);
    }
    Smith { diag, u, u_inv, v }
}

/// Generators of the integer kernel `{x ∈ Z^c : A x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<i128>> {
    let s = smith(a);
    (s.rank()..a.cols).map(|j| s.v.column(j)).collect()
}

fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (g, s, _) = ext_gcd(a as i128, m as i128);
    (g == 1).then(|| s.rem_euclid(m as i128) as u64)
}

/// A linear system `A x ≡ b (mod M)` in dense form.
#[derive(Clone, Debug)]
pub struct ModSystem {
    pub modulus: u64,
    pub ncols: usize,
    pub rows: Vec<Vec<u64>>,
    pub rhs: Vec<u64>,
}

/// Result of diagonalizing a [`ModSystem`].
#[derive(Clone, Debug)]
pub struct ModSolution {
    /// One particular solution, if the system is consistent.
    pub solution: Option<Vec<u64>>,
    /// `log`-free count of solutions of the homogeneous system, as a factor list
    /// (`gcd(d_i, M)` per pivot and `M` per free column).
    pub kernel_factors: Vec<u64>,
}

impl ModSolution {
    /// Number of solutions of the homogeneous system mod M, when it fits in `u128`.
    pub fn kernel_size(&self) -> Option<u128> {
        self.kernel_factors.iter().try_fold(1u128, |acc, &f| acc.checked_mul(f as u128))
    }
}

impl ModSystem {
    pub fn new(modulus: u64, ncols: usize) -> Self {
        assert!(modulus >= 1);
        ModSystem { modulus, ncols, rows: Vec::new(), rhs: Vec::new() }
    }

    /// Appends the equation `Σ coeffs[j]·x_j ≡ rhs (mod M)`; coefficients are reduced.
    pub fn push(&mut self, coeffs: &[(usize, i64)], rhs: i64) {
        let m = self.modulus as i128;
        let mut row = vec![0u64; self.ncols];
        for &(j, c) in coeffs {
            row[j] = ((row[j] as i128 + c as i128).rem_euclid(m)) as u64;
        }
        let r = (rhs as i128).rem_euclid(m) as u64;
        if r == 0 && row.iter().all(|&x| x == 0) {
            return;
        }
        self.rows.push(row);
        self.rhs.push(r);
    }

    /// Solves by unimodular row and column elimination. `column_order` permutes
    /// the elimination order of unknowns; different orders may produce different
    /// particular solutions but identical solvability verdicts.
    pub fn solve_with_order(&self, column_order: Option<&[usize]>) -> ModSolution {
        let m = self.modulus;
        let n = self.ncols;
        if m == 1 {
            return ModSolution { solution: Some(vec![0; n]), kernel_factors: vec![] };
        }
        let order: Vec<usize> = match column_order {
            Some(o) => {
                assert_eq!(o.len(), n);
                o.to_vec()
            }
            None => (0..n).collect(),
        };
        // a[i][k] is the coefficient of the k-th unknown in elimination order
        let mut a: Vec<Vec<u64>> = self.rows.iter().map(|r| order.iter().map(|&j| r[j]).collect()).collect();
        let mut b = self.rhs.clone();
        // v maps eliminated coordinates back: x_order = V z
        let mut v: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        let rows = a.len();

        let lin = |p: u64, x: u64, q: u64, y: u64| ((p as u128 * x as u128 + q as u128 * y as u128) % m as u128) as u64;
        let red = |x: i128| x.rem_euclid(m as i128) as u64;

        let mut pivots: Vec<u64> = Vec::new();
        let mut k = 0;
        while k < rows.min(n) {
            // pivot search: prefer a unit, otherwise the entry with smallest gcd with M
            let mut best: Option<(usize, usize, u64)> = None;
            'search: for i in k..rows {
                for j in k..n {
                    let x = a[i][j];
                    if x == 0 {
                        continue;
                    }
                    let g = crate::qz::gcd(x, m);
                    if best.is_none_or(|(_, _, bg)| g < bg) {
                        best = Some((i, j, g));
                        if g == 1 {
                            break 'search;
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            a.swap(pi, k);
            b.swap(pi, k);
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(pj, k);
                }
                for row in v.iter_mut() {
                    row.swap(pj, k);
                }
            }
            loop {
                let mut changed = false;
                for i in k + 1..rows {
                    let y = a[i][k];
                    if y == 0 {
                        continue;
                    }
                    let x = a[k][k];
                    changed = true;
                    let (p, q, r, s) = if y.is_multiple_of(x) {
                        (1i128, 0i128, -((y / x) as i128), 1i128)
                    } else {
                        let (g, s0, t0) = ext_gcd(x as i128, y as i128);
                        (s0, t0, -(y as i128) / g, (x as i128) / g)
                    };
                    let (p, q, r, s) = (red(p), red(q), red(r), red(s));
                    let (lo, hi) = a.split_at_mut(i);
                    let (rk, ri) = (&mut lo[k], &mut hi[0]);
                    for col in k..n {
                        let (xv, yv) = (rk[col], ri[col]);
                        rk[col] = lin(p, xv, q, yv);
                        ri[col] = lin(r, xv, s, yv);
                    }
                    let (xb, yb) = (b[k], b[i]);
                    b[k] = lin(p, xb, q, yb);
                    b[i] = lin(r, xb, s, yb);
                }
                for j in k + 1..n {
                    let y = a[k][j];
                    if y == 0 {
                        continue;
                    }
                    let x = a[k][k];
                    changed = true;
                    let (p, q, r, s) = if y.is_multiple_of(x) {
                        (1i128, 0i128, -((y / x) as i128), 1i128)
                    } else {
                        let (g, s0, t0) = ext_gcd(x as i128, y as i128);
                        (s0, t0, -(y as i128) / g, (x as i128) / g)
                    };
                    let (p, q, r, s) = (red(p), red(q), red(r), red(s));
                    for row in a.iter_mut().skip(k) {
                        let (xv, yv) = (row[k], row[j]);
                        row[k] = lin(p, xv, q, yv);
                        row[j] = lin(r, xv, s, yv);
                    }
                    for row in v.iter_mut() {
                        let (xv, yv) = (row[k], row[j]);
                        row[k] = lin(p, xv, q, yv);
                        row[j] = lin(r, xv, s, yv);
                    }
                }
                if !changed {
                    break;
                }
            }
            pivots.push(a[k][k]);
            k += 1;
        }
        let rank = pivots.len();

        let mut kernel_factors: Vec<u64> = pivots.iter().map(|&d| crate::qz::gcd(d, m)).filter(|&g| g > 1).collect();
        kernel_factors.extend(std::iter::repeat_n(m, n - rank));

        let consistent = b[rank..].iter().all(|&x| x == 0);
        let solution = if !consistent {
            None
        } else {
            let mut z = vec![0u64; n];
            let mut ok = true;
            for (i, &d) in pivots.iter().enumerate() {
                let g = crate::qz::gcd(d, m);
                if !b[i].is_multiple_of(g) {
                    ok = false;
                    break;
                }
                let mg = m / g;
                let inv = mod_inv(d / g % mg, mg).unwrap_or(0);
                z[i] = ((b[i] / g) as u128 * inv as u128 % mg as u128) as u64;
            }
            ok.then(|| {
                let mut x = vec![0u64; n];
                for (pos, &orig) in order.iter().enumerate() {
                    let mut acc = 0u128;
                    for (t, &zt) in z.iter().enumerate() {
                        if zt != 0 {
                            acc += v[pos][t] as u128 * zt as u128 % m as u128;
                        }
                    }
                    x[orig] = (acc % m as u128) as u64;
                }
                x
            })
        };
        ModSolution { solution, kernel_factors }
    }

    pub fn solve(&self) -> ModSolution {
        self.solve_with_order(None)
    }

    /// Checks a candidate solution against every equation.
    pub fn check(&self, x: &[u64]) -> bool {
        let m = self.modulus as u128;
        self.rows.iter().zip(&self.rhs).all(|(row, &r)| {
            let s: u128 = row.iter().zip(x).map(|(&a, &xv)| a as u128 * xv as u128 % m).sum::<u128>() % m;
            s == r as u128
        })
    }
}
