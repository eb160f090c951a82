//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything here is exact: Smith normal form with tracked unimodular
//! transforms, quotients of `Z^n` (with per-coordinate moduli) by a relation
//! lattice, and membership in such a lattice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a `rows x cols` matrix from row vectors; `cols` is needed when
    /// there are no rows.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self * x` for a column vector `x`.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// One row per line, entries separated by single spaces.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// `u * m * v = diag(divisors)` padded with zeros to the shape of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub divisors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// The padded diagonal matrix.
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.u.rows(), self.v.cols());
        for (i, x) in self.divisors.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

/// Working state of the elimination. Row operations are mirrored on `u`,
/// column operations on `v`, when those are tracked.
struct Reducer {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

impl Reducer {
    fn new(m: &IntMatrix, track: bool) -> Self {
        Reducer {
            a: m.to_rows(),
            u: track.then(|| identity_rows(m.rows())),
            v: track.then(|| identity_rows(m.cols())),
            rows: m.rows(),
            cols: m.cols(),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(v) = &mut self.v {
                for row in v.iter_mut() {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(u) = &mut self.u {
            go(u, i, j, q);
        }
    }

    /// col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        fn go(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
            for row in m.iter_mut() {
                if !row[j].is_zero() {
                    let d = q * &row[j];
                    row[i] += d;
                }
            }
        }
        go(&mut self.a, i, j, q);
        if let Some(v) = &mut self.v {
            go(v, i, j, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }

    /// Position of the smallest nonzero |entry| among `cells`.
    fn min_abs(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), &BigInt)> = None;
        for (i, j) in cells {
            let x = &self.a[i][j];
            if x.is_zero() {
                continue;
            }
            if best
                .as_ref()
                .is_none_or(|(_, b)| x.magnitude() < b.magnitude())
            {
                best = Some(((i, j), x));
            }
        }
        best.map(|(p, _)| p)
    }

    fn reduce(&mut self) -> Vec<BigInt> {
        let (rows, cols) = (self.rows, self.cols);
        let mut divisors = Vec::new();
        for t in 0..rows.min(cols) {
            let cells = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
            let Some((pi, pj)) = self.min_abs(cells) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if !self.a[i][t].is_zero() {
                        let q = -(&self.a[i][t] / &self.a[t][t]);
                        self.add_row(i, t, &q);
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !self.a[t][j].is_zero() {
                        let q = -(&self.a[t][j] / &self.a[t][t]);
                        self.add_col(j, t, &q);
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if dirty {
                    // a remainder is now smaller than the pivot
                    let cells = (t..rows)
                        .map(|i| (i, t))
                        .chain((t + 1..cols).map(|j| (t, j)));
                    let (pi, pj) = self.min_abs(cells).expect("pivot stays nonzero");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                let p = self.a[t][t].clone();
                let offender = (t + 1..rows)
                    .find(|&i| self.a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&p)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            divisors.push(self.a[t][t].clone());
        }
        divisors
    }
}

fn rows_to_matrix(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
    let n = rows.len();
    let mut m = IntMatrix::zeros(n, cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    m
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut r = Reducer::new(m, true);
    let divisors = r.reduce();
    SmithForm {
        divisors,
        u: rows_to_matrix(r.u.take().expect("tracked"), m.rows()),
        v: rows_to_matrix(r.v.take().expect("tracked"), m.cols()),
    }
}

/// Invariant factors only (no transforms).
pub fn smith_divisors(m: &IntMatrix) -> Vec<BigInt> {
    Reducer::new(m, false).reduce()
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_divisors(m).len()
}

/// Row-style Hermite normal form: echelon form with positive pivots and
/// entries above each pivot reduced into `0..pivot`. Zero rows go last.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        loop {
            let pivot = (pr..rows)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].magnitude().cmp(a[j][col].magnitude()));
            let Some(pi) = pivot else { break };
            a.swap(pr, pi);
            let mut clean = true;
            for i in pr + 1..rows {
                if !a[i][col].is_zero() {
                    let q = &a[i][col] / &a[pr][col];
                    let src = a[pr].clone();
                    for (x, y) in a[i].iter_mut().zip(&src) {
                        *x -= &q * y;
                    }
                    clean &= a[i][col].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if a[pr][col].is_zero() {
            continue;
        }
        if a[pr][col].is_negative() {
            for x in &mut a[pr] {
                *x = -std::mem::take(x);
            }
        }
        for i in 0..pr {
            let q = a[i][col].div_floor(&a[pr][col]);
            if !q.is_zero() {
                let src = a[pr].clone();
                for (x, y) in a[i].iter_mut().zip(&src) {
                    *x -= &q * y;
                }
            }
        }
        pr += 1;
    }
    rows_to_matrix(a, cols)
}

/// Quotient of `Z^n` (coordinate `i` taken modulo `moduli[i]`, `0` = free)
/// by the subgroup generated by `relation_gens`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeQuotient {
    pub ambient_rank: usize,
    pub moduli: Vec<u64>,
    pub relation_gens: Vec<Vec<BigInt>>,
    /// Free rank of the quotient.
    pub rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    /// `rank x n` surjection onto `Z^rank` killing every relation and every
    /// finite-modulus coordinate, in Hermite normal form (canonical up to the
    /// choice of basis of the free quotient).
    pub free_projection: IntMatrix,
}

impl LatticeQuotient {
    /// Image of `x` in the free part.
    pub fn project(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.free_projection.apply(x)
    }

    /// Image of the basis vector `e_i`: column `i` of the projection.
    pub fn basis_image(&self, i: usize) -> Vec<BigInt> {
        self.free_projection.column(i)
    }
}

fn relation_matrix(moduli: &[u64], relation_gens: &[Vec<BigInt>]) -> IntMatrix {
    let n = moduli.len();
    let mut rows: Vec<Vec<BigInt>> = relation_gens.to_vec();
    for (i, &m) in moduli.iter().enumerate() {
        if m > 0 {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::from(m);
            rows.push(r);
        }
    }
    IntMatrix::from_rows(&rows, n)
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Structure of `Z^n / (moduli + relations)`.
pub fn quotient_structure(moduli: &[u64], relation_gens: &[Vec<BigInt>]) -> LatticeQuotient {
    let n = moduli.len();
    for g in relation_gens {
        assert_eq!(g.len(), n, "relation has wrong length");
    }
    let r = relation_matrix(moduli, relation_gens);
    let snf = smith_normal_form(&r);
    let k = snf.rank();
    // x -> xV sends the relation lattice onto the diagonal lattice, so the
    // columns of V past the rank give the free coordinates.
    let mut proj = IntMatrix::zeros(n - k, n);
    for (row, j) in (k..n).enumerate() {
        for i in 0..n {
            proj[(row, i)] = snf.v[(i, j)].clone();
        }
    }
    LatticeQuotient {
        ambient_rank: n,
        moduli: moduli.to_vec(),
        relation_gens: relation_gens.to_vec(),
        rank: n - k,
        torsion: snf.divisors.into_iter().filter(|d| !d.is_one()).collect(),
        free_projection: hermite_normal_form(&proj),
    }
}

/// Integer coefficients `c` with `sum c_i * relation_gens[i] = target`
/// modulo the coordinate moduli, if they exist.
pub fn lattice_solve(
    target: &[BigInt],
    moduli: &[u64],
    relation_gens: &[Vec<BigInt>],
) -> Option<Vec<BigInt>> {
    let n = moduli.len();
    assert_eq!(target.len(), n, "target has wrong length");
    let r = relation_matrix(moduli, relation_gens);
    let snf = smith_normal_form(&r);
    let k = snf.rank();
    // x R = t  <=>  (x U^-1) D = t V
    let s: Vec<BigInt> = (0..n)
        .map(|j| (0..n).map(|i| &target[i] * &snf.v[(i, j)]).sum())
        .collect();
    if s[k..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); r.rows()];
    for i in 0..k {
        let (q, rem) = s[i].div_rem(&snf.divisors[i]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    let x: Vec<BigInt> = (0..r.rows())
        .map(|j| (0..r.rows()).map(|i| &y[i] * &snf.u[(i, j)]).sum())
        .collect();
    Some(x[..relation_gens.len()].to_vec())
}

/// Whether `target` lies in the subgroup generated by `relation_gens`
/// together with the coordinate moduli.
pub fn lattice_member(target: &[BigInt], moduli: &[u64], relation_gens: &[Vec<BigInt>]) -> bool {
    lattice_solve(target, moduli, relation_gens).is_some()
}

/// Checks a coefficient certificate produced by [`lattice_solve`].
pub fn check_combination(
    target: &[BigInt],
    moduli: &[u64],
    relation_gens: &[Vec<BigInt>],
    coeffs: &[BigInt],
) -> bool {
    if coeffs.len() != relation_gens.len() {
        return false;
    }
    (0..moduli.len()).all(|i| {
        let sum: BigInt = coeffs
            .iter()
            .zip(relation_gens)
            .map(|(c, g)| c * &g[i])
            .sum();
        let diff = sum - &target[i];
        if moduli[i] == 0 {
            diff.is_zero()
        } else {
            diff.is_multiple_of(&BigInt::from(moduli[i]))
        }
    })
}
