//! Exact integer linear algebra: vectors, matrices, Smith normal form,
//! integer kernels and rational solving.
//!
//! All arithmetic is arbitrary precision. Matrices are dense and row-major;
//! every algorithm here is deterministic (pivot selection breaks ties by
//! position, never by hash order).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;

/// Arbitrary-precision rational. Always stored reduced with a positive
/// denominator (guaranteed by the underlying implementation).
pub type Rat = num_rational::BigRational;

/// Column vector over [`Int`].
pub type IntVec = Vec<Int>;

/// Convenience constructor for small integers.
#[inline]
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Convenience constructor for small integer vectors.
pub fn ivec(entries: &[i64]) -> IntVec {
    entries.iter().map(|&e| Int::from(e)).collect()
}

/// Exact rational from a numerator/denominator pair. Panics on zero
/// denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Dot product. Panics if lengths differ; callers pair vectors from the
/// same lattice.
pub fn vec_dot(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len(), "dot product needs equal lengths");
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn vec_add(a: &[Int], b: &[Int]) -> IntVec {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Int], b: &[Int]) -> IntVec {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Int]) -> IntVec {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(c: &Int, a: &[Int]) -> IntVec {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_is_zero(a: &[Int]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Cross product of two vectors in a rank-three lattice.
pub fn vec_cross3(a: &[Int], b: &[Int]) -> IntVec {
    assert!(a.len() == 3 && b.len() == 3, "cross product needs rank three");
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Nonnegative gcd of all entries; zero for the zero vector.
pub fn vec_content(a: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in a {
        g = g.gcd(x);
    }
    g
}

/// Divides a nonzero vector by its content, giving the primitive vector on
/// the same ray. Returns `None` for the zero vector.
pub fn vec_primitive(a: &[Int]) -> Option<IntVec> {
    let g = vec_content(a);
    if g.is_zero() {
        return None;
    }
    Some(a.iter().map(|x| x / &g).collect())
}

/// Dense row-major matrix over [`Int`].
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Int::one();
        }
        m
    }

    /// Builds a matrix from row slices. All rows must share a length.
    pub fn from_rows(rows: &[IntVec]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let converted: Vec<IntVec> = rows.iter().map(|r| ivec(r)).collect();
        Self::from_rows(&converted)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> IntVec {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a * other.get(k, j);
                    *out.get_mut(i, j) += term;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> IntVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows).map(|i| {
            let mut acc = Int::zero();
            for j in 0..self.cols {
                acc += self.get(i, j) * &v[j];
            }
            acc
        }).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += c * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, c: &Int) {
        for j in 0..self.cols {
            let term = c * self.get(source, j);
            *self.get_mut(target, j) += term;
        }
    }

    /// col[target] += c * col[source]
    fn col_axpy(&mut self, target: usize, source: usize, c: &Int) {
        for i in 0..self.rows {
            let term = c * self.get(i, source);
            *self.get_mut(i, target) += term;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            *self.get_mut(i, j) = v;
        }
    }

    /// Exact determinant of a square matrix (Bareiss fraction-free
    /// elimination; every intermediate division is exact).
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                    return Int::zero();
                };
                m.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                    *m.get_mut(i, j) = &t / &prev;
                }
                *m.get_mut(i, k) = Int::zero();
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `U * A * V = S` with `U`, `V` unimodular and `S`
/// diagonal with nonnegative entries in a divisibility chain
/// `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries of `S` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> IntVec {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Nontrivial invariant factors (diagonal entries `> 1`).
    pub fn invariant_factors(&self) -> IntVec {
        self.diagonal()
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect()
    }
}

/// Position of an entry of minimal nonzero absolute value in the trailing
/// block starting at `(t, t)`. Ties break by row then column, so the
/// algorithm is deterministic.
fn min_abs_entry(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let e = m.get(i, j);
            if e.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if e.abs() < m.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Computes the Smith normal form of `a`.
///
/// Pivots are chosen by minimal absolute value (ties by position), which
/// keeps intermediate entries small and the output deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let m = a.rows();
    let n = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&s, t) else {
            break; // trailing block is zero
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // Clear the column below the pivot with Euclidean row steps.
            let mut clean = true;
            for i in t + 1..m {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = s.get(i, t) / s.get(t, t);
                if !q.is_zero() {
                    let nq = -q;
                    s.row_axpy(i, t, &nq);
                    u.row_axpy(i, t, &nq);
                }
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            // Clear the row to the right of the pivot with column steps.
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = s.get(t, j) / s.get(t, t);
                if !q.is_zero() {
                    let nq = -q;
                    s.col_axpy(j, t, &nq);
                    v.col_axpy(j, t, &nq);
                }
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder smaller than the pivot appeared; re-pivot on it.
                let (pi, pj) = min_abs_entry(&s, t).expect("nonzero remainder exists");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // Enforce the divisibility chain: the pivot must divide every
            // entry of the remaining block.
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !s.get(i, j).mod_floor(&pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = Int::one();
                    s.row_axpy(t, i, &one);
                    u.row_axpy(t, i, &one);
                    // Row t now has entries to the right again; the loop
                    // re-clears with a pivot of strictly smaller gcd reach.
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SnfDecomposition { u, s, v }
}

/// k-th determinantal divisor: the gcd of all k×k minors (0 < k <= min
/// dimension), or zero if every k×k minor vanishes.
///
/// Independent of [`smith_normal_form`] by construction; the product
/// `d_1 * ... * d_k` of the Smith diagonal equals this gcd, which the test
/// suite uses as an oracle.
pub fn determinantal_divisor(a: &IntMatrix, k: usize) -> Int {
    assert!(k >= 1 && k <= a.rows().min(a.cols()), "minor size out of range");
    let mut g = Int::zero();
    let row_sets = subsets(a.rows(), k);
    let col_sets = subsets(a.cols(), k);
    for rs in &row_sets {
        for cs in &col_sets {
            let mut sub = IntMatrix::zero(k, k);
            for (si, &i) in rs.iter().enumerate() {
                for (sj, &j) in cs.iter().enumerate() {
                    *sub.get_mut(si, sj) = a.get(i, j).clone();
                }
            }
            g = g.gcd(&sub.determinant());
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Basis of the saturated integer kernel `{x : A x = 0}`.
///
/// The returned vectors extend to a basis of the ambient lattice, so the
/// kernel is cut out exactly (not just up to finite index).
pub fn integer_kernel(a: &IntMatrix) -> Vec<IntVec> {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let mut basis = Vec::new();
    for j in 0..a.cols() {
        let in_diag = j < diag.len();
        if !in_diag || diag[j].is_zero() {
            basis.push(snf.v.col(j));
        }
    }
    basis
}

/// Exact solution of `A x = b` over the rationals.
///
/// Returns `None` when the system is inconsistent. When solutions exist the
/// one with all free variables set to zero is returned; for systems of full
/// column rank (the callers' usual case) the solution is unique. Callers
/// that need integrality check it themselves, which keeps "no solution"
/// distinct from "solution exists but is not integral".
pub fn solve_rational(a: &IntMatrix, b: &[Int]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch in solve");
    let m = a.rows();
    let n = a.cols();
    // Augmented rational matrix [A | b].
    let mut w: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n)
                .map(|j| Rat::from_integer(a.get(i, j).clone()))
                .collect();
            row.push(Rat::from_integer(b[i].clone()));
            row
        })
        .collect();

    let mut pivot_col_of_row = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !w[i][c].is_zero()) else {
            continue;
        };
        w.swap(r, p);
        let inv = w[r][c].recip();
        for j in c..=n {
            w[r][j] = &w[r][j] * &inv;
        }
        for i in 0..m {
            if i != r && !w[i][c].is_zero() {
                let f = w[i][c].clone();
                for j in c..=n {
                    let t = &w[r][j] * &f;
                    w[i][j] = &w[i][j] - &t;
                }
            }
        }
        pivot_col_of_row.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    // Inconsistency: a zero row with nonzero right-hand side.
    for i in r..m {
        if !w[i][n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::from_integer(Int::zero()); n];
    for (row, &col) in pivot_col_of_row.iter().enumerate() {
        x[col] = w[row][n].clone();
    }
    Some(x)
}

/// Like [`solve_rational`], but also returns `None` when the solution is
/// not unique (column rank below the number of unknowns). Used where a
/// non-unique solution would be a logic error, e.g. vertex enumeration.
pub fn solve_unique_rational(a: &IntMatrix, b: &[Int]) -> Option<Vec<Rat>> {
    if rank(a) < a.cols() {
        return None;
    }
    solve_rational(a, b)
}

/// Rank over the rationals (equivalently over the integers).
pub fn rank(a: &IntMatrix) -> usize {
    let mut w: Vec<Vec<Rat>> = (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| Rat::from_integer(a.get(i, j).clone())).collect())
        .collect();
    let mut r = 0;
    for c in 0..a.cols() {
        let Some(p) = (r..w.len()).find(|&i| !w[i][c].is_zero()) else {
            continue;
        };
        w.swap(r, p);
        let inv = w[r][c].recip();
        for j in c..a.cols() {
            w[r][j] = &w[r][j] * &inv;
        }
        for i in 0..w.len() {
            if i != r && !w[i][c].is_zero() {
                let f = w[i][c].clone();
                for j in c..a.cols() {
                    let t = &w[r][j] * &f;
                    w[i][j] = &w[i][j] - &t;
                }
            }
        }
        r += 1;
        if r == w.len() {
            break;
        }
    }
    r
}

/// True iff every entry of the rational vector is an integer.
pub fn all_integral(x: &[Rat]) -> bool {
    x.iter().all(Rat::is_integer)
}

/// Converts an integral rational vector to integers. Panics if any entry
/// has a nontrivial denominator; gate with [`all_integral`] first.
pub fn to_integer_vec(x: &[Rat]) -> IntVec {
    x.iter()
        .map(|r| {
            assert!(r.is_integer(), "entry {} is not an integer", r);
            r.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_identity_is_fixed() {
        let a = IntMatrix::identity(3);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), ivec(&[1, 1, 1]));
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
    }

    #[test]
    fn snf_classic_example() {
        // Determinantal divisors 2, 4, 624 give invariant factors 2, 2, 156.
        let a = IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), ivec(&[2, 2, 156]));
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
        assert_eq!(snf.u.determinant().abs(), int(1));
        assert_eq!(snf.v.determinant().abs(), int(1));
        assert_eq!(determinantal_divisor(&a, 1), int(2));
        assert_eq!(determinantal_divisor(&a, 2), int(4));
        assert_eq!(determinantal_divisor(&a, 3), int(624));
    }

    #[test]
    fn snf_rectangular_with_zero_rows() {
        // Rank one, so the second invariant factor vanishes.
        let a = IntMatrix::from_i64_rows(&[&[0, 0], &[4, 6], &[0, 0]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), ivec(&[2, 0]));
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
    }

    #[test]
    fn kernel_of_sum_map() {
        // x + y + z = 0 has a rank-2 saturated kernel.
        let a = IntMatrix::from_i64_rows(&[&[1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(vec_dot(&ivec(&[1, 1, 1]), v).is_zero());
        }
        // Saturation: the two kernel vectors plus any completion are a basis,
        // so the 2x3 matrix of kernel rows has first determinantal gcd 1.
        let km = IntMatrix::from_rows(&k);
        assert_eq!(determinantal_divisor(&km, 2), int(1));
    }

    #[test]
    fn solve_distinguishes_inconsistent_from_fractional() {
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1], &[2, 1]]);
        // Inconsistent: rows force x=1/2*?, contradiction in third row.
        assert!(solve_rational(&a, &ivec(&[1, 1, 3])).is_none());
        // Consistent but fractional.
        let x = solve_rational(&a, &ivec(&[1, 1, 2])).expect("consistent");
        assert!(!all_integral(&x));
        assert_eq!(x[0], rat(1, 2));
        // Consistent and integral.
        let x = solve_rational(&a, &ivec(&[2, 1, 3])).expect("consistent");
        assert!(all_integral(&x));
        assert_eq!(to_integer_vec(&x), ivec(&[1, 1]));
    }

    #[test]
    fn determinant_matches_cofactor_small_cases() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.determinant(), int(-2));
        let b = IntMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(b.determinant(), int(1));
        let c = IntMatrix::from_i64_rows(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(c.determinant(), int(30));
    }

    #[test]
    fn primitive_vector() {
        assert_eq!(vec_primitive(&ivec(&[2, -4, 6])).unwrap(), ivec(&[1, -2, 3]));
        assert!(vec_primitive(&ivec(&[0, 0])).is_none());
    }
}
