//! Exact dense linear algebra over the prime field F_p.
//!
//! Everything downstream (Hom spaces, kernels, cohomology, lifting problems)
//! reduces to row reduction and linear solving here. Pivoting is
//! deterministic (first nonzero entry), so every basis and witness produced
//! by the library is reproducible across runs.

use serde::{Deserialize, Serialize};

/// Largest allowed modulus: p^2 must fit comfortably in 64-bit products.
pub const MAX_PRIME: u32 = 46337;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
}

impl FieldSpec {
    pub fn new(p: u32) -> Result<Self, String> {
        if !(2..=MAX_PRIME).contains(&p) {
            return Err(format!("modulus {p} out of range [2, {MAX_PRIME}]"));
        }
        if !is_prime(p) {
            return Err(format!("modulus {p} is not prime"));
        }
        Ok(FieldSpec { p })
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
fn addp(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn mulp(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
fn negp(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Modular inverse via Fermat: a^(p-2) mod p.
fn invp(a: u32, p: u32) -> u32 {
    debug_assert!(a != 0);
    let mut result = 1u64;
    let mut base = a as u64;
    let mut e = p - 2;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    result as u32
}

/// Dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub p: u32,
    entries: Vec<u32>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize, p: u32) -> Self {
        Mat { rows, cols, p, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Mat::zero(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32) -> Self {
        let mut m = Mat::zero(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, p: u32, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let entries = entries.into_iter().map(|e| e % p).collect();
        Mat { rows, cols, p, entries }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v % self.p;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| addp(a, b, p))
            .collect();
        Mat { rows: self.rows, cols: self.cols, p, entries }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| addp(a, negp(b, p), p))
            .collect();
        Mat { rows: self.rows, cols: self.cols, p, entries }
    }

    pub fn neg(&self) -> Mat {
        let p = self.p;
        let entries = self.entries.iter().map(|&a| negp(a, p)).collect();
        Mat { rows: self.rows, cols: self.cols, p, entries }
    }

    pub fn scale(&self, s: u32) -> Mat {
        let p = self.p;
        let s = s % p;
        let entries = self.entries.iter().map(|&a| mulp(a, s, p)).collect();
        Mat { rows: self.rows, cols: self.cols, p, entries }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch in mul");
        let p = self.p as u64;
        let mut out = Mat::zero(self.rows, other.cols, self.p);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let base = r * out.cols;
                for c in 0..other.cols {
                    let acc = out.entries[base + c] as u64 + a * orow[c] as u64;
                    out.entries[base + c] = (acc % p) as u32;
                }
            }
        }
        out
    }

    /// Row-vector times matrix.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (r, &vr) in v.iter().enumerate() {
            if vr == 0 {
                continue;
            }
            let row = self.row(r);
            for c in 0..self.cols {
                out[c] = (out[c] + vr as u64 * row[c] as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Stack vertically: self on top of other.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Mat { rows: self.rows + other.rows, cols: self.cols, p: self.p, entries }
    }

    /// Stack horizontally: [self | other].
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zero(self.rows, self.cols + other.cols, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

/// Result of reduced row echelon computation.
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form with first-nonzero pivoting.
pub fn rref(m: &Mat) -> Rref {
    let p = m.p;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pr = 0usize;
    for col in 0..a.cols {
        if pr >= a.rows {
            break;
        }
        let mut sel = None;
        for r in pr..a.rows {
            if a.get(r, col) != 0 {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        if sel != pr {
            for c in 0..a.cols {
                let t = a.get(sel, c);
                let u = a.get(pr, c);
                a.set(sel, c, u);
                a.set(pr, c, t);
            }
        }
        let inv = invp(a.get(pr, col), p);
        for c in 0..a.cols {
            let v = mulp(a.get(pr, c), inv, p);
            a.set(pr, c, v);
        }
        for r in 0..a.rows {
            if r == pr {
                continue;
            }
            let factor = a.get(r, col);
            if factor == 0 {
                continue;
            }
            for c in 0..a.cols {
                let v = addp(a.get(r, c), negp(mulp(factor, a.get(pr, c), p), p), p);
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        pr += 1;
    }
    let rank = pivots.len();
    Rref { mat: a, pivots, rank }
}

/// A subspace of F_p^n given by an RREF basis of row vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: Mat,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize, p: u32) -> Self {
        Subspace { ambient_dim, basis: Mat::zero(0, ambient_dim, p), pivots: Vec::new() }
    }

    /// Row space of an arbitrary generating matrix.
    pub fn from_rows(m: &Mat) -> Self {
        let r = rref(m);
        let mut basis = Mat::zero(r.rank, m.cols, m.p);
        for i in 0..r.rank {
            for c in 0..m.cols {
                basis.set(i, c, r.mat.get(i, c));
            }
        }
        Subspace { ambient_dim: m.cols, basis, pivots: r.pivots }
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    /// Reduce v modulo the subspace; result has zeros at all pivot columns.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient_dim);
        let p = self.basis.p;
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let factor = w[pc];
            if factor == 0 {
                continue;
            }
            let row = self.basis.row(i);
            for c in 0..self.ambient_dim {
                w[c] = addp(w[c], negp(mulp(factor, row[c], p), p), p);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of v in the RREF basis, if v lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&pc| v[pc]).collect();
        // verify
        let p = self.basis.p;
        let mut rec = vec![0u32; self.ambient_dim];
        for (i, &c) in coords.iter().enumerate() {
            let row = self.basis.row(i);
            for j in 0..self.ambient_dim {
                rec[j] = addp(rec[j], mulp(c, row[j], p), p);
            }
        }
        if rec == v { Some(coords) } else { None }
    }
}

/// Basis of the right kernel {v : m vᵀ = 0}, as row vectors in RREF.
pub fn kernel_basis(m: &Mat) -> Subspace {
    let r = rref(m);
    let p = m.p;
    let n = m.cols;
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; n];
        for &pc in &r.pivots {
            s[pc] = true;
        }
        s
    };
    let free_cols: Vec<usize> = (0..n).filter(|&c| !pivot_set[c]).collect();
    let mut rows = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![0u32; n];
        v[fc] = 1;
        for (i, &pc) in r.pivots.iter().enumerate() {
            v[pc] = negp(r.mat.get(i, fc), p);
        }
        rows.push(v);
    }
    let basis = Mat::from_rows(&rows, n, p);
    // the basis as constructed is already independent; normalize to RREF
    Subspace::from_rows(&basis)
}

/// Basis of the left kernel {v : v m = 0}.
pub fn left_kernel(m: &Mat) -> Subspace {
    kernel_basis(&m.transpose())
}

/// Solve coeff · x = rhs for a column vector x; free variables are set to 0.
/// Returns None when the system is inconsistent.
pub fn solve_linear(coeff: &Mat, rhs: &[u32]) -> Option<Vec<u32>> {
    assert_eq!(coeff.rows, rhs.len(), "rhs length mismatch");
    let p = coeff.p;
    let mut aug = Mat::zero(coeff.rows, coeff.cols + 1, p);
    for r in 0..coeff.rows {
        for c in 0..coeff.cols {
            aug.set(r, c, coeff.get(r, c));
        }
        aug.set(r, coeff.cols, rhs[r]);
    }
    let r = rref(&aug);
    // inconsistent iff a pivot lands in the rhs column
    if r.pivots.last() == Some(&coeff.cols) {
        return None;
    }
    let mut x = vec![0u32; coeff.cols];
    for (i, &pc) in r.pivots.iter().enumerate() {
        x[pc] = r.mat.get(i, coeff.cols);
    }
    Some(x)
}

/// Solve X · b = c for the row-convention unknown matrix X (rows(c) × rows(b)).
pub fn solve_matrix_right(b: &Mat, c: &Mat) -> Option<Mat> {
    // Xᵀ column by column: bᵀ xᵀ = cᵀ per row of c.
    assert_eq!(b.cols, c.cols);
    let bt = b.transpose();
    let mut rows = Vec::with_capacity(c.rows);
    for r in 0..c.rows {
        let x = solve_linear(&bt, c.row(r))?;
        rows.push(x);
    }
    Some(Mat::from_rows(&rows, b.rows, b.p))
}

/// ambient − rank(relations).
pub fn quotient_dim(ambient: usize, relations: &Subspace) -> usize {
    assert_eq!(relations.ambient_dim, ambient);
    ambient - relations.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rref_identity() {
        let m = Mat::identity(2, 5);
        let r = rref(&m);
        assert_eq!(r.mat, m);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_zero_matrix() {
        let m = Mat::zero(3, 4, 7);
        let r = rref(&m);
        assert!(r.mat.is_zero());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_rank_one_mod_5() {
        // [[2,4],[1,2]] over F_5 -> [[1,2],[0,0]], rank 1
        let m = Mat::from_rows(&[vec![2, 4], vec![1, 2]], 2, 5);
        let r = rref(&m);
        assert_eq!(r.mat, Mat::from_rows(&[vec![1, 2], vec![0, 0]], 2, 5));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let k = kernel_basis(&Mat::identity(3, 3));
        assert_eq!(k.rank(), 0);
    }

    #[test]
    fn kernel_of_zero_is_full() {
        let k = kernel_basis(&Mat::zero(4, 4, 2));
        assert_eq!(k.rank(), 4);
    }

    #[test]
    fn kernel_1x2_mod_5() {
        // [[1,2]] over F_5: v1 + 2 v2 = 0 -> span{(3,1)}
        let k = kernel_basis(&Mat::from_rows(&[vec![1, 2]], 2, 5));
        assert_eq!(k.rank(), 1);
        assert!(k.contains(&[3, 1]));
    }

    #[test]
    fn solve_identity_system() {
        let x = solve_linear(&Mat::identity(3, 7), &[1, 2, 3]).unwrap();
        assert_eq!(x, vec![1, 2, 3]);
    }

    #[test]
    fn solve_free_var_zeroed() {
        // [[1,1]] x = (1) over F_2: enumeration of F_2^2 gives solutions
        // (1,0) and (0,1); free-variable-zero convention picks (1,0).
        let coeff = Mat::from_rows(&[vec![1, 1]], 2, 2);
        let solutions: Vec<Vec<u32>> = (0..4)
            .map(|k| vec![k & 1, (k >> 1) & 1])
            .filter(|v| (v[0] + v[1]) % 2 == 1)
            .collect();
        assert!(solutions.contains(&vec![1, 0]));
        let x = solve_linear(&coeff, &[1]).unwrap();
        assert_eq!(x, vec![1, 0]);
    }

    #[test]
    fn solve_inconsistent() {
        let coeff = Mat::from_rows(&[vec![0, 0]], 2, 3);
        assert!(solve_linear(&coeff, &[1]).is_none());
    }

    #[test]
    fn quotient_dims() {
        let p = 5;
        assert_eq!(quotient_dim(4, &Subspace::zero(4, p)), 4);
        let full = Subspace::from_rows(&Mat::identity(4, p));
        assert_eq!(quotient_dim(4, &full), 0);
        let one = Subspace::from_rows(&Mat::from_rows(&[vec![1, 2, 3, 4]], 4, p));
        assert_eq!(quotient_dim(4, &one), 3);
    }

    #[test]
    fn fieldspec_bounds() {
        assert!(FieldSpec::new(2).is_ok());
        assert!(FieldSpec::new(46337).is_ok());
        assert!(FieldSpec::new(46349).is_err());
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
    }

    fn arb_mat(max_dim: usize) -> impl Strategy<Value = Mat> {
        (1..=max_dim, 1..=max_dim, prop::sample::select(vec![2u32, 3, 5, 13])).prop_flat_map(
            |(r, c, p)| {
                prop::collection::vec(0..p, r * c)
                    .prop_map(move |entries| Mat::from_vec(r, c, p, entries))
            },
        )
    }

    proptest! {
        #[test]
        fn rref_idempotent(m in arb_mat(6)) {
            let r1 = rref(&m);
            let r2 = rref(&r1.mat);
            prop_assert_eq!(r1.mat, r2.mat);
        }

        #[test]
        fn rank_nullity(m in arb_mat(6)) {
            let r = rref(&m);
            let k = kernel_basis(&m);
            prop_assert_eq!(r.rank + k.rank(), m.cols);
            // every kernel basis row really is killed by m
            for i in 0..k.basis.rows {
                let prod = m.mul(&Mat::from_rows(&[k.basis.row(i).to_vec()], m.cols, m.p).transpose());
                prop_assert!(prod.is_zero());
            }
        }

        #[test]
        fn solve_soundness(m in arb_mat(5), seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rhs: Vec<u32> = (0..m.rows).map(|_| rng.gen_range(0..m.p)).collect();
            match solve_linear(&m, &rhs) {
                Some(x) => {
                    let prod = m.mul(&Mat::from_rows(&[x], m.cols, m.p).transpose());
                    let expect = Mat::from_rows(&[rhs], m.rows, m.p).transpose();
                    prop_assert_eq!(prod, expect);
                }
                None => {
                    // rhs not in column space: augmenting raises the rank
                    let aug = m.hstack(&Mat::from_rows(&[rhs], m.rows, m.p).transpose());
                    prop_assert!(aug.rank() > m.rank());
                }
            }
        }
    }
}
