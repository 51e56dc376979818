//! Finite-dimensional unital associative algebras over F_p, presented by
//! structure constants, plus the catalog of small test algebras.
//!
//! Left modules are always represented as right modules over the opposite
//! algebra; the [`Side`] tag records which world an object lives in.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{FieldSpec, Mat};

/// Which module category an object belongs to: right modules over A, or
/// right modules over A^op (i.e. left A-modules).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("unit law fails on basis element {0}")]
    BadUnit(usize),
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("unknown catalog key: {0}")]
    UnknownKey(String),
    #[error("bad catalog parameters: {0}")]
    BadParams(String),
}

/// A unital associative F_p-algebra given by structure constants:
/// e_i · e_j = Σ_k mult[i][j][k] e_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    pub name: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub mult: Vec<Vec<Vec<u32>>>,
    pub unit: Vec<u32>,
    pub declared_gorenstein: Option<u32>,
}

/// Wire format for algebra files.
#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    name: String,
    p: u32,
    dim: usize,
    unit: Vec<u32>,
    mult: Vec<Vec<Vec<u32>>>,
    gorenstein_n: Option<u32>,
}

impl Algebra {
    pub fn new(
        name: &str,
        field: FieldSpec,
        mult: Vec<Vec<Vec<u32>>>,
        unit: Vec<u32>,
        declared_gorenstein: Option<u32>,
    ) -> Result<Arc<Algebra>, AlgebraError> {
        let dim = unit.len();
        let a = Algebra {
            name: name.to_string(),
            field,
            dim,
            mult,
            unit,
            declared_gorenstein,
        };
        a.validate()?;
        Ok(Arc::new(a))
    }

    pub fn p(&self) -> u32 {
        self.field.p
    }

    /// Exhaustively check shape, associativity and the unit laws.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        let p = self.p();
        if self.mult.len() != d
            || self.mult.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d))
        {
            return Err(AlgebraError::Malformed("mult table shape".into()));
        }
        if self.unit.len() != d {
            return Err(AlgebraError::Malformed("unit length".into()));
        }
        if self
            .mult
            .iter()
            .flatten()
            .flatten()
            .chain(self.unit.iter())
            .any(|&e| e >= p)
        {
            return Err(AlgebraError::Malformed("entry not reduced mod p".into()));
        }
        // unit laws: 1·e_i = e_i = e_i·1
        for i in 0..d {
            let left = self.mul_elems(&self.unit, &basis_vec(d, i));
            let right = self.mul_elems(&basis_vec(d, i), &self.unit);
            if left != basis_vec(d, i) || right != basis_vec(d, i) {
                return Err(AlgebraError::BadUnit(i));
            }
        }
        // associativity on all basis triples
        for i in 0..d {
            for j in 0..d {
                let ij = self.mult[i][j].clone();
                for k in 0..d {
                    let lhs = self.mul_elems(&ij, &basis_vec(d, k));
                    let rhs = self.mul_elems(&basis_vec(d, i), &self.mult[j][k]);
                    if lhs != rhs {
                        return Err(AlgebraError::NonAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Product of two elements given by coordinate vectors.
    pub fn mul_elems(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let d = self.dim;
        let p = self.p() as u64;
        let mut out = vec![0u64; d];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                if b[j] == 0 {
                    continue;
                }
                let c = a[i] as u64 * b[j] as u64 % p;
                for k in 0..d {
                    out[k] = (out[k] + c * self.mult[i][j][k] as u64) % p;
                }
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Matrix of v ↦ v · e_j (right multiplication), row convention.
    pub fn right_mult(&self, j: usize) -> Mat {
        let d = self.dim;
        let mut m = Mat::zero(d, d, self.p());
        for k in 0..d {
            for l in 0..d {
                m.set(k, l, self.mult[k][j][l]);
            }
        }
        m
    }

    /// Matrix of v ↦ e_j · v (left multiplication), row convention.
    pub fn left_mult(&self, j: usize) -> Mat {
        let d = self.dim;
        let mut m = Mat::zero(d, d, self.p());
        for k in 0..d {
            for l in 0..d {
                m.set(k, l, self.mult[j][k][l]);
            }
        }
        m
    }

    /// Basis-element action matrices for a regular module on the given side.
    /// Right side: v·e_j; left side (right over A^op): e_j·v.
    pub fn side_mult(&self, side: Side, j: usize) -> Mat {
        match side {
            Side::Right => self.right_mult(j),
            Side::Left => self.left_mult(j),
        }
    }

    /// Structure constant for the given side: on the left side the table is
    /// transposed in its first two indices.
    pub fn side_const(&self, side: Side, i: usize, j: usize, k: usize) -> u32 {
        match side {
            Side::Right => self.mult[i][j][k],
            Side::Left => self.mult[j][i][k],
        }
    }

    pub fn opposite(&self) -> Result<Arc<Algebra>, AlgebraError> {
        let d = self.dim;
        let mut mult = vec![vec![vec![0u32; d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                mult[i][j] = self.mult[j][i].clone();
            }
        }
        Algebra::new(
            &format!("{}^op", self.name),
            self.field,
            mult,
            self.unit.clone(),
            self.declared_gorenstein,
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(AlgebraJson {
            name: self.name.clone(),
            p: self.p(),
            dim: self.dim,
            unit: self.unit.clone(),
            mult: self.mult.clone(),
            gorenstein_n: self.declared_gorenstein,
        })
        .expect("algebra serialization")
    }

    pub fn from_json_str(s: &str) -> Result<Arc<Algebra>, AlgebraError> {
        let j: AlgebraJson = serde_json::from_str(s)
            .map_err(|e| AlgebraError::Malformed(format!("json: {e}")))?;
        let field = FieldSpec::new(j.p).map_err(AlgebraError::Malformed)?;
        if j.dim != j.unit.len() {
            return Err(AlgebraError::Malformed("dim does not match unit length".into()));
        }
        Algebra::new(&j.name, field, j.mult, j.unit, j.gorenstein_n)
    }
}

pub fn basis_vec(dim: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; dim];
    v[i] = 1;
    v
}

/// Build a catalog algebra. Recognized keys:
/// `field`, `truncated_poly <m>`, `group_C<n>`, `triangular_2`,
/// `nakayama <c1,c2,...>` (admissible Kupisch list over the linear quiver).
pub fn catalog_algebra(key: &str, p: u32) -> Result<Arc<Algebra>, AlgebraError> {
    let field = FieldSpec::new(p).map_err(AlgebraError::BadParams)?;
    let parts: Vec<&str> = key.split_whitespace().collect();
    match parts.as_slice() {
        ["field"] => Algebra::new(
            &format!("field_F{p}"),
            field,
            vec![vec![vec![1]]],
            vec![1],
            Some(0),
        ),
        ["truncated_poly", m] => {
            let m: usize = m
                .parse()
                .map_err(|_| AlgebraError::BadParams(format!("truncated_poly degree: {m}")))?;
            if m < 1 {
                return Err(AlgebraError::BadParams("truncated_poly needs m >= 1".into()));
            }
            let mut mult = vec![vec![vec![0u32; m]; m]; m];
            for i in 0..m {
                for j in 0..m {
                    if i + j < m {
                        mult[i][j][i + j] = 1;
                    }
                }
            }
            Algebra::new(
                &format!("F{p}[x]/(x^{m})"),
                field,
                mult,
                basis_vec(m, 0),
                Some(0),
            )
        }
        [g] if g.starts_with("group_C") => {
            let n: usize = g[7..]
                .parse()
                .map_err(|_| AlgebraError::BadParams(format!("group order: {g}")))?;
            if n < 1 {
                return Err(AlgebraError::BadParams("group order must be >= 1".into()));
            }
            let mut mult = vec![vec![vec![0u32; n]; n]; n];
            for i in 0..n {
                for j in 0..n {
                    mult[i][j][(i + j) % n] = 1;
                }
            }
            Algebra::new(
                &format!("F{p}[C{n}]"),
                field,
                mult,
                basis_vec(n, 0),
                Some(0),
            )
        }
        ["triangular_2"] => {
            // basis: e11, e22, e12
            let d = 3;
            let mut mult = vec![vec![vec![0u32; d]; d]; d];
            mult[0][0][0] = 1; // e11 e11 = e11
            mult[1][1][1] = 1; // e22 e22 = e22
            mult[0][2][2] = 1; // e11 e12 = e12
            mult[2][1][2] = 1; // e12 e22 = e12
            Algebra::new(
                &format!("T2(F{p})"),
                field,
                mult,
                vec![1, 1, 0],
                Some(1),
            )
        }
        ["nakayama", list] => {
            let kupisch: Vec<usize> = list
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| AlgebraError::BadParams(format!("kupisch entry: {s}"))))
                .collect::<Result<_, _>>()?;
            nakayama_algebra(field, &kupisch)
        }
        _ => Err(AlgebraError::UnknownKey(key.to_string())),
    }
}

/// Serial algebra of the linear quiver 1 → 2 → ⋯ → n with the projective at
/// vertex i of dimension c_i. Basis: paths (i, ℓ) with 0 ≤ ℓ < c_i.
fn nakayama_algebra(field: FieldSpec, c: &[usize]) -> Result<Arc<Algebra>, AlgebraError> {
    let n = c.len();
    if n == 0 {
        return Err(AlgebraError::BadParams("empty kupisch list".into()));
    }
    for (idx, &ci) in c.iter().enumerate() {
        let i = idx + 1;
        if ci < 1 || ci > n - i + 1 {
            return Err(AlgebraError::BadParams(format!(
                "kupisch entry c_{i}={ci} out of range 1..={}",
                n - i + 1
            )));
        }
        if idx + 1 < n && c[idx + 1] + 1 < ci {
            return Err(AlgebraError::BadParams(format!(
                "kupisch list not admissible at position {i}: c_{i}={} > c_{}+1={}",
                ci,
                i + 1,
                c[idx + 1] + 1
            )));
        }
    }
    if c[n - 1] != 1 {
        return Err(AlgebraError::BadParams("last kupisch entry must be 1".into()));
    }
    // enumerate basis paths
    let mut paths = Vec::new(); // (start, len)
    for (idx, &ci) in c.iter().enumerate() {
        for l in 0..ci {
            paths.push((idx, l));
        }
    }
    let d = paths.len();
    let index = |start: usize, len: usize| paths.iter().position(|&q| q == (start, len)).unwrap();
    let mut mult = vec![vec![vec![0u32; d]; d]; d];
    for (a, &(i, l)) in paths.iter().enumerate() {
        for (b, &(j, m)) in paths.iter().enumerate() {
            if j == i + l && l + m < c[i] {
                mult[a][b][index(i, l + m)] = 1;
            }
        }
    }
    let mut unit = vec![0u32; d];
    for (a, &(_, l)) in paths.iter().enumerate() {
        if l == 0 {
            unit[a] = 1;
        }
    }
    let names: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    Algebra::new(
        &format!("Nakayama({})_F{}", names.join(","), field.p),
        field,
        mult,
        unit,
        None,
    )
}

/// Catalog keys exercised by the default verification suites.
pub fn default_catalog() -> Vec<(String, u32)> {
    vec![
        ("field".into(), 3),
        ("truncated_poly 2".into(), 2),
        ("truncated_poly 3".into(), 3),
        ("group_C2".into(), 2),
        ("triangular_2".into(), 3),
        ("nakayama 2,2,1".into(), 2),
    ]
}
