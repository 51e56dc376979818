//! Finitely generated modules as matrix representations, morphisms between
//! them, and the basic bifunctors: Hom, tensor over A, the k-linear dual D,
//! and the star transpose Hom(−, A).
//!
//! Conventions, fixed globally:
//!   * modules are ROW spaces: the action of basis element e_j is
//!     v ↦ v·action[j];
//!   * a morphism acts as φ(v) = v·matrix, so composition of f then g has
//!     matrix f.matrix · g.matrix;
//!   * left A-modules are right modules over A^op and carry `Side::Left`.
//!
//! Side/convention bugs are the dominant failure mode in this domain, so
//! every constructor re-checks the representation and intertwining laws.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, Side};
use crate::exactla::{kernel_basis, quotient_dim, Mat, Subspace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("side or algebra mismatch between operands")]
    SideMismatch,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix does not intertwine the two representations")]
    NotIntertwining,
    #[error("representation law fails at basis index {0}")]
    BadRepresentation(usize),
    #[error("malformed module data: {0}")]
    Malformed(String),
}

/// A finitely generated module as a matrix representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRep {
    pub algebra: Arc<Algebra>,
    pub side: Side,
    pub dim: usize,
    pub action: Vec<Mat>,
}

impl ModuleRep {
    pub fn new(
        algebra: Arc<Algebra>,
        side: Side,
        dim: usize,
        action: Vec<Mat>,
    ) -> Result<ModuleRep, ModuleError> {
        let m = ModuleRep { algebra, side, dim, action };
        m.validate()?;
        Ok(m)
    }

    pub fn zero(algebra: Arc<Algebra>, side: Side) -> ModuleRep {
        let d = algebra.dim;
        let p = algebra.p();
        ModuleRep { algebra, side, dim: 0, action: vec![Mat::zero(0, 0, p); d] }
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn p(&self) -> u32 {
        self.algebra.p()
    }

    /// Check the unit law and the representation law by full enumeration.
    pub fn validate(&self) -> Result<(), ModuleError> {
        let d = self.algebra.dim;
        if self.action.len() != d {
            return Err(ModuleError::ShapeMismatch("action table length".into()));
        }
        for a in &self.action {
            if a.rows != self.dim || a.cols != self.dim {
                return Err(ModuleError::ShapeMismatch("action matrix shape".into()));
            }
        }
        if self.dim == 0 {
            return Ok(());
        }
        let p = self.p();
        // unit acts as identity
        let mut unit_act = Mat::zero(self.dim, self.dim, p);
        for (j, &c) in self.algebra.unit.iter().enumerate() {
            unit_act = unit_act.add(&self.action[j].scale(c));
        }
        if unit_act != Mat::identity(self.dim, p) {
            return Err(ModuleError::BadRepresentation(usize::MAX));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = Mat::zero(self.dim, self.dim, p);
                for k in 0..d {
                    let c = self.algebra.side_const(self.side, i, j, k);
                    if c != 0 {
                        rhs = rhs.add(&self.action[k].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(ModuleError::BadRepresentation(i * d + j));
                }
            }
        }
        Ok(())
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn elem_action(&self, coords: &[u32]) -> Mat {
        let mut out = Mat::zero(self.dim, self.dim, self.p());
        for (j, &c) in coords.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.action[j].scale(c));
            }
        }
        out
    }

    /// Stable content hash used for caching and pool deduplication.
    pub fn stable_key(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut eat = |x: u64| {
            h ^= x;
            h = h.wrapping_mul(0x100000001b3);
        };
        for b in self.algebra.name.bytes() {
            eat(b as u64);
        }
        eat(self.p() as u64);
        eat(match self.side {
            Side::Right => 1,
            Side::Left => 2,
        });
        eat(self.dim as u64);
        for a in &self.action {
            for &e in a.entries() {
                eat(e as u64);
            }
        }
        h
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ModuleJson {
            algebra: self.algebra.name.clone(),
            side: self.side,
            dim: self.dim,
            action: self.action.iter().map(mat_to_rows).collect(),
        })
        .expect("module serialization")
    }

    pub fn from_json_str(s: &str, algebra: Arc<Algebra>) -> Result<ModuleRep, ModuleError> {
        let j: ModuleJson =
            serde_json::from_str(s).map_err(|e| ModuleError::Malformed(format!("json: {e}")))?;
        if j.algebra != algebra.name {
            return Err(ModuleError::Malformed(format!(
                "module references algebra '{}' but '{}' is loaded",
                j.algebra, algebra.name
            )));
        }
        let p = algebra.p();
        let action = j
            .action
            .iter()
            .map(|m| rows_to_mat(m, j.dim, p))
            .collect::<Result<Vec<_>, _>>()?;
        ModuleRep::new(algebra, j.side, j.dim, action)
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    algebra: String,
    side: Side,
    dim: usize,
    action: Vec<Vec<Vec<u32>>>,
}

pub fn mat_to_rows(m: &Mat) -> Vec<Vec<u32>> {
    (0..m.rows).map(|r| m.row(r).to_vec()).collect()
}

pub fn rows_to_mat(rows: &[Vec<u32>], expect_dim: usize, p: u32) -> Result<Mat, ModuleError> {
    if rows.len() != expect_dim || rows.iter().any(|r| r.len() != expect_dim) {
        return Err(ModuleError::ShapeMismatch("matrix is not dim × dim".into()));
    }
    Ok(Mat::from_rows(rows, expect_dim, p))
}

/// The rank-1 free module A_A (or the A^op-regular module for `Side::Left`).
pub fn regular_module(algebra: &Arc<Algebra>, side: Side) -> ModuleRep {
    let d = algebra.dim;
    let action = (0..d).map(|j| algebra.side_mult(side, j)).collect();
    let m = ModuleRep { algebra: Arc::clone(algebra), side, dim: d, action };
    debug_assert!(m.validate().is_ok());
    m
}

/// The free module A^rank with block-diagonal regular action.
pub fn free_module(algebra: &Arc<Algebra>, side: Side, rank: usize) -> ModuleRep {
    let d = algebra.dim;
    let p = algebra.p();
    let dim = rank * d;
    let mut action = Vec::with_capacity(d);
    for j in 0..d {
        let blk = algebra.side_mult(side, j);
        let mut m = Mat::zero(dim, dim, p);
        for s in 0..rank {
            for r in 0..d {
                for c in 0..d {
                    m.set(s * d + r, s * d + c, blk.get(r, c));
                }
            }
        }
        action.push(m);
    }
    ModuleRep { algebra: Arc::clone(algebra), side, dim, action }
}

/// An A-linear map as a matrix: φ(v) = v·matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMorphism {
    pub source: ModuleRep,
    pub target: ModuleRep,
    pub matrix: Mat,
}

impl ModuleMorphism {
    pub fn new(source: ModuleRep, target: ModuleRep, matrix: Mat) -> Result<Self, ModuleError> {
        if source.algebra.name != target.algebra.name || source.side != target.side {
            return Err(ModuleError::SideMismatch);
        }
        if matrix.rows != source.dim || matrix.cols != target.dim {
            return Err(ModuleError::ShapeMismatch(format!(
                "morphism matrix {}×{} between modules of dim {} and {}",
                matrix.rows, matrix.cols, source.dim, target.dim
            )));
        }
        let f = ModuleMorphism { source, target, matrix };
        if !f.intertwines() {
            return Err(ModuleError::NotIntertwining);
        }
        Ok(f)
    }

    /// Construct without the intertwining check (debug-asserted instead);
    /// for maps produced by constructions that guarantee linearity.
    pub fn new_unchecked(source: ModuleRep, target: ModuleRep, matrix: Mat) -> Self {
        let f = ModuleMorphism { source, target, matrix };
        debug_assert!(f.intertwines(), "internal construction produced a non-intertwiner");
        f
    }

    pub fn intertwines(&self) -> bool {
        for j in 0..self.source.algebra.dim {
            let lhs = self.source.action[j].mul(&self.matrix);
            let rhs = self.matrix.mul(&self.target.action[j]);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    pub fn zero(source: ModuleRep, target: ModuleRep) -> Self {
        let m = Mat::zero(source.dim, target.dim, source.p());
        ModuleMorphism { source, target, matrix: m }
    }

    pub fn identity(module: ModuleRep) -> Self {
        let m = Mat::identity(module.dim, module.p());
        ModuleMorphism { source: module.clone(), target: module, matrix: m }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim
    }
}

/// g ∘ f, for f: M → N and g: N → L.
pub fn compose(f: &ModuleMorphism, g: &ModuleMorphism) -> ModuleMorphism {
    assert_eq!(f.target.dim, g.source.dim, "composition shape mismatch");
    ModuleMorphism::new_unchecked(f.source.clone(), g.target.clone(), f.matrix.mul(&g.matrix))
}

/// All intertwining matrices M → N as an F_p-space.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source: ModuleRep,
    pub target: ModuleRep,
    pub basis: Vec<Mat>,
    /// Row space of the flattened basis, for coordinate extraction.
    pub space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an intertwiner in the computed basis.
    pub fn coords(&self, m: &Mat) -> Option<Vec<u32>> {
        let flat: Vec<u32> = m.entries().to_vec();
        self.space.coords(&flat)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Mat {
        let mut out = Mat::zero(self.source.dim, self.target.dim, self.source.p());
        for (t, &c) in coords.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.basis[t].scale(c));
            }
        }
        out
    }
}

/// Solve the intertwining equations act_M[j]·X = X·act_N[j] for all j.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<HomSpace, ModuleError> {
    if m.algebra.name != n.algebra.name || m.side != n.side {
        return Err(ModuleError::SideMismatch);
    }
    let p = m.p();
    let (md, nd) = (m.dim, n.dim);
    let unknowns = md * nd;
    if unknowns == 0 {
        return Ok(HomSpace {
            source: m.clone(),
            target: n.clone(),
            basis: Vec::new(),
            space: Subspace::zero(unknowns, p),
        });
    }
    let da = m.algebra.dim;
    let mut constraints = Mat::zero(da * md * nd, unknowns, p);
    for j in 0..da {
        let am = &m.action[j];
        let an = &n.action[j];
        for a in 0..md {
            for c in 0..nd {
                let erow = (j * md + a) * nd + c;
                // Σ_r am[a][r] X[r][c] − Σ_s X[a][s] an[s][c]
                for r in 0..md {
                    let v = am.get(a, r);
                    if v != 0 {
                        let col = r * nd + c;
                        let cur = constraints.get(erow, col);
                        constraints.set(erow, col, (cur + v) % p);
                    }
                }
                for s in 0..nd {
                    let v = an.get(s, c);
                    if v != 0 {
                        let col = a * nd + s;
                        let cur = constraints.get(erow, col);
                        constraints.set(erow, col, (cur + p - v % p) % p);
                    }
                }
            }
        }
    }
    let space = kernel_basis(&constraints);
    let basis = (0..space.rank())
        .map(|i| Mat::from_vec(md, nd, p, space.basis.row(i).to_vec()))
        .collect();
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis, space })
}

/// Carve a module structure out of an A-invariant subspace of M.
/// Returns the abstract module together with its inclusion into M.
pub fn module_on_subspace(
    m: &ModuleRep,
    sub: &Subspace,
) -> Result<(ModuleRep, ModuleMorphism), ModuleError> {
    assert_eq!(sub.ambient_dim, m.dim);
    let p = m.p();
    let k = sub.rank();
    let da = m.algebra.dim;
    let mut action = Vec::with_capacity(da);
    for j in 0..da {
        let mut aj = Mat::zero(k, k, p);
        for r in 0..k {
            let img = m.action[j].apply_row(sub.basis.row(r));
            let coords = sub
                .coords(&img)
                .ok_or_else(|| ModuleError::ShapeMismatch("subspace not A-invariant".into()))?;
            for (c, &v) in coords.iter().enumerate() {
                aj.set(r, c, v);
            }
        }
        action.push(aj);
    }
    let module = ModuleRep {
        algebra: Arc::clone(&m.algebra),
        side: m.side,
        dim: k,
        action,
    };
    debug_assert!(module.validate().is_ok());
    let incl = ModuleMorphism::new_unchecked(module.clone(), m.clone(), sub.basis.clone());
    Ok((module, incl))
}

/// Kernel of a morphism, with its inclusion. Basis chosen deterministically
/// from RREF pivots.
pub fn kernel_module(f: &ModuleMorphism) -> (ModuleRep, ModuleMorphism) {
    let ker = kernel_basis(&f.matrix.transpose());
    module_on_subspace(&f.source, &ker).expect("kernel is A-invariant")
}

/// Cokernel of a morphism, with its projection. The quotient basis is the
/// set of non-pivot coordinates of the image's RREF.
pub fn cokernel_module(f: &ModuleMorphism) -> (ModuleRep, ModuleMorphism) {
    let n = &f.target;
    let p = n.p();
    let image = Subspace::from_rows(&f.matrix);
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; n.dim];
        for &pc in &image.pivots {
            s[pc] = true;
        }
        s
    };
    let complement: Vec<usize> = (0..n.dim).filter(|&c| !pivot_set[c]).collect();
    let cdim = complement.len();
    debug_assert_eq!(cdim, quotient_dim(n.dim, &image));
    // projection: e_i ↦ reduce(e_i) restricted to complement coordinates
    let mut proj = Mat::zero(n.dim, cdim, p);
    for i in 0..n.dim {
        let mut e = vec![0u32; n.dim];
        e[i] = 1;
        let red = image.reduce(&e);
        for (a, &q) in complement.iter().enumerate() {
            proj.set(i, a, red[q]);
        }
    }
    let da = n.algebra.dim;
    let mut action = Vec::with_capacity(da);
    for j in 0..da {
        let mut aj = Mat::zero(cdim, cdim, p);
        for (a, &q) in complement.iter().enumerate() {
            let img = n.action[j].row(q);
            let red = image.reduce(img);
            for (b, &q2) in complement.iter().enumerate() {
                aj.set(a, b, red[q2]);
            }
        }
        action.push(aj);
    }
    let module = ModuleRep {
        algebra: Arc::clone(&n.algebra),
        side: n.side,
        dim: cdim,
        action,
    };
    debug_assert!(module.validate().is_ok());
    let pr = ModuleMorphism::new_unchecked(n.clone(), module.clone(), proj);
    (module, pr)
}

/// A-span of a set of vectors, as a submodule with inclusion.
pub fn submodule_from_span(
    m: &ModuleRep,
    gens: &[Vec<u32>],
) -> (ModuleRep, ModuleMorphism) {
    let p = m.p();
    let da = m.algebra.dim;
    let mut rows = Vec::new();
    for g in gens {
        for j in 0..da {
            rows.push(m.action[j].apply_row(g));
        }
    }
    let span = if rows.is_empty() {
        Subspace::zero(m.dim, p)
    } else {
        Subspace::from_rows(&Mat::from_rows(&rows, m.dim, p))
    };
    module_on_subspace(m, &span).expect("A-span is A-invariant")
}

pub struct DirectSum {
    pub module: ModuleRep,
    pub injections: (ModuleMorphism, ModuleMorphism),
    pub projections: (ModuleMorphism, ModuleMorphism),
}

pub fn direct_sum(m: &ModuleRep, n: &ModuleRep) -> Result<DirectSum, ModuleError> {
    if m.algebra.name != n.algebra.name || m.side != n.side {
        return Err(ModuleError::SideMismatch);
    }
    let p = m.p();
    let dim = m.dim + n.dim;
    let da = m.algebra.dim;
    let mut action = Vec::with_capacity(da);
    for j in 0..da {
        let mut aj = Mat::zero(dim, dim, p);
        for r in 0..m.dim {
            for c in 0..m.dim {
                aj.set(r, c, m.action[j].get(r, c));
            }
        }
        for r in 0..n.dim {
            for c in 0..n.dim {
                aj.set(m.dim + r, m.dim + c, n.action[j].get(r, c));
            }
        }
        action.push(aj);
    }
    let sum = ModuleRep {
        algebra: Arc::clone(&m.algebra),
        side: m.side,
        dim,
        action,
    };
    let mut i1 = Mat::zero(m.dim, dim, p);
    for r in 0..m.dim {
        i1.set(r, r, 1);
    }
    let mut i2 = Mat::zero(n.dim, dim, p);
    for r in 0..n.dim {
        i2.set(r, m.dim + r, 1);
    }
    let p1 = i1.transpose();
    let p2 = i2.transpose();
    Ok(DirectSum {
        module: sum.clone(),
        injections: (
            ModuleMorphism::new_unchecked(m.clone(), sum.clone(), i1),
            ModuleMorphism::new_unchecked(n.clone(), sum.clone(), i2),
        ),
        projections: (
            ModuleMorphism::new_unchecked(sum.clone(), m.clone(), p1),
            ModuleMorphism::new_unchecked(sum, n.clone(), p2),
        ),
    })
}

/// k-linear dual D(M) = Hom_k(M, k): same dimension, transposed actions,
/// flipped side.
pub fn dual_module(m: &ModuleRep) -> ModuleRep {
    let action = m.action.iter().map(|a| a.transpose()).collect();
    let d = ModuleRep {
        algebra: Arc::clone(&m.algebra),
        side: m.side.flip(),
        dim: m.dim,
        action,
    };
    debug_assert!(d.validate().is_ok());
    d
}

/// D is contravariant: D(f): D(N) → D(M) with the transposed matrix.
pub fn dual_morphism(f: &ModuleMorphism) -> ModuleMorphism {
    ModuleMorphism::new_unchecked(
        dual_module(&f.target),
        dual_module(&f.source),
        f.matrix.transpose(),
    )
}

/// The star module (−)* = Hom(−, A) together with its computed hom basis,
/// kept so that star is functorial and evaluation maps can be expressed.
#[derive(Debug, Clone)]
pub struct StarModule {
    /// The module structure on Hom(M, A); side is flipped relative to M.
    pub module: ModuleRep,
    /// Hom-basis matrices (dim M × dim A each), aligned with `module` coords.
    pub basis: Vec<Mat>,
    space: Subspace,
}

impl StarModule {
    pub fn dim(&self) -> usize {
        self.module.dim
    }

    pub fn coords(&self, hom_matrix: &Mat) -> Option<Vec<u32>> {
        self.space.coords(hom_matrix.entries())
    }
}

/// Hom_A(M, A_A) as a module over the other side.
pub fn star_module(m: &ModuleRep) -> StarModule {
    let reg = regular_module(&m.algebra, m.side);
    let homs = hom_space(m, &reg).expect("sides match by construction");
    let p = m.p();
    let da = m.algebra.dim;
    let s = homs.dim();
    // action of e_j on a hom matrix Φ is Φ · (multiplication on the other side)
    let mut action = Vec::with_capacity(da);
    for j in 0..da {
        let post = m.algebra.side_mult(m.side.flip(), j);
        let mut aj = Mat::zero(s, s, p);
        for t in 0..s {
            let moved = homs.basis[t].mul(&post);
            let coords = homs
                .coords(&moved)
                .expect("post-multiplication preserves the hom space");
            for (c, &v) in coords.iter().enumerate() {
                aj.set(t, c, v);
            }
        }
        action.push(aj);
    }
    let module = ModuleRep {
        algebra: Arc::clone(&m.algebra),
        side: m.side.flip(),
        dim: s,
        action,
    };
    debug_assert!(module.validate().is_ok());
    StarModule { module, basis: homs.basis, space: homs.space }
}

/// Star is contravariant: for f: X → Y, star(f): Y* → X* by precomposition.
pub fn star_map(f: &ModuleMorphism, star_x: &StarModule, star_y: &StarModule) -> ModuleMorphism {
    let p = f.source.p();
    let mut matrix = Mat::zero(star_y.dim(), star_x.dim(), p);
    for t in 0..star_y.dim() {
        let pulled = f.matrix.mul(&star_y.basis[t]);
        let coords = star_x
            .coords(&pulled)
            .expect("precomposition lands in the hom space");
        for (c, &v) in coords.iter().enumerate() {
            matrix.set(t, c, v);
        }
    }
    ModuleMorphism::new_unchecked(star_y.module.clone(), star_x.module.clone(), matrix)
}

/// The evaluation map M → (M*)*, m ↦ (φ ↦ φ(m)), in the computed bases.
/// Returns the morphism together with the two star structures.
pub fn natural_eval_to_double_star(m: &ModuleRep) -> (ModuleMorphism, StarModule, StarModule) {
    let star = star_module(m);
    let dstar = star_module(&star.module);
    let p = m.p();
    let da = m.algebra.dim;
    let mut matrix = Mat::zero(m.dim, dstar.dim(), p);
    for a in 0..m.dim {
        // ev(e_a): M* → A, φ_t ↦ φ_t(e_a)  (a hom matrix of shape dim M* × dim A)
        let mut ev = Mat::zero(star.dim(), da, p);
        for t in 0..star.dim() {
            for c in 0..da {
                ev.set(t, c, star.basis[t].get(a, c));
            }
        }
        let coords = dstar
            .coords(&ev)
            .expect("evaluation lands in the double-star hom space");
        for (c, &v) in coords.iter().enumerate() {
            matrix.set(a, c, v);
        }
    }
    let f = ModuleMorphism::new_unchecked(m.clone(), dstar.module.clone(), matrix);
    (f, star, dstar)
}

pub fn is_reflexive(m: &ModuleRep) -> bool {
    let (ev, _, dstar) = natural_eval_to_double_star(m);
    m.dim == dstar.dim() && ev.matrix.rank() == m.dim
}

/// M ⊗_A Y for M right and Y left, as an explicit quotient of M ⊗_k Y.
#[derive(Debug, Clone)]
pub struct TensorSpace {
    pub dim: usize,
    pub left_dim: usize,
    pub right_dim: usize,
    relations: Subspace,
    complement: Vec<usize>,
}

impl TensorSpace {
    /// Image of a vector of M ⊗_k Y (index (a,b) = a·dim(Y)+b) in the quotient.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        let red = self.relations.reduce(v);
        self.complement.iter().map(|&q| red[q]).collect()
    }

    /// Projection of the pure tensor e_a ⊗ e_b.
    pub fn project_pure(&self, a: usize, b: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.left_dim * self.right_dim];
        v[a * self.right_dim + b] = 1;
        self.project(&v)
    }
}

pub fn tensor_over_a(m: &ModuleRep, y: &ModuleRep) -> Result<TensorSpace, ModuleError> {
    if m.algebra.name != y.algebra.name || m.side != Side::Right || y.side != Side::Left {
        return Err(ModuleError::SideMismatch);
    }
    let p = m.p();
    let (md, yd) = (m.dim, y.dim);
    let ambient = md * yd;
    let da = m.algebra.dim;
    let mut rows = Vec::new();
    for a in 0..md {
        for j in 0..da {
            for b in 0..yd {
                let mut r = vec![0u32; ambient];
                for ap in 0..md {
                    let v = m.action[j].get(a, ap);
                    if v != 0 {
                        r[ap * yd + b] = (r[ap * yd + b] + v) % p;
                    }
                }
                for bp in 0..yd {
                    let v = y.action[j].get(b, bp);
                    if v != 0 {
                        r[a * yd + bp] = (r[a * yd + bp] + p - v) % p;
                    }
                }
                if r.iter().any(|&x| x != 0) {
                    rows.push(r);
                }
            }
        }
    }
    let relations = if rows.is_empty() || ambient == 0 {
        Subspace::zero(ambient, p)
    } else {
        Subspace::from_rows(&Mat::from_rows(&rows, ambient, p))
    };
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; ambient];
        for &pc in &relations.pivots {
            s[pc] = true;
        }
        s
    };
    let complement: Vec<usize> = (0..ambient).filter(|&c| !pivot_set[c]).collect();
    Ok(TensorSpace {
        dim: complement.len(),
        left_dim: md,
        right_dim: yd,
        relations,
        complement,
    })
}
