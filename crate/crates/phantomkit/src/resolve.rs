//! Free covers, truncated free resolutions, syzygies, chain-map lifts, and
//! the Gorenstein-projective cosyzygy construction.
//!
//! Resolutions here are deliberately non-minimal: generators are chosen by a
//! greedy scan over basis vectors, which bounds the cover rank by dim M and
//! avoids radical computations. Every quantity exposed downstream (Ext/Tor
//! dimensions, factorization verdicts) is invariant under the extra
//! projective summands this introduces.
//!
//! Free modules use the canonical identification Hom(A^g, Z) ≅ Z^g, so
//! lifting problems out of a free module reduce to g small linear systems
//! instead of one dense intertwiner solve.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::Side;
use crate::exactla::{solve_linear, Mat, Subspace};
use crate::modules::{
    cokernel_module, compose, dual_module, free_module, kernel_module, natural_eval_to_double_star,
    star_map, star_module, ModuleMorphism, ModuleRep, StarModule,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolveError {
    #[error("module is not reflexive; Gorenstein cosyzygy undefined")]
    NotReflexive,
}

/// A free module A^rank remembering its rank.
#[derive(Debug, Clone)]
pub struct FreeMod {
    pub rank: usize,
    pub rep: ModuleRep,
}

pub fn free_mod(algebra: &Arc<crate::algebra::Algebra>, side: Side, rank: usize) -> FreeMod {
    FreeMod { rank, rep: free_module(algebra, side, rank) }
}

/// A surjection A^g ↠ M with the chosen generators.
#[derive(Debug, Clone)]
pub struct FreeCover {
    pub free: FreeMod,
    pub projection: ModuleMorphism,
    pub generators: Vec<Vec<u32>>,
}

/// Greedy free cover: scan basis vectors in the given order, keeping those
/// not in the A-span of previously kept ones.
pub fn free_cover_with_order(m: &ModuleRep, order: &[usize]) -> FreeCover {
    let p = m.p();
    let da = m.algebra.dim;
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut span_rows: Vec<Vec<u32>> = Vec::new();
    let mut span = Subspace::zero(m.dim, p);
    for &idx in order {
        let mut e = vec![0u32; m.dim];
        e[idx] = 1;
        if span.contains(&e) {
            continue;
        }
        for j in 0..da {
            span_rows.push(m.action[j].apply_row(&e));
        }
        span = Subspace::from_rows(&Mat::from_rows(&span_rows, m.dim, p));
        gens.push(e);
    }
    let g = gens.len();
    let free = free_mod(&m.algebra, m.side, g);
    let mut proj = Mat::zero(g * da, m.dim, p);
    for (s, gen) in gens.iter().enumerate() {
        for k in 0..da {
            let row = m.action[k].apply_row(gen);
            for (c, &v) in row.iter().enumerate() {
                proj.set(s * da + k, c, v);
            }
        }
    }
    let projection = ModuleMorphism::new_unchecked(free.rep.clone(), m.clone(), proj);
    debug_assert!(projection.is_surjective() || m.is_zero());
    FreeCover { free, projection, generators: gens }
}

pub fn free_cover(m: &ModuleRep) -> FreeCover {
    let order: Vec<usize> = (0..m.dim).collect();
    free_cover_with_order(m, &order)
}

/// Entries of a free-to-free morphism as a rank × rank matrix over A.
/// a[s][t] are the coordinates in copy t of the image of the unit of copy s.
pub fn free_amatrix(f: &Mat, src_rank: usize, tgt_rank: usize, unit: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let da = unit.len();
    assert_eq!(f.rows, src_rank * da);
    assert_eq!(f.cols, tgt_rank * da);
    let mut out = vec![vec![vec![0u32; da]; tgt_rank]; src_rank];
    for s in 0..src_rank {
        let mut u = vec![0u32; src_rank * da];
        for (k, &c) in unit.iter().enumerate() {
            u[s * da + k] = c;
        }
        let img = f.apply_row(&u);
        for t in 0..tgt_rank {
            out[s][t].copy_from_slice(&img[t * da..(t + 1) * da]);
        }
    }
    out
}

/// The A-linear map A^g → Z sending the unit of copy s to w[s].
pub fn free_hom_matrix(g: usize, z: &ModuleRep, w: &[Vec<u32>]) -> Mat {
    let da = z.algebra.dim;
    let p = z.p();
    let mut out = Mat::zero(g * da, z.dim, p);
    for s in 0..g {
        for k in 0..da {
            let row = z.action[k].apply_row(&w[s]);
            for (c, &v) in row.iter().enumerate() {
                out.set(s * da + k, c, v);
            }
        }
    }
    out
}

/// Solve for φ: A^g → Z with Φ·a = b; the free source splits the problem
/// into g independent systems in dim Z unknowns.
pub fn solve_from_free(
    g: usize,
    z: &ModuleRep,
    a: &Mat,
    b: &Mat,
) -> Option<ModuleMorphism> {
    let da = z.algebra.dim;
    let p = z.p();
    let q = a.cols;
    assert_eq!(a.rows, z.dim);
    assert_eq!(b.rows, g * da);
    assert_eq!(b.cols, q);
    // coefficient matrix shared across copies: rows (k,c), cols = dim Z
    let mks: Vec<Mat> = (0..da).map(|k| z.action[k].mul(a)).collect();
    let mut coeff = Mat::zero(da * q, z.dim, p);
    for k in 0..da {
        for c in 0..q {
            for bdim in 0..z.dim {
                coeff.set(k * q + c, bdim, mks[k].get(bdim, c));
            }
        }
    }
    let mut w = Vec::with_capacity(g);
    for s in 0..g {
        let mut rhs = vec![0u32; da * q];
        for k in 0..da {
            for c in 0..q {
                rhs[k * q + c] = b.get(s * da + k, c);
            }
        }
        w.push(solve_linear(&coeff, &rhs)?);
    }
    let free = free_module(&z.algebra, z.side, g);
    let mat = free_hom_matrix(g, z, &w);
    Some(ModuleMorphism::new_unchecked(free, z.clone(), mat))
}

/// Solve for h: M → A^g with h·through = rhs, where `through` maps A^g into
/// some module N. Parametrized over the star basis Hom(M, A)^g.
pub fn solve_into_free(
    star_m: &StarModule,
    m: &ModuleRep,
    g: usize,
    through: &Mat,
    rhs: &Mat,
) -> Option<ModuleMorphism> {
    let da = m.algebra.dim;
    let p = m.p();
    let nd = through.cols;
    assert_eq!(through.rows, g * da);
    assert_eq!(rhs.rows, m.dim);
    assert_eq!(rhs.cols, nd);
    let sdim = star_m.dim();
    let unknowns = g * sdim;
    // per-copy blocks of `through`
    let blocks: Vec<Mat> = (0..g)
        .map(|s| {
            let mut bl = Mat::zero(da, nd, p);
            for k in 0..da {
                for c in 0..nd {
                    bl.set(k, c, through.get(s * da + k, c));
                }
            }
            bl
        })
        .collect();
    let mut coeff = Mat::zero(m.dim * nd, unknowns, p);
    for s in 0..g {
        for t in 0..sdim {
            let prod = star_m.basis[t].mul(&blocks[s]);
            let col = s * sdim + t;
            for r in 0..m.dim {
                for c in 0..nd {
                    coeff.set(r * nd + c, col, prod.get(r, c));
                }
            }
        }
    }
    let rhs_flat: Vec<u32> = (0..m.dim).flat_map(|r| rhs.row(r).to_vec()).collect();
    let sol = solve_linear(&coeff, &rhs_flat)?;
    // assemble h: column block (s·dA + k) from Σ_t c_{s,t} Φ_t
    let mut h = Mat::zero(m.dim, g * da, p);
    for s in 0..g {
        let mut hs = Mat::zero(m.dim, da, p);
        for t in 0..sdim {
            let c = sol[s * sdim + t];
            if c != 0 {
                hs = hs.add(&star_m.basis[t].scale(c));
            }
        }
        for r in 0..m.dim {
            for k in 0..da {
                h.set(r, s * da + k, hs.get(r, k));
            }
        }
    }
    let free = free_module(&m.algebra, m.side, g);
    Some(ModuleMorphism::new_unchecked(m.clone(), free, h))
}

/// Solve for ψ: Q → A^g with pre·ψ = rhs, where `pre` maps some module into
/// Q. Used to extend maps along monomorphisms with Gorenstein-projective
/// cokernel, where the obstruction group vanishes against a free target.
pub fn solve_precompose_into_free(
    star_q: &StarModule,
    q: &ModuleRep,
    g: usize,
    pre: &Mat,
    rhs: &Mat,
) -> Option<ModuleMorphism> {
    let da = q.algebra.dim;
    let p = q.p();
    let x = pre.rows;
    assert_eq!(pre.cols, q.dim);
    assert_eq!(rhs.rows, x);
    assert_eq!(rhs.cols, g * da);
    let sdim = star_q.dim();
    // shared per-copy coefficient matrix: rows (r,k), cols = star basis
    let mut coeff = Mat::zero(x * da, sdim, p);
    for t in 0..sdim {
        let pb = pre.mul(&star_q.basis[t]);
        for r in 0..x {
            for k in 0..da {
                coeff.set(r * da + k, t, pb.get(r, k));
            }
        }
    }
    let mut psi = Mat::zero(q.dim, g * da, p);
    for s in 0..g {
        let mut rhs_s = vec![0u32; x * da];
        for r in 0..x {
            for k in 0..da {
                rhs_s[r * da + k] = rhs.get(r, s * da + k);
            }
        }
        let c = solve_linear(&coeff, &rhs_s)?;
        let mut hs = Mat::zero(q.dim, da, p);
        for (t, &ct) in c.iter().enumerate() {
            if ct != 0 {
                hs = hs.add(&star_q.basis[t].scale(ct));
            }
        }
        for r in 0..q.dim {
            for k in 0..da {
                psi.set(r, s * da + k, hs.get(r, k));
            }
        }
    }
    let free = free_module(&q.algebra, q.side, g);
    Some(ModuleMorphism::new_unchecked(q.clone(), free, psi))
}

/// A truncated free resolution F_L → ⋯ → F_0 → M → 0 with its syzygies.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    pub module: ModuleRep,
    pub length: usize,
    pub ranks: Vec<usize>,
    pub frees: Vec<ModuleRep>,
    /// π: F_0 → M.
    pub augmentation: ModuleMorphism,
    /// diffs[i-1] is d_i: F_i → F_{i-1}, for i = 1..=length.
    pub diffs: Vec<ModuleMorphism>,
    /// amats[i-1] are the algebra-entry matrices of d_i.
    pub amats: Vec<Vec<Vec<Vec<u32>>>>,
    /// syzygies[i-1] is (Ω^i M, inclusion Ω^i M ↪ F_{i-1}).
    pub syzygies: Vec<(ModuleRep, ModuleMorphism)>,
}

impl FreeResolution {
    pub fn syzygy(&self, i: usize) -> &ModuleRep {
        assert!(i >= 1 && i <= self.length);
        &self.syzygies[i - 1].0
    }

    /// d ∘ d = 0 and exactness (image rank = kernel rank) at every spot.
    pub fn check_exact(&self) -> bool {
        let pi = &self.augmentation;
        if pi.matrix.rank() != self.module.dim {
            return false;
        }
        if self.length >= 1 {
            let dd = self.diffs[0].matrix.mul(&pi.matrix);
            if !dd.is_zero() {
                return false;
            }
            if self.diffs[0].matrix.rank() != self.frees[0].dim - self.module.dim {
                return false;
            }
        }
        for i in 2..=self.length {
            let dd = self.diffs[i - 1].matrix.mul(&self.diffs[i - 2].matrix);
            if !dd.is_zero() {
                return false;
            }
            let ker = self.frees[i - 1].dim - self.diffs[i - 2].matrix.rank();
            if self.diffs[i - 1].matrix.rank() != ker {
                return false;
            }
        }
        true
    }
}

pub fn build_resolution(m: &ModuleRep, length: usize, order: Option<u64>) -> FreeResolution {
    let scan = |module: &ModuleRep, stage: usize| -> FreeCover {
        match order {
            None => free_cover(module),
            Some(seed) => {
                let mut idx: Vec<usize> = (0..module.dim).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(
                    seed ^ (stage as u64).wrapping_mul(0x9e3779b97f4a7c15),
                );
                idx.shuffle(&mut rng);
                free_cover_with_order(module, &idx)
            }
        }
    };
    let cover0 = scan(m, 0);
    let mut ranks = vec![cover0.free.rank];
    let mut frees = vec![cover0.free.rep.clone()];
    let augmentation = cover0.projection.clone();
    let mut diffs = Vec::new();
    let mut amats = Vec::new();
    let mut syzygies = Vec::new();
    let mut last_proj = cover0.projection;
    for i in 1..=length {
        let (syz, incl) = kernel_module(&last_proj);
        let cover = scan(&syz, i);
        let d = compose(&cover.projection, &incl);
        amats.push(free_amatrix(
            &d.matrix,
            cover.free.rank,
            ranks[i - 1],
            &m.algebra.unit,
        ));
        ranks.push(cover.free.rank);
        frees.push(cover.free.rep.clone());
        diffs.push(d);
        syzygies.push((syz, incl));
        last_proj = cover.projection;
    }
    let res = FreeResolution {
        module: m.clone(),
        length,
        ranks,
        frees,
        augmentation,
        diffs,
        amats,
        syzygies,
    };
    debug_assert!(res.check_exact());
    res
}

/// Resolution provider with a read-mostly memo; lookups return a value equal
/// to a fresh computation (scan order is deterministic).
pub struct Resolver {
    cache: Mutex<HashMap<u64, Arc<FreeResolution>>>,
    pub degree_cap: usize,
}

impl Default for Resolver {
    fn default() -> Self {
        Resolver::new(6)
    }
}

impl Resolver {
    pub fn new(degree_cap: usize) -> Self {
        Resolver { cache: Mutex::new(HashMap::new()), degree_cap }
    }

    pub fn resolve(&self, m: &ModuleRep, min_length: usize) -> Arc<FreeResolution> {
        let key = m.stable_key();
        {
            let cache = self.cache.lock().unwrap();
            if let Some(res) = cache.get(&key) {
                if res.length >= min_length {
                    return Arc::clone(res);
                }
            }
        }
        let res = Arc::new(build_resolution(m, min_length, None));
        let mut cache = self.cache.lock().unwrap();
        let entry = cache.entry(key).or_insert_with(|| Arc::clone(&res));
        if entry.length < min_length {
            *entry = Arc::clone(&res);
        }
        Arc::clone(entry)
    }
}

/// A chain-map lift of a module morphism between two free resolutions.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub base: ModuleMorphism,
    /// stages[i]: F_i(M) → F_i(N).
    pub stages: Vec<ModuleMorphism>,
}

/// Lift f: M → N to a chain map through `stages` levels (0..=stages-1).
/// Solvability is guaranteed by projectivity of the source terms; failure is
/// an internal error.
pub fn lift_to_chain_map(
    f: &ModuleMorphism,
    res_m: &FreeResolution,
    res_n: &FreeResolution,
    stages: usize,
) -> ChainMap {
    assert!(res_m.length + 1 >= stages && res_n.length + 1 >= stages);
    let mut out: Vec<ModuleMorphism> = Vec::with_capacity(stages);
    for i in 0..stages {
        let (a, b) = if i == 0 {
            (
                res_n.augmentation.matrix.clone(),
                res_m.augmentation.matrix.mul(&f.matrix),
            )
        } else {
            (
                res_n.diffs[i - 1].matrix.clone(),
                res_m.diffs[i - 1].matrix.mul(&out[i - 1].matrix),
            )
        };
        let phi = solve_from_free(res_m.ranks[i], &res_n.frees[i], &a, &b)
            .expect("chain-map lift must exist out of a free module");
        out.push(phi);
    }
    ChainMap { base: f.clone(), stages: out }
}

/// Ω^i f: the restriction of the stage-(i-1) lift to the i-th syzygies.
pub fn syzygy_morphism(
    f: &ModuleMorphism,
    res_m: &FreeResolution,
    res_n: &FreeResolution,
    i: usize,
) -> ModuleMorphism {
    if i == 0 {
        return f.clone();
    }
    assert!(res_m.length >= i && res_n.length >= i);
    let chain = lift_to_chain_map(f, res_m, res_n, i);
    let (syz_m, incl_m) = &res_m.syzygies[i - 1];
    let (syz_n, incl_n) = &res_n.syzygies[i - 1];
    let mapped = incl_m.matrix.mul(&chain.stages[i - 1].matrix);
    let target_space = Subspace::from_rows(&incl_n.matrix);
    let p = f.source.p();
    let mut matrix = Mat::zero(syz_m.dim, syz_n.dim, p);
    for r in 0..syz_m.dim {
        let coords = target_space
            .coords(mapped.row(r))
            .expect("lift stage maps syzygy into syzygy");
        for (c, &v) in coords.iter().enumerate() {
            matrix.set(r, c, v);
        }
    }
    ModuleMorphism::new_unchecked(syz_m.clone(), syz_n.clone(), matrix)
}

/// Split-surjection test: M is projective iff its free cover splits.
/// Returns the splitting section as a witness when it exists.
pub fn is_projective(m: &ModuleRep) -> (bool, Option<ModuleMorphism>) {
    if m.is_zero() {
        return (true, None);
    }
    let cover = free_cover(m);
    let star = star_module(m);
    let ident = Mat::identity(m.dim, m.p());
    match solve_into_free(&star, m, cover.free.rank, &cover.projection.matrix, &ident) {
        Some(s) => (true, Some(s)),
        None => (false, None),
    }
}

/// M is injective iff D(M) is projective on the other side.
pub fn is_injective(m: &ModuleRep) -> bool {
    is_projective(&dual_module(m)).0
}

/// A monomorphism M ↪ E with E injective, realized through duality:
/// E = D(free cover of D(M)).
pub fn injective_envelope_embed(m: &ModuleRep) -> ModuleMorphism {
    let d = dual_module(m);
    let cover = free_cover(&d);
    let e = dual_module(&cover.free.rep);
    // M has exactly the representation of D(D(M)), so the dualized
    // projection applies to M directly.
    let embed = ModuleMorphism::new_unchecked(m.clone(), e, cover.projection.matrix.transpose());
    debug_assert!(embed.is_injective() || m.is_zero());
    embed
}

/// One step of the right half of a complete projective resolution:
/// K ↪ F* with F a free cover of K*, plus the cokernel.
#[derive(Debug, Clone)]
pub struct GpCosyzygy {
    pub embedding: ModuleMorphism,
    /// The projective middle term F* (star of a free module).
    pub middle: ModuleRep,
    pub cokernel: ModuleRep,
    pub coker_projection: ModuleMorphism,
}

pub fn gp_cosyzygy(k: &ModuleRep) -> Result<GpCosyzygy, ResolveError> {
    let (ev, star_k, dstar_k) = natural_eval_to_double_star(k);
    if k.dim != dstar_k.dim() || ev.matrix.rank() != k.dim {
        return Err(ResolveError::NotReflexive);
    }
    let cover = free_cover(&star_k.module);
    let star_free = star_module(&cover.free.rep);
    // contravariant star of the cover projection: K** → F*
    let pulled = star_map(&cover.projection, &star_free, &dstar_k);
    let embedding = compose(&ev, &pulled);
    debug_assert!(embedding.is_injective() || k.is_zero());
    let (cokernel, coker_projection) = cokernel_module(&embedding);
    Ok(GpCosyzygy {
        embedding,
        middle: star_free.module,
        cokernel,
        coker_projection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog_algebra;
    use crate::modules::regular_module;

    fn kx2() -> Arc<crate::algebra::Algebra> {
        catalog_algebra("truncated_poly 2", 2).unwrap()
    }

    fn trivial(side: Side) -> ModuleRep {
        let a = kx2();
        ModuleRep::new(a, side, 1, vec![Mat::identity(1, 2), Mat::zero(1, 1, 2)]).unwrap()
    }

    #[test]
    fn cover_of_regular_has_rank_one() {
        let a = kx2();
        let reg = regular_module(&a, Side::Right);
        let cover = free_cover(&reg);
        assert_eq!(cover.free.rank, 1);
        assert!(cover.projection.is_surjective());
    }

    #[test]
    fn cover_of_trivial_has_rank_one() {
        let cover = free_cover(&trivial(Side::Right));
        assert_eq!(cover.free.rank, 1);
        assert!(cover.projection.is_surjective());
    }

    #[test]
    fn cover_of_direct_sum_has_rank_two() {
        let k = trivial(Side::Right);
        let ds = crate::modules::direct_sum(&k, &k).unwrap();
        let cover = free_cover(&ds.module);
        assert_eq!(cover.free.rank, 2);
    }

    #[test]
    fn syzygy_of_free_is_zero() {
        let a = kx2();
        let f = free_module(&a, Side::Right, 2);
        let res = build_resolution(&f, 2, None);
        assert!(res.syzygy(1).is_zero());
        assert!(res.check_exact());
    }

    #[test]
    fn syzygy_of_trivial_is_periodic() {
        // over F_2[x]/(x²): Ω k ≅ k ≅ Ω² k
        let k = trivial(Side::Right);
        let res = build_resolution(&k, 3, None);
        assert_eq!(res.syzygy(1).dim, 1);
        assert_eq!(res.syzygy(2).dim, 1);
        assert!(res.syzygy(1).action[1].is_zero());
        assert!(res.check_exact());
    }

    #[test]
    fn lift_zero_morphism() {
        let k = trivial(Side::Right);
        let res = build_resolution(&k, 2, None);
        let f = ModuleMorphism::zero(k.clone(), k.clone());
        let omega_f = syzygy_morphism(&f, &res, &res, 1);
        assert!(omega_f.is_zero());
    }

    #[test]
    fn lift_projection_has_zero_syzygy_map() {
        // f: A ↠ k; ΩA = 0 so Ω¹f is the map 0 → k
        let a = kx2();
        let reg = regular_module(&a, Side::Right);
        let k = trivial(Side::Right);
        let f = ModuleMorphism::new(
            reg.clone(),
            k.clone(),
            Mat::from_rows(&[vec![1], vec![0]], 1, 2),
        )
        .unwrap();
        let res_a = build_resolution(&reg, 2, None);
        let res_k = build_resolution(&k, 2, None);
        let omega_f = syzygy_morphism(&f, &res_a, &res_k, 1);
        assert_eq!(omega_f.source.dim, 0);
        assert_eq!(omega_f.target.dim, 1);
    }

    #[test]
    fn projectivity_verdicts() {
        let a = kx2();
        let reg = regular_module(&a, Side::Right);
        let (proj, witness) = is_projective(&reg);
        assert!(proj);
        // the witness recomposes to the identity
        let cover = free_cover(&reg);
        let s = witness.unwrap();
        assert_eq!(
            s.matrix.mul(&cover.projection.matrix),
            Mat::identity(reg.dim, 2)
        );
        assert!(!is_projective(&trivial(Side::Right)).0);
        let field = catalog_algebra("field", 5).unwrap();
        let kf = regular_module(&field, Side::Right);
        assert!(is_projective(&kf).0);
    }

    #[test]
    fn self_injective_checks() {
        let a = kx2();
        let reg = regular_module(&a, Side::Right);
        assert!(is_injective(&reg));
        // simple projective over triangular_2 is not injective
        let t2 = catalog_algebra("triangular_2", 3).unwrap();
        let p = 3;
        // right module on e22-column: the projective simple P(2) = e22·A? use
        // the simple with e22 ↦ 1: as right module S2: e11↦0, e22↦1, e12↦0
        let s2 = ModuleRep::new(
            t2,
            Side::Right,
            1,
            vec![Mat::zero(1, 1, p), Mat::identity(1, p), Mat::zero(1, 1, p)],
        )
        .unwrap();
        assert!(is_projective(&s2).0);
        assert!(!is_injective(&s2));
    }

    #[test]
    fn envelope_of_trivial_is_socle_inclusion() {
        let k = trivial(Side::Right);
        let embed = injective_envelope_embed(&k);
        assert_eq!(embed.target.dim, 2);
        assert!(embed.is_injective());
        assert!(is_injective(&embed.target));
    }

    #[test]
    fn envelope_of_zero() {
        let a = kx2();
        let z = ModuleRep::zero(a, Side::Right);
        let embed = injective_envelope_embed(&z);
        assert_eq!(embed.target.dim, 0);
    }

    #[test]
    fn envelope_of_injective_splits() {
        let a = kx2();
        let reg = regular_module(&a, Side::Right);
        let embed = injective_envelope_embed(&reg);
        // a retraction exists: solve r with embed·r = id via the hom space
        let h = crate::modules::hom_space(&embed.target, &reg).unwrap();
        let p = 2u32;
        let found = (0..(1u32 << h.dim())).any(|mask| {
            let coords: Vec<u32> = (0..h.dim()).map(|t| (mask >> t) & 1).collect();
            let r = h.from_coords(&coords);
            embed.matrix.mul(&r) == Mat::identity(reg.dim, p)
        });
        assert!(found);
    }

    #[test]
    fn gp_cosyzygy_of_regular_has_zero_cokernel() {
        let a = kx2();
        let reg = regular_module(&a, Side::Right);
        let gc = gp_cosyzygy(&reg).unwrap();
        assert!(gc.cokernel.is_zero());
    }

    #[test]
    fn gp_cosyzygy_of_trivial_is_periodic() {
        // 0 → k → A → k → 0 over F_2[x]/(x²); iterating reproduces k
        let k = trivial(Side::Right);
        let gc = gp_cosyzygy(&k).unwrap();
        assert_eq!(gc.middle.dim, 2);
        assert_eq!(gc.cokernel.dim, 1);
        let gc2 = gp_cosyzygy(&gc.cokernel).unwrap();
        assert_eq!(gc2.cokernel.dim, 1);
        assert!(gc2.cokernel.action[1].is_zero());
    }

    #[test]
    fn gp_cosyzygy_rejects_non_reflexive() {
        let t2 = catalog_algebra("triangular_2", 3).unwrap();
        let p = 3;
        let s1 = ModuleRep::new(
            t2,
            Side::Right,
            1,
            vec![Mat::identity(1, p), Mat::zero(1, 1, p), Mat::zero(1, 1, p)],
        )
        .unwrap();
        assert_eq!(gp_cosyzygy(&s1).unwrap_err(), ResolveError::NotReflexive);
    }

    #[test]
    fn resolver_cache_consistency() {
        let k = trivial(Side::Right);
        let resolver = Resolver::default();
        let r1 = resolver.resolve(&k, 2);
        let fresh = build_resolution(&k, 2, None);
        assert_eq!(r1.ranks, fresh.ranks);
        for (a, b) in r1.diffs.iter().zip(&fresh.diffs) {
            assert_eq!(a.matrix, b.matrix);
        }
        // extension keeps the prefix
        let r2 = resolver.resolve(&k, 5);
        assert_eq!(&r2.ranks[..3], &r1.ranks[..]);
    }

    #[test]
    fn permuted_scan_still_exact() {
        let k = trivial(Side::Right);
        let ds = crate::modules::direct_sum(&k, &regular_module(&kx2(), Side::Right)).unwrap();
        for seed in [1u64, 7, 42] {
            let res = build_resolution(&ds.module, 3, Some(seed));
            assert!(res.check_exact());
        }
    }
}
