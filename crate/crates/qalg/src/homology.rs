//! Minimal projective presentations and resolutions, the translate given by
//! dualizing the transpose, extension spaces with explicit cocycles, and
//! chain lifting of homomorphisms.

use std::sync::Arc;

use crate::algebra::{AlgebraBasis, Elem};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::Vertex;
use crate::rep::{
    block_indices, cokernel, direct_sum, dual_to, hom_space, is_valid_hom, kernel,
    projective_cover_data, projective_hom, submodule, zero_module, Module, ModuleHom,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("global dimension exceeds the bound {0}")]
    GlobalDimensionTooHigh(usize),
    #[error("{0}")]
    NotComputable(String),
}

/// A minimal projective resolution P_k -> ... -> P_1 -> P_0 -> M -> 0,
/// computed far enough for the requested degree. `modules[i]` is P_i,
/// `diffs[i-1]` is d_i: P_i -> P_{i-1}, and `aug` is P_0 -> M. The vertex
/// lists record the indecomposable summands of each P_i in block order.
#[derive(Clone)]
pub struct Resolution<F: Field> {
    pub target: Module<F>,
    pub modules: Vec<Module<F>>,
    pub diffs: Vec<ModuleHom<F>>,
    pub aug: ModuleHom<F>,
    pub summands: Vec<Vec<Vertex>>,
}

/// Compute the minimal resolution out to P_len (so `modules.len() = len+1`
/// unless it terminates earlier with a zero syzygy).
pub fn resolution<F: Field>(m: &Module<F>, len: usize) -> Resolution<F> {
    let (p0, aug, verts0) = projective_cover_data(m);
    let mut modules = vec![p0];
    let mut summands = vec![verts0];
    let mut diffs: Vec<ModuleHom<F>> = Vec::new();
    // current syzygy as a submodule of the last P, with inclusion
    let (mut syz, mut incl) = kernel(&modules[0], &aug);
    for _ in 0..len {
        if syz.is_zero() {
            break;
        }
        let (p, cover, verts) = projective_cover_data(&syz);
        let d = cover.then(&incl);
        debug_assert!(is_valid_hom(&p, &modules[modules.len() - 1], &d));
        // ker d = ker cover since the inclusion is mono
        let (next_syz, next_incl) = kernel(&p, &d);
        modules.push(p);
        summands.push(verts);
        diffs.push(d);
        syz = next_syz;
        incl = next_incl;
    }
    Resolution { target: m.clone(), modules, diffs, aug, summands }
}

/// Projective dimension of M, if at most `bound`.
pub fn projective_dimension<F: Field>(m: &Module<F>, bound: usize) -> Option<usize> {
    if m.is_zero() {
        return Some(0);
    }
    let res = resolution(m, bound + 1);
    // pd = largest i with P_i nonzero where the resolution terminated
    let k = res.modules.len() - 1;
    let (last_syz, _) = if let Some(d) = res.diffs.last() {
        kernel(&res.modules[k], d)
    } else {
        kernel(&res.modules[0], &res.aug)
    };
    if last_syz.is_zero() {
        Some(k)
    } else {
        None
    }
}

/// Global dimension: the supremum of projective dimensions of the simples.
pub fn global_dimension<F: Field>(
    alg: &Arc<AlgebraBasis<F>>,
    bound: usize,
) -> Result<usize, HomologyError> {
    let mut gd = 0;
    for x in 0..alg.bq.quiver.vertex_count() {
        let s = crate::rep::simple(alg, Vertex(x));
        match projective_dimension(&s, bound) {
            Some(d) => gd = gd.max(d),
            None => return Err(HomologyError::GlobalDimensionTooHigh(bound)),
        }
    }
    Ok(gd)
}

// ---------------------------------------------------------------------------
// Transport to the opposite algebra, transpose, translate
// ---------------------------------------------------------------------------

/// Linear anti-isomorphism A -> A^op: a basis path maps to the class of the
/// reversed path. `op` must present the opposite quiver arrow-for-arrow.
pub fn transport_op<F: Field>(
    alg: &AlgebraBasis<F>,
    op: &AlgebraBasis<F>,
    e: &Elem<F>,
) -> Elem<F> {
    let mut out = vec![F::zero(op.params); op.dim];
    for (i, c) in e.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let p = &alg.paths[i];
        let rev = crate::quiver::Path {
            source: p.target,
            target: p.source,
            arrows: p.arrows.iter().rev().copied().collect(),
        };
        let cls = op.path_class(&rev);
        for k in 0..op.dim {
            out[k] = out[k].add(&c.mul(&cls[k]));
        }
    }
    out
}

/// The transpose of M: cokernel over the opposite algebra of the dualized
/// minimal presentation. The result has no nonzero projective summands and
/// vanishes exactly when M is projective.
pub fn transpose<F: Field>(m: &Module<F>, op: &Arc<AlgebraBasis<F>>) -> Module<F> {
    let alg = &m.alg;
    let res = resolution(m, 1);
    if res.modules.len() == 1 {
        // M is projective: minimal presentation has P_1 = 0.
        return zero_module(op).named(format!("Tr({})", m.name));
    }
    let p0_verts = &res.summands[0];
    let p1_verts = &res.summands[1];
    let d = &res.diffs[0];

    // Entries of the presentation: the map P(x_j) -> P(y_i) summand of d is
    // left multiplication by an element a_ji in e_{y_i} A e_{x_j}, read off
    // as the image of the j-th generator, split across the target summands.
    let mut entries: Vec<Vec<Elem<F>>> = Vec::new();
    for (j, &xj) in p1_verts.iter().enumerate() {
        // row of the generator e_{x_j} inside P_1's block at x_j
        let mut row = 0usize;
        for v in p1_verts[..j].iter() {
            row += block_indices(alg, *v, xj).len();
        }
        // the lazy path is first in its (x_j, x_j) block
        let img = d.blocks[xj.0].row_vec(row);
        // split img across the P(y_i) blocks at vertex x_j
        let mut per_i = Vec::new();
        let mut pos = 0usize;
        for &yi in p0_verts.iter() {
            let idxs = block_indices(alg, yi, xj);
            let mut el = vec![F::zero(alg.params); alg.dim];
            for &bi in &idxs {
                el[bi] = img[pos].clone();
                pos += 1;
            }
            per_i.push(el);
        }
        debug_assert_eq!(pos, img.len());
        entries.push(per_i);
    }

    // Build the dualized map over A^op: + P_op(y_i) -> + P_op(x_j), with
    // (i, j) component left multiplication (in A^op) by the transported a_ji.
    let parts0: Vec<Module<F>> =
        p0_verts.iter().map(|&y| crate::rep::projective(op, y)).collect();
    let parts1: Vec<Module<F>> =
        p1_verts.iter().map(|&x| crate::rep::projective(op, x)).collect();
    let (q0, _i0, p0proj) = direct_sum(&parts0, op);
    let (q1, i1, _p1proj) = direct_sum(&parts1, op);
    let mut total = ModuleHom::zero(&q0, &q1);
    for (i, &yi) in p0_verts.iter().enumerate() {
        for (j, &xj) in p1_verts.iter().enumerate() {
            let a_op = transport_op(alg, op, &entries[j][i]);
            let h = projective_hom(op, yi, xj, &a_op);
            debug_assert!(is_valid_hom(&parts0[i], &parts1[j], &h));
            let component = p0proj[i].then(&h).then(&i1[j]);
            total = total.add(&component);
        }
    }
    debug_assert!(is_valid_hom(&q0, &q1, &total));
    let (tr, _) = cokernel(&q1, &total);
    tr.named(format!("Tr({})", m.name))
}

/// The translate given by dualizing the transpose. Zero exactly on
/// projectives; computed from a minimal presentation, so projective direct
/// summands are discarded automatically.
pub fn tau<F: Field>(m: &Module<F>, op: &Arc<AlgebraBasis<F>>) -> Module<F> {
    let tr = transpose(m, op);
    dual_to(&tr, &m.alg).named(format!("tau({})", m.name))
}

/// The inverse translate: transpose of the dual. Zero exactly on injectives.
pub fn tau_inverse<F: Field>(m: &Module<F>, op: &Arc<AlgebraBasis<F>>) -> Module<F> {
    let dm = dual_to(m, op);
    let tr = transpose(&dm, &m.alg);
    tr.named(format!("tau^-1({})", m.name))
}

// ---------------------------------------------------------------------------
// Hom-space coordinates and extension spaces
// ---------------------------------------------------------------------------

/// Coordinates of a hom over a hom-space basis (None if outside the span).
fn hom_coords<F: Field>(
    basis: &[ModuleHom<F>],
    f: &ModuleHom<F>,
    params: F::Params,
) -> Option<Vec<F>> {
    if basis.is_empty() {
        let zero = f.is_zero();
        return zero.then_some(Vec::new());
    }
    let cols = basis[0].flatten().len();
    let mat = Matrix::from_rows(basis.iter().map(|b| b.flatten()).collect(), cols, params);
    let rhs = Matrix::from_rows(vec![f.flatten()], cols, params);
    let sol = mat.solve_left(&rhs)?;
    Some(sol.row_vec(0))
}

/// The space Ext^degree(M, N) together with explicit cocycle data.
pub struct ExtSpace<F: Field> {
    pub degree: usize,
    pub resolution: Resolution<F>,
    pub n: Module<F>,
    /// basis of Hom(P_degree, N)
    pub hom_basis: Vec<ModuleHom<F>>,
    /// rows: cocycles, in hom_basis coordinates
    pub cocycles: Matrix<F>,
    /// rows: coboundaries, in hom_basis coordinates
    pub coboundaries: Matrix<F>,
    /// representatives of an ext basis, in hom_basis coordinates
    pub reps: Vec<Vec<F>>,
}

impl<F: Field> ExtSpace<F> {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn rep_cocycle(&self, k: usize) -> ModuleHom<F> {
        self.from_coords(&self.reps[k])
    }

    pub fn from_coords(&self, coords: &[F]) -> ModuleHom<F> {
        let p = &self.resolution.modules[self.degree];
        let mut acc = ModuleHom::zero(p, &self.n);
        for (i, c) in coords.iter().enumerate() {
            acc = acc.add(&self.hom_basis[i].scale(c));
        }
        acc
    }

    /// Class coordinates of a cocycle over the chosen ext basis.
    pub fn class_of(&self, cocycle: &ModuleHom<F>) -> Option<Vec<F>> {
        let params = self.n.alg.params;
        let coords = hom_coords(&self.hom_basis, cocycle, params)?;
        if coords.is_empty() {
            return Some(vec![F::zero(params); self.dim()]);
        }
        let cols = self.hom_basis.len();
        // stack [coboundaries; reps] and solve
        let mut rows: Vec<Vec<F>> = Vec::new();
        for r in 0..self.coboundaries.rows() {
            rows.push(self.coboundaries.row_vec(r));
        }
        for r in &self.reps {
            rows.push(r.clone());
        }
        let nb = self.coboundaries.rows();
        let mat = Matrix::from_rows(rows, cols, params);
        let rhs = Matrix::from_rows(vec![coords], cols, params);
        let sol = mat.solve_left(&rhs)?;
        Some((0..self.reps.len()).map(|k| sol.at(0, nb + k).clone()).collect())
    }

    pub fn is_zero_class(&self, cocycle: &ModuleHom<F>) -> bool {
        match self.class_of(cocycle) {
            Some(c) => c.iter().all(|x| x.is_zero()),
            None => false,
        }
    }
}

/// Compute Ext^degree(M, N) with explicit cocycles (degree >= 1).
pub fn ext_space<F: Field>(m: &Module<F>, n: &Module<F>, degree: usize) -> ExtSpace<F> {
    assert!(degree >= 1, "use hom_space for degree 0");
    let params = m.alg.params;
    let res = resolution(m, degree + 1);
    let zero = zero_module(&m.alg);
    let p_deg = res.modules.get(degree).unwrap_or(&zero);
    let p_next = res.modules.get(degree + 1).unwrap_or(&zero);

    let p_prev = res.modules.get(degree - 1).unwrap_or(&zero);
    let hom_basis = hom_space(p_deg, n);
    let cols = hom_basis.len();
    // cocycles: g with (d_{degree+1} then g) = 0
    let mut cocycle_rows: Vec<Vec<F>> = Vec::new();
    if res.diffs.len() >= degree + 1 {
        let d_next = &res.diffs[degree]; // d_{degree+1}: P_{degree+1} -> P_degree
        let next_basis = hom_space(p_next, n);
        let map_rows: Vec<Vec<F>> = hom_basis
            .iter()
            .map(|g| {
                let comp = d_next.then(g);
                hom_coords(&next_basis, &comp, params).expect("composite lies in hom space")
            })
            .collect();
        let flat_cols = next_basis.len();
        let mat = Matrix::from_rows(map_rows, flat_cols, params);
        let ker = mat.left_kernel();
        for r in 0..ker.rows() {
            cocycle_rows.push(ker.row_vec(r));
        }
    } else {
        // resolution stopped: everything is a cocycle
        for i in 0..cols {
            let mut row = vec![F::zero(params); cols];
            row[i] = F::one(params);
            cocycle_rows.push(row);
        }
    }
    let cocycles = Matrix::from_rows(cocycle_rows, cols, params).row_basis();

    // coboundaries: f then ... for f in Hom(P_{degree-1}, N): d_degree then f
    let mut cob_rows: Vec<Vec<F>> = Vec::new();
    if res.diffs.len() >= degree {
        let d = &res.diffs[degree - 1]; // d_degree: P_degree -> P_{degree-1}
        for f in hom_space(p_prev, n) {
            let comp = d.then(&f);
            cob_rows
                .push(hom_coords(&hom_basis, &comp, params).expect("coboundary lies in hom space"));
        }
    }
    let coboundaries = Matrix::from_rows(cob_rows, cols, params).row_basis();

    // ext basis: cocycle rows independent modulo coboundaries
    let mut reps: Vec<Vec<F>> = Vec::new();
    let mut accum = coboundaries.clone();
    for r in 0..cocycles.rows() {
        let row = cocycles.row_vec(r);
        let probe = Matrix::from_rows(vec![row.clone()], cols, params);
        if !accum.row_space_contains(&probe) {
            accum.push_row(row.clone());
            accum = accum.row_basis();
            reps.push(row);
        }
    }

    ExtSpace { degree, resolution: res, n: n.clone(), hom_basis, cocycles, coboundaries, reps }
}

pub fn ext_dim<F: Field>(m: &Module<F>, n: &Module<F>, degree: usize) -> usize {
    ext_space(m, n, degree).dim()
}

// ---------------------------------------------------------------------------
// Short exact sequences from degree-one cocycles
// ---------------------------------------------------------------------------

/// A short exact sequence 0 -> left -> mid -> right -> 0.
#[derive(Clone)]
pub struct ShortExact<F: Field> {
    pub left: Module<F>,
    pub mid: Module<F>,
    pub right: Module<F>,
    pub incl: ModuleHom<F>,
    pub proj: ModuleHom<F>,
}

impl<F: Field> ShortExact<F> {
    pub fn verify(&self) -> Result<(), String> {
        if !is_valid_hom(&self.left, &self.mid, &self.incl) {
            return Err("inclusion is not a homomorphism".into());
        }
        if !is_valid_hom(&self.mid, &self.right, &self.proj) {
            return Err("projection is not a homomorphism".into());
        }
        if !self.incl.is_mono() {
            return Err("inclusion is not injective".into());
        }
        if !self.proj.is_epi() {
            return Err("projection is not surjective".into());
        }
        if !self.incl.then(&self.proj).is_zero() {
            return Err("composite is nonzero".into());
        }
        if self.mid.total_dim() != self.left.total_dim() + self.right.total_dim() {
            return Err("middle dimension mismatch".into());
        }
        Ok(())
    }
}

/// Realize a degree-one cocycle g: P_1 -> N as an extension of M by N via
/// the pushout of N <- P_1 -> P_0.
pub fn realize_extension<F: Field>(ext: &ExtSpace<F>, cocycle: &ModuleHom<F>) -> ShortExact<F> {
    assert_eq!(ext.degree, 1);
    let res = &ext.resolution;
    let m = &res.target;
    let n = &ext.n;
    let alg = &m.alg;
    let params = alg.params;
    let p0 = &res.modules[0];
    let zero = zero_module(alg);
    let p1 = res.modules.get(1).unwrap_or(&zero);
    let d1 = res.diffs.first();

    let (sum, incls, projs) = direct_sum(&[n.clone(), p0.clone()], alg);
    // graph subspace {(w g, -w d1) : w in P_1}
    let mut subspaces: Vec<Matrix<F>> = Vec::new();
    for y in 0..alg.bq.quiver.vertex_count() {
        let mut rows: Matrix<F> = Matrix::zero(0, sum.dims[y], params);
        if let Some(d1) = d1 {
            for w in 0..p1.dims[y] {
                let mut row = vec![F::zero(params); sum.dims[y]];
                for j in 0..n.dims[y] {
                    row[j] = cocycle.blocks[y].at(w, j).clone();
                }
                for j in 0..p0.dims[y] {
                    row[n.dims[y] + j] = d1.blocks[y].at(w, j).neg();
                }
                rows.push_row(row);
            }
        }
        subspaces.push(rows.row_basis());
    }
    // the graph is a submodule because g and d1 are homomorphisms
    if cfg!(debug_assertions) {
        let _ = submodule(&sum, &subspaces);
    }
    let (mid, quot) = crate::rep::quotient_module(&sum, &subspaces);
    let incl = incls[0].then(&quot);
    // mid -> M: lift along any section of quot, then project to P_0, then aug
    let mut proj_blocks = Vec::new();
    for y in 0..alg.bq.quiver.vertex_count() {
        let (_c, _projection, section) = subspaces[y].quotient_data();
        let to_m = projs[1].blocks[y].mul(&res.aug.blocks[y]);
        proj_blocks.push(section.mul(&to_m));
    }
    let proj = ModuleHom { blocks: proj_blocks };
    let se = ShortExact {
        left: n.clone(),
        mid: mid.named(format!("ext({}, {})", m.name, n.name)),
        right: m.clone(),
        incl,
        proj,
    };
    debug_assert_eq!(se.verify(), Ok(()));
    se
}

// ---------------------------------------------------------------------------
// Chain lifting and functoriality
// ---------------------------------------------------------------------------

/// Lift phi: M -> M' through resolutions of M and M' (both resolved at least
/// to `degree`): returns phi_0..phi_degree with phi_i then d_i = d_i then
/// phi_{i-1} and phi_0 then aug' = aug then phi.
pub fn lift_hom<F: Field>(
    res: &Resolution<F>,
    res2: &Resolution<F>,
    phi: &ModuleHom<F>,
    degree: usize,
) -> Vec<ModuleHom<F>> {
    let params = res.target.alg.params;
    let zero = zero_module(&res.target.alg);
    let mut lifts: Vec<ModuleHom<F>> = Vec::new();
    for i in 0..=degree {
        let pi = res.modules.get(i).unwrap_or(&zero);
        let pi2 = res2.modules.get(i).unwrap_or(&zero);
        // previous object on the primed side: M' for i = 0, else P'_{i-1}
        let prev2 = if i == 0 { &res2.target } else { res2.modules.get(i - 1).unwrap_or(&zero) };
        // the square to fill: g then edge2 = target, where edge2 is aug' or
        // d'_i and target is (aug then phi) or (d_i then phi_{i-1})
        let target = if i == 0 {
            res.aug.then(phi)
        } else {
            match res.diffs.get(i - 1) {
                Some(d) => d.then(&lifts[i - 1]),
                None => ModuleHom::zero(pi, prev2),
            }
        };
        let edge2 = |g: &ModuleHom<F>| -> ModuleHom<F> {
            if i == 0 {
                g.then(&res2.aug)
            } else {
                match res2.diffs.get(i - 1) {
                    Some(d2) => g.then(d2),
                    None => ModuleHom::zero(pi, prev2),
                }
            }
        };
        let candidates = hom_space(pi, pi2);
        let target_basis = hom_space(pi, prev2);
        let rows: Vec<Vec<F>> = candidates
            .iter()
            .map(|g| {
                hom_coords(&target_basis, &edge2(g), params).expect("composite in hom space")
            })
            .collect();
        let tcoords = hom_coords(&target_basis, &target, params)
            .expect("lift target lies in the hom space");
        let cols = target_basis.len();
        let mat = Matrix::from_rows(rows, cols, params);
        let rhs = Matrix::from_rows(vec![tcoords], cols, params);
        let sol = mat.solve_left(&rhs).expect("projectivity guarantees a lift");
        let mut acc = ModuleHom::zero(pi, pi2);
        for (k, c) in sol.row_vec(0).iter().enumerate() {
            acc = acc.add(&candidates[k].scale(c));
        }
        lifts.push(acc);
    }
    lifts
}

/// Action of phi: M -> M on Ext^d(M, N) by precomposition with a chain lift:
/// on cocycles, [g] maps to [phi_d then g].
pub fn ext_functorial_action<F: Field>(
    ext: &ExtSpace<F>,
    phi: &ModuleHom<F>,
) -> Matrix<F> {
    let params = ext.n.alg.params;
    let lifts = lift_hom(&ext.resolution, &ext.resolution, phi, ext.degree);
    let phi_d = &lifts[ext.degree];
    let mut rows = Vec::new();
    for k in 0..ext.dim() {
        let g = ext.rep_cocycle(k);
        let moved = phi_d.then(&g);
        let cls = ext.class_of(&moved).expect("moved cocycle is a cocycle");
        rows.push(cls);
    }
    Matrix::from_rows(rows, ext.dim(), params)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::compute_basis;
    use crate::dsl::parse_bound_quiver;
    use crate::rep::{injective, is_injective, is_projective, projective, simple};
    use num_rational::BigRational;

    fn alg_of(text: &str) -> Arc<AlgebraBasis<BigRational>> {
        Arc::new(compute_basis(&parse_bound_quiver::<BigRational>(text, ()).unwrap()).unwrap())
    }

    fn motivating_c() -> Arc<AlgebraBasis<BigRational>> {
        alg_of(
            "algebra c\nvertices 1 2 3 4\narrow alpha: 4 -> 2\narrow beta: 2 -> 1\narrow gamma: 4 -> 3\narrow delta: 3 -> 1\nrelations\nalpha*beta = 0\ngamma*delta = 0\n",
        )
    }

    #[test]
    fn resolution_of_simple_terminates() {
        let alg = motivating_c();
        let s1 = simple(&alg, Vertex(0));
        assert!(is_projective(&s1), "vertex 1 is a sink");
        assert_eq!(projective_dimension(&s1, 6), Some(0));
        let s2 = simple(&alg, Vertex(1));
        assert_eq!(projective_dimension(&s2, 6), Some(1), "rad P(2) = S(1) is projective");
        let s4 = simple(&alg, Vertex(3));
        assert_eq!(projective_dimension(&s4, 6), Some(2));
        assert_eq!(global_dimension(&alg, 6), Ok(2));
    }

    #[test]
    fn tau_kills_projectives_and_nothing_else() {
        let alg = motivating_c();
        let op = Arc::new(alg.opposite().unwrap());
        for x in 0..4 {
            let p = projective(&alg, Vertex(x));
            assert!(tau(&p, &op).is_zero(), "tau P({}) = 0", x + 1);
            let i = injective(&alg, Vertex(x));
            assert!(tau_inverse(&i, &op).is_zero(), "tau^-1 I({}) = 0", x + 1);
        }
        let s2 = simple(&alg, Vertex(1));
        let t = tau(&s2, &op);
        assert!(!t.is_zero(), "S(2) is not projective");
        t.validate().unwrap();
    }

    #[test]
    fn tau_inverse_tau_identity_off_projectives() {
        let alg = motivating_c();
        let op = Arc::new(alg.opposite().unwrap());
        let s2 = simple(&alg, Vertex(1));
        let t = tau(&s2, &op);
        let back = tau_inverse(&t, &op);
        assert_eq!(back.total_dim(), s2.total_dim());
        assert_eq!(back.dims, s2.dims, "tau^-1 tau S(2) has the dimension vector of S(2)");
        assert_eq!(hom_space(&back, &s2).len(), 1);
    }

    #[test]
    fn ext_of_simples_counts_arrows_and_relations() {
        let alg = motivating_c();
        // dim Ext^1(S_x, S_y) = number of arrows x -> y
        let s4 = simple(&alg, Vertex(3));
        let s2 = simple(&alg, Vertex(1));
        let s1 = simple(&alg, Vertex(0));
        assert_eq!(ext_dim(&s4, &s2, 1), 1, "one arrow 4 -> 2");
        assert_eq!(ext_dim(&s4, &s1, 1), 0, "no arrow 4 -> 1");
        // dim Ext^2(S_x, S_y) = number of relations from x to y
        assert_eq!(ext_dim(&s4, &s1, 2), 2, "two relations from 4 to 1");
        assert_eq!(ext_dim(&s2, &s1, 1), 1);
    }

    #[test]
    fn realize_nonsplit_extension() {
        let alg = motivating_c();
        let s4 = simple(&alg, Vertex(3));
        let s2 = simple(&alg, Vertex(1));
        let ext = ext_space(&s4, &s2, 1);
        assert_eq!(ext.dim(), 1);
        let g = ext.rep_cocycle(0);
        let se = realize_extension(&ext, &g);
        se.verify().unwrap();
        // the middle is the uniserial with top S(4), socle S(2)... vertices
        // here: S(3) = vertex index 3, S(1) = index 1: dims (0,1,0,1)
        assert_eq!(se.mid.dims, vec![0, 1, 0, 1]);
        // nonsplit: Hom(M, S(2)) embeds... simplest: the middle is
        // indecomposable, so Hom(mid, s2ops)... check rad: top is S(4) only
        assert_eq!(se.mid.top_dims(), vec![0, 0, 0, 1], "nonsplit extension is uniserial");
    }

    #[test]
    fn realizing_zero_cocycle_splits() {
        let alg = motivating_c();
        let s4 = simple(&alg, Vertex(3));
        let s2 = simple(&alg, Vertex(1));
        let ext = ext_space(&s4, &s2, 1);
        let zero = ModuleHom::zero(&ext.resolution.modules[1], &s2);
        let se = realize_extension(&ext, &zero);
        se.verify().unwrap();
        assert_eq!(se.mid.top_dims(), vec![0, 1, 0, 1], "split middle has two tops");
    }

    #[test]
    fn injectivity_detection() {
        let alg = motivating_c();
        let op = Arc::new(alg.opposite().unwrap());
        assert!(is_injective(&injective(&alg, Vertex(0)), &op));
        assert!(!is_injective(&projective(&alg, Vertex(3)), &op), "P(4) is not injective");
    }

    #[test]
    fn lift_identity_acts_as_identity_on_ext() {
        let alg = motivating_c();
        let s4 = simple(&alg, Vertex(3));
        let s2 = simple(&alg, Vertex(1));
        let ext = ext_space(&s4, &s2, 1);
        let act = ext_functorial_action(&ext, &ModuleHom::identity(&s4));
        assert_eq!(act, Matrix::identity(ext.dim(), ()));
    }
}
