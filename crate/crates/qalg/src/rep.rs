//! Finite dimensional right modules over a bound quiver algebra, given as
//! representations: a vector space per vertex and a matrix per arrow.
//!
//! Conventions: modules are right modules, elements are row vectors, and a
//! map between modules multiplies on the right. The matrix of an arrow
//! a: x -> y sends the block at x to the block at y. The total space of a
//! module concatenates the vertex blocks in vertex order.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraBasis, Elem};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{Arrow, Path, Vertex};

#[derive(Clone)]
pub struct Module<F: Field> {
    pub alg: Arc<AlgebraBasis<F>>,
    pub dims: Vec<usize>,
    /// one matrix per arrow: dims[source] x dims[target]
    pub maps: Vec<Matrix<F>>,
    pub name: String,
}

impl<F: Field> fmt::Debug for Module<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} dim {:?}", self.name, self.dims)
    }
}

/// A homomorphism of modules, one block per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleHom<F: Field> {
    pub blocks: Vec<Matrix<F>>,
}

pub fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    for &d in dims {
        out.push(acc);
        acc += d;
    }
    out.push(acc);
    out
}

impl<F: Field> Module<F> {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dimension_vector(&self) -> &[usize] {
        &self.dims
    }

    /// Check that every relation of the algebra acts by zero.
    pub fn validate(&self) -> Result<(), String> {
        let q = &self.alg.bq.quiver;
        if self.dims.len() != q.vertex_count() || self.maps.len() != q.arrow_count() {
            return Err("block count mismatch".into());
        }
        for a in 0..q.arrow_count() {
            let m = &self.maps[a];
            let (s, t) = (q.source(Arrow(a)).0, q.target(Arrow(a)).0);
            if m.rows() != self.dims[s] || m.cols() != self.dims[t] {
                return Err(format!("arrow {} block has wrong shape", q.arrow_label(Arrow(a))));
            }
        }
        for rel in &self.alg.bq.relations {
            let Some((src, tgt)) = rel.endpoints() else { continue };
            let mut acc: Matrix<F> =
                Matrix::zero(self.dims[src.0], self.dims[tgt.0], self.alg.params);
            for (c, p) in &rel.terms {
                acc = acc.add(&self.path_action(p).scale(c));
            }
            if !acc.is_zero() {
                return Err("a relation does not act by zero".into());
            }
        }
        Ok(())
    }

    /// Matrix of the action of a path, from its source block to its target
    /// block.
    pub fn path_action(&self, p: &Path) -> Matrix<F> {
        let mut m = Matrix::identity(self.dims[p.source.0], self.alg.params);
        for &a in &p.arrows {
            m = m.mul(&self.maps[a.0]);
        }
        m
    }

    /// Action of an algebra element on the total space (row convention).
    pub fn action_matrix(&self, e: &Elem<F>) -> Matrix<F> {
        let off = offsets(&self.dims);
        let n = self.total_dim();
        let mut out: Matrix<F> = Matrix::zero(n, n, self.alg.params);
        for (i, c) in e.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.alg.paths[i];
            let block = self.path_action(p);
            let (s, t) = (p.source.0, p.target.0);
            for r in 0..block.rows() {
                for k in 0..block.cols() {
                    let cur = out.at(off[s] + r, off[t] + k).add(&c.mul(block.at(r, k)));
                    out.set(off[s] + r, off[t] + k, cur);
                }
            }
        }
        out
    }

    /// The radical subspaces rad(M)_y = sum of images of arrows into y.
    pub fn radical_subspaces(&self) -> Vec<Matrix<F>> {
        let q = &self.alg.bq.quiver;
        (0..q.vertex_count())
            .map(|y| {
                let mut rows: Matrix<F> = Matrix::zero(0, self.dims[y], self.alg.params);
                for a in 0..q.arrow_count() {
                    if q.target(Arrow(a)).0 == y {
                        for r in 0..self.maps[a].rows() {
                            rows.push_row(self.maps[a].row_vec(r));
                        }
                    }
                }
                rows.row_basis()
            })
            .collect()
    }

    /// The socle subspaces soc(M)_y = joint kernel of all arrows out of y.
    pub fn socle_subspaces(&self) -> Vec<Matrix<F>> {
        let q = &self.alg.bq.quiver;
        (0..q.vertex_count())
            .map(|y| {
                let mut current = Matrix::identity(self.dims[y], self.alg.params);
                for a in 0..q.arrow_count() {
                    if q.source(Arrow(a)).0 == y {
                        let restricted = current.mul(&self.maps[a]);
                        let ker = restricted.left_kernel();
                        current = ker.mul(&current);
                    }
                }
                current.row_basis()
            })
            .collect()
    }

    /// Dimension vector of the top M / rad M.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_subspaces()
            .iter()
            .enumerate()
            .map(|(y, r)| self.dims[y] - r.rows())
            .collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle_subspaces().iter().map(|s| s.rows()).collect()
    }
}

// ---------------------------------------------------------------------------
// Standard modules
// ---------------------------------------------------------------------------

/// Basis indices of e_x A e_y inside the algebra basis.
pub fn block_indices<F: Field>(alg: &AlgebraBasis<F>, x: Vertex, y: Vertex) -> Vec<usize> {
    (0..alg.dim)
        .filter(|&i| alg.paths[i].source == x && alg.paths[i].target == y)
        .collect()
}

/// The indecomposable projective P(x) = e_x A.
pub fn projective<F: Field>(alg: &Arc<AlgebraBasis<F>>, x: Vertex) -> Module<F> {
    let q = &alg.bq.quiver;
    let params = alg.params;
    let blocks: Vec<Vec<usize>> =
        (0..q.vertex_count()).map(|y| block_indices(alg, x, Vertex(y))).collect();
    let dims: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let (s, t) = (q.source(Arrow(a)).0, q.target(Arrow(a)).0);
        let mut m: Matrix<F> = Matrix::zero(dims[s], dims[t], params);
        for (r, &i) in blocks[s].iter().enumerate() {
            // class(p_i * arrow), expanded in the target block
            let aj = alg.arrow_elem[a];
            for (k, c) in &alg.table[i][aj] {
                let col = blocks[t].iter().position(|&b| b == *k).expect("product stays in block");
                m.set(r, col, c.clone());
            }
        }
        maps.push(m);
    }
    Module { alg: alg.clone(), dims, maps, name: format!("P({})", q.label(x)) }
}

/// The indecomposable injective I(x) = D(A e_x).
pub fn injective<F: Field>(alg: &Arc<AlgebraBasis<F>>, x: Vertex) -> Module<F> {
    let q = &alg.bq.quiver;
    let params = alg.params;
    let blocks: Vec<Vec<usize>> =
        (0..q.vertex_count()).map(|y| block_indices(alg, Vertex(y), x)).collect();
    let dims: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let (s, t) = (q.source(Arrow(a)).0, q.target(Arrow(a)).0);
        // (delta_p * a)(q) = delta_p(a q) for p: s -> x, q: t -> x, so the
        // matrix entry [p][q] is the coefficient of p in class(a * q).
        let mut m: Matrix<F> = Matrix::zero(dims[s], dims[t], params);
        let ai = alg.arrow_elem[a];
        for (col, &j) in blocks[t].iter().enumerate() {
            for (k, c) in &alg.table[ai][j] {
                if let Some(row) = blocks[s].iter().position(|&b| b == *k) {
                    m.set(row, col, c.clone());
                }
            }
        }
        maps.push(m);
    }
    Module { alg: alg.clone(), dims, maps, name: format!("I({})", q.label(x)) }
}

/// The homomorphism P(x) -> P(y) sending the generator e_x to the element
/// `g`, which must lie in e_y A e_x. A path class p of P(x) maps to g * p.
pub fn projective_hom<F: Field>(
    alg: &Arc<AlgebraBasis<F>>,
    x: Vertex,
    y: Vertex,
    g: &Elem<F>,
) -> ModuleHom<F> {
    let q = &alg.bq.quiver;
    let params = alg.params;
    let mut blocks = Vec::with_capacity(q.vertex_count());
    for z in 0..q.vertex_count() {
        let src_paths = block_indices(alg, x, Vertex(z));
        let tgt_paths = block_indices(alg, y, Vertex(z));
        let mut b: Matrix<F> = Matrix::zero(src_paths.len(), tgt_paths.len(), params);
        for (r, &pi) in src_paths.iter().enumerate() {
            let prod = alg.mul_elems(g, &alg.basis_elem(pi));
            for (col, &ti) in tgt_paths.iter().enumerate() {
                b.set(r, col, prod[ti].clone());
            }
        }
        blocks.push(b);
    }
    ModuleHom { blocks }
}

/// The homomorphism I(x) -> I(y) determined by the element `g` in e_y A e_x:
/// on dual bases it sends delta_q (q a path into x) to the functional
/// p |-> coefficient of q in class(p * g). For g = e_x this is the identity.
pub fn injective_hom<F: Field>(
    alg: &Arc<AlgebraBasis<F>>,
    x: Vertex,
    y: Vertex,
    g: &Elem<F>,
) -> ModuleHom<F> {
    let q = &alg.bq.quiver;
    let params = alg.params;
    let mut blocks = Vec::with_capacity(q.vertex_count());
    for z in 0..q.vertex_count() {
        let src_paths = block_indices(alg, Vertex(z), x);
        let tgt_paths = block_indices(alg, Vertex(z), y);
        let mut b: Matrix<F> = Matrix::zero(src_paths.len(), tgt_paths.len(), params);
        for (col, &pi) in tgt_paths.iter().enumerate() {
            let prod = alg.mul_elems(&alg.basis_elem(pi), g);
            for (r, &qi) in src_paths.iter().enumerate() {
                b.set(r, col, prod[qi].clone());
            }
        }
        blocks.push(b);
    }
    ModuleHom { blocks }
}

/// The simple module at a vertex.
pub fn simple<F: Field>(alg: &Arc<AlgebraBasis<F>>, x: Vertex) -> Module<F> {
    let q = &alg.bq.quiver;
    let params = alg.params;
    let dims: Vec<usize> = (0..q.vertex_count()).map(|y| usize::from(y == x.0)).collect();
    let maps = (0..q.arrow_count())
        .map(|a| {
            Matrix::zero(dims[q.source(Arrow(a)).0], dims[q.target(Arrow(a)).0], params)
        })
        .collect();
    Module { alg: alg.clone(), dims, maps, name: format!("S({})", q.label(x)) }
}

pub fn zero_module<F: Field>(alg: &Arc<AlgebraBasis<F>>) -> Module<F> {
    let q = &alg.bq.quiver;
    let dims = vec![0; q.vertex_count()];
    let maps = (0..q.arrow_count()).map(|_| Matrix::zero(0, 0, alg.params)).collect();
    Module { alg: alg.clone(), dims, maps, name: "0".into() }
}

/// Direct sum with the canonical inclusions and projections.
pub fn direct_sum<F: Field>(
    parts: &[Module<F>],
    alg: &Arc<AlgebraBasis<F>>,
) -> (Module<F>, Vec<ModuleHom<F>>, Vec<ModuleHom<F>>) {
    let q = &alg.bq.quiver;
    let params = alg.params;
    let dims: Vec<usize> =
        (0..q.vertex_count()).map(|y| parts.iter().map(|p| p.dims[y]).sum()).collect();
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let blocks: Vec<&Matrix<F>> = parts.iter().map(|p| &p.maps[a]).collect();
        maps.push(Matrix::block_diag(&blocks, params));
    }
    let name = if parts.is_empty() {
        "0".to_string()
    } else {
        parts.iter().map(|p| p.name.clone()).collect::<Vec<_>>().join(" + ")
    };
    let sum = Module { alg: alg.clone(), dims: dims.clone(), maps, name };
    let mut incls = Vec::new();
    let mut projs = Vec::new();
    for (idx, part) in parts.iter().enumerate() {
        let mut iblocks = Vec::new();
        let mut pblocks = Vec::new();
        for y in 0..q.vertex_count() {
            let before: usize = parts[..idx].iter().map(|p| p.dims[y]).sum();
            let mut inc: Matrix<F> = Matrix::zero(part.dims[y], dims[y], params);
            let mut prj: Matrix<F> = Matrix::zero(dims[y], part.dims[y], params);
            for r in 0..part.dims[y] {
                inc.set(r, before + r, F::one(params));
                prj.set(before + r, r, F::one(params));
            }
            iblocks.push(inc);
            pblocks.push(prj);
        }
        incls.push(ModuleHom { blocks: iblocks });
        projs.push(ModuleHom { blocks: pblocks });
    }
    (sum, incls, projs)
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

impl<F: Field> ModuleHom<F> {
    pub fn zero(m: &Module<F>, n: &Module<F>) -> Self {
        let blocks = (0..m.dims.len())
            .map(|y| Matrix::zero(m.dims[y], n.dims[y], m.alg.params))
            .collect();
        ModuleHom { blocks }
    }

    pub fn identity(m: &Module<F>) -> Self {
        let blocks = (0..m.dims.len()).map(|y| Matrix::identity(m.dims[y], m.alg.params)).collect();
        ModuleHom { blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    /// self then g (apply self first).
    pub fn then(&self, g: &ModuleHom<F>) -> ModuleHom<F> {
        let blocks =
            self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.mul(b)).collect();
        ModuleHom { blocks }
    }

    pub fn add(&self, g: &ModuleHom<F>) -> ModuleHom<F> {
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleHom { blocks }
    }

    pub fn sub(&self, g: &ModuleHom<F>) -> ModuleHom<F> {
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.sub(b)).collect();
        ModuleHom { blocks }
    }

    pub fn scale(&self, c: &F) -> ModuleHom<F> {
        ModuleHom { blocks: self.blocks.iter().map(|b| b.scale(c)).collect() }
    }

    pub fn neg(&self) -> ModuleHom<F> {
        ModuleHom { blocks: self.blocks.iter().map(|b| b.neg()).collect() }
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.rank() == b.rows())
    }

    pub fn is_mono(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_epi(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    /// Flatten the blocks into one vector (for linear algebra on hom spaces).
    pub fn flatten(&self) -> Vec<F> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    out.push(b.at(i, j).clone());
                }
            }
        }
        out
    }

    pub fn unflatten(m: &Module<F>, n: &Module<F>, data: &[F]) -> Self {
        let mut blocks = Vec::new();
        let mut pos = 0;
        for y in 0..m.dims.len() {
            let mut b: Matrix<F> = Matrix::zero(m.dims[y], n.dims[y], m.alg.params);
            for i in 0..m.dims[y] {
                for j in 0..n.dims[y] {
                    b.set(i, j, data[pos].clone());
                    pos += 1;
                }
            }
            blocks.push(b);
        }
        ModuleHom { blocks }
    }
}

/// Check the commuting conditions of a hom from m to n.
pub fn is_valid_hom<F: Field>(m: &Module<F>, n: &Module<F>, f: &ModuleHom<F>) -> bool {
    let q = &m.alg.bq.quiver;
    for a in 0..q.arrow_count() {
        let (s, t) = (q.source(Arrow(a)).0, q.target(Arrow(a)).0);
        let lhs = m.maps[a].mul(&f.blocks[t]);
        let rhs = f.blocks[s].mul(&n.maps[a]);
        if lhs.sub(&rhs).is_zero() {
            continue;
        }
        return false;
    }
    true
}

/// Basis of the space of homomorphisms from m to n.
pub fn hom_space<F: Field>(m: &Module<F>, n: &Module<F>) -> Vec<ModuleHom<F>> {
    let q = &m.alg.bq.quiver;
    let params = m.alg.params;
    let nv = q.vertex_count();
    // Unknowns: entries of each vertex block, flattened in vertex order.
    let mut unknown_offset = vec![0usize; nv + 1];
    for y in 0..nv {
        unknown_offset[y + 1] = unknown_offset[y] + m.dims[y] * n.dims[y];
    }
    let unknowns = unknown_offset[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    // Equations: for each arrow a: s -> t, M_a f_t - f_s N_a = 0.
    let mut eq_cols = 0;
    for a in 0..q.arrow_count() {
        let (s, t) = (q.source(Arrow(a)).0, q.target(Arrow(a)).0);
        eq_cols += m.dims[s] * n.dims[t];
    }
    let mut coeff: Matrix<F> = Matrix::zero(unknowns, eq_cols, params);
    let mut eq_base = 0;
    for a in 0..q.arrow_count() {
        let (s, t) = (q.source(Arrow(a)).0, q.target(Arrow(a)).0);
        for p in 0..m.dims[s] {
            for qq in 0..n.dims[t] {
                let eq = eq_base + p * n.dims[t] + qq;
                // + (M_a)[p,i] * f_t[i,qq]
                for i in 0..m.dims[t] {
                    let c = m.maps[a].at(p, i);
                    if !c.is_zero() {
                        let u = unknown_offset[t] + i * n.dims[t] + qq;
                        coeff.set(u, eq, coeff.at(u, eq).add(c));
                    }
                }
                // - f_s[p,j] * (N_a)[j,qq]
                for j in 0..n.dims[s] {
                    let c = n.maps[a].at(j, qq);
                    if !c.is_zero() {
                        let u = unknown_offset[s] + p * n.dims[s] + j;
                        coeff.set(u, eq, coeff.at(u, eq).sub(c));
                    }
                }
            }
        }
        eq_base += m.dims[s] * n.dims[t];
    }
    let kernel = coeff.left_kernel();
    (0..kernel.rows())
        .map(|r| ModuleHom::unflatten(m, n, &kernel.row_vec(r)))
        .collect()
}

pub fn hom_dim<F: Field>(m: &Module<F>, n: &Module<F>) -> usize {
    hom_space(m, n).len()
}

// ---------------------------------------------------------------------------
// Sub, quotient, kernel, image, cokernel
// ---------------------------------------------------------------------------

/// Build the submodule spanned by the given row subspaces (must be closed
/// under the arrow maps), with its inclusion.
pub fn submodule<F: Field>(
    m: &Module<F>,
    subspaces: &[Matrix<F>],
) -> (Module<F>, ModuleHom<F>) {
    let q = &m.alg.bq.quiver;
    let bases: Vec<Matrix<F>> = subspaces.iter().map(|s| s.row_basis()).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.rows()).collect();
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let (s, t) = (q.source(Arrow(a)).0, q.target(Arrow(a)).0);
        let image = bases[s].mul(&m.maps[a]);
        let expr = bases[t]
            .solve_left(&image)
            .expect("subspaces must be closed under the arrow maps");
        debug_assert_eq!((expr.rows(), expr.cols()), (dims[s], dims[t]));
        maps.push(expr);
    }
    let sub = Module { alg: m.alg.clone(), dims, maps, name: format!("sub({})", m.name) };
    let incl = ModuleHom { blocks: bases };
    (sub, incl)
}

/// Quotient by the given row subspaces (must be closed under the arrows),
/// with its projection.
pub fn quotient_module<F: Field>(
    m: &Module<F>,
    subspaces: &[Matrix<F>],
) -> (Module<F>, ModuleHom<F>) {
    let q = &m.alg.bq.quiver;
    let mut projections = Vec::new();
    let mut sections = Vec::new();
    let mut dims = Vec::new();
    for y in 0..q.vertex_count() {
        let (_complement, projection, section) = subspaces[y].quotient_data();
        dims.push(projection.cols());
        projections.push(projection);
        sections.push(section);
    }
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let (s, t) = (q.source(Arrow(a)).0, q.target(Arrow(a)).0);
        // induced map: lift along the section, apply, project
        maps.push(sections[s].mul(&m.maps[a]).mul(&projections[t]));
    }
    let quot = Module { alg: m.alg.clone(), dims, maps, name: format!("quot({})", m.name) };
    let proj = ModuleHom { blocks: projections };
    (quot, proj)
}

pub fn kernel<F: Field>(m: &Module<F>, f: &ModuleHom<F>) -> (Module<F>, ModuleHom<F>) {
    let subspaces: Vec<Matrix<F>> = f.blocks.iter().map(|b| b.left_kernel()).collect();
    let (k, incl) = submodule(m, &subspaces);
    (k.named(format!("ker({})", m.name)), incl)
}

pub fn image<F: Field>(n: &Module<F>, f: &ModuleHom<F>) -> (Module<F>, ModuleHom<F>) {
    let subspaces: Vec<Matrix<F>> = f.blocks.iter().map(|b| b.row_basis()).collect();
    let (i, incl) = submodule(n, &subspaces);
    (i.named(format!("im({})", n.name)), incl)
}

pub fn cokernel<F: Field>(n: &Module<F>, f: &ModuleHom<F>) -> (Module<F>, ModuleHom<F>) {
    let subspaces: Vec<Matrix<F>> = f.blocks.iter().map(|b| b.row_basis()).collect();
    let (c, proj) = quotient_module(n, &subspaces);
    (c.named(format!("coker({})", n.name)), proj)
}

/// The radical submodule with inclusion.
pub fn radical_submodule<F: Field>(m: &Module<F>) -> (Module<F>, ModuleHom<F>) {
    let (r, incl) = submodule(m, &m.radical_subspaces());
    (r.named(format!("rad({})", m.name)), incl)
}

/// The top M / rad M with projection.
pub fn top<F: Field>(m: &Module<F>) -> (Module<F>, ModuleHom<F>) {
    let (t, proj) = quotient_module(m, &m.radical_subspaces());
    (t.named(format!("top({})", m.name)), proj)
}

/// The socle submodule with inclusion.
pub fn socle<F: Field>(m: &Module<F>) -> (Module<F>, ModuleHom<F>) {
    let (s, incl) = submodule(m, &m.socle_subspaces());
    (s.named(format!("soc({})", m.name)), incl)
}

// ---------------------------------------------------------------------------
// Projective cover, injective envelope, duality
// ---------------------------------------------------------------------------

/// Minimal projective cover p: P -> M (epi with superfluous kernel),
/// together with the list of vertices of the indecomposable summands of P,
/// in block order.
pub fn projective_cover_data<F: Field>(
    m: &Module<F>,
) -> (Module<F>, ModuleHom<F>, Vec<Vertex>) {
    let q = &m.alg.bq.quiver;
    let params = m.alg.params;
    let rad = m.radical_subspaces();
    // Lift a basis of top(M)_x back to M_x for each vertex.
    let mut parts: Vec<Module<F>> = Vec::new();
    let mut generators: Vec<(Vertex, Vec<F>)> = Vec::new();
    for x in 0..q.vertex_count() {
        let (_c, projection, section) = rad[x].quotient_data();
        for col in 0..projection.cols() {
            // generator = section row col, an element of M_x
            generators.push((Vertex(x), section.row_vec(col)));
            parts.push(projective(&m.alg, Vertex(x)));
        }
    }
    let (p, _incls, projs) = direct_sum(&parts, &m.alg);
    // Hom P(x) -> M determined by e_x |-> g: path class p_i |-> g . p_i.
    let mut blocks: Vec<Matrix<F>> =
        (0..q.vertex_count()).map(|y| Matrix::zero(p.dims[y], m.dims[y], params)).collect();
    for (idx, (x, g)) in generators.iter().enumerate() {
        let part = &parts[idx];
        // index paths of P(x): for each vertex y, block_indices(alg, x, y)
        for y in 0..q.vertex_count() {
            let paths = block_indices(&m.alg, *x, Vertex(y));
            debug_assert_eq!(paths.len(), part.dims[y]);
            for (r, &pi) in paths.iter().enumerate() {
                let act = m.path_action(&m.alg.paths[pi]);
                let img = act.apply_row(g);
                // row position inside the direct sum block at y
                let before: usize = parts[..idx].iter().map(|pp| pp.dims[y]).sum();
                for (jcol, v) in img.iter().enumerate() {
                    blocks[y].set(before + r, jcol, v.clone());
                }
            }
        }
    }
    let f = ModuleHom { blocks };
    debug_assert!(is_valid_hom(&p, m, &f), "projective cover map must be a homomorphism");
    debug_assert!(f.is_epi(), "projective cover must be onto");
    let _ = projs;
    (p, f, generators.into_iter().map(|(x, _)| x).collect())
}

/// Minimal projective cover p: P -> M (epi with superfluous kernel).
pub fn projective_cover<F: Field>(m: &Module<F>) -> (Module<F>, ModuleHom<F>) {
    let (p, f, _) = projective_cover_data(m);
    (p, f)
}

/// Whether M is projective (its cover has zero kernel).
pub fn is_projective<F: Field>(m: &Module<F>) -> bool {
    let (p, f) = projective_cover(m);
    let (k, _) = kernel(&p, &f);
    k.is_zero()
}

/// Dual module over the provided opposite algebra: blocks transpose.
///
/// `op` must present the opposite quiver with arrows in the same order.
pub fn dual_to<F: Field>(m: &Module<F>, op: &Arc<AlgebraBasis<F>>) -> Module<F> {
    let q = &m.alg.bq.quiver;
    let qop = &op.bq.quiver;
    assert_eq!(q.vertex_count(), qop.vertex_count(), "opposite must match");
    assert_eq!(q.arrow_count(), qop.arrow_count(), "opposite must match");
    for a in 0..q.arrow_count() {
        assert_eq!(q.source(Arrow(a)), qop.target(Arrow(a)), "opposite arrow mismatch");
        assert_eq!(q.target(Arrow(a)), qop.source(Arrow(a)), "opposite arrow mismatch");
    }
    let maps = (0..q.arrow_count()).map(|a| m.maps[a].transpose()).collect();
    Module { alg: op.clone(), dims: m.dims.clone(), maps, name: format!("D({})", m.name) }
}

/// Injective envelope via duality: E(M) = D(projective cover of D(M)).
pub fn injective_envelope<F: Field>(
    m: &Module<F>,
    op: &Arc<AlgebraBasis<F>>,
) -> (Module<F>, ModuleHom<F>) {
    let dm = dual_to(m, op);
    let (p, f) = projective_cover(&dm);
    let e = dual_to(&p, &m.alg);
    // dual of f: P -> D(M) is a map M = DD(M) -> D(P) with transposed blocks
    let blocks = f.blocks.iter().map(|b| b.transpose()).collect();
    (e, ModuleHom { blocks })
}

pub fn is_injective<F: Field>(m: &Module<F>, op: &Arc<AlgebraBasis<F>>) -> bool {
    is_projective(&dual_to(m, op))
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::compute_basis;
    use crate::dsl::parse_bound_quiver;
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
    fn projective_dimension_vectors() {
        let alg = motivating_c();
        // P(4) = e_4 A: e_4, alpha, gamma with alpha*beta = gamma*delta = 0.
        let p4 = projective(&alg, Vertex(3));
        assert_eq!(p4.dims, vec![0, 1, 1, 1]);
        p4.validate().unwrap();
        let p1 = projective(&alg, Vertex(0));
        assert_eq!(p1.dims, vec![1, 0, 0, 0], "vertex 1 is a sink: P(1) is simple");
        // dim Hom(P(x), M) = dim M_x on a projective test module
        let p2 = projective(&alg, Vertex(1));
        assert_eq!(p2.dims, vec![1, 1, 0, 0]);
        assert_eq!(hom_dim(&p2, &p4), p4.dims[1], "Hom(P(2), M) = M_2");
    }

    #[test]
    fn injective_dimension_vectors() {
        let alg = motivating_c();
        // I(1) = D(A e_1): paths into 1: e_1, beta, delta.
        let i1 = injective(&alg, Vertex(0));
        assert_eq!(i1.dims, vec![1, 1, 1, 0]);
        i1.validate().unwrap();
        let i4 = injective(&alg, Vertex(3));
        assert_eq!(i4.dims, vec![0, 0, 0, 1], "vertex 4 is a source: I(4) is simple");
    }

    #[test]
    fn hom_spaces_and_kernels() {
        let alg = motivating_c();
        let p4 = projective(&alg, Vertex(3));
        let s4 = simple(&alg, Vertex(3));
        let homs = hom_space(&p4, &s4);
        assert_eq!(homs.len(), 1, "Hom(P(4), S(4)) is one dimensional");
        let f = &homs[0];
        assert!(is_valid_hom(&p4, &s4, f));
        let (k, incl) = kernel(&p4, f);
        assert_eq!(k.total_dim(), 2, "kernel is rad P(4)");
        assert!(is_valid_hom(&k, &p4, &incl));
        let (c, _) = cokernel(&s4, f);
        assert!(c.is_zero(), "the map is onto");
    }

    #[test]
    fn radical_top_socle() {
        let alg = motivating_c();
        let p4 = projective(&alg, Vertex(3));
        assert_eq!(p4.top_dims(), vec![0, 0, 0, 1]);
        let (r, _) = radical_submodule(&p4);
        assert_eq!(r.dims, vec![0, 1, 1, 0]);
        assert_eq!(p4.socle_dims(), vec![0, 1, 1, 0], "alpha and gamma are killed by all arrows");
    }

    #[test]
    fn projective_cover_of_simple() {
        let alg = motivating_c();
        let s4 = simple(&alg, Vertex(3));
        let (p, f) = projective_cover(&s4);
        assert_eq!(p.dims, projective(&alg, Vertex(3)).dims);
        assert!(f.is_epi());
        assert!(is_valid_hom(&p, &s4, &f));
        assert!(is_projective(&projective(&alg, Vertex(1))));
        assert!(!is_projective(&s4));
    }

    #[test]
    fn duality_round_trip() {
        let alg = motivating_c();
        let op = Arc::new(alg.opposite().unwrap());
        let p4 = projective(&alg, Vertex(3));
        let d = dual_to(&p4, &op);
        d.validate().unwrap();
        let dd = dual_to(&d, &alg);
        assert_eq!(dd.dims, p4.dims);
        for a in 0..p4.maps.len() {
            assert_eq!(dd.maps[a], p4.maps[a], "double dual is the identity on matrices");
        }
        // D takes projectives to injectives over the opposite
        assert!(is_injective(&d, &alg) || is_projective(&dual_to(&d, &alg)),
            "dual of a projective is injective over the opposite algebra");
    }

    #[test]
    fn injective_envelope_of_simple() {
        let alg = motivating_c();
        let op = Arc::new(alg.opposite().unwrap());
        let s1 = simple(&alg, Vertex(0));
        let (e, f) = injective_envelope(&s1, &op);
        assert_eq!(e.dims, injective(&alg, Vertex(0)).dims);
        assert!(f.is_mono());
        assert!(is_valid_hom(&s1, &e, &f));
    }

    #[test]
    fn direct_sum_includes_and_projects() {
        let alg = motivating_c();
        let p4 = projective(&alg, Vertex(3));
        let s1 = simple(&alg, Vertex(0));
        let (sum, incls, projs) = direct_sum(&[p4.clone(), s1.clone()], &alg);
        assert_eq!(sum.total_dim(), p4.total_dim() + s1.total_dim());
        let id = incls[0].then(&projs[0]);
        assert_eq!(id, ModuleHom::identity(&p4));
        let z = incls[0].then(&projs[1]);
        assert!(z.is_zero());
    }
}
