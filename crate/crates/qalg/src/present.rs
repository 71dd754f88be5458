//! Abstract finite-dimensional algebras given by structure constants, and
//! recovery of a bound quiver presentation from one.
//!
//! A `TableAlgebra` is an algebra with a chosen basis and a full
//! multiplication table; it is the common output format for constructions
//! that produce an algebra without a presentation (quotients, trivial and
//! relation extensions, matrix algebras). `recover_presentation` finds a
//! complete set of primitive orthogonal idempotents, reads off the quiver
//! from the radical, computes a minimal generating set for the kernel of the
//! induced surjection from the path algebra, and certifies the result by
//! rebuilding the basis and comparing multiplication tables. Every
//! certification failure is an explicit error, never a silent fallback.

use std::sync::Arc;

use crate::algebra::{compute_basis, AlgebraBasis, Elem};
use crate::decomp::{certified_radical, split_idempotent, CoordAlg, DecompError};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{Arrow, ArrowData, BoundQuiver, Path, PathCombination, Quiver, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentError {
    #[error("presentation recovery failed: {0}")]
    PresentationRecoveryFailed(String),
    #[error(transparent)]
    Decomposition(#[from] DecompError),
}

// ---------------------------------------------------------------------------
// Table algebras
// ---------------------------------------------------------------------------

/// An associative unital algebra described by structure constants on a basis.
#[derive(Clone)]
pub struct TableAlgebra<F: Field> {
    pub name: String,
    pub dim: usize,
    pub params: F::Params,
    /// table[i][j] = coordinates of b_i * b_j
    pub table: Vec<Vec<Vec<F>>>,
    pub unit: Vec<F>,
}

impl<F: Field> TableAlgebra<F> {
    /// Densify the multiplication table of a path-algebra basis.
    pub fn from_basis(alg: &AlgebraBasis<F>, name: &str) -> Self {
        let params = alg.params;
        let dim = alg.dim;
        let mut table = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut row = Vec::with_capacity(dim);
            for j in 0..dim {
                let mut dense = vec![F::zero(params); dim];
                for (k, c) in &alg.table[i][j] {
                    dense[*k] = c.clone();
                }
                row.push(dense);
            }
            table.push(row);
        }
        TableAlgebra { name: name.to_string(), dim, params, table, unit: alg.unit() }
    }

    /// Quotient of a path-algebra basis by the two-sided ideal generated by
    /// the given elements. Returns the quotient and the projection matrix
    /// from the original basis coordinates onto the quotient coordinates.
    pub fn quotient_of(
        alg: &AlgebraBasis<F>,
        generators: &[Elem<F>],
        name: &str,
    ) -> (Self, Matrix<F>) {
        let params = alg.params;
        let ideal = alg.two_sided_ideal(generators);
        let (_c, projection, section) = ideal.quotient_data();
        let dim = projection.cols();
        let mut table = Vec::with_capacity(dim);
        for i in 0..dim {
            let ei = section.row_vec(i);
            let mut row = Vec::with_capacity(dim);
            for j in 0..dim {
                let ej = section.row_vec(j);
                row.push(projection.apply_row(&alg.mul_elems(&ei, &ej)));
            }
            table.push(row);
        }
        let unit = projection.apply_row(&alg.unit());
        (TableAlgebra { name: name.to_string(), dim, params, table, unit }, projection)
    }

    pub fn zero_elem(&self) -> Vec<F> {
        vec![F::zero(self.params); self.dim]
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let mut out = self.zero_elem();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x.mul(y);
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] = out[k].add(&c.mul(t));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[F], b: &[F]) -> Vec<F> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }

    pub fn sub(&self, a: &[F], b: &[F]) -> Vec<F> {
        a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
    }

    pub(crate) fn coord_alg(&self) -> CoordAlg<'_, F> {
        CoordAlg {
            dim: self.dim,
            params: self.params,
            unit: self.unit.clone(),
            mul: Box::new(move |a, b| self.mul(a, b)),
        }
    }

    /// Check associativity and unit laws on all basis triples (test helper).
    pub fn verify_structure(&self) -> bool {
        for i in 0..self.dim {
            let ei = self.basis_elem(i);
            if self.mul(&self.unit, &ei) != ei || self.mul(&ei, &self.unit) != ei {
                return false;
            }
            for j in 0..self.dim {
                let ej = self.basis_elem(j);
                let ij = self.mul(&ei, &ej);
                for k in 0..self.dim {
                    let ek = self.basis_elem(k);
                    let jk = self.mul(&ej, &ek);
                    if self.mul(&ij, &ek) != self.mul(&ei, &jk) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn basis_elem(&self, i: usize) -> Vec<F> {
        let mut e = self.zero_elem();
        e[i] = F::one(self.params);
        e
    }

    /// Trace of left multiplication by a on the algebra.
    fn regular_trace(&self, a: &[F]) -> F {
        let mut t = F::zero(self.params);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            // contribution of a's x-part to the trace: coefficient of b_j in
            // b_x-scaled products sums over the diagonal
            for j in 0..self.dim {
                t = t.add(&x.mul(&self.table[i][j][j]));
            }
        }
        t
    }

    /// The Jacobson radical, certified; requires characteristic 0 or larger
    /// than the dimension.
    pub fn radical(&self) -> Result<Matrix<F>, DecompError> {
        let p = F::characteristic(self.params);
        if p != 0 && p <= self.dim as u64 {
            return Err(DecompError::FieldTooSmall { p, dim: self.dim });
        }
        let gram = Matrix::from_fn(self.dim, self.dim, self.params, |i, j| {
            self.regular_trace(&self.table[i][j])
        });
        certified_radical(&self.coord_alg(), &gram)
    }
}

// ---------------------------------------------------------------------------
// Primitive orthogonal idempotents
// ---------------------------------------------------------------------------

/// Split off an idempotent inside the corner algebra fAf, or certify that f
/// is primitive (None).
fn corner_split<F: Field>(
    ta: &TableAlgebra<F>,
    f: &[F],
) -> Result<Option<Vec<F>>, DecompError> {
    let params = ta.params;
    let rows_raw: Vec<Vec<F>> =
        (0..ta.dim).map(|i| ta.mul(&ta.mul(f, &ta.basis_elem(i)), f)).collect();
    let basis = Matrix::from_rows(rows_raw, ta.dim, params).row_basis();
    let cdim = basis.rows();
    if cdim <= 1 {
        return Ok(None);
    }
    let to_coords = |v: &[F]| -> Vec<F> {
        let rhs = Matrix::from_rows(vec![v.to_vec()], ta.dim, params);
        basis.solve_left(&rhs).expect("corner element lies in the corner").row_vec(0)
    };
    let corner = CoordAlg {
        dim: cdim,
        params,
        unit: to_coords(f),
        mul: Box::new(|a: &[F], b: &[F]| {
            let xa = basis.apply_row(a);
            let xb = basis.apply_row(b);
            let rhs = Matrix::from_rows(vec![ta.mul(&xa, &xb)], ta.dim, params);
            basis.solve_left(&rhs).expect("corner closed under products").row_vec(0)
        }),
    };
    let gram = Matrix::from_fn(cdim, cdim, params, |i, j| {
        // trace of left multiplication on the corner
        let mut ei = vec![F::zero(params); cdim];
        ei[i] = F::one(params);
        let mut ej = vec![F::zero(params); cdim];
        ej[j] = F::one(params);
        let prod = (corner.mul)(&ei, &ej);
        let mut t = F::zero(params);
        for k in 0..cdim {
            let mut ek = vec![F::zero(params); cdim];
            ek[k] = F::one(params);
            t = t.add(&(corner.mul)(&prod, &ek)[k]);
        }
        t
    });
    let rad = certified_radical(&corner, &gram)?;
    Ok(split_idempotent(&corner, &rad)?.map(|e| basis.apply_row(&e)))
}

/// A complete list of primitive orthogonal idempotents summing to 1.
pub fn primitive_idempotents<F: Field>(
    ta: &TableAlgebra<F>,
) -> Result<Vec<Vec<F>>, PresentError> {
    let p = F::characteristic(ta.params);
    if p != 0 && p <= ta.dim as u64 {
        return Err(DecompError::FieldTooSmall { p, dim: ta.dim }.into());
    }
    let mut stack = vec![ta.unit.clone()];
    let mut out: Vec<Vec<F>> = Vec::new();
    while let Some(f) = stack.pop() {
        if f.iter().all(|c| c.is_zero()) {
            return Err(PresentError::PresentationRecoveryFailed(
                "zero idempotent encountered while splitting the unit".into(),
            ));
        }
        match corner_split(ta, &f)? {
            None => out.push(f),
            Some(e) => {
                stack.push(ta.sub(&f, &e));
                stack.push(e);
            }
        }
    }
    // certification: idempotent, orthogonal, complete
    let mut sum = ta.zero_elem();
    for e in &out {
        sum = ta.add(&sum, e);
        if ta.mul(e, e) != *e {
            return Err(PresentError::PresentationRecoveryFailed(
                "unit splitting produced a non-idempotent".into(),
            ));
        }
    }
    for (i, e) in out.iter().enumerate() {
        for (j, f) in out.iter().enumerate() {
            if i != j && !ta.mul(e, f).iter().all(|c| c.is_zero()) {
                return Err(PresentError::PresentationRecoveryFailed(
                    "unit splitting produced non-orthogonal idempotents".into(),
                ));
            }
        }
    }
    if sum != ta.unit {
        return Err(PresentError::PresentationRecoveryFailed(
            "primitive idempotents do not sum to the unit".into(),
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Presentation recovery
// ---------------------------------------------------------------------------

/// A recovered bound quiver presentation, with the certified dictionary back
/// into the table algebra it came from.
pub struct Recovered<F: Field> {
    pub bq: BoundQuiver<F>,
    pub alg: Arc<AlgebraBasis<F>>,
    /// row i: coordinates in the table algebra of the i-th basis path
    pub images: Matrix<F>,
    /// the idempotent of the table algebra realizing each recovered vertex
    pub vertex_idem: Vec<Vec<F>>,
}

/// Recover a bound quiver presentation of a basic algebra given by a
/// multiplication table.
///
/// `vertex_hints`, when given, must list labeled primitive orthogonal
/// idempotents summing to 1; they fix both the vertex set and its order.
/// `arrow_hints` are labeled elements whose classes modulo the squared
/// radical should be used as arrows where possible (surplus hints are
/// ignored, missing arrows get generated labels).
pub fn recover_presentation<F: Field>(
    ta: &TableAlgebra<F>,
    vertex_hints: Option<&[(String, Vec<F>)]>,
    arrow_hints: &[(String, Vec<F>)],
) -> Result<Recovered<F>, PresentError> {
    let params = ta.params;
    let fail = |msg: String| PresentError::PresentationRecoveryFailed(msg);

    // 1. vertices: primitive orthogonal idempotents
    let (labels, idems): (Vec<String>, Vec<Vec<F>>) = match vertex_hints {
        Some(h) => {
            for (label, e) in h {
                if ta.mul(e, e) != *e {
                    return Err(fail(format!("hinted idempotent {label} is not idempotent")));
                }
                if corner_split(ta, e)?.is_some() {
                    return Err(fail(format!("hinted idempotent {label} is not primitive")));
                }
            }
            for i in 0..h.len() {
                for j in 0..h.len() {
                    if i != j && !ta.mul(&h[i].1, &h[j].1).iter().all(|c| c.is_zero()) {
                        return Err(fail(format!(
                            "hinted idempotents {} and {} are not orthogonal",
                            h[i].0, h[j].0
                        )));
                    }
                }
            }
            let mut sum = ta.zero_elem();
            for (_, e) in h {
                sum = ta.add(&sum, e);
            }
            if sum != ta.unit {
                return Err(fail("hinted idempotents do not sum to the unit".into()));
            }
            (h.iter().map(|(l, _)| l.clone()).collect(), h.iter().map(|(_, e)| e.clone()).collect())
        }
        None => {
            let idems = primitive_idempotents(ta)?;
            let labels = (1..=idems.len()).map(|i| i.to_string()).collect();
            (labels, idems)
        }
    };
    let n = idems.len();

    // 2. radical, its powers, nilpotency
    let rad = ta.radical()?;
    let mut powers: Vec<Matrix<F>> = vec![rad.clone()];
    while powers.last().unwrap().rows() > 0 {
        let last = powers.last().unwrap();
        let mut rows = Vec::new();
        for r in 0..last.rows() {
            for s in 0..rad.rows() {
                rows.push(ta.mul(&last.row_vec(r), &rad.row_vec(s)));
            }
        }
        powers.push(Matrix::from_rows(rows, ta.dim, params).row_basis());
    }
    let nilpotency = powers.len(); // rad^nilpotency = 0, rad^(nilpotency-1) != 0
    let rad2 = if powers.len() >= 2 {
        powers[1].clone()
    } else {
        Matrix::zero(0, ta.dim, params)
    };

    // 3. basic check: e_x (A/rad) e_y must have dimension delta_{xy}
    for x in 0..n {
        for y in 0..n {
            let mut rows = Vec::new();
            for r in 0..ta.dim {
                rows.push(ta.mul(&ta.mul(&idems[x], &ta.basis_elem(r)), &idems[y]));
            }
            let span = Matrix::from_rows(rows, ta.dim, params);
            // dimension of the block modulo the radical part of the block
            let mut rad_rows = Vec::new();
            for r in 0..rad.rows() {
                rad_rows.push(ta.mul(&ta.mul(&idems[x], &rad.row_vec(r)), &idems[y]));
            }
            let block_dim = span.rank();
            let rad_block = Matrix::from_rows(rad_rows, ta.dim, params);
            let expected = if x == y { 1 } else { 0 };
            if block_dim - rad_block.rank() != expected {
                return Err(fail("algebra is not basic over the given idempotents".into()));
            }
        }
    }

    // 4. arrows: bases of e_x rad e_y modulo rad^2
    let mut arrow_data: Vec<ArrowData> = Vec::new();
    let mut arrow_reps: Vec<Vec<F>> = Vec::new();
    let mut fresh = 0usize;
    for x in 0..n {
        for y in 0..n {
            let mut span = rad2.clone();
            let pick = |row: Vec<F>, span: &mut Matrix<F>| -> bool {
                let probe = Matrix::from_rows(vec![row.clone()], ta.dim, params);
                if span.row_space_contains(&probe) {
                    return false;
                }
                *span = span.vstack(&probe).row_basis();
                true
            };
            for (label, h) in arrow_hints {
                let hxy = ta.mul(&ta.mul(&idems[x], h), &idems[y]);
                if pick(hxy.clone(), &mut span) {
                    arrow_data.push(ArrowData {
                        label: label.clone(),
                        source: Vertex(x),
                        target: Vertex(y),
                    });
                    arrow_reps.push(hxy);
                }
            }
            for r in 0..rad.rows() {
                let cand = ta.mul(&ta.mul(&idems[x], &rad.row_vec(r)), &idems[y]);
                if pick(cand.clone(), &mut span) {
                    fresh += 1;
                    arrow_data.push(ArrowData {
                        label: format!("z{fresh}"),
                        source: Vertex(x),
                        target: Vertex(y),
                    });
                    arrow_reps.push(cand);
                }
            }
        }
    }
    let quiver = Quiver { vertex_labels: labels, arrows: arrow_data };

    // 5. evaluate paths breadth-first, keeping only nonzero images and
    // recording the minimal zero paths (nonzero prefix, zero after one more
    // arrow): those are the monomial kernel generator candidates.
    let mut live_paths: Vec<Path> = Vec::new();
    let mut live_images: Vec<Vec<F>> = Vec::new();
    let mut minimal_zero: Vec<Path> = Vec::new();
    for (x, e) in idems.iter().enumerate() {
        live_paths.push(Path::lazy(Vertex(x)));
        live_images.push(e.clone());
    }
    let mut frontier: Vec<usize> = (0..live_paths.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &pi in &frontier {
            let path = live_paths[pi].clone();
            if path.len() >= nilpotency {
                continue;
            }
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.source != path.target {
                    continue;
                }
                let ext = path.compose(&Path::of_arrow(&quiver, Arrow(ai))).unwrap();
                let img = ta.mul(&live_images[pi], &arrow_reps[ai]);
                if img.iter().all(|c| c.is_zero()) {
                    if ext.len() >= 2 {
                        minimal_zero.push(ext);
                    } else {
                        return Err(fail(format!(
                            "arrow {} has zero image",
                            quiver.arrows[ai].label
                        )));
                    }
                } else {
                    live_paths.push(ext);
                    live_images.push(img);
                    next.push(live_paths.len() - 1);
                }
            }
        }
        frontier = next;
    }
    minimal_zero.sort_by(|a, b| a.cmp_len_lex(b));

    // surjectivity of the evaluation
    let eval =
        Matrix::from_rows(live_images.clone(), ta.dim, params);
    if eval.rank() != ta.dim {
        return Err(fail(format!(
            "path images span a subspace of dimension {} inside dimension {}",
            eval.rank(),
            ta.dim
        )));
    }

    // 6. kernel generators, degree by degree. Coordinates: live paths of
    // length >= 2, then the minimal zero paths.
    let long_live: Vec<usize> =
        (0..live_paths.len()).filter(|&i| live_paths[i].len() >= 2).collect();
    let coord_count = long_live.len() + minimal_zero.len();
    let coord_of_live: std::collections::HashMap<usize, usize> =
        long_live.iter().enumerate().map(|(c, &i)| (i, c)).collect();
    let mut coord_of_path: std::collections::HashMap<Path, usize> = std::collections::HashMap::new();
    for (c, &i) in long_live.iter().enumerate() {
        coord_of_path.insert(live_paths[i].clone(), c);
    }
    for (c, p) in minimal_zero.iter().enumerate() {
        coord_of_path.insert(p.clone(), long_live.len() + c);
    }

    // kernel of the evaluation restricted to live paths of length 2..=d, per
    // (source, target) block
    let kernel_upto = |d: usize| -> Vec<Vec<F>> {
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let idx: Vec<usize> = long_live
                    .iter()
                    .copied()
                    .filter(|&i| {
                        let p = &live_paths[i];
                        p.len() <= d && p.source == Vertex(x) && p.target == Vertex(y)
                    })
                    .collect();
                if idx.is_empty() {
                    continue;
                }
                let block = Matrix::from_rows(
                    idx.iter().map(|&i| live_images[i].clone()).collect(),
                    ta.dim,
                    params,
                );
                let k = block.left_kernel();
                for r in 0..k.rows() {
                    let mut row = vec![F::zero(params); coord_count];
                    for (pos, &i) in idx.iter().enumerate() {
                        row[coord_of_live[&i]] = k.at(r, pos).clone();
                    }
                    out.push(row);
                }
            }
        }
        out
    };

    // closure of a generator: all u*g*v within total degree <= nilpotency,
    // expressed over the coordinates (components outside the coordinate set
    // are extensions of zero paths, hence already in the span of the
    // monomial generators; dropping them is a legitimate quotient).
    let closure_rows = |gen: &[F]| -> Vec<Vec<F>> {
        let mut rows = vec![gen.to_vec()];
        let terms: Vec<(usize, F)> = gen
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let path_of_coord = |c: usize| -> &Path {
            if c < long_live.len() {
                &live_paths[long_live[c]]
            } else {
                &minimal_zero[c - long_live.len()]
            }
        };
        let min_len = terms.iter().map(|(i, _)| path_of_coord(*i).len()).min().unwrap_or(0);
        let (src, tgt) = {
            let p = path_of_coord(terms[0].0);
            (p.source, p.target)
        };
        for u in &live_paths {
            if u.target != src || u.len() + min_len > nilpotency {
                continue;
            }
            for v in &live_paths {
                if v.source != tgt || u.len() + min_len + v.len() > nilpotency {
                    continue;
                }
                if u.len() == 0 && v.len() == 0 {
                    continue; // the generator itself is already included
                }
                let mut row = vec![F::zero(params); coord_count];
                let mut nonzero = false;
                for (ci, coeff) in &terms {
                    let p = path_of_coord(*ci);
                    if u.len() + p.len() + v.len() > nilpotency {
                        continue;
                    }
                    let up = u.compose(p).expect("endpoints match");
                    let upv = up.compose(v).expect("endpoints match");
                    if let Some(&c) = coord_of_path.get(&upv) {
                        row[c] = row[c].add(coeff);
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        rows
    };

    let mut gens: Vec<Vec<F>> = Vec::new();
    let mut span = Matrix::zero(0, coord_count, params);
    let adopt = |row: Vec<F>, span: &mut Matrix<F>, gens: &mut Vec<Vec<F>>| {
        let probe = Matrix::from_rows(vec![row.clone()], coord_count, params);
        if span.row_space_contains(&probe) {
            return;
        }
        for cr in closure_rows(&row) {
            let m = Matrix::from_rows(vec![cr], coord_count, params);
            if !span.row_space_contains(&m) {
                *span = span.vstack(&m).row_basis();
            }
        }
        gens.push(row);
    };
    for d in 2..=nilpotency {
        for (c, p) in minimal_zero.iter().enumerate() {
            if p.len() == d {
                let mut row = vec![F::zero(params); coord_count];
                row[long_live.len() + c] = F::one(params);
                adopt(row, &mut span, &mut gens);
            }
        }
        for row in kernel_upto(d) {
            adopt(row, &mut span, &mut gens);
        }
    }

    // 7. build the bound quiver
    let mut relations = Vec::new();
    for g in &gens {
        let mut terms = Vec::new();
        for (c, coeff) in g.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let p = if c < long_live.len() {
                live_paths[long_live[c]].clone()
            } else {
                minimal_zero[c - long_live.len()].clone()
            };
            terms.push((coeff.clone(), p));
        }
        relations.push(PathCombination { terms }.normalized());
    }
    let bq = BoundQuiver { name: ta.name.clone(), quiver, relations, params };

    // 8. certification: rebuild and compare
    let alg = compute_basis(&bq)
        .map_err(|e| fail(format!("recovered presentation rejected: {e}")))?;
    if alg.dim != ta.dim {
        return Err(fail(format!(
            "recovered presentation has dimension {}, expected {}",
            alg.dim, ta.dim
        )));
    }
    let mut image_rows = Vec::with_capacity(alg.dim);
    for p in &alg.paths {
        let mut img = idems[p.source.0].clone();
        for a in &p.arrows {
            img = ta.mul(&img, &arrow_reps[a.0]);
        }
        image_rows.push(img);
    }
    let images = Matrix::from_rows(image_rows, ta.dim, params);
    if images.rank() != ta.dim {
        return Err(fail("recovered basis does not map onto the algebra".into()));
    }
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            let mut lhs = vec![F::zero(params); ta.dim];
            for (k, c) in &alg.table[i][j] {
                for (t, coord) in images.row_vec(*k).iter().enumerate() {
                    lhs[t] = lhs[t].add(&c.mul(coord));
                }
            }
            let rhs = ta.mul(&images.row_vec(i), &images.row_vec(j));
            if lhs != rhs {
                return Err(fail("recovered multiplication table disagrees".into()));
            }
        }
    }
    Ok(Recovered { bq, alg: Arc::new(alg), images, vertex_idem: idems })
}

// ---------------------------------------------------------------------------
// Algebra isomorphism testing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    Inconclusive,
}

/// Decide whether two bound quiver algebras are isomorphic by enumerating
/// quiver isomorphisms and comparing relation ideals as subspaces of the
/// path algebra. A negative verdict is only returned when a combinatorial
/// invariant separates the two (dimension, nilpotency, quiver shape); if
/// quiver isomorphisms exist but none matches the ideals exactly the verdict
/// is `Inconclusive`, because an isomorphism could still twist arrows by
/// scalars or higher terms.
pub fn algebra_isomorphic<F: Field>(a: &AlgebraBasis<F>, b: &AlgebraBasis<F>) -> IsoVerdict {
    let params = a.params;
    let qa = &a.bq.quiver;
    let qb = &b.bq.quiver;
    if a.dim != b.dim
        || qa.vertex_count() != qb.vertex_count()
        || qa.arrow_count() != qb.arrow_count()
        || a.nilpotency != b.nilpotency
    {
        return IsoVerdict::NotIsomorphic;
    }
    for k in 1..a.nilpotency {
        if a.radical_power(k).rows() != b.radical_power(k).rows() {
            return IsoVerdict::NotIsomorphic;
        }
    }
    let n = qa.vertex_count();
    // arrow multiplicity matrices
    let mult = |q: &Quiver| -> Vec<Vec<usize>> {
        let mut m = vec![vec![0usize; n]; n];
        for a in &q.arrows {
            m[a.source.0][a.target.0] += 1;
        }
        m
    };
    let ma = mult(qa);
    let mb = mult(qb);
    // Cartan matrices (dim e_x A e_y)
    let cartan = |alg: &AlgebraBasis<F>| -> Vec<Vec<usize>> {
        let mut c = vec![vec![0usize; n]; n];
        for p in &alg.paths {
            c[p.source.0][p.target.0] += 1;
        }
        c
    };
    let ca = cartan(a);
    let cb = cartan(b);

    // backtracking enumeration of vertex bijections
    let mut sigma: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    let mut any_sigma = false;
    let mut result: Option<IsoVerdict> = None;

    fn extend<F: Field>(
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        n: usize,
        ma: &[Vec<usize>],
        mb: &[Vec<usize>],
        ca: &[Vec<usize>],
        cb: &[Vec<usize>],
        a: &AlgebraBasis<F>,
        b: &AlgebraBasis<F>,
        params: F::Params,
        any_sigma: &mut bool,
        result: &mut Option<IsoVerdict>,
    ) {
        if result.is_some() {
            return;
        }
        let x = sigma.len();
        if x == n {
            *any_sigma = true;
            if ideal_spans_match(a, b, sigma, params) {
                *result = Some(IsoVerdict::Isomorphic);
            }
            return;
        }
        'cand: for y in 0..n {
            if used[y] {
                continue;
            }
            for z in 0..x {
                if ma[x][z] != mb[y][sigma[z]]
                    || ma[z][x] != mb[sigma[z]][y]
                    || ca[x][z] != cb[y][sigma[z]]
                    || ca[z][x] != cb[sigma[z]][y]
                {
                    continue 'cand;
                }
            }
            if ma[x][x] != mb[y][y] || ca[x][x] != cb[y][y] {
                continue;
            }
            sigma.push(y);
            used[y] = true;
            extend(sigma, used, n, ma, mb, ca, cb, a, b, params, any_sigma, result);
            sigma.pop();
            used[y] = false;
        }
    }

    extend(
        &mut sigma, &mut used, n, &ma, &mb, &ca, &cb, a, b, params, &mut any_sigma, &mut result,
    );
    match result {
        Some(v) => v,
        None => {
            if any_sigma {
                IsoVerdict::Inconclusive
            } else {
                IsoVerdict::NotIsomorphic
            }
        }
    }
}

/// Enumerate free paths of the quiver up to the given length.
fn free_paths(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..q.vertex_count()).map(|v| Path::lazy(Vertex(v))).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == p.target {
                    next.push(p.compose(&Path::of_arrow(q, Arrow(ai))).unwrap());
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Compare the relation ideals of a and b inside the truncated path algebra
/// under the vertex bijection sigma with arrow matching per parallel class.
fn ideal_spans_match<F: Field>(
    a: &AlgebraBasis<F>,
    b: &AlgebraBasis<F>,
    sigma: &[usize],
    params: F::Params,
) -> bool {
    let qa = &a.bq.quiver;
    let qb = &b.bq.quiver;
    let n0 = a.nilpotency;
    // arrow classes
    let mut classes: Vec<(usize, usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for x in 0..qa.vertex_count() {
        for y in 0..qa.vertex_count() {
            let aa: Vec<usize> = (0..qa.arrow_count())
                .filter(|&i| qa.arrows[i].source == Vertex(x) && qa.arrows[i].target == Vertex(y))
                .collect();
            let bb: Vec<usize> = (0..qb.arrow_count())
                .filter(|&i| {
                    qb.arrows[i].source == Vertex(sigma[x])
                        && qb.arrows[i].target == Vertex(sigma[y])
                })
                .collect();
            if aa.len() != bb.len() {
                return false;
            }
            if !aa.is_empty() {
                classes.push((x, y, aa, bb));
            }
        }
    }
    // enumerate arrow bijections as products of per-class permutations,
    // bounded to keep the search cheap
    let mut total: usize = 1;
    for (_, _, aa, _) in &classes {
        total = total.saturating_mul((1..=aa.len()).product::<usize>());
        if total > 5000 {
            return false;
        }
    }
    let paths_b = free_paths(qb, n0);
    let index_b: std::collections::HashMap<Path, usize> =
        paths_b.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let paths_a = free_paths(qa, n0);

    // precompute ideal rows of b over its own coordinates
    let rows_of = |alg: &AlgebraBasis<F>,
                   paths: &[Path],
                   index: &std::collections::HashMap<Path, usize>,
                   map_path: &dyn Fn(&Path) -> Option<Path>| -> Option<Matrix<F>> {
        let mut rows = Vec::new();
        for rel in &alg.bq.relations {
            // closure u * rel * v within total length n0
            for u in paths {
                for v in paths {
                    let mut row = vec![F::zero(params); index.len()];
                    let mut nonzero = false;
                    for (c, p) in &rel.terms {
                        if u.target != p.source || p.target != v.source {
                            nonzero = false;
                            break;
                        }
                        if u.len() + p.len() + v.len() > n0 {
                            continue;
                        }
                        let w = u.compose(p)?.compose(v)?;
                        let w = map_path(&w)?;
                        let i = *index.get(&w)?;
                        row[i] = row[i].add(c);
                        nonzero = true;
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
        // paths of full length n0 are zero in the algebra on both sides
        for p in paths.iter().filter(|p| p.len() == n0) {
            let w = map_path(p)?;
            let mut row = vec![F::zero(params); index.len()];
            row[*index.get(&w)?] = F::one(params);
            rows.push(row);
        }
        Some(Matrix::from_rows(rows, index.len(), params).row_basis())
    };

    let ident = |p: &Path| Some(p.clone());
    let Some(span_b) = rows_of(b, &paths_b, &index_b, &ident) else {
        return false;
    };

    // iterate arrow bijections
    let mut perm_state: Vec<Vec<usize>> =
        classes.iter().map(|(_, _, aa, _)| (0..aa.len()).collect()).collect();
    loop {
        // build arrow map
        let mut amap = vec![usize::MAX; qa.arrow_count()];
        for (ci, (_, _, aa, bb)) in classes.iter().enumerate() {
            for (k, &ai) in aa.iter().enumerate() {
                amap[ai] = bb[perm_state[ci][k]];
            }
        }
        let map_path = |p: &Path| -> Option<Path> {
            let arrows: Vec<Arrow> = p.arrows.iter().map(|a| Arrow(amap[a.0])).collect();
            if p.len() == 0 {
                return Some(Path::lazy(Vertex(sigma[p.source.0])));
            }
            Path::from_arrows(qb, &arrows)
        };
        if let Some(span_a) = rows_of(a, &paths_a, &index_b, &map_path) {
            if span_a.rows() == span_b.rows()
                && span_b.row_space_contains(&span_a)
                && span_a.row_space_contains(&span_b)
            {
                return true;
            }
        }
        // advance permutations (mixed-radix odometer over per-class perms)
        let mut ci = 0;
        loop {
            if ci == classes.len() {
                return false;
            }
            if next_permutation(&mut perm_state[ci]) {
                break;
            }
            perm_state[ci] = (0..classes[ci].2.len()).collect();
            ci += 1;
        }
    }
}

/// Advance to the next lexicographic permutation; false when wrapped.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A quotient of a path-algebra basis, presented again as a bound quiver.
pub struct QuotientPresentation<F: Field> {
    pub table: TableAlgebra<F>,
    /// projection from the source basis coordinates to the table coordinates
    pub projection: Matrix<F>,
    pub rec: Recovered<F>,
    /// change of basis from table coordinates to presented-basis coordinates
    pub to_presented: Matrix<F>,
}

impl<F: Field> QuotientPresentation<F> {
    /// Project a source-algebra element all the way to the coordinates of
    /// the recovered presentation.
    pub fn project(&self, v: &[F]) -> Vec<F> {
        let table_coords = self.projection.apply_row(v);
        self.to_presented.apply_row(&table_coords)
    }
}

/// Quotient an algebra by the two-sided ideal generated by the given
/// elements and recover a bound quiver presentation of the result. Vertex
/// and arrow labels of the source algebra are kept wherever the
/// corresponding classes survive in the quotient.
pub fn quotient_presentation<F: Field>(
    alg: &AlgebraBasis<F>,
    generators: &[Elem<F>],
    name: &str,
) -> Result<QuotientPresentation<F>, PresentError> {
    let (table, projection) = TableAlgebra::quotient_of(alg, generators, name);
    let q = &alg.bq.quiver;
    let mut vertex_hints = Vec::new();
    for x in 0..q.vertex_count() {
        let image = projection.apply_row(&alg.idempotent(Vertex(x)));
        if image.iter().any(|c| !c.is_zero()) {
            vertex_hints.push((q.label(Vertex(x)).to_string(), image));
        }
    }
    let mut arrow_hints = Vec::new();
    for a in 0..q.arrow_count() {
        let class = alg.basis_elem(alg.arrow_elem[a]);
        let image = projection.apply_row(&class);
        if image.iter().any(|c| !c.is_zero()) {
            arrow_hints.push((q.arrow_label(Arrow(a)).to_string(), image));
        }
    }
    let rec = recover_presentation(&table, Some(&vertex_hints), &arrow_hints)?;
    let to_presented = rec.images.inverse().expect("certified images are invertible");
    Ok(QuotientPresentation { table, projection, rec, to_presented })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_bound_quiver;
    use num_rational::BigRational;

    fn motivating_c() -> AlgebraBasis<BigRational> {
        compute_basis(
            &parse_bound_quiver::<BigRational>(
                "algebra c\nvertices 1 2 3 4\narrow alpha: 4 -> 2\narrow beta: 2 -> 1\narrow gamma: 4 -> 3\narrow delta: 3 -> 1\nrelations\nalpha*beta = 0\ngamma*delta = 0\n",
                (),
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn table_round_trip_recovers_presentation() {
        let alg = motivating_c();
        let ta = TableAlgebra::from_basis(&alg, "c");
        assert!(ta.verify_structure(), "structure constants are associative and unital");
        let rec = recover_presentation(&ta, None, &[]).unwrap();
        assert_eq!(rec.alg.dim, 8);
        assert_eq!(rec.bq.quiver.vertex_count(), 4);
        assert_eq!(rec.bq.quiver.arrow_count(), 4);
        assert_eq!(rec.bq.relations.len(), 2, "two monomial relations");
        assert!(rec.bq.relations.iter().all(|r| r.terms.len() == 1), "monomial");
        assert_eq!(algebra_isomorphic(&alg, &rec.alg), IsoVerdict::Isomorphic);
    }

    #[test]
    fn recovery_keeps_hinted_labels() {
        let alg = motivating_c();
        let ta = TableAlgebra::from_basis(&alg, "c");
        let vhints: Vec<(String, Vec<BigRational>)> = (0..4)
            .map(|x| {
                (alg.bq.quiver.vertex_labels[x].clone(), alg.idempotent(Vertex(x)))
            })
            .collect();
        let ahints: Vec<(String, Vec<BigRational>)> = alg
            .bq
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.label.clone(), alg.basis_elem(alg.arrow_elem[i])))
            .collect();
        let rec = recover_presentation(&ta, Some(&vhints), &ahints).unwrap();
        assert_eq!(rec.bq.quiver.vertex_labels, vec!["1", "2", "3", "4"]);
        let mut labels: Vec<String> =
            rec.bq.quiver.arrows.iter().map(|a| a.label.clone()).collect();
        labels.sort();
        assert_eq!(labels, vec!["alpha", "beta", "delta", "gamma"]);
    }

    #[test]
    fn recovery_of_loop_algebra_finds_degree_three_relation() {
        let alg = compute_basis(
            &parse_bound_quiver::<BigRational>(
                "algebra loop3\nvertices 1\narrow x: 1 -> 1\nrelations\nx*x*x = 0\n",
                (),
            )
            .unwrap(),
        )
        .unwrap();
        let ta = TableAlgebra::from_basis(&alg, "loop3");
        let rec = recover_presentation(&ta, None, &[]).unwrap();
        assert_eq!(rec.alg.dim, 3);
        assert_eq!(rec.bq.relations.len(), 1);
        assert_eq!(rec.bq.relations[0].terms.len(), 1);
        assert_eq!(rec.bq.relations[0].terms[0].1.len(), 3, "cube relation");
    }

    #[test]
    fn recovery_of_commutativity_relation() {
        let alg = compute_basis(
            &parse_bound_quiver::<BigRational>(
                "algebra square\nvertices 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrelations\na*b - c*d = 0\n",
                (),
            )
            .unwrap(),
        )
        .unwrap();
        let ta = TableAlgebra::from_basis(&alg, "square");
        let rec = recover_presentation(&ta, None, &[]).unwrap();
        assert_eq!(rec.alg.dim, alg.dim);
        assert_eq!(rec.bq.relations.len(), 1);
        assert_eq!(rec.bq.relations[0].terms.len(), 2, "binomial relation");
        assert_eq!(algebra_isomorphic(&alg, &rec.alg), IsoVerdict::Isomorphic);
    }

    #[test]
    fn quotient_by_arrow_class() {
        let alg = motivating_c();
        let gen = alg.path_class(&Path::of_arrow(&alg.bq.quiver, Arrow(0)));
        let (ta, _proj) = TableAlgebra::quotient_of(&alg, &[gen], "c-mod-alpha");
        assert_eq!(ta.dim, 7, "killing alpha removes alpha and nothing else");
        let rec = recover_presentation(&ta, None, &[]).unwrap();
        let expected = compute_basis(
            &parse_bound_quiver::<BigRational>(
                "algebra expected\nvertices 1 2 3 4\narrow beta: 2 -> 1\narrow gamma: 4 -> 3\narrow delta: 3 -> 1\nrelations\ngamma*delta = 0\n",
                (),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(algebra_isomorphic(&rec.alg, &expected), IsoVerdict::Isomorphic);
    }

    #[test]
    fn iso_detects_relabeling_and_rejects_different_shapes() {
        let a = motivating_c();
        let relabeled = compute_basis(
            &parse_bound_quiver::<BigRational>(
                "algebra c2\nvertices w x y z\narrow p: z -> x\narrow q: x -> w\narrow r: z -> y\narrow s: y -> w\nrelations\np*q = 0\nr*s = 0\n",
                (),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(algebra_isomorphic(&a, &relabeled), IsoVerdict::Isomorphic);
        let other = compute_basis(
            &parse_bound_quiver::<BigRational>(
                "algebra d\nvertices 1 2 3 4\narrow alpha: 4 -> 2\narrow beta: 2 -> 1\narrow gamma: 4 -> 3\narrow delta: 3 -> 1\nrelations\nalpha*beta = 0\n",
                (),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(algebra_isomorphic(&a, &other), IsoVerdict::NotIsomorphic, "dimensions differ");
        let star_in = compute_basis(
            &parse_bound_quiver::<BigRational>(
                "algebra star\nvertices 1 2 3\narrow a: 1 -> 2\narrow b: 3 -> 2\nrelations\n",
                (),
            )
            .unwrap(),
        )
        .unwrap();
        let star_out = compute_basis(
            &parse_bound_quiver::<BigRational>(
                "algebra star2\nvertices 1 2 3\narrow a: 1 -> 2\narrow b: 1 -> 3\nrelations\n",
                (),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(algebra_isomorphic(&star_in, &star_out), IsoVerdict::NotIsomorphic);
    }

    #[test]
    fn primitive_idempotents_of_path_algebra_are_vertices() {
        let alg = motivating_c();
        let ta = TableAlgebra::from_basis(&alg, "c");
        let idems = primitive_idempotents(&ta).unwrap();
        assert_eq!(idems.len(), 4);
        for e in &idems {
            assert_eq!(ta.mul(e, e), *e);
        }
    }
}
