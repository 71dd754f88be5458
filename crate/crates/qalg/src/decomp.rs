//! Decomposition of modules into indecomposable summands, and isomorphism
//! testing, by exact endomorphism-ring arithmetic.
//!
//! The radical of the endomorphism ring is computed from the trace form of
//! the action on the module and certified afterwards (two-sided ideal,
//! nilpotent, semisimple quotient). Over a prime field the trace method
//! needs the characteristic to exceed the module dimension; smaller fields
//! are rejected rather than silently miscomputed. Nontrivial idempotents are
//! found by factoring minimal polynomials in the semisimple quotient
//! (rational root extraction over the rationals, Berlekamp splitting over a
//! prime field) and Newton-lifted through the radical. When no splitting can
//! be certified either way the decomposition reports an inconclusive error
//! instead of guessing.

use crate::field::Field;
use crate::matrix::Matrix;
use crate::rep::{hom_space, submodule, Module, ModuleHom};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompError {
    #[error("field too small: characteristic {p} must exceed the module dimension {dim}")]
    FieldTooSmall { p: u64, dim: usize },
    #[error("decomposition inconclusive: {0}")]
    DecompositionInconclusive(String),
}

// ---------------------------------------------------------------------------
// Polynomials (dense, ascending coefficients, trimmed)
// ---------------------------------------------------------------------------

fn poly_trim<F: Field>(mut p: Vec<F>) -> Vec<F> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_deg<F: Field>(p: &[F]) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn poly_scale<F: Field>(p: &[F], c: &F) -> Vec<F> {
    poly_trim(p.iter().map(|x| x.mul(c)).collect())
}

fn poly_monic<F: Field>(p: &[F]) -> Vec<F> {
    match p.last() {
        None => Vec::new(),
        Some(lead) => poly_scale(p, &lead.inv().expect("leading coefficient nonzero")),
    }
}

fn poly_sub<F: Field>(a: &[F], b: &[F], params: F::Params) -> Vec<F> {
    let n = a.len().max(b.len());
    let zero = F::zero(params);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x.sub(y));
    }
    poly_trim(out)
}

fn poly_mul<F: Field>(a: &[F], b: &[F], params: F::Params) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(params); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    poly_trim(out)
}

/// Division with remainder: a = q*b + r with deg r < deg b.
fn poly_divmod<F: Field>(a: &[F], b: &[F], params: F::Params) -> (Vec<F>, Vec<F>) {
    let b = poly_trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = poly_trim(a.to_vec());
    let mut q = vec![F::zero(params); r.len().saturating_sub(b.len()) + 1];
    let lead_inv = b.last().unwrap().inv().expect("nonzero lead");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap().mul(&lead_inv);
        q[shift] = q[shift].add(&c);
        let mut shifted = vec![F::zero(params); shift];
        shifted.extend(poly_scale(&b, &c));
        r = poly_sub(&r, &shifted, params);
    }
    (poly_trim(q), r)
}

fn poly_gcd<F: Field>(a: &[F], b: &[F], params: F::Params) -> Vec<F> {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = poly_divmod(&x, &y, params);
        x = y;
        y = r;
    }
    poly_monic(&x)
}

/// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g the monic gcd.
fn poly_bezout<F: Field>(a: &[F], b: &[F], params: F::Params) -> (Vec<F>, Vec<F>, Vec<F>) {
    let one = vec![F::one(params)];
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut u0 = one.clone();
    let mut u1: Vec<F> = Vec::new();
    let mut v0: Vec<F> = Vec::new();
    let mut v1 = one;
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1, params);
        let nu = poly_sub(&u0, &poly_mul(&q, &u1, params), params);
        let nv = poly_sub(&v0, &poly_mul(&q, &v1, params), params);
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = nu;
        v0 = v1;
        v1 = nv;
    }
    match r0.last() {
        None => (r0, u0, v0),
        Some(lead) => {
            let c = lead.inv().expect("nonzero lead");
            (poly_scale(&r0, &c), poly_scale(&u0, &c), poly_scale(&v0, &c))
        }
    }
}

fn poly_derivative<F: Field>(p: &[F], params: F::Params) -> Vec<F> {
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(p.len() - 1);
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(c.mul(&F::from_int(i as i64, params)));
    }
    poly_trim(out)
}

/// Largest squarefree divisor with the same roots: p / gcd(p, p').
/// In characteristic p a vanishing derivative (a polynomial in t^p) cannot
/// happen for separable inputs; if it does, return the input unchanged and
/// let the caller fail conservatively.
fn poly_squarefree_part<F: Field>(p: &[F], params: F::Params) -> Vec<F> {
    let d = poly_derivative(p, params);
    if d.is_empty() {
        return poly_monic(p);
    }
    let g = poly_gcd(p, &d, params);
    if poly_deg(&g) == Some(0) {
        return poly_monic(p);
    }
    let (q, r) = poly_divmod(p, &g, params);
    debug_assert!(r.is_empty());
    poly_monic(&q)
}

/// Remainder of a * b modulo m.
fn poly_mulmod<F: Field>(a: &[F], b: &[F], m: &[F], params: F::Params) -> Vec<F> {
    let prod = poly_mul(a, b, params);
    poly_divmod(&prod, m, params).1
}

// ---------------------------------------------------------------------------
// Coordinate algebras: shared arithmetic for End(M) and its quotient
// ---------------------------------------------------------------------------

/// An associative algebra in coordinates: a multiplication closure and unit.
pub(crate) struct CoordAlg<'a, F: Field> {
    pub(crate) dim: usize,
    pub(crate) params: F::Params,
    pub(crate) unit: Vec<F>,
    pub(crate) mul: Box<dyn Fn(&[F], &[F]) -> Vec<F> + 'a>,
}

impl<F: Field> CoordAlg<'_, F> {
    fn zero(&self) -> Vec<F> {
        vec![F::zero(self.params); self.dim]
    }

    fn scale(&self, c: &F, a: &[F]) -> Vec<F> {
        a.iter().map(|x| x.mul(c)).collect()
    }

    fn add(&self, a: &[F], b: &[F]) -> Vec<F> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }

    /// Evaluate a polynomial at the element (Horner).
    fn eval_poly(&self, p: &[F], x: &[F]) -> Vec<F> {
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = (self.mul)(&acc, x);
            acc = self.add(&acc, &self.scale(c, &self.unit));
        }
        acc
    }

    /// Monic minimal polynomial of an element.
    fn min_poly(&self, x: &[F]) -> Vec<F> {
        let mut powers: Vec<Vec<F>> = vec![self.unit.clone()];
        loop {
            let mat = Matrix::from_rows(powers.clone(), self.dim, self.params);
            let k = powers.len();
            if mat.rank() < k {
                // the last power is dependent on the earlier ones
                let prev = Matrix::from_rows(powers[..k - 1].to_vec(), self.dim, self.params);
                let rhs = Matrix::from_rows(vec![powers[k - 1].clone()], self.dim, self.params);
                let sol = prev.solve_left(&rhs).expect("dependence detected");
                let mut coeffs: Vec<F> = (0..k - 1).map(|i| sol.at(0, i).neg()).collect();
                coeffs.push(F::one(self.params));
                return poly_trim(coeffs);
            }
            let next = (self.mul)(powers.last().unwrap(), x);
            powers.push(next);
            assert!(powers.len() <= self.dim + 1, "minimal polynomial search overran dimension");
        }
    }
}

// ---------------------------------------------------------------------------
// Endomorphism algebra
// ---------------------------------------------------------------------------

pub struct EndAlgebra<F: Field> {
    pub homs: Vec<ModuleHom<F>>,
    pub dim: usize,
    pub params: F::Params,
    /// coordinates of composites: table[i][j] = coords of (homs[i] then homs[j])
    pub table: Vec<Vec<Vec<F>>>,
    pub unit: Vec<F>,
    flat: Matrix<F>,
}

pub fn end_algebra<F: Field>(m: &Module<F>) -> EndAlgebra<F> {
    let params = m.alg.params;
    let homs = hom_space(m, m);
    let dim = homs.len();
    let flat_cols = if dim == 0 { 0 } else { homs[0].flatten().len() };
    let flat = Matrix::from_rows(homs.iter().map(|h| h.flatten()).collect(), flat_cols, params);
    let coords = |h: &ModuleHom<F>| -> Vec<F> {
        let rhs = Matrix::from_rows(vec![h.flatten()], flat_cols, params);
        flat.solve_left(&rhs).expect("composite lies in End(M)").row_vec(0)
    };
    let mut table = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            row.push(coords(&homs[i].then(&homs[j])));
        }
        table.push(row);
    }
    let unit = coords(&ModuleHom::identity(m));
    EndAlgebra { homs, dim, params, table, unit, flat }
}

impl<F: Field> EndAlgebra<F> {
    pub fn mul_coords(&self, a: &[F], b: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(self.params); self.dim];
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

    pub fn hom_of(&self, coords: &[F], m: &Module<F>) -> ModuleHom<F> {
        let mut acc = ModuleHom::zero(m, m);
        for (i, c) in coords.iter().enumerate() {
            acc = acc.add(&self.homs[i].scale(c));
        }
        acc
    }

    pub fn coords_of(&self, h: &ModuleHom<F>) -> Vec<F> {
        let rhs =
            Matrix::from_rows(vec![h.flatten()], self.flat.cols(), self.params);
        self.flat.solve_left(&rhs).expect("hom lies in End(M)").row_vec(0)
    }

    fn coord_alg(&self) -> CoordAlg<'_, F> {
        CoordAlg {
            dim: self.dim,
            params: self.params,
            unit: self.unit.clone(),
            mul: Box::new(move |a, b| self.mul_coords(a, b)),
        }
    }

    /// Trace of the action of an element on the module.
    fn action_trace(&self, coords: &[F]) -> F {
        let mut t = F::zero(self.params);
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for b in &self.homs[i].blocks {
                t = t.add(&c.mul(&b.trace()));
            }
        }
        t
    }
}

/// Kernel of a trace form, certified to be the radical: two-sided ideal,
/// nilpotent, semisimple quotient (regular trace form nondegenerate).
pub(crate) fn certified_radical<F: Field>(
    alg: &CoordAlg<'_, F>,
    gram: &Matrix<F>,
) -> Result<Matrix<F>, DecompError> {
    let params = alg.params;
    let rad = gram.left_kernel();
    let rad_rows: Vec<Vec<F>> = (0..rad.rows()).map(|r| rad.row_vec(r)).collect();
    for row in &rad_rows {
        for i in 0..alg.dim {
            let mut basis_vec = vec![F::zero(params); alg.dim];
            basis_vec[i] = F::one(params);
            for prod in [(alg.mul)(row, &basis_vec), (alg.mul)(&basis_vec, row)] {
                let probe = Matrix::from_rows(vec![prod], alg.dim, params);
                if !rad.row_space_contains(&probe) {
                    return Err(DecompError::DecompositionInconclusive(
                        "radical candidate is not an ideal".into(),
                    ));
                }
            }
        }
    }
    // nilpotency of the candidate
    let mut power = rad_rows.clone();
    let mut steps = 0;
    while !power.is_empty() {
        steps += 1;
        if steps > alg.dim + 1 {
            return Err(DecompError::DecompositionInconclusive(
                "radical candidate is not nilpotent".into(),
            ));
        }
        let mut next = Vec::new();
        for x in &power {
            for y in &rad_rows {
                next.push((alg.mul)(x, y));
            }
        }
        let basis = Matrix::from_rows(next, alg.dim, params).row_basis();
        power = (0..basis.rows()).map(|r| basis.row_vec(r)).collect();
    }
    // semisimple quotient: its own regular trace form must be nondegenerate
    let (_c, projection, section) = rad.quotient_data();
    let qdim = projection.cols();
    if qdim > 0 {
        let q_mul = |a: &[F], b: &[F]| -> Vec<F> {
            let xa = section.apply_row(a);
            let xb = section.apply_row(b);
            projection.apply_row(&(alg.mul)(&xa, &xb))
        };
        // regular representation trace: tr(L_{ab}) over the quotient
        let left_mult = |a: &[F]| -> Matrix<F> {
            Matrix::from_fn(qdim, qdim, params, |i, k| {
                let mut ei = vec![F::zero(params); qdim];
                ei[i] = F::one(params);
                q_mul(a, &ei)[k].clone()
            })
        };
        let gram_q = Matrix::from_fn(qdim, qdim, params, |i, j| {
            let mut ei = vec![F::zero(params); qdim];
            ei[i] = F::one(params);
            let mut ej = vec![F::zero(params); qdim];
            ej[j] = F::one(params);
            left_mult(&q_mul(&ei, &ej)).trace()
        });
        if gram_q.rank() != qdim {
            return Err(DecompError::DecompositionInconclusive(
                "semisimple quotient certification failed".into(),
            ));
        }
    }
    Ok(rad)
}

/// The radical of End(M), as rows of coordinates, certified.
pub fn end_radical<F: Field>(
    m: &Module<F>,
    end: &EndAlgebra<F>,
) -> Result<Matrix<F>, DecompError> {
    let params = end.params;
    let p = F::characteristic(params);
    if p != 0 && p <= m.total_dim() as u64 {
        return Err(DecompError::FieldTooSmall { p, dim: m.total_dim() });
    }
    // Gram matrix of the trace form of the action on M.
    let gram = Matrix::from_fn(end.dim, end.dim, params, |i, j| {
        end.action_trace(&end.table[i][j])
    });
    certified_radical(&end.coord_alg(), &gram)
}

// ---------------------------------------------------------------------------
// Idempotent hunting
// ---------------------------------------------------------------------------

const BERLEKAMP_SCAN_CAP: u64 = 1_000_000;

/// For a squarefree monic polynomial over a prime field: find a coprime
/// factorization f = g * h with both nontrivial, or report irreducible
/// (Ok(None)), or report an honest failure.
fn berlekamp_split<F: Field>(
    f: &[F],
    params: F::Params,
) -> Result<Option<(Vec<F>, Vec<F>)>, DecompError> {
    let p = F::characteristic(params);
    assert!(p > 0, "Berlekamp needs positive characteristic");
    let d = poly_deg(f).expect("nonzero polynomial");
    if d <= 1 {
        return Ok(None);
    }
    // t^p mod f by square and multiply
    let t = vec![F::zero(params), F::one(params)];
    let mut tp = vec![F::one(params)];
    let mut base = t.clone();
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            tp = poly_mulmod(&tp, &base, f, params);
        }
        base = poly_mulmod(&base, &base, f, params);
        e >>= 1;
    }
    // rows of Q: (t^p)^i mod f
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(d);
    let mut cur = vec![F::one(params)];
    for _ in 0..d {
        let mut row = cur.clone();
        row.resize(d, F::zero(params));
        rows.push(row);
        cur = poly_mulmod(&cur, &tp, f, params);
    }
    let qmat = Matrix::from_rows(rows, d, params);
    let diff = qmat.sub(&Matrix::identity(d, params));
    let null = diff.left_kernel();
    if null.rows() <= 1 {
        return Ok(None); // irreducible
    }
    // pick a kernel polynomial independent of the constants
    let mut g: Option<Vec<F>> = None;
    for r in 0..null.rows() {
        let row = null.row_vec(r);
        if row[1..].iter().any(|c| !c.is_zero()) {
            g = Some(poly_trim(row));
            break;
        }
    }
    let g = g.expect("kernel of dimension >= 2 contains a nonconstant polynomial");
    let scan = p.min(BERLEKAMP_SCAN_CAP);
    for c in 0..scan {
        let shifted = poly_sub(&g, &[F::from_int(c as i64, params)], params);
        let gc = poly_gcd(f, &shifted, params);
        if let Some(dg) = poly_deg(&gc) {
            if dg > 0 && dg < d {
                let (q, r) = poly_divmod(f, &gc, params);
                debug_assert!(r.is_empty());
                return Ok(Some((gc, q)));
            }
        }
    }
    Err(DecompError::DecompositionInconclusive(format!(
        "Berlekamp splitting scan exceeded {BERLEKAMP_SCAN_CAP} constants"
    )))
}

/// Over the rationals: extract a rational root of a squarefree monic
/// polynomial, giving the coprime split (t - r, rest); None when no rational
/// root is found by bounded divisor search.
fn rational_root_split<F: Field>(f: &[F], params: F::Params) -> Option<(Vec<F>, Vec<F>)> {
    let d = poly_deg(f)?;
    if d <= 1 {
        return None;
    }
    // Try small candidates directly: n/m for |n|, m bounded. Minimal
    // polynomials in endomorphism rings of the intended inputs have tiny
    // eigenvalues; cap the search and stay honest if it misses.
    const NUM_BOUND: i64 = 64;
    const DEN_BOUND: i64 = 12;
    for m in 1..=DEN_BOUND {
        for n in -NUM_BOUND..=NUM_BOUND {
            let r = F::from_int(n, params).mul(&F::from_int(m, params).inv().unwrap());
            // evaluate
            let mut acc = F::zero(params);
            for c in f.iter().rev() {
                acc = acc.mul(&r).add(c);
            }
            if acc.is_zero() {
                let root_factor = vec![r.neg(), F::one(params)];
                let (q, rem) = poly_divmod(f, &root_factor, params);
                debug_assert!(rem.is_empty());
                return Some((root_factor, q));
            }
        }
    }
    None
}

/// Find a nontrivial idempotent in a coordinate algebra with certified
/// radical `rad`; Ok(None) means the algebra is certified local.
pub(crate) fn split_idempotent<F: Field>(
    alg: &CoordAlg<'_, F>,
    rad: &Matrix<F>,
) -> Result<Option<Vec<F>>, DecompError> {
    let params = alg.params;
    let p = F::characteristic(params);
    let (_c, projection, section) = rad.quotient_data();
    let qdim = projection.cols();
    if qdim <= 1 {
        return Ok(None); // local ring
    }
    let q_alg = CoordAlg {
        dim: qdim,
        params,
        unit: projection.apply_row(&alg.unit),
        mul: Box::new(|a: &[F], b: &[F]| {
            let xa = section.apply_row(a);
            let xb = section.apply_row(b);
            projection.apply_row(&(alg.mul)(&xa, &xb))
        }),
    };

    // Candidate elements. Central elements come first: when the quotient has
    // two or more simple blocks, every non-scalar central element has a
    // minimal polynomial that splits into distinct linear factors over the
    // base field, so the search below is complete in that case. Basis
    // elements, sums, differences, and products cover the common shapes of a
    // single matrix block.
    let mut basis: Vec<Vec<F>> = Vec::with_capacity(qdim);
    for i in 0..qdim {
        let mut e = vec![F::zero(params); qdim];
        e[i] = F::one(params);
        basis.push(e);
    }
    let center_rows: Vec<Vec<F>> = {
        // z central iff z*e_i = e_i*z for all i: stack the commutator
        // coordinate blocks side by side and take the left kernel.
        let mut stacked: Option<Matrix<F>> = None;
        for i in 0..qdim {
            let ci = Matrix::from_rows(
                (0..qdim)
                    .map(|r| {
                        let ab = (q_alg.mul)(&basis[r], &basis[i]);
                        let ba = (q_alg.mul)(&basis[i], &basis[r]);
                        ab.iter().zip(&ba).map(|(x, y)| x.sub(y)).collect()
                    })
                    .collect(),
                qdim,
                params,
            );
            stacked = Some(match stacked {
                None => ci,
                Some(s) => s.hstack(&ci),
            });
        }
        let z = stacked.expect("quotient dimension at least two").left_kernel();
        (0..z.rows()).map(|r| z.row_vec(r)).collect()
    };
    let minus_one = F::from_int(-1, params);
    let mut candidates: Vec<Vec<F>> = center_rows;
    candidates.extend(basis.iter().cloned());
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            candidates.push(q_alg.add(&basis[i], &basis[j]));
            candidates.push(q_alg.add(&basis[i], &q_alg.scale(&minus_one, &basis[j])));
            candidates.push((q_alg.mul)(&basis[i], &basis[j]));
        }
    }

    let mut uncertified = false;
    let mut split: Option<(Vec<F>, Vec<F>, Vec<F>)> = None; // (x, f, g)
    'outer: for x in &candidates {
        let mp = q_alg.min_poly(x);
        let sf = poly_squarefree_part(&mp, params);
        if poly_deg(&sf).unwrap_or(0) < 2 {
            continue;
        }
        let factors = if p == 0 {
            match rational_root_split::<F>(&sf, params) {
                Some(fg) => Some(fg),
                None => {
                    if poly_deg(&sf) != Some(2) {
                        // cannot certify irreducibility beyond quadratics
                        uncertified = true;
                    }
                    // quadratic with no rational root is irreducible: no
                    // split from this element, certified
                    None
                }
            }
        } else {
            berlekamp_split::<F>(&sf, params)?
        };
        if let Some((f, g)) = factors {
            split = Some((x.clone(), f, g));
            break 'outer;
        }
    }

    // Commutative quotient over a prime field: the kernel of x -> x^p - x
    // decides the matter completely even if no candidate split.
    if split.is_none() && p > 0 {
        let commutative = (0..qdim).all(|i| {
            (0..qdim).all(|j| {
                let mut ei = vec![F::zero(params); qdim];
                ei[i] = F::one(params);
                let mut ej = vec![F::zero(params); qdim];
                ej[j] = F::one(params);
                (q_alg.mul)(&ei, &ej) == (q_alg.mul)(&ej, &ei)
            })
        });
        if commutative {
            // Frobenius fixed points: rows x_i^p - x_i
            let rows: Vec<Vec<F>> = (0..qdim)
                .map(|i| {
                    let mut ei = vec![F::zero(params); qdim];
                    ei[i] = F::one(params);
                    let mut pw = q_alg.unit.clone();
                    let mut base = ei.clone();
                    let mut e = p;
                    while e > 0 {
                        if e & 1 == 1 {
                            pw = (q_alg.mul)(&pw, &base);
                        }
                        base = (q_alg.mul)(&base, &base);
                        e >>= 1;
                    }
                    pw.iter().zip(&ei).map(|(a, b)| a.sub(b)).collect()
                })
                .collect();
            let fro = Matrix::from_rows(rows, qdim, params);
            let fixed = fro.left_kernel();
            if fixed.rows() <= 1 {
                return Ok(None); // the quotient is a field: indecomposable
            }
            // a fixed element independent of 1 has a split minimal polynomial
            let unit_mat = Matrix::from_rows(vec![q_alg.unit.clone()], qdim, params);
            for r in 0..fixed.rows() {
                let x = fixed.row_vec(r);
                let probe = Matrix::from_rows(vec![x.clone()], qdim, params);
                if unit_mat.row_space_contains(&probe) {
                    continue;
                }
                let mp = q_alg.min_poly(&x);
                let sf = poly_squarefree_part(&mp, params);
                if let Some((f, g)) = berlekamp_split::<F>(&sf, params)? {
                    split = Some((x, f, g));
                    break;
                }
            }
        }
    }

    let Some((x, f, g)) = split else {
        if uncertified || qdim > 1 {
            return Err(DecompError::DecompositionInconclusive(format!(
                "no splitting idempotent found in a quotient of dimension {qdim}"
            )));
        }
        return Ok(None);
    };

    // Bezout idempotent in the quotient: e = (u f)(x) with u f + v g = 1.
    let (gcd, u, _v) = poly_bezout(&f, &g, params);
    debug_assert_eq!(poly_deg(&gcd), Some(0), "split factors must be coprime");
    let uf = poly_mul(&u, &f, params);
    let e_q = q_alg.eval_poly(&uf, &x);
    // sanity: idempotent in the quotient, nontrivial
    debug_assert_eq!((q_alg.mul)(&e_q, &e_q), e_q);

    // Lift through the radical: e <- 3e^2 - 2e^3 until exactly idempotent.
    let mut e = section.apply_row(&e_q);
    let three = F::from_int(3, params);
    let two = F::from_int(2, params);
    for _ in 0..64 {
        let e2 = (alg.mul)(&e, &e);
        if e2 == e {
            break;
        }
        let e3 = (alg.mul)(&e2, &e);
        e = e2
            .iter()
            .zip(&e3)
            .map(|(a, b)| three.mul(a).sub(&two.mul(b)))
            .collect();
    }
    let e2 = (alg.mul)(&e, &e);
    if e2 != e {
        return Err(DecompError::DecompositionInconclusive(
            "idempotent lifting did not converge".into(),
        ));
    }
    let is_zero = e.iter().all(|c| c.is_zero());
    let is_unit = e == alg.unit;
    if is_zero || is_unit {
        return Err(DecompError::DecompositionInconclusive(
            "lifted idempotent is trivial".into(),
        ));
    }
    Ok(Some(e))
}

/// Find a nontrivial idempotent endomorphism of M if M decomposes; Ok(None)
/// means certified indecomposable.
fn find_idempotent<F: Field>(
    m: &Module<F>,
    end: &EndAlgebra<F>,
) -> Result<Option<ModuleHom<F>>, DecompError> {
    let rad = end_radical(m, end)?;
    let coord = end.coord_alg();
    Ok(split_idempotent(&coord, &rad)?.map(|e| end.hom_of(&e, m)))
}

// ---------------------------------------------------------------------------
// Decomposition and isomorphism
// ---------------------------------------------------------------------------

/// Split M into indecomposable direct summands (order deterministic).
pub fn decompose<F: Field>(m: &Module<F>) -> Result<Vec<Module<F>>, DecompError> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let end = end_algebra(m);
    match find_idempotent(m, &end)? {
        None => Ok(vec![m.clone()]),
        Some(e) => {
            let one_minus = ModuleHom::identity(m).sub(&e);
            let mut out = Vec::new();
            for part in [e, one_minus] {
                let subspaces: Vec<Matrix<F>> =
                    part.blocks.iter().map(|b| b.row_basis()).collect();
                let (sub, _incl) = submodule(m, &subspaces);
                out.extend(decompose(&sub)?);
            }
            Ok(out)
        }
    }
}

pub fn is_indecomposable<F: Field>(m: &Module<F>) -> Result<bool, DecompError> {
    if m.is_zero() {
        return Ok(false);
    }
    let end = end_algebra(m);
    Ok(find_idempotent(m, &end)?.is_none())
}

/// Isomorphism test for two modules already known to be indecomposable:
/// complete, because the non-isomorphisms form a subspace of Hom, so some
/// basis element must be invertible whenever an isomorphism exists.
pub fn indec_isomorphic<F: Field>(m: &Module<F>, n: &Module<F>) -> bool {
    if m.dims != n.dims {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    hom_space(m, n).iter().any(|f| f.is_iso())
}

/// Full isomorphism test by decomposing both sides and matching summands.
pub fn modules_isomorphic<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<bool, DecompError> {
    if m.total_dim() != n.total_dim() || m.dims != n.dims {
        return Ok(false);
    }
    let mut parts_m = decompose(m)?;
    let mut parts_n = decompose(n)?;
    if parts_m.len() != parts_n.len() {
        return Ok(false);
    }
    'outer: while let Some(x) = parts_m.pop() {
        for i in 0..parts_n.len() {
            if indec_isomorphic(&x, &parts_n[i]) {
                parts_n.swap_remove(i);
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compute_basis, AlgebraBasis};
    use crate::dsl::parse_bound_quiver;
    use crate::field::Fp;
    use crate::quiver::Vertex;
    use crate::rep::{direct_sum, projective, simple};
    use num_rational::BigRational;
    use std::sync::Arc;

    fn motivating_c() -> Arc<AlgebraBasis<BigRational>> {
        Arc::new(
            compute_basis(
                &parse_bound_quiver::<BigRational>(
                    "algebra c\nvertices 1 2 3 4\narrow alpha: 4 -> 2\narrow beta: 2 -> 1\narrow gamma: 4 -> 3\narrow delta: 3 -> 1\nrelations\nalpha*beta = 0\ngamma*delta = 0\n",
                    (),
                )
                .unwrap(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn polynomial_utilities() {
        let p = ();
        let q = |v: &[i64]| -> Vec<BigRational> {
            v.iter().map(|&x| <BigRational as Field>::from_int(x, p)).collect()
        };
        // (t^2 - 1) = (t - 1)(t + 1)
        let f = q(&[-1, 0, 1]);
        let g = poly_gcd(&f, &q(&[-1, 1]), p);
        assert_eq!(g, q(&[-1, 1]));
        let (quo, rem) = poly_divmod(&f, &q(&[-1, 1]), p);
        assert_eq!(quo, q(&[1, 1]));
        assert!(rem.is_empty());
        let (gg, u, v) = poly_bezout(&q(&[-1, 1]), &q(&[1, 1]), p);
        assert_eq!(poly_deg(&gg), Some(0));
        let lhs = poly_sub(
            &poly_mul(&u, &q(&[-1, 1]), p),
            &poly_mul(&v, &q(&[1, 1]), p).iter().map(|c| c.neg()).collect::<Vec<_>>(),
            p,
        );
        assert_eq!(lhs, gg, "u*a + v*b = gcd");
        // squarefree part of t^3 - t^2 is t^2 - t
        let sf = poly_squarefree_part(&q(&[0, 0, -1, 1]), p);
        assert_eq!(sf, q(&[0, -1, 1]));
    }

    #[test]
    fn decompose_direct_sum() {
        let alg = motivating_c();
        let p4 = projective(&alg, Vertex(3));
        let s1 = simple(&alg, Vertex(0));
        let (sum, _, _) = direct_sum(&[p4.clone(), s1.clone(), s1.clone()], &alg);
        let parts = decompose(&sum).unwrap();
        assert_eq!(parts.len(), 3);
        let mut dims: Vec<usize> = parts.iter().map(|m| m.total_dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 3]);
        assert!(is_indecomposable(&p4).unwrap());
        assert!(!is_indecomposable(&sum).unwrap());
    }

    #[test]
    fn iso_testing() {
        let alg = motivating_c();
        let p4 = projective(&alg, Vertex(3));
        let p2 = projective(&alg, Vertex(1));
        let s1 = simple(&alg, Vertex(0));
        assert!(indec_isomorphic(&s1, &simple(&alg, Vertex(0))));
        assert!(!indec_isomorphic(&p4, &p2));
        let (a, _, _) = direct_sum(&[p4.clone(), s1.clone()], &alg);
        let (b, _, _) = direct_sum(&[s1.clone(), p4.clone()], &alg);
        assert!(modules_isomorphic(&a, &b).unwrap(), "direct sum order does not matter");
        let (c, _, _) = direct_sum(&[p2.clone(), s1.clone()], &alg);
        assert!(!modules_isomorphic(&a, &c).unwrap());
    }

    #[test]
    fn prime_field_decomposition_and_gate() {
        let text = "algebra c\nvertices 1 2 3 4\narrow alpha: 4 -> 2\narrow beta: 2 -> 1\narrow gamma: 4 -> 3\narrow delta: 3 -> 1\nrelations\nalpha*beta = 0\ngamma*delta = 0\n";
        let alg7 = Arc::new(
            compute_basis(&parse_bound_quiver::<Fp>(text, 7).unwrap()).unwrap(),
        );
        let p4 = projective(&alg7, Vertex(3));
        let s1 = simple(&alg7, Vertex(0));
        let (sum, _, _) = direct_sum(&[p4.clone(), s1.clone()], &alg7);
        let parts = decompose(&sum).unwrap();
        assert_eq!(parts.len(), 2, "decomposition over F_7 (7 > dim 4)");
        let alg2 = Arc::new(
            compute_basis(&parse_bound_quiver::<Fp>(text, 2).unwrap()).unwrap(),
        );
        let p4 = projective(&alg2, Vertex(3));
        let s1 = simple(&alg2, Vertex(0));
        let (sum, _, _) = direct_sum(&[p4, s1], &alg2);
        match decompose(&sum) {
            Err(DecompError::FieldTooSmall { p: 2, dim: 4 }) => {}
            other => panic!("expected FieldTooSmall, got {other:?}"),
        }
    }

    #[test]
    fn end_ring_with_radical() {
        // The uniserial P(2) over the one-loop algebra x^3 = 0 at a single
        // vertex has End = k[x]/(x^3): radical dimension 2, indecomposable.
        let alg = Arc::new(
            compute_basis(
                &parse_bound_quiver::<BigRational>(
                    "algebra loop3\nvertices 1\narrow x: 1 -> 1\nrelations\nx*x*x = 0\n",
                    (),
                )
                .unwrap(),
            )
            .unwrap(),
        );
        let p = projective(&alg, Vertex(0));
        let end = end_algebra(&p);
        assert_eq!(end.dim, 3);
        let rad = end_radical(&p, &end).unwrap();
        assert_eq!(rad.rows(), 2);
        assert!(is_indecomposable(&p).unwrap());
    }
}
