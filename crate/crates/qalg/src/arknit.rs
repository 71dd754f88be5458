//! Mesh-by-mesh knitting of Auslander-Reiten quiver fragments.
//!
//! A fragment is a finite, certified piece of the Auslander-Reiten quiver of
//! an algebra: vertices are pairwise non-isomorphic indecomposable modules,
//! arrows record irreducible maps with their multiplicities, and every mesh
//! stored in the fragment has been checked to be an almost split sequence.
//! Nothing is taken on faith from the knitting recursion itself; each mesh is
//! certified pointwise, so fragments stay correct even when a component mixes
//! with projectives or injectives discovered along the way.
//!
//! The certificate for the mesh ending at a non-projective module `N` with
//! translate `T`: the extension space `Ext^1(N, T)` is nonzero, and the class
//! realized is chosen from the socle of that space under the right action of
//! `End(N)` by precomposition.  Every nonzero class in that socle differs
//! from the almost split class by composition with an automorphism, so
//! realizing any of them yields an almost split sequence; the realized
//! sequence is then re-checked for exactness and non-splitness.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraBasis, BasisError};
use crate::decomp::{decompose, end_algebra, end_radical, indec_isomorphic, DecompError};
use crate::field::Field;
use crate::homology::{ext_functorial_action, ext_space, realize_extension, tau, tau_inverse, ShortExact};
use crate::matrix::Matrix;
use crate::quiver::Vertex;
use crate::rep::{injective, projective, quotient_module, radical_submodule, Module};

#[derive(Debug, Error)]
pub enum KnitError {
    #[error("mesh verification failed: {0}")]
    MeshVerificationFailed(String),
    #[error("no starting modules: {0}")]
    NoStartingModules(String),
    #[error("seed module with dimension vector {0} is not indecomposable")]
    SeedNotIndecomposable(String),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Basis(#[from] BasisError),
}

/// Advisory marker describing which part of the Auslander-Reiten quiver a
/// fragment was knitted from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentTag {
    Postprojective,
    Preinjective,
    Tube,
    Window,
    Unknown,
}

/// One indecomposable module placed in a fragment.
#[derive(Clone)]
pub struct FragmentVertex<F: Field> {
    pub module: Module<F>,
    pub label: String,
    pub projective_of: Option<Vertex>,
    pub injective_of: Option<Vertex>,
    /// Seeds sit at layer 0; each forward wave adds 1, each backward wave
    /// subtracts 1.  Purely descriptive.
    pub layer: isize,
    /// All irreducible maps out of this module are present in the fragment.
    pub out_complete: bool,
    /// All irreducible maps into this module are present in the fragment.
    pub in_complete: bool,
}

/// A certified mesh: the almost split sequence from `start` to `end`, whose
/// middle term is the direct sum of the listed vertices with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mesh {
    pub start: usize,
    pub end: usize,
    pub middle: Vec<(usize, usize)>,
}

/// A finite certified fragment of the Auslander-Reiten quiver.
pub struct ARFragment<F: Field> {
    pub alg: Arc<AlgebraBasis<F>>,
    pub op: Arc<AlgebraBasis<F>>,
    pub vertices: Vec<FragmentVertex<F>>,
    /// `(source, target, multiplicity)` of irreducible maps, deduplicated.
    pub arrows: Vec<(usize, usize, usize)>,
    pub meshes: Vec<Mesh>,
    pub component: ComponentTag,
    projectives: Vec<Module<F>>,
    injectives: Vec<Module<F>>,
    expanded_fwd: Vec<bool>,
    expanded_bwd: Vec<bool>,
    next_forward_layer: isize,
    next_backward_layer: isize,
}

impl<F: Field> fmt::Debug for ARFragment<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fragment with {} modules, {} arrows, {} meshes",
            self.vertices.len(),
            self.arrows.len(),
            self.meshes.len()
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Backward,
}

impl<F: Field> ARFragment<F> {
    pub fn new(alg: &Arc<AlgebraBasis<F>>, component: ComponentTag) -> Result<Self, KnitError> {
        let op = Arc::new(alg.opposite()?);
        let n = alg.bq.quiver.vertex_count();
        let projectives = (0..n).map(|x| projective(alg, Vertex(x))).collect();
        let injectives = (0..n).map(|x| injective(alg, Vertex(x))).collect();
        Ok(ARFragment {
            alg: alg.clone(),
            op,
            vertices: Vec::new(),
            arrows: Vec::new(),
            meshes: Vec::new(),
            component,
            projectives,
            injectives,
            expanded_fwd: Vec::new(),
            expanded_bwd: Vec::new(),
            next_forward_layer: 1,
            next_backward_layer: -1,
        })
    }

    pub fn module(&self, id: usize) -> &Module<F> {
        &self.vertices[id].module
    }

    pub fn label(&self, id: usize) -> &str {
        &self.vertices[id].label
    }

    /// Index of the placed module isomorphic to `m`, if any.
    pub fn find(&self, m: &Module<F>) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.module.dims == m.dims && indec_isomorphic(&v.module, m))
    }

    /// First placed module with the given dimension vector.
    pub fn find_by_dims(&self, dims: &[usize]) -> Option<usize> {
        self.vertices.iter().position(|v| v.module.dims == dims)
    }

    pub fn arrows_from(&self, id: usize) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|&&(s, _, _)| s == id).map(|&(_, t, m)| (t, m)).collect()
    }

    pub fn arrows_into(&self, id: usize) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|&&(_, t, _)| t == id).map(|&(s, _, m)| (s, m)).collect()
    }

    pub fn mesh_ending_at(&self, id: usize) -> Option<&Mesh> {
        self.meshes.iter().find(|m| m.end == id)
    }

    pub fn mesh_starting_at(&self, id: usize) -> Option<&Mesh> {
        self.meshes.iter().find(|m| m.start == id)
    }

    /// Pairs `(m, t)` of placed indices with `t` the translate-inverse of `m`,
    /// read off the certified meshes.
    pub fn tau_pairs(&self) -> Vec<(usize, usize)> {
        self.meshes.iter().map(|m| (m.start, m.end)).collect()
    }

    /// Vertices whose outgoing irreducible maps are not all known yet: the
    /// places where forward knitting stopped.
    pub fn forward_boundary(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| !self.vertices[i].out_complete).collect()
    }

    /// Vertices whose incoming irreducible maps are not all known yet: the
    /// places where backward knitting stopped.
    pub fn backward_boundary(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| !self.vertices[i].in_complete).collect()
    }

    /// Every mesh in the fragment is certified and the in/out arrow sets of
    /// interior vertices are complete.
    pub fn is_complete(&self) -> bool {
        self.forward_boundary().is_empty() && self.backward_boundary().is_empty()
    }

    /// Insert an indecomposable module, deduplicating up to isomorphism.
    fn place(&mut self, module: Module<F>, layer: isize) -> usize {
        if let Some(id) = self.find(&module) {
            return id;
        }
        let q = &self.alg.bq.quiver;
        let mut projective_of = None;
        let mut injective_of = None;
        for x in 0..q.vertex_count() {
            if projective_of.is_none()
                && self.projectives[x].dims == module.dims
                && indec_isomorphic(&self.projectives[x], &module)
            {
                projective_of = Some(Vertex(x));
            }
            if injective_of.is_none()
                && self.injectives[x].dims == module.dims
                && indec_isomorphic(&self.injectives[x], &module)
            {
                injective_of = Some(Vertex(x));
            }
        }
        let label = match (projective_of, injective_of) {
            (Some(p), Some(i)) => format!("P({})=I({})", q.label(p), q.label(i)),
            (Some(p), None) => format!("P({})", q.label(p)),
            (None, Some(i)) => format!("I({})", q.label(i)),
            (None, None) => {
                if module.total_dim() == 1 {
                    let x = module.dims.iter().position(|&d| d == 1).expect("nonzero simple");
                    format!("S({})", q.label(Vertex(x)))
                } else {
                    format!("M{}", self.vertices.len())
                }
            }
        };
        self.vertices.push(FragmentVertex {
            module: module.named(label.clone()),
            label,
            projective_of,
            injective_of,
            layer,
            out_complete: false,
            in_complete: false,
        });
        self.expanded_fwd.push(false);
        self.expanded_bwd.push(false);
        self.vertices.len() - 1
    }

    fn add_arrow(&mut self, s: usize, t: usize, mult: usize) -> Result<(), KnitError> {
        for &(a, b, m) in &self.arrows {
            if a == s && b == t {
                if m != mult {
                    return Err(KnitError::MeshVerificationFailed(format!(
                        "irreducible map {} -> {} recorded with multiplicity {} but re-derived with {}",
                        self.vertices[s].label, self.vertices[t].label, m, mult
                    )));
                }
                return Ok(());
            }
        }
        self.arrows.push((s, t, mult));
        Ok(())
    }

    fn record_mesh(&mut self, mesh: Mesh) -> Result<(), KnitError> {
        if let Some(old) = self.meshes.iter().find(|m| m.end == mesh.end) {
            if *old != mesh {
                return Err(KnitError::MeshVerificationFailed(format!(
                    "two distinct meshes end at {}",
                    self.vertices[mesh.end].label
                )));
            }
            return Ok(());
        }
        self.meshes.push(mesh);
        Ok(())
    }

    /// Record the outgoing irreducible maps of one vertex, placing whatever
    /// new modules appear one layer to the right.  Call [`Self::refresh`]
    /// after a batch of single-vertex expansions.
    pub fn expand_out(&mut self, id: usize) -> Result<(), KnitError> {
        let layer = self.vertices[id].layer + 1;
        self.expand_forward(id, layer)
    }

    /// Record the incoming irreducible maps of one vertex, placing whatever
    /// new modules appear one layer to the left.  Call [`Self::refresh`]
    /// after a batch of single-vertex expansions.
    pub fn expand_in(&mut self, id: usize) -> Result<(), KnitError> {
        let layer = self.vertices[id].layer - 1;
        self.expand_backward(id, layer)
    }

    /// Recompute completeness flags after single-vertex expansions.
    pub fn refresh(&mut self) -> Result<(), KnitError> {
        self.finalize()
    }

    /// Extend the fragment by whole waves in the translate-inverse direction;
    /// returns true when the component is exhausted before the step budget.
    pub fn extend_forward(&mut self, steps: usize) -> Result<bool, KnitError> {
        self.extend(Direction::Forward, steps)
    }

    /// Extend the fragment by whole waves in the translate direction; returns
    /// true when the component is exhausted before the step budget.
    pub fn extend_backward(&mut self, steps: usize) -> Result<bool, KnitError> {
        self.extend(Direction::Backward, steps)
    }

    fn extend(&mut self, dir: Direction, steps: usize) -> Result<bool, KnitError> {
        for _ in 0..steps {
            let frontier: Vec<usize> = (0..self.vertices.len())
                .filter(|&i| match dir {
                    Direction::Forward => !self.expanded_fwd[i],
                    Direction::Backward => !self.expanded_bwd[i],
                })
                .collect();
            if frontier.is_empty() {
                break;
            }
            let layer = match dir {
                Direction::Forward => {
                    let l = self.next_forward_layer;
                    self.next_forward_layer += 1;
                    l
                }
                Direction::Backward => {
                    let l = self.next_backward_layer;
                    self.next_backward_layer -= 1;
                    l
                }
            };
            for id in frontier {
                match dir {
                    Direction::Forward => self.expand_forward(id, layer)?,
                    Direction::Backward => self.expand_backward(id, layer)?,
                }
            }
        }
        let done = (0..self.vertices.len()).all(|i| match dir {
            Direction::Forward => self.expanded_fwd[i],
            Direction::Backward => self.expanded_bwd[i],
        });
        self.finalize()?;
        Ok(done)
    }

    /// Record all irreducible maps out of `id`: the socle quotient for an
    /// injective vertex, otherwise the certified mesh starting at `id`.
    fn expand_forward(&mut self, id: usize, layer: isize) -> Result<(), KnitError> {
        if self.expanded_fwd[id] {
            return Ok(());
        }
        self.expanded_fwd[id] = true;
        let m = self.vertices[id].module.clone();
        if self.vertices[id].injective_of.is_some() {
            let (quo, _) = quotient_module(&m, &m.socle_subspaces());
            if !quo.is_zero() {
                for (part, mult) in group_isomorphic(decompose(&quo)?) {
                    let pid = self.place(part, layer);
                    self.add_arrow(id, pid, mult)?;
                }
            }
            return Ok(());
        }
        let next = tau_inverse(&m, &self.op);
        let ses = almost_split_sequence(&next, &m)?;
        let mut middle = Vec::new();
        for (part, mult) in group_isomorphic(decompose(&ses.mid)?) {
            middle.push((self.place(part, layer), mult));
        }
        let end_id = self.place(ses.right.clone(), layer);
        for &(pid, mult) in &middle {
            self.add_arrow(id, pid, mult)?;
            self.add_arrow(pid, end_id, mult)?;
        }
        middle.sort_unstable();
        self.record_mesh(Mesh { start: id, end: end_id, middle })
    }

    /// Record all irreducible maps into `id`: the radical inclusion for a
    /// projective vertex, otherwise the certified mesh ending at `id`.
    fn expand_backward(&mut self, id: usize, layer: isize) -> Result<(), KnitError> {
        if self.expanded_bwd[id] {
            return Ok(());
        }
        self.expanded_bwd[id] = true;
        let m = self.vertices[id].module.clone();
        if self.vertices[id].projective_of.is_some() {
            let (rad, _) = radical_submodule(&m);
            if !rad.is_zero() {
                for (part, mult) in group_isomorphic(decompose(&rad)?) {
                    let pid = self.place(part, layer);
                    self.add_arrow(pid, id, mult)?;
                }
            }
            return Ok(());
        }
        let prev = tau(&m, &self.op);
        let ses = almost_split_sequence(&m, &prev)?;
        let mut middle = Vec::new();
        for (part, mult) in group_isomorphic(decompose(&ses.mid)?) {
            middle.push((self.place(part, layer), mult));
        }
        let start_id = self.place(ses.left.clone(), layer);
        for &(pid, mult) in &middle {
            self.add_arrow(start_id, pid, mult)?;
            self.add_arrow(pid, id, mult)?;
        }
        middle.sort_unstable();
        self.record_mesh(Mesh { start: start_id, end: id, middle })
    }

    /// Recompute completeness flags, and connect projective radicals and
    /// injective socle quotients to whatever is already placed.  Idempotent.
    fn finalize(&mut self) -> Result<(), KnitError> {
        for id in 0..self.vertices.len() {
            let m = self.vertices[id].module.clone();
            let in_complete = if self.vertices[id].projective_of.is_some() {
                let (rad, _) = radical_submodule(&m);
                if rad.is_zero() {
                    true
                } else {
                    let mut all = true;
                    for (part, mult) in group_isomorphic(decompose(&rad)?) {
                        match self.find(&part) {
                            Some(pid) => self.add_arrow(pid, id, mult)?,
                            None => all = false,
                        }
                    }
                    all
                }
            } else {
                self.mesh_ending_at(id).is_some()
            };
            let out_complete = if self.vertices[id].injective_of.is_some() {
                let (quo, _) = quotient_module(&m, &m.socle_subspaces());
                if quo.is_zero() {
                    true
                } else {
                    let mut all = true;
                    for (part, mult) in group_isomorphic(decompose(&quo)?) {
                        match self.find(&part) {
                            Some(pid) => self.add_arrow(id, pid, mult)?,
                            None => all = false,
                        }
                    }
                    all
                }
            } else {
                self.mesh_starting_at(id).is_some()
            };
            self.vertices[id].in_complete = in_complete;
            self.vertices[id].out_complete = out_complete;
        }
        Ok(())
    }
}

/// Group a list of indecomposable summands into isomorphism classes with
/// multiplicities, in order of first appearance.
fn group_isomorphic<F: Field>(parts: Vec<Module<F>>) -> Vec<(Module<F>, usize)> {
    let mut out: Vec<(Module<F>, usize)> = Vec::new();
    'next: for p in parts {
        for (q, mult) in out.iter_mut() {
            if q.dims == p.dims && indec_isomorphic(q, &p) {
                *mult += 1;
                continue 'next;
            }
        }
        out.push((p, 1));
    }
    out
}

/// The almost split sequence `0 -> t -> E -> n -> 0` ending at the
/// non-projective indecomposable `n`, where `t` is its translate.
///
/// The class is chosen in the socle of `Ext^1(n, t)` under the right action
/// of `End(n)` by precomposition: the almost split class spans that socle up
/// to composition with automorphisms, so any nonzero socle class realizes an
/// almost split sequence.  The realized sequence is re-verified to be exact
/// and non-split before it is returned.
pub fn almost_split_sequence<F: Field>(
    n: &Module<F>,
    t: &Module<F>,
) -> Result<ShortExact<F>, KnitError> {
    let params = n.alg.params;
    let ext = ext_space(n, t, 1);
    if ext.dim() == 0 {
        return Err(KnitError::MeshVerificationFailed(format!(
            "no non-split extension of a module with dimension vector {:?} by one with {:?}",
            n.dims, t.dims
        )));
    }
    let class = if ext.dim() == 1 {
        vec![F::one(params)]
    } else {
        let end = end_algebra(n);
        let rad = end_radical(n, &end)?;
        let mut stacked: Option<Matrix<F>> = None;
        for r in 0..rad.rows() {
            let phi = end.hom_of(rad.row(r), n);
            let action = ext_functorial_action(&ext, &phi);
            stacked = Some(match stacked {
                None => action,
                Some(s) => s.hstack(&action),
            });
        }
        let socle = match stacked {
            None => Matrix::identity(ext.dim(), params),
            Some(s) => s.left_kernel(),
        };
        if socle.rows() == 0 {
            return Err(KnitError::MeshVerificationFailed(
                "extension space has zero socle under the endomorphism action".into(),
            ));
        }
        socle.row_vec(0)
    };
    // The class coordinates live over the ext basis; combine the basis
    // cocycle representatives accordingly before realizing.
    let mut cocycle = ext.rep_cocycle(0).scale(&class[0]);
    for (k, c) in class.iter().enumerate().skip(1) {
        cocycle = cocycle.add(&ext.rep_cocycle(k).scale(c));
    }
    if ext.is_zero_class(&cocycle) {
        return Err(KnitError::MeshVerificationFailed(
            "chosen extension class is split".into(),
        ));
    }
    let ses = realize_extension(&ext, &cocycle);
    ses.verify().map_err(KnitError::MeshVerificationFailed)?;
    Ok(ses)
}

/// Re-certify one stored mesh from scratch: translate agreement in both
/// directions, almost split sequence realization, and the recorded middle.
pub fn verify_mesh<F: Field>(frag: &ARFragment<F>, mesh: &Mesh) -> Result<(), KnitError> {
    let end = &frag.vertices[mesh.end].module;
    let start = &frag.vertices[mesh.start].module;
    let t = tau(end, &frag.op);
    if t.dims != start.dims || !indec_isomorphic(&t, start) {
        return Err(KnitError::MeshVerificationFailed(format!(
            "translate of {} has dimension vector {:?}, but the mesh starts at {} with {:?}",
            frag.vertices[mesh.end].label, t.dims, frag.vertices[mesh.start].label, start.dims
        )));
    }
    let ti = tau_inverse(start, &frag.op);
    if ti.dims != end.dims || !indec_isomorphic(&ti, end) {
        return Err(KnitError::MeshVerificationFailed(format!(
            "translate-inverse of {} does not match the mesh end {}",
            frag.vertices[mesh.start].label, frag.vertices[mesh.end].label
        )));
    }
    let ses = almost_split_sequence(end, start)?;
    let mut expected = mesh.middle.clone();
    for (part, mult) in group_isomorphic(decompose(&ses.mid)?) {
        let id = frag.find(&part).ok_or_else(|| {
            KnitError::MeshVerificationFailed(format!(
                "middle summand with dimension vector {:?} is not placed in the fragment",
                part.dims
            ))
        })?;
        let pos = expected.iter().position(|&e| e == (id, mult)).ok_or_else(|| {
            KnitError::MeshVerificationFailed(format!(
                "middle summand {} with multiplicity {} is not recorded in the mesh",
                frag.vertices[id].label, mult
            ))
        })?;
        expected.remove(pos);
    }
    if let Some(&(id, _)) = expected.first() {
        return Err(KnitError::MeshVerificationFailed(format!(
            "recorded mesh middle lists {} which the almost split sequence does not contain",
            frag.vertices[id].label
        )));
    }
    Ok(())
}

/// Re-certify every mesh in the fragment.
pub fn verify_all_meshes<F: Field>(frag: &ARFragment<F>) -> Result<(), KnitError> {
    for mesh in &frag.meshes {
        verify_mesh(frag, mesh)?;
    }
    Ok(())
}

fn knit<F: Field>(
    alg: &Arc<AlgebraBasis<F>>,
    seeds: Vec<Module<F>>,
    steps: usize,
    dir: Direction,
    component: ComponentTag,
) -> Result<ARFragment<F>, KnitError> {
    if seeds.is_empty() {
        return Err(KnitError::NoStartingModules("empty seed list".into()));
    }
    let mut frag = ARFragment::new(alg, component)?;
    for seed in seeds {
        if seed.is_zero() || decompose(&seed)?.len() != 1 {
            return Err(KnitError::SeedNotIndecomposable(format!("{:?}", seed.dims)));
        }
        frag.place(seed, 0);
    }
    frag.extend(dir, steps)?;
    Ok(frag)
}

/// Knit in the translate-inverse direction from the given indecomposable
/// seeds, for at most `steps` waves.
pub fn knit_forward<F: Field>(
    alg: &Arc<AlgebraBasis<F>>,
    seeds: Vec<Module<F>>,
    steps: usize,
) -> Result<ARFragment<F>, KnitError> {
    knit(alg, seeds, steps, Direction::Forward, ComponentTag::Unknown)
}

/// Knit in the translate direction from the given indecomposable seeds, for
/// at most `steps` waves.
pub fn knit_backward<F: Field>(
    alg: &Arc<AlgebraBasis<F>>,
    seeds: Vec<Module<F>>,
    steps: usize,
) -> Result<ARFragment<F>, KnitError> {
    knit(alg, seeds, steps, Direction::Backward, ComponentTag::Unknown)
}

/// Knit forward from the simple projective modules.
pub fn knit_postprojective<F: Field>(
    alg: &Arc<AlgebraBasis<F>>,
    steps: usize,
) -> Result<ARFragment<F>, KnitError> {
    let n = alg.bq.quiver.vertex_count();
    let seeds: Vec<Module<F>> = (0..n)
        .map(|x| projective(alg, Vertex(x)))
        .filter(|p| radical_submodule(p).0.is_zero())
        .collect();
    if seeds.is_empty() {
        return Err(KnitError::NoStartingModules(
            "every projective module has a nonzero radical, so there is no simple projective to seed from".into(),
        ));
    }
    knit(alg, seeds, steps, Direction::Forward, ComponentTag::Postprojective)
}

/// Knit backward from the simple injective modules.
pub fn knit_preinjective<F: Field>(
    alg: &Arc<AlgebraBasis<F>>,
    steps: usize,
) -> Result<ARFragment<F>, KnitError> {
    let n = alg.bq.quiver.vertex_count();
    let seeds: Vec<Module<F>> = (0..n)
        .map(|x| injective(alg, Vertex(x)))
        .filter(|i| i.total_dim() == 1)
        .collect();
    if seeds.is_empty() {
        return Err(KnitError::NoStartingModules(
            "no injective module is simple, so there is no simple injective to seed from".into(),
        ));
    }
    knit(alg, seeds, steps, Direction::Backward, ComponentTag::Preinjective)
}

/// Knit forward from all indecomposable injective modules.  This reaches the
/// window between the injectives and the projectives even in components that
/// have no source vertex.
pub fn knit_from_injectives<F: Field>(
    alg: &Arc<AlgebraBasis<F>>,
    steps: usize,
) -> Result<ARFragment<F>, KnitError> {
    let n = alg.bq.quiver.vertex_count();
    let seeds: Vec<Module<F>> = (0..n).map(|x| injective(alg, Vertex(x))).collect();
    knit(alg, seeds, steps, Direction::Forward, ComponentTag::Window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::compute_basis;
    use crate::dsl::parse_bound_quiver;
    use num_rational::BigRational;

    fn alg_of(text: &str) -> Arc<AlgebraBasis<BigRational>> {
        Arc::new(compute_basis(&parse_bound_quiver::<BigRational>(text, ()).unwrap()).unwrap())
    }

    fn two_chain() -> Arc<AlgebraBasis<BigRational>> {
        alg_of("algebra a2\nvertices 1 2\narrow a: 1 -> 2\n")
    }

    fn three_chain() -> Arc<AlgebraBasis<BigRational>> {
        alg_of("algebra a3\nvertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n")
    }

    fn double_arrow() -> Arc<AlgebraBasis<BigRational>> {
        alg_of("algebra k2\nvertices 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n")
    }

    fn motivating_c() -> Arc<AlgebraBasis<BigRational>> {
        alg_of(
            "algebra c\nvertices 1 2 3 4\narrow alpha: 4 -> 2\narrow beta: 2 -> 1\narrow gamma: 4 -> 3\narrow delta: 3 -> 1\nrelations\nalpha*beta = 0\ngamma*delta = 0\n",
        )
    }

    #[test]
    fn two_chain_knits_completely() {
        let alg = two_chain();
        let frag = knit_postprojective(&alg, 10).unwrap();
        assert_eq!(frag.vertices.len(), 3, "three indecomposables over the path algebra of 1 -> 2");
        assert!(frag.is_complete(), "knitting must exhaust the component");
        assert_eq!(frag.meshes.len(), 1, "single mesh through the projective-injective");
        let labels: Vec<&str> = frag.vertices.iter().map(|v| v.label.as_str()).collect();
        assert_eq!(labels, vec!["P(2)", "P(1)=I(2)", "I(1)"]);
        let mesh = &frag.meshes[0];
        assert_eq!((mesh.start, mesh.end), (0, 2), "mesh runs from P(2) to I(1)");
        assert_eq!(mesh.middle, vec![(1, 1)], "middle is the projective-injective once");
        assert_eq!(frag.arrows, vec![(0, 1, 1), (1, 2, 1)]);
        verify_all_meshes(&frag).unwrap();
    }

    #[test]
    fn three_chain_full_quiver_has_six_modules_and_three_meshes() {
        let alg = three_chain();
        let frag = knit_postprojective(&alg, 10).unwrap();
        assert_eq!(frag.vertices.len(), 6, "linear quiver on three vertices has six indecomposables");
        assert!(frag.is_complete());
        assert_eq!(frag.meshes.len(), 3);
        for dims in [[0, 0, 1], [0, 1, 1], [1, 1, 1], [0, 1, 0], [1, 1, 0], [1, 0, 0]] {
            assert!(frag.find_by_dims(&dims).is_some(), "missing module with dimensions {dims:?}");
        }
        let mid = frag.find_by_dims(&[0, 1, 1]).unwrap();
        let sincere = frag.find_by_dims(&[1, 1, 1]).unwrap();
        let mesh = frag.mesh_starting_at(mid).expect("mesh over P(2)");
        assert!(
            mesh.middle.iter().any(|&(id, _)| id == sincere),
            "the sincere projective-injective sits in the middle of the mesh over P(2)"
        );
        verify_all_meshes(&frag).unwrap();
    }

    #[test]
    fn three_chain_backward_knitting_recovers_the_same_component() {
        let alg = three_chain();
        let frag = knit_preinjective(&alg, 10).unwrap();
        assert_eq!(frag.vertices.len(), 6);
        assert!(frag.is_complete(), "backward knitting must also exhaust the component");
        assert_eq!(frag.meshes.len(), 3);
        assert!(frag.vertices.iter().all(|v| v.layer <= 0), "backward layers are non-positive");
        verify_all_meshes(&frag).unwrap();
    }

    #[test]
    fn double_arrow_meshes_carry_multiplicity_two() {
        let alg = double_arrow();
        let frag = knit_postprojective(&alg, 3).unwrap();
        assert_eq!(frag.vertices.len(), 7, "seed plus two new modules per wave for three waves");
        assert!(!frag.is_complete(), "the component is infinite, so a boundary must remain");
        assert!(frag.arrows.iter().all(|&(_, _, m)| m == 2), "every irreducible map has multiplicity two");
        let expected_dims: Vec<[usize; 2]> =
            vec![[0, 1], [1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [6, 7]];
        for dims in &expected_dims {
            assert!(frag.find_by_dims(dims).is_some(), "missing module with dimensions {dims:?}");
        }
        assert_eq!(frag.meshes.len(), 5);
        assert_eq!(frag.forward_boundary().len(), 2, "the last two modules are unexpanded");
        verify_all_meshes(&frag).unwrap();
    }

    #[test]
    fn translate_agreement_holds_on_a_bound_quiver_fragment() {
        let alg = motivating_c();
        let frag = knit_postprojective(&alg, 3).unwrap();
        let s1 = frag.find_by_dims(&[1, 0, 0, 0]).expect("simple projective seed");
        assert_eq!(frag.vertices[s1].layer, 0);
        let p2 = frag.find_by_dims(&[1, 1, 0, 0]).expect("P(2) enters through the first mesh");
        let p3 = frag.find_by_dims(&[1, 0, 1, 0]).expect("P(3) enters through the first mesh");
        assert_eq!(frag.arrows_from(s1), vec![(p2, 1), (p3, 1)]);
        let t = frag.find_by_dims(&[1, 1, 1, 0]).expect("translate-inverse of the seed");
        let mesh = frag.mesh_starting_at(s1).unwrap();
        assert_eq!(mesh.end, t);
        assert_eq!(mesh.middle, vec![(p2, 1), (p3, 1)]);
        for &(start, end) in &frag.tau_pairs() {
            let back = tau(frag.module(end), &frag.op);
            assert!(
                indec_isomorphic(&back, frag.module(start)),
                "translate of {} must match {}",
                frag.label(end),
                frag.label(start)
            );
        }
        verify_all_meshes(&frag).unwrap();
    }

    #[test]
    fn gentle_four_vertex_algebra_knits_to_a_finite_component() {
        let alg = motivating_c();
        let frag = knit_postprojective(&alg, 12).unwrap();
        assert!(frag.is_complete(), "the algebra is representation finite");
        for x in 0..4 {
            let p = projective(&alg, Vertex(x));
            let i = injective(&alg, Vertex(x));
            assert!(frag.find(&p).is_some(), "P({}) missing", x + 1);
            assert!(frag.find(&i).is_some(), "I({}) missing", x + 1);
        }
        verify_all_meshes(&frag).unwrap();
    }

    #[test]
    fn injective_seeding_yields_a_right_closed_window() {
        let alg = two_chain();
        let frag = knit_from_injectives(&alg, 5).unwrap();
        assert_eq!(frag.vertices.len(), 2, "only I(1) and P(1)=I(2) lie right of the injectives");
        assert!(
            frag.forward_boundary().is_empty(),
            "every placed module has its outgoing maps recorded"
        );
        let pi = frag.find_by_dims(&[1, 1]).unwrap();
        assert!(
            !frag.vertices[pi].in_complete,
            "the radical of the projective-injective lies left of the window"
        );
        assert_eq!(frag.arrows, vec![(pi, 0, 1)], "socle quotient map onto the simple injective");
    }

    #[test]
    fn knitting_is_deterministic() {
        let alg = motivating_c();
        let a = knit_postprojective(&alg, 3).unwrap();
        let b = knit_postprojective(&alg, 3).unwrap();
        let labels_a: Vec<&String> = a.vertices.iter().map(|v| &v.label).collect();
        let labels_b: Vec<&String> = b.vertices.iter().map(|v| &v.label).collect();
        assert_eq!(labels_a, labels_b);
        assert_eq!(a.arrows, b.arrows);
        assert_eq!(a.meshes, b.meshes);
    }

    #[test]
    fn seeds_must_be_indecomposable_and_present() {
        let alg = two_chain();
        let err = knit_forward(&alg, vec![], 1).unwrap_err();
        assert!(matches!(err, KnitError::NoStartingModules(_)));
        let p = projective(&alg, Vertex(0));
        let (sum, _, _) = crate::rep::direct_sum(&[p.clone(), p], &alg);
        let err = knit_forward(&alg, vec![sum], 1).unwrap_err();
        assert!(matches!(err, KnitError::SeedNotIndecomposable(_)));
    }
}
