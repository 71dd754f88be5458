//! Local slices in Auslander-Reiten fragments.
//!
//! A local slice is a finite set of fragment vertices subject to three
//! axioms: every irreducible map at a member stays in the set up to one
//! translate step (the set is a presection), sectional paths between
//! members never leave the set (sectional convexity), and the member count
//! equals the number of simple modules.  This module checks the axioms on
//! a knitted fragment, computes the annihilator ideal of a slice, presents
//! the quotient of the algebra by that ideal, finds slices by a bounded
//! search, sweeps them to their rightmost and leftmost positions, and
//! decides slice equivalence by comparing annihilators.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::algebra::{AlgebraBasis, Elem};
use crate::arknit::{ARFragment, KnitError};
use crate::field::Field;
use crate::homology::{tau, tau_inverse};
use crate::matrix::Matrix;
use crate::present::{quotient_presentation, PresentError, QuotientPresentation};
use crate::quiver::Vertex;
use crate::rep::Module;

#[derive(Debug, Error)]
pub enum SliceError {
    #[error("fragment is too small: {0}")]
    InsufficientFragment(String),
    #[error("no local slice found: {0}")]
    NoSliceInFragment(String),
    #[error("illegal slice move: {0}")]
    IllegalMove(String),
    #[error(transparent)]
    Knit(#[from] KnitError),
    #[error(transparent)]
    Present(#[from] PresentError),
}

/// Verdict on a candidate slice in a fragment: the axiom checks, the
/// boundary structure, and the annihilator of the member modules.
#[derive(Debug)]
pub struct SliceData<F: Field> {
    /// fragment ids of the members, sorted
    pub vertices: Vec<usize>,
    /// every irreducible map at a member stays in the set up to one
    /// translate step
    pub presection_ok: bool,
    /// sectional paths between members never leave the set
    pub sectionally_convex_ok: bool,
    /// the member count equals the number of simple modules
    pub cardinality_ok: bool,
    /// human-readable reasons for every failed axiom
    pub failures: Vec<String>,
    /// members receiving no irreducible map from another member
    pub sources: Vec<usize>,
    /// members sending no irreducible map to another member
    pub sinks: Vec<usize>,
    /// the slice is valid and every source is injective
    pub rightmost: bool,
    /// the slice is valid and every sink is projective
    pub leftmost: bool,
    /// quiver vertices whose injective is a source of a rightmost slice
    pub strong_sinks: Vec<Vertex>,
    /// quiver vertices whose projective is a sink of a leftmost slice
    pub strong_sources: Vec<Vertex>,
    /// basis of the ideal of algebra elements killing every member,
    /// computed once the presection and cardinality axioms hold and left
    /// empty otherwise
    pub annihilator: Matrix<F>,
}

impl<F: Field> SliceData<F> {
    /// All three axioms hold.
    pub fn is_valid(&self) -> bool {
        self.presection_ok && self.sectionally_convex_ok && self.cardinality_ok
    }

    pub fn member_labels(&self, frag: &ARFragment<F>) -> Vec<String> {
        self.vertices.iter().map(|&id| frag.label(id).to_string()).collect()
    }
}

// ---------------------------------------------------------------------------
// Translate lookups inside a fragment
// ---------------------------------------------------------------------------

/// Resolves the translate and inverse translate of fragment vertices to
/// fragment ids, reading certified meshes first and falling back to a
/// direct computation.  `None` means the translate is zero or the module
/// is not placed in the fragment, which for membership tests is the same.
struct TauResolver<'a, F: Field> {
    frag: &'a ARFragment<F>,
    fwd: RefCell<HashMap<usize, Option<usize>>>,
    bwd: RefCell<HashMap<usize, Option<usize>>>,
}

impl<'a, F: Field> TauResolver<'a, F> {
    fn new(frag: &'a ARFragment<F>) -> Self {
        TauResolver { frag, fwd: RefCell::new(HashMap::new()), bwd: RefCell::new(HashMap::new()) }
    }

    fn tau_of(&self, id: usize) -> Option<usize> {
        if let Some(&hit) = self.bwd.borrow().get(&id) {
            return hit;
        }
        let out = if self.frag.vertices[id].projective_of.is_some() {
            None
        } else if let Some(mesh) = self.frag.mesh_ending_at(id) {
            Some(mesh.start)
        } else {
            let t = tau(self.frag.module(id), &self.frag.op);
            if t.is_zero() { None } else { self.frag.find(&t) }
        };
        self.bwd.borrow_mut().insert(id, out);
        out
    }

    fn tau_inv_of(&self, id: usize) -> Option<usize> {
        if let Some(&hit) = self.fwd.borrow().get(&id) {
            return hit;
        }
        let out = if self.frag.vertices[id].injective_of.is_some() {
            None
        } else if let Some(mesh) = self.frag.mesh_starting_at(id) {
            Some(mesh.end)
        } else {
            let t = tau_inverse(self.frag.module(id), &self.frag.op);
            if t.is_zero() { None } else { self.frag.find(&t) }
        };
        self.fwd.borrow_mut().insert(id, out);
        out
    }
}

// ---------------------------------------------------------------------------
// Annihilators, quotients, equivalence
// ---------------------------------------------------------------------------

/// Basis of the ideal of algebra elements acting as zero on every given
/// module, computed as the kernel of the joint action map.  The result is
/// automatically a two-sided ideal because each summand annihilator is.
pub fn annihilator<F: Field>(alg: &AlgebraBasis<F>, modules: &[Module<F>]) -> Matrix<F> {
    let params = alg.params;
    let cols: usize = modules
        .iter()
        .map(|m| {
            let d = m.total_dim();
            d * d
        })
        .sum();
    let mut rows = Vec::with_capacity(alg.dim);
    for i in 0..alg.dim {
        let e = alg.basis_elem(i);
        let mut row = Vec::with_capacity(cols);
        for m in modules {
            let act = m.action_matrix(&e);
            for r in 0..act.rows() {
                for c in 0..act.cols() {
                    row.push(act.at(r, c).clone());
                }
            }
        }
        rows.push(row);
    }
    let ann = Matrix::from_rows(rows, cols, params).left_kernel();
    debug_assert_eq!(
        alg.two_sided_ideal(&(0..ann.rows()).map(|i| ann.row_vec(i)).collect::<Vec<_>>()).rank(),
        ann.rows(),
        "the annihilator of a set of modules is closed under multiplication"
    );
    ann
}

/// Quotient of the algebra by the two-sided ideal spanned by the given
/// rows, presented again as a bound quiver.
pub fn slice_quotient<F: Field>(
    alg: &AlgebraBasis<F>,
    ideal: &Matrix<F>,
    name: &str,
) -> Result<QuotientPresentation<F>, SliceError> {
    let gens: Vec<Elem<F>> = (0..ideal.rows()).map(|i| ideal.row_vec(i)).collect();
    Ok(quotient_presentation(alg, &gens, name)?)
}

/// Two slices are equivalent when they cut out the same quotient, which
/// happens exactly when their annihilator ideals coincide.
pub fn slice_equivalent<F: Field>(a: &SliceData<F>, b: &SliceData<F>) -> bool {
    a.annihilator.row_space_contains(&b.annihilator)
        && b.annihilator.row_space_contains(&a.annihilator)
}

// ---------------------------------------------------------------------------
// Axiom checking
// ---------------------------------------------------------------------------

/// Expand the fragment until every listed vertex has its incoming and
/// outgoing irreducible maps fully recorded.
pub fn complete_neighborhood<F: Field>(
    frag: &mut ARFragment<F>,
    members: &[usize],
) -> Result<(), SliceError> {
    for &id in members {
        if !frag.vertices[id].out_complete {
            frag.expand_out(id)?;
        }
        if !frag.vertices[id].in_complete {
            frag.expand_in(id)?;
        }
    }
    frag.refresh()?;
    Ok(())
}

/// Check the three slice axioms for the given fragment vertices and report
/// the verdict together with the annihilator of the member modules.
///
/// The arrows at every member must already be fully known; expand the
/// fragment first (see [`complete_neighborhood`]) when they are not.
pub fn is_local_slice<F: Field>(
    frag: &ARFragment<F>,
    members: &[usize],
) -> Result<SliceData<F>, SliceError> {
    let mut vertices: Vec<usize> = members.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    assert!(
        vertices.iter().all(|&id| id < frag.vertices.len()),
        "slice members must be fragment vertex ids"
    );
    for &id in &vertices {
        if !frag.vertices[id].out_complete {
            return Err(SliceError::InsufficientFragment(format!(
                "the irreducible maps out of {} are not fully known; expand the fragment there first",
                frag.label(id)
            )));
        }
        if !frag.vertices[id].in_complete {
            return Err(SliceError::InsufficientFragment(format!(
                "the irreducible maps into {} are not fully known; expand the fragment there first",
                frag.label(id)
            )));
        }
    }

    let res = TauResolver::new(frag);
    let in_set = |id: usize| vertices.binary_search(&id).is_ok();
    let mut failures = Vec::new();

    // presection: every irreducible map at a member stays in the set up to
    // one translate step
    let mut presection_ok = true;
    for &x in &vertices {
        for (y, _) in frag.arrows_from(x) {
            if in_set(y) || res.tau_of(y).is_some_and(|t| in_set(t)) {
                continue;
            }
            presection_ok = false;
            failures.push(format!(
                "irreducible map {} -> {} leaves the set and the translate of {} is not a member",
                frag.label(x),
                frag.label(y),
                frag.label(y)
            ));
        }
        for (w, _) in frag.arrows_into(x) {
            if in_set(w) || res.tau_inv_of(w).is_some_and(|t| in_set(t)) {
                continue;
            }
            presection_ok = false;
            failures.push(format!(
                "irreducible map {} -> {} enters the set and the inverse translate of {} is not a member",
                frag.label(w),
                frag.label(x),
                frag.label(w)
            ));
        }
    }

    // sectional convexity: search for a sectional path between two members
    // whose interior leaves the set; minimal offenders have their whole
    // interior outside, so the walk only needs to extend through outsiders
    let mut sectionally_convex_ok = true;
    let depth_cap = frag.vertices.len();
    for &root in &vertices {
        let mut stack: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for (first, _) in frag.arrows_from(root) {
            if !in_set(first) {
                stack.push((root, first, vec![root, first]));
            }
        }
        while let Some((prev, cur, path)) = stack.pop() {
            for (next, _) in frag.arrows_from(cur) {
                if res.tau_of(next) == Some(prev) {
                    continue;
                }
                if in_set(next) {
                    sectionally_convex_ok = false;
                    let mut walk = path.clone();
                    walk.push(next);
                    failures.push(format!(
                        "sectional path {} leaves the set in its interior",
                        walk.iter().map(|&id| frag.label(id)).collect::<Vec<_>>().join(" -> ")
                    ));
                } else if path.len() <= depth_cap {
                    let mut walk = path.clone();
                    walk.push(next);
                    stack.push((cur, next, walk));
                }
            }
        }
    }

    let n = frag.alg.bq.quiver.vertex_count();
    let cardinality_ok = vertices.len() == n;
    if !cardinality_ok {
        failures.push(format!(
            "the set has {} modules but the algebra has {} simple modules",
            vertices.len(),
            n
        ));
    }

    let sources: Vec<usize> = vertices
        .iter()
        .copied()
        .filter(|&x| frag.arrows_into(x).iter().all(|&(w, _)| !in_set(w)))
        .collect();
    let sinks: Vec<usize> = vertices
        .iter()
        .copied()
        .filter(|&x| frag.arrows_from(x).iter().all(|&(y, _)| !in_set(y)))
        .collect();

    let valid = presection_ok && sectionally_convex_ok && cardinality_ok;
    let rightmost =
        valid && sources.iter().all(|&s| frag.vertices[s].injective_of.is_some());
    let leftmost =
        valid && sinks.iter().all(|&s| frag.vertices[s].projective_of.is_some());
    let mut strong_sinks: Vec<Vertex> = if rightmost {
        sources.iter().filter_map(|&s| frag.vertices[s].injective_of).collect()
    } else {
        Vec::new()
    };
    strong_sinks.sort_unstable_by_key(|v| v.0);
    let mut strong_sources: Vec<Vertex> = if leftmost {
        sinks.iter().filter_map(|&s| frag.vertices[s].projective_of).collect()
    } else {
        Vec::new()
    };
    strong_sources.sort_unstable_by_key(|v| v.0);

    let annihilator = if presection_ok && cardinality_ok {
        let modules: Vec<Module<F>> =
            vertices.iter().map(|&id| frag.module(id).clone()).collect();
        annihilator(&frag.alg, &modules)
    } else {
        Matrix::zero(0, frag.alg.dim, frag.alg.params)
    };

    Ok(SliceData {
        vertices,
        presection_ok,
        sectionally_convex_ok,
        cardinality_ok,
        failures,
        sources,
        sinks,
        rightmost,
        leftmost,
        strong_sinks,
        strong_sources,
        annihilator,
    })
}

// ---------------------------------------------------------------------------
// Slice moves and sweeps
// ---------------------------------------------------------------------------

/// Replace a non-injective source of the slice by its inverse translate,
/// expanding the fragment across the mesh when necessary.
pub fn slice_move_right<F: Field>(
    frag: &mut ARFragment<F>,
    members: &[usize],
    at: usize,
) -> Result<Vec<usize>, SliceError> {
    let set: BTreeSet<usize> = members.iter().copied().collect();
    if !set.contains(&at) {
        return Err(SliceError::IllegalMove(format!("{} is not a member", frag.label(at))));
    }
    if frag.arrows_into(at).iter().any(|(w, _)| set.contains(w)) {
        return Err(SliceError::IllegalMove(format!(
            "{} is not a source of the slice",
            frag.label(at)
        )));
    }
    if frag.vertices[at].injective_of.is_some() {
        return Err(SliceError::IllegalMove(format!(
            "{} is injective and has no inverse translate",
            frag.label(at)
        )));
    }
    if frag.mesh_starting_at(at).is_none() {
        frag.expand_out(at)?;
        frag.refresh()?;
    }
    let end = frag
        .mesh_starting_at(at)
        .ok_or_else(|| {
            SliceError::InsufficientFragment(format!(
                "no mesh over {} could be recorded",
                frag.label(at)
            ))
        })?
        .end;
    let mut next: Vec<usize> = set.into_iter().filter(|&id| id != at).collect();
    next.push(end);
    next.sort_unstable();
    next.dedup();
    Ok(next)
}

/// Replace a non-projective sink of the slice by its translate, expanding
/// the fragment across the mesh when necessary.
pub fn slice_move_left<F: Field>(
    frag: &mut ARFragment<F>,
    members: &[usize],
    at: usize,
) -> Result<Vec<usize>, SliceError> {
    let set: BTreeSet<usize> = members.iter().copied().collect();
    if !set.contains(&at) {
        return Err(SliceError::IllegalMove(format!("{} is not a member", frag.label(at))));
    }
    if frag.arrows_from(at).iter().any(|(y, _)| set.contains(y)) {
        return Err(SliceError::IllegalMove(format!(
            "{} is not a sink of the slice",
            frag.label(at)
        )));
    }
    if frag.vertices[at].projective_of.is_some() {
        return Err(SliceError::IllegalMove(format!(
            "{} is projective and has no translate",
            frag.label(at)
        )));
    }
    if frag.mesh_ending_at(at).is_none() {
        frag.expand_in(at)?;
        frag.refresh()?;
    }
    let start = frag
        .mesh_ending_at(at)
        .ok_or_else(|| {
            SliceError::InsufficientFragment(format!(
                "no mesh under {} could be recorded",
                frag.label(at)
            ))
        })?
        .start;
    let mut next: Vec<usize> = set.into_iter().filter(|&id| id != at).collect();
    next.push(start);
    next.sort_unstable();
    next.dedup();
    Ok(next)
}

/// Sweep a valid slice rightward, replacing non-injective sources by their
/// inverse translates in stable id order, until every source is injective.
///
/// The sweep is budgeted: in a component without injective modules there is
/// no rightmost slice and the walk would otherwise knit new meshes forever,
/// so after a bounded number of moves the search gives up with an error.
pub fn rightmost_slice_from<F: Field>(
    frag: &mut ARFragment<F>,
    start: &[usize],
) -> Result<SliceData<F>, SliceError> {
    let budget = 8 * frag.alg.bq.quiver.vertex_count() + 32;
    let mut cur: Vec<usize> = start.to_vec();
    for _ in 0..budget {
        complete_neighborhood(frag, &cur)?;
        let data = is_local_slice(frag, &cur)?;
        if !data.is_valid() {
            return Err(SliceError::NoSliceInFragment(format!(
                "candidate {{{}}} fails the axioms: {}",
                data.member_labels(frag).join(", "),
                data.failures.join("; ")
            )));
        }
        if data.rightmost {
            return Ok(data);
        }
        let at = *data
            .sources
            .iter()
            .find(|&&s| frag.vertices[s].injective_of.is_none())
            .expect("a slice that is not rightmost has a non-injective source");
        cur = slice_move_right(frag, &cur, at)?;
    }
    Err(SliceError::NoSliceInFragment(
        "the rightward sweep exhausted its move budget; the component may have no slice with all sources injective".into(),
    ))
}

/// Sweep a valid slice leftward, replacing non-projective sinks by their
/// translates in stable id order, until every sink is projective.
///
/// Budgeted like [`rightmost_slice_from`], for the dual reason.
pub fn leftmost_slice_from<F: Field>(
    frag: &mut ARFragment<F>,
    start: &[usize],
) -> Result<SliceData<F>, SliceError> {
    let budget = 8 * frag.alg.bq.quiver.vertex_count() + 32;
    let mut cur: Vec<usize> = start.to_vec();
    for _ in 0..budget {
        complete_neighborhood(frag, &cur)?;
        let data = is_local_slice(frag, &cur)?;
        if !data.is_valid() {
            return Err(SliceError::NoSliceInFragment(format!(
                "candidate {{{}}} fails the axioms: {}",
                data.member_labels(frag).join(", "),
                data.failures.join("; ")
            )));
        }
        if data.leftmost {
            return Ok(data);
        }
        let at = *data
            .sinks
            .iter()
            .find(|&&s| frag.vertices[s].projective_of.is_none())
            .expect("a slice that is not leftmost has a non-projective sink");
        cur = slice_move_left(frag, &cur, at)?;
    }
    Err(SliceError::NoSliceInFragment(
        "the leftward sweep exhausted its move budget; the component may have no slice with all sinks projective".into(),
    ))
}

// ---------------------------------------------------------------------------
// Slice search
// ---------------------------------------------------------------------------

const GROW_BUDGET: usize = 200_000;
const COMBINATION_BUDGET: usize = 500_000;

/// Backtracking closure search: starting from each anchor vertex, satisfy
/// unmet presection obligations one at a time, branching over the two
/// admissible completions, and collect every closed set of the right size.
struct SliceSearch<'a, F: Field> {
    frag: &'a ARFragment<F>,
    res: TauResolver<'a, F>,
    n: usize,
    budget: usize,
    seen: HashSet<Vec<usize>>,
    found: Vec<Vec<usize>>,
}

impl<'a, F: Field> SliceSearch<'a, F> {
    fn new(frag: &'a ARFragment<F>) -> Self {
        SliceSearch {
            frag,
            res: TauResolver::new(frag),
            n: frag.alg.bq.quiver.vertex_count(),
            budget: GROW_BUDGET,
            seen: HashSet::new(),
            found: Vec::new(),
        }
    }

    fn run(&mut self) {
        for anchor in 0..self.frag.vertices.len() {
            let mut set = BTreeSet::new();
            set.insert(anchor);
            self.grow(set);
        }
        // closure from a single anchor misses candidates whose induced
        // quiver is disconnected; sweep all combinations when affordable
        if self.found.is_empty() && self.combination_count() <= COMBINATION_BUDGET {
            self.combinations(0, BTreeSet::new());
        }
        self.found.sort_unstable();
        self.found.dedup();
    }

    fn combination_count(&self) -> usize {
        let w = self.frag.vertices.len();
        let mut total: usize = 1;
        for k in 0..self.n.min(w) {
            total = match total.checked_mul(w - k) {
                Some(t) => t / (k + 1),
                None => return usize::MAX,
            };
        }
        total
    }

    fn combinations(&mut self, from: usize, set: BTreeSet<usize>) {
        if set.len() == self.n {
            let key: Vec<usize> = set.iter().copied().collect();
            if self.first_obligation(&set).is_none() {
                self.found.push(key);
            }
            return;
        }
        let remaining = self.n - set.len();
        for id in from..self.frag.vertices.len().saturating_sub(remaining - 1) {
            if self.budget == 0 {
                return;
            }
            self.budget -= 1;
            let mut next = set.clone();
            next.insert(id);
            self.combinations(id + 1, next);
        }
    }

    /// The first unmet presection obligation of the set, with the member
    /// ids that could discharge it, in rightward-first order.
    fn first_obligation(&self, set: &BTreeSet<usize>) -> Option<Vec<usize>> {
        for &x in set {
            let mut out = self.frag.arrows_from(x);
            out.sort_unstable();
            for (y, _) in out {
                if set.contains(&y) || self.res.tau_of(y).is_some_and(|t| set.contains(&t)) {
                    continue;
                }
                let mut options = vec![y];
                options.extend(self.res.tau_of(y));
                return Some(options);
            }
            let mut into = self.frag.arrows_into(x);
            into.sort_unstable();
            for (w, _) in into {
                if set.contains(&w) || self.res.tau_inv_of(w).is_some_and(|t| set.contains(&t)) {
                    continue;
                }
                let mut options: Vec<usize> = self.res.tau_inv_of(w).into_iter().collect();
                options.push(w);
                return Some(options);
            }
        }
        None
    }

    fn grow(&mut self, set: BTreeSet<usize>) {
        if self.budget == 0 {
            return;
        }
        self.budget -= 1;
        let key: Vec<usize> = set.iter().copied().collect();
        if !self.seen.insert(key.clone()) || set.len() > self.n {
            return;
        }
        match self.first_obligation(&set) {
            None => {
                if set.len() == self.n {
                    self.found.push(key);
                }
            }
            Some(options) => {
                for opt in options {
                    let mut next = set.clone();
                    next.insert(opt);
                    self.grow(next);
                }
            }
        }
    }
}

/// All local slices visible in the fragment window at call time, verified
/// against the axioms after completing each candidate's neighborhood.
pub fn enumerate_local_slices<F: Field>(
    frag: &mut ARFragment<F>,
) -> Result<Vec<SliceData<F>>, SliceError> {
    let candidates = {
        let mut search = SliceSearch::new(frag);
        search.run();
        search.found
    };
    let mut out = Vec::new();
    for cand in candidates {
        complete_neighborhood(frag, &cand)?;
        let data = is_local_slice(frag, &cand)?;
        if data.is_valid() {
            out.push(data);
        }
    }
    Ok(out)
}

/// The members of the first local slice the bounded search finds.
pub fn find_local_slice<F: Field>(frag: &mut ARFragment<F>) -> Result<Vec<usize>, SliceError> {
    let candidates = {
        let mut search = SliceSearch::new(frag);
        search.run();
        search.found
    };
    for cand in candidates {
        complete_neighborhood(frag, &cand)?;
        if is_local_slice(frag, &cand)?.is_valid() {
            return Ok(cand);
        }
    }
    Err(SliceError::NoSliceInFragment(
        "the bounded search found no valid slice in the window".into(),
    ))
}

/// How many starting slices an extreme-slice search will sweep from before
/// giving up; sweeps in components without an extreme slice are expensive,
/// so the cap keeps the failure mode bounded.
const SWEEP_ATTEMPTS: usize = 3;

fn extreme_slice<F: Field>(
    frag: &mut ARFragment<F>,
    rightward: bool,
) -> Result<SliceData<F>, SliceError> {
    let candidates = {
        let mut search = SliceSearch::new(frag);
        search.run();
        search.found
    };
    // a candidate that already has the extreme property needs no sweep, and
    // sweeping from elsewhere could walk away from it
    let mut valids: Vec<Vec<usize>> = Vec::new();
    for cand in candidates {
        complete_neighborhood(frag, &cand)?;
        let data = is_local_slice(frag, &cand)?;
        if data.is_valid() {
            if (rightward && data.rightmost) || (!rightward && data.leftmost) {
                return Ok(data);
            }
            valids.push(cand);
        }
    }
    let mut last: Option<SliceError> = None;
    for cand in valids.into_iter().take(SWEEP_ATTEMPTS) {
        let swept = if rightward {
            rightmost_slice_from(frag, &cand)
        } else {
            leftmost_slice_from(frag, &cand)
        };
        match swept {
            Ok(data) => return Ok(data),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| {
        SliceError::NoSliceInFragment(
            "the bounded search found no valid slice in the window".into(),
        )
    }))
}

/// A slice with every source injective: the first enumerated slice that
/// already qualifies, otherwise the result of sweeping a found slice
/// rightward.
pub fn rightmost_slice<F: Field>(frag: &mut ARFragment<F>) -> Result<SliceData<F>, SliceError> {
    extreme_slice(frag, true)
}

/// A slice with every sink projective: the first enumerated slice that
/// already qualifies, otherwise the result of sweeping a found slice
/// leftward.
pub fn leftmost_slice<F: Field>(frag: &mut ARFragment<F>) -> Result<SliceData<F>, SliceError> {
    extreme_slice(frag, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use num_rational::BigRational;

    use crate::algebra::compute_basis;
    use crate::arknit::{knit_forward, knit_from_injectives, knit_postprojective};
    use crate::dsl::parse_bound_quiver;
    use crate::homology::global_dimension;
    use crate::present::{algebra_isomorphic, IsoVerdict};
    use crate::rep::{injective, projective};

    fn alg_of(text: &str) -> Arc<AlgebraBasis<BigRational>> {
        Arc::new(compute_basis(&parse_bound_quiver::<BigRational>(text, ()).unwrap()).unwrap())
    }

    fn three_chain() -> Arc<AlgebraBasis<BigRational>> {
        alg_of("algebra a3\nvertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n")
    }

    const SQUARE_C: &str = "\
algebra c
vertices 1 2 3 4
arrow beta: 2 -> 1
arrow alpha: 4 -> 2
arrow gamma: 4 -> 3
arrow delta: 3 -> 1
relations
alpha*beta = 0
gamma*delta = 0
";

    const SQUARE_B: &str = "\
algebra b
vertices 1 2 3 4
arrow beta: 2 -> 1
arrow alpha: 4 -> 2
arrow gamma: 4 -> 3
arrow delta: 3 -> 1
arrow lam: 1 -> 4
arrow mu: 1 -> 4
relations
alpha*beta = 0
beta*lam = 0
lam*alpha = 0
gamma*delta = 0
delta*mu = 0
mu*gamma = 0
";

    #[test]
    fn one_vertex_algebra_has_its_simple_as_a_slice() {
        let alg = alg_of("algebra k\nvertices 1\n");
        let mut frag = knit_postprojective(&alg, 2).expect("one module knits");
        assert_eq!(frag.vertices.len(), 1, "a field has one indecomposable");
        complete_neighborhood(&mut frag, &[0]).expect("neighborhood completes");
        let data = is_local_slice(&frag, &[0]).expect("axioms check");
        assert!(data.is_valid(), "the unique module is a slice: {:?}", data.failures);
        assert!(data.rightmost, "its source is injective");
        assert!(data.leftmost, "its sink is projective");
        assert_eq!(data.annihilator.rows(), 0, "the simple over a field is faithful");
        assert_eq!(data.strong_sinks, vec![Vertex(0)]);
        assert_eq!(data.strong_sources, vec![Vertex(0)]);
        let qp = slice_quotient(&alg, &data.annihilator, "same").expect("quotient presents");
        assert_eq!(qp.rec.alg.dim, 1, "quotient by zero changes nothing");
    }

    #[test]
    fn hereditary_line_rightmost_slice_is_the_injective_one() {
        let alg = three_chain();
        let mut frag = knit_postprojective(&alg, 8).expect("the line knits");
        assert!(frag.is_complete(), "six modules close up");
        let data = rightmost_slice(&mut frag).expect("a rightmost slice exists");
        let expect: Vec<usize> = (0..3)
            .map(|x| frag.find(&injective(&alg, Vertex(x))).expect("injective placed"))
            .collect();
        let mut expect_sorted = expect.clone();
        expect_sorted.sort_unstable();
        assert_eq!(data.vertices, expect_sorted, "the rightmost slice is the injectives");
        assert!(data.rightmost);
        assert_eq!(
            data.strong_sinks,
            vec![Vertex(2)],
            "the only injective source is over the sink of the quiver"
        );
        assert_eq!(data.annihilator.rows(), 0, "a complete slice is faithful");

        let left = leftmost_slice(&mut frag).expect("a leftmost slice exists");
        let mut projs: Vec<usize> = (0..3)
            .map(|x| frag.find(&projective(&alg, Vertex(x))).expect("projective placed"))
            .collect();
        projs.sort_unstable();
        assert_eq!(left.vertices, projs, "the leftmost slice is the projectives");
        assert_eq!(
            left.strong_sources,
            vec![Vertex(0)],
            "the only projective sink is over the source of the quiver"
        );
        assert!(
            slice_equivalent(&data, &left),
            "both slices are faithful, so they cut out the same quotient"
        );
    }

    #[test]
    fn presection_failure_is_itemized_with_the_offending_module() {
        let alg = three_chain();
        let mut frag = knit_postprojective(&alg, 8).expect("the line knits");
        let p3 = frag.find(&projective(&alg, Vertex(2))).unwrap();
        let p2 = frag.find(&projective(&alg, Vertex(1))).unwrap();
        let s2 = frag.find_by_dims(&[0, 1, 0]).expect("the middle simple is placed");
        complete_neighborhood(&mut frag, &[p3, p2, s2]).unwrap();
        let data = is_local_slice(&frag, &[p3, p2, s2]).expect("axioms check");
        assert!(!data.presection_ok, "P(2) maps to P(1) which has no translate");
        assert!(data.cardinality_ok, "three modules over three vertices");
        assert!(
            data.failures.iter().any(|f| f.contains("P(1)")),
            "the failure names the module outside the set: {:?}",
            data.failures
        );
    }

    #[test]
    fn unexpanded_members_are_reported_as_insufficient() {
        let alg = alg_of(
            "algebra c\nvertices 1 2 3 4\narrow alpha: 4 -> 2\narrow beta: 2 -> 1\n\
             arrow gamma: 4 -> 3\narrow delta: 3 -> 1\nrelations\nalpha*beta = 0\ngamma*delta = 0\n",
        );
        let frag = knit_forward(&alg, vec![projective(&alg, Vertex(3))], 0)
            .expect("a bare seed knits");
        let err = is_local_slice(&frag, &[0]).unwrap_err();
        assert!(
            matches!(err, SliceError::InsufficientFragment(_)),
            "an unexpanded member cannot be checked: {err}"
        );
    }

    #[test]
    fn embedded_slice_of_the_quotient_has_the_new_arrows_as_annihilator() {
        let c = alg_of(SQUARE_C);
        let mut cfrag = knit_postprojective(&c, 12).expect("the square algebra knits");
        assert!(cfrag.is_complete(), "the square algebra is representation finite");
        let cslice = rightmost_slice(&mut cfrag).expect("the square algebra has a slice");
        assert_eq!(cslice.annihilator.rows(), 0, "a complete slice is faithful");

        let b = alg_of(SQUARE_B);
        // the same underlying vector spaces become modules over the bigger
        // algebra once the two new arrows act as zero
        let seeds: Vec<Module<BigRational>> = cslice
            .vertices
            .iter()
            .map(|&id| {
                let m = cfrag.module(id);
                let mut maps = m.maps.clone();
                for a in 4..6 {
                    let (s, t) = {
                        let arr = &b.bq.quiver.arrows[a];
                        (arr.source.0, arr.target.0)
                    };
                    maps.push(Matrix::zero(m.dims[s], m.dims[t], ()));
                }
                let inflated = Module {
                    alg: b.clone(),
                    dims: m.dims.clone(),
                    maps,
                    name: m.name.clone(),
                };
                inflated.validate().expect("inflated module is well formed");
                inflated
            })
            .collect();
        let mut frag = knit_forward(&b, seeds, 1).expect("the embedded slice knits");
        let members: Vec<usize> = (0..4).collect();
        complete_neighborhood(&mut frag, &members).expect("neighborhood completes");
        let data = is_local_slice(&frag, &members).expect("axioms check");
        assert!(data.is_valid(), "the embedded slice is a local slice: {:?}", data.failures);

        let expected = b.two_sided_ideal(&[
            b.basis_elem(b.arrow_elem[4]),
            b.basis_elem(b.arrow_elem[5]),
        ]);
        assert_eq!(data.annihilator.rows(), expected.rows(), "annihilator has the ideal's size");
        assert!(
            data.annihilator.row_space_contains(&expected)
                && expected.row_space_contains(&data.annihilator),
            "the annihilator is exactly the ideal of the two new arrows"
        );

        let qp = slice_quotient(&b, &data.annihilator, "c-back").expect("quotient presents");
        assert_eq!(
            algebra_isomorphic(&qp.rec.alg, &c),
            IsoVerdict::Isomorphic,
            "cutting the slice annihilator out of the big algebra returns the square algebra"
        );
    }

    #[test]
    fn rightmost_slice_of_the_cycle_algebra_has_a_tilted_quotient() {
        let b = alg_of(SQUARE_B);
        let mut frag = knit_from_injectives(&b, 4).expect("the cycle algebra knits");
        let data = rightmost_slice(&mut frag).expect("a rightmost slice exists");
        assert!(data.rightmost, "the sweep stops at injective sources");
        let qp = slice_quotient(&b, &data.annihilator, "quot").expect("quotient presents");
        assert!(
            qp.rec.bq.quiver.is_acyclic(),
            "slicing an algebra with cycles still cuts out an acyclic quiver"
        );
        let gd = global_dimension(&qp.rec.alg, 4).expect("global dimension is finite");
        assert!(gd <= 2, "the quotient is tilted, so its global dimension is at most 2, got {gd}");
        assert!(slice_equivalent(&data, &data), "equivalence is reflexive");
    }
}
