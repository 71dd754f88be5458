//! Survey local slices on small fixtures: enumerate slices, report their
//! annihilator ranks and boundary flags, and scan all subsets of a closed
//! window for presection-satisfying sets that fail sectional convexity.

use std::sync::Arc;

use num_rational::BigRational;
use qalg::algebra::{compute_basis, AlgebraBasis};
use qalg::arknit::{knit_from_injectives, knit_postprojective, ARFragment};
use qalg::dsl::parse_bound_quiver;
use qalg::slices::{
    complete_neighborhood, enumerate_local_slices, is_local_slice, leftmost_slice,
    rightmost_slice, slice_equivalent,
};

fn alg_of(text: &str) -> Arc<AlgebraBasis<BigRational>> {
    Arc::new(compute_basis(&parse_bound_quiver::<BigRational>(text, ()).unwrap()).unwrap())
}

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

fn survey(name: &str, frag: &mut ARFragment<BigRational>, sweep: bool) {
    println!("== {name} ==");
    println!(
        "window: {} vertices, {} arrows, {} meshes, complete: {}",
        frag.vertices.len(),
        frag.arrows.len(),
        frag.meshes.len(),
        frag.is_complete()
    );
    let slices = enumerate_local_slices(frag).expect("enumeration succeeds");
    println!("{} local slices:", slices.len());
    for (i, s) in slices.iter().enumerate() {
        println!(
            "  [{}] {{{}}} ann rank {} rightmost {} leftmost {}",
            i,
            s.member_labels(frag).join(", "),
            s.annihilator.rows(),
            s.rightmost,
            s.leftmost
        );
    }
    let mut inequivalent = 0;
    for i in 0..slices.len() {
        for j in (i + 1)..slices.len() {
            if !slice_equivalent(&slices[i], &slices[j]) {
                inequivalent += 1;
                if inequivalent <= 4 {
                    println!("  inequivalent pair: [{i}] vs [{j}]");
                }
            }
        }
    }
    println!("  {inequivalent} inequivalent pairs in total");
    if !sweep {
        return;
    }
    match rightmost_slice(frag) {
        Ok(r) => println!(
            "rightmost: {{{}}} strong sinks {:?}",
            r.member_labels(frag).join(", "),
            r.strong_sinks
        ),
        Err(e) => println!("rightmost: error {e}"),
    }
    match leftmost_slice(frag) {
        Ok(l) => println!(
            "leftmost: {{{}}} strong sources {:?}",
            l.member_labels(frag).join(", "),
            l.strong_sources
        ),
        Err(e) => println!("leftmost: error {e}"),
    }
}

fn scan_convexity(name: &str, frag: &mut ARFragment<BigRational>) {
    let n = frag.alg.bq.quiver.vertex_count();
    let w = frag.vertices.len();
    let all: Vec<usize> = (0..w).collect();
    if complete_neighborhood(frag, &all).is_err() {
        println!("{name}: window cannot be fully completed, skipping subset scan");
        return;
    }
    let mut convex_fail = 0usize;
    let mut shown = 0usize;
    let mut combo = vec![0usize; n];
    fn rec(
        frag: &ARFragment<BigRational>,
        combo: &mut Vec<usize>,
        depth: usize,
        from: usize,
        w: usize,
        n: usize,
        convex_fail: &mut usize,
        shown: &mut usize,
    ) {
        if depth == n {
            if let Ok(d) = is_local_slice(frag, combo) {
                if d.presection_ok && d.cardinality_ok && !d.sectionally_convex_ok {
                    *convex_fail += 1;
                    if *shown < 3 {
                        *shown += 1;
                        println!(
                            "  presection ok, convexity fails: {{{}}}: {}",
                            d.member_labels(frag).join(", "),
                            d.failures.join(" | ")
                        );
                    }
                }
            }
            return;
        }
        for id in from..w {
            combo[depth] = id;
            rec(frag, combo, depth + 1, id + 1, w, n, convex_fail, shown);
        }
    }
    rec(frag, &mut combo, 0, 0, w, n, &mut convex_fail, &mut shown);
    println!("{name}: {convex_fail} presection-ok convexity-failing subsets of size {n}");
}

fn main() {
    let a3 = alg_of("algebra a3\nvertices 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n");
    let mut frag = knit_postprojective(&a3, 8).expect("knits");
    survey("a3 line", &mut frag, true);
    scan_convexity("a3 line", &mut frag);

    // the square algebra is tilted from a euclidean quiver: its
    // postprojective part has no injectives, so no sweeps here
    let c = alg_of(
        "algebra c\nvertices 1 2 3 4\narrow alpha: 4 -> 2\narrow beta: 2 -> 1\n\
         arrow gamma: 4 -> 3\narrow delta: 3 -> 1\nrelations\nalpha*beta = 0\ngamma*delta = 0\n",
    );
    let mut frag = knit_postprojective(&c, 5).expect("knits");
    survey("square tilted postprojective", &mut frag, false);

    let b = alg_of(SQUARE_B);
    let mut frag = knit_from_injectives(&b, 5).expect("knits");
    survey("square cycle window", &mut frag, true);
    scan_convexity("square cycle window", &mut frag);
}
