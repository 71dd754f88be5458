//! Knit the injective window of the six-vertex cluster-tilted algebra and
//! print the fragment for inspection.

use std::sync::Arc;

use num_rational::BigRational;
use qalg::algebra::compute_basis;
use qalg::arknit::knit_from_injectives;
use qalg::dsl::parse_bound_quiver;
use qalg::quiver::Vertex;
use qalg::rep::{injective, projective};

const B6: &str = "algebra b6
vertices 1 2 3 4 5 6
arrow p: 2 -> 1
arrow q: 3 -> 2
arrow lam1: 1 -> 3
arrow lam2: 1 -> 3
arrow m1: 4 -> 3
arrow m2: 4 -> 3
arrow m3: 4 -> 3
arrow t1: 3 -> 5
arrow t2: 3 -> 5
arrow u1: 5 -> 4
arrow u2: 5 -> 4
arrow r: 6 -> 5
arrow n1: 4 -> 6
arrow n2: 4 -> 6
relations
q*p = 0
p*lam2 = 0
lam2*q = 0
t2*u1 = 0
t1*u2 = 0
t1*u1 - t2*u2 = 0
u1*m1 - u2*m3 = 0
u1*m2 + u2*m1 = 0
r*u1 = 0
r*u2 = 0
u1*n1 + u2*n2 = 0
m1*t1 - m2*t2 - n1*r = 0
m1*t2 + m3*t1 + n2*r = 0
";

fn main() {
    let bq = parse_bound_quiver::<BigRational>(B6, ()).unwrap();
    let alg = Arc::new(compute_basis(&bq).unwrap());
    println!("dim B = {}", alg.dim);
    for x in 0..6 {
        let p = projective(&alg, Vertex(x));
        let i = injective(&alg, Vertex(x));
        println!("P({}) dims {:?}   I({}) dims {:?}", x + 1, p.dims, x + 1, i.dims);
    }
    let steps: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let seeds: Option<Vec<usize>> = std::env::args().nth(2).map(|s| {
        s.split(',')
            .map(|t| t.parse::<usize>().expect("seed vertex") - 1)
            .collect()
    });
    let result = match seeds {
        Some(xs) => qalg::arknit::knit_forward(
            &alg,
            xs.into_iter().map(|x| injective(&alg, Vertex(x))).collect(),
            steps,
        ),
        None => knit_from_injectives(&alg, steps),
    };
    match result {
        Ok(frag) => {
            println!("\nfragment after {steps} waves: {} modules", frag.vertices.len());
            for (id, v) in frag.vertices.iter().enumerate() {
                println!(
                    "  [{id:2}] layer {:2}  {:12} dims {:?}  out_complete={} in_complete={}",
                    v.layer, v.label, v.module.dims, v.out_complete, v.in_complete
                );
            }
            println!("arrows:");
            for &(s, t, m) in &frag.arrows {
                println!("  {} -> {} (x{m})", frag.label(s), frag.label(t));
            }
            println!("meshes:");
            for mesh in &frag.meshes {
                let mids: Vec<String> = mesh
                    .middle
                    .iter()
                    .map(|&(i, m)| format!("{}^{}", frag.label(i), m))
                    .collect();
                println!(
                    "  {} => [{}] => {}",
                    frag.label(mesh.start),
                    mids.join(", "),
                    frag.label(mesh.end)
                );
            }
        }
        Err(e) => println!("knit failed: {e}"),
    }
}
