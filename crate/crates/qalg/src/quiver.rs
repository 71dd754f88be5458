//! Quivers, paths, and bound quivers (quiver plus relations).
//!
//! Paths compose left to right: in the word `alpha*beta` the arrow `alpha`
//! is traversed first, so the composite exists when `target(alpha) =
//! source(beta)`. A path of length zero is the lazy path at a vertex and
//! corresponds to that vertex's idempotent in the path algebra.

use std::fmt;

use crate::field::Field;

/// Index into [`Quiver::vertex_labels`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex(pub usize);

/// Index into [`Quiver::arrows`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Arrow(pub usize);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArrowData {
    pub label: String,
    pub source: Vertex,
    pub target: Vertex,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    pub vertex_labels: Vec<String>,
    pub arrows: Vec<ArrowData>,
}

impl Quiver {
    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.vertex_labels.iter().position(|l| l == label).map(Vertex)
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<Arrow> {
        self.arrows.iter().position(|a| a.label == label).map(Arrow)
    }

    pub fn source(&self, a: Arrow) -> Vertex {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: Arrow) -> Vertex {
        self.arrows[a.0].target
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.vertex_labels[v.0]
    }

    pub fn arrow_label(&self, a: Arrow) -> &str {
        &self.arrows[a.0].label
    }

    /// Arrows leaving `v`, in declaration order.
    pub fn arrows_from(&self, v: Vertex) -> Vec<Arrow> {
        (0..self.arrows.len()).map(Arrow).filter(|&a| self.source(a) == v).collect()
    }

    /// Arrows entering `v`, in declaration order.
    pub fn arrows_into(&self, v: Vertex) -> Vec<Arrow> {
        (0..self.arrows.len()).map(Arrow).filter(|&a| self.target(a) == v).collect()
    }

    /// True when the quiver has no directed cycle through arrows.
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm on the arrow digraph.
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target.0] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in &self.arrows {
                if a.source.0 == v {
                    indeg[a.target.0] -= 1;
                    if indeg[a.target.0] == 0 {
                        stack.push(a.target.0);
                    }
                }
            }
        }
        seen == n
    }

    /// The quiver with every arrow reversed (labels kept).
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertex_labels: self.vertex_labels.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowData { label: a.label.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }
}

/// A directed path: possibly lazy (length zero) at a vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    pub source: Vertex,
    pub target: Vertex,
    pub arrows: Vec<Arrow>,
}

impl Path {
    pub fn lazy(v: Vertex) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn of_arrow(q: &Quiver, a: Arrow) -> Self {
        Path { source: q.source(a), target: q.target(a), arrows: vec![a] }
    }

    pub fn from_arrows(q: &Quiver, arrows: &[Arrow]) -> Option<Self> {
        let first = *arrows.first()?;
        let mut t = q.target(first);
        for &a in &arrows[1..] {
            if q.source(a) != t {
                return None;
            }
            t = q.target(a);
        }
        Some(Path { source: q.source(first), target: t, arrows: arrows.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation `self` then `rhs`; `None` when endpoints mismatch.
    pub fn compose(&self, rhs: &Path) -> Option<Path> {
        if self.target != rhs.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(rhs.arrows.iter().copied());
        Some(Path { source: self.source, target: rhs.target, arrows })
    }

    /// Order used for basis layout and reduction: by length, then
    /// lexicographically on arrow indices.
    pub fn cmp_len_lex(&self, other: &Path) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_lazy() {
            return write!(f, "e_{}", self.quiver.label(self.path.source));
        }
        let word: Vec<&str> = self.path.arrows.iter().map(|&a| self.quiver.arrow_label(a)).collect();
        write!(f, "{}", word.join("*"))
    }
}

/// A finite linear combination of parallel paths.
#[derive(Clone, PartialEq, Debug)]
pub struct PathCombination<F: Field> {
    pub terms: Vec<(F, Path)>,
}

impl<F: Field> PathCombination<F> {
    /// Merge duplicate paths and drop zero coefficients. Terms are sorted by
    /// the length-lex path order.
    pub fn normalized(mut self) -> Self {
        self.terms.sort_by(|a, b| a.1.cmp_len_lex(&b.1));
        let mut out: Vec<(F, Path)> = Vec::new();
        for (c, p) in self.terms {
            match out.last_mut() {
                Some((c0, p0)) if *p0 == p => *c0 = c0.add(&c),
                _ => out.push((c, p)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        PathCombination { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common (source, target) of all terms; `None` for the zero combination
    /// or if the terms are not parallel.
    pub fn endpoints(&self) -> Option<(Vertex, Vertex)> {
        let first = self.terms.first()?;
        let st = (first.1.source, first.1.target);
        self.terms.iter().all(|(_, p)| (p.source, p.target) == st).then_some(st)
    }
}

/// A quiver together with relations; input data for basis computation.
#[derive(Clone, PartialEq, Debug)]
pub struct BoundQuiver<F: Field> {
    pub name: String,
    pub quiver: Quiver,
    pub relations: Vec<PathCombination<F>>,
    pub params: F::Params,
}

impl<F: Field> BoundQuiver<F> {
    /// The opposite bound quiver: arrows reversed, every relation path
    /// reversed.
    pub fn opposite(&self) -> BoundQuiver<F> {
        let quiver = self.quiver.opposite();
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                PathCombination {
                    terms: rel
                        .terms
                        .iter()
                        .map(|(c, p)| {
                            let mut arrows = p.arrows.clone();
                            arrows.reverse();
                            (c.clone(), Path { source: p.target, target: p.source, arrows })
                        })
                        .collect(),
                }
                .normalized()
            })
            .collect();
        BoundQuiver { name: format!("{}_op", self.name), quiver, relations, params: self.params }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn two_cycle() -> Quiver {
        Quiver {
            vertex_labels: vec!["1".into(), "2".into()],
            arrows: vec![
                ArrowData { label: "a".into(), source: Vertex(0), target: Vertex(1) },
                ArrowData { label: "b".into(), source: Vertex(1), target: Vertex(0) },
            ],
        }
    }

    #[test]
    fn path_composition_respects_endpoints() {
        let q = two_cycle();
        let a = Path::of_arrow(&q, Arrow(0));
        let b = Path::of_arrow(&q, Arrow(1));
        let ab = a.compose(&b).expect("a then b composes");
        assert_eq!(ab.source, Vertex(0));
        assert_eq!(ab.target, Vertex(0));
        assert!(a.compose(&a).is_none(), "a then a does not compose");
        let e0 = Path::lazy(Vertex(0));
        assert_eq!(e0.compose(&a).unwrap(), a);
        assert_eq!(ab.display(&q).to_string(), "a*b");
        assert_eq!(e0.display(&q).to_string(), "e_1");
    }

    #[test]
    fn acyclicity() {
        let q = two_cycle();
        assert!(!q.is_acyclic());
        let line = Quiver {
            vertex_labels: vec!["1".into(), "2".into()],
            arrows: vec![ArrowData { label: "a".into(), source: Vertex(0), target: Vertex(1) }],
        };
        assert!(line.is_acyclic());
        assert!(line.opposite().is_acyclic());
        assert_eq!(line.opposite().source(Arrow(0)), Vertex(1));
    }

    #[test]
    fn combination_normalization() {
        let q = two_cycle();
        let ab = Path::from_arrows(&q, &[Arrow(0), Arrow(1)]).unwrap();
        let one = <BigRational as Field>::one(());
        let combo = PathCombination {
            terms: vec![(one.clone(), ab.clone()), (one.clone().neg(), ab.clone()), (one.clone(), ab.clone())],
        }
        .normalized();
        assert_eq!(combo.terms.len(), 1);
        assert_eq!(combo.endpoints(), Some((Vertex(0), Vertex(0))));
    }
}
