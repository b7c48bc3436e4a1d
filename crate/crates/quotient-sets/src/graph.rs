//! Difference graphs on the vertex grid `[n] x [n]`.
//!
//! Two vertices are adjacent iff their products agree (right side:
//! `a_i a_j^-1`, left side: `a_i^-1 a_j`), so connected components are
//! exactly the fibers of the product map and are grouped by canonical key
//! rather than through union-find. Components biject with quotient-set
//! elements; edges are implied (every component is a clique) and are only
//! materialized on demand. Vertices are 0-based throughout.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::quotient::Side;
use crate::subset::SubsetOfGroup;

pub type Vertex = (usize, usize);
pub type ComponentId = usize;

#[derive(Debug, Clone)]
struct Component {
    value: GroupElement,
    label: String,
    vertices: Vec<Vertex>,
}

/// The difference graph of one subset on one side. Immutable after build.
#[derive(Debug, Clone)]
pub struct DifferenceGraph {
    n: usize,
    side: Side,
    component_of: Vec<ComponentId>,
    components: Vec<Component>,
}

/// An unordered edge (loops allowed), stored with the lexicographically
/// smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub a: Vertex,
    pub b: Vertex,
}

impl EdgeRef {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            EdgeRef { a: u, b: v }
        } else {
            EdgeRef { a: v, b: u }
        }
    }

    pub fn is_loop(&self) -> bool {
        self.a == self.b
    }
}

/// Components are labeled by the product value shared by their vertices and
/// numbered in row-major order of first appearance, so labels are
/// deterministic given the subset's element order.
pub fn build_difference_graph(a: &SubsetOfGroup, side: Side) -> DifferenceGraph {
    let n = a.len();
    let products = crate::quotient::pairwise_products(a, side);
    let ctx = a.context();
    let mut ids: HashMap<GroupElement, ComponentId> = HashMap::new();
    let mut component_of = Vec::with_capacity(n * n);
    let mut components: Vec<Component> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let value = &products[i * n + j];
            let id = *ids.entry(value.clone()).or_insert_with(|| {
                components.push(Component {
                    value: value.clone(),
                    label: ctx.format_element(value),
                    vertices: Vec::new(),
                });
                components.len() - 1
            });
            components[id].vertices.push((i, j));
            component_of.push(id);
        }
    }
    DifferenceGraph {
        n,
        side,
        component_of,
        components,
    }
}

impl DifferenceGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Number of connected components; equals the quotient-set cardinality.
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_of_vertex(&self, v: Vertex) -> ComponentId {
        assert!(v.0 < self.n && v.1 < self.n, "vertex out of range");
        self.component_of[v.0 * self.n + v.1]
    }

    /// The component of `(0,0)`; contains the whole diagonal and nothing
    /// else. Always id 0 because the scan starts there.
    pub fn diagonal_component(&self) -> ComponentId {
        self.component_of_vertex((0, 0))
    }

    pub fn component_value(&self, id: ComponentId) -> &GroupElement {
        &self.components[id].value
    }

    pub fn component_label(&self, id: ComponentId) -> &str {
        &self.components[id].label
    }

    pub fn component_vertices(&self, id: ComponentId) -> &[Vertex] {
        &self.components[id].vertices
    }

    pub fn is_edge(&self, e: EdgeRef) -> bool {
        e.a.0 < self.n
            && e.a.1 < self.n
            && e.b.0 < self.n
            && e.b.1 < self.n
            && self.component_of_vertex(e.a) == self.component_of_vertex(e.b)
    }

    /// All unordered edges including loops, lazily: within each component,
    /// every vertex pair. A component of size k yields k(k+1)/2 edges.
    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        self.components.iter().flat_map(|c| {
            c.vertices
                .iter()
                .enumerate()
                .flat_map(move |(i, &u)| c.vertices[i..].iter().map(move |&v| EdgeRef::new(u, v)))
        })
    }

    /// All directed edges including loops: ordered vertex pairs within one
    /// component. This is the edge set on which the opposite-side map is a
    /// genuine bijection.
    pub fn directed_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.components.iter().flat_map(|c| {
            c.vertices
                .iter()
                .flat_map(move |&u| c.vertices.iter().map(move |&v| (u, v)))
        })
    }

    /// Ordered vertex pairs within components, loops included: sum of
    /// squared component sizes. Equals the additive energy of the side.
    pub fn directed_edge_count(&self) -> u64 {
        self.components
            .iter()
            .map(|c| (c.vertices.len() as u64).pow(2))
            .sum()
    }

    /// Unordered edges with loops: sum of k(k+1)/2 over component sizes k.
    pub fn undirected_edge_count(&self) -> u64 {
        self.components
            .iter()
            .map(|c| {
                let k = c.vertices.len() as u64;
                k * (k + 1) / 2
            })
            .sum()
    }

    /// Size of the largest component that avoids the diagonal; 0 when only
    /// the diagonal exists. Never exceeds n.
    pub fn max_offdiagonal_clique(&self) -> usize {
        let diag = self.diagonal_component();
        self.components
            .iter()
            .enumerate()
            .filter(|(id, _)| *id != diag)
            .map(|(_, c)| c.vertices.len())
            .max()
            .unwrap_or(0)
    }

    /// JSON summary `{ "n", "side", "components": [{"value_key", "vertices"}] }`.
    pub fn component_summary_json(&self) -> String {
        #[derive(Serialize)]
        struct ComponentSummary<'a> {
            value_key: &'a str,
            vertices: &'a [Vertex],
        }
        #[derive(Serialize)]
        struct Summary<'a> {
            n: usize,
            side: &'a str,
            components: Vec<ComponentSummary<'a>>,
        }
        let summary = Summary {
            n: self.n,
            side: self.side.as_str(),
            components: self
                .components
                .iter()
                .map(|c| ComponentSummary {
                    value_key: &c.label,
                    vertices: &c.vertices,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&summary).expect("serializable summary")
    }
}

/// The transpose involution `(i, j) -> (j, i)`; a graph automorphism.
pub fn transpose_vertex(v: Vertex) -> Vertex {
    (v.1, v.0)
}

/// Image of a whole component under the transpose automorphism.
pub fn transpose_component(g: &DifferenceGraph, id: ComponentId) -> ComponentId {
    let &first = g
        .component_vertices(id)
        .first()
        .expect("components are nonempty");
    g.component_of_vertex(transpose_vertex(first))
}

/// The edge map into the opposite-side graph on directed edges:
/// `((i,j), (k,l)) -> ((k,i), (l,j))`. A bijection between the directed
/// edge sets of the two graphs (loops land on the diagonal), which is the
/// equality of the two additive energies.
pub fn phi_directed(edge: (Vertex, Vertex)) -> (Vertex, Vertex) {
    let ((i, j), (k, l)) = edge;
    ((k, i), (l, j))
}

/// The same map on an unordered edge, applied to its canonical (lex-smaller
/// first) directed representative. Loops land on the diagonal. Note that
/// quotienting to unordered edges identifies an edge's image with its
/// transpose, so only the directed form of the map is injective.
pub fn phi_edge(g: &DifferenceGraph, e: EdgeRef) -> Result<EdgeRef> {
    if !g.is_edge(e) {
        return Err(Error::NotAnEdge(e.a.0, e.a.1, e.b.0, e.b.1));
    }
    let (u, v) = phi_directed((e.a, e.b));
    Ok(EdgeRef::new(u, v))
}

/// A structural defect found by the validators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// An off-diagonal vertex shares a component with a diagonal vertex.
    DiagonalContamination {
        component: ComponentId,
        vertex: Vertex,
    },
    /// Two vertices of one component share a first or second coordinate.
    SharedAxis {
        component: ComponentId,
        first: Vertex,
        second: Vertex,
    },
    /// A component contains both `(i, j)` and `(j, i)` with `i != j`,
    /// impossible without order-2 elements.
    SymmetricPair {
        component: ComponentId,
        vertex: Vertex,
    },
    /// Two diagonal vertices in different components.
    SplitDiagonal { first: Vertex, second: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DiagonalContamination { component, vertex } => write!(
                f,
                "component {component} joins off-diagonal {vertex:?} to the diagonal"
            ),
            Violation::SharedAxis {
                component,
                first,
                second,
            } => write!(
                f,
                "component {component} holds {first:?} and {second:?} on one axis"
            ),
            Violation::SymmetricPair { component, vertex } => write!(
                f,
                "component {component} holds {vertex:?} and its transpose"
            ),
            Violation::SplitDiagonal { first, second } => {
                write!(f, "diagonal split between {first:?} and {second:?}")
            }
        }
    }
}

/// Checks the structural properties every genuine difference graph obeys:
/// no edge into the diagonal from outside, no two component vertices on a
/// shared axis, one component covering the whole diagonal, and (when the
/// group is order-2-free) no component containing a vertex together with
/// its transpose. Violations come back as data, not errors.
pub fn validate_lemma_properties(g: &DifferenceGraph, order2_free: bool) -> Vec<Violation> {
    let mut violations = Vec::new();
    let diag = g.diagonal_component();

    for i in 1..g.n() {
        if g.component_of_vertex((i, i)) != diag {
            violations.push(Violation::SplitDiagonal {
                first: (0, 0),
                second: (i, i),
            });
        }
    }

    for (id, component) in g.components.iter().enumerate() {
        let vertices = &component.vertices;
        if id == diag {
            for &v in vertices {
                if v.0 != v.1 {
                    violations.push(Violation::DiagonalContamination {
                        component: id,
                        vertex: v,
                    });
                }
            }
            continue;
        }
        for &v in vertices {
            if v.0 == v.1 {
                violations.push(Violation::DiagonalContamination {
                    component: id,
                    vertex: v,
                });
            }
        }
        for (pos, &u) in vertices.iter().enumerate() {
            for &v in &vertices[pos + 1..] {
                if u.0 == v.0 || u.1 == v.1 {
                    violations.push(Violation::SharedAxis {
                        component: id,
                        first: u,
                        second: v,
                    });
                }
            }
            if order2_free && u.0 != u.1 {
                let t = transpose_vertex(u);
                if t > u && g.component_of_vertex(t) == id {
                    violations.push(Violation::SymmetricPair {
                        component: id,
                        vertex: u,
                    });
                }
            }
        }
    }
    violations
}

/// The component pairing behind the parity argument: the diagonal is one
/// self-paired component, and every other component is either swapped with
/// a distinct partner by the transpose or fixed by it. With no order-2
/// elements the fixed list is empty, so the component count
/// `1 + 2 * pairs` is odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityCertificate {
    pub diagonal_component_count: usize,
    pub paired_components: Vec<(ComponentId, ComponentId)>,
    pub fixed_nondiagonal: Vec<ComponentId>,
}

impl ParityCertificate {
    pub fn component_count(&self) -> usize {
        self.diagonal_component_count
            + 2 * self.paired_components.len()
            + self.fixed_nondiagonal.len()
    }

    /// True iff the certificate proves an odd component count.
    pub fn certifies_odd(&self) -> bool {
        self.fixed_nondiagonal.is_empty()
    }
}

pub fn parity_certificate(g: &DifferenceGraph, order2_free: bool) -> ParityCertificate {
    let diag = g.diagonal_component();
    let mut paired = Vec::new();
    let mut fixed = Vec::new();
    for id in 0..g.component_count() {
        if id == diag {
            continue;
        }
        let partner = transpose_component(g, id);
        if partner == id {
            fixed.push(id);
        } else if id < partner {
            paired.push((id, partner));
        }
    }
    let certificate = ParityCertificate {
        diagonal_component_count: 1,
        paired_components: paired,
        fixed_nondiagonal: fixed,
    };
    debug_assert_eq!(certificate.component_count(), g.component_count());
    if order2_free {
        assert!(
            certificate.certifies_odd(),
            "a transpose-fixed off-diagonal component exists in an order-2-free group: {:?}",
            certificate.fixed_nondiagonal
        );
    }
    certificate
}

/// Options for DOT export.
#[derive(Debug, Clone, Default)]
pub struct DotOptions {
    /// Attach the component id as an external label on each vertex.
    pub label_components: bool,
}

const DOT_MAX_N: usize = 12;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#ad494a",
];

/// Renders the grid as DOT text: vertices pinned at `(i, j)`, components as
/// color classes, the diagonal drawn as a chain, and each off-diagonal
/// component drawn with its full clique edges. Deterministic byte-for-byte
/// for a given graph. Graphs with n > 12 are refused; export the component
/// summary instead.
pub fn export_dot(g: &DifferenceGraph, options: &DotOptions) -> Result<String> {
    use std::fmt::Write;
    if g.n() > DOT_MAX_N {
        return Err(Error::DotTooLarge(g.n()));
    }
    let mut out = String::new();
    let name = format!("difference_{}", g.side().as_str());
    writeln!(out, "graph {name} {{").unwrap();
    writeln!(out, "  layout=neato;").unwrap();
    writeln!(out, "  node [shape=point, width=0.14, fixedsize=true];").unwrap();
    for i in 0..g.n() {
        for j in 0..g.n() {
            let id = g.component_of_vertex((i, j));
            let color = PALETTE[id % PALETTE.len()];
            let label = if options.label_components {
                format!(", xlabel=\"{id}\"")
            } else {
                String::new()
            };
            writeln!(
                out,
                "  \"{i},{j}\" [pos=\"{i},{j}!\", color=\"{color}\"{label}];"
            )
            .unwrap();
        }
    }
    let diag = g.diagonal_component();
    for (id, component) in g.components.iter().enumerate() {
        let color = PALETTE[id % PALETTE.len()];
        let vertices = &component.vertices;
        if id == diag {
            for pair in vertices.windows(2) {
                writeln!(
                    out,
                    "  \"{},{}\" -- \"{},{}\" [color=\"{color}\"];",
                    pair[0].0, pair[0].1, pair[1].0, pair[1].1
                )
                .unwrap();
            }
        } else {
            for (pos, &u) in vertices.iter().enumerate() {
                for &v in &vertices[pos + 1..] {
                    writeln!(
                        out,
                        "  \"{},{}\" -- \"{},{}\" [color=\"{color}\"];",
                        u.0, u.1, v.0, v.1
                    )
                    .unwrap();
                }
            }
        }
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}
