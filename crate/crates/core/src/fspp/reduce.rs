//! The digraph-to-stable-paths reduction and its solution back-mapping:
//! stable path weights on the reduced instance restrict to equilibrium
//! kernels of the original digraph.

use crate::kernels::{Digraph, KernelFunction};
use crate::rational::Rational;

use super::instance::{FsppInstance, FsppWeights};

/// How the reduced instance remembers the digraph: vertex `v` of the
/// digraph is node `v`, the destination is the extra node appended last,
/// and `direct_path[v]` is the position of the one-edge path `vd` in `v`'s
/// list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsppNodeMap {
    pub dest: usize,
    pub direct_path: Vec<usize>,
}

/// Builds the stable-paths instance of a digraph: the underlying
/// undirected graph plus a fresh destination adjacent to everything. Each
/// vertex permits its direct path `vd`, ranked last, and one path `vud`
/// through every in-neighbor `u`, ranked above it in ascending order of
/// `u`.
///
/// The detours must run through `v`'s dominators: a positive direct
/// weight forces every detour onto the stability branch that pins
/// `w(vud) = w(ud)`, so full saturation at `v` certifies the domination
/// sum over `I(v)` exactly. Routing detours through out-neighbors instead
/// breaks the kernel correspondence already on a single arc.
pub fn digraph_to_fspp(d: &Digraph) -> (FsppInstance, FsppNodeMap) {
    let nv = d.n();
    let dest = nv;
    let mut labels: Vec<String> = d.labels().to_vec();
    labels.push(pick_dest_label(&labels));
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (u, v) in d.arcs() {
        if u < v || !d.has_arc(v, u) {
            edges.push((u, v));
        }
    }
    for v in 0..nv {
        edges.push((v, dest));
    }
    let mut paths: Vec<Vec<Vec<usize>>> = Vec::new();
    for v in 0..nv {
        let mut list = vec![vec![v, dest]];
        for u in d.in_neighbors(v) {
            list.push(vec![v, u, dest]);
        }
        paths.push(list);
    }
    paths.push(Vec::new());
    let inst = FsppInstance::new(labels, dest, &edges, paths)
        .expect("the reduction always builds a valid instance");
    let map = FsppNodeMap {
        dest,
        direct_path: vec![0; nv],
    };
    (inst, map)
}

/// A destination label that cannot collide with the vertex labels.
fn pick_dest_label(labels: &[String]) -> String {
    let mut name = String::from("d");
    while labels.iter().any(|l| l == &name) {
        name.push('\'');
    }
    name
}

/// Restricts stable path weights to the digraph: each vertex keeps the
/// weight of its direct path.
pub fn fspp_solution_to_kernel(w: &FsppWeights, map: &FsppNodeMap) -> KernelFunction {
    KernelFunction {
        weights: map
            .direct_path
            .iter()
            .enumerate()
            .map(|(v, &idx)| w.w[v][idx].clone())
            .collect::<Vec<Rational>>(),
    }
}
