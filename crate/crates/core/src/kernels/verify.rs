//! Weight functions on digraph vertices and the audits that certify them as
//! fractional kernels, strong kernels, or equilibria.

use std::collections::BTreeSet;
use std::fmt;

use num::Zero;

use super::digraph::{maximal_cliques, CliqueBound, Digraph};
use crate::rational::{format_rational, int, Rational};

/// A nonnegative weight per vertex, indexed like the digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelFunction {
    pub weights: Vec<Rational>,
}

impl KernelFunction {
    /// The constant function with the given value.
    pub fn uniform(n: usize, value: Rational) -> Self {
        KernelFunction {
            weights: vec![value; n],
        }
    }

    /// Weight of vertex `v`.
    pub fn get(&self, v: usize) -> &Rational {
        &self.weights[v]
    }

    /// Sum of weights over a vertex set.
    pub fn sum_over<'a>(&self, vs: impl IntoIterator<Item = &'a usize>) -> Rational {
        vs.into_iter()
            .map(|&v| self.weights[v].clone())
            .fold(Rational::zero(), |acc, w| acc + w)
    }
}

/// One way a weight function fails an audit. Vertices appear by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelDefect {
    /// The weight vector does not match the vertex count.
    WrongLength { got: usize, want: usize },
    /// A vertex carries negative weight.
    NegativeWeight { vertex: String },
    /// A clique's total weight exceeds one.
    CliqueOverweight { clique: Vec<String>, total: Rational },
    /// A closed in-neighborhood sums below one.
    Undominated { vertex: String, total: Rational },
    /// No clique inside the closed in-neighborhood reaches weight exactly
    /// one.
    NoTightClique { vertex: String },
    /// A vertex holds positive weight without belonging to any tight closed
    /// in-neighborhood it points into.
    FreeDeviation { vertex: String },
}

impl fmt::Display for KernelDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelDefect::WrongLength { got, want } => {
                write!(f, "weight vector has {got} entries, digraph has {want} vertices")
            }
            KernelDefect::NegativeWeight { vertex } => {
                write!(f, "vertex {vertex} has negative weight")
            }
            KernelDefect::CliqueOverweight { clique, total } => write!(
                f,
                "clique {{{}}} carries weight {} > 1",
                clique.join(","),
                format_rational(total)
            ),
            KernelDefect::Undominated { vertex, total } => write!(
                f,
                "closed in-neighborhood of {} sums to {} < 1",
                vertex,
                format_rational(total)
            ),
            KernelDefect::NoTightClique { vertex } => write!(
                f,
                "no clique inside the closed in-neighborhood of {vertex} has weight exactly 1"
            ),
            KernelDefect::FreeDeviation { vertex } => write!(
                f,
                "vertex {vertex} has positive weight but no tight closed in-neighborhood absorbs it"
            ),
        }
    }
}

/// Outcome of a kernel or equilibrium audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelAudit {
    pub defects: Vec<KernelDefect>,
}

impl KernelAudit {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }
}

impl fmt::Display for KernelAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "all checks passed")
        } else {
            let lines: Vec<String> = self.defects.iter().map(|d| d.to_string()).collect();
            write!(f, "{}", lines.join("; "))
        }
    }
}

fn shape_defects(d: &Digraph, f: &KernelFunction) -> Vec<KernelDefect> {
    let mut defects = Vec::new();
    if f.weights.len() != d.n() {
        defects.push(KernelDefect::WrongLength {
            got: f.weights.len(),
            want: d.n(),
        });
        return defects;
    }
    for v in 0..d.n() {
        if f.weights[v] < Rational::zero() {
            defects.push(KernelDefect::NegativeWeight {
                vertex: d.label(v).to_string(),
            });
        }
    }
    defects
}

fn labels_of(d: &Digraph, vs: &BTreeSet<usize>) -> Vec<String> {
    vs.iter().map(|&v| d.label(v).to_string()).collect()
}

/// Cliques never exceed weight one, and every closed in-neighborhood sums to
/// at least one. Checking maximal cliques suffices because weights are
/// nonnegative.
pub fn verify_fractional_kernel(d: &Digraph, f: &KernelFunction) -> KernelAudit {
    let mut defects = shape_defects(d, f);
    if !defects.is_empty() {
        return KernelAudit { defects };
    }
    let one = int(1);
    let cliques = maximal_cliques(d, CliqueBound::Unbounded { cap: usize::MAX })
        .expect("unbounded enumeration cannot fail");
    for clique in &cliques {
        let total = f.sum_over(clique);
        if total > one {
            defects.push(KernelDefect::CliqueOverweight {
                clique: labels_of(d, clique),
                total,
            });
        }
    }
    for v in 0..d.n() {
        let total = f.sum_over(&d.closed_in_neighborhood(v));
        if total < one {
            defects.push(KernelDefect::Undominated {
                vertex: d.label(v).to_string(),
                total,
            });
        }
    }
    KernelAudit { defects }
}

/// Maximal cliques of the connectedness graph induced on a vertex set.
fn induced_maximal_cliques(d: &Digraph, verts: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let members: Vec<usize> = verts.iter().copied().collect();
    let mut sub = Digraph::new(members.iter().map(|&v| d.label(v).to_string()).collect())
        .expect("labels stay distinct under restriction");
    for (i, &u) in members.iter().enumerate() {
        for (j, &v) in members.iter().enumerate() {
            if i != j && d.has_arc(u, v) {
                sub.add_arc(i, j).expect("indices are in range");
            }
        }
    }
    maximal_cliques(&sub, CliqueBound::Unbounded { cap: usize::MAX })
        .expect("unbounded enumeration cannot fail")
        .into_iter()
        .map(|k| k.into_iter().map(|i| members[i]).collect())
        .collect()
}

/// Whether some clique inside `verts` has weight exactly one. Under clique
/// independence a tight clique exists iff a maximal induced one is tight:
/// growing a tight clique cannot raise its nonnegative sum past one.
fn has_tight_clique(d: &Digraph, f: &KernelFunction, verts: &BTreeSet<usize>) -> bool {
    let one = int(1);
    induced_maximal_cliques(d, verts)
        .iter()
        .any(|k| f.sum_over(k) == one)
}

/// A fractional kernel whose domination is witnessed by tight cliques:
/// every vertex sees a clique of weight exactly one inside its closed
/// in-neighborhood.
pub fn verify_strong_kernel(d: &Digraph, f: &KernelFunction) -> KernelAudit {
    let mut audit = verify_fractional_kernel(d, f);
    if f.weights.len() != d.n() {
        return audit;
    }
    for v in 0..d.n() {
        if !has_tight_clique(d, f, &d.closed_in_neighborhood(v)) {
            audit.defects.push(KernelDefect::NoTightClique {
                vertex: d.label(v).to_string(),
            });
        }
    }
    audit
}

/// Equilibrium audit: every vertex with positive weight belongs to some
/// closed in-neighborhood (its own, or one it points into) whose total is
/// exactly one, so no vertex profits from moving weight unilaterally.
pub fn verify_nash(d: &Digraph, f: &KernelFunction) -> KernelAudit {
    let mut defects = shape_defects(d, f);
    if !defects.is_empty() || f.weights.len() != d.n() {
        return KernelAudit { defects };
    }
    let one = int(1);
    for v in 0..d.n() {
        if f.weights[v] <= Rational::zero() {
            continue;
        }
        let mut hosts = vec![v];
        hosts.extend(d.out_neighbors(v));
        let absorbed = hosts
            .iter()
            .any(|&h| f.sum_over(&d.closed_in_neighborhood(h)) == one);
        if !absorbed {
            defects.push(KernelDefect::FreeDeviation {
                vertex: d.label(v).to_string(),
            });
        }
    }
    KernelAudit { defects }
}
