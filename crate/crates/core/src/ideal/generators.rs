use std::fmt;

use serde::{Deserialize, Serialize};

use super::IdealSpec;
use crate::ring::{cycle_monomial, plucker, Monomial, Multidegree, Polynomial, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Plucker quadric on a 4-subset, indices increasing.
    Plucker { indices: [usize; 4] },
    /// Cycle monomial visiting `vertices` in order.
    Cycle { vertices: Vec<usize> },
}

/// One generator of `I_n` together with its (single) multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub poly: Polynomial,
    pub degree: Multidegree,
}

impl Generator {
    pub fn is_monomial(&self) -> bool {
        matches!(self.kind, GeneratorKind::Cycle { .. })
    }

    /// Bitmask of the vertices the generator touches (bit `v-1` for `v`).
    pub fn support_mask(&self) -> u32 {
        self.degree.support_mask()
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Plucker { indices: [a, b, c, d] } => write!(f, "pl({a},{b},{c},{d})"),
            GeneratorKind::Cycle { vertices } => {
                let parts: Vec<String> = vertices.iter().map(usize::to_string).collect();
                write!(f, "cycle({})", parts.join("-"))
            }
        }
    }
}

/// All generators of `I_n` on `1..=N`: one Plucker element per 4-subset,
/// then cycles of length `3..=n`, one per dihedral class.
pub fn generators(spec: IdealSpec) -> Vec<Generator> {
    generators_within(spec, spec.vertex_mask(), spec.vertex_mask())
}

/// Generators whose Plucker support lies in `plucker_mask` and whose cycle
/// support lies in `cycle_mask` (bit `v-1` for vertex `v`), in the same order
/// as [`generators`].
pub fn generators_within(spec: IdealSpec, plucker_mask: u32, cycle_mask: u32) -> Vec<Generator> {
    let universe = spec.universe();
    let allowed = spec.vertex_mask();
    let pl_verts = mask_vertices(plucker_mask & allowed);
    let cyc_verts = mask_vertices(cycle_mask & allowed);
    let mut out = Vec::new();
    for subset in subsets(&pl_verts, 4) {
        let indices = [subset[0], subset[1], subset[2], subset[3]];
        let poly = plucker(universe, indices).expect("distinct in-range indices");
        out.push(Generator {
            kind: GeneratorKind::Plucker { indices },
            degree: poly.homogeneous_degree().expect("homogeneous"),
            poly,
        });
    }
    for len in 3..=spec.n {
        for subset in subsets(&cyc_verts, len) {
            for order in dihedral_representatives(&subset) {
                out.push(cycle_generator(universe, order));
            }
        }
    }
    out
}

fn cycle_generator(universe: Universe, vertices: Vec<usize>) -> Generator {
    let m: Monomial = cycle_monomial(&vertices).expect("valid cycle");
    Generator {
        poly: Polynomial::monomial(universe, m).expect("in range"),
        degree: m.multidegree(),
        kind: GeneratorKind::Cycle { vertices },
    }
}

fn mask_vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b as usize + 1).collect()
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// One vertex order per cycle on `subset`: start at the smallest vertex and
/// keep the second vertex smaller than the last.
fn dihedral_representatives(subset: &[usize]) -> Vec<Vec<usize>> {
    let first = subset[0];
    let rest = &subset[1..];
    let mut out = Vec::new();
    let mut perm: Vec<usize> = rest.to_vec();
    permutations(&mut perm, 0, &mut |p| {
        if p[0] < p[p.len() - 1] {
            let mut order = Vec::with_capacity(subset.len());
            order.push(first);
            order.extend_from_slice(p);
            out.push(order);
        }
    });
    out.sort();
    out
}

fn permutations(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}
