//! Graph-side views of monomials: enumeration by degree sequence and
//! cycle/component structure.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Edge, Monomial, Multidegree, MAX_VERTICES};

/// All monomials (simple graphs) whose vertex-degree sequence is exactly `d`,
/// in canonical order. Vertices outside `support(d)` are isolated.
pub fn enumerate_monomials(d: &Multidegree) -> Vec<Monomial> {
    if d.max_vertex() > MAX_VERTICES {
        return Vec::new();
    }
    let verts = d.support();
    let mut residual: Vec<u32> = verts.iter().map(|&v| d.get(v)).collect();
    let mut out = Vec::new();
    backtrack(&verts, &mut residual, 0, 0, &mut out);
    out.sort_unstable();
    out
}

// Vertices are completed in increasing order: vertex `pos` takes all of its
// remaining degree as edges to later vertices.
fn backtrack(verts: &[usize], residual: &mut [u32], pos: usize, acc: u128, out: &mut Vec<Monomial>) {
    let Some(pos) = (pos..verts.len()).find(|&i| residual[i] > 0) else {
        out.push(Monomial::from_bits(acc));
        return;
    };
    let need = residual[pos] as usize;
    let candidates: Vec<usize> = (pos + 1..verts.len()).filter(|&j| residual[j] > 0).collect();
    if candidates.len() < need {
        return;
    }
    residual[pos] = 0;
    let mut chosen = Vec::with_capacity(need);
    choose(verts, residual, pos, &candidates, 0, need, &mut chosen, acc, out);
    residual[pos] = need as u32;
}

#[allow(clippy::too_many_arguments)]
fn choose(
    verts: &[usize],
    residual: &mut [u32],
    pos: usize,
    candidates: &[usize],
    start: usize,
    need: usize,
    chosen: &mut Vec<usize>,
    acc: u128,
    out: &mut Vec<Monomial>,
) {
    if chosen.len() == need {
        backtrack(verts, residual, pos + 1, acc, out);
        return;
    }
    let remaining = need - chosen.len();
    for k in start..candidates.len() {
        if candidates.len() - k < remaining {
            break;
        }
        let j = candidates[k];
        let bit = Edge::new(verts[pos], verts[j]).expect("distinct vertices").bit();
        residual[j] -= 1;
        chosen.push(j);
        choose(verts, residual, pos, candidates, k + 1, need, chosen, acc | 1u128 << bit, out);
        chosen.pop();
        residual[j] += 1;
    }
}

/// Number of simple graphs with degree sequence `d`, without materializing them.
pub fn count_monomials(d: &Multidegree) -> u64 {
    if d.max_vertex() > MAX_VERTICES {
        return 0;
    }
    let residual: Vec<u32> = d.support().iter().map(|&v| d.get(v)).collect();
    let mut memo = HashMap::new();
    count_rec(residual, &mut memo)
}

fn count_rec(residual: Vec<u32>, memo: &mut HashMap<Vec<u32>, u64>) -> u64 {
    let Some(pos) = residual.iter().position(|&r| r > 0) else {
        return 1;
    };
    if let Some(&c) = memo.get(&residual) {
        return c;
    }
    let need = residual[pos] as usize;
    let candidates: Vec<usize> = (pos + 1..residual.len()).filter(|&j| residual[j] > 0).collect();
    let mut next = residual.clone();
    next[pos] = 0;
    let total = count_choose(&mut next, &candidates, 0, need, memo);
    memo.insert(residual, total);
    total
}

fn count_choose(
    residual: &mut Vec<u32>,
    candidates: &[usize],
    start: usize,
    need: usize,
    memo: &mut HashMap<Vec<u32>, u64>,
) -> u64 {
    if need == 0 {
        return count_rec(residual.clone(), memo);
    }
    let mut total = 0;
    for k in start..candidates.len() {
        if candidates.len() - k < need {
            break;
        }
        residual[candidates[k]] -= 1;
        total += count_choose(residual, candidates, k + 1, need - 1, memo);
        residual[candidates[k]] += 1;
    }
    total
}

fn adjacency(m: Monomial) -> [u32; MAX_VERTICES + 1] {
    let mut adj = [0u32; MAX_VERTICES + 1];
    for e in m.edges() {
        adj[e.u()] |= 1 << e.v();
        adj[e.v()] |= 1 << e.u();
    }
    adj
}

fn neighbours_of(adj: &[u32; MAX_VERTICES + 1], set: u32) -> u32 {
    let mut s = set;
    let mut out = 0;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        out |= adj[v];
    }
    out
}

/// Length of the shortest cycle in the graph of `m`, if any.
pub fn girth(m: Monomial) -> Option<usize> {
    let mut adj = adjacency(m);
    let mut best: Option<usize> = None;
    for e in m.edges() {
        let (a, b) = (e.u(), e.v());
        adj[a] &= !(1 << b);
        adj[b] &= !(1 << a);
        // BFS from a looking for b without the edge itself.
        let mut visited = 1u32 << a;
        let mut frontier = visited;
        let mut dist = 0;
        while frontier != 0 {
            dist += 1;
            if best.is_some_and(|g| dist + 1 >= g) {
                break;
            }
            let next = neighbours_of(&adj, frontier) & !visited;
            if next & (1 << b) != 0 {
                best = Some(dist + 1);
                break;
            }
            visited |= next;
            frontier = next;
        }
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    best
}

/// Shape of one connected component of a monomial's graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentKind {
    /// A single cycle through `length` vertices.
    Cycle { length: usize },
    /// A path with `edges` edges.
    Path { edges: usize },
    /// Any other acyclic component.
    Tree { vertices: usize, edges: usize },
    /// Contains a cycle but is not itself a cycle.
    Other { vertices: usize, edges: usize },
}

impl ComponentKind {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, ComponentKind::Path { .. } | ComponentKind::Tree { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleStructure {
    /// Components ordered by their smallest vertex.
    pub components: Vec<ComponentKind>,
    /// Lengths of the components that are cycles, sorted.
    pub cycle_lengths: Vec<usize>,
    pub acyclic_components: usize,
    /// Shortest cycle anywhere in the graph.
    pub shortest_cycle: Option<usize>,
}

impl CycleStructure {
    /// True when every component is a cycle (the graph is 2-regular).
    pub fn is_union_of_cycles(&self) -> bool {
        !self.components.is_empty() && self.cycle_lengths.len() == self.components.len()
    }
}

pub fn cycle_structure(m: Monomial) -> CycleStructure {
    let adj = adjacency(m);
    let mut unseen = m.vertex_mask() << 1;
    let mut components = Vec::new();
    while unseen != 0 {
        let start = unseen.trailing_zeros();
        let mut comp = 1u32 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let next = neighbours_of(&adj, frontier) & !comp;
            comp |= next;
            frontier = next;
        }
        unseen &= !comp;
        let vertices = comp.count_ones() as usize;
        let mut degree_sum = 0usize;
        let mut max_deg = 0u32;
        let mut s = comp;
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            let deg = adj[v].count_ones();
            degree_sum += deg as usize;
            max_deg = max_deg.max(deg);
        }
        let edges = degree_sum / 2;
        let kind = if edges + 1 == vertices {
            if max_deg <= 2 {
                ComponentKind::Path { edges }
            } else {
                ComponentKind::Tree { vertices, edges }
            }
        } else if edges == vertices && max_deg == 2 {
            ComponentKind::Cycle { length: vertices }
        } else {
            ComponentKind::Other { vertices, edges }
        };
        components.push(kind);
    }
    let mut cycle_lengths: Vec<usize> = components
        .iter()
        .filter_map(|c| match c {
            ComponentKind::Cycle { length } => Some(*length),
            _ => None,
        })
        .collect();
    cycle_lengths.sort_unstable();
    let acyclic_components = components.iter().filter(|c| c.is_acyclic()).count();
    CycleStructure {
        components,
        cycle_lengths,
        acyclic_components,
        shortest_cycle: girth(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::cycle_monomial;

    fn mono(pairs: &[(usize, usize)]) -> Monomial {
        Monomial::from_pairs(pairs).unwrap()
    }

    /// Brute force: every edge subset on `support(d)` filtered by degree.
    fn brute_force(d: &Multidegree) -> Vec<Monomial> {
        let verts = d.support();
        let edges: Vec<Edge> = verts
            .iter()
            .flat_map(|&a| verts.iter().filter(move |&&b| b > a).map(move |&b| Edge::new(a, b).unwrap()))
            .collect();
        let mut out = Vec::new();
        for mask in 0u64..1 << edges.len() {
            let m = Monomial::from_edges(
                edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
            )
            .unwrap();
            if m.multidegree() == *d {
                out.push(m);
            }
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn small_degree_sequences() {
        assert_eq!(
            enumerate_monomials(&Multidegree::constant(2, 3)),
            vec![mono(&[(1, 2), (2, 3), (1, 3)])]
        );
        let fours = enumerate_monomials(&Multidegree::constant(2, 4));
        assert_eq!(fours.len(), 3);
        assert!(fours.contains(&cycle_monomial(&[1, 2, 3, 4]).unwrap()));
        assert!(fours.contains(&cycle_monomial(&[1, 3, 2, 4]).unwrap()));
        assert!(fours.contains(&cycle_monomial(&[1, 2, 4, 3]).unwrap()));
        assert_eq!(enumerate_monomials(&Multidegree::constant(1, 2)), vec![mono(&[(1, 2)])]);
        assert_eq!(enumerate_monomials(&Multidegree::zero()), vec![Monomial::ONE]);
        assert!(enumerate_monomials(&Multidegree::from_vec(vec![3, 1])).is_empty());
        assert!(enumerate_monomials(&Multidegree::from_vec(vec![1])).is_empty());
    }

    #[test]
    fn two_regular_counts() {
        let expected = [(3, 1), (4, 3), (5, 12), (6, 70), (7, 465)];
        for (m, count) in expected {
            let d = Multidegree::constant(2, m);
            assert_eq!(enumerate_monomials(&d).len(), count, "m = {m}");
            assert_eq!(count_monomials(&d), count as u64, "m = {m}");
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let degrees = [
            vec![2, 2, 2, 2, 2],
            vec![1, 1, 1, 1, 2, 2],
            vec![3, 1, 1, 1],
            vec![2, 0, 2, 1, 1],
            vec![3, 3, 2, 2, 1, 1],
            vec![1, 2, 3, 2, 1, 1],
            vec![4, 2, 2, 2, 2],
        ];
        for d in degrees {
            let d = Multidegree::from_vec(d);
            let fast = enumerate_monomials(&d);
            assert_eq!(fast, brute_force(&d), "{d}");
            assert_eq!(count_monomials(&d), fast.len() as u64, "{d}");
            assert!(fast.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn structure_of_cycles_and_paths() {
        let w4 = cycle_monomial(&[1, 2, 3, 4]).unwrap();
        let s = cycle_structure(w4);
        assert_eq!(s.cycle_lengths, vec![4]);
        assert_eq!(s.shortest_cycle, Some(4));
        assert!(s.is_union_of_cycles());

        let path = cycle_structure(mono(&[(1, 2), (2, 3)]));
        assert_eq!(path.components, vec![ComponentKind::Path { edges: 2 }]);
        assert_eq!(path.acyclic_components, 1);
        assert_eq!(path.shortest_cycle, None);

        let two = cycle_monomial(&[1, 2, 3]).unwrap().mul(cycle_monomial(&[4, 5, 6]).unwrap()).unwrap();
        let s = cycle_structure(two);
        assert_eq!(s.cycle_lengths, vec![3, 3]);
        assert_eq!(s.shortest_cycle, Some(3));
    }

    #[test]
    fn structure_of_mixed_graphs() {
        // Triangle with a pendant edge, plus a star.
        let m = mono(&[(1, 2), (2, 3), (1, 3), (3, 4), (5, 6), (5, 7), (5, 8)]);
        let s = cycle_structure(m);
        assert_eq!(
            s.components,
            vec![
                ComponentKind::Other { vertices: 4, edges: 4 },
                ComponentKind::Tree { vertices: 4, edges: 3 },
            ]
        );
        assert!(s.cycle_lengths.is_empty());
        assert_eq!(s.shortest_cycle, Some(3));
    }

    #[test]
    fn girth_finds_the_shortest_cycle() {
        // 5-cycle with a chord making a 3-cycle and a 4-cycle.
        let m = mono(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)]);
        assert_eq!(girth(m), Some(3));
        assert_eq!(girth(cycle_monomial(&[1, 2, 3, 4, 5, 6, 7]).unwrap()), Some(7));
        assert_eq!(girth(Monomial::ONE), None);
    }
}
