use std::cmp::Ordering;
use std::fmt;

use super::{RingError, MAX_VERTICES};

/// Index of the variable `x_{u,v}` (1 <= u < v <= MAX_VERTICES) in the
/// global edge ordering. Lexicographic order on `(u, v)` matches bit order.
const fn edge_bit(u: usize, v: usize) -> u32 {
    ((u - 1) * (2 * MAX_VERTICES - u) / 2 + (v - u - 1)) as u32
}

const EDGE_TABLE: [(u8, u8); MAX_VERTICES * (MAX_VERTICES - 1) / 2] = {
    let mut t = [(0u8, 0u8); MAX_VERTICES * (MAX_VERTICES - 1) / 2];
    let mut u = 1;
    while u <= MAX_VERTICES {
        let mut v = u + 1;
        while v <= MAX_VERTICES {
            t[edge_bit(u, v) as usize] = (u as u8, v as u8);
            v += 1;
        }
        u += 1;
    }
    t
};

/// The variable `x_{u,v}`, stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: u8,
    v: u8,
}

impl Edge {
    /// Normalizes the endpoint order; `x_{v,u}` means `x_{u,v}`.
    pub fn new(a: usize, b: usize) -> Result<Self, RingError> {
        for x in [a, b] {
            if x == 0 || x > MAX_VERTICES {
                return Err(RingError::VertexOutOfRange {
                    vertex: x,
                    max: MAX_VERTICES,
                });
            }
        }
        if a == b {
            return Err(RingError::Loop(a));
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Ok(Self {
            u: u as u8,
            v: v as u8,
        })
    }

    pub fn u(self) -> usize {
        self.u as usize
    }

    pub fn v(self) -> usize {
        self.v as usize
    }

    pub fn contains(self, w: usize) -> bool {
        self.u() == w || self.v() == w
    }

    /// The endpoint other than `w`, if `w` is an endpoint.
    pub fn other(self, w: usize) -> Option<usize> {
        if self.u() == w {
            Some(self.v())
        } else if self.v() == w {
            Some(self.u())
        } else {
            None
        }
    }

    pub(crate) fn bit(self) -> u32 {
        edge_bit(self.u(), self.v())
    }

    pub(crate) fn from_bit(bit: u32) -> Self {
        let (u, v) = EDGE_TABLE[bit as usize];
        Self { u, v }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{},{}", self.u, self.v)
    }
}

/// A squarefree monomial: a set of variables packed into a bitmask.
///
/// Over the edge alphabet bit `k` is the `k`-th edge in lexicographic order,
/// so the monomial is the edge set of a simple graph. Over the paired
/// alphabet bits `0..64` are `x_1..x_64` and `64..128` are `y_1..y_64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u128) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Result<Self, RingError> {
        let mut bits = 0u128;
        for e in edges {
            let b = 1u128 << e.bit();
            if bits & b != 0 {
                return Err(RingError::RepeatedVariable(format!("{e:?}")));
            }
            bits |= b;
        }
        Ok(Self(bits))
    }

    /// Convenience constructor from raw endpoint pairs.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self, RingError> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| Edge::new(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_edges(edges)
    }

    pub fn edge(e: Edge) -> Self {
        Self(1u128 << e.bit())
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains_var(self, bit: u32) -> bool {
        self.0 >> bit & 1 == 1
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    /// Product in the squarefree algebra: `None` when a variable repeats.
    pub fn mul(self, other: Monomial) -> Option<Monomial> {
        if self.0 & other.0 != 0 {
            None
        } else {
            Some(Monomial(self.0 | other.0))
        }
    }

    /// Variable indices in increasing order.
    pub fn var_bits(self) -> impl Iterator<Item = u32> {
        let mut w = self.0;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let tz = w.trailing_zeros();
            w &= w - 1;
            Some(tz)
        })
    }

    /// Edges in lexicographic order (edge alphabet).
    pub fn edges(self) -> impl Iterator<Item = Edge> {
        self.var_bits().map(Edge::from_bit)
    }

    pub fn without(self, other: Monomial) -> Monomial {
        Monomial(self.0 & !other.0)
    }

    /// Largest vertex touched by an edge (edge alphabet); 0 for the monomial 1.
    pub fn max_vertex(self) -> usize {
        self.edges().map(Edge::v).max().unwrap_or(0)
    }

    /// Vertex-degree sequence of the graph.
    pub fn multidegree(self) -> Multidegree {
        let mut deg = vec![0u32; self.max_vertex()];
        for e in self.edges() {
            deg[e.u() - 1] += 1;
            deg[e.v() - 1] += 1;
        }
        Multidegree::from_vec(deg)
    }

    /// Bitmask of vertices with nonzero degree, bit `v-1` for vertex `v`.
    pub fn vertex_mask(self) -> u32 {
        self.edges()
            .fold(0u32, |acc, e| acc | 1 << (e.u() - 1) | 1 << (e.v() - 1))
    }

    /// Relabels every vertex through `perm`.
    pub fn permute(self, perm: &VertexPermutation) -> Monomial {
        let mut bits = 0u128;
        for e in self.edges() {
            let e2 = Edge::new(perm.apply(e.u()), perm.apply(e.v()))
                .expect("permutations map edges to edges");
            bits |= 1u128 << e2.bit();
        }
        Monomial(bits)
    }
}

impl Ord for Monomial {
    /// Lexicographic order on the sorted variable lists.
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let p = diff.trailing_zeros();
        let above = if p == 127 { 0 } else { u128::MAX << (p + 1) };
        let self_has_p = self.0 >> p & 1 == 1;
        let without_p = if self_has_p { other.0 } else { self.0 };
        // The list holding `p` is smaller at the first difference, unless the
        // other list ends there and is a proper prefix.
        let holder_smaller = without_p & above != 0;
        if self_has_p == holder_smaller {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.var_bits().map(|b| format!("#{b}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Vertex-degree vector `d`, stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    /// Entry `k` is the degree of vertex `k + 1`.
    pub fn from_vec(mut degrees: Vec<u32>) -> Self {
        while degrees.last() == Some(&0) {
            degrees.pop();
        }
        Self(degrees)
    }

    /// `(value, value, ..., value)` on vertices `1..=count`.
    pub fn constant(value: u32, count: usize) -> Self {
        Self::from_vec(vec![value; count])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, vertex: usize) -> u32 {
        if vertex == 0 {
            return 0;
        }
        self.0.get(vertex - 1).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Largest vertex with nonzero degree.
    pub fn max_vertex(&self) -> usize {
        self.0.len()
    }

    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn support_mask(&self) -> u32 {
        self.support().iter().fold(0, |acc, v| acc | 1 << (v - 1))
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Multidegree) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        if !other.le(self) {
            return None;
        }
        let v = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &a)| a - other.0.get(i).copied().unwrap_or(0))
            .collect();
        Some(Self::from_vec(v))
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        let len = self.0.len().max(other.0.len());
        Self::from_vec(
            (0..len)
                .map(|i| self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }

    pub fn permute(&self, perm: &VertexPermutation) -> Multidegree {
        let len = self.0.len().max(perm.len());
        let mut out = vec![0u32; len];
        for (i, &d) in self.0.iter().enumerate() {
            if d > 0 {
                let w = perm.apply(i + 1);
                if w > out.len() {
                    out.resize(w, 0);
                }
                out[w - 1] = d;
            }
        }
        Self::from_vec(out)
    }

    /// Parses `"2,2,1"` (also accepts surrounding parentheses).
    pub fn parse(s: &str) -> Result<Self, RingError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(Self::zero());
        }
        t.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| RingError::Parse(format!("bad multidegree entry {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_vec)
    }
}

impl serde::Serialize for Multidegree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Multidegree {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(Multidegree::from_vec(Vec::<u32>::deserialize(deserializer)?))
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A permutation of the vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexPermutation(Vec<usize>);

impl VertexPermutation {
    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    /// `images[v - 1]` is the image of `v`; must be a bijection of `1..=n`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, RingError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &w in &images {
            if w == 0 || w > n || seen[w] {
                return Err(RingError::Parse(format!("not a permutation: {images:?}")));
            }
            seen[w] = true;
        }
        Ok(Self(images))
    }

    pub fn transposition(i: usize, j: usize, n: usize) -> Self {
        let mut p = Self::identity(n.max(i).max(j));
        p.0.swap(i - 1, j - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Vertices beyond the stored range are fixed.
    pub fn apply(&self, v: usize) -> usize {
        if v == 0 || v > self.0.len() {
            v
        } else {
            self.0[v - 1]
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &w) in self.0.iter().enumerate() {
            inv[w - 1] = i + 1;
        }
        Self(inv)
    }
}
