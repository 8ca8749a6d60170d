use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::{graded_spanning_rows, Budget, DiskCache, GeneratorKind, GradedBasis, IdealError, IdealSpec};
use crate::gf2::{solve_combination, BitVector, Echelon};
use crate::ring::{Monomial, Multidegree, Polynomial, Universe, VertexPermutation};

type Slot = Arc<OnceLock<Result<Arc<GradedBasis>, IdealError>>>;

/// Verdict for one multihomogeneous component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    pub degree: Multidegree,
    pub terms: usize,
    pub member: bool,
    /// A `true` verdict always is; a `false` one only when `support(d)` lies in `[N]`.
    pub certified: bool,
    pub dim: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub member: bool,
    pub certified: bool,
    pub components: Vec<ComponentVerdict>,
}

/// Graded-piece cache shared between engines: concurrent readers, and each
/// piece is computed by exactly one thread.
#[derive(Default, Clone)]
pub struct BasisCache {
    slots: Arc<RwLock<HashMap<(IdealSpec, Multidegree), Slot>>>,
}

impl BasisCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn slot(&self, key: (IdealSpec, Multidegree)) -> Slot {
        if let Some(s) = self.slots.read().expect("cache lock").get(&key) {
            return s.clone();
        }
        self.slots
            .write()
            .expect("cache lock")
            .entry(key)
            .or_default()
            .clone()
    }

    pub fn len(&self) -> usize {
        self.slots.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Rank-based membership oracle for one truncated ideal.
#[derive(Clone)]
pub struct MembershipEngine {
    spec: IdealSpec,
    budget: Budget,
    symmetry: bool,
    cache: BasisCache,
    disk: Option<DiskCache>,
}

impl MembershipEngine {
    pub fn new(spec: IdealSpec) -> Self {
        Self {
            spec,
            budget: Budget::default(),
            symmetry: true,
            cache: BasisCache::new(),
            disk: None,
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_cache(mut self, cache: BasisCache) -> Self {
        self.cache = cache;
        self
    }

    pub fn with_disk_cache(mut self, disk: Option<DiskCache>) -> Self {
        self.disk = disk;
        self
    }

    /// Toggles relabelling each component so its degree is sorted before the
    /// lookup. `I_n` on `[N]` is stable under permutations of `[N]`, so this
    /// only shares work between pieces that differ by a relabelling.
    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    pub fn spec(&self) -> IdealSpec {
        self.spec
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// The graded piece `(I_n)_d`, built on first use.
    pub fn basis(&self, degree: &Multidegree) -> Result<Arc<GradedBasis>, IdealError> {
        let slot = self.cache.slot((self.spec, degree.clone()));
        slot.get_or_init(|| {
            if let Some(disk) = &self.disk {
                if let Some(b) = disk.load(self.spec, degree) {
                    return Ok(Arc::new(b));
                }
            }
            let b = GradedBasis::build(self.spec, degree, &self.budget)?;
            if let Some(disk) = &self.disk {
                // A failed spill only costs a recomputation next time.
                let _ = disk.store(&b);
            }
            Ok(Arc::new(b))
        })
        .clone()
    }

    pub fn member(&self, f: &Polynomial) -> Result<MembershipVerdict, IdealError> {
        if !matches!(f.universe(), Universe::Edge { .. }) {
            return Err(IdealError::NotEdgeAlphabet(f.universe()));
        }
        let mut components = Vec::new();
        for (degree, part) in f.homogeneous_components() {
            components.push(self.component(&degree, &part)?);
        }
        let member = components.iter().all(|c| c.member);
        let certified = member || components.iter().all(|c| c.certified);
        Ok(MembershipVerdict {
            member,
            certified,
            components,
        })
    }

    fn component(&self, degree: &Multidegree, part: &Polynomial) -> Result<ComponentVerdict, IdealError> {
        let inside = degree.support_mask() & !self.spec.vertex_mask() == 0;
        let (basis, member) = if inside && self.symmetry {
            let perm = sorting_permutation(degree, part.universe().vertices());
            let canon_deg = degree.permute(&perm);
            let canon = part.permute(&perm)?;
            let basis = self.basis(&canon_deg)?;
            let member = basis.contains(&canon)?;
            (basis, member)
        } else {
            let basis = self.basis(degree)?;
            let member = basis.contains(part)?;
            (basis, member)
        };
        Ok(ComponentVerdict {
            degree: degree.clone(),
            terms: part.len(),
            member,
            certified: member || inside,
            dim: basis.dim(),
            rank: basis.rank(),
        })
    }

    /// Writes `f` explicitly as a sum of `cofactor * generator` products,
    /// if it is a member. Uses the literal spanning rows, not the cached pieces.
    pub fn certificate(&self, f: &Polynomial) -> Result<Option<Certificate>, IdealError> {
        if !matches!(f.universe(), Universe::Edge { .. }) {
            return Err(IdealError::NotEdgeAlphabet(f.universe()));
        }
        let mut entries = Vec::new();
        for (degree, part) in f.homogeneous_components() {
            let span = graded_spanning_rows(self.spec, &degree, &self.budget)?;
            // Keep only rows that raise the rank, so the tagged solve below
            // works on at most rank(d) rows.
            let mut ech = Echelon::new(span.columns.len());
            let basis_rows: Vec<usize> = (0..span.rows.num_rows())
                .filter(|&i| ech.insert(span.rows.rows()[i].clone()))
                .collect();
            let rank = basis_rows.len() as u64;
            self.budget.check(&degree.to_string(), span.columns.len() as u64 + rank, rank)?;
            let index: HashMap<Monomial, usize> =
                span.columns.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let target = BitVector::from_positions(
                span.columns.len(),
                part.terms().map(|m| index[&m]),
            );
            let chosen: Vec<BitVector> = basis_rows.iter().map(|&i| span.rows.rows()[i].clone()).collect();
            let Some(used) = solve_combination(&chosen, &target)? else {
                return Ok(None);
            };
            for r in used {
                let (g, cofactor) = span.provenance[basis_rows[r]];
                entries.push(CertificateEntry {
                    generator: span.generators[g].kind.clone(),
                    cofactor: cofactor.edges().map(|e| [e.u(), e.v()]).collect(),
                });
            }
        }
        Ok(Some(Certificate { entries }))
    }
}

/// Relabels `support(d)` to `1..=k`, higher degree first, ties by vertex.
fn sorting_permutation(degree: &Multidegree, vertices: usize) -> VertexPermutation {
    let n = vertices.max(degree.max_vertex());
    let mut order: Vec<usize> = degree.support();
    order.sort_by_key(|&v| (std::cmp::Reverse(degree.get(v)), v));
    let mut images = vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        images[old - 1] = new + 1;
    }
    let mut next = order.len() + 1;
    for img in images.iter_mut() {
        if *img == 0 {
            *img = next;
            next += 1;
        }
    }
    VertexPermutation::from_images(images).expect("bijection by construction")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub generator: GeneratorKind,
    /// Edges of the cofactor monomial.
    pub cofactor: Vec<[usize; 2]>,
}

/// An explicit expression `f = sum cofactor_i * generator_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub entries: Vec<CertificateEntry>,
}

impl Certificate {
    /// Recomputes the sum from scratch.
    pub fn evaluate(&self, universe: Universe) -> Result<Polynomial, IdealError> {
        let mut acc = Polynomial::zero(universe);
        for e in &self.entries {
            let g = match &e.generator {
                GeneratorKind::Plucker { indices } => crate::ring::plucker(universe, *indices)?,
                GeneratorKind::Cycle { vertices } => {
                    Polynomial::monomial(universe, crate::ring::cycle_monomial(vertices)?)?
                }
            };
            let pairs: Vec<(usize, usize)> = e.cofactor.iter().map(|&[a, b]| (a, b)).collect();
            let cof = Polynomial::monomial(universe, Monomial::from_pairs(&pairs)?)?;
            acc.add_assign(&g.mul(&cof)?)?;
        }
        Ok(acc)
    }

    pub fn proves(&self, f: &Polynomial) -> bool {
        self.evaluate(f.universe()).is_ok_and(|p| &p == f)
    }
}
