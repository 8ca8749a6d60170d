use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Edge, Monomial, Multidegree, RingError, Universe, VertexPermutation};

/// An F2-linear combination of squarefree monomials over one alphabet.
///
/// Coefficients are implicit: a monomial is either present or not, and
/// addition is symmetric difference of the term sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    universe: Universe,
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero(universe: Universe) -> Self {
        Self {
            universe,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(universe: Universe) -> Self {
        Self::from_monomial_unchecked(universe, Monomial::ONE)
    }

    pub fn monomial(universe: Universe, m: Monomial) -> Result<Self, RingError> {
        check_in_universe(universe, m)?;
        Ok(Self::from_monomial_unchecked(universe, m))
    }

    pub(crate) fn from_monomial_unchecked(universe: Universe, m: Monomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Self { universe, terms }
    }

    /// Sums the given monomials; repeated monomials cancel in pairs.
    pub fn from_terms(
        universe: Universe,
        terms: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self, RingError> {
        let mut p = Self::zero(universe);
        for m in terms {
            check_in_universe(universe, m)?;
            p.toggle(m);
        }
        Ok(p)
    }

    pub(crate) fn from_terms_unchecked(
        universe: Universe,
        terms: impl IntoIterator<Item = Monomial>,
    ) -> Self {
        let mut p = Self::zero(universe);
        for m in terms {
            p.toggle(m);
        }
        p
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = Monomial> + '_ {
        self.terms.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.terms.contains(&m)
    }

    /// Adds a single monomial (removing it if already present).
    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), RingError> {
        if self.universe != other.universe {
            return Err(RingError::UniverseMismatch {
                left: self.universe,
                right: other.universe,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_same(other)?;
        Ok(Polynomial {
            universe: self.universe,
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .copied()
                .collect(),
        })
    }

    pub fn add_assign(&mut self, other: &Polynomial) -> Result<(), RingError> {
        self.check_same(other)?;
        for &m in &other.terms {
            self.toggle(m);
        }
        Ok(())
    }

    /// Product of two monomials as a polynomial: their union, or zero if they share a variable.
    pub fn mono_mul(universe: Universe, a: Monomial, b: Monomial) -> Result<Polynomial, RingError> {
        check_in_universe(universe, a)?;
        check_in_universe(universe, b)?;
        Ok(match a.mul(b) {
            Some(m) => Self::from_monomial_unchecked(universe, m),
            None => Self::zero(universe),
        })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.universe);
        for &a in &self.terms {
            for &b in &other.terms {
                if let Some(m) = a.mul(b) {
                    out.toggle(m);
                }
            }
        }
        Ok(out)
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, m: Monomial) -> Polynomial {
        Polynomial::from_terms_unchecked(self.universe, self.terms.iter().filter_map(|t| t.mul(m)))
    }

    /// The common multidegree of all terms, if the polynomial is nonzero and
    /// multihomogeneous (edge alphabet).
    pub fn homogeneous_degree(&self) -> Option<Multidegree> {
        let mut it = self.terms.iter();
        let d = it.next()?.multidegree();
        it.all(|m| m.multidegree() == d).then_some(d)
    }

    /// Splits into multihomogeneous components (edge alphabet).
    pub fn homogeneous_components(&self) -> BTreeMap<Multidegree, Polynomial> {
        let mut out: BTreeMap<Multidegree, Polynomial> = BTreeMap::new();
        for &m in &self.terms {
            out.entry(m.multidegree())
                .or_insert_with(|| Polynomial::zero(self.universe))
                .terms
                .insert(m);
        }
        out
    }

    /// Relabels vertices (edge alphabet). The universe must be large enough
    /// to hold the images.
    pub fn permute(&self, perm: &VertexPermutation) -> Result<Polynomial, RingError> {
        let terms: Vec<Monomial> = self.terms.iter().map(|m| m.permute(perm)).collect();
        Polynomial::from_terms(self.universe, terms)
    }

    /// Re-reads the same terms over another alphabet of the same kind.
    pub fn embed(&self, universe: Universe) -> Result<Polynomial, RingError> {
        let same_kind = matches!(
            (self.universe, universe),
            (Universe::Edge { .. }, Universe::Edge { .. })
                | (Universe::Paired { .. }, Universe::Paired { .. })
        );
        if !same_kind {
            return Err(RingError::UniverseMismatch {
                left: self.universe,
                right: universe,
            });
        }
        Polynomial::from_terms(universe, self.terms.iter().copied())
    }
}

pub(crate) fn check_in_universe(universe: Universe, m: Monomial) -> Result<(), RingError> {
    let outside = m.bits() & !universe.var_mask();
    if outside != 0 {
        let bit = outside.trailing_zeros();
        let vertex = match universe {
            Universe::Edge { .. } => Edge::from_bit(bit).v(),
            Universe::Paired { .. } => (bit % 64 + 1) as usize,
        };
        return Err(RingError::VertexOutOfRange {
            vertex,
            max: universe.vertices(),
        });
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for m in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "1")?;
                continue;
            }
            let names: Vec<String> = m.var_bits().map(|b| self.universe.var_name(b)).collect();
            write!(f, "{}", names.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.universe, self)
    }
}

/// `pl_{i1,i2,i3,i4} = x_{i1,i2}x_{i3,i4} + x_{i1,i3}x_{i2,i4} + x_{i1,i4}x_{i2,i3}`.
pub fn plucker(universe: Universe, idx: [usize; 4]) -> Result<Polynomial, RingError> {
    for a in 0..4 {
        for b in a + 1..4 {
            if idx[a] == idx[b] {
                return Err(RingError::RepeatedIndex(idx[a], "Plucker element"));
            }
        }
    }
    let [a, b, c, d] = idx;
    let terms = [
        Monomial::from_pairs(&[(a, b), (c, d)])?,
        Monomial::from_pairs(&[(a, c), (b, d)])?,
        Monomial::from_pairs(&[(a, d), (b, c)])?,
    ];
    Polynomial::from_terms(universe, terms)
}

/// The monomial of the cycle visiting `seq` in order and closing back to the start.
pub fn cycle_monomial(seq: &[usize]) -> Result<Monomial, RingError> {
    if seq.len() < 3 {
        return Err(RingError::CycleTooShort(seq.len()));
    }
    for (i, &a) in seq.iter().enumerate() {
        if seq[i + 1..].contains(&a) {
            return Err(RingError::RepeatedIndex(a, "cycle"));
        }
    }
    let edges = (0..seq.len())
        .map(|i| Edge::new(seq[i], seq[(i + 1) % seq.len()]))
        .collect::<Result<Vec<_>, _>>()?;
    Monomial::from_edges(edges)
}
