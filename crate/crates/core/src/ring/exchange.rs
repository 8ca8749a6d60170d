//! Polynomial exchange format:
//! `{"alphabet": "edge"|"paired", "N": int, "terms": [[...], ...]}`.
//!
//! Edge terms are lists of `[u, v]` pairs, paired terms are lists of
//! generator names such as `"x3"` or `"y7"`. The empty list is the monomial 1.
//! Readers reject repeated variables inside a term and repeated terms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{paired_x, paired_y, Edge, Monomial, Polynomial, RingError, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VariableJson {
    Edge([usize; 2]),
    Generator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub alphabet: String,
    #[serde(rename = "N")]
    pub vertices: usize,
    pub terms: Vec<Vec<VariableJson>>,
}

impl PolynomialJson {
    pub fn from_polynomial(p: &Polynomial) -> Self {
        let (alphabet, vertices) = match p.universe() {
            Universe::Edge { vertices } => ("edge", vertices),
            Universe::Paired { vertices } => ("paired", vertices),
        };
        let terms = p
            .terms()
            .map(|m| match p.universe() {
                Universe::Edge { .. } => m
                    .edges()
                    .map(|e| VariableJson::Edge([e.u(), e.v()]))
                    .collect(),
                Universe::Paired { .. } => m
                    .var_bits()
                    .map(|b| VariableJson::Generator(p.universe().var_name(b)))
                    .collect(),
            })
            .collect();
        Self {
            alphabet: alphabet.to_string(),
            vertices,
            terms,
        }
    }

    pub fn to_polynomial(&self) -> Result<Polynomial, RingError> {
        let universe = match self.alphabet.as_str() {
            "edge" => Universe::edge(self.vertices)?,
            "paired" => Universe::paired(self.vertices)?,
            other => return Err(RingError::Parse(format!("unknown alphabet {other:?}"))),
        };
        let mut seen = BTreeSet::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (ti, term) in self.terms.iter().enumerate() {
            let mut bits = 0u128;
            for (vi, var) in term.iter().enumerate() {
                let bit = parse_variable(universe, var)
                    .map_err(|e| RingError::Parse(format!("terms[{ti}][{vi}]: {e}")))?;
                if bits >> bit & 1 == 1 {
                    return Err(RingError::RepeatedVariable(format!(
                        "terms[{ti}][{vi}] = {}",
                        universe.var_name(bit)
                    )));
                }
                bits |= 1u128 << bit;
            }
            let m = Monomial::from_bits(bits);
            if !seen.insert(m) {
                return Err(RingError::DuplicateTerm(format!("terms[{ti}]")));
            }
            terms.push(m);
        }
        Polynomial::from_terms(universe, terms)
    }

    pub fn parse_str(s: &str) -> Result<Polynomial, RingError> {
        let doc: PolynomialJson = serde_json::from_str(s).map_err(|e| {
            RingError::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        doc.to_polynomial()
    }
}

fn parse_variable(universe: Universe, var: &VariableJson) -> Result<u32, RingError> {
    let n = universe.vertices();
    match (universe, var) {
        (Universe::Edge { .. }, VariableJson::Edge([a, b])) => {
            for &x in [a, b] {
                if x == 0 || x > n {
                    return Err(RingError::VertexOutOfRange { vertex: x, max: n });
                }
            }
            Ok(Edge::new(*a, *b)?.bit())
        }
        (Universe::Paired { .. }, VariableJson::Generator(name)) => {
            let (kind, idx) = name.split_at(name.len().min(1));
            let i: usize = idx
                .parse()
                .map_err(|_| RingError::Parse(format!("bad generator name {name:?}")))?;
            if i == 0 || i > n {
                return Err(RingError::VertexOutOfRange { vertex: i, max: n });
            }
            match kind {
                "x" => Ok(paired_x(i)),
                "y" => Ok(paired_y(i)),
                _ => Err(RingError::Parse(format!("bad generator name {name:?}"))),
            }
        }
        _ => Err(RingError::Parse(format!(
            "variable {var:?} does not belong to alphabet {universe}"
        ))),
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolynomialJson::from_polynomial(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        PolynomialJson::deserialize(deserializer)?
            .to_polynomial()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{cycle_monomial, plucker};
    use proptest::prelude::*;

    #[test]
    fn reads_edge_polynomials() {
        let s = r#"{"alphabet":"edge","N":4,"terms":[[[1,2],[3,4]],[[1,3],[2,4]],[[1,4],[2,3]]]}"#;
        let p = PolynomialJson::parse_str(s).unwrap();
        assert_eq!(p, plucker(Universe::edge(4).unwrap(), [1, 2, 3, 4]).unwrap());
    }

    #[test]
    fn reads_paired_polynomials() {
        let s = r#"{"alphabet":"paired","N":3,"terms":[["x1","y2"],["x2","y1"],[]]}"#;
        let p = PolynomialJson::parse_str(s).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.to_string(), "1 + x1*y2 + x2*y1");
    }

    #[test]
    fn reversed_edges_are_normalized() {
        let s = r#"{"alphabet":"edge","N":3,"terms":[[[2,1],[3,2],[1,3]]]}"#;
        let p = PolynomialJson::parse_str(s).unwrap();
        assert!(p.contains(cycle_monomial(&[1, 2, 3]).unwrap()));
    }

    #[test]
    fn rejects_malformed_documents() {
        let bad = [
            r#"{"alphabet":"edge","N":4,"terms":[[[1,2]],[[1,2]]]}"#,
            r#"{"alphabet":"edge","N":4,"terms":[[[1,2],[2,1]]]}"#,
            r#"{"alphabet":"edge","N":4,"terms":[[[1,5]]]}"#,
            r#"{"alphabet":"edge","N":4,"terms":[[[1,1]]]}"#,
            r#"{"alphabet":"edge","N":4,"terms":[["x1"]]}"#,
            r#"{"alphabet":"paired","N":4,"terms":[["z1"]]}"#,
            r#"{"alphabet":"paired","N":4,"terms":[["x5"]]}"#,
            r#"{"alphabet":"ring","N":4,"terms":[]}"#,
            r#"{"alphabet":"edge","N":4}"#,
            r#"{"alphabet":"edge","N":4,"terms":[], "extra": 1}"#,
            r#"{"alphabet":"edge","N":40,"terms":[]}"#,
            "not json",
        ];
        for s in bad {
            assert!(PolynomialJson::parse_str(s).is_err(), "{s}");
        }
    }

    #[test]
    fn parse_errors_carry_a_location() {
        let err = PolynomialJson::parse_str(r#"{"alphabet":"edge","N":4,"terms":[[[1,2]],[[1,2]]]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("terms[1]"), "{err}");
        let err = PolynomialJson::parse_str("{\n  \"alphabet\": 3\n}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    proptest! {
        #[test]
        fn edge_documents_round_trip(terms in proptest::collection::vec(any::<u16>(), 0..8)) {
            let u = Universe::edge(6).unwrap();
            let mask = u.var_mask();
            // Spread the random bits over the 15 edges of K6.
            let monos = terms.iter().map(|&t| {
                let mut bits = 0u128;
                for (k, b) in (0..128u32).filter(|b| mask >> b & 1 == 1).enumerate() {
                    if t >> k & 1 == 1 { bits |= 1u128 << b; }
                }
                Monomial::from_bits(bits)
            });
            let p = Polynomial::from_terms(u, monos).unwrap();
            let json = serde_json::to_string(&p).unwrap();
            let back: Polynomial = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
