//! Finite colored relational structures and exact brute-force relational
//! algebra. Everything here is the oracle layer: small, obvious, set-based.

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// A binary relation over a universe of `n` dense integer elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        for &(a, b) in &pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidStructure(format!(
                    "pair ({a},{b}) out of range for universe size {n}"
                )));
            }
        }
        Ok(Relation { n, pairs })
    }

    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            pairs: BTreeSet::new(),
        }
    }

    pub fn diagonal(n: usize) -> Self {
        Relation {
            n,
            pairs: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn min_pair(&self) -> Option<(usize, usize)> {
        self.pairs.iter().next().copied()
    }

    /// { (a,c) : ∃b (a,b) ∈ self ∧ (b,c) ∈ other }
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        if self.n != other.n {
            return Err(Error::UniverseMismatch(self.n, other.n));
        }
        let mut by_first: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(b, c) in &other.pairs {
            by_first.entry(b).or_default().push(c);
        }
        let mut out = BTreeSet::new();
        for &(a, b) in &self.pairs {
            if let Some(cs) = by_first.get(&b) {
                for &c in cs {
                    out.insert((a, c));
                }
            }
        }
        Ok(Relation { n: self.n, pairs: out })
    }

    /// { (b,a) : (a,b) ∈ self }
    pub fn converse(&self) -> Relation {
        Relation {
            n: self.n,
            pairs: self.pairs.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        if self.n != other.n {
            return Err(Error::UniverseMismatch(self.n, other.n));
        }
        Ok(Relation {
            n: self.n,
            pairs: self.pairs.union(&other.pairs).copied().collect(),
        })
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn intersects(&self, other: &Relation) -> bool {
        self.pairs.iter().any(|p| other.pairs.contains(p))
    }
}

/// A finite universe 0..n-1 partitioned into named color classes, plus named
/// binary relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStructure {
    n: usize,
    colors: BTreeMap<String, BTreeSet<usize>>,
    relations: BTreeMap<String, Relation>,
}

/// Wire form of the structure document. Unknown keys rejected.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureDoc {
    n: usize,
    colors: BTreeMap<String, Vec<usize>>,
    relations: BTreeMap<String, Vec<(usize, usize)>>,
}

impl FiniteStructure {
    pub fn new(
        n: usize,
        colors: BTreeMap<String, BTreeSet<usize>>,
        relations: BTreeMap<String, Relation>,
    ) -> Result<Self> {
        let m = FiniteStructure { n, colors, relations };
        let report = m.validate();
        if let Some(finding) = report.findings.first() {
            return Err(Error::InvalidStructure(finding.to_string()));
        }
        Ok(m)
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.colors
    }

    pub fn relations(&self) -> &BTreeMap<String, Relation> {
        &self.relations
    }

    /// Name of the color class containing `element`.
    pub fn color_of(&self, element: usize) -> Option<&str> {
        self.colors
            .iter()
            .find(|(_, members)| members.contains(&element))
            .map(|(name, _)| name.as_str())
    }

    /// Every invariant violation, not just the first.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let mut seen: BTreeMap<usize, &str> = BTreeMap::new();
        for (name, members) in &self.colors {
            for &e in members {
                if e >= self.n {
                    report.push(
                        "color-out-of-range",
                        format!("color {name:?} contains element {e} >= n={}", self.n),
                    );
                } else if let Some(prev) = seen.insert(e, name) {
                    report.push(
                        "color-overlap",
                        format!("element {e} is in colors {prev:?} and {name:?}"),
                    );
                }
            }
        }
        for e in 0..self.n {
            if !seen.contains_key(&e) {
                report.push("color-coverage", format!("element {e} has no color"));
            }
        }
        for (name, rel) in &self.relations {
            if rel.universe_size() != self.n {
                report.push(
                    "relation-universe",
                    format!(
                        "relation {name:?} declared over universe {} != {}",
                        rel.universe_size(),
                        self.n
                    ),
                );
            }
            for (a, b) in rel.pairs() {
                if a >= self.n || b >= self.n {
                    report.push(
                        "pair-out-of-range",
                        format!("relation {name:?} pair ({a},{b}) out of range for n={}", self.n),
                    );
                }
            }
        }
        report
    }

    /// Parse a structure document (JSON text) and validate it.
    pub fn parse(text: &str) -> Result<FiniteStructure> {
        let doc: StructureDoc =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let mut colors = BTreeMap::new();
        for (name, members) in doc.colors {
            colors.insert(name, members.into_iter().collect::<BTreeSet<_>>());
        }
        let mut relations = BTreeMap::new();
        for (name, pairs) in doc.relations {
            // range errors surface through validate below, with the relation name
            let rel = Relation {
                n: doc.n,
                pairs: pairs.into_iter().collect(),
            };
            relations.insert(name, rel);
        }
        FiniteStructure::new(doc.n, colors, relations)
    }

    /// Serialize back to the document format. Round-trips with `parse`.
    pub fn to_json(&self) -> String {
        let doc = StructureDoc {
            n: self.n,
            colors: self
                .colors
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().copied().collect()))
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|(k, v)| (k.clone(), v.pairs().collect()))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("structure document serializes")
    }
}

/// Convenience constructors for fixture structures used across tests and
/// examples.
pub mod fixtures {
    use super::*;

    fn one_color(n: usize, color: &str) -> BTreeMap<String, BTreeSet<usize>> {
        let mut colors = BTreeMap::new();
        colors.insert(color.to_string(), (0..n).collect());
        colors
    }

    pub fn single_point() -> FiniteStructure {
        FiniteStructure::new(1, one_color(1, "p"), BTreeMap::new()).unwrap()
    }

    /// Undirected path 0 - 1 - 2, one color.
    pub fn path3() -> FiniteStructure {
        let edges = [(0, 1), (1, 0), (1, 2), (2, 1)];
        let mut relations = BTreeMap::new();
        relations.insert("E".to_string(), Relation::new(3, edges).unwrap());
        FiniteStructure::new(3, one_color(3, "p"), relations).unwrap()
    }

    /// Undirected 5-cycle.
    pub fn c5() -> FiniteStructure {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push(((i + 1) % 5, i));
        }
        let mut relations = BTreeMap::new();
        relations.insert("E".to_string(), Relation::new(5, edges).unwrap());
        FiniteStructure::new(5, one_color(5, "p"), relations).unwrap()
    }

    /// Directed 3-cycle 0 -> 1 -> 2 -> 0.
    pub fn directed_3cycle() -> FiniteStructure {
        let arcs = [(0, 1), (1, 2), (2, 0)];
        let mut relations = BTreeMap::new();
        relations.insert("A".to_string(), Relation::new(3, arcs).unwrap());
        FiniteStructure::new(3, one_color(3, "p"), relations).unwrap()
    }

    /// Petersen graph: outer 5-cycle 0..4, spokes, inner pentagram 5..9.
    pub fn petersen() -> FiniteStructure {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        let sym: Vec<_> = edges
            .iter()
            .flat_map(|&(a, b)| [(a, b), (b, a)])
            .collect();
        let mut relations = BTreeMap::new();
        relations.insert("E".to_string(), Relation::new(10, sym).unwrap());
        FiniteStructure::new(10, one_color(10, "p"), relations).unwrap()
    }
}
