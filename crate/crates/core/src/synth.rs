//! Finite generic approximations: given a label specification (an algebra
//! document), assign one atom to every off-diagonal pair of a finite carrier
//! so that converses match, every triangle lands inside the composition
//! table, and, at the requested extension level, every witness demand is met.
//!
//! Infinite color classes are approximated by a finite requested size; how
//! generic the result is shows up as extension-axiom coverage, reported, not
//! assumed.

use crate::algebra::{algebra_isomorphic, extract_algebra, LabelAlgebra, TypeSize};
use crate::error::{Error, Result};
use crate::report::{Finding, ValidationReport};
use crate::structure::{FiniteStructure, Relation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Structural validity of a synthesis spec: exactly the algebra invariants.
pub fn validate_spec(spec: &LabelAlgebra) -> ValidationReport {
    spec.validate()
}

/// Default carrier size for a non-singleton type: room for every level-1
/// demand with slack. Documented and overridable per type.
pub fn default_size(spec: &LabelAlgebra, t: usize) -> usize {
    if spec.is_singleton_type(t) {
        return 1;
    }
    let outgoing = spec
        .atoms()
        .iter()
        .filter(|a| a.src == t && !a.is_equality)
        .count();
    (4 * outgoing).max(6)
}

/// A finite model of a spec: a typed carrier with exactly one atom per
/// ordered pair of distinct elements (stored one way; the converse direction
/// is implied).
#[derive(Debug, Clone)]
pub struct SynthModel {
    n: usize,
    /// type index of each element
    elem_type: Vec<usize>,
    /// assignment[a*n+b] for a != b; None marks a hole (invalid model)
    assignment: Vec<Option<usize>>,
}

impl SynthModel {
    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn elem_type(&self, e: usize) -> usize {
        self.elem_type[e]
    }

    pub fn atom_of_pair(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            None
        } else {
            self.assignment[a * self.n + b]
        }
    }

    /// Test helper: punch a hole in the assignment.
    pub fn clear_pair(&mut self, a: usize, b: usize) {
        self.assignment[a * self.n + b] = None;
        self.assignment[b * self.n + a] = None;
    }

    /// Serialize as a structure document: colors `Col:<type>`, one relation
    /// `theta:<src>:<atom-id>:<dst>` per non-equality atom of the spec.
    pub fn to_structure(&self, spec: &LabelAlgebra) -> Result<FiniteStructure> {
        let mut colors: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
        for (t, ty) in spec.types().iter().enumerate() {
            let members: BTreeSet<usize> = (0..self.n).filter(|&e| self.elem_type[e] == t).collect();
            colors.insert(format!("Col:{}", ty.id), members);
        }
        let mut relations: BTreeMap<String, Relation> = BTreeMap::new();
        for (idx, atom) in spec.atoms().iter().enumerate() {
            if atom.is_equality {
                continue;
            }
            let name = format!(
                "theta:{}:{}:{}",
                spec.types()[atom.src].id,
                atom.doc_id,
                spec.types()[atom.dst].id
            );
            let mut pairs = Vec::new();
            for a in 0..self.n {
                for b in 0..self.n {
                    if a != b && self.assignment[a * self.n + b] == Some(idx) {
                        pairs.push((a, b));
                    }
                }
            }
            relations.insert(name, Relation::new(self.n, pairs)?);
        }
        FiniteStructure::new(self.n, colors, relations)
    }
}

/// Read a synthesized model back off an extraction of the *original*
/// structure: each pair is assigned its own atom. Used to check that an
/// extraction always satisfies its own spec.
pub fn model_from_extraction(ex: &crate::algebra::Extraction) -> SynthModel {
    let n = ex.group.degree();
    let elem_type: Vec<usize> = (0..n).map(|e| ex.orbits.type_of(e)).collect();
    let mut assignment = vec![None; n * n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                assignment[a * n + b] = ex.table.atom_of_pair(a, b);
            }
        }
    }
    SynthModel {
        n,
        elem_type,
        assignment,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SynthOutcome {
    Model,
    /// Search space exhausted without a model. Trustworthy: only sound
    /// prunings are applied.
    Unsat,
    /// Node budget exceeded; existence undecided at this size.
    Budget,
}

pub struct SynthResult {
    pub outcome: SynthOutcome,
    pub model: Option<SynthModel>,
    pub nodes: u64,
}

struct Search<'a> {
    spec: &'a LabelAlgebra,
    n: usize,
    elem_type: Vec<usize>,
    /// unordered pairs (a, b), a < b, in lexicographic order
    pairs: Vec<(usize, usize)>,
    /// seed-shuffled candidate atoms per pair
    domains: Vec<Vec<usize>>,
    assignment: Vec<Option<usize>>,
    /// unassigned pair count per element, for demand pruning
    open_pairs: Vec<usize>,
    ext_level: u8,
    /// (element, atom) witness demands for level >= 1
    demands: Vec<(usize, usize)>,
    budget: u64,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn atom_at(&self, a: usize, b: usize) -> Option<usize> {
        self.assignment[a * self.n + b]
    }

    fn set(&mut self, a: usize, b: usize, atom: usize) {
        self.assignment[a * self.n + b] = Some(atom);
        self.assignment[b * self.n + a] = Some(self.spec.atoms()[atom].converse);
    }

    fn unset(&mut self, a: usize, b: usize) {
        self.assignment[a * self.n + b] = None;
        self.assignment[b * self.n + a] = None;
    }

    /// All six ordered triangle constraints over {a, b, c} that are fully
    /// assigned must hold.
    fn triangles_ok(&self, a: usize, b: usize) -> bool {
        for c in 0..self.n {
            if c == a || c == b {
                continue;
            }
            if self.atom_at(a, c).is_none() || self.atom_at(b, c).is_none() {
                continue;
            }
            for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                let s = self.atom_at(x, y).unwrap();
                let t = self.atom_at(y, z).unwrap();
                let u = self.atom_at(x, z).unwrap();
                match self.spec.comp(s, t) {
                    Some(res) if res.contains(&u) => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn demand_satisfied(&self, a: usize, s: usize) -> bool {
        (0..self.n).any(|b| b != a && self.atom_at(a, b) == Some(s))
    }

    /// Once every pair incident to `e` is assigned, its demands are final.
    fn element_demands_ok(&self, e: usize) -> bool {
        self.demands
            .iter()
            .filter(|&&(a, _)| a == e)
            .all(|&(a, s)| self.demand_satisfied(a, s))
    }

    fn level2_ok(&self) -> bool {
        if self.ext_level < 2 {
            return true;
        }
        for (s, t, res) in self.spec.comp_entries() {
            let src = self.spec.atoms()[s].src;
            let dst = self.spec.atoms()[t].dst;
            for a in 0..self.n {
                if self.elem_type[a] != src {
                    continue;
                }
                for c in 0..self.n {
                    if c == a || self.elem_type[c] != dst {
                        continue;
                    }
                    let Some(u) = self.atom_at(a, c) else { continue };
                    if !res.contains(&u) {
                        continue;
                    }
                    let witnessed = (0..self.n).any(|b| {
                        b != a && b != c && self.atom_at(a, b) == Some(s) && self.atom_at(b, c) == Some(t)
                    });
                    if !witnessed {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, next: usize) -> Result<Option<()>> {
        if next == self.pairs.len() {
            if self.ext_level >= 2 && !self.level2_ok() {
                return Ok(None);
            }
            return Ok(Some(()));
        }
        let (a, b) = self.pairs[next];
        let domain = self.domains[next].clone();
        for atom in domain {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Internal("budget".into()));
            }
            self.set(a, b, atom);
            self.open_pairs[a] -= 1;
            self.open_pairs[b] -= 1;
            let mut ok = self.triangles_ok(a, b);
            if ok && self.ext_level >= 1 {
                if self.open_pairs[a] == 0 {
                    ok = self.element_demands_ok(a);
                }
                if ok && self.open_pairs[b] == 0 {
                    ok = self.element_demands_ok(b);
                }
            }
            if ok {
                if let Some(found) = self.run(next + 1)? {
                    return Ok(Some(found));
                }
            }
            self.open_pairs[a] += 1;
            self.open_pairs[b] += 1;
            self.unset(a, b);
        }
        Ok(None)
    }
}

/// Backtracking atom assignment over all unordered pairs, lowest pair first,
/// values in seed-shuffled order. Exhaustive up to `budget` nodes.
pub fn synthesize(
    spec: &LabelAlgebra,
    sizes: &BTreeMap<String, usize>,
    ext_level: u8,
    seed: u64,
    budget: u64,
) -> Result<SynthResult> {
    let report = validate_spec(spec);
    if let Some(first) = report.findings.first() {
        return Err(Error::InvalidAlgebra(first.to_string()));
    }

    let mut per_type = Vec::with_capacity(spec.types().len());
    for (t, ty) in spec.types().iter().enumerate() {
        let size = match sizes.get(&ty.id) {
            Some(&k) => k,
            None => match ty.size {
                TypeSize::Finite(k) => k,
                TypeSize::Infinite => default_size(spec, t),
            },
        };
        if spec.is_singleton_type(t) && size != 1 {
            return Err(Error::SingletonSize {
                ty: ty.id.clone(),
                size,
            });
        }
        if size == 0 {
            return Err(Error::InvalidAlgebra(format!("type {:?} given size 0", ty.id)));
        }
        per_type.push(size);
    }
    for id in sizes.keys() {
        if spec.type_index(id).is_none() {
            return Err(Error::UnknownType(id.clone()));
        }
    }

    let mut elem_type = Vec::new();
    for (t, &k) in per_type.iter().enumerate() {
        elem_type.extend(std::iter::repeat(t).take(k));
    }
    let n = elem_type.len();

    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairs.push((a, b));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut domains = Vec::with_capacity(pairs.len());
    for &(a, b) in &pairs {
        let mut domain: Vec<usize> = spec
            .atoms_of(elem_type[a], elem_type[b])
            .iter()
            .copied()
            .filter(|&s| !spec.atoms()[s].is_equality)
            .collect();
        domain.shuffle(&mut rng);
        domains.push(domain);
    }

    let mut demands = Vec::new();
    if ext_level >= 1 {
        for a in 0..n {
            for (idx, atom) in spec.atoms().iter().enumerate() {
                if !atom.is_equality && atom.src == elem_type[a] {
                    demands.push((a, idx));
                }
            }
        }
    }

    let mut open_pairs = vec![0usize; n];
    for &(a, b) in &pairs {
        open_pairs[a] += 1;
        open_pairs[b] += 1;
    }

    let mut search = Search {
        spec,
        n,
        elem_type: elem_type.clone(),
        pairs,
        domains,
        assignment: vec![None; n * n],
        open_pairs,
        ext_level,
        demands,
        budget,
        nodes: 0,
    };

    match search.run(0) {
        Ok(Some(())) => Ok(SynthResult {
            outcome: SynthOutcome::Model,
            model: Some(SynthModel {
                n,
                elem_type,
                assignment: search.assignment.clone(),
            }),
            nodes: search.nodes,
        }),
        Ok(None) => Ok(SynthResult {
            outcome: SynthOutcome::Unsat,
            model: None,
            nodes: search.nodes,
        }),
        Err(Error::Internal(msg)) if msg == "budget" => Ok(SynthResult {
            outcome: SynthOutcome::Budget,
            model: None,
            nodes: search.nodes,
        }),
        Err(e) => Err(e),
    }
}

/// Result of checking a model against its spec.
#[derive(Debug, Clone, serde::Serialize)]
pub struct VerifyReport {
    pub findings: Vec<Finding>,
    /// fraction of (element, atom) demands with a witness; None below level 1
    pub coverage_level1: Option<f64>,
    /// fraction of witnessed composition demands; None below level 2
    pub coverage_level2: Option<f64>,
    /// atoms actually realized as atom(a,c) over witnessed (s,t) triangles,
    /// keyed by the atoms' doc ids
    pub comp_realized: BTreeMap<String, Vec<usize>>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Exhaustive check of all model invariants plus extension coverage at the
/// requested level.
pub fn verify_model(m: &SynthModel, spec: &LabelAlgebra, ext_level: u8) -> VerifyReport {
    let mut findings = Vec::new();
    let n = m.universe_size();

    for (t, ty) in spec.types().iter().enumerate() {
        let count = (0..n).filter(|&e| m.elem_type(e) == t).count();
        if spec.is_singleton_type(t) && count != 1 {
            findings.push(Finding::new(
                "singleton-size",
                format!("singleton type {:?} has {count} elements", ty.id),
            ));
        }
        if count == 0 {
            findings.push(Finding::new("type-empty", format!("type {:?} is empty", ty.id)));
        }
    }

    // exactly-one-atom per off-diagonal pair, well-typed, non-equality
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            match m.atom_of_pair(a, b) {
                None => findings.push(Finding::new(
                    "partition",
                    format!("pair ({a},{b}) carries no atom"),
                )),
                Some(s) => {
                    let info = &spec.atoms()[s];
                    if info.is_equality {
                        findings.push(Finding::new(
                            "partition",
                            format!("pair ({a},{b}) carries an equality atom"),
                        ));
                    }
                    if info.src != m.elem_type(a) || info.dst != m.elem_type(b) {
                        findings.push(Finding::new(
                            "atom-typing",
                            format!("pair ({a},{b}) carries an atom of the wrong type pair"),
                        ));
                    }
                    if m.atom_of_pair(b, a) != Some(info.converse) {
                        findings.push(Finding::new(
                            "converse",
                            format!("atom({b},{a}) is not the converse of atom({a},{b})"),
                        ));
                    }
                }
            }
        }
    }

    // triangle-soundness over all ordered triples
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                let (Some(s), Some(t), Some(u)) = (
                    m.atom_of_pair(a, b),
                    m.atom_of_pair(b, c),
                    m.atom_of_pair(a, c),
                ) else {
                    continue;
                };
                match spec.comp(s, t) {
                    Some(res) if res.contains(&u) => {}
                    _ => findings.push(Finding::new(
                        "triangle",
                        format!("atom({a},{c}) not in comp(atom({a},{b}), atom({b},{c}))"),
                    )),
                }
            }
        }
    }

    let coverage_level1 = if ext_level >= 1 {
        let mut total = 0usize;
        let mut met = 0usize;
        for a in 0..n {
            for (idx, atom) in spec.atoms().iter().enumerate() {
                if atom.is_equality || atom.src != m.elem_type(a) {
                    continue;
                }
                total += 1;
                if (0..n).any(|b| b != a && m.atom_of_pair(a, b) == Some(idx)) {
                    met += 1;
                }
            }
        }
        let cov = if total == 0 { 1.0 } else { met as f64 / total as f64 };
        if cov < 1.0 {
            findings.push(Finding::new(
                "extension-coverage",
                format!("level-1 coverage {met}/{total}"),
            ));
        }
        Some(cov)
    } else {
        None
    };

    // realized compositions; also level-2 coverage when requested
    let mut comp_realized: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut l2_total = 0usize;
    let mut l2_met = 0usize;
    for (s, t, res) in spec.comp_entries() {
        let src = spec.atoms()[s].src;
        let dst = spec.atoms()[t].dst;
        let mut realized: BTreeSet<usize> = BTreeSet::new();
        for a in 0..n {
            if m.elem_type(a) != src {
                continue;
            }
            for c in 0..n {
                if c == a || m.elem_type(c) != dst {
                    continue;
                }
                let Some(u) = m.atom_of_pair(a, c) else { continue };
                let witnessed = (0..n).any(|b| {
                    b != a && b != c && m.atom_of_pair(a, b) == Some(s) && m.atom_of_pair(b, c) == Some(t)
                });
                if witnessed {
                    realized.insert(u);
                }
                if ext_level >= 2 && res.contains(&u) {
                    l2_total += 1;
                    if witnessed {
                        l2_met += 1;
                    }
                }
            }
        }
        if !realized.is_empty() {
            let key = format!("{},{}", spec.atoms()[s].doc_id, spec.atoms()[t].doc_id);
            comp_realized.insert(
                key,
                realized.iter().map(|&u| spec.atoms()[u].doc_id).collect(),
            );
        }
    }
    let coverage_level2 = if ext_level >= 2 {
        let cov = if l2_total == 0 { 1.0 } else { l2_met as f64 / l2_total as f64 };
        if cov < 1.0 {
            findings.push(Finding::new(
                "extension-coverage",
                format!("level-2 coverage {l2_met}/{l2_total}"),
            ));
        }
        Some(cov)
    } else {
        None
    };

    VerifyReport {
        findings,
        coverage_level1,
        coverage_level2,
        comp_realized,
    }
}

/// Extract, synthesize from the extracted spec at the original sizes, verify,
/// re-extract, and compare algebras. "Model found and verified" and "algebras
/// isomorphic" are reported separately: a finite approximation can be rigid,
/// splitting into more atoms than the spec it satisfies.
#[derive(Debug, serde::Serialize)]
pub struct RoundtripReport {
    pub outcome: SynthOutcome,
    pub verified: Option<bool>,
    pub verify_findings: Vec<Finding>,
    pub isomorphic: Option<bool>,
    pub seed: u64,
}

impl RoundtripReport {
    pub fn success(&self) -> bool {
        self.outcome == SynthOutcome::Model
            && self.verified == Some(true)
            && self.isomorphic == Some(true)
    }
}

pub fn roundtrip(
    m: &FiniteStructure,
    ext_level: u8,
    seed: u64,
    budget: u64,
) -> Result<RoundtripReport> {
    let ex1 = extract_algebra(m)?;
    let sizes: BTreeMap<String, usize> = ex1
        .orbits
        .blocks
        .iter()
        .map(|b| (b.id.clone(), b.elements.len()))
        .collect();
    let result = synthesize(&ex1.algebra, &sizes, ext_level, seed, budget)?;
    let Some(model) = &result.model else {
        return Ok(RoundtripReport {
            outcome: result.outcome,
            verified: None,
            verify_findings: Vec::new(),
            isomorphic: None,
            seed,
        });
    };
    let verify = verify_model(model, &ex1.algebra, ext_level);
    let ex2 = extract_algebra(&model.to_structure(&ex1.algebra)?)?;
    let iso = algebra_isomorphic(&ex1.algebra, &ex2.algebra).is_some();
    Ok(RoundtripReport {
        outcome: result.outcome,
        verified: Some(verify.is_ok()),
        verify_findings: verify.findings,
        isomorphic: Some(iso),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::fixtures;

    fn spec_of(m: &FiniteStructure) -> LabelAlgebra {
        extract_algebra(m).unwrap().algebra
    }

    #[test]
    fn single_point_model() {
        let spec = spec_of(&fixtures::single_point());
        let res = synthesize(&spec, &BTreeMap::new(), 1, 0, 1_000).unwrap();
        assert_eq!(res.outcome, SynthOutcome::Model);
        let model = res.model.unwrap();
        assert_eq!(model.universe_size(), 1);
        assert!(verify_model(&model, &spec, 1).is_ok());
    }

    #[test]
    fn c5_spec_size5_recovers_pentagon() {
        let spec = spec_of(&fixtures::c5());
        let sizes = BTreeMap::from([("p".to_string(), 5)]);
        let res = synthesize(&spec, &sizes, 1, 7, 1_000_000).unwrap();
        assert_eq!(res.outcome, SynthOutcome::Model);
        let model = res.model.unwrap();
        let report = verify_model(&model, &spec, 1);
        assert!(report.is_ok(), "{:?}", report.findings);
        assert_eq!(report.coverage_level1, Some(1.0));
    }

    #[test]
    fn c5_spec_size2_unsat() {
        let spec = spec_of(&fixtures::c5());
        let sizes = BTreeMap::from([("p".to_string(), 2)]);
        let res = synthesize(&spec, &sizes, 1, 0, 1_000_000).unwrap();
        assert_eq!(res.outcome, SynthOutcome::Unsat);
    }

    #[test]
    fn directed_3cycle_roundtrip_isomorphic() {
        let report = roundtrip(&fixtures::directed_3cycle(), 1, 3, 1_000_000).unwrap();
        assert!(report.success(), "{report:?}");
    }

    #[test]
    fn random_graph_spec_size8() {
        // one type, atoms =, E, N with E and N self-converse and all
        // non-equality compositions = {E, N}
        let text = r#"{
            "types":[{"id":"p","size":"inf"}],
            "atoms":[{"id":0,"src":"p","dst":"p","converse":0,"is_equality":true},
                     {"id":1,"src":"p","dst":"p","converse":1,"is_equality":false},
                     {"id":2,"src":"p","dst":"p","converse":2,"is_equality":false}],
            "comp":[{"s":0,"t":0,"result":[0]},{"s":0,"t":1,"result":[1]},
                    {"s":0,"t":2,"result":[2]},{"s":1,"t":0,"result":[1]},
                    {"s":2,"t":0,"result":[2]},{"s":1,"t":1,"result":[1,2]},
                    {"s":1,"t":2,"result":[1,2]},{"s":2,"t":1,"result":[1,2]},
                    {"s":2,"t":2,"result":[1,2]}]}"#;
        let spec = crate::doc::parse_algebra(text).unwrap();
        assert!(validate_spec(&spec).is_ok());
        let sizes = BTreeMap::from([("p".to_string(), 8)]);
        let res = synthesize(&spec, &sizes, 1, 11, 1_000_000).unwrap();
        assert_eq!(res.outcome, SynthOutcome::Model);
        let report = verify_model(&res.model.unwrap(), &spec, 1);
        assert!(report.is_ok(), "{:?}", report.findings);
    }

    #[test]
    fn comp_result_includes_only_comp_atoms_in_l1_result() {
        // random-graph comp(1,1)={1,2}: wait for triangle-soundness, any
        // realized composition must sit inside the comp entry
        let spec = spec_of(&fixtures::c5());
        let sizes = BTreeMap::from([("p".to_string(), 5)]);
        let res = synthesize(&spec, &sizes, 1, 7, 1_000_000).unwrap();
        let model = res.model.unwrap();
        let report = verify_model(&model, &spec, 2);
        for (key, realized) in &report.comp_realized {
            let ids: Vec<usize> = key.split(',').map(|x| x.parse().unwrap()).collect();
            let s = spec.atom_by_doc_id(ids[0]).unwrap();
            let t = spec.atom_by_doc_id(ids[1]).unwrap();
            let allowed = spec.comp(s, t).unwrap();
            for u in realized {
                let internal = spec.atom_by_doc_id(*u).unwrap();
                assert!(allowed.contains(&internal));
            }
        }
    }

    #[test]
    fn extraction_satisfies_its_own_spec() {
        for m in [
            fixtures::single_point(),
            fixtures::path3(),
            fixtures::c5(),
            fixtures::directed_3cycle(),
            fixtures::petersen(),
        ] {
            let ex = extract_algebra(&m).unwrap();
            let model = model_from_extraction(&ex);
            let report = verify_model(&model, &ex.algebra, 0);
            assert!(report.is_ok(), "{:?}", report.findings);
        }
    }

    #[test]
    fn c5_against_own_spec_full_coverage() {
        let ex = extract_algebra(&fixtures::c5()).unwrap();
        let model = model_from_extraction(&ex);
        let report = verify_model(&model, &ex.algebra, 1);
        assert!(report.is_ok());
        assert_eq!(report.coverage_level1, Some(1.0));
        // every comp entry between non-equality atoms is realized on C5
        // itself, and realized exactly as the table says (equality entries
        // cannot be witnessed by a third, distinct element)
        let witnessable: Vec<(usize, usize, &BTreeSet<usize>)> = ex
            .algebra
            .comp_entries()
            .filter(|&(s, t, _)| {
                !ex.algebra.atoms()[s].is_equality && !ex.algebra.atoms()[t].is_equality
            })
            .collect();
        assert_eq!(report.comp_realized.len(), witnessable.len());
        for (s, t, res) in witnessable {
            let key = format!(
                "{},{}",
                ex.algebra.atoms()[s].doc_id,
                ex.algebra.atoms()[t].doc_id
            );
            let realized: BTreeSet<usize> = report.comp_realized[&key]
                .iter()
                .map(|&d| ex.algebra.atom_by_doc_id(d).unwrap())
                .collect();
            // atom(a,c) with a != c is never equality, so the realizable part
            // of each entry is its non-equality atoms
            let expected: BTreeSet<usize> = res
                .iter()
                .copied()
                .filter(|&u| !ex.algebra.atoms()[u].is_equality)
                .collect();
            assert_eq!(realized, expected);
        }
    }

    #[test]
    fn hole_in_assignment_reported() {
        let ex = extract_algebra(&fixtures::c5()).unwrap();
        let mut model = model_from_extraction(&ex);
        model.clear_pair(0, 1);
        let report = verify_model(&model, &ex.algebra, 0);
        assert!(report.findings.iter().any(|f| f.code == "partition"));
    }

    #[test]
    fn singleton_size_enforced() {
        let spec = spec_of(&fixtures::single_point());
        let sizes = BTreeMap::from([("p".to_string(), 3)]);
        assert!(matches!(
            synthesize(&spec, &sizes, 0, 0, 1_000),
            Err(Error::SingletonSize { .. })
        ));
    }

    #[test]
    fn determinism_same_seed_same_model() {
        let spec = spec_of(&fixtures::c5());
        let sizes = BTreeMap::from([("p".to_string(), 5)]);
        let a = synthesize(&spec, &sizes, 1, 42, 1_000_000).unwrap();
        let b = synthesize(&spec, &sizes, 1, 42, 1_000_000).unwrap();
        let sa = a.model.unwrap().to_structure(&spec).unwrap().to_json();
        let sb = b.model.unwrap().to_structure(&spec).unwrap().to_json();
        assert_eq!(sa, sb);
    }

    #[test]
    fn budget_reported_distinctly() {
        let spec = spec_of(&fixtures::c5());
        let sizes = BTreeMap::from([("p".to_string(), 5)]);
        let res = synthesize(&spec, &sizes, 1, 0, 3).unwrap();
        assert_eq!(res.outcome, SynthOutcome::Budget);
    }

    #[test]
    fn invalid_spec_rejected() {
        // converse involution broken: 1 -> 2 -> 1 but 2's src/dst don't swap
        let text = r#"{
            "types":[{"id":"p","size":"inf"}],
            "atoms":[{"id":0,"src":"p","dst":"p","converse":0,"is_equality":true},
                     {"id":1,"src":"p","dst":"p","converse":1,"is_equality":false},
                     {"id":2,"src":"p","dst":"p","converse":1,"is_equality":false}],
            "comp":[]}"#;
        let spec = crate::doc::parse_algebra(text).unwrap();
        assert!(!validate_spec(&spec).is_ok());
        assert!(synthesize(&spec, &BTreeMap::new(), 0, 0, 10).is_err());
    }
}
