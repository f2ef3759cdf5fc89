//! Label algebras over an atom table: per type pair (p,q) the labels are the
//! atom subsets, forming a Boolean algebra with bottom ∅ and top "all atoms";
//! composition of labels is induced by the atom-level composition table.
//!
//! Terminology used throughout: the *zero* label of a type is the equality
//! label on (p,p); every other nonempty label is *positive*; ∅ is *bottom*
//! and is excluded from the zero/positive counts.

use crate::atoms::{pair_atoms, AtomTable, OrbitPartition};
use crate::error::{Error, Result};
use crate::perm::{find_automorphisms, PermGroup};
use crate::report::ValidationReport;
use crate::structure::FiniteStructure;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Declared size of a type: finite for extracted algebras, possibly infinite
/// in synthesis specifications.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeSize {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgType {
    pub id: String,
    pub size: TypeSize,
}

/// Atom metadata without its concrete pair set. `doc_id` is the external id
/// used in documents; internal indices are dense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomInfo {
    pub doc_id: usize,
    pub src: usize,
    pub dst: usize,
    pub converse: usize,
    pub is_equality: bool,
}

/// A set of atoms with a fixed source and target type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Label {
    pub src: usize,
    pub dst: usize,
    pub atoms: BTreeSet<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelClass {
    Bottom,
    Zero,
    Positive,
}

/// The per-pair label families with distinguished zero and top elements and
/// the atom-level composition table.
#[derive(Debug, Clone)]
pub struct LabelAlgebra {
    types: Vec<AlgType>,
    atoms: Vec<AtomInfo>,
    by_pair: BTreeMap<(usize, usize), Vec<usize>>,
    comp: BTreeMap<(usize, usize), BTreeSet<usize>>,
}

impl LabelAlgebra {
    pub fn new(
        types: Vec<AlgType>,
        atoms: Vec<AtomInfo>,
        comp: BTreeMap<(usize, usize), BTreeSet<usize>>,
    ) -> LabelAlgebra {
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, a) in atoms.iter().enumerate() {
            by_pair.entry((a.src, a.dst)).or_default().push(i);
        }
        LabelAlgebra {
            types,
            atoms,
            by_pair,
            comp,
        }
    }

    pub fn types(&self) -> &[AlgType] {
        &self.types
    }

    pub fn atoms(&self) -> &[AtomInfo] {
        &self.atoms
    }

    pub fn type_index(&self, id: &str) -> Option<usize> {
        self.types.iter().position(|t| t.id == id)
    }

    pub fn atom_by_doc_id(&self, doc_id: usize) -> Option<usize> {
        self.atoms.iter().position(|a| a.doc_id == doc_id)
    }

    pub fn atoms_of(&self, src: usize, dst: usize) -> &[usize] {
        self.by_pair.get(&(src, dst)).map_or(&[], |v| v)
    }

    pub fn type_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.by_pair.keys().copied()
    }

    pub fn equality_atom(&self, t: usize) -> Option<usize> {
        self.atoms_of(t, t)
            .iter()
            .copied()
            .find(|&s| self.atoms[s].is_equality)
    }

    /// A type is a singleton when its (p,p) label family is just {zero},
    /// i.e. the only (p,p) atom is equality.
    pub fn is_singleton_type(&self, t: usize) -> bool {
        let atoms = self.atoms_of(t, t);
        atoms.len() == 1 && self.atoms[atoms[0]].is_equality
    }

    pub fn comp(&self, s: usize, t: usize) -> Option<&BTreeSet<usize>> {
        self.comp.get(&(s, t))
    }

    pub fn comp_entries(&self) -> impl Iterator<Item = (usize, usize, &BTreeSet<usize>)> + '_ {
        self.comp.iter().map(|(&(s, t), r)| (s, t, r))
    }

    pub fn bottom(&self, src: usize, dst: usize) -> Label {
        Label {
            src,
            dst,
            atoms: BTreeSet::new(),
        }
    }

    /// The maximal label v on (src, dst): all atoms.
    pub fn top(&self, src: usize, dst: usize) -> Label {
        Label {
            src,
            dst,
            atoms: self.atoms_of(src, dst).iter().copied().collect(),
        }
    }

    /// The zero label of type `t`: just the equality atom.
    pub fn zero(&self, t: usize) -> Option<Label> {
        self.equality_atom(t).map(|e| Label {
            src: t,
            dst: t,
            atoms: [e].into(),
        })
    }

    pub fn label(&self, src: usize, dst: usize, atoms: impl IntoIterator<Item = usize>) -> Label {
        Label {
            src,
            dst,
            atoms: atoms.into_iter().collect(),
        }
    }

    /// ū = ¬u ∧ v: all (src,dst)-atoms not in u.
    pub fn complement(&self, u: &Label) -> Label {
        Label {
            src: u.src,
            dst: u.dst,
            atoms: self
                .atoms_of(u.src, u.dst)
                .iter()
                .copied()
                .filter(|a| !u.atoms.contains(a))
                .collect(),
        }
    }

    pub fn meet(&self, u: &Label, w: &Label) -> Label {
        Label {
            src: u.src,
            dst: u.dst,
            atoms: u.atoms.intersection(&w.atoms).copied().collect(),
        }
    }

    pub fn join(&self, u: &Label, w: &Label) -> Label {
        Label {
            src: u.src,
            dst: u.dst,
            atoms: u.atoms.union(&w.atoms).copied().collect(),
        }
    }

    /// Label composition via the atom composition table.
    pub fn compose(&self, u: &Label, w: &Label) -> Result<Label> {
        if u.dst != w.src {
            return Err(Error::TypeMismatch(format!(
                "cannot compose ({},{}) label with ({},{}) label",
                self.types[u.src].id, self.types[u.dst].id, self.types[w.src].id, self.types[w.dst].id
            )));
        }
        let mut atoms = BTreeSet::new();
        for &s in &u.atoms {
            for &t in &w.atoms {
                if let Some(res) = self.comp.get(&(s, t)) {
                    atoms.extend(res.iter().copied());
                }
            }
        }
        Ok(Label {
            src: u.src,
            dst: w.dst,
            atoms,
        })
    }

    pub fn classify(&self, u: &Label) -> LabelClass {
        if u.atoms.is_empty() {
            LabelClass::Bottom
        } else if u.src == u.dst
            && u.atoms.len() == 1
            && u.atoms.iter().all(|&a| self.atoms[a].is_equality)
        {
            LabelClass::Zero
        } else {
            LabelClass::Positive
        }
    }

    /// Structural invariants of the atom table and composition table.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        for (i, a) in self.atoms.iter().enumerate() {
            if a.src >= self.types.len() || a.dst >= self.types.len() {
                report.push("atom-type", format!("atom {} has out-of-range type", a.doc_id));
                continue;
            }
            let c = a.converse;
            if c >= self.atoms.len() {
                report.push("converse-range", format!("atom {} converse out of range", a.doc_id));
                continue;
            }
            if self.atoms[c].converse != i {
                report.push(
                    "converse-involution",
                    format!("converse of atom {} is not an involution", a.doc_id),
                );
            }
            if self.atoms[c].src != a.dst || self.atoms[c].dst != a.src {
                report.push(
                    "converse-types",
                    format!("converse of atom {} does not swap src/dst", a.doc_id),
                );
            }
            if a.is_equality {
                if a.src != a.dst {
                    report.push(
                        "equality-types",
                        format!("equality atom {} is not on a (p,p) pair", a.doc_id),
                    );
                }
                if c != i {
                    report.push(
                        "equality-converse",
                        format!("equality atom {} is not self-converse", a.doc_id),
                    );
                }
            }
        }
        for (t, ty) in self.types.iter().enumerate() {
            let eqs: Vec<usize> = self
                .atoms_of(t, t)
                .iter()
                .copied()
                .filter(|&s| self.atoms[s].is_equality)
                .collect();
            if eqs.len() != 1 {
                report.push(
                    "equality-missing",
                    format!("type {:?} has {} equality atoms, expected 1", ty.id, eqs.len()),
                );
            }
            let singleton = self.is_singleton_type(t);
            match ty.size {
                TypeSize::Finite(1) if !singleton => report.push(
                    "singleton-flag",
                    format!("type {:?} has size 1 but non-equality atoms", ty.id),
                ),
                TypeSize::Finite(k) if singleton && k != 1 => report.push(
                    "singleton-size",
                    format!("singleton type {:?} declared with size {k}", ty.id),
                ),
                TypeSize::Infinite if singleton => report.push(
                    "singleton-size",
                    format!("singleton type {:?} declared infinite", ty.id),
                ),
                TypeSize::Finite(0) => {
                    report.push("type-empty", format!("type {:?} has size 0", ty.id))
                }
                _ => {}
            }
        }
        // composition table: completeness, nonemptiness, identity law,
        // converse-coherence, result typing
        for (s, a) in self.atoms.iter().enumerate() {
            for (t, b) in self.atoms.iter().enumerate() {
                if a.dst != b.src {
                    if self.comp.contains_key(&(s, t)) {
                        report.push(
                            "comp-typing",
                            format!("comp entry for non-composable atoms {} and {}", a.doc_id, b.doc_id),
                        );
                    }
                    continue;
                }
                let Some(res) = self.comp.get(&(s, t)) else {
                    report.push(
                        "comp-missing",
                        format!("no comp entry for atoms {} and {}", a.doc_id, b.doc_id),
                    );
                    continue;
                };
                if res.is_empty() {
                    report.push(
                        "comp-empty",
                        format!("comp({},{}) is empty", a.doc_id, b.doc_id),
                    );
                }
                for &u in res {
                    if u >= self.atoms.len()
                        || self.atoms[u].src != a.src
                        || self.atoms[u].dst != b.dst
                    {
                        report.push(
                            "comp-result-typing",
                            format!("comp({},{}) contains ill-typed atom", a.doc_id, b.doc_id),
                        );
                    }
                }
                if a.is_equality && *res != BTreeSet::from([t]) {
                    report.push(
                        "identity-left",
                        format!("comp(e,{}) != {{{}}}", b.doc_id, b.doc_id),
                    );
                }
                if b.is_equality && *res != BTreeSet::from([s]) {
                    report.push(
                        "identity-right",
                        format!("comp({},e) != {{{}}}", a.doc_id, a.doc_id),
                    );
                }
                let s_conv = a.converse;
                let t_conv = b.converse;
                if let Some(mirror) = self.comp.get(&(t_conv, s_conv)) {
                    let expected: BTreeSet<usize> = res
                        .iter()
                        .filter_map(|&u| self.atoms.get(u).map(|ai| ai.converse))
                        .collect();
                    if *mirror != expected {
                        report.push(
                            "converse-coherence",
                            format!(
                                "comp({},{}) is not the converse of comp({},{})",
                                self.atoms[t_conv].doc_id,
                                self.atoms[s_conv].doc_id,
                                a.doc_id,
                                b.doc_id
                            ),
                        );
                    }
                }
            }
        }
        report
    }
}

/// Per type pair summary inside a [`PropositionReport`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairSummary {
    pub src: String,
    pub dst: String,
    pub atom_count: usize,
    pub label_count: u128,
    pub zero_labels: usize,
    pub positive_labels: usize,
}

/// Outcome of the exhaustive complement/classification/finiteness check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropositionReport {
    pub findings: Vec<crate::report::Finding>,
    pub pairs: Vec<PairSummary>,
}

impl PropositionReport {
    pub fn is_ok(&self) -> bool {
        self.findings.is_empty()
    }
}

impl LabelAlgebra {
    /// Exhaustively verify, for every label of every type pair: the
    /// complement is in the family, u∧ū=∅, u∨ū=v; classify every label;
    /// count the families (2^atoms each). When a concrete realization is
    /// given, also check that each top covers the full block product.
    pub fn check_proposition(&self, realization: Option<(&AtomTable, &OrbitPartition)>) -> PropositionReport {
        let mut findings = self.validate().findings;
        let mut pairs = Vec::new();
        for (p, q) in self.type_pairs().collect::<Vec<_>>() {
            let atom_ids: Vec<usize> = self.atoms_of(p, q).to_vec();
            let k = atom_ids.len();
            let label_count = 1u128 << k.min(127);
            let mut zero_labels = 0usize;
            let mut positive_labels = 0usize;
            if k > 20 {
                findings.push(crate::report::Finding::new(
                    "too-many-atoms",
                    format!("({},{}) has {k} atoms; exhaustive check skipped", self.types[p].id, self.types[q].id),
                ));
            } else {
                let top = self.top(p, q);
                for mask in 0u32..(1u32 << k) {
                    let u = self.label(
                        p,
                        q,
                        atom_ids
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &a)| a),
                    );
                    let comp = self.complement(&u);
                    if !self.meet(&u, &comp).atoms.is_empty() {
                        findings.push(crate::report::Finding::new(
                            "complement-meet",
                            format!("u∧ū nonempty for a ({},{}) label", self.types[p].id, self.types[q].id),
                        ));
                    }
                    if self.join(&u, &comp) != top {
                        findings.push(crate::report::Finding::new(
                            "complement-join",
                            format!("u∨ū not maximal for a ({},{}) label", self.types[p].id, self.types[q].id),
                        ));
                    }
                    match self.classify(&u) {
                        LabelClass::Bottom => {}
                        LabelClass::Zero => zero_labels += 1,
                        LabelClass::Positive => positive_labels += 1,
                    }
                }
                // family size: bottom + classified labels = 2^k
                if 1 + zero_labels as u128 + positive_labels as u128 != label_count {
                    findings.push(crate::report::Finding::new(
                        "finiteness",
                        format!("({},{}) family size mismatch", self.types[p].id, self.types[q].id),
                    ));
                }
            }
            if let Some((table, orbits)) = realization {
                let covered: usize = atom_ids.iter().map(|&a| table.atoms[a].pairs.len()).sum();
                let expected = orbits.blocks[p].elements.len() * orbits.blocks[q].elements.len();
                if covered != expected {
                    findings.push(crate::report::Finding::new(
                        "top-not-isolating",
                        format!(
                            "top of ({},{}) covers {covered} pairs, block product has {expected}",
                            self.types[p].id, self.types[q].id
                        ),
                    ));
                }
            }
            pairs.push(PairSummary {
                src: self.types[p].id.clone(),
                dst: self.types[q].id.clone(),
                atom_count: k,
                label_count,
                zero_labels,
                positive_labels,
            });
        }
        PropositionReport { findings, pairs }
    }

    /// Closure of the (p,p) Boolean algebra of labels under composition.
    /// Every composite is again a union of atoms, so the closure stays within
    /// the 2^atoms family; returned sorted for reproducibility.
    pub fn monoid_closure(&self, p: usize) -> Result<Vec<Label>> {
        let atom_ids: Vec<usize> = self.atoms_of(p, p).to_vec();
        let k = atom_ids.len();
        if k > 20 {
            return Err(Error::Internal(format!("{k} atoms on (p,p): closure too large")));
        }
        let mut closure: BTreeSet<Label> = BTreeSet::new();
        for mask in 0u32..(1u32 << k) {
            closure.insert(self.label(
                p,
                p,
                atom_ids
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &a)| a),
            ));
        }
        loop {
            let snapshot: Vec<Label> = closure.iter().cloned().collect();
            let before = closure.len();
            for u in &snapshot {
                for w in &snapshot {
                    closure.insert(self.compose(u, w)?);
                }
            }
            if closure.len() == before {
                break;
            }
        }
        Ok(closure.into_iter().collect())
    }
}

/// A bijection witnessing that two algebras have the same label structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraIso {
    /// type index in `a` -> type index in `b`
    pub type_map: Vec<usize>,
    /// atom index in `a` -> atom index in `b`
    pub atom_map: Vec<usize>,
}

/// Search for a bijection of types and atoms preserving src/dst, converse,
/// equality flags, and the composition tables. Sizes are not compared: the
/// Theorem's equality of label structures is about the labels, not the
/// carriers.
pub fn algebra_isomorphic(a: &LabelAlgebra, b: &LabelAlgebra) -> Option<AlgebraIso> {
    if a.types.len() != b.types.len() || a.atoms.len() != b.atoms.len() {
        return None;
    }
    let nt = a.types.len();

    // per-type signature: sorted atom counts over all pairs involving it
    let signature = |alg: &LabelAlgebra, t: usize| -> Vec<(bool, usize, usize)> {
        let mut sig = Vec::new();
        for u in 0..alg.types.len() {
            sig.push((true, alg.atoms_of(t, u).len(), alg.atoms_of(u, t).len()));
        }
        sig.sort();
        sig
    };
    let sig_a: Vec<_> = (0..nt).map(|t| signature(a, t)).collect();
    let sig_b: Vec<_> = (0..nt).map(|t| signature(b, t)).collect();

    let mut type_map = vec![usize::MAX; nt];
    let mut used_types = vec![false; nt];
    try_types(a, b, &sig_a, &sig_b, 0, &mut type_map, &mut used_types)
}

fn try_types(
    a: &LabelAlgebra,
    b: &LabelAlgebra,
    sig_a: &[Vec<(bool, usize, usize)>],
    sig_b: &[Vec<(bool, usize, usize)>],
    depth: usize,
    type_map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<AlgebraIso> {
    let nt = a.types().len();
    if depth == nt {
        // atom counts per mapped pair must agree before matching atoms
        for p in 0..nt {
            for q in 0..nt {
                if a.atoms_of(p, q).len() != b.atoms_of(type_map[p], type_map[q]).len() {
                    return None;
                }
            }
        }
        let mut atom_map = vec![usize::MAX; a.atoms().len()];
        let mut used_atoms = vec![false; b.atoms().len()];
        return try_atoms(a, b, type_map, 0, &mut atom_map, &mut used_atoms);
    }
    for image in 0..nt {
        if used[image] || sig_a[depth] != sig_b[image] {
            continue;
        }
        type_map[depth] = image;
        used[image] = true;
        if let Some(iso) = try_types(a, b, sig_a, sig_b, depth + 1, type_map, used) {
            return Some(iso);
        }
        type_map[depth] = usize::MAX;
        used[image] = false;
    }
    None
}

fn try_atoms(
    a: &LabelAlgebra,
    b: &LabelAlgebra,
    type_map: &[usize],
    depth: usize,
    atom_map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<AlgebraIso> {
    if depth == a.atoms().len() {
        // full comp table check
        for (s, t, res) in a.comp_entries() {
            let image: BTreeSet<usize> = res.iter().map(|&u| atom_map[u]).collect();
            match b.comp(atom_map[s], atom_map[t]) {
                Some(r) if *r == image => {}
                _ => return None,
            }
        }
        return Some(AlgebraIso {
            type_map: type_map.to_vec(),
            atom_map: atom_map.clone(),
        });
    }
    let info = &a.atoms()[depth];
    let (src_b, dst_b) = (type_map[info.src], type_map[info.dst]);
    for &image in b.atoms_of(src_b, dst_b) {
        if used[image] {
            continue;
        }
        let image_info = &b.atoms()[image];
        if image_info.is_equality != info.is_equality {
            continue;
        }
        // converse consistency with earlier assignments
        if info.converse < depth && atom_map[info.converse] != image_info.converse {
            continue;
        }
        if info.converse == depth && image_info.converse != image {
            continue;
        }
        atom_map[depth] = image;
        used[image] = true;
        if let Some(iso) = try_atoms(a, b, type_map, depth + 1, atom_map, used) {
            return Some(iso);
        }
        atom_map[depth] = usize::MAX;
        used[image] = false;
    }
    None
}

/// Everything the extraction pipeline produces for one structure.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub group: PermGroup,
    pub orbits: OrbitPartition,
    pub table: AtomTable,
    pub algebra: LabelAlgebra,
}

/// Full pipeline: automorphisms, point orbits, pair atoms, then the atom
/// composition table by brute-force relational composition.
pub fn extract_algebra(m: &FiniteStructure) -> Result<Extraction> {
    if m.universe_size() == 0 {
        return Err(Error::EmptyUniverse);
    }
    let group = find_automorphisms(m);
    let orbits = crate::atoms::point_orbits(&group, m)?;
    let table = pair_atoms(&group, &orbits)?;

    let types: Vec<AlgType> = orbits
        .blocks
        .iter()
        .map(|b| AlgType {
            id: b.id.clone(),
            size: TypeSize::Finite(b.elements.len()),
        })
        .collect();
    let atoms: Vec<AtomInfo> = table
        .atoms
        .iter()
        .map(|a| AtomInfo {
            doc_id: a.id,
            src: a.src,
            dst: a.dst,
            converse: a.converse,
            is_equality: a.is_equality,
        })
        .collect();

    let mut comp: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
    for s in &table.atoms {
        for t in &table.atoms {
            if s.dst != t.src {
                continue;
            }
            let composed = s.pairs.compose(&t.pairs)?;
            let mut result = BTreeSet::new();
            let mut covered = 0usize;
            for &u in table.atoms_of(s.src, t.dst) {
                let upairs = &table.atoms[u].pairs;
                if upairs.is_subset(&composed) {
                    result.insert(u);
                    covered += upairs.len();
                } else if upairs.intersects(&composed) {
                    return Err(Error::Internal(format!(
                        "atom {u} partially intersects compose({},{}): orbits are wrong",
                        s.id, t.id
                    )));
                }
            }
            if covered != composed.len() {
                return Err(Error::Internal(format!(
                    "compose({},{}) not covered by atoms",
                    s.id, t.id
                )));
            }
            comp.insert((s.id, t.id), result);
        }
    }

    Ok(Extraction {
        algebra: LabelAlgebra::new(types, atoms, comp),
        group,
        orbits,
        table,
    })
}
