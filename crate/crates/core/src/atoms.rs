//! Orbits on points (the realized 1-types) and on ordered pairs (the atoms).
//!
//! Declared colors need not be orbits: a color may split into several types.
//! The partition records the split so callers can report it; nothing is
//! guessed on the user's behalf.

use crate::error::{Error, Result};
use crate::perm::PermGroup;
use crate::structure::{FiniteStructure, Relation};
use std::collections::{BTreeMap, BTreeSet};

/// One automorphism orbit on points, tagged with the color it lies in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeBlock {
    /// Stable id: the color name, suffixed with `.k` when the color splits.
    pub id: String,
    pub color: String,
    pub elements: BTreeSet<usize>,
}

/// The orbits of Aut(m) on the universe, each inside a single color class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub blocks: Vec<TypeBlock>,
}

impl OrbitPartition {
    /// Index of the block containing `element`.
    pub fn type_of(&self, element: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.elements.contains(&element))
            .expect("blocks cover the universe")
    }

    pub fn block_by_id(&self, id: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.id == id)
    }

    /// Colors that split into more than one orbit.
    pub fn split_colors(&self) -> Vec<String> {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for b in &self.blocks {
            *counts.entry(b.color.as_str()).or_default() += 1;
        }
        counts
            .into_iter()
            .filter(|&(_, c)| c > 1)
            .map(|(name, _)| name.to_string())
            .collect()
    }
}

/// Orbits of `g` on the universe of `m`, ordered by minimal element.
pub fn point_orbits(g: &PermGroup, m: &FiniteStructure) -> Result<OrbitPartition> {
    if g.degree() != m.universe_size() {
        return Err(Error::Internal("group degree != universe size".into()));
    }
    let raw = g.point_orbits();
    // count orbits per color first so ids are stable
    let mut per_color: BTreeMap<String, usize> = BTreeMap::new();
    let mut colored: Vec<(String, BTreeSet<usize>)> = Vec::new();
    for block in raw {
        let min = *block.iter().next().expect("orbit nonempty");
        let color = m
            .color_of(min)
            .ok_or_else(|| Error::Internal(format!("element {min} has no color")))?
            .to_string();
        for &e in &block {
            if m.color_of(e) != Some(color.as_str()) {
                return Err(Error::Internal(format!(
                    "orbit of {min} crosses colors at {e}"
                )));
            }
        }
        *per_color.entry(color.clone()).or_default() += 1;
        colored.push((color, block));
    }
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let blocks = colored
        .into_iter()
        .map(|(color, elements)| {
            let k = seen.entry(color.clone()).or_default();
            let id = if per_color[&color] > 1 {
                format!("{color}.{k}")
            } else {
                color.clone()
            };
            *k += 1;
            TypeBlock { id, color, elements }
        })
        .collect();
    Ok(OrbitPartition { blocks })
}

/// One orbit of the automorphism group on ordered pairs.
#[derive(Debug, Clone)]
pub struct Atom {
    pub id: usize,
    /// Block index of the first coordinate.
    pub src: usize,
    /// Block index of the second coordinate.
    pub dst: usize,
    pub pairs: Relation,
    pub converse: usize,
    pub is_equality: bool,
}

/// The pair-orbit atoms of a structure, grouped by (src, dst) type pair.
/// Together with converse and equality data this is a coherent configuration.
#[derive(Debug, Clone)]
pub struct AtomTable {
    pub atoms: Vec<Atom>,
    by_pair: BTreeMap<(usize, usize), Vec<usize>>,
}

impl AtomTable {
    pub fn atoms_of(&self, src: usize, dst: usize) -> &[usize] {
        self.by_pair.get(&(src, dst)).map_or(&[], |v| v)
    }

    pub fn type_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.by_pair.keys().copied()
    }

    /// Atom covering the ordered pair (a, b), if any.
    pub fn atom_of_pair(&self, a: usize, b: usize) -> Option<usize> {
        self.atoms.iter().position(|s| s.pairs.contains(a, b))
    }

    /// The equality atom of type block `t`.
    pub fn equality_atom(&self, t: usize) -> Option<usize> {
        self.atoms_of(t, t)
            .iter()
            .copied()
            .find(|&s| self.atoms[s].is_equality)
    }
}

/// Atoms of the label algebra: orbits of `g` on ordered pairs, grouped by the
/// types of the coordinates, sorted by (src, dst, minimal pair).
pub fn pair_atoms(g: &PermGroup, t: &OrbitPartition) -> Result<AtomTable> {
    let n = g.degree();
    let orbits = g.pair_orbits();
    let mut keyed: Vec<((usize, usize, (usize, usize)), BTreeSet<(usize, usize)>)> = Vec::new();
    for orbit in orbits {
        let &(a, b) = orbit.iter().next().expect("orbit nonempty");
        let src = t.type_of(a);
        let dst = t.type_of(b);
        for &(x, y) in &orbit {
            if t.type_of(x) != src || t.type_of(y) != dst {
                return Err(Error::Internal(format!(
                    "pair orbit of ({a},{b}) crosses type pairs at ({x},{y})"
                )));
            }
        }
        keyed.push(((src, dst, (a, b)), orbit));
    }
    keyed.sort_by(|x, y| x.0.cmp(&y.0));

    let mut atoms: Vec<Atom> = Vec::with_capacity(keyed.len());
    let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (id, ((src, dst, _), pairs)) in keyed.into_iter().enumerate() {
        let is_equality = pairs.iter().all(|&(a, b)| a == b);
        let rel = Relation::new(n, pairs)?;
        by_pair.entry((src, dst)).or_default().push(id);
        atoms.push(Atom {
            id,
            src,
            dst,
            pairs: rel,
            converse: usize::MAX,
            is_equality,
        });
    }
    for id in 0..atoms.len() {
        let conv = atoms[id].pairs.converse();
        let mate = atoms
            .iter()
            .position(|s| s.pairs == conv)
            .ok_or_else(|| Error::Internal(format!("atom {id} has no converse atom")))?;
        atoms[id].converse = mate;
    }
    let table = AtomTable { atoms, by_pair };
    check_table(&table, g, t)?;
    Ok(table)
}

fn check_table(table: &AtomTable, g: &PermGroup, t: &OrbitPartition) -> Result<()> {
    let n = g.degree();
    let mut covered = 0usize;
    for atom in &table.atoms {
        if !g.is_invariant(&atom.pairs) {
            return Err(Error::Internal(format!("atom {} not invariant", atom.id)));
        }
        if table.atoms[atom.converse].converse != atom.id {
            return Err(Error::Internal(format!(
                "converse not an involution at atom {}",
                atom.id
            )));
        }
        if atom.is_equality {
            let block = &t.blocks[atom.src].elements;
            let diag = Relation::new(n, block.iter().map(|&e| (e, e)))?;
            if atom.pairs != diag {
                return Err(Error::Internal(format!(
                    "equality atom {} is not the diagonal of its block",
                    atom.id
                )));
            }
        }
        covered += atom.pairs.len();
    }
    if covered != n * n {
        return Err(Error::Internal(format!(
            "atoms cover {covered} pairs, expected {}",
            n * n
        )));
    }
    Ok(())
}
