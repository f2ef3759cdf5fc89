//! Automorphism groups of finite colored structures, their orbits on points,
//! and a full-enumeration oracle for cross-checking the backtracking search.

use crate::error::{Error, Result};
use crate::structure::{FiniteStructure, Relation};
use std::collections::{BTreeMap, BTreeSet};

/// A permutation of 0..n-1 in image form: `apply(i) = images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j >= n || seen[j] {
                return Err(Error::Internal(format!("not a permutation: {images:?}")));
            }
            seen[j] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// self ∘ other: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: (0..self.degree()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Perm { images }
    }

    /// Image of a relation under this permutation.
    pub fn apply_relation(&self, r: &Relation) -> Relation {
        let pairs: Vec<_> = r.pairs().map(|(a, b)| (self.apply(a), self.apply(b))).collect();
        Relation::new(r.universe_size(), pairs).expect("permuted pairs stay in range")
    }

    /// True iff this permutation maps every color class and relation of `m`
    /// onto itself.
    pub fn preserves(&self, m: &FiniteStructure) -> bool {
        for members in m.colors().values() {
            if !members.iter().all(|&e| members.contains(&self.apply(e))) {
                return false;
            }
        }
        for rel in m.relations().values() {
            if self.apply_relation(rel) != *rel {
                return false;
            }
        }
        true
    }
}

/// An automorphism group given by its full element list.
///
/// At desk scale the whole group fits in memory, so we keep every element;
/// `generators` is a reduced generating set and `order` is recomputed by
/// orbit-stabilizer chaining over the element list.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<Perm>,
    order: u64,
}

impl PermGroup {
    fn from_elements(degree: usize, mut elements: Vec<Perm>) -> PermGroup {
        elements.sort();
        elements.dedup();
        let generators = reduce_generators(degree, &elements);
        let order = order_by_orbit_stabilizer(degree, &elements);
        assert_eq!(order as usize, elements.len(), "orbit-stabilizer order mismatch");
        PermGroup {
            degree,
            elements,
            generators,
            order,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// True iff every generator maps `r` onto itself.
    pub fn is_invariant(&self, r: &Relation) -> bool {
        r.universe_size() == self.degree
            && self.generators.iter().all(|g| g.apply_relation(r) == *r)
    }

    /// Orbits on points, as sorted blocks in order of minimal element.
    pub fn point_orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.degree];
        let mut blocks = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut block = BTreeSet::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(e) = stack.pop() {
                block.insert(e);
                for g in &self.generators {
                    let img = g.apply(e);
                    if !seen[img] {
                        seen[img] = true;
                        stack.push(img);
                    }
                }
            }
            blocks.push(block);
        }
        blocks
    }

    /// Orbits on ordered pairs.
    pub fn pair_orbits(&self) -> Vec<BTreeSet<(usize, usize)>> {
        let n = self.degree;
        let mut seen = vec![false; n * n];
        let mut orbits = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if seen[a * n + b] {
                    continue;
                }
                let mut orbit = BTreeSet::new();
                let mut stack = vec![(a, b)];
                seen[a * n + b] = true;
                while let Some((x, y)) = stack.pop() {
                    orbit.insert((x, y));
                    for g in &self.generators {
                        let img = (g.apply(x), g.apply(y));
                        if !seen[img.0 * n + img.1] {
                            seen[img.0 * n + img.1] = true;
                            stack.push(img);
                        }
                    }
                }
                orbits.push(orbit);
            }
        }
        orbits
    }
}

/// Greedy reduction: keep an element as a generator only if it is not already
/// in the subgroup generated so far.
fn reduce_generators(degree: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut generators: Vec<Perm> = Vec::new();
    let mut generated: BTreeSet<Perm> = BTreeSet::new();
    generated.insert(Perm::identity(degree));
    for e in elements {
        if generated.contains(e) {
            continue;
        }
        generators.push(e.clone());
        // closure under the enlarged generating set
        let mut frontier: Vec<Perm> = generated.iter().cloned().collect();
        while let Some(p) = frontier.pop() {
            for g in &generators {
                let q = g.compose(&p);
                if generated.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
    }
    if generators.is_empty() {
        generators.push(Perm::identity(degree));
    }
    generators
}

/// |G| = |orbit(b)| * |Stab_G(b)|, chained down to the trivial group.
fn order_by_orbit_stabilizer(degree: usize, elements: &[Perm]) -> u64 {
    fn go(degree: usize, elements: Vec<Perm>, point: usize) -> u64 {
        if point >= degree || elements.len() == 1 {
            return elements.len() as u64;
        }
        let orbit: BTreeSet<usize> = elements.iter().map(|p| p.apply(point)).collect();
        let stabilizer: Vec<Perm> = elements
            .into_iter()
            .filter(|p| p.apply(point) == point)
            .collect();
        orbit.len() as u64 * go(degree, stabilizer, point + 1)
    }
    go(degree, elements.to_vec(), 0)
}

/// Iterated refinement of the color partition by in/out degrees into cells,
/// per relation. Returns a cell id per element; automorphisms can only map
/// elements within a cell.
fn refine_cells(m: &FiniteStructure) -> Vec<usize> {
    let n = m.universe_size();
    let mut cell: Vec<usize> = vec![0; n];
    // initial cells: colors, in sorted name order
    for (idx, (_, members)) in m.colors().iter().enumerate() {
        for &e in members {
            cell[e] = idx;
        }
    }
    loop {
        let mut signature: Vec<(usize, Vec<(usize, usize)>)> = Vec::with_capacity(n);
        for e in 0..n {
            let mut sig = Vec::new();
            for rel in m.relations().values() {
                let mut out_counts: BTreeMap<usize, usize> = BTreeMap::new();
                let mut in_counts: BTreeMap<usize, usize> = BTreeMap::new();
                for (a, b) in rel.pairs() {
                    if a == e {
                        *out_counts.entry(cell[b]).or_default() += 1;
                    }
                    if b == e {
                        *in_counts.entry(cell[a]).or_default() += 1;
                    }
                }
                sig.extend(out_counts);
                sig.push((usize::MAX, usize::MAX)); // separator
                sig.extend(in_counts);
                sig.push((usize::MAX, usize::MAX));
            }
            signature.push((cell[e], sig));
        }
        let mut distinct: Vec<&(usize, Vec<(usize, usize)>)> = signature.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signature
            .iter()
            .map(|s| distinct.binary_search(&s).unwrap())
            .collect();
        if next == cell {
            return cell;
        }
        cell = next;
    }
}

/// Exact automorphism group by backtracking over a partition-refinement tree.
pub fn find_automorphisms(m: &FiniteStructure) -> PermGroup {
    let n = m.universe_size();
    if n == 0 {
        return PermGroup::from_elements(0, vec![Perm::identity(0)]);
    }
    let cell = refine_cells(m);
    let relations: Vec<&Relation> = m.relations().values().collect();
    let mut found: Vec<Perm> = Vec::new();
    let mut images: Vec<usize> = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(
        relations: &[&Relation],
        images: &[usize],
        depth: usize,
        candidate: usize,
    ) -> bool {
        for rel in relations {
            if rel.contains(depth, depth) != rel.contains(candidate, candidate) {
                return false;
            }
            for (k, &mk) in images.iter().enumerate().take(depth) {
                if rel.contains(k, depth) != rel.contains(mk, candidate) {
                    return false;
                }
                if rel.contains(depth, k) != rel.contains(candidate, mk) {
                    return false;
                }
            }
        }
        true
    }

    fn search(
        n: usize,
        depth: usize,
        cell: &[usize],
        relations: &[&Relation],
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        found: &mut Vec<Perm>,
    ) {
        if depth == n {
            found.push(Perm::from_images(images.clone()).unwrap());
            return;
        }
        for candidate in 0..n {
            if used[candidate] || cell[candidate] != cell[depth] {
                continue;
            }
            if !consistent(relations, images, depth, candidate) {
                continue;
            }
            images[depth] = candidate;
            used[candidate] = true;
            search(n, depth + 1, cell, relations, images, used, found);
            images[depth] = usize::MAX;
            used[candidate] = false;
        }
    }

    search(n, 0, &cell, &relations, &mut images, &mut used, &mut found);
    PermGroup::from_elements(n, found)
}

/// Brute-force oracle: filter all n! permutations. Only sensible for n <= 8.
pub fn enumerate_automorphisms(m: &FiniteStructure) -> Vec<Perm> {
    let n = m.universe_size();
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    permute(&mut images, 0, &mut |images| {
        let p = Perm {
            images: images.to_vec(),
        };
        if p.preserves(m) {
            out.push(p);
        }
    });
    out.sort();
    out
}

fn permute(v: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, visit);
        v.swap(k, i);
    }
}
