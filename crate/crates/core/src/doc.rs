//! The algebra document: the on-disk JSON form of a [`LabelAlgebra`]. The
//! same document doubles as the synthesis specification input.

use crate::algebra::{AlgType, AtomInfo, Extraction, LabelAlgebra, TypeSize};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum SizeDoc {
    Int(usize),
    Word(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TypeDoc {
    id: String,
    size: SizeDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomDoc {
    id: usize,
    src: String,
    dst: String,
    converse: usize,
    is_equality: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CompDoc {
    s: usize,
    t: usize,
    result: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    types: Vec<TypeDoc>,
    atoms: Vec<AtomDoc>,
    comp: Vec<CompDoc>,
}

/// Parse an algebra document. Resolution failures (unknown types, dangling
/// atom ids, duplicates) are input errors; deeper law violations are left to
/// `LabelAlgebra::validate` so they can be reported as findings.
pub fn parse_algebra(text: &str) -> Result<LabelAlgebra> {
    let doc: AlgebraDoc =
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;

    let mut types = Vec::new();
    let mut type_index: BTreeMap<String, usize> = BTreeMap::new();
    for t in doc.types {
        if type_index.contains_key(&t.id) {
            return Err(Error::InvalidAlgebra(format!("duplicate type id {:?}", t.id)));
        }
        let size = match t.size {
            SizeDoc::Int(k) => TypeSize::Finite(k),
            SizeDoc::Word(w) if w == "inf" => TypeSize::Infinite,
            SizeDoc::Word(w) => {
                return Err(Error::InvalidAlgebra(format!(
                    "type {:?} has size {w:?}, expected an integer or \"inf\"",
                    t.id
                )))
            }
        };
        type_index.insert(t.id.clone(), types.len());
        types.push(AlgType { id: t.id, size });
    }

    let mut atom_index: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, a) in doc.atoms.iter().enumerate() {
        if atom_index.insert(a.id, i).is_some() {
            return Err(Error::InvalidAlgebra(format!("duplicate atom id {}", a.id)));
        }
    }
    let mut atoms = Vec::new();
    for a in &doc.atoms {
        let src = *type_index
            .get(&a.src)
            .ok_or_else(|| Error::UnknownType(a.src.clone()))?;
        let dst = *type_index
            .get(&a.dst)
            .ok_or_else(|| Error::UnknownType(a.dst.clone()))?;
        let converse = *atom_index
            .get(&a.converse)
            .ok_or(Error::UnknownAtom(a.converse))?;
        atoms.push(AtomInfo {
            doc_id: a.id,
            src,
            dst,
            converse,
            is_equality: a.is_equality,
        });
    }

    let mut comp: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
    for entry in doc.comp {
        let s = *atom_index.get(&entry.s).ok_or(Error::UnknownAtom(entry.s))?;
        let t = *atom_index.get(&entry.t).ok_or(Error::UnknownAtom(entry.t))?;
        let mut result = BTreeSet::new();
        for u in entry.result {
            result.insert(*atom_index.get(&u).ok_or(Error::UnknownAtom(u))?);
        }
        if comp.insert((s, t), result).is_some() {
            return Err(Error::InvalidAlgebra(format!(
                "duplicate comp entry for ({}, {})",
                entry.s, entry.t
            )));
        }
    }

    Ok(LabelAlgebra::new(types, atoms, comp))
}

/// Serialize to the document format; deterministic byte-for-byte.
pub fn algebra_to_json(alg: &LabelAlgebra) -> String {
    let doc = AlgebraDoc {
        types: alg
            .types()
            .iter()
            .map(|t| TypeDoc {
                id: t.id.clone(),
                size: match t.size {
                    TypeSize::Finite(k) => SizeDoc::Int(k),
                    TypeSize::Infinite => SizeDoc::Word("inf".to_string()),
                },
            })
            .collect(),
        atoms: alg
            .atoms()
            .iter()
            .map(|a| AtomDoc {
                id: a.doc_id,
                src: alg.types()[a.src].id.clone(),
                dst: alg.types()[a.dst].id.clone(),
                converse: alg.atoms()[a.converse].doc_id,
                is_equality: a.is_equality,
            })
            .collect(),
        comp: alg
            .comp_entries()
            .map(|(s, t, result)| CompDoc {
                s: alg.atoms()[s].doc_id,
                t: alg.atoms()[t].doc_id,
                result: result.iter().map(|&u| alg.atoms()[u].doc_id).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("algebra document serializes")
}

const EDGE_STYLES: &[&str] = &["solid", "dashed", "dotted", "bold"];
const EDGE_COLORS: &[&str] = &["black", "blue", "red", "darkgreen", "orange", "purple"];

/// One digraph per type pair; atoms drawn as edge styles, equality omitted.
pub fn extraction_to_dot(ex: &Extraction) -> String {
    let alg = &ex.algebra;
    let mut out = String::new();
    for (p, q) in alg.type_pairs() {
        let pname = &alg.types()[p].id;
        let qname = &alg.types()[q].id;
        out.push_str(&format!("digraph \"{pname}__{qname}\" {{\n"));
        for &e in &ex.orbits.blocks[p].elements {
            out.push_str(&format!("  n{e} [label=\"{e}:{pname}\"];\n"));
        }
        if p != q {
            for &e in &ex.orbits.blocks[q].elements {
                out.push_str(&format!("  n{e} [label=\"{e}:{qname}\"];\n"));
            }
        }
        for (style_idx, &atom_id) in ex.table.atoms_of(p, q).iter().enumerate() {
            let atom = &ex.table.atoms[atom_id];
            if atom.is_equality {
                continue;
            }
            let style = EDGE_STYLES[style_idx % EDGE_STYLES.len()];
            let color = EDGE_COLORS[style_idx % EDGE_COLORS.len()];
            for (a, b) in atom.pairs.pairs() {
                out.push_str(&format!(
                    "  n{a} -> n{b} [style={style}, color={color}, label=\"{}\"];\n",
                    atom.id
                ));
            }
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::extract_algebra;
    use crate::structure::fixtures;

    #[test]
    fn algebra_document_roundtrip() {
        let ex = extract_algebra(&fixtures::c5()).unwrap();
        let text = algebra_to_json(&ex.algebra);
        let loaded = parse_algebra(&text).unwrap();
        assert_eq!(loaded.types(), ex.algebra.types());
        assert_eq!(loaded.atoms(), ex.algebra.atoms());
        assert_eq!(text, algebra_to_json(&loaded));
    }

    #[test]
    fn missing_atoms_key_is_malformed() {
        let err = parse_algebra(r#"{"types":[],"comp":[]}"#).unwrap_err();
        assert!(matches!(err, Error::Malformed(_)));
    }

    #[test]
    fn unknown_type_rejected() {
        let err = parse_algebra(
            r#"{"types":[{"id":"p","size":1}],
                "atoms":[{"id":0,"src":"p","dst":"nope","converse":0,"is_equality":true}],
                "comp":[]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnknownType(_)));
    }

    #[test]
    fn infinite_size_parses() {
        let alg = parse_algebra(
            r#"{"types":[{"id":"p","size":"inf"}],
                "atoms":[{"id":0,"src":"p","dst":"p","converse":0,"is_equality":true},
                         {"id":1,"src":"p","dst":"p","converse":1,"is_equality":false}],
                "comp":[{"s":0,"t":0,"result":[0]},{"s":0,"t":1,"result":[1]},
                        {"s":1,"t":0,"result":[1]},{"s":1,"t":1,"result":[0,1]}]}"#,
        )
        .unwrap();
        assert_eq!(alg.types()[0].size, TypeSize::Infinite);
        assert!(alg.validate().is_ok());
    }

    #[test]
    fn dot_export_mentions_all_non_equality_atoms() {
        let ex = extract_algebra(&fixtures::directed_3cycle()).unwrap();
        let dot = extraction_to_dot(&ex);
        assert!(dot.contains("digraph"));
        assert!(dot.contains("->"));
    }
}
