//! Maximum 3-set packing and its reduction to WMESC.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    #[error("triple {index} does not have 3 distinct labels")]
    NotATriple { index: usize },
    #[error("line {line}: expected 3 distinct labels")]
    BadLine { line: usize },
    #[error("packing instance is empty")]
    Empty,
}

/// A collection of 3-element sets over arbitrary string labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingInstance {
    triples: Vec<[String; 3]>,
}

impl PackingInstance {
    pub fn new<S: Into<String>>(triples: Vec<[S; 3]>) -> Result<Self, PackingError> {
        let triples: Vec<[String; 3]> = triples.into_iter().map(|t| t.map(Into::into)).collect();
        for (index, [a, b, c]) in triples.iter().enumerate() {
            if a == b || b == c || a == c {
                return Err(PackingError::NotATriple { index });
            }
        }
        Ok(Self { triples })
    }

    /// One triple per line, whitespace-separated labels. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, PackingError> {
        let mut triples = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let labels: Vec<&str> = line.split_whitespace().collect();
            match labels.as_slice() {
                [a, b, c] if a != b && b != c && a != c => triples.push([a.to_string(), b.to_string(), c.to_string()]),
                _ => return Err(PackingError::BadLine { line: i + 1 }),
            }
        }
        Ok(Self { triples })
    }

    pub fn triples(&self) -> &[[String; 3]] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }
}

/// Ground set = union of the triples (labels numbered in sorted order),
/// one unit-weight subset per triple in input order.
pub fn reduce_3set_packing(p: &PackingInstance) -> Result<Instance, PackingError> {
    if p.is_empty() {
        return Err(PackingError::Empty);
    }
    let mut ids: BTreeMap<&str, usize> = p.triples.iter().flatten().map(|l| (l.as_str(), 0)).collect();
    for (next, id) in ids.values_mut().enumerate() {
        *id = next;
    }
    let subsets = p
        .triples
        .iter()
        .map(|t| {
            let mut set: Vec<usize> = t.iter().map(|l| ids[l.as_str()]).collect();
            set.sort_unstable();
            set
        })
        .collect();
    Ok(Instance::unweighted(ids.len(), subsets).expect("relabelled triples are valid subsets"))
}
