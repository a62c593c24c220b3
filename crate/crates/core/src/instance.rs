//! Problem data model: instances, solutions, the WMESC v1 text format and
//! the lexicographic objective (maximize coverage, then minimize weight).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default absolute tolerance for weight comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Violation of an [`Instance`] invariant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("subset {subset} is empty")]
    EmptySubset { subset: usize },
    #[error("subset {subset}: element {element} out of range [0, {n})")]
    ElementOutOfRange { subset: usize, element: usize, n: usize },
    #[error("subset {subset}: elements not strictly increasing ({prev} then {next})")]
    NotIncreasing { subset: usize, prev: usize, next: usize },
    #[error("subset {subset}: negative weight {weight}")]
    NegativeWeight { subset: usize, weight: f64 },
    #[error("subset {subset}: non-finite weight")]
    NonFiniteWeight { subset: usize },
}

/// Parse failure for the WMESC v1 format, with the 1-based line it occurred on.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header, expected \"n m\"")]
    MalformedHeader,
    #[error("missing header")]
    MissingHeader,
    #[error("malformed subset line: {0}")]
    MalformedSubset(String),
    #[error("negative weight {0}")]
    NegativeWeight(f64),
    #[error("element {element} out of range [0, {n})")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("elements not strictly increasing ({prev} then {next})")]
    NotIncreasing { prev: usize, next: usize },
    #[error("empty subset")]
    EmptySubset,
    #[error("expected {expected} subset lines, found {found}")]
    WrongLineCount { expected: usize, found: usize },
}

/// Failure of [`evaluate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("subset index {index} out of range (m = {m})")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("chosen indices not strictly increasing ({prev} then {next})")]
    NotIncreasing { prev: usize, next: usize },
    #[error("subsets {first} and {second} share element {element}")]
    Overlap {
        first: usize,
        second: usize,
        element: usize,
    },
}

/// A weighted collection of subsets over the ground set `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    n: usize,
    subsets: Vec<Vec<usize>>,
    weights: Vec<f64>,
}

impl Instance {
    /// Builds a validated instance. Subsets must be nonempty and strictly
    /// increasing, weights finite and nonnegative.
    pub fn new(n: usize, subsets: Vec<Vec<usize>>, weights: Vec<f64>) -> Result<Self, InstanceError> {
        if subsets.len() != weights.len() {
            return Err(InstanceError::WeightCount {
                expected: subsets.len(),
                got: weights.len(),
            });
        }
        for (i, set) in subsets.iter().enumerate() {
            check_subset(set, n).map_err(|kind| match kind {
                ParseErrorKind::EmptySubset => InstanceError::EmptySubset { subset: i },
                ParseErrorKind::ElementOutOfRange { element, n } => {
                    InstanceError::ElementOutOfRange { subset: i, element, n }
                }
                ParseErrorKind::NotIncreasing { prev, next } => InstanceError::NotIncreasing { subset: i, prev, next },
                _ => unreachable!("check_subset reports only subset-shape errors"),
            })?;
        }
        let mut weights = weights;
        for (i, w) in weights.iter_mut().enumerate() {
            if !w.is_finite() {
                return Err(InstanceError::NonFiniteWeight { subset: i });
            }
            if *w < 0.0 {
                return Err(InstanceError::NegativeWeight { subset: i, weight: *w });
            }
            // canonicalize -0.0
            *w += 0.0;
        }
        Ok(Self { n, subsets, weights })
    }

    /// Same subsets with unit weights.
    pub fn unweighted(n: usize, subsets: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        let m = subsets.len();
        Self::new(n, subsets, vec![1.0; m])
    }

    pub fn empty() -> Self {
        Self {
            n: 0,
            subsets: Vec::new(),
            weights: Vec::new(),
        }
    }

    /// Ground-set size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of subsets.
    pub fn m(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn subset(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    /// Copy of this instance with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, InstanceError> {
        Self::new(
            self.n,
            self.subsets.clone(),
            self.weights.iter().map(|w| w * factor).collect(),
        )
    }

    /// Copy of this instance without subset `index`; later indices shift down.
    pub fn without_subset(&self, index: usize) -> Self {
        let mut subsets = self.subsets.clone();
        let mut weights = self.weights.clone();
        subsets.remove(index);
        weights.remove(index);
        Self {
            n: self.n,
            subsets,
            weights,
        }
    }

    /// Serializes to WMESC v1 text. Weights use the shortest decimal that
    /// parses back to the identical `f64`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.m())?;
        for (set, w) in self.subsets.iter().zip(&self.weights) {
            write!(f, "{} {}", w, set.len())?;
            for e in set {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Instance {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_instance(s)
    }
}

fn check_subset(set: &[usize], n: usize) -> Result<(), ParseErrorKind> {
    if set.is_empty() {
        return Err(ParseErrorKind::EmptySubset);
    }
    for pair in set.windows(2) {
        if pair[1] <= pair[0] {
            return Err(ParseErrorKind::NotIncreasing {
                prev: pair[0],
                next: pair[1],
            });
        }
    }
    // strictly increasing, so the last element is the largest
    let last = set[set.len() - 1];
    if last >= n {
        return Err(ParseErrorKind::ElementOutOfRange { element: last, n });
    }
    Ok(())
}

/// Parses WMESC v1 text.
///
/// Lines starting with `#` and blank lines are skipped. The first data line
/// is `n m`, followed by exactly `m` lines `w k e1 .. ek`.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError {
        line: text.lines().count().max(1),
        kind: ParseErrorKind::MissingHeader,
    })?;
    let err = |line, kind| ParseError { line, kind };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match fields.as_slice() {
        [n, m] => match (n.parse::<usize>(), m.parse::<usize>()) {
            (Ok(n), Ok(m)) => (n, m),
            _ => return Err(err(header_line, ParseErrorKind::MalformedHeader)),
        },
        _ => return Err(err(header_line, ParseErrorKind::MalformedHeader)),
    };

    let mut subsets = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line_no, line) in lines {
        if subsets.len() == m {
            return Err(err(
                line_no,
                ParseErrorKind::WrongLineCount {
                    expected: m,
                    found: m + 1,
                },
            ));
        }
        last_line = line_no;
        let (w, set) = parse_subset_line(line, n).map_err(|kind| err(line_no, kind))?;
        weights.push(w);
        subsets.push(set);
    }
    if subsets.len() != m {
        return Err(err(
            last_line,
            ParseErrorKind::WrongLineCount {
                expected: m,
                found: subsets.len(),
            },
        ));
    }
    Ok(Instance { n, subsets, weights })
}

fn parse_subset_line(line: &str, n: usize) -> Result<(f64, Vec<usize>), ParseErrorKind> {
    let mut tokens = line.split_whitespace();
    let malformed = |what: &str| ParseErrorKind::MalformedSubset(what.to_string());

    let w_tok = tokens.next().ok_or_else(|| malformed("missing weight"))?;
    let w: f64 = w_tok.parse().map_err(|_| malformed(&format!("bad weight {w_tok:?}")))?;
    if !w.is_finite() {
        return Err(malformed(&format!("non-finite weight {w_tok:?}")));
    }
    if w < 0.0 {
        return Err(ParseErrorKind::NegativeWeight(w));
    }

    let k_tok = tokens.next().ok_or_else(|| malformed("missing subset size"))?;
    let k: usize = k_tok
        .parse()
        .map_err(|_| malformed(&format!("bad subset size {k_tok:?}")))?;
    let set = tokens
        .map(|t| t.parse::<usize>().map_err(|_| malformed(&format!("bad element {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if set.len() != k {
        return Err(malformed(&format!("declared {k} elements, found {}", set.len())));
    }
    check_subset(&set, n)?;
    Ok((w + 0.0, set))
}

/// A selection of pairwise-disjoint subsets with its objective values.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub chosen: Vec<usize>,
    pub covered: usize,
    pub weight: f64,
}

impl Solution {
    pub fn empty() -> Self {
        Self {
            chosen: Vec::new(),
            covered: 0,
            weight: 0.0,
        }
    }
}

/// Checks `chosen` against `inst` and computes its exact coverage and weight.
pub fn evaluate(inst: &Instance, chosen: &[usize]) -> Result<Solution, EvalError> {
    let m = inst.m();
    for pair in chosen.windows(2) {
        if pair[1] <= pair[0] {
            return Err(EvalError::NotIncreasing {
                prev: pair[0],
                next: pair[1],
            });
        }
    }
    let mut owner: Vec<Option<usize>> = vec![None; inst.n()];
    let mut covered = 0;
    let mut weight = 0.0;
    for &i in chosen {
        if i >= m {
            return Err(EvalError::IndexOutOfRange { index: i, m });
        }
        for &e in inst.subset(i) {
            if let Some(first) = owner[e] {
                return Err(EvalError::Overlap {
                    first,
                    second: i,
                    element: e,
                });
            }
            owner[e] = Some(i);
            covered += 1;
        }
        weight += inst.weight(i);
    }
    Ok(Solution {
        chosen: chosen.to_vec(),
        covered,
        weight,
    })
}

/// Strict preference: `a` covers more, or covers the same and weighs less
/// than `b` by more than `tol`.
pub fn better(a: &Solution, b: &Solution, tol: f64) -> bool {
    a.covered > b.covered || (a.covered == b.covered && a.weight < b.weight - tol)
}
