//! Intersection graph over subset indices, alive-set views, connected
//! components and the pivot rules used by the branching solvers.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {0} is not alive")]
    NotAlive(usize),
    #[error("no alive nodes")]
    Empty,
    #[error("component max degree is {found}, expected {expected}")]
    DegreeBound { found: usize, expected: &'static str },
    #[error("component has {0} nodes, need at least 2")]
    TooSmall(usize),
}

/// One node per subset; an edge whenever two subsets share an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    adjacency: Vec<Vec<usize>>,
}

impl IntersectionGraph {
    /// Builds the graph from an element -> subsets inverted index.
    pub fn build(inst: &Instance) -> Self {
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); inst.n()];
        for (i, set) in inst.subsets().iter().enumerate() {
            for &e in set {
                holders[e].push(i);
            }
        }
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); inst.m()];
        for group in &holders {
            for (a, &u) in group.iter().enumerate() {
                for &v in &group[a + 1..] {
                    adjacency[u].push(v);
                    adjacency[v].push(u);
                }
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
            adj.dedup();
        }
        Self { adjacency }
    }

    /// Builds a graph directly from an edge list. Self-loops and duplicate
    /// edges are dropped.
    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); m];
        for &(u, v) in edges {
            if u != v {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
            adj.dedup();
        }
        Self { adjacency }
    }

    /// Node count.
    pub fn m(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adjacency[x]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    /// Degree of `x` counting alive neighbors only.
    pub fn degree(&self, sub: &SubProblem, x: usize) -> usize {
        self.adjacency[x].iter().filter(|&&v| sub.contains(v)).count()
    }

    /// Alive neighbors of `x`.
    pub fn alive_neighbors<'a>(&'a self, sub: &'a SubProblem, x: usize) -> impl Iterator<Item = usize> + 'a {
        self.adjacency[x].iter().copied().filter(move |&v| sub.contains(v))
    }

    /// Connected components of the subgraph induced by the alive set, each
    /// sorted ascending, ordered by smallest member.
    pub fn components(&self, sub: &SubProblem) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.m());
        let mut queue = VecDeque::new();
        let mut out = Vec::new();
        for start in sub.iter() {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for v in self.alive_neighbors(sub, u) {
                    if !seen.contains(v) {
                        seen.insert(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `x` together with its alive neighbors, ascending.
    pub fn neighbor_closure(&self, sub: &SubProblem, x: usize) -> Result<Vec<usize>, GraphError> {
        if !sub.contains(x) {
            return Err(GraphError::NotAlive(x));
        }
        let mut closure: Vec<usize> = self.alive_neighbors(sub, x).collect();
        let pos = closure.partition_point(|&v| v < x);
        closure.insert(pos, x);
        Ok(closure)
    }

    /// Smallest alive index achieving the maximum alive degree.
    pub fn max_degree_node(&self, sub: &SubProblem) -> Result<(usize, usize), GraphError> {
        self.max_degree_in(sub, sub.iter())
    }

    fn max_degree_in(
        &self,
        sub: &SubProblem,
        nodes: impl IntoIterator<Item = usize>,
    ) -> Result<(usize, usize), GraphError> {
        let mut best: Option<(usize, usize)> = None;
        for x in nodes {
            let d = self.degree(sub, x);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((x, d));
            }
        }
        best.ok_or(GraphError::Empty)
    }

    /// Pivot for a component whose maximum alive degree is exactly 3.
    ///
    /// Among degree-3 nodes, picks the one adjacent to the lowest-degree
    /// neighbor, breaking ties by smallest index. When some degree-3 node
    /// touches a node of the component's minimum degree this is the first
    /// such node; when every node has degree 3 it is the smallest index.
    pub fn select_pivot_deg3(&self, sub: &SubProblem, component: &[usize]) -> Result<usize, GraphError> {
        self.check_alive(sub, component)?;
        let degrees: Vec<usize> = component.iter().map(|&x| self.degree(sub, x)).collect();
        let max = degrees.iter().copied().max().ok_or(GraphError::Empty)?;
        if max != 3 {
            return Err(GraphError::DegreeBound {
                found: max,
                expected: "exactly 3",
            });
        }
        let mut best: Option<(usize, usize)> = None;
        for (&x, &d) in component.iter().zip(&degrees) {
            if d != 3 {
                continue;
            }
            let lowest = self
                .alive_neighbors(sub, x)
                .map(|v| self.degree(sub, v))
                .min()
                .unwrap_or(usize::MAX);
            if best.is_none_or(|(bl, bx)| (lowest, x) < (bl, bx)) {
                best = Some((lowest, x));
            }
        }
        Ok(best.expect("a degree-3 node exists").1)
    }

    /// Pivot for a component that is a simple path or ring: the lower
    /// median of a path walked from its smaller endpoint, or the smallest
    /// index of a ring.
    pub fn select_pivot_deg2(&self, sub: &SubProblem, component: &[usize]) -> Result<usize, GraphError> {
        self.check_alive(sub, component)?;
        if component.len() < 2 {
            return Err(GraphError::TooSmall(component.len()));
        }
        let mut endpoint = None;
        for &x in component {
            match self.degree(sub, x) {
                0 => return Err(GraphError::TooSmall(1)),
                1 => {
                    if endpoint.is_none() {
                        endpoint = Some(x);
                    }
                }
                2 => {}
                d => {
                    return Err(GraphError::DegreeBound {
                        found: d,
                        expected: "at most 2",
                    })
                }
            }
        }
        let Some(start) = endpoint else {
            return Ok(*component.iter().min().expect("nonempty"));
        };
        let target = (component.len() - 1) / 2;
        let (mut prev, mut cur) = (usize::MAX, start);
        for _ in 0..target {
            let next = self
                .alive_neighbors(sub, cur)
                .find(|&v| v != prev)
                .expect("path continues up to its midpoint");
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    fn check_alive(&self, sub: &SubProblem, nodes: &[usize]) -> Result<(), GraphError> {
        match nodes.iter().find(|&&x| !sub.contains(x)) {
            Some(&x) => Err(GraphError::NotAlive(x)),
            None => Ok(()),
        }
    }
}

/// The subset indices still in play during a recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubProblem {
    alive: FixedBitSet,
}

impl SubProblem {
    /// All of `0..m` alive.
    pub fn full(m: usize) -> Self {
        let mut alive = FixedBitSet::with_capacity(m);
        alive.insert_range(..);
        Self { alive }
    }

    /// Only `nodes` alive, out of a universe of `m` indices.
    pub fn from_nodes(m: usize, nodes: impl IntoIterator<Item = usize>) -> Self {
        let mut alive = FixedBitSet::with_capacity(m);
        alive.extend(nodes);
        Self { alive }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.alive.contains(x)
    }

    pub fn remove(&mut self, x: usize) {
        self.alive.set(x, false);
    }

    pub fn len(&self) -> usize {
        self.alive.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.alive.is_clear()
    }

    /// Alive indices, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}
