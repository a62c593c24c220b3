//! Exact branch-and-bound search.
//!
//! Three levels cooperate on every connected component of the alive
//! intersection graph:
//!
//! * the main level branches on a maximum-degree node while some node has
//!   degree at least 4;
//! * the degree-3 level branches on a degree-3 node next to a low-degree
//!   node;
//! * the degree-2 level (paths and rings) branches on the path midpoint or
//!   any ring node, which keeps the search tree polynomial.
//!
//! A branch on `x` either takes `x` and drops its whole neighbor closure, or
//! drops `x` alone. The include branch is searched first and only a strictly
//! better exclude result replaces it.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{GraphError, IntersectionGraph, SubProblem};
use crate::instance::{better, evaluate, Instance, Solution, DEFAULT_TOL};

/// Stack kept free before growing onto the heap.
const RED_ZONE: usize = 128 * 1024;
const STACK_CHUNK: usize = 4 * 1024 * 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("time limit exceeded")]
    Timeout,
    #[error("internal error: {0}")]
    Internal(#[from] GraphError),
    #[error("instance violates the degree bound: max degree {found}, allowed {allowed}")]
    DegreeBound { found: usize, allowed: usize },
}

/// Search-tree instrumentation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolveStats {
    /// Number of branching steps.
    pub branch_nodes: u64,
    /// Returns that did no further branching: an empty alive set or a
    /// single isolated subset committed directly.
    pub leaves: u64,
    /// Deepest recursion level reached.
    pub max_depth: usize,
    pub elapsed: Duration,
}

impl SolveStats {
    pub fn elapsed_secs(&self) -> f64 {
        self.elapsed.as_secs_f64()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Level {
    Deg2,
    Deg3,
    Main,
}

impl Level {
    fn degree_cap(self) -> Option<usize> {
        match self {
            Level::Deg2 => Some(2),
            Level::Deg3 => Some(3),
            Level::Main => None,
        }
    }
}

/// The two sub-problems produced by branching on a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branches {
    /// `x` is taken: its neighbor closure is gone.
    pub include: SubProblem,
    /// `x` is dropped.
    pub exclude: SubProblem,
}

/// Splits `sub` on alive node `x`.
pub fn branch(graph: &IntersectionGraph, sub: &SubProblem, x: usize) -> Result<Branches, GraphError> {
    let closure = graph.neighbor_closure(sub, x)?;
    let mut include = sub.clone();
    for v in closure {
        include.remove(v);
    }
    let mut exclude = sub.clone();
    exclude.remove(x);
    Ok(Branches { include, exclude })
}

/// Solver configuration.
#[derive(Debug, Clone, Copy)]
pub struct Solver {
    tol: f64,
    timeout: Option<Duration>,
}

impl Default for Solver {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            timeout: None,
        }
    }
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Absolute tolerance for weight ties.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }

    /// Optimal solution: maximum coverage, then minimum weight.
    pub fn solve(&self, inst: &Instance) -> Result<(Solution, SolveStats), SolveError> {
        self.run(inst, Level::Main)
    }

    /// Entry point for instances whose intersection graph has max degree <= 3.
    pub fn solve_deg3(&self, inst: &Instance) -> Result<(Solution, SolveStats), SolveError> {
        self.run(inst, Level::Deg3)
    }

    /// Entry point for instances whose intersection graph has max degree <= 2.
    pub fn solve_deg2(&self, inst: &Instance) -> Result<(Solution, SolveStats), SolveError> {
        self.run(inst, Level::Deg2)
    }

    fn run(&self, inst: &Instance, level: Level) -> Result<(Solution, SolveStats), SolveError> {
        let start = Instant::now();
        let graph = IntersectionGraph::build(inst);
        let sub = SubProblem::full(inst.m());
        if let (Some(cap), Ok((_, found))) = (level.degree_cap(), graph.max_degree_node(&sub)) {
            if found > cap {
                return Err(SolveError::DegreeBound { found, allowed: cap });
            }
        }
        let mut search = Search {
            inst,
            graph: &graph,
            tol: self.tol,
            deadline: self.timeout.map(|t| start + t),
            stats: SolveStats::default(),
        };
        let partial = search.solve(sub, 0, level)?;
        let mut chosen = partial.chosen;
        chosen.sort_unstable();
        let solution = evaluate(inst, &chosen).expect("search only combines disjoint subsets");
        let mut stats = search.stats;
        stats.elapsed = start.elapsed();
        Ok((solution, stats))
    }
}

/// Solves `inst` with default settings.
pub fn solve(inst: &Instance) -> (Solution, SolveStats) {
    Solver::default()
        .solve(inst)
        .expect("unbounded solve has no failure modes")
}

struct Search<'a> {
    inst: &'a Instance,
    graph: &'a IntersectionGraph,
    tol: f64,
    deadline: Option<Instant>,
    stats: SolveStats,
}

impl Search<'_> {
    fn solve(&mut self, sub: SubProblem, depth: usize, level: Level) -> Result<Solution, SolveError> {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if sub.is_empty() {
            self.stats.leaves += 1;
            return Ok(Solution::empty());
        }
        let components = self.graph.components(&sub);
        if components.len() == 1 {
            return self.solve_component(sub, &components[0], depth, level);
        }
        let m = self.inst.m();
        let mut total = Solution::empty();
        for comp in &components {
            let part = self.solve_component(SubProblem::from_nodes(m, comp.iter().copied()), comp, depth + 1, level)?;
            total.chosen.extend(part.chosen);
            total.covered += part.covered;
            total.weight += part.weight;
        }
        Ok(total)
    }

    /// `sub` is exactly one connected component, listed in `nodes`.
    fn solve_component(
        &mut self,
        sub: SubProblem,
        nodes: &[usize],
        depth: usize,
        level: Level,
    ) -> Result<Solution, SolveError> {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if let [x] = nodes {
            self.stats.leaves += 1;
            return Ok(self.single(*x));
        }
        match level {
            Level::Main => {
                let (x, d) = self.graph.max_degree_node(&sub)?;
                if d <= 3 {
                    self.solve_component(sub, nodes, depth, Level::Deg3)
                } else {
                    self.branch_on(sub, x, depth, Level::Main)
                }
            }
            Level::Deg3 => {
                let (_, d) = self.graph.max_degree_node(&sub)?;
                if d <= 2 {
                    self.solve_component(sub, nodes, depth, Level::Deg2)
                } else {
                    let x = self.graph.select_pivot_deg3(&sub, nodes)?;
                    self.branch_on(sub, x, depth, Level::Deg3)
                }
            }
            Level::Deg2 => {
                let x = self.graph.select_pivot_deg2(&sub, nodes)?;
                self.branch_on(sub, x, depth, Level::Deg2)
            }
        }
    }

    fn branch_on(&mut self, sub: SubProblem, x: usize, depth: usize, level: Level) -> Result<Solution, SolveError> {
        self.stats.branch_nodes += 1;
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(SolveError::Timeout);
        }
        let Branches { include, exclude } = branch(self.graph, &sub, x)?;
        drop(sub);
        let mut taken = stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || self.solve(include, depth + 1, level))?;
        taken.chosen.push(x);
        taken.covered += self.inst.subset(x).len();
        taken.weight += self.inst.weight(x);
        let dropped = stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || self.solve(exclude, depth + 1, level))?;
        Ok(if better(&dropped, &taken, self.tol) {
            dropped
        } else {
            taken
        })
    }

    fn single(&self, x: usize) -> Solution {
        Solution {
            chosen: vec![x],
            covered: self.inst.subset(x).len(),
            weight: self.inst.weight(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Instance {
        Instance::unweighted(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap()
    }

    fn star() -> Instance {
        Instance::unweighted(6, vec![vec![0, 1, 2], vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap()
    }

    fn r3() -> Instance {
        Instance::unweighted(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn k4() -> Instance {
        Instance::unweighted(6, vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 3, 5], vec![2, 4, 5]]).unwrap()
    }

    #[test]
    fn empty_instance() {
        let (s, stats) = solve(&Instance::empty());
        assert_eq!(s, Solution::empty());
        assert_eq!(stats.leaves, 1);
        assert_eq!(stats.branch_nodes, 0);
    }

    #[test]
    fn disjoint_subsets_all_taken() {
        let inst = Instance::new(3, vec![vec![0, 1], vec![2]], vec![0.5, 3.0]).unwrap();
        let (s, stats) = solve(&inst);
        assert_eq!(s.chosen, vec![0, 1]);
        assert_eq!(s.covered, 3);
        assert_eq!(s.weight, 3.5);
        assert_eq!(stats.branch_nodes, 0);
    }

    #[test]
    fn two_component_instance() {
        let inst = Instance::unweighted(5, vec![vec![0, 1], vec![1, 2], vec![3, 4]]).unwrap();
        let (s, _) = solve(&inst);
        assert_eq!(s.covered, 4);
        assert_eq!(s.weight, 2.0);
        assert!(s.chosen == vec![0, 2] || s.chosen == vec![1, 2]);
    }

    #[test]
    fn star_takes_leaves() {
        for solver in [Solver::new().solve(&star()), Solver::new().solve_deg3(&star())] {
            let (s, _) = solver.unwrap();
            assert_eq!(s.chosen, vec![1, 2, 3]);
            assert_eq!(s.covered, 6);
            assert_eq!(s.weight, 3.0);
        }
    }

    #[test]
    fn path_and_ring() {
        for run in [Solver::new().solve_deg2(&p3()), Solver::new().solve_deg3(&p3())] {
            let (s, _) = run.unwrap();
            assert_eq!((s.chosen, s.covered, s.weight), (vec![0, 2], 4, 2.0));
        }
        let (s, _) = Solver::new().solve_deg2(&r3()).unwrap();
        assert_eq!(s.chosen.len(), 1);
        assert_eq!((s.covered, s.weight), (2, 1.0));
    }

    #[test]
    fn k4_takes_one() {
        let (s, _) = Solver::new().solve_deg3(&k4()).unwrap();
        assert_eq!(s.chosen.len(), 1);
        assert_eq!((s.covered, s.weight), (3, 1.0));
    }

    #[test]
    fn weight_decides_equal_coverage() {
        let inst = Instance::new(3, vec![vec![0, 1], vec![1, 2]], vec![5.0, 1.0]).unwrap();
        let (s, _) = Solver::new().solve_deg2(&inst).unwrap();
        assert_eq!((s.chosen, s.covered, s.weight), (vec![1], 2, 1.0));
    }

    #[test]
    fn coverage_beats_weight() {
        // the heavy middle subset covers more than both light ones together
        let inst = Instance::new(
            8,
            vec![vec![0, 1], vec![1, 2, 3, 4, 5, 6], vec![6, 7]],
            vec![0.0, 100.0, 0.0],
        )
        .unwrap();
        let (s, _) = solve(&inst);
        assert_eq!((s.chosen, s.covered), (vec![1], 6));
    }

    #[test]
    fn degree_caps_enforced() {
        assert_eq!(
            Solver::new().solve_deg2(&star()).unwrap_err(),
            SolveError::DegreeBound { found: 3, allowed: 2 }
        );
        let hub = Instance::unweighted(5, vec![vec![0, 1, 2, 3], vec![0], vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(
            Solver::new().solve_deg3(&hub).unwrap_err(),
            SolveError::DegreeBound { found: 4, allowed: 3 }
        );
        let (s, stats) = solve(&hub);
        assert_eq!((s.covered, s.weight), (4, 1.0));
        assert_eq!(s.chosen, vec![0]);
        assert!(stats.branch_nodes >= 1);
    }

    #[test]
    fn branch_examples() {
        let g = IntersectionGraph::build(&p3());
        let b = branch(&g, &SubProblem::full(3), 1).unwrap();
        assert!(b.include.is_empty());
        assert_eq!(b.exclude.to_vec(), vec![0, 2]);

        let g = IntersectionGraph::build(&star());
        let b = branch(&g, &SubProblem::full(4), 0).unwrap();
        assert!(b.include.is_empty());
        assert_eq!(b.exclude.to_vec(), vec![1, 2, 3]);

        let inst = Instance::unweighted(3, vec![vec![0], vec![1, 2], vec![2]]).unwrap();
        let g = IntersectionGraph::build(&inst);
        let b = branch(&g, &SubProblem::full(3), 0).unwrap();
        assert_eq!(b.include.to_vec(), vec![1, 2]);
        assert_eq!(b.exclude.to_vec(), vec![1, 2]);

        assert!(branch(&g, &SubProblem::from_nodes(3, [1]), 0).is_err());
    }

    #[test]
    fn timeout_reported() {
        // complete intersection graph on many nodes: plenty of branching
        let m = 200;
        let subsets: Vec<Vec<usize>> = (0..m).map(|i| vec![0, i + 1]).collect();
        let inst = Instance::unweighted(m + 1, subsets).unwrap();
        let r = Solver::new().with_timeout(Duration::ZERO).solve(&inst);
        assert_eq!(r.unwrap_err(), SolveError::Timeout);
    }

    #[test]
    fn deep_exclude_chain_grows_stack() {
        // a clique: every exclude branch drops one node, so depth ~ m; the
        // small thread stack cannot hold that many frames without growing
        let handle = std::thread::Builder::new()
            .stack_size(256 * 1024)
            .spawn(|| {
                let m = 600;
                let subsets: Vec<Vec<usize>> = (0..m).map(|i| vec![0, i + 1]).collect();
                let weights: Vec<f64> = (0..m).map(|i| (m - i) as f64).collect();
                let inst = Instance::new(m + 1, subsets, weights).unwrap();
                let (s, stats) = solve(&inst);
                assert_eq!(s.chosen, vec![m - 1]);
                assert_eq!((s.covered, s.weight), (2, 1.0));
                assert!(stats.max_depth >= m - 4);
            })
            .unwrap();
        handle.join().unwrap();
    }
}
