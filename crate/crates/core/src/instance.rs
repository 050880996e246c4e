//! Utility profiles over graph vertices, allocations and their welfare.

use num_traits::{One, Zero};

use crate::graph::{Graph, GraphError, VertexSet};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("an instance needs at least one agent")]
    NoAgents,
    #[error("agent {agent} has {actual} utilities but the graph has {expected} vertices")]
    WrongLength {
        agent: usize,
        expected: usize,
        actual: usize,
    },
    #[error("agent {agent} has negative utility for vertex {vertex}")]
    Negative { agent: usize, vertex: usize },
    #[error("agent {agent} has total utility {total}, expected 1 for a normalized instance")]
    NotNormalized { agent: usize, total: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AllocationError {
    #[error("allocation has {actual} bundles for {expected} agents")]
    WrongAgentCount { expected: usize, actual: usize },
    #[error("vertex {0} is in more than one bundle")]
    Overlap(usize),
    #[error("vertex {0} is in no bundle")]
    Unassigned(usize),
    #[error("vertex {0} does not exist")]
    OutOfRange(usize),
}

/// A graph together with one additive utility function per agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    utilities: Vec<Vec<Rational>>,
    normalized: bool,
}

impl Instance {
    /// Validates the utility matrix: one row per agent, one non-negative
    /// entry per vertex, each row summing to 1 when `normalized` is set.
    pub fn new(
        graph: Graph,
        utilities: Vec<Vec<Rational>>,
        normalized: bool,
    ) -> Result<Self, InstanceError> {
        if utilities.is_empty() {
            return Err(InstanceError::NoAgents);
        }
        let m = graph.vertex_count();
        for (agent, row) in utilities.iter().enumerate() {
            if row.len() != m {
                return Err(InstanceError::WrongLength {
                    agent,
                    expected: m,
                    actual: row.len(),
                });
            }
            if let Some(vertex) = row.iter().position(|u| *u < Rational::zero()) {
                return Err(InstanceError::Negative { agent, vertex });
            }
            if normalized {
                let total: Rational = row.iter().sum();
                if !total.is_one() {
                    return Err(InstanceError::NotNormalized {
                        agent,
                        total: format_rational(&total),
                    });
                }
            }
        }
        Ok(Instance {
            graph,
            utilities,
            normalized,
        })
    }

    /// Shorthand for a normalized instance.
    pub fn normalized(graph: Graph, utilities: Vec<Vec<Rational>>) -> Result<Self, InstanceError> {
        Self::new(graph, utilities, true)
    }

    /// Shorthand for an instance without the normalization requirement.
    pub fn unnormalized(
        graph: Graph,
        utilities: Vec<Vec<Rational>>,
    ) -> Result<Self, InstanceError> {
        Self::new(graph, utilities, false)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn utilities(&self) -> &[Vec<Rational>] {
        &self.utilities
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Number of items `m`.
    pub fn item_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Number of agents `n`.
    pub fn agent_count(&self) -> usize {
        self.utilities.len()
    }

    pub fn utility(&self, agent: usize, vertex: usize) -> Rational {
        self.utilities[agent][vertex]
    }

    /// `u_i(G)`.
    pub fn total(&self, agent: usize) -> Rational {
        self.utilities[agent].iter().sum()
    }

    /// Vertices the agent values positively.
    pub fn valued_by(&self, agent: usize) -> VertexSet {
        self.utilities[agent]
            .iter()
            .enumerate()
            .filter(|(_, u)| !u.is_zero())
            .map(|(v, _)| v)
            .collect()
    }

    /// True iff every vertex is positively valued by at most one agent.
    pub fn is_disjoint_valued(&self) -> bool {
        (0..self.item_count()).all(|v| {
            self.utilities
                .iter()
                .filter(|row| !row[v].is_zero())
                .count()
                <= 1
        })
    }

    /// The agent valuing `vertex` positively, when exactly one does.
    pub fn sole_valuer(&self, vertex: usize) -> Option<usize> {
        let mut it = (0..self.agent_count()).filter(|&i| !self.utilities[i][vertex].is_zero());
        match (it.next(), it.next()) {
            (Some(i), None) => Some(i),
            _ => None,
        }
    }

    /// The instance induced on `vertices` for the listed agents, relabelled
    /// to `0..|vertices|`; returns the vertex map from new to old labels.
    /// The result is never flagged as normalized.
    pub fn restrict(
        &self,
        vertices: VertexSet,
        agents: &[usize],
    ) -> Result<(Instance, Vec<usize>), InstanceError> {
        let (graph, map) = self.graph.induced(vertices)?;
        let utilities = agents
            .iter()
            .map(|&a| map.iter().map(|&v| self.utilities[a][v]).collect())
            .collect();
        Ok((Instance::unnormalized(graph, utilities)?, map))
    }
}

/// One bundle per agent, in agent order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    pub bundles: Vec<VertexSet>,
}

impl Allocation {
    pub fn new(bundles: Vec<VertexSet>) -> Self {
        Allocation { bundles }
    }

    /// Every vertex of `inst` to `agent`, nothing to the others.
    pub fn all_to(inst: &Instance, agent: usize) -> Self {
        let mut bundles = vec![VertexSet::EMPTY; inst.agent_count()];
        bundles[agent] = inst.graph().vertices();
        Allocation { bundles }
    }

    /// Which agent holds each vertex.
    pub fn owners(&self, vertex_count: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; vertex_count];
        for (i, b) in self.bundles.iter().enumerate() {
            for v in *b {
                if v < vertex_count {
                    out[v] = Some(i);
                }
            }
        }
        out
    }

    /// Checks that the bundles partition the vertices of `inst`.
    pub fn validate(&self, inst: &Instance) -> Result<(), AllocationError> {
        if self.bundles.len() != inst.agent_count() {
            return Err(AllocationError::WrongAgentCount {
                expected: inst.agent_count(),
                actual: self.bundles.len(),
            });
        }
        let all = inst.graph().vertices();
        let mut seen = VertexSet::EMPTY;
        for b in &self.bundles {
            if let Some(v) = b.difference(all).first() {
                return Err(AllocationError::OutOfRange(v));
            }
            if let Some(v) = b.intersection(seen).first() {
                return Err(AllocationError::Overlap(v));
            }
            seen = seen.union(*b);
        }
        match all.difference(seen).first() {
            Some(v) => Err(AllocationError::Unassigned(v)),
            None => Ok(()),
        }
    }
}

/// `u_agent(s)`; the empty bundle is worth 0.
pub fn bundle_utility(inst: &Instance, agent: usize, s: VertexSet) -> Rational {
    s.iter().map(|v| inst.utilities[agent][v]).sum()
}

/// True iff `a` is a partition of the vertices whose bundles are all
/// connected.
pub fn is_connected_allocation(inst: &Instance, a: &Allocation) -> Result<bool, AllocationError> {
    a.validate(inst)?;
    Ok(a.bundles
        .iter()
        .all(|&b| inst.graph().is_connected_subset(b)))
}

/// Smallest bundle utility.
pub fn egal_welfare(inst: &Instance, a: &Allocation) -> Rational {
    a.bundles
        .iter()
        .enumerate()
        .map(|(i, &b)| bundle_utility(inst, i, b))
        .min()
        .expect("instances have at least one agent")
}

/// Sum of bundle utilities.
pub fn util_welfare(inst: &Instance, a: &Allocation) -> Rational {
    a.bundles
        .iter()
        .enumerate()
        .map(|(i, &b)| bundle_utility(inst, i, b))
        .sum()
}

/// Keeps each agent's utilities on her own `base` bundle and zeroes the
/// rest. The result is disjoint-valued and not normalized.
pub fn reduce_to_disjoint(inst: &Instance, base: &Allocation) -> Result<Instance, AllocationError> {
    base.validate(inst)?;
    let utilities = inst
        .utilities
        .iter()
        .zip(&base.bundles)
        .map(|(row, b)| {
            row.iter()
                .enumerate()
                .map(|(v, &u)| if b.contains(v) { u } else { Rational::zero() })
                .collect()
        })
        .collect();
    Ok(Instance::unnormalized(inst.graph.clone(), utilities).expect("same shape as the input"))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::{frac, int};

    /// The two-agent example on a triangle with a pendant vertex: vertices
    /// are top-left 0, top-right 1, bottom-left 2, bottom-right 3.
    pub(crate) fn pendant_triangle() -> Instance {
        let g = Graph::new(4, &[(0, 1), (1, 3), (2, 1), (2, 3)]).unwrap();
        Instance::normalized(
            g,
            vec![
                vec![frac(1, 2), int(0), frac(2, 5), frac(1, 10)],
                vec![frac(1, 5), frac(2, 5), int(0), frac(2, 5)],
            ],
        )
        .unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(vs.iter().copied())
    }

    #[test]
    fn bundle_values() {
        let inst = pendant_triangle();
        assert_eq!(bundle_utility(&inst, 1, set(&[0, 1, 3])), int(1));
        assert_eq!(bundle_utility(&inst, 0, set(&[2])), frac(2, 5));
        assert_eq!(bundle_utility(&inst, 0, VertexSet::EMPTY), int(0));
    }

    #[test]
    fn validation() {
        let g = Graph::path(2).unwrap();
        assert_eq!(
            Instance::normalized(g.clone(), vec![]),
            Err(InstanceError::NoAgents)
        );
        assert!(matches!(
            Instance::normalized(g.clone(), vec![vec![int(1)]]),
            Err(InstanceError::WrongLength { .. })
        ));
        assert!(matches!(
            Instance::normalized(g.clone(), vec![vec![int(2), int(-1)]]),
            Err(InstanceError::Negative {
                agent: 0,
                vertex: 1
            })
        ));
        assert!(matches!(
            Instance::normalized(g.clone(), vec![vec![frac(1, 2), frac(1, 3)]]),
            Err(InstanceError::NotNormalized { .. })
        ));
        assert!(Instance::unnormalized(g, vec![vec![frac(1, 2), frac(1, 3)]]).is_ok());
    }

    #[test]
    fn connected_allocations() {
        let inst = pendant_triangle();
        let split = Allocation::new(vec![set(&[2]), set(&[0, 1, 3])]);
        assert_eq!(is_connected_allocation(&inst, &split), Ok(true));
        assert_eq!(
            is_connected_allocation(&inst, &Allocation::all_to(&inst, 0)),
            Ok(true)
        );

        let c4 = Graph::cycle(4).unwrap();
        let flat = Instance::normalized(c4, vec![vec![frac(1, 4); 4]; 2]).unwrap();
        let diagonal = Allocation::new(vec![set(&[0, 2]), set(&[1, 3])]);
        assert_eq!(is_connected_allocation(&flat, &diagonal), Ok(false));
    }

    #[test]
    fn partition_errors_are_distinct() {
        let inst = pendant_triangle();
        let overlap = Allocation::new(vec![set(&[0, 1]), set(&[1, 2, 3])]);
        assert_eq!(overlap.validate(&inst), Err(AllocationError::Overlap(1)));
        let gap = Allocation::new(vec![set(&[0]), set(&[1, 2])]);
        assert_eq!(gap.validate(&inst), Err(AllocationError::Unassigned(3)));
        let wide = Allocation::new(vec![set(&[0, 1, 2, 3, 7]), VertexSet::EMPTY]);
        assert_eq!(wide.validate(&inst), Err(AllocationError::OutOfRange(7)));
        let short = Allocation::new(vec![set(&[0, 1, 2, 3])]);
        assert!(matches!(
            is_connected_allocation(&inst, &short),
            Err(AllocationError::WrongAgentCount { .. })
        ));
    }

    #[test]
    fn welfare_of_the_example_splits() {
        let inst = pendant_triangle();
        let unconstrained = Allocation::new(vec![set(&[0, 2]), set(&[1, 3])]);
        assert_eq!(egal_welfare(&inst, &unconstrained), frac(4, 5));
        let red = Allocation::new(vec![set(&[2]), set(&[0, 1, 3])]);
        assert_eq!(util_welfare(&inst, &red), frac(7, 5));
        let all = Allocation::all_to(&inst, 1);
        assert_eq!(util_welfare(&inst, &all), int(1));
        assert_eq!(egal_welfare(&inst, &all), int(0));
    }

    #[test]
    fn reduction_keeps_own_bundles() {
        let inst = pendant_triangle();
        let base = Allocation::new(vec![set(&[0, 2]), set(&[1, 3])]);
        let r = reduce_to_disjoint(&inst, &base).unwrap();
        assert!(r.is_disjoint_valued());
        assert!(!r.is_normalized());
        assert_eq!(r.valued_by(0), set(&[0, 2]));
        assert_eq!(r.valued_by(1), set(&[1, 3]));
        assert_eq!(r.total(0), frac(9, 10));

        let again = reduce_to_disjoint(&r, &base).unwrap();
        assert_eq!(again.utilities(), r.utilities());
    }

    #[test]
    fn restriction_relabels() {
        let inst = pendant_triangle();
        let (sub, map) = inst.restrict(set(&[1, 2, 3]), &[1]).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(sub.agent_count(), 1);
        assert_eq!(sub.utilities()[0], vec![frac(2, 5), int(0), frac(2, 5)]);
    }
}
