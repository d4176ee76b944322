//! Value types shared by every module.

/// Decision vector in problem-native units. Its length is the problem's
/// decision dimension and never changes across environment changes.
pub type DecisionVector = Vec<f64>;

/// Objective vector; its length is the objective count of the environment it
/// was evaluated in.
pub type ObjectiveVector = Vec<f64>;

/// A decision vector paired with its objectives and the environment index the
/// objectives were computed in.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub x: DecisionVector,
    pub f: ObjectiveVector,
    pub eval_time: usize,
}

impl Individual {
    pub fn new(x: DecisionVector, f: ObjectiveVector, eval_time: usize) -> Self {
        Self { x, f, eval_time }
    }

    pub fn num_objectives(&self) -> usize {
        self.f.len()
    }
}

/// Borrow the objective vectors of a population, in order.
pub fn objectives(pop: &[Individual]) -> Vec<&[f64]> {
    pop.iter().map(|ind| ind.f.as_slice()).collect()
}

/// Clone the objective vectors of a population, in order.
pub fn objective_matrix(pop: &[Individual]) -> Vec<Vec<f64>> {
    pop.iter().map(|ind| ind.f.clone()).collect()
}
