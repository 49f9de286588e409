use serde::Serialize;

use super::transversal::SufficiencyVerdict;

/// Tallies (generator, transversal) observations and flags any that contradict
/// "no transversal implies generator" or "generator with a transversal has more than q lines".
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConsistencyMonitor {
    pub observations: u64,
    pub generator_with_transversal: u64,
    pub violations: Vec<String>,
}

impl ConsistencyMonitor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, context: &str, generator: bool, transversal: bool, size: usize, q: u32) {
        self.observations += 1;
        if !generator && !transversal {
            self.violations.push(format!("{context}: non-generator without a transversal"));
        }
        if generator && transversal {
            self.generator_with_transversal += 1;
            if size <= q as usize {
                self.violations.push(format!("{context}: generator of size {size} <= q = {q} has a transversal"));
            }
        }
    }

    pub fn record_verdict(&mut self, context: &str, v: &SufficiencyVerdict, size: usize, q: u32) {
        self.record(context, v.generator, v.transversal.is_some(), size, q);
    }

    pub fn merge(&mut self, other: ConsistencyMonitor) {
        self.observations += other.observations;
        self.generator_with_transversal += other.generator_with_transversal;
        self.violations.extend(other.violations);
    }

    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}
