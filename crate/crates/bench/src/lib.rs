//! Workloads shared by the benchmarks.

use orthopos::orbit::table_orbit;
use orthopos::{build_poset, DiagramType, MonoidalPoset, OrbitData};

/// A seed class to benchmark: diagram, seed size and variant.
#[derive(Debug, Clone, Copy)]
pub struct Workload {
    pub name: &'static str,
    pub diagram: &'static str,
    pub size: usize,
    pub variant: usize,
}

pub const WORKLOADS: &[Workload] = &[
    Workload {
        name: "A7_t2",
        diagram: "A7",
        size: 2,
        variant: 0,
    },
    Workload {
        name: "D6_pairs",
        diagram: "D6",
        size: 4,
        variant: 2,
    },
    Workload {
        name: "E6_2",
        diagram: "E6",
        size: 2,
        variant: 0,
    },
    Workload {
        name: "E7_3",
        diagram: "E7",
        size: 3,
        variant: 0,
    },
    Workload {
        name: "E8_8",
        diagram: "E8",
        size: 8,
        variant: 0,
    },
];

impl Workload {
    pub fn dtype(&self) -> DiagramType {
        self.diagram.parse().expect("valid diagram name")
    }

    pub fn orbit(&self) -> OrbitData {
        table_orbit(self.dtype(), self.size, self.variant).expect("table seed")
    }

    pub fn poset(&self) -> MonoidalPoset {
        build_poset(self.orbit()).expect("admissible workload")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_admissible() {
        for w in WORKLOADS {
            assert!(w.orbit().admissible(), "{}", w.name);
        }
    }
}
