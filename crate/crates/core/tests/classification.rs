use std::collections::HashSet;
use std::sync::Arc;

use orthopos::orbit::{all_orthosets, seed_rows};
use orthopos::{enumerate_orbit, DiagramType, OrthoSet, RootSystem};

/// Every set of mutually orthogonal positive roots lies in exactly one
/// listed seed orbit.
fn seed_orbits_partition_all_orthosets(dt: DiagramType) {
    let rs = Arc::new(RootSystem::new(dt));
    let rows = seed_rows(&rs);
    let max = rows.iter().map(|r| r.size).max().unwrap();
    for size in 1..=max + 1 {
        let all = all_orthosets(&rs, size);
        let mut covered: HashSet<OrthoSet> = HashSet::new();
        for row in rows.iter().filter(|r| r.size == size) {
            let orbit = enumerate_orbit(rs.clone(), row.orthoset(&rs).unwrap()).unwrap();
            for b in orbit.members() {
                assert!(
                    covered.insert(b.clone()),
                    "{dt}: {} overlaps another orbit",
                    row.label()
                );
            }
        }
        assert_eq!(covered.len(), all.len(), "{dt} size {size}");
        for b in &all {
            assert!(
                covered.contains(b),
                "{dt}: {} is in no seed orbit",
                b.display(&rs)
            );
        }
    }
}

#[test]
fn type_a() {
    for n in 1..=8 {
        seed_orbits_partition_all_orthosets(DiagramType::a(n));
    }
}

#[test]
fn type_d() {
    for n in 4..=8 {
        seed_orbits_partition_all_orthosets(DiagramType::d(n));
    }
}

#[test]
fn type_e() {
    for n in 6..=8 {
        seed_orbits_partition_all_orthosets(DiagramType::e(n));
    }
}
