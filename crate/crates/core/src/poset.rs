//! The monoidal partial order on an admissible orbit.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::CoxeterType;
use crate::error::{Error, Result};
use crate::orbit::{height_rule_violation, orthogonal_nodes, OrbitData, OrthoSet};
use crate::root_system::{Node, Root, RootSystem};

/// Outcome of the minimal-height comparison of two root sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Comparison {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// `B < C` iff the lowest root of `B \ C` is lower than the lowest root of
/// `C \ B`; ties are incomparable.
pub fn compare(rs: &RootSystem, b: &OrthoSet, c: &OrthoSet) -> Comparison {
    // ids are sorted by height, so the first element of a difference has
    // minimal height
    let first_missing = |x: &OrthoSet, y: &OrthoSet| x.ids().find(|&id| !y.contains(id));
    match (first_missing(b, c), first_missing(c, b)) {
        (None, None) => Comparison::Equal,
        (Some(x), Some(y)) => match rs.height_of(x).cmp(&rs.height_of(y)) {
            Ordering::Less => Comparison::Less,
            Ordering::Greater => Comparison::Greater,
            Ordering::Equal => Comparison::Incomparable,
        },
        // members of one orbit have equal size, so one-sided differences
        // only occur for sets of different sizes
        (Some(_), None) => Comparison::Greater,
        (None, Some(_)) => Comparison::Less,
    }
}

/// How the simple reflection `r_i` acts on a member `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    /// `α_i ∈ B`.
    FixesInB,
    /// `α_i ∈ B^⊥`.
    FixesPerp,
    /// `r_i B > B`.
    Raises,
    /// `r_i B < B`.
    Lowers,
}

impl EdgeClass {
    pub fn name(self) -> &'static str {
        match self {
            EdgeClass::FixesInB => "fixes_in_b",
            EdgeClass::FixesPerp => "fixes_perp",
            EdgeClass::Raises => "raises",
            EdgeClass::Lowers => "lowers",
        }
    }
}

/// Classifies `r_i` on `B`. An incomparable pair `B, r_iB` is reported as a
/// consistency error.
pub fn classify_edge(rs: &RootSystem, i: Node, b: &OrthoSet) -> Result<EdgeClass> {
    if b.contains(rs.simple(i)) {
        return Ok(EdgeClass::FixesInB);
    }
    if b.ids().all(|id| rs.node_pairing(id, i) == 0) {
        return Ok(EdgeClass::FixesPerp);
    }
    let img = crate::orbit::act_node(rs, i, b);
    match compare(rs, &img, b) {
        Comparison::Greater => Ok(EdgeClass::Raises),
        Comparison::Less => Ok(EdgeClass::Lowers),
        other => Err(Error::Consistency(format!(
            "r_{} {} compares {:?} with its image",
            i + 1,
            b.display(rs),
            other
        ))),
    }
}

/// An admissible orbit with its edge classes, maximum `B₀` and levels.
#[derive(Debug, Clone)]
pub struct MonoidalPoset {
    orbit: OrbitData,
    classes: Vec<EdgeClass>,
    b0: usize,
    levels: Vec<u32>,
    c_nodes: Vec<Node>,
}

/// Builds the poset; fails on non-admissible orbits and on any violation of
/// comparability or uniqueness of the maximum.
pub fn build_poset(orbit: OrbitData) -> Result<MonoidalPoset> {
    if !orbit.admissible() {
        return Err(Error::NotAdmissible);
    }
    let rs = orbit.root_system();
    let rank = rs.rank();
    let classes: Vec<EdgeClass> = orbit
        .members()
        .par_iter()
        .map(|b| {
            (0..rank)
                .map(|i| classify_edge(rs, i, b))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let maxima: Vec<usize> = (0..orbit.len())
        .filter(|&k| !classes[k * rank..(k + 1) * rank].contains(&EdgeClass::Raises))
        .collect();
    if maxima.len() != 1 {
        return Err(Error::Consistency(format!(
            "{} members have no raising edge",
            maxima.len()
        )));
    }
    let b0 = maxima[0];
    let mut levels = vec![u32::MAX; orbit.len()];
    levels[b0] = 0;
    let mut queue = VecDeque::from([b0]);
    while let Some(k) = queue.pop_front() {
        for i in 0..rank {
            if classes[k * rank + i] == EdgeClass::Lowers {
                let t = orbit.neighbor(k, i);
                if levels[t] == u32::MAX {
                    levels[t] = levels[k] + 1;
                    queue.push_back(t);
                }
            }
        }
    }
    if let Some(k) = levels.iter().position(|&l| l == u32::MAX) {
        return Err(Error::Consistency(format!(
            "member {} is not reachable from the maximum by lowering",
            orbit.member(k).display(rs)
        )));
    }
    let c_nodes = orthogonal_nodes(rs, orbit.member(b0));
    Ok(MonoidalPoset {
        orbit,
        classes,
        b0,
        levels,
        c_nodes,
    })
}

impl MonoidalPoset {
    pub fn orbit(&self) -> &OrbitData {
        &self.orbit
    }

    pub fn root_system(&self) -> &RootSystem {
        self.orbit.root_system()
    }

    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.orbit.rank()
    }

    #[inline]
    pub fn class(&self, k: usize, i: Node) -> EdgeClass {
        self.classes[k * self.rank() + i]
    }

    #[inline]
    pub fn neighbor(&self, k: usize, i: Node) -> usize {
        self.orbit.neighbor(k, i)
    }

    pub fn b0(&self) -> usize {
        self.b0
    }

    pub fn level(&self, k: usize) -> u32 {
        self.levels[k]
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn max_level(&self) -> u32 {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    /// Nodes orthogonal to `B₀`.
    pub fn c_nodes(&self) -> &[Node] {
        &self.c_nodes
    }

    pub fn c_type(&self) -> CoxeterType {
        CoxeterType::of_subdiagram(self.root_system().gram(), &self.c_nodes)
            .expect("subdiagram of a simply laced diagram")
    }

    /// Nodes raising member `k`, ascending.
    pub fn raising_nodes(&self, k: usize) -> impl Iterator<Item = Node> + '_ {
        (0..self.rank()).filter(move |&i| self.class(k, i) == EdgeClass::Raises)
    }

    /// Lowest raising node of `k`, the parent edge of the level tree.
    pub fn parent_node(&self, k: usize) -> Option<Node> {
        self.raising_nodes(k).next()
    }

    /// Minimal members: those with no lowering edge.
    pub fn minimal_members(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| (0..self.rank()).all(|i| self.class(k, i) != EdgeClass::Lowers))
            .collect()
    }

    /// `[j_1, …, j_L]` with `B_k = r_{j_1} ⋯ r_{j_L} B₀`, following lowest
    /// raising nodes up to `B₀`.
    pub fn tree_word(&self, mut k: usize) -> Vec<Node> {
        let mut word = Vec::new();
        while let Some(j) = self.parent_node(k) {
            // a corrupted class table can contain raising cycles
            if word.len() >= self.len() {
                break;
            }
            word.push(j);
            k = self.neighbor(k, j);
        }
        word
    }

    /// Overwrites one edge class. Intended for mutation tests only.
    pub fn override_edge_class(&mut self, k: usize, i: Node, class: EdgeClass) {
        let rank = self.rank();
        self.classes[k * rank + i] = class;
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.orbit.to_json();
        let classes: Vec<Vec<&str>> = (0..self.len())
            .map(|k| (0..self.rank()).map(|i| self.class(k, i).name()).collect())
            .collect();
        v["b0"] = self.b0.into();
        v["levels"] = serde_json::to_value(&self.levels).expect("plain data");
        v["edge_class"] = serde_json::to_value(classes).expect("plain data");
        v["c_nodes"] = serde_json::to_value(self.c_nodes.iter().map(|i| i + 1).collect::<Vec<_>>())
            .expect("plain data");
        v["c_type"] = self.c_type().to_string().into();
        v
    }

    /// Hasse-style DOT graph: raising edges `B → r_iB` labelled by `i`.
    pub fn to_dot(&self) -> String {
        let rs = self.root_system();
        let mut s = String::new();
        let _ = writeln!(s, "digraph poset {{");
        let _ = writeln!(
            s,
            "  label=\"{} orbit of {}\";",
            rs.label(),
            self.orbit.seed().display(rs)
        );
        let _ = writeln!(s, "  rankdir=BT;");
        for k in 0..self.len() {
            let shape = if k == self.b0 { ", shape=box" } else { "" };
            let _ = writeln!(
                s,
                "  n{k} [label=\"{k} (L{})\\n{}\"{shape}];",
                self.levels[k],
                self.orbit.member(k).display(rs)
            );
        }
        for k in 0..self.len() {
            for i in self.raising_nodes(k) {
                let _ = writeln!(
                    s,
                    "  n{k} -> n{} [label=\"{}\"];",
                    self.neighbor(k, i),
                    i + 1
                );
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Nodes of `C` and their Coxeter type.
pub fn compute_c(p: &MonoidalPoset) -> (Vec<Node>, CoxeterType) {
    (p.c_nodes().to_vec(), p.c_type())
}

pub fn maximal_element(p: &MonoidalPoset) -> &OrthoSet {
    p.orbit().member(p.b0())
}

/// Named clauses checked by [`verify_order_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Clause {
    /// `B` and `r_iB` are comparable, and distinct when `r_i` moves a root.
    EdgeComparable,
    /// Stored classes agree with `compare` and are mirrored across each edge.
    ClassConsistency,
    /// `i ∼ j`, `α_i ∈ B^⊥`: `r_i` continues the direction of `r_j`.
    PerpNeighborOrder,
    /// `i ≁ j`, two distinct lowerings compose to a lower member.
    CommutingLowerings,
    /// `i ∼ j`, two lowerings: coincide or descend through the braid hexagon.
    AdjacentLowerings,
    /// `i ∼ j`, `r_ir_jB = r_jB`, both lowering: `α_i + α_j ∈ B`.
    CoincidentLoweringPair,
    /// `r_iB = r_kB > B`: `i ≁ k` and `β + α_i + α_k ∈ B` for the lowest
    /// moved `β`.
    CoincidentRaisingPair,
    /// `i ≁ j`, `r_ir_jB < r_iB < B` implies `r_ir_jB < r_jB < B`.
    CommutingDescentChain,
    /// `i ≁ j`, two distinct raisings compose to a higher member.
    CommutingRaisings,
    /// `i ∼ j`, two raisings ascend through the braid hexagon.
    AdjacentRaisings,
    /// `i ∼ j`, a descending chain along `j, i, j` mirrors along `i, j`.
    AdjacentDescentChain,
    /// `α_i ∉ B ∪ B^⊥` gives a strict comparison.
    MovedImpliesStrict,
    /// Raising edges decrease the level by exactly one.
    LevelStep,
    /// Level equals the distance from `B₀` in the orbit graph.
    LevelIsDistance,
    /// Left descents of a minimal word for `B` raise `B`.
    MinimalWordDescent,
    /// The two forbidden height configurations are absent.
    HeightRules,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub clause: Clause,
    pub member: usize,
    /// 1-based nodes involved.
    pub nodes: Vec<Node>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct OrderReport {
    pub members: usize,
    pub checks: u64,
    pub failures: Vec<AxiomFailure>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

const MAX_REPORTED: usize = 32;

struct Ctx<'a> {
    p: &'a MonoidalPoset,
    rs: &'a RootSystem,
}

impl Ctx<'_> {
    fn cmp(&self, a: usize, b: usize) -> Comparison {
        compare(self.rs, self.p.orbit.member(a), self.p.orbit.member(b))
    }
    fn lt(&self, a: usize, b: usize) -> bool {
        self.cmp(a, b) == Comparison::Less
    }
    fn r(&self, k: usize, i: Node) -> usize {
        self.p.neighbor(k, i)
    }
    fn perp(&self, k: usize, i: Node) -> bool {
        self.p.class(k, i) == EdgeClass::FixesPerp
    }
    fn in_b(&self, k: usize, root: &Root) -> bool {
        self.rs
            .id_of(root)
            .is_some_and(|id| self.p.orbit.member(k).contains(id))
    }
}

fn check_member(c: &Ctx<'_>, k: usize, out: &mut Vec<AxiomFailure>) -> u64 {
    let p = c.p;
    let rs = c.rs;
    let n = p.rank();
    let b = p.orbit.member(k);
    let mut checks = 0u64;
    let mut fail = |clause: Clause, nodes: &[Node], detail: String| {
        out.push(AxiomFailure {
            clause,
            member: k,
            nodes: nodes.iter().map(|x| x + 1).collect(),
            detail,
        });
    };

    for i in 0..n {
        checks += 1;
        let ri = c.r(k, i);
        let moves = b.ids().any(|id| rs.node_pairing(id, i).abs() == 1);
        let cmp = c.cmp(ri, k);
        if cmp == Comparison::Incomparable || (moves && ri == k) {
            fail(Clause::EdgeComparable, &[i], format!("{cmp:?}"));
        }
        let in_b = b.contains(rs.simple(i));
        let perp = !moves && !in_b;
        if !in_b && !perp && !matches!(cmp, Comparison::Less | Comparison::Greater) {
            fail(Clause::MovedImpliesStrict, &[i], format!("{cmp:?}"));
        }
        let expected = if in_b {
            EdgeClass::FixesInB
        } else if perp {
            EdgeClass::FixesPerp
        } else if cmp == Comparison::Greater {
            EdgeClass::Raises
        } else {
            EdgeClass::Lowers
        };
        let mirrored = match p.class(k, i) {
            EdgeClass::Raises => p.class(ri, i) == EdgeClass::Lowers,
            EdgeClass::Lowers => p.class(ri, i) == EdgeClass::Raises,
            _ => ri == k,
        };
        if p.class(k, i) != expected || !mirrored {
            fail(
                Clause::ClassConsistency,
                &[i],
                format!("stored {:?}, expected {expected:?}", p.class(k, i)),
            );
        }
        if p.class(k, i) == EdgeClass::Raises && p.level(ri) + 1 != p.level(k) {
            fail(
                Clause::LevelStep,
                &[i],
                format!("levels {} -> {}", p.level(k), p.level(ri)),
            );
        }
    }

    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            checks += 1;
            let adj = rs.adjacent(i, j);
            let (ri, rj) = (c.r(k, i), c.r(k, j));
            let rirj = c.r(rj, i);
            let rjri = c.r(ri, j);
            let rirjri = c.r(rjri, i);
            let rjrirj = c.r(rirj, j);

            if adj && c.perp(k, i) {
                if c.lt(rj, k) && !c.lt(rirj, rj) {
                    fail(
                        Clause::PerpNeighborOrder,
                        &[i, j],
                        "lowering not continued".into(),
                    );
                }
                if c.lt(k, rj) && !c.lt(rj, rirj) {
                    fail(
                        Clause::PerpNeighborOrder,
                        &[i, j],
                        "raising not continued".into(),
                    );
                }
            }

            let lower_i = c.lt(ri, k);
            let lower_j = c.lt(rj, k);
            let raise_i = c.lt(k, ri);
            let raise_j = c.lt(k, rj);

            if !adj && lower_i && lower_j && ri != rj && !(c.lt(rirj, rj) && c.lt(rirj, ri)) {
                fail(Clause::CommutingLowerings, &[i, j], String::new());
            }
            if adj && lower_i && lower_j {
                let hexagon =
                    c.lt(rirj, rj) && c.lt(rjri, ri) && c.lt(rirjri, rirj) && c.lt(rirjri, rjri);
                if rirj != rj && !hexagon {
                    fail(Clause::AdjacentLowerings, &[i, j], String::new());
                }
                if rirj == rj && !c.in_b(k, &(&Root::simple(n, i) + &Root::simple(n, j))) {
                    fail(
                        Clause::CoincidentLoweringPair,
                        &[i, j],
                        "α_i + α_j ∉ B".into(),
                    );
                }
            }
            if raise_i && ri == rj {
                if adj {
                    fail(
                        Clause::CoincidentRaisingPair,
                        &[i, j],
                        "adjacent nodes".into(),
                    );
                }
                let moved: Vec<_> = b
                    .ids()
                    .filter(|&id| rs.node_pairing(id, i) != 0 || rs.node_pairing(id, j) != 0)
                    .collect();
                let h = moved.iter().map(|&id| rs.height_of(id)).min().unwrap_or(0);
                let sum = &Root::simple(n, i) + &Root::simple(n, j);
                for &beta in moved.iter().filter(|&&id| rs.height_of(id) == h) {
                    if !c.in_b(k, &(rs.root(beta) + &sum)) {
                        fail(
                            Clause::CoincidentRaisingPair,
                            &[i, j],
                            format!("{} + α_i + α_k ∉ B", rs.root(beta)),
                        );
                    }
                }
            }
            if !adj && c.lt(rirj, ri) && lower_i && !(c.lt(rirj, rj) && lower_j) {
                fail(Clause::CommutingDescentChain, &[i, j], String::new());
            }
            if !adj && raise_i && raise_j && ri != rj && !(c.lt(ri, rirj) && c.lt(rj, rirj)) {
                fail(Clause::CommutingRaisings, &[i, j], String::new());
            }
            if adj
                && raise_i
                && raise_j
                && !(c.lt(ri, rjri) && c.lt(rjri, rirjri) && c.lt(rj, rirj) && c.lt(rirj, rjrirj))
            {
                fail(Clause::AdjacentRaisings, &[i, j], String::new());
            }
            if adj
                && c.lt(rjrirj, rjri)
                && c.lt(rjri, ri)
                && lower_i
                && !(c.lt(rjrirj, rirj) && c.lt(rirj, rj) && lower_j)
            {
                fail(Clause::AdjacentDescentChain, &[i, j], String::new());
            }
        }
    }

    // left descents of the tree word w (B = w B₀) must raise B
    checks += 1;
    let word = p.tree_word(k);
    for i in 0..n {
        let mut v = Root::simple(n, i);
        for &letter in &word {
            v = rs.reflect(letter, &v);
        }
        if v.is_negative() && p.class(k, i) != EdgeClass::Raises {
            fail(
                Clause::MinimalWordDescent,
                &[i],
                format!("word {:?}", word.iter().map(|x| x + 1).collect::<Vec<_>>()),
            );
        }
    }
    checks
}

/// Exhaustively checks every order clause on every member.
pub fn verify_order_axioms(p: &MonoidalPoset) -> OrderReport {
    let ctx = Ctx {
        p,
        rs: p.root_system(),
    };
    let (checks, mut failures) = (0..p.len())
        .into_par_iter()
        .map(|k| {
            let mut out = Vec::new();
            let n = check_member(&ctx, k, &mut out);
            (n, out)
        })
        .reduce(
            || (0, Vec::new()),
            |(a, mut fa), (b, fb)| {
                if fa.len() < MAX_REPORTED {
                    fa.extend(fb);
                }
                (a + b, fa)
            },
        );
    let mut checks = checks;
    let dist = orbit_distances(p.orbit(), p.b0());
    for (k, &d) in dist.iter().enumerate().take(p.len()) {
        checks += 1;
        if d != p.level(k) {
            failures.push(AxiomFailure {
                clause: Clause::LevelIsDistance,
                member: k,
                nodes: vec![],
                detail: format!("level {} vs distance {}", p.level(k), d),
            });
        }
    }
    checks += 1;
    if let Some(msg) = height_rule_violation(p.orbit()) {
        failures.push(AxiomFailure {
            clause: Clause::HeightRules,
            member: p.b0(),
            nodes: vec![],
            detail: msg,
        });
    }
    failures.sort_by_key(|f| f.member);
    failures.truncate(MAX_REPORTED);
    OrderReport {
        members: p.len(),
        checks,
        failures,
    }
}

/// Undirected distance from `start` in the orbit graph.
pub fn orbit_distances(orbit: &OrbitData, start: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; orbit.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(k) = queue.pop_front() {
        for i in 0..orbit.rank() {
            let t = orbit.neighbor(k, i);
            if dist[t] == u32::MAX {
                dist[t] = dist[k] + 1;
                queue.push_back(t);
            }
        }
    }
    dist
}

/// Fixed-width bit rows.
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            words,
            bits: vec![0; words * n],
        }
    }
    fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words..(a + 1) * self.words]
    }
    fn set(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
    }
    fn or_row(&mut self, dst: usize, src: usize) {
        let w = self.words;
        let (lo, hi) = (dst.min(src), dst.max(src));
        let (left, right) = self.bits.split_at_mut(hi * w);
        let (d, s) = if dst < src {
            (&mut left[lo * w..(lo + 1) * w], &right[..w])
        } else {
            (&mut right[..w], &left[lo * w..(lo + 1) * w] as &[u64])
        };
        for (x, y) in d.iter_mut().zip(s) {
            *x |= y;
        }
    }
    fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
        row.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }
}

/// Checks that every pair `B < C` of the transitive closure of the raising
/// edges satisfies `compare(B, C) = Less`. Returns the number of closure
/// pairs, or the first offending pair.
pub fn verify_closure_in_compare(p: &MonoidalPoset) -> Result<u64, (usize, usize)> {
    let n = p.len();
    let mut above = BitMatrix::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&k| p.level(k));
    for &k in &order {
        for i in 0..p.rank() {
            if p.class(k, i) == EdgeClass::Raises {
                let t = p.neighbor(k, i);
                above.set(k, t);
                above.or_row(k, t);
            }
        }
    }
    let rs = p.root_system();
    let results: Vec<Result<u64, (usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut count = 0;
            for t in BitMatrix::ones(above.row(k)) {
                if compare(rs, p.orbit().member(k), p.orbit().member(t)) != Comparison::Less {
                    return Err((k, t));
                }
                count += 1;
            }
            Ok(count)
        })
        .collect();
    results.into_iter().sum()
}

/// Checks transitivity of the raw `compare` relation on all triples of the
/// orbit. Returns `(a, b, c)` with `a < b < c` but not `a < c`.
pub fn compare_transitivity_violation(orbit: &OrbitData) -> Option<(usize, usize, usize)> {
    let n = orbit.len();
    let rs = orbit.root_system();
    let mut less = BitMatrix::new(n);
    for a in 0..n {
        for b in 0..n {
            if compare(rs, orbit.member(a), orbit.member(b)) == Comparison::Less {
                less.set(a, b);
            }
        }
    }
    (0..n).into_par_iter().find_map_first(|a| {
        for b in BitMatrix::ones(less.row(a)) {
            for (w, (&x, &y)) in less.row(b).iter().zip(less.row(a)).enumerate() {
                let missing = x & !y;
                if missing != 0 {
                    return Some((a, b, w * 64 + missing.trailing_zeros() as usize));
                }
            }
        }
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramType;
    use crate::orbit::{orbit_of_roots, table_orbit};
    use std::sync::Arc;

    fn d5_remark_poset() -> MonoidalPoset {
        let rs = Arc::new(RootSystem::new(DiagramType::d(5)));
        let b = [
            rs.from_epsilon(&[0, 0, 1, 1, 0]).unwrap(),
            rs.from_epsilon(&[1, 1, 0, 0, 0]).unwrap(),
        ];
        build_poset(orbit_of_roots(rs, &b).unwrap()).unwrap()
    }

    #[test]
    fn compare_examples() {
        let o = table_orbit(DiagramType::a(3), 1, 0).unwrap();
        let rs = o.root_system();
        let a1 = OrthoSet::from_roots(rs, &[Root::new(vec![1, 0, 0])]).unwrap();
        let a12 = OrthoSet::from_roots(rs, &[Root::new(vec![1, 1, 0])]).unwrap();
        assert_eq!(compare(rs, &a1, &a1), Comparison::Equal);
        assert_eq!(compare(rs, &a1, &a12), Comparison::Less);
        assert_eq!(compare(rs, &a12, &a1), Comparison::Greater);
        let a3 = OrthoSet::from_roots(rs, &[Root::new(vec![0, 0, 1])]).unwrap();
        assert_eq!(compare(rs, &a1, &a3), Comparison::Incomparable);
        assert_eq!(classify_edge(rs, 1, &a1).unwrap(), EdgeClass::Raises);
        assert_eq!(classify_edge(rs, 0, &a1).unwrap(), EdgeClass::FixesInB);
        assert_eq!(classify_edge(rs, 2, &a1).unwrap(), EdgeClass::FixesPerp);
    }

    #[test]
    fn a3_single_root_poset() {
        let p = build_poset(table_orbit(DiagramType::a(3), 1, 0).unwrap()).unwrap();
        let rs = p.root_system();
        assert_eq!(
            maximal_element(&p).roots(rs).next().unwrap(),
            &Root::new(vec![1, 1, 1])
        );
        assert_eq!(p.max_level(), 2);
        assert_eq!(p.c_nodes(), &[1]);
        assert!(verify_order_axioms(&p).passed());
    }

    #[test]
    fn d5_remark_member() {
        let p = d5_remark_poset();
        let rs = p.root_system();
        let b = p.orbit().index_of(p.orbit().seed()).unwrap();
        assert_eq!(p.class(b, 1), EdgeClass::Raises);
        let b0 = maximal_element(&p);
        let expect = OrthoSet::from_roots(
            rs,
            &[
                rs.from_epsilon(&[1, 0, 0, 1, 0]).unwrap(),
                rs.from_epsilon(&[0, 1, 1, 0, 0]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(b0, &expect);
        // B = r_2 r_1 B₀ = r_2 r_3 B₀
        assert_eq!(p.neighbor(p.neighbor(b, 1), 0), p.b0());
        assert_eq!(p.neighbor(p.neighbor(b, 1), 2), p.b0());
        assert_eq!(p.level(b), 2);
    }

    #[test]
    fn non_admissible_rejected() {
        let o = table_orbit(DiagramType::e(6), 3, 0).unwrap();
        assert!(matches!(build_poset(o), Err(Error::NotAdmissible)));
    }

    #[test]
    fn single_member_orbit_is_vacuous() {
        let o = table_orbit(DiagramType::d(4), 4, 2).unwrap();
        assert_eq!(o.len(), 3);
        let p = build_poset(table_orbit(DiagramType::a(1), 1, 0).unwrap()).unwrap();
        assert_eq!(p.len(), 1);
        assert!(verify_order_axioms(&p).passed());
    }

    #[test]
    fn mutation_is_detected() {
        let mut p = build_poset(table_orbit(DiagramType::a(4), 2, 0).unwrap()).unwrap();
        let k = (0..p.len())
            .find(|&k| p.class(k, 0) == EdgeClass::Lowers)
            .unwrap();
        p.override_edge_class(k, 0, EdgeClass::Raises);
        assert!(!verify_order_axioms(&p).passed());
    }

    #[test]
    fn closure_and_dot() {
        let p = build_poset(table_orbit(DiagramType::e(6), 2, 0).unwrap()).unwrap();
        assert!(verify_closure_in_compare(&p).unwrap() > 0);
        let dot = p.to_dot();
        assert!(dot.starts_with("digraph poset {"));
        let edges = dot.lines().filter(|l| l.contains("->")).count();
        let raises = (0..p.len())
            .map(|k| p.raising_nodes(k).count())
            .sum::<usize>();
        assert_eq!(edges, raises);
        let j = p.to_json();
        assert_eq!(j["b0"], p.b0());
        assert_eq!(j["levels"].as_array().unwrap().len(), 270);
    }
}
