//! Sets of mutually orthogonal positive roots, their W-orbits, and the two
//! admissibility criteria.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::diagram::{CoxeterType, DiagramType, Family};
use crate::error::{Error, Result};
use crate::root_system::{Node, Root, RootId, RootSystem};

/// Orbits larger than this are refused.
pub const MAX_ORBIT: usize = 5_000_000;

/// A set of mutually orthogonal positive roots, stored as strictly increasing
/// root ids in the canonical root order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OrthoSet(Vec<u16>);

impl OrthoSet {
    /// Validates distinctness and mutual orthogonality.
    pub fn new(rs: &RootSystem, ids: impl IntoIterator<Item = RootId>) -> Result<Self> {
        let mut v: Vec<u16> = ids.into_iter().map(|id| id as u16).collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotOrthogonal("repeated root".into()));
        }
        for &a in &v {
            if a as usize >= rs.len() {
                return Err(Error::InvalidSeed(format!("root id {a} out of range")));
            }
        }
        for (k, &a) in v.iter().enumerate() {
            for &b in &v[k + 1..] {
                if rs.pairing(a as usize, b as usize) != 0 {
                    return Err(Error::NotOrthogonal(format!(
                        "{} and {}",
                        rs.root(a as usize),
                        rs.root(b as usize)
                    )));
                }
            }
        }
        Ok(Self(v))
    }

    pub fn from_roots(rs: &RootSystem, roots: &[Root]) -> Result<Self> {
        let ids = roots
            .iter()
            .map(|r| {
                if r.rank() != rs.rank() {
                    return Err(Error::DimensionMismatch {
                        expected: rs.rank(),
                        got: r.rank(),
                    });
                }
                rs.id_of(r).ok_or_else(|| Error::NotARoot {
                    system: rs.label().to_string(),
                    vector: r.coeffs().to_vec(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rs, ids)
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = RootId> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: RootId) -> bool {
        self.0.binary_search(&(id as u16)).is_ok()
    }

    pub fn roots<'a>(&'a self, rs: &'a RootSystem) -> impl Iterator<Item = &'a Root> + 'a {
        self.ids().map(move |id| rs.root(id))
    }

    pub fn display<'a>(&'a self, rs: &'a RootSystem) -> impl fmt::Display + 'a {
        DisplaySet(self, rs)
    }
}

struct DisplaySet<'a>(&'a OrthoSet, &'a RootSystem);

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, r) in self.0.roots(self.1).enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// `r_node B`: reflect every member, replacing negative images by their
/// negatives. Fixes `{α_node}` and any `B` with `α_node ∈ B^⊥`.
pub fn act_node(rs: &RootSystem, node: Node, b: &OrthoSet) -> OrthoSet {
    let mut v: Vec<u16> = b
        .ids()
        .map(|id| rs.reflect_id(node, id).id as u16)
        .collect();
    v.sort_unstable();
    OrthoSet(v)
}

/// `r_δ B` for the reflection with positive root `delta`.
pub fn act_reflection(rs: &RootSystem, delta: RootId, b: &OrthoSet) -> OrthoSet {
    let mut v: Vec<u16> = b
        .ids()
        .map(|id| rs.reflect_by(delta, id).id as u16)
        .collect();
    v.sort_unstable();
    OrthoSet(v)
}

/// `|r_δ B \ B|`.
pub fn moved_count(rs: &RootSystem, delta: RootId, b: &OrthoSet) -> usize {
    b.ids()
        .filter(|&id| !b.contains(rs.reflect_by(delta, id).id))
        .count()
}

/// Nodes `i` with `α_i ⊥ β` for every `β ∈ B` (such `α_i` is never in `B`).
pub fn orthogonal_nodes(rs: &RootSystem, b: &OrthoSet) -> Vec<Node> {
    (0..rs.rank())
        .filter(|&i| b.ids().all(|id| rs.node_pairing(id, i) == 0))
        .collect()
}

/// Coxeter type of the root subsystem `Φ ∩ B^⊥`.
pub fn orthogonal_subsystem_type(rs: &RootSystem, b: &OrthoSet) -> Result<CoxeterType> {
    let perp: Vec<RootId> = (0..rs.len())
        .filter(|&r| b.ids().all(|x| rs.pairing(r, x) == 0))
        .collect();
    let members: HashSet<&Root> = perp.iter().map(|&r| rs.root(r)).collect();
    // simple roots of the subsystem: positive elements that are not a sum of
    // two positive elements
    let simple: Vec<RootId> = perp
        .iter()
        .copied()
        .filter(|&r| {
            !perp.iter().any(|&s| {
                s != r
                    && rs.height_of(s) < rs.height_of(r)
                    && members.contains(&(rs.root(r) - rs.root(s)))
            })
        })
        .collect();
    let gram: Vec<Vec<i32>> = simple
        .iter()
        .map(|&a| simple.iter().map(|&c| rs.pairing(a, c)).collect())
        .collect();
    let nodes: Vec<usize> = (0..simple.len()).collect();
    CoxeterType::of_subdiagram(&gram, &nodes)
}

/// A complete W-orbit with its edge table.
#[derive(Debug, Clone)]
pub struct OrbitData {
    rs: Arc<RootSystem>,
    seed: OrthoSet,
    members: Vec<OrthoSet>,
    index_of: HashMap<OrthoSet, usize>,
    /// `[member * rank + node]`: index of `r_node B`.
    edges: Vec<usize>,
    admissible: bool,
}

impl OrbitData {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn seed(&self) -> &OrthoSet {
        &self.seed
    }

    pub fn members(&self) -> &[OrthoSet] {
        &self.members
    }

    pub fn member(&self, k: usize) -> &OrthoSet {
        &self.members[k]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn index_of(&self, b: &OrthoSet) -> Option<usize> {
        self.index_of.get(b).copied()
    }

    /// Index of `r_node B` for member `k`.
    #[inline]
    pub fn neighbor(&self, k: usize, node: Node) -> usize {
        self.edges[k * self.rs.rank() + node]
    }

    pub fn is_fixed(&self, k: usize, node: Node) -> bool {
        self.neighbor(k, node) == k
    }

    /// Verdict of the defining admissibility criterion, computed at
    /// enumeration.
    pub fn admissible(&self) -> bool {
        self.admissible
    }

    /// `|W| / |orbit|` when the orbit is that of a connected type and the
    /// quotient is exact.
    pub fn stabilizer_order(&self) -> Option<u128> {
        let w = self.rs.dtype()?.weyl_order();
        let n = self.len() as u128;
        (w % n == 0).then_some(w / n)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut edges = Vec::new();
        for k in 0..self.len() {
            for i in 0..self.rank() {
                let to = self.neighbor(k, i);
                if to != k {
                    edges.push(serde_json::json!({"node": i + 1, "from": k, "to": to}));
                }
            }
        }
        let literals =
            |b: &OrthoSet| -> Vec<String> { b.roots(&self.rs).map(|r| r.to_string()).collect() };
        serde_json::json!({
            "diagram": self.rs.label(),
            "seed": literals(&self.seed),
            "size": self.len(),
            "admissible": self.admissible,
            "members": self.members.iter().map(literals).collect::<Vec<_>>(),
            "edges": edges,
        })
    }
}

/// Breadth-first closure of `seed` under the simple reflections, nodes tried
/// in ascending order.
pub fn enumerate_orbit(rs: Arc<RootSystem>, seed: OrthoSet) -> Result<OrbitData> {
    let rank = rs.rank();
    let mut members = vec![seed.clone()];
    let mut index_of = HashMap::from([(seed.clone(), 0usize)]);
    let mut edges = Vec::new();
    let mut k = 0;
    while k < members.len() {
        for i in 0..rank {
            let img = act_node(&rs, i, &members[k]);
            let idx = match index_of.get(&img) {
                Some(&idx) => idx,
                None => {
                    let idx = members.len();
                    if idx >= MAX_ORBIT {
                        return Err(Error::OrbitTooLarge(MAX_ORBIT));
                    }
                    index_of.insert(img.clone(), idx);
                    members.push(img);
                    idx
                }
            };
            edges.push(idx);
        }
        k += 1;
    }
    let mut orbit = OrbitData {
        rs,
        seed,
        members,
        index_of,
        edges,
        admissible: false,
    };
    orbit.admissible = is_admissible_def(&orbit);
    Ok(orbit)
}

/// Defining criterion: for every member `B`, non-adjacent distinct nodes
/// `i, j`, and `γ ∈ B` with `γ − α_i + α_j ∈ B`, require `r_i B = r_j B`.
pub fn is_admissible_def(orbit: &OrbitData) -> bool {
    def_violation(orbit).is_none()
}

/// First `(member, i, j, γ)` breaking the defining criterion.
pub fn def_violation(orbit: &OrbitData) -> Option<(usize, Node, Node, RootId)> {
    let rs = orbit.root_system();
    let n = rs.rank();
    // shift[(γ * n + i) * n + j] = id of γ − α_i + α_j
    let mut shift = vec![None; rs.len() * n * n];
    for g in 0..rs.len() {
        for i in 0..n {
            for j in 0..n {
                if i == j || rs.adjacent(i, j) {
                    continue;
                }
                let v = &(rs.root(g) - rs.root(rs.simple(i))) + rs.root(rs.simple(j));
                shift[(g * n + i) * n + j] = rs.id_of(&v);
            }
        }
    }
    for (k, b) in orbit.members().iter().enumerate() {
        for g in b.ids() {
            for i in 0..n {
                for j in 0..n {
                    if let Some(t) = shift[(g * n + i) * n + j] {
                        if b.contains(t) && orbit.neighbor(k, i) != orbit.neighbor(k, j) {
                            return Some((k, i, j, g));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Move-count criterion: every reflection of W moves 0, 1, 2 or 4 roots of
/// every member.
pub fn is_admissible_moves(orbit: &OrbitData) -> bool {
    moves_violation(orbit).is_none()
}

/// First `(member, reflection root, |rB \ B|)` with a forbidden count.
pub fn moves_violation(orbit: &OrbitData) -> Option<(usize, RootId, usize)> {
    let rs = orbit.root_system();
    for (k, b) in orbit.members().iter().enumerate() {
        for d in 0..rs.len() {
            let c = moved_count(rs, d, b);
            if !matches!(c, 0 | 1 | 2 | 4) {
                return Some((k, d, c));
            }
        }
    }
    None
}

/// Largest `|rB \ B|` over all members and reflections.
pub fn max_moved(orbit: &OrbitData) -> usize {
    let rs = orbit.root_system();
    orbit
        .members()
        .iter()
        .flat_map(|b| (0..rs.len()).map(move |d| moved_count(rs, d, b)))
        .max()
        .unwrap_or(0)
}

/// Checks the two height configurations that no orbit of orthogonal root
/// sets can contain:
/// 1. a node `i` and `β, γ ∈ B` with `(α_i,β) = 1`, `(α_i,γ) = −1`,
///    `ht β = ht γ + 1`;
/// 2. `β, γ ∈ B`, node `j` with `(α_j,β) = −1`, `(α_j,γ) = 1`,
///    `ht γ = ht β + 2`, together with a node `i ∼ j` with `α_i ∈ B^⊥`.
pub fn height_rule_violation(orbit: &OrbitData) -> Option<String> {
    let rs = orbit.root_system();
    let n = rs.rank();
    for b in orbit.members() {
        let perp = orthogonal_nodes(rs, b);
        for beta in b.ids() {
            for gamma in b.ids() {
                let (hb, hg) = (rs.height_of(beta), rs.height_of(gamma));
                for i in 0..n {
                    if rs.node_pairing(beta, i) == 1
                        && rs.node_pairing(gamma, i) == -1
                        && hb == hg + 1
                    {
                        return Some(format!(
                            "{}: node {} lowers and raises adjacent heights",
                            b.display(rs),
                            i + 1
                        ));
                    }
                }
                for j in 0..n {
                    if rs.node_pairing(beta, j) == -1
                        && rs.node_pairing(gamma, j) == 1
                        && hg == hb + 2
                        && perp.iter().any(|&i| rs.adjacent(i, j))
                    {
                        return Some(format!(
                            "{}: node {} with orthogonal neighbour",
                            b.display(rs),
                            j + 1
                        ));
                    }
                }
            }
        }
    }
    None
}

/// Given a reflection root `δ_r` and orthogonal roots `β, γ` both moved by
/// it, returns the positive root `δ` of a reflection `s` commuting with
/// `r_{δ_r}` such that `{β} = r s {γ}`.
pub fn other_reflection(
    rs: &RootSystem,
    delta_r: &Root,
    beta: &Root,
    gamma: &Root,
) -> Result<Root> {
    let pb = rs.inner_product(beta, delta_r)?;
    let pg = rs.inner_product(gamma, delta_r)?;
    if rs.inner_product(beta, gamma)? != 0 {
        return Err(Error::Precondition("β and γ are not orthogonal".into()));
    }
    if pb == 0 || pg == 0 {
        return Err(Error::Precondition("β and γ must both be moved".into()));
    }
    let sum = match (pb, pg) {
        (1, 1) => &(beta + gamma) - delta_r,
        (1, -1) => &(beta - gamma) - delta_r,
        (-1, 1) => &(beta - gamma) + delta_r,
        (-1, -1) => &(beta + gamma) + delta_r,
        _ => {
            return Err(Error::Precondition(format!(
                "unexpected pairings ({pb}, {pg})"
            )))
        }
    };
    let delta = if sum.is_negative() { -&sum } else { sum };
    if rs.id_of(&delta).is_none() {
        return Err(Error::Consistency(format!("{delta} is not a root")));
    }
    Ok(delta)
}

/// Every set of `size` mutually orthogonal positive roots.
pub fn all_orthosets(rs: &RootSystem, size: usize) -> Vec<OrthoSet> {
    fn extend(
        rs: &RootSystem,
        size: usize,
        start: usize,
        cur: &mut Vec<u16>,
        out: &mut Vec<OrthoSet>,
    ) {
        if cur.len() == size {
            out.push(OrthoSet(cur.clone()));
            return;
        }
        for r in start..rs.len() {
            if cur.iter().all(|&c| rs.pairing(c as usize, r) == 0) {
                cur.push(r as u16);
                extend(rs, size, r + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(rs, size, 0, &mut Vec::new(), &mut out);
    out
}

/// How a standard seed is selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeedKind {
    /// `{α_1, α_3, …, α_{2t−1}}` in type A.
    A,
    /// Type D: `{α_i, β_i | i = 1, 3, …, 2k−1} ∪ {α_i | i = 2k+1, …, 2t−1}`
    /// with `β_i = ε_i + ε_{i+1}`; `pairs = k`, `span = t`, `|B| = t + k`.
    DFamily { span: usize, pairs: usize },
    /// Type D, n even: `{α_1, α_3, …, α_{n−3}, α_n}`.
    DHalf,
    /// Type E row, with `variant` separating rows of equal size.
    E { variant: usize },
}

/// One seed row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableSeed {
    pub diagram: String,
    pub size: usize,
    /// Position among the rows of this diagram and size.
    pub variant: usize,
    pub kind: SeedKind,
    #[serde(skip)]
    pub roots: Vec<Root>,
}

impl TableSeed {
    pub fn orthoset(&self, rs: &RootSystem) -> Result<OrthoSet> {
        OrthoSet::from_roots(rs, &self.roots)
    }

    pub fn label(&self) -> String {
        format!("{} |B|={} v{}", self.diagram, self.size, variant_of(self))
    }
}

/// Type-D family seed with `span` ε-pairs of which `pairs` carry both roots.
pub fn d_family_seed(rs: &RootSystem, span: usize, pairs: usize) -> Result<Vec<Root>> {
    let dt = rs
        .dtype()
        .filter(|d| d.family() == Family::D)
        .ok_or_else(|| Error::InvalidSeed(format!("{} is not of type D", rs.label())))?;
    let n = dt.rank();
    if span == 0 || 2 * span > n || pairs > span {
        return Err(Error::InvalidSeed(format!(
            "D{n} family needs 1 ≤ t ≤ n/2 and k ≤ t (t = {span}, k = {pairs})"
        )));
    }
    let mut roots = Vec::new();
    for i in (1..2 * span).step_by(2) {
        roots.push(Root::simple(n, i - 1));
        if i < 2 * pairs {
            let mut x = vec![0; n];
            x[i - 1] = 1;
            x[i] = 1;
            roots.push(rs.from_epsilon(&x)?);
        }
    }
    Ok(roots)
}

/// Every seed row for `dtype`, in a fixed order.
pub fn seed_rows(rs: &RootSystem) -> Vec<TableSeed> {
    let dt = rs.dtype().expect("table rows need a connected type");
    let n = dt.rank();
    let name = dt.to_string();
    let mut rows = Vec::new();
    let mut push = |size: usize, kind: SeedKind, roots: Vec<Root>| {
        let variant = rows.iter().filter(|r: &&TableSeed| r.size == size).count();
        rows.push(TableSeed {
            diagram: name.clone(),
            size,
            variant,
            kind,
            roots,
        });
    };
    match dt.family() {
        Family::A => {
            for t in 1..=n.div_ceil(2) {
                let roots = (0..t).map(|k| Root::simple(n, 2 * k)).collect();
                push(t, SeedKind::A, roots);
            }
        }
        Family::D => {
            // sizes ascending; within a size: singles, half, pairs, then mixed
            let mut specs: Vec<(usize, usize, SeedKind)> = Vec::new();
            for t in 1..=n / 2 {
                for k in 0..=t {
                    specs.push((
                        t + k,
                        order_key(k, t),
                        SeedKind::DFamily { span: t, pairs: k },
                    ));
                }
            }
            if n.is_multiple_of(2) {
                specs.push((n / 2, 1, SeedKind::DHalf));
            }
            specs.sort_by_key(|&(size, key, kind)| (size, key, format!("{kind:?}")));
            for (size, _, kind) in specs {
                let roots = match kind {
                    SeedKind::DFamily { span, pairs } => {
                        d_family_seed(rs, span, pairs).expect("valid span")
                    }
                    _ => {
                        let mut v: Vec<Root> =
                            (0..n / 2 - 1).map(|k| Root::simple(n, 2 * k)).collect();
                        v.push(Root::simple(n, n - 1));
                        v
                    }
                };
                push(size, kind, roots);
            }
        }
        Family::E => {
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for literals in crate::tables::e_seed_literals(dt) {
                let roots: Vec<Root> = literals
                    .iter()
                    .map(|l| crate::parse::parse_root(rs, l).expect("fixture seeds are roots"))
                    .collect();
                let size = roots.len();
                let v = seen.entry(size).or_default();
                push(size, SeedKind::E { variant: *v }, roots);
                *v += 1;
            }
        }
    }
    rows
}

fn order_key(pairs: usize, span: usize) -> usize {
    if pairs == 0 {
        0
    } else if pairs == span {
        2
    } else {
        3
    }
}

/// The standard seed of the given size and variant. For type D, variant 0 is
/// the single-root family, 1 the second class `{α_1, …, α_{n−3}, α_n}` and 2
/// the paired family; mixed type-D seeds follow in increasing pair count.
pub fn seed_from_table(rs: &RootSystem, size: usize, variant: usize) -> Result<TableSeed> {
    let rows = seed_rows(rs);
    rows.iter()
        .find(|r| r.size == size && variant_of(r) == variant)
        .cloned()
        .ok_or_else(|| Error::UnknownTableRow {
            row: format!("{} |B|={size} variant {variant}", rs.label()),
            valid: rows
                .iter()
                .map(|r| format!("({}, {})", r.size, variant_of(r)))
                .collect::<Vec<_>>()
                .join(" "),
        })
}

/// Public variant number of a row (see [`seed_from_table`]).
pub fn variant_of(row: &TableSeed) -> usize {
    match row.kind {
        SeedKind::A => 0,
        SeedKind::E { variant } => variant,
        SeedKind::DHalf => 1,
        SeedKind::DFamily { span, pairs } => match order_key(pairs, span) {
            0 => 0,
            2 => 2,
            _ => 2 + pairs,
        },
    }
}

/// The W-orbit of a root set given as root vectors.
pub fn orbit_of_roots(rs: Arc<RootSystem>, roots: &[Root]) -> Result<OrbitData> {
    let seed = OrthoSet::from_roots(&rs, roots)?;
    enumerate_orbit(rs, seed)
}

/// Convenience: build the system and enumerate the orbit of a table seed.
pub fn table_orbit(dtype: DiagramType, size: usize, variant: usize) -> Result<OrbitData> {
    let rs = Arc::new(RootSystem::new(dtype));
    let row = seed_from_table(&rs, size, variant)?;
    orbit_of_roots(rs, &row.roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::new(s.parse().unwrap()))
    }

    fn set(rs: &RootSystem, roots: &[Vec<i32>]) -> OrthoSet {
        OrthoSet::from_roots(
            rs,
            &roots.iter().cloned().map(Root::new).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn rejects_non_orthogonal() {
        let rs = sys("A3");
        let r = OrthoSet::from_roots(&rs, &[Root::new(vec![1, 0, 0]), Root::new(vec![0, 1, 0])]);
        assert!(matches!(r, Err(Error::NotOrthogonal(_))));
        let r = OrthoSet::from_roots(&rs, &[Root::new(vec![1, 0, 1]), Root::new(vec![0, 1, 0])]);
        assert!(matches!(r, Err(Error::NotARoot { .. })));
    }

    #[test]
    fn act_node_examples() {
        let rs = sys("A3");
        let b = set(&rs, &[vec![1, 0, 0]]);
        assert_eq!(act_node(&rs, 0, &b), b);
        let b = set(&rs, &[vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(
            act_node(&rs, 1, &b),
            set(&rs, &[vec![1, 1, 0], vec![0, 1, 1]])
        );
        // α_2 ⊥ {α_1+α_2+α_3}? no: (α_2, α_1+α_2+α_3) = 0
        let hr = set(&rs, &[vec![1, 1, 1]]);
        assert_eq!(act_node(&rs, 1, &hr), hr);
    }

    #[test]
    fn reflection_moving_three_roots_in_e6() {
        let rs = sys("E6");
        let b = set(
            &rs,
            &[
                vec![0, 1, 0, 0, 0, 0],
                vec![0, 0, 1, 0, 0, 0],
                vec![0, 0, 0, 0, 1, 0],
            ],
        );
        assert_eq!(moved_count(&rs, rs.simple(3), &b), 3);
        assert_eq!(act_reflection(&rs, rs.simple(1), &b), b);
        assert_ne!(act_reflection(&rs, rs.simple(0), &b), b);
    }

    #[test]
    fn small_orbits() {
        let o = table_orbit(DiagramType::a(3), 1, 0).unwrap();
        assert_eq!(o.len(), 6);
        assert!(o.admissible());
        assert_eq!(o.stabilizer_order(), Some(4));
        let o = table_orbit(DiagramType::e(6), 4, 0).unwrap();
        assert_eq!(o.len(), 135);
        for k in 0..o.len() {
            for i in 0..o.rank() {
                assert_eq!(o.neighbor(o.neighbor(k, i), i), k);
            }
        }
    }

    #[test]
    fn d5_triple_is_not_admissible() {
        let rs = sys("D5");
        let o = orbit_of_roots(
            rs,
            &[
                Root::new(vec![1, 1, 1, 0, 0]),
                Root::new(vec![0, 1, 1, 1, 0]),
                Root::new(vec![1, 1, 1, 1, 1]),
            ],
        )
        .unwrap();
        assert!(!is_admissible_def(&o));
        assert!(!is_admissible_moves(&o));
    }

    #[test]
    fn single_root_orbits_are_admissible() {
        for t in ["A4", "D6", "E6", "E7", "E8"] {
            let dt: DiagramType = t.parse().unwrap();
            let o = table_orbit(dt, 1, 0).unwrap();
            assert_eq!(o.len(), dt.positive_root_count());
            assert!(is_admissible_def(&o) && is_admissible_moves(&o), "{t}");
        }
    }

    #[test]
    fn table_seeds() {
        let a5 = sys("A5");
        assert_eq!(
            seed_from_table(&a5, 2, 0).unwrap().roots,
            vec![Root::simple(5, 0), Root::simple(5, 2)]
        );
        let d6 = sys("D6");
        assert_eq!(
            seed_from_table(&d6, 3, 1).unwrap().roots,
            vec![Root::simple(6, 0), Root::simple(6, 2), Root::simple(6, 5)]
        );
        let e7 = sys("E7");
        let row = seed_from_table(&e7, 7, 0).unwrap();
        assert!(row.orthoset(&e7).is_ok());
        let err = seed_from_table(&e7, 8, 0).unwrap_err();
        assert!(matches!(err, Error::UnknownTableRow { .. }), "{err}");
        for name in ["A6", "D4", "D5", "D8", "E6", "E7", "E8"] {
            let rs = sys(name);
            for row in seed_rows(&rs) {
                let b = row.orthoset(&rs).unwrap();
                assert_eq!(b.len(), row.size, "{}", row.label());
            }
        }
    }

    #[test]
    fn orthogonal_nodes_of_highest_root() {
        let rs = sys("E8");
        let hr = OrthoSet::new(&rs, [rs.highest_root().unwrap()]).unwrap();
        assert_eq!(orthogonal_nodes(&rs, &hr), vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(
            orthogonal_subsystem_type(&rs, &hr).unwrap().to_string(),
            "E7"
        );
    }

    #[test]
    fn other_reflection_table() {
        let rs = sys("D4");
        // not orthogonal
        let (beta, gamma) = (Root::simple(4, 0), Root::simple(4, 1));
        assert!(other_reflection(&rs, &Root::new(vec![1, 1, 1, 0]), &beta, &gamma).is_err());
        // α_1 and α_3 are orthogonal and both moved by r_2
        let (b, g) = (Root::simple(4, 0), Root::simple(4, 2));
        let dr = Root::simple(4, 1);
        let d = other_reflection(&rs, &dr, &b, &g).unwrap();
        assert_eq!(d, Root::new(vec![1, 1, 1, 0]));
        assert_eq!(rs.inner_product(&d, &dr).unwrap(), 0);
        let sg = rs.reflect_general(&d, &g).unwrap();
        let rsg = rs.reflect_general(&dr, &sg).unwrap();
        assert!(rsg == b || rsg == -&b);
        assert!(other_reflection(&rs, &dr, &b, &Root::simple(4, 3)).is_ok());
        assert!(matches!(
            other_reflection(&rs, &Root::simple(4, 3), &b, &g),
            Err(Error::Precondition(_))
        ));
    }
}
