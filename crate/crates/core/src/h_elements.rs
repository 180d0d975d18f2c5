//! Chain words `v_{B,i}` and the Hecke elements `h_{B,i} = v⁻¹ s_i v`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::CoxeterGroup;
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, PolyM};
use crate::poset::{EdgeClass, MonoidalPoset};
use crate::root_system::{Node, Root, RootSystem};

/// Name of the deterministic chain policy, reported with every chain.
pub const CHAIN_POLICY: &str = "lowest-raising-node";

/// A chain word `v_{B,i} = s_{w_1} ⋯ s_{w_L}` for the pair `(member, node)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainWord {
    pub member: usize,
    pub node: Node,
    pub word: Vec<Node>,
}

/// One recursion step from state `(k, i)` through raising node `j`:
/// returns the letters contributed and the next state.
fn chain_step(p: &MonoidalPoset, k: usize, i: Node, j: Node) -> Result<(Vec<Node>, usize, Node)> {
    let rs = p.root_system();
    let up = p.neighbor(k, j);
    if !rs.adjacent(i, j) {
        if p.class(up, i) != EdgeClass::FixesPerp {
            return Err(Error::WellDefinedness(format!(
                "α_{} not orthogonal to r_{} of member {k}",
                i + 1,
                j + 1
            )));
        }
        Ok((vec![j], up, i))
    } else {
        let sum = &Root::simple(rs.rank(), i) + &Root::simple(rs.rank(), j);
        let orth = p
            .orbit()
            .member(up)
            .roots(rs)
            .all(|b| rs.inner_product(b, &sum) == Ok(0));
        let next = p.neighbor(up, i);
        if !orth || p.class(next, j) != EdgeClass::FixesPerp {
            return Err(Error::WellDefinedness(format!(
                "guard failed for member {k}, i = {}, j = {}",
                i + 1,
                j + 1
            )));
        }
        Ok((vec![j, i], next, j))
    }
}

/// The deterministic chain: lowest raising node at every step.
pub fn v_chain(p: &MonoidalPoset, k: usize, i: Node) -> Result<ChainWord> {
    if p.class(k, i) != EdgeClass::FixesPerp {
        return Err(Error::Precondition(format!(
            "α_{} is not orthogonal to member {k}",
            i + 1
        )));
    }
    let (mut cur, mut node) = (k, i);
    let mut word = Vec::new();
    while cur != p.b0() {
        let j = p
            .parent_node(cur)
            .ok_or_else(|| Error::Consistency(format!("member {cur} has no raising node")))?;
        let (letters, next, n2) = chain_step(p, cur, node, j)?;
        word.extend(letters);
        cur = next;
        node = n2;
        if word.len() > p.level(k) as usize {
            return Err(Error::Consistency(format!(
                "chain for member {k} exceeds its level"
            )));
        }
    }
    if word.len() != p.level(k) as usize {
        return Err(Error::Consistency(format!(
            "chain for member {k} has length {} at level {}",
            word.len(),
            p.level(k)
        )));
    }
    Ok(ChainWord {
        member: k,
        node: i,
        word,
    })
}

/// `v⁻¹(α_i)` for `v = s_{w_1} ⋯ s_{w_L}`: reflections applied from `w_1`.
pub fn conjugate_root(rs: &RootSystem, word: &[Node], i: Node) -> Root {
    word.iter()
        .fold(Root::simple(rs.rank(), i), |v, &n| rs.reflect(n, &v))
}

/// Node `h` with `v⁻¹ s_i v = s_h`, required to lie in `c_nodes`.
pub fn h_from_word(rs: &RootSystem, c_nodes: &[Node], word: &[Node], i: Node) -> Result<Node> {
    let r = conjugate_root(rs, word, i);
    let pos = if r.is_negative() { -&r } else { r };
    match rs.id_of(&pos).and_then(|id| rs.as_simple(id)) {
        Some(h) if c_nodes.contains(&h) => Ok(h),
        _ => Err(Error::WellDefinedness(format!(
            "conjugate of s_{} by {:?} has root {pos}, not a generator of C",
            i + 1,
            word.iter().map(|n| n + 1).collect::<Vec<_>>()
        ))),
    }
}

pub fn h_value(p: &MonoidalPoset, k: usize, i: Node) -> Result<Node> {
    let chain = v_chain(p, k, i)?;
    h_from_word(p.root_system(), p.c_nodes(), &chain.word, i)
}

/// `h_{B,i}` for every member and every node orthogonal to it.
#[derive(Debug, Clone)]
pub struct HTable {
    rank: usize,
    entries: Vec<Option<Node>>,
    chains: Vec<Option<Vec<Node>>>,
}

pub fn build_h_table(p: &MonoidalPoset) -> Result<HTable> {
    let rank = p.rank();
    let cells: Vec<(Option<Node>, Option<Vec<Node>>)> = (0..p.len() * rank)
        .into_par_iter()
        .map(|x| {
            let (k, i) = (x / rank, x % rank);
            if p.class(k, i) != EdgeClass::FixesPerp {
                return Ok((None, None));
            }
            let chain = v_chain(p, k, i)?;
            let h = h_from_word(p.root_system(), p.c_nodes(), &chain.word, i)?;
            Ok((Some(h), Some(chain.word)))
        })
        .collect::<Result<_>>()?;
    let (entries, chains) = cells.into_iter().unzip();
    Ok(HTable {
        rank,
        entries,
        chains,
    })
}

impl HTable {
    pub fn get(&self, k: usize, i: Node) -> Option<Node> {
        self.entries[k * self.rank + i]
    }

    pub fn chain(&self, k: usize, i: Node) -> Option<&[Node]> {
        self.chains[k * self.rank + i].as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Node, Node)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(x, h)| h.map(|h| (x / self.rank, x % self.rank, h)))
    }

    /// Overwrites one entry. Intended for mutation tests only.
    pub fn corrupt(&mut self, k: usize, i: Node, h: Node) {
        self.entries[k * self.rank + i] = Some(h);
    }

    /// `[{"member", "i", "h", "chain", "chain_policy"}]`, nodes 1-based.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.iter()
                .map(|(k, i, h)| {
                    let chain: Vec<Node> = self.chain(k, i).unwrap_or(&[]).iter().map(|n| n + 1).collect();
                    serde_json::json!({
                        "member": k, "i": i + 1, "h": h + 1, "chain": chain, "chain_policy": CHAIN_POLICY,
                    })
                })
                .collect(),
        )
    }
}

/// How explicit chains are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainBudget {
    /// Orbits up to this many members get every chain enumerated.
    pub exhaustive_members: usize,
    /// Cap on explicit chains per orbit before falling back to sampling.
    pub max_chains: u64,
    /// Sampled chains per `(B, i)` beyond the exhaustive range.
    pub samples: usize,
    pub seed: u64,
}

impl Default for ChainBudget {
    fn default() -> Self {
        Self {
            exhaustive_members: 1000,
            max_chains: 5_000_000,
            samples: 100,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct WellDefinedReport {
    pub pairs: usize,
    /// Total number of admissible chains, counted by the state recursion.
    pub total_chains: u128,
    /// Chains whose words were built and conjugated explicitly.
    pub explicit_chains: u64,
    pub exhaustive: bool,
    pub failures: Vec<String>,
}

impl WellDefinedReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Raising nodes at `k`, ascending.
fn raisers(p: &MonoidalPoset, k: usize) -> Vec<Node> {
    p.raising_nodes(k).collect()
}

/// Checks that `h_{B,i}` does not depend on the chain. Every admissible
/// chain is covered by a recursion over states `(B, i)`: each step carries
/// the conjugated root exactly, so the set of values reachable from a state
/// is the union over its raising nodes. Explicit words are additionally
/// enumerated (small orbits) or sampled with every first step covered.
pub fn verify_h_well_defined(
    p: &MonoidalPoset,
    ht: &HTable,
    budget: ChainBudget,
) -> WellDefinedReport {
    let rank = p.rank();
    let mut rep = WellDefinedReport::default();
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&k| p.level(k));
    let mut values = vec![0u32; p.len() * rank];
    let mut counts = vec![0u128; p.len() * rank];
    for &k in &order {
        for i in 0..rank {
            if p.class(k, i) != EdgeClass::FixesPerp {
                continue;
            }
            let x = k * rank + i;
            if k == p.b0() {
                values[x] = 1 << i;
                counts[x] = 1;
                continue;
            }
            for j in raisers(p, k) {
                match chain_step(p, k, i, j) {
                    Ok((letters, next, n2)) => {
                        if p.level(next) as usize + letters.len() != p.level(k) as usize {
                            rep.failures
                                .push(format!("step from member {k} via {} skips a level", j + 1));
                            continue;
                        }
                        values[x] |= values[next * rank + n2];
                        counts[x] = counts[x].saturating_add(counts[next * rank + n2]);
                    }
                    Err(e) => rep.failures.push(e.to_string()),
                }
            }
        }
    }
    for (k, i, h) in ht.iter() {
        rep.pairs += 1;
        rep.total_chains = rep.total_chains.saturating_add(counts[k * rank + i]);
        let v = values[k * rank + i];
        if v != 1 << h {
            let got: Vec<Node> = (0..rank)
                .filter(|b| v >> b & 1 == 1)
                .map(|b| b + 1)
                .collect();
            rep.failures.push(format!(
                "member {k}, i = {}: chains give {got:?}, table {}",
                i + 1,
                h + 1
            ));
        }
    }

    let explicit_total: u128 = ht.iter().map(|(k, i, _)| counts[k * rank + i]).sum();
    rep.exhaustive =
        p.len() <= budget.exhaustive_members && explicit_total <= budget.max_chains as u128;
    let rs = p.root_system();
    let c_nodes = p.c_nodes();
    let pairs: Vec<(usize, Node, Node)> = ht.iter().collect();
    let results: Vec<(u64, Vec<String>)> = pairs
        .par_iter()
        .map(|&(k, i, h)| {
            let mut n = 0u64;
            let mut bad = Vec::new();
            let mut check = |word: &[Node]| {
                n += 1;
                match h_from_word(rs, c_nodes, word, i) {
                    Ok(x) if x == h => {}
                    Ok(x) => bad.push(format!(
                        "member {k}, i = {}: chain gives {}, table {}",
                        i + 1,
                        x + 1,
                        h + 1
                    )),
                    Err(e) => bad.push(e.to_string()),
                }
            };
            if rep.exhaustive {
                let mut word = Vec::new();
                enumerate_chains(p, k, i, &mut word, &mut check);
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ ((k as u64) << 8 | i as u64));
                let first = raisers(p, k);
                if k == p.b0() {
                    check(&[]);
                }
                let per = budget.samples.div_ceil(first.len().max(1));
                for &j in &first {
                    for _ in 0..per {
                        if let Some(word) = sample_chain(p, k, i, j, &mut rng) {
                            check(&word);
                        }
                    }
                }
            }
            (n, bad)
        })
        .collect();
    for (n, bad) in results {
        rep.explicit_chains += n;
        rep.failures.extend(bad);
    }
    rep.failures.truncate(64);
    rep
}

fn enumerate_chains(
    p: &MonoidalPoset,
    k: usize,
    i: Node,
    word: &mut Vec<Node>,
    f: &mut impl FnMut(&[Node]),
) {
    if k == p.b0() {
        f(word);
        return;
    }
    for j in raisers(p, k) {
        if let Ok((letters, next, n2)) = chain_step(p, k, i, j) {
            let len = word.len();
            word.extend(letters);
            enumerate_chains(p, next, n2, word, f);
            word.truncate(len);
        }
    }
}

fn sample_chain(
    p: &MonoidalPoset,
    k: usize,
    i: Node,
    first: Node,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Node>> {
    let (mut word, mut cur, mut node) = {
        let (letters, next, n2) = chain_step(p, k, i, first).ok()?;
        (letters, next, n2)
    };
    while cur != p.b0() {
        let js = raisers(p, cur);
        let j = *js.choose(rng)?;
        let (letters, next, n2) = chain_step(p, cur, node, j).ok()?;
        word.extend(letters);
        cur = next;
        node = n2;
    }
    Some(word)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Quadratic,
    Commutation,
    Braid,
    CommutingStep,
    AdjacentStep,
    Surjectivity,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct HRelationReport {
    pub checks: u64,
    pub failures: Vec<(Relation, String)>,
}

impl HRelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The Hecke algebra of type `C` for a poset.
pub fn c_algebra(p: &MonoidalPoset) -> Result<HeckeAlgebra> {
    Ok(HeckeAlgebra::new(Arc::new(CoxeterGroup::new(
        p.root_system().gram(),
        p.c_nodes(),
    )?)))
}

/// Quadratic, commutation and braid relations among the `h_{B,i}`, their
/// behaviour along edges, and surjectivity onto the generators of `C`.
pub fn verify_h_relations(p: &MonoidalPoset, ht: &HTable) -> Result<HRelationReport> {
    let alg = c_algebra(p)?;
    let rs = p.root_system();
    let rank = p.rank();
    let one = alg.one();
    let m = PolyM::m();
    let results: Vec<HRelationReport> = (0..p.len())
        .into_par_iter()
        .map(|k| {
            let mut rep = HRelationReport::default();
            let mut fail = |r: Relation, s: String| rep.failures.push((r, s));
            for i in 0..rank {
                let Some(hi) = ht.get(k, i) else { continue };
                let ti = alg.hecke_gen(hi).expect("table entries lie in C");
                rep.checks += 1;
                if alg.hecke_mul(&ti, &ti) != one.sub(&ti.scale(&m)) {
                    fail(Relation::Quadratic, format!("member {k}, i = {}", i + 1));
                }
                for j in 0..rank {
                    if j == i {
                        continue;
                    }
                    let adj = rs.adjacent(i, j);
                    if let Some(hj) = ht.get(k, j) {
                        rep.checks += 1;
                        let tj = alg.hecke_gen(hj).expect("table entries lie in C");
                        let ok = if adj {
                            let l = alg.hecke_mul(&alg.hecke_mul(&ti, &tj), &ti);
                            let r = alg.hecke_mul(&alg.hecke_mul(&tj, &ti), &tj);
                            l == r
                        } else {
                            alg.hecke_mul(&ti, &tj) == alg.hecke_mul(&tj, &ti)
                        };
                        if !ok {
                            let rel = if adj {
                                Relation::Braid
                            } else {
                                Relation::Commutation
                            };
                            fail(rel, format!("member {k}, i = {}, j = {}", i + 1, j + 1));
                        }
                    }
                    if !adj {
                        rep.checks += 1;
                        let up = p.neighbor(k, j);
                        if ht.get(up, i) != Some(hi) {
                            fail(
                                Relation::CommutingStep,
                                format!("member {k}, i = {}, j = {}", i + 1, j + 1),
                            );
                        }
                    } else if p.class(k, j) != EdgeClass::FixesPerp {
                        rep.checks += 1;
                        let target = p.neighbor(p.neighbor(k, j), i);
                        if ht.get(target, j) != Some(hi) {
                            fail(
                                Relation::AdjacentStep,
                                format!("member {k}, i = {}, j = {}", i + 1, j + 1),
                            );
                        }
                    }
                }
            }
            rep
        })
        .collect();
    let mut rep = HRelationReport::default();
    for r in results {
        rep.checks += r.checks;
        rep.failures.extend(r.failures);
    }
    let minimal = p.minimal_members();
    for &j in p.c_nodes() {
        rep.checks += 1;
        let hit = minimal
            .iter()
            .any(|&b| (0..rank).any(|k| ht.get(b, k) == Some(j)));
        if !hit {
            rep.failures.push((
                Relation::Surjectivity,
                format!("s_{} not attained at a minimal member", j + 1),
            ));
        }
    }
    rep.failures.truncate(64);
    Ok(rep)
}
