//! The Weyl group of a (possibly reducible, possibly empty) subdiagram,
//! with elements keyed by the images of the simple roots.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::diagram::CoxeterType;
use crate::error::{Error, Result};
use crate::root_system::{Node, Root, RootSystem, SignedRoot};

/// Which side a descent is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Group element stored as the signed images `w(α_k)` of the simple roots,
/// encoded `2·id + negative`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u16>);

fn enc(s: SignedRoot) -> u16 {
    (s.id as u16) << 1 | s.negative as u16
}

fn dec(x: u16) -> SignedRoot {
    SignedRoot {
        id: (x >> 1) as usize,
        negative: x & 1 == 1,
    }
}

/// `W(C)` for a node set `C` of an ambient diagram. Local generator `k`
/// corresponds to ambient node `nodes[k]`.
#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    rs: RootSystem,
    nodes: Vec<Node>,
    ctype: CoxeterType,
}

impl CoxeterGroup {
    /// The parabolic subgroup on `nodes` of a diagram with Gram matrix `gram`.
    pub fn new(gram: &[Vec<i32>], nodes: &[Node]) -> Result<Self> {
        let mut nodes = nodes.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        if let Some(&bad) = nodes.iter().find(|&&n| n >= gram.len()) {
            return Err(Error::Precondition(format!(
                "node {} outside the diagram",
                bad + 1
            )));
        }
        let sub: Vec<Vec<i32>> = nodes
            .iter()
            .map(|&a| nodes.iter().map(|&b| gram[a][b]).collect())
            .collect();
        let ctype = CoxeterType::of_subdiagram(gram, &nodes)?;
        let rs = RootSystem::from_gram(ctype.to_string(), sub)?;
        Ok(Self { rs, nodes, ctype })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    /// Ambient nodes, ascending.
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn coxeter_type(&self) -> &CoxeterType {
        &self.ctype
    }

    /// Local index of an ambient node.
    pub fn local(&self, node: Node) -> Option<usize> {
        self.nodes.binary_search(&node).ok()
    }

    pub fn ambient(&self, local: usize) -> Node {
        self.nodes[local]
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(
            (0..self.rank())
                .map(|k| {
                    enc(SignedRoot {
                        id: self.rs.simple(k),
                        negative: false,
                    })
                })
                .collect(),
        )
    }

    /// Simple reflection for local generator `k`.
    pub fn gen(&self, k: usize) -> GroupElement {
        GroupElement(
            (0..self.rank())
                .map(|l| enc(self.rs.reflect_id(k, self.rs.simple(l))))
                .collect(),
        )
    }

    /// Simple reflection for an ambient node of `C`.
    pub fn gen_node(&self, node: Node) -> Result<GroupElement> {
        self.local(node)
            .map(|k| self.gen(k))
            .ok_or(Error::NodeNotInC { node: node + 1 })
    }

    /// `w(α_k)` as a vector.
    pub fn image(&self, w: &GroupElement, k: usize) -> Root {
        self.rs.signed_root(dec(w.0[k]))
    }

    /// `w(v)` for an arbitrary lattice vector `v`.
    pub fn apply(&self, w: &GroupElement, v: &Root) -> Root {
        let mut out = Root::zero(self.rank());
        for (k, &c) in v.coeffs().iter().enumerate() {
            if c != 0 {
                out = &out + &(c * &self.image(w, k));
            }
        }
        out
    }

    fn element_from_images(&self, images: impl Iterator<Item = Root>) -> GroupElement {
        GroupElement(
            images
                .map(|r| {
                    enc(self
                        .rs
                        .signed_id_of(&r)
                        .expect("Weyl group maps roots to roots"))
                })
                .collect(),
        )
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.element_from_images((0..self.rank()).map(|k| self.apply(a, &self.image(b, k))))
    }

    /// `w·s_k`.
    pub fn mul_gen(&self, w: &GroupElement, k: usize) -> GroupElement {
        let wk = self.image(w, k);
        self.element_from_images((0..self.rank()).map(|l| {
            let c = self.rs.gram()[k][l];
            &self.image(w, l) - &(c * &wk)
        }))
    }

    /// `s_k·w`.
    pub fn gen_mul(&self, k: usize, w: &GroupElement) -> GroupElement {
        GroupElement(
            w.0.iter()
                .map(|&x| {
                    let s = dec(x);
                    let r = self.rs.reflect_id(k, s.id);
                    enc(SignedRoot {
                        id: r.id,
                        negative: r.negative != s.negative,
                    })
                })
                .collect(),
        )
    }

    pub fn inv(&self, w: &GroupElement) -> GroupElement {
        let mut out = self.identity();
        for k in self.reduced_word_local(w) {
            out = self.gen_mul(k, &out);
        }
        out
    }

    pub fn is_identity(&self, w: &GroupElement) -> bool {
        *w == self.identity()
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &GroupElement) -> usize {
        self.rs
            .positive_roots()
            .iter()
            .filter(|r| self.apply(w, r).is_negative())
            .count()
    }

    /// Descent at local generator `k`: right iff `w(α_k) < 0`, left iff
    /// `w⁻¹(α_k) < 0`.
    pub fn descent_local(&self, w: &GroupElement, k: usize, side: Side) -> bool {
        match side {
            Side::Right => dec(w.0[k]).negative,
            Side::Left => dec(self.inv(w).0[k]).negative,
        }
    }

    /// Descent at an ambient node of `C`.
    pub fn descent(&self, w: &GroupElement, node: Node, side: Side) -> Result<bool> {
        let k = self
            .local(node)
            .ok_or(Error::NodeNotInC { node: node + 1 })?;
        Ok(self.descent_local(w, k, side))
    }

    /// Reduced word in local generators: greedy right descents, lowest
    /// index first, returned left to right.
    pub fn reduced_word_local(&self, w: &GroupElement) -> Vec<usize> {
        let mut w = w.clone();
        let mut rev = Vec::new();
        while let Some(k) = (0..self.rank()).find(|&k| dec(w.0[k]).negative) {
            rev.push(k);
            w = self.mul_gen(&w, k);
        }
        rev.reverse();
        rev
    }

    /// Reduced word in ambient nodes.
    pub fn reduced_word(&self, w: &GroupElement) -> Vec<Node> {
        self.reduced_word_local(w)
            .into_iter()
            .map(|k| self.nodes[k])
            .collect()
    }

    /// Element of a word in ambient nodes.
    pub fn from_word(&self, word: &[Node]) -> Result<GroupElement> {
        let mut w = self.identity();
        for &n in word {
            let k = self.local(n).ok_or(Error::NodeNotInC { node: n + 1 })?;
            w = self.mul_gen(&w, k);
        }
        Ok(w)
    }

    /// All elements, breadth-first by length, when `|W| ≤ limit`.
    pub fn elements(&self, limit: usize) -> Option<Vec<GroupElement>> {
        let e = self.identity();
        let mut seen = HashSet::from([e.clone()]);
        let mut out = vec![e.clone()];
        let mut queue = VecDeque::from([e]);
        while let Some(w) = queue.pop_front() {
            for k in 0..self.rank() {
                let v = self.mul_gen(&w, k);
                if seen.insert(v.clone()) {
                    if out.len() >= limit {
                        return None;
                    }
                    out.push(v.clone());
                    queue.push_back(v);
                }
            }
        }
        Some(out)
    }

    pub fn display<'a>(&'a self, w: &'a GroupElement) -> impl fmt::Display + 'a {
        DisplayWord(self.reduced_word(w))
    }
}

struct DisplayWord(Vec<Node>);

impl fmt::Display for DisplayWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (k, n) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "s{}", n + 1)?;
        }
        Ok(())
    }
}
