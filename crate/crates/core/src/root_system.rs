//! Positive root systems of simply laced diagrams in simple-root coordinates.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::diagram::{DiagramType, Family};
use crate::error::{Error, Result};

/// 0-based diagram node (Bourbaki node `k` is `k - 1`).
pub type Node = usize;

/// Index of a positive root in canonical order.
pub type RootId = usize;

/// Guard against non-finite Gram matrices.
const MAX_ROOTS: usize = 10_000;

/// Integer vector over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Root(Vec<i32>);

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Self(coeffs)
    }

    pub fn simple(rank: usize, node: Node) -> Self {
        let mut v = vec![0; rank];
        v[node] = 1;
        Self(v)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Sum of the coefficients.
    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Nonzero with all coefficients ≥ 0.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Root {
    type Output = Root;
    fn sub(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Root> for i32 {
    type Output = Root;
    fn mul(self, rhs: &Root) -> Root {
        Root(rhs.0.iter().map(|a| self * a).collect())
    }
}

impl fmt::Display for Root {
    /// Renders as `a1+2*a4`, the input grammar of the CLI.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}a{}", k + 1)?;
            } else {
                write!(f, "{sign}{mag}*a{}", k + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A root written as a positive root up to sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub id: RootId,
    pub negative: bool,
}

/// Positive system of a simply laced (finite type) diagram with precomputed
/// reflection tables.
#[derive(Debug, Clone)]
pub struct RootSystem {
    label: String,
    dtype: Option<DiagramType>,
    gram: Vec<Vec<i32>>,
    roots: Vec<Root>,
    heights: Vec<i32>,
    lookup: HashMap<Root, RootId>,
    simple: Vec<RootId>,
    /// `[id * rank + node]`: `(α_node, root)`.
    node_pairing: Vec<i32>,
    /// `[id * rank + node]`: `r_node(root)`.
    node_image: Vec<SignedRoot>,
    /// `[a * len + b]`: `(root_a, root_b)`.
    pairing: Vec<i32>,
    /// `[delta * len + r]`: reflection of root `r` in root `delta`.
    image: Vec<SignedRoot>,
}

impl RootSystem {
    pub fn new(dtype: DiagramType) -> Self {
        let mut rs = Self::from_gram(dtype.to_string(), dtype.gram())
            .expect("A/D/E Gram matrices are of finite type");
        rs.dtype = Some(dtype);
        rs
    }

    /// Builds the positive system of an arbitrary simply laced Gram matrix
    /// (possibly disconnected or of rank 0) by raising closure from the
    /// simple roots.
    pub fn from_gram(label: impl Into<String>, gram: Vec<Vec<i32>>) -> Result<Self> {
        let label = label.into();
        let rank = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: row.len(),
                });
            }
            for (j, &g) in row.iter().enumerate() {
                let ok = if i == j {
                    g == 2
                } else {
                    (g == 0 || g == -1) && gram[j][i] == g
                };
                if !ok {
                    return Err(Error::UnsupportedDiagram(format!(
                        "{label}: Gram entry ({i},{j}) = {g} is not simply laced"
                    )));
                }
            }
        }

        let ip = |a: &Root, b: &Root| -> i32 {
            let mut s = 0;
            for (&ai, row) in a.0.iter().zip(gram.iter()).take(rank) {
                if ai == 0 {
                    continue;
                }
                for (&g, &bj) in row.iter().zip(b.0.iter()).take(rank) {
                    s += ai * g * bj;
                }
            }
            s
        };

        let mut found: Vec<Root> = (0..rank).map(|i| Root::simple(rank, i)).collect();
        let mut seen: std::collections::HashSet<Root> = found.iter().cloned().collect();
        let mut k = 0;
        while k < found.len() {
            let beta = found[k].clone();
            for i in 0..rank {
                let c = ip(&Root::simple(rank, i), &beta);
                if c < 0 {
                    let mut up = beta.clone();
                    up.0[i] -= c;
                    if seen.insert(up.clone()) {
                        found.push(up);
                        if found.len() > MAX_ROOTS {
                            return Err(Error::UnsupportedDiagram(format!(
                                "{label}: not of finite type"
                            )));
                        }
                    }
                }
            }
            k += 1;
        }
        found.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));

        let n = found.len();
        let lookup: HashMap<Root, RootId> = found
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        let simple: Vec<RootId> = (0..rank).map(|i| lookup[&Root::simple(rank, i)]).collect();
        let heights = found.iter().map(Root::height).collect();

        let signed = |v: &Root| -> SignedRoot {
            if v.is_negative() {
                SignedRoot {
                    id: lookup[&-v],
                    negative: true,
                }
            } else {
                SignedRoot {
                    id: lookup[v],
                    negative: false,
                }
            }
        };

        let mut pairing = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let v = ip(&found[a], &found[b]);
                pairing[a * n + b] = v;
                pairing[b * n + a] = v;
            }
        }
        let mut node_pairing = vec![0; n * rank];
        let mut node_image = Vec::with_capacity(n * rank);
        for (id, r) in found.iter().enumerate() {
            for i in 0..rank {
                let c = pairing[simple[i] * n + id];
                node_pairing[id * rank + i] = c;
                let mut img = r.clone();
                img.0[i] -= c;
                node_image.push(signed(&img));
            }
        }
        let mut image = Vec::with_capacity(n * n);
        for d in 0..n {
            for r in 0..n {
                let c = pairing[d * n + r];
                let img = &found[r] - &(c * &found[d]);
                image.push(signed(&img));
            }
        }

        Ok(Self {
            label,
            dtype: None,
            gram,
            roots: found,
            heights,
            lookup,
            simple,
            node_pairing,
            node_image,
            pairing,
            image,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The connected type this system was built from, if any.
    pub fn dtype(&self) -> Option<DiagramType> {
        self.dtype
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Number of positive roots.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn gram(&self) -> &[Vec<i32>] {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id]
    }

    pub fn height_of(&self, id: RootId) -> i32 {
        self.heights[id]
    }

    /// Id of the simple root `α_node`.
    pub fn simple(&self, node: Node) -> RootId {
        self.simple[node]
    }

    /// `Some(node)` when `id` is a simple root.
    pub fn as_simple(&self, id: RootId) -> Option<Node> {
        (self.heights[id] == 1).then(|| self.roots[id].0.iter().position(|&c| c == 1).unwrap())
    }

    pub fn adjacent(&self, i: Node, j: Node) -> bool {
        i != j && self.gram[i][j] != 0
    }

    pub fn highest_root(&self) -> Option<RootId> {
        self.len().checked_sub(1)
    }

    /// Positive-root id of `v`, if `v` is a positive root.
    pub fn id_of(&self, v: &Root) -> Option<RootId> {
        self.lookup.get(v).copied()
    }

    /// `v` as a signed positive root, if `v` is a root.
    pub fn signed_id_of(&self, v: &Root) -> Option<SignedRoot> {
        if let Some(&id) = self.lookup.get(v) {
            return Some(SignedRoot {
                id,
                negative: false,
            });
        }
        self.lookup
            .get(&-v)
            .map(|&id| SignedRoot { id, negative: true })
    }

    pub fn is_root(&self, v: &Root) -> bool {
        self.signed_id_of(v).is_some()
    }

    pub fn signed_root(&self, s: SignedRoot) -> Root {
        if s.negative {
            -&self.roots[s.id]
        } else {
            self.roots[s.id].clone()
        }
    }

    pub fn inner_product(&self, a: &Root, b: &Root) -> Result<i32> {
        let n = self.rank();
        for v in [a, b] {
            if v.rank() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.rank(),
                });
            }
        }
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += a.0[i] * self.gram[i][j] * b.0[j];
            }
        }
        Ok(s)
    }

    /// `(root_a, root_b)` for positive roots.
    #[inline]
    pub fn pairing(&self, a: RootId, b: RootId) -> i32 {
        self.pairing[a * self.roots.len() + b]
    }

    /// `(α_node, root)`.
    #[inline]
    pub fn node_pairing(&self, id: RootId, node: Node) -> i32 {
        self.node_pairing[id * self.rank() + node]
    }

    /// `r_node` applied to a positive root.
    #[inline]
    pub fn reflect_id(&self, node: Node, id: RootId) -> SignedRoot {
        self.node_image[id * self.rank() + node]
    }

    /// Reflection in positive root `delta` applied to positive root `id`.
    #[inline]
    pub fn reflect_by(&self, delta: RootId, id: RootId) -> SignedRoot {
        self.image[delta * self.roots.len() + id]
    }

    /// `r − (α_node, r)·α_node`.
    pub fn reflect(&self, node: Node, r: &Root) -> Root {
        let c: i32 = (0..self.rank()).map(|j| self.gram[node][j] * r.0[j]).sum();
        let mut out = r.clone();
        out.0[node] -= c;
        out
    }

    /// `r − (δ, r)·δ`. The result is a lattice vector; it is a root whenever
    /// `r` is.
    pub fn reflect_general(&self, delta: &Root, r: &Root) -> Result<Root> {
        let c = self.inner_product(delta, r)?;
        Ok(r - &(c * delta))
    }

    /// Orthonormal ε-coordinates for types A and D:
    /// `A_n`: `α_i = ε_i − ε_{i+1}` in `n + 1` coordinates;
    /// `D_n`: `α_i = ε_i − ε_{i+1}` (i < n), `α_n = ε_{n−1} + ε_n`.
    pub fn to_epsilon(&self, r: &Root) -> Option<Vec<i32>> {
        let dt = self.dtype?;
        let c = &r.0;
        let n = dt.rank();
        match dt.family() {
            Family::A => {
                let mut x = vec![0; n + 1];
                for (i, &ci) in c.iter().enumerate() {
                    x[i] += ci;
                    x[i + 1] -= ci;
                }
                Some(x)
            }
            Family::D => {
                let mut x = vec![0; n];
                for (i, &ci) in c.iter().enumerate().take(n - 1) {
                    x[i] += ci;
                    x[i + 1] -= ci;
                }
                x[n - 2] += c[n - 1];
                x[n - 1] += c[n - 1];
                Some(x)
            }
            Family::E => None,
        }
    }

    /// Inverse of [`Self::to_epsilon`]; fails when the vector is not in the
    /// root lattice.
    pub fn from_epsilon(&self, x: &[i32]) -> Result<Root> {
        let dt = self
            .dtype
            .ok_or_else(|| Error::Parse(format!("{}: no ε-coordinates", self.label)))?;
        let n = dt.rank();
        let not_lattice =
            || Error::Parse(format!("ε-vector {x:?} is not in the root lattice of {dt}"));
        match dt.family() {
            Family::A => {
                if x.len() != n + 1 {
                    return Err(Error::DimensionMismatch {
                        expected: n + 1,
                        got: x.len(),
                    });
                }
                if x.iter().sum::<i32>() != 0 {
                    return Err(not_lattice());
                }
                let mut acc = 0;
                Ok(Root(
                    (0..n)
                        .map(|k| {
                            acc += x[k];
                            acc
                        })
                        .collect(),
                ))
            }
            Family::D => {
                if x.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: x.len(),
                    });
                }
                let mut c = vec![0; n];
                let mut acc = 0;
                for k in 0..n - 2 {
                    acc += x[k];
                    c[k] = acc;
                }
                // c_{n-1} + c_n = x_{n-1} + c_{n-2}, c_n − c_{n-1} = x_n
                let s = x[n - 2] + acc;
                if (s + x[n - 1]) % 2 != 0 {
                    return Err(not_lattice());
                }
                c[n - 1] = (s + x[n - 1]) / 2;
                c[n - 2] = (s - x[n - 1]) / 2;
                Ok(Root(c))
            }
            Family::E => Err(Error::Parse(format!("{dt}: no ε-coordinates"))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.label,
            "positive_roots": self.roots,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn classical_counts() {
        for (name, count) in [
            ("A1", 1),
            ("A3", 6),
            ("A7", 28),
            ("D4", 12),
            ("D5", 20),
            ("D8", 56),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            let r = rs(name);
            assert_eq!(r.len(), count, "{name}");
            assert_eq!(r.len(), r.dtype().unwrap().positive_root_count());
        }
    }

    #[test]
    fn canonical_order_is_height_then_lex() {
        let r = rs("E7");
        for w in r.positive_roots().windows(2) {
            assert!((w[0].height(), &w[0]) < (w[1].height(), &w[1]));
        }
    }

    #[test]
    fn highest_roots_match_published_coefficients() {
        let e7 = rs("E7");
        let a0 = Root::new(vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(e7.root(e7.highest_root().unwrap()), &a0);
        assert_eq!(a0.height(), 17);
        let e8 = rs("E8");
        let a0bar = Root::new(vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(e8.root(e8.highest_root().unwrap()), &a0bar);
        assert_eq!(a0bar.height(), 29);
    }

    #[test]
    fn inner_products() {
        let e7 = rs("E7");
        let a = |i| Root::simple(7, i);
        assert_eq!(e7.inner_product(&a(0), &a(0)).unwrap(), 2);
        assert_eq!(e7.inner_product(&a(0), &a(2)).unwrap(), -1);
        assert_eq!(e7.inner_product(&a(0), &a(1)).unwrap(), 0);
        // highest root of E7 is orthogonal to every simple root but α_1
        let a0 = Root::new(vec![2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(e7.inner_product(&a0, &a(0)).unwrap(), 1);
        for i in 1..7 {
            assert_eq!(e7.inner_product(&a0, &a(i)).unwrap(), 0);
        }
        assert!(matches!(
            e7.inner_product(&a0, &Root::simple(3, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn reflections() {
        let a3 = rs("A3");
        let a = |i| Root::simple(3, i);
        assert_eq!(a3.reflect(1, &a(1)), -&a(1));
        assert_eq!(a3.reflect(0, &a(2)), a(2));
        assert_eq!(a3.reflect(1, &a(0)), Root::new(vec![1, 1, 0]));
        let d = Root::new(vec![1, 1, 0]);
        assert_eq!(a3.reflect_general(&d, &d).unwrap(), -&d);
        assert_eq!(a3.reflect_general(&d, &a(1)).unwrap(), -&a(0));
        assert_eq!(
            a3.reflect_general(&d, &Root::new(vec![0, 1, 1])).unwrap(),
            Root::new(vec![0, 1, 1])
        );
        // lattice vectors are reflected too: α3 − α1 ↦ α3 + α1, not a root
        let v = a3
            .reflect_general(&a(0), &Root::new(vec![-1, 0, 1]))
            .unwrap();
        assert_eq!(v, Root::new(vec![1, 0, 1]));
        assert!(!a3.is_root(&v));
    }

    /// Independent closure: all integer vectors reachable from simple roots
    /// under all simple reflections (both signs), kept only when positive.
    fn brute_force_positive(r: &RootSystem) -> Vec<Root> {
        let n = r.rank();
        let mut all: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
        let mut k = 0;
        while k < all.len() {
            for i in 0..n {
                let img = r.reflect(i, &all[k]);
                if !all.contains(&img) {
                    all.push(img);
                }
            }
            k += 1;
        }
        let mut pos: Vec<Root> = all.into_iter().filter(Root::is_positive).collect();
        pos.sort();
        pos
    }

    #[test]
    fn d4_matches_brute_force_closure() {
        let d4 = rs("D4");
        let brute = brute_force_positive(&d4);
        assert_eq!(brute.len(), 12);
        let mut ours = d4.positive_roots().to_vec();
        ours.sort();
        assert_eq!(ours, brute);
    }

    #[test]
    fn epsilon_round_trip() {
        for name in ["A4", "D4", "D5", "D8"] {
            let r = rs(name);
            for root in r.positive_roots() {
                let x = r.to_epsilon(root).unwrap();
                let norm: i32 = x.iter().map(|v| v * v).sum();
                assert_eq!(norm, 2, "{name} {root}");
                assert_eq!(&r.from_epsilon(&x).unwrap(), root);
            }
        }
        let d5 = rs("D5");
        assert_eq!(
            d5.from_epsilon(&[1, 1, 0, 0, 0]).unwrap(),
            Root::new(vec![1, 2, 2, 1, 1])
        );
        assert!(d5.from_epsilon(&[1, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn tables_agree_with_vector_arithmetic() {
        let r = rs("E6");
        for id in 0..r.len() {
            for i in 0..r.rank() {
                assert_eq!(r.signed_root(r.reflect_id(i, id)), r.reflect(i, r.root(id)));
            }
            for d in 0..r.len() {
                let v = r.reflect_general(r.root(d), r.root(id)).unwrap();
                assert_eq!(r.signed_root(r.reflect_by(d, id)), v);
            }
        }
    }

    #[test]
    fn rejects_non_simply_laced_and_infinite() {
        assert!(RootSystem::from_gram("x", vec![vec![2, -2], vec![-2, 2]]).is_err());
        // affine Ã_2: triangle
        let tri = vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]];
        assert!(RootSystem::from_gram("tri", tri).is_err());
        let empty = RootSystem::from_gram("empty", vec![]).unwrap();
        assert_eq!(empty.len(), 0);
    }

    #[test]
    fn json_shape() {
        let v = rs("A2").to_json();
        assert_eq!(v["type"], "A2");
        assert_eq!(
            v["positive_roots"],
            serde_json::json!([[0, 1], [1, 0], [1, 1]])
        );
    }
}
