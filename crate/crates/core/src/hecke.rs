//! Polynomials in `m` and the Iwahori–Hecke algebra of `W(C)` over `ℤ[m]`,
//! with `T_s² = 1 − m·T_s`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coxeter::{CoxeterGroup, GroupElement};
use crate::error::Result;
use crate::root_system::Node;

/// Integer polynomial in `m`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PolyM(Vec<i64>);

impl PolyM {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self(vec![1])
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `m`.
    pub fn m() -> Self {
        Self(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, m: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * m + c)
    }
}

impl Add for &PolyM {
    type Output = PolyM;
    fn add(self, o: &PolyM) -> PolyM {
        let n = self.0.len().max(o.0.len());
        PolyM::new(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&0) + o.0.get(k).unwrap_or(&0))
                .collect(),
        )
    }
}

impl Sub for &PolyM {
    type Output = PolyM;
    fn sub(self, o: &PolyM) -> PolyM {
        self + &-o
    }
}

impl Neg for &PolyM {
    type Output = PolyM;
    fn neg(self) -> PolyM {
        PolyM(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &PolyM {
    type Output = PolyM;
    fn mul(self, o: &PolyM) -> PolyM {
        if self.is_zero() || o.is_zero() {
            return PolyM::zero();
        }
        let mut v = vec![0; self.0.len() + o.0.len() - 1];
        for (a, x) in self.0.iter().enumerate() {
            for (b, y) in o.0.iter().enumerate() {
                v[a + b] += x * y;
            }
        }
        PolyM::new(v)
    }
}

impl fmt::Display for PolyM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match d {
                0 => {}
                1 => write!(f, "m")?,
                _ => write!(f, "m^{d}")?,
            }
        }
        Ok(())
    }
}

/// Element of the Hecke algebra: `Σ p_w T_w`, zero terms never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HeckeElement(BTreeMap<GroupElement, PolyM>);

impl HeckeElement {
    pub fn zero() -> Self {
        Self(BTreeMap::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &PolyM)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, w: &GroupElement) -> PolyM {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: GroupElement, p: &PolyM) {
        use std::collections::btree_map::Entry;
        if p.is_zero() {
            return;
        }
        match self.0.entry(w) {
            Entry::Vacant(e) => {
                e.insert(p.clone());
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + p;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, o: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, p) in &o.0 {
            out.add_term(w.clone(), p);
        }
        out
    }

    pub fn sub(&self, o: &HeckeElement) -> HeckeElement {
        self.add(&o.scale(&PolyM::constant(-1)))
    }

    pub fn scale(&self, c: &PolyM) -> HeckeElement {
        if c.is_zero() {
            return HeckeElement::zero();
        }
        HeckeElement(self.0.iter().map(|(w, p)| (w.clone(), p * c)).collect())
    }

    /// Largest `m`-degree among the coefficients.
    pub fn max_degree(&self) -> usize {
        self.0.values().filter_map(PolyM::degree).max().unwrap_or(0)
    }
}

/// The Hecke algebra of a Coxeter group.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    group: Arc<CoxeterGroup>,
}

impl HeckeAlgebra {
    pub fn new(group: Arc<CoxeterGroup>) -> Self {
        Self { group }
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn one(&self) -> HeckeElement {
        self.basis(self.group.identity())
    }

    pub fn basis(&self, w: GroupElement) -> HeckeElement {
        HeckeElement(BTreeMap::from([(w, PolyM::one())]))
    }

    /// `T_{s_j}` for an ambient node `j ∈ C`.
    pub fn hecke_gen(&self, node: Node) -> Result<HeckeElement> {
        Ok(self.basis(self.group.gen_node(node)?))
    }

    /// `x·T_{s_k}` for a local generator `k`.
    pub fn mul_gen_local(&self, x: &HeckeElement, k: usize) -> HeckeElement {
        let mut out = HeckeElement::zero();
        let minus_m = PolyM::new(vec![0, -1]);
        for (w, p) in &x.0 {
            let ws = self.group.mul_gen(w, k);
            out.add_term(ws, p);
            if self.group.descent_local(w, k, crate::coxeter::Side::Right) {
                out.add_term(w.clone(), &(p * &minus_m));
            }
        }
        out
    }

    /// `x·T_{s_j}` for an ambient node `j ∈ C`.
    pub fn mul_gen(&self, x: &HeckeElement, node: Node) -> Result<HeckeElement> {
        let k = self
            .group
            .local(node)
            .ok_or(crate::error::Error::NodeNotInC { node: node + 1 })?;
        Ok(self.mul_gen_local(x, k))
    }

    /// `T_{s_k}·x` for a local generator `k`.
    pub fn gen_mul_local(&self, k: usize, x: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        let minus_m = PolyM::new(vec![0, -1]);
        for (w, p) in &x.0 {
            out.add_term(self.group.gen_mul(k, w), p);
            if self.group.descent_local(w, k, crate::coxeter::Side::Left) {
                out.add_term(w.clone(), &(p * &minus_m));
            }
        }
        out
    }

    /// `T_{s_j}·x` for an ambient node `j ∈ C`.
    pub fn gen_mul(&self, node: Node, x: &HeckeElement) -> Result<HeckeElement> {
        let k = self
            .group
            .local(node)
            .ok_or(crate::error::Error::NodeNotInC { node: node + 1 })?;
        Ok(self.gen_mul_local(k, x))
    }

    pub fn hecke_mul(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (v, q) in &b.0 {
            let mut x = a.clone();
            for k in self.group.reduced_word_local(v) {
                x = self.mul_gen_local(&x, k);
            }
            out = out.add(&x.scale(q));
        }
        out
    }

    /// Coefficients at `m = 0`, i.e. the image in the group ring.
    pub fn specialize_m0(&self, x: &HeckeElement) -> BTreeMap<GroupElement, i64> {
        x.0.iter()
            .map(|(w, p)| (w.clone(), p.eval(0)))
            .filter(|(_, c)| *c != 0)
            .collect()
    }

    /// Longest reduced word among the terms.
    pub fn max_length(&self, x: &HeckeElement) -> usize {
        x.0.keys().map(|w| self.group.length(w)).max().unwrap_or(0)
    }

    pub fn render(&self, x: &HeckeElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.0.iter()
            .map(|(w, p)| format!("({p}) T[{}]", self.group.display(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `[{"word": [1-based nodes], "poly": [c0, c1, …]}]`.
    pub fn to_json(&self, x: &HeckeElement) -> serde_json::Value {
        serde_json::Value::Array(
            x.0.iter()
                .map(|(w, p)| {
                    let word: Vec<usize> =
                        self.group.reduced_word(w).iter().map(|n| n + 1).collect();
                    serde_json::json!({"word": word, "poly": p.coeffs()})
                })
                .collect(),
        )
    }
}
