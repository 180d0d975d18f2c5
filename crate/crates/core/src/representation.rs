//! The action of the positive Artin monoid on the free right module with
//! basis `{x_B}` over the Hecke algebra of type `C`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::h_elements::{c_algebra, HTable};
use crate::hecke::{HeckeAlgebra, HeckeElement, PolyM};
use crate::poset::{EdgeClass, MonoidalPoset};
use crate::root_system::Node;

/// `Σ x_B·z_B`, zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RepVector(BTreeMap<usize, HeckeElement>);

impl RepVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &HeckeElement)> {
        self.0.iter().map(|(&k, z)| (k, z))
    }

    pub fn coefficient(&self, k: usize) -> HeckeElement {
        self.0.get(&k).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, k: usize, z: &HeckeElement) {
        if z.is_zero() {
            return;
        }
        let sum = self.coefficient(k).add(z);
        if sum.is_zero() {
            self.0.remove(&k);
        } else {
            self.0.insert(k, sum);
        }
    }

    pub fn add(&self, o: &RepVector) -> RepVector {
        let mut out = self.clone();
        for (&k, z) in &o.0 {
            out.add_term(k, z);
        }
        out
    }
}

/// A poset, its h-table and the algebra of type `C`.
pub struct Representation<'a> {
    p: &'a MonoidalPoset,
    ht: &'a HTable,
    alg: HeckeAlgebra,
}

impl<'a> Representation<'a> {
    pub fn new(p: &'a MonoidalPoset, ht: &'a HTable) -> Result<Self> {
        Ok(Self {
            p,
            ht,
            alg: c_algebra(p)?,
        })
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.alg
    }

    pub fn poset(&self) -> &MonoidalPoset {
        self.p
    }

    /// `x_B`.
    pub fn basis(&self, k: usize) -> RepVector {
        self.basis_times(k, &self.alg.one())
    }

    /// `x_B·z`.
    pub fn basis_times(&self, k: usize, z: &HeckeElement) -> RepVector {
        let mut v = RepVector::zero();
        v.add_term(k, z);
        v
    }

    /// `τ_i`, extended right-linearly.
    pub fn tau(&self, i: Node, v: &RepVector) -> Result<RepVector> {
        let minus_m = PolyM::new(vec![0, -1]);
        let mut out = RepVector::zero();
        for (k, z) in v.terms() {
            match self.p.class(k, i) {
                EdgeClass::FixesInB => {}
                EdgeClass::FixesPerp => {
                    let h = self.ht.get(k, i).ok_or_else(|| {
                        crate::error::Error::Consistency(format!(
                            "no h entry for member {k}, node {}",
                            i + 1
                        ))
                    })?;
                    out.add_term(k, &self.alg.gen_mul(h, z)?);
                }
                EdgeClass::Lowers => out.add_term(self.p.neighbor(k, i), z),
                EdgeClass::Raises => {
                    out.add_term(self.p.neighbor(k, i), z);
                    out.add_term(k, &z.scale(&minus_m));
                }
            }
        }
        Ok(out)
    }

    /// `τ_{w_1} ∘ ⋯ ∘ τ_{w_L}`: the last letter acts first.
    pub fn tau_word(&self, word: &[Node], v: &RepVector) -> Result<RepVector> {
        word.iter()
            .rev()
            .try_fold(v.clone(), |acc, &i| self.tau(i, &acc))
    }

    /// Column `B` holds `τ_i x_B`.
    pub fn matrix_of_generator(&self, i: Node) -> Result<GeneratorMatrix> {
        let columns = (0..self.p.len())
            .map(|k| Ok(self.tau(i, &self.basis(k))?.0.into_iter().collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorMatrix { node: i, columns })
    }

    pub fn render(&self, v: &RepVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.terms()
            .map(|(k, z)| format!("x{k}·[{}]", self.alg.render(z)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Sparse matrix of one `τ_i` in the basis `{x_B}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub node: Node,
    /// Per column: `(row, entry)` pairs.
    pub columns: Vec<Vec<(usize, HeckeElement)>>,
}

impl GeneratorMatrix {
    pub fn max_column_entries(&self) -> usize {
        self.columns.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn to_json(&self, alg: &HeckeAlgebra) -> serde_json::Value {
        let cols: Vec<serde_json::Value> = self
            .columns
            .iter()
            .map(|c| {
                serde_json::Value::Array(
                    c.iter()
                        .map(|(r, z)| serde_json::json!({"row": r, "entry": alg.to_json(z)}))
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({"node": self.node + 1, "columns": cols})
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraidFailure {
    /// 1-based nodes.
    pub i: Node,
    pub j: Node,
    pub member: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RepReport {
    pub members: usize,
    pub pairs_checked: u64,
    pub failures: Vec<BraidFailure>,
    /// Longest `T_w` seen in any triple product.
    pub max_length: usize,
    /// Highest `m`-degree seen in any triple product.
    pub max_degree: usize,
    /// Orthogonal-node pairs found on an orbit with empty `C`.
    pub perp_edges_with_empty_c: usize,
}

impl RepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.max_length <= 3
            && self.max_degree <= 3
            && self.perp_edges_with_empty_c == 0
    }
}

const MAX_FAILURES: usize = 16;

/// Checks every braid and commutation relation on every basis vector.
pub fn verify_braid(p: &MonoidalPoset, ht: &HTable) -> Result<RepReport> {
    let rep = Representation::new(p, ht)?;
    let n = p.rank();
    let rs = p.root_system();
    let pairs: Vec<(Node, Node)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let tasks: Vec<(Node, Node, usize)> = pairs
        .iter()
        .flat_map(|&(i, j)| (0..p.len()).map(move |k| (i, j, k)))
        .collect();
    let outcomes: Vec<Result<(Option<BraidFailure>, usize, usize)>> = tasks
        .par_iter()
        .map(|&(i, j, k)| {
            let x = rep.basis(k);
            let (l, r) = if rs.adjacent(i, j) {
                (rep.tau_word(&[i, j, i], &x)?, rep.tau_word(&[j, i, j], &x)?)
            } else {
                (rep.tau_word(&[i, j], &x)?, rep.tau_word(&[j, i], &x)?)
            };
            let mut len = 0;
            let mut deg = 0;
            for v in [&l, &r] {
                for (_, z) in v.terms() {
                    len = len.max(rep.alg.max_length(z));
                    deg = deg.max(z.max_degree());
                }
            }
            let fail = (l != r).then(|| BraidFailure {
                i: i + 1,
                j: j + 1,
                member: k,
                lhs: rep.render(&l),
                rhs: rep.render(&r),
            });
            Ok((fail, len, deg))
        })
        .collect();
    let mut report = RepReport {
        members: p.len(),
        ..Default::default()
    };
    for o in outcomes {
        let (fail, len, deg) = o?;
        report.pairs_checked += 1;
        report.max_length = report.max_length.max(len);
        report.max_degree = report.max_degree.max(deg);
        if let Some(f) = fail {
            if report.failures.len() < MAX_FAILURES {
                report.failures.push(f);
            }
        }
    }
    if p.c_nodes().is_empty() {
        report.perp_edges_with_empty_c = (0..p.len())
            .flat_map(|k| (0..n).map(move |i| (k, i)))
            .filter(|&(k, i)| p.class(k, i) == EdgeClass::FixesPerp)
            .count();
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramType;
    use crate::h_elements::build_h_table;
    use crate::orbit::table_orbit;
    use crate::poset::build_poset;

    fn setup(t: &str, size: usize, variant: usize) -> (MonoidalPoset, HTable) {
        let p = build_poset(table_orbit(t.parse::<DiagramType>().unwrap(), size, variant).unwrap())
            .unwrap();
        let ht = build_h_table(&p).unwrap();
        (p, ht)
    }

    #[test]
    fn tau_cases_in_a3() {
        let (p, ht) = setup("A3", 1, 0);
        let rep = Representation::new(&p, &ht).unwrap();
        let rs = p.root_system();
        let b = p
            .orbit()
            .index_of(&crate::orbit::OrthoSet::new(rs, [rs.simple(0)]).unwrap())
            .unwrap();
        let up = p.neighbor(b, 1);
        let mut expected = rep.basis(up);
        expected.add_term(b, &rep.algebra().one().scale(&PolyM::new(vec![0, -1])));
        assert_eq!(rep.tau(1, &rep.basis(b)).unwrap(), expected);
        assert!(rep.tau(0, &rep.basis(b)).unwrap().is_zero());
        assert!(rep.tau_word(&[0, 0], &rep.basis(b)).unwrap().is_zero());
        let b0 = p.b0();
        let t = rep.algebra().hecke_gen(1).unwrap();
        assert_eq!(rep.tau(1, &rep.basis(b0)).unwrap(), rep.basis_times(b0, &t));
        assert_eq!(rep.tau_word(&[], &rep.basis(b0)).unwrap(), rep.basis(b0));
    }

    #[test]
    fn braid_holds_on_small_orbits() {
        for (t, s, v) in [
            ("A3", 1, 0),
            ("A5", 2, 0),
            ("D5", 2, 0),
            ("D5", 4, 2),
            ("E6", 2, 0),
        ] {
            let (p, ht) = setup(t, s, v);
            let r = verify_braid(&p, &ht).unwrap();
            assert!(r.passed(), "{t} {s}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn matrices_are_sparse_and_braid() {
        let (p, ht) = setup("A5", 1, 0);
        let rep = Representation::new(&p, &ht).unwrap();
        for i in 0..5 {
            let m = rep.matrix_of_generator(i).unwrap();
            assert!(m.max_column_entries() <= 2);
        }
        let m = rep.matrix_of_generator(2).unwrap();
        let b0 = p.b0();
        assert_eq!(
            m.columns[b0],
            vec![(b0, rep.algebra().hecke_gen(2).unwrap())]
        );
    }

    #[test]
    fn mutations_break_braid() {
        let (p, mut ht) = setup("A5", 1, 0);
        let (k, i, h) = ht.iter().find(|&(k, _, _)| k != p.b0()).unwrap();
        let other = *p.c_nodes().iter().find(|&&c| c != h).unwrap();
        ht.corrupt(k, i, other);
        assert!(!verify_braid(&p, &ht).unwrap().passed());

        let (mut p, ht) = setup("A5", 2, 0);
        let k = (0..p.len())
            .find(|&k| p.class(k, 0) == EdgeClass::Raises)
            .unwrap();
        p.override_edge_class(k, 0, EdgeClass::Lowers);
        assert!(!verify_braid(&p, &ht).unwrap().passed());
    }
}
