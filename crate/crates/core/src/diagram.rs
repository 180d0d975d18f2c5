//! Connected simply laced Dynkin diagrams (Bourbaki labeling) and the Coxeter
//! types of their induced subdiagrams.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}")
    }
}

/// A connected simply laced diagram: `A_n` (n ≥ 1), `D_n` (n ≥ 4) or `E_n`
/// (n ∈ {6, 7, 8}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DiagramType {
    family: Family,
    rank: usize,
}

impl DiagramType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::UnsupportedDiagram(format!("{family}{rank}")));
        }
        Ok(Self { family, rank })
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank).expect("A_n needs n >= 1")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("D_n needs n >= 4")
    }

    pub fn e(rank: usize) -> Self {
        Self::new(Family::E, rank).expect("E_n needs n in 6..=8")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bonds of the diagram as pairs of 0-based nodes.
    ///
    /// Bourbaki: `A_n` is the path 1–2–…–n; `D_n` is the path 1–…–(n−1) with
    /// n attached to n−2; `E_n` is the path 1–3–4–…–n with 2 attached to 4.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n - 1).map(|k| (k, k + 1)).collect(),
            Family::D => {
                let mut b: Vec<_> = (0..n - 2).map(|k| (k, k + 1)).collect();
                b.push((n - 3, n - 1));
                b
            }
            Family::E => {
                let mut b = vec![(0, 2), (1, 3)];
                b.extend((2..n - 1).map(|k| (k, k + 1)));
                b
            }
        }
    }

    /// Gram matrix of the simple roots: 2 on the diagonal, −1 on bonds.
    pub fn gram(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut g = vec![vec![0; n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in self.bonds() {
            g[a][b] = -1;
            g[b][a] = -1;
        }
        g
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        match self.family {
            Family::A => factorial(n + 1),
            Family::D => (1u128 << (n - 1)) * factorial(n),
            Family::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
        }
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for DiagramType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedDiagram(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| bad())?;
        Self::new(family, rank)
    }
}

pub(crate) fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

/// Coxeter type of a (possibly disconnected, possibly empty) simply laced
/// diagram, as a sorted multiset of irreducible components.
///
/// Small ranks are normalized so that equal diagrams compare equal:
/// `D_3 = A_3`, `D_2 = A_1 A_1`, and `A_0`, `D_1`, `D_0` are empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct CoxeterType(Vec<(Family, usize)>);

impl CoxeterType {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_components(components: impl IntoIterator<Item = (Family, usize)>) -> Self {
        let mut out = Vec::new();
        for (f, r) in components {
            match (f, r) {
                (_, 0) => {}
                (Family::D, 1) => {}
                (Family::D, 2) => out.extend([(Family::A, 1), (Family::A, 1)]),
                (Family::D, 3) => out.push((Family::A, 3)),
                other => out.push(other),
            }
        }
        out.sort();
        Self(out)
    }

    pub fn components(&self) -> &[(Family, usize)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|&(_, r)| r).sum()
    }

    /// Classifies the subdiagram induced on `nodes` of the diagram with the
    /// given Gram matrix.
    pub fn of_subdiagram(gram: &[Vec<i32>], nodes: &[usize]) -> Result<Self> {
        let mut seen = vec![false; nodes.len()];
        let mut comps = Vec::new();
        for start in 0..nodes.len() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let a = comp[k];
                for b in 0..nodes.len() {
                    if !seen[b] && gram[nodes[a]][nodes[b]] != 0 {
                        seen[b] = true;
                        comp.push(b);
                    }
                }
                k += 1;
            }
            let local: Vec<usize> = comp.iter().map(|&c| nodes[c]).collect();
            comps.push(classify_connected(gram, &local)?);
        }
        Ok(Self::from_components(comps))
    }
}

fn classify_connected(gram: &[Vec<i32>], nodes: &[usize]) -> Result<(Family, usize)> {
    let n = nodes.len();
    let adj = |a: usize| -> Vec<usize> {
        (0..n)
            .filter(|&b| b != a && gram[nodes[a]][nodes[b]] != 0)
            .collect()
    };
    let edges: usize = (0..n).map(|a| adj(a).len()).sum::<usize>() / 2;
    let not_finite = || Error::UnsupportedDiagram(format!("subdiagram on nodes {nodes:?}"));
    if edges + 1 != n {
        return Err(not_finite());
    }
    let branch: Vec<usize> = (0..n).filter(|&a| adj(a).len() >= 3).collect();
    match branch.as_slice() {
        [] => Ok((Family::A, n)),
        [b] if adj(*b).len() == 3 => {
            let mut arms: Vec<usize> = adj(*b)
                .into_iter()
                .map(|first| {
                    let (mut prev, mut cur, mut len) = (*b, first, 1);
                    loop {
                        let next: Vec<usize> =
                            adj(cur).into_iter().filter(|&x| x != prev).collect();
                        match next.as_slice() {
                            [] => break len,
                            [x] => {
                                prev = cur;
                                cur = *x;
                                len += 1;
                            }
                            _ => break usize::MAX,
                        }
                    }
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, c] => Ok((Family::D, c + 3)),
                [1, 2, 2] => Ok((Family::E, 6)),
                [1, 2, 3] => Ok((Family::E, 7)),
                [1, 2, 4] => Ok((Family::E, 8)),
                _ => Err(not_finite()),
            }
        }
        _ => Err(not_finite()),
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let mut first = true;
        let mut k = 0;
        while k < self.0.len() {
            let mut mult = 1;
            while k + mult < self.0.len() && self.0[k + mult] == self.0[k] {
                mult += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let (fam, r) = self.0[k];
            write!(f, "{fam}{r}")?;
            if mult > 1 {
                write!(f, "^{mult}")?;
            }
            k += mult;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_names() {
        assert_eq!("E7".parse::<DiagramType>().unwrap(), DiagramType::e(7));
        assert_eq!("d_5".parse::<DiagramType>().unwrap(), DiagramType::d(5));
        assert!("D3".parse::<DiagramType>().is_err());
        assert!("E9".parse::<DiagramType>().is_err());
        assert!("A0".parse::<DiagramType>().is_err());
        assert!("B3".parse::<DiagramType>().is_err());
    }

    #[test]
    fn classifies_whole_diagrams() {
        for t in [
            DiagramType::a(5),
            DiagramType::d(4),
            DiagramType::d(7),
            DiagramType::e(6),
            DiagramType::e(7),
            DiagramType::e(8),
        ] {
            let nodes: Vec<usize> = (0..t.rank()).collect();
            let ty = CoxeterType::of_subdiagram(&t.gram(), &nodes).unwrap();
            assert_eq!(
                ty,
                CoxeterType::from_components([(t.family(), t.rank())]),
                "{t}"
            );
        }
    }

    #[test]
    fn classifies_subdiagrams() {
        // E8 minus node 8 is E7; minus node 1 is D7; minus node 2 is A7.
        let g = DiagramType::e(8).gram();
        let ty = |drop: usize| {
            let nodes: Vec<usize> = (0..8).filter(|&k| k != drop).collect();
            CoxeterType::of_subdiagram(&g, &nodes).unwrap()
        };
        assert_eq!(ty(7).to_string(), "E7");
        assert_eq!(ty(0).to_string(), "D7");
        assert_eq!(ty(1).to_string(), "A7");
        assert_eq!(ty(3).to_string(), "A1 A2 A4");
        assert_eq!(
            CoxeterType::of_subdiagram(&g, &[]).unwrap().to_string(),
            "∅"
        );
    }

    #[test]
    fn small_rank_normalization() {
        assert_eq!(
            CoxeterType::from_components([(Family::D, 2), (Family::A, 1)]).to_string(),
            "A1^3"
        );
        assert_eq!(
            CoxeterType::from_components([(Family::D, 3)]).to_string(),
            "A3"
        );
        assert!(CoxeterType::from_components([(Family::D, 1), (Family::A, 0)]).is_empty());
    }
}
