//! Root literals: simple-root combinations such as `a1+2*a4`, or ε-form
//! such as `e1+e2` and `e3-e4` in type D.

use crate::diagram::Family;
use crate::error::{Error, Result};
use crate::root_system::{Root, RootSystem};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Basis {
    Simple,
    Epsilon,
}

fn parse_terms(s: &str) -> Result<(Basis, Vec<(usize, i32)>)> {
    let bad = |why: &str| Error::Parse(format!("`{s}`: {why}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty root literal"));
    }
    let mut basis = None;
    let mut terms = Vec::new();
    let bytes = compact.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = 1;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if pos > 0 {
            return Err(bad("expected `+` or `-` between terms"));
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let mut coeff = 1;
        if pos > start {
            coeff = compact[start..pos]
                .parse::<i32>()
                .map_err(|_| bad("coefficient out of range"))?;
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
            }
        }
        let b = match bytes.get(pos) {
            Some(b'a' | b'A') => Basis::Simple,
            Some(b'e' | b'E') => Basis::Epsilon,
            _ => return Err(bad("expected `a<k>` or `e<k>`")),
        };
        pos += 1;
        if *basis.get_or_insert(b) != b {
            return Err(bad("cannot mix `a` and `e` terms"));
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let index: usize = compact[start..pos]
            .parse()
            .map_err(|_| bad("missing index"))?;
        if index == 0 {
            return Err(bad("indices start at 1"));
        }
        terms.push((index, sign * coeff));
    }
    Ok((basis.expect("at least one term"), terms))
}

/// Parses one root literal and checks that it is a root of `rs`.
pub fn parse_root(rs: &RootSystem, s: &str) -> Result<Root> {
    let (basis, terms) = parse_terms(s)?;
    let n = match (basis, rs.dtype()) {
        (Basis::Epsilon, Some(dt)) if dt.family() == Family::A => rs.rank() + 1,
        _ => rs.rank(),
    };
    let mut v = vec![0i32; n];
    for &(index, c) in &terms {
        if index > n {
            return Err(Error::Parse(format!(
                "`{s}`: index {index} exceeds the {n} coordinates of {}",
                rs.label()
            )));
        }
        v[index - 1] += c;
    }
    let root = match basis {
        Basis::Simple => Root::new(v),
        Basis::Epsilon => rs.from_epsilon(&v)?,
    };
    if !rs.is_root(&root) {
        return Err(Error::NotARoot {
            system: rs.label().to_string(),
            vector: root.coeffs().to_vec(),
        });
    }
    Ok(root)
}

/// Parses a comma-separated list of root literals.
pub fn parse_root_list(rs: &RootSystem, s: &str) -> Result<Vec<Root>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_root(rs, t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn simple_form() {
        let rs = sys("E8");
        let r = parse_root(&rs, "2a1+3*a2+4a3+6a4+5a5+4a6+3a7+2a8").unwrap();
        assert_eq!(Some(rs.id_of(&r).unwrap()), rs.highest_root());
        assert_eq!(parse_root(&rs, " a2 ").unwrap(), Root::simple(8, 1));
        assert_eq!(parse_root(&rs, &r.to_string()).unwrap(), r);
    }

    #[test]
    fn epsilon_form() {
        let rs = sys("D5");
        let r = parse_root(&rs, "e3-e4").unwrap();
        assert_eq!(r, Root::simple(5, 2));
        let r = parse_root(&rs, "e4+e5").unwrap();
        assert_eq!(r, Root::simple(5, 4));
        let list = parse_root_list(&rs, "e3+e4, e1+e2").unwrap();
        assert_eq!(list.len(), 2);
    }

    #[test]
    fn rejects_bad_literals() {
        let rs = sys("A3");
        assert!(matches!(
            parse_root(&rs, "a1+a3"),
            Err(Error::NotARoot { .. })
        ));
        assert!(matches!(parse_root(&rs, "a4"), Err(Error::Parse(_))));
        assert!(matches!(parse_root(&rs, "a1+e2"), Err(Error::Parse(_))));
        assert!(matches!(parse_root(&rs, "x1"), Err(Error::Parse(_))));
        assert!(matches!(parse_root(&rs, ""), Err(Error::Parse(_))));
        assert!(matches!(parse_root(&rs, "a0"), Err(Error::Parse(_))));
        assert_eq!(parse_root(&rs, "e1-e2").unwrap(), Root::simple(3, 0));
        assert!(parse_root(&sys("E6"), "e1-e2").is_err());
    }
}
