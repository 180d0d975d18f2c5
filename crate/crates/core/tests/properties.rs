use std::sync::Arc;

use proptest::prelude::*;
use proptest::sample::Index;

use orthopos::coxeter::Side;
use orthopos::h_elements::{build_h_table, conjugate_root};
use orthopos::orbit::{
    act_node, height_rule_violation, is_admissible_def, is_admissible_moves, max_moved,
    moved_count, seed_rows,
};
use orthopos::poset::{compare, verify_order_axioms};
use orthopos::{
    build_poset, enumerate_orbit, parse_root, Comparison, DiagramType, EdgeClass, HeckeElement,
    MonoidalPoset, OrthoSet, PolyM, RepVector, Representation, RootSystem,
};

fn system(name: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::new(name.parse::<DiagramType>().unwrap()))
}

const ALL: &[&str] = &["A1", "A3", "A5", "A8", "D4", "D5", "D7", "E6", "E7", "E8"];
const SMALL: &[&str] = &["A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6"];

/// Greedily keeps the picked roots that are orthogonal to all earlier picks.
fn greedy_orthoset(rs: &RootSystem, picks: &[Index]) -> OrthoSet {
    let mut ids: Vec<usize> = Vec::new();
    for p in picks {
        let id = p.index(rs.len());
        if ids.iter().all(|&j| j != id && rs.pairing(id, j) == 0) {
            ids.push(id);
        }
    }
    OrthoSet::new(rs, ids).unwrap()
}

fn admissible_posets() -> &'static Vec<MonoidalPoset> {
    static P: std::sync::OnceLock<Vec<MonoidalPoset>> = std::sync::OnceLock::new();
    P.get_or_init(|| {
        let mut out = Vec::new();
        for name in ["A3", "A4", "A5", "D4", "D5", "E6"] {
            let rs = system(name);
            for row in seed_rows(&rs) {
                let orbit = enumerate_orbit(rs.clone(), row.orthoset(&rs).unwrap()).unwrap();
                if orbit.admissible() && orbit.len() <= 300 {
                    out.push(build_poset(orbit).unwrap());
                }
            }
        }
        out
    })
}

fn random_c_element(rep: &Representation, terms: &[(Vec<Index>, i64, i64)]) -> HeckeElement {
    let alg = rep.algebra();
    let g = alg.group();
    let mut z = HeckeElement::zero();
    if g.rank() == 0 {
        z.add_term(g.identity(), &PolyM::new(vec![terms[0].1, terms[0].2]));
        return z;
    }
    for (word, c0, c1) in terms {
        let letters: Vec<usize> = word
            .iter()
            .map(|ix| g.ambient(ix.index(g.rank())))
            .collect();
        let w = g.from_word(&letters).unwrap();
        z.add_term(w, &PolyM::new(vec![*c0, *c1]));
    }
    z
}

fn times_right(rep: &Representation, v: &RepVector, z: &HeckeElement) -> RepVector {
    let mut out = RepVector::zero();
    for (k, c) in v.terms() {
        out.add_term(k, &rep.algebra().hecke_mul(c, z));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reflections_are_involutions_and_isometries(
        t in prop::sample::select(ALL),
        a in any::<Index>(),
        b in any::<Index>(),
        node in any::<Index>(),
    ) {
        let rs = system(t);
        let i = node.index(rs.rank());
        let r = rs.root(a.index(rs.len())).clone();
        let s = rs.root(b.index(rs.len())).clone();
        let ri = rs.reflect(i, &r);
        prop_assert_eq!(rs.reflect(i, &ri), r.clone());
        prop_assert!(rs.is_root(&ri));
        if rs.as_simple(a.index(rs.len())) != Some(i) {
            prop_assert!((ri.height() - r.height()).abs() <= 1);
            prop_assert!(ri.is_positive());
        }
        let ip = rs.inner_product(&r, &s).unwrap();
        prop_assert_eq!(ip, rs.inner_product(&s, &r).unwrap());
        prop_assert_eq!(ip, rs.inner_product(&ri, &rs.reflect(i, &s)).unwrap());
    }

    #[test]
    fn root_literals_round_trip(t in prop::sample::select(ALL), a in any::<Index>()) {
        let rs = system(t);
        let r = rs.root(a.index(rs.len()));
        prop_assert_eq!(&parse_root(&rs, &r.to_string()).unwrap(), r);
        if let Some(x) = rs.to_epsilon(r) {
            prop_assert_eq!(&rs.from_epsilon(&x).unwrap(), r);
        }
    }

    #[test]
    fn node_action_is_an_involution_on_orthosets(
        t in prop::sample::select(ALL),
        picks in prop::collection::vec(any::<Index>(), 1..10),
        node in any::<Index>(),
    ) {
        let rs = system(t);
        let b = greedy_orthoset(&rs, &picks);
        let i = node.index(rs.rank());
        let c = act_node(&rs, i, &b);
        prop_assert_eq!(c.len(), b.len());
        let ids: Vec<usize> = c.ids().collect();
        for (x, &p) in ids.iter().enumerate() {
            for &q in &ids[x + 1..] {
                prop_assert_eq!(rs.pairing(p, q), 0);
            }
        }
        prop_assert_eq!(act_node(&rs, i, &c), b);
    }

    #[test]
    fn admissibility_criteria_agree_on_random_orbits(
        t in prop::sample::select(SMALL),
        picks in prop::collection::vec(any::<Index>(), 1..7),
    ) {
        let rs = system(t);
        let orbit = enumerate_orbit(rs.clone(), greedy_orthoset(&rs, &picks)).unwrap();
        let def = is_admissible_def(&orbit);
        prop_assert_eq!(def, is_admissible_moves(&orbit));
        if def {
            prop_assert!(max_moved(&orbit) <= 4);
        }
        prop_assert_eq!(height_rule_violation(&orbit), None);
        for k in 0..orbit.len() {
            for i in 0..orbit.rank() {
                prop_assert_eq!(orbit.neighbor(orbit.neighbor(k, i), i), k);
            }
        }
    }

    #[test]
    fn moved_counts_never_three_on_admissible_orbits(
        pick in any::<Index>(),
        member in any::<Index>(),
        refl in any::<Index>(),
    ) {
        let ps = admissible_posets();
        let p = &ps[pick.index(ps.len())];
        let rs = p.root_system();
        let b = p.orbit().member(member.index(p.len()));
        let c = moved_count(rs, refl.index(rs.len()), b);
        prop_assert!(matches!(c, 0 | 1 | 2 | 4));
    }

    #[test]
    fn raising_edges_go_up_in_compare(pick in any::<Index>(), member in any::<Index>()) {
        let ps = admissible_posets();
        let p = &ps[pick.index(ps.len())];
        let rs = p.root_system();
        let k = member.index(p.len());
        for i in 0..p.rank() {
            let up = p.neighbor(k, i);
            match p.class(k, i) {
                EdgeClass::Raises => {
                    prop_assert_eq!(p.class(up, i), EdgeClass::Lowers);
                    prop_assert_eq!(
                        compare(rs, p.orbit().member(k), p.orbit().member(up)),
                        Comparison::Less
                    );
                    prop_assert_eq!(p.level(up) + 1, p.level(k));
                }
                EdgeClass::Lowers => prop_assert_eq!(p.class(up, i), EdgeClass::Raises),
                _ => prop_assert_eq!(up, k),
            }
        }
        // the tree word read from B0 lands on this member
        let word = p.tree_word(k);
        prop_assert_eq!(word.len() as u32, p.level(k));
        let mut cur = p.b0();
        for &i in word.iter().rev() {
            cur = p.neighbor(cur, i);
        }
        prop_assert_eq!(cur, k);
    }

    #[test]
    fn group_axioms_on_random_words(
        t in prop::sample::select(&["A3", "D4", "E6"][..]),
        u in prop::collection::vec(any::<Index>(), 0..12),
        v in prop::collection::vec(any::<Index>(), 0..12),
        w in prop::collection::vec(any::<Index>(), 0..12),
        j in any::<Index>(),
    ) {
        let rs = system(t);
        let nodes: Vec<usize> = (0..rs.rank()).collect();
        let g = orthopos::CoxeterGroup::new(rs.gram(), &nodes).unwrap();
        let word = |x: &[Index]| -> Vec<usize> { x.iter().map(|i| i.index(g.rank())).collect() };
        let (a, b, c) = (
            g.from_word(&word(&u)).unwrap(),
            g.from_word(&word(&v)).unwrap(),
            g.from_word(&word(&w)).unwrap(),
        );
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
        prop_assert!(g.is_identity(&g.mul(&a, &g.inv(&a))));
        prop_assert_eq!(g.mul(&g.identity(), &a), a.clone());
        let k = j.index(g.rank());
        let l = g.length(&a);
        let aj = g.mul_gen(&a, k);
        if g.descent_local(&a, k, Side::Right) {
            prop_assert_eq!(g.length(&aj) + 1, l);
        } else {
            prop_assert_eq!(g.length(&aj), l + 1);
        }
        prop_assert_eq!(g.reduced_word_local(&a).len(), l);
        prop_assert!(l <= u.len());
    }

    #[test]
    fn hecke_products_associate_and_specialize(
        t in prop::sample::select(&["A3", "D4"][..]),
        words in prop::collection::vec(prop::collection::vec(any::<Index>(), 0..4), 3),
        coeffs in prop::collection::vec((-3i64..4, -3i64..4), 3),
    ) {
        let rs = system(t);
        let nodes: Vec<usize> = (0..rs.rank()).collect();
        let alg = orthopos::HeckeAlgebra::new(Arc::new(
            orthopos::CoxeterGroup::new(rs.gram(), &nodes).unwrap(),
        ));
        let g = alg.group();
        let el: Vec<HeckeElement> = words
            .iter()
            .zip(&coeffs)
            .map(|(w, &(c0, c1))| {
                let letters: Vec<usize> = w.iter().map(|i| i.index(g.rank())).collect();
                let mut x = HeckeElement::zero();
                for (n, &l) in letters.iter().enumerate() {
                    x.add_term(g.from_word(&letters[..=n]).unwrap(), &PolyM::new(vec![c0, c1]));
                    x.add_term(g.gen(l), &PolyM::constant(c0));
                }
                x.add_term(g.identity(), &PolyM::new(vec![c1, c0]));
                x
            })
            .collect();
        let (a, b, c) = (&el[0], &el[1], &el[2]);
        prop_assert_eq!(
            alg.hecke_mul(&alg.hecke_mul(a, b), c),
            alg.hecke_mul(a, &alg.hecke_mul(b, c))
        );
        // m = 0 gives the group ring
        let ab0 = alg.specialize_m0(&alg.hecke_mul(a, b));
        let mut expect = std::collections::BTreeMap::new();
        for (u, p) in alg.specialize_m0(a) {
            for (v, q) in alg.specialize_m0(b) {
                *expect.entry(g.mul(&u, &v)).or_insert(0) += p * q;
            }
        }
        expect.retain(|_, c| *c != 0);
        prop_assert_eq!(ab0, expect);
    }

    #[test]
    fn tau_is_right_linear(
        pick in any::<Index>(),
        member in any::<Index>(),
        node in any::<Index>(),
        terms in prop::collection::vec(
            (prop::collection::vec(any::<Index>(), 0..3), -3i64..4, -3i64..4),
            1..4,
        ),
    ) {
        let ps = admissible_posets();
        let p = &ps[pick.index(ps.len())];
        let ht = build_h_table(p).unwrap();
        let rep = Representation::new(p, &ht).unwrap();
        let k = member.index(p.len());
        let i = node.index(p.rank());
        let z = random_c_element(&rep, &terms);
        let lhs = rep.tau(i, &rep.basis_times(k, &z)).unwrap();
        let rhs = times_right(&rep, &rep.tau(i, &rep.basis(k)).unwrap(), &z);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_words_compose(
        pick in any::<Index>(),
        member in any::<Index>(),
        u in prop::collection::vec(any::<Index>(), 0..4),
        v in prop::collection::vec(any::<Index>(), 0..4),
    ) {
        let ps = admissible_posets();
        let p = &ps[pick.index(ps.len())];
        let ht = build_h_table(p).unwrap();
        let rep = Representation::new(p, &ht).unwrap();
        let x = rep.basis(member.index(p.len()));
        let u: Vec<usize> = u.iter().map(|i| i.index(p.rank())).collect();
        let v: Vec<usize> = v.iter().map(|i| i.index(p.rank())).collect();
        let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(
            rep.tau_word(&uv, &x).unwrap(),
            rep.tau_word(&u, &rep.tau_word(&v, &x).unwrap()).unwrap()
        );
    }

    #[test]
    fn h_values_lie_in_c_and_match_conjugation(pick in any::<Index>()) {
        let ps = admissible_posets();
        let p = &ps[pick.index(ps.len())];
        let ht = build_h_table(p).unwrap();
        let rs = p.root_system();
        for (k, i, h) in ht.iter() {
            prop_assert!(p.c_nodes().contains(&h));
            let chain = ht.chain(k, i).unwrap();
            prop_assert_eq!(chain.len() as u32, p.level(k));
            let root = conjugate_root(rs, chain, i);
            prop_assert_eq!(rs.id_of(&root), Some(rs.simple(h)));
        }
    }
}

#[test]
fn order_axioms_hold_on_all_small_admissible_orbits() {
    for p in admissible_posets() {
        let r = verify_order_axioms(p);
        assert!(r.passed(), "{:?}", r.failures.first());
    }
}
