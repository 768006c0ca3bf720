//! Characters of the constructed modules against values computed without
//! the Gelfand-Tsetlin machinery.

use num_complex::Complex64;
use wreathrep::combinatorics::{enumerate_gdiagrams, GYoungDiagram, Partition};
use wreathrep::group::permutation_sign;
use wreathrep::gz_rep::{build_rep, AnyRep, Form};
use wreathrep::wreath::{WreathElement, WreathGroup};
use wreathrep::GroupTable;

const TOL: f64 = 1e-9;

fn characters(g: &GroupTable, n: usize, form: Form) -> (Vec<WreathElement>, Vec<Vec<Complex64>>) {
    let elements = WreathGroup::new(g, n).elements().unwrap();
    let rows = enumerate_gdiagrams(n, g.num_classes())
        .iter()
        .map(|mu| {
            let rep = build_rep(mu, g, form).unwrap();
            elements.iter().map(|x| rep.character_c64(x)).collect()
        })
        .collect();
    (elements, rows)
}

fn assert_orthonormal(g: &GroupTable, n: usize, form: Form) {
    let (elements, chi) = characters(g, n, form);
    let order = elements.len() as f64;
    for (a, ca) in chi.iter().enumerate() {
        for (b, cb) in chi.iter().enumerate() {
            let ip: Complex64 = ca
                .iter()
                .zip(cb)
                .map(|(x, y)| x * y.conj())
                .sum::<Complex64>()
                / order;
            let expect = if a == b { 1.0 } else { 0.0 };
            assert!(
                (ip - expect).norm() < TOL,
                "{} n={n} <{a},{b}> = {ip}",
                g.name()
            );
        }
    }
}

#[test]
fn orthonormal_over_all_elements() {
    for g in [
        GroupTable::trivial(),
        GroupTable::cyclic(2).unwrap(),
        GroupTable::cyclic(3).unwrap(),
    ] {
        for n in 1..=3 {
            assert_orthonormal(&g, n, Form::Seminormal);
        }
    }
    assert_orthonormal(&GroupTable::sym3(), 2, Form::Seminormal);
    assert_orthonormal(&GroupTable::cyclic(2).unwrap(), 3, Form::Orthogonal);
}

fn sn_rep(parts: Vec<usize>) -> AnyRep {
    let mu = GYoungDiagram::new(vec![Partition::new(parts).unwrap()]);
    build_rep(&mu, &GroupTable::trivial(), Form::Orthogonal).unwrap()
}

#[test]
fn symmetric_group_hooks() {
    let triv = GroupTable::trivial();
    for n in 2..=4 {
        let w = WreathGroup::new(&triv, n);
        let trivial = sn_rep(vec![n]);
        let sign = sn_rep(vec![1; n]);
        let standard = sn_rep(vec![n - 1, 1]);
        for x in w.elements().unwrap() {
            let fixed = x.perm.iter().enumerate().filter(|&(i, &p)| i == p).count() as f64;
            let sgn = permutation_sign(&x.perm) as f64;
            assert!((trivial.character_c64(&x) - 1.0).norm() < TOL);
            assert!((sign.character_c64(&x) - sgn).norm() < TOL, "{:?}", x.perm);
            assert!(
                (standard.character_c64(&x) - (fixed - 1.0)).norm() < TOL,
                "{:?}",
                x.perm
            );
        }
    }
}

#[test]
fn one_factor_is_the_base_group() {
    for g in [GroupTable::cyclic(3).unwrap(), GroupTable::sym3()] {
        let w = WreathGroup::new(&g, 1);
        let table = g.character_table();
        for (sigma, row) in table.iter().enumerate() {
            let mu =
                GYoungDiagram::single(g.num_classes(), sigma, Partition::new(vec![1]).unwrap());
            let rep = build_rep(&mu, &g, Form::Seminormal).unwrap();
            for (c, class) in g.classes().iter().enumerate() {
                let x = w.base_element(1, class[0]);
                assert!((rep.character_c64(&x) - row[c]).norm() < TOL);
            }
        }
    }
}

#[test]
fn linear_characters_of_the_hyperoctahedral_group() {
    // Z2 ~ S_n has four linear characters: products of sgn(pi) and
    // (-1)^(number of nontrivial base entries)
    let c2 = GroupTable::cyclic(2).unwrap();
    for n in 2..=3 {
        let w = WreathGroup::new(&c2, n);
        let elements = w.elements().unwrap();
        let linear: Vec<AnyRep> = enumerate_gdiagrams(n, 2)
            .iter()
            .filter(|mu| {
                mu.shapes()
                    .iter()
                    .all(|p| p.num_rows() <= 1 || p.parts().iter().all(|&r| r == 1))
            })
            .filter(|mu| mu.shapes().iter().filter(|p| !p.is_empty()).count() == 1)
            .map(|mu| build_rep(mu, &c2, Form::Seminormal).unwrap())
            .collect();
        assert_eq!(linear.len(), 4);
        for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
            let expected = |x: &WreathElement| {
                let mut s = 1.0;
                if a {
                    s *= permutation_sign(&x.perm) as f64;
                }
                if b && x.g.iter().sum::<usize>() % 2 == 1 {
                    s = -s;
                }
                s
            };
            let hits = linear
                .iter()
                .filter(|rep| {
                    elements
                        .iter()
                        .all(|x| (rep.character_c64(x) - expected(x)).norm() < TOL)
                })
                .count();
            assert_eq!(hits, 1, "n={n} character ({a}, {b})");
        }
    }
}
