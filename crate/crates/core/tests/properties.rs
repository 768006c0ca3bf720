use proptest::prelude::*;
use wreathrep::combinatorics::{enumerate_gdiagrams, enumerate_gtableaux, phi, phi_inverse};
use wreathrep::group::permutation_sign;
use wreathrep::gz_rep::{build_rep, coxeter_word, AnyRep, Form};
use wreathrep::johnson::{up_operator, RankedVector};
use wreathrep::wreath::{enumerate_types, WreathElement, WreathGroup};
use wreathrep::GroupTable;

fn group(k: usize) -> GroupTable {
    match k {
        0 => GroupTable::trivial(),
        1 => GroupTable::cyclic(2).unwrap(),
        2 => GroupTable::cyclic(3).unwrap(),
        _ => GroupTable::sym3(),
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law(k in 0..4usize, n in 1..=4usize, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let g = group(k);
        let w = WreathGroup::new(&g, n);
        let order = w.order() as u64;
        let [x, y, z] = [a, b, c].map(|s| w.element_at((s % order) as usize));
        prop_assert!(w.mul(&w.mul(&x, &y), &z) == w.mul(&x, &w.mul(&y, &z)));
        prop_assert!(w.mul(&x, &w.identity()) == x);
        prop_assert!(w.mul(&x, &w.inv(&x)) == w.identity());
        // the projection to S_n is a homomorphism
        let xy = w.mul(&x, &y);
        let composed: Vec<usize> = (0..n).map(|i| x.perm[y.perm[i]]).collect();
        prop_assert_eq!(xy.perm, composed);
    }

    #[test]
    fn index_bijection(k in 0..4usize, n in 1..=4usize, s in any::<u64>()) {
        let g = group(k);
        let w = WreathGroup::new(&g, n);
        let idx = (s % w.order() as u64) as usize;
        let x = w.element_at(idx);
        prop_assert!(w.check(&x).is_ok());
        prop_assert_eq!(w.index_of(&x), idx);
    }

    #[test]
    fn coxeter_word_is_reduced(perm in (1..=7usize).prop_flat_map(perm_strategy)) {
        let n = perm.len();
        let word = coxeter_word(&perm);
        let mut p: Vec<usize> = (0..n).collect();
        for &i in &word {
            // right multiplication by s_i swaps positions i, i+1
            p.swap(i - 1, i);
        }
        prop_assert_eq!(&p, &perm);
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        prop_assert_eq!(word.len(), inversions);
        prop_assert_eq!(permutation_sign(&perm), if inversions % 2 == 0 { 1 } else { -1 });
    }

    #[test]
    fn phi_round_trip(k in 0..4usize, n in 1..=4usize, pick in any::<u64>()) {
        let g = group(k);
        let tableaux: Vec<_> = enumerate_gdiagrams(n, g.num_classes()).iter().flat_map(enumerate_gtableaux).collect();
        let t = &tableaux[(pick % tableaux.len() as u64) as usize];
        let cv = phi(t, &g);
        prop_assert_eq!(&phi_inverse(&cv, &g).unwrap(), t);
    }

    #[test]
    fn up_operator_commutes_with_permutations(
        (n, perm, terms) in (1..=6usize).prop_flat_map(|n| (
            Just(n),
            perm_strategy(n),
            prop::collection::vec((0u64..(1 << n), -5i128..=5), 0..8),
        ))
    ) {
        let mut v = RankedVector::zero();
        for (s, c) in terms {
            v.add_term(s, wreathrep::scalar::qi(c));
        }
        prop_assert_eq!(up_operator(&v.permute(&perm), n), up_operator(&v, n).permute(&perm));
    }

    #[test]
    fn class_sizes_partition_the_group(k in 0..4usize, n in 0..=6usize) {
        let g = group(k);
        let total: u128 = enumerate_types(n, g.num_classes()).iter().map(|t| t.class_size(&g)).sum();
        let order = (g.order() as u128).pow(n as u32) * (1..=n as u128).product::<u128>();
        prop_assert_eq!(total, order);
    }
}

fn element_strategy(base: usize, n: usize) -> impl Strategy<Value = WreathElement> {
    (prop::collection::vec(0..base, n), perm_strategy(n))
        .prop_map(|(g, perm)| WreathElement { g, perm })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn representations_are_homomorphisms(
        k in 1..4usize,
        pick in any::<u64>(),
        orthogonal in any::<bool>(),
        seeds in (element_strategy(6, 3), element_strategy(6, 3)),
    ) {
        let g = group(k);
        let n = if k == 3 { 2 } else { 3 };
        let w = WreathGroup::new(&g, n);
        let fix = |x: &WreathElement| WreathElement {
            g: x.g[..n].iter().map(|&a| a % g.order()).collect(),
            perm: {
                let p: Vec<usize> = x.perm.iter().copied().filter(|&i| i < n).collect();
                p
            },
        };
        let (x, y) = (fix(&seeds.0), fix(&seeds.1));
        let diagrams = enumerate_gdiagrams(n, g.num_classes());
        let mu = &diagrams[(pick % diagrams.len() as u64) as usize];
        let form = if orthogonal { Form::Orthogonal } else { Form::Seminormal };
        match build_rep(mu, &g, form).unwrap() {
            AnyRep::Exact(r) => prop_assert!(
                r.group_element_matrix(&w.mul(&x, &y)) == r.group_element_matrix(&x).matmul(&r.group_element_matrix(&y))
            ),
            AnyRep::Float(r) => prop_assert!(r
                .group_element_matrix(&w.mul(&x, &y))
                .approx_eq(&r.group_element_matrix(&x).matmul(&r.group_element_matrix(&y)), 1e-9)),
        }
    }
}
