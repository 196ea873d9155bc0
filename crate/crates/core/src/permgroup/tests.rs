use std::collections::BTreeSet;

use super::*;

fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
    // 1-based, like the DSL
    let cycles: Vec<Vec<usize>> = cycles
        .iter()
        .map(|c| c.iter().map(|x| x - 1).collect())
        .collect();
    Permutation::from_cycles(n, &cycles).unwrap()
}

fn group(n: usize, gens: &[&[&[usize]]]) -> PermutationGroup {
    PermutationGroup::new(n, gens.iter().map(|g| perm(n, g)).collect()).unwrap()
}

fn q8() -> PermutationGroup {
    group(
        8,
        &[
            &[&[1, 2, 3, 4], &[5, 6, 7, 8]],
            &[&[1, 5, 3, 7], &[2, 8, 4, 6]],
        ],
    )
}

fn s3() -> PermutationGroup {
    group(3, &[&[&[1, 2]], &[&[1, 2, 3]]])
}

fn cyclic(n: usize) -> PermutationGroup {
    let c: Vec<usize> = (1..=n).collect();
    group(n, &[&[&c]])
}

/// Conjugacy classes by direct conjugation of permutations, no tables.
fn brute_classes(g: &PermutationGroup) -> Vec<BTreeSet<Permutation>> {
    let elems = g.elements().unwrap().elements().to_vec();
    let mut classes: Vec<BTreeSet<Permutation>> = Vec::new();
    for x in &elems {
        if classes.iter().any(|c| c.contains(x)) {
            continue;
        }
        let class: BTreeSet<Permutation> = elems
            .iter()
            .map(|y| y.inverse().compose(x).compose(y))
            .collect();
        classes.push(class);
    }
    classes
}

/// Normal subgroups by checking every subset of the element set.
fn brute_normal_orders(g: &PermutationGroup) -> Vec<usize> {
    let elems = g.elements().unwrap().elements().to_vec();
    let n = elems.len();
    assert!(n <= 12);
    let mut orders = Vec::new();
    for mask in 1u32..(1 << n) {
        let set: Vec<&Permutation> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &elems[i])
            .collect();
        let contains = |p: &Permutation| set.contains(&p);
        if !contains(&elems[0]) {
            continue;
        }
        let closed = set
            .iter()
            .all(|a| set.iter().all(|b| contains(&a.compose(b))));
        let normal = set.iter().all(|a| {
            elems
                .iter()
                .all(|x| contains(&x.inverse().compose(a).compose(x)))
        });
        if closed && normal {
            orders.push(set.len());
        }
    }
    orders.sort_unstable();
    orders
}

#[test]
fn trivial_group() {
    let g = PermutationGroup::trivial();
    assert_eq!(g.order().unwrap(), 1);
    assert_eq!(g.class_count().unwrap(), 1);
    assert_eq!(g.normal_subgroups().unwrap().len(), 1);
}

#[test]
fn degree_zero_rejected() {
    assert!(PermutationGroup::new(0, vec![]).is_err());
}

#[test]
fn order_cap() {
    let s8 = group(8, &[&[&[1, 2, 3, 4, 5, 6, 7, 8]], &[&[1, 2]]]);
    assert!(matches!(
        s8.clone().with_cap(1000).order(),
        Err(Error::CapExceeded { .. })
    ));
    assert_eq!(s8.with_cap(50_000).order().unwrap(), 40320);
}

#[test]
fn q8_order_and_classes() {
    let g = q8();
    assert_eq!(g.order().unwrap(), 8);
    let mut sizes = g.conjugacy_classes().unwrap().sizes();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    let mut brute: Vec<usize> = brute_classes(&g).iter().map(|c| c.len()).collect();
    brute.sort_unstable();
    assert_eq!(sizes, brute);
}

#[test]
fn s3_classes_match_brute_force() {
    let g = s3();
    let classes = g.conjugacy_classes().unwrap();
    let table = g.elements().unwrap();
    let ours: BTreeSet<BTreeSet<Permutation>> = (0..classes.len())
        .map(|c| {
            classes
                .members(c)
                .iter()
                .map(|&x| table.element(x).clone())
                .collect()
        })
        .collect();
    let brute: BTreeSet<BTreeSet<Permutation>> = brute_classes(&g).into_iter().collect();
    assert_eq!(ours, brute);
    assert_eq!(classes.representative(0), 0);
}

#[test]
fn abelian_classes_are_singletons() {
    let g = cyclic(4);
    assert_eq!(g.conjugacy_classes().unwrap().sizes(), vec![1, 1, 1, 1]);
}

#[test]
fn class_sizes_sum_and_divide() {
    for g in [
        q8(),
        s3(),
        cyclic(6),
        group(4, &[&[&[1, 2, 3, 4]], &[&[1, 2]]]),
    ] {
        let n = g.order().unwrap();
        let sizes = g.conjugacy_classes().unwrap().sizes();
        assert_eq!(sizes.iter().sum::<usize>(), n);
        assert!(sizes.iter().all(|s| n % s == 0));
    }
}

#[test]
fn powers_and_rational_classes() {
    let g = q8();
    let classes = g.conjugacy_classes().unwrap();
    let t = g.elements().unwrap();
    assert_eq!(classes.exponent(), 4);
    for c in 0..classes.len() {
        assert_eq!(classes.power(t, c, 1), c);
        assert_eq!(classes.power(t, c, 2), classes.square_class(c));
        assert_eq!(classes.power(t, c, 3), classes.inverse_class(c));
    }
    // every element of order 4 squares to the central involution
    let central = classes.class_of((0..8).find(|&x| t.order_of(x) == 2).unwrap());
    for c in 0..classes.len() {
        if classes.element_order(c) == 4 {
            assert_eq!(classes.square_class(c), central);
        }
    }
    // in Q8 every element is conjugate to its inverse: rational = ordinary
    assert_eq!(classes.rational_classes(t).len(), 5);

    // C5: identity and one class of generators
    let c5 = cyclic(5);
    let rc = c5
        .conjugacy_classes()
        .unwrap()
        .rational_classes(c5.elements().unwrap());
    assert_eq!(rc.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 4]);
    // C12: one rational class per divisor
    let c12 = cyclic(12);
    let rc = c12
        .conjugacy_classes()
        .unwrap()
        .rational_classes(c12.elements().unwrap());
    assert_eq!(rc.len(), 6);
}

#[test]
fn normal_subgroups_match_brute_force() {
    let q = q8();
    let orders: Vec<usize> = q
        .normal_subgroups()
        .unwrap()
        .iter()
        .map(|n| n.order())
        .collect();
    assert_eq!(orders, vec![1, 2, 4, 4, 4, 8]);
    assert_eq!(orders, brute_normal_orders(&q));

    let s = s3();
    let orders: Vec<usize> = s
        .normal_subgroups()
        .unwrap()
        .iter()
        .map(|n| n.order())
        .collect();
    assert_eq!(orders, vec![1, 3, 6]);
    assert_eq!(orders, brute_normal_orders(&s));

    let c = cyclic(6);
    let orders: Vec<usize> = c
        .normal_subgroups()
        .unwrap()
        .iter()
        .map(|n| n.order())
        .collect();
    assert_eq!(orders, vec![1, 2, 3, 6]);
}

#[test]
fn normal_subgroups_closed_under_meet_and_join() {
    let a4 = group(4, &[&[&[1, 2, 3]], &[&[2, 3, 4]]]);
    let d8xc2 = group(6, &[&[&[1, 2, 3, 4]], &[&[1, 3]], &[&[5, 6]]]);
    for g in [q8(), a4, d8xc2] {
        let table = g.elements().unwrap();
        let normals = g.normal_subgroups().unwrap();
        for a in normals {
            assert!(a.is_normal_in(table));
            for b in normals {
                let meet = a.intersection(b, table);
                let join = a.join(b, table);
                assert!(normals.iter().any(|n| n.elements() == meet.elements()));
                assert!(normals.iter().any(|n| n.elements() == join.elements()));
            }
        }
    }
}

#[test]
fn quotient_of_q8_by_center_is_klein_four() {
    let g = q8();
    let center = g.center().unwrap().clone();
    assert_eq!(center.order(), 2);
    let q = g.quotient(&center).unwrap();
    assert_eq!(q.order().unwrap(), 4);
    // brute force over the quotient's multiplication: every element squares to 1
    let t = q.elements().unwrap();
    for x in 0..4 {
        assert_eq!(t.mul(x, x), 0);
        for y in 0..4 {
            assert_eq!(t.mul(x, y), t.mul(y, x));
        }
    }
    let v4 = group(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]);
    assert!(q.is_isomorphic(&v4).unwrap());
}

#[test]
fn quotient_by_trivial_is_same_group() {
    let g = s3();
    let q = g.quotient(&g.trivial_subgroup().unwrap()).unwrap();
    assert!(q.is_isomorphic(&g).unwrap());
}

#[test]
fn quotient_rejects_non_normal() {
    let g = s3();
    let table = g.elements().unwrap();
    let transposition = table.index_of(&perm(3, &[&[1, 2]])).unwrap();
    let sub = NormalSubgroup::from_span(table.span([transposition]));
    assert!(matches!(g.quotient(&sub), Err(Error::NotNormal)));
}

#[test]
fn derived_data_examples() {
    let c7 = cyclic(7);
    let d = c7.derived_data().unwrap();
    assert_eq!(
        (
            d.derived.order(),
            d.abelianization_order,
            d.has_index_two_normal
        ),
        (1, 7, false)
    );

    let q = q8();
    let d = q.derived_data().unwrap();
    assert_eq!(d.derived.order(), 2);
    assert_eq!(d.derived.elements(), q.center().unwrap().elements());
    assert_eq!((d.abelianization_order, d.has_index_two_normal), (4, true));

    // brute-force commutator subgroup of S3
    let s = s3();
    let t = s.elements().unwrap();
    let comms: BTreeSet<Elem> = (0..6)
        .flat_map(|a| (0..6).map(move |b| (a, b)))
        .map(|(a, b)| t.commutator(a, b))
        .collect();
    assert_eq!(s.derived_data().unwrap().derived.order(), comms.len());
}

#[test]
fn isomorphism_examples() {
    let g = q8();
    let shuffled = group(
        8,
        &[
            &[&[1, 5, 3, 7], &[2, 8, 4, 6]],
            &[&[1, 2, 3, 4], &[5, 6, 7, 8]],
            &[&[1, 3], &[2, 4], &[5, 7], &[6, 8]],
        ],
    );
    assert!(g.is_isomorphic(&shuffled).unwrap());
    assert!(!g.is_isomorphic(&cyclic(8)).unwrap());
    let d8 = group(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
    assert!(!g.is_isomorphic(&d8).unwrap());
    // C6 as (1 2 3)(4 5) on five points
    let c6 = group(5, &[&[&[1, 2, 3], &[4, 5]]]);
    assert!(c6.is_isomorphic(&cyclic(6)).unwrap());
    assert!(!c6.is_isomorphic(&s3()).unwrap());
}

#[test]
fn stabilizer_chain_order_matches_enumeration() {
    let g = group(6, &[&[&[1, 2, 3, 4, 5, 6]], &[&[1, 2]]]);
    let chain_order = g.stabilizer_chain().unwrap().order();
    assert_eq!(chain_order, 720);
    assert_eq!(g.elements().unwrap().len(), 720);
}
