//! Cross-checks of the production engines against independent recomputations:
//! slow rational sums over classes or elements that share no code with the
//! paths they certify.

mod common;

use common::{brute_force_cube, cube_index};
use mbx_core::{
    character_table, class_fusion, induced_matrix, kron_analysis, sn_character_table, Family,
    Kron, SubgroupPair, SN_TABLE_CAP,
};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;

#[test]
fn cube_matches_brute_force_on_s5() {
    let g = Family::parse("s:5").unwrap().build().unwrap();
    let t = character_table(&g, 0);
    let kron = Kron::new(&t).unwrap();
    let (stats, cube) = kron_analysis(&kron, t.k).unwrap();
    let cube = cube.expect("cap covers k");
    let oracle = brute_force_cube(&t);
    let k = t.k;
    assert_eq!(oracle.len(), k * k * k);
    for r in 0..k {
        for p in 0..k {
            for s in 0..k {
                assert_eq!(
                    *cube.get(r, p, s),
                    oracle[cube_index(k, r, p, s)],
                    "triple ({}, {}, {})",
                    r,
                    p,
                    s
                );
            }
        }
    }
    let brute_sum: BigInt = oracle.iter().sum();
    let brute_sq: BigInt = oracle.iter().map(|v| v * v).sum();
    assert_eq!(stats.sum, brute_sum);
    assert_eq!(stats.sum_squares, brute_sq);
}

#[test]
fn cube_matches_brute_force_on_combinatorial_s6() {
    let t = sn_character_table(6, SN_TABLE_CAP).unwrap();
    let kron = Kron::new(&t).unwrap();
    let (_, cube) = kron_analysis(&kron, t.k).unwrap();
    let cube = cube.expect("cap covers k");
    let oracle = brute_force_cube(&t);
    let k = t.k;
    for r in 0..k {
        for p in 0..k {
            for s in 0..k {
                assert_eq!(*cube.get(r, p, s), oracle[cube_index(k, r, p, s)]);
            }
        }
    }
}

#[test]
fn combinatorial_tables_match_enumerated_groups_up_to_s7() {
    for n in 2..=7u32 {
        let mn = sn_character_table(n, SN_TABLE_CAP).unwrap();
        let g = Family::parse(&format!("s:{}", n)).unwrap().build().unwrap();
        let dixon = character_table(&g, 0);
        assert_eq!(mn.k, dixon.k, "n = {}", n);
        assert_eq!(mn.order, dixon.order, "n = {}", n);
        assert_eq!(mn.centralizers, dixon.centralizers, "n = {}", n);
        assert_eq!(mn.class_sizes, dixon.class_sizes, "n = {}", n);
        assert_eq!(mn.inv_class, dixon.inv_class, "n = {}", n);
        let mut a = mn.values.clone();
        let mut b = dixon.values.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b, "value rows for n = {}", n);
        let mut da = mn.degrees.clone();
        let mut db = dixon.degrees.clone();
        da.sort();
        db.sort();
        assert_eq!(da, db, "degrees for n = {}", n);
    }
}

/// Element-level reciprocity: <Res rho, pi>_H summed over every subgroup
/// element, with each element located in the parent individually. Exercises
/// the whole fusion pipeline one element at a time. Symmetric and dihedral
/// tables only: the sum below needs every value to be rational.
#[test]
fn induction_matches_element_sums() {
    for spec in ["s:4/s:3", "s:4/d:4", "s:5/s:4"] {
        let e = SubgroupPair::parse(spec).unwrap().build().unwrap();
        let tg = character_table(&e.parent, 0);
        let th = character_table(&e.sub, 0);
        let fusion = class_fusion(&e);
        let m = induced_matrix(&tg, &th, &fusion).unwrap();

        let h_order = BigRational::from_integer(BigInt::from(e.sub.order()));
        for rho in 0..tg.k {
            for pi in 0..th.k {
                let mut acc = BigRational::zero();
                for i in 0..e.sub.order() {
                    let parent_class = e.parent.class_index_of_element(e.parent_index[i]);
                    let sub_class = e.sub.class_index_of_element(i);
                    let a = tg.values[rho][parent_class]
                        .as_rational()
                        .expect("rational parent table");
                    let b = th.values[pi][th.inv_class[sub_class]]
                        .as_rational()
                        .expect("rational sub table");
                    acc += a * b;
                }
                let val = acc / &h_order;
                assert!(val.is_integer(), "{} entry ({}, {})", spec, rho, pi);
                assert_eq!(
                    m.entries[rho][pi],
                    val.to_integer(),
                    "{} entry ({}, {})",
                    spec,
                    rho,
                    pi
                );
            }
        }
    }
}
