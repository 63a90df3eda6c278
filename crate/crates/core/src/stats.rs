//! One-stop numeric profile of an enumerated group and its table.

use crate::chartab::CharacterTable;
use crate::group::FiniteGroup;
use num::bigint::BigInt;
use num::rational::BigRational;

pub struct GroupStats {
    pub name: String,
    pub order: BigInt,
    pub k: usize,
    /// Largest irreducible degree.
    pub b: BigInt,
    /// |G|/b - b, the covering-number style excess of the top degree.
    pub e: BigRational,
    /// Squared non-maximal degrees over b^2.
    pub epsilon: BigRational,
    /// Sum of all irreducible degrees.
    pub degree_sum: BigInt,
    pub involutions: usize,
    pub center_order: usize,
    pub is_simple: bool,
    pub is_nilpotent: bool,
    pub nilpotency_class: Option<usize>,
}

pub fn group_stats(g: &FiniteGroup, t: &CharacterTable) -> GroupStats {
    let b = t.max_degree().clone();
    let e = BigRational::new(t.order.clone(), b.clone()) - BigRational::from_integer(b.clone());
    let epsilon = crate::mult::epsilon(&t.degrees, &t.order)
        .expect("computed tables satisfy the degree identity");
    let nilpotency_class = g.nilpotency_class();
    GroupStats {
        name: t.group_name.clone(),
        order: t.order.clone(),
        k: t.k,
        b,
        e,
        epsilon,
        degree_sum: t.degrees.iter().sum(),
        involutions: g.involution_count(),
        center_order: g.center_order(),
        is_simple: g.is_simple(),
        is_nilpotent: nilpotency_class.is_some(),
        nilpotency_class,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::families::Family;
    use num::Zero;

    fn stats(spec: &str) -> GroupStats {
        let g = Family::parse(spec).unwrap().build().unwrap();
        let t = character_table(&g, 0);
        group_stats(&g, &t)
    }

    #[test]
    fn s3_profile() {
        let s = stats("s:3");
        assert_eq!(s.k, 3);
        assert_eq!(s.b, BigInt::from(2));
        assert_eq!(s.e, BigRational::from_integer(BigInt::from(1)));
        assert_eq!(
            s.epsilon,
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
        assert_eq!(s.degree_sum, BigInt::from(4));
        assert_eq!(s.involutions, 4);
        assert!(!s.is_nilpotent);
        assert!(!s.is_simple);
    }

    #[test]
    fn c4_profile() {
        let s = stats("c:4");
        assert_eq!(s.b, BigInt::from(1));
        assert_eq!(s.e, BigRational::from_integer(BigInt::from(3)));
        assert!(s.epsilon.is_zero());
        assert_eq!(s.nilpotency_class, Some(1));
        assert_eq!(s.center_order, 4);
    }

    #[test]
    fn s4_degree_sum_counts_involutions() {
        let s = stats("s:4");
        assert_eq!(s.k, 5);
        assert_eq!(s.b, BigInt::from(3));
        assert_eq!(s.degree_sum, BigInt::from(s.involutions));
        assert_eq!(s.involutions, 10);
    }
}
