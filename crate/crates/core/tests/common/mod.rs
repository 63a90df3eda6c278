use mbx_core::CharacterTable;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

/// Independent tensor-decomposition oracle: multiplies character values
/// pointwise per class and integrates against each row with plain rational
/// arithmetic, no shared code with the production inner-product engine.
/// Only valid for tables whose values are all rational.
pub fn brute_force_cube(t: &CharacterTable) -> Vec<BigInt> {
    let k = t.k;
    let vals: Vec<Vec<BigRational>> = t
        .values
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.as_rational().expect("rational table").clone())
                .collect()
        })
        .collect();
    let order = BigRational::from_integer(t.order.clone());
    let sizes: Vec<BigRational> = t
        .class_sizes
        .iter()
        .map(|s| BigRational::from_integer(s.clone()))
        .collect();
    let mut out = Vec::with_capacity(k * k * k);
    for r in 0..k {
        for p in 0..k {
            for s in 0..k {
                let mut acc = BigRational::zero();
                for a in 0..k {
                    // conj(rho(x)) = rho(x^-1)
                    acc += &sizes[a] * &vals[p][a] * &vals[s][a] * &vals[r][t.inv_class[a]];
                }
                let g = acc / &order;
                assert!(
                    g.is_integer() && !g.numer().is_negative(),
                    "oracle produced a non-multiplicity"
                );
                out.push(g.to_integer());
            }
        }
    }
    out
}

// each test target compiles its own copy; not every target uses every helper
#[allow(dead_code)]
pub fn cube_index(k: usize, r: usize, p: usize, s: usize) -> usize {
    (r * k + p) * k + s
}
