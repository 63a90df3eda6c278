//! Fast exact inner products over a character table. Each class keeps its
//! values as integer vectors in the power basis of one cyclotomic level, and
//! rational inner products come out of integer trace forms: because the
//! class set is closed under the power maps and character values are
//! Galois-equivariant, sum_a |a| x_a equals
//! sum_a |a| Tr(x_a)/phi(L_a), so no compositum field is ever touched.

use crate::chartab::CharacterTable;
use crate::cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
use crate::error::ConsistencyError;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use std::sync::Arc;

fn moebius(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1i64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// One class's cyclotomic level: reduction polynomial and trace table.
pub struct ClassField {
    pub level: u64,
    pub phi: usize,
    cyclo: Arc<Vec<BigInt>>,
    /// tr[i] = Tr_{Q(zeta_L)/Q}(zeta_L^i), an integer.
    tr: Vec<BigInt>,
}

impl ClassField {
    pub fn new(level: u64) -> ClassField {
        let phi = euler_phi(level) as usize;
        let tr = (0..phi as u64)
            .map(|i| {
                let g = crate::perm::gcd(i, level);
                let o = level / g;
                BigInt::from(moebius(o) * (euler_phi(level) / euler_phi(o)) as i64)
            })
            .collect();
        ClassField {
            level,
            phi,
            cyclo: cyclotomic_polynomial(level),
            tr,
        }
    }

    /// Integer coordinates of `v` at this level; character values are
    /// algebraic integers, so a fractional coordinate means a broken table.
    pub fn lift(&self, v: &Cyclotomic) -> Result<Vec<BigInt>, ConsistencyError> {
        let coords = v.lift_coeffs(self.level);
        coords
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(ConsistencyError(format!(
                        "non-integral character value coordinate {}",
                        c
                    )))
                }
            })
            .collect()
    }

    /// Product reduced modulo the level's cyclotomic polynomial.
    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if self.phi == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for p in (self.phi..prod.len()).rev() {
            if prod[p].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut prod[p]);
            let base = p - self.phi;
            for (i, pc) in self.cyclo.iter().enumerate().take(self.phi) {
                if !pc.is_zero() {
                    prod[base + i] -= &c * pc;
                }
            }
        }
        prod.truncate(self.phi);
        prod.resize(self.phi, BigInt::zero());
        prod
    }

    pub fn trace(&self, v: &[BigInt]) -> BigInt {
        if self.phi == 1 {
            return v[0].clone();
        }
        v.iter().zip(&self.tr).map(|(a, t)| a * t).sum()
    }
}

pub struct ScanTable {
    pub k: usize,
    pub order: BigInt,
    pub class_sizes: Vec<BigInt>,
    pub inv_class: Vec<usize>,
    pub fields: Vec<ClassField>,
    /// rows[r][c]: integer coordinates of value (r, c) at class c's level.
    pub rows: Vec<Vec<Vec<BigInt>>>,
}

impl ScanTable {
    pub fn new(t: &CharacterTable) -> Result<ScanTable, ConsistencyError> {
        let k = t.k;
        let fields: Vec<ClassField> = (0..k)
            .map(|c| {
                let level = (0..k).fold(1u64, |acc, r| {
                    let f = t.values[r][c].conductor();
                    acc / crate::perm::gcd(acc, f) * f
                });
                ClassField::new(level)
            })
            .collect();
        // conjugate columns carry conjugate values, hence equal levels;
        // the trace identity relies on this symmetry
        for c in 0..k {
            if fields[c].level != fields[t.inv_class[c]].level {
                return Err(ConsistencyError(format!(
                    "columns {} and {} disagree on cyclotomic level",
                    c, t.inv_class[c]
                )));
            }
        }
        let rows = t
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(c, v)| fields[c].lift(v))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ScanTable {
            k,
            order: t.order.clone(),
            class_sizes: t.class_sizes.clone(),
            inv_class: t.inv_class.clone(),
            fields,
            rows,
        })
    }

    /// <rho, phi.psi>: the Kronecker inner product with rho conjugated.
    pub fn triple(&self, rho: usize, phi: usize, psi: usize) -> BigRational {
        let prods = self.pair_products(phi, psi);
        self.triple_from_products(&prods, rho)
    }

    /// Per-class products phi(c).psi(c), reusable across all rho.
    pub fn pair_products(&self, phi: usize, psi: usize) -> Vec<Vec<BigInt>> {
        (0..self.k)
            .map(|c| self.fields[c].mul(&self.rows[phi][c], &self.rows[psi][c]))
            .collect()
    }

    pub fn triple_from_products(&self, prods: &[Vec<BigInt>], rho: usize) -> BigRational {
        let mut acc = BigRational::zero();
        for c in 0..self.k {
            let f = &self.fields[c];
            // conj(rho(c)) is rho's value at the inverse class, same level
            let full = f.mul(&prods[c], &self.rows[rho][self.inv_class[c]]);
            let t = f.trace(&full);
            if !t.is_zero() {
                acc += BigRational::new(&self.class_sizes[c] * t, BigInt::from(f.phi));
            }
        }
        acc / BigRational::from_integer(self.order.clone())
    }

    /// <a.b.c, 1> with no conjugation anywhere: the fully symmetric form.
    pub fn product_form(&self, a: usize, b: usize, c: usize) -> BigRational {
        let mut acc = BigRational::zero();
        for cl in 0..self.k {
            let f = &self.fields[cl];
            let ab = f.mul(&self.rows[a][cl], &self.rows[b][cl]);
            let abc = f.mul(&ab, &self.rows[c][cl]);
            let t = f.trace(&abc);
            if !t.is_zero() {
                acc += BigRational::new(&self.class_sizes[cl] * t, BigInt::from(f.phi));
            }
        }
        acc / BigRational::from_integer(self.order.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::One;
    use crate::chartab::character_table;
    use crate::families::Family;

    fn scan(spec: &str) -> (CharacterTable, ScanTable) {
        let g = Family::parse(spec).unwrap().build().unwrap();
        let t = character_table(&g, 0);
        let s = ScanTable::new(&t).unwrap();
        (t, s)
    }

    /// Direct cyclotomic evaluation of <rho, phi.psi> for cross-checking.
    fn triple_direct(t: &CharacterTable, rho: usize, phi: usize, psi: usize) -> BigRational {
        let mut acc = Cyclotomic::zero();
        for c in 0..t.k {
            let prod = t.values[phi][c]
                .mul(&t.values[psi][c])
                .mul(&t.values[rho][c].conj());
            acc = acc.add(&prod.scale(&BigRational::from_integer(t.class_sizes[c].clone())));
        }
        acc.as_rational().expect("rational inner product").clone()
            / BigRational::from_integer(t.order.clone())
    }

    #[test]
    fn trace_form_matches_direct_small() {
        for spec in ["s:3", "c:3", "q8", "d:5", "a:4"] {
            let (t, s) = scan(spec);
            for rho in 0..t.k {
                for phi in 0..t.k {
                    for psi in 0..t.k {
                        assert_eq!(
                            s.triple(rho, phi, psi),
                            triple_direct(&t, rho, phi, psi),
                            "{} triple ({},{},{})",
                            spec,
                            rho,
                            phi,
                            psi
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn trace_form_matches_direct_irrational() {
        let (t, s) = scan("a:5");
        for rho in 0..t.k {
            for phi in 0..t.k {
                for psi in phi..t.k {
                    assert_eq!(s.triple(rho, phi, psi), triple_direct(&t, rho, phi, psi));
                }
            }
        }
    }

    #[test]
    fn trivial_column_levels() {
        let (_, s) = scan("s:4");
        // all symmetric-group values are integers: every level is 1
        assert!(s.fields.iter().all(|f| f.level == 1));
    }

    #[test]
    fn orthogonality_via_trace_form() {
        let (t, s) = scan("sl2:5");
        // <rho, psi . trivial> = delta: locate the trivial row by values
        let triv = (0..t.k)
            .position(|r| t.values[r].iter().all(|v| *v == Cyclotomic::one()))
            .unwrap();
        for rho in 0..t.k {
            for psi in 0..t.k {
                let expected = if rho == psi {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                assert_eq!(s.triple(rho, triv, psi), expected);
            }
        }
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(2), -1);
        assert_eq!(moebius(4), 0);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(12), 0);
    }
}
