//! Kronecker and induced multiplicities: exact tensor-square statistics and
//! induction tables, with every inner product checked for integrality.

use crate::chartab::CharacterTable;
use crate::embed::ClassFusion;
use crate::error::{ConsistencyError, Error, MultError};
use crate::scan::{ClassField, ScanTable};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};
use rayon::prelude::*;

/// Largest class count for which the full k^3 coefficient cube is stored;
/// beyond it only streaming statistics are kept.
pub const KRON_CUBE_CAP: usize = 160;

fn as_multiplicity(v: BigRational, context: impl Fn() -> String) -> Result<BigInt, MultError> {
    if !v.is_integer() || v.is_negative() {
        return Err(MultError::IntegralityDefect {
            context: context(),
            value: v.to_string(),
        });
    }
    Ok(v.to_integer())
}

/// Kronecker-coefficient engine for one character table.
pub struct Kron {
    pub group_name: String,
    pub scan: ScanTable,
    pub conj_perm: Vec<usize>,
    pub degrees: Vec<BigInt>,
    pub centralizers: Vec<BigInt>,
}

impl Kron {
    pub fn new(t: &CharacterTable) -> Result<Kron, ConsistencyError> {
        Ok(Kron {
            group_name: t.group_name.clone(),
            scan: ScanTable::new(t)?,
            conj_perm: t.conj_perm.clone(),
            degrees: t.degrees.clone(),
            centralizers: t.centralizers.clone(),
        })
    }

    pub fn k(&self) -> usize {
        self.scan.k
    }

    /// g(rho, phi, psi) = <rho, phi.psi>, checked non-negative integer.
    pub fn coefficient(&self, rho: usize, phi: usize, psi: usize) -> Result<BigInt, MultError> {
        as_multiplicity(self.scan.triple(rho, phi, psi), || {
            format!("g({}, {}, {}) for {}", rho, phi, psi, self.group_name)
        })
    }
}

/// One-off Kronecker coefficient straight from a table.
pub fn kronecker(
    t: &CharacterTable,
    rho: usize,
    phi: usize,
    psi: usize,
) -> Result<BigInt, Error> {
    Ok(Kron::new(t)?.coefficient(rho, phi, psi)?)
}

/// Dense k^3 cube of coefficients, index order (rho, phi, psi).
pub struct KronCube {
    pub k: usize,
    values: Vec<BigInt>,
}

impl KronCube {
    pub fn get(&self, rho: usize, phi: usize, psi: usize) -> &BigInt {
        &self.values[(rho * self.k + phi) * self.k + psi]
    }
}

/// Whole-cube statistics; exact regardless of whether the cube is stored.
pub struct KronStats {
    pub k: usize,
    pub max: BigInt,
    /// Lexicographically least (rho, phi, psi) attaining `max`.
    pub argmax: (usize, usize, usize),
    pub sum: BigInt,
    pub sum_squares: BigInt,
}

impl KronStats {
    /// Mean coefficient over all k^3 triples.
    pub fn average(&self) -> BigRational {
        let k = BigInt::from(self.k);
        BigRational::new(self.sum.clone(), &k * &k * &k)
    }
}

/// Decomposes each unordered pair product once (the coefficient is symmetric
/// in its last two arguments), scanning all k^3 triples in O(k^2) product
/// decompositions. Pairs run in parallel; assembly order is fixed, so the
/// result is deterministic. The cube itself is kept only for k <= cap.
pub fn kron_analysis(
    kron: &Kron,
    cap: usize,
) -> Result<(KronStats, Option<KronCube>), MultError> {
    let k = kron.k();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|p| (p..k).map(move |s| (p, s)))
        .collect();
    let per_pair: Vec<Vec<BigInt>> = pairs
        .par_iter()
        .map(|&(p, s)| {
            let prods = kron.scan.pair_products(p, s);
            (0..k)
                .map(|r| {
                    as_multiplicity(kron.scan.triple_from_products(&prods, r), || {
                        format!("g({}, {}, {}) for {}", r, p, s, kron.group_name)
                    })
                })
                .collect::<Result<Vec<BigInt>, MultError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut max = BigInt::zero();
    let mut argmax = (0usize, 0usize, 0usize);
    let mut have_max = false;
    let mut sum = BigInt::zero();
    let mut sum_squares = BigInt::zero();
    for (&(p, s), row) in pairs.iter().zip(&per_pair) {
        // (r, p, s) with p < s stands for its mirror (r, s, p) too; the
        // lexicographically least argmax always has p <= s
        let weight = if p == s { 1u32 } else { 2 };
        for (r, v) in row.iter().enumerate() {
            sum += v * weight;
            sum_squares += v * v * weight;
            let cand = (r, p, s);
            if !have_max || *v > max || (*v == max && cand < argmax) {
                max = v.clone();
                argmax = cand;
                have_max = true;
            }
        }
    }

    let cube = if k <= cap {
        let mut values = vec![BigInt::zero(); k * k * k];
        for (&(p, s), row) in pairs.iter().zip(&per_pair) {
            for (r, v) in row.iter().enumerate() {
                values[(r * k + p) * k + s] = v.clone();
                values[(r * k + s) * k + p] = v.clone();
            }
        }
        Some(KronCube { k, values })
    } else {
        None
    };

    Ok((
        KronStats {
            k,
            max,
            argmax,
            sum,
            sum_squares,
        },
        cube,
    ))
}

/// max over psi of g(rho, phi, psi), with the least maximizing psi.
///
/// Costs one pair decomposition: g(rho, phi, psi) equals the conjugation-free
/// form <conj(rho).phi.psi, 1>, so the per-class products of conj(rho) and
/// phi are reused across every psi.
pub fn kron_refined_max(
    kron: &Kron,
    rho: usize,
    phi: usize,
) -> Result<(BigInt, usize), MultError> {
    let prods = kron.scan.pair_products(kron.conj_perm[rho], phi);
    let mut best = BigInt::zero();
    let mut best_psi = 0usize;
    for psi in 0..kron.k() {
        // conjugating conj(psi) inside the triple form leaves plain psi
        let v = as_multiplicity(
            kron.scan.triple_from_products(&prods, kron.conj_perm[psi]),
            || format!("g({}, {}, {}) for {}", rho, phi, psi, kron.group_name),
        )?;
        if psi == 0 || v > best {
            best = v;
            best_psi = psi;
        }
    }
    Ok((best, best_psi))
}

/// Sum of centralizer orders: the closed form for the cube's sum of squares.
pub fn a_from_centralizers(centralizers: &[BigInt]) -> BigInt {
    centralizers.iter().sum()
}

/// Evaluates the symmetric form T(conj(rho), phi, psi) = <a.b.c, 1> under all
/// six argument orders and under simultaneous conjugation, and compares each
/// against g(rho, phi, psi). Catches conjugation and inverse-class wiring
/// errors that plain orthogonality tests miss.
pub fn kron_symmetry_check(
    kron: &Kron,
    rho: usize,
    phi: usize,
    psi: usize,
) -> Result<bool, MultError> {
    let g = BigRational::from_integer(kron.coefficient(rho, phi, psi)?);
    let a = kron.conj_perm[rho];
    let orders = [
        [a, phi, psi],
        [a, psi, phi],
        [phi, a, psi],
        [phi, psi, a],
        [psi, a, phi],
        [psi, phi, a],
    ];
    for [x, y, z] in orders {
        if kron.scan.product_form(x, y, z) != g {
            return Ok(false);
        }
    }
    let conj = [rho, kron.conj_perm[phi], kron.conj_perm[psi]];
    Ok(kron.scan.product_form(conj[0], conj[1], conj[2]) == g)
}

/// Smaller-degree weight (order - M b^2) / b^2: the squared degrees of all
/// non-maximal irreducibles measured against the top degree b (M is the
/// number of degree-b rows). Zero exactly for abelian groups.
pub fn epsilon(degrees: &[BigInt], order: &BigInt) -> Result<BigRational, MultError> {
    let sum: BigInt = degrees.iter().map(|d| d * d).sum();
    if sum != *order {
        return Err(MultError::BurnsideViolation {
            sum: sum.to_string(),
            order: order.to_string(),
        });
    }
    let b = degrees.iter().max().expect("degree list is nonempty");
    let m: usize = degrees.iter().filter(|d| *d == b).count();
    let b2 = b * b;
    Ok(BigRational::new(order - &b2 * BigInt::from(m), b2))
}

/// Multiplicity table of induced irreducibles: entry (rho, pi) counts rho in
/// the induction of pi from the subgroup to the parent.
pub struct InducedMatrix {
    pub parent_name: String,
    pub sub_name: String,
    /// Subgroup index [G:H].
    pub index: BigInt,
    /// entries[rho][pi], parent rows by sub columns.
    pub entries: Vec<Vec<BigInt>>,
    pub parent_degrees: Vec<BigInt>,
    pub sub_degrees: Vec<BigInt>,
}

/// Computes every entry by reciprocity, <Res rho, pi>_H, through per-class
/// trace forms at the join of the two columns' cyclotomic levels. Both
/// degree-weighted marginals are verified exactly before returning.
pub fn induced_matrix(
    tg: &CharacterTable,
    th: &CharacterTable,
    fusion: &ClassFusion,
) -> Result<InducedMatrix, Error> {
    if fusion.parent_name != tg.group_name || fusion.sub_name != th.group_name {
        return Err(MultError::FusionMismatch(format!(
            "fusion is {} in {}, tables are {} in {}",
            fusion.sub_name, fusion.parent_name, th.group_name, tg.group_name
        ))
        .into());
    }
    if BigInt::from(fusion.parent_order) != tg.order
        || BigInt::from(fusion.sub_order) != th.order
        || fusion.fusion.len() != th.k
    {
        return Err(MultError::FusionMismatch(format!(
            "fusion sized for orders {}/{} with {} classes",
            fusion.parent_order,
            fusion.sub_order,
            fusion.fusion.len()
        ))
        .into());
    }
    let index = BigInt::from(fusion.parent_order / fusion.sub_order);

    let kg = tg.k;
    let kh = th.k;
    let fields: Vec<ClassField> = (0..kh)
        .map(|b| {
            let mut level = 1u64;
            for r in 0..kh {
                let f = th.values[r][b].conductor();
                level = level / crate::perm::gcd(level, f) * f;
            }
            for r in 0..kg {
                let f = tg.values[r][fusion.fusion[b]].conductor();
                level = level / crate::perm::gcd(level, f) * f;
            }
            ClassField::new(level)
        })
        .collect();
    for b in 0..kh {
        if fields[b].level != fields[th.inv_class[b]].level {
            return Err(ConsistencyError(format!(
                "subgroup columns {} and {} disagree on cyclotomic level",
                b,
                th.inv_class[b]
            ))
            .into());
        }
    }
    let sub_rows: Vec<Vec<Vec<BigInt>>> = (0..kh)
        .map(|r| {
            (0..kh)
                .map(|b| fields[b].lift(&th.values[r][b]))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let parent_rows: Vec<Vec<Vec<BigInt>>> = (0..kg)
        .map(|r| {
            (0..kh)
                .map(|b| fields[b].lift(&tg.values[r][fusion.fusion[b]]))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut entries = Vec::with_capacity(kg);
    for rho in 0..kg {
        let mut row = Vec::with_capacity(kh);
        for pi in 0..kh {
            let mut acc = BigRational::zero();
            for b in 0..kh {
                let f = &fields[b];
                // conj(pi(b)) is pi's value at the subgroup's inverse class
                let prod = f.mul(&parent_rows[rho][b], &sub_rows[pi][th.inv_class[b]]);
                let t = f.trace(&prod);
                if !t.is_zero() {
                    acc += BigRational::new(&th.class_sizes[b] * t, BigInt::from(f.phi));
                }
            }
            acc /= BigRational::from_integer(th.order.clone());
            row.push(as_multiplicity(acc, || {
                format!(
                    "c({}, {}) for {} into {}",
                    rho, pi, th.group_name, tg.group_name
                )
            })?);
        }
        entries.push(row);
    }

    for pi in 0..kh {
        let lhs: BigInt = (0..kg).map(|rho| &entries[rho][pi] * &tg.degrees[rho]).sum();
        let rhs = &index * &th.degrees[pi];
        if lhs != rhs {
            return Err(MultError::IdentityViolation {
                context: format!("degree sum over column {}", pi),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            }
            .into());
        }
    }
    for rho in 0..kg {
        let lhs: BigInt = (0..kh).map(|pi| &entries[rho][pi] * &th.degrees[pi]).sum();
        if lhs != tg.degrees[rho] {
            return Err(MultError::IdentityViolation {
                context: format!("degree sum over row {}", rho),
                lhs: lhs.to_string(),
                rhs: tg.degrees[rho].to_string(),
            }
            .into());
        }
    }

    Ok(InducedMatrix {
        parent_name: tg.group_name.clone(),
        sub_name: th.group_name.clone(),
        index,
        entries,
        parent_degrees: tg.degrees.clone(),
        sub_degrees: th.degrees.clone(),
    })
}

/// Largest entry with its lexicographically least (rho, pi) position.
pub fn induced_max(m: &InducedMatrix) -> (BigInt, (usize, usize)) {
    let mut best = BigInt::zero();
    let mut at = (0usize, 0usize);
    let mut have = false;
    for (rho, row) in m.entries.iter().enumerate() {
        for (pi, v) in row.iter().enumerate() {
            if !have || *v > best {
                best = v.clone();
                at = (rho, pi);
                have = true;
            }
        }
    }
    (best, at)
}

pub fn induced_sum_squares(m: &InducedMatrix) -> BigInt {
    m.entries
        .iter()
        .flat_map(|row| row.iter())
        .map(|v| v * v)
        .sum()
}

/// Closed form for the squared entry sum: sum over subgroup classes of the
/// parent centralizer order of the fused class over the subgroup centralizer
/// order. Always a rational with value at least [G:H].
pub fn lr_rhs(fusion: &ClassFusion) -> BigRational {
    let mut acc = BigRational::zero();
    for b in 0..fusion.fusion.len() {
        acc += BigRational::new(
            BigInt::from(fusion.z_parent[b]),
            BigInt::from(fusion.z_sub[b]),
        );
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::embed::{class_fusion, embed_in_square, SubgroupPair};
    use crate::families::Family;
    use num::One;

    fn table(spec: &str) -> CharacterTable {
        let g = Family::parse(spec).unwrap().build().unwrap();
        character_table(&g, 0)
    }

    fn analysis(spec: &str) -> (CharacterTable, KronStats, KronCube) {
        let t = table(spec);
        let kron = Kron::new(&t).unwrap();
        let (stats, cube) = kron_analysis(&kron, KRON_CUBE_CAP).unwrap();
        (t, stats, cube.unwrap())
    }

    #[test]
    fn s3_cube() {
        let (t, stats, cube) = analysis("s:3");
        // pair products all multiplicity-free: sum and sum of squares agree
        assert_eq!(stats.sum, BigInt::from(11));
        assert_eq!(stats.sum_squares, BigInt::from(11));
        assert_eq!(stats.sum_squares, a_from_centralizers(&t.centralizers));
        assert_eq!(stats.max, BigInt::from(1));
        assert_eq!(stats.argmax, (0, 0, 1));
        assert_eq!(
            stats.average(),
            BigRational::new(BigInt::from(11), BigInt::from(27))
        );
        // rows are (sgn, triv, std); std x std = triv + sgn + std
        for rho in 0..3 {
            assert_eq!(*cube.get(rho, 2, 2), BigInt::from(1));
        }
        assert_eq!(*cube.get(2, 0, 2), BigInt::from(1));
        assert_eq!(*cube.get(0, 2, 2), BigInt::from(1));
    }

    #[test]
    fn s4_statistics() {
        let (t, stats, cube) = analysis("s:4");
        assert_eq!(stats.sum_squares, BigInt::from(43));
        assert_eq!(stats.sum_squares, a_from_centralizers(&t.centralizers));
        // the two degree-3 rows close under product with multiplicity 1
        assert_eq!(stats.max, BigInt::from(1));
        let top = t.k - 1;
        assert_eq!(*cube.get(top, top, top), BigInt::one());
    }

    #[test]
    fn coefficient_bounded_by_min_degree() {
        for spec in ["s:4", "a:5", "sl2:5", "d:6"] {
            let (t, _, cube) = analysis(spec);
            for r in 0..t.k {
                for p in 0..t.k {
                    for s in 0..t.k {
                        let bound = t.degrees[r].clone().min(t.degrees[p].clone()).min(t.degrees[s].clone());
                        assert!(*cube.get(r, p, s) <= bound, "{} ({},{},{})", spec, r, p, s);
                    }
                }
            }
        }
    }

    #[test]
    fn sum_squares_equals_centralizer_sum() {
        for spec in ["a:4", "d:5", "q8", "sl2:3", "gl:2:3", "u:3:3"] {
            let t = table(spec);
            let kron = Kron::new(&t).unwrap();
            let (stats, _) = kron_analysis(&kron, 0).unwrap();
            assert_eq!(
                stats.sum_squares,
                a_from_centralizers(&t.centralizers),
                "{}",
                spec
            );
        }
    }

    #[test]
    fn refined_max_matches_cube() {
        let (t, _, cube) = analysis("sl2:5");
        let kron = Kron::new(&t).unwrap();
        for rho in 0..t.k {
            for phi in 0..t.k {
                let (v, psi) = kron_refined_max(&kron, rho, phi).unwrap();
                let best = (0..t.k).map(|s| cube.get(rho, phi, s).clone()).max().unwrap();
                assert_eq!(v, best);
                assert_eq!(cube.get(rho, phi, psi), &v);
                assert!((0..psi).all(|s| *cube.get(rho, phi, s) < v));
            }
        }
    }

    #[test]
    fn symmetry_holds_on_irrational_tables() {
        for spec in ["a:5", "q8", "sl2:3"] {
            let t = table(spec);
            let kron = Kron::new(&t).unwrap();
            for r in 0..t.k {
                for p in 0..t.k {
                    assert!(kron_symmetry_check(&kron, r, p, (r + p) % t.k).unwrap());
                }
            }
        }
    }

    #[test]
    fn epsilon_values() {
        let t = table("s:3");
        assert_eq!(
            epsilon(&t.degrees, &t.order).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
        // abelian groups: every degree is maximal, so the ratio vanishes
        let c = table("c:7");
        assert_eq!(epsilon(&c.degrees, &c.order).unwrap(), BigRational::zero());
        // two degree-3 rows in S4: numerator drops both, denominator is b^2
        let s4 = table("s:4");
        assert_eq!(
            epsilon(&s4.degrees, &s4.order).unwrap(),
            BigRational::new(BigInt::from(2), BigInt::from(3))
        );
        let bad = [BigInt::from(1), BigInt::from(2)];
        assert!(matches!(
            epsilon(&bad, &BigInt::from(6)),
            Err(MultError::BurnsideViolation { .. })
        ));
    }

    #[test]
    fn induced_s2_in_s3() {
        let pair = SubgroupPair::parse("s:3/s:2").unwrap();
        let e = pair.build().unwrap();
        let fusion = class_fusion(&e);
        let tg = character_table(&e.parent, 0);
        let th = character_table(&e.sub, 0);
        let m = induced_matrix(&tg, &th, &fusion).unwrap();
        assert_eq!(m.index, BigInt::from(3));
        // parent rows (sgn, triv, std) by sub columns (sgn, triv)
        let want = [[1, 0], [0, 1], [1, 1]];
        for r in 0..3 {
            for c in 0..2 {
                assert_eq!(m.entries[r][c], BigInt::from(want[r][c]), "({},{})", r, c);
            }
        }
        assert_eq!(induced_sum_squares(&m), BigInt::from(4));
        assert_eq!(
            lr_rhs(&fusion),
            BigRational::new(BigInt::from(4), BigInt::one())
        );
        assert_eq!(induced_max(&m), (BigInt::one(), (0, 0)));
    }

    #[test]
    fn diagonal_recovers_kronecker() {
        // H embedded diagonally in H x H: induced statistics match the
        // Kronecker cube of H itself
        let e = embed_in_square(&Family::parse("s:3").unwrap(), true).unwrap();
        let fusion = class_fusion(&e);
        let tg = character_table(&e.parent, 0);
        let th = character_table(&e.sub, 0);
        let m = induced_matrix(&tg, &th, &fusion).unwrap();
        assert_eq!(induced_sum_squares(&m), BigInt::from(11));
        assert_eq!(lr_rhs(&fusion), BigRational::from_integer(BigInt::from(11)));
        assert_eq!(induced_max(&m).0, BigInt::one());
    }

    #[test]
    fn factor_max_is_top_degree() {
        // H x 1 inside H x H: the induced multiplicity of sigma x tau in
        // sigma is tau(1), so the matrix maximum is b(H)
        let e = embed_in_square(&Family::parse("s:3").unwrap(), false).unwrap();
        let fusion = class_fusion(&e);
        let tg = character_table(&e.parent, 0);
        let th = character_table(&e.sub, 0);
        let m = induced_matrix(&tg, &th, &fusion).unwrap();
        assert_eq!(induced_max(&m).0, *th.max_degree());
        assert_eq!(
            induced_sum_squares(&m),
            lr_rhs(&fusion).to_integer()
        );
    }

    #[test]
    fn whole_group_pair_is_identity_matrix() {
        let pair = SubgroupPair::parse("s:4/s:4").unwrap();
        let e = pair.build().unwrap();
        let fusion = class_fusion(&e);
        let tg = character_table(&e.parent, 0);
        let th = character_table(&e.sub, 0);
        let m = induced_matrix(&tg, &th, &fusion).unwrap();
        for r in 0..tg.k {
            for c in 0..th.k {
                let want = if r == c { BigInt::one() } else { BigInt::zero() };
                assert_eq!(m.entries[r][c], want);
            }
        }
    }

    #[test]
    fn index_bounds_hold_on_battery_pairs() {
        for spec in ["s:4/a:4", "s:4/d:4", "s:5/s:4", "s:4/c:4"] {
            let e = SubgroupPair::parse(spec).unwrap().build().unwrap();
            let fusion = class_fusion(&e);
            let tg = character_table(&e.parent, 0);
            let th = character_table(&e.sub, 0);
            let m = induced_matrix(&tg, &th, &fusion).unwrap();
            let ssq = induced_sum_squares(&m);
            let rhs = lr_rhs(&fusion);
            assert_eq!(BigRational::from_integer(ssq.clone()), rhs, "{}", spec);
            assert!(ssq >= m.index, "{}", spec);
            // each row and column contributes at most the subgroup index
            for row in &m.entries {
                let s: BigInt = row.iter().map(|v| v * v).sum();
                assert!(s <= m.index, "{} row", spec);
            }
            for c in 0..th.k {
                let s: BigInt = (0..tg.k).map(|r| &m.entries[r][c] * &m.entries[r][c]).sum();
                assert!(s <= m.index, "{} column", spec);
            }
        }
    }
}
