//! Exact character tables by the Dixon–Schneider modular method: class
//! matrices over F_p for a split prime p, simultaneous eigenspace
//! separation, degree recovery, and lifting of eigenvalue multiplicities to
//! cyclotomic values.

use crate::cyclotomic::Cyclotomic;
use crate::embed::ClassFusion;
use crate::error::{ConsistencyError, MultError};
use crate::group::FiniteGroup;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub group_name: String,
    pub order: BigInt,
    pub k: usize,
    pub class_sizes: Vec<BigInt>,
    pub centralizers: Vec<BigInt>,
    pub degrees: Vec<BigInt>,
    /// rows = irreducibles sorted by (degree, value vector), columns =
    /// classes in the group's canonical class order, column 0 = identity.
    pub values: Vec<Vec<Cyclotomic>>,
    /// conj_perm[r] = row holding the complex-conjugate character of row r.
    pub conj_perm: Vec<usize>,
    /// inv_class[c] = column holding the inverses of class c.
    pub inv_class: Vec<usize>,
}

impl CharacterTable {
    /// Largest irreducible degree b(G); rows are degree-sorted.
    pub fn max_degree(&self) -> &BigInt {
        self.degrees.last().expect("tables are nonempty")
    }

    pub fn conjugate_irrep(&self, row: usize) -> usize {
        self.conj_perm[row]
    }

    /// Exact inner product of rows i and j; 1 iff i = j on a valid table.
    pub fn inner_product(&self, i: usize, j: usize) -> BigRational {
        let mut acc = Cyclotomic::zero();
        for a in 0..self.k {
            // conj of row j at column a is its value at the inverse class
            let term = self.values[i][a].mul(&self.values[j][self.inv_class[a]]);
            acc = acc.add(&term.scale(&BigRational::from_integer(self.class_sizes[a].clone())));
        }
        let r = acc
            .as_rational()
            .expect("inner products of characters are rational")
            .clone();
        r / BigRational::from_integer(self.order.clone())
    }

    /// Values of row `row` restricted along a fusion: entry i is the value
    /// at the parent class fusion[i].
    pub fn restrict(&self, fusion: &ClassFusion, row: usize) -> Result<Vec<Cyclotomic>, MultError> {
        if fusion.parent_name != self.group_name
            || BigInt::from(fusion.parent_order) != self.order
        {
            return Err(MultError::FusionMismatch(format!(
                "fusion parent {} (order {}) does not match table {} (order {})",
                fusion.parent_name, fusion.parent_order, self.group_name, self.order
            )));
        }
        Ok(fusion
            .fusion
            .iter()
            .map(|&c| self.values[row][c].clone())
            .collect())
    }

    /// Row and column orthogonality plus the degree identity, all exact.
    pub fn check_orthogonality(&self) -> Result<(), ConsistencyError> {
        let sq: BigInt = self.degrees.iter().map(|d| d * d).sum();
        if sq != self.order {
            return Err(ConsistencyError(format!(
                "degree squares sum to {} instead of {}",
                sq, self.order
            )));
        }
        for i in 0..self.k {
            for j in i..self.k {
                let ip = self.inner_product(i, j);
                let expected = if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                if ip != expected {
                    return Err(ConsistencyError(format!(
                        "rows {} and {} have inner product {}",
                        i, j, ip
                    )));
                }
            }
        }
        for x in 0..self.k {
            for y in x..self.k {
                let mut acc = Cyclotomic::zero();
                for r in 0..self.k {
                    acc = acc.add(&self.values[r][x].mul(&self.values[r][self.inv_class[y]]));
                }
                let expected = if x == y {
                    Cyclotomic::from_bigint(self.centralizers[x].clone())
                } else {
                    Cyclotomic::zero()
                };
                if acc != expected {
                    return Err(ConsistencyError(format!(
                        "columns {} and {} break orthogonality: {}",
                        x, y, acc
                    )));
                }
            }
        }
        Ok(())
    }

    /// Derives the inverse-class permutation by matching conjugate columns;
    /// used when the table does not come with a group attached.
    pub fn inv_class_from_values(values: &[Vec<Cyclotomic>]) -> Result<Vec<usize>, ConsistencyError> {
        let k = values.len();
        let mut inv = vec![usize::MAX; k];
        for c in 0..k {
            let conj_col: Vec<Cyclotomic> = (0..k).map(|r| values[r][c].conj()).collect();
            let hit = (0..k).find(|&d| (0..k).all(|r| values[r][d] == conj_col[r]));
            match hit {
                Some(d) => inv[c] = d,
                None => {
                    return Err(ConsistencyError(format!(
                        "no column conjugate to column {}",
                        c
                    )))
                }
            }
        }
        Ok(inv)
    }
}

/// Computes the exact character table. `seed` only feeds the random
/// fallback combination of class matrices, which iterating the matrices in
/// canonical order never actually reaches.
pub fn character_table(g: &FiniteGroup, seed: u64) -> CharacterTable {
    let k = g.class_count();
    let n = g.order() as u64;
    let e = g.exponent();
    let p = dixon_prime(n, e);
    let fp = Fp { p };

    let sizes: Vec<u64> = g.class_sizes().iter().map(|&s| s as u64).collect();
    let inv_class: Vec<usize> = (0..k).map(|c| g.inverse_class(c)).collect();

    // lazily built class matrices, canonical class order
    let mut matrices: Vec<Option<Vec<Vec<u64>>>> = vec![None; k];
    let mut eigenvectors: Vec<Vec<u64>> = Vec::with_capacity(k);
    let mut subspaces: Vec<Vec<Vec<u64>>> = vec![identity_basis(k)];
    for i in 1..k {
        if subspaces.is_empty() {
            break;
        }
        let m = class_matrix(g, i);
        split_pass(&fp, &m, &mut subspaces, &mut eigenvectors);
        matrices[i] = Some(m);
    }
    // Defensive only: the class matrices always separate the k central
    // characters, so this loop body is unreachable for genuine groups.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while !subspaces.is_empty() {
        attempts += 1;
        assert!(attempts <= 64, "class algebra failed to split");
        let mut combo = vec![vec![0u64; k]; k];
        for (i, slot) in matrices.iter().enumerate().skip(1) {
            let m = slot
                .clone()
                .unwrap_or_else(|| class_matrix(g, i));
            let r = rng.gen_range(0..p);
            for (cr, mr) in combo.iter_mut().zip(&m) {
                for (cv, mv) in cr.iter_mut().zip(mr) {
                    *cv = fp.add(*cv, fp.mul(r, *mv));
                }
            }
        }
        split_pass(&fp, &combo, &mut subspaces, &mut eigenvectors);
    }
    assert_eq!(eigenvectors.len(), k);

    // normalize on the identity coordinate and order deterministically
    for w in eigenvectors.iter_mut() {
        let inv = fp.inv(w[0]);
        for v in w.iter_mut() {
            *v = fp.mul(*v, inv);
        }
    }
    eigenvectors.sort_unstable();

    // degrees: d^2 = |G| / sum_a w(a) w(abar) / |C_a|
    let n_mod = n % p;
    let mut degrees_mod = Vec::with_capacity(k);
    for w in &eigenvectors {
        let mut s = 0u64;
        for a in 0..k {
            let term = fp.mul(fp.mul(w[a], w[inv_class[a]]), fp.inv(sizes[a] % p));
            s = fp.add(s, term);
        }
        let d2 = fp.mul(n_mod, fp.inv(s));
        let d = fp
            .sqrt(d2)
            .expect("degree squares are quadratic residues");
        degrees_mod.push(d.min(p - d));
    }

    // values mod p: chi(a) = d * w(a) / |C_a|
    let mut values_mod = vec![vec![0u64; k]; k];
    for (t, w) in eigenvectors.iter().enumerate() {
        for a in 0..k {
            values_mod[t][a] = fp.mul(fp.mul(degrees_mod[t], w[a]), fp.inv(sizes[a] % p));
        }
    }

    // lifting: coherent root-of-unity choice across all element orders
    let gp = fp.primitive_root();
    let omega = fp.pow(gp, (p - 1) / e);
    let mut power_class: Vec<Vec<usize>> = Vec::with_capacity(k);
    for c in 0..k {
        let o = g.classes()[c].rep_order;
        let rep = &g.classes()[c].representative;
        let mut acc = crate::perm::Permutation::identity(g.degree);
        let mut row = Vec::with_capacity(o as usize);
        for _ in 0..o {
            row.push(g.class_index_of_element(g.index_of(&acc).unwrap()));
            acc = rep.compose(&acc);
        }
        power_class.push(row);
    }

    let mut rows: Vec<(BigInt, Vec<Cyclotomic>)> = Vec::with_capacity(k);
    for t in 0..k {
        let mut vals = Vec::with_capacity(k);
        for c in 0..k {
            let o = g.classes()[c].rep_order;
            let w_root = fp.pow(omega, e / o);
            let w_inv = fp.inv(w_root);
            let o_inv = fp.inv(o % p);
            let mut coeffs = Vec::with_capacity(o as usize);
            let mut total = BigInt::zero();
            for m in 0..o {
                let mut s = 0u64;
                let mut wml = 1u64;
                let step = fp.pow(w_inv, m);
                for l in 0..o {
                    s = fp.add(s, fp.mul(values_mod[t][power_class[c][l as usize]], wml));
                    wml = fp.mul(wml, step);
                }
                let cm = fp.mul(s, o_inv);
                // eigenvalue multiplicities sit in [0, d], well under p/2
                total += BigInt::from(cm);
                coeffs.push(BigInt::from(cm));
            }
            assert_eq!(
                total,
                BigInt::from(degrees_mod[t]),
                "lifted multiplicities must sum to the degree"
            );
            vals.push(Cyclotomic::from_root_coeffs(o, &coeffs));
        }
        rows.push((BigInt::from(degrees_mod[t]), vals));
    }
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let degrees: Vec<BigInt> = rows.iter().map(|r| r.0.clone()).collect();
    let values: Vec<Vec<Cyclotomic>> = rows.into_iter().map(|r| r.1).collect();
    let sq: BigInt = degrees.iter().map(|d| d * d).sum();
    assert_eq!(sq, BigInt::from(n), "degree squares must sum to the order");

    let conj_perm: Vec<usize> = (0..k)
        .map(|t| {
            let conj_vec: Vec<Cyclotomic> =
                (0..k).map(|a| values[t][inv_class[a]].clone()).collect();
            (0..k)
                .find(|&s| values[s] == conj_vec)
                .expect("irreducibles are closed under conjugation")
        })
        .collect();

    CharacterTable {
        group_name: g.name.clone(),
        order: BigInt::from(n),
        k,
        class_sizes: sizes.iter().map(|&s| BigInt::from(s)).collect(),
        centralizers: sizes.iter().map(|&s| BigInt::from(n / s)).collect(),
        degrees,
        values,
        conj_perm,
        inv_class,
    }
}

/// a_{ijk} for fixed i: entry [j][k] counts x in C_i with x^{-1} z_k in C_j.
fn class_matrix(g: &FiniteGroup, i: usize) -> Vec<Vec<u64>> {
    let k = g.class_count();
    let mut m = vec![vec![0u64; k]; k];
    let reps: Vec<usize> = g.classes().iter().map(|c| c.rep_index).collect();
    for &x in &g.classes()[i].members {
        let xi = g.inverse_index(x);
        for (col, &rep) in reps.iter().enumerate() {
            let y = g.product_index(xi, rep);
            m[g.class_index_of_element(y)][col] += 1;
        }
    }
    m
}

fn identity_basis(k: usize) -> Vec<Vec<u64>> {
    (0..k)
        .map(|i| {
            let mut row = vec![0u64; k];
            row[i] = 1;
            row
        })
        .collect()
}

/// Splits every current subspace along the eigenspaces of `m`; dimension-1
/// results move to `eigenvectors`.
fn split_pass(
    fp: &Fp,
    m: &[Vec<u64>],
    subspaces: &mut Vec<Vec<Vec<u64>>>,
    eigenvectors: &mut Vec<Vec<u64>>,
) {
    let mut next = Vec::new();
    for basis in subspaces.drain(..) {
        let s = basis.len();
        let pivots = rref_pivots(&basis);
        // matrix of the restricted action: column r = coordinates of the
        // image of basis vector r, read off at the pivot positions
        let mut r = vec![vec![0u64; s]; s];
        for (col, b) in basis.iter().enumerate() {
            for (jj, &pj) in pivots.iter().enumerate() {
                let mut acc = 0u64;
                for c in 0..b.len() {
                    acc = fp.add(acc, fp.mul(b[c], m[pj][c] % fp.p));
                }
                r[jj][col] = acc;
            }
        }
        let cp = charpoly(fp, &r);
        for (lambda, _mult) in roots_with_multiplicity(fp, &cp) {
            let kernel = eigen_kernel(fp, &r, lambda);
            // map kernel coordinates back to ambient vectors
            let mut vecs: Vec<Vec<u64>> = kernel
                .iter()
                .map(|coord| {
                    let mut v = vec![0u64; basis[0].len()];
                    for (ci, &cv) in coord.iter().enumerate() {
                        if cv != 0 {
                            for (vi, &bv) in basis[ci].iter().enumerate() {
                                v[vi] = fp.add(v[vi], fp.mul(cv, bv));
                            }
                        }
                    }
                    v
                })
                .collect();
            rref_in_place(fp, &mut vecs);
            if vecs.len() == 1 {
                eigenvectors.push(vecs.pop().unwrap());
            } else {
                next.push(vecs);
            }
        }
    }
    *subspaces = next;
}

/// Pivot columns of a basis already in reduced row echelon form.
fn rref_pivots(basis: &[Vec<u64>]) -> Vec<usize> {
    basis
        .iter()
        .map(|row| row.iter().position(|&v| v != 0).expect("zero basis row"))
        .collect()
}

fn rref_in_place(fp: &Fp, rows: &mut Vec<Vec<u64>>) {
    let ncols = match rows.first() {
        Some(r) => r.len(),
        None => return,
    };
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = fp.inv(rows[pivot_row][col]);
        for v in rows[pivot_row].iter_mut() {
            *v = fp.mul(*v, inv);
        }
        for rr in 0..rows.len() {
            if rr != pivot_row && rows[rr][col] != 0 {
                let f = rows[rr][col];
                for c in 0..ncols {
                    let delta = fp.mul(f, rows[pivot_row][c]);
                    rows[rr][c] = fp.sub(rows[rr][c], delta);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.retain(|r| r.iter().any(|&v| v != 0));
}

/// Characteristic polynomial via Hessenberg reduction, ascending
/// coefficients, monic of degree s.
fn charpoly(fp: &Fp, mat: &[Vec<u64>]) -> Vec<u64> {
    let s = mat.len();
    if s == 0 {
        return vec![1];
    }
    let mut h: Vec<Vec<u64>> = mat.to_vec();
    // similarity reduction to upper Hessenberg with row/column pivoting
    for col in 0..s.saturating_sub(2) {
        let Some(pivot) = ((col + 1)..s).find(|&r| h[r][col] != 0) else {
            continue;
        };
        if pivot != col + 1 {
            h.swap(pivot, col + 1);
            for row in h.iter_mut() {
                row.swap(pivot, col + 1);
            }
        }
        let inv = fp.inv(h[col + 1][col]);
        for r in (col + 2)..s {
            if h[r][col] == 0 {
                continue;
            }
            let f = fp.mul(h[r][col], inv);
            for c in 0..s {
                let delta = fp.mul(f, h[col + 1][c]);
                h[r][c] = fp.sub(h[r][c], delta);
            }
            // column counterpart keeps the transform a similarity
            for rr in 0..s {
                let delta = fp.mul(f, h[rr][r]);
                h[rr][col + 1] = fp.add(h[rr][col + 1], delta);
            }
        }
    }
    // p_m for leading m x m blocks, expanding along the last column
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=s {
        let mut pm = poly_mul_linear(fp, &polys[m - 1], h[m - 1][m - 1]);
        let mut subdiag = 1u64;
        for i in (0..m - 1).rev() {
            subdiag = fp.mul(subdiag, h[i + 1][i]);
            let coef = fp.mul(h[i][m - 1], subdiag);
            if coef != 0 {
                for (c, v) in polys[i].iter().enumerate() {
                    let delta = fp.mul(coef, *v);
                    pm[c] = fp.sub(pm[c], delta);
                }
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

/// (x - a) * poly
fn poly_mul_linear(fp: &Fp, poly: &[u64], a: u64) -> Vec<u64> {
    let mut out = vec![0u64; poly.len() + 1];
    for (i, &c) in poly.iter().enumerate() {
        out[i + 1] = fp.add(out[i + 1], c);
        out[i] = fp.sub(out[i], fp.mul(a, c));
    }
    out
}

/// All roots in F_p with multiplicities; the polynomial splits completely
/// because eigenvalues are sums of e-th roots of unity and p = 1 (mod e).
fn roots_with_multiplicity(fp: &Fp, poly: &[u64]) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    let mut current = poly.to_vec();
    let total = poly.len() - 1;
    let mut found = 0usize;
    for lambda in 0..fp.p {
        if found == total {
            break;
        }
        if eval_poly(fp, &current, lambda) != 0 {
            continue;
        }
        let mut mult = 0usize;
        loop {
            let (quot, rem) = deflate(fp, &current, lambda);
            if rem != 0 {
                break;
            }
            current = quot;
            mult += 1;
        }
        found += mult;
        out.push((lambda, mult));
    }
    assert_eq!(found, total, "characteristic polynomial must split over F_p");
    out
}

fn eval_poly(fp: &Fp, poly: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in poly.iter().rev() {
        acc = fp.add(fp.mul(acc, x), c);
    }
    acc
}

/// Synthetic division by (x - a): returns (quotient, remainder).
fn deflate(fp: &Fp, poly: &[u64], a: u64) -> (Vec<u64>, u64) {
    let mut quot = vec![0u64; poly.len() - 1];
    let mut carry = 0u64;
    for i in (0..poly.len()).rev() {
        let v = fp.add(poly[i], fp.mul(carry, a));
        if i == 0 {
            return (quot, v);
        }
        quot[i - 1] = v;
        carry = v;
    }
    unreachable!()
}

/// Basis of ker(r - lambda I) as coordinate rows.
fn eigen_kernel(fp: &Fp, r: &[Vec<u64>], lambda: u64) -> Vec<Vec<u64>> {
    let s = r.len();
    let mut m: Vec<Vec<u64>> = r.to_vec();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = fp.sub(row[i], lambda);
    }
    rref_in_place(fp, &mut m);
    let mut pivot_of_col = vec![usize::MAX; s];
    for (ri, row) in m.iter().enumerate() {
        let pc = row.iter().position(|&v| v != 0).unwrap();
        pivot_of_col[pc] = ri;
    }
    let mut basis = Vec::new();
    for free in 0..s {
        if pivot_of_col[free] != usize::MAX {
            continue;
        }
        let mut v = vec![0u64; s];
        v[free] = 1;
        for col in 0..s {
            let ri = pivot_of_col[col];
            if ri != usize::MAX {
                v[col] = fp.sub(0, m[ri][free]);
            }
        }
        basis.push(v);
    }
    basis
}

/// Smallest prime p = 1 (mod e) with p^2 > 4n. Cauchy forces p not to
/// divide n: otherwise the group would contain an element of order p,
/// making e >= p and p = 1 (mod e) impossible.
fn dixon_prime(n: u64, e: u64) -> u64 {
    let mut p = 1 + e;
    loop {
        if (p as u128) * (p as u128) > 4 * n as u128 && is_prime_u64(p) {
            return p;
        }
        p += e;
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic mod an odd prime fitting in u64.
#[derive(Clone, Copy)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn primitive_root(&self) -> u64 {
        let phi = self.p - 1;
        let mut factors = Vec::new();
        let mut m = phi;
        let mut d = 2u64;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        'cand: for g in 2..self.p {
            for &f in &factors {
                if self.pow(g, phi / f) == 1 {
                    continue 'cand;
                }
            }
            return g;
        }
        unreachable!("primitive root exists for every odd prime")
    }

    /// Tonelli–Shanks square root; None for non-residues.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        if self.p == 2 {
            return Some(a % 2);
        }
        if self.pow(a, (self.p - 1) / 2) != 1 {
            return None;
        }
        if self.p % 4 == 3 {
            return Some(self.pow(a, (self.p + 1) / 4));
        }
        let mut q = self.p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        // any quadratic non-residue serves as the generator
        let mut z = 2u64;
        while self.pow(z, (self.p - 1) / 2) == 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
                if i == m {
                    return None;
                }
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;

    fn table(spec: &str) -> CharacterTable {
        let g = Family::parse(spec).unwrap().build().unwrap();
        character_table(&g, 0)
    }

    fn degree_list(t: &CharacterTable) -> Vec<u64> {
        use num::ToPrimitive;
        t.degrees.iter().map(|d| d.to_u64().unwrap()).collect()
    }

    #[test]
    fn c3_table_is_root_powers() {
        let t = table("c:3");
        assert_eq!(degree_list(&t), vec![1, 1, 1]);
        t.check_orthogonality().unwrap();
        // every value is a power of z(3,1)
        for row in &t.values {
            for v in row {
                assert!(v.conductor() == 1 || v.conductor() == 3);
            }
        }
        assert_eq!(t.conj_perm[0], 0);
        assert_ne!(t.conj_perm[1], 1);
    }

    #[test]
    fn s3_and_s4_tables() {
        let t = table("s:3");
        assert_eq!(degree_list(&t), vec![1, 1, 2]);
        t.check_orthogonality().unwrap();
        let t4 = table("s:4");
        assert_eq!(degree_list(&t4), vec![1, 1, 2, 3, 3]);
        t4.check_orthogonality().unwrap();
        // symmetric group tables are rational integers
        for row in &t4.values {
            for v in row {
                assert!(v.as_integer().is_some());
            }
        }
        assert_eq!(t4.conj_perm, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn sl2_5_degree_multiset() {
        let t = table("sl2:5");
        assert_eq!(degree_list(&t), vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
        assert_eq!(*t.max_degree(), BigInt::from(6));
        t.check_orthogonality().unwrap();
        // the table is real: conjugation fixes every row
        assert_eq!(t.conj_perm, (0..9).collect::<Vec<_>>());
    }

    #[test]
    fn q8_and_dihedral() {
        let t = table("q8");
        assert_eq!(degree_list(&t), vec![1, 1, 1, 1, 2]);
        t.check_orthogonality().unwrap();
        let t = table("d:4");
        assert_eq!(degree_list(&t), vec![1, 1, 1, 1, 2]);
        let t = table("d:5");
        assert_eq!(degree_list(&t), vec![1, 1, 2, 2]);
        t.check_orthogonality().unwrap();
    }

    #[test]
    fn a5_and_irrational_values() {
        let t = table("a:5");
        assert_eq!(degree_list(&t), vec![1, 3, 3, 4, 5]);
        t.check_orthogonality().unwrap();
        // golden-ratio entries on the 5-cycles have conductor 5
        let has_irrational = t
            .values
            .iter()
            .flatten()
            .any(|v| v.conductor() == 5);
        assert!(has_irrational);
    }

    #[test]
    fn restriction_s3_to_s2() {
        use crate::embed::{class_fusion, embed};
        use crate::perm::Permutation;
        let g = Family::parse("s:3").unwrap().build().unwrap();
        let t = character_table(&g, 0);
        let e = embed(g, vec![Permutation::parse_cycles("(1 2)", 3).unwrap()]).unwrap();
        let f = class_fusion(&e);
        // std has degree 2: restricted values (2, 0)
        let std_vals = t.restrict(&f, 2).unwrap();
        assert_eq!(std_vals[0], Cyclotomic::from_int(2));
        assert_eq!(std_vals[1], Cyclotomic::zero());
        // row order is (degree, lex values): sgn, trivial, std
        let triv = t.restrict(&f, 1).unwrap();
        assert!(triv.iter().all(|v| *v == Cyclotomic::one()));
        let sgn = t.restrict(&f, 0).unwrap();
        assert_eq!(sgn[1], Cyclotomic::from_int(-1));
    }

    #[test]
    fn determinism_across_seeds() {
        let g = Family::parse("s:4").unwrap().build().unwrap();
        let a = character_table(&g, 0);
        let b = character_table(&g, 12345);
        assert_eq!(a.values, b.values);
        assert_eq!(a.degrees, b.degrees);
    }

    #[test]
    fn trivial_group_table() {
        let t = table("c:1");
        assert_eq!(t.k, 1);
        assert_eq!(degree_list(&t), vec![1]);
        assert_eq!(t.values[0][0], Cyclotomic::one());
    }

    #[test]
    fn fp_helpers() {
        let fp = Fp { p: 13 };
        assert_eq!(fp.mul(fp.inv(5), 5), 1);
        assert_eq!(fp.pow(2, 12), 1);
        let r = fp.sqrt(10).unwrap();
        assert_eq!(fp.mul(r, r), 10);
        assert!(fp.sqrt(5).is_none());
        let fp17 = Fp { p: 17 };
        for a in 1..17 {
            if let Some(r) = fp17.sqrt(a) {
                assert_eq!(fp17.mul(r, r), a);
            }
        }
    }
}
