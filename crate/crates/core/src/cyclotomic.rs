//! Exact cyclotomic numbers: residues modulo the e-th cyclotomic polynomial
//! with the conductor minimized, so equality is coefficient equality and
//! values round-trip through files bit-exactly.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    crate::perm::gcd(a, b)
}

/// Monic integer coefficients of the n-th cyclotomic polynomial, ascending
/// powers, computed by exact division of x^n - 1 by the proper-divisor
/// factors. Memoized process-wide.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    static MEMO: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = memo.lock().unwrap().get(&n) {
        return hit.clone();
    }
    // x^n - 1
    let mut f: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    f[0] = BigInt::from(-1);
    f[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        f = divide_exact(&f, &phi_d);
    }
    let arc = Arc::new(f);
    memo.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Exact division of integer polynomials (divisor monic), ascending coeffs.
fn divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for p in (dd..=nd).rev() {
        let c = rem[p].clone();
        if c.is_zero() {
            continue;
        }
        let qp = p - dd;
        for (i, dc) in den.iter().enumerate() {
            rem[qp + i] -= &c * dc;
        }
        quot[qp] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// A cyclotomic number in canonical form: conductor-minimal residue in the
/// power basis 1, z, ..., z^{phi(e)-1} of Q(zeta_e).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(v))
    }

    pub fn from_rational(v: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![v],
        }
    }

    /// zeta_n^j.
    pub fn root_of_unity(n: u64, j: u64) -> Self {
        assert!(n >= 1);
        let mut poly = vec![BigRational::zero(); n as usize];
        poly[(j % n) as usize] = BigRational::one();
        Self::canonical(n, poly)
    }

    /// sum of c_m * zeta_n^m for integer coefficients indexed by power.
    pub fn from_root_coeffs(n: u64, coeffs: &[BigInt]) -> Self {
        assert!(coeffs.len() <= n as usize);
        let mut poly = vec![BigRational::zero(); n as usize];
        for (m, c) in coeffs.iter().enumerate() {
            poly[m] = BigRational::from_integer(c.clone());
        }
        Self::canonical(n, poly)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.conductor == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().and_then(|r| {
            if r.is_integer() {
                Some(r.to_integer())
            } else {
                None
            }
        })
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Canonical form of the residue `poly` (ascending powers, any length)
    /// in Q(zeta_n): reduce mod the cyclotomic polynomial, then minimize the
    /// conductor over divisors of n using Galois fixedness.
    fn canonical(n: u64, poly: Vec<BigRational>) -> Self {
        let reduced = reduce_mod(n, poly);
        // rational fast path: only the constant coordinate is populated
        if reduced.iter().skip(1).all(|c| c.is_zero()) {
            return Cyclotomic {
                conductor: 1,
                coeffs: vec![reduced.into_iter().next().unwrap()],
            };
        }
        for d in divisors(n) {
            if d == n {
                break;
            }
            if d == 1 || !fixed_by_stabilizer(n, d, &reduced) {
                // d = 1 was handled by the fast path above
                continue;
            }
            let coeffs = express_in_subfield(n, d, &reduced);
            return Cyclotomic {
                conductor: d,
                coeffs,
            };
        }
        Cyclotomic {
            conductor: n,
            coeffs: reduced,
        }
    }

    /// Coordinates of this value in the power basis of Q(zeta_m), n | m.
    pub fn lift_coeffs(&self, m: u64) -> Vec<BigRational> {
        assert_eq!(m % self.conductor, 0, "lift target must be a multiple");
        if m == self.conductor {
            return self.coeffs.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        reduce_mod(m, poly)
    }

    /// Galois action zeta -> zeta^t, gcd(t, conductor) = 1.
    pub fn galois(&self, t: u64) -> Self {
        let d = self.conductor;
        if d == 1 {
            return self.clone();
        }
        assert_eq!(gcd_u64(t % d, d), 1, "Galois exponent must be a unit");
        let mut poly = vec![BigRational::zero(); d as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let target = (i as u64 * t) % d;
                poly[target as usize] += c;
            }
        }
        // sigma_t permutes the primitive d-th roots, so the conductor is
        // unchanged; reduction alone recanonicalizes.
        let reduced = reduce_mod(d, poly);
        if reduced.iter().skip(1).all(|c| c.is_zero()) {
            return Cyclotomic {
                conductor: 1,
                coeffs: vec![reduced.into_iter().next().unwrap()],
            };
        }
        Cyclotomic {
            conductor: d,
            coeffs: reduced,
        }
    }

    pub fn conj(&self) -> Self {
        if self.conductor == 1 {
            self.clone()
        } else {
            self.galois(self.conductor - 1)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.conductor / gcd_u64(self.conductor, other.conductor) * other.conductor;
        let mut a = self.lift_coeffs(m);
        let b = other.lift_coeffs(m);
        for (x, y) in a.iter_mut().zip(&b) {
            *x += y;
        }
        Self::canonical(m, a)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let m = self.conductor / gcd_u64(self.conductor, other.conductor) * other.conductor;
        let a = self.lift_coeffs(m);
        let b = other.lift_coeffs(m);
        let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
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
        Self::canonical(m, prod)
    }

    /// Multiplication by a rational keeps the conductor.
    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Approximate complex value (report formatting only).
    pub fn to_complex(&self) -> (f64, f64) {
        use num::ToPrimitive;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * i as f64 / self.conductor as f64;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        (re, im)
    }

    /// Parses the file value grammar: `<int>`, or terms `<int>*z(<n>,<j>)`
    /// joined by `+`/`-`, with an optional bare integer term.
    pub fn parse(s: &str) -> Result<Self, String> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err("empty value".to_string());
        }
        let bytes = compact.as_bytes();
        let mut pos = 0usize;
        let mut acc = Cyclotomic::zero();
        let mut first = true;
        while pos < bytes.len() {
            let mut sign = BigInt::one();
            match bytes[pos] {
                b'+' => pos += 1,
                b'-' => {
                    sign = -sign;
                    pos += 1;
                }
                _ if first => {}
                other => {
                    return Err(format!(
                        "expected '+' or '-' before term, found {:?}",
                        other as char
                    ))
                }
            }
            first = false;
            let (int, next) = take_int(&compact, pos)?;
            pos = next;
            let coeff = sign * int;
            if compact[pos..].starts_with("*z(") {
                pos += 3;
                let (n, next) = take_int(&compact, pos)?;
                pos = next;
                if !compact[pos..].starts_with(',') {
                    return Err("expected ',' in z(n,j)".to_string());
                }
                pos += 1;
                let (j, next) = take_int(&compact, pos)?;
                pos = next;
                if !compact[pos..].starts_with(')') {
                    return Err("expected ')' closing z(n,j)".to_string());
                }
                pos += 1;
                use num::ToPrimitive;
                let n = n.to_u64().filter(|&n| n >= 1).ok_or("bad root order")?;
                let j = j.to_u64().ok_or("bad root exponent")?;
                let term = Cyclotomic::root_of_unity(n, j)
                    .scale(&BigRational::from_integer(coeff));
                acc = acc.add(&term);
            } else {
                acc = acc.add(&Cyclotomic::from_bigint(coeff));
            }
        }
        Ok(acc)
    }
}

fn take_int(s: &str, pos: usize) -> Result<(BigInt, usize), String> {
    let bytes = s.as_bytes();
    let end = bytes[pos..]
        .iter()
        .position(|b| !b.is_ascii_digit())
        .map(|off| pos + off)
        .unwrap_or(bytes.len());
    if end == pos {
        return Err(format!("expected digits at {:?}", &s[pos..]));
    }
    s[pos..end]
        .parse::<BigInt>()
        .map(|v| (v, end))
        .map_err(|e| e.to_string())
}

/// Remainder of `poly` modulo the n-th cyclotomic polynomial, padded to
/// length phi(n).
fn reduce_mod(n: u64, mut poly: Vec<BigRational>) -> Vec<BigRational> {
    let phi = euler_phi(n) as usize;
    if poly.len() > phi {
        let cp = cyclotomic_polynomial(n);
        for p in (phi..poly.len()).rev() {
            if poly[p].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[p], BigRational::zero());
            let base = p - phi;
            // subtract c * x^base * Phi_n, whose leading term cancels poly[p]
            for (i, pc) in cp.iter().enumerate().take(phi) {
                if !pc.is_zero() {
                    poly[base + i] -= &c * BigRational::from_integer(pc.clone());
                }
            }
        }
    }
    poly.truncate(phi);
    poly.resize(phi, BigRational::zero());
    poly
}

/// True iff the residue (mod Phi_n) is fixed by every sigma_t with
/// t = 1 (mod d), gcd(t, n) = 1 — exactly membership in Q(zeta_d).
fn fixed_by_stabilizer(n: u64, d: u64, reduced: &[BigRational]) -> bool {
    let mut t = 1 + d;
    while t < n + 1 {
        if gcd_u64(t % n, n) == 1 {
            let mut poly = vec![BigRational::zero(); n as usize];
            for (i, c) in reduced.iter().enumerate() {
                if !c.is_zero() {
                    poly[((i as u64 * t) % n) as usize] += c;
                }
            }
            if reduce_mod(n, poly) != reduced {
                return false;
            }
        }
        t += d;
    }
    true
}

/// Coordinates in the power basis of Q(zeta_d) of a value known to lie
/// there, given its coordinates in Q(zeta_n), d | n. Solves the linear
/// system against the lifted subfield basis.
fn express_in_subfield(n: u64, d: u64, reduced: &[BigRational]) -> Vec<BigRational> {
    let phi_n = euler_phi(n) as usize;
    let phi_d = euler_phi(d) as usize;
    let step = (n / d) as usize;
    // columns: zeta_d^i lifted, i < phi_d; augmented with the target
    let mut rows = vec![vec![BigRational::zero(); phi_d + 1]; phi_n];
    for i in 0..phi_d {
        let mut poly = vec![BigRational::zero(); i * step + 1];
        poly[i * step] = BigRational::one();
        let col = reduce_mod(n, poly);
        for (r, val) in col.into_iter().enumerate() {
            rows[r][i] = val;
        }
    }
    for (r, val) in reduced.iter().enumerate() {
        rows[r][phi_d] = val.clone();
    }
    // Gaussian elimination; the system is consistent with a unique solution
    // because the lifted basis is linearly independent.
    let mut pivot_row = 0usize;
    let mut pivots = Vec::with_capacity(phi_d);
    for col in 0..phi_d {
        let found = (pivot_row..phi_n).find(|&r| !rows[r][col].is_zero());
        let Some(r) = found else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for rr in 0..phi_n {
            if rr != pivot_row && !rows[rr][col].is_zero() {
                let factor = rows[rr][col].clone();
                for c in col..=phi_d {
                    let delta = &factor * &rows[pivot_row][c];
                    rows[rr][c] -= delta;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    assert_eq!(pivots.len(), phi_d, "subfield basis must be independent");
    for r in pivot_row..phi_n {
        assert!(
            rows[r][phi_d].is_zero(),
            "value claimed in subfield but system inconsistent"
        );
    }
    let mut out = vec![BigRational::zero(); phi_d];
    for (pr, &col) in pivots.iter().enumerate() {
        out[col] = rows[pr][phi_d].clone();
    }
    out
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            if r.is_integer() {
                return write!(f, "{}", r.to_integer());
            }
            // non-integer rationals never occur in table values; emitted
            // only by debug paths
            return write!(f, "{}/{}", r.numer(), r.denom());
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag_str = if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if i == 0 {
                write!(f, "{}", mag_str)?;
            } else {
                write!(f, "{}*z({},{})", mag_str, self.conductor, i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
