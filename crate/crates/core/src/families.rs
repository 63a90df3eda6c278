//! Named group families and the descriptor grammar shared with the CLI:
//! `s:<n>`, `a:<n>`, `c:<n>`, `d:<n>`, `q8`, `sl2:<p>`, `gl:<n>:<q>`,
//! `u:<n>:<q>` (unitriangular), `prod(<spec>,<spec>)`, `diag(<spec>)`,
//! `factor(<spec>)`.

use crate::error::GroupError;
use crate::group::{FiniteGroup, DEFAULT_ELEMENT_CAP};
use crate::perm::Permutation;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    /// Dihedral of order 2n on n points.
    Dihedral(usize),
    Q8,
    /// SL(2,p) on the p^2 - 1 nonzero vectors.
    Sl2(u64),
    /// GL(n,q) on the q^n - 1 nonzero vectors, q prime.
    Gl(usize, u64),
    /// Unitriangular n x n matrices over F_q on nonzero vectors, q prime.
    Unitriangular(usize, u64),
    Product(Box<Family>, Box<Family>),
    /// Diagonal copy {(h,h)} inside H x H, as a group on 2 deg(H) points.
    Diagonal(Box<Family>),
    /// First-factor copy H x 1 inside H x H.
    Factor(Box<Family>),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Symmetric(n) => write!(f, "s:{}", n),
            Family::Alternating(n) => write!(f, "a:{}", n),
            Family::Cyclic(n) => write!(f, "c:{}", n),
            Family::Dihedral(n) => write!(f, "d:{}", n),
            Family::Q8 => write!(f, "q8"),
            Family::Sl2(p) => write!(f, "sl2:{}", p),
            Family::Gl(n, q) => write!(f, "gl:{}:{}", n, q),
            Family::Unitriangular(n, q) => write!(f, "u:{}:{}", n, q),
            Family::Product(a, b) => write!(f, "prod({},{})", a, b),
            Family::Diagonal(h) => write!(f, "diag({})", h),
            Family::Factor(h) => write!(f, "factor({})", h),
        }
    }
}

impl Family {
    pub fn parse(s: &str) -> Result<Family, GroupError> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let lower = cleaned.to_ascii_lowercase();
        let (fam, rest) = parse_spec(&lower).map_err(|reason| GroupError::InvalidFamily {
            descriptor: s.to_string(),
            reason,
        })?;
        if !rest.is_empty() {
            return Err(GroupError::InvalidFamily {
                descriptor: s.to_string(),
                reason: format!("trailing input {:?}", rest),
            });
        }
        fam.validate().map_err(|reason| GroupError::InvalidFamily {
            descriptor: s.to_string(),
            reason,
        })?;
        Ok(fam)
    }

    fn validate(&self) -> Result<(), String> {
        match self {
            Family::Symmetric(n) | Family::Alternating(n) | Family::Cyclic(n) => {
                if *n == 0 {
                    return Err("point count must be positive".into());
                }
            }
            Family::Dihedral(n) => {
                if *n < 3 {
                    return Err("dihedral descriptor needs n >= 3 for a faithful action on n points".into());
                }
            }
            Family::Q8 => {}
            Family::Sl2(p) => {
                if !is_prime(*p) {
                    return Err(format!("{} is not prime", p));
                }
            }
            Family::Gl(n, q) | Family::Unitriangular(n, q) => {
                if *n == 0 {
                    return Err("dimension must be positive".into());
                }
                if !is_prime(*q) {
                    return Err(format!("{} is not prime (prime fields only)", q));
                }
            }
            Family::Product(a, b) => {
                a.validate()?;
                b.validate()?;
            }
            Family::Diagonal(h) | Family::Factor(h) => h.validate()?,
        }
        Ok(())
    }

    /// Group order, used as a construction self-check.
    pub fn order(&self) -> u128 {
        match self {
            Family::Symmetric(n) => factorial(*n),
            Family::Alternating(n) => {
                if *n < 3 {
                    1
                } else {
                    factorial(*n) / 2
                }
            }
            Family::Cyclic(n) => *n as u128,
            Family::Dihedral(n) => 2 * *n as u128,
            Family::Q8 => 8,
            Family::Sl2(p) => {
                let p = *p as u128;
                p * p * p - p
            }
            Family::Gl(n, q) => {
                let q = *q as u128;
                let qn = q.pow(*n as u32);
                (0..*n as u32).map(|i| qn - q.pow(i)).product()
            }
            Family::Unitriangular(n, q) => {
                (*q as u128).pow((*n * (*n - 1) / 2) as u32)
            }
            Family::Product(a, b) => a.order() * b.order(),
            Family::Diagonal(h) | Family::Factor(h) => h.order(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Family::Symmetric(n) | Family::Alternating(n) | Family::Cyclic(n) => *n,
            Family::Dihedral(n) => *n,
            Family::Q8 => 8,
            Family::Sl2(p) => (*p * *p - 1) as usize,
            Family::Gl(n, q) | Family::Unitriangular(n, q) => {
                (*q as u128).pow(*n as u32) as usize - 1
            }
            Family::Product(a, b) => a.degree() + b.degree(),
            Family::Diagonal(h) | Family::Factor(h) => 2 * h.degree(),
        }
    }

    pub fn generators(&self) -> Vec<Permutation> {
        match self {
            Family::Symmetric(n) => symmetric_generators(*n),
            Family::Alternating(n) => alternating_generators(*n),
            Family::Cyclic(n) => {
                if *n == 1 {
                    vec![]
                } else {
                    vec![cycle_perm(*n)]
                }
            }
            Family::Dihedral(n) => {
                let reflect: Vec<u32> = (0..*n as u32).map(|i| (*n as u32 - i) % *n as u32).collect();
                vec![cycle_perm(*n), Permutation::from_images(reflect).unwrap()]
            }
            Family::Q8 => quaternion_generators(),
            Family::Sl2(p) => {
                let p = *p;
                let e = vec![vec![1, 1], vec![0, 1]];
                let w = vec![vec![0, p - 1], vec![1, 0]];
                vec![matrix_perm(&e, 2, p), matrix_perm(&w, 2, p)]
            }
            Family::Gl(n, q) => gl_generators(*n, *q),
            Family::Unitriangular(n, q) => {
                let n = *n;
                let mut gens = Vec::new();
                for i in 0..n.saturating_sub(1) {
                    let mut m = identity_matrix(n);
                    m[i][i + 1] = 1;
                    gens.push(matrix_perm(&m, n, *q));
                }
                gens
            }
            Family::Product(a, b) => {
                let da = a.degree();
                let db = b.degree();
                let mut gens: Vec<Permutation> =
                    a.generators().into_iter().map(|g| g.pad(da + db)).collect();
                for g in b.generators() {
                    let shifted: Vec<u32> = (0..(da + db) as u32)
                        .map(|i| {
                            if (i as usize) < da {
                                i
                            } else {
                                g.image(i as usize - da) as u32 + da as u32
                            }
                        })
                        .collect();
                    gens.push(Permutation::from_images(shifted).unwrap());
                }
                gens
            }
            Family::Diagonal(h) => {
                let d = h.degree();
                h.generators()
                    .into_iter()
                    .map(|g| {
                        let im: Vec<u32> = (0..2 * d as u32)
                            .map(|i| {
                                if (i as usize) < d {
                                    g.image(i as usize) as u32
                                } else {
                                    g.image(i as usize - d) as u32 + d as u32
                                }
                            })
                            .collect();
                        Permutation::from_images(im).unwrap()
                    })
                    .collect()
            }
            Family::Factor(h) => {
                let d = h.degree();
                h.generators().into_iter().map(|g| g.pad(2 * d)).collect()
            }
        }
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        self.build_with_cap(DEFAULT_ELEMENT_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        let g = FiniteGroup::build(self.to_string(), self.degree(), self.generators(), cap)?;
        assert_eq!(
            g.order() as u128,
            self.order(),
            "constructed order mismatch for {}",
            self
        );
        Ok(g)
    }

    /// Lie-type annotation (rank, field size) where the class-count bounds
    /// apply; supplied per family, never computed.
    pub fn lie_annotation(&self) -> Option<(u64, u64)> {
        match self {
            Family::Sl2(p) => Some((1, *p)),
            Family::Gl(n, q) => Some((*n as u64, *q)),
            _ => None,
        }
    }
}

fn parse_spec(s: &str) -> Result<(Family, &str), String> {
    for (prefix, wrap) in [
        ("prod(", None),
        ("diag(", Some(true)),
        ("factor(", Some(false)),
    ] {
        if let Some(rest) = s.strip_prefix(prefix) {
            return if prefix == "prod(" {
                let (a, rest) = parse_spec(rest)?;
                let rest = rest
                    .strip_prefix(',')
                    .ok_or_else(|| "expected ',' in prod(...)".to_string())?;
                let (b, rest) = parse_spec(rest)?;
                let rest = rest
                    .strip_prefix(')')
                    .ok_or_else(|| "expected ')' closing prod(".to_string())?;
                Ok((Family::Product(Box::new(a), Box::new(b)), rest))
            } else {
                let (h, rest) = parse_spec(rest)?;
                let rest = rest
                    .strip_prefix(')')
                    .ok_or_else(|| format!("expected ')' closing {}", prefix))?;
                let fam = if wrap == Some(true) {
                    Family::Diagonal(Box::new(h))
                } else {
                    Family::Factor(Box::new(h))
                };
                Ok((fam, rest))
            };
        }
    }
    if let Some(rest) = s.strip_prefix("q8") {
        return Ok((Family::Q8, rest));
    }
    if let Some(rest) = s.strip_prefix("sl2:") {
        let (p, rest) = parse_number(rest)?;
        return Ok((Family::Sl2(p), rest));
    }
    for (prefix, two_args) in [
        ("gl:", true),
        ("u:", true),
        ("s:", false),
        ("a:", false),
        ("c:", false),
        ("d:", false),
    ] {
        if let Some(rest) = s.strip_prefix(prefix) {
            let (n, rest) = parse_number(rest)?;
            if two_args {
                let rest = rest
                    .strip_prefix(':')
                    .ok_or_else(|| format!("{}<n>:<q> needs two arguments", prefix))?;
                let (q, rest) = parse_number(rest)?;
                let fam = if prefix == "gl:" {
                    Family::Gl(n as usize, q)
                } else {
                    Family::Unitriangular(n as usize, q)
                };
                return Ok((fam, rest));
            }
            let fam = match prefix {
                "s:" => Family::Symmetric(n as usize),
                "a:" => Family::Alternating(n as usize),
                "c:" => Family::Cyclic(n as usize),
                _ => Family::Dihedral(n as usize),
            };
            return Ok((fam, rest));
        }
    }
    Err(format!("unrecognized descriptor at {:?}", s))
}

fn parse_number(s: &str) -> Result<(u64, &str), String> {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    if end == 0 {
        return Err(format!("expected a number at {:?}", s));
    }
    let n: u64 = s[..end]
        .parse()
        .map_err(|_| format!("number out of range: {}", &s[..end]))?;
    Ok((n, &s[end..]))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn cycle_perm(n: usize) -> Permutation {
    let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    Permutation::from_images(images).unwrap()
}

fn symmetric_generators(n: usize) -> Vec<Permutation> {
    match n {
        1 => vec![],
        2 => vec![Permutation::from_images(vec![1, 0]).unwrap()],
        _ => {
            let mut t = (0..n as u32).collect::<Vec<_>>();
            t.swap(0, 1);
            vec![Permutation::from_images(t).unwrap(), cycle_perm(n)]
        }
    }
}

fn alternating_generators(n: usize) -> Vec<Permutation> {
    if n < 3 {
        return vec![];
    }
    let mut three = (0..n as u32).collect::<Vec<_>>();
    three.swap(0, 1);
    three.swap(1, 2); // (0 1 2) as images
    let threecycle = Permutation::from_images(three).unwrap();
    if n == 3 {
        return vec![threecycle];
    }
    let big = if n % 2 == 1 {
        cycle_perm(n)
    } else {
        // even n: the n-cycle is odd, use the (n-1)-cycle on points 1..n
        let images: Vec<u32> = (0..n as u32)
            .map(|i| {
                if i == 0 {
                    0
                } else {
                    1 + (i % (n as u32 - 1))
                }
            })
            .collect();
        Permutation::from_images(images).unwrap()
    };
    vec![threecycle, big]
}

/// Left regular action of i and j on {1,-1,i,-i,j,-j,k,-k}.
fn quaternion_generators() -> Vec<Permutation> {
    vec![
        Permutation::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4]).unwrap(),
        Permutation::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3]).unwrap(),
    ]
}

fn identity_matrix(n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()
}

/// GL(n,q), q prime: a primitive-root scalar in one slot, the basis cycle,
/// and one transvection together generate the whole group.
fn gl_generators(n: usize, q: u64) -> Vec<Permutation> {
    let gamma = primitive_root(q);
    if n == 1 {
        if q == 2 {
            return vec![];
        }
        return vec![matrix_perm(&[vec![gamma]], 1, q)];
    }
    let mut a = identity_matrix(n);
    a[0][0] = gamma;
    let mut p = vec![vec![0u64; n]; n];
    for j in 0..n {
        p[(j + 1) % n][j] = 1;
    }
    let mut c = identity_matrix(n);
    c[0][1] = 1;
    let mut gens = Vec::new();
    if gamma != 1 {
        gens.push(matrix_perm(&a, n, q));
    }
    gens.push(matrix_perm(&p, n, q));
    gens.push(matrix_perm(&c, n, q));
    gens
}

fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let phi = q - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
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
    'cand: for g in 2..q {
        for &f in &factors {
            if pow_mod(g, phi / f, q) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Permutation of the q^n - 1 nonzero vectors induced by an invertible
/// matrix. Vector with digits v (v[0] least significant) sits at index
/// sum v[i] q^i - 1.
fn matrix_perm(m: &[Vec<u64>], n: usize, q: u64) -> Permutation {
    let total = (q as usize).pow(n as u32) - 1;
    let mut images = vec![0u32; total];
    let mut v = vec![0u64; n];
    for val in 1..=total {
        // decode val into digits
        let mut x = val;
        for d in v.iter_mut() {
            *d = (x % q as usize) as u64;
            x /= q as usize;
        }
        let mut out = 0usize;
        let mut base = 1usize;
        for r in 0..n {
            let mut s = 0u64;
            for c in 0..n {
                s += m[r][c] * v[c];
            }
            out += (s % q) as usize * base;
            base *= q as usize;
        }
        assert!(out > 0, "matrix is singular");
        images[val - 1] = (out - 1) as u32;
    }
    Permutation::from_images(images).unwrap()
}

/// Builds a group from generator lines in cycle notation (1-based), degree
/// inferred from the largest point mentioned.
pub fn group_from_generator_lines(name: &str, text: &str) -> Result<FiniteGroup, GroupError> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut degree = 1usize;
    for l in &lines {
        for tok in l.split(|c: char| !c.is_ascii_digit()) {
            if !tok.is_empty() {
                let p: usize = tok
                    .parse()
                    .map_err(|_| GroupError::InvalidPermutation(format!("bad point {:?}", tok)))?;
                degree = degree.max(p);
            }
        }
    }
    let mut gens = Vec::new();
    for l in &lines {
        gens.push(Permutation::parse_cycles(l, degree).map_err(|e| {
            GroupError::InvalidPermutation(format!("{}: {}", l, e))
        })?);
    }
    FiniteGroup::build(name, degree, gens, DEFAULT_ELEMENT_CAP)
}
