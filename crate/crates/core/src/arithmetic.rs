//! Exact coefficient arithmetic: rationals, residues modulo composite
//! numbers, Chinese remaindering and error tolerant rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// An integer class modulo `modulus`, stored as its least non-negative
/// representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: BigInt,
    modulus: BigInt,
}

impl Residue {
    /// Builds a residue, reducing `value` into `[0, modulus)`.
    pub fn new(value: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Result<Self> {
        let modulus = modulus.into();
        if modulus < BigInt::from(2) {
            return Err(Error::Invalid(format!("modulus {modulus} is below 2")));
        }
        let value = value.into().mod_floor(&modulus);
        Ok(Residue { value, modulus })
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }
}

/// Maps `q = a/b` to `a * b^{-1} mod n`.
pub fn reduce_rational_mod(q: &Rational, n: &BigInt) -> Result<Residue> {
    let den = q.denom();
    let inv = mod_inverse(den, n).ok_or_else(|| Error::NotInvertible {
        modulus: n.to_string(),
    })?;
    Residue::new(q.numer() * inv, n.clone())
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(n).extended_gcd(n);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(n))
    } else {
        None
    }
}

/// Chinese remaindering of residues with pairwise coprime moduli.
pub fn crt_combine(residues: &[Residue]) -> Result<Residue> {
    let mut iter = residues.iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::Invalid("no residues to combine".into()))?;
    let mut acc = first.clone();
    for r in iter {
        acc = crt_pair(&acc, r)?;
    }
    Ok(acc)
}

fn crt_pair(a: &Residue, b: &Residue) -> Result<Residue> {
    let inv = mod_inverse(&a.modulus, &b.modulus).ok_or(Error::ModuliNotCoprime)?;
    // x = a + m_a * ((b - a) * m_a^{-1} mod m_b)
    let t = ((&b.value - &a.value) * inv).mod_floor(&b.modulus);
    let modulus = &a.modulus * &b.modulus;
    Residue::new(&a.value + &a.modulus * t, modulus)
}

/// Incremental CRT over machine-word primes, used by the modular driver
/// where the same prime list is shared by many coefficients.
#[derive(Debug, Clone)]
pub struct CrtBasis {
    primes: Vec<u64>,
    // prefix products P_k = p_0 * ... * p_{k-1}
    prefix: Vec<BigInt>,
    // (P_k mod p_k)^{-1} mod p_k
    inverses: Vec<u64>,
    modulus: BigInt,
}

impl CrtBasis {
    pub fn new(primes: &[u64]) -> Result<Self> {
        let mut prefix = Vec::with_capacity(primes.len());
        let mut inverses = Vec::with_capacity(primes.len());
        let mut prod = BigInt::one();
        for &p in primes {
            let rem = (&prod % BigInt::from(p))
                .to_u64_digits()
                .1
                .first()
                .copied()
                .unwrap_or(0);
            let inv = inv_mod_u64(rem, p).ok_or(Error::ModuliNotCoprime)?;
            prefix.push(prod.clone());
            inverses.push(inv);
            prod *= p;
        }
        Ok(CrtBasis {
            primes: primes.to_vec(),
            prefix,
            inverses,
            modulus: prod,
        })
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Garner-style reconstruction of the residue in `[0, N)`.
    pub fn combine(&self, residues: &[u64]) -> BigInt {
        assert_eq!(residues.len(), self.primes.len());
        let mut x = BigInt::zero();
        for (k, &p) in self.primes.iter().enumerate() {
            let xm = big_mod_u64(&x, p);
            let r = residues[k] % p;
            let diff = (r + p - xm) % p;
            let t = mul_mod_u64(diff, self.inverses[k], p);
            if t != 0 {
                x += &self.prefix[k] * t;
            }
        }
        x
    }
}

fn big_mod_u64(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64_digits().1.first().copied().unwrap_or(0)
}

/// Error tolerant rational reconstruction by Gaussian reduction of the
/// lattice `{(x, y) : x = y r mod N}`.
///
/// Returns the fraction read off the shortest lattice vector `(a, b)` when
/// `a^2 + b^2 < N`. The result is correct whenever the residue is right
/// modulo a factor `N'` of `N = N' M` with `N' > (a^2 + b^2) M`.
pub fn err_tolerant_reconstruct(r: &Residue) -> Result<Rational> {
    let n = &r.modulus;
    if r.value.is_zero() {
        return Ok(Rational::zero());
    }
    let (a, b) = gauss_shortest(n, &r.value);
    if &(&a * &a + &b * &b) >= n || b.is_zero() {
        return Err(Error::ReconstructionFailed);
    }
    let q = Rational::new(a, b);
    if !q.denom().gcd(n).is_one() {
        return Err(Error::ReconstructionFailed);
    }
    Ok(q)
}

/// Shortest vector of the rank-2 lattice spanned by `(n, 0)` and `(r, 1)`.
fn gauss_shortest(n: &BigInt, r: &BigInt) -> (BigInt, BigInt) {
    let norm = |v: &(BigInt, BigInt)| &v.0 * &v.0 + &v.1 * &v.1;
    let dot = |u: &(BigInt, BigInt), v: &(BigInt, BigInt)| &u.0 * &v.0 + &u.1 * &v.1;
    let mut u = (n.clone(), BigInt::zero());
    let mut v = (r.clone(), BigInt::one());
    if norm(&u) < norm(&v) {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let nv = norm(&v);
        // nearest integer to <u,v>/<v,v>
        let two = BigInt::from(2);
        let q = (dot(&u, &v) * &two + &nv).div_floor(&(&nv * &two));
        u = (&u.0 - &q * &v.0, &u.1 - &q * &v.1);
        if norm(&u) >= nv {
            break;
        }
        std::mem::swap(&mut u, &mut v);
    }
    v
}

/// Symmetric (balanced) representative of a residue, in `(-N/2, N/2]`.
pub fn symmetric(r: &Residue) -> BigInt {
    let half = &r.modulus / 2;
    if r.value > half {
        &r.value - &r.modulus
    } else {
        r.value.clone()
    }
}

pub(crate) fn mul_mod_u64(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod_u64(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, a, p);
        }
        a = mul_mod_u64(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod_u64(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `true` when the prime `p` divides the numerator or the denominator of `q`.
pub fn prime_divides_rational(p: u64, q: &Rational) -> bool {
    let p = BigInt::from(p);
    (!q.numer().is_zero() && (q.numer() % &p).is_zero()) || (q.denom() % &p).is_zero()
}

/// Parses `a/b` or `a` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Rational::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    // brute-force inverse search, independent of extended gcd
    fn brute_inverse(b: i64, n: i64) -> Option<i64> {
        (0..n).find(|&x| (b * x).rem_euclid(n) == 1)
    }

    #[test]
    fn reduce_two_thirds_mod_seven() {
        let r = reduce_rational_mod(&q(2, 3), &BigInt::from(7)).unwrap();
        let inv = brute_inverse(3, 7).unwrap();
        assert_eq!(*r.value(), BigInt::from((2 * inv) % 7));
        assert_eq!(*r.value(), BigInt::from(3));
    }

    #[test]
    fn reduce_integer_and_failure() {
        let r = reduce_rational_mod(&q(5, 1), &BigInt::from(11)).unwrap();
        assert_eq!(*r.value(), BigInt::from(5));
        assert!(reduce_rational_mod(&q(1, 7), &BigInt::from(7)).is_err());
        let r = reduce_rational_mod(&q(-1, 2), &BigInt::from(7)).unwrap();
        assert_eq!(*r.value(), BigInt::from(3));
    }

    #[test]
    fn crt_examples() {
        let brute = (0..35).find(|x| x % 5 == 2 && x % 7 == 3).unwrap();
        let c = crt_combine(&[Residue::new(2, 5).unwrap(), Residue::new(3, 7).unwrap()]).unwrap();
        assert_eq!(*c.value(), BigInt::from(brute));
        assert_eq!(*c.value(), BigInt::from(17));
        assert_eq!(*c.modulus(), BigInt::from(35));

        let z = crt_combine(&[Residue::new(0, 5).unwrap(), Residue::new(0, 7).unwrap()]).unwrap();
        assert!(z.value().is_zero());

        let s = crt_combine(&[Residue::new(4, 5).unwrap()]).unwrap();
        assert_eq!(*s.value(), BigInt::from(4));
        assert_eq!(*s.modulus(), BigInt::from(5));

        assert_eq!(
            crt_combine(&[Residue::new(1, 6).unwrap(), Residue::new(1, 4).unwrap()]),
            Err(Error::ModuliNotCoprime)
        );
    }

    #[test]
    fn crt_basis_matches_pairwise() {
        let primes = [5u64, 7, 11, 13];
        let basis = CrtBasis::new(&primes).unwrap();
        let residues = [2u64, 3, 10, 0];
        let fast = basis.combine(&residues);
        let rs: Vec<Residue> = primes
            .iter()
            .zip(residues)
            .map(|(&p, r)| Residue::new(r, p).unwrap())
            .collect();
        assert_eq!(fast, *crt_combine(&rs).unwrap().value());
    }

    #[test]
    fn reconstruct_clean() {
        let n = BigInt::from(5005);
        let r = reduce_rational_mod(&q(2, 3), &n).unwrap();
        assert_eq!(err_tolerant_reconstruct(&r).unwrap(), q(2, 3));
        let z = Residue::new(0, 5005).unwrap();
        assert_eq!(err_tolerant_reconstruct(&z).unwrap(), Rational::zero());
    }

    #[test]
    fn reconstruct_with_corrupted_prime() {
        // correct modulo 7*11*13, wrong modulo 5; 1001 > (4 + 9) * 5
        let good = reduce_rational_mod(&q(2, 3), &BigInt::from(1001)).unwrap();
        let right_mod_5 = reduce_rational_mod(&q(2, 3), &BigInt::from(5)).unwrap();
        for bad in 0..5 {
            if BigInt::from(bad) == *right_mod_5.value() {
                continue;
            }
            let r = crt_combine(&[good.clone(), Residue::new(bad, 5).unwrap()]).unwrap();
            assert_eq!(
                err_tolerant_reconstruct(&r).unwrap(),
                q(2, 3),
                "bad residue {bad}"
            );
        }
    }

    #[test]
    fn reconstruct_negative() {
        let n = BigInt::from(1_000_003i64) * BigInt::from(1_000_033i64);
        let r = reduce_rational_mod(&q(-17, 29), &n).unwrap();
        assert_eq!(err_tolerant_reconstruct(&r).unwrap(), q(-17, 29));
    }

    #[test]
    fn small_modulus_cannot_recover_large_fraction() {
        // 123^2 + 457^2 > 101, so the true value is out of reach
        let r = reduce_rational_mod(&q(123, 457), &BigInt::from(101)).unwrap();
        match err_tolerant_reconstruct(&r) {
            Ok(v) => assert_ne!(v, q(123, 457)),
            Err(e) => assert_eq!(e, Error::ReconstructionFailed),
        }
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        let brute: Vec<u64> = (0..60u64)
            .filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0))
            .collect();
        assert_eq!(small, brute);
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(2_147_483_649));
        assert!(is_prime_u64(32003));
    }

    #[test]
    fn inverse_u64() {
        for a in 1..13u64 {
            let inv = inv_mod_u64(a, 13).unwrap();
            assert_eq!(a * inv % 13, 1);
        }
        assert_eq!(inv_mod_u64(0, 13), None);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-4/6"), Some(q(-2, 3)));
        assert_eq!(format_rational(&q(-2, 3)), "-2/3");
        assert_eq!(format_rational(&q(5, 1)), "5");
        assert_eq!(parse_rational("1/0"), None);
    }
}
