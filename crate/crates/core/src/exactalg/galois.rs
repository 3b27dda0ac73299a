use std::fmt;

use num_bigint::BigUint;

use super::field::Field;
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};
use crate::group::is_prime;

/// Largest field order accepted by [`GaloisField::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of a [`GaloisField`]: the base-p digits of the value are the
/// coefficients of its polynomial representative, constant term first.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fq(pub u32);

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// F_q with q = p^d, represented modulo the smallest monic irreducible of
/// degree d, with multiplication through log tables of the smallest
/// primitive element.
pub struct GaloisField {
    p: u32,
    degree: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Fq,
    /// `exp[i] = g^i` for `i < 2(q-1)`.
    exp: Vec<Fq>,
    /// Discrete log base g, undefined at 0.
    log: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.degree)
    }
}

/// Multiplicative order of `a` modulo `m` (m ≥ 1, gcd(a, m) = 1).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * (a % m) % m;
        k += 1;
    }
    k
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Arithmetic on digit vectors modulo a monic polynomial; used only while
/// building the tables.
struct Slow<'a> {
    p: u32,
    modulus: &'a [u32],
}

impl Slow<'_> {
    fn digits(&self, a: u32) -> Vec<u32> {
        let d = self.modulus.len() - 1;
        let mut v = vec![0; d];
        let mut a = a;
        for x in v.iter_mut() {
            *x = a % self.p;
            a /= self.p;
        }
        v
    }

    fn encode(&self, v: &[u32]) -> u32 {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let d = self.modulus.len() - 1;
        let (a, b) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * d];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (d..2 * d).rev() {
            let c = prod[k];
            if c != 0 {
                for (i, &m) in self.modulus[..d].iter().enumerate() {
                    prod[k - d + i] = (prod[k - d + i] + (p - c) * m as u64) % p;
                }
                prod[k] = 0;
            }
        }
        let v: Vec<u32> = prod[..d].iter().map(|&x| x as u32).collect();
        self.encode(&v)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl GaloisField {
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let too_large = Error::FieldTooLarge { p, degree };
        if degree == 0 {
            return Err(too_large);
        }
        let q = (p as u128)
            .checked_pow(degree)
            .filter(|&q| q <= MAX_FIELD_ORDER as u128)
            .ok_or(too_large)? as u32;
        let p = p as u32;
        let modulus = if degree == 1 {
            vec![0, 1]
        } else {
            Self::smallest_irreducible(p, degree)?
        };
        let slow = Slow {
            p,
            modulus: &modulus,
        };
        let factors = prime_factors(q as u64 - 1);
        let generator = (1..q)
            .find(|&c| factors.iter().all(|&r| slow.pow(c, (q as u64 - 1) / r) != 1))
            .expect("finite field has a primitive element");
        let n = (q - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp.push(Fq(x));
            log[x as usize] = i as u32;
            x = slow.mul(x, generator);
        }
        exp.extend_from_within(..n);
        Ok(GaloisField {
            p,
            degree,
            q,
            modulus,
            generator: Fq(generator),
            exp,
            log,
        })
    }

    /// The smallest field of characteristic `p` containing the m-th roots of
    /// unity (`m` coprime to `p`).
    pub fn splitting(p: u64, m: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m.is_multiple_of(p) {
            return Err(Error::PreconditionViolated(format!(
                "exponent {m} is divisible by {p}"
            )));
        }
        let d = multiplicative_order(p, m);
        let degree = u32::try_from(d).map_err(|_| Error::FieldTooLarge { p, degree: u32::MAX })?;
        Self::new(p, degree)
    }

    fn smallest_irreducible(p: u32, degree: u32) -> Result<Vec<u32>> {
        let prime = GaloisField::new(p as u64, 1)?;
        let ring = PolyRing::new(&prime);
        let count = (p as u64).pow(degree);
        for c in 0..count {
            let mut coeffs: Vec<Fq> = Vec::with_capacity(degree as usize + 1);
            let mut rest = c;
            for _ in 0..degree {
                coeffs.push(Fq((rest % p as u64) as u32));
                rest /= p as u64;
            }
            coeffs.push(Fq(1));
            if coeffs[0] == Fq(0) {
                continue;
            }
            let f = Poly::new(coeffs);
            if ring.is_irreducible(&f) {
                return Ok(f.coeffs().iter().map(|c| c.0).collect());
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    /// Monic defining polynomial over the prime field, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fq {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    /// Coefficients over the prime field, constant term first.
    pub fn coefficients(&self, a: Fq) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.degree as usize);
        let mut x = a.0;
        for _ in 0..self.degree {
            v.push(x % self.p);
            x /= self.p;
        }
        v
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Option<Fq> {
        if coeffs.len() > self.degree as usize || coeffs.iter().any(|&c| c >= self.p) {
            return None;
        }
        Some(Fq(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)))
    }

    /// Image of an integer in the prime field.
    pub fn from_u64(&self, n: u64) -> Fq {
        Fq((n % self.p as u64) as u32)
    }

    /// Discrete logarithm base the fixed generator.
    pub fn log(&self, a: Fq) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// g^e for any integer e.
    pub fn gen_pow(&self, e: i64) -> Fq {
        let n = (self.q - 1) as i64;
        self.exp[e.rem_euclid(n) as usize]
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if a.0 == 0 {
            return if e == 0 { Fq(1) } else { Fq(0) };
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        self.exp[((l % n) * (e % n) % n) as usize]
    }

    pub fn pow_big(&self, a: Fq, e: &BigUint) -> Fq {
        let n = BigUint::from(self.q - 1);
        if a.0 == 0 {
            return if e.bits() == 0 { Fq(1) } else { Fq(0) };
        }
        let r: u64 = (e % &n).try_into().expect("reduced exponent fits");
        self.pow(a, r)
    }

    pub fn element_order(&self, a: Fq) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = (self.q - 1) as u64;
        Some(n / num_integer::gcd(n, l))
    }

    /// The primitive m-th root g^((q-1)/m) raised to `j`.
    pub fn root_of_unity(&self, m: u64, j: i64) -> Option<Fq> {
        let n = (self.q - 1) as u64;
        (m > 0 && n.is_multiple_of(m)).then(|| self.gen_pow((n / m) as i64 * j))
    }

    /// a^(1/p), the inverse of Frobenius.
    pub fn pth_root(&self, a: Fq) -> Fq {
        self.pow(a, self.q as u64 / self.p as u64)
    }

    pub fn render(&self, a: Fq) -> String {
        if self.degree == 1 {
            return a.0.to_string();
        }
        match self.log(a) {
            None => "0".into(),
            Some(0) => "1".into(),
            Some(1) => "g".into(),
            Some(l) => format!("g^{l}"),
        }
    }
}

impl Field for GaloisField {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq(0)
    }

    fn one(&self) -> Fq {
        Fq(1)
    }

    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        if self.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        if self.degree == 1 {
            return Fq((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0, 1);
        while x > 0 || y > 0 {
            out += (x % self.p + y % self.p) % self.p * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fq(out)
    }

    fn neg(&self, a: &Fq) -> Fq {
        if self.p == 2 {
            return *a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += (self.p - x % self.p) % self.p * place;
            x /= self.p;
            place *= self.p;
        }
        Fq(out)
    }

    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize]
    }

    fn inv(&self, a: &Fq) -> Option<Fq> {
        let l = self.log(*a)?;
        Some(self.gen_pow(-(l as i64)))
    }

    fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u32)
    }

    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }
}
