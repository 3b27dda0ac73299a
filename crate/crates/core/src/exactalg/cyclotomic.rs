use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rationals};
use super::linalg::{linear_solve, Matrix};

/// An element of Q(ζ_m) in the power basis 1, ζ, …, ζ^(φ(m)-1).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycValue {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl CycValue {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }
}

impl fmt::Display for CycValue {
    /// Written in terms of z = ζ_m, e.g. `1/2 - z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mon = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{a}*{mon}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Q(ζ_m), arithmetic modulo the m-th cyclotomic polynomial.
#[derive(Clone)]
pub struct CyclotomicField {
    m: u64,
    /// Φ_m, monic, constant term first.
    poly: Vec<BigInt>,
    /// ζ^j reduced to the power basis, for j < m.
    powers: Vec<Vec<BigInt>>,
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.m)
    }
}

fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // b monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (db..a.len()).rev() {
        let c = r[k].clone();
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k - db + i] -= &c * bc;
        }
        q[k - db] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

/// The m-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(); m as usize + 1];
    f[0] = -BigInt::one();
    f[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        f = poly_div_exact(&f, &cyclotomic_polynomial(d));
    }
    f
}

impl CyclotomicField {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let poly = cyclotomic_polynomial(m);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::zero(); phi];
        cur[0] = BigInt::one();
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone() - &top * &poly[i];
            }
            cur[0] = -&top * &poly[0];
        }
        CyclotomicField { m, poly, powers }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    /// Degree over Q, φ(m).
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn cyclotomic_polynomial(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn value(&self, coeffs: Vec<BigRational>) -> CycValue {
        assert_eq!(coeffs.len(), self.degree(), "wrong number of coefficients");
        CycValue {
            conductor: self.m,
            coeffs,
        }
    }

    pub fn from_rational(&self, r: BigRational) -> CycValue {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = r;
        self.value(coeffs)
    }

    /// ζ_m^j for any integer j.
    pub fn zeta_pow(&self, j: i64) -> CycValue {
        let k = j.rem_euclid(self.m as i64) as usize;
        self.value(
            self.powers[k]
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Image of a value of Q(ζ_d), d | m, under ζ_d ↦ ζ_m^(m/d).
    pub fn embed(&self, v: &CycValue) -> CycValue {
        assert_eq!(self.m % v.conductor, 0, "conductor does not divide");
        if v.conductor == self.m {
            return v.clone();
        }
        let step = (self.m / v.conductor) as i64;
        let mut out = self.zero();
        for (i, c) in v.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = self.zeta_pow(step * i as i64);
            self.add_scaled(&mut out, &z, c);
        }
        out
    }

    fn add_scaled(&self, acc: &mut CycValue, v: &CycValue, c: &BigRational) {
        for (a, b) in acc.coeffs.iter_mut().zip(&v.coeffs) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    /// Sum over the Galois conjugates ζ ↦ ζ^k, k coprime to m; a rational.
    pub fn trace(&self, v: &CycValue) -> BigRational {
        let mut t = BigRational::zero();
        for k in (1..=self.m).filter(|&k| num_integer::gcd(k, self.m) == 1) {
            let mut img = self.zero();
            for (i, c) in v.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    self.add_scaled(&mut img, &self.zeta_pow(k as i64 * i as i64), c);
                }
            }
            t += img.coeffs[0].clone();
        }
        // the other basis coefficients cancel in the full sum
        t
    }
}

impl Field for CyclotomicField {
    type Elem = CycValue;

    fn zero(&self) -> CycValue {
        self.from_rational(BigRational::zero())
    }

    fn one(&self) -> CycValue {
        self.from_rational(BigRational::one())
    }

    fn add(&self, a: &CycValue, b: &CycValue) -> CycValue {
        debug_assert_eq!((a.conductor, b.conductor), (self.m, self.m));
        self.value(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect())
    }

    fn neg(&self, a: &CycValue) -> CycValue {
        self.value(a.coeffs.iter().map(|x| -x).collect())
    }

    fn sub(&self, a: &CycValue, b: &CycValue) -> CycValue {
        self.value(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect())
    }

    fn mul(&self, a: &CycValue, b: &CycValue) -> CycValue {
        debug_assert_eq!((a.conductor, b.conductor), (self.m, self.m));
        let n = self.degree();
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let mut out = vec![BigRational::zero(); n];
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, z) in out.iter_mut().zip(&self.powers[k % self.m as usize]) {
                if !z.is_zero() {
                    *o += &c * BigRational::from_integer(z.clone());
                }
            }
        }
        self.value(out)
    }

    fn inv(&self, a: &CycValue) -> Option<CycValue> {
        if a.is_zero() {
            return None;
        }
        let n = self.degree();
        // column j holds a·ζ^j
        let cols: Vec<CycValue> = (0..n)
            .map(|j| self.mul(a, &self.zeta_pow(j as i64)))
            .collect();
        let mut mat = Matrix::zeros(&Rationals, n, n);
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                mat.set(i, j, c.coeffs[i].clone());
            }
        }
        let e0 = self.one().coeffs;
        let sol = linear_solve(&Rationals, &mat, &[e0]);
        sol.solutions.into_iter().next().flatten().map(|x| self.value(x))
    }

    fn from_int(&self, n: i64) -> CycValue {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    fn is_zero(&self, a: &CycValue) -> bool {
        a.is_zero()
    }
}
