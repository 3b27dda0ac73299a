use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::galois::{Fq, GaloisField};
use super::linalg::Matrix;

/// A polynomial over a [`GaloisField`], constant term first, with no
/// trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Poly(Vec<Fq>);

impl Poly {
    pub fn new(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last() == Some(&Fq(0)) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Fq) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly(vec![Fq(1)])
    }

    pub fn x() -> Self {
        Poly(vec![Fq(0), Fq(1)])
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.0.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fq {
        self.0.last().copied().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [Fq(1)]
    }
}

/// Polynomial arithmetic over a fixed field.
#[derive(Clone, Copy)]
pub struct PolyRing<'a> {
    field: &'a GaloisField,
}

impl<'a> PolyRing<'a> {
    pub fn new(field: &'a GaloisField) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &'a GaloisField {
        self.field
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        Poly::new((0..n).map(|i| self.field.add(&a.coeff(i), &b.coeff(i))).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.0.len().max(b.0.len());
        Poly::new((0..n).map(|i| self.field.sub(&a.coeff(i), &b.coeff(i))).collect())
    }

    pub fn scale(&self, a: &Poly, c: Fq) -> Poly {
        Poly::new(a.0.iter().map(|x| self.field.mul(x, &c)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let f = self.field;
        let mut out = vec![Fq(0); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(x, y));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, a: &Poly, e: usize) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| self.mul(&acc, a))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let f = self.field;
        let db = b.degree().expect("division by the zero polynomial");
        let inv = f.inv(&b.lead()).expect("nonzero leading coefficient");
        let mut r = a.0.clone();
        if r.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let mut q = vec![Fq(0); r.len() - db];
        for k in (db..r.len()).rev() {
            let c = f.mul(&r[k], &inv);
            if c.0 == 0 {
                continue;
            }
            q[k - db] = c;
            for (i, bc) in b.0.iter().enumerate() {
                r[k - db + i] = f.sub(&r[k - db + i], &f.mul(&c, bc));
            }
        }
        r.truncate(db);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let inv = self.field.inv(&a.lead()).expect("nonzero leading coefficient");
        self.scale(a, inv)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `g = s a + t b` monic.
    pub fn ext_gcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = self.field.inv(&r0.lead()).unwrap();
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        Poly::new(
            a.0.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.field.mul(c, &self.field.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, a: &Poly, x: Fq) -> Fq {
        a.0.iter()
            .rev()
            .fold(Fq(0), |acc, c| self.field.add(&self.field.mul(&acc, &x), c))
    }

    /// `base^e mod m`.
    pub fn powmod(&self, base: &Poly, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = self.rem(&Poly::one(), m);
        let base = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        acc
    }

    /// Rabin's test.
    pub fn is_irreducible(&self, f: &Poly) -> bool {
        let n = match f.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let q = BigUint::from(self.field.order());
        let frob = |k: usize| {
            // x^(q^k) mod f
            self.powmod(&Poly::x(), &q.pow(k as u32), f)
        };
        if self.sub(&frob(n), &Poly::x()).is_zero() {
            let mut m = n;
            let mut r = 2;
            let mut primes = Vec::new();
            while r * r <= m {
                if m % r == 0 {
                    primes.push(r);
                    while m % r == 0 {
                        m /= r;
                    }
                }
                r += 1;
            }
            if m > 1 {
                primes.push(m);
            }
            primes
                .into_iter()
                .all(|r| self.gcd(&self.sub(&frob(n / r), &Poly::x()), f).is_one())
        } else {
            false
        }
    }

    fn pth_root(&self, a: &Poly) -> Poly {
        let p = self.field.characteristic() as usize;
        Poly::new(
            a.0.iter()
                .step_by(p)
                .map(|&c| self.field.pth_root(c))
                .collect(),
        )
    }

    /// Square-free decomposition of a monic polynomial: pairs (g, i) with
    /// pairwise coprime square-free g, whose product of g^i is the input.
    pub fn square_free(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let p = self.field.characteristic() as usize;
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative(f);
        if d.is_zero() {
            for (g, m) in self.square_free(&self.pth_root(f)) {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = self.gcd(f, &d);
        let mut w = self.divrem(f, &c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = self.gcd(&w, &c);
            let z = self.divrem(&w, &y).0;
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            c = self.divrem(&c, &y).0;
            w = y;
        }
        if !c.is_one() {
            for (g, m) in self.square_free(&self.pth_root(&c)) {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    pub fn distinct_degree(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let q = BigUint::from(self.field.order());
        let mut f = f.clone();
        let mut out = Vec::new();
        let mut h = self.rem(&Poly::x(), &f);
        let mut i = 1;
        while f.degree().unwrap_or(0) >= 2 * i {
            h = self.powmod(&h, &q, &f);
            let g = self.gcd(&self.sub(&h, &Poly::x()), &f);
            if !g.is_one() {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, i));
            }
            i += 1;
        }
        if let Some(d) = f.degree().filter(|&d| d > 0) {
            out.push((f, d));
        }
        out
    }

    /// Splits a monic square-free product of irreducibles of degree `r`.
    pub fn equal_degree(&self, f: &Poly, r: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let n = f.degree().unwrap_or(0);
        if n <= r {
            return vec![f.clone()];
        }
        let q = self.field.order();
        let p = self.field.characteristic();
        loop {
            let a = Poly::new((0..n).map(|_| Fq(rng.gen_range(0..q as u32))).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace from F_{q^r} down to F_2
                let e = self.field.degree() as usize * r;
                let mut t = self.rem(&a, f);
                let mut acc = t.clone();
                for _ in 1..e {
                    t = self.rem(&self.mul(&t, &t), f);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                let e = (BigUint::from(q).pow(r as u32) - 1u32) / 2u32;
                self.sub(&self.powmod(&a, &e, f), &Poly::one())
            };
            let g = self.gcd(&b, f);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let h = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, r, rng);
                out.extend(self.equal_degree(&h, r, rng));
                return out;
            }
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// coefficients. The product of the factors times the leading coefficient of
/// `f` equals `f`. Equal-degree splitting draws from a generator seeded with
/// `seed`.
pub fn factor_poly(field: &GaloisField, f: &Poly, seed: u64) -> Vec<(Poly, usize)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let ring = PolyRing::new(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, m) in ring.square_free(&ring.monic(f)) {
        for (h, r) in ring.distinct_degree(&g) {
            for irr in ring.equal_degree(&h, r, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
    out
}

/// Characteristic polynomial det(xI - A) via reduction to Hessenberg form.
pub fn char_poly(field: &GaloisField, a: &Matrix<Fq>) -> Poly {
    let n = a.rows();
    assert_eq!(n, a.cols(), "characteristic polynomial of a non-square matrix");
    let f = field;
    let mut h: Vec<Vec<Fq>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j].0 != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = f.inv(&h[j + 1][j]).unwrap();
        for k in j + 2..n {
            let u = f.mul(&h[k][j], &inv);
            if u.0 == 0 {
                continue;
            }
            for c in 0..n {
                let t = f.mul(&u, &h[j + 1][c]);
                h[k][c] = f.sub(&h[k][c], &t);
            }
            for row in h.iter_mut() {
                let t = f.mul(&u, &row[k]);
                row[j + 1] = f.add(&row[j + 1], &t);
            }
        }
    }
    let ring = PolyRing::new(field);
    // p[m] is the characteristic polynomial of the leading m×m block
    let mut p: Vec<Poly> = vec![Poly::one()];
    for m in 1..=n {
        let mm = m - 1;
        let lin = Poly::new(vec![f.neg(&h[mm][mm]), Fq(1)]);
        let mut next = ring.mul(&lin, &p[m - 1]);
        let mut prod = Fq(1);
        for i in (1..m).rev() {
            // 0-based row i-1, column mm; subdiagonal product h[i][i-1]..h[mm][mm-1]
            prod = f.mul(&prod, &h[i][i - 1]);
            let coef = f.mul(&h[i - 1][mm], &prod);
            if coef.0 != 0 {
                next = ring.sub(&next, &ring.scale(&p[i - 1], coef));
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(v: &[u32]) -> Poly {
        Poly::new(v.iter().map(|&c| Fq(c)).collect())
    }

    fn product(ring: &PolyRing, fs: &[(Poly, usize)]) -> Poly {
        fs.iter()
            .fold(Poly::one(), |acc, (g, m)| ring.mul(&acc, &ring.pow(g, *m)))
    }

    #[test]
    fn irreducible_quadratic_over_f2() {
        let f2 = GaloisField::new(2, 1).unwrap();
        let f = poly(&[1, 1, 1]);
        // exhaustive root check
        let ring = PolyRing::new(&f2);
        assert!(f2.elements().all(|a| ring.eval(&f, a).0 != 0));
        assert_eq!(factor_poly(&f2, &f, 1), vec![(f, 1)]);
    }

    #[test]
    fn repeated_root() {
        let f3 = GaloisField::new(3, 1).unwrap();
        assert_eq!(factor_poly(&f3, &poly(&[0, 0, 1]), 1), vec![(Poly::x(), 2)]);
    }

    #[test]
    fn cube_roots_of_unity_in_f4() {
        let f4 = GaloisField::new(2, 2).unwrap();
        let f = poly(&[1, 0, 0, 1]);
        let fs = factor_poly(&f4, &f, 7);
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        assert_eq!(product(&PolyRing::new(&f4), &fs), f);
    }

    #[test]
    fn inseparable_powers() {
        let f3 = GaloisField::new(3, 1).unwrap();
        let ring = PolyRing::new(&f3);
        // (x+1)^3 (x^2+1)^6 x
        let f = ring.mul(
            &ring.mul(&ring.pow(&poly(&[1, 1]), 3), &ring.pow(&poly(&[1, 0, 1]), 6)),
            &Poly::x(),
        );
        let fs = factor_poly(&f3, &f, 0);
        assert_eq!(
            fs,
            vec![
                (Poly::x(), 1),
                (poly(&[1, 1]), 3),
                (poly(&[1, 0, 1]), 6)
            ]
        );
    }

    #[test]
    fn charpoly_matches_determinant_oracle() {
        let f5 = GaloisField::new(5, 1).unwrap();
        let ring = PolyRing::new(&f5);
        let a = Matrix::from_rows(vec![
            vec![Fq(1), Fq(2), Fq(0), Fq(4)],
            vec![Fq(3), Fq(0), Fq(1), Fq(1)],
            vec![Fq(0), Fq(4), Fq(2), Fq(0)],
            vec![Fq(1), Fq(1), Fq(3), Fq(3)],
        ]);
        let cp = char_poly(&f5, &a);
        assert_eq!(cp.degree(), Some(4));
        assert_eq!(cp.lead(), Fq(1));
        for t in f5.elements() {
            let mut m = a.clone();
            for i in 0..4 {
                for j in 0..4 {
                    let d = if i == j { t } else { Fq(0) };
                    m.set(i, j, f5.sub(&d, a.get(i, j)));
                }
            }
            assert_eq!(ring.eval(&cp, t), super::super::linalg::determinant(&f5, &m));
        }
    }

    fn arb_poly() -> impl Strategy<Value = ((u64, u32), Vec<u32>)> {
        prop_oneof![Just((2u64, 1u32)), Just((2, 2)), Just((3, 1)), Just((3, 2)), Just((5, 1))]
            .prop_flat_map(|(p, d)| {
                let q = (p as u32).pow(d);
                (Just((p, d)), prop::collection::vec(0..q, 2..9))
            })
    }

    proptest! {
        #[test]
        fn factorization_reproduces_input(((p, d), coeffs) in arb_poly(), seed in any::<u64>()) {
            let field = GaloisField::new(p, d).unwrap();
            let ring = PolyRing::new(&field);
            let f = poly(&coeffs);
            prop_assume!(!f.is_zero());
            let fs = factor_poly(&field, &f, seed);
            let back = ring.scale(&product(&ring, &fs), f.lead());
            prop_assert_eq!(back, f);
            for (g, _) in &fs {
                prop_assert!(ring.is_irreducible(g));
                prop_assert_eq!(g.lead(), Fq(1));
            }
            prop_assert_eq!(factor_poly(&field, &poly(&coeffs), seed), fs);
        }
    }
}
