//! Cartan matrix from dimensions of Hom-spaces between projective
//! indecomposables, built from primitive idempotents of the group algebra.
//! Independent of the character computations; used as a cross-check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::brauer::BrauerData;
use crate::error::{Error, Result};
use crate::exactalg::{
    factor_poly, linear_solve, rank, Field, Fq, GaloisField, Matrix, Poly, PolyRing, Subspace,
};
use crate::group::PermGroup;

/// Largest group order the Hom-space oracle accepts.
pub const HOM_CARTAN_BOUND: usize = 24;

struct GroupAlgebra<'a> {
    group: &'a PermGroup,
    field: &'a GaloisField,
}

type Elem = Vec<Fq>;

impl GroupAlgebra<'_> {
    fn dim(&self) -> usize {
        self.group.order()
    }

    fn one(&self) -> Elem {
        let mut v = vec![Fq(0); self.dim()];
        v[self.group.identity_index()] = Fq(1);
        v
    }

    fn basis(&self, g: usize) -> Elem {
        let mut v = vec![Fq(0); self.dim()];
        v[g] = Fq(1);
        v
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let f = self.field;
        let mut out = vec![Fq(0); self.dim()];
        for (i, x) in a.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.0 == 0 {
                    continue;
                }
                let k = self.group.mul(i, j);
                out[k] = f.add(&out[k], &f.mul(x, y));
            }
        }
        out
    }

    fn add_scaled(&self, acc: &mut Elem, v: &Elem, c: Fq) {
        for (a, b) in acc.iter_mut().zip(v) {
            *a = self.field.add(a, &self.field.mul(b, &c));
        }
    }

    /// Minimal polynomial of `b` in the algebra with identity `e`.
    fn min_poly(&self, b: &Elem, e: &Elem) -> Poly {
        let f = self.field;
        let mut powers = vec![e.clone()];
        loop {
            let next = self.mul(powers.last().unwrap(), b);
            let k = powers.len();
            let mut a = Matrix::zeros(f, self.dim(), k);
            for (c, p) in powers.iter().enumerate() {
                for (r, x) in p.iter().enumerate() {
                    a.set(r, c, *x);
                }
            }
            if let Some(x) = linear_solve(f, &a, std::slice::from_ref(&next)).solutions[0].take() {
                let mut coeffs: Vec<Fq> = x.iter().map(|c| f.neg(c)).collect();
                coeffs.push(Fq(1));
                return Poly::new(coeffs);
            }
            powers.push(next);
        }
    }

    fn eval(&self, poly: &Poly, b: &Elem, e: &Elem) -> Elem {
        let mut acc = vec![Fq(0); self.dim()];
        for c in poly.coeffs().iter().rev() {
            acc = self.mul(&acc, b);
            self.add_scaled(&mut acc, e, *c);
        }
        acc
    }

    /// Splits `e` into orthogonal idempotents along the primary decomposition
    /// of a random element of eAe; a single piece means no split was found.
    fn refine(&self, e: &Elem, rng: &mut ChaCha8Rng, seed: u64) -> Vec<Elem> {
        let q = self.field.order() as u32;
        let a: Elem = (0..self.dim()).map(|_| Fq(rng.gen_range(0..q))).collect();
        let b = self.mul(&self.mul(e, &a), e);
        let mu = self.min_poly(&b, e);
        let ring = PolyRing::new(self.field);
        let factors = factor_poly(self.field, &mu, seed);
        if factors.len() < 2 {
            return vec![e.clone()];
        }
        factors
            .iter()
            .map(|(f, m)| {
                let fi = ring.pow(f, *m);
                let gi = ring.divrem(&mu, &fi).0;
                let (_, _, t) = ring.ext_gcd(&fi, &gi);
                let u = ring.rem(&ring.mul(&t, &gi), &mu);
                self.eval(&u, &b, e)
            })
            .collect()
    }
}

/// `hom[t][s] = dim Hom(P_S, P_T)`, the multiplicity of S in P_T.
pub fn hom_cartan_matrix(data: &BrauerData, seed: u64) -> Result<Vec<Vec<u64>>> {
    let group = data.group();
    if group.order() > HOM_CARTAN_BOUND {
        return Err(Error::OrderBoundExceeded {
            bound: HOM_CARTAN_BOUND,
        });
    }
    let f = &**data.field();
    let alg = GroupAlgebra { group, field: f };
    let target: usize = data.dimensions().iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idempotents = vec![alg.one()];
    let mut attempts = 0;
    let budget = 64 * target.max(1);
    let mut cursor = 0;
    while idempotents.len() < target {
        attempts += 1;
        if attempts > budget {
            return Err(Error::ChopStalled { attempts: budget });
        }
        cursor = (cursor + 1) % idempotents.len();
        let s = rng.gen();
        let pieces = alg.refine(&idempotents[cursor], &mut rng, s);
        if pieces.len() > 1 {
            idempotents.swap_remove(cursor);
            idempotents.extend(pieces);
        }
    }

    // the simple module at the top of eA is the one where e acts nonzero
    let element_mats: Vec<Vec<Matrix<Fq>>> = data
        .simples()
        .iter()
        .map(|s| s.module.all_element_matrices(group))
        .collect();
    let mut chosen: Vec<Option<Elem>> = vec![None; data.len()];
    for e in &idempotents {
        let tops: Vec<usize> = (0..data.len())
            .filter(|&s| {
                let d = data.simples()[s].dimension();
                let mut m = Matrix::zeros(f, d, d);
                for (g, c) in e.iter().enumerate() {
                    if c.0 != 0 {
                        m = m.add(f, &element_mats[s][g].scale(f, c));
                    }
                }
                rank(f, &m) > 0
            })
            .collect();
        if tops.len() != 1 {
            return Err(Error::Inconsistent(
                "idempotent is not primitive".into(),
            ));
        }
        chosen[tops[0]].get_or_insert_with(|| e.clone());
    }
    let chosen: Vec<Elem> = chosen
        .into_iter()
        .map(|e| e.ok_or_else(|| Error::Inconsistent("simple module without projective cover".into())))
        .collect::<Result<_>>()?;

    let n = data.len();
    let mut out = vec![vec![0u64; n]; n];
    for t in 0..n {
        for s in 0..n {
            let mut span = Subspace::new(alg.dim());
            for g in 0..alg.dim() {
                let v = alg.mul(&alg.mul(&chosen[t], &alg.basis(g)), &chosen[s]);
                span.insert(f, &v);
            }
            out[t][s] = span.dim() as u64;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;

    #[test]
    fn matches_pairing_cartan() {
        for (name, p) in [("S3", 2), ("S3", 3), ("C4", 2), ("A4", 2), ("D8", 2), ("C6", 3), ("S4", 3)] {
            let data = BrauerData::compute(&named_group(name).unwrap(), p, 2).unwrap();
            assert_eq!(hom_cartan_matrix(&data, 5).unwrap(), data.cartan(), "{name} p={p}");
        }
    }

    #[test]
    fn bound() {
        let data = BrauerData::compute(&named_group("C5xS3").unwrap(), 2, 2).unwrap();
        assert!(matches!(
            hom_cartan_matrix(&data, 1),
            Err(Error::OrderBoundExceeded { .. })
        ));
    }
}
