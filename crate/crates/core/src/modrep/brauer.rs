//! Brauer characters of simple modules, projective characters and the
//! Cartan matrix.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::classfn::RegularClasses;
use super::meataxe::{chop_regular_over, regular_exponent, SimpleModule};
use crate::error::{Error, Result};
use crate::exactalg::{
    char_poly, factor_poly, inverse, linear_solve, rank, smith_normal_form, BrauerLift, CycValue,
    CyclotomicField, Field, Fq, GaloisField, Matrix,
};
use crate::group::{p_part, PermGroup};

/// Everything about kG needed downstream: simples over the splitting field,
/// their Brauer characters φ, the projective characters Φ and the Cartan
/// matrix.
///
/// Simples are ordered by dimension, the trivial module first, then by φ row
/// (lexicographically in class order, values compared by coefficient list).
#[derive(Debug)]
pub struct BrauerData {
    group: PermGroup,
    p: u64,
    lift: BrauerLift,
    classes: RegularClasses,
    simples: Vec<SimpleModule>,
    phi: Matrix<CycValue>,
    big_phi: Matrix<CycValue>,
    phi_inverse: Matrix<CycValue>,
    cartan: Vec<Vec<u64>>,
}

fn cmp_values(a: &CycValue, b: &CycValue) -> Ordering {
    a.coeffs().cmp(b.coeffs())
}

fn cmp_rows(a: &[CycValue], b: &[CycValue]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| cmp_values(x, y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// φ_S(x) for each simple S (rows) and p-regular class (columns): the sum of
/// the lifts of the eigenvalues of x on S.
pub fn brauer_character_table(
    group: &PermGroup,
    classes: &RegularClasses,
    simples: &[SimpleModule],
    lift: &BrauerLift,
) -> Result<Matrix<CycValue>> {
    let f = &**lift.field();
    let cyc = &**lift.cyclotomic();
    let mut rows = Vec::with_capacity(simples.len());
    for s in simples {
        let mut row = Vec::with_capacity(classes.len());
        for &x in &classes.reps {
            let m = s.module.element_matrix(group, x);
            let mut value = cyc.zero();
            for (fac, mult) in factor_poly(f, &char_poly(f, &m), 0) {
                if fac.degree() != Some(1) {
                    return Err(Error::NonSplitCharPoly);
                }
                let lambda = f.neg(&fac.coeff(0));
                let z = lift.lift(lambda).ok_or(Error::NonSplitCharPoly)?;
                value = cyc.add(&value, &cyc.mul(&z, &cyc.from_int(mult as i64)));
            }
            row.push(value);
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(rows))
}

/// Gram matrix entries (1/|G|) Σ_x α(x) β(x⁻¹) of the Brauer pairing.
fn pairing(
    a: &[CycValue],
    b: &[CycValue],
    classes: &RegularClasses,
    cyc: &CyclotomicField,
    order: usize,
) -> CycValue {
    let mut s = cyc.zero();
    for j in 0..classes.len() {
        let t = cyc.mul(&a[j], &b[classes.inverse[j]]);
        s = cyc.add(&s, &cyc.mul(&t, &cyc.from_int(classes.sizes[j] as i64)));
    }
    cyc.mul(
        &s,
        &cyc.from_rational(BigRational::new(1.into(), BigInt::from(order))),
    )
}

/// The rows Φ_S dual to the φ_T under the Brauer pairing.
pub fn projective_character_table(
    phi: &Matrix<CycValue>,
    classes: &RegularClasses,
    cyc: &CyclotomicField,
    order: usize,
) -> Result<Matrix<CycValue>> {
    let n = phi.rows();
    if n != classes.len() || phi.cols() != n {
        return Err(Error::SingularPhi);
    }
    // ⟨Φ, φ_T⟩ = Σ_j Φ(j) · h_j φ_T(j*) / |G|
    let scale = cyc.from_rational(BigRational::new(1.into(), BigInt::from(order)));
    let mut a = Matrix::zeros(cyc, n, n);
    for t in 0..n {
        for j in 0..n {
            let v = cyc.mul(
                phi.get(t, classes.inverse[j]),
                &cyc.mul(&cyc.from_int(classes.sizes[j] as i64), &scale),
            );
            a.set(t, j, v);
        }
    }
    let rhs: Vec<Vec<CycValue>> = (0..n)
        .map(|s| (0..n).map(|t| if s == t { cyc.one() } else { cyc.zero() }).collect())
        .collect();
    let sol = linear_solve(cyc, &a, &rhs);
    if sol.rank < n {
        return Err(Error::SingularPhi);
    }
    Ok(Matrix::from_rows(
        sol.solutions.into_iter().map(Option::unwrap).collect(),
    ))
}

/// c_{T,S} = ⟨Φ_T, Φ_S⟩, required to be non-negative integers.
pub fn cartan_matrix(
    big_phi: &Matrix<CycValue>,
    classes: &RegularClasses,
    cyc: &CyclotomicField,
    order: usize,
) -> Result<Vec<Vec<u64>>> {
    let n = big_phi.rows();
    (0..n)
        .map(|t| {
            (0..n)
                .map(|s| {
                    let c = pairing(big_phi.row(t), big_phi.row(s), classes, cyc, order);
                    c.as_integer()
                        .filter(|v| !v.is_negative())
                        .and_then(|v| v.to_u64())
                        .ok_or(Error::NonIntegralCartan { row: t, col: s })
                })
                .collect()
        })
        .collect()
}

impl BrauerData {
    /// Chops the regular module over the splitting field and derives the
    /// character tables.
    pub fn compute(group: &PermGroup, p: u64, seed: u64) -> Result<Self> {
        let m = regular_exponent(group, p);
        let field = Arc::new(GaloisField::splitting(p, m)?);
        let cyc = Arc::new(CyclotomicField::new(m));
        let lift = BrauerLift::new(field.clone(), cyc.clone())?;
        let classes = RegularClasses::new(group, p);
        let mut simples = chop_regular_over(group, field, seed)?;
        if simples.len() != classes.len() {
            return Err(Error::SimpleCountMismatch {
                simples: simples.len(),
                classes: classes.len(),
            });
        }
        let raw = brauer_character_table(group, &classes, &simples, &lift)?;
        let one = cyc.one();
        let is_trivial = |i: usize| raw.row(i).iter().all(|v| *v == one);
        let mut order: Vec<usize> = (0..simples.len()).collect();
        order.sort_by(|&a, &b| {
            simples[a]
                .dimension()
                .cmp(&simples[b].dimension())
                .then_with(|| is_trivial(b).cmp(&is_trivial(a)))
                .then_with(|| cmp_rows(raw.row(a), raw.row(b)))
        });
        let phi = Matrix::from_rows(order.iter().map(|&i| raw.row(i).to_vec()).collect());
        let mut taken: Vec<Option<SimpleModule>> = simples.drain(..).map(Some).collect();
        let simples: Vec<SimpleModule> = order.iter().map(|&i| taken[i].take().unwrap()).collect();

        let big_phi = projective_character_table(&phi, &classes, &cyc, group.order())?;
        let phi_inverse = inverse(&*cyc, &phi).ok_or(Error::SingularPhi)?;
        let cartan = cartan_matrix(&big_phi, &classes, &cyc, group.order())?;
        Ok(BrauerData {
            group: group.clone(),
            p,
            lift,
            classes,
            simples,
            phi,
            big_phi,
            phi_inverse,
            cartan,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        self.lift.field()
    }

    pub fn cyclotomic(&self) -> &Arc<CyclotomicField> {
        self.lift.cyclotomic()
    }

    pub fn lift(&self) -> &BrauerLift {
        &self.lift
    }

    pub fn classes(&self) -> &RegularClasses {
        &self.classes
    }

    pub fn simples(&self) -> &[SimpleModule] {
        &self.simples
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.simples.iter().map(SimpleModule::dimension).collect()
    }

    /// Rows are simples, columns p-regular classes.
    pub fn phi(&self) -> &Matrix<CycValue> {
        &self.phi
    }

    /// Projective characters, rows indexed like the simples.
    pub fn big_phi(&self) -> &Matrix<CycValue> {
        &self.big_phi
    }

    /// Inverse of [`Self::phi`]: columns indexed by simples.
    pub fn phi_inverse(&self) -> &Matrix<CycValue> {
        &self.phi_inverse
    }

    /// `cartan()[t][s]`: multiplicity of S in the projective cover of T.
    pub fn cartan(&self) -> &[Vec<u64>] {
        &self.cartan
    }

    /// dim P_S = Σ_T c_{T,S} dim T.
    pub fn projective_dimensions(&self) -> Vec<u64> {
        let d = self.dimensions();
        (0..self.len())
            .map(|s| (0..self.len()).map(|t| self.cartan[t][s] * d[t] as u64).sum())
            .collect()
    }

    /// Elementary divisors of the Cartan matrix, ascending.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let m: Vec<Vec<BigInt>> = self
            .cartan
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        smith_normal_form(&m)
            .into_iter()
            .map(|d| d.to_u64().expect("divisor fits"))
            .collect()
    }

    /// {|C_G(x)|_p} over the p-regular classes, ascending.
    pub fn centralizer_p_parts(&self) -> Vec<u64> {
        let mut v: Vec<u64> = (0..self.classes.len())
            .map(|j| p_part(self.classes.centralizer_order(j) as u64, self.p))
            .collect();
        v.sort_unstable();
        v
    }

    /// Rank of the Cartan matrix modulo p.
    pub fn cartan_rank_mod_p(&self) -> usize {
        let f = &**self.field();
        let m = Matrix::from_rows(
            self.cartan
                .iter()
                .map(|r| r.iter().map(|&x| f.from_u64(x)).collect::<Vec<Fq>>())
                .collect(),
        );
        rank(f, &m)
    }

    /// Class position of `x⁻¹`'s class for class position `j`.
    pub fn inverse_class(&self, j: usize) -> usize {
        self.classes.inverse[j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;

    fn data(name: &str, p: u64) -> BrauerData {
        BrauerData::compute(&named_group(name).unwrap(), p, 11).unwrap()
    }

    fn cyc_int(d: &BrauerData, n: i64) -> CycValue {
        d.cyclotomic().from_int(n)
    }

    #[test]
    fn s3_mod_2() {
        let d = data("S3", 2);
        assert_eq!(d.dimensions(), [1, 2]);
        assert_eq!(d.cartan(), [vec![2, 0], vec![0, 1]]);
        // classes: identity, (123)
        assert_eq!(d.phi().row(1), [cyc_int(&d, 2), cyc_int(&d, -1)]);
        assert_eq!(d.big_phi().row(0), [cyc_int(&d, 2), cyc_int(&d, 2)]);
        assert_eq!(d.big_phi().row(1), [cyc_int(&d, 2), cyc_int(&d, -1)]);
        assert_eq!(d.elementary_divisors(), [1, 2]);
    }

    #[test]
    fn s3_mod_3() {
        let d = data("S3", 3);
        assert_eq!(d.dimensions(), [1, 1]);
        // classes: identity, (12); order (k, sgn)
        assert_eq!(d.phi().row(0), [cyc_int(&d, 1), cyc_int(&d, 1)]);
        assert_eq!(d.phi().row(1), [cyc_int(&d, 1), cyc_int(&d, -1)]);
        assert_eq!(d.big_phi().row(0), [cyc_int(&d, 3), cyc_int(&d, 1)]);
        assert_eq!(d.big_phi().row(1), [cyc_int(&d, 3), cyc_int(&d, -1)]);
        assert_eq!(d.cartan(), [vec![2, 1], vec![1, 2]]);
        assert_eq!(d.elementary_divisors(), [1, 3]);
        assert_eq!(d.cartan_rank_mod_p(), 1);
    }

    #[test]
    fn cyclic_p_groups_and_coprime_case() {
        for p in [2, 3, 5, 7] {
            let d = data(&format!("C{p}"), p);
            assert_eq!(d.cartan(), [vec![p]]);
            assert_eq!(d.cartan_rank_mod_p(), 0);
        }
        let d = data("S3", 5);
        assert_eq!(d.phi(), d.big_phi());
        assert_eq!(d.cartan(), [vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn two_dimensional_simple_of_s3_at_three_cycle() {
        let d = data("S3", 2);
        let k = d.cyclotomic();
        // ζ_3 + ζ_3² = -1
        assert_eq!(k.add(&k.zeta_pow(1), &k.zeta_pow(2)), *d.phi().get(1, 1));
    }

    #[test]
    fn brauer_nesbitt_and_block_sums() {
        for (name, p) in [("S4", 2), ("S4", 3), ("A4", 2), ("A4", 3), ("D8", 2), ("Q8", 2), ("C6", 2), ("C3xC3", 3)] {
            let d = data(name, p);
            assert_eq!(d.elementary_divisors(), d.centralizer_p_parts(), "{name} p={p}");
            let dims = d.dimensions();
            let total: u64 = d
                .projective_dimensions()
                .iter()
                .zip(&dims)
                .map(|(a, &b)| a * b as u64)
                .sum();
            assert_eq!(total, d.group().order() as u64);
            for t in 0..d.len() {
                for s in 0..d.len() {
                    assert_eq!(d.cartan()[t][s], d.cartan()[s][t]);
                }
                assert!(d.phi().row(0).iter().all(|v| *v == cyc_int(&d, 1)));
                assert_eq!(d.phi().get(t, 0).as_integer(), Some(BigInt::from(dims[t])));
            }
            // composition multiplicity of S in kG is Σ_T dim T · c_{T,S}
            for (s, simple) in d.simples().iter().enumerate() {
                let expect: u64 = (0..d.len()).map(|t| dims[t] as u64 * d.cartan()[t][s]).sum();
                assert_eq!(simple.composition_multiplicity as u64, expect);
            }
        }
    }

    #[test]
    fn a4_mod_2() {
        let d = data("A4", 2);
        assert_eq!(d.dimensions(), [1, 1, 1]);
        assert_eq!(d.elementary_divisors(), [1, 1, 4]);
    }
}
