use std::sync::Arc;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::cyclotomic::{CycValue, CyclotomicField};
use super::field::Field;
use super::galois::{Fq, GaloisField};
use crate::error::{Error, Result};

/// The pairing ω^j ↔ ζ_m^j between the m-th roots of unity of F_q (ω the
/// fixed generator raised to (q-1)/m) and those of Q(ζ_m), with the
/// reduction map it induces on p-local cyclotomic numbers.
#[derive(Clone, Debug)]
pub struct BrauerLift {
    field: Arc<GaloisField>,
    cyc: Arc<CyclotomicField>,
    step: u64,
}

impl BrauerLift {
    pub fn new(field: Arc<GaloisField>, cyc: Arc<CyclotomicField>) -> Result<Self> {
        let m = cyc.conductor();
        let n = field.order() - 1;
        if !n.is_multiple_of(m) {
            return Err(Error::PreconditionViolated(format!(
                "{m} does not divide {n}, the order of the multiplicative group"
            )));
        }
        Ok(BrauerLift {
            field,
            cyc,
            step: n / m,
        })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn cyclotomic(&self) -> &Arc<CyclotomicField> {
        &self.cyc
    }

    pub fn conductor(&self) -> u64 {
        self.cyc.conductor()
    }

    /// ω^j in F_q.
    pub fn root(&self, j: i64) -> Fq {
        self.field.gen_pow(self.step as i64 * j)
    }

    /// ζ_m^j.
    pub fn zeta(&self, j: i64) -> CycValue {
        self.cyc.zeta_pow(j)
    }

    /// The exponent j in [0, m) with a = ω^j, if a is an m-th root of unity.
    pub fn root_index(&self, a: Fq) -> Option<u64> {
        let l = self.field.log(a)? as u64;
        l.is_multiple_of(self.step).then(|| l / self.step)
    }

    /// The cyclotomic root of unity paired with `a`.
    pub fn lift(&self, a: Fq) -> Option<CycValue> {
        self.root_index(a).map(|j| self.zeta(j as i64))
    }

    /// ρ: substitute ω for ζ_m and reduce rational coefficients mod p.
    /// Values of a subfield Q(ζ_d), d | m, are embedded first.
    pub fn rho_reduce(&self, v: &CycValue) -> Result<Fq> {
        let m = self.conductor();
        if !m.is_multiple_of(v.conductor()) {
            return Err(Error::PreconditionViolated(format!(
                "conductor {} does not divide {m}",
                v.conductor()
            )));
        }
        let v = self.cyc.embed(v);
        let f = &*self.field;
        let p = f.characteristic();
        let mut out = Fq(0);
        for (i, c) in v.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let den = c.denom().mod_floor(&p.into()).to_u64().unwrap();
            if den == 0 {
                return Err(Error::NotPLocal { p });
            }
            let num = c.numer().mod_floor(&p.into()).to_u64().unwrap();
            let r = f.mul(&f.from_u64(num), &f.inv(&f.from_u64(den)).unwrap());
            out = f.add(&out, &f.mul(&r, &self.root(i as i64)));
        }
        Ok(out)
    }
}
