//! Class functions on p-regular classes: induction, inflation and
//! decomposition into Brauer characters.

use num_bigint::BigInt;
use num_traits::Signed;

use super::brauer::BrauerData;
use crate::error::{Error, Result};
use crate::exactalg::{CycValue, CyclotomicField, Field};
use crate::group::{PermGroup, Quotient};

/// The p-regular conjugacy classes of a group, in canonical class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularClasses {
    pub p: u64,
    /// Canonical class index of each regular class.
    pub classes: Vec<usize>,
    /// Element index of each representative.
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Position of the class of x^-1.
    pub inverse: Vec<usize>,
    position: Vec<Option<usize>>,
    group_order: usize,
}

impl RegularClasses {
    pub fn new(group: &PermGroup, p: u64) -> Self {
        let all = group.conjugacy_classes(p);
        let mut position = vec![None; all.len()];
        let mut classes = Vec::new();
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for (i, c) in all.iter().enumerate() {
            if c.p_regular {
                position[i] = Some(classes.len());
                classes.push(i);
                reps.push(c.rep_index);
                sizes.push(c.size);
            }
        }
        let inverse = reps
            .iter()
            .map(|&r| position[group.class_of(group.inv(r))].expect("inverse is p-regular"))
            .collect();
        RegularClasses {
            p,
            classes,
            reps,
            sizes,
            inverse,
            position,
            group_order: group.order(),
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Position of the class of element `i`, if it is p-regular.
    pub fn position_of(&self, group: &PermGroup, i: usize) -> Option<usize> {
        self.position[group.class_of(i)]
    }

    pub fn centralizer_order(&self, j: usize) -> usize {
        self.group_order / self.sizes[j]
    }
}

/// (Ind χ)(x) = (1/|H|) Σ_{t ∈ G, t⁻¹xt ∈ H} χ(t⁻¹xt) on the p-regular
/// classes of G. Values of χ may have any conductor dividing that of `cyc`.
pub fn induce_class_function(
    g: &PermGroup,
    g_classes: &RegularClasses,
    h: &PermGroup,
    h_classes: &RegularClasses,
    chi: &[CycValue],
    cyc: &CyclotomicField,
) -> Result<Vec<CycValue>> {
    if h.degree() != g.degree() || !g.contains_group(h) {
        return Err(Error::NotSubgroup);
    }
    if chi.len() != h_classes.len() {
        return Err(Error::DimensionMismatch(format!(
            "class function has {} values for {} classes",
            chi.len(),
            h_classes.len()
        )));
    }
    let chi: Vec<CycValue> = chi.iter().map(|v| cyc.embed(v)).collect();
    // |C_G(x)| / |H| times the sum over the G-class of x meeting H
    g_classes
        .reps
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let mut sum = cyc.zero();
            for &y in g.class_members(g.class_of(x)) {
                if let Some(hy) = h.index_of(g.element(y)) {
                    let pos = h_classes
                        .position_of(h, hy)
                        .expect("p-regular element of G is p-regular in H");
                    sum = cyc.add(&sum, &chi[pos]);
                }
            }
            let scale = cyc.from_rational(num_rational::BigRational::new(
                BigInt::from(g_classes.centralizer_order(j)),
                BigInt::from(h.order()),
            ));
            Ok(cyc.mul(&sum, &scale))
        })
        .collect()
}

/// χ ∘ π on the p-regular classes of H, for π: H → H/R.
pub fn inflate_class_function(
    h_classes: &RegularClasses,
    quotient: &Quotient,
    bar_classes: &RegularClasses,
    chi: &[CycValue],
) -> Vec<CycValue> {
    h_classes
        .reps
        .iter()
        .map(|&y| {
            let img = quotient.projection[y];
            let pos = bar_classes
                .position_of(&quotient.group, img)
                .expect("image of a p-regular element is p-regular");
            chi[pos].clone()
        })
        .collect()
}

/// Coefficients a_S with χ = Σ a_S φ_S. With `integral`, every coefficient
/// must be a non-negative rational integer.
pub fn decompose_into_simples(
    chi: &[CycValue],
    data: &BrauerData,
    integral: bool,
) -> Result<Vec<CycValue>> {
    let cyc = data.cyclotomic();
    if chi.len() != data.classes().len() {
        return Err(Error::DimensionMismatch(format!(
            "class function has {} values for {} classes",
            chi.len(),
            data.classes().len()
        )));
    }
    let chi: Vec<CycValue> = chi.iter().map(|v| cyc.embed(v)).collect();
    let inv = data.phi_inverse();
    let coeffs: Vec<CycValue> = (0..inv.cols())
        .map(|s| {
            chi.iter()
                .enumerate()
                .fold(cyc.zero(), |acc, (j, c)| cyc.add(&acc, &cyc.mul(c, inv.get(j, s))))
        })
        .collect();
    if integral
        && !coeffs
            .iter()
            .all(|c| c.as_integer().is_some_and(|n| !n.is_negative()))
    {
        return Err(Error::NonIntegralDecomposition);
    }
    Ok(coeffs)
}

/// Coefficients as non-negative integers; see [`decompose_into_simples`].
pub fn decompose_integral(chi: &[CycValue], data: &BrauerData) -> Result<Vec<u64>> {
    Ok(decompose_into_simples(chi, data, true)?
        .iter()
        .map(|c| {
            let n = c.as_integer().unwrap();
            u64::try_from(n).unwrap_or(0)
        })
        .collect())
}

/// The function with value |C_G(x)| on the class of `x` and zero elsewhere,
/// which is Ind_{<x>}(|x| 1_x).
pub fn class_indicator(classes: &RegularClasses, j: usize, cyc: &CyclotomicField) -> Vec<CycValue> {
    (0..classes.len())
        .map(|i| {
            if i == j {
                cyc.from_int(classes.centralizer_order(j) as i64)
            } else {
                cyc.zero()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, Perm};

    fn ints(cyc: &CyclotomicField, v: &[i64]) -> Vec<CycValue> {
        v.iter().map(|&n| cyc.from_int(n)).collect()
    }

    #[test]
    fn induction_from_c3_to_s3() {
        let g = named_group("S3").unwrap();
        let gd = BrauerData::compute(&g, 2, 1).unwrap();
        let x = Perm::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let h = g.subgroup_generated(&[x]).unwrap();
        let hd = BrauerData::compute(&h, 2, 1).unwrap();
        let cyc = gd.cyclotomic();
        for s in 1..3 {
            let ind = induce_class_function(&g, gd.classes(), &h, hd.classes(), hd.phi().row(s), cyc)
                .unwrap();
            assert_eq!(ind, ints(cyc, &[2, -1]));
            assert_eq!(ind, gd.phi().row(1));
        }
        // Ind_G^G is the identity
        let same = induce_class_function(&g, gd.classes(), &g, gd.classes(), gd.phi().row(1), cyc)
            .unwrap();
        assert_eq!(same, gd.phi().row(1));
        let other = named_group("C2").unwrap();
        let od = BrauerData::compute(&other, 2, 1).unwrap();
        assert_eq!(
            induce_class_function(&g, gd.classes(), &other, od.classes(), od.phi().row(0), cyc),
            Err(Error::NotSubgroup)
        );
    }

    #[test]
    fn induced_scaled_indicator_is_class_indicator() {
        for (name, p) in [("S4", 2), ("S4", 3), ("A4", 2), ("C3xC3", 2)] {
            let g = named_group(name).unwrap();
            let gd = BrauerData::compute(&g, p, 1).unwrap();
            let cyc = gd.cyclotomic();
            for j in 0..gd.classes().len() {
                let x = gd.classes().reps[j];
                let cyclic = g.subgroup_generated(&[g.element(x).clone()]).unwrap();
                let cc = RegularClasses::new(&cyclic, p);
                let ord = g.element_order(x) as i64;
                let chi: Vec<CycValue> = cc
                    .reps
                    .iter()
                    .map(|&y| {
                        if cyclic.element(y) == g.element(x) {
                            cyc.from_int(ord)
                        } else {
                            cyc.zero()
                        }
                    })
                    .collect();
                let ind = induce_class_function(&g, gd.classes(), &cyclic, &cc, &chi, cyc).unwrap();
                assert_eq!(ind, class_indicator(gd.classes(), j, cyc), "{name} p={p} class {j}");
            }
        }
    }

    #[test]
    fn decompositions() {
        let s3 = BrauerData::compute(&named_group("S3").unwrap(), 2, 1).unwrap();
        let cyc = s3.cyclotomic();
        assert_eq!(
            decompose_into_simples(s3.phi().row(1), &s3, true).unwrap(),
            ints(cyc, &[0, 1])
        );
        assert_eq!(decompose_integral(&ints(cyc, &[4, 1]), &s3).unwrap(), [2, 1]);
        assert_eq!(
            decompose_integral(&ints(cyc, &[1, 0]), &s3),
            Err(Error::NonIntegralDecomposition)
        );

        let g = named_group("S4").unwrap();
        let s4 = BrauerData::compute(&g, 2, 1).unwrap();
        let d8 = g.sylow_subgroup(2);
        let dc = RegularClasses::new(&d8, 2);
        let triv = ints(s4.cyclotomic(), &vec![1; dc.len()]);
        let ind = induce_class_function(&g, s4.classes(), &d8, &dc, &triv, s4.cyclotomic()).unwrap();
        assert_eq!(ind, ints(s4.cyclotomic(), &[3, 0]));
        assert_eq!(decompose_integral(&ind, &s4).unwrap(), [1, 1]);
    }

    #[test]
    fn inflation_through_a_quotient() {
        let g = named_group("S4").unwrap();
        let v4 = g
            .subgroup_generated(&[
                Perm::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap(),
                Perm::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap(),
            ])
            .unwrap();
        let quo = g.quotient_group(&v4).unwrap();
        let bar = BrauerData::compute(&quo.group, 2, 1).unwrap();
        let full = BrauerData::compute(&g, 2, 1).unwrap();
        // S4/V4 ≅ S3 and its 2-modular simples are those of S4
        for s in 0..bar.len() {
            let inf = inflate_class_function(full.classes(), &quo, bar.classes(), bar.phi().row(s));
            let inf: Vec<CycValue> = inf.iter().map(|v| full.cyclotomic().embed(v)).collect();
            assert_eq!(inf, full.phi().row(s));
        }
    }
}
