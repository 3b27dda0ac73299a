//! Evaluations of kR_k and its subfunctors at a group: defect classes, the
//! elements γ_{G,x} and U_x, bases of genk⟨P⟩(G) and dimensions of S_P(G).

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::catalog::{ClosedSet, PGroupCatalog};
use crate::error::{Error, Result};
use crate::exactalg::{inverse, rank, CycValue, Field, Fq, GaloisField, Matrix, Subspace};
use crate::group::{embeds, p_part, PermGroup, Perm};
use crate::modrep::{
    decompose_integral, decompose_into_simples, induce_class_function, inflate_class_function,
    BrauerData, RegularClasses,
};

/// An element of kR_k(G): coefficients over the splitting field, indexed by
/// the simple modules in their fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RkElement(pub Vec<Fq>);

impl RkElement {
    pub fn coeffs(&self) -> &[Fq] {
        &self.0
    }

    pub fn add(&self, f: &GaloisField, other: &RkElement) -> RkElement {
        RkElement(self.0.iter().zip(&other.0).map(|(a, b)| f.add(a, b)).collect())
    }

    pub fn scale(&self, f: &GaloisField, c: Fq) -> RkElement {
        RkElement(self.0.iter().map(|a| f.mul(a, &c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.0 == 0)
    }
}

/// Rank over the field of a family of elements.
pub fn rk_rank(f: &GaloisField, elems: &[RkElement]) -> usize {
    if elems.is_empty() {
        return 0;
    }
    rank(f, &Matrix::from_rows(elems.iter().map(|e| e.0.clone()).collect()))
}

/// Whether `v` lies in the span of `elems`.
pub fn rk_in_span(f: &GaloisField, elems: &[RkElement], v: &RkElement) -> bool {
    let mut s = Subspace::new(v.0.len());
    for e in elems {
        s.insert(f, &e.0);
    }
    s.contains(f, &v.0)
}

#[derive(Clone, Debug)]
pub struct DefectEntry {
    pub representative: Perm,
    pub rep_index: usize,
    pub centralizer_order: usize,
    /// A Sylow p-subgroup of the centralizer of the representative.
    pub sylow: PermGroup,
    pub catalog_index: usize,
    pub defect_zero: bool,
}

/// The defect of each p-regular class, in class order.
#[derive(Clone, Debug)]
pub struct DefectReport {
    pub p: u64,
    pub entries: Vec<DefectEntry>,
}

impl DefectReport {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn defect_zero_classes(&self) -> Vec<usize> {
        (0..self.entries.len())
            .filter(|&j| self.entries[j].defect_zero)
            .collect()
    }
}

/// Assigns each p-regular class the catalog entry isomorphic to a Sylow
/// p-subgroup of its centralizer.
pub fn defect_classification(data: &BrauerData, catalog: &PGroupCatalog) -> Result<DefectReport> {
    let g = data.group();
    let p = data.p();
    if catalog.p() != p {
        return Err(Error::PreconditionViolated(format!(
            "catalog is for p = {}, not {p}",
            catalog.p()
        )));
    }
    let classes = data.classes();
    let mut entries = Vec::with_capacity(classes.len());
    for &x in &classes.reps {
        let rep = g.element(x).clone();
        let c = g.centralizer(std::slice::from_ref(&rep))?;
        let sylow = c.sylow_subgroup(p);
        let idx = catalog.find(&sylow)?.ok_or(Error::CatalogTooSmall {
            order: sylow.order(),
        })?;
        entries.push(DefectEntry {
            representative: rep,
            rep_index: x,
            centralizer_order: c.order(),
            defect_zero: sylow.order() == 1,
            sylow,
            catalog_index: idx,
        });
    }
    Ok(DefectReport { p, entries })
}

/// Γ_{G,x} = (Φ_S(x⁻¹)/|C_G(x)|)_S and its reduction γ_{G,x}.
pub fn gamma_element(data: &BrauerData, class: usize) -> Result<(RkElement, Vec<CycValue>)> {
    let classes = data.classes();
    let c = classes.centralizer_order(class);
    if (c as u64).is_multiple_of(data.p()) {
        return Err(Error::NotDefectZero { class });
    }
    let cyc = data.cyclotomic();
    let inv = classes.inverse[class];
    let scale = cyc.from_rational(BigRational::new(1.into(), BigInt::from(c)));
    let big: Vec<CycValue> = (0..data.len())
        .map(|s| cyc.mul(data.big_phi().get(s, inv), &scale))
        .collect();
    let red = big
        .iter()
        .map(|v| data.lift().rho_reduce(v))
        .collect::<Result<Vec<_>>>()?;
    Ok((RkElement(red), big))
}

/// Summary of a [`product_group_check`] run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCheck {
    pub classes_l: usize,
    pub dim_q: usize,
    pub dim_product: usize,
    /// (catalog label, dim S_P(L×Q), #classes(L) · dim S_P(Q)).
    pub sp: Vec<(String, usize, usize)>,
    pub passed: bool,
}

/// kR_k and its subfunctors evaluated at one group.
pub struct Evaluation<'a> {
    data: &'a BrauerData,
    catalog: &'a PGroupCatalog,
    defects: DefectReport,
    seed: u64,
    u_cache: Vec<OnceLock<Result<RkElement>>>,
    structure: OnceLock<Result<Vec<Vec<Vec<Fq>>>>>,
}

impl<'a> Evaluation<'a> {
    pub fn new(data: &'a BrauerData, catalog: &'a PGroupCatalog, seed: u64) -> Result<Self> {
        let defects = defect_classification(data, catalog)?;
        Ok(Evaluation {
            u_cache: (0..defects.len()).map(|_| OnceLock::new()).collect(),
            data,
            catalog,
            defects,
            seed,
            structure: OnceLock::new(),
        })
    }

    pub fn data(&self) -> &'a BrauerData {
        self.data
    }

    pub fn catalog(&self) -> &'a PGroupCatalog {
        self.catalog
    }

    pub fn defects(&self) -> &DefectReport {
        &self.defects
    }

    fn field(&self) -> &GaloisField {
        self.data.field()
    }

    /// Dimension of kR_k(G), the number of simple modules.
    pub fn dim(&self) -> usize {
        self.data.len()
    }

    /// The class of a simple module as a basis vector.
    pub fn simple(&self, s: usize) -> RkElement {
        let mut v = vec![Fq(0); self.dim()];
        v[s] = Fq(1);
        RkElement(v)
    }

    pub fn gamma_element(&self, class: usize) -> Result<(RkElement, Vec<CycValue>)> {
        gamma_element(self.data, class)
    }

    /// k·c^G(P_T): the reduced row T of the Cartan matrix.
    pub fn reduced_cartan_image(&self, t: usize) -> RkElement {
        let f = self.field();
        RkElement(self.data.cartan()[t].iter().map(|&c| f.from_u64(c)).collect())
    }

    /// {γ_{G,x} : x of defect zero}, after checking that they are independent,
    /// that each reduced Cartan image is Σ_x ρ(Φ_T(x)) γ_x, and that the
    /// reduced Cartan image of v_x is |C_G(x)| γ_x.
    pub fn cartan_image_basis(&self) -> Result<Vec<RkElement>> {
        let f = self.field();
        let data = self.data;
        let zero_classes = self.defects.defect_zero_classes();
        let gammas = zero_classes
            .iter()
            .map(|&j| Ok(self.gamma_element(j)?.0))
            .collect::<Result<Vec<_>>>()?;
        if rk_rank(f, &gammas) != gammas.len() {
            return Err(Error::Inconsistent("γ elements are linearly dependent".into()));
        }
        for t in 0..data.len() {
            let mut sum = RkElement(vec![Fq(0); data.len()]);
            for (g, &j) in gammas.iter().zip(&zero_classes) {
                let c = data.lift().rho_reduce(data.big_phi().get(t, j))?;
                sum = sum.add(f, &g.scale(f, c));
            }
            if sum != self.reduced_cartan_image(t) {
                return Err(Error::Inconsistent(format!(
                    "reduced Cartan image of P_{t} is not the expected combination of γ"
                )));
            }
        }
        let cyc = data.cyclotomic();
        let big_inv = inverse(&**cyc, data.big_phi()).ok_or(Error::SingularPhi)?;
        for (g, &j) in gammas.iter().zip(&zero_classes) {
            let v = self.v_element(j)?;
            // v = Σ_S b_S Φ_S, and c(v) = Σ_S b_S c(P_S)
            let b: Vec<CycValue> = (0..data.len())
                .map(|s| {
                    (0..v.len()).fold(cyc.zero(), |acc, i| {
                        cyc.add(&acc, &cyc.mul(&v[i], big_inv.get(i, s)))
                    })
                })
                .collect();
            let image = (0..data.len())
                .map(|u| {
                    let a = (0..data.len()).fold(cyc.zero(), |acc, s| {
                        cyc.add(&acc, &cyc.mul(&b[s], &cyc.from_int(data.cartan()[s][u] as i64)))
                    });
                    data.lift().rho_reduce(&a)
                })
                .collect::<Result<Vec<_>>>()?;
            let c = f.from_u64(data.classes().centralizer_order(j) as u64);
            if RkElement(image) != g.scale(f, c) {
                return Err(Error::Inconsistent(format!(
                    "Cartan image of v_x for class {j} is not |C_G(x)| γ_x"
                )));
            }
        }
        Ok(gammas)
    }

    /// v_x = Ind_{<x>}^G(|x| 1_x) as a class function.
    pub fn v_element(&self, class: usize) -> Result<Vec<CycValue>> {
        let g = self.data.group();
        let p = self.data.p();
        let cyc = self.data.cyclotomic();
        let x = g.element(self.data.classes().reps[class]).clone();
        let cyclic = g.subgroup_generated(std::slice::from_ref(&x))?;
        let cc = RegularClasses::new(&cyclic, p);
        let ord = cyclic.order() as i64;
        let chi: Vec<CycValue> = cc
            .reps
            .iter()
            .map(|&y| {
                if *cyclic.element(y) == x {
                    cyc.from_int(ord)
                } else {
                    cyc.zero()
                }
            })
            .collect();
        induce_class_function(g, self.data.classes(), &cyclic, &cc, &chi, cyc)
    }

    /// U_x for the class at `class`, with the representative and Sylow
    /// subgroup from the defect report.
    pub fn u_element(&self, class: usize) -> Result<RkElement> {
        self.u_cache[class]
            .get_or_init(|| {
                let e = &self.defects.entries[class];
                self.u_element_with(e.rep_index, &e.sylow)
            })
            .clone()
    }

    /// U_x = Ind_H Inf_{H/R} γ_{H/R, xR} with H = R·C_G(R), for any p-regular
    /// element `x` and Sylow p-subgroup `r` of its centralizer.
    pub fn u_element_with(&self, x: usize, r: &PermGroup) -> Result<RkElement> {
        let data = self.data;
        let g = data.group();
        let p = data.p();
        let xp = g.element(x).clone();
        if (g.element_order(x) as u64).is_multiple_of(p) {
            return Err(Error::PreconditionViolated("element is not p-regular".into()));
        }
        let c = g.centralizer(std::slice::from_ref(&xp))?;
        if !c.contains_group(r) || r.order() as u64 != p_part(c.order() as u64, p) {
            return Err(Error::PreconditionViolated(
                "not a Sylow p-subgroup of the centralizer".into(),
            ));
        }
        let cr = g.centralizer_of_group(r)?;
        let mut gens: Vec<Perm> = r.generators().to_vec();
        gens.extend(cr.generators().iter().cloned());
        let h = g.subgroup_generated(&gens)?;
        let quo = h.quotient_group(r)?;
        let bar = BrauerData::compute(&quo.group, p, self.seed)?;
        let hx = h.index_of(&xp).expect("x centralizes R");
        let xbar = quo.projection[hx];
        let pos = bar
            .classes()
            .position_of(&quo.group, xbar)
            .expect("image of a p-regular element is p-regular");
        if (bar.classes().centralizer_order(pos) as u64).is_multiple_of(p) {
            return Err(Error::DefectNotZeroInQuotient);
        }
        // θ = Σ_S Γ_S φ_S on H/R
        let (_, big_gamma) = gamma_element(&bar, pos)?;
        let bc = bar.cyclotomic();
        let theta: Vec<CycValue> = (0..bar.classes().len())
            .map(|j| {
                (0..bar.len()).fold(bc.zero(), |acc, s| {
                    bc.add(&acc, &bc.mul(&big_gamma[s], bar.phi().get(s, j)))
                })
            })
            .collect();
        let h_classes = RegularClasses::new(&h, p);
        let inflated = inflate_class_function(&h_classes, &quo, bar.classes(), &theta);
        let induced =
            induce_class_function(g, data.classes(), &h, &h_classes, &inflated, data.cyclotomic())?;
        let coeffs = decompose_into_simples(&induced, data, false)?;
        Ok(RkElement(
            coeffs
                .iter()
                .map(|v| data.lift().rho_reduce(v))
                .collect::<Result<Vec<_>>>()?,
        ))
    }

    /// Classes whose defect embeds in catalog entry `pi`.
    pub fn classes_embedding_in(&self, pi: usize) -> Vec<usize> {
        (0..self.defects.len())
            .filter(|&j| self.catalog.embeds(self.defects.entries[j].catalog_index, pi))
            .collect()
    }

    /// {U_x : defect of x embeds in P}, checked to be independent.
    pub fn genk_basis(&self, pi: usize) -> Result<Vec<RkElement>> {
        let basis = self
            .classes_embedding_in(pi)
            .into_iter()
            .map(|j| self.u_element(j))
            .collect::<Result<Vec<_>>>()?;
        if rk_rank(self.field(), &basis) != basis.len() {
            return Err(Error::Inconsistent(format!(
                "U elements for {} are linearly dependent",
                self.catalog.label(pi)
            )));
        }
        Ok(basis)
    }

    /// Number of classes whose defect is isomorphic to P.
    pub fn sp_count(&self, pi: usize) -> usize {
        self.defects
            .entries
            .iter()
            .filter(|e| e.catalog_index == pi)
            .count()
    }

    /// rank genk⟨P⟩(G) − rank of the sum of genk⟨Q⟩(G) over proper Q ↪ P.
    pub fn sp_rank_difference(&self, pi: usize) -> Result<usize> {
        let top = rk_rank(self.field(), &self.genk_basis(pi)?);
        let mut lower = Vec::new();
        for q in 0..self.catalog.len() {
            if q != pi && self.catalog.embeds(q, pi) {
                lower.extend(self.genk_basis(q)?);
            }
        }
        Ok(top - rk_rank(self.field(), &lower))
    }

    /// dim S_P(G), computed both by counting defects and as a rank
    /// difference; the two must agree.
    pub fn sp_dimension(&self, pi: usize) -> Result<usize> {
        let count = self.sp_count(pi);
        let diff = self.sp_rank_difference(pi)?;
        if count != diff {
            return Err(Error::Inconsistent(format!(
                "S_{} has {count} classes of that defect but rank difference {diff}",
                self.catalog.label(pi)
            )));
        }
        Ok(count)
    }

    /// Cumulative Σ_{j ≤ i} dim S_{P_j}(G) along the catalog.
    pub fn filtration_table(&self) -> Result<Vec<usize>> {
        let sylow = self.data.group().sylow_subgroup(self.data.p());
        let mut out = Vec::with_capacity(self.catalog.len());
        let mut total = 0;
        for i in 0..self.catalog.len() {
            let d = self.sp_dimension(i)?;
            if d > 0 && !embeds(&self.catalog.entry(i).group, &sylow)? {
                return Err(Error::Inconsistent(format!(
                    "S_{} is nonzero but does not embed in a Sylow subgroup",
                    self.catalog.label(i)
                )));
            }
            total += d;
            out.push(total);
        }
        if total != self.dim() {
            return Err(Error::Inconsistent(format!(
                "filtration ends at {total}, not {}",
                self.dim()
            )));
        }
        Ok(out)
    }

    /// dim Θ(C)(G): rank of the union of genk bases over P ∈ C.
    pub fn closed_set_dimension(&self, set: &ClosedSet<'_>) -> Result<usize> {
        if !std::ptr::eq(set.catalog(), self.catalog) {
            return Err(Error::CatalogMismatch);
        }
        let mut all = Vec::new();
        for pi in set.indices() {
            all.extend(self.genk_basis(pi)?);
        }
        Ok(rk_rank(self.field(), &all))
    }

    /// Classes whose defect embeds in some member of the closed set.
    pub fn closed_set_count(&self, set: &ClosedSet<'_>) -> usize {
        self.defects
            .entries
            .iter()
            .filter(|e| set.contains(e.catalog_index))
            .count()
    }

    /// `n[s][t][u]`: multiplicity of U in S ⊗ T, reduced mod p.
    fn structure_constants(&self) -> Result<&Vec<Vec<Vec<Fq>>>> {
        self.structure
            .get_or_init(|| {
                let data = self.data;
                let cyc = data.cyclotomic();
                let f = self.field();
                let n = data.len();
                let mut out = vec![vec![Vec::new(); n]; n];
                for s in 0..n {
                    for t in s..n {
                        let prod: Vec<CycValue> = (0..data.classes().len())
                            .map(|j| cyc.mul(data.phi().get(s, j), data.phi().get(t, j)))
                            .collect();
                        let c: Vec<Fq> = decompose_integral(&prod, data)?
                            .into_iter()
                            .map(|x| f.from_u64(x))
                            .collect();
                        out[s][t] = c.clone();
                        out[t][s] = c;
                    }
                }
                Ok(out)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Product in kR_k(G) induced by the tensor product.
    pub fn rk_multiply(&self, a: &RkElement, b: &RkElement) -> Result<RkElement> {
        let n = self.dim();
        if a.0.len() != n || b.0.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "elements of kR_k need {n} coefficients"
            )));
        }
        let f = self.field();
        let sc = self.structure_constants()?;
        let mut out = vec![Fq(0); n];
        for s in 0..n {
            if a.0[s].0 == 0 {
                continue;
            }
            for t in 0..n {
                let c = f.mul(&a.0[s], &b.0[t]);
                if c.0 == 0 {
                    continue;
                }
                for (o, k) in out.iter_mut().zip(&sc[s][t]) {
                    *o = f.add(o, &f.mul(&c, k));
                }
            }
        }
        Ok(RkElement(out))
    }
}

/// Compares kR_k and each S_P at L×Q with #classes(L) times their values at
/// Q, for a p'-group L and a p-group Q.
pub fn product_group_check(
    l: &PermGroup,
    q: &PermGroup,
    catalog: &PGroupCatalog,
    seed: u64,
) -> Result<ProductCheck> {
    let p = catalog.p();
    if (l.order() as u64).is_multiple_of(p) {
        return Err(Error::PreconditionViolated(format!(
            "|L| = {} is divisible by {p}",
            l.order()
        )));
    }
    if p_part(q.order() as u64, p) != q.order() as u64 {
        return Err(Error::PreconditionViolated(format!(
            "|Q| = {} is not a power of {p}",
            q.order()
        )));
    }
    let lq = PermGroup::direct_product(l, q)?;
    let data_lq = BrauerData::compute(&lq, p, seed)?;
    let data_q = BrauerData::compute(q, p, seed)?;
    let ev_lq = Evaluation::new(&data_lq, catalog, seed)?;
    let ev_q = Evaluation::new(&data_q, catalog, seed)?;
    let classes_l = l.class_count();
    let mut passed = ev_lq.dim() == classes_l * ev_q.dim();
    let mut sp = Vec::with_capacity(catalog.len());
    for i in 0..catalog.len() {
        let a = ev_lq.sp_dimension(i)?;
        let b = classes_l * ev_q.sp_dimension(i)?;
        passed &= a == b;
        sp.push((catalog.label(i).to_string(), a, b));
    }
    Ok(ProductCheck {
        classes_l,
        dim_q: ev_q.dim(),
        dim_product: ev_lq.dim(),
        sp,
        passed,
    })
}
