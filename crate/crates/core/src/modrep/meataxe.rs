//! Splitting modules over F_q into composition factors.
//!
//! Modules are right modules on row vectors: `v · M_g`, with
//! `M_{gh} = M_g M_h`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{
    char_poly, factor_poly, kernel, Field, Fq, GaloisField, Matrix, Poly, PolyRing, Subspace,
};
use crate::group::PermGroup;

/// Random algebra elements tried per split attempt before giving up.
pub const RETRY_BUDGET: usize = 64;

/// A module given by one matrix per group generator.
#[derive(Clone, Debug)]
pub struct Module {
    field: Arc<GaloisField>,
    dim: usize,
    gens: Vec<Matrix<Fq>>,
}

/// A linear combination of generator words, evaluated in any module for the
/// same generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub terms: Vec<(Fq, Vec<usize>)>,
}

impl AlgebraElement {
    fn random(field: &GaloisField, generators: usize, rng: &mut ChaCha8Rng) -> Self {
        let q = field.order() as u32;
        let terms = (0..4)
            .map(|_| {
                let len = if generators == 0 { 0 } else { rng.gen_range(0..=3) };
                let word = (0..len).map(|_| rng.gen_range(0..generators)).collect();
                (Fq(rng.gen_range(1..q)), word)
            })
            .collect();
        AlgebraElement { terms }
    }
}

impl Module {
    pub fn new(field: Arc<GaloisField>, dim: usize, gens: Vec<Matrix<Fq>>) -> Result<Self> {
        if gens.iter().any(|g| g.rows() != dim || g.cols() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "generator matrices must be {dim}x{dim}"
            )));
        }
        Ok(Module { field, dim, gens })
    }

    /// The right regular module: basis e_h, e_h · g = e_{hg}.
    pub fn regular(group: &PermGroup, field: Arc<GaloisField>) -> Self {
        let n = group.order();
        let gens = group
            .generators()
            .iter()
            .map(|g| {
                let gi = group.index_of(g).expect("generator lies in the group");
                let mut m = Matrix::zeros(&*field, n, n);
                for h in 0..n {
                    m.set(h, group.mul(h, gi), Fq(1));
                }
                m
            })
            .collect();
        Module {
            field,
            dim: n,
            gens,
        }
    }

    /// The trivial module of dimension one.
    pub fn trivial(group: &PermGroup, field: Arc<GaloisField>) -> Self {
        let gens = vec![Matrix::identity(&*field, 1); group.generators().len()];
        Module { field, dim: 1, gens }
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix<Fq>] {
        &self.gens
    }

    pub fn word_matrix(&self, word: &[usize]) -> Matrix<Fq> {
        let f = &*self.field;
        word.iter()
            .fold(Matrix::identity(f, self.dim), |acc, &g| acc.mul(f, &self.gens[g]))
    }

    /// Matrix of group element `i`, built from its generator word.
    pub fn element_matrix(&self, group: &PermGroup, i: usize) -> Matrix<Fq> {
        self.word_matrix(&group.word(i))
    }

    /// Matrices of every group element, indexed like `group.elements()`.
    pub fn all_element_matrices(&self, group: &PermGroup) -> Vec<Matrix<Fq>> {
        let f = &*self.field;
        let mut out: Vec<Option<Matrix<Fq>>> = vec![None; group.order()];
        for &i in group.bfs_order() {
            out[i] = Some(match group.tree_parent(i) {
                None => Matrix::identity(f, self.dim),
                Some((par, g)) => out[par].as_ref().unwrap().mul(f, &self.gens[g]),
            });
        }
        out.into_iter().map(Option::unwrap).collect()
    }

    pub fn evaluate(&self, a: &AlgebraElement) -> Matrix<Fq> {
        let f = &*self.field;
        a.terms.iter().fold(Matrix::zeros(f, self.dim, self.dim), |acc, (c, w)| {
            acc.add(f, &self.word_matrix(w).scale(f, c))
        })
    }

    /// Smallest submodule containing the given vectors.
    pub fn spin(&self, seeds: &[Vec<Fq>]) -> Subspace<Fq> {
        spin_with(&self.field, self.dim, &self.gens, seeds)
    }

    /// Action on a submodule, in the submodule's basis.
    pub fn submodule(&self, sub: &Subspace<Fq>) -> Module {
        let f = &*self.field;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                Matrix::from_rows(
                    sub.basis()
                        .iter()
                        .map(|b| {
                            sub.coordinates(f, &g.apply_row(f, b))
                                .expect("subspace is a submodule")
                        })
                        .collect(),
                )
            })
            .collect();
        Module {
            field: self.field.clone(),
            dim: sub.dim(),
            gens,
        }
    }

    /// Action on the quotient by a submodule, in the basis of unit vectors
    /// at the non-pivot columns.
    pub fn quotient(&self, sub: &Subspace<Fq>) -> Module {
        let f = &*self.field;
        let free: Vec<usize> = (0..self.dim).filter(|c| !sub.pivots().contains(c)).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                Matrix::from_rows(
                    free.iter()
                        .map(|&c| {
                            let r = sub.reduce(f, g.row(c));
                            free.iter().map(|&k| r[k]).collect()
                        })
                        .collect(),
                )
            })
            .collect();
        Module {
            field: self.field.clone(),
            dim: free.len(),
            gens,
        }
    }

    /// Dimension of the algebra of matrices commuting with every generator.
    pub fn endomorphism_dim(&self) -> usize {
        let f = &*self.field;
        let n = self.dim;
        let mut eqs = Vec::new();
        for a in &self.gens {
            // (A X - X A)[r][c]
            for r in 0..n {
                for c in 0..n {
                    let mut row = vec![Fq(0); n * n];
                    for k in 0..n {
                        let x = &mut row[k * n + c];
                        *x = f.add(x, a.get(r, k));
                        let y = &mut row[r * n + k];
                        *y = f.sub(y, a.get(k, c));
                    }
                    eqs.push(row);
                }
            }
        }
        if eqs.is_empty() {
            return n * n;
        }
        kernel(f, &Matrix::from_rows(eqs)).len()
    }

    /// The dual module, acting by transposes.
    fn transposed_generators(&self) -> Vec<Matrix<Fq>> {
        self.gens.iter().map(Matrix::transpose).collect()
    }
}

fn spin_with(f: &GaloisField, dim: usize, gens: &[Matrix<Fq>], seeds: &[Vec<Fq>]) -> Subspace<Fq> {
    let mut sub = Subspace::new(dim);
    for s in seeds {
        sub.insert(f, s);
    }
    let mut i = 0;
    while i < sub.dim() {
        let b = sub.basis()[i].clone();
        for g in gens {
            sub.insert(f, &g.apply_row(f, &b));
        }
        i += 1;
    }
    sub
}

fn poly_at(f: &GaloisField, poly: &Poly, a: &Matrix<Fq>) -> Matrix<Fq> {
    let n = a.rows();
    let mut acc = Matrix::zeros(f, n, n);
    for c in poly.coeffs().iter().rev() {
        acc = acc.mul(f, a);
        for i in 0..n {
            let v = f.add(acc.get(i, i), c);
            acc.set(i, i, v);
        }
    }
    acc
}

/// Outcome of one meataxe pass on a module.
pub enum Split {
    Irreducible,
    Reducible(Subspace<Fq>),
}

/// Finds a proper submodule or certifies irreducibility with Norton's test.
pub fn split(module: &Module, rng: &mut ChaCha8Rng) -> Result<Split> {
    let n = module.dim;
    if n <= 1 {
        return Ok(Split::Irreducible);
    }
    let f = &*module.field;
    for _ in 0..RETRY_BUDGET {
        let a = module.evaluate(&AlgebraElement::random(f, module.gens.len(), rng));
        let cp = char_poly(f, &a);
        for (fac, _) in factor_poly(f, &cp, rng.gen()) {
            let fa = poly_at(f, &fac, &a);
            // row vectors v with v · f(a) = 0
            let ker = kernel(f, &fa.transpose());
            for v in &ker {
                let sub = module.spin(std::slice::from_ref(v));
                if sub.dim() < n {
                    return Ok(Split::Reducible(sub));
                }
            }
            if ker.len() == fac.degree().unwrap_or(0) {
                let dual_ker = kernel(f, &fa);
                let dual = spin_with(f, n, &module.transposed_generators(), &dual_ker[..1]);
                if dual.dim() == n {
                    return Ok(Split::Irreducible);
                }
                // the annihilator of a proper dual submodule is a proper submodule
                let ann = kernel(f, &Matrix::from_rows(dual.basis().to_vec()));
                let mut sub = Subspace::new(n);
                for v in &ann {
                    sub.insert(f, v);
                }
                return Ok(Split::Reducible(sub));
            }
        }
    }
    Err(Error::ChopStalled {
        attempts: RETRY_BUDGET,
    })
}

/// A basis-independent fingerprint of a simple module: an algebra element
/// with a one-dimensional eigenspace and the spinning script that turns an
/// eigenvector into a basis.
#[derive(Clone, Debug)]
struct StandardBasis {
    element: AlgebraElement,
    eigenvalue: Fq,
    script: Vec<(usize, usize)>,
    /// Generator matrices in the standard basis.
    matrices: Vec<Matrix<Fq>>,
}

fn standard_matrices(
    module: &Module,
    start: Vec<Fq>,
    script: &[(usize, usize)],
) -> Option<Vec<Matrix<Fq>>> {
    let f = &*module.field;
    let mut basis = vec![start];
    for &(i, g) in script {
        let v = module.gens[g].apply_row(f, &basis[i]);
        basis.push(v);
    }
    if basis.len() != module.dim {
        return None;
    }
    let b = Matrix::from_rows(basis);
    let inv = crate::exactalg::inverse(f, &b)?;
    Some(
        module
            .gens
            .iter()
            .map(|g| b.mul(f, g).mul(f, &inv))
            .collect(),
    )
}

fn eigenvector(module: &Module, a: &AlgebraElement, lambda: Fq) -> Option<Vec<Fq>> {
    let f = &*module.field;
    let mut m = module.evaluate(a);
    for i in 0..module.dim {
        let v = f.sub(m.get(i, i), &lambda);
        m.set(i, i, v);
    }
    let ker = kernel(f, &m.transpose());
    (ker.len() == 1).then(|| ker.into_iter().next().unwrap())
}

impl StandardBasis {
    fn find(module: &Module, rng: &mut ChaCha8Rng) -> Result<Self> {
        let f = &*module.field;
        for _ in 0..RETRY_BUDGET * 4 {
            let element = AlgebraElement::random(f, module.gens.len(), rng);
            let cp = char_poly(f, &module.evaluate(&element));
            let ring = PolyRing::new(f);
            for (fac, _) in factor_poly(f, &cp, rng.gen()) {
                if fac.degree() != Some(1) {
                    continue;
                }
                let eigenvalue = ring.field().neg(&fac.coeff(0));
                let Some(v) = eigenvector(module, &element, eigenvalue) else {
                    continue;
                };
                let mut sub = Subspace::new(module.dim);
                sub.insert(f, &v);
                let mut basis = vec![v];
                let mut script = Vec::new();
                let mut i = 0;
                while i < basis.len() {
                    for (g, m) in module.gens.iter().enumerate() {
                        let w = m.apply_row(f, &basis[i]);
                        if sub.insert(f, &w) {
                            basis.push(w);
                            script.push((i, g));
                        }
                    }
                    i += 1;
                }
                if basis.len() < module.dim {
                    // not irreducible; callers only pass simples
                    continue;
                }
                let matrices = standard_matrices(module, basis[0].clone(), &script)
                    .expect("spun basis is invertible");
                return Ok(StandardBasis {
                    element,
                    eigenvalue,
                    script,
                    matrices,
                });
            }
        }
        Err(Error::ChopStalled {
            attempts: RETRY_BUDGET * 4,
        })
    }

    fn matches(&self, other: &Module) -> bool {
        let Some(v) = eigenvector(other, &self.element, self.eigenvalue) else {
            return false;
        };
        standard_matrices(other, v, &self.script).is_some_and(|m| m == self.matrices)
    }
}

/// A simple module of kG over the splitting field.
#[derive(Clone, Debug)]
pub struct SimpleModule {
    pub module: Module,
    /// Number of copies of the module in the head of the regular module,
    /// dim S / dim End(S).
    pub multiplicity_in_regular: usize,
    /// Number of composition factors of the regular module isomorphic to it.
    pub composition_multiplicity: usize,
    pub endomorphism_dim: usize,
    fingerprint: StandardBasis,
}

impl SimpleModule {
    pub fn dimension(&self) -> usize {
        self.module.dim
    }

    pub fn action(&self) -> &[Matrix<Fq>] {
        &self.module.gens
    }

    pub fn is_isomorphic_to(&self, other: &Module) -> bool {
        self.module.dim == other.dim && self.fingerprint.matches(other)
    }
}

/// All composition factors of `module` up to isomorphism, in order of
/// discovery, with their multiplicities.
pub fn composition_factors(module: &Module, seed: u64) -> Result<Vec<SimpleModule>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = vec![module.clone()];
    let mut simples: Vec<SimpleModule> = Vec::new();
    while let Some(m) = work.pop() {
        if m.dim == 0 {
            continue;
        }
        match split(&m, &mut rng)? {
            Split::Reducible(sub) => {
                work.push(m.quotient(&sub));
                work.push(m.submodule(&sub));
            }
            Split::Irreducible => {
                if let Some(s) = simples.iter_mut().find(|s| s.is_isomorphic_to(&m)) {
                    s.composition_multiplicity += 1;
                    continue;
                }
                let fingerprint = StandardBasis::find(&m, &mut rng)?;
                let endomorphism_dim = m.endomorphism_dim();
                simples.push(SimpleModule {
                    multiplicity_in_regular: m.dim / endomorphism_dim,
                    composition_multiplicity: 1,
                    endomorphism_dim,
                    fingerprint,
                    module: m,
                });
            }
        }
    }
    Ok(simples)
}

/// Least common multiple of the orders of the p-regular elements.
pub fn regular_exponent(group: &PermGroup, p: u64) -> u64 {
    group
        .conjugacy_classes(p)
        .iter()
        .filter(|c| c.p_regular)
        .fold(1u64, |acc, c| num_integer::lcm(acc, c.element_order as u64))
}

/// The splitting field used for kG: F_q with q = p^d, d the order of p
/// modulo the p'-exponent of G.
pub fn splitting_field(group: &PermGroup, p: u64) -> Result<GaloisField> {
    GaloisField::splitting(p, regular_exponent(group, p))
}

/// Simple kG-modules from a composition series of the regular module.
pub fn chop_regular(group: &PermGroup, p: u64, seed: u64) -> Result<Vec<SimpleModule>> {
    let field = Arc::new(splitting_field(group, p)?);
    chop_regular_over(group, field, seed)
}

pub fn chop_regular_over(
    group: &PermGroup,
    field: Arc<GaloisField>,
    seed: u64,
) -> Result<Vec<SimpleModule>> {
    composition_factors(&Module::regular(group, field), seed)
}
