//! The model space `K_B = H² ⊖ B·H²` and the `H²`-orthogonal projection onto it.
//!
//! For zeros `a_1, …, a_d` the basis element
//! `e_j = sqrt(1 - |a_j|²)/(1 - conj(a_j) z) · Π_{i<j} (z - a_i)/(1 - conj(a_i) z)`
//! gives an orthonormal basis of `K_B`; repeated zeros need no special case.
//! Elements are rational with geometric tails `~ max|a_i|^n`, so every
//! basis is expanded `4·d + 32` degrees past the requested truncation. Zeros
//! with modulus above 0.9 need the caller to raise the degree further.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::blaschke::BlaschkeProduct;
use crate::linalg::CMatrix;
use crate::series::ComplexSeries;

/// Extra degrees carried past a requested truncation for `K_B` computations.
pub fn guard_degree(degree: usize) -> usize {
    4 * degree + 32
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpaceBasis {
    blaschke: BlaschkeProduct,
    elements: Vec<ComplexSeries>,
    truncation_degree: usize,
}

/// Orthonormal basis of `K_B`, expanded to degree `n + guard_degree(d)`.
pub fn tm_basis(b: &BlaschkeProduct, n: usize) -> ModelSpaceBasis {
    let degree = n.max(b.degree()) + guard_degree(b.degree());
    let len = degree + 1;
    let mut prefix = alloc::vec![Complex64::new(0.0, 0.0); len];
    prefix[0] = Complex64::new(1.0, 0.0);
    let mut elements = Vec::with_capacity(b.degree());
    for a in b.zeros() {
        let ac = a.conj();
        let scale = libm::sqrt(1.0 - a.norm_sqr());
        // prefix / (1 - conj(a) z)
        let mut e = prefix.clone();
        for n in 1..len {
            let prev = e[n - 1];
            e[n] += ac * prev;
        }
        // next prefix = (z - a) · e, before scaling
        let mut next = alloc::vec![Complex64::new(0.0, 0.0); len];
        next[0] = -a * e[0];
        for n in 1..len {
            next[n] = e[n - 1] - a * e[n];
        }
        for c in &mut e {
            *c *= scale;
        }
        elements.push(ComplexSeries::from_vec_unchecked(e));
        prefix = next;
    }
    ModelSpaceBasis {
        blaschke: b.clone(),
        elements,
        truncation_degree: degree,
    }
}

impl ModelSpaceBasis {
    pub fn blaschke(&self) -> &BlaschkeProduct {
        &self.blaschke
    }

    pub fn elements(&self) -> &[ComplexSeries] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn truncation_degree(&self) -> usize {
        self.truncation_degree
    }

    /// `⟨f, e_j⟩_{H²}` for each basis element.
    pub fn coordinates(&self, f: &ComplexSeries) -> Vec<Complex64> {
        self.elements
            .iter()
            .map(|e| {
                f.coeffs()
                    .iter()
                    .zip(e.coeffs())
                    .map(|(a, b)| a * b.conj())
                    .sum()
            })
            .collect()
    }

    /// `Σ_j c_j e_j` at the basis truncation.
    pub fn synthesize(&self, coords: &[Complex64]) -> ComplexSeries {
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); self.truncation_degree + 1];
        for (c, e) in coords.iter().zip(&self.elements) {
            for (o, x) in out.iter_mut().zip(e.coeffs()) {
                *o += c * x;
            }
        }
        ComplexSeries::from_vec_unchecked(out)
    }

    pub fn project(&self, f: &ComplexSeries) -> ComplexSeries {
        self.synthesize(&self.coordinates(f))
    }

    /// `H²` Gram matrix of the truncated basis elements.
    pub fn gram(&self) -> CMatrix {
        let d = self.dim();
        CMatrix::from_fn(d, d, |i, j| {
            self.elements[j]
                .coeffs()
                .iter()
                .zip(self.elements[i].coeffs())
                .map(|(a, b)| a * b.conj())
                .sum()
        })
    }
}

/// `H²`-orthogonal projection of `f` onto `K_B`, at the basis truncation.
pub fn project_kb(f: &ComplexSeries, basis: &ModelSpaceBasis) -> ComplexSeries {
    basis.project(f)
}
