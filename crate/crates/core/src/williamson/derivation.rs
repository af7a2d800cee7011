use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::{CPoly, Monomial, Poly};

/// A linear vector field `sum_k (A x)_k d/dx_k` on `R^{2n}`, acting on polynomials
/// as a degree-preserving derivation.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    n: usize,
    matrix: Vec<Vec<BigRational>>,
    entries: Vec<(usize, usize, BigRational)>,
    label: String,
}

impl Derivation {
    pub fn from_matrix(n: usize, matrix: Vec<Vec<BigRational>>, label: impl Into<String>) -> Self {
        assert_eq!(matrix.len(), 2 * n);
        assert!(matrix.iter().all(|r| r.len() == 2 * n));
        let entries = matrix
            .iter()
            .enumerate()
            .flat_map(|(k, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, a)| !a.is_zero())
                    .map(move |(l, a)| (k, l, a.clone()))
            })
            .collect();
        Derivation {
            n,
            matrix,
            entries,
            label: label.into(),
        }
    }

    /// Builds the field from its nonzero entries `(k, l, a)`, meaning `X(x_k) += a x_l`.
    pub fn from_entries(n: usize, entries: &[(usize, usize, BigRational)], label: impl Into<String>) -> Self {
        let mut m = vec![vec![BigRational::zero(); 2 * n]; 2 * n];
        for (k, l, a) in entries {
            m[*k][*l] += a;
        }
        Self::from_matrix(n, m, label)
    }

    /// Hamiltonian field of a quadratic form: `X_q(x_k) = {q, x_k}`.
    pub fn hamiltonian(q: &Poly, label: impl Into<String>) -> Self {
        let n = q.n();
        let mut m = vec![vec![BigRational::zero(); 2 * n]; 2 * n];
        for (k, row) in m.iter_mut().enumerate() {
            let image = q.poisson(&Poly::var(n, k)).expect("same dimension");
            for (mono, c) in image.terms() {
                if let Some(l) = mono.max_var().filter(|_| mono.degree() == 1) {
                    row[l] = c.clone();
                }
            }
        }
        Self::from_matrix(n, m, label)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &[Vec<BigRational>] {
        &self.matrix
    }

    /// Nonzero entries `(k, l, a)` with `X(x_k) = sum_l a x_l`.
    pub fn entries(&self) -> &[(usize, usize, BigRational)] {
        &self.entries
    }

    /// The field with transposed matrix (the adjoint for the Fischer inner product).
    pub fn transpose(&self) -> Derivation {
        let mut t = vec![vec![BigRational::zero(); 2 * self.n]; 2 * self.n];
        for (k, l, a) in &self.entries {
            t[*l][*k] = a.clone();
        }
        Derivation::from_matrix(self.n, t, format!("{}^T", self.label))
    }

    /// Image of a single monomial, as `(monomial, coefficient)` pairs (not merged).
    pub fn apply_monomial(&self, m: &Monomial) -> Vec<(Monomial, BigRational)> {
        let mut out = Vec::new();
        for (k, l, a) in &self.entries {
            let e = m.exponent(*k);
            if e == 0 {
                continue;
            }
            let shifted = m.div_var(*k).expect("divisible").mul_var(*l, 1);
            out.push((shifted, a * BigRational::from_integer(e.into())));
        }
        out
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        assert_eq!(p.n(), self.n, "derivation applied across dimensions");
        let mut out = Poly::zero(self.n).with_degree_bound(p.degree_bound());
        for (m, c) in p.terms() {
            for (mm, a) in self.apply_monomial(m) {
                out.add_term(mm, a * c);
            }
        }
        out
    }

    pub fn apply_complex(&self, p: &CPoly) -> CPoly {
        CPoly {
            re: self.apply(&p.re),
            im: self.apply(&p.im),
        }
    }

    /// `[self, other] = self∘other − other∘self`, itself a linear field with matrix `BA − AB`.
    pub fn commutator(&self, other: &Derivation) -> Derivation {
        let n2 = 2 * self.n;
        let mut c = vec![vec![BigRational::zero(); n2]; n2];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, cij) in row.iter_mut().enumerate() {
                let mut acc = BigRational::zero();
                for k in 0..n2 {
                    acc += &other.matrix[i][k] * &self.matrix[k][j];
                    acc -= &self.matrix[i][k] * &other.matrix[k][j];
                }
                *cij = acc;
            }
        }
        Derivation::from_matrix(self.n, c, format!("[{},{}]", self.label, other.label))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn matrix_f64(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        self.matrix
            .iter()
            .map(|r| r.iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({}, n={}, {:?})", self.label, self.n, self.entries)
    }
}
