//! Chevalley–Eilenberg complex of the abelian algebra `L0 = R^n` acting on
//! polynomials through `ℓ ↦ {q(ℓ), ·}`, for a model system with `r = n`.
//!
//! The differential keeps the `1/(k+1)` normalization:
//! `dφ(l_1..l_{k+1}) = 1/(k+1) Σ (−1)^{t+1} {q(l_t), φ(l_1..ľ_t..l_{k+1})}`.
//!
//! Values modulo the commutant `C_f` (written `O_f` in some presentations; both
//! name the polynomials commuting with every `q_i`) are represented by their
//! canonical non-kernel part, see [`reduce_mod_commutant`].

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;

use crate::poincare::{self, joint_kernel_projection, CocycleData, PoincareError};
use crate::poly::Poly;
use crate::williamson::ModelSystem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("deformation complex needs r = n, got r = {r}, n = {n}")]
    NotFullRank { r: usize, n: usize },
    #[error("expected a cochain of degree {expected}, got {got}")]
    Degree { expected: usize, got: usize },
    #[error("wrong number of values: {0}")]
    Shape(String),
    #[error("not a cocycle: {failing} pair(s) with nonzero residual")]
    NotCocycle { failing: usize },
    #[error(transparent)]
    Poincare(#[from] PoincareError),
    #[error("witness does not reassemble the cocycle")]
    Reassembly,
}

/// Alternating `q`-linear map `L0^{∧q} → polynomials`, stored on increasing index tuples.
#[derive(Debug, Clone)]
pub struct Cochain {
    degree: usize,
    system: Arc<ModelSystem>,
    values: BTreeMap<Vec<usize>, Poly>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.values == other.values
    }
}

fn increasing_tuples(r: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(i + 1, r, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, r, q, &mut Vec::new(), &mut out);
    out
}

fn check_full_rank(system: &ModelSystem) -> Result<(), CohomologyError> {
    if system.r() != system.n() {
        return Err(CohomologyError::NotFullRank {
            r: system.r(),
            n: system.n(),
        });
    }
    Ok(())
}

impl Cochain {
    pub fn from_fn(
        system: Arc<ModelSystem>,
        degree: usize,
        mut value: impl FnMut(&[usize]) -> Poly,
    ) -> Result<Self, CohomologyError> {
        check_full_rank(&system)?;
        let values = increasing_tuples(system.r(), degree)
            .into_iter()
            .map(|t| {
                let v = value(&t);
                (t, v)
            })
            .collect();
        Ok(Cochain {
            degree,
            system,
            values,
        })
    }

    pub fn zero(system: Arc<ModelSystem>, degree: usize) -> Result<Self, CohomologyError> {
        let n = system.n();
        Self::from_fn(system, degree, |_| Poly::zero(n))
    }

    /// A 0-cochain is a single polynomial.
    pub fn zero_form(system: Arc<ModelSystem>, g: Poly) -> Result<Self, CohomologyError> {
        Self::from_fn(system, 0, |_| g.clone())
    }

    /// The 1-cochain `e_i ↦ values[i]`.
    pub fn one_form(system: Arc<ModelSystem>, values: Vec<Poly>) -> Result<Self, CohomologyError> {
        if values.len() != system.r() {
            return Err(CohomologyError::Shape(format!(
                "{} values for r = {}",
                values.len(),
                system.r()
            )));
        }
        Self::from_fn(system, 1, |t| values[t[0]].clone())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn system(&self) -> &ModelSystem {
        &self.system
    }

    /// Value on an arbitrary index tuple, using antisymmetry.
    pub fn value(&self, tuple: &[usize]) -> Poly {
        let n = self.system.n();
        let mut t = tuple.to_vec();
        let mut sign = 1;
        // bubble sort, counting transpositions
        for i in 0..t.len() {
            for j in 0..t.len() - 1 - i {
                if t[j] > t[j + 1] {
                    t.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if t.windows(2).any(|w| w[0] == w[1]) {
            return Poly::zero(n);
        }
        let v = self.values.get(&t).cloned().unwrap_or_else(|| Poly::zero(n));
        if sign < 0 {
            -v
        } else {
            v
        }
    }

    /// Values of a 1-cochain as `(α(e_1), …, α(e_r))`.
    pub fn one_form_values(&self) -> Result<Vec<Poly>, CohomologyError> {
        if self.degree != 1 {
            return Err(CohomologyError::Degree {
                expected: 1,
                got: self.degree,
            });
        }
        Ok((0..self.system.r()).map(|i| self.value(&[i])).collect())
    }

    pub fn values(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        let values = self
            .values
            .iter()
            .map(|(t, v)| (t.clone(), v + &other.value(t)))
            .collect();
        Cochain {
            degree: self.degree,
            system: self.system.clone(),
            values,
        }
    }

    /// Chevalley–Eilenberg differential with the `1/(k+1)` factor.
    pub fn differential(&self) -> Cochain {
        let q = self.system.q();
        let k = self.degree;
        let scale = BigRational::new(1.into(), ((k + 1) as i64).into());
        let values = increasing_tuples(self.system.r(), k + 1)
            .into_iter()
            .map(|t| {
                let mut acc = Poly::zero(self.system.n());
                for (pos, &l) in t.iter().enumerate() {
                    let rest: Vec<usize> = t.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &v)| v).collect();
                    let term = q[l].poisson(&self.value(&rest)).expect("same dimension");
                    acc = if pos % 2 == 0 { acc + term } else { acc - term };
                }
                (t, acc.scale(&scale))
            })
            .collect();
        Cochain {
            degree: k + 1,
            system: self.system.clone(),
            values,
        }
    }
}

/// `{h, q_i} = −X_i(h)`: the bracket convention `X_q(g) = {q, g}` turns the
/// coboundary of `h` into minus the field action. Every conversion between the
/// bracket form and the field form goes through this pair of functions.
pub fn bracket_with_basis(h: &Poly, i: usize, system: &ModelSystem) -> Poly {
    h.poisson(&system.q()[i]).expect("same dimension")
}

/// A potential `G` with `g_i = f_i + X_i(G)` gives the coboundary witness `h = −G`.
fn witness_from_potential(potential: Poly) -> Poly {
    -potential
}

/// The coboundary `e_i ↦ {h, q_i}` (taken modulo the commutant by the caller).
pub fn coboundary_of(h: &Poly, system: Arc<ModelSystem>) -> Result<Cochain, CohomologyError> {
    let sys = system.clone();
    Cochain::from_fn(system, 1, |t| bracket_with_basis(h, t[0], &sys))
}

/// Residuals `{g_i, q_j} − {g_j, q_i}` for `i < j`.
#[derive(Debug, Clone)]
pub struct CocycleCheck {
    pub residuals: Vec<(usize, usize, Poly)>,
}

impl CocycleCheck {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|(_, _, p)| p.is_zero())
    }

    pub fn failing(&self) -> usize {
        self.residuals.iter().filter(|(_, _, p)| !p.is_zero()).count()
    }
}

pub fn is_cocycle(alpha: &Cochain) -> Result<CocycleCheck, CohomologyError> {
    let g = alpha.one_form_values()?;
    let sys = alpha.system();
    let mut residuals = Vec::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let res = &bracket_with_basis(&g[i], j, sys) - &bracket_with_basis(&g[j], i, sys);
            residuals.push((i, j, res));
        }
    }
    Ok(CocycleCheck { residuals })
}

/// Replaces each value by its component outside the commutant.
pub fn reduce_mod_commutant(alpha: &Cochain) -> Cochain {
    let values = alpha
        .values
        .iter()
        .map(|(t, v)| (t.clone(), v - &joint_kernel_projection(v, &alpha.system)))
        .collect();
    Cochain {
        degree: alpha.degree,
        system: alpha.system.clone(),
        values,
    }
}

/// `alpha = coboundary_of(h) + (e_i ↦ f_i)` with every `f_i` in the commutant.
#[derive(Debug, Clone, PartialEq)]
pub struct H1Witness {
    pub h: Poly,
    pub f: Vec<Poly>,
}

impl H1Witness {
    /// `coboundary_of(h) + (e_i ↦ f_i)`.
    pub fn reassemble(&self, system: Arc<ModelSystem>) -> Result<Cochain, CohomologyError> {
        let cob = coboundary_of(&self.h, system.clone())?;
        let kernel = Cochain::one_form(system, self.f.clone())?;
        Ok(cob.add(&kernel))
    }
}

/// Exhibits a degree-1 cocycle as a coboundary modulo the commutant.
pub fn h1_witness(alpha: &Cochain) -> Result<H1Witness, CohomologyError> {
    let check = is_cocycle(alpha)?;
    if !check.passed() {
        return Err(CohomologyError::NotCocycle {
            failing: check.failing(),
        });
    }
    let data = CocycleData::new(alpha.system().clone(), alpha.one_form_values()?)?;
    let dec = poincare::solve(&data)?;
    let witness = H1Witness {
        h: witness_from_potential(dec.potential),
        f: dec.f,
    };
    if witness.reassemble(alpha.system.clone())? != *alpha {
        return Err(CohomologyError::Reassembly);
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use crate::williamson::WilliamsonType;

    fn system(t: (usize, usize, usize, usize)) -> Arc<ModelSystem> {
        Arc::new(ModelSystem::standard(WilliamsonType::new(t.0, t.1, t.2, t.3).unwrap()).unwrap())
    }

    #[test]
    fn differential_of_first_integral_vanishes() {
        let sys = system((1, 1, 0, 2));
        let c = Cochain::zero_form(sys.clone(), sys.q()[0].clone()).unwrap();
        assert!(c.differential().is_zero());
    }

    #[test]
    fn differential_of_linear_form() {
        let sys = system((1, 0, 0, 1));
        let d = Cochain::zero_form(sys, Poly::x(1, 1)).unwrap().differential();
        assert_eq!(d.value(&[0]), Poly::y(1, 1).scale(&int(-2)));
    }

    #[test]
    fn coboundary_sign() {
        let sys = system((1, 0, 0, 1));
        let c = coboundary_of(&Poly::x(1, 1), sys.clone()).unwrap();
        assert_eq!(c.value(&[0]), Poly::y(1, 1).scale(&int(2)));
        // {h, q_i} = −X_i(h)
        assert_eq!(c.value(&[0]), -&sys.field(0).apply(&Poly::x(1, 1)));
    }

    #[test]
    fn antisymmetric_values() {
        let sys = system((2, 0, 0, 2));
        let c = Cochain::from_fn(sys, 2, |_| Poly::x(2, 1)).unwrap();
        assert_eq!(c.value(&[1, 0]), -&Poly::x(2, 1));
        assert!(c.value(&[1, 1]).is_zero());
    }

    #[test]
    fn requires_full_rank() {
        let sys = system((1, 0, 0, 2));
        assert!(matches!(
            Cochain::zero(sys, 1),
            Err(CohomologyError::NotFullRank { r: 1, n: 2 })
        ));
    }

    #[test]
    fn kernel_cochain_witness() {
        let sys = system((1, 0, 1, 3));
        let alpha = Cochain::one_form(sys.clone(), sys.q().to_vec()).unwrap();
        let w = h1_witness(&alpha).unwrap();
        assert!(w.h.is_zero());
        assert_eq!(w.f, sys.q().to_vec());
    }

    #[test]
    fn non_cocycle_rejected() {
        let sys = system((1, 1, 0, 2));
        let alpha = Cochain::one_form(sys, vec![Poly::x(2, 2), Poly::zero(2)]).unwrap();
        let check = is_cocycle(&alpha).unwrap();
        assert!(!check.passed());
        assert!(matches!(h1_witness(&alpha), Err(CohomologyError::NotCocycle { .. })));
    }

    #[test]
    fn mixed_coboundary_example() {
        let sys = system((1, 1, 0, 2));
        let h = &Poly::x(2, 1) * &Poly::x(2, 2);
        let alpha = coboundary_of(&h, sys.clone()).unwrap();
        // values are minus the forward-generated g_i = X_i(h)
        assert_eq!(alpha.value(&[0]), (&Poly::y(2, 1) * &Poly::x(2, 2)).scale(&int(2)));
        assert_eq!(alpha.value(&[1]), h.clone());
        let w = h1_witness(&alpha).unwrap();
        assert_eq!(w.h, h);
        assert!(w.f.iter().all(Poly::is_zero));
    }
}
