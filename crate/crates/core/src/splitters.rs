//! Per-component decompositions `g = kernel_part + X(potential)`.
//!
//! Each split diagonalises the component's field(s) on monomials (complex
//! eigen-coordinates for elliptic and focus-focus components, real monomials for
//! hyperbolic ones), keeps the zero-eigenvalue part and divides the rest by its
//! eigenvalue. On polynomials this is exact and total. The smooth-category flat
//! corrections have nothing to act on here: a polynomial flat along a coordinate
//! subspace is identically zero, so the kernel part is unique.
//!
//! Potentials carry no zero-eigenvalue component, which makes every split a
//! deterministic linear map.

use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::{GaussRat, Monomial, Poly};
use crate::williamson::{focus_fields, from_complex, monomial_eigenvalue, to_complex, Component};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("focus-focus hypothesis X_i(g2) = X_(i+1)(g1) fails; residual {residual}")]
    CommutationViolated { residual: String },
    #[error("internal consistency failure: {0}")]
    Defect(String),
}

/// `input = kernel_part + X(potential)` with `X(kernel_part) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub kernel_part: Poly,
    pub potential: Poly,
}

/// `g1 = f1 + X_i(F)`, `g2 = f2 + X_{i+1}(F)`, both fields annihilating `f1` and `f2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FocusSplitResult {
    pub f1: Poly,
    pub f2: Poly,
    pub potential: Poly,
}

/// Splits in the complex frame of `comp` according to the eigenvalue chosen by `pick`.
fn split_in_frame(g: &Poly, comp: Component, pick: impl Fn(&[GaussRat]) -> GaussRat) -> SplitResult {
    let n = g.n();
    let c = to_complex(g, &[comp]);
    let mut kernel = Vec::new();
    let mut potential = Vec::new();
    for (m, coeff) in c.terms() {
        let lam = pick(&monomial_eigenvalue(&comp, &m));
        if lam.is_zero() {
            kernel.push((m, coeff));
        } else {
            potential.push((m, coeff / lam));
        }
    }
    let back = |terms: Vec<(Monomial, GaussRat)>| {
        let cp = crate::poly::CPoly::from_terms(n, terms);
        from_complex(&cp, &[comp])
            .into_real()
            .expect("split of a real polynomial is real")
            .with_degree_bound(g.degree_bound())
    };
    SplitResult {
        kernel_part: back(kernel),
        potential: back(potential),
    }
}

/// Elliptic split on coordinate pair `pos`: `z^a z̄^b` with `a = b` is kept, every
/// other monomial `m` contributes `m / (2i(a − b))` to the potential.
pub fn elliptic_split(g: &Poly, pos: usize) -> SplitResult {
    assert!(pos < g.n(), "pair {pos} out of range");
    split_in_frame(g, Component::elliptic(pos), |l| l[0].clone())
}

/// Diagonal part `sum_k c_k (x y)^k` of `g` in pair `pos`; `X(f) = g` has a
/// polynomial solution iff this vanishes.
pub fn hyperbolic_obstruction(g: &Poly, pos: usize) -> Poly {
    assert!(pos < g.n(), "pair {pos} out of range");
    let (x, y) = (2 * pos, 2 * pos + 1);
    g.filter_terms(|m, _| m.exponent(x) == m.exponent(y))
}

/// Hyperbolic split on pair `pos`: the diagonal part is kept, `x^j y^k` with
/// `j != k` is divided by `k − j`.
pub fn hyperbolic_split(g: &Poly, pos: usize) -> SplitResult {
    assert!(pos < g.n(), "pair {pos} out of range");
    let (x, y) = (2 * pos, 2 * pos + 1);
    let kernel_part = hyperbolic_obstruction(g, pos);
    let mut potential = Poly::zero(g.n()).with_degree_bound(g.degree_bound());
    for (m, c) in g.terms() {
        let lam = i64::from(m.exponent(y)) - i64::from(m.exponent(x));
        if lam != 0 {
            potential.add_term(m.clone(), c / BigRational::from_integer(lam.into()));
        }
    }
    SplitResult {
        kernel_part,
        potential,
    }
}

/// S¹-average along the second field `X_{i+1}` of the focus pair at `pos`:
/// `g2 = f2 + X_{i+1}(F2)` with `f2` the zero-eigenvalue part.
pub fn focus_average(g2: &Poly, pos: usize) -> (Poly, Poly) {
    assert!(pos + 1 < g2.n(), "focus pair at {pos} out of range");
    let r = split_in_frame(g2, Component::focus(pos), |l| l[1].clone());
    (r.kernel_part, r.potential)
}

/// Focus-focus split of `(g1, g2)` for the pair at `pos`.
///
/// Step one averages `g2` over the S¹-action, step two solves the hyperbolic part
/// `X_i(F1) = g1 − X_i(F2) − f1` on S¹-invariant monomials; `F = F1 + F2`.
pub fn focus_split(g1: &Poly, g2: &Poly, pos: usize) -> Result<FocusSplitResult, SplitError> {
    assert!(pos + 1 < g1.n(), "focus pair at {pos} out of range");
    let n = g1.n();
    let (xa, xb) = focus_fields(n, pos);
    let residual = &xa.apply(g2) - &xb.apply(g1);
    if !residual.is_zero() {
        return Err(SplitError::CommutationViolated {
            residual: residual.render(),
        });
    }

    let (f2, f2_potential) = focus_average(g2, pos);
    let g1_tilde = g1 - &xa.apply(&f2_potential);
    // In the smooth setting these two are only flat along S_i; for polynomials
    // they must vanish outright.
    if !xb.apply(&g1_tilde).is_zero() {
        return Err(SplitError::Defect("g1 - X_i(F2) is not S1-invariant".into()));
    }
    if !xa.apply(&f2).is_zero() {
        return Err(SplitError::Defect("X_i(f2) does not vanish".into()));
    }

    // X_i is diagonal on real monomials with eigenvalue deg_y − deg_x in the pair.
    let (x1, y1, x2, y2) = (2 * pos, 2 * pos + 1, 2 * pos + 2, 2 * pos + 3);
    let weight = |m: &Monomial| {
        i64::from(m.exponent(y1) + m.exponent(y2)) - i64::from(m.exponent(x1) + m.exponent(x2))
    };
    let f1 = g1_tilde.filter_terms(|m, _| weight(m) == 0);
    let mut f1_potential = Poly::zero(n).with_degree_bound(g1.degree_bound());
    for (m, c) in g1_tilde.terms() {
        let lam = weight(m);
        if lam != 0 {
            f1_potential.add_term(m.clone(), c / BigRational::from_integer(lam.into()));
        }
    }
    if !xb.apply(&f1_potential).is_zero() || !xb.apply(&f1).is_zero() {
        return Err(SplitError::Defect("hyperbolic step broke S1-invariance".into()));
    }
    Ok(FocusSplitResult {
        f1,
        f2,
        potential: f1_potential + f2_potential,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use crate::williamson::{elliptic_field, elliptic_quadratic, focus_quadratics, hyperbolic_field};

    #[test]
    fn elliptic_kernel_element() {
        let q = elliptic_quadratic(1, 0);
        let s = elliptic_split(&q, 0);
        assert_eq!(s.kernel_part, q);
        assert!(s.potential.is_zero());
    }

    #[test]
    fn elliptic_linear_form() {
        let s = elliptic_split(&Poly::x(1, 1), 0);
        assert!(s.kernel_part.is_zero());
        assert_eq!(s.potential, Poly::y(1, 1).scale(&rat(1, 2)));
        assert_eq!(elliptic_field(1, 0).apply(&s.potential), Poly::x(1, 1));
    }

    #[test]
    fn elliptic_with_spectator() {
        let g = &elliptic_quadratic(2, 0) * &Poly::x(2, 2);
        assert!(elliptic_field(2, 0).apply(&g).is_zero());
        let s = elliptic_split(&g, 0);
        assert_eq!(s.kernel_part, g);
        assert!(s.potential.is_zero());
    }

    #[test]
    fn elliptic_square() {
        let s = elliptic_split(&Poly::x(1, 1).pow(2), 0);
        assert_eq!(s.kernel_part, elliptic_quadratic(1, 0).scale(&rat(1, 2)));
    }

    #[test]
    fn hyperbolic_obstruction_examples() {
        let xy = &Poly::x(1, 1) * &Poly::y(1, 1);
        assert_eq!(hyperbolic_obstruction(&xy, 0), xy);
        assert!(hyperbolic_obstruction(&Poly::x(1, 1).pow(2), 0).is_zero());
        let g = &xy.pow(2) + &Poly::x(1, 1);
        assert_eq!(hyperbolic_obstruction(&g, 0), xy.pow(2));
    }

    #[test]
    fn hyperbolic_examples() {
        let xy = &Poly::x(2, 1) * &Poly::y(2, 1);
        let g = &xy * &(&Poly::x(2, 2) + &Poly::constant(2, int(3)));
        let s = hyperbolic_split(&g, 0);
        assert_eq!(s.kernel_part, g);
        assert!(s.potential.is_zero());

        let s = hyperbolic_split(&Poly::x(1, 1).pow(2), 0);
        assert!(s.kernel_part.is_zero());
        assert_eq!(s.potential, Poly::x(1, 1).pow(2).scale(&rat(-1, 2)));

        let s = hyperbolic_split(&(&Poly::x(1, 1) + &Poly::y(1, 1)), 0);
        assert!(s.kernel_part.is_zero());
        assert_eq!(s.potential, &Poly::y(1, 1) - &Poly::x(1, 1));
        assert_eq!(hyperbolic_field(1, 0).apply(&s.potential), &Poly::x(1, 1) + &Poly::y(1, 1));
    }

    #[test]
    fn focus_average_examples() {
        let (_, qb) = focus_quadratics(2, 0);
        let (f2, pot) = focus_average(&qb, 0);
        assert_eq!(f2, qb);
        assert!(pot.is_zero());

        let (f2, pot) = focus_average(&Poly::x(2, 2), 0);
        assert!(f2.is_zero());
        assert_eq!(focus_fields(2, 0).1.apply(&pot), Poly::x(2, 2));

        let (f2, pot) = focus_average(&Poly::zero(2), 0);
        assert!(f2.is_zero() && pot.is_zero());
    }

    #[test]
    fn focus_split_examples() {
        let (qa, qb) = focus_quadratics(2, 0);
        let r = focus_split(&qa, &qb, 0).unwrap();
        assert_eq!((r.f1, r.f2), (qa, qb));
        assert!(r.potential.is_zero());

        let r = focus_split(&Poly::x(2, 1), &-&Poly::x(2, 2), 0).unwrap();
        assert!(r.f1.is_zero() && r.f2.is_zero());
        assert_eq!(r.potential, -&Poly::x(2, 1));
    }

    #[test]
    fn focus_split_rejects_non_cocycle() {
        let err = focus_split(&Poly::x(2, 1), &Poly::zero(2), 0).unwrap_err();
        assert!(matches!(err, SplitError::CommutationViolated { .. }));
    }
}
