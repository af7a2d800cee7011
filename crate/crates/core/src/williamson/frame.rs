//! Complex eigen-coordinates of the model components.
//!
//! In these coordinates every monomial is a joint eigenvector of the model fields:
//!
//! * elliptic pair `(x, y)`: slot of `x` holds `z = x + i y`, slot of `y` holds `z̄`;
//!   `z^a z̄^b` has eigenvalue `2i(a − b)`;
//! * hyperbolic pair: real coordinates, `x^j y^k` has eigenvalue `k − j`;
//! * focus pair on `(x_i, y_i, x_{i+1}, y_{i+1})`: `z1 = x_i + i x_{i+1}` sits in the
//!   slot of `x_i`, `z2 = y_i + i y_{i+1}` in the slot of `y_i`, `z̄1` in the slot of
//!   `x_{i+1}` and `z̄2` in the slot of `y_{i+1}`. The monomial
//!   `z1^a z̄1^b z2^c z̄2^d` has eigenvalue `c + d − a − b` under `X_i` and
//!   `i(b + d − a − c)` under `X_{i+1}`.
//!
//! Spectator coordinates are left untouched.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Component, ComponentKind};
use crate::poly::{gauss, CPoly, GaussRat, Monomial, Poly};

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn linear(n: usize, parts: &[(usize, GaussRat)]) -> CPoly {
    CPoly::from_terms(n, parts.iter().map(|(v, c)| (Monomial::var(*v), c.clone())))
}

fn real(v: BigRational) -> GaussRat {
    gauss(v, BigRational::zero())
}

fn imag(v: BigRational) -> GaussRat {
    gauss(BigRational::zero(), v)
}

/// Images of real coordinates in terms of complex ones (real -> complex frame).
fn real_to_complex_images(n: usize, comps: &[Component]) -> Vec<Option<CPoly>> {
    let mut images: Vec<Option<CPoly>> = vec![None; 2 * n];
    let h = half();
    for c in comps {
        match c.kind {
            ComponentKind::Hyperbolic => {}
            ComponentKind::Elliptic => {
                let (x, y) = (2 * c.pos, 2 * c.pos + 1);
                // x = (z + z̄)/2, y = (z − z̄)/(2i) = −(i/2) z + (i/2) z̄
                images[x] = Some(linear(n, &[(x, real(h.clone())), (y, real(h.clone()))]));
                images[y] = Some(linear(n, &[(x, imag(-h.clone())), (y, imag(h.clone()))]));
            }
            ComponentKind::Focus => {
                let (x1, y1, x2, y2) = (2 * c.pos, 2 * c.pos + 1, 2 * c.pos + 2, 2 * c.pos + 3);
                // slots: z1 -> x1, z2 -> y1, z̄1 -> x2, z̄2 -> y2
                images[x1] = Some(linear(n, &[(x1, real(h.clone())), (x2, real(h.clone()))]));
                images[x2] = Some(linear(n, &[(x1, imag(-h.clone())), (x2, imag(h.clone()))]));
                images[y1] = Some(linear(n, &[(y1, real(h.clone())), (y2, real(h.clone()))]));
                images[y2] = Some(linear(n, &[(y1, imag(-h.clone())), (y2, imag(h.clone()))]));
            }
        }
    }
    images
}

/// Images of complex coordinates in terms of real ones (complex -> real frame).
fn complex_to_real_images(n: usize, comps: &[Component]) -> Vec<Option<CPoly>> {
    let mut images: Vec<Option<CPoly>> = vec![None; 2 * n];
    let one = BigRational::one;
    for c in comps {
        match c.kind {
            ComponentKind::Hyperbolic => {}
            ComponentKind::Elliptic => {
                let (x, y) = (2 * c.pos, 2 * c.pos + 1);
                images[x] = Some(linear(n, &[(x, real(one())), (y, imag(one()))]));
                images[y] = Some(linear(n, &[(x, real(one())), (y, imag(-one()))]));
            }
            ComponentKind::Focus => {
                let (x1, y1, x2, y2) = (2 * c.pos, 2 * c.pos + 1, 2 * c.pos + 2, 2 * c.pos + 3);
                images[x1] = Some(linear(n, &[(x1, real(one())), (x2, imag(one()))]));
                images[x2] = Some(linear(n, &[(x1, real(one())), (x2, imag(-one()))]));
                images[y1] = Some(linear(n, &[(y1, real(one())), (y2, imag(one()))]));
                images[y2] = Some(linear(n, &[(y1, real(one())), (y2, imag(-one()))]));
            }
        }
    }
    images
}

/// Rewrites a real polynomial in the complex eigen-coordinates of `comps`.
pub fn to_complex(p: &Poly, comps: &[Component]) -> CPoly {
    let n = p.n();
    if comps.iter().all(|c| c.kind == ComponentKind::Hyperbolic) {
        return CPoly::from_real(p.clone());
    }
    CPoly::from_real(p.clone()).substitute(&real_to_complex_images(n, comps), n)
}

/// Inverse of [`to_complex`]: returns a polynomial in the real coordinates.
pub fn from_complex(c: &CPoly, comps: &[Component]) -> CPoly {
    let n = c.n();
    if comps.iter().all(|c| c.kind == ComponentKind::Hyperbolic) {
        return c.clone();
    }
    c.substitute(&complex_to_real_images(n, comps), n)
}

/// Eigenvalues of a complex-frame monomial under the fields of one component,
/// one entry per field.
pub fn monomial_eigenvalue(c: &Component, m: &Monomial) -> Vec<GaussRat> {
    let e = |v: usize| i64::from(m.exponent(v));
    let int = |v: i64| BigRational::from_integer(v.into());
    match c.kind {
        ComponentKind::Elliptic => {
            let (a, b) = (e(2 * c.pos), e(2 * c.pos + 1));
            vec![imag(int(2 * (a - b)))]
        }
        ComponentKind::Hyperbolic => {
            let (j, k) = (e(2 * c.pos), e(2 * c.pos + 1));
            vec![real(int(k - j))]
        }
        ComponentKind::Focus => {
            let (a, cc, b, d) = (e(2 * c.pos), e(2 * c.pos + 1), e(2 * c.pos + 2), e(2 * c.pos + 3));
            vec![real(int(cc + d - a - b)), imag(int(b + d - a - cc))]
        }
    }
}

/// Eigenvalues of a monomial (in the joint complex frame) under every field, in
/// component order.
pub fn joint_eigenvalues(comps: &[Component], m: &Monomial) -> Vec<GaussRat> {
    comps.iter().flat_map(|c| monomial_eigenvalue(c, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use crate::williamson::{focus_fields, ModelSystem, WilliamsonType};

    #[test]
    fn round_trip_through_complex_frame() {
        let sys = ModelSystem::standard(WilliamsonType::new(1, 0, 1, 3).unwrap()).unwrap();
        let p = &(&Poly::x(3, 1).pow(2) * &Poly::y(3, 2)) + &(&Poly::x(3, 3) * &Poly::y(3, 1));
        let c = to_complex(&p, sys.components());
        let back = from_complex(&c, sys.components()).into_real().unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn focus_first_integral_in_complex_frame() {
        // z̄1 z2 = q_i + i q_{i+1}
        let comp = Component::focus(0);
        let m = Monomial::from_pairs([(2, 1), (1, 1)]);
        let real = from_complex(&CPoly::from_terms(2, [(m.clone(), gauss(int(1), int(0)))]), &[comp]);
        let (qa, qb) = crate::williamson::focus_quadratics(2, 0);
        assert_eq!(real.re, qa);
        assert_eq!(real.im, qb);
        assert!(monomial_eigenvalue(&comp, &m).iter().all(|l| l.is_zero()));
    }

    #[test]
    fn eigenvalues_match_field_action() {
        // apply each field to the real image of a complex monomial and compare
        let n = 2;
        let comps = [Component::focus(0)];
        let (xa, xb) = focus_fields(n, 0);
        for exps in [[1, 0, 0, 0], [0, 1, 2, 0], [2, 1, 0, 3], [1, 1, 1, 1]] {
            let m = Monomial::from_dense(&exps);
            let cm = CPoly::from_terms(n, [(m.clone(), gauss(int(1), int(0)))]);
            let real = from_complex(&cm, &comps);
            let lam = monomial_eigenvalue(&comps[0], &m);
            assert_eq!(xa.apply_complex(&real), real.scale(&lam[0]));
            assert_eq!(xb.apply_complex(&real), real.scale(&lam[1]));
        }
        let sys = ModelSystem::standard(WilliamsonType::new(1, 0, 0, 1).unwrap()).unwrap();
        let m = Monomial::from_dense(&[3, 1]);
        let cm = CPoly::from_terms(1, [(m.clone(), gauss(int(1), int(0)))]);
        let real = from_complex(&cm, sys.components());
        let lam = monomial_eigenvalue(&sys.components()[0], &m);
        assert_eq!(lam[0], gauss(int(0), int(4)));
        assert_eq!(sys.field(0).apply_complex(&real), real.scale(&lam[0]));
    }

    #[test]
    fn spec_eigenvalue_examples() {
        let ell = Component::elliptic(0);
        assert!(monomial_eigenvalue(&ell, &Monomial::from_dense(&[1, 1]))[0].is_zero());
        let hyp = Component::hyperbolic(0);
        assert_eq!(monomial_eigenvalue(&hyp, &Monomial::from_dense(&[2, 0]))[0], gauss(int(-2), int(0)));
    }
}
