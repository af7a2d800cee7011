use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{Derivation, WilliamsonError, WilliamsonType};
use crate::linsolve;
use crate::poly::{rat, Poly};

/// Relative threshold under which a real or imaginary part counts as zero.
pub const EIGEN_TOLERANCE: f64 = 1e-9;
/// Minimum relative separation of eigenvalues for a combination to count as generic.
const SEPARATION: f64 = 1e-6;
const MAX_ATTEMPTS: usize = 5;

/// Deterministic generic coefficients for attempt `attempt`.
fn combination_coefficients(r: usize, attempt: usize) -> Vec<f64> {
    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    (0..r)
        .map(|i| 1.0 + ((i + 1) as f64 * GOLDEN * (attempt as f64 + 1.0) + 0.137 * i as f64).fract())
        .collect()
}

/// Detects the Williamson type of `r` pairwise commuting quadratic forms in `2r`
/// variables from the eigenvalues of a generic combination's Hamiltonian matrix.
pub fn classify_family(quadratics: &[Poly]) -> Result<WilliamsonType, WilliamsonError> {
    let r = quadratics.len();
    if r == 0 {
        return Err(WilliamsonError::NotCartan("empty family".into()));
    }
    for (index, q) in quadratics.iter().enumerate() {
        let ok = q.n() == r && !q.is_zero() && q.terms().all(|(m, _)| m.degree() == 2);
        if !ok {
            return Err(WilliamsonError::NotQuadratic { index, nvars: 2 * r });
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            let br = quadratics[i].poisson(&quadratics[j]).expect("same dimension");
            if !br.is_zero() {
                return Err(WilliamsonError::NonCommuting { i, j });
            }
        }
    }
    let fields: Vec<Derivation> = quadratics
        .iter()
        .map(|q| Derivation::hamiltonian(q, "q"))
        .collect();

    // linear independence of the family
    let flat: Vec<Vec<BigRational>> = fields
        .iter()
        .map(|d| d.matrix().iter().flatten().cloned().collect())
        .collect();
    let rank = linsolve::rref(flat, 4 * r * r).expect("rectangular").rank();
    if rank < r {
        return Err(WilliamsonError::NotCartan(format!("rank {rank} < {r}")));
    }

    let mats: Vec<Vec<Vec<f64>>> = fields.iter().map(Derivation::matrix_f64).collect();
    let dim = 2 * r;
    for attempt in 0..MAX_ATTEMPTS {
        let c = combination_coefficients(r, attempt);
        let m = DMatrix::from_fn(dim, dim, |i, j| {
            mats.iter().zip(&c).map(|(a, ci)| ci * a[i][j]).sum::<f64>()
        });
        let eig: Vec<_> = m.complex_eigenvalues().iter().cloned().collect();
        let radius = eig.iter().map(|l| l.norm()).fold(0.0, f64::max);
        if radius == 0.0 {
            continue;
        }
        let tol = EIGEN_TOLERANCE * radius;
        let regular = eig.iter().all(|l| l.norm() > SEPARATION * radius)
            && eig.iter().enumerate().all(|(a, la)| {
                eig.iter()
                    .skip(a + 1)
                    .all(|lb| (la - lb).norm() > SEPARATION * radius)
            });
        if !regular {
            continue;
        }
        let (mut ke, mut kh, mut kf) = (0, 0, 0);
        for l in &eig {
            let re_zero = l.re.abs() < tol;
            let im_zero = l.im.abs() < tol;
            match (re_zero, im_zero) {
                (true, false) if l.im > 0.0 => ke += 1,
                (false, true) if l.re > 0.0 => kh += 1,
                (false, false) if l.re > 0.0 && l.im > 0.0 => kf += 1,
                _ => {}
            }
        }
        if ke + kh + 2 * kf != r {
            return Err(WilliamsonError::NotCartan(format!(
                "eigenvalue pattern does not close up: ({ke},{kh},{kf}) for r = {r}"
            )));
        }
        return WilliamsonType::new(ke, kh, kf, r);
    }
    Err(WilliamsonError::DegenerateSpectrum {
        attempts: MAX_ATTEMPTS,
    })
}

/// `q ∘ S`: substitutes `x_k -> sum_l S[k][l] x_l`.
pub fn compose_linear(q: &Poly, s: &[Vec<BigRational>]) -> Poly {
    let n = q.n();
    let images: Vec<Option<Poly>> = s
        .iter()
        .map(|row| {
            Some(Poly::from_terms(
                n,
                row.iter()
                    .enumerate()
                    .map(|(l, a)| (crate::poly::Monomial::var(l), a.clone())),
            ))
        })
        .collect();
    q.substitute(&images, n)
}

fn identity(dim: usize) -> Vec<Vec<BigRational>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let dim = a.len();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let mut acc = BigRational::zero();
                    for (k, bk) in b.iter().enumerate() {
                        if !a[i][k].is_zero() && !bk[j].is_zero() {
                            acc += &a[i][k] * &bk[j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `S^T J S == J` for the interleaved symplectic form `sum dx_i ∧ dy_i`.
pub fn is_symplectic(s: &[Vec<BigRational>]) -> bool {
    let dim = s.len();
    let j = |a: usize, b: usize| -> BigRational {
        if a / 2 == b / 2 && a.is_multiple_of(2) && b == a + 1 {
            BigRational::one()
        } else if a / 2 == b / 2 && a % 2 == 1 && b + 1 == a {
            -BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    for a in 0..dim {
        for b in 0..dim {
            let mut acc = BigRational::zero();
            for k in 0..dim {
                for l in 0..dim {
                    let jkl = j(k, l);
                    if !jkl.is_zero() {
                        acc += &s[k][a] * &jkl * &s[l][b];
                    }
                }
            }
            if acc != j(a, b) {
                return false;
            }
        }
    }
    true
}

/// Random rational symplectic matrix on `R^{2n}`, a product of elementary shears,
/// Pythagorean rotations of single pairs and simultaneous rotations of two pairs.
pub fn random_symplectic<R: Rng>(n: usize, factors: usize, rng: &mut R) -> Vec<Vec<BigRational>> {
    let dim = 2 * n;
    let mut s = identity(dim);
    let rotations = [(3, 4, 5), (5, 12, 13), (8, 15, 17)];
    for _ in 0..factors {
        let mut e = identity(dim);
        let i = rng.gen_range(0..n);
        let a = rat(rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=3));
        match rng.gen_range(0..5) {
            0 => e[2 * i + 1][2 * i] = a,
            1 => e[2 * i][2 * i + 1] = a,
            2 if n > 1 => {
                let j = (i + 1 + rng.gen_range(0..n - 1)) % n;
                e[2 * i + 1][2 * j] = a.clone();
                e[2 * j + 1][2 * i] = a;
            }
            3 => {
                let (p, q, h) = rotations[rng.gen_range(0..rotations.len())];
                let (c, s_) = (rat(p, h), rat(q, h));
                e[2 * i][2 * i] = c.clone();
                e[2 * i][2 * i + 1] = -s_.clone();
                e[2 * i + 1][2 * i] = s_;
                e[2 * i + 1][2 * i + 1] = c;
            }
            4 if n > 1 => {
                let j = (i + 1 + rng.gen_range(0..n - 1)) % n;
                let (p, q, h) = rotations[rng.gen_range(0..rotations.len())];
                let (c, s_) = (rat(p, h), rat(q, h));
                for off in 0..2 {
                    let (u, v) = (2 * i + off, 2 * j + off);
                    e[u][u] = c.clone();
                    e[u][v] = -s_.clone();
                    e[v][u] = s_.clone();
                    e[v][v] = c.clone();
                }
            }
            _ => e[2 * i + 1][2 * i] = a,
        }
        s = matmul(&s, &e);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::williamson::ModelSystem;
    use rand::SeedableRng;

    fn classify_standard(t: WilliamsonType) -> WilliamsonType {
        let sys = ModelSystem::standard(t).unwrap();
        classify_family(sys.q()).unwrap()
    }

    #[test]
    fn single_components() {
        let ell = WilliamsonType::new(1, 0, 0, 1).unwrap();
        let hyp = WilliamsonType::new(0, 1, 0, 1).unwrap();
        let foc = WilliamsonType::new(0, 0, 1, 2).unwrap();
        assert_eq!(classify_standard(ell), ell);
        assert_eq!(classify_standard(hyp), hyp);
        assert_eq!(classify_standard(foc), foc);
    }

    #[test]
    fn rejects_non_commuting() {
        let a = Poly::x(2, 1).pow(2);
        let b = &Poly::x(2, 1) * &Poly::y(2, 1);
        assert_eq!(
            classify_family(&[a, b]),
            Err(WilliamsonError::NonCommuting { i: 0, j: 1 })
        );
    }

    #[test]
    fn rejects_dependent_family() {
        let q = &Poly::x(2, 1) * &Poly::y(2, 1);
        assert!(matches!(
            classify_family(&[q.clone(), q.scale(&rat(2, 1))]),
            Err(WilliamsonError::NotCartan(_))
        ));
    }

    #[test]
    fn rejects_non_quadratic() {
        assert!(matches!(
            classify_family(&[Poly::x(1, 1)]),
            Err(WilliamsonError::NotQuadratic { index: 0, .. })
        ));
    }

    #[test]
    fn generated_matrices_are_symplectic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            for _ in 0..5 {
                assert!(is_symplectic(&random_symplectic(n, 6, &mut rng)));
            }
        }
        let mut bad = identity(2);
        bad[0][0] = rat(2, 1);
        assert!(!is_symplectic(&bad));
    }
}
