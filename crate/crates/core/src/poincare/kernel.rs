use std::collections::BTreeMap;
use std::fmt;

use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::PoincareError;
use crate::poly::{gauss, render_rational, var_name, CPoly, GaussRat, Monomial, Poly};
use crate::williamson::{from_complex, joint_eigenvalues, to_complex, ComponentKind, ModelSystem};

/// Projection onto monomials (in the joint complex frame) annihilated by every model field.
pub fn joint_kernel_projection(p: &Poly, system: &ModelSystem) -> Poly {
    let comps = system.components();
    let c = to_complex(p, comps);
    let kept = CPoly::from_terms(
        p.n(),
        c.terms()
            .into_iter()
            .filter(|(m, _)| joint_eigenvalues(comps, m).iter().all(Zero::is_zero)),
    );
    from_complex(&kept, comps)
        .into_real()
        .expect("projection of a real polynomial is real")
        .with_degree_bound(p.degree_bound())
}

/// The commutant: polynomials in `q_1..q_r` and the spectator coordinates.
#[derive(Debug, Clone)]
pub struct JointKernelBasis {
    pub q: Vec<Poly>,
    /// Variable slots of the spectator coordinates `x_{r+1}, y_{r+1}, ...`.
    pub spectators: Vec<usize>,
}

impl JointKernelBasis {
    pub fn new(system: &ModelSystem) -> Self {
        JointKernelBasis {
            q: system.q().to_vec(),
            spectators: system.spectator_slots().collect(),
        }
    }

    /// `prod q_i^{a_i} * prod s^{b}` for the given exponents.
    pub fn generator(&self, q_exps: &[u32], spectator: &Monomial) -> Poly {
        let n = self.q.first().map_or(self.spectators.len() / 2, Poly::n);
        let mut p = Poly::term(n, spectator.clone(), BigRational::one());
        for (q, &e) in self.q.iter().zip(q_exps) {
            if e > 0 {
                p = &p * &q.pow(e);
            }
        }
        p
    }

    /// Every generator monomial of total degree at most `max_degree`.
    pub fn monomials_up_to(&self, max_degree: u32) -> Vec<Poly> {
        let mut slots: Vec<(bool, usize, u32)> = Vec::new(); // (is_q, index, weight)
        slots.extend((0..self.q.len()).map(|i| (true, i, 2)));
        slots.extend(self.spectators.iter().map(|&v| (false, v, 1)));
        let mut out = Vec::new();
        let mut exps = vec![0u32; slots.len()];
        fn rec(
            basis: &JointKernelBasis,
            slots: &[(bool, usize, u32)],
            k: usize,
            budget: u32,
            exps: &mut Vec<u32>,
            out: &mut Vec<Poly>,
        ) {
            if k == slots.len() {
                let q_exps: Vec<u32> = slots
                    .iter()
                    .zip(exps.iter())
                    .filter(|(s, _)| s.0)
                    .map(|(_, &e)| e)
                    .collect();
                let spect = Monomial::from_pairs(
                    slots
                        .iter()
                        .zip(exps.iter())
                        .filter(|(s, _)| !s.0)
                        .map(|(s, &e)| (s.1, e)),
                );
                out.push(basis.generator(&q_exps, &spect));
                return;
            }
            let w = slots[k].2;
            for e in 0..=budget / w {
                exps[k] = e;
                rec(basis, slots, k + 1, budget - e * w, exps, out);
            }
            exps[k] = 0;
        }
        rec(self, &slots, 0, max_degree, &mut exps, &mut out);
        out
    }

    /// Random commutant element with up to `terms` generator terms of degree `<= max_degree`.
    pub fn random_element<R: Rng>(&self, rng: &mut R, max_degree: u32, terms: usize) -> Poly {
        let n = self.q.first().map_or(self.spectators.len() / 2, Poly::n);
        let mut acc = Poly::zero(n);
        for _ in 0..terms {
            let target = rng.gen_range(0..=max_degree);
            let mut budget = target;
            let mut q_exps = vec![0u32; self.q.len()];
            let mut spect = Vec::new();
            let nslots = self.q.len() + self.spectators.len();
            if nslots == 0 {
                break;
            }
            while budget > 0 {
                let k = rng.gen_range(0..nslots);
                if k < self.q.len() {
                    if budget >= 2 {
                        q_exps[k] += 1;
                        budget -= 2;
                    } else if self.spectators.is_empty() {
                        break;
                    }
                } else {
                    spect.push((self.spectators[k - self.q.len()], 1));
                    budget -= 1;
                }
            }
            let c = crate::oracles::random_rational(rng);
            acc = acc + self.generator(&q_exps, &Monomial::from_pairs(spect)).scale(&c);
        }
        acc
    }
}

/// A polynomial in formal kernel variables `Q_1..Q_r` times spectator coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KernelPoly {
    pub r: usize,
    pub terms: BTreeMap<(Vec<u32>, Monomial), BigRational>,
}

impl KernelPoly {
    /// Substitutes the model quadratics for the `Q_i`.
    pub fn to_poly(&self, system: &ModelSystem) -> Poly {
        let basis = JointKernelBasis::new(system);
        let mut out = Poly::zero(system.n());
        for ((qe, spect), c) in &self.terms {
            out = out + basis.generator(qe, spect).scale(c);
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, ((qe, spect), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&render_rational(&c.abs()));
            for (i, &e) in qe.iter().enumerate() {
                if e > 0 {
                    s.push_str(&format!("*Q{}", i + 1));
                    if e > 1 {
                        s.push_str(&format!("^{e}"));
                    }
                }
            }
            for (v, e) in spect.iter() {
                s.push_str(&format!("*{}", var_name(v)));
                if e > 1 {
                    s.push_str(&format!("^{e}"));
                }
            }
        }
        s
    }
}

impl fmt::Display for KernelPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn binom(n: u32, k: u32) -> BigRational {
    BigRational::from_integer(binomial(num_bigint::BigInt::from(n), num_bigint::BigInt::from(k)))
}

/// `(Q − iP)^a (Q + iP)^b` as `(Q exponent, P exponent) -> coefficient`.
fn focus_expansion(a: u32, b: u32) -> Vec<((u32, u32), GaussRat)> {
    let i_pow = |k: u32, sign: i64| -> GaussRat {
        // (sign * i)^k
        let s = BigRational::from_integer(sign.pow(k).into());
        match k % 4 {
            0 => gauss(s, BigRational::zero()),
            1 => gauss(BigRational::zero(), s),
            2 => gauss(-s, BigRational::zero()),
            _ => gauss(BigRational::zero(), -s),
        }
    };
    let mut acc: BTreeMap<(u32, u32), GaussRat> = BTreeMap::new();
    for k in 0..=a {
        for l in 0..=b {
            let c = i_pow(k, -1) * i_pow(l, 1) * GaussRat::from(binom(a, k) * binom(b, l));
            let slot = acc.entry((a - k + b - l, k + l)).or_insert_with(GaussRat::zero);
            *slot = &*slot + c;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Rewrites a joint-kernel polynomial as a polynomial in `Q_1..Q_r` and spectators.
pub fn kernel_rewrite(f: &Poly, system: &ModelSystem) -> Result<KernelPoly, PoincareError> {
    let comps = system.components();
    let r = system.r();
    let c = to_complex(f, comps);
    let mut acc: BTreeMap<(Vec<u32>, Monomial), GaussRat> = BTreeMap::new();
    for (m, coeff) in c.terms() {
        if !joint_eigenvalues(comps, &m).iter().all(Zero::is_zero) {
            return Err(PoincareError::NotInKernel(format!(
                "{} has a term outside the commutant",
                f.render()
            )));
        }
        // partial products: list of (q exponents, coefficient)
        let mut partial: Vec<(Vec<u32>, GaussRat)> = vec![(vec![0; r], coeff)];
        for comp in comps {
            let p = comp.pos;
            match comp.kind {
                ComponentKind::Elliptic | ComponentKind::Hyperbolic => {
                    let e = m.exponent(2 * p);
                    for (qe, _) in partial.iter_mut() {
                        qe[p] += e;
                    }
                }
                ComponentKind::Focus => {
                    // (z1 z̄2)^a (z̄1 z2)^b with z1 z̄2 = Q_p − i Q_{p+1}
                    let a = m.exponent(2 * p);
                    let b = m.exponent(2 * p + 2);
                    let exp = focus_expansion(a, b);
                    let mut next = Vec::with_capacity(partial.len() * exp.len());
                    for (qe, c0) in &partial {
                        for ((ea, eb), c1) in &exp {
                            let mut q = qe.clone();
                            q[p] += ea;
                            q[p + 1] += eb;
                            next.push((q, c0 * c1));
                        }
                    }
                    partial = next;
                }
            }
        }
        let (_, spect) = m.split_on(|v| v < 2 * r);
        for (qe, c) in partial {
            let slot = acc.entry((qe, spect.clone())).or_insert_with(GaussRat::zero);
            *slot = &*slot + c;
        }
    }
    let mut terms = BTreeMap::new();
    for (k, c) in acc {
        if !c.im.is_zero() {
            return Err(PoincareError::NotInKernel("non-real kernel rewrite".into()));
        }
        if !c.re.is_zero() {
            terms.insert(k, c.re);
        }
    }
    Ok(KernelPoly { r, terms })
}
