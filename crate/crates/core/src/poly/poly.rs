use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{var_name, Monomial};
use super::PolyError;

/// Exact sparse polynomial over the rationals in `x1, y1, ..., xn, yn`.
///
/// Variables are interleaved: slot `2k` is `x_{k+1}` and slot `2k+1` is `y_{k+1}`.
/// When `degree_bound` is set every stored monomial has total degree at most the bound.
#[derive(Clone)]
pub struct Poly {
    n: usize,
    degree_bound: Option<u32>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Poly {}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn merge_bound(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            degree_bound: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        Self::term(n, Monomial::one(), c)
    }

    /// The coordinate function of slot `v`.
    pub fn var(n: usize, v: usize) -> Self {
        assert!(v < 2 * n, "variable slot {v} out of range for n = {n}");
        Self::term(n, Monomial::var(v), BigRational::one())
    }

    /// `x_k` for 1-based pair index `k`.
    pub fn x(n: usize, k: usize) -> Self {
        Self::var(n, 2 * (k - 1))
    }

    /// `y_k` for 1-based pair index `k`.
    pub fn y(n: usize, k: usize) -> Self {
        Self::var(n, 2 * (k - 1) + 1)
    }

    pub fn term(n: usize, m: Monomial, c: BigRational) -> Self {
        let mut p = Poly::zero(n);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(n: usize, terms: I) -> Self {
        let mut p = Poly::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        2 * self.n
    }

    pub fn degree_bound(&self) -> Option<u32> {
        self.degree_bound
    }

    /// Sets the truncation bound and drops every term above it.
    pub fn with_degree_bound(mut self, bound: Option<u32>) -> Self {
        self.degree_bound = bound;
        if let Some(d) = bound {
            self.terms.retain(|m, _| m.degree() <= d);
        }
        self
    }

    /// Same terms viewed in a larger ambient dimension.
    pub fn embed(&self, n: usize) -> Poly {
        assert!(n >= self.n);
        Poly {
            n,
            degree_bound: self.degree_bound,
            terms: self.terms.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigRational> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Highest total degree present, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Accumulates `c * m`, keeping the sparse invariant and the degree bound.
    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        if let Some(d) = self.degree_bound {
            if m.degree() > d {
                return;
            }
        }
        debug_assert!(m.max_var().is_none_or(|v| v < 2 * self.n));
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut out = self
            .clone()
            .with_degree_bound(merge_bound(self.degree_bound, other.degree_bound));
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut out = self
            .clone()
            .with_degree_bound(merge_bound(self.degree_bound, other.degree_bound));
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.n);
        out.degree_bound = merge_bound(self.degree_bound, other.degree_bound);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly {
                n: self.n,
                degree_bound: self.degree_bound,
                terms: BTreeMap::new(),
            };
        }
        Poly {
            n: self.n,
            degree_bound: self.degree_bound,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.n, BigRational::one()).with_degree_bound(self.degree_bound);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to slot `var`.
    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly {
            n: self.n,
            degree_bound: self.degree_bound,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let reduced = m.div_var(var).expect("exponent is positive");
            out.add_term(reduced, c * BigRational::from_integer(e.into()));
        }
        out
    }

    /// Poisson bracket `{f, g} = sum_i (df/dx_i dg/dy_i - df/dy_i dg/dx_i)`.
    ///
    /// With this sign the Hamiltonian field of `q` acts as `X_q(g) = {q, g}`.
    pub fn poisson(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.n);
        out.degree_bound = merge_bound(self.degree_bound, other.degree_bound);
        for i in 0..self.n {
            let (x, y) = (2 * i, 2 * i + 1);
            let fx = self.partial(x);
            let fy = self.partial(y);
            if fx.is_zero() && fy.is_zero() {
                continue;
            }
            let gx = other.partial(x);
            let gy = other.partial(y);
            out = &out + &(&(&fx * &gy) - &(&fy * &gx));
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point of length `2n`.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::PointLength {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                t *= num_traits::pow(point[v].clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// IEEE-double evaluation at a point of length `2n`.
    pub fn evaluate_f64(&self, point: &[f64]) -> Result<f64, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::PointLength {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        Ok(self.eval_f64_unchecked(point))
    }

    pub(crate) fn eval_f64_unchecked(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (v, e) in m.iter() {
                t *= point[v].powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Nonzero homogeneous components in increasing degree.
    pub fn homogeneous_components(&self) -> Vec<(u32, Poly)> {
        let mut out: Vec<(u32, Poly)> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.degree();
            match out.last_mut() {
                Some((dd, p)) if *dd == d => {
                    p.terms.insert(m.clone(), c.clone());
                }
                _ => {
                    let mut p = Poly::zero(self.n);
                    p.degree_bound = self.degree_bound;
                    p.terms.insert(m.clone(), c.clone());
                    out.push((d, p));
                }
            }
        }
        out
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial, &BigRational) -> bool) -> Poly {
        Poly {
            n: self.n,
            degree_bound: self.degree_bound,
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `images[v]` for each slot `v` with `Some` image; other slots stay.
    /// Images must live in the same ambient dimension as the result `n_out`.
    pub fn substitute(&self, images: &[Option<Poly>], n_out: usize) -> Poly {
        let mut out = Poly::zero(n_out);
        out.degree_bound = self.degree_bound;
        let mut cache: HashMap<Monomial, Poly> = HashMap::new();
        for (m, c) in &self.terms {
            let (moved, kept) = m.split_on(|v| images.get(v).is_some_and(Option::is_some));
            let image = cache.entry(moved.clone()).or_insert_with(|| {
                let mut acc = Poly::constant(n_out, BigRational::one());
                for (v, e) in moved.iter() {
                    let img = images[v].as_ref().expect("moved slot has an image");
                    acc = &acc * &img.pow(e);
                }
                acc
            });
            for (im, ic) in &image.terms {
                out.add_term(im.mul(&kept), ic * c);
            }
        }
        out
    }

    /// Canonical text: terms by decreasing graded-lex order, coefficients `p/q` in
    /// lowest terms (`p` when integral), e.g. `3/2*x1^2*y2 - 1*y1`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&render_rational(&c.abs()));
            for (v, e) in m.iter() {
                s.push('*');
                s.push_str(&var_name(v));
                if e > 1 {
                    s.push('^');
                    s.push_str(&e.to_string());
                }
            }
        }
        s
    }
}

pub fn render_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[n={}]({})", self.n, self.render())
    }
}

// Operator forms panic on mismatched ambient dimension; use the `checked_*`
// methods where that is a recoverable condition.
impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("poly add")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("poly sub")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs).expect("poly mul")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        assert_eq!(self.n, rhs.n, "poly add: dimension mismatch");
        if rhs.degree_bound.is_some() && rhs.degree_bound != self.degree_bound {
            return self.checked_add(&rhs).expect("poly add");
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, k: usize) -> Poly {
        Poly::x(n, k)
    }
    fn y(n: usize, k: usize) -> Poly {
        Poly::y(n, k)
    }

    #[test]
    fn difference_of_squares() {
        let a = &x(1, 1) + &y(1, 1);
        let b = &x(1, 1) - &y(1, 1);
        let expect = &x(1, 1).pow(2) - &y(1, 1).pow(2);
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn multiply_by_zero() {
        let p = &x(2, 1).pow(3) + &y(2, 2);
        assert!((&p * &Poly::zero(2)).is_zero());
    }

    #[test]
    fn truncated_product() {
        let q = (&x(2, 1).pow(2) + &y(2, 1).pow(2)).with_degree_bound(Some(4));
        let r = &x(2, 2) * &y(2, 2);
        let prod = &q * &r;
        let expect = &(&x(2, 1).pow(2) * &r) + &(&y(2, 1).pow(2) * &r);
        assert_eq!(prod, expect);
        let cubed = &prod * &x(2, 1);
        assert!(cubed.is_zero(), "degree 5 terms are truncated at D = 4");
    }

    #[test]
    fn mismatched_dimension_is_an_error() {
        let err = x(1, 1).checked_add(&x(2, 1)).unwrap_err();
        assert_eq!(err, PolyError::DimensionMismatch { left: 1, right: 2 });
    }

    #[test]
    fn partials() {
        let p = &x(2, 1).pow(2) * &y(2, 2);
        assert_eq!(p.partial(0), (&x(2, 1) * &y(2, 2)).scale(&int(2)));
        assert!(Poly::constant(2, int(7)).partial(0).is_zero());
        assert_eq!((&x(1, 1) * &y(1, 1)).partial(1), x(1, 1));
    }

    #[test]
    fn bracket_conventions() {
        let hyp = &x(1, 1) * &y(1, 1);
        let f = x(1, 1).pow(2);
        assert_eq!(hyp.poisson(&f).unwrap(), f.scale(&int(-2)));
        let ell = &x(1, 1).pow(2) + &y(1, 1).pow(2);
        assert_eq!(ell.poisson(&x(1, 1)).unwrap(), y(1, 1).scale(&int(-2)));
        assert!(f.poisson(&f).unwrap().is_zero());
    }

    #[test]
    fn evaluation() {
        let q = &x(1, 1).pow(2) + &y(1, 1).pow(2);
        assert_eq!(q.evaluate(&[int(3), int(4)]).unwrap(), int(25));
        assert!(Poly::zero(2).evaluate(&vec![int(1); 4]).unwrap().is_zero());
        let p = &(&x(2, 1) * &y(2, 1)) - &(&x(2, 2) * &y(2, 2));
        let pt = [int(1), int(2), int(3), int(4)];
        assert_eq!(p.evaluate(&pt).unwrap(), int(-10));
        assert_eq!(p.evaluate_f64(&[1.0, 2.0, 3.0, 4.0]).unwrap(), -10.0);
        assert!(p.evaluate(&pt[..2]).is_err());
    }

    #[test]
    fn homogeneous_split() {
        let p = &x(1, 1) + &(&x(1, 1) * &y(1, 1));
        let comps = p.homogeneous_components();
        assert_eq!(comps, vec![(1, x(1, 1)), (2, &x(1, 1) * &y(1, 1))]);
        assert!(Poly::zero(1).homogeneous_components().is_empty());
        let sq = (&x(1, 1) + &y(1, 1)).pow(2);
        let comps = sq.homogeneous_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].0, 2);
        assert_eq!(comps[0].1.coeff(&Monomial::from_pairs([(0, 1), (1, 1)])), int(2));
    }

    #[test]
    fn rendering() {
        let p = &(&x(2, 1).pow(2) * &y(2, 2)).scale(&rat(3, 2)) - &y(2, 1);
        assert_eq!(p.render(), "3/2*x1^2*y2 - 1*y1");
        assert_eq!((-&p).render(), "-3/2*x1^2*y2 + 1*y1");
        assert_eq!(Poly::zero(1).render(), "0");
        assert_eq!(Poly::constant(1, rat(-4, 6)).render(), "-2/3");
    }

    #[test]
    fn substitution() {
        // (x1 + y1)^2 with x1 -> y1, y1 -> x1 is unchanged
        let p = (&x(1, 1) + &y(1, 1)).pow(2);
        let swapped = p.substitute(&[Some(y(1, 1)), Some(x(1, 1))], 1);
        assert_eq!(swapped, p);
        let shifted = x(2, 1).substitute(&[Some(&x(2, 1) + &y(2, 2))], 2);
        assert_eq!(shifted, &x(2, 1) + &y(2, 2));
    }
}
