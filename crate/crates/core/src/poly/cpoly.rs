use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::Poly;
use super::{GaussRat, PolyError};

/// Polynomial with Gaussian-rational coefficients, stored as `re + i*im`.
#[derive(Clone, PartialEq, Eq)]
pub struct CPoly {
    pub re: Poly,
    pub im: Poly,
}

pub fn gauss(re: BigRational, im: BigRational) -> GaussRat {
    GaussRat::new(re, im)
}

pub fn imag_unit() -> GaussRat {
    GaussRat::new(BigRational::zero(), BigRational::one())
}

impl CPoly {
    pub fn zero(n: usize) -> Self {
        CPoly {
            re: Poly::zero(n),
            im: Poly::zero(n),
        }
    }

    pub fn from_real(p: Poly) -> Self {
        let im = Poly::zero(p.n()).with_degree_bound(p.degree_bound());
        CPoly { re: p, im }
    }

    pub fn from_parts(re: Poly, im: Poly) -> Result<Self, PolyError> {
        if re.n() != im.n() {
            return Err(PolyError::DimensionMismatch {
                left: re.n(),
                right: im.n(),
            });
        }
        Ok(CPoly { re, im })
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussRat)>>(n: usize, terms: I) -> Self {
        let mut out = CPoly::zero(n);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn n(&self) -> usize {
        self.re.n()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        let GaussRat { re, im } = c;
        if !re.is_zero() {
            self.re.add_term(m.clone(), re);
        }
        if !im.is_zero() {
            self.im.add_term(m, im);
        }
    }

    pub fn coeff(&self, m: &Monomial) -> GaussRat {
        GaussRat::new(self.re.coeff(m), self.im.coeff(m))
    }

    /// Merged `(monomial, coefficient)` view in increasing graded-lex order.
    pub fn terms(&self) -> BTreeMap<Monomial, GaussRat> {
        let mut out: BTreeMap<Monomial, GaussRat> = BTreeMap::new();
        for (m, c) in self.re.terms() {
            out.insert(m.clone(), GaussRat::new(c.clone(), BigRational::zero()));
        }
        for (m, c) in self.im.terms() {
            out.entry(m.clone())
                .or_insert_with(GaussRat::zero)
                .im = c.clone();
        }
        out
    }

    pub fn conj(&self) -> CPoly {
        CPoly {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn scale(&self, c: &GaussRat) -> CPoly {
        CPoly {
            re: &self.re.scale(&c.re) - &self.im.scale(&c.im),
            im: &self.re.scale(&c.im) + &self.im.scale(&c.re),
        }
    }

    /// The real part, failing if the imaginary part does not vanish.
    pub fn into_real(self) -> Result<Poly, PolyError> {
        if !self.im.is_zero() {
            return Err(PolyError::NotReal {
                imaginary: self.im.render(),
            });
        }
        Ok(self.re)
    }

    pub fn checked_mul(&self, other: &CPoly) -> Result<CPoly, PolyError> {
        let rr = self.re.checked_mul(&other.re)?;
        let ii = self.im.checked_mul(&other.im)?;
        let ri = self.re.checked_mul(&other.im)?;
        let ir = self.im.checked_mul(&other.re)?;
        Ok(CPoly {
            re: rr - ii,
            im: ri + ir,
        })
    }

    pub fn pow(&self, e: u32) -> CPoly {
        let mut acc = CPoly::from_real(Poly::constant(self.n(), BigRational::one()));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `images[v]` for each slot `v` with `Some` image; others stay.
    pub fn substitute(&self, images: &[Option<CPoly>], n_out: usize) -> CPoly {
        let moved_slot = |v: usize| images.get(v).is_some_and(Option::is_some);
        let mut cache: HashMap<Monomial, BTreeMap<Monomial, GaussRat>> = HashMap::new();
        let mut acc: BTreeMap<Monomial, GaussRat> = BTreeMap::new();
        for (m, c) in self.terms() {
            let (moved, kept) = m.split_on(moved_slot);
            let image = cache.entry(moved.clone()).or_insert_with(|| {
                let mut p = CPoly::from_real(Poly::constant(n_out, BigRational::one()));
                for (v, e) in moved.iter() {
                    let img = images[v].as_ref().expect("moved slot has an image");
                    p = &p * &img.pow(e);
                }
                p.terms()
            });
            for (im, ic) in image.iter() {
                let slot = acc.entry(im.mul(&kept)).or_insert_with(GaussRat::zero);
                *slot = &*slot + ic * &c;
            }
        }
        CPoly::from_terms(n_out, acc)
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i*({})", self.re, self.im)
    }
}

impl<'a> Add<&'a CPoly> for &'a CPoly {
    type Output = CPoly;
    fn add(self, rhs: &'a CPoly) -> CPoly {
        CPoly {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a CPoly> for &'a CPoly {
    type Output = CPoly;
    fn sub(self, rhs: &'a CPoly) -> CPoly {
        CPoly {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a CPoly> for &'a CPoly {
    type Output = CPoly;
    fn mul(self, rhs: &'a CPoly) -> CPoly {
        self.checked_mul(rhs).expect("cpoly mul")
    }
}
