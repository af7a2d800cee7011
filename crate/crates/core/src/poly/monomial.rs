use std::cmp::Ordering;
use std::fmt;

/// Name of variable slot `v`: even slots are `x`, odd slots are `y`, 1-based pair index.
pub fn var_name(v: usize) -> String {
    let pair = v / 2 + 1;
    if v.is_multiple_of(2) {
        format!("x{pair}")
    } else {
        format!("y{pair}")
    }
}

/// A monomial stored sparsely as `(variable, exponent)` pairs sorted by variable.
/// Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(u16, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: usize) -> Self {
        Monomial {
            exps: vec![(v as u16, 1)],
        }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs; repeated variables are merged.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut exps: Vec<(u16, u32)> = Vec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match exps.binary_search_by_key(&(v as u16), |&(w, _)| w) {
                Ok(i) => exps[i].1 += e,
                Err(i) => exps.insert(i, (v as u16, e)),
            }
        }
        Monomial { exps }
    }

    /// Builds a monomial from a dense exponent vector.
    pub fn from_dense(dense: &[u32]) -> Self {
        Monomial {
            exps: dense
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (v as u16, e))
                .collect(),
        }
    }

    pub fn to_dense(&self, nvars: usize) -> Vec<u32> {
        let mut d = vec![0; nvars];
        for &(v, e) in &self.exps {
            d[v as usize] = e;
        }
        d
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        match self.exps.binary_search_by_key(&(v as u16), |&(w, _)| w) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Iterates `(var, exp)` with nonzero exponents, increasing in `var`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize, e))
    }

    /// Largest variable index that occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|&(v, _)| v as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    /// Multiplies by `x_v^e` (`e` may be zero).
    pub fn mul_var(&self, v: usize, e: u32) -> Monomial {
        if e == 0 {
            return self.clone();
        }
        self.mul(&Monomial {
            exps: vec![(v as u16, e)],
        })
    }

    /// Divides by `x_v` once; `None` if `x_v` does not divide the monomial.
    pub fn div_var(&self, v: usize) -> Option<Monomial> {
        let i = self
            .exps
            .binary_search_by_key(&(v as u16), |&(w, _)| w)
            .ok()?;
        let mut exps = self.exps.clone();
        if exps[i].1 == 1 {
            exps.remove(i);
        } else {
            exps[i].1 -= 1;
        }
        Some(Monomial { exps })
    }

    /// Splits into the part supported on `vars` and the remainder.
    pub fn split_on(&self, in_set: impl Fn(usize) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.exps.iter().partition(|&&(v, _)| in_set(v as usize));
        (Monomial { exps: a }, Monomial { exps: b })
    }

    /// Product of the factorials of the exponents (the Fischer weight of the monomial).
    pub fn factorial_weight(&self) -> num_bigint::BigInt {
        let mut w = num_bigint::BigInt::from(1);
        for &(_, e) in &self.exps {
            for k in 2..=e {
                w *= k;
            }
        }
        w
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        // First differing variable decides; a missing variable has exponent 0.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

/// Graded lexicographic order: total degree first, then the dense exponent vector
/// `(x1, y1, x2, y2, ...)` compared lexicographically.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", var_name(v as usize))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
