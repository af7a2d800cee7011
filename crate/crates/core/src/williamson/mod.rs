//! Williamson types, the standard quadratic basis `q_1..q_r` and its Hamiltonian
//! fields `X_1..X_r`, the complex eigen-coordinates of each component, and type
//! detection for commuting quadratic families.

mod classify;
mod derivation;
mod frame;

use std::fmt;
use std::str::FromStr;

use crate::poly::{int, Poly};

pub use classify::{classify_family, compose_linear, random_symplectic, is_symplectic};
pub use derivation::Derivation;
pub use frame::{from_complex, joint_eigenvalues, monomial_eigenvalue, to_complex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WilliamsonError {
    #[error("Williamson type needs r = k_e + k_h + 2 k_f = {r} <= n = {n}")]
    TooManyComponents { r: usize, n: usize },
    #[error("cannot parse Williamson type {0:?} (expected \"(k_e,k_h,k_f)@n\")")]
    Parse(String),
    #[error("quadratic {index} is not a nonzero homogeneous quadratic form in {nvars} variables")]
    NotQuadratic { index: usize, nvars: usize },
    #[error("quadratics {i} and {j} do not Poisson-commute")]
    NonCommuting { i: usize, j: usize },
    #[error("not a Cartan family: {0}")]
    NotCartan(String),
    #[error("spectrum stayed degenerate after {attempts} generic combinations")]
    DegenerateSpectrum { attempts: usize },
}

/// Counts of elliptic, hyperbolic and focus-focus components, with ambient half-dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WilliamsonType {
    pub k_e: usize,
    pub k_h: usize,
    pub k_f: usize,
    pub n: usize,
}

impl WilliamsonType {
    pub fn new(k_e: usize, k_h: usize, k_f: usize, n: usize) -> Result<Self, WilliamsonError> {
        let t = WilliamsonType { k_e, k_h, k_f, n };
        if t.r() > n {
            return Err(WilliamsonError::TooManyComponents { r: t.r(), n });
        }
        Ok(t)
    }

    /// Number of fields `r = k_e + k_h + 2 k_f`.
    pub fn r(&self) -> usize {
        self.k_e + self.k_h + 2 * self.k_f
    }

    /// Number of components `s = k_e + k_h + k_f`.
    pub fn s(&self) -> usize {
        self.k_e + self.k_h + self.k_f
    }

    /// Every type with `1 <= r <= max_r` and `r <= n <= max_n`.
    pub fn enumerate(max_r: usize, max_n: usize) -> Vec<WilliamsonType> {
        let mut out = Vec::new();
        for k_f in 0..=max_r / 2 {
            for k_h in 0..=max_r {
                for k_e in 0..=max_r {
                    let r = k_e + k_h + 2 * k_f;
                    if r == 0 || r > max_r {
                        continue;
                    }
                    for n in r..=max_n {
                        out.push(WilliamsonType { k_e, k_h, k_f, n });
                    }
                }
            }
        }
        out.sort_by_key(|t| (t.r(), t.n, std::cmp::Reverse(t.k_e), std::cmp::Reverse(t.k_h)));
        out
    }
}

impl fmt::Display for WilliamsonType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})@{}", self.k_e, self.k_h, self.k_f, self.n)
    }
}

impl FromStr for WilliamsonType {
    type Err = WilliamsonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WilliamsonError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (triple, n) = compact.split_once('@').ok_or_else(bad)?;
        let inner = triple
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|v| v.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if nums.len() != 3 {
            return Err(bad());
        }
        let n: usize = n.parse().map_err(|_| bad())?;
        WilliamsonType::new(nums[0], nums[1], nums[2], n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Elliptic,
    Hyperbolic,
    Focus,
}

/// One block of the model system. `pos` is the 0-based index of its first field,
/// which is also the 0-based index of its first coordinate pair; a focus pair
/// occupies fields and coordinate pairs `pos` and `pos + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Component {
    pub kind: ComponentKind,
    pub pos: usize,
}

impl Component {
    pub fn elliptic(pos: usize) -> Self {
        Component {
            kind: ComponentKind::Elliptic,
            pos,
        }
    }

    pub fn hyperbolic(pos: usize) -> Self {
        Component {
            kind: ComponentKind::Hyperbolic,
            pos,
        }
    }

    pub fn focus(pos: usize) -> Self {
        Component {
            kind: ComponentKind::Focus,
            pos,
        }
    }

    /// Field indices (0-based) belonging to this component.
    pub fn fields(&self) -> Vec<usize> {
        match self.kind {
            ComponentKind::Focus => vec![self.pos, self.pos + 1],
            _ => vec![self.pos],
        }
    }

    /// Variable slots moved by this component's fields.
    pub fn slots(&self) -> std::ops::Range<usize> {
        match self.kind {
            ComponentKind::Focus => 2 * self.pos..2 * self.pos + 4,
            _ => 2 * self.pos..2 * self.pos + 2,
        }
    }
}

/// Standard quadratic `q` of a component in `n` degrees of freedom.
pub fn elliptic_quadratic(n: usize, pos: usize) -> Poly {
    let x = Poly::var(n, 2 * pos);
    let y = Poly::var(n, 2 * pos + 1);
    &(&x * &x) + &(&y * &y)
}

pub fn hyperbolic_quadratic(n: usize, pos: usize) -> Poly {
    &Poly::var(n, 2 * pos) * &Poly::var(n, 2 * pos + 1)
}

/// The focus-focus pair `(x_i y_i + x_{i+1} y_{i+1}, x_i y_{i+1} - x_{i+1} y_i)`.
pub fn focus_quadratics(n: usize, pos: usize) -> (Poly, Poly) {
    let (x1, y1) = (Poly::var(n, 2 * pos), Poly::var(n, 2 * pos + 1));
    let (x2, y2) = (Poly::var(n, 2 * pos + 2), Poly::var(n, 2 * pos + 3));
    (&(&x1 * &y1) + &(&x2 * &y2), &(&x1 * &y2) - &(&x2 * &y1))
}

/// `2(-y d/dx + x d/dy)` on pair `pos`.
pub fn elliptic_field(n: usize, pos: usize) -> Derivation {
    let (x, y) = (2 * pos, 2 * pos + 1);
    Derivation::from_entries(n, &[(x, y, int(-2)), (y, x, int(2))], format!("X{}[ell]", pos + 1))
}

/// `-x d/dx + y d/dy` on pair `pos`.
pub fn hyperbolic_field(n: usize, pos: usize) -> Derivation {
    let (x, y) = (2 * pos, 2 * pos + 1);
    Derivation::from_entries(n, &[(x, x, int(-1)), (y, y, int(1))], format!("X{}[hyp]", pos + 1))
}

/// The focus-focus fields `(X_i, X_{i+1})` on pairs `pos, pos + 1`:
/// `X_i = -x_i d/dx_i + y_i d/dy_i - x_{i+1} d/dx_{i+1} + y_{i+1} d/dy_{i+1}`,
/// `X_{i+1} = -x_i d/dx_{i+1} + y_{i+1} d/dy_i + x_{i+1} d/dx_i - y_i d/dy_{i+1}`.
pub fn focus_fields(n: usize, pos: usize) -> (Derivation, Derivation) {
    let (x1, y1, x2, y2) = (2 * pos, 2 * pos + 1, 2 * pos + 2, 2 * pos + 3);
    let a = Derivation::from_entries(
        n,
        &[(x1, x1, int(-1)), (y1, y1, int(1)), (x2, x2, int(-1)), (y2, y2, int(1))],
        format!("X{}[foc]", pos + 1),
    );
    let b = Derivation::from_entries(
        n,
        &[(x2, x1, int(-1)), (y1, y2, int(1)), (x1, x2, int(1)), (y2, y1, int(-1))],
        format!("X{}[foc]", pos + 2),
    );
    (a, b)
}

/// The model integrable quadratic system of a given Williamson type.
#[derive(Debug, Clone)]
pub struct ModelSystem {
    wtype: WilliamsonType,
    q: Vec<Poly>,
    fields: Vec<Derivation>,
    components: Vec<Component>,
}

impl ModelSystem {
    /// Standard Williamson basis: elliptic fields first, then hyperbolic, then
    /// focus-focus pairs, all on the leading `r` coordinate pairs.
    pub fn standard(wtype: WilliamsonType) -> Result<Self, WilliamsonError> {
        let wtype = WilliamsonType::new(wtype.k_e, wtype.k_h, wtype.k_f, wtype.n)?;
        let n = wtype.n;
        let mut q = Vec::new();
        let mut fields = Vec::new();
        let mut components = Vec::new();
        let mut pos = 0;
        for _ in 0..wtype.k_e {
            q.push(elliptic_quadratic(n, pos));
            fields.push(elliptic_field(n, pos));
            components.push(Component::elliptic(pos));
            pos += 1;
        }
        for _ in 0..wtype.k_h {
            q.push(hyperbolic_quadratic(n, pos));
            fields.push(hyperbolic_field(n, pos));
            components.push(Component::hyperbolic(pos));
            pos += 1;
        }
        for _ in 0..wtype.k_f {
            let (qa, qb) = focus_quadratics(n, pos);
            let (xa, xb) = focus_fields(n, pos);
            q.push(qa);
            q.push(qb);
            fields.push(xa);
            fields.push(xb);
            components.push(Component::focus(pos));
            pos += 2;
        }
        let sys = ModelSystem {
            wtype,
            q,
            fields,
            components,
        };
        sys.check_invariants()?;
        Ok(sys)
    }

    fn check_invariants(&self) -> Result<(), WilliamsonError> {
        for (i, xi) in self.fields.iter().enumerate() {
            for (j, qj) in self.q.iter().enumerate() {
                if !xi.apply(qj).is_zero() {
                    return Err(WilliamsonError::NonCommuting { i, j });
                }
            }
            for (j, xj) in self.fields.iter().enumerate().skip(i + 1) {
                if !xi.commutator(xj).is_zero() {
                    return Err(WilliamsonError::NonCommuting { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn wtype(&self) -> WilliamsonType {
        self.wtype
    }

    pub fn n(&self) -> usize {
        self.wtype.n
    }

    pub fn r(&self) -> usize {
        self.fields.len()
    }

    pub fn q(&self) -> &[Poly] {
        &self.q
    }

    pub fn fields(&self) -> &[Derivation] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> &Derivation {
        &self.fields[i]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Component containing field `i`.
    pub fn component_of_field(&self, i: usize) -> Component {
        *self
            .components
            .iter()
            .find(|c| c.fields().contains(&i))
            .expect("field index in range")
    }

    /// First field index of the `j`-th focus-focus pair (0-based `j`).
    pub fn sigma(&self, j: usize) -> usize {
        self.wtype.k_e + self.wtype.k_h + 2 * j
    }

    /// Variable slots not touched by any field.
    pub fn spectator_slots(&self) -> std::ops::Range<usize> {
        2 * self.r()..2 * self.n()
    }
}
