//! Numeric cross-checks of the exact splits against averages and integrals
//! along explicit linear flows, and seeded random instance generation.
//!
//! Flows act on the slot vector `(x_1, y_1, …, x_n, y_n)`; `φ_t` solves
//! `d/dt φ_t(p) = V(φ_t(p))` with `V_k(p) = X(x_k)(p)`.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::par;
use crate::poincare::{joint_kernel_projection, CocycleData, Decomposition, JointKernelBasis};
use crate::poly::{Monomial, Poly};
use crate::splitters::{elliptic_split, focus_average, hyperbolic_obstruction};
use crate::williamson::{Component, ComponentKind, ModelSystem};

pub const DEFAULT_PANELS: usize = 256;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const HYPERBOLIC_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_POINTS: usize = 64;
/// Sample points closer than this to `Ω = {x_i = 0} ∪ {y_i = 0}` are rejected.
pub const OMEGA_MARGIN: f64 = 0.05;
/// Step of the central difference along the hyperbolic flow.
pub const FLOW_STEP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("panel count must be even and at least 2, got {0}")]
    Panels(usize),
    #[error("component {0:?} is not of the required kind")]
    WrongComponent(Component),
    #[error("field {field} of component {component:?} does not exist")]
    NoSuchField { component: Component, field: usize },
    #[error("point {index} lies on the excluded set x_i y_i = 0")]
    PointInOmega { index: usize },
    #[error("diagonal obstruction is nonzero: {0}")]
    Obstructed(String),
    #[error("max residual {max:e} exceeds tolerance {tolerance:e} in {label}")]
    ToleranceExceeded { label: String, max: f64, tolerance: f64 },
    #[error("point has length {got}, expected {expected}")]
    PointLength { expected: usize, got: usize },
}

/// Closed-form flow of one model field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowSpec {
    pub n: usize,
    pub component: Component,
    /// 0 for elliptic and hyperbolic; 0 or 1 for the two focus-focus fields.
    pub field: usize,
}

impl FlowSpec {
    pub fn new(n: usize, component: Component, field: usize) -> Result<Self, OracleError> {
        let max = if component.kind == ComponentKind::Focus { 2 } else { 1 };
        if field >= max {
            return Err(OracleError::NoSuchField { component, field });
        }
        Ok(FlowSpec { n, component, field })
    }

    /// The flow of model field `i` of `system`.
    pub fn of_field(system: &ModelSystem, i: usize) -> Self {
        let component = system.component_of_field(i);
        let field = i - component.fields()[0];
        FlowSpec {
            n: system.n(),
            component,
            field,
        }
    }

    /// `φ_t` as a `2n × 2n` matrix.
    pub fn matrix(&self, t: f64) -> DMatrix<f64> {
        let mut m = DMatrix::identity(2 * self.n, 2 * self.n);
        let p = self.component.pos;
        let (x, y) = (2 * p, 2 * p + 1);
        match (self.component.kind, self.field) {
            (ComponentKind::Elliptic, _) => {
                // X = 2(−y ∂x + x ∂y): rotation by 2t
                let (s, c) = (2.0 * t).sin_cos();
                m[(x, x)] = c;
                m[(x, y)] = -s;
                m[(y, x)] = s;
                m[(y, y)] = c;
            }
            (ComponentKind::Hyperbolic, _) => {
                m[(x, x)] = (-t).exp();
                m[(y, y)] = t.exp();
            }
            (ComponentKind::Focus, 0) => {
                for k in [x, x + 2] {
                    m[(k, k)] = (-t).exp();
                }
                for k in [y, y + 2] {
                    m[(k, k)] = t.exp();
                }
            }
            (ComponentKind::Focus, _) => {
                // rotates (x_p, x_{p+1}) and (y_p, y_{p+1}) together
                let (s, c) = t.sin_cos();
                for a in [x, y] {
                    let b = a + 2;
                    m[(a, a)] = c;
                    m[(a, b)] = s;
                    m[(b, a)] = -s;
                    m[(b, b)] = c;
                }
            }
        }
        m
    }

    pub fn apply(&self, t: f64, point: &[f64]) -> Vec<f64> {
        let v = self.matrix(t) * DVector::from_column_slice(point);
        v.iter().copied().collect()
    }

    /// Period of the flow when it is a rotation.
    pub fn period(&self) -> Option<f64> {
        match (self.component.kind, self.field) {
            (ComponentKind::Elliptic, _) => Some(std::f64::consts::PI),
            (ComponentKind::Focus, 1) => Some(2.0 * std::f64::consts::PI),
            _ => None,
        }
    }
}

/// Composite Simpson rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    panels: usize,
    pub tolerance: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            panels: DEFAULT_PANELS,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl QuadratureConfig {
    pub fn new(panels: usize, tolerance: f64) -> Result<Self, OracleError> {
        if panels < 2 || !panels.is_multiple_of(2) {
            return Err(OracleError::Panels(panels));
        }
        Ok(QuadratureConfig { panels, tolerance })
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        simpson(f, a, b, self.panels)
    }
}

/// Composite Simpson rule with `panels` (even) subintervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels >= 2 && panels.is_multiple_of(2), "panel count must be even");
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for k in 1..panels {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

/// Observed orders `log2(e_k / e_{k+1})` of Simpson's rule against `exact` as the
/// panel count doubles from `start`. Levels whose error is below `floor` are
/// dropped, since their ratio measures rounding rather than truncation.
pub fn simpson_orders(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    exact: f64,
    start: usize,
    levels: usize,
    floor: f64,
) -> Vec<f64> {
    let errors: Vec<f64> = (0..levels)
        .map(|k| (simpson(&f, a, b, start << k) - exact).abs())
        .take_while(|e| *e > floor)
        .collect();
    errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResidual {
    pub point: Vec<f64>,
    pub numeric: f64,
    pub reference: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub label: String,
    pub rows: Vec<PointResidual>,
    pub tolerance: f64,
}

impl CheckReport {
    pub fn max_residual(&self) -> f64 {
        self.rows.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.residual < self.tolerance)
    }

    pub fn into_result(self) -> Result<Self, OracleError> {
        if self.passed() {
            Ok(self)
        } else {
            Err(OracleError::ToleranceExceeded {
                label: self.label.clone(),
                max: self.max_residual(),
                tolerance: self.tolerance,
            })
        }
    }

    /// Plain-text table: one line per point, then the summary.
    pub fn render(&self) -> String {
        let mut out = format!("check {}\n", self.label);
        for (k, r) in self.rows.iter().enumerate() {
            let pt: Vec<String> = r.point.iter().map(|v| format!("{v:.6}")).collect();
            out.push_str(&format!(
                "  point {k} [{}] numeric {:.12e} reference {:.12e} residual {:.3e}\n",
                pt.join(", "),
                r.numeric,
                r.reference,
                r.residual
            ));
        }
        out.push_str(&format!(
            "  max_residual {:.3e} tolerance {:.3e} {}\n",
            self.max_residual(),
            self.tolerance,
            if self.passed() { "pass" } else { "fail" }
        ));
        out
    }
}

fn check_points(points: &[Vec<f64>], n: usize) -> Result<(), OracleError> {
    for p in points {
        if p.len() != 2 * n {
            return Err(OracleError::PointLength {
                expected: 2 * n,
                got: p.len(),
            });
        }
    }
    Ok(())
}

fn average_report(
    label: String,
    g: &Poly,
    reference: &Poly,
    flow: FlowSpec,
    points: &[Vec<f64>],
    config: &QuadratureConfig,
) -> Result<CheckReport, OracleError> {
    check_points(points, g.n())?;
    let period = flow.period().expect("rotation flow");
    let rows = par::map(points, |p| {
        let numeric = config.integrate(|t| g.eval_f64_unchecked(&flow.apply(t, p)), 0.0, period) / period;
        let exact = reference.eval_f64_unchecked(p);
        PointResidual {
            point: p.clone(),
            numeric,
            reference: exact,
            residual: (numeric - exact).abs(),
        }
    });
    Ok(CheckReport {
        label,
        rows,
        tolerance: config.tolerance,
    })
}

/// `(1/π) ∫_0^π g(φ_t(p)) dt` against the kernel part of the elliptic split.
pub fn elliptic_average_check(
    g: &Poly,
    comp: Component,
    points: &[Vec<f64>],
    config: &QuadratureConfig,
) -> Result<CheckReport, OracleError> {
    if comp.kind != ComponentKind::Elliptic {
        return Err(OracleError::WrongComponent(comp));
    }
    let kernel = elliptic_split(g, comp.pos).kernel_part;
    let flow = FlowSpec::new(g.n(), comp, 0)?;
    average_report(format!("elliptic_average pair {}", comp.pos + 1), g, &kernel, flow, points, config)
}

/// `(1/2π) ∫_0^{2π} g2(φ_{2,θ}(p)) dθ` against the S¹-average of the focus split.
pub fn s1_average_check(
    g2: &Poly,
    comp: Component,
    points: &[Vec<f64>],
    config: &QuadratureConfig,
) -> Result<CheckReport, OracleError> {
    if comp.kind != ComponentKind::Focus {
        return Err(OracleError::WrongComponent(comp));
    }
    let (f2, _) = focus_average(g2, comp.pos);
    let flow = FlowSpec::new(g2.n(), comp, 1)?;
    average_report(format!("s1_average pair {}", comp.pos + 1), g2, &f2, flow, points, config)
}

/// Time for the hyperbolic flow from `p` to reach `|x_i| = |y_i|`:
/// `T = ½ ln|x_i / y_i|`. The absolute value selects the branch in every
/// quadrant; the flow preserves the quadrant.
pub fn hyperbolic_time(p: &[f64], pos: usize) -> f64 {
    0.5 * (p[2 * pos] / p[2 * pos + 1]).abs().ln()
}

/// `f(p) = −∫_0^{T(p)} g(φ_t(p)) dt`, defined off `Ω`.
pub fn hyperbolic_flow_integral(g: &Poly, pos: usize, p: &[f64], config: &QuadratureConfig) -> f64 {
    let flow = FlowSpec {
        n: g.n(),
        component: Component::hyperbolic(pos),
        field: 0,
    };
    let t_end = hyperbolic_time(p, pos);
    -config.integrate(|t| g.eval_f64_unchecked(&flow.apply(t, p)), 0.0, t_end)
}

/// Closed form of `−∫_0^T g(φ_t(p)) dt`: along the flow `x^j y^k` picks up
/// `e^{(k−j)t}`, which integrates termwise.
pub fn hyperbolic_flow_integral_exact(g: &Poly, pos: usize, p: &[f64]) -> f64 {
    let t_end = hyperbolic_time(p, pos);
    let (x, y) = (2 * pos, 2 * pos + 1);
    let mut acc = 0.0;
    for (m, c) in g.terms() {
        let value = Poly::term(g.n(), m.clone(), c.clone()).eval_f64_unchecked(p);
        let lam = f64::from(m.exponent(y)) - f64::from(m.exponent(x));
        acc += if lam == 0.0 {
            value * t_end
        } else {
            value * (lam * t_end).exp_m1() / lam
        };
    }
    -acc
}

/// Derivative of `s ↦ h(φ_s(p))` at `s = 0` by the five-point central stencil.
fn flow_derivative(flow: &FlowSpec, p: &[f64], h: impl Fn(&[f64]) -> f64) -> f64 {
    let at = |s: f64| h(&flow.apply(s, p));
    let d = FLOW_STEP;
    (8.0 * (at(d) - at(-d)) - (at(2.0 * d) - at(-2.0 * d))) / (12.0 * d)
}

/// Checks `X(f_num) = g` for the flow-integral solution by a central difference
/// of `f_num` along the flow.
pub fn hyperbolic_flow_integral_check(
    g: &Poly,
    comp: Component,
    points: &[Vec<f64>],
    config: &QuadratureConfig,
) -> Result<CheckReport, OracleError> {
    if comp.kind != ComponentKind::Hyperbolic {
        return Err(OracleError::WrongComponent(comp));
    }
    check_points(points, g.n())?;
    let obstruction = hyperbolic_obstruction(g, comp.pos);
    if !obstruction.is_zero() {
        return Err(OracleError::Obstructed(obstruction.render()));
    }
    let (x, y) = (2 * comp.pos, 2 * comp.pos + 1);
    if let Some(index) = points.iter().position(|p| p[x] == 0.0 || p[y] == 0.0) {
        return Err(OracleError::PointInOmega { index });
    }
    let flow = FlowSpec::new(g.n(), comp, 0)?;
    let rows = par::map(points, |p| {
        let numeric = flow_derivative(&flow, p, |q| hyperbolic_flow_integral(g, comp.pos, q, config));
        let exact = g.eval_f64_unchecked(p);
        PointResidual {
            point: p.clone(),
            numeric,
            reference: exact,
            residual: (numeric - exact).abs(),
        }
    });
    Ok(CheckReport {
        label: format!("hyperbolic_flow_integral pair {}", comp.pos + 1),
        rows,
        tolerance: HYPERBOLIC_TOLERANCE.max(config.tolerance),
    })
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(mut k: u64, base: u64) -> f64 {
    let mut inv = 1.0 / base as f64;
    let mut acc = 0.0;
    while k > 0 {
        acc += (k % base) as f64 * inv;
        k /= base;
        inv /= base as f64;
    }
    acc
}

/// Halton points in `[−1, 1]^{2n}`, skipping points within [`OMEGA_MARGIN`] of
/// `x_i y_i = 0` for every pair listed in `avoid`.
pub fn sample_points(n: usize, count: usize, avoid: &[usize]) -> Vec<Vec<f64>> {
    assert!(2 * n <= PRIMES.len(), "too many variables for the Halton table");
    let mut out = Vec::with_capacity(count);
    let mut k = 1u64;
    while out.len() < count {
        let p: Vec<f64> = (0..2 * n).map(|d| 2.0 * radical_inverse(k, PRIMES[d]) - 1.0).collect();
        k += 1;
        let near_omega = avoid
            .iter()
            .any(|&pos| p[2 * pos].abs() < OMEGA_MARGIN || p[2 * pos + 1].abs() < OMEGA_MARGIN);
        if !near_omega {
            out.push(p);
        }
    }
    out
}

/// Runs the checks that apply to each component of `system` on the data `g`.
/// Hyperbolic checks use the non-kernel part of `g_i`, which is unobstructed.
pub fn verify_components(
    system: &ModelSystem,
    g: &[Poly],
    points: usize,
    config: &QuadratureConfig,
) -> Result<Vec<CheckReport>, OracleError> {
    let n = system.n();
    let mut reports = Vec::new();
    for comp in system.components() {
        let i = comp.fields()[0];
        match comp.kind {
            ComponentKind::Elliptic => {
                let pts = sample_points(n, points, &[]);
                reports.push(elliptic_average_check(&g[i], *comp, &pts, config)?);
            }
            ComponentKind::Hyperbolic => {
                let pts = sample_points(n, points, &[comp.pos]);
                let free = &g[i] - &hyperbolic_obstruction(&g[i], comp.pos);
                reports.push(hyperbolic_flow_integral_check(&free, *comp, &pts, config)?);
            }
            ComponentKind::Focus => {
                let pts = sample_points(n, points, &[]);
                reports.push(s1_average_check(&g[i + 1], *comp, &pts, config)?);
            }
        }
    }
    Ok(reports)
}

/// Random rational `p/q` with `p ∈ [−9, 9] \ {0}` and `q ∈ [1, 6]`.
pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    let mut p = 0i64;
    while p == 0 {
        p = rng.gen_range(-9..=9);
    }
    let q: i64 = rng.gen_range(1..=6);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Random polynomial in `n` pairs with up to `terms` terms of degree `<= max_degree`.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, max_degree: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let mut dense = vec![0u32; 2 * n];
        for _ in 0..d {
            dense[rng.gen_range(0..2 * n)] += 1;
        }
        p.add_term(Monomial::from_dense(&dense), random_rational(rng));
    }
    p
}

/// Forward-generated cocycle with its canonical decomposition.
#[derive(Debug, Clone)]
pub struct Instance {
    pub data: CocycleData,
    pub truth: Decomposition,
    pub seed: u64,
}

/// `g_i = k_i + X_i(H)` with commutant elements `k_i` and a sparse potential `H`
/// of degree `<= degree`, all drawn from `seed`. The ground truth is
/// `(k_i, H − Π(H))` with `Π` the joint kernel projection.
pub fn random_instance(system: &ModelSystem, degree: u32, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = system.n();
    let basis = JointKernelBasis::new(system);
    let k: Vec<Poly> = (0..system.r())
        .map(|_| {
            let terms = rng.gen_range(0..=4);
            basis.random_element(&mut rng, degree, terms)
        })
        .collect();
    let h_terms = rng.gen_range(1..=12);
    let h = random_poly(&mut rng, n, degree, h_terms);
    let g = k
        .iter()
        .zip(system.fields())
        .map(|(ki, x)| ki + &x.apply(&h))
        .collect();
    let potential = &h - &joint_kernel_projection(&h, system);
    let data = CocycleData::new(system.clone(), g).expect("shapes agree by construction");
    Instance {
        data,
        truth: Decomposition { f: k, potential },
        seed,
    }
}
