//! The decomposition `g_i = f_i + X_i(G)` for cocycle data
//! `X_i(g_j) = X_j(g_i)`, with `X_j(f_i) = 0`.
//!
//! [`solve`] processes one model component at a time: elliptic components first,
//! then hyperbolic ones, then focus-focus pairs. At each step the component's own
//! function(s) are split with the matching splitter, the potential is added to `G`
//! and every `g_i` is corrected by `X_i` of it. The flat corrections that the
//! smooth theory needs between steps vanish identically for polynomials; each such
//! site checks that the would-be flat residual is exactly zero.
//!
//! The theory is usually stated for `r < n` in the inductive argument; nothing here
//! depends on that and `r = n` is fully supported.
//!
//! Outputs are canonical: `f_i` is the joint-kernel projection of `g_i` and `G`
//! has no joint-kernel component, so the result is unique and linear in the data.

mod kernel;
mod oracle;

use crate::par;
use crate::poly::{Poly, PolyError};
use crate::splitters::{self, SplitError};
use crate::williamson::{ComponentKind, ModelSystem};

pub use kernel::{joint_kernel_projection, kernel_rewrite, JointKernelBasis, KernelPoly};
pub use oracle::oracle_solve;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PoincareError {
    #[error("malformed cocycle data: {0}")]
    Shape(String),
    #[error("cocycle condition fails for {failing} pair(s); first: X_{i}(g_{j}) - X_{j}(g_{i}) = {residual}", i = .first.0 + 1, j = .first.1 + 1)]
    CocycleViolation {
        failing: usize,
        first: (usize, usize),
        residual: String,
    },
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error("flat residual X_{field}(g_{function}) is nonzero after component {component}", field = .field + 1, function = .function + 1)]
    FlatResidual {
        component: usize,
        field: usize,
        function: usize,
    },
    #[error("polynomial is not in the joint kernel: {0}")]
    NotInKernel(String),
    #[error("oracle linear system: {0}")]
    Oracle(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Functions `g_1..g_r` attached to the fields of a model system.
#[derive(Debug, Clone)]
pub struct CocycleData {
    pub system: ModelSystem,
    pub g: Vec<Poly>,
}

impl CocycleData {
    pub fn new(system: ModelSystem, g: Vec<Poly>) -> Result<Self, PoincareError> {
        if g.len() != system.r() {
            return Err(PoincareError::Shape(format!(
                "{} functions for r = {} fields",
                g.len(),
                system.r()
            )));
        }
        if let Some(p) = g.iter().find(|p| p.n() != system.n()) {
            return Err(PoincareError::Shape(format!(
                "function in n = {} for system with n = {}",
                p.n(),
                system.n()
            )));
        }
        Ok(CocycleData { system, g })
    }

    pub fn max_degree(&self) -> u32 {
        self.g.iter().filter_map(Poly::total_degree).max().unwrap_or(0)
    }
}

/// Residual `X_i(g_j) − X_j(g_i)` for one pair `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairResidual {
    pub i: usize,
    pub j: usize,
    pub residual: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleReport {
    pub pairs: Vec<PairResidual>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.residual.is_zero())
    }

    pub fn failing(&self) -> impl Iterator<Item = &PairResidual> {
        self.pairs.iter().filter(|p| !p.residual.is_zero())
    }

    fn into_result(self) -> Result<(), PoincareError> {
        let failing: Vec<&PairResidual> = self.failing().collect();
        match failing.first() {
            None => Ok(()),
            Some(first) => Err(PoincareError::CocycleViolation {
                failing: failing.len(),
                first: (first.i, first.j),
                residual: first.residual.render(),
            }),
        }
    }
}

/// Exact check of `X_i(g_j) = X_j(g_i)` for every pair.
pub fn check_cocycle(data: &CocycleData) -> CocycleReport {
    let x = data.system.fields();
    let r = data.g.len();
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let residual = &x[i].apply(&data.g[j]) - &x[j].apply(&data.g[i]);
            pairs.push(PairResidual { i, j, residual });
        }
    }
    CocycleReport { pairs }
}

/// `g_i = f_i + X_i(potential)` with every `f_i` in the joint kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub f: Vec<Poly>,
    pub potential: Poly,
}

/// Exact residuals of a candidate decomposition.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    /// `g_i − f_i − X_i(G)` per `i`.
    pub reconstruction: Vec<Poly>,
    /// `(i, j, X_j(f_i))` for every nonzero entry.
    pub kernel_violations: Vec<(usize, usize, Poly)>,
    /// Joint-kernel component of `G`.
    pub potential_kernel_part: Poly,
}

impl DecompositionReport {
    pub fn sound(&self) -> bool {
        self.reconstruction.iter().all(Poly::is_zero) && self.kernel_violations.is_empty()
    }

    pub fn canonical(&self) -> bool {
        self.potential_kernel_part.is_zero()
    }
}

pub fn verify_decomposition(data: &CocycleData, dec: &Decomposition) -> DecompositionReport {
    let x = data.system.fields();
    let reconstruction = data
        .g
        .iter()
        .zip(&dec.f)
        .zip(x)
        .map(|((g, f), xi)| &(g - f) - &xi.apply(&dec.potential))
        .collect();
    let mut kernel_violations = Vec::new();
    for (i, f) in dec.f.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            let v = xj.apply(f);
            if !v.is_zero() {
                kernel_violations.push((i, j, v));
            }
        }
    }
    DecompositionReport {
        reconstruction,
        kernel_violations,
        potential_kernel_part: joint_kernel_projection(&dec.potential, &data.system),
    }
}

/// Default processing order: the system's component list (elliptic, hyperbolic, focus).
pub fn default_order(system: &ModelSystem) -> Vec<usize> {
    let comps = system.components();
    let rank = |k: ComponentKind| match k {
        ComponentKind::Elliptic => 0,
        ComponentKind::Hyperbolic => 1,
        ComponentKind::Focus => 2,
    };
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by_key(|&c| (rank(comps[c].kind), comps[c].pos));
    order
}

pub fn solve(data: &CocycleData) -> Result<Decomposition, PoincareError> {
    solve_with_order(data, &default_order(&data.system))
}

/// Solves with the components processed in `order` (indices into the system's
/// component list). Each homogeneous degree is handled independently.
pub fn solve_with_order(data: &CocycleData, order: &[usize]) -> Result<Decomposition, PoincareError> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..data.system.components().len()).collect::<Vec<_>>() {
        return Err(PoincareError::Shape(format!("{order:?} is not a component ordering")));
    }
    check_cocycle(data).into_result()?;

    let mut degrees: Vec<u32> = data
        .g
        .iter()
        .flat_map(|g| g.terms().map(|(m, _)| m.degree()))
        .collect();
    degrees.sort_unstable();
    degrees.dedup();

    let parts = par::map(&degrees, |&d| {
        let g_d: Vec<Poly> = data
            .g
            .iter()
            .map(|g| g.filter_terms(|m, _| m.degree() == d))
            .collect();
        solve_homogeneous(&data.system, g_d, order)
    });

    let n = data.system.n();
    let bound = data.g.first().and_then(Poly::degree_bound);
    let mut f = vec![Poly::zero(n).with_degree_bound(bound); data.g.len()];
    let mut potential = Poly::zero(n).with_degree_bound(bound);
    for part in parts {
        let part = part?;
        for (acc, fi) in f.iter_mut().zip(part.f) {
            *acc = std::mem::replace(acc, Poly::zero(n)) + fi;
        }
        potential = potential + part.potential;
    }
    Ok(Decomposition { f, potential })
}

fn solve_homogeneous(system: &ModelSystem, mut g: Vec<Poly>, order: &[usize]) -> Result<Decomposition, PoincareError> {
    let n = system.n();
    let x = system.fields();
    let mut potential = Poly::zero(n).with_degree_bound(g.first().and_then(Poly::degree_bound));
    let mut processed: Vec<usize> = Vec::new();
    for &ci in order {
        let comp = system.components()[ci];
        let step = match comp.kind {
            ComponentKind::Elliptic => splitters::elliptic_split(&g[comp.pos], comp.pos).potential,
            ComponentKind::Hyperbolic => splitters::hyperbolic_split(&g[comp.pos], comp.pos).potential,
            ComponentKind::Focus => {
                splitters::focus_split(&g[comp.pos], &g[comp.pos + 1], comp.pos)?.potential
            }
        };
        if !step.is_zero() {
            for (gi, xi) in g.iter_mut().zip(x) {
                let correction = xi.apply(&step);
                *gi = std::mem::replace(gi, Poly::zero(n)) - correction;
            }
            potential = potential + step;
        }
        processed.extend(comp.fields());
        // Flat-correction site: every g_i must now be invariant under all processed fields.
        for &j in &processed {
            for (i, gi) in g.iter().enumerate() {
                if !x[j].apply(gi).is_zero() {
                    return Err(PoincareError::FlatResidual {
                        component: ci,
                        field: j,
                        function: i,
                    });
                }
            }
        }
    }
    Ok(Decomposition { f: g, potential })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;
    use crate::williamson::WilliamsonType;

    fn system(t: (usize, usize, usize, usize)) -> ModelSystem {
        ModelSystem::standard(WilliamsonType::new(t.0, t.1, t.2, t.3).unwrap()).unwrap()
    }

    #[test]
    fn kernel_data_is_its_own_decomposition() {
        let sys = system((1, 1, 1, 4));
        let data = CocycleData::new(sys.clone(), sys.q().to_vec()).unwrap();
        assert!(check_cocycle(&data).passed());
        let dec = solve(&data).unwrap();
        assert_eq!(dec.f, sys.q().to_vec());
        assert!(dec.potential.is_zero());
    }

    #[test]
    fn mixed_forward_example() {
        let sys = system((1, 1, 0, 2));
        let (x1, y1, x2) = (Poly::x(2, 1), Poly::y(2, 1), Poly::x(2, 2));
        let g1 = (&y1 * &x2).scale(&int(-2));
        let g2 = -&(&x1 * &x2);
        let data = CocycleData::new(sys, vec![g1, g2]).unwrap();
        let dec = solve(&data).unwrap();
        assert!(dec.f.iter().all(Poly::is_zero));
        assert_eq!(dec.potential, &x1 * &x2);
    }

    #[test]
    fn focus_example() {
        let sys = system((0, 0, 1, 2));
        let data = CocycleData::new(sys, vec![Poly::x(2, 1), -&Poly::x(2, 2)]).unwrap();
        let dec = solve(&data).unwrap();
        assert!(dec.f.iter().all(Poly::is_zero));
        assert_eq!(dec.potential, -&Poly::x(2, 1));
    }

    #[test]
    fn cocycle_violation_reported() {
        let sys = system((1, 1, 0, 2));
        let data = CocycleData::new(sys, vec![Poly::x(2, 2), Poly::zero(2)]).unwrap();
        let report = check_cocycle(&data);
        assert!(!report.passed());
        // X_1(0) - X_2(x2) = x2
        assert_eq!(report.pairs[0].residual, Poly::x(2, 2));
        assert!(matches!(solve(&data), Err(PoincareError::CocycleViolation { .. })));
    }

    #[test]
    fn shape_errors() {
        let sys = system((1, 0, 0, 1));
        assert!(CocycleData::new(sys.clone(), vec![]).is_err());
        assert!(CocycleData::new(sys, vec![Poly::x(2, 1)]).is_err());
    }

    #[test]
    fn rejects_bad_order() {
        let sys = system((1, 1, 0, 2));
        let data = CocycleData::new(sys.clone(), sys.q().to_vec()).unwrap();
        assert!(solve_with_order(&data, &[0, 0]).is_err());
    }
}
