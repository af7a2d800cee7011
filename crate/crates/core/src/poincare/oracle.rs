//! Independent solver: exact linear algebra on real monomials.
//!
//! The monomials reachable from the data under the model fields and their
//! transposes split into small blocks invariant under every field. On each block
//! the joint kernel `K` is computed as a null space, and the system
//!
//! ```text
//! X_i(G) + f_i = g_i,   f_i ∈ K,   <G, k>_F = 0 for k ∈ K
//! ```
//!
//! is solved by elimination, where `<x^a, x^b>_F = a! δ_ab` is the Fischer inner
//! product. The model fields are normal for it (their adjoints are the transposed
//! fields and commute with them), so its orthogonal complement of `K` is the sum
//! of the nonzero joint eigenspaces, which is the canonical normalization.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_rational::BigRational;
use num_traits::Zero;

use super::{CocycleData, Decomposition, PoincareError};
use crate::linsolve;
use crate::par;
use crate::poly::{Monomial, Poly};
use crate::williamson::Derivation;

fn blocks(support: &BTreeSet<Monomial>, ops: &[Derivation]) -> Vec<Vec<Monomial>> {
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut out = Vec::new();
    for start in support {
        if seen.contains(start) {
            continue;
        }
        let mut block = Vec::new();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start.clone());
        while let Some(m) = queue.pop_front() {
            for op in ops {
                for (mm, _) in op.apply_monomial(&m) {
                    if seen.insert(mm.clone()) {
                        queue.push_back(mm);
                    }
                }
            }
            block.push(m);
        }
        block.sort();
        out.push(block);
    }
    out
}

/// Solves `g_i = f_i + X_i(G)` by exact elimination, restricted to monomials of
/// degree at most `max_degree`.
pub fn oracle_solve(data: &CocycleData, max_degree: u32) -> Result<Decomposition, PoincareError> {
    let n = data.system.n();
    let r = data.system.r();
    let fields = data.system.fields();
    if data.max_degree() > max_degree {
        return Err(PoincareError::Oracle(format!(
            "data has degree {} above the oracle bound {max_degree}",
            data.max_degree()
        )));
    }
    let mut ops: Vec<Derivation> = fields.to_vec();
    ops.extend(fields.iter().map(Derivation::transpose));
    let support: BTreeSet<Monomial> = data
        .g
        .iter()
        .flat_map(|g| g.terms().map(|(m, _)| m.clone()))
        .collect();
    let blocks = blocks(&support, &ops);

    let results = par::map(&blocks, |block| solve_block(block, data, fields));

    let mut f = vec![Poly::zero(n); r];
    let mut potential = Poly::zero(n);
    for res in results {
        let (block_f, block_g) = res?;
        for (acc, terms) in f.iter_mut().zip(block_f) {
            for (m, c) in terms {
                acc.add_term(m, c);
            }
        }
        for (m, c) in block_g {
            potential.add_term(m, c);
        }
    }
    Ok(Decomposition { f, potential })
}

type BlockTerms = Vec<(Monomial, BigRational)>;

fn solve_block(
    block: &[Monomial],
    data: &CocycleData,
    fields: &[Derivation],
) -> Result<(Vec<BlockTerms>, BlockTerms), PoincareError> {
    let b = block.len();
    let r = fields.len();
    let index: HashMap<&Monomial, usize> = block.iter().enumerate().map(|(i, m)| (m, i)).collect();

    // field matrices on the block: column = image of a basis monomial
    let mats: Vec<Vec<Vec<BigRational>>> = fields
        .iter()
        .map(|x| {
            let mut mat = vec![vec![BigRational::zero(); b]; b];
            for (col, m) in block.iter().enumerate() {
                for (mm, c) in x.apply_monomial(m) {
                    let row = *index.get(&mm).expect("block is closed under the fields");
                    mat[row][col] += c;
                }
            }
            mat
        })
        .collect();

    let stacked: Vec<Vec<BigRational>> = mats.iter().flatten().cloned().collect();
    let kernel = linsolve::nullspace(&stacked, b).map_err(|e| PoincareError::Oracle(e.to_string()))?;
    let kdim = kernel.len();

    // unknowns: G (b), then c_{i,t} for f_i = sum_t c_{i,t} kernel[t]
    let nunk = b + r * kdim;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    for (i, mat) in mats.iter().enumerate() {
        for (row, m) in block.iter().enumerate() {
            let mut eq = vec![BigRational::zero(); nunk];
            eq[..b].clone_from_slice(&mat[row]);
            for (t, kv) in kernel.iter().enumerate() {
                eq[b + i * kdim + t] = kv[row].clone();
            }
            rows.push(eq);
            rhs.push(data.g[i].coeff(m));
        }
    }
    let weights: Vec<BigRational> = block
        .iter()
        .map(|m| BigRational::from_integer(m.factorial_weight()))
        .collect();
    for kv in &kernel {
        let mut eq = vec![BigRational::zero(); nunk];
        for (col, w) in weights.iter().enumerate() {
            eq[col] = &kv[col] * w;
        }
        rows.push(eq);
        rhs.push(BigRational::zero());
    }

    let sol = linsolve::solve(&rows, &rhs).map_err(|e| PoincareError::Oracle(e.to_string()))?;
    if sol.free > 0 {
        return Err(PoincareError::Oracle(format!(
            "block of size {b} leaves {} unknowns undetermined",
            sol.free
        )));
    }

    let g_terms: BlockTerms = block
        .iter()
        .zip(&sol.x[..b])
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    let mut f_terms = Vec::with_capacity(r);
    for i in 0..r {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (t, kv) in kernel.iter().enumerate() {
            let c = &sol.x[b + i * kdim + t];
            if c.is_zero() {
                continue;
            }
            for (m, v) in block.iter().zip(kv) {
                if !v.is_zero() {
                    *acc.entry(m.clone()).or_insert_with(BigRational::zero) += c * v;
                }
            }
        }
        f_terms.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
    }
    Ok((f_terms, g_terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poincare::solve;
    use crate::poly::int;
    use crate::williamson::{ModelSystem, WilliamsonType};

    #[test]
    fn zero_data() {
        let sys = ModelSystem::standard(WilliamsonType::new(1, 1, 0, 2).unwrap()).unwrap();
        let data = CocycleData::new(sys, vec![Poly::zero(2), Poly::zero(2)]).unwrap();
        let dec = oracle_solve(&data, 4).unwrap();
        assert!(dec.f.iter().all(Poly::is_zero));
        assert!(dec.potential.is_zero());
    }

    #[test]
    fn agrees_on_focus_example() {
        let sys = ModelSystem::standard(WilliamsonType::new(0, 0, 1, 2).unwrap()).unwrap();
        let data = CocycleData::new(sys, vec![Poly::x(2, 1), -&Poly::x(2, 2)]).unwrap();
        assert_eq!(oracle_solve(&data, 1).unwrap(), solve(&data).unwrap());
    }

    #[test]
    fn agrees_on_elliptic_square() {
        let sys = ModelSystem::standard(WilliamsonType::new(1, 0, 0, 1).unwrap()).unwrap();
        let g = &Poly::x(1, 1).pow(2) + &(&Poly::x(1, 1) * &Poly::y(1, 1)).scale(&int(3));
        let data = CocycleData::new(sys, vec![g]).unwrap();
        assert_eq!(oracle_solve(&data, 2).unwrap(), solve(&data).unwrap());
    }

    #[test]
    fn inconsistent_data_fails() {
        let sys = ModelSystem::standard(WilliamsonType::new(1, 1, 0, 2).unwrap()).unwrap();
        let data = CocycleData::new(sys, vec![Poly::x(2, 2), Poly::zero(2)]).unwrap();
        assert!(matches!(oracle_solve(&data, 2), Err(PoincareError::Oracle(_))));
    }

    #[test]
    fn degree_bound_enforced() {
        let sys = ModelSystem::standard(WilliamsonType::new(1, 0, 0, 1).unwrap()).unwrap();
        let data = CocycleData::new(sys, vec![Poly::x(1, 1).pow(3)]).unwrap();
        assert!(oracle_solve(&data, 2).is_err());
    }
}
