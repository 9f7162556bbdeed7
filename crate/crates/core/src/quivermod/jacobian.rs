use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::ModuleError;
use crate::surface::QuiverWithPotential;

/// Basis of `J(Q(T), W(T))` by paths avoiding the zero relations. A path is
/// a list of arrow indices in the order they are traversed; the trivial
/// path at `i` is the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobianBasis {
    pub paths: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
}

impl JacobianBasis {
    pub fn paths_between(&self, i: usize, j: usize) -> &[Vec<usize>] {
        self.paths.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn dimension(&self) -> usize {
        self.paths.values().map(Vec::len).sum()
    }
}

/// Enumerates the path basis. Each arrow lies in at most one 3-cycle of the
/// potential, so every relation is a monomial `b ∘ a`.
pub fn jacobian_basis(qp: &QuiverWithPotential) -> Result<JacobianBasis, ModuleError> {
    let n = qp.num_vertices;
    for v in 0..n {
        let outs = qp.arrows.iter().filter(|a| a.source == v).count();
        let ins = qp.arrows.iter().filter(|a| a.target == v).count();
        if outs > 2 || ins > 2 {
            return Err(ModuleError::NotGentle(v));
        }
    }
    let zero = qp.zero_relations();
    let limit = qp.arrows.len() + 1;
    let mut paths: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for &v in &qp.arcs {
        let mut stack: Vec<(Vec<usize>, usize)> = alloc::vec![(Vec::new(), v)];
        while let Some((p, end)) = stack.pop() {
            if p.len() > limit {
                return Err(ModuleError::NonTerminating(limit));
            }
            for (b, arr) in qp.arrows.iter().enumerate().rev() {
                if arr.source != end {
                    continue;
                }
                if let Some(&a) = p.last() {
                    if zero.binary_search(&(a, b)).is_ok() {
                        continue;
                    }
                }
                let mut q = p.clone();
                q.push(b);
                stack.push((q, arr.target));
            }
            paths.entry((v, end)).or_default().push(p);
        }
    }
    for ps in paths.values_mut() {
        ps.sort();
    }
    Ok(JacobianBasis { paths })
}
