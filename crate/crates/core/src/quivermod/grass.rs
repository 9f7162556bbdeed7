use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use super::{ModuleError, QPModule};
use crate::algebra::LaurentPoly;

/// Euler characteristics of quiver Grassmannians, by dimension vector.
/// Only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChiTable {
    pub entries: BTreeMap<Vec<usize>, i64>,
}

impl ChiTable {
    pub fn get(&self, e: &[usize]) -> i64 {
        self.entries.get(e).copied().unwrap_or(0)
    }

    pub fn add(&mut self, e: Vec<usize>, v: i64) {
        use alloc::collections::btree_map::Entry;
        match self.entries.entry(e) {
            Entry::Vacant(slot) => {
                if v != 0 {
                    slot.insert(v);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += v;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    /// `Σ χ(e) X^e`.
    pub fn to_poly(&self, nvars: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(nvars);
        for (e, &c) in &self.entries {
            p.add_term(e.iter().map(|&x| 2 * x as i32).collect(), BigRational::from_integer(c.into()));
        }
        p
    }

    /// Inverse of [`ChiTable::to_poly`]; `None` unless the polynomial has
    /// nonnegative integer exponents and integer coefficients.
    pub fn from_poly(p: &LaurentPoly) -> Option<ChiTable> {
        let mut t = ChiTable::default();
        for (e, c) in p.terms() {
            if !c.is_integer() || e.iter().any(|&x| x < 0 || x % 2 != 0) {
                return None;
            }
            let v: i64 = c.to_integer().try_into().ok()?;
            t.add(e.iter().map(|&x| (x / 2) as usize).collect(), v);
        }
        Some(t)
    }

    /// Lines `(e1,…,en): χ`, sorted, one per nonzero entry.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (e, v) in &self.entries {
            let parts: Vec<String> = e.iter().map(|x| format!("{x}")).collect();
            s.push_str(&format!("({}): {}\n", parts.join(","), v));
        }
        s
    }
}

fn closure(step: &[u64], x: usize) -> u64 {
    let mut seen = 1u64 << x;
    let mut frontier = seen;
    while frontier != 0 {
        let mut nf = 0;
        let mut f = frontier;
        while f != 0 {
            let i = f.trailing_zeros() as usize;
            f &= f - 1;
            nf |= step[i];
        }
        frontier = nf & !seen;
        seen |= nf;
    }
    seen
}

/// Calls `visit` on every arrow-closed subset of the basis, as a bitmask.
pub(crate) fn for_each_closed_subset(m: &QPModule, mut visit: impl FnMut(u64)) -> Result<(), ModuleError> {
    if !m.is_basis_shaped() {
        return Err(ModuleError::NotBasisShaped);
    }
    let succ = m.successor_masks()?;
    let n = succ.len();
    let mut pred = vec![0u64; n];
    for (x, &s) in succ.iter().enumerate() {
        let mut f = s;
        while f != 0 {
            let y = f.trailing_zeros() as usize;
            f &= f - 1;
            pred[y] |= 1 << x;
        }
    }
    let up: Vec<u64> = (0..n).map(|x| closure(&succ, x)).collect();
    let down: Vec<u64> = (0..n).map(|x| closure(&pred, x)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut stack = vec![(0u64, 0u64)];
    while let Some((inc, exc)) = stack.pop() {
        let undecided = all & !(inc | exc);
        if undecided == 0 {
            visit(inc);
            continue;
        }
        let x = undecided.trailing_zeros() as usize;
        let (i2, e2) = (inc, exc | down[x]);
        if e2 & inc == 0 {
            stack.push((i2, e2));
        }
        let i1 = inc | up[x];
        if i1 & exc == 0 {
            stack.push((i1, exc));
        }
    }
    Ok(())
}

pub(crate) fn mask_dims(m: &QPModule, mask: u64) -> Vec<usize> {
    let mut d = vec![0; m.num_vertices];
    let mut f = mask;
    while f != 0 {
        let i = f.trailing_zeros() as usize;
        f &= f - 1;
        d[m.atoms[i].vertex] += 1;
    }
    d
}

/// Counts arrow-closed subsets of the basis by dimension vector. For
/// basis-shaped modules these are the torus-fixed points of the quiver
/// Grassmannians, so the counts are their Euler characteristics.
pub fn chi_table(m: &QPModule) -> Result<ChiTable, ModuleError> {
    let mut t = ChiTable::default();
    for_each_closed_subset(m, |mask| t.add(mask_dims(m, mask), 1))?;
    Ok(t)
}

pub fn grassmannian_chi(m: &QPModule, e: &[usize]) -> Result<i64, ModuleError> {
    Ok(chi_table(m)?.get(e))
}

/// `χ(Gr°_e)` for a weight-one band module whose dimensions are all at most
/// one: zero exactly when some arrow acting between two basis vectors has
/// `e = 1` at its source and `e = 0` at its target.
pub fn transverse_chi_band_w1(m: &QPModule, e: &[usize]) -> i64 {
    let d = m.dim_vector();
    assert!(d.iter().all(|&x| x <= 1), "band module with a dimension above one");
    if e.iter().zip(&d).any(|(a, b)| a > b) {
        return 0;
    }
    for act in &m.action {
        for &(x, _, y) in act {
            let (i, j) = (m.atoms[x].vertex, m.atoms[y].vertex);
            if e[i] == 1 && e[j] == 0 {
                return 0;
            }
        }
    }
    1
}
