//! Submodule counting over finite fields. A module of total dimension at
//! most four has quiver Grassmannians of dimension at most four, so the
//! counts at five primes pin down a polynomial in `q`; its value at `q = 1`
//! is the Euler characteristic. A sixth prime checks the polynomial fit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use skein_core::quivermod::QPModule;

pub const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
pub const CHECK_PRIME: u64 = 13;

/// A subspace of `F_p^d` in reduced row echelon form.
#[derive(Clone, Debug)]
struct Sub {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Sub {
    fn contains(&self, v: &[u64], p: u64) -> bool {
        let mut v = v.to_vec();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let k = v[c];
            if k != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + p - k * y % p) % p;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Every subspace of `F_p^d`, all dimensions.
fn subspaces(d: usize, p: u64) -> Vec<Sub> {
    let mut out = Vec::new();
    for k in 0..=d {
        for pivots in combinations(d, k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| ((pivots[r] + 1)..d).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let total = p.pow(free.len() as u32);
            for mut code in 0..total {
                let mut rows = vec![vec![0u64; d]; k];
                for (r, &c) in pivots.iter().enumerate() {
                    rows[r][c] = 1;
                }
                for &(r, c) in &free {
                    rows[r][c] = code % p;
                    code /= p;
                }
                out.push(Sub { rows, pivots: pivots.clone() });
            }
        }
    }
    out
}

/// Arrow matrices of `m` over `F_p` with `λ = 1`, as `maps[a][row][col]`.
fn matrices(m: &QPModule, p: u64) -> Vec<Vec<Vec<u64>>> {
    let dims = m.dim_vector();
    let mut local = vec![0; m.atoms.len()];
    let mut seen = vec![0; m.num_vertices];
    for (x, a) in m.atoms.iter().enumerate() {
        local[x] = seen[a.vertex];
        seen[a.vertex] += 1;
    }
    m.arrows
        .iter()
        .zip(&m.action)
        .map(|(&(s, t), act)| {
            let mut q = vec![vec![0u64; dims[s]]; dims[t]];
            for &(x, _, y) in act {
                q[local[y]][local[x]] = (q[local[y]][local[x]] + 1) % p;
            }
            q
        })
        .collect()
}

/// Number of `F_p`-points of every quiver Grassmannian of `m`.
pub fn count_submodules(m: &QPModule, p: u64) -> BTreeMap<Vec<usize>, u64> {
    let dims = m.dim_vector();
    let maps = matrices(m, p);
    let subs: Vec<Vec<Sub>> = dims.iter().map(|&d| subspaces(d, p)).collect();
    let mut counts = BTreeMap::new();
    let mut choice = vec![0usize; dims.len()];
    loop {
        let closed = m.arrows.iter().enumerate().all(|(a, &(s, t))| {
            let (us, ut) = (&subs[s][choice[s]], &subs[t][choice[t]]);
            us.rows.iter().all(|u| {
                let image: Vec<u64> = maps[a].iter().map(|row| row.iter().zip(u).map(|(x, y)| x * y).sum::<u64>() % p).collect();
                ut.contains(&image, p)
            })
        });
        if closed {
            let e: Vec<usize> = (0..dims.len()).map(|i| subs[i][choice[i]].rows.len()).collect();
            *counts.entry(e).or_insert(0) += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == dims.len() {
                return counts;
            }
            choice[i] += 1;
            if choice[i] < subs[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Lagrange interpolation through `(x_i, y_i)`, evaluated at `x`.
fn interpolate(points: &[(u64, u64)], x: u64) -> BigRational {
    let r = |v: u64| BigRational::from_integer(BigInt::from(v));
    let mut total = r(0);
    for (i, &(xi, yi)) in points.iter().enumerate() {
        let mut term = r(yi);
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i != j {
                term = term * (r(x) - r(xj)) / (r(xi) - r(xj));
            }
        }
        total += term;
    }
    total
}

/// `χ(Gr_e M)` for every `e` with a nonzero count. Fails if the counts are
/// not a polynomial of degree at most four in `q`.
pub fn chi_by_counting(m: &QPModule) -> Result<BTreeMap<Vec<usize>, i64>, String> {
    let tables: Vec<_> = PRIMES.iter().map(|&p| count_submodules(m, p)).collect();
    let check = count_submodules(m, CHECK_PRIME);
    let mut keys: Vec<&Vec<usize>> = tables.iter().flat_map(|t| t.keys()).chain(check.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut out = BTreeMap::new();
    for e in keys {
        let pts: Vec<(u64, u64)> = PRIMES.iter().zip(&tables).map(|(&p, t)| (p, t.get(e).copied().unwrap_or(0))).collect();
        let predicted = interpolate(&pts, CHECK_PRIME);
        let actual = check.get(e).copied().unwrap_or(0);
        if predicted != BigRational::from_integer(BigInt::from(actual)) {
            return Err(format!("counts at {e:?} are not polynomial in q"));
        }
        let at_one = interpolate(&pts, 1);
        if !at_one.is_integer() {
            return Err(format!("fractional value at q = 1 for {e:?}"));
        }
        let v: i64 = at_one.to_integer().try_into().map_err(|_| "overflow".to_string())?;
        if v != 0 {
            out.insert(e.clone(), v);
        }
    }
    Ok(out)
}
