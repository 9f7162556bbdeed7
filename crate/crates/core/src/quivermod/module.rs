use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::ModuleError;
use crate::route::{Port, Route, Turn};
use crate::surface::{QuiverWithPotential, Triangulation};

/// Scalar on a basis-to-basis arrow action. `Lambda` is a symbolic nonzero
/// scalar; nothing downstream depends on its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coef {
    One,
    Lambda,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub vertex: usize,
    pub tag: String,
}

/// A module given on a basis: each arrow sends basis vectors to scalar
/// multiples of basis vectors (string, band and injective modules all have
/// this shape when band blocks have size 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPModule {
    pub num_vertices: usize,
    /// Quiver arrows as `(source, target)`.
    pub arrows: Vec<(usize, usize)>,
    pub atoms: Vec<Atom>,
    /// For each arrow, `(from atom, scalar, to atom)`.
    pub action: Vec<Vec<(usize, Coef, usize)>>,
}

impl QPModule {
    pub fn zero(qp: &QuiverWithPotential) -> Self {
        QPModule {
            num_vertices: qp.num_vertices,
            arrows: qp.arrows.iter().map(|a| (a.source, a.target)).collect(),
            atoms: Vec::new(),
            action: alloc::vec![Vec::new(); qp.arrows.len()],
        }
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        let mut d = alloc::vec![0; self.num_vertices];
        for a in &self.atoms {
            d[a.vertex] += 1;
        }
        d
    }

    pub fn total_dim(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_basis_shaped(&self) -> bool {
        self.action.iter().all(|act| {
            let mut from: Vec<usize> = act.iter().map(|x| x.0).collect();
            from.sort_unstable();
            from.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Whether every composite `b ∘ a` listed in `zero` kills every basis
    /// vector. With basis-shaped maps and unit scalars no cancellation can
    /// occur, so it is enough to look for a two-step path.
    pub fn satisfies_relations(&self, zero: &[(usize, usize)]) -> bool {
        zero.iter().all(|&(a, b)| {
            self.action[a].iter().all(|&(_, _, mid)| self.action[b].iter().all(|&(src, _, _)| src != mid))
        })
    }

    pub fn direct_sum(&self, o: &QPModule) -> QPModule {
        assert_eq!(self.arrows, o.arrows, "modules over different quivers");
        let off = self.atoms.len();
        let mut out = self.clone();
        out.atoms.extend(o.atoms.iter().cloned());
        for (a, act) in o.action.iter().enumerate() {
            out.action[a].extend(act.iter().map(|&(x, c, y)| (x + off, c, y + off)));
        }
        out
    }

    /// Bitmask of the atoms each atom maps to.
    pub fn successor_masks(&self) -> Result<Vec<u64>, ModuleError> {
        if self.atoms.len() > 64 {
            return Err(ModuleError::TooLarge(self.atoms.len()));
        }
        let mut m = alloc::vec![0u64; self.atoms.len()];
        for act in &self.action {
            for &(x, _, y) in act {
                m[x] |= 1 << y;
            }
        }
        Ok(m)
    }

    /// Human-readable listing of atoms and arrow actions.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (i, a) in self.atoms.iter().enumerate() {
            s.push_str(&format!("atom {i} @ {} [{}]\n", a.vertex, a.tag));
        }
        for (k, act) in self.action.iter().enumerate() {
            for &(x, c, y) in act {
                let c = match c {
                    Coef::One => "1",
                    Coef::Lambda => "λ",
                };
                let (s0, t0) = self.arrows[k];
                s.push_str(&format!("arrow {k} ({s0}->{t0}): {x} -> {c}*{y}\n"));
            }
        }
        s
    }
}

/// Arrow `arrow` walked forwards or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

/// A string (`cyclic == false`, one fewer letter than vertices) or a band
/// (`cyclic == true`, as many letters as vertices; letter `i` joins vertex
/// `i` to vertex `i + 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub vertices: Vec<usize>,
    pub letters: Vec<Letter>,
    pub cyclic: bool,
}

impl Word {
    /// Checks the string axioms: no letter followed by its inverse, and no
    /// two consecutive letters of the same direction forming a zero
    /// relation.
    pub fn check(&self, zero: &[(usize, usize)]) -> Result<(), ModuleError> {
        let n = self.letters.len();
        let pairs = if self.cyclic { n } else { n.saturating_sub(1) };
        for i in 0..pairs {
            let (x, y) = (self.letters[i], self.letters[(i + 1) % n]);
            if x.arrow == y.arrow && x.inverse != y.inverse {
                return Err(ModuleError::NotAString("letter followed by its inverse"));
            }
            if !x.inverse && !y.inverse && zero.binary_search(&(x.arrow, y.arrow)).is_ok() {
                return Err(ModuleError::NotAString("contains a relation"));
            }
            if x.inverse && y.inverse && zero.binary_search(&(y.arrow, x.arrow)).is_ok() {
                return Err(ModuleError::NotAString("contains an inverse relation"));
            }
        }
        Ok(())
    }

    fn is_proper_power(&self) -> bool {
        let n = self.vertices.len();
        (1..n).any(|d| {
            n.is_multiple_of(d)
                && (0..n).all(|i| self.vertices[i] == self.vertices[(i + d) % n] && self.letters[i] == self.letters[(i + d) % n])
        })
    }
}

fn letter(qp: &QuiverWithPotential, t: &Triangulation, tri: usize, p: usize, q: usize) -> Result<Letter, ModuleError> {
    let (i, j) = (t.edge(tri, p), t.edge(tri, q));
    let turn = crate::route::Segment { tri, entry: Port::Edge(p), exit: Port::Edge(q) }.turn();
    let (src, dst, inverse) = match turn {
        Some(Turn::Right) => (i, j, false),
        Some(Turn::Left) => (j, i, true),
        None => return Err(ModuleError::NotAString("backtrack")),
    };
    let arrow = qp.arrow_in(tri, src, dst).ok_or(ModuleError::NotAString("no arrow between consecutive crossings"))?;
    Ok(Letter { arrow, inverse })
}

/// The string of an arc given as a corner-ended route: vertices are the
/// arcs crossed, letters come from the triangles in between.
pub fn string_of_arc(t: &Triangulation, qp: &QuiverWithPotential, r: &Route) -> Result<Word, ModuleError> {
    let vertices = r.crossings(t);
    let mut letters = Vec::new();
    for s in r.segments.iter().skip(1).take(vertices.len().saturating_sub(1)) {
        let (Port::Edge(p), Port::Edge(q)) = (s.entry, s.exit) else {
            return Err(ModuleError::NotAString("corner inside the route"));
        };
        letters.push(letter(qp, t, s.tri, p, q)?);
    }
    let w = Word { vertices, letters, cyclic: false };
    w.check(&qp.zero_relations())?;
    Ok(w)
}

/// The band of a closed route.
pub fn band_of_loop(t: &Triangulation, qp: &QuiverWithPotential, r: &Route) -> Result<Word, ModuleError> {
    let vertices = r.crossings(t);
    let mut letters = Vec::new();
    for s in &r.segments {
        let (Port::Edge(p), Port::Edge(q)) = (s.entry, s.exit) else {
            return Err(ModuleError::NotAString("corner on a loop"));
        };
        letters.push(letter(qp, t, s.tri, p, q)?);
    }
    let w = Word { vertices, letters, cyclic: true };
    if w.is_proper_power() {
        return Err(ModuleError::ProperPower);
    }
    w.check(&qp.zero_relations())?;
    Ok(w)
}

/// String module of a string, or band module with an `n × n` Jordan block
/// of eigenvalue `λ` on the last letter.
pub fn build_module(qp: &QuiverWithPotential, w: &Word, band_size: Option<usize>) -> QPModule {
    let mut m = QPModule::zero(qp);
    let s = w.vertices.len();
    let copies = band_size.unwrap_or(1);
    let idx = |pos: usize, r: usize| pos * copies + r;
    for (pos, &v) in w.vertices.iter().enumerate() {
        for r in 0..copies {
            let tag = if w.cyclic { format!("b{pos}.{r}") } else { format!("s{pos}") };
            m.atoms.push(Atom { vertex: v, tag });
        }
    }
    for (i, l) in w.letters.iter().enumerate() {
        let (a, b) = (i, (i + 1) % s);
        let designated = w.cyclic && i + 1 == s;
        for r in 0..copies {
            let (from, to) = if l.inverse { (idx(b, r), idx(a, r)) } else { (idx(a, r), idx(b, r)) };
            m.action[l.arrow].push((from, if designated { Coef::Lambda } else { Coef::One }, to));
            if designated && r + 1 < copies {
                let (from, to) = if l.inverse { (idx(b, r + 1), idx(a, r)) } else { (idx(a, r + 1), idx(b, r)) };
                m.action[l.arrow].push((from, Coef::One, to));
            }
        }
    }
    m
}
