//! Digraphs of matrices and their cyclically h-partite structure.
//!
//! Every arc `(i, j)` of a cyclically h-partite digraph runs from some class
//! `V_ℓ` to `V_{ℓ+1}` (with `V_{h+1} = V_1`). Assigning each vertex an integer
//! potential that increases by one along every arc shows that such a labelling
//! exists exactly when `h` divides the discrepancy `pot(i) + 1 - pot(j)` of
//! every arc. The gcd of those discrepancies is the cyclic index.
//!
//! All vertex labels are 1-based.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Tolerance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("digraph needs at least one vertex".into()));
        }
        let arcs: BTreeSet<_> = arcs.into_iter().collect();
        if let Some(&(i, j)) = arcs.iter().find(|&&(i, j)| i == 0 || j == 0 || i > n || j > n) {
            return Err(Error::IndexOutOfRange(format!("arc ({i}, {j}) with n = {n}")));
        }
        Ok(Digraph { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.arcs.contains(&(i, j))
    }
}

/// Arc `(i, j)` whenever `|a_ij| > eps`.
pub fn digraph_of(a: &ComplexMatrix, tol: Tolerance) -> Result<Digraph> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "digraph of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let arcs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !tol.is_zero(a[(i, j)]))
        .map(|(i, j)| (i + 1, j + 1));
    Digraph::new(n, arcs)
}

/// Ordered partition `(V_1, …, V_h)` of `1..=n` into nonempty classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl CyclicPartition {
    /// Validates that the classes are nonempty, disjoint and cover `1..=n`.
    /// Members are sorted within each class; class order is kept.
    pub fn new(classes: Vec<Vec<usize>>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::InvalidPartition("no classes".into()));
        }
        let n: usize = classes.iter().map(Vec::len).sum();
        let mut class_of = vec![0usize; n];
        let mut classes = classes;
        for (ci, class) in classes.iter_mut().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidPartition(format!("class {} is empty", ci + 1)));
            }
            class.sort_unstable();
            for &v in class.iter() {
                if v == 0 || v > n {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} outside 1..={n}"
                    )));
                }
                if class_of[v - 1] != 0 {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                class_of[v - 1] = ci + 1;
            }
        }
        Ok(CyclicPartition { classes, class_of })
    }

    /// Consecutive partition with the given class sizes.
    pub fn consecutive(sizes: &[usize]) -> Result<Self> {
        let mut start = 1;
        let classes = sizes
            .iter()
            .map(|&s| {
                let c: Vec<usize> = (start..start + s).collect();
                start += s;
                c
            })
            .collect();
        Self::new(classes)
    }

    /// Single class holding every vertex.
    pub fn trivial(n: usize) -> Result<Self> {
        Self::consecutive(&[n])
    }

    pub fn h(&self) -> usize {
        self.classes.len()
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Members of `V_i` (1-based class index).
    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i - 1]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// 1-based class index of vertex `v`.
    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v - 1]
    }

    /// The h-cycle `α(i) = i mod h + 1` applied `p` times (`p` may be negative).
    pub fn alpha_pow(&self, i: usize, p: i64) -> usize {
        let h = self.h() as i64;
        ((i as i64 - 1 + p).rem_euclid(h) + 1) as usize
    }

    pub fn alpha(&self, i: usize) -> usize {
        self.alpha_pow(i, 1)
    }

    /// `α_ij = (i − j) mod h`.
    pub fn exponent(&self, i: i64, j: i64) -> usize {
        (i - j).rem_euclid(self.h() as i64) as usize
    }

    pub fn is_consecutive(&self) -> bool {
        self.classes
            .iter()
            .flatten()
            .enumerate()
            .all(|(pos, &v)| v == pos + 1)
    }

    /// Checks that this partition is over `1..=n`.
    pub fn check_order(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::InvalidPartition(format!(
                "partition covers 1..={} but the matrix has order {n}",
                self.n()
            )));
        }
        Ok(())
    }

    /// Whether every arc of `g` runs from `V_ℓ` to `V_{ℓ+1}`.
    pub fn respects(&self, g: &Digraph) -> Result<bool> {
        Ok(self.first_violation(g)?.is_none())
    }

    fn first_violation(&self, g: &Digraph) -> Result<Option<(usize, usize)>> {
        self.check_order(g.n())?;
        Ok(g
            .arcs()
            .find(|&(i, j)| self.alpha(self.class_of(i)) != self.class_of(j)))
    }

    /// Same partition with class labels shifted so that vertex 1 sits in `V_1`.
    fn canonical(self) -> Self {
        let shift = self.class_of(1) - 1;
        if shift == 0 {
            return self;
        }
        let mut classes = self.classes;
        classes.rotate_left(shift);
        CyclicPartition::new(classes).expect("rotation keeps a valid partition")
    }
}

/// Whether every arc of the digraph of `a` runs from `V_ℓ` to `V_{ℓ+1}`.
pub fn is_h_cyclic(a: &ComplexMatrix, p: &CyclicPartition, tol: Tolerance) -> Result<bool> {
    let g = digraph_of(a, tol)?;
    p.respects(&g)
}

/// Like [`is_h_cyclic`] but reports the first offending arc.
pub fn ensure_h_cyclic(a: &ComplexMatrix, p: &CyclicPartition, tol: Tolerance) -> Result<()> {
    let g = digraph_of(a, tol)?;
    match p.first_violation(&g)? {
        None => Ok(()),
        Some((i, j)) => Err(Error::NotCyclic(i, j)),
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Integer potentials per weakly connected component and each component's gcd.
struct Potentials {
    pot: Vec<i64>,
    /// component id per vertex (0-based)
    comp: Vec<usize>,
    /// vertices of each component in discovery order
    members: Vec<Vec<usize>>,
    /// gcd of arc discrepancies per component, 0 when unconstrained
    comp_gcd: Vec<u64>,
}

fn potentials(g: &Digraph) -> Potentials {
    let n = g.n();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (i, j) in g.arcs() {
        adj[i - 1].push((j - 1, 1));
        adj[j - 1].push((i - 1, -1));
    }
    let mut pot = vec![0i64; n];
    let mut comp = vec![usize::MAX; n];
    let mut members = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut list = vec![start];
        comp[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(w, d) in &adj[u] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    pot[w] = pot[u] + d;
                    list.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.push(list);
    }
    let mut comp_gcd = vec![0u64; members.len()];
    for (i, j) in g.arcs() {
        let d = (pot[i - 1] + 1 - pot[j - 1]).unsigned_abs();
        let c = comp[i - 1];
        comp_gcd[c] = gcd(comp_gcd[c], d);
    }
    Potentials {
        pot,
        comp,
        members,
        comp_gcd,
    }
}

/// Gcd of `|pot(i) + 1 − pot(j)|` over all arcs; 0 means no cyclic constraint.
///
/// A cyclically h-partite labelling (possibly with empty classes) exists iff
/// `h` divides the returned value. A self-loop forces 1.
pub fn cyclic_index(g: &Digraph) -> u64 {
    potentials(g).comp_gcd.into_iter().fold(0, gcd)
}

/// Finds a cyclically h-partite partition with `h` nonempty classes.
///
/// The class containing vertex 1 is always `V_1`. Components are placed by a
/// backtracking search over residue offsets so that every class gets a vertex
/// whenever that is possible at all.
pub fn find_h_partition(g: &Digraph, h: usize) -> Option<CyclicPartition> {
    let n = g.n();
    if h == 0 || h > n {
        return None;
    }
    if h == 1 {
        return CyclicPartition::trivial(n).ok();
    }
    let pots = potentials(g);
    let hh = h as u64;
    if pots.comp_gcd.iter().any(|&c| c % hh != 0) {
        return None;
    }
    let hi = h as i64;
    // residues occupied by each component before shifting
    let residues: Vec<Vec<usize>> = pots
        .members
        .iter()
        .map(|m| {
            let set: BTreeSet<usize> = m.iter().map(|&v| pots.pot[v].rem_euclid(hi) as usize).collect();
            set.into_iter().collect()
        })
        .collect();

    let offsets = place_components(&residues, h)?;
    let mut classes = vec![Vec::new(); h];
    for v in 0..n {
        let c = pots.comp[v];
        let label = (pots.pot[v] + offsets[c] as i64).rem_euclid(hi) as usize;
        classes[label].push(v + 1);
    }
    CyclicPartition::new(classes).ok().map(CyclicPartition::canonical)
}

/// Chooses a cyclic shift per component so that all `h` residues are covered.
/// Component 0 (which holds vertex 1) stays unshifted.
fn place_components(residues: &[Vec<usize>], h: usize) -> Option<Vec<usize>> {
    let total: usize = residues.iter().map(Vec::len).sum();
    if total < h {
        return None;
    }
    let mut offsets = vec![0usize; residues.len()];
    let mut count = vec![0usize; h];
    for &r in &residues[0] {
        count[r] += 1;
    }
    // larger components first; they are the least flexible
    let mut order: Vec<usize> = (1..residues.len()).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(residues[c].len()));
    let remaining: Vec<usize> = {
        let mut acc = vec![0usize; order.len() + 1];
        for k in (0..order.len()).rev() {
            acc[k] = acc[k + 1] + residues[order[k]].len();
        }
        acc
    };
    if search(residues, &order, &remaining, 0, h, &mut count, &mut offsets) {
        Some(offsets)
    } else {
        None
    }
}

fn search(
    residues: &[Vec<usize>],
    order: &[usize],
    remaining: &[usize],
    depth: usize,
    h: usize,
    count: &mut [usize],
    offsets: &mut [usize],
) -> bool {
    let uncovered = count.iter().filter(|&&c| c == 0).count();
    if uncovered == 0 {
        return true;
    }
    if depth == order.len() || remaining[depth] < uncovered {
        return false;
    }
    let c = order[depth];
    // try shifts in order of how many new residues they cover
    let mut shifts: Vec<(usize, usize)> = (0..h)
        .map(|s| {
            let gain = residues[c].iter().filter(|&&r| count[(r + s) % h] == 0).count();
            (s, gain)
        })
        .collect();
    shifts.sort_by_key(|&(s, gain)| (std::cmp::Reverse(gain), s));
    let mut tried_zero_gain = false;
    for (s, gain) in shifts {
        if gain == 0 {
            // all zero-gain shifts are equivalent for coverage
            if tried_zero_gain {
                continue;
            }
            tried_zero_gain = true;
        }
        for &r in &residues[c] {
            count[(r + s) % h] += 1;
        }
        offsets[c] = s;
        if search(residues, order, remaining, depth + 1, h, count, offsets) {
            return true;
        }
        for &r in &residues[c] {
            count[(r + s) % h] -= 1;
        }
    }
    offsets[c] = 0;
    false
}

/// Every `h` in `1..=n` for which [`find_h_partition`] succeeds, with its partition.
pub fn feasible_partitions(g: &Digraph) -> Vec<CyclicPartition> {
    (1..=g.n()).filter_map(|h| find_h_partition(g, h)).collect()
}

/// Relabelling `v ↦ σ(v)` (1-based) that lists `V_1`, then `V_2`, … in order,
/// each class in increasing vertex order. Applying it with
/// [`ComplexMatrix::permute_symmetric`] yields the consecutive block form.
pub fn consecutive_permutation(p: &CyclicPartition) -> Vec<usize> {
    let mut sigma = vec![0usize; p.n()];
    for (pos, &v) in p.classes().iter().flatten().enumerate() {
        sigma[v - 1] = pos + 1;
    }
    sigma
}

/// Image of a partition under the relabelling `v ↦ σ(v)`.
pub fn permute_partition(p: &CyclicPartition, sigma: &[usize]) -> Result<CyclicPartition> {
    if sigma.len() != p.n() {
        return Err(Error::DimensionMismatch("permutation length".into()));
    }
    crate::matrix::validate_permutation(sigma)?;
    CyclicPartition::new(
        p.classes()
            .iter()
            .map(|c| c.iter().map(|&v| sigma[v - 1]).collect())
            .collect(),
    )
}

/// Consecutive form of `(A, P)`: returns `Qᵀ A Q`, the consecutive partition
/// and the relabelling used.
pub fn to_consecutive(
    a: &ComplexMatrix,
    p: &CyclicPartition,
) -> Result<(ComplexMatrix, CyclicPartition, Vec<usize>)> {
    p.check_order(a.rows())?;
    let sigma = consecutive_permutation(p);
    let pa = a.permute_symmetric(&sigma)?;
    let pp = permute_partition(p, &sigma)?;
    Ok((pa, pp, sigma))
}
