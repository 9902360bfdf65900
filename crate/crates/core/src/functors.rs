//! The graph-to-graph constructions: the arc digraph and its two adjoints,
//! symmetric closure and maximal symmetric subgraph, odd subdivision, walk
//! powers, and the subset-tuple right adjoint of the walk power.
//!
//! All of these are thin functors: `G -> H` implies `F(G) -> F(H)`. The
//! adjunction biconditionals they satisfy are what turns them into
//! instance-level reductions; those are exercised exhaustively in the
//! check suites rather than trusted.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::graph::{add_universal_vertex, binomial, Graph, SizeCap};

/// Arc digraph: one vertex per arc of `D` (in sorted arc order), and an arc
/// `((u, v), (v, w))` for every composable pair; `w = u` is allowed. For a
/// symmetric `G` this has `2 |E(G)|` vertices.
pub fn arc_digraph(d: &Graph) -> Graph {
    let arcs = d.arcs();
    let mut by_tail: Vec<Vec<u32>> = vec![Vec::new(); d.n() as usize];
    for (i, &(u, _)) in arcs.iter().enumerate() {
        by_tail[u as usize].push(i as u32);
    }
    let mut out = Vec::new();
    for (i, &(_, v)) in arcs.iter().enumerate() {
        for &j in &by_tail[v as usize] {
            out.push((i as u32, j));
        }
    }
    Graph::from_raw(arcs.len() as u32, out)
}

/// Left adjoint of the arc digraph. Start from one arc `(s_v, t_v)` per
/// vertex, then for every arc `(u, v)` of `D` glue `t_u` with `s_v`; the
/// gluing relation is closed into an equivalence (vertices are classes).
pub fn delta_left(d: &Graph) -> Graph {
    let n = d.n() as usize;
    // union-find over 2n nodes: s_v = 2v, t_v = 2v + 1
    let mut parent: Vec<u32> = (0..2 * n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for &(u, v) in d.arcs() {
        let a = find(&mut parent, 2 * u + 1);
        let b = find(&mut parent, 2 * v);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi as usize] = lo;
        }
    }
    // compact class ids in order of first appearance over 0..2n
    let mut class_of = vec![u32::MAX; 2 * n];
    let mut classes = 0u32;
    for x in 0..2 * n as u32 {
        let root = find(&mut parent, x) as usize;
        if class_of[root] == u32::MAX {
            class_of[root] = classes;
            classes += 1;
        }
        class_of[x as usize] = class_of[root];
    }
    let arcs: Vec<(u32, u32)> = (0..n)
        .map(|v| (class_of[2 * v], class_of[2 * v + 1]))
        .collect();
    Graph::from_raw(classes, arcs)
}

/// Right adjoint of the arc digraph, with its vertex labels. Vertices are
/// all pairs `(S, T)` of vertex subsets with `S x T` inside the arc set
/// (empty sides satisfy this vacuously and are included); there is an arc
/// `(S, T) -> (S', T')` iff `T` meets `S'`. Vertex order is lexicographic
/// on the `(S, T)` bitmask encoding.
pub fn delta_right(d: &Graph, cap: &SizeCap) -> Result<(Graph, Vec<(u64, u64)>)> {
    let n = d.n();
    if n > 20 {
        return Err(Error::CapExceeded {
            needed: 1u128 << n.min(127),
            cap: cap.max_vertices,
            what: "subset pairs of the right adjoint",
        });
    }
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let out_mask: Vec<u64> = {
        let mut m = vec![0u64; n as usize];
        for &(u, v) in d.arcs() {
            m[u as usize] |= 1 << v;
        }
        m
    };
    let mut total: u128 = 0;
    for s in 0..=full {
        let mut common = full;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            common &= out_mask[v as usize];
            rest &= rest - 1;
        }
        total += 1u128 << common.count_ones();
        if s == full {
            break;
        }
    }
    cap.vertices(total, "right adjoint of the arc digraph")?;

    let mut labels: Vec<(u64, u64)> = Vec::with_capacity(total as usize);
    for s in 0..=full {
        let mut common = full;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            common &= out_mask[v as usize];
            rest &= rest - 1;
        }
        // all submasks of `common`, ascending
        let mut t = 0u64;
        loop {
            labels.push((s, t));
            if t == common {
                break;
            }
            t = (t.wrapping_sub(common)) & common;
        }
        if s == full {
            break;
        }
    }
    labels.sort_unstable();
    let count = labels.len() as u32;
    let mut arcs = Vec::new();
    for (i, &(_, t)) in labels.iter().enumerate() {
        if t == 0 {
            continue;
        }
        for (j, &(s2, _)) in labels.iter().enumerate() {
            if t & s2 != 0 {
                arcs.push((i as u32, j as u32));
            }
        }
    }
    Ok((Graph::from_raw(count, arcs), labels))
}

/// Symmetric closure: every arc gains its reverse.
pub fn sym(d: &Graph) -> Graph {
    let mut arcs = d.arcs().to_vec();
    for &(u, v) in d.arcs() {
        arcs.push((v, u));
    }
    Graph::from_raw(d.n(), arcs)
}

/// Maximal symmetric subgraph: keeps `(u, v)` iff `(v, u)` is also present.
pub fn sub(d: &Graph) -> Graph {
    let arcs: Vec<(u32, u32)> = d
        .arcs()
        .iter()
        .copied()
        .filter(|&(u, v)| u == v || d.has_arc(v, u))
        .collect();
    Graph::from_raw(d.n(), arcs)
}

/// Odd subdivision: replaces each undirected edge by a path of `k` edges
/// through `k - 1` fresh vertices. `k = 1` is the identity.
pub fn subdivide(g: &Graph, k: u32) -> Result<Graph> {
    if k % 2 == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "subdivision needs odd k, got {k}"
        )));
    }
    if !g.is_symmetric() {
        return Err(Error::Unsupported(String::from(
            "subdivision needs a symmetric graph",
        )));
    }
    if k == 1 {
        return Ok(g.clone());
    }
    let edges: Vec<(u32, u32)> = g.arcs().iter().copied().filter(|&(u, v)| u <= v).collect();
    let mut next = g.n();
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &(u, v) in &edges {
        let mut prev = u;
        for _ in 0..k - 1 {
            out.push((prev, next));
            out.push((next, prev));
            prev = next;
            next += 1;
        }
        out.push((prev, v));
        out.push((v, prev));
    }
    Ok(Graph::from_raw(next, out))
}

/// Walk power: arc `(u, v)` iff there is a walk of length exactly `k` from
/// `u` to `v`. Closed k-walks put loops on the diagonal (`k = 3` with a
/// triangle, for instance).
pub fn power_graph(g: &Graph, k: u32) -> Result<Graph> {
    if k % 2 == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "walk power needs odd k, got {k}"
        )));
    }
    let n = g.n() as usize;
    let rows = g.out_bitsets();
    let mut acc = rows.clone();
    for _ in 1..k {
        let mut next = vec![BitVec::zeros(n); n];
        for (i, row) in acc.iter().enumerate() {
            for j in row.iter_ones() {
                next[i].or_assign(&rows[j]);
            }
        }
        acc = next;
    }
    let mut arcs = Vec::new();
    for (i, row) in acc.iter().enumerate() {
        for j in row.iter_ones() {
            arcs.push((i as u32, j as u32));
        }
    }
    Ok(Graph::from_raw(g.n(), arcs))
}

/// A vertex of the subset-tuple graph: the singleton level plus the masks
/// of the remaining levels `A_1, ..., A_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaVertex {
    pub a0: u32,
    pub levels: Vec<u64>,
}

/// Right adjoint of the walk power, for odd `k = 2l + 1 >= 3`. Vertices are
/// tuples `(A_0, ..., A_l)` of vertex subsets with `|A_0| = 1`; two tuples
/// are adjacent iff `A_i` is inside `B_{i+1}` and `B_i` inside `A_{i+1}`
/// for `i < l`, and every element of `A_l` is adjacent to every element of
/// `B_l` (vacuously true for empty sides).
pub fn omega(g: &Graph, k: u32, cap: &SizeCap) -> Result<Graph> {
    Ok(omega_labeled(g, k, cap)?.0)
}

pub fn omega_labeled(g: &Graph, k: u32, cap: &SizeCap) -> Result<(Graph, Vec<OmegaVertex>)> {
    if k % 2 == 0 || k < 3 {
        return Err(Error::InvalidParameter(format!(
            "subset-tuple adjoint needs odd k >= 3, got {k}"
        )));
    }
    let l = (k - 1) / 2;
    let n = g.n();
    if n > 32 {
        return Err(Error::CapExceeded {
            needed: (n as u128) << n.min(100),
            cap: cap.max_vertices,
            what: "subset tuples",
        });
    }
    let needed = (n as u128).saturating_mul(1u128 << ((l as u128 * n as u128).min(100)));
    cap.vertices(needed, "subset tuples")?;

    let subsets: u64 = 1u64 << n;
    let count = needed as usize;
    let mut vertices: Vec<OmegaVertex> = Vec::with_capacity(count);
    for a0 in 0..n {
        let mut levels = vec![0u64; l as usize];
        loop {
            vertices.push(OmegaVertex {
                a0,
                levels: levels.clone(),
            });
            // odometer over levels, last level fastest, lexicographic order
            let mut i = l as usize;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                levels[i] += 1;
                if levels[i] < subsets {
                    break;
                }
                levels[i] = 0;
                if i == 0 {
                    break;
                }
            }
            if levels.iter().all(|&m| m == 0) {
                break;
            }
        }
    }
    debug_assert_eq!(vertices.len(), count);

    let out_mask: Vec<u64> = {
        let mut m = vec![0u64; n as usize];
        for &(u, v) in g.arcs() {
            m[u as usize] |= 1 << v;
        }
        m
    };
    let fully_adjacent = |a: u64, b: u64| -> bool {
        let mut rest = a;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            if b & !out_mask[x] != 0 {
                return false;
            }
            rest &= rest - 1;
        }
        true
    };
    let ladder_ok = |a: &OmegaVertex, b: &OmegaVertex| -> bool {
        // A_0 inside B_1, then A_i inside B_{i+1} for 1 <= i < l
        if b.levels[0] & (1 << a.a0) == 0 {
            return false;
        }
        for i in 1..l as usize {
            if a.levels[i - 1] & !b.levels[i] != 0 {
                return false;
            }
        }
        true
    };
    let mut arcs = Vec::new();
    for (i, a) in vertices.iter().enumerate() {
        for (j, b) in vertices.iter().enumerate() {
            if ladder_ok(a, b)
                && ladder_ok(b, a)
                && fully_adjacent(a.levels[l as usize - 1], b.levels[l as usize - 1])
            {
                arcs.push((i as u32, j as u32));
            }
        }
    }
    Ok((Graph::from_raw(vertices.len() as u32, arcs), vertices))
}

/// Central binomial coefficient `b(n) = C(n, floor(n/2))`, exact and
/// overflow-checked.
pub fn central_binomial(n: u32) -> Result<u128> {
    binomial(n, n / 2)
}

/// Smallest `n >= 0` with `b(n) >= chi`; the level the arc digraph drops a
/// chromatic number to.
pub fn min_level_for(chi: u32) -> u32 {
    (0..)
        .find(|&n| central_binomial(n).map_or(true, |b| b >= chi as u128))
        .unwrap()
}

// ---------------------------------------------------------------------------
// Uniform dispatch used by reductions and the command line
// ---------------------------------------------------------------------------

/// Name-addressable functor, as exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorId {
    Delta,
    DeltaL,
    DeltaR,
    Sym,
    Sub,
    Lambda(u32),
    Gamma(u32),
    Omega(u32),
    Universal,
}

impl FunctorId {
    pub fn name(&self) -> String {
        match *self {
            FunctorId::Delta => String::from("delta"),
            FunctorId::DeltaL => String::from("delta_l"),
            FunctorId::DeltaR => String::from("delta_r"),
            FunctorId::Sym => String::from("sym"),
            FunctorId::Sub => String::from("sub"),
            FunctorId::Lambda(k) => format!("lambda:{k}"),
            FunctorId::Gamma(k) => format!("gamma:{k}"),
            FunctorId::Omega(k) => format!("omega:{k}"),
            FunctorId::Universal => String::from("universal"),
        }
    }

    pub fn parse(text: &str) -> Result<FunctorId> {
        let (head, param) = match text.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (text, None),
        };
        let k = |p: Option<&str>| -> Result<u32> {
            p.ok_or_else(|| Error::InvalidParameter(format!("{head} needs :k")))?
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad parameter in {text}")))
        };
        match head {
            "delta" => Ok(FunctorId::Delta),
            "delta_l" => Ok(FunctorId::DeltaL),
            "delta_r" => Ok(FunctorId::DeltaR),
            "sym" => Ok(FunctorId::Sym),
            "sub" => Ok(FunctorId::Sub),
            "lambda" => Ok(FunctorId::Lambda(k(param)?)),
            "gamma" => Ok(FunctorId::Gamma(k(param)?)),
            "omega" => Ok(FunctorId::Omega(k(param)?)),
            "universal" => Ok(FunctorId::Universal),
            _ => Err(Error::InvalidParameter(format!("unknown functor {text}"))),
        }
    }
}

pub fn apply_functor(id: FunctorId, g: &Graph, cap: &SizeCap) -> Result<Graph> {
    match id {
        FunctorId::Delta => Ok(arc_digraph(g)),
        FunctorId::DeltaL => Ok(delta_left(g)),
        FunctorId::DeltaR => Ok(delta_right(g, cap)?.0),
        FunctorId::Sym => Ok(sym(g)),
        FunctorId::Sub => Ok(sub(g)),
        FunctorId::Lambda(k) => subdivide(g, k),
        FunctorId::Gamma(k) => power_graph(g, k),
        FunctorId::Omega(k) => omega(g, k, cap),
        FunctorId::Universal => Ok(add_universal_vertex(g)),
    }
}
