//! Finite digraphs with dense integer vertices, the named graph families,
//! and product constructions.
//!
//! Undirected graphs are symmetric digraphs: every edge is stored as both
//! arcs. Loops are legal everywhere; constructions must stay correct in
//! their presence even though a loop makes homomorphism questions trivial.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Guard for enumerative constructions that can blow up exponentially.
/// They fail loudly instead of thrashing.
#[derive(Clone, Copy, Debug)]
pub struct SizeCap {
    pub max_vertices: u64,
    pub max_faces: u64,
}

impl Default for SizeCap {
    fn default() -> Self {
        SizeCap {
            max_vertices: 2_000_000,
            max_faces: 1_000_000,
        }
    }
}

impl SizeCap {
    pub fn vertices(&self, needed: u128, what: &'static str) -> Result<u32> {
        if needed > self.max_vertices as u128 || needed > u32::MAX as u128 {
            return Err(Error::CapExceeded {
                needed,
                cap: self.max_vertices,
                what,
            });
        }
        Ok(needed as u32)
    }

    pub fn faces(&self, needed: u128, what: &'static str) -> Result<()> {
        if needed > self.max_faces as u128 {
            return Err(Error::CapExceeded {
                needed,
                cap: self.max_faces,
                what,
            });
        }
        Ok(())
    }
}

/// A digraph on vertices `0..n` with a sorted, duplicate-free arc list.
///
/// Equality is canonical equality: same vertex count, same arc set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Graph {
    n: u32,
    arcs: Vec<(u32, u32)>,
}

impl Graph {
    /// Builds a graph from an arbitrary arc list, rejecting out-of-range
    /// endpoints and duplicate arcs.
    pub fn new(n: u32, mut arcs: Vec<(u32, u32)>) -> Result<Graph> {
        for &(u, v) in &arcs {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        arcs.sort_unstable();
        for w in arcs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateArc {
                    u: w[0].0,
                    v: w[0].1,
                });
            }
        }
        Ok(Graph { n, arcs })
    }

    /// Internal constructor for arc lists produced by trusted constructions;
    /// sorts and silently merges duplicates.
    pub(crate) fn from_raw(n: u32, mut arcs: Vec<(u32, u32)>) -> Graph {
        arcs.sort_unstable();
        arcs.dedup();
        debug_assert!(arcs.iter().all(|&(u, v)| u < n && v < n));
        Graph { n, arcs }
    }

    /// Builds the symmetric graph with the given undirected edges
    /// (each pair is stored as both arcs; a loop as one arc).
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Result<Graph> {
        let mut arcs = Vec::with_capacity(edges.len() * 2);
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            arcs.push((u, v));
            if u != v {
                arcs.push((v, u));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        Ok(Graph { n, arcs })
    }

    pub fn empty(n: u32) -> Graph {
        Graph {
            n,
            arcs: Vec::new(),
        }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Number of undirected edges of a symmetric graph: symmetric pairs
    /// count once, loops count once.
    pub fn edge_count(&self) -> usize {
        self.arcs.iter().filter(|&&(u, v)| u <= v).count()
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs.iter().all(|&(u, v)| u == v || self.has_arc(v, u))
    }

    /// First vertex carrying a loop, if any.
    pub fn loop_vertex(&self) -> Option<u32> {
        self.arcs.iter().find(|&&(u, v)| u == v).map(|&(u, _)| u)
    }

    pub fn has_loop(&self) -> bool {
        self.loop_vertex().is_some()
    }

    pub fn out_lists(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.n as usize];
        for &(u, v) in &self.arcs {
            out[u as usize].push(v);
        }
        out
    }

    pub fn in_lists(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.n as usize];
        for &(u, v) in &self.arcs {
            inc[v as usize].push(u);
        }
        inc
    }

    pub fn out_bitsets(&self) -> Vec<BitVec> {
        let mut out = vec![BitVec::zeros(self.n as usize); self.n as usize];
        for &(u, v) in &self.arcs {
            out[u as usize].set(v as usize);
        }
        out
    }

    pub fn in_bitsets(&self) -> Vec<BitVec> {
        let mut inc = vec![BitVec::zeros(self.n as usize); self.n as usize];
        for &(u, v) in &self.arcs {
            inc[v as usize].set(u as usize);
        }
        inc
    }

    /// Total degree (in + out) of each vertex.
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.n as usize];
        for &(u, v) in &self.arcs {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    /// FNV-1a over the canonical byte encoding; stable across runs and
    /// platforms, used to chain reduction traces and stamp outputs.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |b: u8| {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        };
        for b in self.n.to_le_bytes() {
            eat(b);
        }
        for &(u, v) in &self.arcs {
            for b in u.to_le_bytes() {
                eat(b);
            }
            for b in v.to_le_bytes() {
                eat(b);
            }
        }
        h
    }
}

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

/// A named graph family with its parameters, as accepted by the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFamilySpec {
    Clique { n: u32 },
    Cycle { n: u32 },
    CircularClique { p: u32, q: u32 },
    Kneser { n: u32, k: u32 },
    Path { n: u32 },
}

impl GraphFamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            GraphFamilySpec::Clique { n } => {
                require(n >= 1, "clique needs n >= 1")?;
                Ok(clique(n))
            }
            GraphFamilySpec::Cycle { n } => {
                require(n >= 3, "cycle needs n >= 3")?;
                Ok(cycle(n))
            }
            GraphFamilySpec::CircularClique { p, q } => circular_clique(p, q),
            GraphFamilySpec::Kneser { n, k } => kneser(n, k),
            GraphFamilySpec::Path { n } => {
                require(n >= 1, "path needs n >= 1")?;
                Ok(path(n))
            }
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            GraphFamilySpec::Clique { n } => format!("clique:{n}"),
            GraphFamilySpec::Cycle { n } => format!("cycle:{n}"),
            GraphFamilySpec::CircularClique { p, q } => format!("circular:{p}/{q}"),
            GraphFamilySpec::Kneser { n, k } => format!("kneser:{n},{k}"),
            GraphFamilySpec::Path { n } => format!("path:{n}"),
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(String::from(msg)))
    }
}

/// Complete loopless graph `K_n`.
pub fn clique(n: u32) -> Graph {
    let mut arcs = Vec::with_capacity((n as usize) * (n as usize).saturating_sub(1));
    for u in 0..n {
        for v in 0..n {
            if u != v {
                arcs.push((u, v));
            }
        }
    }
    Graph { n, arcs }
}

/// Cycle `C_n` (as a symmetric digraph).
pub fn cycle(n: u32) -> Graph {
    let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle edges are in range")
}

/// Circular clique `K_{p/q}`: vertex set `Z_p`, an arc `(i, j)` whenever
/// `(j - i) mod p` lies in `q ..= p - q`. Requires `p/q > 2`.
pub fn circular_clique(p: u32, q: u32) -> Result<Graph> {
    require(q >= 1, "circular clique needs q >= 1")?;
    require(p > 2 * q, "circular clique needs p/q > 2")?;
    let mut arcs = Vec::new();
    for i in 0..p {
        for d in q..=(p - q) {
            arcs.push((i, (i + d) % p));
        }
    }
    Ok(Graph::from_raw(p, arcs))
}

/// Kneser graph `KG(n, k)`: vertices are the k-subsets of `[n]` in
/// colexicographic order, adjacent when disjoint. Requires `n >= 2k`.
pub fn kneser(n: u32, k: u32) -> Result<Graph> {
    require(k >= 1, "kneser needs k >= 1")?;
    require(n >= 2 * k, "kneser needs n >= 2k")?;
    let count = binomial(n, k)?;
    if count > u32::MAX as u128 {
        return Err(Error::Overflow("kneser vertex count"));
    }
    let count = count as u32;
    let masks: Vec<u64> = (0..count)
        .map(|r| {
            let set = colex_unrank(r as u128, k, n);
            set.iter().fold(0u64, |m, &e| m | 1u64 << e)
        })
        .collect();
    let mut arcs = Vec::new();
    for a in 0..count {
        for b in 0..count {
            if a != b && masks[a as usize] & masks[b as usize] == 0 {
                arcs.push((a, b));
            }
        }
    }
    Ok(Graph::from_raw(count, arcs))
}

/// Path on `n` vertices (`n - 1` edges).
pub fn path(n: u32) -> Graph {
    let edges: Vec<(u32, u32)> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path edges are in range")
}

// ---------------------------------------------------------------------------
// Products and the exponential graph
// ---------------------------------------------------------------------------

/// Tensor (categorical) product. Vertex `(g, h)` is encoded row-major as
/// `g * |V(H)| + h`; `((g,h),(g',h'))` is an arc iff both projections are.
pub fn tensor_product(g: &Graph, h: &Graph) -> Graph {
    let n = g.n as u64 * h.n as u64;
    assert!(
        n <= u32::MAX as u64,
        "tensor product vertex count overflows u32"
    );
    let mut arcs = Vec::with_capacity(g.arc_count() * h.arc_count());
    for &(a, b) in g.arcs() {
        for &(c, d) in h.arcs() {
            arcs.push((a * h.n + c, b * h.n + d));
        }
    }
    Graph::from_raw(n as u32, arcs)
}

/// L-fold tensor power with the mixed-radix row-major tuple encoding
/// (first coordinate most significant). `power(G, 1)` is `G` itself.
pub fn power(g: &Graph, l: u32, cap: &SizeCap) -> Result<Graph> {
    require(l >= 1, "tensor power needs L >= 1")?;
    let mut needed: u128 = 1;
    for _ in 0..l {
        needed = needed.saturating_mul(g.n as u128);
    }
    cap.vertices(needed, "tensor power")?;
    let mut acc = g.clone();
    for _ in 1..l {
        acc = tensor_product(&acc, g);
    }
    Ok(acc)
}

/// Encodes an L-tuple of `G`-vertices into its `power(G, L)` index.
pub fn tuple_encode(tuple: &[u32], n: u32) -> usize {
    tuple
        .iter()
        .fold(0usize, |acc, &v| acc * n as usize + v as usize)
}

/// Decodes a `power(G, L)` index back into an L-tuple.
pub fn tuple_decode(mut index: usize, n: u32, l: u32) -> Vec<u32> {
    let mut tuple = vec![0u32; l as usize];
    for i in (0..l as usize).rev() {
        tuple[i] = (index % n as usize) as u32;
        index /= n as usize;
    }
    tuple
}

/// Exponential graph `H^F`: vertices are all functions `V(F) -> V(H)`
/// (row-major over the domain), with `f` adjacent to `g` iff for every arc
/// `(u, v)` of `F`, `(f(u), g(v))` is an arc of `H`. Right adjoint of the
/// tensor product: `F x G -> H` iff `G -> H^F`.
pub fn exponential(h: &Graph, f: &Graph, cap: &SizeCap) -> Result<Graph> {
    let mut needed: u128 = 1;
    for _ in 0..f.n {
        needed = needed.saturating_mul(h.n as u128);
    }
    let count = cap.vertices(needed, "exponential graph")?;
    let hn = h.n;
    let tables: Vec<Vec<u32>> = (0..count)
        .map(|i| tuple_decode(i as usize, hn, f.n))
        .collect();
    let h_out = h.out_bitsets();
    let mut arcs = Vec::new();
    for a in 0..count {
        'pair: for b in 0..count {
            let fa = &tables[a as usize];
            let fb = &tables[b as usize];
            for &(u, v) in f.arcs() {
                if !h_out[fa[u as usize] as usize].get(fb[v as usize] as usize) {
                    continue 'pair;
                }
            }
            arcs.push((a, b));
        }
    }
    Ok(Graph::from_raw(count, arcs))
}

/// Adds one fresh vertex adjacent in both directions to every original
/// vertex; original arcs are preserved.
pub fn add_universal_vertex(g: &Graph) -> Graph {
    let n = g.n + 1;
    let u = g.n;
    let mut arcs = g.arcs.clone();
    for v in 0..g.n {
        arcs.push((u, v));
        arcs.push((v, u));
    }
    Graph::from_raw(n, arcs)
}

// ---------------------------------------------------------------------------
// Exact combinatorics shared across modules
// ---------------------------------------------------------------------------

/// Overflow-checked binomial coefficient.
pub fn binomial(n: u32, k: u32) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial"))?;
        acc /= (i + 1) as u128;
    }
    Ok(acc)
}

/// Colexicographic rank of a k-subset given as strictly increasing elements.
pub fn colex_rank(set: &[u32]) -> u128 {
    set.iter()
        .enumerate()
        .map(|(j, &s)| binomial(s, j as u32 + 1).expect("rank fits in u128"))
        .sum()
}

/// Inverse of [`colex_rank`]: the `r`-th k-subset of `0..n` in
/// colexicographic order, as strictly increasing elements.
pub fn colex_unrank(mut r: u128, k: u32, n: u32) -> Vec<u32> {
    let mut set = vec![0u32; k as usize];
    let mut hi = n;
    for j in (1..=k).rev() {
        // largest c with C(c, j) <= r
        let mut c = hi - 1;
        while binomial(c, j).expect("binomial fits") > r {
            c -= 1;
        }
        r -= binomial(c, j).expect("binomial fits");
        set[j as usize - 1] = c;
        hi = c;
    }
    set
}
