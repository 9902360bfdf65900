//! Exact homomorphism and colouring search.
//!
//! The solver is a backtracking search over source vertices in
//! descending-degree order with arc-consistency propagation before every
//! branch. Ties break by vertex index, value choices ascend, so the first
//! witness found is canonical. Work is metered in search nodes; when the
//! budget runs out the answer is an explicit "unknown", never a guess.
//!
//! Existence queries first fold dominated vertices away: if both
//! neighbourhoods of `u` are contained in those of `v`, then `u` can copy
//! the image of `v`. The full witness is reconstructed afterwards, so
//! certificates always cover the original vertex set. Enumeration and
//! sampling skip folding: they must see every solution, not a retract.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::graph::{clique, Graph};

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

/// A homomorphism witness: `image[v]` is the target vertex of source `v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexMap {
    pub source_n: u32,
    pub image: Vec<u32>,
}

impl VertexMap {
    /// Checks the map arc by arc.
    pub fn validate(&self, g: &Graph, h: &Graph) -> Result<()> {
        if self.image.len() != g.n() as usize || self.source_n != g.n() {
            return Err(Error::InvalidWitness {
                u: 0,
                v: 0,
                reason: "length mismatch",
            });
        }
        for &x in &self.image {
            if x >= h.n() {
                return Err(Error::InvalidWitness {
                    u: x,
                    v: x,
                    reason: "image out of range",
                });
            }
        }
        for &(u, v) in g.arcs() {
            let (x, y) = (self.image[u as usize], self.image[v as usize]);
            if !h.has_arc(x, y) {
                return Err(Error::InvalidWitness {
                    u,
                    v,
                    reason: "arc not preserved",
                });
            }
        }
        Ok(())
    }

    /// Reads the witness as a colouring with `colors` colours (meaningful
    /// when the target was a clique).
    pub fn as_coloring(&self, colors: u32) -> Coloring {
        Coloring {
            colors,
            assignment: self.image.clone(),
        }
    }
}

/// A colouring certificate. Proper means no arc `(u, v)` with `u != v` is
/// monochromatic (the underlying-graph convention); a loop admits no proper
/// colouring at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub colors: u32,
    pub assignment: Vec<u32>,
}

impl Coloring {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.assignment.len() != g.n() as usize {
            return Err(Error::InvalidWitness {
                u: 0,
                v: 0,
                reason: "length mismatch",
            });
        }
        for &c in &self.assignment {
            if c >= self.colors {
                return Err(Error::InvalidWitness {
                    u: c,
                    v: c,
                    reason: "colour out of range",
                });
            }
        }
        for &(u, v) in g.arcs() {
            if u == v || self.assignment[u as usize] == self.assignment[v as usize] {
                return Err(Error::ImproperColoring { u, v });
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Outcomes and accounting
// ---------------------------------------------------------------------------

/// Search-node allowance for one query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { nodes: 10_000_000 }
    }
}

impl Budget {
    pub fn nodes(nodes: u64) -> Budget {
        Budget { nodes }
    }
}

/// Outcome of an existence query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomOutcome {
    Witness(VertexMap),
    NoHom,
    Unknown,
}

impl HomOutcome {
    pub fn exists(&self) -> Option<bool> {
        match self {
            HomOutcome::Witness(_) => Some(true),
            HomOutcome::NoHom => Some(false),
            HomOutcome::Unknown => None,
        }
    }

    /// Convenience for suites that pin budgets known to suffice.
    pub fn expect_decided(&self, what: &str) -> bool {
        self.exists()
            .unwrap_or_else(|| panic!("budget exhausted while deciding {what}"))
    }
}

/// Outcome of an enumeration run; the payload is how many solutions were
/// seen before completing, stopping early, or running out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumOutcome {
    Complete(u64),
    Stopped(u64),
    Unknown(u64),
}

/// Chromatic-number outcome; `Bounds` is returned under budget exhaustion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiOutcome {
    Exact(u32),
    HasLoop,
    Bounds { lo: u32, hi: u32 },
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchReport {
    pub nodes: u64,
    pub folded_vertices: u32,
    pub fold_passes: u32,
}

// ---------------------------------------------------------------------------
// Dominated-vertex folding
// ---------------------------------------------------------------------------

struct Folding {
    /// For each original vertex, the vertex it folded onto (itself if kept).
    target: Vec<u32>,
    /// Kept original vertices, ascending; index in this list = compact id.
    kept: Vec<u32>,
    compact: Vec<u32>,
    graph: Graph,
    passes: u32,
}

impl Folding {
    fn resolve(&self, mut v: u32) -> u32 {
        while self.target[v as usize] != v {
            v = self.target[v as usize];
        }
        v
    }
}

fn fold_dominated(g: &Graph) -> Folding {
    let n = g.n() as usize;
    let mut out = g.out_bitsets();
    let mut inc = g.in_bitsets();
    let mut alive = vec![true; n];
    let mut target: Vec<u32> = (0..n as u32).collect();
    let mut passes = 0;

    loop {
        passes += 1;
        let mut folded_any = false;
        for u in 0..n {
            if !alive[u] {
                continue;
            }
            let candidate = (0..n).find(|&v| {
                v != u && alive[v] && inc[u].is_subset(&inc[v]) && out[u].is_subset(&out[v])
            });
            if let Some(v) = candidate {
                target[u] = v as u32;
                alive[u] = false;
                folded_any = true;
                let outs: Vec<usize> = out[u].iter_ones().collect();
                let ins: Vec<usize> = inc[u].iter_ones().collect();
                for x in outs {
                    inc[x].unset(u);
                }
                for x in ins {
                    out[x].unset(u);
                }
                out[u].clear();
                inc[u].clear();
            }
        }
        if !folded_any {
            break;
        }
    }

    let kept: Vec<u32> = (0..n as u32).filter(|&v| alive[v as usize]).collect();
    let mut compact = vec![u32::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        compact[v as usize] = i as u32;
    }
    let mut arcs = Vec::new();
    for &u in &kept {
        for v in out[u as usize].iter_ones() {
            arcs.push((compact[u as usize], compact[v]));
        }
    }
    let graph = Graph::from_raw(kept.len() as u32, arcs);
    Folding {
        target,
        kept,
        compact,
        graph,
        passes,
    }
}

// ---------------------------------------------------------------------------
// The backtracking solver
// ---------------------------------------------------------------------------

enum SolveEnd {
    Exhausted,
    Budget,
    Stopped,
}

struct Solver {
    n: usize,
    out_src: Vec<Vec<u32>>,
    in_src: Vec<Vec<u32>>,
    tgt_out: Vec<BitVec>,
    tgt_in: Vec<BitVec>,
    order: Vec<u32>,
    domains: Vec<BitVec>,
    trail: Vec<(u32, BitVec)>,
    nodes: u64,
    budget: u64,
    /// Per-variable value iteration order; `None` means ascending.
    value_order: Option<Vec<Vec<u32>>>,
}

impl Solver {
    fn new(g: &Graph, h: &Graph, budget: Budget) -> Solver {
        let n = g.n() as usize;
        let hn = h.n() as usize;
        let deg = g.degrees();
        let mut order: Vec<u32> = (0..g.n()).collect();
        order.sort_by_key(|&v| (core::cmp::Reverse(deg[v as usize]), v));
        Solver {
            n,
            out_src: g.out_lists(),
            in_src: g.in_lists(),
            tgt_out: h.out_bitsets(),
            tgt_in: h.in_bitsets(),
            order,
            domains: vec![BitVec::ones(hn); n],
            trail: Vec::new(),
            nodes: 0,
            budget: budget.nodes,
            value_order: None,
        }
    }

    /// Prunes `domains[w]` to values with support in `domains[v]` through
    /// the given target-side adjacency. Returns false on wipe-out.
    fn revise(&mut self, w: u32, v: u32, use_in: bool, queue: &mut Vec<u32>) -> bool {
        let mut removed = Vec::new();
        for y in self.domains[w as usize].iter_ones() {
            let support = if use_in {
                &self.tgt_in[y]
            } else {
                &self.tgt_out[y]
            };
            if !support.intersects(&self.domains[v as usize]) {
                removed.push(y);
            }
        }
        if !removed.is_empty() {
            self.trail.push((w, self.domains[w as usize].clone()));
            for y in removed {
                self.domains[w as usize].unset(y);
            }
            if !self.domains[w as usize].any() {
                return false;
            }
            queue.push(w);
        }
        true
    }

    /// Arc-consistency to fixpoint, seeded by the given variables.
    fn propagate(&mut self, seeds: &[u32]) -> bool {
        let mut queue: Vec<u32> = seeds.to_vec();
        while let Some(v) = queue.pop() {
            for i in 0..self.out_src[v as usize].len() {
                let w = self.out_src[v as usize][i];
                if w != v && !self.revise(w, v, true, &mut queue) {
                    return false;
                }
            }
            for i in 0..self.in_src[v as usize].len() {
                let u = self.in_src[v as usize][i];
                if u != v && !self.revise(u, v, false, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    /// Removes loop-inconsistent values, then runs AC from every variable.
    fn initial_consistency(&mut self) -> bool {
        for v in 0..self.n as u32 {
            if self.out_src[v as usize].contains(&v) {
                let bad: Vec<usize> = self.domains[v as usize]
                    .iter_ones()
                    .filter(|&x| !self.tgt_out[x].get(x))
                    .collect();
                for x in bad {
                    self.domains[v as usize].unset(x);
                }
                if !self.domains[v as usize].any() {
                    return false;
                }
            }
        }
        let all: Vec<u32> = (0..self.n as u32).collect();
        self.propagate(&all)
    }

    fn values_at(&self, var: u32) -> Vec<usize> {
        match &self.value_order {
            None => self.domains[var as usize].iter_ones().collect(),
            Some(orders) => orders[var as usize]
                .iter()
                .map(|&x| x as usize)
                .filter(|&x| self.domains[var as usize].get(x))
                .collect(),
        }
    }

    fn search(&mut self, pos: usize, visit: &mut dyn FnMut(&[BitVec]) -> bool) -> SolveEnd {
        if pos == self.n {
            return if visit(&self.domains) {
                SolveEnd::Exhausted
            } else {
                SolveEnd::Stopped
            };
        }
        let var = self.order[pos];
        for x in self.values_at(var) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return SolveEnd::Budget;
            }
            let mark = self.trail.len();
            if self.domains[var as usize].count() != 1 {
                self.trail.push((var, self.domains[var as usize].clone()));
                self.domains[var as usize].retain_only(x);
            }
            let ok = self.propagate(&[var]);
            if ok {
                match self.search(pos + 1, visit) {
                    SolveEnd::Exhausted => {}
                    end => return end,
                }
            }
            while self.trail.len() > mark {
                let (w, old) = self.trail.pop().expect("trail entry");
                self.domains[w as usize] = old;
            }
        }
        SolveEnd::Exhausted
    }
}

fn extract(domains: &[BitVec]) -> Vec<u32> {
    domains
        .iter()
        .map(|d| d.first_one().expect("assigned domain is a singleton") as u32)
        .collect()
}

// ---------------------------------------------------------------------------
// Public queries
// ---------------------------------------------------------------------------

/// Decides `G -> H`, returning a validated witness if one exists.
/// Deterministic: the witness is the first solution in the canonical order.
pub fn hom_exists(g: &Graph, h: &Graph, budget: Budget) -> (HomOutcome, SearchReport) {
    let mut report = SearchReport::default();
    if g.n() == 0 {
        return (
            HomOutcome::Witness(VertexMap {
                source_n: 0,
                image: Vec::new(),
            }),
            report,
        );
    }
    if let Some(lv) = h.loop_vertex() {
        let w = VertexMap {
            source_n: g.n(),
            image: vec![lv; g.n() as usize],
        };
        return (HomOutcome::Witness(w), report);
    }
    if h.n() == 0 {
        return (HomOutcome::NoHom, report);
    }
    let fold = fold_dominated(g);
    report.folded_vertices = g.n() - fold.kept.len() as u32;
    report.fold_passes = fold.passes;

    let mut solver = Solver::new(&fold.graph, h, budget);
    if !solver.initial_consistency() {
        report.nodes = solver.nodes;
        return (HomOutcome::NoHom, report);
    }
    let mut found: Option<Vec<u32>> = None;
    let end = solver.search(0, &mut |domains| {
        found = Some(extract(domains));
        false
    });
    report.nodes = solver.nodes;
    match (found, end) {
        (Some(sol), _) => {
            let image: Vec<u32> = (0..g.n())
                .map(|v| sol[fold.compact[fold.resolve(v) as usize] as usize])
                .collect();
            let w = VertexMap {
                source_n: g.n(),
                image,
            };
            w.validate(g, h)
                .expect("internal: solver produced an invalid witness");
            (HomOutcome::Witness(w), report)
        }
        (None, SolveEnd::Budget) => (HomOutcome::Unknown, report),
        (None, _) => (HomOutcome::NoHom, report),
    }
}

/// Complete, duplicate-free enumeration of all homomorphisms `G -> H` in
/// canonical order. No folding: every solution is visited. The visitor
/// returns `false` to stop early.
pub fn enumerate_homs(
    g: &Graph,
    h: &Graph,
    budget: Budget,
    mut visit: impl FnMut(&VertexMap) -> bool,
) -> (EnumOutcome, SearchReport) {
    let mut report = SearchReport::default();
    if h.n() == 0 && g.n() > 0 {
        return (EnumOutcome::Complete(0), report);
    }
    let mut solver = Solver::new(g, h, budget);
    let mut count = 0u64;
    if g.n() > 0 && !solver.initial_consistency() {
        report.nodes = solver.nodes;
        return (EnumOutcome::Complete(0), report);
    }
    let end = solver.search(0, &mut |domains| {
        count += 1;
        visit(&VertexMap {
            source_n: g.n(),
            image: extract(domains),
        })
    });
    report.nodes = solver.nodes;
    let outcome = match end {
        SolveEnd::Exhausted => EnumOutcome::Complete(count),
        SolveEnd::Stopped => EnumOutcome::Stopped(count),
        SolveEnd::Budget => EnumOutcome::Unknown(count),
    };
    (outcome, report)
}

/// Collects all homomorphisms (caller guarantees the count stays sane).
pub fn all_homs(g: &Graph, h: &Graph, budget: Budget) -> Vec<VertexMap> {
    let mut sols = Vec::new();
    enumerate_homs(g, h, budget, |w| {
        sols.push(w.clone());
        true
    });
    sols
}

/// Draws up to `want` distinct homomorphisms by re-running the search with
/// seeded random value orders. Deterministic for a fixed seed.
pub fn sample_homs(g: &Graph, h: &Graph, budget: Budget, want: usize, seed: u64) -> Vec<VertexMap> {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut state = seed ^ 0x9e3779b97f4a7c15;
    let mut next = move || {
        // splitmix64
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    for _ in 0..want.saturating_mul(8).max(16) {
        if out.len() >= want {
            break;
        }
        let mut solver = Solver::new(g, h, budget);
        let orders: Vec<Vec<u32>> = (0..g.n())
            .map(|_| {
                let mut perm: Vec<u32> = (0..h.n()).collect();
                for i in (1..perm.len()).rev() {
                    let j = (next() % (i as u64 + 1)) as usize;
                    perm.swap(i, j);
                }
                perm
            })
            .collect();
        solver.value_order = Some(orders);
        if g.n() > 0 && !solver.initial_consistency() {
            break;
        }
        let mut found = None;
        solver.search(0, &mut |domains| {
            found = Some(extract(domains));
            false
        });
        match found {
            Some(sol) => {
                if seen.insert(sol.clone()) {
                    out.push(VertexMap {
                        source_n: g.n(),
                        image: sol,
                    });
                }
            }
            None => break,
        }
    }
    out
}

/// Greedy upper bound for the chromatic number (descending-degree order).
fn greedy_bound(g: &Graph) -> u32 {
    let n = g.n() as usize;
    if n == 0 {
        return 0;
    }
    let deg = g.degrees();
    let mut order: Vec<u32> = (0..g.n()).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(deg[v as usize]), v));
    let out = g.out_lists();
    let inc = g.in_lists();
    let mut color = vec![u32::MAX; n];
    let mut best = 0;
    for &v in &order {
        let mut used = BitVec::zeros(n + 1);
        for &w in out[v as usize].iter().chain(&inc[v as usize]) {
            if color[w as usize] != u32::MAX {
                used.set(color[w as usize] as usize);
            }
        }
        let c = (0..).find(|&c| !used.get(c)).expect("free colour exists") as u32;
        color[v as usize] = c;
        best = best.max(c + 1);
    }
    best
}

/// Exact chromatic number of the underlying undirected graph, or bounds if
/// the budget gives out. The budget is shared across the per-k queries.
pub fn chromatic_number(g: &Graph, budget: Budget) -> (ChiOutcome, SearchReport) {
    let mut report = SearchReport::default();
    if g.has_loop() {
        return (ChiOutcome::HasLoop, report);
    }
    if g.n() == 0 {
        return (ChiOutcome::Exact(0), report);
    }
    if g.arc_count() == 0 {
        return (ChiOutcome::Exact(1), report);
    }
    let hi = greedy_bound(g);
    let mut remaining = budget.nodes;
    for k in 2..=hi {
        if k == hi {
            return (ChiOutcome::Exact(hi), report);
        }
        let (outcome, sub) = hom_exists(g, &clique(k), Budget::nodes(remaining));
        report.nodes += sub.nodes;
        remaining = remaining.saturating_sub(sub.nodes);
        match outcome {
            HomOutcome::Witness(_) => return (ChiOutcome::Exact(k), report),
            HomOutcome::NoHom => {}
            HomOutcome::Unknown => {
                return (ChiOutcome::Bounds { lo: k, hi }, report);
            }
        }
    }
    (ChiOutcome::Exact(hi), report)
}

/// Length of the shortest odd closed walk of a symmetric graph (equals the
/// odd girth); `None` for bipartite graphs. BFS over parity layers.
pub fn odd_girth(g: &Graph) -> Result<Option<u32>> {
    if !g.is_symmetric() {
        return Err(Error::Unsupported(alloc::string::String::from(
            "odd girth needs a symmetric graph",
        )));
    }
    let n = g.n() as usize;
    let out = g.out_lists();
    let mut best: Option<u32> = None;
    for s in 0..n {
        // layered BFS over (vertex, parity)
        let mut dist = vec![u32::MAX; 2 * n];
        let mut queue = alloc::collections::VecDeque::new();
        dist[2 * s] = 0;
        queue.push_back(2 * s);
        while let Some(state) = queue.pop_front() {
            let (v, parity) = (state / 2, state % 2);
            let d = dist[state];
            if let Some(b) = best {
                if d + 1 >= b {
                    continue;
                }
            }
            for &w in &out[v] {
                let next = 2 * w as usize + (1 - parity);
                if dist[next] == u32::MAX {
                    dist[next] = d + 1;
                    queue.push_back(next);
                }
            }
        }
        let odd = dist[2 * s + 1];
        if odd != u32::MAX {
            best = Some(best.map_or(odd, |b| b.min(odd)));
        }
    }
    Ok(best)
}

/// Brute-force isomorphism test with degree-sequence pruning; intended for
/// graphs with at most a dozen vertices.
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.arc_count() != h.arc_count() {
        return false;
    }
    let n = g.n() as usize;
    let key = |gr: &Graph| -> Vec<(u32, u32)> {
        let out = gr.out_lists();
        let inc = gr.in_lists();
        (0..n)
            .map(|v| (out[v].len() as u32, inc[v].len() as u32))
            .collect()
    };
    let gk = key(g);
    let hk = key(h);
    let mut gs = gk.clone();
    let mut hs = hk.clone();
    gs.sort_unstable();
    hs.sort_unstable();
    if gs != hs {
        return false;
    }
    let mut order: Vec<u32> = (0..g.n()).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(gk[v as usize]), v));
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];

    fn place(
        pos: usize,
        order: &[u32],
        g: &Graph,
        h: &Graph,
        gk: &[(u32, u32)],
        hk: &[(u32, u32)],
        map: &mut [u32],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let u = order[pos];
        'cand: for x in 0..h.n() {
            if used[x as usize] || gk[u as usize] != hk[x as usize] {
                continue;
            }
            for &w in &order[..pos] {
                let y = map[w as usize];
                if g.has_arc(u, w) != h.has_arc(x, y) || g.has_arc(w, u) != h.has_arc(y, x) {
                    continue 'cand;
                }
            }
            if g.has_arc(u, u) != h.has_arc(x, x) {
                continue;
            }
            map[u as usize] = x;
            used[x as usize] = true;
            if place(pos + 1, order, g, h, gk, hk, map, used) {
                return true;
            }
            used[x as usize] = false;
            map[u as usize] = u32::MAX;
        }
        false
    }

    place(0, &order, g, h, &gk, &hk, &mut map, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circular_clique, cycle, kneser, tensor_product, Graph};

    fn decide(g: &Graph, h: &Graph) -> bool {
        hom_exists(g, h, Budget::default())
            .0
            .expect_decided("test query")
    }

    /// Independent oracle: tries all |V(H)|^|V(G)| maps.
    fn naive_hom(g: &Graph, h: &Graph) -> bool {
        let n = g.n() as usize;
        let hn = h.n() as usize;
        if n == 0 {
            return true;
        }
        if hn == 0 {
            return false;
        }
        let mut map = vec![0u32; n];
        loop {
            if g.arcs()
                .iter()
                .all(|&(u, v)| h.has_arc(map[u as usize], map[v as usize]))
            {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                map[i] += 1;
                if (map[i] as usize) < hn {
                    break;
                }
                map[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn c5_maps_to_k3_with_witness() {
        let (outcome, _) = hom_exists(&cycle(5), &clique(3), Budget::default());
        match outcome {
            HomOutcome::Witness(w) => w.validate(&cycle(5), &clique(3)).unwrap(),
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn k4_does_not_map_to_circular_7_2() {
        let k72 = circular_clique(7, 2).unwrap();
        assert!(!decide(&clique(4), &k72));
    }

    #[test]
    fn circular_clique_homomorphism_order() {
        // K_{p/q} -> K_{p'/q'} iff p/q <= p'/q', for p, p' <= 9
        let params: Vec<(u32, u32)> = (3..=9u32)
            .flat_map(|p| (1..=4u32).map(move |q| (p, q)))
            .filter(|&(p, q)| p > 2 * q)
            .collect();
        for &(p, q) in &params {
            for &(p2, q2) in &params {
                let a = circular_clique(p, q).unwrap();
                let b = circular_clique(p2, q2).unwrap();
                let expect = (p as u64) * (q2 as u64) <= (p2 as u64) * (q as u64);
                assert_eq!(decide(&a, &b), expect, "K_{p}/{q} -> K_{p2}/{q2}");
            }
        }
    }

    #[test]
    fn agrees_with_naive_on_exhaustive_range() {
        // loop-less symmetric graphs on <= 5 vertices against K_2, K_3, K_4,
        // plus all symmetric graphs with loops on <= 4 vertices.
        for n in 1..=5u32 {
            let pairs: Vec<(u32, u32)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            for mask in 0..(1u64 << pairs.len()) {
                let edges: Vec<(u32, u32)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                for k in 2..=4u32 {
                    assert_eq!(decide(&g, &clique(k)), naive_hom(&g, &clique(k)));
                }
            }
        }
        for n in 1..=3u32 {
            let mut pairs: Vec<(u32, u32)> =
                (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
            pairs.sort_unstable();
            for mask in 0..(1u64 << pairs.len()) {
                let edges: Vec<(u32, u32)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                for k in 2..=3u32 {
                    assert_eq!(decide(&g, &clique(k)), naive_hom(&g, &clique(k)));
                }
            }
        }
    }

    #[test]
    fn agrees_with_naive_on_random_digraphs() {
        // seeded digraph pairs with loops; the naive oracle is the referee
        let mut state: u64 = 0x00d1_5ea5;
        let mut next = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        let mut random_digraph = |n: u32| {
            let mut arcs = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if next() & 1 == 1 {
                        arcs.push((u, v));
                    }
                }
            }
            Graph::new(n, arcs).unwrap()
        };
        for _ in 0..500 {
            let g = random_digraph(4);
            let h = random_digraph(3);
            assert_eq!(decide(&g, &h), naive_hom(&g, &h), "g={g:?} h={h:?}");
            assert_eq!(decide(&h, &g), naive_hom(&h, &g), "g={g:?} h={h:?}");
        }
    }

    #[test]
    fn chromatic_numbers_of_named_graphs() {
        assert_eq!(
            chromatic_number(&cycle(5), Budget::default()).0,
            ChiOutcome::Exact(3)
        );
        assert_eq!(
            chromatic_number(&kneser(5, 2).unwrap(), Budget::default()).0,
            ChiOutcome::Exact(3)
        );
        for n in 1..=8u32 {
            assert_eq!(
                chromatic_number(&clique(n), Budget::default()).0,
                ChiOutcome::Exact(n)
            );
        }
        let looped = Graph::new(1, vec![(0, 0)]).unwrap();
        assert_eq!(
            chromatic_number(&looped, Budget::default()).0,
            ChiOutcome::HasLoop
        );
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let g = kneser(5, 2).unwrap();
        let (outcome, _) = hom_exists(&g, &clique(2), Budget::nodes(1));
        // Deciding non-2-colourability of the Petersen graph in one node is
        // impossible, so this must be an honest unknown — never a wrong answer.
        assert!(matches!(outcome, HomOutcome::Unknown | HomOutcome::NoHom));
        let (chi, _) = chromatic_number(&g, Budget::nodes(1));
        match chi {
            ChiOutcome::Exact(3) => {}
            ChiOutcome::Bounds { lo, hi } => assert!(lo <= 3 && 3 <= hi),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn enumeration_is_complete_and_duplicate_free() {
        // homs C_5 -> K_3: 3 * 2^5 - 3 * 2 = ... count by transfer matrix:
        // proper 3-colourings of a 5-cycle = 2^5 - 2 = 30.
        let sols = all_homs(&cycle(5), &clique(3), Budget::default());
        assert_eq!(sols.len(), 30);
        let set: BTreeSet<_> = sols.iter().map(|w| w.image.clone()).collect();
        assert_eq!(set.len(), 30);
        for w in &sols {
            w.validate(&cycle(5), &clique(3)).unwrap();
        }
    }

    #[test]
    fn sampling_returns_distinct_valid_witnesses() {
        let g = tensor_product(&cycle(5), &cycle(5));
        let samples = sample_homs(&g, &clique(3), Budget::default(), 10, 7);
        assert_eq!(samples.len(), 10);
        let set: BTreeSet<_> = samples.iter().map(|w| w.image.clone()).collect();
        assert_eq!(set.len(), 10);
        for w in &samples {
            w.validate(&g, &clique(3)).unwrap();
        }
    }

    #[test]
    fn folding_keeps_decisions_and_witnesses_valid() {
        // a star plus twin leaves folds heavily; decisions must be unchanged
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let (outcome, report) = hom_exists(&g, &clique(2), Budget::default());
        assert!(report.folded_vertices >= 3);
        match outcome {
            HomOutcome::Witness(w) => w.validate(&g, &clique(2)).unwrap(),
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn monotone_under_composition_sampled() {
        let graphs = [
            cycle(5),
            clique(3),
            circular_clique(7, 2).unwrap(),
            clique(4),
        ];
        for g in &graphs {
            for h in &graphs {
                for f in &graphs {
                    if decide(g, h) && decide(h, f) {
                        assert!(decide(g, f), "transitivity broken");
                    }
                }
            }
        }
    }

    #[test]
    fn universal_vertex_needs_a_fourth_colour() {
        // oracle first: the naive map enumeration fixes chi = 4
        let g = crate::graph::add_universal_vertex(&cycle(5));
        assert!(!naive_hom(&g, &clique(3)));
        assert!(naive_hom(&g, &clique(4)));
        assert_eq!(
            chromatic_number(&g, Budget::default()).0,
            ChiOutcome::Exact(4)
        );
    }

    #[test]
    fn chromatic_number_is_monotone_under_homomorphisms() {
        let graphs = [
            cycle(5),
            cycle(7),
            clique(3),
            clique(4),
            circular_clique(7, 2).unwrap(),
            kneser(5, 2).unwrap(),
        ];
        let chi = |g: &Graph| match chromatic_number(g, Budget::default()).0 {
            ChiOutcome::Exact(k) => k,
            other => panic!("expected exact value, got {other:?}"),
        };
        for g in &graphs {
            for h in &graphs {
                if decide(g, h) {
                    assert!(chi(g) <= chi(h));
                }
            }
        }
    }

    #[test]
    fn odd_girth_values() {
        assert_eq!(odd_girth(&cycle(7)).unwrap(), Some(7));
        assert_eq!(odd_girth(&clique(2)).unwrap(), None);
        assert_eq!(odd_girth(&circular_clique(7, 2).unwrap()).unwrap(), Some(3));
        assert_eq!(odd_girth(&kneser(5, 2).unwrap()).unwrap(), Some(5));
    }

    #[test]
    fn isomorphism_examples() {
        // K_{5/2} is the 5-cycle in disguise
        let k52 = circular_clique(5, 2).unwrap();
        assert!(isomorphic(&k52, &cycle(5)));
        assert!(!isomorphic(&cycle(6), &cycle(5)));
        assert!(!isomorphic(&clique(4), &cycle(4)));
        // Petersen: pentagon + pentagram + spokes
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        let petersen = Graph::from_edges(10, &edges).unwrap();
        assert!(isomorphic(&kneser(5, 2).unwrap(), &petersen));
    }
}
