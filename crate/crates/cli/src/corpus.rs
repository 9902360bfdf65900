//! Deterministic graph corpora for exhaustive and randomised checks.

use homkit_core::Graph;

/// Tiny deterministic generator (splitmix64); good enough for sampling
/// test corpora and fully reproducible across platforms.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// Every labelled symmetric graph on exactly `n` vertices.
pub fn symmetric_graphs(n: u32, with_loops: bool) -> Vec<Graph> {
    let mut slots: Vec<(u32, u32)> = Vec::new();
    for u in 0..n {
        for v in u..n {
            if u != v || with_loops {
                slots.push((u, v));
            }
        }
    }
    (0..(1u64 << slots.len()))
        .map(|mask| {
            let edges: Vec<(u32, u32)> = slots
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(n, &edges).expect("corpus edges are in range")
        })
        .collect()
}

/// Every labelled symmetric graph on 1 to `n` vertices.
pub fn symmetric_graphs_up_to(n: u32, with_loops: bool) -> Vec<Graph> {
    (1..=n)
        .flat_map(|k| symmetric_graphs(k, with_loops))
        .collect()
}

/// Every labelled digraph (loops included) on exactly `n` vertices.
pub fn digraphs(n: u32) -> Vec<Graph> {
    let slots: Vec<(u32, u32)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
    (0..(1u64 << slots.len()))
        .map(|mask| {
            let arcs: Vec<(u32, u32)> = slots
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a)
                .collect();
            Graph::new(n, arcs).expect("corpus arcs are in range")
        })
        .collect()
}

/// Every labelled digraph on 1 to `n` vertices.
pub fn digraphs_up_to(n: u32) -> Vec<Graph> {
    (1..=n).flat_map(digraphs).collect()
}

/// A random loopless symmetric graph with edge probability one half.
pub fn random_symmetric(rng: &mut SplitMix64, n: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.coin() {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("edges in range")
}

/// A random digraph (loops allowed) with arc probability one half.
pub fn random_digraph(rng: &mut SplitMix64, n: u32) -> Graph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.coin() {
                arcs.push((u, v));
            }
        }
    }
    Graph::new(n, arcs).expect("arcs in range")
}
