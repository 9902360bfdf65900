//! Polymorphisms, minors, and essential coordinates.
//!
//! An L-ary polymorphism of `(G, H)` is a homomorphism from the L-fold
//! tensor power of `G` to `H`, stored as a dense table over the row-major
//! tuple encoding.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{power, tuple_decode, tuple_encode, Graph, SizeCap};
use crate::hom::{enumerate_homs, Budget, EnumOutcome, SearchReport, VertexMap};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Polymorphism {
    pub arity: u32,
    pub source_n: u32,
    /// Dense value table over `power(G, arity)` indices.
    pub table: Vec<u32>,
}

impl Polymorphism {
    pub fn from_vertex_map(map: &VertexMap, source_n: u32, arity: u32) -> Polymorphism {
        debug_assert_eq!(map.image.len(), (source_n as usize).pow(arity));
        Polymorphism {
            arity,
            source_n,
            table: map.image.clone(),
        }
    }

    #[inline]
    pub fn eval(&self, tuple: &[u32]) -> u32 {
        self.table[tuple_encode(tuple, self.source_n)]
    }

    /// Checks that every tuple of source arcs is carried to a target arc.
    pub fn validate(&self, g: &Graph, h: &Graph) -> Result<()> {
        if g.n() != self.source_n {
            return Err(Error::InvalidParameter(alloc::format!(
                "polymorphism source has {} vertices, graph has {}",
                self.source_n,
                g.n()
            )));
        }
        if self.table.len() != (self.source_n as usize).pow(self.arity) {
            return Err(Error::InvalidWitness {
                u: 0,
                v: 0,
                reason: "table length mismatch",
            });
        }
        let arcs = g.arcs();
        let l = self.arity as usize;
        if l == 0 {
            return Err(Error::InvalidParameter(alloc::string::String::from(
                "arity 0",
            )));
        }
        let mut idx = vec![0usize; l];
        let mut tails = vec![0u32; l];
        let mut heads = vec![0u32; l];
        if arcs.is_empty() {
            return Ok(());
        }
        loop {
            for (i, &a) in idx.iter().enumerate() {
                tails[i] = arcs[a].0;
                heads[i] = arcs[a].1;
            }
            let (x, y) = (self.eval(&tails), self.eval(&heads));
            if !h.has_arc(x, y) {
                return Err(Error::InvalidWitness {
                    u: tuple_encode(&tails, self.source_n) as u32,
                    v: tuple_encode(&heads, self.source_n) as u32,
                    reason: "arc tuple not preserved",
                });
            }
            let mut i = 0;
            loop {
                if i == l {
                    return Ok(());
                }
                idx[i] += 1;
                if idx[i] < arcs.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    /// Precomposes coordinate-wise with vertex maps of the source:
    /// `g(x_1, ..., x_L) = f(m_1(x_1), ..., m_L(x_L))`.
    pub fn precompose(&self, maps: &[Vec<u32>]) -> Polymorphism {
        debug_assert_eq!(maps.len(), self.arity as usize);
        let n = self.source_n;
        let total = self.table.len();
        let mut table = vec![0u32; total];
        for (t, slot) in table.iter_mut().enumerate() {
            let x = tuple_decode(t, n, self.arity);
            let mapped: Vec<u32> = x.iter().zip(maps).map(|(&xi, m)| m[xi as usize]).collect();
            *slot = self.eval(&mapped);
        }
        Polymorphism {
            arity: self.arity,
            source_n: n,
            table,
        }
    }
}

/// A variable re-indexing `pi: [m] -> [n]`, producing an n-ary minor of an
/// m-ary function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorMap {
    pub to_arity: u32,
    /// `map[i]` is `pi(i+1) - 1`: where the i-th original coordinate reads from.
    pub map: Vec<u32>,
}

impl MinorMap {
    pub fn new(to_arity: u32, map: Vec<u32>) -> Result<MinorMap> {
        if map.iter().any(|&t| t >= to_arity) {
            return Err(Error::InvalidParameter(alloc::string::String::from(
                "minor map target out of range",
            )));
        }
        Ok(MinorMap { to_arity, map })
    }

    pub fn from_arity(&self) -> u32 {
        self.map.len() as u32
    }
}

/// The minor of `f` given by `pi`: the n-ary function
/// `(x_1, ..., x_n) -> f(x_{pi(1)}, ..., x_{pi(m)})`.
pub fn minor(f: &Polymorphism, pi: &MinorMap) -> Result<Polymorphism> {
    if pi.from_arity() != f.arity {
        return Err(Error::InvalidParameter(alloc::format!(
            "minor map has arity {}, function has arity {}",
            pi.from_arity(),
            f.arity
        )));
    }
    let n = f.source_n;
    let total = (n as usize).pow(pi.to_arity);
    let mut table = vec![0u32; total];
    let mut args = vec![0u32; f.arity as usize];
    for (t, slot) in table.iter_mut().enumerate() {
        let x = tuple_decode(t, n, pi.to_arity);
        for (i, &p) in pi.map.iter().enumerate() {
            args[i] = x[p as usize];
        }
        *slot = f.eval(&args);
    }
    Ok(Polymorphism {
        arity: pi.to_arity,
        source_n: n,
        table,
    })
}

/// Exactly the coordinates on which the value of `f` can depend, by
/// exhaustive check (0-based).
pub fn essential_coordinates(f: &Polymorphism) -> Vec<u32> {
    let n = f.source_n as usize;
    let l = f.arity as usize;
    let mut essential = Vec::new();
    for i in 0..l {
        let stride = n.pow((l - 1 - i) as u32);
        let mut found = false;
        'scan: for t in 0..f.table.len() {
            if t / stride % n != 0 {
                continue;
            }
            let first = f.table[t];
            for d in 1..n {
                if f.table[t + d * stride] != first {
                    found = true;
                    break 'scan;
                }
            }
        }
        if found {
            essential.push(i as u32);
        }
    }
    essential
}

/// Complete, duplicate-free enumeration of `Pol(G, H)` at the given arity.
/// The visitor returns `false` to stop early.
pub fn enumerate_polymorphisms(
    g: &Graph,
    h: &Graph,
    arity: u32,
    cap: &SizeCap,
    budget: Budget,
    mut visit: impl FnMut(&Polymorphism) -> bool,
) -> Result<(EnumOutcome, SearchReport)> {
    let p = power(g, arity, cap)?;
    let (outcome, report) = enumerate_homs(&p, h, budget, |w| {
        visit(&Polymorphism::from_vertex_map(w, g.n(), arity))
    });
    Ok((outcome, report))
}

/// Collects all polymorphisms; caller keeps the count sane.
pub fn all_polymorphisms(
    g: &Graph,
    h: &Graph,
    arity: u32,
    cap: &SizeCap,
    budget: Budget,
) -> Result<Vec<Polymorphism>> {
    let mut out = Vec::new();
    enumerate_polymorphisms(g, h, arity, cap, budget, |f| {
        out.push(f.clone());
        true
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique, cycle};

    fn projection(arity: u32, coord: u32, n: u32) -> Polymorphism {
        let total = (n as usize).pow(arity);
        let table = (0..total)
            .map(|t| tuple_decode(t, n, arity)[coord as usize])
            .collect();
        Polymorphism {
            arity,
            source_n: n,
            table,
        }
    }

    #[test]
    fn pol_k2_k2_at_arity_2_has_four_elements() {
        // K_2 x K_2 is two disjoint edges, each with two proper 2-colourings.
        let cap = SizeCap::default();
        let pols = all_polymorphisms(&clique(2), &clique(2), 2, &cap, Budget::default()).unwrap();
        assert_eq!(pols.len(), 4);
        for f in &pols {
            f.validate(&clique(2), &clique(2)).unwrap();
        }
    }

    #[test]
    fn arity_one_polymorphisms_contain_identity() {
        for g in [clique(3), cycle(5)] {
            let cap = SizeCap::default();
            let pols = all_polymorphisms(&g, &g, 1, &cap, Budget::default()).unwrap();
            let id: Vec<u32> = (0..g.n()).collect();
            assert!(pols.iter().any(|f| f.table == id));
        }
    }

    #[test]
    fn minor_of_projection_under_merge_is_identity() {
        let g = projection(2, 0, 3);
        let pi = MinorMap::new(1, vec![0, 0]).unwrap();
        let m = minor(&g, &pi).unwrap();
        assert_eq!(m.arity, 1);
        assert_eq!(m.table, vec![0, 1, 2]);
    }

    #[test]
    fn minor_under_bijection_permutes_coordinates() {
        let f = projection(2, 0, 3);
        let swap = MinorMap::new(2, vec![1, 0]).unwrap();
        let g = minor(&f, &swap).unwrap();
        assert_eq!(g.table, projection(2, 1, 3).table);
    }

    #[test]
    fn minor_arity_mismatch_is_rejected() {
        let f = projection(2, 0, 3);
        let pi = MinorMap::new(1, vec![0, 0, 0]).unwrap();
        assert!(minor(&f, &pi).is_err());
    }

    #[test]
    fn diagonal_minor_of_c5_k3_polymorphism_is_again_one() {
        let cap = SizeCap::default();
        let c5 = cycle(5);
        let k3 = clique(3);
        let pols = all_polymorphisms(&c5, &k3, 2, &cap, Budget::default()).unwrap();
        assert!(!pols.is_empty());
        let diag = MinorMap::new(1, vec![0, 0]).unwrap();
        for f in pols.iter().take(50) {
            let m = minor(f, &diag).unwrap();
            m.validate(&c5, &k3).unwrap();
        }
    }

    #[test]
    fn essential_coordinate_detection() {
        assert_eq!(essential_coordinates(&projection(3, 0, 2)), vec![0]);
        let constant = Polymorphism {
            arity: 2,
            source_n: 3,
            table: vec![1; 9],
        };
        assert!(essential_coordinates(&constant).is_empty());
        // f(x, y) = x on C_5 with a dummy y
        let f = projection(2, 0, 5);
        assert_eq!(essential_coordinates(&f), vec![0]);
    }
}
