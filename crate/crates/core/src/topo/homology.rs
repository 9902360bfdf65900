//! Euler characteristic, connected components, and first homology over the
//! integers via Smith normal form of the 2-skeleton boundary matrices.
//!
//! H1 only depends on dimensions at most two, so the chain complex is cut
//! there. Simplex orientation comes from sorted vertex order. Arithmetic is
//! exact `i128` with overflow checks; there is no floating point anywhere
//! in this module.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::SizeCap;
use crate::topo::Complex;

/// Abelian invariants of a complex: Euler characteristic over all faces,
/// number of components, and the rank and torsion coefficients of H1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub euler: i64,
    pub betti0: u32,
    pub betti1: u32,
    pub torsion1: Vec<u64>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            self.parent[x as usize] = self.parent[self.parent[x as usize] as usize];
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb as usize] = ra;
        }
    }
}

pub fn homology(c: &Complex, cap: &SizeCap) -> Result<HomologySummary> {
    let all = c.all_faces(cap)?;
    let mut euler: i64 = 0;
    let mut vertices: Vec<u32> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut triangles: Vec<(u32, u32, u32)> = Vec::new();
    for face in &all {
        euler += if face.len() % 2 == 1 { 1 } else { -1 };
        match face.as_slice() {
            [v] => vertices.push(*v),
            [a, b] => edges.push((*a, *b)),
            [a, b, c] => triangles.push((*a, *b, *c)),
            _ => {}
        }
    }

    // components of the covered vertex set
    let vertex_index: BTreeMap<u32, u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    let mut uf = UnionFind::new(vertices.len());
    for &(a, b) in &edges {
        uf.union(vertex_index[&a], vertex_index[&b]);
    }
    let mut roots: Vec<u32> = (0..vertices.len() as u32).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    let betti0 = roots.len() as u32;

    // boundary matrices of the 2-skeleton
    let edge_index: BTreeMap<(u32, u32), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let d1: Vec<Vec<i128>> = {
        let mut m = vec![vec![0i128; edges.len()]; vertices.len()];
        for (j, &(a, b)) in edges.iter().enumerate() {
            m[vertex_index[&a] as usize][j] -= 1;
            m[vertex_index[&b] as usize][j] += 1;
        }
        m
    };
    let d2: Vec<Vec<i128>> = {
        let mut m = vec![vec![0i128; triangles.len()]; edges.len()];
        for (j, &(a, b, c)) in triangles.iter().enumerate() {
            m[edge_index[&(b, c)]][j] += 1;
            m[edge_index[&(a, c)]][j] -= 1;
            m[edge_index[&(a, b)]][j] += 1;
        }
        m
    };

    let diag1 = smith_diagonal(d1)?;
    let diag2 = smith_diagonal(d2)?;
    let rank1 = diag1.iter().filter(|&&d| d != 0).count();
    let rank2 = diag2.iter().filter(|&&d| d != 0).count();
    let cycles = edges.len() - rank1;
    debug_assert!(cycles >= rank2, "image of d2 must lie in the kernel of d1");
    let betti1 = (cycles - rank2) as u32;
    let torsion1: Vec<u64> = diag2
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| u64::try_from(d).expect("torsion coefficient fits in u64"))
        .collect();
    Ok(HomologySummary {
        euler,
        betti0,
        betti1,
        torsion1,
    })
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

fn checked_sub_mul(a: i128, q: i128, b: i128, what: &'static str) -> Result<i128> {
    q.checked_mul(b)
        .and_then(|qb| a.checked_sub(qb))
        .ok_or(Error::Overflow(what))
}

/// Diagonal of the Smith normal form (non-negative, each entry dividing the
/// next). Destroys its argument.
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Result<Vec<i128>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0usize;
    while t < rows && t < cols {
        // smallest non-zero entry of the remaining submatrix becomes the pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t] / m[t][t];
                    for j in t..cols {
                        m[i][j] = checked_sub_mul(m[i][j], q, m[t][j], "Smith row reduction")?;
                    }
                    if m[i][t] != 0 {
                        // remainder smaller than the pivot: swap it up
                        m.swap(t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j] / m[t][t];
                    for i in t..rows {
                        m[i][j] = checked_sub_mul(m[i][j], q, m[i][t], "Smith column reduction")?;
                    }
                    if m[t][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // divisibility: the pivot must divide every remaining entry
            let mut fixed = None;
            'find: for i in t + 1..rows {
                for j in t + 1..cols {
                    if m[i][j] % m[t][t] != 0 {
                        fixed = Some(i);
                        break 'find;
                    }
                }
            }
            match fixed {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] = m[t][j]
                            .checked_add(m[i][j])
                            .ok_or(Error::Overflow("Smith divisibility fix"))?;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(c: &Complex) -> HomologySummary {
        homology(c, &SizeCap::default()).unwrap()
    }

    #[test]
    fn single_triangle_is_contractible() {
        let c = Complex::new(3, vec![vec![0, 1, 2]]);
        let s = summary(&c);
        assert_eq!(s.euler, 1);
        assert_eq!((s.betti0, s.betti1), (1, 0));
        assert!(s.torsion1.is_empty());
    }

    #[test]
    fn hollow_triangle_is_a_circle() {
        let c = Complex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        let s = summary(&c);
        assert_eq!(s.euler, 0);
        assert_eq!((s.betti0, s.betti1), (1, 1));
        assert!(s.torsion1.is_empty());
    }

    #[test]
    fn two_points_have_two_components() {
        let c = Complex::new(2, vec![vec![0], vec![1]]);
        let s = summary(&c);
        assert_eq!((s.euler, s.betti0, s.betti1), (2, 2, 0));
    }

    #[test]
    fn minimal_projective_plane_has_torsion_two() {
        // the 6-vertex triangulation of the projective plane
        // (antipodal quotient of the icosahedron)
        let faces: Vec<Vec<u32>> = vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 4, 5],
            vec![2, 3, 5],
            vec![1, 3, 5],
            vec![1, 3, 4],
        ];
        let c = Complex::new(6, faces);
        let s = summary(&c);
        assert_eq!(s.euler, 1);
        assert_eq!((s.betti0, s.betti1), (1, 0));
        assert_eq!(s.torsion1, vec![2]);
    }

    #[test]
    fn smith_of_known_matrix() {
        // [[2, 4], [-2, 6]] has determinant 20; SNF is diag(2, 10)
        let d = smith_diagonal(vec![vec![2, 4], vec![-2, 6]]).unwrap();
        assert_eq!(d, vec![2, 10]);
        let d = smith_diagonal(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(d, vec![1, 1]);
        let d = smith_diagonal(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(d.is_empty());
        // divisibility normalisation: diag(2, 3) becomes diag(1, 6)
        let d = smith_diagonal(vec![vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(d, vec![1, 6]);
    }
}
