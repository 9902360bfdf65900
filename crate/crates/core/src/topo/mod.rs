//! Box and hom complexes with their two-element symmetry.
//!
//! Complexes are stored by maximal faces; downward closure is implicit.
//! The box complex of `G` lives on `V(G) x {0, 1}` (side 1 is offset by
//! `|V(G)|`) and its faces are the vertex sets of complete bipartite
//! subgraphs of `G x K_2` with both sides non-empty, together with their
//! subsets. The hom complex lives on the arcs of `G`: a set of arcs is a
//! face when every cross pair is again an arc. The involution swaps sides
//! (reverses arcs); for loopless graphs both complexes are free.

pub mod homology;
pub mod wind;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, SizeCap};
use crate::poly::Polymorphism;

pub use homology::{homology, HomologySummary};

/// A finite simplicial complex given by its maximal faces (each sorted,
/// the list deduplicated and free of dominated entries).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    n_vertices: u32,
    maximal_faces: Vec<Vec<u32>>,
}

impl Complex {
    pub fn new(n_vertices: u32, faces: Vec<Vec<u32>>) -> Complex {
        let mut faces: Vec<Vec<u32>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        faces.sort();
        faces.dedup();
        // drop faces contained in another face
        let keep: Vec<bool> = faces
            .iter()
            .map(|f| {
                !faces
                    .iter()
                    .any(|g| g.len() > f.len() && f.iter().all(|v| g.binary_search(v).is_ok()))
            })
            .collect();
        let faces: Vec<Vec<u32>> = faces
            .into_iter()
            .zip(keep)
            .filter_map(|(f, k)| k.then_some(f))
            .collect();
        Complex {
            n_vertices,
            maximal_faces: faces,
        }
    }

    pub fn n_vertices(&self) -> u32 {
        self.n_vertices
    }

    pub fn maximal_faces(&self) -> &[Vec<u32>] {
        &self.maximal_faces
    }

    pub fn is_face(&self, face: &[u32]) -> bool {
        !face.is_empty()
            && self
                .maximal_faces
                .iter()
                .any(|m| face.iter().all(|v| m.binary_search(v).is_ok()))
    }

    /// Every face of the complex, deduplicated, capped.
    pub fn all_faces(&self, cap: &SizeCap) -> Result<BTreeSet<Vec<u32>>> {
        let mut out: BTreeSet<Vec<u32>> = BTreeSet::new();
        for m in &self.maximal_faces {
            let s = m.len();
            if s > 25 {
                return Err(Error::CapExceeded {
                    needed: 1u128 << s.min(127),
                    cap: cap.max_faces,
                    what: "face enumeration",
                });
            }
            for mask in 1u64..(1u64 << s) {
                let face: Vec<u32> = (0..s)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| m[i])
                    .collect();
                out.insert(face);
                cap.faces(out.len() as u128, "face enumeration")?;
            }
        }
        Ok(out)
    }
}

/// A complex with a vertex involution whose induced face map preserves the
/// complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z2Complex {
    pub complex: Complex,
    pub involution: Vec<u32>,
}

impl Z2Complex {
    pub fn new(complex: Complex, involution: Vec<u32>) -> Result<Z2Complex> {
        if involution.len() != complex.n_vertices() as usize {
            return Err(Error::InvalidParameter(String::from(
                "involution length differs from vertex count",
            )));
        }
        for (v, &w) in involution.iter().enumerate() {
            if w as usize >= involution.len() || involution[w as usize] != v as u32 {
                return Err(Error::InvalidParameter(String::from(
                    "vertex map is not an involution",
                )));
            }
        }
        let k = Z2Complex {
            complex,
            involution,
        };
        for m in k.complex.maximal_faces() {
            let img = k.image_of(m);
            if !k.complex.is_face(&img) {
                return Err(Error::InvalidParameter(String::from(
                    "faces are not closed under the involution",
                )));
            }
        }
        Ok(k)
    }

    pub fn image_of(&self, face: &[u32]) -> Vec<u32> {
        let mut img: Vec<u32> = face.iter().map(|&v| self.involution[v as usize]).collect();
        img.sort_unstable();
        img
    }

    /// Free means no face meets its antipodal image.
    pub fn is_free(&self) -> bool {
        self.complex.maximal_faces().iter().all(|m| {
            let img = self.image_of(m);
            m.iter().all(|v| img.binary_search(v).is_err())
        })
    }
}

// ---------------------------------------------------------------------------
// Box and hom complexes
// ---------------------------------------------------------------------------

fn symmetric_out_masks(g: &Graph) -> Result<Vec<u64>> {
    if !g.is_symmetric() {
        return Err(Error::Unsupported(String::from(
            "complex needs a symmetric graph",
        )));
    }
    if g.n() > 32 {
        return Err(Error::Unsupported(String::from(
            "complex construction is capped at 32 vertices",
        )));
    }
    let mut masks = vec![0u64; g.n() as usize];
    for &(u, v) in g.arcs() {
        masks[u as usize] |= 1 << v;
    }
    Ok(masks)
}

/// Maximal bicliques `(A, B)` with `A x B` inside the arc relation given by
/// `tail_masks` / `head_masks`, both sides non-empty, via closure pairs.
fn maximal_bicliques(
    out_masks: &[u64],
    in_masks: &[u64],
    cap: &SizeCap,
) -> Result<Vec<(u64, u64)>> {
    let n = out_masks.len();
    cap.faces(1u128 << n.min(127), "biclique enumeration")?;
    let mut found = BTreeSet::new();
    for a in 1u64..(1u64 << n) {
        let mut b = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut rest = a;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            b &= out_masks[v];
            rest &= rest - 1;
        }
        if b == 0 {
            continue;
        }
        let mut a_closed = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut rest = b;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            a_closed &= in_masks[v];
            rest &= rest - 1;
        }
        if a_closed == a {
            found.insert((a, b));
        }
    }
    Ok(found.into_iter().collect())
}

/// The box complex of a symmetric graph: vertices `v` (side 0) and
/// `n + v` (side 1), maximal faces from maximal complete bipartite
/// subgraphs of `G x K_2`, involution swapping sides.
pub fn box_complex(g: &Graph, cap: &SizeCap) -> Result<Z2Complex> {
    let masks = symmetric_out_masks(g)?;
    let n = g.n();
    let bicliques = maximal_bicliques(&masks, &masks, cap)?;
    let faces: Vec<Vec<u32>> = bicliques
        .iter()
        .map(|&(a, b)| {
            let mut f: Vec<u32> = (0..n).filter(|&v| a >> v & 1 == 1).collect();
            f.extend((0..n).filter(|&v| b >> v & 1 == 1).map(|v| n + v));
            f
        })
        .collect();
    let involution: Vec<u32> = (0..2 * n)
        .map(|v| if v < n { v + n } else { v - n })
        .collect();
    Z2Complex::new(Complex::new(2 * n, faces), involution)
}

/// The hom complex of a symmetric graph, on its arcs, together with the
/// arc labels in vertex order. Loops are allowed but make the complex
/// non-free; [`Z2Complex::is_free`] reports that.
pub fn hom_complex(g: &Graph, cap: &SizeCap) -> Result<(Z2Complex, Vec<(u32, u32)>)> {
    let out_masks = symmetric_out_masks(g)?;
    let in_masks = out_masks.clone(); // symmetric
    let arcs: Vec<(u32, u32)> = g.arcs().to_vec();
    let index_of: BTreeMap<(u32, u32), u32> = arcs
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, i as u32))
        .collect();
    let bicliques = maximal_bicliques(&out_masks, &in_masks, cap)?;
    let faces: Vec<Vec<u32>> = bicliques
        .iter()
        .map(|&(u_mask, v_mask)| {
            let mut f = Vec::new();
            for u in 0..g.n() {
                if u_mask >> u & 1 == 0 {
                    continue;
                }
                for v in 0..g.n() {
                    if v_mask >> v & 1 == 1 {
                        f.push(index_of[&(u, v)]);
                    }
                }
            }
            f
        })
        .collect();
    let involution: Vec<u32> = arcs.iter().map(|&(u, v)| index_of[&(v, u)]).collect();
    let k = Z2Complex::new(Complex::new(arcs.len() as u32, faces), involution)?;
    Ok((k, arcs))
}

// ---------------------------------------------------------------------------
// Quotient by the involution
// ---------------------------------------------------------------------------

/// The quotient complex of a free involution, computed on the barycentric
/// subdivision so that the simplicial quotient has the homotopy type of the
/// quotient space. Vertices of the result are orbit classes of faces of the
/// input; faces are images of subdivision chains.
pub fn quotient(k: &Z2Complex, cap: &SizeCap) -> Result<Complex> {
    if !k.is_free() {
        return Err(Error::Unsupported(String::from(
            "quotient needs a free involution",
        )));
    }
    let faces = k.complex.all_faces(cap)?;
    let face_list: Vec<Vec<u32>> = faces.into_iter().collect();
    let index: BTreeMap<&[u32], u32> = face_list
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i as u32))
        .collect();
    // orbit representative: the lexicographically smaller of face and image
    let mut orbit_of = vec![0u32; face_list.len()];
    let mut orbit_count = 0u32;
    let mut orbit_index: BTreeMap<u32, u32> = BTreeMap::new();
    for (i, f) in face_list.iter().enumerate() {
        let img = k.image_of(f);
        let rep = if img.as_slice() < f.as_slice() {
            index[img.as_slice()]
        } else {
            i as u32
        };
        let next = orbit_count;
        let id = *orbit_index.entry(rep).or_insert_with(|| {
            orbit_count += 1;
            next
        });
        orbit_of[i] = id;
    }

    // maximal chains: a maximal face plus an order of deletion of its vertices
    let mut total: u128 = 0;
    for m in k.complex.maximal_faces() {
        let mut fact: u128 = 1;
        for i in 1..=m.len() as u128 {
            fact = fact.saturating_mul(i);
        }
        total = total.saturating_add(fact);
        cap.faces(total, "subdivision chains")?;
    }
    let mut out_faces: BTreeSet<Vec<u32>> = BTreeSet::new();
    for m in k.complex.maximal_faces() {
        let mut perm: Vec<u32> = m.clone();
        permute_chains(&mut perm, 0, &mut |order: &[u32]| {
            // chain: order[..1], order[..2], ..., full face (each sorted)
            let mut chain = Vec::with_capacity(order.len());
            for l in 1..=order.len() {
                let mut prefix: Vec<u32> = order[..l].to_vec();
                prefix.sort_unstable();
                chain.push(orbit_of[index[prefix.as_slice()] as usize]);
            }
            chain.sort_unstable();
            out_faces.insert(chain);
        });
    }
    Ok(Complex::new(orbit_count, out_faces.into_iter().collect()))
}

fn permute_chains(items: &mut Vec<u32>, k: usize, visit: &mut impl FnMut(&[u32])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_chains(items, k + 1, visit);
        items.swap(k, i);
    }
}

// ---------------------------------------------------------------------------
// Induced simplicial maps on hom complexes
// ---------------------------------------------------------------------------

/// The simplicial map a polymorphism induces between hom complexes:
/// an L-tuple of source arcs maps to the arc of componentwise images.
#[derive(Clone, Debug)]
pub struct InducedHomMap {
    pub arity: u32,
    pub src_arcs: Vec<(u32, u32)>,
    pub tgt_arcs: Vec<(u32, u32)>,
    /// Row-major table over L-tuples of source-arc indices.
    pub table: Vec<u32>,
}

/// Builds the induced map of a polymorphism `f` of `(G, H)`: the tuple of
/// arcs `((u_1, v_1), ..., (u_L, v_L))` goes to
/// `(f(u_1, ..., u_L), f(v_1, ..., v_L))`. Rejects non-polymorphisms.
pub fn induced_hom_map(f: &Polymorphism, g: &Graph, h: &Graph) -> Result<InducedHomMap> {
    f.validate(g, h)?;
    let src_arcs: Vec<(u32, u32)> = g.arcs().to_vec();
    let tgt_arcs: Vec<(u32, u32)> = h.arcs().to_vec();
    let tgt_index: BTreeMap<(u32, u32), u32> = tgt_arcs
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, i as u32))
        .collect();
    let l = f.arity as usize;
    let m = src_arcs.len();
    let total = m
        .checked_pow(l as u32)
        .ok_or(Error::Overflow("induced map table"))?;
    let mut table = vec![0u32; total];
    let mut tails = vec![0u32; l];
    let mut heads = vec![0u32; l];
    for (t, slot) in table.iter_mut().enumerate() {
        let mut rest = t;
        for i in (0..l).rev() {
            let a = src_arcs[rest % m];
            tails[i] = a.0;
            heads[i] = a.1;
            rest /= m;
        }
        let arc = (f.eval(&tails), f.eval(&heads));
        *slot = *tgt_index.get(&arc).ok_or(Error::InvalidWitness {
            u: arc.0,
            v: arc.1,
            reason: "image is not an arc",
        })?;
    }
    Ok(InducedHomMap {
        arity: f.arity,
        src_arcs,
        tgt_arcs,
        table,
    })
}

impl InducedHomMap {
    pub fn eval(&self, arc_tuple: &[u32]) -> u32 {
        let m = self.src_arcs.len();
        let idx = arc_tuple
            .iter()
            .fold(0usize, |acc, &a| acc * m + a as usize);
        self.table[idx]
    }

    /// Checks that every maximal face of the L-fold product of the source
    /// hom complex lands inside a face of the target hom complex.
    pub fn is_simplicial(&self, g: &Graph, h: &Graph, cap: &SizeCap) -> Result<bool> {
        let (src_complex, _) = hom_complex(g, cap)?;
        let l = self.arity as usize;
        let max_faces = src_complex.complex.maximal_faces();
        if max_faces.is_empty() {
            return Ok(true);
        }
        let mut choice = vec![0usize; l];
        loop {
            // the product face is the cartesian product of the chosen faces
            let sizes: Vec<usize> = choice.iter().map(|&c| max_faces[c].len()).collect();
            let mut pick = vec![0usize; l];
            let mut image: BTreeSet<u32> = BTreeSet::new();
            loop {
                let tuple: Vec<u32> = (0..l).map(|i| max_faces[choice[i]][pick[i]]).collect();
                image.insert(self.eval(&tuple));
                let mut i = 0;
                loop {
                    if i == l {
                        break;
                    }
                    pick[i] += 1;
                    if pick[i] < sizes[i] {
                        break;
                    }
                    pick[i] = 0;
                    i += 1;
                }
                if pick.iter().all(|&x| x == 0) {
                    break;
                }
            }
            // cross condition in H over the image arc set
            for &a in &image {
                for &b in &image {
                    let (u, _) = self.tgt_arcs[a as usize];
                    let (_, v2) = self.tgt_arcs[b as usize];
                    if !h.has_arc(u, v2) {
                        return Ok(false);
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == l {
                    return Ok(true);
                }
                choice[i] += 1;
                if choice[i] < max_faces.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Equivariance: reversing every source arc reverses the image arc.
    pub fn is_equivariant(&self) -> bool {
        let m = self.src_arcs.len();
        let src_index: BTreeMap<(u32, u32), u32> = self
            .src_arcs
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, i as u32))
            .collect();
        let tgt_index: BTreeMap<(u32, u32), u32> = self
            .tgt_arcs
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, i as u32))
            .collect();
        let l = self.arity as usize;
        let total = self.table.len();
        for t in 0..total {
            let mut rest = t;
            let mut flipped = vec![0u32; l];
            for i in (0..l).rev() {
                let (u, v) = self.src_arcs[rest % m];
                flipped[i] = src_index[&(v, u)];
                rest /= m;
            }
            let (x, y) = self.tgt_arcs[self.table[t] as usize];
            if self.eval(&flipped) != tgt_index[&(y, x)] {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circular_clique, clique, cycle, Graph};

    fn box_of(g: &Graph) -> Z2Complex {
        box_complex(g, &SizeCap::default()).unwrap()
    }

    #[test]
    fn box_complex_of_k2_is_two_edges() {
        let k = box_of(&clique(2));
        assert_eq!(k.complex.n_vertices(), 4);
        assert_eq!(k.complex.maximal_faces(), &[vec![0, 3], vec![1, 2]]);
        assert!(k.is_free());
    }

    #[test]
    fn box_complex_of_k3_is_a_hexagonal_annulus() {
        let k = box_of(&clique(3));
        assert_eq!(k.complex.maximal_faces().len(), 6);
        assert!(k.complex.maximal_faces().iter().all(|f| f.len() == 3));
        assert!(k.is_free());
    }

    #[test]
    fn box_complex_of_loop_is_not_free() {
        let g = Graph::new(1, vec![(0, 0)]).unwrap();
        let k = box_of(&g);
        assert!(!k.is_free());
    }

    #[test]
    fn hom_complex_shapes() {
        let cap = SizeCap::default();
        let (k, arcs) = hom_complex(&cycle(5), &cap).unwrap();
        assert_eq!(arcs.len(), 10);
        assert_eq!(k.complex.maximal_faces().len(), 10);
        assert!(k.is_free());
        let (k2, arcs2) = hom_complex(&clique(2), &cap).unwrap();
        assert_eq!(arcs2.len(), 2);
        // two isolated vertices swapped by the involution
        assert_eq!(k2.complex.maximal_faces(), &[vec![0], vec![1]]);
        assert_eq!(k2.involution, vec![1, 0]);
        assert!(k2.is_free());
    }

    #[test]
    fn hom_complex_of_a_loop_is_flagged_non_free() {
        let g = Graph::new(1, vec![(0, 0)]).unwrap();
        let (k, arcs) = hom_complex(&g, &SizeCap::default()).unwrap();
        assert_eq!(arcs, vec![(0, 0)]);
        assert!(!k.is_free());
    }

    #[test]
    fn induced_map_rejects_non_polymorphisms() {
        let c5 = cycle(5);
        let k3 = clique(3);
        let constant = Polymorphism {
            arity: 1,
            source_n: 5,
            table: vec![0; 5],
        };
        assert!(induced_hom_map(&constant, &c5, &k3).is_err());
    }

    #[test]
    fn quotient_of_swapped_points_is_a_point() {
        let c = Complex::new(2, vec![vec![0], vec![1]]);
        let k = Z2Complex::new(c, vec![1, 0]).unwrap();
        let q = quotient(&k, &SizeCap::default()).unwrap();
        assert_eq!(q.maximal_faces(), &[vec![0]]);
    }

    #[test]
    fn quotient_rejects_non_free() {
        let g = Graph::new(1, vec![(0, 0)]).unwrap();
        let k = box_of(&g);
        assert!(quotient(&k, &SizeCap::default()).is_err());
    }

    #[test]
    fn face_membership_and_enumeration() {
        let c = Complex::new(4, vec![vec![0, 1, 2], vec![2, 3]]);
        assert!(c.is_face(&[0, 2]));
        assert!(!c.is_face(&[0, 3]));
        let all = c.all_faces(&SizeCap::default()).unwrap();
        assert_eq!(all.len(), 7 + 2); // subsets of the triangle plus {3}, {2,3}
    }

    #[test]
    fn circular_7_2_box_complex_is_free() {
        let k = box_of(&circular_clique(7, 2).unwrap());
        assert!(k.is_free());
        assert_eq!(k.complex.n_vertices(), 14);
    }
}
