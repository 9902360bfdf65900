//! Winding numbers of closed walks in circular cliques, and the winding
//! profile of a polymorphism from an odd cycle.
//!
//! For odd `p` with `2 < p/q < 4`, a step `delta` of `K_{p/q}` has a unique
//! odd lift `p - 2*delta` of magnitude at most `p - 2q < p/2`; the sign
//! convention makes the lift of step `+q` positive. A closed walk's lifts
//! sum to a multiple of `p`, and that multiple is its winding number. The
//! lift sum is invariant under inserting backtracks and four-cycles, which
//! is what makes the per-coordinate profile of a polymorphism well defined
//! on homotopy classes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{circular_clique, cycle, tuple_encode};
use crate::poly::Polymorphism;

fn check_target(p: u32, q: u32) -> Result<()> {
    if p % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "winding over K_{p}/{q} needs odd p"
        )));
    }
    if q == 0 || p <= 2 * q || p >= 4 * q {
        return Err(Error::InvalidParameter(format!(
            "winding needs 2 < p/q < 4, got {p}/{q}"
        )));
    }
    Ok(())
}

/// The unique lift of a step of `K_{p/q}` to the odd generators of the
/// double cover; `delta` must lie in `q ..= p - q`.
fn lift(p: u32, q: u32, delta: u32) -> Result<i64> {
    if delta < q || delta > p - q {
        return Err(Error::InvalidWitness {
            u: delta,
            v: delta,
            reason: "step is not an arc",
        });
    }
    Ok(p as i64 - 2 * delta as i64)
}

/// Winding number of a closed walk in `K_{p/q}` (vertices as residues).
pub fn winding(walk: &[u32], p: u32, q: u32) -> Result<i64> {
    check_target(p, q)?;
    if walk.len() < 2 || walk.first() != walk.last() {
        return Err(Error::Unsupported(alloc::string::String::from(
            "walk is not closed",
        )));
    }
    if let Some(&v) = walk.iter().find(|&&v| v >= p) {
        return Err(Error::VertexOutOfRange { vertex: v, n: p });
    }
    let mut total: i64 = 0;
    for w in walk.windows(2) {
        let delta = (w[1] + p - w[0]) % p;
        total += lift(p, q, delta)?;
    }
    if total % p as i64 != 0 {
        return Err(Error::ProfileInvariant(format!(
            "lift sum {total} of a closed walk is not a multiple of {p}"
        )));
    }
    Ok(total / p as i64)
}

/// The per-coordinate winding data of a polymorphism into a circular
/// clique: `a[l]` is the winding of the image of the closed walk where
/// coordinate `l` runs two positive laps and every other coordinate
/// alternates, and `d` is the winding of the image of one diagonal lap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindingProfile {
    pub a: Vec<i64>,
    pub d: i64,
}

/// The mirror automorphism of the n-cycle fixing the base edge `{0, 1}`.
pub fn mirror_map(n: u32) -> Vec<u32> {
    (0..n).map(|i| (1 + n - i) % n).collect()
}

/// Computes the winding profile of `f` in `Pol(C_n, K_{p/q})` for odd `n`
/// and odd `p`. The structural invariants (each `a[l]` even, `d` odd, and
/// the sums matching 2d) are enforced: a violation is an error, never a
/// silent fix.
pub fn winding_profile(f: &Polymorphism, n: u32, p: u32, q: u32) -> Result<WindingProfile> {
    check_target(p, q)?;
    if n % 2 == 0 || n < 3 {
        return Err(Error::InvalidParameter(format!(
            "profile needs an odd cycle, got n={n}"
        )));
    }
    let source = cycle(n);
    let target = circular_clique(p, q)?;
    f.validate(&source, &target)?;
    let l = f.arity as usize;

    let image_at = |positions: &[u32]| -> u32 { f.table[tuple_encode(positions, n)] };

    // one diagonal lap: n steps, every coordinate +1
    let mut diag_walk = Vec::with_capacity(n as usize + 1);
    for t in 0..=n {
        diag_walk.push(image_at(&vec![t % n; l]));
    }
    let d = winding(&diag_walk, p, q)?;

    // per coordinate: two laps on that coordinate, alternation elsewhere
    let mut a = Vec::with_capacity(l);
    for active in 0..l {
        let mut walk = Vec::with_capacity(2 * n as usize + 1);
        for t in 0..=(2 * n) {
            let positions: Vec<u32> = (0..l)
                .map(|i| if i == active { t % n } else { t % 2 })
                .collect();
            walk.push(image_at(&positions));
        }
        a.push(winding(&walk, p, q)?);
    }

    if d % 2 == 0 {
        return Err(Error::ProfileInvariant(format!("d = {d} is even")));
    }
    if let Some(bad) = a.iter().find(|&&x| x % 2 != 0) {
        return Err(Error::ProfileInvariant(format!(
            "coordinate winding {bad} is odd"
        )));
    }
    let sum: i64 = a.iter().sum();
    if sum != 2 * d {
        return Err(Error::ProfileInvariant(format!(
            "sum of a is {sum}, expected 2d = {}",
            2 * d
        )));
    }
    Ok(WindingProfile { a, d })
}
