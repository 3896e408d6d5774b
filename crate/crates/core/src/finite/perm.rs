//! Native permutation model of S6 and the orbit-count oracle.
//!
//! S6 statements are verified here independently; the exceptional
//! isomorphism with Sp4(F2) is never constructed.

use super::FinGroup;

/// A permutation of {0, .., 5}; entry i holds the image of i.
pub type Perm6 = [u8; 6];

pub const PERM_ID: Perm6 = [0, 1, 2, 3, 4, 5];

/// The symmetric group S6.
pub struct S6;

impl FinGroup for S6 {
    type Elem = Perm6;

    fn identity(&self) -> Perm6 {
        PERM_ID
    }

    fn mul(&self, a: Perm6, b: Perm6) -> Perm6 {
        // (a b)(i) = a(b(i))
        let mut out = PERM_ID;
        for (i, o) in out.iter_mut().enumerate() {
            *o = a[b[i] as usize];
        }
        out
    }

    fn inv(&self, a: Perm6) -> Perm6 {
        let mut out = PERM_ID;
        for i in 0..6 {
            out[a[i] as usize] = i as u8;
        }
        out
    }

    fn generators(&self) -> Vec<Perm6> {
        vec![transposition(0, 1), [1, 2, 3, 4, 5, 0]]
    }
}

pub fn transposition(i: usize, j: usize) -> Perm6 {
    let mut p = PERM_ID;
    p.swap(i, j);
    p
}

/// Number of orbits of the cyclic group generated by sigma on {0, .., 5}.
pub fn orbit_count(sigma: &Perm6) -> usize {
    let mut seen = [false; 6];
    let mut orbits = 0;
    for start in 0..6 {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = sigma[cur] as usize;
        }
    }
    orbits
}

/// True iff sigma's cyclic orbit count is at least `6 - k`; a product of
/// k transpositions always satisfies this, so a violation proves sigma is
/// not a product of k transpositions.
pub fn s6_orbit_lower_bound(sigma: &Perm6, k: usize) -> bool {
    orbit_count(sigma) >= 6usize.saturating_sub(k)
}

/// Parity of a permutation: true for even.
pub fn is_even(sigma: &Perm6) -> bool {
    let mut seen = [false; 6];
    let mut transpositions = 0;
    for start in 0..6 {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = sigma[cur] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}
