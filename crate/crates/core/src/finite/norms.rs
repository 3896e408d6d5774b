//! Conjugation-invariant word-norm search: breadth-first balls
//! `B_S(k) = {A : ||A||_S <= k}` over the class closure of `S u S^{-1}`.

use super::{FinGroup, GroupTable};

pub const UNREACHED: u16 = u16::MAX;

/// The per-radius profile of a conjugation-invariant word norm.
pub struct NormBall {
    /// Whether the class closure of S normally generates the group.
    pub generating: bool,
    /// Element count at each exact radius; index 0 counts the identity.
    pub radius_counts: Vec<u64>,
    /// The norm diameter when generating.
    pub diameter: Option<u32>,
    /// Per-element distances (UNREACHED when outside the closure).
    pub dist: Vec<u16>,
    /// Size of the conjugation-closed generating set used.
    pub genset_size: usize,
}

impl NormBall {
    pub fn norm_of(&self, index: u32) -> Option<u16> {
        let d = self.dist[index as usize];
        if d == UNREACHED {
            None
        } else {
            Some(d)
        }
    }
}

/// BFS word-norm profile for the generator set `C(S u S^{-1})`.
pub fn word_norm_profile<G: FinGroup>(table: &GroupTable<G>, s: &[G::Elem]) -> NormBall {
    let n = table.order();
    // conjugation closure of S u S^{-1}, as element indices
    let mut in_genset = vec![false; n];
    for e in s {
        let i = table.index_of(e);
        for &ci in [table.class_of(i), table.class_of(table.inv_idx(i))].iter() {
            for &m in table.class_members(ci) {
                in_genset[m as usize] = true;
            }
        }
    }
    // the identity never counts as a generator step
    let id = table.identity_index();
    in_genset[id as usize] = false;
    let genset: Vec<u32> = (0..n as u32).filter(|&i| in_genset[i as usize]).collect();

    let mut dist = vec![UNREACHED; n];
    dist[id as usize] = 0;
    let mut frontier = vec![id];
    let mut radius_counts = vec![1u64];
    let mut radius: u16 = 0;
    while !frontier.is_empty() {
        radius += 1;
        let mut next = Vec::new();
        for &x in &frontier {
            for &g in &genset {
                let y = table.mul_idx(x, g);
                if dist[y as usize] == UNREACHED {
                    dist[y as usize] = radius;
                    next.push(y);
                }
            }
        }
        if !next.is_empty() {
            radius_counts.push(next.len() as u64);
        }
        frontier = next;
    }
    let reached: u64 = radius_counts.iter().sum();
    let generating = reached == n as u64;
    let diameter = if generating {
        Some(radius_counts.len() as u32 - 1)
    } else {
        None
    };
    NormBall {
        generating,
        radius_counts,
        diameter,
        dist,
        genset_size: genset.len(),
    }
}
