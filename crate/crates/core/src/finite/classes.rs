//! Normal closures and covering numbers over enumerated groups.

use super::{BitSet, FinGroup, GroupTable};

/// Smallest normal subgroup containing the given elements, as a bitmap
/// over element indices.
///
/// Incremental algorithm: close the current generator list into a
/// subgroup, then add any generator conjugate that escaped; repeat.
pub fn normal_closure_of_set<G: FinGroup>(
    table: &GroupTable<G>,
    elems: &[G::Elem],
) -> BitSet {
    let n = table.order();
    let id = table.group.identity();
    let mut gens: Vec<G::Elem> = Vec::new();
    for e in elems {
        if *e != id && !gens.contains(e) {
            gens.push(*e);
        }
    }
    let group_gens = table.group.generators();
    loop {
        // subgroup closure of the current generator list
        let mut h = BitSet::new(n);
        h.insert(table.identity_index() as usize);
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &gens {
                    let y = table.group.mul(*x, *g);
                    if h.insert(table.index_of(&y) as usize) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        // verify conjugation stability; extend and retry on escape
        let mut escaped = None;
        'scan: for y in &gens {
            for t in &group_gens {
                let z = table
                    .group
                    .mul(table.group.mul(*t, *y), table.group.inv(*t));
                if !h.contains(table.index_of(&z) as usize) {
                    escaped = Some(z);
                    break 'scan;
                }
            }
        }
        match escaped {
            Some(z) => gens.push(z),
            None => return h,
        }
    }
}

/// Normal closure of a single element.
pub fn normal_closure<G: FinGroup>(table: &GroupTable<G>, g: G::Elem) -> BitSet {
    normal_closure_of_set(table, &[g])
}

/// Covering data for one conjugacy class.
#[derive(Debug, Clone)]
pub struct ClassCover {
    pub class: u32,
    pub size: u32,
    pub generating: bool,
    /// Minimal n with `(C u {1})^n = G`, when generating.
    pub steps: Option<u32>,
}

/// Covering-number report: `cn = max` over normally generating classes of
/// the minimal n with `C^n` (ball convention, identity adjoined) covering
/// the group.
#[derive(Debug, Clone)]
pub struct CoveringReport {
    pub order: usize,
    pub cn: Option<u32>,
    pub per_class: Vec<ClassCover>,
}

/// Class-level product reachability: the set of classes meeting `D * C`,
/// computed from one representative of D against all members of C.
fn class_products<G: FinGroup>(table: &GroupTable<G>, d: u32, c: u32) -> BitSet {
    let mut out = BitSet::new(table.classes().len());
    let rep = table.elem(table.classes()[d as usize].rep);
    for &m in table.class_members(c) {
        let z = table.group.mul(rep, table.elem(m));
        out.insert(table.class_of(table.index_of(&z)) as usize);
    }
    out
}

/// Brute-force covering number over all normally generating classes.
pub fn covering_number<G: FinGroup>(table: &GroupTable<G>) -> CoveringReport {
    let ncls = table.classes().len();
    let id_class = table.class_of(table.identity_index()) as usize;
    let mut per_class = Vec::with_capacity(ncls);
    let mut cn: Option<u32> = None;
    for c in 0..ncls as u32 {
        let size = table.classes()[c as usize].size;
        if c as usize == id_class {
            per_class.push(ClassCover { class: c, size, generating: false, steps: None });
            continue;
        }
        // cache D*C class reachability rows on demand
        let mut rows: Vec<Option<BitSet>> = vec![None; ncls];
        let mut row = |d: u32, table: &GroupTable<G>| -> BitSet {
            if rows[d as usize].is_none() {
                rows[d as usize] = Some(class_products(table, d, c));
            }
            rows[d as usize].clone().unwrap()
        };
        // does <C> cover all classes? (the closure is normal, so the
        // subgroup it generates is a union of classes)
        let mut reach = BitSet::new(ncls);
        reach.insert(c as usize);
        let mut frontier = vec![c];
        while let Some(d) = frontier.pop() {
            let r = row(d, table);
            for x in r.iter_ones() {
                if reach.insert(x) {
                    frontier.push(x as u32);
                }
            }
        }
        let generating = reach.is_full();
        if !generating {
            per_class.push(ClassCover { class: c, size, generating, steps: None });
            continue;
        }
        // ball powers: T_0 = {1}; T_{k+1} = T_k u (T_k-frontier * C)
        let mut covered = BitSet::new(ncls);
        covered.insert(id_class);
        let mut frontier: Vec<u32> = vec![id_class as u32];
        let mut steps = 0u32;
        while !covered.is_full() {
            steps += 1;
            let mut next = Vec::new();
            for &d in &frontier {
                let r = row(d, table);
                for x in r.iter_ones() {
                    if covered.insert(x) {
                        next.push(x as u32);
                    }
                }
            }
            frontier = next;
            debug_assert!(steps as usize <= ncls + 1, "covering search must terminate");
        }
        cn = Some(cn.map_or(steps, |v| v.max(steps)));
        per_class.push(ClassCover { class: c, size, generating, steps: Some(steps) });
    }
    CoveringReport { order: table.order(), cn, per_class }
}
