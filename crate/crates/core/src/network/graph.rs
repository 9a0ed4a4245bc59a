use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Small dense-index directed graph (successor lists).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    succ: Vec<BTreeSet<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Self { succ: vec![BTreeSet::new(); n] }
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        self.succ[from].insert(to);
    }

    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self, v: usize) -> &BTreeSet<usize> {
        &self.succ[v]
    }

    pub fn reversed(&self) -> Digraph {
        let mut r = Digraph::new(self.n());
        for (u, out) in self.succ.iter().enumerate() {
            for &v in out {
                r.add_edge(v, u);
            }
        }
        r
    }

    /// Vertices reachable from `root` (including `root`).
    pub fn reachable_from(&self, root: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            for &v in &self.succ[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Which way "leaving a class" is measured when flagging closed classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedAlong {
    /// No edge `u -> v` with `u` inside and `v` outside.
    Forward,
    /// No edge `v -> u` with `u` inside and `v` outside.
    Reverse,
}

/// A communication class (strongly connected component).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommClass {
    /// Sorted member indices.
    pub members: Vec<usize>,
    pub closed: bool,
}

/// Tarjan's algorithm. Blocks come back ordered by their smallest member,
/// members sorted, so the partition is deterministic.
pub fn strongly_connected_components(g: &Digraph, along: ClosedAlong) -> Vec<CommClass> {
    let n = g.n();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0usize;
    let mut comps: Vec<Vec<usize>> = Vec::new();

    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        // explicit DFS stack of (vertex, successor snapshot, cursor)
        let mut work: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        index[start] = next;
        low[start] = next;
        next += 1;
        stack.push(start);
        on_stack[start] = true;
        work.push((start, g.successors(start).iter().copied().collect(), 0));

        while let Some((v, succ, cursor)) = work.last_mut() {
            let v = *v;
            if *cursor < succ.len() {
                let w = succ[*cursor];
                *cursor += 1;
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, g.successors(w).iter().copied().collect(), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some((parent, _, _)) = work.last() {
                low[*parent] = low[*parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }

    let mut block_of = vec![0usize; n];
    for (b, comp) in comps.iter().enumerate() {
        for &v in comp {
            block_of[v] = b;
        }
    }
    let mut leaves = vec![false; comps.len()];
    for u in 0..n {
        for &v in g.successors(u) {
            if block_of[u] != block_of[v] {
                match along {
                    ClosedAlong::Forward => leaves[block_of[u]] = true,
                    ClosedAlong::Reverse => leaves[block_of[v]] = true,
                }
            }
        }
    }
    let mut classes: Vec<CommClass> = comps
        .into_iter()
        .zip(leaves)
        .map(|(members, leaves)| CommClass { members, closed: !leaves })
        .collect();
    classes.sort_by_key(|c| c.members[0]);
    classes
}

/// True iff every vertex is reachable from `root` along edge direction.
pub fn has_spanning_tree(g: &Digraph, root: usize) -> Result<bool> {
    if root >= g.n() {
        return Err(Error::InvalidArgument(format!("unknown root {root}")));
    }
    Ok(g.reachable_from(root).into_iter().all(|r| r))
}
