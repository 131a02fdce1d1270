//! Strongly connected components, simple-cycle enumeration and the
//! even / odd / positive cycle taxonomy.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DepGraph, Edge, NodeIx, Sign};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CycleKind {
    Even,
    Odd,
    Positive,
}

impl CycleKind {
    pub fn from_negative_count(negatives: usize) -> Self {
        if negatives == 0 {
            CycleKind::Positive
        } else if negatives.is_multiple_of(2) {
            CycleKind::Even
        } else {
            CycleKind::Odd
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("more than {cap} simple cycles (stopped after counting {partial})")]
    CycleExplosion { cap: usize, partial: usize },
}

/// Strongly connected components of the graph with successor lists `adj`.
///
/// Iterative Tarjan. Components come out in reverse topological order
/// (sinks first); members of each component are sorted.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*i) {
                *i += 1;
                if index[w] == UNVISITED {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                component.sort_unstable();
                components.push(component);
            }
        }
    }
    components
}

/// A strongly connected set of nodes wrapped so it can act as one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualNode {
    pub members: BTreeSet<NodeIx>,
    pub boundary_in: Vec<Edge>,
    pub boundary_out: Vec<Edge>,
}

impl VirtualNode {
    /// Wraps `members`, collecting the edges crossing the member boundary.
    pub fn new(g: &DepGraph, members: BTreeSet<NodeIx>) -> Self {
        let mut boundary_in = Vec::new();
        let mut boundary_out = Vec::new();
        for &m in &members {
            boundary_in.extend(g.in_edges(m).filter(|e| !members.contains(&e.from)));
            boundary_out.extend(g.out_edges(m).filter(|e| !members.contains(&e.to)));
        }
        VirtualNode {
            members,
            boundary_in,
            boundary_out,
        }
    }

    pub fn smallest_member(&self) -> NodeIx {
        *self.members.first().expect("virtual node has members")
    }
}

fn successor_lists(g: &DepGraph) -> Vec<Vec<usize>> {
    g.node_indices()
        .map(|v| {
            let mut succ: Vec<usize> = g.out_edges(v).map(|e| e.to).collect();
            succ.sort_unstable();
            succ.dedup();
            succ
        })
        .collect()
}

fn has_self_loop(g: &DepGraph, v: NodeIx) -> bool {
    g.out_edges(v).any(|e| e.to == v)
}

/// One virtual node per SCC with a cycle inside it (size two or more, or a
/// self-loop), ordered by smallest member.
pub fn find_virtual_nodes(g: &DepGraph) -> Vec<VirtualNode> {
    let mut out: Vec<VirtualNode> = strongly_connected_components(&successor_lists(g))
        .into_iter()
        .filter(|c| c.len() > 1 || has_self_loop(g, c[0]))
        .map(|c| VirtualNode::new(g, c.into_iter().collect()))
        .collect();
    out.sort_by_key(VirtualNode::smallest_member);
    out
}

/// A simple directed cycle. `nodes[i] -> nodes[i + 1]` (wrapping) uses an
/// edge of sign `signs[i]`. Cycles start at their smallest node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    pub nodes: Vec<NodeIx>,
    pub signs: Vec<Sign>,
    pub kind: CycleKind,
}

impl Cycle {
    pub fn negative_edges(&self) -> usize {
        self.signs.iter().filter(|s| **s == Sign::Negative).count()
    }
}

/// Calls `visit` once per simple cycle inside `members` (Johnson's algorithm).
///
/// Parallel edges of different sign between the same two nodes yield distinct
/// cycles. Stops with `CycleExplosion` once more than `cap` cycles were seen.
pub fn for_each_cycle(
    g: &DepGraph,
    members: &BTreeSet<NodeIx>,
    cap: usize,
    mut visit: impl FnMut(&Cycle),
) -> Result<usize, CycleError> {
    let local: Vec<NodeIx> = members.iter().copied().collect();
    let n = local.len();
    let to_local = |v: NodeIx| local.binary_search(&v).ok();
    // signs[v][k] lists the signs of the edges local[v] -> adj[v][k]
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut signs: Vec<Vec<Vec<Sign>>> = vec![Vec::new(); n];
    for (v, &gv) in local.iter().enumerate() {
        let mut targets: Vec<(usize, Sign)> = g
            .out_edges(gv)
            .filter_map(|e| to_local(e.to).map(|w| (w, e.sign)))
            .collect();
        targets.sort_unstable();
        for (w, sign) in targets {
            if adj[v].last() == Some(&w) {
                signs[v].last_mut().unwrap().push(sign);
            } else {
                adj[v].push(w);
                signs[v].push(vec![sign]);
            }
        }
    }

    let mut count = 0usize;
    let mut emit = |path: &[usize], hops: &[usize]| -> Result<(), CycleError> {
        // Expand each node-level cycle into its edge-level variants.
        let options: Vec<&Vec<Sign>> = path.iter().zip(hops).map(|(&v, &k)| &signs[v][k]).collect();
        let mut choice = vec![0usize; options.len()];
        loop {
            count += 1;
            if count > cap {
                return Err(CycleError::CycleExplosion {
                    cap,
                    partial: count - 1,
                });
            }
            let cycle_signs: Vec<Sign> = options
                .iter()
                .zip(&choice)
                .map(|(opts, &c)| opts[c])
                .collect();
            let negatives = cycle_signs.iter().filter(|s| **s == Sign::Negative).count();
            visit(&Cycle {
                nodes: path.iter().map(|&v| local[v]).collect(),
                signs: cycle_signs,
                kind: CycleKind::from_negative_count(negatives),
            });
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return Ok(());
                }
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    };

    let mut blocked = vec![false; n];
    let mut block_map: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in 0..n {
        // Restrict to the SCC of s within the subgraph induced by {s, s+1, ..}.
        let sub: Vec<Vec<usize>> = (s..n)
            .map(|v| adj[v].iter().filter(|&&w| w >= s).map(|&w| w - s).collect())
            .collect();
        let Some(component) = strongly_connected_components(&sub)
            .into_iter()
            .find(|c| c.contains(&0))
        else {
            continue;
        };
        if component.len() == 1 && !adj[s].contains(&s) {
            continue;
        }
        let in_component: Vec<bool> = {
            let mut mask = vec![false; n];
            for &c in &component {
                mask[c + s] = true;
            }
            mask
        };
        for &c in &component {
            blocked[c + s] = false;
            block_map[c + s].clear();
        }

        let mut path = vec![s];
        let mut hops: Vec<usize> = Vec::new();
        // (node, next successor position, found a cycle through this node)
        let mut frames: Vec<(usize, usize, bool)> = vec![(s, 0, false)];
        blocked[s] = true;
        while let Some(frame) = frames.last_mut() {
            let (v, pos) = (frame.0, frame.1);
            if pos < adj[v].len() {
                frame.1 += 1;
                let w = adj[v][pos];
                if !in_component[w] {
                    continue;
                }
                if w == s {
                    hops.push(pos);
                    emit(&path, &hops)?;
                    hops.pop();
                    frame.2 = true;
                } else if !blocked[w] {
                    hops.push(pos);
                    path.push(w);
                    blocked[w] = true;
                    frames.push((w, 0, false));
                }
                continue;
            }
            let (v, _, found) = frames.pop().unwrap();
            if found {
                let mut stack = vec![v];
                while let Some(u) = stack.pop() {
                    if blocked[u] {
                        blocked[u] = false;
                        stack.append(&mut block_map[u]);
                    }
                }
            } else {
                for &w in &adj[v] {
                    if in_component[w] && !block_map[w].contains(&v) {
                        block_map[w].push(v);
                    }
                }
            }
            path.pop();
            hops.pop();
            if let Some(parent) = frames.last_mut() {
                parent.2 |= found;
            }
        }
    }
    Ok(count)
}

/// All simple cycles of a virtual node, classified, in lexicographic order.
pub fn enumerate_cycles(
    v: &VirtualNode,
    g: &DepGraph,
    cap: usize,
) -> Result<Vec<Cycle>, CycleError> {
    let mut cycles = Vec::new();
    for_each_cycle(g, &v.members, cap, |c| cycles.push(c.clone()))?;
    cycles.sort();
    Ok(cycles)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleStats {
    pub even: usize,
    pub odd: usize,
    pub positive: usize,
}

impl CycleStats {
    pub fn total(&self) -> usize {
        self.even + self.odd + self.positive
    }

    fn add(&mut self, kind: CycleKind) {
        match kind {
            CycleKind::Even => self.even += 1,
            CycleKind::Odd => self.odd += 1,
            CycleKind::Positive => self.positive += 1,
        }
    }
}

/// Counts even, odd and positive simple cycles over the whole graph.
/// `cap` bounds the total number of cycles visited.
pub fn cycle_stats(g: &DepGraph, cap: usize) -> Result<CycleStats, CycleError> {
    let mut stats = CycleStats::default();
    for v in find_virtual_nodes(g) {
        let remaining = cap - stats.total();
        if let Err(CycleError::CycleExplosion { partial, .. }) =
            for_each_cycle(g, &v.members, remaining, |c| stats.add(c.kind))
        {
            return Err(CycleError::CycleExplosion {
                cap,
                partial: cap - remaining + partial,
            });
        }
    }
    Ok(stats)
}
