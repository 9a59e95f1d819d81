//! Depth-first low-link analysis: bridges, cut vertices and blocks.

use crate::geometry::Segment;

#[derive(Debug, Clone, Default)]
pub(crate) struct LowLink {
    pub bridges: Vec<Segment>,
    pub cut_vertices: Vec<usize>,
    /// Biconnected components as edge lists (a bridge is a one-edge block).
    pub blocks: Vec<Vec<Segment>>,
    pub component_count: usize,
}

struct Frame {
    v: usize,
    parent: usize,
    next: usize,
}

const UNSEEN: usize = usize::MAX;

pub(crate) fn analyze(adj: &[Vec<usize>]) -> LowLink {
    let n = adj.len();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut out = LowLink::default();
    let mut edge_stack: Vec<Segment> = Vec::new();
    let mut clock = 0usize;

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        out.component_count += 1;
        disc[root] = clock;
        low[root] = clock;
        clock += 1;
        let mut root_children = 0usize;
        let mut stack = vec![Frame {
            v: root,
            parent: UNSEEN,
            next: 0,
        }];
        while let Some(frame) = stack.last_mut() {
            let v = frame.v;
            if frame.next < adj[v].len() {
                let w = adj[v][frame.next];
                frame.next += 1;
                if w == frame.parent {
                    continue;
                }
                if disc[w] == UNSEEN {
                    if v == root {
                        root_children += 1;
                    }
                    edge_stack.push(Segment::new(v, w));
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push(Frame {
                        v: w,
                        parent: v,
                        next: 0,
                    });
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push(Segment::new(v, w));
                }
                continue;
            }
            stack.pop();
            let Some(up) = stack.last() else { break };
            let p = up.v;
            low[p] = low[p].min(low[v]);
            if low[v] > disc[p] {
                out.bridges.push(Segment::new(p, v));
            }
            if low[v] >= disc[p] {
                if p != root {
                    is_cut[p] = true;
                }
                let tree_edge = Segment::new(p, v);
                let mut block = Vec::new();
                while let Some(e) = edge_stack.pop() {
                    block.push(e);
                    if e == tree_edge {
                        break;
                    }
                }
                block.sort();
                out.blocks.push(block);
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    out.bridges.sort();
    out.cut_vertices = (0..n).filter(|&v| is_cut[v]).collect();
    out
}

/// Component label per vertex and the number of components.
pub(crate) fn components(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    components_avoiding(adj, None)
}

/// Components of the graph with vertex `skip` deleted; `skip` gets label `usize::MAX`.
pub(crate) fn components_avoiding(adj: &[Vec<usize>], skip: Option<usize>) -> (Vec<usize>, usize) {
    let n = adj.len();
    let mut label = vec![UNSEEN; n];
    let mut count = 0;
    let mut queue = Vec::new();
    for s in 0..n {
        if label[s] != UNSEEN || Some(s) == skip {
            continue;
        }
        label[s] = count;
        queue.push(s);
        while let Some(v) = queue.pop() {
            for &w in &adj[v] {
                if label[w] == UNSEEN && Some(w) != skip {
                    label[w] = count;
                    queue.push(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}
