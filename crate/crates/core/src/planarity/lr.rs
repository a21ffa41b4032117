//! Left-right planarity test (de Fraysseix–Rosenstiehl criterion in the
//! formulation of Brandes), boolean verdict only.
//!
//! Both DFS phases are iterative; percolated samples routinely have DFS
//! depths in the thousands.

use crate::graph::Graph;

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Interval {
    low: usize,
    high: usize,
}

impl Interval {
    const EMPTY: Interval = Interval {
        low: NONE,
        high: NONE,
    };

    fn is_empty(&self) -> bool {
        self.low == NONE && self.high == NONE
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'g> {
    graph: &'g Graph,
    // incident (neighbour, edge id) pairs
    adj: Vec<Vec<(usize, usize)>>,
    height: Vec<usize>,
    parent_edge: Vec<usize>,
    // orientation of each undirected edge
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    out: Vec<Vec<usize>>,
    // testing phase
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<usize>,
    refs: Vec<usize>,
}

pub fn lr_is_planar(graph: &Graph) -> bool {
    let mut st = LrState::new(graph);
    let roots = st.orient();
    for out in st.out.iter_mut() {
        let nd = &st.nesting_depth;
        out.sort_by_key(|&e| nd[e]);
    }
    roots.into_iter().all(|r| st.test(r))
}

impl<'g> LrState<'g> {
    fn new(graph: &'g Graph) -> Self {
        let n = graph.n();
        let m = graph.m();
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in graph.edges().iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        LrState {
            graph,
            adj,
            height: vec![NONE; n],
            parent_edge: vec![NONE; n],
            src: vec![NONE; m],
            dst: vec![NONE; m],
            oriented: vec![false; m],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            out: vec![Vec::new(); n],
            stack: Vec::new(),
            stack_bottom: vec![0; m],
            lowpt_edge: vec![NONE; m],
            refs: vec![NONE; m],
        }
    }

    /// DFS orientation with lowpoints and nesting depths; returns DFS roots.
    fn orient(&mut self) -> Vec<usize> {
        let n = self.graph.n();
        let mut roots = Vec::new();
        let mut ind = vec![0usize; n];
        let mut resumed = vec![false; self.graph.m()];
        let mut dfs = Vec::new();

        for root in 0..n {
            if self.height[root] != NONE {
                continue;
            }
            self.height[root] = 0;
            roots.push(root);
            dfs.push(root);
            while let Some(v) = dfs.pop() {
                let e = self.parent_edge[v];
                while ind[v] < self.adj[v].len() {
                    let (w, vw) = self.adj[v][ind[v]];
                    if !resumed[vw] {
                        if self.oriented[vw] {
                            ind[v] += 1;
                            continue;
                        }
                        self.oriented[vw] = true;
                        self.src[vw] = v;
                        self.dst[vw] = w;
                        self.out[v].push(vw);
                        self.lowpt[vw] = self.height[v];
                        self.lowpt2[vw] = self.height[v];
                        if self.height[w] == NONE {
                            // tree edge: descend, finish vw when v resumes
                            self.parent_edge[w] = vw;
                            self.height[w] = self.height[v] + 1;
                            resumed[vw] = true;
                            dfs.push(v);
                            dfs.push(w);
                            break;
                        }
                        self.lowpt[vw] = self.height[w];
                    }

                    self.nesting_depth[vw] =
                        2 * self.lowpt[vw] + usize::from(self.lowpt2[vw] < self.height[v]);
                    if e != NONE {
                        let (lv, l2v) = (self.lowpt[vw], self.lowpt2[vw]);
                        if lv < self.lowpt[e] {
                            self.lowpt2[e] = self.lowpt[e].min(l2v);
                            self.lowpt[e] = lv;
                        } else if lv > self.lowpt[e] {
                            self.lowpt2[e] = self.lowpt2[e].min(lv);
                        } else {
                            self.lowpt2[e] = self.lowpt2[e].min(l2v);
                        }
                    }
                    ind[v] += 1;
                }
            }
        }
        roots
    }

    fn top_len(&self) -> usize {
        self.stack.len()
    }

    fn conflicting(&self, iv: &Interval, b: usize) -> bool {
        !iv.is_empty() && iv.high != NONE && self.lowpt[iv.high] > self.lowpt[b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[p.right.low];
        }
        if p.right.is_empty() {
            return self.lowpt[p.left.low];
        }
        self.lowpt[p.left.low].min(self.lowpt[p.right.low])
    }

    fn set_ref(&mut self, edge: usize, value: usize) {
        if edge != NONE {
            self.refs[edge] = value;
        }
    }

    fn test(&mut self, root: usize) -> bool {
        let n = self.graph.n();
        let mut ind = vec![0usize; n];
        let mut resumed = vec![false; self.graph.m()];
        let mut dfs = vec![root];

        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let mut descended = false;
            while ind[v] < self.out[v].len() {
                let ei = self.out[v][ind[v]];
                let w = self.dst[ei];
                if !resumed[ei] {
                    self.stack_bottom[ei] = self.top_len();
                    if self.parent_edge[w] == ei {
                        resumed[ei] = true;
                        dfs.push(v);
                        dfs.push(w);
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[ei] = ei;
                    self.stack.push(ConflictPair {
                        left: Interval::EMPTY,
                        right: Interval { low: ei, high: ei },
                    });
                }
                if self.lowpt[ei] < self.height[v] {
                    if ei == self.out[v][0] {
                        self.lowpt_edge[e] = self.lowpt_edge[ei];
                    } else if !self.add_constraints(ei, e) {
                        return false;
                    }
                }
                ind[v] += 1;
            }
            if !descended && e != NONE {
                self.remove_back_edges(e);
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair {
            left: Interval::EMPTY,
            right: Interval::EMPTY,
        };
        // merge return edges of ei into p.right
        loop {
            let mut q = self
                .stack
                .pop()
                .expect("return edges of ei are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            if self.lowpt[q.right.low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_ref(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                let target = self.lowpt_edge[e];
                self.set_ref(q.right.low, target);
            }
            if self.top_len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.stack.last().copied() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_ref(p.right.low, q.right.high);
            if q.right.low != NONE {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_ref(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        let hu = self.height[u];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while p.left.high != NONE && self.dst[p.left.high] == u {
                p.left.high = self.refs[p.left.high];
            }
            if p.left.high == NONE && p.left.low != NONE {
                self.refs[p.left.low] = p.right.low;
                p.left.low = NONE;
            }
            while p.right.high != NONE && self.dst[p.right.high] == u {
                p.right.high = self.refs[p.right.high];
            }
            if p.right.high == NONE && p.right.low != NONE {
                self.refs[p.right.low] = p.left.low;
                p.right.low = NONE;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            if let Some(top) = self.stack.last() {
                let (hl, hr) = (top.left.high, top.right.high);
                self.refs[e] = if hl != NONE && (hr == NONE || self.lowpt[hl] > self.lowpt[hr]) {
                    hl
                } else {
                    hr
                };
            }
        }
    }
}
