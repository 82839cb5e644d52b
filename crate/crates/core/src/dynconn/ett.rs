//! Euler-tour sequences stored in splay trees, with subtree aggregates.

pub(crate) const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct EtNode {
    l: u32,
    r: u32,
    p: u32,
    size: u32,
    /// Vertex id for vertex nodes, edge id for arc nodes.
    pub(crate) id: u32,
    pub(crate) is_vertex: bool,
    own_nt: bool,
    own_tr: bool,
    own_e: i64,
    own_w: i64,
    vc: u32,
    agg_nt: bool,
    agg_tr: bool,
    agg_e: i64,
    agg_w: i64,
    agg_min: u32,
}

impl EtNode {
    fn new(id: u32, is_vertex: bool) -> Self {
        EtNode {
            l: NIL,
            r: NIL,
            p: NIL,
            size: 1,
            id,
            is_vertex,
            own_nt: false,
            own_tr: false,
            own_e: 0,
            own_w: 0,
            vc: is_vertex as u32,
            agg_nt: false,
            agg_tr: false,
            agg_e: 0,
            agg_w: 0,
            agg_min: if is_vertex { id } else { u32::MAX },
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flag {
    NonTree,
    Tree,
}

/// Arena holding the Euler-tour nodes of every level.
#[derive(Clone, Debug, Default)]
pub(crate) struct EttArena {
    nodes: Vec<EtNode>,
    free: Vec<u32>,
}

impl EttArena {
    pub(crate) fn new_vertices(count: usize, n: usize) -> Self {
        let mut nodes = Vec::with_capacity(count * n);
        for _ in 0..count {
            for v in 0..n {
                nodes.push(EtNode::new(v as u32, true));
            }
        }
        EttArena { nodes, free: Vec::new() }
    }

    pub(crate) fn alloc_arc(&mut self, edge: u32) -> u32 {
        let node = EtNode::new(edge, false);
        if let Some(i) = self.free.pop() {
            self.nodes[i as usize] = node;
            i
        } else {
            self.nodes.push(node);
            self.nodes.len() as u32 - 1
        }
    }

    fn release(&mut self, x: u32) {
        self.free.push(x);
    }

    fn update(&mut self, x: u32) {
        let (l, r) = (self.nodes[x as usize].l, self.nodes[x as usize].r);
        let me = &self.nodes[x as usize];
        let mut size = 1;
        let mut vc = me.is_vertex as u32;
        let mut nt = me.own_nt;
        let mut tr = me.own_tr;
        let mut e = me.own_e;
        let mut w = me.own_w;
        let mut mn = if me.is_vertex { me.id } else { u32::MAX };
        for c in [l, r] {
            if c != NIL {
                let c = &self.nodes[c as usize];
                size += c.size;
                vc += c.vc;
                nt |= c.agg_nt;
                tr |= c.agg_tr;
                e += c.agg_e;
                w += c.agg_w;
                mn = mn.min(c.agg_min);
            }
        }
        let me = &mut self.nodes[x as usize];
        me.size = size;
        me.vc = vc;
        me.agg_nt = nt;
        me.agg_tr = tr;
        me.agg_e = e;
        me.agg_w = w;
        me.agg_min = mn;
    }

    fn rotate(&mut self, x: u32) {
        let p = self.nodes[x as usize].p;
        let g = self.nodes[p as usize].p;
        if self.nodes[p as usize].l == x {
            let b = self.nodes[x as usize].r;
            self.nodes[p as usize].l = b;
            if b != NIL {
                self.nodes[b as usize].p = p;
            }
            self.nodes[x as usize].r = p;
        } else {
            let b = self.nodes[x as usize].l;
            self.nodes[p as usize].r = b;
            if b != NIL {
                self.nodes[b as usize].p = p;
            }
            self.nodes[x as usize].l = p;
        }
        self.nodes[p as usize].p = x;
        self.nodes[x as usize].p = g;
        if g != NIL {
            if self.nodes[g as usize].l == p {
                self.nodes[g as usize].l = x;
            } else {
                self.nodes[g as usize].r = x;
            }
        }
        self.update(p);
        self.update(x);
    }

    pub(crate) fn splay(&mut self, x: u32) {
        while self.nodes[x as usize].p != NIL {
            let p = self.nodes[x as usize].p;
            let g = self.nodes[p as usize].p;
            if g != NIL {
                let zigzig = (self.nodes[g as usize].l == p) == (self.nodes[p as usize].l == x);
                if zigzig {
                    self.rotate(p);
                } else {
                    self.rotate(x);
                }
            }
            self.rotate(x);
        }
    }

    /// First node of the sequence containing x; identifies the tree.
    pub(crate) fn first(&mut self, x: u32) -> u32 {
        self.splay(x);
        let mut y = x;
        while self.nodes[y as usize].l != NIL {
            y = self.nodes[y as usize].l;
        }
        self.splay(y);
        y
    }

    pub(crate) fn same_tree(&mut self, a: u32, b: u32) -> bool {
        a == b || self.first(a) == self.first(b)
    }

    pub(crate) fn vertex_count(&mut self, x: u32) -> usize {
        self.splay(x);
        self.nodes[x as usize].vc as usize
    }

    pub(crate) fn edge_sum(&mut self, x: u32) -> i64 {
        self.splay(x);
        self.nodes[x as usize].agg_e
    }

    pub(crate) fn weight_sum(&mut self, x: u32) -> i64 {
        self.splay(x);
        self.nodes[x as usize].agg_w
    }

    pub(crate) fn min_vertex(&mut self, x: u32) -> u32 {
        self.splay(x);
        self.nodes[x as usize].agg_min
    }

    pub(crate) fn set_flag(&mut self, x: u32, flag: Flag, on: bool) {
        self.splay(x);
        match flag {
            Flag::NonTree => self.nodes[x as usize].own_nt = on,
            Flag::Tree => self.nodes[x as usize].own_tr = on,
        }
        self.update(x);
    }

    pub(crate) fn add_edge_count(&mut self, x: u32, delta: i64) {
        self.splay(x);
        self.nodes[x as usize].own_e += delta;
        self.update(x);
    }

    pub(crate) fn set_weight(&mut self, x: u32, w: i64) {
        self.splay(x);
        self.nodes[x as usize].own_w = w;
        self.update(x);
    }

    pub(crate) fn weight(&self, x: u32) -> i64 {
        self.nodes[x as usize].own_w
    }

    /// Some node with the given own flag in x's tree.
    pub(crate) fn find_flag(&mut self, x: u32, flag: Flag) -> Option<u32> {
        self.splay(x);
        let get = |n: &EtNode| match flag {
            Flag::NonTree => (n.own_nt, n.agg_nt),
            Flag::Tree => (n.own_tr, n.agg_tr),
        };
        let mut y = x;
        if !get(&self.nodes[y as usize]).1 {
            return None;
        }
        loop {
            let node = &self.nodes[y as usize];
            if get(node).0 {
                break;
            }
            let l = node.l;
            if l != NIL && get(&self.nodes[l as usize]).1 {
                y = l;
            } else {
                y = node.r;
            }
        }
        self.splay(y);
        Some(y)
    }

    fn join(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        let mut x = a;
        while self.nodes[x as usize].r != NIL {
            x = self.nodes[x as usize].r;
        }
        self.splay(x);
        self.nodes[x as usize].r = b;
        self.nodes[b as usize].p = x;
        self.update(x);
        x
    }

    /// Rotates the tour so it starts at vertex node v; returns the new root.
    fn reroot(&mut self, v: u32) -> u32 {
        self.splay(v);
        let l = self.nodes[v as usize].l;
        if l == NIL {
            return v;
        }
        self.nodes[v as usize].l = NIL;
        self.nodes[l as usize].p = NIL;
        self.update(v);
        self.join(v, l)
    }

    /// Joins the tours of vertex nodes u and v through new arcs; returns (u→v, v→u).
    pub(crate) fn link(&mut self, u: u32, v: u32, edge: u32, flagged: bool) -> (u32, u32) {
        let a1 = self.alloc_arc(edge);
        let a2 = self.alloc_arc(edge);
        if flagged {
            self.nodes[a1 as usize].own_tr = true;
            self.update(a1);
        }
        let tu = self.reroot(u);
        let tv = self.reroot(v);
        let s = self.join(tu, a1);
        let s = self.join(s, tv);
        self.join(s, a2);
        (a1, a2)
    }

    fn position(&mut self, x: u32) -> u32 {
        self.splay(x);
        let l = self.nodes[x as usize].l;
        if l == NIL {
            0
        } else {
            self.nodes[l as usize].size
        }
    }

    /// Removes the two arcs of one tree edge, splitting the tour.
    pub(crate) fn cut(&mut self, a1: u32, a2: u32) {
        let (a, b) = if self.position(a1) < self.position(a2) { (a1, a2) } else { (a2, a1) };
        self.splay(a);
        let left = self.nodes[a as usize].l;
        if left != NIL {
            self.nodes[a as usize].l = NIL;
            self.nodes[left as usize].p = NIL;
            self.update(a);
        }
        self.splay(b);
        let mid = self.nodes[b as usize].l;
        let right = self.nodes[b as usize].r;
        self.nodes[b as usize].l = NIL;
        self.nodes[b as usize].r = NIL;
        self.nodes[mid as usize].p = NIL;
        if right != NIL {
            self.nodes[right as usize].p = NIL;
        }
        self.update(b);
        // a is the leftmost node of mid.
        self.splay(a);
        let inner = self.nodes[a as usize].r;
        self.nodes[a as usize].r = NIL;
        if inner != NIL {
            self.nodes[inner as usize].p = NIL;
        }
        self.update(a);
        self.join(left, right);
        self.release(a);
        self.release(b);
    }

    /// Vertex ids of the tour containing x, in tour order.
    pub(crate) fn vertices(&mut self, x: u32) -> Vec<u32> {
        self.splay(x);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        let mut cur = x;
        loop {
            while cur != NIL {
                stack.push(cur);
                cur = self.nodes[cur as usize].l;
            }
            match stack.pop() {
                None => break,
                Some(y) => {
                    let node = &self.nodes[y as usize];
                    if node.is_vertex {
                        out.push(node.id);
                    }
                    cur = node.r;
                }
            }
        }
        out
    }

    pub(crate) fn edge_of(&self, arc: u32) -> u32 {
        self.nodes[arc as usize].id
    }
}
