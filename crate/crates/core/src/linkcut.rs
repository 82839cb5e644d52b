//! Link/cut trees over splay-tree path decompositions.

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeHandle(pub u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkCutError {
    #[error("nodes already connected")]
    WouldCreateCycle,
    #[error("no tree edge between the nodes")]
    NoSuchTreeEdge,
    #[error("nodes are in different trees")]
    NotConnected,
    #[error("nodes coincide")]
    SameNode,
    #[error("node still has tree edges")]
    NodeInUse,
}

const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Node {
    ch: [u32; 2],
    parent: u32,
    rev: bool,
    live: bool,
}

#[derive(Clone, Debug, Default)]
pub struct LinkCutForest {
    nodes: Vec<Node>,
    free: Vec<u32>,
    rotations: u64,
}

impl LinkCutForest {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total splay rotations performed so far.
    pub fn rotations(&self) -> u64 {
        self.rotations
    }

    pub fn len(&self) -> usize {
        self.nodes.len() - self.free.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn maketree(&mut self) -> NodeHandle {
        let node = Node { ch: [NIL, NIL], parent: NIL, rev: false, live: true };
        if let Some(i) = self.free.pop() {
            self.nodes[i as usize] = node;
            NodeHandle(i)
        } else {
            self.nodes.push(node);
            NodeHandle(self.nodes.len() as u32 - 1)
        }
    }

    /// Recycles a node; the caller must already have cut all its tree edges.
    pub fn remove(&mut self, a: NodeHandle) -> Result<(), LinkCutError> {
        self.access(a.0);
        let n = &self.nodes[a.0 as usize];
        if n.ch[0] != NIL || n.ch[1] != NIL {
            return Err(LinkCutError::NodeInUse);
        }
        self.nodes[a.0 as usize].live = false;
        self.free.push(a.0);
        Ok(())
    }

    fn is_root(&self, x: u32) -> bool {
        let p = self.nodes[x as usize].parent;
        p == NIL || (self.nodes[p as usize].ch[0] != x && self.nodes[p as usize].ch[1] != x)
    }

    fn push(&mut self, x: u32) {
        if self.nodes[x as usize].rev {
            let [l, r] = self.nodes[x as usize].ch;
            self.nodes[x as usize].ch = [r, l];
            self.nodes[x as usize].rev = false;
            if l != NIL {
                self.nodes[l as usize].rev ^= true;
            }
            if r != NIL {
                self.nodes[r as usize].rev ^= true;
            }
        }
    }

    fn rotate(&mut self, x: u32) {
        self.rotations += 1;
        let p = self.nodes[x as usize].parent;
        let g = self.nodes[p as usize].parent;
        let dir = (self.nodes[p as usize].ch[1] == x) as usize;
        let b = self.nodes[x as usize].ch[1 - dir];
        if !self.is_root(p) {
            let gd = (self.nodes[g as usize].ch[1] == p) as usize;
            self.nodes[g as usize].ch[gd] = x;
        }
        self.nodes[x as usize].parent = g;
        self.nodes[x as usize].ch[1 - dir] = p;
        self.nodes[p as usize].parent = x;
        self.nodes[p as usize].ch[dir] = b;
        if b != NIL {
            self.nodes[b as usize].parent = p;
        }
    }

    fn splay(&mut self, x: u32) {
        let mut stack = vec![x];
        let mut y = x;
        while !self.is_root(y) {
            y = self.nodes[y as usize].parent;
            stack.push(y);
        }
        while let Some(z) = stack.pop() {
            self.push(z);
        }
        while !self.is_root(x) {
            let p = self.nodes[x as usize].parent;
            if !self.is_root(p) {
                let g = self.nodes[p as usize].parent;
                let zigzig = (self.nodes[g as usize].ch[1] == p) == (self.nodes[p as usize].ch[1] == x);
                if zigzig {
                    self.rotate(p);
                } else {
                    self.rotate(x);
                }
            }
            self.rotate(x);
        }
    }

    /// Makes the root path of x preferred; returns the last path-parent jump target.
    fn access(&mut self, x: u32) -> u32 {
        let mut last = NIL;
        let mut y = x;
        while y != NIL {
            self.splay(y);
            self.nodes[y as usize].ch[1] = last;
            last = y;
            y = self.nodes[y as usize].parent;
        }
        self.splay(x);
        last
    }

    pub fn evert(&mut self, a: NodeHandle) {
        self.access(a.0);
        self.nodes[a.0 as usize].rev ^= true;
        self.push(a.0);
    }

    pub fn find_root(&mut self, a: NodeHandle) -> NodeHandle {
        self.access(a.0);
        let mut x = a.0;
        loop {
            self.push(x);
            let l = self.nodes[x as usize].ch[0];
            if l == NIL {
                break;
            }
            x = l;
        }
        self.splay(x);
        NodeHandle(x)
    }

    pub fn connected(&mut self, a: NodeHandle, b: NodeHandle) -> bool {
        a == b || self.find_root(a) == self.find_root(b)
    }

    pub fn link(&mut self, a: NodeHandle, b: NodeHandle) -> Result<(), LinkCutError> {
        if self.connected(a, b) {
            return Err(LinkCutError::WouldCreateCycle);
        }
        self.evert(a);
        self.nodes[a.0 as usize].parent = b.0;
        Ok(())
    }

    pub fn cut(&mut self, a: NodeHandle, b: NodeHandle) -> Result<(), LinkCutError> {
        if a == b {
            return Err(LinkCutError::NoSuchTreeEdge);
        }
        let root = self.find_root(a);
        if self.find_root(b) != root {
            return Err(LinkCutError::NoSuchTreeEdge);
        }
        self.evert(a);
        self.access(b.0);
        // After evert(a) and access(b), the path a..b is b's left subtree.
        let l = self.nodes[b.0 as usize].ch[0];
        self.push(a.0);
        if l != a.0 || self.nodes[a.0 as usize].ch[1] != NIL {
            self.evert(root);
            return Err(LinkCutError::NoSuchTreeEdge);
        }
        self.nodes[b.0 as usize].ch[0] = NIL;
        self.nodes[a.0 as usize].parent = NIL;
        // Keep the old root as root of the side that still contains it.
        self.evert(root);
        Ok(())
    }

    /// First node after `a` on the path from `a` to `b`.
    pub fn after(&mut self, a: NodeHandle, b: NodeHandle) -> Result<NodeHandle, LinkCutError> {
        if a == b {
            return Err(LinkCutError::SameNode);
        }
        let root = self.find_root(a);
        if self.find_root(b) != root {
            return Err(LinkCutError::NotConnected);
        }
        self.evert(b);
        self.access(a.0);
        // Predecessor of a in depth order is its neighbour toward b.
        let mut x = self.nodes[a.0 as usize].ch[0];
        self.push(x);
        loop {
            let r = self.nodes[x as usize].ch[1];
            if r == NIL {
                break;
            }
            x = r;
            self.push(x);
        }
        self.splay(x);
        self.evert(root);
        Ok(NodeHandle(x))
    }

    /// Nearest common ancestor with respect to the current root.
    pub fn nca(&mut self, a: NodeHandle, b: NodeHandle) -> Result<NodeHandle, LinkCutError> {
        if !self.connected(a, b) {
            return Err(LinkCutError::NotConnected);
        }
        self.access(a.0);
        let w = self.access(b.0);
        Ok(NodeHandle(w))
    }

    /// Current parent in the represented rooted tree.
    pub fn parent(&mut self, a: NodeHandle) -> Option<NodeHandle> {
        self.access(a.0);
        let mut x = self.nodes[a.0 as usize].ch[0];
        if x == NIL {
            return None;
        }
        self.push(x);
        loop {
            let r = self.nodes[x as usize].ch[1];
            if r == NIL {
                break;
            }
            x = r;
            self.push(x);
        }
        self.splay(x);
        Some(NodeHandle(x))
    }

    pub fn is_live(&self, a: NodeHandle) -> bool {
        self.nodes.get(a.0 as usize).is_some_and(|n| n.live)
    }
}
