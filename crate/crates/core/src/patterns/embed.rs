//! Backtracking tree embedder.
//!
//! Non-leaf tree vertices (the skeleton) are placed by depth-first
//! backtracking, starting at a maximum-degree vertex and descending into the
//! tallest subtrees first. Leaves are then assigned all at once by bipartite
//! matching against the unused host vertices, which removes the factorial
//! blow-up of permuting interchangeable leaves.

use std::collections::HashMap;

use crate::graph::Graph;

/// Read access to a host graph.
pub trait Host {
    fn order(&self) -> usize;
    fn has_edge(&self, u: usize, v: usize) -> bool;
    fn degree(&self, v: usize) -> usize;
    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_;
}

impl Host for Graph {
    fn order(&self) -> usize {
        Graph::order(self)
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        Graph::has_edge(self, u, v)
    }

    fn degree(&self, v: usize) -> usize {
        Graph::degree(self, v)
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        Graph::neighbors(self, v)
    }
}

const NONE: usize = usize::MAX;

/// Placement order for one search. Position 0 is the root; every later
/// skeleton position has its tree parent at an earlier position.
#[derive(Debug, Clone)]
struct Plan {
    vertices: Vec<usize>,
    parent: Vec<usize>,
    /// Skeleton children plus leaves hanging off each position.
    need: Vec<usize>,
    /// Every leaf as `(tree vertex, parent position)`.
    leaves: Vec<(usize, usize)>,
}

impl Plan {
    fn build(adj: &[Vec<usize>], root: usize, forced: Option<usize>) -> Plan {
        let n = adj.len();
        let height = |start: usize, from: usize| -> usize {
            let mut best = 0;
            let mut stack = vec![(start, from, 0usize)];
            while let Some((v, p, d)) = stack.pop() {
                best = best.max(d);
                for &w in &adj[v] {
                    if w != p {
                        stack.push((w, v, d + 1));
                    }
                }
            }
            best
        };
        let is_skeleton = |v: usize| v == root || Some(v) == forced || adj[v].len() > 1;

        let mut plan = Plan { vertices: vec![], parent: vec![], need: vec![], leaves: vec![] };
        let mut pos_of = vec![NONE; n];
        // (vertex, tree parent, parent position)
        let mut stack = vec![(root, NONE, NONE)];
        while let Some((v, p, ppos)) = stack.pop() {
            let pos = plan.vertices.len();
            pos_of[v] = pos;
            plan.vertices.push(v);
            plan.parent.push(ppos);
            plan.need.push(adj[v].iter().filter(|&&w| w != p).count());
            let mut kids: Vec<(usize, usize)> = adj[v]
                .iter()
                .copied()
                .filter(|&w| w != p)
                .map(|w| (w, height(w, v)))
                .collect();
            // tallest first; the forced vertex before everything else
            kids.sort_by_key(|&(w, h)| (Some(w) == forced, h));
            for (w, _) in kids {
                if is_skeleton(w) {
                    stack.push((w, v, pos));
                } else {
                    plan.leaves.push((w, pos));
                }
            }
        }
        debug_assert!(forced.map_or(true, |t| pos_of[t] == 1));
        plan
    }
}

/// Containment tester for one fixed tree.
#[derive(Debug, Clone)]
pub struct Embedder {
    n: usize,
    degree: Vec<usize>,
    free: Plan,
    /// One plan per directed tree edge `(s, t)` up to automorphism; `s` is
    /// the root and `t` sits at position 1.
    through_edge: Vec<Plan>,
}

fn canonical(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| canonical(adj, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

impl Embedder {
    /// `tree` must be a tree (connected, `order - 1` edges) with at least one vertex.
    pub fn new(tree: &Graph) -> Embedder {
        let n = tree.order();
        assert!(n >= 1 && tree.edge_count() + 1 == n && tree.components().len() == 1, "embedder needs a tree");
        let adj: Vec<Vec<usize>> = (0..n).map(|v| tree.neighbors(v).collect()).collect();
        let degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let root = (0..n).max_by_key(|&v| (degree[v], std::cmp::Reverse(v))).unwrap();
        let free = Plan::build(&adj, root, None);

        let mut seen: HashMap<(String, String), ()> = HashMap::new();
        let mut through_edge = Vec::new();
        for s in 0..n {
            for &t in &adj[s] {
                let key = (canonical(&adj, s, t), canonical(&adj, t, s));
                if seen.insert(key, ()).is_none() {
                    through_edge.push(Plan::build(&adj, s, Some(t)));
                }
            }
        }
        Embedder { n, degree, free, through_edge }
    }

    pub fn tree_order(&self) -> usize {
        self.n
    }

    /// True iff the tree embeds in `host`.
    pub fn find<H: Host>(&self, host: &H) -> bool {
        self.find_map(host).is_some()
    }

    /// An embedding as `tree vertex -> host vertex`, if one exists.
    pub fn find_map<H: Host>(&self, host: &H) -> Option<Vec<usize>> {
        if host.order() < self.n {
            return None;
        }
        let root = self.free.vertices[0];
        let mut roots: Vec<usize> = (0..host.order()).filter(|&v| host.degree(v) >= self.degree[root]).collect();
        roots.sort_by_key(|&v| std::cmp::Reverse(host.degree(v)));
        let mut search = Search::new(self, &self.free, host);
        for r in roots {
            if search.seed(&[r]) && search.extend(1) {
                return Some(search.mapping());
            }
            search.unseed(&[r]);
        }
        None
    }

    /// True iff some embedding maps a tree edge onto the host edge `ab`.
    pub fn find_through_edge<H: Host>(&self, host: &H, a: usize, b: usize) -> bool {
        if host.order() < self.n || !host.has_edge(a, b) {
            return false;
        }
        for plan in &self.through_edge {
            let (s, t) = (plan.vertices[0], plan.vertices[1]);
            if host.degree(a) < self.degree[s] || host.degree(b) < self.degree[t] {
                continue;
            }
            let mut search = Search::new(self, plan, host);
            if search.seed(&[a, b]) && search.extend(2) {
                return true;
            }
        }
        false
    }
}

struct Search<'a, H: Host> {
    emb: &'a Embedder,
    plan: &'a Plan,
    host: &'a H,
    image: Vec<usize>,
    used: Vec<bool>,
    leaf_image: Vec<usize>,
}

impl<'a, H: Host> Search<'a, H> {
    fn new(emb: &'a Embedder, plan: &'a Plan, host: &'a H) -> Self {
        Search {
            emb,
            plan,
            host,
            image: vec![NONE; plan.vertices.len()],
            used: vec![false; host.order()],
            leaf_image: vec![NONE; plan.leaves.len()],
        }
    }

    fn fits(&self, pos: usize, h: usize) -> bool {
        if self.used[h] || self.host.degree(h) < self.emb.degree[self.plan.vertices[pos]] {
            return false;
        }
        let free = self.host.neighbors(h).filter(|&w| !self.used[w]).count();
        free >= self.plan.need[pos]
    }

    fn seed(&mut self, hosts: &[usize]) -> bool {
        for (pos, &h) in hosts.iter().enumerate() {
            if !self.fits(pos, h) {
                for &done in &hosts[..pos] {
                    self.used[done] = false;
                }
                return false;
            }
            self.image[pos] = h;
            self.used[h] = true;
        }
        true
    }

    fn unseed(&mut self, hosts: &[usize]) {
        for &h in hosts {
            self.used[h] = false;
        }
    }

    fn extend(&mut self, pos: usize) -> bool {
        if pos == self.plan.vertices.len() {
            return self.match_leaves();
        }
        let anchor = self.image[self.plan.parent[pos]];
        let candidates: Vec<usize> = self.host.neighbors(anchor).filter(|&h| !self.used[h]).collect();
        for h in candidates {
            if !self.fits(pos, h) {
                continue;
            }
            self.image[pos] = h;
            self.used[h] = true;
            if self.extend(pos + 1) {
                return true;
            }
            self.used[h] = false;
        }
        self.image[pos] = NONE;
        false
    }

    fn match_leaves(&mut self) -> bool {
        let mut owner = vec![NONE; self.host.order()];
        for leaf in 0..self.plan.leaves.len() {
            let mut visited = vec![false; self.host.order()];
            if !self.augment(leaf, &mut owner, &mut visited) {
                return false;
            }
        }
        for (h, &leaf) in owner.iter().enumerate() {
            if leaf != NONE {
                self.leaf_image[leaf] = h;
            }
        }
        true
    }

    fn augment(&self, leaf: usize, owner: &mut [usize], visited: &mut [bool]) -> bool {
        let anchor = self.image[self.plan.leaves[leaf].1];
        for h in self.host.neighbors(anchor) {
            if self.used[h] || visited[h] {
                continue;
            }
            visited[h] = true;
            if owner[h] == NONE || self.augment(owner[h], owner, visited) {
                owner[h] = leaf;
                return true;
            }
        }
        false
    }

    fn mapping(&self) -> Vec<usize> {
        let mut map = vec![NONE; self.emb.n];
        for (pos, &v) in self.plan.vertices.iter().enumerate() {
            map[v] = self.image[pos];
        }
        for (i, &(v, _)) in self.plan.leaves.iter().enumerate() {
            map[v] = self.leaf_image[i];
        }
        map
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::patterns::{TreePattern, Variant};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_mapping(tree: &Graph, host: &Graph, map: &[usize]) {
        let mut seen = vec![false; host.order()];
        for &h in map {
            assert!(!seen[h], "mapping is not injective");
            seen[h] = true;
        }
        for (a, b) in tree.edges() {
            assert!(host.has_edge(map[a], map[b]), "tree edge {a}{b} not mapped onto an edge");
        }
    }

    #[test]
    fn mappings_are_embeddings() {
        let host = Graph::complete_bipartite(4, 4);
        for spec in ["spider:6", "path:8", "broom:5", "star:5"] {
            let pat: TreePattern = spec.parse().unwrap();
            let map = pat.embedder().find_map(&host).unwrap();
            check_mapping(&pat.realize(), &host, &map);
        }
        assert!(TreePattern::star(6).unwrap().embedder().find_map(&host).is_none());
        assert!(TreePattern::spider(7).unwrap().embedder().find_map(&host).is_none());
    }

    #[test]
    fn through_edge_detects_new_copies() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..600 {
            let p = rng.gen_range(4..=10);
            let density: f64 = rng.gen_range(0.1..0.7);
            let mut b = GraphBuilder::new(p);
            for u in 0..p {
                for v in u + 1..p {
                    if rng.gen_bool(density) {
                        b.add_edge(u, v).unwrap();
                    }
                }
            }
            let g = b.build();
            let variant = [Variant::Star, Variant::Broom, Variant::Spider, Variant::Path][rng.gen_range(0..4)];
            let pat = TreePattern::new(variant, rng.gen_range(variant.min_order()..=p)).unwrap();
            let emb = pat.embedder();
            let whole = emb.find(&g);
            // a copy exists iff some edge carries one
            assert_eq!(whole, g.edges().any(|(a, b)| emb.find_through_edge(&g, a, b)), "{pat} in {g:?}");
            for (a, b) in g.edges() {
                let mut without = g.to_builder();
                without.remove_edge(a, b).unwrap();
                if whole && !emb.find(&without.build()) {
                    assert!(emb.find_through_edge(&g, a, b), "{pat}: every copy uses {a}{b}");
                }
            }
            assert!(!emb.find_through_edge(&g, p - 1, p - 1));
        }
    }
}
