//! Maximum matching on the out-role/in-role bipartite view of a digraph.
//!
//! Every node is split into an out-role (tail side) and an in-role (head
//! side). A matching pairs out-roles with in-roles along graph edges so that
//! no tail and no head is used twice. Augmentation is depth-first from a
//! free out-role, scanning candidate in-roles in a fixed per-node order
//! (ascending rank unless the caller supplies a shuffled scan).

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Node};
use crate::order::NodeOrder;

/// An injective partial pairing of out-roles to in-roles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    tail_to_head: Vec<Option<Node>>,
    head_to_tail: Vec<Option<Node>>,
    size: usize,
}

impl Matching {
    pub fn empty(node_count: usize) -> Self {
        Self {
            tail_to_head: vec![None; node_count],
            head_to_tail: vec![None; node_count],
            size: 0,
        }
    }

    /// Builds a matching from `(tail, head)` pairs, validating it against `graph`.
    pub fn from_pairs(graph: &DirectedGraph, pairs: &[(Node, Node)]) -> Result<Self> {
        let n = graph.node_count();
        let mut m = Self::empty(n);
        for &(u, v) in pairs {
            if u >= n || v >= n || !graph.has_edge(u, v) {
                return Err(Error::Validation(format!("({u}, {v}) is not an edge")));
            }
            if m.tail_to_head[u].is_some() || m.head_to_tail[v].is_some() {
                return Err(Error::Validation(format!(
                    "({u}, {v}) shares a tail or head with another matched edge"
                )));
            }
            m.link(u, v);
            m.size += 1;
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn node_count(&self) -> usize {
        self.tail_to_head.len()
    }

    /// Head matched to the out-role of `tail`.
    pub fn head_of(&self, tail: Node) -> Option<Node> {
        self.tail_to_head[tail]
    }

    /// Tail matched to the in-role of `head`.
    pub fn tail_of(&self, head: Node) -> Option<Node> {
        self.head_to_tail[head]
    }

    pub fn is_head_matched(&self, node: Node) -> bool {
        self.head_to_tail[node].is_some()
    }

    pub fn is_tail_matched(&self, node: Node) -> bool {
        self.tail_to_head[node].is_some()
    }

    /// Matched `(tail, head)` pairs ordered by tail.
    pub fn pairs(&self) -> Vec<(Node, Node)> {
        self.tail_to_head
            .iter()
            .enumerate()
            .filter_map(|(u, v)| v.map(|v| (u, v)))
            .collect()
    }

    /// Nodes whose in-role is unmatched.
    pub fn unmatched_heads(&self) -> impl Iterator<Item = Node> + '_ {
        self.head_to_tail
            .iter()
            .enumerate()
            .filter_map(|(v, t)| t.is_none().then_some(v))
    }

    /// Checks inverse consistency, edge membership and the size counter.
    pub fn validate(&self, graph: &DirectedGraph) -> Result<()> {
        let n = graph.node_count();
        if self.node_count() != n {
            return Err(Error::Validation(format!(
                "matching covers {} nodes, graph has {n}",
                self.node_count()
            )));
        }
        let mut count = 0;
        for u in 0..n {
            if let Some(v) = self.tail_to_head[u] {
                count += 1;
                if self.head_to_tail[v] != Some(u) {
                    return Err(Error::Validation(format!(
                        "pair ({u}, {v}) is not mirrored in the head table"
                    )));
                }
                if !graph.has_edge(u, v) {
                    return Err(Error::Validation(format!("({u}, {v}) is not an edge")));
                }
            }
        }
        for v in 0..n {
            if let Some(u) = self.head_to_tail[v] {
                if self.tail_to_head[u] != Some(v) {
                    return Err(Error::Validation(format!(
                        "pair ({u}, {v}) is not mirrored in the tail table"
                    )));
                }
            }
        }
        if count != self.size {
            return Err(Error::Validation(format!(
                "size counter {} disagrees with {count} pairs",
                self.size
            )));
        }
        Ok(())
    }

    fn link(&mut self, tail: Node, head: Node) {
        self.tail_to_head[tail] = Some(head);
        self.head_to_tail[head] = Some(tail);
    }
}

/// A matching kept maximum on a growing set of admitted nodes.
#[derive(Debug, Clone)]
pub struct MatchingState<'g> {
    graph: &'g DirectedGraph,
    matching: Matching,
    active: Vec<bool>,
    active_count: usize,
    rank: Vec<usize>,
    by_rank: Vec<Node>,
    scan: Vec<Vec<Node>>,
    // In-role visitation marks. An in-role is visited in the current epoch
    // iff it is known not to lead to a free in-role under the current
    // matching and active set.
    mark: Vec<u32>,
    epoch: u32,
    stack: Vec<(Node, usize)>,
}

impl<'g> MatchingState<'g> {
    /// Empty active set; neighbours are scanned in ascending rank.
    pub fn new(graph: &'g DirectedGraph, order: &NodeOrder) -> Self {
        let scan = graph
            .nodes()
            .map(|u| {
                let mut heads = graph.out_neighbors(u).to_vec();
                heads.sort_by_key(|&v| order.rank(v));
                heads
            })
            .collect();
        Self::with_scan(graph, order, scan)
    }

    /// Empty active set with an explicit per-node neighbour scan order.
    ///
    /// `scan[u]` must be a permutation of `graph.out_neighbors(u)`.
    pub fn with_scan(graph: &'g DirectedGraph, order: &NodeOrder, scan: Vec<Vec<Node>>) -> Self {
        let n = graph.node_count();
        assert_eq!(order.len(), n, "order does not cover the graph");
        assert_eq!(scan.len(), n, "scan table does not cover the graph");
        Self {
            graph,
            matching: Matching::empty(n),
            active: vec![false; n],
            active_count: 0,
            rank: order.ranks().to_vec(),
            by_rank: order.permutation().to_vec(),
            scan,
            mark: vec![0; n],
            epoch: 1,
            stack: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g DirectedGraph {
        self.graph
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn into_matching(self) -> Matching {
        self.matching
    }

    pub fn is_active(&self, node: Node) -> bool {
        self.active[node]
    }

    pub fn active_count(&self) -> usize {
        self.active_count
    }

    pub fn active_mask(&self) -> &[bool] {
        &self.active
    }

    /// Searches for an augmenting path starting at the free out-role of
    /// `free_tail` and flips it if found.
    pub fn augment_from(&mut self, free_tail: Node) -> Result<bool> {
        if free_tail >= self.active.len() || !self.active[free_tail] {
            return Err(Error::Usage(format!("node {free_tail} is not active")));
        }
        if self.matching.is_tail_matched(free_tail) {
            return Err(Error::Usage(format!(
                "out-role of node {free_tail} is already matched"
            )));
        }
        self.invalidate_marks();
        Ok(self.search(free_tail))
    }

    /// Admits `node` and restores maximality on the enlarged active set.
    ///
    /// Augmentation starts from the new node's out-role, then from the
    /// remaining free out-roles in ascending rank. Returns the growth in
    /// matching size (0, 1 or 2). The matching must be maximum on the
    /// current active set.
    pub fn extend_with_node(&mut self, node: Node) -> Result<usize> {
        if node >= self.active.len() {
            return Err(Error::Usage(format!("node {node} is out of range")));
        }
        if self.active[node] {
            return Err(Error::Usage(format!("node {node} is already active")));
        }
        self.active[node] = true;
        self.active_count += 1;
        self.invalidate_marks();

        // With the old matching maximum and the new out-role still free, an
        // augmenting path from an old free out-role can only end at the new
        // in-role. Out-roles with no such path keep having none after any
        // augmentation, so these are the only ones worth retrying.
        let mut candidates = self.free_tails_reaching(node);
        candidates.sort_unstable_by_key(|&u| self.rank[u]);

        let before = self.matching.size();
        if self.search(node) {
            self.invalidate_marks();
        }
        for u in candidates {
            if u != node && !self.matching.is_tail_matched(u) && self.search(u) {
                self.invalidate_marks();
            }
        }
        Ok(self.matching.size() - before)
    }

    /// Admits every inactive node without augmenting.
    pub fn activate_all(&mut self) {
        for a in &mut self.active {
            *a = true;
        }
        self.active_count = self.active.len();
        self.invalidate_marks();
    }

    /// Makes the matching maximum on the active set by one pass over the
    /// free out-roles in ascending rank.
    pub fn complete(&mut self) -> usize {
        let before = self.matching.size();
        self.invalidate_marks();
        for r in 0..self.by_rank.len() {
            let u = self.by_rank[r];
            if self.active[u] && !self.matching.is_tail_matched(u) && self.search(u) {
                self.invalidate_marks();
            }
        }
        self.matching.size() - before
    }

    fn invalidate_marks(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
    }

    // Free active out-roles with an alternating path to the in-role of
    // `target`, found by walking the alternating structure backwards.
    fn free_tails_reaching(&self, target: Node) -> Vec<Node> {
        let n = self.active.len();
        let mut head_seen = vec![false; n];
        let mut tail_seen = vec![false; n];
        let mut stack = vec![target];
        head_seen[target] = true;
        let mut found = Vec::new();
        while let Some(h) = stack.pop() {
            for &t in self.graph.in_neighbors(h) {
                if !self.active[t] || tail_seen[t] {
                    continue;
                }
                tail_seen[t] = true;
                match self.matching.head_of(t) {
                    None => found.push(t),
                    Some(h2) if h2 != h && !head_seen[h2] => {
                        head_seen[h2] = true;
                        stack.push(h2);
                    }
                    Some(_) => {}
                }
            }
        }
        found
    }

    // Iterative depth-first search for an augmenting path from `root`'s
    // out-role. In-roles are marked as they are entered.
    fn search(&mut self, root: Node) -> bool {
        debug_assert!(!self.matching.is_tail_matched(root));
        self.stack.clear();
        self.stack.push((root, 0));
        while let Some(frame) = self.stack.last_mut() {
            let (u, cursor) = *frame;
            let Some(&v) = self.scan[u].get(cursor) else {
                self.stack.pop();
                continue;
            };
            frame.1 += 1;
            if !self.active[v] || self.mark[v] == self.epoch {
                continue;
            }
            self.mark[v] = self.epoch;
            match self.matching.tail_of(v) {
                Some(w) => self.stack.push((w, 0)),
                None => {
                    self.flip_stack();
                    return true;
                }
            }
        }
        false
    }

    fn flip_stack(&mut self) {
        for &(u, cursor) in &self.stack {
            let v = self.scan[u][cursor - 1];
            self.matching.link(u, v);
        }
        self.matching.size += 1;
        self.stack.clear();
    }
}

/// A maximum matching of the whole graph.
///
/// Free out-roles are processed in ascending rank and each out-role scans
/// its in-role neighbours in ascending rank, so the result is a function of
/// `(graph, order)`.
pub fn max_matching(graph: &DirectedGraph, order: &NodeOrder) -> Matching {
    let mut state = MatchingState::new(graph, order);
    state.activate_all();
    state.complete();
    state.into_matching()
}

/// `true` iff no augmenting path exists relative to `matching`
/// inside the subgraph induced by `active` (`None` means every node).
///
/// Independent of the depth-first search used to build matchings: this is a
/// breadth-first sweep over alternating paths from all free out-roles.
pub fn verify_maximum(
    graph: &DirectedGraph,
    matching: &Matching,
    active: Option<&[bool]>,
) -> Result<bool> {
    matching.validate(graph)?;
    let n = graph.node_count();
    let is_active = |v: Node| active.is_none_or(|a| a[v]);
    if let Some(a) = active {
        if a.len() != n {
            return Err(Error::Validation("active mask has the wrong length".into()));
        }
    }
    for (u, v) in matching.pairs() {
        if !is_active(u) || !is_active(v) {
            return Err(Error::Validation(format!(
                "matched pair ({u}, {v}) leaves the active set"
            )));
        }
    }

    let mut tail_seen = vec![false; n];
    let mut head_seen = vec![false; n];
    let mut queue: VecDeque<Node> = graph
        .nodes()
        .filter(|&u| is_active(u) && !matching.is_tail_matched(u))
        .collect();
    for &u in &queue {
        tail_seen[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in graph.out_neighbors(u) {
            if !is_active(v) || head_seen[v] || matching.head_of(u) == Some(v) {
                continue;
            }
            head_seen[v] = true;
            match matching.tail_of(v) {
                None => return Ok(false),
                Some(w) => {
                    if !tail_seen[w] {
                        tail_seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn graph(text: &str) -> DirectedGraph {
        parse_edge_list(text).unwrap().graph
    }

    fn labelled_pairs(g: &DirectedGraph, m: &Matching) -> Vec<(String, String)> {
        let mut p: Vec<_> = m
            .pairs()
            .into_iter()
            .map(|(u, v)| (g.label(u).to_owned(), g.label(v).to_owned()))
            .collect();
        p.sort();
        p
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.to_owned(), b.to_owned())
    }

    #[test]
    fn augment_single_edge() {
        let g = graph("a b");
        let order = NodeOrder::identity(&g);
        let mut st = MatchingState::new(&g, &order);
        st.activate_all();
        assert!(st.augment_from(0).unwrap());
        assert_eq!(st.matching().pairs(), [(0, 1)]);
    }

    #[test]
    fn augment_from_leaf_of_star_fails() {
        let g = graph("hub a\nhub b\nhub c");
        let order = NodeOrder::identity(&g);
        let mut st = MatchingState::new(&g, &order);
        st.activate_all();
        assert!(st.augment_from(0).unwrap());
        assert_eq!(st.matching().pairs(), [(0, 1)]);
        for leaf in 1..4 {
            assert!(!st.augment_from(leaf).unwrap());
        }
        assert_eq!(st.matching().size(), 1);
    }

    #[test]
    fn augment_along_path_rematches() {
        let g = graph("v1 v2\nv2 v3");
        let order = NodeOrder::identity(&g);
        let mut st = MatchingState::new(&g, &order);
        st.activate_all();
        assert!(st.augment_from(1).unwrap());
        assert!(st.augment_from(0).unwrap());
        assert_eq!(st.matching().pairs(), [(0, 1), (1, 2)]);
    }

    #[test]
    fn augment_from_rejects_bad_preconditions() {
        let g = graph("a b");
        let order = NodeOrder::identity(&g);
        let mut st = MatchingState::new(&g, &order);
        assert!(matches!(st.augment_from(0), Err(Error::Usage(_))));
        st.activate_all();
        st.augment_from(0).unwrap();
        assert!(matches!(st.augment_from(0), Err(Error::Usage(_))));
    }

    #[test]
    fn augmenting_path_flips_through_matched_edge() {
        // c -> a is matched first; b can only use a, forcing c onto d.
        let g = graph("c a\nc d\nb a");
        let order = NodeOrder::identity(&g);
        let m = max_matching(&g, &order);
        assert_eq!(m.size(), 2);
        assert_eq!(labelled_pairs(&g, &m), [pair("b", "a"), pair("c", "d")]);
    }

    #[test]
    fn max_matching_small_cases() {
        let cycle = graph("1 2\n2 3\n3 1");
        assert_eq!(max_matching(&cycle, &NodeOrder::identity(&cycle)).size(), 3);
        let star = graph("hub a\nhub b\nhub c");
        assert_eq!(max_matching(&star, &NodeOrder::identity(&star)).size(), 1);
        let path = graph("v1 v2\nv2 v3");
        assert_eq!(max_matching(&path, &NodeOrder::identity(&path)).size(), 2);
        let lone = graph("v v");
        assert_eq!(max_matching(&lone, &NodeOrder::identity(&lone)).pairs(), [(0, 0)]);
    }

    #[test]
    fn verify_maximum_cases() {
        let cycle = graph("1 2\n2 3\n3 1");
        let perfect = Matching::from_pairs(&cycle, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(verify_maximum(&cycle, &perfect, None).unwrap());

        let path = graph("v1 v2\nv2 v3");
        let partial = Matching::from_pairs(&path, &[(0, 1)]).unwrap();
        assert!(!verify_maximum(&path, &partial, None).unwrap());

        let edgeless = DirectedGraph::from_edges(3, vec![]).unwrap();
        assert!(verify_maximum(&edgeless, &Matching::empty(3), None).unwrap());
    }

    #[test]
    fn invalid_matchings_are_rejected() {
        let g = graph("a b\nc b\na c");
        assert!(Matching::from_pairs(&g, &[(1, 0)]).is_err());
        assert!(Matching::from_pairs(&g, &[(0, 1), (2, 1)]).is_err());
        assert!(Matching::from_pairs(&g, &[(0, 1), (0, 2)]).is_err());
        let mut broken = Matching::from_pairs(&g, &[(0, 1)]).unwrap();
        broken.head_to_tail[1] = Some(2);
        assert!(matches!(
            verify_maximum(&g, &broken, None),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn extend_isolated_node_adds_nothing() {
        let g = graph("1 2\n2 1\n3 3");
        let g = g.with_edges(vec![(0, 1), (1, 0)]).unwrap();
        let order = NodeOrder::identity(&g);
        let mut st = MatchingState::new(&g, &order);
        assert_eq!(st.extend_with_node(0).unwrap(), 0);
        assert_eq!(st.extend_with_node(1).unwrap(), 2);
        assert_eq!(st.extend_with_node(2).unwrap(), 0);
        assert_eq!(st.matching().size(), 2);
        assert!(matches!(st.extend_with_node(2), Err(Error::Usage(_))));
    }

    #[test]
    fn extend_keeps_full_matching_when_new_node_is_unreachable() {
        let g = graph("1 2\n2 1\n1 3");
        let order = NodeOrder::identity(&g);
        let mut st = MatchingState::new(&g, &order);
        st.extend_with_node(0).unwrap();
        st.extend_with_node(1).unwrap();
        let before = labelled_pairs(&g, st.matching());
        assert_eq!(before, [pair("1", "2"), pair("2", "1")]);
        assert_eq!(st.extend_with_node(2).unwrap(), 0);
        assert_eq!(labelled_pairs(&g, st.matching()), before);
        assert!(verify_maximum(&g, st.matching(), Some(st.active_mask())).unwrap());
    }

    #[test]
    fn extend_prefers_low_rank_heads() {
        let g = graph("1 2\n2 1\n1 3");
        let order = NodeOrder::degree_ascending(&g); // 3, 2, 1
        let mut st = MatchingState::new(&g, &order);
        st.extend_with_node(2).unwrap();
        st.extend_with_node(1).unwrap();
        assert_eq!(st.matching().size(), 0);
        assert_eq!(st.extend_with_node(0).unwrap(), 2);
        assert_eq!(
            labelled_pairs(&g, st.matching()),
            [pair("1", "3"), pair("2", "1")]
        );
        assert!(!st.matching().is_head_matched(1));
    }

    #[test]
    fn complete_is_idempotent() {
        let g = graph("a b\nb c\nc a\nd a\nd e");
        let order = NodeOrder::degree_descending(&g);
        let mut st = MatchingState::new(&g, &order);
        st.activate_all();
        let grown = st.complete();
        assert_eq!(grown, st.matching().size());
        assert_eq!(st.complete(), 0);
        assert!(verify_maximum(&g, st.matching(), None).unwrap());
    }

    // Reference admission: retry the new node, then every free active
    // out-role in ascending rank, each with fresh marks.
    fn naive_extend(st: &mut MatchingState<'_>, node: Node) {
        st.active[node] = true;
        st.active_count += 1;
        st.invalidate_marks();
        st.search(node);
        for i in 0..st.by_rank.len() {
            let u = st.by_rank[i];
            if st.active[u] && !st.matching.is_tail_matched(u) {
                st.invalidate_marks();
                st.search(u);
            }
        }
    }

    #[test]
    fn localized_repair_matches_full_rescan() {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..400 {
            let n = rng.random_range(1..=14);
            let density = rng.random_range(0.05..0.5);
            let edges: Vec<(Node, Node)> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(density))
                .collect();
            let g = DirectedGraph::from_edges(n, edges).unwrap();
            let mut perm: Vec<Node> = (0..n).collect();
            perm.shuffle(&mut rng);
            let order = NodeOrder::explicit(&g, perm.clone()).unwrap();
            let mut fast = MatchingState::new(&g, &order);
            let mut slow = MatchingState::new(&g, &order);
            let mut admit = perm.clone();
            admit.shuffle(&mut rng);
            for &v in &admit {
                fast.extend_with_node(v).unwrap();
                naive_extend(&mut slow, v);
                assert_eq!(fast.matching(), slow.matching());
                assert!(verify_maximum(&g, fast.matching(), Some(fast.active_mask())).unwrap());
            }
        }
    }
}
