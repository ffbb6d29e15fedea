//! Discrete graphs as flag sets with a root map and an involution.
//!
//! Vertices are the flags fixed by the root map. Legs are the remaining flags
//! fixed by the involution, and edges are the 2-orbits of the involution.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::canon::{Canonical, Structure};
use crate::error::{Error, Result};

pub type Label = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscreteGraph {
    root: Vec<usize>,
    inv: Vec<usize>,
}

impl DiscreteGraph {
    pub fn new(root: Vec<usize>, inv: Vec<usize>) -> Result<Self> {
        let n = root.len();
        if inv.len() != n {
            return Err(Error::InvalidGraph(format!("root has {n} entries, involution {}", inv.len())));
        }
        for f in 0..n {
            if root[f] >= n || inv[f] >= n {
                return Err(Error::InvalidGraph(format!("flag {f} maps out of range")));
            }
            if root[root[f]] != root[f] {
                return Err(Error::InvalidGraph(format!("root is not idempotent at flag {f}")));
            }
            if inv[inv[f]] != f {
                return Err(Error::InvalidGraph(format!("involution does not square to the identity at flag {f}")));
            }
            if root[f] == f && inv[f] != f {
                return Err(Error::InvalidGraph(format!("vertex flag {f} is moved by the involution")));
            }
        }
        Ok(DiscreteGraph { root, inv })
    }

    pub fn num_flags(&self) -> usize {
        self.root.len()
    }

    pub fn root(&self, f: usize) -> usize {
        self.root[f]
    }

    pub fn involution(&self, f: usize) -> usize {
        self.inv[f]
    }

    pub fn roots(&self) -> &[usize] {
        &self.root
    }

    pub fn involutions(&self) -> &[usize] {
        &self.inv
    }

    pub fn is_vertex(&self, f: usize) -> bool {
        self.root[f] == f
    }

    pub fn is_leg(&self, f: usize) -> bool {
        self.root[f] != f && self.inv[f] == f
    }

    pub fn is_half_edge(&self, f: usize) -> bool {
        self.inv[f] != f
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.num_flags()).filter(|&f| self.is_vertex(f)).collect()
    }

    pub fn legs(&self) -> Vec<usize> {
        (0..self.num_flags()).filter(|&f| self.is_leg(f)).collect()
    }

    /// Edges as `(f, ιf)` with `f < ιf`, ordered by `f`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_flags())
            .filter(|&f| self.inv[f] > f)
            .map(|f| (f, self.inv[f]))
            .collect()
    }

    /// Index into [`edges`](Self::edges) for every half-edge flag.
    pub fn edge_index(&self) -> Vec<Option<usize>> {
        let mut idx = vec![None; self.num_flags()];
        for (k, (a, b)) in self.edges().into_iter().enumerate() {
            idx[a] = Some(k);
            idx[b] = Some(k);
        }
        idx
    }

    /// Non-vertex flags rooted at `v`.
    pub fn flags_at(&self, v: usize) -> Vec<usize> {
        (0..self.num_flags()).filter(|&f| f != v && self.root[f] == v).collect()
    }

    pub fn valency(&self, v: usize) -> Result<usize> {
        if v >= self.num_flags() || !self.is_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(self.flags_at(v).len())
    }

    pub fn is_loop(&self, f: usize) -> bool {
        self.is_half_edge(f) && self.root[f] == self.root[self.inv[f]]
    }

    /// Endpoint vertices of the edge containing `f`.
    pub fn endpoints(&self, f: usize) -> Result<(usize, usize)> {
        if f >= self.num_flags() || !self.is_half_edge(f) {
            return Err(Error::NotAnEdge(f));
        }
        Ok((self.root[f], self.root[self.inv[f]]))
    }

    pub fn is_connected(&self) -> bool {
        let verts = self.vertices();
        if verts.is_empty() {
            return true;
        }
        let mut seen = HashSet::new();
        let mut stack = vec![verts[0]];
        seen.insert(verts[0]);
        let adj = self.adjacency();
        while let Some(v) = stack.pop() {
            for &(_, w) in &adj[v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == verts.len()
    }

    /// For each vertex flag, the list of `(half-edge, neighbour vertex)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.num_flags()];
        for f in 0..self.num_flags() {
            if self.is_half_edge(f) {
                adj[self.root[f]].push((f, self.root[self.inv[f]]));
            }
        }
        adj
    }

    /// First Betti number `E - V + 1`.
    pub fn genus(&self) -> Result<i64> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.edges().len() as i64 - self.vertices().len() as i64 + 1)
    }

    /// Contracts the edge through `f`; returns the quotient map on flags.
    pub fn contract_edge(&self, f: usize) -> Result<(DiscreteGraph, Vec<usize>)> {
        let (a, b) = self.endpoints(f)?;
        if a == b {
            return Err(Error::LoopContraction(f));
        }
        self.contract_forest(&[f])
    }

    /// Contracts every edge in `edge_flags` (one flag per edge suffices).
    ///
    /// The edges must form a forest; each component becomes one vertex.
    pub fn contract_forest(&self, edge_flags: &[usize]) -> Result<(DiscreteGraph, Vec<usize>)> {
        let n = self.num_flags();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut removed = vec![false; n];
        for &f in edge_flags {
            if f >= n || !self.is_half_edge(f) {
                return Err(Error::NotForest);
            }
            if removed[f] {
                continue;
            }
            removed[f] = true;
            removed[self.inv[f]] = true;
            let (a, b) = (find(&mut uf, self.root[f]), find(&mut uf, self.root[self.inv[f]]));
            if a == b {
                return Err(Error::NotForest);
            }
            uf[a.max(b)] = a.min(b);
        }
        for v in self.vertices() {
            if find(&mut uf, v) != v {
                removed[v] = true;
            }
        }
        let mut new_index = vec![usize::MAX; n];
        let mut k = 0;
        for f in 0..n {
            if !removed[f] {
                new_index[f] = k;
                k += 1;
            }
        }
        let mut quotient = vec![0; n];
        for f in 0..n {
            quotient[f] = if removed[f] {
                new_index[find(&mut uf, self.root[f])]
            } else {
                new_index[f]
            };
        }
        let mut root = vec![0; k];
        let mut inv = vec![0; k];
        for f in 0..n {
            if !removed[f] {
                root[new_index[f]] = new_index[find(&mut uf, self.root[f])];
                inv[new_index[f]] = new_index[self.inv[f]];
            }
        }
        Ok((DiscreteGraph::new(root, inv)?, quotient))
    }

    /// Applies the flag permutation `p` (old index to new index).
    pub fn permuted(&self, p: &[usize]) -> DiscreteGraph {
        let n = self.num_flags();
        let mut root = vec![0; n];
        let mut inv = vec![0; n];
        for f in 0..n {
            root[p[f]] = p[self.root[f]];
            inv[p[f]] = p[self.inv[f]];
        }
        DiscreteGraph { root, inv }
    }
}

/// A discrete graph with its legs bijectively labelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGraph {
    pub graph: DiscreteGraph,
    marking: BTreeMap<Label, usize>,
}

#[derive(Serialize, Deserialize)]
struct MarkedGraphJson {
    flags: usize,
    root: Vec<usize>,
    involution: Vec<usize>,
    marking: BTreeMap<String, usize>,
}

impl Serialize for MarkedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // numeric order of labels, not string order
        use serde::ser::SerializeStruct;
        struct Marking<'a>(&'a BTreeMap<Label, usize>);
        impl Serialize for Marking<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_map(self.0.iter().map(|(k, v)| (k.to_string(), v)))
            }
        }
        let mut st = s.serialize_struct("MarkedGraph", 4)?;
        st.serialize_field("flags", &self.graph.num_flags())?;
        st.serialize_field("root", self.graph.roots())?;
        st.serialize_field("involution", self.graph.involutions())?;
        st.serialize_field("marking", &Marking(&self.marking))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for MarkedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MarkedGraphJson::deserialize(d)?;
        let err = serde::de::Error::custom;
        if j.root.len() != j.flags {
            return Err(err(format!("declared {} flags, root has {}", j.flags, j.root.len())));
        }
        let graph = DiscreteGraph::new(j.root, j.involution).map_err(|e| err(e.to_string()))?;
        let mut marking = BTreeMap::new();
        for (k, v) in j.marking {
            let l: Label = k.parse().map_err(|_| err(format!("bad label {k:?}")))?;
            marking.insert(l, v);
        }
        MarkedGraph::new(graph, marking).map_err(|e| err(e.to_string()))
    }
}

const ROLE_VERTEX: u64 = 0;
const ROLE_HALF: u64 = 1;
const ROLE_LEG: u64 = 2;

/// Packs a role, a colour and a label into one structure code.
pub(crate) fn code(role: u64, color: u64, label: u64) -> u64 {
    debug_assert!(color < (1 << 28) && label < (1 << 32));
    (role << 60) | (color << 32) | label
}

/// Result of [`MarkedGraph::canonical_form`].
#[derive(Clone, Debug)]
pub struct GraphCanon {
    pub key: Vec<u64>,
    /// `relabeling[f]` is the canonical index of flag `f`.
    pub relabeling: Vec<usize>,
    pub aut_order: BigUint,
}

impl MarkedGraph {
    pub fn new(graph: DiscreteGraph, marking: BTreeMap<Label, usize>) -> Result<Self> {
        let legs: BTreeSet<usize> = graph.legs().into_iter().collect();
        let marked: BTreeSet<usize> = marking.values().copied().collect();
        if marked.len() != marking.len() {
            return Err(Error::InvalidGraph("two labels mark the same leg".into()));
        }
        if marked != legs {
            return Err(Error::InvalidGraph("marking is not a bijection onto the legs".into()));
        }
        Ok(MarkedGraph { graph, marking })
    }

    /// Builds a graph from vertex count, edge list and labelled legs.
    ///
    /// Vertices become flags `0..nv`, then two flags per edge, then one per leg.
    pub fn from_parts(nv: usize, edges: &[(usize, usize)], legs: &[(usize, Label)]) -> Result<Self> {
        let n = nv + 2 * edges.len() + legs.len();
        let mut root: Vec<usize> = (0..n).collect();
        let mut inv: Vec<usize> = (0..n).collect();
        for (k, &(a, b)) in edges.iter().enumerate() {
            if a >= nv || b >= nv {
                return Err(Error::InvalidGraph(format!("edge {k} has an endpoint out of range")));
            }
            let (f, g) = (nv + 2 * k, nv + 2 * k + 1);
            root[f] = a;
            root[g] = b;
            inv[f] = g;
            inv[g] = f;
        }
        let mut marking = BTreeMap::new();
        for (k, &(v, l)) in legs.iter().enumerate() {
            if v >= nv {
                return Err(Error::InvalidGraph(format!("leg {l} on missing vertex {v}")));
            }
            let f = nv + 2 * edges.len() + k;
            root[f] = v;
            if marking.insert(l, f).is_some() {
                return Err(Error::InvalidGraph(format!("label {l} used twice")));
            }
        }
        MarkedGraph::new(DiscreteGraph::new(root, inv)?, marking)
    }

    pub fn marking(&self) -> &BTreeMap<Label, usize> {
        &self.marking
    }

    pub fn labels(&self) -> Vec<Label> {
        self.marking.keys().copied().collect()
    }

    pub fn leg(&self, l: Label) -> Result<usize> {
        self.marking.get(&l).copied().ok_or(Error::MissingLabel(l))
    }

    /// Label of every leg flag.
    pub fn label_of(&self) -> Vec<Option<Label>> {
        let mut out = vec![None; self.graph.num_flags()];
        for (&l, &f) in &self.marking {
            out[f] = Some(l);
        }
        out
    }

    pub fn genus(&self) -> Result<i64> {
        self.graph.genus()
    }

    pub fn num_legs(&self) -> usize {
        self.marking.len()
    }

    /// Connected, every vertex at least trivalent, and `2g - 2 + n > 0`.
    pub fn is_stable(&self) -> bool {
        match self.genus() {
            Ok(g) => {
                2 * g - 2 + self.num_legs() as i64 > 0
                    && self.graph.vertices().iter().all(|&v| self.graph.flags_at(v).len() >= 3)
            }
            Err(_) => false,
        }
    }

    /// Number of legs rooted at `v`.
    pub fn leg_valency(&self, v: usize) -> usize {
        self.graph.flags_at(v).into_iter().filter(|&f| self.graph.is_leg(f)).count()
    }

    pub fn permuted(&self, p: &[usize]) -> MarkedGraph {
        MarkedGraph {
            graph: self.graph.permuted(p),
            marking: self.marking.iter().map(|(&l, &f)| (l, p[f])).collect(),
        }
    }

    /// Flag structure with leg codes chosen by `leg_color` and optional edge colours.
    pub fn structure(&self, leg_color: &dyn Fn(Label) -> (u64, u64), edge_colors: Option<&[u64]>) -> Structure {
        let g = &self.graph;
        let labels = self.label_of();
        let eidx = g.edge_index();
        let codes = (0..g.num_flags())
            .map(|f| {
                if g.is_vertex(f) {
                    code(ROLE_VERTEX, 0, 0)
                } else if let Some(l) = labels[f] {
                    let (c, lab) = leg_color(l);
                    code(ROLE_LEG, c, lab)
                } else {
                    let c = edge_colors.map_or(0, |ec| ec[eidx[f].expect("half-edge")]);
                    code(ROLE_HALF, c, 0)
                }
            })
            .collect();
        let mut s = Structure::new(codes);
        s.push_map(g.roots().to_vec());
        s.push_map(g.involutions().to_vec());
        s
    }

    /// Canonical form respecting labels and optional edge colours
    /// (indexed like [`DiscreteGraph::edges`]).
    pub fn canonical_form(&self, edge_colors: Option<&[u64]>) -> GraphCanon {
        let c: Canonical = self.structure(&|l| (0, l as u64), edge_colors).canonical();
        GraphCanon { key: c.key, relabeling: c.labeling, aut_order: c.group_order }
    }

    /// Canonical form where legs are only distinguished by `color(label)`.
    pub fn colored_canonical_form(&self, color: &dyn Fn(Label) -> u64) -> GraphCanon {
        let c = self.structure(&|l| (0, color(l)), None).canonical();
        GraphCanon { key: c.key, relabeling: c.labeling, aut_order: c.group_order }
    }

    /// The canonical representative of the isomorphism class.
    pub fn canonical_representative(&self) -> MarkedGraph {
        self.permuted(&self.canonical_form(None).relabeling)
    }

    pub fn isomorphic(&self, other: &MarkedGraph) -> bool {
        self.canonical_form(None).key == other.canonical_form(None).key
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Whether the flag map `f: G1 -> G2` is a contraction.
///
/// Errors when `f` is not a morphism of marked graphs. Returns true iff the
/// preimage of every vertex is a legless tree and every edge or leg of `G2`
/// has exactly one preimage.
pub fn is_contraction(f: &[usize], g1: &MarkedGraph, g2: &MarkedGraph) -> Result<bool> {
    let (a, b) = (&g1.graph, &g2.graph);
    if f.len() != a.num_flags() || f.iter().any(|&y| y >= b.num_flags()) {
        return Err(Error::NotAMorphism("flag map has the wrong shape".into()));
    }
    for x in 0..a.num_flags() {
        if f[a.root(x)] != b.root(f[x]) {
            return Err(Error::NotAMorphism(format!("root not preserved at flag {x}")));
        }
        if f[a.involution(x)] != b.involution(f[x]) {
            return Err(Error::NotAMorphism(format!("involution not preserved at flag {x}")));
        }
    }
    for (l, &x) in g1.marking() {
        if g2.marking().get(l) != Some(&f[x]) {
            return Err(Error::NotAMorphism(format!("label {l} not preserved")));
        }
    }
    if g1.marking().len() != g2.marking().len() {
        return Err(Error::NotAMorphism("label sets differ".into()));
    }
    let mut pre: Vec<Vec<usize>> = vec![Vec::new(); b.num_flags()];
    for x in 0..a.num_flags() {
        pre[f[x]].push(x);
    }
    for y in 0..b.num_flags() {
        if b.is_vertex(y) {
            let xs = &pre[y];
            let verts = xs.iter().filter(|&&x| a.is_vertex(x)).count();
            let halves = xs.iter().filter(|&&x| a.is_half_edge(x)).count();
            if xs.iter().any(|&x| a.is_leg(x)) || verts == 0 || halves != 2 * (verts - 1) {
                return Ok(false);
            }
            // connectivity of the preimage
            let set: HashSet<usize> = xs.iter().copied().collect();
            let start = *xs.iter().find(|&&x| a.is_vertex(x)).expect("vertex present");
            let mut seen = HashSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for h in a.flags_at(v) {
                    if set.contains(&h) && a.is_half_edge(h) {
                        let w = a.root(a.involution(h));
                        if seen.insert(w) {
                            stack.push(w);
                        }
                    }
                }
            }
            if seen.len() != verts {
                return Ok(false);
            }
        } else if pre[y].len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The one-vertex graph with `g` loops and the given legs.
pub fn rose(g: usize, labels: &[Label]) -> Result<MarkedGraph> {
    let edges = vec![(0, 0); g];
    let legs: Vec<(usize, Label)> = labels.iter().map(|&l| (0, l)).collect();
    MarkedGraph::from_parts(1, &edges, &legs)
}

/// All ways of splitting vertex `v` into two vertices joined by a new edge.
fn splittings(g: &MarkedGraph) -> Vec<MarkedGraph> {
    let dg = &g.graph;
    let n = dg.num_flags();
    let mut out = Vec::new();
    for v in dg.vertices() {
        let fl = dg.flags_at(v);
        let k = fl.len();
        if k < 4 {
            continue;
        }
        // subsets containing fl[0] to avoid the complement duplicate
        for mask in 0u64..(1u64 << (k - 1)) {
            let side: Vec<usize> = (0..k).filter(|&i| i == 0 || mask & (1 << (i - 1)) != 0).collect();
            if side.len() < 2 || k - side.len() < 2 {
                continue;
            }
            let mut root = dg.roots().to_vec();
            let mut inv = dg.involutions().to_vec();
            let (w, a, b) = (n, n + 1, n + 2);
            root.extend([w, v, w]);
            inv.extend([w, b, a]);
            for &i in &side {
                root[fl[i]] = w;
            }
            let graph = DiscreteGraph::new(root, inv).expect("splitting keeps axioms");
            out.push(MarkedGraph { graph, marking: g.marking.clone() });
        }
    }
    out
}

/// Stable graphs of genus `g` with legs coloured by `colors[i]` for label
/// `i + 1`, grouped by number of edges (index 0 holds the `g`-edge rose).
///
/// Isomorphism only sees the colours, so distinct colours give labelled
/// enumeration and repeated colours give anonymous legs.
pub fn enumerate_stable_graphs_colored(g: usize, colors: &[u64], max_edges: Option<usize>) -> Result<Vec<Vec<MarkedGraph>>> {
    let n = colors.len();
    if 2 * g + n < 3 {
        return Err(Error::Unstable(format!("(g, n) = ({g}, {n})")));
    }
    let labels: Vec<Label> = (1..=n as Label).collect();
    let color = |l: Label| colors[l as usize - 1];
    let top = 3 * g + n - 3;
    let last = max_edges.unwrap_or(top).min(top);
    let mut levels = vec![vec![rose(g, &labels)?]];
    for _ in g..last {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for gr in levels.last().expect("nonempty") {
            for s in splittings(gr) {
                let key = s.colored_canonical_form(&color).key;
                if seen.insert(key) {
                    next.push(s.canonical_by(&color));
                }
            }
        }
        next.sort_by_cached_key(|x| x.colored_canonical_form(&color).key);
        levels.push(next);
    }
    Ok(levels)
}

impl MarkedGraph {
    fn canonical_by(&self, color: &dyn Fn(Label) -> u64) -> MarkedGraph {
        self.permuted(&self.colored_canonical_form(color).relabeling)
    }
}

/// Isomorphism classes of stable `(g, n)` graphs with labelled legs.
///
/// With `edges = Some(k)` only the classes with exactly `k` edges are returned.
pub fn enumerate_stable_graphs(g: usize, labels: &[Label], edges: Option<usize>) -> Result<Vec<MarkedGraph>> {
    let colors: Vec<u64> = (0..labels.len() as u64).collect();
    let levels = enumerate_stable_graphs_colored(g, &colors, edges)?;
    let relabel = |gr: MarkedGraph| -> MarkedGraph {
        let marking = gr.marking.iter().map(|(&l, &f)| (labels[l as usize - 1], f)).collect();
        MarkedGraph { graph: gr.graph, marking }
    };
    Ok(match edges {
        Some(k) if k < g => Vec::new(),
        Some(k) => levels.into_iter().nth(k - g).unwrap_or_default().into_iter().map(relabel).collect(),
        None => levels.into_iter().flatten().map(relabel).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn genus_and_valency() {
        let g = MarkedGraph::from_parts(2, &[(0, 1), (0, 1), (0, 0)], &[(1, 1)]).unwrap();
        assert_eq!(g.genus().unwrap(), 2);
        assert_eq!(g.graph.valency(0).unwrap(), 4);
        assert_eq!(g.graph.valency(1).unwrap(), 3);
        assert!(g.is_stable());
        assert!(matches!(g.graph.valency(5), Err(Error::UnknownVertex(5))));
    }

    #[test]
    fn rejects_bad_axioms() {
        assert!(DiscreteGraph::new(vec![1, 0], vec![0, 1]).is_err());
        assert!(DiscreteGraph::new(vec![0, 0, 0], vec![0, 2, 2]).is_err());
        assert!(DiscreteGraph::new(vec![0, 0], vec![1, 0]).is_err());
    }

    #[test]
    fn disconnected_genus_errors() {
        let g = DiscreteGraph::new(vec![0, 1], vec![0, 1]).unwrap();
        assert_eq!(g.genus(), Err(Error::Disconnected));
    }

    #[test]
    fn contract_edge_and_loop() {
        let g = MarkedGraph::from_parts(2, &[(0, 1), (1, 1)], &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let (c, q) = g.graph.contract_edge(2).unwrap();
        assert_eq!(c.vertices().len(), 1);
        assert_eq!(c.genus().unwrap(), 1);
        assert_eq!(q[0], q[1]);
        assert!(matches!(g.graph.contract_edge(4), Err(Error::LoopContraction(4))));
    }

    #[test]
    fn contraction_detection() {
        let g1 = MarkedGraph::from_parts(2, &[(0, 1)], &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        let g2 = rose(0, &[1, 2, 3, 4]).unwrap();
        let (_, q) = g1.graph.contract_edge(2).unwrap();
        let mut f = vec![0; g1.graph.num_flags()];
        for x in 0..f.len() {
            f[x] = q[x];
        }
        // align marking of the quotient with g2
        let quotient = MarkedGraph::new(
            g1.graph.contract_edge(2).unwrap().0,
            g1.marking().iter().map(|(&l, &x)| (l, q[x])).collect(),
        )
        .unwrap();
        assert!(is_contraction(&f, &g1, &quotient).unwrap());
        assert!(quotient.isomorphic(&g2));
        let id: Vec<usize> = (0..g1.graph.num_flags()).collect();
        assert!(is_contraction(&id, &g1, &g1).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let g = MarkedGraph::from_parts(2, &[(0, 1)], &[(0, 1), (0, 2), (1, 10), (1, 3)]).unwrap();
        let s = g.to_json();
        assert!(s.contains("\"marking\":{\"1\":"));
        assert_eq!(MarkedGraph::from_json(&s).unwrap(), g);
        assert!(MarkedGraph::from_json("{\"flags\":2,\"root\":[0,0],\"involution\":[0,1],\"marking\":{}}").is_err());
    }

    fn random_relabel(g: &MarkedGraph, rng: &mut impl rand::Rng) -> MarkedGraph {
        let mut p: Vec<usize> = (0..g.graph.num_flags()).collect();
        p.shuffle(rng);
        g.permuted(&p)
    }

    #[test]
    fn canonical_invariance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for g in enumerate_stable_graphs(1, &[1, 2, 3], None).unwrap() {
            let k = g.canonical_form(None);
            for _ in 0..100 {
                let h = random_relabel(&g, &mut rng);
                let c = h.canonical_form(None);
                assert_eq!(c.key, k.key);
                assert_eq!(c.aut_order, k.aut_order);
                assert_eq!(h.canonical_representative(), g.canonical_representative());
            }
        }
    }

    #[test]
    fn m05_counts() {
        assert_eq!(enumerate_stable_graphs(0, &[1, 2, 3, 4, 5], Some(1)).unwrap().len(), 10);
        assert_eq!(enumerate_stable_graphs(0, &[1, 2, 3, 4, 5], Some(2)).unwrap().len(), 15);
        assert_eq!(enumerate_stable_graphs(0, &[1, 2, 3, 4], None).unwrap().len(), 4);
        assert_eq!(enumerate_stable_graphs(1, &[1], None).unwrap().len(), 1);
        assert_eq!(enumerate_stable_graphs(1, &[1], Some(1)).unwrap().len(), 1);
        assert!(enumerate_stable_graphs(0, &[1, 2], None).is_err());
    }

    #[test]
    fn labelled_trivalent_tree_counts() {
        // (2n - 5)!! trivalent trees with n labelled leaves
        assert_eq!(enumerate_stable_graphs(0, &[1, 2, 3, 4, 5, 6], Some(3)).unwrap().len(), 105);
        // genus two, no legs: 2 trivalent graphs (dumbbell and theta)
        assert_eq!(enumerate_stable_graphs(2, &[], Some(3)).unwrap().len(), 2);
    }

    #[test]
    fn automorphism_orders() {
        // theta graph: flags admit S3 x Z2
        let theta = MarkedGraph::from_parts(2, &[(0, 1), (0, 1), (0, 1)], &[]).unwrap();
        assert_eq!(theta.canonical_form(None).aut_order, BigUint::from(12u32));
        // dumbbell: two loop flips and the swap
        let bell = MarkedGraph::from_parts(2, &[(0, 0), (0, 1), (1, 1)], &[]).unwrap();
        assert_eq!(bell.canonical_form(None).aut_order, BigUint::from(8u32));
    }

    #[test]
    fn edge_colors_distinguish() {
        let g = MarkedGraph::from_parts(2, &[(0, 1), (0, 1)], &[(0, 1), (1, 2)]).unwrap();
        let a = g.canonical_form(Some(&[1, 2]));
        let b = g.canonical_form(Some(&[2, 1]));
        let c = g.canonical_form(Some(&[1, 1]));
        assert_eq!(a.key, b.key);
        assert_ne!(a.key, c.key);
        assert_eq!(c.aut_order, BigUint::from(2u32));
        assert_eq!(a.aut_order, BigUint::from(1u32));
    }
}
