//! Distance coordinates on moduli fans of tropical curves and forgetful maps.
//!
//! A metric tree with `n` labelled legs maps to `Q_n = R^{C(n,2)} / im(M_n)`
//! through its vector of pairwise leg distances, where `M_n` sends the basis
//! vector `e_i` to the sum of all pairs containing `i`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DiscreteGraph, Label, MarkedGraph};
use crate::linalg::{self, IntMatrix};
use crate::rational::{format_q, parse_q, Q};

/// Vector indexed by 2-subsets `{i, j}` of `{1..n}` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceVector {
    pub n: usize,
    pub entries: Vec<Q>,
}

/// Index of the pair `{i, j}`, `1 <= i < j <= n`.
pub fn pair_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    // pairs with first entry a < i come first
    let before: usize = (1..i).map(|a| n - a).sum();
    before + (j - i - 1)
}

impl DistanceVector {
    pub fn zero(n: usize) -> Self {
        DistanceVector { n, entries: vec![Q::zero(); n * n.saturating_sub(1) / 2] }
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        &self.entries[pair_index(a, b, self.n)]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let k = pair_index(a, b, self.n);
        self.entries[k] = x;
    }

    pub fn add_scaled(&mut self, other: &DistanceVector, c: &Q) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b * c;
        }
    }

    pub fn scaled(&self, c: &Q) -> DistanceVector {
        DistanceVector { n: self.n, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Restriction to the pairs inside `keep` (1-based, increasing), renumbered.
    pub fn project(&self, keep: &[usize]) -> DistanceVector {
        let mut out = DistanceVector::zero(keep.len());
        for a in 0..keep.len() {
            for b in a + 1..keep.len() {
                out.set(a + 1, b + 1, self.get(keep[a], keep[b]).clone());
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct DistanceVectorJson {
    n: usize,
    pairs: Vec<(usize, usize, String)>,
}

impl Serialize for DistanceVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut pairs = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                pairs.push((i, j, format_q(self.get(i, j))));
            }
        }
        DistanceVectorJson { n: self.n, pairs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistanceVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DistanceVectorJson::deserialize(d)?;
        let mut v = DistanceVector::zero(j.n);
        for (a, b, x) in j.pairs {
            if a == b || a == 0 || b == 0 || a > j.n || b > j.n {
                return Err(serde::de::Error::custom(format!("bad pair ({a}, {b})")));
            }
            v.set(a, b, parse_q(&x).map_err(serde::de::Error::custom)?);
        }
        Ok(v)
    }
}

/// Positive edge lengths, indexed like [`DiscreteGraph::edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricAssignment {
    pub lengths: Vec<Q>,
}

impl MetricAssignment {
    pub fn new(g: &DiscreteGraph, lengths: Vec<Q>) -> Result<Self> {
        if lengths.len() != g.edges().len() {
            return Err(Error::Parameters(format!(
                "{} lengths for {} edges",
                lengths.len(),
                g.edges().len()
            )));
        }
        if lengths.iter().any(|x| *x <= Q::zero()) {
            return Err(Error::Parameters("edge lengths must be positive".into()));
        }
        Ok(MetricAssignment { lengths })
    }
}

fn require_tree(t: &MarkedGraph) -> Result<()> {
    if t.genus()? != 0 {
        return Err(Error::NotTree);
    }
    Ok(())
}

/// Leg distances of the tree `t` with arbitrary edge weights; legs are
/// numbered by their position in `order`.
pub fn tree_distances(t: &MarkedGraph, lengths: &[Q], order: &[Label]) -> Result<DistanceVector> {
    require_tree(t)?;
    let g = &t.graph;
    let eidx = g.edge_index();
    let adj = g.adjacency();
    let n = order.len();
    let mut out = DistanceVector::zero(n);
    for a in 0..n {
        let start = g.root(t.leg(order[a])?);
        // distances from `start` to every vertex
        let mut dist: Vec<Option<Q>> = vec![None; g.num_flags()];
        dist[start] = Some(Q::zero());
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let dv = dist[v].clone().expect("visited");
            for &(h, w) in &adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(&dv + &lengths[eidx[h].expect("half-edge")]);
                    stack.push(w);
                }
            }
        }
        for b in a + 1..n {
            let w = g.root(t.leg(order[b])?);
            out.set(a + 1, b + 1, dist[w].clone().expect("tree is connected"));
        }
    }
    Ok(out)
}

/// Distance vector of a metric tree with legs labelled `1..n`.
pub fn distance_vector(t: &MarkedGraph, delta: &MetricAssignment) -> Result<DistanceVector> {
    require_tree(t)?;
    if delta.lengths.len() != t.graph.edges().len() {
        return Err(Error::Parameters("metric does not match the edges".into()));
    }
    tree_distances(t, &delta.lengths, &t.labels())
}

/// The split vector `v_I`: `1` on pairs separated by `I`, `0` elsewhere.
pub fn split_vector(part: &[Label], n: usize) -> Result<DistanceVector> {
    let set: BTreeSet<usize> = part.iter().map(|&l| l as usize).collect();
    if set.iter().any(|&i| i == 0 || i > n) || set.len() < 2 || set.len() + 2 > n {
        return Err(Error::TrivialSplit(part.to_vec()));
    }
    let mut v = DistanceVector::zero(n);
    for i in 1..=n {
        for j in i + 1..=n {
            if set.contains(&i) != set.contains(&j) {
                v.set(i, j, Q::from_integer(1.into()));
            }
        }
    }
    Ok(v)
}

/// Positions (1-based in `order`) of the legs reachable from `root(ιf)`
/// without crossing the edge through `f`.
pub fn edge_side(t: &MarkedGraph, f: usize, order: &[Label]) -> Result<Vec<usize>> {
    let g = &t.graph;
    let (_, b) = g.endpoints(f)?;
    let skip = (f, g.involution(f));
    let mut seen = vec![false; g.num_flags()];
    seen[b] = true;
    let mut stack = vec![b];
    while let Some(v) = stack.pop() {
        for h in g.flags_at(v) {
            if g.is_half_edge(h) && h != skip.0 && h != skip.1 {
                let w = g.root(g.involution(h));
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let mut side = Vec::new();
    for (k, &l) in order.iter().enumerate() {
        if seen[g.root(t.leg(l)?)] {
            side.push(k + 1);
        }
    }
    Ok(side)
}

/// The matrix `M_n` as columns `M_n e_i` in pair coordinates.
pub fn image_columns(n: usize) -> Vec<Vec<Q>> {
    (1..=n)
        .map(|i| {
            let mut v = DistanceVector::zero(n);
            for j in 1..=n {
                if j != i {
                    v.set(i, j, Q::from_integer(1.into()));
                }
            }
            v.entries
        })
        .collect()
}

/// Whether `v` vanishes in `Q_n`, by an exact solve of `M_n x = v`.
pub fn quotient_zero_test(v: &DistanceVector) -> bool {
    linalg::in_span(&image_columns(v.n), &v.entries)
}

/// Whether `v` vanishes in `Q_n` modulo the span of `extra`.
pub fn quotient_zero_modulo(v: &DistanceVector, extra: &[DistanceVector]) -> bool {
    let mut cols = image_columns(v.n);
    cols.extend(extra.iter().map(|e| e.entries.clone()));
    linalg::in_span(&cols, &v.entries)
}

/// Whether every 4-subset projection of `v` vanishes in `Q_4`.
///
/// In `Q_4` a vector vanishes iff `v_ij + v_kl = v_ik + v_jl = v_il + v_jk`.
pub fn four_point_zero_test(v: &DistanceVector) -> bool {
    let n = v.n;
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    let a = v.get(i, j) + v.get(k, l);
                    let b = v.get(i, k) + v.get(j, l);
                    let c = v.get(i, l) + v.get(j, k);
                    if a != b || b != c {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A forgetful map on graphs with its linear map on edge lengths.
#[derive(Clone, Debug)]
pub struct ForgetfulMap {
    pub source: MarkedGraph,
    pub target: MarkedGraph,
    /// Rows are target edges, columns source edges.
    pub matrix: IntMatrix,
    /// Surviving flags of the source, mapped to their target index.
    pub flag_map: Vec<Option<usize>>,
}

/// Forgets the leg labelled `a` and stabilizes.
pub fn forget_leg(gr: &MarkedGraph, a: Label) -> Result<ForgetfulMap> {
    let g = &gr.graph;
    let leg = gr.leg(a)?;
    let genus = gr.genus()?;
    if 2 * genus + gr.num_legs() as i64 - 3 <= 0 {
        return Err(Error::Unstable(format!("forgetting {a} leaves (g, n) = ({genus}, {})", gr.num_legs() - 1)));
    }
    let v = g.root(leg);
    let others: Vec<usize> = g.flags_at(v).into_iter().filter(|&f| f != leg).collect();
    let n = g.num_flags();
    let mut root = g.roots().to_vec();
    let mut inv = g.involutions().to_vec();
    let mut removed = vec![false; n];
    removed[leg] = true;
    match others.len() {
        0 | 1 => return Err(Error::Unstable(format!("vertex {v} is not stable"))),
        2 => {
            let (x, y) = (others[0], others[1]);
            match (g.is_half_edge(x), g.is_half_edge(y)) {
                (true, true) => {
                    if g.involution(x) == y {
                        return Err(Error::Unstable(format!("vertex {v} carries only a loop")));
                    }
                    let (ix, iy) = (g.involution(x), g.involution(y));
                    inv[ix] = iy;
                    inv[iy] = ix;
                    removed[x] = true;
                    removed[y] = true;
                    removed[v] = true;
                }
                (true, false) | (false, true) => {
                    let (h, l) = if g.is_half_edge(x) { (x, y) } else { (y, x) };
                    root[l] = g.root(g.involution(h));
                    removed[h] = true;
                    removed[g.involution(h)] = true;
                    removed[v] = true;
                }
                (false, false) => return Err(Error::Unstable("three legs on one vertex".into())),
            }
        }
        _ => {}
    }
    let mut new_index = vec![None; n];
    let mut k = 0;
    for f in 0..n {
        if !removed[f] {
            new_index[f] = Some(k);
            k += 1;
        }
    }
    let mut nroot = vec![0; k];
    let mut ninv = vec![0; k];
    for f in 0..n {
        if let Some(p) = new_index[f] {
            nroot[p] = new_index[root[f]].expect("root survives");
            ninv[p] = new_index[inv[f]].expect("partner survives");
        }
    }
    let marking = gr
        .marking()
        .iter()
        .filter(|(&l, _)| l != a)
        .map(|(&l, &f)| (l, new_index[f].expect("leg survives")))
        .collect();
    let target = MarkedGraph::new(DiscreteGraph::new(nroot, ninv)?, marking)?;
    // preimage of new flags
    let mut old_of = vec![0; k];
    for f in 0..n {
        if let Some(p) = new_index[f] {
            old_of[p] = f;
        }
    }
    let old_eidx = g.edge_index();
    let new_edges = target.graph.edges();
    let mut matrix = IntMatrix::zeros(new_edges.len(), g.edges().len());
    for (r, &(p, q)) in new_edges.iter().enumerate() {
        let (a0, b0) = (old_of[p], old_of[q]);
        if g.involution(a0) == b0 {
            matrix.entries[r][old_eidx[a0].expect("edge")] = 1;
        } else {
            // edge merged through the removed bivalent vertex
            matrix.entries[r][old_eidx[a0].expect("edge")] += 1;
            matrix.entries[r][old_eidx[b0].expect("edge")] += 1;
        }
    }
    Ok(ForgetfulMap { source: gr.clone(), target, matrix, flag_map: new_index })
}

/// Forgets all legs in `labels`, composing the edge-length matrices.
pub fn forget_legs(gr: &MarkedGraph, labels: &[Label]) -> Result<ForgetfulMap> {
    let n = gr.graph.num_flags();
    let mut acc = ForgetfulMap {
        source: gr.clone(),
        target: gr.clone(),
        matrix: IntMatrix::identity(gr.graph.edges().len()),
        flag_map: (0..n).map(Some).collect(),
    };
    for &a in labels {
        let step = forget_leg(&acc.target, a)?;
        acc.matrix = step.matrix.mul(&acc.matrix)?;
        acc.flag_map = acc.flag_map.iter().map(|x| x.and_then(|p| step.flag_map[p])).collect();
        acc.target = step.target;
    }
    Ok(acc)
}

/// Glues each leg pair `(i, i*)` of the tree `t` into an edge.
pub fn spanning_tree_glue(t: &MarkedGraph, pairs: &[(Label, Label)]) -> Result<MarkedGraph> {
    let mut inv = t.graph.involutions().to_vec();
    let mut marking = t.marking().clone();
    for &(i, j) in pairs {
        let (a, b) = (t.leg(i)?, t.leg(j)?);
        if marking.remove(&i).is_none() || marking.remove(&j).is_none() {
            return Err(Error::Parameters(format!("label used in two pairs ({i}, {j})")));
        }
        inv[a] = b;
        inv[b] = a;
    }
    MarkedGraph::new(DiscreteGraph::new(t.graph.roots().to_vec(), inv)?, marking)
}

/// Cuts each edge through `cuts[k].0` into two legs labelled `cuts[k].1`
/// (on the root of the given flag) and `cuts[k].2`.
pub fn cut_edges(gr: &MarkedGraph, cuts: &[(usize, Label, Label)]) -> Result<MarkedGraph> {
    let mut inv = gr.graph.involutions().to_vec();
    let mut marking = gr.marking().clone();
    for &(f, i, j) in cuts {
        if !gr.graph.is_half_edge(f) {
            return Err(Error::NotAnEdge(f));
        }
        let h = gr.graph.involution(f);
        inv[f] = f;
        inv[h] = h;
        if marking.insert(i, f).is_some() || marking.insert(j, h).is_some() {
            return Err(Error::Parameters(format!("cut labels ({i}, {j}) already used")));
        }
    }
    MarkedGraph::new(DiscreteGraph::new(gr.graph.roots().to_vec(), inv)?, marking)
}

/// Forgets `a` on a spanning tree whose leg pairs close up the loops.
///
/// Returns the new tree and the block matrix `[[eta, 0], [M, Id]]` acting on
/// (tree edge lengths, loop lengths), with loops ordered like `pairs`.
pub fn forget_leg_spanning(t: &MarkedGraph, a: Label, pairs: &[(Label, Label)]) -> Result<(MarkedGraph, IntMatrix)> {
    require_tree(t)?;
    if pairs.iter().any(|&(i, j)| i == a || j == a) {
        return Err(Error::Parameters(format!("label {a} closes a loop")));
    }
    let glued = spanning_tree_glue(t, pairs)?;
    let genus = pairs.len() as i64;
    if 2 * genus + glued.num_legs() as i64 - 3 <= 0 {
        return Err(Error::Unstable(format!("forgetting {a}")));
    }
    let fm = forget_leg(t, a)?;
    let (e0, e1, gl) = (t.graph.edges().len(), fm.target.graph.edges().len(), pairs.len());
    let mut m = IntMatrix::zeros(e1 + gl, e0 + gl);
    for r in 0..e1 {
        m.entries[r][..e0].copy_from_slice(&fm.matrix.entries[r]);
    }
    for i in 0..gl {
        m.entries[e1 + i][e0 + i] = 1;
    }
    let g = &t.graph;
    let leg = t.leg(a)?;
    let v = g.root(leg);
    let others: Vec<usize> = g.flags_at(v).into_iter().filter(|&f| f != leg).collect();
    if others.len() == 2 {
        let labels = t.label_of();
        let eidx = g.edge_index();
        let (x, y) = (others[0], others[1]);
        let (h, l) = if g.is_half_edge(x) { (x, y) } else { (y, x) };
        if g.is_half_edge(h) && g.is_leg(l) {
            let lab = labels[l].expect("leg is labelled");
            if let Some(i) = pairs.iter().position(|&(p, q)| p == lab || q == lab) {
                m.entries[e1 + i][eidx[h].expect("edge")] = 1;
            }
        }
    }
    Ok((fm.target, m))
}

/// Balancing of the all-ones weight on the top cones of `M_{0,n}`: for every
/// tree with one 4-valent vertex, the three split vectors of its resolutions
/// sum into the span of its own edges, modulo the doubling image.
pub fn fundamental_weight_balances(n: usize) -> Result<Vec<(MarkedGraph, bool)>> {
    let labels: Vec<Label> = (1..=n as Label).collect();
    let mut out = Vec::new();
    for t in crate::graph::enumerate_stable_graphs(0, &labels, Some(n - 4))? {
        let g = &t.graph;
        let w = g.vertices().into_iter().find(|&v| g.flags_at(v).len() == 4).ok_or(Error::Precondition("no 4-valent vertex".into()))?;
        let label_of = t.label_of();
        let sides: Vec<Vec<Label>> = g
            .flags_at(w)
            .into_iter()
            .map(|f| match label_of[f] {
                Some(l) => Ok(vec![l]),
                None => Ok(edge_side(&t, f, &labels)?.into_iter().map(|k| k as Label).collect()),
            })
            .collect::<Result<_>>()?;
        let mut sum = DistanceVector::zero(n);
        for j in 1..4 {
            let mut part = sides[0].clone();
            part.extend(&sides[j]);
            sum.add_scaled(&split_vector(&part, n)?, &Q::one());
        }
        let mut extra = Vec::new();
        for (f, _) in g.edges() {
            let side: Vec<Label> = edge_side(&t, f, &labels)?.into_iter().map(|k| k as Label).collect();
            extra.push(split_vector(&side, n)?);
        }
        let ok = quotient_zero_modulo(&sum, &extra);
        out.push((t, ok));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_stable_graphs;
    use crate::rational::q;

    fn tree_12_34() -> MarkedGraph {
        MarkedGraph::from_parts(2, &[(0, 1)], &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn pair_indexing() {
        let n = 5;
        let mut k = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                assert_eq!(pair_index(i, j, n), k);
                k += 1;
            }
        }
    }

    #[test]
    fn one_edge_tree_distances() {
        let t = tree_12_34();
        let d = distance_vector(&t, &MetricAssignment::new(&t.graph, vec![q(1)]).unwrap()).unwrap();
        let expected: Vec<Q> = [0, 1, 1, 1, 1, 0].iter().map(|&x| q(x)).collect();
        assert_eq!(d.entries, expected);
        assert_eq!(d, split_vector(&[1, 2], 4).unwrap());
        assert!(!quotient_zero_test(&d));
        assert!(!four_point_zero_test(&d));
    }

    #[test]
    fn split_relations() {
        let a = split_vector(&[1, 2], 4).unwrap();
        let b = split_vector(&[1, 3], 4).unwrap();
        let c = split_vector(&[1, 4], 4).unwrap();
        let mut s = a.clone();
        s.add_scaled(&b, &q(1));
        s.add_scaled(&c, &q(1));
        assert!(quotient_zero_test(&s));
        assert!(!quotient_zero_test(&a));
        assert!(matches!(split_vector(&[1], 4), Err(Error::TrivialSplit(_))));
        assert!(matches!(split_vector(&[1, 2, 3], 4), Err(Error::TrivialSplit(_))));
        // complement gives the same vector
        assert_eq!(split_vector(&[3, 4], 4).unwrap(), a);
    }

    #[test]
    fn json_form() {
        let v = split_vector(&[1, 2], 4).unwrap().scaled(&crate::rational::q_frac(1, 2));
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("[1,3,\"1/2\"]"));
        let back: DistanceVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn non_tree_rejected() {
        let g = MarkedGraph::from_parts(1, &[(0, 0)], &[(0, 1)]).unwrap();
        assert!(matches!(distance_vector(&g, &MetricAssignment { lengths: vec![q(1)] }), Err(Error::NotTree)));
    }

    #[test]
    fn forget_cases() {
        // leg on a 4-valent vertex: deletion only
        let t = MarkedGraph::from_parts(2, &[(0, 1)], &[(0, 1), (0, 2), (0, 5), (1, 3), (1, 4)]).unwrap();
        let f = forget_leg(&t, 5).unwrap();
        assert_eq!(f.matrix, IntMatrix::identity(1));
        // bivalent vertex after forgetting: two edges merge
        let chain = MarkedGraph::from_parts(3, &[(0, 1), (1, 2)], &[(0, 1), (0, 2), (1, 5), (2, 3), (2, 4)]).unwrap();
        let f = forget_leg(&chain, 5).unwrap();
        assert_eq!(f.matrix.entries, vec![vec![1, 1]]);
        assert!(f.target.isomorphic(&tree_12_34()));
        // vertex with the leg, another leg and one edge: edge disappears
        let f = forget_leg(&tree_12_34(), 4).unwrap();
        assert_eq!(f.matrix.rows, 0);
        assert_eq!(f.matrix.cols, 1);
        assert_eq!(f.target.graph.vertices().len(), 1);
        // unstable result
        let r = crate::graph::rose(0, &[1, 2, 3]).unwrap();
        assert!(matches!(forget_leg(&r, 1), Err(Error::Unstable(_))));
    }

    #[test]
    fn forgetting_preserves_remaining_distances() {
        for t in enumerate_stable_graphs(0, &[1, 2, 3, 4, 5, 6], Some(3)).unwrap() {
            let lengths: Vec<Q> = (0..3).map(|k| q(k + 2)).collect();
            let d = tree_distances(&t, &lengths, &[1, 2, 3, 4, 5, 6]).unwrap();
            let f = forget_leg(&t, 6).unwrap();
            let new_lengths: Vec<Q> = f
                .matrix
                .entries
                .iter()
                .map(|r| r.iter().zip(&lengths).map(|(&a, l)| l * q(a)).sum())
                .collect();
            let d2 = tree_distances(&f.target, &new_lengths, &[1, 2, 3, 4, 5]).unwrap();
            // a leg sliding along a removed edge shifts by an image vector
            let mut diff = d2.clone();
            diff.add_scaled(&d.project(&[1, 2, 3, 4, 5]), &q(-1));
            assert!(quotient_zero_test(&diff));
            assert!(four_point_zero_test(&diff));
        }
    }

    #[test]
    fn spanning_glue_and_loop_matrix() {
        // tree: leg a and leg 1 on one vertex, edge to vertex with 1* and 2
        let t = MarkedGraph::from_parts(2, &[(0, 1)], &[(0, 7), (0, 10), (1, 11), (1, 2)]).unwrap();
        let pairs = [(10, 11)];
        let g = spanning_tree_glue(&t, &pairs).unwrap();
        assert_eq!(g.genus().unwrap(), 1);
        let (t2, m) = forget_leg_spanning(&t, 7, &pairs).unwrap();
        assert_eq!(t2.graph.edges().len(), 0);
        // loop absorbs the removed edge
        assert_eq!(m.entries, vec![vec![1, 1]]);
        assert!(spanning_tree_glue(&t, &[(10, 99)]).is_err());
    }

    #[test]
    fn fundamental_weight_of_m05_and_m06() {
        let r5 = fundamental_weight_balances(5).unwrap();
        assert_eq!(r5.len(), 10);
        assert!(r5.iter().all(|(_, ok)| *ok));
        let r6 = fundamental_weight_balances(6).unwrap();
        assert!(!r6.is_empty() && r6.iter().all(|(_, ok)| *ok));
        // two of the three resolutions alone do not balance
        let mut two = split_vector(&[1, 2], 5).unwrap();
        two.add_scaled(&split_vector(&[1, 3], 5).unwrap(), &q(1));
        assert!(!quotient_zero_modulo(&two, &[split_vector(&[4, 5], 5).unwrap()]));
    }
}
