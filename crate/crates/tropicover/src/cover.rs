//! Harmonic morphisms of graphs and admissible covers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::{Canonical, Structure};
use crate::error::{Error, Result};
use crate::fans::MetricAssignment;
use crate::graph::{code, DiscreteGraph, Label, MarkedGraph};
use crate::linalg::IntMatrix;
use crate::rational::{lcm_u32, Q};

/// Integer partition with parts in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Parameters(format!("{parts:?} is not a partition")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// `(1^d)`.
    pub fn ones(d: u32) -> Self {
        Partition(vec![1; d as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(part, multiplicity)` pairs.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n`, parts non-increasing, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// A morphism of marked graphs with local degrees on source flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCover {
    pub source: MarkedGraph,
    pub target: MarkedGraph,
    #[serde(rename = "flagMap")]
    pub flag_map: Vec<usize>,
    /// Local degree of every source flag; for a vertex flag, `d(V)`.
    pub degrees: Vec<u32>,
}

/// Outcome of [`validate_harmonic`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicReport {
    pub valid: bool,
    pub violation: Option<String>,
    pub flags: Vec<usize>,
}

impl HarmonicReport {
    fn fail(msg: impl Into<String>, flags: Vec<usize>) -> Self {
        HarmonicReport { valid: false, violation: Some(msg.into()), flags }
    }
}

/// Checks the morphism axioms, non-contraction and harmonicity.
pub fn validate_harmonic(p: &GraphCover) -> HarmonicReport {
    let (s, t) = (&p.source.graph, &p.target.graph);
    let n = s.num_flags();
    if p.flag_map.len() != n || p.degrees.len() != n {
        return HarmonicReport::fail("flag map or degrees have the wrong length", vec![]);
    }
    if let Some(x) = (0..n).find(|&x| p.flag_map[x] >= t.num_flags()) {
        return HarmonicReport::fail("flag map out of range", vec![x]);
    }
    for x in 0..n {
        let y = p.flag_map[x];
        if p.flag_map[s.root(x)] != t.root(y) {
            return HarmonicReport::fail("root not preserved", vec![x]);
        }
        if p.flag_map[s.involution(x)] != t.involution(y) {
            return HarmonicReport::fail("involution not preserved", vec![x]);
        }
        if s.is_vertex(x) != t.is_vertex(y) {
            return HarmonicReport::fail("flag contracted or vertex expanded", vec![x]);
        }
        if s.is_leg(x) != t.is_leg(y) {
            return HarmonicReport::fail("legs must map to legs and edges to edges", vec![x]);
        }
        if p.degrees[x] == 0 {
            return HarmonicReport::fail("degree must be positive", vec![x]);
        }
        if p.degrees[x] != p.degrees[s.involution(x)] {
            return HarmonicReport::fail("degree not constant on an edge", vec![x, s.involution(x)]);
        }
    }
    let mut hit = vec![false; t.num_flags()];
    for &y in &p.flag_map {
        hit[y] = true;
    }
    if let Some(y) = hit.iter().position(|&h| !h) {
        return HarmonicReport::fail(format!("target flag {y} not covered"), vec![]);
    }
    for v in s.vertices() {
        let mut sums: BTreeMap<usize, u32> = t.flags_at(p.flag_map[v]).into_iter().map(|h| (h, 0)).collect();
        for x in s.flags_at(v) {
            *sums.get_mut(&p.flag_map[x]).expect("root preserved") += p.degrees[x];
        }
        if let Some((&h, _)) = sums.iter().find(|(_, &sum)| sum != p.degrees[v]) {
            return HarmonicReport::fail(format!("not harmonic over target flag {h}"), vec![v]);
        }
    }
    HarmonicReport { valid: true, violation: None, flags: vec![] }
}

/// The block offsets `N_k`: labels `N_k + 1 ..= N_k + len(mu_k)` lie over leg `k + 1`.
pub fn leg_block_offsets(mu: &[Partition]) -> Vec<u32> {
    let mut off = Vec::with_capacity(mu.len());
    let mut acc = 0;
    for m in mu {
        off.push(acc);
        acc += m.len() as u32;
    }
    off
}

/// Sorts canonical covers deterministically.
pub type CoverKey = Vec<u64>;

/// How legs enter a cover isomorphism test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LegMode {
    /// All source and target legs keep their labels.
    Labelled,
    /// Source legs are anonymous (the cover map still ties them to target legs).
    SourceColored,
    /// As `SourceColored`, and target legs with label above the bound are anonymous.
    Anonymous(Label),
}

impl GraphCover {
    pub fn new(source: MarkedGraph, target: MarkedGraph, flag_map: Vec<usize>, degrees: Vec<u32>) -> Result<Self> {
        let c = GraphCover { source, target, flag_map, degrees };
        let r = validate_harmonic(&c);
        if !r.valid {
            return Err(Error::InvalidCover(r.violation.unwrap_or_default()));
        }
        Ok(c)
    }

    /// Global degree; errors if fibers disagree.
    pub fn degree(&self) -> Result<u32> {
        let t = &self.target.graph;
        let mut per: BTreeMap<usize, u32> = t.vertices().into_iter().map(|w| (w, 0)).collect();
        for v in self.source.graph.vertices() {
            *per.get_mut(&self.flag_map[v]).ok_or(Error::InvalidCover("vertex off target".into()))? += self.degrees[v];
        }
        let mut vals = per.values();
        let d = *vals.next().ok_or(Error::InvalidCover("empty target".into()))?;
        if vals.any(|&x| x != d) {
            return Err(Error::InvalidCover("degree varies between fibers".into()));
        }
        Ok(d)
    }

    /// `val(V) - 2 - d(V) (val(pi V) - 2)`.
    pub fn rh_number(&self, v: usize) -> Result<i64> {
        let s = &self.source.graph;
        let val = s.valency(v)? as i64;
        let wval = self.target.graph.valency(self.flag_map[v])? as i64;
        Ok(val - 2 - self.degrees[v] as i64 * (wval - 2))
    }

    pub fn is_admissible(&self) -> Result<bool> {
        for v in self.source.graph.vertices() {
            if self.rh_number(v)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Degrees of the source flags over the target flag `t`.
    pub fn ramification_profile(&self, t: usize) -> Result<Partition> {
        let tg = &self.target.graph;
        if t >= tg.num_flags() || tg.is_vertex(t) {
            return Err(Error::Parameters(format!("target flag {t} is not an edge or leg")));
        }
        let parts: Vec<u32> = (0..self.flag_map.len()).filter(|&x| self.flag_map[x] == t).map(|x| self.degrees[x]).collect();
        Partition::new(parts)
    }

    /// Profiles of `V` over each target flag at `pi(V)`, ordered by target flag.
    pub fn local_profiles(&self, v: usize) -> Vec<(usize, Partition)> {
        let s = &self.source.graph;
        let w = self.flag_map[v];
        self.target
            .graph
            .flags_at(w)
            .into_iter()
            .map(|h| {
                let parts = s.flags_at(v).into_iter().filter(|&x| self.flag_map[x] == h).map(|x| self.degrees[x]).collect();
                (h, Partition::new(parts).expect("harmonic cover has nonempty local fibers"))
            })
            .collect()
    }

    /// Checks `n + 2(g - 1) = d (m + 2(h - 1)) + sum of RH numbers`.
    pub fn rh_equality_holds(&self) -> Result<bool> {
        let d = self.degree()? as i64;
        let lhs = self.source.num_legs() as i64 + 2 * (self.source.genus()? - 1);
        let mut rhs = d * (self.target.num_legs() as i64 + 2 * (self.target.genus()? - 1));
        for v in self.source.graph.vertices() {
            rhs += self.rh_number(v)?;
        }
        Ok(lhs == rhs)
    }

    /// Source edges (as their smaller flag) lying over the target edge through `t`.
    pub fn edges_over(&self, t: usize) -> Vec<usize> {
        let tg = &self.target.graph;
        let (a, b) = (t.min(tg.involution(t)), t.max(tg.involution(t)));
        self.source
            .graph
            .edges()
            .into_iter()
            .filter(|&(x, _)| self.flag_map[x] == a || self.flag_map[x] == b)
            .map(|(x, _)| x)
            .collect()
    }

    /// Least common multiple of the degrees of the edges over target edge `t`.
    pub fn edge_lcm(&self, t: usize) -> u64 {
        lcm_u32(self.edges_over(t).into_iter().map(|x| self.degrees[x]))
    }

    /// `F_pi`: rows source edges, columns target edges, entries `lcm / d(e)`.
    pub fn cover_matrix(&self) -> IntMatrix {
        let (s, t) = (&self.source.graph, &self.target.graph);
        let tidx = t.edge_index();
        let sedges = s.edges();
        let tedges = t.edges();
        let lcms: Vec<u64> = tedges.iter().map(|&(a, _)| self.edge_lcm(a)).collect();
        let mut m = IntMatrix::zeros(sedges.len(), tedges.len());
        for (r, &(x, _)) in sedges.iter().enumerate() {
            let c = tidx[self.flag_map[x]].expect("edges map to edges");
            m.entries[r][c] = (lcms[c] / self.degrees[x] as u64) as i64;
        }
        m
    }

    /// Pulls back a target metric: `delta(e) = delta'(pi e) / d(e)`.
    pub fn induced_metric(&self, delta: &MetricAssignment) -> Result<MetricAssignment> {
        let t = &self.target.graph;
        if delta.lengths.len() != t.edges().len() {
            return Err(Error::Parameters("metric does not match the target edges".into()));
        }
        let tidx = t.edge_index();
        let lengths = self
            .source
            .graph
            .edges()
            .into_iter()
            .map(|(x, _)| &delta.lengths[tidx[self.flag_map[x]].expect("edge")] / Q::from_integer(self.degrees[x].into()))
            .collect();
        Ok(MetricAssignment { lengths })
    }

    /// Contracts the target edge through `e` and its fiber.
    pub fn contract_target_edge(&self, e: usize) -> Result<GraphCover> {
        let (s, t) = (&self.source.graph, &self.target.graph);
        let (_, _) = t.endpoints(e)?;
        let (tg2, qt) = t.contract_edge(e)?;
        let fiber = self.edges_over(e);
        let (sg2, qs) = s.contract_forest(&fiber).map_err(|_| Error::FiberCycle(e))?;
        let mut flag_map = vec![0; sg2.num_flags()];
        let mut degrees = vec![0; sg2.num_flags()];
        for x in 0..s.num_flags() {
            let y = qs[x];
            flag_map[y] = qt[self.flag_map[x]];
            if !sg2.is_vertex(y) {
                degrees[y] = self.degrees[x];
            }
        }
        // merged vertices: degree is the total degree of their fiber edges
        for v in sg2.vertices() {
            degrees[v] = 0;
        }
        let mut merged = vec![false; sg2.num_flags()];
        for &x in &fiber {
            let v = qs[x];
            degrees[v] += self.degrees[x];
            merged[v] = true;
        }
        for v0 in s.vertices() {
            let v = qs[v0];
            if !merged[v] {
                degrees[v] = self.degrees[v0];
            }
        }
        let relabel = |g: &MarkedGraph, q: &[usize], graph: DiscreteGraph| -> Result<MarkedGraph> {
            MarkedGraph::new(graph, g.marking().iter().map(|(&l, &f)| (l, q[f])).collect())
        };
        let out = GraphCover {
            source: relabel(&self.source, &qs, sg2)?,
            target: relabel(&self.target, &qt, tg2)?,
            flag_map,
            degrees,
        };
        let r = validate_harmonic(&out);
        if !r.valid {
            return Err(Error::InvalidCover(r.violation.unwrap_or_default()));
        }
        Ok(out)
    }

    /// Flag structure on source flags followed by target flags.
    pub fn structure(&self, mode: LegMode) -> Structure {
        let (s, t) = (&self.source.graph, &self.target.graph);
        let ns = s.num_flags();
        let slab = self.source.label_of();
        let tlab = self.target.label_of();
        let role = |g: &DiscreteGraph, f: usize| -> u64 {
            if g.is_vertex(f) {
                0
            } else if g.is_leg(f) {
                2
            } else {
                1
            }
        };
        let mut codes = Vec::with_capacity(ns + t.num_flags());
        for x in 0..ns {
            let label = match (mode, slab[x]) {
                (LegMode::Labelled, Some(l)) => l as u64,
                _ => 0,
            };
            codes.push(code(role(s, x), self.degrees[x] as u64, label));
        }
        for y in 0..t.num_flags() {
            let label = match (mode, tlab[y]) {
                (LegMode::Anonymous(r), Some(l)) if l > r => 0,
                (_, Some(l)) => l as u64,
                _ => 0,
            };
            codes.push((1 << 62) | code(role(t, y), 0, label));
        }
        let mut root: Vec<usize> = s.roots().to_vec();
        root.extend(t.roots().iter().map(|&r| r + ns));
        let mut inv: Vec<usize> = s.involutions().to_vec();
        inv.extend(t.involutions().iter().map(|&r| r + ns));
        let mut map: Vec<usize> = self.flag_map.iter().map(|&y| y + ns).collect();
        map.extend(ns..ns + t.num_flags());
        let mut st = Structure::new(codes);
        st.push_map(root);
        st.push_map(inv);
        st.push_map(map);
        st
    }

    pub fn canonical(&self, mode: LegMode) -> Canonical {
        self.structure(mode).canonical()
    }

    /// Canonical key for isomorphism of labelled covers.
    pub fn key(&self) -> CoverKey {
        self.canonical(LegMode::Labelled).key
    }

    /// Relabels source and target flags by the given permutations.
    pub fn permuted(&self, ps: &[usize], pt: &[usize]) -> GraphCover {
        let n = self.flag_map.len();
        let mut flag_map = vec![0; n];
        let mut degrees = vec![0; n];
        for x in 0..n {
            flag_map[ps[x]] = pt[self.flag_map[x]];
            degrees[ps[x]] = self.degrees[x];
        }
        GraphCover { source: self.source.permuted(ps), target: self.target.permuted(pt), flag_map, degrees }
    }
}

/// Whether two labelled covers are isomorphic.
pub fn covers_isomorphic(a: &GraphCover, b: &GraphCover) -> Result<bool> {
    let sig = |c: &GraphCover| -> Result<(u32, i64, i64, usize, usize)> {
        Ok((c.degree()?, c.target.genus()?, c.source.genus()?, c.target.num_legs(), c.source.num_legs()))
    };
    if sig(a)? != sig(b)? {
        return Err(Error::Parameters("covers have different discrete parameters".into()));
    }
    Ok(a.key() == b.key())
}

/// Discrete parameters `(d, h, mu)` of an admissible cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcParams {
    pub d: u32,
    pub h: u32,
    pub mu: Vec<Partition>,
}

impl AcParams {
    pub fn new(d: u32, h: u32, mu: Vec<Partition>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Parameters("degree must be positive".into()));
        }
        if let Some(p) = mu.iter().find(|p| p.size() != d) {
            return Err(Error::Parameters(format!("{p} is not a partition of {d}")));
        }
        let m = mu.len() as i64;
        if 2 * h as i64 - 2 + m <= 0 {
            return Err(Error::Unstable(format!("target (h, m) = ({h}, {m})")));
        }
        let p = AcParams { d, h, mu };
        p.source_genus()?;
        Ok(p)
    }

    pub fn m(&self) -> usize {
        self.mu.len()
    }

    pub fn n(&self) -> usize {
        self.mu.iter().map(Partition::len).sum()
    }

    /// Source genus from `n + 2(g - 1) = d (m + 2(h - 1))`.
    pub fn source_genus(&self) -> Result<u32> {
        let rhs = self.d as i64 * (self.m() as i64 + 2 * (self.h as i64 - 1)) - self.n() as i64 + 2;
        if rhs < 0 || rhs % 2 != 0 {
            return Err(Error::Parameters(format!("no source genus fits d = {}, mu = {:?}", self.d, self.mu)));
        }
        Ok((rhs / 2) as u32)
    }
}

/// An admissible cover with its discrete data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleCoverObject {
    #[serde(flatten)]
    pub params: AcParams,
    #[serde(flatten)]
    pub cover: GraphCover,
}

impl AdmissibleCoverObject {
    pub fn new(cover: GraphCover, params: AcParams) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCover(m));
        let r = validate_harmonic(&cover);
        if !r.valid {
            return bad(r.violation.unwrap_or_default());
        }
        let (m, n) = (params.m() as Label, params.n() as Label);
        if cover.target.labels() != (1..=m).collect::<Vec<_>>() {
            return bad(format!("target legs must be labelled 1..{m}"));
        }
        if cover.source.labels() != (1..=n).collect::<Vec<_>>() {
            return bad(format!("source legs must be labelled 1..{n}"));
        }
        if !cover.target.is_stable() || cover.target.genus()? != params.h as i64 {
            return bad(format!("target is not a stable graph of genus {}", params.h));
        }
        if cover.degree()? != params.d {
            return bad(format!("cover degree differs from {}", params.d));
        }
        if cover.source.genus()? != params.source_genus()? as i64 {
            return bad("source genus does not match".into());
        }
        let off = leg_block_offsets(&params.mu);
        for (k, mu) in params.mu.iter().enumerate() {
            let tleg = cover.target.leg(k as Label + 1)?;
            for (j, &w) in mu.parts().iter().enumerate() {
                let x = cover.source.leg(off[k] + j as Label + 1)?;
                if cover.flag_map[x] != tleg || cover.degrees[x] != w {
                    return bad(format!("source leg {} must lie over target leg {} with weight {w}", off[k] + j as Label + 1, k + 1));
                }
            }
        }
        if !cover.is_admissible()? {
            return bad("a vertex has nonzero ramification number".into());
        }
        Ok(AdmissibleCoverObject { params, cover })
    }

    pub fn source_genus(&self) -> u32 {
        self.params.source_genus().expect("validated")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("cover serializes")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::q;

    /// Degree 2 over the one-edge tree `{1,2 | 3,4}`, all legs fully ramified,
    /// two parallel weight-1 edges: the source has genus one.
    pub fn two_parallel_edges() -> AdmissibleCoverObject {
        let target = MarkedGraph::from_parts(2, &[(0, 1)], &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        let source = MarkedGraph::from_parts(2, &[(0, 1), (0, 1)], &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        // source flags: 0,1 vertices; 2..5 edge flags; 6..9 legs
        // target flags: 0,1 vertices; 2,3 edge; 4..7 legs
        let flag_map = vec![0, 1, 2, 3, 2, 3, 4, 5, 6, 7];
        let degrees = vec![2, 2, 1, 1, 1, 1, 2, 2, 2, 2];
        let cover = GraphCover::new(source, target, flag_map, degrees).unwrap();
        let mu = vec![Partition::new(vec![2]).unwrap(); 4];
        AdmissibleCoverObject::new(cover, AcParams::new(2, 0, mu).unwrap()).unwrap()
    }

    #[test]
    fn partitions() {
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(6).len(), 11);
        let p = Partition::new(vec![1, 2, 1]).unwrap();
        assert_eq!(p.parts(), &[2, 1, 1]);
        assert_eq!(p.multiplicities(), vec![(2, 1), (1, 2)]);
        assert!(Partition::new(vec![0]).is_err());
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,1]");
    }

    #[test]
    fn parallel_edges_cover() {
        let ac = two_parallel_edges();
        let c = &ac.cover;
        assert_eq!(ac.source_genus(), 1);
        assert_eq!(c.degree().unwrap(), 2);
        assert!(c.rh_equality_holds().unwrap());
        assert_eq!(c.ramification_profile(2).unwrap(), Partition::ones(2));
        assert_eq!(c.cover_matrix().entries, vec![vec![1], vec![1]]);
        let m = c.induced_metric(&MetricAssignment { lengths: vec![q(3)] }).unwrap();
        assert_eq!(m.lengths, vec![q(3), q(3)]);
        assert!(matches!(c.contract_target_edge(2), Err(Error::FiberCycle(2))));
        let back: AdmissibleCoverObject = serde_json::from_str(&ac.to_json()).unwrap();
        assert_eq!(back, ac);
    }

    #[test]
    fn harmonicity_violation() {
        let ac = two_parallel_edges();
        let mut c = ac.cover.clone();
        c.degrees[2] = 2;
        c.degrees[3] = 2;
        let r = validate_harmonic(&c);
        assert!(!r.valid);
        assert!(r.violation.unwrap().contains("harmonic"));
        let mut c = ac.cover.clone();
        c.flag_map[6] = 5;
        assert!(!validate_harmonic(&c).valid);
    }

    #[test]
    fn contraction_of_a_tree_fiber() {
        // degree 2: source vertex A (d=2) over W1 with legs (2),(2), edge weight 2
        // over the target edge, vertex B (d=2) with legs (2),(2)
        let target = MarkedGraph::from_parts(2, &[(0, 1)], &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        let source = MarkedGraph::from_parts(2, &[(0, 1)], &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        let flag_map: Vec<usize> = (0..8).collect();
        let degrees = vec![2; 8];
        let c = GraphCover::new(source, target, flag_map, degrees).unwrap();
        assert!(!c.is_admissible().unwrap());
        assert_eq!(c.rh_number(0).unwrap(), -1);
        let k = c.contract_target_edge(2).unwrap();
        assert_eq!(k.source.graph.vertices().len(), 1);
        assert_eq!(k.degree().unwrap(), 2);
        assert_eq!(k.rh_number(k.source.graph.vertices()[0]).unwrap(), -2);
    }

    #[test]
    fn isomorphism_under_relabeling() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let c = two_parallel_edges().cover;
        for _ in 0..100 {
            let mut ps: Vec<usize> = (0..c.source.graph.num_flags()).collect();
            let mut pt: Vec<usize> = (0..c.target.graph.num_flags()).collect();
            ps.shuffle(&mut rng);
            pt.shuffle(&mut rng);
            let d = c.permuted(&ps, &pt);
            assert!(validate_harmonic(&d).valid);
            assert!(covers_isomorphic(&c, &d).unwrap());
        }
        // automorphisms: swapping the parallel edges
        assert_eq!(c.canonical(LegMode::Labelled).group_order, 2u32.into());
    }
}
