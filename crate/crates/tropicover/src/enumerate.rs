//! Enumeration of admissible covers over stable target graphs.
//!
//! Target vertices are processed in breadth-first order. At each vertex the
//! fiber is chosen as a multiset of local vertex types with vanishing
//! ramification number, then glued to the open flags left by earlier vertices
//! through weight-preserving bijections. Partial covers are deduplicated with
//! the target individualized; finished covers by a full isomorphism key.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, OnceLock};

use itertools::Itertools;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::Structure;
use crate::cover::{leg_block_offsets, partitions_of, AcParams, AdmissibleCoverObject, CoverKey, GraphCover, LegMode, Partition};
use crate::error::{Error, Result};
use crate::graph::{enumerate_stable_graphs, DiscreteGraph, Label, MarkedGraph};
use crate::linalg::IntMatrix;
use crate::rational::Q;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Shared node budget for a search.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn charge(&self, n: u64) -> Result<()> {
        let before = self.used.fetch_add(n, Ordering::Relaxed);
        if before.saturating_add(n) > self.limit {
            return Err(Error::Budget(self.limit));
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed).min(self.limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// Which target strata to enumerate over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stratum {
    /// Trivalent targets only.
    Top,
    /// Every stable target.
    All,
}

/// Whether source legs carry labels during enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Labelling {
    /// Labels follow the block rule; covers differing by labels are distinct.
    Labelled,
    /// Source legs are distinguished only through the cover map and weights.
    Colored,
}

/// Local vertex type: degree and one partition per target flag.
type VertexType = (u32, Vec<Partition>);

/// All types of degree at most `d` over a `k`-valent vertex with `RH = 0`.
fn vertex_types(d: u32, k: usize) -> &'static [VertexType] {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), &'static [VertexType]>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("type cache");
    guard.entry((d, k)).or_insert_with(|| {
        let mut out = Vec::new();
        for dd in 1..=d {
            let parts = partitions_of(dd);
            let need = 2 + dd as i64 * (k as i64 - 2);
            for combo in (0..k).map(|_| parts.iter()).multi_cartesian_product() {
                let total: i64 = combo.iter().map(|p| p.len() as i64).sum();
                if total == need {
                    out.push((dd, combo.into_iter().cloned().collect()));
                }
            }
        }
        Box::leak(out.into_boxed_slice())
    })
}

fn counts(p: &[u32], d: u32) -> Vec<u32> {
    let mut c = vec![0; d as usize + 1];
    for &x in p {
        c[x as usize] += 1;
    }
    c
}

/// Fibers over a vertex: multisets of type indices.
///
/// `constraint[j]` fixes the total profile over flag `j` (as weight counts);
/// `loops` lists flag pairs whose totals must agree.
fn fibers(d: u32, k: usize, constraint: &[Option<Vec<u32>>], loops: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let types = vertex_types(d, k);
    let tcounts: Vec<Vec<Vec<u32>>> = types.iter().map(|(_, ps)| ps.iter().map(|p| counts(p.parts(), d)).collect()).collect();
    let mut out = Vec::new();
    let mut rem: Vec<Option<Vec<u32>>> = constraint.to_vec();
    let mut cur = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        start: usize,
        rem_d: u32,
        rem: &mut Vec<Option<Vec<u32>>>,
        cur: &mut Vec<usize>,
        types: &[VertexType],
        tcounts: &[Vec<Vec<u32>>],
        loops: &[(usize, usize)],
        out: &mut Vec<Vec<usize>>,
    ) {
        if rem_d == 0 {
            let ok = loops.iter().all(|&(a, b)| {
                let mut ca = vec![0u32; 64];
                let mut cb = vec![0u32; 64];
                for &t in cur.iter() {
                    for &x in types[t].1[a].parts() {
                        ca[x as usize] += 1;
                    }
                    for &x in types[t].1[b].parts() {
                        cb[x as usize] += 1;
                    }
                }
                ca == cb
            });
            if ok {
                out.push(cur.clone());
            }
            return;
        }
        for t in start..types.len() {
            let (dd, _) = &types[t];
            if *dd > rem_d {
                continue;
            }
            let fits = rem.iter().enumerate().all(|(j, r)| match r {
                None => true,
                Some(r) => tcounts[t][j].iter().zip(r).all(|(a, b)| a <= b),
            });
            if !fits {
                continue;
            }
            for (j, r) in rem.iter_mut().enumerate() {
                if let Some(r) = r {
                    for (a, b) in r.iter_mut().zip(&tcounts[t][j]) {
                        *a -= b;
                    }
                }
            }
            cur.push(t);
            rec(t, rem_d - dd, rem, cur, types, tcounts, loops, out);
            cur.pop();
            for (j, r) in rem.iter_mut().enumerate() {
                if let Some(r) = r {
                    for (a, b) in r.iter_mut().zip(&tcounts[t][j]) {
                        *a += b;
                    }
                }
            }
        }
    }
    rec(0, d, &mut rem, &mut cur, types, &tcounts, loops, &mut out);
    out
}

const KIND_VERTEX: u8 = 0;
const KIND_HALF: u8 = 1;
const KIND_LEG: u8 = 2;

/// A partial cover: source flags created so far, over an individualized target.
#[derive(Clone, Debug)]
struct State {
    root: Vec<usize>,
    inv: Vec<usize>,
    tmap: Vec<usize>,
    deg: Vec<u32>,
    label: Vec<u32>,
    kind: Vec<u8>,
}

impl State {
    fn empty() -> Self {
        State { root: vec![], inv: vec![], tmap: vec![], deg: vec![], label: vec![], kind: vec![] }
    }

    fn push(&mut self, root: Option<usize>, t: usize, deg: u32, kind: u8) -> usize {
        let f = self.root.len();
        self.root.push(root.unwrap_or(f));
        self.inv.push(f);
        self.tmap.push(t);
        self.deg.push(deg);
        self.label.push(0);
        self.kind.push(kind);
        f
    }

    fn code(&self, f: usize) -> u64 {
        let open = (self.kind[f] == KIND_HALF && self.inv[f] == f) as u64;
        ((self.kind[f] as u64) << 62) | (open << 61) | ((self.deg[f] as u64) << 48) | ((self.tmap[f] as u64) << 24) | self.label[f] as u64
    }

    /// Cheap isomorphism invariant: a few rounds of colour refinement with
    /// commutative aggregation, so nothing is sorted.
    fn invariant(&self) -> u64 {
        let n = self.root.len();
        let mut colors: Vec<u64> = (0..n).map(|f| self.code(f)).collect();
        let mut agg = vec![0u64; n];
        for _ in 0..6 {
            agg.iter_mut().for_each(|a| *a = 0);
            for f in 0..n {
                if self.root[f] != f {
                    agg[self.root[f]] = agg[self.root[f]].wrapping_add(mix(colors[f]));
                }
            }
            colors = (0..n).map(|f| mix(mix(mix(colors[f]) ^ colors[self.root[f]]) ^ colors[self.inv[f]]) ^ agg[f]).collect();
        }
        colors.into_iter().fold(0u64, |h, c| h.wrapping_add(mix(c)))
    }

    fn key(&self) -> Vec<u64> {
        let codes = (0..self.root.len()).map(|f| self.code(f)).collect();
        let mut s = Structure::new(codes);
        s.push_map(self.root.clone());
        s.push_map(self.inv.clone());
        s.canonical().key
    }

    /// Flags over target flag `t` that are still unglued.
    fn open_over(&self, t: usize) -> Vec<usize> {
        (0..self.root.len()).filter(|&f| self.tmap[f] == t && self.kind[f] == KIND_HALF && self.inv[f] == f).collect()
    }
}

/// All weight-preserving bijections between `a` and `b`, as lists of pairs.
fn weight_bijections<A: Copy, B: Copy>(a: &[(A, u32)], b: &[(B, u32)]) -> Vec<Vec<(A, B)>> {
    let mut classes: BTreeMap<u32, (Vec<A>, Vec<B>)> = BTreeMap::new();
    for &(x, w) in a {
        classes.entry(w).or_insert_with(|| (vec![], vec![])).0.push(x);
    }
    for &(y, w) in b {
        classes.entry(w).or_insert_with(|| (vec![], vec![])).1.push(y);
    }
    let mut out: Vec<Vec<(A, B)>> = vec![vec![]];
    for (_, (xs, ys)) in classes {
        if xs.len() != ys.len() {
            return vec![];
        }
        let mut next = Vec::new();
        for perm in ys.iter().copied().permutations(ys.len()) {
            for partial in &out {
                let mut p = partial.clone();
                p.extend(xs.iter().copied().zip(perm.iter().copied()));
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Keeps the first of each isomorphism class, computing canonical keys only
/// for items whose invariant is shared with another item.
fn dedup_by<T>(items: Vec<T>, invariant: impl Fn(&T) -> u64, key: impl Fn(&T) -> Vec<u64>) -> Vec<T> {
    let invs: Vec<u64> = items.iter().map(&invariant).collect();
    let mut count: HashMap<u64, usize> = HashMap::new();
    for &h in &invs {
        *count.entry(h).or_default() += 1;
    }
    let mut seen = HashSet::new();
    items.into_iter().zip(invs).filter(|(x, h)| count[h] == 1 || seen.insert(key(x))).map(|(x, _)| x).collect()
}

fn dedup(states: Vec<State>) -> Vec<State> {
    dedup_by(states, State::invariant, State::key)
}

/// Breadth-first vertex order starting at a vertex with the most legs.
fn vertex_order(t: &MarkedGraph) -> Vec<usize> {
    let g = &t.graph;
    let verts = g.vertices();
    let start = *verts.iter().max_by_key(|&&v| (t.leg_valency(v), std::cmp::Reverse(v))).expect("nonempty target");
    let adj = g.adjacency();
    let mut order = vec![start];
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(_, w) in &adj[v] {
            if seen.insert(w) {
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order
}

/// Admissible covers over a fixed target whose legs are labelled `1..m`.
///
/// In [`Labelling::Colored`] mode the returned covers carry some valid
/// labelling and are distinct up to isomorphisms ignoring source labels.
pub fn covers_over_target(target: &MarkedGraph, params: &AcParams, mode: Labelling, budget: &Budget) -> Result<Vec<GraphCover>> {
    let m = params.m() as Label;
    if target.labels() != (1..=m).collect::<Vec<_>>() {
        return Err(Error::Parameters(format!("target legs must be labelled 1..{m}")));
    }
    if !target.is_stable() {
        return Err(Error::Unstable("target graph".into()));
    }
    let d = params.d;
    let tg = &target.graph;
    let tlabel = target.label_of();
    let order = vertex_order(target);
    let mut done = vec![false; tg.num_flags()];
    let offsets = leg_block_offsets(&params.mu);
    let mut states = vec![State::empty()];
    for &w in &order {
        let flags = tg.flags_at(w);
        let k = flags.len();
        let loops: Vec<(usize, usize)> = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .filter(|&(a, b)| tg.involution(flags[a]) == flags[b])
            .collect();
        let mut next = Vec::new();
        let mut fiber_memo: HashMap<Vec<Option<Vec<u32>>>, Vec<Vec<usize>>> = HashMap::new();
        for s in &states {
            let constraint: Vec<Option<Vec<u32>>> = flags
                .iter()
                .map(|&h| {
                    if let Some(l) = tlabel[h] {
                        Some(counts(params.mu[l as usize - 1].parts(), d))
                    } else if tg.is_half_edge(h) && done[tg.root(tg.involution(h))] {
                        let open = s.open_over(tg.involution(h));
                        let ws: Vec<u32> = open.iter().map(|&f| s.deg[f]).collect();
                        Some(counts(&ws, d))
                    } else {
                        None
                    }
                })
                .collect();
            let fibs = fiber_memo.entry(constraint.clone()).or_insert_with(|| fibers(d, k, &constraint, &loops));
            let types = vertex_types(d, k);
            for fib in fibs.iter() {
                budget.charge(1)?;
                let mut st = s.clone();
                let mut new_over: Vec<Vec<usize>> = vec![Vec::new(); k];
                let mut made: Vec<(usize, usize)> = Vec::with_capacity(fib.len());
                for &t in fib {
                    let (dd, ps) = &types[t];
                    let v = st.push(None, w, *dd, KIND_VERTEX);
                    made.push((v, t));
                    for (j, p) in ps.iter().enumerate() {
                        let kind = if tg.is_leg(flags[j]) { KIND_LEG } else { KIND_HALF };
                        for &part in p.parts() {
                            new_over[j].push(st.push(Some(v), flags[j], part, kind));
                        }
                    }
                }
                // glue step by step, deduplicating in between; interchangeable
                // new flags and new vertices are matched in increasing order
                let mut first = true;
                let mut layer = vec![st];
                for j in 0..k {
                    let h = flags[j];
                    let partner = tg.involution(h);
                    if tg.is_half_edge(h) && done[tg.root(partner)] {
                        let ordered = symmetric_pairs(&layer[0], &new_over[j], if first { &made } else { &[] });
                        layer = glue(layer, &new_over[j], partner, &ordered, budget)?;
                        first = false;
                    }
                }
                for &(a, b) in &loops {
                    layer = glue_within(layer, &new_over[a], &new_over[b], budget)?;
                }
                if mode == Labelling::Labelled {
                    for j in 0..k {
                        if let Some(l) = tlabel[flags[j]] {
                            let kk = l as usize - 1;
                            let labels: Vec<u32> = (0..params.mu[kk].len()).map(|i| offsets[kk] + i as u32 + 1).collect();
                            let mu = params.mu[kk].parts().to_vec();
                            layer = assign_labels(layer, &new_over[j], &labels, &mu, budget)?;
                        }
                    }
                }
                next.extend(layer);
            }
        }
        states = dedup(next);
        done[w] = true;
    }
    // state invariants fix target flags, so they only separate covers of a rigid target
    let rigid = target.canonical_form(None).aut_order.is_one();
    let mut finished = Vec::new();
    for s in states {
        if let Some(cover) = finish(&s, target, params, mode)? {
            finished.push((if rigid { s.invariant() } else { 0 }, cover));
        }
    }
    let lm = if mode == Labelling::Labelled { LegMode::Labelled } else { LegMode::SourceColored };
    Ok(dedup_by(finished, |(h, _)| *h, |(_, c)| c.canonical(lm).key).into_iter().map(|(_, c)| c).collect())
}

fn with_degrees(st: &State, fs: &[usize]) -> Vec<(usize, u32)> {
    fs.iter().map(|&f| (f, st.deg[f])).collect()
}

/// Pairs `(x, y)` of new flags whose partners must satisfy `x < y`: equal-weight
/// flags of one vertex, and the first flags of vertices of equal type.
fn symmetric_pairs(st: &State, new: &[usize], made: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = new
        .windows(2)
        .filter(|p| st.root[p[0]] == st.root[p[1]] && st.deg[p[0]] == st.deg[p[1]])
        .map(|p| (p[0], p[1]))
        .collect();
    let first_of = |v: usize| new.iter().copied().find(|&f| st.root[f] == v).expect("vertex has a flag over each target flag");
    let mut last_of_type: HashMap<usize, usize> = HashMap::new();
    for &(v, t) in made {
        if let Some(u) = last_of_type.insert(t, v) {
            out.push((first_of(u), first_of(v)));
        }
    }
    out
}

fn glue(layer: Vec<State>, new: &[usize], partner: usize, ordered: &[(usize, usize)], budget: &Budget) -> Result<Vec<State>> {
    let mut out = Vec::new();
    for st in layer {
        let open = st.open_over(partner);
        for bij in weight_bijections(&with_degrees(&st, &open), &with_degrees(&st, new)) {
            let matched = |y: usize| bij.iter().find(|&&(_, b)| b == y).map(|&(a, _)| a);
            if ordered.iter().any(|&(x, y)| matched(x) > matched(y)) {
                continue;
            }
            budget.charge(1)?;
            let mut s = st.clone();
            for (x, y) in bij {
                s.inv[x] = y;
                s.inv[y] = x;
            }
            out.push(s);
        }
    }
    Ok(dedup(out))
}

fn glue_within(layer: Vec<State>, a: &[usize], b: &[usize], budget: &Budget) -> Result<Vec<State>> {
    let mut out = Vec::new();
    for st in layer {
        for bij in weight_bijections(&with_degrees(&st, a), &with_degrees(&st, b)) {
            budget.charge(1)?;
            let mut s = st.clone();
            for (x, y) in bij {
                s.inv[x] = y;
                s.inv[y] = x;
            }
            out.push(s);
        }
    }
    Ok(dedup(out))
}

/// Label `labels[i]` goes to a leg of weight `mu[i]`.
fn assign_labels(layer: Vec<State>, legs: &[usize], labels: &[u32], mu: &[u32], budget: &Budget) -> Result<Vec<State>> {
    let slots: Vec<(u32, u32)> = labels.iter().copied().zip(mu.iter().copied()).collect();
    let mut out = Vec::new();
    for st in layer {
        for bij in weight_bijections(&with_degrees(&st, legs), &slots) {
            budget.charge(1)?;
            let mut s = st.clone();
            for (x, l) in bij {
                s.label[x] = l;
            }
            out.push(s);
        }
    }
    Ok(dedup(out))
}

/// Turns a completed state into a cover; `None` if the source is disconnected.
fn finish(s: &State, target: &MarkedGraph, params: &AcParams, mode: Labelling) -> Result<Option<GraphCover>> {
    let graph = DiscreteGraph::new(s.root.clone(), s.inv.clone())?;
    if !graph.is_connected() {
        return Ok(None);
    }
    let mut marking = BTreeMap::new();
    match mode {
        Labelling::Labelled => {
            for f in 0..s.root.len() {
                if s.kind[f] == KIND_LEG {
                    marking.insert(s.label[f], f);
                }
            }
        }
        Labelling::Colored => {
            let offsets = leg_block_offsets(&params.mu);
            let tlabel = target.label_of();
            let mut over: BTreeMap<Label, Vec<usize>> = BTreeMap::new();
            for f in 0..s.root.len() {
                if s.kind[f] == KIND_LEG {
                    over.entry(tlabel[s.tmap[f]].expect("leg over leg")).or_default().push(f);
                }
            }
            for (l, mut fs) in over {
                fs.sort_by_key(|&f| (std::cmp::Reverse(s.deg[f]), f));
                for (i, f) in fs.into_iter().enumerate() {
                    marking.insert(offsets[l as usize - 1] + i as Label + 1, f);
                }
            }
        }
    }
    let source = MarkedGraph::new(graph, marking)?;
    let cover = GraphCover { source, target: target.clone(), flag_map: s.tmap.clone(), degrees: s.deg.clone() };
    debug_assert!(crate::cover::validate_harmonic(&cover).valid);
    Ok(Some(cover))
}

/// An enumerated cover with its invariants.
#[derive(Clone, Debug, Serialize)]
pub struct CoverClass {
    pub cover: AdmissibleCoverObject,
    #[serde(skip)]
    pub key: CoverKey,
    #[serde(rename = "autOrder")]
    pub aut_order: String,
    /// Standard weight for top-dimensional covers.
    #[serde(with = "crate::rational::serde_q_opt")]
    pub weight: Option<Q>,
    pub matrix: IntMatrix,
}

/// Stable targets of genus `h` with legs `1..m` for the stratum.
pub fn targets(h: u32, m: usize, stratum: Stratum) -> Result<Vec<MarkedGraph>> {
    let labels: Vec<Label> = (1..=m as Label).collect();
    let top = 3 * h as usize + m - 3;
    enumerate_stable_graphs(h as usize, &labels, if stratum == Stratum::Top { Some(top) } else { None })
}

/// All admissible covers with the given discrete data, up to isomorphism.
pub fn enumerate_covers(params: &AcParams, stratum: Stratum, budget: &Budget) -> Result<Vec<CoverClass>> {
    let tgs = targets(params.h, params.m(), stratum)?;
    let top_edges = 3 * params.h as usize + params.m() - 3;
    let per: Vec<Result<Vec<CoverClass>>> = tgs
        .par_iter()
        .map(|t| {
            let covers = covers_over_target(t, params, Labelling::Labelled, budget)?;
            covers
                .into_iter()
                .map(|c| {
                    let canon = c.canonical(LegMode::Labelled);
                    let weight = if t.graph.edges().len() == top_edges { Some(crate::cycles::standard_weight(&c)?) } else { None };
                    let matrix = c.cover_matrix();
                    Ok(CoverClass {
                        cover: AdmissibleCoverObject::new(c, params.clone())?,
                        key: canon.key,
                        aut_order: canon.group_order.to_string(),
                        weight,
                        matrix,
                    })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    out.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn vertex_type_counts() {
        // degree one over a trivalent vertex: only (1),(1),(1)
        assert_eq!(vertex_types(1, 3).len(), 1);
        // degree two: one full ramification pair plus one unramified flag
        let t2: Vec<_> = vertex_types(2, 3).iter().filter(|t| t.0 == 2).collect();
        assert_eq!(t2.len(), 3);
    }

    #[test]
    fn four_point_degree_two() {
        let params = AcParams::new(2, 0, vec![p(&[2]), p(&[2]), p(&[1, 1]), p(&[1, 1])]).unwrap();
        let classes = enumerate_covers(&params, Stratum::Top, &Budget::default()).unwrap();
        // split 12|34 has two labelled classes, 13|24 and 14|23 one each
        assert_eq!(classes.len(), 4);
        for c in &classes {
            assert!(c.cover.cover.is_admissible().unwrap());
        }
    }

    #[test]
    fn fully_ramified_four_point() {
        let params = AcParams::new(2, 0, vec![p(&[2]); 4]).unwrap();
        let classes = enumerate_covers(&params, Stratum::Top, &Budget::default()).unwrap();
        assert_eq!(classes.len(), 3);
        assert!(classes.iter().all(|c| c.cover.source_genus() == 1));
    }

    #[test]
    fn budget_exhaustion() {
        let params = AcParams::new(2, 0, vec![p(&[2]); 4]).unwrap();
        assert!(matches!(enumerate_covers(&params, Stratum::Top, &Budget::new(2)), Err(Error::Budget(2))));
    }

    #[test]
    fn all_strata_include_the_rose() {
        let params = AcParams::new(2, 0, vec![p(&[2]), p(&[2]), p(&[1, 1]), p(&[1, 1])]).unwrap();
        let classes = enumerate_covers(&params, Stratum::All, &Budget::default()).unwrap();
        let codim: Vec<_> = classes.iter().filter(|c| c.weight.is_none()).collect();
        assert_eq!(codim.len(), 1);
        assert_eq!(classes.len(), 5);
    }
}
