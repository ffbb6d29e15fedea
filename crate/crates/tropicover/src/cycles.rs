//! Standard weights of admissible covers and balancing checks.
//!
//! The standard weight of a top-dimensional cover is
//! `prod_e d(e) * prod_V H(V) CF(V) / prod_t lcm(t)`, the first product over
//! source edges, the last over target edges. Balancing is checked on the
//! integral generator of each ray in the lattice of induced metrics: target
//! length `lcm(t)` on the new target edge `t`, source length `lcm(t) / d(e)` on
//! every source edge `e` above it.

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cover::{AcParams, GraphCover, Partition};
use crate::enumerate::{covers_over_target, Budget, Labelling};
use crate::error::{Error, Result};
use crate::fans::{four_point_zero_test, quotient_zero_test, tree_distances, DistanceVector};
use crate::graph::{DiscreteGraph, Label, MarkedGraph};
use crate::linalg::in_span;
use crate::hurwitz::{combinatorial_factor, hurwitz_number, local_hurwitz};
use crate::rational::Q;

/// Standard weight of a cover over a trivalent target.
pub fn standard_weight(p: &GraphCover) -> Result<Q> {
    let s = &p.source.graph;
    let mut w = Q::one();
    for (x, _) in s.edges() {
        w *= Q::from_integer(p.degrees[x].into());
    }
    for v in s.vertices() {
        w *= local_hurwitz(p, v)? * Q::from_integer(combinatorial_factor(p, v));
    }
    for (t, _) in p.target.graph.edges() {
        w /= Q::from_integer(p.edge_lcm(t).into());
    }
    Ok(w)
}

/// Four ramification profiles of degree `d` over a 4-pointed line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalProblem {
    pub d: u32,
    pub profiles: Vec<Partition>,
}

impl LocalProblem {
    pub fn new(d: u32, profiles: Vec<Partition>) -> Result<Self> {
        if profiles.len() != 4 {
            return Err(Error::Parameters(format!("expected 4 profiles, got {}", profiles.len())));
        }
        if let Some(p) = profiles.iter().find(|p| p.size() != d) {
            return Err(Error::Parameters(format!("{p} is not a partition of {d}")));
        }
        let total: usize = profiles.iter().map(Partition::len).sum();
        if total as u32 != 2 * (d + 1) {
            return Err(Error::Ramification(format!("profile lengths sum to {total}, expected {}", 2 * (d + 1))));
        }
        Ok(LocalProblem { d, profiles })
    }

    pub fn params(&self) -> AcParams {
        AcParams::new(self.d, 0, self.profiles.clone()).expect("validated local problem")
    }

    /// `H(alpha, beta, gamma, delta) * prod_k prod_w (mult of w in profile k)!`.
    pub fn expected_coefficient(&self) -> Result<Q> {
        let h = hurwitz_number(self.d, &self.profiles)?;
        let cf = self
            .profiles
            .iter()
            .flat_map(Partition::multiplicities)
            .fold(Q::one(), |acc, (_, c)| acc * Q::from_integer(crate::rational::factorial(c as u64)));
        Ok(h * cf)
    }
}

/// The one-edge tree on legs `1..4` with `1` and `j` on the same side.
pub fn four_leg_tree(j: Label) -> MarkedGraph {
    let rest: Vec<Label> = (2..=4).filter(|&x| x != j).collect();
    MarkedGraph::from_parts(2, &[(0, 1)], &[(0, 1), (0, j), (1, rest[0]), (1, rest[1])]).expect("valid tree")
}

/// Ray generator of a cover over a target tree with one edge.
///
/// Returns `(source part, target part)`; the target part is `lcm * v_split`.
pub fn direction_vector(p: &GraphCover) -> Result<(DistanceVector, DistanceVector)> {
    let te = p.target.graph.edges();
    if te.len() != 1 || p.target.genus()? != 0 || p.source.genus()? != 0 {
        return Err(Error::Precondition("direction vectors need a one-edge target tree and a tree source".into()));
    }
    let lcm = Q::from_integer(p.edge_lcm(te[0].0).into());
    ray_parts(p, &lcm)
}

/// Source and target parts for target length `scale` on the single edge.
fn ray_parts(p: &GraphCover, scale: &Q) -> Result<(DistanceVector, DistanceVector)> {
    let slengths: Vec<Q> = p
        .source
        .graph
        .edges()
        .into_iter()
        .map(|(x, _)| Q::from_integer(p.edge_lcm(p.flag_map[x]).into()) / Q::from_integer(p.degrees[x].into()))
        .collect();
    let src = tree_distances(&p.source, &slengths, &p.source.labels())?;
    let tgt = tree_distances(&p.target, &[scale.clone()], &p.target.labels())?;
    Ok((src, tgt))
}

/// One labelled local cover.
#[derive(Clone, Debug, Serialize)]
pub struct LocalClass {
    /// The leg sharing a side with leg 1.
    pub partner: Label,
    pub cover: GraphCover,
    #[serde(with = "crate::rational::serde_q")]
    pub weight: Q,
    pub lcm: u64,
}

/// All labelled local covers, over each of the three one-edge trees.
pub fn local_covers(p: &LocalProblem, budget: &Budget) -> Result<Vec<LocalClass>> {
    let params = p.params();
    let mut out = Vec::new();
    for j in 2..=4 {
        let t = four_leg_tree(j);
        for c in covers_over_target(&t, &params, Labelling::Labelled, budget)? {
            let weight = standard_weight(&c)?;
            let lcm = c.edge_lcm(c.target.graph.edges()[0].0);
            out.push(LocalClass { partner: j, cover: c, weight, lcm });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitSummary {
    pub split: String,
    pub classes: usize,
    /// Sum of weights.
    #[serde(rename = "weightSum", with = "crate::rational::serde_q")]
    pub weight_sum: Q,
    /// Sum of `weight * lcm`, the coefficient of the split vector.
    #[serde(with = "crate::rational::serde_q")]
    pub coefficient: Q,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualCheck {
    #[serde(rename = "sourceResidualZero")]
    pub source_zero: bool,
    #[serde(rename = "targetResidualZero")]
    pub target_zero: bool,
    #[serde(rename = "sourceResidual")]
    pub source_residual: DistanceVector,
    #[serde(rename = "targetResidual")]
    pub target_residual: DistanceVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalBalanceReport {
    pub problem: LocalProblem,
    #[serde(rename = "classCount")]
    pub class_count: usize,
    pub splits: Vec<SplitSummary>,
    #[serde(rename = "expectedCoefficient", with = "crate::rational::serde_q")]
    pub expected_coefficient: Q,
    /// Ray generators in the lattice of induced metrics; decides `balanced`.
    pub induced: ResidualCheck,
    /// Generators `(v_split, F(1))` with unit target length, for comparison.
    #[serde(rename = "unitTarget")]
    pub unit_target: ResidualCheck,
    /// Agreement of the exact solve with the four-point criterion.
    #[serde(rename = "fourPointAgrees")]
    pub four_point_agrees: bool,
    pub balanced: bool,
}

fn residuals(classes: &[LocalClass], p: &LocalProblem, unit: bool) -> Result<(ResidualCheck, bool)> {
    let n = 2 * (p.d as usize + 1);
    let mut src = DistanceVector::zero(n);
    let mut tgt = DistanceVector::zero(4);
    for c in classes {
        let scale = if unit { Q::one() } else { Q::from_integer(c.lcm.into()) };
        let (s, t) = ray_parts(&c.cover, &scale)?;
        src.add_scaled(&s, &c.weight);
        tgt.add_scaled(&t, &c.weight);
    }
    let (sz, tz) = (quotient_zero_test(&src), quotient_zero_test(&tgt));
    let agree = sz == four_point_zero_test(&src) && tz == four_point_zero_test(&tgt);
    Ok((ResidualCheck { source_zero: sz, target_zero: tz, source_residual: src, target_residual: tgt }, agree))
}

/// Checks local balancing of the standard weights for one local problem.
pub fn verify_local_balancing(p: &LocalProblem, budget: &Budget) -> Result<LocalBalanceReport> {
    let classes = local_covers(p, budget)?;
    let mut splits = Vec::new();
    for j in 2..=4 {
        let rest: Vec<String> = (2..=4).filter(|&x| x != j).map(|x| x.to_string()).collect();
        let these: Vec<&LocalClass> = classes.iter().filter(|c| c.partner == j).collect();
        splits.push(SplitSummary {
            split: format!("1{j}|{}", rest.join("")),
            classes: these.len(),
            weight_sum: these.iter().map(|c| c.weight.clone()).fold(Q::zero(), |a, b| a + b),
            coefficient: these.iter().map(|c| &c.weight * Q::from_integer(c.lcm.into())).fold(Q::zero(), |a, b| a + b),
        });
    }
    let (induced, a1) = residuals(&classes, p, false)?;
    let (unit_target, a2) = residuals(&classes, p, true)?;
    let expected = p.expected_coefficient()?;
    let balanced = induced.source_zero && induced.target_zero;
    Ok(LocalBalanceReport {
        problem: p.clone(),
        class_count: classes.len(),
        splits,
        expected_coefficient: expected,
        induced,
        unit_target,
        four_point_agrees: a1 && a2,
        balanced,
    })
}

/// Every ordered quadruple of partitions of `d` forming a local problem.
pub fn all_local_problems(d: u32) -> Vec<LocalProblem> {
    let parts = crate::cover::partitions_of(d);
    let mut out = Vec::new();
    for a in &parts {
        for b in &parts {
            for c in &parts {
                for e in &parts {
                    if let Ok(p) = LocalProblem::new(d, vec![a.clone(), b.clone(), c.clone(), e.clone()]) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Target vertex of valency 4 when every other vertex is trivalent.
pub fn four_valent_vertex(t: &MarkedGraph) -> Option<usize> {
    let g = &t.graph;
    let mut found = None;
    for v in g.vertices() {
        match g.flags_at(v).len() {
            3 => {}
            4 if found.is_none() => found = Some(v),
            _ => return None,
        }
    }
    found
}

/// Legs `n + 1, n + 2, ...` for the edges cut out of a spanning tree of `s`.
fn spanning_cuts(s: &MarkedGraph) -> Vec<(usize, Label, Label)> {
    let g = &s.graph;
    let verts = g.vertices();
    let mut seen = vec![false; g.num_flags()];
    let mut tree = vec![false; g.num_flags()];
    let mut stack = vec![verts[0]];
    seen[verts[0]] = true;
    while let Some(v) = stack.pop() {
        for h in g.flags_at(v) {
            if g.is_half_edge(h) {
                let w = g.root(g.involution(h));
                if !seen[w] {
                    seen[w] = true;
                    tree[h] = true;
                    tree[g.involution(h)] = true;
                    stack.push(w);
                }
            }
        }
    }
    let n0 = s.labels().last().copied().unwrap_or(0);
    g.edges()
        .into_iter()
        .filter(|&(x, _)| !tree[x])
        .enumerate()
        .map(|(k, (x, _))| (x, n0 + 2 * k as Label + 1, n0 + 2 * k as Label + 2))
        .collect()
}

fn mat_vec(m: &crate::linalg::IntMatrix, v: &[Q]) -> Vec<Q> {
    m.entries.iter().map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (&a, x)| acc + Q::from_integer(a.into()) * x)).collect()
}

/// Source coordinates: distances on the cut spanning tree after forgetting the
/// legs outside `keep`. Loop lengths are carried through the forgetful maps but
/// are not coordinates.
fn source_coordinates(s: &MarkedGraph, lengths: &[Q], cuts: &[(usize, Label, Label)], keep: &[Label]) -> Result<Vec<Q>> {
    let sedges = s.graph.edges();
    let cut_flags: Vec<usize> = cuts.iter().map(|c| c.0).collect();
    let mut tree = crate::fans::cut_edges(s, cuts)?;
    let mut vec: Vec<Q> = sedges.iter().zip(lengths).filter(|((x, _), _)| !cut_flags.contains(x)).map(|(_, l)| l.clone()).collect();
    for &f in &cut_flags {
        let k = sedges.iter().position(|&(x, _)| x == f).expect("cut edge");
        vec.push(lengths[k].clone());
    }
    let pairs: Vec<(Label, Label)> = cuts.iter().map(|c| (c.1, c.2)).collect();
    for a in s.labels().into_iter().filter(|l| !keep.contains(l)) {
        let (t2, m) = crate::fans::forget_leg_spanning(&tree, a, &pairs)?;
        vec = mat_vec(&m, &vec);
        tree = t2;
    }
    let e = tree.graph.edges().len();
    Ok(tree_distances(&tree, &vec[..e], &tree.labels())?.entries)
}

/// Replaces the 4-valent target vertex by the one-edge tree with leg `1`
/// and `partner` on one side, and every source vertex above it by its chosen
/// local cover.
fn resolve(c: &GraphCover, w: usize, partner: Label, locals: &[(usize, &GraphCover, Vec<usize>)]) -> Result<(GraphCover, usize)> {
    let (s, t) = (&c.source.graph, &c.target.graph);
    let wf = t.flags_at(w);
    let nt = t.num_flags();
    let mut troot = t.roots().to_vec();
    let mut tinv = t.involutions().to_vec();
    let (w2, e1, e2) = (nt, nt + 1, nt + 2);
    troot.extend([w2, w, w2]);
    tinv.extend([w2, e2, e1]);
    for (k, &f) in wf.iter().enumerate() {
        let l = k as Label + 1;
        if l != 1 && l != partner {
            troot[f] = w2;
        }
    }
    let target = MarkedGraph::new(DiscreteGraph::new(troot, tinv)?, c.target.marking().clone())?;
    let mut root = s.roots().to_vec();
    let mut inv = s.involutions().to_vec();
    let mut flag_map = c.flag_map.clone();
    let mut degrees = c.degrees.clone();
    for &(v, lc, ref legs) in locals {
        let (ls, lt) = (&lc.source.graph, &lc.target.graph);
        let side_one = lt.root(lc.target.leg(1)?);
        let lt_map = |y: usize| -> Result<usize> {
            if lt.is_vertex(y) {
                Ok(if y == side_one { w } else { w2 })
            } else if lt.is_half_edge(y) {
                Ok(if lt.root(y) == side_one { e1 } else { e2 })
            } else {
                let l = lc.target.label_of()[y].expect("labelled leg");
                Ok(wf[l as usize - 1])
            }
        };
        let labels = lc.source.label_of();
        let first = ls.vertices()[0];
        let mut map = vec![0; ls.num_flags()];
        for y in 0..ls.num_flags() {
            map[y] = if y == first {
                v
            } else if let Some(l) = labels[y] {
                legs[l as usize - 1]
            } else {
                root.push(0);
                inv.push(0);
                flag_map.push(0);
                degrees.push(0);
                root.len() - 1
            };
        }
        for y in 0..ls.num_flags() {
            let x = map[y];
            root[x] = map[ls.root(y)];
            if !ls.is_leg(y) {
                inv[x] = map[ls.involution(y)];
            }
            flag_map[x] = lt_map(lc.flag_map[y])?;
            if labels[y].is_some() && degrees[x] != lc.degrees[y] {
                return Err(Error::InvalidCover("local leg weights disagree with the cover".into()));
            }
            degrees[x] = lc.degrees[y];
        }
    }
    let source = MarkedGraph::new(DiscreteGraph::new(root, inv)?, c.source.marking().clone())?;
    Ok((GraphCover::new(source, target, flag_map, degrees)?, e1))
}

#[derive(Clone, Debug, Serialize)]
pub struct Codim1Split {
    pub split: String,
    pub resolutions: usize,
    #[serde(rename = "weightSum", with = "crate::rational::serde_q")]
    pub weight_sum: Q,
}

#[derive(Clone, Debug, Serialize)]
pub struct Codim1Report {
    pub kept: Vec<Label>,
    pub splits: Vec<Codim1Split>,
    pub resolutions: usize,
    /// Residuals vanish in the quotient spaces without using the codim-1 cone.
    #[serde(rename = "sourceResidualZero")]
    pub source_zero: bool,
    #[serde(rename = "targetResidualZero")]
    pub target_zero: bool,
    /// Residuals vanish modulo the span of the codim-1 cone, per side.
    #[serde(rename = "sourceBalanced")]
    pub source_balanced: bool,
    #[serde(rename = "targetBalanced")]
    pub target_balanced: bool,
    /// Joint residual vanishes modulo the span of the codim-1 cone.
    pub balanced: bool,
}

/// Checks balancing of the standard weights around a codim-1 cover over a tree.
///
/// Every source vertex above the 4-valent target vertex is resolved by each of
/// its labelled local covers. Source coordinates use a fixed spanning tree of
/// the source and forget every source leg outside `keep`.
pub fn verify_codim1_balancing(c: &GraphCover, keep: &[Label], budget: &Budget) -> Result<Codim1Report> {
    if c.target.genus()? != 0 {
        return Err(Error::Precondition("codim-1 balancing needs a target tree".into()));
    }
    let w = four_valent_vertex(&c.target).ok_or_else(|| Error::Precondition("target needs one 4-valent vertex, all others trivalent".into()))?;
    if let Some(l) = keep.iter().find(|l| c.source.leg(**l).is_err()) {
        return Err(Error::MissingLabel(*l));
    }
    let (s, t) = (&c.source.graph, &c.target.graph);
    let wf = t.flags_at(w);
    let cuts = spanning_cuts(&c.source);
    let above: Vec<usize> = s.vertices().into_iter().filter(|&v| c.flag_map[v] == w).collect();
    // local covers and the source flags playing their legs
    let mut local: Vec<(usize, Vec<LocalClass>, Vec<usize>)> = Vec::new();
    for &v in &above {
        let mut profiles = Vec::new();
        let mut legs = Vec::new();
        for &f in &wf {
            let mut xs: Vec<usize> = s.flags_at(v).into_iter().filter(|&x| c.flag_map[x] == f).collect();
            xs.sort_by_key(|&x| (std::cmp::Reverse(c.degrees[x]), x));
            profiles.push(Partition::new(xs.iter().map(|&x| c.degrees[x]).collect())?);
            legs.extend(xs);
        }
        let lp = LocalProblem::new(c.degrees[v], profiles)?;
        local.push((v, local_covers(&lp, budget)?, legs));
    }
    let n_src = source_coordinates(&c.source, &vec![Q::zero(); s.edges().len()], &cuts, keep)?.len();
    let m = c.target.num_legs();
    let n_tgt = m * (m - 1) / 2;
    let mut total = vec![Q::zero(); n_src + n_tgt];
    let mut splits = Vec::new();
    let mut resolutions = 0;
    for partner in 2..=4 {
        let choices: Vec<Vec<&LocalClass>> = local.iter().map(|(_, cl, _)| cl.iter().filter(|x| x.partner == partner).collect()).collect();
        let mut weight_sum = Q::zero();
        let mut count = 0;
        for pick in choices.iter().map(|v| v.iter().copied()).multi_cartesian_product() {
            budget.charge(1)?;
            let locals: Vec<(usize, &GraphCover, Vec<usize>)> = local.iter().zip(&pick).map(|((v, _, legs), lc)| (*v, &lc.cover, legs.clone())).collect();
            let (r, e1) = resolve(c, w, partner, &locals)?;
            let weight = standard_weight(&r)?;
            let lcm = Q::from_integer(r.edge_lcm(e1).into());
            let slen: Vec<Q> = r
                .source
                .graph
                .edges()
                .into_iter()
                .map(|(x, _)| if r.flag_map[x] == e1 || r.flag_map[x] == r.target.graph.involution(e1) { &lcm / Q::from_integer(r.degrees[x].into()) } else { Q::zero() })
                .collect();
            let tlen: Vec<Q> = r.target.graph.edges().into_iter().map(|(y, _)| if y == e1 { lcm.clone() } else { Q::zero() }).collect();
            let mut u = source_coordinates(&r.source, &slen, &cuts, keep)?;
            u.extend(tree_distances(&r.target, &tlen, &r.target.labels())?.entries);
            for (a, b) in total.iter_mut().zip(&u) {
                *a += &weight * b;
            }
            weight_sum += weight;
            count += 1;
        }
        let rest: Vec<String> = (2..=4).filter(|&x| x != partner).map(|x| x.to_string()).collect();
        splits.push(Codim1Split { split: format!("1{partner}|{}", rest.join("")), resolutions: count, weight_sum });
        resolutions += count;
    }
    // generators: doubling images on each side, and the codim-1 cone
    let n_legs_src = keep.len() + 2 * cuts.len();
    let pad = |v: Vec<Q>, at: usize| -> Vec<Q> {
        let mut out = vec![Q::zero(); n_src + n_tgt];
        for (k, x) in v.into_iter().enumerate() {
            out[at + k] = x;
        }
        out
    };
    let src_img: Vec<Vec<Q>> = crate::fans::image_columns(n_legs_src).into_iter().map(|v| pad(v, 0)).collect();
    let tgt_img: Vec<Vec<Q>> = crate::fans::image_columns(m).into_iter().map(|v| pad(v, n_src)).collect();
    let mut cone = Vec::new();
    for (y, _) in t.edges() {
        let slen: Vec<Q> = s
            .edges()
            .into_iter()
            .map(|(x, _)| if c.flag_map[x] == y || c.flag_map[x] == t.involution(y) { Q::one() / Q::from_integer(c.degrees[x].into()) } else { Q::zero() })
            .collect();
        let tlen: Vec<Q> = t.edges().into_iter().map(|(z, _)| if z == y { Q::one() } else { Q::zero() }).collect();
        let mut g = source_coordinates(&c.source, &slen, &cuts, keep)?;
        g.extend(tree_distances(&c.target, &tlen, &c.target.labels())?.entries);
        cone.push(g);
    }
    let restrict = |v: &[Q], lo: usize, hi: usize| -> Vec<Q> { (0..v.len()).map(|k| if k >= lo && k < hi { v[k].clone() } else { Q::zero() }).collect() };
    let src_part = restrict(&total, 0, n_src);
    let tgt_part = restrict(&total, n_src, n_src + n_tgt);
    let with = |base: &[Vec<Q>], extra: Vec<Vec<Q>>| -> Vec<Vec<Q>> { base.iter().cloned().chain(extra).collect() };
    let src_cone: Vec<Vec<Q>> = cone.iter().map(|g| restrict(g, 0, n_src)).collect();
    let tgt_cone: Vec<Vec<Q>> = cone.iter().map(|g| restrict(g, n_src, n_src + n_tgt)).collect();
    let all_img = with(&src_img, tgt_img.clone());
    Ok(Codim1Report {
        kept: keep.to_vec(),
        splits,
        resolutions,
        source_zero: in_span(&src_img, &src_part),
        target_zero: in_span(&tgt_img, &tgt_part),
        source_balanced: in_span(&with(&src_img, src_cone), &src_part),
        target_balanced: in_span(&with(&tgt_img, tgt_cone), &tgt_part),
        balanced: in_span(&with(&all_img, cone), &total),
    })
}
