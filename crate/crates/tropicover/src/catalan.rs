//! Catalan counts of covers contributing to the double-ramification
//! pushforward with ramification `(2, 1^{d-2})` over every target leg.
//!
//! For genus `g` and `r` marked weight-2 legs, `d = (g + r)/2 + 1` and
//! `m = 3g + r` target legs. A cover contributes when forgetting all source legs
//! outside `J` yields the fixed graph `O_{g,J}` and the composed edge-length
//! map `eta o F` is invertible.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::canon::Structure;
use crate::cover::{AcParams, GraphCover, LegMode, Partition};
use crate::cycles::standard_weight;
use crate::enumerate::{covers_over_target, Budget, Labelling};
use crate::error::{Error, Result};
use crate::fans::{forget_legs, ForgetfulMap};
use crate::graph::{enumerate_stable_graphs_colored, Label, MarkedGraph};
use crate::rational::{factorial, Q};

/// The pair `(g, r)` with `g + r` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CatalanParams {
    pub g: u32,
    pub r: u32,
}

impl CatalanParams {
    pub fn new(g: u32, r: u32) -> Result<Self> {
        if (g + r) % 2 != 0 {
            return Err(Error::Parity { g, r });
        }
        if g == 0 {
            return Err(Error::Parameters("genus must be positive".into()));
        }
        Ok(CatalanParams { g, r })
    }

    pub fn d(&self) -> u32 {
        (self.g + self.r) / 2 + 1
    }

    pub fn m(&self) -> usize {
        (3 * self.g + self.r) as usize
    }

    /// Number of source legs, `m (d - 1)`.
    pub fn n(&self) -> usize {
        self.m() * (self.d() as usize - 1)
    }

    pub fn mu(&self) -> Vec<Partition> {
        let d = self.d();
        let mut parts = vec![2];
        parts.extend(std::iter::repeat(1).take(d as usize - 2));
        vec![Partition::new(parts).expect("d >= 2"); self.m()]
    }

    pub fn ac_params(&self) -> AcParams {
        AcParams::new(self.d(), 0, self.mu()).expect("consistent data")
    }

    /// `J = {(i - 1)(d - 1) + 1 : 1 <= i <= r}`: the weight-2 legs over the first `r` target legs.
    pub fn j_labels(&self) -> Vec<Label> {
        let d = self.d();
        (1..=self.r).map(|i| (i - 1) * (d - 1) + 1).collect()
    }

    /// Source labels outside `J`.
    pub fn j_complement(&self) -> Vec<Label> {
        let j: HashSet<Label> = self.j_labels().into_iter().collect();
        (1..=self.n() as Label).filter(|l| !j.contains(l)).collect()
    }
}

/// The graph `O_{g,J}` (or `O_g` when `r = 0`) with legs labelled by `J`.
pub fn o_graph(p: &CatalanParams) -> Result<MarkedGraph> {
    let (g, r) = (p.g as usize, p.r as usize);
    let j = p.j_labels();
    let v = |i: usize| i - 1;
    let mut edges: Vec<(usize, usize)> = (1..=g).map(|i| (v(i), v(i))).collect();
    let mut legs = Vec::new();
    if r == 0 {
        let w = |i: usize| g + i;
        let nv = g + g.saturating_sub(2);
        if g == 1 {
            return Err(Error::Parameters("(g, r) = (1, 0) is unstable".into()));
        }
        if g == 2 {
            edges.push((v(1), v(2)));
        } else {
            edges.extend((0..g.saturating_sub(3)).map(|i| (w(i), w(i + 1))));
            edges.push((w(0), v(1)));
            edges.extend((2..g).map(|i| (v(i), w(i - 2))));
            edges.push((v(g), w(g - 3)));
        }
        return MarkedGraph::from_parts(nv, &edges, &legs);
    }
    if g == 1 {
        if r == 1 {
            return MarkedGraph::from_parts(1, &edges, &[(0, j[0])]);
        }
        // C_1 .. C_{r-1}, the last one carrying two legs
        let c = |i: usize| i;
        edges.push((v(1), c(1)));
        edges.extend((1..r - 1).map(|i| (c(i), c(i + 1))));
        legs.extend((1..r).map(|i| (c(i), j[i - 1])));
        legs.push((c(r - 1), j[r - 1]));
        return MarkedGraph::from_parts(r, &edges, &legs);
    }
    let nw = g.saturating_sub(2);
    let w = |i: usize| g + i;
    let c = |i: usize| g + nw + i - 1;
    edges.push((v(1), c(1)));
    if g == 2 {
        edges.push((c(r), v(2)));
    } else {
        edges.extend((0..g - 3).map(|i| (w(i), w(i + 1))));
        edges.push((c(r), w(0)));
        edges.extend((2..g).map(|i| (v(i), w(i - 2))));
        edges.push((v(g), w(g - 3)));
    }
    edges.extend((1..r).map(|i| (c(i), c(i + 1))));
    legs.extend((1..=r).map(|i| (c(i), j[i - 1])));
    MarkedGraph::from_parts(g + nw + r, &edges, &legs)
}

/// The trivalent target tree `T_{g,J}` (or `T_{g,∅}`) with legs `1..m`.
pub fn t_graph(p: &CatalanParams) -> Result<MarkedGraph> {
    let (g, r) = (p.g as usize, p.r as usize);
    let b = |i: usize| i - 1;
    let bp = |i: usize| g + i - 1;
    let mut edges: Vec<(usize, usize)> = (1..=g).map(|i| (b(i), bp(i))).collect();
    let mut legs: Vec<(usize, Label)> = Vec::new();
    let off = r as Label;
    for i in 1..=g {
        let i3 = 3 * i as Label;
        legs.push((bp(i), off + i3 - 2));
        legs.push((bp(i), off + i3 - 1));
        legs.push((b(i), off + i3));
    }
    if r == 0 {
        if g == 1 {
            return Err(Error::Parameters("(g, r) = (1, 0) is unstable".into()));
        }
        let mm = |i: usize| 2 * g + i;
        if g == 2 {
            edges.push((b(1), b(2)));
        } else {
            edges.extend((0..g - 3).map(|i| (mm(i), mm(i + 1))));
            edges.push((mm(0), b(1)));
            edges.extend((2..g).map(|i| (b(i), mm(i - 2))));
            edges.push((b(g), mm(g - 3)));
        }
        return MarkedGraph::from_parts(2 * g + g.saturating_sub(2), &edges, &legs);
    }
    if g == 1 {
        if r == 1 {
            legs.push((b(1), 1));
            return MarkedGraph::from_parts(2, &edges, &legs);
        }
        let rr = |i: usize| 1 + i;
        edges.push((b(1), rr(1)));
        edges.extend((1..r - 1).map(|i| (rr(i), rr(i + 1))));
        legs.extend((1..r).map(|i| (rr(i), i as Label)));
        legs.push((rr(r - 1), r as Label));
        return MarkedGraph::from_parts(2 + r - 1, &edges, &legs);
    }
    let nm = g.saturating_sub(2);
    let mm = |i: usize| 2 * g + i;
    let rr = |i: usize| 2 * g + nm + i - 1;
    edges.push((b(1), rr(1)));
    if g == 2 {
        edges.push((rr(r), b(2)));
    } else {
        edges.extend((0..g - 3).map(|i| (mm(i), mm(i + 1))));
        edges.push((rr(r), mm(0)));
        edges.extend((2..g).map(|i| (b(i), mm(i - 2))));
        edges.push((b(g), mm(g - 3)));
    }
    edges.extend((1..r).map(|i| (rr(i), rr(i + 1))));
    legs.extend((1..=r).map(|i| (rr(i), i as Label)));
    MarkedGraph::from_parts(2 * g + nm + r, &edges, &legs)
}

pub fn catalan_number(k: u64) -> BigInt {
    factorial(2 * k) / (factorial(k) * factorial(k + 1))
}

/// Number of weight sequences `w_1..w_L`, `L = r + g - 1`, on the chain edges
/// of `O_{g,J}` with `w_1 = w_L = 2`, steps of `±1` and all weights positive.
pub fn dyck_weight_sequences(g: u32, r: u32) -> Result<u64> {
    let p = CatalanParams::new(g, r)?;
    let len = (p.g + p.r - 1) as usize;
    fn rec(pos: usize, w: u32, len: usize, out: &mut u64) {
        if pos + 1 == len {
            if w == 2 {
                *out += 1;
            }
            return;
        }
        for nw in [w + 1, w.wrapping_sub(1)] {
            if nw >= 1 && nw != u32::MAX {
                rec(pos + 1, nw, len, out);
            }
        }
    }
    let mut out = 0;
    rec(0, 2, len, &mut out);
    Ok(out)
}

/// `(3g)! ((d - 2)!)^m C_{(g + r)/2}`.
pub fn pushforward_degree(g: u32, r: u32) -> Result<BigInt> {
    let p = CatalanParams::new(g, r)?;
    let dd = factorial(p.d() as u64 - 2);
    let mut out = factorial(3 * g as u64) * catalan_number(((g + r) / 2) as u64);
    for _ in 0..p.m() {
        out *= &dd;
    }
    Ok(out)
}

/// How [`catalan_fiber_count`] chooses targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalanMode {
    /// Every trivalent target shape.
    Sweep,
    /// Only the target `T_{g,J}`.
    Fixed,
    /// `Sweep` when `m <= 8`, otherwise `Fixed`.
    Auto,
}

/// Per-class data of a contributing cover.
#[derive(Clone, Debug, Serialize)]
pub struct CatalanClass {
    #[serde(with = "crate::rational::serde_q")]
    pub weight: Q,
    pub det: String,
    #[serde(rename = "autClass")]
    pub aut_class: String,
    #[serde(rename = "autLabelled")]
    pub aut_labelled: String,
    #[serde(rename = "autTargetFixed")]
    pub aut_target_fixed: String,
    #[serde(rename = "autO")]
    pub aut_o: String,
    #[serde(rename = "kernel")]
    pub kernel: String,
    /// `|Aut_tgtfix| / |Aut_lab|`.
    #[serde(with = "crate::rational::serde_q")]
    pub vs: Q,
    /// Triple stabilizer `|Aut| / (|Aut_tgtfix| t)`.
    #[serde(with = "crate::rational::serde_q")]
    pub hs: Q,
    /// Triples per labelled cover, `|Aut(O)| |K| / |Aut_lab|`.
    #[serde(rename = "triplesPerCover", with = "crate::rational::serde_q")]
    pub triples_per_cover: Q,
    /// `weight |det| / (vs hs)`.
    #[serde(with = "crate::rational::serde_q")]
    pub multiplicity: Q,
    #[serde(rename = "targetIsTgj")]
    pub target_is_tgj: bool,
    #[serde(skip)]
    pub cover: GraphCover,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalanReport {
    pub g: u32,
    pub r: u32,
    pub d: u32,
    pub m: usize,
    pub mode: CatalanMode,
    #[serde(rename = "targetsExamined")]
    pub targets_examined: usize,
    #[serde(rename = "coversExamined")]
    pub covers_examined: usize,
    pub classes: Vec<CatalanClass>,
    #[serde(with = "crate::rational::serde_q")]
    pub count: Q,
    pub expected: String,
    pub matches: bool,
    /// In sweep mode: every contributing class lies over `T_{g,J}`.
    #[serde(rename = "allTargetsTgj")]
    pub all_targets_tgj: Option<bool>,
    #[serde(rename = "budgetUsed")]
    pub budget_used: u64,
}

fn big(x: &BigUint) -> Q {
    Q::from_integer(BigInt::from(x.clone()))
}

/// Group order of a cover structure with extra individualized elements.
fn group_order_with(c: &GraphCover, mode: LegMode, fix_target: bool, fixed_source: &[usize]) -> BigUint {
    let mut s: Structure = c.structure(mode);
    let ns = c.source.graph.num_flags();
    if fix_target {
        for y in 0..c.target.graph.num_flags() {
            s.codes[ns + y] = (s.codes[ns + y] & !0xffff_ffff) | (1_000_000 + y as u64);
        }
    }
    for &x in fixed_source {
        s.codes[x] = (s.codes[x] & !0xffff_ffff) | (2_000_000 + x as u64);
    }
    s.canonical().group_order
}

/// `eta o F` and the forgetful map when `ft_{J^c}(src)` is `O_{g,J}`.
fn contribution_data(c: &GraphCover, p: &CatalanParams, o_key: &[u64]) -> Result<Option<(BigInt, ForgetfulMap)>> {
    let ft = forget_legs(&c.source, &p.j_complement())?;
    if ft.target.canonical_form(None).key != o_key {
        return Ok(None);
    }
    let det = ft.matrix.mul(&c.cover_matrix())?.det()?;
    if det.is_zero() {
        return Ok(None);
    }
    Ok(Some((det, ft)))
}

/// Anonymous-leg colour of target label `l`.
fn target_color(p: &CatalanParams) -> impl Fn(Label) -> u64 {
    let r = p.r;
    move |l| if l <= r { l as u64 } else { 0 }
}

fn class_data(c: &GraphCover, p: &CatalanParams, det: BigInt, ft: &ForgetfulMap, aut_o: &BigUint, t_key: &[u64]) -> Result<CatalanClass> {
    let weight = standard_weight(c)?;
    let aut_class = c.canonical(LegMode::Anonymous(p.r)).group_order;
    let aut_lab = c.canonical(LegMode::Labelled).group_order;
    let aut_tf = group_order_with(c, LegMode::SourceColored, true, &[]);
    let surviving: Vec<usize> = (0..c.source.graph.num_flags()).filter(|&x| ft.flag_map[x].is_some()).collect();
    let kernel = group_order_with(c, LegMode::Labelled, false, &surviving);
    let t = big(aut_o) * big(&kernel) / big(&aut_lab);
    let vs = big(&aut_tf) / big(&aut_lab);
    let hs = big(&aut_class) / (big(&aut_tf) * &t);
    let wd = &weight * Q::from_integer(det.abs());
    let multiplicity = &wd / (&vs * &hs);
    let color = target_color(p);
    let target_is_tgj = c.target.colored_canonical_form(&color).key == t_key;
    Ok(CatalanClass {
        weight,
        det: det.to_string(),
        aut_class: aut_class.to_string(),
        aut_labelled: aut_lab.to_string(),
        aut_target_fixed: aut_tf.to_string(),
        aut_o: aut_o.to_string(),
        kernel: kernel.to_string(),
        vs,
        hs,
        triples_per_cover: t,
        multiplicity,
        target_is_tgj,
        cover: c.clone(),
    })
}

/// Counts contributing cover classes with their multiplicities.
pub fn catalan_fiber_count(g: u32, r: u32, mode: CatalanMode, budget: &Budget) -> Result<CatalanReport> {
    let p = CatalanParams::new(g, r)?;
    let mode = match mode {
        CatalanMode::Auto if p.m() <= 8 => CatalanMode::Sweep,
        CatalanMode::Auto => CatalanMode::Fixed,
        m => m,
    };
    let params = p.ac_params();
    let o = o_graph(&p)?;
    let oc = o.canonical_form(None);
    let tgj = t_graph(&p)?;
    let color = target_color(&p);
    let t_key = tgj.colored_canonical_form(&color).key;
    let targets: Vec<MarkedGraph> = match mode {
        CatalanMode::Fixed => vec![tgj.clone()],
        _ => {
            let colors: Vec<u64> = (1..=p.m() as Label).map(&color).collect();
            let top = p.m() - 3;
            enumerate_stable_graphs_colored(0, &colors, Some(top))?.pop().unwrap_or_default()
        }
    };
    let mut seen = HashSet::new();
    let mut classes = Vec::new();
    let mut covers_examined = 0;
    for t in &targets {
        for c in covers_over_target(t, &params, Labelling::Colored, budget)? {
            covers_examined += 1;
            let Some((det, ft)) = contribution_data(&c, &p, &oc.key)? else {
                continue;
            };
            if !seen.insert(c.canonical(LegMode::Anonymous(p.r)).key) {
                continue;
            }
            classes.push(class_data(&c, &p, det, &ft, &oc.aut_order, &t_key)?);
        }
    }
    let count = classes.iter().map(|c| c.multiplicity.clone()).fold(Q::zero(), |a, b| a + b);
    let expected = catalan_number(((g + r) / 2) as u64);
    let all_targets_tgj = (mode == CatalanMode::Sweep).then(|| classes.iter().all(|c| c.target_is_tgj));
    Ok(CatalanReport {
        g,
        r,
        d: p.d(),
        m: p.m(),
        mode,
        targets_examined: targets.len(),
        covers_examined,
        matches: count == Q::from_integer(expected.clone()),
        expected: expected.to_string(),
        count,
        classes,
        all_targets_tgj,
        budget_used: budget.used(),
    })
}

/// `sum over labelled covers of weight * |det| * (triples per cover)`.
///
/// Enumerates every labelled trivalent target, so only small cases are feasible.
pub fn pushforward_direct_sum(g: u32, r: u32, budget: &Budget) -> Result<Q> {
    let p = CatalanParams::new(g, r)?;
    let params = p.ac_params();
    let o = o_graph(&p)?;
    let oc = o.canonical_form(None);
    let t_key = t_graph(&p)?.colored_canonical_form(&target_color(&p)).key;
    let mut total = Q::zero();
    for t in crate::enumerate::targets(0, p.m(), crate::enumerate::Stratum::Top)? {
        for c in covers_over_target(&t, &params, Labelling::Labelled, budget)? {
            if let Some((det, ft)) = contribution_data(&c, &p, &oc.key)? {
                let data = class_data(&c, &p, det, &ft, &oc.aut_order, &t_key)?;
                let wd = &data.weight * Q::from_integer(data.det.parse::<BigInt>().expect("integer").abs());
                total += wd * data.triples_per_cover;
            }
        }
    }
    Ok(total)
}

/// Source edges and vertices that vanish under `ft_{J^c}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expunged {
    /// Smaller flag of each expunged edge.
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

/// Expunged edges (zero columns of `eta`) and vertices (only forgotten legs
/// and expunged edges).
pub fn expunged_set(c: &GraphCover, j: &[Label]) -> Result<Expunged> {
    let keep: HashSet<Label> = j.iter().copied().collect();
    let forget: Vec<Label> = c.source.labels().into_iter().filter(|l| !keep.contains(l)).collect();
    let ft = forget_legs(&c.source, &forget)?;
    let g = &c.source.graph;
    let sedges = g.edges();
    let edges: Vec<usize> = sedges.iter().enumerate().filter(|&(k, _)| ft.matrix.column_is_zero(k)).map(|(_, &(x, _))| x).collect();
    let exp: HashSet<usize> = edges.iter().flat_map(|&x| [x, g.involution(x)]).collect();
    let labels = c.source.label_of();
    let vertices = g
        .vertices()
        .into_iter()
        .filter(|&v| {
            g.flags_at(v).into_iter().all(|f| {
                if g.is_leg(f) {
                    !keep.contains(&labels[f].expect("labelled"))
                } else {
                    exp.contains(&f)
                }
            })
        })
        .collect();
    Ok(Expunged { edges, vertices })
}

/// At a target vertex with two legs: one source vertex of degree 2, the rest of
/// degree 1, and the profile over the third flag is `(1^d)`.
pub fn fiber_structure_holds(c: &GraphCover, w: usize) -> bool {
    let s = &c.source.graph;
    let fiber: Vec<usize> = s.vertices().into_iter().filter(|&v| c.flag_map[v] == w).collect();
    let twos = fiber.iter().filter(|&&v| c.degrees[v] == 2).count();
    let ones = fiber.iter().filter(|&&v| c.degrees[v] == 1).count();
    if twos != 1 || ones + 1 != fiber.len() {
        return false;
    }
    let tg = &c.target.graph;
    tg.flags_at(w)
        .into_iter()
        .filter(|&h| tg.is_half_edge(h))
        .all(|h| c.ramification_profile(h).map(|p| p.parts().iter().all(|&x| x == 1)).unwrap_or(false))
}

/// [`fiber_structure_holds`] for a top-dimensional cover whose composed
/// matrix `eta_{ft_{J^c}} o F` is invertible.
pub fn validate_fiber_structure(c: &GraphCover, w: usize, j: &[Label]) -> Result<bool> {
    let tg = &c.target.graph;
    if tg.vertices().iter().any(|&v| tg.flags_at(v).len() != 3) {
        return Err(Error::Precondition("target is not trivalent".into()));
    }
    if !tg.is_vertex(w) || c.target.leg_valency(w) != 2 {
        return Err(Error::Precondition(format!("target vertex {w} does not carry two legs")));
    }
    let keep: HashSet<Label> = j.iter().copied().collect();
    let forget: Vec<Label> = c.source.labels().into_iter().filter(|l| !keep.contains(l)).collect();
    let ft = forget_legs(&c.source, &forget)?;
    let m = ft.matrix.mul(&c.cover_matrix())?;
    if m.rows != m.cols || m.det()?.is_zero() {
        return Err(Error::Precondition("eta o F is not invertible".into()));
    }
    Ok(fiber_structure_holds(c, w))
}

/// Total of [`CatalanClass::multiplicity`] as an integer when it is one.
pub fn as_integer(q: &Q) -> Option<BigInt> {
    q.denom().is_one().then(|| q.numer().clone())
}
