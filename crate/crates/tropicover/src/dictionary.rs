//! Harmonic morphisms to trees with non-negative ramification numbers
//! (DT-morphisms) as admissible covers with forgotten markings.
//!
//! Grafting adds `3 - val(W)` legs at every target vertex `W`. Over each new
//! leg a single source vertex takes a weight-2 leg; a vertex `V` takes exactly
//! `r(V)` of them, which brings its ramification number to zero. Remaining local
//! degree is filled with weight-1 legs.

use std::collections::BTreeMap;

use crate::cover::{AcParams, AdmissibleCoverObject, GraphCover, Partition};
use crate::error::{Error, Result};
use crate::graph::{DiscreteGraph, Label, MarkedGraph};

/// A cover of unmarked graphs from edge data.
///
/// `edges[k] = (u, v, t, w)`: source edge `u - v` of weight `w` over target edge
/// index `t`, with `u` over the first endpoint of `t`.
pub fn unmarked_cover(target: MarkedGraph, nv: usize, edges: &[(usize, usize, usize, u32)], vertex_map: &[usize], vertex_degrees: &[u32]) -> Result<GraphCover> {
    let te = target.graph.edges();
    let plain: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _, _)| (u, v)).collect();
    let source = MarkedGraph::from_parts(nv, &plain, &[])?;
    if vertex_map.len() != nv || vertex_degrees.len() != nv {
        return Err(Error::InvalidCover("vertex data has the wrong length".into()));
    }
    let mut flag_map = vertex_map.to_vec();
    let mut degrees = vertex_degrees.to_vec();
    for &(u, _, t, w) in edges {
        let &(a, b) = te.get(t).ok_or_else(|| Error::InvalidCover(format!("no target edge {t}")))?;
        let (tu, tv) = if target.graph.root(a) == vertex_map[u] { (a, b) } else { (b, a) };
        flag_map.extend([tu, tv]);
        degrees.extend([w, w]);
    }
    GraphCover::new(source, target, flag_map, degrees)
}

/// Expected sum of ramification numbers over a target vertex of valency `val`.
fn expected_rh(val: usize, d: u32) -> i64 {
    if d == 1 {
        0
    } else {
        3 - val as i64
    }
}

/// Grafts marked legs onto a DT-morphism to a tree.
pub fn dt_to_admissible(phi: &GraphCover) -> Result<AdmissibleCoverObject> {
    let (s, t) = (&phi.source.graph, &phi.target.graph);
    if phi.source.num_legs() > 0 || phi.target.num_legs() > 0 {
        return Err(Error::Precondition("DT-morphisms carry no legs".into()));
    }
    if phi.target.genus()? != 0 || !t.is_connected() {
        return Err(Error::NotTree);
    }
    let d = phi.degree()?;
    let mut rh: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
    for v in s.vertices() {
        let r = phi.rh_number(v)?;
        if r < 0 {
            return Err(Error::Ramification(format!("source vertex {v} has ramification number {r}")));
        }
        rh.entry(phi.flag_map[v]).or_default().push((v, r));
    }
    let mut sflags_root: Vec<usize> = s.roots().to_vec();
    let mut sinv: Vec<usize> = s.involutions().to_vec();
    let mut troot: Vec<usize> = t.roots().to_vec();
    let mut tinv: Vec<usize> = t.involutions().to_vec();
    let mut flag_map = phi.flag_map.clone();
    let mut degrees = phi.degrees.clone();
    let mut tmark = BTreeMap::new();
    let mut smark = BTreeMap::new();
    let block = if d == 1 { 1 } else { d - 1 };
    let mut next: Label = 0;
    for w in t.vertices() {
        let val = t.valency(w)?;
        if val > 3 {
            return Err(Error::Precondition(format!("target vertex {w} has valency {val}")));
        }
        let fiber = rh.get(&w).cloned().unwrap_or_default();
        let total: i64 = fiber.iter().map(|&(_, r)| r).sum();
        if total != expected_rh(val, d) {
            return Err(Error::Ramification(format!("ramification numbers over target vertex {w} sum to {total}, expected {}", expected_rh(val, d))));
        }
        // one token per weight-2 leg; the k-th new leg takes the k-th token
        let tokens: Vec<usize> = fiber.iter().flat_map(|&(v, r)| std::iter::repeat(v).take(r as usize)).collect();
        for k in 0..3 - val {
            next += 1;
            let tl = troot.len();
            troot.push(w);
            tinv.push(tl);
            tmark.insert(next, tl);
            let mut label = (next - 1) * block;
            let mut add = |v: usize, weight: u32, label: &mut Label| {
                let x = sflags_root.len();
                sflags_root.push(v);
                sinv.push(x);
                flag_map.push(tl);
                degrees.push(weight);
                *label += 1;
                smark.insert(*label, x);
            };
            if d >= 2 {
                let v2 = tokens[k];
                if phi.degrees[v2] < 2 {
                    return Err(Error::Ramification(format!("source vertex {v2} of degree 1 has positive ramification")));
                }
                add(v2, 2, &mut label);
            }
            for &(v, _) in &fiber {
                let ones = phi.degrees[v] - if d >= 2 && tokens[k] == v { 2 } else { 0 };
                for _ in 0..ones {
                    add(v, 1, &mut label);
                }
            }
        }
    }
    let source = MarkedGraph::new(DiscreteGraph::new(sflags_root, sinv)?, smark)?;
    let target = MarkedGraph::new(DiscreteGraph::new(troot, tinv)?, tmark)?;
    let cover = GraphCover::new(source, target, flag_map, degrees)?;
    let part = if d == 1 {
        Partition::ones(1)
    } else {
        let mut p = vec![2];
        p.extend(std::iter::repeat(1).take(d as usize - 2));
        Partition::new(p)?
    };
    let params = AcParams::new(d, 0, vec![part; next as usize])?;
    AdmissibleCoverObject::new(cover, params)
}

/// Removes every leg of source and target, keeping the order of other flags.
pub fn forget_markings(c: &GraphCover) -> Result<GraphCover> {
    fn strip(g: &MarkedGraph) -> Result<(MarkedGraph, Vec<Option<usize>>)> {
        let gr = &g.graph;
        let mut index = vec![None; gr.num_flags()];
        let mut k = 0;
        for f in 0..gr.num_flags() {
            if !gr.is_leg(f) {
                index[f] = Some(k);
                k += 1;
            }
        }
        let keep: Vec<usize> = (0..gr.num_flags()).filter(|&f| !gr.is_leg(f)).collect();
        let at = |f: usize| index[f].expect("kept flag");
        let root = keep.iter().map(|&f| at(gr.root(f))).collect();
        let inv = keep.iter().map(|&f| at(gr.involution(f))).collect();
        Ok((MarkedGraph::new(DiscreteGraph::new(root, inv)?, BTreeMap::new())?, index))
    }
    let (source, sidx) = strip(&c.source)?;
    let (target, tidx) = strip(&c.target)?;
    let mut flag_map = Vec::new();
    let mut degrees = Vec::new();
    for x in 0..c.source.graph.num_flags() {
        if sidx[x].is_some() {
            flag_map.push(tidx[c.flag_map[x]].ok_or_else(|| Error::InvalidCover("a non-leg flag lies over a leg".into()))?);
            degrees.push(c.degrees[x]);
        }
    }
    GraphCover::new(source, target, flag_map, degrees)
}

/// Degree-3 DT-morphism from a genus-4 graph to a tree with ten vertices.
///
/// Three sheets over a caterpillar; two of them meet over the leaves and a
/// weight-2 edge joins the lower two in the middle.
pub fn genus_four_example() -> GraphCover {
    // target: A B C E D F G H I K
    let (a, b, c, e, dd, f, g, h, i, k) = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9);
    let tedges = [(a, c), (b, c), (c, dd), (e, dd), (dd, f), (f, g), (g, h), (h, i), (h, k)];
    let target = MarkedGraph::from_parts(10, &tedges, &[]).expect("valid tree");
    // source vertices
    let names = ["a1", "a2", "b1", "b2", "c1", "c2", "c3", "e1", "e2", "d1", "d2", "d3", "f1", "f2", "g1", "g2", "h1", "h2", "h3", "i1", "i2", "k1", "k2"];
    let over = [a, a, b, b, c, c, c, e, e, dd, dd, dd, f, f, g, g, h, h, h, i, i, k, k];
    let deg = [2, 1, 2, 1, 1, 1, 1, 1, 2, 1, 1, 1, 1, 2, 1, 2, 1, 1, 1, 2, 1, 2, 1];
    let v = |n: &str| names.iter().position(|&x| x == n).expect("named vertex");
    let te = |x: usize, y: usize| tedges.iter().position(|&(p, q)| (p, q) == (x, y)).expect("target edge");
    let sheet = |suffix: [&str; 10]| -> Vec<(usize, usize, usize, u32)> {
        let [sa, sb, sc, se, sd, sf, sg, sh, si, sk] = suffix;
        vec![
            (v(sa), v(sc), te(a, c), 1),
            (v(sb), v(sc), te(b, c), 1),
            (v(sc), v(sd), te(c, dd), 1),
            (v(se), v(sd), te(e, dd), 1),
            (v(sd), v(sf), te(dd, f), 1),
            (v(sf), v(sg), te(f, g), 1),
            (v(sg), v(sh), te(g, h), 1),
            (v(sh), v(si), te(h, i), 1),
            (v(sh), v(sk), te(h, k), 1),
        ]
    };
    let mut edges = sheet(["a1", "b1", "c1", "e1", "d1", "f1", "g1", "h1", "i1", "k1"]);
    let mut middle = sheet(["a1", "b1", "c2", "e2", "d2", "f2", "g2", "h2", "i1", "k1"]);
    // the middle and bottom sheets share the weight-2 edge f2 - g2
    middle.retain(|&(_, _, t, _)| t != te(f, g));
    let mut bottom = sheet(["a2", "b2", "c3", "e2", "d3", "f2", "g2", "h3", "i2", "k2"]);
    for x in bottom.iter_mut().filter(|x| x.2 == te(f, g)) {
        x.3 = 2;
    }
    edges.extend(middle);
    edges.extend(bottom);
    unmarked_cover(target, names.len(), &edges, &over, &deg).expect("valid example")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_shape() {
        let phi = genus_four_example();
        assert_eq!(phi.source.graph.vertices().len(), 23);
        assert_eq!(phi.source.graph.edges().len(), 26);
        assert_eq!(phi.source.genus().unwrap(), 4);
        assert_eq!(phi.degree().unwrap(), 3);
        assert!(phi.source.graph.vertices().iter().all(|&v| phi.rh_number(v).unwrap() >= 0));
    }

    #[test]
    fn example_round_trip() {
        let phi = genus_four_example();
        let ac = dt_to_admissible(&phi).unwrap();
        assert_eq!(ac.params.m(), 12);
        assert_eq!(ac.params.d, 3);
        assert_eq!(ac.source_genus(), 4);
        assert_eq!(forget_markings(&ac.cover).unwrap(), phi);
        // weight-2 legs sit at a1, b1, e2 (two each), f2, g2 (one each), i1, k1 (two each)
        let c = &ac.cover;
        let mut heavy: Vec<usize> = c.source.graph.legs().into_iter().filter(|&x| c.degrees[x] == 2).map(|x| c.source.graph.root(x)).collect();
        heavy.sort_unstable();
        assert_eq!(heavy, vec![0, 0, 2, 2, 8, 8, 13, 15, 19, 19, 21, 21]);
    }

    #[test]
    fn identity_on_tree() {
        let t = MarkedGraph::from_parts(4, &[(0, 1), (0, 2), (0, 3)], &[]).unwrap();
        let n = t.graph.num_flags();
        let phi = GraphCover::new(t.clone(), t, (0..n).collect(), vec![1; n]).unwrap();
        let ac = dt_to_admissible(&phi).unwrap();
        assert_eq!(ac.params.d, 1);
        assert_eq!(ac.params.m(), 6);
        assert_eq!(forget_markings(&ac.cover).unwrap(), phi);
    }

    #[test]
    fn ramification_pattern_is_checked() {
        // the unramified side sums to 0 over a leaf
        let t = MarkedGraph::from_parts(2, &[(0, 1)], &[]).unwrap();
        let phi = unmarked_cover(t, 3, &[(0, 1, 0, 1), (0, 2, 0, 1)], &[0, 1, 1], &[2, 1, 1]).unwrap();
        assert!(matches!(dt_to_admissible(&phi), Err(Error::Ramification(_))));
    }
}
