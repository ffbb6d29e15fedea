//! Canonical labelling of finite functional structures.
//!
//! A structure is a set of elements `0..n`, each carrying an initial code, with
//! a fixed list of unary maps `0..n -> 0..n`. Graphs and covers are encoded
//! this way: flags are the elements, root, involution and the cover map are the
//! unary maps. The search is individualization-refinement with automorphism
//! pruning; the key is the lexicographically least leaf certificate.

use num_bigint::BigUint;
use num_traits::One;

#[derive(Clone, Debug, Default)]
pub struct Structure {
    pub codes: Vec<u64>,
    pub maps: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct Canonical {
    /// Certificate equal for two structures iff they are isomorphic.
    pub key: Vec<u64>,
    /// `labeling[x]` is the canonical position of element `x`.
    pub labeling: Vec<usize>,
    /// Order of the automorphism group.
    pub group_order: BigUint,
    /// Generators of the automorphism group, as element permutations.
    pub generators: Vec<Vec<usize>>,
}

impl Structure {
    pub fn new(codes: Vec<u64>) -> Self {
        Structure { codes, maps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn push_map(&mut self, m: Vec<usize>) {
        debug_assert_eq!(m.len(), self.codes.len());
        self.maps.push(m);
    }

    pub fn canonical(&self) -> Canonical {
        Engine::new(self).run()
    }

    /// Whether `p` preserves codes and commutes with every map.
    pub fn is_automorphism(&self, p: &[usize]) -> bool {
        (0..self.len()).all(|x| {
            self.codes[p[x]] == self.codes[x]
                && self.maps.iter().all(|m| m[p[x]] == p[m[x]])
        })
    }
}

fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Leaf {
    cert: Vec<u64>,
    lab: Vec<usize>,
    path: Vec<usize>,
}

struct Engine<'a> {
    s: &'a Structure,
    pre: Vec<Vec<(u32, u32)>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Vec<usize>>,
    order: BigUint,
}

impl<'a> Engine<'a> {
    fn new(s: &'a Structure) -> Self {
        let n = s.len();
        let mut pre = vec![Vec::new(); n];
        for (j, m) in s.maps.iter().enumerate() {
            for (x, &y) in m.iter().enumerate() {
                pre[y].push((j as u32, x as u32));
            }
        }
        Engine { s, pre, first: None, best: None, gens: Vec::new(), order: BigUint::one() }
    }

    fn run(mut self) -> Canonical {
        let n = self.s.len();
        if n == 0 {
            return Canonical {
                key: vec![0, self.s.maps.len() as u64],
                labeling: vec![],
                group_order: BigUint::one(),
                generators: vec![],
            };
        }
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by_key(|&x| self.s.codes[x]);
        let mut colors = vec![0u32; n];
        for p in 0..n {
            let x = idx[p];
            colors[x] = if p > 0 && self.s.codes[idx[p - 1]] == self.s.codes[x] {
                colors[idx[p - 1]]
            } else {
                p as u32
            };
        }
        self.refine(&mut colors, None);
        let mut path = Vec::new();
        self.search(&colors, &mut path);
        let best = self.best.take().expect("search reaches a leaf");
        Canonical { key: best.cert, labeling: best.lab, group_order: self.order, generators: self.gens }
    }

    fn signature(&self, x: usize, colors: &[u32], buf: &mut Vec<u64>) -> u64 {
        let mut h = mix(0, colors[x] as u64);
        for m in &self.s.maps {
            h = mix(h, colors[m[x]] as u64);
        }
        buf.clear();
        buf.extend(self.pre[x].iter().map(|&(j, y)| ((j as u64) << 32) | colors[y as usize] as u64));
        buf.sort_unstable();
        for &b in buf.iter() {
            h = mix(h, b);
        }
        h
    }

    /// Equitable-style refinement; colours are cell start offsets.
    ///
    /// `seed` lists the elements whose colour changed since the partition was
    /// last stable; `None` refines from scratch. Only cells that see a changed
    /// colour are re-split, which gives the same result as recomputing every
    /// signature each round.
    fn refine(&self, colors: &mut [u32], seed: Option<&[usize]>) {
        let n = colors.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&x| colors[x]);
        let mut end = vec![0usize; n];
        let mut p = 0;
        while p < n {
            let c = colors[order[p]];
            let mut q = p + 1;
            while q < n && colors[order[q]] == c {
                q += 1;
            }
            end[p] = q;
            p = q;
        }
        let mut sig = vec![0u64; n];
        let mut marked = vec![false; n];
        let mut buf = Vec::new();
        let mut changed: Vec<usize> = seed.map_or_else(|| (0..n).collect(), <[usize]>::to_vec);
        while !changed.is_empty() {
            let mut cells = Vec::new();
            let mut touch = |y: usize, cells: &mut Vec<usize>| {
                let c = colors[y] as usize;
                if !marked[c] {
                    marked[c] = true;
                    cells.push(c);
                }
            };
            for &x in &changed {
                touch(x, &mut cells);
                for &(_, y) in &self.pre[x] {
                    touch(y as usize, &mut cells);
                }
                for m in &self.s.maps {
                    touch(m[x], &mut cells);
                }
            }
            cells.retain(|&c| {
                marked[c] = false;
                end[c] - c > 1
            });
            for &c in &cells {
                for &x in &order[c..end[c]] {
                    sig[x] = self.signature(x, colors, &mut buf);
                }
            }
            changed.clear();
            for &c in &cells {
                let e = end[c];
                order[c..e].sort_unstable_by_key(|&x| sig[x]);
                let mut p = c;
                while p < e {
                    let mut q = p + 1;
                    while q < e && sig[order[q]] == sig[order[p]] {
                        q += 1;
                    }
                    end[p] = q;
                    for &x in &order[p..q] {
                        if colors[x] != p as u32 {
                            colors[x] = p as u32;
                            changed.push(x);
                        }
                    }
                    p = q;
                }
            }
        }
    }

    fn certificate(&self, lab: &[usize]) -> Vec<u64> {
        let n = lab.len();
        let mut inv = vec![0usize; n];
        for (x, &p) in lab.iter().enumerate() {
            inv[p] = x;
        }
        let mut cert = Vec::with_capacity(2 + n * (1 + self.s.maps.len()));
        cert.push(n as u64);
        cert.push(self.s.maps.len() as u64);
        for &x in &inv {
            cert.push(self.s.codes[x]);
            for m in &self.s.maps {
                cert.push(lab[m[x]] as u64);
            }
        }
        cert
    }

    fn orbits_fixing(&self, fixed: &[usize]) -> Vec<usize> {
        let n = self.s.len();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for g in &self.gens {
            if fixed.iter().all(|&p| g[p] == p) {
                for x in 0..n {
                    let (a, b) = (find(&mut uf, x), find(&mut uf, g[x]));
                    if a != b {
                        uf[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..n).map(|x| find(&mut uf, x)).collect()
    }

    fn leaf(&mut self, colors: &[u32], path: &[usize]) -> Option<usize> {
        let lab: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let cert = self.certificate(&lab);
        let Some(first) = &self.first else {
            let leaf = Leaf { cert: cert.clone(), lab: lab.clone(), path: path.to_vec() };
            self.first = Some(leaf);
            self.best = Some(Leaf { cert, lab, path: path.to_vec() });
            return None;
        };
        let automorphism = |other: &Leaf| -> Vec<usize> {
            let mut inv = vec![0usize; lab.len()];
            for (x, &p) in lab.iter().enumerate() {
                inv[p] = x;
            }
            other.lab.iter().map(|&p| inv[p]).collect()
        };
        if cert == first.cert {
            let g = automorphism(first);
            let common = common_prefix(&first.path, path);
            self.gens.push(g);
            return Some(common);
        }
        let best = self.best.as_ref().expect("best set with first");
        match cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                let g = automorphism(best);
                let common = common_prefix(&best.path, path);
                self.gens.push(g);
                Some(common)
            }
            std::cmp::Ordering::Less => {
                self.best = Some(Leaf { cert, lab, path: path.to_vec() });
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    fn search(&mut self, colors: &[u32], path: &mut Vec<usize>) -> Option<usize> {
        let n = colors.len();
        let mut size = vec![0u32; n];
        for &c in colors {
            size[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| size[c] > 1) else {
            return self.leaf(colors, path);
        };
        let level = path.len();
        let cell: Vec<usize> = (0..n).filter(|&x| colors[x] as usize == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        let mut ngens = usize::MAX;
        let mut orbit = Vec::new();
        for &w in &cell {
            if !explored.is_empty() {
                if ngens != self.gens.len() {
                    orbit = self.orbits_fixing(path);
                    ngens = self.gens.len();
                }
                if explored.iter().any(|&e| orbit[e] == orbit[w]) {
                    continue;
                }
            }
            explored.push(w);
            let mut child = colors.to_vec();
            let mut bumped = Vec::with_capacity(cell.len());
            for &x in &cell {
                if x != w {
                    child[x] += 1;
                    bumped.push(x);
                }
            }
            self.refine(&mut child, Some(&bumped));
            path.push(w);
            let r = self.search(&child, path);
            path.pop();
            if let Some(l) = r {
                if l < level {
                    return Some(l);
                }
            }
        }
        let first = self.first.as_ref().expect("a leaf was reached");
        if first.path.len() > level && first.path[..level] == path[..] {
            let v = first.path[level];
            let orbit = self.orbits_fixing(path);
            let size = cell.iter().filter(|&&x| orbit[x] == orbit[v]).count();
            self.order *= BigUint::from(size);
        }
        None
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn cycle(n: usize) -> Structure {
        let mut s = Structure::new(vec![0; n]);
        s.push_map((0..n).map(|i| (i + 1) % n).collect());
        s
    }

    fn relabel(s: &Structure, p: &[usize]) -> Structure {
        let n = s.len();
        let mut codes = vec![0; n];
        for x in 0..n {
            codes[p[x]] = s.codes[x];
        }
        let mut t = Structure::new(codes);
        for m in &s.maps {
            let mut nm = vec![0; n];
            for x in 0..n {
                nm[p[x]] = p[m[x]];
            }
            t.push_map(nm);
        }
        t
    }

    /// Undirected graph on `n` vertices as a flag structure.
    fn petersen() -> Structure {
        let mut edges = vec![];
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        flag_structure(10, &edges)
    }

    fn flag_structure(nv: usize, edges: &[(usize, usize)]) -> Structure {
        let n = nv + 2 * edges.len();
        let mut codes = vec![1; n];
        let mut root: Vec<usize> = (0..n).collect();
        let mut inv: Vec<usize> = (0..n).collect();
        for c in codes.iter_mut().take(nv) {
            *c = 0;
        }
        for (k, &(a, b)) in edges.iter().enumerate() {
            let (f, g) = (nv + 2 * k, nv + 2 * k + 1);
            root[f] = a;
            root[g] = b;
            inv[f] = g;
            inv[g] = f;
        }
        let mut s = Structure::new(codes);
        s.push_map(root);
        s.push_map(inv);
        s
    }

    #[test]
    fn cycle_group() {
        let c = cycle(7).canonical();
        assert_eq!(c.group_order, BigUint::from(7u32));
    }

    #[test]
    fn petersen_group() {
        let c = petersen().canonical();
        // 120 vertex automorphisms; flags carry no extra symmetry
        assert_eq!(c.group_order, BigUint::from(120u32));
        for g in &c.generators {
            assert!(petersen().is_automorphism(g));
        }
    }

    #[test]
    fn star_group() {
        let edges: Vec<_> = (1..6).map(|i| (0, i)).collect();
        let c = flag_structure(6, &edges).canonical();
        assert_eq!(c.group_order, BigUint::from(120u32));
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let base = petersen();
        let k = base.canonical().key;
        for _ in 0..100 {
            let mut p: Vec<usize> = (0..base.len()).collect();
            p.shuffle(&mut rng);
            let c = relabel(&base, &p).canonical();
            assert_eq!(c.key, k);
            assert_eq!(c.group_order, BigUint::from(120u32));
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        // 6-cycle versus two triangles
        let a = flag_structure(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let b = flag_structure(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_ne!(a.canonical().key, b.canonical().key);
        assert_eq!(a.canonical().group_order, BigUint::from(12u32));
        assert_eq!(b.canonical().group_order, BigUint::from(72u32));
    }
}
