//! Genus-zero connected Hurwitz numbers by brute force over `S_d`.
//!
//! `H(l_1, ..., l_k)` counts tuples `(s_1, ..., s_k)` of permutations with the
//! given cycle types, product the identity and transitive action, divided by
//! `d!`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cover::{GraphCover, Partition};
use crate::error::{Error, Result};
use crate::rational::{factorial, Q};

/// Largest degree accepted by default.
pub const DEFAULT_DEGREE_BOUND: u32 = 6;

type Perm = Vec<u8>;

fn cycle_type(p: &[u8]) -> Vec<u32> {
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for s in 0..p.len() {
        if !seen[s] {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p[x] as usize;
                len += 1;
            }
            parts.push(len);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

fn all_perms(d: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p: Perm = (0..d as u8).collect();
    fn heap(k: usize, p: &mut Perm, out: &mut Vec<Perm>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            if k % 2 == 0 {
                p.swap(i, k - 1);
            } else {
                p.swap(0, k - 1);
            }
        }
    }
    heap(d, &mut p, &mut out);
    out
}

/// Permutations of `S_d` grouped by cycle type.
fn classes(d: u32) -> &'static HashMap<Vec<u32>, Vec<Perm>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, &'static HashMap<Vec<u32>, Vec<Perm>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("class cache");
    *guard.entry(d).or_insert_with(|| {
        let mut m: HashMap<Vec<u32>, Vec<Perm>> = HashMap::new();
        for p in all_perms(d as usize) {
            m.entry(cycle_type(&p)).or_default().push(p);
        }
        Box::leak(Box::new(m))
    })
}

fn compose(a: &[u8], b: &[u8]) -> Perm {
    // apply a, then b
    a.iter().map(|&x| b[x as usize]).collect()
}

fn inverse(a: &[u8]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

fn transitive(perms: &[&[u8]], d: usize) -> bool {
    let mut uf: Vec<usize> = (0..d).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut comps = d;
    for p in perms {
        for i in 0..d {
            let (a, b) = (find(&mut uf, i), find(&mut uf, p[i] as usize));
            if a != b {
                uf[a.max(b)] = a.min(b);
                comps -= 1;
            }
        }
    }
    comps == 1
}

fn check(d: u32, profiles: &[Partition], bound: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::Parameters("degree must be positive".into()));
    }
    if let Some(p) = profiles.iter().find(|p| p.size() != d) {
        return Err(Error::Parameters(format!("{p} is not a partition of {d}")));
    }
    if d > bound {
        return Err(Error::DegreeBound { d, bound });
    }
    Ok(())
}

/// Number of transitive tuples, with the first factor fixed to one class
/// representative and multiplied by the class size.
fn count_tuples(d: u32, profiles: &[Partition]) -> BigInt {
    let cls = classes(d);
    let k = profiles.len();
    let get = |p: &Partition| cls.get(p.parts()).map(Vec::as_slice).unwrap_or(&[]);
    if k == 0 {
        return BigInt::zero();
    }
    let first = get(&profiles[0]);
    let Some(rep) = first.first() else {
        return BigInt::zero();
    };
    let last_type = profiles[k - 1].parts().to_vec();
    let mut count: u64 = 0;
    let mut stack: Vec<&[u8]> = vec![rep.as_slice()];
    fn rec<'a>(
        i: usize,
        prod: Perm,
        stack: &mut Vec<&'a [u8]>,
        profiles: &[Partition],
        cls: &'a HashMap<Vec<u32>, Vec<Perm>>,
        last_type: &[u32],
        count: &mut u64,
    ) {
        let k = profiles.len();
        let d = prod.len();
        if i == k - 1 || k == 1 {
            if k == 1 {
                if prod.iter().enumerate().all(|(j, &x)| j == x as usize) && transitive(stack, d) {
                    *count += 1;
                }
                return;
            }
            let last = inverse(&prod);
            if cycle_type(&last) == last_type {
                let mut all = stack.clone();
                all.push(&last);
                if transitive(&all, d) {
                    *count += 1;
                }
            }
            return;
        }
        let Some(class) = cls.get(profiles[i].parts()) else {
            return;
        };
        for p in class {
            stack.push(p.as_slice());
            rec(i + 1, compose(&prod, p), stack, profiles, cls, last_type, count);
            stack.pop();
        }
    }
    rec(1, rep.clone(), &mut stack, profiles, cls, &last_type, &mut count);
    BigInt::from(count) * BigInt::from(first.len())
}

/// Connected genus-zero Hurwitz number with the default degree bound.
pub fn hurwitz_number(d: u32, profiles: &[Partition]) -> Result<Q> {
    hurwitz_number_bounded(d, profiles, DEFAULT_DEGREE_BOUND)
}

pub fn hurwitz_number_bounded(d: u32, profiles: &[Partition], bound: u32) -> Result<Q> {
    check(d, profiles, bound)?;
    static MEMO: OnceLock<Mutex<HashMap<(u32, Vec<Partition>), Q>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (d, profiles.to_vec());
    if let Some(v) = memo.lock().expect("memo").get(&key) {
        return Ok(v.clone());
    }
    let v = Q::new(count_tuples(d, profiles), factorial(d as u64));
    memo.lock().expect("memo").insert(key, v.clone());
    Ok(v)
}

/// Product over the target flags at `pi(V)` of `prod_w (mult of w)!`.
pub fn combinatorial_factor(p: &GraphCover, v: usize) -> BigInt {
    p.local_profiles(v)
        .iter()
        .flat_map(|(_, part)| part.multiplicities())
        .fold(BigInt::one(), |acc, (_, c)| acc * factorial(c as u64))
}

/// Hurwitz number of the local profiles at source vertex `V`.
pub fn local_hurwitz(p: &GraphCover, v: usize) -> Result<Q> {
    let profiles: Vec<Partition> = p.local_profiles(v).into_iter().map(|(_, q)| q).collect();
    hurwitz_number(p.degrees[v], &profiles)
}

/// Brute force without the class-representative shortcut, for testing.
#[doc(hidden)]
pub fn hurwitz_number_naive(d: u32, profiles: &[Partition]) -> Result<Q> {
    check(d, profiles, 5)?;
    let perms = all_perms(d as usize);
    let k = profiles.len();
    let mut count = 0u64;
    let mut idx = vec![0usize; k];
    loop {
        let tuple: Vec<&[u8]> = idx.iter().map(|&i| perms[i].as_slice()).collect();
        if tuple.iter().zip(profiles).all(|(p, q)| cycle_type(p) == q.parts()) {
            let prod = tuple.iter().fold((0..d as u8).collect::<Perm>(), |acc, p| compose(&acc, p));
            if prod.iter().enumerate().all(|(j, &x)| j == x as usize) && transitive(&tuple, d as usize) {
                count += 1;
            }
        }
        let mut j = 0;
        loop {
            if j == k {
                return Ok(Q::new(count.into(), factorial(d as u64)));
            }
            idx[j] += 1;
            if idx[j] < perms.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn spot_values() {
        assert_eq!(hurwitz_number(2, &[p(&[2]), p(&[1, 1]), p(&[2])]).unwrap(), q_frac(1, 2));
        assert_eq!(hurwitz_number(3, &[p(&[2, 1]), p(&[2, 1]), p(&[3])]).unwrap(), q_frac(1, 1));
        for d in 1..=6 {
            let ones = Partition::ones(d);
            let full = p(&[d]);
            assert_eq!(hurwitz_number(d, &[ones, full.clone(), full]).unwrap(), q_frac(1, d as i64));
        }
        // no cover: cycle types violate Riemann-Hurwitz
        assert_eq!(hurwitz_number(3, &[p(&[3]), p(&[2, 1])]).unwrap(), q_frac(0, 1));
    }

    #[test]
    fn errors() {
        assert!(matches!(hurwitz_number(2, &[p(&[2]), p(&[3])]), Err(Error::Parameters(_))));
        assert!(matches!(hurwitz_number(9, &[p(&[9]), p(&[9])]), Err(Error::DegreeBound { d: 9, bound: 6 })));
    }

    #[test]
    fn matches_naive_count() {
        let cases: Vec<(u32, Vec<Partition>)> = vec![
            (2, vec![p(&[2]), p(&[2]), p(&[1, 1]), p(&[1, 1])]),
            (3, vec![p(&[2, 1]), p(&[2, 1]), p(&[2, 1]), p(&[2, 1])]),
            (3, vec![p(&[3]), p(&[2, 1]), p(&[2, 1]), p(&[1, 1, 1])]),
            (4, vec![p(&[2, 2]), p(&[3, 1]), p(&[3, 1])]),
            (4, vec![p(&[2, 1, 1]), p(&[2, 1, 1]), p(&[4])]),
        ];
        for (d, prof) in cases {
            assert_eq!(hurwitz_number(d, &prof).unwrap(), hurwitz_number_naive(d, &prof).unwrap(), "{prof:?}");
        }
    }
}
