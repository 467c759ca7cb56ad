//! Independent oracles shared by the integration suites.

#![allow(dead_code)]

use cai_core::algebra::{Rational, TowerPoly, UniPoly};
use cai_core::PuiseuxChain;
use num_traits::{One, Zero};

pub fn chain(pairs: &[(u64, u64)]) -> PuiseuxChain {
    PuiseuxChain::new(pairs.to_vec()).unwrap()
}

fn divisor_sequences(n: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for f in (2..=n).filter(|&f| n.is_multiple_of(f)) {
        for rest in divisor_sequences(n / f) {
            let mut v = vec![f];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// All pair lists of the degree with each `p_k` below its determinant
/// bound, kept when `validate` accepts them.
pub fn brute_force_chains(degree: u64) -> Vec<PuiseuxChain> {
    fn go(qs: &[u64], acc: &mut Vec<(u64, u64)>, out: &mut Vec<PuiseuxChain>) {
        if acc.len() == qs.len() {
            let c = PuiseuxChain::new(acc.clone()).unwrap();
            if c.is_valid() {
                out.push(c);
            }
            return;
        }
        let q = qs[acc.len()];
        let bound = match acc.last() {
            None => q,
            Some(&(p, pq)) => p * pq * q,
        };
        for p in 1..bound {
            acc.push((p, q));
            go(qs, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    for qs in divisor_sequences(degree) {
        go(&qs, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Gap count of the numerical semigroup generated by `gens` (gcd one), by
/// sieving well past Schur's bound `(min - 1)(max - 1)` on the largest gap.
pub fn gap_count(gens: &[u64]) -> u64 {
    let largest = *gens.iter().max().unwrap();
    let limit = (largest * largest * 4 + 16) as usize;
    let mut member = vec![false; limit];
    member[0] = true;
    for v in 1..limit {
        member[v] = gens.iter().any(|&g| v as u64 >= g && member[v - g as usize]);
    }
    member.iter().filter(|&&m| !m).count() as u64
}

/// Self-linking numbers by the cabling recursion `l_{k+1} = q l_k + q p - p`.
pub fn self_linking(c: &PuiseuxChain) -> Vec<i64> {
    let mut l = vec![(c.p(1) * c.q(1) - c.q(1)) as i64];
    for k in 2..=c.len() {
        let (p, q) = (c.p(k) as i64, c.q(k) as i64);
        let prev = *l.last().unwrap();
        l.push(q * prev + q * p - p);
    }
    l
}

fn rank_nullspace(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (v, pv) in rows[i].iter_mut().zip(&pivot) {
                    *v -= pv * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][f].clone();
            }
            v
        })
        .collect()
}

/// Implicitises `(x(t), y(t))` by solving for the kernel of the evaluation
/// map on monomials `x^i y^j` with `i deg x + j deg y ≤ deg x deg y`.
/// Returns the kernel basis, each vector as a polynomial over `(x, y)`.
pub fn implicitize(x: &UniPoly, y: &UniPoly) -> Vec<TowerPoly> {
    let n = x.degree().unwrap();
    let m = y.degree().unwrap();
    let mut monos = Vec::new();
    for i in 0..=m {
        for j in 0..=n {
            if i * n + j * m <= n * m {
                monos.push((i as u32, j as u32));
            }
        }
    }
    let evals: Vec<UniPoly> = monos.iter().map(|&(i, j)| &x.pow(i) * &y.pow(j)).collect();
    let rows: Vec<Vec<Rational>> = (0..=n * m).map(|r| evals.iter().map(|e| e.coeff(r)).collect()).collect();
    rank_nullspace(rows, monos.len())
        .into_iter()
        .map(|v| {
            let mut p = TowerPoly::zero(&["x", "y"]);
            for (&(i, j), c) in monos.iter().zip(v) {
                p.add_term(vec![i, j], c);
            }
            p
        })
        .collect()
}

/// Curves with known chains: pure cusps, perturbations and the worked
/// example.
pub fn handwritten_curves() -> Vec<(&'static str, &'static str)> {
    vec![
        ("t^3", "t^2"),
        ("t^5", "t^2"),
        ("t^5 + t", "t^3"),
        ("t^7", "t^3 + t"),
        ("t^4 + t", "t^3"),
        ("t^6 + t", "t^4"),
        ("t^6 + t^3", "t^4 + t"),
        ("t^6", "t^4 + t"),
        ("t^6 + t", "t^4 + t^2"),
        ("t^12 + t", "t^8 + t^2"),
        ("t^8 + t^3", "t^6 + t"),
        ("t^2 + t^7", "t^5"),
        ("2*t^9 - t^2", "t^6 + t^5"),
        ("t^10 + t^3", "t^4 + t"),
    ]
}
