//! Double description: from `{x : a·x ≥ 0 (a ∈ A), e·x = 0 (e ∈ E)}` to a
//! lineality basis plus extreme rays.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{dot, is_zero_vec, neg, primitive, ZVec};

pub(crate) struct Generators {
    pub lineality: Vec<ZVec>,
    pub rays: Vec<ZVec>,
}

pub(crate) fn double_description(ineqs: &[ZVec], eqs: &[ZVec], n: usize) -> Generators {
    let mut constraints: Vec<ZVec> = Vec::with_capacity(ineqs.len() + 2 * eqs.len());
    for e in eqs {
        constraints.push(e.clone());
        constraints.push(neg(e));
    }
    constraints.extend(ineqs.iter().cloned());
    constraints.retain(|a| !is_zero_vec(a));

    let mut lineality: Vec<ZVec> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<ZVec> = Vec::new();

    for (step, a) in constraints.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l = neg(&l);
                al = -al;
            }
            for lp in lineality.iter_mut() {
                let alp = dot(a, lp);
                if !alp.is_zero() {
                    *lp = primitive(&combine(&al, lp, &alp, &l));
                }
            }
            for r in rays.iter_mut() {
                let ar = dot(a, r);
                if !ar.is_zero() {
                    *r = primitive(&combine(&al, r, &ar, &l));
                }
            }
            rays.push(primitive(&l));
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            continue;
        }
        let processed = &constraints[..step];
        let zero_sets: Vec<Vec<bool>> = rays
            .iter()
            .map(|r| processed.iter().map(|c| dot(c, r).is_zero()).collect())
            .collect();

        let mut next: Vec<ZVec> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_negative() {
                next.push(r.clone());
            }
        }
        let positives: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let negatives: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        for &p in &positives {
            for &q in &negatives {
                if !adjacent(p, q, &zero_sets) {
                    continue;
                }
                // (a·p) q − (a·q) p
                let v = combine(&vals[p], &rays[q], &vals[q], &rays[p]);
                next.push(primitive(&v));
            }
        }
        rays = next;
    }

    Generators { lineality, rays }
}

/// `x·u − y·v`
fn combine(x: &BigInt, u: &[BigInt], y: &BigInt, v: &[BigInt]) -> ZVec {
    u.iter().zip(v).map(|(ui, vi)| x * ui - y * vi).collect()
}

fn adjacent(p: usize, q: usize, zero_sets: &[Vec<bool>]) -> bool {
    let common: Vec<usize> = (0..zero_sets[p].len())
        .filter(|&j| zero_sets[p][j] && zero_sets[q][j])
        .collect();
    !zero_sets
        .iter()
        .enumerate()
        .any(|(k, z)| k != p && k != q && common.iter().all(|&j| z[j]))
}
