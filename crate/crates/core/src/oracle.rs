//! Exact Reed-Frost chain-binomial probabilities for small populations.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};
use crate::numeric::NeumaierSum;

/// Largest `s0 + i0` accepted by the exact computations.
pub const ENUMERATION_LIMIT: u64 = 25;

/// An outbreak chain `(i_0, ..., i_K)` with `i_K = 0` and its probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub chain: Vec<u64>,
    pub probability: f64,
}

impl ChainRecord {
    /// Susceptibles infected over the whole chain.
    pub fn final_size(&self) -> u64 {
        self.chain[1..].iter().sum()
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("p must be in [0, 1], got {p}")));
    }
    Ok(())
}

fn check_size(s0: u64, i0: u64) -> Result<()> {
    let total = s0 + i0;
    if total > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { total, limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

/// `x ln y` with the convention `0 ln 0 = 0`.
fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

/// Log-probability that `k` of `s` susceptibles are hit by `i` infectives.
fn ln_generation(s: u64, i: u64, k: u64, p: f64) -> f64 {
    // Escape probability q^i = (1 - p)^i, computed in log space.
    let ln_escape = xlny(i as f64, 1.0 - p);
    let ln_hit = if ln_escape == f64::NEG_INFINITY {
        0.0
    } else {
        (-ln_escape.exp_m1()).ln()
    };
    let hit_term = if k == 0 { 0.0 } else { k as f64 * ln_hit };
    let escape_term = if s == k { 0.0 } else { (s - k) as f64 * ln_escape };
    ln_binomial(s, k) + hit_term + escape_term
}

/// Probability of the generation sizes `chain = (i_0, ..., i_K)` starting with
/// `s0` susceptibles and `i0` infectives, each contact infecting with prob `p`.
pub fn chain_probability(s0: u64, i0: u64, p: f64, chain: &[u64]) -> Result<f64> {
    check_p(p)?;
    let infeasible = |why: &str| Err(Error::InfeasibleChain(format!("{chain:?}: {why}")));
    if chain.len() < 2 {
        return infeasible("needs at least the initial generation and a terminating zero");
    }
    if chain[0] != i0 || i0 == 0 {
        return infeasible("first generation must equal the positive initial infectives");
    }
    if *chain.last().unwrap() != 0 {
        return infeasible("must end with an empty generation");
    }
    if chain[..chain.len() - 1].contains(&0) {
        return infeasible("only the last generation may be empty");
    }
    let mut s = s0;
    let mut ln_p = 0.0;
    for w in chain.windows(2) {
        let (i, next) = (w[0], w[1]);
        if next > s {
            return infeasible("more infections than remaining susceptibles");
        }
        ln_p += ln_generation(s, i, next, p);
        s -= next;
    }
    Ok(ln_p.exp())
}

/// Every feasible chain for `(s0, i0)` with its probability.
pub fn enumerate_chains(s0: u64, i0: u64, p: f64) -> Result<Vec<ChainRecord>> {
    check_p(p)?;
    check_size(s0, i0)?;
    if i0 == 0 {
        return Err(Error::domain("need at least one initial infective"));
    }
    fn extend(s: u64, p: f64, ln_p: f64, chain: &mut Vec<u64>, out: &mut Vec<ChainRecord>) {
        let i = *chain.last().unwrap();
        for k in 0..=s {
            let ln_next = ln_p + ln_generation(s, i, k, p);
            chain.push(k);
            if k == 0 {
                out.push(ChainRecord { chain: chain.clone(), probability: ln_next.exp() });
            } else {
                extend(s - k, p, ln_next, chain, out);
            }
            chain.pop();
        }
    }
    let mut out = Vec::new();
    extend(s0, p, 0.0, &mut vec![i0], &mut out);
    Ok(out)
}

/// Exact law of the number of initial susceptibles eventually infected,
/// indexed `0..=s0`.
pub fn final_size_distribution(s0: u64, i0: u64, p: f64) -> Result<Vec<f64>> {
    check_p(p)?;
    check_size(s0, i0)?;
    if i0 == 0 {
        return Err(Error::domain("need at least one initial infective"));
    }
    let mut memo = HashMap::new();
    Ok(further_infections(s0, i0, p, &mut memo))
}

/// Law of further infections from `s` susceptibles and `i` current infectives.
fn further_infections(s: u64, i: u64, p: f64, memo: &mut HashMap<(u64, u64), Vec<f64>>) -> Vec<f64> {
    if let Some(v) = memo.get(&(s, i)) {
        return v.clone();
    }
    let mut acc = vec![NeumaierSum::default(); s as usize + 1];
    if i == 0 {
        acc[0].add(1.0);
    } else {
        for k in 0..=s {
            let w = ln_generation(s, i, k, p).exp();
            if w == 0.0 {
                continue;
            }
            if k == 0 {
                acc[0].add(w);
                continue;
            }
            let rest = further_infections(s - k, k, p, memo);
            for (j, q) in rest.iter().enumerate() {
                acc[k as usize + j].add(w * q);
            }
        }
    }
    let v: Vec<f64> = acc.iter().map(NeumaierSum::value).collect();
    memo.insert((s, i), v.clone());
    v
}
