use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One generation of the chain binomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainState {
    pub generation: u32,
    /// Infected in this generation.
    pub infected: u64,
    /// Still susceptible after this generation.
    pub susceptible: u64,
}

/// Discrete-time Reed-Frost epidemic:
/// `I_{k+1} ~ Bin(s_k, 1 - (1-p)^{i_k})`, `s_{k+1} = s_k - I_{k+1}`,
/// iterated until a generation is empty. The returned chain starts with
/// generation 0 `(i0, s0)` and ends with the first empty generation.
pub fn simulate_reed_frost<R: Rng + ?Sized>(
    s0: u64,
    i0: u64,
    p: f64,
    rng: &mut R,
) -> Result<Vec<ChainState>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("transmission probability p = {p} outside [0, 1]")));
    }
    if i0 == 0 {
        return Err(Error::domain("need at least one initial infective"));
    }
    let escape = 1.0 - p;
    let mut chain = vec![ChainState {
        generation: 0,
        infected: i0,
        susceptible: s0,
    }];
    let mut state = chain[0];
    while state.infected > 0 {
        let hit = 1.0 - escape.powi(state.infected.min(i32::MAX as u64) as i32);
        let next = if state.susceptible == 0 || hit <= 0.0 {
            0
        } else {
            Binomial::new(state.susceptible, hit.min(1.0))
                .map_err(|e| Error::domain(e.to_string()))?
                .sample(rng)
        };
        state = ChainState {
            generation: state.generation + 1,
            infected: next,
            susceptible: state.susceptible - next,
        };
        chain.push(state);
    }
    Ok(chain)
}

/// Total infected after generation 0.
pub fn chain_final_size(chain: &[ChainState]) -> u64 {
    chain.iter().skip(1).map(|c| c.infected).sum()
}
