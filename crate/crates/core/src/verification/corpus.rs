use crate::error::{Error, Result};
use crate::monomial::{ExponentVector, MonomialIdeal};

/// Parameters of a reproducible random corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub n: usize,
    pub max_generators: u32,
    pub max_exponent: u32,
    pub require_primary: bool,
    pub count: usize,
}

impl CorpusConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidArgument("corpus dimension must be at least 1".into()));
        }
        if self.max_generators < 1 || self.max_exponent < 1 {
            return Err(Error::InvalidArgument("max_generators and max_exponent must be at least 1".into()));
        }
        Ok(())
    }
}

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

/// 64-bit LCG emitting the high 32 bits of its state.
struct Lcg(u64);

impl Lcg {
    fn seeded(seed: u64, index: u64) -> Self {
        let mut g = Lcg(seed);
        g.step();
        g.0 = g.0.wrapping_add(index);
        for _ in 0..4 {
            g.step();
        }
        g
    }

    fn step(&mut self) {
        self.0 = self.0.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
    }

    fn next(&mut self) -> u32 {
        self.step();
        (self.0 >> 32) as u32
    }
}

pub fn random_ideal(cfg: &CorpusConfig, index: u64) -> Result<MonomialIdeal> {
    cfg.validate()?;
    let n = cfg.n;
    let mut g = Lcg::seeded(cfg.seed, index);
    let count = 1 + g.next() % cfg.max_generators;
    let mut gens = Vec::with_capacity(count as usize + n);
    for _ in 0..count {
        let mut e: Vec<u32> = (0..n).map(|_| g.next() % (cfg.max_exponent + 1)).collect();
        if e.iter().all(|&v| v == 0) {
            e[g.next() as usize % n] = 1;
        }
        gens.push(ExponentVector::new(e));
    }
    if cfg.require_primary {
        for i in 0..n {
            gens.push(ExponentVector::unit(n, i, cfg.max_exponent));
        }
    }
    MonomialIdeal::new(n, gens)
}

/// Ideals `0..count` of the configured corpus.
pub fn corpus(cfg: &CorpusConfig) -> Result<Vec<MonomialIdeal>> {
    (0..cfg.count as u64).map(|i| random_ideal(cfg, i)).collect()
}
