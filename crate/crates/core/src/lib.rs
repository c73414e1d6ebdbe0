//! Partial silting modules, ring epimorphisms and support tilting lattices
//! over finite-dimensional path algebras, computed exactly over `F_p`.

pub mod algebra;
pub mod catalog;
pub mod epi;
pub mod error;
pub mod hereditary;
pub mod linalg;
pub mod par;
pub mod rep;
pub mod scenario;
pub mod silting;

pub use error::{Error, Result};

use linalg::{Field, DEFAULT_PRIME};

/// Session-wide knobs. One value is threaded through every computation that
/// needs randomness, bounds or the modulus.
#[derive(Clone, Debug)]
pub struct Config {
    pub field: Field,
    /// Cap on module and endomorphism-algebra dimensions. Must stay below `p`.
    pub max_dim: usize,
    pub length_bound: usize,
    pub iso_trials: usize,
    pub seed: u64,
    pub homological_bound: usize,
    pub catalog_bound: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            field: Field::default_prime(),
            max_dim: 2000,
            length_bound: 64,
            iso_trials: 8,
            seed: 0x5eed,
            homological_bound: 8,
            catalog_bound: 400,
        }
    }
}

impl Config {
    /// Default configuration with `SILTLAB_MAX_DIM` applied.
    pub fn from_env() -> Result<Self> {
        let mut c = Config::default();
        if let Ok(v) = std::env::var("SILTLAB_MAX_DIM") {
            c.max_dim = v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("SILTLAB_MAX_DIM must be a positive integer, got `{v}`")))?;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn with_prime(mut self, p: u32) -> Result<Self> {
        self.field = Field::new(p)?;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.field.p() as usize <= self.max_dim {
            return Err(Error::Config(format!(
                "modulus {} must exceed the dimension cap {} (default modulus is {})",
                self.field.p(),
                self.max_dim,
                DEFAULT_PRIME
            )));
        }
        Ok(())
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<()> {
        if d > self.max_dim {
            return Err(Error::DimensionBound { got: d, bound: self.max_dim });
        }
        Ok(())
    }

    pub(crate) fn rng(&self) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(self.seed)
    }
}
