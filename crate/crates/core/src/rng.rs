//! Seeded random streams.
//!
//! All randomness comes from `ChaCha8Rng`. A master seed fans out into
//! independent labeled streams (ChaCha stream ids), so that e.g. swapping the
//! clusterer never perturbs the sampled nodes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Sampling,
    Features,
    Clusterer,
    Generator,
}

impl Stream {
    fn id(self) -> u64 {
        match self {
            Stream::Sampling => 1,
            Stream::Features => 2,
            Stream::Clusterer => 3,
            Stream::Generator => 4,
        }
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn substream(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream.id());
    rng
}

/// Derives a plain `u64` seed for APIs that take one.
pub fn substream_seed(seed: u64, stream: Stream) -> u64 {
    use rand::Rng;
    substream(seed, stream).random()
}
