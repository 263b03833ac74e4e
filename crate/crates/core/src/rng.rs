//! Named random sub-streams derived from one master seed.
//!
//! Each subsystem draws from its own ChaCha stream, so extra draws in one
//! subsystem never shift another's sequence.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    TrainInputs = 1,
    TestInputs = 2,
    Noise = 3,
    Covering = 4,
    Ga = 5,
    Deletion = 6,
    CvShuffle = 7,
}

pub fn stream(seed: u64, which: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(which as u64);
    rng
}

/// The random streams consumed by the learning loop itself.
#[derive(Debug, Clone)]
pub struct LearnerRng {
    pub covering: ChaCha8Rng,
    pub ga: ChaCha8Rng,
    pub deletion: ChaCha8Rng,
}

impl LearnerRng {
    pub fn new(seed: u64) -> Self {
        LearnerRng {
            covering: stream(seed, Stream::Covering),
            ga: stream(seed, Stream::Ga),
            deletion: stream(seed, Stream::Deletion),
        }
    }
}
