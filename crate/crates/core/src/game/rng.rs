use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Per-game ChaCha8 stream. Serializes as its seed plus the word position,
/// so a restored game continues with exactly the same draws.
#[derive(Clone, Debug)]
pub struct GameRng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl GameRng {
    pub fn new(seed: u64) -> Self {
        GameRng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn word_pos(&self) -> u128 {
        self.inner.get_word_pos()
    }

    fn at(seed: u64, word_pos: u128) -> Self {
        let mut rng = GameRng::new(seed);
        rng.inner.set_word_pos(word_pos);
        rng
    }
}

impl PartialEq for GameRng {
    fn eq(&self, other: &Self) -> bool {
        self.seed == other.seed && self.word_pos() == other.word_pos()
    }
}

impl Eq for GameRng {}

impl RngCore for GameRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

#[derive(Serialize, Deserialize)]
struct RngRepr {
    seed: u64,
    // decimal string: JSON numbers cannot carry a full u128
    word_pos: String,
}

impl Serialize for GameRng {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RngRepr {
            seed: self.seed,
            word_pos: self.word_pos().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GameRng {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RngRepr::deserialize(d)?;
        let pos: u128 = repr
            .word_pos
            .parse()
            .map_err(|_| serde::de::Error::custom("word_pos must be a decimal integer"))?;
        Ok(GameRng::at(repr.seed, pos))
    }
}
