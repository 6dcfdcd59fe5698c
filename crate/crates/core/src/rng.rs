//! Seeded random streams.
//!
//! Every random draw in the crate comes from ChaCha8 (`rand_chacha`), keyed by
//! `seed_from_u64(seed)` and positioned on a 64-bit stream id. ChaCha is a
//! counter-based cipher, so a `(seed, stream)` pair identifies the same
//! sequence on every platform. Stream ids are assigned as follows:
//!
//! * `distributions::sample` uses stream `0`;
//! * Monte Carlo replication `r` of the series indexed by `tag` uses
//!   [`replication_stream`]`(tag, r)`.
//!
//! Changing this layout changes every seeded output and requires a version bump.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for one `(seed, stream)` pair.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream id of replication `replication` in series `tag`.
///
/// The tag occupies the high 24 bits and the replication the low 40 bits;
/// stream `0` stays reserved for one-off samples.
pub fn replication_stream(tag: u64, replication: u64) -> u64 {
    debug_assert!(tag < (1 << 24) && replication < (1 << 40));
    ((tag + 1) << 40) | replication
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_distinct_and_repeatable() {
        let a: u64 = stream_rng(7, 0).random();
        let b: u64 = stream_rng(7, 0).random();
        let c: u64 = stream_rng(7, 1).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(replication_stream(0, 0), 0);
        assert_ne!(replication_stream(1, 0), replication_stream(0, 1));
    }
}
