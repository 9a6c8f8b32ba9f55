//! Random generators and the executable law suite.

mod gen;
mod suite;

pub use gen::{
    gen_hom_onto, gen_hom_onto_with, gen_network, gen_network_with, gen_relation_function, shuffle_names, GenConfig,
    Sizes,
};
pub use suite::{
    law_ids, replay, run_law_suite, run_law_suite_with, run_laws, CheckerMutation, Counterexample, LawResult,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// An independent, reproducible generator for one case of one family, so
/// running cases in parallel cannot change their instances.
pub fn case_rng(seed: u64, family: &str, case: u64) -> ChaCha8Rng {
    let label = family.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(splitmix(splitmix(seed ^ label).wrapping_add(case)))
}
