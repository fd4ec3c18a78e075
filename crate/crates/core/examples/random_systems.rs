//! Solves seeded random systems and checks each result with the oracle.

use lpcad::cli::{oracle_check, random_system, RandomShape};
use lpcad::lpcad::{solve, LpcadOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for nvars in 1..=3 {
        for _ in 0..3 {
            let shape = RandomShape { nvars, min_terms: 2, max_terms: 4, coeff_bits: 4, degree: 2 };
            let (vars, s) = random_system(&shape, &mut rng);
            let (f, st) = solve(&s, &vars, &LpcadOptions::default()).unwrap();
            let ok = oracle_check(&s, &f, nvars, 2_000, seed).passed();
            println!("{:<50} cells {:>4}  oracle {}", s.render(&vars), st.cells, if ok { "ok" } else { "MISMATCH" });
        }
    }
}
