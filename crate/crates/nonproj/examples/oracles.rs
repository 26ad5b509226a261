//! Oracles at work: which systems can derive which trees?
//!
//! Runs the greedy and exact oracles on a crossing tree, then counts, for
//! every preset, how many of the 125 four-token trees are derivable — and
//! how many of the non-projective ones.
//!
//! ```bash
//! cargo run --example oracles
//! ```

use nonproj::oracle::{exact_oracle, greedy_oracle, reachable_trees};
use nonproj::transition::TransitionSystem;
use nonproj::tree::{enumerate_trees, DepTree};

fn main() {
    let crossing = DepTree::new(vec![3, 4, 0, 3]).unwrap();
    println!(
        "gold tree {} (non-projective: {})\n",
        crossing,
        crossing.is_nonprojective()
    );

    for sys in TransitionSystem::standard_presets() {
        match greedy_oracle(&sys, &crossing) {
            Some(seq) => {
                let rendered: Vec<String> = seq.iter().map(|t| t.to_string()).collect();
                println!(
                    "{:<12} greedy derivation: {}",
                    sys.name(),
                    rendered.join(" ")
                );
            }
            None => {
                let exact = exact_oracle(&sys, &crossing, 100_000).unwrap();
                println!(
                    "{:<12} greedy fails; exact oracle says derivable = {}",
                    sys.name(),
                    exact
                );
            }
        }
    }

    println!("\nderivable trees on 4 tokens (125 total):");
    println!("{:<12} {:>5} {:>13}", "system", "all", "non-projective");
    let trees = enumerate_trees(4);
    let nonproj = trees.iter().filter(|t| t.is_nonprojective()).count();
    for sys in TransitionSystem::standard_presets() {
        let reach = reachable_trees(&sys, 4).unwrap();
        let covered_np = reach.iter().filter(|t| t.is_nonprojective()).count();
        println!(
            "{:<12} {:>5} {:>8}/{}",
            sys.name(),
            reach.len(),
            covered_np,
            nonproj
        );
    }
}
