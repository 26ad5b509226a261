//! Tabular gold-constrained recognition.
//!
//! Feeds the same trees to every preset's chart and shows which engine the
//! automatic mode picks. Systems that never reduce s2 run collapsed
//! (4-index items); the rest use the general 5-index hook-trick engine.
//!
//! ```bash
//! cargo run --example recognition
//! ```

use nonproj::chart::{compile_rules, run_chart, ArcScores, Mode};
use nonproj::transition::TransitionSystem;
use nonproj::tree::DepTree;

fn main() {
    let trees = [
        ("chain", DepTree::new(vec![0, 1, 2]).unwrap()),
        ("crossing", DepTree::new(vec![3, 4, 0, 3]).unwrap()),
        (
            "double-crossing",
            DepTree::new(vec![3, 4, 5, 0, 4]).unwrap(),
        ),
    ];

    println!(
        "{:<12} {:<10} {:>16} {:>16} {:>18}",
        "system", "engine", trees[0].0, trees[1].0, trees[2].0
    );
    for sys in TransitionSystem::standard_presets() {
        let collapsed = compile_rules(&sys).unwrap().collapsed_eligible();
        let mut cells = Vec::new();
        for (_, tree) in &trees {
            let run = run_chart(Mode::Auto, &sys, ArcScores::Gold(tree), tree.len()).unwrap();
            cells.push(format!("{} ({} items)", run.accepted, run.items));
        }
        println!(
            "{:<12} {:<10} {:>16} {:>16} {:>18}",
            sys.name(),
            if collapsed { "collapsed" } else { "general" },
            cells[0],
            cells[1],
            cells[2]
        );
    }
}
