//! Step-by-step execution of a transition sequence.
//!
//! Derives the crossing tree {1->3, 2->4, 3->0, 4->3} with the degree-2
//! system, printing the configuration after every transition.
//!
//! ```bash
//! cargo run --example transitions
//! ```

use nonproj::transition::{Configuration, ReduceTransition, Slot, Transition};
use nonproj::tree::DepTree;

fn main() {
    let n = 4;
    let re = |h, m| Transition::Reduce(ReduceTransition::new(h, m).unwrap());
    let sequence = [
        Transition::Shift,
        Transition::Shift,
        Transition::Shift,
        Transition::Shift,
        re(Slot::S0, Slot::S2),
        Transition::Shift,
        re(Slot::S0, Slot::S2),
        re(Slot::S1, Slot::S0),
        re(Slot::S1, Slot::S0),
    ];

    let mut config = Configuration::initial(n).unwrap();
    println!("{:<12} {:<18} {:<10} arcs", "transition", "stack", "buffer");
    print_config("(start)", &config);
    for t in sequence {
        config = config.apply(t).unwrap();
        print_config(&t.to_string(), &config);
    }

    assert!(config.is_terminal());
    let tree = DepTree::from_arcs(n, config.arcs()).unwrap();
    println!("\nderived tree: {}", tree);
    println!("non-projective: {}", tree.is_nonprojective());
}

fn print_config(label: &str, c: &Configuration) {
    let stack: Vec<String> = c.stack().iter().map(|x| x.to_string()).collect();
    let buffer: Vec<String> = (c.buffer_start()..=c.n()).map(|x| x.to_string()).collect();
    let arcs: Vec<String> = c.arcs().iter().map(|a| a.to_string()).collect();
    println!(
        "{:<12} [{:<16}] [{:<8}] {{{}}}",
        label,
        stack.join(","),
        buffer.join(","),
        arcs.join(", ")
    );
}
