//! CoNLL-U ingestion and non-projectivity statistics.
//!
//! Reads an embedded treebank fragment (one projective sentence, one with
//! crossing arcs, one multiword-token line, one broken sentence) and prints
//! what a corpus run reports.
//!
//! ```bash
//! cargo run --example treebank_stats
//! ```

use std::io::Cursor;

use nonproj::treebank::read_conllu;

const SAMPLE: &str = "\
# sent_id = projective
1\tthe\t_\tDET\t_\t_\t2\tdet\t_\t_
2\tparser\t_\tNOUN\t_\t_\t3\tnsubj\t_\t_
3\truns\t_\tVERB\t_\t_\t0\troot\t_\t_

# sent_id = crossing (a hearing on the issue ... scheduled)
1\thearing\t_\tNOUN\t_\t_\t3\tnsubj\t_\t_
2\tis\t_\tAUX\t_\t_\t4\taux\t_\t_
3\tscheduled\t_\tVERB\t_\t_\t0\troot\t_\t_
4\ttoday\t_\tNOUN\t_\t_\t3\tobl\t_\t_

# sent_id = with-multiword-token
1-2\tdu\t_\t_\t_\t_\t_\t_\t_\t_
1\tde\t_\tADP\t_\t_\t3\tcase\t_\t_
2\tle\t_\tDET\t_\t_\t3\tdet\t_\t_
3\tmonde\t_\tNOUN\t_\t_\t0\troot\t_\t_

# sent_id = cyclic-annotation-error
1\ta\t_\t_\t_\t_\t2\t_\t_\t_
2\tb\t_\t_\t_\t_\t1\t_\t_\t_
";

fn main() {
    let outcome = read_conllu(Cursor::new(SAMPLE)).unwrap();

    println!("sentences read: {}", outcome.trees.len());
    for (idx, (sentence, tree)) in outcome.trees.iter().enumerate() {
        println!(
            "  #{} n={} heads {} non-projective: {}",
            idx + 1,
            sentence.len(),
            tree,
            tree.is_nonprojective()
        );
    }
    println!("excluded: {}", outcome.excluded.len());
    for ex in &outcome.excluded {
        println!(
            "  sentence {} (line {}): {}",
            ex.sentence, ex.line, ex.reason
        );
    }

    let total = outcome.trees.len();
    let nonproj = outcome
        .trees
        .iter()
        .filter(|(_, t)| t.is_nonprojective())
        .count();
    println!(
        "\n{} {} {:.2}%",
        total,
        nonproj,
        100.0 * nonproj as f64 / total as f64
    );
}
