//! Arc-scored Viterbi parsing from the text score format.
//!
//! The score file rewards the arcs of a crossing tree. A degree-2 system
//! finds it; the projective baseline has to settle for the best
//! crossing-free alternative.
//!
//! ```bash
//! cargo run --example weighted_parse
//! ```

use std::io::Cursor;

use nonproj::chart::{viterbi_parse, ScoreMatrix};
use nonproj::transition::TransitionSystem;

const SCORES: &str = "\
# rewards the crossing tree {1->3, 2->4, 3->0, 4->3};
# every other legal arc scores 0
n 4
3 1 1
4 2 1
0 3 1
3 4 1
0 1 0
0 2 0
0 4 0
1 2 0
1 3 0
1 4 0
2 1 0
2 3 0
2 4 0
4 1 0
4 3 0
3 2 0
1 0 0
";

fn main() {
    // the `1 0 0` line is rejected: the root never takes a head
    let matrix = match ScoreMatrix::from_reader(Cursor::new(SCORES)) {
        Ok(m) => m,
        Err(e) => {
            println!("score file rejected: {e}");
            let cleaned: String = SCORES
                .lines()
                .filter(|l| *l != "1 0 0")
                .collect::<Vec<_>>()
                .join("\n");
            ScoreMatrix::from_reader(Cursor::new(cleaned)).unwrap()
        }
    };

    for sys in [
        TransitionSystem::attardi2(),
        TransitionSystem::arc_standard(),
    ] {
        let parse = viterbi_parse(&sys, &matrix, matrix.n()).unwrap();
        println!(
            "{:<12} best tree {} score {} (non-projective: {})",
            sys.name(),
            parse.tree,
            parse.score,
            parse.tree.is_nonprojective()
        );
    }
}
