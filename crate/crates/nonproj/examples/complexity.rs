//! Empirical complexity of exact inference.
//!
//! Builds the full chart (every arc admitted) at growing lengths and fits
//! log-log slopes to the stored-signature and rule-evaluation counts. The
//! full 9-transition system tabulates in O(n^7) time / O(n^5) space; the
//! variant without s2-reductions drops to O(n^6) / O(n^4).
//!
//! ```bash
//! cargo run --release --example complexity
//! ```

use nonproj::chart::chart_metrics;
use nonproj::transition::TransitionSystem;

fn slope(ns: &[usize], ys: &[u64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|&v| (v as f64).ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|&v| (v as f64).ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ly.iter().sum::<f64>() / ly.len() as f64;
    let num: f64 = xs.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

fn main() {
    let ns = [6usize, 8, 10, 12, 14];
    for sys in [
        TransitionSystem::arc_standard(),
        TransitionSystem::attardi2(),
        TransitionSystem::all_deg1(),
        TransitionSystem::all(),
        TransitionSystem::all_s0s1(),
    ] {
        let mut items = Vec::new();
        let mut apps = Vec::new();
        print!("{:<12}", sys.name());
        for &n in &ns {
            let m = chart_metrics(&sys, n).unwrap();
            items.push(m.items);
            apps.push(m.applications);
            print!(" n={}: {}/{}", n, m.items, m.applications);
        }
        println!();
        println!(
            "{:<12} space slope {:.2}, time slope {:.2}, collapsed eligible: {}",
            "",
            slope(&ns, &items),
            slope(&ns, &apps),
            chart_metrics(&sys, 6).unwrap().collapsed_eligible
        );
    }
}
