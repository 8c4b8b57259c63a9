// Scratch batch probe: classify N seeded runs end-to-end.
// Run with: cargo run --release --example batch_probe [n] [ticks]

use rayon::prelude::*;
use topomon::entropy::entropy_series;
use topomon::filtration::{build_clique_filtration, WeightOrder};
use topomon::monitor::{classify_trace, label_execution, GroupCounts, Mpea, TraceGroup};
use topomon::pea::idiotypic_pea;
use topomon::pelts::execute;
use topomon::persistence::compute_persistence;
use topomon::sim::{simulate, snapshot_graphs, SimConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let ticks: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2190);

    let pea = idiotypic_pea::<f64>(1e-9, true);
    let mpea = Mpea::with_natural_labeling(pea.clone()).unwrap();

    let t0 = std::time::Instant::now();
    let groups: Vec<(u64, TraceGroup)> = (0..n)
        .into_par_iter()
        .map(|seed| {
            let mut cfg = SimConfig::default();
            cfg.seed = seed;
            cfg.ticks = ticks;
            let run = simulate::<f64>(&cfg).unwrap();
            let graphs = snapshot_graphs(&run, cfg.min_match).unwrap();
            let barcodes = graphs.iter().map(|g| {
                let f = build_clique_filtration(g, 1, WeightOrder::DescendingRank).unwrap();
                (g.timestamp(), compute_persistence(&f, 1).unwrap().truncated())
            });
            let pet = entropy_series(barcodes).unwrap();
            let exec = execute(&pea, &pet).unwrap();
            let trace = label_execution(&exec, &mpea).unwrap();
            (seed, classify_trace(&trace))
        })
        .collect();
    println!("batch time: {:?}", t0.elapsed());

    let mut counts = GroupCounts::default();
    for (_, g) in &groups {
        counts.add(*g);
    }
    for g in TraceGroup::ALL {
        println!("{:>6}: {}", g.name(), counts.count(g));
    }
    let (i, ii, iii) = counts.group_totals();
    println!("I = {i}, II = {ii}, III = {iii}, total = {}", counts.total());
    for wanted in TraceGroup::ALL {
        if let Some((seed, _)) = groups.iter().find(|(_, g)| *g == wanted) {
            println!("example seed for {}: {seed}", wanted.name());
        }
    }
}
