// Scratch pipeline probe: simulate -> entropy trace -> segments.
// Run with: cargo run --example probe [seed] [ticks]

use topomon::entropy::{entropy_series, persistent_entropy};
use topomon::filtration::{build_clique_filtration, WeightOrder};
use topomon::mining::{default_eps_deriv, default_level_tol, detect_steady_segments, mine_pea};
use topomon::pea::pea_to_json;
use topomon::persistence::compute_persistence;
use topomon::sim::{simulate, snapshot_graphs, Antibody, SimConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let ticks: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2190);

    let mut cfg = SimConfig::default();
    cfg.seed = seed;
    cfg.ticks = ticks;

    let t0 = std::time::Instant::now();
    let run: Vec<(u64, Vec<Antibody>)> = simulate(&cfg).unwrap();
    let n = run[0].1.len();
    let mut peaks = vec![0.0f64; n];
    for (_, pop) in &run {
        for (i, a) in pop.iter().enumerate() {
            peaks[i] = peaks[i].max(a.volume);
        }
    }
    let over = peaks.iter().filter(|&&p| p >= cfg.memory_threshold).count();
    let mut sorted = peaks.clone();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    println!(
        "peak volumes: top {:?}..., clones over memory threshold: {over}",
        &sorted[..8.min(sorted.len())]
    );
    let terminal_alive = run.last().unwrap().1.iter().filter(|a| a.volume > 0.0).count();
    println!("terminal alive clones: {terminal_alive}");
    let graphs = snapshot_graphs(&run, cfg.min_match).unwrap();
    let mut pairs = Vec::new();
    for g in &graphs {
        let f = build_clique_filtration(g, 1, WeightOrder::DescendingRank).unwrap();
        let b = compute_persistence(&f, 1).unwrap().truncated();
        pairs.push((g.timestamp(), b));
    }
    let pet = entropy_series(pairs.into_iter().map(|(t, b)| (t, b))).unwrap();
    println!("pipeline time: {:?}", t0.elapsed());

    let eps = default_eps_deriv(&pet);
    let tol = default_level_tol(&pet);
    let segs = detect_steady_segments(&pet, eps, 5);
    println!(
        "PET: {} obs, max H = {:.4}, eps_deriv = {:.3e}, level_tol = {:.4}",
        pet.len(),
        pet.max_entropy(),
        eps,
        tol
    );
    println!("segments: {}", segs.len());
    for s in &segs {
        println!(
            "  [{:>4}..{:>4}] len {:>4}  level {:.6}",
            s.start,
            s.end,
            s.len(),
            s.level
        );
    }
    match mine_pea(&segs, tol, eps, 1e-6) {
        Ok(pea) => println!("mined: {}", pea_to_json(&pea)),
        Err(e) => println!("mining failed: {e}"),
    }

    // crude ASCII of the H series, 100 buckets
    let obs = pet.observations();
    let buckets = 100usize.min(obs.len());
    let per = obs.len() / buckets.max(1);
    let maxh = pet.max_entropy().max(1e-9);
    print!("H curve: ");
    for b in 0..buckets {
        let h = obs[b * per].1;
        let c = match (h / maxh * 9.0) as u32 {
            0 => '_',
            k => char::from_digit(k, 10).unwrap_or('9'),
        };
        print!("{c}");
    }
    println!();

    // excursion structure above candidate thresholds
    if segs.len() >= 2 {
        let plateau = segs.last().unwrap().level;
        let maxh2 = pet.max_entropy();
        for frac in [0.1, 0.25, 0.5, 0.75] {
            let thr = plateau + frac * (maxh2 - plateau);
            let mut excursions = 0;
            let mut above = false;
            for &(_, h) in pet.observations() {
                if h > thr && !above {
                    excursions += 1;
                    above = true;
                } else if h <= thr {
                    above = false;
                }
            }
            println!("  threshold {thr:.4} (frac {frac}): {excursions} excursions");
        }
    }

    // widths of the excursions above the mid threshold
    if segs.len() >= 2 {
        let plateau = segs.last().unwrap().level;
        let thr = plateau + 0.25 * (pet.max_entropy() - plateau);
        let mut widths = Vec::new();
        let mut current = 0usize;
        for &(_, h) in pet.observations() {
            if h > thr {
                current += 1;
            } else if current > 0 {
                widths.push(current);
                current = 0;
            }
        }
        if current > 0 {
            widths.push(current);
        }
        println!("  excursion widths above {thr:.4}: {widths:?}");
    }

    // where does H sit at a few checkpoints
    for frac in [0.0, 0.02, 0.1, 0.3, 0.5, 0.7, 0.9, 0.999] {
        let k = ((obs.len() - 1) as f64 * frac) as usize;
        let _ = persistent_entropy::<f64>; // keep import used
        println!("  t={:>5} H={:.6}", obs[k].0, obs[k].1);
    }
}
// (appended) excursion structure above thresholds
