//! Scan master seeds for the acceptance sweep: in-band grid points only,
//! reporting the monotonicity/slope/fall diagnostics per seed.

use asetrap_core::{ensemble_heating, NoiseSpec, SimConfig, TrapSpec};

fn main() {
    let seeds: Vec<u64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().unwrap())
        .collect();
    let trap = TrapSpec::new(1.0, 12).unwrap();
    let (lo, hi): (f64, f64) = (0.005, 5.0);
    let n_points = 20;
    let grid: Vec<f64> = (0..n_points)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n_points - 1) as f64).exp())
        .filter(|&t| t <= 0.45)
        .collect();
    for seed in seeds {
        let t0 = std::time::Instant::now();
        let mut pts = Vec::new();
        for &tau0 in &grid {
            let spec = NoiseSpec::new(2e-4, tau0).unwrap();
            let mut config = SimConfig::default_for(&trap, &spec);
            config.n_realizations = 100;
            config.master_seed = seed;
            let r = ensemble_heating(&trap, &spec, &config).unwrap();
            pts.push((tau0, r.e_dot, r.stderr_e_dot));
        }
        let mut worst_slack = f64::INFINITY;
        for w in pts.windows(2) {
            let (_, ea, sa) = w[0];
            let (_, eb, sb) = w[1];
            let sigma = (sa * sa + sb * sb).sqrt();
            // slack in sigma units: how far b sits above the a−1σ floor
            let slack = (eb - (ea - sigma)) / sigma;
            worst_slack = worst_slack.min(slack);
        }
        let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let slope = sxy / sxx;
        let serr: f64 = xs
            .iter()
            .zip(&pts)
            .map(|(x, p)| ((x - mx) / sxx * p.2 / p.1).powi(2))
            .sum::<f64>()
            .sqrt();
        let fall = pts.last().unwrap().1 / pts[0].1;
        println!(
            "seed {seed}: worst_slack {worst_slack:.2}σ, slope {slope:.3}±{serr:.3}, fall {fall:.1}x, {:.0}s",
            t0.elapsed().as_secs_f64()
        );
    }
}
