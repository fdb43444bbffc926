use rayon::prelude::*;

fn busy(i: u64) -> f64 {
    let mut acc = i as f64;
    for k in 0..300_000_000u64 {
        acc += (k as f64).sqrt();
    }
    acc
}

fn main() {
    println!("available_parallelism: {:?}", std::thread::available_parallelism());
    let t = std::time::Instant::now();
    let a = busy(0);
    let serial = t.elapsed();
    let t = std::time::Instant::now();
    let v: Vec<f64> = (0..4u64).into_par_iter().map(busy).collect();
    let par4 = t.elapsed();
    println!("serial 1x: {serial:?}; parallel 4x: {par4:?} (ratio {:.2}, expect ~2 on 2 cores) {a} {}", par4.as_secs_f64()/serial.as_secs_f64(), v.len());
}
