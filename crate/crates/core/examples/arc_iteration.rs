//! Combining per-stage confidence arcs into one arc on the phase.

use qestkit::phase::{iterate_arcs, Arc};

fn main() -> qestkit::Result<()> {
    for lowers in [[0.6, 0.3, 0.8], [0.1, 0.7, 0.9]] {
        let arcs = lowers.iter().map(|&x| Arc::new(x, 0.3)).collect::<qestkit::Result<Vec<_>>>()?;
        let it = iterate_arcs(&arcs)?;
        let shown: Vec<String> = arcs.iter().map(|a| format!("[{:.1}, {:.1}]", a.lower, a.upper())).collect();
        println!("stage arcs {}", shown.join(" "));
        for k in 0..it.chain.stages() {
            let (lo, hi) = it.chain.interval(k);
            println!("  J_{} = [{lo:.4}, {hi:.4}]", k + 1);
        }
        println!("  final arc [{:.4}, {:.4}], estimate {:.4}\n", it.final_arc.lower, it.final_arc.upper(), it.estimate);
    }
    Ok(())
}
