fn main() {
    use stimclean::dsp::{design_filter, FilterSpec};
    let fs = 22_000.0;
    let chain = design_filter(&FilterSpec::ButterBandpass { order: 2, low_hz: 3.0, high_hz: 37.0 }, fs).unwrap();
    let mut state = 88u64;
    let x: Vec<f64> = (0..5_000).map(|_| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    }).collect();
    let fwd = chain.filtfilt(&x);
    let mut rin = x.clone(); rin.reverse();
    let mut rout = chain.filtfilt(&rin); rout.reverse();
    let mut maxd = 0.0f64; let mut at = 0;
    for (i,(a,b)) in fwd.iter().zip(&rout).enumerate() {
        if (a-b).abs() > maxd { maxd = (a-b).abs(); at = i; }
    }
    let rms = (fwd.iter().map(|v| v*v).sum::<f64>() / fwd.len() as f64).sqrt();
    println!("max diff {maxd:.3e} at {at} of {}; rms {rms:.3e}", fwd.len());
}
