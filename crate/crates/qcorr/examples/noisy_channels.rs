//! Local noise only destroys correlations. A Bell pair is pushed through
//! progressively stronger channels on side B; every distance must report a
//! nonincreasing total along each column.

use qcorr::{apply_channel, make_bell, total_correlations, ChannelTarget, Distance, KrausChannel};

fn main() {
    let bell = make_bell();
    let strengths = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0];

    for (title, build) in [
        (
            "depolarizing",
            (|p| KrausChannel::depolarizing(p, 2, ChannelTarget::B).unwrap())
                as fn(f64) -> KrausChannel,
        ),
        ("dephasing", |p| {
            KrausChannel::dephasing(p, 2, ChannelTarget::B).unwrap()
        }),
        ("amplitude damping", |p| {
            KrausChannel::amplitude_damping(p, 2, ChannelTarget::B).unwrap()
        }),
    ] {
        println!("{title} on side B:");
        print!("{:>6}", "p");
        for d in Distance::ALL {
            print!(" {:>14}", d.name());
        }
        println!();
        for &p in &strengths {
            let noisy = apply_channel(&bell, &build(p)).unwrap();
            print!("{p:>6.2}");
            for d in Distance::ALL {
                print!(" {:>14.6}", total_correlations(d, &noisy));
            }
            println!();
        }
        println!();
    }
}
