//! Orbits of reduced origamis in H(2), with orbit sizes and cusp widths.
//!
//! `cargo run --release -p origami-core --example h2_census -- 8`

use origami_core::catalog::{enumerate, orbit_ids};
use origami_core::origami::Stratum;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let h2: Stratum = "H(2)".parse().expect("valid stratum");
    for n in 3..=max {
        let entries = enumerate(n, Some(&h2), true).expect("n within the enumeration bound");
        let ids = orbit_ids(&entries);
        println!("n={n}: {} surfaces in {} orbit(s)", entries.len(), ids.len());
        for id in ids {
            let members: Vec<_> = entries.iter().filter(|e| e.orbit_id == id).collect();
            println!("  {id}: {} surfaces, cusp widths {:?}", members.len(), members[0].cusp_widths);
        }
    }
}
