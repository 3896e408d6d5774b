use sp4bg_core::finite::{enumerate_sp4, word_norm_profile};
use sp4bg_core::sp4::Root;

fn main() {
    let t3 = enumerate_sp4(3).unwrap();
    println!("Sp4(F3): order {}", t3.order());
    for param in [1u8, 2] {
        let e = t3.group.pack_root_element(Root::Beta, param);
        let ball = word_norm_profile(&t3, &[e]);
        println!("  eps_beta({param}): generating={} diameter={:?} genset={} radii={:?}",
            ball.generating, ball.diameter, ball.genset_size, ball.radius_counts);
    }
}
