//! One check-node update computed naively and with the low-complexity rules.

use eae_fec::emp::{lcea_eaed_cn_update, naive_emp_cn_update};
use eae_fec::rng::{stream, Purpose};
use eae_fec::sim::selftest::random_cn_case;
use eae_fec::{BchCode, ComponentDecoder, LceaMode};

fn main() -> eae_fec::Result<()> {
    let code = BchCode::new(6, 2, true, 0)?;
    let mut rng = stream(2024, Purpose::Test, [0, 0]);
    let (mut naive_steps, mut exact_steps, mut heuristic_steps, mut differ) = (0, 0, 0, 0);
    for _ in 0..500 {
        let case = random_cn_case(&code, &mut rng, false);
        let input = case.input(&code);
        let naive = naive_emp_cn_update(&input, ComponentDecoder::Eaed)?;
        let exact = lcea_eaed_cn_update(&input, LceaMode::Exact)?;
        let heuristic = lcea_eaed_cn_update(&input, LceaMode::Heuristic)?;
        assert_eq!(naive.w, exact.w);
        naive_steps += naive.stats.bdd_steps;
        exact_steps += exact.stats.bdd_steps;
        heuristic_steps += heuristic.stats.bdd_steps;
        differ += naive.w.iter().zip(heuristic.w.iter()).filter(|(a, b)| a != b).count();
    }
    println!("BDD steps over 500 updates: naive {naive_steps}, exact {exact_steps}, heuristic {heuristic_steps}");
    println!("heuristic messages differing from naive: {differ}");
    Ok(())
}
