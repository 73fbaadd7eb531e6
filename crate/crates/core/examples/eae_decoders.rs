//! Error-and-erasure decoding of a ternary word with EaED and EaED+.

use eae_fec::{eaed, eaedplus, BchCode, FillPlan, TernaryWord, TieRule};

fn main() -> eae_fec::Result<()> {
    let code = BchCode::new(4, 2, false, 0)?;
    // all-zero codeword with one error and two erasures: 2·1 + 2 < 5
    let y: TernaryWord = "010000?0000?000".parse()?;
    let plan = FillPlan::zeros(code.n());

    let a = eaed(&y, &plan, TieRule::PreferFirst, &code);
    println!("EaED : {} -> {} ({:?}, {} BDD steps)", y, a.word, a.status, a.bdd_steps);
    let b = eaedplus(&y, &plan, &code);
    println!("EaED+: {} -> {} ({:?}, {} BDD steps)", y, b.word, b.status, b.bdd_steps);

    // EaED may still land on a codeword outside the ternary sphere; EaED+ refuses
    let y: TernaryWord = "0110000?000?0?0".parse()?;
    let a = eaed(&y, &plan, TieRule::PreferFirst, &code);
    let b = eaedplus(&y, &plan, &code);
    println!("outside the sphere: EaED {:?}, EaED+ {:?}", a.status, b.status);
    Ok(())
}
