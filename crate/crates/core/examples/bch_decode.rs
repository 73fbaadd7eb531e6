//! Encode with a BCH code, corrupt the word and decode it with BDD.

use eae_fec::BchCode;

fn main() -> eae_fec::Result<()> {
    let code = BchCode::new(6, 2, true, 0)?;
    println!("{:?}", code.spec());

    let info: Vec<u8> = (0..code.k()).map(|i| (i % 3 == 0) as u8).collect();
    let c = code.encode(&info)?;
    let mut y = c.to_vec();
    y[4] ^= 1;
    y[40] ^= 1;
    let out = code.bdd(&y);
    println!("two errors: {:?}, distance {:?}, recovered {}", out.status, out.distance, out.word == c);

    y[50] ^= 1;
    y[60] ^= 1;
    let out = code.bdd(&y);
    println!("four errors: {:?}", out.status);
    Ok(())
}
