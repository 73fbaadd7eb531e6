//! Binary BCH component codes: construction, systematic encoding and
//! bounded-distance decoding.
//!
//! Word position `p` of a length-n word holds the coefficient of `x^(n-1-p)`,
//! so a systematic codeword reads `[info | parity]`. Shortening removes the
//! leading (highest-degree) information positions of the parent code.
//!
//! The decoder is syndrome computation, Berlekamp–Massey and a Chien search,
//! followed by a full consistency check of the error pattern. With the check
//! it behaves exactly like an ideal radius-t sphere decoder, miscorrections
//! included.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, GaloisField};
use crate::word::{hamming, BinaryWord};

/// Parameters of a (possibly shortened, possibly even-weight) BCH component code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComponentCodeSpec {
    pub nu: u32,
    /// 2^ν − 1.
    pub parent_length: usize,
    pub shortening: usize,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    /// Designed distance, 2t + 1 for both the BCH code and its even-weight subcode.
    pub d_des: usize,
    pub even_weight: bool,
}

impl fmt::Display for ComponentCodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.k, self.t)?;
        if self.even_weight {
            write!(f, " even-weight")?;
        }
        Ok(())
    }
}

/// Whether bounded-distance decoding found a codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeStatus {
    Success,
    Failure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BddOutcome {
    pub status: DecodeStatus,
    /// Decoded codeword on success, the unchanged input on failure.
    pub word: BinaryWord,
    /// `d_H(input, word)` on success; `None` stands for an infinite distance.
    pub distance: Option<usize>,
}

impl BddOutcome {
    pub fn is_success(&self) -> bool {
        self.status == DecodeStatus::Success
    }
}

/// A constructed BCH component code. Cheap to clone.
#[derive(Clone, Debug)]
pub struct BchCode {
    inner: Arc<Inner>,
}

#[derive(Debug)]
struct Inner {
    spec: ComponentCodeSpec,
    field: GaloisField,
    /// Generator polynomial, coefficients low to high.
    generator: Vec<u8>,
    /// `syndrome_table[i][p] = α^{(2i+1)(n-1-p)}`, one row per odd syndrome index.
    syndrome_table: Vec<Vec<u16>>,
}

impl BchCode {
    /// Constructs the narrow-sense BCH code of length 2^ν − 1 correcting `t`
    /// errors, optionally restricted to its even-weight subcode and shortened
    /// by `shortening` positions.
    pub fn new(nu: u32, t: usize, even_weight: bool, shortening: usize) -> Result<Self> {
        let field = GaloisField::new(nu)?;
        let parent_length = field.order();
        if t == 0 || 2 * t + 1 > parent_length {
            return Err(Error::Construction(format!(
                "t = {t} is infeasible for length {parent_length}"
            )));
        }
        let mut generator = vec![1u8];
        let mut seen = vec![false; parent_length];
        for i in 1..=2 * t {
            let i = i % parent_length;
            if seen[i] {
                continue;
            }
            for j in field.cyclotomic_coset(i) {
                seen[j] = true;
            }
            generator = poly_mul_gf2(&generator, &field.minimal_polynomial(i));
        }
        if even_weight && poly_eval_at_one(&generator) != 0 {
            generator = poly_mul_gf2(&generator, &[1, 1]);
        }
        let redundancy = generator.len() - 1;
        if redundancy >= parent_length {
            return Err(Error::Construction(format!(
                "generator degree {redundancy} leaves no information bits"
            )));
        }
        let parent_k = parent_length - redundancy;
        if shortening >= parent_k {
            return Err(Error::Construction(format!(
                "shortening {shortening} must be smaller than k = {parent_k}"
            )));
        }
        let n = parent_length - shortening;
        let k = parent_k - shortening;
        let spec = ComponentCodeSpec {
            nu,
            parent_length,
            shortening,
            n,
            k,
            t,
            d_des: 2 * t + 1,
            even_weight,
        };
        let syndrome_table = (0..t)
            .map(|i| {
                let j = (2 * i + 1) as i64;
                (0..n)
                    .map(|p| field.alpha_pow(j * (n - 1 - p) as i64).0)
                    .collect()
            })
            .collect();
        Ok(BchCode {
            inner: Arc::new(Inner {
                spec,
                field,
                generator,
                syndrome_table,
            }),
        })
    }

    pub fn spec(&self) -> &ComponentCodeSpec {
        &self.inner.spec
    }

    pub fn n(&self) -> usize {
        self.inner.spec.n
    }

    pub fn k(&self) -> usize {
        self.inner.spec.k
    }

    pub fn t(&self) -> usize {
        self.inner.spec.t
    }

    pub fn d_des(&self) -> usize {
        self.inner.spec.d_des
    }

    pub fn field(&self) -> &GaloisField {
        &self.inner.field
    }

    /// Generator polynomial coefficients, lowest degree first.
    pub fn generator(&self) -> &[u8] {
        &self.inner.generator
    }

    /// Systematic encoding: `[info | parity]`.
    pub fn encode(&self, info: &[u8]) -> Result<BinaryWord> {
        let (n, k) = (self.n(), self.k());
        if info.len() != k {
            return Err(Error::Length {
                expected: k,
                actual: info.len(),
            });
        }
        let mut word = vec![0u8; n];
        self.encode_into(info, &mut word);
        Ok(BinaryWord::new(word))
    }

    /// Writes the codeword for `info` into `out` (length n). `info` has length k.
    pub fn encode_into(&self, info: &[u8], out: &mut [u8]) {
        let g = &self.inner.generator;
        let r = g.len() - 1;
        let k = self.k();
        let mut rem = vec![0u8; r];
        for (p, &bit) in info.iter().enumerate() {
            let bit = bit & 1;
            out[p] = bit;
            let feedback = bit ^ rem[r - 1];
            for j in (1..r).rev() {
                rem[j] = rem[j - 1] ^ (feedback & g[j]);
            }
            rem[0] = feedback & g[0];
        }
        for (d, &c) in rem.iter().enumerate() {
            out[k + r - 1 - d] = c;
        }
    }

    fn odd_syndromes(&self, word: &[u8]) -> Vec<u16> {
        self.inner
            .syndrome_table
            .iter()
            .map(|row| {
                word.iter()
                    .zip(row)
                    .filter(|(&b, _)| b & 1 == 1)
                    .fold(0u16, |acc, (_, &v)| acc ^ v)
            })
            .collect()
    }

    /// True iff `word` belongs to the code (all syndromes vanish, and the
    /// parity is even for the even-weight subcode).
    pub fn is_codeword(&self, word: &[u8]) -> bool {
        if word.len() != self.n() {
            return false;
        }
        if self.inner.spec.even_weight && parity(word) != 0 {
            return false;
        }
        self.odd_syndromes(word).iter().all(|&s| s == 0)
    }

    /// Bounded-distance decoding with radius t.
    pub fn bdd(&self, y: &[u8]) -> BddOutcome {
        match self.locate_errors(y) {
            Some(errors) => {
                let mut word = y.to_vec();
                for &p in &errors {
                    word[p] ^= 1;
                }
                BddOutcome {
                    status: DecodeStatus::Success,
                    word: BinaryWord::new(word),
                    distance: Some(errors.len()),
                }
            }
            None => BddOutcome {
                status: DecodeStatus::Failure,
                word: BinaryWord::new(y.to_vec()),
                distance: None,
            },
        }
    }

    /// Error positions of the unique codeword within distance t, if any.
    pub fn locate_errors(&self, y: &[u8]) -> Option<Vec<usize>> {
        let spec = &self.inner.spec;
        if y.len() != spec.n {
            return None;
        }
        let f = &self.inner.field;
        let odd = self.odd_syndromes(y);
        let y_parity = parity(y);
        if odd.iter().all(|&s| s == 0) {
            return if spec.even_weight && y_parity != 0 {
                None
            } else {
                Some(Vec::new())
            };
        }
        let t = spec.t;
        // S_1..S_2t with S_2j = S_j^2
        let mut syn = vec![FieldElement::ZERO; 2 * t];
        for j in 1..=2 * t {
            syn[j - 1] = if j % 2 == 1 {
                FieldElement(odd[j / 2])
            } else {
                let h = syn[j / 2 - 1];
                f.mul(h, h)
            };
        }
        let locator = berlekamp_massey(f, &syn);
        let degree = locator.len() - 1;
        if degree > t {
            return None;
        }
        if spec.even_weight && !(y_parity as usize + degree).is_multiple_of(2) {
            return None;
        }
        let logs: Vec<Option<usize>> = locator.iter().map(|&c| f.log(c)).collect();
        let order = f.order() as i64;
        let n = spec.n;
        let mut errors = Vec::with_capacity(degree);
        for p in 0..n {
            let deg = (n - 1 - p) as i64;
            // Λ(α^{-deg})
            let mut acc = 0u16;
            for (j, l) in logs.iter().enumerate() {
                if let Some(l) = l {
                    acc ^= f.alpha_pow(*l as i64 - (j as i64) * deg % order).0;
                }
            }
            if acc == 0 {
                errors.push(p);
                if errors.len() > degree {
                    return None;
                }
            }
        }
        if errors.len() != degree {
            return None;
        }
        // the error pattern must reproduce every syndrome
        for (i, row) in self.inner.syndrome_table.iter().enumerate() {
            let s = errors.iter().fold(0u16, |acc, &p| acc ^ row[p]);
            if s != odd[i] {
                return None;
            }
        }
        Some(errors)
    }

    /// Distance from `y` to the decoded word when BDD succeeds.
    pub fn bdd_distance(&self, y: &[u8]) -> Option<usize> {
        self.locate_errors(y).map(|e| e.len())
    }

    /// All codewords, for small dimensions only (k ≤ 24).
    pub fn codewords(&self) -> Result<Vec<BinaryWord>> {
        let k = self.k();
        if k > 24 {
            return Err(Error::Construction(format!(
                "refusing to enumerate 2^{k} codewords"
            )));
        }
        let mut info = vec![0u8; k];
        (0..1u64 << k)
            .map(|m| {
                for (i, b) in info.iter_mut().enumerate() {
                    *b = ((m >> (k - 1 - i)) & 1) as u8;
                }
                self.encode(&info)
            })
            .collect()
    }

    /// Brute-force nearest codeword within radius t from an explicit codebook.
    pub fn sphere_decode_exhaustive(codebook: &[BinaryWord], y: &[u8], t: usize) -> Option<usize> {
        codebook.iter().position(|c| hamming(c, y) <= t)
    }
}

fn parity(word: &[u8]) -> u8 {
    word.iter().fold(0u8, |acc, &b| acc ^ (b & 1))
}

fn poly_mul_gf2(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= y;
        }
    }
    out
}

fn poly_eval_at_one(p: &[u8]) -> u8 {
    parity(p)
}

/// Shortest LFSR (connection polynomial, low to high) generating `syn`.
fn berlekamp_massey(f: &GaloisField, syn: &[FieldElement]) -> Vec<FieldElement> {
    let mut c = vec![FieldElement::ONE];
    let mut b = vec![FieldElement::ONE];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last = FieldElement::ONE;
    for i in 0..syn.len() {
        let mut d = syn[i];
        for j in 1..=l.min(c.len() - 1) {
            d = f.add(d, f.mul(c[j], syn[i - j]));
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = f.div(d, last).expect("discrepancy base is nonzero");
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, FieldElement::ZERO);
        }
        for (j, &bj) in b.iter().enumerate() {
            c[j + m] = f.add(c[j + m], f.mul(coef, bj));
        }
        if 2 * l <= i {
            l = i + 1 - l;
            b = prev;
            last = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    // keep the formal LFSR length: a vanishing top coefficient then shows up
    // as a root-count mismatch in the Chien search
    c.resize(l + 1, FieldElement::ZERO);
    c
}
