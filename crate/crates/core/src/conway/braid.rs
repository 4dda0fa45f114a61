use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;

use crate::kirchhoff::LinkingMatrix;
use crate::Error;

/// A braid word on `k` strands: `g` stands for the generator `sigma_g` and
/// `-g` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, Error> {
        if strands == 0 {
            return Err(Error::invalid("a braid needs at least one strand"));
        }
        for &g in &letters {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(Error::invalid(format!("generator {g} is out of range for {strands} strands")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Sum of the signs of the letters.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|g| i64::from(g.signum())).sum()
    }

    pub fn concat(&self, o: &BraidWord) -> Result<Self, Error> {
        if self.strands != o.strands {
            return Err(Error::invalid("strand counts differ"));
        }
        Ok(BraidWord { strands: self.strands, letters: [self.letters.clone(), o.letters.clone()].concat() })
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|g| -g).collect() }
    }

    /// Replace the letter at `pos` by `g`, or delete it when `g` is `None`.
    pub fn with_letter(&self, pos: usize, g: Option<i32>) -> Result<Self, Error> {
        if pos >= self.letters.len() {
            return Err(Error::invalid(format!("position {pos} is past the end of the word")));
        }
        let mut letters = self.letters.clone();
        match g {
            Some(g) => letters[pos] = g,
            None => {
                letters.remove(pos);
            }
        }
        BraidWord::new(self.strands, letters)
    }

    /// Add a strand and append `sigma_k` or its inverse.
    pub fn stabilize(&self, positive: bool) -> Self {
        let k = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { k } else { -k });
        BraidWord { strands: self.strands + 1, letters }
    }

    /// Strand occupying each position after each prefix is applied; strands
    /// are named by their starting position.
    fn crossings(&self) -> (Vec<(usize, usize, i32)>, Vec<usize>) {
        let mut at: Vec<usize> = (0..self.strands).collect();
        let mut out = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            let p = g.unsigned_abs() as usize;
            out.push((at[p - 1], at[p], g.signum()));
            at.swap(p - 1, p);
        }
        (out, at)
    }

    /// Components of the closure as sets of strands (0-based starting
    /// positions), numbered by their smallest strand.
    pub fn closure_components(&self) -> Vec<Vec<usize>> {
        let (_, at) = self.crossings();
        // The strand ending at position p continues as strand p.
        let mut next = vec![0; self.strands];
        for (p, &s) in at.iter().enumerate() {
            next[s] = p;
        }
        let mut seen = vec![false; self.strands];
        let mut comps = Vec::new();
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = next[x];
            }
            c.sort_unstable();
            comps.push(c);
        }
        comps
    }

    fn component_of(&self) -> (usize, Vec<usize>) {
        let comps = self.closure_components();
        let mut of = vec![0; self.strands];
        for (i, c) in comps.iter().enumerate() {
            for &s in c {
                of[s] = i;
            }
        }
        (comps.len(), of)
    }

    /// Linking numbers of the closure: half the signed count of crossings
    /// between two components.
    pub fn linking_matrix(&self) -> LinkingMatrix<BigInt> {
        let (m, of) = self.component_of();
        let mut rows = vec![vec![0i64; m]; m];
        for (a, b, s) in self.crossings().0 {
            let (ca, cb) = (of[a], of[b]);
            if ca != cb {
                rows[ca][cb] += i64::from(s);
                rows[cb][ca] += i64::from(s);
            }
        }
        for row in &mut rows {
            for v in row.iter_mut() {
                debug_assert!(*v % 2 == 0);
                *v /= 2;
            }
        }
        LinkingMatrix::from_rows(rows).expect("symmetric with zero diagonal")
    }

    /// A random word on `k` strands of the given length.
    pub fn random(rng: &mut impl Rng, k: usize, len: usize) -> Self {
        assert!(k >= 1);
        let letters = if k == 1 {
            Vec::new()
        } else {
            (0..len)
                .map(|_| {
                    let g = rng.gen_range(1..k as i32);
                    if rng.gen_bool(0.5) {
                        g
                    } else {
                        -g
                    }
                })
                .collect()
        };
        BraidWord { strands: k, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={};", self.strands)?;
        for g in &self.letters {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

/// Parse `k=3; 1 -2 1 -2 1 -2`.
impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (head, word) = s.split_once(';').ok_or_else(|| Error::invalid("braid must look like `k=3; 1 -2 1`"))?;
        let k = head
            .trim()
            .strip_prefix("k=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::invalid(format!("bad strand count `{}`", head.trim())))?;
        let letters = word
            .split_whitespace()
            .map(|t| t.parse::<i32>().map_err(|_| Error::invalid(format!("bad generator `{t}`"))))
            .collect::<Result<_, _>>()?;
        BraidWord::new(k, letters)
    }
}
