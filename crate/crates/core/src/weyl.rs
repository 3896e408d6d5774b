//! The Weyl group W(C2): words over the fundamental reflections, the
//! length function, the longest element, and the action on roots with
//! the realization's signs.
//!
//! W(C2) is the dihedral group of order 8; it is modeled concretely as
//! signed permutations of the plane, with `w_alpha: (x,y) -> (-x,y)` and
//! `w_beta: (x,y) -> (y,x)` in the coordinates of `Root::vector`.

use crate::error::{Error, Result};
use crate::rings::RingId;
use crate::sp4::{generator_action, weyl_elem, Root, SpMatrix, WeylGen};
use once_cell::sync::Lazy;

/// A word over the fundamental reflections `{w_alpha, w_beta}`.
///
/// Multiplication concatenates letters; equality compares the underlying
/// group elements. The action on roots (including signs) is computed from
/// the stored letter sequence, which is exactly the lift used when the
/// word is turned into a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylWord {
    letters: Vec<WeylGen>,
}

/// 2x2 signed permutation matrix acting on root vectors.
pub type PermMatrix = [[i8; 2]; 2];

const PERM_ID: PermMatrix = [[1, 0], [0, 1]];
const PERM_A: PermMatrix = [[-1, 0], [0, 1]];
const PERM_B: PermMatrix = [[0, 1], [1, 0]];

fn perm_mul(a: PermMatrix, b: PermMatrix) -> PermMatrix {
    let mut out = [[0i8; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Canonical reduced words of the 8 group elements, paired with their
/// permutation matrices. Built once by breadth-first closure.
static CANONICAL: Lazy<Vec<(PermMatrix, Vec<WeylGen>)>> = Lazy::new(|| {
    let mut found: Vec<(PermMatrix, Vec<WeylGen>)> = vec![(PERM_ID, vec![])];
    let mut frontier = vec![(PERM_ID, Vec::<WeylGen>::new())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (m, w) in &frontier {
            for (g, gm) in [(WeylGen::WAlpha, PERM_A), (WeylGen::WBeta, PERM_B)] {
                let nm = perm_mul(*m, gm);
                if !found.iter().any(|(fm, _)| *fm == nm) {
                    let mut nw = w.clone();
                    nw.push(g);
                    found.push((nm, nw.clone()));
                    next.push((nm, nw));
                }
            }
        }
        frontier = next;
    }
    assert_eq!(found.len(), 8);
    found
});

impl WeylWord {
    pub fn identity() -> WeylWord {
        WeylWord { letters: vec![] }
    }

    pub fn gen(g: WeylGen) -> WeylWord {
        WeylWord { letters: vec![g] }
    }

    pub fn from_letters(letters: Vec<WeylGen>) -> WeylWord {
        WeylWord { letters }
    }

    /// Parses a string over {'a', 'b'}.
    pub fn parse(s: &str) -> Result<WeylWord> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                'a' => letters.push(WeylGen::WAlpha),
                'b' => letters.push(WeylGen::WBeta),
                _ => return Err(Error::BadInput(format!("bad Weyl letter {c:?}"))),
            }
        }
        Ok(WeylWord { letters })
    }

    pub fn letters(&self) -> &[WeylGen] {
        &self.letters
    }

    pub fn perm(&self) -> PermMatrix {
        self.letters
            .iter()
            .fold(PERM_ID, |acc, g| {
                perm_mul(acc, match g {
                    WeylGen::WAlpha => PERM_A,
                    WeylGen::WBeta => PERM_B,
                })
            })
    }

    /// True when this word and the other define the same group element.
    pub fn same_element(&self, other: &WeylWord) -> bool {
        self.perm() == other.perm()
    }

    /// The canonical reduced word of the underlying group element.
    pub fn reduced(&self) -> WeylWord {
        let p = self.perm();
        let (_, w) = CANONICAL
            .iter()
            .find(|(m, _)| *m == p)
            .expect("every signed permutation is enumerated");
        WeylWord { letters: w.clone() }
    }

    /// The Coxeter length of the underlying group element.
    pub fn len_reduced(&self) -> usize {
        self.reduced().letters.len()
    }

    pub fn is_identity_element(&self) -> bool {
        self.perm() == PERM_ID
    }

    /// Concatenation (the product in the free monoid over the letters).
    pub fn concat(&self, other: &WeylWord) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        WeylWord { letters }
    }

    pub fn push(&mut self, g: WeylGen) {
        self.letters.push(g);
    }

    /// All reduced words of the underlying element (two for the longest
    /// element, one otherwise).
    pub fn all_reduced_words(&self) -> Vec<WeylWord> {
        let target = self.perm();
        let len = self.len_reduced();
        let mut out = Vec::new();
        // enumerate alternating words of that length
        let starts: &[WeylGen] = &[WeylGen::WAlpha, WeylGen::WBeta];
        for &start in starts {
            let mut letters = Vec::with_capacity(len);
            let mut cur = start;
            for _ in 0..len {
                letters.push(cur);
                cur = match cur {
                    WeylGen::WAlpha => WeylGen::WBeta,
                    WeylGen::WBeta => WeylGen::WAlpha,
                };
            }
            let w = WeylWord { letters };
            if w.perm() == target && !out.contains(&w) {
                out.push(w);
            }
            if len == 0 {
                break;
            }
        }
        out
    }

    /// A reduced word of this element ending with the given letter, when
    /// the exchange condition provides one (i.e. when l(w*s) < l(w)).
    pub fn reduced_word_ending_with(&self, s: WeylGen) -> Option<WeylWord> {
        self.all_reduced_words()
            .into_iter()
            .find(|w| w.letters.last() == Some(&s))
    }

    /// Action on a root, with the realization's sign: conjugating
    /// `eps_phi(x)` by the lift of this word yields `eps_psi(sign * x)`.
    pub fn act(&self, phi: Root) -> (Root, i8) {
        let mut root = phi;
        let mut sign = 1i8;
        for g in self.letters.iter().rev() {
            let (r, s) = generator_action(*g, root);
            root = r;
            sign *= s;
        }
        (root, sign)
    }

    /// The matrix lift: the product of `w_{s_i}(1)` along the letters.
    pub fn lift(&self, ring: RingId) -> SpMatrix {
        let mut m = SpMatrix::identity(ring);
        for g in &self.letters {
            m = m
                .mul(&weyl_elem(ring, g.root(), &ring.one()).unwrap())
                .unwrap();
        }
        m
    }

    /// String form over {"a", "b"}.
    pub fn as_string(&self) -> String {
        self.letters.iter().map(|g| g.letter()).collect()
    }
}

impl std::fmt::Display for WeylWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.as_string())
        }
    }
}

/// All 8 elements of W(C2) as canonical reduced words, sorted by length
/// then lexicographically.
pub fn weyl_enumerate() -> Vec<WeylWord> {
    let mut words: Vec<WeylWord> = CANONICAL
        .iter()
        .map(|(_, w)| WeylWord { letters: w.clone() })
        .collect();
    words.sort_by_key(|w| (w.letters.len(), w.as_string()));
    words
}

/// The longest element `w0 = (w_alpha w_beta)^2` of length 4.
pub fn longest_element() -> WeylWord {
    WeylWord {
        letters: vec![WeylGen::WAlpha, WeylGen::WBeta, WeylGen::WAlpha, WeylGen::WBeta],
    }
}

/// True when `sub` (as a group element) can be extracted as a subsequence
/// of `expr`'s letters whose length equals l(sub).
pub fn is_subword(sub: &WeylWord, expr: &WeylWord) -> bool {
    let k = sub.len_reduced();
    let target = sub.perm();
    let n = expr.letters.len();
    if k > n {
        return false;
    }
    // DFS over subsequences of length k.
    fn rec(letters: &[WeylGen], start: usize, remaining: usize, acc: PermMatrix, target: PermMatrix) -> bool {
        if remaining == 0 {
            return acc == target;
        }
        if letters.len() - start < remaining {
            return false;
        }
        for i in start..letters.len() {
            let gm = match letters[i] {
                WeylGen::WAlpha => PERM_A,
                WeylGen::WBeta => PERM_B,
            };
            if rec(letters, i + 1, remaining - 1, perm_mul(acc, gm), target) {
                return true;
            }
        }
        false
    }
    rec(&expr.letters, 0, k, PERM_ID, target)
}
