//! Words in the affine braid groups of `SL_2` and `GL_2`, their evaluation in
//! matrix representations, and equivalence testing of representations.
//!
//! `B_SL2` is free on `S0, S1`. `B_GL2` is generated by `b, X1` with
//! `X2 = b X1 b`, `L1 = b^-1 X2 b`, `L2 = b^-1 X1 b` as derived letters.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::coeff::ComplexCtx;
use crate::connections::{
    basepoint_path, build_connection, gl_monodromy, sl_monodromy, transport, CMat, ConnectionKind, ConnectionParams,
};
use crate::error::{Error, Result};
use crate::matrix::{cond, from_dmatrix, solve_intertwiner, to_dmatrix};
use crate::qloop::{lattice_operators, tensor_evaluation, LatticeOperators, LoopRep};

type C = Complex64;

/// Which braid group a word lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Alphabet {
    Sl,
    Gl,
}

impl Alphabet {
    pub fn generators(self) -> [&'static str; 2] {
        match self {
            Alphabet::Sl => ["S0", "S1"],
            Alphabet::Gl => ["b", "X1"],
        }
    }
}

/// A freely reduced word; each letter is a generator index and a sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub alphabet: Alphabet,
    pub letters: Vec<(usize, bool)>,
}

fn expand(name: &str) -> Option<(Alphabet, Vec<(usize, bool)>)> {
    use Alphabet::*;
    let (b, x1) = (0, 1);
    Some(match name {
        "S0" => (Sl, vec![(0, true)]),
        "S1" => (Sl, vec![(1, true)]),
        "L" => (Sl, vec![(0, true), (1, true)]),
        "b" => (Gl, vec![(b, true)]),
        "X1" => (Gl, vec![(x1, true)]),
        "X2" => (Gl, vec![(b, true), (x1, true), (b, true)]),
        // b^-1 (b X1 b) b
        "L1" => (Gl, vec![(x1, true), (b, true), (b, true)]),
        "L2" => (Gl, vec![(b, false), (x1, true), (b, true)]),
        _ => return None,
    })
}

fn invert(letters: &[(usize, bool)]) -> Vec<(usize, bool)> {
    letters.iter().rev().map(|&(g, p)| (g, !p)).collect()
}

fn reduce(letters: impl IntoIterator<Item = (usize, bool)>) -> Vec<(usize, bool)> {
    let mut out: Vec<(usize, bool)> = vec![];
    for l in letters {
        match out.last() {
            Some(&(g, p)) if g == l.0 && p != l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: i64 = 64;

impl BraidWord {
    pub fn identity(alphabet: Alphabet) -> Self {
        BraidWord { alphabet, letters: vec![] }
    }

    pub fn new(alphabet: Alphabet, letters: Vec<(usize, bool)>) -> Self {
        BraidWord { alphabet, letters: reduce(letters) }
    }

    /// Parse whitespace-separated letters with optional integer exponents,
    /// e.g. `"S0 S1^-1 S0"` or `"b X1 b X1"`. The alphabet is inferred; the
    /// empty string and `"1"` are the identity of `default`.
    pub fn parse(s: &str, default: Alphabet) -> Result<Self> {
        let mut alphabet: Option<Alphabet> = None;
        let mut letters = vec![];
        for tok in s.split_whitespace().filter(|t| *t != "1") {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            if exp.abs() > MAX_EXPONENT {
                return Err(Error::Parse(format!("exponent {exp} exceeds {MAX_EXPONENT}")));
            }
            let (a, base) = expand(name).ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            if alphabet.is_some_and(|x| x != a) {
                return Err(Error::Parse("word mixes SL_2 and GL_2 generators".into()));
            }
            alphabet = Some(a);
            let unit = if exp < 0 { invert(&base) } else { base };
            for _ in 0..exp.abs() {
                letters.extend(unit.iter().copied());
            }
        }
        Ok(BraidWord::new(alphabet.unwrap_or(default), letters))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { alphabet: self.alphabet, letters: invert(&self.letters) }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::Domain("words over different alphabets".into()));
        }
        Ok(BraidWord::new(self.alphabet, self.letters.iter().chain(&other.letters).copied().collect()))
    }

    /// All reduced words of length `1..=max_len`.
    pub fn enumerate(alphabet: Alphabet, max_len: usize) -> Vec<Self> {
        let mut out = vec![];
        let mut layer: Vec<Vec<(usize, bool)>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = vec![];
            for w in &layer {
                for g in 0..2 {
                    for p in [true, false] {
                        if w.last() == Some(&(g, !p)) {
                            continue;
                        }
                        let mut v = w.clone();
                        v.push((g, p));
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().map(|l| BraidWord { alphabet, letters: l.clone() }));
            layer = next;
        }
        out
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let names = self.alphabet.generators();
        let parts: Vec<String> =
            self.letters.iter().map(|&(g, p)| if p { names[g].to_string() } else { format!("{}^-1", names[g]) }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `S1 -> b`, `S0 -> X1 b X1^-1`.
pub fn include_sl_in_gl(word: &BraidWord) -> Result<BraidWord> {
    if word.alphabet != Alphabet::Sl {
        return Err(Error::Domain("expected a word in S0, S1".into()));
    }
    let s0 = [(1, true), (0, true), (1, false)];
    let mut out = vec![];
    for &(g, p) in &word.letters {
        let img: Vec<(usize, bool)> = if g == 1 { vec![(0, true)] } else { s0.to_vec() };
        out.extend(if p { img } else { invert(&img) });
    }
    Ok(BraidWord::new(Alphabet::Gl, out))
}

/// Where a representation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RepSource {
    Monodromy,
    QuantumWeyl,
    Other,
}

/// Images of the two generators of an alphabet.
///
/// Monodromy `Y(1)` of a left-to-right concatenation is the product of the
/// pieces in reverse order, so monodromy representations evaluate words
/// right to left.
#[derive(Clone, Debug)]
pub struct GroupRep {
    pub alphabet: Alphabet,
    pub source: RepSource,
    pub gens: [CMat; 2],
    inverses: [CMat; 2],
    pub reversed: bool,
    /// Estimated absolute error of the generator images.
    pub error: f64,
}

impl GroupRep {
    pub fn new(alphabet: Alphabet, source: RepSource, gens: [CMat; 2], reversed: bool, error: f64) -> Result<Self> {
        let n = gens[0].nrows();
        if gens.iter().any(|g| g.nrows() != n || g.ncols() != n) {
            return Err(Error::Dimension("generators must be square of a common size".into()));
        }
        let inv = |m: &CMat| m.clone().try_inverse().ok_or_else(|| Error::Domain("generator is not invertible".into()));
        let inverses = [inv(&gens[0])?, inv(&gens[1])?];
        Ok(GroupRep { alphabet, source, gens, inverses, reversed, error })
    }

    pub fn dim(&self) -> usize {
        self.gens[0].nrows()
    }

    /// Generator images as they act in left-to-right word order.
    pub fn image(&self, g: usize, positive: bool) -> &CMat {
        if positive {
            &self.gens[g]
        } else {
            &self.inverses[g]
        }
    }
}

/// Ordered product of the generator images.
pub fn evaluate(rep: &GroupRep, word: &BraidWord) -> Result<CMat> {
    if word.alphabet != rep.alphabet {
        return Err(Error::Domain(format!("{:?} word in a {:?} representation", word.alphabet, rep.alphabet)));
    }
    let mut out = CMat::identity(rep.dim(), rep.dim());
    for &(g, p) in &word.letters {
        out = if rep.reversed { rep.image(g, p) * out } else { out * rep.image(g, p) };
    }
    Ok(out)
}

/// Outcome of comparing two representations.
#[derive(Clone, Debug, serde::Serialize)]
pub struct EquivalenceReport {
    pub words: usize,
    /// `max |tr A(w) - tr B(w)| / max(1, |tr A(w)|)`.
    pub trace_residual: f64,
    pub worst_word: String,
    pub tolerance: f64,
    /// Condition number of the intertwiner, `None` if none was found.
    pub intertwiner_cond: Option<f64>,
    /// `max_g |X A(g) - B(g) X| / |X|` for the returned intertwiner.
    pub intertwiner_residual: Option<f64>,
}

/// Condition number above which an intertwiner does not count as invertible.
pub const MAX_COND: f64 = 1e6;

impl EquivalenceReport {
    pub fn traces_agree(&self) -> bool {
        self.trace_residual <= self.tolerance
    }

    pub fn intertwiner_found(&self) -> bool {
        self.intertwiner_cond.is_some_and(|c| c < MAX_COND)
    }

    pub fn passed(&self) -> bool {
        self.traces_agree() && self.intertwiner_found()
    }
}

/// Representatives of the generators as ordered-product matrices: the map
/// `g -> image` that is a homomorphism for the representation's reading order.
fn hom_images(rep: &GroupRep) -> Vec<CMat> {
    rep.gens.to_vec()
}

/// Trace comparison on every reduced word up to `word_budget` letters, then an
/// intertwiner `X A(g) = B(g) X` from the generator images.
pub fn equivalence_test(a: &GroupRep, b: &GroupRep, word_budget: usize, tol: f64) -> Result<EquivalenceReport> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(format!("dimensions {} and {} differ", a.dim(), b.dim())));
    }
    if a.alphabet != b.alphabet {
        return Err(Error::Domain("representations of different groups".into()));
    }
    let words = BraidWord::enumerate(a.alphabet, word_budget);
    let mut worst = (0.0, String::from("1"));
    for w in &words {
        let (ta, tb) = (evaluate(a, w)?.trace(), evaluate(b, w)?.trace());
        let r = (ta - tb).norm() / ta.norm().max(1.0);
        if r > worst.0 || r.is_nan() {
            worst = (r, w.to_string());
        }
    }
    let (cond_x, res_x) = if a.reversed == b.reversed {
        intertwiner(&hom_images(a), &hom_images(b))?
    } else {
        // an anti-homomorphism is intertwined with a homomorphism through transposes
        let t: Vec<CMat> = hom_images(a).iter().map(|m| m.transpose()).collect();
        intertwiner(&t, &hom_images(b))?
    };
    Ok(EquivalenceReport {
        words: words.len(),
        trace_residual: worst.0,
        worst_word: worst.1,
        tolerance: tol,
        intertwiner_cond: cond_x,
        intertwiner_residual: res_x,
    })
}

fn intertwiner(a: &[CMat], b: &[CMat]) -> Result<(Option<f64>, Option<f64>)> {
    let ctx = ComplexCtx::plain();
    let ma: Vec<_> = a.iter().map(|m| from_dmatrix(m, &ctx)).collect();
    let mb: Vec<_> = b.iter().map(|m| from_dmatrix(m, &ctx)).collect();
    Ok(match solve_intertwiner(&ma, &mb)? {
        None => (None, None),
        Some(x) => {
            let xd = to_dmatrix(&x);
            let norm = xd.norm().max(f64::MIN_POSITIVE);
            let res = a.iter().zip(b).map(|(ga, gb)| (&xd * ga - gb * &xd).norm() / norm).fold(0.0, f64::max);
            (Some(cond(&x)), Some(res))
        }
    })
}

/// `q^{-H/2}` on the weight basis, `q = e^{hbar/2}`.
fn q_half_weight(rep: &LoopRep<C>, hbar: C) -> CMat {
    CMat::from_diagonal(&DVector::from_iterator(rep.dim(), rep.h0_weights().iter().map(|&w| (-hbar * (w as f64) / 4.0).exp())))
}

/// The quantum Weyl group representation at numerical `hbar`.
///
/// `GL_2`: `b -> S q^{-H/2}` and `L_i -> L_i`, so `X1 = b L2 b^-1`.
/// `SL_2`: `S_i -> S_i q^{-H/2}`, the conjugate of `S_i` by `q^{H/4}`.
pub fn quantum_weyl_rep(rep: &LoopRep<C>, ops: &LatticeOperators<C>, alphabet: Alphabet, hbar: C) -> Result<GroupRep> {
    let qh = q_half_weight(rep, hbar);
    let gens = match alphabet {
        Alphabet::Gl => {
            let b = to_dmatrix(&ops.s) * &qh;
            let bi = b.clone().try_inverse().ok_or_else(|| Error::Domain("S is not invertible".into()))?;
            let x1 = &b * to_dmatrix(&ops.l2) * &bi;
            [b, x1]
        }
        Alphabet::Sl => [to_dmatrix(&ops.s0) * &qh, to_dmatrix(&ops.s1) * &qh],
    };
    GroupRep::new(alphabet, RepSource::QuantumWeyl, gens, false, ops.tail)
}

/// Build the quantum Weyl operators on `V_{lambda_1}(zeta_1) x ..` with
/// `hbar = 4 pi i h`, `zeta_a = exp(-hbar s_a)`.
pub fn quantum_side(lambda: &[u32], s: &[f64], h: f64, r_max: usize) -> Result<(LoopRep<C>, LatticeOperators<C>, C)> {
    let hbar = C::new(0.0, 4.0 * std::f64::consts::PI * h);
    let ctx = ComplexCtx::new(hbar);
    let factors: Vec<(u32, C)> = lambda.iter().zip(s).map(|(&l, &x)| (l, (-hbar * x).exp())).collect();
    let rep = tensor_evaluation(&factors, r_max, &ctx)?;
    let ops = lattice_operators(&rep, r_max)?;
    Ok((rep, ops, hbar))
}

/// Monodromy representations of the Casimir connections.
pub fn monodromy_rep(alphabet: Alphabet, lambda: &[u32], s: &[f64], h: f64, tol: f64) -> Result<GroupRep> {
    let params = ConnectionParams {
        lambda: lambda.to_vec(),
        s: s.iter().map(|&x| C::new(x, 0.0)).collect(),
        h: C::new(h, 0.0),
    };
    match alphabet {
        Alphabet::Gl => {
            let conn = build_connection(ConnectionKind::Gl2Casimir, &params)?;
            let m = gl_monodromy(&conn, tol)?;
            GroupRep::new(alphabet, RepSource::Monodromy, [m.get("b")?.clone(), m.get("X1")?.clone()], true, m.max_error())
        }
        Alphabet::Sl => {
            let conn = build_connection(ConnectionKind::Sl2Casimir, &params)?;
            let m = sl_monodromy(&conn, tol)?;
            GroupRep::new(alphabet, RepSource::Monodromy, [m.get("S0")?.clone(), m.get("S1")?.clone()], true, m.max_error())
        }
    }
}

/// Transport the `SL_2` monodromy to the `GL_2` basepoint (for comparisons
/// with the included words).
pub fn sl_at_gl_basepoint(sl: &GroupRep, lambda: &[u32], s: &[f64], h: f64, tol: f64) -> Result<GroupRep> {
    let params = ConnectionParams {
        lambda: lambda.to_vec(),
        s: s.iter().map(|&x| C::new(x, 0.0)).collect(),
        h: C::new(h, 0.0),
    };
    let conn = build_connection(ConnectionKind::Gl2Casimir, &params)?;
    let p = transport(&conn, &basepoint_path(), tol)?.matrix;
    let pi = p.clone().try_inverse().ok_or_else(|| Error::Domain("singular transport".into()))?;
    let gens = [&pi * &sl.gens[0] * &p, &pi * &sl.gens[1] * &p];
    GroupRep::new(Alphabet::Sl, sl.source, gens, sl.reversed, sl.error)
}

/// One line of the main comparison.
#[derive(Clone, Debug, serde::Serialize)]
pub struct MainComparison {
    pub alphabet: Alphabet,
    pub report: EquivalenceReport,
    pub integration_error: f64,
    pub lattice_tail: f64,
}

/// Monodromy of the Casimir connection versus the quantum Weyl group action on
/// `V_{lambda_1}(s_1) x ..`, at tolerance `max(1e-6, 100 * integration error)`.
pub fn compare_main(lambda: &[u32], s: &[f64], h: f64, tol: f64, r_max: usize, word_budget: usize) -> Result<Vec<MainComparison>> {
    let (rep, ops, hbar) = quantum_side(lambda, s, h, r_max)?;
    let mut out = vec![];
    for alphabet in [Alphabet::Sl, Alphabet::Gl] {
        let mono = monodromy_rep(alphabet, lambda, s, h, tol)?;
        let quantum = quantum_weyl_rep(&rep, &ops, alphabet, hbar)?;
        let tolerance = (100.0 * mono.error).max(1e-6);
        let report = equivalence_test(&mono, &quantum, word_budget, tolerance)?;
        out.push(MainComparison { alphabet, report, integration_error: mono.error, lattice_tail: ops.tail });
    }
    Ok(out)
}

/// Scale one generator: a representation that should fail an equivalence test.
pub fn scaled(rep: &GroupRep, g: usize, factor: C) -> Result<GroupRep> {
    let mut gens = rep.gens.clone();
    gens[g] *= factor;
    GroupRep::new(rep.alphabet, RepSource::Other, gens, rep.reversed, rep.error)
}

/// Conjugate by `p`: an equivalent representation.
pub fn conjugated(rep: &GroupRep, p: &CMat) -> Result<GroupRep> {
    let pi = p.clone().try_inverse().ok_or_else(|| Error::Domain("conjugator is singular".into()))?;
    let gens = [p * &rep.gens[0] * &pi, p * &rep.gens[1] * &pi];
    GroupRep::new(rep.alphabet, RepSource::Other, gens, rep.reversed, rep.error)
}

/// Named matrices for reports.
pub fn named_images(rep: &GroupRep) -> BTreeMap<String, CMat> {
    rep.alphabet.generators().iter().zip(&rep.gens).map(|(n, m)| (n.to_string(), m.clone())).collect()
}
