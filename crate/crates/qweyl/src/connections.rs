//! The evaluated trigonometric Casimir connections of `sl_2` and `gl_2`, the
//! trigonometric KZ connection of `gl_k` on two points, their generator loops
//! and numerical monodromy.
//!
//! All three act on the same fiber: the component of `C[M_{k,2}]` with row
//! degrees `lambda`, read as `V_{lambda_1} x .. x V_{lambda_k}` (one `gl_2`
//! factor per row) or as `C[M_{k,1}] x C[M_{k,1}]` (one `gl_k` factor per
//! column).
//!
//! Conventions: the connection `d - w` is solved by `dY = w Y`; the monodromy
//! of a closed loop is `Y(1)` with `Y(0) = 1`; a half-loop ending at the Weyl
//! image of the basepoint is followed by the fiber action of the reflection.

mod ode;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::check::IdentityCheck;
use crate::classical::{gl_k_op, gl_n_op, on_leg, Split};
use crate::coeff::ComplexCtx;
use crate::error::{Error, Result};
use crate::matrix::{to_dmatrix, Mat};
use crate::monomial::MonomialBasis;
use crate::qmatrix::flip_tau;

pub use ode::{solve_linear_ode, CMat, Solution};

type C = Complex64;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

const I: C = C::new(0.0, 1.0);

/// Smallest allowed distance between a standard path and the singular locus.
pub const SINGULAR_MARGIN: f64 = 0.1;

/// The fiber `V_{lambda_1} x .. x V_{lambda_k}` and the classical operators on it.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub lambda: Vec<u32>,
    pub basis: MonomialBasis,
}

impl Fiber {
    pub fn new(lambda: &[u32]) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::Domain("need at least one factor".into()));
        }
        Ok(Fiber { lambda: lambda.to_vec(), basis: MonomialBasis::row_degrees(2, lambda) })
    }

    pub fn k(&self) -> usize {
        self.lambda.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn rational(&self, m: Mat<BigRational>) -> CMat {
        DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            use num_traits::ToPrimitive;
            c(m.get(i, j).to_f64().unwrap())
        })
    }

    /// `(E_ij)^{(a)}` of `gl_2` on factor `a`.
    pub fn gl2(&self, a: usize, i: usize, j: usize) -> CMat {
        let m = on_leg::<BigRational>(&self.basis, Split::Rows, a, &(), &|fb| gl_n_op(fb, i, j, &())).expect("row leg");
        self.rational(m)
    }

    /// `Delta(E_ij)` of `gl_2`.
    pub fn gl2_total(&self, i: usize, j: usize) -> CMat {
        self.rational(gl_n_op::<BigRational>(&self.basis, i, j, &()).expect("gl_2 generator"))
    }

    /// The whole degree component containing the fiber, where single-column
    /// `gl_k` operators live.
    fn ambient(&self) -> MonomialBasis {
        MonomialBasis::total_degree(self.k(), 2, self.lambda.iter().sum())
    }

    /// `(E_ab)^{(col)}` of `gl_k` on column `col`, on the ambient component.
    fn glk_ambient(&self, amb: &MonomialBasis, col: usize, a: usize, b: usize) -> CMat {
        let m = on_leg::<BigRational>(amb, Split::Columns, col, &(), &|fb| gl_k_op(fb, a, b, &())).expect("column leg");
        self.rational(m)
    }

    /// Restrict an ambient operator that preserves row degrees to the fiber.
    fn restrict(&self, amb: &MonomialBasis, m: &CMat) -> CMat {
        let idx: Vec<usize> = (0..self.dim()).map(|i| amb.index_of(self.basis.exp(i)).expect("fiber monomial")).collect();
        CMat::from_fn(self.dim(), self.dim(), |i, j| m[(idx[i], idx[j])])
    }

    /// `kappa = E_12 E_21 + E_21 E_12` on factor `a`.
    pub fn kappa(&self, a: usize) -> CMat {
        let (e, f) = (self.gl2(a, 0, 1), self.gl2(a, 1, 0));
        &e * &f + &f * &e
    }

    pub fn kappa_total(&self) -> CMat {
        let (e, f) = (self.gl2_total(0, 1), self.gl2_total(1, 0));
        &e * &f + &f * &e
    }

    /// `Delta(I)`, the total degree.
    pub fn total_degree(&self) -> CMat {
        self.gl2_total(0, 0) + self.gl2_total(1, 1)
    }

    /// The column flip: the `S_2` action on the `gl_2` fiber and the factor swap
    /// on the KZ fiber.
    pub fn flip(&self) -> CMat {
        to_dmatrix(&flip_tau::<C>(&self.basis, &ComplexCtx::plain()).expect("two columns"))
    }

    /// `(-1)^{E_11}` with `E_11 = Delta(E_11)`.
    pub fn sign_e11(&self) -> CMat {
        CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            self.dim(),
            (0..self.dim()).map(|i| c(if self.basis.col_degree(i, 0) % 2 == 0 { 1.0 } else { -1.0 })),
        ))
    }

    /// `(-1)^{E_22}`.
    pub fn sign_e22(&self) -> CMat {
        CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            self.dim(),
            (0..self.dim()).map(|i| c(if self.basis.col_degree(i, 1) % 2 == 0 { 1.0 } else { -1.0 })),
        ))
    }

    /// `sigma = [[0, 1], [-1, 0]]` on every factor: `x_1 -> -x_2`, `x_2 -> x_1`.
    pub fn sigma(&self) -> CMat {
        self.flip() * self.sign_e11()
    }

    /// `sigma^-1 = sigma^T`: `x_1 -> x_2`, `x_2 -> -x_1`.
    pub fn sigma_inv(&self) -> CMat {
        self.sign_e11() * self.flip()
    }
}

/// Which connection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ConnectionKind {
    Sl2Casimir,
    Gl2Casimir,
    GlkKz,
    /// The closed central difference `w_KZ - w_C = -h (Pole - d eps_2) Delta(I)`.
    Abelian,
}

/// Coordinates the connection is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `u` with `z = e^{2 pi i u}` on the torus of `SL_2`, `e^alpha = e^{4 pi i u}`.
    U,
    /// `(z_1, z_2)` on the torus of `GL_2`.
    Z,
}

#[derive(Clone, Copy, Debug)]
enum Form {
    /// `d alpha / (e^alpha - 1)` on `H`.
    SlPole,
    /// `d alpha` on `H`.
    SlFlat,
    /// `d(eps_1 - eps_2) / (e^{eps_1 - eps_2} - 1)` on `T`.
    Pole,
    /// `d eps_1 = dz_1/z_1`.
    DLog1,
    /// `d eps_2 = dz_2/z_2`.
    DLog2,
}

/// Parameters shared by all connections.
#[derive(Clone, Debug)]
pub struct ConnectionParams {
    pub lambda: Vec<u32>,
    pub s: Vec<C>,
    pub h: C,
}

/// `d - sum_j f_j M_j` for scalar one-forms `f_j`.
#[derive(Clone, Debug)]
pub struct TrigConnection {
    pub kind: ConnectionKind,
    pub chart: Chart,
    pub fiber: Arc<Fiber>,
    terms: Vec<(Form, CMat)>,
}

fn form_value(form: Form, p: &[C], dp: &[C]) -> Result<C> {
    match form {
        Form::SlPole | Form::SlFlat => {
            let da = 4.0 * PI * I * dp[0];
            if let Form::SlFlat = form {
                return Ok(da);
            }
            let den = (4.0 * PI * I * p[0]).exp() - c(1.0);
            if den.norm() < 1e-12 {
                return Err(Error::Singular(format!("e^alpha = 1 at u = {}", p[0])));
            }
            Ok(da / den)
        }
        Form::Pole | Form::DLog1 | Form::DLog2 => {
            let (z1, z2) = (p[0], p[1]);
            if z1.norm() < 1e-12 || z2.norm() < 1e-12 || (z1 - z2).norm() < 1e-12 {
                return Err(Error::Singular(format!("({z1}, {z2}) is not regular")));
            }
            let (e1, e2) = (dp[0] / z1, dp[1] / z2);
            Ok(match form {
                Form::DLog1 => e1,
                Form::DLog2 => e2,
                _ => (e1 - e2) / (z1 / z2 - c(1.0)),
            })
        }
    }
}

impl TrigConnection {
    pub fn dim(&self) -> usize {
        self.fiber.dim()
    }

    /// The connection matrix paired with the tangent vector `dp` at `p`.
    pub fn matrix(&self, p: &[C], dp: &[C]) -> Result<CMat> {
        let mut out = CMat::zeros(self.dim(), self.dim());
        for (f, m) in &self.terms {
            let v = form_value(*f, p, dp)?;
            out += m * v;
        }
        Ok(out)
    }

    /// The zero connection on the same fiber.
    pub fn zero(fiber: Arc<Fiber>, chart: Chart) -> Self {
        TrigConnection { kind: ConnectionKind::Abelian, chart, fiber, terms: vec![] }
    }
}

/// Assemble the evaluated connection on `V_{lambda_1}(s_1) x .. x V_{lambda_k}(s_k)`.
///
/// The `sl_2` connection is written through the Chevalley-twisted embedding
/// `e -> E_21, f -> E_12, h -> E_22 - E_11`, under which it is literally the
/// restriction of the `gl_2` connection to `z -> (z, z^-1)`. Both Casimir
/// connections use the points `h s_a`; the KZ connection uses `s = sum s_a E_aa`.
pub fn build_connection(kind: ConnectionKind, params: &ConnectionParams) -> Result<TrigConnection> {
    if params.s.len() != params.lambda.len() {
        return Err(Error::Dimension("need one s_a per factor".into()));
    }
    let fiber = Arc::new(Fiber::new(&params.lambda)?);
    let k = fiber.k();
    let h = params.h;
    let s = &params.s;
    let zero = CMat::zeros(fiber.dim(), fiber.dim());
    // sum_{a<b} E_12^(a) E_21^(b)
    let mut cross = zero.clone();
    for a in 0..k {
        for b in a + 1..k {
            cross += fiber.gl2(a, 0, 1) * fiber.gl2(b, 1, 0);
        }
    }
    let kappas = (0..k).fold(zero.clone(), |acc, a| acc + fiber.kappa(a));
    let (terms, chart) = match kind {
        ConnectionKind::Sl2Casimir => {
            let mut a_sl = zero.clone();
            for a in 0..k {
                let hh = fiber.gl2(a, 1, 1) - fiber.gl2(a, 0, 0);
                a_sl += hh * (h * s[a]);
            }
            a_sl -= &kappas * (h / 2.0);
            a_sl -= &cross * (h * 2.0);
            (vec![(Form::SlPole, fiber.kappa_total() * h), (Form::SlFlat, -a_sl)], Chart::U)
        }
        ConnectionKind::Gl2Casimir => {
            let mut a1 = &cross * (h * 2.0);
            let mut a2 = &cross * (-h * 2.0) - &kappas * h;
            for a in 0..k {
                let (e11, e22) = (fiber.gl2(a, 0, 0), fiber.gl2(a, 1, 1));
                let mixed = &e11 * &e22 * h;
                a1 += &e11 * (h * s[a] * 2.0) + &mixed;
                a2 += &e22 * (h * s[a] * 2.0) + &mixed;
            }
            (vec![(Form::Pole, fiber.kappa_total() * h), (Form::DLog1, a1), (Form::DLog2, a2)], Chart::Z)
        }
        ConnectionKind::GlkKz => {
            let amb = fiber.ambient();
            let n = amb.len();
            let e = |col, a, b| fiber.glk_ambient(&amb, col, a, b);
            let mut r = CMat::zeros(n, n);
            let mut r21 = CMat::zeros(n, n);
            for a in 0..k {
                let d = e(0, a, a) * e(1, a, a) * c(0.5);
                r += &d;
                r21 += &d;
                for b in a + 1..k {
                    r += e(0, a, b) * e(1, b, a);
                    r21 += e(0, b, a) * e(1, a, b);
                }
            }
            let omega = &r + &r21;
            let mut s1 = CMat::zeros(n, n);
            let mut s2 = CMat::zeros(n, n);
            for a in 0..k {
                s1 += e(0, a, a) * s[a];
                s2 += e(1, a, a) * s[a];
            }
            let x1 = s1 + &r;
            let x2 = s2 - &r;
            let two_h = h * 2.0;
            let res = |m: CMat| fiber.restrict(&amb, &(m * two_h));
            (vec![(Form::Pole, res(omega)), (Form::DLog1, res(x1)), (Form::DLog2, res(x2))], Chart::Z)
        }
        ConnectionKind::Abelian => {
            let di = fiber.total_degree() * h;
            (vec![(Form::Pole, -di.clone()), (Form::DLog2, di)], Chart::Z)
        }
    };
    Ok(TrigConnection { kind, chart, fiber, terms })
}

/// Named generator loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum LoopName {
    S0,
    S1,
    B,
    X1,
    X2,
    Custom,
}

/// How a path closes up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Closed,
    /// Ends at the Weyl image of the basepoint.
    Half,
    /// An open path between basepoints.
    Open,
}

type PathFn = Arc<dyn Fn(f64) -> (Vec<C>, Vec<C>) + Send + Sync>;

/// A smooth path `t in [0, 1]` in a chart, with its derivative.
#[derive(Clone)]
pub struct LoopPath {
    pub name: LoopName,
    pub chart: Chart,
    pub closure: Closure,
    param: PathFn,
}

impl std::fmt::Debug for LoopPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LoopPath({:?}, {:?}, {:?})", self.name, self.chart, self.closure)
    }
}

impl LoopPath {
    pub fn new(name: LoopName, chart: Chart, closure: Closure, param: impl Fn(f64) -> (Vec<C>, Vec<C>) + Send + Sync + 'static) -> Self {
        LoopPath { name, chart, closure, param: Arc::new(param) }
    }

    pub fn at(&self, t: f64) -> (Vec<C>, Vec<C>) {
        (self.param)(t)
    }

    /// Distance to the singular locus, sampled.
    pub fn margin(&self) -> f64 {
        let mut m = f64::INFINITY;
        for i in 0..=2000 {
            let (p, _) = self.at(i as f64 / 2000.0);
            let d = match self.chart {
                Chart::U => {
                    let n = (2.0 * p[0].re).round() / 2.0;
                    (p[0] - c(n)).norm()
                }
                Chart::Z => p[0].norm().min(p[1].norm()).min((p[0] - p[1]).norm()),
            };
            m = m.min(d);
        }
        m
    }

    /// The same path with a bump `eps * sin(pi t)^2 * direction` added to each
    /// coordinate; homotopic to the original for small `eps`.
    pub fn wiggled(&self, eps: f64, direction: &[C]) -> LoopPath {
        let base = self.param.clone();
        let dir = direction.to_vec();
        LoopPath::new(self.name, self.chart, self.closure, move |t| {
            let (mut p, mut dp) = base(t);
            let s = (PI * t).sin();
            let bump = s * s * eps;
            let dbump = 2.0 * s * (PI * t).cos() * PI * eps;
            for (i, d) in dir.iter().enumerate() {
                p[i] += d * bump;
                dp[i] += d * dbump;
            }
            (p, dp)
        })
    }
}

/// The generators: `S0, S1` in the `u` chart based at `u = 1/4`, and
/// `b, X1, X2` in the `z` chart based at `(1, 2)`.
pub fn standard_loops(chart: Chart) -> Vec<LoopPath> {
    match chart {
        Chart::U => vec![
            // around u = 1/2 through the lower half plane, 1/4 -> 3/4 = -1/4 mod 1
            LoopPath::new(LoopName::S0, Chart::U, Closure::Half, |t| {
                let e = (PI * I * t).exp();
                (vec![c(0.5) - e * 0.25], vec![-e * (0.25 * PI) * I])
            }),
            // around u = 0 through the upper half plane, 1/4 -> -1/4
            LoopPath::new(LoopName::S1, Chart::U, Closure::Half, |t| {
                let e = (PI * I * t).exp();
                (vec![e * 0.25], vec![e * (0.25 * PI) * I])
            }),
        ],
        Chart::Z => vec![
            LoopPath::new(LoopName::B, Chart::Z, Closure::Half, |t| {
                let e = (PI * I * t).exp();
                let d = e * (0.5 * PI) * I;
                (vec![c(1.5) - e * 0.5, c(1.5) + e * 0.5], vec![-d, d])
            }),
            LoopPath::new(LoopName::X1, Chart::Z, Closure::Closed, |t| {
                let e = (2.0 * PI * I * t).exp();
                (vec![e, c(2.0)], vec![e * (2.0 * PI) * I, c(0.0)])
            }),
            LoopPath::new(LoopName::X2, Chart::Z, Closure::Closed, |t| {
                let e = (2.0 * PI * I * t).exp();
                (vec![c(1.0), e * 2.0], vec![c(0.0), e * (4.0 * PI) * I])
            }),
        ],
    }
}

/// Straight path from the `GL_2` basepoint `(1, 2)` to the image `(i, -i)` of
/// the `SL_2` basepoint `u = 1/4`.
pub fn basepoint_path() -> LoopPath {
    let (a, b) = ([c(1.0), c(2.0)], [I, -I]);
    LoopPath::new(LoopName::Custom, Chart::Z, Closure::Open, move |t| {
        (vec![a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t], vec![b[0] - a[0], b[1] - a[1]])
    })
}

/// The `SL_2` path `u(t)` pushed into `T` by `u -> (e^{2 pi i u}, e^{-2 pi i u})`.
pub fn torus_image(path: &LoopPath) -> Result<LoopPath> {
    if path.chart != Chart::U {
        return Err(Error::Domain("only u-chart paths map into the torus".into()));
    }
    let p = path.clone();
    Ok(LoopPath::new(path.name, Chart::Z, path.closure, move |t| {
        let (u, du) = p.at(t);
        let z = (2.0 * PI * I * u[0]).exp();
        let dz = z * (2.0 * PI) * I * du[0];
        (vec![z, z.inv()], vec![dz, -dz / (z * z)])
    }))
}

/// Parallel transport with an error estimate.
#[derive(Clone, Debug)]
pub struct Transport {
    pub matrix: CMat,
    /// `max |Y_tol - Y_{tol/32}|`, the finer solution being the one kept.
    pub error: f64,
    pub steps: usize,
}

/// Solve `Y' = w(gamma(t), gamma'(t)) Y`, `Y(0) = 1`, along the path.
pub fn transport(conn: &TrigConnection, path: &LoopPath, tol: f64) -> Result<Transport> {
    if conn.chart != path.chart {
        return Err(Error::Domain(format!("{:?} path for a connection in the {:?} chart", path.chart, conn.chart)));
    }
    let m = path.margin();
    if m < SINGULAR_MARGIN {
        return Err(Error::Singular(format!("path {:?} comes within {m:.3} of the singular locus", path.name)));
    }
    let a = |t: f64| {
        let (p, dp) = path.at(t);
        conn.matrix(&p, &dp)
    };
    let id = CMat::identity(conn.dim(), conn.dim());
    let coarse = solve_linear_ode(&a, &id, tol)?;
    let fine = solve_linear_ode(&a, &id, tol / 32.0)?;
    let error = (&coarse.y - &fine.y).iter().map(|x| x.norm()).fold(0.0, f64::max);
    Ok(Transport { matrix: fine.y, error, steps: fine.steps })
}

/// The fiber action of the Weyl reflection used to close a half-loop.
///
/// On the `sl_2` fiber `sigma^2 = (-1)^I`, so the lift is a choice per loop:
/// `S1` closes with `sigma` and `S0` with `sigma^-1`.
pub fn fiber_reflection(conn: &TrigConnection, loop_name: LoopName) -> CMat {
    match (conn.kind, loop_name) {
        (ConnectionKind::Sl2Casimir, LoopName::S0) => conn.fiber.sigma_inv(),
        (ConnectionKind::Sl2Casimir, _) => conn.fiber.sigma(),
        _ => conn.fiber.flip(),
    }
}

/// `Y(1)` for a closed loop, the reflection after `Y(1)` for a half-loop.
pub fn integrate_monodromy(conn: &TrigConnection, path: &LoopPath, tol: f64) -> Result<Transport> {
    let mut t = transport(conn, path, tol)?;
    if path.closure == Closure::Half {
        t.matrix = fiber_reflection(conn, path.name) * t.matrix;
    }
    Ok(t)
}

/// Images of named generators with error estimates.
#[derive(Clone, Debug)]
pub struct MonodromyRep {
    pub gens: BTreeMap<String, CMat>,
    pub errors: BTreeMap<String, f64>,
    pub tol: f64,
}

impl MonodromyRep {
    pub fn get(&self, name: &str) -> Result<&CMat> {
        self.gens.get(name).ok_or_else(|| Error::Domain(format!("generator {name} is not mapped")))
    }

    pub fn max_error(&self) -> f64 {
        self.errors.values().cloned().fold(0.0, f64::max)
    }
}

fn inv(m: &CMat) -> Result<CMat> {
    m.clone().try_inverse().ok_or_else(|| Error::Domain("singular monodromy".into()))
}

/// Monodromy of `b, X1, X2` for a `z`-chart connection.
pub fn gl_monodromy(conn: &TrigConnection, tol: f64) -> Result<MonodromyRep> {
    let mut gens = BTreeMap::new();
    let mut errors = BTreeMap::new();
    for p in standard_loops(Chart::Z) {
        let t = integrate_monodromy(conn, &p, tol)?;
        let name = match p.name {
            LoopName::B => "b",
            LoopName::X1 => "X1",
            _ => "X2",
        };
        gens.insert(name.to_string(), t.matrix);
        errors.insert(name.to_string(), t.error);
    }
    Ok(MonodromyRep { gens, errors, tol })
}

/// Monodromy of `S0, S1` for the `sl_2` connection.
pub fn sl_monodromy(conn: &TrigConnection, tol: f64) -> Result<MonodromyRep> {
    let mut gens = BTreeMap::new();
    let mut errors = BTreeMap::new();
    for p in standard_loops(Chart::U) {
        let t = integrate_monodromy(conn, &p, tol)?;
        let name = if p.name == LoopName::S0 { "S0" } else { "S1" };
        gens.insert(name.to_string(), t.matrix);
        errors.insert(name.to_string(), t.error);
    }
    Ok(MonodromyRep { gens, errors, tol })
}

fn exp_scaled_diag(d: &CMat, x: C) -> CMat {
    CMat::from_diagonal(&nalgebra::DVector::from_iterator(d.nrows(), (0..d.nrows()).map(|i| (d[(i, i)] * x).exp())))
}

fn residual(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// The relations between the KZ and `gl_2` Casimir monodromies, and between the
/// `sl_2` and `gl_2` ones.
///
/// `Y(1)` reverses products of paths traversed left to right, so the loop
/// `X1 b X1^-1` has monodromy `X1^-1 b X1` and `S0 S1` has `S1 S0`.
pub fn duality_monodromy_check(lambda: &[u32], s: &[f64], h: f64, tol: f64) -> Result<Vec<IdentityCheck>> {
    let params = ConnectionParams { lambda: lambda.to_vec(), s: s.iter().map(|&x| c(x)).collect(), h: c(h) };
    let kz = build_connection(ConnectionKind::GlkKz, &params)?;
    let cas = build_connection(ConnectionKind::Gl2Casimir, &params)?;
    let sl = build_connection(ConnectionKind::Sl2Casimir, &params)?;
    let pk = gl_monodromy(&kz, tol)?;
    let pc = gl_monodromy(&cas, tol)?;
    let di = cas.fiber.total_degree();
    let mut out = vec![];
    let e_b = exp_scaled_diag(&di, -PI * I * h);
    let e_x = exp_scaled_diag(&di, 2.0 * PI * I * h);
    out.push(IdentityCheck::new("pi_KZ(b) = pi_C(b) e^{-pi i h I}", residual(pk.get("b")?, &(pc.get("b")? * e_b))));
    out.push(IdentityCheck::new("pi_KZ(X1) = pi_C(X1) e^{2 pi i h I}", residual(pk.get("X1")?, &(pc.get("X1")? * e_x))));
    out.push(IdentityCheck::new("pi_KZ(X2) = pi_C(X2)", residual(pk.get("X2")?, pc.get("X2")?)));

    // the sl_2 loops, carried to the gl_2 basepoint
    let p = transport(&cas, &basepoint_path(), tol)?.matrix;
    let pi = inv(&p)?;
    let ps = sl_monodromy(&sl, tol)?;
    let back = |m: &CMat| &pi * m * &p;
    let (s0, s1) = (back(ps.get("S0")?), back(ps.get("S1")?));
    let sign = cas.fiber.sign_e11();
    let (b, x1, x2) = (pc.get("b")?, pc.get("X1")?, pc.get("X2")?);
    let x1i = inv(x1)?;
    out.push(IdentityCheck::new("pi_sl(S1) = pi_gl(b) (-1)^{E_11}", residual(&s1, &(b * &sign))));
    let sign2 = cas.fiber.sign_e22();
    out.push(IdentityCheck::new("pi_sl(S0) = pi_gl(X1 b X1^-1) (-1)^{E_22}", residual(&s0, &(&x1i * b * x1 * &sign2))));
    out.push(IdentityCheck::new("pi_sl(S0 S1) = pi_gl(X1 b X1^-1 b)", residual(&(&s1 * &s0), &(b * &x1i * b * x1))));
    out.push(IdentityCheck::new("X2 = b X1 b", residual(x2, &(b * x1 * b))));
    out.push(IdentityCheck::new("b X1 b X1 = X1 b X1 b", residual(&(b * x1 * b * x1), &(x1 * b * x1 * b))));
    Ok(out)
}
