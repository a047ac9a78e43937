//! Linearisation of the layered system around a uniform background
//! (`h = H + h'`, `u_a = U_a + u'_a`, `rho_a = r_a + rho'_a`, flat bottom,
//! inviscid) written as `q_t + A q_x = 0` for `q = (h, u_1..u_N, rho_1..rho_N)`.

use nalgebra::{Complex, DMatrix, Schur};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::validate_fractions;

/// Background profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub h: f64,
    pub u: Vec<f64>,
    /// Relative density of each layer.
    pub rho: Vec<f64>,
    pub l: Vec<f64>,
    pub g: f64,
}

impl LinearModel {
    pub fn new(h: f64, u: Vec<f64>, rho: Vec<f64>, l: Vec<f64>, g: f64) -> Result<Self> {
        let m = Self { h, u, rho, l, g };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        validate_fractions(&self.l)?;
        if !(self.h > 0.0) || !(self.g > 0.0) {
            return Err(Error::Config(format!("need H > 0 and g > 0, got H = {}, g = {}", self.h, self.g)));
        }
        if self.u.len() != self.l.len() || self.rho.len() != self.l.len() {
            return Err(Error::Shape(format!(
                "{} fractions, {} velocities, {} densities",
                self.l.len(),
                self.u.len(),
                self.rho.len()
            )));
        }
        Ok(())
    }

    pub fn layers(&self) -> usize {
        self.l.len()
    }

    /// Velocities `U_a = dU (zeta_a - 1/2)` varying linearly with the relative
    /// height `zeta_a` of the layer midpoints, densities zero.
    pub fn linear_shear(h: f64, l: Vec<f64>, contrast: f64, g: f64) -> Result<Self> {
        let mut z = 0.0;
        let u = l
            .iter()
            .map(|la| {
                let mid = z + 0.5 * la;
                z += la;
                contrast * (mid - 0.5)
            })
            .collect();
        let n = l.len();
        Self::new(h, u, vec![0.0; n], l, g)
    }
}

/// A background profile tagged with an identifier, as listed in profile files:
///
/// ```toml
/// [[profile]]
/// id = "two_layer"
/// h = 1.0
/// g = 9.81
/// l = [0.5, 0.5]
/// u = [0.0, 1.0]
/// rho = [0.03, 0.0]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedProfile {
    pub id: String,
    #[serde(flatten)]
    pub model: LinearModel,
}

#[derive(Debug, Deserialize)]
struct ProfileFile {
    profile: Vec<NamedProfile>,
}

pub fn parse_profiles(text: &str) -> Result<Vec<NamedProfile>> {
    let f: ProfileFile = toml::from_str(text)?;
    for p in &f.profile {
        p.model.validate().map_err(|e| Error::Config(format!("profile '{}': {e}", p.id)))?;
    }
    Ok(f.profile)
}

/// The matrix `A` with the intermediate quantities it is built from.
/// Interface-indexed vectors (`du_bar`, rows of `m`) hold the `N - 1`
/// internal interfaces; bottom and surface values are zero.
#[derive(Debug, Clone)]
pub struct AssembledA {
    pub model: LinearModel,
    pub a: DMatrix<f64>,
    pub ubar: f64,
    /// `U_b - Ubar`
    pub du: Vec<f64>,
    /// `sum_{c <= a} l_c (U_c - Ubar)` at interface `a + 1/2`.
    pub du_bar: Vec<f64>,
    /// `M[a][c]` at interface `a + 1/2`, `(N - 1) x N`.
    pub m: DMatrix<f64>,
    pub r: Vec<f64>,
    pub s: Vec<f64>,
    pub v: Vec<f64>,
    pub w: DMatrix<f64>,
    pub v_rho: Vec<f64>,
    pub w_rho: DMatrix<f64>,
    /// `T L`
    pub tl: DMatrix<f64>,
}

impl AssembledA {
    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    /// `U + H W`, whose eigenvalues `z` determine the spectrum when the
    /// background density vanishes.
    pub fn velocity_block(&self) -> DMatrix<f64> {
        let n = self.model.layers();
        let mut b = &self.w * self.model.h;
        for a in 0..n {
            b[(a, a)] += self.model.u[a];
        }
        b
    }
}

pub fn assemble_a(model: &LinearModel) -> AssembledA {
    let n = model.layers();
    let (h, g, l, u, rho) = (model.h, model.g, &model.l, &model.u, &model.rho);
    let ubar: f64 = l.iter().zip(u).map(|(l, u)| l * u).sum();
    let du: Vec<f64> = u.iter().map(|u| u - ubar).collect();
    let ni = n.saturating_sub(1);
    let mut du_bar = vec![0.0; ni];
    let mut m = DMatrix::zeros(ni, n);
    let mut cum_l = 0.0;
    let mut cum_du = 0.0;
    for a in 0..ni {
        cum_l += l[a];
        cum_du += l[a] * du[a];
        du_bar[a] = cum_du;
        for c in 0..n {
            m[(a, c)] = if c <= a { l[c] * (1.0 - cum_l) } else { -l[c] * cum_l };
        }
    }
    let r: Vec<f64> = (0..n).map(|a| rho[a] + ((a + 1)..n).map(|b| l[b] * (rho[b] - rho[a])).sum::<f64>()).collect();

    // Jump of `f` across interface a+1/2 divided by 2 H l_b (interfaces
    // outside 0..N-1 contribute nothing).
    let jump = |f: &[f64], k: usize, b: usize| (f[k + 1] - f[k]) / (2.0 * h * l[b]);
    // Coefficients of h_x and u_x produced by the transfer terms
    // `d_above Gbar_{a+1/2} + d_below Gbar_{a-1/2}`.
    let transfer = |f: &[f64]| {
        let mut v = vec![0.0; n];
        let mut w = DMatrix::zeros(n, n);
        for a in 0..n {
            if a + 1 < n {
                let d = jump(f, a, a);
                v[a] -= d * du_bar[a];
                for c in 0..n {
                    w[(a, c)] -= d * m[(a, c)];
                }
            }
            if a > 0 {
                let d = jump(f, a - 1, a);
                v[a] -= d * du_bar[a - 1];
                for c in 0..n {
                    w[(a, c)] -= d * m[(a - 1, c)];
                }
            }
        }
        (v, w)
    };
    let (v, w) = transfer(u);
    let (v_rho, w_rho) = transfer(rho);
    let s: Vec<f64> = (0..n).map(|a| 1.0 + r[a] + v[a] / g).collect();
    let mut tl = DMatrix::zeros(n, n);
    for a in 0..n {
        tl[(a, a)] = 0.5 * l[a];
        for b in (a + 1)..n {
            tl[(a, b)] = l[b];
        }
    }

    let dim = 2 * n + 1;
    let mut mat = DMatrix::zeros(dim, dim);
    mat[(0, 0)] = ubar;
    for a in 0..n {
        mat[(0, 1 + a)] = l[a] * h;
        mat[(1 + a, 0)] = g * s[a];
        mat[(1 + n + a, 0)] = v_rho[a];
        for c in 0..n {
            mat[(1 + a, 1 + c)] = h * w[(a, c)];
            mat[(1 + a, 1 + n + c)] = g * h * tl[(a, c)];
            mat[(1 + n + a, 1 + c)] = h * w_rho[(a, c)];
        }
        mat[(1 + a, 1 + a)] += u[a];
        mat[(1 + n + a, 1 + n + a)] = u[a];
    }
    AssembledA { model: model.clone(), a: mat, ubar, du, du_bar, m, r, s, v, w, v_rho, w_rho, tl }
}

fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<Complex<f64>>> {
    let n = m.nrows();
    // The QR iteration can stall on the tightest deflation test when the
    // spectrum has a highly repeated eigenvalue; relax it a little if so.
    let schur = [f64::EPSILON, 1e-15, 1e-14]
        .into_iter()
        .find_map(|eps| Schur::try_new(m.clone(), eps, 10_000))
        .ok_or(Error::Eigen(n))?;
    let mut ev: Vec<Complex<f64>> = schur.complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(ev)
}

/// All eigenvalues of `A`, sorted by real then imaginary part.
///
/// When the density rows do not see `h` and `u` (exactly zero lower-left
/// block, e.g. for a vertically uniform background density) `A` is block
/// upper triangular and its spectrum is that of the leading `(N+1)` block
/// plus the diagonal `U`. Deflating first matters: the full matrix then has
/// a defective eigenvalue `U` that a dense solver resolves only to about
/// `sqrt(eps)`.
pub fn spectrum(a: &AssembledA) -> Result<Vec<Complex<f64>>> {
    let n = a.model.layers();
    let lower_left = a.a.view((n + 1, 0), (n, n + 1));
    if lower_left.iter().all(|v| *v == 0.0) {
        let lead = a.a.view((0, 0), (n + 1, n + 1)).into_owned();
        let mut ev = eigenvalues(&lead)?;
        ev.extend(a.model.u.iter().map(|u| Complex::new(*u, 0.0)));
        ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        return Ok(ev);
    }
    eigenvalues(&a.a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperbolicity {
    pub hyperbolic: bool,
    pub max_imag: f64,
    pub spectral_radius: f64,
    pub tol: f64,
}

/// Default tolerance on `|Im lambda|` relative to the spectral radius.
pub const HYPERBOLICITY_RTOL: f64 = 1e-10;

/// Hyperbolic when no eigenvalue has `|Im lambda|` above `tol`, by default
/// [`HYPERBOLICITY_RTOL`] times the spectral radius.
pub fn hyperbolicity_check(spectrum: &[Complex<f64>], tol: Option<f64>) -> Hyperbolicity {
    let max_imag = spectrum.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    let spectral_radius = spectrum.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let tol = tol.unwrap_or(HYPERBOLICITY_RTOL * spectral_radius);
    Hyperbolicity { hyperbolic: max_imag <= tol, max_imag, spectral_radius, tol }
}

/// For zero background density, every eigenvalue `z` of `U + H W` pairs with
/// eigenvalues `lambda` of `A` satisfying `(z - lambda)(Ubar - lambda) = g H`.
/// Returns the largest over `z` of the smallest `|(z - lambda)(Ubar - lambda) - g H|`.
pub fn characteristic_residual(a: &AssembledA, spectrum: &[Complex<f64>]) -> Result<f64> {
    if a.model.rho.iter().any(|r| *r != 0.0) {
        return Err(Error::Config("the characteristic relation needs zero background density".into()));
    }
    let gh = a.model.g * a.model.h;
    let ubar = Complex::new(a.ubar, 0.0);
    let zs = eigenvalues(&a.velocity_block())?;
    Ok(zs
        .iter()
        .map(|&z| spectrum.iter().map(|&lam| ((z - lam) * (ubar - lam) - gh).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max))
}

/// Exact form of the relation above. For zero background density `A` is
/// block upper triangular, so every eigenvalue `lambda` is either some `U_a`
/// or makes the Schur complement `U + H W - lambda I - g s (H l)^T / (Ubar - lambda)`
/// singular. Returns the largest over the spectrum of the smaller of the
/// distance to the `U_a` and the least singular value of that complement
/// (of the whole leading block when `lambda` is within round-off of `Ubar`).
pub fn schur_residual(a: &AssembledA, spectrum: &[Complex<f64>]) -> Result<f64> {
    if a.model.rho.iter().any(|r| *r != 0.0) {
        return Err(Error::Config("the Schur relation needs zero background density".into()));
    }
    let n = a.model.layers();
    let lead = a.a.view((0, 0), (n + 1, n + 1)).map(|v| Complex::new(v, 0.0));
    let scale = lead.norm();
    let mut worst = 0.0f64;
    for &lam in spectrum {
        let to_u = a.model.u.iter().map(|&u| (lam - u).norm()).fold(f64::INFINITY, f64::min);
        let pivot = lead[(0, 0)] - lam;
        let sigma = if pivot.norm() > 1e-8 * scale {
            let mut s = lead.view((1, 1), (n, n)).into_owned();
            for i in 0..n {
                s[(i, i)] -= lam;
                for j in 0..n {
                    s[(i, j)] -= lead[(i + 1, 0)] * lead[(0, j + 1)] / pivot;
                }
            }
            s.singular_values().min()
        } else {
            let mut s = lead.clone();
            for i in 0..=n {
                s[(i, i)] -= lam;
            }
            s.singular_values().min()
        };
        worst = worst.max(to_u.min(sigma));
    }
    Ok(worst)
}

/// One point of a shear sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub contrast: f64,
    pub max_imag: f64,
    /// [`characteristic_residual`]
    pub residual: f64,
    /// [`schur_residual`]
    pub schur: f64,
}

/// `max |Im lambda|` and the characteristic residual along a family of
/// [`LinearModel::linear_shear`] profiles.
pub fn shear_sweep(h: f64, l: &[f64], g: f64, contrasts: &[f64]) -> Result<Vec<SweepPoint>> {
    contrasts
        .iter()
        .map(|&c| {
            let a = assemble_a(&LinearModel::linear_shear(h, l.to_vec(), c, g)?);
            let sp = spectrum(&a)?;
            Ok(SweepPoint {
                contrast: c,
                max_imag: hyperbolicity_check(&sp, None).max_imag,
                residual: characteristic_residual(&a, &sp)?,
                schur: schur_residual(&a, &sp)?,
            })
        })
        .collect()
}
