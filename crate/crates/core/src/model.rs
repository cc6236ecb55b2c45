//! Community shape parameterizations, conversions, and area computation.
//!
//! A community over `n_c` ranked nodes is a region of the `n_c × n_c` ordered
//! adjacency grid bounded by a rectangular hyperbola: cell `(i, j)` belongs to
//! the community iff `(i + p)(j + p) ≤ θ`. Three equivalent forms are
//! supported:
//!
//! * **hyperbolic** `(p, θ)` — the raw curve parameters ([`HyperbolicParams`]);
//! * **fixed-points** `(γ, H)` — non-negative integers anchoring the curve
//!   where it crosses the diagonal (`i = j = γ`) and where it exits the grid
//!   (`(n_c − 1, H)`); this is the form searched during fitting
//!   ([`FixedParams`]);
//! * **mixture** `(x, Σ)` — `(1 − |x|)·ij + x·(i + j) ≤ Σ`, interpolating
//!   between a pure product rule (`x = 0`) and a pure sum rule (`x = 1`)
//!   ([`MixtureParams`]).
//!
//! The fixed-points form determines the others:
//!
//! ```text
//! p = (γ² − (n_c − 1)·H) / ((n_c − 1) + H − 2γ)        θ = (γ + p)²
//! x = p / (1 + |p|)                                     Σ = (θ − p²) / (1 + |p|)
//! ```
//!
//! When the denominator `(n_c − 1) + H − 2γ` vanishes, the curve degenerates
//! into the straight line `i + j = 2γ` (the `p → ∞`, `x → 1` limit).
//! [`ModelParams`] carries that case explicitly, which keeps the feasible
//! parameter region closed and realizes the full-square quasi-clique as
//! `γ = H = n_c − 1`.
//!
//! Membership tests and cell counts for fitted shapes run in exact `i64`
//! arithmetic: with `D = (n_c − 1) + H − 2γ` and `N = γ² − (n_c − 1)·H`, the
//! real test `(i + p)(j + p) ≤ θ` is equivalent to the integer test
//! `(D·i + N)(D·j + N) ≤ (D·γ + N)²`. Boundary ties (cells exactly on the
//! curve — the diagonal crossing always is) therefore never depend on
//! floating-point rounding. The raw `f64` predicates on [`HyperbolicParams`]
//! and [`MixtureParams`] are kept for free-standing real parameters and use
//! exact `≤` on doubles, no epsilon.

use thiserror::Error;

/// Largest community size for which the exact integer membership arithmetic
/// is guaranteed not to overflow: every intermediate product is bounded by
/// ~12·n_c⁴, which stays below 2⁶³ with ample margin up to this size.
pub const MAX_EXACT_NC: u32 = 25_000;

/// Errors from parameter validation and conversion.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    /// The integer shape violates a feasibility constraint.
    #[error("infeasible shape γ={gamma}, H={h}, n_c={n_c}: {reason}")]
    Infeasible {
        gamma: u32,
        h: u32,
        n_c: u32,
        reason: &'static str,
    },
    /// The shape sits on the boundary `2γ = (n_c − 1) + H` where `p → ∞`;
    /// it has no finite hyperbolic form (the region is the line `i + j ≤ 2γ`).
    #[error("degenerate linear boundary (2γ = n_c − 1 + H): p is not finite")]
    DegenerateLinear,
    /// An argument lies outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(&'static str),
}

/// Raw hyperbola parameters: cell `(i, j)` is inside iff `(i + p)(j + p) ≤ θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicParams {
    /// Axis offset, in index units. Feasible fitted shapes have `p ≥ −γ/2`.
    pub p: f64,
    /// Threshold, in index² units. Non-empty shapes satisfy `θ ≥ p²`.
    pub theta: f64,
}

impl HyperbolicParams {
    /// Membership test `(i + p)(j + p) ≤ θ`, exact `≤` on doubles.
    pub fn contains(&self, i: f64, j: f64) -> bool {
        (i + self.p) * (j + self.p) <= self.theta
    }
}

/// Integer anchor parameters: `γ` is where the curve crosses the diagonal,
/// `H` the height at which it exits the grid through column `n_c − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FixedParams {
    pub gamma: u32,
    pub h: u32,
    pub n_c: u32,
}

impl FixedParams {
    pub fn new(gamma: u32, h: u32, n_c: u32) -> Self {
        FixedParams { gamma, h, n_c }
    }

    /// Checks all feasibility constraints, reporting the first violated one.
    pub fn validate(&self) -> Result<(), ModelError> {
        let err = |reason| ModelError::Infeasible {
            gamma: self.gamma,
            h: self.h,
            n_c: self.n_c,
            reason,
        };
        if self.n_c < 2 {
            return Err(err("community size below 2"));
        }
        if self.n_c > MAX_EXACT_NC {
            return Err(ModelError::Domain(
                "community size exceeds the exact-arithmetic limit",
            ));
        }
        let (g, h, n1) = (self.gamma as i64, self.h as i64, (self.n_c - 1) as i64);
        if h > g {
            return Err(err("H exceeds γ"));
        }
        if 2 * g > n1 + h {
            return Err(err("γ exceeds (n_c − 1 + H)/2"));
        }
        // p ≥ −γ/2 cleared of denominators: γ·((n_c−1) + H) ≥ 2·(n_c−1)·H.
        // On the degenerate boundary (denominator 0) this always holds.
        if g * (n1 + h) < 2 * n1 * h {
            return Err(err("offset p falls below −γ/2"));
        }
        Ok(())
    }
}

/// Mixture parameters: cell `(i, j)` is inside iff
/// `(1 − |x|)·ij + x·(i + j) ≤ Σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureParams {
    /// Mixture weight in `[−1, 1]`; `x = 0` is the pure hyperbola through the
    /// origin, `|x| = 1` the pure linear rule.
    pub x: f64,
    /// Threshold (index² units at `x = 0`, index units at `|x| = 1`).
    pub sigma: f64,
}

impl MixtureParams {
    /// Membership test `(1 − |x|)·ij + x·(i + j) ≤ Σ`, exact `≤` on doubles.
    pub fn contains(&self, i: f64, j: f64) -> bool {
        (1.0 - self.x.abs()) * i * j + self.x * (i + j) <= self.sigma
    }
}

/// True iff the integer shape `(γ, H)` is feasible for a community of
/// `n_c` nodes: `0 ≤ H ≤ γ ≤ (n_c − 1 + H)/2` and the derived offset
/// satisfies `p ≥ −γ/2` (for `γ = 0` this forces `p ≥ 0`, preserving
/// membership of cell `(0, 0)`). The degenerate boundary
/// `2γ = (n_c − 1) + H` is accepted as the linear model.
pub fn is_feasible(gamma: u32, h: u32, n_c: u32) -> bool {
    if n_c < 2 {
        return false;
    }
    let (g, h, n1) = (gamma as i64, h as i64, (n_c - 1) as i64);
    h <= g && 2 * g <= n1 + h && g * (n1 + h) >= 2 * n1 * h
}

/// The contiguous range of feasible `γ` values for a given `H` (inclusive),
/// or `None` when no `γ` works. Useful for sweeping the integer grid without
/// testing every pair.
pub fn feasible_gamma_range(h: u32, n_c: u32) -> Option<(u32, u32)> {
    if n_c < 2 || h > n_c - 1 {
        return None;
    }
    let (hh, n1) = (h as i64, (n_c - 1) as i64);
    let hi = (n1 + hh) / 2;
    // ceil(2·n1·h / (n1 + h)), the p ≥ −γ/2 cutoff.
    let lo = (2 * n1 * hh + (n1 + hh) - 1) / (n1 + hh);
    let lo = lo.max(hh);
    if lo > hi {
        None
    } else {
        Some((lo as u32, hi as u32))
    }
}

/// Converts integer anchors to raw hyperbola parameters.
///
/// Fails with [`ModelError::DegenerateLinear`] on the boundary
/// `2γ = (n_c − 1) + H` (where the region is the line `i + j ≤ 2γ` and `p`
/// has no finite value) and with [`ModelError::Infeasible`] when the
/// constraints are violated.
pub fn fixed_to_hyperbolic(f: FixedParams) -> Result<HyperbolicParams, ModelError> {
    f.validate()?;
    let (g, h, n1) = (f.gamma as i64, f.h as i64, (f.n_c - 1) as i64);
    let den = n1 + h - 2 * g;
    if den == 0 {
        return Err(ModelError::DegenerateLinear);
    }
    let p = (g * g - n1 * h) as f64 / den as f64;
    let gp = f.gamma as f64 + p;
    Ok(HyperbolicParams { p, theta: gp * gp })
}

/// Converts hyperbola parameters to the mixture form:
/// `x = p/(1 + |p|)`, `Σ = (θ − p²)/(1 + |p|)`. Total on finite inputs.
pub fn hyperbolic_to_mixture(hp: HyperbolicParams) -> MixtureParams {
    let scale = 1.0 + hp.p.abs();
    MixtureParams {
        x: hp.p / scale,
        sigma: (hp.theta - hp.p * hp.p) / scale,
    }
}

/// Inverts [`hyperbolic_to_mixture`]: `p = x/(1 − |x|)`,
/// `θ = Σ·(1 + |p|) + p²`.
///
/// Fails with [`ModelError::DegenerateLinear`] at `|x| = 1` (the `p → ±∞`
/// line limit has no finite hyperbolic form).
pub fn mixture_to_hyperbolic(m: MixtureParams) -> Result<HyperbolicParams, ModelError> {
    if m.x.abs() > 1.0 {
        return Err(ModelError::Domain("mixture weight |x| must be ≤ 1"));
    }
    if m.x.abs() == 1.0 {
        return Err(ModelError::DegenerateLinear);
    }
    let p = m.x / (1.0 - m.x.abs());
    Ok(HyperbolicParams {
        p,
        theta: m.sigma * (1.0 + p.abs()) + p * p,
    })
}

/// The exact boundary of a fitted shape, cleared of fractions.
///
/// `Hyperbola { num, den, cap }` encodes `p = num/den`, `θ = cap/den²` with
/// `den > 0`, so membership is `(den·i + num)(den·j + num) ≤ cap` — an exact
/// integer comparison. `Line { cap }` is the degenerate rule `i + j ≤ cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Shape {
    Hyperbola { num: i64, den: i64, cap: i64 },
    Line { cap: i64 },
}

/// A community shape bound to a community size, supporting exact membership
/// tests and cell counts plus views of all three parameterizations.
///
/// Constructed from feasible integer anchors ([`ModelParams::from_fixed`]),
/// as the quasi-clique block ([`ModelParams::block`]), or as a member of the
/// HyCom family `p = 1, θ = t` ([`ModelParams::hycom`]). The per-column count
/// rule assumes feasibility (`p ≥ −γ/2`), which every constructor enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelParams {
    n_c: u32,
    shape: Shape,
    fixed: Option<FixedParams>,
}

impl ModelParams {
    /// Builds the exact shape for feasible integer anchors; the degenerate
    /// boundary becomes the line `i + j ≤ 2γ`.
    pub fn from_fixed(f: FixedParams) -> Result<Self, ModelError> {
        f.validate()?;
        let (g, h, n1) = (f.gamma as i64, f.h as i64, (f.n_c - 1) as i64);
        let den = n1 + h - 2 * g;
        let shape = if den == 0 {
            Shape::Line { cap: 2 * g }
        } else {
            let num = g * g - n1 * h;
            let edge = den * g + num;
            Shape::Hyperbola {
                num,
                den,
                cap: edge * edge,
            }
        };
        Ok(ModelParams {
            n_c: f.n_c,
            shape,
            fixed: Some(f),
        })
    }

    /// The full-square quasi-clique `γ = H = n_c − 1` (always the degenerate
    /// line `i + j ≤ 2(n_c − 1)`, which contains every cell).
    pub fn block(n_c: u32) -> Result<Self, ModelError> {
        Self::from_fixed(FixedParams::new(n_c - 1, n_c - 1, n_c))
    }

    /// A member of the HyCom family: `p = 1` (mixture weight `x = 0.5`) with
    /// integer threshold `θ = t`, i.e. membership `(i + 1)(j + 1) ≤ t`.
    pub fn hycom(theta: u64, n_c: u32) -> Result<Self, ModelError> {
        if n_c < 2 || n_c > MAX_EXACT_NC {
            return Err(ModelError::Domain("community size out of range"));
        }
        if theta == 0 {
            return Err(ModelError::Domain("HyCom threshold must be ≥ 1"));
        }
        Ok(ModelParams {
            n_c,
            shape: Shape::Hyperbola {
                num: 1,
                den: 1,
                cap: theta as i64,
            },
            fixed: None,
        })
    }

    pub fn n_c(&self) -> u32 {
        self.n_c
    }

    /// The integer anchors, when this shape was built from them.
    pub fn fixed(&self) -> Option<FixedParams> {
        self.fixed
    }

    /// True for the `p → ∞` line shape `i + j ≤ 2γ`.
    pub fn is_degenerate_linear(&self) -> bool {
        matches!(self.shape, Shape::Line { .. })
    }

    /// The diagonal crossing `γ = √θ − p` (exact integer value for shapes
    /// built from anchors; generally fractional for HyCom shapes).
    pub fn gamma(&self) -> f64 {
        if let Some(f) = self.fixed {
            return f.gamma as f64;
        }
        match self.shape {
            Shape::Hyperbola { num, den, cap } => ((cap as f64).sqrt() - num as f64) / den as f64,
            Shape::Line { cap } => cap as f64 / 2.0,
        }
    }

    /// The exit height `H = θ/(n_c − 1 + p) − p` — where the boundary leaves
    /// the grid through column `n_c − 1`. The exit anchor lies exactly on the
    /// curve, so this is the integer `H` for anchored shapes; HyCom shapes
    /// exit at a fractional height (negative when the threshold is too small
    /// to reach the last column).
    pub fn h(&self) -> f64 {
        if let Some(f) = self.fixed {
            return f.h as f64;
        }
        let n1 = (self.n_c - 1) as f64;
        match self.shape {
            Shape::Hyperbola { num, den, cap } => {
                let (num, den) = (num as f64, den as f64);
                (cap as f64 / (den * n1 + num) - num) / den
            }
            Shape::Line { cap } => cap as f64 - n1,
        }
    }

    /// The raw hyperbola view, `None` for the degenerate line.
    pub fn hyperbolic(&self) -> Option<HyperbolicParams> {
        match self.shape {
            Shape::Hyperbola { num, den, cap } => {
                let p = num as f64 / den as f64;
                Some(HyperbolicParams {
                    p,
                    theta: cap as f64 / (den as f64 * den as f64),
                })
            }
            Shape::Line { .. } => None,
        }
    }

    /// The mixture view; the degenerate line maps to `x = 1, Σ = 2γ`.
    pub fn mixture(&self) -> MixtureParams {
        match self.shape {
            Shape::Hyperbola { .. } => hyperbolic_to_mixture(self.hyperbolic().unwrap()),
            Shape::Line { cap } => MixtureParams {
                x: 1.0,
                sigma: cap as f64,
            },
        }
    }

    /// Exact membership test for cell `(i, j)`; symmetric in its arguments.
    pub fn contains(&self, i: u32, j: u32) -> bool {
        debug_assert!(i < self.n_c && j < self.n_c);
        match self.shape {
            Shape::Hyperbola { num, den, cap } => {
                let a = den * i as i64 + num;
                let b = den * j as i64 + num;
                a * b <= cap
            }
            Shape::Line { cap } => i as i64 + j as i64 <= cap,
        }
    }

    /// Exact membership evaluated through the mixture inequality
    /// `(1 − |x|)·ij + x·(i + j) ≤ Σ` cleared of fractions
    /// (`D²·ij + N·D·(i + j) ≤ cap − N²`), rather than through the hyperbola
    /// product. Agrees with [`ModelParams::contains`] on every cell — that is
    /// the parameterization identity — and exists so the agreement is
    /// checkable without floating-point rounding entering either side.
    pub fn contains_via_mixture(&self, i: u32, j: u32) -> bool {
        debug_assert!(i < self.n_c && j < self.n_c);
        let (i, j) = (i as i64, j as i64);
        match self.shape {
            Shape::Hyperbola { num, den, cap } => {
                den * den * i * j + num * den * (i + j) <= cap - num * num
            }
            Shape::Line { cap } => i + j <= cap,
        }
    }

    /// Number of cells of column `j` inside the shape, by the per-column
    /// rule: if `j + p ≤ 0` the whole column is inside; otherwise
    /// `clamp(⌊θ/(j + p) − p⌋, −1, n_c − 1) + 1`, evaluated exactly.
    pub fn col_count(&self, j: u32) -> u32 {
        let n1 = (self.n_c - 1) as i64;
        match self.shape {
            Shape::Hyperbola { num, den, cap } => {
                let b = den * j as i64 + num;
                if b <= 0 {
                    return self.n_c;
                }
                // Count i ≥ 0 with (den·i + num)·b ≤ cap, i.e.
                // den·b·i ≤ cap − num·b — floor division by den·b > 0.
                let r = cap - num * b;
                if r < 0 {
                    return 0;
                }
                ((r / (den * b)).min(n1) + 1) as u32
            }
            Shape::Line { cap } => (cap - j as i64 + 1).clamp(0, self.n_c as i64) as u32,
        }
    }

    /// Exact count of cells inside the shape over the full `n_c × n_c` grid
    /// (diagonal included). Runs in `O(n_c)`.
    pub fn area_exact(&self) -> u64 {
        (0..self.n_c).map(|j| self.col_count(j) as u64).sum()
    }

    /// The real boundary height `i(j)` of the curve at column `j`
    /// (`+∞` where the whole column is inside). For plotting.
    pub fn boundary_i(&self, j: f64) -> f64 {
        match self.shape {
            Shape::Hyperbola { num, den, cap } => {
                let p = num as f64 / den as f64;
                let theta = cap as f64 / (den as f64 * den as f64);
                if j + p <= 0.0 {
                    f64::INFINITY
                } else {
                    theta / (j + p) - p
                }
            }
            Shape::Line { cap } => cap as f64 - j,
        }
    }
}

/// Continuous approximation of the exact cell count: the integral
/// `∫₀ⁿ clamp(θ/(x + p) − p + 1, 0, n) dx` of the per-column count function
/// (a column at height `y` holds `⌊y⌋ + 1` cells), with columns left of the
/// `x + p = 0` asymptote counted as full.
///
/// For `p > 0` the integral is evaluated in closed form; for `p ≤ 0` the
/// smooth part falls back to adaptive quadrature of the clamped column
/// function. On feasible inputs the result is within `n_c + 2` of
/// [`ModelParams::area_exact`].
pub fn area_integral(hp: &HyperbolicParams, n_c: u32) -> f64 {
    let n = n_c as f64;
    let (p, theta) = (hp.p, hp.theta);
    if p > 0.0 {
        // Piecewise closed form. The integrand is n on [0, a], then
        // θ/(x+p) − (p − 1) down to where it hits zero (only possible for
        // p > 1), then 0.
        let a = if theta == 0.0 {
            0.0
        } else {
            (theta / (n - 1.0 + p) - p).clamp(0.0, n)
        };
        if theta == 0.0 {
            // Constant 1 − p on the unclamped stretch.
            return ((1.0 - p).max(0.0)) * n;
        }
        let b = if p > 1.0 {
            (theta / (p - 1.0) - p).clamp(a, n)
        } else {
            n
        };
        n * a + theta * ((b + p) / (a + p)).ln() - (p - 1.0) * (b - a)
    } else {
        // Full columns up to the asymptote, then quadrature of the smooth
        // clamped tail. The top clamp releases at a = θ/(n − 1 + p) − p; the
        // bottom clamp never engages for p ≤ 0 (the integrand stays ≥ 1 − p).
        let s = (-p).min(n);
        if theta == 0.0 {
            // Only γ = 0 lands here; the tail integrand is the constant 1 − p.
            return n * s + (1.0 - p) * (n - s);
        }
        let a = (theta / (n - 1.0 + p) - p).clamp(s, n);
        let f = |x: f64| {
            if x + p <= 0.0 {
                n
            } else {
                (theta / (x + p) - p + 1.0).clamp(0.0, n)
            }
        };
        n * a + adaptive_simpson(&f, a, n, 1e-9)
    }
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`, splitting until
/// Richardson's error estimate |S₂ − S₁|/15 drops below the local budget.
fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)
        }
    }
    if b <= a {
        return 0.0;
    }
    let (fa, fb) = (f(a), f(b));
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 48)
}

/// The closed-form continuous area of the `H = 0` hyperbola family as a
/// function of a real diagonal crossing `γ`, for asymptotic analysis:
///
/// ```text
/// A(γ, n) = γ²·(2(n − γ)²·ln((n − γ)/γ) − n(n − 2γ)) / (n − 2γ)²
/// ```
///
/// which is `θ·ln((n + p)/p) − p·n` under `p = γ²/(n − 2γ)`,
/// `θ = γ²(n − γ)²/(n − 2γ)²`. Defined for `0 < γ < n/2`; the growth step
/// `A(γ + 1) − A(γ)` scales as `Θ(γ·ln n)`, which justifies searching integer
/// `γ` only.
pub fn area_closed_form(gamma: f64, n_c: u32) -> Result<f64, ModelError> {
    let n = n_c as f64;
    if !(gamma > 0.0 && gamma < n / 2.0) {
        return Err(ModelError::Domain("γ must lie in (0, n_c/2)"));
    }
    let d = n - 2.0 * gamma;
    let g2 = gamma * gamma;
    let nm = n - gamma;
    Ok(g2 * (2.0 * nm * nm * ((nm / gamma).ln()) - n * d) / (d * d))
}
