//! Gaussian packets against barriers with an approximately linear front.
//!
//! Geometry: the front rises with slope `V0` from `x_start` to the peak at
//! `x_peak`; `D′ = x_peak − a` is the part of the front beyond the first
//! turning point `a`. Transmission and reflection are measured with the
//! split-step oracle and absorbing edges: `T` counts probability right of `b`
//! plus what the right absorber removed, `R` the same on the left of `a`.

use std::io::Write;

use rayon::prelude::*;

use crate::analytic::{free_evolve, linear_evolve, Ordering};
use crate::error::{Error, Result};
use crate::gaussian::{free_width, sample_gaussian, GaussianSpec};
use crate::grid::SpatialGrid;
use crate::observables::Moments;
use crate::oracle::{Absorber, SolverConfig, SplitStepSolver};
use crate::potential::Potential;
use crate::units::{UnitSystem, HBAR_SI};
use crate::wavefunction::WaveFunction;

/// Stationarity: T and R may change by at most this much per snapshot...
pub const STATIONARY_CHANGE: f64 = 1e-8;
/// ...over this many consecutive snapshots...
pub const STATIONARY_SNAPSHOTS: usize = 10;
/// ...while at most this much probability remains on the barrier.
pub const STATIONARY_OCCUPANCY: f64 = 1e-6;
/// Probability allowed inside the absorbing layers at launch.
pub const LAUNCH_ABSORBER_MASS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Descent {
    /// Back slope mirrors the front.
    Mirror,
    /// Linear fall to zero over `length`.
    Linear { length: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierSpec {
    pub x_start: f64,
    /// Front slope `V0 > 0`.
    pub slope: f64,
    pub peak: f64,
    pub descent: Descent,
}

impl BarrierSpec {
    pub fn new(x_start: f64, slope: f64, peak: f64, descent: Descent) -> Result<Self> {
        if !x_start.is_finite() {
            return Err(Error::invalid("barrier.x_start", "must be finite"));
        }
        if !(slope > 0.0 && slope.is_finite()) {
            return Err(Error::invalid("barrier.slope", format!("must be positive, got {slope}")));
        }
        if !(peak > 0.0 && peak.is_finite()) {
            return Err(Error::invalid("barrier.peak", format!("must be positive, got {peak}")));
        }
        if let Descent::Linear { length } = descent {
            if !(length > 0.0 && length.is_finite()) {
                return Err(Error::invalid("barrier.descent_length", format!("must be positive, got {length}")));
            }
        }
        Ok(Self {
            x_start,
            slope,
            peak,
            descent,
        })
    }

    pub fn front_length(&self) -> f64 {
        self.peak / self.slope
    }

    pub fn x_peak(&self) -> f64 {
        self.x_start + self.front_length()
    }

    pub fn x_end(&self) -> f64 {
        match self.descent {
            Descent::Mirror => self.x_peak() + self.front_length(),
            Descent::Linear { length } => self.x_peak() + length,
        }
    }

    /// Flat zero outside `[x_start, x_end]`.
    pub fn potential(&self) -> Potential {
        let pl = vec![
            (self.x_start - 1.0, 0.0),
            (self.x_start, 0.0),
            (self.x_peak(), self.peak),
            (self.x_end(), 0.0),
            (self.x_end() + 1.0, 0.0),
        ];
        Potential::piecewise(pl).expect("breakpoints increase by construction")
    }

    pub fn turning_points(&self, energy: f64) -> Result<(f64, f64)> {
        turning_points(&self.potential(), energy)
    }

    /// `D′ = x_peak − a`.
    pub fn d_prime(&self, energy: f64) -> Result<f64> {
        Ok(self.x_peak() - self.turning_points(energy)?.0)
    }
}

/// Classical turning points `a < b` with `V(a) = V(b) = E`, bracketing the
/// highest point of `V`. For a ramp the far point is infinite.
pub fn turning_points(v: &Potential, energy: f64) -> Result<(f64, f64)> {
    if !energy.is_finite() {
        return Err(Error::invalid("energy", "must be finite"));
    }
    match v {
        Potential::Free => {
            if energy >= 0.0 {
                Err(Error::NoTurningPoints { energy, peak: 0.0 })
            } else {
                Err(Error::DegenerateEnergy { energy, base: 0.0 })
            }
        }
        Potential::Linear { v0 } => {
            if *v0 == 0.0 {
                return turning_points(&Potential::Free, energy);
            }
            let root = energy / v0;
            Ok(if *v0 > 0.0 {
                (root, f64::INFINITY)
            } else {
                (f64::NEG_INFINITY, root)
            })
        }
        _ => {
            let knots = v.kinks();
            let values: Vec<f64> = knots.iter().map(|&x| v.eval(x)).collect();
            let (i_peak, &peak) = values
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .expect("at least two knots");
            if energy > peak {
                return Err(Error::NoTurningPoints { energy, peak });
            }
            let base = values[0].min(values[values.len() - 1]);
            if energy <= base {
                return Err(Error::DegenerateEnergy { energy, base });
            }
            if energy == peak {
                return Ok((knots[i_peak], knots[i_peak]));
            }
            let left = (0..i_peak)
                .rev()
                .find(|&j| values[j] < energy)
                .ok_or(Error::DegenerateEnergy { energy, base })?;
            let right = (i_peak + 1..knots.len())
                .find(|&j| values[j] < energy)
                .ok_or(Error::DegenerateEnergy { energy, base })?;
            let a = bisect(|x| v.eval(x) - energy, knots[left], knots[left + 1]);
            let b = bisect(|x| v.eval(x) - energy, knots[right], knots[right - 1]);
            Ok((a, b))
        }
    }
}

/// Root of `f` between `below` (f < 0) and `above` (f ≥ 0).
fn bisect(f: impl Fn(f64) -> f64, mut below: f64, mut above: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (below + above);
        if mid == below || mid == above {
            break;
        }
        if f(mid) < 0.0 {
            below = mid;
        } else {
            above = mid;
        }
    }
    if f(above).abs() <= f(below).abs() {
        above
    } else {
        below
    }
}

/// `σ_R = ∫_a^b sqrt(2m(V − E))/ħ dx`, by double-exponential quadrature on
/// each smooth piece. The tanh-sinh map clusters nodes at both ends of every
/// piece, which absorbs the square-root zeros at the turning points.
pub fn wkb_sigma_r(v: &Potential, energy: f64, units: &UnitSystem) -> Result<f64> {
    let (a, b) = turning_points(v, energy)?;
    if !a.is_finite() || !b.is_finite() {
        return Ok(f64::INFINITY);
    }
    if a == b {
        return Ok(0.0);
    }
    let mut cuts: Vec<f64> = std::iter::once(a)
        .chain(v.kinks().into_iter().filter(|&x| x > a && x < b))
        .chain(std::iter::once(b))
        .collect();
    cuts.dedup();
    let k = (2.0 * units.mass).sqrt() / units.hbar;
    let integrand = |x: f64| k * (v.eval(x) - energy).max(0.0).sqrt();
    let scale = cuts.windows(2).map(|w| (w[1] - w[0]) * integrand(0.5 * (w[0] + w[1]))).sum::<f64>().max(f64::MIN_POSITIVE);
    let target = 1e-13 * scale;
    let limit = 1e-10 * scale;
    let mut total = 0.0;
    let mut err = 0.0;
    for w in cuts.windows(2) {
        let out = quadrature::double_exponential::integrate(integrand, w[0], w[1], target);
        total += out.integral;
        err += out.error_estimate;
    }
    if !(err <= limit) {
        return Err(Error::Quadrature {
            achieved: err,
            target: limit,
        });
    }
    Ok(total)
}

/// Closed form of `σ_R` for a triangle whose sides have slopes `s_front` and
/// `s_back` (both positive) and whose tip stands `height_above_e` over `E`.
pub fn triangle_sigma_r(height_above_e: f64, s_front: f64, s_back: f64, units: &UnitSystem) -> f64 {
    (2.0 / 3.0) * (2.0 * units.mass).sqrt() / units.hbar * height_above_e.powf(1.5) * (1.0 / s_front + 1.0 / s_back)
}

/// `T = e^{−2σ_R}/(1 + e^{−2σ_R}/4)²`
pub fn transmission_from_sigma(sigma_r: f64) -> f64 {
    let e = (-2.0 * sigma_r).exp();
    e / (1.0 + 0.25 * e).powi(2)
}

pub fn wkb_transmission(v: &Potential, energy: f64, units: &UnitSystem) -> Result<f64> {
    Ok(transmission_from_sigma(wkb_sigma_r(v, energy, units)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TunnelingSample {
    pub t: f64,
    pub mean_x: f64,
    pub mean_p: f64,
    pub width: f64,
    pub norm: f64,
    pub transmitted: f64,
    pub reflected: f64,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct TunnelingResult {
    /// Probability right of `b`, including the right absorber's share.
    pub transmitted: f64,
    /// Probability left of `a`, including the left absorber's share.
    pub reflected: f64,
    /// Probability between the turning points.
    pub residual: f64,
    pub absorbed_left: f64,
    pub absorbed_right: f64,
    pub initial_norm: f64,
    pub t_measure: f64,
    pub steps: usize,
    pub energy: f64,
    pub turning_points: Option<(f64, f64)>,
    /// `t_enter + p0/V0`, the pure-front prediction for reaching `a`.
    pub t_a_predicted: Option<f64>,
    /// Time of the maximum of ⟨x⟩, when it occurs inside the run.
    pub t_a_measured: Option<f64>,
    pub sigma_at_turning: Option<f64>,
    pub history: Vec<TunnelingSample>,
}

impl TunnelingResult {
    /// `|T + R + residual − initial norm|`.
    pub fn accounting_defect(&self) -> f64 {
        (self.transmitted + self.reflected + self.residual - self.initial_norm).abs()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = crate::output::CsvSink::new(
            out,
            "tunneling",
            &[
                "t[time]",
                "mean_x[length]",
                "mean_p[momentum]",
                "width[length]",
                "norm[1]",
                "transmitted_fraction[1]",
            ],
        )?;
        for s in &self.history {
            w.row(&[s.t, s.mean_x, s.mean_p, s.width, s.norm, s.transmitted])?;
        }
        w.finish()
    }
}

/// Everything needed for one transmission measurement.
#[derive(Debug, Clone)]
pub struct TunnelingSetup {
    pub packet: GaussianSpec,
    pub barrier: BarrierSpec,
    pub grid: SpatialGrid,
    pub units: UnitSystem,
    /// `n_steps` is the step budget.
    pub solver: SolverConfig,
}

impl TunnelingSetup {
    /// The linear-front regime in natural units: `p0 = 40`, `σ = 2`, peak
    /// `1.4·E`, slope 8, so `D′ = 40`.
    pub fn linear_front() -> Self {
        let units = UnitSystem::natural();
        let packet = GaussianSpec::new(-20.0, 40.0, 2.0).expect("valid packet");
        let e = 0.5 * 40.0 * 40.0;
        let barrier = BarrierSpec::new(0.0, 8.0, 1.4 * e, Descent::Mirror).expect("valid barrier");
        let grid = SpatialGrid::new(-150.0, 400.0, 8192).expect("valid grid");
        let solver = SolverConfig::new(1e-3, 40_000)
            .expect("valid solver")
            .record_every(20)
            .with_absorber(Absorber::new(0.1, 40.0).expect("valid absorber"));
        Self {
            packet,
            barrier,
            grid,
            units,
            solver,
        }
    }

    /// Same packet and slope with the peak lowered to `0.5·E`.
    pub fn over_barrier() -> Self {
        let mut s = Self::linear_front();
        s.barrier.peak = 0.5 * s.energy();
        s
    }

    /// A thin triangle (`p0 = 5`, `σ = 2`, peak `1.2·E`, sides of length 3)
    /// with measurable tunneling, used for width scans.
    pub fn thin_barrier() -> Self {
        let units = UnitSystem::natural();
        let packet = GaussianSpec::new(-20.0, 5.0, 2.0).expect("valid packet");
        let peak = 1.2 * 12.5;
        let barrier = BarrierSpec::new(0.0, peak / 3.0, peak, Descent::Mirror).expect("valid barrier");
        let grid = SpatialGrid::new(-100.0, 100.0, 2048).expect("valid grid");
        let solver = SolverConfig::new(2e-3, 50_000)
            .expect("valid solver")
            .record_every(25)
            .with_absorber(Absorber::new(0.15, 20.0).expect("valid absorber"));
        Self {
            packet,
            barrier,
            grid,
            units,
            solver,
        }
    }

    /// `p0²/2m` (the packet starts where the potential vanishes).
    pub fn energy(&self) -> f64 {
        self.packet.p0 * self.packet.p0 / (2.0 * self.units.mass)
    }

    pub fn run(&self) -> Result<TunnelingResult> {
        run_tunneling(&self.packet, &self.barrier, &self.grid, &self.units, &self.solver)
    }
}

pub fn run_tunneling(
    packet: &GaussianSpec,
    barrier: &BarrierSpec,
    grid: &SpatialGrid,
    units: &UnitSystem,
    cfg: &SolverConfig,
) -> Result<TunnelingResult> {
    let psi = sample_gaussian(packet, grid, units)?;
    run_from_state(&psi, packet, barrier, cfg)
}

/// Runs a prepared state; `nominal` supplies `x0` and `p0` for the predictions.
pub fn run_from_state(
    psi: &WaveFunction,
    nominal: &GaussianSpec,
    barrier: &BarrierSpec,
    cfg: &SolverConfig,
) -> Result<TunnelingResult> {
    cfg.validate()?;
    let absorber = cfg
        .absorber
        .ok_or_else(|| Error::Precondition("tunneling runs need an absorber".into()))?;
    let grid = *psi.grid();
    let units = *psi.units();
    let layer = absorber.width_fraction * grid.span();
    let in_layers = psi.probability_in(grid.x_min(), grid.x_min() + layer)
        + psi.probability_in(grid.x_max() - layer, grid.x_max());
    if in_layers > LAUNCH_ABSORBER_MASS {
        return Err(Error::Precondition(format!(
            "packet has {in_layers:.3e} probability inside the absorbing layers at launch"
        )));
    }
    if barrier.x_end() >= grid.x_max() - layer || barrier.x_start <= grid.x_min() + layer {
        return Err(Error::Precondition("barrier overlaps the absorbing layers".into()));
    }

    let v = barrier.potential();
    let energy = nominal.p0 * nominal.p0 / (2.0 * units.mass) + v.eval(nominal.x0);
    let turning = match turning_points(&v, energy) {
        Ok(ab) => Some(ab),
        Err(Error::NoTurningPoints { .. }) => None,
        Err(e) => return Err(e),
    };
    let (lo, hi) = turning.unwrap_or((barrier.x_peak(), barrier.x_peak()));
    let t_enter = if nominal.p0 > 0.0 {
        (units.mass * (barrier.x_start - nominal.x0) / nominal.p0).max(0.0)
    } else {
        f64::INFINITY
    };
    let t_a_predicted = turning.map(|_| t_enter + nominal.p0 / barrier.slope);

    let initial_norm = psi.norm_sqr();
    let mut solver = SplitStepSolver::new(psi, &v, cfg.dt, cfg.absorber)?;
    let mut history = vec![sample(&solver, lo, hi)];
    let mut calm = 0usize;
    let mut stationary = false;
    for step in 1..=cfg.n_steps {
        solver.step();
        if step % cfg.record_every != 0 {
            continue;
        }
        let s = sample(&solver, lo, hi);
        let prev = history.last().expect("non-empty");
        let quiet = (s.transmitted - prev.transmitted).abs() < STATIONARY_CHANGE
            && (s.reflected - prev.reflected).abs() < STATIONARY_CHANGE;
        history.push(s);
        calm = if quiet { calm + 1 } else { 0 };
        if calm >= STATIONARY_SNAPSHOTS
            && s.t >= t_enter
            && solver.state().probability_in(barrier.x_start, barrier.x_end()) < STATIONARY_OCCUPANCY
        {
            stationary = true;
            break;
        }
    }
    let last = *history.last().expect("non-empty");
    if !stationary {
        return Err(Error::NotStationary {
            steps: solver.steps(),
            transmitted: last.transmitted,
            reflected: last.reflected,
        });
    }

    let (t_a_measured, sigma_at_turning) = match turning {
        Some(_) => turning_time(&history).unzip(),
        None => (None, None),
    };
    let (absorbed_left, absorbed_right) = solver.absorbed();
    Ok(TunnelingResult {
        transmitted: last.transmitted,
        reflected: last.reflected,
        residual: last.residual,
        absorbed_left,
        absorbed_right,
        initial_norm,
        t_measure: last.t,
        steps: solver.steps(),
        energy,
        turning_points: turning,
        t_a_predicted,
        t_a_measured,
        sigma_at_turning,
        history,
    })
}

fn sample(solver: &SplitStepSolver, lo: f64, hi: f64) -> TunnelingSample {
    let psi = solver.state();
    let grid = psi.grid();
    let dx = grid.dx();
    let (mut left, mut mid, mut right) = (0.0, 0.0, 0.0);
    for (j, z) in psi.amplitudes().iter().enumerate() {
        let x = grid.x(j);
        let d = z.norm_sqr() * dx;
        if x < lo {
            left += d;
        } else if x > hi {
            right += d;
        } else {
            mid += d;
        }
    }
    let (al, ar) = solver.absorbed();
    let m = Moments::of(psi);
    TunnelingSample {
        t: psi.time(),
        mean_x: m.mean_x,
        mean_p: m.mean_p,
        width: m.width(),
        norm: m.norm_sqr,
        transmitted: right + ar,
        reflected: left + al,
        residual: mid,
    }
}

/// Time of the interior maximum of ⟨x⟩ (parabola through the three samples
/// around it) and the width interpolated there. Only samples taken before the
/// absorbers have removed any appreciable norm are considered.
fn turning_time(history: &[TunnelingSample]) -> Option<(f64, f64)> {
    let intact = history
        .iter()
        .position(|s| s.norm < (1.0 - 1e-3) * history[0].norm)
        .unwrap_or(history.len());
    let history = &history[..intact];
    let i = history
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.mean_x.total_cmp(&b.1.mean_x))?
        .0;
    if i == 0 || i + 1 >= history.len() {
        return None;
    }
    let (s0, s1, s2) = (&history[i - 1], &history[i], &history[i + 1]);
    let (t, _) = parabola_vertex([s0.t, s1.t, s2.t], [s0.mean_x, s1.mean_x, s2.mean_x]);
    let width = quadratic_at([s0.t, s1.t, s2.t], [s0.width, s1.width, s2.width], t);
    Some((t, width))
}

/// Vertex `(t*, y*)` of the parabola through three points.
fn parabola_vertex(t: [f64; 3], y: [f64; 3]) -> (f64, f64) {
    let d1 = (y[1] - y[0]) / (t[1] - t[0]);
    let d2 = (y[2] - y[1]) / (t[2] - t[1]);
    let c = (d2 - d1) / (t[2] - t[0]);
    if c == 0.0 {
        return (t[1], y[1]);
    }
    let b = d1 - c * (t[0] + t[1]);
    let ts = -b / (2.0 * c);
    (ts, quadratic_at(t, y, ts))
}

/// Lagrange quadratic through three points, evaluated at `s`.
fn quadratic_at(t: [f64; 3], y: [f64; 3], s: f64) -> f64 {
    let l0 = (s - t[1]) * (s - t[2]) / ((t[0] - t[1]) * (t[0] - t[2]));
    let l1 = (s - t[0]) * (s - t[2]) / ((t[1] - t[0]) * (t[1] - t[2]));
    let l2 = (s - t[0]) * (s - t[1]) / ((t[2] - t[0]) * (t[2] - t[1]));
    y[0] * l0 + y[1] * l1 + y[2] * l2
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScanAxis {
    /// Free-evolve the packet for each delay, then shift it back by
    /// `p0·delay/m` so every run starts from the same mean position.
    Delay(Vec<f64>),
    /// Prepare fresh packets with each σ.
    Sigma(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct ScanEntry {
    pub index: usize,
    pub delay: f64,
    pub sigma: f64,
    /// Free width predicted when ⟨x⟩ reaches the start of the front.
    pub sigma_at_arrival: f64,
    pub result: TunnelingResult,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanViolation {
    pub from_index: usize,
    pub to_index: usize,
    pub sigma_from: f64,
    pub sigma_to: f64,
    pub t_from: f64,
    pub t_to: f64,
}

#[derive(Debug, Clone)]
pub struct WidthScan {
    /// Sorted by `sigma_at_arrival`, then input index.
    pub entries: Vec<ScanEntry>,
}

impl WidthScan {
    /// Adjacent pairs where T drops by more than `tol`.
    pub fn violations(&self, tol: f64) -> Vec<ScanViolation> {
        self.entries
            .windows(2)
            .filter(|w| w[1].result.transmitted < w[0].result.transmitted - tol)
            .map(|w| ScanViolation {
                from_index: w[0].index,
                to_index: w[1].index,
                sigma_from: w[0].sigma_at_arrival,
                sigma_to: w[1].sigma_at_arrival,
                t_from: w[0].result.transmitted,
                t_to: w[1].result.transmitted,
            })
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = crate::output::CsvSink::new(
            out,
            "width-scan",
            &[
                "sigma_at_arrival[length]",
                "T[1]",
                "R[1]",
                "residual[1]",
                "t_measure[time]",
                "delay[time]",
                "sigma[length]",
            ],
        )?;
        for e in &self.entries {
            w.row(&[
                e.sigma_at_arrival,
                e.result.transmitted,
                e.result.reflected,
                e.result.residual,
                e.result.t_measure,
                e.delay,
                e.sigma,
            ])?;
        }
        w.finish()
    }
}

/// One transmission run per scan entry, executed concurrently.
pub fn width_scan(setup: &TunnelingSetup, axis: &ScanAxis) -> Result<WidthScan> {
    let p = setup.packet;
    let m = setup.units.mass;
    let t_enter = (m * (setup.barrier.x_start - p.x0) / p.p0).max(0.0);
    let plan: Vec<(f64, f64)> = match axis {
        ScanAxis::Delay(ds) => ds.iter().map(|&d| (d, p.sigma)).collect(),
        ScanAxis::Sigma(ss) => ss.iter().map(|&s| (0.0, s)).collect(),
    };
    if plan.is_empty() {
        return Err(Error::invalid("scan", "no entries"));
    }
    if plan.iter().any(|&(d, _)| !(d >= 0.0 && d.is_finite())) {
        return Err(Error::invalid("delay", "must be finite and >= 0"));
    }
    let mut entries: Vec<ScanEntry> = plan
        .par_iter()
        .enumerate()
        .map(|(index, &(delay, sigma))| {
            let spec = GaussianSpec::new(p.x0, p.p0, sigma)?;
            let mut psi = sample_gaussian(&spec, &setup.grid, &setup.units)?;
            if delay > 0.0 {
                psi = free_evolve(&psi, delay)?
                    .translated(p.p0 * delay / m)
                    .with_time(0.0);
            }
            let result = run_from_state(&psi, &spec, &setup.barrier, &setup.solver)?;
            Ok(ScanEntry {
                index,
                delay,
                sigma,
                sigma_at_arrival: free_width(sigma, delay + t_enter, &setup.units),
                result,
            })
        })
        .collect::<Result<_>>()?;
    entries.sort_by(|a, b| {
        a.sigma_at_arrival
            .total_cmp(&b.sigma_at_arrival)
            .then(a.index.cmp(&b.index))
    });
    Ok(WidthScan { entries })
}

/// The SI animation: a packet launched at 1 m/s into a pure linear potential
/// that stops it after 0.3 m, with the mass chosen so the width has grown by
/// the stated factor at the turning point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnimationScenario {
    pub sigma: f64,
    pub velocity: f64,
    pub stopping_distance: f64,
    pub growth: f64,
}

impl Default for AnimationScenario {
    fn default() -> Self {
        Self {
            sigma: 0.002,
            velocity: 1.0,
            stopping_distance: 0.3,
            growth: 1.1,
        }
    }
}

impl AnimationScenario {
    pub fn turning_time(&self) -> f64 {
        2.0 * self.stopping_distance / self.velocity
    }

    /// `m = ħ t_a / (σ² sqrt(growth² − 1))`
    pub fn mass(&self) -> f64 {
        HBAR_SI * self.turning_time() / (self.sigma * self.sigma * (self.growth * self.growth - 1.0).sqrt())
    }

    pub fn p0(&self) -> f64 {
        self.mass() * self.velocity
    }

    /// `V0 = m v² / (2d)`
    pub fn v0(&self) -> f64 {
        self.mass() * self.velocity * self.velocity / (2.0 * self.stopping_distance)
    }
}

#[derive(Debug, Clone)]
pub struct AnimationResult {
    pub mass: f64,
    pub v0: f64,
    pub p0: f64,
    /// `p0/V0`
    pub t_a_predicted: f64,
    pub t_a_measured: f64,
    pub turning_position: f64,
    pub sigma_at_turning: f64,
    /// `sigma_at_turning / σ`
    pub growth: f64,
    /// `(t, ⟨x⟩, width)`
    pub samples: Vec<(f64, f64, f64)>,
}

/// Evolves the scenario with the closed-form engine over `[0, 2 t_a]`.
pub fn animation_scenario(s: &AnimationScenario, n: usize, n_samples: usize) -> Result<AnimationResult> {
    if !(s.sigma > 0.0 && s.velocity > 0.0 && s.stopping_distance > 0.0 && s.growth > 1.0) {
        return Err(Error::invalid("animation", "sigma, velocity, distance must be positive and growth > 1"));
    }
    if n_samples < 3 {
        return Err(Error::invalid("n_samples", "need at least three"));
    }
    let mass = s.mass();
    let units = UnitSystem::si(mass)?;
    let (p0, v0) = (s.p0(), s.v0());
    let margin = 25.0 * s.sigma;
    let grid = SpatialGrid::new(-margin, s.stopping_distance + margin, n)?.with_momentum_center(p0, units.hbar);
    let psi0 = sample_gaussian(&GaussianSpec::new(0.0, p0, s.sigma)?, &grid, &units)?;

    let t_end = 2.0 * s.turning_time();
    let samples: Vec<(f64, f64, f64)> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let t = t_end * i as f64 / (n_samples - 1) as f64;
            let m = Moments::of(&linear_evolve(&psi0, v0, t, Ordering::Left)?.psi);
            Ok((t, m.mean_x, m.width()))
        })
        .collect::<Result<_>>()?;

    let i = samples
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .expect("non-empty");
    let i = i.clamp(1, samples.len() - 2);
    let (t_a, x_a) = parabola_vertex(
        [samples[i - 1].0, samples[i].0, samples[i + 1].0],
        [samples[i - 1].1, samples[i].1, samples[i + 1].1],
    );
    let sigma_at_turning = Moments::of(&linear_evolve(&psi0, v0, t_a, Ordering::Left)?.psi).width();
    Ok(AnimationResult {
        mass,
        v0,
        p0,
        t_a_predicted: p0 / v0,
        t_a_measured: t_a,
        turning_position: x_a,
        sigma_at_turning,
        growth: sigma_at_turning / s.sigma,
        samples,
    })
}
