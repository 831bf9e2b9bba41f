use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use super::config::{invalid, Apparatus, MatrixFormat, ScenarioConfig, ScenarioKind};
use crate::dynamics::{evolve_ctqw, evolve_padic, evolve_real_free, site_energy};
use crate::error::{Error, Result};
use crate::measurement::{collapse_with, grw_events_csv, grw_trajectory, scan_report, CollapseOutcome, GrwParams, ScanRecord};
use crate::operators::{build_kernel, parse_dense_matrix, parse_edge_list, KernelOperator, VladimirovOperator};
use crate::padic::{prime_power, ratio_to_f64, Ball, PAdicApprox};
use crate::states::{
    density_padic, density_real, expand_indicator, GridState, RealGrid, RealPacketState, RealWavefunction,
    SpectralState, UnitWave, Window,
};

/// Named text files produced by a scenario, in emission order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScenarioOutput {
    pub files: Vec<(String, String)>,
}

impl ScenarioOutput {
    pub fn file(&self, name: &str) -> Option<&str> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, c)| c.as_str())
    }

    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        for (name, contents) in &self.files {
            let path = dir.join(name);
            std::fs::write(&path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }

    fn push(&mut self, name: &str, contents: String) {
        self.files.push((name.to_string(), contents));
    }
}

pub fn run(kind: ScenarioKind, cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    match kind {
        ScenarioKind::TwoSlit => run_two_slit(cfg),
        ScenarioKind::Ctqw => run_ctqw(cfg),
        ScenarioKind::Collapse => run_collapse(cfg),
        ScenarioKind::Spectrum => run_spectrum(cfg),
    }
}

fn check(what: &str, deviation: f64, tolerance: f64) -> Result<()> {
    if deviation.is_finite() && deviation <= tolerance {
        Ok(())
    } else {
        Err(Error::Contract { check: what.to_string(), deviation, tolerance })
    }
}

fn window_for(cfg: &ScenarioConfig, kind: ScenarioKind) -> Result<Window> {
    Window::new(cfg.prime, cfg.effective_top(kind), cfg.effective_resolution(kind))
        .map_err(|e| invalid("K", e.to_string()))
}

/// Initial states of the two-slit model.
#[derive(Clone, Debug)]
pub struct TwoSlitSetup {
    pub window: Window,
    pub slits: [Ball; 2],
    /// `A_p Ω(p^L|x - s|) + A_p Ω(p^L|x + s|)`, normalized.
    pub padic: SpectralState<f64>,
    /// `A_p`.
    pub amplitude: f64,
    /// Normalized mass of the initial state outside the window wavelets.
    pub tail_mass: f64,
    /// `A_∞ {g(x - s) + g(x + s)}`, normalized.
    pub real: RealPacketState<f64>,
}

pub fn two_slit_setup(cfg: &ScenarioConfig, kind: ScenarioKind) -> Result<TwoSlitSetup> {
    cfg.validate(kind)?;
    let window = window_for(cfg, kind)?;
    let (p, l) = (cfg.prime, cfg.slit_scale);
    if cfg.slit_center.is_zero() {
        return Err(invalid("s", "must be nonzero"));
    }
    if l > window.resolution() {
        return Err(invalid("L", format!("slits finer than the resolution K = {}", window.resolution())));
    }
    let center = PAdicApprox::from_ratio(p, &cfg.slit_center, l.max(0) + 1).map_err(|e| invalid("s", e.to_string()))?;
    let twice = PAdicApprox::from_ratio(p, &(&cfg.slit_center * BigRational::from_integer(2.into())), l.max(0) + 1)
        .map_err(|e| invalid("s", e.to_string()))?;
    if twice.norm() <= prime_power(p, -l) {
        return Err(invalid("s", format!("slit balls overlap: |2s|_p must exceed p^-L = {}", prime_power(p, -l))));
    }
    let slits = [Ball::new(&center, l), Ball::new(&-&center, l)];
    let mut padic = SpectralState::zeros(window);
    let mut tail = BigRational::zero();
    for ball in &slits {
        let e = expand_indicator::<f64>(ball, window).map_err(|_| invalid("s", format!("slit {ball} lies outside the domain")))?;
        window.ball_range(ball).map_err(|_| invalid("s", format!("slit {ball} lies outside the domain")))?;
        padic = padic.checked_add(&e.state)?;
        tail += e.tail_mass;
    }
    let norm = padic.norm();
    let amplitude = norm.recip();
    let padic = padic.scaled(Complex::new(amplitude, 0.0));
    let tail_mass = ratio_to_f64(&tail) * amplitude * amplitude;
    let s = ratio_to_f64(&cfg.slit_center);
    let real = RealPacketState::two_slit(s, cfg.sigma)?;
    Ok(TwoSlitSetup { window, slits, padic, amplitude, tail_mass, real })
}

/// `(max - min) / (max + min)` of a density over `|x| ≤ half_width`.
pub fn fringe_visibility(grid: &RealGrid<f64>, density: &[f64], half_width: f64) -> f64 {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (x, &d) in grid.points().zip(density) {
        if x.abs() <= half_width {
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    if hi + lo > 0.0 {
        (hi - lo) / (hi + lo)
    } else {
        0.0
    }
}

fn monna_x(window: Window, index: usize) -> f64 {
    ratio_to_f64(&window.monna_coordinate(index))
}

pub fn run_two_slit(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    let kind = ScenarioKind::TwoSlit;
    let setup = two_slit_setup(cfg, kind)?;
    let window = setup.window;
    let op = VladimirovOperator::new(window, cfg.alpha, cfg.m_p)?;
    let grid = RealGrid::symmetric(cfg.x_extent, cfg.x_spacing)?;
    let header = cfg.header(kind);
    let s = ratio_to_f64(&cfg.slit_center).abs();

    let mut dark = format!("{header}# sector=dark\nt,monna_x,density\n");
    let mut bright = format!("{header}# sector=bright\nt,x,density\n");
    let mut diag = header.clone();
    writeln!(diag, "# A_p={:e}", setup.amplitude).ok();
    writeln!(diag, "# tail_mass={:e}", setup.tail_mass).ok();
    writeln!(diag, "# truncation_leakage={:e}", op.truncation_leakage()).ok();
    diag.push_str("t,padic_norm,real_norm,padic_energy,real_energy,padic_integral,real_integral,visibility\n");

    for &t in &cfg.times() {
        let padic = evolve_padic(&setup.padic, &op, t)?;
        let real = evolve_real_free(&setup.real, cfg.m_inf, t);
        let pd = density_padic(&padic.to_grid(), false)?;
        for (i, d) in pd.values.iter().enumerate() {
            writeln!(dark, "{t:e},{:e},{d:e}", monna_x(window, i)).ok();
        }
        let rd = density_real(&real, &grid, false)?;
        for (x, d) in grid.points().zip(&rd) {
            writeln!(bright, "{t:e},{x:e},{d:e}").ok();
        }
        let (pn, rn) = (padic.norm(), real.norm_sqr().sqrt());
        let (pi, ri) = (pd.integral(), grid.integrate(&rd));
        let vis = fringe_visibility(&grid, &rd, s);
        writeln!(
            diag,
            "{t:e},{pn:e},{rn:e},{:e},{:e},{pi:e},{ri:e},{vis:e}",
            op.expectation(&padic)?,
            real.kinetic_energy(cfg.m_inf)
        )
        .ok();
        check("p-adic norm drift", (pn - 1.0).abs(), 1e-10)?;
        check("real norm drift", (rn - 1.0).abs(), 1e-10)?;
        check("p-adic density integral", (pi - 1.0).abs(), 1e-10)?;
        check("real density integral", (ri - 1.0).abs(), 1e-6)?;
    }
    let mut out = ScenarioOutput::default();
    out.push("dark.csv", dark);
    out.push("bright.csv", bright);
    out.push("diagnostics.csv", diag);
    Ok(out)
}

/// Loads the site matrix and labels named by the configuration.
pub fn load_kernel(cfg: &ScenarioConfig) -> Result<KernelOperator<f64>> {
    let path = cfg.matrix.as_ref().ok_or_else(|| invalid("matrix", "missing"))?;
    let text = std::fs::read_to_string(path).map_err(|e| invalid("matrix", format!("{}: {e}", path.display())))?;
    let named = |e: Error| match e {
        Error::Parse { line, message } => invalid("matrix", format!("line {line}: {message}")),
        other => other,
    };
    let (matrix, sites): (DMatrix<Complex<f64>>, Vec<u64>) = match cfg.matrix_format {
        MatrixFormat::Dense => {
            let m = parse_dense_matrix(&text).map_err(named)?;
            let sites = cfg.sites.clone().unwrap_or_else(|| (0..m.nrows() as u64).collect());
            (m, sites)
        }
        MatrixFormat::Edges => {
            if cfg.sites.is_some() {
                return Err(invalid("sites", "edge lists carry their own site labels"));
            }
            let (sites, a) = parse_edge_list::<f64>(&text).map_err(named)?;
            (a.map(|w| Complex::new(-cfg.gamma * w, 0.0)), sites)
        }
    };
    build_kernel(matrix, cfg.prime, cfg.level, sites).map_err(|e| match e {
        Error::MatrixShape { .. } | Error::InvalidSite { .. } => invalid("sites", e.to_string()),
        Error::TooManySites { .. } => invalid("level", e.to_string()),
        Error::NotHermitian { .. } => invalid("matrix", e.to_string()),
        other => other,
    })
}

pub fn run_ctqw(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    let kind = ScenarioKind::Ctqw;
    cfg.validate(kind)?;
    let window = window_for(cfg, kind)?;
    let kernel = load_kernel(cfg)?;
    let start = cfg.initial_site.unwrap_or(kernel.sites()[0]);
    let pos = kernel
        .sites()
        .iter()
        .position(|&s| s == start)
        .ok_or_else(|| invalid("initial_site", format!("{start} is not one of the sites")))?;
    let mut unit = vec![Complex::new(0.0, 0.0); kernel.sites().len()];
    unit[pos] = Complex::new(1.0, 0.0);
    let initial = kernel.synthesize(window, &unit)?;

    let header = cfg.header(kind);
    let mut occ = format!("{header}t,site,occupation\n");
    let mut traj = format!("{header}t,index,re,im\n");
    let mut diag = format!("{header}t,norm,energy,total_occupation\n");
    for &t in &cfg.times() {
        let psi: GridState<f64> = evolve_ctqw(&kernel, &initial, t)?;
        let amps = kernel.site_amplitudes(&psi)?;
        let mut total = 0.0;
        for (&site, a) in kernel.sites().iter().zip(&amps) {
            writeln!(occ, "{t:e},{site},{:e}", a.norm_sqr()).ok();
            total += a.norm_sqr();
        }
        for (i, v) in psi.values().iter().enumerate() {
            writeln!(traj, "{t:e},{i},{:e},{:e}", v.re, v.im).ok();
        }
        let norm = psi.norm();
        writeln!(diag, "{t:e},{norm:e},{:e},{total:e}", site_energy(&kernel, &amps)).ok();
        check("CTQW norm drift", (norm - 1.0).abs(), 1e-10)?;
        check("total occupation", (total - 1.0).abs(), 1e-10)?;
    }
    let mut out = ScenarioOutput::default();
    out.push("occupations.csv", occ);
    out.push("trajectory.csv", traj);
    out.push("diagnostics.csv", diag);
    Ok(out)
}

pub fn run_collapse(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    let kind = ScenarioKind::Collapse;
    let setup = two_slit_setup(cfg, kind)?;
    let window = setup.window;
    let level = cfg.effective_refinement(kind);
    let op = VladimirovOperator::new(window, cfg.alpha, cfg.m_p)?;
    let mut balls = Vec::with_capacity(cfg.scans.len());
    for scan in &cfg.scans {
        let center = PAdicApprox::from_ratio(cfg.prime, &scan.center, scan.scale)
            .map_err(|e| invalid("scans", e.to_string()))?;
        let ball = Ball::new(&center, scan.scale);
        window.ball_range(&ball).map_err(|e| invalid("scans", format!("ball {ball}: {e}")))?;
        balls.push(ball);
    }

    let header = cfg.header(kind);
    let mut densities = format!("{header}scan,stage,t,monna_x,density\n");
    let mut records = Vec::new();
    let mut padic = setup.padic.clone();
    let mut real = setup.real.clone();
    let mut now = 0.0;
    for (n, (scan, ball)) in cfg.scans.iter().zip(&balls).enumerate() {
        padic = evolve_padic(&padic, &op, scan.time - now)?;
        real = evolve_real_free(&real, cfg.m_inf, scan.time - now);
        now = scan.time;
        let pre = density_padic(&padic.to_grid(), true)?;
        for (i, d) in pre.values.iter().enumerate() {
            writeln!(densities, "{n},pre,{now:e},{:e},{d:e}", monna_x(window, i)).ok();
        }
        let outcome = match cfg.apparatus {
            Apparatus::Packet => collapse_with(&padic, &real, ball, level)?,
            Apparatus::Unit => collapse_with(&padic, &UnitWave, ball, level)?,
        };
        let record = match outcome {
            CollapseOutcome::Localized(c) => {
                padic = c.post_state;
                let post_norm = padic.norm();
                check("post-measurement norm", (post_norm - 1.0).abs(), 1e-10)?;
                ScanRecord { time: now, ball: ball.to_string(), probability: c.probability, weight: c.weight, post_norm, localized: true }
            }
            CollapseOutcome::ZeroWeight => ScanRecord {
                time: now,
                ball: ball.to_string(),
                probability: 0.0,
                weight: 0.0,
                post_norm: padic.norm(),
                localized: false,
            },
        };
        records.push(record);
        let post = density_padic(&padic.to_grid(), true)?;
        for (i, d) in post.values.iter().enumerate() {
            writeln!(densities, "{n},post,{now:e},{:e},{d:e}", monna_x(window, i)).ok();
        }
    }
    let mut out = ScenarioOutput::default();
    out.push("report.txt", format!("{header}{}", scan_report(&records)));
    out.push("densities.csv", densities);
    if let (Some(sigma), Some(rate)) = (cfg.grw_sigma, cfg.grw_rate) {
        let horizon = cfg.grw_horizon.unwrap_or(cfg.t_end);
        let params = GrwParams::new(sigma, rate)?;
        let traj = grw_trajectory(&setup.real, cfg.m_inf, params, horizon, cfg.seed)?;
        for e in &traj.events {
            check("GRW post-localization norm", (e.post_norm - 1.0).abs(), 1e-12)?;
        }
        out.push("grw_events.csv", format!("{header}{}", grw_events_csv(&traj.events)));
    }
    Ok(out)
}

/// One row of the spectrum table.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRow {
    /// `None` for the constant mode.
    pub scale: Option<i32>,
    pub multiplicity: usize,
    pub eigenvalue: f64,
    pub energy: f64,
}

pub fn spectrum_rows(op: &VladimirovOperator<f64>) -> Vec<SpectrumRow> {
    let window = op.window();
    let p = window.prime() as usize;
    let mut rows = vec![SpectrumRow {
        scale: None,
        multiplicity: 1,
        eigenvalue: op.constant_eigenvalue(),
        energy: op.energy(&crate::states::PadicMode::Constant),
    }];
    for r in window.scales() {
        let e = op.eigenvalue(r);
        rows.push(SpectrumRow {
            scale: Some(r),
            multiplicity: (p - 1) * p.pow((window.top() - r) as u32),
            eigenvalue: e,
            energy: e / (2.0 * op.mass()),
        });
    }
    rows
}

pub fn run_spectrum(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    let kind = ScenarioKind::Spectrum;
    cfg.validate(kind)?;
    let window = window_for(cfg, kind)?;
    let op = VladimirovOperator::new(window, cfg.alpha, cfg.m_p)?;
    let mut table = cfg.header(kind);
    writeln!(table, "# truncation_leakage={:e}", op.truncation_leakage()).ok();
    table.push_str("mode,r,multiplicity,eigenvalue,energy\n");
    let rows = spectrum_rows(&op);
    for row in &rows {
        match row.scale {
            None => writeln!(table, "constant,,1,{:e},{:e}", row.eigenvalue, row.energy),
            Some(r) => writeln!(table, "wavelet,{r},{},{:e},{:e}", row.multiplicity, row.eigenvalue, row.energy),
        }
        .ok();
    }
    let total: usize = rows.iter().map(|r| r.multiplicity).sum();
    check("spectrum multiplicity", (total as f64 - window.dimension() as f64).abs(), 0.0)?;
    let mut out = ScenarioOutput::default();
    out.push("spectrum.csv", table);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::RealWavefunction;

    fn cfg(text: &str) -> ScenarioConfig {
        ScenarioConfig::parse(text, Path::new(".")).unwrap()
    }

    #[test]
    fn two_slit_initial_pattern() {
        let c = cfg("t_steps = 1\nt_end = 0\n");
        let setup = two_slit_setup(&c, ScenarioKind::TwoSlit).unwrap();
        assert!((setup.amplitude - 3.0 / 2f64.sqrt()).abs() < 1e-12);
        let g = setup.padic.to_grid();
        for (i, v) in g.values().iter().enumerate() {
            let x = setup.window.representative(i);
            let on_slit = setup.slits.iter().any(|b| b.contains(&x));
            let want = if on_slit { 9.0 / 2.0 } else { 0.0 };
            assert!((v.norm_sqr() - want).abs() < 1e-12);
        }
        assert!(setup.tail_mass >= 0.0);
        assert!((setup.real.norm_sqr() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_slit_rejects_overlapping_slits() {
        let c = cfg("p = 2\ns = 1\nL = 1\n");
        assert!(matches!(two_slit_setup(&c, ScenarioKind::TwoSlit), Err(Error::Config { field, .. }) if field == "s"));
        let c = cfg("s = 0\n");
        assert!(matches!(two_slit_setup(&c, ScenarioKind::TwoSlit), Err(Error::Config { field, .. }) if field == "s"));
        let c = cfg("s = 1/27\n");
        assert!(matches!(two_slit_setup(&c, ScenarioKind::TwoSlit), Err(Error::Config { field, .. }) if field == "s"));
    }

    #[test]
    fn spectrum_counts_modes() {
        let c = cfg("p = 2\nR = 1\nK = 3\nalpha = 1\nm_p = 0.5\n");
        let out = run_spectrum(&c).unwrap();
        let table = out.file("spectrum.csv").unwrap();
        assert!(table.contains("wavelet,0,2,2e0,2e0\n"));
        let c = cfg("alpha = 0\n");
        assert!(matches!(run_spectrum(&c), Err(Error::Config { field, .. }) if field == "alpha"));
    }

    #[test]
    fn collapse_full_domain_and_disjoint_scans() {
        let c = cfg("scans = 0,-2,0; 0,2,4\napparatus = unit\n");
        let out = run_collapse(&c).unwrap();
        let report = out.file("report.txt").unwrap();
        let lines: Vec<&str> = report.lines().filter(|l| l.starts_with("scan ")).collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].contains("P_int=1e0") || lines[0].contains("P_int=9.99999"), "{}", lines[0]);
        assert!(lines[0].contains("outcome=localized"));
        assert!(lines[1].contains("outcome=zero_weight"), "{}", lines[1]);
    }
}
