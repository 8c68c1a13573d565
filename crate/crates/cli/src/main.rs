//! `fencekit`: shortest halving chords and arcs, constant-halving-length
//! bodies, the Auerbach triangle and a random-body sweep.
//!
//! Exit status: 0 success, 1 anomaly or failed check, 2 bad input.

mod svg;

use clap::{Parser, Subcommand, ValueEnum};
use fencekit_core::arc::{arc_optimality_residuals, relaxed_c_with, ARC_BOUND_TOL, ARC_GRID};
use fencekit_core::auerbach::{auerbach_constants, build_auerbach, verify_zindler, DEFAULT_SAMPLES_PER_ARC};
use fencekit_core::centrosym::{centrosym_bound, shortest_center_chord, CentroSymBody};
use fencekit_core::chl::{self, ThetaProfile};
use fencekit_core::chord::{chord_optimality_residuals, relaxed_g, shortest_halving_chord, CHORD_BOUND_TOL};
use fencekit_core::constants::isoperimetric_report;
use fencekit_core::generators::BodySpec;
use fencekit_core::report::constants_report;
use fencekit_core::sweep::{run_sweep, SweepRecord};
use fencekit_core::{reference, ConvexBody, FenceError, Point2, QuotientReport};
use serde_json::json;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use svg::Cut;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Fence(#[from] FenceError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

type CliResult = Result<bool, CliError>;

#[derive(Parser)]
#[command(name = "fencekit", version, about = "Shortest area-halving chords and arcs of planar convex bodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Body files hold either `{"vertices": [[x, y], ...]}` (counterclockwise)
/// or a generator such as `{"kind": "regular-ngon", "n": 4096, "radius": 1}`
/// or `{"kind": "random-valtr", "n": 12, "seed": 5}`. `-` reads stdin.
#[derive(Subcommand)]
enum Command {
    /// Relaxed chord quotient G and the shortest halving chord.
    Chord {
        body: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Relaxed arc quotient C and its minimising arc or sector.
    Arc {
        body: PathBuf,
        /// Grid size per axis of the endpoint scan.
        #[arg(long, default_value_t = ARC_GRID)]
        grid: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Build a constant-halving-length body from a θ profile.
    Chl {
        /// `disc`, `rounded-triangle`, or a JSON file `{"sigma": [...], "theta": [...], "L": v}`.
        #[arg(long, default_value = "rounded-triangle")]
        profile: String,
        /// Halving length; overrides the file's value.
        #[arg(long = "L")]
        l: Option<f64>,
        /// Also print the Fourier spectrum and a halving check on 16 arcs.
        #[arg(long)]
        report: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Build the Auerbach triangle and compute its constants.
    Auerbach {
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_ARC)]
        samples: usize,
        /// Also check the Zindler property over 4096 directions.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Shortest chord through the center of a centrosymmetric body.
    Centrosym {
        body: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Relative isoperimetric constants compared with the equal-area disc.
    Constants {
        body: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1.0")]
        alpha: Vec<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Random unit-area Valtr polygons checked against both extremal bounds.
    ///
    /// CSV columns: index, seed, vertices, area, c_value, c_witness, g_value,
    /// g_witness, shortest_chord, width, width_bound, anomaly, and wall_ms
    /// with --timing. `anomaly` is empty or a `;`-separated subset of
    /// C, G, WIDTH.
    Sweep {
        #[arg(long, default_value_t = 1000)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Grid size per axis of the arc solver's endpoint scan.
        #[arg(long, default_value_t = ARC_GRID)]
        resolution: usize,
        /// Append wall time per body; the output is then not reproducible.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        json: bool,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of computed constants against reference values.
    Report {
        #[arg(long, default_value_t = DEFAULT_SAMPLES_PER_ARC)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Render a body with optional cuts to SVG.
    Render {
        /// `auerbach`, `rounded-triangle`, `disc`, or a body file.
        target: String,
        #[arg(long, value_delimiter = ',')]
        cuts: Vec<CutKind>,
        /// Draw this many construction arcs of a constant-halving-length body.
        #[arg(long, default_value_t = 0)]
        fan: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CutKind {
    Chord,
    Arc,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("FENCEKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("FENCEKIT_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Chord { body, json, svg } => cmd_chord(&load_body(&body)?, json, svg.as_deref()),
        Command::Arc { body, grid, json, svg } => cmd_arc(&load_body(&body)?, grid, json, svg.as_deref()),
        Command::Chl { profile, l, report, json, svg } => cmd_chl(&profile, l, report, json, svg.as_deref()),
        Command::Auerbach { samples, verify, json, svg } => cmd_auerbach(samples, verify, json, svg.as_deref()),
        Command::Centrosym { body, json, svg } => cmd_centrosym(&load_body(&body)?, json, svg.as_deref()),
        Command::Constants { body, alpha, json } => cmd_constants(&load_body(&body)?, &alpha, json),
        Command::Sweep { n, seed, resolution, timing, json, out } => {
            cmd_sweep(n, seed, resolution, timing, json, out.as_deref())
        }
        Command::Report { samples, json } => cmd_report(samples, json),
        Command::Render { target, cuts, fan, out } => cmd_render(&target, &cuts, fan, out.as_deref()),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

fn load_body(path: &Path) -> Result<ConvexBody, CliError> {
    Ok(BodySpec::from_json(&read_input(path)?)?.build()?)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn print_json(value: &serde_json::Value) -> Result<(), CliError> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn write_svg(path: Option<&Path>, outline: &[Point2], cuts: &[Cut], title: &str) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, svg::render(outline, cuts, Some(title)))?;
    }
    Ok(())
}

fn witness_cut(report: &QuotientReport) -> Cut {
    let cut = report.witness.cut();
    Cut::new(cut, format!("{} {:.4}", report.witness.kind(), cut.length()))
}

fn print_quotient(name: &str, report: &QuotientReport) {
    let cut = report.witness.cut();
    println!("{name} = {:.9}", report.value);
    println!("witness: {} from ({:.6}, {:.6}) to ({:.6}, {:.6}), opening {:.6}, length {:.9}",
        report.witness.kind(), cut.a.x, cut.a.y, cut.b.x, cut.b.y, cut.opening, cut.length());
    println!("area fraction: {:.9}", report.witness_area_fraction);
    for r in &report.residuals {
        println!("residual {}: {:.3e}", r.name, r.value);
    }
    for (w, v) in &report.ties {
        println!("tie: {} at {:.9}", w.kind(), v);
    }
}

fn cmd_chord(body: &ConvexBody, json: bool, svg: Option<&Path>) -> CliResult {
    let g = relaxed_g(body);
    let chord = shortest_halving_chord(body);
    let residuals = chord_optimality_residuals(body, &chord.chord)?;
    let bound = reference::g_auerbach();
    let ok = g.value <= bound + CHORD_BOUND_TOL;
    if json {
        print_json(&json!({ "g": g, "shortest_chord": chord, "residuals": residuals, "bound": bound, "within_bound": ok }))?;
    } else {
        print_quotient("G", &g);
        println!("shortest halving chord: {:.9} (direction {:.9})", chord.length, chord.sigma);
        println!("bound G <= {bound:.9}: {}", if ok { "holds" } else { "ANOMALY" });
    }
    write_svg(svg, body.vertices(), &[witness_cut(&g)], "relaxed chord quotient")?;
    Ok(ok)
}

fn cmd_arc(body: &ConvexBody, grid: usize, json: bool, svg: Option<&Path>) -> CliResult {
    let c = relaxed_c_with(body, grid);
    let residuals = arc_optimality_residuals(body, &c.witness.cut())?;
    let bound = reference::c_disc();
    let ok = c.value <= bound + ARC_BOUND_TOL;
    if json {
        print_json(&json!({ "c": c, "residuals": residuals, "bound": bound, "within_bound": ok }))?;
    } else {
        print_quotient("C", &c);
        println!("bound C <= {bound:.9}: {}", if ok { "holds" } else { "ANOMALY" });
    }
    write_svg(svg, body.vertices(), &[witness_cut(&c)], "relaxed arc quotient")?;
    Ok(ok)
}

fn load_profile(name: &str, l: Option<f64>) -> Result<ThetaProfile, CliError> {
    let length = l.unwrap_or(1.0);
    Ok(match name {
        "disc" => ThetaProfile::disc(length)?,
        "rounded-triangle" => ThetaProfile::rounded_triangle(length)?,
        path => {
            let p = ThetaProfile::from_json(&read_input(Path::new(path))?)?;
            match l {
                Some(length) => ThetaProfile::new(p.samples().to_vec(), length)?,
                None => p,
            }
        }
    })
}

fn cmd_chl(profile: &str, l: Option<f64>, report: bool, json: bool, svg: Option<&Path>) -> CliResult {
    let profile = load_profile(profile, l)?;
    let built = chl::build(&profile)?;
    let n = profile.len();
    let checks: Vec<(f64, f64, f64)> = if report {
        (0..16)
            .map(|i| {
                let k = i * (n / 2) / 16;
                let sigma = profile.sigma(k);
                let (left, right) = chl::verify_halving(&built, sigma)?;
                Ok((sigma, left, right))
            })
            .collect::<Result<_, FenceError>>()?
    } else {
        Vec::new()
    };
    let worst_split = checks.iter().map(|&(_, a, b)| (a - b).abs()).fold(0.0, f64::max);
    let shoelace = built.shoelace_area();
    let spread = (shoelace - built.area_gauss).abs().max((shoelace - built.area_fourier).abs());
    let ok = spread <= 1e-3 * profile.halving_length().powi(2) && worst_split <= 1e-3 * shoelace;
    if json {
        let mut value = json!({
            "L": profile.halving_length(),
            "samples": n,
            "area_shoelace": shoelace,
            "area_gauss": built.area_gauss,
            "area_fourier": built.area_fourier,
            "closure": built.closure,
            "vertices": built.body.len(),
        });
        if report {
            value["spectrum"] = json!(built.spectrum());
            value["halving_checks"] = json!(checks);
        }
        print_json(&value)?;
    } else {
        println!("L = {}, samples = {n}", profile.halving_length());
        println!("area (shoelace)  = {shoelace:.12}");
        println!("area (gauss)     = {:.12}", built.area_gauss);
        println!("area (fourier)   = {:.12}", built.area_fourier);
        println!("closure |m(pi)|  = {:.3e}", built.closure);
        if report {
            for (j, (a, b)) in built.spectrum().iter().enumerate().take(16) {
                println!("harmonic {j:>3}: a = {a:+.3e}, b = {b:+.3e}");
            }
            for (sigma, left, right) in &checks {
                println!("sigma {sigma:+.6}: halves {left:.9} / {right:.9}");
            }
        }
    }
    let fan: Vec<Cut> = (0..12).map(|i| Cut::unlabelled(built.halving_arc(i * (n / 2) / 12))).collect();
    write_svg(svg, built.body.vertices(), &fan, "constant halving length body")?;
    Ok(ok)
}

fn cmd_auerbach(samples: usize, verify: bool, json: bool, svg: Option<&Path>) -> CliResult {
    let tri = build_auerbach(samples);
    let constants = auerbach_constants(&tri);
    let zindler = verify.then(|| verify_zindler(&tri, 4096));
    let area_dev = (tri.body.area() - tri.area_analytic).abs();
    let g_dev = (constants.g.value - reference::g_auerbach()).abs();
    let c_dev = (constants.c.value - reference::c_auerbach()).abs();
    let mut ok = area_dev <= 1e-4 && g_dev <= 2e-3 && c_dev <= 2e-3;
    if let Some(z) = zindler {
        ok &= z.length <= 1e-3 && z.perimeter <= 1e-3;
    }
    if json {
        print_json(&json!({
            "triangle": tri,
            "area": tri.body.area(),
            "g": constants.g,
            "c": constants.c,
            "c_witness_curved": constants.c_witness_curved,
            "c_witness_on_flats": constants.c_witness_on_flats,
            "zindler": zindler,
            "pass": ok,
        }))?;
    } else {
        println!("area = {:.9} (closed form {:.9})", tri.body.area(), tri.area_analytic);
        println!("G    = {:.9} (closed form {:.9})", constants.g.value, reference::g_auerbach());
        println!("C    = {:.9} (closed form {:.9})", constants.c.value, reference::c_auerbach());
        println!("C witness: {}, curved {}, ends on flat parts {}",
            constants.c.witness.kind(), constants.c_witness_curved, constants.c_witness_on_flats);
        println!("junction tangent mismatch: {:.3e}", tri.junction_mismatch.iter().cloned().fold(0.0, f64::max));
        if let Some(z) = zindler {
            println!("Zindler deviation: length {:.3e}, perimeter share {:.3e}", z.length, z.perimeter);
        }
    }
    write_svg(svg, tri.body.vertices(), &[witness_cut(&constants.g), witness_cut(&constants.c)], "Auerbach triangle")?;
    Ok(ok)
}

fn cmd_centrosym(body: &ConvexBody, json: bool, svg: Option<&Path>) -> CliResult {
    let s = CentroSymBody::from_body(body, None)?;
    let chord = shortest_center_chord(&s);
    let bound = centrosym_bound(&s);
    if json {
        print_json(&json!({ "chord": chord, "bound": bound }))?;
    } else {
        println!("center: ({:.9}, {:.9})", s.center().x, s.center().y);
        println!("shortest center chord: {:.9} at direction {:.9}", chord.length, chord.theta);
        println!("bound 2 sqrt(|K|/pi) = {:.9}, margin {:.3e}: {}", bound.bound, bound.margin,
            if bound.holds { "holds" } else { "ANOMALY" });
    }
    let cut = Cut::new(chord.chord.as_arc(), format!("{:.4}", chord.length));
    write_svg(svg, body.vertices(), &[cut], "center chord")?;
    Ok(bound.holds)
}

fn cmd_constants(body: &ConvexBody, alphas: &[f64], json: bool) -> CliResult {
    let rep = isoperimetric_report(body, alphas)?;
    if json {
        print_json(&json!(rep))?;
    } else {
        println!("area = {:.9}, C = {:.9}", rep.area, rep.c_value);
        println!("gamma_1/2 = {:.9} (disc {:.9})", rep.gamma_half, rep.disc.gamma_half);
        println!("mu_1      = {:.9} (disc {:.9})", rep.mu1, rep.disc.mu1);
        println!("I upper   = {:.9} (disc {:.9})", rep.i_upper, rep.disc.i_upper);
        for c in &rep.gamma_alpha {
            println!("alpha {:.3}: gamma = {:.9}, disc = {:.9}, margin = {:+.3e}", c.alpha, c.value, c.disc_value, c.margin);
        }
    }
    Ok(rep.holds())
}

fn anomaly_flags(r: &SweepRecord) -> String {
    let mut flags = Vec::new();
    if r.c_anomaly {
        flags.push("C");
    }
    if r.g_anomaly {
        flags.push("G");
    }
    if r.width_anomaly {
        flags.push("WIDTH");
    }
    flags.join(";")
}

fn sweep_csv(records: &[SweepRecord], timing: bool) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "index", "seed", "vertices", "area", "c_value", "c_witness", "g_value", "g_witness",
        "shortest_chord", "width", "width_bound", "anomaly",
    ];
    if timing {
        header.push("wall_ms");
    }
    w.write_record(&header)?;
    for r in records {
        let mut row = vec![
            r.index.to_string(),
            r.seed.to_string(),
            r.vertices.to_string(),
            r.area.to_string(),
            r.c_value.to_string(),
            r.c_witness.to_string(),
            r.g_value.to_string(),
            r.g_witness.to_string(),
            r.shortest_chord.to_string(),
            r.width.to_string(),
            r.width_bound.to_string(),
            anomaly_flags(r),
        ];
        if timing {
            row.push(format!("{:.3}", r.wall_ms));
        }
        w.write_record(&row)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_sweep(n: u64, seed: u64, resolution: usize, timing: bool, json: bool, out: Option<&Path>) -> CliResult {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let records = run_sweep(n, seed, resolution);
    let anomalies = records.iter().filter(|r| r.anomaly()).count();
    let text = if json {
        let rows: Vec<_> = records
            .iter()
            .map(|r| {
                let mut v = json!(r);
                if !timing {
                    v.as_object_mut().expect("record is an object").remove("wall_ms");
                }
                v
            })
            .collect();
        serde_json::to_string_pretty(&rows)? + "\n"
    } else {
        sweep_csv(&records, timing)?
    };
    write_output(out, &text)?;
    if anomalies > 0 {
        eprintln!("{anomalies} of {n} bodies flagged ANOMALY");
    }
    Ok(anomalies == 0)
}

fn cmd_report(samples: usize, json: bool) -> CliResult {
    let rep = constants_report(samples)?;
    if json {
        print_json(&json!(rep))?;
    } else {
        println!("{:<30} {:>14} {:>14} {:>11} {:>9}  ok", "quantity", "computed", "reference", "deviation", "tol");
        for r in &rep.rows {
            println!("{:<30} {:>14.9} {:>14.9} {:>11.3e} {:>9.0e}  {}",
                r.name, r.computed, r.reference, r.deviation, r.tolerance, if r.pass { "pass" } else { "FAIL" });
        }
    }
    Ok(rep.all_pass)
}

fn cmd_render(target: &str, cuts: &[CutKind], fan: usize, out: Option<&Path>) -> CliResult {
    let (body, chl_body, title) = match target {
        "auerbach" => (build_auerbach(DEFAULT_SAMPLES_PER_ARC).body, None, "Auerbach triangle"),
        "rounded-triangle" => {
            let b = chl::build(&ThetaProfile::rounded_triangle(1.0)?)?;
            (b.body.clone(), Some(b), "rounded triangle")
        }
        "disc" => {
            let b = chl::build(&ThetaProfile::disc(1.0)?)?;
            (b.body.clone(), Some(b), "disc")
        }
        path => (load_body(Path::new(path))?, None, "body"),
    };
    let mut drawn = Vec::new();
    for kind in cuts {
        let rep = match kind {
            CutKind::Chord => relaxed_g(&body),
            CutKind::Arc => relaxed_c_with(&body, ARC_GRID),
        };
        drawn.push(witness_cut(&rep));
    }
    if fan > 0 {
        let b = chl_body
            .as_ref()
            .ok_or_else(|| CliError::Usage("--fan needs a constant-halving-length target".into()))?;
        let half = b.profile.len() / 2;
        drawn.extend((0..fan).map(|i| Cut::unlabelled(b.halving_arc(i * half / fan))));
    }
    write_output(out, &svg::render(body.vertices(), &drawn, Some(title)))?;
    Ok(true)
}
