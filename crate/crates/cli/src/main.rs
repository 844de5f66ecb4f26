//! `cy4`: exact CY4 dg-quiver and wall-crossing toolkit.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input or
//! usage error, 3 resource bound exceeded.

mod expr;

use clap::{Args, Parser, Subcommand};
use cy4_core::error::CoreError;
use cy4_core::io;

use cy4_core::quiver::{cy4_complete, double, graft, master_bracket, Frame};
use cy4_core::rep::{ext_complex, euler_form, monomial_fixed_points, DimVector};
use cy4_core::report::run_suite;
use cy4_core::series::{
    global_residue_check, sqrt_euler_check, SeriesCtx,
};
use cy4_core::signs;
use cy4_core::toy;
use cy4_core::wc;
use cy4_core::Result;
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "cy4", version, about = "exact CY4 dg-quiver and wall-crossing toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quiver, superpotential, and completion operations
    Quiver {
        #[command(subcommand)]
        cmd: QuiverCmd,
    },
    /// Representations, deformation complexes, and fixed points
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// Euler form of a completed quiver
    Euler(EulerArgs),
    /// Determinant-line sign lemmas
    Signs {
        #[command(subcommand)]
        cmd: SignsCmd,
    },
    /// Truncated equivariant Laurent series
    Series {
        #[command(subcommand)]
        cmd: SeriesCmd,
    },
    /// Wall-crossing Lie calculus
    Wc {
        #[command(subcommand)]
        cmd: WcCmd,
    },
    /// Toy intersection-theory model
    Toy {
        #[command(subcommand)]
        cmd: ToyCmd,
    },
    /// Run a verification suite
    Verify {
        /// all|quiver|rep|signs|series|wc|toy
        #[arg(long, default_value = "all")]
        suite: String,
        /// seed for the randomized property checks
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum QuiverCmd {
    /// Check the master equation {H,H} = 0 in the cyclic quotient
    CheckMaster {
        file: PathBuf,
        /// also run the stricter path-algebra test
        #[arg(long)]
        strict: bool,
    },
    /// CY4-complete the quiver and tabulate the differential
    Complete {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the differential of one generator of the completed quiver
    Diff {
        file: PathBuf,
        #[arg(long)]
        generator: String,
    },
    /// Attach a framing quiver and re-complete
    Graft {
        file: PathBuf,
        /// js|flag|ms
        #[arg(long)]
        frame: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Deformation complex of a representation
    Ext {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Enumerate torus-fixed monomial ideals in four variables
    FixedPoints {
        #[arg(long)]
        n: usize,
        /// counts|reps|cells
        #[arg(long, default_value = "counts")]
        emit: String,
    },
}

#[derive(Args)]
struct EulerArgs {
    #[arg(long)]
    quiver: PathBuf,
    /// comma-separated dimensions in sorted vertex order
    #[arg(long)]
    d: String,
    #[arg(long)]
    e: String,
}

#[derive(Subcommand)]
enum SignsCmd {
    /// pentagon|double-dual|ot-compare|all
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_rank: u32,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Expand a product of powers of linear forms in z and the characters
    Expand {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value = "local")]
        regime: String,
        #[arg(long, default_value_t = 10)]
        order: i64,
    },
    /// Verify the square-root Euler class identity from a spec file
    SqrtEuler {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = "local")]
        regime: String,
    },
    /// Check the global-residue assumption for a Θ class
    GlobalResidue {
        #[arg(long)]
        theta: PathBuf,
    },
}

#[derive(Subcommand)]
enum WcCmd {
    /// The Joyce–Song wall-crossing right-hand side for a class
    Js {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        classes: PathBuf,
    },
    /// Invert the pair relation: ⟨M_α⟩ in the Ω generators
    Invert {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        classes: PathBuf,
    },
    /// The DT/PT conjugation expanded to the given order
    Dtpt {
        #[arg(long, default_value_t = 4)]
        order: u32,
    },
    /// The Hilbert-scheme series expanded off the vacuum
    Hilb {
        #[arg(long, default_value_t = 4)]
        order: u32,
    },
}

#[derive(Subcommand)]
enum ToyCmd {
    /// Pushforward of a class along the projective bundle
    Pushforward {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        expr: String,
    },
    /// The three-step pushdown collapse check
    BracketCheck {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        a: i64,
    },
    /// Residues of the three master-space fixed loci
    FlagResidues {
        #[arg(long)]
        spec: PathBuf,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CoreError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CoreError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn parse_dims(quiver_vertices: &[String], spec: &str) -> Result<DimVector> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != quiver_vertices.len() {
        return Err(CoreError::Input(format!(
            "expected {} comma-separated dimensions, got {}",
            quiver_vertices.len(),
            parts.len()
        )));
    }
    let mut out = DimVector::new();
    for (v, p) in quiver_vertices.iter().zip(parts) {
        let n: usize = p
            .trim()
            .parse()
            .map_err(|_| CoreError::Input(format!("bad dimension `{p}`")))?;
        out.insert(v.clone(), n);
    }
    Ok(out)
}

fn parse_vector(spec: &str) -> Result<Vec<i64>> {
    spec.split(',')
        .map(|p| {
            p.trim().parse().map_err(|_| CoreError::Input(format!("bad class entry `{p}`")))
        })
        .collect()
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Quiver { cmd } => quiver_cmd(cmd),
        Command::Rep { cmd } => rep_cmd(cmd),
        Command::Euler(args) => {
            let (q, h) = io::parse_quiver(&read(&args.quiver)?)?;
            let cy = cy4_complete(&q, &h)?;
            let verts: Vec<String> = cy.quiver().vertices().cloned().collect();
            let d = parse_dims(&verts, &args.d)?;
            let e = parse_dims(&verts, &args.e)?;
            println!("{}", euler_form(&cy, &d, &e));
            Ok(true)
        }
        Command::Signs { cmd } => signs_cmd(cmd),
        Command::Series { cmd } => series_cmd(cmd),
        Command::Wc { cmd } => wc_cmd(cmd),
        Command::Toy { cmd } => toy_cmd(cmd),
        Command::Verify { suite, seed } => {
            let t0 = std::time::Instant::now();
            let reports = run_suite(&suite, seed)?;
            let mut ok = true;
            for r in &reports {
                print!("{}", r.render());
                ok &= r.all_passed();
            }
            // elapsed time goes to stderr so stdout stays byte-stable
            eprintln!("elapsed: {:?}", t0.elapsed());
            Ok(ok)
        }
    }
}

fn quiver_cmd(cmd: QuiverCmd) -> Result<bool> {
    match cmd {
        QuiverCmd::CheckMaster { file, strict } => {
            let (q, h) = io::parse_quiver(&read(&file)?)?;
            let doubled = double(&q)?;
            let residue = master_bracket(&doubled, &h)?;
            if residue.is_zero() {
                println!("master equation holds in the cyclic quotient");
            } else {
                println!("master equation FAILS; residue:\n{}", residue.render());
                return Ok(false);
            }
            if strict {
                let strict_res = cy4_core::quiver::master_bracket_strict(&doubled, &h)?;
                if strict_res.is_zero() {
                    println!("strict path-algebra bracket also vanishes");
                } else {
                    println!(
                        "strict path-algebra bracket is nonzero (cyclic projection cancels it):\n{}",
                        strict_res.render()
                    );
                }
            }
            Ok(true)
        }
        QuiverCmd::Complete { file, output } => {
            let (q, h) = io::parse_quiver(&read(&file)?)?;
            let cy = cy4_complete(&q, &h)?;
            if let Some(w) = cy.verify_dga()? {
                println!("d² ≠ 0 at {}: {}", w.generator, w.value.render());
                return Ok(false);
            }
            write_or_print(&output, &io::emit_completed(&cy))?;
            Ok(true)
        }
        QuiverCmd::Diff { file, generator } => {
            let (q, h) = io::parse_quiver(&read(&file)?)?;
            let cy = cy4_complete(&q, &h)?;
            println!("{}", cy.differential(&generator)?.render());
            Ok(true)
        }
        QuiverCmd::Graft { file, frame, r, l, output } => {
            let (q, h) = io::parse_quiver(&read(&file)?)?;
            let cy = cy4_complete(&q, &h)?;
            let frame = match frame.as_str() {
                "js" => Frame::Js,
                "flag" => Frame::Flag {
                    r: r.ok_or_else(|| CoreError::Input("flag framing needs --r".into()))?,
                },
                "ms" => Frame::Ms {
                    r: r.ok_or_else(|| CoreError::Input("ms framing needs --r".into()))?,
                    l: l.ok_or_else(|| CoreError::Input("ms framing needs --l".into()))?,
                },
                other => return Err(CoreError::Input(format!("unknown frame `{other}`"))),
            };
            let grafted = graft(&cy, frame)?;
            write_or_print(&output, &io::emit_quiver(grafted.base(), grafted.potential()))?;
            Ok(true)
        }
    }
}

fn rep_cmd(cmd: RepCmd) -> Result<bool> {
    match cmd {
        RepCmd::Ext { quiver, rep } => {
            let (q, h) = io::parse_quiver(&read(&quiver)?)?;
            let cy = cy4_complete(&q, &h)?;
            let m = io::parse_representation(&read(&rep)?)?;
            let ext = ext_complex(&cy, &m)?;
            println!("complex dims: {:?}", ext.dims);
            println!("ext dims:     {:?}", ext.ext_dims());
            println!("euler char:   {}", ext.euler_characteristic());
            if !ext.is_complex() {
                println!("WARNING: δ² ≠ 0 (the representation violates the relations)");
                return Ok(false);
            }
            Ok(true)
        }
        RepCmd::FixedPoints { n, emit } => {
            let bound = std::env::var("CY4_MAX_N")
                .ok()
                .and_then(|s| s.parse().ok())
                .unwrap_or(8usize);
            let points = monomial_fixed_points(n, bound)?;
            match emit.as_str() {
                "counts" => println!("{}", points.len()),
                "reps" => {
                    for s in &points {
                        let rep = cy4_core::presets::c4_framed_representation(&s.to_framed_rep());
                        println!("{}", io::emit_representation(&rep));
                    }
                }
                "cells" => {
                    for s in &points {
                        let cells: Vec<String> = s
                            .cells()
                            .iter()
                            .map(|c| format!("({},{},{},{})", c[0], c[1], c[2], c[3]))
                            .collect();
                        println!("{}", cells.join(" "));
                    }
                }
                other => return Err(CoreError::Input(format!("unknown emit mode `{other}`"))),
            }
            Ok(true)
        }
    }
}

fn signs_cmd(cmd: SignsCmd) -> Result<bool> {
    let SignsCmd::Verify { suite, max_rank } = cmd;
    let mut ok = true;
    let mut row = |name: &str, passed: bool| {
        println!("[{}] signs::{name}", if passed { "pass" } else { "FAIL" });
        ok &= passed;
    };
    let want = |s: &str| suite == "all" || suite == s;
    if want("pentagon") {
        let mut passed = true;
        for u in 0..=max_rank {
            for v in 0..=max_rank {
                passed &= signs::verify_pentagon(u, v)?;
            }
        }
        row("pentagon", passed);
    }
    if want("double-dual") {
        let mut passed = true;
        for rank in 0..=max_rank {
            let got = signs::double_dual_discrepancy(rank)?;
            let sign = cy4_core::num::Gaussian::sign(if rank % 2 == 0 { 1 } else { -1 });
            passed &= got == sign;
        }
        row("double-dual", passed);
    }
    if want("ot-compare") {
        let mut passed = true;
        for p in 0..=max_rank.min(3) {
            for q in 0..=max_rank.min(3) {
                for m in 0..=max_rank.min(3) {
                    let got = signs::ot_comparison(p, q, m)?;
                    let sign =
                        cy4_core::num::Gaussian::sign(if (q + m) % 2 == 0 { 1 } else { -1 });
                    passed &= got == sign;
                }
            }
        }
        row("ot-compare", passed);
    }
    if !["all", "pentagon", "double-dual", "ot-compare"].contains(&suite.as_str()) {
        return Err(CoreError::Input(format!("unknown signs suite `{suite}`")));
    }
    Ok(ok)
}

fn series_cmd(cmd: SeriesCmd) -> Result<bool> {
    match cmd {
        SeriesCmd::Expand { expr, regime, order } => {
            let regime = io::parse_regime(&regime)?;
            let parsed = expr::parse_series_expr(&expr)?;
            let ctx = SeriesCtx::new(
                &parsed.lambdas.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                &[],
                order,
            );
            let series = expr::evaluate(&ctx, &parsed, regime)?;
            println!("{}", series.render(&ctx));
            Ok(true)
        }
        SeriesCmd::SqrtEuler { spec, regime } => {
            let file: io::SqrtEulerFile = serde_json::from_str(&read(&spec)?)
                .map_err(|e| CoreError::Input(format!("malformed spec: {e}")))?;
            let regime = io::parse_regime(&regime)?;
            let lambdas: Vec<&str> = file.lambdas.iter().map(|s| s.as_str()).collect();
            let cherns: Vec<&str> = file.cherns.iter().map(|s| s.as_str()).collect();
            let ctx = SeriesCtx::new(&lambdas, &cherns, file.order);
            let t_ge = io::kclass_from_terms(&ctx, &file.t_ge)?;
            let t_le = io::kclass_from_terms(&ctx, &file.t_le)?;
            let e_ge = io::kclass_from_terms(&ctx, &file.e_ge)?;
            let ok = sqrt_euler_check(&ctx, &t_ge, &t_le, &e_ge, regime)?;
            println!(
                "square-root Euler identity {} to order {} ({regime:?})",
                if ok { "holds" } else { "FAILS" },
                file.order
            );
            Ok(ok)
        }
        SeriesCmd::GlobalResidue { theta } => {
            let file: io::ThetaFile = serde_json::from_str(&read(&theta)?)
                .map_err(|e| CoreError::Input(format!("malformed theta file: {e}")))?;
            let lambdas: Vec<&str> = file.lambdas.iter().map(|s| s.as_str()).collect();
            let cherns: Vec<&str> = file.cherns.iter().map(|s| s.as_str()).collect();
            let ctx = SeriesCtx::new(&lambdas, &cherns, file.order);
            let theta = io::kclass_from_terms(&ctx, &file.theta)?;
            let ok = global_residue_check(&ctx, &theta)?;
            println!("total global residue {}", if ok { "vanishes" } else { "does NOT vanish" });
            Ok(ok)
        }
    }
}

fn wc_cmd(cmd: WcCmd) -> Result<bool> {
    match cmd {
        WcCmd::Js { alpha, classes } => {
            let table = io::parse_class_table(&read(&classes)?)?;
            let alpha = parse_vector(&alpha)?;
            let values: BTreeMap<String, wc::LieExpr> = table
                .classes
                .iter()
                .map(|c| (c.name.clone(), wc::LieExpr::gen(&c.gen_name())))
                .collect();
            let e = wc::js_rhs(&table, &alpha, &values)?;
            println!("{}", e.render());
            Ok(true)
        }
        WcCmd::Invert { alpha, classes } => {
            let table = io::parse_class_table(&read(&classes)?)?;
            let alpha = parse_vector(&alpha)?;
            let omegas: BTreeMap<String, wc::LieExpr> = table
                .classes
                .iter()
                .map(|c| (c.name.clone(), wc::LieExpr::gen(&format!("Om_{}", c.name))))
                .collect();
            let e = wc::invert_js(&table, &alpha, &omegas)?;
            println!("{}", e.render());
            Ok(true)
        }
        WcCmd::Dtpt { order } => {
            let mut gens = wc::QSeries::new(order);
            for n in 1..=order {
                gens.set(n, wc::LieExpr::gen(&format!("M{n}")));
            }
            let mut pt = wc::QSeries::new(order);
            for n in 0..=order {
                pt.set(n, wc::LieExpr::gen(&format!("PT{n}")));
            }
            let dt = wc::exp_adjoint(&gens, &pt)?;
            for n in 0..=order {
                println!("DT_{n} = {}", dt.coefficient(n).render());
            }
            let ok = wc::wc_invert(&gens, &dt)? == pt;
            println!("inversion round trip: {}", if ok { "exact" } else { "FAILS" });
            Ok(ok)
        }
        WcCmd::Hilb { order } => {
            let mut gens = wc::QSeries::new(order);
            for n in 1..=order {
                gens.set(n, wc::LieExpr::gen(&format!("M{n}")));
            }
            let mut vac = wc::QSeries::new(order);
            vac.set(0, wc::LieExpr::gen(wc::POINT_CLASS));
            let hilb = wc::exp_adjoint(&gens, &vac)?;
            for n in 0..=order {
                println!("Hilb_{n} = {}", hilb.coefficient(n).render());
            }
            let ok = wc::wc_invert(&gens, &hilb)? == vac;
            println!("inversion round trip: {}", if ok { "exact" } else { "FAILS" });
            Ok(ok)
        }
    }
}

fn toy_cmd(cmd: ToyCmd) -> Result<bool> {
    match cmd {
        ToyCmd::Pushforward { r, expr } => {
            let model = toy::ProjBundleModel::new(r, (r + 4) as u32)?;
            let class = expr::parse_toy_class(&model, &expr)?;
            let pushed = model.pushforward(&class);
            println!("{}", expr::render_toy_class(&pushed));
            Ok(true)
        }
        ToyCmd::BracketCheck { r, a } => {
            let ok = toy::bracket_pushdown_check(r, a)?;
            println!(
                "pushdown collapse at rank {r} {}",
                if ok { "matches χ·v" } else { "FAILS" }
            );
            Ok(ok)
        }
        ToyCmd::FlagResidues { spec } => {
            let file: io::FlagResidueFile = serde_json::from_str(&read(&spec)?)
                .map_err(|e| CoreError::Input(format!("malformed spec: {e}")))?;
            let locus = |l: &io::LocusFile| -> Result<toy::LocusData> {
                Ok(toy::LocusData {
                    coeff: cy4_core::num::parse_rat(&l.coeff)?,
                    roots: l.roots.clone(),
                })
            };
            let report = toy::fixed_locus_residues(
                &locus(&file.locus1)?,
                &locus(&file.locus2)?,
                &locus(&file.locus3)?,
                file.epsilon,
            )?;
            let mut vars: Vec<(String, u32)> = Vec::new();
            for l in [&file.locus1, &file.locus2, &file.locus3] {
                for r in &l.roots {
                    vars.push((r.clone(), 6));
                }
            }
            vars.push(("A".into(), 1));
            vars.push(("B".into(), 1));
            vars.push(("v".into(), 1));
            vars.sort();
            vars.dedup();
            let ctx = toy::ToyCtx::new(vars);
            println!("locus 1 residue: {}", report.locus1.render(&ctx));
            println!("locus 2 residue: {}", report.locus2.render(&ctx));
            println!("locus 3 residue: {}", report.locus3.render(&ctx));
            println!("total:           {}", report.total.render(&ctx));
            Ok(true)
        }
    }
}

fn main() {
    match run() {
        Ok(true) => std::process::exit(0),
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
