use std::path::Path;
use std::sync::Arc;

use ahtk_core::covering::{
    lift_hom_through_cover, lift_homotopy, lift_path, Cover, CyclicCover, HomLiftOutcome,
};
use ahtk_core::graph::{build_cycle, build_path, cartesian_product, has_short_cycle, is_graph_hom};
use ahtk_core::homotopy::{
    find_path_homotopy, is_contractible, is_homotopy_chain, ContractionMode, PathSearchOutcome,
    SearchBounds, StableSquare,
};
use ahtk_core::io::{
    parse_label_map, parse_map, parse_path, parse_square, parse_square_chain, write_graph,
    write_map, write_map_chain, write_path, write_raw_path, write_square, write_square_chain,
};
use ahtk_core::path::concat;
use ahtk_core::pi1::{
    concat_winding_report, equal_winding_certificate, gamma_n, winding_number, WindingOutcome,
};
use ahtk_core::{Error, Graph, IntegerLine, Space, StablePath, VertexId};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::input::{
    load_cover, load_cover_candidate, load_graph, load_space, read, write, CoverCandidate,
    CoverSpec, Failure, SpaceSpec,
};
use crate::{
    CertCmd, Command, ContractibleArgs, CoverCmd, GraphCmd, HomCmd, HomotopicArgs, LiftCmd,
    PathCmd, Pi1Cmd,
};

const YES: u8 = 0;
const NO: u8 = 1;
const UNKNOWN: u8 = 4;

type Outcome = Result<u8, Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Hom(HomCmd::Check { g1, g2, map, based }) => {
            let (g1, g2) = (load_graph(&g1)?, load_graph(&g2)?);
            let table = parse_label_map(&read(&map)?)?;
            if is_graph_hom(&table, &g1, &g2, based)? {
                println!("homomorphism");
                Ok(YES)
            } else {
                println!("not a homomorphism");
                Ok(NO)
            }
        }
        Command::Graph(cmd) => graph(cmd),
        Command::Path(cmd) => path(cmd),
        Command::Homotopic(args) => homotopic(args),
        Command::Contractible(args) => contractible(args),
        Command::Cover(CoverCmd::Check { cover }) => match load_cover_candidate(&cover.cover)? {
            CoverCandidate::Cyclic(c) => {
                println!("covering map: integer line over C_{}", c.k());
                Ok(YES)
            }
            CoverCandidate::Finite(c) => {
                println!(
                    "covering map: {} vertices over {}",
                    c.total_graph().vertex_count(),
                    c.base_arc().vertex_count()
                );
                Ok(YES)
            }
            CoverCandidate::NotACover(why) => {
                println!("not a covering map: {why}");
                Ok(NO)
            }
        },
        Command::Lift(cmd) => lift(cmd),
        Command::Winding { k, path } => {
            let cycle = build_cycle(k)?;
            let f = parse_path(&cycle, &read(&path)?)?;
            println!("{}", winding_number(k, &f)?);
            Ok(YES)
        }
        Command::Pi1(cmd) => pi1(cmd),
        Command::Cert(CertCmd::Check {
            space,
            square,
            p1,
            p2,
        }) => {
            let square = read(&square)?;
            let (p1, p2) = (read(&p1)?, read(&p2)?);
            let valid = match load_space(&space.space)? {
                SpaceSpec::Graph(g) => check_chain(g.as_ref(), &square, &p1, &p2)?,
                SpaceSpec::Line => check_chain(&IntegerLine, &square, &p1, &p2)?,
            };
            if valid {
                println!("valid certificate");
                Ok(YES)
            } else {
                println!("invalid certificate");
                Ok(NO)
            }
        }
    }
}

fn check_chain<S: Space>(space: &S, chain: &str, p1: &str, p2: &str) -> Result<bool, Failure> {
    let squares = parse_square_chain(space, chain)?;
    let (f, g) = (parse_path(space, p1)?, parse_path(space, p2)?);
    Ok(is_homotopy_chain(space, &squares, &f, &g)?)
}

fn graph(cmd: GraphCmd) -> Outcome {
    match cmd {
        GraphCmd::Product { g1, g2 } => {
            let (g1, g2) = (load_graph(&g1)?, load_graph(&g2)?);
            print!("{}", write_graph(&cartesian_product(&g1, &g2)));
        }
        GraphCmd::Cycle { k } => print!("{}", write_graph(&build_cycle(k)?)),
        GraphCmd::Path { n } => print!("{}", write_graph(&build_path(n)?)),
        GraphCmd::GirthGuard { graph } => {
            if has_short_cycle(load_graph(&graph)?.as_ref()) {
                return Err(Error::GirthViolation(graph).into());
            }
            println!("no 3-cycles or 4-cycles");
        }
    }
    Ok(YES)
}

fn path(cmd: PathCmd) -> Outcome {
    let spec = match &cmd {
        PathCmd::Normalize { space, .. }
        | PathCmd::Concat { space, .. }
        | PathCmd::Reverse { space, .. }
        | PathCmd::Shift { space, .. }
        | PathCmd::Pad { space, .. } => space.space.clone(),
    };
    match load_space(&spec)? {
        SpaceSpec::Graph(g) => path_in(g.as_ref(), cmd),
        SpaceSpec::Line => path_in(&IntegerLine, cmd),
    }
}

fn path_in<S: Space>(space: &S, cmd: PathCmd) -> Outcome {
    let load =
        |p: &Path| -> Result<StablePath<S::Vertex>, Failure> { Ok(parse_path(space, &read(p)?)?) };
    let text = match cmd {
        PathCmd::Normalize { path, .. } => write_path(space, &load(&path)?),
        PathCmd::Concat { f, g, .. } => {
            let c = concat(&load(&f)?, &load(&g)?)?;
            eprintln!(
                "raw stabilization points: m+ = {}, m- = {}",
                c.raw_m_plus, c.raw_m_minus
            );
            write_path(space, &c.path)
        }
        PathCmd::Reverse { path, .. } => write_path(space, &load(&path)?.reverse()),
        PathCmd::Shift { path, n, .. } => write_path(space, &load(&path)?.shift(n)),
        PathCmd::Pad {
            path,
            b,
            left,
            right,
            ..
        } => write_raw_path(space, &load(&path)?.pad(b, left, right)?),
    };
    print!("{text}");
    Ok(YES)
}

/// For paths in a cycle of length at least five, lifts to the integer line
/// from a common start end apart exactly when no homotopy exists.
fn winding_obstruction(
    g: &Graph,
    f: &StablePath<VertexId>,
    h: &StablePath<VertexId>,
) -> Option<(i64, i64)> {
    let k = g.vertex_count() as i64;
    let cycle = build_cycle(k).ok()?;
    if k < 5 || cycle.with_base(None).ok()? != g.with_base(None).ok()? {
        return None;
    }
    let cover = CyclicCover::new(k).ok()?;
    let start = cover.residue(*f.start());
    let a = *lift_path(&cover, f, start).ok()?.end();
    let b = *lift_path(&cover, h, start).ok()?.end();
    (a != b).then_some((a, b))
}

fn homotopic(args: HomotopicArgs) -> Outcome {
    let g = load_graph(&args.graph)?;
    let f = parse_path(g.as_ref(), &read(&args.p1)?)?;
    let h = parse_path(g.as_ref(), &read(&args.p2)?)?;
    let bounds = SearchBounds {
        max_len: args.max_len,
        max_rows: args.max_rows,
    };
    match find_path_homotopy(&g, &f, &h, bounds)? {
        PathSearchOutcome::Found(cert) => {
            let text = write_square(g.as_ref(), &cert.square);
            if let Some(file) = &args.emit_cert {
                write(file, &text)?;
            }
            print!("{text}");
            Ok(YES)
        }
        PathSearchOutcome::FacesDiffer => {
            println!("not homotopic: the paths have different endpoints");
            Ok(NO)
        }
        PathSearchOutcome::NotFoundWithinBounds { explored } => {
            println!("unknown: no certificate within bounds");
            eprintln!(
                "explored {explored} path shapes with max-len {} and max-rows {}",
                args.max_len, args.max_rows
            );
            if let Some((a, b)) = winding_obstruction(&g, &f, &h) {
                eprintln!(
                    "note: lifted to the integer line from a common start, the paths end at {a} and {b}; by homotopy lifting they are not homotopic"
                );
            }
            Ok(UNKNOWN)
        }
    }
}

fn contractible(args: ContractibleArgs) -> Outcome {
    let g = load_graph(&args.graph)?;
    let mode = match &args.based {
        Some(v) => ContractionMode::Based(g.require_vertex(v)?),
        None => ContractionMode::Unbased,
    };
    let report = is_contractible(&g, mode)?;
    println!("contractible: {}", report.contractible);
    match report.mode {
        ContractionMode::Unbased => println!("mode: unbased"),
        ContractionMode::Based(v) => println!("mode: based at {}", g.label(v)),
    }
    println!("explored: {}", report.explored);
    if report.exhaustive {
        println!("search: exhaustive");
    }
    if let Some(t) = report.target {
        println!("target: {}", g.label(t));
    }
    if let Some(chain) = &report.chain {
        println!("frames: {}", chain.frames.len());
        if let Some(file) = &args.emit_chain {
            write(file, &write_map_chain(chain))?;
        }
    }
    Ok(if report.contractible { YES } else { NO })
}

fn lift(cmd: LiftCmd) -> Outcome {
    match cmd {
        LiftCmd::Path { cover, path, start } => match load_cover(&cover.cover)? {
            CoverSpec::Cyclic(c) => lift_path_through(&c, &path, &start),
            CoverSpec::Finite(c) => lift_path_through(&c, &path, &start),
        },
        LiftCmd::Homotopy {
            cover,
            square,
            bottom,
        } => match load_cover(&cover.cover)? {
            CoverSpec::Cyclic(c) => lift_square_through(&c, &square, &bottom),
            CoverSpec::Finite(c) => lift_square_through(&c, &square, &bottom),
        },
        LiftCmd::Hom {
            cover,
            k,
            map,
            start,
        } => {
            let CoverSpec::Finite(cover) = load_cover(&cover.cover)? else {
                return Err(Failure::usage("lifting homomorphisms needs a finite cover"));
            };
            let k = load_graph(&k)?;
            let base: &Arc<Graph> = cover.base_arc();
            let f = parse_map(&read(&map)?, &k, base, false)?;
            let start = cover.total_graph().require_vertex(&start)?;
            match lift_hom_through_cover(&cover, &f, start)? {
                HomLiftOutcome::Lift(lift) => {
                    print!("{}", write_map(&lift));
                    Ok(YES)
                }
                HomLiftOutcome::NoLift { edge, witness } => {
                    println!(
                        "no lift: the lifted map breaks the edge {} {}",
                        k.label(edge.0),
                        k.label(edge.1)
                    );
                    eprintln!("witness loop in the domain, whose image does not lift to a loop:");
                    eprint!("{}", write_path(k.as_ref(), &witness));
                    Ok(NO)
                }
            }
        }
    }
}

fn lift_path_through<C: Cover>(cover: &C, path: &Path, start: &str) -> Outcome {
    let f = parse_path(cover.base_graph(), &read(path)?)?;
    let start = cover
        .total()
        .parse_vertex(start)
        .ok_or_else(|| Error::Validation(format!("start {start} is not a vertex of the cover")))?;
    print!(
        "{}",
        write_path(cover.total(), &lift_path(cover, &f, start)?)
    );
    Ok(YES)
}

fn lift_square_through<C: Cover>(cover: &C, square: &Path, bottom: &Path) -> Outcome {
    let h = parse_square(cover.base_graph(), &read(square)?)?;
    let bottom = parse_path(cover.total(), &read(bottom)?)?;
    print!(
        "{}",
        write_square(cover.total(), &lift_homotopy(cover, &h, &bottom)?)
    );
    Ok(YES)
}

fn seed() -> Result<u64, Failure> {
    match std::env::var("AHTK_SEED") {
        Ok(s) => s.parse().map_err(|_| {
            Failure::usage(format!("AHTK_SEED must be an unsigned integer, got {s:?}"))
        }),
        Err(_) => Ok(0),
    }
}

fn pi1(cmd: Pi1Cmd) -> Outcome {
    match cmd {
        Pi1Cmd::Verify { k, range } => {
            let r = range as i64;
            let mut rng = ChaCha8Rng::seed_from_u64(seed()?);
            let mut bad = 0;
            for n in -r..=r {
                let w = winding_number(k, &gamma_n(k, n)?)?;
                if w != n {
                    println!("generator {n}: winding {w}");
                    bad += 1;
                }
            }
            let mut cells = concat_winding_report(k, -r..=r)?;
            cells.shuffle(&mut rng);
            for cell in &cells {
                println!(
                    "{} {} {} {}",
                    cell.n,
                    cell.m,
                    cell.winding,
                    if cell.matches { "ok" } else { "MISMATCH" }
                );
            }
            bad += cells.iter().filter(|c| !c.matches).count();
            if bad > 0 {
                return Err(
                    Error::InternalInconsistency(format!("{bad} winding checks failed")).into(),
                );
            }
            println!(
                "verified {} generators and {} products in C_{k}",
                2 * r + 1,
                cells.len()
            );
            Ok(YES)
        }
        Pi1Cmd::Certify {
            k,
            p1,
            p2,
            emit_cert,
        } => {
            let cycle = build_cycle(k)?;
            let f = parse_path(&cycle, &read(&p1)?)?;
            let g = parse_path(&cycle, &read(&p2)?)?;
            match equal_winding_certificate(k, &f, &g)? {
                WindingOutcome::Homotopic(cert) => {
                    let squares = if cert.rows.len() == 1 {
                        vec![cert.square]
                    } else {
                        cert.rows
                            .windows(2)
                            .map(|w| StableSquare::from_rows(&cycle, w))
                            .collect::<Result<Vec<_>, _>>()?
                    };
                    let text = write_square_chain(&cycle, &squares);
                    if let Some(file) = &emit_cert {
                        write(file, &text)?;
                    }
                    print!("{text}");
                    Ok(YES)
                }
                WindingOutcome::WindingMismatch { f, g } => {
                    println!("not homotopic: winding numbers {f} and {g} differ");
                    Ok(NO)
                }
            }
        }
    }
}
