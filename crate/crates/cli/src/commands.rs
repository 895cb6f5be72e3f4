use std::fs;
use std::io::Write;
use std::path::Path;

use genusrep::graphs::{forbidden_check, graph_of, MatrixGraph};
use genusrep::levelset::{extract, topology, Bounds};
use genusrep::reps::{
    classify, construct_3d_string, construct_type_i, construct_type_ii, construct_type_ii_at, is_degenerate,
    one_dim_rep_at, Representation,
};
use genusrep::surface::{alpha_upper_bound, check_m_bounds, check_p_zero, max_g};
use genusrep::{RepFileV1, SurfaceParams};

use crate::args::{ConstructArgs, ConstructKind, GraphCheckArgs, LevelsetArgs, ValidateArgs, VerifyArgs};
use crate::{exit, mesh_io, Failure};

pub fn validate(a: &ValidateArgs) -> Result<(), Failure> {
    let f = &a.family;
    let m = max_g(f.g)?;
    let upper = alpha_upper_bound(f.g, f.c.max(0.0))?;
    println!("g: {}", f.g);
    println!("M: {m}");
    println!("alpha range: (0, {upper})");
    let bounds = check_m_bounds(f.g)?;
    println!(
        "M >= (2g-1)!/g = {}: {}",
        bounds.factorial_bound,
        if bounds.holds_factorial { "holds" } else { "fails" }
    );
    println!(
        "M >= (g!)^2 = {}: {}",
        bounds.square_bound,
        if bounds.holds_square { "holds" } else { "fails" }
    );
    let params = SurfaceParams::new(f.g, f.alpha, f.c, a.hbar)?;
    let pz = check_p_zero(&params);
    println!(
        "p(0) = {}: p(0) + 3 sqrt(c) = {} > 0, sqrt(c) - p(0) = {} > 0: {}",
        pz.p0,
        pz.upper_margin,
        pz.lower_margin,
        if pz.holds { "holds" } else { "fails" }
    );
    println!("valid");
    Ok(())
}

fn build(a: &ConstructArgs) -> Result<Representation, Failure> {
    let f = &a.family;
    let need_x = || {
        a.x_hat
            .ok_or_else(|| Failure::usage(format!("construct {:?} requires --x-hat", a.kind)))
    };
    match a.kind {
        ConstructKind::OneDim => {
            let params = SurfaceParams::new(f.g, f.alpha, f.c, a.hbar.unwrap_or(1.0))?;
            Ok(one_dim_rep_at(&params, need_x()?)?)
        }
        ConstructKind::TypeI => {
            let hbar = a
                .hbar
                .ok_or_else(|| Failure::usage("construct typeI requires --hbar"))?;
            let params = SurfaceParams::new(f.g, f.alpha, f.c, hbar)?;
            Ok(construct_type_i(&params, a.theta)?)
        }
        ConstructKind::TypeII => {
            let x = need_x()?;
            match a.hbar {
                Some(h) => {
                    let params = SurfaceParams::new(f.g, f.alpha, f.c, h)?;
                    Ok(construct_type_ii_at(&params, x, a.theta, a.sign)?)
                }
                None => Ok(construct_type_ii(f.g, f.alpha, f.c, x, a.theta, a.sign)?.1),
            }
        }
        ConstructKind::ThreeD => {
            if a.hbar.is_some() {
                eprintln!("warning: 3d derives hbar from the parameters; ignoring --hbar");
            }
            Ok(construct_3d_string(f.g, f.alpha, f.c, a.theta, a.theta2)?.1)
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(&p.display().to_string(), e)),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}").map_err(|e| Failure::io("stdout", e))
        }
    }
}

pub fn construct(a: &ConstructArgs) -> Result<(), Failure> {
    let rep = build(a)?;
    let res = rep.residuals()?;
    write_output(a.out.as_deref(), &RepFileV1::from_rep(&rep).to_json())?;
    eprintln!(
        "{} dim {} hbar {}: residuals xy {:.3e} yz {:.3e} zx {:.3e} (relative, scale {:.3e})",
        rep.kind(),
        rep.dim(),
        rep.params().hbar(),
        res.relative[0],
        res.relative[1],
        res.relative[2],
        res.norm_scale
    );
    if res.within(a.tol) {
        Ok(())
    } else {
        Err(Failure::new(
            exit::VERIFY,
            format!("residual {:e} exceeds tolerance {:e}", res.max_relative(), a.tol),
        ))
    }
}

fn read_rep(path: &Path) -> Result<Representation, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(&path.display().to_string(), e))?;
    Ok(RepFileV1::from_json(&text)?.to_representation()?)
}

pub fn verify(a: &VerifyArgs) -> Result<(), Failure> {
    let rep = read_rep(&a.file)?;
    let res = rep.residuals()?;
    println!("kind: {}", rep.kind());
    println!("dim: {}", rep.dim());
    println!("residual [X,Y] = i hbar Z: {:e}", res.relative[0]);
    println!("residual [Y,Z] = i hbar T: {:e}", res.relative[1]);
    println!("residual [Z,X] = i hbar Y: {:e}", res.relative[2]);
    println!("degenerate: {}", is_degenerate(&rep, a.tol));
    let graph = graph_of(rep.y(), a.tol * rep.y().as_matrix().max_abs());
    println!("graph: {graph}");
    println!("graph verdict: {}", forbidden_check(&graph));
    match classify(&rep, a.tol) {
        Ok((kind, irr)) => println!("classification: {kind}, {irr}"),
        Err(e) => println!("classification: unavailable ({e})"),
    }
    if res.within(a.tol) {
        println!("ok");
        Ok(())
    } else {
        Err(Failure::new(
            exit::VERIFY,
            format!("residual {:e} exceeds tolerance {:e}", res.max_relative(), a.tol),
        ))
    }
}

pub fn graph_check(a: &GraphCheckArgs) -> Result<(), Failure> {
    let graph = match (&a.adjacency, &a.file) {
        (Some(json), _) => {
            let lists: Vec<Vec<usize>> = serde_json::from_str(json)
                .map_err(|e| Failure::usage(format!("malformed adjacency: {e}")))?;
            MatrixGraph::from_adjacency_lists(&lists).map_err(|e| Failure::usage(e.to_string()))?
        }
        (None, Some(path)) => {
            let rep = read_rep(path)?;
            graph_of(rep.y(), a.tol * rep.y().as_matrix().max_abs())
        }
        (None, None) => return Err(Failure::usage("give a representation file or --adjacency")),
    };
    println!("graph: {graph}");
    println!("{}", forbidden_check(&graph));
    Ok(())
}

fn parse_bounds(s: &str) -> Result<Bounds, Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::usage(format!("bad --bounds {s:?}: {e}")))?;
    if v.len() != 6 {
        return Err(Failure::usage(format!(
            "--bounds needs 6 numbers, got {}",
            v.len()
        )));
    }
    Bounds::new([v[0], v[2], v[4]], [v[1], v[3], v[5]]).map_err(|e| Failure::usage(e.to_string()))
}

pub fn levelset(a: &LevelsetArgs) -> Result<(), Failure> {
    let f = &a.family;
    let params = SurfaceParams::new(f.g, f.alpha, f.c, 1.0)?;
    let bounds = match &a.bounds {
        Some(s) => parse_bounds(s)?,
        None => Bounds::default_for(&params),
    };
    let mesh = extract(&params, &bounds, a.resolution).map_err(|e| Failure::usage(e.to_string()))?;
    if mesh.triangles.is_empty() {
        return Err(Failure::new(
            exit::EMPTY,
            "the level set does not meet the sampling box",
        ));
    }
    let t = topology(&mesh);
    println!("vertices: {}", t.vertices);
    println!("edges: {}", t.edges);
    println!("faces: {}", t.faces);
    println!("euler characteristic: {}", t.euler_characteristic);
    println!("components: {}", t.components);
    println!("boundary edges: {}", t.boundary_edges);
    match t.genus {
        Some(genus) => println!("genus: {genus}"),
        None => println!("genus: undetermined (mesh is not a closed manifold)"),
    }
    if let Some(path) = &a.out {
        mesh_io::write_mesh(path, &mesh)?;
    }
    Ok(())
}
