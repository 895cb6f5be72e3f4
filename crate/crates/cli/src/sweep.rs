use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use genusrep::reps::{
    construct_3d_string, construct_type_i, construct_type_ii, construct_type_ii_at, one_dim_rep_at,
};
use genusrep::{Representation, SurfaceParams};

use crate::args::{ConstructKind, SweepArgs};
use crate::Failure;

/// Parses "a,b,c" or "lo:hi" (sampled at `grid` evenly spaced points).
pub fn parse_values(s: &str, grid: usize) -> Result<Vec<f64>, Failure> {
    let bad = |e: std::num::ParseFloatError| Failure::usage(format!("bad value list {s:?}: {e}"));
    if let Some((lo, hi)) = s.split_once(':') {
        let (lo, hi) = (
            lo.trim().parse::<f64>().map_err(bad)?,
            hi.trim().parse::<f64>().map_err(bad)?,
        );
        if grid == 0 {
            return Err(Failure::usage("--grid must be at least 1"));
        }
        if grid == 1 {
            return Ok(vec![lo]);
        }
        let step = (hi - lo) / (grid - 1) as f64;
        Ok((0..grid)
            .map(|k| if k + 1 == grid { hi } else { lo + step * k as f64 })
            .collect())
    } else {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(bad))
            .collect()
    }
}

/// Parses "2,3" or an inclusive range "2:5".
pub fn parse_genera(s: &str) -> Result<Vec<u32>, Failure> {
    let bad = |e: std::num::ParseIntError| Failure::usage(format!("bad genus list {s:?}: {e}"));
    if let Some((lo, hi)) = s.split_once(':') {
        let (lo, hi) = (
            lo.trim().parse::<u32>().map_err(bad)?,
            hi.trim().parse::<u32>().map_err(bad)?,
        );
        Ok((lo..=hi).collect())
    } else {
        s.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(bad))
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct Job {
    g: u32,
    alpha: f64,
    c: f64,
    hbar: Option<f64>,
    x_hat: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Row {
    g: u32,
    alpha: f64,
    c: f64,
    hbar: Option<f64>,
    x_hat: Option<f64>,
    z_abs: Option<f64>,
    res_xy: Option<f64>,
    res_yz: Option<f64>,
    res_zx: Option<f64>,
    success: bool,
    reason: String,
}

fn attempt(kind: ConstructKind, job: &Job) -> genusrep::Result<Representation> {
    let params = |h: f64| SurfaceParams::new(job.g, job.alpha, job.c, h);
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| genusrep::Error::InvalidParameter(format!("missing {flag}")))
    };
    match kind {
        ConstructKind::OneDim => {
            one_dim_rep_at(&params(job.hbar.unwrap_or(1.0))?, need(job.x_hat, "--x-hat")?)
        }
        ConstructKind::TypeI => construct_type_i(&params(need(job.hbar, "--hbar")?)?, 0.0),
        ConstructKind::TypeII => {
            let x = need(job.x_hat, "--x-hat")?;
            match job.hbar {
                Some(h) => construct_type_ii_at(&params(h)?, x, 0.0, 1),
                None => construct_type_ii(job.g, job.alpha, job.c, x, 0.0, 1).map(|r| r.1),
            }
        }
        ConstructKind::ThreeD => construct_3d_string(job.g, job.alpha, job.c, 0.0, 0.0).map(|r| r.1),
    }
}

fn row(kind: ConstructKind, job: &Job, tol: f64) -> Row {
    let mut row = Row {
        g: job.g,
        alpha: job.alpha,
        c: job.c,
        hbar: job.hbar,
        x_hat: job.x_hat,
        z_abs: None,
        res_xy: None,
        res_yz: None,
        res_zx: None,
        success: false,
        reason: String::new(),
    };
    let rep = attempt(kind, job).and_then(|rep| rep.residuals().map(|res| (rep, res)));
    match rep {
        Ok((rep, res)) => {
            row.hbar = Some(rep.params().hbar());
            row.x_hat = rep.meta().x_hat;
            row.z_abs = (rep.dim() > 1).then(|| rep.y().get(0, 1).norm());
            row.res_xy = Some(res.relative[0]);
            row.res_yz = Some(res.relative[1]);
            row.res_zx = Some(res.relative[2]);
            row.success = res.within(tol);
            if !row.success {
                row.reason = format!("residual {:e} exceeds tolerance", res.max_relative());
            }
        }
        Err(e) => row.reason = e.to_string(),
    }
    row
}

pub fn run(a: &SweepArgs) -> Result<(), Failure> {
    let genera = parse_genera(&a.g)?;
    let alphas = parse_values(&a.alpha, a.grid)?;
    let cs = parse_values(&a.c, a.grid)?;
    let opt = |s: &Option<String>| -> Result<Vec<Option<f64>>, Failure> {
        match s {
            Some(s) => Ok(parse_values(s, a.grid)?.into_iter().map(Some).collect()),
            None => Ok(vec![None]),
        }
    };
    let hbars = if a.kind == ConstructKind::ThreeD {
        vec![None]
    } else {
        opt(&a.hbar)?
    };
    let xs = opt(&a.x_hat)?;
    let mut jobs = Vec::new();
    for &g in &genera {
        for &alpha in &alphas {
            for &c in &cs {
                for &hbar in &hbars {
                    for &x_hat in &xs {
                        jobs.push(Job {
                            g,
                            alpha,
                            c,
                            hbar,
                            x_hat,
                        });
                    }
                }
            }
        }
    }
    let rows: Vec<Row> = jobs.par_iter().map(|j| row(a.kind, j, a.tol)).collect();

    let sink: Box<dyn Write> = match &a.out {
        Some(p) => Box::new(std::fs::File::create(p).map_err(|e| Failure::io(&p.display().to_string(), e))?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    for r in &rows {
        w.serialize(r).map_err(|e| Failure::usage(e.to_string()))?;
    }
    w.flush().map_err(|e| Failure::io("csv output", e))?;
    let ok = rows.iter().filter(|r| r.success).count();
    eprintln!("{ok} of {} rows succeeded", rows.len());
    Ok(())
}
