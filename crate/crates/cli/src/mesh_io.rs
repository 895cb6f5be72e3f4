use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use genusrep::levelset::Mesh;

use crate::Failure;

/// Writes OBJ, or a CSV triangle list when the extension is `.csv`.
pub fn write_mesh(path: &Path, mesh: &Mesh) -> Result<(), Failure> {
    let io = |e| Failure::io(&path.display().to_string(), e);
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        let mut w = csv::Writer::from_path(path).map_err(|e| Failure::usage(e.to_string()))?;
        w.write_record(["x1", "y1", "z1", "x2", "y2", "z2", "x3", "y3", "z3"])
            .map_err(|e| Failure::usage(e.to_string()))?;
        for tri in &mesh.triangles {
            let row = tri.iter().flat_map(|&v| mesh.vertices[v]).map(|x| x.to_string());
            w.write_record(row).map_err(|e| Failure::usage(e.to_string()))?;
        }
        w.flush().map_err(io)?;
    } else {
        let mut w = BufWriter::new(File::create(path).map_err(io)?);
        for v in &mesh.vertices {
            writeln!(w, "v {} {} {}", v[0], v[1], v[2]).map_err(io)?;
        }
        for t in &mesh.triangles {
            writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).map_err(io)?;
        }
        w.flush().map_err(io)?;
    }
    Ok(())
}
