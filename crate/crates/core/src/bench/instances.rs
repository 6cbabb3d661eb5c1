use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::{BenchConfig, BenchError};
use crate::error::Error;
use crate::generators::{apply_truth, build_instance, read_truth, write_truth, Instance};
use crate::oracle::TableOracle;
use crate::roadmap::{EdgeStatus, Roadmap, VertexId};

pub const SCENE_FILE: &str = "scene.txt";
pub const ROADMAP_FILE: &str = "roadmap.txt";
pub const TRUTH_FILE: &str = "truth.txt";
pub const QUERY_FILE: &str = "query.txt";
pub const MANIFEST_FILE: &str = "manifest.txt";

/// An instance read back from disk, ready to run.
#[derive(Debug, Clone)]
pub struct StoredInstance {
    pub roadmap: Roadmap,
    pub oracle: TableOracle,
    pub truth: Vec<EdgeStatus>,
}

fn create(path: &Path) -> Result<BufWriter<File>, BenchError> {
    Ok(BufWriter::new(File::create(path)?))
}

fn open(path: &Path) -> Result<BufReader<File>, BenchError> {
    File::open(path).map(BufReader::new).map_err(|e| BenchError::MissingInput {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn malformed(path: &Path, e: Error) -> BenchError {
    BenchError::MissingInput {
        path: path.to_path_buf(),
        message: format!("malformed: {e}"),
    }
}

/// Writes `start i` and `goal j`.
pub fn write_query(mut w: impl Write, start: VertexId, goal: VertexId) -> std::io::Result<()> {
    writeln!(w, "start {start}")?;
    writeln!(w, "goal {goal}")
}

pub fn read_query(r: impl BufRead) -> Result<(VertexId, VertexId), Error> {
    let (mut start, mut goal) = (None, None);
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let f: Vec<&str> = line.split_whitespace().collect();
        match f.as_slice() {
            [] => {}
            [key, v] if *key == "start" || *key == "goal" => {
                let v: VertexId = v.parse().map_err(|_| Error::parse(i + 1, "bad vertex index"))?;
                if *key == "start" {
                    start = Some(v);
                } else {
                    goal = Some(v);
                }
            }
            _ => return Err(Error::parse(i + 1, "expected `start i` or `goal j`")),
        }
    }
    match (start, goal) {
        (Some(s), Some(g)) => Ok((s, g)),
        _ => Err(Error::parse(0, "query needs both `start` and `goal`")),
    }
}

/// Writes the four instance files into `dir`, creating it.
pub fn write_instance(dir: &Path, instance: &Instance) -> Result<(), BenchError> {
    fs::create_dir_all(dir)?;
    let mut w = create(&dir.join(SCENE_FILE))?;
    instance.scene.write_to(&mut w)?;
    w.flush()?;
    let mut w = create(&dir.join(ROADMAP_FILE))?;
    instance.roadmap.write_to(&mut w)?;
    w.flush()?;
    let mut w = create(&dir.join(TRUTH_FILE))?;
    write_truth(&mut w, &instance.roadmap, &instance.truth)?;
    w.flush()?;
    let (s, g) = instance.roadmap.query()?;
    let mut w = create(&dir.join(QUERY_FILE))?;
    write_query(&mut w, s, g)?;
    w.flush()?;
    Ok(())
}

/// Reads an instance directory. The scene file must be present, though
/// runs use the truth table rather than geometry.
pub fn read_instance(dir: &Path) -> Result<StoredInstance, BenchError> {
    let scene_path = dir.join(SCENE_FILE);
    open(&scene_path)?;
    let path = dir.join(ROADMAP_FILE);
    let mut roadmap = Roadmap::read_from(open(&path)?).map_err(|e| malformed(&path, e))?;
    let path = dir.join(QUERY_FILE);
    let (s, g) = read_query(open(&path)?).map_err(|e| malformed(&path, e))?;
    roadmap.set_query(s, g).map_err(|e| malformed(&path, e))?;
    let path = dir.join(TRUTH_FILE);
    let entries = read_truth(open(&path)?).map_err(|e| malformed(&path, e))?;
    let oracle = apply_truth(&mut roadmap, &entries).map_err(|e| malformed(&path, e))?;
    let truth = entries.iter().map(|t| t.status).collect();
    Ok(StoredInstance { roadmap, oracle, truth })
}

/// Builds and writes every instance of the sweep, plus a manifest listing
/// their ids in sweep order. Returns the instance directories.
pub fn cmd_generate(config: &BenchConfig) -> Result<Vec<PathBuf>, BenchError> {
    fs::create_dir_all(&config.output)?;
    let dirs = config
        .instances
        .par_iter()
        .map(|spec| {
            let instance = build_instance(spec)?;
            let dir = config.instance_dir(spec);
            write_instance(&dir, &instance)?;
            Ok(dir)
        })
        .collect::<Result<Vec<_>, BenchError>>()?;
    let mut w = create(&config.output.join(MANIFEST_FILE))?;
    writeln!(w, "# instance ids in sweep order")?;
    for spec in &config.instances {
        writeln!(w, "{}", spec.id())?;
    }
    w.flush()?;
    Ok(dirs)
}
