use std::ops::Range;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use toml::Spanned;

use super::BenchError;
use crate::algorithm::Algorithm;
use crate::generators::{InstanceSpec, NoiseModel, PriorMode, RoadmapKind};
use crate::oracle::bundled_scene;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(t) => vec![t],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Seeds {
    Count(u64),
    List(Vec<u64>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scene: Option<Spanned<OneOrMany<String>>>,
    seeds: Option<Spanned<Seeds>>,
    variants: Option<Spanned<OneOrMany<String>>>,
    output: Option<Spanned<String>>,
    #[serde(default)]
    roadmap: RawRoadmap,
    #[serde(default)]
    prior: RawPrior,
    #[serde(default)]
    algorithm: RawAlgorithm,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRoadmap {
    #[serde(rename = "type")]
    kind: Option<Spanned<String>>,
    n_vertices: Option<Spanned<OneOrMany<usize>>>,
    n_edges: Option<Spanned<OneOrMany<usize>>>,
    k: Option<Spanned<usize>>,
    attempts: Option<Spanned<OneOrMany<usize>>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPrior {
    mode: Option<Spanned<OneOrMany<String>>>,
    params: Option<Spanned<Vec<f64>>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgorithm {
    names: Option<Spanned<OneOrMany<String>>>,
    paths_per_iteration: Option<Spanned<usize>>,
}

/// A parsed sweep: the instances to generate and the algorithms to run
/// on them.
///
/// ```toml
/// scene = ["passage", "rooms"]      # or zigzag, clutter
/// seeds = 10                      # or an explicit list
/// variants = ["feasible", "infeasible"]
/// output = "bench-out"            # relative to the config file
///
/// [roadmap]
/// type = "prm"                    # prm | grid | spars
/// n_edges = [500, 1000, 2000]     # or n_vertices with k
///
/// [prior]
/// mode = ["noisy", "none"]        # perfect | noisy | none
/// params = [0.3, 0.4, 0.6, 0.7]
///
/// [algorithm]
/// names = ["ipc", "idpc"]
/// paths_per_iteration = 1
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    /// Instances in sweep order: scene, size, prior, variant, seed.
    pub instances: Vec<InstanceSpec>,
    pub algorithms: Vec<Algorithm>,
    pub paths_per_iteration: usize,
    /// Directory holding the generated instances.
    pub output: PathBuf,
}

struct Source<'a> {
    name: &'a str,
    text: &'a str,
}

impl Source<'_> {
    fn line_of(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())].matches('\n').count() + 1
    }

    fn error(&self, span: Option<Range<usize>>, message: impl Into<String>) -> BenchError {
        BenchError::Config {
            path: self.name.to_string(),
            line: span.map_or(1, |s| self.line_of(s.start)),
            message: message.into(),
        }
    }
}

impl BenchConfig {
    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::MissingInput {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, &path.display().to_string(), base)
    }

    /// Parses config text; `name` labels error messages and a relative
    /// `output` is resolved against `base`.
    pub fn parse(text: &str, name: &str, base: &Path) -> Result<Self, BenchError> {
        let src = Source { name, text };
        let raw: RawConfig = toml::from_str(text).map_err(|e| src.error(e.span(), e.message().trim()))?;

        let scenes = required(&src, raw.scene, "scene")?;
        let scene_span = scenes.span();
        let scenes = scenes.into_inner().into_vec();
        if let Some(s) = scenes.iter().find(|s| bundled_scene(s).is_none()) {
            return Err(src.error(Some(scene_span), format!("unknown scene `{s}`")));
        }
        let seeds: Vec<u64> = match required(&src, raw.seeds, "seeds")?.into_inner() {
            Seeds::Count(n) => (0..n).collect(),
            Seeds::List(v) => v,
        };
        let variants = match raw.variants {
            None => vec![false, true],
            Some(v) => {
                let span = v.span();
                v.into_inner()
                    .into_vec()
                    .iter()
                    .map(|s| match s.as_str() {
                        "feasible" => Ok(false),
                        "infeasible" => Ok(true),
                        other => Err(src.error(
                            Some(span.clone()),
                            format!("unknown variant `{other}`, expected feasible or infeasible"),
                        )),
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        let output = match raw.output {
            Some(o) => base.join(o.into_inner()),
            None => base.join("bench-out"),
        };

        let shapes = roadmap_shapes(&src, raw.roadmap)?;
        let priors = priors(&src, raw.prior)?;

        let algorithms = match raw.algorithm.names {
            None => Algorithm::ALL.to_vec(),
            Some(n) => {
                let span = n.span();
                n.into_inner()
                    .into_vec()
                    .iter()
                    .map(|s| s.parse::<Algorithm>().map_err(|e| src.error(Some(span.clone()), e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        let paths_per_iteration = match raw.algorithm.paths_per_iteration {
            None => 1,
            Some(p) if *p.get_ref() == 0 => {
                return Err(src.error(Some(p.span()), "paths_per_iteration must be at least 1"))
            }
            Some(p) => p.into_inner(),
        };

        let mut instances = Vec::new();
        for scene in &scenes {
            for shape in &shapes {
                for &prior in &priors {
                    for &blocked in &variants {
                        for &seed in &seeds {
                            instances.push(InstanceSpec {
                                scene: scene.clone(),
                                kind: shape.kind,
                                size: shape.size,
                                n_vertices: shape.n_vertices,
                                k_neighbors: shape.k,
                                prior,
                                blocked,
                                seed,
                            });
                        }
                    }
                }
            }
        }
        Ok(BenchConfig {
            instances,
            algorithms,
            paths_per_iteration,
            output,
        })
    }

    pub fn instance_dir(&self, spec: &InstanceSpec) -> PathBuf {
        self.output.join("instances").join(spec.id())
    }
}

fn required<T>(src: &Source, v: Option<Spanned<T>>, key: &str) -> Result<Spanned<T>, BenchError> {
    v.ok_or_else(|| src.error(None, format!("missing required key `{key}`")))
}

struct Shape {
    kind: RoadmapKind,
    size: usize,
    n_vertices: Option<usize>,
    k: Option<usize>,
}

fn positive(src: &Source, v: Spanned<OneOrMany<usize>>, key: &str) -> Result<Vec<usize>, BenchError> {
    let span = v.span();
    let out = v.into_inner().into_vec();
    if out.iter().any(|&x| x < 2) {
        return Err(src.error(Some(span), format!("`{key}` values must be at least 2")));
    }
    Ok(out)
}

fn roadmap_shapes(src: &Source, r: RawRoadmap) -> Result<Vec<Shape>, BenchError> {
    let kind = match r.kind {
        None => RoadmapKind::Prm,
        Some(k) => k
            .get_ref()
            .parse()
            .map_err(|_| src.error(Some(k.span()), format!("unknown roadmap type `{}`", k.get_ref())))?,
    };
    let k = match r.k {
        Some(k) if *k.get_ref() == 0 => return Err(src.error(Some(k.span()), "`k` must be at least 1")),
        k => k.map(Spanned::into_inner),
    };
    let vertices = r.n_vertices.map(|v| positive(src, v, "n_vertices")).transpose()?;
    let edges = r.n_edges.map(|v| positive(src, v, "n_edges")).transpose()?;
    let attempts = r.attempts.map(|v| positive(src, v, "attempts")).transpose()?;
    let shape = |size, n_vertices, k| Shape {
        kind,
        size,
        n_vertices,
        k,
    };
    let missing = |what: &str| src.error(None, format!("roadmap type `{}` needs {what}", kind.name()));
    Ok(match kind {
        RoadmapKind::Prm => match (edges, vertices) {
            (Some(edges), vertices) => {
                let vertices: Vec<Option<usize>> = match vertices {
                    Some(v) => v.into_iter().map(Some).collect(),
                    None => vec![None],
                };
                edges
                    .iter()
                    .flat_map(|&e| vertices.iter().map(move |&v| shape(e, v, None)))
                    .collect()
            }
            (None, Some(vertices)) => vertices
                .into_iter()
                .map(|v| shape(v, Some(v), Some(k.unwrap_or(8))))
                .collect(),
            (None, None) => return Err(missing("`n_edges` or `n_vertices`")),
        },
        RoadmapKind::Grid => vertices
            .ok_or_else(|| missing("`n_vertices`"))?
            .into_iter()
            .map(|v| shape(v, Some(v), None))
            .collect(),
        RoadmapKind::Sparse => attempts
            .ok_or_else(|| missing("`attempts`"))?
            .into_iter()
            .map(|a| shape(a, None, None))
            .collect(),
    })
}

fn priors(src: &Source, p: RawPrior) -> Result<Vec<PriorMode>, BenchError> {
    let model = match p.params {
        None => NoiseModel::default(),
        Some(params) => {
            let span = params.span();
            match params.get_ref().as_slice() {
                &[a, b, c, d] => {
                    NoiseModel::new(a, b, c, d).map_err(|e| src.error(Some(span), e.to_string()))?
                }
                _ => return Err(src.error(Some(span), "`params` must be [a, b, c, d]")),
            }
        }
    };
    let modes = match p.mode {
        None => return Ok(vec![PriorMode::Noisy(model)]),
        Some(m) => m,
    };
    let span = modes.span();
    modes
        .into_inner()
        .into_vec()
        .iter()
        .map(|s| {
            let mode: PriorMode = s.parse().map_err(|_| {
                src.error(
                    Some(span.clone()),
                    format!("unknown prior mode `{s}`, expected perfect, noisy or none"),
                )
            })?;
            Ok(match mode {
                PriorMode::Noisy(_) => PriorMode::Noisy(model),
                other => other,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<BenchConfig, BenchError> {
        BenchConfig::parse(text, "bench.toml", Path::new("/tmp/x"))
    }

    fn line_of(e: BenchError) -> usize {
        match e {
            BenchError::Config { line, .. } => line,
            other => panic!("expected a config error, got {other}"),
        }
    }

    #[test]
    fn product_of_sweep_dimensions() {
        let c = parse(
            "scene = [\"passage\", \"rooms\", \"zigzag\", \"clutter\"]\nseeds = 10\n[roadmap]\nn_edges = 200\n",
        )
        .unwrap();
        assert_eq!(c.instances.len(), 80);
        assert_eq!(c.algorithms.len(), 5);
        assert_eq!(c.output, Path::new("/tmp/x/bench-out"));
        let ids: std::collections::HashSet<_> = c.instances.iter().map(|s| s.id()).collect();
        assert_eq!(ids.len(), 80);

        let c = parse("scene = \"passage\"\nseeds = [1]\n[roadmap]\nn_vertices = [500, 1000, 2000]\nk = 6\n").unwrap();
        assert_eq!(c.instances.len(), 6);
        assert_eq!(c.instances[0].k_neighbors, Some(6));
    }

    #[test]
    fn empty_sweep() {
        let c = parse("scene = \"passage\"\nseeds = []\n[roadmap]\nn_edges = 200\n").unwrap();
        assert!(c.instances.is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("scene = \"passage\"\nseeds = 2\n[roadmap]\nn_edges = 200\ncolour = 3\n").unwrap_err();
        assert_eq!(line_of(e), 5);
        let e = parse("scene = \"passage\"\nseeds = 2\n\n[prior]\nmode = \"psychic\"\n[roadmap]\nn_edges = 9\n").unwrap_err();
        assert_eq!(line_of(e), 5);
        let e = parse("scene = \"nowhere\"\nseeds = 2\n").unwrap_err();
        assert_eq!(line_of(e), 1);
        let e = parse("scene = \"passage\"\nseeds = 2\n[algorithm]\nnames = [\"ipc\", \"astar\"]\n[roadmap]\nn_edges = 9\n").unwrap_err();
        assert_eq!(line_of(e), 4);
        let e = parse("scene = \"passage\"\nseeds = [2\n").unwrap_err();
        assert!(line_of(e) >= 2);
        let e = parse("scene = \"passage\"\nseeds = 1\n[prior]\nparams = [0.4, 0.3, 0.6, 0.7]\n[roadmap]\nn_edges = 9\n").unwrap_err();
        assert_eq!(line_of(e), 4);
    }

    #[test]
    fn params_reach_noisy_mode() {
        let c = parse(
            "scene = \"rooms\"\nseeds = 1\n[roadmap]\nn_edges = 200\n[prior]\nmode = [\"noisy\", \"perfect\"]\nparams = [0.1, 0.2, 0.8, 0.9]\n",
        )
        .unwrap();
        let PriorMode::Noisy(m) = c.instances[0].prior else { panic!() };
        assert_eq!((m.a, m.d), (0.1, 0.9));
        assert_eq!(c.instances[2].prior, PriorMode::Perfect);
    }
}
