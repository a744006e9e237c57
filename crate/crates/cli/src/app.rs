use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use omnitoric::face_ring::{format_rational, GradedPresentation};
use omnitoric::surgery::default_order;
use omnitoric::{
    build, connected_sum, dichar_connected_sum, is_equivalent, pairs_equivalent, prune, representative, total_chern,
    CharacteristicPair, ConnSumSpec, CpVariant, FaceLattice, FacetSet, FamilySpec, GradedClass, PruneSpec,
    SimplePolytope,
};

use crate::doc::{Document, Loaded};
use crate::dot::lattice_dot;
use crate::error::CliError;
use crate::spec::{parse_family, parse_summands, ConnSumChoice, PruneChoice};

#[derive(Debug, Parser)]
#[command(
    name = "omnitoric",
    version,
    about = "Build and inspect omnioriented toric manifolds through their polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

/// Input arguments are file paths, or `-` for standard input.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a polytope or characteristic pair.
    #[command(subcommand)]
    Make(Make),
    /// Product of two polytopes or two pairs.
    Product { left: String, right: String },
    /// Connected sum at chosen vertices; `self` as the right input reuses the left.
    Connsum {
        left: String,
        right: String,
        /// JSON file `{"left": {"order": [...]}, "right": {"vertex": [...]}}`.
        #[arg(long)]
        spec: Option<String>,
    },
    /// Cut off a face of a polytope.
    Prune {
        #[arg(default_value = "-")]
        input: String,
        /// Facet names cutting out the face, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "spec",
            required_unless_present = "spec"
        )]
        face: Vec<String>,
        /// Name for the new facet.
        #[arg(long, conflicts_with = "spec")]
        name: Option<String>,
        /// JSON file `{"face": [...], "name": ...}`.
        #[arg(long)]
        spec: Option<String>,
    },
    /// Check a polytope or pair against every validity condition.
    Validate {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Integer kernel of the dicharacteristic, one row per basis vector.
    Kernel {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Restrict a pair to the face cut out by the given facets.
    Restrict {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        face: Vec<String>,
    },
    /// Search for a combinatorial equivalence, or an equivalence of pairs.
    Equiv {
        left: String,
        right: String,
        /// Require theta * l(F) = l(phi F) exactly, without sign changes.
        #[arg(long)]
        directed: bool,
    },
    /// f-vector and h-vector.
    Hvector {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Face ring presentation and graded ranks.
    Facering {
        #[arg(default_value = "-")]
        input: String,
        /// Highest degree to report (default: the dimension).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Also reduce the total Chern class in each degree.
        #[arg(long)]
        chern: bool,
    },
    /// Total Chern class, reduced degree by degree.
    Chern {
        #[arg(default_value = "-")]
        input: String,
        /// Report only this degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Face lattice as JSON, or as Graphviz with `--dot`.
    Lattice {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Variant {
    L,
    Lprime,
}

#[derive(Debug, Subcommand)]
pub enum Make {
    /// Complex projective space over the simplex.
    Cpn {
        n: usize,
        #[arg(long, value_enum, default_value = "l")]
        variant: Variant,
    },
    /// Bounded flag manifold over the cube.
    Bn { n: usize },
    /// B_{i,j} over the product of a cube and a simplex.
    Bij { i: usize, j: usize },
    /// Bare simplex.
    Simplex { n: usize },
    /// Bare cube.
    Cube { n: usize },
    /// Product of family members, e.g. `bij:1:2 cpn:2:lprime`.
    Product {
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Connected sum of the family products listed in a JSON file.
    Representative { specfile: String },
}

/// What a command prints.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Json(Value),
    Text(String),
}

impl Output {
    pub fn render(&self) -> String {
        match self {
            Output::Json(v) => {
                let mut s = serde_json::to_string_pretty(v).expect("values serialize");
                s.push('\n');
                s
            }
            Output::Text(s) => s.clone(),
        }
    }
}

/// Reads inputs, reading standard input at most once.
pub struct Inputs<R> {
    stdin: Option<R>,
}

impl<R: Read> Inputs<R> {
    pub fn new(stdin: R) -> Self {
        Inputs { stdin: Some(stdin) }
    }

    pub fn text(&mut self, path: &str) -> Result<String, CliError> {
        if path == "-" {
            let mut r = self
                .stdin
                .take()
                .ok_or_else(|| CliError::Input("standard input can only be read once".into()))?;
            let mut s = String::new();
            r.read_to_string(&mut s).map_err(|e| CliError::io("<stdin>", e))?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| CliError::io(path, e))
        }
    }

    pub fn document(&mut self, path: &str) -> Result<Document, CliError> {
        Document::parse(&self.text(path)?)
    }

    pub fn load(&mut self, path: &str) -> Result<Loaded, CliError> {
        self.document(path)?.load()
    }
}

pub fn run<R: Read>(command: &Command, stdin: R) -> Result<Output, CliError> {
    let mut inputs = Inputs::new(stdin);
    let json = |d: Document| Ok(Output::Json(d.to_value()));
    match command {
        Command::Make(make) => json(run_make(make, &mut inputs)?),
        Command::Product { left, right } => {
            let (a, b) = (inputs.load(left)?, inputs.load(right)?);
            let out = match (a, b) {
                (Loaded::Polytope(a), Loaded::Polytope(b)) => {
                    Document::from_polytope(&SimplePolytope::product(&a, &b)?)
                }
                (Loaded::Pair(a), Loaded::Pair(b)) => Document::from_pair(&a.product(&b)?),
                _ => return Err(mixed("product")),
            };
            json(out)
        }
        Command::Connsum { left, right, spec } => {
            let a = inputs.load(left)?;
            let b = if right == "self" {
                a.clone()
            } else {
                inputs.load(right)?
            };
            let choice: ConnSumChoice = match spec {
                Some(path) => serde_json::from_str(&inputs.text(path)?)?,
                None => ConnSumChoice::default(),
            };
            let lo = order_for(a.polytope(), choice.left.names()?)?;
            let ro = order_for(b.polytope(), choice.right.names()?)?;
            let out = match (a, b) {
                (Loaded::Polytope(a), Loaded::Polytope(b)) => {
                    let spec = ConnSumSpec {
                        left: a,
                        left_order: lo,
                        right: b,
                        right_order: ro,
                    };
                    Document::from_polytope(&connected_sum(&spec)?)
                }
                (Loaded::Pair(a), Loaded::Pair(b)) => Document::from_pair(&dichar_connected_sum(&a, &lo, &b, &ro)?),
                _ => return Err(mixed("connsum")),
            };
            json(out)
        }
        Command::Prune {
            input,
            face,
            name,
            spec,
        } => {
            let (face, name) = match spec {
                Some(path) => {
                    let c: PruneChoice = serde_json::from_str(&inputs.text(path)?)?;
                    (c.face, c.name)
                }
                None => (face.clone(), name.clone()),
            };
            let p = match inputs.load(input)? {
                Loaded::Polytope(p) => p,
                Loaded::Pair(_) => return Err(CliError::Input("`prune` applies to polytopes".into())),
            };
            let face = facet_set(&p, &face)?;
            json(Document::from_polytope(&prune(&PruneSpec {
                polytope: p,
                face,
                new_facet: name,
            })?))
        }
        Command::Validate { input } => Ok(Output::Json(validate(&inputs.document(input)?))),
        Command::Kernel { input } => {
            let pair = inputs.load(input)?.into_pair("kernel")?;
            let k = pair.kernel_basis();
            Ok(Output::Json(json!({
                "facets": names(pair.polytope()),
                "rank": k.rank(),
                "rows": k.vectors(),
            })))
        }
        Command::Restrict { input, face } => {
            let pair = inputs.load(input)?.into_pair("restrict")?;
            let set = facet_set(pair.polytope(), face)?;
            json(Document::from_pair(&pair.restrict_to_face(set)?))
        }
        Command::Equiv { left, right, directed } => {
            let (a, b) = (inputs.load(left)?, inputs.load(right)?);
            Ok(Output::Json(equiv(&a, &b, *directed)?))
        }
        Command::Hvector { input } => {
            let cv = inputs.load(input)?.polytope().count_vectors();
            Ok(Output::Json(json!({ "f": cv.f, "h": cv.h })))
        }
        Command::Facering {
            input,
            max_degree,
            chern,
        } => {
            let pair = inputs.load(input)?.into_pair("facering")?;
            Ok(Output::Json(facering(&pair, max_degree.unwrap_or(pair.dim()), *chern)))
        }
        Command::Chern { input, degree } => {
            let pair = inputs.load(input)?.into_pair("chern")?;
            let degrees: Vec<usize> = match degree {
                Some(d) => vec![*d],
                None => (1..=pair.dim()).collect(),
            };
            let classes: Vec<Value> = degrees
                .iter()
                .map(|&d| class_json(pair.polytope(), &total_chern(&pair, d)))
                .collect();
            Ok(Output::Json(json!({ "degrees": classes })))
        }
        Command::Lattice { input, dot } => {
            let loaded = inputs.load(input)?;
            let p = loaded.polytope();
            if *dot {
                return Ok(Output::Text(lattice_dot(p)));
            }
            let lattice = FaceLattice::of(p);
            let faces: Vec<Value> = lattice
                .faces()
                .iter()
                .map(|f| json!({ "facets": p.facet_names(f.facets), "dim": f.dim }))
                .collect();
            Ok(Output::Json(
                json!({ "faces": faces, "covers": lattice.covers(), "counts": lattice.counts_by_dim() }),
            ))
        }
    }
}

fn run_make<R: Read>(make: &Make, inputs: &mut Inputs<R>) -> Result<Document, CliError> {
    let pair = |spec: FamilySpec| -> Result<Document, CliError> { Ok(Document::from_pair(&build(&spec)?)) };
    match *make {
        Make::Cpn { n, variant } => {
            let variant = match variant {
                Variant::L => CpVariant::L,
                Variant::Lprime => CpVariant::LPrime,
            };
            pair(FamilySpec::Cpn { n, variant })
        }
        Make::Bn { n } => pair(FamilySpec::Bn { n }),
        Make::Bij { i, j } => pair(FamilySpec::Bij { i, j }),
        Make::Simplex { n } => Ok(Document::from_polytope(&SimplePolytope::simplex(n)?)),
        Make::Cube { n } => Ok(Document::from_polytope(&SimplePolytope::cube(n)?)),
        Make::Product { ref specs } => {
            let factors: Vec<FamilySpec> = specs.iter().map(|s| parse_family(s)).collect::<Result<_, _>>()?;
            pair(FamilySpec::product(factors))
        }
        Make::Representative { ref specfile } => {
            let summands = parse_summands(&inputs.text(specfile)?)?;
            Ok(Document::from_pair(&representative(&summands)?))
        }
    }
}

fn mixed(verb: &str) -> CliError {
    CliError::Input(format!("`{verb}` needs two polytopes or two pairs"))
}

fn names(p: &SimplePolytope) -> Vec<&str> {
    p.facets().iter().map(|f| f.as_str()).collect()
}

fn facet_set(p: &SimplePolytope, names: &[String]) -> Result<FacetSet, CliError> {
    Ok(p.facet_set(names.iter().map(String::as_str))?)
}

fn order_for(p: &SimplePolytope, names: Option<&[String]>) -> Result<Vec<usize>, CliError> {
    match names {
        None => Ok(default_order(p)),
        Some(names) => names
            .iter()
            .map(|n| {
                p.facet_index(n)
                    .ok_or_else(|| omnitoric::Error::UnknownFacet(n.clone()).into())
            })
            .collect(),
    }
}

/// Validation never fails on well-formed JSON; defects are reported.
fn validate(doc: &Document) -> Value {
    let (poly_doc, pair_doc) = match doc {
        Document::Polytope(d) => (d, None),
        Document::Pair(d) => (&d.polytope, Some(d)),
    };
    let p = match poly_doc.to_polytope() {
        Ok(p) => p,
        Err(CliError::Domain(omnitoric::Error::InvalidPolytope(problems))) => {
            return json!({ "valid": false, "problems": problems });
        }
        Err(e) => return json!({ "valid": false, "problems": [e.to_string()] }),
    };
    let Some(pair_doc) = pair_doc else {
        return json!({ "valid": true, "problems": [] });
    };
    let report = pair_doc
        .dicharacteristic(&p)
        .and_then(|d| Ok(CharacteristicPair::check(&p, &d)?));
    match report {
        Ok(r) => json!({
            "valid": r.is_valid(),
            "problems": r.problems,
            "non_primitive": r.non_primitive.iter().map(|&i| p.facet(i).as_str()).collect::<Vec<_>>(),
            "singular_vertices": r
                .singular_vertices
                .iter()
                .map(|&(v, det)| json!({ "vertex": p.facet_names(v), "determinant": det }))
                .collect::<Vec<_>>(),
        }),
        Err(e) => json!({ "valid": false, "problems": [e.to_string()] }),
    }
}

fn equiv(a: &Loaded, b: &Loaded, directed: bool) -> Result<Value, CliError> {
    let bijection_json =
        |images: &[usize], pa: &SimplePolytope, pb: &SimplePolytope| -> serde_json::Map<String, Value> {
            images
                .iter()
                .enumerate()
                .map(|(i, &j)| (pa.facet(i).as_str().to_owned(), Value::from(pb.facet(j).as_str())))
                .collect()
        };
    match (a, b) {
        (Loaded::Polytope(pa), Loaded::Polytope(pb)) => Ok(match is_equivalent(pa, pb) {
            Some(phi) => json!({ "equivalent": true, "bijection": bijection_json(phi.images(), pa, pb) }),
            None => json!({ "equivalent": false }),
        }),
        (Loaded::Pair(x), Loaded::Pair(y)) => {
            let (pa, pb) = (x.polytope(), y.polytope());
            Ok(match pairs_equivalent(x, y, directed) {
                Some(w) => {
                    let signs: serde_json::Map<String, Value> = w
                        .signs
                        .iter()
                        .enumerate()
                        .map(|(i, &s)| (pa.facet(i).as_str().to_owned(), Value::from(s)))
                        .collect();
                    json!({
                        "equivalent": true,
                        "directed": directed,
                        "bijection": bijection_json(w.bijection.images(), pa, pb),
                        "theta": w.theta.matrix().to_rows(),
                        "signs": signs,
                    })
                }
                None => json!({ "equivalent": false, "directed": directed }),
            })
        }
        _ => Err(mixed("equiv")),
    }
}

fn class_json(p: &SimplePolytope, class: &GradedClass) -> Value {
    let terms: Vec<Value> = class
        .basis
        .iter()
        .zip(&class.coefficients)
        .map(|(m, c)| json!({ "monomial": m.display(p.facets()), "coefficient": format_rational(c) }))
        .collect();
    json!({
        "degree": class.degree,
        "cohomological_degree": 2 * class.degree,
        "zero": class.is_zero(),
        "terms": terms,
    })
}

fn facering(pair: &CharacteristicPair, max_degree: usize, chern: bool) -> Value {
    let p = pair.polytope();
    let pres = GradedPresentation::of(pair);
    let nonfaces: Vec<Vec<&str>> = pres.minimal_nonfaces().iter().map(|&s| p.facet_names(s)).collect();
    let forms: Vec<Value> = pres
        .linear_forms()
        .iter()
        .map(|row| {
            let terms: serde_json::Map<String, Value> = row
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(f, &c)| (p.facet(f).as_str().to_owned(), Value::from(c)))
                .collect();
            Value::Object(terms)
        })
        .collect();
    let degrees: Vec<Value> = (0..=max_degree)
        .map(|d| {
            let comp = pres.component(d);
            let basis: Vec<String> = comp.basis().iter().map(|m| m.display(p.facets())).collect();
            let mut entry = json!({
                "degree": d,
                "cohomological_degree": 2 * d,
                "rank": comp.rank(),
                "basis": basis,
            });
            if chern {
                let class = comp.reduce(&pres.total_chern_polynomial(d));
                entry["chern"] = class_json(p, &class);
            }
            entry
        })
        .collect();
    let total: usize = degrees.iter().map(|d| d["rank"].as_u64().unwrap_or(0) as usize).sum();
    json!({
        "variables": names(p),
        "minimal_nonfaces": nonfaces,
        "linear_forms": forms,
        "degrees": degrees,
        "total_rank": total,
        "h": p.count_vectors().h,
    })
}
