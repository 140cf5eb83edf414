use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

use anosov_core::folia::{analyze_ctype, parse_bif, parse_ctype, validate_bif};
use anosov_core::gluing::{glue, parse_glue_spec, BlockSummary};
use anosov_core::surface::{analyze_side, check_realizable_filled, render_svg, BandLayout, SideAnalysis};
use anosov_core::symdyn::{basic_pieces, count_periodic_itineraries, free_separatrices, is_transitive, periodic_orbits, Manifold};
use anosov_core::{GeomTypeError, GeometricType};

use crate::report::Report;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_type(path: &Path) -> Result<GeometricType> {
    GeometricType::parse(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn validate(path: &Path) -> Result<Report> {
    let text = read(path)?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let mut r = Report::new("validate");
    let mut violations: Vec<String> = Vec::new();
    match ext {
        "gtype" => {
            r.field("kind", "gtype");
            match GeometricType::parse(&text) {
                Ok(t) => {
                    r.field("n", t.n());
                    r.field("symbols", t.symbol_count());
                }
                Err(e @ GeomTypeError::Syntax { .. }) => bail!("{}: {e}", path.display()),
                Err(e) => violations.push(e.to_string()),
            }
        }
        "ctype" => {
            r.field("kind", "ctype");
            let entries = parse_ctype(&text).with_context(|| format!("{}", path.display()))?;
            let a = analyze_ctype(&entries);
            r.field("length", entries.len());
            r.field("marked", join(&a.marked));
            r.field("morse_smale", a.is_morse_smale);
            r.field("elementary", a.is_elementary);
            r.field("coherent", a.is_coherent);
            r.field("alternating", a.is_alternating);
            violations = a.violations.iter().map(|v| v.to_string()).collect();
        }
        "bftype" => {
            r.field("kind", "bftype");
            let entries = parse_bif(&text).with_context(|| format!("{}", path.display()))?;
            let a = validate_bif(&entries);
            r.field("length", entries.len());
            r.field("marked_count", a.marked_count);
            violations = a.violations.iter().map(|v| v.to_string()).collect();
        }
        "summary" => {
            r.field("kind", "summary");
            match BlockSummary::parse(&text) {
                Ok(s) => {
                    r.field("pieces", s.piece_count());
                    r.field("components", s.components.len());
                }
                Err(anosov_core::gluing::GluingError::InvalidSummary(m)) => violations.push(m),
                Err(e) => bail!("{}: {e}", path.display()),
            }
        }
        _ => bail!("{}: unknown file kind (expected .gtype, .ctype, .bftype or .summary)", path.display()),
    }
    let valid = violations.is_empty();
    r.field("valid", valid);
    r.list("violations", &violations);
    r.line(format!("{}: {}", path.display(), if valid { "valid" } else { "invalid" }));
    for v in &violations {
        r.line(format!("  {v}"));
    }
    r.exit = u8::from(!valid);
    Ok(r)
}

pub fn analyze(path: &Path, max_period: usize) -> Result<Report> {
    let t = load_type(path)?;
    let mut r = Report::new("analyze");
    r.field("n", t.n());
    r.field("h", join(t.h()));
    r.field("v", join(t.v()));
    let transitive = is_transitive(&t);
    r.field("transitive", transitive);
    let (pieces, wandering) = basic_pieces(&t);
    r.list("pieces", pieces.iter().map(|p| join(&p.symbols)));
    r.field("wandering", join(&wandering));
    for p in 1..=max_period {
        r.field(format!("periodic_counts.{p}"), count_periodic_itineraries(&t, p));
    }
    let orbits = periodic_orbits(&t, max_period);
    r.list("orbits", &orbits);
    let stable = free_separatrices(&t, Manifold::Stable);
    let unstable = free_separatrices(&t, Manifold::Unstable);
    r.list("free_separatrices.stable", stable.iter().map(|c| c.label()));
    r.list("free_separatrices.unstable", unstable.iter().map(|c| c.label()));
    r.line(format!(
        "{} rectangle(s), {} piece(s), {}transitive",
        t.n(),
        pieces.len(),
        if transitive { "" } else { "not " }
    ));
    r.line(format!("{} periodic orbit(s) up to period {max_period}", orbits.len()));
    r.line(format!("{} stable and {} unstable free separatrices", stable.len(), unstable.len()));
    Ok(r)
}

pub fn side_kind(side: &str) -> Result<Manifold> {
    match side {
        "stable" | "s" => Ok(Manifold::Stable),
        "unstable" | "u" => Ok(Manifold::Unstable),
        _ => bail!("unknown side `{side}` (expected stable or unstable)"),
    }
}

fn side_analysis(path: &Path, kind: Manifold) -> Result<SideAnalysis> {
    let t = load_type(path)?;
    analyze_side(&t, kind, BandLayout::default()).with_context(|| format!("{}", path.display()))
}

pub fn surface(path: &Path, kind: Manifold, svg: Option<(&Path, bool)>) -> Result<Report> {
    let s = side_analysis(path, kind)?;
    let mut r = Report::new("surface");
    r.field("side", kind.name());
    r.field("components.count", s.census.components.len());
    for c in &s.census.components {
        let k = format!("components.{}", c.id);
        r.field(format!("{k}.chi"), c.chi);
        r.field(format!("{k}.boundary_circles"), c.boundary_circles);
        r.field(format!("{k}.capped_genus"), c.capped_genus);
        r.field(format!("{k}.orientable"), c.orientable);
        r.field(format!("{k}.complex_chi"), c.complex_chi);
        r.field(format!("{k}.complex_boundary_circles"), c.complex_boundary_circles);
        r.field(format!("{k}.strips"), join(c.strips.iter().map(|&f| s.complex.strips[f].label())));
        r.list(&format!("{k}.compact_leaves"), s.leaves_on(c.id).map(|l| s.cycles[l.cycle].label()));
        r.list(&format!("{k}.caps"), s.caps_on(c.id).map(|cap| s.cycles[cap.cycle].label()));
        let shape = match c.capped_chi() {
            2 => "sphere".to_string(),
            0 => "torus".to_string(),
            _ => format!("genus {}", c.capped_genus),
        };
        r.line(format!(
            "component {}: chi={} boundary_circles={} capped {shape}",
            c.id, c.chi, c.boundary_circles
        ));
    }
    if let Some((out, color)) = svg {
        fs::write(out, render_svg(&s, color)).with_context(|| format!("cannot write {}", out.display()))?;
        r.field("render", out.display());
    }
    Ok(r)
}

pub fn render(path: &Path, kind: Manifold, color: bool) -> Result<String> {
    Ok(render_svg(&side_analysis(path, kind)?, color))
}

pub fn realize(path: &Path) -> Result<Report> {
    let t = load_type(path)?;
    let mut r = Report::new("realize");
    let v = match check_realizable_filled(&t) {
        Ok(v) => v,
        Err(e) => {
            r.field("realizable", false);
            r.field("error", &e);
            r.line(format!("not realizable: {e}"));
            r.exit = 1;
            return Ok(r);
        }
    };
    r.field("realizable", v.realizable);
    r.list("violations", &v.violations);
    let tori = v.summary.map(|s| s.tori).unwrap_or_default();
    r.field("block_tori.count", tori.len());
    for (i, torus) in tori.iter().enumerate() {
        r.field(format!("block_tori.{i}.orbit_count"), torus.orbit_count());
        r.field(format!("block_tori.{i}.orbits"), join(torus.orbits.iter().map(|o| o.word_string())));
        r.field(format!("block_tori.{i}.signs"), torus.signs());
    }
    if v.realizable {
        r.line(format!("realizable: {} boundary torus/tori", tori.len()));
        for torus in &tori {
            r.line(format!("  torus with {} orbit(s), signs {}", torus.orbit_count(), torus.signs()));
        }
    } else {
        r.line("not realizable");
        for viol in &v.violations {
            r.line(format!("  {viol}"));
        }
    }
    r.exit = u8::from(!v.realizable);
    Ok(r)
}

pub fn glue_cmd(spec_path: &Path) -> Result<Report> {
    let text = read(spec_path)?;
    let file = parse_glue_spec(&text).with_context(|| format!("{}", spec_path.display()))?;
    let base = spec_path.parent().unwrap_or(Path::new("."));
    let spec = file
        .resolve(|p| {
            let path = base.join(p);
            BlockSummary::parse(&read(&path)?).with_context(|| format!("{}", path.display()))
        })?
        .with_context(|| format!("{}", spec_path.display()))?;
    let v = glue(&spec).with_context(|| format!("{}", spec_path.display()))?;
    let mut r = Report::new("glue");
    r.field("gluable", v.gluable);
    if let Some(o) = &v.obstruction {
        r.field("obstruction", o);
    }
    match (&v.transitive, &v.graph) {
        (Some(t), Some(g)) => {
            r.field("transitive", t);
            r.field("graph.vertices", join(&g.vertices));
            r.field("graph.edges", join(g.named_edges().iter().map(|(a, b)| format!("{a}->{b}"))));
        }
        _ => r.field("transitive", "-"),
    }
    r.line(v.to_string());
    if let Some(o) = &v.obstruction {
        r.line(format!("  {o}"));
    }
    r.exit = u8::from(!v.gluable);
    Ok(r)
}
