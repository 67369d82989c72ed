use std::fmt::Write as _;
use std::path::Path;

use hyperheat::classify::{self, ClassifyOptions};
use hyperheat::duality::{self, SimplicialComplex};
use hyperheat::fano;
use hyperheat::io::{self, Format, Input};
use hyperheat::semigroup::{self, Property};
use hyperheat::spectra::{self, SpectralDecomposition};
use hyperheat::surgery::{self, UnionMode, VertexSubset};
use hyperheat::{DirectedHypergraph, Tolerances};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::{int_rows, num, real_rows, write_json, write_text};
use crate::{Command, FanoAction, InputArgs, PropertyArg, UnionModeArg};

type Spectrum = SpectralDecomposition<f64>;

fn load(io: &InputArgs, default: Option<Format>) -> Result<Input, CliError> {
    let fmt = io.format.map(Format::from).or_else(|| {
        Format::from_extension(&io.input)
            .filter(|f| *f == Format::IncidenceCsv)
            .or(default)
            .or_else(|| Format::from_extension(&io.input))
    });
    Ok(io::parse_input(&io.input, fmt)?)
}

fn load_hypergraph(io: &InputArgs) -> Result<DirectedHypergraph, CliError> {
    match load(io, None)? {
        Input::Hypergraph(h) => Ok(h),
        Input::Complex(_) => Err(CliError::input("expected a hypergraph, got a simplicial complex")),
    }
}

fn load_complex(io: &InputArgs) -> Result<SimplicialComplex, CliError> {
    match load(io, Some(Format::ComplexJson))? {
        Input::Complex(k) => Ok(k),
        Input::Hypergraph(_) => Err(CliError::input("expected a simplicial complex (--format complex-json)")),
    }
}

fn spectrum_of(l: &hyperheat::IntMatrix) -> Result<Spectrum, CliError> {
    Ok(spectra::eigh_int::<f64>(l)?)
}

fn spectrum_json(s: &Spectrum) -> Value {
    json!({
        "eigenvalues": s.eigenvalues(),
        "clusters": s.clusters(),
        "lambda1": if s.dim() > 0 { json!(s.lambda1()) } else { Value::Null },
        "kernel_dim": s.kernel_dim(),
        "spectral_gap": s.spectral_gap(),
        "residual": s.residual(),
    })
}

fn check_positive(name: &str, x: f64) -> Result<(), CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(CliError::input(format!("--{name} must be positive, got {x}")))
    }
}

fn check_horizon(h: Option<f64>) -> Result<(), CliError> {
    h.map_or(Ok(()), |x| check_positive("horizon", x))
}

fn subset(h: &DirectedHypergraph, labels: &[String]) -> Result<VertexSubset, CliError> {
    Ok(VertexSubset::from_labels(h, labels)?)
}

pub fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Laplacian(io) => laplacian(&io),
        Command::Spectrum { io, vectors } => spectrum(&io, vectors.as_deref()),
        Command::Classify {
            io,
            witnesses,
            horizon,
            tol,
        } => classify_cmd(&io, witnesses, horizon, tol),
        Command::Flow {
            io,
            t0,
            t1,
            steps,
            u0,
            plot,
        } => flow(&io, t0, t1, steps, &u0, plot.as_deref()),
        Command::Threshold {
            io,
            property,
            horizon,
            tol,
        } => threshold(&io, property, horizon, tol),
        Command::Dual(io) => dual(&io),
        Command::Dirichlet { io, keep } => dirichlet(&io, &keep),
        Command::UnionLemma { io, mode, sources } => union_lemma(&io, mode, &sources),
        Command::Hodge { io, degree, time } => hodge(&io, degree, time),
        Command::GraphDual(io) => graph_dual(&io),
        Command::Fano {
            action: FanoAction::Enumerate { classify, out },
        } => fano_cmd(classify, out.as_deref()),
        Command::Bounds(io) => bounds(&io),
        Command::Dominate {
            io,
            against,
            horizon,
            tol,
        } => dominate(&io, &against, horizon, tol),
    }
}

fn laplacian(io: &InputArgs) -> Result<(), CliError> {
    let h = load_hypergraph(io)?;
    let p = h.degree_profile();
    let body = json!({
        "vertices": h.vertices(),
        "hyperedges": h.edge_count(),
        "incidence": int_rows(h.incidence().matrix()),
        "laplacian": int_rows(&h.laplacian()),
        "degrees": p.deg,
        "in_degrees": p.deg_in,
        "out_degrees": p.deg_out,
        "hyperedge_degrees": p.edge_deg,
        "equipotent": h.is_equipotent(),
    });
    write_json(io.out.as_deref(), "laplacian", body)
}

fn spectrum(io: &InputArgs, vectors: Option<&Path>) -> Result<(), CliError> {
    let h = load_hypergraph(io)?;
    let s = spectrum_of(&h.laplacian())?;
    if let Some(path) = vectors {
        let mut csv = String::from("vertex");
        for k in 0..s.dim() {
            write!(csv, ",phi{}", k + 1).unwrap();
        }
        csv.push('\n');
        for (i, label) in h.vertices().iter().enumerate() {
            csv.push_str(label);
            for k in 0..s.dim() {
                write!(csv, ",{}", num(s.vectors()[(i, k)])).unwrap();
            }
            csv.push('\n');
        }
        write_text(Some(path), &csv)?;
    }
    let mut body = spectrum_json(&s);
    body["vertices"] = json!(h.vertices());
    body["bounds"] = serde_json::to_value(spectra::gershgorin_bounds(&h)).expect("bounds serialise");
    body["lowest_eigenvector"] = if s.dim() > 0 { json!(s.vector(0)) } else { Value::Null };
    write_json(io.out.as_deref(), "spectrum", body)
}

fn classify_cmd(io: &InputArgs, witnesses: bool, horizon: Option<f64>, tol: f64) -> Result<(), CliError> {
    check_horizon(horizon)?;
    check_positive("tol", tol)?;
    let h = load_hypergraph(io)?;
    let mut tolerances = Tolerances::<f64>::standard();
    tolerances.entry = tol;
    let opts = ClassifyOptions {
        thresholds: true,
        horizon,
        tolerances,
    };
    let mut r = classify::classify(&h, &opts)?;
    if !witnesses {
        r.strip_witnesses();
    }
    let body = serde_json::to_value(&r).expect("report serialises");
    write_json(io.out.as_deref(), "classify", body)
}

fn parse_u0(h: &DirectedHypergraph, arg: &str) -> Result<Vec<f64>, CliError> {
    let n = h.vertex_count();
    if arg == "ones" {
        return Ok(vec![1.0; n]);
    }
    if let Some(label) = arg.strip_prefix("unit:") {
        let v = h
            .vertex_index(label)
            .ok_or_else(|| CliError::input(format!("--u0: unknown vertex {label:?}")))?;
        let mut u = vec![0.0; n];
        u[v] = 1.0;
        return Ok(u);
    }
    let u: Vec<f64> = arg
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::input(format!("--u0: {x:?} is not a finite number")))
        })
        .collect::<Result<_, _>>()?;
    if u.len() != n {
        return Err(CliError::input(format!("--u0 has {} values for {n} vertices", u.len())));
    }
    Ok(u)
}

fn flow(io: &InputArgs, t0: f64, t1: f64, steps: usize, u0: &str, plot: Option<&Path>) -> Result<(), CliError> {
    if !(t0.is_finite() && t1.is_finite() && t0 >= 0.0 && t1 >= t0) {
        return Err(CliError::input(format!("need 0 ≤ t0 ≤ t1, got t0 = {t0}, t1 = {t1}")));
    }
    if steps == 0 {
        return Err(CliError::input("--steps must be positive"));
    }
    if plot.is_some() && io.out.is_none() {
        return Err(CliError::input("--plot needs --out for the data file"));
    }
    let h = load_hypergraph(io)?;
    let u = parse_u0(&h, u0)?;
    let s = spectrum_of(&h.laplacian())?;
    let times: Vec<f64> = (0..=steps)
        .map(|k| t0 + (t1 - t0) * k as f64 / steps as f64)
        .collect();
    let tr = semigroup::heat_trajectory(&s, &u, &times)?;
    let mut csv = String::from("t");
    for l in h.vertices() {
        write!(csv, ",u({l})").unwrap();
    }
    csv.push('\n');
    for (t, row) in tr.times.iter().zip(&tr.values) {
        csv.push_str(&num(*t));
        for x in row {
            csv.push(',');
            csv.push_str(&num(*x));
        }
        csv.push('\n');
    }
    write_text(io.out.as_deref(), &csv)?;
    if let (Some(script), Some(data)) = (plot, io.out.as_deref()) {
        write_text(Some(script), &gnuplot_script(data, h.vertices()))?;
    }
    Ok(())
}

fn gnuplot_script(data: &Path, labels: &[String]) -> String {
    let mut s = String::new();
    writeln!(s, "set datafile separator ','").unwrap();
    writeln!(s, "set key outside").unwrap();
    writeln!(s, "set xlabel 't'").unwrap();
    writeln!(s, "set ylabel 'u(t, v)'").unwrap();
    let parts: Vec<String> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| format!("'{}' using 1:{} with lines title '{}'", data.display(), i + 2, l))
        .collect();
    writeln!(s, "plot {}", parts.join(", \\\n     ")).unwrap();
    s
}

fn threshold_json(r: &hyperheat::ThresholdReport) -> Value {
    serde_json::to_value(r).expect("report serialises")
}

fn threshold(io: &InputArgs, property: Option<PropertyArg>, horizon: Option<f64>, tol: f64) -> Result<(), CliError> {
    check_horizon(horizon)?;
    check_positive("tol", tol)?;
    let h = load_hypergraph(io)?;
    let s = spectrum_of(&h.laplacian())?;
    let props = match property {
        Some(PropertyArg::Positivity) => vec![Property::Positivity],
        Some(PropertyArg::InfContractivity) => vec![Property::InfContractivity],
        None => vec![Property::Positivity, Property::InfContractivity],
    };
    let mut reports = Vec::new();
    for p in props {
        reports.push(threshold_json(&semigroup::threshold_search(&s, p, horizon, tol)?));
    }
    write_json(io.out.as_deref(), "threshold", json!({ "reports": reports }))
}

fn dual(io: &InputArgs) -> Result<(), CliError> {
    let h = load_hypergraph(io)?;
    let d = h.dual();
    let s = spectrum_of(&h.dual_laplacian())?;
    let body = json!({
        "dual": io::hypergraph_to_value(&d),
        "dual_laplacian": int_rows(&h.dual_laplacian()),
        "spectrum": spectrum_json(&s),
    });
    write_json(io.out.as_deref(), "dual", body)
}

fn dirichlet(io: &InputArgs, keep: &[String]) -> Result<(), CliError> {
    let h = load_hypergraph(io)?;
    let sub = subset(&h, keep)?;
    let l = surgery::dirichlet_laplacian(&h, &sub)?;
    let d = surgery::d_subhypergraph(&h, &sub)?;
    let block = d.laplacian();
    let s = spectrum_of(&block)?;
    let opts = ClassifyOptions::<f64> {
        thresholds: false,
        ..Default::default()
    };
    let mut r = classify::classify_matrix(&block, &s, &opts)?;
    r.strip_witnesses();
    let body = json!({
        "kept": sub.members().iter().map(|&v| h.vertices()[v].clone()).collect::<Vec<_>>(),
        "dirichlet_vertices": sub.complement().iter().map(|&v| h.vertices()[v].clone()).collect::<Vec<_>>(),
        "laplacian": int_rows(&l),
        "d_subhypergraph": io::hypergraph_to_value(&d),
        "spectrum": spectrum_json(&s),
        "positive": r.positive.value,
        "inf_contractive": r.inf_contractive.value,
        "sub_markovian": r.sub_markovian.value,
        "markovian": r.markovian.value,
        "irreducible": r.irreducible_generator.value,
        "eventually_irreducible": r.eventually_irreducible.value,
    });
    write_json(io.out.as_deref(), "dirichlet", body)
}

fn union_lemma(io: &InputArgs, mode: UnionModeArg, sources: &[String]) -> Result<(), CliError> {
    let g = load_hypergraph(io)?;
    let idx = |labels: &[String]| -> Result<Vec<usize>, CliError> { Ok(subset(&g, labels)?.members().to_vec()) };
    let mode = match mode {
        UnionModeArg::CoOriented => UnionMode::CoOrientedFull,
        UnionModeArg::Bipartite => {
            if sources.is_empty() {
                return Err(CliError::input("bipartite mode needs --sources (one side of the bipartition)"));
            }
            UnionMode::BipartiteSignless { minus: idx(sources)? }
        }
        UnionModeArg::Equipotent => UnionMode::EquipotentHalf {
            sources: if sources.is_empty() { None } else { Some(idx(sources)?) },
        },
    };
    let (h, r) = surgery::union_spectrum_verifier(&g, &mode)?;
    let body = json!({
        "union": io::hypergraph_to_value(&h),
        "report": serde_json::to_value(&r).expect("report serialises"),
    });
    write_json(io.out.as_deref(), "union-lemma", body)
}

fn hodge(io: &InputArgs, degree: usize, time: f64) -> Result<(), CliError> {
    check_positive("time", time)?;
    let k = load_complex(io)?;
    let l = k.hodge_laplacian(degree)?;
    let s = spectrum_of(&l)?;
    let faces: Vec<String> = k
        .faces(degree)
        .iter()
        .map(|f| format!("{f:?}").replace(' ', ""))
        .collect();
    let flags = classify::asymptotic_and_eventual_flags(&s);
    let opts = ClassifyOptions::<f64> {
        thresholds: false,
        ..Default::default()
    };
    let mut report = classify::classify_matrix(&l, &s, &opts)?;
    report.strip_witnesses();
    let rescaled = if s.dim() > 0 {
        json!(semigroup::rescaled_heat_operator(&s, time)?.op_norm_inf())
    } else {
        Value::Null
    };
    let body = json!({
        "degree": degree,
        "dimension": k.dim(),
        "faces": faces,
        "laplacian": int_rows(&l),
        "spectrum": spectrum_json(&s),
        "lowest_projector": real_rows(&s.lowest_projector()),
        "lowest_projector_positive": flags.asymptotically_positive.value,
        "lowest_projector_norm_inf": flags.projector_norm_inf,
        "rescaled_norm_inf": { "t": time, "value": rescaled },
        "classification": serde_json::to_value(&report).expect("report serialises"),
    });
    write_json(io.out.as_deref(), "hodge", body)
}

fn graph_dual(io: &InputArgs) -> Result<(), CliError> {
    let g = load_hypergraph(io)?;
    let r = duality::graph_dual_report(&g)?;
    write_json(io.out.as_deref(), "graph-dual", serde_json::to_value(&r).expect("report serialises"))
}

fn fano_cmd(with_classes: bool, out: Option<&Path>) -> Result<(), CliError> {
    if with_classes {
        let table = fano::permutation_classes();
        let neg = fano::verify_fano_universal_negatives();
        let summaries: Vec<_> = table.classes.iter().map(fano::summarize_class).collect();
        if let Some(path) = out {
            let mut csv = String::from(
                "class,key,size,first_member,eigenvalues,lambda1,lambda1_multiplicity,eventually_irreducible,asymptotically_positive,asymptotically_inf_contractive\n",
            );
            for (i, (c, s)) in table.classes.iter().zip(&summaries).enumerate() {
                writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{},{},{}",
                    i,
                    c.key,
                    c.size,
                    c.first_member.index(),
                    s.eigenvalues.iter().map(|&x| num(x)).collect::<Vec<_>>().join(";"),
                    num(s.flags.lambda1),
                    s.flags.lambda1_multiplicity,
                    s.flags.eventually_irreducible.value,
                    s.flags.asymptotically_positive.value,
                    s.flags.asymptotically_inf_contractive.value
                )
                .unwrap();
            }
            write_text(Some(path), &csv)?;
        }
        let body = json!({
            "orientations": fano::ORIENTATIONS,
            "distinct_laplacians": table.distinct_laplacians,
            "classes": table.classes.len(),
            "counts": serde_json::to_value(&neg).expect("report serialises"),
        });
        write_json(None, "fano", body)
    } else {
        let mut distinct = std::collections::BTreeSet::new();
        let mut positive = 0usize;
        let mut inf_contractive = 0usize;
        let mut csv = String::from("orientation,key,positive,inf_contractive\n");
        for (o, l) in fano::enumerate_laplacians() {
            let key = fano::sign_key(&l);
            distinct.insert(key);
            let p = classify::positive_generator_flag(&l).value;
            let c = classify::inf_contractive_flag(&l).value;
            positive += p as usize;
            inf_contractive += c as usize;
            writeln!(csv, "{},{},{},{}", o.index(), key, p, c).unwrap();
        }
        if let Some(path) = out {
            write_text(Some(path), &csv)?;
        }
        let body = json!({
            "orientations": fano::ORIENTATIONS,
            "distinct_laplacians": distinct.len(),
            "positive": positive,
            "inf_contractive": inf_contractive,
        });
        write_json(None, "fano", body)
    }
}

fn bounds(io: &InputArgs) -> Result<(), CliError> {
    let h = load_hypergraph(io)?;
    let b = spectra::gershgorin_bounds(&h);
    let l = h.laplacian();
    let s = spectrum_of(&l)?;
    let contained = s.eigenvalues().iter().all(|&x| b.contains(x, 1e-9));
    let ovals = if h.vertex_count() == 3 {
        let set = spectra::dms_inclusion_3x3(&l.to_real::<f64>())?;
        serde_json::to_value(set).expect("intervals serialise")
    } else {
        Value::Null
    };
    let lambda2 = if h.is_equipotent() && h.vertex_count() >= 2 {
        serde_json::to_value(spectra::lambda2_bound_check::<f64>(&h)?).expect("check serialises")
    } else {
        Value::Null
    };
    let body = json!({
        "bounds": serde_json::to_value(&b).expect("bounds serialise"),
        "eigenvalues": s.eigenvalues(),
        "contained": contained,
        "ovals_3x3": ovals,
        "lambda2_check": lambda2,
    });
    write_json(io.out.as_deref(), "bounds", body)
}

fn dominate(io: &InputArgs, against: &Path, horizon: Option<f64>, tol: f64) -> Result<(), CliError> {
    check_horizon(horizon)?;
    check_positive("tol", tol)?;
    let a = load_hypergraph(io)?;
    let other = InputArgs {
        input: against.to_path_buf(),
        format: io.format,
        out: None,
    };
    let b = load_hypergraph(&other)?;
    if a.vertex_count() != b.vertex_count() {
        return Err(CliError::input(format!(
            "vertex counts differ: {} vs {}",
            a.vertex_count(),
            b.vertex_count()
        )));
    }
    let sa = spectrum_of(&a.laplacian())?;
    let sb = spectrum_of(&b.laplacian())?;
    let r = semigroup::eventual_domination_threshold(&sa, &sb, horizon, tol)?;
    let samples: Vec<Value> = [0.1, 1.0, 5.0]
        .iter()
        .map(|&t| {
            let d = semigroup::domination(&sa, &sb, t, tol).unwrap_or(false);
            json!({ "t": t, "dominates": d })
        })
        .collect();
    let body = json!({
        "report": threshold_json(&r),
        "samples": samples,
    });
    write_json(io.out.as_deref(), "dominate", body)
}
