use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use clap::{Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperwitt::census::enumerate as census;
use hyperwitt::function_field::*;
use hyperwitt::gf::Gf;
use hyperwitt::hyperfield::{
    find_isomorphism_with, fingerprint, validate_axioms, FiniteHyperfield, HyperfieldFile, IsoSearch,
    MorphismWitness, Subgroup,
};
use hyperwitt::quadratic::{group_extension_build, qh as build_qh, FieldDescriptor};
use hyperwitt::valuation::{
    canonical_unit_subgroup, classify_and_compare, collapse, mu_from_witnesses, mu_membership, mu_nonempty,
    transport_check, witness_descriptors, Mu, ValuationDescriptor,
};
use hyperwitt::{Error, Execution};

use crate::{Failure, Report};

type Outcome = Result<Report, Failure>;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TChoice {
    Units,
    Trivial,
}

#[derive(Subcommand)]
pub enum FfCommand {
    /// Does ⟨1, x⟩ represent z? Uses the local-global test in odd characteristic
    /// and K²-coordinates in characteristic 2.
    Represents { z: String, x: String },
    /// Square class of f, and its local classes at the places in its support.
    Class { f: String },
    /// Local Hilbert symbol (f, g) at a place: a monic irreducible or `inf`.
    Symbol { f: String, g: String, #[arg(long)] place: String },
    /// Non-rigidity witness for a nonsquare x.
    Witness { x: String },
    /// The 2^n square classes spanned by the first n finite places.
    Classes { n: usize },
    /// Rank-two element model over F_q((s))(t).
    Composed {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 24)]
        precision: usize,
    },
    /// [K : K²] for F_(2^s) or F_(2^s)(t).
    Dimension { descriptor: String },
}

/// Checks the axioms before a table leaves the program.
fn checked_file(h: &FiniteHyperfield) -> Result<HyperfieldFile, Failure> {
    let report = validate_axioms(h);
    if !report.is_valid() {
        return Err(Error::AxiomFailure(format!("{:?}", report.violations)).into());
    }
    Ok(h.to_file())
}

/// `ext(<descriptor>, <rank>)`, a JSON file path, or a field descriptor.
fn resolve(spec: &str) -> Result<Arc<FiniteHyperfield>, Failure> {
    let spec = spec.trim();
    if let Some(inner) = spec.strip_prefix("ext(").and_then(|s| s.strip_suffix(')')) {
        let (base, rank) = inner
            .rsplit_once(',')
            .ok_or_else(|| Failure::Usage(format!("expected ext(<descriptor>, <rank>), got {spec}")))?;
        let rank = rank.trim().parse().map_err(|_| Failure::Usage(format!("bad rank in {spec}")))?;
        let (h, _) = group_extension_build(&*build_qh(base.trim())?, rank)?;
        return Ok(Arc::new(h));
    }
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        return Ok(Arc::new(load(Path::new(spec))?));
    }
    Ok(build_qh(spec)?)
}

fn load(path: &Path) -> Result<FiniteHyperfield, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(FiniteHyperfield::from_json(&text)?)
}

fn map_pairs(m: &MorphismWitness) -> Vec<(String, String)> {
    m.source().elements().map(|x| (m.source().label(x), m.target().label(m.apply(x)))).collect()
}

pub fn qh(descriptor: &str, extend: Option<u32>) -> Outcome {
    let h = match extend {
        Some(r) => Arc::new(group_extension_build(&*build_qh(descriptor)?, r)?.0),
        None => build_qh(descriptor)?,
    };
    let file = checked_file(&h)?;
    let name = extend.map_or(descriptor.to_string(), |r| format!("ext({descriptor}, {r})"));
    let text = format!("{name}: {} elements, axioms hold\n{}", h.order(), h.render_text().trim_end());
    Ok(Report { json: json!({ "name": name, "hyperfield": file }), text })
}

pub fn axioms(path: &Path) -> Outcome {
    let h = load(path)?;
    let report = validate_axioms(&h);
    if !report.is_valid() {
        return Err(Error::AxiomFailure(serde_json::to_string(&report.violations).expect("serializable")).into());
    }
    Ok(Report {
        json: json!({ "file": path.display().to_string(), "order": h.order(), "valid": true }),
        text: format!("{}: {} elements, all axioms hold", path.display(), h.order()),
    })
}

pub fn witteq(first: &str, second: &str) -> Outcome {
    let (a, b) = (resolve(first)?, resolve(second)?);
    match find_isomorphism_with(&a, &b, Execution::default()) {
        IsoSearch::Found(m) => {
            let pairs = map_pairs(&m);
            let mut text = format!("{first} and {second}: equivalent\n");
            for (x, y) in &pairs {
                let _ = writeln!(text, "  {x} ↦ {y}");
            }
            Ok(Report {
                json: json!({ "first": first, "second": second, "verdict": "equivalent", "witness": pairs }),
                text: text.trim_end().to_string(),
            })
        }
        IsoSearch::Absent { fingerprint_diff } => {
            let diff = if fingerprint_diff.is_empty() {
                fingerprint(&a).diff(&fingerprint(&b))
            } else {
                fingerprint_diff
            };
            let mut text = format!("{first} and {second}: not equivalent");
            for d in &diff {
                let _ = write!(text, "\n  {d}");
            }
            if diff.is_empty() {
                text.push_str("\n  fingerprints agree; exhaustive search found no isomorphism");
            }
            Ok(Report {
                json: json!({ "first": first, "second": second, "verdict": "not equivalent", "fingerprint_diff": diff }),
                text,
            })
        }
    }
}

fn mu_names(set: &BTreeSet<Mu>) -> Vec<String> {
    set.iter().map(ToString::to_string).collect()
}

pub fn classify(gamma: &str, residue: &str, restriction: &str, constants: &str) -> Outcome {
    let v = ValuationDescriptor::from_strs(gamma, residue, restriction, constants)?;
    let r = classify_and_compare(&v)?;
    let mu = mu_membership(&v)?;
    let c = &r.classification;
    let p = &r.computed;
    let text = format!(
        "{v}\n  {}\n  asserted: {}\n  computed: (K*:U_vK*²) = {}, (U_vK*²:T) = {}, B(T) = {}\n  agrees: {}\n  μ family: {}",
        c.label,
        c.asserted,
        p.idx_value,
        p.idx_unit,
        p.basic_equal_to.iter().map(ToString::to_string).collect::<Vec<_>>().join(" = "),
        r.agrees,
        mu.map_or("none".to_string(), |m| m.to_string()),
    );
    Ok(Report {
        json: json!({
            "descriptor": v,
            "case": c.case,
            "tag": c.label,
            "asserted": c.asserted,
            "computed": p,
            "agrees": r.agrees,
            "mu": mu,
        }),
        text,
    })
}

pub fn mu(constants: &str) -> Outcome {
    let k = FieldDescriptor::parse(constants)?;
    let found = mu_from_witnesses(&k)?;
    let expected = mu_nonempty(&k);
    let coarse = collapse(&found);
    let mut witnesses = Vec::new();
    for v in witness_descriptors(&k) {
        let m = mu_membership(&v)?;
        witnesses.push(json!({ "descriptor": v.to_string(), "mu": m }));
    }
    let text = format!(
        "{k}: nonempty families {{{}}} (expected {{{}}})\n  μ0 ≠ ∅: {}, μ1 ≠ ∅: {}, μ2 ∪ μ3 ≠ ∅: {}\n  {} witness valuations",
        mu_names(&found).join(", "),
        mu_names(&expected).join(", "),
        coarse[0],
        coarse[1],
        coarse[2],
        witnesses.len(),
    );
    Ok(Report {
        json: json!({
            "constants": k.to_string(),
            "nonempty": found,
            "expected": expected,
            "agrees": found == expected,
            "coarse": { "mu0": coarse[0], "mu1": coarse[1], "mu2_or_mu3": coarse[2] },
            "witnesses": witnesses,
        }),
        text,
    })
}

pub fn transport(first: &str, second: &str, t: TChoice) -> Outcome {
    let (a, b) = (resolve(first)?, resolve(second)?);
    let alpha = find_isomorphism_with(&a, &b, Execution::default())
        .witness()
        .ok_or_else(|| Error::NotIso(format!("{first} and {second} are not isomorphic")))?;
    let units = canonical_unit_subgroup(&a);
    let t1 = match t {
        TChoice::Units => units
            .ok_or_else(|| Failure::Usage(format!("{first} has no labelled unit classes; use --t trivial")))?,
        TChoice::Trivial => Subgroup::trivial(&a),
    };
    let u1 = match t {
        TChoice::Units => None,
        TChoice::Trivial => units,
    };
    let r = transport_check(&alpha, &t1, u1.as_ref())?;
    let text = format!(
        "{first} → {second}\n  (d1) {}\n  (d2) {}\n  (d3) {}\n  index {} ≥ {}: {}\n  all hold: {}",
        r.d1,
        r.d2,
        r.d3,
        r.index_target,
        r.index_source,
        r.index_inequality,
        r.all_hold()
    );
    Ok(Report { json: json!({ "first": first, "second": second, "report": r, "all_hold": r.all_hold() }), text })
}

fn parse_ratfn(field: &Gf, s: &str) -> Result<RatFn, Failure> {
    Ok(RatFn::parse(field, s)?)
}

fn parse_place(field: &Gf, s: &str) -> Result<Place, Failure> {
    if matches!(s.trim(), "inf" | "infinity" | "∞") {
        return Ok(Place::Infinite);
    }
    let f = parse_ratfn(field, s)?;
    if f.den().deg() != 0 {
        return Err(Failure::Usage(format!("place {s} must be a polynomial")));
    }
    Ok(Place::finite(f.num().clone())?)
}

pub fn ff(q: u64, cmd: &FfCommand, seed: u64) -> Outcome {
    let field = Gf::new(q)?;
    match cmd {
        FfCommand::Represents { z, x } => {
            let (zf, xf) = (parse_ratfn(&field, z)?, parse_ratfn(&field, x)?);
            if field.characteristic() == 2 {
                let r = char2_represents_with_certificate(&zf, &xf)?;
                let text = match (&r.a, &r.b) {
                    (Some(a), Some(b)) => format!("{z} = ({a})² + ({b})²·({x})"),
                    _ => format!("{z} is not represented by ⟨1, {x}⟩ over F{q}(t)"),
                };
                return Ok(Report { json: json!({ "q": q, "z": z, "x": x, "result": r }), text });
            }
            let r = represents_with_certificate(&zf, &xf)?;
            let text = match &r.obstruction {
                None => format!("{z} is represented by ⟨1, {x}⟩ over F{q}(t) ({} places checked)", r.places_checked.len()),
                Some(p) => format!("{z} is not represented by ⟨1, {x}⟩ over F{q}(t): obstruction at {p}"),
            };
            Ok(Report { json: json!({ "q": q, "z": z, "x": x, "result": r }), text })
        }
        FfCommand::Class { f } => {
            let ff = parse_ratfn(&field, f)?;
            let class = square_class(&ff)?;
            let mut local = Vec::new();
            for p in support(&[&ff])? {
                let (v, sq) = local_class(&ff, &p)?;
                local.push(json!({ "place": p, "value_parity": v, "unit_square": sq }));
            }
            let text = format!("square class of {f}: {class}\n  {} places in support", local.len());
            Ok(Report { json: json!({ "q": q, "f": f, "class": class, "local": local }), text })
        }
        FfCommand::Symbol { f, g, place } => {
            let (a, b) = (parse_ratfn(&field, f)?, parse_ratfn(&field, g)?);
            let p = parse_place(&field, place)?;
            let s = tame_symbol(&a, &b, &p)?;
            Ok(Report {
                json: json!({ "q": q, "f": f, "g": g, "place": p, "symbol": s }),
                text: format!("({f}, {g}) at {p} = {s}"),
            })
        }
        FfCommand::Witness { x } => {
            let xf = parse_ratfn(&field, x)?;
            let w = non_rigidity_witness(&xf, WitnessParams::default())?;
            let text = format!(
                "{x} is not rigid: y = {} = ({})² + x\n  class of y: {}\n  class of x: {}\n  verified: {}",
                w.y,
                w.a,
                w.class_y,
                w.class_x,
                w.verified()
            );
            Ok(Report { json: json!({ "q": q, "x": x, "witness": w, "verified": w.verified() }), text })
        }
        FfCommand::Classes { n } => {
            if *n > 16 {
                return Err(Error::BudgetExceeded(format!("{n} places give 2^{n} classes; at most 16 supported")).into());
            }
            let places: Vec<Place> = first_irreducibles(&field, *n).into_iter().map(Place::Finite).collect();
            let classes = distinct_classes_witness(&places)?;
            let text = format!("{} distinct square classes from {n} places over F{q}(t)", classes.len());
            Ok(Report { json: json!({ "q": q, "places": places, "count": classes.len(), "classes": classes }), text })
        }
        FfCommand::Composed { samples, precision } => {
            let r = composed_check(q, *samples, *precision, seed)?;
            let text = format!(
                "F{q}((s))(t), {} samples: {} classes, indices ({}, {}), coarsening iso {}, tower commutes {}, residue sums {}\n  passed: {}",
                r.samples,
                r.classes_hit,
                r.idx_value,
                r.idx_unit,
                r.coarsening_is_iso,
                r.tower_commutes,
                r.residue_sums_ok,
                r.passed()
            );
            Ok(Report { json: json!({ "seed": seed, "report": r, "passed": r.passed() }), text })
        }
        FfCommand::Dimension { descriptor } => {
            let k = FieldDescriptor::parse(descriptor)?;
            let r = char2_dimension(&k, &["t^3+t+1", "1/(t^2+t+1)", "t"])?;
            let text = format!("[K : K²] = {} for {}, basis {{{}}}", r.dimension, r.field, r.basis.join(", "));
            Ok(Report { json: serde_json::to_value(&r).expect("serializable"), text })
        }
    }
}

pub fn enumerate(max_nonzero: usize) -> Outcome {
    let rows = census(max_nonzero, Execution::default())?;
    let mut text = String::from("q  candidates  abstract  table  match");
    let mut out_rows = Vec::new();
    for r in &rows {
        for c in &r.classes {
            checked_file(&c.table.clone().into_hyperfield()?)?;
        }
        let table = r.witt_count.map_or("-".to_string(), |n| n.to_string());
        let _ = write!(text, "\n{:<2} {:>10}  {:>8}  {:>5}  {}", r.q, r.candidates, r.abstract_count, table, r.matches);
        for c in &r.classes {
            let _ = write!(text, "\n     {}", c.realized_by.as_deref().unwrap_or("(no known field)"));
        }
        out_rows.push(serde_json::to_value(r).expect("serializable"));
    }
    Ok(Report { json: Value::Array(out_rows), text })
}
