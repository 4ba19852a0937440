//! Bundled worked examples with stored golden artifacts.
//!
//! Each entry computes its artifacts (centralizer bases, witnesses,
//! verdicts, certificates) with fixed seeds and diffs the resulting JSON
//! exactly against the file stored under `corpus/`. The hidden `--bless`
//! flag rewrites the stored files from the current computation.

use serde_json::{json, Value};

use ore_algebra::catalog;
use ore_algebra::ore::OrePoly;
use ore_algebra::scalar::BaseField;
use ore_algebra::simplicity::{self, CertProvider, WitnessOutcome};
use ore_algebra::structure::{self, TruncationBound};

use crate::commands::{Usage, EXIT_NEGATIVE, EXIT_OK};

struct Entry {
    name: &'static str,
    golden: &'static str,
    build: fn() -> Result<Value, Usage>,
}

const ENTRIES: &[Entry] = &[
    Entry { name: "q_weyl", golden: include_str!("../corpus/q_weyl.json"), build: q_weyl },
    Entry {
        name: "quantum_plane",
        golden: include_str!("../corpus/quantum_plane.json"),
        build: quantum_plane,
    },
    Entry {
        name: "sequence_ring",
        golden: include_str!("../corpus/sequence_ring.json"),
        build: sequence_ring,
    },
    Entry {
        name: "char_p_weyl",
        golden: include_str!("../corpus/char_p_weyl.json"),
        build: char_p_weyl,
    },
    Entry {
        name: "nilpotent_quotient",
        golden: include_str!("../corpus/nilpotent_quotient.json"),
        build: nilpotent_quotient,
    },
    Entry { name: "euler", golden: include_str!("../corpus/euler.json"), build: euler },
];

fn q_weyl() -> Result<Value, Usage> {
    let spec = catalog::q_weyl(BaseField::Q, 2)?;
    let bound = TruncationBound::new(4, 4);
    Ok(json!({
        "description": "q-deformed Weyl algebra over Q, q = 2: the coefficient ring is its own centralizer",
        "centralizer": structure::centralizer_of_r(&spec, &bound)?.to_json(),
        "max_comm": structure::is_maximal_commutative(&spec, &bound)?.to_json(),
    }))
}

fn quantum_plane() -> Result<Value, Usage> {
    let at_root = catalog::quantum_plane(BaseField::fp(7)?, 2)?;
    let generic = catalog::quantum_plane(BaseField::Q, 2)?;
    Ok(json!({
        "description": "quantum plane: maximal commutative for generic q, central x^3 and y^3 when q has order 3 in F_7",
        "centralizer_at_root_of_unity": structure::centralizer_of_r(&at_root, &TruncationBound::new(3, 3))?.to_json(),
        "max_comm_generic": structure::is_maximal_commutative(&generic, &TruncationBound::new(4, 4))?.to_json(),
    }))
}

fn sequence_ring() -> Result<Value, Usage> {
    let spec = catalog::sequence_shift()?;
    Ok(json!({
        "description": "eventually constant sequences with the shift: the indicator of {0} times x commutes with the whole coefficient ring",
        "centralizer": structure::centralizer_of_r(&spec, &TruncationBound::new(2, 3))?.to_json(),
    }))
}

fn char_p_weyl() -> Result<Value, Usage> {
    let spec = catalog::weyl(BaseField::fp(3)?)?;
    Ok(json!({
        "description": "Weyl construction over F_3: x^3 and y^3 are central, so the coefficient ring is not maximal commutative",
        "max_comm": structure::is_maximal_commutative(&spec, &TruncationBound::new(4, 4))?.to_json(),
        "center": structure::center(&spec, &TruncationBound::new(4, 4))?.to_json(),
        "delta_simple": simplicity::is_delta_simple(&spec, 4).to_json(),
    }))
}

fn nilpotent_quotient() -> Result<Value, Usage> {
    let spec = catalog::nilpotent_quotient_differential()?;
    let provider =
        CertProvider::for_spec(&spec).expect("the quotient ring has a registered provider");
    let x2 = OrePoly::x(&spec).pow(2);
    let stall = match simplicity::simplicity_witness(&spec, &x2, provider)? {
        WitnessOutcome::Stall { central } => central.to_string(),
        WitnessOutcome::Certificate(_) => {
            return Err(Usage("x^2 unexpectedly certified".into()))
        }
    };
    let (_, remainder) = OrePoly::one(&spec).right_divide(&x2)?;
    Ok(json!({
        "description": "F_2[y]/<y^2> with the induced derivative: derivation-simple coefficients, yet x^2 is central and generates a proper ideal",
        "delta_simple": simplicity::is_delta_simple(&spec, 4).to_json(),
        "center": structure::center(&spec, &TruncationBound::new(4, 1))?.to_json(),
        "witness_stall_on_x2": stall,
        "remainder_of_1_by_x2": remainder.to_string(),
        "theorem_report": simplicity::main_theorem_report(&spec, &TruncationBound::new(4, 1))?.to_json(),
    }))
}

fn euler() -> Result<Value, Usage> {
    let spec = catalog::euler()?;
    let bound = TruncationBound::new(4, 4);
    Ok(json!({
        "description": "Euler derivation on Q[y]: maximal commutative coefficients, but <y> is an invariant ideal, so the extension is not simple",
        "delta_simple": simplicity::is_delta_simple(&spec, 4).to_json(),
        "max_comm": structure::is_maximal_commutative(&spec, &bound)?.to_json(),
        "theorem_report": simplicity::main_theorem_report(&spec, &bound)?.to_json(),
    }))
}

pub(crate) fn run_examples(selection: &str, json_mode: bool, bless: bool) -> Result<i32, Usage> {
    let selected: Vec<&Entry> = if selection == "all" {
        ENTRIES.iter().collect()
    } else {
        let entry = ENTRIES
            .iter()
            .find(|e| e.name == selection)
            .ok_or_else(|| Usage(format!("unknown example {selection:?}")))?;
        vec![entry]
    };

    let mut results = Vec::new();
    let mut all_pass = true;
    for entry in selected {
        let computed = (entry.build)()?;
        if bless {
            let path = format!(
                "{}/corpus/{}.json",
                env!("CARGO_MANIFEST_DIR"),
                entry.name
            );
            let pretty = serde_json::to_string_pretty(&computed).expect("serializable") + "\n";
            std::fs::write(&path, pretty).map_err(|e| Usage(format!("cannot write {path}: {e}")))?;
            results.push((entry.name, true, Some("blessed".to_string())));
            continue;
        }
        let expected: Value = serde_json::from_str(entry.golden)
            .map_err(|e| Usage(format!("stored golden for {} is invalid: {e}", entry.name)))?;
        let pass = computed == expected;
        all_pass &= pass;
        let detail = if pass {
            None
        } else {
            Some(format!(
                "computed:\n{}\nexpected:\n{}",
                serde_json::to_string_pretty(&computed).expect("serializable"),
                serde_json::to_string_pretty(&expected).expect("serializable"),
            ))
        };
        results.push((entry.name, pass, detail));
    }

    if json_mode {
        let value = json!({
            "results": results
                .iter()
                .map(|(name, pass, _)| json!({"name": name, "pass": pass}))
                .collect::<Vec<_>>(),
            "all_pass": all_pass,
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        for (name, pass, detail) in &results {
            println!("example {name}: {}", if *pass { "PASS" } else { "FAIL" });
            if let Some(d) = detail {
                println!("{d}");
            }
        }
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_NEGATIVE })
}
