//! Three operations for the static demo page. Each takes plain strings and
//! returns a JSON document, either the result or `{"error": ...}`, so the
//! page needs no exception handling and the functions test natively.

use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

use frx_core::automaton::{check_well_behaved, explore};
use frx_core::derivative::deriv_chain;
use frx_core::oracle::Word;
use frx_core::similarity::normalize_traced;
use frx_core::syntax::{parse, Behavior};

/// States beyond this are not drawn.
pub const MAX_DRAWN_STATES: usize = 60;

fn expr(text: &str) -> Result<Behavior, String> {
    parse(text).map_err(|e| e.to_string())
}

fn respond<T: Serialize>(result: Result<T, String>) -> String {
    match result {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

#[derive(Serialize)]
struct Normalized {
    normal_form: String,
    steps: Vec<Step>,
}

#[derive(Serialize)]
struct Step {
    rule: String,
    before: String,
    after: String,
}

/// Canonical form of `text` with the simplification steps taken.
#[wasm_bindgen]
pub fn normalize_expr(text: &str) -> String {
    respond(expr(text).map(|r| {
        let (c, steps) = normalize_traced(&r);
        Normalized {
            normal_form: c.render(),
            steps: steps
                .into_iter()
                .map(|s| Step { rule: s.rule.to_string(), before: s.before.render(), after: s.after.render() })
                .collect(),
        }
    }))
}

#[derive(Serialize)]
struct Matched {
    matched: bool,
    /// `(consumed symbol, derivative)`, starting with the expression itself.
    chain: Vec<(String, String)>,
}

/// Derivative chain of `text` along the whitespace-separated `word`.
#[wasm_bindgen]
pub fn match_steps(text: &str, word: &str) -> String {
    respond(expr(text).and_then(|r| {
        let w = Word::parse(word).map_err(|e| e.to_string())?;
        let chain = deriv_chain(&r, &w);
        let matched = frx_core::nullable(chain.last().expect("nonempty").as_behavior());
        let labels = std::iter::once(String::new()).chain(w.symbols().iter().map(|x| x.name().to_string()));
        Ok(Matched { matched, chain: labels.zip(chain.iter().map(|c| c.render())).collect() })
    }))
}

/// Derivative automaton of `text` as JSON, or an error naming the state
/// explosion and the first uncertified star.
#[wasm_bindgen]
pub fn dfa_json(text: &str) -> String {
    respond(expr(text).and_then(|r| match explore(&r, MAX_DRAWN_STATES) {
        Ok(dfa) => Ok(dfa.to_json_value()),
        Err(e) => {
            let report = check_well_behaved(&r);
            let mut msg = e.to_string();
            if !report.is_certified() {
                msg.push_str("; the expression is not certified well-behaved");
            }
            Err(msg)
        }
    }))
}
