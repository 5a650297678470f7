//! Table rendering for the classification output.

use clap::ValueEnum;
use crepant_core::{BasketDocument, ClassificationRow, RowData};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

/// Joins the row data as `(r,v)` or `(r,v,b)` tuples with the given
/// separator; the empty row renders as `∅`.
fn data_string(data: &RowData, sep: &str) -> String {
    let tuples: Vec<String> = match data {
        RowData::Pairs(pairs) => pairs.iter().map(|(r, v)| format!("({r},{v})")).collect(),
        RowData::Basket(basket) => basket
            .entries()
            .iter()
            .map(|e| format!("({},{},{})", e.r(), e.v(), e.b()))
            .collect(),
    };
    if tuples.is_empty() {
        "∅".to_string()
    } else {
        tuples.join(sep)
    }
}

fn row_json(row: &ClassificationRow) -> Value {
    let mut object = json!({
        "type": row.label.to_string(),
        "r_P": row.index,
        "verdict": row.verdict.to_string(),
    });
    let map = object.as_object_mut().expect("built as an object");
    match &row.data {
        RowData::Pairs(pairs) => {
            map.insert("pairs".into(), json!(pairs));
        }
        RowData::Basket(basket) => {
            let doc = BasketDocument::from(basket);
            map.insert(
                "basket".into(),
                serde_json::to_value(doc).expect("basket documents serialize"),
            );
        }
    }
    object
}

/// Renders rows in the requested format. Output is newline-terminated.
pub fn render(rows: &[ClassificationRow], format: Format) -> String {
    match format {
        Format::Json => {
            let values: Vec<Value> = rows.iter().map(row_json).collect();
            let mut out = serde_json::to_string_pretty(&values).expect("rows serialize");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::from("type,basket,r_P\n");
            for row in rows {
                out.push_str(&format!(
                    "{},\"{}\",{}\n",
                    row.label,
                    data_string(&row.data, ";"),
                    row.index
                ));
            }
            out
        }
        Format::Markdown => {
            let mut out = String::from("| type | basket | r_P |\n| --- | --- | --- |\n");
            for row in rows {
                out.push_str(&format!(
                    "| {} | {} | {} |\n",
                    row.label,
                    data_string(&row.data, ","),
                    row.index
                ));
            }
            out
        }
    }
}
