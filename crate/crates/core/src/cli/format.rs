use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

pub const SIG_DIGITS: usize = 12;

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Decimal text of x rounded to 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    let a = r.abs();
    if a.is_finite() && !(1e-5..1e15).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x))) {
                *n = x;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(o) => o.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded like the CSV output.
pub fn to_json<T: Serialize + ?Sized>(x: &T) -> Result<String> {
    let mut v = serde_json::to_value(x)?;
    round_value(&mut v);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

/// A CSV table of preformatted cells.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}
