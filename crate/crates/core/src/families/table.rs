use super::search::KrRecord;

/// Two-row aligned table in the layout `r | 1 2 …` over `K_r(ℓ,m) | …`.
pub fn kr_text_table(records: &[KrRecord]) -> String {
    let Some(first) = records.first() else {
        return String::new();
    };
    let head = "r".to_string();
    let label = format!("K_r({},{})", first.ell, first.m);
    let rs: Vec<String> = records.iter().map(|rec| rec.r.to_string()).collect();
    let vs: Vec<String> = records.iter().map(|rec| rec.value.to_string()).collect();
    let lw = head.len().max(label.len());
    let w = rs.iter().chain(&vs).map(String::len).max().unwrap_or(1).max(2);
    let mut top = format!("{head:<lw$} |");
    let mut bot = format!("{label:<lw$} |");
    for (r, v) in rs.iter().zip(&vs) {
        top.push_str(&format!(" {r:>w$}"));
        bot.push_str(&format!(" {v:>w$}"));
    }
    format!("{top}\n{bot}\n")
}

/// One JSON object per line, newline-terminated.
pub fn kr_json_lines(records: &[KrRecord]) -> serde_json::Result<String> {
    let mut out = String::new();
    for rec in records {
        out.push_str(&serde_json::to_string(rec)?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{k_r_oracle, SearchOptions};

    #[test]
    fn table_layout() {
        let recs: Vec<KrRecord> =
            (1..=10).map(|r| k_r_oracle(2, 5, r, &SearchOptions::default()).unwrap()).collect();
        let t = kr_text_table(&recs);
        assert_eq!(
            t,
            "r        |  1  2  3  4  5  6  7  8  9 10\nK_r(2,5) |  0  1  3  6  8 12 15 19 24 30\n"
        );
        let lines = kr_json_lines(&recs[..2]).unwrap();
        assert_eq!(lines.lines().count(), 2);
        let v: serde_json::Value = serde_json::from_str(lines.lines().nth(1).unwrap()).unwrap();
        assert_eq!(v["value"], 1);
        assert_eq!(v["method"], "brute_force");
        assert_eq!(v["maximizer"]["members"][0], serde_json::json!([1, 2]));
    }
}
