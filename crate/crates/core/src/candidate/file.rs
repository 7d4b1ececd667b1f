//! The candidate file format (JSON, `"format": 1`).

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::Deserialize;

use super::{CandidateError, CandidateTable};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CandidateFile {
    format: u64,
    objects: Vec<String>,
    scalars: BTreeMap<String, Vec<String>>,
    identity: BTreeMap<String, String>,
    compose: Vec<[String; 3]>,
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

impl CandidateTable {
    /// Deterministic serialization: objects (and the scalar and identity
    /// maps) in declared order, compose entries sorted lexicographically,
    /// one entry per line.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{{\n  \"format\": {FORMAT_VERSION},");
        let objects: Vec<String> = self.objects.iter().map(|o| quote(o)).collect();
        let _ = writeln!(out, "  \"objects\": [{}],", objects.join(", "));
        let scalars: Vec<String> = self
            .objects
            .iter()
            .zip(&self.scalars)
            .map(|(o, ids)| {
                let ids: Vec<String> = ids.iter().map(|s| quote(s)).collect();
                format!("    {}: [{}]", quote(o), ids.join(", "))
            })
            .collect();
        let _ = writeln!(out, "  \"scalars\": {{\n{}\n  }},", scalars.join(",\n"));
        let identity: Vec<String> = self
            .objects
            .iter()
            .enumerate()
            .map(|(o, name)| {
                format!(
                    "    {}: {}",
                    quote(name),
                    quote(&self.scalars[o][self.identity[o]])
                )
            })
            .collect();
        let _ = writeln!(out, "  \"identity\": {{\n{}\n  }},", identity.join(",\n"));
        let mut entries: Vec<[String; 3]> = self
            .entries()
            .map(|(f, g, h)| [self.arrow_name(f), self.arrow_name(g), self.arrow_name(h)])
            .collect();
        entries.sort();
        let lines: Vec<String> = entries
            .iter()
            .map(|[f, g, h]| format!("    [{}, {}, {}]", quote(f), quote(g), quote(h)))
            .collect();
        let _ = writeln!(out, "  \"compose\": [\n{}\n  ]\n}}", lines.join(",\n"));
        out
    }

    /// Parses a candidate file. Unknown names, non-composable pairs and
    /// duplicate entries are input errors; missing or mistyped composites
    /// are left for [`super::validate_structure`] to report.
    pub fn from_json(text: &str) -> Result<Self, CandidateError> {
        let file: CandidateFile =
            serde_json::from_str(text).map_err(|e| CandidateError::Parse(e.to_string()))?;
        if file.format != FORMAT_VERSION {
            return Err(CandidateError::Format(file.format));
        }
        let mut scalars = vec![];
        let mut identity = vec![];
        for o in &file.objects {
            let ids = file.scalars.get(o).ok_or_else(|| {
                CandidateError::BadScalars(o.clone(), "missing scalar list".into())
            })?;
            let id = file
                .identity
                .get(o)
                .ok_or_else(|| CandidateError::BadScalars(o.clone(), "missing identity".into()))?;
            let pos = ids
                .iter()
                .position(|s| s == id)
                .ok_or_else(|| CandidateError::UnknownScalar(o.clone(), id.clone()))?;
            scalars.push(ids.clone());
            identity.push(pos);
        }
        for key in file.scalars.keys().chain(file.identity.keys()) {
            if !file.objects.contains(key) {
                return Err(CandidateError::UnknownObject(key.clone()));
            }
        }
        let mut table = CandidateTable::new(file.objects, scalars, identity)?;
        let mut seen = HashSet::new();
        for [f, g, h] in &file.compose {
            let (fi, gi, hi) = (
                table.parse_arrow(f)?,
                table.parse_arrow(g)?,
                table.parse_arrow(h)?,
            );
            if !seen.insert((fi, gi)) {
                return Err(CandidateError::DuplicateEntry(f.clone(), g.clone()));
            }
            table.set_compose(fi, gi, hi)?;
        }
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ProjectiveLine;
    use crate::scalar::PrimeField;

    fn model(p: u64) -> CandidateTable {
        CandidateTable::from_model(&ProjectiveLine::new(PrimeField::new(p).unwrap())).unwrap()
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let t = model(3);
        let json = t.to_json();
        let back = CandidateTable::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        assert_eq!(
            back.entries().collect::<Vec<_>>(),
            t.entries().collect::<Vec<_>>()
        );
        assert!(json.starts_with(
            "{\n  \"format\": 1,\n  \"objects\": [\"0:1\", \"1:1\", \"2:1\", \"1:0\"],"
        ));
    }

    #[test]
    fn input_errors() {
        let json = model(2).to_json();
        assert!(matches!(
            CandidateTable::from_json(&json.replace("\"format\": 1", "\"format\": 2")),
            Err(CandidateError::Format(2))
        ));
        assert!(matches!(
            CandidateTable::from_json("{"),
            Err(CandidateError::Parse(_))
        ));
        assert!(matches!(
            CandidateTable::from_json(&json.replace(
                "\"compose\": [\n",
                "\"compose\": [\n    [\"0:1#1\", \"0:1#1\", \"0:1#1\"],\n"
            )),
            Err(CandidateError::DuplicateEntry(..))
        ));
        assert!(matches!(
            CandidateTable::from_json(&json.replace(
                "\"compose\": [\n",
                "\"compose\": [\n    [\"0:1#1\", \"1:0#1\", \"0:1#1\"],\n"
            )),
            Err(CandidateError::NotComposable(..))
        ));
        assert!(CandidateTable::from_json(
            &json.replace("0:1#1\", \"0:1#1\"", "0:1#1\", \"0:1#7\"")
        )
        .is_err());
    }

    #[test]
    fn missing_entries_are_not_parse_errors() {
        let json = model(2).to_json();
        let first = json
            .lines()
            .position(|l| l.trim_start().starts_with("[\""))
            .unwrap();
        let mut lines: Vec<&str> = json.lines().collect();
        lines.remove(first);
        let t = CandidateTable::from_json(&lines.join("\n")).unwrap();
        assert_eq!(t.entries().count(), t.composable_pairs() - 1);
    }
}
