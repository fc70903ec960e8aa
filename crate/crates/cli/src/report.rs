//! Experiment reports: one record per checked relation, written as JSON, CSV and markdown.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "==",
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    pub fn holds<T: PartialOrd>(self, a: &T, b: &T) -> bool {
        match self {
            Relation::Eq => a == b,
            Relation::Le => a <= b,
            Relation::Lt => a < b,
            Relation::Ge => a >= b,
            Relation::Gt => a > b,
        }
    }
}

/// `lhs relation rhs` on one instance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub instance: String,
    pub lhs: String,
    pub lhs_value: String,
    pub relation: Relation,
    pub rhs: String,
    pub rhs_value: String,
    pub anchor: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub schema: u32,
    pub experiment: String,
    pub parameters: BTreeMap<String, String>,
    pub quantities: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl ExperimentReport {
    pub fn new(experiment: &str) -> Self {
        ExperimentReport {
            schema: SCHEMA,
            experiment: experiment.to_string(),
            parameters: BTreeMap::new(),
            quantities: BTreeMap::new(),
            checks: Vec::new(),
            timings_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Display) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn quantity(&mut self, key: &str, value: impl Display) {
        self.quantities.insert(key.to_string(), value.to_string());
    }

    /// Records `lhs relation rhs` and returns whether it holds.
    #[allow(clippy::too_many_arguments)]
    pub fn compare<T: PartialOrd + Display>(
        &mut self,
        criterion: u8,
        instance: impl Display,
        lhs: &str,
        lhs_value: &T,
        relation: Relation,
        rhs: &str,
        rhs_value: &T,
        anchor: &str,
    ) -> bool {
        let pass = relation.holds(lhs_value, rhs_value);
        self.checks.push(Check {
            criterion,
            instance: instance.to_string(),
            lhs: lhs.to_string(),
            lhs_value: lhs_value.to_string(),
            relation,
            rhs: rhs.to_string(),
            rhs_value: rhs_value.to_string(),
            anchor: anchor.to_string(),
            pass,
        });
        pass
    }

    /// A yes/no property recorded as `property == true`.
    pub fn holds(&mut self, criterion: u8, instance: impl Display, property: &str, value: bool, anchor: &str) -> bool {
        self.compare(criterion, instance, property, &value, Relation::Eq, "expected", &true, anchor)
    }

    pub fn merge(&mut self, other: ExperimentReport) {
        self.checks.extend(other.checks);
        for (k, v) in other.quantities {
            self.quantities.insert(format!("{}.{k}", other.experiment), v);
        }
        if let Some(t) = other.timings_ms {
            let mine = self.timings_ms.get_or_insert_with(BTreeMap::new);
            for (k, v) in t {
                mine.insert(format!("{}.{k}", other.experiment), v);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// `(criterion, checks, failures)` in criterion order.
    pub fn by_criterion(&self) -> Vec<(u8, usize, usize)> {
        let mut m: BTreeMap<u8, (usize, usize)> = BTreeMap::new();
        for c in &self.checks {
            let e = m.entry(c.criterion).or_default();
            e.0 += 1;
            if !c.pass {
                e.1 += 1;
            }
        }
        m.into_iter().map(|(k, (a, b))| (k, a, b)).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(CSV_COLUMNS)?;
        for c in &self.checks {
            wr.write_record([
                self.experiment.as_str(),
                &c.criterion.to_string(),
                &c.instance,
                &c.lhs,
                &c.lhs_value,
                c.relation.symbol(),
                &c.rhs,
                &c.rhs_value,
                &c.anchor,
                if c.pass { "PASS" } else { "FAIL" },
            ])?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {}\n\n", self.experiment);
        if !self.parameters.is_empty() {
            s.push_str("| parameter | value |\n|---|---|\n");
            for (k, v) in &self.parameters {
                s.push_str(&format!("| {k} | {v} |\n"));
            }
            s.push('\n');
        }
        if !self.quantities.is_empty() {
            s.push_str("| quantity | value |\n|---|---|\n");
            for (k, v) in &self.quantities {
                s.push_str(&format!("| {k} | {v} |\n"));
            }
            s.push('\n');
        }
        s.push_str("| criterion | checks | failures | verdict |\n|---|---|---|---|\n");
        for (k, n, f) in self.by_criterion() {
            s.push_str(&format!("| {k} | {n} | {f} | {} |\n", if f == 0 { "PASS" } else { "FAIL" }));
        }
        let fails: Vec<&Check> = self.failures().collect();
        if !fails.is_empty() {
            s.push_str("\n## Failures\n\n");
            for c in fails {
                s.push_str(&format!(
                    "- [{}] {}: {} = {} {} {} = {} ({})\n",
                    c.criterion,
                    c.instance,
                    c.lhs,
                    c.lhs_value,
                    c.relation.symbol(),
                    c.rhs,
                    c.rhs_value,
                    c.anchor
                ));
            }
        }
        if let Some(t) = &self.timings_ms {
            s.push_str("\n| step | ms |\n|---|---|\n");
            for (k, v) in t {
                s.push_str(&format!("| {k} | {v} |\n"));
            }
        }
        s
    }

    /// Writes `<stem>.json`, `<stem>.csv` and `<stem>.md` into `dir`.
    pub fn write_all(&self, dir: &Path, stem: &str) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("{stem}.json")), self.to_json())?;
        let f = std::fs::File::create(dir.join(format!("{stem}.csv")))?;
        self.write_csv(f).map_err(std::io::Error::other)?;
        std::fs::write(dir.join(format!("{stem}.md")), self.to_markdown())?;
        Ok(())
    }
}

pub const CSV_COLUMNS: [&str; 10] = [
    "suite",
    "criterion",
    "instance",
    "lhs",
    "lhs_value",
    "relation",
    "rhs",
    "rhs_value",
    "anchor",
    "verdict",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_and_outputs() {
        let mut r = ExperimentReport::new("demo");
        r.param("n", 3);
        assert!(r.compare(1, "a", "rank", &3, Relation::Le, "size", &4, "rank below size"));
        assert!(!r.compare(1, "b", "rank", &5, Relation::Le, "size", &4, "rank below size"));
        assert!(r.holds(2, "c", "unambiguous", true, "no two runs"));
        assert!(!r.passed());
        assert_eq!(r.by_criterion(), vec![(1, 2, 1), (2, 1, 0)]);
        let mut csv = Vec::new();
        r.write_csv(&mut csv).unwrap();
        let csv = String::from_utf8(csv).unwrap();
        assert!(csv.starts_with("suite,criterion,instance,lhs,lhs_value,relation,rhs,rhs_value,anchor,verdict\n"));
        assert!(csv.contains("demo,1,b,rank,5,<=,size,4,rank below size,FAIL"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["checks"][0]["relation"], "<=");
        assert!(json.get("timings_ms").is_none());
        assert!(r.to_markdown().contains("## Failures"));
    }
}
