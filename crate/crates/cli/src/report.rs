//! Plain-text and TSV rendering of command output.

use std::fmt::Write;

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Clone, Debug)]
enum Block {
    Field(String, String),
    Table(Table),
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    blocks: Vec<Block>,
}

impl Report {
    pub fn field(&mut self, key: &str, value: impl ToString) {
        self.blocks.push(Block::Field(key.to_string(), value.to_string()));
    }

    pub fn table(&mut self, t: Table) {
        self.blocks.push(Block::Table(t));
    }

    pub fn render(&self, tsv: bool) -> String {
        let mut out = String::new();
        for (i, b) in self.blocks.iter().enumerate() {
            match b {
                Block::Field(k, v) if tsv => writeln!(out, "{k}\t{v}").unwrap(),
                Block::Field(k, v) => writeln!(out, "{k}: {v}").unwrap(),
                Block::Table(t) => {
                    if i > 0 && !tsv {
                        out.push('\n');
                    }
                    render_table(&mut out, t, tsv);
                }
            }
        }
        out
    }
}

fn render_table(out: &mut String, t: &Table, tsv: bool) {
    if tsv {
        writeln!(out, "{}", t.header.join("\t")).unwrap();
        for r in &t.rows {
            writeln!(out, "{}", r.join("\t")).unwrap();
        }
        return;
    }
    let mut width: Vec<usize> = t.header.iter().map(|h| h.chars().count()).collect();
    for r in &t.rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(&t.header)).unwrap();
    let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
    writeln!(out, "{}", rule.join("  ")).unwrap();
    for r in &t.rows {
        writeln!(out, "{}", line(r)).unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned_and_tsv() {
        let mut t = Table::new(&["p", "dim"]);
        t.push(vec!["1".into(), "6".into()]);
        t.push(vec!["-1".into(), "14".into()]);
        let mut r = Report::default();
        r.field("total", 20);
        r.table(t);
        assert_eq!(r.render(false), "total: 20\n\np   dim\n--  ---\n1   6\n-1  14\n");
        assert_eq!(r.render(true), "total\t20\np\tdim\n1\t6\n-1\t14\n");
    }
}
