//! Line-oriented text formats.
//!
//! Every format is a header line followed by keyword lines; `#` starts a
//! comment and blank lines are ignored.
//!
//! * Posets: `poset <n>`, then `cover <i> <j>` (`i` covered by `j`) and
//!   optional `label <i> <name>`.
//! * Algebras: `cbs <n>`, `zero <i>`, then every `join <i> <j> <k>` and
//!   `diff <i> <j> <k>` entry, plus optional labels. The Brouwerian
//!   presentation of the same algebra uses `bs <n>`, `top <i>`,
//!   `meet <i> <j> <k>` and `imp <i> <j> <k>` (`i -> j = k`, which is
//!   `j - i = k`). Either header is accepted on input.
//! * P-morphisms: `pmorph <dom-file> <cod-file>`, then `map <i> <j>`;
//!   points without a `map` line are outside the domain.
//! * Algebra morphisms: `hom <dom-file> <cod-file>`, then `map <i> <j>` for
//!   every element.
//!
//! Paths inside `pmorph` and `hom` headers are relative to the file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use cobrouwer_core::cbs::{validate_cbs, CbsReport};
use cobrouwer_core::{CbsMorphism, FinCbs, PMorphism, Poset, Signature};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Orientation {
    #[default]
    Cbs,
    Brouwerian,
}

/// A parsed file of any kind, told apart by its header.
#[derive(Debug, Clone)]
pub enum Document {
    Poset(Poset),
    Algebra(FinCbs),
}

struct Line<'a> {
    number: usize,
    words: Vec<&'a str>,
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(k, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        (!words.is_empty()).then_some(Line { number: k + 1, words })
    })
}

fn syntax(line: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax { line, message: message.into() }
}

impl Line<'_> {
    fn keyword(&self) -> &str {
        self.words[0]
    }

    fn index(&self, k: usize, bound: usize) -> Result<usize> {
        let word = self.words.get(k).ok_or_else(|| syntax(self.number, format!("`{}` needs more fields", self.keyword())))?;
        let i: usize = word.parse().map_err(|_| syntax(self.number, format!("`{word}` is not an index")))?;
        if i >= bound {
            return Err(syntax(self.number, format!("index {i} out of range for {bound} elements")));
        }
        Ok(i)
    }

    fn arity(&self, n: usize) -> Result<()> {
        if self.words.len() != n + 1 {
            return Err(syntax(self.number, format!("`{}` takes {n} fields", self.keyword())));
        }
        Ok(())
    }

    fn label(&self) -> String {
        self.words[2..].join(" ")
    }
}

fn header<'a>(it: &mut impl Iterator<Item = Line<'a>>) -> Result<Line<'a>> {
    it.next().ok_or_else(|| syntax(0, "empty file"))
}

fn size(line: &Line<'_>) -> Result<usize> {
    line.arity(1)?;
    line.words[1].parse().map_err(|_| syntax(line.number, format!("`{}` is not a size", line.words[1])))
}

fn apply_labels(labels: Vec<Option<String>>) -> Option<Vec<String>> {
    labels
        .iter()
        .any(Option::is_some)
        .then(|| labels.into_iter().enumerate().map(|(i, l)| l.unwrap_or_else(|| i.to_string())).collect())
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut it = lines(text);
    let head = header(&mut it)?;
    if head.keyword() != "poset" {
        return Err(syntax(head.number, "expected `poset <n>`"));
    }
    parse_poset_body(size(&head)?, it)
}

fn parse_poset_body<'a>(n: usize, it: impl Iterator<Item = Line<'a>>) -> Result<Poset> {
    let mut covers = Vec::new();
    let mut labels = vec![None; n];
    for line in it {
        match line.keyword() {
            "cover" => {
                line.arity(2)?;
                covers.push((line.index(1, n)?, line.index(2, n)?));
            }
            "label" if line.words.len() >= 3 => labels[line.index(1, n)?] = Some(line.label()),
            other => return Err(syntax(line.number, format!("unexpected `{other}` in a poset file"))),
        }
    }
    let p = Poset::new(n, &covers)?;
    Ok(match apply_labels(labels) {
        Some(l) => p.with_labels(l)?,
        None => p,
    })
}

pub fn write_poset(p: &Poset) -> String {
    let mut out = format!("poset {}\n", p.len());
    for (i, j) in p.covers() {
        writeln!(out, "cover {i} {j}").unwrap();
    }
    if let Some(labels) = p.labels() {
        for (i, l) in labels.iter().enumerate() {
            writeln!(out, "label {i} {l}").unwrap();
        }
    }
    out
}

/// Tables as read, before validation. `zero` is where the file put it.
#[derive(Debug, Clone)]
pub struct RawAlgebra {
    pub n: usize,
    pub zero: usize,
    pub join: Vec<usize>,
    pub diff: Vec<usize>,
    pub labels: Option<Vec<String>>,
}

impl RawAlgebra {
    pub fn validate(&self) -> CbsReport {
        validate_cbs(self.n, self.zero, &self.join, &self.diff)
    }

    /// The validated algebra, with `zero` moved to index 0.
    pub fn build(&self) -> Result<FinCbs> {
        let l = FinCbs::new(self.n, self.zero, &self.join, &self.diff)?;
        Ok(match &self.labels {
            Some(labels) => {
                let mut labels = labels.clone();
                labels.swap(0, self.zero);
                l.with_labels(labels)?
            }
            None => l,
        })
    }
}

pub fn parse_raw_algebra(text: &str) -> Result<RawAlgebra> {
    let mut it = lines(text);
    let head = header(&mut it)?;
    let brouwerian = match head.keyword() {
        "cbs" => false,
        "bs" => true,
        _ => return Err(syntax(head.number, "expected `cbs <n>` or `bs <n>`")),
    };
    parse_algebra_body(size(&head)?, brouwerian, it)
}

fn parse_algebra_body<'a>(n: usize, brouwerian: bool, it: impl Iterator<Item = Line<'a>>) -> Result<RawAlgebra> {
    let (zero_kw, join_kw, diff_kw) = if brouwerian { ("top", "meet", "imp") } else { ("zero", "join", "diff") };
    let mut zero = None;
    let mut join = vec![None; n * n];
    let mut diff = vec![None; n * n];
    let mut labels = vec![None; n];
    for line in it {
        let kw = line.keyword();
        if kw == zero_kw {
            line.arity(1)?;
            zero = Some(line.index(1, n)?);
        } else if kw == join_kw || kw == diff_kw {
            line.arity(3)?;
            let (i, j, k) = (line.index(1, n)?, line.index(2, n)?, line.index(3, n)?);
            let (table, at) = match (kw == join_kw, brouwerian) {
                (true, _) => (&mut join, i * n + j),
                (false, false) => (&mut diff, i * n + j),
                // i -> j = k is j - i = k
                (false, true) => (&mut diff, j * n + i),
            };
            if table[at].is_some_and(|old| old != k) {
                return Err(syntax(line.number, format!("conflicting `{kw}` entry for {i} {j}")));
            }
            table[at] = Some(k);
        } else if kw == "label" && line.words.len() >= 3 {
            labels[line.index(1, n)?] = Some(line.label());
        } else {
            return Err(syntax(line.number, format!("unexpected `{kw}` in an algebra file")));
        }
    }
    let zero = zero.ok_or_else(|| syntax(0, format!("missing `{zero_kw}` line")))?;
    let complete = |table: Vec<Option<usize>>, kw: &str| -> Result<Vec<usize>> {
        table
            .iter()
            .enumerate()
            .map(|(at, e)| e.ok_or_else(|| syntax(0, format!("missing `{kw}` entry for {} {}", at / n, at % n))))
            .collect()
    };
    let join = complete(join, join_kw)?;
    let diff = if brouwerian {
        // Report the missing entry in the file's own argument order.
        let t: Vec<Option<usize>> = (0..n * n).map(|at| diff[(at % n) * n + at / n]).collect();
        complete(t, diff_kw)?;
        diff.into_iter().map(Option::unwrap).collect()
    } else {
        complete(diff, diff_kw)?
    };
    Ok(RawAlgebra { n, zero, join, diff, labels: apply_labels(labels) })
}

pub fn parse_algebra(text: &str) -> Result<FinCbs> {
    let raw = parse_raw_algebra(text)?;
    let report = raw.validate();
    if !report.is_ok() {
        return Err(CliError::InvalidAlgebra(report));
    }
    raw.build()
}

pub fn write_algebra(l: &FinCbs, orientation: Orientation) -> String {
    let n = l.len();
    let mut out = String::new();
    let labels = |out: &mut String| {
        if let Some(labels) = l.labels() {
            for (i, name) in labels.iter().enumerate() {
                writeln!(out, "label {i} {name}").unwrap();
            }
        }
    };
    match orientation {
        Orientation::Cbs => {
            writeln!(out, "cbs {n}\nzero 0").unwrap();
            labels(&mut out);
            for a in 0..n {
                for b in 0..n {
                    writeln!(out, "join {a} {b} {}", l.join(a, b)).unwrap();
                }
            }
            for a in 0..n {
                for b in 0..n {
                    writeln!(out, "diff {a} {b} {}", l.diff(a, b)).unwrap();
                }
            }
        }
        Orientation::Brouwerian => {
            writeln!(out, "bs {n}\ntop 0").unwrap();
            labels(&mut out);
            for a in 0..n {
                for b in 0..n {
                    writeln!(out, "meet {a} {b} {}", l.join(a, b)).unwrap();
                }
            }
            for a in 0..n {
                for b in 0..n {
                    writeln!(out, "imp {a} {b} {}", l.diff(b, a)).unwrap();
                }
            }
        }
    }
    out
}

/// Reads a poset or an algebra, whichever the header announces.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut it = lines(text);
    let head = header(&mut it)?;
    match head.keyword() {
        "poset" => Ok(Document::Poset(parse_poset_body(size(&head)?, it)?)),
        "cbs" | "bs" => parse_algebra(text).map(Document::Algebra),
        other => Err(syntax(head.number, format!("unknown file kind `{other}`"))),
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })
}

/// `(line, i, j)` for each `map i j` line.
type MapLines = Vec<(usize, usize, usize)>;

fn morphism_header(text: &str, keyword: &str, base: &Path) -> Result<(PathBuf, PathBuf, MapLines)> {
    let mut it = lines(text);
    let head = header(&mut it)?;
    if head.keyword() != keyword || head.words.len() != 3 {
        return Err(syntax(head.number, format!("expected `{keyword} <dom-file> <cod-file>`")));
    }
    let dir = base.parent().unwrap_or(Path::new(""));
    let maps = it
        .map(|line| {
            if line.keyword() != "map" {
                return Err(syntax(line.number, format!("unexpected `{}` in a {keyword} file", line.keyword())));
            }
            line.arity(2)?;
            let i = line.index(1, usize::MAX)?;
            let j = line.index(2, usize::MAX)?;
            Ok((line.number, i, j))
        })
        .collect::<Result<_>>()?;
    Ok((dir.join(head.words[1]), dir.join(head.words[2]), maps))
}

fn fill_map<T: Copy>(n: usize, maps: &[(usize, usize, usize)], bound: usize, wrap: impl Fn(usize) -> T, empty: T) -> Result<Vec<T>> {
    let mut map = vec![None; n];
    for &(number, i, j) in maps {
        if i >= n || j >= bound {
            return Err(syntax(number, format!("map {i} {j} is out of range")));
        }
        if map[i].is_some() {
            return Err(syntax(number, format!("point {i} is mapped twice")));
        }
        map[i] = Some(wrap(j));
    }
    Ok(map.into_iter().map(|m| m.unwrap_or(empty)).collect())
}

/// Reads a P-morphism file and the posets it names.
pub fn load_pmorphism(path: &Path) -> Result<PMorphism> {
    let (dom, cod, maps) = morphism_header(&read(path)?, "pmorph", path)?;
    let dom = parse_poset(&read(&dom)?)?;
    let cod = parse_poset(&read(&cod)?)?;
    let map = fill_map(dom.len(), &maps, cod.len(), Some, None)?;
    Ok(PMorphism::new(dom, cod, map)?)
}

/// Reads an algebra morphism file and the algebras it names.
pub fn load_hom(path: &Path) -> Result<CbsMorphism> {
    let (dom, cod, maps) = morphism_header(&read(path)?, "hom", path)?;
    let dom = parse_algebra(&read(&dom)?)?;
    let cod = parse_algebra(&read(&cod)?)?;
    if let Some(i) = (0..dom.len()).find(|i| !maps.iter().any(|m| m.1 == *i)) {
        return Err(syntax(0, format!("element {i} has no image")));
    }
    let map = fill_map(dom.len(), &maps, cod.len(), |j| j, 0)?;
    Ok(CbsMorphism::new(dom, cod, map)?)
}

pub fn write_pmorphism(f: &PMorphism, dom_file: &str, cod_file: &str) -> String {
    let mut out = format!("pmorph {dom_file} {cod_file}\n");
    for (i, m) in f.map.iter().enumerate() {
        if let Some(j) = m {
            writeln!(out, "map {i} {j}").unwrap();
        }
    }
    out
}

pub fn write_hom(h: &CbsMorphism, dom_file: &str, cod_file: &str) -> String {
    let mut out = format!("hom {dom_file} {cod_file}\n");
    for (i, j) in h.map.iter().enumerate() {
        writeln!(out, "map {i} {j}").unwrap();
    }
    out
}

fn field<'a>(word: &'a str, key: &str) -> Option<&'a str> {
    word.strip_prefix(key)?.strip_prefix('=')
}

fn signature_error(text: &str) -> CliError {
    CliError::Usage(format!(
        "bad signature `{text}`: expected `first h=<i> G={{<j>,..}}` or `second h1=<i> h2=<j> g=<k>`"
    ))
}

/// Parses `first h=<i> G={<j>,..}` or `second h1=<i> h2=<j> g=<k>`.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let bad = || signature_error(text);
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        ["first", rest @ ..] => {
            // `G={1, 2}` may contain spaces.
            let joined = rest.join(" ");
            let (h, g) = joined.split_once(" G=").ok_or_else(bad)?;
            let h = num(field(h.trim(), "h").ok_or_else(bad)?)?;
            let inner = g.trim().strip_prefix('{').and_then(|g| g.strip_suffix('}')).ok_or_else(bad)?;
            let g = inner
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(num)
                .collect::<Result<Vec<_>>>()?;
            Ok(Signature::first(h, g))
        }
        ["second", a, b, c] => {
            let h1 = num(field(a, "h1").ok_or_else(bad)?)?;
            let h2 = num(field(b, "h2").ok_or_else(bad)?)?;
            let g = num(field(c, "g").ok_or_else(bad)?)?;
            Ok(Signature::Second { h1, h2, g })
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cobrouwer_core::catalog::algebras;

    const DIAMOND: &str = "\
# the four-element Boolean algebra
cbs 4
zero 0
join 0 0 0\njoin 0 1 1\njoin 0 2 2\njoin 0 3 3
join 1 0 1\njoin 1 1 1\njoin 1 2 3\njoin 1 3 3
join 2 0 2\njoin 2 1 3\njoin 2 2 2\njoin 2 3 3
join 3 0 3\njoin 3 1 3\njoin 3 2 3\njoin 3 3 3
diff 0 0 0\ndiff 0 1 0\ndiff 0 2 0\ndiff 0 3 0
diff 1 0 1\ndiff 1 1 0\ndiff 1 2 1\ndiff 1 3 0
diff 2 0 2\ndiff 2 1 2\ndiff 2 2 0\ndiff 2 3 0
diff 3 0 3\ndiff 3 1 2\ndiff 3 2 1\ndiff 3 3 0
";

    #[test]
    fn algebra_files() {
        let d = parse_algebra(DIAMOND).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.join(1, 2), 3);
        assert_eq!(parse_algebra(&write_algebra(&d, Orientation::Cbs)).unwrap(), d);
        let corrupted = DIAMOND.replace("diff 3 1 2", "diff 3 1 3");
        assert!(matches!(parse_algebra(&corrupted), Err(CliError::InvalidAlgebra(_))));
        let missing = DIAMOND.replace("join 2 2 2\n", "");
        assert!(matches!(parse_algebra(&missing), Err(CliError::Syntax { .. })));
    }

    #[test]
    fn orientation_round_trip() {
        for l in algebras(6) {
            let text = write_algebra(&l, Orientation::Brouwerian);
            assert!(text.starts_with("bs "));
            assert_eq!(parse_algebra(&text).unwrap(), l);
        }
        let bs = write_algebra(&FinCbs::chain(2), Orientation::Brouwerian);
        // top -> bottom is bottom: `imp 0 1 1` says 1 - 0 = 1.
        assert!(bs.contains("imp 0 1 1\n") && bs.contains("imp 1 0 0\n"));
    }

    #[test]
    fn zero_is_moved_to_index_0() {
        // The 2-chain with its bottom stored at index 1.
        let text = "cbs 2\nzero 1\nlabel 0 top\nlabel 1 bot\n\
                    join 0 0 0\njoin 0 1 0\njoin 1 0 0\njoin 1 1 1\n\
                    diff 0 0 1\ndiff 0 1 0\ndiff 1 0 1\ndiff 1 1 1\n";
        let l = parse_algebra(text).unwrap();
        assert_eq!(l, FinCbs::chain(2).with_labels(vec!["bot".into(), "top".into()]).unwrap());
    }

    #[test]
    fn poset_files() {
        let p = parse_poset("poset 3\ncover 0 2  # zero below two\ncover 1 2\nlabel 2 top\n").unwrap();
        assert!(p.lt(0, 2) && p.lt(1, 2) && !p.comparable(0, 1));
        assert_eq!(p.label(2), "top");
        assert_eq!(parse_poset(&write_poset(&p)).unwrap(), p);
        assert!(matches!(parse_poset("poset 2\ncover 0 1\ncover 1 0\n"), Err(CliError::Core(_))));
        assert!(matches!(parse_poset("poset 2\ncover 0 5\n"), Err(CliError::Syntax { line: 2, .. })));
    }

    #[test]
    fn signatures() {
        for text in ["first h=0 G={}", "first h=2 G={3,4}", "second h1=0 h2=1 g=5"] {
            assert_eq!(parse_signature(text).unwrap().to_string(), text);
        }
        assert_eq!(parse_signature("first h=0 G={1, 2}").unwrap(), Signature::first(0, vec![1, 2]));
        assert!(parse_signature("third").is_err());
        assert!(parse_signature("second h1=0 g=1").is_err());
    }
}
