//! Text formats: space files, complex dumps, map files and sequence manifests.
//!
//! All formats are line based, UTF-8, and ignore blank lines and lines whose
//! first non-blank character is `#`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use finrefl_core::{ContinuousMap, FiniteSpace, InverseSequence, SimplicialComplex};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {msg}")]
    Syntax { path: String, line: usize, msg: String },
    #[error("{path}: {source}")]
    Invalid {
        path: String,
        #[source]
        source: finrefl_core::Error,
    },
}

impl Error {
    fn syntax(line: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { path: String::new(), line, msg: msg.into() }
    }

    fn invalid(source: finrefl_core::Error) -> Self {
        Error::Invalid { path: String::new(), source }
    }

    /// Fills in the file name on errors raised while parsing text.
    pub fn at(self, file: &Path) -> Self {
        let path = file.display().to_string();
        match self {
            Error::Syntax { line, msg, .. } => Error::Syntax { path, line, msg },
            Error::Invalid { source, .. } => Error::Invalid { path, source },
            io => io,
        }
    }

    /// The core error underneath, when there is one.
    pub fn core(&self) -> Option<&finrefl_core::Error> {
        match self {
            Error::Invalid { source, .. } => Some(source),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Non-comment lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Splits `key: rest`.
fn keyed(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once(':')?;
    Some((k.trim(), v.trim()))
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

/// Whether the text looks like a space file rather than a complex dump.
pub fn is_space_text(text: &str) -> bool {
    lines(text).next().is_some_and(|(_, l)| keyed(l).is_some_and(|(k, _)| k == "points"))
}

/// Parses a space file: one `points:` line, then either `le: x y` lines or
/// `open: ...` lines.
pub fn parse_space(text: &str) -> Result<FiniteSpace> {
    let mut points: Option<Vec<String>> = None;
    let mut le: Vec<(usize, String, String)> = Vec::new();
    let mut opens: Vec<Vec<String>> = Vec::new();
    let mut first_le = None;
    let mut first_open = None;
    for (no, line) in lines(text) {
        let (key, rest) = keyed(line).ok_or_else(|| Error::syntax(no, format!("expected `key: value`, got `{line}`")))?;
        match key {
            "points" => {
                if points.is_some() {
                    return Err(Error::syntax(no, "second `points:` line"));
                }
                points = Some(rest.split_whitespace().map(str::to_string).collect());
            }
            "le" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [x, y] = toks[..] else {
                    return Err(Error::syntax(no, "`le:` takes exactly two points"));
                };
                first_le.get_or_insert(no);
                le.push((no, x.to_string(), y.to_string()));
            }
            "open" => {
                first_open.get_or_insert(no);
                opens.push(rest.split_whitespace().map(str::to_string).collect());
            }
            other => return Err(Error::syntax(no, format!("unknown key `{other}`"))),
        }
        if points.is_none() {
            return Err(Error::syntax(no, "the first line must be `points:`"));
        }
    }
    if let (Some(a), Some(b)) = (first_le, first_open) {
        return Err(Error::syntax(
            a.max(b),
            format!("`le:` (line {a}) and `open:` (line {b}) styles cannot be mixed in one file"),
        ));
    }
    let points = points.ok_or_else(|| Error::syntax(0, "missing `points:` line"))?;
    if first_open.is_some() {
        return FiniteSpace::from_opens(&points, &opens).map_err(Error::invalid);
    }
    let space = FiniteSpace::discrete(points.len()).with_labels(points).map_err(Error::invalid)?;
    let mut pairs = Vec::with_capacity(le.len());
    for (no, x, y) in &le {
        let find = |p: &str| space.index_of(p).ok_or_else(|| Error::syntax(*no, format!("unknown point `{p}`")));
        pairs.push((find(x)?, find(y)?));
    }
    let labels = space.labels().map(<[String]>::to_vec).unwrap_or_default();
    FiniteSpace::from_preorder(labels.len(), &pairs)
        .and_then(|s| s.with_labels(labels))
        .map_err(Error::invalid)
}

/// Writes a space in `le:` style using a generating set of the order.
pub fn write_space(space: &FiniteSpace) -> String {
    let mut out = String::from("points:");
    for x in 0..space.len() {
        out.push(' ');
        out.push_str(&space.label(x));
    }
    out.push('\n');
    for (x, y) in space.generators() {
        let _ = writeln!(out, "le: {} {}", space.label(x), space.label(y));
    }
    out
}

/// Parses a complex dump: one simplex per line as vertex indices. The
/// result is closed under faces.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut simplices = Vec::new();
    let mut vertices = 0;
    for (no, line) in lines(text) {
        let mut s = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::syntax(no, format!("`{t}` is not a vertex index"))))
            .collect::<Result<Vec<_>>>()?;
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::syntax(no, "repeated vertex"));
        }
        vertices = vertices.max(s.last().map_or(0, |v| v + 1));
        simplices.push(s);
    }
    SimplicialComplex::from_maximal(vertices, &simplices).map_err(Error::invalid)
}

pub fn write_complex(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    for s in complex.iter() {
        let line: Vec<String> = s.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// A map file: its header names and the point assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFile {
    pub dom: String,
    pub cod: String,
    /// `(line, point, image)`.
    pub send: Vec<(usize, String, String)>,
}

pub fn parse_map(text: &str) -> Result<MapFile> {
    let mut header: Option<(String, String)> = None;
    let mut send = Vec::new();
    for (no, line) in lines(text) {
        let (key, rest) = keyed(line).ok_or_else(|| Error::syntax(no, format!("expected `key: value`, got `{line}`")))?;
        match key {
            "map" if header.is_none() => {
                let (d, c) = rest
                    .split_once("->")
                    .ok_or_else(|| Error::syntax(no, "expected `map: <domain> -> <codomain>`"))?;
                header = Some((d.trim().to_string(), c.trim().to_string()));
            }
            "map" => return Err(Error::syntax(no, "second `map:` line")),
            "send" if header.is_some() => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [p, q] = toks[..] else {
                    return Err(Error::syntax(no, "`send:` takes exactly two points"));
                };
                send.push((no, p.to_string(), q.to_string()));
            }
            "send" => return Err(Error::syntax(no, "`send:` before the `map:` header")),
            other => return Err(Error::syntax(no, format!("unknown key `{other}`"))),
        }
    }
    let (dom, cod) = header.ok_or_else(|| Error::syntax(0, "missing `map:` header"))?;
    Ok(MapFile { dom, cod, send })
}

impl MapFile {
    /// The point function, checking that every domain point is sent exactly
    /// once to a named codomain point.
    pub fn resolve(&self, dom: &FiniteSpace, cod: &FiniteSpace) -> Result<Vec<usize>> {
        let mut f = vec![usize::MAX; dom.len()];
        for (no, p, q) in &self.send {
            let no = *no;
            let x = dom.index_of(p).ok_or_else(|| Error::syntax(no, format!("unknown domain point `{p}`")))?;
            let y = cod.index_of(q).ok_or_else(|| Error::syntax(no, format!("unknown codomain point `{q}`")))?;
            if f[x] != usize::MAX {
                return Err(Error::syntax(no, format!("point `{p}` is sent twice")));
            }
            f[x] = y;
        }
        if let Some(x) = f.iter().position(|&y| y == usize::MAX) {
            return Err(Error::syntax(0, format!("point `{}` is not sent anywhere", dom.label(x))));
        }
        Ok(f)
    }
}

pub fn write_map(dom_name: &str, cod_name: &str, dom: &FiniteSpace, cod: &FiniteSpace, f: &[usize]) -> String {
    let mut out = format!("map: {dom_name} -> {cod_name}\n");
    for (x, &y) in f.iter().enumerate() {
        let _ = writeln!(out, "send: {} {}", dom.label(x), cod.label(y));
    }
    out
}

/// A sequence manifest: stage files coarsest first, and bond map files.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    pub spaces: Vec<String>,
    pub maps: Vec<String>,
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let mut m = Manifest::default();
    for (no, line) in lines(text) {
        match keyed(line) {
            Some(("space", f)) if !f.is_empty() => m.spaces.push(f.to_string()),
            Some(("map", f)) if !f.is_empty() => m.maps.push(f.to_string()),
            _ => return Err(Error::syntax(no, format!("expected `space: <file>` or `map: <file>`, got `{line}`"))),
        }
    }
    Ok(m)
}

pub fn write_manifest(m: &Manifest) -> String {
    let mut out = String::new();
    for s in &m.spaces {
        let _ = writeln!(out, "space: {s}");
    }
    for s in &m.maps {
        let _ = writeln!(out, "map: {s}");
    }
    out
}

/// A sequence loaded from a manifest, with every file it read.
pub struct LoadedSequence {
    pub sequence: InverseSequence,
    pub files: Vec<PathBuf>,
}

/// Loads a manifest and the files it names, relative to its directory. The
/// map for stage `n` is the one whose header reads `space[n+1] -> space[n]`.
pub fn load_sequence(manifest: &Path) -> Result<LoadedSequence> {
    let m = parse_manifest(&read(manifest)?).map_err(|e| e.at(manifest))?;
    let dir = manifest.parent().unwrap_or(Path::new(""));
    let mut files = vec![manifest.to_path_buf()];
    let mut spaces = Vec::with_capacity(m.spaces.len());
    for s in &m.spaces {
        let p = dir.join(s);
        spaces.push(parse_space(&read(&p)?).map_err(|e| e.at(&p))?);
        files.push(p);
    }
    let mut maps = Vec::with_capacity(m.maps.len());
    for s in &m.maps {
        let p = dir.join(s);
        maps.push((parse_map(&read(&p)?).map_err(|e| e.at(&p))?, p));
    }
    if maps.len() + 1 != spaces.len().max(1) {
        return Err(Error::syntax(0, format!("{} stages need {} maps, found {}", spaces.len(), spaces.len().saturating_sub(1), maps.len()))
            .at(manifest));
    }
    let mut bonds = Vec::with_capacity(maps.len());
    for n in 0..maps.len() {
        let (dom, cod) = (&m.spaces[n + 1], &m.spaces[n]);
        let (map, path) = maps
            .iter()
            .find(|(mf, _)| &mf.dom == dom && &mf.cod == cod)
            .ok_or_else(|| Error::syntax(0, format!("no map `{dom} -> {cod}`")).at(manifest))?;
        let f = map.resolve(&spaces[n + 1], &spaces[n]).map_err(|e| e.at(path))?;
        ContinuousMap::check(&spaces[n + 1], &spaces[n], &f).map_err(|e| Error::invalid(e).at(path))?;
        bonds.push(f);
    }
    files.extend(maps.into_iter().map(|(_, p)| p));
    let sequence = InverseSequence::new(spaces, bonds).map_err(|e| Error::invalid(e).at(manifest))?;
    Ok(LoadedSequence { sequence, files })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_round_trip() {
        for space in [FiniteSpace::sierpinski(), FiniteSpace::pseudocircle(), FiniteSpace::indiscrete(3), FiniteSpace::empty()] {
            let text = write_space(&space);
            let back = parse_space(&text).unwrap();
            assert!(back.same_topology(&space));
            assert_eq!(write_space(&back), text);
        }
    }

    #[test]
    fn opens_style() {
        let s = parse_space("# sierpinski\npoints: a b\nopen:\nopen: a\nopen: a b\n").unwrap();
        assert!(s.same_topology(&FiniteSpace::sierpinski()));
        assert!(parse_space("points: a b\nopen: a\n").is_err());
    }

    #[test]
    fn mixed_styles_rejected() {
        let err = parse_space("points: a b\nle: a b\nopen: a\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err}");
        assert!(err.to_string().contains("cannot be mixed"));
    }

    #[test]
    fn diagnostics_carry_lines() {
        let err = parse_space("points: a b\n\nle: a c\n").unwrap_err().at(Path::new("x.space"));
        assert_eq!(err.to_string(), "x.space:3: unknown point `c`");
        assert!(parse_space("le: a b\n").is_err());
        assert!(parse_space("points: a a\n").is_err());
    }

    #[test]
    fn complex_closed_under_faces() {
        let k = parse_complex("0 1 2\n# comment\n3\n").unwrap();
        assert_eq!((k.count(0), k.count(1), k.count(2)), (4, 3, 1));
        assert_eq!(parse_complex(&write_complex(&k)).unwrap(), k);
        assert!(parse_complex("0 0\n").is_err());
    }

    #[test]
    fn map_files() {
        let s = FiniteSpace::sierpinski();
        let p = FiniteSpace::point();
        let text = write_map("s.space", "p.space", &s, &p, &[0, 0]);
        let m = parse_map(&text).unwrap();
        assert_eq!((m.dom.as_str(), m.cod.as_str()), ("s.space", "p.space"));
        assert_eq!(m.resolve(&s, &p).unwrap(), vec![0, 0]);
        let partial = parse_map("map: a -> b\nsend: a 0\n").unwrap();
        assert!(partial.resolve(&s, &p).is_err());
    }
}
