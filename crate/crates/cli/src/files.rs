use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use horn_arena::kernel::Atom;
use horn_arena::theory_io::{parse_goal, parse_theory_bytes, Theory};
use horn_arena::{Error, Params};

/// Anything that stops a command before it reaches an outcome.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, missing paths, out-of-range numbers. Exit 2.
    Usage(String),
    /// An input file that does not parse or validate. Exit 3.
    Input(String),
    /// A proof the checker rejects came out of the prover. Exit 4.
    Integrity(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Integrity(_) => 4,
        }
    }

    /// Classifies a library error raised while reading `what`, which is
    /// either a file path or a command-line flag.
    pub fn from_core(err: Error, what: &str, from_file: bool) -> Failure {
        let msg = format!("{what}: {err}");
        match err {
            Error::Integrity(_) => Failure::Integrity(msg),
            Error::InvalidArgument(_) => Failure::Usage(msg),
            _ if from_file => Failure::Input(msg),
            _ => Failure::Usage(msg),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Integrity(m) => f.write_str(m),
        }
    }
}

/// Errors raised while running (not loading) are either integrity failures
/// or configuration problems.
pub fn run_error(err: Error) -> Failure {
    match err {
        Error::Integrity(m) => Failure::Integrity(m),
        other => Failure::Usage(other.to_string()),
    }
}

pub fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    String::from_utf8(read(path)?)
        .map_err(|_| Failure::Input(format!("{}: invalid UTF-8", path.display())))
}

pub fn load_theory(path: &Path) -> Result<Theory, Failure> {
    parse_theory_bytes(&read(path)?)
        .map_err(|e| Failure::from_core(e, &path.display().to_string(), true))
}

pub fn load_params(path: Option<&Path>) -> Result<Params, Failure> {
    match path {
        None => Ok(Params::default()),
        Some(p) => Params::from_json(&read_text(p)?)
            .map_err(|e| Failure::from_core(e, &p.display().to_string(), true)),
    }
}

fn goal_in(text: &str, theory: &Theory) -> horn_arena::Result<Atom> {
    let goal = parse_goal(text)?;
    theory.validate_goal(&goal)?;
    Ok(goal)
}

/// A goal given inline (`--goal`) or as a file (`--goal-file`), checked
/// against the theory's predicates.
pub fn load_goal(
    inline: Option<&str>,
    file: Option<&Path>,
    theory: &Theory,
    flag: &str,
) -> Result<Atom, Failure> {
    match (inline, file) {
        (Some(text), _) => goal_in(text, theory).map_err(|e| Failure::from_core(e, flag, false)),
        (None, Some(p)) => goal_in(read_text(p)?.trim(), theory)
            .map_err(|e| Failure::from_core(e, &p.display().to_string(), true)),
        (None, None) => Err(Failure::Usage(format!("{flag} is required"))),
    }
}

/// One goal per non-blank line; `%` starts a comment.
pub fn load_obligations(path: &Path, theory: &Theory) -> Result<Vec<Atom>, Failure> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('%').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let goal = goal_in(line, theory)
            .map_err(|e| Failure::from_core(e, &format!("{}:{}", path.display(), i + 1), true))?;
        out.push(goal);
    }
    Ok(out)
}

pub struct OutDir(PathBuf);

impl OutDir {
    pub fn create(path: &Path) -> Result<OutDir, Failure> {
        fs::create_dir_all(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        Ok(OutDir(path.to_path_buf()))
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }

    /// Writes `name` via a temporary sibling and a rename, so readers never
    /// see a partial file.
    pub fn write(&self, name: &str, contents: &str) -> Result<PathBuf, Failure> {
        let target = self.path(name);
        let tmp = self.path(&format!(".{name}.tmp"));
        let fail = |e: std::io::Error| Failure::Usage(format!("{}: {e}", target.display()));
        let mut f = fs::File::create(&tmp).map_err(fail)?;
        f.write_all(contents.as_bytes()).map_err(fail)?;
        f.sync_all().map_err(fail)?;
        fs::rename(&tmp, &target).map_err(fail)?;
        Ok(target)
    }
}
