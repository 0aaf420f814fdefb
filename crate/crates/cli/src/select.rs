use std::fs;
use std::path::PathBuf;

use clap::Args;
use horadam_core::{registry, ClassicView, CoefficientScheme, SchemeDescriptor};

use crate::CliError;

/// Which sequence a command works on. Exactly one source must be given.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Selector {
    /// Registry name, e.g. `fibonacci`, `mnacci(3)`, `fh-affine`.
    #[arg(long)]
    pub seq: Option<String>,
    /// Comma-separated finite coefficients a_1,...,a_m.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Scheme descriptor file (JSON, or TOML when the extension is `.toml`).
    #[arg(long)]
    pub descriptor: Option<PathBuf>,
}

pub fn parse_scheme_literal(text: &str) -> Result<CoefficientScheme, CliError> {
    let coeffs: Vec<i64> = text
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("bad coefficient `{}` in `{text}`", c.trim())))
        })
        .collect::<Result<_, _>>()?;
    CoefficientScheme::finite(coeffs).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn read_descriptor(path: &PathBuf) -> Result<SchemeDescriptor, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let parsed = if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str::<SchemeDescriptor>(&text).map_err(|e| e.to_string())
    } else {
        serde_json::from_str::<SchemeDescriptor>(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

impl Selector {
    pub fn resolve(&self) -> Result<ClassicView, CliError> {
        if let Some(name) = &self.seq {
            return registry()
                .lookup(name)
                .map_err(|e| CliError::Usage(e.to_string()));
        }
        if let Some(text) = &self.scheme {
            let scheme = parse_scheme_literal(text)?;
            return Ok(ClassicView::new(scheme.to_string(), scheme, 0));
        }
        let path = self.descriptor.as_ref().expect("clap enforces one selector");
        let d = read_descriptor(path)?;
        let scheme = d
            .to_scheme()
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Ok(ClassicView::new(d.name, scheme, d.offset))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_literals() {
        assert_eq!(parse_scheme_literal("1, 1").unwrap(), CoefficientScheme::Finite(vec![1, 1]));
        assert_eq!(parse_scheme_literal("0,1,1,0").unwrap(), CoefficientScheme::Finite(vec![0, 1, 1]));
        assert!(parse_scheme_literal("1,,1").is_err());
        assert!(parse_scheme_literal("2,-1").is_err());
    }
}
