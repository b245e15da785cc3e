use std::path::Path;

use toric_seidel::polytope::Polytope;
use toric_seidel::presentation::{build_presentation, preset_ring, NefOverride, Presentation};

use crate::manifest::ManifoldFile;
use crate::{read, CliError, Params};

/// A manifold file with its parameters bound.
pub struct LoadedManifold {
    pub file: ManifoldFile,
    pub params: Params,
    pub polytope: Polytope,
}

pub fn load_manifold(path: &Path, overrides: &Params) -> Result<LoadedManifold, CliError> {
    let src = read(path)?;
    let file = ManifoldFile::parse(&src).map_err(|e| CliError::Json {
        path: path.display().to_string(),
        source: e,
    })?;
    let params = file.bind(overrides)?;
    let polytope = file.polytope(&params)?;
    Ok(LoadedManifold {
        file,
        params,
        polytope,
    })
}

pub struct RingSource {
    pub presentation: Presentation,
    pub params: Params,
    pub nef: Option<NefOverride>,
}

pub fn load_ring(
    file: Option<&Path>,
    preset: Option<&str>,
    params: &Params,
    nef: Option<NefOverride>,
) -> Result<RingSource, CliError> {
    match (file, preset) {
        (Some(path), None) => {
            let m = load_manifold(path, params)?;
            let presentation = build_presentation(&m.polytope, nef.as_ref(), m.params.clone())?;
            Ok(RingSource {
                presentation,
                params: m.params,
                nef,
            })
        }
        (None, Some(name)) => {
            if nef.is_some() {
                return Err(CliError::Invalid(
                    "--override applies to manifold files only".into(),
                ));
            }
            Ok(RingSource {
                presentation: preset_ring(name, params)?,
                params: params.clone(),
                nef,
            })
        }
        _ => Err(CliError::Invalid(
            "give exactly one of a manifold file and --preset".into(),
        )),
    }
}
