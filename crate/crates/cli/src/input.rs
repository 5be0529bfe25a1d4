//! Loading knots and groups from files or the bundled fixtures.

use std::path::Path;

use knotrep_core::finite::FiniteGroup;
use knotrep_core::knot::{parse_knot_text, Diagram, SourceFormat};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Fixtures available by bare name when no such file exists.
const BUNDLED: &[(&str, &str)] = &[
    ("unknot.pd", include_str!("../../../fixtures/unknot.pd")),
    ("unknot.braid", include_str!("../../../fixtures/unknot.braid")),
    ("kinked-unknot.braid", include_str!("../../../fixtures/kinked-unknot.braid")),
    ("trefoil.braid", include_str!("../../../fixtures/trefoil.braid")),
    ("trefoil.dt", include_str!("../../../fixtures/trefoil.dt")),
    ("trefoil.pd", include_str!("../../../fixtures/trefoil.pd")),
    ("figure8.braid", include_str!("../../../fixtures/figure8.braid")),
    ("figure8.dt", include_str!("../../../fixtures/figure8.dt")),
    ("figure8.pd", include_str!("../../../fixtures/figure8.pd")),
    ("cinquefoil.braid", include_str!("../../../fixtures/cinquefoil.braid")),
    ("q8.perm", include_str!("../../../fixtures/groups/q8.perm")),
    ("v4.perm", include_str!("../../../fixtures/groups/v4.perm")),
];

#[derive(Clone, Debug, Serialize)]
pub struct InputId {
    pub label: String,
    pub sha256: String,
}

pub struct KnotInput {
    pub id: InputId,
    pub format: SourceFormat,
    pub diagram: Diagram,
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn read(source: &str) -> Result<String, String> {
    let path = Path::new(source);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|e| format!("{source}: {e}"));
    }
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or(source);
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| format!("{source}: no such file or bundled fixture"))
}

pub fn load_knot(source: &str, format: Option<SourceFormat>) -> Result<KnotInput, String> {
    let text = read(source)?;
    let format = format
        .or_else(|| SourceFormat::sniff(Path::new(source)))
        .ok_or_else(|| format!("{source}: cannot tell the format from the extension; pass --format braid|dt|pd"))?;
    let diagram = parse_knot_text(&text, format).map_err(|e| format!("{source}: {e}"))?;
    let label = Path::new(source).file_name().and_then(|n| n.to_str()).unwrap_or(source).to_string();
    Ok(KnotInput { id: InputId { label, sha256: digest(&text) }, format, diagram })
}

/// A catalog name (`S3`, `A5`, ...) or a permutation file.
pub fn load_group(source: &str) -> Result<FiniteGroup, String> {
    if let Ok(g) = FiniteGroup::by_name(source) {
        return Ok(g);
    }
    let text =
        read(source).map_err(|_| format!("unknown group `{source}` (try Cn, Dn, Sn, An or a permutation file)"))?;
    FiniteGroup::parse_text(&text).map_err(|e| format!("{source}: {e}"))
}
