//! Synthetic datasets rendered in the ingest formats.

use pathdiv_core::syngen::{self, SynConfig};

use crate::ingest;

/// Contents of `roster.txt`, `policies.txt` and `routes.txt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedFiles {
    pub roster: String,
    pub policies: String,
    pub routes: String,
}

pub fn generate(cfg: &SynConfig) -> pathdiv_core::Result<GeneratedFiles> {
    let data = syngen::generate(cfg)?;
    let header = format!(
        "# synthetic: as_count={} provider_ratio={} peer_probability={} seed={}\n",
        cfg.as_count, cfg.provider_ratio, cfg.peer_probability, cfg.seed
    );
    Ok(GeneratedFiles {
        roster: header.clone() + &ingest::write_roster(&data.roster),
        policies: header.clone() + &ingest::write_policies(&data.policies),
        routes: header + &ingest::write_routes(&data.routes),
    })
}
