//! TOML schema for aggregate and disorder settings.

use serde::{Deserialize, Serialize};

use super::spec::{AggregateSpec, CouplingRange, DisorderSpec, Topology};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SiteEnergies {
    Uniform(f64),
    PerSite(Vec<f64>),
}

/// Flat config record; unused keys for a topology must be absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AggregateConfig {
    pub topology: Topology,
    pub n_sites: usize,
    pub site_energy_cm1: SiteEnergies,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_cm1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jprime_cm1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coupling_range: Option<CouplingRange>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_de_cm1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_dx_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realizations: Option<u64>,
}

impl AggregateConfig {
    pub fn from_toml(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    fn energies(&self) -> Result<Vec<f64>> {
        match &self.site_energy_cm1 {
            SiteEnergies::Uniform(e) => Ok(vec![*e; self.n_sites]),
            SiteEnergies::PerSite(v) if v.len() == self.n_sites => Ok(v.clone()),
            SiteEnergies::PerSite(v) => Err(Error::Config(format!(
                "site_energy_cm1 has {} entries for n_sites = {}",
                v.len(),
                self.n_sites
            ))),
        }
    }

    fn need(&self, v: Option<f64>, key: &str) -> Result<f64> {
        v.ok_or_else(|| Error::Config(format!("{:?} topology requires `{key}`", self.topology)))
    }

    pub fn aggregate_spec(&self) -> Result<AggregateSpec> {
        let energies = self.energies()?;
        let mut spec = match self.topology {
            Topology::Dimer => {
                if self.n_sites != 2 {
                    return Err(Error::Config("dimer requires n_sites = 2".into()));
                }
                AggregateSpec::dimer(energies[0], energies[1], self.need(self.j_cm1, "j_cm1")?)
            }
            Topology::Chain => AggregateSpec::chain(self.n_sites, 0.0, self.need(self.j_cm1, "j_cm1")?),
            Topology::Ring => AggregateSpec::ring(self.n_sites, 0.0, self.need(self.j_cm1, "j_cm1")?),
            Topology::DisorderedChain => AggregateSpec::disordered_chain(
                self.n_sites,
                0.0,
                self.need(self.jprime_cm1, "jprime_cm1")?,
                self.lattice_a.unwrap_or(1.0),
            )
            .with_coupling_range(self.coupling_range.unwrap_or_default()),
        };
        spec.site_energies = energies;
        spec.validate()?;
        Ok(spec)
    }

    /// Present only when any disorder key is set.
    pub fn disorder_spec(&self) -> Result<Option<DisorderSpec>> {
        if self.sigma_de_cm1.is_none()
            && self.sigma_dx_a.is_none()
            && self.seed.is_none()
            && self.realizations.is_none()
        {
            return Ok(None);
        }
        let d = DisorderSpec {
            sigma_site_energy: self.sigma_de_cm1.unwrap_or(0.0),
            sigma_position: self.sigma_dx_a.unwrap_or(0.0),
            seed: self.seed.ok_or_else(|| Error::Config("disorder requires `seed`".into()))?,
            n_realizations: self.realizations.unwrap_or(2000),
        };
        d.validate()?;
        Ok(Some(d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregate::build_hamiltonian;

    #[test]
    fn dimer_from_toml() {
        let c = AggregateConfig::from_toml(
            "topology = \"dimer\"\nn_sites = 2\nsite_energy_cm1 = [12328.0, 12472.0]\nj_cm1 = 70.7\n",
        )
        .unwrap();
        let h = build_hamiltonian(&c.aggregate_spec().unwrap(), None).unwrap();
        assert_eq!(h[(0, 1)], -70.7);
        assert_eq!(h[(1, 1)], 12472.0);
        assert!(c.disorder_spec().unwrap().is_none());
    }

    #[test]
    fn disordered_roundtrip() {
        let src = "topology = \"disordered-chain\"\nn_sites = 20\nsite_energy_cm1 = 0.0\njprime_cm1 = 600.0\nlattice_a = 1.0\nsigma_de_cm1 = 76.8\nseed = 7\nrealizations = 2000\n";
        let c = AggregateConfig::from_toml(src).unwrap();
        let again = AggregateConfig::from_toml(&c.to_toml().unwrap()).unwrap();
        assert_eq!(c, again);
        let d = c.disorder_spec().unwrap().unwrap();
        assert_eq!(d.sigma_site_energy, 76.8);
        assert_eq!(d.sigma_position, 0.0);
        assert_eq!(d.n_realizations, 2000);
        assert_eq!(c.aggregate_spec().unwrap().coupling_scale(), Some(600.0));
    }

    #[test]
    fn bad_configs() {
        let missing_j = AggregateConfig::from_toml("topology = \"chain\"\nn_sites = 4\nsite_energy_cm1 = 0.0\n").unwrap();
        assert!(matches!(missing_j.aggregate_spec(), Err(Error::Config(_))));
        let wrong_len =
            AggregateConfig::from_toml("topology = \"chain\"\nn_sites = 4\nsite_energy_cm1 = [0.0]\nj_cm1 = 1.0\n").unwrap();
        assert!(matches!(wrong_len.aggregate_spec(), Err(Error::Config(_))));
        assert!(matches!(
            AggregateConfig::from_toml("topology = \"chain\"\nn_sites = 4\nsite_energy_cm1 = 0.0\nbogus = 1\n"),
            Err(Error::Config(_))
        ));
        let neg = AggregateConfig::from_toml(
            "topology = \"disordered-chain\"\nn_sites = 4\nsite_energy_cm1 = 0.0\njprime_cm1 = 1.0\nsigma_de_cm1 = -1.0\nseed = 1\n",
        )
        .unwrap();
        assert!(matches!(neg.disorder_spec(), Err(Error::Validation(_))));
    }
}
