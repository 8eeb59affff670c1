//! Suite runners bundling the per-module checks into reports.

use crate::group::{self, TransformSpec};
use crate::model::ModelConfig;
use crate::noether;
use crate::phase;
use crate::quasi;
use crate::report::{CheckEntry, Report};
use crate::Error;

/// The selectable verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Group,
    Noether,
    Appendix,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "algebra" => Ok(Suite::Algebra),
            "group" => Ok(Suite::Group),
            "noether" => Ok(Suite::Noether),
            "appendix" => Ok(Suite::Appendix),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!(
                "unknown suite {s:?} (expected algebra, group, noether, appendix or all)"
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Group => "group",
            Suite::Noether => "noether",
            Suite::Appendix => "appendix",
            Suite::All => "all",
        }
    }
}

/// Every transformation type with symbolic parameters, boosts at all levels.
fn symbolic_specs(cfg: &ModelConfig) -> Vec<TransformSpec> {
    let mut specs = Vec::new();
    for level in 0..=cfg.n() {
        specs.push(TransformSpec::symbolic_boost(level, cfg));
    }
    specs.push(TransformSpec::symbolic_shift());
    specs.push(TransformSpec::symbolic_dilation());
    specs.push(TransformSpec::symbolic_conformal());
    let rot = group::RotationMatrix::plane(
        cfg.dim(),
        0,
        1,
        crate::rational::rat(3, 5),
        crate::rational::rat(4, 5),
    )
    .expect("3-4-5 rotation");
    specs.push(TransformSpec::Rotation(rot));
    specs
}

fn algebra_checks(cfg: &ModelConfig) -> Vec<CheckEntry> {
    let mut checks = phase::verify_structure_constants(cfg).checks;
    checks.extend(phase::verify_conservation(cfg).checks);
    checks.extend(phase::verify_closed_form_actions(cfg).checks);
    checks
}

fn group_checks(cfg: &ModelConfig) -> Vec<CheckEntry> {
    let mut checks = Vec::new();
    for spec in symbolic_specs(cfg) {
        checks.extend(group::verify_prolongation(cfg, &spec).checks);
    }
    checks.extend(group::jet_flow_comparison(cfg).checks);
    checks.extend(group::vector_field_checks(cfg).checks);
    checks.extend(group::composition_checks(cfg).checks);
    checks.extend(group::onshell_consistency_checks(cfg).checks);
    checks
}

fn noether_checks(cfg: &ModelConfig) -> Vec<CheckEntry> {
    let mut checks = noether::verify_symmetries(cfg).checks;
    checks.extend(noether::correspondence_check(cfg).checks);
    checks.extend(noether::closed_form_comparisons(cfg).checks);
    checks
}

fn appendix_checks(cfg: &ModelConfig) -> Vec<CheckEntry> {
    let mut checks = quasi::recurrence_checks(cfg).checks;
    for spec in symbolic_specs(cfg) {
        checks.extend(quasi::verify_total_derivative(cfg, &spec).checks);
    }
    checks
}

/// Run one suite (or all of them, in a fixed order) for a model.
pub fn run_suite(cfg: &ModelConfig, suite: Suite) -> Report {
    let checks = match suite {
        Suite::Algebra => algebra_checks(cfg),
        Suite::Group => group_checks(cfg),
        Suite::Noether => noether_checks(cfg),
        Suite::Appendix => appendix_checks(cfg),
        Suite::All => {
            let mut checks = algebra_checks(cfg);
            checks.extend(group_checks(cfg));
            checks.extend(noether_checks(cfg));
            checks.extend(appendix_checks(cfg));
            checks
        }
    };
    Report::new(cfg, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in ["algebra", "group", "noether", "appendix", "all"] {
            assert_eq!(Suite::parse(s).unwrap().as_str(), s);
        }
        assert!(Suite::parse("bogus").is_err());
    }

    #[test]
    fn full_suite_passes_at_n1() {
        let cfg = ModelConfig::new(1, 3).unwrap();
        let r = run_suite(&cfg, Suite::All);
        assert!(r.all_passed(), "{}", crate::phase::failing(&r));
        assert!(r.summary.passed > 0);
    }

    #[test]
    fn json_is_byte_stable() {
        let cfg = ModelConfig::new(3, 3).unwrap();
        let a = run_suite(&cfg, Suite::Algebra).to_json();
        let b = run_suite(&cfg, Suite::Algebra).to_json();
        assert_eq!(a, b);
    }
}
