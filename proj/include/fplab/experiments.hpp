#pragma once

#include "fplab/report.hpp"

namespace fplab {

// Experiment runners. All draws are keyed by (seed, p, ...) through the
// counter generator, trials are assembled in a fixed order, and thread count
// never changes output bytes.

ExperimentReport run_lower_bound(const ExperimentConfig& cfg);
ExperimentReport run_aip_scaling(const ExperimentConfig& cfg);
ExperimentReport run_conv_approx(const ExperimentConfig& cfg);
ExperimentReport run_covering(const ExperimentConfig& cfg);
ExperimentReport run_extraction(const ExperimentConfig& cfg);
ExperimentReport run_conjecture(const ExperimentConfig& cfg);
ExperimentReport run_appendix_suite(const ExperimentConfig& cfg);

/// Dispatch by cfg.experiment; unknown names are rejected.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

const std::vector<std::string>& experiment_names();

}  // namespace fplab
