#pragma once

#include <cstdint>

#include "ctml/ct_matrix.hpp"

namespace ctml {

struct SyntheticCohortConfig {
    std::size_t n_per_group = 8;
    std::size_t n_genes = 89;
    std::size_t n_signal_genes = 10;
    double effect_size_ct = 2.0;  // subtracted from Flight-group signal genes
    double noise_sd = 0.5;
    std::uint64_t seed = 1;
};

/// Deterministic two-group Ct cohort. The first n_signal_genes genes carry a
/// Flight-group mean shift of -effect_size_ct (lower Ct = higher expression);
/// the rest are identically distributed in both groups. Ground samples come
/// first. Gaussian noise is generated from explicitly-coded Box-Muller
/// transforms so the output is bit-identical across platforms for a fixed
/// seed.
CtMatrix synthesize_cohort(const SyntheticCohortConfig& cfg);

}  // namespace ctml
