#include "ctml/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "ctml/errors.hpp"
#include "ctml/rng.hpp"

namespace ctml {

namespace {

class NormalSampler {
  public:
    explicit NormalSampler(std::mt19937_64& rng) : rng_(rng) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01(rng_);
        const double u2 = uniform01(rng_);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64& rng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::string padded_name(const char* prefix, std::size_t index, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, index + 1);
    return buf;
}

}  // namespace

CtMatrix synthesize_cohort(const SyntheticCohortConfig& cfg) {
    if (cfg.n_per_group == 0) throw ArgumentError("n_per_group must be positive");
    if (cfg.n_genes == 0) throw ArgumentError("n_genes must be positive");
    if (cfg.n_signal_genes > cfg.n_genes) {
        throw ArgumentError("n_signal_genes cannot exceed n_genes");
    }
    if (!(cfg.noise_sd > 0.0)) throw ArgumentError("noise_sd must be positive");

    const std::size_t n_samples = 2 * cfg.n_per_group;
    CtMatrix m;
    m.gene_names.reserve(cfg.n_genes);
    for (std::size_t g = 0; g < cfg.n_genes; ++g) {
        m.gene_names.push_back(padded_name("gene", g, 3));
    }
    m.sample_ids.reserve(n_samples);
    m.labels.reserve(n_samples);
    for (std::size_t s = 0; s < cfg.n_per_group; ++s) {
        m.sample_ids.push_back(padded_name("GC", s, 2));
        m.labels.push_back(kGroundControl);
    }
    for (std::size_t s = 0; s < cfg.n_per_group; ++s) {
        m.sample_ids.push_back(padded_name("FL", s, 2));
        m.labels.push_back(kFlight);
    }

    m.values = Matrix(n_samples, cfg.n_genes);
    m.missing_mask.assign(n_samples, std::vector<bool>(cfg.n_genes, false));

    // One RNG substream per gene keeps columns independent of evaluation
    // order and of every other config field.
    for (std::size_t g = 0; g < cfg.n_genes; ++g) {
        std::mt19937_64 rng = make_rng(cfg.seed, g + 1);
        NormalSampler normal(rng);
        const double baseline = 20.0 + 12.0 * uniform01(rng);
        const bool signal = g < cfg.n_signal_genes;
        for (std::size_t s = 0; s < n_samples; ++s) {
            double ct = baseline + cfg.noise_sd * normal.next();
            if (signal && m.labels[s] == kFlight) ct -= cfg.effect_size_ct;
            m.values(s, g) = ct;
        }
    }
    m.validate();
    return m;
}

}  // namespace ctml
