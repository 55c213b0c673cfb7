#pragma once

#include "hjbdeep/params.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace hjbdeep {

// Bounded training region in (W, L); time spans [0, T].
struct TrainingBox {
    double W_min = 0.1;
    double W_max = 5.0;
    double L_min = 0.01;
    double L_max = 2.0;
    double T = 1.0;

    void validate(const UtilitySpec& utility) const;
};

enum class BatchProvenance { Uniform, Adaptive };

struct CollocationBatch {
    std::vector<std::array<double, 3>> interior;  // (W, L, t)
    std::vector<std::array<double, 3>> terminal;  // (W, L, T)
    std::uint64_t seed = 0;
    BatchProvenance provenance = BatchProvenance::Uniform;
};

CollocationBatch sample_uniform(const TrainingBox& box, int n_interior,
                                int n_terminal, std::uint64_t seed);

// Draws a uniform candidate pool, scores |residual| with the supplied
// evaluator, and returns the keep_k highest-residual points. Ties break
// toward the lower pool index; points are distinct by construction.
std::vector<std::array<double, 3>> adaptive_resample(
    const TrainingBox& box,
    const std::function<double(double W, double L, double t)>& residual_evaluator,
    int pool_size, int keep_k, std::uint64_t seed);

}  // namespace hjbdeep
