#include "hjbdeep/collocation.hpp"

#include "hjbdeep/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hjbdeep {

void TrainingBox::validate(const UtilitySpec& utility) const {
    if (!(W_min < W_max) || !(L_min < L_max) || !(T > 0.0))
        throw std::invalid_argument("training box is degenerate");
    if (L_min < 0.0) throw std::invalid_argument("training box requires L_min >= 0");
    if (utility.kind == UtilityKind::Exponential) {
        if (!(W_min > 0.0) && !(W_min < W_max))
            throw std::invalid_argument("training box is degenerate");
    } else if (!(W_min > 0.0)) {
        throw std::invalid_argument("training box requires W_min > 0 for CRRA utilities");
    }
}

CollocationBatch sample_uniform(const TrainingBox& box, int n_interior,
                                int n_terminal, std::uint64_t seed) {
    if (n_interior < 1 || n_terminal < 0)
        throw std::invalid_argument("sample_uniform: need n_interior >= 1");
    if (!(box.W_min < box.W_max) || !(box.L_min < box.L_max) || !(box.T > 0.0))
        throw std::invalid_argument("sample_uniform: degenerate box");

    CollocationBatch batch;
    batch.seed = seed;
    batch.provenance = BatchProvenance::Uniform;
    batch.interior.resize(n_interior);
    batch.terminal.resize(n_terminal);

    Rng rng(derive_stream(seed, 0xc0110cULL));
    for (auto& p : batch.interior) {
        p[0] = rng.uniform(box.W_min, box.W_max);
        p[1] = rng.uniform(box.L_min, box.L_max);
        p[2] = rng.uniform(0.0, box.T);
    }
    for (auto& p : batch.terminal) {
        p[0] = rng.uniform(box.W_min, box.W_max);
        p[1] = rng.uniform(box.L_min, box.L_max);
        p[2] = box.T;
    }
    return batch;
}

std::vector<std::array<double, 3>> adaptive_resample(
    const TrainingBox& box,
    const std::function<double(double, double, double)>& residual_evaluator,
    int pool_size, int keep_k, std::uint64_t seed) {
    if (keep_k < 1 || pool_size < keep_k)
        throw std::invalid_argument("adaptive_resample: need pool_size >= keep_k >= 1");

    CollocationBatch pool = sample_uniform(box, pool_size, 0, seed);
    std::vector<double> score(pool_size);
    for (int i = 0; i < pool_size; ++i) {
        const auto& p = pool.interior[i];
        const double r = residual_evaluator(p[0], p[1], p[2]);
        if (!std::isfinite(r)) {
            std::ostringstream msg;
            msg << "adaptive_resample: non-finite residual at (W=" << p[0]
                << ", L=" << p[1] << ", t=" << p[2] << ")";
            throw std::runtime_error(msg.str());
        }
        score[i] = std::abs(r);
    }

    std::vector<int> order(pool_size);
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + keep_k, order.end(),
                      [&](int a, int b) {
                          if (score[a] != score[b]) return score[a] > score[b];
                          return a < b;
                      });

    std::vector<std::array<double, 3>> kept(keep_k);
    for (int i = 0; i < keep_k; ++i) kept[i] = pool.interior[order[i]];
    return kept;
}

}  // namespace hjbdeep
