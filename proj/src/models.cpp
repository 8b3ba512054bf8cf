#include "qmux/models.hpp"

#include "qmux/errors.hpp"
#include "qmux/rng.hpp"
#include "qmux/switch_groups.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qmux {

ToyModelResult toy_model_run(const ToyModelConfig& cfg, int trials) {
    if (trials < 1) {
        throw ValidationError("toy_model_run: need at least one trial");
    }
    if (cfg.p1 < 0 || cfg.p1 > 1 || cfg.p2 < 0 || cfg.p2 > 1) {
        throw ValidationError("toy_model_run: probabilities must lie in [0, 1]");
    }
    if (cfg.t2 < 1.0) {
        throw ValidationError("toy_model_run: t2 must be >= 1 (units of t1)");
    }
    const int n = cfg.grid.n;
    const SwitchGrouping grouping = trivial_grouping(n, cfg.k);
    const int m = grouping.m();

    double sum = 0;
    double sum_sq = 0;
    std::vector<int> count(m);
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(Rng::derive(cfg.seed, 0x746f79ULL, static_cast<std::uint64_t>(trial)));
        double ideal = 0;
        double serialized = 0;
        for (int layer = 0; layer < cfg.depth; ++layer) {
            std::fill(count.begin(), count.end(), 0);
            int total_1q = 0;
            for (int q = 0; q < n; ++q) {
                if (rng.uniform() < cfg.p1) {
                    ++count[grouping.group_of[q]];
                    ++total_1q;
                }
            }
            bool any_2q = false;
            for (std::size_t e = 0; e < cfg.grid.edges.size(); ++e) {
                if (rng.uniform() < cfg.p2) {
                    any_2q = true;
                }
            }
            const int serial_1q =
                cfg.no2q_total_count && !any_2q ? total_1q : *std::max_element(count.begin(), count.end());
            if (any_2q) {
                ideal += cfg.t2;
                serialized += std::max(cfg.t2, static_cast<double>(serial_1q));
            } else if (total_1q > 0) {
                ideal += 1.0;
                serialized += static_cast<double>(serial_1q);
            }
        }
        const double factor = ideal > 0 ? serialized / ideal : 1.0;
        sum += factor;
        sum_sq += factor * factor;
    }
    ToyModelResult result;
    result.mean_factor = sum / trials;
    const double var = std::max(0.0, sum_sq / trials - result.mean_factor * result.mean_factor);
    result.std_factor = std::sqrt(var);
    return result;
}

double queue_max_waiting_mc(const QueueModel& model) {
    if (model.trials < 1) {
        throw ValidationError("queue_max_waiting_mc: need at least one trial");
    }
    if (model.k < 1 || model.eta <= 0) {
        throw ValidationError("queue_max_waiting_mc: need k >= 1 and eta > 0");
    }
    double sum = 0;
    for (int trial = 0; trial < model.trials; ++trial) {
        Rng rng(Rng::derive(model.seed, 0x717565756500ULL, static_cast<std::uint64_t>(trial)));
        double mx = 0;
        for (int i = 0; i < model.k; ++i) {
            mx = std::max(mx, rng.exponential(model.eta));
        }
        sum += mx;
    }
    return sum / model.trials;
}

double expected_max_exponential(double eta, int k) {
    if (k < 1 || eta <= 0) {
        throw ValidationError("expected_max_exponential: need k >= 1 and eta > 0");
    }
    double h = 0;
    for (int i = 1; i <= k; ++i) {
        h += 1.0 / static_cast<double>(i);
    }
    return h / eta;
}

double variance_max_exponential(double eta, int k) {
    if (k < 1 || eta <= 0) {
        throw ValidationError("variance_max_exponential: need k >= 1 and eta > 0");
    }
    double s = 0;
    for (int i = 1; i <= k; ++i) {
        s += 1.0 / (static_cast<double>(i) * static_cast<double>(i));
    }
    return s / (eta * eta);
}

} // namespace qmux
