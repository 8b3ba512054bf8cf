#include "qmux/analysis.hpp"

#include "qmux/errors.hpp"
#include "qmux/routing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

namespace qmux {

OverheadReport overhead_report(std::int64_t translated_ns, std::int64_t routed_ns, std::int64_t serialized_ns,
                               const DensityReport& densities, int k, const std::string& strategy,
                               std::uint64_t seed, const std::string& circuit_label, const std::string& algo,
                               int n) {
    if (!(serialized_ns >= routed_ns && routed_ns >= translated_ns)) {
        throw PipelineError("stage durations out of order: translated=" + std::to_string(translated_ns) +
                            " routed=" + std::to_string(routed_ns) +
                            " serialized=" + std::to_string(serialized_ns));
    }
    OverheadReport r;
    r.circuit_label = circuit_label;
    r.algo = algo;
    r.n = n;
    r.k = k;
    r.strategy = strategy;
    r.seed = seed;
    r.t_translated_ns = translated_ns;
    r.t_routed_ns = routed_ns;
    r.t_serialized_ns = serialized_ns;
    r.abs_overhead_ns = serialized_ns - routed_ns;
    r.rel_overhead = routed_ns > 0 ? static_cast<double>(serialized_ns) / static_cast<double>(routed_ns) : 1.0;
    r.densities = densities;
    return r;
}

OverheadReport run_pipeline(const Circuit& frontend, const HardwareSpec& spec, GroupStrategy strategy, int k,
                            std::uint64_t seed, const SerializerOptions& opts,
                            const std::string& circuit_label, const std::string& algo) {
    const Circuit translated = rebase_to_native(frontend, spec);
    const std::int64_t t_translated = circuit_duration_ns(translated);
    const RoutedCircuit routed = route(translated, spec, seed);
    const SwitchGrouping grouping = make_grouping(strategy, spec.coupling, k, seed);
    const SerializedCircuit serialized = serialize(routed, grouping, spec, opts);
    const DensityReport densities = gate_densities(routed.circuit);
    return overhead_report(t_translated, serialized.base_duration_ns, serialized.duration_ns, densities, k,
                           strategy_name(strategy), seed, circuit_label, algo, frontend.num_qubits());
}

double median(std::vector<double> values) { return percentile(std::move(values), 0.5); }

double percentile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw ValidationError("percentile of empty set");
    }
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

std::vector<SweepCell> sweep_k(const Circuit& frontend, const HardwareSpec& spec, GroupStrategy strategy,
                               const std::vector<int>& ks, const std::vector<std::uint64_t>& seeds,
                               const SerializerOptions& opts, const std::string& circuit_label,
                               const std::string& algo, std::vector<OverheadReport>* all_rows) {
    if (ks.empty() || seeds.empty()) {
        throw ValidationError("sweep_k: ks and seeds must be nonempty");
    }
    std::vector<int> sorted_ks = ks;
    std::sort(sorted_ks.begin(), sorted_ks.end());

    // Translation and routing identical across k; run them once per seed.
    const Circuit translated = rebase_to_native(frontend, spec);
    const std::int64_t t_translated = circuit_duration_ns(translated);

    std::vector<SweepCell> cells;
    std::vector<std::vector<double>> abs_per_k(sorted_ks.size());
    std::vector<std::vector<double>> rel_per_k(sorted_ks.size());
    for (const std::uint64_t seed : seeds) {
        const RoutedCircuit routed = route(translated, spec, seed);
        const DensityReport densities = gate_densities(routed.circuit);
        for (std::size_t ki = 0; ki < sorted_ks.size(); ++ki) {
            const SwitchGrouping grouping = make_grouping(strategy, spec.coupling, sorted_ks[ki], seed);
            const SerializedCircuit serialized = serialize(routed, grouping, spec, opts);
            const OverheadReport r =
                overhead_report(t_translated, serialized.base_duration_ns, serialized.duration_ns, densities,
                                sorted_ks[ki], strategy_name(strategy), seed, circuit_label, algo,
                                frontend.num_qubits());
            abs_per_k[ki].push_back(static_cast<double>(r.abs_overhead_ns));
            rel_per_k[ki].push_back(r.rel_overhead);
            if (all_rows != nullptr) {
                all_rows->push_back(r);
            }
        }
    }
    for (std::size_t ki = 0; ki < sorted_ks.size(); ++ki) {
        SweepCell cell;
        cell.k = sorted_ks[ki];
        cell.median_abs_ns = median(abs_per_k[ki]);
        cell.iqr_lo_abs_ns = percentile(abs_per_k[ki], 0.25);
        cell.iqr_hi_abs_ns = percentile(abs_per_k[ki], 0.75);
        cell.median_rel = median(rel_per_k[ki]);
        cell.iqr_lo_rel = percentile(rel_per_k[ki], 0.25);
        cell.iqr_hi_rel = percentile(rel_per_k[ki], 0.75);
        cells.push_back(cell);
    }
    return cells;
}

FitResult fit_log_model(const std::vector<std::pair<int, double>>& points, double n1, double t_1q_ns) {
    double sxx_log = 0;
    double sxy_log = 0;
    double sxx_lin = 0;
    double sxy_lin = 0;
    for (const auto& [k, t] : points) {
        if (k < 1) {
            throw ValidationError("fit_log_model: k must be >= 1");
        }
        const double x = n1 * t_1q_ns * std::log(static_cast<double>(k));
        const double y = n1 * t_1q_ns * static_cast<double>(k - 1);
        sxx_log += x * x;
        sxy_log += x * t;
        sxx_lin += y * y;
        sxy_lin += y * t;
    }
    if (sxx_log == 0.0) {
        throw ValidationError("fit_log_model: degenerate fit, no points with k >= 2");
    }
    FitResult fit;
    fit.p = sxy_log / sxx_log;
    const double q = sxx_lin > 0.0 ? sxy_lin / sxx_lin : 0.0;
    for (const auto& [k, t] : points) {
        const double x = n1 * t_1q_ns * std::log(static_cast<double>(k));
        const double y = n1 * t_1q_ns * static_cast<double>(k - 1);
        fit.residual_log += (t - fit.p * x) * (t - fit.p * x);
        fit.residual_linear += (t - q * y) * (t - q * y);
    }
    if (points.size() > 1) {
        const double sigma2 = fit.residual_log / static_cast<double>(points.size() - 1);
        fit.stderr_p = std::sqrt(sigma2 / sxx_log);
    }
    return fit;
}

std::string fit_to_json(const FitResult& fit) {
    nlohmann::json j;
    j["p"] = fit.p;
    j["stderr"] = fit.stderr_p;
    j["residual_log"] = fit.residual_log;
    j["residual_linear"] = fit.residual_linear;
    j["log_base"] = "e";
    return j.dump(2);
}

namespace {
std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}
} // namespace

void write_reports_csv(std::ostream& out, const std::vector<OverheadReport>& rows) {
    out << "circuit,algo,n,k,strategy,seed,t_translated_ns,t_routed_ns,t_serialized_ns,"
           "abs_overhead_ns,rel_overhead,N1,N2,D,rho1,rho2\n";
    for (const auto& r : rows) {
        out << r.circuit_label << ',' << r.algo << ',' << r.n << ',' << r.k << ',' << r.strategy << ','
            << r.seed << ',' << r.t_translated_ns << ',' << r.t_routed_ns << ',' << r.t_serialized_ns << ','
            << r.abs_overhead_ns << ',' << format_double(r.rel_overhead) << ',' << r.densities.n1 << ','
            << r.densities.n2 << ',' << r.densities.depth << ',' << format_double(r.densities.rho1) << ','
            << format_double(r.densities.rho2) << '\n';
    }
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ss(s);
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (!s.empty() && s.back() == ',') {
            fields.emplace_back();
        }
        return fields;
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (table.header.empty()) {
            table.header = split(line);
            continue;
        }
        auto fields = split(line);
        if (fields.size() != table.header.size()) {
            throw ValidationError("malformed CSV: row with " + std::to_string(fields.size()) +
                                  " fields, header has " + std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    if (table.header.empty()) {
        throw ValidationError("malformed CSV: empty input");
    }
    return table;
}

} // namespace qmux
