#pragma once

#include "qmux/circuit.hpp"
#include "qmux/hardware.hpp"
#include "qmux/serialize.hpp"
#include "qmux/switch_groups.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmux {

/// One pipeline run: translated -> routed -> serialized durations plus
/// provenance. rel_overhead is serialized/routed; abs is the difference.
struct OverheadReport {
    std::string circuit_label;
    std::string algo;
    int n = 0;
    int k = 1;
    std::string strategy;
    std::uint64_t seed = 0;
    std::int64_t t_translated_ns = 0;
    std::int64_t t_routed_ns = 0;
    std::int64_t t_serialized_ns = 0;
    std::int64_t abs_overhead_ns = 0;
    double rel_overhead = 1.0;
    DensityReport densities; ///< densities of the routed circuit
};

/// Assembles a report, checking the stage ordering serialized >= routed >=
/// translated (PipelineError otherwise).
OverheadReport overhead_report(std::int64_t translated_ns, std::int64_t routed_ns, std::int64_t serialized_ns,
                               const DensityReport& densities, int k, const std::string& strategy,
                               std::uint64_t seed, const std::string& circuit_label, const std::string& algo,
                               int n);

/// Full pipeline for one frontend circuit and one seed: rebase, route, group,
/// serialize, report.
OverheadReport run_pipeline(const Circuit& frontend, const HardwareSpec& spec, GroupStrategy strategy, int k,
                            std::uint64_t seed, const SerializerOptions& opts,
                            const std::string& circuit_label, const std::string& algo);

struct SweepCell {
    int k = 1;
    double median_abs_ns = 0;
    double iqr_lo_abs_ns = 0;
    double iqr_hi_abs_ns = 0;
    double median_rel = 1;
    double iqr_lo_rel = 1;
    double iqr_hi_rel = 1;
};

/// Median and interquartile range per k over the seed set, rows sorted by k.
/// Individual reports are appended to `all_rows` when given.
std::vector<SweepCell> sweep_k(const Circuit& frontend, const HardwareSpec& spec, GroupStrategy strategy,
                               const std::vector<int>& ks, const std::vector<std::uint64_t>& seeds,
                               const SerializerOptions& opts, const std::string& circuit_label,
                               const std::string& algo, std::vector<OverheadReport>* all_rows = nullptr);

struct FitResult {
    double p = 0;
    double stderr_p = 0;
    double residual_log = 0;
    double residual_linear = 0;
};

/// Least squares for T = p * N1 * t_1q * ln(k), plus the competing linear
/// model T = q * N1 * t_1q * (k - 1); both residual sums are reported.
FitResult fit_log_model(const std::vector<std::pair<int, double>>& points, double n1, double t_1q_ns);

std::string fit_to_json(const FitResult& fit);

double median(std::vector<double> values);
/// Interpolated percentile of the sorted values, q in [0, 1].
double percentile(std::vector<double> values, double q);

/// CSV with the fixed column set:
/// circuit,algo,n,k,strategy,seed,t_translated_ns,t_routed_ns,t_serialized_ns,
/// abs_overhead_ns,rel_overhead,N1,N2,D,rho1,rho2
void write_reports_csv(std::ostream& out, const std::vector<OverheadReport>& rows);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const; ///< -1 when absent
};

/// Plain comma-separated reader (no quoting; the toolkit never emits commas
/// inside fields). Throws ValidationError on ragged rows or empty input.
CsvTable read_csv(std::istream& in);

} // namespace qmux
