#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fdsim/config.hpp"
#include "fdsim/engine.hpp"

namespace fdsim {

/// Relative gain against a zero baseline quantile.
class UndefinedGainError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Sorted samples of one metric.
class EmpiricalCdf {
public:
    EmpiricalCdf() = default;
    explicit EmpiricalCdf(std::vector<double> samples);

    std::size_t size() const { return sorted_.size(); }
    bool empty() const { return sorted_.empty(); }
    const std::vector<double>& sorted() const { return sorted_; }
    /// Fraction of samples <= x.
    double operator()(double x) const;

private:
    std::vector<double> sorted_;
};

/// Type-7 quantile (linear interpolation between order statistics), p in [0,1].
double percentile(const EmpiricalCdf& cdf, double p);

/// (q_a(p) - q_b(p)) / q_b(p) * 100. Throws UndefinedGainError when q_b(p) = 0.
double relative_gain(const EmpiricalCdf& a, const EmpiricalCdf& b, double p);

struct GainRow {
    std::string metric;
    std::string mode_a;
    std::string mode_b;
    double percentile = 0.5;
    double relative_gain_percent = 0.0;  // NaN when undefined
};

struct GainTable {
    std::vector<GainRow> rows;
};

/// Network-wide sum throughput, one sample per (drop, slot) including empty slots.
std::vector<double> sum_throughput_per_slot(std::span<const ReceiverReport> reports, int variant,
                                            int n_drops, int n_slots);

/// Throughput per scheduled link per slot, streams of a link summed.
std::vector<double> link_throughput_samples(std::span<const ReceiverReport> reports, int variant,
                                            LinkDir dir);

/// Per (drop, user) mean throughput over the slots in which the user was scheduled.
std::vector<double> user_average_throughput(std::span<const ReceiverReport> reports, int variant,
                                            LinkDir dir);

enum class LedgerField { Desired, Noise, SiResidual, BsToBs, UeToUeIntra, UeToUeInter, CoDirection };
const char* to_string(LedgerField f);
double ledger_value(const InterferenceBreakdown& b, LedgerField f);

/// One value of `field` per report of the variant in direction `dir`.
std::vector<double> ledger_samples(std::span<const ReceiverReport> reports, int variant,
                                   LinkDir dir, LedgerField field);

/// CDFs of one variant: sum, UL, DL per link-slot, and per-user averages.
struct VariantCdfs {
    EmpiricalCdf sum;
    EmpiricalCdf ul;
    EmpiricalCdf dl;
    EmpiricalCdf ul_user;
    EmpiricalCdf dl_user;
};

std::vector<VariantCdfs> variant_cdfs(const CampaignResult& result);

/// Every ordered variant pair for sum/UL/DL throughput at the given percentiles.
GainTable gain_table(const CampaignResult& result, const std::vector<VariantCdfs>& cdfs,
                     std::span<const double> percentiles);

std::string gain_table_json(const GainTable& table);

/// Two-column "value cumulative_probability" text, after `#`-prefixed header lines.
void write_cdf(std::ostream& out, const EmpiricalCdf& cdf, const std::string& header);

}  // namespace fdsim
