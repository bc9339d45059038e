#include "fdsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace fdsim {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples))
{
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const
{
    if (sorted_.empty()) {
        throw DomainError("EmpiricalCdf: no samples");
    }
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double percentile(const EmpiricalCdf& cdf, double p)
{
    if (cdf.empty()) {
        throw DomainError("percentile: no samples");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("percentile: p must lie in [0,1]");
    }
    const auto& x = cdf.sorted();
    const double h = static_cast<double>(x.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= x.size()) {
        return x.back();
    }
    return x[lo] + (h - static_cast<double>(lo)) * (x[lo + 1] - x[lo]);
}

double relative_gain(const EmpiricalCdf& a, const EmpiricalCdf& b, double p)
{
    const double qa = percentile(a, p);
    const double qb = percentile(b, p);
    if (qb == 0.0) {
        throw UndefinedGainError("relative_gain: baseline quantile is zero");
    }
    return (qa - qb) / qb * 100.0;
}

namespace {

using LinkKey = std::tuple<std::uint64_t, std::uint64_t, int, int>;  // drop, slot, cell, stream

// reports of one variant/direction in key order, so sums do not depend on input order
std::vector<const ReceiverReport*> sorted_subset(std::span<const ReceiverReport> reports,
                                                 int variant, const LinkDir* dir)
{
    std::vector<const ReceiverReport*> out;
    for (const auto& r : reports) {
        if (r.variant == variant && (dir == nullptr || r.dir == *dir)) {
            out.push_back(&r);
        }
    }
    std::sort(out.begin(), out.end(), [](const ReceiverReport* a, const ReceiverReport* b) {
        return std::tuple(a->drop, a->slot, a->dir, a->cell, a->stream) <
               std::tuple(b->drop, b->slot, b->dir, b->cell, b->stream);
    });
    return out;
}

}  // namespace

std::vector<double> sum_throughput_per_slot(std::span<const ReceiverReport> reports, int variant,
                                            int n_drops, int n_slots)
{
    std::vector<double> out(static_cast<std::size_t>(n_drops) * static_cast<std::size_t>(n_slots),
                            0.0);
    for (const auto* r : sorted_subset(reports, variant, nullptr)) {
        if (r->drop >= static_cast<std::uint64_t>(n_drops) ||
            r->slot >= static_cast<std::uint64_t>(n_slots)) {
            throw DomainError("sum_throughput_per_slot: report outside the campaign grid");
        }
        out[r->drop * static_cast<std::uint64_t>(n_slots) + r->slot] += r->throughput_bps;
    }
    return out;
}

std::vector<double> link_throughput_samples(std::span<const ReceiverReport> reports, int variant,
                                            LinkDir dir)
{
    std::vector<double> out;
    const ReceiverReport* prev = nullptr;
    for (const auto* r : sorted_subset(reports, variant, &dir)) {
        if (prev != nullptr && prev->drop == r->drop && prev->slot == r->slot &&
            prev->cell == r->cell) {
            out.back() += r->throughput_bps;
        }
        else {
            out.push_back(r->throughput_bps);
        }
        prev = r;
    }
    return out;
}

std::vector<double> user_average_throughput(std::span<const ReceiverReport> reports, int variant,
                                            LinkDir dir)
{
    // (drop, user) -> (sum over slots, slot count)
    std::map<std::pair<std::uint64_t, int>, std::pair<double, int>> acc;
    std::map<std::pair<std::uint64_t, int>, std::uint64_t> last_slot;
    for (const auto* r : sorted_subset(reports, variant, &dir)) {
        const auto key = std::pair(r->drop, r->user);
        auto& a = acc[key];
        a.first += r->throughput_bps;
        auto [it, fresh] = last_slot.try_emplace(key, r->slot);
        if (fresh || it->second != r->slot) {
            it->second = r->slot;
            ++a.second;
        }
    }
    std::vector<double> out;
    out.reserve(acc.size());
    for (const auto& [key, a] : acc) {
        out.push_back(a.first / a.second);
    }
    return out;
}

const char* to_string(LedgerField f)
{
    switch (f) {
    case LedgerField::Desired: return "desired";
    case LedgerField::Noise: return "noise";
    case LedgerField::SiResidual: return "si";
    case LedgerField::BsToBs: return "bs2bs";
    case LedgerField::UeToUeIntra: return "ue2ue_intra";
    case LedgerField::UeToUeInter: return "ue2ue_inter";
    case LedgerField::CoDirection: return "codir";
    }
    return "?";
}

double ledger_value(const InterferenceBreakdown& b, LedgerField f)
{
    switch (f) {
    case LedgerField::Desired: return b.desired_w;
    case LedgerField::Noise: return b.noise_w;
    case LedgerField::SiResidual: return b.si_residual_w;
    case LedgerField::BsToBs: return b.bs_to_bs_w;
    case LedgerField::UeToUeIntra: return b.ue_to_ue_intra_w;
    case LedgerField::UeToUeInter: return b.ue_to_ue_inter_w;
    case LedgerField::CoDirection: return b.co_direction_w;
    }
    return 0.0;
}

std::vector<double> ledger_samples(std::span<const ReceiverReport> reports, int variant,
                                   LinkDir dir, LedgerField field)
{
    std::vector<double> out;
    for (const auto& r : reports) {
        if (r.variant == variant && r.dir == dir) {
            out.push_back(ledger_value(r.breakdown, field));
        }
    }
    return out;
}

std::vector<VariantCdfs> variant_cdfs(const CampaignResult& result)
{
    std::vector<VariantCdfs> out;
    for (std::size_t v = 0; v < result.variants.size(); ++v) {
        const int vi = static_cast<int>(v);
        out.push_back(VariantCdfs{
            EmpiricalCdf(
                sum_throughput_per_slot(result.reports, vi, result.n_drops, result.n_slots)),
            EmpiricalCdf(link_throughput_samples(result.reports, vi, LinkDir::Ul)),
            EmpiricalCdf(link_throughput_samples(result.reports, vi, LinkDir::Dl)),
            EmpiricalCdf(user_average_throughput(result.reports, vi, LinkDir::Ul)),
            EmpiricalCdf(user_average_throughput(result.reports, vi, LinkDir::Dl)),
        });
    }
    return out;
}

GainTable gain_table(const CampaignResult& result, const std::vector<VariantCdfs>& cdfs,
                     std::span<const double> percentiles)
{
    GainTable table;
    const auto gain = [](const EmpiricalCdf& a, const EmpiricalCdf& b, double p) {
        if (a.empty() || b.empty()) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        try {
            return relative_gain(a, b, p);
        }
        catch (const UndefinedGainError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    const std::pair<const char*, EmpiricalCdf VariantCdfs::*> metrics[] = {
        {"sum_throughput", &VariantCdfs::sum},
        {"ul_throughput", &VariantCdfs::ul},
        {"dl_throughput", &VariantCdfs::dl},
    };
    for (const auto& [name, member] : metrics) {
        for (const double p : percentiles) {
            for (std::size_t a = 0; a < cdfs.size(); ++a) {
                for (std::size_t b = 0; b < cdfs.size(); ++b) {
                    if (a == b) {
                        continue;
                    }
                    table.rows.push_back(GainRow{name, result.variants[a].name,
                                                 result.variants[b].name, p,
                                                 gain(cdfs[a].*member, cdfs[b].*member, p)});
                }
            }
        }
    }
    return table;
}

std::string gain_table_json(const GainTable& table)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table.rows) {
        nlohmann::json row{{"metric", r.metric},
                           {"mode_a", r.mode_a},
                           {"mode_b", r.mode_b},
                           {"percentile", r.percentile}};
        if (std::isnan(r.relative_gain_percent)) {
            row["relative_gain_percent"] = nullptr;
        }
        else {
            row["relative_gain_percent"] = r.relative_gain_percent;
        }
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"rows", rows}}.dump(2);
}

void write_cdf(std::ostream& out, const EmpiricalCdf& cdf, const std::string& header)
{
    std::size_t start = 0;
    while (start < header.size()) {
        auto end = header.find('\n', start);
        if (end == std::string::npos) {
            end = header.size();
        }
        const auto line = header.substr(start, end - start);
        out << (line.starts_with("#") ? "" : "# ") << line << '\n';
        start = end + 1;
    }
    const auto& x = cdf.sorted();
    char buf[64];
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", x[i],
                      static_cast<double>(i + 1) / static_cast<double>(x.size()));
        out << buf;
    }
}

}  // namespace fdsim
