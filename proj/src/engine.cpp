#include "fdsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>

#include "fdsim/deployment.hpp"
#include "fdsim/rng.hpp"

namespace fdsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double to_db(double linear) { return 10.0 * std::log10(linear); }

// |a^H b|^2
double coupled(const CVector& a, const CVector& b) { return std::norm(a.dot(b)); }

double coupled(const CVector& a, const CMatrix& h, const CVector& b)
{
    return std::norm(a.dot(h * b));
}

bool perfect_csi(const ScenarioConfig& c)
{
    return std::isinf(c.csi_error_ratio_db) && c.csi_error_ratio_db < 0;
}

void validate_variant(const ScenarioConfig& config, const Variant& v)
{
    ScenarioConfig probe = config;
    probe.duplex_mode = v.mode;
    probe.bsint_nulls = v.bsint_nulls;
    probe.si_cancellation_db = v.si_cancellation_db;
    probe.cli_suppression_db = v.cli_suppression_db;
    try {
        probe.validate();
    }
    catch (const ConfigError& e) {
        throw ConfigError("variant " + v.name + ": " + e.what());
    }
}

struct Digest {
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    void add(std::uint64_t x) { h = mix64(h ^ mix64(x + 0x9e3779b97f4a7c15ULL)); }
    void add(double x) { add(std::bit_cast<std::uint64_t>(x)); }
    void add(const CMatrix& m)
    {
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            add(m(i).real());
            add(m(i).imag());
        }
    }
};

}  // namespace

double thermal_noise_w(double bandwidth_hz, double noise_figure_db)
{
    // (k T) scaled by B last so that B/2 gives exactly half the power
    return (kBoltzmann * kReferenceTemperatureK * db_to_linear(noise_figure_db)) * bandwidth_hz;
}

double ul_power_control(double coupling_gain_linear, double noise_w, double snr_target_db,
                        double p_max_w)
{
    if (!(coupling_gain_linear > 0.0)) {
        return p_max_w;
    }
    return std::min(p_max_w, noise_w * db_to_linear(snr_target_db) / coupling_gain_linear);
}

double si_residual(double bs_tx_power_w, const CMatrix& si_channel, double si_cancellation_db,
                   const CVector& combiner, const CVector& precoder)
{
    if (std::isinf(si_cancellation_db) && si_cancellation_db > 0) {
        return 0.0;
    }
    return coupled(combiner, si_channel, precoder) * bs_tx_power_w *
           db_to_linear(-si_cancellation_db);
}

double throughput(double sinr_linear, double bandwidth_hz, double sinr_cap_db)
{
    if (!(sinr_linear >= 0.0)) {
        throw DomainError("throughput: sinr must be non-negative");
    }
    return bandwidth_hz * std::log2(1.0 + std::min(sinr_linear, db_to_linear(sinr_cap_db)));
}

const char* to_string(LinkDir d) { return d == LinkDir::Ul ? "UL" : "DL"; }

Variant Variant::from_config(const ScenarioConfig& config)
{
    return Variant{variant_label(config.duplex_mode, config.bsint_nulls), config.duplex_mode,
                   config.bsint_nulls, config.si_cancellation_db, config.cli_suppression_db};
}

std::string variant_label(DuplexMode mode, int bsint_nulls)
{
    std::string base = mode == DuplexMode::HdFdd ? "HD" : mode == DuplexMode::Dtdd ? "DTDD" : "FD";
    if (bsint_nulls > 0) {
        base += "-" + std::to_string(bsint_nulls) + "BSint";
    }
    return base;
}

std::vector<Variant> standard_variants(const ScenarioConfig& config)
{
    std::vector<Variant> out;
    const auto add = [&](DuplexMode m, int nulls) {
        out.push_back(Variant{variant_label(m, nulls), m, nulls, config.si_cancellation_db,
                              config.cli_suppression_db});
    };
    add(DuplexMode::Fd, 0);
    add(DuplexMode::Fd, 4);
    add(DuplexMode::Fd, 6);
    add(DuplexMode::Dtdd, 0);
    add(DuplexMode::Dtdd, 4);
    add(DuplexMode::Dtdd, 6);
    add(DuplexMode::HdFdd, 0);
    return out;
}

// ---------------------------------------------------------------------------
// SlotEvaluator

SlotEvaluator::SlotEvaluator(const Variant& variant, ChannelSet& channels,
                             const SlotAssignment& assignment)
    : variant_(variant), ch_(channels), config_(channels.config())
{
    const auto n_cells = assignment.cells.size();
    dl_index_.assign(n_cells, -1);
    ul_index_.assign(n_cells, -1);
    ul_combiners_.resize(n_cells);
    const bool csi = perfect_csi(config_);
    const int streams = config_.streams_per_ue;

    for (std::size_t c = 0; c < n_cells; ++c) {
        const int cell = static_cast<int>(c);
        const auto& cs = assignment.cells[c];
        if (cs.dl_user >= 0) {
            DlTransmitter tx{cell, cs.dl_user, cs.dl_band, cs.dl_bandwidth_hz,
                             config_.bs_tx_power_w / streams, {}, {}};
            const CMatrix& h = ch_.downlink(cell, cs.dl_user);
            try {
                auto beams = csi ? downlink_beams(h, streams)
                                 : downlink_beams(ch_.estimate(h, ChannelSet::kBsUe, cell,
                                                               cs.dl_user),
                                                  streams);
                tx.precoder = std::move(beams.bs_beams);
                tx.combiner = std::move(beams.ue_beams);
            }
            catch (const DegenerateChannelError&) {
                // silent BS; its user reports an outage
            }
            dl_index_[c] = static_cast<int>(dl_.size());
            dl_.push_back(std::move(tx));
        }
        if (cs.ul_user >= 0) {
            const double noise = thermal_noise_w(cs.ul_bandwidth_hz, config_.noise_figure_db);
            const double gain = bs_ue_gain(config_, ch_.deployment(), cell, cs.ul_user).linear();
            const double p = ul_power_control(gain, noise, config_.ul_snr_target_db,
                                              config_.ue_max_power_w);
            UlTransmitter tx{cell, cs.ul_user, cs.ul_band, cs.ul_bandwidth_hz, p / streams, {}};
            const CMatrix h = ch_.uplink(cell, cs.ul_user);
            try {
                tx.precoder = csi ? uplink_ue_precoder(h, streams)
                                  : uplink_ue_precoder(
                                        ch_.estimate(ch_.downlink(cell, cs.ul_user),
                                                     ChannelSet::kBsUe, cell, cs.ul_user)
                                            .transpose()
                                            .eval(),
                                        streams);
            }
            catch (const DegenerateChannelError&) {
            }
            ul_index_[c] = static_cast<int>(ul_.size());
            ul_.push_back(std::move(tx));
        }
    }
}

const DlTransmitter* SlotEvaluator::dl_at(int cell) const
{
    const int i = dl_index_[static_cast<std::size_t>(cell)];
    return i < 0 ? nullptr : &dl_[static_cast<std::size_t>(i)];
}

const UlTransmitter* SlotEvaluator::ul_at(int cell) const
{
    const int i = ul_index_[static_cast<std::size_t>(cell)];
    return i < 0 ? nullptr : &ul_[static_cast<std::size_t>(i)];
}

const CMatrix& SlotEvaluator::ul_combiner(int cell) const
{
    return ul_combiners_[static_cast<std::size_t>(cell)];
}

ReceiverReport SlotEvaluator::blank_report(int cell, int user, LinkDir dir, int stream,
                                           double bw) const
{
    ReceiverReport r;
    r.drop = ch_.drop();
    r.slot = ch_.slot();
    r.cell = cell;
    r.user = user;
    r.dir = dir;
    r.stream = stream;
    r.bandwidth_hz = bw;
    r.breakdown.noise_w = thermal_noise_w(
        bw, dir == LinkDir::Ul ? config_.noise_figure_db : config_.ue_noise_figure_db);
    r.sinr_db = -kInf;
    r.throughput_bps = 0.0;
    return r;
}

std::vector<ReceiverReport> SlotEvaluator::receiver_sinr_ul(int cell)
{
    std::vector<ReceiverReport> out;
    const UlTransmitter* tx = ul_at(cell);
    if (tx == nullptr) {
        return out;
    }
    const int streams = config_.streams_per_ue;
    if (tx->precoder.size() == 0) {
        for (int s = 0; s < streams; ++s) {
            out.push_back(blank_report(cell, tx->user, LinkDir::Ul, s, tx->bandwidth_hz));
        }
        return out;
    }

    const bool csi = perfect_csi(config_);
    const CMatrix h_ul = ch_.uplink(cell, tx->user);
    const CMatrix h_eff = h_ul * tx->precoder;
    const CMatrix h_eff_est =
        csi ? h_eff
            : CMatrix(ch_.estimate(ch_.downlink(cell, tx->user), ChannelSet::kBsUe, cell, tx->user)
                          .transpose() *
                      tx->precoder);

    // received DL interference directions from every co-band transmitting BS
    struct CrossLink {
        const DlTransmitter* src;
        CMatrix received;  // (bs x streams), true channel, unit power per stream
    };
    std::vector<CrossLink> cross;
    std::vector<NullCandidate> candidates;
    for (const auto& dl : dl_) {
        if (dl.cell == cell || dl.band != tx->band || dl.precoder.size() == 0) {
            continue;
        }
        const CMatrix g = ch_.bs_to_bs(cell, dl.cell);
        CrossLink link{&dl, g * dl.precoder};
        if (variant_.bsint_nulls > 0) {
            const CMatrix seen =
                csi ? link.received
                    : CMatrix(ch_.estimate(g, ChannelSet::kBsBs, std::min(cell, dl.cell),
                                           std::max(cell, dl.cell)) *
                              dl.precoder);
            NullCandidate cand{dl.cell, {}};
            const double amp = std::sqrt(dl.stream_power_w);
            for (Eigen::Index t = 0; t < seen.cols(); ++t) {
                cand.dirs.push_back(seen.col(t) * amp);
            }
            candidates.push_back(std::move(cand));
        }
        cross.push_back(std::move(link));
    }

    const DlTransmitter* own_dl = dl_at(cell);
    const bool self_tx = own_dl != nullptr && own_dl->band == tx->band &&
                         own_dl->precoder.size() > 0;
    const double cli_atten = db_to_linear(-variant_.cli_suppression_db);

    CMatrix& combiners = ul_combiners_[static_cast<std::size_t>(cell)];
    combiners = CMatrix::Zero(h_ul.rows(), streams);

    for (int s = 0; s < streams; ++s) {
        ReceiverReport r = blank_report(cell, tx->user, LinkDir::Ul, s, tx->bandwidth_hz);
        const CVector h_s = h_eff_est.col(s);
        std::vector<CVector> dirs;
        for (int t = 0; t < streams; ++t) {
            if (t != s) {
                dirs.push_back(h_eff_est.col(t));
            }
        }
        auto nulls = select_null_targets(h_s, candidates, variant_.bsint_nulls);
        dirs.insert(dirs.end(), std::make_move_iterator(nulls.begin()),
                    std::make_move_iterator(nulls.end()));
        CVector v;
        try {
            v = bsint_combiner(h_s, dirs);
        }
        catch (const DegenerateChannelError&) {
            out.push_back(r);
            continue;
        }
        combiners.col(s) = v;

        auto& b = r.breakdown;
        b.desired_w = coupled(v, h_eff.col(s)) * tx->stream_power_w;
        for (int t = 0; t < streams; ++t) {
            if (t != s) {
                b.co_direction_w += coupled(v, h_eff.col(t)) * tx->stream_power_w;
            }
        }
        for (const auto& other : ul_) {
            if (other.cell == cell || other.band != tx->band || other.precoder.size() == 0) {
                continue;
            }
            const CMatrix rx = ch_.uplink(cell, other.user) * other.precoder;
            for (Eigen::Index t = 0; t < rx.cols(); ++t) {
                b.co_direction_w += coupled(v, rx.col(t)) * other.stream_power_w;
            }
        }
        if (self_tx) {
            const CMatrix& h_si = ch_.self_interference(cell);
            for (Eigen::Index t = 0; t < own_dl->precoder.cols(); ++t) {
                b.si_residual_w += si_residual(own_dl->stream_power_w, h_si,
                                               variant_.si_cancellation_db, v,
                                               own_dl->precoder.col(t));
            }
        }
        for (const auto& link : cross) {
            double p = 0.0;
            for (Eigen::Index t = 0; t < link.received.cols(); ++t) {
                p += coupled(v, link.received.col(t)) * link.src->stream_power_w;
            }
            b.bs_to_bs_w += p * cli_atten;
        }
        const double sinr = b.sinr_linear();
        r.sinr_db = to_db(sinr);
        r.throughput_bps = throughput(sinr, tx->bandwidth_hz, kInf);
        out.push_back(r);
    }
    return out;
}

std::vector<ReceiverReport> SlotEvaluator::receiver_sinr_dl(int cell)
{
    std::vector<ReceiverReport> out;
    const DlTransmitter* tx = dl_at(cell);
    if (tx == nullptr) {
        return out;
    }
    const int streams = config_.streams_per_ue;
    if (tx->precoder.size() == 0) {
        for (int s = 0; s < streams; ++s) {
            out.push_back(blank_report(cell, tx->user, LinkDir::Dl, s, tx->bandwidth_hz));
        }
        return out;
    }

    const int victim = tx->user;
    const CMatrix h_eff = ch_.downlink(cell, victim) * tx->precoder;  // (ue x streams)

    // co-band interferers at the victim, (ue x streams) each, with per-stream power
    struct Incoming {
        CMatrix received;
        double stream_power_w;
    };
    std::vector<Incoming> codir;
    for (const auto& dl : dl_) {
        if (dl.cell == cell || dl.band != tx->band || dl.precoder.size() == 0) {
            continue;
        }
        codir.push_back({ch_.downlink(dl.cell, victim) * dl.precoder, dl.stream_power_w});
    }
    std::vector<Incoming> ue_intra;
    std::vector<Incoming> ue_inter;
    for (const auto& ul : ul_) {
        if (ul.band != tx->band || ul.precoder.size() == 0 || ul.user == victim) {
            continue;
        }
        Incoming in{ch_.ue_to_ue(victim, ul.user) * ul.precoder, ul.stream_power_w};
        (ul.cell == cell ? ue_intra : ue_inter).push_back(std::move(in));
    }
    const auto sum = [](const CVector& u, const std::vector<Incoming>& list) {
        double p = 0.0;
        for (const auto& in : list) {
            for (Eigen::Index t = 0; t < in.received.cols(); ++t) {
                p += coupled(u, in.received.col(t)) * in.stream_power_w;
            }
        }
        return p;
    };

    for (int s = 0; s < streams; ++s) {
        ReceiverReport r = blank_report(cell, victim, LinkDir::Dl, s, tx->bandwidth_hz);
        const CVector u = tx->combiner.col(s);
        auto& b = r.breakdown;
        b.desired_w = coupled(u, h_eff.col(s)) * tx->stream_power_w;
        for (int t = 0; t < streams; ++t) {
            if (t != s) {
                b.co_direction_w += coupled(u, h_eff.col(t)) * tx->stream_power_w;
            }
        }
        b.co_direction_w += sum(u, codir);
        b.ue_to_ue_intra_w = sum(u, ue_intra);
        b.ue_to_ue_inter_w = sum(u, ue_inter);
        const double sinr = b.sinr_linear();
        r.sinr_db = to_db(sinr);
        r.throughput_bps = throughput(sinr, tx->bandwidth_hz, config_.dl_sinr_cap_db);
        out.push_back(r);
    }
    return out;
}

std::vector<ReceiverReport> SlotEvaluator::evaluate()
{
    std::vector<ReceiverReport> out;
    const auto n_cells = static_cast<int>(dl_index_.size());
    for (int c = 0; c < n_cells; ++c) {
        auto r = receiver_sinr_ul(c);
        out.insert(out.end(), r.begin(), r.end());
    }
    for (int c = 0; c < n_cells; ++c) {
        auto r = receiver_sinr_dl(c);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// campaign

namespace {

struct DropOutput {
    std::vector<ReceiverReport> reports;
    std::vector<Digest> traffic;
    std::vector<Digest> fading;
};

DropOutput run_drop(const ScenarioConfig& config, const std::vector<Variant>& variants,
                    std::uint64_t drop, int n_slots, bool paired)
{
    DropOutput out;
    out.traffic.resize(variants.size());
    out.fading.resize(variants.size());
    const Deployment dep = make_drop(config, drop);
    const RoundRobin rr(dep, config.seed, drop);
    const auto probs = calibrate_activity(config.utilization, config.dl_to_ul_load_ratio);
    const int n_cells = static_cast<int>(dep.cells.size());

    for (int slot_i = 0; slot_i < n_slots; ++slot_i) {
        const auto slot = static_cast<std::uint64_t>(slot_i);
        const auto activity = sample_slot_activity(config, probs, n_cells, drop, slot);
        std::optional<ChannelSet> shared;
        if (paired) {
            shared.emplace(config, dep, drop, slot);
        }
        for (std::size_t vi = 0; vi < variants.size(); ++vi) {
            std::optional<ChannelSet> own;
            if (!paired) {
                own.emplace(config, dep, drop, slot);
            }
            ChannelSet& ch = paired ? *shared : *own;

            auto& td = out.traffic[vi];
            for (const auto& a : activity) {
                td.add(static_cast<std::uint64_t>(a.ul) | (static_cast<std::uint64_t>(a.dl) << 1));
                td.add(a.direction_draw);
            }
            // probe the serving-link draws every variant could schedule
            auto& fd = out.fading[vi];
            for (int c = 0; c < n_cells; ++c) {
                if (rr.size(c) > 0) {
                    fd.add(ch.downlink(c, rr.ul_pick(c, slot)));
                    fd.add(ch.downlink(c, rr.dl_pick(c, slot)));
                }
            }

            const auto assignment =
                schedule_slot(variants[vi].mode, config, rr, activity, slot);
            SlotEvaluator eval(variants[vi], ch, assignment);
            for (auto& r : eval.evaluate()) {
                r.variant = static_cast<int>(vi);
                out.reports.push_back(r);
            }
        }
    }
    return out;
}

CampaignResult run(const ScenarioConfig& config, const std::vector<Variant>& variants,
                   const CampaignOptions& options, bool paired)
{
    config.validate();
    if (options.n_drops < 1 || options.n_slots < 1) {
        throw ConfigError("run_campaign: n_drops and n_slots must be at least 1");
    }
    if (variants.empty()) {
        throw ConfigError("run_campaign: no variants");
    }
    for (const auto& v : variants) {
        validate_variant(config, v);
    }

    const auto n_drops = static_cast<std::size_t>(options.n_drops);
    std::vector<DropOutput> drops(n_drops);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    const auto work = [&] {
        for (std::size_t d; (d = next.fetch_add(1)) < n_drops && !failed.load();) {
            try {
                drops[d] = run_drop(config, variants, d, options.n_slots, paired);
            }
            catch (...) {
                if (!failed.exchange(true)) {
                    failure = std::current_exception();
                }
            }
        }
    };
    const int workers = std::clamp(options.workers, 1, options.n_drops);
    if (workers == 1) {
        work();
    }
    else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < workers; ++i) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    CampaignResult result;
    result.config = config;
    result.variants = variants;
    result.n_drops = options.n_drops;
    result.n_slots = options.n_slots;
    std::vector<Digest> traffic(variants.size());
    std::vector<Digest> fading(variants.size());
    for (auto& d : drops) {
        result.reports.insert(result.reports.end(), d.reports.begin(), d.reports.end());
        for (std::size_t vi = 0; vi < variants.size(); ++vi) {
            traffic[vi].add(d.traffic[vi].h);
            fading[vi].add(d.fading[vi].h);
        }
        d = DropOutput{};
    }
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        result.traffic_checksum.push_back(traffic[vi].h);
        result.fading_checksum.push_back(fading[vi].h);
    }
    return result;
}

}  // namespace

CampaignResult run_campaign(const ScenarioConfig& config, const std::vector<Variant>& variants,
                            const CampaignOptions& options)
{
    return run(config, variants, options, true);
}

CampaignResult run_campaign_unpaired(const ScenarioConfig& config,
                                     const std::vector<Variant>& variants,
                                     const CampaignOptions& options)
{
    return run(config, variants, options, false);
}

const char* const kReportCsvHeader =
    "drop,slot,cell,link_dir,mode,sinr_db,throughput_bps,desired_w,noise_w,si_w,bs2bs_w,"
    "ue2ue_intra_w,ue2ue_inter_w,codir_w,user,stream";

void write_reports_csv(std::ostream& out, const CampaignResult& result)
{
    out << format_config(result.config, "# ");
    out << "# drops = " << result.n_drops << "\n# slots = " << result.n_slots << "\n";
    out << kReportCsvHeader << '\n';
    char buf[512];
    for (const auto& r : result.reports) {
        const auto& b = r.breakdown;
        std::snprintf(buf, sizeof buf,
                      "%llu,%llu,%d,%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%d,%d\n",
                      static_cast<unsigned long long>(r.drop),
                      static_cast<unsigned long long>(r.slot), r.cell, to_string(r.dir),
                      result.variants[static_cast<std::size_t>(r.variant)].name.c_str(), r.sinr_db,
                      r.throughput_bps, b.desired_w, b.noise_w, b.si_residual_w, b.bs_to_bs_w,
                      b.ue_to_ue_intra_w, b.ue_to_ue_inter_w, b.co_direction_w, r.user, r.stream);
        out << buf;
    }
}

}  // namespace fdsim
