#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fdsim/beamforming.hpp"
#include "fdsim/channel.hpp"
#include "fdsim/config.hpp"
#include "fdsim/traffic.hpp"

namespace fdsim {

inline constexpr double kBoltzmann = 1.380649e-23;
inline constexpr double kReferenceTemperatureK = 290.0;

/// Thermal noise k T B 10^(NF/10) in watts.
double thermal_noise_w(double bandwidth_hz, double noise_figure_db);

/// UL power reaching `snr_target_db` over the coupling gain, capped at `p_max_w`.
double ul_power_control(double coupling_gain_linear, double noise_w, double snr_target_db,
                        double p_max_w);

/// Residual self-interference |v^H H_SI w|^2 p_tx 10^(-cancellation/10).
double si_residual(double bs_tx_power_w, const CMatrix& si_channel, double si_cancellation_db,
                   const CVector& combiner, const CVector& precoder);

/// Shannon rate bandwidth * log2(1 + min(sinr, 10^(cap/10))).
double throughput(double sinr_linear, double bandwidth_hz, double sinr_cap_db);

/// Per-receiver power ledger by interference source, watts.
struct InterferenceBreakdown {
    double desired_w = 0.0;
    double noise_w = 0.0;
    double si_residual_w = 0.0;
    double bs_to_bs_w = 0.0;
    double ue_to_ue_intra_w = 0.0;
    double ue_to_ue_inter_w = 0.0;
    double co_direction_w = 0.0;  // same-direction inter-cell (and residual inter-stream)

    double impairment_w() const
    {
        return noise_w + si_residual_w + bs_to_bs_w + ue_to_ue_intra_w + ue_to_ue_inter_w +
               co_direction_w;
    }
    double sinr_linear() const { return desired_w / impairment_w(); }
};

enum class LinkDir { Ul, Dl };
const char* to_string(LinkDir d);

/// One algorithm variant evaluated on the shared random streams.
struct Variant {
    std::string name;
    DuplexMode mode = DuplexMode::Fd;
    int bsint_nulls = 0;
    double si_cancellation_db = 0.0;
    double cli_suppression_db = 0.0;

    static Variant from_config(const ScenarioConfig& config);
};

/// Conventional label: "HD", "DTDD", "FD", with "-<n>BSint" when nulls are used.
std::string variant_label(DuplexMode mode, int bsint_nulls);

/// FD, FD-4BSint, FD-6BSint, DTDD, DTDD-4BSint, DTDD-6BSint, HD, on `config`'s suppression.
std::vector<Variant> standard_variants(const ScenarioConfig& config);

/// Ledger and rate of one received stream.
struct ReceiverReport {
    std::uint64_t drop = 0;
    std::uint64_t slot = 0;
    int variant = 0;
    int cell = -1;
    int user = -1;
    LinkDir dir = LinkDir::Ul;
    int stream = 0;
    double bandwidth_hz = 0.0;
    double sinr_db = 0.0;
    double throughput_bps = 0.0;
    InterferenceBreakdown breakdown;
};

struct DlTransmitter {
    int cell = -1;
    int user = -1;
    Band band = Band::Shared;
    double bandwidth_hz = 0.0;
    double stream_power_w = 0.0;
    CMatrix precoder;  // (bs x streams)
    CMatrix combiner;  // UE side, (ue x streams)
};

struct UlTransmitter {
    int cell = -1;
    int user = -1;
    Band band = Band::Shared;
    double bandwidth_hz = 0.0;
    double stream_power_w = 0.0;
    CMatrix precoder;  // UE side, (ue x streams)
};

/**
 * Beamforming and interference accounting for one variant in one slot.
 *
 * Constructing the evaluator fixes every transmitter (precoders and UL powers);
 * the receiver_* calls then enumerate each co-band transmitter into exactly one
 * ledger field of the victim.
 */
class SlotEvaluator {
public:
    SlotEvaluator(const Variant& variant, ChannelSet& channels, const SlotAssignment& assignment);

    /// Reports for the UL streams received at `cell` (empty when it schedules no UL).
    std::vector<ReceiverReport> receiver_sinr_ul(int cell);
    /// Reports for the DL streams of `cell`'s scheduled user (empty when no DL).
    std::vector<ReceiverReport> receiver_sinr_dl(int cell);
    /// All receivers, UL then DL, in cell order.
    std::vector<ReceiverReport> evaluate();

    const std::vector<DlTransmitter>& downlinks() const { return dl_; }
    const std::vector<UlTransmitter>& uplinks() const { return ul_; }
    /// BS receive combiner used for `cell`'s UL, (bs x streams); empty before receiver_sinr_ul.
    const CMatrix& ul_combiner(int cell) const;

private:
    const DlTransmitter* dl_at(int cell) const;
    const UlTransmitter* ul_at(int cell) const;
    ReceiverReport blank_report(int cell, int user, LinkDir dir, int stream, double bw) const;

    const Variant& variant_;
    ChannelSet& ch_;
    const ScenarioConfig& config_;
    std::vector<DlTransmitter> dl_;
    std::vector<UlTransmitter> ul_;
    std::vector<int> dl_index_;  // per cell, -1 if none
    std::vector<int> ul_index_;
    std::vector<bool> dl_outage_;
    std::vector<bool> ul_outage_;
    std::vector<CMatrix> ul_combiners_;
};

struct CampaignOptions {
    int n_drops = 1;
    int n_slots = 1;
    int workers = 1;
};

struct CampaignResult {
    ScenarioConfig config;
    std::vector<Variant> variants;
    int n_drops = 0;
    int n_slots = 0;
    /// Sorted by (drop, slot, variant, direction, cell, stream).
    std::vector<ReceiverReport> reports;
    /// Per variant: digest of the traffic draws and of the probed fading draws it consumed.
    std::vector<std::uint64_t> traffic_checksum;
    std::vector<std::uint64_t> fading_checksum;
};

/**
 * Monte-Carlo campaign. For every drop: deploy and associate users; for every
 * slot: draw traffic, then schedule, beamform and account interference for
 * each variant on one shared ChannelSet (common random numbers).
 *
 * Output is a deterministic function of (config, variants, drops, slots); the
 * worker count only changes wall-clock time.
 */
CampaignResult run_campaign(const ScenarioConfig& config, const std::vector<Variant>& variants,
                            const CampaignOptions& options);

/// Same streams, but each variant is run as its own campaign and the results merged.
CampaignResult run_campaign_unpaired(const ScenarioConfig& config,
                                     const std::vector<Variant>& variants,
                                     const CampaignOptions& options);

/// CSV header: drop,slot,cell,link_dir,mode,sinr_db,throughput_bps,desired_w,noise_w,si_w,...
extern const char* const kReportCsvHeader;
void write_reports_csv(std::ostream& out, const CampaignResult& result);

}  // namespace fdsim
