#include "fdsim/channel.hpp"

#include <algorithm>
#include <cmath>

#include "fdsim/propagation.hpp"

namespace fdsim {

namespace {

// Lowest BS height for which the UMa NLOS expression stays physical.
constexpr double kUmaMinBsHeightM = 10.0;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

CVector steering(int n, double angle_rad)
{
    CVector a(n);
    const double phase = kPi * std::sin(angle_rad);
    for (int i = 0; i < n; ++i) {
        a(i) = std::polar(1.0, phase * i);
    }
    return a;
}

}  // namespace

double LinkGain::linear() const { return db_to_linear(gain_db()); }

CMatrix draw_fading(int rx, int tx, const FadingSpec& spec, Stream& stream)
{
    CMatrix h(rx, tx);
    if (spec.kind == FadingKind::Rayleigh) {
        for (int c = 0; c < tx; ++c) {
            for (int r = 0; r < rx; ++r) {
                h(r, c) = stream.complex_normal();
            }
        }
        return h;
    }

    double los_weight = 1.0;
    if (!(std::isinf(spec.rician_k_db) && spec.rician_k_db > 0)) {
        const double k = db_to_linear(spec.rician_k_db);
        los_weight = k / (k + 1.0);
    }
    const double scatter_weight = 1.0 - los_weight;
    h = std::sqrt(los_weight) * steering(rx, spec.los_aoa_rad) *
        steering(tx, spec.los_aod_rad).transpose();
    if (scatter_weight > 0.0) {
        const double s = std::sqrt(scatter_weight);
        for (int c = 0; c < tx; ++c) {
            for (int r = 0; r < rx; ++r) {
                h(r, c) += s * stream.complex_normal();
            }
        }
    }
    return h;
}

LinkGain bs_ue_gain(const ScenarioConfig& config, const Deployment& d, int cell, int user)
{
    const Cell& c = d.cells[static_cast<std::size_t>(cell)];
    const Site& site = d.sites[static_cast<std::size_t>(c.site)];
    const User& u = d.users[static_cast<std::size_t>(user)];
    const Vec2 delta = u.position - site.position;
    const double dist = std::max(norm(delta), config.min_drop_distance_m);

    LinkGain g;
    g.los = d.is_los(user, c.site);
    g.pathloss_db = pathloss_uma(dist, config.carrier_hz, config.bs_height_m, u.height, g.los,
                                 config.min_drop_distance_m);
    g.antenna_gain_db = c.omni ? 0.0 : sector_gain_db(c.bearing, azimuth(delta));
    if (u.serving_cell == cell) {
        g.antenna_gain_db += config.bs_array_gain_db;
    }
    return g;
}

LinkGain bs_to_bs_gain(const ScenarioConfig& config, const Deployment& d, int cell_a, int cell_b)
{
    const Cell& a = d.cells[static_cast<std::size_t>(cell_a)];
    const Cell& b = d.cells[static_cast<std::size_t>(cell_b)];
    if (a.site == b.site) {
        throw DomainError("bs_to_bs_gain: cells share a site; use the intra-site loss");
    }
    const Vec2 ab = d.sites[static_cast<std::size_t>(b.site)].position -
                    d.sites[static_cast<std::size_t>(a.site)].position;
    LinkGain g;
    g.los = true;
    g.pathloss_db = free_space_pathloss(norm(ab), config.carrier_hz);
    const double az_ab = azimuth(ab);
    const double az_ba = wrap_angle(az_ab + kPi);
    g.antenna_gain_db = (a.omni ? 0.0 : sector_gain_db(a.bearing, az_ab)) +
                        (b.omni ? 0.0 : sector_gain_db(b.bearing, az_ba));
    return g;
}

LinkGain bs_bs_coupling(const ScenarioConfig& config, const Deployment& d, int cell_a, int cell_b)
{
    if (cell_a == cell_b) {
        throw DomainError("bs_bs_coupling: a cell does not couple to itself across sites");
    }
    if (d.cells[static_cast<std::size_t>(cell_a)].site ==
        d.cells[static_cast<std::size_t>(cell_b)].site) {
        return LinkGain{config.intra_site_cli_loss_db, 0.0, true};
    }
    return bs_to_bs_gain(config, d, cell_a, cell_b);
}

LinkGain ue_to_ue_gain(const ScenarioConfig& config, const Deployment& d, int user_a, int user_b)
{
    const User& a = d.users[static_cast<std::size_t>(user_a)];
    const User& b = d.users[static_cast<std::size_t>(user_b)];
    const double dist = std::max(norm(a.position - b.position), config.min_drop_distance_m);
    LinkGain g;
    g.los = false;
    g.pathloss_db = pathloss_uma(dist, config.carrier_hz, std::max(a.height, kUmaMinBsHeightM),
                                 b.height, false, config.min_drop_distance_m) +
                    config.ue_ue_extra_loss_db;
    return g;
}

ChannelSet::ChannelSet(const ScenarioConfig& config, const Deployment& deployment,
                       std::uint64_t drop, std::uint64_t slot)
    : config_(config), deployment_(deployment), drop_(drop), slot_(slot)
{}

Stream ChannelSet::fading_stream(int link_class, int a, int b) const
{
    return Stream(config_.seed, StreamTag::Fading,
                  {drop_, slot_, static_cast<std::uint64_t>(link_class),
                   static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)});
}

const CMatrix& ChannelSet::downlink(int cell, int user)
{
    const Key key{kBsUe, cell, user};
    if (auto it = cache_.find(key); it != cache_.end()) {
        return it->second;
    }
    Stream s = fading_stream(kBsUe, cell, user);
    CMatrix h = draw_fading(config_.ue_antennas, config_.bs_antennas, FadingSpec{}, s);
    h *= std::sqrt(bs_ue_gain(config_, deployment_, cell, user).linear());
    return cache_.emplace(key, std::move(h)).first->second;
}

CMatrix ChannelSet::bs_to_bs(int rx_cell, int tx_cell)
{
    const int lo = std::min(rx_cell, tx_cell);
    const int hi = std::max(rx_cell, tx_cell);
    const Key key{kBsBs, lo, hi};
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        Stream s = fading_stream(kBsBs, lo, hi);
        CMatrix h = draw_fading(config_.bs_antennas, config_.bs_antennas, FadingSpec{}, s);
        h *= std::sqrt(bs_bs_coupling(config_, deployment_, lo, hi).linear());
        it = cache_.emplace(key, std::move(h)).first;
    }
    // stored as lo <- hi
    if (rx_cell == lo) {
        return it->second;
    }
    return it->second.transpose();
}

CMatrix ChannelSet::ue_to_ue(int rx_user, int tx_user)
{
    const int lo = std::min(rx_user, tx_user);
    const int hi = std::max(rx_user, tx_user);
    const Key key{kUeUe, lo, hi};
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        Stream s = fading_stream(kUeUe, lo, hi);
        CMatrix h = draw_fading(config_.ue_antennas, config_.ue_antennas, FadingSpec{}, s);
        h *= std::sqrt(ue_to_ue_gain(config_, deployment_, lo, hi).linear());
        it = cache_.emplace(key, std::move(h)).first;
    }
    if (rx_user == lo) {
        return it->second;
    }
    return it->second.transpose();
}

const CMatrix& ChannelSet::self_interference(int cell)
{
    const Key key{kSelf, cell, cell};
    if (auto it = cache_.find(key); it != cache_.end()) {
        return it->second;
    }
    Stream s = fading_stream(kSelf, cell, cell);
    FadingSpec spec;
    spec.kind = FadingKind::Rician;
    spec.rician_k_db = config_.rician_k_db;
    CMatrix h = draw_fading(config_.bs_antennas, config_.bs_antennas, spec, s);
    return cache_.emplace(key, std::move(h)).first->second;
}

CMatrix ChannelSet::estimate(const CMatrix& truth, int link_class, int a, int b)
{
    if (std::isinf(config_.csi_error_ratio_db) && config_.csi_error_ratio_db < 0) {
        return truth;
    }
    const double entry_power = truth.squaredNorm() / static_cast<double>(truth.size());
    const double sigma = std::sqrt(db_to_linear(config_.csi_error_ratio_db) * entry_power);
    Stream s(config_.seed, StreamTag::CsiError,
             {drop_, slot_, static_cast<std::uint64_t>(link_class), static_cast<std::uint64_t>(a),
              static_cast<std::uint64_t>(b)});
    CMatrix est = truth;
    for (Eigen::Index c = 0; c < est.cols(); ++c) {
        for (Eigen::Index r = 0; r < est.rows(); ++r) {
            est(r, c) += sigma * s.complex_normal();
        }
    }
    return est;
}

}  // namespace fdsim
