#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <tuple>

#include <Eigen/Dense>

#include "fdsim/config.hpp"
#include "fdsim/deployment.hpp"
#include "fdsim/rng.hpp"

namespace fdsim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Composite large-scale gain of one link.
struct LinkGain {
    double pathloss_db = 0.0;
    double antenna_gain_db = 0.0;
    bool los = false;

    double gain_db() const { return antenna_gain_db - pathloss_db; }
    double linear() const;
};

enum class FadingKind { Rayleigh, Rician };

struct FadingSpec {
    FadingKind kind = FadingKind::Rayleigh;
    double rician_k_db = 15.0;
    // Arrival/departure angles of the deterministic LOS component.
    double los_aoa_rad = kPiOver6;
    double los_aod_rad = -kPiOver6;

    static constexpr double kPiOver6 = 0.52359877559829887308;
};

/**
 * Small-scale fading matrix with unit mean power per entry.
 *
 * Rayleigh: i.i.d. CN(0,1). Rician: sqrt(K/(K+1)) a b^T + sqrt(1/(K+1)) G,
 * where a, b are half-wavelength ULA steering vectors at fixed
 * angles and G is i.i.d. CN(0,1). K = +inf gives the deterministic LOS term.
 */
CMatrix draw_fading(int rx, int tx, const FadingSpec& spec, Stream& stream);

/// Serving or interfering BS(cell) <-> UE large-scale gain. Identical in both directions.
LinkGain bs_ue_gain(const ScenarioConfig& config, const Deployment& d, int cell, int user);

/**
 * Inter-site BS-to-BS gain: free-space LOS pathloss plus both sector patterns.
 * Symmetric in (cell_a, cell_b). Throws DomainError for co-sited cells, whose
 * coupling is the fixed intra-site loss instead.
 */
LinkGain bs_to_bs_gain(const ScenarioConfig& config, const Deployment& d, int cell_a, int cell_b);

/// BS-to-BS coupling for any pair of distinct cells (intra-site loss when co-sited).
LinkGain bs_bs_coupling(const ScenarioConfig& config, const Deployment& d, int cell_a, int cell_b);

/// UE-to-UE gain: UMa NLOS with low-antenna heights plus the extra loss.
LinkGain ue_to_ue_gain(const ScenarioConfig& config, const Deployment& d, int user_a, int user_b);

/**
 * Per-slot channel realizations for every link class, generated lazily.
 *
 * Each matrix is a pure function of (seed, drop, slot, link identity) and
 * includes sqrt(linear large-scale gain). Reciprocal pairs are drawn once:
 * the UL matrix is the transpose of the DL one, and BS-BS / UE-UE matrices
 * are transposes of each other across direction.
 */
class ChannelSet {
public:
    enum LinkClass : int { kBsUe = 1, kBsBs = 2, kUeUe = 3, kSelf = 4 };

    ChannelSet(const ScenarioConfig& config, const Deployment& deployment, std::uint64_t drop,
               std::uint64_t slot);

    /// DL channel cell -> user, (ue_antennas x bs_antennas).
    const CMatrix& downlink(int cell, int user);
    /// UL channel user -> cell, (bs_antennas x ue_antennas).
    CMatrix uplink(int cell, int user) { return downlink(cell, user).transpose(); }
    /// BS-to-BS channel from tx_cell into rx_cell, (bs x bs).
    CMatrix bs_to_bs(int rx_cell, int tx_cell);
    /// UE-to-UE channel from tx_user into rx_user, (ue x ue).
    CMatrix ue_to_ue(int rx_user, int tx_user);
    /// Self-interference channel of one cell, unit large-scale gain, (bs x bs).
    const CMatrix& self_interference(int cell);

    /// Channel as seen by the estimator (adds CSI error when configured).
    CMatrix estimate(const CMatrix& truth, int link_class, int a, int b);

    const ScenarioConfig& config() const { return config_; }
    const Deployment& deployment() const { return deployment_; }
    std::uint64_t drop() const { return drop_; }
    std::uint64_t slot() const { return slot_; }

private:
    using Key = std::tuple<int, int, int>;

    Stream fading_stream(int link_class, int a, int b) const;

    const ScenarioConfig& config_;
    const Deployment& deployment_;
    std::uint64_t drop_;
    std::uint64_t slot_;
    std::map<Key, CMatrix> cache_;
};

}  // namespace fdsim
