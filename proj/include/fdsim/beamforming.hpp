#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "fdsim/channel.hpp"

namespace fdsim {

/// The channel cannot support the requested streams; the slot is an outage.
class DegenerateChannelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Relative singular-value threshold below which a channel counts as rank deficient.
inline constexpr double kRankTolerance = 1e-10;

/// Columns are unit-norm transmit beams, (tx_antennas x streams).
struct Precoder {
    CMatrix beams;
};

/// Columns are unit-norm receive beams, (rx_antennas x streams).
struct Combiner {
    CMatrix beams;
};

/**
 * Zero-forcing precoder for an effective (streams x tx) channel.
 *
 * Columns of the Moore-Penrose right pseudo-inverse, each normalized, so
 * h_effective * beams is diagonal with positive real entries.
 * Throws DegenerateChannelError when h_effective is not of full row rank.
 */
Precoder zf_precoder(const CMatrix& h_effective);

/**
 * BSint receive combiner: the normalized projection of `h_desired` onto the
 * orthogonal complement of span(interferer_dirs).
 *
 * The result nulls every listed direction and, among unit vectors that do,
 * maximizes |v^H h_desired|. Throws ConfigError if more than M-1 directions
 * are given, DegenerateChannelError if h_desired lies in their span.
 */
CVector bsint_combiner(const CVector& h_desired, std::span<const CVector> interferer_dirs);

/// One DL-active interfering BS as seen from a victim receiver.
struct NullCandidate {
    int cell = -1;
    /// Received directions at the victim, one per stream, scaled by sqrt(stream power).
    std::vector<CVector> dirs;
};

/**
 * Choose the `n_nulls` candidates with the largest interference power at the
 * victim under matched-filter combining on `h_desired`; ties go to the lower
 * cell index. Returns the selected candidates' directions.
 */
std::vector<CVector> select_null_targets(const CVector& h_desired,
                                         std::span<const NullCandidate> candidates, int n_nulls);

/// Equal split of the total power across streams.
std::vector<double> equal_power_allocation(int n_streams, double total_power_w);

/// Single-user beams for one BS<->UE link.
struct LinkBeams {
    CMatrix bs_beams;  // BS side, (bs x streams)
    CMatrix ue_beams;  // UE side, (ue x streams)
};

/**
 * Downlink: the UE combines on the dominant left singular vectors of the
 * (ue x bs) channel and the BS zero-forces the resulting effective channel.
 */
LinkBeams downlink_beams(const CMatrix& h_dl, int streams);

/// Uplink UE precoder: dominant right singular vectors of the (bs x ue) channel.
CMatrix uplink_ue_precoder(const CMatrix& h_ul, int streams);

}  // namespace fdsim
