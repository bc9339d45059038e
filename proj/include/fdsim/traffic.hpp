#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fdsim/config.hpp"
#include "fdsim/deployment.hpp"
#include "fdsim/rng.hpp"

namespace fdsim {

/// Per-slot probabilities that a cell has UL and DL demand.
struct ActivityProbabilities {
    double ul = 0.0;
    double dl = 0.0;

    /// Probability that at least one direction has demand.
    double busy() const { return 1.0 - (1.0 - ul) * (1.0 - dl); }
};

/**
 * Stationary Bernoulli activity with P(busy) = utilization and
 * P(dl) = min(1, ratio * P(ul)), directions independent.
 *
 * At utilization 1 with ratio >= 1 every P(ul) in [1/ratio..1] is consistent;
 * the maximal solution (both always active) is returned.
 * Throws ConfigError when utilization is outside [0,1] or ratio <= 0.
 */
ActivityProbabilities calibrate_activity(double utilization, double dl_to_ul_ratio);

/// Demand of one cell in one slot plus the pre-drawn D-TDD tie-break variate.
struct CellActivity {
    bool ul = false;
    bool dl = false;
    double direction_draw = 0.0;  // uniform in [0,1)
};

/// Draw one cell's activity. Uses a fixed number of variates so modes stay paired.
CellActivity sample_activity(const ActivityProbabilities& probs, Stream& stream);

/// Activity of every cell for (drop, slot), independent across cells.
std::vector<CellActivity> sample_slot_activity(const ScenarioConfig& config,
                                               const ActivityProbabilities& probs, int n_cells,
                                               std::uint64_t drop, std::uint64_t slot);

enum class Direction { Idle, Ul, Dl, Both };

const char* to_string(Direction d);

/// D-TDD direction: the pending one, or DL with probability ratio/(ratio+1) when both are.
Direction dtdd_direction(const CellActivity& activity, double dl_to_ul_ratio);

/// Frequency resource a link is scheduled on.
enum class Band { Shared, UplinkHalf, DownlinkHalf };

struct CellSchedule {
    Direction direction = Direction::Idle;
    int ul_user = -1;
    int dl_user = -1;
    double ul_bandwidth_hz = 0.0;
    double dl_bandwidth_hz = 0.0;
    Band ul_band = Band::Shared;
    Band dl_band = Band::Shared;
};

struct SlotAssignment {
    DuplexMode mode = DuplexMode::Fd;
    std::vector<CellSchedule> cells;
};

/// Per-drop random visiting order of every cell's attached users.
class RoundRobin {
public:
    RoundRobin(const Deployment& deployment, std::uint64_t seed, std::uint64_t drop);

    std::size_t size(int cell) const { return order_[static_cast<std::size_t>(cell)].size(); }
    int ul_pick(int cell, std::uint64_t slot) const;
    /// Offset by half a cycle so UL and DL picks differ whenever a cell has two or more users.
    int dl_pick(int cell, std::uint64_t slot) const;

private:
    std::vector<std::vector<int>> order_;
};

/**
 * Assign users and bandwidth for one slot.
 *
 * HD_FDD: UL and DL each on their own half band. DTDD: one direction per cell
 * on the full band. FD: one UL and one DL user together on the full band.
 * Cells with no attached users stay idle.
 */
SlotAssignment schedule_slot(DuplexMode mode, const ScenarioConfig& config, const RoundRobin& rr,
                             std::span<const CellActivity> activity, std::uint64_t slot);

}  // namespace fdsim
