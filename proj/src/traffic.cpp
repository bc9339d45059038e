#include "fdsim/traffic.hpp"

#include <algorithm>
#include <cmath>

namespace fdsim {

ActivityProbabilities calibrate_activity(double utilization, double ratio)
{
    if (!(utilization >= 0.0 && utilization <= 1.0)) {
        throw ConfigError("calibrate_activity: utilization must lie in [0,1]");
    }
    if (!(ratio > 0.0)) {
        throw ConfigError("calibrate_activity: dl_to_ul_ratio must be positive");
    }
    if (utilization == 1.0) {
        return {1.0, std::min(1.0, ratio)};
    }
    // smaller root of r p^2 - (1 + r) p + u = 0, i.e. busy(p) = p + r p - r p^2 = u,
    // written without cancellation; it satisfies r p < 1 for u < 1
    const double b = 1.0 + ratio;
    const double p = 2.0 * utilization / (b + std::sqrt(b * b - 4.0 * ratio * utilization));
    ActivityProbabilities out{p, std::min(1.0, ratio * p)};
    if (out.ul < 0.0 || out.ul > 1.0) {
        throw ConfigError("calibrate_activity: infeasible utilization/ratio");
    }
    return out;
}

CellActivity sample_activity(const ActivityProbabilities& probs, Stream& stream)
{
    CellActivity a;
    a.ul = stream.uniform() < probs.ul;
    a.dl = stream.uniform() < probs.dl;
    a.direction_draw = stream.uniform();
    return a;
}

std::vector<CellActivity> sample_slot_activity(const ScenarioConfig& config,
                                               const ActivityProbabilities& probs, int n_cells,
                                               std::uint64_t drop, std::uint64_t slot)
{
    std::vector<CellActivity> out;
    out.reserve(static_cast<std::size_t>(n_cells));
    for (int c = 0; c < n_cells; ++c) {
        Stream s(config.seed, StreamTag::Traffic, {drop, slot, static_cast<std::uint64_t>(c)});
        out.push_back(sample_activity(probs, s));
    }
    return out;
}

const char* to_string(Direction d)
{
    switch (d) {
    case Direction::Idle: return "IDLE";
    case Direction::Ul: return "UL";
    case Direction::Dl: return "DL";
    case Direction::Both: return "BOTH";
    }
    return "?";
}

Direction dtdd_direction(const CellActivity& activity, double ratio)
{
    if (activity.ul && activity.dl) {
        return activity.direction_draw < ratio / (ratio + 1.0) ? Direction::Dl : Direction::Ul;
    }
    if (activity.ul) {
        return Direction::Ul;
    }
    if (activity.dl) {
        return Direction::Dl;
    }
    return Direction::Idle;
}

RoundRobin::RoundRobin(const Deployment& deployment, std::uint64_t seed, std::uint64_t drop)
{
    order_.resize(deployment.cells.size());
    for (std::size_t c = 0; c < deployment.cells.size(); ++c) {
        auto users = deployment.attached_users(static_cast<int>(c));
        Stream s(seed, StreamTag::UserOrder, {drop, static_cast<std::uint64_t>(c)});
        std::shuffle(users.begin(), users.end(), s.engine());
        order_[c] = std::move(users);
    }
}

int RoundRobin::ul_pick(int cell, std::uint64_t slot) const
{
    const auto& o = order_[static_cast<std::size_t>(cell)];
    return o.empty() ? -1 : o[slot % o.size()];
}

int RoundRobin::dl_pick(int cell, std::uint64_t slot) const
{
    const auto& o = order_[static_cast<std::size_t>(cell)];
    return o.empty() ? -1 : o[(slot + o.size() / 2) % o.size()];
}

SlotAssignment schedule_slot(DuplexMode mode, const ScenarioConfig& config, const RoundRobin& rr,
                             std::span<const CellActivity> activity, std::uint64_t slot)
{
    SlotAssignment out;
    out.mode = mode;
    out.cells.resize(activity.size());
    const double full = config.system_bandwidth_hz;

    for (std::size_t c = 0; c < activity.size(); ++c) {
        const int cell = static_cast<int>(c);
        auto& cs = out.cells[c];
        const auto& act = activity[c];
        if (rr.size(cell) == 0) {
            continue;
        }

        bool serve_ul = false;
        bool serve_dl = false;
        switch (mode) {
        case DuplexMode::HdFdd:
            serve_ul = act.ul;
            serve_dl = act.dl;
            break;
        case DuplexMode::Dtdd: {
            const Direction d = dtdd_direction(act, config.dl_to_ul_load_ratio);
            serve_ul = d == Direction::Ul;
            serve_dl = d == Direction::Dl;
            break;
        }
        case DuplexMode::Fd:
            if (act.ul && act.dl && rr.size(cell) < 2) {
                // a lone half-duplex UE cannot take both directions
                const Direction d = dtdd_direction(act, config.dl_to_ul_load_ratio);
                serve_ul = d == Direction::Ul;
                serve_dl = d == Direction::Dl;
            }
            else {
                serve_ul = act.ul;
                serve_dl = act.dl;
            }
            break;
        }

        const bool split = mode == DuplexMode::HdFdd;
        if (serve_ul) {
            cs.ul_user = rr.ul_pick(cell, slot);
            cs.ul_bandwidth_hz = split ? full / 2.0 : full;
            cs.ul_band = split ? Band::UplinkHalf : Band::Shared;
        }
        if (serve_dl) {
            cs.dl_user = rr.dl_pick(cell, slot);
            cs.dl_bandwidth_hz = split ? full / 2.0 : full;
            cs.dl_band = split ? Band::DownlinkHalf : Band::Shared;
        }
        cs.direction = serve_ul && serve_dl ? Direction::Both
                       : serve_ul           ? Direction::Ul
                       : serve_dl           ? Direction::Dl
                                            : Direction::Idle;
    }
    return out;
}

}  // namespace fdsim
