#include "fdsim/deployment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fdsim/channel.hpp"
#include "fdsim/propagation.hpp"
#include "fdsim/rng.hpp"

namespace fdsim {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

double azimuth(Vec2 v) { return std::atan2(v.y, v.x); }

std::vector<int> Deployment::attached_users(int cell) const
{
    std::vector<int> out;
    for (int u = 0; u < static_cast<int>(users.size()); ++u) {
        if (users[static_cast<std::size_t>(u)].serving_cell == cell) {
            out.push_back(u);
        }
    }
    return out;
}

Deployment build_hex_layout(double isd_m, int n_sites, int sectors_per_site)
{
    if (!(isd_m > 0)) {
        throw ConfigError("build_hex_layout: isd_m must be positive");
    }
    if (n_sites != 1 && n_sites != 7 && n_sites != 19) {
        throw ConfigError("build_hex_layout: n_sites must be 1, 7 or 19 (got " +
                          std::to_string(n_sites) + ")");
    }
    if (sectors_per_site != 1 && sectors_per_site != 3) {
        throw ConfigError("build_hex_layout: sectors_per_site must be 1 or 3");
    }

    std::vector<Vec2> positions{{0.0, 0.0}};
    auto polar = [](double r, double deg) {
        const double a = deg * kPi / 180.0;
        return Vec2{r * std::cos(a), r * std::sin(a)};
    };
    if (n_sites >= 7) {
        for (int k = 0; k < 6; ++k) {
            positions.push_back(polar(isd_m, 60.0 * k));
        }
    }
    if (n_sites == 19) {
        for (int k = 0; k < 6; ++k) {
            positions.push_back(polar(2.0 * isd_m, 60.0 * k));
            positions.push_back(polar(std::sqrt(3.0) * isd_m, 30.0 + 60.0 * k));
        }
    }

    Deployment d;
    d.isd_m = isd_m;
    for (int s = 0; s < n_sites; ++s) {
        Site site;
        site.position = positions[static_cast<std::size_t>(s)];
        if (sectors_per_site == 3) {
            for (double deg : kSectorBearingsDeg) {
                site.sector_bearings.push_back(deg * kPi / 180.0);
            }
            for (int k = 0; k < 3; ++k) {
                d.cells.push_back(Cell{s, k, site.sector_bearings[static_cast<std::size_t>(k)], false});
            }
        }
        else {
            d.cells.push_back(Cell{s, 0, 0.0, true});
        }
        d.sites.push_back(std::move(site));
    }
    return d;
}

Deployment drop_users(Deployment d, const ScenarioConfig& config, int n_users,
                      std::uint64_t drop_index)
{
    d.users.clear();
    d.los.clear();
    if (n_users <= 0) {
        return d;
    }

    const double radius = d.isd_m / std::sqrt(3.0);
    double x_lo = std::numeric_limits<double>::max();
    double x_hi = std::numeric_limits<double>::lowest();
    double y_lo = x_lo;
    double y_hi = x_hi;
    for (const auto& s : d.sites) {
        x_lo = std::min(x_lo, s.position.x - radius);
        x_hi = std::max(x_hi, s.position.x + radius);
        y_lo = std::min(y_lo, s.position.y - radius);
        y_hi = std::max(y_hi, s.position.y + radius);
    }

    Stream positions(config.seed, StreamTag::UserDrop, {drop_index});
    const long long retry_cap = 1000LL * n_users + 1000;
    long long attempts = 0;
    d.users.reserve(static_cast<std::size_t>(n_users));
    while (static_cast<int>(d.users.size()) < n_users) {
        if (++attempts > retry_cap) {
            throw ConfigError("drop_users: rejection sampling exceeded retry cap; "
                              "min_drop_distance_m too large for the layout");
        }
        const Vec2 p{positions.uniform(x_lo, x_hi), positions.uniform(y_lo, y_hi)};
        bool covered = false;
        bool too_close = false;
        for (const auto& s : d.sites) {
            const double r = norm(p - s.position);
            covered = covered || r <= radius;
            too_close = too_close || r < config.min_drop_distance_m;
        }
        if (covered && !too_close) {
            d.users.push_back(User{p, config.ue_height_m, -1});
        }
    }

    Stream los(config.seed, StreamTag::LinkLos, {drop_index});
    d.los.resize(d.users.size() * d.sites.size());
    for (std::size_t u = 0; u < d.users.size(); ++u) {
        for (std::size_t s = 0; s < d.sites.size(); ++s) {
            const double dist = norm(d.users[u].position - d.sites[s].position);
            d.los[u * d.sites.size() + s] = los.bernoulli(los_probability(dist)) ? 1 : 0;
        }
    }

    for (int u = 0; u < n_users; ++u) {
        int best = -1;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < static_cast<int>(d.cells.size()); ++c) {
            const double g = bs_ue_gain(config, d, c, u).gain_db();
            if (g > best_gain) {
                best_gain = g;
                best = c;
            }
        }
        d.users[static_cast<std::size_t>(u)].serving_cell = best;
    }
    return d;
}

Deployment make_drop(const ScenarioConfig& config, std::uint64_t drop_index)
{
    return drop_users(build_hex_layout(config.isd_m, config.n_sites, config.sectors_per_site),
                      config, config.users_per_drop, drop_index);
}

}  // namespace fdsim
