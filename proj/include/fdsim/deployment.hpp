#pragma once

#include <cstdint>
#include <vector>

#include "fdsim/config.hpp"

namespace fdsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
double norm(Vec2 v);
/// Azimuth of v measured counter-clockwise from east, radians.
double azimuth(Vec2 v);

struct Site {
    Vec2 position;
    std::vector<double> sector_bearings;  // empty for an omni site
};

struct Cell {
    int site = 0;
    int sector = 0;
    double bearing = 0.0;
    bool omni = true;
};

struct User {
    Vec2 position;
    double height = 1.5;
    int serving_cell = -1;
};

/// Sites, cells and dropped users of one Monte-Carlo drop.
struct Deployment {
    double isd_m = 0.0;
    std::vector<Site> sites;
    std::vector<Cell> cells;
    std::vector<User> users;
    /// LOS state of every user-site link, row-major [user][site]; fixed for the drop.
    std::vector<std::uint8_t> los;

    bool is_los(int user, int site) const
    {
        return los[static_cast<std::size_t>(user) * sites.size() + static_cast<std::size_t>(site)] != 0;
    }
    /// Users whose serving cell is `cell`, in ascending index order.
    std::vector<int> attached_users(int cell) const;
};

/// Tri-sector boresights, radians from east.
inline constexpr double kSectorBearingsDeg[3] = {30.0, 150.0, 270.0};

/**
 * Hexagonal layout: site 0 at the origin plus 0, 1 or 2 rings
 * (n_sites = 1, 7 or 19). Ring sites sit at multiples of 60 degrees.
 * Throws ConfigError for any other site count.
 */
Deployment build_hex_layout(double isd_m, int n_sites, int sectors_per_site);

/**
 * Drop `n_users` users uniformly over the union of the coverage discs
 * (radius ISD/sqrt(3) around every site), at least `min_drop_distance_m`
 * from every site. Also draws the LOS state of every user-site link and
 * associates each user to the cell of maximal coupling gain.
 *
 * Everything is derived from (config.seed, drop_index), so a drop is
 * reproducible regardless of evaluation order.
 */
Deployment drop_users(Deployment layout, const ScenarioConfig& config, int n_users,
                      std::uint64_t drop_index);

/// Build the layout for `config` and drop `config.users_per_drop` users.
Deployment make_drop(const ScenarioConfig& config, std::uint64_t drop_index);

}  // namespace fdsim
